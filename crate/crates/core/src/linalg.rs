//! Exact linear algebra over the rationals and over prime fields.
//!
//! Everything downstream — simplicial cohomology, Čech graded pieces, poset
//! module cohomology, limits of KP-modules — reduces to ranks and kernels of
//! small dense matrices. All arithmetic is exact: the rationals use
//! arbitrary-precision fractions, prime fields use `u64` residues with the
//! modulus carried by [`Field`]. No floating point appears anywhere.
//!
//! Ranks over the rationals run fraction-free (Bareiss) elimination on
//! `i128`, falling back to `BigInt` when an intermediate minor overflows;
//! kernel bases use ordinary Gauss–Jordan elimination. Every cochain
//! computation re-checks the Euler characteristic of its input against the
//! alternating sum of the computed cohomology dimensions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Index;
use std::sync::atomic::{AtomicU64, Ordering};

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Exact scalar used for matrix entries.
pub type Scalar = BigRational;

/// Map from cohomological degree to dimension; zero entries are omitted.
pub type BettiVector = BTreeMap<i64, usize>;

/// Default prime modulus for finite-field computations.
pub const DEFAULT_PRIME: u64 = 32003;

/// Counts Euler-characteristic consistency checks performed by
/// [`CochainComplex::cohomology_dims`]. Each successful cochain computation
/// increments this after its internal check passes; a failed check aborts
/// the process instead of returning a wrong answer.
static EULER_CHECKS: AtomicU64 = AtomicU64::new(0);

/// Number of Euler-characteristic checks performed so far in this process.
pub fn euler_check_count() -> u64 {
    EULER_CHECKS.load(Ordering::Relaxed)
}

// ---------------------------------------------------------------------------
// Field
// ---------------------------------------------------------------------------

/// Coefficient field for all (co)homology computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// The field of rational numbers.
    Rationals,
    /// The prime field with the given number of elements.
    Prime(u64),
}

impl Field {
    /// Finite field of prime order `p`; rejects composite moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    /// Parses `"q"` (rationals) or `"gf:<p>"` (prime field).
    pub fn parse(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        if let Some(p) = s.strip_prefix("gf:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad field spec `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::Parse(format!(
            "bad field spec `{s}` (expected `q` or `gf:<p>`)"
        )))
    }

    /// Canonical representative of a scalar in this field: the identity over
    /// the rationals, the least non-negative residue over a prime field.
    pub fn normalize(&self, a: &Scalar) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(a.clone()),
            Field::Prime(p) => {
                let r = residue(a, *p)?;
                Ok(Scalar::from_integer(BigInt::from(r)))
            }
        }
    }

    /// Entry-wise [`Field::normalize`].
    pub fn normalize_matrix(&self, m: &Matrix) -> Result<Matrix> {
        match self {
            Field::Rationals => Ok(m.clone()),
            Field::Prime(_) => {
                let mut entries = Vec::with_capacity(m.entries.len());
                for e in &m.entries {
                    entries.push(self.normalize(e)?);
                }
                Ok(Matrix {
                    rows: m.rows,
                    cols: m.cols,
                    entries,
                })
            }
        }
    }

    /// Equality of matrices as maps over this field.
    pub fn matrices_equal(&self, a: &Matrix, b: &Matrix) -> Result<bool> {
        Ok(self.normalize_matrix(a)? == self.normalize_matrix(b)?)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "q"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Image of a rational in `GF(p)`, as a `u64` residue.
fn residue(a: &Scalar, p: u64) -> Result<u64> {
    let p_big = BigInt::from(p);
    let num = ((a.numer() % &p_big) + &p_big) % &p_big;
    let den = ((a.denom() % &p_big) + &p_big) % &p_big;
    let num: u64 = num.try_into().expect("reduced residue fits u64");
    let den: u64 = den.try_into().expect("reduced residue fits u64");
    if den == 0 {
        return Err(Error::BadScalar {
            value: a.to_string(),
            modulus: p,
        });
    }
    Ok(mul_mod(num, inv_mod(den, p), p))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime and a != 0 mod p, so Fermat applies.
    pow_mod(a, p - 2, p)
}

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

/// Dense matrix with exact rational entries, row-major.
///
/// Zero-by-n and n-by-zero shapes are legal and behave as the corresponding
/// maps between zero spaces; they come up constantly as coboundaries in and
/// out of empty cochain degrees.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows of rationals; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut entries = Vec::with_capacity(r * c);
        for row in &rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch(format!(
                    "ragged rows ({} vs {c})",
                    row.len()
                )));
            }
            entries.extend(row.iter().cloned());
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Builds a matrix from integer rows (test and construction convenience).
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Matrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged integer rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, Scalar::from_integer(BigInt::from(v)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Plain rational matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>], rows: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "hstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        self.get(i, j)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Rank
// ---------------------------------------------------------------------------

/// Rank of `m` over the field `f`. Exact in both cases.
pub fn rank(m: &Matrix, f: &Field) -> Result<usize> {
    match f {
        Field::Rationals => Ok(rank_rational(m)),
        Field::Prime(p) => rank_prime(m, *p),
    }
}

fn rank_rational(m: &Matrix) -> usize {
    // Clear denominators row by row; row scaling does not change the rank.
    let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut lcm = BigInt::one();
        for j in 0..m.cols {
            lcm = num::integer::lcm(lcm, m.get(i, j).denom().clone());
        }
        let row: Vec<BigInt> = (0..m.cols)
            .map(|j| {
                let e = m.get(i, j);
                e.numer() * (&lcm / e.denom())
            })
            .collect();
        int_rows.push(row);
    }
    if let Some(r) = bareiss_rank_i128(&int_rows, m.cols) {
        r
    } else {
        bareiss_rank_bigint(int_rows, m.cols)
    }
}

/// Fraction-free elimination on `i128` with overflow detection; returns
/// `None` when an intermediate value does not fit, in which case the caller
/// retries with arbitrary precision.
fn bareiss_rank_i128(rows: &[Vec<BigInt>], cols: usize) -> Option<usize> {
    let mut a: Vec<Vec<i128>> = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out = Vec::with_capacity(cols);
        for v in row {
            out.push(i128::try_from(v).ok()?);
        }
        a.push(out);
    }
    let r = a.len();
    let mut prev: i128 = 1;
    let mut k = 0usize;
    while k < r && k < cols {
        // Full pivot search over the remaining submatrix.
        let mut pivot = None;
        'outer: for i in k..r {
            for j in k..cols {
                if a[i][j] != 0 {
                    pivot = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            return Some(k);
        };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
        }
        let akk = a[k][k];
        for i in k + 1..r {
            let aik = a[i][k];
            for j in k + 1..cols {
                let t1 = akk.checked_mul(a[i][j])?;
                let t2 = aik.checked_mul(a[k][j])?;
                // Exact by the Sylvester determinant identity.
                a[i][j] = t1.checked_sub(t2)? / prev;
            }
            a[i][k] = 0;
        }
        prev = akk;
        k += 1;
    }
    Some(k)
}

fn bareiss_rank_bigint(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let r = a.len();
    let mut prev = BigInt::one();
    let mut k = 0usize;
    while k < r && k < cols {
        let mut pivot = None;
        'outer: for i in k..r {
            for j in k..cols {
                if !a[i][j].is_zero() {
                    pivot = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            return k;
        };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
        }
        let akk = a[k][k].clone();
        for i in k + 1..r {
            let aik = a[i][k].clone();
            for j in k + 1..cols {
                a[i][j] = (&akk * &a[i][j] - &aik * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = akk;
        k += 1;
    }
    k
}

fn rank_prime(m: &Matrix, p: u64) -> Result<usize> {
    let mut a: Vec<Vec<u64>> = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let mut row = Vec::with_capacity(m.cols);
        for j in 0..m.cols {
            row.push(residue(m.get(i, j), p)?);
        }
        a.push(row);
    }
    let rows = a.len();
    let cols = m.cols;
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = inv_mod(a[rank][col], p);
        for j in col..cols {
            a[rank][j] = mul_mod(a[rank][j], inv, p);
        }
        for i in 0..rows {
            if i != rank && a[i][col] != 0 {
                let factor = a[i][col];
                for j in col..cols {
                    let sub = mul_mod(factor, a[rank][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

// ---------------------------------------------------------------------------
// Kernel bases (Gauss–Jordan over either field)
// ---------------------------------------------------------------------------

/// Basis of the right kernel `{v : m v = 0}` over the field `f`.
///
/// Over a prime field the basis vectors are returned with entries in
/// `{0, …, p−1}` viewed as rationals, the canonical residue representatives.
pub fn kernel_basis(m: &Matrix, f: &Field) -> Result<Vec<Vec<Scalar>>> {
    match f {
        Field::Rationals => Ok(kernel_generic(m, &QArith)),
        Field::Prime(p) => {
            // Reduce entries first so `QArith` on residues never divides by a
            // multiple of p during elimination.
            kernel_generic_prime(m, *p)
        }
    }
}

trait Arith {
    type El: Clone + PartialEq;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn inv(&self, a: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn to_rational(&self, a: &Self::El) -> Scalar;
}

struct QArith;

impl Arith for QArith {
    type El = Scalar;
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.recip()
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn to_rational(&self, a: &Scalar) -> Scalar {
        a.clone()
    }
}

struct PArith {
    p: u64,
}

impl Arith for PArith {
    type El = u64;
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn to_rational(&self, a: &u64) -> Scalar {
        Scalar::from_integer(BigInt::from(*a))
    }
}

fn kernel_generic_prime(m: &Matrix, p: u64) -> Result<Vec<Vec<Scalar>>> {
    let arith = PArith { p };
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            row.push(residue(m.get(i, j), p)?);
        }
        rows.push(row);
    }
    Ok(kernel_from_rows(&arith, rows, m.cols()))
}

fn kernel_generic(m: &Matrix, arith: &QArith) -> Vec<Vec<Scalar>> {
    let rows: Vec<Vec<Scalar>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
        .collect();
    kernel_from_rows(arith, rows, m.cols())
}

fn kernel_from_rows<A: Arith>(arith: &A, mut rows: Vec<Vec<A::El>>, cols: usize) -> Vec<Vec<Scalar>> {
    // Gauss–Jordan to reduced row echelon form, tracking pivot columns.
    let nrows = rows.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(pivot) = (rank..nrows).find(|&i| !arith.is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = arith.inv(&rows[rank][col]);
        for j in col..cols {
            rows[rank][j] = arith.mul(&rows[rank][j], &inv);
        }
        for i in 0..nrows {
            if i != rank && !arith.is_zero(&rows[i][col]) {
                let factor = rows[i][col].clone();
                for j in col..cols {
                    let sub = arith.mul(&factor, &rows[rank][j]);
                    rows[i][j] = arith.sub(&rows[i][j], &sub);
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    // One kernel vector per free column.
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate() {
            let coeff = arith.neg(&rows[r][free]);
            v[pc] = arith.to_rational(&coeff);
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Cochain complexes
// ---------------------------------------------------------------------------

/// A bounded cochain complex of finite-dimensional spaces.
///
/// `dims[k]` is the dimension in degree `min_degree + k`; `maps[k]` is the
/// coboundary out of that degree, with shape `dims[k+1] × dims[k]`.
#[derive(Debug, Clone)]
pub struct CochainComplex {
    min_degree: i64,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl CochainComplex {
    pub fn new(min_degree: i64, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<CochainComplex> {
        if !dims.is_empty() && maps.len() + 1 != dims.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} degrees need {} coboundaries, got {}",
                dims.len(),
                dims.len() - 1,
                maps.len()
            )));
        }
        if dims.is_empty() && !maps.is_empty() {
            return Err(Error::ShapeMismatch("maps without degrees".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != dims[k + 1] || m.cols() != dims[k] {
                return Err(Error::ShapeMismatch(format!(
                    "coboundary at degree {} has shape {}x{}, expected {}x{}",
                    min_degree + k as i64,
                    m.rows(),
                    m.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        Ok(CochainComplex {
            min_degree,
            dims,
            maps,
        })
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, k: usize) -> &Matrix {
        &self.maps[k]
    }

    /// Dimension in an absolute degree (zero outside the stored range).
    pub fn dim_at(&self, degree: i64) -> usize {
        let k = degree - self.min_degree;
        if k < 0 || k as usize >= self.dims.len() {
            0
        } else {
            self.dims[k as usize]
        }
    }

    /// Cohomology dimensions over `f`, keyed by absolute degree; zero
    /// dimensions are omitted. Rejects data whose coboundaries do not square
    /// to zero over `f`, and cross-checks the Euler characteristic of the
    /// result against the input before returning.
    pub fn cohomology_dims(&self, f: &Field) -> Result<BettiVector> {
        // d ∘ d = 0 over the chosen field.
        for k in 0..self.maps.len().saturating_sub(1) {
            let prod = self.maps[k + 1].mul(&self.maps[k])?;
            if !f.normalize_matrix(&prod)?.is_zero() {
                return Err(Error::NotAComplex {
                    degree: self.min_degree + k as i64,
                });
            }
        }
        let ranks: Vec<usize> = self
            .maps
            .iter()
            .map(|m| rank(m, f))
            .collect::<Result<_>>()?;
        let mut out = BettiVector::new();
        let mut euler_dims: i64 = 0;
        let mut euler_coh: i64 = 0;
        for k in 0..self.dims.len() {
            let into = if k == 0 { 0 } else { ranks[k - 1] };
            let outof = if k < ranks.len() { ranks[k] } else { 0 };
            let h = self.dims[k] - outof - into;
            let degree = self.min_degree + k as i64;
            let sign = if degree.rem_euclid(2) == 0 { 1 } else { -1 };
            euler_dims += sign * self.dims[k] as i64;
            euler_coh += sign * h as i64;
            if h > 0 {
                out.insert(degree, h);
            }
        }
        assert_eq!(
            euler_dims, euler_coh,
            "Euler characteristic mismatch: cochain dims give {euler_dims}, cohomology gives {euler_coh}"
        );
        EULER_CHECKS.fetch_add(1, Ordering::Relaxed);
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Integer-vector helpers shared with the cone machinery
// ---------------------------------------------------------------------------

/// Divides an integer vector by the gcd of its entries; the zero vector is
/// returned unchanged. The sign of the leading nonzero entry is preserved.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = num::integer::gcd(g, x.clone());
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Rank over the rationals of a list of integer row vectors.
pub fn int_rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    if let Some(r) = bareiss_rank_i128(rows, cols) {
        r
    } else {
        bareiss_rank_bigint(rows.to_vec(), cols)
    }
}

/// Integer basis (primitive rows) of the rational kernel `{v : rows · v = 0}`.
pub fn int_kernel(rows: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    let m = Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|x| Scalar::from_integer(x.clone())).collect())
            .collect(),
    )
    .expect("integer rows are rectangular");
    let m = if rows.is_empty() {
        Matrix::zeros(0, cols)
    } else {
        m
    };
    kernel_generic(&m, &QArith)
        .into_iter()
        .map(|v| clear_denominators(&v))
        .collect()
}

/// Scales a rational vector to a primitive integer vector.
pub fn clear_denominators(v: &[Scalar]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(&ints)
}

/// Exact sign-aware dot product of integer vectors.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// True when every entry is zero.
pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Pivot column indices of the rational row reduction of integer rows.
/// Projection onto these coordinates is injective on the row space.
pub fn pivot_columns(rows: &[Vec<BigInt>], cols: usize) -> Vec<usize> {
    let mut m: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Scalar::from_integer(x.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].recip();
        for j in col..cols {
            m[rank][j] = &m[rank][j] * &inv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..cols {
                    let sub = &f * &m[rank][j];
                    m[i][j] = &m[i][j] - &sub;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    pivots
}

/// Inverse of a square rational matrix; `None` when singular.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    // Gauss–Jordan on the augmented matrix [m | I].
    let mut a: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut row: Vec<Scalar> = (0..n).map(|j| m.get(i, j).clone()).collect();
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return None;
        };
        a.swap(col, p);
        let inv = a[col][col].recip();
        for j in 0..2 * n {
            a[col][j] = &a[col][j] * &inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..2 * n {
                    let sub = &f * &a[col][j];
                    a[i][j] = &a[i][j] - &sub;
                }
            }
        }
    }
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, a[i][n + j].clone());
        }
    }
    Some(out)
}
