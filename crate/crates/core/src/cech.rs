//! Čech-complex route to the graded local cohomology of a Stanley–Reisner
//! ring, one multidegree at a time, plus Reisner's link criterion for
//! Cohen–Macaulayness.
//!
//! Everything here works directly from the simplicial complex by
//! enumerating subsets of the variables; it shares no code with the fan
//! decomposition machinery, so the two routes check each other.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{BettiVector, CochainComplex, Field, Matrix, Scalar};
use crate::simplicial::SimplicialComplex;

/// Subset-enumeration guard: the Čech complex ranges over all subsets of
/// the vertex set.
const MAX_CECH_VERTICES: usize = 16;

fn check_degree(sc: &SimplicialComplex, a: &[i64]) -> Result<()> {
    if a.len() != sc.vertex_count() {
        return Err(Error::ShapeMismatch(format!(
            "degree has {} coordinates for {} vertices",
            a.len(),
            sc.vertex_count()
        )));
    }
    if sc.vertex_count() > MAX_CECH_VERTICES {
        return Err(Error::SizeBound {
            what: "vertex set for Čech enumeration",
            size: sc.vertex_count(),
            bound: MAX_CECH_VERTICES,
        });
    }
    Ok(())
}

fn signs(a: &[i64]) -> (u64, u64) {
    let mut neg = 0u64;
    let mut pos = 0u64;
    for (i, &ai) in a.iter().enumerate() {
        if ai < 0 {
            neg |= 1 << i;
        } else if ai > 0 {
            pos |= 1 << i;
        }
    }
    (neg, pos)
}

/// Dimension (0 or 1) of the multidegree-`a` piece of the Stanley–Reisner
/// ring localized at the variables in `subset`: the monomial `x^a` survives
/// iff its negative support is inverted and its positive support extends
/// `subset` to a face.
pub fn localization_dim(sc: &SimplicialComplex, subset: u64, a: &[i64]) -> Result<usize> {
    check_degree(sc, a)?;
    let (neg, pos) = signs(a);
    Ok(usize::from(neg & !subset == 0 && sc.contains(pos | subset)))
}

/// All local cohomology dimensions of the Stanley–Reisner ring in one
/// multidegree, via the Čech complex on the full variable set: the
/// cardinality-`j` term collects the surviving localizations at `j`-element
/// subsets, and the coboundary inserts one variable with the usual
/// alternating sign.
pub fn cech_cohomology(sc: &SimplicialComplex, a: &[i64], field: &Field) -> Result<BettiVector> {
    check_degree(sc, a)?;
    let n = sc.vertex_count();
    let (neg, pos) = signs(a);
    let mut bases: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for subset in 0..1u64 << n {
        if neg & !subset == 0 && sc.contains(pos | subset) {
            bases[subset.count_ones() as usize].push(subset);
        }
    }
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut maps = Vec::new();
    for j in 0..n {
        let pos_of: BTreeMap<u64, usize> = bases[j + 1]
            .iter()
            .enumerate()
            .map(|(r, &m)| (m, r))
            .collect();
        let mut m = Matrix::zeros(dims[j + 1], dims[j]);
        for (col, &f) in bases[j].iter().enumerate() {
            for k in 0..n {
                if f >> k & 1 == 1 {
                    continue;
                }
                let g = f | 1 << k;
                if let Some(&row) = pos_of.get(&g) {
                    let below = (f & ((1u64 << k) - 1)).count_ones();
                    let sign = if below % 2 == 0 { 1i64 } else { -1i64 };
                    m.set(row, col, Scalar::from_integer(sign.into()));
                }
            }
        }
        maps.push(m);
    }
    CochainComplex::new(0, dims, maps)?.cohomology_dims(field)
}

/// One local cohomology dimension in one multidegree.
pub fn cech_cohomology_dim(
    sc: &SimplicialComplex,
    i: i64,
    a: &[i64],
    field: &Field,
) -> Result<usize> {
    Ok(cech_cohomology(sc, a, field)?.get(&i).copied().unwrap_or(0))
}

/// Reisner's criterion: the Stanley–Reisner ring is Cohen–Macaulay over the
/// field iff for every face (the empty one included) the link has vanishing
/// reduced cohomology below its dimension.
pub fn reisner_criterion(sc: &SimplicialComplex, field: &Field) -> Result<bool> {
    for face in sc.faces().collect::<Vec<_>>() {
        let link = sc.link(face)?;
        let top = link.dim();
        let h = link.reduced_cohomology(field)?;
        if h.keys().any(|&i| i < top) {
            return Ok(false);
        }
    }
    Ok(true)
}
