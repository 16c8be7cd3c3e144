//! Modules over a finite poset: a finite-dimensional stalk for each element
//! and a transition map `M_y → M_x` for every relation `x ≤ y`, functorial
//! under composition.
//!
//! Transition maps are supplied on Hasse edges only; the constructor composes
//! them along covering chains, rejecting families where two paths between
//! the same pair disagree. Sections over a lower set are compatible
//! families of stalk vectors, i.e. the limit of the restricted module.
//!
//! Flasqueness (every restriction map between section spaces of nested lower
//! sets is onto) is checked through the principal-pair criterion: it
//! suffices that `M_x` surjects onto the sections just below `x`, for every
//! `x`. The exhaustive check over all pairs of lower sets is retained for
//! cross-validation on small posets.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num::BigInt;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, BettiVector, CochainComplex, Field, Matrix, Scalar};
use crate::poset::{Poset, PosetInput};

/// A functorial family of vector spaces over a poset.
#[derive(Debug, Clone)]
pub struct KpModule {
    poset: Poset,
    field: Field,
    stalks: Vec<usize>,
    /// `transitions[(x, y)]` for every pair `x ≤ y`: a `dim(x) × dim(y)`
    /// matrix taking the stalk at `y` to the stalk at `x`.
    transitions: BTreeMap<(usize, usize), Matrix>,
}

/// Counterexample to flasqueness: the stalk at `element` fails to surject
/// onto the sections over the lower set `open_set`.
#[derive(Debug, Clone)]
pub struct FlasqueWitness {
    pub element: String,
    pub open_set: Vec<String>,
}

impl KpModule {
    /// Builds a module from stalk dimensions and Hasse-edge transition
    /// matrices, keyed by `(lower, upper)` element indices. Every covering
    /// relation needs a matrix of shape `dim(lower) × dim(upper)`;
    /// composites along different covering chains must agree.
    pub fn new(
        poset: Poset,
        field: Field,
        stalks: Vec<usize>,
        edges: &BTreeMap<(usize, usize), Matrix>,
    ) -> Result<KpModule> {
        if stalks.len() != poset.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} stalk dimensions for {} poset elements",
                stalks.len(),
                poset.len()
            )));
        }
        let mut edge_maps: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
        for &(l, u) in poset.hasse_edges() {
            let m = edges.get(&(l, u)).ok_or_else(|| Error::MissingEdge {
                x: poset.label(l).to_string(),
                y: poset.label(u).to_string(),
            })?;
            if m.rows() != stalks[l] || m.cols() != stalks[u] {
                return Err(Error::EdgeShape {
                    x: poset.label(l).to_string(),
                    y: poset.label(u).to_string(),
                    rows: stalks[l],
                    cols: stalks[u],
                });
            }
            edge_maps.insert((l, u), field.normalize_matrix(m)?);
        }

        // Compose transitions upward in topological order, checking that
        // every covering path between the same endpoints agrees.
        let mut transitions: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
        for x in 0..poset.len() {
            transitions.insert((x, x), Matrix::identity(stalks[x]));
        }
        for y in poset.topological_order() {
            for x in poset.covers_below(y) {
                let e = edge_maps[&(x, y)].clone();
                let below: Vec<usize> =
                    (0..poset.len()).filter(|&z| poset.leq(z, x)).collect();
                for z in below {
                    let cand = field.normalize_matrix(&transitions[&(z, x)].mul(&e)?)?;
                    match transitions.get(&(z, y)) {
                        None => {
                            transitions.insert((z, y), cand);
                        }
                        Some(prev) => {
                            if !field.matrices_equal(prev, &cand)? {
                                return Err(Error::Functoriality {
                                    x: poset.label(z).to_string(),
                                    y: poset.label(y).to_string(),
                                });
                            }
                        }
                    }
                }
            }
        }

        Ok(KpModule {
            poset,
            field,
            stalks,
            transitions,
        })
    }

    /// Stalk dimension 1 at `x`, zero elsewhere.
    pub fn skyscraper(poset: &Poset, field: &Field, x: usize) -> KpModule {
        let stalks: Vec<usize> = (0..poset.len()).map(|i| usize::from(i == x)).collect();
        Self::unit_on(poset, field, &stalks)
    }

    /// Stalk dimension 1 everywhere, identity transitions.
    pub fn constant(poset: &Poset, field: &Field) -> KpModule {
        let stalks = vec![1usize; poset.len()];
        Self::unit_on(poset, field, &stalks)
    }

    /// Stalk dimension 1 on the principal filter `{y : y ≥ x}`, zero
    /// elsewhere, with identity transitions inside the filter. The
    /// constant module when `x` is the unique minimum, the skyscraper
    /// when `x` is maximal, and flasque in every case.
    pub fn interval_module(poset: &Poset, field: &Field, x: usize) -> KpModule {
        let members: BTreeSet<usize> = (0..poset.len())
            .filter(|&y| y == x || poset.less(x, y))
            .collect();
        Self::upper_set_unit(poset, field, &members)
    }

    /// Stalk dimension 1 on an upward-closed set of elements, zero
    /// elsewhere, with identity transitions inside the set.
    pub fn upper_set_unit(poset: &Poset, field: &Field, members: &BTreeSet<usize>) -> KpModule {
        for &x in members {
            for y in 0..poset.len() {
                if poset.less(x, y) {
                    assert!(
                        members.contains(&y),
                        "upper_set_unit requires an upward-closed member set"
                    );
                }
            }
        }
        let stalks: Vec<usize> = (0..poset.len())
            .map(|i| usize::from(members.contains(&i)))
            .collect();
        Self::unit_on(poset, field, &stalks)
    }

    /// Shared construction for 0/1-dimensional stalk patterns with identity
    /// transitions wherever both endpoints have a stalk.
    fn unit_on(poset: &Poset, field: &Field, stalks: &[usize]) -> KpModule {
        let mut edges = BTreeMap::new();
        for &(l, u) in poset.hasse_edges() {
            let m = if stalks[l] == 1 && stalks[u] == 1 {
                Matrix::identity(1)
            } else {
                Matrix::zeros(stalks[l], stalks[u])
            };
            edges.insert((l, u), m);
        }
        KpModule::new(poset.clone(), field.clone(), stalks.to_vec(), &edges)
            .expect("0/1 stalk patterns with identity maps are functorial")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn stalk_dims(&self) -> &[usize] {
        &self.stalks
    }

    /// True when every stalk is zero-dimensional.
    pub fn is_zero(&self) -> bool {
        self.stalks.iter().all(|&d| d == 0)
    }

    /// The composed transition `M_y → M_x` for `x ≤ y`.
    pub fn transition(&self, x: usize, y: usize) -> Option<&Matrix> {
        self.transitions.get(&(x, y))
    }

    /// Sections over a lower set: sorted member list, coordinate offsets,
    /// and a basis of compatible families in block coordinates.
    fn section_space(&self, open: &[usize]) -> Result<(Vec<usize>, Vec<usize>, Vec<Vec<Scalar>>)> {
        let mut members: Vec<usize> = open.to_vec();
        members.sort_unstable();
        members.dedup();
        let member_set: BTreeSet<usize> = members.iter().copied().collect();
        for &y in &members {
            for x in 0..self.poset.len() {
                if self.poset.less(x, y) && !member_set.contains(&x) {
                    let desc = format!(
                        "{{{}}}",
                        members
                            .iter()
                            .map(|&i| self.poset.label(i))
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                    return Err(Error::NotLowerSet(
                        desc,
                        self.poset.label(x).to_string(),
                        self.poset.label(y).to_string(),
                    ));
                }
            }
        }
        let mut offsets = Vec::with_capacity(members.len());
        let mut total = 0usize;
        for &x in &members {
            offsets.push(total);
            total += self.stalks[x];
        }
        let pos: BTreeMap<usize, usize> =
            members.iter().enumerate().map(|(k, &x)| (x, k)).collect();

        // One block row of constraints per Hasse edge inside the set:
        // m_lower − E·m_upper = 0. Covering relations suffice because the
        // transitions are functorial.
        let mut rows_needed = 0usize;
        let edges: Vec<(usize, usize)> = self
            .poset
            .hasse_edges()
            .iter()
            .copied()
            .filter(|&(l, u)| member_set.contains(&l) && member_set.contains(&u))
            .collect();
        for &(l, _) in &edges {
            rows_needed += self.stalks[l];
        }
        let mut m = Matrix::zeros(rows_needed, total);
        let mut row0 = 0usize;
        for &(l, u) in &edges {
            let e = &self.transitions[&(l, u)];
            let lo = offsets[pos[&l]];
            let uo = offsets[pos[&u]];
            for i in 0..self.stalks[l] {
                m.set(row0 + i, lo + i, Scalar::from_integer(BigInt::from(1)));
                for j in 0..self.stalks[u] {
                    let v = -e.get(i, j).clone();
                    if !num::Zero::is_zero(&v) {
                        m.set(row0 + i, uo + j, v);
                    }
                }
            }
            row0 += self.stalks[l];
        }
        let basis = kernel_basis(&m, &self.field)?;
        Ok((members, offsets, basis))
    }

    /// Dimension of the space of global sections (the limit over the whole
    /// poset).
    pub fn limit(&self) -> Result<usize> {
        let all: Vec<usize> = (0..self.poset.len()).collect();
        self.limit_on(&all)
    }

    /// Explicit basis of the space of global sections: one compatible
    /// family per basis vector, as the stalk vector at each element
    /// (elements with zero stalk are omitted).
    pub fn limit_basis(&self) -> Result<Vec<BTreeMap<String, Vec<Scalar>>>> {
        let all: Vec<usize> = (0..self.poset.len()).collect();
        let (members, offsets, basis) = self.section_space(&all)?;
        Ok(basis
            .into_iter()
            .map(|v| {
                members
                    .iter()
                    .enumerate()
                    .filter(|&(_, &y)| self.stalks[y] > 0)
                    .map(|(k, &y)| {
                        let block = v[offsets[k]..offsets[k] + self.stalks[y]].to_vec();
                        (self.poset.label(y).to_string(), block)
                    })
                    .collect()
            })
            .collect())
    }

    /// Dimension of the sections over a lower set of elements.
    pub fn limit_on(&self, open: &[usize]) -> Result<usize> {
        Ok(self.section_space(open)?.2.len())
    }

    /// Principal-pair flasqueness: `None` when every stalk surjects onto the
    /// sections strictly below it, otherwise a witness. Equivalent to
    /// surjectivity of all restriction maps between nested lower sets.
    pub fn is_flasque(&self) -> Result<Option<FlasqueWitness>> {
        if self.is_zero() {
            // Every section space of the zero module is zero.
            return Ok(None);
        }
        for x in 0..self.poset.len() {
            let below = self.poset.strictly_below(x);
            let (members, _offsets, basis) = self.section_space(&below)?;
            if basis.is_empty() {
                continue;
            }
            // Columns: the compatible family generated by each stalk basis
            // vector of x.
            let total: usize = members.iter().map(|&y| self.stalks[y]).sum();
            let mut t = Matrix::zeros(total, self.stalks[x]);
            let mut row0 = 0usize;
            for &y in &members {
                let e = &self.transitions[&(y, x)];
                for i in 0..self.stalks[y] {
                    for j in 0..self.stalks[x] {
                        t.set(row0 + i, j, e.get(i, j).clone());
                    }
                }
                row0 += self.stalks[y];
            }
            if rank(&t, &self.field)? < basis.len() {
                return Ok(Some(FlasqueWitness {
                    element: self.poset.label(x).to_string(),
                    open_set: members
                        .iter()
                        .map(|&y| self.poset.label(y).to_string())
                        .collect(),
                }));
            }
        }
        Ok(None)
    }

    /// Exhaustive flasqueness over every nested pair of lower sets; bounded
    /// by the lower-set enumeration limit. Returns the offending pair
    /// `(larger, smaller)` by labels, or `None`.
    pub fn is_flasque_exhaustive(&self) -> Result<Option<(Vec<String>, Vec<String>)>> {
        let lower_sets = self.poset.lower_sets()?;
        let mut spaces = Vec::with_capacity(lower_sets.len());
        for ls in &lower_sets {
            spaces.push(self.section_space(ls)?);
        }
        for (ui, u) in lower_sets.iter().enumerate() {
            let uset: BTreeSet<usize> = u.iter().copied().collect();
            for (vi, v) in lower_sets.iter().enumerate() {
                if !v.iter().all(|e| uset.contains(e)) {
                    continue;
                }
                let (u_members, u_offsets, u_basis) = &spaces[ui];
                let (v_members, _v_offsets, v_basis) = &spaces[vi];
                if v_basis.is_empty() {
                    continue;
                }
                // Project each section over U onto V's coordinates.
                let vtotal: usize = v_members.iter().map(|&y| self.stalks[y]).sum();
                let mut proj = Matrix::zeros(u_basis.len(), vtotal);
                for (bi, vec) in u_basis.iter().enumerate() {
                    let mut col0 = 0usize;
                    for &y in v_members {
                        let k = u_members.iter().position(|&m| m == y).expect("V ⊆ U");
                        for i in 0..self.stalks[y] {
                            proj.set(bi, col0 + i, vec[u_offsets[k] + i].clone());
                        }
                        col0 += self.stalks[y];
                    }
                }
                if rank(&proj, &self.field)? < v_basis.len() {
                    let name = |set: &[usize]| {
                        set.iter()
                            .map(|&i| self.poset.label(i).to_string())
                            .collect::<Vec<_>>()
                    };
                    return Ok(Some((name(u_members), name(v_members))));
                }
            }
        }
        Ok(None)
    }

    /// Cohomology of the strict-chain cochain complex: degree-`n` cochains
    /// assign to each chain `x_0 < … < x_n` a vector in the stalk at `x_0`;
    /// the coboundary maps the leading value down the chain and alternates
    /// omissions. Degree 0 recovers the limit.
    pub fn poset_cohomology(&self) -> Result<BettiVector> {
        if self.is_zero() {
            // Every cochain space of the zero module is zero.
            return Ok(BettiVector::new());
        }
        let mut by_len: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for chain in self.poset.chains() {
            by_len.entry(chain.len()).or_default().push(chain.clone());
        }
        let max_len = by_len.keys().max().copied().unwrap_or(0);
        let mut degree_chains: Vec<Vec<Vec<usize>>> = Vec::new();
        for len in 1..=max_len {
            let mut chains = by_len.remove(&len).unwrap_or_default();
            chains.sort();
            degree_chains.push(chains);
        }
        if degree_chains.is_empty() {
            // Empty poset: a single zero space in degree 0.
            return CochainComplex::new(0, vec![0], vec![])?.cohomology_dims(&self.field);
        }

        let mut dims = Vec::new();
        let mut offsets: Vec<BTreeMap<Vec<usize>, usize>> = Vec::new();
        for chains in &degree_chains {
            let mut off = BTreeMap::new();
            let mut total = 0usize;
            for c in chains {
                off.insert(c.clone(), total);
                total += self.stalks[c[0]];
            }
            offsets.push(off);
            dims.push(total);
        }

        let mut maps = Vec::new();
        for n in 0..degree_chains.len() - 1 {
            let mut m = Matrix::zeros(dims[n + 1], dims[n]);
            for d in &degree_chains[n + 1] {
                let drow = offsets[n + 1][d];
                // Leading term: transition along the first link.
                let tail: Vec<usize> = d[1..].to_vec();
                let e = &self.transitions[&(d[0], d[1])];
                let col = offsets[n][&tail];
                for i in 0..self.stalks[d[0]] {
                    for j in 0..self.stalks[d[1]] {
                        let v = e.get(i, j).clone();
                        if !num::Zero::is_zero(&v) {
                            m.set(drow + i, col + j, v);
                        }
                    }
                }
                // Alternating omissions of the later entries.
                for omit in 1..d.len() {
                    let mut c = d.clone();
                    c.remove(omit);
                    let col = offsets[n][&c];
                    let sign = if omit % 2 == 0 { 1i64 } else { -1i64 };
                    for i in 0..self.stalks[d[0]] {
                        let old = m.get(drow + i, col + i).clone();
                        m.set(
                            drow + i,
                            col + i,
                            old + Scalar::from_integer(BigInt::from(sign)),
                        );
                    }
                }
            }
            maps.push(m);
        }
        CochainComplex::new(0, dims, maps)?.cohomology_dims(&self.field)
    }
}

/// Rational or integer scalar in JSON input (`3`, `"3"`, or `"-2/7"`).
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarInput {
    Int(i64),
    Text(String),
}

impl ScalarInput {
    pub fn into_scalar(self) -> Result<Scalar> {
        match self {
            ScalarInput::Int(v) => Ok(Scalar::from_integer(BigInt::from(v))),
            ScalarInput::Text(s) => Scalar::from_str(s.trim())
                .map_err(|_| Error::Parse(format!("bad scalar `{s}`"))),
        }
    }
}

/// JSON input schema:
/// `{"poset": {...}, "stalks": {"x": 2, ...}, "edges": {"x<y": [[..]], ...}}`.
/// Elements missing from `stalks` get the zero stalk; each edge key names a
/// covering relation of the poset.
#[derive(Debug, Deserialize)]
pub struct KpModuleInput {
    pub poset: PosetInput,
    #[serde(default)]
    pub stalks: BTreeMap<String, usize>,
    #[serde(default)]
    pub edges: BTreeMap<String, Vec<Vec<ScalarInput>>>,
}

impl KpModuleInput {
    pub fn into_module(self, field: &Field) -> Result<KpModule> {
        let poset = Poset::try_from(self.poset)?;
        let mut stalks = vec![0usize; poset.len()];
        for (label, dim) in self.stalks {
            stalks[poset.index_of(&label)?] = dim;
        }
        let hasse: BTreeSet<(usize, usize)> = poset.hasse_edges().iter().copied().collect();
        let mut edges: BTreeMap<(usize, usize), Matrix> = BTreeMap::new();
        for (key, rows) in self.edges {
            let (xs, ys) = key
                .split_once('<')
                .ok_or_else(|| Error::Parse(format!("edge key `{key}` is not `x<y`")))?;
            let x = poset.index_of(xs.trim())?;
            let y = poset.index_of(ys.trim())?;
            if !hasse.contains(&(x, y)) {
                return Err(Error::Parse(format!(
                    "edge key `{key}` is not a covering relation"
                )));
            }
            let mut scalar_rows = Vec::with_capacity(rows.len());
            for row in rows {
                let mut r = Vec::with_capacity(row.len());
                for entry in row {
                    r.push(entry.into_scalar()?);
                }
                scalar_rows.push(r);
            }
            let m = if scalar_rows.is_empty() {
                Matrix::zeros(stalks[x], stalks[y])
            } else {
                Matrix::from_rows(scalar_rows)?
            };
            edges.insert((x, y), m);
        }
        // Zero-sized edges may be omitted from the input entirely.
        for &(l, u) in poset.hasse_edges() {
            if stalks[l] == 0 || stalks[u] == 0 {
                edges
                    .entry((l, u))
                    .or_insert_with(|| Matrix::zeros(stalks[l], stalks[u]));
            }
        }
        KpModule::new(poset, field.clone(), stalks, &edges)
    }
}
