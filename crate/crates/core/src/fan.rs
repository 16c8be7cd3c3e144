//! Pointed rational polyhedral cones and fans, in exact integer arithmetic.
//!
//! A [`Cone`] is stored in a fully canonical form: primitive sorted extreme
//! rays, an integer basis of the linear equations cutting out its span, and
//! an irredundant list of facet inequalities. Two cones are equal exactly
//! when their ambient dimensions and extreme-ray lists agree.
//!
//! A [`Fan`] is a finite collection of pointed cones closed under taking
//! faces, in which any two cones meet in a common face. [`Fan::from_maximal`]
//! verifies both conditions and materializes all faces;
//! [`Fan::fan_of_complex`] builds the fan associated to a simplicial complex
//! on `n` vertices, living in dimension `n + 1`, whose face poset reproduces
//! the face poset of the complex.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, Signed, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, int_kernel, int_rank, invert, pivot_columns, primitive, Matrix, Scalar};
use crate::poset::Poset;
use crate::simplicial::SimplicialComplex;

/// Canonical identity of a cone: its sorted primitive extreme rays.
pub type ConeKey = Vec<Vec<BigInt>>;

/// A pointed rational polyhedral cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    ambient: usize,
    dim: usize,
    /// Primitive, deduplicated, sorted generators as given (may include
    /// non-extreme ones).
    generators: Vec<Vec<BigInt>>,
    /// Primitive sorted extreme rays; empty exactly for the zero cone.
    extreme_rays: Vec<Vec<BigInt>>,
    /// Integer basis of the linear span's orthogonal complement: `x` lies in
    /// the span iff every equation vanishes on `x`.
    equations: Vec<Vec<BigInt>>,
    /// Irredundant supporting inequalities: together with the equations they
    /// cut out the cone; each is tight on a facet.
    facets: Vec<Vec<BigInt>>,
}

impl Cone {
    /// The cone `{0}` in the given ambient dimension.
    pub fn zero(ambient: usize) -> Cone {
        let equations = (0..ambient)
            .map(|i| {
                let mut e = vec![BigInt::zero(); ambient];
                e[i] = BigInt::from(1);
                e
            })
            .collect();
        Cone {
            ambient,
            dim: 0,
            generators: Vec::new(),
            extreme_rays: Vec::new(),
            equations,
            facets: Vec::new(),
        }
    }

    /// Builds the cone generated by the given rays, rejecting unpointed
    /// cones. Generators are made primitive, deduplicated, and sorted; zero
    /// generators are dropped, so an empty (or all-zero) list yields the
    /// zero cone.
    pub fn from_generators(ambient: usize, gens: &[Vec<BigInt>]) -> Result<Cone> {
        let mut generators: Vec<Vec<BigInt>> = Vec::new();
        for g in gens {
            if g.len() != ambient {
                return Err(Error::AmbientMismatch {
                    expected: ambient,
                    got: g.len(),
                });
            }
            if !g.iter().all(|x| x.is_zero()) {
                generators.push(primitive(g));
            }
        }
        generators.sort();
        generators.dedup();
        if generators.is_empty() {
            return Ok(Cone::zero(ambient));
        }

        let equations = int_kernel(&generators, ambient);
        let r = ambient - equations.len();

        // Coordinates for the span: pivot columns of the generator matrix.
        // Selecting them is injective on the span, so the cone becomes
        // full-dimensional in r coordinates and facet normals found there
        // lift back by zero-extension.
        let span_cols = pivot_columns(&generators, ambient);
        debug_assert_eq!(span_cols.len(), r);
        let projected: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| span_cols.iter().map(|&j| g[j].clone()).collect())
            .collect();

        let mut facets: Vec<Vec<BigInt>> = extreme_rays_from_inequalities(r, &projected)
            .into_iter()
            .map(|w| {
                let mut u = vec![BigInt::zero(); ambient];
                for (k, &j) in span_cols.iter().enumerate() {
                    u[j] = w[k].clone();
                }
                u
            })
            .collect();
        facets.sort();

        // Pointedness: the equations and facet normals must together have
        // full rank, i.e. the lineality space is zero.
        let mut constraints = equations.clone();
        constraints.extend(facets.iter().cloned());
        if int_rank(&constraints, ambient) != ambient {
            let desc = generators
                .iter()
                .map(|g| format_ray(g))
                .collect::<Vec<_>>()
                .join(",");
            return Err(Error::NotPointed(format!("{{{desc}}}")));
        }

        // A generator is an extreme ray iff its tight constraints cut out a
        // one-dimensional face.
        let extreme_rays: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|g| {
                let mut tight = equations.clone();
                tight.extend(facets.iter().filter(|f| dot(f, g).is_zero()).cloned());
                int_rank(&tight, ambient) == ambient - 1
            })
            .cloned()
            .collect();

        Ok(Cone {
            ambient,
            dim: r,
            generators,
            extreme_rays,
            equations,
            facets,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn extreme_rays(&self) -> &[Vec<BigInt>] {
        &self.extreme_rays
    }

    pub fn equations(&self) -> &[Vec<BigInt>] {
        &self.equations
    }

    pub fn facets(&self) -> &[Vec<BigInt>] {
        &self.facets
    }

    /// Canonical identity: sorted primitive extreme rays.
    pub fn key(&self) -> ConeKey {
        self.extreme_rays.clone()
    }

    fn check_point(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.ambient {
            return Err(Error::AmbientMismatch {
                expected: self.ambient,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Membership: all equations vanish and all facet inequalities hold.
    pub fn contains(&self, x: &[BigInt]) -> Result<bool> {
        self.check_point(x)?;
        Ok(self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative()))
    }

    /// Relative-interior membership: equations vanish, facet inequalities
    /// hold strictly. The zero cone's relative interior is `{0}`.
    pub fn relint_contains(&self, x: &[BigInt]) -> Result<bool> {
        self.check_point(x)?;
        Ok(self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| dot(f, x).is_positive()))
    }

    /// All faces, including the cone itself and the zero cone, sorted by
    /// dimension then key.
    pub fn faces(&self) -> Vec<Cone> {
        let mut seen: BTreeMap<ConeKey, Cone> = BTreeMap::new();
        let mut queue = vec![self.clone()];
        seen.insert(self.key(), self.clone());
        while let Some(c) = queue.pop() {
            for f in &c.facets {
                let rays: Vec<Vec<BigInt>> = c
                    .extreme_rays
                    .iter()
                    .filter(|g| dot(f, g).is_zero())
                    .cloned()
                    .collect();
                let face = Cone::from_generators(self.ambient, &rays)
                    .expect("a face of a pointed cone is pointed");
                if !seen.contains_key(&face.key()) {
                    seen.insert(face.key(), face.clone());
                    queue.push(face);
                }
            }
        }
        let mut faces: Vec<Cone> = seen.into_values().collect();
        faces.sort_by_key(|c| (c.dim, c.key()));
        faces
    }

    /// Human-readable name, e.g. `cone{}` or `cone{(0,1,1),(1,0,1)}`.
    pub fn label(&self) -> String {
        let rays = self
            .extreme_rays
            .iter()
            .map(|g| format_ray(g))
            .collect::<Vec<_>>()
            .join(",");
        format!("cone{{{rays}}}")
    }
}

fn format_ray(g: &[BigInt]) -> String {
    let coords = g.iter().map(BigInt::to_string).collect::<Vec<_>>().join(",");
    format!("({coords})")
}

/// Extreme rays of the pointed cone `{t ∈ Q^r : row·t ≥ 0 for every row}`,
/// as primitive integer vectors. Requires the rows to have rank `r`
/// (equivalently, the cone to be pointed); full-rank input is the caller's
/// responsibility and is asserted.
fn extreme_rays_from_inequalities(r: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if r == 0 {
        return Vec::new();
    }
    // Greedily pick r linearly independent rows for the initial simplicial
    // cone.
    let mut chosen: Vec<usize> = Vec::new();
    let mut chosen_rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if chosen.len() == r {
            break;
        }
        chosen_rows.push(row.clone());
        if int_rank(&chosen_rows, r) == chosen.len() + 1 {
            chosen.push(i);
        } else {
            chosen_rows.pop();
        }
    }
    assert_eq!(chosen.len(), r, "inequality system must have full rank");

    // Rays of the initial cone: columns of the inverse of the chosen
    // constraint matrix (ray j satisfies constraint i with value δ_ij).
    let a = Matrix::from_rows(
        chosen_rows
            .iter()
            .map(|row| row.iter().map(|x| Scalar::from_integer(x.clone())).collect())
            .collect(),
    )
    .expect("square constraint matrix");
    let inv = invert(&a).expect("chosen rows are independent");
    let mut rays: Vec<Vec<BigInt>> = (0..r)
        .map(|j| {
            let col: Vec<Scalar> = (0..r).map(|i| inv.get(i, j).clone()).collect();
            crate::linalg::clear_denominators(&col)
        })
        .collect();
    rays.sort();
    rays.dedup();

    // Insert the remaining constraints one at a time (double description).
    let mut processed: Vec<Vec<BigInt>> = chosen_rows;
    for (i, row) in rows.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        processed.push(row.clone());
        let vals: Vec<BigInt> = rays.iter().map(|ray| dot(row, ray)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            continue;
        }
        let mut next: BTreeSet<Vec<BigInt>> = rays
            .iter()
            .zip(&vals)
            .filter(|(_, v)| !v.is_negative())
            .map(|(ray, _)| ray.clone())
            .collect();
        // Combine each (positive, negative) pair into a ray on the new
        // hyperplane, then keep only combinations that are extreme for the
        // refined cone: their tight constraints must cut out a ray.
        for (p, vp) in rays.iter().zip(&vals) {
            if !vp.is_positive() {
                continue;
            }
            for (m, vm) in rays.iter().zip(&vals) {
                if !vm.is_negative() {
                    continue;
                }
                let w: Vec<BigInt> = p
                    .iter()
                    .zip(m)
                    .map(|(pc, mc)| vp * mc - vm * pc)
                    .collect();
                if w.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let w = primitive(&w);
                let tight: Vec<Vec<BigInt>> = processed
                    .iter()
                    .filter(|q| dot(q, &w).is_zero())
                    .cloned()
                    .collect();
                if int_rank(&tight, r) == r - 1 {
                    next.insert(w);
                }
            }
        }
        rays = next.into_iter().collect();
    }
    rays
}

/// A finite fan: pointed cones closed under faces, meeting along common
/// faces. Always contains the zero cone.
#[derive(Debug, Clone)]
pub struct Fan {
    ambient: usize,
    /// All cones, sorted by dimension then key.
    cones: Vec<Cone>,
    /// Set when the fan was produced by [`Fan::fan_of_complex`].
    from_complex: bool,
    /// Lazily built face poset (queried once per cone and per degree by the
    /// decomposition machinery).
    poset_cache: std::sync::OnceLock<Poset>,
}

/// JSON input schema: `{"ambient_dim": d, "cones": [[[..ray..], ..], ..]}`
/// listing generator sets of the maximal cones.
#[derive(Debug, Deserialize)]
pub struct FanInput {
    pub ambient_dim: usize,
    #[serde(default)]
    pub cones: Vec<Vec<Vec<i64>>>,
}

impl TryFrom<FanInput> for Fan {
    type Error = Error;
    fn try_from(input: FanInput) -> Result<Fan> {
        let mut maximal = Vec::new();
        for gens in &input.cones {
            let rays: Vec<Vec<BigInt>> = gens
                .iter()
                .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            maximal.push(Cone::from_generators(input.ambient_dim, &rays)?);
        }
        Fan::from_maximal(input.ambient_dim, maximal)
    }
}

impl Fan {
    /// Builds and validates a fan from its maximal cones: materializes all
    /// faces, then checks that every pair of cones intersects in a common
    /// face. The zero cone is always included.
    pub fn from_maximal(ambient: usize, maximal: Vec<Cone>) -> Result<Fan> {
        let mut all: BTreeMap<ConeKey, Cone> = BTreeMap::new();
        let zero = Cone::zero(ambient);
        all.insert(zero.key(), zero);
        // face_keys[key of c] = keys of the faces of c.
        let mut face_keys: BTreeMap<ConeKey, BTreeSet<ConeKey>> = BTreeMap::new();
        face_keys.insert(Vec::new(), BTreeSet::from([Vec::new()]));

        for c in &maximal {
            if c.ambient_dim() != ambient {
                return Err(Error::AmbientMismatch {
                    expected: ambient,
                    got: c.ambient_dim(),
                });
            }
            let faces = c.faces();
            let keys: BTreeSet<ConeKey> = faces.iter().map(Cone::key).collect();
            for face in faces {
                // The faces of a face F of c are exactly the faces of c
                // contained in F, so the key set restricts by containment.
                face_keys.entry(face.key()).or_insert_with(|| {
                    keys.iter()
                        .filter(|k| k.iter().all(|ray| face.contains(ray).unwrap_or(false)))
                        .cloned()
                        .collect()
                });
                all.entry(face.key()).or_insert(face);
            }
        }

        let cones: Vec<Cone> = {
            let mut v: Vec<Cone> = all.into_values().collect();
            v.sort_by_key(|c| (c.dim(), c.key()));
            v
        };

        for (i, a) in cones.iter().enumerate() {
            for b in cones.iter().skip(i + 1) {
                let d = intersection_cone(a, b)?;
                let ok = face_keys[&a.key()].contains(&d.key())
                    && face_keys[&b.key()].contains(&d.key());
                if !ok {
                    return Err(Error::IntersectionNotFace {
                        a: a.label(),
                        b: b.label(),
                    });
                }
            }
        }

        Ok(Fan {
            ambient,
            cones,
            from_complex: false,
            poset_cache: std::sync::OnceLock::new(),
        })
    }

    /// The fan of a simplicial complex on `n` vertices, in `Z^{n+1}`: each
    /// face `F` becomes the cone on `{e_i + e_n : i ∈ F}` (the last
    /// coordinate tracks total degree), so the face poset of the fan is the
    /// face poset of the complex.
    pub fn fan_of_complex(sc: &SimplicialComplex) -> Result<Fan> {
        let n = sc.vertex_count();
        let d = n + 1;
        let ray = |i: usize| -> Vec<BigInt> {
            let mut v = vec![BigInt::zero(); d];
            v[i] = BigInt::from(1);
            v[n] += 1;
            v
        };
        let mut maximal = Vec::new();
        for facet in sc.facets() {
            let gens: Vec<Vec<BigInt>> = (0..n).filter(|&i| facet >> i & 1 == 1).map(ray).collect();
            maximal.push(Cone::from_generators(d, &gens)?);
        }
        let mut fan = Fan::from_maximal(d, maximal)?;
        // The construction is simplicial (the rays of each cone are linearly
        // independent), so faces of the fan correspond exactly to faces of
        // the complex.
        assert_eq!(
            fan.cones.len(),
            sc.faces().count(),
            "fan of a complex must have one cone per face"
        );
        fan.from_complex = true;
        Ok(fan)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// All cones, sorted by dimension then canonical key.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn is_from_complex(&self) -> bool {
        self.from_complex
    }

    /// Cones not strictly contained in another cone.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| {
                !self.cones
                    .iter()
                    .any(|other| other.key() != c.key() && cone_subset(c, other))
            })
            .collect()
    }

    /// The poset of cones under containment (equivalently: the face
    /// relation, since the fan is validated). Element `i` of the poset is
    /// `self.cone(i)`; labels come from [`Cone::label`]. Built once and
    /// cached.
    pub fn face_poset(&self) -> &Poset {
        self.poset_cache.get_or_init(|| {
            let labels: Vec<String> = self.cones.iter().map(Cone::label).collect();
            let mut pairs = Vec::new();
            for (i, a) in self.cones.iter().enumerate() {
                for (j, b) in self.cones.iter().enumerate() {
                    if i != j && cone_subset(a, b) {
                        pairs.push((i, j));
                    }
                }
            }
            Poset::from_relation(labels, &pairs)
                .expect("containment of distinct cones is a partial order")
        })
    }

    /// Index of the unique cone containing `x` in its relative interior, or
    /// `None` when `x` is outside the fan's support. More than one match
    /// means the cones overlap, which validation rules out.
    pub fn carrier_cone(&self, x: &[BigInt]) -> Result<Option<usize>> {
        let mut found = None;
        for (i, c) in self.cones.iter().enumerate() {
            if c.relint_contains(x)? {
                if found.is_some() {
                    return Err(Error::AmbiguousCarrier(x.to_vec()));
                }
                found = Some(i);
            }
        }
        Ok(found)
    }

    /// True when some cone contains `x`.
    pub fn contains_point(&self, x: &[BigInt]) -> Result<bool> {
        for c in &self.cones {
            if c.contains(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// True when `a ⊆ b` (extreme rays of `a` all lie in `b`; the zero cone is
/// contained in everything).
fn cone_subset(a: &Cone, b: &Cone) -> bool {
    a.extreme_rays()
        .iter()
        .all(|g| b.contains(g).expect("cones in one fan share the ambient"))
}

/// The intersection of two pointed cones in the same ambient space, as a
/// canonical cone.
fn intersection_cone(a: &Cone, b: &Cone) -> Result<Cone> {
    let d = a.ambient_dim();
    // Fast paths: containment either way.
    if cone_subset(a, b) {
        return Ok(a.clone());
    }
    if cone_subset(b, a) {
        return Ok(b.clone());
    }
    // The intersection lives in W = span(a) ∩ span(b).
    let mut eqs: Vec<Vec<BigInt>> = a.equations().to_vec();
    eqs.extend(b.equations().iter().cloned());
    let w_basis = int_kernel(&eqs, d);
    if w_basis.is_empty() {
        return Ok(Cone::zero(d));
    }
    // Restrict both facet systems to W-coordinates; the result is pointed
    // there (it embeds in the pointed cone a), so its constraint matrix has
    // full rank and double description applies.
    let r = w_basis.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for f in a.facets().iter().chain(b.facets()) {
        rows.push(w_basis.iter().map(|col| dot(f, col)).collect());
    }
    // `rows` has full rank r: a kernel vector would map to a line inside
    // the pointed cone `a`, which is impossible.
    let rays_w = extreme_rays_from_inequalities(r, &rows);
    let rays: Vec<Vec<BigInt>> = rays_w
        .iter()
        .map(|t| {
            let mut x = vec![BigInt::zero(); d];
            for (coef, col) in t.iter().zip(&w_basis) {
                for (xi, ci) in x.iter_mut().zip(col) {
                    *xi += coef * ci;
                }
            }
            primitive(&x)
        })
        .collect();
    Cone::from_generators(d, &rays)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[i64]) -> Vec<BigInt> {
        coords.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn cone2(gens: &[&[i64]]) -> Cone {
        let rays: Vec<Vec<BigInt>> = gens.iter().map(|g| v(g)).collect();
        Cone::from_generators(gens[0].len(), &rays).unwrap()
    }

    #[test]
    fn quadrant_cone_basics() {
        let c = cone2(&[&[1, 0], &[0, 1]]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.extreme_rays().len(), 2);
        assert_eq!(c.facets().len(), 2);
        assert!(c.equations().is_empty());
        assert!(c.contains(&v(&[3, 5])).unwrap());
        assert!(!c.contains(&v(&[-1, 2])).unwrap());
        assert!(c.relint_contains(&v(&[1, 1])).unwrap());
        assert!(!c.relint_contains(&v(&[1, 0])).unwrap());
        assert_eq!(c.faces().len(), 4); // itself, two rays, zero
    }

    #[test]
    fn non_primitive_and_redundant_generators_are_canonicalized() {
        let c = Cone::from_generators(2, &[v(&[2, 0]), v(&[0, 3]), v(&[1, 1]), v(&[0, 0])]).unwrap();
        assert_eq!(c.extreme_rays(), &[v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(c.generators().len(), 3); // (1,1) kept as generator, not extreme
    }

    #[test]
    fn square_cone_is_not_simplicial() {
        // Cone over a square: four extreme rays but dimension 3.
        let c = cone2(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(c.dim(), 3);
        assert_eq!(c.extreme_rays().len(), 4);
        assert_eq!(c.facets().len(), 4);
        // f-vector of the face lattice: 1 + 4 + 4 + 1.
        assert_eq!(c.faces().len(), 10);
        assert!(c.relint_contains(&v(&[0, 0, 2])).unwrap());
        // An interior generator is recorded but not extreme.
        let c2 = Cone::from_generators(
            3,
            &[v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1]), v(&[0, 0, 1])],
        )
        .unwrap();
        assert_eq!(c2.extreme_rays().len(), 4);
    }

    #[test]
    fn faces_agree_with_brute_force_tight_subsets() {
        let c = cone2(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]]);
        // Brute force: every subset of facets, the cone of rays tight on it.
        let nf = c.facets().len();
        let mut keys = BTreeSet::new();
        for mask in 0..1u32 << nf {
            let rays: Vec<Vec<BigInt>> = c
                .extreme_rays()
                .iter()
                .filter(|g| {
                    (0..nf).all(|k| mask >> k & 1 == 0 || dot(&c.facets()[k], g).is_zero())
                })
                .cloned()
                .collect();
            keys.insert(Cone::from_generators(3, &rays).unwrap().key());
        }
        let bfs_keys: BTreeSet<ConeKey> = c.faces().iter().map(Cone::key).collect();
        assert_eq!(keys, bfs_keys);
    }

    #[test]
    fn lower_dimensional_cone_has_equations() {
        // A 2-dimensional cone inside Z^3.
        let c = cone2(&[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(c.dim(), 2);
        assert_eq!(c.equations().len(), 1);
        assert!(c.contains(&v(&[1, 1, 2])).unwrap());
        assert!(c.relint_contains(&v(&[1, 1, 2])).unwrap());
        assert!(!c.contains(&v(&[1, 1, 1])).unwrap()); // off the span
        assert_eq!(c.faces().len(), 4);
    }

    #[test]
    fn unpointed_cone_is_rejected() {
        let err = Cone::from_generators(2, &[v(&[1, 0]), v(&[-1, 0])]).unwrap_err();
        assert!(matches!(err, Error::NotPointed(_)));
        let err = Cone::from_generators(2, &[v(&[1, 0]), v(&[-1, 1]), v(&[0, -1])]).unwrap_err();
        assert!(matches!(err, Error::NotPointed(_)));
    }

    #[test]
    fn zero_cone_behaviour() {
        let z = Cone::zero(3);
        assert!(z.is_zero());
        assert!(z.contains(&v(&[0, 0, 0])).unwrap());
        assert!(z.relint_contains(&v(&[0, 0, 0])).unwrap());
        assert!(!z.contains(&v(&[1, 0, 0])).unwrap());
        assert_eq!(z.faces().len(), 1);
        assert_eq!(z.label(), "cone{}");
    }

    #[test]
    fn valid_fan_with_shared_ray() {
        let c1 = cone2(&[&[1, 0], &[1, 1]]);
        let c2 = cone2(&[&[1, 1], &[0, 1]]);
        let fan = Fan::from_maximal(2, vec![c1, c2]).unwrap();
        assert_eq!(fan.cones().len(), 6); // zero, three rays, two 2-cones
        assert_eq!(fan.maximal_cones().len(), 2);
        let p = fan.face_poset();
        assert!(p.is_graded());
        let ranks = p.grading().unwrap();
        for c in fan.cones() {
            let idx = p.index_of(&c.label()).unwrap();
            assert_eq!(ranks[idx], c.dim());
        }
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        // Two full-dimensional cones overlapping in dimension 2.
        let c1 = cone2(&[&[1, 0], &[0, 1]]);
        let c2 = cone2(&[&[1, 1], &[1, -1]]);
        let err = Fan::from_maximal(2, vec![c1, c2]).unwrap_err();
        assert!(matches!(err, Error::IntersectionNotFace { .. }));
    }

    #[test]
    fn touching_only_at_the_origin_is_valid() {
        // c2 lies strictly below the x-axis, so the cones meet only in the
        // zero cone — a common face.
        let c1 = cone2(&[&[1, 0], &[0, 1]]);
        let c2 = cone2(&[&[0, -1], &[1, -1]]);
        let fan = Fan::from_maximal(2, vec![c1, c2]).unwrap();
        assert_eq!(fan.maximal_cones().len(), 2);
    }

    #[test]
    fn partial_overlap_is_rejected() {
        // The intersection is the 2-dimensional cone between (1,0) and
        // (2,1), a face of neither.
        let c3 = cone2(&[&[1, 0], &[0, 1]]);
        let c4 = cone2(&[&[2, 1], &[1, -1]]);
        let err = Fan::from_maximal(2, vec![c3, c4]).unwrap_err();
        assert!(matches!(err, Error::IntersectionNotFace { .. }));
    }

    #[test]
    fn disjoint_spans_fast_path() {
        let c1 = cone2(&[&[1, 0, 0]]);
        let c2 = cone2(&[&[0, 1, 0]]);
        let fan = Fan::from_maximal(3, vec![c1, c2]).unwrap();
        assert_eq!(fan.cones().len(), 3);
    }

    #[test]
    fn fan_of_two_disjoint_points() {
        let sc = SimplicialComplex::from_facets(
            vec!["1".into(), "2".into()],
            &[vec!["1".into()], vec!["2".into()]],
        )
        .unwrap();
        let fan = Fan::fan_of_complex(&sc).unwrap();
        assert!(fan.is_from_complex());
        assert_eq!(fan.ambient_dim(), 3);
        assert_eq!(fan.cones().len(), 3); // zero + two rays
        // Carrier lookups.
        let i = fan.carrier_cone(&v(&[1, 0, 1])).unwrap().unwrap();
        assert_eq!(fan.cone(i).dim(), 1);
        let z = fan.carrier_cone(&v(&[0, 0, 0])).unwrap().unwrap();
        assert!(fan.cone(z).is_zero());
        assert!(fan.carrier_cone(&v(&[1, 1, 2])).unwrap().is_none());
        assert!(!fan.contains_point(&v(&[1, 1, 2])).unwrap());
        assert!(fan.contains_point(&v(&[2, 0, 2])).unwrap());
    }

    #[test]
    fn fan_of_an_edge_contains_the_full_quadrant_cone() {
        let sc = SimplicialComplex::from_facets(
            vec!["1".into(), "2".into()],
            &[vec!["1".into(), "2".into()]],
        )
        .unwrap();
        let fan = Fan::fan_of_complex(&sc).unwrap();
        assert_eq!(fan.cones().len(), 4);
        // embed(1,1) = (1,1,2) sits in the big cone's interior.
        let i = fan.carrier_cone(&v(&[1, 1, 2])).unwrap().unwrap();
        assert_eq!(fan.cone(i).dim(), 2);
        // embed(1,0) = (1,0,1) sits on a ray.
        let j = fan.carrier_cone(&v(&[1, 0, 1])).unwrap().unwrap();
        assert_eq!(fan.cone(j).dim(), 1);
    }

    #[test]
    fn fan_of_empty_complex_is_the_zero_fan() {
        let sc = SimplicialComplex::empty(vec![]).unwrap();
        let fan = Fan::fan_of_complex(&sc).unwrap();
        assert_eq!(fan.ambient_dim(), 1);
        assert_eq!(fan.cones().len(), 1);
        assert!(fan.cone(0).is_zero());
    }

    #[test]
    fn face_poset_of_complex_fan_matches_complex() {
        let sc = SimplicialComplex::from_facets(
            vec!["1".into(), "2".into(), "3".into()],
            &[
                vec!["1".into(), "2".into()],
                vec!["1".into(), "3".into()],
                vec!["2".into(), "3".into()],
            ],
        )
        .unwrap();
        let fan = Fan::fan_of_complex(&sc).unwrap();
        assert_eq!(fan.cones().len(), 7);
        let fp_fan = fan.face_poset();
        let fp_sc = sc.face_poset();
        assert_eq!(fp_fan.len(), fp_sc.len());
        assert_eq!(fp_fan.hasse_edges().len(), fp_sc.hasse_edges().len());
        assert!(fp_fan.is_graded());
    }

    #[test]
    fn fan_input_json() {
        let input: FanInput = serde_json::from_str(
            r#"{"ambient_dim":2,"cones":[[[1,0],[1,1]],[[1,1],[0,1]]]}"#,
        )
        .unwrap();
        let fan = Fan::try_from(input).unwrap();
        assert_eq!(fan.cones().len(), 6);

        let bad: FanInput = serde_json::from_str(
            r#"{"ambient_dim":2,"cones":[[[1,0],[0,1]],[[1,1],[1,-1]]]}"#,
        )
        .unwrap();
        assert!(Fan::try_from(bad).is_err());
    }
}
