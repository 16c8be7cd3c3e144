//! Graded local cohomology of toric face rings through the fan
//! decomposition: each multidegree is routed to the unique cone carrying
//! its negative, and the contribution is the reduced cohomology of the
//! order complex of the open interval above that cone, shifted by the
//! cone's dimension.
//!
//! The same interval cohomology drives the Cohen–Macaulay and Buchsbaum
//! tests and the degree-by-degree Hilbert-function helpers. Nothing here
//! touches the Čech route in [`crate::cech`]; the two are compared in the
//! integration tests.

use std::collections::BTreeSet;

use num::BigInt;

use crate::cech::reisner_criterion;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::kpmod::KpModule;
use crate::linalg::{BettiVector, Field};

/// Embeds a Stanley–Reisner multidegree into the fan's ambient lattice by
/// appending the coordinate sum.
pub fn embed(a: &[i64]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    v.push(BigInt::from(a.iter().sum::<i64>()));
    v
}

/// Krull dimension of the toric face ring: the largest cone dimension.
pub fn krull_dimension(fan: &Fan) -> usize {
    fan.cones().iter().map(|c| c.dim()).max().unwrap_or(0)
}

/// Dimension (0 or 1) of the multidegree-`a` piece of the ring: monomials
/// are the lattice points of the fan's support.
pub fn hilbert_value(fan: &Fan, a: &[BigInt]) -> Result<usize> {
    Ok(usize::from(fan.contains_point(a)?))
}

/// Product of the monomials at degrees `a` and `b`: their sum when some
/// cone contains both (multiplication within a cone is the semigroup ring's),
/// otherwise `None` — the product is zero across cones. Degrees outside the
/// support are rejected.
pub fn monomial_product(fan: &Fan, a: &[BigInt], b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if !fan.contains_point(a)? {
        return Err(Error::DegreeNotInRing(a.to_vec()));
    }
    if !fan.contains_point(b)? {
        return Err(Error::DegreeNotInRing(b.to_vec()));
    }
    for c in fan.cones() {
        if c.contains(a)? && c.contains(b)? {
            let sum: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            return Ok(Some(sum));
        }
    }
    Ok(None)
}

/// Reduced cohomology of the order complex of the open interval above cone
/// `idx` in the face poset.
fn interval_cohomology(fan: &Fan, idx: usize, field: &Field) -> Result<BettiVector> {
    let interval = fan.face_poset().open_interval(idx);
    interval.order_complex()?.reduced_cohomology(field)
}

/// Per-cone local cohomology contributions of a fan, ready for degree
/// lookups: the degree-`a` piece of `H^i` is the entry at `i` of the cone
/// carrying `−a` (and zero when `−a` is outside the support).
#[derive(Debug, Clone)]
pub struct LocalCohomologyTable {
    fan: Fan,
    field: Field,
    krull: usize,
    /// Indexed like `fan.cones()`; entry `i ↦ dim` collects the interval
    /// cohomology shifted by the cone dimension plus one.
    per_cone: Vec<BettiVector>,
}

impl LocalCohomologyTable {
    pub fn new(fan: Fan, field: &Field) -> Result<LocalCohomologyTable> {
        let krull = krull_dimension(&fan);
        let mut per_cone = Vec::with_capacity(fan.cones().len());
        for (i, c) in fan.cones().iter().enumerate() {
            let h = interval_cohomology(&fan, i, field)?;
            let shift = c.dim() as i64 + 1;
            per_cone.push(h.iter().map(|(&p, &v)| (p + shift, v)).collect());
        }
        Ok(LocalCohomologyTable {
            fan,
            field: field.clone(),
            krull,
            per_cone,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn krull(&self) -> usize {
        self.krull
    }

    /// The contribution of one cone (indexed like `fan.cones()`), already
    /// shifted to cohomological degrees.
    pub fn cone_contribution(&self, i: usize) -> &BettiVector {
        &self.per_cone[i]
    }

    /// All local cohomology dimensions in multidegree `a`.
    pub fn dims_at(&self, a: &[BigInt]) -> Result<BettiVector> {
        let minus: Vec<BigInt> = a.iter().map(|x| -x).collect();
        Ok(match self.fan.carrier_cone(&minus)? {
            Some(c) => self.per_cone[c].clone(),
            None => BettiVector::new(),
        })
    }

    /// One local cohomology dimension in multidegree `a`.
    pub fn dim(&self, i: i64, a: &[BigInt]) -> Result<usize> {
        Ok(self.dims_at(a)?.get(&i).copied().unwrap_or(0))
    }
}

/// All local cohomology dimensions in one multidegree without building the
/// full table: only the carrier cone's interval is examined.
pub fn local_cohomology_dims(fan: &Fan, field: &Field, a: &[BigInt]) -> Result<BettiVector> {
    let minus: Vec<BigInt> = a.iter().map(|x| -x).collect();
    let Some(c) = fan.carrier_cone(&minus)? else {
        return Ok(BettiVector::new());
    };
    let h = interval_cohomology(fan, c, field)?;
    let shift = fan.cone(c).dim() as i64 + 1;
    Ok(h.iter().map(|(&p, &v)| (p + shift, v)).collect())
}

/// A failed vanishing condition: the open interval above `cone` has
/// `dim`-dimensional reduced cohomology in degree `degree`, where the
/// criterion requires zero.
#[derive(Debug, Clone)]
pub struct IntervalWitness {
    pub cone: String,
    pub degree: i64,
    pub dim: usize,
}

/// Outcome of a vanishing criterion, with every violation listed.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub holds: bool,
    pub witnesses: Vec<IntervalWitness>,
}

fn interval_vanishing(fan: &Fan, field: &Field, skip_zero: bool) -> Result<CriterionReport> {
    let krull = krull_dimension(fan) as i64;
    let mut witnesses = Vec::new();
    for (i, c) in fan.cones().iter().enumerate() {
        if skip_zero && c.is_zero() {
            continue;
        }
        let allowed = krull - c.dim() as i64 - 1;
        for (&p, &v) in interval_cohomology(fan, i, field)?.iter() {
            if p != allowed {
                witnesses.push(IntervalWitness {
                    cone: c.label(),
                    degree: p,
                    dim: v,
                });
            }
        }
    }
    Ok(CriterionReport {
        holds: witnesses.is_empty(),
        witnesses,
    })
}

/// Cohen–Macaulayness of the toric face ring: every cone's open upper
/// interval (the zero cone included) may carry reduced cohomology only in
/// degree `krull − dim − 1`.
pub fn cm_test(fan: &Fan, field: &Field) -> Result<CriterionReport> {
    interval_vanishing(fan, field, false)
}

/// Buchsbaum criterion: the same vanishing with the zero cone exempted.
/// Only meaningful for fans of simplicial complexes (where the grading
/// hypotheses behind the criterion hold), so other fans are rejected.
pub fn buchsbaum_test(fan: &Fan, field: &Field) -> Result<CriterionReport> {
    if !fan.is_from_complex() {
        return Err(Error::NotFromComplex);
    }
    interval_vanishing(fan, field, true)
}

/// The implication "Cohen–Macaulay order complex ⇒ Cohen–Macaulay ring",
/// evaluated on both sides: the order complex of the nonzero cones is
/// tested with the link criterion, the ring with [`cm_test`].
#[derive(Debug, Clone)]
pub struct StanleyReport {
    pub order_complex_cm: bool,
    pub ring_cm: bool,
}

impl StanleyReport {
    /// False exactly when the implication is violated.
    pub fn consistent(&self) -> bool {
        !self.order_complex_cm || self.ring_cm
    }
}

pub fn stanley_check(fan: &Fan, field: &Field) -> Result<StanleyReport> {
    let poset = fan.face_poset();
    let nonzero: Vec<usize> = (0..fan.cones().len())
        .filter(|&i| !fan.cone(i).is_zero())
        .collect();
    let order_complex = poset.induced(&nonzero).order_complex()?;
    Ok(StanleyReport {
        order_complex_cm: reisner_criterion(&order_complex, field)?,
        ring_cm: cm_test(fan, field)?.holds,
    })
}

/// The degree-`a` sheaf on the face poset: a one-dimensional stalk on every
/// cone containing `a` (an upward-closed set — the principal filter of the
/// carrier when `a` is in the support), identity transitions inside.
pub fn degree_sheaf(fan: &Fan, field: &Field, a: &[BigInt]) -> Result<KpModule> {
    let mut members: BTreeSet<usize> = BTreeSet::new();
    for (i, c) in fan.cones().iter().enumerate() {
        if c.contains(a)? {
            members.insert(i);
        }
    }
    Ok(KpModule::upper_set_unit(fan.face_poset(), field, &members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::SimplicialComplex;

    fn complex(vertices: &[&str], facets: &[&[&str]]) -> SimplicialComplex {
        let v: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let f: Vec<Vec<String>> = facets
            .iter()
            .map(|f| f.iter().map(|s| s.to_string()).collect())
            .collect();
        SimplicialComplex::from_facets(v, &f).unwrap()
    }

    fn b(coords: &[i64]) -> Vec<BigInt> {
        coords.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn embed_appends_the_coordinate_sum() {
        assert_eq!(embed(&[1, -2, 0]), b(&[1, -2, 0, -1]));
        assert_eq!(embed(&[]), b(&[0]));
    }

    #[test]
    fn one_variable_polynomial_ring() {
        let fan = Fan::fan_of_complex(&complex(&["1"], &[&["1"]])).unwrap();
        let q = Field::Rationals;
        assert_eq!(krull_dimension(&fan), 1);
        let table = LocalCohomologyTable::new(fan, &q).unwrap();
        // Top cohomology exactly in strictly negative degrees.
        assert_eq!(
            table.dims_at(&embed(&[-1])).unwrap(),
            BettiVector::from([(1, 1)])
        );
        assert_eq!(
            table.dims_at(&embed(&[-4])).unwrap(),
            BettiVector::from([(1, 1)])
        );
        assert!(table.dims_at(&embed(&[0])).unwrap().is_empty());
        assert!(table.dims_at(&embed(&[3])).unwrap().is_empty());
    }

    #[test]
    fn two_disjoint_points_connectedness_obstruction() {
        let fan = Fan::fan_of_complex(&complex(&["1", "2"], &[&["1"], &["2"]])).unwrap();
        let q = Field::Rationals;
        assert_eq!(krull_dimension(&fan), 1);
        let table = LocalCohomologyTable::new(fan.clone(), &q).unwrap();
        assert_eq!(
            table.dims_at(&embed(&[0, 0])).unwrap(),
            BettiVector::from([(1, 1)])
        );
        assert_eq!(
            table.dims_at(&embed(&[-1, 0])).unwrap(),
            BettiVector::from([(1, 1)])
        );
        assert!(table.dims_at(&embed(&[1, 0])).unwrap().is_empty());
        // The one-shot route agrees with the table.
        assert_eq!(
            local_cohomology_dims(&fan, &q, &embed(&[0, 0])).unwrap(),
            BettiVector::from([(1, 1)])
        );
        // K[x,y]/(xy) is one-dimensional and Cohen–Macaulay.
        assert!(cm_test(&fan, &q).unwrap().holds);
    }

    #[test]
    fn two_disjoint_edges_fail_cm_but_are_buchsbaum() {
        let fan = Fan::fan_of_complex(&complex(
            &["1", "2", "3", "4"],
            &[&["1", "2"], &["3", "4"]],
        ))
        .unwrap();
        let q = Field::Rationals;
        assert_eq!(krull_dimension(&fan), 2);
        let report = cm_test(&fan, &q).unwrap();
        assert!(!report.holds);
        assert_eq!(report.witnesses.len(), 1);
        let w = &report.witnesses[0];
        assert_eq!(w.cone, "cone{}");
        assert_eq!(w.degree, 0);
        assert_eq!(w.dim, 1);
        assert!(buchsbaum_test(&fan, &q).unwrap().holds);
    }

    #[test]
    fn lone_vertex_next_to_an_edge_is_not_buchsbaum() {
        let fan =
            Fan::fan_of_complex(&complex(&["1", "2", "3"], &[&["1", "2"], &["3"]])).unwrap();
        let q = Field::Rationals;
        let report = buchsbaum_test(&fan, &q).unwrap();
        assert!(!report.holds);
        // The vertex cone of "3" has an empty interval above it, giving
        // cohomology in degree −1 where degree 0 is required.
        assert!(report
            .witnesses
            .iter()
            .any(|w| w.degree == -1 && w.cone.contains("(0,0,1,1)")));
    }

    #[test]
    fn buchsbaum_requires_a_complex_fan() {
        use crate::fan::Cone;
        let c = Cone::from_generators(2, &[b(&[1, 0]), b(&[0, 1])]).unwrap();
        let fan = Fan::from_maximal(2, vec![c]).unwrap();
        assert!(matches!(
            buchsbaum_test(&fan, &Field::Rationals),
            Err(Error::NotFromComplex)
        ));
    }

    #[test]
    fn monomial_products_vanish_across_components() {
        let fan = Fan::fan_of_complex(&complex(&["1", "2"], &[&["1"], &["2"]])).unwrap();
        let x = embed(&[1, 0]);
        let y = embed(&[0, 1]);
        assert_eq!(monomial_product(&fan, &x, &x).unwrap(), Some(b(&[2, 0, 2])));
        assert_eq!(monomial_product(&fan, &x, &y).unwrap(), None);
        let outside = b(&[1, 1, 2]);
        assert!(matches!(
            monomial_product(&fan, &x, &outside),
            Err(Error::DegreeNotInRing(_))
        ));
    }

    #[test]
    fn hilbert_values_on_an_edge() {
        let fan = Fan::fan_of_complex(&complex(&["1", "2"], &[&["1", "2"]])).unwrap();
        assert_eq!(hilbert_value(&fan, &embed(&[1, 1])).unwrap(), 1);
        assert_eq!(hilbert_value(&fan, &embed(&[0, 0])).unwrap(), 1);
        assert_eq!(hilbert_value(&fan, &embed(&[-1, 0])).unwrap(), 0);
        assert_eq!(hilbert_value(&fan, &b(&[1, 1, 0])).unwrap(), 0);
    }

    #[test]
    fn degree_sheaf_sections_recover_the_hilbert_function() {
        let fan = Fan::fan_of_complex(&complex(
            &["1", "2", "3"],
            &[&["1", "2"], &["2", "3"]],
        ))
        .unwrap();
        let q = Field::Rationals;
        for a in [embed(&[0, 0, 0]), embed(&[1, 1, 0]), embed(&[0, -1, 0])] {
            let sheaf = degree_sheaf(&fan, &q, &a).unwrap();
            assert!(sheaf.is_flasque().unwrap().is_none());
            let h = sheaf.poset_cohomology().unwrap();
            let expected = hilbert_value(&fan, &a).unwrap();
            assert_eq!(h.get(&0).copied().unwrap_or(0), expected);
            assert!(h.keys().all(|&d| d == 0));
        }
    }

    #[test]
    fn stanley_implication_on_small_rings() {
        let q = Field::Rationals;
        // Cohen–Macaulay ring: the hollow triangle.
        let circle = Fan::fan_of_complex(&complex(
            &["1", "2", "3"],
            &[&["1", "2"], &["1", "3"], &["2", "3"]],
        ))
        .unwrap();
        let r = stanley_check(&circle, &q).unwrap();
        assert!(r.order_complex_cm && r.ring_cm && r.consistent());
        // Non-CM ring: the order complex must fail too.
        let edges = Fan::fan_of_complex(&complex(
            &["1", "2", "3", "4"],
            &[&["1", "2"], &["3", "4"]],
        ))
        .unwrap();
        let r = stanley_check(&edges, &q).unwrap();
        assert!(!r.order_complex_cm && !r.ring_cm && r.consistent());
    }
}
