//! Test corpora: exhaustive small complexes, seeded pseudo-random
//! complexes and posets, and a handful of named instances that exercise
//! known boundaries (Cohen–Macaulayness failing, field dependence, …).
//!
//! Everything here is deterministic — random generators take an explicit
//! seeded [`ChaCha8Rng`] — so corpus-driven tests are reproducible.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::poset::Poset;
use crate::simplicial::SimplicialComplex;

fn numbered_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn complex(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
    let facets: Vec<Vec<String>> = facets
        .iter()
        .map(|f| f.iter().map(|v| v.to_string()).collect())
        .collect();
    SimplicialComplex::from_facets(numbered_labels(n), &facets).expect("valid named complex")
}

/// The empty complex (no vertices, only the empty face).
pub fn empty_complex() -> SimplicialComplex {
    SimplicialComplex::empty(Vec::new()).expect("empty complex")
}

/// Two isolated vertices: the smallest disconnected complex.
pub fn two_disjoint_points() -> SimplicialComplex {
    complex(2, &[&[1], &[2]])
}

/// The boundary of a triangle: a one-dimensional circle.
pub fn hollow_triangle() -> SimplicialComplex {
    complex(3, &[&[1, 2], &[1, 3], &[2, 3]])
}

/// Two disjoint edges: connected in no degree, equidimensional, the
/// standard Buchsbaum-but-not-Cohen–Macaulay example.
pub fn two_disjoint_edges() -> SimplicialComplex {
    complex(4, &[&[1, 2], &[3, 4]])
}

/// An edge next to an isolated vertex: not even Buchsbaum.
pub fn edge_and_point() -> SimplicialComplex {
    complex(3, &[&[1, 2], &[3]])
}

/// The 6-vertex triangulation of the real projective plane. Its reduced
/// cohomology — and with it Cohen–Macaulayness — depends on whether the
/// field has characteristic two.
pub fn projective_plane() -> SimplicialComplex {
    complex(
        6,
        &[
            &[1, 2, 3],
            &[1, 2, 6],
            &[1, 3, 5],
            &[1, 4, 5],
            &[1, 4, 6],
            &[2, 3, 4],
            &[2, 4, 5],
            &[2, 5, 6],
            &[3, 4, 6],
            &[3, 5, 6],
        ],
    )
}

/// All simplicial complexes on the vertex set `{1, …, n}` for every
/// `n ≤ max_vertices` — 194 in total up to four vertices. Unused vertices
/// are allowed (the same face family on a larger vertex set is a different
/// complex: its ring has more variables), and the empty complex appears
/// for each `n`.
///
/// Enumeration walks the downward-closed families of nonempty faces in
/// mask order; a face may join a family only after all its proper
/// subfaces, which visits every closed family exactly once.
pub fn all_complexes_up_to(max_vertices: usize) -> Vec<SimplicialComplex> {
    assert!(max_vertices <= 5, "exhaustive enumeration is doubly exponential");
    let mut out = Vec::new();
    for n in 0..=max_vertices {
        let masks: Vec<u32> = (1u32..1 << n).collect();
        let mut families: Vec<Vec<u32>> = vec![Vec::new()];
        for &mask in &masks {
            // A family may adopt `mask` only if it already holds every
            // single-deletion submask; those are numerically smaller, so
            // they were offered first.
            let extended: Vec<Vec<u32>> = families
                .iter()
                .filter(|fam| {
                    (0..n).all(|i| {
                        let sub = mask & !(1 << i);
                        sub == mask || sub == 0 || fam.contains(&sub)
                    })
                })
                .map(|fam| {
                    let mut fam = fam.clone();
                    fam.push(mask);
                    fam
                })
                .collect();
            families.extend(extended);
        }
        for fam in families {
            let faces: Vec<Vec<String>> = fam
                .iter()
                .map(|&mask| {
                    (0..n)
                        .filter(|&i| mask & (1 << i) != 0)
                        .map(|i| (i + 1).to_string())
                        .collect()
                })
                .collect();
            out.push(
                SimplicialComplex::from_facets(numbered_labels(n), &faces)
                    .expect("closed family"),
            );
        }
    }
    out
}

/// A pseudo-random complex on `n` labelled vertices: a few facets of
/// mixed dimension, downward-closed. Isolated vertices are possible.
pub fn random_complex(rng: &mut ChaCha8Rng, n: usize) -> SimplicialComplex {
    let facet_count = rng.gen_range(2..=5);
    let mut facets: Vec<Vec<String>> = Vec::new();
    for _ in 0..facet_count {
        let size = rng.gen_range(1..=n.min(4));
        let mut picks: Vec<usize> = (0..n).collect();
        for i in 0..size {
            let j = rng.gen_range(i..n);
            picks.swap(i, j);
        }
        facets.push(picks[..size].iter().map(|v| (v + 1).to_string()).collect());
    }
    SimplicialComplex::from_facets(numbered_labels(n), &facets).expect("random facets are valid")
}

/// A pseudo-random poset on `n` elements labelled `e0, …`: each pair
/// `i < j` of indices is made comparable with probability 0.35, then the
/// relation is closed transitively.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Poset {
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.35) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_relation(labels, &pairs).expect("index order is acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn small_complex_counts() {
        // Downward-closed families of nonempty subsets: 1 on zero
        // vertices, 2 on one, 5 on two, 19 on three, 167 on four (one less
        // than the corresponding Dedekind number, which also counts the
        // family containing the empty set).
        assert_eq!(all_complexes_up_to(0).len(), 1);
        assert_eq!(all_complexes_up_to(1).len(), 1 + 2);
        assert_eq!(all_complexes_up_to(2).len(), 1 + 2 + 5);
        assert_eq!(all_complexes_up_to(3).len(), 1 + 2 + 5 + 19);
        let all = all_complexes_up_to(4);
        assert_eq!(all.len(), 1 + 2 + 5 + 19 + 167);
        // Spot checks: the enumeration contains the named instances and
        // every family is closed (rebuilding from facets is lossless).
        let edges = two_disjoint_edges();
        assert!(all
            .iter()
            .any(|c| c.vertex_count() == 4 && c.faces().eq(edges.faces())));
        for c in &all {
            let rebuilt =
                SimplicialComplex::from_facets(c.vertex_labels().to_vec(), &c.facet_labels())
                    .unwrap();
            assert!(rebuilt.faces().eq(c.faces()));
        }
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let all = all_complexes_up_to(4);
        let mut seen = std::collections::BTreeSet::new();
        for c in &all {
            let key = (c.vertex_count(), c.faces().collect::<Vec<_>>());
            assert!(seen.insert(key));
        }
    }

    #[test]
    fn random_generators_are_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for n in [5, 6] {
            let ca = random_complex(&mut a, n);
            let cb = random_complex(&mut b, n);
            assert!(ca.faces().eq(cb.faces()));
        }
        let p = random_poset(&mut a, 6);
        let q = random_poset(&mut b, 6);
        assert_eq!(p.hasse_edges(), q.hasse_edges());
    }

    #[test]
    fn projective_plane_is_a_closed_surface() {
        let rp = projective_plane();
        assert_eq!(rp.dim(), 2);
        assert_eq!(rp.facets().len(), 10);
        // Every edge lies in exactly two triangles.
        for face in rp.faces() {
            if face.count_ones() != 2 {
                continue;
            }
            let triangles = rp
                .facets()
                .iter()
                .filter(|&&f| f & face == face)
                .count();
            assert_eq!(triangles, 2);
        }
    }
}
