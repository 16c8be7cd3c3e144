//! Finite posets: Hasse input, Alexandrov lower sets, open intervals, order
//! complexes and gradedness.
//!
//! A poset is stored immutably as a label list, a precomputed `n × n` boolean
//! relation table, and the list of covering pairs. Elements are addressed by
//! index internally; labels are unique and carry all external identity.
//!
//! The *lower sets* (downward-closed subsets) are exactly the open sets of
//! the Alexandrov topology used by the sheaf-theoretic parts of this crate.

use std::collections::HashMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::json::Label;
use crate::simplicial::SimplicialComplex;

/// Environment variable overriding the element-count bound for exhaustive
/// lower-set enumeration (default [`DEFAULT_OPEN_SET_BOUND`]).
pub const OPEN_SET_BOUND_VAR: &str = "FACERING_OPEN_SET_BOUND";

/// Default bound on `|P|` for operations that enumerate all lower sets.
pub const DEFAULT_OPEN_SET_BOUND: usize = 20;

/// Current lower-set enumeration bound.
pub fn open_set_bound() -> usize {
    std::env::var(OPEN_SET_BOUND_VAR)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_OPEN_SET_BOUND)
}

/// A finite partially ordered set with string labels.
#[derive(Debug, Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    /// Row-major `n × n` table; `leq[i * n + j]` means `i ≤ j`.
    leq: Vec<bool>,
    /// Covering pairs `(lower, upper)`, sorted.
    hasse: Vec<(usize, usize)>,
    /// Lazily computed chain list (chains are wanted repeatedly by cochain
    /// constructions over the same poset).
    chains_cache: std::sync::OnceLock<Vec<Vec<usize>>>,
}

/// JSON input schema: `{"elements": [...], "hasse": [["a","b"], ...]}` with
/// each Hasse pair written lower-element first.
#[derive(Debug, Deserialize)]
pub struct PosetInput {
    pub elements: Vec<Label>,
    #[serde(default)]
    pub hasse: Vec<(Label, Label)>,
}

impl TryFrom<PosetInput> for Poset {
    type Error = Error;
    fn try_from(input: PosetInput) -> Result<Poset> {
        let labels: Vec<String> = input.elements.into_iter().map(Label::into_string).collect();
        let edges: Vec<(String, String)> = input
            .hasse
            .into_iter()
            .map(|(a, b)| (a.into_string(), b.into_string()))
            .collect();
        Poset::from_hasse(labels, &edges)
    }
}

impl Poset {
    /// Builds a poset from labels and Hasse (covering) edges.
    ///
    /// Rejects duplicate labels, cyclic edge sets, and edges that are not
    /// covering relations of the generated order (listing the redundant
    /// pairs in the error).
    pub fn from_hasse(labels: Vec<String>, edges: &[(String, String)]) -> Result<Poset> {
        let index = build_index(&labels)?;
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let i = *index
                .get(a)
                .ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let j = *index
                .get(b)
                .ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            pairs.push((i, j));
        }
        let poset = Poset::from_relation_pairs(labels, index, &pairs)?;
        // Every input edge must be a covering relation: nothing strictly
        // between its endpoints.
        let n = poset.len();
        let mut redundant = Vec::new();
        for &(i, j) in &pairs {
            if i == j {
                redundant.push((poset.labels[i].clone(), poset.labels[j].clone()));
                continue;
            }
            for z in 0..n {
                if z != i && z != j && poset.leq(i, z) && poset.leq(z, j) {
                    redundant.push((poset.labels[i].clone(), poset.labels[j].clone()));
                    break;
                }
            }
        }
        if !redundant.is_empty() {
            redundant.sort();
            redundant.dedup();
            return Err(Error::NonCoveringEdges(redundant));
        }
        Ok(poset)
    }

    /// Builds a poset from arbitrary relation pairs `(i ≤ j)`; the reflexive
    /// transitive closure is taken and covering pairs are derived. Rejects
    /// cycles.
    pub fn from_relation(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let index = build_index(&labels)?;
        Poset::from_relation_pairs(labels, index, pairs)
    }

    fn from_relation_pairs(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset> {
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in pairs {
            assert!(i < n && j < n, "relation index out of range");
            leq[i * n + j] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::HasseCycle(labels[i].clone()));
                }
            }
        }
        let mut hasse = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !leq[i * n + j] {
                    continue;
                }
                let covered = (0..n)
                    .any(|z| z != i && z != j && leq[i * n + z] && leq[z * n + j]);
                if !covered {
                    hasse.push((i, j));
                }
            }
        }
        hasse.sort_unstable();
        Ok(Poset {
            labels,
            index,
            leq,
            hasse,
            chains_cache: std::sync::OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// `i ≤ j` in the order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    /// `i < j` strictly.
    pub fn less(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Covering pairs `(lower, upper)` in sorted order.
    pub fn hasse_edges(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// Covers of `i` from below: elements `x` with `x ⋖ i`.
    pub fn covers_below(&self, i: usize) -> Vec<usize> {
        self.hasse
            .iter()
            .filter(|&&(_, u)| u == i)
            .map(|&(l, _)| l)
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.less(i, j)))
            .collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.less(j, i)))
            .collect()
    }

    /// Induced subposet on the given element indices (kept in the given
    /// order); labels are inherited.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let index = build_index(&labels).expect("induced labels stay unique");
        let n = keep.len();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.leq(keep[a], keep[b]);
            }
        }
        let mut hasse = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !leq[a * n + b] {
                    continue;
                }
                let covered =
                    (0..n).any(|z| z != a && z != b && leq[a * n + z] && leq[z * n + b]);
                if !covered {
                    hasse.push((a, b));
                }
            }
        }
        hasse.sort_unstable();
        Poset {
            labels,
            index,
            leq,
            hasse,
            chains_cache: std::sync::OnceLock::new(),
        }
    }

    /// The open interval `(x, 1̂)`: the induced subposet on all elements
    /// strictly above `x`.
    pub fn open_interval(&self, x: usize) -> Poset {
        let keep: Vec<usize> = (0..self.len()).filter(|&y| self.less(x, y)).collect();
        self.induced(&keep)
    }

    /// The principal open set `(0̂, x)`: all elements strictly below `x`.
    pub fn strictly_below(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.less(y, x)).collect()
    }

    /// Indices in a topological order (every element after all elements
    /// below it).
    pub fn topological_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| self.strictly_below(i).len());
        // Counting strict predecessors sorts compatibly with the order:
        // x < y implies pred(x) ⊊ pred(y).
        order
    }

    /// All lower sets (Alexandrov open sets), each as a sorted index list.
    ///
    /// Exhaustive enumeration; errors when the poset exceeds the configured
    /// bound (default 20 elements, override with `FACERING_OPEN_SET_BOUND`).
    pub fn lower_sets(&self) -> Result<Vec<Vec<usize>>> {
        // Masks below are u64, so the bound can never usefully exceed 63.
        let bound = open_set_bound().min(63);
        if self.len() > bound {
            return Err(Error::SizeBound {
                what: "poset for lower-set enumeration",
                size: self.len(),
                bound,
            });
        }
        let topo = self.topological_order();
        let mut below_mask = vec![0u64; self.len()];
        for i in 0..self.len() {
            let mut m = 0u64;
            for &l in &self.covers_below(i) {
                m |= 1 << l;
            }
            below_mask[i] = m;
        }
        let mut out: Vec<u64> = Vec::new();
        let mut stack = vec![(0usize, 0u64)];
        while let Some((pos, mask)) = stack.pop() {
            if pos == topo.len() {
                out.push(mask);
                continue;
            }
            let e = topo[pos];
            // Exclude e.
            stack.push((pos + 1, mask));
            // Include e only when everything it covers is already in.
            if below_mask[e] & !mask == 0 {
                stack.push((pos + 1, mask | (1 << e)));
            }
        }
        out.sort_unstable();
        Ok(out
            .into_iter()
            .map(|mask| (0..self.len()).filter(|&i| mask >> i & 1 == 1).collect())
            .collect())
    }

    /// The order complex: vertices are the elements, faces are the chains.
    pub fn order_complex(&self) -> Result<SimplicialComplex> {
        if self.len() > 64 {
            return Err(Error::TooManyVertices(self.len(), 64));
        }
        let chains = self.chains();
        let mut faces = std::collections::BTreeSet::new();
        faces.insert(0u64);
        for chain in chains {
            let mut mask = 0u64;
            for &i in chain {
                mask |= 1 << i;
            }
            faces.insert(mask);
        }
        SimplicialComplex::from_faces(self.labels.clone(), faces)
    }

    /// All nonempty chains, each strictly increasing in the order. The list
    /// is computed once per poset and cached.
    pub fn chains(&self) -> &[Vec<usize>] {
        self.chains_cache.get_or_init(|| {
            let topo = self.topological_order();
            let mut out = Vec::new();
            let mut current = Vec::new();
            for start in 0..topo.len() {
                self.extend_chain(&topo, start, &mut current, &mut out);
            }
            out
        })
    }

    fn extend_chain(
        &self,
        topo: &[usize],
        pos: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let e = topo[pos];
        if let Some(&last) = current.last() {
            if !self.less(last, e) {
                return;
            }
        }
        current.push(e);
        out.push(current.clone());
        for next in pos + 1..topo.len() {
            self.extend_chain(topo, next, current, out);
        }
        current.pop();
    }

    /// Rank function when the poset is graded, i.e. when for every element
    /// all maximal chains ending there have the same length; `None`
    /// otherwise. Equivalently: the longest-path rank increases by exactly
    /// one across every covering pair.
    pub fn grading(&self) -> Option<Vec<usize>> {
        let topo = self.topological_order();
        let n = self.len();
        let mut rank = vec![0usize; n];
        for &i in &topo {
            for &l in &self.covers_below(i) {
                rank[i] = rank[i].max(rank[l] + 1);
            }
        }
        for &(l, u) in &self.hasse {
            if rank[u] != rank[l] + 1 {
                return None;
            }
        }
        Some(rank)
    }

    /// Whether [`Poset::grading`] exists.
    pub fn is_graded(&self) -> bool {
        self.grading().is_some()
    }
}

fn build_index(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::random_poset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    /// The "V" poset: a < c, b < c.
    fn v_poset() -> Poset {
        Poset::from_hasse(
            labels(&["a", "b", "c"]),
            &[
                ("a".into(), "c".into()),
                ("b".into(), "c".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn non_covering_edges_are_rejected_with_the_redundant_pairs() {
        let err = Poset::from_hasse(
            labels(&["a", "b", "c"]),
            &[
                ("a".into(), "b".into()),
                ("b".into(), "c".into()),
                ("a".into(), "c".into()),
            ],
        )
        .unwrap_err();
        match err {
            Error::NonCoveringEdges(pairs) => {
                assert_eq!(pairs, vec![("a".to_string(), "c".to_string())]);
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn cycles_are_rejected() {
        let err = Poset::from_hasse(
            labels(&["a", "b"]),
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
        )
        .unwrap_err();
        assert!(matches!(err, Error::HasseCycle(_)));
    }

    #[test]
    fn lower_sets_of_v_poset() {
        let p = v_poset();
        let ls = p.lower_sets().unwrap();
        let as_labels: Vec<Vec<&str>> = ls
            .iter()
            .map(|s| s.iter().map(|&i| p.label(i)).collect())
            .collect();
        assert_eq!(
            as_labels,
            vec![
                Vec::<&str>::new(),
                vec!["a"],
                vec!["b"],
                vec!["a", "b"],
                vec!["a", "b", "c"],
            ]
        );
    }

    #[test]
    fn lower_sets_agree_with_brute_force_filter() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let n = rng.gen_range(0..7);
            let p = random_poset(&mut rng, n);
            let mut expected: Vec<Vec<usize>> = Vec::new();
            for mask in 0u32..1 << n {
                let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let is_lower = set.iter().all(|&i| {
                    (0..n).all(|j| !p.less(j, i) || set.contains(&j))
                });
                if is_lower {
                    expected.push(set);
                }
            }
            let mut got = p.lower_sets().unwrap();
            expected.sort();
            got.sort();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn lower_sets_are_closed_under_union_and_intersection() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let n = rng.gen_range(1..7);
            let p = random_poset(&mut rng, n);
            let sets: Vec<std::collections::BTreeSet<usize>> = p
                .lower_sets()
                .unwrap()
                .into_iter()
                .map(|s| s.into_iter().collect())
                .collect();
            let all: std::collections::BTreeSet<_> = sets.iter().cloned().collect();
            for a in &sets {
                for b in &sets {
                    let union: std::collections::BTreeSet<usize> =
                        a.union(b).copied().collect();
                    let inter: std::collections::BTreeSet<usize> =
                        a.intersection(b).copied().collect();
                    assert!(all.contains(&union));
                    assert!(all.contains(&inter));
                }
            }
        }
    }

    #[test]
    fn open_interval_above_a_vertex() {
        let p = v_poset();
        let a = p.index_of("a").unwrap();
        let interval = p.open_interval(a);
        assert_eq!(interval.labels(), &["c".to_string()]);
    }

    #[test]
    fn size_bound_is_enforced() {
        let n = DEFAULT_OPEN_SET_BOUND + 1;
        let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let p = Poset::from_relation(labels, &[]).unwrap();
        assert!(matches!(p.lower_sets(), Err(Error::SizeBound { .. })));
    }

    #[test]
    fn order_complex_of_a_chain_is_a_simplex() {
        let p = Poset::from_hasse(
            labels(&["a", "b", "c"]),
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        let oc = p.order_complex().unwrap();
        // A 3-chain has 2^3 faces including the empty face.
        assert_eq!(oc.faces().count(), 8);
        assert_eq!(oc.dim(), 2);
    }

    #[test]
    fn chains_agree_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let n = rng.gen_range(0..6);
            let p = random_poset(&mut rng, n);
            let mut expected = Vec::new();
            for mask in 1u32..1 << n {
                let mut set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                let total = set
                    .iter()
                    .all(|&i| set.iter().all(|&j| i == j || p.less(i, j) || p.less(j, i)));
                if total {
                    set.sort_by(|&a, &b| {
                        if p.less(a, b) {
                            std::cmp::Ordering::Less
                        } else {
                            std::cmp::Ordering::Greater
                        }
                    });
                    expected.push(set);
                }
            }
            let mut got = p.chains().to_vec();
            got.sort();
            expected.sort();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn empty_poset_has_the_empty_order_complex() {
        let p = Poset::from_relation(vec![], &[]).unwrap();
        let oc = p.order_complex().unwrap();
        assert_eq!(oc.vertex_count(), 0);
        assert_eq!(oc.faces().count(), 1); // just the empty face
        assert_eq!(oc.dim(), -1);
    }

    #[test]
    fn grading_of_chains_and_vees() {
        let chain = Poset::from_hasse(
            labels(&["a", "b", "c"]),
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
        )
        .unwrap();
        assert_eq!(chain.grading(), Some(vec![0, 1, 2]));

        assert_eq!(v_poset().grading(), Some(vec![0, 0, 1]));

        // a < b < c and d < c: chains ending at c have lengths 2 and 1.
        let skew = Poset::from_hasse(
            labels(&["a", "b", "c", "d"]),
            &[
                ("a".into(), "b".into()),
                ("b".into(), "c".into()),
                ("d".into(), "c".into()),
            ],
        )
        .unwrap();
        assert_eq!(skew.grading(), None);
    }

    #[test]
    fn json_round_trip() {
        let input: PosetInput =
            serde_json::from_str(r#"{"elements":["a","b","c"],"hasse":[["a","c"],["b","c"]]}"#)
                .unwrap();
        let p = Poset::try_from(input).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.less(p.index_of("a").unwrap(), p.index_of("c").unwrap()));

        // Numeric labels are accepted and canonicalized.
        let input: PosetInput =
            serde_json::from_str(r#"{"elements":[1,2],"hasse":[[1,2]]}"#).unwrap();
        let p = Poset::try_from(input).unwrap();
        assert_eq!(p.labels(), &["1".to_string(), "2".to_string()]);
    }
}
