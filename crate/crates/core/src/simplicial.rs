//! Finite abstract simplicial complexes with exact reduced cohomology.
//!
//! Faces are stored as bitsets over an indexed vertex list (at most 64
//! vertices), closed under taking subsets. The empty face is always present:
//! the smallest representable complex is `{∅}`, whose reduced cohomology is
//! one-dimensional in degree −1; the void complex (no faces at all) is
//! deliberately unrepresentable.

use std::collections::{BTreeMap, BTreeSet};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::json::Label;
use crate::linalg::{BettiVector, CochainComplex, Field, Matrix, Scalar};
use crate::poset::Poset;

/// Hard cap on the vertex count, imposed by the bitset representation.
pub const MAX_VERTICES: usize = 64;

/// Guard against exponential closure blow-up from a single huge facet.
const MAX_FACET_SIZE: usize = 24;

/// An abstract simplicial complex on a fixed, ordered vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    /// Every face as a bitmask over the vertex list; contains `0` (the empty
    /// face) and is closed under submasks that drop single bits.
    faces: BTreeSet<u64>,
}

/// JSON input schema: `{"vertices": [...], "facets": [[...]]}`. The complex
/// is the downward closure of the listed facets; an empty facet list yields
/// the complex `{∅}`.
#[derive(Debug, Deserialize)]
pub struct ComplexInput {
    pub vertices: Vec<Label>,
    #[serde(default)]
    pub facets: Vec<Vec<Label>>,
}

impl TryFrom<ComplexInput> for SimplicialComplex {
    type Error = Error;
    fn try_from(input: ComplexInput) -> Result<SimplicialComplex> {
        let vertices: Vec<String> = input.vertices.into_iter().map(Label::into_string).collect();
        let facets: Vec<Vec<String>> = input
            .facets
            .into_iter()
            .map(|f| f.into_iter().map(Label::into_string).collect())
            .collect();
        SimplicialComplex::from_facets(vertices, &facets)
    }
}

impl SimplicialComplex {
    /// Downward closure of the given facets.
    pub fn from_facets(vertices: Vec<String>, facets: &[Vec<String>]) -> Result<SimplicialComplex> {
        let sc = SimplicialComplex::empty(vertices)?;
        let mut faces = BTreeSet::new();
        faces.insert(0u64);
        for facet in facets {
            if facet.len() > MAX_FACET_SIZE {
                return Err(Error::SizeBound {
                    what: "facet",
                    size: facet.len(),
                    bound: MAX_FACET_SIZE,
                });
            }
            let mut mask = 0u64;
            for v in facet {
                let i = sc.vertex_index(v)?;
                mask |= 1 << i;
            }
            // All submasks of the facet, by the usual descending trick.
            let mut sub = mask;
            loop {
                faces.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        Ok(SimplicialComplex {
            vertices: sc.vertices,
            faces,
        })
    }

    /// The complex `{∅}` on the given (possibly empty) vertex list.
    pub fn empty(vertices: Vec<String>) -> Result<SimplicialComplex> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(vertices.len(), MAX_VERTICES));
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let mut faces = BTreeSet::new();
        faces.insert(0u64);
        Ok(SimplicialComplex { vertices, faces })
    }

    /// Builds a complex from an explicit face set, validating closure under
    /// single-vertex deletion (which implies full subset closure).
    pub fn from_faces(vertices: Vec<String>, faces: BTreeSet<u64>) -> Result<SimplicialComplex> {
        let sc = SimplicialComplex::empty(vertices)?;
        for &face in &faces {
            let mut bit = face;
            while bit != 0 {
                let low = bit & bit.wrapping_neg();
                if !faces.contains(&(face & !low)) {
                    let inner = sc.face_label(face).trim_matches(['{', '}']).to_string();
                    return Err(Error::NotClosed(inner));
                }
                bit &= bit - 1;
            }
        }
        let mut faces = faces;
        faces.insert(0u64);
        Ok(SimplicialComplex {
            vertices: sc.vertices,
            faces,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// All faces as bitmasks, ascending; always includes `0`.
    pub fn faces(&self) -> impl Iterator<Item = u64> + '_ {
        self.faces.iter().copied()
    }

    pub fn contains(&self, face: u64) -> bool {
        self.faces.contains(&face)
    }

    /// Maximal faces, ascending by mask.
    pub fn facets(&self) -> Vec<u64> {
        self.faces
            .iter()
            .copied()
            .filter(|&f| !self.faces.iter().any(|&g| g != f && g & f == f))
            .collect()
    }

    /// Dimension: size of the largest face minus one; `{∅}` has dimension −1.
    pub fn dim(&self) -> i64 {
        self.faces
            .iter()
            .map(|f| f.count_ones() as i64 - 1)
            .max()
            .expect("the empty face is always present")
    }

    /// Resolves vertex labels to a face mask (not necessarily in the complex).
    pub fn mask_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<u64> {
        let mut mask = 0u64;
        for l in labels {
            mask |= 1 << self.vertex_index(l.as_ref())?;
        }
        Ok(mask)
    }

    /// Human-readable face name, e.g. `{}` or `{a,c}`.
    pub fn face_label(&self, face: u64) -> String {
        let names: Vec<&str> = (0..self.vertex_count())
            .filter(|&i| face >> i & 1 == 1)
            .map(|i| self.vertices[i].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// Vertex labels of a face, in vertex order.
    pub fn face_vertex_labels(&self, face: u64) -> Vec<String> {
        (0..self.vertex_count())
            .filter(|&i| face >> i & 1 == 1)
            .map(|i| self.vertices[i].clone())
            .collect()
    }

    /// The link of `face`: all `G ∖ face` with `face ⊆ G` a face, as a
    /// complex on the remaining vertices. Errors when `face` is not in the
    /// complex.
    pub fn link(&self, face: u64) -> Result<SimplicialComplex> {
        if !self.contains(face) {
            return Err(Error::FaceNotInComplex(
                self.face_label(face).trim_matches(['{', '}']).to_string(),
            ));
        }
        let kept: Vec<usize> = (0..self.vertex_count())
            .filter(|&i| face >> i & 1 == 0)
            .collect();
        let vertices: Vec<String> = kept.iter().map(|&i| self.vertices[i].clone()).collect();
        let mut faces = BTreeSet::new();
        for &g in &self.faces {
            if g & face == face {
                let rest = g & !face;
                let mut remapped = 0u64;
                for (new_i, &old_i) in kept.iter().enumerate() {
                    if rest >> old_i & 1 == 1 {
                        remapped |= 1 << new_i;
                    }
                }
                faces.insert(remapped);
            }
        }
        Ok(SimplicialComplex { vertices, faces })
    }

    /// Builds the augmented (reduced) simplicial cochain complex, with the
    /// empty face in degree −1. Basis in each degree: faces ordered by mask.
    pub fn reduced_cochain_complex(&self) -> CochainComplex {
        let dim = self.dim();
        let mut by_dim: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
        for &f in &self.faces {
            by_dim.entry(f.count_ones() as i64 - 1).or_default().push(f);
        }
        let mut dims = Vec::new();
        let mut bases: Vec<Vec<u64>> = Vec::new();
        for d in -1..=dim {
            let basis = by_dim.remove(&d).unwrap_or_default();
            dims.push(basis.len());
            bases.push(basis);
        }
        let mut maps = Vec::new();
        for k in 0..bases.len().saturating_sub(1) {
            let lower = &bases[k];
            let upper = &bases[k + 1];
            let pos: BTreeMap<u64, usize> =
                lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
            let mut m = Matrix::zeros(upper.len(), lower.len());
            for (row, &g) in upper.iter().enumerate() {
                // Drop each vertex of g in turn; the sign alternates with the
                // position of the dropped vertex within g.
                let verts: Vec<usize> =
                    (0..self.vertex_count()).filter(|&i| g >> i & 1 == 1).collect();
                for (idx, &v) in verts.iter().enumerate() {
                    let f = g & !(1 << v);
                    if let Some(&col) = pos.get(&f) {
                        let sign = if idx % 2 == 0 { 1i64 } else { -1i64 };
                        m.set(row, col, Scalar::from_integer(sign.into()));
                    }
                }
            }
            maps.push(m);
        }
        CochainComplex::new(-1, dims, maps).expect("shapes are consistent by construction")
    }

    /// Reduced cohomology dimensions over `f`, keyed by degree (−1 and up);
    /// zero entries are omitted.
    pub fn reduced_cohomology(&self, f: &Field) -> Result<BettiVector> {
        self.reduced_cochain_complex().cohomology_dims(f)
    }

    /// The poset of all faces (including the empty face) ordered by
    /// inclusion. Element order: by face size, then by mask; labels are the
    /// [`SimplicialComplex::face_label`] strings, so the element for a face
    /// can be recovered with [`Poset::index_of`].
    pub fn face_poset(&self) -> Poset {
        let mut faces: Vec<u64> = self.faces.iter().copied().collect();
        faces.sort_by_key(|&f| (f.count_ones(), f));
        let labels: Vec<String> = faces.iter().map(|&f| self.face_label(f)).collect();
        let mut pairs = Vec::new();
        for (i, &f) in faces.iter().enumerate() {
            for (j, &g) in faces.iter().enumerate() {
                if i != j && f & g == f {
                    pairs.push((i, j));
                }
            }
        }
        Poset::from_relation(labels, &pairs).expect("inclusion order is antisymmetric")
    }

    /// Facets as vertex-label lists (for serialization).
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets()
            .iter()
            .map(|&f| self.face_vertex_labels(f))
            .collect()
    }
}
