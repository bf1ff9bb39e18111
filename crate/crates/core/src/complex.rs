//! Finite abstract simplicial complexes.
//!
//! A complex is stored as its vertex set and its inclusion-maximal faces. The full face
//! lattice is materialized lazily, once, behind a [`OnceLock`], so complexes can be shared
//! across threads freely.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::face::{Face, Vertex};

#[derive(Debug)]
struct FaceTable {
    /// `by_dim[k + 1]` holds the faces of dimension `k`, sorted.
    by_dim: Vec<Vec<Face>>,
    index: HashSet<Face>,
}

pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    facets: Vec<Face>,
    faces: OnceLock<FaceTable>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
            faces: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.vertices)
            .field("facets", &self.facets)
            .finish()
    }
}

impl IntoIterator for Face {
    type Item = Vertex;
    type IntoIter = std::vec::IntoIter<Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.into_vertices().into_iter()
    }
}

impl<'a> IntoIterator for &'a Face {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.vertices().iter().copied()
    }
}

impl SimplicialComplex {
    /// Closure of the given faces. Faces contained in other inputs are absorbed; an empty
    /// list gives the complex whose only face is the empty face.
    pub fn from_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = Vertex>,
    {
        let faces = facets
            .into_iter()
            .map(Face::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_faces(faces))
    }

    /// Same as [`from_facets`](Self::from_facets) for already-validated faces.
    pub fn from_faces(faces: impl IntoIterator<Item = Face>) -> Self {
        let mut faces: Vec<Face> = faces.into_iter().collect();
        faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        faces.dedup();
        let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
        for f in faces {
            if !kept.iter().any(|k| f.is_subset(k)) {
                kept.push(f);
            }
        }
        Self::from_maximal(kept)
    }

    /// Builds a complex from an explicit face family, which must be closed under taking
    /// subsets. On failure returns a face whose codimension-one subface is absent.
    pub fn from_face_set(faces: &HashSet<Face>) -> std::result::Result<Self, Face> {
        let mut covered: HashSet<&Face> = HashSet::new();
        for f in faces {
            for g in f.boundary() {
                match faces.get(&g) {
                    Some(g) => {
                        covered.insert(g);
                    }
                    None if g.is_empty() => {}
                    None => return Err(f.clone()),
                }
            }
        }
        let maximal: Vec<Face> = faces
            .iter()
            .filter(|f| !covered.contains(f))
            .cloned()
            .collect();
        Ok(Self::from_maximal(maximal))
    }

    fn from_maximal(mut facets: Vec<Face>) -> Self {
        facets.retain(|f| !f.is_empty());
        facets.sort_unstable();
        let vertices: BTreeSet<Vertex> = facets.iter().flatten().collect();
        if facets.is_empty() {
            facets.push(Face::empty());
        }
        SimplicialComplex {
            vertices: vertices.into_iter().collect(),
            facets,
            faces: OnceLock::new(),
        }
    }

    /// The complex `{∅}`.
    pub fn empty() -> Self {
        Self::from_maximal(Vec::new())
    }

    /// The full simplex on the vertices of `face`.
    pub fn simplex(face: Face) -> Self {
        Self::from_maximal(vec![face])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Inclusion-maximal faces in lexicographic order. `{∅}` reports the empty face.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.facets.len()
        }
    }

    /// True for `{∅}`.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.facets.iter().map(Face::dim).max().unwrap_or(-1)
    }

    pub fn max_label(&self) -> Option<Vertex> {
        self.vertices.last().copied()
    }

    /// The smallest label larger than every label in use.
    pub fn fresh_label(&self) -> Vertex {
        self.max_label().map_or(0, |m| m + 1)
    }

    fn table(&self) -> &FaceTable {
        self.faces.get_or_init(|| {
            let mut index: HashSet<Face> = HashSet::new();
            for f in &self.facets {
                for s in f.subsets() {
                    index.insert(s);
                }
            }
            let top = (self.dim() + 2) as usize;
            let mut by_dim = vec![Vec::new(); top.max(1)];
            for f in &index {
                by_dim[f.len()].push(f.clone());
            }
            for level in &mut by_dim {
                level.sort_unstable();
            }
            FaceTable { by_dim, index }
        })
    }

    /// Faces of dimension `k`, sorted. Dimension -1 gives the empty face.
    pub fn faces_of_dim(&self, k: isize) -> &[Face] {
        let table = self.table();
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| table.by_dim.get(i))
            .map_or(&[], |v| v.as_slice())
    }

    /// All faces including the empty face, by increasing dimension.
    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.table().by_dim.iter().flatten()
    }

    pub fn num_faces(&self) -> usize {
        self.table().index.len()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.table().index.contains(face)
    }

    pub fn edges(&self) -> &[Face] {
        self.faces_of_dim(1)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.dim() == d)
    }

    pub fn facets_containing<'a>(&'a self, face: &'a Face) -> impl Iterator<Item = &'a Face> + 'a {
        self.facets.iter().filter(move |f| face.is_subset(f))
    }

    fn require_face(&self, face: &Face) -> Result<()> {
        if self.contains(face) {
            Ok(())
        } else {
            Err(Error::FaceNotPresent(face.clone()))
        }
    }

    /// `lk σ = {τ − σ : σ ⊆ τ ∈ Δ}`.
    pub fn link(&self, sigma: &Face) -> Result<Self> {
        self.require_face(sigma)?;
        Ok(Self::from_faces(
            self.facets_containing(sigma).map(|f| f.difference(sigma)),
        ))
    }

    /// `st σ = {τ : σ ∪ τ ∈ Δ}`, the closure of the facets containing `σ`.
    pub fn star(&self, sigma: &Face) -> Result<Self> {
        self.require_face(sigma)?;
        Ok(Self::from_maximal(
            self.facets_containing(sigma).cloned().collect(),
        ))
    }

    /// The restriction to every vertex except `v`.
    pub fn antistar(&self, v: Vertex) -> Result<Self> {
        if !self.has_vertex(v) {
            return Err(Error::VertexNotPresent(v));
        }
        Ok(Self::from_faces(
            self.facets.iter().map(|f| f.without_vertex(v)),
        ))
    }

    /// The induced subcomplex `Δ[W]`.
    pub fn restriction(&self, subset: &Face) -> Self {
        Self::from_faces(self.facets.iter().map(|f| f.intersection(subset)))
    }

    /// Faces of dimension at most `i`.
    pub fn skeleton(&self, i: isize) -> Self {
        if i >= self.dim() {
            return self.clone();
        }
        let mut facets: Vec<Face> = self.faces_of_dim(i).to_vec();
        facets.extend(self.facets.iter().filter(|f| f.dim() < i).cloned());
        Self::from_maximal(facets)
    }

    /// Missing `k`-faces: vertex sets of size `k + 1` that are not faces although all of
    /// their proper subsets are.
    pub fn missing_faces(&self, k: usize) -> Vec<Face> {
        if k == 0 || k as isize > self.dim() + 1 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for sigma in self.faces_of_dim(k as isize - 1) {
            let top = sigma.max_vertex().expect("k >= 1 so sigma is nonempty");
            for &v in self.vertices.iter().filter(|&&v| v > top) {
                let cand = sigma.with_vertex(v);
                if !self.contains(&cand) && cand.boundary().all(|b| self.contains(&b)) {
                    out.push(cand);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Pure with no missing face of the facet dimension.
    pub fn is_prime(&self) -> bool {
        self.is_pure() && self.dim() >= 0 && self.missing_faces(self.dim() as usize).is_empty()
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: BTreeSet<Vertex> = BTreeSet::new();
        for f in self.facets.iter().filter(|f| f.contains(v)) {
            out.extend(f.vertices().iter().copied().filter(|&w| w != v));
        }
        out.into_iter().collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    /// Connected 1-skeleton with at least one vertex.
    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.first() else {
            return false;
        };
        let adjacency = self.adjacency();
        let mut seen: HashSet<Vertex> = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &adjacency[&v] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    pub fn adjacency(&self) -> BTreeMap<Vertex, Vec<Vertex>> {
        let mut adjacency: BTreeMap<Vertex, Vec<Vertex>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in self.edges() {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adjacency.get_mut(&a).unwrap().push(b);
            adjacency.get_mut(&b).unwrap().push(a);
        }
        adjacency
    }

    /// Applies a vertex relabeling, which must be injective on the vertex set.
    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> Self {
        let out = Self::from_maximal(self.facets.iter().map(|f| f.map(&map)).collect());
        debug_assert_eq!(out.num_vertices(), self.num_vertices());
        out
    }

    /// Relabels vertices to `0..n` preserving order.
    pub fn normalized(&self) -> Self {
        let index: BTreeMap<Vertex, Vertex> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as Vertex))
            .collect();
        self.relabel(|v| index[&v])
    }

    /// Union of two complexes on a common label space.
    pub fn union(&self, other: &Self) -> Self {
        Self::from_faces(self.facets.iter().chain(other.facets.iter()).cloned())
    }

    /// Join with `other` after shifting its labels by `max label + 1`.
    pub fn join(&self, other: &Self) -> Self {
        let shift = self.fresh_label();
        let shifted = other.relabel(|v| v + shift);
        self.join_disjoint(&shifted)
            .expect("shifted labels are disjoint")
    }

    /// Join of two complexes whose vertex sets are already disjoint.
    pub fn join_disjoint(&self, other: &Self) -> Result<Self> {
        if let Some(&v) = self.vertices.iter().find(|&&v| other.has_vertex(v)) {
            return Err(Error::Precondition(format!(
                "join operands share vertex {v}"
            )));
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.union(b));
            }
        }
        Ok(Self::from_maximal(facets))
    }

    /// Cone with apex `apex`, which must be a new label.
    pub fn cone(&self, apex: Vertex) -> Result<Self> {
        self.join_disjoint(&Self::simplex(Face::vertex(apex)))
    }

    /// Join with two new points labeled `max + 1` and `max + 2`.
    pub fn suspension(&self) -> Self {
        let base = self.fresh_label();
        let poles = Self::from_maximal(vec![Face::vertex(base), Face::vertex(base + 1)]);
        self.join_disjoint(&poles).expect("fresh labels")
    }

    /// Glues `other` to `self` by identifying facet `f2` of `other` with facet `f1` of
    /// `self` and deleting the identified facet. `matching` lists pairs
    /// `(vertex of f1, vertex of f2)`; when omitted both facets are matched in sorted
    /// order. Vertices of `other` outside `f2` receive fresh labels in increasing order.
    pub fn connected_sum(
        &self,
        f1: &Face,
        other: &Self,
        f2: &Face,
        matching: Option<&[(Vertex, Vertex)]>,
    ) -> Result<Self> {
        if !self.facets.contains(f1) || f1.is_empty() {
            return Err(Error::NotAFacet(f1.clone()));
        }
        if !other.facets.contains(f2) || f2.is_empty() {
            return Err(Error::NotAFacet(f2.clone()));
        }
        if f1.len() != f2.len() {
            return Err(Error::DimensionMismatch {
                expected: f1.dim(),
                found: f2.dim(),
            });
        }
        let pairs: Vec<(Vertex, Vertex)> = match matching {
            Some(m) => m.to_vec(),
            None => f1
                .vertices()
                .iter()
                .copied()
                .zip(f2.vertices().iter().copied())
                .collect(),
        };
        let lhs: BTreeSet<Vertex> = pairs.iter().map(|p| p.0).collect();
        let rhs: BTreeSet<Vertex> = pairs.iter().map(|p| p.1).collect();
        if pairs.len() != f1.len()
            || lhs.len() != f1.len()
            || rhs.len() != f2.len()
            || !lhs.iter().all(|&v| f1.contains(v))
            || !rhs.iter().all(|&v| f2.contains(v))
        {
            return Err(Error::InvalidParameter(
                "matching must be a bijection between the two facets".into(),
            ));
        }
        let mut map: BTreeMap<Vertex, Vertex> = pairs.iter().map(|&(a, b)| (b, a)).collect();
        let mut next = self.fresh_label();
        for &v in other.vertices() {
            map.entry(v).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
        let mut facets: Vec<Face> = self.facets.iter().filter(|f| *f != f1).cloned().collect();
        facets.extend(
            other
                .facets
                .iter()
                .filter(|f| *f != f2)
                .map(|f| f.map(|v| map[&v])),
        );
        Ok(Self::from_faces(facets))
    }

    /// Replaces facet `facet` by the cone from a new vertex over its boundary.
    pub fn stack_over_facet(&self, facet: &Face) -> Result<Self> {
        if facet.is_empty() || !self.facets.contains(facet) {
            return Err(Error::NotAFacet(facet.clone()));
        }
        let apex = self.fresh_label();
        let mut facets: Vec<Face> = self.facets.iter().filter(|f| *f != facet).cloned().collect();
        facets.extend(facet.boundary().map(|b| b.with_vertex(apex)));
        Ok(Self::from_maximal(facets))
    }

    /// Number of facets containing each ridge of a pure complex.
    pub fn ridge_degrees(&self) -> BTreeMap<Face, usize> {
        let mut out: BTreeMap<Face, usize> = BTreeMap::new();
        for f in &self.facets {
            for r in f.boundary() {
                *out.entry(r).or_default() += 1;
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct FacetList {
    facets: Vec<Vec<Vertex>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FacetList {
            facets: self
                .facets
                .iter()
                .filter(|f| !f.is_empty())
                .map(|f| f.vertices().to_vec())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let list = FacetList::deserialize(deserializer)?;
        SimplicialComplex::from_facets(list.facets).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.to_vec())).unwrap()
    }

    fn face(vs: &[Vertex]) -> Face {
        Face::new(vs.iter().copied()).unwrap()
    }

    fn boundary_of_simplex(n: Vertex) -> SimplicialComplex {
        SimplicialComplex::from_faces(Face::range(0, n + 1).boundary())
    }

    #[test]
    fn closure_counts() {
        let t = cx(&[&[0, 1, 2]]);
        assert_eq!(t.num_faces(), 8);
        assert_eq!(t.faces_of_dim(1).len(), 3);
        let cycle = cx(&[&[0, 1], &[1, 2], &[0, 2], &[0]]);
        assert_eq!(cycle.num_facets(), 3);
        assert_eq!(cycle.faces_of_dim(0).len(), 3);
    }

    #[test]
    fn empty_input_gives_empty_complex() {
        let e = SimplicialComplex::from_facets(Vec::<Vec<Vertex>>::new()).unwrap();
        assert!(e.is_empty());
        assert_eq!(e.dim(), -1);
        assert_eq!(e.num_faces(), 1);
        assert!(e.contains(&Face::empty()));
    }

    #[test]
    fn repeated_vertex_rejected() {
        assert!(matches!(
            SimplicialComplex::from_facets(vec![vec![0, 1, 1]]),
            Err(Error::RepeatedVertex { vertex: 1 })
        ));
    }

    #[test]
    fn link_star_antistar() {
        let s = boundary_of_simplex(3);
        assert_eq!(s.link(&face(&[0])).unwrap(), cx(&[&[1, 2], &[1, 3], &[2, 3]]));
        assert_eq!(s.link(&Face::empty()).unwrap(), s);
        let s4 = boundary_of_simplex(4);
        assert_eq!(
            s4.star(&face(&[0, 1])).unwrap(),
            cx(&[&[0, 1, 2, 3], &[0, 1, 2, 4], &[0, 1, 3, 4]])
        );
        assert_eq!(
            s.antistar(0).unwrap(),
            cx(&[&[1, 2, 3]])
        );
        assert!(matches!(
            s.link(&face(&[0, 1, 2, 3])),
            Err(Error::FaceNotPresent(_))
        ));
        assert!(matches!(s.antistar(9), Err(Error::VertexNotPresent(9))));
        let facet_link = s.link(&face(&[0, 1, 2])).unwrap();
        assert!(facet_link.is_empty());
    }

    #[test]
    fn restriction_and_skeleton() {
        let s = boundary_of_simplex(3);
        assert_eq!(s.restriction(&face(&[0, 1, 2])), cx(&[&[0, 1, 2]]));
        assert_eq!(s.skeleton(0).num_facets(), 4);
        assert_eq!(s.skeleton(1).num_facets(), 6);
    }

    #[test]
    fn missing_faces_of_simplex_boundary() {
        let s = boundary_of_simplex(3);
        assert!(s.missing_faces(1).is_empty());
        assert!(s.missing_faces(2).is_empty());
        assert_eq!(s.missing_faces(3), vec![face(&[0, 1, 2, 3])]);
        assert!(s.missing_faces(7).is_empty());
    }

    #[test]
    fn primality() {
        assert!(boundary_of_simplex(5).is_prime());
        let s = boundary_of_simplex(4);
        let sum = s.connected_sum(&face(&[0, 1, 2, 3]), &s, &face(&[0, 1, 2, 3]), None).unwrap();
        assert!(!sum.is_prime());
        assert_eq!(sum.missing_faces(3), vec![face(&[0, 1, 2, 3])]);
    }

    #[test]
    fn join_relabels_and_adds_dimensions() {
        let s0 = cx(&[&[0], &[1]]);
        let square = s0.join(&s0);
        assert_eq!(square, cx(&[&[0, 2], &[0, 3], &[1, 2], &[1, 3]]));
        assert_eq!(square.dim(), 1);
        assert!(SimplicialComplex::empty().join(&square) == square);
    }

    #[test]
    fn connected_sum_removes_glued_facet() {
        let s = boundary_of_simplex(4);
        let f = face(&[0, 1, 2, 3]);
        let sum = s.connected_sum(&f, &s, &f, None).unwrap();
        assert_eq!(sum.num_vertices(), 6);
        assert!(!sum.contains(&f));
        assert!(f.boundary().all(|b| sum.contains(&b)));
        assert_eq!(sum, s.stack_over_facet(&f).unwrap().relabel(|v| v));
    }

    #[test]
    fn connected_sum_errors() {
        let s = boundary_of_simplex(3);
        let t = boundary_of_simplex(4);
        assert!(matches!(
            s.connected_sum(&face(&[0, 1]), &s, &face(&[0, 1, 2]), None),
            Err(Error::NotAFacet(_))
        ));
        assert!(matches!(
            s.connected_sum(&face(&[0, 1, 2]), &t, &face(&[0, 1, 2, 3]), None),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(s
            .connected_sum(
                &face(&[0, 1, 2]),
                &s,
                &face(&[0, 1, 2]),
                Some(&[(0, 0), (1, 0), (2, 2)])
            )
            .is_err());
    }

    #[test]
    fn stacking_adds_one_vertex() {
        let s = boundary_of_simplex(4);
        let f = face(&[1, 2, 3, 4]);
        let st = s.stack_over_facet(&f).unwrap();
        assert_eq!(st.num_vertices(), 6);
        assert_eq!(st.num_facets(), 8);
        assert!(matches!(
            s.stack_over_facet(&face(&[1, 2])),
            Err(Error::NotAFacet(_))
        ));
    }

    #[test]
    fn connectivity_and_degree() {
        let two_edges = cx(&[&[0, 1], &[2, 3]]);
        assert!(!two_edges.is_connected());
        let s = boundary_of_simplex(3);
        assert!(s.is_connected());
        assert_eq!(s.degree(0), 3);
    }

    #[test]
    fn serde_structured_form() {
        let s = boundary_of_simplex(2);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"facets":[[0,1],[0,2],[1,2]]}"#);
        let back: SimplicialComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
