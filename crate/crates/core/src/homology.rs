//! Reduced simplicial homology over exact fields and the classification predicates built
//! on it: homology spheres, balls and manifolds, normal pseudomanifolds, the `Δ(i)`
//! operator and stackedness of balls.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::linalg::{sparse_rank_mod_p, sparse_rank_rational, PrimeField, SparseRow};

/// Vertex bound for [`delta_i`].
pub const DELTA_I_LIMIT: usize = 40;

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Field {
    #[default]
    Rational,
    Prime(PrimeField),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        PrimeField::new(p).map(Field::Prime).ok_or(Error::NotPrime(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("rational"),
            Field::Prime(p) => write!(f, "p:{}", p.modulus()),
        }
    }
}

/// Accepts `rational`, `q`, `p:7` or a bare prime such as `7`.
impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim().to_ascii_lowercase();
        if s == "rational" || s == "q" {
            return Ok(Field::Rational);
        }
        let digits = s.strip_prefix("p:").unwrap_or(&s);
        let p = digits
            .parse::<u64>()
            .map_err(|_| Error::InvalidParameter(format!("unknown field '{s}'")))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Matrix of `∂_k : C_k → C_{k-1}` with the alternating-sign convention; `∂_0` is the
/// augmentation onto the empty face.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub k: isize,
    pub rows: Vec<Face>,
    pub cols: Vec<Face>,
    /// One sparse column per `k`-face, indexed into `rows`.
    pub columns: Vec<SparseRow<i64>>,
}

impl BoundaryMatrix {
    pub fn new(c: &SimplicialComplex, k: isize) -> BoundaryMatrix {
        let rows = c.faces_of_dim(k - 1).to_vec();
        let cols = c.faces_of_dim(k).to_vec();
        let index: HashMap<&Face, usize> = rows.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let columns = cols
            .iter()
            .map(|f| {
                let mut col: SparseRow<i64> = f
                    .boundary()
                    .enumerate()
                    .map(|(i, g)| (index[&g], if i % 2 == 0 { 1 } else { -1 }))
                    .collect();
                col.sort_unstable_by_key(|e| e.0);
                col
            })
            .collect();
        BoundaryMatrix {
            k,
            rows,
            cols,
            columns,
        }
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Rational => sparse_rank_rational(&self.columns),
            Field::Prime(p) => sparse_rank_mod_p(&self.columns, &p),
        }
    }

    /// True when `self ∘ next = 0`, where `next` is `∂_{k+1}`.
    pub fn composes_to_zero(&self, next: &BoundaryMatrix) -> bool {
        next.columns.iter().all(|col| {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(j, a) in col {
                for &(i, b) in &self.columns[j] {
                    *acc.entry(i).or_default() += a * b;
                }
            }
            acc.values().all(|&x| x == 0)
        })
    }
}

/// Reduced Betti numbers `b̃_{-1}, .., b̃_{dim}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiProfile {
    pub field: Field,
    pub reduced: Vec<usize>,
}

impl BettiProfile {
    /// `b̃_i`, zero outside the stored range.
    pub fn get(&self, i: isize) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|j| self.reduced.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.reduced.iter().all(|&b| b == 0)
    }

    /// The reduced homology of `S^n`: a single 1 in degree `n`.
    pub fn is_sphere_of_dim(&self, n: isize) -> bool {
        (-1..self.reduced.len() as isize - 1).all(|i| self.get(i) == usize::from(i == n))
            && n < self.reduced.len() as isize - 1
    }
}

pub fn betti(c: &SimplicialComplex, field: Field) -> BettiProfile {
    let top = c.dim();
    let ranks: Vec<usize> = (0..=top + 1)
        .into_par_iter()
        .map(|k| {
            if k > top {
                0
            } else {
                BoundaryMatrix::new(c, k).rank(field)
            }
        })
        .collect();
    let rank = |k: isize| -> usize {
        usize::try_from(k).ok().and_then(|k| ranks.get(k)).copied().unwrap_or(0)
    };
    let reduced = (-1..=top)
        .map(|k| c.faces_of_dim(k).len() - rank(k) - rank(k + 1))
        .collect();
    BettiProfile { field, reduced }
}

/// A face at which a predicate fails, with the reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub face: Face,
    pub reason: String,
}

impl Violation {
    fn new(face: Face, reason: impl Into<String>) -> Violation {
        Violation {
            face,
            reason: reason.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (at face {})", self.reason, self.face)
    }
}

pub type Check = std::result::Result<(), Violation>;

/// Every face `σ`, including the empty face, has `lk σ` with the homology of
/// `S^{dim Δ - |σ|}`.
pub fn is_homology_sphere(c: &SimplicialComplex, field: Field) -> Check {
    let d = c.dim();
    let faces: Vec<&Face> = c.all_faces().collect();
    let bad = faces.par_iter().find_first(|sigma| {
        let link = c.link(sigma).expect("face of the complex");
        !betti(&link, field).is_sphere_of_dim(d - sigma.len() as isize)
    });
    match bad {
        Some(f) => Err(Violation::new(
            (*f).clone(),
            format!("link does not have the homology of a {}-sphere", d - f.len() as isize),
        )),
        None => Ok(()),
    }
}

/// Every vertex link is a homology sphere of dimension `dim Δ - 1`.
pub fn is_homology_manifold(c: &SimplicialComplex, field: Field) -> Check {
    if c.is_empty() {
        return Err(Violation::new(Face::empty(), "complex has no vertices"));
    }
    let bad = c.vertices().par_iter().find_map_first(|&v| {
        let link = c.link(&Face::vertex(v)).expect("vertex");
        match is_homology_sphere(&link, field) {
            Ok(()) if link.dim() == c.dim() - 1 => None,
            Ok(()) => Some(Violation::new(
                Face::vertex(v),
                "vertex link has the wrong dimension",
            )),
            Err(inner) => Some(Violation::new(
                inner.face.with_vertex(v),
                format!("vertex link of {v} fails: {}", inner.reason),
            )),
        }
    });
    bad.map_or(Ok(()), Err)
}

/// Pure and connected, every ridge in exactly two facets, and the link of every face of
/// dimension at most `dim Δ - 2` connected. A pure 0-dimensional complex qualifies when it
/// has exactly two vertices.
pub fn is_normal_pseudomanifold(c: &SimplicialComplex) -> Check {
    if c.is_empty() {
        return Err(Violation::new(Face::empty(), "complex has no vertices"));
    }
    let d = c.dim();
    if let Some(f) = c.facets().iter().find(|f| f.dim() != d) {
        return Err(Violation::new(f.clone(), "complex is not pure"));
    }
    for (ridge, count) in c.ridge_degrees() {
        if count != 2 {
            return Err(Violation::new(
                ridge,
                format!("ridge lies in {count} facets instead of 2"),
            ));
        }
    }
    if d >= 1 && !c.is_connected() {
        return Err(Violation::new(Face::empty(), "complex is not connected"));
    }
    for k in 0..=d - 2 {
        for f in c.faces_of_dim(k) {
            if !c.link(f).expect("face").is_connected() {
                return Err(Violation::new(f.clone(), "link is not connected"));
            }
        }
    }
    Ok(())
}

/// Boundary and interior of a homology ball.
#[derive(Clone, Debug)]
pub struct BallAnalysis {
    pub boundary: SimplicialComplex,
    /// Interior faces by increasing dimension, then lexicographically.
    pub interior: Vec<Face>,
}

impl BallAnalysis {
    pub fn min_interior_dim(&self) -> Option<isize> {
        self.interior.first().map(Face::dim)
    }

    /// Number of interior faces of each dimension `0..=dim`.
    pub fn interior_counts(&self, dim: isize) -> Vec<usize> {
        (0..=dim)
            .map(|k| self.interior.iter().filter(|f| f.dim() == k).count())
            .collect()
    }
}

/// Checks the homology-ball conditions and returns boundary and interior on success:
/// acyclic; each nonempty face has a link of dimension `d - |F|` that is acyclic or a
/// homology `(d - |F|)`-sphere; the faces with acyclic links form a homology
/// `(d - 1)`-sphere.
pub fn analyze_ball(c: &SimplicialComplex, field: Field) -> std::result::Result<BallAnalysis, Violation> {
    if c.is_empty() {
        return Err(Violation::new(Face::empty(), "complex has no vertices"));
    }
    let d = c.dim();
    if !betti(c, field).is_acyclic() {
        return Err(Violation::new(Face::empty(), "complex is not acyclic"));
    }
    let faces: Vec<&Face> = c.all_faces().filter(|f| !f.is_empty()).collect();
    let verdicts: Vec<std::result::Result<bool, Violation>> = faces
        .par_iter()
        .map(|f| {
            let link = c.link(f).expect("face");
            let expected = d - f.len() as isize;
            if link.dim() != expected {
                return Err(Violation::new(
                    (*f).clone(),
                    format!("link has dimension {} instead of {expected}", link.dim()),
                ));
            }
            let b = betti(&link, field);
            if b.is_acyclic() {
                Ok(true)
            } else if b.is_sphere_of_dim(expected) {
                Ok(false)
            } else {
                Err(Violation::new(
                    (*f).clone(),
                    "link has neither ball nor sphere homology",
                ))
            }
        })
        .collect();
    let mut boundary: HashSet<Face> = HashSet::from([Face::empty()]);
    let mut interior = Vec::new();
    for (f, v) in faces.into_iter().zip(verdicts) {
        if v? {
            boundary.insert(f.clone());
        } else {
            interior.push(f.clone());
        }
    }
    let boundary = SimplicialComplex::from_face_set(&boundary)
        .map_err(|f| Violation::new(f, "boundary faces are not closed under subsets"))?;
    if boundary.dim() != d - 1 {
        return Err(Violation::new(Face::empty(), "boundary has the wrong dimension"));
    }
    if let Err(v) = is_homology_sphere(&boundary, field) {
        return Err(Violation::new(
            v.face,
            format!("boundary is not a homology sphere: {}", v.reason),
        ));
    }
    Ok(BallAnalysis { boundary, interior })
}

pub fn is_homology_ball(c: &SimplicialComplex, field: Field) -> Check {
    analyze_ball(c, field).map(|_| ())
}

fn not_a_ball(v: Violation) -> Error {
    Error::NotABall {
        face: v.face,
        reason: v.reason,
    }
}

/// `∂Δ`: the faces whose links are acyclic.
pub fn ball_boundary(c: &SimplicialComplex, field: Field) -> Result<SimplicialComplex> {
    analyze_ball(c, field).map(|a| a.boundary).map_err(not_a_ball)
}

/// Interior-face data certifying whether a ball is `(r - 1)`-stacked.
#[derive(Clone, Debug, Serialize)]
pub struct StackedBallCertificate {
    pub r: usize,
    /// Interior face counts in dimensions `0..=d`.
    pub interior_faces_by_dim: Vec<usize>,
    #[serde(skip)]
    pub boundary: SimplicialComplex,
    /// True when there are no interior faces of dimension at most `d - r`.
    pub stacked: bool,
}

pub fn is_r_stacked_ball(c: &SimplicialComplex, r: usize, field: Field) -> Result<StackedBallCertificate> {
    let analysis = analyze_ball(c, field).map_err(not_a_ball)?;
    let d = c.dim();
    let threshold = d - r as isize;
    Ok(StackedBallCertificate {
        r,
        interior_faces_by_dim: analysis.interior_counts(d),
        stacked: analysis.min_interior_dim().is_none_or(|m| m > threshold),
        boundary: analysis.boundary,
    })
}

/// The least `s` such that the ball is `s`-stacked, namely `d` minus the smallest
/// interior dimension.
pub fn stackedness(analysis: &BallAnalysis, d: isize) -> usize {
    analysis
        .min_interior_dim()
        .map_or(0, |m| (d - m).max(0) as usize)
}

/// `Δ(i) = {σ ⊆ V(Δ) : every subset of σ with at most i + 1 vertices is a face}`.
pub fn delta_i(c: &SimplicialComplex, i: usize) -> Result<SimplicialComplex> {
    if i == 0 {
        return Err(Error::InvalidParameter("Δ(i) requires i ≥ 1".into()));
    }
    if c.num_vertices() > DELTA_I_LIMIT {
        return Err(Error::TooLarge {
            what: "vertex count for Δ(i)",
            size: c.num_vertices(),
            limit: DELTA_I_LIMIT,
        });
    }
    let adjacency = c.adjacency();
    let mut maximal: Vec<Face> = Vec::new();
    fn grow(
        c: &SimplicialComplex,
        i: usize,
        sigma: &Face,
        candidates: &[Vertex],
        adjacency: &std::collections::BTreeMap<Vertex, Vec<Vertex>>,
        out: &mut Vec<Face>,
    ) {
        let mut extended = false;
        for (pos, &v) in candidates.iter().enumerate() {
            let ok = (1..=i.min(sigma.len()))
                .all(|size| sigma.subsets_of_size(size).iter().all(|s| c.contains(&s.with_vertex(v))));
            if !ok {
                continue;
            }
            extended = true;
            let next = sigma.with_vertex(v);
            let rest: Vec<Vertex> = candidates[pos + 1..]
                .iter()
                .copied()
                .filter(|w| adjacency[&v].contains(w))
                .collect();
            grow(c, i, &next, &rest, adjacency, out);
        }
        if !extended {
            out.push(sigma.clone());
        }
    }
    grow(c, i, &Face::empty(), c.vertices(), &adjacency, &mut maximal);
    Ok(SimplicialComplex::from_faces(maximal))
}

/// Summary of the predicates, as reported by the command line.
#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub pure: bool,
    pub prime: bool,
    pub connected: bool,
    pub normal_pseudomanifold: Option<Violation>,
    pub homology_manifold: Option<Violation>,
    pub homology_sphere: Option<Violation>,
}

pub fn classify(c: &SimplicialComplex, field: Field) -> Classification {
    Classification {
        pure: c.is_pure(),
        prime: c.is_prime(),
        connected: c.is_connected(),
        normal_pseudomanifold: is_normal_pseudomanifold(c).err(),
        homology_manifold: is_homology_manifold(c, field).err(),
        homology_sphere: is_homology_sphere(c, field).err(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boundary(n: u32) -> SimplicialComplex {
        SimplicialComplex::from_faces(Face::range(0, n + 1).boundary())
    }

    fn cycle(n: u32) -> SimplicialComplex {
        SimplicialComplex::from_facets((0..n).map(|i| vec![i, (i + 1) % n])).unwrap()
    }

    fn face(vs: &[Vertex]) -> Face {
        Face::new(vs.iter().copied()).unwrap()
    }

    fn rp2() -> SimplicialComplex {
        SimplicialComplex::from_facets(vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![0, 4, 5],
            vec![0, 1, 5],
            vec![1, 2, 4],
            vec![2, 3, 5],
            vec![1, 3, 4],
            vec![2, 4, 5],
            vec![1, 3, 5],
        ])
        .unwrap()
    }

    #[test]
    fn field_parsing() {
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("p:7".parse::<Field>().unwrap(), Field::prime(7).unwrap());
        assert!(matches!("p:8".parse::<Field>(), Err(Error::NotPrime(8))));
        assert_eq!(Field::prime(5).unwrap().to_string(), "p:5");
    }

    #[test]
    fn boundary_squared_is_zero() {
        let c = cycle(5).join(&boundary(2));
        for k in 0..c.dim() {
            let a = BoundaryMatrix::new(&c, k);
            let b = BoundaryMatrix::new(&c, k + 1);
            assert!(a.composes_to_zero(&b), "k = {k}");
        }
    }

    #[test]
    fn sphere_and_simplex_betti() {
        assert_eq!(betti(&boundary(3), Field::Rational).reduced, vec![0, 0, 0, 1]);
        let s = SimplicialComplex::simplex(Face::range(0, 4));
        assert!(betti(&s, Field::Rational).is_acyclic());
        assert_eq!(betti(&SimplicialComplex::empty(), Field::Rational).reduced, vec![1]);
        let two_points = SimplicialComplex::from_facets(vec![vec![0], vec![1]]).unwrap();
        assert!(betti(&two_points, Field::Rational).is_sphere_of_dim(0));
    }

    #[test]
    fn torsion_depends_on_field() {
        let p = rp2();
        assert!(betti(&p, Field::Rational).is_acyclic());
        let b2 = betti(&p, Field::prime(2).unwrap());
        assert_eq!(b2.get(1), 1);
        assert_eq!(b2.get(2), 1);
        assert!(is_normal_pseudomanifold(&p).is_ok());
        assert!(is_homology_manifold(&p, Field::Rational).is_ok());
        assert!(is_homology_sphere(&p, Field::Rational).is_err());
    }

    #[test]
    fn join_of_cycle_and_triangle_is_sphere() {
        let c = cycle(4).join(&boundary(2));
        assert!(is_homology_sphere(&c, Field::Rational).is_ok());
        assert!(is_homology_manifold(&c, Field::Rational).is_ok());
        assert!(is_normal_pseudomanifold(&c).is_ok());
    }

    #[test]
    fn pendant_edges() {
        let c = SimplicialComplex::from_facets(vec![vec![0, 1], vec![1, 2], vec![0, 2], vec![2, 3]]).unwrap();
        assert!(c.is_pure());
        let v = is_normal_pseudomanifold(&c).unwrap_err();
        assert_eq!(v.face, face(&[2]));
        assert!(v.reason.contains("ridge"));
        let filled = SimplicialComplex::from_facets(vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
        let v = is_normal_pseudomanifold(&filled).unwrap_err();
        assert_eq!(v.face, face(&[2, 3]));
        assert!(v.reason.contains("pure"));
    }

    #[test]
    fn pinched_link_is_not_normal() {
        // two tetrahedron boundaries sharing a vertex
        let a = boundary(3);
        let b = a.relabel(|v| if v == 0 { 0 } else { v + 3 });
        let c = a.union(&b);
        let v = is_normal_pseudomanifold(&c).unwrap_err();
        assert_eq!(v.face, face(&[0]));
    }

    #[test]
    fn simplex_is_ball_with_sphere_boundary() {
        let s = SimplicialComplex::simplex(Face::range(0, 4));
        let a = analyze_ball(&s, Field::Rational).unwrap();
        assert_eq!(a.boundary, boundary(3));
        assert_eq!(a.interior, vec![Face::range(0, 4)]);
        let cert = is_r_stacked_ball(&s, 1, Field::Rational).unwrap();
        assert!(cert.stacked);
        assert_eq!(cert.interior_faces_by_dim, vec![0, 0, 0, 1]);
    }

    #[test]
    fn star_of_tetrahedron_in_five_simplex_boundary() {
        let s = boundary(5);
        let tau = face(&[0, 1, 2, 3]);
        let st = s.star(&tau).unwrap();
        let a = analyze_ball(&st, Field::Rational).unwrap();
        let expected = SimplicialComplex::from_faces(tau.boundary())
            .join_disjoint(&SimplicialComplex::from_facets(vec![vec![4], vec![5]]).unwrap())
            .unwrap();
        assert_eq!(a.boundary, expected);
        assert_eq!(a.min_interior_dim(), Some(3));
        assert_eq!(stackedness(&a, 4), 1);
        assert!(is_r_stacked_ball(&st, 2, Field::Rational).unwrap().stacked);
    }

    #[test]
    fn two_adjacent_facets_form_stacked_ball() {
        let s = boundary(4);
        let f = Face::range(0, 4);
        let sum = s.connected_sum(&f, &s, &f, None).unwrap();
        let facets: Vec<Face> = sum.facets().to_vec();
        let (a, b) = facets
            .iter()
            .flat_map(|a| facets.iter().map(move |b| (a, b)))
            .find(|(a, b)| a < b && a.intersection(b).len() == 3)
            .unwrap();
        let ball = SimplicialComplex::from_faces([a.clone(), b.clone()]);
        let analysis = analyze_ball(&ball, Field::Rational).unwrap();
        assert_eq!(analysis.interior.len(), 3);
        assert_eq!(analysis.min_interior_dim(), Some(2));
        assert_eq!(analysis.boundary.num_vertices(), 5);
        assert_eq!(analysis.boundary.g_vector().get(1), 1);
        assert!(is_r_stacked_ball(&ball, 2, Field::Rational).unwrap().stacked);
        assert!(!is_r_stacked_ball(&ball, 1, Field::Rational).unwrap().stacked);
    }

    #[test]
    fn non_balls_rejected() {
        assert!(matches!(
            ball_boundary(&boundary(3), Field::Rational),
            Err(Error::NotABall { .. })
        ));
        let bowtie = SimplicialComplex::from_facets(vec![vec![0, 1, 2], vec![0, 3, 4]]).unwrap();
        assert!(analyze_ball(&bowtie, Field::Rational).is_err());
    }

    #[test]
    fn delta_operator() {
        let s = boundary(4);
        let f = Face::range(0, 4);
        let sum = s.connected_sum(&f, &s, &f, None).unwrap();
        let filled = delta_i(&sum, 1).unwrap();
        assert_eq!(filled.dim(), 4);
        assert_eq!(filled.num_facets(), 2);
        assert_eq!(ball_boundary(&filled, Field::Rational).unwrap(), sum);
        let s0 = SimplicialComplex::from_facets(vec![vec![0], vec![1]]).unwrap();
        let oct = s0.join(&s0).join(&s0);
        assert_eq!(delta_i(&oct, 1).unwrap(), oct);
        assert_eq!(delta_i(&boundary(3), 3).unwrap(), boundary(3));
        assert!(delta_i(&s, 0).is_err());
    }
}
