//! Exact generic rigidity: random embeddings, rigidity matrices, ranks, stresses and the
//! rigidity computation of `g_2`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::homology;
use crate::linalg::{bareiss_rank, left_kernel, rank, FieldOps, PrimeField, Rationals};
use crate::vectors::binomial;

/// `2^61 - 1`, the default modulus for rigidity computations.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

/// Default number of random embeddings per rank computation.
pub const DEFAULT_TRIALS: usize = 3;

/// Magnitude bound for integer coordinates.
pub const COORDINATE_BOUND: i64 = 1 << 31;

/// Scalars used for embeddings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RigidityField {
    /// Coordinates uniform in `Z/pZ`.
    Prime(PrimeField),
    /// Integer coordinates in `[-2^31, 2^31]`, eliminated exactly over the rationals.
    Rational,
}

impl Default for RigidityField {
    fn default() -> Self {
        RigidityField::Prime(PrimeField::new(DEFAULT_PRIME).expect("Mersenne prime"))
    }
}

impl fmt::Display for RigidityField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigidityField::Rational => f.write_str("rational"),
            RigidityField::Prime(p) => write!(f, "p:{}", p.modulus()),
        }
    }
}

impl FromStr for RigidityField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<homology::Field>()? {
            homology::Field::Rational => Ok(RigidityField::Rational),
            homology::Field::Prime(p) => Ok(RigidityField::Prime(p)),
        }
    }
}

impl Serialize for RigidityField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A simple graph on labeled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// The 1-skeleton of a complex.
    pub fn of(c: &SimplicialComplex) -> Graph {
        Graph {
            vertices: c.vertices().to_vec(),
            edges: c
                .edges()
                .iter()
                .map(|e| (e.vertices()[0], e.vertices()[1]))
                .collect(),
        }
    }

    pub fn new(vertices: Vec<Vertex>, edges: Vec<(Vertex, Vertex)>) -> Graph {
        Graph { vertices, edges }
    }
}

/// Coordinates for every vertex, as integers (reduced residues for prime fields).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub d: usize,
    pub seed: u64,
    pub field: RigidityField,
    pub coords: BTreeMap<Vertex, Vec<BigInt>>,
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn random_embedding(vertices: &[Vertex], d: usize, seed: u64, field: RigidityField) -> Embedding {
    assert!(d >= 1, "embedding dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = vertices
        .iter()
        .map(|&v| {
            let xs = (0..d)
                .map(|_| match field {
                    RigidityField::Prime(p) => BigInt::from(rng.gen_range(0..p.modulus())),
                    RigidityField::Rational => {
                        BigInt::from(rng.gen_range(-COORDINATE_BOUND..=COORDINATE_BOUND))
                    }
                })
                .collect();
            (v, xs)
        })
        .collect();
    Embedding {
        d,
        seed,
        field,
        coords,
    }
}

/// `f_1 × d f_0` matrix whose row for `{u, v}` holds `φ(u) - φ(v)` in the block of `u` and
/// `φ(v) - φ(u)` in the block of `v`.
#[derive(Clone, Debug)]
pub struct RigidityMatrix {
    pub d: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(Vertex, Vertex)>,
    pub entries: Vec<Vec<BigInt>>,
    pub field: RigidityField,
}

pub fn rigidity_matrix(g: &Graph, phi: &Embedding) -> Result<RigidityMatrix> {
    let d = phi.d;
    let index: BTreeMap<Vertex, usize> = g.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let cols = d * g.vertices.len();
    let mut entries = Vec::with_capacity(g.edges.len());
    for &(u, v) in &g.edges {
        let pu = phi.coords.get(&u).ok_or(Error::VertexNotPresent(u))?;
        let pv = phi.coords.get(&v).ok_or(Error::VertexNotPresent(v))?;
        let mut row = vec![BigInt::zero(); cols];
        for k in 0..d {
            row[index[&u] * d + k] = &pu[k] - &pv[k];
            row[index[&v] * d + k] = &pv[k] - &pu[k];
        }
        entries.push(row);
    }
    Ok(RigidityMatrix {
        d,
        vertices: g.vertices.clone(),
        edges: g.edges.clone(),
        entries,
        field: phi.field,
    })
}

impl RigidityMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.d * self.vertices.len()
    }

    fn mod_p(&self, p: &PrimeField) -> Vec<Vec<u64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| p.from_int(x)).collect())
            .collect()
    }

    fn rational(&self) -> Vec<Vec<BigRational>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        match self.field {
            RigidityField::Prime(p) => rank(&p, &self.mod_p(&p)),
            RigidityField::Rational => bareiss_rank(&self.entries),
        }
    }

    /// Basis of the left kernel as integer vectors: residues for prime fields, primitive
    /// integer multiples of the rational basis otherwise.
    pub fn left_kernel(&self) -> Vec<Vec<BigInt>> {
        match self.field {
            RigidityField::Prime(p) => left_kernel(&p, &self.mod_p(&p), self.cols())
                .into_iter()
                .map(|v| v.into_iter().map(BigInt::from).collect())
                .collect(),
            RigidityField::Rational => left_kernel(&Rationals, &self.rational(), self.cols())
                .into_iter()
                .map(primitive_integer_vector)
                .collect(),
        }
    }

    /// `Σ_e w(e) · row(e) = 0`, which is the equilibrium condition at every vertex.
    pub fn is_stress(&self, w: &[BigInt]) -> bool {
        let modulus = match self.field {
            RigidityField::Prime(p) => Some(BigInt::from(p.modulus())),
            RigidityField::Rational => None,
        };
        (0..self.cols()).all(|j| {
            let s: BigInt = self
                .entries
                .iter()
                .zip(w)
                .map(|(row, x)| &row[j] * x)
                .sum();
            match &modulus {
                Some(p) => s.mod_floor(p).is_zero(),
                None => s.is_zero(),
            }
        })
    }
}

fn primitive_integer_vector(v: Vec<BigRational>) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Ranks over several independent embeddings.
#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub d: usize,
    pub ranks: Vec<usize>,
    pub rank: usize,
    /// Index of the first trial achieving the maximum.
    pub best_trial: usize,
}

impl RankReport {
    pub fn stable(&self) -> bool {
        self.ranks.iter().all(|&r| r == self.rank)
    }
}

/// Maximum exact rank of the rigidity matrix over `trials` random embeddings.
pub fn generic_rank(g: &Graph, d: usize, trials: usize, seed: u64, field: RigidityField) -> RankReport {
    assert!(trials >= 1, "at least one trial is required");
    let ranks: Vec<usize> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let phi = random_embedding(&g.vertices, d, trial_seed(seed, t), field);
            rigidity_matrix(g, &phi).expect("embedding covers the graph").rank()
        })
        .collect();
    let rank = *ranks.iter().max().unwrap();
    let best_trial = ranks.iter().position(|&r| r == rank).unwrap();
    RankReport {
        d,
        ranks,
        rank,
        best_trial,
    }
}

/// Rank of a generically `d`-rigid graph on `n` vertices.
pub fn rigid_rank(n: usize, d: usize) -> usize {
    let (n, d) = (n as i64, d as i64);
    if n >= d {
        (d * n - binomial(d + 1, 2)) as usize
    } else {
        binomial(n, 2) as usize
    }
}

pub fn is_generically_rigid(g: &Graph, d: usize, trials: usize, seed: u64, field: RigidityField) -> bool {
    generic_rank(g, d, trials, seed, field).rank == rigid_rank(g.vertices.len(), d)
}

/// Result of computing `g_2` as the dimension of the stress space.
#[derive(Clone, Debug, Serialize)]
pub struct RigidityG2 {
    pub kernel_dim: i64,
    /// `f_1 - d f_0 + C(d+1, 2)`.
    pub combinatorial_g2: i64,
    /// True only for normal pseudomanifolds, where the kernel dimension equals `g_2`.
    pub claims_g2: bool,
    pub ranks: RankReport,
}

pub fn g2_via_rigidity(c: &SimplicialComplex, trials: usize, seed: u64, field: RigidityField) -> RigidityG2 {
    let d = (c.dim() + 1).max(1) as usize;
    let g = Graph::of(c);
    let ranks = generic_rank(&g, d, trials, seed, field);
    RigidityG2 {
        kernel_dim: g.edges.len() as i64 - ranks.rank as i64,
        combinatorial_g2: c.g2_from_counts(),
        claims_g2: homology::is_normal_pseudomanifold(c).is_ok(),
        ranks,
    }
}

/// Left-kernel basis of one sampled rigidity matrix, with vertex participation.
#[derive(Clone, Debug, Serialize)]
pub struct StressBasis {
    pub d: usize,
    pub field: RigidityField,
    pub edges: Vec<(Vertex, Vertex)>,
    /// Integer vectors indexed like `edges`.
    #[serde(serialize_with = "serialize_vectors")]
    pub vectors: Vec<Vec<BigInt>>,
    pub participation: BTreeMap<Vertex, bool>,
    pub seed: u64,
}

fn serialize_vectors<S: serde::Serializer>(v: &[Vec<BigInt>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    text.serialize(s)
}

impl StressBasis {
    pub fn all_participate(&self) -> bool {
        self.participation.values().all(|&b| b)
    }

    /// `d`-stresses as exact text, one vector per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for w in &self.vectors {
            let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            out.push_str(&parts.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Stress space of the graph of `c` in dimension `d`, from the embedding with maximal rank
/// among `trials` samples. Every basis vector is re-verified before it is returned.
pub fn stress_basis(
    c: &SimplicialComplex,
    d: usize,
    trials: usize,
    seed: u64,
    field: RigidityField,
) -> Result<StressBasis> {
    let g = Graph::of(c);
    let ranks = generic_rank(&g, d, trials, seed, field);
    let phi = random_embedding(&g.vertices, d, trial_seed(seed, ranks.best_trial), field);
    let m = rigidity_matrix(&g, &phi)?;
    let vectors = m.left_kernel();
    if let Some(i) = vectors.iter().position(|w| !m.is_stress(w)) {
        return Err(Error::Precondition(format!(
            "kernel vector {i} fails the equilibrium check"
        )));
    }
    let mut participation: BTreeMap<Vertex, bool> = g.vertices.iter().map(|&v| (v, false)).collect();
    for w in &vectors {
        for (&(a, b), x) in g.edges.iter().zip(w) {
            if !x.is_zero() {
                participation.insert(a, true);
                participation.insert(b, true);
            }
        }
    }
    Ok(StressBasis {
        d,
        field,
        edges: g.edges,
        vectors,
        participation,
        seed,
    })
}

pub fn vertex_participation(c: &SimplicialComplex, trials: usize, seed: u64) -> Result<BTreeMap<Vertex, bool>> {
    let d = (c.dim() + 1).max(1) as usize;
    Ok(stress_basis(c, d, trials, seed, RigidityField::default())?.participation)
}

/// `g_2(lk v) ≤ g_2(Δ)` at one vertex.
#[derive(Clone, Debug, Serialize)]
pub struct LinkMonotonicity {
    pub vertex: Vertex,
    pub link_g2: i64,
    pub g2: i64,
}

impl LinkMonotonicity {
    pub fn holds(&self) -> bool {
        self.link_g2 <= self.g2
    }
}

/// Compares combinatorial `g_2` of every vertex link with that of the complex.
pub fn link_monotonicity_check(c: &SimplicialComplex) -> Vec<LinkMonotonicity> {
    let g2 = c.g2_from_counts();
    c.vertices()
        .iter()
        .map(|&v| LinkMonotonicity {
            vertex: v,
            link_g2: c.link(&Face::vertex(v)).expect("vertex").g2_from_counts(),
            g2,
        })
        .collect()
}

/// Cone lemma at one vertex: `lk v` is generically `(d-1)`-rigid iff `st v` is generically
/// `d`-rigid. Returns both verdicts.
pub fn cone_lemma_check(
    c: &SimplicialComplex,
    v: Vertex,
    d: usize,
    trials: usize,
    seed: u64,
    field: RigidityField,
) -> Result<(bool, bool)> {
    let f = Face::vertex(v);
    let link = c.link(&f)?;
    let star = c.star(&f)?;
    let link_rigid = d > 1 && is_generically_rigid(&Graph::of(&link), d - 1, trials, seed, field);
    let star_rigid = is_generically_rigid(&Graph::of(&star), d, trials, seed, field);
    Ok((link_rigid, star_rigid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn boundary(n: u32) -> SimplicialComplex {
        SimplicialComplex::from_faces(Face::range(0, n + 1).boundary())
    }

    fn complete(n: u32) -> Graph {
        let vs: Vec<Vertex> = (0..n).collect();
        let es = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::new(vs, es)
    }

    #[test]
    fn embeddings_are_deterministic() {
        let f = RigidityField::default();
        assert_eq!(random_embedding(&[0, 1, 2], 3, 5, f), random_embedding(&[0, 1, 2], 3, 5, f));
        assert_ne!(random_embedding(&[0, 1, 2], 3, 5, f), random_embedding(&[0, 1, 2], 3, 6, f));
        let r = random_embedding(&[0, 1], 2, 1, RigidityField::Rational);
        assert!(r.coords.values().flatten().all(|x| x.abs() <= BigInt::from(COORDINATE_BOUND)));
    }

    #[test]
    fn single_edge_matrix() {
        let g = Graph::new(vec![0, 1], vec![(0, 1)]);
        let phi = random_embedding(&g.vertices, 2, 1, RigidityField::Rational);
        let m = rigidity_matrix(&g, &phi).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 4));
        let a = &phi.coords[&0];
        let b = &phi.coords[&1];
        assert_eq!(m.entries[0][0], &a[0] - &b[0]);
        assert_eq!(m.entries[0][3], &b[1] - &a[1]);
        let missing = Embedding {
            coords: BTreeMap::new(),
            ..phi
        };
        assert!(rigidity_matrix(&g, &missing).is_err());
    }

    #[test]
    fn small_generic_ranks() {
        for field in [RigidityField::default(), RigidityField::Rational] {
            assert_eq!(generic_rank(&complete(4), 2, 2, 1, field).rank, 5);
            assert_eq!(generic_rank(&complete(4), 2, 2, 99, field).rank, 5);
            assert_eq!(generic_rank(&complete(3), 2, 1, 3, field).rank, 3);
            assert_eq!(generic_rank(&complete(4), 3, 1, 3, field).rank, 6);
            let path = Graph::new(vec![0, 1, 2, 3], vec![(0, 1), (1, 2), (2, 3)]);
            assert_eq!(generic_rank(&path, 1, 1, 3, field).rank, 3);
        }
    }

    #[test]
    fn simplex_boundary_and_disconnected_graphs() {
        let g = Graph::of(&boundary(4));
        assert_eq!(generic_rank(&g, 4, 3, 7, RigidityField::default()).rank, 10);
        let two = Graph::new(vec![0, 1, 2, 3], vec![(0, 1), (2, 3)]);
        assert!(generic_rank(&two, 1, 3, 7, RigidityField::default()).rank < rigid_rank(4, 1));
    }

    #[test]
    fn g2_for_join() {
        let j = boundary(2).join(&boundary(3));
        let r = g2_via_rigidity(&j, 3, 11, RigidityField::default());
        assert!(r.claims_g2);
        assert_eq!(r.kernel_dim, 1);
        assert_eq!(r.combinatorial_g2, 1);
        assert!(r.ranks.stable());
    }

    #[test]
    fn stresses_verify_and_participate() {
        let j = boundary(2).join(&boundary(2));
        for field in [RigidityField::default(), RigidityField::Rational] {
            let s = stress_basis(&j, 4, 2, 3, field).unwrap();
            assert_eq!(s.vectors.len(), 1);
            assert!(s.all_participate());
        }
        let s = stress_basis(&boundary(4), 4, 2, 3, RigidityField::default()).unwrap();
        assert!(s.vectors.is_empty());
        assert!(!s.participation.values().any(|&b| b));
    }

    #[test]
    fn cone_lemma_on_simplex_boundary() {
        let s = boundary(4);
        let (l, st) = cone_lemma_check(&s, 0, 4, 2, 5, RigidityField::default()).unwrap();
        assert!(l && st);
    }

    #[test]
    fn link_monotonicity_on_joins() {
        let j = boundary(2).join(&boundary(3));
        let rows = link_monotonicity_check(&j);
        assert!(rows.iter().all(LinkMonotonicity::holds));
        assert!(rows.iter().all(|r| r.link_g2 == 0 || r.link_g2 == 1));
    }
}
