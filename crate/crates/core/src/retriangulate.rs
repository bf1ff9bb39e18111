//! Central retriangulation, inverse stellar retriangulation and the Swartz operation, each
//! returning the new complex together with its g-vector bookkeeping.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{Face, Vertex};
use crate::homology::{self, analyze_ball, BallAnalysis, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RetriangulationKind {
    Central,
    InverseStellar,
    Swartz,
}

/// Predicted and recomputed change of `g_index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GDelta {
    pub index: usize,
    pub predicted: i64,
    pub actual: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RetriangulationRecord {
    pub kind: RetriangulationKind,
    pub input_g: Vec<i64>,
    pub output_g: Vec<i64>,
    pub deltas: Vec<GDelta>,
    pub new_vertices: Vec<Vertex>,
    pub removed_vertices: Vec<Vertex>,
    /// The ball that was coned off (central) or inserted (inverse stellar).
    pub ball: Option<SimplicialComplex>,
    /// Faces added outright by a Swartz step: `τ` and any shortcut facets.
    pub added_faces: Vec<Face>,
    /// Number of Swartz steps performed.
    pub steps: usize,
    pub input_f0: usize,
    pub output_f0: usize,
}

impl RetriangulationRecord {
    /// True when every predicted g-change matches the recomputed one.
    pub fn consistent(&self) -> bool {
        self.deltas.iter().all(|d| d.predicted == d.actual)
    }
}

/// `g_0..g_{⌊D/2⌋}` read from the h-vector, `D = dim + 1`.
fn g_list(c: &SimplicialComplex) -> Vec<i64> {
    c.g_vector().0
}

fn not_a_ball(v: homology::Violation) -> Error {
    Error::NotABall {
        face: v.face,
        reason: v.reason,
    }
}

/// `crtr_B(Δ)`: remove the interior faces of `B` and insert the cone from a new vertex
/// `u = max label + 1` over `∂B`.
pub fn central_retriangulation(
    delta: &SimplicialComplex,
    ball: &SimplicialComplex,
) -> Result<(SimplicialComplex, RetriangulationRecord)> {
    central_retriangulation_over(delta, ball, Field::Rational)
}

pub fn central_retriangulation_over(
    delta: &SimplicialComplex,
    ball: &SimplicialComplex,
    field: Field,
) -> Result<(SimplicialComplex, RetriangulationRecord)> {
    if let Some(f) = ball.facets().iter().find(|f| !delta.contains(f)) {
        return Err(Error::NotASubcomplex(f.clone()));
    }
    if ball.dim() != delta.dim() {
        return Err(Error::DimensionMismatch {
            expected: delta.dim(),
            found: ball.dim(),
        });
    }
    let analysis = analyze_ball(ball, field).map_err(not_a_ball)?;
    let u = delta.fresh_label();
    let interior: HashSet<&Face> = analysis.interior.iter().collect();
    let mut faces: HashSet<Face> = delta
        .all_faces()
        .filter(|f| !interior.contains(f))
        .cloned()
        .collect();
    for g in analysis.boundary.all_faces() {
        faces.insert(g.with_vertex(u));
    }
    let out = SimplicialComplex::from_face_set(&faces).map_err(|f| {
        Error::Precondition(format!("retriangulated face set is not closed at {f}"))
    })?;
    let m = analysis.min_interior_dim().unwrap_or(delta.dim()).max(0) as usize;
    let input_g = g_list(delta);
    let output_g = g_list(&out);
    let reach = m.min(input_g.len() - 1);
    let deltas = (1..=reach)
        .map(|i| GDelta {
            index: i,
            predicted: analysis.boundary.g(i - 1),
            actual: output_g[i] - input_g[i],
        })
        .collect();
    let record = RetriangulationRecord {
        kind: RetriangulationKind::Central,
        input_g,
        output_g,
        deltas,
        new_vertices: vec![u],
        removed_vertices: analysis
            .interior
            .iter()
            .take_while(|f| f.dim() == 0)
            .flat_map(|f| f.vertices().iter().copied())
            .collect(),
        ball: Some(ball.clone()),
        added_faces: Vec::new(),
        steps: 1,
        input_f0: delta.num_vertices(),
        output_f0: out.num_vertices(),
    };
    Ok((out, record))
}

/// One level of the missing-face identity for `crtr` along a face star.
#[derive(Clone, Debug, Serialize)]
pub struct MissingFaceLevel {
    pub k: usize,
    pub lhs: Vec<Face>,
    /// `(M_k(Δ) - {F : τ ⊆ F}) ∪ {u ∗ F : F ∈ Δ, F ∈ M_{k-1}(st τ)}`.
    pub rhs_literal: Vec<Face>,
    /// `rhs_literal` together with `τ` itself when `k = dim τ`.
    pub rhs: Vec<Face>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MissingFaceIdentity {
    pub tau: Face,
    pub apex: Vertex,
    pub levels: Vec<MissingFaceLevel>,
}

impl MissingFaceIdentity {
    pub fn holds(&self) -> bool {
        self.levels.iter().all(|l| l.lhs == l.rhs)
    }

    /// Faces on the left but not on the literal right-hand side, over all levels.
    pub fn literal_gap(&self) -> Vec<Face> {
        self.levels
            .iter()
            .flat_map(|l| l.lhs.iter().filter(|f| !l.rhs_literal.contains(f)).cloned())
            .collect()
    }
}

/// Computes both sides of the missing-face identity for `crtr_{st τ}(Δ)` at every
/// `k = 1..=dim Δ + 2`.
pub fn crtr_missing_faces_check(delta: &SimplicialComplex, tau: &Face) -> Result<MissingFaceIdentity> {
    let star = delta.star(tau)?;
    let (out, record) = central_retriangulation(delta, &star)?;
    let u = record.new_vertices[0];
    let top = (delta.dim() + 2) as usize;
    let levels = (1..=top)
        .map(|k| {
            let lhs = out.missing_faces(k);
            let mut literal: BTreeSet<Face> = delta
                .missing_faces(k)
                .into_iter()
                .filter(|f| !tau.is_subset(f))
                .collect();
            // Missing 0-faces of the star are taken relative to the vertex set of Δ.
            let below: Vec<Face> = if k == 1 {
                delta
                    .vertices()
                    .iter()
                    .filter(|&&v| !star.has_vertex(v))
                    .map(|&v| Face::vertex(v))
                    .collect()
            } else {
                star.missing_faces(k - 1)
            };
            literal.extend(
                below
                    .into_iter()
                    .filter(|f| delta.contains(f))
                    .map(|f| f.with_vertex(u)),
            );
            let mut rhs = literal.clone();
            if k as isize == tau.dim() {
                rhs.insert(tau.clone());
            }
            MissingFaceLevel {
                k,
                lhs,
                rhs_literal: literal.into_iter().collect(),
                rhs: rhs.into_iter().collect(),
            }
        })
        .collect();
    Ok(MissingFaceIdentity {
        tau: tau.clone(),
        apex: u,
        levels,
    })
}

/// Smallest `r ≥ 1` with `g_r(lk v) = 0`, searched up to `⌊(dim lk + 2) / 2⌋`.
pub fn detect_stacked_r(link: &SimplicialComplex) -> Option<usize> {
    let d = (link.dim() + 1) as usize;
    let h = link.h_vector();
    (1..=d.div_ceil(2)).find(|&r| h.diff(r) == 0)
}

/// `(lk)(r - 1)`; for `r = 1` this is the full simplex on the vertices of the link.
fn stacked_filling(link: &SimplicialComplex, r: usize) -> Result<SimplicialComplex> {
    if r == 1 {
        Ok(SimplicialComplex::simplex(Face::new(link.vertices().iter().copied())?))
    } else {
        homology::delta_i(link, r - 1)
    }
}

/// `sd_v^{-1}(Δ) = ast(v) ∪ (lk v)(r - 1)`. When `r` is `None` it is detected as the
/// smallest `r` with `g_r(lk v) = 0`.
pub fn inverse_stellar(
    delta: &SimplicialComplex,
    v: Vertex,
    r: Option<usize>,
) -> Result<(SimplicialComplex, RetriangulationRecord)> {
    inverse_stellar_over(delta, v, r, Field::Rational)
}

pub fn inverse_stellar_over(
    delta: &SimplicialComplex,
    v: Vertex,
    r: Option<usize>,
    field: Field,
) -> Result<(SimplicialComplex, RetriangulationRecord)> {
    let antistar = delta.antistar(v)?;
    let link = delta.link(&Face::vertex(v))?;
    let r = match r {
        Some(0) => return Err(Error::InvalidParameter("r must be at least 1".into())),
        Some(r) => {
            if link.h_vector().diff(r) != 0 {
                return Err(Error::NotStacked {
                    vertex: v,
                    reason: format!("g_{r} of the link is {}", link.h_vector().diff(r)),
                });
            }
            r
        }
        None => detect_stacked_r(&link).ok_or_else(|| Error::NotStacked {
            vertex: v,
            reason: "no r with g_r(link) = 0".into(),
        })?,
    };
    let ball = stacked_filling(&link, r)?;
    let analysis: BallAnalysis = analyze_ball(&ball, field).map_err(|e| Error::NotStacked {
        vertex: v,
        reason: format!("(lk v)({}) is not a homology ball: {e}", r - 1),
    })?;
    if ball.dim() != delta.dim() || analysis.boundary != link {
        return Err(Error::NotStacked {
            vertex: v,
            reason: format!("(lk v)({}) is not a ball bounded by the link", r - 1),
        });
    }
    if let Some(f) = analysis.interior.iter().find(|f| delta.contains(f)) {
        return Err(Error::Precondition(format!(
            "interior face {f} of the filling is already a face of the complex"
        )));
    }
    let out = antistar.union(&ball);
    let m = analysis.min_interior_dim().unwrap_or(delta.dim()).max(0) as usize;
    let input_g = g_list(delta);
    let output_g = g_list(&out);
    let reach = m.min(input_g.len() - 1).min(output_g.len() - 1);
    let deltas = (1..=reach)
        .map(|i| GDelta {
            index: i,
            predicted: -link.g(i - 1),
            actual: output_g[i] - input_g[i],
        })
        .collect();
    let record = RetriangulationRecord {
        kind: RetriangulationKind::InverseStellar,
        input_g,
        output_g,
        deltas,
        new_vertices: Vec::new(),
        removed_vertices: vec![v],
        ball: Some(ball),
        added_faces: Vec::new(),
        steps: 1,
        input_f0: delta.num_vertices(),
        output_f0: out.num_vertices(),
    };
    Ok((out, record))
}

/// Splits a homology sphere along a missing facet `τ` into the two spheres whose connected
/// sum along `τ` it is. Each part is returned with `τ` added as a facet, ordered by
/// smallest facet.
pub fn split_along_missing_facet(
    link: &SimplicialComplex,
    tau: &Face,
) -> Result<(SimplicialComplex, SimplicialComplex)> {
    let facets = link.facets();
    let mut by_ridge: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.boundary() {
            if !r.is_subset(tau) {
                by_ridge.entry(r).or_default().push(i);
            }
        }
    }
    let mut parent: Vec<usize> = (0..facets.len()).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for group in by_ridge.values() {
        for w in group.windows(2) {
            let (a, b) = (root(&mut parent, w[0]), root(&mut parent, w[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut parts: BTreeMap<usize, Vec<Face>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        let r = root(&mut parent, i);
        parts.entry(r).or_default().push(f.clone());
    }
    if parts.len() != 2 {
        return Err(Error::Precondition(format!(
            "removing {tau} splits the link into {} pieces instead of 2",
            parts.len()
        )));
    }
    let mut pieces: Vec<SimplicialComplex> = parts
        .into_values()
        .map(|mut fs| {
            fs.push(tau.clone());
            SimplicialComplex::from_faces(fs)
        })
        .collect();
    pieces.sort_by(|a, b| a.facets()[0].cmp(&b.facets()[0]));
    let second = pieces.pop().unwrap();
    let first = pieces.pop().unwrap();
    Ok((first, second))
}

/// The Swartz operation `so_{v,τ}(Δ)`.
pub fn swartz_operation(
    delta: &SimplicialComplex,
    v: Vertex,
    tau: &Face,
) -> Result<(SimplicialComplex, RetriangulationRecord)> {
    swartz_operation_over(delta, v, tau, Field::Rational)
}

pub fn swartz_operation_over(
    delta: &SimplicialComplex,
    v: Vertex,
    tau: &Face,
    field: Field,
) -> Result<(SimplicialComplex, RetriangulationRecord)> {
    if let Err(w) = homology::is_normal_pseudomanifold(delta) {
        return Err(Error::Precondition(format!("not a normal pseudomanifold: {w}")));
    }
    let (out, step) = swartz_step(delta, v, tau, field)?;
    let record = swartz_record(delta, &out, vec![step]);
    Ok((out, record))
}

struct SwartzStep {
    cones: Vec<Vertex>,
    added: Vec<Face>,
}

fn swartz_step(
    delta: &SimplicialComplex,
    v: Vertex,
    tau: &Face,
    field: Field,
) -> Result<(SimplicialComplex, SwartzStep)> {
    let link = delta.link(&Face::vertex(v))?;
    if let Err(w) = homology::is_homology_sphere(&link, field) {
        return Err(Error::Precondition(format!(
            "link of {v} is not a homology sphere: {w}"
        )));
    }
    if delta.contains(tau) {
        return Err(Error::Precondition(format!(
            "τ = {tau} must be a missing face of Δ"
        )));
    }
    let is_missing_facet = tau.dim() == link.dim()
        && !link.contains(tau)
        && tau.boundary().all(|b| link.contains(&b));
    if !is_missing_facet {
        return Err(Error::Precondition(format!(
            "τ = {tau} is not a missing facet of the link of {v}"
        )));
    }
    let (s1, s2) = split_along_missing_facet(&link, tau)?;
    let mut facets: Vec<Face> = delta.antistar(v)?.facets().to_vec();
    let mut added = vec![tau.clone()];
    facets.push(tau.clone());
    let mut next = delta.fresh_label();
    let mut cones = Vec::new();
    let filled: HashSet<Face> = HashSet::from([tau.clone()]);
    for s in [&s1, &s2] {
        let sigma = Face::new(s.vertices().iter().copied())?;
        let bounds_simplex = s.num_facets() == sigma.len()
            && s.facets().iter().all(|f| f.len() + 1 == sigma.len());
        if bounds_simplex && !delta.contains(&sigma) && !filled.contains(&sigma) {
            added.push(sigma.clone());
            facets.push(sigma);
        } else {
            facets.extend(s.facets().iter().map(|f| f.with_vertex(next)));
            cones.push(next);
            next += 1;
        }
    }
    let out = SimplicialComplex::from_faces(facets);
    Ok((
        out,
        SwartzStep {
            cones,
            added,
        },
    ))
}

fn swartz_record(
    delta: &SimplicialComplex,
    out: &SimplicialComplex,
    steps: Vec<SwartzStep>,
) -> RetriangulationRecord {
    let input_g = g_list(delta);
    let output_g = g_list(out);
    let cones: usize = steps.iter().map(|s| s.cones.len()).sum();
    let k = steps.len() as i64;
    let mut deltas = Vec::new();
    if input_g.len() > 1 && output_g.len() > 1 {
        deltas.push(GDelta {
            index: 1,
            predicted: cones as i64 - k,
            actual: output_g[1] - input_g[1],
        });
    }
    if delta.dim() >= 3 && input_g.len() > 2 && output_g.len() > 2 {
        deltas.push(GDelta {
            index: 2,
            predicted: -k,
            actual: output_g[2] - input_g[2],
        });
    }
    let new_vertices: Vec<Vertex> = out
        .vertices()
        .iter()
        .copied()
        .filter(|w| !delta.has_vertex(*w))
        .collect();
    let removed_vertices: Vec<Vertex> = delta
        .vertices()
        .iter()
        .copied()
        .filter(|w| !out.has_vertex(*w))
        .collect();
    RetriangulationRecord {
        kind: RetriangulationKind::Swartz,
        input_g,
        output_g,
        deltas,
        new_vertices,
        removed_vertices,
        ball: None,
        added_faces: steps.iter().flat_map(|s| s.added.iter().cloned()).collect(),
        steps: steps.len(),
        input_f0: delta.num_vertices(),
        output_f0: out.num_vertices(),
    }
}

/// `so_v(Δ)`: applies the Swartz operation to every missing facet of `lk v` that is not
/// a face of `Δ`, following each remaining missing facet to the new cone point that carries
/// it. Missing facets of the link that are already faces of `Δ` are skipped. Requires
/// `dim Δ ≥ 3`.
pub fn swartz_all(
    delta: &SimplicialComplex,
    v: Vertex,
) -> Result<(SimplicialComplex, RetriangulationRecord)> {
    swartz_all_over(delta, v, Field::Rational)
}

pub fn swartz_all_over(
    delta: &SimplicialComplex,
    v: Vertex,
    field: Field,
) -> Result<(SimplicialComplex, RetriangulationRecord)> {
    if delta.dim() < 3 {
        return Err(Error::Precondition(
            "iterated Swartz operation requires dimension at least 3".into(),
        ));
    }
    if let Err(w) = homology::is_normal_pseudomanifold(delta) {
        return Err(Error::Precondition(format!("not a normal pseudomanifold: {w}")));
    }
    let link = delta.link(&Face::vertex(v))?;
    let mut pending: Vec<Face> = link
        .missing_faces(link.dim().max(0) as usize)
        .into_iter()
        .filter(|t| !delta.contains(t))
        .collect();
    let mut current = delta.clone();
    let mut carriers: Vec<Vertex> = vec![v];
    let mut steps = Vec::new();
    while let Some(pos) = pending.iter().position(|t| {
        carriers
            .iter()
            .any(|&w| carries_missing_facet(&current, w, t))
    }) {
        let tau = pending.remove(pos);
        let w = *carriers
            .iter()
            .find(|&&w| carries_missing_facet(&current, w, &tau))
            .unwrap();
        let (next, step) = swartz_step(&current, w, &tau, field)?;
        carriers.retain(|&x| x != w);
        carriers.extend(step.cones.iter().copied());
        steps.push(step);
        current = next;
    }
    if let Some(t) = pending.first() {
        return Err(Error::Precondition(format!(
            "missing facet {t} of the link is no longer carried by a cone point"
        )));
    }
    let record = swartz_record(delta, &current, steps);
    Ok((current, record))
}

fn carries_missing_facet(c: &SimplicialComplex, w: Vertex, tau: &Face) -> bool {
    if !c.has_vertex(w) || c.contains(tau) {
        return false;
    }
    let link = c.link(&Face::vertex(w)).expect("vertex");
    tau.dim() == link.dim() && tau.boundary().all(|b| link.contains(&b))
}
