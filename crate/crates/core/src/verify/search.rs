//! Candidate balls for central retriangulation and the search that reproduces a target
//! complex as `crtr_B(S)` for some source `S`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::face::Face;
use crate::generators::{self, G2OneVariant};
use crate::homology::{self, Field};
use crate::iso::are_isomorphic;
use crate::retriangulate::central_retriangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BallKind {
    /// Star of a face.
    Star,
    /// Union of two facets sharing a ridge.
    FacetPair,
    /// Union of three facets `F_1, F_2, F_3` with `F_2` adjacent to both others.
    FacetTriple,
}

/// Limits for [`ball_candidates`].
#[derive(Clone, Copy, Debug)]
pub struct BallLimits {
    /// Smallest and largest face dimension whose stars are used.
    pub star_dims: (isize, isize),
    /// Stars per dimension; `None` for all.
    pub stars_per_dim: Option<usize>,
    pub pairs: Option<usize>,
    pub triples: Option<usize>,
}

fn take<T>(v: Vec<T>, limit: Option<usize>) -> Vec<T> {
    match limit {
        Some(n) => v.into_iter().take(n).collect(),
        None => v,
    }
}

/// Candidate subcomplexes of `delta`, labeled, in a fixed order: stars by dimension, then
/// facet pairs, then facet triples. Facet unions are not checked to be balls.
pub fn ball_candidates(
    delta: &SimplicialComplex,
    kinds: &[BallKind],
    limits: BallLimits,
) -> Vec<(BallKind, String, SimplicialComplex)> {
    let mut out = Vec::new();
    if kinds.contains(&BallKind::Star) {
        let (lo, hi) = limits.star_dims;
        for k in lo.max(0)..=hi.min(delta.dim()) {
            let faces = take(delta.faces_of_dim(k).to_vec(), limits.stars_per_dim);
            for f in faces {
                let star = delta.star(&f).expect("face of the complex");
                out.push((BallKind::Star, format!("star {f}"), star));
            }
        }
    }
    let facets = delta.facets();
    let mut by_ridge: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
    for (i, f) in facets.iter().enumerate() {
        for r in f.boundary() {
            by_ridge.entry(r).or_default().push(i);
        }
    }
    let pairs: Vec<(usize, usize)> = by_ridge
        .values()
        .filter(|v| v.len() == 2)
        .map(|v| (v[0], v[1]))
        .collect();
    if kinds.contains(&BallKind::FacetPair) {
        for &(a, b) in take(pairs.clone(), limits.pairs).iter() {
            let ball = SimplicialComplex::from_faces([facets[a].clone(), facets[b].clone()]);
            out.push((BallKind::FacetPair, format!("facets {} {}", facets[a], facets[b]), ball));
        }
    }
    if kinds.contains(&BallKind::FacetTriple) {
        let mut neighbors: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &(a, b) in &pairs {
            neighbors.entry(a).or_default().insert(b);
            neighbors.entry(b).or_default().insert(a);
        }
        let mut seen: BTreeSet<[usize; 3]> = BTreeSet::new();
        let mut triples = Vec::new();
        for (&mid, ns) in &neighbors {
            let ns: Vec<usize> = ns.iter().copied().collect();
            for (x, &a) in ns.iter().enumerate() {
                for &b in &ns[x + 1..] {
                    let mut key = [a, mid, b];
                    key.sort_unstable();
                    if seen.insert(key) {
                        triples.push((a, mid, b));
                    }
                }
            }
        }
        for (a, m, b) in take(triples, limits.triples) {
            let ball = SimplicialComplex::from_faces([facets[a].clone(), facets[m].clone(), facets[b].clone()]);
            out.push((
                BallKind::FacetTriple,
                format!("facets {} {} {}", facets[a], facets[m], facets[b]),
                ball,
            ));
        }
    }
    out
}

/// Members of the `g_2 = 1` family with `d = dim + 1` and `f0` vertices.
pub fn g2_one_members(d: usize, f0: usize) -> Vec<(String, SimplicialComplex)> {
    let mut out = Vec::new();
    if d < 4 {
        return out;
    }
    if f0 == d + 2 {
        for i in 2..=d / 2 {
            let e = generators::g2_one_family(d, G2OneVariant::Join { i }).expect("valid join");
            out.push((e.name, e.complex));
        }
    }
    if f0 + 1 >= d + 4 {
        let n = f0 + 1 - d;
        let e = generators::g2_one_family(d, G2OneVariant::Cycle { n }).expect("valid cycle");
        out.push((e.name, e.complex));
    }
    out
}

/// How a target was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reproduction {
    pub source: String,
    pub kind: BallKind,
    pub ball: String,
    /// Stackedness of the ball: the smallest `s` with no interior faces of dimension `< d - s`.
    pub stackedness: usize,
}

/// Estimated stackedness, used only to order the search: a star of `τ` in a manifold has
/// interior faces from `τ` up, a facet union at least its shared ridges.
fn stackedness_hint(kind: BallKind, ball: &SimplicialComplex) -> isize {
    match kind {
        BallKind::Star => {
            let facets = ball.facets();
            let core = facets.iter().skip(1).fold(facets[0].clone(), |acc, f| acc.intersection(f));
            ball.dim() - core.dim()
        }
        BallKind::FacetPair | BallKind::FacetTriple => 1,
    }
}

/// Searches `crtr_B(S)` over the sources and their candidate balls for a complex isomorphic
/// to `target`. Returns the first hit, most stacked ball first, and the number of retriangulations
/// whose f-vector matched.
pub fn reproduce(
    target: &SimplicialComplex,
    sources: &[(String, SimplicialComplex)],
    kinds: &[BallKind],
    limits: BallLimits,
) -> (Option<Reproduction>, usize) {
    let f = target.f_vector();
    let mut jobs: Vec<(usize, BallKind, String, SimplicialComplex)> = sources
        .iter()
        .enumerate()
        .filter(|(_, (_, s))| s.dim() == target.dim() && s.num_vertices() + 1 == target.num_vertices())
        .flat_map(|(i, (_, s))| {
            ball_candidates(s, kinds, limits)
                .into_iter()
                .map(move |(k, label, b)| (i, k, label, b))
        })
        .collect();
    // Try the most stacked balls first; the sort is stable, so ties keep source order.
    jobs.sort_by_key(|(_, kind, _, ball)| stackedness_hint(*kind, ball));
    let matched = std::sync::atomic::AtomicUsize::new(0);
    let hit = jobs.par_iter().find_map_first(|(i, kind, label, ball)| {
        let (out, _) = central_retriangulation(&sources[*i].1, ball).ok()?;
        if out.f_vector() != f {
            return None;
        }
        matched.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        if !are_isomorphic(&out, target).ok()?.is_isomorphic() {
            return None;
        }
        let analysis = homology::analyze_ball(ball, Field::Rational).ok()?;
        Some(Reproduction {
            source: sources[*i].0.clone(),
            kind: *kind,
            ball: label.clone(),
            stackedness: homology::stackedness(&analysis, ball.dim()),
        })
    });
    (hit, matched.into_inner())
}
