//! One check function per registered statement.

use rayon::prelude::*;

use super::search::{ball_candidates, g2_one_members, reproduce, BallKind, BallLimits};
use super::{Ctx, Outcome, Recorder};
use crate::complex::SimplicialComplex;
use crate::face::Face;
use crate::generators::{self, CatalogEntry, Tag};
use crate::homology::{self, betti, is_homology_sphere, is_normal_pseudomanifold, Field};
use crate::iso::{are_isomorphic, detect_join, is_join_partition};
use crate::macaulay::{is_m_sequence, macaulay_pseudopower};
use crate::retriangulate::{
    central_retriangulation, crtr_missing_faces_check, inverse_stellar, swartz_all,
};
use crate::rigidity::{cone_lemma_check, g2_via_rigidity, link_monotonicity_check, rigid_rank, stress_basis};
use crate::Error;

/// Largest source used by the retriangulation checks.
const RETRIANGULATION_MAX_F0: usize = 13;
/// Largest stacked source whose every face star is retriangulated.
const MEMBERSHIP_MAX_F0: usize = 10;

fn over<'a, F>(entries: Vec<&'a CatalogEntry>, f: F) -> Vec<Outcome>
where
    F: Fn(&'a CatalogEntry) -> Vec<Outcome> + Sync + Send,
{
    entries.into_par_iter().flat_map_iter(f).collect()
}

fn recorder(required: usize) -> Recorder {
    Recorder {
        required,
        ..Recorder::default()
    }
}

fn npm(e: &CatalogEntry) -> bool {
    is_normal_pseudomanifold(&e.complex).is_ok()
}

fn fail(msg: impl Into<String>) -> Result<(), String> {
    Err(msg.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn iso(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    are_isomorphic(a, b).map(|c| c.is_isomorphic()).unwrap_or(false)
}

fn spherelike(e: &CatalogEntry) -> bool {
    e.has(Tag::Sphere) || e.has(Tag::Manifold)
}

pub(crate) fn link_sum(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(10);
    rec.extend(over(ctx.entries().collect(), |e| {
        let c = &e.complex;
        let o = Outcome::new(&e.name);
        if !c.is_pure() {
            return vec![o.skip("impure")];
        }
        let d = e.d() as i64;
        let links: Vec<SimplicialComplex> = c
            .vertices()
            .iter()
            .map(|&v| c.link(&Face::vertex(v)).expect("vertex"))
            .collect();
        let result = (1..=2usize).try_for_each(|k| {
            let lhs: i64 = links.iter().map(|l| l.g(k)).sum();
            let rhs = (k as i64 + 1) * c.g(k + 1) + (d + 1 - k as i64) * c.g(k);
            ensure(lhs == rhs, || format!("k = {k}: sum of link g_k = {lhs}, expected {rhs}"))
        });
        vec![o.with(result)]
    }));
    rec
}

pub(crate) fn rigidity_g2(ctx: &Ctx) -> Recorder {
    let cfg = ctx.cfg;
    let mut rec = recorder(30);
    rec.extend(over(ctx.entries().collect(), |e| {
        let mut o = Outcome::new(&e.name);
        if !npm(e) {
            return vec![o.skip("not_normal_pseudomanifold")];
        }
        o.count("normal_pseudomanifold");
        let c = &e.complex;
        let d = e.d();
        if (4..=6).contains(&d) {
            o.count("normal_pseudomanifold_d4_6");
        }
        let r = g2_via_rigidity(c, cfg.trials, cfg.seed, cfg.field);
        let g2 = c.g(2);
        let mut result = ensure(r.ranks.stable(), || format!("ranks differ across trials: {:?}", r.ranks.ranks))
            .and_then(|_| {
                let want = rigid_rank(c.num_vertices(), d);
                ensure(r.ranks.rank == want, || format!("rank {} instead of {want}", r.ranks.rank))
            })
            .and_then(|_| {
                ensure(r.claims_g2 && r.kernel_dim == g2 && r.combinatorial_g2 == g2, || {
                    format!(
                        "kernel dimension {}, face-count g_2 {}, h-vector g_2 {g2}",
                        r.kernel_dim, r.combinatorial_g2
                    )
                })
            });
        if result.is_ok() {
            for &v in c.vertices() {
                match cone_lemma_check(c, v, d, cfg.trials, cfg.seed, cfg.field) {
                    Ok((link, star)) if link == star => o.count("cone_vertices"),
                    Ok((link, star)) => {
                        result = fail(format!("vertex {v}: link rigid {link}, star rigid {star}"));
                        break;
                    }
                    Err(err) => {
                        result = fail(format!("vertex {v}: {err}"));
                        break;
                    }
                }
            }
        }
        vec![o.with(result)]
    }));
    rec.require("normal_pseudomanifold_d4_6", 30);
    rec
}

pub(crate) fn vertex_participation(ctx: &Ctx) -> Recorder {
    let cfg = ctx.cfg;
    let mut rec = recorder(5);
    rec.extend(over(ctx.entries().collect(), |e| {
        let mut o = Outcome::new(&e.name);
        if !npm(e) {
            return vec![o.skip("not_normal_pseudomanifold")];
        }
        let c = &e.complex;
        let d = e.d();
        let g2 = c.g(2);
        let basis = match stress_basis(c, d, cfg.trials, cfg.seed, cfg.field) {
            Ok(b) => b,
            Err(err) => return vec![o.with(fail(err.to_string()))],
        };
        let other = match stress_basis(c, d, cfg.trials, cfg.seed.wrapping_add(0x9e37), cfg.field) {
            Ok(b) => b,
            Err(err) => return vec![o.with(fail(err.to_string()))],
        };
        let hypothesis = d >= 4 && g2 >= 1 && c.is_prime();
        if hypothesis {
            o.count("prime_with_stress");
        }
        let result = ensure(basis.vectors.len() as i64 == g2, || {
            format!("{} stresses, g_2 = {g2}", basis.vectors.len())
        })
        .and_then(|_| {
            ensure(basis.participation == other.participation, || {
                "participation differs between two embeddings".to_string()
            })
        })
        .and_then(|_| {
            if !hypothesis {
                return Ok(());
            }
            let idle: Vec<_> = basis.participation.iter().filter(|(_, &p)| !p).map(|(v, _)| *v).collect();
            ensure(idle.is_empty(), || format!("vertices without stress: {idle:?}"))
        });
        vec![o.with(result)]
    }));
    rec.require("prime_with_stress", 5);
    rec
}

pub(crate) fn link_monotonicity(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(10);
    rec.extend(over(ctx.entries().collect(), |e| {
        let mut o = Outcome::new(&e.name);
        if !npm(e) {
            o.count("not_normal_pseudomanifold");
        }
        let bad = link_monotonicity_check(&e.complex).into_iter().find(|m| !m.holds());
        let result = match bad {
            None => Ok(()),
            Some(m) => fail(format!("vertex {}: g_2(lk) = {} > g_2 = {}", m.vertex, m.link_g2, m.g2)),
        };
        vec![o.with(result)]
    }));
    rec
}

pub(crate) fn stacked_filling(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(5);
    rec.extend(over(ctx.entries().collect(), |e| {
        let o = Outcome::new(&e.name);
        let d = e.d();
        if !e.has(Tag::Stacked) || d < 4 {
            return vec![o.skip("hypotheses_not_met")];
        }
        let c = &e.complex;
        let result = (|| {
            let one = homology::delta_i(c, 1).map_err(|e| e.to_string())?;
            let top = homology::delta_i(c, d - 2).map_err(|e| e.to_string())?;
            ensure(one == top, || "Delta(1) differs from Delta(d-2)".into())?;
            ensure(one.dim() == d as isize, || format!("Delta(1) has dimension {}", one.dim()))?;
            let ball = homology::analyze_ball(&one, Field::Rational)
                .map_err(|v| format!("Delta(1) is not a ball at {}: {}", v.face, v.reason))?;
            ensure(ball.boundary == *c, || "boundary of Delta(1) differs from Delta".into())
        })();
        vec![o.with(result)]
    }));
    rec
}

fn retriangulation_sources<'a>(ctx: &'a Ctx) -> Vec<&'a CatalogEntry> {
    ctx.entries()
        .filter(|e| spherelike(e) && e.complex.num_vertices() <= RETRIANGULATION_MAX_F0 && e.d() >= 3)
        .collect()
}

pub(crate) fn crtr_g_change(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(20);
    rec.extend(over(retriangulation_sources(ctx), |e| {
        let c = &e.complex;
        let dim = c.dim();
        let limits = BallLimits {
            star_dims: (dim / 2 + 1, dim),
            stars_per_dim: Some(2),
            pairs: Some(2),
            triples: Some(1),
        };
        let kinds = [BallKind::Star, BallKind::FacetPair, BallKind::FacetTriple];
        let betti_in = betti(c, Field::Rational);
        let was_npm = npm(e);
        ball_candidates(c, &kinds, limits)
            .into_iter()
            .map(|(_, label, ball)| {
                let mut o = Outcome::new(format!("{} along {label}", e.name));
                let (out, record) = match central_retriangulation(c, &ball) {
                    Ok(x) => x,
                    Err(Error::NotABall { .. }) => return o.skip("not_a_ball"),
                    Err(err) => return o.with(fail(err.to_string())),
                };
                o.count("crtr");
                let result = ensure(record.consistent(), || format!("g changes {:?}", record.deltas))
                    .and_then(|_| {
                        let want = c.num_vertices() + 1 - record.removed_vertices.len();
                        ensure(out.num_vertices() == want, || format!("{} vertices, expected {want}", out.num_vertices()))
                    })
                    .and_then(|_| {
                        ensure(betti(&out, Field::Rational) == betti_in, || "homology changed".into())
                    })
                    .and_then(|_| {
                        ensure(!was_npm || is_normal_pseudomanifold(&out).is_ok(), || {
                            "result is not a normal pseudomanifold".into()
                        })
                    })
                    .and_then(|_| {
                        let u = record.new_vertices[0];
                        let analysis = homology::analyze_ball(&ball, Field::Rational)
                            .map_err(|v| format!("ball check at {}: {}", v.face, v.reason))?;
                        let r = homology::stackedness(&analysis, ball.dim()) + 1;
                        let (back, undo) = match inverse_stellar(&out, u, Some(r)) {
                            Ok(x) => x,
                            Err(Error::NotStacked { .. }) | Err(Error::Precondition(_)) => {
                                o.count("undo_not_applicable");
                                return Ok(());
                            }
                            Err(err) => return fail(format!("undo: {err}")),
                        };
                        o.count("undo");
                        ensure(undo.consistent(), || format!("undo g changes {:?}", undo.deltas))?;
                        ensure(iso(&back, c), || "undo is not isomorphic to the source".into())
                    });
                o.with(result)
            })
            .collect()
    }));
    rec.require("crtr", 20);
    rec.require("undo", 20);
    rec
}

pub(crate) fn crtr_star_properties(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(10);
    rec.extend(over(retriangulation_sources(ctx), |e| {
        let c = &e.complex;
        let dim = c.dim();
        let limits = BallLimits {
            star_dims: (dim / 2 + 1, dim - 1),
            stars_per_dim: Some(2),
            pairs: None,
            triples: None,
        };
        let mut taus = Vec::new();
        for k in limits.star_dims.0..=limits.star_dims.1 {
            taus.extend(c.faces_of_dim(k).iter().take(2).cloned());
        }
        taus.into_iter()
            .map(|tau| {
                let mut o = Outcome::new(format!("{} along star {tau}", e.name));
                let star = c.star(&tau).expect("face");
                let r = (dim - tau.dim() + 1) as usize;
                let result = homology::is_r_stacked_ball(&star, r, Field::Rational)
                    .map_err(|err| err.to_string())
                    .and_then(|cert| {
                        ensure(cert.stacked, || {
                            format!("star is not {}-stacked: interior {:?}", r - 1, cert.interior_faces_by_dim)
                        })
                    })
                    .and_then(|_| {
                        let id = crtr_missing_faces_check(c, &tau).map_err(|err| err.to_string())?;
                        ensure(id.holds(), || "missing-face identity fails".into())?;
                        o.count("identity");
                        let gap = id.literal_gap();
                        ensure(gap == vec![tau.clone()], || format!("literal gap {gap:?}"))
                    });
                o.with(result)
            })
            .collect()
    }));
    rec.require("identity", 10);
    rec
}

pub(crate) fn sdinv_g_change(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(10);
    let sources: Vec<&CatalogEntry> = ctx
        .entries()
        .filter(|e| spherelike(e) && e.complex.num_vertices() <= 14 && e.d() >= 3)
        .collect();
    rec.extend(over(sources, |e| {
        let c = &e.complex;
        let betti_in = betti(c, Field::Rational);
        let was_npm = npm(e);
        c.vertices()
            .iter()
            .map(|&v| {
                let o = Outcome::new(format!("{} at vertex {v}", e.name));
                match inverse_stellar(c, v, None) {
                    Ok((out, record)) => {
                        let result = ensure(record.consistent(), || format!("g changes {:?}", record.deltas))
                            .and_then(|_| {
                                ensure(out.num_vertices() + 1 == c.num_vertices(), || "vertex count".into())
                            })
                            .and_then(|_| {
                                ensure(betti(&out, Field::Rational) == betti_in, || "homology changed".into())
                            })
                            .and_then(|_| {
                                ensure(!was_npm || is_normal_pseudomanifold(&out).is_ok(), || {
                                    "result is not a normal pseudomanifold".into()
                                })
                            });
                        o.skip("applied").with(result)
                    }
                    Err(Error::NotStacked { .. }) | Err(Error::Precondition(_)) | Err(Error::TooLarge { .. }) => {
                        o.skip("not_applicable")
                    }
                    Err(err) => o.with(fail(err.to_string())),
                }
            })
            .collect()
    }));
    rec.require("applied", 10);
    rec
}

pub(crate) fn swartz_bound(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(10);
    let sources: Vec<&CatalogEntry> = ctx
        .entries()
        .filter(|e| e.d() >= 4 && e.complex.num_vertices() <= 14 && npm(e))
        .collect();
    rec.extend(over(sources, |e| {
        let c = &e.complex;
        let g2 = c.g(2);
        let dim_link = (c.dim() - 1) as usize;
        c.vertices()
            .iter()
            .map(|&v| {
                let mut o = Outcome::new(format!("{} at vertex {v}", e.name));
                let link = c.link(&Face::vertex(v)).expect("vertex");
                if is_homology_sphere(&link, Field::Rational).is_err() {
                    return o.skip("link_not_sphere");
                }
                let k = link
                    .missing_faces(dim_link)
                    .into_iter()
                    .filter(|f| !c.contains(f))
                    .count() as i64;
                let result = ensure(g2 >= k, || format!("g_2 = {g2} < k = {k}")).and_then(|_| {
                    if k == 0 {
                        return Ok(());
                    }
                    let (out, record) = swartz_all(c, v).map_err(|err| err.to_string())?;
                    o.count("constructed");
                    ensure(record.steps as i64 == k, || format!("{} steps for k = {k}", record.steps))?;
                    ensure(record.consistent(), || format!("g changes {:?}", record.deltas))?;
                    let g2_out = out.g(2);
                    ensure(g2_out == g2 - k, || format!("g_2 after so_v is {g2_out}, expected {}", g2 - k))?;
                    ensure(is_normal_pseudomanifold(&out).is_ok(), || "result is not a normal pseudomanifold".into())
                });
                o.with(result)
            })
            .collect()
    }));
    rec.require("constructed", 5);
    rec
}

pub(crate) fn join_decomposition(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(5);
    rec.extend(over(ctx.entries().collect(), |e| {
        let o = Outcome::new(&e.name);
        let c = &e.complex;
        if c.num_vertices() != e.d() + 2 || !npm(e) {
            return vec![o.skip("hypotheses_not_met")];
        }
        let result = match detect_join(c) {
            None => fail("no join decomposition found"),
            Some((a, b)) => {
                let boundary = |f: &Face| SimplicialComplex::from_faces(f.boundary());
                ensure(c.restriction(&a) == boundary(&a), || format!("restriction to {a} is not a simplex boundary"))
                    .and_then(|_| {
                        ensure(c.restriction(&b) == boundary(&b), || {
                            format!("restriction to {b} is not a simplex boundary")
                        })
                    })
                    .and_then(|_| ensure(is_join_partition(c, &a, &b), || format!("{a} | {b} is not a join")))
            }
        };
        vec![o.with(result)]
    }));
    rec
}

pub(crate) fn stacked_crtr_membership(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(10);
    let sources: Vec<&CatalogEntry> = ctx
        .entries()
        .filter(|e| e.has(Tag::Stacked) && e.d() >= 4 && e.complex.num_vertices() <= MEMBERSHIP_MAX_F0)
        .collect();
    rec.extend(over(sources, |e| {
        let c = &e.complex;
        let d = e.d();
        let members = g2_one_members(d, c.num_vertices() + 1);
        let faces: Vec<Face> = (1..c.dim()).flat_map(|k| c.faces_of_dim(k).to_vec()).collect();
        faces
            .into_par_iter()
            .map(|tau| {
                let mut o = Outcome::new(format!("{} along star {tau}", e.name));
                let star = c.star(&tau).expect("face");
                let out = match central_retriangulation(c, &star) {
                    Ok((out, _)) => out,
                    Err(err) => return o.with(fail(err.to_string())),
                };
                o.count("crtr");
                if out.g(2) != 1 || !out.is_prime() {
                    return o.skip("not_prime_g2_one");
                }
                o.count("prime_g2_one");
                let hit = members.iter().find(|(_, m)| iso(&out, m));
                o.with(ensure(hit.is_some(), || "not isomorphic to any member of G_d".into()))
            })
            .collect::<Vec<_>>()
    }));
    rec
}

pub(crate) fn macaulay_bound(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(10);
    rec.extend(over(ctx.entries().collect(), |e| {
        let o = Outcome::new(&e.name);
        if e.d() < 4 || !npm(e) {
            return vec![o.skip("hypotheses_not_met")];
        }
        let c = &e.complex;
        let (g1, g2, g3) = (c.g(1), c.g(2), c.g(3));
        let result = ensure(g2 >= 0, || format!("g_2 = {g2} < 0")).and_then(|_| {
            let bound = macaulay_pseudopower(g2 as u64, 2) as i64;
            ensure(g3 <= bound, || format!("g_3 = {g3} > g_2^<2> = {bound}"))?;
            ensure(g3 < 0 || is_m_sequence(&[1, g1, g2, g3]), || {
                format!("(1, {g1}, {g2}, {g3}) is not an M-sequence")
            })
        });
        vec![o.with(result)]
    }));
    rec
}

/// Outputs of the constructions that produce `G_d` for one `d`.
fn g2_one_outputs(ctx: &Ctx, d: usize) -> Vec<(String, SimplicialComplex)> {
    let mut jobs: Vec<(String, SimplicialComplex, Face)> = Vec::new();
    let boundary = generators::simplex_boundary(d).expect("d >= 1");
    for i in 1..=(d as isize - 2) {
        let tau = boundary.faces_of_dim(i)[0].clone();
        jobs.push((format!("simplex-boundary-{d}"), boundary.clone(), tau));
    }
    for e in ctx.entries().filter(|e| e.d() == d && e.has(Tag::Stacked) && e.complex.num_vertices() <= 12) {
        for tau in e.complex.faces_of_dim(d as isize - 2) {
            jobs.push((e.name.clone(), e.complex.clone(), tau.clone()));
        }
    }
    jobs.into_par_iter()
        .filter_map(|(name, c, tau)| {
            let star = c.star(&tau).ok()?;
            let (out, _) = central_retriangulation(&c, &star).ok()?;
            Some((format!("{name} along star {tau}"), out))
        })
        .collect()
}

pub(crate) fn g2_one_construction(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(10);
    for d in 5..=ctx.cfg.scale.dmax {
        if !ctx.cfg.wants_d(d) {
            continue;
        }
        let outputs = g2_one_outputs(ctx, d);
        let checked: Vec<(Outcome, Option<SimplicialComplex>)> = outputs
            .into_par_iter()
            .map(|(label, out)| {
                let mut o = Outcome::new(label);
                if !out.is_prime() {
                    return (o.skip("not_prime"), None);
                }
                o.count("prime");
                let members = g2_one_members(d, out.num_vertices());
                let result = ensure(out.g(2) == 1, || format!("g_2 = {}", out.g(2))).and_then(|_| {
                    ensure(members.iter().any(|(_, m)| iso(&out, m)), || "not in G_d".into())
                });
                let keep = result.is_ok().then(|| out.clone());
                (o.with(result), keep)
            })
            .collect();
        let mut found: Vec<SimplicialComplex> = Vec::new();
        for (o, keep) in checked {
            rec.push(o);
            if let Some(c) = keep {
                if !found.iter().any(|f| f.f_vector() == c.f_vector() && iso(f, &c)) {
                    found.push(c);
                }
            }
        }
        let members: Vec<&CatalogEntry> = ctx.entries().filter(|e| e.d() == d && e.has(Tag::G2One)).collect();
        rec.extend(members.into_par_iter().map(|m| {
            let o = Outcome::new(format!("{} is constructed", m.name)).skip("member_coverage");
            let hit = found
                .iter()
                .any(|f| f.f_vector() == m.complex.f_vector() && iso(f, &m.complex));
            o.with(ensure(hit, || "no construction output is isomorphic to this member".into()))
        }).collect::<Vec<_>>());
    }
    rec.require("member_coverage", 2);
    rec
}

/// Spheres with `g_2 <= 1` that may serve as sources for a target on `f0 + 1` vertices.
fn low_g2_sources(ctx: &Ctx, d: usize, f0: usize, exact_g2: Option<i64>) -> Vec<(String, SimplicialComplex)> {
    let mut sources = if exact_g2.is_none_or(|x| x == 1) {
        g2_one_members(d, f0)
    } else {
        Vec::new()
    };
    for e in ctx.catalog {
        let g2 = e.complex.g(2);
        let wanted = match exact_g2 {
            Some(x) => g2 == x,
            None => g2 <= 1,
        };
        if e.d() == d && e.complex.num_vertices() == f0 && e.has(Tag::Sphere) && wanted && !e.has(Tag::Fixture)
            && !sources.iter().any(|(n, _)| *n == e.name) {
                sources.push((e.name.clone(), e.complex.clone()));
            }
    }
    sources.sort_by_key(|(_, c)| -c.g(2));
    sources
}

const ALL_BALLS: BallLimits = BallLimits {
    star_dims: (0, isize::MAX),
    stars_per_dim: None,
    pairs: None,
    triples: None,
};

fn prime_g2_two_sphere(c: &SimplicialComplex) -> Result<(), String> {
    ensure(c.g(2) == 2, || format!("g_2 = {}", c.g(2)))?;
    ensure(c.is_prime(), || "not prime".into())?;
    is_homology_sphere(c, Field::Rational).map_err(|v| format!("not a homology sphere at {}: {}", v.face, v.reason))
}

pub(crate) fn g2_two_construction(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(3);
    let targets: Vec<&CatalogEntry> = ctx
        .entries()
        .filter(|e| e.d() >= 5 && e.has(Tag::G2Two) && e.has(Tag::Prime))
        .collect();
    rec.extend(targets.into_iter().map(|e| {
        let mut o = Outcome::new(&e.name);
        let result = prime_g2_two_sphere(&e.complex).and_then(|_| {
            let sources = low_g2_sources(ctx, e.d(), e.complex.num_vertices() - 1, None);
            let kinds = [BallKind::Star, BallKind::FacetPair, BallKind::FacetTriple];
            let (hit, _) = reproduce(&e.complex, &sources, &kinds, ALL_BALLS);
            let hit = hit.ok_or_else(|| format!("no retriangulation of {} sources matches", sources.len()))?;
            o.count("reproduced");
            o.notes.push(format!(
                "{}: crtr of {} along {} ({}-stacked)",
                e.name, hit.source, hit.ball, hit.stackedness
            ));
            Ok(())
        });
        o.with(result)
    }));
    rec
}

pub(crate) fn g2_two_dim_four(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(3);
    if !ctx.cfg.wants_d(4) {
        return rec;
    }
    let targets: Vec<&CatalogEntry> = ctx
        .entries()
        .filter(|e| e.d() == 4 && e.has(Tag::G2Two) && e.has(Tag::Prime))
        .collect();
    rec.extend(targets.into_iter().map(|e| {
        let mut o = Outcome::new(&e.name);
        let c = &e.complex;
        let sources = low_g2_sources(ctx, 4, c.num_vertices() - 1, Some(1));
        let result = prime_g2_two_sphere(c).and_then(|_| {
            let (hit, _) = reproduce(c, &sources, &[BallKind::FacetPair], ALL_BALLS);
            if e.has(Tag::Octahedral) {
                let cross = generators::cross_polytope_boundary(4).map_err(|e| e.to_string())?;
                ensure(iso(c, &cross), || "flagged octahedral entry is not the cross-polytope".into())?;
                let octahedron = generators::cross_polytope_boundary(3).map_err(|e| e.to_string())?;
                let bad = c.vertices().iter().find(|&&v| !iso(&c.link(&Face::vertex(v)).expect("vertex"), &octahedron));
                ensure(bad.is_none(), || format!("link of {} is not an octahedron", bad.unwrap()))?;
                ensure(hit.is_none(), || "octahedral sphere unexpectedly arises from two facets".into())?;
                o.count("octahedral_exception");
                o.notes.push(format!(
                    "{}: octahedral case, not obtained from the {} g_2 = 1 sources along two facets",
                    e.name,
                    sources.len()
                ));
                return Ok(());
            }
            let hit = hit.ok_or_else(|| format!("no two-facet retriangulation of {} sources matches", sources.len()))?;
            o.count("reproduced");
            o.notes.push(format!("{}: crtr of {} along {}", e.name, hit.source, hit.ball));
            Ok(())
        });
        o.with(result)
    }));
    rec.require("octahedral_exception", 1);
    rec.require("reproduced", 2);
    rec
}

pub(crate) fn g2_two_closure(ctx: &Ctx) -> Recorder {
    let mut rec = recorder(5);
    let scale = ctx.cfg.scale;
    let mut jobs: Vec<(String, SimplicialComplex, Option<SimplicialComplex>)> = Vec::new();
    for d in 4..=scale.dmax {
        if !ctx.cfg.wants_d(d) {
            continue;
        }
        let members: Vec<&CatalogEntry> = ctx.entries().filter(|e| e.d() == d && e.has(Tag::G2One)).collect();
        for (x, a) in members.iter().enumerate() {
            for b in &members[x..] {
                if a.complex.num_vertices() + b.complex.num_vertices() - d <= scale.max_vertices {
                    jobs.push((format!("{} # {}", a.name, b.name), a.complex.clone(), Some(b.complex.clone())));
                }
            }
        }
        for e in ctx.entries().filter(|e| e.d() == d && e.has(Tag::G2Two) && e.has(Tag::Prime)) {
            jobs.push((format!("{} stacked", e.name), e.complex.clone(), None));
        }
    }
    rec.extend(
        jobs.into_par_iter()
            .map(|(label, a, b)| {
                let mut o = Outcome::new(label);
                let made = match &b {
                    Some(b) => {
                        o.count("connected_sums");
                        a.connected_sum(&a.facets()[0], b, &b.facets()[0], None)
                    }
                    None => {
                        o.count("stackings");
                        a.stack_over_facet(&a.facets()[0])
                    }
                };
                let result = made.map_err(|e| e.to_string()).and_then(|c| {
                    ensure(c.g(2) == 2, || format!("g_2 = {}", c.g(2)))?;
                    ensure(!c.is_prime(), || "result is prime".into())?;
                    is_homology_sphere(&c, Field::Rational)
                        .map_err(|v| format!("not a homology sphere at {}: {}", v.face, v.reason))
                });
                o.with(result)
            })
            .collect::<Vec<_>>(),
    );
    rec.require("connected_sums", 5);
    rec.require("stackings", 2);
    rec
}
