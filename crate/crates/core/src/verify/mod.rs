//! Verification harness: one registered check per statement, each run over the catalog and
//! reported as a machine-readable [`VerificationReport`].

mod checks;
mod search;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::generators::{self, CatalogEntry, Scale};
use crate::rigidity::{RigidityField, DEFAULT_TRIALS};

pub use search::{ball_candidates, g2_one_members, reproduce, BallKind, Reproduction};

/// Settings shared by every statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyConfig {
    pub scale: Scale,
    pub seed: u64,
    pub trials: usize,
    pub field: RigidityField,
    /// Restrict dimension-indexed statements to this `d = dim + 1`.
    pub only_d: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            scale: Scale::default(),
            seed: 1,
            trials: DEFAULT_TRIALS,
            field: RigidityField::default(),
            only_d: None,
        }
    }
}

impl VerifyConfig {
    pub(crate) fn wants_d(&self, d: usize) -> bool {
        d <= self.scale.dmax && self.only_d.is_none_or(|x| x == d)
    }
}

/// One instance that did not satisfy the statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub statement: &'static str,
    pub alias: &'static str,
    /// The checked claim, stated as a formula.
    pub claim: &'static str,
    pub scope: &'static str,
    pub scale: Scale,
    pub seed: u64,
    pub instances: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    /// Named tallies, e.g. how many instances were filtered out or reached a sub-check.
    pub counters: BTreeMap<&'static str, usize>,
    pub notes: Vec<String>,
    pub pass: bool,
    pub wall_time_ms: u128,
}

impl VerificationReport {
    /// The report without seed and timing, for determinism comparisons.
    pub fn outcome(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(m) = v.as_object_mut() {
            m.remove("seed");
            m.remove("wall_time_ms");
        }
        v
    }

    pub fn counter(&self, key: &str) -> usize {
        self.counters.get(key).copied().unwrap_or(0)
    }

    /// One line per report, `PASS`/`FAIL` first.
    pub fn summary_line(&self) -> String {
        format!(
            "{} {} ({}): {}/{} instances{}",
            if self.pass { "PASS" } else { "FAIL" },
            self.statement,
            self.alias,
            self.passes,
            self.instances,
            if self.failures.is_empty() {
                String::new()
            } else {
                format!(", first failure: {}: {}", self.failures[0].instance, self.failures[0].witness)
            }
        )
    }
}

/// Result of one instance, produced possibly in parallel and recorded in order.
#[derive(Clone, Debug, Default)]
pub(crate) struct Outcome {
    pub instance: String,
    /// `None` when the instance does not meet the statement's hypotheses.
    pub result: Option<std::result::Result<(), String>>,
    pub counters: Vec<&'static str>,
    pub notes: Vec<String>,
}

impl Outcome {
    pub fn new(instance: impl Into<String>) -> Outcome {
        Outcome {
            instance: instance.into(),
            ..Outcome::default()
        }
    }

    pub fn skip(mut self, counter: &'static str) -> Outcome {
        self.counters.push(counter);
        self
    }

    pub fn with(mut self, result: std::result::Result<(), String>) -> Outcome {
        self.result = Some(result);
        self
    }

    pub fn count(&mut self, counter: &'static str) {
        self.counters.push(counter);
    }
}

/// Accumulates outcomes into report fields.
#[derive(Debug, Default)]
pub(crate) struct Recorder {
    pub instances: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    pub counters: BTreeMap<&'static str, usize>,
    pub notes: Vec<String>,
    /// Minimum number of tested instances for the statement to pass.
    pub required: usize,
}

impl Recorder {
    pub fn push(&mut self, o: Outcome) {
        for c in o.counters {
            *self.counters.entry(c).or_default() += 1;
        }
        self.notes.extend(o.notes);
        if let Some(r) = o.result {
            self.instances += 1;
            match r {
                Ok(()) => self.passes += 1,
                Err(witness) => self.failures.push(Failure {
                    instance: o.instance,
                    witness,
                }),
            }
        }
    }

    pub fn extend(&mut self, outcomes: impl IntoIterator<Item = Outcome>) {
        for o in outcomes {
            self.push(o);
        }
    }

    pub fn require(&mut self, key: &'static str, at_least: usize) {
        let n = self.counters.get(key).copied().unwrap_or(0);
        if n < at_least {
            self.failures.push(Failure {
                instance: "coverage".into(),
                witness: format!("counter {key} is {n}, at least {at_least} required"),
            });
        }
    }
}

/// Shared inputs for a run.
pub(crate) struct Ctx<'a> {
    pub cfg: &'a VerifyConfig,
    pub catalog: &'a [CatalogEntry],
}

impl Ctx<'_> {
    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.catalog.iter().filter(|e| self.cfg.wants_d(e.d()))
    }
}

const CONSTRUCTIVE: &str = "constructive direction only: generated constructions are checked for the claimed \
     properties and catalog membership; complexes are not enumerated exhaustively";
const CATALOG: &str = "every applicable catalog instance at the configured scale";

/// A registered statement.
pub struct Statement {
    pub id: &'static str,
    pub alias: &'static str,
    pub claim: &'static str,
    pub scope: &'static str,
    run: fn(&Ctx) -> Recorder,
}

impl Statement {
    pub fn run(&self, cfg: &VerifyConfig) -> VerificationReport {
        let owned;
        let catalog: &[CatalogEntry] = if cfg.scale == Scale::default() {
            generators::default_catalog()
        } else {
            owned = generators::catalog(cfg.scale).expect("catalog verifies");
            &owned
        };
        self.run_on(cfg, catalog)
    }

    fn run_on(&self, cfg: &VerifyConfig, catalog: &[CatalogEntry]) -> VerificationReport {
        let start = Instant::now();
        let mut rec = (self.run)(&Ctx { cfg, catalog });
        if rec.instances < rec.required.max(1) {
            rec.failures.push(Failure {
                instance: "coverage".into(),
                witness: format!("{} instances tested, at least {} required", rec.instances, rec.required.max(1)),
            });
        }
        VerificationReport {
            statement: self.id,
            alias: self.alias,
            claim: self.claim,
            scope: self.scope,
            scale: cfg.scale,
            seed: cfg.seed,
            instances: rec.instances,
            passes: rec.passes,
            pass: rec.failures.is_empty(),
            failures: rec.failures,
            counters: rec.counters,
            notes: rec.notes,
            wall_time_ms: start.elapsed().as_millis(),
        }
    }
}

pub static STATEMENTS: &[Statement] = &[
    Statement {
        id: "link-sum",
        alias: "Lemma2.2",
        claim: "pure (d-1)-complex, k in {1,2}: sum_v g_k(lk v) = (k+1) g_{k+1} + (d+1-k) g_k",
        scope: CATALOG,
        run: checks::link_sum,
    },
    Statement {
        id: "rigidity-g2",
        alias: "Lemma2.4",
        claim: "normal (d-1)-pseudomanifold: rank Rig(G, d) = d f_0 - C(d+1,2) and dim LKer = g_2; \
                lk v generically (d-1)-rigid iff st v generically d-rigid",
        scope: CATALOG,
        run: checks::rigidity_g2,
    },
    Statement {
        id: "vertex-participation",
        alias: "Lemma2.5",
        claim: "prime normal (d-1)-pseudomanifold, d >= 4, g_2 >= 1: every vertex participates in a generic d-stress",
        scope: CATALOG,
        run: checks::vertex_participation,
    },
    Statement {
        id: "link-monotonicity",
        alias: "Lemma2.6",
        claim: "lk v generically (d-1)-rigid and the complex generically d-rigid: g_2(lk v) <= g_2",
        scope: CATALOG,
        run: checks::link_monotonicity,
    },
    Statement {
        id: "stacked-filling",
        alias: "Theorem2.3",
        claim: "g_2 = 0 sphere, d >= 4: Delta(1) = Delta(d-2) is a d-ball with boundary Delta",
        scope: "forward direction on the stacked catalog spheres",
        run: checks::stacked_filling,
    },
    Statement {
        id: "crtr-g-change",
        alias: "Lemma3.3",
        claim: "B an (r-1)-stacked ball: g_i(crtr_B) = g_i + g_{i-1}(dB) below the first interior dimension; \
                sdinv at the cone point restores the complex",
        scope: "face stars of dimension above half the dimension and unions of 2 or 3 adjacent facets",
        run: checks::crtr_g_change,
    },
    Statement {
        id: "crtr-star-properties",
        alias: "Lemma3.4",
        claim: "homology d-manifold, i-face tau, i > d/2: st tau is (d-i)-stacked; M_k(crtr_{st tau}) = \
                (M_k - {F : tau in F}) + {u F : F in Delta, F in M_{k-1}(st tau)} + {tau at k = i}",
        scope: "face stars of dimension above half the dimension",
        run: checks::crtr_star_properties,
    },
    Statement {
        id: "sdinv-g-change",
        alias: "Lemma3.6",
        claim: "lk v (r-1)-stacked and no interior face of (lk v)(r-1) in Delta: g_i(sdinv_v) = g_i - g_{i-1}(lk v)",
        scope: CATALOG,
        run: checks::sdinv_g_change,
    },
    Statement {
        id: "swartz-bound",
        alias: "Lemma3.8",
        claim: "normal (d-1)-pseudomanifold, d >= 4, lk v a homology sphere with k missing facets outside \
                Delta: g_2 >= k, and so_v lowers g_2 by exactly k",
        scope: CATALOG,
        run: checks::swartz_bound,
    },
    Statement {
        id: "join-decomposition",
        alias: "Lemma4.1",
        claim: "normal (d-1)-pseudomanifold on d+2 vertices: a join of two simplex boundaries",
        scope: CATALOG,
        run: checks::join_decomposition,
    },
    Statement {
        id: "stacked-crtr-membership",
        alias: "Prop4.2",
        claim: "stacked sphere, any face tau: if crtr_{st tau} is prime with g_2 = 1 it lies in G_d",
        scope: "every face star of the stacked catalog spheres",
        run: checks::stacked_crtr_membership,
    },
    Statement {
        id: "macaulay-bound",
        alias: "Lemma4.4",
        claim: "normal (d-1)-pseudomanifold, d >= 4: g_3 <= g_2^<2>, and (1, g_1, g_2, g_3) is an M-sequence when g_3 >= 0",
        scope: CATALOG,
        run: checks::macaulay_bound,
    },
    Statement {
        id: "g2-one-construction",
        alias: "Theorem4.5",
        claim: "d >= 5: crtr of stacked spheres along ridge stars and of simplex boundaries along face stars \
                give, when prime, members of G_d; every catalog member of G_d arises this way",
        scope: CONSTRUCTIVE,
        run: checks::g2_one_construction,
    },
    Statement {
        id: "g2-two-construction",
        alias: "Theorem5.4",
        claim: "d >= 5: every prime g_2 = 2 catalog sphere is crtr of a sphere with g_2 <= 1 along a stacked subcomplex",
        scope: CONSTRUCTIVE,
        run: checks::g2_two_construction,
    },
    Statement {
        id: "g2-two-dim-four",
        alias: "Theorem5.5",
        claim: "prime homology 3-manifold with g_2 = 2: the octahedral 3-sphere, or crtr of a g_2 = 1 sphere along \
                two adjacent facets",
        scope: CONSTRUCTIVE,
        run: checks::g2_two_dim_four,
    },
    Statement {
        id: "g2-two-closure",
        alias: "Corollary5.6",
        claim: "connected sums of two g_2 = 1 spheres and stackings of prime g_2 = 2 spheres are g_2 = 2 spheres",
        scope: CONSTRUCTIVE,
        run: checks::g2_two_closure,
    },
];

/// Looks a statement up by id or alias, ignoring case.
pub fn find_statement(name: &str) -> Option<&'static Statement> {
    STATEMENTS
        .iter()
        .find(|s| s.id.eq_ignore_ascii_case(name) || s.alias.eq_ignore_ascii_case(name))
}

/// Runs one statement by id or alias.
pub fn verify(name: &str, cfg: &VerifyConfig) -> Option<VerificationReport> {
    find_statement(name).map(|s| s.run(cfg))
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub pass: bool,
    pub reports: Vec<VerificationReport>,
    pub wall_time_ms: u128,
}

impl SuiteReport {
    pub fn outcome(&self) -> Vec<serde_json::Value> {
        self.reports.iter().map(|r| r.outcome()).collect()
    }
}

/// Runs every registered statement; statements run concurrently, results keep registry order.
pub fn verify_all(cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let owned;
    let catalog: &[CatalogEntry] = if cfg.scale == Scale::default() {
        generators::default_catalog()
    } else {
        owned = generators::catalog(cfg.scale).expect("catalog verifies");
        &owned
    };
    let reports: Vec<VerificationReport> = STATEMENTS.par_iter().map(|s| s.run_on(cfg, catalog)).collect();
    SuiteReport {
        pass: reports.iter().all(|r| r.pass),
        reports,
        wall_time_ms: start.elapsed().as_millis(),
    }
}
