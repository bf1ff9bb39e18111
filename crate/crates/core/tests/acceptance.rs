//! Acceptance criteria, one PASS/FAIL line each. Every criterion runs even if an earlier
//! one fails; the test fails at the end if any did.

use std::collections::HashSet;
use std::sync::OnceLock;

use lbtkit::generators::{self, CatalogEntry, G2OneVariant, G2TwoKind, Tag};
use lbtkit::homology::is_normal_pseudomanifold;
use lbtkit::rigidity::{g2_via_rigidity, generic_rank, Graph, RigidityField};
use lbtkit::verify::{verify_all, SuiteReport, VerificationReport, VerifyConfig};
use lbtkit::{Face, SimplicialComplex};

type Check = Result<String, String>;

fn suite(seed: u64) -> &'static SuiteReport {
    static SEVEN: OnceLock<SuiteReport> = OnceLock::new();
    static EIGHT: OnceLock<SuiteReport> = OnceLock::new();
    let cell = match seed {
        7 => &SEVEN,
        8 => &EIGHT,
        _ => unreachable!("only seeds 7 and 8 are used"),
    };
    cell.get_or_init(|| {
        verify_all(&VerifyConfig {
            seed,
            ..VerifyConfig::default()
        })
    })
}

fn report(alias: &str) -> &'static VerificationReport {
    suite(7)
        .reports
        .iter()
        .find(|r| r.alias == alias)
        .unwrap_or_else(|| panic!("no report for {alias}"))
}

fn passing(alias: &str) -> Result<&'static VerificationReport, String> {
    let r = report(alias);
    if r.pass {
        Ok(r)
    } else {
        Err(r.summary_line())
    }
}

fn catalog() -> &'static [CatalogEntry] {
    generators::default_catalog()
}

// Independent oracle: f-vector by subset enumeration of the facets, then the h-vector from
// the defining polynomial identity, expanded with explicit binomials.

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn oracle_f(c: &SimplicialComplex) -> Vec<i64> {
    let mut faces: HashSet<Vec<u32>> = HashSet::new();
    for f in c.facets() {
        let vs = f.vertices();
        for mask in 0u64..(1 << vs.len()) {
            let s: Vec<u32> = (0..vs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            faces.insert(s);
        }
    }
    let d = (c.dim() + 1) as usize;
    let mut f = vec![0i64; d + 1];
    for s in faces {
        f[s.len()] += 1;
    }
    f
}

/// `h_j = Σ_i (-1)^{j-i} C(d-i, j-i) f_{i-1}`.
fn oracle_h(f: &[i64]) -> Vec<i64> {
    let d = f.len() as i64 - 1;
    (0..=d)
        .map(|j| {
            (0..=j)
                .map(|i| {
                    let sign = if (j - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - i, j - i) * f[i as usize]
                })
                .sum()
        })
        .collect()
}

fn oracle_g(c: &SimplicialComplex, k: usize) -> i64 {
    let h = oracle_h(&oracle_f(c));
    let at = |j: usize| h.get(j).copied().unwrap_or(0);
    at(k) - if k == 0 { 0 } else { at(k - 1) }
}

fn npm_entries() -> impl Iterator<Item = &'static CatalogEntry> {
    catalog().iter().filter(|e| is_normal_pseudomanifold(&e.complex).is_ok())
}

fn criterion_1() -> Check {
    let mut n = 0;
    for e in npm_entries().filter(|e| (4..=6).contains(&e.d())) {
        let c = &e.complex;
        let d = e.d() as i64;
        let f = oracle_f(c);
        let by_h = oracle_g(c, 2);
        let by_counts = f[2] - d * f[1] + binomial(d + 1, 2);
        let r = g2_via_rigidity(c, 3, 1, RigidityField::default());
        if !(by_h == by_counts && by_counts == r.kernel_dim && c.g(2) == by_h) {
            return Err(format!(
                "{}: h-vector {by_h}, counts {by_counts}, rigidity {}, library {}",
                e.name,
                r.kernel_dim,
                c.g(2)
            ));
        }
        n += 1;
    }
    if n < 30 {
        return Err(format!("only {n} normal pseudomanifolds with d in 4..6"));
    }
    passing("Lemma2.4")?;
    Ok(format!("{n} normal pseudomanifolds, three routes agree"))
}

fn criterion_2() -> Check {
    let mut checked = 0;
    let mut expect = |what: String, got: i64, want: i64| -> Result<(), String> {
        checked += 1;
        if got == want {
            Ok(())
        } else {
            Err(format!("{what}: {got} instead of {want}"))
        }
    };
    for d in 2..=7 {
        let c = generators::simplex_boundary(d).unwrap();
        expect(format!("g2(simplex boundary {d})"), oracle_g(&c, 2), 0)?;
    }
    // A stacked 1-sphere is an n-gon, with g2 = 3 - n.
    for n in 3..=12 {
        let c = generators::stacked_sphere(2, n).unwrap();
        expect(format!("g2(stacked 2 {n})"), oracle_g(&c, 2), 3 - n as i64)?;
    }
    for d in 3..=6 {
        for n in d + 1..=12 {
            let c = generators::stacked_sphere(d, n).unwrap();
            expect(format!("g2(stacked {d} {n})"), oracle_g(&c, 2), 0)?;
            expect(format!("f0(stacked {d} {n})"), c.num_vertices() as i64, n as i64)?;
        }
    }
    for d in 4..=6 {
        for i in 2..=d - 2 {
            let e = generators::g2_one_family(d, G2OneVariant::Join { i }).unwrap();
            expect(e.name.clone(), oracle_g(&e.complex, 2), 1)?;
        }
        for n in 4..=8 {
            let e = generators::g2_one_family(d, G2OneVariant::Cycle { n }).unwrap();
            expect(e.name.clone(), oracle_g(&e.complex, 2), 1)?;
        }
    }
    let oct = generators::g2_two_catalog(4, G2TwoKind::Octahedral).unwrap();
    expect("g2(octahedral 3-sphere)".into(), oracle_g(&oct.complex, 2), 2)?;
    let b = generators::barnette();
    let f = oracle_f(&b.complex);
    expect("Barnette f0".into(), f[1], 8)?;
    expect("Barnette f3".into(), f[4], 19)?;
    expect("Barnette g2".into(), oracle_g(&b.complex, 2), 5)?;
    // The face-count arithmetic: f1 = f0 + f3 for a 3-sphere, g2 = f1 - 4 f0 + 10.
    expect("Barnette g2 from f0 and f3".into(), f[1] + f[4] - 4 * f[1] + 10, 5)?;
    Ok(format!("{checked} exact values"))
}

fn criterion_3() -> Check {
    let mut n = 0;
    for e in catalog().iter().filter(|e| e.complex.is_pure()) {
        let c = &e.complex;
        let d = e.d() as i64;
        for k in 1..=2usize {
            let lhs: i64 = c
                .vertices()
                .iter()
                .map(|&v| oracle_g(&c.link(&Face::vertex(v)).unwrap(), k))
                .sum();
            let rhs = (k as i64 + 1) * oracle_g(c, k + 1) + (d + 1 - k as i64) * oracle_g(c, k);
            if lhs != rhs {
                return Err(format!("{} k={k}: {lhs} != {rhs}", e.name));
            }
        }
        n += 1;
    }
    passing("Lemma2.2")?;
    Ok(format!("{n} pure complexes, k = 1, 2"))
}

fn criterion_4() -> Check {
    let r = passing("Lemma3.3")?;
    let (crtr, undo) = (r.counter("crtr"), r.counter("undo"));
    if crtr < 20 || undo < 20 {
        return Err(format!("{crtr} retriangulations, {undo} undos"));
    }
    let s = passing("Lemma3.6")?;
    Ok(format!(
        "{crtr} crtr with exact g-deltas, {undo} isomorphic undos, {} sdinv",
        s.counter("applied")
    ))
}

fn criterion_5() -> Check {
    let r = passing("Lemma3.4")?;
    let n = r.counter("identity");
    if n < 10 {
        return Err(format!("{n} identities"));
    }
    Ok(format!("{n} star-based retriangulations, face sets equal"))
}

fn criterion_6() -> Check {
    let r = passing("Lemma3.8")?;
    let n = r.counter("constructed");
    if n < 5 {
        return Err(format!("{n} constructed instances"));
    }
    Ok(format!("{n} Swartz runs, g2 drop = k and never negative"))
}

fn criterion_7() -> Check {
    let p = passing("Lemma2.5")?;
    let m = passing("Lemma2.6")?;
    let expected = npm_entries()
        .filter(|e| e.d() >= 4 && e.complex.is_prime() && e.complex.g(2) >= 1)
        .count();
    if p.counter("prime_with_stress") != expected {
        return Err(format!(
            "{} prime participation instances, {expected} expected",
            p.counter("prime_with_stress")
        ));
    }
    if m.instances != catalog().len() {
        return Err(format!("{} monotonicity instances of {}", m.instances, catalog().len()));
    }
    Ok(format!(
        "{expected} prime instances fully participate, {} monotone",
        m.instances
    ))
}

fn criterion_8() -> Check {
    let mut lines = Vec::new();
    for d in [5, 6] {
        let r = lbtkit::verify::verify(
            "Theorem4.5",
            &VerifyConfig {
                only_d: Some(d),
                ..VerifyConfig::default()
            },
        )
        .unwrap();
        if !r.pass {
            return Err(r.summary_line());
        }
        let members = catalog().iter().filter(|e| e.d() == d && e.has(Tag::G2One)).count();
        if r.counter("member_coverage") != members || members == 0 {
            return Err(format!("d = {d}: {} of {members} members covered", r.counter("member_coverage")));
        }
        lines.push(format!("d = {d}: {} prime outputs, {members} members", r.counter("prime")));
    }
    Ok(lines.join("; "))
}

fn criterion_9() -> Check {
    let five = passing("Theorem5.4")?;
    let four = passing("Theorem5.5")?;
    let targets = catalog().iter().filter(|e| e.has(Tag::G2Two) && e.has(Tag::Prime)).count();
    let done = five.counter("reproduced") + four.counter("reproduced") + four.counter("octahedral_exception");
    if done != targets || four.counter("octahedral_exception") != 1 {
        return Err(format!("{done} of {targets} g2 = 2 entries accounted for"));
    }
    for e in catalog().iter().filter(|e| e.has(Tag::G2Two)) {
        if lbtkit::homology::is_homology_sphere(&e.complex, lbtkit::Field::Rational).is_err() {
            return Err(format!("{} is not a homology sphere", e.name));
        }
    }
    Ok(format!("{targets} entries reproduced or flagged, octahedral exception registered"))
}

fn criterion_10() -> Check {
    let (a, b) = (suite(7), suite(8));
    if !a.pass {
        let first = a.reports.iter().find(|r| !r.pass).unwrap();
        return Err(first.summary_line());
    }
    if a.outcome() != b.outcome() {
        let i = a.outcome().iter().zip(b.outcome()).position(|(x, y)| *x != y).unwrap();
        return Err(format!("reports differ at {}", a.reports[i].statement));
    }
    let mut n = 0;
    for e in npm_entries() {
        let d = e.d();
        let r = generic_rank(&Graph::of(&e.complex), d, 3, 7, RigidityField::default());
        if !r.stable() {
            return Err(format!("{}: ranks {:?}", e.name, r.ranks));
        }
        n += 1;
    }
    Ok(format!("{} reports identical across seeds 7 and 8, {n} rank triples agree", a.reports.len()))
}

fn main() -> std::process::ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("g2 triple agreement", criterion_1),
        ("known values", criterion_2),
        ("link-sum identity", criterion_3),
        ("crtr and sdinv g-deltas", criterion_4),
        ("missing-face identity", criterion_5),
        ("Swartz bound", criterion_6),
        ("participation and link monotonicity", criterion_7),
        ("g2 = 1 construction", criterion_8),
        ("g2 = 2 construction", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(why) => {
                println!("FAIL criterion {} ({name}): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        std::process::ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
