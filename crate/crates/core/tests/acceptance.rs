//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always show.

mod common;

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use onm_core::check::Outcome;
use onm_core::covariant::{check_not_power, not_power_group_word};
use onm_core::permrep::{refute_equality, OracleVerdict};
use onm_core::verify::{parse_check_list, run_verify, tameness_census, Report, VerifyConfig};
use onm_core::{equals, parse_element, Context, Element, Error, Exec, Family, Letter, RefineStep, Verdict};

const DEPTH: usize = 3;

type Criterion = (&'static str, fn() -> Finding);

struct Finding {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Finding {
    Finding { ok, detail: detail.into() }
}

fn contexts() -> Vec<Context> {
    (0..CONTEXTS.len()).map(ctx).collect()
}

fn failures(r: &Report) -> Vec<String> {
    r.entries
        .iter()
        .filter(|e| e.verdict != Outcome::Pass)
        .map(|e| format!("{} {}: {:?} {}", e.id, e.instance, e.verdict, e.witness.clone().unwrap_or_default()))
        .collect()
}

fn relation_corpus() -> Finding {
    let checks = parse_check_list("C1,C2,C3,C4,C5,C6,C7,C8,C9,C10,C13,C14,C15,C16,C17,C18,C19,C20,C21").unwrap();
    let mut details = Vec::new();
    let mut ok = true;
    for c in contexts() {
        let start = Instant::now();
        let r = run_verify(&c, &VerifyConfig { depth: DEPTH, checks: checks.clone(), ..Default::default() });
        let took = start.elapsed();
        let bad = failures(&r);
        ok &= bad.is_empty() && took < Duration::from_secs(300);
        details.push(format!("{c}: {} pass in {:.1}s", r.summary.pass, took.as_secs_f64()));
        for b in bad.iter().take(5) {
            details.push(format!("  {b}"));
        }
    }
    outcome(ok, details.join("; "))
}

fn not_power() -> Finding {
    let mut ok = true;
    let mut details = Vec::new();
    for c in contexts() {
        let r = check_not_power(&c).unwrap();
        let good = if c.n() >= 2 && c.m() >= 2 {
            let nm = (c.n() * c.m()) as i64;
            let expected = parse_element(&format!("1/{nm} s1 s2' t1 t2'"), &c).unwrap();
            let fourier = r.fourier.clone().unwrap();
            let in_models = matches!(refute_equality(&fourier, &Element::zero(c), 10, 0).unwrap(), OracleVerdict::Refuted { .. });
            // Recompute the coefficient directly from the definitions.
            let s = parse_element("S S'", &c).unwrap();
            let t = parse_element("T T'", &c).unwrap();
            let direct = (&(&s * &t) - &(&t * &s)).fourier(&not_power_group_word());
            fourier == expected
                && direct == expected
                && equals(&fourier, &Element::zero(c)).unwrap().is_not_equal()
                && in_models
                && r.r_squared_partial_isometry.is_not_equal()
        } else {
            r.degenerate && r.r_squared_partial_isometry.is_equal()
        };
        ok &= good;
        details.push(format!("{c}: {r}"));
    }
    outcome(ok, details.join("; "))
}

fn interaction_axioms() -> Finding {
    let mut ok = true;
    let mut details = Vec::new();
    for c in contexts() {
        let r = run_verify(&c, &VerifyConfig { depth: 2, checks: parse_check_list("C5").unwrap(), ..Default::default() });
        let unital = r.entries.iter().filter(|e| e.instance.ends_with("(p) = p")).count();
        let cone = r.entries.iter().filter(|e| e.instance.contains("projection cone")).count();
        let bounded = r.notes.iter().any(|n| n.contains("boundedness") && n.contains("not checked"));
        let bad = failures(&r);
        ok &= bad.is_empty() && unital == 2 && cone > 0 && bounded;
        details.push(format!("{c}: {} instances, unitality {unital}, cone {cone}, boundedness unchecked: {bounded}", r.entries.len()));
        details.extend(bad.into_iter().take(5));
    }
    outcome(ok, details.join("; "))
}

fn isomorphism_chain() -> Finding {
    let mut ok = true;
    let mut details = Vec::new();
    for c in contexts() {
        for i in 1..=c.n() {
            for j in 1..=c.m() {
                let r = parse_element(&format!("r[{i},{j}]"), &c).unwrap();
                let st = Element::from_letters(c, &[Letter::S(i), Letter::TStar(j)]).unwrap();
                let prod = parse_element(&format!("r[{i},1] r[1,1]' r[1,{j}]"), &c).unwrap();
                ok &= equals(&r, &st).unwrap().is_equal() && equals(&prod, &r).unwrap().is_equal();
            }
        }
        let r =
            run_verify(&c, &VerifyConfig { depth: DEPTH, checks: parse_check_list("C14,C16,C17,C18,C19").unwrap(), ..Default::default() });
        let bad = failures(&r);
        ok &= bad.is_empty();
        details.push(format!("{c}: {} pass", r.summary.pass));
        details.extend(bad.into_iter().take(5));
    }
    outcome(ok, details.join("; "))
}

fn tameness() -> Finding {
    let mut ok = true;
    let mut details = Vec::new();
    for c in contexts() {
        let rows = tameness_census(&c, 6, Exec::default());
        let words: usize = rows.iter().map(|r| r.total).sum();
        let unconfirmed: usize = rows.iter().map(|r| r.unconfirmed).sum();
        for r in &rows {
            ok &= r.counterexample.is_none() && r.equal + r.unconfirmed == r.total;
            ok &= r.len > 4 || r.unconfirmed == 0;
            if let Some(bad) = &r.counterexample {
                details.push(format!("{c} length {}: {bad}", r.len));
            }
        }
        ok &= rows.iter().map(|r| r.len).eq(1..=6);
        details.push(format!("{c}: {words} words, {unconfirmed} unconfirmed"));
    }
    outcome(ok, details.join("; "))
}

fn random_element(c: &Context, rng: &mut ChaCha8Rng) -> Element {
    let terms = rng.gen_range(1..=3);
    let raw: Vec<RawTerm> = (0..terms)
        .map(|_| {
            let len = rng.gen_range(1..=3);
            let codes = (0..len).map(|_| rng.gen::<u8>()).collect();
            (codes, rng.gen_range(-3..=3), rng.gen_range(1..=3), rng.gen_range(0..4))
        })
        .collect();
    build(c, &raw)
}

fn oracle_cross_validation() -> Finding {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut equal, mut not_equal, mut unconfirmed) = (0, 0, 0);
    let (mut refuted, mut fiber_separated, mut unsound) = (0, 0, 0);
    let mut log = Vec::new();
    for k in 0..1000usize {
        let c = ctx(k);
        let x = random_element(&c, &mut rng);
        let y = match k % 4 {
            0 => {
                let len = x.terms().map(|(w, _)| w.len()).min().unwrap_or(0);
                let fam = if rng.gen() { Family::S } else { Family::T };
                x.refine(&[RefineStep::new(rng.gen_range(0..=len), fam)]).unwrap()
            }
            1 => &x + &random_element(&c, &mut rng),
            _ => random_element(&c, &mut rng),
        };
        let seed = k as u64;
        match equals(&x, &y).unwrap() {
            Verdict::Equal => {
                equal += 1;
                if refute_equality(&x, &y, 10, seed).unwrap() != OracleVerdict::NotRefuted {
                    unsound += 1;
                    log.push(format!("{c} Equal but refuted: {x} | {y}"));
                }
            }
            Verdict::NotEqual(_) => {
                not_equal += 1;
                if matches!(refute_equality(&x, &y, 10, seed).unwrap(), OracleVerdict::Refuted { .. }) {
                    refuted += 1;
                    continue;
                }
                let d = &x - &y;
                let zero = Element::zero(c);
                let by_fiber = d
                    .fibers()
                    .iter()
                    .any(|f| matches!(refute_equality(&f.element, &zero, 10, seed).unwrap(), OracleVerdict::Refuted { .. }));
                if by_fiber {
                    fiber_separated += 1;
                } else {
                    log.push(format!("{c} NotEqual, not separated: {x} | {y}"));
                }
            }
            Verdict::Unconfirmed(_) => unconfirmed += 1,
        }
    }
    let separated = refuted + fiber_separated;
    let rate = if not_equal == 0 { 1.0 } else { separated as f64 / not_equal as f64 };
    for line in &log {
        eprintln!("  oracle log: {line}");
    }
    outcome(
        unsound == 0 && unconfirmed == 0 && rate >= 0.95,
        format!(
            "equal {equal}, not equal {not_equal}, unconfirmed {unconfirmed}, refuted {refuted}, fiber-separated {fiber_separated}, separation rate {:.2}%, unsound {unsound}",
            100.0 * rate
        ),
    )
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn property_suites() -> Finding {
    const CASES: u32 = 10_000;
    let scalar = (-4i64..=4, 1i64..=4, 0u8..4);
    let results = [
        (
            "scalar field",
            runner(CASES)
                .run(&(raw_scalar(), raw_scalar(), raw_scalar()), |(a, b, c)| scalar_axioms(&a, &b, &c))
                .map_err(|e| e.to_string()),
        ),
        (
            "free group",
            runner(CASES)
                .run(&(raw_group_word(8), raw_group_word(8), raw_group_word(8)), |(a, b, c)| group_laws(&a, &b, &c))
                .map_err(|e| e.to_string()),
        ),
        (
            "*-algebra",
            runner(CASES)
                .run(&(0usize..5, raw_element(3, 3), raw_element(3, 3), raw_element(3, 2), scalar.clone()), |(k, a, b, c, s)| {
                    star_algebra_laws(k, &a, &b, &c, s)
                })
                .map_err(|e| e.to_string()),
        ),
        (
            "Fourier",
            runner(CASES)
                .run(&(0usize..5, raw_element(4, 4), raw_element(4, 4), raw_group_word(4), scalar), |(k, a, b, g, s)| {
                    fourier_laws(k, &a, &b, &g, s)
                })
                .map_err(|e| e.to_string()),
        ),
        (
            "refinement",
            runner(CASES)
                .run(&(0usize..5, raw_element(4, 3), prop::collection::vec((0usize..8, any::<bool>()), 0..3)), |(k, a, st)| {
                    refinement_sound(k, &a, &st)
                })
                .map_err(|e| e.to_string()),
        ),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for (name, r) in results {
        match r {
            Ok(()) => details.push(format!("{name}: {CASES} cases")),
            Err(e) => {
                ok = false;
                details.push(format!("{name}: {e}"));
            }
        }
    }
    outcome(ok, details.join("; "))
}

fn golden_corpus() -> std::result::Result<usize, String> {
    let text = include_str!("golden/corpus.txt");
    let mut count = 0;
    for (lineno, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(" | ").map(str::trim).collect();
        let [nm, input, rel, expected] = fields[..] else { return Err(format!("line {}: malformed", lineno + 1)) };
        let mut it = nm.split_whitespace().map(|v| v.parse::<u32>().unwrap());
        let c = Context::new(it.next().unwrap(), it.next().unwrap()).unwrap();
        let fail = |msg: String| Err(format!("line {}: {input}: {msg}", lineno + 1));
        let parsed = parse_element(input, &c);
        if rel == "error" {
            match parsed {
                Err(Error::Parse { line, col, .. }) if format!("{line}:{col}") == expected => {}
                other => return fail(format!("expected parse error at {expected}, got {other:?}")),
            }
            count += 1;
            continue;
        }
        let x = match parsed {
            Ok(x) => x,
            Err(e) => return fail(e.to_string()),
        };
        if parse_element(&x.to_string(), &c).ok().as_ref() != Some(&x) {
            return fail(format!("rendering {x} does not parse back"));
        }
        let ok = match rel {
            "=>" => x.to_string() == expected,
            "==" => parse_element(expected, &c).map(|y| y == x).unwrap_or(false),
            "~" => equals(&x, &parse_element(expected, &c).unwrap()).unwrap().is_equal(),
            "!~" => equals(&x, &parse_element(expected, &c).unwrap()).unwrap().is_not_equal(),
            _ => return fail(format!("unknown relation {rel}")),
        };
        if !ok {
            return fail(format!("got {x}, expected {rel} {expected}"));
        }
        count += 1;
    }
    Ok(count)
}

fn parser_criterion() -> Finding {
    let round_trips = runner(1000).run(&(0usize..5, raw_element(5, 5)), |(k, a)| parser_round_trip(k, &a));
    let golden = golden_corpus();
    let ok = round_trips.is_ok() && golden.is_ok();
    let rt = match round_trips {
        Ok(()) => "1000 round trips".to_string(),
        Err(e) => format!("round trip failed: {e}"),
    };
    let g = match golden {
        Ok(n) => format!("golden corpus: {n} lines"),
        Err(e) => format!("golden corpus failed: {e}"),
    };
    outcome(ok, format!("{rt}; {g}"))
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; a bare
    // `--list` asks for the test names only.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [Criterion; 8] = [
        ("relation corpus C1-C10, C13-C21 at depth 3", relation_corpus),
        ("R is not a power partial isometry (C11)", not_power),
        ("interaction axioms over the depth-2 spanning set (C5)", interaction_axioms),
        ("isomorphism chain (C14, C16-C19)", isomorphism_chain),
        ("tameness monitor up to length 6 (C21)", tameness),
        ("oracle cross-validation on 1000 random pairs", oracle_cross_validation),
        ("property suites, 10^4 cases each", property_suites),
        ("parser round trip and golden corpus", parser_criterion),
    ];
    let mut all = true;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        all &= r.ok;
        println!(
            "criterion {} {}: {} ({:.1}s) {}",
            k + 1,
            name,
            if r.ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            r.detail
        );
    }
    println!("acceptance: {}", if all { "all criteria pass" } else { "some criteria FAIL" });
    if !all {
        std::process::exit(1);
    }
}
