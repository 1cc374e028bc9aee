//! The verification corpus: a registry of checks `C1`..`C21` and the
//! report they produce.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::check::{expect_equal, expect_true, guarded, run, Instance, Job, Outcome};
use crate::context::Context;
use crate::covariant;
use crate::elements::{sum, Element};
use crate::equality::{self, cylinder, Verdict};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::maps::{self, pair_depth, spanning_projections};
use crate::matrep;
use crate::permrep::{check_dagger_formulas, Model};
use crate::words::{enumerate_reduced, Letter, Monomial, Side};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CheckId(u8);

impl CheckId {
    pub const ALL: [CheckId; 21] = {
        let mut ids = [CheckId(1); 21];
        let mut k = 0;
        while k < 21 {
            ids[k] = CheckId(k as u8 + 1);
            k += 1;
        }
        ids
    };

    pub fn new(k: u8) -> Result<CheckId> {
        if (1..=21).contains(&k) {
            Ok(CheckId(k))
        } else {
            Err(Error::InvalidArgument(format!("no check C{k}")))
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn citation(self) -> &'static str {
        match self.0 {
            1 => "defining relations",
            2 => "generators live between the side projections",
            3 => "alpha and beta are unital *-homomorphisms",
            4 => "transfer maps L and M as left inverses",
            5 => "interaction axioms for (V, H)",
            6 => "S, T and R are partial isometries",
            7 => "transfer maps as compressions by S and T",
            8 => "covariance of R with respect to (V, H)",
            9 => "ternary ring product formula",
            10 => "redundancies of the covariant pair",
            11 => "R is not a power partial isometry",
            12 => "cancellation against R and R'",
            13 => "the corner is generated by F",
            14 => "r_ij as products of generators",
            15 => "averages of the range projections",
            16 => "relations among the r_ij",
            17 => "sigma/tau Leavitt-type relations",
            18 => "the maps Gamma and Lambda",
            19 => "round trip through the crossed product",
            20 => "fullness of the corner",
            _ => "tameness of reduced monomials",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CheckId> {
        let digits = s.trim().strip_prefix(['C', 'c']).unwrap_or(s.trim());
        let k = digits.parse::<u8>().map_err(|_| Error::InvalidArgument(format!("bad check id {s:?}")))?;
        CheckId::new(k)
    }
}

/// Parses a comma separated list such as `C1,C5,C16`.
pub fn parse_check_list(s: &str) -> Result<Vec<CheckId>> {
    let mut ids = s.split(',').filter(|t| !t.trim().is_empty()).map(CheckId::from_str).collect::<Result<Vec<_>>>()?;
    if ids.is_empty() {
        return Err(Error::InvalidArgument("empty check list".into()));
    }
    ids.sort();
    ids.dedup();
    Ok(ids)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub id: String,
    pub citation: String,
    pub instance: String,
    pub verdict: Outcome,
    pub witness: Option<String>,
    pub ms: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unconfirmed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub n: u32,
    pub m: u32,
    pub depth: usize,
    pub seed: u64,
    pub entries: Vec<Entry>,
    pub summary: Summary,
    pub notes: Vec<String>,
}

impl Report {
    /// 0 when everything passed, 1 on any failure, 2 when only
    /// unconfirmed entries remain.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.unconfirmed > 0 {
            2
        } else {
            0
        }
    }

    pub fn entries_for(&self, id: CheckId) -> impl Iterator<Item = &Entry> {
        let key = id.to_string();
        self.entries.iter().filter(move |e| e.id == key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// The report with every timing field zeroed.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        r.entries.iter_mut().for_each(|e| e.ms = 0);
        r
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("onm {} verify: n={} m={} depth={} seed={}\n", self.version, self.n, self.m, self.depth, self.seed);
        for e in &self.entries {
            let tag = match e.verdict {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Unconfirmed => "UNCONFIRMED",
            };
            out.push_str(&format!("{:<4} {:<11} {} [{}]", e.id, tag, e.instance, e.citation));
            if e.verdict != Outcome::Pass {
                if let Some(w) = &e.witness {
                    out.push_str(&format!("\n     witness: {w}"));
                }
            }
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        let s = self.summary;
        out.push_str(&format!("summary: {} pass, {} fail, {} unconfirmed\n", s.pass, s.fail, s.unconfirmed));
        out
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub depth: usize,
    pub seed: u64,
    pub checks: Vec<CheckId>,
    /// Longest monomial examined by the tameness monitor.
    pub tame_len: usize,
    pub exec: Exec,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { depth: 3, seed: 0, checks: CheckId::ALL.to_vec(), tame_len: 6, exec: Exec::default() }
    }
}

fn defining_relations(ctx: &Context, exec: Exec) -> Vec<Instance> {
    let c = *ctx;
    let (p, q) = (Element::p(c), Element::q(c));
    let mut jobs: Vec<Job> = Vec::new();
    for (fam, size) in [(crate::Family::S, c.n()), (crate::Family::T, c.m())] {
        for i in 1..=size {
            for k in 1..=size {
                let q = q.clone();
                jobs.push(Box::new(move || {
                    let x = Element::from_letters(c, &[Letter::generator_star(fam, i), Letter::generator(fam, k)]).unwrap();
                    let want = if i == k { q.clone() } else { Element::zero(c) };
                    let name = if fam == crate::Family::S { 's' } else { 't' };
                    expect_equal(format!("{name}{i}' {name}{k} = {}", if i == k { "q" } else { "0" }), &x, &want)
                }));
            }
        }
        let p = p.clone();
        jobs.push(Box::new(move || {
            let total =
                sum(c, (1..=size).map(|i| Element::from_letters(c, &[Letter::generator(fam, i), Letter::generator_star(fam, i)]).unwrap()));
            let name = if fam == crate::Family::S { 's' } else { 't' };
            expect_equal(format!("sum {name}_i {name}_i' = p"), &total, &p)
        }));
    }
    jobs.push(Box::new(move || expect_equal("p q = 0", &(&Element::p(c) * &Element::q(c)), &Element::zero(c))));
    jobs.push(Box::new(move || expect_equal("p + q = 1", &(&Element::p(c) + &Element::q(c)), &Element::one(c))));
    jobs.push(Box::new(move || expect_equal("p' = p^2 = p", &(&Element::p(c).adjoint() * &Element::p(c)), &Element::p(c))));
    jobs.push(Box::new(move || expect_equal("q' = q^2 = q", &(&Element::q(c).adjoint() * &Element::q(c)), &Element::q(c))));
    run(exec, jobs)
}

fn corner_position(ctx: &Context) -> Vec<Instance> {
    let c = *ctx;
    let (p, q) = (Element::p(c), Element::q(c));
    let mut out = Vec::new();
    for (fam, size, name) in [(crate::Family::S, c.n(), 's'), (crate::Family::T, c.m(), 't')] {
        for i in 1..=size {
            let x = Element::generator(c, fam, i).unwrap();
            out.push(expect_equal(format!("{name}{i} = p {name}{i} q"), &x, &(&(&p * &x) * &q)));
        }
    }
    out
}

fn not_power(ctx: &Context) -> Vec<Instance> {
    vec![guarded("R^2 power test", || {
        let start = Instant::now();
        let report = covariant::check_not_power(ctx)?;
        let label = if report.degenerate {
            "R^2 is a partial isometry (n = 1 or m = 1)".to_string()
        } else {
            "fourier(S S' T T' - T T' S S', a1 a2^-1 b1 b2^-1) = 1/(nm) s1 s2' t1 t2' != 0 and R^2 is not a partial isometry".to_string()
        };
        let mut inst = expect_true(label, report.holds(), Some(report.to_string()));
        inst.ms = start.elapsed().as_millis() as u64;
        Ok(inst)
    })]
}

fn dagger_in_models(ctx: &Context, depth: usize) -> Vec<Instance> {
    let d = pair_depth(depth);
    let label = "pointwise averages in a concrete model";
    let model = if ctx.n() == ctx.m() {
        Model::exact(ctx, 3, 0)
    } else {
        let longest = spanning_projections(ctx, Side::P, d).iter().map(Element::max_len).max().unwrap_or(0);
        Model::truncated(ctx, longest + 4 + 3, 0)
    };
    match model.and_then(|m| check_dagger_formulas(&m, d)) {
        Ok(v) => v,
        Err(e) => vec![expect_true(label, false, Some(format!("error: {e}")))],
    }
}

/// Tameness counts for the reduced monomials of one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TamenessRow {
    pub len: usize,
    pub total: usize,
    pub equal: usize,
    pub unconfirmed: usize,
    /// First monomial with `w w' w != w`, with the engine's witness.
    pub counterexample: Option<String>,
}

/// Decides `w w' w = w` for every nonzero reduced monomial with at most
/// `max_len` letters.
pub fn tameness_census(ctx: &Context, max_len: usize, exec: Exec) -> Vec<TamenessRow> {
    let words: Vec<Monomial> = enumerate_reduced(ctx, max_len).into_iter().filter(|w| cylinder(ctx, w).is_some()).collect();
    let c = *ctx;
    let verdicts = exec.map(&words, |w| {
        let x = Element::from_monomial(c, w.clone());
        let www = &(&x * &x.adjoint()) * &x;
        equality::equals(&www, &x)
    });
    let mut rows: Vec<TamenessRow> =
        (0..=max_len).map(|len| TamenessRow { len, total: 0, equal: 0, unconfirmed: 0, counterexample: None }).collect();
    for (w, v) in words.iter().zip(&verdicts) {
        let row = &mut rows[w.len()];
        row.total += 1;
        match v {
            Ok(Verdict::Equal) => row.equal += 1,
            Ok(Verdict::Unconfirmed(_)) => row.unconfirmed += 1,
            Ok(Verdict::NotEqual(wit)) => {
                row.counterexample.get_or_insert_with(|| format!("{w}: {wit}"));
            }
            Err(e) => {
                row.counterexample.get_or_insert_with(|| format!("{w}: error: {e}"));
            }
        }
    }
    rows.retain(|r| r.total > 0);
    rows
}

/// The tameness census as one instance per length.
pub fn tameness_monitor(ctx: &Context, max_len: usize, exec: Exec) -> Vec<Instance> {
    let start = Instant::now();
    let rows = tameness_census(ctx, max_len, exec);
    let ms = start.elapsed().as_millis() as u64;
    rows.into_iter()
        .map(|r| {
            let outcome = if r.counterexample.is_some() {
                Outcome::Fail
            } else if r.unconfirmed > 0 {
                Outcome::Unconfirmed
            } else {
                Outcome::Pass
            };
            Instance {
                instance: format!("w w' w = w for all {} nonzero reduced monomials of length {}", r.total, r.len),
                outcome,
                witness: Some(r.counterexample.unwrap_or_else(|| format!("equal: {}, unconfirmed: {}", r.equal, r.unconfirmed))),
                ms,
            }
        })
        .collect()
}

/// Runs one check of the corpus.
pub fn run_check(ctx: &Context, id: CheckId, cfg: &VerifyConfig) -> Vec<Instance> {
    let (d, exec) = (cfg.depth, cfg.exec);
    match id.0 {
        1 => defining_relations(ctx, exec),
        2 => corner_position(ctx),
        3 => maps::check_homomorphisms(ctx, d, exec),
        4 => maps::check_transfer_identities(ctx, d, exec),
        5 => {
            let mut v = maps::check_interaction_axioms(ctx, d, exec);
            v.extend(dagger_in_models(ctx, d));
            v
        }
        6 => covariant::check_pisom_suite(ctx, exec),
        7 => covariant::check_slmab(ctx, d, exec),
        8 => covariant::check_covariance(ctx, d, exec),
        9 => covariant::check_tro(ctx, d, cfg.seed, exec),
        10 => covariant::check_redundancies(ctx, d, exec),
        11 => not_power(ctx),
        12 => covariant::check_cancellation_sample(ctx, d, exec),
        13 => covariant::check_generation(ctx, d, exec),
        14 => covariant::check_rij(ctx, exec),
        15 => maps::check_assorted(ctx, d, exec),
        16 => covariant::check_rij_relations(ctx, exec),
        17 => matrep::check_sigma_tau(ctx, exec),
        18 => matrep::check_gamma_lambda(ctx, exec),
        19 => {
            let mut v = matrep::check_gamma_corner(ctx, d, exec);
            v.extend(covariant::check_normalizer(ctx, d, exec));
            v
        }
        20 => covariant::check_fullness(ctx),
        _ => tameness_monitor(ctx, cfg.tame_len, exec),
    }
}

/// Runs the selected checks and assembles a report with entries sorted by
/// check id and instance.
pub fn run_verify(ctx: &Context, cfg: &VerifyConfig) -> Report {
    let mut entries = Vec::new();
    for &id in &cfg.checks {
        for inst in run_check(ctx, id, cfg) {
            entries.push((id, inst));
        }
    }
    entries.sort_by(|(a, x), (b, y)| a.cmp(b).then_with(|| x.instance.cmp(&y.instance)));
    let mut summary = Summary::default();
    let entries = entries
        .into_iter()
        .map(|(id, inst)| {
            match inst.outcome {
                Outcome::Pass => summary.pass += 1,
                Outcome::Fail => summary.fail += 1,
                Outcome::Unconfirmed => summary.unconfirmed += 1,
            }
            Entry {
                id: id.to_string(),
                citation: id.citation().to_string(),
                instance: inst.instance,
                verdict: inst.outcome,
                witness: inst.witness,
                ms: inst.ms,
            }
        })
        .collect();
    let mut notes = Vec::new();
    if cfg.checks.contains(&CheckId(5)) {
        notes.push("C5: boundedness of V and H is not checked symbolically".to_string());
    }
    Report { version: VERSION.to_string(), n: ctx.n(), m: ctx.m(), depth: cfg.depth, seed: cfg.seed, entries, summary, notes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_ids() {
        assert_eq!("C16".parse::<CheckId>().unwrap().number(), 16);
        assert!("C22".parse::<CheckId>().is_err());
        assert_eq!(parse_check_list("C3, C1,C3").unwrap(), vec![CheckId(1), CheckId(3)]);
        assert_eq!(CheckId::ALL.len(), 21);
    }

    #[test]
    fn small_suite_passes() {
        let c = Context::new(2, 3).unwrap();
        let cfg = VerifyConfig { depth: 1, checks: parse_check_list("C1,C2,C16,C21").unwrap(), tame_len: 3, ..Default::default() };
        let r = run_verify(&c, &cfg);
        assert_eq!(r.exit_code(), 0, "{}", r.render_text());
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }
}
