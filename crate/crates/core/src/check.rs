//! Outcomes of individual identity checks.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::elements::Element;
use crate::equality::{self, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Unconfirmed,
}

/// One checked instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub instance: String,
    pub outcome: Outcome,
    pub witness: Option<String>,
    pub ms: u64,
}

impl Instance {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn from_verdict(label: String, v: Result<Verdict, crate::Error>, want_equal: bool, start: Instant) -> Instance {
    let (outcome, witness) = match v {
        Err(e) => (Outcome::Fail, Some(format!("error: {e}"))),
        Ok(Verdict::Equal) if want_equal => (Outcome::Pass, None),
        Ok(Verdict::Equal) => (Outcome::Fail, Some("sides are equal".into())),
        Ok(Verdict::NotEqual(w)) if want_equal => (Outcome::Fail, Some(w.to_string())),
        Ok(Verdict::NotEqual(w)) => (Outcome::Pass, Some(w.to_string())),
        Ok(Verdict::Unconfirmed(r)) => (Outcome::Unconfirmed, Some(r)),
    };
    Instance { instance: label, outcome, witness, ms: elapsed_ms(start) }
}

/// Passes when `x = y` in the algebra.
pub fn expect_equal(label: impl Into<String>, x: &Element, y: &Element) -> Instance {
    let start = Instant::now();
    from_verdict(label.into(), equality::equals(x, y), true, start)
}

/// Passes when `x != y`; the witness records the separating atom.
pub fn expect_not_equal(label: impl Into<String>, x: &Element, y: &Element) -> Instance {
    let start = Instant::now();
    from_verdict(label.into(), equality::equals(x, y), false, start)
}

/// Records a condition that is decided outside the equality engine.
pub fn expect_true(label: impl Into<String>, ok: bool, detail: Option<String>) -> Instance {
    Instance { instance: label.into(), outcome: if ok { Outcome::Pass } else { Outcome::Fail }, witness: detail, ms: 0 }
}

/// Wraps a fallible instance computation, turning errors into failures.
pub fn guarded(label: &str, f: impl FnOnce() -> crate::Result<Instance>) -> Instance {
    f().unwrap_or_else(|e| Instance { instance: label.to_string(), outcome: Outcome::Fail, witness: Some(format!("error: {e}")), ms: 0 })
}

pub(crate) type Job<'a> = Box<dyn Fn() -> Instance + Send + Sync + 'a>;

pub(crate) fn run(exec: crate::exec::Exec, jobs: Vec<Job<'_>>) -> Vec<Instance> {
    exec.map(&jobs, |job| job())
}
