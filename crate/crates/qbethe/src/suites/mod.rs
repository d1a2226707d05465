//! Verification suites producing replayable, deterministic JSON reports.
//!
//! Every suite echoes `q` and the seeds it ran with. A failing check stores
//! the first counterexample with all inputs and both sides of the identity.

mod algebra;
mod combinatorics;
mod weights;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::Operator;
use crate::repr::{build_module, Module};
use crate::rmatrix::Variant;
use crate::scalar::{Rational, ScalarContext};

/// Differing operator entries shown in a counterexample.
const DIFF_SHOWN: usize = 8;

/// Deliberate corruption used to confirm that the checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// One off-diagonal R-matrix entry is perturbed.
    REntry,
    /// One entry of the Original zero mode `L^+[0]` is perturbed.
    L0Plus,
    /// Vector-representation generators are conjugated into a non-weight basis.
    RotatedBasis,
}

impl Fault {
    pub const ALL: [Fault; 3] = [Fault::REntry, Fault::L0Plus, Fault::RotatedBasis];

    pub fn tag(self) -> &'static str {
        match self {
            Fault::REntry => "r-entry",
            Fault::L0Plus => "l0-plus",
            Fault::RotatedBasis => "rotated-basis",
        }
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fault::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown fault '{s}'")))
    }
}

/// Sizes, seeds and `q` for a verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    /// Largest rank `N` exercised; suites run every `2 <= N' <= n`.
    #[serde(rename = "N")]
    pub n: usize,
    pub max_excitations: usize,
    pub seeds: Vec<u64>,
    pub q: Rational,
    /// Random spectral tuples per seed for the R-matrix suites.
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
}

impl VerifyConfig {
    pub fn new(n: usize, max_excitations: usize, seeds: Vec<u64>) -> Self {
        VerifyConfig { n, max_excitations, seeds, q: ScalarContext::default_q(), samples: 20, fault: None }
    }

    fn ctx(&self, seed: u64) -> Result<ScalarContext> {
        ScalarContext::new(self.q.clone(), seed)
    }

    fn ranks(&self) -> std::ops::RangeInclusive<usize> {
        2..=self.n.max(2)
    }
}

/// A named identity family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    YangBaxter,
    Unitarity,
    Rll,
    Twist,
    Gauss,
    Admissible,
    RatY,
    GenSer,
    PoSim,
    Exa3,
    MethodAgreement,
    Coincidence,
    Coproduct,
    Qsymmetry,
    Generator,
    TvOriginal,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Suite::YangBaxter,
        Suite::Unitarity,
        Suite::Rll,
        Suite::Twist,
        Suite::Gauss,
        Suite::Admissible,
        Suite::RatY,
        Suite::GenSer,
        Suite::PoSim,
        Suite::Exa3,
        Suite::MethodAgreement,
        Suite::Coincidence,
        Suite::Coproduct,
        Suite::Qsymmetry,
        Suite::Generator,
        Suite::TvOriginal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::YangBaxter => "yang-baxter",
            Suite::Unitarity => "unitarity",
            Suite::Rll => "rll",
            Suite::Twist => "twist",
            Suite::Gauss => "gauss",
            Suite::Admissible => "admissible",
            Suite::RatY => "rat-y",
            Suite::GenSer => "gen-ser",
            Suite::PoSim => "po-sim",
            Suite::Exa3 => "exa3",
            Suite::MethodAgreement => "method-agreement",
            Suite::Coincidence => "coincidence",
            Suite::Coproduct => "coproduct",
            Suite::Qsymmetry => "qsymmetry",
            Suite::Generator => "generator",
            Suite::TvOriginal => "tv-original",
        }
    }

    /// Exploratory suites are reported but never fail a run.
    pub fn gated(self) -> bool {
        self != Suite::TvOriginal
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub seed: u64,
    pub inputs: Value,
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub gated: bool,
    pub q: Rational,
    pub seeds: Vec<u64>,
    pub checks: usize,
    pub failures: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteReport>,
    /// All gated suites passed.
    pub passed: bool,
}

impl VerifyReport {
    /// Pretty JSON; identical configurations give identical bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn error_json(e: &Error) -> Value {
    json!({ "error": e.kind(), "message": e.to_string() })
}

/// Running count of checks and the first counterexample.
#[derive(Default)]
pub(crate) struct Tally {
    checks: usize,
    failures: usize,
    first: Option<Counterexample>,
}

impl Tally {
    fn fail(&mut self, check: &str, seed: u64, inputs: Value, lhs: Value, rhs: Value) {
        self.failures += 1;
        if self.first.is_none() {
            self.first = Some(Counterexample { check: check.to_string(), seed, inputs, lhs, rhs });
        }
    }

    /// Exact comparison of two computed sides.
    pub(crate) fn compare<T: PartialEq + Serialize>(
        &mut self,
        check: &str,
        seed: u64,
        inputs: Value,
        lhs: Result<T>,
        rhs: Result<T>,
    ) {
        self.checks += 1;
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => {
                let side = |r: Result<T>| match r {
                    Ok(x) => serde_json::to_value(x).expect("value serializes"),
                    Err(e) => error_json(&e),
                };
                self.fail(check, seed, inputs, side(a), side(b));
            }
        }
    }

    /// Exact operator comparison; a mismatch records the first differing entries.
    pub(crate) fn compare_operators(
        &mut self,
        check: &str,
        seed: u64,
        inputs: Value,
        lhs: Result<Operator>,
        rhs: Result<Operator>,
    ) {
        self.checks += 1;
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => {
                let (da, db) = (a.to_dense(), b.to_dense());
                let diff: Vec<(usize, usize)> = (0..a.dim())
                    .flat_map(|i| (0..a.dim()).map(move |j| (i, j)))
                    .filter(|&(i, j)| da[i][j] != db[i][j])
                    .collect();
                let side = |d: &[Vec<Rational>]| {
                    json!({
                        "differing_entries": diff.len(),
                        "entries": diff.iter().take(DIFF_SHOWN).map(|&(i, j)| json!([i, j, d[i][j]])).collect::<Vec<_>>(),
                    })
                };
                self.fail(check, seed, inputs, side(&da), side(&db));
            }
            (a, b) => {
                let side = |r: Result<Operator>| match r {
                    Ok(x) => json!({ "dim": x.dim() }),
                    Err(e) => error_json(&e),
                };
                self.fail(check, seed, inputs, side(a), side(b));
            }
        }
    }

    /// A check that only reports whether the identity held.
    pub(crate) fn truth(&mut self, check: &str, seed: u64, inputs: Value, outcome: Result<bool>) {
        self.checks += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.fail(check, seed, inputs, json!("identity fails"), json!("expected to hold")),
            Err(e) => self.fail(check, seed, inputs, error_json(&e), json!("expected to hold")),
        }
    }
}

/// Deterministic stream id for a labelled sample.
pub(crate) fn stream(tag: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(tag.wrapping_mul(0x9e37_79b9), |acc, &p| acc.wrapping_mul(1_000_003).wrapping_add(p + 1))
}

/// Every `n` of length `k` with `|n| <= max`, lexicographic.
pub(crate) fn compositions(k: usize, max: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=max {
        for mut rest in compositions(k - 1, max - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Most vector factors kept under the desk-scale dimension bound of 81.
pub(crate) fn factor_cap(n: usize) -> usize {
    match n {
        2 => 6,
        3 => 4,
        _ => 3,
    }
}

/// Tensor product of `m` vector evaluation modules at sampled points.
pub(crate) fn vector_tensor(
    ctx: &ScalarContext,
    n: usize,
    variant: Variant,
    m: usize,
    stream_id: u64,
) -> Result<Arc<Module>> {
    let zs = ctx.sample_generic_stream(m, &[], stream_id);
    let parts: Vec<String> = zs.iter().map(|z| format!("vec@{z}")).collect();
    let recipe = if m == 1 { parts[0].clone() } else { format!("tensor({})", parts.join(",")) };
    build_module(ctx, n, variant, &recipe)
}

/// Number of vector factors for excitation counts `n`: enough for the longest type, at least two.
pub(crate) fn factors_for(n_rank: usize, counts: &[usize]) -> usize {
    counts.iter().copied().max().unwrap_or(0).max(2).min(factor_cap(n_rank))
}

/// Run one suite.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let mut tally = Tally::default();
    let outcome = match suite {
        Suite::YangBaxter => algebra::yang_baxter(cfg, &mut tally),
        Suite::Unitarity => algebra::unitarity(cfg, &mut tally),
        Suite::Rll => algebra::rll(cfg, &mut tally),
        Suite::Twist => algebra::twist(cfg, &mut tally),
        Suite::Gauss => algebra::gauss(cfg, &mut tally),
        Suite::Admissible => combinatorics::admissible(cfg, &mut tally),
        Suite::RatY => combinatorics::rat_y(cfg, &mut tally),
        Suite::GenSer => combinatorics::gen_ser(cfg, &mut tally),
        Suite::PoSim => combinatorics::po_sim(cfg, &mut tally),
        Suite::Exa3 => combinatorics::exa3(cfg, &mut tally),
        Suite::MethodAgreement => weights::method_agreement(cfg, &mut tally),
        Suite::Coincidence => weights::coincidence(cfg, &mut tally),
        Suite::Coproduct => weights::coproduct(cfg, &mut tally),
        Suite::Qsymmetry => weights::qsymmetry(cfg, &mut tally),
        Suite::Generator => weights::generator(cfg, &mut tally),
        Suite::TvOriginal => weights::tv_original(cfg, &mut tally),
    };
    if let Err(e) = outcome {
        tally.checks += 1;
        tally.fail("setup", cfg.seeds.first().copied().unwrap_or(0), json!(suite.name()), error_json(&e), Value::Null);
    }
    SuiteReport {
        suite: suite.name().to_string(),
        gated: suite.gated(),
        q: cfg.q.clone(),
        seeds: cfg.seeds.clone(),
        checks: tally.checks,
        failures: tally.failures,
        passed: tally.failures == 0,
        counterexample: tally.first,
    }
}

/// Run several suites concurrently; the report keeps the given order.
pub fn run_suites(suites: &[Suite], cfg: &VerifyConfig) -> VerifyReport {
    let reports: Vec<SuiteReport> = suites.par_iter().map(|&s| run_suite(s, cfg)).collect();
    let passed = reports.iter().all(|r| r.passed || !r.gated);
    VerifyReport { config: cfg.clone(), suites: reports, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_listing() {
        assert_eq!(compositions(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert_eq!(compositions(3, 4).len(), 35);
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        for f in Fault::ALL {
            assert_eq!(f.tag().parse::<Fault>().unwrap(), f);
        }
    }
}
