//! Acceptance criteria, one line per criterion. Every identity is checked by
//! exact rational equality; any failing check fails its criterion.

use std::process::ExitCode;
use std::time::Instant;

use qbethe::suites::{run_suites, Suite, VerifyConfig, VerifyReport};

const SEEDS: [u64; 3] = [11, 12, 13];

fn config(n: usize, max_excitations: usize) -> VerifyConfig {
    VerifyConfig::new(n, max_excitations, SEEDS.to_vec())
}

struct Criterion {
    id: u32,
    title: &'static str,
    suites: &'static [Suite],
    n: usize,
    max_excitations: usize,
}

const CRITERIA: [Criterion; 9] = [
    Criterion { id: 1, title: "R-matrix: Yang-Baxter and unitarity", suites: &[Suite::YangBaxter, Suite::Unitarity], n: 4, max_excitations: 0 },
    Criterion { id: 2, title: "representations: relations, RLL, twist", suites: &[Suite::Rll, Suite::Twist], n: 4, max_excitations: 0 },
    Criterion { id: 3, title: "Gauss decomposition and embedded RLL", suites: &[Suite::Gauss], n: 4, max_excitations: 0 },
    Criterion {
        id: 4,
        title: "combinatorics",
        suites: &[Suite::Admissible, Suite::RatY, Suite::GenSer, Suite::PoSim, Suite::Exa3],
        n: 4,
        max_excitations: 4,
    },
    Criterion { id: 5, title: "direct = recurrence", suites: &[Suite::MethodAgreement], n: 4, max_excitations: 4 },
    Criterion { id: 6, title: "direct = eta * trace (twisted)", suites: &[Suite::Coincidence], n: 3, max_excitations: 4 },
    Criterion { id: 7, title: "coproduct identity", suites: &[Suite::Coproduct], n: 3, max_excitations: 3 },
    Criterion { id: 8, title: "q-symmetry", suites: &[Suite::Qsymmetry], n: 3, max_excitations: 4 },
    Criterion { id: 9, title: "generator formula = L-entry formula", suites: &[Suite::Generator], n: 2, max_excitations: 3 },
];

fn summary(report: &VerifyReport) -> String {
    report
        .suites
        .iter()
        .map(|s| format!("{} {}/{}", s.suite, s.checks - s.failures, s.checks))
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() -> ExitCode {
    let mut all = true;
    for c in &CRITERIA {
        let start = Instant::now();
        let report = run_suites(c.suites, &config(c.n, c.max_excitations));
        let checked = report.suites.iter().all(|s| s.checks > 0);
        let ok = report.passed && checked;
        all &= ok;
        println!(
            "criterion {:>2} {}: {} [{}] {:.1}s",
            c.id,
            c.title,
            if ok { "PASS" } else { "FAIL" },
            summary(&report),
            start.elapsed().as_secs_f64()
        );
        if !ok {
            for s in report.suites.iter().filter(|s| !s.passed) {
                if let Some(cx) = &s.counterexample {
                    println!("    {}: {}", s.suite, serde_json::to_string(cx).expect("serializes"));
                }
            }
        }
    }

    let start = Instant::now();
    let suites = [Suite::YangBaxter, Suite::GenSer, Suite::MethodAgreement, Suite::Coincidence, Suite::Qsymmetry];
    let first = run_suites(&suites, &config(3, 2)).to_json();
    let second = run_suites(&suites, &config(3, 2)).to_json();
    let ok = first == second;
    all &= ok;
    println!(
        "criterion 10 determinism: {} [{} report bytes, identical={}] {:.1}s",
        if ok { "PASS" } else { "FAIL" },
        first.len(),
        ok,
        start.elapsed().as_secs_f64()
    );

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
