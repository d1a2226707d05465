//! Deliberately corrupted constructions must be caught by the suites.

use qbethe::suites::{run_suite, Fault, Suite, VerifyConfig};

fn faulty(fault: Fault) -> VerifyConfig {
    let mut cfg = VerifyConfig::new(3, 1, vec![5]);
    cfg.samples = 3;
    cfg.fault = Some(fault);
    cfg
}

fn assert_caught(suite: Suite, fault: Fault) {
    let report = run_suite(suite, &faulty(fault));
    assert!(!report.passed, "{suite} passed with fault {}", fault.tag());
    let cx = report.counterexample.expect("counterexample recorded");
    assert_eq!(cx.seed, 5);
    assert!(!cx.inputs.is_null());
}

#[test]
fn corrupted_r_entry_breaks_yang_baxter() {
    assert_caught(Suite::YangBaxter, Fault::REntry);
}

#[test]
fn corrupted_r_entry_breaks_unitarity() {
    assert_caught(Suite::Unitarity, Fault::REntry);
}

#[test]
fn corrupted_zero_mode_breaks_twist_relation() {
    assert_caught(Suite::Twist, Fault::L0Plus);
}

#[test]
fn rotated_basis_breaks_the_module_self_check() {
    assert_caught(Suite::Rll, Fault::RotatedBasis);
}

#[test]
fn clean_runs_pass() {
    let mut cfg = VerifyConfig::new(3, 1, vec![5]);
    cfg.samples = 3;
    for suite in [Suite::YangBaxter, Suite::Unitarity, Suite::Twist, Suite::Rll] {
        let report = run_suite(suite, &cfg);
        assert!(report.passed && report.checks > 0, "{suite}");
        assert!(report.counterexample.is_none());
    }
}
