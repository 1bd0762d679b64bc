//! Acceptance suite: every verification criterion at its pinned tolerance,
//! one pass/fail line per criterion.
//!
//! Run with `cargo test -p locclone --test acceptance -- --nocapture` to
//! see the summary lines.

use locclone::verify;

#[test]
fn acceptance_criteria() {
    let reports = verify::run_all(42);
    assert_eq!(reports.len(), 9);
    let mut failures = Vec::new();
    for report in &reports {
        println!("{}", report.summary_line());
        if !report.pass() {
            for check in &report.checks {
                if !check.pass() {
                    println!(
                        "    failed check {}: measured {:.9e}, expected {:.9e}, tol {:.1e}",
                        check.label, check.measured, check.expected, check.tol
                    );
                }
            }
            failures.push(report.id);
        }
    }
    assert!(failures.is_empty(), "criteria failed: {failures:?}");
}
