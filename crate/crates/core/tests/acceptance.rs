//! Runs the seventeen acceptance criteria and prints one line per criterion.
//!
//! A criterion listed in `KNOWN_RED` is false as stated; it must keep
//! failing with a witness and is printed as FAIL.

use resalg::catalog::Catalog;
use resalg::suite::{paper_suite, Status, CHECKS};

/// The constant map onto 1 is a hoop homomorphism between any two simple
/// bounded hoops and does not send 0 to 0.
const KNOWN_RED: &[&str] = &["hoop-simple-mv"];

fn main() {
    let report = paper_suite(&Catalog::standard(), &[]);
    assert_eq!(report.checks.len(), CHECKS.len());
    for c in &report.checks {
        let note = if KNOWN_RED.contains(&c.name) {
            " [known red]"
        } else {
            ""
        };
        println!(
            "criterion {:>2} {:<26} {}{note} ({:.0} ms)",
            c.id, c.name, c.status, c.wall_ms
        );
        if let Some(w) = &c.witness {
            println!("    witness: {w}");
        }
    }
    let unexpected: Vec<String> = report
        .checks
        .iter()
        .filter(|c| (c.status == Status::Pass) == KNOWN_RED.contains(&c.name))
        .map(|c| format!("{} {}", c.name, c.status))
        .collect();
    let red_without_witness: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| KNOWN_RED.contains(&c.name))
        .filter(|c| !c.witness.as_deref().is_some_and(|w| w.contains("moves the bottom")))
        .map(|c| c.name)
        .collect();
    let ok = unexpected.is_empty() && red_without_witness.is_empty();
    println!(
        "acceptance: {} of {} criteria pass, {} known red: {}",
        report.checks.iter().filter(|c| c.status == Status::Pass).count(),
        report.checks.len(),
        KNOWN_RED.len(),
        if ok { "ok" } else { "FAILED" }
    );
    if !ok {
        eprintln!("unexpected outcomes: {unexpected:?}; known red without witness: {red_without_witness:?}");
        std::process::exit(1);
    }
}
