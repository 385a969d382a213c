use ulrich_kit::verify::{run_criterion, TITLES};
use ulrich_core::DEFAULT_PRIME;

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for id in 1..=TITLES.len() {
        let c = run_criterion(id, DEFAULT_PRIME);
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {:>2}: {} ({})", c.id, c.title, c.detail);
        if !c.passed {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
