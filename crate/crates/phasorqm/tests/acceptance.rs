//! The acceptance suite: every criterion runs at its pinned tolerance and
//! prints one pass/fail line. `phasorqm verify` runs the same checks.

#[test]
fn acceptance_criteria() {
    let results = phasorqm::verify::run_all();
    print!("{}", phasorqm::verify::render_lines(&results));
    assert_eq!(results.len(), 9);
    let mut failures = Vec::new();
    for r in &results {
        if !r.passed {
            failures.push(format!("criterion {} ({}): {}", r.id, r.name, r.details));
        }
    }
    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
