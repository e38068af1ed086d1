use eulercat_core::verify::{render_table, run_suite};

#[test]
fn bundled_suite_passes() {
    let results = run_suite();
    print!("{}", render_table(&results));
    assert!(results.iter().all(|r| r.passed), "{}", render_table(&results));
}
