use membrane_core::suites::{registry, SuiteConfig};

#[test]
fn every_suite_passes_at_the_default_configuration() {
    let cfg = SuiteConfig::default();
    let mut failed = Vec::new();
    for suite in registry() {
        let report = suite.run(&cfg).unwrap_or_else(|e| panic!("{}: {e}", suite.name));
        for c in &report.checks {
            println!("{:<24} {:<60} {:.3e} <= {:.1e}", suite.name, c.label, c.value, c.tolerance);
        }
        if !report.pass() {
            failed.push(suite.name);
        }
    }
    assert!(failed.is_empty(), "failed suites: {failed:?}");
}
