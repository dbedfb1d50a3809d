use std::time::Instant;

use nilalb_core::corpus;
use nilalb_core::report::build_report;

#[test]
fn reports_reproduce_expected_values() {
    for name in corpus::list() {
        let ex = corpus::get(name).unwrap();
        let start = Instant::now();
        let report = build_report(&ex.fnm).unwrap();
        eprintln!("{name}: {:?}", start.elapsed());
        for (path, want) in &ex.expected {
            assert_eq!(report.lookup(path).as_deref(), Some(*want), "{name}: {path}");
        }
    }
}
