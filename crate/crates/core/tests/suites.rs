use banach_bilinear::suites::{run_suite, RunConfig, SUITES};

fn cfg(seed: u64) -> RunConfig {
    RunConfig {
        seed,
        no_timestamp: true,
        ..RunConfig::default()
    }
}

fn report_json(name: &str, seed: u64) -> String {
    serde_json::to_string(&run_suite(name, &cfg(seed)).unwrap()).unwrap()
}

#[test]
fn reports_are_reproducible_and_thread_independent() {
    for name in ["paper-example", "operator-smooth", "smooth-product"] {
        let first = report_json(name, 3);
        let threads: Vec<_> = (0..3).map(|_| std::thread::spawn(move || report_json(name, 3))).collect();
        for h in threads {
            assert_eq!(h.join().unwrap(), first, "{name}");
        }
    }
}

#[test]
fn every_named_suite_runs_and_passes() {
    for name in SUITES.iter().filter(|n| **n != "all") {
        let reports = run_suite(name, &cfg(2)).unwrap();
        for r in &reports {
            assert!(r.passed(false), "{name}: {}", serde_json::to_string(r).unwrap());
        }
    }
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(run_suite("nope", &cfg(0)).is_err());
}
