use treeaut::experiment::{collect_samples, summarize, write_csv, CSV_HEADER};
use treeaut::{run_clt_experiment, Error, Execution, ExperimentConfig, Family};

#[test]
fn csv_has_one_row_per_sample() {
    let config = ExperimentConfig::new(Family::PrunedBinary, vec![20, 40, 60], 25, 3);
    let records = collect_samples(&config).unwrap();
    let mut buf = Vec::new();
    write_csv(&config.family, &records, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines.len(), 1 + 3 * 25);
    assert!(lines[1].starts_with("pruned-binary,20,0,"));
    assert!(lines[75].starts_with("pruned-binary,60,24,"));
}

#[test]
fn output_does_not_depend_on_workers() {
    let mut config = ExperimentConfig::new(Family::LabeledUnrooted, vec![50, 80], 40, 11);
    config.execution = Execution::Sequential;
    let sequential = collect_samples(&config).unwrap();
    for workers in [1, 2, 5] {
        config.execution = Execution::Parallel;
        config.workers = Some(workers);
        assert_eq!(collect_samples(&config).unwrap(), sequential);
    }
}

#[test]
fn labeled_unrooted_audit_is_clean() {
    let config = ExperimentConfig::new(Family::LabeledUnrooted, vec![100, 200], 300, 5);
    let records = collect_samples(&config).unwrap();
    let report = summarize(&config.family, &records, None).unwrap();
    assert_eq!(report.audit.checked, 6);
    assert_eq!(report.audit.violations, 0);
}

#[test]
fn report_moments_and_slopes() {
    let config = ExperimentConfig::new(Family::PolyaRooted, vec![100, 200, 400], 400, 8);
    let report = run_clt_experiment(&config).unwrap();
    assert_eq!(report.sizes.len(), 3);
    for s in &report.sizes {
        assert!(s.moments.variance >= 0.0);
        assert_eq!(s.moments.count, 400);
    }
    let ad = report.normality.unwrap();
    assert!((0.0..=1.0).contains(&ad.p_value));
    // loose: 400 samples per size
    let slope = report.mean_slope.unwrap();
    assert!((slope.slope - 0.1373423).abs() < 5.0 * slope.slope_se + 0.01, "{slope:?}");
    assert_eq!(report.reference, Some((0.1373423, 0.1967696)));
}

#[test]
fn csv_file_is_written() {
    let dir = std::env::temp_dir().join(format!("treeaut-exp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("raw.csv");
    let mut config = ExperimentConfig::new(Family::Plane, vec![30], 10, 1);
    config.output = Some(path.clone());
    let report = run_clt_experiment(&config).unwrap();
    assert!(report.mean_slope.is_none());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 11);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn invalid_configs_are_rejected() {
    let config = ExperimentConfig::new(Family::FullBinary, vec![10], 5, 1);
    assert!(matches!(collect_samples(&config), Err(Error::Unattainable { n: 10, .. })));
    let config = ExperimentConfig::new(Family::PolyaRooted, vec![], 5, 1);
    assert!(collect_samples(&config).is_err());
    // every tree is a path when the weights are 1 + z
    assert!("custom:1,1".parse::<Family>().is_err());
}
