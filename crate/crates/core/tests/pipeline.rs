//! Cross-module pipeline: trace file -> detrend -> entropy, and
//! calibrate -> score -> artifact round trips.

use entrodetect::{
    calibrate, generate_gaussian, inject_anomalies, preprocess_detrend, read_series, score,
    shannon_entropy, split, AnomalySpec, Delimiter, DetectorConfig, Report, ReportFormat,
    SplitMode, TraceFile,
};

fn fixture_path() -> String {
    format!(
        "{}/../../data/sample_trace.csv",
        env!("CARGO_MANIFEST_DIR")
    )
}

#[test]
fn trace_file_to_entropy() {
    let spec = TraceFile::new(fixture_path())
        .with_delimiter(Delimiter::Comma)
        .with_column(1)
        .with_header_rows(1);
    let series = read_series(&spec).unwrap();
    assert_eq!(series.len(), 240);

    let detrended = preprocess_detrend(&series, 61).unwrap();
    assert_eq!(detrended.len(), series.len());

    let parts = split(&detrended, 0.6, SplitMode::Sequential).unwrap();
    let est = shannon_entropy(&parts, 8).unwrap();
    assert!(est.corrected.is_finite());
    assert_eq!(est.n_eval, 96);
}

#[test]
fn detection_report_artifacts_round_trip() {
    let config = DetectorConfig {
        window_len: 500,
        stride: 250,
        ..DetectorConfig::default()
    };
    let clean = generate_gaussian(30_000, 0.0, 4.0, 300).unwrap();
    let baseline = calibrate(&clean, &config).unwrap();

    let series = generate_gaussian(8_000, 0.0, 4.0, 301).unwrap();
    let spec = AnomalySpec::strided_offsets(series.len()).unwrap();
    let (injected, labels) = inject_anomalies(&series, &spec).unwrap();
    let report = score(&injected, &baseline, &config, Some(&labels)).unwrap();

    let dir = tempfile::tempdir().unwrap();

    // CSV: score column parses back bit-exactly
    let csv_path = dir.path().join("report.csv");
    entrodetect::write_report(Report::Detection(&report), ReportFormat::Csv, &csv_path).unwrap();
    let score_col = read_series(
        &TraceFile::new(&csv_path)
            .with_delimiter(Delimiter::Comma)
            .with_column(1)
            .with_header_rows(1),
    )
    .unwrap();
    for (read, orig) in score_col.scalars().unwrap().iter().zip(&report.scores) {
        assert_eq!(read.to_bits(), orig.to_bits());
    }

    // JSON: structure and 1-based starts
    let json_path = dir.path().join("report.json");
    entrodetect::write_report(Report::Detection(&report), ReportFormat::Json, &json_path).unwrap();
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let starts = value["window_starts"].as_array().unwrap();
    assert_eq!(starts.len(), report.window_starts.len());
    assert_eq!(starts[0].as_u64().unwrap(), 1);
    let confusion = &value["confusion"];
    let total = confusion["true_positives"].as_u64().unwrap()
        + confusion["false_positives"].as_u64().unwrap()
        + confusion["true_negatives"].as_u64().unwrap()
        + confusion["false_negatives"].as_u64().unwrap();
    assert_eq!(total as usize, report.window_starts.len());

    // identical inputs serialize to identical bytes
    let second = dir.path().join("report2.json");
    entrodetect::write_report(Report::Detection(&report), ReportFormat::Json, &second).unwrap();
    assert_eq!(
        std::fs::read(&json_path).unwrap(),
        std::fs::read(&second).unwrap()
    );
}
