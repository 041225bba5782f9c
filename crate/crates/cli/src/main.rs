//! Batch command-line front end for the entropy-shift anomaly detection
//! pipeline.
//!
//! Every subcommand prints a single JSON summary to stdout and writes any
//! artifact files named by `--output`. Runs are fully deterministic given
//! `--seed`. Exit codes: 0 success, 1 usage error, 2 data error.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use entrodetect::{
    calibrate, estimator_report, gaussian_entropy_closed_form, generate_gaussian,
    inject_anomalies, preprocess_detrend, qq_gaussian, read_series, roc, score, shannon_entropy,
    renyi_entropy, split, window_scores, AnomalySpec, Baseline, DetectorConfig, PointSet, Report,
    ReportFormat, SplitMode, TraceFile,
};
use entrodetect::ingest::{json_real, real_from_json};
use serde_json::{json, Map, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "entrodetect",
    version,
    about = "k-NN entropy estimation and windowed entropy-shift anomaly detection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded Gaussian test signal, optionally with injected offsets
    Simulate(SimulateArgs),
    /// Estimate Shannon (and optionally Renyi) entropy of a series
    Estimate(EstimateArgs),
    /// Calibrate baseline window-entropy thresholds on clean data
    Calibrate(CalibrateArgs),
    /// Score windows of a series against a calibrated baseline
    Detect(DetectArgs),
    /// Injection experiment: window scores vs known anomalies, ROC/AUC
    Roc(RocArgs),
    /// Gaussian Q-Q plot data for a series
    Qq(QqArgs),
    /// Repeated-trial estimator accuracy report vs the Gaussian closed form
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DelimiterArg {
    Comma,
    Whitespace,
    Tab,
}

impl From<DelimiterArg> for entrodetect::Delimiter {
    fn from(d: DelimiterArg) -> Self {
        match d {
            DelimiterArg::Comma => Self::Comma,
            DelimiterArg::Whitespace => Self::Whitespace,
            DelimiterArg::Tab => Self::Tab,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Self::Json,
            FormatArg::Csv => Self::Csv,
        }
    }
}

/// Where the series comes from: a trace file or a seeded simulation.
#[derive(Args)]
struct InputArgs {
    /// Delimited text file to read the series from
    #[arg(long, conflicts_with = "simulate_gaussian")]
    input: Option<PathBuf>,

    /// Cell separator of the input file
    #[arg(long, value_enum, default_value = "whitespace")]
    delimiter: DelimiterArg,

    /// 0-based column holding the values
    #[arg(long, default_value_t = 0)]
    column: usize,

    /// Header rows to skip at the top of the input file
    #[arg(long, default_value_t = 0)]
    header_rows: usize,

    /// Generate this many N(mean, variance) samples instead of reading a file
    #[arg(long, value_name = "N")]
    simulate_gaussian: Option<usize>,

    /// Mean of the simulated signal
    #[arg(long, default_value_t = 0.0)]
    mean: f64,

    /// Variance of the simulated signal
    #[arg(long, default_value_t = 4.0)]
    variance: f64,

    /// Seed for the simulated signal
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Add the strided +-10 offset pattern to the series and track labels
    #[arg(long)]
    inject_offsets: bool,

    /// Subtract a centered moving median of this (odd) width first
    #[arg(long)]
    detrend_window: Option<usize>,
}

struct LoadedSeries {
    series: PointSet,
    labels: Option<Vec<bool>>,
    meta: Map<String, Value>,
}

enum CliError {
    Usage(String),
    Data(entrodetect::Error),
}

impl From<entrodetect::Error> for CliError {
    fn from(e: entrodetect::Error) -> Self {
        CliError::Data(e)
    }
}

type CliResult<T> = Result<T, CliError>;

impl InputArgs {
    fn load(&self) -> CliResult<LoadedSeries> {
        let mut meta = Map::new();
        let mut series = match (&self.input, self.simulate_gaussian) {
            (Some(path), None) => {
                meta.insert("input".into(), json!(path.display().to_string()));
                let spec = TraceFile::new(path)
                    .with_delimiter(self.delimiter.into())
                    .with_column(self.column)
                    .with_header_rows(self.header_rows);
                read_series(&spec)?
            }
            (None, Some(n)) => {
                meta.insert("simulated_n".into(), json!(n));
                meta.insert("mean".into(), json!(self.mean));
                meta.insert("variance".into(), json!(self.variance));
                meta.insert("seed".into(), json!(self.seed));
                generate_gaussian(n, self.mean, self.variance, self.seed)?
            }
            _ => {
                return Err(CliError::Usage(
                    "exactly one of --input or --simulate-gaussian is required".into(),
                ))
            }
        };
        let labels = if self.inject_offsets {
            let spec = AnomalySpec::strided_offsets(series.len())?;
            let (injected, labels) = inject_anomalies(&series, &spec)?;
            let ones: Vec<usize> = spec.offsets().iter().map(|&(i, _)| i + 1).collect();
            meta.insert("injected_indices".into(), json!(ones));
            series = injected;
            Some(labels)
        } else {
            None
        };
        if let Some(w) = self.detrend_window {
            series = preprocess_detrend(&series, w)?;
            meta.insert("detrend_window".into(), json!(w));
        }
        meta.insert("n".into(), json!(series.len()));
        Ok(LoadedSeries {
            series,
            labels,
            meta,
        })
    }
}

#[derive(Args)]
struct SimulateArgs {
    /// Number of samples
    #[arg(long)]
    n: usize,

    #[arg(long, default_value_t = 0.0)]
    mean: f64,

    #[arg(long, default_value_t = 4.0)]
    variance: f64,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Add the strided +-10 offset pattern and label the touched samples
    #[arg(long)]
    inject_offsets: bool,

    /// Write the series as CSV (columns value,anomaly)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Number of nearest neighbors
    #[arg(long, default_value_t = entrodetect::DEFAULT_K)]
    k: usize,

    /// Fraction of samples used as the estimation (reference) part
    #[arg(long, default_value_t = entrodetect::DEFAULT_SPLIT_FRACTION)]
    split: f64,

    /// Shuffle with this seed before splitting instead of splitting sequentially
    #[arg(long)]
    shuffle_seed: Option<u64>,

    /// Also estimate the Renyi entropy of this order (in (0,1))
    #[arg(long)]
    alpha: Option<f64>,

    /// Write per-evaluation-point density plot data (1-D, sequential split):
    /// columns x, split_density, full_density, fitted_gaussian_pdf
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DetectorArgs {
    #[arg(long, default_value_t = entrodetect::DEFAULT_K)]
    k: usize,

    #[arg(long, default_value_t = entrodetect::DEFAULT_SPLIT_FRACTION)]
    split: f64,

    #[arg(long, default_value_t = 1000)]
    window_len: usize,

    #[arg(long, default_value_t = 500)]
    stride: usize,

    /// Coverage of the calibration quantile band
    #[arg(long, default_value_t = 0.95)]
    confidence: f64,

    /// Flag only unusually high entropies instead of both tails
    #[arg(long)]
    one_sided: bool,
}

impl DetectorArgs {
    fn to_config(&self) -> DetectorConfig {
        DetectorConfig {
            k: self.k,
            split_fraction: self.split,
            window_len: self.window_len,
            stride: self.stride,
            confidence: self.confidence,
            two_sided: !self.one_sided,
        }
    }
}

#[derive(Args)]
struct CalibrateArgs {
    #[command(flatten)]
    input: InputArgs,

    #[command(flatten)]
    detector: DetectorArgs,

    /// Baseline artifact to write (JSON)
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Baseline artifact produced by `calibrate`
    #[arg(long)]
    baseline: PathBuf,

    /// Detection report artifact to write
    #[arg(long)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct RocArgs {
    /// Samples per repetition
    #[arg(long, default_value_t = 10_000)]
    n: usize,

    #[arg(long, default_value_t = 4.0)]
    variance: f64,

    #[arg(long, default_value_t = 20)]
    repetitions: usize,

    #[command(flatten)]
    detector: DetectorArgs,

    /// Base seed; repetition r uses seed + r
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// ROC curve artifact pooled over all repetitions
    #[arg(long)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct QqArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Q-Q points artifact to write
    #[arg(long)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, default_value_t = 50)]
    trials: usize,

    #[arg(long, default_value_t = 10_000)]
    n: usize,

    #[arg(long, default_value_t = entrodetect::DEFAULT_K)]
    k: usize,

    #[arg(long, default_value_t = entrodetect::DEFAULT_SPLIT_FRACTION)]
    split: f64,

    #[arg(long, default_value_t = 4.0)]
    variance: f64,

    /// Base seed; trial t uses seed + t
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Per-trial rows artifact to write
    #[arg(long)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Simulate(args) => run_simulate(args),
        Command::Estimate(args) => run_estimate(args),
        Command::Calibrate(args) => run_calibrate(args),
        Command::Detect(args) => run_detect(args),
        Command::Roc(args) => run_roc(args),
        Command::Qq(args) => run_qq(args),
        Command::Report(args) => run_report(args),
    };
    match result {
        Ok(summary) => {
            println!("{}", Value::Object(summary));
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run_simulate(args: SimulateArgs) -> CliResult<Map<String, Value>> {
    let series = generate_gaussian(args.n, args.mean, args.variance, args.seed)?;
    let (series, labels) = if args.inject_offsets {
        let spec = AnomalySpec::strided_offsets(series.len())?;
        let (injected, labels) = inject_anomalies(&series, &spec)?;
        (injected, labels)
    } else {
        let len = series.len();
        (series, vec![false; len])
    };
    let values = series.scalars()?;
    let sample_mean = values.iter().sum::<f64>() / values.len() as f64;
    let sample_variance = if values.len() > 1 {
        values
            .iter()
            .map(|v| (v - sample_mean) * (v - sample_mean))
            .sum::<f64>()
            / (values.len() - 1) as f64
    } else {
        0.0
    };
    if let Some(path) = &args.output {
        let mut text = String::from("value,anomaly\n");
        for (v, l) in values.iter().zip(&labels) {
            text.push_str(&format!("{},{}\n", entrodetect::ingest::fmt_real(*v), l));
        }
        std::fs::write(path, text).map_err(entrodetect::Error::Io)?;
    }
    let injected: Vec<usize> = labels
        .iter()
        .enumerate()
        .filter(|(_, &l)| l)
        .map(|(i, _)| i + 1)
        .collect();
    let mut out = Map::new();
    out.insert("command".into(), json!("simulate"));
    out.insert("n".into(), json!(args.n));
    out.insert("mean".into(), json!(args.mean));
    out.insert("variance".into(), json!(args.variance));
    out.insert("seed".into(), json!(args.seed));
    out.insert("sample_mean".into(), json!(sample_mean));
    out.insert("sample_variance".into(), json!(sample_variance));
    out.insert("injected_indices".into(), json!(injected));
    out.insert("output".into(), path_json(args.output.as_deref()));
    Ok(out)
}

fn run_estimate(args: EstimateArgs) -> CliResult<Map<String, Value>> {
    let loaded = args.input.load()?;
    let mode = match args.shuffle_seed {
        Some(seed) => SplitMode::Shuffled { seed },
        None => SplitMode::Sequential,
    };
    let parts = split(&loaded.series, args.split, mode)?;
    let shannon = shannon_entropy(&parts, args.k)?;
    let mut out = loaded.meta;
    out.insert("command".into(), json!("estimate"));
    out.insert("k".into(), json!(args.k));
    out.insert("split_fraction".into(), json!(args.split));
    out.insert("m_estimation".into(), json!(parts.estimation_part().len()));
    out.insert("n_evaluation".into(), json!(parts.evaluation_part().len()));
    out.insert("raw_entropy".into(), json!(shannon.raw_functional));
    out.insert("corrected_entropy".into(), json!(shannon.corrected));
    out.insert("correction_term".into(), json!(shannon.correction_term));
    if args.input.simulate_gaussian.is_some() && !args.input.inject_offsets {
        let oracle = gaussian_entropy_closed_form(args.input.variance)?;
        out.insert("oracle_entropy".into(), json!(oracle));
    }
    if let Some(alpha) = args.alpha {
        let renyi = renyi_entropy(&parts, args.k, alpha)?;
        out.insert("alpha".into(), json!(alpha));
        out.insert("renyi_raw".into(), json!(renyi.raw_functional));
        out.insert("renyi_corrected".into(), json!(renyi.corrected));
    }
    if let Some(path) = &args.output {
        if args.shuffle_seed.is_some() {
            return Err(CliError::Usage(
                "density plot data needs a sequential split; drop --shuffle-seed".into(),
            ));
        }
        write_density_table(&loaded.series, args.k, args.split, path)?;
    }
    out.insert("output".into(), path_json(args.output.as_deref()));
    Ok(out)
}

/// Density plot data at the evaluation points of a sequential split:
/// the data-split estimate, the full-dataset estimate at the same points,
/// and a Gaussian pdf fitted to the whole series, sorted by x.
fn write_density_table(series: &PointSet, k: usize, fraction: f64, path: &Path) -> CliResult<()> {
    let values = series.scalars()?;
    let parts = split(series, fraction, SplitMode::Sequential)?;
    let split_density =
        entrodetect::density_split(parts.evaluation_part(), parts.estimation_part(), k)?;
    let full_density = entrodetect::density_full(series, k)?;
    let m = parts.estimation_part().len();

    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
        / (values.len() - 1) as f64;
    let pdf = |x: f64| {
        (-(x - mean) * (x - mean) / (2.0 * var)).exp()
            / (2.0 * std::f64::consts::PI * var).sqrt()
    };

    let mut rows: Vec<(f64, f64, f64, f64)> = parts
        .evaluation_part()
        .scalars()?
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            (
                x,
                split_density.values()[i],
                full_density.values()[m + i],
                pdf(x),
            )
        })
        .collect();
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));

    use entrodetect::ingest::fmt_real;
    let mut text = String::from("x,split_density,full_density,fitted_gaussian_pdf\n");
    for (x, s, f, p) in rows {
        text.push_str(&format!(
            "{},{},{},{}\n",
            fmt_real(x),
            fmt_real(s),
            fmt_real(f),
            fmt_real(p)
        ));
    }
    std::fs::write(path, text).map_err(entrodetect::Error::Io)?;
    Ok(())
}

fn baseline_to_json(baseline: &Baseline, config: &DetectorConfig) -> Value {
    json!({
        "config": config,
        "center": baseline.center,
        "lower_threshold": json_real(baseline.lower_threshold),
        "upper_threshold": json_real(baseline.upper_threshold),
        "entropies": baseline.entropies,
    })
}

fn baseline_from_json(value: &Value) -> CliResult<(Baseline, DetectorConfig)> {
    let bad = |what: &str| {
        CliError::Data(entrodetect::Error::InvalidConfig(format!(
            "baseline artifact missing or malformed field: {what}"
        )))
    };
    let config: DetectorConfig =
        serde_json::from_value(value.get("config").cloned().ok_or_else(|| bad("config"))?)
            .map_err(|_| bad("config"))?;
    let entropies: Vec<f64> =
        serde_json::from_value(value.get("entropies").cloned().ok_or_else(|| bad("entropies"))?)
            .map_err(|_| bad("entropies"))?;
    let center = value
        .get("center")
        .and_then(real_from_json)
        .ok_or_else(|| bad("center"))?;
    let lower = value
        .get("lower_threshold")
        .and_then(real_from_json)
        .ok_or_else(|| bad("lower_threshold"))?;
    let upper = value
        .get("upper_threshold")
        .and_then(real_from_json)
        .ok_or_else(|| bad("upper_threshold"))?;
    Ok((
        Baseline {
            entropies,
            center,
            lower_threshold: lower,
            upper_threshold: upper,
        },
        config,
    ))
}

fn run_calibrate(args: CalibrateArgs) -> CliResult<Map<String, Value>> {
    let loaded = args.input.load()?;
    let config = args.detector.to_config();
    let baseline = calibrate(&loaded.series, &config)?;
    let text = serde_json::to_string_pretty(&baseline_to_json(&baseline, &config))
        .expect("baseline serializes");
    std::fs::write(&args.output, text + "\n").map_err(entrodetect::Error::Io)?;
    let mut out = loaded.meta;
    out.insert("command".into(), json!("calibrate"));
    out.insert("windows".into(), json!(baseline.entropies.len()));
    out.insert("center".into(), json!(baseline.center));
    out.insert("lower_threshold".into(), json_real(baseline.lower_threshold));
    out.insert("upper_threshold".into(), json_real(baseline.upper_threshold));
    out.insert("config".into(), json!(config));
    out.insert("output".into(), path_json(Some(&args.output)));
    Ok(out)
}

fn run_detect(args: DetectArgs) -> CliResult<Map<String, Value>> {
    let loaded = args.input.load()?;
    let text = std::fs::read_to_string(&args.baseline).map_err(|e| {
        if e.kind() == std::io::ErrorKind::NotFound {
            entrodetect::Error::FileNotFound(args.baseline.display().to_string())
        } else {
            entrodetect::Error::Io(e)
        }
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        entrodetect::Error::InvalidConfig(format!("baseline artifact is not valid JSON: {e}"))
    })?;
    let (baseline, config) = baseline_from_json(&value)?;
    let report = score(&loaded.series, &baseline, &config, loaded.labels.as_deref())?;
    if let Some(path) = &args.output {
        entrodetect::write_report(Report::Detection(&report), args.format.into(), path)?;
    }
    let flagged = report.flags.iter().filter(|&&f| f).count();
    let mut out = loaded.meta;
    out.insert("command".into(), json!("detect"));
    out.insert("windows".into(), json!(report.window_starts.len()));
    out.insert("flagged".into(), json!(flagged));
    out.insert(
        "flag_rate".into(),
        json!(flagged as f64 / report.window_starts.len() as f64),
    );
    out.insert("lower_threshold".into(), json_real(report.threshold_used.0));
    out.insert("upper_threshold".into(), json_real(report.threshold_used.1));
    out.insert(
        "confusion".into(),
        report
            .confusion
            .map(|c| serde_json::to_value(c).expect("confusion serializes"))
            .unwrap_or(Value::Null),
    );
    out.insert("output".into(), path_json(args.output.as_deref()));
    Ok(out)
}

fn run_roc(args: RocArgs) -> CliResult<Map<String, Value>> {
    if args.repetitions == 0 {
        return Err(CliError::Usage("--repetitions must be >= 1".into()));
    }
    let config = args.detector.to_config();
    let mut pooled_scores = Vec::new();
    let mut pooled_truths = Vec::new();
    let mut aucs = Vec::with_capacity(args.repetitions);
    let mut true_windows = 0usize;
    for rep in 0..args.repetitions {
        let clean = generate_gaussian(args.n, 0.0, args.variance, args.seed + rep as u64)?;
        let spec = AnomalySpec::strided_offsets(clean.len())?;
        let (injected, labels) = inject_anomalies(&clean, &spec)?;
        let scored = window_scores(&injected, &config)?;
        let mut scores = Vec::with_capacity(scored.len());
        let mut truths = Vec::with_capacity(scored.len());
        for (start, h) in scored {
            scores.push(h);
            truths.push(labels[start..start + config.window_len].iter().any(|&b| b));
        }
        true_windows += truths.iter().filter(|&&t| t).count();
        aucs.push(roc(&scores, &truths)?.auc);
        pooled_scores.extend(scores);
        pooled_truths.extend(truths);
    }
    let pooled = roc(&pooled_scores, &pooled_truths)?;
    if let Some(path) = &args.output {
        entrodetect::write_report(Report::Roc(&pooled), args.format.into(), path)?;
    }
    let mean = aucs.iter().sum::<f64>() / aucs.len() as f64;
    let min = aucs.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = aucs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut out = Map::new();
    out.insert("command".into(), json!("roc"));
    out.insert("n".into(), json!(args.n));
    out.insert("variance".into(), json!(args.variance));
    out.insert("repetitions".into(), json!(args.repetitions));
    out.insert("seed".into(), json!(args.seed));
    out.insert("config".into(), json!(config));
    out.insert("windows_total".into(), json!(pooled_truths.len()));
    out.insert("true_windows_total".into(), json!(true_windows));
    out.insert("auc_mean".into(), json!(mean));
    out.insert("auc_min".into(), json!(min));
    out.insert("auc_max".into(), json!(max));
    out.insert("auc_pooled".into(), json!(pooled.auc));
    out.insert("output".into(), path_json(args.output.as_deref()));
    Ok(out)
}

fn run_qq(args: QqArgs) -> CliResult<Map<String, Value>> {
    let loaded = args.input.load()?;
    let qq = qq_gaussian(loaded.series.scalars()?)?;
    if let Some(path) = &args.output {
        entrodetect::write_report(Report::Qq(&qq), args.format.into(), path)?;
    }
    let max_residual = qq
        .points
        .iter()
        .map(|(t, s)| (t - s).abs())
        .fold(0.0, f64::max);
    let mut out = loaded.meta;
    out.insert("command".into(), json!("qq"));
    out.insert("points".into(), json!(qq.points.len()));
    out.insert("max_abs_residual".into(), json!(max_residual));
    out.insert("output".into(), path_json(args.output.as_deref()));
    Ok(out)
}

fn run_report(args: ReportArgs) -> CliResult<Map<String, Value>> {
    let report = estimator_report(
        args.trials,
        args.n,
        args.k,
        args.split,
        args.variance,
        args.seed,
    )?;
    if let Some(path) = &args.output {
        entrodetect::write_report(Report::Estimator(&report), args.format.into(), path)?;
    }
    let mut out = Map::new();
    out.insert("command".into(), json!("report"));
    out.insert("trials".into(), json!(args.trials));
    out.insert("n".into(), json!(args.n));
    out.insert("k".into(), json!(args.k));
    out.insert("split_fraction".into(), json!(args.split));
    out.insert("variance".into(), json!(args.variance));
    out.insert("seed".into(), json!(args.seed));
    out.insert("oracle".into(), json!(report.oracle));
    out.insert("mean_raw".into(), json!(report.mean_raw));
    out.insert("mean_corrected".into(), json!(report.mean_corrected));
    out.insert("std_corrected".into(), json!(report.std_corrected));
    out.insert("bias_raw".into(), json!(report.bias_raw));
    out.insert("bias_corrected".into(), json!(report.bias_corrected));
    out.insert("bias_model_value".into(), json!(report.bias_model_value));
    out.insert("output".into(), path_json(args.output.as_deref()));
    Ok(out)
}

fn path_json(path: Option<&Path>) -> Value {
    path.map(|p| json!(p.display().to_string()))
        .unwrap_or(Value::Null)
}
