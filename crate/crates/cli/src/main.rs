use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use greedy_circle::analysis::{
    figure_series, limit_point_check, normalized_series, theta_limit_prediction, verify_all,
    NormalizedSeries, SeriesKind,
};
use greedy_circle::binary::{
    g_landmark, g_upper_bound, lambda_lower_bound, search_g_extremes, search_lambda,
    theta_from_odd, Frontier, LAMBDA_LANDMARK,
};
use greedy_circle::sequences::{greedy_numerical, GreedyOptions, GreedyRun};
use greedy_circle::special::{limit_catalog_with, validate_euler_gamma};
use greedy_circle::{CirclePoint, Configuration, Error, RieszParameter};
use serde_json::json;
use thiserror::Error as ThisError;

#[derive(Parser, Debug)]
#[command(name = "greedy-circle", version, about = "Greedy Riesz energy sequences on the unit circle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a greedy sequence as CSV (n, angle_turns, extremal_value).
    Sequence(SequenceArgs),
    /// Emit the limit constants for one s as JSON.
    Constants(ConstantsArgs),
    /// Search the limit vectors, or check one against the sequence.
    Theta(ThetaArgs),
    /// Write the data behind one of the four figures, one CSV per s.
    Figure(FigureArgs),
    /// Run the identity and inequality checks; exit 1 on any failure.
    Verify(VerifyArgs),
    /// Emit one normalized series as CSV (N, value).
    Series(SeriesArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct SequenceArgs {
    /// Exact bit-reversal sequence from 1.
    #[arg(long, conflicts_with = "numerical")]
    structural: bool,
    /// Numerical greedy minimizer.
    #[arg(long)]
    numerical: bool,
    /// Number of points.
    #[arg(long, short)]
    n: usize,
    #[arg(long, short, default_value_t = 0.5)]
    s: f64,
    /// Initial angles in turns, comma separated (numerical only).
    #[arg(long, value_delimiter = ',', default_value = "0")]
    initial: Vec<f64>,
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    #[arg(long, default_value_t = 40)]
    refine_iters: usize,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    #[arg(long, short, default_value_t = 0.5)]
    s: f64,
    /// Odd denominators below 2^max_bits are searched for the liminf bracket.
    #[arg(long, default_value_t = 16)]
    max_bits: u32,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ThetaArgs {
    #[arg(long, short, default_value_t = 0.5)]
    s: f64,
    #[arg(long, default_value_t = 16)]
    max_bits: u32,
    /// Check the vector generated by this odd M instead of searching.
    #[arg(long)]
    odd: Option<u64>,
    /// Length of the vector generated by --odd (zero padded); defaults to τ_b(M).
    #[arg(long)]
    p: Option<usize>,
    /// Shift of the witness index 2^depth·M.
    #[arg(long, default_value_t = 12)]
    depth: u32,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FigureArgs {
    /// Figure number, 1 to 4.
    #[arg(long)]
    id: u32,
    /// Directory for the CSV files.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 2048)]
    n_max: u64,
    /// Exponents to check, comma separated.
    #[arg(long, short, value_delimiter = ',', default_values_t = vec![0.5, 1.0, 1.5, 2.0])]
    s: Vec<f64>,
    /// Restrict to subcritical exponents; any s outside (0, 1) is rejected.
    #[arg(long)]
    include_subcritical: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// One of r_subcritical, w_subcritical, w1_critical, t_critical,
    /// w_supercritical, log_ratio, second_order_1, extremal_subcritical,
    /// extremal_w1, extremal_supercritical.
    #[arg(long, short)]
    kind: String,
    #[arg(long, short, default_value_t = 0.5)]
    s: f64,
    #[arg(long, default_value_t = 2048)]
    n_max: u64,
    #[command(flatten)]
    out: Output,
}

#[derive(ThisError, Debug)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

type CliResult = Result<(), CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = validate_euler_gamma() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let result = match cli.command {
        Command::Sequence(a) => cmd_sequence(a),
        Command::Constants(a) => cmd_constants(a),
        Command::Theta(a) => cmd_theta(a),
        Command::Figure(a) => cmd_figure(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Series(a) => cmd_series(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json(path: Option<&Path>, value: &impl serde::Serialize) -> CliResult {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn parameter(s: f64) -> Result<RieszParameter, CliError> {
    Ok(RieszParameter::new(s)?)
}

fn cmd_sequence(a: SequenceArgs) -> CliResult {
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let s = parameter(a.s)?;
    let run = if a.numerical {
        let points = a
            .initial
            .iter()
            .map(|&x| CirclePoint::turn(x))
            .collect::<Result<Vec<_>, _>>()?;
        let initial = Configuration::new(points)?;
        let options = GreedyOptions {
            grid: a.grid,
            refine_iters: a.refine_iters,
            ..GreedyOptions::default()
        };
        greedy_numerical(&initial, s, a.n, options)?
    } else {
        GreedyRun::structural(a.n, s)?
    };
    let mut w = sink(a.out.output.as_deref())?;
    match a.out.format {
        Format::Csv => run.write_csv(&mut w)?,
        Format::Json => {
            let rows: Vec<_> = run
                .points
                .points()
                .iter()
                .enumerate()
                .map(|(n, p)| json!({"n": n, "angle_turns": p.turns(), "extremal_value": run.extremal_at(n)}))
                .collect();
            serde_json::to_writer_pretty(&mut w, &json!({"s": a.s, "rows": rows}))?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_constants(a: ConstantsArgs) -> CliResult {
    let frontier = Frontier::bits(a.max_bits).with_family_depth(60);
    let catalog = limit_catalog_with(a.s, &frontier)?;
    write_json(a.output.as_deref(), &catalog)
}

fn cmd_theta(a: ThetaArgs) -> CliResult {
    let frontier = Frontier::bits(a.max_bits).with_family_depth(60);
    let value = if let Some(m) = a.odd {
        let p = a.p.unwrap_or(m.count_ones() as usize);
        let theta = theta_from_odd(m, p)?;
        let check = limit_point_check(&theta, a.s, a.depth)?;
        json!({
            "s": a.s,
            "theta": theta.components(),
            "prediction": theta_limit_prediction(&theta, a.s)?,
            "check": check,
        })
    } else if a.s == 1.0 {
        let found = search_lambda(&frontier);
        json!({
            "s": a.s,
            "max_bits": a.max_bits,
            "lambda_inf_found": found.inf_found,
            "witness": found.witness.components(),
            "landmark": LAMBDA_LANDMARK,
            "lower_bound": lambda_lower_bound(),
        })
    } else {
        let found = search_g_extremes(a.s, &frontier)?;
        json!({
            "s": a.s,
            "max_bits": a.max_bits,
            "g_sup_found": found.sup_found,
            "g_inf_found": found.inf_found,
            "sup_witness": found.sup_witness.components(),
            "inf_witness": found.inf_witness.components(),
            "landmark": g_landmark(a.s),
            "upper_bound": if a.s < 1.0 { Some(g_upper_bound(a.s)) } else { None },
        })
    };
    write_json(a.output.as_deref(), &value)
}

fn write_series_csv(series: &NormalizedSeries, path: Option<&Path>) -> CliResult {
    let mut w = sink(path)?;
    series.write_csv(&mut w)?;
    w.flush()?;
    Ok(())
}

fn cmd_figure(a: FigureArgs) -> CliResult {
    let all = figure_series(a.id)?;
    std::fs::create_dir_all(&a.out_dir)?;
    for series in &all {
        let path = a.out_dir.join(format!("fig{}_s{}.csv", a.id, series.s));
        write_series_csv(series, Some(&path))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> CliResult {
    if a.include_subcritical {
        if let Some(bad) = a.s.iter().find(|&&s| !(s > 0.0 && s < 1.0)) {
            return Err(CliError::Usage(format!(
                "--include-subcritical needs 0 < s < 1, got {bad}"
            )));
        }
    }
    let report = verify_all(a.n_max, &a.s)?;
    write_json(a.output.as_deref(), &report)?;
    if report.passed {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(CliError::Failed(format!("failed checks: {}", names.join(", "))))
    }
}

fn cmd_series(a: SeriesArgs) -> CliResult {
    let kind = SeriesKind::parse(&a.kind)
        .ok_or_else(|| CliError::Usage(format!("unknown series kind {}", a.kind)))?;
    if a.n_max > greedy_circle::analysis::MAX_N {
        return Err(Error::Budget {
            requested: a.n_max,
            limit: greedy_circle::analysis::MAX_N,
        }
        .into());
    }
    let series = normalized_series(kind, a.s, a.n_max)?;
    match a.out.format {
        Format::Csv => write_series_csv(&series, a.out.output.as_deref()),
        Format::Json => write_json(a.out.output.as_deref(), &series),
    }
}
