use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use polythresh::dist::{dual_point_prob, BetaLaw, BetaPrimeLaw, Law};
use polythresh::experiments::{
    count_from_ln, default_audit_grid, fmt_f64, parse_point_csv, parse_range, run_bounds_audit, run_sweep, write_csv,
    write_json, AuditGrid, SweepConfig, SweepRow, DEFAULT_MAX_POINTS, SCHEMA_VERSION,
};
use polythresh::montecarlo::{
    estimate_dual_content, estimate_inclusion_prob, estimate_mean_width_ratio, estimate_measure_content,
    estimate_point_membership, estimate_volume_ratio, DualRegion, InclusionMode, McConfig, MeasureSpec, OffsetMode,
    VertexLaw,
};
use polythresh::sampler::RngStream;
use polythresh::{Error, Result};

/// Worker-count override; results do not depend on it.
const THREADS_ENV: &str = "POLYTHRESH_THREADS";

#[derive(Parser)]
#[command(name = "polythresh", version, about = "Beta and beta-prime random polytopes: tails, sampling, Monte Carlo")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tail function (and optionally its analytic bounds) on a grid of distances.
    Tabulate(TabulateArgs),
    /// Raw points, one per line.
    Sample(SampleArgs),
    /// One Monte Carlo estimate.
    Estimate(EstimateArgs),
    /// Run a sweep described by a TOML file.
    Sweep(SweepArgs),
    /// Check every analytic bound against quadrature; exits 1 on any violation.
    Audit(AuditArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Beta,
    BetaPrime,
    Gaussian,
}

#[derive(Args)]
struct LawArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
}

impl LawArgs {
    fn beta(&self) -> Result<f64> {
        self.beta.ok_or_else(|| Error::Config("--beta is required for this model".into()))
    }

    fn vertex_law(&self) -> Result<VertexLaw> {
        Ok(match self.model {
            ModelArg::Beta => VertexLaw::Beta(BetaLaw::new(self.n, self.beta()?)?),
            ModelArg::BetaPrime => VertexLaw::BetaPrime(BetaPrimeLaw::new(self.n, self.beta()?, self.sigma)?),
            ModelArg::Gaussian => {
                if self.n == 0 {
                    return Err(Error::Domain("dimension must be >= 1".into()));
                }
                VertexLaw::Gaussian { n: self.n }
            }
        })
    }

    fn law(&self) -> Result<Law> {
        match self.vertex_law()? {
            VertexLaw::Beta(l) => Ok(l.into()),
            VertexLaw::BetaPrime(l) => Ok(l.into()),
            VertexLaw::Gaussian { .. } => Err(Error::Config("this command needs --model beta or beta-prime".into())),
        }
    }

    fn name(&self) -> &'static str {
        match self.model {
            ModelArg::Beta => "beta",
            ModelArg::BetaPrime => "beta_prime",
            ModelArg::Gaussian => "gaussian",
        }
    }

    fn sigma_field(&self) -> Option<f64> {
        matches!(self.model, ModelArg::BetaPrime).then_some(self.sigma)
    }
}

#[derive(Args)]
struct TabulateArgs {
    #[command(flatten)]
    law: LawArgs,
    /// Distances as `a:b:step`.
    #[arg(long)]
    d_grid: String,
    /// Add the analytic lower and upper bounds where they apply.
    #[arg(long)]
    bounds: bool,
    /// JSON to stdout instead of CSV.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    law: LawArgs,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Quantity {
    VolumeRatio,
    Content,
    Inclusion,
    Membership,
    MeanWidth,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Gaussian,
    BallIsotropic,
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long, value_enum)]
    quantity: Quantity,
    #[command(flatten)]
    law: LawArgs,
    #[arg(long = "N", conflicts_with = "ln_n")]
    n_points: Option<u64>,
    #[arg(long = "lnN")]
    ln_n: Option<f64>,
    #[arg(long, default_value_t = 200)]
    outer: usize,
    #[arg(long, default_value_t = 500)]
    inner: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "gaussian")]
    measure: MeasureArg,
    /// Inclusion radius, or the dual ball `R^{-1} B`.
    #[arg(long = "R")]
    r: Option<f64>,
    /// Query point as comma-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
    max_points: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output path; defaults to the config's `output_path`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON array instead of CSV.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AuditArgs {
    /// `default` or a TOML grid file.
    #[arg(long, default_value = "default")]
    grid: String,
    /// Write the full per-row report as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn open_out(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Serialize)]
struct TailRow {
    schema_version: u32,
    model: String,
    n: usize,
    beta: f64,
    sigma: Option<f64>,
    d: f64,
    tail: f64,
    log_tail: f64,
    bound_lower: Option<f64>,
    bound_upper: Option<f64>,
}

const TAIL_HEADER: [&str; 10] =
    ["schema_version", "model", "n", "beta", "sigma", "d", "tail", "log_tail", "bound_lower", "bound_upper"];

fn tabulate(a: &TabulateArgs) -> Result<()> {
    let law = a.law.law()?;
    let mut rows = Vec::new();
    for d in parse_range(&a.d_grid)? {
        let bounds = if a.bounds {
            match law {
                Law::Beta(l) => l.tail_bounds(d).ok(),
                Law::BetaPrime(l) => l.tail_bounds_sigma1(d).ok(),
            }
        } else {
            None
        };
        rows.push(TailRow {
            schema_version: SCHEMA_VERSION,
            model: a.law.name().into(),
            n: a.law.n,
            beta: law.beta(),
            sigma: a.law.sigma_field(),
            d,
            tail: law.tail(d)?,
            log_tail: law.log_tail(d)?,
            bound_lower: bounds.map(|b| b.lower),
            bound_upper: bounds.map(|b| b.upper),
        });
    }
    if a.json {
        let mut out = open_out(None)?;
        serde_json::to_writer_pretty(&mut out, &rows).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(out)?;
        return Ok(());
    }
    let mut w = csv::Writer::from_writer(open_out(a.csv.as_deref())?);
    w.write_record(TAIL_HEADER)?;
    let opt = |v: Option<f64>| v.map(fmt_f64).unwrap_or_default();
    for r in &rows {
        w.write_record([
            r.schema_version.to_string(),
            r.model.clone(),
            r.n.to_string(),
            fmt_f64(r.beta),
            opt(r.sigma),
            fmt_f64(r.d),
            fmt_f64(r.tail),
            fmt_f64(r.log_tail),
            opt(r.bound_lower),
            opt(r.bound_upper),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn sample(a: &SampleArgs) -> Result<()> {
    let law = a.law.vertex_law()?;
    let mut rng = RngStream::new(a.seed, 0);
    let mut out = open_out(Some(&a.out))?;
    let mut p = vec![0.0; law.dim()];
    for _ in 0..a.count {
        law.sample_into(&mut rng, &mut p);
        let line: Vec<String> = p.iter().map(|&v| fmt_f64(v)).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    out.flush()?;
    Ok(())
}

fn estimate(a: &EstimateArgs) -> Result<()> {
    let law = a.law.vertex_law()?;
    let n = law.dim();
    let count = match (a.n_points, a.ln_n) {
        (Some(c), None) => c,
        (None, Some(l)) => count_from_ln(l)?,
        _ => return Err(Error::Config("give exactly one of --N and --lnN".into())),
    };
    if count == 0 {
        return Err(Error::Config("--N must be positive".into()));
    }
    if count > a.max_points {
        return Err(Error::CapExceeded { what: "hull size", value: count as f64, cap: a.max_points as f64 });
    }
    let cfg = McConfig::new(a.outer, a.inner, a.seed)?;
    let measure = match a.measure {
        MeasureArg::Gaussian => MeasureSpec::GaussianStd,
        MeasureArg::BallIsotropic => MeasureSpec::UniformBallIsotropic,
    };
    let x = a.x.as_deref().map(parse_point_csv).transpose()?;
    let need_beta = || match law {
        VertexLaw::Beta(l) => Ok(l),
        _ => Err(Error::Config("this quantity needs --model beta".into())),
    };
    let mut reference = None;
    let (name, est) = match a.quantity {
        Quantity::VolumeRatio => ("volume_ratio", estimate_volume_ratio(&need_beta()?, count as usize, &cfg)?),
        Quantity::MeanWidth => ("mean_width_ratio", estimate_mean_width_ratio(&need_beta()?, count as usize, &cfg)?),
        Quantity::Content => ("content", estimate_measure_content(&law, count as usize, measure, &cfg)?),
        Quantity::Inclusion => {
            let r = a.r.ok_or_else(|| Error::Config("inclusion needs --R".into()))?;
            let mode = if n <= 2 { InclusionMode::Exact2D } else { InclusionMode::DirectionSampled };
            ("inclusion", estimate_inclusion_prob(&law, count as usize, r, mode, &cfg)?.estimate)
        }
        Quantity::Membership => {
            let x = x.as_deref().ok_or_else(|| Error::Config("membership needs --x".into()))?;
            ("membership", estimate_point_membership(&law, count as usize, x, &cfg)?)
        }
        Quantity::Dual => {
            let l = a.law.law()?;
            let offset = match l {
                Law::Beta(_) => OffsetMode::One,
                Law::BetaPrime(_) => OffsetMode::DimN,
            };
            let region = match (&x, a.r) {
                (Some(x), _) => {
                    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
                    reference = Some(dual_point_prob(&l, count, norm, offset.value(n))?);
                    DualRegion::Point { x: x.clone() }
                }
                (None, Some(r)) => DualRegion::ScaledBall { s: 1.0 / r },
                (None, None) => DualRegion::Measure { measure },
            };
            ("dual_content", estimate_dual_content(&law, count as usize, offset, &region, &cfg)?)
        }
    };
    let beta = match law {
        VertexLaw::Beta(l) => l.beta(),
        VertexLaw::BetaPrime(l) => l.beta(),
        VertexLaw::Gaussian { .. } => f64::NAN,
    };
    let mut row = SweepRow::new(a.law.name(), name, n, beta, count, &est);
    row.sigma = a.law.sigma_field();
    row.r = a.r;
    row.x_norm = x.as_ref().map(|x| x.iter().map(|v| v * v).sum::<f64>().sqrt());
    if matches!(a.quantity, Quantity::Content) || matches!((a.quantity, &x, a.r), (Quantity::Dual, None, None)) {
        row.measure = Some(measure.name().into());
    }
    if let Some(v) = reference {
        row.reference = Some(v);
        row.reference_kind = Some("closed_form".into());
    }
    let out = open_out(None)?;
    if a.json {
        write_json(&[row], out)
    } else {
        write_csv(&[row], out)
    }
}

fn sweep(a: &SweepArgs) -> Result<()> {
    let cfg = SweepConfig::from_path(&a.config)?;
    for w in cfg.validate()? {
        eprintln!("warning: {w}");
    }
    let rows = run_sweep(&cfg)?;
    let path = a.out.clone().or_else(|| cfg.output_path.as_ref().map(PathBuf::from));
    let out = open_out(path.as_deref())?;
    let violations = rows.iter().filter(|r| r.violation).count();
    if a.json {
        write_json(&rows, out)?;
    } else {
        write_csv(&rows, out)?;
    }
    eprintln!("{} rows, {} bound violations", rows.len(), violations);
    Ok(())
}

fn audit(a: &AuditArgs) -> Result<bool> {
    let grid = if a.grid == "default" { default_audit_grid() } else { AuditGrid::from_path(Path::new(&a.grid))? };
    let report = run_bounds_audit(&grid);
    if let Some(p) = &a.out {
        report.write_csv(BufWriter::new(File::create(p)?))?;
    }
    for r in report.rows.iter().filter(|r| r.outcome == polythresh::experiments::AuditOutcome::Violation) {
        eprintln!(
            "violation: {} n={:?} beta={:?} arg={} value={:?} [{:?}, {:?}] {}",
            r.check, r.n, r.beta, r.arg, r.value, r.lower, r.upper, r.note
        );
    }
    print!("{}", report.summary());
    Ok(report.is_clean())
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(Error::Config(format!("{THREADS_ENV} must be positive")));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Error::Config(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = configure_threads().and_then(|()| match &cli.command {
        Command::Tabulate(a) => tabulate(a).map(|()| true),
        Command::Sample(a) => sample(a).map(|()| true),
        Command::Estimate(a) => estimate(a).map(|()| true),
        Command::Sweep(a) => sweep(a).map(|()| true),
        Command::Audit(a) => audit(a),
    });
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
