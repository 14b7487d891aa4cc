//! Subcommands: argument definitions and their execution.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lipcert_core::disk::comparison_ratio;
use lipcert_core::{
    disk_moment_estimate, extend_complex, greedy_maximal_separated, lipschitz_constant,
    mcshane_extend_real, star_modulus_table, verify_net, FiniteMetricSpace, Mode, Pipeline,
    SampledFunction,
};

use crate::error::{CliError, Result};
use crate::files::{
    csv_path, read_json, write_csv, write_json, CertificateCsvRow, CertificateRecord, FunctionFile,
    ModulusCsvRow, ModulusRecord, NetFile, SpaceFile,
};
use crate::generate::{self, SampleSpec, Shape};

#[derive(Debug, Parser)]
#[command(
    name = "lipcert",
    version,
    about = "Lipschitz extension, separated nets and certified Lipschitz approximation on finite metric spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a space file.
    Gen(GenArgs),
    /// Evaluate a built-in function on the points of a space.
    Sample(SampleArgs),
    /// Extend a function given on a subset to the whole space.
    Extend(ExtendArgs),
    /// Build a maximal t-separated net.
    Net(NetArgs),
    /// Run the certified approximation pipeline for each epsilon.
    Approx(ApproxArgs),
    /// Tabulate the star and uniform-continuity moduli.
    Modulus(ModulusArgs),
    /// Monte-Carlo moments of the hyperbolic distance on the disk and the
    /// Euclidean/hyperbolic comparison ratio.
    DiskDemo(DiskDemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    EuclideanRandom,
    #[value(name = "grid-1d")]
    Grid1d,
    GraphRandom,
    PoincareRandom,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: GenKind,
    /// Number of points.
    #[arg(long)]
    pub n: usize,
    /// Dimension for euclidean-random.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Average vertex degree for graph-random.
    #[arg(long, default_value_t = 4.0)]
    pub avg_degree: f64,
    /// Hyperbolic scale for poincare-random.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Dist,
    SqrtDist,
    CisDist,
    Constant,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Dist => Shape::Dist,
            ShapeArg::SqrtDist => Shape::SqrtDist,
            ShapeArg::CisDist => Shape::CisDist,
            ShapeArg::Constant => Shape::Constant,
        }
    }
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Function of the distance to the centre point.
    #[arg(long = "func", value_enum)]
    pub shape: ShapeArg,
    /// Index of the centre point.
    #[arg(long, default_value_t = 0)]
    pub center: usize,
    /// Value of the constant function.
    #[arg(long, default_value_t = 1.0)]
    pub value: f64,
    /// Perturb each value by less than this amount.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Keep only these points and write a restricted function.
    #[arg(long, value_delimiter = ',')]
    pub indices: Option<Vec<usize>>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Real,
    Complex,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Real => Mode::Real,
            ModeArg::Complex => Mode::Complex,
        }
    }
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Restricted function file (with indices).
    #[arg(long)]
    pub function: PathBuf,
    /// Lipschitz constant of the extension; defaults to the measured
    /// constant of the restricted function.
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Complex)]
    pub mode: ModeArg,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct NetArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Separation parameter.
    #[arg(long)]
    pub t: f64,
    /// Points admitted before the scan.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub start: Vec<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long)]
    pub space: PathBuf,
    #[arg(long)]
    pub function: PathBuf,
    /// Target accuracy; repeat for several values.
    #[arg(long = "epsilon", required = true)]
    pub epsilons: Vec<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::Complex)]
    pub mode: ModeArg,
    /// Use this constant instead of the computed one; it must satisfy the
    /// condition for every epsilon.
    #[arg(long)]
    pub c_override: Option<f64>,
    /// Include the approximant's values in the certificate file.
    #[arg(long)]
    pub with_values: bool,
    #[arg(long)]
    pub out: PathBuf,
    /// Also write a CSV summary next to the output.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct ModulusArgs {
    #[arg(long)]
    pub space: PathBuf,
    #[arg(long)]
    pub function: PathBuf,
    #[arg(long = "epsilon", required = true)]
    pub epsilons: Vec<f64>,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct DiskDemoArgs {
    /// Moment exponents.
    #[arg(long = "p", value_delimiter = ',', default_values_t = [1.0, 2.0])]
    pub p_list: Vec<f64>,
    /// Samples per moment estimate.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    /// Random pairs for the comparison ratio.
    #[arg(long, default_value_t = 100_000)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// A validated `approx` run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub space_path: PathBuf,
    pub function_path: PathBuf,
    /// Positive, ascending, without repeats.
    pub epsilons: Vec<f64>,
    pub mode: Mode,
    pub c_override: Option<f64>,
    pub output_path: PathBuf,
    pub emit_csv: bool,
    pub with_values: bool,
}

impl ExperimentConfig {
    pub fn from_args(args: &ApproxArgs) -> Result<Self> {
        for (name, path) in [
            ("space", &args.space),
            ("function", &args.function),
            ("out", &args.out),
        ] {
            if path.as_os_str().is_empty() {
                return Err(CliError::BadParameters(format!("--{name} path is empty")));
            }
        }
        Ok(Self {
            space_path: args.space.clone(),
            function_path: args.function.clone(),
            epsilons: normalize_epsilons(&args.epsilons)?,
            mode: args.mode.into(),
            c_override: args.c_override,
            output_path: args.out.clone(),
            emit_csv: args.csv,
            with_values: args.with_values,
        })
    }
}

/// Checks that every epsilon is positive and finite, then sorts them and
/// drops repeats.
pub fn normalize_epsilons(epsilons: &[f64]) -> Result<Vec<f64>> {
    if epsilons.is_empty() {
        return Err(CliError::BadParameters(
            "at least one epsilon is required".into(),
        ));
    }
    if let Some(e) = epsilons.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
        return Err(CliError::BadParameters(format!(
            "epsilon must be positive and finite, got {e}"
        )));
    }
    let mut sorted = epsilons.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    Ok(sorted)
}

/// Text for standard output plus an optional violation that turns the run
/// into a failure after the report has been printed.
struct Report {
    text: String,
    violation: Option<String>,
}

impl Report {
    fn new() -> Self {
        Self {
            text: String::new(),
            violation: None,
        }
    }

    fn line(&mut self, args: std::fmt::Arguments<'_>) {
        let _ = self.text.write_fmt(args);
        self.text.push('\n');
    }

    fn fail(&mut self, message: String) {
        self.violation.get_or_insert(message);
    }
}

/// Runs a parsed command, printing its report to `out`.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let report = match cli.command {
        Command::Gen(a) => gen(&a)?,
        Command::Sample(a) => sample(&a)?,
        Command::Extend(a) => extend(&a)?,
        Command::Net(a) => net(&a)?,
        Command::Approx(a) => approx(&ExperimentConfig::from_args(&a)?)?,
        Command::Modulus(a) => modulus(&a)?,
        Command::DiskDemo(a) => disk_demo(&a)?,
    };
    out.write_all(report.text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))?;
    match report.violation {
        Some(message) => Err(CliError::Violation(message)),
        None => Ok(()),
    }
}

fn load_space(path: &Path) -> Result<FiniteMetricSpace> {
    read_json::<SpaceFile>(path)?.to_space(path)
}

fn load_function(path: &Path) -> Result<SampledFunction> {
    read_json::<FunctionFile>(path)?.to_sampled(path)
}

fn gen(a: &GenArgs) -> Result<Report> {
    let file = match a.kind {
        GenKind::EuclideanRandom => generate::euclidean_random(a.n, a.dim, a.seed)?,
        GenKind::Grid1d => generate::grid_1d(a.n)?,
        GenKind::GraphRandom => generate::graph_random(a.n, a.avg_degree, a.seed)?,
        GenKind::PoincareRandom => generate::poincare_random(a.n, a.scale, a.seed)?,
    };
    // building the space validates it, and reports a disconnected graph
    let space = file.to_space(&a.out)?;
    write_json(&a.out, &file)?;
    let mut r = Report::new();
    r.line(format_args!("points: {}", space.len()));
    r.line(format_args!("diameter: {}", space.diameter()));
    Ok(r)
}

fn sample(a: &SampleArgs) -> Result<Report> {
    let space = load_space(&a.space)?;
    let spec = SampleSpec {
        shape: a.shape.into(),
        center: a.center,
        value: a.value,
        noise: a.noise,
        seed: a.seed,
    };
    let f = generate::sample_function(&space, &spec)?;
    let mut r = Report::new();
    match &a.indices {
        Some(indices) => {
            let restricted = f.restrict(indices)?;
            write_json(&a.out, &FunctionFile::restricted(&restricted))?;
            r.line(format_args!("points: {}", restricted.len()));
            r.line(format_args!(
                "lipschitz constant: {}",
                lipschitz_constant(&space, &restricted)?
            ));
        }
        None => {
            write_json(&a.out, &FunctionFile::sampled(&f))?;
            r.line(format_args!("points: {}", f.len()));
            r.line(format_args!(
                "lipschitz constant: {}",
                lipschitz_constant(&space, &f)?
            ));
        }
    }
    Ok(r)
}

fn extend(a: &ExtendArgs) -> Result<Report> {
    let space = load_space(&a.space)?;
    let s = read_json::<FunctionFile>(&a.function)?.to_restricted(&a.function)?;
    let restriction_lip = lipschitz_constant(&space, &s)?;
    let c = a.c.unwrap_or(restriction_lip);
    let f = match Mode::from(a.mode) {
        Mode::Real => mcshane_extend_real(&space, &s, c)?,
        Mode::Complex => extend_complex(&space, &s, c)?,
    };
    let agreement = s
        .indices()
        .iter()
        .zip(s.values())
        .map(|(&i, v)| (f.values()[i] - v).norm())
        .fold(0.0, f64::max);
    write_json(&a.out, &FunctionFile::sampled(&f))?;
    let mut r = Report::new();
    r.line(format_args!("constant: {c}"));
    r.line(format_args!(
        "restriction lipschitz constant: {restriction_lip}"
    ));
    r.line(format_args!(
        "extension lipschitz constant: {}",
        lipschitz_constant(&space, &f)?
    ));
    r.line(format_args!("agreement error: {agreement}"));
    Ok(r)
}

fn net(a: &NetArgs) -> Result<Report> {
    let space = load_space(&a.space)?;
    let net = greedy_maximal_separated(&space, a.t, &a.start)?;
    let check = verify_net(&space, &net)?;
    write_json(&a.out, &NetFile::from(&net))?;
    let mut r = Report::new();
    r.line(format_args!("size: {}", net.len()));
    r.line(format_args!("covering radius: {}", net.covering_radius));
    r.line(format_args!("min separation: {}", check.min_separation));
    r.line(format_args!("separated: {}", check.separation_ok));
    r.line(format_args!("covering: {}", check.covering_ok));
    if !check.ok() {
        r.fail(format!("net with t = {} fails verification", a.t));
    }
    Ok(r)
}

fn approx(config: &ExperimentConfig) -> Result<Report> {
    let space = load_space(&config.space_path)?;
    let f = load_function(&config.function_path)?;
    let mut r = Report::new();
    r.line(format_args!(
        "{:>12} {:>14} {:>14} {:>8} {:>14} {:>14} {:>6}",
        "epsilon", "c_used", "t", "net", "achieved", "proven", "holds"
    ));
    let mut records = Vec::with_capacity(config.epsilons.len());
    for &epsilon in &config.epsilons {
        let a = Pipeline::new(epsilon)
            .mode(config.mode)
            .c_override(config.c_override)
            .run(&space, &f)?;
        let record =
            CertificateRecord::new(&a.certificate, config.with_values.then_some(&a.values));
        r.line(format_args!(
            "{:>12} {:>14.6e} {:>14.6e} {:>8} {:>14.6e} {:>14.6e} {:>6}",
            record.epsilon,
            record.c_used,
            record.t,
            record.net_size,
            record.achieved_sup_error,
            record.proven_sup_error,
            record.holds
        ));
        if !record.holds {
            r.fail(format!(
                "certificate for epsilon = {epsilon} fails its checks: {:?}",
                record.checks
            ));
        }
        records.push(record);
    }
    write_json(&config.output_path, &records)?;
    if config.emit_csv {
        let rows: Vec<CertificateCsvRow> = records.iter().map(CertificateCsvRow::from).collect();
        write_csv(&csv_path(&config.output_path), &rows)?;
    }
    Ok(r)
}

fn modulus(a: &ModulusArgs) -> Result<Report> {
    let epsilons = normalize_epsilons(&a.epsilons)?;
    let space = load_space(&a.space)?;
    let f = load_function(&a.function)?;
    let table = star_modulus_table(&space, &f, &epsilons)?;
    let records: Vec<ModulusRecord> = table.rows.iter().map(ModulusRecord::from).collect();
    let mut r = Report::new();
    r.line(format_args!(
        "{:>12} {:>14} {:>14}",
        "epsilon", "c_star", "delta"
    ));
    for rec in &records {
        let delta = rec
            .delta
            .map_or_else(|| "none".to_owned(), |d| format!("{d:.6e}"));
        r.line(format_args!(
            "{:>12} {:>14.6e} {:>14}",
            rec.epsilon, rec.c_star, delta
        ));
    }
    if !table.is_monotone() {
        r.fail("moduli are not monotone in epsilon".into());
    }
    write_json(&a.out, &records)?;
    if a.csv {
        let rows: Vec<ModulusCsvRow> = records.iter().map(ModulusCsvRow::from).collect();
        write_csv(&csv_path(&a.out), &rows)?;
    }
    Ok(r)
}

fn disk_demo(a: &DiskDemoArgs) -> Result<Report> {
    let mut r = Report::new();
    for &p in &a.p_list {
        let m = disk_moment_estimate(p, a.samples, a.seed)?;
        r.line(format_args!(
            "p = {p}: mean beta(0, z)^p = {:.6} +/- {:.6} ({} samples)",
            m.mean, m.std_error, m.samples
        ));
    }
    let stats = comparison_ratio(a.pairs, a.seed);
    r.line(format_args!(
        "max |z - w| / beta(z, w) over {} pairs: {:.6}",
        stats.pairs, stats.max_ratio
    ));
    if let Some((z, w)) = stats.witness {
        r.line(format_args!(
            "attained at z = ({:.6}, {:.6}), w = ({:.6}, {:.6})",
            z.re(),
            z.im(),
            w.re(),
            w.im()
        ));
    }
    if stats.max_ratio > 2.0 {
        r.fail(format!("comparison ratio {} exceeds 2", stats.max_ratio));
    }
    Ok(r)
}
