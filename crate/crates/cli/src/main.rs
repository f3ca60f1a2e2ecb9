//! `sphere-suite`: generate spherical point configurations, tessellate
//! them, and compute quality metrics and pairwise energies.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage/validation error.

mod tables;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sphere_core::config::{Configuration, Family};
use sphere_core::energy::{
    self, discrete_energy, normalize_energy, ContinuousEnergy, Kernel, LOG_ORDER3_UPPER_REF,
};
use sphere_core::generators;
use sphere_core::metrics::{quality_report, QualityReport};
use sphere_core::optimizer::{minimize, Checkpoint, OptimizerSettings};
use sphere_core::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "sphere-suite", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point configuration and write it out.
    Generate(GenerateArgs),
    /// Tessellate configurations and report separation/covering/cell
    /// statistics.
    Analyze(AnalyzeArgs),
    /// Discrete energies over a cardinality sweep, with reference lines.
    Energy(EnergyArgs),
    /// Gradient-descent energy minimization from a spiral start.
    Optimize(OptimizeArgs),
    /// Quality metrics over a family's natural parameter grid.
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Family name (gen_spiral, fibonacci, fibonacci_lattice, hammersley,
    /// zonal, healpix, radial_icosahedral, cubed_sphere, octahedral,
    /// icos_equal_area, random).
    #[arg(long)]
    family: Option<String>,
    /// Cardinality N (constrained families also accept their exact N).
    #[arg(long)]
    n: Option<usize>,
    /// Refinement parameter k for the k-indexed families.
    #[arg(long)]
    k: Option<usize>,
    /// Lattice vector "m,n" for icos_equal_area.
    #[arg(long)]
    mn: Option<String>,
    /// RNG seed for the randomized families.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Disable the random collar rotations of the zonal construction.
    #[arg(long)]
    no_shift: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Analyze an external point file instead of a generated family.
    #[arg(long, value_name = "FILE")]
    r#in: Option<PathBuf>,
    /// Preset parameter grid 1-8.
    #[arg(long)]
    table: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct EnergyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Analyze an external point file instead of a generated family.
    #[arg(long, value_name = "FILE")]
    r#in: Option<PathBuf>,
    /// Kernel: `log` or `s=<real>`.
    #[arg(long, default_value = "log")]
    kernel: String,
    /// Comma-separated expansion orders, e.g. `1,2,3`.
    #[arg(long, default_value = "1")]
    orders: String,
    /// Largest cardinality of the sweep.
    #[arg(long, default_value_t = 10_000)]
    nmax: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Number of points.
    #[arg(long)]
    n: usize,
    /// Kernel: `log` or `s=<real>`.
    #[arg(long, default_value = "log")]
    kernel: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
    #[arg(long, default_value_t = 3)]
    restarts: usize,
    /// Checkpoint path (JSON: points + trace).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Largest cardinality of the sweep.
    #[arg(long, default_value_t = 10_000)]
    nmax: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            msg: msg.into(),
        }
    }

    fn internal(msg: impl Into<String>) -> Self {
        CliError {
            code: 1,
            msg: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidCardinality(_)
            | Error::Parse { .. }
            | Error::Validation { .. }
            | Error::KernelMismatch(_) => CliError::usage(e.to_string()),
            other => CliError::internal(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Energy(a) => cmd_energy(a),
        Command::Optimize(a) => cmd_optimize(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

/// Search for the integer refinement parameter giving cardinality `n`.
fn invert_cardinality(
    n: usize,
    name: &str,
    constraint: &str,
    card: impl Fn(usize) -> usize,
) -> Result<usize, CliError> {
    for k in 1..=4000 {
        let c = card(k);
        if c == n {
            return Ok(k);
        }
        if c > n {
            break;
        }
    }
    Err(CliError::usage(format!("{name} requires N = {constraint}, got N = {n}")))
}

fn resolve_config(args: &FamilyArgs) -> Result<Configuration, CliError> {
    let fam_str = args
        .family
        .as_deref()
        .ok_or_else(|| CliError::usage("--family is required"))?;
    let family = Family::parse(fam_str)
        .ok_or_else(|| CliError::usage(format!("unknown family '{fam_str}'")))?;
    let need_n = || {
        args.n
            .ok_or_else(|| CliError::usage(format!("{fam_str} requires --n")))
    };
    let k_or_n = |name: &str, constraint: &str, card: &dyn Fn(usize) -> usize| {
        if let Some(k) = args.k {
            Ok(k)
        } else if let Some(n) = args.n {
            invert_cardinality(n, name, constraint, card)
        } else {
            Err(CliError::usage(format!("{name} requires --k or --n")))
        }
    };
    let config = match family {
        Family::GenSpiral => generators::gen_spiral(need_n()?)?,
        Family::Fibonacci => generators::fibonacci(need_n()?)?,
        Family::FibonacciLattice => {
            if let Some(k) = args.k {
                generators::fibonacci_lattice(k, generators::LatticeMode::Rational, 0)?
            } else {
                generators::fibonacci_lattice(
                    0,
                    generators::LatticeMode::Irrational,
                    need_n()?,
                )?
            }
        }
        Family::Hammersley => generators::hammersley(need_n()?)?,
        Family::ZonalEqualArea => {
            generators::zonal_equal_area(need_n()?, args.seed, !args.no_shift)?
        }
        Family::Healpix => {
            let k = k_or_n("healpix", "12k^2", &|k| 12 * k * k)?;
            generators::healpix(k)?
        }
        Family::RadialIcosahedral => {
            let k = k_or_n("radial_icosahedral", "10k^2+2", &|k| 10 * k * k + 2)?;
            generators::radial_icosahedral(k)?
        }
        Family::CubedSphere => {
            let k = k_or_n("cubed_sphere", "6k^2-12k+8", &|k| {
                6 * k * k + 8 - (12 * k).min(6 * k * k + 8)
            })?;
            generators::cubed_sphere(k)?
        }
        Family::Octahedral => {
            let k = k_or_n("octahedral", "4k^2+2", &|k| 4 * k * k + 2)?;
            generators::octahedral(k)?
        }
        Family::IcosEqualArea => {
            let mn = args
                .mn
                .as_deref()
                .ok_or_else(|| CliError::usage("icos_equal_area requires --mn m,n"))?;
            let (m, n) = mn
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| CliError::usage(format!("cannot parse --mn '{mn}'")))?;
            generators::icos_equal_area(m, n)?
        }
        Family::Random => generators::random_uniform(need_n()?, args.seed)?,
        Family::MinimalEnergy | Family::External => {
            return Err(CliError::usage(format!(
                "family '{fam_str}' is not generated directly; see the optimize command or --in"
            )))
        }
    };
    Ok(config)
}

fn config_from_entry(entry: &tables::TableEntry, args: &FamilyArgs) -> FamilyArgs {
    let mut fa = args.clone();
    fa.family = Some(entry.family.to_string());
    fa.n = None;
    fa.k = None;
    fa.mn = None;
    let mut m_val = None;
    let mut n_val = None;
    for &(name, v) in &entry.params {
        match name {
            "n" => fa.n = Some(v as usize),
            "k" => fa.k = Some(v as usize),
            "m" => m_val = Some(v),
            _ => {}
        }
        if entry.family == "icos_equal_area" && name == "n" {
            n_val = Some(v);
        }
    }
    if entry.family == "icos_equal_area" {
        // params carry ("m", m) and ("n", n) lattice components.
        for &(name, v) in &entry.params {
            if name == "n" {
                n_val = Some(v);
            }
        }
        fa.n = None;
        fa.mn = Some(format!("{},{}", m_val.unwrap_or(0), n_val.unwrap_or(0)));
    }
    fa
}

fn manifest_header(command: &str, config: Option<&Configuration>, extra: &[(&str, String)]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# sphere-suite {VERSION}");
    let _ = writeln!(s, "# command: {command}");
    if let Some(c) = config {
        let _ = writeln!(s, "# family: {}", c.family);
        let _ = writeln!(s, "# params: {}", c.params_string());
        let _ = writeln!(s, "# seed: {}", c.seed.unwrap_or(0));
    }
    for (k, v) in extra {
        let _ = writeln!(s, "# {k}: {v}");
    }
    s
}

fn manifest_json(command: &str, config: Option<&Configuration>, extra: &[(&str, String)]) -> serde_json::Value {
    let mut m = serde_json::Map::new();
    m.insert("tool".into(), format!("sphere-suite {VERSION}").into());
    m.insert("command".into(), command.into());
    if let Some(c) = config {
        m.insert("family".into(), c.family.to_string().into());
        m.insert("params".into(), c.params_string().into());
        m.insert("seed".into(), c.seed.unwrap_or(0).into());
    }
    for (k, v) in extra {
        m.insert((*k).into(), v.clone().into());
    }
    serde_json::Value::Object(m)
}

fn write_output(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::internal(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_format(f: &str) -> Result<bool, CliError> {
    match f {
        "csv" => Ok(false),
        "json" => Ok(true),
        other => Err(CliError::usage(format!("unknown format '{other}'"))),
    }
}

fn parse_kernel(s: &str) -> Result<Kernel, CliError> {
    if s == "log" {
        return Ok(Kernel::Log);
    }
    if let Some(v) = s.strip_prefix("s=") {
        let s: f64 = v
            .parse()
            .map_err(|_| CliError::usage(format!("cannot parse Riesz exponent '{v}'")))?;
        return Ok(Kernel::Riesz(s).validate()?);
    }
    Err(CliError::usage(format!(
        "kernel must be 'log' or 's=<real>', got '{s}'"
    )))
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let json = parse_format(&args.format)?;
    let config = resolve_config(&args.family)?;
    let content = if json {
        let points: Vec<[f64; 3]> = config.points.iter().map(|p| p.as_array()).collect();
        let doc = serde_json::json!({
            "manifest": manifest_json("generate", Some(&config), &[]),
            "points": points,
        });
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::internal(e.to_string()))? + "\n"
    } else {
        manifest_header("generate", Some(&config), &[]) + &config.to_csv()
    };
    write_output(args.out.as_ref(), &content)
}

fn load_input(path: &PathBuf) -> Result<Configuration, CliError> {
    let format = if path.extension().is_some_and(|e| e == "json") {
        generators::ExternalFormat::Json
    } else {
        generators::ExternalFormat::Csv
    };
    Ok(generators::load_external(path, format)?)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let json = parse_format(&args.format)?;
    let mut reports: Vec<QualityReport> = Vec::new();
    if let Some(path) = &args.r#in {
        reports.push(quality_report(&load_input(path)?)?);
    } else if let Some(t) = args.table {
        let entries = tables::table(t)
            .ok_or_else(|| CliError::usage(format!("no table preset {t} (valid: 1-8)")))?;
        for entry in &entries {
            let fa = config_from_entry(entry, &args.family);
            reports.push(quality_report(&resolve_config(&fa)?)?);
        }
    } else {
        reports.push(quality_report(&resolve_config(&args.family)?)?);
    }
    let extra = [("seed", args.family.seed.to_string())];
    let content = if json {
        let doc = serde_json::json!({
            "manifest": manifest_json("analyze", None, &extra),
            "reports": reports,
        });
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::internal(e.to_string()))? + "\n"
    } else {
        let mut s = manifest_header("analyze", None, &extra);
        s.push_str(QualityReport::CSV_HEADER);
        s.push('\n');
        for r in &reports {
            s.push_str(&r.to_csv_row());
            s.push('\n');
        }
        s
    };
    write_output(args.out.as_ref(), &content)
}

/// Natural cardinality sweep of a family, capped at `nmax`.
fn sweep_configs(args: &FamilyArgs, nmax: usize) -> Result<Vec<Configuration>, CliError> {
    const NS: [usize; 20] = [
        10, 20, 30, 40, 50, 100, 200, 300, 400, 500, 1000, 2000, 3000, 4000, 5000, 10_000,
        20_000, 30_000, 40_000, 50_000,
    ];
    let fam_str = args
        .family
        .as_deref()
        .ok_or_else(|| CliError::usage("--family is required"))?;
    let family = Family::parse(fam_str)
        .ok_or_else(|| CliError::usage(format!("unknown family '{fam_str}'")))?;
    let mut out = Vec::new();
    match family {
        Family::Healpix
        | Family::RadialIcosahedral
        | Family::CubedSphere
        | Family::Octahedral => {
            let card: fn(usize) -> usize = match family {
                Family::Healpix => |k| 12 * k * k,
                Family::RadialIcosahedral => |k| 10 * k * k + 2,
                Family::CubedSphere => |k| 6 * k * k + 8 - (12 * k).min(6 * k * k + 8),
                _ => |k| 4 * k * k + 2,
            };
            let k0 = if family == Family::CubedSphere { 2 } else { 1 };
            for k in k0.. {
                if card(k) > nmax {
                    break;
                }
                let mut fa = args.clone();
                fa.k = Some(k);
                fa.n = None;
                out.push(resolve_config(&fa)?);
            }
        }
        Family::IcosEqualArea => {
            for &(m, n) in &[
                (1, 0),
                (1, 1),
                (2, 0),
                (2, 1),
                (3, 1),
                (4, 1),
                (5, 2),
                (7, 5),
                (12, 4),
                (16, 7),
                (19, 18),
                (31, 21),
                (42, 40),
            ] {
                let total = 10 * (m * m + m * n + n * n) + 2;
                if total > nmax {
                    break;
                }
                let mut fa = args.clone();
                fa.mn = Some(format!("{m},{n}"));
                out.push(resolve_config(&fa)?);
            }
        }
        Family::Fibonacci => {
            for &n in NS.iter().take_while(|&&n| n + 1 <= nmax) {
                let mut fa = args.clone();
                fa.n = Some(n + 1);
                out.push(resolve_config(&fa)?);
            }
        }
        _ => {
            for &n in NS.iter().take_while(|&&n| n <= nmax) {
                let mut fa = args.clone();
                fa.n = Some(n);
                out.push(resolve_config(&fa)?);
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::usage(format!(
            "no {fam_str} cardinality at or below --nmax {nmax}"
        )));
    }
    Ok(out)
}

/// Reference rows for the normalized energy series: the continuous-energy
/// limit for order 1 and the conjectured/known next-order coefficients.
fn reference_rows(kernel: Kernel, orders: &[u8]) -> Vec<(String, f64)> {
    let mut rows = Vec::new();
    for &order in orders {
        match (kernel, order) {
            (Kernel::Log, 1) => {
                rows.push(("log order1 limit".to_string(), 0.5 - 2f64.ln()));
            }
            (Kernel::Log, 2) => rows.push(("log order2 limit".to_string(), -0.5)),
            (Kernel::Log, 3) => {
                rows.push(("log order3 upper bound".to_string(), LOG_ORDER3_UPPER_REF));
            }
            (Kernel::Riesz(s), 1) if s < 2.0 => {
                if let Ok(ContinuousEnergy::Finite(v)) =
                    energy::continuous_value(kernel)
                {
                    rows.push((format!("s={s} order1 limit"), v));
                }
            }
            (Kernel::Riesz(s), 1) if s == 2.0 => {
                rows.push(("s=2 order1 limit".to_string(), 0.25));
            }
            (Kernel::Riesz(s), 2) if s < 4.0 && s != 0.0 && s != 2.0 => {
                if let Ok(c) = energy::second_order_coefficient(s) {
                    rows.push((format!("s={s} order2 conjectured"), c));
                }
            }
            _ => {}
        }
    }
    rows
}

fn cmd_energy(args: EnergyArgs) -> Result<(), CliError> {
    let json = parse_format(&args.format)?;
    let kernel = parse_kernel(&args.kernel)?;
    let orders: Vec<u8> = args
        .orders
        .split(',')
        .map(|o| {
            o.trim()
                .parse::<u8>()
                .map_err(|_| CliError::usage(format!("cannot parse order '{o}'")))
        })
        .collect::<Result<_, _>>()?;
    if orders.is_empty() {
        return Err(CliError::usage("--orders must name at least one order"));
    }

    let configs = if let Some(path) = &args.r#in {
        vec![load_input(path)?]
    } else {
        sweep_configs(&args.family, args.nmax)?
    };

    // Validate the kernel/order combinations up front (exit 2, not after
    // a long sweep).
    for &order in &orders {
        normalize_energy(0.0, 2, kernel, order)?;
    }

    let mut data: Vec<(String, usize, u8, f64)> = Vec::new();
    for c in &configs {
        let e = discrete_energy(c, kernel)?;
        for &order in &orders {
            let v = normalize_energy(e, c.len(), kernel, order)?;
            data.push((c.family.to_string(), c.len(), order, v));
        }
    }
    let refs = reference_rows(kernel, &orders);

    let extra = [
        ("kernel", kernel.to_string()),
        ("orders", args.orders.clone()),
        ("seed", args.family.seed.to_string()),
    ];
    let content = if json {
        let doc = serde_json::json!({
            "manifest": manifest_json("energy", None, &extra),
            "series": data
                .iter()
                .map(|(f, n, o, v)| serde_json::json!({
                    "family": f, "n": n, "order": o, "value": v
                }))
                .collect::<Vec<_>>(),
            "references": refs
                .iter()
                .map(|(name, v)| serde_json::json!({"name": name, "value": v}))
                .collect::<Vec<_>>(),
        });
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::internal(e.to_string()))? + "\n"
    } else {
        let mut s = manifest_header("energy", None, &extra);
        s.push_str("type,label,N,order,value\n");
        for (f, n, o, v) in &data {
            let _ = writeln!(s, "data,{f},{n},{o},{v:.12e}");
        }
        for (name, v) in &refs {
            let _ = writeln!(s, "reference,{name},,,{v:.12e}");
        }
        s
    };
    write_output(args.out.as_ref(), &content)
}

fn cmd_optimize(args: OptimizeArgs) -> Result<(), CliError> {
    let kernel = parse_kernel(&args.kernel)?;
    let initial = generators::gen_spiral(args.n)?;
    let settings = OptimizerSettings {
        kernel,
        max_iters: args.max_iters,
        restarts: args.restarts,
        seed: args.seed,
        ..OptimizerSettings::default()
    };
    let (config, trace) = minimize(&initial, &settings)?;
    let checkpoint = Checkpoint {
        points: config.points.clone(),
        kernel: kernel.to_string(),
        trace,
    };
    let doc = serde_json::json!({
        "manifest": manifest_json(
            "optimize",
            Some(&config),
            &[("kernel", kernel.to_string()), ("max_iters", args.max_iters.to_string())],
        ),
        "checkpoint": checkpoint,
    });
    let content =
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::internal(e.to_string()))? + "\n";
    write_output(args.out.as_ref(), &content)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let json = parse_format(&args.format)?;
    let configs = sweep_configs(&args.family, args.nmax)?;
    let mut reports = Vec::new();
    for c in &configs {
        reports.push(quality_report(c)?);
    }
    let extra = [
        ("nmax", args.nmax.to_string()),
        ("seed", args.family.seed.to_string()),
    ];
    let content = if json {
        let doc = serde_json::json!({
            "manifest": manifest_json("sweep", None, &extra),
            "reports": reports,
        });
        serde_json::to_string_pretty(&doc).map_err(|e| CliError::internal(e.to_string()))? + "\n"
    } else {
        let mut s = manifest_header("sweep", None, &extra);
        s.push_str(QualityReport::CSV_HEADER);
        s.push('\n');
        for r in &reports {
            s.push_str(&r.to_csv_row());
            s.push('\n');
        }
        s
    };
    write_output(args.out.as_ref(), &content)
}
