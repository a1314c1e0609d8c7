//! `superray` command line.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 domain or
//! convergence error, 3 validation failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{apply_key, load_config, parse_config, validated, ConfigError};
use crate::error::Error;
use crate::media::{Medium, PlasmaBandMedium, Side, WeakShockPair};
use crate::poles::{find_pole, PoleOutcome, DEFAULT_REL_TOL};
use crate::scattering::{f_denominator, reflection, InterfaceScattering, Method};
use crate::sweep::{format_float, run_sweep, write_rows, OutputFormat};
use crate::validate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "superray", version, about = "Superradiant reflection at a moving shock front")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Permittivities on both sides of the front.
    Epsilon(EpsilonArgs),
    /// Reflection and transmission amplitudes.
    Reflect(ReflectArgs),
    /// Denominator f(ω) of the first-order amplitude.
    Fdenom(FdenomArgs),
    /// Locate the root of f(ω) above ω̃.
    Pole(PoleArgs),
    /// Run a parameter sweep and write CSV or JSON rows.
    Sweep(SweepArgs),
    /// Run the built-in cross-checks.
    Validate(OutArgs),
}

#[derive(Args, Debug)]
struct ShockArgs {
    /// Background permittivity constant a.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
    a: f64,
    /// Relative density jump δn/n.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1e-3)]
    delta: f64,
    /// Front speed in units of c.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1e-5)]
    v: f64,
}

#[derive(Args, Debug)]
struct FrequencyArgs {
    /// Frequency as the offset x = ω/ω̃ − 1.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "omega_ev")]
    omega_x: Option<f64>,
    /// Frequency as a photon energy in eV (needs --omega-tilde-ev).
    #[arg(long, requires = "omega_tilde_ev")]
    omega_ev: Option<f64>,
    /// Energy ħω̃ of the permittivity zero crossing, in eV.
    #[arg(long)]
    omega_tilde_ev: Option<f64>,
}

#[derive(Args, Debug)]
struct PlotArgs {
    /// Print two columns (x, value) over a log grid of offsets instead of a
    /// single point.
    #[arg(long)]
    plot_data: bool,
    #[arg(long, default_value_t = 1e-12)]
    x_lo: f64,
    #[arg(long, default_value_t = 1e-2)]
    x_hi: f64,
    #[arg(long, default_value_t = 200)]
    points: usize,
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Write results to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModelArg {
    Linearized,
    Exact,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Incident,
    Transmitted,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Full,
    FirstOrder,
    Oracle,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct EpsilonArgs {
    #[command(flatten)]
    shock: ShockArgs,
    #[command(flatten)]
    frequency: FrequencyArgs,
    #[command(flatten)]
    plot: PlotArgs,
    /// Side plotted with --plot-data.
    #[arg(long, value_enum, default_value_t = SideArg::Transmitted)]
    side: SideArg,
    /// Model plotted with --plot-data.
    #[arg(long, value_enum, default_value_t = ModelArg::Linearized)]
    model: ModelArg,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct ReflectArgs {
    #[command(flatten)]
    shock: ShockArgs,
    #[command(flatten)]
    frequency: FrequencyArgs,
    #[command(flatten)]
    plot: PlotArgs,
    #[arg(long, value_enum, default_value_t = MethodArg::Full)]
    method: MethodArg,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct FdenomArgs {
    #[command(flatten)]
    shock: ShockArgs,
    #[command(flatten)]
    frequency: FrequencyArgs,
    #[command(flatten)]
    plot: PlotArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct PoleArgs {
    #[command(flatten)]
    shock: ShockArgs,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    rel_tol: f64,
    /// Also report the pole as a photon energy.
    #[arg(long)]
    omega_tilde_ev: Option<f64>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Configuration file; command-line options override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[arg(long)]
    v_lo: Option<String>,
    #[arg(long)]
    v_hi: Option<String>,
    #[arg(long)]
    v_points: Option<String>,
    #[arg(long)]
    v_spacing: Option<String>,
    #[arg(long)]
    delta_lo: Option<String>,
    #[arg(long)]
    delta_hi: Option<String>,
    #[arg(long)]
    delta_points: Option<String>,
    #[arg(long)]
    delta_spacing: Option<String>,
    /// Comma-separated list.
    #[arg(long)]
    a_values: Option<String>,
    /// Comma-separated electron densities in cm⁻³.
    #[arg(long, conflicts_with = "omega_tilde_ev_values")]
    n_e_values: Option<String>,
    /// Comma-separated zero-crossing energies in eV.
    #[arg(long)]
    omega_tilde_ev_values: Option<String>,
    #[arg(long)]
    rel_tol: Option<String>,
    #[command(flatten)]
    out: OutArgs,
}

enum Failure {
    Usage(String),
    Domain(String),
    Validation(String),
    /// Reader closed the pipe; nothing left to report.
    BrokenPipe,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::BrokenPipe;
        }
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

fn open_output(out: &OutArgs) -> std::result::Result<Box<dyn Write>, Failure> {
    Ok(match &out.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::Usage(format!("cannot create {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn pair(shock: &ShockArgs) -> std::result::Result<WeakShockPair, Failure> {
    Ok(WeakShockPair::new(shock.a, 1.0, shock.delta)?)
}

fn interface(shock: &ShockArgs) -> std::result::Result<InterfaceScattering, Failure> {
    Ok(InterfaceScattering::weak_shock(pair(shock)?, shock.v)?)
}

/// Offset `x` from `--omega-x` or `--omega-ev`/`--omega-tilde-ev`.
fn offset(freq: &FrequencyArgs) -> std::result::Result<f64, Failure> {
    match (freq.omega_x, freq.omega_ev, freq.omega_tilde_ev) {
        (Some(x), None, _) => Ok(x),
        (None, Some(e), Some(tilde)) => {
            if !(tilde > 0.0) {
                return Err(Failure::Usage("--omega-tilde-ev must be positive".into()));
            }
            Ok(e / tilde - 1.0)
        }
        _ => Err(Failure::Usage(
            "give a frequency with --omega-x or with --omega-ev and --omega-tilde-ev".into(),
        )),
    }
}

fn plot_grid(plot: &PlotArgs) -> std::result::Result<Vec<f64>, Failure> {
    if !(plot.x_lo > 0.0 && plot.x_hi > plot.x_lo) || plot.points < 2 {
        return Err(Failure::Usage(
            "plot grid needs 0 < --x-lo < --x-hi and --points ≥ 2".into(),
        ));
    }
    let (l0, l1) = (plot.x_lo.log10(), plot.x_hi.log10());
    let last = (plot.points - 1) as f64;
    Ok((0..plot.points)
        .map(|i| 10f64.powf(l0 + (l1 - l0) * i as f64 / last))
        .collect())
}

fn write_plot(
    w: &mut dyn Write,
    label: &str,
    grid: &[f64],
    f: impl Fn(f64) -> crate::Result<f64>,
) -> Outcome {
    writeln!(w, "# x {label}")?;
    for &x in grid {
        match f(x) {
            Ok(y) => writeln!(w, "{} {}", format_float(x), format_float(y))?,
            // Points outside the band are left out of the plot.
            Err(_) => continue,
        }
    }
    Ok(())
}

fn kv(w: &mut dyn Write, key: &str, value: f64) -> io::Result<()> {
    writeln!(w, "{key} = {}", format_float(value))
}

fn cmd_epsilon(args: &EpsilonArgs) -> Outcome {
    let pair = pair(&args.shock)?;
    let exact = Medium::from(PlasmaBandMedium::with_zero_crossing(args.shock.a, 1.0)?);
    let side = match args.side {
        SideArg::Incident => Side::Incident,
        SideArg::Transmitted => Side::Transmitted,
    };
    let model = match args.model {
        ModelArg::Linearized => Medium::from(pair.side(side)),
        ModelArg::Exact => exact,
    };
    let mut w = open_output(&args.out)?;
    if args.plot.plot_data {
        let grid = plot_grid(&args.plot)?;
        let reduced = model.reduced(1.0);
        write_plot(&mut *w, "epsilon", &grid, |x| Ok(reduced.epsilon(x)))?;
    } else {
        let x = offset(&args.frequency)?;
        let omega = 1.0 + x;
        let (e1, e2) = pair.epsilons(omega)?;
        kv(&mut *w, "x", x)?;
        kv(&mut *w, "epsilon_1", e1)?;
        kv(&mut *w, "epsilon_2", e2)?;
        kv(&mut *w, "epsilon_exact", exact.epsilon(omega)?)?;
        kv(&mut *w, "depsilon_domega_linearized", pair.depsilon_domega())?;
        kv(&mut *w, "depsilon_domega_exact", exact.depsilon_domega(omega)?)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_reflect(args: &ReflectArgs) -> Outcome {
    let s = interface(&args.shock)?;
    let method = match args.method {
        MethodArg::Full => Method::Full,
        MethodArg::FirstOrder => Method::FirstOrder,
        MethodArg::Oracle => Method::Oracle,
    };
    let mut w = open_output(&args.out)?;
    if args.plot.plot_data {
        let grid = plot_grid(&args.plot)?;
        write_plot(&mut *w, "r", &grid, |x| reflection(&s, x, method).map(|r| r.r))?;
    } else {
        let x = offset(&args.frequency)?;
        let sol = reflection(&s, x, method)?;
        kv(&mut *w, "x", x)?;
        kv(&mut *w, "r", sol.r)?;
        kv(&mut *w, "t", sol.t)?;
        kv(&mut *w, "omega", sol.triple.omega)?;
        kv(&mut *w, "omega_reflected", sol.triple.omega_reflected)?;
        kv(&mut *w, "omega_transmitted", sol.triple.omega_transmitted)?;
        kv(&mut *w, "denominator", sol.denominator_value)?;
        writeln!(w, "pole_proximity = {}", sol.pole_proximity)?;
        if let Some(tilde) = args.frequency.omega_tilde_ev {
            kv(&mut *w, "omega_ev", tilde * sol.triple.omega)?;
            kv(&mut *w, "omega_reflected_ev", tilde * sol.triple.omega_reflected)?;
            kv(&mut *w, "omega_transmitted_ev", tilde * sol.triple.omega_transmitted)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_fdenom(args: &FdenomArgs) -> Outcome {
    let s = interface(&args.shock)?;
    let mut w = open_output(&args.out)?;
    if args.plot.plot_data {
        let grid = plot_grid(&args.plot)?;
        write_plot(&mut *w, "f", &grid, |x| f_denominator(&s, x))?;
    } else {
        let x = offset(&args.frequency)?;
        kv(&mut *w, "x", x)?;
        kv(&mut *w, "f", f_denominator(&s, x)?)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_pole(args: &PoleArgs) -> Outcome {
    let s = interface(&args.shock)?;
    let mut w = open_output(&args.out)?;
    match find_pole(&s, args.rel_tol)? {
        PoleOutcome::Pole(p) => {
            writeln!(w, "status = pole")?;
            kv(&mut *w, "x_offset", p.x_offset)?;
            kv(&mut *w, "omega_star", p.omega_star)?;
            kv(&mut *w, "bracket_lo", p.bracket.0)?;
            kv(&mut *w, "bracket_hi", p.bracket.1)?;
            kv(&mut *w, "f_residual", p.f_residual)?;
            writeln!(w, "iterations = {}", p.iterations)?;
            kv(&mut *w, "asymptotic_prediction", p.asymptotic_prediction)?;
            if let Some(tilde) = args.omega_tilde_ev {
                kv(&mut *w, "pole_energy_ev", tilde * (1.0 + p.x_offset))?;
            }
        }
        PoleOutcome::NoPole(report) => {
            writeln!(w, "status = no_pole")?;
            writeln!(w, "reason = {:?}", report.reason)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Outcome {
    let mut config = match &args.config {
        Some(path) => load_config(path)?,
        None => parse_config("")?,
    };
    let overrides = [
        ("v_lo", &args.v_lo),
        ("v_hi", &args.v_hi),
        ("v_points", &args.v_points),
        ("v_spacing", &args.v_spacing),
        ("delta_lo", &args.delta_lo),
        ("delta_hi", &args.delta_hi),
        ("delta_points", &args.delta_points),
        ("delta_spacing", &args.delta_spacing),
        ("a_values", &args.a_values),
        ("n_e_values", &args.n_e_values),
        ("omega_tilde_ev_values", &args.omega_tilde_ev_values),
        ("rel_tol", &args.rel_tol),
    ];
    for (key, value) in overrides {
        if let Some(value) = value {
            apply_key(&mut config, key, value)
                .map_err(|m| Failure::Usage(format!("--{}: {m}", key.replace('_', "-"))))?;
        }
    }
    if let Some(format) = args.format {
        config.format = match format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        };
    }
    let config = validated(config)?;
    let rows = run_sweep(&config)?;
    // Rendered in memory so a failed write is an I/O error, not a row error.
    let mut buf = Vec::new();
    write_rows(&rows, config.format, &mut buf)?;
    let mut w = open_output(&args.out)?;
    w.write_all(&buf)?;
    w.flush()?;
    Ok(())
}

fn cmd_validate(args: &OutArgs) -> Outcome {
    let mut w = open_output(args)?;
    let results = validate::run_all();
    for check in &results {
        let mark = if check.passed { "PASS" } else { "FAIL" };
        writeln!(w, "{mark} {}: {}", check.name, check.detail)?;
    }
    w.flush()?;
    let failed: Vec<&str> = results.iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Validation(format!("failed checks: {}", failed.join(", "))))
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Epsilon(a) => cmd_epsilon(a),
        Command::Reflect(a) => cmd_reflect(a),
        Command::Fdenom(a) => cmd_fdenom(a),
        Command::Pole(a) => cmd_pole(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Validate(a) => cmd_validate(a),
    };
    match result {
        Ok(()) | Err(Failure::BrokenPipe) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Domain(m)) => {
            eprintln!("error: {m}");
            EXIT_DOMAIN
        }
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            EXIT_VALIDATION
        }
    }
}
