//! Command-line driver: scenario files in, CSV and SVG out.
//!
//! Exit codes: 0 success, 2 configuration error, 3 CFL violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dropflow::analysis::{convergence_rate, l1_error_vs_exact};
use dropflow::network::{exact_solution_of, simulate, SchemeKind};
use dropflow::Error as CoreError;
use dropflow_cli::config::{self, ScenarioFile, SchemeName, TableSchemeSection};
use dropflow_cli::output;

#[derive(Parser)]
#[command(
    name = "dropflow",
    version,
    about = "Traffic network solver for fundamental diagrams with a capacity drop"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write trajectory.csv, junctions.csv and
    /// per-snapshot profile plots.
    Run(RunArgs),
    /// Run the scheme-by-width error table of a scenario and write it as CSV.
    Table(TableArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory, created if missing.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    overrides: Overrides,
    /// Echo the effective configuration and exit.
    #[arg(long)]
    print_config: bool,
    /// Skip the SVG profile plots.
    #[arg(long)]
    no_plots: bool,
}

#[derive(Args)]
struct TableArgs {
    /// Scenario file (TOML) with a `[table]` section.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
}

/// Command-line overrides taking precedence over the `[scheme]` section.
#[derive(Args)]
struct Overrides {
    /// Scheme name: splitting, regularized or exact.
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    dx: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
}

enum CliError {
    Config(String),
    Cfl(String),
    Io(String),
}

impl CliError {
    fn report(&self) -> ExitCode {
        match self {
            CliError::Config(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            CliError::Cfl(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
            CliError::Io(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Cfl { lambda, admissible } => CliError::Cfl(format!(
                "CFL violation: lambda {lambda} exceeds the admissible {admissible}"
            )),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<config::ConfigError> for CliError {
    fn from(e: config::ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => cmd_run(args),
        Command::Table(args) => cmd_table(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}

fn load(path: &Path, overrides: &Overrides) -> Result<ScenarioFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut file = ScenarioFile::parse(&text)?;
    if let Some(name) = &overrides.scheme {
        file.scheme.name = match name.as_str() {
            "splitting" => SchemeName::Splitting,
            "regularized" => SchemeName::Regularized,
            "exact" | "exact_reference" => SchemeName::Exact,
            other => return Err(CliError::Config(format!("unknown scheme `{other}`"))),
        };
    }
    if let Some(eps) = overrides.epsilon {
        file.scheme.epsilon = Some(eps);
    }
    if let Some(lambda) = overrides.lambda {
        file.scheme.lambda = lambda;
    }
    if let Some(dx) = overrides.dx {
        file.scheme.dx = dx;
    }
    if let Some(t) = overrides.t_end {
        file.scheme.t_end = t;
    }
    Ok(file)
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let file = load(&args.config, &args.overrides)?;
    if args.print_config {
        print!("{}", file.to_toml());
        return Ok(());
    }
    let (network, cfg) = file.build()?;
    let traj = simulate(&network, &cfg)?;

    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", args.out.display())))?;
    write(
        &args.out.join("trajectory.csv"),
        &output::trajectory_csv(&network, &traj),
    )?;
    write(
        &args.out.join("junctions.csv"),
        &output::junctions_csv(&traj),
    )?;

    if !args.no_plots {
        // Overlay the exact solution where one exists (single junction,
        // constant data); otherwise plot the numeric profile alone.
        let exact = exact_solution_of(&network).ok();
        let overlay = exact.as_ref().map(|(sol, ports)| (sol, ports.as_slice()));
        for (k, snap) in traj.snapshots.iter().enumerate() {
            let name = format!("profile_t{}.svg", output::time_tag(snap.time));
            write(
                &args.out.join(name),
                &output::profile_svg(&network, &traj, k, overlay),
            )?;
        }
    }
    println!(
        "wrote {} snapshots, {} junction-step records to {}",
        traj.snapshots.len(),
        traj.traces.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_table(args: TableArgs) -> Result<(), CliError> {
    let file = load(&args.config, &args.overrides)?;
    let table = file
        .table
        .clone()
        .ok_or_else(|| CliError::Config("missing [table] section".into()))?;
    if table.dx.is_empty() || table.schemes.is_empty() {
        return Err(CliError::Config(
            "[table] needs nonempty `dx` and `schemes`".into(),
        ));
    }

    let scenario_name = args
        .config
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "scenario".into());

    let mut csv = String::from("scenario,scheme,lambda_or_epsilon,dx,l1_error\n");
    for scheme in &table.schemes {
        let (kind, lambda, label, parameter) = table_scheme(scheme)?;
        let mut pairs = Vec::new();
        for &dx in &table.dx {
            let (network, mut cfg) = file.build()?;
            cfg.scheme = kind;
            cfg.lambda = lambda;
            cfg.dx = dx;
            cfg.record_traces = false;
            cfg.output_times.clear();
            let traj = simulate(&network, &cfg)?;
            let (sol, ports) = exact_solution_of(&network)?;
            let err = l1_error_vs_exact(&traj, &sol, &ports, cfg.t_end)?;
            pairs.push((dx, err));
            csv.push_str(&format!("{scenario_name},{label},{parameter},{dx},{err}\n"));
        }
        // A single-width grid is legal; it just has no rate to fit.
        if pairs.len() >= 2 {
            let rate = convergence_rate(&pairs)?;
            csv.push_str(&format!("{scenario_name},{label},{parameter},CR,{rate}\n"));
        }
    }

    match &args.out {
        Some(path) => write(path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}

fn table_scheme(
    scheme: &TableSchemeSection,
) -> Result<(SchemeKind, f64, &'static str, f64), CliError> {
    Ok(match scheme.name {
        SchemeName::Splitting => {
            let lambda = scheme
                .lambda
                .ok_or_else(|| CliError::Config("[table] splitting entry needs `lambda`".into()))?;
            (SchemeKind::Splitting, lambda, "splitting", lambda)
        }
        SchemeName::Regularized => {
            let eps = scheme.epsilon.ok_or_else(|| {
                CliError::Config("[table] regularized entry needs `epsilon`".into())
            })?;
            // The baseline preset ties the grid constant to the width.
            let lambda = scheme.lambda.unwrap_or(eps);
            (
                SchemeKind::Regularized { epsilon: eps },
                lambda,
                "regularized",
                eps,
            )
        }
        SchemeName::Exact => {
            return Err(CliError::Config(
                "[table] entries must be splitting or regularized".into(),
            ))
        }
    })
}
