use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use susy_qubit::config::parse_config;
use susy_qubit::csv::{emit_csv, write_csv};
use susy_qubit::integrator::convergence_report;
use susy_qubit::observables::{
    inversion_minimum, transitions_below, wdot_identity_residual, wdot_tolerance,
};
use susy_qubit::scenario::{
    magnitude_cap_from_env, preset, run, DEFAULT_DT, MAG_CAP_ENV, PRESET_NAMES, PRESET_VERSION,
    VALIDATION_DT,
};
use susy_qubit::{Method, Scenario, Trajectory};

/// Exact and RK4 dynamics of a non-Hermitian qubit driven by a supersymmetric
/// complex superpotential.
#[derive(Parser)]
#[command(name = "susy-qubit", version, after_help = format!(
    "The {MAG_CAP_ENV} environment variable overrides the pole/overflow magnitude cap (default 1e12).\n\
     Exit codes: 0 success, 1 usage or runtime error, 2 validation tolerance exceeded."
))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a trajectory as CSV.
    Simulate {
        #[command(flatten)]
        source: Source,
        /// analytic, rk4 or both (both writes the analytic trajectory and
        /// reports deviations on stderr).
        #[arg(long, default_value = "analytic")]
        method: Method,
        #[command(flatten)]
        grid: GridFlags,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the closed form with RK4 on the scenario grid.
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        grid: GridFlags,
        /// Maximum allowed amplitude deviation.
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// RK4 error against the closed form at successively halved steps.
    Convergence {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4e-3)]
        base_dt: f64,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long)]
        t_max: Option<f64>,
    },
    /// Print the resolved scenario.
    Describe {
        #[command(flatten)]
        source: Source,
    },
    /// List the built-in presets.
    Presets,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in preset: decaying, hyperbolic or trigonometric.
    #[arg(long)]
    scenario: Option<String>,
    /// JSON configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GridFlags {
    /// Step size (default 1e-3 for simulate, 1e-4 for validate).
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
}

fn load(source: &Source) -> anyhow::Result<Scenario> {
    let scenario = match (&source.scenario, &source.config) {
        (Some(name), None) => preset(name)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read {}", path.display()))?;
            parse_config(&text).with_context(|| format!("in {}", path.display()))?
        }
        _ => bail!("exactly one of --scenario or --config is required"),
    };
    Ok(scenario.with_magnitude_cap(magnitude_cap_from_env()?)?)
}

fn apply_grid(
    mut scenario: Scenario,
    grid: &GridFlags,
    default_dt: Option<f64>,
) -> anyhow::Result<Scenario> {
    if let Some(t_max) = grid.t_max {
        scenario = scenario.with_t_max(t_max)?;
    }
    if let Some(dt) = grid.dt.or(default_dt) {
        scenario = scenario.with_dt(dt)?;
    }
    Ok(scenario)
}

fn simulate(scenario: &Scenario, method: Method, output: Option<&PathBuf>) -> anyhow::Result<()> {
    let out = run(scenario, method)?;
    if let Some(dev) = &out.deviation {
        eprintln!("max deviation analytic vs rk4:");
        for (column, value) in dev.rows() {
            eprintln!("  {column:<3} {value:.3e}");
        }
    }
    match output {
        Some(path) => emit_csv(out.primary(), path)?,
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            write_csv(out.primary(), &mut w)
                .and_then(|_| w.flush())
                .context("writing CSV to stdout")?;
        }
    }
    Ok(())
}

fn wdot_summary(traj: &Trajectory, dt: f64) -> (f64, f64) {
    let mut worst = 0.0f64;
    let mut ratio = 0.0f64;
    for i in 1..traj.len().saturating_sub(1) {
        if let Ok(r) = wdot_identity_residual(traj, i) {
            worst = worst.max(r);
            ratio = ratio.max(r / wdot_tolerance(dt, traj.points[i].w));
        }
    }
    (worst, ratio)
}

fn validate(scenario: &Scenario, tolerance: f64) -> anyhow::Result<bool> {
    let out = run(scenario, Method::Both)?;
    let dev = out
        .deviation
        .expect("both methods produce a deviation report");
    let analytic = out.analytic.as_ref().expect("analytic trajectory");
    println!(
        "scenario {} on [{}, {}] with dt = {} ({} points)",
        scenario.name,
        scenario.t_min(),
        scenario.t_max(),
        scenario.dt(),
        analytic.len()
    );
    println!("max deviation analytic vs rk4:");
    for (column, value) in dev.rows() {
        println!("  {column:<3} {value:.3e}");
    }
    let (wdot, wdot_ratio) = wdot_summary(analytic, scenario.dt());
    println!("W-dot identity: max residual {wdot:.3e} (max residual/tolerance {wdot_ratio:.3})");
    if let Some(m) = inversion_minimum(analytic) {
        println!(
            "min W = {:.6} at t = {:.4} (bracket [{:.4}, {:.4}])",
            m.w, m.t, m.bracket.0, m.bracket.1
        );
    }
    let near_ground = transitions_below(analytic, -1.0 + 2e-3);
    println!("times with W <= -0.998: {}", near_ground.len());
    let max_p = analytic.points.iter().map(|p| p.p).fold(0.0, f64::max);
    println!("max P = {max_p:.6}");
    let ok = dev.max_amplitude() <= tolerance && wdot_ratio <= 1.0;
    println!(
        "{}: max amplitude deviation {:.3e} (tolerance {tolerance:e})",
        if ok { "PASS" } else { "FAIL" },
        dev.max_amplitude()
    );
    Ok(ok)
}

fn convergence(
    scenario: &Scenario,
    base_dt: f64,
    levels: usize,
    t_max: Option<f64>,
) -> anyhow::Result<bool> {
    let t_max = t_max.unwrap_or(scenario.t_max());
    let report = convergence_report(
        &scenario.params,
        &scenario.initial_state()?,
        base_dt,
        levels,
        t_max,
    )?;
    println!("{:>12}  {:>12}  {:>8}", "dt", "max error", "order");
    let mut ok = true;
    for level in &report {
        let order = match (level.observed_order, level.floor_saturated) {
            (_, true) => "floor".to_string(),
            (Some(o), false) => {
                ok &= (3.5..=4.5).contains(&o);
                format!("{o:.3}")
            }
            (None, false) => "-".to_string(),
        };
        println!(
            "{:>12.4e}  {:>12.4e}  {:>8}",
            level.dt, level.max_error, order
        );
    }
    if report.iter().any(|l| l.floor_saturated) {
        println!("note: errors at the rounding floor carry no order information");
    }
    println!(
        "{}: observed orders within [3.5, 4.5]",
        if ok { "PASS" } else { "FAIL" }
    );
    Ok(ok)
}

fn presets() -> anyhow::Result<()> {
    println!("presets (version {PRESET_VERSION}):");
    for name in PRESET_NAMES {
        let s = preset(name)?;
        let p = &s.params;
        println!(
            "  {name:<14} k = {:<6} theta = {:<6} phi = {:<6} t in [{}, {}]  initial: {}",
            p.k(),
            p.theta(),
            p.phi(),
            s.t_min(),
            s.t_max(),
            s.initial.rule_name()
        );
    }
    println!("default dt: {DEFAULT_DT} (simulate), {VALIDATION_DT} (validate)");
    Ok(())
}

fn dispatch(cli: Cli) -> anyhow::Result<ExitCode> {
    let verdict = |ok: bool| {
        if ok {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(2)
        }
    };
    match cli.command {
        Command::Simulate {
            source,
            method,
            grid,
            output,
        } => {
            let scenario = apply_grid(load(&source)?, &grid, None)?;
            simulate(&scenario, method, output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate {
            source,
            grid,
            tolerance,
        } => {
            let scenario = apply_grid(load(&source)?, &grid, Some(VALIDATION_DT))?;
            Ok(verdict(validate(&scenario, tolerance)?))
        }
        Command::Convergence {
            source,
            base_dt,
            levels,
            t_max,
        } => {
            let scenario = load(&source)?;
            Ok(verdict(convergence(&scenario, base_dt, levels, t_max)?))
        }
        Command::Describe { source } => {
            print!("{}", load(&source)?.describe());
            Ok(ExitCode::SUCCESS)
        }
        Command::Presets => {
            presets()?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
