//! `blcsim`: simulations, consistency sweeps, Bell harness and diagrams.
//!
//! Exit codes: 0 success, 1 failed verdict or runtime error, 2 bad input,
//! 3 infeasible geometry.

use blcsim::collapse::{inconsistency_scan, CollapsePolicy};
use blcsim::diagram::{diagram_spec, parse_frame, render_svg};
use blcsim::quantum::{chsh_value, optimal_axes, LHV_BOUND};
use blcsim::scenario::{
    consistency_report, parse_axis_list, parse_config, parse_grid, render_scan, run_ensemble, run_trials, schema,
    standard_policies, ScenarioConfig,
};
use blcsim::Error;
use clap::{Parser, Subcommand};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "blcsim", version, about = "Spacelike spin measurements with pluggable collapse surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the trials of a scenario and write logs and statistics.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trials: Option<u64>,
        /// Overrides the seed of the config file.
        #[arg(long, env = "SIM_SEED")]
        seed: Option<u64>,
        /// Directory for trials.log, stats.txt and config.cfg; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep a collapse policy over a (rapidity, decision time) grid.
    Check {
        /// inst, plane:<slope> or blc
        #[arg(long)]
        policy: String,
        /// start:stop:count
        #[arg(long, allow_hyphen_values = true)]
        zeta_grid: String,
        /// start:stop:count
        #[arg(long, allow_hyphen_values = true)]
        time_grid: String,
        /// Also compare against the standard set of policies.
        #[arg(long)]
        all: bool,
    },
    /// Monte Carlo CHSH estimate on the singlet.
    Bell {
        /// `optimal`, or four axes "(x,y,z), ..." for a, a', b, b'
        #[arg(long, default_value = "optimal")]
        axes: String,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, env = "SIM_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Draw the scenario as an SVG spacetime diagram.
    Diagram {
        #[arg(long)]
        config: PathBuf,
        /// A, B or zeta:<v>
        #[arg(long, default_value = "A")]
        frame: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the accepted configuration keys as JSON.
    ConfigSchema,
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_config_error() {
            2
        } else if e.is_geometry_error() {
            3
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: 1,
        message: format!("{}: {e}", path.display()),
    }
}

fn load_config(path: &Path) -> Result<ScenarioConfig, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read config {}: {e}", path.display()),
    })?;
    Ok(parse_config(&text)?)
}

fn simulate(config: &Path, trials: Option<u64>, seed: Option<u64>, out: Option<&Path>) -> Result<u8, Failure> {
    let mut cfg = load_config(config)?;
    if let Some(n) = trials {
        cfg.trials = n;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    cfg.validate()?;
    let logs = run_trials(&cfg)?;
    let mut log_text = String::new();
    for log in &logs {
        log_text.push_str(&log.to_text()?);
    }
    let stats = run_ensemble(&cfg)?.to_string();
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
            for (name, body) in [("config.cfg", cfg.to_text()), ("trials.log", log_text), ("stats.txt", stats)] {
                let p = dir.join(name);
                fs::write(&p, body).map_err(|e| io_failure(&p, e))?;
            }
        }
        None => {
            let mut o = std::io::stdout().lock();
            let _ = write!(o, "{log_text}{stats}");
        }
    }
    Ok(0)
}

fn check(policy: &str, zeta_grid: &str, time_grid: &str, all: bool) -> Result<u8, Failure> {
    let policy = CollapsePolicy::parse_tag(policy).map_err(|e| Failure {
        code: 2,
        message: e.to_string(),
    })?;
    let zetas = parse_grid(zeta_grid)?;
    let times = parse_grid(time_grid)?;
    let scan = inconsistency_scan(policy, &zetas, &times);
    print!("{}", render_scan(&scan));
    if all {
        println!();
        print!("{}", consistency_report(&standard_policies(Some(policy)), &zetas, &times)?);
    }
    if scan.all_consistent() {
        println!("verdict: consistent");
        Ok(0)
    } else {
        println!("verdict: inconsistent");
        Ok(1)
    }
}

fn bell(axes: &str, trials: u64, seed: u64) -> Result<u8, Failure> {
    let (a, b) = if axes.trim() == "optimal" {
        optimal_axes()
    } else {
        let v = parse_axis_list(axes)?;
        match v[..] {
            [a0, a1, b0, b1] => ([a0, a1], [b0, b1]),
            _ => {
                return Err(Failure {
                    code: 2,
                    message: format!("--axes needs four axes (a, a', b, b'), got {}", v.len()),
                })
            }
        }
    };
    if trials == 0 {
        return Err(Failure {
            code: 2,
            message: "--trials must be at least 1".into(),
        });
    }
    let r = chsh_value(&a, &b, trials, seed)?;
    println!("trials\t{trials}");
    println!("seed\t{seed}");
    println!("estimate\t{:.6}", r.estimate);
    println!("standard_error\t{:.6}", r.standard_error);
    println!("analytic\t{:.6}", r.analytic);
    println!("lhv_bound\t{LHV_BOUND}");
    println!("violation_margin\t{:.6}", r.violation_margin());
    Ok(0)
}

fn diagram(config: &Path, frame: &str, out: &Path) -> Result<u8, Failure> {
    let cfg = load_config(config)?;
    let zeta = parse_frame(frame, &cfg)?;
    let svg = render_svg(&diagram_spec(&cfg, zeta)?);
    fs::write(out, svg).map_err(|e| io_failure(out, e))?;
    Ok(0)
}

fn config_schema() -> Result<u8, Failure> {
    let keys: Vec<_> = schema()
        .into_iter()
        .map(|k| {
            serde_json::json!({
                "section": k.section,
                "key": k.key,
                "type": k.kind,
                "default": k.default,
                "description": k.description,
            })
        })
        .collect();
    let text = serde_json::to_string_pretty(&keys).map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    println!("{text}");
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate {
            config,
            trials,
            seed,
            out,
        } => simulate(config, *trials, *seed, out.as_deref()),
        Command::Check {
            policy,
            zeta_grid,
            time_grid,
            all,
        } => check(policy, zeta_grid, time_grid, *all),
        Command::Bell { axes, trials, seed } => bell(axes, *trials, *seed),
        Command::Diagram { config, frame, out } => diagram(config, frame, out),
        Command::ConfigSchema => config_schema(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("blcsim: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
