use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use wres_cli::commands::{self, Outcome, RwInputs};
use wres_cli::json::render;
use wres_core::clifford::AlgebraSignature;

#[derive(Parser)]
#[command(name = "wres", version, about = "Exact noncommutative-residue and heat-coefficient computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every case of a registered boundary scenario.
    VerifyBoundary {
        /// Total dimension of the foliation.
        #[arg(long)]
        dim: usize,
        /// Operator powers as `p1,p2`.
        #[arg(long, value_parser = parse_pair_usize)]
        powers: (usize, usize),
        /// Leaf dimension of the Clifford signature (only where the scenario allows it).
        #[arg(long, requires = "q")]
        p: Option<usize>,
        /// Transversal dimension of the Clifford signature.
        #[arg(long, requires = "p")]
        q: Option<usize>,
        /// Write the JSON report here (`-` for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Heat coefficients from a flat `key = value` curvature document.
    Heat {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Spectral-action coefficients and lower volumes of `[a,b] x_f M`.
    Rw {
        /// Warp function of `t`.
        #[arg(long)]
        f: String,
        /// Interval as `a,b`.
        #[arg(long, value_parser = parse_pair_f64, allow_hyphen_values = true)]
        interval: (f64, f64),
        /// Sectional curvature of the three-dimensional base.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        curv: f64,
        /// Volume of the base.
        #[arg(long, default_value_t = 1.0)]
        base_vol: f64,
        /// Energy scale for the spectral action with cutoff `exp(-s)`.
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Randomized oracle suite.
    Oracle {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected two comma-separated values, got `{s}`"))?;
    let parse = |x: &str| x.trim().parse::<T>().map_err(|_| format!("malformed value `{x}`"));
    Ok((parse(a)?, parse(b)?))
}

fn parse_pair_usize(s: &str) -> Result<(usize, usize), String> {
    parse_pair(s)
}

fn parse_pair_f64(s: &str) -> Result<(f64, f64), String> {
    parse_pair(s)
}

fn emit(outcome: &Outcome, json: Option<&PathBuf>, started: Instant) -> Result<(), String> {
    let rendered = render(&outcome.json);
    match json {
        Some(p) if p.as_os_str() == "-" => print!("{rendered}"),
        Some(p) => {
            std::fs::write(p, rendered).map_err(|e| format!("cannot write {}: {e}", p.display()))?;
            print!("{}", outcome.text);
        }
        None => print!("{}", outcome.text),
    }
    eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());
    Ok(())
}

fn run(cli: Cli) -> Result<bool, String> {
    let started = Instant::now();
    let (outcome, json) = match cli.command {
        Command::VerifyBoundary { dim, powers, p, q, json } => {
            let sig = p.zip(q).map(|(p, q)| AlgebraSignature::new(p.min(21), q.min(21)));
            (commands::verify_boundary(dim, powers, sig).map_err(|e| e.to_string())?, json)
        }
        Command::Heat { config, json } => {
            let text = std::fs::read_to_string(&config).map_err(|e| format!("cannot read {}: {e}", config.display()))?;
            (commands::heat(&text).map_err(|e| e.to_string())?, json)
        }
        Command::Rw { f, interval, curv, base_vol, lambda, json } => {
            let inputs = RwInputs { f, interval, curv, base_vol, lambda };
            (commands::rw(&inputs).map_err(|e| e.to_string())?, json)
        }
        Command::Oracle { seed, count, json } => (commands::oracle(seed, count), json),
    };
    emit(&outcome, json.as_ref(), started)?;
    Ok(outcome.pass)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
