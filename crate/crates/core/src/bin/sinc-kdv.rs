use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sinc_kdv::runner::{self, KeyValues};

#[derive(Parser)]
#[command(
    name = "sinc-kdv",
    version,
    about = "Sinc-collocation KdV / KdV-Burgers solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more experiments
    Solve(Box<SolveArgs>),
    /// List the built-in presets
    Presets,
}

#[derive(Args)]
struct SolveArgs {
    /// Preset name, a comma-separated list, or `all`
    #[arg(long)]
    preset: Option<String>,
    /// Flat `key = value` config file (flags override it)
    #[arg(long)]
    config: Option<PathBuf>,
    /// kdv | kdvb
    #[arg(long)]
    equation: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    /// Nonlinearity exponent in u^p u_x (experimental)
    #[arg(long)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    dt: Option<String>,
    /// Final time
    #[arg(long = "T", allow_hyphen_values = true)]
    t_final: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    /// Comma-separated observer times
    #[arg(long)]
    observers: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    jobs: Option<String>,
    /// Run even if the initial amplification matrix has rho > 1
    #[arg(long)]
    no_stability_gate: bool,
    /// Also write an SVG plot per snapshot
    #[arg(long)]
    svg: bool,
}

impl SolveArgs {
    fn key_values(&self) -> KeyValues {
        let mut kv = KeyValues::new();
        let pairs = [
            ("preset", &self.preset),
            ("equation", &self.equation),
            ("epsilon", &self.epsilon),
            ("nu", &self.nu),
            ("mu", &self.mu),
            ("p", &self.p),
            ("a", &self.a),
            ("b", &self.b),
            ("n", &self.n),
            ("dt", &self.dt),
            ("T", &self.t_final),
            ("theta", &self.theta),
            ("observers", &self.observers),
            ("out", &self.out),
            ("jobs", &self.jobs),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                kv.insert(k.to_string(), v.clone());
            }
        }
        if self.no_stability_gate {
            kv.insert("no-stability-gate".into(), "true".into());
        }
        if self.svg {
            kv.insert("svg".into(), "true".into());
        }
        kv
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Presets => {
            print!("{}", runner::list_presets());
            ExitCode::SUCCESS
        }
        Command::Solve(args) => solve(&args),
    }
}

fn solve(args: &SolveArgs) -> ExitCode {
    let configs = match runner::resolve_config(&args.key_values(), args.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(runner::exit_code_for(&e) as u8);
        }
    };
    for cfg in &configs {
        println!("# resolved config: {}", cfg.name);
        print!("{}", cfg.to_config_text());
    }
    let jobs = configs.first().map_or(1, |c| c.jobs);
    let mut worst = 0;
    for (cfg, result) in configs.iter().zip(runner::run_all(&configs, jobs)) {
        match result {
            Ok(art) => {
                for n in &art.notices {
                    eprintln!("[{}] {n}", art.name);
                }
                let s = &art.stability;
                println!(
                    "[{}] rho(P0) = {:.9} ({}), {} records -> {}",
                    art.name,
                    s.rho,
                    if s.stable { "stable" } else { "unstable" },
                    art.records.len(),
                    art.records_csv
                        .parent()
                        .map(|p| p.display().to_string())
                        .unwrap_or_default()
                );
                if let Some(last) = art.records.last() {
                    println!(
                        "[{}] t = {}: L_inf = {:.5e}, L_2 = {:.5e}",
                        art.name, last.t, last.l_inf, last.l_2
                    );
                }
                match &art.status {
                    runner::RunStatus::Success => {}
                    runner::RunStatus::Unstable => eprintln!(
                        "[{}] stability gate: rho = {:.6e} > 1 (use --no-stability-gate to run anyway)",
                        art.name, s.rho
                    ),
                    runner::RunStatus::SolverFailed(msg) => eprintln!("[{}] {msg}", art.name),
                }
                worst = worst.max(art.status.exit_code());
            }
            Err(e) => {
                eprintln!("[{}] error: {e}", cfg.name);
                worst = worst.max(runner::exit_code_for(&e));
            }
        }
    }
    ExitCode::from(worst as u8)
}
