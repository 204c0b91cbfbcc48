use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use kg_uniform::checks::{acceptance_suite, sweep_verdict, Tolerances};
use kg_uniform::harness::{emit, run_sweep_report, ErrorVariable, ExponentRange, OutputFormat, SweepConfig, PAPER_C_LIST, PAPER_MODES};
use kg_uniform::integrators::SchemeId;
use kg_uniform::{KgError, Result};

#[derive(Parser)]
#[command(name = "kg-uniform", version, about = "Uniformly accurate integrators for the cubic Klein-Gordon equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convergence sweep over schemes, speeds of light and step sizes.
    Sweep(SweepArgs),
    /// Runs the acceptance suite and prints a pass/fail report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// TOML file with sweep settings; flags override its keys.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated schemes: uei1, uei1_real, uei2, lie, strang, largec_uei1.
    #[arg(long, value_delimiter = ',')]
    schemes: Option<Vec<SchemeId>>,
    /// Comma-separated speeds of light.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    c: Option<Vec<f64>>,
    /// Exponents m of tau = T 2^-m, e.g. 4..12.
    #[arg(long = "tau-exp")]
    tau_exp: Option<ExponentRange>,
    /// Final time.
    #[arg(long = "T")]
    horizon: Option<f64>,
    /// Largest Fourier mode; the grid has 2K points.
    #[arg(long = "K")]
    modes: Option<usize>,
    /// Sobolev order of the error norm.
    #[arg(long)]
    r: Option<f64>,
    /// Published setting: nine speeds of light, K = 512, tau exponents 4..12.
    #[arg(long)]
    paper: bool,
    /// Output file; the table goes to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Measure the error on u_* instead of the reconstructed z.
    #[arg(long)]
    twisted: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// TOML file overriding the default tolerances.
    #[arg(long)]
    tolerances: Option<PathBuf>,
}

impl SweepArgs {
    fn resolve(self) -> Result<SweepConfig> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::from_file(path)?,
            None => SweepConfig::default(),
        };
        if self.paper {
            cfg.c_list = PAPER_C_LIST.to_vec();
            cfg.modes = PAPER_MODES;
            cfg.tau_exponents = SweepConfig::paper().tau_exponents;
        }
        if let Some(v) = self.schemes {
            cfg.schemes = v;
        }
        if let Some(v) = self.c {
            cfg.c_list = v;
        }
        if let Some(v) = self.tau_exp {
            cfg.tau_exponents = v;
        }
        if let Some(v) = self.horizon {
            cfg.horizon = v;
        }
        if let Some(v) = self.modes {
            cfg.modes = v;
        }
        if let Some(v) = self.r {
            cfg.r = v;
        }
        if let Some(v) = self.out {
            cfg.output_path = Some(v);
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if self.twisted {
            cfg.error_variable = ErrorVariable::Twisted;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn sweep(args: SweepArgs) -> Result<bool> {
    let cfg = args.resolve()?;
    let report = run_sweep_report(&cfg)?;
    for r in &report.references {
        match &r.certificate {
            Ok(cert) => eprintln!("reference c={}: certificate {cert:.3e}", r.c),
            Err(msg) => eprintln!("reference c={}: {msg}", r.c),
        }
    }
    for f in &report.table.fitted_orders {
        eprintln!("order {} c={}: {:.4} ({} points)", f.scheme, f.c, f.order, f.points);
    }
    match &cfg.output_path {
        Some(path) => emit(&report.table, cfg.format, path)?,
        None => print!("{}", report.table.render(cfg.format)),
    }
    let verdicts = sweep_verdict(&report.table, &Tolerances::default());
    for v in &verdicts {
        eprintln!("{v}");
    }
    Ok(verdicts.iter().all(|v| v.passed))
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let tol = match &args.tolerances {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| KgError::Io {
                path: path.clone(),
                source,
            })?;
            Tolerances::from_toml_str(&text)?
        }
        None => Tolerances::default(),
    };
    let outcomes = acceptance_suite(&tol);
    for (i, o) in outcomes.iter().enumerate() {
        println!("[{}] {o}", i + 1);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("{} passed, {failed} failed", outcomes.len() - failed);
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
