mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use config::RunConfig;
use std::path::PathBuf;
use std::process::ExitCode;

const CHECKS: &str = "\
Checks (ids as they appear in report.json):
  tables
    table.row{1..7}.{derived,transcribed}  boundary contribution rows vs displayed values (row 3 is a known discrepancy, warn)
    table.row3.engine_value               row 3 equals 3/8 R^2 - 6|tau|^2
    table.w2_minus_row                    the W2- row contributes nothing
    table.end_to_end.{derived,transcribed}  weighted row sum = -3 (R^2/16 - 5/2 |tau|^2)
    table.end_to_end.printed_row3         same sum with the displayed row 3 (warn: fails)
    contract.*, curvature.*               contraction examples and model curvature
  gbc-verify
    phi_j.*, metric.*, normal.*, volume.*, kahler.*, sff.*, shape.*, symmetry.*
                                          formal expansion order by order
    gbc.{derived,transcribed}.divergent_{1..4}  growing coefficients of chi(B(r)) vanish
    gbc.*.linear                          no r-linear term
    gbc.*.constant                        constant term = -(1/4 pi^2)(R^2/16 - 5/2 |tau|^2)
    gbc.*.no_tagged_remainder             markers drop out of the constant term
  volume
    volume.<manifold>.{linear,v1_density,leading}  r-coefficient vanishes, e^r and e^2r coefficients
    ch2.{leading,gauge.leading,gauge.v1,radial_oracle,bulk_integrand,scal,holomorphic,curly_v,chi}
                                          complex hyperbolic plane: chi = 1
  anomaly
    conformal.<manifold>.{contact,r_law,tau_law,composition_direct,composition_law}
    conformal.<manifold>.{r_printed,tau_printed}  displayed laws (warn: fail)
    anomaly.<manifold>.{identity,constant,cocycle,homogeneity,zero_direction,linearity,step_order1..3}
  stokes
    stokes.form<k>.{covariant,exterior,wedge,agreement}  three Stokes routes vanish and agree

Exit codes: 0 all checks pass, 1 verification failure, 2 configuration or runtime error.";

#[derive(Parser, Debug)]
#[command(name = "ache", version, about = "Verification runs for the formal Kahler-Einstein expansion engine", after_help = CHECKS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML config; unknown keys are rejected
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// output directory (overrides `out_dir`)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// series truncation in units of e^-r
    #[arg(long, global = true)]
    truncation: Option<i32>,
    #[arg(long, global = true)]
    resolution: Option<usize>,
    /// all, round-s3, berger, heisenberg, conformal-s3, ch2
    #[arg(long, global = true)]
    manifold: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Boundary contribution tables and contraction examples
    Tables,
    /// Divergence cancellation and constant term of chi(B(r))
    GbcVerify,
    /// Volume expansion, linear term, complex hyperbolic model
    Volume,
    /// Transformation laws and the anomaly functional
    Anomaly,
    /// CR Stokes formula by three routes
    Stokes,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Tables => "tables",
            Command::GbcVerify => "gbc-verify",
            Command::Volume => "volume",
            Command::Anomaly => "anomaly",
            Command::Stokes => "stokes",
        }
    }
}

fn load(cli: &Cli) -> Result<RunConfig, config::ConfigError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(o) = &cli.out {
        cfg.out_dir = o.clone();
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(t) = cli.truncation {
        cfg.truncation = t;
    }
    if let Some(r) = cli.resolution {
        cfg.resolution = r;
    }
    if let Some(m) = &cli.manifold {
        cfg.manifold = m.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let run = match cli.command {
        Command::Tables => commands::tables(&cfg),
        Command::GbcVerify => commands::gbc_verify(&cfg),
        Command::Volume => commands::volume(&cfg),
        Command::Anomaly => commands::anomaly(&cfg),
        Command::Stokes => commands::stokes(&cfg),
    };
    let out = match run {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = output::write(cli.command.name(), &cfg, &out) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for r in &out.reports {
        for c in r.failures() {
            eprintln!("FAIL {}: expected {}, got {}", c.id, c.expected, c.computed);
        }
    }
    let n: usize = out.reports.iter().map(|r| r.checks.len()).sum();
    if out.passed() {
        println!("{}: {n} checks passed; artifacts in {}", cli.command.name(), cfg.out_dir.display());
        ExitCode::SUCCESS
    } else {
        println!("{}: verification failed; artifacts in {}", cli.command.name(), cfg.out_dir.display());
        ExitCode::from(1)
    }
}
