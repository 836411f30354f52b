use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod render;

use render::Output;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Theta2,
    Theta3,
    Theta4,
    Lambda,
    /// `E_{2k+1,χ}`
    Odd,
    /// `(4/e_{2k}) ĝ_{2k+1}`, i.e. `G_{2k+1}` without the unit `i^{-(2k+1)}`
    G,
    EvenPlus,
    EvenMinus,
}

#[derive(Parser, Debug)]
#[command(name = "gamma2", version, about = "Zeros of level-2 Eisenstein series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Working precision in bits (at least 64)
    #[arg(long, global = true, default_value_t = 128)]
    prec: u32,
    /// Series truncation in units of q^(1/8) (at least 64)
    #[arg(long, global = true, default_value_t = 256)]
    trunc: i64,
    /// Lattice pairs with c² + d² ≤ n-max are summed
    #[arg(long = "n-max", global = true, default_value_t = 10_000)]
    n_max: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// p_{2k+1}(λ) from the recursion and from the q-series oracle
    Polys {
        #[arg(long = "k-max", default_value_t = 5)]
        k_max: usize,
    },
    /// Refined real zeros of p_{2k+1}, ascending
    Roots {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Certified signs of Im F_{2k+1} along the arc
    Scan {
        #[arg(long)]
        k: usize,
        /// Defaults to 0.05π
        #[arg(long = "theta-lo")]
        theta_lo: Option<f64>,
        /// Defaults to 0.95π
        #[arg(long = "theta-hi")]
        theta_hi: Option<f64>,
        /// Defaults to eight points per zero spacing
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Disjointness and separation of the weight 2k-1 and 2k+1 zero intervals
    Interlace {
        #[arg(long)]
        k: usize,
    },
    /// Zero-sum and L-value identities for k = 0..=k-max
    Identities {
        #[arg(long = "k-max", default_value_t = 5)]
        k_max: usize,
    },
    /// Coefficient dump on the q^(1/8) grid
    Series {
        #[arg(value_enum)]
        which: Which,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub trunc: i64,
    pub n_max: u64,
    pub output_format: Format,
    pub out_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.precision_bits < 64 {
            return Err(format!("--prec must be at least 64, got {}", self.precision_bits));
        }
        if self.trunc < 64 {
            return Err(format!("--trunc must be at least 64, got {}", self.trunc));
        }
        if self.n_max < 1 {
            return Err("--n-max must be at least 1".into());
        }
        Ok(())
    }
}

fn emit(cfg: &RunConfig, out: &Output) -> std::io::Result<()> {
    let body = match cfg.output_format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&out.json).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Csv => out.csv.clone(),
        Format::Text => out.text.clone(),
    };
    if let Some(summary) = &out.summary {
        if cfg.output_format == Format::Csv {
            eprintln!("{summary}");
        }
    }
    match &cfg.out_path {
        Some(p) => fs::write(p, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        precision_bits: cli.prec,
        trunc: cli.trunc,
        n_max: cli.n_max,
        output_format: cli.format,
        out_path: cli.out,
    };
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = match cli.command {
        Command::Polys { k_max } => commands::polys(&cfg, k_max),
        Command::Roots { k, tol } => commands::roots(&cfg, k, tol),
        Command::Scan {
            k,
            theta_lo,
            theta_hi,
            grid,
        } => commands::scan(&cfg, k, theta_lo, theta_hi, grid),
        Command::Interlace { k } => commands::interlace(&cfg, k),
        Command::Identities { k_max } => commands::identities(&cfg, k_max),
        Command::Series { which, k } => commands::series(&cfg, which, k),
    };
    let out = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cfg, &out) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
