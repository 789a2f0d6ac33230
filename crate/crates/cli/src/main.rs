use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ybx_core::complex::{CoefficientSystem, ComplexVariant};
use ybx_core::{Ring, Solution};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "ybx", version, about = "Homology and structure checks for set-theoretic Yang-Baxter solutions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Built-in solution, e.g. flip_3, dihedral_5, conj_s3.
    #[arg(long, conflicts_with = "file")]
    builtin: Option<String>,
    /// Solution file (text, JSON or rack table).
    #[arg(long)]
    file: Option<PathBuf>,
}

impl Source {
    /// Loads without validation; callers decide what to do with invalid tables.
    pub fn load(&self) -> Result<Solution> {
        match (&self.builtin, &self.file) {
            (Some(name), None) => Ok(Solution::builtin(name)?),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                Ok(ybx_core::io::parse_solution(&text, false).with_context(|| format!("parsing {}", path.display()))?)
            }
            _ => bail!("give exactly one of --builtin or --file"),
        }
    }

    pub fn load_valid(&self) -> Result<Solution> {
        let sol = self.load()?;
        if let Some(e) = sol.diagnose().first_error() {
            bail!("not a solution: {e}");
        }
        Ok(sol)
    }
}

#[derive(Args, Debug, Clone)]
pub struct Algebra {
    /// Z, Q, GF:p, ZT, or ZT:t for integers with the twist specialized to t.
    #[arg(long, default_value = "Z")]
    ring: String,
    /// trivial, twisted (needs ZT or ZT:t) or twisted:t.
    #[arg(long, default_value = "trivial")]
    coeff: String,
    /// full, fixpairs, invo, orbitsums:N or custom (with --custom-w).
    #[arg(long, default_value = "full")]
    variant: String,
    /// JSON list of degree-2 vectors of length n², indexed x·n+y.
    #[arg(long)]
    custom_w: Option<PathBuf>,
}

pub struct Resolved {
    pub ring: Ring,
    pub coeff: CoefficientSystem,
    pub variant: ComplexVariant,
}

impl Algebra {
    pub fn resolve(&self) -> Result<Resolved> {
        let (ring, twist) = match self.ring.trim().strip_prefix("ZT:") {
            Some(t) => (Ring::Integers, Some(t.parse::<i64>().with_context(|| format!("bad twist `{t}`"))?)),
            None => (self.ring.parse::<Ring>()?, None),
        };
        let coeff = match self.coeff.trim() {
            "trivial" => CoefficientSystem::Trivial,
            "twisted" => match (ring, twist) {
                (Ring::IntPolys, _) => CoefficientSystem::Twisted(ring.variable().unwrap()),
                (_, Some(t)) => CoefficientSystem::Twisted(ring.from_i64(t)),
                _ => bail!("bare `twisted` needs --ring ZT or ZT:t; otherwise use twisted:t"),
            },
            other => match other.strip_prefix("twisted:").map(str::parse::<i64>) {
                Some(Ok(t)) => CoefficientSystem::Twisted(ring.from_i64(t)),
                _ => bail!("unknown coefficient system `{other}`"),
            },
        };
        let variant = if self.variant.trim() == "custom" {
            let path = self.custom_w.as_ref().context("--variant custom needs --custom-w")?;
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ComplexVariant::CustomW(serde_json::from_str(&text).context("custom vectors must be a JSON list of integer lists")?)
        } else {
            self.variant.parse::<ComplexVariant>().map_err(anyhow::Error::msg)?
        };
        Ok(Resolved { ring, coeff, variant })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the braid relation and bijectivity, and classify the solution.
    Validate {
        #[command(flatten)]
        source: Source,
    },
    /// Homology (or cohomology) of k ⊗ B ⊗ k and its quotients.
    Homology {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long = "max", default_value_t = 3)]
        max_degree: usize,
        #[arg(long)]
        cohomology: bool,
        /// Instead, the homology of the quotient algebra itself, by word
        /// length up to this bound (field rings only).
        #[arg(long)]
        bimodule: Option<usize>,
    },
    /// Run every structural check on the solution.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long = "max", default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Prime field for the cup-product checks.
        #[arg(long, default_value = "GF:3")]
        ring: String,
    },
    /// Bases of cocycles and coboundaries in one degree.
    Cocycles {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        algebra: Algebra,
        #[arg(long = "deg")]
        degree: usize,
    },
    /// Cup product of two cochain files.
    Cup {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Dimensions of the Nichols algebra of (V, −σ).
    Nichols {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "Q")]
        ring: String,
        #[arg(long = "max", default_value_t = 4)]
        max_degree: usize,
    },
    /// Comparison map to the bar complex and symmetrizer identities.
    Compare {
        #[command(flatten)]
        source: Source,
        #[arg(long = "max", default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Homology of the image of the comparison map, by word length. Reported only.
    Experiment {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "Q")]
        ring: String,
        #[arg(long, default_value_t = 3)]
        max_length: usize,
    },
}

/// A command either succeeds (`true`) or reports a verification failure.
type Outcome = Result<bool>;

fn run(cli: Cli) -> Outcome {
    let out = commands::Output { format: cli.format };
    match cli.command {
        Command::Validate { source } => commands::validate(&out, &source),
        Command::Homology { source, algebra, max_degree, cohomology, bimodule } => {
            commands::homology(&out, &source, &algebra, max_degree, cohomology, bimodule)
        }
        Command::Verify { source, max_degree, samples, ring } => {
            commands::verify(&out, &source, max_degree, samples, &ring, cli.seed)
        }
        Command::Cocycles { source, algebra, degree } => commands::cocycles(&out, &source, &algebra, degree),
        Command::Cup { source, f, g, ring } => commands::cup(&out, &source, &f, &g, &ring),
        Command::Nichols { source, ring, max_degree } => commands::nichols(&out, &source, &ring, max_degree),
        Command::Compare { source, max_degree, samples } => {
            commands::compare(&out, &source, max_degree, samples, cli.seed)
        }
        Command::Experiment { source, ring, max_length } => commands::experiment(&out, &source, &ring, max_length),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = std::env::var("YBX_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
