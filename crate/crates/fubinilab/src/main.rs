use clap::{Args, Parser, Subcommand};
use fubinilab::convspace::{enumerate_spaces, ConvSpace};
use fubinilab::harness::{explain_instance, run_suite, AxiomChoice, Suite, SuiteConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "fubinilab",
    about = "Exact verification suite for commutativity of finite convergence-space tensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArgs {
    /// Prime order of the scalar field.
    #[arg(long, default_value_t = 2)]
    field: u64,
    /// Largest carrier of the enumerated base spaces.
    #[arg(long, default_value_t = 2)]
    max_size: usize,
    /// Convergence axioms: limit or down-only.
    #[arg(long, value_enum, default_value_t = AxiomArg::Limit)]
    axioms: AxiomArg,
    /// Largest admissible vector-space carrier.
    #[arg(long, default_value_t = 64)]
    max_carrier: usize,
    /// Completion iteration budget.
    #[arg(long, default_value_t = 8)]
    iteration_budget: usize,
    /// Seed for the randomized oracle instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum AxiomArg {
    Limit,
    DownOnly,
}

impl From<AxiomArg> for AxiomChoice {
    fn from(a: AxiomArg) -> Self {
        match a {
            AxiomArg::Limit => AxiomChoice::Limit,
            AxiomArg::DownOnly => AxiomChoice::DownOnly,
        }
    }
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SuiteArg {
    All,
    Oracle,
    Commute,
    Laws,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Commute => Suite::Commute,
            SuiteArg::Laws => Suite::Laws,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit a JSON-lines report.
    Run {
        #[command(flatten)]
        config: ConfigArgs,
        /// Which group of checks to run.
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Worker thread count; 0 picks the default.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Explain a single instance given two space descriptions.
    Explain {
        /// JSON file describing the first space.
        #[arg(long)]
        x: PathBuf,
        /// JSON file describing the second space.
        #[arg(long)]
        y: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// List the enumerated spaces up to a carrier size.
    Enumerate {
        #[command(flatten)]
        config: ConfigArgs,
    },
}

impl ConfigArgs {
    fn to_config(&self, suite: Suite, jobs: usize, out: Option<&PathBuf>) -> SuiteConfig {
        SuiteConfig {
            field: self.field,
            max_size: self.max_size,
            axioms: self.axioms.into(),
            max_carrier: self.max_carrier,
            iteration_budget: self.iteration_budget,
            suite,
            jobs,
            seed: self.seed,
            out: out.map(|p| p.display().to_string()),
        }
    }
}

fn load_space(path: &PathBuf, cfg: &SuiteConfig) -> Result<ConvSpace, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| format!("bad JSON in {}: {e}", path.display()))?;
    ConvSpace::from_json(&value, cfg.axioms.mode()).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Run { config, suite, jobs, out } => {
            let cfg = config.to_config(suite.into(), jobs, out.as_ref());
            let report = run_suite(&cfg).map_err(|e| e.to_string())?;
            let body = report.to_jsonl().map_err(|e| e.to_string())?;
            match &out {
                Some(path) => std::fs::write(path, &body)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{body}"),
            }
            for check in &report.checks {
                eprintln!(
                    "{}: {} ({})",
                    check.name,
                    if check.passed { "pass" } else { "FAIL" },
                    check.detail
                );
            }
            eprintln!("finished in {} ms", report.timing_ms);
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Explain { x, y, config } => {
            let cfg = config.to_config(Suite::All, 0, None);
            let xs = load_space(&x, &cfg)?;
            let ys = load_space(&y, &cfg)?;
            let text = explain_instance(&xs, &ys, &cfg).map_err(|e| e.to_string())?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { config } => {
            let cfg = config.to_config(Suite::All, 0, None);
            let spaces = enumerate_spaces(cfg.max_size, cfg.axioms.mode())
                .map_err(|e| e.to_string())?;
            for s in &spaces {
                println!("{}", serde_json::to_string(&s.to_json()).map_err(|e| e.to_string())?);
            }
            eprintln!("{} spaces", spaces.len());
            Ok(ExitCode::SUCCESS)
        }
    }
}
