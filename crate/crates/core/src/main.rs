use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kacmoody::rational::parse_q;
use kacmoody::reports::{
    casimir_report, highest_weight, minimal_report, mu0_report, obstruct_report, to_json, verify_all, weights_report,
    Table, VerifyConfig,
};
use kacmoody::root_core::{FormSign, RootSystem, SimpleType};
use kacmoody::super_affine::{Outcome, SupportCandidate};

#[derive(Parser)]
#[command(
    name = "kacmoody",
    version,
    about = "Exact weight combinatorics for affine Kac-Moody algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Json, global = true)]
    emit: Emit,

    /// Write the report here instead of stdout. Relative paths are resolved
    /// against the output directory when one is set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Directory for reports; each command writes `<command>.<ext>` there.
    #[arg(long, env = "KACMOODY_OUT_DIR", global = true)]
    out_dir: Option<PathBuf>,

    /// Record wall time per check in verify-all reports.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal dominant weight of every class of the weight lattice modulo the root lattice.
    Minimal {
        #[arg(long = "type")]
        algebra: SimpleType,
    },
    /// Weights and multiplicities of a truncated integrable highest-weight module.
    Weights {
        #[arg(long = "type")]
        algebra: SimpleType,
        #[arg(long)]
        level: Option<i64>,
        /// Highest weight, e.g. "L0 + w1".
        #[arg(long)]
        highest: Option<String>,
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// The floor weight μ0 at δ-coefficient s and its membership in P(λ).
    Mu0 {
        #[arg(long = "type")]
        algebra: SimpleType,
        #[arg(long)]
        highest: Option<String>,
        #[arg(long)]
        level: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Casimir pair values over the truncations of all dominant weights of a level.
    CasimirAudit {
        #[arg(long = "type")]
        algebra: SimpleType,
        #[arg(long, default_value_t = 1)]
        level: u32,
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// Run the obstruction engine on a support file and check the trace.
    Obstruct {
        #[arg(long)]
        spec: Option<String>,
        #[arg(long)]
        support: PathBuf,
    },
    /// Sweep every check over all types up to a rank.
    VerifyAll {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value_t = 2)]
        depth: u32,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Minimal { .. } => "minimal",
            Command::Weights { .. } => "weights",
            Command::Mu0 { .. } => "mu0",
            Command::CasimirAudit { .. } => "casimir-audit",
            Command::Obstruct { .. } => "obstruct",
            Command::VerifyAll { .. } => "verify-all",
        }
    }
}

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONSISTENT: u8 = 3;

struct Rendered {
    text: String,
    code: u8,
}

fn rendered<T: Serialize + Table>(cli: &Cli, body: &T, ok: bool) -> Rendered {
    let text = match cli.emit {
        Emit::Json => to_json(cli.command.name(), body) + "\n",
        Emit::Table => body.table(),
    };
    Rendered {
        text,
        code: if ok { 0 } else { EXIT_CHECK_FAILED },
    }
}

fn positive(t: SimpleType) -> kacmoody::Result<RootSystem> {
    RootSystem::build(t, FormSign::Positive)
}

fn run(cli: &Cli) -> Result<Rendered, String> {
    let out = match &cli.command {
        Command::Minimal { algebra } => {
            let t = minimal_report(*algebra).map_err(|e| e.to_string())?;
            rendered(cli, &t, t.holds)
        }
        Command::Weights {
            algebra,
            level,
            highest,
            depth,
        } => {
            let rs = positive(*algebra).map_err(|e| e.to_string())?;
            let l = highest_weight(&rs, highest.as_deref(), *level).map_err(|e| e.to_string())?;
            let r = weights_report(&rs, &l, *depth).map_err(|e| e.to_string())?;
            rendered(cli, &r, true)
        }
        Command::Mu0 {
            algebra,
            highest,
            level,
            s,
        } => {
            let rs = positive(*algebra).map_err(|e| e.to_string())?;
            let l = highest_weight(&rs, highest.as_deref(), *level).map_err(|e| e.to_string())?;
            let s = parse_q(s).map_err(|e| format!("--s: {e}"))?;
            let r = mu0_report(&rs, &l, &s).map_err(|e| e.to_string())?;
            rendered(cli, &r, r.floor.member)
        }
        Command::CasimirAudit { algebra, level, depth } => {
            let rs = positive(*algebra).map_err(|e| e.to_string())?;
            let r = casimir_report(&rs, *level, *depth).map_err(|e| e.to_string())?;
            rendered(cli, &r, r.holds)
        }
        Command::Obstruct { spec, support } => {
            let text = std::fs::read_to_string(support).map_err(|e| format!("{}: {e}", support.display()))?;
            let candidate: SupportCandidate =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", support.display()))?;
            let r = obstruct_report(&candidate, spec.as_deref()).map_err(|e| e.to_string())?;
            let text = match cli.emit {
                Emit::Json => r.json_lines().join("\n") + "\n",
                Emit::Table => r.table(),
            };
            let code = match (r.check.valid, r.trace.outcome) {
                (false, _) => EXIT_CHECK_FAILED,
                (true, Outcome::Contradiction) => 0,
                (true, Outcome::ConsistentAtDepth) => EXIT_CONSISTENT,
            };
            Rendered { text, code }
        }
        Command::VerifyAll {
            max_rank,
            depth,
            samples,
            seed,
        } => {
            let config = VerifyConfig {
                max_rank: *max_rank,
                depth: *depth,
                samples: *samples,
                seed: *seed,
                timings: cli.timings,
            };
            let r = verify_all(&config).map_err(|e| e.to_string())?;
            rendered(cli, &r, r.passed)
        }
    };
    Ok(out)
}

fn destination(cli: &Cli) -> Option<PathBuf> {
    let ext = match cli.emit {
        Emit::Json if matches!(cli.command, Command::Obstruct { .. }) => "jsonl",
        Emit::Json => "json",
        Emit::Table => "txt",
    };
    match (&cli.output, &cli.out_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{}.{ext}", cli.command.name()))),
        (None, None) => None,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match destination(&cli) {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                if let Err(e) = std::fs::create_dir_all(parent) {
                    eprintln!("error: {}: {e}", parent.display());
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            if let Err(e) = std::fs::write(&path, &out.text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
        }
        None => print!("{}", out.text),
    }
    ExitCode::from(out.code)
}
