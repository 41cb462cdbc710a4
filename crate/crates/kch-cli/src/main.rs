//! `kch` — build, verify, and count augmentations of the Legendrian DGA of
//! a braid closure.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 budget
//! refusal. Documents go to stdout, diagnostics to stderr.

mod cache;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use kch::augment::{census, is_prime, AugmentationCensus};
use kch::braid::{parse_braid, BraidWord};
use kch::dga::DgaPresentation;
use kch::docs::{AugDocument, DgaDocument, Hc0Document, PhiDocument, VerifyDocument};
use kch::phimap::PhiMatrices;
use kch::Error as KchError;

const DEFAULT_BUDGET: u64 = 50_000_000;
const CACHE_ENV: &str = "KCH_CACHE_DIR";

#[derive(Parser)]
#[command(name = "kch", version, about = "Exact knot contact homology of braid closures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

impl Format {
    fn name(&self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
            Format::Latex => "latex",
        }
    }
}

#[derive(Args)]
struct CommonArgs {
    /// Strand count of the braid group
    #[arg(short = 'n', long = "strands")]
    n: u32,

    /// Braid word: whitespace- or comma-separated signed generator indices
    #[arg(short = 'b', long = "braid", allow_hyphen_values = true)]
    braid: String,

    /// Output format (JSON is the contract format)
    #[arg(long, value_enum, default_value = "json")]
    format: Format,

    /// Cache directory; defaults to $KCH_CACHE_DIR, caching disabled if unset
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

impl CommonArgs {
    fn word(&self) -> Result<BraidWord, KchError> {
        parse_braid(&self.braid, self.n)
    }

    fn cache_dir(&self) -> Option<PathBuf> {
        self.cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the full DGA and emit the presentation document
    Dga {
        #[command(flatten)]
        common: CommonArgs,
        /// Apply the homology-commutative quotient to emitted differentials
        #[arg(long)]
        commutative: bool,
    },
    /// Emit the image table of the braid action and the boundary matrices
    Phi {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the internal identity checks; exit 1 if any fail
    Verify {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Count augmentations into prime fields
    Aug {
        #[command(flatten)]
        common: CommonArgs,
        /// Comma-separated list of primes
        #[arg(short = 'p', long = "primes", value_delimiter = ',')]
        primes: Vec<u64>,
        /// Refuse searches larger than this many assignments
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Emit the degree-0 presentation relations
    Hc0 {
        #[command(flatten)]
        common: CommonArgs,
        /// Apply the homology-commutative quotient to emitted differentials
        #[arg(long)]
        commutative: bool,
    },
}

fn json<T: serde::Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn exit_for(err: &KchError) -> ExitCode {
    match err {
        KchError::BudgetExceeded { .. } => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

struct Cached<'a> {
    dir: Option<PathBuf>,
    key: &'a str,
}

impl Cached<'_> {
    fn get(&self) -> Option<String> {
        let dir = self.dir.as_deref()?;
        cache::lookup(dir, self.key)
    }

    fn put(&self, payload: &str) {
        if let Some(dir) = self.dir.as_deref() {
            if let Err(err) = cache::store(dir, self.key, payload) {
                eprintln!("warning: failed to write cache entry: {err}");
            }
        }
    }
}

fn run() -> Result<ExitCode, (KchError, ExitCode)> {
    let cli = Cli::parse();
    let fail = |err: KchError| {
        let code = exit_for(&err);
        (err, code)
    };

    match cli.command {
        Command::Dga { common, commutative } => {
            let word = common.word().map_err(fail)?;
            let mut extras = Vec::new();
            if commutative {
                extras.push("comm".to_string());
            }
            let key = cache::cache_key(
                cache::ENGINE_VERSION,
                "dga",
                &word,
                common.format.name(),
                &extras,
            );
            let cached = Cached {
                dir: common.cache_dir(),
                key: &key,
            };
            if let Some(payload) = cached.get() {
                print!("{payload}");
                return Ok(ExitCode::SUCCESS);
            }
            let pres = DgaPresentation::build(&word).map_err(fail)?;
            let payload = match common.format {
                Format::Json => json(&DgaDocument::from_presentation(&pres, commutative)),
                Format::Text => render::dga_text(&pres, commutative),
                Format::Latex => render::dga_latex(&pres, commutative),
            };
            cached.put(&payload);
            print!("{payload}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Phi { common } => {
            let word = common.word().map_err(fail)?;
            let key = cache::cache_key(
                cache::ENGINE_VERSION,
                "phi",
                &word,
                common.format.name(),
                &[],
            );
            let cached = Cached {
                dir: common.cache_dir(),
                key: &key,
            };
            if let Some(payload) = cached.get() {
                print!("{payload}");
                return Ok(ExitCode::SUCCESS);
            }
            let payload = match common.format {
                Format::Json => json(&PhiDocument::build(&word).map_err(fail)?),
                Format::Text => {
                    let phi = PhiMatrices::for_braid(&word).map_err(fail)?;
                    render::phi_text(&word, &phi).map_err(fail)?
                }
                Format::Latex => {
                    let phi = PhiMatrices::for_braid(&word).map_err(fail)?;
                    render::phi_latex(&word, &phi).map_err(fail)?
                }
            };
            cached.put(&payload);
            print!("{payload}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { common } => {
            let word = common.word().map_err(fail)?;
            let pres = DgaPresentation::build(&word).map_err(fail)?;
            let report = pres.verify().map_err(fail)?;
            let payload = match common.format {
                Format::Json => json(&VerifyDocument::from_report(&word, &report)),
                Format::Text | Format::Latex => render::verify_text(&word, &report),
            };
            print!("{payload}");
            if report.all_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Aug {
            common,
            primes,
            budget,
        } => {
            let word = common.word().map_err(fail)?;
            if primes.is_empty() {
                return Err(fail(KchError::Document(
                    "at least one prime is required".into(),
                )));
            }
            for &q in &primes {
                if !is_prime(q) {
                    return Err(fail(KchError::NotPrime(q)));
                }
            }
            let extras = vec![format!(
                "p{}",
                primes
                    .iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join("-")
            )];
            let key = cache::cache_key(
                cache::ENGINE_VERSION,
                "aug",
                &word,
                common.format.name(),
                &extras,
            );
            let cached = Cached {
                dir: common.cache_dir(),
                key: &key,
            };
            if let Some(payload) = cached.get() {
                print!("{payload}");
                return Ok(ExitCode::SUCCESS);
            }
            let pres = DgaPresentation::build(&word).map_err(fail)?;
            let censuses: Vec<AugmentationCensus> = primes
                .iter()
                .map(|&q| census(&pres, q, budget))
                .collect::<Result<_, _>>()
                .map_err(fail)?;
            let payload = match common.format {
                Format::Json => json(&AugDocument::build(&pres, &censuses)),
                Format::Text | Format::Latex => render::aug_text(&pres, &censuses),
            };
            cached.put(&payload);
            print!("{payload}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Hc0 { common, commutative } => {
            let word = common.word().map_err(fail)?;
            let mut extras = Vec::new();
            if commutative {
                extras.push("comm".to_string());
            }
            let key = cache::cache_key(
                cache::ENGINE_VERSION,
                "hc0",
                &word,
                common.format.name(),
                &extras,
            );
            let cached = Cached {
                dir: common.cache_dir(),
                key: &key,
            };
            if let Some(payload) = cached.get() {
                print!("{payload}");
                return Ok(ExitCode::SUCCESS);
            }
            let pres = DgaPresentation::build(&word).map_err(fail)?;
            let payload = match common.format {
                Format::Json => json(&Hc0Document::build(&pres, commutative)),
                Format::Text => render::hc0_text(&pres, commutative),
                Format::Latex => render::hc0_latex(&pres, commutative),
            };
            cached.put(&payload);
            print!("{payload}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err((err, code)) => {
            eprintln!("error: {err}");
            code
        }
    }
}
