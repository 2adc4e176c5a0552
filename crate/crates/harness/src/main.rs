use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zjkit_harness::campaign::{self, CampaignConfig, DMode};
use zjkit_harness::corpus::{self, CorpusConfig};
use zjkit_harness::verify::Toggles;
use zjkit_harness::{report, HarnessError};

/// Finite-group toolkit: corpus construction and exhaustive verification
/// of normality, fusion-control and p-nilpotency statements built on the
/// Thompson subgroups.
///
/// Exit codes: 0 clean, 1 record-invariant violation, 2 usage, 3 I/O.
#[derive(Parser)]
#[command(name = "zjkit", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the group corpus and write it to a JSON file.
    Corpus {
        /// Skip groups above this order.
        #[arg(long, default_value_t = zjkit_core::config::order_bound())]
        max_order: usize,
        /// Odd primes to attach to entries (comma separated).
        #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5])]
        primes: Vec<u64>,
        /// Directory of additional group files (*.json) to ingest.
        #[arg(long)]
        ingest: Option<PathBuf>,
        #[arg(long, default_value = "corpus.json")]
        out: PathBuf,
    },
    /// Run verification checks over a corpus and write a JSONL report.
    Verify {
        #[arg(long)]
        corpus: PathBuf,
        /// Check ids, or "all", "lemmas", "functors".
        #[arg(long, value_delimiter = ',', default_values_t = ["all".to_string()])]
        checks: Vec<String>,
        #[arg(long, value_enum, default_value_t = DModeArg::Full)]
        d_mode: DModeArg,
        #[arg(long, default_value = "report.jsonl")]
        out: PathBuf,
        /// Worker threads (0 = rayon default).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Record per-check wall time (breaks byte-determinism of reports).
        #[arg(long)]
        timing: bool,
    },
    /// Summarize a report file and re-validate the record invariant.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Hypothesis-necessity probe: re-run checks with one hypothesis
    /// toggled off, collecting conclusion-failure records under falsified
    /// hypotheses.
    Probe {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum)]
        toggle: ToggleArg,
        #[arg(long, value_delimiter = ',', default_values_t = ["B".to_string(), "C".to_string(), "T3.2".to_string(), "T3.6".to_string(), "E".to_string(), "F".to_string(), "H".to_string(), "opg".to_string()])]
        checks: Vec<String>,
        #[arg(long, value_enum, default_value_t = DModeArg::Full)]
        d_mode: DModeArg,
        #[arg(long, default_value = "probe.jsonl")]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DModeArg {
    Full,
    SylowOnly,
}

impl From<DModeArg> for DMode {
    fn from(v: DModeArg) -> DMode {
        match v {
            DModeArg::Full => DMode::Full,
            DModeArg::SylowOnly => DMode::SylowOnly,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ToggleArg {
    StrongClosure,
    Stability,
    Omega,
}

impl From<ToggleArg> for Toggles {
    fn from(v: ToggleArg) -> Toggles {
        match v {
            ToggleArg::StrongClosure => Toggles { strong_closure_off: true, ..Toggles::NONE },
            ToggleArg::Stability => Toggles { stability_off: true, ..Toggles::NONE },
            ToggleArg::Omega => Toggles { omega_off: true, ..Toggles::NONE },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.cmd {
        Cmd::Corpus { max_order, primes, ingest, out } => {
            let cfg = CorpusConfig { max_order, primes, ingest };
            let entries = corpus::build_corpus(&cfg)?;
            corpus::save_corpus(&entries, &out)?;
            println!("wrote {} entries to {}", entries.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify { corpus: corpus_path, checks, d_mode, out, jobs, timing } => {
            let entries = corpus::load_corpus(&corpus_path)?;
            let cfg = CampaignConfig {
                checks: campaign::parse_checks(&checks)?,
                d_mode: d_mode.into(),
                jobs,
                timing,
                toggles: Toggles::NONE,
            };
            let outcome = campaign::run_campaign(&entries, &cfg)?;
            campaign::write_report(&outcome, &out)?;
            println!(
                "{} records, {} violations -> {}",
                outcome.records.len(),
                outcome.violations,
                out.display()
            );
            Ok(if outcome.violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Report { input, format } => {
            let loaded = report::read_report(&input)?;
            let summary = report::summarize(&loaded.records);
            match format {
                FormatArg::Table => {
                    if let Some(h) = &loaded.header {
                        println!("{h}");
                    }
                    print!("{}", report::render_table(&summary));
                }
                FormatArg::Json => {
                    println!("{}", serde_json::to_string_pretty(&summary).expect("serializes"));
                }
            }
            let violations: usize = summary.values().map(|s| s.violations).sum();
            Ok(if violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Probe { corpus: corpus_path, toggle, checks, d_mode, out, jobs } => {
            let entries = corpus::load_corpus(&corpus_path)?;
            let cfg = CampaignConfig {
                checks: campaign::parse_checks(&checks)?,
                d_mode: d_mode.into(),
                jobs,
                timing: false,
                toggles: toggle.into(),
            };
            let outcome = campaign::run_campaign(&entries, &cfg)?;
            campaign::write_report(&outcome, &out)?;
            let falsified = outcome
                .records
                .iter()
                .filter(|r| r.conclusion == Some(false))
                .count();
            println!(
                "{} records, {} with failing conclusions under the toggled hypothesis -> {}",
                outcome.records.len(),
                falsified,
                out.display()
            );
            Ok(if outcome.violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}
