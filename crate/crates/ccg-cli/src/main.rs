//! Command-line front end for the incremental parser.
//!
//! `parse` analyses one sentence against explicit resource files and prints a
//! verdict as JSON; `scenarios run` replays a fixture directory of expected
//! verdicts and reports PASS/FAIL per scenario.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ccg::io::{self, Fixtures};
use ccg::run::run_sentence;
use ccg::Verdict;

#[derive(Parser)]
#[command(name = "ccg", about = "Incremental CCG sentence processor")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a sentence word by word and report the processing verdict.
    Parse {
        /// Open-class lexicon (TSV).
        #[arg(long)]
        lexicon: PathBuf,
        /// Closed-class lexicon (TSV).
        #[arg(long)]
        closed_class: PathBuf,
        /// Discourse context facts, one atom per line.
        #[arg(long)]
        discourse: PathBuf,
        /// Implausible-situation patterns.
        #[arg(long)]
        plausibility: PathBuf,
        /// Penalty strengths and grace periods (TOML).
        #[arg(long)]
        config: PathBuf,
        /// Write a JSON-lines trace (one record per word) to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// The sentence to analyse.
        sentence: String,
    },
    /// Operations over scenario fixture directories.
    Scenarios {
        #[command(subcommand)]
        command: ScenarioCommand,
    },
}

#[derive(Subcommand)]
enum ScenarioCommand {
    /// Run every scenario under DIR and compare against expected verdicts.
    Run {
        /// Fixture root containing lexicons, contexts/, config/, scenarios/.
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Parse {
            lexicon,
            closed_class,
            discourse,
            plausibility,
            config,
            trace,
            sentence,
        } => cmd_parse(
            &lexicon,
            &closed_class,
            &discourse,
            &plausibility,
            &config,
            trace.as_deref(),
            &sentence,
        ),
        Command::Scenarios {
            command: ScenarioCommand::Run { dir },
        } => cmd_scenarios_run(&dir),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

fn exit_for(verdict: Verdict) -> ExitCode {
    match verdict {
        Verdict::Ok => ExitCode::SUCCESS,
        Verdict::GardenPath => ExitCode::from(2),
        Verdict::Awkward => ExitCode::from(3),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_parse(
    lexicon: &std::path::Path,
    closed_class: &std::path::Path,
    discourse: &std::path::Path,
    plausibility: &std::path::Path,
    config: &std::path::Path,
    trace: Option<&std::path::Path>,
    sentence: &str,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let lex = io::load_lexicon(lexicon, closed_class)?;
    let db = io::load_db(discourse)?;
    let plaus = io::load_plausibility(plausibility)?;
    let cfg = io::load_config(config)?;

    let outcome = run_sentence(sentence, &lex, &db, &plaus, &cfg)?;

    if let Some(path) = trace {
        let mut out = BufWriter::new(File::create(path)?);
        for event in &outcome.trace {
            serde_json::to_writer(&mut out, event)?;
            writeln!(out)?;
        }
        out.flush()?;
    }

    let summary = serde_json::json!({
        "verdict": outcome.verdict,
        "failed_at": outcome.failed_at,
    });
    println!("{summary}");
    Ok(exit_for(outcome.verdict))
}

fn cmd_scenarios_run(
    dir: &std::path::Path,
) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let fixtures = Fixtures::load(dir)?;
    let scenarios = fixtures.scenarios()?;
    if scenarios.is_empty() {
        eprintln!("no scenarios found under {}", dir.display());
        return Ok(ExitCode::from(1));
    }

    let mut failures = 0usize;
    for (name, sc) in &scenarios {
        let db = fixtures.context(&sc.context)?;
        let cfg = fixtures.config(&sc.config)?;
        let outcome =
            run_sentence(&sc.sentence, &fixtures.lexicon, &db, &fixtures.plausibility, &cfg)?;
        let got = outcome.verdict.name();
        if got == sc.expected {
            println!("PASS {name}: {} -> {got}", sc.sentence);
        } else {
            failures += 1;
            println!(
                "FAIL {name}: {} -> expected {}, got {got}",
                sc.sentence, sc.expected
            );
        }
    }

    let total = scenarios.len();
    println!("{} passed, {failures} failed, {total} total", total - failures);
    Ok(if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
