//! Batch front end over CoNLL-U streams: validation, projectivity reports,
//! derivations and traces, bracket construction, recovery, and round trips.
//! Sentences are processed one at a time; output order follows input order.
//! Exit codes: 0 success, 1 contract failure, 2 usage or I/O error.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ordep::{
    build, derive, execute_tree, recover, DependencyTree, DeriveError, Projectivizer, Sentence,
    UNLABELED,
};
use ordep_tools::selftest;
use ordep_tools::{
    read_brackets, write_brackets, write_sentence, write_trace, ConlluReader, ParsedSentence,
    TraceMode,
};

#[derive(Parser)]
#[command(
    name = "ordep",
    version,
    about = "Arc-standard derivations and ordered dependency-tree representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report per-sentence validity; exits nonzero iff any sentence is invalid.
    Validate { input: String },
    /// Classify each sentence as projective or not, with corpus counts.
    Projectivity { input: String },
    /// Emit one derivation per sentence: one action per line, blank-line
    /// separated, or a Table-2-style trace with --trace.
    Derive {
        input: String,
        /// Render a step-by-step trace instead of bare actions.
        #[arg(long, value_enum)]
        trace: Option<TraceArg>,
        /// Projectivize non-projective sentences first (pseudo-projective lift).
        #[arg(long)]
        lift: bool,
    },
    /// Emit the bracketed ordered representation, one line per sentence.
    Build {
        input: String,
        /// Projectivize non-projective sentences first.
        #[arg(long)]
        lift: bool,
        /// Replace dependency labels with the structural placeholder UA.
        #[arg(long)]
        ua: bool,
        /// Render leaves as FORM/UPOS.
        #[arg(long)]
        pos: bool,
    },
    /// Turn bracketed trees back into CoNLL-U, pairing them positionally
    /// with a sentence file (CoNLL-U or one space-separated sentence per line).
    Recover {
        input: String,
        /// Token source paired line-for-line with the bracket trees.
        #[arg(long)]
        sentences: String,
        /// Undo pseudo-projective lifting on the recovered arcs.
        #[arg(long)]
        delift: bool,
    },
    /// Derive, execute, recover, and delift every sentence, then diff
    /// against the input; exits nonzero iff a projective sentence mismatches.
    Roundtrip { input: String },
    /// Run the exhaustive theorem suites and print pass/fail.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceArg {
    Plain,
    Mapped,
}

impl From<TraceArg> for TraceMode {
    fn from(arg: TraceArg) -> TraceMode {
        match arg {
            TraceArg::Plain => TraceMode::Plain,
            TraceArg::Mapped => TraceMode::Mapped,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ordep: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Validate { input } => cmd_validate(&input),
        Command::Projectivity { input } => cmd_projectivity(&input),
        Command::Derive { input, trace, lift } => cmd_derive(&input, trace.map(Into::into), lift),
        Command::Build {
            input,
            lift,
            ua,
            pos,
        } => cmd_build(&input, lift, ua, pos),
        Command::Recover {
            input,
            sentences,
            delift,
        } => cmd_recover(&input, &sentences, delift),
        Command::Roundtrip { input } => cmd_roundtrip(&input),
        Command::Selftest => cmd_selftest(),
    }
}

fn open_input(path: &str) -> Result<Box<dyn BufRead>, CliError> {
    if path == "-" {
        return Ok(Box::new(io::stdin().lock()));
    }
    let file = File::open(path).map_err(|e| CliError::Usage(format!("cannot open {path}: {e}")))?;
    Ok(Box::new(BufReader::new(file)))
}

fn sentences_of(path: &str) -> Result<ConlluReader<io::Lines<Box<dyn BufRead>>>, CliError> {
    Ok(ConlluReader::new(open_input(path)?))
}

fn exit(contract_failed: bool) -> ExitCode {
    if contract_failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

/// Forwards reader diagnostics to stderr under the sentence's number.
fn report_diagnostics(index: usize, parsed: &ParsedSentence) {
    for d in &parsed.diagnostics {
        eprintln!("sentence {index}: {d}");
    }
}

fn cmd_validate(input: &str) -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut any_invalid = false;
    for (index, parsed) in sentences_of(input)?.enumerate() {
        let parsed = parsed?;
        let index = index + 1;
        report_diagnostics(index, &parsed);
        match &parsed.tree {
            Some(tree) => {
                let violations = tree.validate();
                if violations.is_empty() {
                    writeln!(out, "sentence {index}: valid")?;
                } else {
                    let detail: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
                    writeln!(
                        out,
                        "sentence {index}: invalid \u{2014} {}",
                        detail.join("; ")
                    )?;
                    any_invalid = true;
                }
            }
            None => {
                writeln!(out, "sentence {index}: invalid \u{2014} malformed block")?;
                any_invalid = true;
            }
        }
    }
    out.flush()?;
    Ok(exit(any_invalid))
}

fn cmd_projectivity(input: &str) -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let (mut projective, mut tangled, mut invalid) = (0usize, 0usize, 0usize);
    for (index, parsed) in sentences_of(input)?.enumerate() {
        let parsed = parsed?;
        let index = index + 1;
        report_diagnostics(index, &parsed);
        let verdict = match parsed.tree.as_ref().map(DependencyTree::is_projective) {
            Some(Ok(true)) => {
                projective += 1;
                "projective"
            }
            Some(Ok(false)) => {
                tangled += 1;
                "non-projective"
            }
            Some(Err(_)) | None => {
                invalid += 1;
                "invalid"
            }
        };
        writeln!(out, "sentence {index}: {verdict}")?;
    }
    writeln!(
        out,
        "projective {projective}, non-projective {tangled}, invalid {invalid}"
    )?;
    out.flush()?;
    Ok(exit(false))
}

/// Pulls the usable tree out of a parsed block, reporting failures. The
/// second flag says whether processing should count as a contract failure.
fn usable_tree(index: usize, parsed: &ParsedSentence) -> Result<DependencyTree, ()> {
    match &parsed.tree {
        Some(tree) => {
            let violations = tree.validate();
            if violations.is_empty() {
                return Ok(tree.clone());
            }
            eprintln!(
                "sentence {index}: skipped, invalid \u{2014} {}",
                violations[0]
            );
        }
        None => eprintln!("sentence {index}: skipped, malformed block"),
    }
    Err(())
}

fn cmd_derive(input: &str, trace: Option<TraceMode>, lift: bool) -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let projectivizer = Projectivizer::default();
    let mut failed = false;
    let mut first = true;
    for (index, parsed) in sentences_of(input)?.enumerate() {
        let parsed = parsed?;
        let index = index + 1;
        report_diagnostics(index, &parsed);
        let Ok(mut tree) = usable_tree(index, &parsed) else {
            failed = true;
            continue;
        };
        if lift {
            tree = projectivizer.lift(&tree).expect("validity checked");
        }
        let derivation = match derive(&tree) {
            Ok(d) => d,
            Err(DeriveError::Deadlock { .. }) => {
                eprintln!("sentence {index}: not projective; rerun with --lift");
                failed = true;
                continue;
            }
            Err(e) => {
                eprintln!("sentence {index}: {e}");
                failed = true;
                continue;
            }
        };
        if !first {
            writeln!(out)?;
        }
        first = false;
        match trace {
            None => {
                for action in derivation.iter() {
                    writeln!(out, "{action}")?;
                }
            }
            Some(mode) => {
                let rendered = write_trace(tree.sentence(), &derivation, mode)
                    .expect("oracle derivations are complete");
                out.write_all(rendered.as_bytes())?;
            }
        }
    }
    out.flush()?;
    Ok(exit(failed))
}

fn cmd_build(input: &str, lift: bool, ua: bool, pos: bool) -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let projectivizer = Projectivizer::default();
    let mut failed = false;
    for (index, parsed) in sentences_of(input)?.enumerate() {
        let parsed = parsed?;
        let index = index + 1;
        report_diagnostics(index, &parsed);
        let Ok(mut tree) = usable_tree(index, &parsed) else {
            failed = true;
            continue;
        };
        if lift {
            tree = projectivizer.lift(&tree).expect("validity checked");
        }
        let ordered = if ua {
            // Labels ride on transitions, so erase them there; the final
            // (root) label survives, as in the appendix rendering.
            match derive(&tree) {
                Ok(d) => execute_tree(tree.sentence(), &d.with_uniform_labels(UNLABELED))
                    .expect("oracle derivations execute"),
                Err(DeriveError::Deadlock { .. }) => {
                    eprintln!("sentence {index}: not projective; rerun with --lift");
                    failed = true;
                    continue;
                }
                Err(e) => {
                    eprintln!("sentence {index}: {e}");
                    failed = true;
                    continue;
                }
            }
        } else {
            match build(&tree) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("sentence {index}: {e}; rerun with --lift");
                    failed = true;
                    continue;
                }
            }
        };
        let sentence = pos.then(|| tree.sentence());
        match write_brackets(&ordered, sentence) {
            Ok(rendered) => writeln!(out, "{rendered}")?,
            Err(e) => {
                eprintln!("sentence {index}: {e}");
                failed = true;
            }
        }
    }
    out.flush()?;
    Ok(exit(failed))
}

/// Token source for `recover`: CoNLL-U when the first meaningful line is
/// tab-separated, otherwise one space-separated sentence per line.
enum SentenceSource {
    Conllu(ConlluReader<Box<dyn Iterator<Item = io::Result<String>>>>),
    Forms(Box<dyn Iterator<Item = io::Result<String>>>),
}

impl SentenceSource {
    fn open(path: &str) -> Result<Self, CliError> {
        let mut lines = open_input(path)?.lines();
        let mut queued: Vec<io::Result<String>> = Vec::new();
        let mut conllu = None;
        for line in lines.by_ref() {
            let line = line?;
            let meaningful = !line.trim().is_empty() && !line.starts_with('#');
            let has_tab = line.contains('\t');
            queued.push(Ok(line));
            if meaningful {
                conllu = Some(has_tab);
                break;
            }
        }
        let rest: Box<dyn Iterator<Item = io::Result<String>>> =
            Box::new(queued.into_iter().chain(lines));
        Ok(match conllu {
            Some(false) => SentenceSource::Forms(rest),
            // Tab-separated or nothing meaningful at all: read as CoNLL-U.
            Some(true) | None => SentenceSource::Conllu(ConlluReader::from_lines(rest)),
        })
    }

    fn next_sentence(&mut self, index: usize) -> Result<Option<Sentence>, CliError> {
        match self {
            SentenceSource::Conllu(reader) => match reader.next() {
                None => Ok(None),
                Some(Err(e)) => Err(e.into()),
                Some(Ok(parsed)) => parsed.sentence.map(Some).ok_or_else(|| {
                    CliError::Usage(format!(
                        "sentences entry {index} (line {}) is malformed; cannot pair files",
                        parsed.start_line
                    ))
                }),
            },
            SentenceSource::Forms(lines) => {
                for line in lines.by_ref() {
                    let line = line?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    return Ok(Some(Sentence::from_forms(line.split_whitespace())));
                }
                Ok(None)
            }
        }
    }
}

fn cmd_recover(input: &str, sentences: &str, delift: bool) -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut source = SentenceSource::open(sentences)?;
    let projectivizer = Projectivizer::default();
    let mut failed = false;
    let mut index = 0usize;
    for line in open_input(input)?.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        index += 1;
        let sentence = source.next_sentence(index)?.ok_or_else(|| {
            CliError::Usage(format!(
                "tree {index} has no paired sentence; inputs differ in length"
            ))
        })?;
        let ordered = match read_brackets(&line) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("tree {index}: {e}");
                failed = true;
                continue;
            }
        };
        let recovered = match recover(&ordered, &sentence) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("tree {index}: {e}");
                failed = true;
                continue;
            }
        };
        let final_tree = if delift {
            match projectivizer.delift(&recovered) {
                Ok(outcome) => {
                    for u in &outcome.unresolved {
                        eprintln!(
                            "tree {index}: unresolved lift on token {} (mark {:?})",
                            u.dependent, u.mark
                        );
                    }
                    outcome.tree
                }
                Err(e) => {
                    eprintln!("tree {index}: {e}");
                    failed = true;
                    continue;
                }
            }
        } else {
            recovered
        };
        match write_sentence(&mut out, &final_tree) {
            Ok(()) => {}
            Err(ordep_tools::WriteError::Io(e)) => return Err(e.into()),
            Err(e) => {
                eprintln!("tree {index}: {e}");
                failed = true;
            }
        }
    }
    if source.next_sentence(index + 1)?.is_some() {
        return Err(CliError::Usage(format!(
            "sentences outnumber trees ({index} trees read); inputs differ in length"
        )));
    }
    out.flush()?;
    Ok(exit(failed))
}

fn cmd_roundtrip(input: &str) -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let projectivizer = Projectivizer::default();
    let (mut total, mut exact, mut mismatched, mut arc_diffs) = (0usize, 0usize, 0usize, 0usize);
    let mut unresolved = 0usize;
    let mut invalid = 0usize;
    let mut projective_failed = false;
    for (index, parsed) in sentences_of(input)?.enumerate() {
        let parsed = parsed?;
        let index = index + 1;
        report_diagnostics(index, &parsed);
        total += 1;
        let Ok(tree) = usable_tree(index, &parsed) else {
            invalid += 1;
            continue;
        };
        let projective = tree.is_projective().expect("validity checked");
        let (lifted, _log) = projectivizer
            .lift_with_log(&tree)
            .expect("validity checked");
        let pipeline = derive(&lifted)
            .map_err(|e| e.to_string())
            .and_then(|d| execute_tree(lifted.sentence(), &d).map_err(|e| e.to_string()))
            .and_then(|ordered| recover(&ordered, tree.sentence()).map_err(|e| e.to_string()))
            .and_then(|recovered| projectivizer.delift(&recovered).map_err(|e| e.to_string()));
        let outcome = match pipeline {
            Ok(outcome) => outcome,
            Err(e) => {
                eprintln!("sentence {index}: pipeline failed: {e}");
                mismatched += 1;
                if projective {
                    projective_failed = true;
                }
                continue;
            }
        };
        unresolved += outcome.unresolved.len();
        if outcome.tree == tree && outcome.unresolved.is_empty() {
            exact += 1;
            continue;
        }
        mismatched += 1;
        let diffs = (1..=tree.len())
            .filter(|&d| outcome.tree.arc_onto(d) != tree.arc_onto(d))
            .count();
        arc_diffs += diffs;
        eprintln!(
            "sentence {index}: {diffs} arcs differ after the round trip{}",
            if outcome.unresolved.is_empty() {
                ""
            } else {
                " (unresolved lifts)"
            }
        );
        if projective {
            projective_failed = true;
        }
    }
    writeln!(
        out,
        "sentences {total}, exact {exact}, mismatched {mismatched} ({arc_diffs} arcs), \
         unresolved lifts {unresolved}, invalid {invalid}"
    )?;
    out.flush()?;
    Ok(exit(projective_failed))
}

type Suite = fn() -> Result<String, String>;

fn cmd_selftest() -> Result<ExitCode, CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let suites: [(&str, Suite); 3] = [
        ("theorem 1", selftest::theorem1),
        ("theorem 2", selftest::theorem2),
        ("theorem 3", selftest::theorem3),
    ];
    let mut all_ok = true;
    for (name, suite) in suites {
        match suite() {
            Ok(summary) => writeln!(out, "{name}: PASS \u{2014} {summary}")?,
            Err(why) => {
                writeln!(out, "{name}: FAIL \u{2014} {why}")?;
                all_ok = false;
            }
        }
        out.flush()?;
    }
    Ok(exit(!all_ok))
}
