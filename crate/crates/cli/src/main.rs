use std::io::Read as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mahonian_core::bijection::{delta, phi, phi_traced, validate_tuple_set, zeta, TupleSet};
use mahonian_core::enumeration::{corpus, distribution, joint_distribution, DistributionReport};
use mahonian_core::miner::{filter_mahonian, mine};
use mahonian_core::verify::{run_suite, Suite};
use mahonian_core::{base_combo, Error, MultisetSpec, StatCombo, Statistic, VincularPattern, Word};
use serde::Serialize;

const DEFAULT_MAX_SIZE: usize = 6;

#[derive(Parser)]
#[command(name = "mahonian", version, about = "Mahonian statistics, vincular patterns and the involution Φ on words")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a statistic on a word.
    Stat {
        /// Builtin name, `maj`/`inv`, `def:<name>`, `classic:<name>` or a combination like "2*2[31] + [21]".
        #[arg(long)]
        stat: String,
        #[arg(long)]
        word: Word,
    },
    /// Count occurrences of a vincular pattern.
    Count {
        #[arg(long)]
        pattern: VincularPattern,
        #[arg(long)]
        word: Word,
        /// 1-based pattern position whose letter is pinned to --value.
        #[arg(long, requires = "value")]
        anchor: Option<usize>,
        #[arg(long, requires = "anchor")]
        value: Option<u32>,
    },
    /// Apply the involution Φ.
    Phi {
        #[arg(long)]
        word: Word,
        /// Print the δ table, f maps, θ table and ζ insertion steps.
        #[arg(long)]
        trace: bool,
    },
    /// Print the 4-tuple-letters of a word, one "v d position r" line each.
    Delta {
        #[arg(long)]
        word: Word,
    },
    /// Rebuild a word from 4-tuple-letter lines (file or "-" for stdin).
    Zeta {
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Distribution of a statistic over a rearrangement class.
    Dist {
        #[arg(long)]
        stat: String,
        /// e.g. "1:2,2:1,3:1"
        #[arg(long)]
        multiset: MultisetSpec,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Joint distribution of (des, statistic) over a rearrangement class.
    Joint {
        #[arg(long)]
        stat: String,
        #[arg(long)]
        multiset: MultisetSpec,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Compare a statistic with maj on every multiset up to a size.
    Mahonian {
        #[arg(long)]
        stat: String,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Extend a base statistic by weaker patterns and keep the Mahonian candidates.
    Mine {
        /// mad, madl, mak, makl, or a combination.
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 2)]
        add: usize,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run the exhaustive property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        max_size: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
}

enum Failure {
    Usage(String),
    /// Output was produced, but a checked property does not hold.
    Verification(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => Failure::Internal(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn max_size(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var("MAHONIAN_MAX_SIZE") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("MAHONIAN_MAX_SIZE must be a number, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_SIZE),
    }
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes") + "\n"
}

#[derive(Serialize)]
struct Value<'a> {
    stat: &'a str,
    word: &'a Word,
    value: u64,
}

#[derive(Serialize)]
struct Verdict {
    stat: String,
    max_size: usize,
    pass: bool,
    counterexample: Option<MultisetSpec>,
}

/// Returns the text to print, plus a verification failure message when the
/// command ran but its check did not hold.
fn execute(cli: &Cli) -> Result<(String, Option<String>), Failure> {
    let json = cli.json;
    let ok = |s: String| Ok((s, None));
    match &cli.command {
        Command::Stat { stat, word } => {
            let s = Statistic::resolve(stat)?;
            let value = s.eval(word);
            if json {
                ok(to_json(&Value { stat, word, value }))
            } else {
                ok(format!("{value}\n"))
            }
        }
        Command::Count { pattern, word, anchor, value } => {
            let n = match (anchor, value) {
                (Some(a), Some(v)) => {
                    let a = a.checked_sub(1).ok_or_else(|| Failure::Usage("--anchor is 1-based".into()))?;
                    pattern.count_restricted(a, *v, word)?
                }
                _ => pattern.count(word),
            };
            if json {
                ok(to_json(&serde_json::json!({ "pattern": pattern, "word": word, "count": n })))
            } else {
                ok(format!("{n}\n"))
            }
        }
        Command::Phi { word, trace } => {
            if *trace {
                let t = phi_traced(word)?;
                if json {
                    ok(to_json(&t))
                } else {
                    ok(t.render())
                }
            } else {
                let image = phi(word)?;
                if json {
                    ok(to_json(&serde_json::json!({ "word": word, "phi": image })))
                } else {
                    ok(format!("{}\n", image.to_csv()))
                }
            }
        }
        Command::Delta { word } => {
            let set = delta(word);
            if json {
                ok(to_json(&set))
            } else {
                ok(set.to_text())
            }
        }
        Command::Zeta { input } => {
            let text = read_input(input)?;
            let set: TupleSet = text.parse()?;
            let report = validate_tuple_set(&set);
            if !report.is_valid() {
                let out = if json { to_json(&report) } else { report.to_string() };
                return Ok((out, Some("the 4-tuple-letter set is not valid".into())));
            }
            let w = zeta(&set).map_err(|e| Failure::Internal(format!("valid set failed to rebuild: {e}")))?;
            if json {
                ok(to_json(&w))
            } else {
                ok(format!("{}\n", w.to_csv()))
            }
        }
        Command::Dist { stat, multiset, threads } => {
            let s = Statistic::resolve(stat)?;
            let h = distribution(&s, multiset, *threads)?;
            if json {
                let total = h.total();
                ok(to_json(&DistributionReport { multiset: multiset.clone(), stat: s.label(), counts: h, total }))
            } else {
                ok(h.to_tsv())
            }
        }
        Command::Joint { stat, multiset, threads } => {
            let s = Statistic::resolve(stat)?;
            let h = joint_distribution(&s, multiset, *threads)?;
            if json {
                let total = h.total();
                ok(to_json(&DistributionReport { multiset: multiset.clone(), stat: s.label(), counts: h, total }))
            } else {
                ok(h.to_tsv())
            }
        }
        Command::Mahonian { stat, max_size: flag, threads } => {
            let n = max_size(*flag)?;
            let s = Statistic::resolve(stat)?;
            let combo = match s {
                Statistic::Combo { combo, .. } => combo,
                _ => return Err(Failure::Usage("mahonian needs a pattern combination or builtin name".into())),
            };
            let label = combo.name().map_or_else(|| combo.formula(), str::to_string);
            let report = filter_mahonian(&[combo], &corpus(n), *threads)?;
            let counterexample = match &report.entries[0].outcome {
                mahonian_core::miner::Outcome::Pass => None,
                mahonian_core::miner::Outcome::Fail(m) => Some(m.clone()),
            };
            let pass = counterexample.is_none();
            let out = if json {
                to_json(&Verdict { stat: label, max_size: n, pass, counterexample: counterexample.clone() })
            } else {
                match &counterexample {
                    None => format!("PASS {label} (all multisets of size <= {n})\n"),
                    Some(m) => format!("FAIL {label} @ {m}\n"),
                }
            };
            Ok((out, (!pass).then(|| "not equidistributed with maj".to_string())))
        }
        Command::Mine { base, add, max_size: flag, threads } => {
            let n = max_size(*flag)?;
            let base = match base_combo(base) {
                Some(c) => c,
                None => base.parse::<StatCombo>()?,
            };
            let report = mine(&base, *add, &corpus(n), *threads)?;
            if json {
                ok(to_json(&report.entries))
            } else {
                ok(report.to_string())
            }
        }
        Command::Verify { suite, max_size: flag, threads } => {
            let n = max_size(*flag)?;
            let report = run_suite(*suite, n, *threads)?;
            let out = if json { to_json(&report) } else { report.to_string() };
            Ok((out, (!report.passed()).then(|| "some checks failed".to_string())))
        }
    }
}

fn read_input(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(input).map_err(|e| Failure::Usage(format!("cannot read {input}: {e}")))
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = execute(&cli).and_then(|(text, verdict)| {
        emit(&cli, &text)?;
        match verdict {
            Some(msg) => Err(Failure::Verification(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
