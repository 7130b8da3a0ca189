//! The `morphic` command line.
//!
//! Every verb writes plain text to standard output. Exit status is 0 on
//! success, 1 when a check fails or an expansion crashes, and 2 on parse or
//! usage errors, in which case nothing is written to standard output.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigUint;

use crate::analysis::{
    check_digitwise_sum, check_full_condition, check_numeration_automatic, is_sigma0_form,
    sigma0_chain, Verdict,
};
use crate::automaton::{output_str, Automaton, Digit};
use crate::dot::to_dot;
use crate::language::{accepts, enumerate_words, indexed_outputs};
use crate::numeration::{
    automatic_expansion, greedy_expansion, numeration_system, recurrence_from_substitution,
    verify_recurrence, AutoOutcome, GreedyOutcome,
};
use crate::substitution::Substitution;
use crate::transform::{
    automaton_to_substitution, exit_map, product, project, provenance_label, reverse, Coordinate,
};

const MAX_LEN: usize = 1_000_000;
const MAX_BOUND: u64 = 100_000;
const MAX_TERMS: usize = 10_000;

#[derive(Parser, Debug)]
#[command(
    name = "morphic",
    version,
    about = "Substitutions, their automata and numeration systems"
)]
struct Cli {
    /// Lift the caps on lengths, counts and bounds.
    #[arg(long, global = true)]
    no_limits: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the automaton of a substitution.
    Show { file: PathBuf },
    /// Print a prefix of the fixed point.
    Fixedpoint {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        len: usize,
    },
    /// Print the first terms of the numeration system.
    Numsys {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Automatic expansion of N.
    Expand { file: PathBuf, n: BigUint },
    /// Greedy expansion of N with digits at most CAP (default k_max).
    Greedy {
        file: PathBuf,
        n: BigUint,
        #[arg(long)]
        cap: Option<Digit>,
    },
    /// List accepted words in radix order.
    Enumerate {
        file: PathBuf,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// List every accepted word, including ones with leading zeros.
        #[arg(long)]
        leading_zeros: bool,
    },
    /// Survey numeration-automatism for all n below the bound.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 2000)]
        bound: u64,
    },
    /// Test for sigma0 form.
    Sigma0 { file: PathBuf },
    /// Full-system checks: image lengths along the chain, then sampled digit-wise sums.
    Full {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 2000)]
        bound: u64,
    },
    /// Linear recurrence of the numeration system.
    Recurrence {
        file: PathBuf,
        /// Check the recurrence for all n below H.
        #[arg(long, value_name = "H")]
        verify: Option<usize>,
    },
    /// Substitution of the product automaton.
    Product { left: PathBuf, right: PathBuf },
    /// Exit map and fixed-point prefix of a projected product.
    Project {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        coord: u8,
        #[arg(long, default_value_t = 100)]
        len: usize,
    },
    /// Print the reversed automaton.
    Reverse { file: PathBuf },
    /// Graphviz export.
    Dot {
        file: PathBuf,
        #[arg(long)]
        reverse: bool,
    },
}

/// Failure that maps to exit status 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn load(path: &Path) -> Result<Substitution, Usage> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    Substitution::parse(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn capped<T: PartialOrd + std::fmt::Display>(
    value: T,
    max: T,
    flag: &str,
    lift: bool,
) -> Result<T, Usage> {
    if !lift && value > max {
        return Err(Usage(format!(
            "{flag} {value} exceeds {max}; pass --no-limits to allow it"
        )));
    }
    Ok(value)
}

fn verdict_code(v: Verdict) -> i32 {
    if v == Verdict::Pass {
        0
    } else {
        1
    }
}

fn execute(cli: Cli, out: &mut String) -> Result<i32, Usage> {
    let lift = cli.no_limits;
    match cli.command {
        Command::Show { file } => {
            write!(out, "{}", load(&file)?.to_automaton())?;
            Ok(0)
        }
        Command::Fixedpoint { file, len } => {
            let len = capped(len, MAX_LEN, "--len", lift)?;
            writeln!(out, "{}", load(&file)?.fixed_point_prefix(len)?)?;
            Ok(0)
        }
        Command::Numsys { file, terms } => {
            let terms = capped(terms, MAX_TERMS, "--terms", lift)?;
            let system = numeration_system(&load(&file)?)?;
            let parts: Vec<String> = system
                .terms(terms)
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(out, "{}", parts.join(","))?;
            Ok(0)
        }
        Command::Expand { file, n } => {
            let sub = load(&file)?;
            let system = numeration_system(&sub)?;
            match automatic_expansion(&sub.to_automaton(), &system, &n) {
                AutoOutcome::Expansion(e) => {
                    writeln!(out, "{}", e.digits)?;
                    Ok(0)
                }
                AutoOutcome::Crash { .. } => {
                    writeln!(out, "CRASH")?;
                    Ok(1)
                }
            }
        }
        Command::Greedy { file, n, cap } => {
            let sub = load(&file)?;
            let system = numeration_system(&sub)?;
            let cap = cap.unwrap_or(sub.k_max() as Digit);
            match greedy_expansion(&system, &n, cap) {
                GreedyOutcome::Expansion(e) => {
                    let verdict = if accepts(&sub.to_automaton(), &e.digits) {
                        "accepted"
                    } else {
                        "rejected"
                    };
                    writeln!(out, "{} {verdict}", e.digits)?;
                    Ok(0)
                }
                GreedyOutcome::Leftover { digits, remaining } => {
                    writeln!(out, "LEFTOVER {digits} remaining={remaining}")?;
                    Ok(1)
                }
            }
        }
        Command::Enumerate {
            file,
            count,
            leading_zeros,
        } => {
            let count = capped(count, MAX_LEN, "--count", lift)?;
            for w in enumerate_words(&load(&file)?.to_automaton(), count, leading_zeros) {
                writeln!(out, "{w}")?;
            }
            Ok(0)
        }
        Command::Check { file, bound } => {
            let bound = capped(bound, MAX_BOUND, "--bound", lift)?;
            let report = check_numeration_automatic(&load(&file)?, bound as usize);
            writeln!(out, "{report}")?;
            Ok(verdict_code(report.verdict))
        }
        Command::Sigma0 { file } => {
            let sub = load(&file)?;
            let check = is_sigma0_form(&sub);
            match check.violation {
                None => {
                    let chain: Vec<String> =
                        sigma0_chain(&sub).iter().map(ToString::to_string).collect();
                    writeln!(out, "sigma0: yes chain={}", chain.join(","))?;
                    Ok(0)
                }
                Some((letter, why)) => {
                    writeln!(out, "sigma0: no rule={letter}: {why}")?;
                    Ok(1)
                }
            }
        }
        Command::Full {
            file,
            samples,
            bound,
        } => {
            let bound = capped(bound, MAX_BOUND, "--bound", lift)?;
            let samples = capped(samples, MAX_LEN, "--samples", lift)?;
            let sub = load(&file)?;
            numeration_system(&sub)?;
            match check_full_condition(&sub) {
                Ok(holds) => writeln!(
                    out,
                    "lengths non-increasing along chain: {}",
                    if holds { "yes" } else { "no" }
                )?,
                Err(e) => writeln!(out, "lengths non-increasing along chain: n/a ({e})")?,
            }
            let report = check_digitwise_sum(&sub, samples, bound);
            writeln!(out, "{report}")?;
            Ok(verdict_code(report.verdict))
        }
        Command::Recurrence { file, verify } => {
            let sub = load(&file)?;
            let rec = recurrence_from_substitution(&sub);
            writeln!(out, "c = {rec}")?;
            if rec.valid_from() > rec.order() {
                writeln!(out, "valid from n={}", rec.valid_from())?;
            }
            let Some(h) = verify else { return Ok(0) };
            let h = capped(h, MAX_TERMS, "--verify", lift)?;
            let system = numeration_system(&sub)?;
            let report = verify_recurrence(&system, &rec, h.saturating_sub(1));
            if report.verdict == Verdict::Pass {
                writeln!(out, "verified n<{h}")?;
            } else {
                writeln!(out, "{report}")?;
            }
            Ok(verdict_code(report.verdict))
        }
        Command::Product { left, right } => {
            let prod = product(&load(&left)?.to_automaton(), &load(&right)?.to_automaton());
            write_provenance(out, &prod)?;
            write!(out, "{}", automaton_to_substitution(&prod)?)?;
            Ok(0)
        }
        Command::Project {
            left,
            right,
            coord,
            len,
        } => {
            let len = capped(len, MAX_LEN, "--len", lift)?;
            let prod = product(&load(&left)?.to_automaton(), &load(&right)?.to_automaton());
            let coordinate = if coord == 1 {
                Coordinate::First
            } else {
                Coordinate::Second
            };
            let projected = project(&prod, coordinate)?;
            for (state, output) in exit_map(&projected) {
                writeln!(out, "exit: {state} = {}", output_str(output))?;
            }
            let prefix: String = indexed_outputs(&projected, len)
                .into_iter()
                .map(output_str)
                .collect();
            writeln!(out, "prefix: {prefix}")?;
            Ok(0)
        }
        Command::Reverse { file } => {
            let rev = reverse(&load(&file)?.to_automaton());
            write!(out, "{rev}")?;
            write_provenance(out, &rev)?;
            Ok(0)
        }
        Command::Dot { file, reverse: rev } => {
            let aut = load(&file)?.to_automaton();
            let aut = if rev { reverse(&aut) } else { aut };
            write!(out, "{}", to_dot(&aut))?;
            Ok(0)
        }
    }
}

fn write_provenance(out: &mut String, aut: &Automaton) -> std::fmt::Result {
    for s in aut.states() {
        if let Some(label) = provenance_label(aut, s) {
            writeln!(out, "# {} = {label}", aut.name(s))?;
        }
    }
    Ok(())
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                return 2;
            }
            let _ = out.write_all(text.as_bytes());
            return code;
        }
    };
    let mut buffer = String::new();
    match execute(cli, &mut buffer) {
        Ok(code) => {
            if out
                .write_all(buffer.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return 2;
            }
            code
        }
        Err(Usage(msg)) => {
            let _ = writeln!(err, "morphic: {msg}");
            2
        }
    }
}
