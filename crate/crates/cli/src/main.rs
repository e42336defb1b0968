use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ans_core::alphabet::{Letter, Word};
use ans_core::counting::{equal_count_bound, incidence, slenderness};
use ans_core::format::{parse_dfa, write_dfa};
use ans_core::peano::{multiply_square_set, peano_rep, peano_val};
use ans_core::pell::{nonsquare_evidence, pell_solutions};
use ans_core::periodic::{first_per_length, last_per_length, progression_dfa};
use ans_core::regex::{letters_of, regex_to_dfa};
use ans_core::relation::{successor_relation, translate_dfa};
use ans_core::reorder::{reorder_set, theta_graph, theta_prime};
use ans_core::{Dfa, NumerationSystem, OrderedAlphabet};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

const EPSILON: &str = "ε";

#[derive(Parser)]
#[command(name = "ans", version, about = "Abstract numeration systems on regular languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SystemArgs {
    /// Regular expression or path to a DFA file
    #[arg(short = 's', long = "system")]
    source: String,
    /// Letter order, e.g. `a,b`
    #[arg(long)]
    order: Option<String>,
}

#[derive(Args)]
struct WordArg {
    /// Word; `''` or `-e` for the empty word
    word: Option<String>,
    #[arg(short = 'e', long = "empty", conflicts_with = "word")]
    empty: bool,
}

#[derive(Args)]
struct OutArg {
    /// Output file (default: standard output)
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Representation of N
    Rep {
        #[command(flatten)]
        sys: SystemArgs,
        n: BigUint,
    },
    /// Numerical value of a word
    Val {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        word: WordArg,
    },
    /// Successor of a word
    Succ {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        word: WordArg,
    },
    /// rep(A), ..., rep(B), one per line
    Enum {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        from: BigUint,
        #[arg(long)]
        to: BigUint,
    },
    /// Number of words of each length, `length count` per line
    Count {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long = "max-len", default_value_t = 10)]
        max_len: usize,
    },
    /// Incidence matrix, row-major
    Matrix {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Least d such that the language is d-slender
    Slender {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Which order-invariance hypothesis the language satisfies
    OrderCheck {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// First word of each length
    Minlex {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Last word of each length
    Maxlex {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// DFA of rep(p + qN)
    Progression {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(short = 'p')]
        p: BigUint,
        #[arg(short = 'q')]
        q: u64,
        #[command(flatten)]
        out: OutArg,
    },
    /// Membership of a word in a DFA file
    Member {
        dfa: PathBuf,
        #[command(flatten)]
        word: WordArg,
    },
    /// DFA of rep(val(X) + t)
    Translate {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(short = 't')]
        t: usize,
        /// Set X: regular expression or DFA file
        set: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Graph of the order change, or its image of a set
    Reorder {
        #[command(flatten)]
        sys: SystemArgs,
        /// Target letter order
        #[arg(long)]
        to: String,
        /// Set to transfer: regular expression or DFA file
        set: Option<String>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Value in the target order of rep(N)
    Theta {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        to: String,
        #[arg(short = 'n')]
        n: BigUint,
    },
    /// Successor relation as a pair automaton
    SuccRel {
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Peano system a*b*
    Peano {
        #[command(subcommand)]
        command: PeanoCommand,
    },
    /// Solutions of X² − αY² = N
    Pell {
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        n: BigUint,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum PeanoCommand {
    /// DFA of rep(α val(X)) for X ⊆ a*b*
    Mul {
        #[arg(long)]
        alpha: u64,
        set: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Length evidence for a non-square multiplier
    Evidence {
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Value of a word of a*b*
    Val {
        #[command(flatten)]
        word: WordArg,
    },
    /// Word a^p b^q of value N
    Rep { n: BigUint },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<ans_core::Error> for Failure {
    fn from(e: ans_core::Error) -> Self {
        use ans_core::Error::*;
        match e {
            Syntax { .. } | Format(_) | Alphabet(_) => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => f.write_str(m),
        }
    }
}

type Out<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    match run(cli.command, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = stdout.flush();
            eprintln!("ans: {e}");
            match e {
                Failure::Usage(_) => ExitCode::from(2),
                Failure::Domain(_) => ExitCode::from(3),
            }
        }
    }
}

fn alphabet_of(order: Option<&str>, pattern: &str) -> Out<OrderedAlphabet> {
    Ok(match order {
        Some(list) => OrderedAlphabet::parse_list(list)?,
        None => OrderedAlphabet::new(letters_of(pattern).into_iter().map(String::from))?,
    })
}

fn load_system(sys: &SystemArgs) -> Out<NumerationSystem> {
    let path = Path::new(&sys.source);
    let dfa = if path.is_file() {
        let dfa = parse_dfa(&fs::read_to_string(path)?)?;
        match &sys.order {
            Some(list) => dfa.with_order(&OrderedAlphabet::parse_list(list)?)?,
            None => dfa,
        }
    } else {
        regex_to_dfa(&sys.source, &alphabet_of(sys.order.as_deref(), &sys.source)?)?
    };
    Ok(NumerationSystem::new(&dfa)?)
}

/// A set given as a DFA file or a regex, read over `alphabet`.
fn load_set(source: &str, alphabet: &OrderedAlphabet) -> Out<Dfa> {
    let path = Path::new(source);
    if path.is_file() {
        let dfa = parse_dfa(&fs::read_to_string(path)?)?;
        Ok(dfa.with_order(alphabet)?)
    } else {
        Ok(regex_to_dfa(source, alphabet)?)
    }
}

fn read_word(alphabet: &OrderedAlphabet, arg: &WordArg) -> Out<Word> {
    let text = match (&arg.word, arg.empty) {
        (_, true) | (None, false) => return Ok(Vec::new()),
        (Some(w), false) => w.trim(),
    };
    if text.is_empty() || text == EPSILON {
        return Ok(Vec::new());
    }
    if alphabet.is_single_char() && !text.contains(char::is_whitespace) {
        return Ok(alphabet.encode(text)?);
    }
    text.split_whitespace()
        .map(|l| alphabet.rank(l).ok_or_else(|| ans_core::Error::UnknownLetter(l.to_string()).into()))
        .collect()
}

fn render(alphabet: &OrderedAlphabet, word: &[Letter]) -> String {
    if word.is_empty() {
        EPSILON.to_string()
    } else if alphabet.is_single_char() {
        alphabet.decode(word)
    } else {
        word.iter().map(|&l| alphabet.letter(l)).collect::<Vec<_>>().join(" ")
    }
}

fn emit_dfa(out: &mut impl Write, dest: &OutArg, dfa: &Dfa) -> Out<()> {
    let text = write_dfa(dfa);
    match &dest.output {
        Some(path) => fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(command: Command, out: &mut impl Write) -> Out<()> {
    match command {
        Command::Rep { sys, n } => {
            let s = load_system(&sys)?;
            writeln!(out, "{}", render(s.alphabet(), &s.rep(&n)))?;
        }
        Command::Val { sys, word } => {
            let s = load_system(&sys)?;
            let w = read_word(s.alphabet(), &word)?;
            writeln!(out, "{}", s.val(&w)?)?;
        }
        Command::Succ { sys, word } => {
            let s = load_system(&sys)?;
            let w = read_word(s.alphabet(), &word)?;
            writeln!(out, "{}", render(s.alphabet(), &s.successor(&w)?))?;
        }
        Command::Enum { sys, from, to } => {
            let s = load_system(&sys)?;
            if to >= from {
                let mut left = &to - &from + BigUint::one();
                for w in s.enumerate_from(&from) {
                    writeln!(out, "{}", render(s.alphabet(), &w))?;
                    left -= 1u32;
                    if left.is_zero() {
                        break;
                    }
                }
            }
        }
        Command::Count { sys, max_len } => {
            let s = load_system(&sys)?;
            s.counts().extend_to(max_len);
            for len in 0..=max_len {
                writeln!(out, "{len} {}", s.counts().count(s.initial(), len))?;
            }
        }
        Command::Matrix { sys } => {
            let s = load_system(&sys)?;
            for row in &incidence(s.dfa()).entries {
                let row: Vec<String> = row.iter().map(u64::to_string).collect();
                writeln!(out, "{}", row.join(" "))?;
            }
        }
        Command::Slender { sys } => {
            let s = load_system(&sys)?;
            match slenderness(s.dfa()) {
                Some(d) => writeln!(out, "{d}")?,
                None => writeln!(out, "unbounded")?,
            }
        }
        Command::OrderCheck { sys } => {
            let s = load_system(&sys)?;
            if let Some(eq) = equal_count_bound(s.dfa()) {
                writeln!(out, "equal-counts n0={} lambda={} m={}", eq.n0, eq.lambda, eq.m)?;
            } else if let Some(d) = slenderness(s.dfa()) {
                writeln!(out, "slender d={d}")?;
            } else {
                writeln!(out, "none")?;
            }
        }
        Command::Minlex { sys, out: dest } => {
            let s = load_system(&sys)?;
            emit_dfa(out, &dest, &first_per_length(s.dfa())?)?;
        }
        Command::Maxlex { sys, out: dest } => {
            let s = load_system(&sys)?;
            emit_dfa(out, &dest, &last_per_length(s.dfa())?)?;
        }
        Command::Progression { sys, p, q, out: dest } => {
            let s = load_system(&sys)?;
            emit_dfa(out, &dest, &progression_dfa(&s, &p, q)?)?;
        }
        Command::Member { dfa, word } => {
            let dfa = parse_dfa(&fs::read_to_string(dfa)?)?;
            let w = read_word(dfa.alphabet(), &word)?;
            writeln!(out, "{}", dfa.accepts(&w))?;
        }
        Command::Translate { sys, t, set, out: dest } => {
            let s = load_system(&sys)?;
            let x = load_set(&set, s.alphabet())?;
            emit_dfa(out, &dest, &translate_dfa(&s, &x, t)?)?;
        }
        Command::Reorder { sys, to, set, out: dest } => {
            let s = load_system(&sys)?;
            let t = s.reordered(&OrderedAlphabet::parse_list(&to)?)?;
            match set {
                Some(set) => {
                    let x = load_set(&set, s.alphabet())?;
                    emit_dfa(out, &dest, &reorder_set(&s, &t, &x)?)?;
                }
                None => emit_dfa(out, &dest, theta_graph(&s, &t)?.dfa())?,
            }
        }
        Command::Theta { sys, to, n } => {
            let s = load_system(&sys)?;
            let t = s.reordered(&OrderedAlphabet::parse_list(&to)?)?;
            writeln!(out, "{}", theta_prime(&s, &t, &n)?)?;
        }
        Command::SuccRel { sys, out: dest } => {
            let s = load_system(&sys)?;
            emit_dfa(out, &dest, successor_relation(&s)?.dfa())?;
        }
        Command::Peano { command } => run_peano(command, out)?,
        Command::Pell { alpha, n, count } => {
            let set = pell_solutions(alpha, &n, count)?;
            writeln!(out, "fundamental {} {}", set.fundamental.0, set.fundamental.1)?;
            for (j, class) in set.classes.iter().enumerate() {
                for (x, y) in class {
                    writeln!(out, "{j} {x} {y}")?;
                }
            }
        }
    }
    Ok(())
}

fn run_peano(command: PeanoCommand, out: &mut impl Write) -> Out<()> {
    let ab = OrderedAlphabet::from_chars("ab")?;
    match command {
        PeanoCommand::Mul { alpha, set, out: dest } => {
            let beta = alpha.isqrt();
            if beta * beta != alpha {
                return Err(ans_core::Error::NotSquare(alpha.to_string()).into());
            }
            let x = parse_dfa(&fs::read_to_string(set)?)?.with_order(&ab)?;
            emit_dfa(out, &dest, &multiply_square_set(beta, &x)?)?;
        }
        PeanoCommand::Evidence { alpha, bound, json } => {
            let report = nonsquare_evidence(alpha, bound)?;
            let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Domain(e.to_string()))? + "\n";
            match json {
                Some(path) => {
                    fs::write(path, &text)?;
                    writeln!(out, "alpha {} r {} agree {}", report.alpha, report.r, report.agree)?;
                }
                None => out.write_all(text.as_bytes())?,
            }
        }
        PeanoCommand::Val { word } => {
            let w = read_word(&ab, &word)?;
            let p = w.iter().take_while(|&&l| l == 0).count();
            if w[p..].iter().any(|&l| l == 0) {
                return Err(ans_core::Error::NotInLanguage(ab.decode(&w)).into());
            }
            let q = w.len() - p;
            writeln!(out, "{}", peano_val(&BigUint::from(p), &BigUint::from(q)))?;
        }
        PeanoCommand::Rep { n } => {
            let (p, q) = peano_rep(&n);
            let (p, q) = match (p.to_usize(), q.to_usize()) {
                (Some(p), Some(q)) => (p, q),
                _ => return Err(ans_core::Error::OutOfRange(n.to_string()).into()),
            };
            let w: Word = std::iter::repeat(0).take(p).chain(std::iter::repeat(1).take(q)).collect();
            writeln!(out, "{}", render(&ab, &w))?;
        }
    }
    Ok(())
}
