//! Line-oriented text format for automata.
//!
//! ```text
//! alphabet: a b
//! states: 2
//! initial: 0
//! finals: 0 1
//! trans: 0 a 0
//! trans: 0 b 1
//! trans: 1 b 1
//! ```
//!
//! Declaration order of the alphabet is the letter order. Missing
//! transitions go to an implicit rejecting sink, which is never written out
//! unless it is the initial state. Lines starting with `#` are comments.

use std::fmt::Write as _;

use crate::alphabet::OrderedAlphabet;
use crate::automaton::Dfa;
use crate::{Error, Result};

pub fn write_dfa(dfa: &Dfa) -> String {
    let n = dfa.state_count();
    let p = dfa.alphabet().len();
    let hidden: Vec<bool> = (0..n).map(|k| k != dfa.initial() && dfa.is_sink(k)).collect();
    let mut id = vec![usize::MAX; n];
    let mut next = 0;
    for k in 0..n {
        if !hidden[k] {
            id[k] = next;
            next += 1;
        }
    }
    let mut out = String::new();
    writeln!(out, "alphabet: {}", dfa.alphabet()).unwrap();
    writeln!(out, "states: {next}").unwrap();
    writeln!(out, "initial: {}", id[dfa.initial()]).unwrap();
    let finals: Vec<String> = (0..n).filter(|&k| dfa.is_final(k)).map(|k| id[k].to_string()).collect();
    if finals.is_empty() {
        writeln!(out, "finals:").unwrap();
    } else {
        writeln!(out, "finals: {}", finals.join(" ")).unwrap();
    }
    for k in (0..n).filter(|&k| !hidden[k]) {
        for a in 0..p {
            let t = dfa.next(k, a);
            if !hidden[t] {
                writeln!(out, "trans: {} {} {}", id[k], dfa.alphabet().letter(a), id[t]).unwrap();
            }
        }
    }
    out
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let mut alphabet = None;
    let mut states = None;
    let mut initial = None;
    let mut finals = Vec::new();
    let mut trans = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| Error::Format(format!("line {}: {msg}", lineno + 1));
        let (key, value) = line.split_once(':').ok_or_else(|| err("expected `key: value`"))?;
        let value = value.trim();
        let num = |s: &str| s.parse::<usize>().map_err(|_| err(&format!("bad number {s:?}")));
        match key.trim() {
            "alphabet" => alphabet = Some(OrderedAlphabet::new(value.split_whitespace())?),
            "states" => states = Some(num(value)?),
            "initial" => initial = Some(num(value)?),
            "finals" => {
                for f in value.split_whitespace() {
                    finals.push(num(f)?);
                }
            }
            "trans" => {
                let sigma = alphabet.as_ref().ok_or_else(|| err("`trans` before `alphabet`"))?;
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(err("expected `trans: src letter dst`"));
                }
                let a = sigma.rank(parts[1]).ok_or_else(|| Error::UnknownLetter(parts[1].to_string()))?;
                trans.push((num(parts[0])?, a, num(parts[2])?));
            }
            other => return Err(err(&format!("unknown key {other:?}"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| Error::Format("missing `alphabet`".into()))?;
    let states = states.ok_or_else(|| Error::Format("missing `states`".into()))?;
    let initial = initial.ok_or_else(|| Error::Format("missing `initial`".into()))?;
    if states == 0 || initial >= states {
        return Err(Error::Format("initial state out of range".into()));
    }
    Dfa::from_partial(alphabet, states, initial, &finals, &trans)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::regex_to_dfa;

    #[test]
    fn writes_without_sink() {
        let d = regex_to_dfa("a*b*", &OrderedAlphabet::from_chars("ab").unwrap()).unwrap();
        let text = write_dfa(&d);
        assert_eq!(
            text,
            "alphabet: a b\nstates: 2\ninitial: 0\nfinals: 0 1\ntrans: 0 a 0\ntrans: 0 b 1\ntrans: 1 b 1\n"
        );
        assert_eq!(parse_dfa(&text).unwrap().minimize(), d);
    }

    #[test]
    fn empty_language_keeps_its_initial_sink() {
        let d = Dfa::empty(OrderedAlphabet::from_chars("ab").unwrap());
        let text = write_dfa(&d);
        assert_eq!(text, "alphabet: a b\nstates: 1\ninitial: 0\nfinals:\ntrans: 0 a 0\ntrans: 0 b 0\n");
        assert!(parse_dfa(&text).unwrap().is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(parse_dfa("states: 1\ninitial: 0\n").is_err());
        assert!(parse_dfa("alphabet: a\nstates: 1\ninitial: 0\ntrans: 0 b 0\n").is_err());
        assert!(parse_dfa("alphabet: a\nstates: 1\ninitial: 3\n").is_err());
        assert!(parse_dfa("alphabet: a\nstates: 2\ninitial: 0\ntrans: 0 a 0\ntrans: 0 a 1\n").is_err());
    }

    #[test]
    fn pair_letters_round_trip() {
        let text = "# relation\nalphabet: a|a a|_ _|a\nstates: 1\ninitial: 0\nfinals: 0\ntrans: 0 a|a 0\n";
        let d = parse_dfa(text).unwrap();
        assert_eq!(d.alphabet().letter(1), "a|_");
        assert_eq!(write_dfa(&d.minimize()), text.trim_start_matches("# relation\n"));
    }
}
