//! A deliberately small regular-expression dialect.
//!
//! ```text
//! alt    := concat ('|' concat)*
//! concat := repeat*                  (empty concatenation is ε)
//! repeat := atom '*'*
//! atom   := letter | '.' | '(' alt ')' | '!' '(' alt ')'
//! ```
//!
//! `.` matches any letter and `!(e)` is the complement of `e` in Σ*.

use crate::alphabet::OrderedAlphabet;
use crate::automaton::{Dfa, Nfa};
use crate::{Error, Result};

/// Minimal complete DFA of `pattern` over `alphabet`.
pub fn regex_to_dfa(pattern: &str, alphabet: &OrderedAlphabet) -> Result<Dfa> {
    let chars: Vec<char> = pattern.chars().collect();
    let mut parser = Parser { chars: &chars, pos: 0, alphabet };
    let nfa = parser.alt()?;
    if parser.pos != chars.len() {
        return Err(parser.error("unexpected character"));
    }
    Ok(nfa.determinize()?.minimize())
}

/// Distinct letters mentioned in `pattern`, sorted.
pub fn letters_of(pattern: &str) -> Vec<char> {
    let mut v: Vec<char> = pattern.chars().filter(|c| !"()|*.!".contains(*c)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    alphabet: &'a OrderedAlphabet,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn epsilon(&self) -> Nfa {
        let mut n = Nfa::new(self.alphabet.clone(), 1);
        n.initial = vec![0];
        n.finals[0] = true;
        n
    }

    fn letters(&self, letters: impl Iterator<Item = usize>) -> Nfa {
        let mut n = Nfa::new(self.alphabet.clone(), 2);
        n.initial = vec![0];
        n.finals[1] = true;
        for a in letters {
            n.add(0, Some(a), 1);
        }
        n
    }

    fn alt(&mut self) -> Result<Nfa> {
        let mut acc = self.concat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let rhs = self.concat()?;
            acc = acc.alternate(&rhs)?;
        }
        Ok(acc)
    }

    fn concat(&mut self) -> Result<Nfa> {
        let mut acc = self.epsilon();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let rhs = self.repeat()?;
            acc = acc.concat(&rhs)?;
        }
        Ok(acc)
    }

    fn repeat(&mut self) -> Result<Nfa> {
        let mut atom = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            atom = atom.star();
        }
        Ok(atom)
    }

    fn group(&mut self) -> Result<Nfa> {
        if self.peek() != Some('(') {
            return Err(self.error("expected '('"));
        }
        self.pos += 1;
        let inner = self.alt()?;
        if self.peek() != Some(')') {
            return Err(self.error("expected ')'"));
        }
        self.pos += 1;
        Ok(inner)
    }

    fn atom(&mut self) -> Result<Nfa> {
        match self.peek() {
            None => Err(self.error("unexpected end of pattern")),
            Some('(') => self.group(),
            Some('!') => {
                self.pos += 1;
                let inner = self.group()?;
                Ok(inner.determinize()?.complement().minimize().to_nfa())
            }
            Some('.') => {
                self.pos += 1;
                Ok(self.letters(0..self.alphabet.len()))
            }
            Some('*') => Err(self.error("'*' without operand")),
            Some(c) => {
                let a = self
                    .alphabet
                    .rank(c.encode_utf8(&mut [0u8; 4]))
                    .ok_or_else(|| Error::UnknownLetter(c.to_string()))?;
                self.pos += 1;
                Ok(self.letters(std::iter::once(a)))
            }
        }
    }
}
