//! Binary word relations recognized by automata over padded letter pairs.
//!
//! A pair `(u, v)` is read as its right-padded convolution: position `i`
//! carries `(u_i, v_i)`, the shorter word being padded with `_`. The pair
//! `(_, _)` is not a letter, and a track never resumes after its padding.

use std::collections::BTreeSet;

use crate::alphabet::{Letter, OrderedAlphabet, Word};
use crate::automaton::{Dfa, Nfa, State};
use crate::numeration::NumerationSystem;
use crate::{Error, Result};

/// Text rendering of the padding symbol.
pub const PAD: &str = "_";

/// A DFA over the padded pair alphabet of `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairAutomaton {
    base: OrderedAlphabet,
    dfa: Dfa,
}

/// Padding status of a two-track reading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Pad {
    Both,
    LeftEnded,
    RightEnded,
}

impl Pad {
    fn step(self, x: Option<Letter>, y: Option<Letter>) -> Option<Pad> {
        match (self, x, y) {
            (Pad::Both, Some(_), Some(_)) => Some(Pad::Both),
            (Pad::Both | Pad::LeftEnded, None, Some(_)) => Some(Pad::LeftEnded),
            (Pad::Both | Pad::RightEnded, Some(_), None) => Some(Pad::RightEnded),
            _ => None,
        }
    }
}

/// `(Σ ∪ {_})² ∖ {(_, _)}` in lexicographic order, padding last.
pub fn pair_alphabet(base: &OrderedAlphabet) -> OrderedAlphabet {
    let p = base.len();
    let name = |i: usize| if i == p { PAD } else { base.letter(i) };
    let letters = (0..=p)
        .flat_map(|i| (0..=p).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == p && j == p))
        .map(|(i, j)| format!("{}|{}", name(i), name(j)));
    OrderedAlphabet::new(letters).expect("pair letters are distinct")
}

/// Index of the pair letter `(x, y)`; `None` is the padding.
pub fn pair_letter(p: usize, x: Option<Letter>, y: Option<Letter>) -> Letter {
    let i = x.unwrap_or(p);
    let j = y.unwrap_or(p);
    debug_assert!(i < p || j < p);
    i * (p + 1) + j
}

/// Components of a pair letter.
pub fn split_pair(p: usize, letter: Letter) -> (Option<Letter>, Option<Letter>) {
    let (i, j) = (letter / (p + 1), letter % (p + 1));
    ((i < p).then_some(i), (j < p).then_some(j))
}

/// Right-padded convolution of `u` and `v`.
pub fn convolve(p: usize, u: &[Letter], v: &[Letter]) -> Word {
    (0..u.len().max(v.len())).map(|i| pair_letter(p, u.get(i).copied(), v.get(i).copied())).collect()
}

impl PairAutomaton {
    pub fn new(base: OrderedAlphabet, dfa: Dfa) -> Result<Self> {
        if *dfa.alphabet() != pair_alphabet(&base) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(PairAutomaton { base, dfa })
    }

    /// Recovers the base alphabet from pair letters `x|y`.
    pub fn from_dfa(dfa: Dfa) -> Result<Self> {
        let mut base = Vec::new();
        for letter in dfa.alphabet().letters() {
            let (x, _) = letter
                .split_once('|')
                .ok_or_else(|| Error::Format(format!("{letter:?} is not a pair letter")))?;
            if x != PAD && !base.iter().any(|b: &String| b == x) {
                base.push(x.to_string());
            }
        }
        let base = OrderedAlphabet::new(base)?;
        let dfa = dfa.with_order(&pair_alphabet(&base))?;
        Ok(PairAutomaton { base, dfa })
    }

    pub fn base(&self) -> &OrderedAlphabet {
        &self.base
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    fn p(&self) -> usize {
        self.base.len()
    }

    pub fn accepts(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.dfa.accepts(&convolve(self.p(), u, v))
    }

    /// All well-padded convolutions, i.e. the full relation `Σ* × Σ*`.
    pub fn well_padded(base: &OrderedAlphabet) -> Result<Self> {
        let p = base.len();
        let dfa = Dfa::explore(
            pair_alphabet(base),
            Pad::Both,
            |pad, letter| {
                let (x, y) = split_pair(p, letter);
                pad.step(x, y)
            },
            |_| true,
        )?;
        Ok(PairAutomaton { base: base.clone(), dfa: dfa.minimize() })
    }

    /// `{(w, w) : w ∈ L(lang)}`.
    pub fn identity(lang: &Dfa) -> Result<Self> {
        let base = lang.alphabet().clone();
        let p = base.len();
        let dfa = Dfa::explore(
            pair_alphabet(&base),
            lang.initial(),
            |&k, letter| match split_pair(p, letter) {
                (Some(x), Some(y)) if x == y => Some(lang.next(k, x)),
                _ => None,
            },
            |&k| lang.is_final(k),
        )?;
        Ok(PairAutomaton { base, dfa: dfa.minimize() })
    }

    /// Finite relation given by its pairs.
    pub fn from_pairs<'a, I>(base: &OrderedAlphabet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a Word, &'a Word)>,
    {
        let p = base.len();
        let words: Vec<Word> = pairs.into_iter().map(|(u, v)| convolve(p, u, v)).collect();
        Ok(PairAutomaton { base: base.clone(), dfa: Dfa::from_words(pair_alphabet(base), words.iter())? })
    }

    fn same_base(&self, other: &PairAutomaton) -> Result<()> {
        if self.base != other.base {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn intersect(&self, other: &PairAutomaton) -> Result<Self> {
        self.same_base(other)?;
        Ok(PairAutomaton { base: self.base.clone(), dfa: self.dfa.intersect(&other.dfa)? })
    }

    pub fn union(&self, other: &PairAutomaton) -> Result<Self> {
        self.same_base(other)?;
        Ok(PairAutomaton { base: self.base.clone(), dfa: self.dfa.union(&other.dfa)? })
    }

    pub fn difference(&self, other: &PairAutomaton) -> Result<Self> {
        self.same_base(other)?;
        Ok(PairAutomaton { base: self.base.clone(), dfa: self.dfa.difference(&other.dfa)? })
    }

    /// Complement within well-padded pairs.
    pub fn complement(&self) -> Result<Self> {
        Self::well_padded(&self.base)?.difference(self)
    }

    /// `{(v, u) : (u, v) ∈ R}`.
    pub fn transpose(&self) -> Result<Self> {
        let p = self.p();
        let dfa = Dfa::explore(
            self.dfa.alphabet().clone(),
            self.dfa.initial(),
            |&k, letter| {
                let (x, y) = split_pair(p, letter);
                Some(self.dfa.next(k, pair_letter(p, y, x)))
            },
            |&k| self.dfa.is_final(k),
        )?;
        Ok(PairAutomaton { base: self.base.clone(), dfa: dfa.minimize() })
    }

    /// `{(u, w) : ∃v, (u, v) ∈ self ∧ (v, w) ∈ other}`.
    ///
    /// Three-track product projected on the outer tracks. When the middle
    /// word outlives both outer words its tail becomes ε-moves at the end.
    pub fn compose(&self, other: &PairAutomaton) -> Result<Self> {
        self.same_base(other)?;
        let p = self.p();
        let (r1, r2) = (&self.dfa, &other.dfa);
        // (q1, q2, middle ended, in tail)
        type S = (State, State, bool, bool);
        let step1 = |q: State, x: Option<Letter>, y: Option<Letter>| {
            if x.is_none() && y.is_none() {
                q
            } else {
                r1.next(q, pair_letter(p, x, y))
            }
        };
        let step2 = |q: State, y: Option<Letter>, z: Option<Letter>| {
            if y.is_none() && z.is_none() {
                q
            } else {
                r2.next(q, pair_letter(p, y, z))
            }
        };
        let nfa = Nfa::explore(
            pair_alphabet(&self.base),
            vec![(r1.initial(), r2.initial(), false, false)],
            |&(q1, q2, mid_ended, tail): &S| {
                let mut out = Vec::new();
                let mids: Vec<Option<Letter>> =
                    if mid_ended { vec![None] } else { (0..p).map(Some).chain([None]).collect() };
                if !tail {
                    for letter in 0..(p + 1) * (p + 1) - 1 {
                        let (x, z) = split_pair(p, letter);
                        for &y in &mids {
                            out.push((
                                Some(letter),
                                (step1(q1, x, y), step2(q2, y, z), mid_ended || y.is_none(), false),
                            ));
                        }
                    }
                }
                if !mid_ended {
                    for y in 0..p {
                        out.push((None, (step1(q1, None, Some(y)), step2(q2, Some(y), None), false, true)));
                    }
                }
                out
            },
            |&(q1, q2, _, _)| r1.is_final(q1) && r2.is_final(q2),
        )?;
        let dfa = nfa.determinize()?;
        let padded = Self::well_padded(&self.base)?;
        Ok(PairAutomaton { base: self.base.clone(), dfa: dfa.intersect(&padded.dfa)? })
    }

    /// `{v : ∃u ∈ L(lang), (u, v) ∈ R}` as a minimal DFA over the base alphabet.
    pub fn image(&self, lang: &Dfa) -> Result<Dfa> {
        if *lang.alphabet() != self.base {
            return Err(Error::AlphabetMismatch);
        }
        let p = self.p();
        let r = &self.dfa;
        // (qR, qA, left ended, in tail)
        type S = (State, State, bool, bool);
        let nfa = Nfa::explore(
            self.base.clone(),
            vec![(r.initial(), lang.initial(), false, false)],
            |&(qr, qa, left_ended, tail): &S| {
                let mut out = Vec::new();
                if !tail {
                    for y in 0..p {
                        out.push((Some(y), (r.next(qr, pair_letter(p, None, Some(y))), qa, true, false)));
                        if !left_ended {
                            for x in 0..p {
                                out.push((
                                    Some(y),
                                    (r.next(qr, pair_letter(p, Some(x), Some(y))), lang.next(qa, x), false, false),
                                ));
                            }
                        }
                    }
                }
                if !left_ended {
                    for x in 0..p {
                        out.push((None, (r.next(qr, pair_letter(p, Some(x), None)), lang.next(qa, x), false, true)));
                    }
                }
                out
            },
            |&(qr, qa, _, _)| r.is_final(qr) && lang.is_final(qa),
        )?;
        Ok(nfa.determinize()?.minimize())
    }

    /// First projection.
    pub fn domain(&self) -> Result<Dfa> {
        self.transpose()?.range()
    }

    /// Second projection.
    pub fn range(&self) -> Result<Dfa> {
        self.image(&Dfa::universal(self.base.clone()))
    }

    /// All accepted pairs with both words of length at most `max_len`.
    pub fn pairs_up_to(&self, max_len: usize) -> BTreeSet<(Word, Word)> {
        let p = self.p();
        self.dfa
            .words_up_to(max_len)
            .into_iter()
            .map(|conv| {
                let (mut u, mut v) = (Vec::new(), Vec::new());
                for letter in conv {
                    let (x, y) = split_pair(p, letter);
                    u.extend(x);
                    v.extend(y);
                }
                (u, v)
            })
            .collect()
    }
}

/// Strict radix order restricted to `L × L`.
pub fn radix_order_relation(system: &NumerationSystem) -> Result<PairAutomaton> {
    #[derive(Clone, Copy, PartialEq, Eq, Hash)]
    enum Cmp {
        Less,
        Equal,
        Greater,
    }
    let lang = system.dfa();
    let base = system.alphabet().clone();
    let p = base.len();
    let dfa = Dfa::explore(
        pair_alphabet(&base),
        (lang.initial(), lang.initial(), Pad::Both, Cmp::Equal),
        |&(qu, qv, pad, cmp), letter| {
            let (x, y) = split_pair(p, letter);
            let pad = pad.step(x, y)?;
            let cmp = match (cmp, x, y) {
                (Cmp::Equal, Some(a), Some(b)) if a < b => Cmp::Less,
                (Cmp::Equal, Some(a), Some(b)) if a > b => Cmp::Greater,
                (c, _, _) => c,
            };
            let qu = x.map_or(qu, |a| lang.next(qu, a));
            let qv = y.map_or(qv, |b| lang.next(qv, b));
            Some((qu, qv, pad, cmp))
        },
        |&(qu, qv, pad, cmp)| {
            lang.is_final(qu)
                && lang.is_final(qv)
                && (pad == Pad::LeftEnded || (pad == Pad::Both && cmp == Cmp::Less))
        },
    )?;
    Ok(PairAutomaton { base, dfa: dfa.minimize() })
}

/// Graph of the successor function on `L`: pairs `u < w` with no word of `L`
/// strictly between them, i.e. `O ∖ (O ∘ O)`.
pub fn successor_relation(system: &NumerationSystem) -> Result<PairAutomaton> {
    let order = radix_order_relation(system)?;
    order.difference(&order.compose(&order)?)
}

/// Minimal DFA of `rep_S(val_S(L(set)) + t)`, as the `t`-fold image of
/// `set` under the successor relation.
pub fn translate_dfa(system: &NumerationSystem, set: &Dfa, t: usize) -> Result<Dfa> {
    let set = if set.alphabet() == system.alphabet() { set.clone() } else { set.with_order(system.alphabet())? };
    if !set.is_subset_of(system.dfa())? {
        return Err(Error::Containment("the set is not included in the language of the system".into()));
    }
    let mut cur = set.minimize();
    if t == 0 {
        return Ok(cur);
    }
    let succ = successor_relation(system)?;
    for _ in 0..t {
        cur = succ.image(&cur)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::all_words;
    use crate::regex::regex_to_dfa;
    use num_bigint::BigUint;

    fn peano() -> NumerationSystem {
        NumerationSystem::from_regex("a*b*", &OrderedAlphabet::from_chars("ab").unwrap()).unwrap()
    }

    fn w(s: &NumerationSystem, text: &str) -> Word {
        s.parse_word(text).unwrap()
    }

    #[test]
    fn pair_letters_round_trip() {
        let base = OrderedAlphabet::from_chars("ab").unwrap();
        let pairs = pair_alphabet(&base);
        assert_eq!(pairs.len(), 8);
        assert_eq!(pairs.letter(pair_letter(2, Some(1), None)), "b|_");
        for l in 0..8 {
            let (x, y) = split_pair(2, l);
            assert_eq!(pair_letter(2, x, y), l);
        }
    }

    #[test]
    fn radix_order_examples() {
        let s = peano();
        let o = radix_order_relation(&s).unwrap();
        assert!(o.accepts(&w(&s, "a"), &w(&s, "b")));
        assert!(o.accepts(&w(&s, "b"), &w(&s, "aa")));
        assert!(!o.accepts(&w(&s, "aa"), &w(&s, "b")));
        for x in s.dfa().words_up_to(5) {
            assert!(!o.accepts(&x, &x));
        }
        assert!(o.domain().unwrap().equivalent(s.dfa()).unwrap());
    }

    #[test]
    fn successor_relation_examples() {
        let s = peano();
        let succ = successor_relation(&s).unwrap();
        assert!(succ.accepts(&[], &w(&s, "a")));
        assert!(succ.accepts(&w(&s, "a"), &w(&s, "b")));
        assert!(succ.accepts(&w(&s, "b"), &w(&s, "aa")));
        assert!(!succ.accepts(&w(&s, "a"), &w(&s, "aa")));
        for n in 0..500u64 {
            assert!(succ.accepts(&s.rep_u64(n), &s.rep_u64(n + 1)));
        }
        for u in all_words(2, 6) {
            for v in all_words(2, 7) {
                let expect = s.contains(&u) && s.successor(&u).unwrap() == v;
                assert_eq!(succ.accepts(&u, &v), expect);
            }
        }
    }

    #[test]
    fn identity_laws() {
        let s = peano();
        let id = PairAutomaton::identity(&Dfa::universal(s.alphabet().clone())).unwrap();
        let o = radix_order_relation(&s).unwrap();
        assert_eq!(o.compose(&id).unwrap(), o);
        assert_eq!(id.compose(&o).unwrap(), o);
        assert!(id.image(s.dfa()).unwrap().equivalent(s.dfa()).unwrap());
    }

    #[test]
    fn complement_and_transpose() {
        let s = peano();
        let o = radix_order_relation(&s).unwrap();
        let c = o.complement().unwrap();
        let t = o.transpose().unwrap();
        for u in all_words(2, 4) {
            for v in all_words(2, 4) {
                assert_ne!(o.accepts(&u, &v), c.accepts(&u, &v));
                assert_eq!(o.accepts(&u, &v), t.accepts(&v, &u));
            }
        }
    }

    #[test]
    fn translate_examples() {
        let s = peano();
        let zero = Dfa::from_words(s.alphabet().clone(), [&Vec::new()]).unwrap();
        let three = translate_dfa(&s, &zero, 3).unwrap();
        assert_eq!(three.words_up_to(10), vec![w(&s, "aa")]);
        assert_eq!(translate_dfa(&s, s.dfa(), 0).unwrap(), *s.dfa());
        let outside = regex_to_dfa("ba", s.alphabet()).unwrap();
        assert!(matches!(translate_dfa(&s, &outside, 1), Err(Error::Containment(_))));
        // X = even values, X + 1 = odd values
        let even = crate::periodic::progression_dfa(&s, &BigUint::from(0u32), 2).unwrap();
        let odd = crate::periodic::progression_dfa(&s, &BigUint::from(1u32), 2).unwrap();
        assert!(translate_dfa(&s, &even, 1).unwrap().equivalent(&odd).unwrap());
    }

    #[test]
    fn from_dfa_recovers_base() {
        let s = peano();
        let o = radix_order_relation(&s).unwrap();
        let text = crate::format::write_dfa(o.dfa());
        let back = PairAutomaton::from_dfa(crate::format::parse_dfa(&text).unwrap()).unwrap();
        assert_eq!(back.base(), s.alphabet());
        assert!(back.dfa().equivalent(o.dfa()).unwrap());
    }
}
