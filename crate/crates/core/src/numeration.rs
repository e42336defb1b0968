//! Ranking and unranking in radix order.

use num_bigint::BigUint;

use crate::alphabet::{Letter, OrderedAlphabet, Word};
use crate::automaton::{Dfa, State};
use crate::counting::CountTable;
use crate::regex::regex_to_dfa;
use crate::{Error, Result};

/// `S = (L, Σ, <)`: an infinite regular language read in radix order.
///
/// Holds the minimal automaton of `L` and its count table. Counts are
/// extended on demand; call [`NumerationSystem::freeze`] first to serve
/// many threads from a fixed table.
#[derive(Debug)]
pub struct NumerationSystem {
    dfa: Dfa,
    counts: CountTable,
}

/// One term `c · u_l(k)` of the digit expansion of a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Digit {
    pub state: State,
    pub length: usize,
    pub digit: usize,
}

impl NumerationSystem {
    pub fn new(dfa: &Dfa) -> Result<Self> {
        let dfa = dfa.minimize();
        if !dfa.is_infinite() {
            return Err(Error::FiniteLanguage);
        }
        let counts = CountTable::new(&dfa);
        Ok(NumerationSystem { dfa, counts })
    }

    pub fn from_regex(pattern: &str, alphabet: &OrderedAlphabet) -> Result<Self> {
        Self::new(&regex_to_dfa(pattern, alphabet)?)
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        self.dfa.alphabet()
    }

    pub fn counts(&self) -> &CountTable {
        &self.counts
    }

    pub fn initial(&self) -> State {
        self.dfa.initial()
    }

    /// Pre-extends the count table up to `len`.
    pub fn freeze(&self, len: usize) {
        self.counts.extend_to(len);
    }

    /// Same language under another order of the same letters.
    pub fn reordered(&self, alphabet: &OrderedAlphabet) -> Result<Self> {
        Self::new(&self.dfa.with_order(alphabet)?)
    }

    pub fn contains(&self, word: &[Letter]) -> bool {
        word.iter().all(|&a| a < self.alphabet().len()) && self.dfa.accepts(word)
    }

    pub fn parse_word(&self, word: &str) -> Result<Word> {
        self.alphabet().encode(word)
    }

    pub fn render(&self, word: &[Letter]) -> String {
        self.alphabet().decode(word)
    }

    /// Representation of `n`: the `(n+1)`-th word of `L` in radix order.
    pub fn rep(&self, n: &BigUint) -> Word {
        self.rep_from(self.initial(), n).expect("L is infinite")
    }

    pub fn rep_u64(&self, n: u64) -> Word {
        self.rep(&BigUint::from(n))
    }

    /// Unranking in the subsystem rooted at `k`. For finite `L_k` the domain
    /// is `0..#L_k`.
    pub fn rep_from(&self, k: State, n: &BigUint) -> Result<Word> {
        if !self.dfa.is_infinite_from(k) {
            let total = self.counts.cumulative(k, self.dfa.state_count());
            if *n >= total {
                return Err(Error::OutOfRange(n.to_string()));
            }
        }
        let mut len = 0;
        while self.counts.cumulative(k, len) <= *n {
            len += 1;
        }
        let mut m = n - self.counts.cumulative_below(k, len);
        let mut state = k;
        let mut word = Vec::with_capacity(len);
        for i in 1..=len {
            let mut letter = 0;
            loop {
                let c = self.counts.count(self.dfa.next(state, letter), len - i);
                if m < c {
                    break;
                }
                m -= c;
                letter += 1;
            }
            state = self.dfa.next(state, letter);
            word.push(letter);
        }
        Ok(word)
    }

    /// Numerical value of `word`: the number of words of `L` before it.
    pub fn val(&self, word: &[Letter]) -> Result<BigUint> {
        self.val_from(self.initial(), word)
    }

    /// Ranking in the subsystem rooted at `k`, one letter at a time.
    pub fn val_from(&self, k: State, word: &[Letter]) -> Result<BigUint> {
        if !(word.iter().all(|&a| a < self.alphabet().len()) && self.dfa.accepts_from(k, word)) {
            return Err(Error::NotInLanguage(self.render_lossy(word)));
        }
        let n = word.len();
        let mut total = self.counts.cumulative_below(k, n);
        let mut state = k;
        for (i, &a) in word.iter().enumerate() {
            for smaller in 0..a {
                total += self.counts.count(self.dfa.next(state, smaller), n - i - 1);
            }
            state = self.dfa.next(state, a);
        }
        Ok(total)
    }

    fn render_lossy(&self, word: &[Letter]) -> String {
        word.iter()
            .map(|&a| if a < self.alphabet().len() { self.alphabet().letter(a).to_string() } else { "?".into() })
            .collect()
    }

    /// Digit expansion `val(w) = Σ c_{k,l} u_l(k)` with `l < |w|`.
    ///
    /// Only terms with `u_l(k) > 0` and `c > 0` are listed, sorted by
    /// decreasing length then state. Every digit is at most `#Σ`.
    pub fn val_decomposition(&self, word: &[Letter]) -> Result<Vec<Digit>> {
        self.val(word)?;
        let n = word.len();
        let p = self.alphabet().len();
        let s = self.initial();
        let mut digits = Vec::new();
        let mut state = s;
        for (i, &a) in word.iter().enumerate() {
            let len = n - i - 1;
            let mut here = vec![0usize; self.dfa.state_count()];
            here[s] += 1;
            for smaller in 0..a {
                here[self.dfa.next(state, smaller)] += 1;
            }
            for (k, &c) in here.iter().enumerate() {
                if c > 0 && self.counts.is_positive(k, len) {
                    debug_assert!(c <= p);
                    digits.push(Digit { state: k, length: len, digit: c });
                }
            }
            state = self.dfa.next(state, a);
        }
        Ok(digits)
    }

    /// Evaluates a digit expansion.
    pub fn eval_digits(&self, digits: &[Digit]) -> BigUint {
        digits.iter().map(|d| self.counts.count(d.state, d.length) * d.digit).sum()
    }

    /// Next word of `L` in radix order, without ranking.
    pub fn successor(&self, word: &[Letter]) -> Result<Word> {
        if !self.contains(word) {
            return Err(Error::NotInLanguage(self.render_lossy(word)));
        }
        let n = word.len();
        let mut path = Vec::with_capacity(n + 1);
        path.push(self.initial());
        for &a in word {
            path.push(self.dfa.next(*path.last().unwrap(), a));
        }
        for i in (0..n).rev() {
            for bigger in word[i] + 1..self.alphabet().len() {
                let t = self.dfa.next(path[i], bigger);
                if let Some(tail) = self.min_word(t, n - i - 1) {
                    let mut out = word[..i].to_vec();
                    out.push(bigger);
                    out.extend(tail);
                    return Ok(out);
                }
            }
        }
        let mut len = n + 1;
        loop {
            if let Some(w) = self.min_word(self.initial(), len) {
                return Ok(w);
            }
            len += 1;
        }
    }

    /// Lexicographically least word of length `len` in `L_k`.
    pub fn min_word(&self, k: State, len: usize) -> Option<Word> {
        self.extreme_word(k, len, false)
    }

    /// Lexicographically greatest word of length `len` in `L_k`.
    pub fn max_word(&self, k: State, len: usize) -> Option<Word> {
        self.extreme_word(k, len, true)
    }

    fn extreme_word(&self, k: State, len: usize, greatest: bool) -> Option<Word> {
        if !self.counts.is_positive(k, len) {
            return None;
        }
        let p = self.alphabet().len();
        let mut state = k;
        let mut word = Vec::with_capacity(len);
        for rest in (0..len).rev() {
            let pick = |a: &Letter| self.counts.is_positive(self.dfa.next(state, *a), rest);
            let a = if greatest { (0..p).rev().find(pick) } else { (0..p).find(pick) }?;
            word.push(a);
            state = self.dfa.next(state, a);
        }
        Some(word)
    }

    /// `#L_k` when finite.
    pub fn finite_size(&self, k: State) -> Option<BigUint> {
        (!self.dfa.is_infinite_from(k)).then(|| self.counts.cumulative(k, self.dfa.state_count()))
    }

    /// Iterates `rep(from), rep(from+1), …` using successors.
    pub fn enumerate_from(&self, from: &BigUint) -> impl Iterator<Item = Word> + '_ {
        let mut cur = Some(self.rep(from));
        std::iter::from_fn(move || {
            let w = cur.take()?;
            cur = self.successor(&w).ok();
            Some(w)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn sys(pattern: &str, letters: &str) -> NumerationSystem {
        NumerationSystem::from_regex(pattern, &OrderedAlphabet::parse_list(letters).unwrap()).unwrap()
    }

    fn w(s: &NumerationSystem, text: &str) -> Word {
        s.parse_word(text).unwrap()
    }

    #[test]
    fn peano_rep_and_val() {
        let s = sys("a*b*", "a,b");
        assert_eq!(s.render(&s.rep_u64(4)), "ab");
        assert_eq!(s.rep_u64(0), Vec::<Letter>::new());
        assert_eq!(s.val(&w(&s, "aabbb")).unwrap(), BigUint::from(18u32));
        assert!(matches!(s.val(&w(&s, "ba")), Err(Error::NotInLanguage(_))));
    }

    #[test]
    fn sigma_star_rep() {
        let s = sys("(a|b)*", "a,b");
        assert_eq!(s.render(&s.rep_u64(3)), "aa");
        assert_eq!(s.render(&s.successor(&w(&s, "bb")).unwrap()), "aaa");
    }

    #[test]
    fn complement_value_of_babb() {
        let s = sys("!(a*b*)", "a,b");
        assert_eq!(s.val(&w(&s, "babb")).unwrap(), BigUint::from(12u32));
        // enumeration oracle: all words of L up to length 4 in radix order
        let words = s.dfa().words_up_to(4);
        assert_eq!(words.iter().position(|x| *x == w(&s, "babb")), Some(12));
        // closed form for val(ba b^n)
        for n in 2..40u32 {
            let mut word = w(&s, "ba");
            word.extend(std::iter::repeat(1).take(n as usize));
            let two = |e: u32| BigUint::one() << e;
            let sum: BigUint = (2..=n + 1).map(|i| two(i) - BigUint::from(i + 1)).sum();
            let expect = sum + two(n + 1) + two(n) - BigUint::from(n + 3);
            assert_eq!(s.val(&word).unwrap(), expect, "n = {n}");
        }
        assert_eq!(s.render(&s.rep_u64(0)), "ba");
    }

    #[test]
    fn successor_examples() {
        let s = sys("a*b*", "a,b");
        assert_eq!(s.render(&s.successor(&w(&s, "b")).unwrap()), "aa");
        assert!(s.successor(&w(&s, "ba")).is_err());
    }

    #[test]
    fn extreme_words() {
        let s = sys("a*b*", "a,b");
        assert_eq!(s.render(&s.min_word(0, 3).unwrap()), "aaa");
        assert_eq!(s.render(&s.max_word(0, 3).unwrap()), "bbb");
        let c = sys("!(a*b*)", "a,b");
        assert_eq!(c.render(&c.min_word(0, 2).unwrap()), "ba");
        assert_eq!(c.max_word(0, 1), None);
    }

    #[test]
    fn digits_of_first_word_vanish() {
        for (pat, letters) in [("a*b*", "a,b"), ("!(a*b*)", "a,b"), ("a*b|c*", "a,b,c")] {
            let s = sys(pat, letters);
            let first = s.rep_u64(0);
            assert!(s.val_decomposition(&first).unwrap().is_empty());
        }
        let s = sys("a*b*", "a,b");
        let d = s.val_decomposition(&w(&s, "ab")).unwrap();
        assert_eq!(s.eval_digits(&d), BigUint::from(4u32));
    }

    #[test]
    fn finite_subsystem_domain() {
        // a*b*: after reading b the residual is b*, after ba it is empty
        let s = sys("a*b|c*", "a,b,c");
        let after_b = s.dfa().next(s.initial(), 1);
        assert_eq!(s.finite_size(after_b), Some(BigUint::one()));
        assert_eq!(s.rep_from(after_b, &BigUint::zero()).unwrap(), Vec::<Letter>::new());
        assert!(matches!(s.rep_from(after_b, &BigUint::one()), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn finite_language_is_rejected() {
        let a = OrderedAlphabet::from_chars("ab").unwrap();
        assert!(matches!(NumerationSystem::from_regex("ab|a", &a), Err(Error::FiniteLanguage)));
    }

    #[test]
    fn enumerate_agrees_with_rep() {
        let s = sys("(b|ab*a)*", "a,b");
        let from = BigUint::from(17u32);
        for (i, word) in s.enumerate_from(&from).take(200).enumerate() {
            assert_eq!(word, s.rep_u64(17 + i as u64));
        }
    }
}
