use std::fmt;

use crate::{Error, Result};

/// Letter index into an [`OrderedAlphabet`]; the index is also the rank of
/// the letter under the alphabet's order.
pub type Letter = usize;

/// A word as a sequence of letter indices.
pub type Word = Vec<Letter>;

/// Finite alphabet with a strict total order given by declaration order.
///
/// Letters are short whitespace-free tokens. Numeration systems use single
/// characters; relation automata use pair tokens such as `a|b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrderedAlphabet {
    letters: Vec<String>,
}

impl OrderedAlphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::Alphabet("an alphabet needs at least one letter".into()));
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Alphabet(format!("bad letter {l:?}")));
            }
            if letters[..i].contains(l) {
                return Err(Error::Alphabet(format!("duplicate letter {l:?}")));
            }
        }
        Ok(OrderedAlphabet { letters })
    }

    /// One letter per character, in the given order: `from_chars("ab")`.
    pub fn from_chars(letters: &str) -> Result<Self> {
        Self::new(letters.chars().map(String::from))
    }

    /// Parses a comma separated list such as `b,a`.
    pub fn parse_list(list: &str) -> Result<Self> {
        Self::new(list.split(',').map(str::trim).filter(|s| !s.is_empty()))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter(&self, index: Letter) -> &str {
        &self.letters[index]
    }

    pub fn rank(&self, letter: &str) -> Option<Letter> {
        self.letters.iter().position(|l| l == letter)
    }

    pub fn is_single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Encodes a word written with one character per letter.
    pub fn encode(&self, word: &str) -> Result<Word> {
        let mut buf = [0u8; 4];
        word.chars()
            .map(|c| {
                let s = c.encode_utf8(&mut buf);
                self.rank(s).ok_or_else(|| Error::UnknownLetter(s.to_string()))
            })
            .collect()
    }

    /// Concatenates the letters of `word`.
    pub fn decode(&self, word: &[Letter]) -> String {
        word.iter().map(|&l| self.letters[l].as_str()).collect()
    }

    /// True when both alphabets hold the same letters, possibly in another order.
    pub fn same_letters(&self, other: &OrderedAlphabet) -> bool {
        self.len() == other.len() && self.letters.iter().all(|l| other.rank(l).is_some())
    }

    /// `map[i]` is the index in `other` of letter `i` of `self`.
    pub fn permutation_to(&self, other: &OrderedAlphabet) -> Result<Vec<Letter>> {
        if !self.same_letters(other) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.letters.iter().map(|l| other.rank(l).unwrap()).collect())
    }
}

impl fmt::Debug for OrderedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.join("<"))
    }
}

impl fmt::Display for OrderedAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.join(" "))
    }
}

/// Radix (genealogical) comparison: shorter first, then lexicographic.
pub fn radix_cmp(u: &[Letter], v: &[Letter]) -> std::cmp::Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty() {
        assert!(OrderedAlphabet::from_chars("aba").is_err());
        assert!(OrderedAlphabet::from_chars("").is_err());
        assert!(OrderedAlphabet::new(["a b"]).is_err());
    }

    #[test]
    fn ranks_follow_declaration_order() {
        let sigma = OrderedAlphabet::parse_list("b,a").unwrap();
        assert_eq!(sigma.rank("b"), Some(0));
        assert_eq!(sigma.rank("a"), Some(1));
        assert_eq!(sigma.encode("ab").unwrap(), vec![1, 0]);
        assert_eq!(sigma.decode(&[1, 0]), "ab");
        assert!(sigma.encode("c").is_err());
    }

    #[test]
    fn permutation_between_orders() {
        let ab = OrderedAlphabet::from_chars("abc").unwrap();
        let ba = OrderedAlphabet::from_chars("cab").unwrap();
        assert_eq!(ab.permutation_to(&ba).unwrap(), vec![1, 2, 0]);
        assert!(ab.permutation_to(&OrderedAlphabet::from_chars("ab").unwrap()).is_err());
    }

    #[test]
    fn radix_order() {
        use std::cmp::Ordering::*;
        assert_eq!(radix_cmp(&[1], &[0, 0]), Less);
        assert_eq!(radix_cmp(&[0, 1], &[1, 0]), Less);
        assert_eq!(radix_cmp(&[0], &[0]), Equal);
    }
}
