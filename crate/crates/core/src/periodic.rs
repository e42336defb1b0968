//! Recognizers for ultimately periodic sets of integers, and the automata of
//! first and last words per length.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::automaton::{Dfa, State};
use crate::counting::{mod_periodicity, ModCounts};
use crate::numeration::NumerationSystem;
use crate::{Error, Result};

/// Right-to-left residue automaton: reads `w` reversed and accepts iff
/// `v_{|w|-1}(s) + rank_s(w) ≡ p (mod q)`, where `rank_k(x)` counts the words
/// of `L_k` of length `|x|` lexicographically below `x`.
///
/// States are `(phase, (rank_k(suffix) mod q)_k)`; the phase is the suffix
/// length folded onto the preperiod and period of the counts mod `q`.
pub fn reversed_residue_dfa(system: &NumerationSystem, p: u64, q: u64) -> Result<Dfa> {
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let dfa = system.dfa();
    let s = dfa.initial();
    let (r, t) = mod_periodicity(dfa, q);
    let phases = r + t;
    let table: Vec<(Vec<u64>, u64)> = ModCounts::new(dfa, q).take(phases).collect();
    // v_{n-1}(s) = v_n(s) - u_n(s)
    let below: Vec<u64> = table.iter().map(|(u, v)| (v + q - u[s]) % q).collect();
    let next_phase = |n: usize| if n + 1 < phases { n + 1 } else { r };
    let target = p % q;
    let start = (0usize, vec![0u64; dfa.state_count()]);
    Dfa::explore(
        dfa.alphabet().clone(),
        start,
        |(phase, res): &(usize, Vec<u64>), sigma| {
            let u = &table[*phase].0;
            let next: Vec<u64> = (0..dfa.state_count())
                .map(|k| {
                    let smaller: u64 = (0..sigma).map(|a| u[dfa.next(k, a)]).fold(0, |acc, x| (acc + x) % q);
                    (smaller + res[dfa.next(k, sigma)]) % q
                })
                .collect();
            Some((next_phase(*phase), next))
        },
        |(phase, res)| (below[*phase] + res[s]) % q == target,
    )
}

/// Minimal DFA of `rep_S(p + ℕq)`.
pub fn progression_dfa(system: &NumerationSystem, p: &BigUint, q: u64) -> Result<Dfa> {
    let qb = BigUint::from(q);
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let base = (p % &qb).to_u64().unwrap();
    let reversed = reversed_residue_dfa(system, base, q)?;
    let forward = reversed.reverse().determinize()?;
    let mut dfa = forward.intersect(system.dfa())?;
    if *p >= qb {
        let (count, _) = (p - base).div_rem(&qb);
        let below: Vec<_> = num_iter(&count).map(|j| system.rep(&(BigUint::from(base) + j * &qb))).collect();
        let finite = Dfa::from_words(system.alphabet().clone(), below.iter())?;
        dfa = dfa.difference(&finite)?;
    }
    Ok(dfa)
}

fn num_iter(count: &BigUint) -> impl Iterator<Item = BigUint> + '_ {
    let mut i = BigUint::zero();
    std::iter::from_fn(move || {
        if i >= *count {
            return None;
        }
        let out = i.clone();
        i += 1u32;
        Some(out)
    })
}

/// Minimal DFA of `rep_S(F ∪ ⋃ (p_i + ℕ q_i))`.
pub fn ultimately_periodic_dfa(
    system: &NumerationSystem,
    finite_part: &[BigUint],
    progressions: &[(BigUint, u64)],
) -> Result<Dfa> {
    let words: Vec<_> = finite_part.iter().map(|n| system.rep(n)).collect();
    let mut dfa = Dfa::from_words(system.alphabet().clone(), words.iter())?;
    for (p, q) in progressions {
        dfa = dfa.union(&progression_dfa(system, p, *q)?)?;
    }
    Ok(dfa)
}

/// Lexicographically first word of each length: `I(L, <)`.
pub fn first_per_length(dfa: &Dfa) -> Result<Dfa> {
    extreme_per_length(dfa, false)
}

/// Lexicographically last word of each length: `G(L, <)`.
pub fn last_per_length(dfa: &Dfa) -> Result<Dfa> {
    extreme_per_length(dfa, true)
}

/// Tracks the current state together with the set of states reached by the
/// strictly smaller (resp. larger) words of the same length.
fn extreme_per_length(dfa: &Dfa, last: bool) -> Result<Dfa> {
    let n = dfa.state_count();
    let p = dfa.alphabet().len();
    let start: (State, Vec<bool>) = (dfa.initial(), vec![false; n]);
    let d = Dfa::explore(
        dfa.alphabet().clone(),
        start,
        |(k, others): &(State, Vec<bool>), sigma| {
            let mut next = vec![false; n];
            for t in (0..n).filter(|&t| others[t]) {
                for a in 0..p {
                    next[dfa.next(t, a)] = true;
                }
            }
            let rivals: Box<dyn Iterator<Item = usize>> =
                if last { Box::new(sigma + 1..p) } else { Box::new(0..sigma) };
            for a in rivals {
                next[dfa.next(*k, a)] = true;
            }
            Some((dfa.next(*k, sigma), next))
        },
        |(k, others)| dfa.is_final(*k) && !(0..n).any(|t| others[t] && dfa.is_final(t)),
    )?;
    Ok(d.minimize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::OrderedAlphabet;
    use crate::regex::regex_to_dfa;

    fn sys(pattern: &str, letters: &str) -> NumerationSystem {
        NumerationSystem::from_regex(pattern, &OrderedAlphabet::parse_list(letters).unwrap()).unwrap()
    }

    fn oracle_check(s: &NumerationSystem, d: &Dfa, accept: impl Fn(u64) -> bool) {
        for w in crate::automaton::all_words(s.alphabet().len(), 8) {
            let expect = s.contains(&w) && accept(s.val(&w).unwrap().to_u64().unwrap());
            assert_eq!(d.accepts(&w), expect, "{}", s.render(&w));
        }
    }

    #[test]
    fn q_one_gives_the_language() {
        let s = sys("!(a*b*)", "a,b");
        let d = progression_dfa(&s, &BigUint::zero(), 1).unwrap();
        assert_eq!(d, *s.dfa());
    }

    #[test]
    fn even_values_in_peano() {
        let s = sys("a*b*", "a,b");
        let d = progression_dfa(&s, &BigUint::zero(), 2).unwrap();
        oracle_check(&s, &d, |v| v % 2 == 0);
    }

    #[test]
    fn progression_with_large_offset() {
        let s = sys("!(a*b*)", "a,b");
        let d = progression_dfa(&s, &BigUint::from(7u32), 3).unwrap();
        oracle_check(&s, &d, |v| v % 3 == 1 && v >= 7);
    }

    #[test]
    fn state_bound_of_residue_automaton() {
        let s = sys("!(a*b*)", "b,a");
        for q in 1..6u64 {
            let (r, t) = mod_periodicity(s.dfa(), q);
            let d = reversed_residue_dfa(&s, 1, q).unwrap();
            assert!(d.state_count() <= (r + t) * (q as usize).pow(3));
        }
    }

    #[test]
    fn ultimately_periodic_examples() {
        let s = sys("a*b*", "a,b");
        let all = ultimately_periodic_dfa(&s, &[], &[(BigUint::zero(), 1)]).unwrap();
        assert_eq!(all, *s.dfa());
        let five = ultimately_periodic_dfa(&s, &[BigUint::from(5u32)], &[]).unwrap();
        oracle_check(&s, &five, |v| v == 5);
        let mixed =
            ultimately_periodic_dfa(&s, &[BigUint::zero(), BigUint::from(1u32)], &[(BigUint::from(2u32), 4)]).unwrap();
        oracle_check(&s, &mixed, |v| v < 2 || v % 4 == 2);
    }

    #[test]
    fn first_and_last_words() {
        let ab = OrderedAlphabet::from_chars("ab").unwrap();
        let l = regex_to_dfa("a*b*", &ab).unwrap();
        assert_eq!(first_per_length(&l).unwrap(), regex_to_dfa("a*", &ab).unwrap());
        assert_eq!(last_per_length(&l).unwrap(), regex_to_dfa("b*", &ab).unwrap());
        let abc = OrderedAlphabet::from_chars("abc").unwrap();
        let l = regex_to_dfa("a*b*|a*c*", &abc).unwrap();
        assert_eq!(first_per_length(&l).unwrap(), regex_to_dfa("a*", &abc).unwrap());
        assert_eq!(last_per_length(&l).unwrap(), regex_to_dfa("c*", &abc).unwrap());
    }

    #[test]
    fn first_per_length_has_one_word_per_inhabited_length() {
        let s = sys("!(a*b*)", "a,b");
        let first = first_per_length(s.dfa()).unwrap();
        let words = first.words_up_to(12);
        for len in 0..=12 {
            let here: Vec<_> = words.iter().filter(|w| w.len() == len).collect();
            match s.min_word(s.initial(), len) {
                Some(m) => assert_eq!(here, vec![&m]),
                None => assert!(here.is_empty()),
            }
        }
    }
}
