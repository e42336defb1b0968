//! Change of alphabet order on a fixed language.
//!
//! For `S = (L, Σ, <)` and `T = (L, Σ, ≺)`, `Θ = rep_T ∘ val_S` maps a word
//! to the word with the same value in the other order, and
//! `Θ' = val_T ∘ rep_S`. Both systems share `(v_n)`, so `|Θ(x)| = |x|`.
//!
//! Relations built here are over the letters of `S`: the second component
//! of a pair is written with the letter indices of `S`.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::alphabet::{Letter, OrderedAlphabet, Word};
use crate::automaton::{Dfa, Nfa, State};
use crate::counting::{equal_count_bound, slenderness, CountTable};
use crate::numeration::NumerationSystem;
use crate::periodic::first_per_length;
use crate::relation::{pair_alphabet, pair_letter, PairAutomaton};
use crate::{Error, Result};

/// `Θ(w) = rep_T(val_S(w))`.
pub fn theta(s: &NumerationSystem, t: &NumerationSystem, w: &[Letter]) -> Result<Word> {
    Ok(t.rep(&s.val(w)?))
}

/// `Θ'(n) = val_T(rep_S(n))`.
pub fn theta_prime(s: &NumerationSystem, t: &NumerationSystem, n: &BigUint) -> Result<BigUint> {
    let to_t = s.alphabet().permutation_to(t.alphabet())?;
    t.val(&to_letters_of(&s.rep(n), &to_t))
}

fn check_reordered(s: &NumerationSystem, t: &NumerationSystem) -> Result<Vec<Letter>> {
    let to_s = t.alphabet().permutation_to(s.alphabet())?;
    if !t.dfa().with_order(s.alphabet())?.equivalent(s.dfa())? {
        return Err(Error::Hypothesis("the two systems do not share their language".into()));
    }
    Ok(to_s)
}

/// Words of length `len` accepted from `k`, listed in the order given by
/// `letters` (smallest first).
fn words_of_length(dfa: &Dfa, counts: &CountTable, k: State, len: usize, letters: &[Letter]) -> Vec<Word> {
    fn go(
        dfa: &Dfa,
        counts: &CountTable,
        k: State,
        left: usize,
        letters: &[Letter],
        prefix: &mut Word,
        out: &mut Vec<Word>,
    ) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for &a in letters {
            let next = dfa.next(k, a);
            if counts.is_positive(next, left - 1) {
                prefix.push(a);
                go(dfa, counts, next, left - 1, letters, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if counts.is_positive(k, len) {
        go(dfa, counts, k, len, letters, &mut Vec::new(), &mut out);
    }
    out
}

/// Graph of `Θ` when all states of `M_L` eventually accept the same number
/// of words of each length.
///
/// A word of length at least `n0` splits as `αβ` with `|β| = n0`. The `i`-th
/// letter of `<` in `α` pairs with the `i`-th letter of `≺`, and the blocks
/// `β`, `β'` pair when they have the same rank among the words of length
/// `n0` of their residuals. Shorter words come from a finite table.
pub fn theta_graph_equal_counts(s: &NumerationSystem, t: &NumerationSystem) -> Result<PairAutomaton> {
    let nu = check_reordered(s, t)?;
    let dfa = s.dfa();
    let bound = equal_count_bound(dfa)
        .ok_or_else(|| Error::Hypothesis("states do not eventually accept equally many words".into()))?;
    let n0 = bound.n0;
    let base = s.alphabet().clone();
    let p = base.len();
    let n = dfa.state_count();
    let counts = s.counts();
    let s_order: Vec<Letter> = (0..p).collect();

    let mut nfa = Nfa::new(pair_alphabet(&base), n * n);
    let pair = |k: State, k2: State| k * n + k2;
    nfa.initial = vec![pair(dfa.initial(), dfa.initial())];
    let f = nfa.add_state(true);
    let mut blocks: HashMap<State, Vec<Word>> = HashMap::new();
    let mut blocks_t: HashMap<State, Vec<Word>> = HashMap::new();
    for k in 0..n {
        blocks.insert(k, words_of_length(dfa, counts, k, n0, &s_order));
        blocks_t.insert(k, words_of_length(dfa, counts, k, n0, &nu));
    }
    for k in 0..n {
        for k2 in 0..n {
            let from = pair(k, k2);
            for (i, &b) in nu.iter().enumerate() {
                nfa.add(from, Some(pair_letter(p, Some(i), Some(b))), pair(dfa.next(k, i), dfa.next(k2, b)));
            }
            for (x, y) in blocks[&k].iter().zip(&blocks_t[&k2]) {
                let mut cur = from;
                for j in 0..n0 {
                    let to = if j + 1 == n0 { f } else { nfa.add_state(false) };
                    nfa.add(cur, Some(pair_letter(p, Some(x[j]), Some(y[j]))), to);
                    cur = to;
                }
                if n0 == 0 {
                    nfa.add(from, None, f);
                }
            }
        }
    }
    let long = nfa.determinize()?;
    let short: Vec<(Word, Word)> = dfa
        .words_up_to(n0.saturating_sub(1))
        .into_iter()
        .filter(|x| x.len() < n0)
        .map(|x| {
            let y = theta(s, t, &x)?;
            Ok((x, to_letters_of(&y, &nu)))
        })
        .collect::<Result<_>>()?;
    let table = PairAutomaton::from_pairs(&base, short.iter().map(|(x, y)| (x, y)))?;
    let long = PairAutomaton::new(base, long.minimize())?;
    long.union(&table)
}

fn to_letters_of(word: &[Letter], map: &[Letter]) -> Word {
    word.iter().map(|&a| map[a]).collect()
}

/// The layers `I_1, …, I_d` where `I_j` holds the `j`-th word of each length.
pub fn slender_layers(dfa: &Dfa, d: usize) -> Result<Vec<Dfa>> {
    let mut rest = dfa.minimize();
    let mut layers = Vec::with_capacity(d);
    for _ in 0..d {
        let layer = first_per_length(&rest)?;
        rest = rest.difference(&layer)?;
        layers.push(layer);
    }
    Ok(layers)
}

/// Graph of `Θ` for a slender language: the union of the length-synchronous
/// products of corresponding layers.
pub fn theta_graph_slender(s: &NumerationSystem, t: &NumerationSystem) -> Result<PairAutomaton> {
    check_reordered(s, t)?;
    let d = slenderness(s.dfa()).ok_or_else(|| Error::Hypothesis("the language is not slender".into()))?;
    let d = d.to_usize().ok_or_else(|| Error::OutOfRange(d.to_string()))?;
    let base = s.alphabet().clone();
    let p = base.len();
    let left = slender_layers(s.dfa(), d)?;
    let right = slender_layers(t.dfa(), d)?
        .into_iter()
        .map(|layer| layer.with_order(&base))
        .collect::<Result<Vec<_>>>()?;
    let mut graph = Dfa::empty(pair_alphabet(&base));
    for (a, b) in left.iter().zip(&right) {
        let product = Dfa::explore(
            pair_alphabet(&base),
            (a.initial(), b.initial()),
            |&(qa, qb), letter| {
                let (i, j) = (letter / (p + 1), letter % (p + 1));
                (i < p && j < p).then(|| (a.next(qa, i), b.next(qb, j)))
            },
            |&(qa, qb)| a.is_final(qa) && b.is_final(qb),
        )?;
        graph = graph.union(&product)?;
    }
    PairAutomaton::new(base, graph)
}

/// Graph of `Θ` by whichever of the two constructions applies.
pub fn theta_graph(s: &NumerationSystem, t: &NumerationSystem) -> Result<PairAutomaton> {
    if equal_count_bound(s.dfa()).is_some() {
        theta_graph_equal_counts(s, t)
    } else if slenderness(s.dfa()).is_some() {
        theta_graph_slender(s, t)
    } else {
        Err(Error::Hypothesis(
            "the language neither has eventually equal counts nor is slender".into(),
        ))
    }
}

/// `rep_T(val_S(L(set)))` as a minimal DFA over the alphabet of `T`.
pub fn reorder_set(s: &NumerationSystem, t: &NumerationSystem, set: &Dfa) -> Result<Dfa> {
    let set = if set.alphabet() == s.alphabet() { set.clone() } else { set.with_order(s.alphabet())? };
    if !set.is_subset_of(s.dfa())? {
        return Err(Error::Containment("the set is not included in the language of the system".into()));
    }
    theta_graph(s, t)?.image(&set)?.with_order(t.alphabet()).map(|d| d.minimize())
}

/// `3·2^l − n − 3` with `l = |rep_U(n)|`, for `U = ({a,b}*, a<b)`.
pub fn binary_swap_formula(n: &BigUint) -> BigUint {
    let l = (n + 1u32).bits() - 1;
    (BigUint::from(3u32) << l) - n - 3u32
}

/// `ab a^{n−l−1} b rep_U(n−1)` with `l = |rep_U(n−1)|`, for `n ≥ 2`, over
/// letter indices `a = 0`, `b = 1`.
pub fn ba_b_image_formula(n: usize) -> Word {
    assert!(n >= 2);
    let u = binary_rep(n as u64 - 1);
    let mut w = vec![0, 1];
    w.extend(std::iter::repeat(0).take(n - u.len() - 1));
    w.push(1);
    w.extend(u);
    w
}

/// `rep_U(n)` in `({a,b}*, a<b)`: the binary expansion of `n + 1` without
/// its leading digit.
fn binary_rep(n: u64) -> Word {
    let m = n + 1;
    let bits = 64 - m.leading_zeros() as usize;
    (0..bits - 1).rev().map(|i| ((m >> i) & 1) as Letter).collect()
}

/// Desk-scale non-regularity evidence for a finite sample `Y` of a language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientEvidence {
    /// Number of sampled words.
    pub sample_size: usize,
    /// Suffix length horizon.
    pub horizon: usize,
    /// Number of prefixes examined.
    pub prefixes: usize,
    /// Number of pairwise distinct truncated left quotients.
    pub distinct_quotients: usize,
}

/// Counts the distinct sets `{s : |s| ≤ horizon, xs ∈ Y}` over the prefixes
/// `x` of words of `Y` with `|x| ≤ max_prefix`.
pub fn quotient_evidence(sample: &[Word], horizon: usize, max_prefix: usize) -> QuotientEvidence {
    let set: BTreeSet<&Word> = sample.iter().collect();
    let prefixes: BTreeSet<&[Letter]> =
        sample.iter().flat_map(|w| (0..=w.len().min(max_prefix)).map(move |i| &w[..i])).collect();
    let signatures: BTreeSet<Vec<Word>> = prefixes
        .iter()
        .map(|x| {
            set.iter()
                .filter(|w| w.starts_with(x) && w.len() - x.len() <= horizon)
                .map(|w| w[x.len()..].to_vec())
                .collect()
        })
        .collect();
    QuotientEvidence {
        sample_size: set.len(),
        horizon,
        prefixes: prefixes.len(),
        distinct_quotients: signatures.len(),
    }
}

/// Evidence that `Θ(ba b² b*)` is not regular, for `S = ({a,b}* ∖ a*b*, a<b)`
/// and `T` the same language with `b ≺ a`. Samples `Θ(ba b^n)` for
/// `2 ≤ n ≤ max_n`.
pub fn ba_b_quotient_evidence(max_n: usize, horizon: usize) -> Result<QuotientEvidence> {
    let ab = OrderedAlphabet::from_chars("ab")?;
    let s = NumerationSystem::from_regex("!(a*b*)", &ab)?;
    let t = s.reordered(&OrderedAlphabet::from_chars("ba")?)?;
    let to_s = t.alphabet().permutation_to(s.alphabet())?;
    let sample = (2..=max_n)
        .map(|n| {
            let mut x = vec![1, 0];
            x.extend(std::iter::repeat(1).take(n));
            Ok(to_letters_of(&theta(&s, &t, &x)?, &to_s))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(quotient_evidence(&sample, horizon, (max_n + 2).saturating_sub(horizon)))
}
