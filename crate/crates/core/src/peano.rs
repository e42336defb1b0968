//! Arithmetic in the Peano system `(a*b*, a < b)`, where
//! `val(a^p b^q) = (p+q)(p+q+1)/2 + q`.

use num_bigint::BigUint;
use num_integer::{Integer, Roots};

use crate::alphabet::OrderedAlphabet;
use crate::automaton::{Dfa, State};
use crate::lattice::{block_language, lemineg_language, IntegralMatrix};
use crate::{Error, Result};

/// `val(a^p b^q)`.
pub fn peano_val(p: &BigUint, q: &BigUint) -> BigUint {
    let l = p + q;
    (&l * (&l + 1u32) >> 1) + q
}

/// Exponents `(p, q)` of `rep(n) = a^p b^q`.
pub fn peano_rep(n: &BigUint) -> (BigUint, BigUint) {
    let root: BigUint = Roots::sqrt(&((n << 3u32) + 1u32));
    let l = (root - 1u32) >> 1;
    let q = n - (&l * (&l + 1u32) >> 1);
    (l - &q, q)
}

pub(crate) fn val_u128(p: u128, q: u128) -> u128 {
    let l = p + q;
    l * (l + 1) / 2 + q
}

pub(crate) fn rep_u128(n: u128) -> (u128, u128) {
    let l = ((8 * n + 1).isqrt() - 1) / 2;
    let q = n - l * (l + 1) / 2;
    (l - q, q)
}

/// The part of `ℕ²` on which multiplication by `β²` lengthens words by
/// `⌊β/2⌋ + i` beyond `β(p+q)`.
///
/// With `c = ⌊β/2⌋`, `l = p+q` and `σ = (β² − β(2c+2i+1))/2`, the image of
/// `a^p b^q` is `a^r b^s` where `s = β²q + σl − (c+i)(c+i+1)/2` and
/// `r = βl + c + i − s`. The region is the set where both are non-negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub beta: u64,
    pub i: i64,
}

impl Region {
    pub fn new(beta: u64, i: i64) -> Self {
        Region { beta, i }
    }

    fn c(&self) -> i128 {
        (self.beta / 2) as i128
    }

    fn sigma(&self) -> i128 {
        let (b, c, i) = (self.beta as i128, self.c(), self.i as i128);
        (b * b - b * (2 * c + 2 * i + 1)) / 2
    }

    fn kappa(&self) -> i128 {
        let k = self.c() + self.i as i128;
        k * (k + 1) / 2
    }

    pub fn s(&self, p: i128, q: i128) -> i128 {
        let b = self.beta as i128;
        b * b * q + self.sigma() * (p + q) - self.kappa()
    }

    pub fn r(&self, p: i128, q: i128) -> i128 {
        self.beta as i128 * (p + q) + self.c() + self.i as i128 - self.s(p, q)
    }

    pub fn contains(&self, p: i128, q: i128) -> bool {
        self.r(p, q) >= 0 && self.s(p, q) >= 0
    }

    /// Region of `(p, q)`, read off the length of `rep(β² val(a^p b^q))`.
    pub fn of(beta: u64, p: u64, q: u64) -> Region {
        let b = beta as u128;
        let (r, s) = rep_u128(b * b * val_u128(p as u128, q as u128));
        let i = (r + s) as i128 - (b * (p + q) as u128) as i128 - (beta / 2) as i128;
        Region::new(beta, i as i64)
    }

    /// `(r, s)` as an affine map of `(f, g)` on `{a^{y+fz} b^{w+gx}}`:
    /// matrix `A_i` and offsets `(r_i(y,w), s_i(y,w))`.
    pub fn on(&self, d: &LinearPairSet) -> ([[i128; 2]; 2], [i128; 2]) {
        let b = self.beta as i128;
        let sg = self.sigma();
        let (z, x) = (d.z as i128, d.x as i128);
        let a = [[z * (b - sg), x * (b - b * b - sg)], [z * sg, x * (b * b + sg)]];
        let (y, w) = (d.y as i128, d.w as i128);
        (a, [self.r(y, w), self.s(y, w)])
    }
}

/// `{a^{y+fz} b^{w+gx} : f, g ≥ 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearPairSet {
    pub y: u64,
    pub z: u64,
    pub w: u64,
    pub x: u64,
}

impl LinearPairSet {
    pub fn contains(&self, p: u64, q: u64) -> bool {
        let fits = |v: u64, start: u64, step: u64| {
            v >= start && if step == 0 { v == start } else { (v - start) % step == 0 }
        };
        fits(p, self.y, self.z) && fits(q, self.w, self.x)
    }
}

/// Unary structure of a DFA included in `a*b*`: the states reached by
/// `a^p`, then for each of them the states reached by `b^q`.
#[derive(Clone, Debug)]
pub struct PairChains {
    a_chain: Vec<State>,
    a_pre: usize,
    b_chains: Vec<(Vec<State>, usize)>,
    finals: Vec<bool>,
}

fn chain(dfa: &Dfa, start: State, letter: usize) -> (Vec<State>, usize) {
    let mut seen = vec![usize::MAX; dfa.state_count()];
    let mut states = Vec::new();
    let mut k = start;
    while seen[k] == usize::MAX {
        seen[k] = states.len();
        states.push(k);
        k = dfa.next(k, letter);
    }
    (states, seen[k])
}

fn index(v: u128, len: usize, pre: usize) -> usize {
    if v < len as u128 {
        v as usize
    } else {
        pre + ((v - pre as u128) % (len - pre) as u128) as usize
    }
}

impl PairChains {
    pub fn new(dfa: &Dfa) -> Result<Self> {
        if dfa.alphabet().len() != 2 {
            return Err(Error::InvalidArgument("expected a two-letter alphabet a < b".into()));
        }
        let ab = Dfa::from_partial(dfa.alphabet().clone(), 2, 0, &[0, 1], &[(0, 0, 0), (0, 1, 1), (1, 1, 1)])?;
        if !dfa.is_subset_of(&ab)? {
            return Err(Error::Containment("the set is not included in a*b*".into()));
        }
        let (a_chain, a_pre) = chain(dfa, dfa.initial(), 0);
        let b_chains = a_chain.iter().map(|&k| chain(dfa, k, 1)).collect();
        Ok(PairChains { a_chain, a_pre, b_chains, finals: dfa.finals().to_vec() })
    }

    pub fn contains(&self, p: u128, q: u128) -> bool {
        let (bs, pre) = &self.b_chains[index(p, self.a_chain.len(), self.a_pre)];
        self.finals[bs[index(q, bs.len(), *pre)]]
    }

    /// Preperiod and period of the `a` phase.
    pub fn a_shape(&self) -> (u64, u64) {
        (self.a_pre as u64, (self.a_chain.len() - self.a_pre) as u64)
    }

    /// Largest preperiod and least common period of the `b` phases.
    pub fn b_shape(&self) -> (u64, u64) {
        self.b_chains
            .iter()
            .fold((0, 1), |(t, per), (bs, pre)| (t.max(*pre as u64), per.lcm(&((bs.len() - pre) as u64))))
    }

    /// Finite union of [`LinearPairSet`]s equal to the set.
    pub fn decompose(&self) -> Vec<LinearPairSet> {
        let period_a = (self.a_chain.len() - self.a_pre) as u64;
        let mut out = Vec::new();
        for (p, (bs, pre)) in self.b_chains.iter().enumerate() {
            let z = if p >= self.a_pre { period_a } else { 0 };
            for (q, &k) in bs.iter().enumerate() {
                if self.finals[k] {
                    let x = if q >= *pre { (bs.len() - pre) as u64 } else { 0 };
                    out.push(LinearPairSet { y: p as u64, z, w: q as u64, x });
                }
            }
        }
        out
    }
}

/// Decomposition of a regular subset of `a*b*` into [`LinearPairSet`]s.
pub fn decompose(dfa: &Dfa) -> Result<Vec<LinearPairSet>> {
    Ok(PairChains::new(dfa)?.decompose())
}

fn point_language(alphabet: &OrderedAlphabet, points: &[[i128; 2]]) -> Result<Dfa> {
    let words: Vec<Vec<usize>> = points
        .iter()
        .filter(|h| h[0] >= 0 && h[1] >= 0)
        .map(|h| std::iter::repeat(0).take(h[0] as usize).chain(std::iter::repeat(1).take(h[1] as usize)).collect())
        .collect();
    Dfa::from_words(alphabet.clone(), words.iter())
}

/// `{c + f u : f ≥ 0} ∩ ℕ²`, regular unless `u` points strictly inside the
/// quadrant.
fn ray_language(alphabet: &OrderedAlphabet, c: [i128; 2], u: [i128; 2]) -> Result<Dfa> {
    if u == [0, 0] {
        return point_language(alphabet, &[c]);
    }
    if u[0] < 0 || u[1] < 0 {
        let last = (0..2).filter(|&k| u[k] < 0).map(|k| Integer::div_floor(&c[k], &-u[k])).min().unwrap();
        let points: Vec<[i128; 2]> = (0..=last.max(-1)).map(|f| [c[0] + f * u[0], c[1] + f * u[1]]).collect();
        return point_language(alphabet, &points);
    }
    if u[0] > 0 && u[1] > 0 {
        return Err(Error::NotRecognizable(format!("ray from {c:?} in direction {u:?}")));
    }
    let moving = if u[0] > 0 { 0 } else { 1 };
    let fixed = 1 - moving;
    if c[fixed] < 0 {
        return Ok(Dfa::empty(alphabet.clone()));
    }
    let first = if c[moving] < 0 { Integer::div_ceil(&-c[moving], &u[moving]) } else { 0 };
    let start = (c[moving] + first * u[moving]) as u64;
    let step = u[moving] as u64;
    let fixed_at = c[fixed] as u64;
    let mut thresholds = [0u64; 2];
    let mut periods = [1u64; 2];
    thresholds[fixed] = fixed_at + 1;
    thresholds[moving] = start;
    periods[moving] = step;
    block_language(alphabet, &thresholds, &periods, |h| {
        h[fixed] == fixed_at && h[moving] >= start && (h[moving] - start) % step == 0
    })
}

/// Image of `D ∩ R_i` under multiplication by `β²`.
fn piece_language(alphabet: &OrderedAlphabet, region: Region, d: &LinearPairSet) -> Result<Dfa> {
    let (a, c) = region.on(d);
    let cols = [[a[0][0], a[1][0]], [a[0][1], a[1][1]]];
    match (d.z > 0, d.x > 0) {
        (false, false) => point_language(alphabet, &[c]),
        (true, false) => ray_language(alphabet, c, cols[0]),
        (false, true) => ray_language(alphabet, c, cols[1]),
        (true, true) => {
            let adj_ok = a[1][1] >= 0 && a[0][0] >= 0 && a[0][1] <= 0 && a[1][0] <= 0;
            if adj_ok {
                let m = IntegralMatrix::new(
                    a.iter().map(|row| row.iter().map(|&v| to_i64(v)).collect::<Result<_>>()).collect::<Result<_>>()?,
                    c.iter().map(|&v| to_i64(v)).collect::<Result<_>>()?,
                )?;
                return lemineg_language(&m, alphabet);
            }
            // One parameter bounded by a coordinate that the other cannot raise.
            for j in 0..2 {
                for k in 0..2 {
                    if cols[j][k] < 0 && cols[1 - j][k] <= 0 {
                        let mut out = Dfa::empty(alphabet.clone());
                        if c[k] >= 0 {
                            for f in 0..=c[k] / -cols[j][k] {
                                let start = [c[0] + f * cols[j][0], c[1] + f * cols[j][1]];
                                out = out.union(&ray_language(alphabet, start, cols[1 - j])?)?;
                            }
                        }
                        return Ok(out);
                    }
                }
            }
            Err(Error::NotRecognizable(format!("region {} of {d:?}", region.i)))
        }
    }
}

fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::OutOfRange(v.to_string()))
}

/// `rep(β² val(L(set)))` for a regular `set ⊆ a*b*`.
///
/// Each [`LinearPairSet`] of the set is cut along the regions; on a region
/// the image is an affine image of `ℕ²`, handled by [`lemineg_language`]
/// or, for degenerate families, directly. For even `β` the regions `−1`
/// and `β−1` produce words of the same lengths and are treated together by
/// exact membership on a period box; their union need not be recognizable
/// (`4·val(a*) = val({a^n b^n})`), which is reported as an error.
pub fn multiply_square_set(beta: u64, set: &Dfa) -> Result<Dfa> {
    if beta == 0 {
        return Err(Error::InvalidArgument("β must be positive".into()));
    }
    let chains = PairChains::new(set)?;
    let alphabet = set.alphabet();
    let mut out = Dfa::empty(alphabet.clone());
    if set.accepts(&[]) {
        out = out.union(&point_language(alphabet, &[[0, 0]])?)?;
    }
    let even = beta % 2 == 0;
    for d in chains.decompose() {
        for i in -1..beta as i64 {
            if even && (i == -1 || i == beta as i64 - 1) {
                continue;
            }
            out = out.union(&piece_language(alphabet, Region::new(beta, i), &d)?)?;
        }
    }
    if even {
        out = out.union(&shared_class_language(beta, &chains, alphabet)?)?;
    }
    Ok(out.minimize())
}

/// Even `β`: the image of the regions `−1` and `β−1`, the words of length
/// `≡ ⌊β/2⌋ − 1 (mod β)`. Each side of the line `r − s = ⌊β/2⌋² − 1` is
/// periodic with period `T`; the box construction is exact iff the two
/// sides agree across the line, which is checked on a window covering a
/// full period along it.
fn shared_class_language(beta: u64, chains: &PairChains, alphabet: &OrderedAlphabet) -> Result<Dfa> {
    let b = beta as u128;
    let c = b / 2;
    let (ta, za) = chains.a_shape();
    let (tb, xb) = chains.b_shape();
    let period = beta.pow(3) * za * xb;
    let member = |h: &[u64]| {
        let (r, s) = (h[0] as u128, h[1] as u128);
        if (r + s + 1) % b != c % b {
            return false;
        }
        let v = val_u128(r, s);
        if v % (b * b) != 0 {
            return false;
        }
        let (p, q) = rep_u128(v / (b * b));
        chains.contains(p, q)
    };
    let mut threshold = beta * (2 * (ta + tb) + 4) + beta * beta;
    for _ in 0..2 {
        let window = threshold + 2 * period + beta * beta * (ta + tb + 1);
        let consistent = (0..window).all(|r| {
            (0..window).all(|s| {
                let here = member(&[r, s]);
                (r < threshold || here == member(&[r + period, s]))
                    && (s < threshold || here == member(&[r, s + period]))
            })
        });
        if consistent {
            return block_language(alphabet, &[threshold; 2], &[period; 2], member);
        }
        threshold = 4 * threshold + period;
    }
    Err(Error::NotRecognizable(format!(
        "for β = {beta} the images of the two regions sharing a length class do not match up"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeration::NumerationSystem;
    use crate::regex::regex_to_dfa;
    use std::collections::BTreeSet;

    fn ab() -> OrderedAlphabet {
        OrderedAlphabet::from_chars("ab").unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn closed_forms() {
        let s = NumerationSystem::from_regex("a*b*", &ab()).unwrap();
        for n in 0..2000u64 {
            let w = s.rep_u64(n);
            let p = w.iter().filter(|&&a| a == 0).count() as u64;
            let q = w.len() as u64 - p;
            assert_eq!(peano_rep(&big(n)), (big(p), big(q)));
            assert_eq!(peano_val(&big(p), &big(q)), big(n));
            assert_eq!(rep_u128(n as u128), (p as u128, q as u128));
        }
        assert_eq!(peano_val(&big(1), &big(1)), big(4));
        assert_eq!(peano_val(&big(0), &big(0)), big(0));
        assert_eq!(peano_rep(&big(36)), (big(8), big(0)));
        assert_eq!(peano_val(&big(8), &big(0)), big(9) * peano_val(&big(1), &big(1)));
    }

    #[test]
    fn odd_region_formula() {
        // r = β(i+1)p − β(β−i−1)q + ((β+2i+2)² − 9)/8 for odd β
        for beta in [1u64, 3, 5, 7] {
            for p in 0..40u64 {
                for q in 0..40u64 {
                    let reg = Region::of(beta, p, q);
                    let (b, i) = (beta as i128, reg.i as i128);
                    let expect = b * (i + 1) * p as i128 - b * (b - i - 1) * q as i128
                        + ((b + 2 * i + 2).pow(2) - 9) / 8;
                    assert_eq!(reg.r(p as i128, q as i128), expect);
                }
            }
        }
    }

    #[test]
    fn regions_partition() {
        for beta in 1u64..=7 {
            let c = (beta / 2) as i64;
            for p in 0..=200u64 {
                for q in 0..=200 - p {
                    let reg = Region::of(beta, p, q);
                    let (pi, qi) = (p as i128, q as i128);
                    let hits: Vec<i64> =
                        (-c..beta as i64).filter(|&i| Region::new(beta, i).contains(pi, qi)).collect();
                    assert_eq!(hits, vec![reg.i]);
                    if (p, q) != (0, 0) {
                        assert!((-1..beta as i64).contains(&reg.i));
                    }
                    let (r, s) = (reg.r(pi, qi) as u128, reg.s(pi, qi) as u128);
                    let b = beta as u128;
                    assert_eq!(val_u128(r, s), b * b * val_u128(p as u128, q as u128));
                    let (l, l2) = ((p + q) as u128, r + s);
                    assert!(l2 * (l2 + 1) <= b * b * l * (l + 3));
                    assert!(b * b * l * (l + 1) <= l2 * (l2 + 3));
                }
            }
        }
    }

    #[test]
    fn example_region() {
        let reg = Region::of(3, 1, 1);
        assert_eq!(reg.i, 1);
        assert_eq!((reg.r(1, 1), reg.s(1, 1)), (8, 0));
    }

    #[test]
    fn decomposition_round_trip() {
        for pattern in ["a*b*", "(aa)*b(bbb)*", "aab*|a(aaa)*bb", "", "ab|b", "a*"] {
            let d = regex_to_dfa(pattern, &ab()).unwrap();
            let parts = decompose(&d).unwrap();
            for p in 0..30u64 {
                for q in 0..30u64 {
                    let word: Vec<usize> =
                        std::iter::repeat(0).take(p as usize).chain(std::iter::repeat(1).take(q as usize)).collect();
                    assert_eq!(parts.iter().any(|s| s.contains(p, q)), d.accepts(&word), "{pattern} {p} {q}");
                }
            }
        }
        let outside = regex_to_dfa("ba", &ab()).unwrap();
        assert!(matches!(decompose(&outside), Err(Error::Containment(_))));
    }

    fn brute(beta: u64, set: &Dfa, max_val: u128) -> BTreeSet<(u128, u128)> {
        let chains = PairChains::new(set).unwrap();
        let b = beta as u128;
        (0..=max_val)
            .map(rep_u128)
            .filter(|&(p, q)| chains.contains(p, q))
            .map(|(p, q)| rep_u128(b * b * val_u128(p, q)))
            .collect()
    }

    fn check(beta: u64, pattern: &str, max_val: u128) {
        let set = regex_to_dfa(pattern, &ab()).unwrap();
        let image = multiply_square_set(beta, &set).unwrap();
        let chains = PairChains::new(&image).unwrap();
        let expect = brute(beta, &set, max_val);
        let b2 = (beta * beta) as u128;
        let got: BTreeSet<(u128, u128)> = (0..=max_val * b2)
            .map(rep_u128)
            .filter(|&(p, q)| chains.contains(p, q))
            .collect();
        assert_eq!(got, expect, "β={beta} {pattern}");
    }

    #[test]
    fn multiply_examples() {
        let ab_set = regex_to_dfa("ab", &ab()).unwrap();
        let nine = multiply_square_set(3, &ab_set).unwrap();
        assert_eq!(nine.words_up_to(20), vec![vec![0; 8]]);
        let all = regex_to_dfa("a*b*", &ab()).unwrap();
        assert!(multiply_square_set(1, &all).unwrap().equivalent(&all).unwrap());
        for pattern in ["a*b*", "(aa)*b(bbb)*", "aab*|a(aaa)*bb", "a*", "b*", "a(aa)*b*|bb"] {
            for beta in [1, 3, 5] {
                check(beta, pattern, 600);
            }
        }
    }

    #[test]
    fn even_beta() {
        check(2, "a*b*", 600);
        check(4, "a*b*", 300);
        check(2, "aa*b*|bb*", 600);
        check(2, "ab|aab|bbbb", 600);
        check(6, "a*b*", 100);
        // 4·val(a^n) = val(a^n b^n)
        for pattern in ["a*", "(aa)*(bb)*", "aa*b*"] {
            let set = regex_to_dfa(pattern, &ab()).unwrap();
            assert!(matches!(multiply_square_set(2, &set), Err(Error::NotRecognizable(_))), "{pattern}");
        }
    }
}
