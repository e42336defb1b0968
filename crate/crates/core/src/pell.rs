//! Pell equations `X² − αY² = N` and the non-square multiplication evidence
//! in the Peano system.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::peano::peano_rep;
use crate::{Error, Result};

fn check_alpha(alpha: u64) -> Result<()> {
    if alpha < 2 {
        return Err(Error::InvalidArgument(format!("α must be at least 2, got {alpha}")));
    }
    let root = alpha.sqrt();
    if root * root == alpha {
        return Err(Error::PerfectSquare(alpha.to_string()));
    }
    Ok(())
}

/// Least solution `(u, v)` of `U² − αV² = 1` with `u > 1`, from the
/// continued fraction of `√α`.
pub fn pell_fundamental(alpha: u64) -> Result<(BigUint, BigUint)> {
    check_alpha(alpha)?;
    let a0 = alpha.sqrt();
    let (mut m, mut d, mut a) = (0u64, 1u64, a0);
    let (mut h_prev, mut h) = (BigUint::one(), BigUint::from(a0));
    let (mut k_prev, mut k) = (BigUint::zero(), BigUint::one());
    let alpha_big = BigUint::from(alpha);
    loop {
        if &h * &h == &alpha_big * &k * &k + 1u32 {
            return Ok((h, k));
        }
        m = d * a - m;
        d = (alpha - m * m) / d;
        a = (a0 + m) / d;
        let h_next = &h * a + &h_prev;
        let k_next = &k * a + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Solutions in `ℕ²` of `X² − αY² = N`, as the orbits of finitely many
/// starting points under `(X, Y) ↦ (uX + αvY, vX + uY)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolutionSet {
    pub alpha: u64,
    pub n: BigUint,
    pub fundamental: (BigUint, BigUint),
    /// First terms of each class, in increasing order of `X_0`.
    pub classes: Vec<Vec<(BigUint, BigUint)>>,
}

impl PellSolutionSet {
    pub fn starts(&self) -> Vec<(BigUint, BigUint)> {
        self.classes.iter().map(|c| c[0].clone()).collect()
    }
}

/// `(X, Y)` with signed `Y`.
type Point = (BigUint, bool, BigUint);

fn step(alpha: &BigUint, u: &BigUint, v: &BigUint, x: &BigUint, y: &BigUint) -> (BigUint, BigUint) {
    (u * x + alpha * v * y, v * x + u * y)
}

/// Starting points of the classes: all `(X_0, Y_0) ∈ ℕ²` with
/// `0 < X_0 ≤ u√N` whose predecessor leaves `ℕ²`.
///
/// The fundamental solutions of each class satisfy
/// `0 ≤ |Y| ≤ v√N / √(2(u+1))`; their orbits are followed to the first point
/// of `ℕ²`.
pub fn pell_starts(alpha: u64, n: &BigUint) -> Result<Vec<(BigUint, BigUint)>> {
    check_alpha(alpha)?;
    if n.is_zero() {
        return Err(Error::InvalidArgument("N must be positive".into()));
    }
    let (u, v) = pell_fundamental(alpha)?;
    let a = BigUint::from(alpha);
    let mut starts = BTreeSet::new();
    let bound_sq = &v * &v * n;
    let two_u1 = (&u + 1u32) << 1;
    let mut y = BigUint::zero();
    while &two_u1 * &y * &y <= bound_sq {
        let x2 = &a * &y * &y + n;
        let x = x2.sqrt();
        if &x * &x == x2 {
            for negative in [false, true] {
                let mut p: Point = (x.clone(), negative && !y.is_zero(), y.clone());
                while p.1 {
                    // (X, −Y) ↦ (uX − αvY, vX − uY)
                    let nx = &u * &p.0 - &a * &v * &p.2;
                    let (vx, uy) = (&v * &p.0, &u * &p.2);
                    p = if vx >= uy { (nx, false, vx - uy) } else { (nx, true, uy - vx) };
                }
                let (mut sx, mut sy) = (p.0, p.2);
                // step back while the predecessor stays in ℕ²
                loop {
                    let (ux, avy) = (&u * &sx, &a * &v * &sy);
                    let (vx, uy) = (&v * &sx, &u * &sy);
                    if ux >= avy && uy >= vx && ux > avy {
                        sx = ux - avy;
                        sy = uy - vx;
                    } else {
                        break;
                    }
                }
                starts.insert((sx, sy));
            }
        }
        y += 1u32;
    }
    Ok(starts.into_iter().collect())
}

/// First `count` terms of every class of solutions of `X² − αY² = N`.
pub fn pell_solutions(alpha: u64, n: &BigUint, count: usize) -> Result<PellSolutionSet> {
    let (u, v) = pell_fundamental(alpha)?;
    let a = BigUint::from(alpha);
    let classes = pell_starts(alpha, n)?
        .into_iter()
        .map(|(x, y)| {
            let mut seq = Vec::with_capacity(count);
            let mut cur = (x, y);
            for _ in 0..count {
                let next = step(&a, &u, &v, &cur.0, &cur.1);
                seq.push(std::mem::replace(&mut cur, next));
            }
            seq
        })
        .collect();
    Ok(PellSolutionSet { alpha, n: n.clone(), fundamental: (u, v), classes })
}

/// Solutions of `x² − 8z² = 9` from `(3, 0)` by the matrix `(3 8; 1 3)`.
pub fn nine_sequence(count: usize) -> Vec<(BigUint, BigUint)> {
    let mut out = Vec::with_capacity(count);
    let (mut x, mut z) = (BigUint::from(3u32), BigUint::zero());
    for _ in 0..count {
        let next = (&x * 3u32 + &z * 8u32, &x + &z * 3u32);
        out.push((x, z));
        (x, z) = next;
    }
    out
}

/// An arithmetic progression `start, start + step, …` of `length` terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Progression {
    pub start: u64,
    pub step: u64,
    pub length: usize,
}

/// Longest arithmetic progression contained in a sorted set.
pub fn longest_progression(values: &[u64]) -> Option<Progression> {
    let n = values.len();
    if n == 0 {
        return None;
    }
    let mut best = Progression { start: values[0], step: 0, length: 1 };
    // run[j][i]: length of the longest progression ending with values[i], values[j]
    let mut run = vec![vec![1usize; n]; n];
    for j in 1..n {
        for i in 0..j {
            let d = values[j] - values[i];
            let len = match values[..i].binary_search(&(values[i].wrapping_sub(d))) {
                Ok(k) if values[i] >= d => run[i][k] + 1,
                _ => 2,
            };
            run[j][i] = len;
            if len > best.length {
                best = Progression { start: values[j] - d * (len as u64 - 1), step: d, length: len };
            }
        }
    }
    Some(best)
}

/// Evidence that `rep(α val(a*))` is not regular for non-square `α`: the
/// length set of `a^r b* ∩ rep(α val(a*))` computed by enumeration and from
/// the odd solutions of `X² − αY² = 8r + 9 − α`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonsquareEvidence {
    pub alpha: u64,
    pub r: u64,
    /// `8r + 9 − α`.
    pub n: u64,
    pub p_bound: u64,
    pub fundamental: (String, String),
    pub lengths_bruteforce: Vec<u64>,
    pub lengths_pell: Vec<u64>,
    pub agree: bool,
    pub longest_ap: Option<Progression>,
    /// Smallest ratio between consecutive lengths over the upper half of the set.
    pub tail_ratio: Option<f64>,
}

/// `r = z_i²` for the least `i` with `8z_i² + 9 − α > 0`, so that
/// `(x_i, 1)` is an odd solution of `X² − αY² = 8r + 9 − α`.
pub fn choose_r(alpha: u64) -> u64 {
    nine_sequence(64)
        .into_iter()
        .map(|(_, z)| z.to_u64().expect("small index"))
        .find(|z| 8 * z * z + 9 > alpha)
        .map(|z| z * z)
        .expect("z grows geometrically")
}

pub fn nonsquare_evidence(alpha: u64, p_bound: u64) -> Result<NonsquareEvidence> {
    check_alpha(alpha)?;
    let r = choose_r(alpha);
    let n = 8 * r + 9 - alpha;
    let a = BigUint::from(alpha);

    let mut brute = BTreeSet::new();
    for p in 0..=p_bound {
        let value = &a * (BigUint::from(p) * (p + 1) >> 1);
        let (rr, s) = peano_rep(&value);
        if rr == BigUint::from(r) {
            brute.insert(r + s.to_u64().ok_or_else(|| Error::OutOfRange(s.to_string()))?);
        }
    }

    let set = pell_solutions(alpha, &BigUint::from(n), 0)?;
    let (u, v) = set.fundamental.clone();
    let y_max = BigUint::from(2 * p_bound + 1);
    let mut pell = BTreeSet::new();
    for (x0, y0) in pell_starts(alpha, &BigUint::from(n))? {
        let (mut x, mut y) = (x0, y0);
        while y <= y_max {
            let odd = x.bit(0) && y.bit(0);
            if odd && x >= BigUint::from(3 + 2 * r) {
                let l: BigUint = (&x - 3u32) >> 1;
                pell.insert(l.to_u64().ok_or_else(|| Error::OutOfRange(l.to_string()))?);
            }
            (x, y) = step(&a, &u, &v, &x, &y);
        }
    }

    let lengths_bruteforce: Vec<u64> = brute.into_iter().collect();
    let lengths_pell: Vec<u64> = pell.into_iter().collect();
    let half = lengths_bruteforce.len() / 2;
    let tail_ratio = lengths_bruteforce[half.max(1).min(lengths_bruteforce.len())..]
        .iter()
        .zip(&lengths_bruteforce[half.max(1) - 1..])
        .filter(|(_, &prev)| prev > 0)
        .map(|(&next, &prev)| next as f64 / prev as f64)
        .reduce(f64::min);
    Ok(NonsquareEvidence {
        alpha,
        r,
        n,
        p_bound,
        fundamental: (u.to_string(), v.to_string()),
        agree: lengths_bruteforce == lengths_pell,
        longest_ap: longest_progression(&lengths_bruteforce),
        lengths_bruteforce,
        lengths_pell,
        tail_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn brute_fundamental(alpha: u64) -> (u64, u64) {
        (1u64..)
            .find_map(|v| {
                let u2 = alpha * v * v + 1;
                let u = u2.sqrt();
                (u * u == u2).then_some((u, v))
            })
            .unwrap()
    }

    #[test]
    fn fundamental_solutions() {
        assert_eq!(pell_fundamental(2).unwrap(), (big(3), big(2)));
        assert_eq!(pell_fundamental(3).unwrap(), (big(2), big(1)));
        assert_eq!(pell_fundamental(61).unwrap(), (big(1766319049), big(226153980)));
        for alpha in 2..=50u64 {
            if alpha.sqrt().pow(2) != alpha {
                let (u, v) = brute_fundamental(alpha);
                assert_eq!(pell_fundamental(alpha).unwrap(), (big(u), big(v)), "α={alpha}");
            }
        }
        assert!(matches!(pell_fundamental(9), Err(Error::PerfectSquare(_))));
        assert!(matches!(pell_fundamental(1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn classes_cover_all_small_solutions() {
        for alpha in [2u64, 3, 5, 6, 7, 8, 10, 13] {
            for n in 1..=40u64 {
                let set = pell_solutions(alpha, &big(n), 12).unwrap();
                let generated: BTreeSet<(BigUint, BigUint)> = set.classes.iter().flatten().cloned().collect();
                let u = set.fundamental.0.to_u64().unwrap();
                for (x0, _) in set.starts() {
                    assert!(&x0 * &x0 <= big(u * u * n));
                }
                for y in 0..200u64 {
                    let x2 = alpha * y * y + n;
                    let x = x2.sqrt();
                    if x * x == x2 {
                        assert!(generated.contains(&(big(x), big(y))), "α={alpha} N={n} ({x},{y})");
                    }
                }
            }
        }
    }

    #[test]
    fn class_invariants() {
        for alpha in [2u64, 3, 5, 8, 61] {
            for n in [1u64, 7, 9] {
                let set = pell_solutions(alpha, &big(n), 20).unwrap();
                let u = &set.fundamental.0;
                for class in &set.classes {
                    for (i, (x, y)) in class.iter().enumerate() {
                        assert_eq!(x * x, big(alpha) * y * y + n);
                        assert!(*x >= u.pow(i as u32));
                        if i >= 2 {
                            assert!(*x > u.pow(i as u32));
                            let (x1, y1) = &class[i - 1];
                            let (x0, y0) = &class[i - 2];
                            assert_eq!(x + x0, u * x1 * 2u32);
                            assert_eq!(y + y0, u * y1 * 2u32);
                            assert_eq!(x.bit(0), x0.bit(0));
                            assert_eq!(y.bit(0), y0.bit(0));
                        }
                    }
                }
            }
        }
        let one = pell_solutions(2, &big(1), 3).unwrap();
        assert_eq!(one.classes, vec![vec![(big(1), big(0)), (big(3), big(2)), (big(17), big(12))]]);
    }

    #[test]
    fn nine() {
        let seq = nine_sequence(10);
        assert_eq!(&seq[..3], &[(big(3), big(0)), (big(9), big(3)), (big(51), big(18))]);
        for (x, z) in seq {
            assert_eq!(&x * &x, big(8) * &z * &z + 9u32);
            assert!(x.bit(0));
        }
        assert_eq!(choose_r(2), 0);
        assert_eq!(choose_r(17), 9);
        assert_eq!(choose_r(80), 9);
        assert_eq!(choose_r(81), 324);
    }

    #[test]
    fn progressions() {
        assert_eq!(longest_progression(&[1, 3, 4, 5, 7, 9]).unwrap(), Progression { start: 1, step: 2, length: 5 });
        assert_eq!(longest_progression(&[2]).unwrap().length, 1);
        assert!(longest_progression(&[]).is_none());
    }

    #[test]
    fn evidence_agrees() {
        for alpha in [2u64, 3, 5, 8, 17] {
            let e = nonsquare_evidence(alpha, 300).unwrap();
            assert!(e.agree, "{e:?}");
            assert!(e.lengths_bruteforce.len() >= 2, "{e:?}");
            assert!(e.longest_ap.as_ref().unwrap().length < e.lengths_bruteforce.len().max(3));
        }
        assert!(matches!(nonsquare_evidence(4, 10), Err(Error::PerfectSquare(_))));
    }
}
