//! Word counts per state and length, and the structural tests built on them.
//!
//! `u_l(k)` is the number of words of length `l` accepted from state `k`;
//! `v_l(k) = u_0(k) + … + u_l(k)`. Both are exact big integers.

use std::collections::HashMap;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::automaton::{Dfa, State};

/// Lazily extended table of `u_l(k)` and `v_l(k)`.
///
/// Extension takes a write lock; lookups of already computed lengths only
/// take the read lock, so a table pre-extended with [`CountTable::extend_to`]
/// serves concurrent readers.
#[derive(Debug)]
pub struct CountTable {
    succ: Vec<Vec<State>>,
    inner: RwLock<Rows>,
}

#[derive(Debug, Default)]
struct Rows {
    u: Vec<Vec<BigUint>>,
    v: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn new(dfa: &Dfa) -> Self {
        let p = dfa.alphabet().len();
        let n = dfa.state_count();
        let succ = (0..n).map(|k| (0..p).map(|a| dfa.next(k, a)).collect()).collect();
        let u0: Vec<BigUint> = (0..n).map(|k| BigUint::from(u8::from(dfa.is_final(k)))).collect();
        let rows = Rows { v: vec![u0.clone()], u: vec![u0] };
        CountTable { succ, inner: RwLock::new(rows) }
    }

    pub fn state_count(&self) -> usize {
        self.succ.len()
    }

    /// Largest length whose counts are materialized.
    pub fn computed_up_to(&self) -> usize {
        self.inner.read().unwrap().u.len() - 1
    }

    pub fn extend_to(&self, len: usize) {
        if self.computed_up_to() >= len {
            return;
        }
        let mut rows = self.inner.write().unwrap();
        while rows.u.len() <= len {
            let last = rows.u.last().unwrap();
            let next: Vec<BigUint> = self.succ.iter().map(|ts| ts.iter().map(|&t| &last[t]).sum()).collect();
            let cum: Vec<BigUint> = rows.v.last().unwrap().iter().zip(&next).map(|(a, b)| a + b).collect();
            rows.u.push(next);
            rows.v.push(cum);
        }
    }

    /// `u_l(k)`.
    pub fn count(&self, k: State, len: usize) -> BigUint {
        self.extend_to(len);
        self.inner.read().unwrap().u[len][k].clone()
    }

    /// `v_l(k)`.
    pub fn cumulative(&self, k: State, len: usize) -> BigUint {
        self.extend_to(len);
        self.inner.read().unwrap().v[len][k].clone()
    }

    /// `v_{l-1}(k)`, zero for `l = 0`.
    pub fn cumulative_below(&self, k: State, len: usize) -> BigUint {
        if len == 0 {
            BigUint::zero()
        } else {
            self.cumulative(k, len - 1)
        }
    }

    /// The vector `(u_l(k))_k`.
    pub fn counts_at(&self, len: usize) -> Vec<BigUint> {
        self.extend_to(len);
        self.inner.read().unwrap().u[len].clone()
    }

    pub fn is_positive(&self, k: State, len: usize) -> bool {
        self.extend_to(len);
        !self.inner.read().unwrap().u[len][k].is_zero()
    }
}

/// Incidence matrix `A_L` and final vector `f_L` of a complete DFA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    pub entries: Vec<Vec<u64>>,
    pub final_vector: Vec<u64>,
}

impl IncidenceMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// `A x`.
    pub fn apply(&self, x: &[BigUint]) -> Vec<BigUint> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(x).filter(|(&a, _)| a != 0).map(|(&a, xi)| xi * a).sum())
            .collect()
    }

    /// `A^m f`.
    pub fn power_times_final(&self, m: usize) -> Vec<BigUint> {
        let mut x: Vec<BigUint> = self.final_vector.iter().map(|&f| BigUint::from(f)).collect();
        for _ in 0..m {
            x = self.apply(&x);
        }
        x
    }

    fn as_bigint(&self) -> Vec<Vec<BigInt>> {
        self.entries.iter().map(|r| r.iter().map(|&a| BigInt::from(a)).collect()).collect()
    }

    /// Multiplicity of 0 as a root of the minimum polynomial: the least `m`
    /// with `rank A^m = rank A^{m+1}`.
    pub fn zero_root_multiplicity(&self) -> usize {
        let a = self.as_bigint();
        let n = self.size();
        let mut power = identity(n);
        let mut rank = n;
        for m in 0..=n {
            let next = mat_mul(&power, &a);
            let r = rank_of(next.clone());
            if r == rank {
                return m;
            }
            rank = r;
            power = next;
        }
        n
    }
}

pub fn incidence(dfa: &Dfa) -> IncidenceMatrix {
    let n = dfa.state_count();
    let mut entries = vec![vec![0u64; n]; n];
    for (k, row) in entries.iter_mut().enumerate() {
        for a in 0..dfa.alphabet().len() {
            row[dfa.next(k, a)] += 1;
        }
    }
    let final_vector = (0..n).map(|k| u64::from(dfa.is_final(k))).collect();
    IncidenceMatrix { entries, final_vector }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn mat_mul(x: &[Vec<BigInt>], y: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| (0..n).map(|j| row.iter().zip(y).map(|(a, yr)| a * &yr[j]).sum()).collect())
        .collect()
}

/// Exact rank by fraction-free elimination.
pub(crate) fn rank_of(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, pivot);
        for r in 0..rows {
            if r == rank || m[r][c].is_zero() {
                continue;
            }
            let (pr, pc) = (m[rank][c].clone(), m[r][c].clone());
            let g = pr.gcd(&pc);
            let (fr, fc) = (&pr / &g, &pc / &g);
            for j in 0..cols {
                let v = &m[r][j] * &fr - &m[rank][j] * &fc;
                m[r][j] = v;
            }
            let content = m[r].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if content > BigInt::one() {
                m[r].iter_mut().for_each(|x| *x = &*x / &content);
            }
        }
        rank += 1;
    }
    rank
}

/// Outcome of the equal-count test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualCounts {
    /// Least `n0` with `u_n(k) = u_n(k')` for all states and all `n ≥ n0`.
    pub n0: usize,
    /// Common value `u_{n0}(k)`.
    pub lambda: BigUint,
    /// Multiplicity of 0 in the minimum polynomial of `A_L`.
    pub m: usize,
}

/// Tests whether all states eventually accept the same number of words of
/// each length. Past `m` the counts satisfy `u_{m+i}(k) = (#Σ)^i u_m(k)`, so
/// checking `A^m f = λ (1,…,1)` decides the condition for every `n`.
pub fn equal_count_bound(dfa: &Dfa) -> Option<EqualCounts> {
    let a = incidence(dfa);
    let m = a.zero_root_multiplicity();
    let table = CountTable::new(dfa);
    let all_equal = |n: usize| {
        let row = table.counts_at(n);
        row.iter().all(|x| *x == row[0])
    };
    let at_m = table.counts_at(m);
    debug_assert_eq!(at_m, a.power_times_final(m));
    if at_m[0].is_zero() || !all_equal(m) {
        return None;
    }
    let p = BigUint::from(dfa.alphabet().len());
    let mut expect = at_m[0].clone();
    for i in 0..=10 {
        if table.counts_at(m + i).iter().any(|x| *x != expect) {
            return None;
        }
        expect *= &p;
    }
    let mut n0 = m;
    while n0 > 0 && all_equal(n0 - 1) {
        n0 -= 1;
    }
    Some(EqualCounts { n0, lambda: table.count(0, n0), m })
}

/// Least `d` such that the language is `d`-slender, or `None` when the
/// number of words per length is unbounded.
///
/// Bounded iff every strongly connected component of useful states is at
/// most one simple cycle and no useful path links two cyclic components.
pub fn slenderness(dfa: &Dfa) -> Option<BigUint> {
    let n = dfa.state_count();
    let p = dfa.alphabet().len();
    let useful = dfa.useful();
    if !useful[dfa.initial()] {
        return Some(BigUint::zero());
    }
    let reach = |from: State| {
        let mut seen = vec![false; n];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(k) = stack.pop() {
            for a in 0..p {
                let t = dfa.next(k, a);
                if useful[t] && !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    };
    let reachable: Vec<Vec<bool>> = (0..n).map(|k| if useful[k] { reach(k) } else { vec![false; n] }).collect();
    let same_scc = |x: State, y: State| reachable[x][y] && reachable[y][x];
    let mut scc_of = vec![usize::MAX; n];
    let mut sccs: Vec<Vec<State>> = Vec::new();
    for k in (0..n).filter(|&k| useful[k]) {
        if scc_of[k] == usize::MAX {
            let members: Vec<State> = (0..n).filter(|&j| useful[j] && same_scc(k, j)).collect();
            for &j in &members {
                scc_of[j] = sccs.len();
            }
            sccs.push(members);
        }
    }
    let mut cyclic = Vec::new();
    for (c, members) in sccs.iter().enumerate() {
        let internal = members
            .iter()
            .flat_map(|&k| (0..p).map(move |a| (k, a)))
            .filter(|&(k, a)| scc_of[dfa.next(k, a)] == c)
            .count();
        if internal > members.len() {
            return None;
        }
        if internal == members.len() {
            cyclic.push(c);
        }
    }
    for &c in &cyclic {
        let from = sccs[c][0];
        if cyclic.iter().any(|&d| d != c && reachable[from][sccs[d][0]]) {
            return None;
        }
    }
    let period = cyclic.iter().fold(1usize, |acc, &c| acc.lcm(&sccs[c].len()));
    let useful_count = useful.iter().filter(|&&u| u).count();
    let bound = 2 * useful_count + period;
    let table = CountTable::new(dfa);
    (0..=bound).map(|l| table.count(dfa.initial(), l)).max()
}

/// Least preperiod `r` and period `t` of the sequence of vectors
/// `((u_n(k) mod q)_k, v_n(s) mod q)`.
pub fn mod_periodicity(dfa: &Dfa, q: u64) -> (usize, usize) {
    assert!(q >= 1, "modulus must be positive");
    let mut seen: HashMap<(Vec<u64>, u64), usize> = HashMap::new();
    let seq = ModCounts::new(dfa, q);
    for (n, (u, v)) in seq.enumerate() {
        if let Some(&r) = seen.get(&(u.clone(), v)) {
            return (r, n - r);
        }
        seen.insert((u, v), n);
    }
    unreachable!("the sequence lives in a finite set")
}

/// Iterator over `((u_n(k) mod q)_k, v_n(s) mod q)` for `n = 0, 1, …`.
pub struct ModCounts<'a> {
    dfa: &'a Dfa,
    q: u64,
    u: Vec<u64>,
    v: u64,
    started: bool,
}

impl<'a> ModCounts<'a> {
    pub fn new(dfa: &'a Dfa, q: u64) -> Self {
        let u: Vec<u64> = (0..dfa.state_count()).map(|k| u64::from(dfa.is_final(k)) % q).collect();
        let v = u[dfa.initial()];
        ModCounts { dfa, q, u, v, started: false }
    }
}

impl Iterator for ModCounts<'_> {
    type Item = (Vec<u64>, u64);

    fn next(&mut self) -> Option<Self::Item> {
        if self.started {
            let p = self.dfa.alphabet().len();
            let q = u128::from(self.q);
            self.u = (0..self.u.len())
                .map(|k| ((0..p).map(|a| u128::from(self.u[self.dfa.next(k, a)])).sum::<u128>() % q) as u64)
                .collect();
            self.v = ((u128::from(self.v) + u128::from(self.u[self.dfa.initial()])) % q) as u64;
        }
        self.started = true;
        Some((self.u.clone(), self.v))
    }
}
