//! Languages `a_1^{h_1} … a_p^{h_p}` whose exponent vectors are affine images
//! of `ℕ^p`, and block languages described by exponent predicates.

use std::collections::HashMap;

use num_integer::Integer;

use crate::alphabet::OrderedAlphabet;
use crate::automaton::Dfa;
use crate::{Error, Result};

/// Square integer matrix `A` with offsets `b`, describing `h(n) = A n + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralMatrix {
    entries: Vec<Vec<i64>>,
    offsets: Vec<i64>,
}

impl IntegralMatrix {
    pub fn new(entries: Vec<Vec<i64>>, offsets: Vec<i64>) -> Result<Self> {
        let p = entries.len();
        if p == 0 || entries.iter().any(|row| row.len() != p) || offsets.len() != p {
            return Err(Error::InvalidArgument("expected a non-empty square matrix and matching offsets".into()));
        }
        Ok(IntegralMatrix { entries, offsets })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    /// `h(n) = A n + b`.
    pub fn apply(&self, n: &[i64]) -> Vec<i128> {
        self.entries
            .iter()
            .zip(&self.offsets)
            .map(|(row, &b)| row.iter().zip(n).map(|(&a, &x)| a as i128 * x as i128).sum::<i128>() + b as i128)
            .collect()
    }

    pub fn determinant(&self) -> i128 {
        let m: Vec<Vec<i128>> = self.entries.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        det(m)
    }

    /// `dtm(A) · A⁻¹`, the transposed cofactor matrix.
    pub fn adjugate(&self) -> Vec<Vec<i128>> {
        let p = self.size();
        if p == 1 {
            return vec![vec![1]];
        }
        let mut adj = vec![vec![0i128; p]; p];
        for i in 0..p {
            for j in 0..p {
                let minor: Vec<Vec<i128>> = (0..p)
                    .filter(|&r| r != i)
                    .map(|r| (0..p).filter(|&c| c != j).map(|c| self.entries[r][c] as i128).collect())
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                adj[j][i] = sign * det(minor);
            }
        }
        adj
    }
}

/// Fraction-free Gaussian elimination.
fn det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// `{a_1^{h_1(n)} … a_p^{h_p(n)} : n ∈ ℕ^p, h(n) ≥ 0}` for `h(n) = A n + b`,
/// where `a_1 < … < a_p` are the letters of `alphabet`.
///
/// Requires the entries of `dtm(A) A⁻¹` to be non-negative. Then `h` is
/// reached iff `𝒜(h − b) ≡ 0 (mod dtm)` and `𝒜(h − b)/dtm ≥ 0`. For
/// `dtm > 0` the inequalities are upward closed and each coordinate becomes
/// periodic past an explicit threshold; for `dtm < 0` the set is finite.
pub fn lemineg_language(m: &IntegralMatrix, alphabet: &OrderedAlphabet) -> Result<Dfa> {
    let p = m.size();
    if alphabet.len() != p {
        return Err(Error::InvalidArgument(format!("expected {p} letters, got {}", alphabet.len())));
    }
    let dtm = m.determinant();
    if dtm == 0 {
        return Err(Error::SingularMatrix);
    }
    let adj = m.adjugate();
    if adj.iter().flatten().any(|&x| x < 0) {
        return Err(Error::Hypothesis("dtm(A)·A⁻¹ has a negative entry".into()));
    }
    let b: Vec<i128> = m.offsets().iter().map(|&x| x as i128).collect();
    let adj_b: Vec<i128> = adj.iter().map(|row| row.iter().zip(&b).map(|(a, x)| a * x).sum()).collect();
    let reached = |h: &[u64]| {
        adj.iter().zip(&adj_b).all(|(row, &ab)| {
            let v: i128 = row.iter().zip(h).map(|(&a, &x)| a * x as i128).sum::<i128>() - ab;
            v % dtm == 0 && v / dtm >= 0
        })
    };
    let (thresholds, periods): (Vec<u64>, Vec<u64>) = if dtm > 0 {
        (0..p)
            .map(|j| {
                let threshold = (0..p)
                    .filter(|&i| adj[i][j] > 0)
                    .map(|i| Integer::div_ceil(&adj_b[i].max(0), &adj[i][j]))
                    .max()
                    .unwrap_or(0);
                let g = (0..p).fold(dtm, |g, i| g.gcd(&adj[i][j]));
                Ok((to_u64(threshold)?, to_u64(dtm / g)?))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip()
    } else {
        // Every column of 𝒜 has a positive entry, which bounds its coordinate.
        let mut bounds = Vec::with_capacity(p);
        for j in 0..p {
            let bound = (0..p)
                .filter(|&i| adj[i][j] > 0)
                .map(|i| Integer::div_floor(&adj_b[i], &adj[i][j]))
                .min()
                .expect("a non-singular matrix has no zero column");
            if bound < 0 {
                return Ok(Dfa::empty(alphabet.clone()));
            }
            bounds.push(to_u64(bound + 1)?);
        }
        (bounds, vec![1; p])
    };
    block_language(alphabet, &thresholds, &periods, reached)
}

fn to_u64(x: i128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::OutOfRange(x.to_string()))
}

/// `{a_1^{h_1} … a_p^{h_p} : accept(h)}` where `accept` is invariant under
/// `h_j ↦ h_j + periods[j]` whenever `h_j ≥ thresholds[j]`. The predicate is
/// evaluated once on every vector of the box `∏ [0, thresholds[j] + periods[j])`.
pub fn block_language<F>(alphabet: &OrderedAlphabet, thresholds: &[u64], periods: &[u64], mut accept: F) -> Result<Dfa>
where
    F: FnMut(&[u64]) -> bool,
{
    let p = alphabet.len();
    assert_eq!(thresholds.len(), p);
    assert_eq!(periods.len(), p);
    assert!(periods.iter().all(|&t| t > 0), "periods must be positive");
    thresholds
        .iter()
        .zip(periods)
        .try_fold(1u64, |acc, (&c, &t)| acc.checked_mul(c + t))
        .filter(|&v| v <= 50 * crate::STATE_CAP as u64)
        .ok_or(Error::StateCap(crate::STATE_CAP))?;
    let mut nodes = NodeTable::default();
    let mut h = vec![0u64; p];
    let root = nodes.build(0, &mut h, thresholds, periods, &mut accept);
    let nodes = nodes.nodes;
    let dfa = Dfa::explore(
        alphabet.clone(),
        (root, 0usize),
        |&(node, v), letter| nodes.step(node, v, letter),
        |&(node, v)| nodes.accepts(node, v),
    )?;
    Ok(dfa.minimize())
}

/// Node `0` and `1` are the leaves false and true; an inner node of
/// dimension `j` lists the nodes reached after `a_j^v` for `v` below its
/// preperiod plus period.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Node {
    dim: usize,
    seq: Vec<usize>,
    preperiod: usize,
}

#[derive(Default)]
struct NodeTable {
    nodes: Vec<Option<Node>>,
    ids: HashMap<Node, usize>,
}

trait Nodes {
    fn step(&self, node: usize, v: usize, letter: usize) -> Option<(usize, usize)>;
    fn accepts(&self, node: usize, v: usize) -> bool;
}

impl Nodes for Vec<Option<Node>> {
    fn step(&self, node: usize, v: usize, letter: usize) -> Option<(usize, usize)> {
        let n = self[node].as_ref()?;
        if letter == n.dim {
            let next = if v + 1 < n.seq.len() { v + 1 } else { n.preperiod };
            Some((node, next))
        } else if letter > n.dim {
            self.step(n.seq[v], 0, letter)
        } else {
            None
        }
    }

    fn accepts(&self, node: usize, v: usize) -> bool {
        match &self[node] {
            None => node == 1,
            Some(n) => self.accepts(n.seq[v], 0),
        }
    }
}

impl NodeTable {
    fn build<F>(&mut self, dim: usize, h: &mut Vec<u64>, thresholds: &[u64], periods: &[u64], accept: &mut F) -> usize
    where
        F: FnMut(&[u64]) -> bool,
    {
        if self.nodes.is_empty() {
            self.nodes = vec![None, None];
        }
        if dim == h.len() {
            return usize::from(accept(h));
        }
        let (c, t) = (thresholds[dim] as usize, periods[dim] as usize);
        let mut seq = Vec::with_capacity(c + t);
        for v in 0..c + t {
            h[dim] = v as u64;
            seq.push(self.build(dim + 1, h, thresholds, periods, accept));
        }
        h[dim] = 0;
        let (seq, preperiod) = shrink(seq, c, t);
        let node = Node { dim, seq, preperiod };
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        let id = self.nodes.len();
        self.nodes.push(Some(node.clone()));
        self.ids.insert(node, id);
        id
    }
}

/// Minimal preperiod and period of a sequence known to satisfy
/// `x[v + t] = x[v]` for `v ≥ c`.
fn shrink(seq: Vec<usize>, c: usize, t: usize) -> (Vec<usize>, usize) {
    let at = |v: usize| if v < c + t { seq[v] } else { seq[c + (v - c) % t] };
    let period = (1..=t)
        .filter(|d| t % d == 0)
        .find(|&d| (c..c + t).all(|v| at(v) == at(v + d)))
        .unwrap_or(t);
    let mut pre = c;
    while pre > 0 && at(pre - 1) == at(pre - 1 + period) {
        pre -= 1;
    }
    ((0..pre + period).map(at).collect(), pre)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regex::regex_to_dfa;

    fn ab() -> OrderedAlphabet {
        OrderedAlphabet::from_chars("ab").unwrap()
    }

    fn brute(m: &IntegralMatrix, range: i64) -> Vec<Vec<usize>> {
        let p = m.size();
        let mut out = std::collections::BTreeSet::new();
        let mut n = vec![0i64; p];
        loop {
            let h = m.apply(&n);
            if h.iter().all(|&x| x >= 0) {
                let word: Vec<usize> =
                    h.iter().enumerate().flat_map(|(j, &x)| std::iter::repeat(j).take(x as usize)).collect();
                out.insert(word);
            }
            let mut k = 0;
            while k < p {
                n[k] += 1;
                if n[k] <= range {
                    break;
                }
                n[k] = 0;
                k += 1;
            }
            if k == p {
                break;
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn determinant_and_adjugate() {
        let m = IntegralMatrix::new(vec![vec![2, -1, 0], vec![1, 3, 2], vec![0, 1, 1]], vec![0; 3]).unwrap();
        assert_eq!(m.determinant(), 3);
        let adj = m.adjugate();
        for i in 0..3 {
            for j in 0..3 {
                let prod: i128 = (0..3).map(|k| m.entries()[i][k] as i128 * adj[k][j]).sum();
                assert_eq!(prod, if i == j { 3 } else { 0 });
            }
        }
    }

    #[test]
    fn even_powers() {
        let a = OrderedAlphabet::from_chars("a").unwrap();
        let m = IntegralMatrix::new(vec![vec![2]], vec![0]).unwrap();
        let d = lemineg_language(&m, &a).unwrap();
        assert!(d.equivalent(&regex_to_dfa("(aa)*", &a).unwrap()).unwrap());
        let shifted = IntegralMatrix::new(vec![vec![3]], vec![-4]).unwrap();
        let d = lemineg_language(&shifted, &a).unwrap();
        assert!(d.equivalent(&regex_to_dfa("aa(aaa)*", &a).unwrap()).unwrap());
    }

    #[test]
    fn negative_determinant_is_finite() {
        let m = IntegralMatrix::new(vec![vec![1, -2], vec![-2, 1]], vec![6, 9]).unwrap();
        assert_eq!(m.determinant(), -3);
        let d = lemineg_language(&m, &ab()).unwrap();
        assert!(!d.is_infinite());
        let expect = brute(&m, 50);
        assert!(!expect.is_empty());
        let words: Vec<_> = d.words_up_to(40);
        assert_eq!(
            words.iter().cloned().collect::<std::collections::BTreeSet<_>>(),
            expect.into_iter().collect()
        );
    }

    #[test]
    fn positive_determinant_matches_brute_force() {
        for (entries, offsets) in [
            (vec![vec![3, 0], vec![-3, 3]], vec![2, 7]),
            (vec![vec![2, -1], vec![0, 3]], vec![-3, 1]),
            (vec![vec![4, -1], vec![-2, 2]], vec![5, -1]),
        ] {
            let m = IntegralMatrix::new(entries, offsets).unwrap();
            let d = lemineg_language(&m, &ab()).unwrap();
            let expect: std::collections::BTreeSet<_> =
                brute(&m, 60).into_iter().filter(|w| w.len() <= 30).collect();
            let got: std::collections::BTreeSet<_> = d.words_up_to(30).into_iter().collect();
            assert_eq!(got, expect, "{m:?}");
        }
    }

    #[test]
    fn errors() {
        let m = IntegralMatrix::new(vec![vec![1, 2], vec![2, 4]], vec![0, 0]).unwrap();
        assert!(matches!(lemineg_language(&m, &ab()), Err(Error::SingularMatrix)));
        let m = IntegralMatrix::new(vec![vec![1, 2], vec![2, 1]], vec![0, 0]).unwrap();
        assert!(matches!(lemineg_language(&m, &ab()), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn block_language_periodic() {
        let d = block_language(&ab(), &[1, 0], &[2, 3], |h| h[0] % 2 == 1 && h[1] % 3 == 0).unwrap();
        assert!(d.equivalent(&regex_to_dfa("a(aa)*(bbb)*", &ab()).unwrap()).unwrap());
    }
}
