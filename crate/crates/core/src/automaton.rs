//! Complete deterministic and nondeterministic finite automata.
//!
//! Values are immutable once built; every operation returns a new automaton.
//! [`Dfa::minimize`] renumbers states breadth-first from the initial state,
//! exploring letters in alphabet order, so that equal languages give
//! identical automata.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::alphabet::{Letter, OrderedAlphabet, Word};
use crate::{Error, Result, STATE_CAP};

pub type State = usize;

/// Complete DFA. `delta[k * p + a]` is the target of state `k` on letter `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: OrderedAlphabet,
    initial: State,
    finals: Vec<bool>,
    delta: Vec<State>,
}

impl Dfa {
    pub fn new(
        alphabet: OrderedAlphabet,
        initial: State,
        finals: Vec<bool>,
        delta: Vec<Vec<State>>,
    ) -> Result<Self> {
        let n = finals.len();
        if n == 0 || initial >= n || delta.len() != n {
            return Err(Error::Format("inconsistent state count".into()));
        }
        let p = alphabet.len();
        let mut flat = Vec::with_capacity(n * p);
        for row in &delta {
            if row.len() != p || row.iter().any(|&t| t >= n) {
                return Err(Error::Format("transition row out of range".into()));
            }
            flat.extend_from_slice(row);
        }
        Ok(Dfa { alphabet, initial, finals, delta: flat })
    }

    /// Builds a DFA from a partial transition list, routing missing
    /// transitions to a fresh sink state.
    pub fn from_partial(
        alphabet: OrderedAlphabet,
        states: usize,
        initial: State,
        finals: &[State],
        transitions: &[(State, Letter, State)],
    ) -> Result<Self> {
        let p = alphabet.len();
        let sink = states;
        let mut delta = vec![vec![sink; p]; states + 1];
        let mut fin = vec![false; states + 1];
        for &f in finals {
            if f >= states {
                return Err(Error::Format(format!("final state {f} out of range")));
            }
            fin[f] = true;
        }
        for &(s, a, t) in transitions {
            if s >= states || t >= states || a >= p {
                return Err(Error::Format(format!("transition ({s}, {a}, {t}) out of range")));
            }
            if delta[s][a] != sink && delta[s][a] != t {
                return Err(Error::Format(format!("nondeterministic transition from {s}")));
            }
            delta[s][a] = t;
        }
        Dfa::new(alphabet, initial, fin, delta)
    }

    /// Breadth-first construction from an implicit automaton. `step`
    /// returning `None` sends the transition to a shared rejecting sink.
    pub fn explore<S, F, A>(alphabet: OrderedAlphabet, start: S, mut step: F, accept: A) -> Result<Self>
    where
        S: Clone + Eq + Hash,
        F: FnMut(&S, Letter) -> Option<S>,
        A: Fn(&S) -> bool,
    {
        let p = alphabet.len();
        let mut index: HashMap<S, State> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut finals = Vec::new();
        let mut rows: Vec<Vec<Option<State>>> = Vec::new();
        index.insert(start.clone(), 0);
        finals.push(accept(&start));
        rows.push(vec![None; p]);
        queue.push_back(start);
        let mut next_id = 1;
        while let Some(s) = queue.pop_front() {
            let id = index[&s];
            for a in 0..p {
                let Some(t) = step(&s, a) else { continue };
                let tid = match index.get(&t) {
                    Some(&tid) => tid,
                    None => {
                        if next_id >= STATE_CAP {
                            return Err(Error::StateCap(STATE_CAP));
                        }
                        index.insert(t.clone(), next_id);
                        finals.push(accept(&t));
                        rows.push(vec![None; p]);
                        queue.push_back(t);
                        next_id += 1;
                        next_id - 1
                    }
                };
                rows[id][a] = Some(tid);
            }
        }
        let sink = rows.len();
        let needs_sink = rows.iter().any(|r| r.iter().any(Option::is_none));
        let mut delta: Vec<Vec<State>> =
            rows.into_iter().map(|r| r.into_iter().map(|t| t.unwrap_or(sink)).collect()).collect();
        if needs_sink {
            delta.push(vec![sink; p]);
            finals.push(false);
        }
        Dfa::new(alphabet, 0, finals, delta)
    }

    /// Σ*.
    pub fn universal(alphabet: OrderedAlphabet) -> Self {
        let p = alphabet.len();
        Dfa { alphabet, initial: 0, finals: vec![true], delta: vec![0; p] }
    }

    /// The empty language.
    pub fn empty(alphabet: OrderedAlphabet) -> Self {
        let p = alphabet.len();
        Dfa { alphabet, initial: 0, finals: vec![false], delta: vec![0; p] }
    }

    /// Minimal DFA of a finite set of words.
    pub fn from_words<'a, I>(alphabet: OrderedAlphabet, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Word>,
    {
        let p = alphabet.len();
        let mut trans = Vec::new();
        let mut finals = Vec::new();
        let mut children: Vec<Vec<Option<State>>> = vec![vec![None; p]];
        for w in words {
            let mut k = 0;
            for &a in w {
                if a >= p {
                    return Err(Error::UnknownLetter(a.to_string()));
                }
                k = match children[k][a] {
                    Some(t) => t,
                    None => {
                        children.push(vec![None; p]);
                        let t = children.len() - 1;
                        children[k][a] = Some(t);
                        trans.push((k, a, t));
                        t
                    }
                };
            }
            finals.push(k);
        }
        Ok(Dfa::from_partial(alphabet, children.len(), 0, &finals, &trans)?.minimize())
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_final(&self, k: State) -> bool {
        self.finals[k]
    }

    pub fn finals(&self) -> &[bool] {
        &self.finals
    }

    #[inline]
    pub fn next(&self, k: State, a: Letter) -> State {
        self.delta[k * self.alphabet.len() + a]
    }

    pub fn run(&self, k: State, word: &[Letter]) -> State {
        word.iter().fold(k, |k, &a| self.next(k, a))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.finals[self.run(self.initial, word)]
    }

    pub fn accepts_from(&self, k: State, word: &[Letter]) -> bool {
        self.finals[self.run(k, word)]
    }

    /// Non-final state whose transitions all loop.
    pub fn is_sink(&self, k: State) -> bool {
        !self.finals[k] && (0..self.alphabet.len()).all(|a| self.next(k, a) == k)
    }

    /// Moore partition refinement followed by canonical renumbering.
    pub fn minimize(&self) -> Dfa {
        let p = self.alphabet.len();
        let (reach, _) = self.trim_info();
        let live: Vec<State> = (0..self.state_count()).filter(|&k| reach[k]).collect();
        let mut class = vec![usize::MAX; self.state_count()];
        for &k in &live {
            class[k] = usize::from(self.finals[k]);
        }
        let mut classes = {
            let mut seen = [false; 2];
            for &k in &live {
                seen[class[k]] = true;
            }
            seen.iter().filter(|&&b| b).count()
        };
        loop {
            let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next_class = vec![usize::MAX; self.state_count()];
            for &k in &live {
                let mut sig = Vec::with_capacity(p + 1);
                sig.push(class[k]);
                sig.extend((0..p).map(|a| class[self.next(k, a)]));
                let n = sig_ids.len();
                next_class[k] = *sig_ids.entry(sig).or_insert(n);
            }
            let count = sig_ids.len();
            class = next_class;
            if count == classes {
                break;
            }
            classes = count;
        }
        // canonical BFS numbering of the quotient
        let mut order = vec![usize::MAX; classes];
        let mut rep = vec![0; classes];
        for &k in &live {
            rep[class[k]] = k;
        }
        let mut queue = VecDeque::from([class[self.initial]]);
        order[class[self.initial]] = 0;
        let mut seq = vec![class[self.initial]];
        while let Some(c) = queue.pop_front() {
            for a in 0..p {
                let t = class[self.next(rep[c], a)];
                if order[t] == usize::MAX {
                    order[t] = seq.len();
                    seq.push(t);
                    queue.push_back(t);
                }
            }
        }
        let delta: Vec<State> = seq
            .iter()
            .flat_map(|&c| (0..p).map(move |a| (c, a)))
            .map(|(c, a)| order[class[self.next(rep[c], a)]])
            .collect();
        let finals = seq.iter().map(|&c| self.finals[rep[c]]).collect();
        Dfa { alphabet: self.alphabet.clone(), initial: 0, finals, delta }
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.finals.iter_mut().for_each(|f| *f = !*f);
        d
    }

    /// Synchronous product, accepting according to `op`.
    pub fn product(&self, other: &Dfa, op: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Dfa::explore(
            self.alphabet.clone(),
            (self.initial, other.initial),
            |&(x, y), a| Some((self.next(x, a), other.next(y, a))),
            |&(x, y)| op(self.finals[x], other.finals[y]),
        )
    }

    pub fn intersect(&self, other: &Dfa) -> Result<Dfa> {
        Ok(self.product(other, |x, y| x && y)?.minimize())
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        Ok(self.product(other, |x, y| x || y)?.minimize())
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        Ok(self.product(other, |x, y| x && !y)?.minimize())
    }

    /// Reachable and co-reachable state sets.
    pub fn trim_info(&self) -> (Vec<bool>, Vec<bool>) {
        let n = self.state_count();
        let p = self.alphabet.len();
        let mut reach = vec![false; n];
        let mut stack = vec![self.initial];
        reach[self.initial] = true;
        while let Some(k) = stack.pop() {
            for a in 0..p {
                let t = self.next(k, a);
                if !reach[t] {
                    reach[t] = true;
                    stack.push(t);
                }
            }
        }
        let mut preds: Vec<Vec<State>> = vec![Vec::new(); n];
        for k in 0..n {
            for a in 0..p {
                preds[self.next(k, a)].push(k);
            }
        }
        let mut coreach = self.finals.clone();
        let mut stack: Vec<State> = (0..n).filter(|&k| coreach[k]).collect();
        while let Some(k) = stack.pop() {
            for &s in &preds[k] {
                if !coreach[s] {
                    coreach[s] = true;
                    stack.push(s);
                }
            }
        }
        (reach, coreach)
    }

    /// Useful states: reachable and co-reachable.
    pub fn useful(&self) -> Vec<bool> {
        let (r, c) = self.trim_info();
        r.iter().zip(&c).map(|(&x, &y)| x && y).collect()
    }

    pub fn is_empty(&self) -> bool {
        let (r, _) = self.trim_info();
        !(0..self.state_count()).any(|k| r[k] && self.finals[k])
    }

    /// True iff the language is infinite, i.e. some cycle runs through useful states.
    pub fn is_infinite(&self) -> bool {
        self.has_useful_cycle(&self.useful())
    }

    /// Whether `L_k` (the language accepted from `k`) is infinite.
    pub fn is_infinite_from(&self, k: State) -> bool {
        let mut d = self.clone();
        d.initial = k;
        d.is_infinite()
    }

    fn has_useful_cycle(&self, useful: &[bool]) -> bool {
        // colour-based DFS restricted to useful states
        let n = self.state_count();
        let p = self.alphabet.len();
        let mut colour = vec![0u8; n];
        for root in 0..n {
            if !useful[root] || colour[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            colour[root] = 1;
            while let Some(&mut (k, ref mut a)) = stack.last_mut() {
                if *a == p {
                    colour[k] = 2;
                    stack.pop();
                    continue;
                }
                let t = self.next(k, *a);
                *a += 1;
                if !useful[t] {
                    continue;
                }
                match colour[t] {
                    0 => {
                        colour[t] = 1;
                        stack.push((t, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            }
        }
        false
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product(other, |x, y| x != y)?.is_empty())
    }

    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product(other, |x, y| x && !y)?.is_empty())
    }

    /// Same language over the same letters declared in another order.
    pub fn with_order(&self, alphabet: &OrderedAlphabet) -> Result<Dfa> {
        let map = alphabet.permutation_to(&self.alphabet)?;
        let n = self.state_count();
        let delta = (0..n).flat_map(|k| map.iter().map(move |&b| (k, b))).map(|(k, b)| self.next(k, b));
        Ok(Dfa {
            alphabet: alphabet.clone(),
            initial: self.initial,
            finals: self.finals.clone(),
            delta: delta.collect(),
        })
    }

    /// Same automaton re-rooted at `k`.
    pub fn rooted_at(&self, k: State) -> Dfa {
        let mut d = self.clone();
        d.initial = k;
        d
    }

    pub fn to_nfa(&self) -> Nfa {
        let p = self.alphabet.len();
        let n = self.state_count();
        let mut nfa = Nfa::new(self.alphabet.clone(), n);
        nfa.initial = vec![self.initial];
        nfa.finals = self.finals.clone();
        for k in 0..n {
            for a in 0..p {
                nfa.add(k, Some(a), self.next(k, a));
            }
        }
        nfa
    }

    /// NFA of the mirror language.
    pub fn reverse(&self) -> Nfa {
        let p = self.alphabet.len();
        let n = self.state_count();
        let mut nfa = Nfa::new(self.alphabet.clone(), n);
        nfa.initial = (0..n).filter(|&k| self.finals[k]).collect();
        nfa.finals = vec![false; n];
        nfa.finals[self.initial] = true;
        for k in 0..n {
            for a in 0..p {
                nfa.add(self.next(k, a), Some(a), k);
            }
        }
        nfa
    }

    /// Accepted words of length at most `max_len`, in radix order.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        let (_, co) = self.trim_info();
        let mut out = Vec::new();
        for len in 0..=max_len {
            let mut word = Vec::with_capacity(len);
            self.collect_len(self.initial, len, &co, &mut word, &mut out);
        }
        out
    }

    fn collect_len(&self, k: State, rest: usize, co: &[bool], word: &mut Word, out: &mut Vec<Word>) {
        if !co[k] {
            return;
        }
        if rest == 0 {
            if self.finals[k] {
                out.push(word.clone());
            }
            return;
        }
        for a in 0..self.alphabet.len() {
            word.push(a);
            self.collect_len(self.next(k, a), rest - 1, co, word, out);
            word.pop();
        }
    }
}

/// Every word over `p` letters of length at most `max_len`, in radix order.
pub fn all_words(p: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * p);
        for w in &layer {
            for a in 0..p {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Nondeterministic automaton with optional ε-moves (`None` labels).
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: OrderedAlphabet,
    pub initial: Vec<State>,
    pub finals: Vec<bool>,
    trans: Vec<Vec<(Option<Letter>, State)>>,
}

impl Nfa {
    pub fn new(alphabet: OrderedAlphabet, states: usize) -> Self {
        Nfa { alphabet, initial: Vec::new(), finals: vec![false; states], trans: vec![Vec::new(); states] }
    }

    /// Builds the reachable part of an implicit NFA. `succ` lists the moves
    /// out of a state, `None` labels being ε-moves.
    pub fn explore<S, F, A>(alphabet: OrderedAlphabet, starts: Vec<S>, mut succ: F, accept: A) -> Result<Nfa>
    where
        S: Clone + Eq + Hash,
        F: FnMut(&S) -> Vec<(Option<Letter>, S)>,
        A: Fn(&S) -> bool,
    {
        let mut nfa = Nfa::new(alphabet, 0);
        let mut ids: HashMap<S, State> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut intern = |s: S, nfa: &mut Nfa, queue: &mut VecDeque<S>| -> Result<State> {
            if let Some(&id) = ids.get(&s) {
                return Ok(id);
            }
            if nfa.state_count() >= STATE_CAP {
                return Err(Error::StateCap(STATE_CAP));
            }
            let id = nfa.add_state(accept(&s));
            ids.insert(s.clone(), id);
            queue.push_back(s);
            Ok(id)
        };
        for s in starts {
            let id = intern(s, &mut nfa, &mut queue)?;
            nfa.initial.push(id);
        }
        let mut processed = 0;
        while let Some(s) = queue.pop_front() {
            let from = processed;
            processed += 1;
            for (label, t) in succ(&s) {
                let to = intern(t, &mut nfa, &mut queue)?;
                nfa.add(from, label, to);
            }
        }
        Ok(nfa)
    }

    pub fn alphabet(&self) -> &OrderedAlphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn add_state(&mut self, accepting: bool) -> State {
        self.finals.push(accepting);
        self.trans.push(Vec::new());
        self.finals.len() - 1
    }

    pub fn add(&mut self, from: State, label: Option<Letter>, to: State) {
        self.trans[from].push((label, to));
    }

    pub fn transitions(&self, from: State) -> &[(Option<Letter>, State)] {
        &self.trans[from]
    }

    fn closure(&self, set: &mut Vec<State>) {
        let mut seen = vec![false; self.state_count()];
        let mut stack = Vec::new();
        for &s in set.iter() {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(s) = stack.pop() {
            for &(l, t) in &self.trans[s] {
                if l.is_none() && !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        set.clear();
        set.extend((0..self.state_count()).filter(|&s| seen[s]));
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut cur = self.initial.clone();
        self.closure(&mut cur);
        for &a in word {
            let mut next: Vec<State> =
                cur.iter().flat_map(|&s| self.trans[s].iter()).filter(|(l, _)| *l == Some(a)).map(|&(_, t)| t).collect();
            self.closure(&mut next);
            cur = next;
        }
        cur.iter().any(|&s| self.finals[s])
    }

    /// Subset construction. Fails cleanly past [`STATE_CAP`] subsets.
    pub fn determinize(&self) -> Result<Dfa> {
        let p = self.alphabet.len();
        let mut start = self.initial.clone();
        self.closure(&mut start);
        // per-state, per-letter successor lists
        let mut by_letter: Vec<Vec<Vec<State>>> = vec![vec![Vec::new(); p]; self.state_count()];
        for (s, ts) in self.trans.iter().enumerate() {
            for &(l, t) in ts {
                if let Some(a) = l {
                    by_letter[s][a].push(t);
                }
            }
        }
        Dfa::explore(
            self.alphabet.clone(),
            start,
            |set: &Vec<State>, a| {
                let mut next: Vec<State> = set.iter().flat_map(|&s| by_letter[s][a].iter().copied()).collect();
                self.closure(&mut next);
                Some(next)
            },
            |set| set.iter().any(|&s| self.finals[s]),
        )
    }

    /// Disjoint copy of `other` appended; returns the offset of its states.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let off = self.state_count();
        for s in 0..other.state_count() {
            self.finals.push(other.finals[s]);
            self.trans.push(other.trans[s].iter().map(|&(l, t)| (l, t + off)).collect());
        }
        off
    }

    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut n = self.clone();
        let off = n.absorb(other);
        for s in 0..self.state_count() {
            if self.finals[s] {
                n.finals[s] = false;
                for &i in &other.initial {
                    n.add(s, None, i + off);
                }
            }
        }
        Ok(n)
    }

    pub fn alternate(&self, other: &Nfa) -> Result<Nfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut n = self.clone();
        let off = n.absorb(other);
        n.initial.extend(other.initial.iter().map(|&i| i + off));
        Ok(n)
    }

    pub fn star(&self) -> Nfa {
        let mut n = self.clone();
        let hub = n.add_state(true);
        for &i in &self.initial {
            n.add(hub, None, i);
        }
        for s in 0..self.state_count() {
            if self.finals[s] {
                n.add(s, None, hub);
            }
        }
        n.initial = vec![hub];
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> OrderedAlphabet {
        OrderedAlphabet::from_chars("ab").unwrap()
    }

    /// a*b* built by hand: 0 --a--> 0, 0 --b--> 1, 1 --b--> 1.
    fn astar_bstar() -> Dfa {
        Dfa::from_partial(ab(), 2, 0, &[0, 1], &[(0, 0, 0), (0, 1, 1), (1, 1, 1)]).unwrap()
    }

    #[test]
    fn minimize_collapses_universal() {
        // four states all accepting, shuffled transitions
        let d = Dfa::new(ab(), 0, vec![true; 4], vec![vec![1, 2], vec![3, 0], vec![2, 3], vec![0, 1]]).unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 1);
        assert_eq!(m, Dfa::universal(ab()));
    }

    #[test]
    fn minimize_is_idempotent() {
        let m = astar_bstar().minimize();
        assert_eq!(m.state_count(), 3);
        assert_eq!(m.minimize(), m);
    }

    #[test]
    fn intersection_of_opposite_orders() {
        let ba = Dfa::from_partial(ab(), 2, 0, &[0, 1], &[(0, 1, 0), (0, 0, 1), (1, 0, 1)]).unwrap();
        let both = astar_bstar().intersect(&ba).unwrap();
        for w in all_words(2, 6) {
            let expect = w.iter().all(|&a| a == 0) || w.iter().all(|&a| a == 1);
            assert_eq!(both.accepts(&w), expect, "{w:?}");
        }
    }

    #[test]
    fn reverse_of_singleton() {
        let d = Dfa::from_words(ab(), [&vec![0, 1]]).unwrap();
        let r = d.reverse().determinize().unwrap();
        for w in all_words(2, 4) {
            assert_eq!(r.accepts(&w), w == vec![1, 0]);
        }
    }

    #[test]
    fn infiniteness() {
        assert!(astar_bstar().is_infinite());
        let finite = Dfa::from_words(ab(), [&vec![0], &vec![1]]).unwrap();
        assert!(!finite.is_infinite());
        assert!(!Dfa::empty(ab()).is_infinite());
    }

    #[test]
    fn complement_is_involution() {
        let d = astar_bstar();
        assert!(d.complement().complement().equivalent(&d).unwrap());
        assert!(!d.complement().equivalent(&d).unwrap());
    }

    #[test]
    fn nfa_combinators() {
        let a = Dfa::from_words(ab(), [&vec![0]]).unwrap().to_nfa();
        let b = Dfa::from_words(ab(), [&vec![1]]).unwrap().to_nfa();
        let astar_bstar_nfa = a.star().concat(&b.star()).unwrap();
        let d = astar_bstar_nfa.determinize().unwrap().minimize();
        assert_eq!(d, astar_bstar().minimize());
        for w in all_words(2, 6) {
            assert_eq!(astar_bstar_nfa.accepts(&w), d.accepts(&w));
        }
    }

    #[test]
    fn with_order_permutes_columns() {
        let d = astar_bstar();
        let ba = OrderedAlphabet::from_chars("ba").unwrap();
        let e = d.with_order(&ba).unwrap();
        for w in all_words(2, 5) {
            let s = ab().decode(&w);
            assert_eq!(d.accepts(&w), e.accepts(&ba.encode(&s).unwrap()));
        }
    }

    #[test]
    fn words_up_to_is_radix_sorted() {
        let ws = astar_bstar().words_up_to(2);
        assert_eq!(ws, vec![vec![], vec![0], vec![1], vec![0, 0], vec![0, 1], vec![1, 1]]);
    }
}
