use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha20Rng;

use crate::automaton::Dfa;
use crate::error::{Error, Result};

/// A minimal DFA with saturating counts of accepted completions:
/// `counts[r][q]` strings of length `r` lead from `q` to acceptance.
#[derive(Debug)]
pub struct Layered {
    dfa: Dfa,
    counts: Vec<Vec<u64>>,
}

impl Layered {
    pub fn new(d: &Dfa, max_len: usize) -> Self {
        let dfa = d.minimize();
        let n = dfa.num_states();
        let k = dfa.alphabet().len();
        let mut counts = vec![(0..n as u32).map(|q| u64::from(dfa.is_final(q))).collect::<Vec<_>>()];
        for r in 1..=max_len {
            let prev = &counts[r - 1];
            let layer = (0..n as u32)
                .map(|q| {
                    (0..k)
                        .filter_map(|a| dfa.next(q, a))
                        .fold(0u64, |acc, t| acc.saturating_add(prev[t as usize]))
                })
                .collect();
            counts.push(layer);
        }
        Layered { dfa, counts }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn max_len(&self) -> usize {
        self.counts.len() - 1
    }

    /// Saturating number of accepted strings of length `len`.
    pub fn count(&self, len: usize) -> u64 {
        self.counts[len][self.dfa.start() as usize]
    }

    pub(crate) fn completions(&self, q: u32, r: usize) -> u64 {
        self.counts[r][q as usize]
    }
}

const ROOT: u32 = 0;

/// Prefix tree of excluded strings with per-node subtree counts.
#[derive(Clone, Debug, Default)]
pub struct Trie {
    children: HashMap<(u32, u32), u32>,
    below: Vec<u64>,
    terminal: Vec<bool>,
}

impl Trie {
    pub fn new() -> Self {
        Trie {
            children: HashMap::new(),
            below: vec![0],
            terminal: vec![false],
        }
    }

    /// Adds a string; returns false if it was already present.
    pub fn insert(&mut self, word: &[usize]) -> bool {
        let mut path = vec![ROOT];
        let mut node = ROOT;
        for &s in word {
            let next = self.below.len() as u32;
            node = *self.children.entry((node, s as u32)).or_insert(next);
            if node == next {
                self.below.push(0);
                self.terminal.push(false);
            }
            path.push(node);
        }
        if self.terminal[node as usize] {
            return false;
        }
        self.terminal[node as usize] = true;
        for n in path {
            self.below[n as usize] += 1;
        }
        true
    }

    pub fn child(&self, node: u32, sym: usize) -> Option<u32> {
        self.children.get(&(node, sym as u32)).copied()
    }

    pub fn below(&self, node: u32) -> u64 {
        self.below[node as usize]
    }

    pub fn is_terminal(&self, node: u32) -> bool {
        self.terminal[node as usize]
    }

    pub fn contains(&self, word: &[usize]) -> bool {
        let mut node = ROOT;
        for &s in word {
            match self.child(node, s) {
                Some(n) => node = n,
                None => return false,
            }
        }
        self.is_terminal(node)
    }

    /// Number of distinct strings held.
    pub fn len(&self) -> u64 {
        self.below[ROOT as usize]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub(crate) fn root() -> u32 {
        ROOT
    }
}

/// Uniform-outbound-edge walks over `L ∩ Σ^len` minus a carved set.
///
/// The carved machine is the product of the layered DFA with the
/// complement of the exclusion trie; a state is live when it has more
/// accepted completions than excluded ones.
pub struct SamplerState {
    base: Arc<Layered>,
    len: usize,
    excluded: Trie,
    rng: ChaCha20Rng,
}

impl SamplerState {
    pub fn new(base: Arc<Layered>, len: usize, rng: ChaCha20Rng) -> Self {
        assert!(len <= base.max_len());
        SamplerState {
            base,
            len,
            excluded: Trie::new(),
            rng,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Saturating number of strings the carved machine still accepts.
    pub fn remaining(&self) -> u64 {
        self.base.count(self.len).saturating_sub(self.excluded.len())
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        word.len() == self.len && self.base.dfa.accepts_indices(word) && !self.excluded.contains(word)
    }

    /// Live successors of `(q, r, node)` as `(symbol, state, node)`.
    fn live_edges(&self, q: u32, r: usize, node: Option<u32>) -> Vec<(usize, u32, Option<u32>)> {
        let dfa = &self.base.dfa;
        (0..dfa.alphabet().len())
            .filter_map(|a| {
                let t = dfa.next(q, a)?;
                let child = node.and_then(|n| self.excluded.child(n, a));
                let excl = child.map_or(0, |c| self.excluded.below(c));
                (self.base.completions(t, r - 1) > excl).then_some((a, t, child))
            })
            .collect()
    }

    fn root_live(&self) -> bool {
        self.base.completions(self.base.dfa.start(), self.len) > self.excluded.len()
    }

    pub fn sample_walk(&mut self) -> Result<Vec<usize>> {
        if !self.root_live() {
            return Err(Error::Exhausted(self.len));
        }
        let mut q = self.base.dfa.start();
        let mut node = Some(Trie::root());
        let mut word = Vec::with_capacity(self.len);
        for r in (1..=self.len).rev() {
            let edges = self.live_edges(q, r, node);
            let (a, t, child) = edges[self.rng.random_range(0..edges.len())];
            word.push(a);
            q = t;
            node = child;
        }
        Ok(word)
    }

    /// Removes `word` from the carved language.
    pub fn carve(&mut self, word: &[usize]) -> Result<()> {
        if !self.accepts(word) {
            return Err(Error::NotAccepted);
        }
        self.excluded.insert(word);
        Ok(())
    }

    /// Draws and carves in one step.
    pub fn sample_unique(&mut self) -> Result<Vec<usize>> {
        let w = self.sample_walk()?;
        self.excluded.insert(&w);
        Ok(w)
    }

    /// Probability that [`SamplerState::sample_walk`] returns `word`:
    /// the product of inverse live outdegrees along its path.
    pub fn walk_probability(&self, word: &[usize]) -> f64 {
        if !self.accepts(word) {
            return 0.0;
        }
        let mut q = self.base.dfa.start();
        let mut node = Some(Trie::root());
        let mut p = 1.0;
        for (i, &a) in word.iter().enumerate() {
            let edges = self.live_edges(q, self.len - i, node);
            p /= edges.len() as f64;
            let &(_, t, child) = edges.iter().find(|e| e.0 == a).expect("accepted path is live");
            q = t;
            node = child;
        }
        p
    }
}
