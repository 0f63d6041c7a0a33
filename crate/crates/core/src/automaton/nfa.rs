use std::collections::{HashMap, VecDeque};

use crate::alphabet::Alphabet;
use crate::automaton::{Dfa, NONE};
use crate::error::{Error, Result};

/// A nondeterministic acceptor with epsilon moves and any number of starts.
#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    starts: Vec<u32>,
    finals: Vec<bool>,
    /// Per state: `(symbol, target)`, `None` for an epsilon move.
    arcs: Vec<Vec<(Option<u32>, u32)>>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            starts: Vec::new(),
            finals: Vec::new(),
            arcs: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn add_state(&mut self) -> u32 {
        self.finals.push(false);
        self.arcs.push(Vec::new());
        (self.finals.len() - 1) as u32
    }

    pub fn add_start(&mut self, q: u32) {
        if !self.starts.contains(&q) {
            self.starts.push(q);
        }
    }

    pub fn starts(&self) -> &[u32] {
        &self.starts
    }

    pub fn set_final(&mut self, q: u32, fin: bool) {
        self.finals[q as usize] = fin;
    }

    pub fn is_final(&self, q: u32) -> bool {
        self.finals[q as usize]
    }

    pub fn add_arc(&mut self, from: u32, sym: usize, to: u32) {
        self.arcs[from as usize].push((Some(sym as u32), to));
    }

    /// Adds an arc on every symbol for which `pred` holds.
    pub fn add_arcs_where(&mut self, from: u32, to: u32, pred: impl Fn(usize) -> bool) {
        for s in 0..self.alphabet.len() {
            if pred(s) {
                self.add_arc(from, s, to);
            }
        }
    }

    pub fn add_epsilon(&mut self, from: u32, to: u32) {
        self.arcs[from as usize].push((None, to));
    }

    pub fn arcs(&self, q: u32) -> &[(Option<u32>, u32)] {
        &self.arcs[q as usize]
    }

    /// Appends a disjoint copy of `other`, returning the state offset.
    pub(crate) fn absorb(&mut self, other: &Nfa) -> u32 {
        let off = self.finals.len() as u32;
        self.finals.extend_from_slice(&other.finals);
        for arcs in &other.arcs {
            self.arcs
                .push(arcs.iter().map(|&(s, t)| (s, t + off)).collect());
        }
        off
    }

    fn closure(&self, set: &mut Vec<u32>) {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<u32> = Vec::new();
        for &q in set.iter() {
            if !seen[q as usize] {
                seen[q as usize] = true;
                stack.push(q);
            }
        }
        while let Some(q) = stack.pop() {
            for &(s, t) in &self.arcs[q as usize] {
                if s.is_none() && !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        set.clear();
        set.extend((0..self.num_states() as u32).filter(|&q| seen[q as usize]));
    }

    /// Simulates the automaton directly on a word of symbol indices.
    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        let mut cur = self.starts.clone();
        self.closure(&mut cur);
        for &sym in word {
            let mut next: Vec<u32> = Vec::new();
            for &q in &cur {
                for &(s, t) in &self.arcs[q as usize] {
                    if s == Some(sym as u32) {
                        next.push(t);
                    }
                }
            }
            self.closure(&mut next);
            cur = next;
            if cur.is_empty() {
                return false;
            }
        }
        cur.iter().any(|&q| self.finals[q as usize])
    }

    pub fn accepts(&self, w: &str) -> Result<bool> {
        Ok(self.accepts_indices(&self.alphabet.encode(w)?))
    }

    /// Subset construction over the reachable subsets. The result is partial
    /// (the empty subset is left out) and not yet minimized.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut start = self.starts.clone();
        self.closure(&mut start);
        let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut subsets: Vec<Vec<u32>> = Vec::new();
        let mut trans: Vec<u32> = Vec::new();
        let mut finals: Vec<bool> = Vec::new();
        let mut queue = VecDeque::new();
        ids.insert(start.clone(), 0);
        subsets.push(start);
        queue.push_back(0u32);
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); k];
        while let Some(id) = queue.pop_front() {
            let set = subsets[id as usize].clone();
            finals.push(set.iter().any(|&q| self.finals[q as usize]));
            for b in buckets.iter_mut() {
                b.clear();
            }
            for &q in &set {
                for &(s, t) in &self.arcs[q as usize] {
                    if let Some(s) = s {
                        buckets[s as usize].push(t);
                    }
                }
            }
            for b in buckets.iter_mut() {
                if b.is_empty() {
                    trans.push(NONE);
                    continue;
                }
                let mut next = std::mem::take(b);
                self.closure(&mut next);
                let nid = match ids.get(&next) {
                    Some(&nid) => nid,
                    None => {
                        let nid = subsets.len() as u32;
                        ids.insert(next.clone(), nid);
                        subsets.push(next);
                        queue.push_back(nid);
                        nid
                    }
                };
                trans.push(nid);
            }
        }
        Dfa::from_parts(self.alphabet.clone(), 0, finals, trans)
    }

    /// Determinizes and minimizes.
    pub fn to_dfa(&self) -> Dfa {
        self.determinize().minimize()
    }

    /// Accepts `L(self) L(other)`.
    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut out = self.clone();
        let off = out.absorb(other);
        for q in 0..self.num_states() as u32 {
            if self.is_final(q) {
                out.set_final(q, false);
                for &s in &other.starts {
                    out.add_epsilon(q, s + off);
                }
            }
        }
        Ok(out)
    }
}
