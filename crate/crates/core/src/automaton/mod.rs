//! Deterministic and nondeterministic finite acceptors.
//!
//! [`Dfa`] values produced by [`Dfa::minimize`] (and by every operation in
//! this module that returns one) are minimal, trim and canonically
//! numbered: state 0 is the start state and the remaining states are
//! numbered breadth-first in symbol order. Two minimal DFAs for the same
//! language over the same alphabet are therefore equal as values.
//!
//! Transitions are partial. A missing transition goes to an implicit dead
//! state; [`Dfa::complete`] materializes it when a total function is
//! needed.

pub(crate) mod att;
mod nfa;

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub use att::{parse_symbol_table, read_att_acceptor, symbol_table, AttAcceptor};
pub use nfa::Nfa;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Marker for an undefined transition.
pub const NONE: u32 = u32::MAX;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    start: u32,
    finals: Vec<bool>,
    /// Row-major `state * |alphabet| + symbol`.
    trans: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::Union => a || b,
            BoolOp::Intersection => a && b,
            BoolOp::Difference => a && !b,
            BoolOp::SymmetricDifference => a != b,
        }
    }
}

impl Dfa {
    /// Builds a DFA from raw parts. `trans` is row-major over states with
    /// [`NONE`] for undefined transitions.
    pub fn from_parts(alphabet: Alphabet, start: u32, finals: Vec<bool>, trans: Vec<u32>) -> Self {
        assert_eq!(trans.len(), finals.len() * alphabet.len());
        assert!((start as usize) < finals.len());
        Dfa {
            alphabet,
            start,
            finals,
            trans,
        }
    }

    /// The canonical empty-language machine: one non-final state.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Dfa::from_parts(alphabet.clone(), 0, vec![false], vec![NONE; alphabet.len()])
    }

    /// Σ*.
    pub fn universal(alphabet: &Alphabet) -> Self {
        Dfa::from_parts(alphabet.clone(), 0, vec![true], vec![0; alphabet.len()])
    }

    /// Σ^len.
    pub fn sigma_length(alphabet: &Alphabet, len: usize) -> Self {
        let k = alphabet.len();
        let mut trans = Vec::with_capacity((len + 1) * k);
        for q in 0..=len {
            let t = if q < len { q as u32 + 1 } else { NONE };
            trans.extend(std::iter::repeat(t).take(k));
        }
        let finals = (0..=len).map(|q| q == len).collect();
        Dfa::from_parts(alphabet.clone(), 0, finals, trans).minimize()
    }

    /// The finite language of the given words.
    pub fn from_words<'a>(alphabet: &Alphabet, words: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let k = alphabet.len();
        let mut trans = vec![NONE; k];
        let mut finals = vec![false];
        for w in words {
            let mut q = 0usize;
            for s in alphabet.encode(w)? {
                let t = trans[q * k + s];
                q = if t == NONE {
                    let n = finals.len();
                    finals.push(false);
                    trans.extend(std::iter::repeat(NONE).take(k));
                    trans[q * k + s] = n as u32;
                    n
                } else {
                    t as usize
                };
            }
            finals[q] = true;
        }
        Ok(Dfa::from_parts(alphabet.clone(), 0, finals, trans).minimize())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Number of states in this (partial) machine.
    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    /// Number of states of the minimal complete machine, assuming `self`
    /// is minimal: one more than the trim size when a dead state is needed,
    /// except for the empty language whose lone state is already dead.
    pub fn completed_size(&self) -> usize {
        if self.is_empty_language() {
            return 1;
        }
        self.num_states() + usize::from(self.trans.contains(&NONE))
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn is_final(&self, q: u32) -> bool {
        self.finals[q as usize]
    }

    pub fn finals(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.num_states() as u32).filter(move |&q| self.finals[q as usize])
    }

    pub fn next(&self, q: u32, sym: usize) -> Option<u32> {
        let t = self.trans[q as usize * self.alphabet.len() + sym];
        (t != NONE).then_some(t)
    }

    /// State reached from `q` on a word, if every step is defined.
    pub fn run_from(&self, q: u32, word: &[usize]) -> Option<u32> {
        word.iter().try_fold(q, |q, &s| self.next(q, s))
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        self.run_from(self.start, word).is_some_and(|q| self.is_final(q))
    }

    pub fn accepts(&self, w: &str) -> Result<bool> {
        Ok(self.accepts_indices(&self.alphabet.encode(w)?))
    }

    /// True iff no final state is reachable.
    pub fn is_empty_language(&self) -> bool {
        let reach = self.accessible();
        !(0..self.num_states()).any(|q| reach[q] && self.finals[q])
    }

    pub fn is_universal(&self) -> bool {
        self.complement().is_empty_language()
    }

    fn accessible(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![self.start];
        seen[self.start as usize] = true;
        while let Some(q) = stack.pop() {
            for &t in &self.trans[q as usize * k..(q as usize + 1) * k] {
                if t != NONE && !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    fn coaccessible(&self) -> Vec<bool> {
        let k = self.alphabet.len();
        let n = self.num_states();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for &t in &self.trans[q * k..(q + 1) * k] {
                if t != NONE {
                    rev[t as usize].push(q as u32);
                }
            }
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| seen[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !seen[p as usize] {
                    seen[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Removes states that are unreachable or cannot reach a final state.
    /// The result keeps the original relative state order.
    pub fn trim(&self) -> Dfa {
        let acc = self.accessible();
        let co = self.coaccessible();
        if !co[self.start as usize] {
            return Dfa::empty(&self.alphabet);
        }
        let k = self.alphabet.len();
        let keep: Vec<bool> = (0..self.num_states()).map(|q| acc[q] && co[q]).collect();
        let mut map = vec![NONE; self.num_states()];
        let mut n = 0u32;
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = n;
                n += 1;
            }
        }
        let mut trans = Vec::with_capacity(n as usize * k);
        let mut finals = Vec::with_capacity(n as usize);
        for q in 0..self.num_states() {
            if !keep[q] {
                continue;
            }
            finals.push(self.finals[q]);
            for &t in &self.trans[q * k..(q + 1) * k] {
                trans.push(if t == NONE { NONE } else { map[t as usize] });
            }
        }
        Dfa::from_parts(self.alphabet.clone(), map[self.start as usize], finals, trans)
    }

    /// Minimal trim DFA of the same language, canonically numbered.
    pub fn minimize(&self) -> Dfa {
        let t = self.trim();
        let n = t.num_states();
        let k = t.alphabet.len();
        // Moore refinement; undefined transitions map to the pseudo-class n.
        let mut class: Vec<u32> = t.finals.iter().map(|&f| u32::from(f)).collect();
        let mut count = {
            let mut c = class.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let mut ids: HashMap<Vec<u32>, u32> = HashMap::with_capacity(n);
            let mut next = Vec::with_capacity(n);
            let mut sig = Vec::with_capacity(k + 1);
            for q in 0..n {
                sig.clear();
                sig.push(class[q]);
                for &d in &t.trans[q * k..(q + 1) * k] {
                    sig.push(if d == NONE { n as u32 } else { class[d as usize] });
                }
                let fresh = ids.len() as u32;
                next.push(*ids.entry(sig.clone()).or_insert(fresh));
            }
            let new_count = ids.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut trans = vec![NONE; count * k];
        let mut finals = vec![false; count];
        for q in 0..n {
            let c = class[q] as usize;
            finals[c] = t.finals[q];
            for s in 0..k {
                let d = t.trans[q * k + s];
                trans[c * k + s] = if d == NONE { NONE } else { class[d as usize] };
            }
        }
        Dfa::from_parts(t.alphabet.clone(), class[t.start as usize], finals, trans).canonical()
    }

    /// Renumbers reachable states breadth-first from the start state.
    fn canonical(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut map = vec![NONE; self.num_states()];
        let mut order = Vec::with_capacity(self.num_states());
        let mut queue = VecDeque::new();
        map[self.start as usize] = 0;
        order.push(self.start);
        queue.push_back(self.start);
        while let Some(q) = queue.pop_front() {
            for s in 0..k {
                if let Some(t) = self.next(q, s) {
                    if map[t as usize] == NONE {
                        map[t as usize] = order.len() as u32;
                        order.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        let mut trans = Vec::with_capacity(order.len() * k);
        let mut finals = Vec::with_capacity(order.len());
        for &q in &order {
            finals.push(self.finals[q as usize]);
            for s in 0..k {
                trans.push(self.next(q, s).map_or(NONE, |t| map[t as usize]));
            }
        }
        Dfa::from_parts(self.alphabet.clone(), 0, finals, trans)
    }

    /// Adds an explicit dead state if any transition is undefined. The
    /// dead state, when added, is the last state.
    pub fn complete(&self) -> Dfa {
        if !self.trans.contains(&NONE) {
            return self.clone();
        }
        let sink = self.num_states() as u32;
        let k = self.alphabet.len();
        let mut trans: Vec<u32> = self
            .trans
            .iter()
            .map(|&t| if t == NONE { sink } else { t })
            .collect();
        trans.extend(std::iter::repeat(sink).take(k));
        let mut finals = self.finals.clone();
        finals.push(false);
        Dfa::from_parts(self.alphabet.clone(), self.start, finals, trans)
    }

    /// Complement with respect to Σ*.
    pub fn complement(&self) -> Dfa {
        let mut c = self.complete();
        for f in c.finals.iter_mut() {
            *f = !*f;
        }
        c.minimize()
    }

    fn check_alphabet(&self, other: &Dfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    /// Reachable part of the product of the completed machines, not minimized.
    fn product_raw(&self, other: &Dfa, op: BoolOp) -> Dfa {
        let a = self.complete();
        let b = other.complete();
        let k = a.alphabet.len();
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(a.start, b.start)];
        ids.insert((a.start, b.start), 0);
        let mut trans = Vec::new();
        let mut finals = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            finals.push(op.apply(a.is_final(p), b.is_final(q)));
            for s in 0..k {
                let key = (a.trans[p as usize * k + s], b.trans[q as usize * k + s]);
                let id = *ids.entry(key).or_insert_with(|| {
                    pairs.push(key);
                    (pairs.len() - 1) as u32
                });
                trans.push(id);
            }
            i += 1;
        }
        Dfa::from_parts(a.alphabet.clone(), 0, finals, trans)
    }

    pub fn boolean(&self, other: &Dfa, op: BoolOp) -> Result<Dfa> {
        self.check_alphabet(other)?;
        Ok(self.product_raw(other, op).minimize())
    }

    pub fn union(&self, other: &Dfa) -> Result<Dfa> {
        self.boolean(other, BoolOp::Union)
    }

    pub fn intersection(&self, other: &Dfa) -> Result<Dfa> {
        self.boolean(other, BoolOp::Intersection)
    }

    pub fn difference(&self, other: &Dfa) -> Result<Dfa> {
        self.boolean(other, BoolOp::Difference)
    }

    /// `L(self) L(other)`.
    pub fn concat(&self, other: &Dfa) -> Result<Dfa> {
        self.check_alphabet(other)?;
        Ok(self.to_nfa().concat(&other.to_nfa())?.to_dfa())
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone());
        for q in 0..self.num_states() as u32 {
            let s = nfa.add_state();
            nfa.set_final(s, self.is_final(q));
        }
        nfa.add_start(self.start);
        for q in 0..self.num_states() as u32 {
            for s in 0..self.alphabet.len() {
                if let Some(t) = self.next(q, s) {
                    nfa.add_arc(q, s, t);
                }
            }
        }
        nfa
    }

    /// Shortest string (in length-then-symbol order) in exactly one of the
    /// two languages.
    pub fn separating_word(&self, other: &Dfa) -> Result<Option<String>> {
        self.check_alphabet(other)?;
        let p = self.product_raw(other, BoolOp::SymmetricDifference);
        let k = p.alphabet.len();
        let mut parent: Vec<Option<(u32, usize)>> = vec![None; p.num_states()];
        let mut seen = vec![false; p.num_states()];
        let mut queue = VecDeque::from([0u32]);
        seen[0] = true;
        while let Some(q) = queue.pop_front() {
            if p.is_final(q) {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((prev, s)) = parent[cur as usize] {
                    word.push(s);
                    cur = prev;
                }
                word.reverse();
                return Ok(Some(p.alphabet.decode(&word)));
            }
            for s in 0..k {
                let t = p.trans[q as usize * k + s];
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    parent[t as usize] = Some((q, s));
                    queue.push_back(t);
                }
            }
        }
        Ok(None)
    }

    /// Language equality via emptiness of the symmetric difference.
    pub fn language_equal(&self, other: &Dfa) -> Result<bool> {
        Ok(self.separating_word(other)?.is_none())
    }

    /// `L(self) ⊆ L(other)`.
    pub fn is_subset_of(&self, other: &Dfa) -> Result<bool> {
        self.check_alphabet(other)?;
        Ok(self.product_raw(other, BoolOp::Difference).is_empty_language())
    }

    /// Exact number of strings of length `len` in the language.
    pub fn count_length(&self, len: usize) -> BigUint {
        count_layers(self, len).swap_remove(len)[self.start as usize].clone()
    }

    /// Copy of this machine with the given alphabet (a superset whose
    /// extra symbols have no transitions). Used to lift sub-alphabet
    /// languages.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Dfa> {
        if !self.alphabet.is_subset_of(alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        let k = alphabet.len();
        let mut trans = vec![NONE; self.num_states() * k];
        for q in 0..self.num_states() as u32 {
            for (s, &c) in self.alphabet.symbols().iter().enumerate() {
                if let Some(t) = self.next(q, s) {
                    trans[q as usize * k + alphabet.index_of(c).unwrap()] = t;
                }
            }
        }
        Ok(Dfa::from_parts(alphabet.clone(), self.start, self.finals.clone(), trans).minimize())
    }
}

/// `out[r][q]` = number of accepted completions of length `r` from state `q`,
/// for `r` in `0..=len`.
pub(crate) fn count_layers(d: &Dfa, len: usize) -> Vec<Vec<BigUint>> {
    let n = d.num_states();
    let k = d.alphabet().len();
    let mut layers: Vec<Vec<BigUint>> = Vec::with_capacity(len + 1);
    layers.push(
        (0..n)
            .map(|q| if d.is_final(q as u32) { BigUint::one() } else { BigUint::zero() })
            .collect(),
    );
    for r in 1..=len {
        let prev = &layers[r - 1];
        let cur = (0..n as u32)
            .map(|q| {
                let mut c = BigUint::zero();
                for s in 0..k {
                    if let Some(t) = d.next(q, s) {
                        c += &prev[t as usize];
                    }
                }
                c
            })
            .collect();
        layers.push(cur);
    }
    layers
}

impl std::fmt::Debug for Dfa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Dfa {{ states: {}, start: {}, alphabet: {:?}", self.num_states(), self.start, self.alphabet)?;
        for q in 0..self.num_states() as u32 {
            write!(f, "  {q}{}:", if self.is_final(q) { "*" } else { "" })?;
            for s in 0..self.alphabet.len() {
                if let Some(t) = self.next(q, s) {
                    write!(f, " {}->{t}", self.alphabet.symbol(s))?;
                }
            }
            writeln!(f)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests;
