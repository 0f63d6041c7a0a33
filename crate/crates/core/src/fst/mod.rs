//! Unweighted finite-state transducers with epsilon on either side.
//!
//! Arcs carry an optional input symbol and an optional output symbol;
//! `None` is epsilon. Composition uses the three-state epsilon filter, so
//! each alignment of epsilon moves produces a single composed path.

mod relations;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write;

pub use relations::{edit1_transducer, insdel_transducer, tier_projection, InsDel};

use crate::alphabet::Alphabet;
use crate::automaton::att::EPSILON;
use crate::automaton::{Dfa, Nfa};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FstArc {
    pub ilabel: Option<u32>,
    pub olabel: Option<u32>,
    pub next: u32,
}

#[derive(Clone, Debug)]
pub struct Fst {
    input: Alphabet,
    output: Alphabet,
    start: u32,
    finals: Vec<bool>,
    arcs: Vec<Vec<FstArc>>,
}

/// Direction for [`Fst::apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Image,
    Preimage,
}

impl Fst {
    pub fn new(input: Alphabet, output: Alphabet) -> Self {
        Fst {
            input,
            output,
            start: 0,
            finals: Vec::new(),
            arcs: Vec::new(),
        }
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn num_states(&self) -> usize {
        self.finals.len()
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn set_start(&mut self, q: u32) {
        self.start = q;
    }

    pub fn add_state(&mut self) -> u32 {
        self.finals.push(false);
        self.arcs.push(Vec::new());
        (self.finals.len() - 1) as u32
    }

    pub fn set_final(&mut self, q: u32, fin: bool) {
        self.finals[q as usize] = fin;
    }

    pub fn is_final(&self, q: u32) -> bool {
        self.finals[q as usize]
    }

    pub fn add_arc(&mut self, from: u32, ilabel: Option<usize>, olabel: Option<usize>, next: u32) {
        self.arcs[from as usize].push(FstArc {
            ilabel: ilabel.map(|s| s as u32),
            olabel: olabel.map(|s| s as u32),
            next,
        });
    }

    pub fn arcs(&self, q: u32) -> &[FstArc] {
        &self.arcs[q as usize]
    }

    /// The identity relation on `L(d)`.
    pub fn identity(d: &Dfa) -> Fst {
        let a = d.alphabet().clone();
        let mut t = Fst::new(a.clone(), a.clone());
        for q in 0..d.num_states() as u32 {
            let s = t.add_state();
            t.set_final(s, d.is_final(q));
        }
        t.start = d.start();
        for q in 0..d.num_states() as u32 {
            for s in 0..a.len() {
                if let Some(r) = d.next(q, s) {
                    t.add_arc(q, Some(s), Some(s), r);
                }
            }
        }
        t
    }

    /// Relational composition `self ∘ other`: pairs `(x, z)` with `(x, y)`
    /// in `self` and `(y, z)` in `other`. Only the reachable part is built.
    pub fn compose(&self, other: &Fst) -> Result<Fst> {
        if self.output != other.input {
            return Err(Error::AlphabetMismatch);
        }
        let mut by_input: Vec<HashMap<Option<u32>, Vec<FstArc>>> = Vec::with_capacity(other.num_states());
        for q in 0..other.num_states() {
            let mut m: HashMap<Option<u32>, Vec<FstArc>> = HashMap::new();
            for a in &other.arcs[q] {
                m.entry(a.ilabel).or_default().push(*a);
            }
            by_input.push(m);
        }
        let mut out = Fst::new(self.input.clone(), other.output.clone());
        let mut ids: HashMap<(u32, u32, u8), u32> = HashMap::new();
        let mut queue = VecDeque::new();
        let start = (self.start, other.start, 0u8);
        ids.insert(start, out.add_state());
        queue.push_back(start);
        let mut pending: Vec<(Option<u32>, Option<u32>, (u32, u32, u8))> = Vec::new();
        while let Some(key @ (p, q, filter)) = queue.pop_front() {
            let id = ids[&key];
            out.set_final(id, self.is_final(p) && other.is_final(q));
            pending.clear();
            for a in &self.arcs[p as usize] {
                match a.olabel {
                    Some(mid) => {
                        if let Some(bs) = by_input[q as usize].get(&Some(mid)) {
                            for b in bs {
                                pending.push((a.ilabel, b.olabel, (a.next, b.next, 0)));
                            }
                        }
                    }
                    None => {
                        if filter != 2 {
                            pending.push((a.ilabel, None, (a.next, q, 1)));
                        }
                        if filter == 0 {
                            if let Some(bs) = by_input[q as usize].get(&None) {
                                for b in bs {
                                    pending.push((a.ilabel, b.olabel, (a.next, b.next, 0)));
                                }
                            }
                        }
                    }
                }
            }
            if filter != 1 {
                if let Some(bs) = by_input[q as usize].get(&None) {
                    for b in bs {
                        pending.push((None, b.olabel, (p, b.next, 2)));
                    }
                }
            }
            for &(i, o, next) in &pending {
                let nid = *ids.entry(next).or_insert_with(|| {
                    queue.push_back(next);
                    out.add_state()
                });
                out.arcs[id as usize].push(FstArc {
                    ilabel: i,
                    olabel: o,
                    next: nid,
                });
            }
        }
        Ok(out.trim())
    }

    /// `a ∘ t ∘ c` with acceptors lifted to identity relations.
    pub fn compose_acceptors(a: &Dfa, t: &Fst, c: &Dfa) -> Result<Fst> {
        Fst::identity(a).compose(t)?.compose(&Fst::identity(c))
    }

    /// Drops states that are unreachable or cannot reach a final state.
    pub fn trim(&self) -> Fst {
        let n = self.num_states();
        let mut acc = vec![false; n];
        let mut stack = vec![self.start];
        if n > 0 {
            acc[self.start as usize] = true;
        }
        while let Some(q) = stack.pop() {
            for a in &self.arcs[q as usize] {
                if !acc[a.next as usize] {
                    acc[a.next as usize] = true;
                    stack.push(a.next);
                }
            }
        }
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for a in &self.arcs[q] {
                rev[a.next as usize].push(q as u32);
            }
        }
        let mut co = self.finals.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| co[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !co[p as usize] {
                    co[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        let mut out = Fst::new(self.input.clone(), self.output.clone());
        if n == 0 || !co[self.start as usize] {
            out.add_state();
            return out;
        }
        let mut map = vec![u32::MAX; n];
        for q in 0..n {
            if acc[q] && co[q] {
                map[q] = out.add_state();
                out.set_final(map[q], self.finals[q]);
            }
        }
        out.start = map[self.start as usize];
        for q in 0..n {
            if map[q] == u32::MAX {
                continue;
            }
            for a in &self.arcs[q] {
                if map[a.next as usize] != u32::MAX {
                    out.arcs[map[q] as usize].push(FstArc {
                        next: map[a.next as usize],
                        ..*a
                    });
                }
            }
        }
        out
    }

    fn project(&self, side: Direction) -> Nfa {
        let alphabet = match side {
            Direction::Image => self.output.clone(),
            Direction::Preimage => self.input.clone(),
        };
        let mut nfa = Nfa::new(alphabet);
        for q in 0..self.num_states() as u32 {
            let s = nfa.add_state();
            nfa.set_final(s, self.is_final(q));
        }
        nfa.add_start(self.start);
        for q in 0..self.num_states() as u32 {
            for a in &self.arcs[q as usize] {
                let label = match side {
                    Direction::Image => a.olabel,
                    Direction::Preimage => a.ilabel,
                };
                match label {
                    Some(s) => nfa.add_arc(q, s as usize, a.next),
                    None => nfa.add_epsilon(q, a.next),
                }
            }
        }
        nfa
    }

    /// Minimal DFA of the range of the relation.
    pub fn output_language(&self) -> Dfa {
        self.project(Direction::Image).to_dfa()
    }

    /// Minimal DFA of the domain of the relation.
    pub fn input_language(&self) -> Dfa {
        self.project(Direction::Preimage).to_dfa()
    }

    /// `t(L)` or `t⁻¹(L)`.
    pub fn apply(&self, lang: &Dfa, direction: Direction) -> Result<Dfa> {
        match direction {
            Direction::Image => {
                if lang.alphabet() != &self.input {
                    return Err(Error::AlphabetMismatch);
                }
                Ok(Fst::identity(lang).compose(self)?.output_language())
            }
            Direction::Preimage => {
                if lang.alphabet() != &self.output {
                    return Err(Error::AlphabetMismatch);
                }
                Ok(self.compose(&Fst::identity(lang))?.input_language())
            }
        }
    }

    /// Whether `(x, y)` is in the relation.
    pub fn accepts_pair(&self, x: &str, y: &str) -> Result<bool> {
        let xs = self.input.encode(x)?;
        let ys = self.output.encode(y)?;
        let mut seen: HashSet<(u32, usize, usize)> = HashSet::new();
        let mut stack = vec![(self.start, 0usize, 0usize)];
        while let Some(cfg @ (q, i, j)) = stack.pop() {
            if !seen.insert(cfg) {
                continue;
            }
            if i == xs.len() && j == ys.len() && self.is_final(q) {
                return Ok(true);
            }
            for a in &self.arcs[q as usize] {
                let ni = match a.ilabel {
                    None => i,
                    Some(s) if i < xs.len() && xs[i] == s as usize => i + 1,
                    _ => continue,
                };
                let nj = match a.olabel {
                    None => j,
                    Some(s) if j < ys.len() && ys[j] == s as usize => j + 1,
                    _ => continue,
                };
                stack.push((a.next, ni, nj));
            }
        }
        Ok(false)
    }

    /// All pairs in the relation with `|x| <= max_in` and `|y| <= max_out`.
    pub fn pairs(&self, max_in: usize, max_out: usize) -> Vec<(String, String)> {
        let mut found: HashSet<(Vec<u32>, Vec<u32>)> = HashSet::new();
        let mut seen: HashSet<(u32, Vec<u32>, Vec<u32>)> = HashSet::new();
        let mut stack = vec![(self.start, Vec::new(), Vec::new())];
        while let Some((q, x, y)) = stack.pop() {
            if !seen.insert((q, x.clone(), y.clone())) {
                continue;
            }
            if self.is_final(q) {
                found.insert((x.clone(), y.clone()));
            }
            for a in &self.arcs[q as usize] {
                let mut nx = x.clone();
                let mut ny = y.clone();
                if let Some(s) = a.ilabel {
                    nx.push(s);
                }
                if let Some(s) = a.olabel {
                    ny.push(s);
                }
                if nx.len() <= max_in && ny.len() <= max_out {
                    stack.push((a.next, nx, ny));
                }
            }
        }
        let dec = |a: &Alphabet, w: &[u32]| -> String { w.iter().map(|&s| a.symbol(s as usize)).collect() };
        let mut out: Vec<(String, String)> = found
            .into_iter()
            .map(|(x, y)| (dec(&self.input, &x), dec(&self.output, &y)))
            .collect();
        out.sort();
        out
    }

    /// Four-column AT&T text; the start state's arcs come first.
    pub fn to_att(&self) -> String {
        let mut out = String::new();
        let label = |a: &Alphabet, l: Option<u32>| match l {
            Some(s) => a.symbol(s as usize).to_string(),
            None => EPSILON.to_string(),
        };
        let order = std::iter::once(self.start).chain((0..self.num_states() as u32).filter(|&q| q != self.start));
        for q in order {
            for a in &self.arcs[q as usize] {
                writeln!(
                    out,
                    "{q}\t{}\t{}\t{}",
                    a.next,
                    label(&self.input, a.ilabel),
                    label(&self.output, a.olabel)
                )
                .unwrap();
            }
        }
        for q in 0..self.num_states() as u32 {
            if self.is_final(q) {
                writeln!(out, "{q}").unwrap();
            }
        }
        out
    }
}
