use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha20Rng;

use crate::automaton::Dfa;
use crate::datagen::sampler::Trie;
use crate::error::{Error, Result};
use crate::fst::{edit1_transducer, Fst};

const NONE: u32 = u32::MAX;
const REJECTION_TRIES: usize = 64;

/// Liveness of the composition `A ∘ T ∘ C`, where `T` is the edit-distance-1
/// transducer, layered by the number of anchor symbols still to read.
#[derive(Debug)]
pub struct PairBase {
    anchor: Dfa,
    partner: Dfa,
    edit: Fst,
    max_len: usize,
    live: Vec<bool>,
}

impl PairBase {
    /// `anchor` and `partner` must be over the same alphabet.
    pub fn new(anchor: &Dfa, partner: &Dfa, max_len: usize) -> Result<Self> {
        if anchor.alphabet() != partner.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let mut base = PairBase {
            anchor: anchor.minimize(),
            partner: partner.minimize(),
            edit: edit1_transducer(anchor.alphabet()),
            max_len,
            live: Vec::new(),
        };
        base.fill();
        Ok(base)
    }

    fn dims(&self) -> (usize, usize, usize) {
        (self.anchor.num_states(), self.edit.num_states(), self.partner.num_states())
    }

    fn index(&self, r: usize, p: u32, t: u32, q: u32) -> usize {
        let (na, nt, nc) = self.dims();
        ((r * na + p as usize) * nt + t as usize) * nc + q as usize
    }

    fn fill(&mut self) {
        let (na, nt, nc) = self.dims();
        self.live = vec![false; (self.max_len + 1) * na * nt * nc];
        for r in 0..=self.max_len {
            // Only state 0 has ε-input arcs, and they lead away from it.
            for t in (1..nt as u32).chain([0]) {
                for p in 0..na as u32 {
                    for q in 0..nc as u32 {
                        let v = self.base_live(r, p, t, q);
                        let i = self.index(r, p, t, q);
                        self.live[i] = v;
                    }
                }
            }
        }
    }

    fn is_final(&self, p: u32, t: u32, q: u32) -> bool {
        self.anchor.is_final(p) && self.edit.is_final(t) && self.partner.is_final(q)
    }

    fn base_live(&self, r: usize, p: u32, t: u32, q: u32) -> bool {
        if r == 0 && self.is_final(p, t, q) {
            return true;
        }
        self.edit.arcs(t).iter().any(|arc| {
            let (r2, p2) = match arc.ilabel {
                Some(_) if r == 0 => return false,
                Some(a) => match self.anchor.next(p, a as usize) {
                    Some(p2) => (r - 1, p2),
                    None => return false,
                },
                None => (r, p),
            };
            let q2 = match arc.olabel {
                Some(b) => match self.partner.next(q, b as usize) {
                    Some(q2) => q2,
                    None => return false,
                },
                None => q,
            };
            self.live[self.index(r2, p2, arc.next, q2)]
        })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn anchor(&self) -> &Dfa {
        &self.anchor
    }

    pub fn partner(&self) -> &Dfa {
        &self.partner
    }

    /// Whether some edit-1 pair with an anchor of length `len` exists.
    pub fn nonempty(&self, len: usize) -> bool {
        self.live[self.index(len, self.anchor.start(), self.edit.start(), self.partner.start())]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Node {
    r: u32,
    p: u32,
    t: u32,
    q: u32,
    a: u32,
    c: u32,
}

/// Walks drawing unique edit-1 pairs `(anchor, partner)` with anchors of a
/// fixed length; anchors and partners in the exclusion tries never appear.
pub struct PairSampler {
    base: Arc<PairBase>,
    len: usize,
    anchors_out: Trie,
    partners_out: Trie,
    drawn: HashMap<(u32, u32), u32>,
    drawn_end: Vec<bool>,
    drawn_live: Vec<Option<bool>>,
    memo: HashMap<Node, bool>,
    rng: ChaCha20Rng,
}

impl PairSampler {
    pub fn new(base: Arc<PairBase>, len: usize, anchors_out: Trie, partners_out: Trie, rng: ChaCha20Rng) -> Self {
        assert!(len <= base.max_len);
        PairSampler {
            base,
            len,
            anchors_out,
            partners_out,
            drawn: HashMap::new(),
            drawn_end: vec![false],
            drawn_live: vec![None],
            memo: HashMap::new(),
            rng,
        }
    }

    fn start(&self) -> (Node, u32) {
        let b = &self.base;
        let node = Node {
            r: self.len as u32,
            p: b.anchor.start(),
            t: b.edit.start(),
            q: b.partner.start(),
            a: Trie::root(),
            c: Trie::root(),
        };
        (node, 0)
    }

    /// Successor along arc `i` of the transducer state, if the composition
    /// has it and it is live ignoring exclusions.
    fn step(&self, n: Node, pn: u32, i: usize) -> Option<(Node, u32)> {
        let b = &self.base;
        let arc = b.edit.arcs(n.t)[i];
        let mut m = Node { t: arc.next, ..n };
        if let Some(a) = arc.ilabel {
            if n.r == 0 {
                return None;
            }
            m.r -= 1;
            m.p = b.anchor.next(n.p, a as usize)?;
            m.a = self.child(&self.anchors_out, n.a, a);
        }
        if let Some(o) = arc.olabel {
            m.q = b.partner.next(n.q, o as usize)?;
            m.c = self.child(&self.partners_out, n.c, o);
        }
        if !b.live[b.index(m.r as usize, m.p, m.t, m.q)] {
            return None;
        }
        let pn2 = if pn == NONE {
            NONE
        } else {
            self.drawn.get(&(pn, i as u32)).copied().unwrap_or(NONE)
        };
        Some((m, pn2))
    }

    fn child(&self, trie: &Trie, node: u32, sym: u32) -> u32 {
        if node == NONE {
            NONE
        } else {
            trie.child(node, sym as usize).unwrap_or(NONE)
        }
    }

    fn accepting(&self, n: Node, pn: u32) -> bool {
        n.r == 0
            && self.base.is_final(n.p, n.t, n.q)
            && !(n.a != NONE && self.anchors_out.is_terminal(n.a))
            && !(n.c != NONE && self.partners_out.is_terminal(n.c))
            && !(pn != NONE && self.drawn_end[pn as usize])
    }

    fn live(&mut self, n: Node, pn: u32) -> bool {
        if pn != NONE {
            if let Some(v) = self.drawn_live[pn as usize] {
                return v;
            }
            let v = self.explore(n, pn);
            self.drawn_live[pn as usize] = Some(v);
            return v;
        }
        if n.a == NONE && n.c == NONE {
            // `step` already checked the exclusion-free table.
            return true;
        }
        if let Some(&v) = self.memo.get(&n) {
            return v;
        }
        let v = self.explore(n, NONE);
        self.memo.insert(n, v);
        v
    }

    fn explore(&mut self, n: Node, pn: u32) -> bool {
        if self.accepting(n, pn) {
            return true;
        }
        let arcs = self.base.edit.arcs(n.t).len();
        for i in 0..arcs {
            if let Some((m, pm)) = self.step(n, pn, i) {
                if self.live(m, pm) {
                    return true;
                }
            }
        }
        false
    }

    fn pick(&mut self, n: Node, pn: u32) -> (Node, u32, usize) {
        let arcs = self.base.edit.arcs(n.t).len();
        for _ in 0..REJECTION_TRIES {
            let i = self.rng.random_range(0..arcs);
            if let Some((m, pm)) = self.step(n, pn, i) {
                if self.live(m, pm) {
                    return (m, pm, i);
                }
            }
        }
        let mut options = Vec::new();
        for i in 0..arcs {
            if let Some((m, pm)) = self.step(n, pn, i) {
                if self.live(m, pm) {
                    options.push((m, pm, i));
                }
            }
        }
        options[self.rng.random_range(0..options.len())]
    }

    /// Draws one pair that has not been drawn before.
    pub fn sample(&mut self) -> Result<(Vec<usize>, Vec<usize>)> {
        let (mut n, mut pn) = self.start();
        if !self.base.live[self.base.index(n.r as usize, n.p, n.t, n.q)] || !self.live(n, pn) {
            return Err(Error::Exhausted(self.len));
        }
        let mut path = Vec::new();
        while !(n.r == 0 && self.base.is_final(n.p, n.t, n.q)) {
            let (m, pm, i) = self.pick(n, pn);
            path.push((n.t, i));
            n = m;
            pn = pm;
        }
        let mut anchor = Vec::with_capacity(self.len);
        let mut partner = Vec::with_capacity(self.len + 1);
        let mut node = 0u32;
        self.drawn_live[0] = None;
        for &(t, i) in &path {
            let arc = self.base.edit.arcs(t)[i];
            anchor.extend(arc.ilabel.map(|a| a as usize));
            partner.extend(arc.olabel.map(|b| b as usize));
            let fresh = self.drawn_end.len() as u32;
            node = *self.drawn.entry((node, i as u32)).or_insert(fresh);
            if node == fresh {
                self.drawn_end.push(false);
                self.drawn_live.push(None);
            }
            self.drawn_live[node as usize] = None;
        }
        self.drawn_end[node as usize] = true;
        Ok((anchor, partner))
    }
}
