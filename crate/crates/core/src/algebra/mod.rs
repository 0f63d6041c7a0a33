//! Transformation semigroups of complete minimal DFAs and the algebraic
//! predicates used by the class deciders.
//!
//! Elements are total functions on the states of the completed minimal
//! DFA. The product `x * y` means "act by `x`, then by `y`", so the
//! element of a word `uv` is `elem(u) * elem(v)`.

use std::collections::HashMap;
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::automaton::{Dfa, NONE};
use crate::error::{Error, Result};

#[cfg(test)]
mod tests;

/// Identities checked by [`TransformationSemigroup::satisfies_identity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// For idempotents `e, f`, `x, z ∈ eSf` and `y ∈ fSe`: `xyz = zyx`.
    LttBeauquierPin,
    /// For idempotents `e, f`, `x, u ∈ eSf` and `y, v ∈ fSe`:
    /// `(xy)^ω x v (uv)^ω = (xy)^ω (uv)^ω`.
    Knast,
}

/// Local structure checked by [`TransformationSemigroup::local_submonoid_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalPredicate {
    /// Every `eSe` consists of commuting idempotents.
    Semilattice,
}

#[derive(Clone, Debug)]
pub struct TransformationSemigroup {
    degree: usize,
    /// Element images, `degree` entries per element.
    images: Vec<u32>,
    /// Element of each symbol, in alphabet order.
    generators: Vec<u32>,
    symbols: Vec<char>,
    /// `table[x * size + y] = x * y`.
    table: Vec<u32>,
    identity: Option<u32>,
}

/// The complete minimal DFA of `d`'s language, a single dead state for the
/// empty language.
pub(crate) fn complete_minimal(d: &Dfa) -> Result<Dfa> {
    let m = d.minimize();
    if m.is_empty_language() {
        let k = d.alphabet().len();
        return Ok(Dfa::from_parts(d.alphabet().clone(), 0, vec![false], vec![0; k]));
    }
    if d.trim().num_states() != m.num_states() {
        return Err(Error::NotMinimal);
    }
    Ok(m.complete())
}

/// The syntactic semigroup of `L(d)`: the actions of nonempty words on the
/// complete minimal DFA. `d` must be minimal (partial or complete).
pub fn syntactic_semigroup(d: &Dfa) -> Result<TransformationSemigroup> {
    let c = complete_minimal(d)?;
    let n = c.num_states();
    let k = c.alphabet().len();
    let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut images: Vec<u32> = Vec::new();
    // How each element was first reached: a generator, or (parent, symbol).
    let mut origin: Vec<(u32, usize)> = Vec::new();
    let mut generators = Vec::with_capacity(k);
    let mut intern = |img: Vec<u32>, from: (u32, usize), images: &mut Vec<u32>, origin: &mut Vec<(u32, usize)>| {
        if let Some(&i) = index.get(&img) {
            return i;
        }
        let i = origin.len() as u32;
        images.extend_from_slice(&img);
        origin.push(from);
        index.insert(img, i);
        i
    };
    let action = |s: usize| -> Vec<u32> {
        (0..n as u32).map(|q| c.next(q, s).unwrap_or(NONE)).collect()
    };
    for s in 0..k {
        let g = intern(action(s), (NONE, s), &mut images, &mut origin);
        generators.push(g);
    }
    // Right Cayley graph, filled in discovery order.
    let mut right: Vec<u32> = Vec::new();
    let mut x = 0usize;
    while x < origin.len() {
        for s in 0..k {
            let g = &images[generators[s] as usize * n..][..n];
            let img: Vec<u32> = images[x * n..(x + 1) * n].iter().map(|&q| g[q as usize]).collect();
            let y = intern(img, (x as u32, s), &mut images, &mut origin);
            right.push(y);
        }
        x += 1;
    }
    let size = origin.len();
    let mut table = vec![0u32; size * size];
    for x in 0..size {
        for y in 0..size {
            let (parent, s) = origin[y];
            table[x * size + y] = if parent == NONE {
                right[x * k + s]
            } else {
                right[table[x * size + parent as usize] as usize * k + s]
            };
        }
    }
    let identity_img: Vec<u32> = (0..n as u32).collect();
    let identity = index.get(&identity_img).copied();
    Ok(TransformationSemigroup {
        degree: n,
        images,
        generators,
        symbols: c.alphabet().symbols().to_vec(),
        table,
        identity,
    })
}

/// The syntactic monoid of `L(d)`: the syntactic semigroup with the
/// identity adjoined when no nonempty word acts as the identity.
pub fn syntactic_monoid(d: &Dfa) -> Result<TransformationSemigroup> {
    Ok(syntactic_semigroup(d)?.with_identity())
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl TransformationSemigroup {
    pub fn size(&self) -> usize {
        self.images.len() / self.degree
    }

    /// Number of states acted on.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> Option<u32> {
        self.identity
    }

    pub fn is_monoid(&self) -> bool {
        self.identity.is_some()
    }

    /// Element of each symbol, in alphabet order.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn image(&self, x: u32) -> &[u32] {
        &self.images[x as usize * self.degree..][..self.degree]
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.size() + y as usize]
    }

    /// Element of a nonempty word given as symbol indices.
    pub fn element_of(&self, word: &[usize]) -> Option<u32> {
        let (&first, rest) = word.split_first()?;
        Some(rest.iter().fold(self.generators[first], |x, &s| self.mul(x, self.generators[s])))
    }

    /// Adjoins an identity if there is none.
    pub fn with_identity(&self) -> TransformationSemigroup {
        if self.identity.is_some() {
            return self.clone();
        }
        let size = self.size();
        let e = size as u32;
        let mut table = Vec::with_capacity((size + 1) * (size + 1));
        for x in 0..size {
            table.extend_from_slice(&self.table[x * size..(x + 1) * size]);
            table.push(x as u32);
        }
        table.extend(0..=e);
        let mut images = self.images.clone();
        images.extend(0..self.degree as u32);
        TransformationSemigroup {
            degree: self.degree,
            images,
            generators: self.generators.clone(),
            symbols: self.symbols.clone(),
            table,
            identity: Some(e),
        }
    }

    fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size() as u32
    }

    pub fn is_idempotent(&self, x: u32) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<u32> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    /// The unique idempotent among the powers of `x`.
    pub fn omega_power(&self, x: u32) -> u32 {
        let mut p = x;
        loop {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, x);
        }
    }

    /// Every element `x` has `x^n = x^(n+1)` for some `n`.
    pub fn is_aperiodic(&self) -> bool {
        self.elements().all(|x| {
            let w = self.omega_power(x);
            self.mul(w, x) == w
        })
    }

    fn scc_trivial(&self, edge: impl Fn(u32, u32) -> u32) -> bool {
        let size = self.size();
        let mut g = DiGraph::<(), ()>::with_capacity(size, size * self.generators.len());
        let nodes: Vec<_> = (0..size).map(|_| g.add_node(())).collect();
        for x in self.elements() {
            for &gen in &self.generators {
                g.add_edge(nodes[x as usize], nodes[edge(x, gen) as usize], ());
            }
        }
        tarjan_scc(&g).iter().all(|c| c.len() == 1)
    }

    /// Every R-class is a singleton.
    pub fn is_r_trivial(&self) -> bool {
        self.scc_trivial(|x, g| self.mul(x, g))
    }

    /// Every L-class is a singleton.
    pub fn is_l_trivial(&self) -> bool {
        self.scc_trivial(|x, g| self.mul(g, x))
    }

    /// Every J-class is a singleton. For finite semigroups this is
    /// R-triviality together with L-triviality.
    pub fn is_j_trivial(&self) -> bool {
        self.is_r_trivial() && self.is_l_trivial()
    }

    /// A monoid whose only idempotent is its identity.
    pub fn is_group(&self) -> bool {
        match self.identity {
            Some(e) => self.idempotents() == [e],
            None => false,
        }
    }

    /// A group of prime order.
    pub fn group_order_prime(&self) -> bool {
        self.is_group() && is_prime(self.size())
    }

    /// `eSe` for an idempotent `e`.
    pub fn local_submonoid(&self, e: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self.elements().map(|s| self.mul(self.mul(e, s), e)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `eSf` for idempotents `e, f`.
    fn sandwich(&self, e: u32, f: u32) -> Vec<u32> {
        let mut out: Vec<u32> = self.elements().map(|s| self.mul(self.mul(e, s), f)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn local_submonoid_check(&self, predicate: LocalPredicate) -> bool {
        match predicate {
            LocalPredicate::Semilattice => self.idempotents().into_iter().all(|e| {
                let local = self.local_submonoid(e);
                local.iter().all(|&x| self.is_idempotent(x))
                    && local
                        .iter()
                        .enumerate()
                        .all(|(i, &x)| local[i + 1..].iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
            }),
        }
    }

    pub fn satisfies_identity(&self, identity: Identity) -> bool {
        let idem = self.idempotents();
        for &e in &idem {
            for &f in &idem {
                let ef = self.sandwich(e, f);
                let fe = self.sandwich(f, e);
                let ok = match identity {
                    Identity::LttBeauquierPin => self.ltt_holds(&ef, &fe),
                    Identity::Knast => self.knast_holds(&ef, &fe),
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    fn ltt_holds(&self, ef: &[u32], fe: &[u32]) -> bool {
        for (i, &x) in ef.iter().enumerate() {
            for &z in &ef[i + 1..] {
                for &y in fe {
                    let xy = self.mul(x, y);
                    let zy = self.mul(z, y);
                    if self.mul(xy, z) != self.mul(zy, x) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn knast_holds(&self, ef: &[u32], fe: &[u32]) -> bool {
        // Left sides (xy)^ω x and (xy)^ω, right sides v and (uv)^ω.
        let mut left: Vec<(u32, u32)> = Vec::new();
        for &x in ef {
            for &y in fe {
                let w = self.omega_power(self.mul(x, y));
                left.push((self.mul(w, x), w));
            }
        }
        let mut right: Vec<(u32, u32)> = Vec::new();
        for &u in ef {
            for &v in fe {
                right.push((v, self.omega_power(self.mul(u, v))));
            }
        }
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        left.iter().all(|&(wx, w)| {
            right
                .iter()
                .all(|&(v, uv)| self.mul(self.mul(wx, v), uv) == self.mul(w, uv))
        })
    }

    /// Text dump: a header, one line per generator and one per element with
    /// its state-image tuple.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "states {}", self.degree);
        let _ = writeln!(out, "size {}", self.size());
        match self.identity {
            Some(e) => {
                let _ = writeln!(out, "identity {e}");
            }
            None => out.push_str("identity none\n"),
        }
        for (c, g) in self.symbols.iter().zip(&self.generators) {
            let _ = writeln!(out, "generator {c} {g}");
        }
        for x in self.elements() {
            let img: Vec<String> = self.image(x).iter().map(u32::to_string).collect();
            let _ = writeln!(out, "element {x} ({})", img.join(","));
        }
        out
    }
}
