//! Deciders for the sixteen classes and the representative-class
//! assignment.

mod hierarchy;
mod label;

use std::cell::OnceCell;
use std::collections::VecDeque;

use crate::algebra::{complete_minimal, syntactic_semigroup, Identity, LocalPredicate, TransformationSemigroup};
use crate::automaton::Dfa;
use crate::fst::{tier_projection, Direction};

pub use hierarchy::{representative_of, Hierarchy, MembershipVector};
pub use label::ClassLabel;

#[cfg(test)]
mod tests;

/// No two distinct states of the trim minimal DFA can be driven along a
/// common cycle without merging: the graph on pairs `(p, q)`, `p != q`,
/// with an edge for each symbol defined on both and not merging them,
/// is acyclic.
pub fn is_strictly_local(d: &Dfa) -> bool {
    let m = d.minimize();
    let n = m.num_states();
    let k = m.alphabet().len();
    let id = |p: usize, q: usize| p * n + q;
    // Iterative three-colour DFS over off-diagonal pairs.
    let mut colour = vec![0u8; n * n];
    for root in 0..n * n {
        if root / n == root % n || colour[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        colour[root] = 1;
        while let Some(&mut (pair, ref mut s)) = stack.last_mut() {
            if *s == k {
                colour[pair] = 2;
                stack.pop();
                continue;
            }
            let a = *s;
            *s += 1;
            let (p, q) = ((pair / n) as u32, (pair % n) as u32);
            let (Some(p2), Some(q2)) = (m.next(p, a), m.next(q, a)) else {
                continue;
            };
            if p2 == q2 {
                continue;
            }
            let next = id(p2 as usize, q2 as usize);
            match colour[next] {
                0 => {
                    colour[next] = 1;
                    stack.push((next, 0));
                }
                1 => return false,
                _ => {}
            }
        }
    }
    true
}

/// `L` is closed under deleting symbols. The downward closure is read off
/// the automaton with an ε-arc beside every symbol arc and run in product
/// with `d` itself; a reachable pair that the closure accepts and `d`
/// rejects is a witness.
pub fn is_subsequence_closed(d: &Dfa) -> bool {
    let c = d.minimize().complete();
    let n = c.num_states();
    let k = c.alphabet().len();
    let mut seen = vec![false; n * n];
    let start = c.start() as usize;
    let mut queue = VecDeque::from([(start, start)]);
    seen[start * n + start] = true;
    while let Some((p, q)) = queue.pop_front() {
        if c.is_final(p as u32) && !c.is_final(q as u32) {
            return false;
        }
        for a in 0..k {
            let p2 = c.next(p as u32, a).unwrap() as usize;
            let q2 = c.next(q as u32, a).unwrap() as usize;
            for (x, y) in [(p2, q2), (p2, q)] {
                if !seen[x * n + y] {
                    seen[x * n + y] = true;
                    queue.push_back((x, y));
                }
            }
        }
    }
    true
}

/// Symbols that can be inserted or deleted anywhere without changing
/// membership: exactly the symbols acting as the identity on the complete
/// minimal DFA.
pub fn neutral_symbols(d: &Dfa) -> Vec<char> {
    let c = complete_minimal(&d.minimize()).expect("minimized automaton");
    let alphabet = c.alphabet();
    (0..alphabet.len())
        .filter(|&a| (0..c.num_states() as u32).all(|q| c.next(q, a) == Some(q)))
        .map(|a| alphabet.symbol(a))
        .collect()
}

/// Cached intermediate results for deciding many classes of one language.
pub struct Analysis {
    dfa: Dfa,
    semigroup: OnceCell<TransformationSemigroup>,
    tier: OnceCell<Option<Box<Analysis>>>,
}

impl Analysis {
    pub fn new(d: &Dfa) -> Self {
        Analysis {
            dfa: d.minimize(),
            semigroup: OnceCell::new(),
            tier: OnceCell::new(),
        }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn semigroup(&self) -> &TransformationSemigroup {
        self.semigroup
            .get_or_init(|| syntactic_semigroup(&self.dfa).expect("minimized automaton"))
    }

    /// The projection onto the non-neutral symbols, when that tier is a
    /// nonempty proper subset of the alphabet and the language is the
    /// preimage of its projection. `None` means the language is its own
    /// tier projection.
    fn tier(&self) -> Option<&Analysis> {
        self.tier
            .get_or_init(|| {
                let alphabet = self.dfa.alphabet();
                let neutral = neutral_symbols(&self.dfa);
                if neutral.is_empty() || neutral.len() == alphabet.len() {
                    return None;
                }
                let tier: Vec<char> = alphabet
                    .symbols()
                    .iter()
                    .copied()
                    .filter(|c| !neutral.contains(c))
                    .collect();
                let pi = tier_projection(alphabet, &tier).expect("tier within alphabet");
                let projected = pi.apply(&self.dfa, Direction::Image).expect("matching alphabet");
                let back = pi.apply(&projected, Direction::Preimage).expect("matching alphabet");
                assert!(
                    back.language_equal(&self.dfa).expect("same alphabet"),
                    "language is not the preimage of its projection"
                );
                Some(Box::new(Analysis::new(&projected)))
            })
            .as_deref()
    }

    /// Symbols on the inferred tier, in alphabet order.
    pub fn tier_symbols(&self) -> Vec<char> {
        match self.tier() {
            Some(t) => t.dfa.alphabet().symbols().to_vec(),
            None => self.dfa.alphabet().symbols().to_vec(),
        }
    }

    fn on_tier(&self, f: impl Fn(&Analysis) -> bool) -> bool {
        match self.tier() {
            Some(t) => f(t),
            None => f(self),
        }
    }

    fn sl(&self) -> bool {
        is_strictly_local(&self.dfa)
    }

    fn co_sl(&self) -> bool {
        is_strictly_local(&self.dfa.complement())
    }

    fn aperiodic(&self) -> bool {
        self.semigroup().is_aperiodic()
    }

    fn lt(&self) -> bool {
        self.aperiodic() && self.semigroup().local_submonoid_check(LocalPredicate::Semilattice)
    }

    fn ltt(&self) -> bool {
        self.aperiodic() && self.semigroup().satisfies_identity(Identity::LttBeauquierPin)
    }

    fn plt(&self) -> bool {
        self.aperiodic() && self.semigroup().satisfies_identity(Identity::Knast)
    }

    pub fn decide(&self, label: ClassLabel) -> bool {
        use ClassLabel::*;
        match label {
            SL => self.sl(),
            CoSL => self.co_sl(),
            TSL => self.on_tier(Analysis::sl),
            TcoSL => self.on_tier(Analysis::co_sl),
            SP => is_subsequence_closed(&self.dfa),
            CoSP => is_subsequence_closed(&self.dfa.complement()),
            LT => self.lt(),
            TLT => self.on_tier(Analysis::lt),
            PT => self.aperiodic() && self.semigroup().with_identity().is_j_trivial(),
            PLT => self.plt(),
            TPLT => self.on_tier(Analysis::plt),
            LTT => self.ltt(),
            TLTT => self.on_tier(Analysis::ltt),
            SF => self.aperiodic(),
            Zp => self.semigroup().with_identity().group_order_prime(),
            Reg => true,
        }
    }

    /// All sixteen decisions. ∅ and Σ* get [`MembershipVector::trivial`].
    pub fn membership_vector(&self) -> MembershipVector {
        if self.dfa.is_empty_language() || self.dfa.is_universal() {
            return MembershipVector::trivial();
        }
        let mut v = MembershipVector([false; 16]);
        for c in ClassLabel::ALL {
            v.set(c, self.decide(c));
        }
        v
    }
}

pub fn decide_class(label: ClassLabel, d: &Dfa) -> bool {
    Analysis::new(d).decide(label)
}

pub fn membership_vector(d: &Dfa) -> MembershipVector {
    Analysis::new(d).membership_vector()
}

/// The membership vector and representative class of `L(d)`.
pub fn classify(d: &Dfa) -> (MembershipVector, Option<ClassLabel>) {
    let v = membership_vector(d);
    (v, representative_of(&v, &Hierarchy::new()))
}
