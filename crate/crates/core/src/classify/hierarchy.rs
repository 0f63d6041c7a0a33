use std::fmt;

use serde::{Deserialize, Serialize};

use super::ClassLabel;

/// Proper-inclusion graph on the sixteen classes. An edge `X -> Y` means
/// `Y ⊊ X`.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    edges: Vec<(ClassLabel, ClassLabel)>,
    /// `above[y][x]`: `x` is a strict superclass of `y`.
    above: [[bool; 16]; 16],
}

impl Default for Hierarchy {
    fn default() -> Self {
        Hierarchy::new()
    }
}

impl Hierarchy {
    pub fn new() -> Self {
        use ClassLabel::*;
        let edges = vec![
            (Reg, Zp),
            (Reg, SF),
            (SF, TPLT),
            (TPLT, PLT),
            (TPLT, TLTT),
            (PLT, LTT),
            (PLT, PT),
            (TLTT, LTT),
            (TLTT, TLT),
            (LTT, LT),
            (TLT, LT),
            (TLT, TSL),
            (TLT, TcoSL),
            (LT, SL),
            (LT, CoSL),
            (PT, SP),
            (PT, CoSP),
            (TSL, SL),
            (TcoSL, CoSL),
        ];
        let mut above = [[false; 16]; 16];
        for &(x, y) in &edges {
            above[y.index()][x.index()] = true;
        }
        // Transitive closure; 16 nodes.
        for k in 0..16 {
            for i in 0..16 {
                if above[i][k] {
                    for j in 0..16 {
                        if above[k][j] {
                            above[i][j] = true;
                        }
                    }
                }
            }
        }
        Hierarchy { edges, above }
    }

    pub fn edges(&self) -> &[(ClassLabel, ClassLabel)] {
        &self.edges
    }

    /// Whether `sup ⊋ sub`.
    pub fn is_strict_superclass(&self, sup: ClassLabel, sub: ClassLabel) -> bool {
        self.above[sub.index()][sup.index()]
    }

    pub fn superclasses(&self, c: ClassLabel) -> Vec<ClassLabel> {
        ClassLabel::ALL
            .into_iter()
            .filter(|&x| self.is_strict_superclass(x, c))
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        (0..16).all(|i| !self.above[i][i])
    }

    pub fn comparable(&self, a: ClassLabel, b: ClassLabel) -> bool {
        a == b || self.is_strict_superclass(a, b) || self.is_strict_superclass(b, a)
    }
}

/// Membership of one language in each class, indexed by [`ClassLabel::ALL`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MembershipVector(pub [bool; 16]);

impl MembershipVector {
    pub fn get(&self, c: ClassLabel) -> bool {
        self.0[c.index()]
    }

    pub fn set(&mut self, c: ClassLabel, v: bool) {
        self.0[c.index()] = v;
    }

    /// The vector of ∅ and Σ*: every class but Zp.
    pub fn trivial() -> Self {
        let mut v = MembershipVector([true; 16]);
        v.set(ClassLabel::Zp, false);
        v
    }

    pub fn members(&self) -> impl Iterator<Item = ClassLabel> + '_ {
        ClassLabel::ALL.into_iter().filter(|&c| self.get(c))
    }

    /// Membership in a class implies membership in all its superclasses.
    pub fn is_upward_closed(&self, h: &Hierarchy) -> bool {
        h.edges().iter().all(|&(x, y)| !self.get(y) || self.get(x))
    }
}

impl fmt::Display for MembershipVector {
    /// Sixteen `0`/`1` flags separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// The class `X` the language represents: `X` holds and every other class
/// that holds is a strict superclass of `X`. The trivial languages
/// represent SL.
pub fn representative_of(v: &MembershipVector, h: &Hierarchy) -> Option<ClassLabel> {
    if *v == MembershipVector::trivial() {
        return Some(ClassLabel::SL);
    }
    v.members()
        .find(|&x| v.members().all(|y| y == x || h.is_strict_superclass(y, x)))
}
