use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::fst::Fst;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InsDel {
    Insert,
    Delete,
}

/// `{(x, y) | x, y ∈ Σ*, lev(x, y) = 1}` with exactly one path per pair.
///
/// State 0 has not edited yet, state 1 has, and state `2 + c` has just
/// inserted or deleted `c`. From `2 + c` the next copied symbol may not be
/// `c`, which pins every insertion or deletion to the end of its run of
/// identical symbols. Substitutions never map a symbol to itself.
pub fn edit1_transducer(alphabet: &Alphabet) -> Fst {
    let k = alphabet.len();
    let mut t = Fst::new(alphabet.clone(), alphabet.clone());
    let before = t.add_state();
    let after = t.add_state();
    t.set_final(after, true);
    let pinned: Vec<u32> = (0..k)
        .map(|_| {
            let q = t.add_state();
            t.set_final(q, true);
            q
        })
        .collect();
    for a in 0..k {
        t.add_arc(before, Some(a), Some(a), before);
    }
    for a in 0..k {
        for b in 0..k {
            if a != b {
                t.add_arc(before, Some(a), Some(b), after);
            }
        }
    }
    for a in 0..k {
        t.add_arc(before, Some(a), None, pinned[a]);
    }
    for b in 0..k {
        t.add_arc(before, None, Some(b), pinned[b]);
    }
    for a in 0..k {
        t.add_arc(after, Some(a), Some(a), after);
    }
    for (c, &q) in pinned.iter().enumerate() {
        for a in 0..k {
            if a != c {
                t.add_arc(q, Some(a), Some(a), after);
            }
        }
    }
    t
}

/// Insertion or deletion of exactly one occurrence of `sym`.
pub fn insdel_transducer(kind: InsDel, sym: char, alphabet: &Alphabet) -> Result<Fst> {
    let s = alphabet.index_of(sym).ok_or(Error::UnknownSymbol(sym))?;
    let mut t = Fst::new(alphabet.clone(), alphabet.clone());
    let before = t.add_state();
    let after = t.add_state();
    t.set_final(after, true);
    for a in 0..alphabet.len() {
        t.add_arc(before, Some(a), Some(a), before);
        t.add_arc(after, Some(a), Some(a), after);
    }
    match kind {
        InsDel::Insert => t.add_arc(before, None, Some(s), after),
        InsDel::Delete => t.add_arc(before, Some(s), None, after),
    }
    Ok(t)
}

/// Erases non-tier symbols. The output alphabet is the tier, in the input
/// alphabet's order.
pub fn tier_projection(alphabet: &Alphabet, tier: &[char]) -> Result<Fst> {
    let out = alphabet.restrict(tier)?;
    let mut t = Fst::new(alphabet.clone(), out.clone());
    let q = t.add_state();
    t.set_final(q, true);
    for (i, &c) in alphabet.symbols().iter().enumerate() {
        t.add_arc(q, Some(i), out.index_of(c), q);
    }
    Ok(t)
}
