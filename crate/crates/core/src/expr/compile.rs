use crate::alphabet::Alphabet;
use crate::automaton::{Dfa, Nfa, NONE};
use crate::error::{Error, Result};
use crate::expr::{Expr, Literal, LiteralKind, Relation};

/// Resolves a literal's tier (if any) against the alphabet as a membership
/// mask over symbol indices.
fn tier_mask(lit: &Literal, alphabet: &Alphabet) -> Result<Option<Vec<bool>>> {
    lit.validate()?;
    for &c in &lit.symbols {
        if !alphabet.contains(c) {
            return Err(Error::UnknownSymbol(c));
        }
    }
    let Some(tier) = &lit.tier else {
        return Ok(None);
    };
    let mut mask = vec![false; alphabet.len()];
    for &c in tier {
        mask[alphabet.index_of(c).ok_or(Error::TierNotSubset(c))?] = true;
    }
    Ok(Some(mask))
}

/// Minimal DFA of the strings containing the literal.
///
/// Precedence joints admit any infix. Successor joints admit nothing
/// between the two symbols, or for tier literals any run of non-tier
/// symbols. Unanchored edges admit any prefix or suffix; anchored edges
/// admit only non-tier symbols (none, without a tier).
pub fn compile_literal(lit: &Literal, alphabet: &Alphabet) -> Result<Dfa> {
    let mask = tier_mask(lit, alphabet)?;
    let off_tier = |s: usize| mask.as_ref().is_some_and(|m| !m[s]);
    let mut nfa = Nfa::new(alphabet.clone());
    let syms = alphabet.encode(&lit.symbols.iter().collect::<String>())?;
    let mut q = nfa.add_state();
    nfa.add_start(q);
    if lit.anchor_start {
        nfa.add_arcs_where(q, q, off_tier);
    } else {
        nfa.add_arcs_where(q, q, |_| true);
    }
    for (i, &s) in syms.iter().enumerate() {
        let t = nfa.add_state();
        nfa.add_arc(q, s, t);
        match lit.joints.get(i) {
            Some(Relation::Prec) => nfa.add_arcs_where(t, t, |_| true),
            Some(Relation::Succ) => nfa.add_arcs_where(t, t, off_tier),
            None if lit.anchor_end => nfa.add_arcs_where(t, t, off_tier),
            None => nfa.add_arcs_where(t, t, |_| true),
        }
        q = t;
    }
    nfa.set_final(q, true);
    Ok(nfa.to_dfa())
}

/// Minimal DFA of the strings with at least `threshold` occurrences of the
/// literal, counting occurrences by start position so overlaps count.
/// Only unanchored substring and tier-substring literals are supported.
pub fn compile_counting(lit: &Literal, threshold: usize, alphabet: &Alphabet) -> Result<Dfa> {
    if threshold < 1 {
        return Err(Error::Threshold(threshold));
    }
    if !matches!(lit.kind(), LiteralKind::Substring | LiteralKind::TierSubstring)
        || lit.anchor_start
        || lit.anchor_end
    {
        return Err(Error::CountingUnsupported);
    }
    let mask = tier_mask(lit, alphabet)?;
    let w = alphabet.encode(&lit.symbols.iter().collect::<String>())?;
    let m = w.len();
    let k = alphabet.len();
    // Longest suffix of `seq` that is a proper-or-full prefix of w.
    let overlap = |seq: &[usize]| -> usize {
        (0..=seq.len().min(m))
            .rev()
            .find(|&l| seq[seq.len() - l..] == w[..l])
            .unwrap_or(0)
    };
    // State (matched, count) with matched < m and count <= threshold.
    let id = |matched: usize, count: usize| (count * m + matched) as u32;
    let n = (threshold + 1) * m;
    let mut trans = vec![NONE; n * k];
    let mut finals = vec![false; n];
    for count in 0..=threshold {
        for matched in 0..m {
            let q = id(matched, count) as usize;
            finals[q] = count == threshold;
            for s in 0..k {
                let t = if count == threshold || mask.as_ref().is_some_and(|mk| !mk[s]) {
                    q as u32
                } else {
                    let mut seq = w[..matched].to_vec();
                    seq.push(s);
                    let l = overlap(&seq);
                    if l == m {
                        let border = overlap(&w[1..]);
                        id(border, count + 1)
                    } else {
                        id(l, count)
                    }
                };
                trans[q * k + s] = t;
            }
        }
    }
    Ok(Dfa::from_parts(alphabet.clone(), id(0, 0), finals, trans).minimize())
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Strings whose number of `symbol` is congruent to `residue` mod `modulus`.
pub fn compile_modcount(symbol: char, modulus: u32, residue: u32, alphabet: &Alphabet) -> Result<Dfa> {
    if !is_prime(modulus) {
        return Err(Error::NotPrime(modulus));
    }
    if residue >= modulus {
        return Err(Error::Residue { residue, modulus });
    }
    let s = alphabet.index_of(symbol).ok_or(Error::UnknownSymbol(symbol))?;
    let k = alphabet.len();
    let p = modulus as usize;
    let mut trans = Vec::with_capacity(p * k);
    for q in 0..p {
        for t in 0..k {
            trans.push(if t == s { ((q + 1) % p) as u32 } else { q as u32 });
        }
    }
    let finals = (0..p).map(|q| q == residue as usize).collect();
    Ok(Dfa::from_parts(alphabet.clone(), 0, finals, trans).minimize())
}

/// Minimal DFA of the expression's Boolean semantics.
pub fn compile_expr(e: &Expr, alphabet: &Alphabet) -> Result<Dfa> {
    e.tier()?;
    compile_rec(e, alphabet)
}

fn compile_rec(e: &Expr, alphabet: &Alphabet) -> Result<Dfa> {
    Ok(match e {
        Expr::True => Dfa::universal(alphabet),
        Expr::False => Dfa::empty(alphabet),
        Expr::Lit(l) => compile_literal(l, alphabet)?,
        Expr::Not(e) => compile_rec(e, alphabet)?.complement(),
        Expr::And(es) => {
            let mut acc = Dfa::universal(alphabet);
            for e in es {
                acc = acc.intersection(&compile_rec(e, alphabet)?)?;
            }
            acc
        }
        Expr::Or(es) => {
            let mut acc = Dfa::empty(alphabet);
            for e in es {
                acc = acc.union(&compile_rec(e, alphabet)?)?;
            }
            acc
        }
        Expr::Implies(a, b) => compile_rec(a, alphabet)?
            .complement()
            .union(&compile_rec(b, alphabet)?)?,
        Expr::AtLeast(n, l) => compile_counting(l, *n, alphabet)?,
        Expr::ModCount {
            symbol,
            modulus,
            residue,
        } => compile_modcount(*symbol, *modulus, *residue, alphabet)?,
        Expr::Concat(a, b) => compile_rec(a, alphabet)?.concat(&compile_rec(b, alphabet)?)?,
    })
}
