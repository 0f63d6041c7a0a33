use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// Immediately followed by (on the tier, for tier literals).
    Succ,
    /// Followed somewhere later by.
    Prec,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiteralKind {
    Substring,
    Subsequence,
    TierSubstring,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub symbols: Vec<char>,
    /// `joints[i]` links `symbols[i]` and `symbols[i + 1]`.
    pub joints: Vec<Relation>,
    pub tier: Option<Vec<char>>,
    pub anchor_start: bool,
    pub anchor_end: bool,
}

impl Literal {
    fn chain(w: &str, rel: Relation) -> Self {
        let symbols: Vec<char> = w.chars().collect();
        let joints = vec![rel; symbols.len().saturating_sub(1)];
        Literal {
            symbols,
            joints,
            tier: None,
            anchor_start: false,
            anchor_end: false,
        }
    }

    pub fn substring(w: &str) -> Self {
        Literal::chain(w, Relation::Succ)
    }

    pub fn subsequence(w: &str) -> Self {
        Literal::chain(w, Relation::Prec)
    }

    /// Substring `w` on the tier `tier`.
    pub fn tier_substring(w: &str, tier: &str) -> Self {
        Literal {
            tier: Some(canonical_tier(tier)),
            ..Literal::chain(w, Relation::Succ)
        }
    }

    pub fn with_tier(mut self, tier: &str) -> Self {
        self.tier = Some(canonical_tier(tier));
        self
    }

    pub fn anchored(mut self, start: bool, end: bool) -> Self {
        self.anchor_start = start;
        self.anchor_end = end;
        self
    }

    pub fn kind(&self) -> LiteralKind {
        let all_succ = self.joints.iter().all(|&j| j == Relation::Succ);
        let all_prec = self.joints.iter().all(|&j| j == Relation::Prec);
        match (self.tier.is_some(), all_succ, all_prec) {
            (false, true, _) => LiteralKind::Substring,
            (true, true, _) => LiteralKind::TierSubstring,
            (false, false, true) => LiteralKind::Subsequence,
            _ => LiteralKind::Mixed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.symbols.is_empty() {
            return Err(Error::EmptyLiteral);
        }
        if self.joints.len() + 1 != self.symbols.len() {
            return Err(Error::Param("literal joints do not match its symbols".into()));
        }
        if let Some(tier) = &self.tier {
            if let Some(&c) = self.symbols.iter().find(|c| !tier.contains(c)) {
                return Err(Error::SymbolOffTier(c));
            }
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.symbols.len()
    }
}

/// Tier symbol lists are kept sorted and deduplicated so equal tiers
/// compare equal.
fn canonical_tier(tier: &str) -> Vec<char> {
    let mut t: Vec<char> = tier.chars().collect();
    t.sort_unstable();
    t.dedup();
    t
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(t) = &self.tier {
            write!(f, "[T:{}]", t.iter().collect::<String>())?;
        }
        if self.anchor_start {
            f.write_str("^")?;
        }
        f.write_str("\"")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 && self.joints[i - 1] == Relation::Prec {
                f.write_str("\" < \"")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("\"")?;
        if self.anchor_end {
            f.write_str("$")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    True,
    False,
    Lit(Literal),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    /// At least `n` occurrences, counted by start position.
    AtLeast(usize, Literal),
    /// Count of a symbol congruent to `residue` modulo `modulus`.
    ModCount { symbol: char, modulus: u32, residue: u32 },
    Concat(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn lit(l: Literal) -> Self {
        Expr::Lit(l)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Self {
        Expr::Not(Box::new(e))
    }

    pub fn implies(a: Expr, b: Expr) -> Self {
        Expr::Implies(Box::new(a), Box::new(b))
    }

    /// Conjunction of negative literals.
    pub fn is_cnl(&self) -> bool {
        let neg_lit = |e: &Expr| matches!(e, Expr::Not(inner) if matches!(**inner, Expr::Lit(_)));
        match self {
            Expr::And(es) => !es.is_empty() && es.iter().all(neg_lit),
            e => neg_lit(e),
        }
    }

    /// Disjunction of positive literals.
    pub fn is_dpl(&self) -> bool {
        match self {
            Expr::Or(es) => !es.is_empty() && es.iter().all(|e| matches!(e, Expr::Lit(_))),
            Expr::Lit(_) => true,
            _ => false,
        }
    }

    fn literals<'a>(&'a self, out: &mut Vec<&'a Literal>) {
        match self {
            Expr::True | Expr::False | Expr::ModCount { .. } => {}
            Expr::Lit(l) | Expr::AtLeast(_, l) => out.push(l),
            Expr::Not(e) => e.literals(out),
            Expr::And(es) | Expr::Or(es) => es.iter().for_each(|e| e.literals(out)),
            Expr::Implies(a, b) | Expr::Concat(a, b) => {
                a.literals(out);
                b.literals(out);
            }
        }
    }

    /// The single tier shared by every tier literal, if any.
    pub fn tier(&self) -> Result<Option<Vec<char>>> {
        let mut lits = Vec::new();
        self.literals(&mut lits);
        let mut tier: Option<&Vec<char>> = None;
        for l in lits {
            if let Some(t) = &l.tier {
                match tier {
                    Some(prev) if prev != t => {
                        return Err(Error::MixedTiers(
                            prev.iter().collect(),
                            t.iter().collect(),
                        ))
                    }
                    _ => tier = Some(t),
                }
            }
        }
        Ok(tier.cloned())
    }

    /// Longest literal width.
    pub fn width(&self) -> usize {
        let mut lits = Vec::new();
        self.literals(&mut lits);
        lits.iter().map(|l| l.width()).max().unwrap_or(0)
    }

    /// Negation normal form: negations sit directly on literals,
    /// implications are expanded. Counting and concatenation nodes are opaque.
    pub fn nnf(&self) -> Expr {
        self.nnf_inner(false)
    }

    fn nnf_inner(&self, negate: bool) -> Expr {
        match (self, negate) {
            (Expr::True, false) | (Expr::False, true) => Expr::True,
            (Expr::True, true) | (Expr::False, false) => Expr::False,
            (Expr::Not(e), n) => e.nnf_inner(!n),
            (Expr::And(es), false) => Expr::And(es.iter().map(|e| e.nnf_inner(false)).collect()),
            (Expr::And(es), true) => Expr::Or(es.iter().map(|e| e.nnf_inner(true)).collect()),
            (Expr::Or(es), false) => Expr::Or(es.iter().map(|e| e.nnf_inner(false)).collect()),
            (Expr::Or(es), true) => Expr::And(es.iter().map(|e| e.nnf_inner(true)).collect()),
            (Expr::Implies(a, b), false) => Expr::Or(vec![a.nnf_inner(true), b.nnf_inner(false)]),
            (Expr::Implies(a, b), true) => Expr::And(vec![a.nnf_inner(false), b.nnf_inner(true)]),
            (Expr::Concat(a, b), n) => {
                let c = Expr::Concat(Box::new(a.nnf()), Box::new(b.nnf()));
                if n {
                    Expr::not(c)
                } else {
                    c
                }
            }
            (e, false) => e.clone(),
            (e, true) => Expr::not(e.clone()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, es: &[Expr], op: &str| -> fmt::Result {
            f.write_str("(")?;
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str(")")
        };
        match self {
            Expr::True => f.write_str("true"),
            Expr::False => f.write_str("false"),
            Expr::Lit(l) => write!(f, "{l}"),
            Expr::Not(e) => write!(f, "!{e}"),
            Expr::And(es) if es.is_empty() => f.write_str("true"),
            Expr::Or(es) if es.is_empty() => f.write_str("false"),
            Expr::And(es) => join(f, es, "&"),
            Expr::Or(es) => join(f, es, "|"),
            Expr::Implies(a, b) => write!(f, "({a} -> {b})"),
            Expr::AtLeast(n, l) => write!(f, "atleast({n}, {l})"),
            Expr::ModCount {
                symbol,
                modulus,
                residue,
            } => write!(f, "mod(\"{symbol}\", {modulus}, {residue})"),
            Expr::Concat(a, b) => write!(f, "concat({a}, {b})"),
        }
    }
}
