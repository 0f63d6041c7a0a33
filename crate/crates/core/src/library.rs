//! A curated set of benchmark patterns: two expressions per class for each
//! of the alphabet sizes 4, 16 and 64.
//!
//! Tier patterns read on the first τ symbols of the alphabet, with τ = 3
//! for Σ4, τ ∈ {4, 7} for Σ16 and τ ∈ {6, 11} for Σ64; each tier size gets
//! both templates.

use crate::alphabet::{Alphabet, CANONICAL};
use crate::automaton::Dfa;
use crate::classify::ClassLabel;
use crate::error::Result;
use crate::expr::{compile_expr, parse_expr, LanguageSpec};

pub const ALPHABET_SIZES: [u8; 3] = [4, 16, 64];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub spec: LanguageSpec,
    pub expr: String,
}

impl Pattern {
    pub fn name(&self) -> String {
        self.spec.render()
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::prefix(self.spec.sigma as usize).expect("library alphabet size")
    }

    pub fn compile(&self) -> Result<Dfa> {
        compile_expr(&parse_expr(&self.expr)?, &self.alphabet())
    }
}

/// (class, k, t, template) with `{T}` standing for the tier symbols.
const TEMPLATES: &[(ClassLabel, u32, u32, &str)] = &[
    (ClassLabel::SL, 2, 0, r#"!"aa""#),
    (ClassLabel::SL, 3, 0, r#"!"abc""#),
    (ClassLabel::CoSL, 2, 0, r#""aa""#),
    (ClassLabel::CoSL, 3, 0, r#""abc""#),
    (ClassLabel::TSL, 2, 0, r#"![T:{T}]"aa""#),
    (ClassLabel::TSL, 3, 0, r#"![T:{T}]"abc""#),
    (ClassLabel::TcoSL, 2, 0, r#"[T:{T}]"aa""#),
    (ClassLabel::TcoSL, 3, 0, r#"[T:{T}]"abc""#),
    (ClassLabel::SP, 3, 0, r#"!("a" < "b" < "c")"#),
    (ClassLabel::SP, 4, 0, r#"!("a" < "b" < "c" < "d")"#),
    (ClassLabel::CoSP, 3, 0, r#""a" < "b" < "c""#),
    (ClassLabel::CoSP, 4, 0, r#""a" < "b" < "c" < "d""#),
    (ClassLabel::LT, 2, 0, r#""aa" -> "ab""#),
    (ClassLabel::LT, 2, 0, r#""ab" -> "ba""#),
    (ClassLabel::TLT, 2, 0, r#"[T:{T}]"aa" -> [T:{T}]"ab""#),
    (ClassLabel::TLT, 2, 0, r#"[T:{T}]"ab" -> [T:{T}]"ba""#),
    (ClassLabel::PT, 3, 0, r#"("a" < "b") -> ("b" < "c" < "a")"#),
    (ClassLabel::PT, 3, 0, r#"("a" < "b") & !("b" < "a" < "c")"#),
    (ClassLabel::PLT, 2, 0, r#""aa" < "ab""#),
    (ClassLabel::PLT, 2, 0, r#""ab" < "ba""#),
    (ClassLabel::TPLT, 2, 0, r#"[T:{T}]"aa" < "ab""#),
    (ClassLabel::TPLT, 2, 0, r#"[T:{T}]"ab" < "ba""#),
    (ClassLabel::LTT, 2, 2, r#"atleast(2, "aa")"#),
    (ClassLabel::LTT, 2, 3, r#"atleast(3, "ab")"#),
    (ClassLabel::TLTT, 2, 2, r#"atleast(2, [T:{T}]"aa")"#),
    (ClassLabel::TLTT, 2, 3, r#"atleast(3, [T:{T}]"ab")"#),
    (ClassLabel::SF, 0, 0, r#"concat("a"$, !"bc")"#),
    (ClassLabel::SF, 0, 0, r#"concat("ab"$, !"ca")"#),
    (ClassLabel::Zp, 0, 0, r#"mod("a", 2, 0)"#),
    (ClassLabel::Zp, 0, 0, r#"mod("b", 3, 1)"#),
    (ClassLabel::Reg, 0, 0, r#"mod("a", 2, 0) & "b""#),
    (ClassLabel::Reg, 0, 0, r#"mod("a", 2, 0) | "bb""#),
];

pub fn tier_sizes(sigma: u8) -> &'static [u8] {
    match sigma {
        4 => &[3],
        16 => &[4, 7],
        _ => &[6, 11],
    }
}

/// All library patterns, ordered by alphabet size, class and identifier.
pub fn patterns() -> Vec<Pattern> {
    let mut out = Vec::new();
    for sigma in ALPHABET_SIZES {
        let mut next_id = [0u32; 16];
        let untiered = [sigma];
        for &(class, k, t, template) in TEMPLATES {
            let taus = if class.has_tier() { tier_sizes(sigma) } else { &untiered[..] };
            for &tau in taus {
                let i = next_id[class.index()];
                next_id[class.index()] += 1;
                out.push(Pattern {
                    spec: LanguageSpec {
                        sigma,
                        tau,
                        class,
                        k,
                        t,
                        i,
                    },
                    expr: template.replace("{T}", &CANONICAL[..tau as usize]),
                });
            }
        }
    }
    out
}

pub fn find(name: &str) -> Option<Pattern> {
    patterns().into_iter().find(|p| p.name() == name)
}
