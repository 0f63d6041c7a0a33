//! Factor-literal expressions and their compilation to automata.
//!
//! A [`Literal`] is a chain of symbols joined by successor (adjacent) or
//! precedence (anywhere later) links, optionally read on a tier of salient
//! symbols and optionally anchored to the word edges. An [`Expr`] combines
//! literals with Boolean connectives, plus threshold counting,
//! modular counting and concatenation for the classes above the
//! propositional level.
//!
//! The text syntax accepted by [`parse_expr`]:
//!
//! ```text
//! expr    := or ('->' expr)?
//! or      := and ('|' and)*
//! and     := unary ('&' unary)*
//! unary   := '!' unary | '(' expr ')' | 'true' | 'false' | literal
//!          | 'atleast' '(' INT ',' literal ')'
//!          | 'mod' '(' STRING ',' INT ',' INT ')'
//!          | 'concat' '(' expr ',' expr ')'
//! literal := ('[T:' SYMBOLS ']')? '^'? STRING (('<.' | '<') STRING)* '$'?
//! ```
//!
//! Symbols inside one quoted string are adjacent; `<.` also joins
//! adjacent symbols and `<` joins a symbol to any later one. So `"aa"` is
//! the substring `aa`, `"a" < "a"` the subsequence `aa`, and
//! `"aa" < "ab"` an `aa` somewhere before an `ab`. `#` starts a comment.

mod ast;
mod compile;
mod name;
mod parse;

pub use ast::{Expr, Literal, LiteralKind, Relation};
pub use compile::{compile_counting, compile_expr, compile_literal, compile_modcount};
pub use name::LanguageSpec;
pub use parse::parse_expr;
