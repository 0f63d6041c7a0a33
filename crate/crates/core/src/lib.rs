pub mod algebra;
pub mod alphabet;
pub mod automaton;
pub mod classify;
pub mod datagen;
pub mod error;
pub mod expr;
pub mod fst;
pub mod library;
pub mod randdfa;
pub mod scoring;
#[cfg(test)]
mod testutil;

pub use alphabet::Alphabet;
pub use automaton::{BoolOp, Dfa, Nfa};
pub use classify::ClassLabel;
pub use error::{Error, Result};
pub use expr::{compile_expr, parse_expr, Expr, LanguageSpec, Literal};
pub use fst::{Direction, Fst};
