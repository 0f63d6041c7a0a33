use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// The canonical 64-symbol sequence benchmark alphabets are drawn from.
pub const CANONICAL: &str =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZáàǎéèěóòǒúùǔ";

/// An ordered set of single-character symbols.
///
/// Symbol order matters: automata store transitions indexed by symbol
/// position, canonical state numbering breaks ties in symbol order, and
/// two alphabets are equal only if they list the same symbols in the same
/// order.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, usize>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if index.insert(c, i).is_some() {
                return Err(Error::DuplicateSymbol(c));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// The first `n` symbols of [`CANONICAL`].
    pub fn prefix(n: usize) -> Result<Self> {
        if !(1..=64).contains(&n) {
            return Err(Error::AlphabetSize(n));
        }
        Alphabet::new(CANONICAL.chars().take(n))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> char {
        self.symbols[i]
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.index.get(&c).copied()
    }

    pub fn contains(&self, c: char) -> bool {
        self.index.contains_key(&c)
    }

    /// Maps a string to symbol indices, failing on the first foreign symbol.
    pub fn encode(&self, w: &str) -> Result<Vec<usize>> {
        w.chars()
            .map(|c| self.index_of(c).ok_or(Error::UnknownSymbol(c)))
            .collect()
    }

    pub fn decode(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.symbols[i]).collect()
    }

    /// The sub-alphabet of the given symbols, kept in this alphabet's order.
    pub fn restrict(&self, keep: &[char]) -> Result<Alphabet> {
        for &c in keep {
            if !self.contains(c) {
                return Err(Error::TierNotSubset(c));
            }
        }
        Alphabet::new(self.symbols.iter().copied().filter(|c| keep.contains(c)))
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.symbols.iter().all(|&c| other.contains(c))
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl std::hash::Hash for Alphabet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.symbols.hash(state);
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.symbols.iter().collect::<String>())
    }
}
