//! AT&T text format for acceptors and symbol tables.
//!
//! Acceptor arcs are `src\tdst\tsym`, final states are bare ids, and the
//! source of the first arc is the start state. A file with no arcs has
//! start state 0. Symbol tables map `<eps>` to 0 and the alphabet symbols,
//! in alphabet order, to 1, 2, ...

use std::collections::HashMap;
use std::fmt::Write;

use crate::alphabet::{Alphabet, CANONICAL};
use crate::automaton::{Dfa, Nfa};
use crate::error::{Error, Result};

pub const EPSILON: &str = "<eps>";

impl Dfa {
    /// Serializes the machine. Arcs are listed by source state, then symbol.
    pub fn to_att(&self) -> String {
        let mut out = String::new();
        let k = self.alphabet().len();
        // Start state first so that the first arc names it.
        let order: Vec<u32> = std::iter::once(self.start())
            .chain((0..self.num_states() as u32).filter(|&q| q != self.start()))
            .collect();
        for &q in &order {
            for s in 0..k {
                if let Some(t) = self.next(q, s) {
                    writeln!(out, "{q}\t{t}\t{}", self.alphabet().symbol(s)).unwrap();
                }
            }
        }
        for q in self.finals() {
            writeln!(out, "{q}").unwrap();
        }
        out
    }
}

pub fn symbol_table(alphabet: &Alphabet) -> String {
    let mut out = format!("{EPSILON}\t0\n");
    for (i, c) in alphabet.symbols().iter().enumerate() {
        writeln!(out, "{c}\t{}", i + 1).unwrap();
    }
    out
}

pub fn parse_symbol_table(text: &str) -> Result<Alphabet> {
    let mut entries: Vec<(u32, char)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Att {
            line: i + 1,
            msg: msg.to_string(),
        };
        let (sym, id) = line.split_once('\t').ok_or_else(|| err("expected symbol<TAB>id"))?;
        let id: u32 = id.trim().parse().map_err(|_| err("bad symbol id"))?;
        if id == 0 {
            continue;
        }
        let mut chars = sym.chars();
        let c = chars.next().ok_or_else(|| err("empty symbol"))?;
        if chars.next().is_some() {
            return Err(err("symbols must be single characters"));
        }
        entries.push((id, c));
    }
    entries.sort_unstable();
    Alphabet::new(entries.into_iter().map(|(_, c)| c))
}

/// An acceptor read from AT&T text, possibly nondeterministic.
#[derive(Debug, Clone)]
pub struct AttAcceptor {
    pub nfa: Nfa,
}

impl AttAcceptor {
    pub fn to_dfa(&self) -> Dfa {
        self.nfa.to_dfa()
    }
}

/// Reads an acceptor. When `alphabet` is `None` it is inferred from the
/// arc labels, ordered by the canonical benchmark sequence where possible.
/// Four-column lines are accepted when input and output labels agree.
pub fn read_att_acceptor(text: &str, alphabet: Option<&Alphabet>) -> Result<AttAcceptor> {
    struct Arc {
        src: u32,
        dst: u32,
        sym: Option<char>,
    }
    let mut arcs: Vec<Arc> = Vec::new();
    let mut finals: Vec<u32> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: String| Error::Att { line: i + 1, msg };
        let fields: Vec<&str> = line.split('\t').collect();
        let state = |f: &str| -> Result<u32> {
            f.trim()
                .parse()
                .map_err(|_| err(format!("bad state id {f:?}")))
        };
        let label = |f: &str| -> Result<Option<char>> {
            if f == EPSILON {
                return Ok(None);
            }
            let mut cs = f.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) => Ok(Some(c)),
                _ => Err(err(format!("bad symbol {f:?}"))),
            }
        };
        match fields.len() {
            1 | 2 => finals.push(state(fields[0])?),
            3 => arcs.push(Arc {
                src: state(fields[0])?,
                dst: state(fields[1])?,
                sym: label(fields[2])?,
            }),
            4 | 5 => {
                if fields[2] != fields[3] {
                    return Err(err("transducer arc in acceptor file".into()));
                }
                arcs.push(Arc {
                    src: state(fields[0])?,
                    dst: state(fields[1])?,
                    sym: label(fields[2])?,
                })
            }
            n => return Err(err(format!("unexpected {n} fields"))),
        }
    }
    let alphabet = match alphabet {
        Some(a) => a.clone(),
        None => {
            let mut syms: Vec<char> = arcs.iter().filter_map(|a| a.sym).collect();
            let rank: HashMap<char, usize> = CANONICAL.chars().enumerate().map(|(i, c)| (c, i)).collect();
            syms.sort_by_key(|c| (rank.get(c).copied().unwrap_or(usize::MAX), *c));
            syms.dedup();
            Alphabet::new(syms)?
        }
    };
    let n = arcs
        .iter()
        .flat_map(|a| [a.src, a.dst])
        .chain(finals.iter().copied())
        .max()
        .map_or(1, |m| m as usize + 1);
    let mut nfa = Nfa::new(alphabet.clone());
    for _ in 0..n {
        nfa.add_state();
    }
    nfa.add_start(arcs.first().map_or(0, |a| a.src));
    for f in finals {
        nfa.set_final(f, true);
    }
    for a in arcs {
        match a.sym {
            None => nfa.add_epsilon(a.src, a.dst),
            Some(c) => {
                let s = alphabet.index_of(c).ok_or(Error::UnknownSymbol(c))?;
                nfa.add_arc(a.src, s, a.dst);
            }
        }
    }
    Ok(AttAcceptor { nfa })
}
