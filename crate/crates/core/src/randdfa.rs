//! Random automata and how often they are Strictly Local.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::alphabet::Alphabet;
use crate::automaton::Nfa;
use crate::classify::is_strictly_local;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomDfaParams {
    pub n: usize,
    pub s: usize,
    pub p_e: f64,
    pub p_f: f64,
}

impl RandomDfaParams {
    pub fn new(n: usize, s: usize, p_e: f64, p_f: f64) -> Result<Self> {
        let p = RandomDfaParams { n, s, p_e, p_f };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Param("state count must be at least 1".into()));
        }
        if !(1..=64).contains(&self.s) {
            return Err(Error::AlphabetSize(self.s));
        }
        for (name, p) in [("p_e", self.p_e), ("p_f", self.p_f)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::Param(format!("{name} = {p} is not a probability")));
            }
        }
        Ok(())
    }
}

/// Each state is final with probability `p_f`; each arc `(q, σ, r)` is
/// present with probability `p_e`. State 0 is the start.
pub fn generate_random_automaton<R: Rng>(p: &RandomDfaParams, rng: &mut R) -> Result<Nfa> {
    p.validate()?;
    let mut m = Nfa::new(Alphabet::prefix(p.s)?);
    for _ in 0..p.n {
        let q = m.add_state();
        let fin = rng.random_bool(p.p_f);
        m.set_final(q, fin);
    }
    m.add_start(0);
    for sym in 0..p.s {
        for q in 0..p.n as u32 {
            for r in 0..p.n as u32 {
                if rng.random_bool(p.p_e) {
                    m.add_arc(q, sym, r);
                }
            }
        }
    }
    Ok(m)
}

/// Whether the language of a random automaton is Strictly Local.
pub fn sample_is_sl<R: Rng>(p: &RandomDfaParams, rng: &mut R) -> Result<bool> {
    let m = generate_random_automaton(p, rng)?;
    Ok(is_strictly_local(&m.determinize().minimize().trim()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridCell {
    pub params: RandomDfaParams,
    pub trials: usize,
    pub sl_count: usize,
}

impl GridCell {
    pub fn proportion(&self) -> f64 {
        self.sl_count as f64 / self.trials as f64
    }
}

fn cell_rng(p: &RandomDfaParams, seed: u64) -> ChaCha20Rng {
    let mut h = Sha256::new();
    h.update(b"subreg/randdfa/v1");
    h.update(seed.to_le_bytes());
    h.update((p.n as u64).to_le_bytes());
    h.update((p.s as u64).to_le_bytes());
    h.update(p.p_e.to_bits().to_le_bytes());
    h.update(p.p_f.to_bits().to_le_bytes());
    ChaCha20Rng::from_seed(h.finalize().into())
}

pub fn run_cell(p: &RandomDfaParams, trials: usize, seed: u64) -> Result<GridCell> {
    let mut rng = cell_rng(p, seed);
    let mut sl_count = 0;
    for _ in 0..trials {
        sl_count += usize::from(sample_is_sl(p, &mut rng)?);
    }
    Ok(GridCell {
        params: *p,
        trials,
        sl_count,
    })
}

/// Cells run in parallel; each has its own substream, so results do not
/// depend on the thread count.
pub fn run_grid(cells: &[RandomDfaParams], trials: usize, seed: u64) -> Result<Vec<GridCell>> {
    cells.par_iter().map(|p| run_cell(p, trials, seed)).collect()
}

/// Every combination of the axis values.
pub fn grid(ns: &[usize], ss: &[usize], p_es: &[f64], p_fs: &[f64]) -> Result<Vec<RandomDfaParams>> {
    let mut out = Vec::new();
    for &n in ns {
        for &s in ss {
            for &p_e in p_es {
                for &p_f in p_fs {
                    out.push(RandomDfaParams::new(n, s, p_e, p_f)?);
                }
            }
        }
    }
    Ok(out)
}

/// `n` in 1..=20, `s` in 1..=10, `p_e = p_f = 0.5`.
pub fn fair_grid() -> Vec<RandomDfaParams> {
    let ns: Vec<usize> = (1..=20).collect();
    let ss: Vec<usize> = (1..=10).collect();
    grid(&ns, &ss, &[0.5], &[0.5]).expect("valid axes")
}

pub fn grid_csv(cells: &[GridCell]) -> String {
    let mut out = String::from("n,s,p_e,p_f,trials,sl_count\n");
    for c in cells {
        let p = c.params;
        writeln!(out, "{},{},{},{},{},{}", p.n, p.s, p.p_e, p.p_f, c.trials, c.sl_count).unwrap();
    }
    out
}

/// Parses an integer axis such as `1..=20` or `3,7`.
pub fn parse_count_axis(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::Param(format!("bad axis {text:?}"));
    if let Some((lo, hi)) = text.split_once("..=") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(|v| v.trim().parse().map_err(|_| bad())).collect()
}

/// Parses a probability axis such as `0.1,0.5`.
pub fn parse_prob_axis(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|v| v.trim().parse().map_err(|_| Error::Param(format!("bad axis {text:?}"))))
        .collect()
}
