use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::automaton::Dfa;
use crate::datagen::{DatasetBundle, Record, SizeClass, Split, SplitKind};

/// Edit distance by the textbook dynamic program over characters.
pub fn levenshtein(x: &str, y: &str) -> usize {
    let x: Vec<char> = x.chars().collect();
    let y: Vec<char> = y.chars().collect();
    let mut prev: Vec<usize> = (0..=y.len()).collect();
    for i in 1..=x.len() {
        let mut cur = vec![i; y.len() + 1];
        for j in 1..=y.len() {
            let sub = prev[j - 1] + usize::from(x[i - 1] != y[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        prev = cur;
    }
    prev[y.len()]
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    /// One entry per violation, naming the file and line where possible.
    pub failures: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&'static str, &String)> {
        self.checks.iter().flat_map(|c| c.failures.iter().map(move |f| (c.name, f)))
    }
}

const SHOWN: usize = 5;

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{status}\t{}", c.name)?;
            for msg in c.failures.iter().take(SHOWN) {
                writeln!(f, "\t{msg}")?;
            }
            if c.failures.len() > SHOWN {
                writeln!(f, "\t... {} more", c.failures.len() - SHOWN)?;
            }
        }
        Ok(())
    }
}

fn at(s: &Split, index: usize) -> String {
    format!("{}:{}", s.name(), index + 1)
}

/// Re-checks every bundle invariant against `d`.
pub fn verify_bundle(b: &DatasetBundle, d: &Dfa) -> Report {
    let checks = vec![
        Check { name: "manifest", failures: manifest(b) },
        Check { name: "balance", failures: balance(b) },
        Check { name: "lengths", failures: lengths(b) },
        Check { name: "membership", failures: membership(b, d) },
        Check { name: "train-dev-disjoint", failures: train_dev(b) },
        Check { name: "test-disjoint", failures: test_disjoint(b) },
        Check { name: "random-unique", failures: random_unique(b) },
        Check { name: "pairs", failures: pairs(b) },
        Check { name: "pairs-unique", failures: pairs_unique(b) },
        Check { name: "nesting", failures: nesting(b) },
    ];
    Report { checks }
}

fn manifest(b: &DatasetBundle) -> Vec<String> {
    let mut out = Vec::new();
    for kind in SplitKind::ALL {
        for size in SizeClass::ALL {
            let name = Split::file_name(kind, size);
            let present = b.split(kind, size).is_some();
            match (present, b.manifest.files.contains_key(&name)) {
                (true, false) => out.push(format!("{name}: not listed in manifest")),
                (false, true) => out.push(format!("{name}: listed in manifest but missing")),
                (false, false) => out.push(format!("{name}: missing")),
                (true, true) => {}
            }
        }
    }
    for s in &b.splits {
        let Some(e) = b.manifest.files.get(&s.name()) else {
            continue;
        };
        let sha = s.sha256();
        if e.sha256 != sha {
            out.push(format!("{}: checksum {} does not match manifest {}", s.name(), sha, e.sha256));
        }
        if (e.records, e.positives, e.negatives) != (s.records.len(), s.positives(), s.negatives()) {
            out.push(format!("{}: record counts do not match manifest", s.name()));
        }
    }
    out
}

fn balance(b: &DatasetBundle) -> Vec<String> {
    b.splits
        .iter()
        .filter(|s| s.positives() != s.negatives())
        .map(|s| format!("{}: {} positives, {} negatives", s.name(), s.positives(), s.negatives()))
        .collect()
}

fn anchor_of<'a>(b: &DatasetBundle, pos: &'a Record, neg: &'a Record) -> &'a Record {
    if b.manifest.adversarial_anchor.label() {
        pos
    } else {
        neg
    }
}

fn lengths(b: &DatasetBundle) -> Vec<String> {
    let mut out = Vec::new();
    for s in &b.splits {
        let want = s.kind.quota(b.manifest.large) / s.size.divisor();
        let range = s.kind.lengths();
        let mut counts: HashMap<(usize, bool), usize> = HashMap::new();
        if s.kind.is_adversarial() {
            for (i, (pos, neg)) in s.pairs().enumerate() {
                let len = anchor_of(b, pos, neg).len();
                if !range.contains(&len) {
                    out.push(format!("{}: anchor length {len} out of range", at(s, 2 * i)));
                }
                *counts.entry((len, true)).or_default() += 1;
            }
            for len in range.clone() {
                let n = counts.get(&(len, true)).copied().unwrap_or(0);
                if n != want {
                    out.push(format!("{}: {n} pairs with anchor length {len}, expected {want}", s.name()));
                }
            }
        } else {
            for (i, r) in s.records.iter().enumerate() {
                if !range.contains(&r.len()) {
                    out.push(format!("{}: length {} out of range", at(s, i), r.len()));
                }
                *counts.entry((r.len(), r.label)).or_default() += 1;
            }
            for len in range.clone() {
                for label in [true, false] {
                    let n = counts.get(&(len, label)).copied().unwrap_or(0);
                    if n != want {
                        out.push(format!(
                            "{}: {n} {} strings of length {len}, expected {want}",
                            s.name(),
                            if label { "positive" } else { "negative" }
                        ));
                    }
                }
            }
        }
    }
    out
}

fn membership(b: &DatasetBundle, d: &Dfa) -> Vec<String> {
    b.splits
        .par_iter()
        .flat_map_iter(|s| {
            s.records.iter().enumerate().filter_map(move |(i, r)| match d.accepts(&r.word) {
                Ok(m) if m == r.label => None,
                Ok(m) => Some(format!(
                    "{}: {:?} is labelled {} but the language {} it",
                    at(s, i),
                    r.word,
                    if r.label { "TRUE" } else { "FALSE" },
                    if m { "accepts" } else { "rejects" }
                )),
                Err(e) => Some(format!("{}: {e}", at(s, i))),
            })
        })
        .collect()
}

fn words<'a>(b: &'a DatasetBundle, kinds: &[SplitKind]) -> HashSet<&'a str> {
    b.splits
        .iter()
        .filter(|s| kinds.contains(&s.kind))
        .flat_map(|s| s.records.iter().map(|r| r.word.as_str()))
        .collect()
}

fn train_dev(b: &DatasetBundle) -> Vec<String> {
    let train = words(b, &[SplitKind::Train]);
    b.splits
        .iter()
        .filter(|s| s.kind == SplitKind::Dev)
        .flat_map(|s| {
            let train = &train;
            s.records
                .iter()
                .enumerate()
                .filter(move |(_, r)| train.contains(r.word.as_str()))
                .map(move |(i, r)| format!("{}: {:?} also occurs in a train split", at(s, i), r.word))
        })
        .collect()
}

fn test_disjoint(b: &DatasetBundle) -> Vec<String> {
    let seen = words(b, &[SplitKind::Train, SplitKind::Dev]);
    b.splits
        .iter()
        .filter(|s| s.kind.is_test())
        .flat_map(|s| {
            let seen = &seen;
            s.records
                .iter()
                .enumerate()
                .filter(move |(_, r)| seen.contains(r.word.as_str()))
                .map(move |(i, r)| format!("{}: {:?} also occurs in train or dev", at(s, i), r.word))
        })
        .collect()
}

fn random_unique(b: &DatasetBundle) -> Vec<String> {
    let mut out = Vec::new();
    for s in b.splits.iter().filter(|s| matches!(s.kind, SplitKind::SR | SplitKind::LR)) {
        let mut first: HashMap<&str, usize> = HashMap::new();
        for (i, r) in s.records.iter().enumerate() {
            if let Some(j) = first.insert(&r.word, i) {
                out.push(format!("{}: {:?} repeats line {}", at(s, i), r.word, j + 1));
            }
        }
    }
    out
}

fn pairs(b: &DatasetBundle) -> Vec<String> {
    let mut out = Vec::new();
    for s in b.splits.iter().filter(|s| s.kind.is_adversarial()) {
        if s.records.len() % 2 != 0 {
            out.push(format!("{}: odd number of records", s.name()));
        }
        for (i, (x, y)) in s.pairs().enumerate() {
            if !x.label || y.label {
                out.push(format!("{}: pair is not ordered positive then negative", at(s, 2 * i)));
            }
            let dist = levenshtein(&x.word, &y.word);
            if dist != 1 {
                out.push(format!("{}: pair has edit distance {dist}", at(s, 2 * i)));
            }
        }
    }
    out
}

fn pairs_unique(b: &DatasetBundle) -> Vec<String> {
    let mut out = Vec::new();
    for s in b.splits.iter().filter(|s| s.kind.is_adversarial()) {
        let mut first: HashMap<(&str, &str), usize> = HashMap::new();
        for (i, (x, y)) in s.pairs().enumerate() {
            if let Some(j) = first.insert((&x.word, &y.word), 2 * i) {
                out.push(format!("{}: pair repeats line {}", at(s, 2 * i), j + 1));
            }
        }
    }
    out
}

fn units(s: &Split) -> HashMap<Vec<&Record>, usize> {
    let width = if s.kind.is_adversarial() { 2 } else { 1 };
    let mut m = HashMap::new();
    for unit in s.records.chunks(width) {
        *m.entry(unit.iter().collect()).or_default() += 1;
    }
    m
}

fn nesting(b: &DatasetBundle) -> Vec<String> {
    let mut out = Vec::new();
    for kind in SplitKind::ALL {
        let sizes = [SizeClass::Small, SizeClass::Mid, SizeClass::Large];
        for w in sizes.windows(2) {
            let (Some(inner), Some(outer)) = (b.split(kind, w[0]), b.split(kind, w[1])) else {
                continue;
            };
            let have = units(outer);
            let mut need: HashMap<Vec<&Record>, usize> = HashMap::new();
            let width = if kind.is_adversarial() { 2 } else { 1 };
            for (i, unit) in inner.records.chunks(width).enumerate() {
                let key: Vec<&Record> = unit.iter().collect();
                let n = need.entry(key.clone()).or_default();
                *n += 1;
                if *n > have.get(&key).copied().unwrap_or(0) {
                    out.push(format!("{}: not contained in {}", at(inner, i * width), outer.name()));
                }
            }
        }
    }
    out
}
