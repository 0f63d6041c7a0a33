use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::datagen::{Anchor, Record, SizeClass, Split};

fn rank(seed: u64, kind: &str, parts: &[&str]) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(b"downsample");
    h.update(kind.as_bytes());
    for p in parts {
        h.update(b"\t");
        h.update(p.as_bytes());
    }
    h.finalize().into()
}

/// Keeps `1/divisor` of every group: each (length, label) class of an
/// ordinary split, or each anchor length of an adversarial one. Members are
/// ranked by a seeded hash of their strings, so smaller sizes keep
/// prefixes of the same ranking and are nested. Pairs stay whole.
pub fn downsample(split: &Split, size: SizeClass, seed: u64, anchor: Anchor) -> Split {
    let divisor = size.divisor() / split.size.divisor().max(1);
    let kind = split.kind.as_str();
    // Units are record index ranges; groups map to (rank, unit start).
    let mut groups: BTreeMap<(usize, bool), Vec<([u8; 32], usize)>> = BTreeMap::new();
    if split.kind.is_adversarial() {
        for (i, (pos, neg)) in split.pairs().enumerate() {
            let (a, b) = if anchor.label() { (pos, neg) } else { (neg, pos) };
            let key = rank(seed, kind, &[&a.word, &b.word]);
            groups.entry((a.len(), true)).or_default().push((key, 2 * i));
        }
    } else {
        for (i, r) in split.records.iter().enumerate() {
            let key = rank(seed, kind, &[&r.word]);
            groups.entry((r.len(), r.label)).or_default().push((key, i));
        }
    }
    let width = if split.kind.is_adversarial() { 2 } else { 1 };
    let mut keep: Vec<usize> = Vec::new();
    for members in groups.values_mut() {
        members.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| unit_cmp(split, width, x.1, y.1)));
        keep.extend(members.iter().take(members.len() / divisor.max(1)).map(|m| m.1));
    }
    keep.sort_unstable();
    let records: Vec<Record> = keep
        .into_iter()
        .flat_map(|i| split.records[i..i + width].iter().cloned())
        .collect();
    Split {
        kind: split.kind,
        size,
        records,
    }
}

fn unit_cmp(split: &Split, width: usize, i: usize, j: usize) -> std::cmp::Ordering {
    let a = split.records[i..i + width].iter().map(|r| &r.word);
    let b = split.records[j..j + width].iter().map(|r| &r.word);
    a.cmp(b)
}

/// Mid and Small splits of a Large split.
pub fn downsample_nested(large: &Split, seed: u64, anchor: Anchor) -> (Split, Split) {
    (
        downsample(large, SizeClass::Mid, seed, anchor),
        downsample(large, SizeClass::Small, seed, anchor),
    )
}
