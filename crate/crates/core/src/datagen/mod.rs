//! Seeded generation of train/dev/test bundles for a language.
//!
//! Every split is drawn by walks that pick uniformly among the live
//! outbound edges of a layered automaton. Without-replacement draws carve
//! each string out of the machine, so later walks see the new outdegrees.
//! Randomness comes from ChaCha20 substreams keyed by the master seed, the
//! split, the length and the minimal DFA of the side being sampled, so a
//! layer draws the same strings however the work is scheduled.

mod downsample;
mod io;
mod pairs;
mod sampler;
mod verify;


use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::alphabet::Alphabet;
use crate::automaton::Dfa;
use crate::classify::ClassLabel;
use crate::error::{Error, Result};
use crate::expr::LanguageSpec;

pub use downsample::{downsample, downsample_nested};
pub use io::{parse_split, read_bundle, read_split, write_bundle, write_split};
pub use pairs::{PairBase, PairSampler};
pub use sampler::{Layered, SamplerState, Trie};
pub use verify::{levenshtein, verify_bundle, Check, Report};

pub const GENERATOR_VERSION: &str = concat!("subreg-datagen/", env!("CARGO_PKG_VERSION"));
pub const PRNG_ID: &str = "chacha20/sha256-substreams/v1";

/// Longest string any split contains.
pub const MAX_LEN: usize = 51;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitKind {
    Train,
    Dev,
    SR,
    SA,
    LR,
    LA,
}

impl SplitKind {
    pub const ALL: [SplitKind; 6] = [
        SplitKind::Train,
        SplitKind::Dev,
        SplitKind::SR,
        SplitKind::SA,
        SplitKind::LR,
        SplitKind::LA,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SplitKind::Train => "Train",
            SplitKind::Dev => "Dev",
            SplitKind::SR => "SR",
            SplitKind::SA => "SA",
            SplitKind::LR => "LR",
            SplitKind::LA => "LA",
        }
    }

    /// Lengths of the strings, or of the anchors for adversarial splits.
    pub fn lengths(self) -> RangeInclusive<usize> {
        match self {
            SplitKind::LR | SplitKind::LA => 31..=50,
            _ => 20..=29,
        }
    }

    pub fn is_adversarial(self) -> bool {
        matches!(self, SplitKind::SA | SplitKind::LA)
    }

    pub fn is_test(self) -> bool {
        !matches!(self, SplitKind::Train | SplitKind::Dev)
    }

    /// Strings per length and label, or pairs per anchor length, in the
    /// Large split of a bundle with `large` records per split.
    pub fn quota(self, large: usize) -> usize {
        large / 2 / self.lengths().count()
    }
}

impl fmt::Display for SplitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SplitKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Param(format!("unknown split kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SizeClass {
    Small,
    Mid,
    Large,
}

impl SizeClass {
    pub const ALL: [SizeClass; 3] = [SizeClass::Small, SizeClass::Mid, SizeClass::Large];

    pub fn as_str(self) -> &'static str {
        match self {
            SizeClass::Small => "Small",
            SizeClass::Mid => "Mid",
            SizeClass::Large => "Large",
        }
    }

    /// Fraction of the Large split kept, as a divisor.
    pub fn divisor(self) -> usize {
        match self {
            SizeClass::Small => 100,
            SizeClass::Mid => 10,
            SizeClass::Large => 1,
        }
    }
}

impl fmt::Display for SizeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SizeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SizeClass::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Param(format!("unknown size class {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Record {
    pub word: String,
    pub label: bool,
}

impl Record {
    pub fn new(word: impl Into<String>, label: bool) -> Self {
        Record {
            word: word.into(),
            label,
        }
    }

    pub fn len(&self) -> usize {
        self.word.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// One dataset file. Adversarial splits hold pairs on consecutive records,
/// positive first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub kind: SplitKind,
    pub size: SizeClass,
    pub records: Vec<Record>,
}

impl Split {
    pub fn file_name(kind: SplitKind, size: SizeClass) -> String {
        format!("{kind}_{size}.tsv")
    }

    pub fn name(&self) -> String {
        Split::file_name(self.kind, self.size)
    }

    pub fn positives(&self) -> usize {
        self.records.iter().filter(|r| r.label).count()
    }

    pub fn negatives(&self) -> usize {
        self.records.len() - self.positives()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Record, &Record)> {
        self.records.chunks_exact(2).map(|c| (&c[0], &c[1]))
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::with_capacity(self.records.len() * 32);
        for r in &self.records {
            out.push_str(&r.word);
            out.push_str(if r.label { "\tTRUE\n" } else { "\tFALSE\n" });
        }
        out
    }

    pub fn sha256(&self) -> String {
        hex::encode(Sha256::digest(self.to_tsv().as_bytes()))
    }
}

/// Which side of an adversarial pair is sampled at the split's lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Anchor {
    Positive,
    Negative,
}

impl Anchor {
    /// Complement classes anchor on their negatives, so that a bundle and
    /// the complemented bundle of the complement language coincide.
    pub fn for_class(c: ClassLabel) -> Self {
        if c.complement_of().is_some() {
            Anchor::Negative
        } else {
            Anchor::Positive
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Anchor::Positive => Anchor::Negative,
            Anchor::Negative => Anchor::Positive,
        }
    }

    pub fn label(self) -> bool {
        self == Anchor::Positive
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    /// Records in each Large split; a multiple of 4000.
    pub large: usize,
    pub anchor: Anchor,
}

impl GenConfig {
    pub const DEFAULT_LARGE: usize = 100_000;

    pub fn new(seed: u64) -> Self {
        GenConfig {
            seed,
            large: GenConfig::DEFAULT_LARGE,
            anchor: Anchor::Positive,
        }
    }

    pub fn for_spec(seed: u64, spec: &LanguageSpec) -> Self {
        GenConfig {
            anchor: Anchor::for_class(spec.class),
            ..GenConfig::new(seed)
        }
    }

    pub fn with_large(mut self, large: usize) -> Self {
        self.large = large;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.large == 0 || self.large % 4000 != 0 {
            return Err(Error::Param(format!(
                "large size must be a positive multiple of 4000, got {}",
                self.large
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileEntry {
    pub records: usize,
    pub positives: usize,
    pub negatives: usize,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub name: String,
    pub seed: u64,
    pub prng: String,
    pub generator_version: String,
    pub large: usize,
    pub adversarial_anchor: Anchor,
    pub files: BTreeMap<String, FileEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetBundle {
    pub manifest: Manifest,
    /// All 18 splits, by kind and then size.
    pub splits: Vec<Split>,
}

impl DatasetBundle {
    pub fn new(name: &str, seed: u64, large: usize, anchor: Anchor, mut splits: Vec<Split>) -> Self {
        splits.sort_by_key(|s| (s.kind, s.size));
        let files = splits
            .iter()
            .map(|s| {
                let entry = FileEntry {
                    records: s.records.len(),
                    positives: s.positives(),
                    negatives: s.negatives(),
                    sha256: s.sha256(),
                };
                (s.name(), entry)
            })
            .collect();
        let manifest = Manifest {
            name: name.to_string(),
            seed,
            prng: PRNG_ID.to_string(),
            generator_version: GENERATOR_VERSION.to_string(),
            large,
            adversarial_anchor: anchor,
            files,
        };
        DatasetBundle { manifest, splits }
    }

    pub fn split(&self, kind: SplitKind, size: SizeClass) -> Option<&Split> {
        self.splits.iter().find(|s| s.kind == kind && s.size == size)
    }
}

/// Swaps every label. Pairs are reordered so the positive stays first, and
/// the anchor flips with them.
pub fn complement_bundle(b: &DatasetBundle) -> DatasetBundle {
    let name = match LanguageSpec::parse(&b.manifest.name) {
        Ok(mut spec) => {
            if let Some(c) = spec.class.complement_class().or(spec.class.complement_of()) {
                spec.class = c;
            }
            spec.render()
        }
        Err(_) => b.manifest.name.clone(),
    };
    let splits = b
        .splits
        .iter()
        .map(|s| {
            let mut records: Vec<Record> = s.records.iter().map(|r| Record::new(r.word.clone(), !r.label)).collect();
            if s.kind.is_adversarial() {
                for pair in records.chunks_exact_mut(2) {
                    pair.swap(0, 1);
                }
            }
            Split {
                kind: s.kind,
                size: s.size,
                records,
            }
        })
        .collect();
    let m = &b.manifest;
    DatasetBundle::new(&name, m.seed, m.large, m.adversarial_anchor.flip(), splits)
}

type Word = Vec<usize>;

struct Side {
    label: bool,
    dfa: Dfa,
    key: [u8; 32],
    layered: Arc<Layered>,
}

impl Side {
    fn new(dfa: Dfa, label: bool) -> Self {
        let key = Sha256::digest(dfa.to_att().as_bytes()).into();
        let layered = Arc::new(Layered::new(&dfa, MAX_LEN));
        Side {
            label,
            dfa,
            key,
            layered,
        }
    }

    fn describe(&self) -> &'static str {
        if self.label {
            "positive"
        } else {
            "negative"
        }
    }
}

/// Excluded strings grouped by label and length.
#[derive(Default)]
struct Exclusions(HashMap<(bool, usize), Vec<Word>>);

impl Exclusions {
    fn new(alphabet: &Alphabet, splits: &[&Split]) -> Result<Self> {
        let mut map: HashMap<(bool, usize), HashSet<Word>> = HashMap::new();
        for s in splits {
            for r in &s.records {
                let w = alphabet.encode(&r.word)?;
                map.entry((r.label, w.len())).or_default().insert(w);
            }
        }
        let map = map
            .into_iter()
            .map(|(k, v)| {
                let mut v: Vec<Word> = v.into_iter().collect();
                v.sort();
                (k, v)
            })
            .collect();
        Ok(Exclusions(map))
    }

    fn get(&self, label: bool, len: usize) -> &[Word] {
        self.0.get(&(label, len)).map_or(&[], |v| v)
    }

    fn trie(&self, label: bool, lens: impl IntoIterator<Item = usize>) -> Trie {
        let mut t = Trie::new();
        for len in lens {
            for w in self.get(label, len) {
                t.insert(w);
            }
        }
        t
    }
}

/// Builds the splits of one language; the positive side is `L` and the
/// negative side its complement.
pub struct Generator {
    alphabet: Alphabet,
    cfg: GenConfig,
    pos: Side,
    neg: Side,
    pair_base: OnceLock<Arc<PairBase>>,
}

impl Generator {
    pub fn new(d: &Dfa, cfg: GenConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Generator {
            alphabet: d.alphabet().clone(),
            cfg,
            pos: Side::new(d.minimize(), true),
            neg: Side::new(d.complement(), false),
            pair_base: OnceLock::new(),
        })
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    fn side(&self, label: bool) -> &Side {
        if label {
            &self.pos
        } else {
            &self.neg
        }
    }

    fn substream(&self, kind: SplitKind, len: usize, keys: &[&[u8; 32]]) -> ChaCha20Rng {
        let mut h = Sha256::new();
        h.update(b"subreg/v1");
        h.update(self.cfg.seed.to_le_bytes());
        h.update(kind.as_str().as_bytes());
        h.update((len as u64).to_le_bytes());
        for k in keys {
            h.update(k);
        }
        ChaCha20Rng::from_seed(h.finalize().into())
    }

    fn sampler(&self, side: &Side, kind: SplitKind, len: usize) -> SamplerState {
        SamplerState::new(side.layered.clone(), len, self.substream(kind, len, &[&side.key]))
    }

    fn layers(&self, kind: SplitKind) -> Vec<(usize, bool)> {
        kind.lengths().flat_map(|len| [(len, true), (len, false)]).collect()
    }

    fn finish(&self, kind: SplitKind, layers: Vec<(bool, Vec<Word>)>) -> Split {
        let mut records: Vec<(usize, String, bool)> = layers
            .into_iter()
            .flat_map(|(label, words)| {
                words
                    .into_iter()
                    .map(move |w| (w.len(), w, label))
                    .collect::<Vec<_>>()
            })
            .map(|(len, w, label)| (len, self.alphabet.decode(&w), label))
            .collect();
        records.sort();
        Split {
            kind,
            size: SizeClass::Large,
            records: records.into_iter().map(|(_, w, l)| Record::new(w, l)).collect(),
        }
    }

    fn unusable(&self, kind: SplitKind, side: &Side, len: usize, have: u64, need: usize) -> Error {
        Error::Unusable(format!(
            "{kind}: need {need} {} strings of length {len}, {have} available",
            side.describe()
        ))
    }

    /// Draws with replacement.
    pub fn build_train(&self) -> Result<Split> {
        let kind = SplitKind::Train;
        let quota = kind.quota(self.cfg.large);
        let layers = self
            .layers(kind)
            .into_par_iter()
            .map(|(len, label)| {
                let side = self.side(label);
                let mut s = self.sampler(side, kind, len);
                if s.remaining() == 0 {
                    return Err(self.unusable(kind, side, len, 0, quota));
                }
                let words = (0..quota).map(|_| s.sample_walk()).collect::<Result<Vec<_>>>()?;
                Ok((label, words))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.finish(kind, layers))
    }

    /// Draws with replacement after carving every train string.
    pub fn build_dev(&self, train: &Split) -> Result<Split> {
        let kind = SplitKind::Dev;
        let quota = kind.quota(self.cfg.large);
        let excl = Exclusions::new(&self.alphabet, &[train])?;
        let layers = self
            .layers(kind)
            .into_par_iter()
            .map(|(len, label)| {
                let side = self.side(label);
                let mut s = self.sampler(side, kind, len);
                for w in excl.get(label, len) {
                    s.carve(w)?;
                }
                if s.remaining() == 0 {
                    return Err(self.unusable(kind, side, len, 0, quota));
                }
                let words = (0..quota).map(|_| s.sample_walk()).collect::<Result<Vec<_>>>()?;
                Ok((label, words))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.finish(kind, layers))
    }

    /// Draws without replacement after carving every excluded string.
    pub fn build_random_test(&self, kind: SplitKind, exclude: &[&Split]) -> Result<Split> {
        if !matches!(kind, SplitKind::SR | SplitKind::LR) {
            return Err(Error::Param(format!("{kind} is not a random test split")));
        }
        let quota = kind.quota(self.cfg.large);
        let excl = Exclusions::new(&self.alphabet, exclude)?;
        let layers = self
            .layers(kind)
            .into_par_iter()
            .map(|(len, label)| {
                let side = self.side(label);
                let mut s = self.sampler(side, kind, len);
                for w in excl.get(label, len) {
                    s.carve(w)?;
                }
                if s.remaining() < quota as u64 {
                    return Err(self.unusable(kind, side, len, s.remaining(), quota));
                }
                let words = (0..quota).map(|_| s.sample_unique()).collect::<Result<Vec<_>>>()?;
                Ok((label, words))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.finish(kind, layers))
    }

    fn pair_base(&self) -> Result<Arc<PairBase>> {
        if let Some(b) = self.pair_base.get() {
            return Ok(b.clone());
        }
        let anchor = self.side(self.cfg.anchor.label());
        let partner = self.side(!self.cfg.anchor.label());
        let base = Arc::new(PairBase::new(&anchor.dfa, &partner.dfa, MAX_LEN - 1)?);
        Ok(self.pair_base.get_or_init(|| base).clone())
    }

    /// Draws unique edit-distance-1 pairs whose anchor has the split's
    /// lengths; no anchor or partner is an excluded string of its label.
    pub fn build_adversarial_test(&self, kind: SplitKind, exclude: &[&Split]) -> Result<Split> {
        if !kind.is_adversarial() {
            return Err(Error::Param(format!("{kind} is not an adversarial split")));
        }
        let quota = kind.quota(self.cfg.large);
        let excl = Exclusions::new(&self.alphabet, exclude)?;
        let base = self.pair_base()?;
        let a_label = self.cfg.anchor.label();
        let (anchor, partner) = (self.side(a_label), self.side(!a_label));
        let mut pairs = kind
            .lengths()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|len| {
                if !base.nonempty(len) {
                    return Err(Error::Unusable(format!(
                        "{kind}: no edit-distance-1 pair straddles the border at length {len}"
                    )));
                }
                let a_out = excl.trie(a_label, [len]);
                let c_out = excl.trie(!a_label, [len - 1, len, len + 1]);
                let rng = self.substream(kind, len, &[&anchor.key, &partner.key]);
                let mut s = PairSampler::new(base.clone(), len, a_out, c_out, rng);
                (0..quota)
                    .map(|_| {
                        let (u, v) = s.sample().map_err(|_| {
                            Error::Unusable(format!("{kind}: fewer than {quota} edit-distance-1 pairs at length {len}"))
                        })?;
                        Ok((len, self.alphabet.decode(&u), self.alphabet.decode(&v)))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?
            .concat();
        pairs.sort();
        let records = pairs
            .into_iter()
            .flat_map(|(_, u, v)| {
                let (a, b) = (Record::new(u, a_label), Record::new(v, !a_label));
                if a_label {
                    [a, b]
                } else {
                    [b, a]
                }
            })
            .collect();
        Ok(Split {
            kind,
            size: SizeClass::Large,
            records,
        })
    }

    /// All 18 splits, with Mid and Small downsampled from Large.
    pub fn generate(&self, name: &str) -> Result<DatasetBundle> {
        let train = self.build_train()?;
        let dev = self.build_dev(&train)?;
        let seen = [&train, &dev];
        let (random, adversarial) = rayon::join(
            || -> Result<_> {
                Ok((
                    self.build_random_test(SplitKind::SR, &seen)?,
                    self.build_random_test(SplitKind::LR, &seen)?,
                ))
            },
            || -> Result<_> {
                Ok((
                    self.build_adversarial_test(SplitKind::SA, &seen)?,
                    self.build_adversarial_test(SplitKind::LA, &seen)?,
                ))
            },
        );
        let (sr, lr) = random?;
        let (sa, la) = adversarial?;
        let mut splits = Vec::with_capacity(18);
        for large in [train, dev, sr, sa, lr, la] {
            let (mid, small) = downsample_nested(&large, self.cfg.seed, self.cfg.anchor);
            splits.extend([small, mid, large]);
        }
        Ok(DatasetBundle::new(
            name,
            self.cfg.seed,
            self.cfg.large,
            self.cfg.anchor,
            splits,
        ))
    }
}

/// Generates the bundle for `d` under `cfg`.
pub fn generate_bundle(d: &Dfa, name: &str, cfg: GenConfig) -> Result<DatasetBundle> {
    Generator::new(d, cfg)?.generate(name)
}
