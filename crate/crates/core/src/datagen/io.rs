use std::fs;
use std::path::Path;

use crate::datagen::{DatasetBundle, Manifest, Record, SizeClass, Split, SplitKind};
use crate::error::{io_err, Error, Result};

pub const MANIFEST: &str = "manifest.json";

pub fn write_split(split: &Split, path: &Path) -> Result<()> {
    fs::write(path, split.to_tsv()).map_err(io_err(path))
}

/// Writes the 18 split files and `manifest.json` into `dir`.
pub fn write_bundle(b: &DatasetBundle, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    for s in &b.splits {
        write_split(s, &dir.join(s.name()))?;
    }
    let path = dir.join(MANIFEST);
    let mut json = serde_json::to_string_pretty(&b.manifest).map_err(|e| Error::Manifest(e.to_string()))?;
    json.push('\n');
    fs::write(&path, json).map_err(io_err(&path))
}

/// Parses `string<TAB>TRUE|FALSE` lines; `path` only labels errors.
pub fn parse_split(text: &str, kind: SplitKind, size: SizeClass, path: &Path) -> Result<Split> {
    let records = text
        .lines()
        .enumerate()
        .map(|(i, line)| {
            let bad = |msg: &str| Error::Record {
                path: path.to_path_buf(),
                line: i + 1,
                msg: msg.to_string(),
            };
            let (word, label) = line.split_once('\t').ok_or_else(|| bad("expected string<TAB>label"))?;
            let label = match label {
                "TRUE" => true,
                "FALSE" => false,
                other => return Err(bad(&format!("label {other:?} is not TRUE or FALSE"))),
            };
            Ok(Record::new(word, label))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Split { kind, size, records })
}

/// Reads a split file named `<Kind>_<Size>.tsv`.
pub fn read_split(path: &Path) -> Result<Split> {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    let (kind, size) = stem
        .split_once('_')
        .ok_or_else(|| Error::Param(format!("{} is not named <Kind>_<Size>.tsv", path.display())))?;
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_split(&text, kind.parse()?, size.parse()?, path)
}

/// Reads a bundle written by [`write_bundle`]. Missing split files are
/// skipped; checking them against the manifest is left to verification.
pub fn read_bundle(dir: &Path) -> Result<DatasetBundle> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    let manifest: Manifest = serde_json::from_str(&text).map_err(|e| Error::Manifest(e.to_string()))?;
    let mut splits = Vec::new();
    for kind in SplitKind::ALL {
        for size in SizeClass::ALL {
            let p = dir.join(Split::file_name(kind, size));
            if !p.exists() {
                continue;
            }
            splits.push(read_split(&p)?);
        }
    }
    Ok(DatasetBundle { manifest, splits })
}
