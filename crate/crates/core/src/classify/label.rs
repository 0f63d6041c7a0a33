use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The sixteen language classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    SL,
    #[serde(rename = "coSL")]
    CoSL,
    TSL,
    TcoSL,
    SP,
    #[serde(rename = "coSP")]
    CoSP,
    LT,
    TLT,
    PT,
    PLT,
    TPLT,
    LTT,
    TLTT,
    SF,
    Zp,
    Reg,
}

impl ClassLabel {
    /// Fixed label order used by reports and the `classify` output.
    pub const ALL: [ClassLabel; 16] = [
        ClassLabel::SL,
        ClassLabel::CoSL,
        ClassLabel::TSL,
        ClassLabel::TcoSL,
        ClassLabel::SP,
        ClassLabel::CoSP,
        ClassLabel::LT,
        ClassLabel::TLT,
        ClassLabel::PT,
        ClassLabel::PLT,
        ClassLabel::TPLT,
        ClassLabel::LTT,
        ClassLabel::TLTT,
        ClassLabel::SF,
        ClassLabel::Zp,
        ClassLabel::Reg,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::SL => "SL",
            ClassLabel::CoSL => "coSL",
            ClassLabel::TSL => "TSL",
            ClassLabel::TcoSL => "TcoSL",
            ClassLabel::SP => "SP",
            ClassLabel::CoSP => "coSP",
            ClassLabel::LT => "LT",
            ClassLabel::TLT => "TLT",
            ClassLabel::PT => "PT",
            ClassLabel::PLT => "PLT",
            ClassLabel::TPLT => "TPLT",
            ClassLabel::LTT => "LTT",
            ClassLabel::TLTT => "TLTT",
            ClassLabel::SF => "SF",
            ClassLabel::Zp => "Zp",
            ClassLabel::Reg => "Reg",
        }
    }

    pub fn index(self) -> usize {
        ClassLabel::ALL.iter().position(|&c| c == self).unwrap()
    }

    /// Whether the class has a salient-symbol tier parameter.
    pub fn has_tier(self) -> bool {
        matches!(
            self,
            ClassLabel::TSL | ClassLabel::TcoSL | ClassLabel::TLT | ClassLabel::TPLT | ClassLabel::TLTT
        )
    }

    /// Whether the class is parameterized by factor width.
    pub fn has_width(self) -> bool {
        !matches!(self, ClassLabel::SF | ClassLabel::Zp | ClassLabel::Reg)
    }

    pub fn has_threshold(self) -> bool {
        matches!(self, ClassLabel::LTT | ClassLabel::TLTT)
    }

    /// For the complement classes, the class whose complements they are.
    pub fn complement_of(self) -> Option<ClassLabel> {
        match self {
            ClassLabel::CoSL => Some(ClassLabel::SL),
            ClassLabel::TcoSL => Some(ClassLabel::TSL),
            ClassLabel::CoSP => Some(ClassLabel::SP),
            _ => None,
        }
    }

    /// Inverse of [`ClassLabel::complement_of`].
    pub fn complement_class(self) -> Option<ClassLabel> {
        match self {
            ClassLabel::SL => Some(ClassLabel::CoSL),
            ClassLabel::TSL => Some(ClassLabel::TcoSL),
            ClassLabel::SP => Some(ClassLabel::CoSP),
            _ => None,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl ClassLabel {
    /// Canonical tokens only.
    pub fn from_canonical(s: &str) -> Option<ClassLabel> {
        ClassLabel::ALL.iter().copied().find(|c| c.as_str() == s)
    }
}

/// Accepts the canonical tokens plus the spellings `LP`, `TLP`, `coTSL`.
impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if let Some(c) = ClassLabel::from_canonical(s) {
            return Ok(c);
        }
        match s {
            "LP" => Ok(ClassLabel::PLT),
            "TLP" => Ok(ClassLabel::TPLT),
            "coTSL" => Ok(ClassLabel::TcoSL),
            _ => Err(Error::UnknownClass(s.to_string())),
        }
    }
}
