use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::ClassLabel;
use crate::error::{Error, Result};

/// Parameters of a benchmark language, rendered as
/// `sigma.tau.class.k.t.i` (for example `04.03.TSL.4.0.7`).
///
/// `tau` equals `sigma` for classes without a tier, and `k` and `t` are 0
/// when the class has no factor width or threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LanguageSpec {
    pub sigma: u8,
    pub tau: u8,
    pub class: ClassLabel,
    pub k: u32,
    pub t: u32,
    pub i: u32,
}

impl LanguageSpec {
    pub fn parse(name: &str) -> Result<Self> {
        name.parse()
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for LanguageSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:02}.{:02}.{}.{}.{}.{}",
            self.sigma, self.tau, self.class, self.k, self.t, self.i
        )
    }
}

fn two_digits(s: &str, name: &str) -> Result<u8> {
    if s.len() != 2 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedName(name.to_string()));
    }
    let v: u8 = s.parse().map_err(|_| Error::MalformedName(name.to_string()))?;
    if v == 0 || v > 64 {
        return Err(Error::MalformedName(name.to_string()));
    }
    Ok(v)
}

fn plain_int(s: &str, name: &str) -> Result<u32> {
    let ok = !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit())
        && (s == "0" || !s.starts_with('0'));
    if !ok {
        return Err(Error::MalformedName(name.to_string()));
    }
    s.parse().map_err(|_| Error::MalformedName(name.to_string()))
}

impl FromStr for LanguageSpec {
    type Err = Error;

    fn from_str(name: &str) -> Result<Self> {
        let parts: Vec<&str> = name.split('.').collect();
        let [sigma, tau, class, k, t, i] = parts[..] else {
            return Err(Error::MalformedName(name.to_string()));
        };
        let sigma = two_digits(sigma, name)?;
        let tau = two_digits(tau, name)?;
        if tau > sigma {
            return Err(Error::MalformedName(name.to_string()));
        }
        let class = ClassLabel::from_canonical(class)
            .ok_or_else(|| Error::UnknownClass(class.to_string()))?;
        Ok(LanguageSpec {
            sigma,
            tau,
            class,
            k: plain_int(k, name)?,
            t: plain_int(t, name)?,
            i: plain_int(i, name)?,
        })
    }
}
