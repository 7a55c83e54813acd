//! Finite best-response patterns.
//!
//! A pattern maps a count of productive neighbors to the unique best response.
//! Only finitely many entries are 1, so a pattern is stored as a bit vector with
//! no trailing zeros; every index past the stored length reads as 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    bits: Vec<bool>,
}

/// Shape classes a pattern can belong to. Flags overlap where the definitions do.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeFlags {
    pub monotone_increasing: bool,
    pub monotone_decreasing: bool,
    /// Begins with 1,0,0.
    pub semi_sharp: bool,
    /// Begins with 1,0,1.
    pub spiked: bool,
    pub all_zero: bool,
}

impl Pattern {
    /// Builds a pattern from arbitrary bits, dropping trailing zeros.
    pub fn new(bits: impl Into<Vec<bool>>) -> Self {
        let mut bits = bits.into();
        while bits.last() == Some(&false) {
            bits.pop();
        }
        Pattern { bits }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Pattern::new(bits.iter().map(|&b| b != 0).collect::<Vec<_>>())
    }

    pub fn all_zero() -> Self {
        Pattern::default()
    }

    /// `[1,0,1]`: best response is to produce on zero or two productive neighbors.
    pub fn zero_or_two() -> Self {
        Pattern::from_bits(&[1, 0, 1])
    }

    pub fn best_shot() -> Self {
        Pattern::from_bits(&[1])
    }

    #[inline]
    pub fn query(&self, k: usize) -> bool {
        self.bits.get(k).copied().unwrap_or(false)
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Stored length; every index at or past it is 0.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_all_zero(&self) -> bool {
        self.bits.is_empty()
    }

    /// Largest index holding a 1, or `None` for the all-zero pattern.
    pub fn max_one(&self) -> Option<usize> {
        self.bits.len().checked_sub(1)
    }

    pub fn shape(&self) -> ShapeFlags {
        let t = |k| self.query(k);
        let all_zero = self.is_all_zero();
        // With a zero tail, an increasing pattern can only be all zero and a
        // decreasing one is a run of ones.
        let monotone_decreasing = self.bits.iter().all(|&b| b);
        ShapeFlags {
            monotone_increasing: all_zero,
            monotone_decreasing,
            semi_sharp: t(0) && !t(1) && !t(2),
            spiked: t(0) && !t(1) && t(2),
            all_zero,
        }
    }

    pub fn is_monotone(&self) -> bool {
        let s = self.shape();
        s.monotone_increasing || s.monotone_decreasing
    }

    /// Pattern `P` with `P[k] = self[k + t]`.
    pub fn shift_left(&self, t: usize) -> Pattern {
        Pattern::new(self.bits.iter().skip(t).copied().collect::<Vec<_>>())
    }

    /// Pattern `H` with `H[k] = self[2k]`.
    pub fn half(&self) -> Pattern {
        Pattern::new(self.bits.iter().step_by(2).copied().collect::<Vec<_>>())
    }

    /// True iff `self[2k] == half[k]` for every `k`; odd entries are unrestricted.
    pub fn is_double_of(&self, half: &Pattern) -> bool {
        let span = self.len().max(2 * half.len());
        (0..span.div_ceil(2)).all(|k| self.query(2 * k) == half.query(k))
    }

    /// `(1,0)` repeated `times`, followed by `self`.
    pub fn prepend_one_zero(&self, times: usize) -> Pattern {
        if self.is_all_zero() {
            // the zero tail absorbs the trailing 0 of the last pair
            let mut bits = [true, false].repeat(times);
            bits.truncate(bits.len().saturating_sub(1));
            return Pattern::new(bits);
        }
        let mut bits = [true, false].repeat(times);
        bits.extend_from_slice(&self.bits);
        Pattern::new(bits)
    }

    /// Pattern bits as a string over `{0,1}`, index 0 first. Empty for all-zero.
    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(1, format!("invalid pattern character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Pattern::new(bits))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_all_zero() {
            f.write_str("0")
        } else {
            f.write_str(&self.to_bit_string())
        }
    }
}

impl Serialize for Pattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
