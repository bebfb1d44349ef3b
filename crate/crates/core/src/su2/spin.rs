use std::fmt;

use serde::{Deserialize, Serialize};

/// Spin quantum number `s`, stored as the integer `2s` so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpinQuantum {
    two_s: u32,
}

impl SpinQuantum {
    pub const fn from_twice(two_s: u32) -> Self {
        Self { two_s }
    }

    /// Integer spin `s`.
    pub const fn integer(s: u32) -> Self {
        Self { two_s: 2 * s }
    }

    pub const fn two_s(self) -> u32 {
        self.two_s
    }

    pub fn s(self) -> f64 {
        self.two_s as f64 / 2.0
    }

    /// Dimension `2s + 1` of the irreducible representation.
    pub const fn dim(self) -> usize {
        self.two_s as usize + 1
    }

    pub const fn is_half_integer(self) -> bool {
        self.two_s % 2 == 1
    }

    /// Twice-`m` values in matrix order: `2s, 2s-2, …, -2s`.
    pub fn twice_m_values(self) -> impl DoubleEndedIterator<Item = i32> + ExactSizeIterator {
        let two_s = self.two_s as i32;
        (0..self.two_s as i32 + 1).map(move |k| two_s - 2 * k)
    }

    /// Matrix row/column of the magnetic index `m = two_m / 2`.
    pub fn index_of(self, two_m: i32) -> Option<usize> {
        let two_s = self.two_s as i32;
        if two_m.abs() > two_s || (two_s - two_m) % 2 != 0 {
            return None;
        }
        Some(((two_s - two_m) / 2) as usize)
    }

    /// `m` at matrix position `index`.
    pub fn m_at(self, index: usize) -> f64 {
        (self.two_s as f64 - 2.0 * index as f64) / 2.0
    }

    /// `f(s, m) = √[(s+m)(s−m+1)]`, the matrix element `⟨m|S₊|m−1⟩`.
    pub fn ladder(self, two_m: i32) -> f64 {
        let two_s = self.two_s as f64;
        let tm = two_m as f64;
        (((two_s + tm) / 2.0) * ((two_s - tm) / 2.0 + 1.0)).max(0.0).sqrt()
    }
}

impl fmt::Display for SpinQuantum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_half_integer() {
            write!(f, "{}/2", self.two_s)
        } else {
            write!(f, "{}", self.two_s / 2)
        }
    }
}
