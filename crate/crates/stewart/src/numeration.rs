//! Least-significant-digit-first base-k representations and multi-track
//! alignment.
//!
//! All automata in this crate read digit tuples lsd-first; trailing zero
//! digits are semantically invisible padding. The canonical form of 0 is
//! the empty digit string, so automata that contain 0 in their accepted
//! set must accept the empty word.

use crate::error::{Error, Result};
use std::fmt;

/// A finite lsd-first digit string in a fixed base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitString {
    base: u32,
    digits: Vec<u32>,
}

impl DigitString {
    /// Validates every digit against the base.
    pub fn new(base: u32, digits: Vec<u32>) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        for &d in &digits {
            if d >= base {
                return Err(Error::DigitRange { digit: d, base });
            }
        }
        Ok(DigitString { base, digits })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Drops trailing zero digits (canonical form).
    pub fn trimmed(mut self) -> Self {
        while self.digits.last() == Some(&0) {
            self.digits.pop();
        }
        self
    }

    /// Appends zero digits up to `len`.
    pub fn padded(mut self, len: usize) -> Self {
        while self.digits.len() < len {
            self.digits.push(0);
        }
        self
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// Canonical lsd-first representation of `n`: no trailing zeros, empty for 0.
pub fn encode(mut n: u64, base: u32) -> DigitString {
    assert!(base >= 2, "numeration base must be >= 2");
    let mut digits = Vec::new();
    while n > 0 {
        digits.push((n % base as u64) as u32);
        n /= base as u64;
    }
    DigitString { base, digits }
}

/// Value of an lsd-first digit string; inverse of [`encode`] modulo
/// trailing zeros.
pub fn decode(d: &DigitString) -> u64 {
    let mut value = 0u64;
    for &digit in d.digits.iter().rev() {
        value = value * d.base as u64 + digit as u64;
    }
    value
}

/// A tuple of digit strings padded with trailing zeros to a common length.
/// Each track keeps its own base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackVector {
    tracks: Vec<DigitString>,
}

impl TrackVector {
    pub fn tracks(&self) -> &[DigitString] {
        &self.tracks
    }

    pub fn bases(&self) -> Vec<u32> {
        self.tracks.iter().map(|t| t.base()).collect()
    }

    /// Common padded length.
    pub fn len(&self) -> usize {
        self.tracks[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The i-th digit tuple, one digit per track.
    pub fn tuple_at(&self, i: usize) -> Vec<u32> {
        self.tracks.iter().map(|t| t.digits()[i]).collect()
    }
}

/// Pads all tracks with trailing zeros to the longest length.
pub fn align(tracks: Vec<DigitString>) -> TrackVector {
    assert!(!tracks.is_empty(), "track vector must be nonempty");
    let len = tracks.iter().map(|t| t.len()).max().unwrap();
    TrackVector {
        tracks: tracks.into_iter().map(|t| t.padded(len)).collect(),
    }
}

/// Encodes a list of (value, base) pairs and aligns them.
pub fn align_values(values: &[(u64, u32)]) -> TrackVector {
    align(values.iter().map(|&(n, b)| encode(n, b)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encode_zero_is_empty() {
        assert!(encode(0, 3).is_empty());
    }

    #[test]
    fn encode_ten_base3() {
        assert_eq!(encode(10, 3).digits(), &[1, 0, 1]);
    }

    #[test]
    fn decode_ignores_padding() {
        let d = DigitString::new(7, vec![1, 6, 5, 0, 0]).unwrap();
        assert_eq!(decode(&d), decode(&d.clone().trimmed()));
        assert_eq!(decode(&d), 1 + 6 * 7 + 5 * 49);
    }

    #[test]
    fn bad_digit_rejected() {
        assert!(DigitString::new(3, vec![3]).is_err());
    }

    #[test]
    fn align_pads_shorter() {
        let v = align(vec![
            DigitString::new(3, vec![1]).unwrap(),
            DigitString::new(3, vec![2, 1]).unwrap(),
        ]);
        assert_eq!(v.tuple_at(0), vec![1, 2]);
        assert_eq!(v.tuple_at(1), vec![0, 1]);
    }

    #[test]
    fn align_empty_tracks() {
        let v = align(vec![encode(0, 3), encode(0, 7)]);
        assert!(v.is_empty());
    }

    proptest! {
        #[test]
        fn decode_encode_roundtrip(n in 0u64..1_000_000, base in prop_oneof![Just(3u32), Just(7u32)]) {
            prop_assert_eq!(decode(&encode(n, base)), n);
        }

        #[test]
        fn decode_padding_invariant(n in 0u64..1_000_000, pad in 0usize..4) {
            let d = encode(n, 3);
            let len = d.len() + pad;
            prop_assert_eq!(decode(&d.padded(len)), n);
        }
    }
}
