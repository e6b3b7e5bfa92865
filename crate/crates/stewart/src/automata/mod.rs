//! Multi-track DFA/DFAO algebra.
//!
//! Automata here read tuples of digits, one digit per track, least
//! significant digit first; each track has its own base. Trailing
//! all-zero tuples are padding: every public recognizer is kept
//! *padding-stable*, meaning acceptance only depends on the value tuple,
//! not on how many zero tuples pad it.
//!
//! Recognizers ([`MultiTrackDfa`]) are total. Automata with output
//! ([`MultiTrackDfao`]) may be partial — a run that leaves the transition
//! table has no output — because the Stewart automaton from the appendix
//! table is itself partial.

mod algebra;
mod format;

pub use algebra::{
    add_track, complement, enumerate, equivalent, equivalent_dfao, is_empty, is_padding_stable,
    map_tracks, minimize, minimize_dfao, normalize_padding, output_dfa, permute_tracks, product,
    project, shortest_accepted, BoolOp, StateCap,
};
pub(crate) use algebra::{determinize, project_any};
pub use format::{dfa_to_dot, dfao_to_dot, read_walnut, walnut_text_of_dfa, write_walnut};

use crate::error::{Error, Result};
use crate::numeration::TrackVector;
use std::sync::OnceLock;

pub type StateId = u32;

/// Sentinel for a missing DFAO transition.
pub(crate) const NO_STATE: StateId = StateId::MAX;

/// Product of the track bases, i.e. the tuple-alphabet size. A zero-track
/// automaton has the one-letter alphabet of empty tuples.
pub(crate) fn alphabet_size(bases: &[u32]) -> usize {
    bases.iter().fold(1usize, |acc, &b| {
        acc.checked_mul(b as usize).expect("alphabet size overflow")
    })
}

/// Index of a digit tuple in the mixed-radix letter encoding.
pub(crate) fn letter_of(bases: &[u32], digits: &[u32]) -> usize {
    debug_assert_eq!(bases.len(), digits.len());
    let mut letter = 0usize;
    let mut stride = 1usize;
    for (&d, &b) in digits.iter().zip(bases) {
        debug_assert!(d < b);
        letter += d as usize * stride;
        stride *= b as usize;
    }
    letter
}

/// Inverse of [`letter_of`].
pub(crate) fn digits_of(bases: &[u32], mut letter: usize) -> Vec<u32> {
    let mut digits = Vec::with_capacity(bases.len());
    for &b in bases {
        digits.push((letter % b as usize) as u32);
        letter /= b as usize;
    }
    digits
}

/// A total deterministic multi-track recognizer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiTrackDfa {
    bases: Vec<u32>,
    initial: StateId,
    accepting: Vec<bool>,
    /// Row-major `states x alphabet` table.
    trans: Vec<StateId>,
}

impl MultiTrackDfa {
    pub fn new(
        bases: Vec<u32>,
        initial: StateId,
        accepting: Vec<bool>,
        trans: Vec<StateId>,
    ) -> Result<Self> {
        let alpha = alphabet_size(&bases);
        let n = accepting.len();
        if n == 0 || initial as usize >= n || trans.len() != n * alpha {
            return Err(Error::Precondition("malformed automaton tables".into()));
        }
        if trans.iter().any(|&t| t as usize >= n) {
            return Err(Error::Precondition("transition target out of range".into()));
        }
        Ok(MultiTrackDfa {
            bases,
            initial,
            accepting,
            trans,
        })
    }

    /// Single dead state: rejects everything.
    pub fn empty_language(bases: Vec<u32>) -> Self {
        let alpha = alphabet_size(&bases);
        MultiTrackDfa {
            bases,
            initial: 0,
            accepting: vec![false],
            trans: vec![0; alpha],
        }
    }

    /// Single accepting state: accepts everything.
    pub fn universal(bases: Vec<u32>) -> Self {
        let alpha = alphabet_size(&bases);
        MultiTrackDfa {
            bases,
            initial: 0,
            accepting: vec![true],
            trans: vec![0; alpha],
        }
    }

    pub fn track_bases(&self) -> &[u32] {
        &self.bases
    }

    pub fn num_tracks(&self) -> usize {
        self.bases.len()
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q as usize]
    }

    pub(crate) fn alphabet(&self) -> usize {
        alphabet_size(&self.bases)
    }

    #[inline]
    pub(crate) fn step(&self, q: StateId, letter: usize) -> StateId {
        self.trans[q as usize * self.alphabet() + letter]
    }

    /// Runs a sequence of digit tuples from the initial state.
    pub fn run(&self, tuples: impl IntoIterator<Item = Vec<u32>>) -> Result<StateId> {
        let mut q = self.initial;
        for t in tuples {
            if t.len() != self.bases.len() {
                return Err(Error::BaseMismatch(format!(
                    "tuple width {} vs {} tracks",
                    t.len(),
                    self.bases.len()
                )));
            }
            for (&d, &b) in t.iter().zip(&self.bases) {
                if d >= b {
                    return Err(Error::DigitRange { digit: d, base: b });
                }
            }
            q = self.step(q, letter_of(&self.bases, &t));
        }
        Ok(q)
    }

    pub fn accepts(&self, v: &TrackVector) -> Result<bool> {
        if v.bases() != self.bases {
            return Err(Error::BaseMismatch(format!(
                "input bases {:?} vs automaton {:?}",
                v.bases(),
                self.bases
            )));
        }
        let q = self.run((0..v.len()).map(|i| v.tuple_at(i)))?;
        Ok(self.accepting[q as usize])
    }

    /// Accepts a tuple of values, one per track. For a zero-track
    /// automaton the empty assignment is accepted iff the initial state is.
    pub fn accepts_values(&self, values: &[u64]) -> Result<bool> {
        if values.len() != self.bases.len() {
            return Err(Error::BaseMismatch(format!(
                "{} values vs {} tracks",
                values.len(),
                self.bases.len()
            )));
        }
        if values.is_empty() {
            return Ok(self.accepting[self.initial as usize]);
        }
        let pairs: Vec<(u64, u32)> = values.iter().zip(&self.bases).map(|(&n, &b)| (n, b)).collect();
        self.accepts(&crate::numeration::align_values(&pairs))
    }
}

/// A deterministic multi-track automaton with per-state output; the
/// transition table may be partial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiTrackDfao {
    bases: Vec<u32>,
    initial: StateId,
    outputs: Vec<u32>,
    trans: Vec<StateId>,
}

impl MultiTrackDfao {
    pub fn new(
        bases: Vec<u32>,
        initial: StateId,
        outputs: Vec<u32>,
        trans: Vec<StateId>,
    ) -> Result<Self> {
        let alpha = alphabet_size(&bases);
        let n = outputs.len();
        if n == 0 || initial as usize >= n || trans.len() != n * alpha {
            return Err(Error::Precondition("malformed automaton tables".into()));
        }
        if trans.iter().any(|&t| t != NO_STATE && t as usize >= n) {
            return Err(Error::Precondition("transition target out of range".into()));
        }
        Ok(MultiTrackDfao {
            bases,
            initial,
            outputs,
            trans,
        })
    }

    pub fn track_bases(&self) -> &[u32] {
        &self.bases
    }

    pub fn num_tracks(&self) -> usize {
        self.bases.len()
    }

    pub fn num_states(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn output(&self, q: StateId) -> u32 {
        self.outputs[q as usize]
    }

    /// Distinct output values, sorted.
    pub fn output_alphabet(&self) -> Vec<u32> {
        let mut out = self.outputs.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub(crate) fn alphabet(&self) -> usize {
        alphabet_size(&self.bases)
    }

    #[inline]
    pub fn step(&self, q: StateId, letter: usize) -> Option<StateId> {
        let t = self.trans[q as usize * self.alphabet() + letter];
        (t != NO_STATE).then_some(t)
    }

    pub(crate) fn raw_trans(&self) -> &[StateId] {
        &self.trans
    }
}

/// Runs `m` on an aligned track vector; `None` if the run leaves the
/// transition table.
pub fn eval_dfao(m: &MultiTrackDfao, v: &TrackVector) -> Result<Option<u32>> {
    if v.bases() != m.bases {
        return Err(Error::BaseMismatch(format!(
            "input bases {:?} vs automaton {:?}",
            v.bases(),
            m.bases
        )));
    }
    let mut q = m.initial;
    for i in 0..v.len() {
        let tuple = v.tuple_at(i);
        match m.step(q, letter_of(&m.bases, &tuple)) {
            Some(next) => q = next,
            None => return Ok(None),
        }
    }
    Ok(Some(m.outputs[q as usize]))
}

/// The appendix transition table of the Stewart automaton, verbatim.
pub const TP_TEXT: &str = include_str!("tp.txt");

/// The Stewart automaton: track bases `[7, 3]`, pattern letters coded
/// 1-6 on the first track, base-3 position digits on the second, outputs
/// in `{0,1,2}` with 2 standing for `?`.
pub fn stewart_automaton() -> &'static MultiTrackDfao {
    static TP: OnceLock<MultiTrackDfao> = OnceLock::new();
    TP.get_or_init(|| read_walnut(TP_TEXT).expect("embedded TP table parses"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeration::align_values;
    use crate::words::{toeplitz_prefix, PatternSeq, Sym};

    #[test]
    fn letters_roundtrip() {
        let bases = vec![7, 3];
        for letter in 0..alphabet_size(&bases) {
            let digits = digits_of(&bases, letter);
            assert_eq!(letter_of(&bases, &digits), letter);
        }
    }

    #[test]
    fn stewart_shape() {
        let m = stewart_automaton();
        assert_eq!(m.track_bases(), &[7, 3]);
        assert_eq!(m.num_states(), 6);
        assert_eq!(m.initial(), 0);
        assert_eq!(m.output(m.initial()), 2);
        assert_eq!(m.output_alphabet(), vec![0, 1, 2]);
    }

    #[test]
    fn stewart_on_empty_input() {
        let m = stewart_automaton();
        let v = align_values(&[(0, 7), (0, 3)]);
        assert_eq!(eval_dfao(m, &v).unwrap(), Some(2));
    }

    #[test]
    fn stewart_af_position_two() {
        let m = stewart_automaton();
        let t = PatternSeq::parse("af").unwrap();
        let v = align_values(&[(t.value(), 7), (2, 3)]);
        assert_eq!(eval_dfao(m, &v).unwrap(), Some(2));
    }

    #[test]
    fn stewart_matches_afe_word() {
        let m = stewart_automaton();
        let t = PatternSeq::parse("afe").unwrap();
        let w = toeplitz_prefix(&t);
        for n in 0..27u64 {
            let v = align_values(&[(t.value(), 7), (n, 3)]);
            let got = eval_dfao(m, &v).unwrap().unwrap();
            assert_eq!(got, w.get(n as usize).as_u32(), "position {n}");
        }
    }

    #[test]
    fn stewart_exhaustive_small() {
        let m = stewart_automaton();
        for len in 0..=4usize {
            for t in PatternSeq::enumerate(len) {
                let w = toeplitz_prefix(&t);
                for n in 0..w.len() as u64 {
                    let v = align_values(&[(t.value(), 7), (n, 3)]);
                    let got = eval_dfao(m, &v).unwrap();
                    assert_eq!(got, Some(w.get(n as usize).as_u32()), "t={t}, n={n}");
                }
            }
        }
    }

    #[test]
    fn stewart_out_of_range_hole_is_undefined() {
        // beyond 3^|t| the hole position has no output
        let m = stewart_automaton();
        let t = PatternSeq::parse("a").unwrap();
        // position 5 = [2,1]: hole of the first block repeated, n >= 3
        let v = align_values(&[(t.value(), 7), (5, 3)]);
        assert_eq!(eval_dfao(m, &v).unwrap(), None);
    }

    #[test]
    fn stewart_padding_consistency() {
        let m = stewart_automaton();
        let t = PatternSeq::parse("cad").unwrap();
        let w = toeplitz_prefix(&t);
        for n in 0..27u64 {
            let tracks = vec![
                crate::numeration::encode(t.value(), 7).padded(6),
                crate::numeration::encode(n, 3).padded(6),
            ];
            let v = crate::numeration::align(tracks);
            assert_eq!(
                eval_dfao(m, &v).unwrap(),
                Some(w.get(n as usize).as_u32()),
                "padded eval at {n}"
            );
        }
    }

    #[test]
    fn base_mismatch_rejected() {
        let m = stewart_automaton();
        let v = align_values(&[(1, 3), (1, 3)]);
        assert!(matches!(eval_dfao(m, &v), Err(Error::BaseMismatch(_))));
    }

    #[test]
    fn sym_u32_roundtrip() {
        for s in [Sym::Zero, Sym::One, Sym::Hole] {
            assert_eq!(Sym::from_u32(s.as_u32()).unwrap(), s);
        }
    }
}
