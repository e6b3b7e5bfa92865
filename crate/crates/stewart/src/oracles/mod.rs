//! Brute-force, automata-free verifiers.
//!
//! Each function here re-derives one of the decided statements by direct
//! search over finite Toeplitz words, with no shared machinery beyond the
//! word construction itself. They double as differential oracles for the
//! prover and as standalone checks behind the CLI.
//!
//! All searches treat the single `?` as a wall: factors that cross it are
//! not boolean and are skipped wherever a statement is about boolean
//! content. Repetition searches compare symbols literally; since a finite
//! Toeplitz word has exactly one hole, a repeated factor can never
//! contain it, so literal equality and boolean equality agree there.

mod automatic;

pub use automatic::{dfao_from_periodic, reconstruct_pattern_seq, AutomaticWord};

use crate::error::{Error, Result};
use crate::words::{factors, period_exponent, toeplitz_prefix, PartialWord, PatternSeq, Sym};
use std::collections::{BTreeSet, HashSet};

/// All palindromic factors of `T(t)`, including the empty word.
pub fn find_palindromes(t: &PatternSeq) -> HashSet<PartialWord> {
    let w = toeplitz_prefix(t);
    let s = w.symbols();
    let n = s.len();
    let mut out = HashSet::new();
    out.insert(PartialWord::default());
    for center in 0..n {
        // odd lengths
        let mut r = 0usize;
        while center >= r && center + r < n && s[center - r] == s[center + r] {
            out.insert(w.factor(center - r, 2 * r + 1));
            r += 1;
        }
        // even lengths
        let mut r = 0usize;
        while center >= r && center + r + 1 < n && s[center - r] == s[center + r + 1] {
            out.insert(w.factor(center - r, 2 * r + 2));
            r += 1;
        }
    }
    out
}

/// The sixteen palindromes of the statement about palindromic factors.
pub fn expected_palindrome_set() -> HashSet<PartialWord> {
    [
        "", "0", "1", "?", "00", "11", "010", "101", "0110", "1001", "00100", "11011", "010010",
        "101101", "0110110", "1001001",
    ]
    .iter()
    .map(|s| PartialWord::parse(s).unwrap())
    .collect()
}

/// First occurrence `(position, period)` of a cube `xxx` with `|x| >= 1`.
pub fn find_cube(w: &PartialWord) -> Option<(usize, usize)> {
    let s = w.symbols();
    let n = s.len();
    for p in 1..=n / 3 {
        let mut streak = 0usize;
        for i in 0..n - p {
            if s[i] == s[i + p] {
                streak += 1;
                if streak >= 2 * p {
                    return Some((i + 1 - 2 * p, p));
                }
            } else {
                streak = 0;
            }
        }
    }
    None
}

/// Checks that `T(t)` contains a boolean factor of length `3^(l-2) - 1`
/// whose least period is exactly `3^(l-3)`, hence of exponent
/// `3 - 3^(3-l)`.
pub fn verify_critexp(t: &PatternSeq) -> Result<bool> {
    let l = t.len();
    if l < 4 {
        return Err(Error::Precondition(format!(
            "critical-exponent witness needs |t| >= 4, got {l}"
        )));
    }
    let length = 3usize.pow(l as u32 - 2) - 1;
    let period = 3usize.pow(l as u32 - 3);
    let w = toeplitz_prefix(t);
    let s = w.symbols();
    let hole = w.single_hole().expect("toeplitz word has one hole");
    for i in 0..=s.len() - length {
        if i <= hole && hole < i + length {
            continue; // not boolean
        }
        if (0..length - period).any(|j| s[i + j] != s[i + j + period]) {
            continue;
        }
        let (least, _) = period_exponent(&w.factor(i, length))?;
        if least == period {
            return Ok(true);
        }
    }
    Ok(false)
}

/// All orders `|x|` of squares `xx` occurring in `w` (boolean factors;
/// with a single hole this coincides with literal repetition).
pub fn square_orders(w: &PartialWord) -> BTreeSet<usize> {
    let s = w.symbols();
    let n = s.len();
    let mut out = BTreeSet::new();
    for m in 1..=n / 2 {
        let mut streak = 0usize;
        for i in 0..n - m {
            if s[i] == s[i + m] {
                streak += 1;
                if streak >= m {
                    out.insert(m);
                    break;
                }
            } else {
                streak = 0;
            }
        }
    }
    out
}

fn check_complexity_range(t: &PatternSeq, n: usize) -> Result<()> {
    let bound = 3usize.pow(t.len().saturating_sub(2) as u32);
    if n < 1 || n > bound || t.len() < 2 {
        return Err(Error::Precondition(format!(
            "factor length {n} outside 1..={bound} for |t| = {}",
            t.len()
        )));
    }
    Ok(())
}

/// Number of distinct boolean length-`n` factors of `T(t)`,
/// for `1 <= n <= 3^(|t|-2)`.
pub fn boolean_factor_count(t: &PatternSeq, n: usize) -> Result<usize> {
    check_complexity_range(t, n)?;
    Ok(factors(&toeplitz_prefix(t), n, true).len())
}

/// Boolean factors `x` of length `n` such that both `x0` and `x1` occur
/// in `T(t)`.
pub fn right_special(t: &PatternSeq, n: usize) -> Result<HashSet<PartialWord>> {
    check_complexity_range(t, n)?;
    let w = toeplitz_prefix(t);
    let longer = factors(&w, n + 1, true);
    let mut out = HashSet::new();
    for y in &longer {
        if y.get(n) == Sym::Zero {
            let mut other = y.symbols().to_vec();
            other[n] = Sym::One;
            if longer.contains(&PartialWord::new(other)) {
                out.insert(y.factor(0, n));
            }
        }
    }
    Ok(out)
}

/// Longest-common-extension table: `lce[i][j]` is the largest `k` with
/// `w[i..i+k] == w[j..j+k]`.
fn lce_table(s: &[Sym]) -> Vec<u16> {
    let n = s.len();
    let mut lce = vec![0u16; (n + 1) * (n + 1)];
    for i in (0..n).rev() {
        for j in (0..n).rev() {
            if s[i] == s[j] {
                lce[i * (n + 1) + j] = lce[(i + 1) * (n + 1) + j + 1] + 1;
            }
        }
    }
    lce
}

/// First occurrence `(i, m, n)` of the pattern `xxyyxx` with `|x| = m >= 1`
/// and `|y| = n >= 0`.
pub fn find_xxyyxx(w: &PartialWord) -> Option<(usize, usize, usize)> {
    let s = w.symbols();
    let len = s.len();
    if len < 4 {
        return None;
    }
    let lce = lce_table(s);
    let at = |i: usize, j: usize| lce[i * (len + 1) + j] as usize;
    for m in 1..=len / 4 {
        for i in 0..len - 4 * m + 1 {
            if at(i, i + m) < m {
                continue; // no xx here
            }
            let max_n = (len - i - 4 * m) / 2;
            for n in 0..=max_n {
                if n > 0 && at(i + 2 * m, i + 2 * m + n) < n {
                    continue;
                }
                if at(i, i + 2 * m + 2 * n) >= 2 * m {
                    return Some((i, m, n));
                }
            }
        }
    }
    None
}

/// Length of the longest common boolean factor, by quadratic dynamic
/// programming over common suffix lengths.
pub fn longest_common_factor(w1: &PartialWord, w2: &PartialWord) -> usize {
    let a = w1.symbols();
    let b = w2.symbols();
    let mut best = 0usize;
    let mut prev = vec![0u16; b.len() + 1];
    let mut cur = vec![0u16; b.len() + 1];
    for i in 0..a.len() {
        for j in 0..b.len() {
            cur[j + 1] = if a[i] == b[j] && a[i] != Sym::Hole {
                prev[j] + 1
            } else {
                0
            };
            best = best.max(cur[j + 1] as usize);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    best
}

/// First `(i, m)` with `w[i] = w[i+2m] = w[i+4m]` differing from
/// `w[i+m] = w[i+3m]`, i.e. `01010` or `10101` in arithmetic progression.
pub fn find_ap_alternation(w: &PartialWord) -> Option<(usize, usize)> {
    let s = w.symbols();
    let n = s.len();
    if n < 5 {
        return None;
    }
    for m in 1..=(n - 1) / 4 {
        for i in 0..n - 4 * m {
            if s[i] == s[i + 2 * m]
                && s[i] == s[i + 4 * m]
                && s[i + m] == s[i + 3 * m]
                && s[i] != s[i + m]
            {
                return Some((i, m));
            }
        }
    }
    None
}

/// Checks that every boolean length-`n` factor of `T(u)` occurs in `T(t)`,
/// for `t` a prefix of `u` and `n <= 3^(|t|-2)`.
pub fn check_factor_coverage(t: &PatternSeq, u: &PatternSeq, n: usize) -> Result<bool> {
    if !t.is_prefix_of(u) {
        return Err(Error::Precondition(format!("{t} is not a prefix of {u}")));
    }
    check_complexity_range(t, n)?;
    let small = factors(&toeplitz_prefix(t), n, true);
    let large = factors(&toeplitz_prefix(u), n, true);
    Ok(large.is_subset(&small))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{stewart_prefix, UltimatelyPeriodicSeq};

    fn seq(s: &str) -> PatternSeq {
        PatternSeq::parse(s).unwrap()
    }

    fn pw(s: &str) -> PartialWord {
        PartialWord::parse(s).unwrap()
    }

    #[test]
    fn palindromes_of_empty_seq() {
        let got = find_palindromes(&seq(""));
        let expect: HashSet<_> = [pw(""), pw("?")].into_iter().collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn palindromes_of_one_length_four_word() {
        let got = find_palindromes(&seq("afec"));
        assert_eq!(got, expected_palindrome_set());
    }

    #[test]
    fn cube_detection() {
        assert_eq!(find_cube(&pw("000")), Some((0, 1)));
        assert_eq!(find_cube(&pw("010010")), None);
        assert_eq!(find_cube(&pw("0101010")), Some((0, 2)));
        for t in PatternSeq::enumerate(3) {
            assert_eq!(find_cube(&toeplitz_prefix(&t)), None, "t={t}");
        }
    }

    #[test]
    fn critexp_needs_length_four() {
        assert!(verify_critexp(&seq("abc")).is_err());
        assert!(verify_critexp(&seq("aaaa")).unwrap());
        assert!(verify_critexp(&seq("cccc")).unwrap());
        assert!(verify_critexp(&seq("afec")).unwrap());
    }

    #[test]
    fn critexp_witness_exponent_value() {
        // exponent (3^(l-2) - 1) / 3^(l-3) equals 3 - 3^(3-l): 8/3 at
        // l = 4, 26/9 at l = 5
        for (l, num, den) in [(4u32, 8u64, 3u64), (5, 26, 9)] {
            let length = 3u64.pow(l - 2) - 1;
            let period = 3u64.pow(l - 3);
            let e = crate::rational::Rational::new(length, period);
            assert_eq!(e, crate::rational::Rational::new(num, den));
            // 3 - e = 3^(3-l) exactly: the numerator 3*period - length is 1
            assert_eq!(3 * period - length, 1);
        }
    }

    #[test]
    fn square_orders_examples() {
        assert!(square_orders(&pw("01")).is_empty());
        let orders = square_orders(&toeplitz_prefix(&seq("caca")));
        let allowed: BTreeSet<usize> = [1, 2, 3, 6, 9, 18, 27].into_iter().collect();
        assert!(orders.is_subset(&allowed), "{orders:?}");
        assert!(orders.contains(&1) && orders.contains(&2), "{orders:?}");
    }

    #[test]
    fn complexity_counts() {
        for t in ["abcd", "ffee", "cade"] {
            let t = seq(t);
            for n in 1..=9 {
                assert_eq!(boolean_factor_count(&t, n).unwrap(), 2 * n, "t={t} n={n}");
                assert_eq!(right_special(&t, n).unwrap().len(), 2, "t={t} n={n}");
            }
        }
        assert!(boolean_factor_count(&seq("abcd"), 10).is_err());
        assert!(boolean_factor_count(&seq("abcd"), 0).is_err());
        assert_eq!(
            right_special(&seq("abcd"), 1).unwrap().len(),
            2
        );
    }

    #[test]
    fn xxyyxx_detection() {
        assert_eq!(find_xxyyxx(&pw("001100")), Some((0, 1, 1)));
        assert_eq!(find_xxyyxx(&pw("01")), None);
        // x = 01, y empty would be 01010101: contains xxyyxx with m=2, n=0
        assert!(find_xxyyxx(&pw("01010101")).is_some());
        for t in PatternSeq::enumerate(3) {
            assert_eq!(find_xxyyxx(&toeplitz_prefix(&t)), None, "t={t}");
        }
    }

    #[test]
    fn lcf_basics() {
        assert_eq!(longest_common_factor(&pw("0101"), &pw("0101")), 4);
        assert_eq!(longest_common_factor(&pw("000"), &pw("111")), 0);
        assert_eq!(longest_common_factor(&pw("0?1"), &pw("0?1")), 1);
        // self-LCF of a one-hole word is its longest boolean run
        let w = toeplitz_prefix(&seq("adad"));
        let hole = w.single_hole().unwrap();
        let expect = hole.max(w.len() - 1 - hole);
        assert_eq!(longest_common_factor(&w, &w), expect);
    }

    #[test]
    fn ap_alternation() {
        assert_eq!(find_ap_alternation(&pw("01010")), Some((0, 1)));
        assert_eq!(find_ap_alternation(&pw("00000")), None);
        for t in PatternSeq::enumerate(3) {
            assert_eq!(find_ap_alternation(&toeplitz_prefix(&t)), None, "t={t}");
        }
    }

    #[test]
    fn coverage_trivial_and_preconditions() {
        let t = seq("abc");
        assert!(check_factor_coverage(&t, &t, 3).unwrap());
        assert!(check_factor_coverage(&t, &seq("abcde"), 3).unwrap());
        assert!(check_factor_coverage(&t, &seq("bbcde"), 3).is_err());
        assert!(check_factor_coverage(&t, &seq("abcde"), 4).is_err());
    }

    #[test]
    fn stewart_prefixes_avoid_cubes_too() {
        let t = UltimatelyPeriodicSeq::parse("(ab)").unwrap();
        let w = stewart_prefix(&t, 243, None).unwrap();
        assert_eq!(find_cube(&w), None);
    }
}
