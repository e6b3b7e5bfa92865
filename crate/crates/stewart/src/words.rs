//! Stewart patterns and the Toeplitz construction.
//!
//! A Stewart pattern is one of the six length-3 words over `{0,1,?}` that
//! use each symbol exactly once. A finite pattern sequence `t` determines
//! a finite word `toeplitz_prefix(t)` of length `3^|t|` containing exactly
//! one `?`; an infinite (ultimately periodic) sequence determines an
//! infinite binary word whose prefixes [`stewart_prefix`] computes.
//!
//! Pattern sequences also have a numeric view: letters a-f map to digits
//! 1-6 of an lsd-first base-7 integer, digit 0 being reserved for trailing
//! padding so that automata can compare sequences of different lengths.

use crate::error::{Error, Result};
use crate::rational::Rational;
use std::collections::HashSet;
use std::fmt;

/// One symbol of a partial word: `0`, `1`, or the hole `?` (numeric 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Sym {
    Zero = 0,
    One = 1,
    Hole = 2,
}

impl Sym {
    pub fn from_char(c: char) -> Result<Sym> {
        match c {
            '0' => Ok(Sym::Zero),
            '1' => Ok(Sym::One),
            '?' => Ok(Sym::Hole),
            _ => Err(Error::InvalidSymbol(c)),
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Sym::Zero => '0',
            Sym::One => '1',
            Sym::Hole => '?',
        }
    }

    pub fn as_u32(self) -> u32 {
        self as u32
    }

    pub fn from_u32(v: u32) -> Result<Sym> {
        match v {
            0 => Ok(Sym::Zero),
            1 => Ok(Sym::One),
            2 => Ok(Sym::Hole),
            _ => Err(Error::Precondition(format!("symbol value {v} out of range"))),
        }
    }

    pub fn is_boolean(self) -> bool {
        self != Sym::Hole
    }
}

/// One of the six Stewart patterns a-f.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    A,
    B,
    C,
    D,
    E,
    F,
}

pub const ALL_PATTERNS: [Pattern; 6] = [
    Pattern::A,
    Pattern::B,
    Pattern::C,
    Pattern::D,
    Pattern::E,
    Pattern::F,
];

impl Pattern {
    /// The fixed code table: a=01?, b=10?, c=0?1, d=1?0, e=?01, f=?10.
    pub fn symbols(self) -> [Sym; 3] {
        use Sym::*;
        match self {
            Pattern::A => [Zero, One, Hole],
            Pattern::B => [One, Zero, Hole],
            Pattern::C => [Zero, Hole, One],
            Pattern::D => [One, Hole, Zero],
            Pattern::E => [Hole, Zero, One],
            Pattern::F => [Hole, One, Zero],
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pattern::A => 'a',
            Pattern::B => 'b',
            Pattern::C => 'c',
            Pattern::D => 'd',
            Pattern::E => 'e',
            Pattern::F => 'f',
        }
    }

    /// Base-7 digit code (1-6); 0 is reserved for padding.
    pub fn digit(self) -> u32 {
        match self {
            Pattern::A => 1,
            Pattern::B => 2,
            Pattern::C => 3,
            Pattern::D => 4,
            Pattern::E => 5,
            Pattern::F => 6,
        }
    }

    pub fn from_letter(c: char) -> Result<Pattern> {
        match c {
            'a' => Ok(Pattern::A),
            'b' => Ok(Pattern::B),
            'c' => Ok(Pattern::C),
            'd' => Ok(Pattern::D),
            'e' => Ok(Pattern::E),
            'f' => Ok(Pattern::F),
            _ => Err(Error::InvalidPatternLetter(c)),
        }
    }

    pub fn from_digit(d: u32) -> Result<Pattern> {
        match d {
            1 => Ok(Pattern::A),
            2 => Ok(Pattern::B),
            3 => Ok(Pattern::C),
            4 => Ok(Pattern::D),
            5 => Ok(Pattern::E),
            6 => Ok(Pattern::F),
            _ => Err(Error::InvalidPatternDigit(d)),
        }
    }

    /// Index of the `?` within the pattern.
    pub fn hole_index(self) -> usize {
        self.symbols().iter().position(|&s| s == Sym::Hole).unwrap()
    }

    /// True for e and f, the patterns whose hole is at index 0.
    pub fn keeps_hole_fixed(self) -> bool {
        self.hole_index() == 0
    }
}

/// A finite sequence of Stewart patterns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PatternSeq(Vec<Pattern>);

impl PatternSeq {
    pub fn new(patterns: Vec<Pattern>) -> Self {
        PatternSeq(patterns)
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars().map(Pattern::from_letter).collect::<Result<_>>().map(PatternSeq)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.0
    }

    pub fn push(&mut self, g: Pattern) {
        self.0.push(g);
    }

    /// True if `self` is a prefix of `other`.
    pub fn is_prefix_of(&self, other: &PatternSeq) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// Lsd-first base-7 digits, one per letter, no padding.
    pub fn to_digits(&self) -> Vec<u32> {
        self.0.iter().map(|p| p.digit()).collect()
    }

    /// Reads digits 1-6 into letters; trailing zeros are stripped, an
    /// embedded zero is an error.
    pub fn from_digits(digits: &[u32]) -> Result<Self> {
        let mut end = digits.len();
        while end > 0 && digits[end - 1] == 0 {
            end -= 1;
        }
        let mut patterns = Vec::with_capacity(end);
        for (i, &d) in digits[..end].iter().enumerate() {
            if d == 0 {
                return Err(Error::EmbeddedZeroDigit(i));
            }
            patterns.push(Pattern::from_digit(d)?);
        }
        Ok(PatternSeq(patterns))
    }

    /// The base-7 integer this sequence represents.
    pub fn value(&self) -> u64 {
        self.0.iter().rev().fold(0u64, |acc, p| acc * 7 + p.digit() as u64)
    }

    /// Inverse of [`PatternSeq::value`]; errors only if a base-7 digit of
    /// `n` is 0 before a nonzero digit.
    pub fn from_value(n: u64) -> Result<Self> {
        let digits = crate::numeration::encode(n, 7);
        Self::from_digits(digits.digits())
    }

    /// All 6^len sequences of the given length.
    pub fn enumerate(len: usize) -> impl Iterator<Item = PatternSeq> {
        let total = 6u64.pow(len as u32);
        (0..total).map(move |mut i| {
            let mut patterns = Vec::with_capacity(len);
            for _ in 0..len {
                patterns.push(Pattern::from_digit((i % 6) as u32 + 1).unwrap());
                i /= 6;
            }
            PatternSeq(patterns)
        })
    }
}

impl fmt::Display for PatternSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

/// An ultimately periodic pattern sequence: `preperiod (period)^omega`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UltimatelyPeriodicSeq {
    preperiod: PatternSeq,
    period: PatternSeq,
}

impl UltimatelyPeriodicSeq {
    pub fn new(preperiod: PatternSeq, period: PatternSeq) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Precondition("period must be nonempty".into()));
        }
        Ok(UltimatelyPeriodicSeq { preperiod, period })
    }

    /// Parses the `pre(period)` syntax, e.g. `"(ad)"` or `"af(c)"`.
    pub fn parse(s: &str) -> Result<Self> {
        let open = s.find('(').ok_or_else(|| {
            Error::Precondition(format!("'{s}': expected pre(period) syntax"))
        })?;
        if !s.ends_with(')') {
            return Err(Error::Precondition(format!("'{s}': missing closing ')'")));
        }
        let pre = PatternSeq::parse(&s[..open])?;
        let per = PatternSeq::parse(&s[open + 1..s.len() - 1])?;
        Self::new(pre, per)
    }

    pub fn preperiod(&self) -> &PatternSeq {
        &self.preperiod
    }

    pub fn period(&self) -> &PatternSeq {
        &self.period
    }

    /// Pattern at stage `i` (0-based).
    pub fn nth(&self, i: usize) -> Pattern {
        if i < self.preperiod.len() {
            self.preperiod.patterns()[i]
        } else {
            let j = (i - self.preperiod.len()) % self.period.len();
            self.period.patterns()[j]
        }
    }

    /// True when every pattern from some point on keeps its hole fixed,
    /// i.e. the tail lies in {e,f}^omega and the limit word keeps a single
    /// permanent `?`.
    pub fn tail_keeps_hole(&self) -> bool {
        self.period.patterns().iter().all(|p| p.keeps_hole_fixed())
    }

    /// Minimal preperiod and primitive period representing the same
    /// infinite sequence.
    pub fn canonical(&self) -> Self {
        let mut period = self.period.patterns().to_vec();
        // primitive root of the period
        for d in 1..=period.len() {
            if period.len() % d == 0 && period.chunks(d).all(|c| c == &period[..d]) {
                period.truncate(d);
                break;
            }
        }
        let mut pre = self.preperiod.patterns().to_vec();
        while let Some(&last) = pre.last() {
            if last == *period.last().unwrap() {
                pre.pop();
                period.rotate_right(1);
            } else {
                break;
            }
        }
        UltimatelyPeriodicSeq {
            preperiod: PatternSeq(pre),
            period: PatternSeq(period),
        }
    }
}

impl fmt::Display for UltimatelyPeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.preperiod, self.period)
    }
}

/// A finite word over `{0,1,?}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PartialWord(Vec<Sym>);

impl PartialWord {
    pub fn new(symbols: Vec<Sym>) -> Self {
        PartialWord(symbols)
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.chars().map(Sym::from_char).collect::<Result<_>>().map(PartialWord)
    }

    pub fn hole() -> Self {
        PartialWord(vec![Sym::Hole])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Sym] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Sym {
        self.0[i]
    }

    pub fn is_boolean(&self) -> bool {
        self.0.iter().all(|s| s.is_boolean())
    }

    pub fn hole_positions(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Sym::Hole)
            .map(|(i, _)| i)
            .collect()
    }

    /// Position of the unique `?`, or an error if there is not exactly one.
    pub fn single_hole(&self) -> Result<usize> {
        let holes = self.hole_positions();
        if holes.len() != 1 {
            return Err(Error::HoleCount { found: holes.len() });
        }
        Ok(holes[0])
    }

    pub fn factor(&self, start: usize, len: usize) -> PartialWord {
        PartialWord(self.0[start..start + len].to_vec())
    }
}

impl fmt::Display for PartialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

/// Replaces the three `?` of `y^3`, in order, by the symbols of `g`.
///
/// `y` must contain exactly one `?`; the result again contains exactly one.
pub fn expand(y: &PartialWord, g: Pattern) -> Result<PartialWord> {
    let hole = y.single_hole()?;
    let n = y.len();
    let mut out = Vec::with_capacity(3 * n);
    for _ in 0..3 {
        out.extend_from_slice(y.symbols());
    }
    for (k, &sym) in g.symbols().iter().enumerate() {
        out[k * n + hole] = sym;
    }
    Ok(PartialWord(out))
}

/// The finite Toeplitz word `T(t)` of length `3^|t|`: the fold of
/// [`expand`] starting from `"?"`.
pub fn toeplitz_prefix(t: &PatternSeq) -> PartialWord {
    let mut w = PartialWord::hole();
    for &g in t.patterns() {
        w = expand(&w, g).expect("toeplitz words keep exactly one hole");
    }
    w
}

fn ceil_log3(n: usize) -> usize {
    let mut k = 0;
    let mut p = 1usize;
    while p < n {
        p *= 3;
        k += 1;
    }
    k
}

/// The length-`len` prefix of the infinite Stewart word determined by `t`.
///
/// Expands `ceil(log3 len) + 2` patterns, which pushes the unique hole past
/// `len` unless every later pattern keeps it fixed (tail in {e,f}^omega).
/// In that case the hole is resolved by `fill`, or reported as an error if
/// no fill symbol was given.
pub fn stewart_prefix(
    t: &UltimatelyPeriodicSeq,
    len: usize,
    fill: Option<Sym>,
) -> Result<PartialWord> {
    let stages = ceil_log3(len.max(1)) + 2;
    let mut seq = PatternSeq::default();
    for i in 0..stages {
        seq.push(t.nth(i));
    }
    let word = toeplitz_prefix(&seq);
    let hole = word.single_hole().expect("single hole invariant");
    let mut prefix: Vec<Sym> = word.symbols()[..len].to_vec();
    if hole < len {
        // The hole survives below `len` iff every remaining stage keeps it
        // fixed; the first stage that moves it writes its symbols[0] there.
        let mover = (stages..stages + t.preperiod().len() + t.period().len())
            .map(|i| t.nth(i))
            .find(|p| !p.keeps_hole_fixed());
        match mover {
            Some(g) => prefix[hole] = g.symbols()[0],
            None => match fill {
                Some(s) if s.is_boolean() => prefix[hole] = s,
                Some(_) => {
                    return Err(Error::Precondition("fill symbol must be boolean".into()))
                }
                None => return Err(Error::UnresolvedHole { position: hole }),
            },
        }
    }
    Ok(PartialWord(prefix))
}

/// A finite set of equal-length Toeplitz patterns over an arbitrary
/// alphabet plus `?`, each containing at least one hole.
#[derive(Debug, Clone)]
pub struct GenericPatternSet {
    alphabet: Vec<char>,
    patterns: Vec<Vec<char>>,
}

impl GenericPatternSet {
    pub fn new(alphabet: Vec<char>, patterns: Vec<&str>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::Precondition("pattern set must be nonempty".into()));
        }
        let patterns: Vec<Vec<char>> = patterns.iter().map(|p| p.chars().collect()).collect();
        let len = patterns[0].len();
        for p in &patterns {
            if p.len() != len {
                return Err(Error::Precondition("patterns must have equal length".into()));
            }
            if !p.iter().any(|&c| c == '?') {
                return Err(Error::Precondition("every pattern needs a '?'".into()));
            }
            for &c in p {
                if c != '?' && !alphabet.contains(&c) {
                    return Err(Error::InvalidSymbol(c));
                }
            }
        }
        Ok(GenericPatternSet { alphabet, patterns })
    }

    /// The six Stewart patterns as a generic set over {0,1}.
    pub fn stewart() -> Self {
        GenericPatternSet::new(vec!['0', '1'], vec!["01?", "10?", "0?1", "1?0", "?01", "?10"])
            .unwrap()
    }

    pub fn pattern(&self, index: usize) -> &[char] {
        &self.patterns[index]
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }
}

/// Runs `|choice|` substitution stages of the generic Toeplitz
/// construction and returns the length-`len` prefix; cells not resolved by
/// the last stage remain `?`.
pub fn generic_toeplitz_prefix(
    ps: &GenericPatternSet,
    choice: &[usize],
    len: usize,
) -> Result<String> {
    if len == 0 {
        return Ok(String::new());
    }
    if choice.is_empty() {
        return Err(Error::Precondition("choice must be nonempty".into()));
    }
    for &c in choice {
        if c >= ps.patterns.len() {
            return Err(Error::Precondition(format!("pattern index {c} out of range")));
        }
    }
    let first = &ps.patterns[choice[0]];
    let mut word: Vec<char> = (0..len).map(|i| first[i % first.len()]).collect();
    for &c in &choice[1..] {
        let pat = &ps.patterns[c];
        let holes: Vec<usize> = word
            .iter()
            .enumerate()
            .filter(|(_, &ch)| ch == '?')
            .map(|(i, _)| i)
            .collect();
        for (j, &pos) in holes.iter().enumerate() {
            word[pos] = pat[j % pat.len()];
        }
    }
    Ok(word.into_iter().collect())
}

/// Number of positions where the two length-3 patterns differ; `?` equals
/// only `?`.
pub fn hamming(g: Pattern, h: Pattern) -> usize {
    g.symbols()
        .iter()
        .zip(h.symbols().iter())
        .filter(|(a, b)| a != b)
        .count()
}

/// The two classes of pattern pairs that govern common factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    /// Hamming distance 0 or 3.
    InX,
    /// Hamming distance 2.
    InY,
}

pub fn classify_pair(g: Pattern, h: Pattern) -> PairClass {
    match hamming(g, h) {
        0 | 3 => PairClass::InX,
        2 => PairClass::InY,
        d => unreachable!("hamming distance {d} between Stewart patterns"),
    }
}

/// Distinct length-`n` factors of `w`; with `boolean_only`, factors
/// containing `?` are excluded.
pub fn factors(w: &PartialWord, n: usize, boolean_only: bool) -> HashSet<PartialWord> {
    let mut out = HashSet::new();
    if n > w.len() {
        return out;
    }
    for i in 0..=w.len() - n {
        let f = &w.symbols()[i..i + n];
        if boolean_only && f.iter().any(|&s| s == Sym::Hole) {
            continue;
        }
        out.insert(PartialWord(f.to_vec()));
    }
    out
}

/// Least period of `w` and the exact exponent `|w| / per(w)`.
pub fn period_exponent(w: &PartialWord) -> Result<(usize, Rational)> {
    let n = w.len();
    if n == 0 {
        return Err(Error::Precondition("period of the empty word".into()));
    }
    let s = w.symbols();
    let per = (1..=n)
        .find(|&p| (0..n - p).all(|i| s[i] == s[i + p]))
        .unwrap();
    Ok((per, Rational::new(n as u64, per as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pw(s: &str) -> PartialWord {
        PartialWord::parse(s).unwrap()
    }

    fn seq(s: &str) -> PatternSeq {
        PatternSeq::parse(s).unwrap()
    }

    #[test]
    fn pattern_table() {
        let table = [
            (Pattern::A, "01?"),
            (Pattern::B, "10?"),
            (Pattern::C, "0?1"),
            (Pattern::D, "1?0"),
            (Pattern::E, "?01"),
            (Pattern::F, "?10"),
        ];
        for (p, s) in table {
            assert_eq!(PartialWord::new(p.symbols().to_vec()), pw(s));
            let holes = pw(s).hole_positions();
            assert_eq!(holes.len(), 1);
            assert_eq!(p.hole_index(), holes[0]);
        }
    }

    #[test]
    fn expand_single_pattern() {
        assert_eq!(expand(&pw("?"), Pattern::A).unwrap(), pw("01?"));
    }

    #[test]
    fn expand_af() {
        assert_eq!(expand(&pw("01?"), Pattern::F).unwrap(), pw("01?011010"));
    }

    #[test]
    fn expand_cc() {
        assert_eq!(expand(&pw("0?1"), Pattern::C).unwrap(), pw("0010?1011"));
    }

    #[test]
    fn expand_rejects_bad_hole_count() {
        assert!(expand(&pw("01"), Pattern::A).is_err());
        assert!(expand(&pw("??"), Pattern::A).is_err());
    }

    #[test]
    fn toeplitz_empty() {
        assert_eq!(toeplitz_prefix(&seq("")), pw("?"));
    }

    #[test]
    fn toeplitz_afe() {
        assert_eq!(
            toeplitz_prefix(&seq("afe")),
            pw("01?011010010011010011011010")
        );
    }

    #[test]
    fn toeplitz_cc_matches_expand_chain() {
        let direct = toeplitz_prefix(&seq("cc"));
        let chained = expand(&expand(&pw("?"), Pattern::C).unwrap(), Pattern::C).unwrap();
        assert_eq!(direct, chained);
        assert_eq!(direct, pw("0010?1011"));
    }

    #[test]
    fn stewart_choral_prefix() {
        let t = UltimatelyPeriodicSeq::parse("(c)").unwrap();
        assert_eq!(stewart_prefix(&t, 9, None).unwrap(), pw("001001011"));
    }

    #[test]
    fn stewart_sierpinski_prefix() {
        let t = UltimatelyPeriodicSeq::parse("(ab)").unwrap();
        assert_eq!(stewart_prefix(&t, 9, None).unwrap(), pw("011010010"));
    }

    #[test]
    fn stewart_ef_tail_needs_fill() {
        let t = UltimatelyPeriodicSeq::parse("(e)").unwrap();
        assert!(matches!(
            stewart_prefix(&t, 3, None),
            Err(Error::UnresolvedHole { position: 0 })
        ));
        assert_eq!(stewart_prefix(&t, 3, Some(Sym::Zero)).unwrap(), pw("001"));
        assert_eq!(stewart_prefix(&t, 3, Some(Sym::One)).unwrap(), pw("101"));
    }

    #[test]
    fn stewart_zero_length() {
        let t = UltimatelyPeriodicSeq::parse("(f)").unwrap();
        assert_eq!(stewart_prefix(&t, 0, None).unwrap(), pw(""));
    }

    /// Independent oracle for the choral sequence: fixed point of
    /// 0 -> 001, 1 -> 011.
    fn choral_morphism_prefix(k: usize) -> PartialWord {
        let mut w = vec![Sym::Zero];
        for _ in 0..k {
            let mut next = Vec::with_capacity(3 * w.len());
            for &s in &w {
                match s {
                    Sym::Zero => next.extend([Sym::Zero, Sym::Zero, Sym::One]),
                    Sym::One => next.extend([Sym::Zero, Sym::One, Sym::One]),
                    Sym::Hole => unreachable!(),
                }
            }
            w = next;
        }
        PartialWord::new(w)
    }

    #[test]
    fn choral_matches_morphism_fixed_point() {
        let t = UltimatelyPeriodicSeq::parse("(c)").unwrap();
        for k in 0..6 {
            let len = 3usize.pow(k);
            assert_eq!(
                stewart_prefix(&t, len, None).unwrap(),
                choral_morphism_prefix(k as usize),
                "k={k}"
            );
        }
    }

    #[test]
    fn generic_paperfolding_stages() {
        let ps = GenericPatternSet::new(vec!['0', '1'], vec!["0?1?"]).unwrap();
        assert_eq!(
            generic_toeplitz_prefix(&ps, &[0], 8).unwrap(),
            "0?1?0?1?"
        );
        assert_eq!(
            generic_toeplitz_prefix(&ps, &[0, 0, 0, 0], 32).unwrap(),
            "001001100011011?001001110011011?"
        );
    }

    #[test]
    fn generic_agrees_with_stewart_toeplitz() {
        let ps = GenericPatternSet::stewart();
        // choice "af" = indices 0, 5
        let got = generic_toeplitz_prefix(&ps, &[0, 5], 9).unwrap();
        assert_eq!(got, toeplitz_prefix(&seq("af")).to_string());
    }

    #[test]
    fn hamming_table() {
        assert_eq!(hamming(Pattern::A, Pattern::B), 2);
        assert_eq!(hamming(Pattern::A, Pattern::A), 0);
        assert_eq!(hamming(Pattern::A, Pattern::D), 3);
    }

    #[test]
    fn classify_exhaustive() {
        let mut x = 0;
        let mut y = 0;
        for &g in &ALL_PATTERNS {
            for &h in &ALL_PATTERNS {
                let d = hamming(g, h);
                assert!(matches!(d, 0 | 2 | 3), "H({g:?},{h:?}) = {d}");
                assert_eq!(hamming(g, h), hamming(h, g));
                assert_eq!(d == 0, g == h);
                match classify_pair(g, h) {
                    PairClass::InX => x += 1,
                    PairClass::InY => y += 1,
                }
            }
        }
        assert_eq!((x, y), (18, 18));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_pair(Pattern::A, Pattern::B), PairClass::InY);
        assert_eq!(classify_pair(Pattern::C, Pattern::C), PairClass::InX);
        assert_eq!(classify_pair(Pattern::A, Pattern::D), PairClass::InX);
    }

    #[test]
    fn factor_sets() {
        let f = factors(&pw("01?"), 1, false);
        assert_eq!(f.len(), 3);
        // direct scan of "01?011010": windows 01,1?,?0,01,11,10,01,10
        let f = factors(&pw("01?011010"), 2, true);
        let expect: HashSet<_> = ["01", "10", "11"].iter().map(|s| pw(s)).collect();
        assert_eq!(f, expect);
        assert_eq!(factors(&pw("0101"), 0, true), HashSet::from([pw("")]));
    }

    #[test]
    fn period_exponent_basics() {
        assert_eq!(period_exponent(&pw("0101")).unwrap(), (2, Rational::from(2)));
        assert_eq!(period_exponent(&pw("000")).unwrap(), (1, Rational::from(3)));
        assert!(period_exponent(&pw("")).is_err());
    }

    #[test]
    fn pattern_seq_numeric_view() {
        let t = seq("afe");
        assert_eq!(t.to_digits(), vec![1, 6, 5]);
        assert_eq!(t.value(), 1 + 6 * 7 + 5 * 49);
        assert_eq!(PatternSeq::from_value(t.value()).unwrap(), t);
        assert_eq!(PatternSeq::from_digits(&[1, 6, 5, 0, 0]).unwrap(), t);
        assert!(PatternSeq::from_digits(&[1, 0, 5]).is_err());
    }

    #[test]
    fn canonical_forms() {
        let u = UltimatelyPeriodicSeq::parse("a(dada)").unwrap().canonical();
        assert_eq!(u.to_string(), "(ad)");
        let v = UltimatelyPeriodicSeq::parse("(cc)").unwrap().canonical();
        assert_eq!(v.to_string(), "(c)");
        let w = UltimatelyPeriodicSeq::parse("ab(ab)").unwrap().canonical();
        assert_eq!(w.to_string(), "(ab)");
    }

    proptest! {
        #[test]
        fn toeplitz_length_and_hole(letters in proptest::collection::vec(0u32..6, 0..6)) {
            let t = PatternSeq::new(letters.iter().map(|&d| Pattern::from_digit(d + 1).unwrap()).collect());
            let w = toeplitz_prefix(&t);
            prop_assert_eq!(w.len(), 3usize.pow(t.len() as u32));
            prop_assert_eq!(w.hole_positions().len(), 1);
        }

        #[test]
        fn toeplitz_prefix_monotone(letters in proptest::collection::vec(0u32..6, 1..6), cut in 0usize..5) {
            let t = PatternSeq::new(letters.iter().map(|&d| Pattern::from_digit(d + 1).unwrap()).collect());
            let cut = cut % t.len();
            let shorter = PatternSeq::new(t.patterns()[..cut].to_vec());
            let big = toeplitz_prefix(&t);
            let small = toeplitz_prefix(&shorter);
            // expansion only fills holes: boolean positions never change
            for i in 0..small.len() {
                if small.get(i) != Sym::Hole {
                    prop_assert_eq!(small.get(i), big.get(i));
                }
            }
        }

        #[test]
        fn period_is_minimal(sym in proptest::collection::vec(0u8..2, 1..24)) {
            let w = PartialWord::new(sym.iter().map(|&b| if b == 0 { Sym::Zero } else { Sym::One }).collect());
            let (p, e) = period_exponent(&w).unwrap();
            let s = w.symbols();
            prop_assert!((0..w.len() - p).all(|i| s[i] == s[i + p]));
            for q in 1..p {
                prop_assert!(!(0..w.len() - q).all(|i| s[i] == s[i + q]));
            }
            prop_assert_eq!(e, Rational::new(w.len() as u64, p as u64));
        }
    }
}
