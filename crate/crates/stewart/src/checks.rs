//! Named check suites: brute-force sweeps over pattern sequences that
//! re-verify each decided statement at configurable bounds.
//!
//! Sequence lengths up to 5 are swept exhaustively; beyond that,
//! sequences are sampled with a seeded generator and the seed is
//! reported, so runs are reproducible.

use crate::automata::StateCap;
use crate::error::{Error, Result};
use crate::oracles;
use crate::words::{
    classify_pair, factors, toeplitz_prefix, PairClass, PartialWord, Pattern, PatternSeq,
    UltimatelyPeriodicSeq, ALL_PATTERNS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

pub const CHECK_IDS: [&str; 10] = [
    "palindromes",
    "cubes",
    "critexp",
    "squares",
    "complexity",
    "xxyyxx",
    "common",
    "automatic",
    "ap",
    "thm3",
];

const EXHAUSTIVE_MAX: usize = 5;
const SAMPLES_PER_LEN: usize = 500;

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Maximum pattern-sequence length to sweep; each check has its own
    /// default.
    pub len: Option<usize>,
    pub seed: u64,
    pub state_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            len: None,
            seed: 1,
            state_cap: StateCap::default().states,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub passed: bool,
    pub seed: u64,
    pub elapsed_ms: u128,
    pub details: Vec<String>,
    pub witnesses: Vec<String>,
}

impl CheckReport {
    fn new(id: &str, seed: u64) -> Self {
        CheckReport {
            id: id.to_string(),
            passed: true,
            seed,
            elapsed_ms: 0,
            details: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    fn fail(&mut self, witness: String) {
        self.passed = false;
        if self.witnesses.len() < 20 {
            self.witnesses.push(witness);
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = format!(
            "check {}: {} ({} ms, seed {})\n",
            self.id,
            if self.passed { "pass" } else { "FAIL" },
            self.elapsed_ms,
            self.seed
        );
        for d in &self.details {
            out.push_str(&format!("  {d}\n"));
        }
        for w in &self.witnesses {
            out.push_str(&format!("  witness: {w}\n"));
        }
        out
    }
}

fn random_seq(rng: &mut ChaCha8Rng, len: usize) -> PatternSeq {
    PatternSeq::new(
        (0..len)
            .map(|_| Pattern::from_digit(rng.gen_range(1..=6)).unwrap())
            .collect(),
    )
}

/// Applies `f` to every sequence of each length up to the exhaustive
/// bound, then to seeded samples per longer length.
fn sweep(
    max_len: usize,
    seed: u64,
    min_len: usize,
    mut f: impl FnMut(&PatternSeq) -> Result<()>,
) -> Result<(usize, usize)> {
    let mut exhaustive = 0usize;
    let mut sampled = 0usize;
    if max_len >= min_len {
        for len in min_len..=max_len.min(EXHAUSTIVE_MAX) {
            for t in PatternSeq::enumerate(len) {
                f(&t)?;
                exhaustive += 1;
            }
        }
    }
    if max_len > EXHAUSTIVE_MAX {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for len in (EXHAUSTIVE_MAX + 1).max(min_len)..=max_len {
            for _ in 0..SAMPLES_PER_LEN {
                f(&random_seq(&mut rng, len))?;
                sampled += 1;
            }
        }
    }
    Ok((exhaustive, sampled))
}

pub fn run_check(id: &str, opts: &CheckOptions) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = match id {
        "palindromes" => check_palindromes(opts),
        "cubes" => check_cubes(opts),
        "critexp" => check_critexp(opts),
        "squares" => check_squares(opts),
        "complexity" => check_complexity(opts),
        "xxyyxx" => check_xxyyxx(opts),
        "common" => check_common(opts),
        "automatic" => check_automatic(opts),
        "ap" => check_ap(opts),
        "thm3" => check_thm3(opts),
        other => return Err(Error::UnknownName(format!("check '{other}'"))),
    }?;
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

fn check_palindromes(opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("palindromes", opts.seed);
    let max_len = opts.len.unwrap_or(4);
    let expected = oracles::expected_palindrome_set();
    let (ex, sa) = sweep(max_len, opts.seed, 0, |t| {
        let got = oracles::find_palindromes(t);
        if t.len() >= 4 {
            if got != expected {
                report.fail(format!(
                    "t={t}: palindrome set has {} elements, expected 16",
                    got.len()
                ));
            }
        } else if !got.is_subset(&expected) {
            report.fail(format!("t={t}: unexpected palindrome"));
        }
        Ok(())
    })?;
    report
        .details
        .push(format!("{ex} sequences exhaustively, {sa} sampled"));
    Ok(report)
}

fn check_cubes(opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("cubes", opts.seed);
    let max_len = opts.len.unwrap_or(7);
    let (ex, sa) = sweep(max_len, opts.seed, 0, |t| {
        if let Some((i, p)) = oracles::find_cube(&toeplitz_prefix(t)) {
            report.fail(format!("t={t}: cube of period {p} at {i}"));
        }
        Ok(())
    })?;
    report
        .details
        .push(format!("{ex} sequences exhaustively, {sa} sampled"));
    Ok(report)
}

fn check_critexp(opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("critexp", opts.seed);
    let max_len = opts.len.unwrap_or(5);
    if max_len < 4 {
        return Err(Error::Precondition("critexp needs --len at least 4".into()));
    }
    let (ex, sa) = sweep(max_len, opts.seed, 4, |t| {
        if !oracles::verify_critexp(t)? {
            report.fail(format!("t={t}: no factor of the promised period/length"));
        }
        Ok(())
    })?;
    report.details.push(format!(
        "{ex} sequences exhaustively, {sa} sampled; witness exponent 3-3^(3-l) checked exactly"
    ));
    Ok(report)
}

fn allowed_square_orders(limit: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 1usize;
    while p <= limit {
        out.push(p);
        if 2 * p <= limit {
            out.push(2 * p);
        }
        p *= 3;
    }
    out.sort_unstable();
    out
}

fn check_squares(opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("squares", opts.seed);
    let max_len = opts.len.unwrap_or(5);
    let (ex, sa) = sweep(max_len, opts.seed, 1, |t| {
        let word_len = 3usize.pow(t.len() as u32);
        let orders = oracles::square_orders(&toeplitz_prefix(t));
        let allowed = allowed_square_orders(word_len / 2);
        for &o in &orders {
            if !allowed.contains(&o) {
                report.fail(format!("t={t}: square of forbidden order {o}"));
            }
        }
        // orders guaranteed by the prefix bound 36n <= 3^|t| must occur
        for &o in allowed.iter().filter(|&&o| 36 * o <= word_len) {
            if !orders.contains(&o) {
                report.fail(format!("t={t}: guaranteed order {o} missing"));
            }
        }
        Ok(())
    })?;
    report
        .details
        .push(format!("{ex} sequences exhaustively, {sa} sampled"));
    Ok(report)
}

fn check_complexity(opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("complexity", opts.seed);
    let max_len = opts.len.unwrap_or(4);
    if max_len < 2 {
        return Err(Error::Precondition(
            "complexity needs --len at least 2".into(),
        ));
    }
    let (ex, sa) = sweep(max_len, opts.seed, 2, |t| {
        let bound = 3usize.pow(t.len() as u32 - 2);
        for n in 1..=bound {
            let count = oracles::boolean_factor_count(t, n)?;
            if count != 2 * n {
                report.fail(format!(
                    "t={t}, n={n}: {count} boolean factors, expected {}",
                    2 * n
                ));
            }
            let rs = oracles::right_special(t, n)?.len();
            if rs != 2 {
                report.fail(format!(
                    "t={t}, n={n}: {rs} right-special factors, expected 2"
                ));
            }
        }
        Ok(())
    })?;
    report
        .details
        .push(format!("{ex} sequences exhaustively, {sa} sampled"));
    Ok(report)
}

fn check_xxyyxx(opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("xxyyxx", opts.seed);
    let max_len = opts.len.unwrap_or(5);
    let (ex, sa) = sweep(max_len, opts.seed, 0, |t| {
        if let Some((i, m, n)) = oracles::find_xxyyxx(&toeplitz_prefix(t)) {
            report.fail(format!("t={t}: xxyyxx at i={i}, |x|={m}, |y|={n}"));
        }
        Ok(())
    })?;
    report
        .details
        .push(format!("{ex} sequences exhaustively, {sa} sampled"));
    Ok(report)
}

fn check_ap(opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("ap", opts.seed);
    let max_len = opts.len.unwrap_or(5);
    let (ex, sa) = sweep(max_len, opts.seed, 0, |t| {
        if let Some((i, m)) = oracles::find_ap_alternation(&toeplitz_prefix(t)) {
            report.fail(format!("t={t}: alternation at i={i}, step {m}"));
        }
        Ok(())
    })?;
    report
        .details
        .push(format!("{ex} sequences exhaustively, {sa} sampled"));
    Ok(report)
}

fn first_non_x_index(t: &PatternSeq, u: &PatternSeq) -> Option<usize> {
    t.patterns()
        .iter()
        .zip(u.patterns())
        .position(|(&a, &b)| classify_pair(a, b) == PairClass::InY)
}

fn check_common(opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("common", opts.seed);
    let len = opts.len.unwrap_or(4).max(2);
    let samples = 100_000usize;

    // direction 1: all pattern pairs in X gives a long common factor
    let words: Vec<(PatternSeq, PartialWord)> = PatternSeq::enumerate(len)
        .map(|t| {
            let w = toeplitz_prefix(&t);
            (t, w)
        })
        .collect();
    let x_partners: Vec<Vec<Pattern>> = ALL_PATTERNS
        .iter()
        .map(|&g| {
            ALL_PATTERNS
                .iter()
                .copied()
                .filter(|&h| classify_pair(g, h) == PairClass::InX)
                .collect()
        })
        .collect();
    let threshold = 3usize.pow(len as u32 - 2);
    let mut all_x_pairs = 0usize;
    for (t, wt) in &words {
        // enumerate u with every pair in X
        let mut partners: Vec<PatternSeq> = vec![PatternSeq::default()];
        for &g in t.patterns() {
            let mut next = Vec::new();
            for stem in &partners {
                for &h in &x_partners[(g.digit() - 1) as usize] {
                    let mut s = stem.clone();
                    s.push(h);
                    next.push(s);
                }
            }
            partners = next;
        }
        for u in partners {
            all_x_pairs += 1;
            let wu = toeplitz_prefix(&u);
            let lcf = oracles::longest_common_factor(wt, &wu);
            if lcf < threshold {
                report.fail(format!(
                    "t={t}, u={u}: all pairs in X but longest common factor {lcf} < {threshold}"
                ));
            }
        }
    }

    // direction 2: a pair leaving X at index j bounds common factors by 3^(j+2)
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut checked = 0usize;
    for _ in 0..samples {
        let t = random_seq(&mut rng, len);
        let u = random_seq(&mut rng, len);
        if let Some(j) = first_non_x_index(&t, &u) {
            let bound = 3usize.pow(j as u32 + 2);
            let lcf = oracles::longest_common_factor(&toeplitz_prefix(&t), &toeplitz_prefix(&u));
            if lcf > bound {
                report.fail(format!(
                    "t={t}, u={u}: first non-X index {j} but common factor {lcf} > {bound}"
                ));
            }
            checked += 1;
        }
    }
    report.details.push(format!(
        "{all_x_pairs} all-X pairs exhaustively (factor >= {threshold}), {checked} sampled pairs against the 3^(j+2) bound"
    ));
    Ok(report)
}

fn check_automatic(opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("automatic", opts.seed);
    let rounds = opts.len.unwrap_or(20);
    let cap = StateCap::new(opts.state_cap);
    let mut cases = vec![
        UltimatelyPeriodicSeq::parse("(ad)").unwrap(),
        UltimatelyPeriodicSeq::parse("(c)").unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..rounds {
        let pre_len = rng.gen_range(0..=2);
        let per_len = rng.gen_range(1..=3);
        let pre = random_seq(&mut rng, pre_len);
        let per = random_seq(&mut rng, per_len);
        cases.push(UltimatelyPeriodicSeq::new(pre, per).unwrap());
    }
    for t in &cases {
        let canonical = t.canonical();
        let auto = oracles::dfao_from_periodic(&canonical, &cap)?;
        match oracles::reconstruct_pattern_seq(&auto.dfao) {
            Ok(back) if back == canonical => {}
            Ok(back) => report.fail(format!("{canonical} reconstructed as {back}")),
            Err(e) => report.fail(format!("{canonical}: {e}")),
        }
    }
    report.details.push(format!(
        "{} round-trips (preperiod <= 2, period <= 3)",
        cases.len()
    ));
    Ok(report)
}

fn check_thm3(opts: &CheckOptions) -> Result<CheckReport> {
    let mut report = CheckReport::new("thm3", opts.seed);
    let tlen = opts.len.unwrap_or(3).clamp(2, 4);
    let ulen = tlen + 2;
    let bound = 3usize.pow(tlen as u32 - 2);
    let mut pairs = 0usize;
    for t in PatternSeq::enumerate(tlen) {
        let small: Vec<_> = (1..=bound)
            .map(|n| factors(&toeplitz_prefix(&t), n, true))
            .collect();
        for ext in PatternSeq::enumerate(ulen - tlen) {
            let mut u = t.clone();
            for &g in ext.patterns() {
                u.push(g);
            }
            let wu = toeplitz_prefix(&u);
            for n in 1..=bound {
                if !factors(&wu, n, true).is_subset(&small[n - 1]) {
                    report.fail(format!(
                        "t={t}, u={u}, n={n}: factor of T(u) missing from T(t)"
                    ));
                }
            }
            pairs += 1;
        }
    }
    // optimality: some extension introduces a new factor one past the bound
    let mut witness = None;
    'outer: for t in PatternSeq::enumerate(tlen) {
        let small = factors(&toeplitz_prefix(&t), bound + 1, true);
        for ext in PatternSeq::enumerate(ulen - tlen) {
            let mut u = t.clone();
            for &g in ext.patterns() {
                u.push(g);
            }
            if !factors(&toeplitz_prefix(&u), bound + 1, true).is_subset(&small) {
                witness = Some((t.clone(), u));
                break 'outer;
            }
        }
    }
    match witness {
        Some((t, u)) => report.details.push(format!(
            "{pairs} (t,u) pairs covered for n <= {bound}; bound optimal: length-{} counterexample at t={t}, u={u}",
            bound + 1
        )),
        None => report.fail(format!(
            "no length-{} counterexample found; the bound should be optimal",
            bound + 1
        )),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_check_id() {
        assert!(run_check("nonsense", &CheckOptions::default()).is_err());
    }

    #[test]
    fn quick_checks_pass() {
        for (id, len) in [
            ("palindromes", 4),
            ("cubes", 4),
            ("critexp", 4),
            ("squares", 4),
            ("complexity", 3),
            ("xxyyxx", 4),
            ("ap", 4),
            ("thm3", 3),
        ] {
            let opts = CheckOptions {
                len: Some(len),
                ..CheckOptions::default()
            };
            let report = run_check(id, &opts).unwrap();
            assert!(report.passed, "{id}: {:?}", report.witnesses);
        }
    }

    #[test]
    fn automatic_check_passes() {
        let opts = CheckOptions {
            len: Some(10),
            ..CheckOptions::default()
        };
        let report = run_check("automatic", &opts).unwrap();
        assert!(report.passed, "{:?}", report.witnesses);
    }

    #[test]
    fn cubes_vacuous_at_len_zero() {
        let opts = CheckOptions {
            len: Some(0),
            ..CheckOptions::default()
        };
        let report = run_check("cubes", &opts).unwrap();
        assert!(report.passed);
    }
}
