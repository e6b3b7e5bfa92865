//! Built-in relation automata: the atoms of the query language.
//!
//! Everything here reads lsd-first digit tuples. The comparison and
//! addition relations are direct carry/verdict constructions; constant
//! multiplication is composed by binary doubling from the addition
//! relation, and floor division by a constant is expressed as
//! `x = c*y + r, r < c`.
//!
//! The named predicates of the word queries (`pref`, `link`, `bnd`,
//! `power3`, `differ`) are compiled from their defining regular
//! expressions, verbatim.

pub mod regex;

pub use regex::{compile_regex, RegexOverTuples};

use crate::automata::{
    add_track, map_tracks, minimize, product, project, BoolOp, MultiTrackDfa, StateCap,
};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::sync::OnceLock;

fn cap() -> StateCap {
    // constructions here are bounded by the constant and the base
    StateCap::default()
}

/// Two-track equality in base `k`.
pub fn rel_eq(k: u32) -> MultiTrackDfa {
    let bases = vec![k, k];
    let alpha = (k * k) as usize;
    let mut trans = Vec::with_capacity(2 * alpha);
    for letter in 0..alpha {
        let (a, b) = (letter as u32 % k, letter as u32 / k);
        trans.push(if a == b { 0 } else { 1 });
    }
    trans.extend(std::iter::repeat(1).take(alpha));
    MultiTrackDfa::new(bases, 0, vec![true, false], trans).unwrap()
}

fn rel_cmp(k: u32, accept_lt: bool, accept_eq: bool, accept_gt: bool) -> MultiTrackDfa {
    // lsd-first: the verdict belongs to the most significant differing
    // digit, i.e. the last differing tuple read. States: eq, lt, gt.
    let bases = vec![k, k];
    let alpha = (k * k) as usize;
    let mut trans = Vec::with_capacity(3 * alpha);
    for state in 0..3u32 {
        for letter in 0..alpha {
            let (a, b) = (letter as u32 % k, letter as u32 / k);
            trans.push(match a.cmp(&b) {
                std::cmp::Ordering::Equal => state,
                std::cmp::Ordering::Less => 1,
                std::cmp::Ordering::Greater => 2,
            });
        }
    }
    MultiTrackDfa::new(bases, 0, vec![accept_eq, accept_lt, accept_gt], trans).unwrap()
}

/// Two-track strict order `x < y` in base `k`.
pub fn rel_lt(k: u32) -> MultiTrackDfa {
    rel_cmp(k, true, false, false)
}

/// Two-track order `x <= y` in base `k`.
pub fn rel_leq(k: u32) -> MultiTrackDfa {
    rel_cmp(k, true, true, false)
}

/// Three-track addition `x + y = z` in base `k`, tracking the carry.
pub fn rel_add(k: u32) -> MultiTrackDfa {
    let bases = vec![k, k, k];
    let alpha = (k * k * k) as usize;
    // states: carry 0, carry 1, dead
    let mut trans = Vec::with_capacity(3 * alpha);
    for carry in 0..2u32 {
        for letter in 0..alpha {
            let a = letter as u32 % k;
            let b = (letter as u32 / k) % k;
            let s = letter as u32 / (k * k);
            let sum = a + b + carry;
            trans.push(if sum % k == s { sum / k } else { 2 });
        }
    }
    trans.extend(std::iter::repeat(2).take(alpha));
    MultiTrackDfa::new(bases, 0, vec![true, false, false], trans).unwrap()
}

/// One-track recognizer of the single value `c` in base `k`.
pub fn const_eq(c: u64, k: u32) -> MultiTrackDfa {
    // state = value still to be read; digit d works iff base divides v - d
    let mut ids: HashMap<u64, u32> = HashMap::new();
    let mut todo = vec![c];
    ids.insert(c, 0);
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut i = 0;
    while i < todo.len() {
        let v = todo[i];
        i += 1;
        let mut row = Vec::with_capacity(k as usize);
        for d in 0..k as u64 {
            if d <= v && (v - d) % k as u64 == 0 {
                let next = (v - d) / k as u64;
                let id = *ids.entry(next).or_insert_with(|| {
                    todo.push(next);
                    todo.len() as u32 - 1
                });
                row.push(id);
            } else {
                row.push(u32::MAX); // dead, patched below
            }
        }
        rows.push(row);
    }
    let dead = rows.len() as u32;
    let mut trans = Vec::with_capacity((rows.len() + 1) * k as usize);
    for row in rows {
        for cell in row {
            trans.push(if cell == u32::MAX { dead } else { cell });
        }
    }
    trans.extend(std::iter::repeat(dead).take(k as usize));
    let mut accepting: Vec<bool> = todo.iter().map(|&v| v == 0).collect();
    accepting.push(false);
    MultiTrackDfa::new(vec![k], 0, accepting, trans).unwrap()
}

/// One-track recognizer of `x < c` in base `k`.
pub fn lt_const(c: u64, k: u32) -> MultiTrackDfa {
    let lt = rel_lt(k);
    let cst = add_track(&const_eq(c, k), 0, k).unwrap(); // (x, w): w = c
    let both = product(&lt, &cst, BoolOp::And, &cap()).unwrap();
    project(&both, 1, &cap()).unwrap()
}

/// Composes two 2-track relations: `(x, y)` accepted iff some `u` has
/// `r1(x, u)` and `r2(u, y)`.
fn compose(r1: &MultiTrackDfa, r2: &MultiTrackDfa) -> Result<MultiTrackDfa> {
    let bx = r1.track_bases()[0];
    let bu = r1.track_bases()[1];
    let by = r2.track_bases()[1];
    if r2.track_bases()[0] != bu {
        return Err(Error::BaseMismatch("relation composition".into()));
    }
    let lifted1 = add_track(r1, 2, by)?; // (x, u, y)
    let lifted2 = map_tracks(r2, vec![bx, bu, by], &[1, 2])?;
    let joined = product(&lifted1, &lifted2, BoolOp::And, &cap())?;
    project(&joined, 1, &cap())
}

/// Two-track doubling relation `2x = y`: the addition relation with its
/// two summand tracks merged.
fn rel_double(k: u32) -> MultiTrackDfa {
    minimize(&map_tracks(&rel_add(k), vec![k, k], &[0, 0, 1]).unwrap())
}

/// Two-track relation `c * x = y` in base `k`, built by binary doubling
/// compositions of the addition relation.
pub fn mul_const(c: u64, k: u32) -> Result<MultiTrackDfa> {
    if c == 0 {
        return Err(Error::Precondition("multiplier must be positive".into()));
    }
    let double = rel_double(k);
    let mut rel = rel_eq(k); // c' = 1
    let bits = 64 - c.leading_zeros();
    for i in (0..bits - 1).rev() {
        rel = compose(&rel, &double)?;
        if (c >> i) & 1 == 1 {
            // y = u + x: wire addition as (u, x, y)
            let lifted = add_track(&rel, 2, k)?; // (x, u, y)
            let add = map_tracks(&rel_add(k), vec![k, k, k], &[1, 0, 2])?;
            let joined = product(&lifted, &add, BoolOp::And, &cap())?;
            rel = project(&joined, 1, &cap())?;
        }
    }
    Ok(rel)
}

/// Two-track relation `y = floor(x / c)` in base `k`: there is a
/// remainder `r < c` with `c*y + r = x`.
pub fn div_const(c: u64, k: u32) -> Result<MultiTrackDfa> {
    if c == 0 {
        return Err(Error::Precondition("divisor must be positive".into()));
    }
    let bases4 = vec![k, k, k, k]; // (r, u, x, y)
    let mul = map_tracks(&mul_const(c, k)?, bases4.clone(), &[3, 1])?; // u = c*y
    let add = map_tracks(&rel_add(k), bases4.clone(), &[1, 0, 2])?; // u + r = x
    let rem = map_tracks(&lt_const(c, k), bases4, &[0])?; // r < c
    let joined = product(&product(&mul, &add, BoolOp::And, &cap())?, &rem, BoolOp::And, &cap())?;
    let no_r = project(&joined, 0, &cap())?; // (u, x, y)
    project(&no_r, 0, &cap()) // (x, y)
}

const PREF_REGEX: &str = "([1,1]|[2,2]|[3,3]|[4,4]|[5,5]|[6,6])*\
                          ([0,1]|[0,2]|[0,3]|[0,4]|[0,5]|[0,6])*[0,0]*";

const LINK_REGEX: &str = "([0,1]|[0,2]|[0,3]|[0,4]|[0,5]|[0,6])*[1,0][0,0]*";

const BND_REGEX: &str = "([0,0]|[1,0]|[2,0])*[0,1][0,0]*|[0,0]*[1,1][0,0]*";

const POWER3_REGEX: &str = "0*10*";

const DIFFER_REGEX: &str = "([1,1,0]|[1,4,0]|[1,5,0]|[2,2,0]|[2,3,0]|[2,6,0]|\
                            [3,2,0]|[3,3,0]|[3,6,0]|[4,1,0]|[4,4,0]|[4,5,0]|\
                            [5,1,0]|[5,4,0]|[5,5,0]|[6,2,0]|[6,3,0]|[6,6,0])*\
                            ([1,2,1]|[1,3,1]|[1,6,1]|[2,1,1]|[2,4,1]|[2,5,1]|\
                            [3,1,1]|[3,4,1]|[3,5,1]|[4,2,1]|[4,3,1]|[4,6,1]|\
                            [5,2,1]|[5,3,1]|[5,6,1]|[6,1,1]|[6,4,1]|[6,5,1])\
                            ([1,1,0]|[1,2,0]|[1,3,0]|[1,4,0]|[1,5,0]|[1,6,0]|\
                            [2,1,0]|[2,2,0]|[2,3,0]|[2,4,0]|[2,5,0]|[2,6,0]|\
                            [3,1,0]|[3,2,0]|[3,3,0]|[3,4,0]|[3,5,0]|[3,6,0]|\
                            [4,1,0]|[4,2,0]|[4,3,0]|[4,4,0]|[4,5,0]|[4,6,0]|\
                            [5,1,0]|[5,2,0]|[5,3,0]|[5,4,0]|[5,5,0]|[5,6,0]|\
                            [6,1,0]|[6,2,0]|[6,3,0]|[6,4,0]|[6,5,0]|[6,6,0])*\
                            [0,0,0]*";

fn compile_builtin(bases: &[u32], text: &str) -> MultiTrackDfa {
    let r = RegexOverTuples::parse(bases.to_vec(), text).expect("builtin regex parses");
    compile_regex(&r, &cap()).expect("builtin regex compiles")
}

/// `pref(t, u)`: `t` is a prefix of `u`, both read as base-7 pattern
/// sequences; trailing zeros are ignored. `pref(t, t)` doubles as a
/// validity check, since embedded zero digits never match.
pub fn builtin_pref() -> &'static MultiTrackDfa {
    static A: OnceLock<MultiTrackDfa> = OnceLock::new();
    A.get_or_init(|| compile_builtin(&[7, 7], PREF_REGEX))
}

/// `link(x, t)`: `x = 3^|t|`, linking the base-3 track to the base-7 one.
pub fn builtin_link() -> &'static MultiTrackDfa {
    static A: OnceLock<MultiTrackDfa> = OnceLock::new();
    A.get_or_init(|| compile_builtin(&[3, 7], LINK_REGEX))
}

/// `bnd(x, y)` from its defining regex. The regex accepts exactly the
/// pairs with `y` a power of 3 and `x <= y`; the intended graph
/// `y = 3^ceil(log3 x)` is contained in it.
pub fn builtin_bnd() -> &'static MultiTrackDfa {
    static A: OnceLock<MultiTrackDfa> = OnceLock::new();
    A.get_or_init(|| compile_builtin(&[3, 3], BND_REGEX))
}

/// `power3(x)`: `x` is a power of 3 (including 1).
pub fn builtin_power3() -> &'static MultiTrackDfa {
    static A: OnceLock<MultiTrackDfa> = OnceLock::new();
    A.get_or_init(|| compile_builtin(&[3], POWER3_REGEX))
}

/// `differ(t, u, x)`: `x = 3^j` where `j` is the first index at which the
/// pattern pair of `t` and `u` falls outside the class X (Hamming
/// distance 0 or 3); `t` and `u` must have the same length.
pub fn builtin_differ() -> &'static MultiTrackDfa {
    static A: OnceLock<MultiTrackDfa> = OnceLock::new();
    A.get_or_init(|| compile_builtin(&[7, 7, 3], DIFFER_REGEX))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{enumerate, equivalent, is_padding_stable};
    use crate::words::{classify_pair, PairClass, PatternSeq, ALL_PATTERNS};
    use rand::{Rng, SeedableRng};

    #[test]
    fn eq_lt_leq_small() {
        let eq = rel_eq(3);
        let lt = rel_lt(3);
        assert!(eq.accepts_values(&[5, 5]).unwrap());
        assert!(!eq.accepts_values(&[5, 6]).unwrap());
        assert!(lt.accepts_values(&[2, 10]).unwrap());
        for x in 0..=30u64 {
            for y in 0..=30u64 {
                assert_eq!(eq.accepts_values(&[x, y]).unwrap(), x == y);
                assert_eq!(lt.accepts_values(&[x, y]).unwrap(), x < y);
                assert_eq!(rel_leq(3).accepts_values(&[x, y]).unwrap(), x <= y);
            }
        }
    }

    #[test]
    fn leq_is_lt_or_eq() {
        for k in [3u32, 7] {
            let union = product(&rel_lt(k), &rel_eq(k), BoolOp::Or, &StateCap::default()).unwrap();
            assert!(equivalent(&union, &rel_leq(k)).unwrap());
        }
    }

    #[test]
    fn addition_digits_and_oracle() {
        let add = rel_add(3);
        assert!(add.accepts_values(&[1, 2, 3]).unwrap());
        for n in 0..=100u64 {
            assert!(add.accepts_values(&[0, n, n]).unwrap());
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let x = rng.gen_range(0u64..3000);
            let y = rng.gen_range(0u64..3000);
            let z = rng.gen_range(0u64..6000);
            assert_eq!(add.accepts_values(&[x, y, z]).unwrap(), x + y == z);
        }
        assert!(is_padding_stable(&add));
    }

    #[test]
    fn const_recognizers() {
        for c in [0u64, 1, 9, 10, 243] {
            let a = const_eq(c, 3);
            for x in 0..=300u64 {
                assert_eq!(a.accepts_values(&[x]).unwrap(), x == c, "c={c} x={x}");
            }
            assert!(is_padding_stable(&a));
        }
        let lt5 = lt_const(5, 3);
        for x in 0..=30u64 {
            assert_eq!(lt5.accepts_values(&[x]).unwrap(), x < 5);
        }
    }

    #[test]
    fn mul_const_oracle() {
        assert!(mul_const(2, 3).unwrap().accepts_values(&[5, 10]).unwrap());
        assert!(mul_const(0, 3).is_err());
        assert!(equivalent(&mul_const(1, 3).unwrap(), &rel_eq(3)).unwrap());
        for c in [2u64, 3, 9, 36, 243] {
            let m = mul_const(c, 3).unwrap();
            for x in 0..=100u64 {
                for y in (c * x).saturating_sub(2)..=c * x + 2 {
                    assert_eq!(m.accepts_values(&[x, y]).unwrap(), c * x == y, "c={c} x={x} y={y}");
                }
            }
            assert!(is_padding_stable(&m));
        }
    }

    #[test]
    fn div_const_oracle() {
        assert!(div_const(9, 3).unwrap().accepts_values(&[81, 9]).unwrap());
        assert!(div_const(27, 3).unwrap().accepts_values(&[81, 3]).unwrap());
        assert!(div_const(0, 3).is_err());
        for c in [2u64, 3, 27, 36] {
            let d = div_const(c, 3).unwrap();
            for x in 0..=200u64 {
                for y in (x / c).saturating_sub(1)..=x / c + 1 {
                    assert_eq!(d.accepts_values(&[x, y]).unwrap(), x / c == y, "c={c} x={x} y={y}");
                }
            }
        }
    }

    #[test]
    fn power3_language() {
        let p = builtin_power3();
        let got = enumerate(p, 4);
        assert_eq!(got, vec![vec![1], vec![3], vec![9], vec![27]]);
        for x in 0..=200u64 {
            let expect = matches!(x, 1 | 3 | 9 | 27 | 81);
            assert_eq!(p.accepts_values(&[x]).unwrap(), expect, "x={x}");
        }
    }

    #[test]
    fn link_oracle() {
        let link = builtin_link();
        let af = PatternSeq::parse("af").unwrap().value();
        assert!(link.accepts_values(&[9, af]).unwrap());
        assert!(!link.accepts_values(&[3, af]).unwrap());
        for t in 0..=400u64 {
            let len = PatternSeq::from_value(t).ok().map(|s| s.len());
            for x in 0..=100u64 {
                let expect = len.is_some_and(|l| x == 3u64.pow(l as u32));
                assert_eq!(link.accepts_values(&[x, t]).unwrap(), expect, "x={x} t={t}");
            }
        }
    }

    #[test]
    fn pref_oracle() {
        let pref = builtin_pref();
        let v = |s: &str| PatternSeq::parse(s).unwrap().value();
        assert!(pref.accepts_values(&[v("af"), v("afe")]).unwrap());
        assert!(!pref.accepts_values(&[v("fe"), v("afe")]).unwrap());
        for t in 0..=200u64 {
            for u in 0..=200u64 {
                let expect = match (PatternSeq::from_value(t), PatternSeq::from_value(u)) {
                    (Ok(ts), Ok(us)) => ts.is_prefix_of(&us),
                    _ => false,
                };
                assert_eq!(pref.accepts_values(&[t, u]).unwrap(), expect, "t={t} u={u}");
            }
        }
    }

    #[test]
    fn pref_self_is_validity() {
        let pref = builtin_pref();
        for t in 0..=500u64 {
            assert_eq!(
                pref.accepts_values(&[t, t]).unwrap(),
                PatternSeq::from_value(t).is_ok(),
                "t={t}"
            );
        }
    }

    #[test]
    fn bnd_regex_semantics() {
        let bnd = builtin_bnd();
        let is_pow3 = |y: u64| y > 0 && {
            let mut v = y;
            while v % 3 == 0 {
                v /= 3;
            }
            v == 1
        };
        for x in 0..=200u64 {
            for y in 0..=200u64 {
                assert_eq!(
                    bnd.accepts_values(&[x, y]).unwrap(),
                    is_pow3(y) && x <= y,
                    "x={x} y={y}"
                );
            }
        }
        // the intended graph y = 3^ceil(log3 x) is contained
        for x in 1..=200u64 {
            let mut y = 1u64;
            while y < x {
                y *= 3;
            }
            assert!(bnd.accepts_values(&[x, y]).unwrap(), "x={x} y={y}");
        }
        assert!(bnd.accepts_values(&[5, 9]).unwrap());
        assert!(bnd.accepts_values(&[9, 9]).unwrap());
    }

    #[test]
    fn differ_partitions_pairs() {
        let differ = builtin_differ();
        for &g in &ALL_PATTERNS {
            for &h in &ALL_PATTERNS {
                let t = PatternSeq::new(vec![g]).value();
                let u = PatternSeq::new(vec![h]).value();
                let expect = classify_pair(g, h) == PairClass::InY;
                assert_eq!(
                    differ.accepts_values(&[t, u, 1]).unwrap(),
                    expect,
                    "pair ({},{})",
                    g.letter(),
                    h.letter()
                );
            }
        }
    }

    #[test]
    fn differ_finds_first_non_x_index() {
        let differ = builtin_differ();
        // t = ad..., u = bd...: (a,b) is in Y, so x = 1
        let t = PatternSeq::parse("ad").unwrap().value();
        let u = PatternSeq::parse("bd").unwrap().value();
        assert!(differ.accepts_values(&[t, u, 1]).unwrap());
        assert!(!differ.accepts_values(&[t, u, 3]).unwrap());
        // equal sequences have no differing position
        for s in ["a", "cf", "ade"] {
            let v = PatternSeq::parse(s).unwrap().value();
            for x in 0..=81u64 {
                assert!(!differ.accepts_values(&[v, v, x]).unwrap());
            }
        }
        // exhaustive word-level oracle at length 2
        for ts in PatternSeq::enumerate(2) {
            for us in PatternSeq::enumerate(2) {
                let first_y = (0..2).find(|&i| {
                    classify_pair(ts.patterns()[i], us.patterns()[i]) == PairClass::InY
                });
                for x in 0..=20u64 {
                    let expect = first_y.is_some_and(|j| x == 3u64.pow(j as u32));
                    assert_eq!(
                        differ.accepts_values(&[ts.value(), us.value(), x]).unwrap(),
                        expect,
                        "t={ts} u={us} x={x}"
                    );
                }
            }
        }
    }
}
