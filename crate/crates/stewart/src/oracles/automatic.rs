//! Automaticity of Stewart words with ultimately periodic pattern
//! sequences: building a single-track DFAO for the word, and reading the
//! pattern sequence back off such a DFAO.

use crate::automata::{minimize_dfao, MultiTrackDfao, StateCap};
use crate::error::{Error, Result};
use crate::words::{Pattern, PatternSeq, UltimatelyPeriodicSeq, ALL_PATTERNS};

/// A DFAO computing `T(t)[n]` on base-3 input, for ultimately periodic
/// `t`. When the tail of `t` keeps the hole fixed ({e,f} patterns only),
/// the word retains a single permanent `?` and the automaton outputs 2
/// there; `permanent_hole` flags that case.
#[derive(Debug, Clone)]
pub struct AutomaticWord {
    pub dfao: MultiTrackDfao,
    pub permanent_hole: bool,
}

/// Product of the Stewart automaton with the (deterministic) recognizer
/// of prefixes of `t`, projected onto the position track: since the
/// pattern letter at each stage is forced by `t`, the projection is just
/// a state pairing of the Stewart automaton with a cyclic stage counter.
pub fn dfao_from_periodic(t: &UltimatelyPeriodicSeq, cap: &StateCap) -> Result<AutomaticWord> {
    let tp = crate::automata::stewart_automaton();
    let pre = t.preperiod().len();
    let cycle = pre + t.period().len();
    let advance = |pos: usize| if pos + 1 == cycle { pre } else { pos + 1 };

    let mut ids = std::collections::HashMap::new();
    let mut states: Vec<(u32, usize)> = vec![(tp.initial(), 0)];
    ids.insert(states[0], 0u32);
    let mut trans = Vec::new();
    let mut head = 0;
    while head < states.len() {
        if states.len() > cap.states {
            return Err(Error::StateCap(format!(
                "{} states while pairing the Stewart automaton with the stage cycle",
                states.len()
            )));
        }
        let (q, pos) = states[head];
        head += 1;
        let letter = t.nth(pos).digit();
        for d in 0..3u32 {
            let tuple = crate::automata::letter_of(&[7, 3], &[letter, d]);
            let next = (
                tp.step(q, tuple).expect("letters 1-6 are total on live states"),
                advance(pos),
            );
            let id = *ids.entry(next).or_insert_with(|| {
                states.push(next);
                states.len() as u32 - 1
            });
            trans.push(id);
        }
    }

    // The lsd encoding of n stops at its last nonzero digit, but later
    // stages (digit 0) may still fill the position's hole. The output of
    // a state is therefore the limit value along its zero-digit chain; a
    // cycle of holes means the `?` never resolves.
    let n = states.len();
    let mut outputs = vec![u32::MAX; n];
    for s in 0..n {
        if outputs[s] != u32::MAX {
            continue;
        }
        let mut path = vec![s];
        let mut cur = s;
        let value = loop {
            let (q, _) = states[cur];
            if tp.output(q) != 2 {
                break tp.output(q);
            }
            let next = trans[cur * 3] as usize;
            if outputs[next] != u32::MAX {
                break outputs[next];
            }
            if path.contains(&next) {
                break 2;
            }
            path.push(next);
            cur = next;
        };
        for p in path {
            outputs[p] = value;
        }
    }
    let dfao = MultiTrackDfao::new(vec![3], 0, outputs, trans)?;
    Ok(AutomaticWord {
        dfao: minimize_dfao(&dfao),
        permanent_hole: t.tail_keeps_hole(),
    })
}

/// Reads the pattern sequence element by element off a base-3 DFAO
/// computing a Stewart word.
///
/// At each stage the outputs on all nine two-digit inputs give the next
/// nine word values; exactly two residue classes mod 3 must be constant
/// boolean values (every Stewart pattern contains both 0 and 1, so the
/// hole class always mixes). The constant classes name the pattern, the
/// hole class names the digit to advance on, and revisiting a state
/// closes the period.
pub fn reconstruct_pattern_seq(m: &MultiTrackDfao) -> Result<UltimatelyPeriodicSeq> {
    if m.track_bases() != [3] {
        return Err(Error::BaseMismatch(format!(
            "reconstruction needs a single base-3 track, got {:?}",
            m.track_bases()
        )));
    }
    let mut visited: std::collections::HashMap<u32, usize> = std::collections::HashMap::new();
    let mut letters: Vec<Pattern> = Vec::new();
    let mut q = m.initial();
    loop {
        if let Some(&start) = visited.get(&q) {
            let pre = PatternSeq::new(letters[..start].to_vec());
            let per = PatternSeq::new(letters[start..].to_vec());
            return Ok(UltimatelyPeriodicSeq::new(pre, per)?.canonical());
        }
        visited.insert(q, letters.len());

        let mut word9 = [0u32; 9];
        for d0 in 0..3usize {
            for d1 in 0..3usize {
                let q1 = m
                    .step(q, d0)
                    .and_then(|s| m.step(s, d1))
                    .ok_or_else(|| Error::NotStewart("outputs undefined on two-digit inputs".into()))?;
                word9[d0 + 3 * d1] = m.output(q1);
            }
        }

        let mut symbols = [None::<u32>; 3]; // constant value per residue class
        let mut holes = Vec::new();
        for r in 0..3 {
            let vals = [word9[r], word9[r + 3], word9[r + 6]];
            if vals[0] == vals[1] && vals[1] == vals[2] {
                symbols[r] = Some(vals[0]);
            } else {
                holes.push(r);
            }
        }
        if holes.len() != 1 {
            return Err(Error::NotStewart(format!(
                "{} residue classes are non-constant over the first nine positions, expected 1",
                holes.len()
            )));
        }
        let hole = holes[0];
        let pattern = ALL_PATTERNS.iter().copied().find(|p| {
            p.hole_index() == hole
                && (0..3).all(|r| {
                    r == hole || symbols[r] == Some(p.symbols()[r].as_u32())
                })
        });
        let Some(pattern) = pattern else {
            return Err(Error::NotStewart(format!(
                "first nine positions {word9:?} match no Stewart pattern"
            )));
        };
        letters.push(pattern);
        q = m
            .step(q, hole)
            .ok_or_else(|| Error::NotStewart("hole digit leads off the table".into()))?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::eval_dfao;
    use crate::numeration::align_values;
    use crate::words::{stewart_prefix, Sym};

    fn ups(s: &str) -> UltimatelyPeriodicSeq {
        UltimatelyPeriodicSeq::parse(s).unwrap()
    }

    #[test]
    fn dfao_matches_word_prefix() {
        for spec in ["(ad)", "(c)", "af(c)", "(abcdef)"] {
            let t = ups(spec);
            let auto = dfao_from_periodic(&t, &StateCap::default()).unwrap();
            assert!(!auto.permanent_hole);
            let w = stewart_prefix(&t, 243, None).unwrap();
            for n in 0..243u64 {
                let got = eval_dfao(&auto.dfao, &align_values(&[(n, 3)])).unwrap();
                assert_eq!(got, Some(w.get(n as usize).as_u32()), "{spec} at {n}");
            }
        }
    }

    #[test]
    fn dfao_flags_permanent_hole() {
        let t = ups("(e)");
        let auto = dfao_from_periodic(&t, &StateCap::default()).unwrap();
        assert!(auto.permanent_hole);
        // the hole of (e)^omega stays at position 0
        let got = eval_dfao(&auto.dfao, &align_values(&[(0, 3)])).unwrap();
        assert_eq!(got, Some(2));
        let w = stewart_prefix(&t, 81, Some(Sym::Zero)).unwrap();
        for n in 1..81u64 {
            let got = eval_dfao(&auto.dfao, &align_values(&[(n, 3)])).unwrap();
            assert_eq!(got, Some(w.get(n as usize).as_u32()));
        }
    }

    #[test]
    fn roundtrip_examples() {
        for spec in ["(ad)", "(c)", "(e)", "a(b)", "fa(cd)", "(abcdef)"] {
            let t = ups(spec).canonical();
            let auto = dfao_from_periodic(&t, &StateCap::default()).unwrap();
            let back = reconstruct_pattern_seq(&auto.dfao).unwrap();
            assert_eq!(back, t, "{spec}");
        }
    }

    #[test]
    fn roundtrip_all_single_letters() {
        for &p in &ALL_PATTERNS {
            let t = UltimatelyPeriodicSeq::new(PatternSeq::default(), PatternSeq::new(vec![p]))
                .unwrap();
            let auto = dfao_from_periodic(&t, &StateCap::default()).unwrap();
            let back = reconstruct_pattern_seq(&auto.dfao).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn constant_dfao_is_rejected() {
        // single state, output 0, loops on every digit
        let m = MultiTrackDfao::new(vec![3], 0, vec![0], vec![0, 0, 0]).unwrap();
        assert!(matches!(
            reconstruct_pattern_seq(&m),
            Err(Error::NotStewart(_))
        ));
    }

    #[test]
    fn two_constant_classes_exhaustively() {
        // over the first nine positions exactly two residue classes are
        // constant; the nine-prefix of T(t) only depends on the first few
        // letters, so length 5 covers every case that length 6 does
        for len in 2..=5usize {
            for t in PatternSeq::enumerate(len) {
                let w = crate::words::toeplitz_prefix(&t);
                let mut constant = 0;
                for r in 0..3 {
                    let vals = [w.get(r), w.get(r + 3), w.get(r + 6)];
                    if vals[0] == vals[1] && vals[1] == vals[2] {
                        constant += 1;
                    }
                }
                assert_eq!(constant, 2, "t={t}");
            }
        }
    }
}
