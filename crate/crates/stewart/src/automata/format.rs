//! Text interchange for automata.
//!
//! The layout matches the appendix word-automaton file: a header line of
//! per-track numeration tags (`lsd_7 lsd_3`), then blank-line-separated
//! state blocks. Each block starts with `name output` (or `name flag` for
//! recognizers) followed by transition lines `d1 d2 ... -> target`. The
//! first block is the initial state.
//!
//! Tables may be partial, but every state must define its all-zero
//! transition and that successor must carry the same output; otherwise
//! trailing zero padding could change the result, which the lsd-first
//! conventions forbid.

use super::{alphabet_size, digits_of, letter_of, MultiTrackDfa, MultiTrackDfao, NO_STATE};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt::Write as _;

fn parse_header(line: &str, lineno: usize) -> Result<Vec<u32>> {
    let mut bases = Vec::new();
    for tag in line.split_whitespace() {
        let base = tag
            .strip_prefix("lsd_")
            .and_then(|b| b.parse::<u32>().ok())
            .filter(|&b| b >= 2)
            .ok_or_else(|| Error::WalnutParse {
                line: lineno,
                msg: format!("bad numeration tag '{tag}' (only lsd_<k> is supported)"),
            })?;
        bases.push(base);
    }
    if bases.is_empty() {
        return Err(Error::WalnutParse {
            line: lineno,
            msg: "empty header".into(),
        });
    }
    Ok(bases)
}

struct Block {
    name: u64,
    output: u32,
    lineno: usize,
    transitions: Vec<(Vec<u32>, u64, usize)>, // digits, target name, line
}

/// Reads a word automaton (DFAO) in the appendix text format.
pub fn read_walnut(text: &str) -> Result<MultiTrackDfao> {
    let mut lines = text.lines().enumerate().peekable();

    // header is the first nonblank line
    let (header_no, header) = loop {
        match lines.next() {
            Some((i, l)) if l.trim().is_empty() => {
                let _ = i;
            }
            Some((i, l)) => break (i + 1, l),
            None => {
                return Err(Error::WalnutParse {
                    line: 0,
                    msg: "empty file".into(),
                })
            }
        }
    };
    let bases = parse_header(header, header_no)?;
    let tracks = bases.len();

    let mut blocks: Vec<Block> = Vec::new();
    let mut current: Option<Block> = None;
    for (i, raw) in lines {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            if let Some(b) = current.take() {
                blocks.push(b);
            }
            continue;
        }
        if let Some(arrow) = line.find("->") {
            let b = current.as_mut().ok_or_else(|| Error::WalnutParse {
                line: lineno,
                msg: "transition before any state header".into(),
            })?;
            let digits: Vec<u32> = line[..arrow]
                .split_whitespace()
                .map(|d| {
                    d.parse::<u32>().map_err(|_| Error::WalnutParse {
                        line: lineno,
                        msg: format!("bad digit '{d}'"),
                    })
                })
                .collect::<Result<_>>()?;
            if digits.len() != tracks {
                return Err(Error::WalnutParse {
                    line: lineno,
                    msg: format!("{} digits for {} tracks", digits.len(), tracks),
                });
            }
            for (t, (&d, &base)) in digits.iter().zip(&bases).enumerate() {
                if d >= base {
                    return Err(Error::WalnutParse {
                        line: lineno,
                        msg: format!("digit {d} out of range for base {base} on track {t}"),
                    });
                }
            }
            let target = line[arrow + 2..].trim().parse::<u64>().map_err(|_| {
                Error::WalnutParse {
                    line: lineno,
                    msg: "bad transition target".into(),
                }
            })?;
            b.transitions.push((digits, target, lineno));
        } else {
            // state header: "name output"
            if let Some(b) = current.take() {
                blocks.push(b);
            }
            let mut parts = line.split_whitespace();
            let (name, output) = match (parts.next(), parts.next(), parts.next()) {
                (Some(n), Some(o), None) => {
                    let name = n.parse::<u64>().map_err(|_| Error::WalnutParse {
                        line: lineno,
                        msg: format!("bad state name '{n}'"),
                    })?;
                    let output = o.parse::<u32>().map_err(|_| Error::WalnutParse {
                        line: lineno,
                        msg: format!("bad output '{o}'"),
                    })?;
                    (name, output)
                }
                _ => {
                    return Err(Error::WalnutParse {
                        line: lineno,
                        msg: format!("expected 'state output', got '{line}'"),
                    })
                }
            };
            current = Some(Block {
                name,
                output,
                lineno,
                transitions: Vec::new(),
            });
        }
    }
    if let Some(b) = current.take() {
        blocks.push(b);
    }
    if blocks.is_empty() {
        return Err(Error::WalnutParse {
            line: header_no,
            msg: "no state blocks".into(),
        });
    }

    let mut ids: HashMap<u64, u32> = HashMap::new();
    for (i, b) in blocks.iter().enumerate() {
        if ids.insert(b.name, i as u32).is_some() {
            return Err(Error::WalnutParse {
                line: b.lineno,
                msg: format!("duplicate state '{}'", b.name),
            });
        }
    }

    let alpha = alphabet_size(&bases);
    let n = blocks.len();
    let mut outputs = Vec::with_capacity(n);
    let mut trans = vec![NO_STATE; n * alpha];
    for (q, b) in blocks.iter().enumerate() {
        outputs.push(b.output);
        for (digits, target, lineno) in &b.transitions {
            let letter = letter_of(&bases, digits);
            let &to = ids.get(target).ok_or_else(|| Error::WalnutParse {
                line: *lineno,
                msg: format!("unknown target state '{target}'"),
            })?;
            if trans[q * alpha + letter] != NO_STATE {
                return Err(Error::WalnutParse {
                    line: *lineno,
                    msg: format!("duplicate transition for digits {digits:?}"),
                });
            }
            trans[q * alpha + letter] = to;
        }
    }

    // padding check: the all-zero transition must exist and preserve output
    for (q, b) in blocks.iter().enumerate() {
        let t = trans[q * alpha];
        if t == NO_STATE {
            return Err(Error::WalnutParse {
                line: b.lineno,
                msg: format!(
                    "state '{}' omits its all-zero transition; trailing padding would be undefined",
                    b.name
                ),
            });
        }
        if outputs[t as usize] != b.output {
            return Err(Error::WalnutParse {
                line: b.lineno,
                msg: format!(
                    "state '{}' changes output under zero padding ({} -> {})",
                    b.name, b.output, outputs[t as usize]
                ),
            });
        }
    }

    MultiTrackDfao::new(bases, 0, outputs, trans)
}

fn write_blocks(
    out: &mut String,
    bases: &[u32],
    num_states: usize,
    output: impl Fn(usize) -> u32,
    target: impl Fn(usize, usize) -> Option<u32>,
    initial: usize,
) {
    let alpha = alphabet_size(bases);
    writeln!(
        out,
        "{}",
        bases
            .iter()
            .map(|b| format!("lsd_{b}"))
            .collect::<Vec<_>>()
            .join(" ")
    )
    .unwrap();
    let order = std::iter::once(initial).chain((0..num_states).filter(|&q| q != initial));
    for q in order {
        writeln!(out, "{} {}", q, output(q)).unwrap();
        for letter in 0..alpha {
            if let Some(t) = target(q, letter) {
                let digits = digits_of(bases, letter)
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                writeln!(out, "{digits} -> {t}").unwrap();
            }
        }
        writeln!(out).unwrap();
    }
}

/// Serializes a DFAO in the appendix layout; the initial state's block
/// comes first.
pub fn write_walnut(m: &MultiTrackDfao) -> String {
    let mut out = String::new();
    let alpha = m.alphabet();
    write_blocks(
        &mut out,
        m.track_bases(),
        m.num_states(),
        |q| m.output(q as u32),
        |q, letter| {
            let t = m.raw_trans()[q * alpha + letter];
            (t != NO_STATE).then_some(t)
        },
        m.initial() as usize,
    );
    out
}

/// Serializes a recognizer with its accepting flag in the output column.
pub fn walnut_text_of_dfa(a: &MultiTrackDfa) -> String {
    let mut out = String::new();
    write_blocks(
        &mut out,
        a.track_bases(),
        a.num_states(),
        |q| a.is_accepting(q as u32) as u32,
        |q, letter| Some(a.step(q as u32, letter)),
        a.initial() as usize,
    );
    out
}

fn edge_labels(bases: &[u32], letters: &[usize], alpha: usize) -> String {
    if letters.len() == alpha {
        return "*".to_string();
    }
    letters
        .iter()
        .map(|&l| {
            let d = digits_of(bases, l);
            if d.len() == 1 {
                d[0].to_string()
            } else {
                format!(
                    "[{}]",
                    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                )
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Graphviz rendering of a DFAO; nodes are labeled `name/output`.
pub fn dfao_to_dot(m: &MultiTrackDfao) -> String {
    let alpha = m.alphabet();
    let mut out = String::from("digraph dfao {\n  rankdir=LR;\n");
    writeln!(out, "  init [shape=point];").unwrap();
    for q in 0..m.num_states() {
        writeln!(out, "  q{q} [shape=circle, label=\"{}/{}\"];", q, m.output(q as u32)).unwrap();
    }
    writeln!(out, "  init -> q{};", m.initial()).unwrap();
    for q in 0..m.num_states() {
        let mut by_target: HashMap<u32, Vec<usize>> = HashMap::new();
        for letter in 0..alpha {
            if let Some(t) = m.step(q as u32, letter) {
                by_target.entry(t).or_default().push(letter);
            }
        }
        let mut targets: Vec<_> = by_target.into_iter().collect();
        targets.sort();
        for (t, letters) in targets {
            writeln!(
                out,
                "  q{q} -> q{t} [label=\"{}\"];",
                edge_labels(m.track_bases(), &letters, alpha)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Graphviz rendering of a recognizer; accepting states are double circles.
pub fn dfa_to_dot(a: &MultiTrackDfa) -> String {
    let alpha = a.alphabet();
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n");
    writeln!(out, "  init [shape=point];").unwrap();
    for q in 0..a.num_states() {
        let shape = if a.is_accepting(q as u32) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "  q{q} [shape={shape}, label=\"{q}\"];").unwrap();
    }
    writeln!(out, "  init -> q{};", a.initial()).unwrap();
    for q in 0..a.num_states() {
        let mut by_target: HashMap<u32, Vec<usize>> = HashMap::new();
        for letter in 0..alpha {
            by_target.entry(a.step(q as u32, letter)).or_default().push(letter);
        }
        let mut targets: Vec<_> = by_target.into_iter().collect();
        targets.sort();
        for (t, letters) in targets {
            writeln!(
                out,
                "  q{q} -> q{t} [label=\"{}\"];",
                edge_labels(a.track_bases(), &letters, alpha)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::super::{equivalent_dfao, stewart_automaton, TP_TEXT};
    use super::*;

    #[test]
    fn reads_appendix_table() {
        let m = read_walnut(TP_TEXT).unwrap();
        assert_eq!(m.num_states(), 6);
        assert_eq!(m.output(0), 2);
        assert_eq!(m.track_bases(), &[7, 3]);
    }

    #[test]
    fn roundtrip_is_equivalent() {
        let m = stewart_automaton();
        let text = write_walnut(m);
        let back = read_walnut(&text).unwrap();
        assert!(equivalent_dfao(m, &back).unwrap());
    }

    #[test]
    fn missing_zero_transition_is_an_error() {
        let text = "lsd_3\n0 0\n1 -> 0\n";
        match read_walnut(text) {
            Err(Error::WalnutParse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("all-zero"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn padding_output_change_is_an_error() {
        let text = "lsd_3\n0 0\n0 -> 1\n\n1 1\n0 -> 1\n";
        assert!(matches!(read_walnut(text), Err(Error::WalnutParse { .. })));
    }

    #[test]
    fn bad_digit_reports_line() {
        let text = "lsd_3\n0 0\n0 -> 0\n3 -> 0\n";
        match read_walnut(text) {
            Err(Error::WalnutParse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_tuple_rejected() {
        let text = "lsd_3\n0 0\n0 -> 0\n0 -> 0\n";
        assert!(matches!(read_walnut(text), Err(Error::WalnutParse { .. })));
    }

    #[test]
    fn dot_exports() {
        let m = stewart_automaton();
        let dot = dfao_to_dot(m);
        assert_eq!(dot.matches("shape=circle").count(), 6);
        assert!(dot.contains("0/2"));
        let dfa = super::super::output_dfa(m, 2);
        let dot = dfa_to_dot(&dfa);
        assert!(dot.contains("doublecircle"));
    }
}
