//! Regular expressions over digit tuples and their compilation to
//! padding-normalized recognizers.
//!
//! Syntax: union `|`, concatenation by juxtaposition, postfix `*`,
//! parentheses, tuple literals `[d1,d2,...]`, and bare digit characters
//! for single-track expressions. Whitespace (including newlines) is
//! ignored, so multi-line sources paste in unchanged.

use crate::automata::{normalize_padding, MultiTrackDfa, StateCap};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexNode {
    Empty,
    Literal(Vec<u32>),
    Concat(Vec<RegexNode>),
    Union(Vec<RegexNode>),
    Star(Box<RegexNode>),
}

/// A regex tree together with the per-track bases its literals respect.
#[derive(Debug, Clone)]
pub struct RegexOverTuples {
    bases: Vec<u32>,
    root: RegexNode,
}

impl RegexOverTuples {
    pub fn new(bases: Vec<u32>, root: RegexNode) -> Result<Self> {
        validate(&root, &bases)?;
        Ok(RegexOverTuples { bases, root })
    }

    pub fn parse(bases: Vec<u32>, text: &str) -> Result<Self> {
        let root = Parser {
            chars: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            bases: &bases,
        }
        .parse()?;
        Ok(RegexOverTuples { bases, root })
    }

    pub fn bases(&self) -> &[u32] {
        &self.bases
    }

    pub fn root(&self) -> &RegexNode {
        &self.root
    }
}

fn validate(node: &RegexNode, bases: &[u32]) -> Result<()> {
    match node {
        RegexNode::Empty => Ok(()),
        RegexNode::Literal(digits) => {
            if digits.len() != bases.len() {
                return Err(Error::RegexParse {
                    pos: 0,
                    msg: format!("literal has {} digits for {} tracks", digits.len(), bases.len()),
                });
            }
            for (&d, &b) in digits.iter().zip(bases) {
                if d >= b {
                    return Err(Error::RegexParse {
                        pos: 0,
                        msg: format!("digit {d} out of range for base {b}"),
                    });
                }
            }
            Ok(())
        }
        RegexNode::Concat(parts) | RegexNode::Union(parts) => {
            parts.iter().try_for_each(|p| validate(p, bases))
        }
        RegexNode::Star(inner) => validate(inner, bases),
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    bases: &'a [u32],
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(0, |&(i, _)| i + 1),
            |&(i, _)| i,
        )
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::RegexParse {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    fn parse(mut self) -> Result<RegexNode> {
        let node = self.union()?;
        if self.peek().is_some() {
            return Err(self.err(format!("unexpected '{}'", self.peek().unwrap())));
        }
        Ok(node)
    }

    fn union(&mut self) -> Result<RegexNode> {
        let mut parts = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.bump();
            parts.push(self.concat()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            RegexNode::Union(parts)
        })
    }

    fn concat(&mut self) -> Result<RegexNode> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.repeat()?);
        }
        Ok(match parts.len() {
            0 => RegexNode::Empty,
            1 => parts.pop().unwrap(),
            _ => RegexNode::Concat(parts),
        })
    }

    fn repeat(&mut self) -> Result<RegexNode> {
        let mut node = self.atom()?;
        while self.peek() == Some('*') {
            self.bump();
            node = RegexNode::Star(Box::new(node));
        }
        Ok(node)
    }

    fn atom(&mut self) -> Result<RegexNode> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.union()?;
                if self.bump() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some('[') => {
                self.bump();
                let mut digits = vec![self.number()?];
                while self.peek() == Some(',') {
                    self.bump();
                    digits.push(self.number()?);
                }
                if self.bump() != Some(']') {
                    return Err(self.err("expected ']'"));
                }
                if digits.len() != self.bases.len() {
                    return Err(self.err(format!(
                        "tuple has {} digits for {} tracks",
                        digits.len(),
                        self.bases.len()
                    )));
                }
                for (&d, &b) in digits.iter().zip(self.bases) {
                    if d >= b {
                        return Err(self.err(format!("digit {d} out of range for base {b}")));
                    }
                }
                Ok(RegexNode::Literal(digits))
            }
            Some(c) if c.is_ascii_digit() => {
                if self.bases.len() != 1 {
                    return Err(self.err("bare digits need a single-track expression"));
                }
                let at = self.offset();
                self.bump();
                let d = c.to_digit(10).unwrap();
                if d >= self.bases[0] {
                    return Err(Error::RegexParse {
                        pos: at,
                        msg: format!("digit {d} out of range for base {}", self.bases[0]),
                    });
                }
                Ok(RegexNode::Literal(vec![d]))
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of expression")),
        }
    }

    fn number(&mut self) -> Result<u32> {
        let mut digits = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if digits.is_empty() {
            return Err(self.err("expected a digit"));
        }
        digits.parse().map_err(|_| self.err("digit overflow"))
    }
}

// Thompson construction pieces.
struct Nfa {
    eps: Vec<Vec<u32>>,
    edges: Vec<Vec<(usize, u32)>>,
}

impl Nfa {
    fn new_state(&mut self) -> u32 {
        self.eps.push(Vec::new());
        self.edges.push(Vec::new());
        (self.eps.len() - 1) as u32
    }

    fn build(&mut self, node: &RegexNode, bases: &[u32]) -> (u32, u32) {
        match node {
            RegexNode::Empty => {
                let s = self.new_state();
                let t = self.new_state();
                self.eps[s as usize].push(t);
                (s, t)
            }
            RegexNode::Literal(digits) => {
                let s = self.new_state();
                let t = self.new_state();
                let letter = crate::automata::letter_of(bases, digits);
                self.edges[s as usize].push((letter, t));
                (s, t)
            }
            RegexNode::Concat(parts) => {
                let mut frag: Option<(u32, u32)> = None;
                for p in parts {
                    let (ps, pt) = self.build(p, bases);
                    frag = Some(match frag {
                        None => (ps, pt),
                        Some((s, t)) => {
                            self.eps[t as usize].push(ps);
                            (s, pt)
                        }
                    });
                }
                frag.unwrap_or_else(|| {
                    let s = self.new_state();
                    let t = self.new_state();
                    self.eps[s as usize].push(t);
                    (s, t)
                })
            }
            RegexNode::Union(parts) => {
                let s = self.new_state();
                let t = self.new_state();
                for p in parts {
                    let (ps, pt) = self.build(p, bases);
                    self.eps[s as usize].push(ps);
                    self.eps[pt as usize].push(t);
                }
                (s, t)
            }
            RegexNode::Star(inner) => {
                let s = self.new_state();
                let t = self.new_state();
                let (is, it) = self.build(inner, bases);
                self.eps[s as usize].push(is);
                self.eps[s as usize].push(t);
                self.eps[it as usize].push(is);
                self.eps[it as usize].push(t);
                (s, t)
            }
        }
    }

    fn closure(&self, q: u32) -> Vec<u32> {
        let mut seen = vec![q];
        let mut stack = vec![q];
        while let Some(s) = stack.pop() {
            for &n in &self.eps[s as usize] {
                if !seen.contains(&n) {
                    seen.push(n);
                    stack.push(n);
                }
            }
        }
        seen.sort_unstable();
        seen
    }
}

/// Standard regex -> NFA -> DFA -> minimize pipeline; the result is
/// padding-normalized so values are recognized under any trailing-zero
/// padding (acceptance is decided on the trimmed spelling).
pub fn compile_regex(r: &RegexOverTuples, cap: &StateCap) -> Result<MultiTrackDfa> {
    let mut nfa = Nfa {
        eps: Vec::new(),
        edges: Vec::new(),
    };
    let (start, accept) = nfa.build(&r.root, &r.bases);
    let closures: Vec<Vec<u32>> = (0..nfa.eps.len() as u32).map(|q| nfa.closure(q)).collect();

    let dfa = crate::automata::determinize(
        r.bases.clone(),
        &closures[start as usize],
        |q| q == accept,
        |q, letter, out| {
            for &(l, to) in &nfa.edges[q as usize] {
                if l == letter {
                    out.extend_from_slice(&closures[to as usize]);
                }
            }
        },
        cap,
        "regex compilation",
    )?;
    normalize_padding(&dfa, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_compiles_simple() {
        let r = RegexOverTuples::parse(vec![3], "0*10*").unwrap();
        let a = compile_regex(&r, &StateCap::default()).unwrap();
        for x in 0..100u64 {
            assert_eq!(a.accepts_values(&[x]).unwrap(), matches!(x, 1 | 3 | 9 | 27 | 81));
        }
    }

    #[test]
    fn union_and_tuples() {
        let r = RegexOverTuples::parse(vec![3, 3], "([1,1]|[2,2])[0,0]*").unwrap();
        let a = compile_regex(&r, &StateCap::default()).unwrap();
        assert!(a.accepts_values(&[1, 1]).unwrap());
        assert!(a.accepts_values(&[2, 2]).unwrap());
        assert!(!a.accepts_values(&[1, 2]).unwrap());
        assert!(!a.accepts_values(&[4, 4]).unwrap());
    }

    #[test]
    fn normalization_covers_padding() {
        // plain "1" with no 0* tail still recognizes the value 1 padded
        let r = RegexOverTuples::parse(vec![3], "1").unwrap();
        let a = compile_regex(&r, &StateCap::default()).unwrap();
        let padded = crate::numeration::align(vec![crate::numeration::encode(1, 3).padded(5)]);
        assert!(a.accepts(&padded).unwrap());
        assert!(a.accepts_values(&[1]).unwrap());
        assert!(!a.accepts_values(&[0]).unwrap());
        assert!(!a.accepts_values(&[4]).unwrap());
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert!(matches!(
            RegexOverTuples::parse(vec![3], "0*(1"),
            Err(Error::RegexParse { .. })
        ));
        match RegexOverTuples::parse(vec![3], "07") {
            Err(Error::RegexParse { pos, .. }) => assert_eq!(pos, 1),
            other => panic!("expected error, got {other:?}"),
        }
        assert!(RegexOverTuples::parse(vec![3, 3], "[1,2,3]").is_err());
        assert!(RegexOverTuples::parse(vec![3], "a").is_err());
    }

    #[test]
    fn empty_regex_accepts_only_zero() {
        let r = RegexOverTuples::parse(vec![3], "").unwrap();
        let a = compile_regex(&r, &StateCap::default()).unwrap();
        assert!(a.accepts_values(&[0]).unwrap());
        assert!(!a.accepts_values(&[1]).unwrap());
    }
}
