//! Abstract syntax of the first-order query language.
//!
//! All variables range over natural numbers. Formula nodes carry the byte
//! offset of the token that started them, so later passes can report
//! positions.

use std::collections::BTreeSet;
use std::fmt;

/// Arithmetic terms. Multipliers and divisors are positive constants; the
/// language has no general multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Var(String),
    Const(u64),
    Add(Box<Term>, Box<Term>),
    /// Natural subtraction: an atom containing `a - b` is satisfied only
    /// by assignments with `b <= a`.
    Sub(Box<Term>, Box<Term>),
    Mul(u64, Box<Term>),
    Div(Box<Term>, u64),
}

impl Term {
    pub fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::Add(a, b) | Term::Sub(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Term::Mul(_, a) | Term::Div(a, _) => a.vars(out),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn eval<T: Ord>(self, a: T, b: T) -> bool {
        match self {
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
        }
    }

    pub fn swap(self) -> CmpOp {
        match self {
            CmpOp::Lt => CmpOp::Gt,
            CmpOp::Le => CmpOp::Ge,
            CmpOp::Gt => CmpOp::Lt,
            CmpOp::Ge => CmpOp::Le,
            other => other,
        }
    }
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        })
    }
}

/// One side of a word comparison: an indexed word automaton `W[t][n]` or
/// an output constant `@c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordOperand {
    Index { word: String, indices: Vec<Term> },
    Output(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub kind: FormulaKind,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormulaKind {
    Compare(Term, CmpOp, Term),
    WordCompare(WordOperand, CmpOp, WordOperand),
    Call(String, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
}

impl Formula {
    pub fn new(kind: FormulaKind, pos: usize) -> Self {
        Formula { kind, pos }
    }

    /// Free variables, sorted by name.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out, &mut Vec::new());
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>, bound: &mut Vec<String>) {
        match &self.kind {
            FormulaKind::Compare(a, _, b) => {
                let mut vars = BTreeSet::new();
                a.vars(&mut vars);
                b.vars(&mut vars);
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            FormulaKind::WordCompare(a, _, b) => {
                let mut vars = BTreeSet::new();
                for op in [a, b] {
                    if let WordOperand::Index { indices, .. } = op {
                        for t in indices {
                            t.vars(&mut vars);
                        }
                    }
                }
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            FormulaKind::Call(_, args) => {
                let mut vars = BTreeSet::new();
                for t in args {
                    t.vars(&mut vars);
                }
                out.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            FormulaKind::Not(f) => f.collect_free(out, bound),
            FormulaKind::And(a, b) | FormulaKind::Or(a, b) | FormulaKind::Implies(a, b) => {
                a.collect_free(out, bound);
                b.collect_free(out, bound);
            }
            FormulaKind::Exists(vs, f) | FormulaKind::Forall(vs, f) => {
                let depth = bound.len();
                bound.extend(vs.iter().cloned());
                f.collect_free(out, bound);
                bound.truncate(depth);
            }
        }
    }
}
