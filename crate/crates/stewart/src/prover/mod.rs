//! The decision procedure: a session of named automata plus compilation
//! of first-order queries about the Stewart words.
//!
//! A fresh [`Session`] knows the Stewart automaton under the word name
//! `TP` and the built-in predicates `pref`, `link`, `bnd`, `power3` and
//! `differ`. `def` extends it with compiled formulas, `reg` with compiled
//! regular expressions; `eval` decides closed formulas.

pub mod ast;
mod compile;
pub mod parse;
mod script;

pub use compile::Relation;
pub use script::{parse_script, ScriptResult, Statement};

use crate::automata::{
    map_tracks, minimize, MultiTrackDfa, MultiTrackDfao, StateCap,
};
use crate::error::{Error, Result};
use ast::Formula;
use compile::{alpha_rename, closed_value, infer_bases, Compiler};
use parse::parse_formula;
use std::collections::HashMap;

/// A stored automaton whose tracks follow its declared argument order.
#[derive(Debug, Clone)]
pub struct NamedAutomaton {
    pub vars: Vec<String>,
    pub bases: Vec<u32>,
    pub dfa: MultiTrackDfa,
}

pub struct Session {
    named: HashMap<String, NamedAutomaton>,
    words: HashMap<String, MultiTrackDfao>,
    pub default_base: u32,
    pub cap: StateCap,
    /// Reject the `$link7` alias instead of resolving it to `link`.
    pub strict: bool,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

impl Session {
    /// A session preloaded with the Stewart automaton (as `TP`) and the
    /// built-in predicates.
    pub fn new() -> Session {
        let builtin = |vars: &[&str], bases: &[u32], dfa: &MultiTrackDfa| NamedAutomaton {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            bases: bases.to_vec(),
            dfa: dfa.clone(),
        };
        let mut named = HashMap::new();
        named.insert(
            "pref".to_string(),
            builtin(&["t1", "t2"], &[7, 7], crate::arith::builtin_pref()),
        );
        named.insert(
            "link".to_string(),
            builtin(&["x", "t"], &[3, 7], crate::arith::builtin_link()),
        );
        named.insert(
            "bnd".to_string(),
            builtin(&["x", "y"], &[3, 3], crate::arith::builtin_bnd()),
        );
        named.insert(
            "power3".to_string(),
            builtin(&["x"], &[3], crate::arith::builtin_power3()),
        );
        named.insert(
            "differ".to_string(),
            builtin(&["t", "u", "x"], &[7, 7, 3], crate::arith::builtin_differ()),
        );
        let mut words = HashMap::new();
        words.insert("TP".to_string(), crate::automata::stewart_automaton().clone());
        Session {
            named,
            words,
            default_base: 3,
            cap: StateCap::default(),
            strict: false,
        }
    }

    /// Looks up a stored predicate automaton. Outside strict mode the
    /// name `link7` (used by one source query but never defined) resolves
    /// to `link`.
    pub fn resolve_named(&self, name: &str) -> Result<&NamedAutomaton> {
        if let Some(a) = self.named.get(name) {
            return Ok(a);
        }
        if name == "link7" && !self.strict {
            if let Some(a) = self.named.get("link") {
                return Ok(a);
            }
        }
        Err(Error::UnknownName(name.to_string()))
    }

    pub fn word(&self, name: &str) -> Result<&MultiTrackDfao> {
        self.words
            .get(name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn named_automata(&self) -> impl Iterator<Item = (&String, &NamedAutomaton)> {
        self.named.iter()
    }

    pub fn add_word_automaton(&mut self, name: &str, dfao: MultiTrackDfao) -> Result<()> {
        if self.words.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        self.words.insert(name.to_string(), dfao);
        Ok(())
    }

    /// Compiles a formula to a relation over its free variables, sorted
    /// lexicographically by name.
    pub fn compile_formula(&self, text: &str) -> Result<Relation> {
        let parsed = parse_formula(text)?;
        self.compile_parsed(&parsed.formula, parsed.default_base)
    }

    fn compile_parsed(&self, formula: &Formula, directive: Option<u32>) -> Result<Relation> {
        let default = directive.unwrap_or(self.default_base);
        let renamed = alpha_rename(formula)?;
        let bases = infer_bases(&renamed, self, default)?;
        let mut compiler = Compiler::new(self, bases.clone(), default, self.cap);
        let rel = compiler.compile(&renamed)?;
        // pad the relation out to the full free-variable set
        let free = renamed.free_vars();
        let mut out = rel;
        for v in free {
            if out.vars().iter().any(|(name, _)| *name == v) {
                continue;
            }
            let base = bases.get(&v).copied().unwrap_or(default);
            let one = Relation::universal_over(&v, base);
            out = Relation::merge_universal(out, one, &self.cap)?;
        }
        Ok(out)
    }

    /// Decides a closed formula.
    pub fn eval_closed(&self, text: &str) -> Result<bool> {
        let rel = self.compile_formula(text)?;
        closed_value(&rel)
    }

    /// Compiles `text` and stores it under `name` with the given argument
    /// order (defaults to the sorted free variables).
    pub fn define(&mut self, name: &str, text: &str, var_order: Option<&[&str]>) -> Result<&NamedAutomaton> {
        if self.named.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let rel = self.compile_formula(text)?;
        let sorted: Vec<String> = rel.vars().iter().map(|(v, _)| v.clone()).collect();
        let order: Vec<String> = match var_order {
            Some(names) => {
                let mut check: Vec<String> = names.iter().map(|s| s.to_string()).collect();
                check.sort();
                if check != sorted {
                    return Err(Error::Precondition(format!(
                        "declared variables ({}) do not match free variables ({})",
                        names.join(","),
                        sorted.join(",")
                    )));
                }
                names.iter().map(|s| s.to_string()).collect()
            }
            None => sorted.clone(),
        };
        let (vars, dfa) = rel.into_parts();
        let mapping: Vec<usize> = vars
            .iter()
            .map(|(v, _)| order.iter().position(|o| o == v).unwrap())
            .collect();
        let bases: Vec<u32> = order
            .iter()
            .map(|o| vars.iter().find(|(v, _)| v == o).unwrap().1)
            .collect();
        let stored = NamedAutomaton {
            vars: order,
            dfa: map_tracks(&dfa, bases.clone(), &mapping)?,
            bases,
        };
        self.named.insert(name.to_string(), stored);
        Ok(&self.named[name])
    }

    /// Compiles a regular expression over the tagged tracks and stores it.
    pub fn register_regex(&mut self, name: &str, bases: &[u32], regex: &str) -> Result<&NamedAutomaton> {
        if self.named.contains_key(name) {
            return Err(Error::DuplicateName(name.to_string()));
        }
        let parsed = crate::arith::RegexOverTuples::parse(bases.to_vec(), regex)?;
        let dfa = crate::arith::compile_regex(&parsed, &self.cap)?;
        self.named.insert(
            name.to_string(),
            NamedAutomaton {
                vars: (0..bases.len()).map(|i| format!("x{i}")).collect(),
                bases: bases.to_vec(),
                dfa: minimize(&dfa),
            },
        );
        Ok(&self.named[name])
    }
}

impl Relation {
    fn universal_over(var: &str, base: u32) -> Relation {
        Relation::from_parts_unchecked(
            vec![(var.to_string(), base)],
            MultiTrackDfa::universal(vec![base]),
        )
    }

    fn merge_universal(a: Relation, b: Relation, cap: &StateCap) -> Result<Relation> {
        compile::combine_public(&a, &b, cap)
    }
}
