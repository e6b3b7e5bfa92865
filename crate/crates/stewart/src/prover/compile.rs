//! Compilation of formulas to multi-track automata.
//!
//! A compiled formula is a [`Relation`]: an automaton whose tracks are
//! named by variables, kept sorted by name. Atoms are built from the
//! arithmetic relations with auxiliary tracks for compound terms, which
//! are projected away eagerly so intermediate track counts stay small.
//! `exists` is projection, one variable at a time, innermost first;
//! `forall` is the classical double complement.
//!
//! Auxiliary tracks are named `#a0, #a1, ...`; `#` sorts before every
//! user variable and cannot appear in source text, so they never collide.

use super::ast::{CmpOp, Formula, FormulaKind, Term, WordOperand};
use super::Session;
use crate::arith;
use crate::automata::{
    complement, is_empty, map_tracks, minimize, normalize_padding, output_dfa, product,
    project_any, BoolOp, MultiTrackDfa, StateCap,
};
use crate::error::{Error, Result};
use std::collections::{BTreeSet, HashMap};

/// An automaton whose tracks carry variable names (sorted by name).
#[derive(Debug, Clone)]
pub struct Relation {
    vars: Vec<(String, u32)>,
    dfa: MultiTrackDfa,
}

impl Relation {
    pub fn vars(&self) -> &[(String, u32)] {
        &self.vars
    }

    pub fn dfa(&self) -> &MultiTrackDfa {
        &self.dfa
    }

    pub fn into_parts(self) -> (Vec<(String, u32)>, MultiTrackDfa) {
        (self.vars, self.dfa)
    }

    fn constant(value: bool) -> Relation {
        Relation {
            vars: Vec::new(),
            dfa: if value {
                MultiTrackDfa::universal(Vec::new())
            } else {
                MultiTrackDfa::empty_language(Vec::new())
            },
        }
    }

    pub(crate) fn from_parts_unchecked(vars: Vec<(String, u32)>, dfa: MultiTrackDfa) -> Relation {
        Relation { vars, dfa }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|(v, _)| v == name)
    }
}

/// Wires a raw automaton's tracks to variable names, positionally.
/// Repeated names merge tracks (the digits are forced equal by reading
/// the same track); the resulting tracks are sorted by name.
fn wire(dfa: &MultiTrackDfa, names: &[(String, u32)]) -> Result<Relation> {
    debug_assert_eq!(dfa.num_tracks(), names.len());
    let mut vars: Vec<(String, u32)> = Vec::new();
    for (name, base) in names {
        match vars.iter().find(|(v, _)| v == name) {
            Some((_, b)) if b != base => {
                return Err(Error::BaseConflict {
                    var: name.clone(),
                    a: *b,
                    b: *base,
                })
            }
            Some(_) => {}
            None => vars.push((name.clone(), *base)),
        }
    }
    vars.sort();
    let mapping: Vec<usize> = names
        .iter()
        .map(|(n, _)| vars.iter().position(|(v, _)| v == n).unwrap())
        .collect();
    let new_bases: Vec<u32> = vars.iter().map(|&(_, b)| b).collect();
    let dfa = map_tracks(dfa, new_bases, &mapping)?;
    Ok(Relation { vars, dfa })
}

/// Aligns two relations onto the union of their variables and applies a
/// boolean connective.
fn combine(a: &Relation, b: &Relation, op: BoolOp, cap: &StateCap) -> Result<Relation> {
    let mut vars: Vec<(String, u32)> = a.vars.clone();
    for (name, base) in &b.vars {
        match vars.iter().find(|(v, _)| v == name) {
            Some((_, existing)) if existing != base => {
                return Err(Error::BaseConflict {
                    var: name.clone(),
                    a: *existing,
                    b: *base,
                })
            }
            Some(_) => {}
            None => vars.push((name.clone(), *base)),
        }
    }
    vars.sort();
    let bases: Vec<u32> = vars.iter().map(|&(_, b)| b).collect();
    let lift = |r: &Relation| -> Result<MultiTrackDfa> {
        let mapping: Vec<usize> = r
            .vars
            .iter()
            .map(|(n, _)| vars.iter().position(|(v, _)| v == n).unwrap())
            .collect();
        map_tracks(&r.dfa, bases.clone(), &mapping)
    };
    let dfa = product(&lift(a)?, &lift(b)?, op, cap)?;
    Ok(Relation { vars, dfa })
}

pub(crate) fn combine_public(a: &Relation, b: &Relation, cap: &StateCap) -> Result<Relation> {
    combine(a, b, BoolOp::And, cap)
}

fn negate(r: &Relation) -> Relation {
    Relation {
        vars: r.vars.clone(),
        dfa: minimize(&complement(&r.dfa)),
    }
}

fn project_var(r: Relation, name: &str, cap: &StateCap) -> Result<Relation> {
    let Some(idx) = r.var_index(name) else {
        return Ok(r); // variable unconstrained: vacuous quantifier
    };
    let mut vars = r.vars;
    vars.remove(idx);
    let dfa = project_any(&r.dfa, idx, cap)?;
    Ok(Relation { vars, dfa })
}

/// Projects away every auxiliary (`#`-prefixed) track.
fn project_auxes(mut r: Relation, cap: &StateCap) -> Result<Relation> {
    while let Some(idx) = r.vars.iter().position(|(v, _)| v.starts_with('#')) {
        let name = r.vars[idx].0.clone();
        r = project_var(r, &name, cap)?;
    }
    Ok(r)
}

/// Renames every bound variable to a globally fresh `name#k`, and rejects
/// rebinding a name that is already in scope.
pub(crate) fn alpha_rename(f: &Formula) -> Result<Formula> {
    fn rename_term(t: &Term, scope: &HashMap<String, String>) -> Term {
        match t {
            Term::Var(v) => Term::Var(scope.get(v).cloned().unwrap_or_else(|| v.clone())),
            Term::Const(c) => Term::Const(*c),
            Term::Add(a, b) => Term::Add(
                Box::new(rename_term(a, scope)),
                Box::new(rename_term(b, scope)),
            ),
            Term::Sub(a, b) => Term::Sub(
                Box::new(rename_term(a, scope)),
                Box::new(rename_term(b, scope)),
            ),
            Term::Mul(c, a) => Term::Mul(*c, Box::new(rename_term(a, scope))),
            Term::Div(a, c) => Term::Div(Box::new(rename_term(a, scope)), *c),
        }
    }

    fn walk(
        f: &Formula,
        scope: &mut HashMap<String, String>,
        counter: &mut usize,
    ) -> Result<Formula> {
        let kind = match &f.kind {
            FormulaKind::Compare(a, op, b) => {
                FormulaKind::Compare(rename_term(a, scope), *op, rename_term(b, scope))
            }
            FormulaKind::WordCompare(a, op, b) => {
                let ren = |w: &WordOperand, scope: &HashMap<String, String>| match w {
                    WordOperand::Index { word, indices } => WordOperand::Index {
                        word: word.clone(),
                        indices: indices.iter().map(|t| rename_term(t, scope)).collect(),
                    },
                    WordOperand::Output(c) => WordOperand::Output(*c),
                };
                FormulaKind::WordCompare(ren(a, scope), *op, ren(b, scope))
            }
            FormulaKind::Call(name, args) => FormulaKind::Call(
                name.clone(),
                args.iter().map(|t| rename_term(t, scope)).collect(),
            ),
            FormulaKind::Not(inner) => FormulaKind::Not(Box::new(walk(inner, scope, counter)?)),
            FormulaKind::And(a, b) => FormulaKind::And(
                Box::new(walk(a, scope, counter)?),
                Box::new(walk(b, scope, counter)?),
            ),
            FormulaKind::Or(a, b) => FormulaKind::Or(
                Box::new(walk(a, scope, counter)?),
                Box::new(walk(b, scope, counter)?),
            ),
            FormulaKind::Implies(a, b) => FormulaKind::Implies(
                Box::new(walk(a, scope, counter)?),
                Box::new(walk(b, scope, counter)?),
            ),
            FormulaKind::Exists(vars, body) | FormulaKind::Forall(vars, body) => {
                let mut fresh = Vec::with_capacity(vars.len());
                let mut saved = Vec::new();
                for v in vars {
                    if scope.contains_key(v) {
                        return Err(Error::FormulaParse {
                            pos: f.pos,
                            msg: format!("variable '{v}' is already bound in this scope"),
                        });
                    }
                    let new = format!("{v}#{counter}");
                    *counter += 1;
                    saved.push((v.clone(), scope.insert(v.clone(), new.clone())));
                    fresh.push(new);
                }
                let inner = walk(body, scope, counter)?;
                for (v, old) in saved {
                    match old {
                        Some(o) => {
                            scope.insert(v, o);
                        }
                        None => {
                            scope.remove(&v);
                        }
                    }
                }
                if matches!(f.kind, FormulaKind::Exists(_, _)) {
                    FormulaKind::Exists(fresh, Box::new(inner))
                } else {
                    FormulaKind::Forall(fresh, Box::new(inner))
                }
            }
        };
        Ok(Formula::new(kind, f.pos))
    }

    walk(f, &mut HashMap::new(), &mut 0)
}

/// Union-find based base inference. Variables sharing an arithmetic atom
/// share a base; word indexing and predicate calls pin bases; everything
/// else falls back to the default.
pub(crate) fn infer_bases(
    f: &Formula,
    session: &Session,
    default: u32,
) -> Result<HashMap<String, u32>> {
    struct Uf {
        parent: HashMap<String, String>,
        base: HashMap<String, u32>,
        names: BTreeSet<String>,
    }
    impl Uf {
        fn find(&mut self, v: &str) -> String {
            let p = match self.parent.get(v) {
                Some(p) if p != v => p.clone(),
                _ => return v.to_string(),
            };
            let root = self.find(&p);
            self.parent.insert(v.to_string(), root.clone());
            root
        }
        fn touch(&mut self, v: &str) {
            self.names.insert(v.to_string());
            if !self.parent.contains_key(v) {
                self.parent.insert(v.to_string(), v.to_string());
            }
        }
        fn union(&mut self, a: &str, b: &str) -> Result<()> {
            self.touch(a);
            self.touch(b);
            let ra = self.find(a);
            let rb = self.find(b);
            if ra == rb {
                return Ok(());
            }
            match (self.base.get(&ra).copied(), self.base.get(&rb).copied()) {
                (Some(x), Some(y)) if x != y => {
                    return Err(Error::BaseConflict {
                        var: a.to_string(),
                        a: x,
                        b: y,
                    })
                }
                (Some(x), _) => {
                    self.base.insert(rb.clone(), x);
                }
                (None, Some(y)) => {
                    self.base.insert(ra.clone(), y);
                }
                _ => {}
            }
            self.parent.insert(ra, rb);
            Ok(())
        }
        fn bind(&mut self, v: &str, base: u32) -> Result<()> {
            self.touch(v);
            let r = self.find(v);
            match self.base.get(&r) {
                Some(&b) if b != base => Err(Error::BaseConflict {
                    var: v.to_string(),
                    a: b,
                    b: base,
                }),
                _ => {
                    self.base.insert(r, base);
                    Ok(())
                }
            }
        }
    }

    fn unify_group(uf: &mut Uf, vars: &BTreeSet<String>) -> Result<()> {
        let mut iter = vars.iter();
        if let Some(first) = iter.next() {
            uf.touch(first);
            for v in iter {
                uf.union(first, v)?;
            }
        }
        Ok(())
    }

    fn walk(f: &Formula, uf: &mut Uf, session: &Session) -> Result<()> {
        match &f.kind {
            FormulaKind::Compare(a, _, b) => {
                let mut vars = BTreeSet::new();
                a.vars(&mut vars);
                b.vars(&mut vars);
                unify_group(uf, &vars)
            }
            FormulaKind::WordCompare(a, _, b) => {
                for side in [a, b] {
                    if let WordOperand::Index { word, indices } = side {
                        let w = session.word(word).map_err(|e| at(e, f.pos))?;
                        if indices.len() != w.num_tracks() {
                            return Err(Error::FormulaParse {
                                pos: f.pos,
                                msg: format!(
                                    "'{word}' indexes {} tracks, got {}",
                                    w.num_tracks(),
                                    indices.len()
                                ),
                            });
                        }
                        for (term, &base) in indices.iter().zip(w.track_bases()) {
                            let mut vars = BTreeSet::new();
                            term.vars(&mut vars);
                            unify_group(uf, &vars)?;
                            if let Some(v) = vars.iter().next() {
                                uf.bind(v, base)?;
                            }
                        }
                    }
                }
                Ok(())
            }
            FormulaKind::Call(name, args) => {
                let named = session.resolve_named(name).map_err(|e| at(e, f.pos))?;
                if args.len() != named.bases.len() {
                    return Err(Error::Arity {
                        name: name.clone(),
                        expected: named.bases.len(),
                        got: args.len(),
                    });
                }
                for (term, &base) in args.iter().zip(&named.bases) {
                    let mut vars = BTreeSet::new();
                    term.vars(&mut vars);
                    unify_group(uf, &vars)?;
                    if let Some(v) = vars.iter().next() {
                        uf.bind(v, base)?;
                    }
                }
                Ok(())
            }
            FormulaKind::Not(inner) => walk(inner, uf, session),
            FormulaKind::And(a, b) | FormulaKind::Or(a, b) | FormulaKind::Implies(a, b) => {
                walk(a, uf, session)?;
                walk(b, uf, session)
            }
            FormulaKind::Exists(_, body) | FormulaKind::Forall(_, body) => {
                walk(body, uf, session)
            }
        }
    }

    fn at(e: Error, pos: usize) -> Error {
        match e {
            Error::UnknownName(n) => Error::FormulaParse {
                pos,
                msg: format!("unknown name '{n}'"),
            },
            other => other,
        }
    }

    let mut uf = Uf {
        parent: HashMap::new(),
        base: HashMap::new(),
        names: BTreeSet::new(),
    };
    walk(f, &mut uf, session)?;
    let names: Vec<String> = uf.names.iter().cloned().collect();
    let mut out = HashMap::new();
    for v in names {
        let r = uf.find(&v);
        out.insert(v, uf.base.get(&r).copied().unwrap_or(default));
    }
    Ok(out)
}

pub(crate) struct Compiler<'a> {
    session: &'a Session,
    bases: HashMap<String, u32>,
    default_base: u32,
    cap: StateCap,
    aux: usize,
}

impl<'a> Compiler<'a> {
    pub fn new(
        session: &'a Session,
        bases: HashMap<String, u32>,
        default_base: u32,
        cap: StateCap,
    ) -> Self {
        Compiler {
            session,
            bases,
            default_base,
            cap,
            aux: 0,
        }
    }

    fn fresh_aux(&mut self) -> String {
        let name = format!("#a{}", self.aux);
        self.aux += 1;
        name
    }

    fn var_base(&self, v: &str) -> u32 {
        self.bases.get(v).copied().unwrap_or(self.default_base)
    }

    /// Base shared by all variables of an atom; the default when the atom
    /// is variable-free.
    fn atom_base(&self, terms: &[&Term]) -> u32 {
        let mut vars = BTreeSet::new();
        for t in terms {
            t.vars(&mut vars);
        }
        vars.iter()
            .next()
            .map(|v| self.var_base(v))
            .unwrap_or(self.default_base)
    }

    /// Compiles a term to a result variable plus the relation defining it.
    /// Plain variables come back as themselves with no relation; compound
    /// terms introduce a fresh auxiliary result track. Intermediate
    /// auxiliaries are already projected away.
    fn term(&mut self, t: &Term, base: u32) -> Result<(String, Option<Relation>)> {
        match t {
            Term::Var(v) => Ok((v.clone(), None)),
            Term::Const(c) => {
                let z = self.fresh_aux();
                let rel = wire(&arith::const_eq(*c, base), &[(z.clone(), base)])?;
                Ok((z, Some(rel)))
            }
            Term::Add(a, b) => {
                let (va, ra) = self.term(a, base)?;
                let (vb, rb) = self.term(b, base)?;
                let z = self.fresh_aux();
                let add = wire(
                    &arith::rel_add(base),
                    &[(va.clone(), base), (vb.clone(), base), (z.clone(), base)],
                )?;
                self.close_term(add, [ra, rb], &[va, vb])
                    .map(|r| (z, Some(r)))
            }
            Term::Sub(a, b) => {
                // z + b = a, so the atom holds only when b <= a
                let (va, ra) = self.term(a, base)?;
                let (vb, rb) = self.term(b, base)?;
                let z = self.fresh_aux();
                let add = wire(
                    &arith::rel_add(base),
                    &[(z.clone(), base), (vb.clone(), base), (va.clone(), base)],
                )?;
                self.close_term(add, [ra, rb], &[va, vb])
                    .map(|r| (z, Some(r)))
            }
            Term::Mul(c, a) => {
                let (va, ra) = self.term(a, base)?;
                let z = self.fresh_aux();
                let mul = wire(
                    &arith::mul_const(*c, base)?,
                    &[(va.clone(), base), (z.clone(), base)],
                )?;
                self.close_term(mul, [ra, None], &[va]).map(|r| (z, Some(r)))
            }
            Term::Div(a, c) => {
                let (va, ra) = self.term(a, base)?;
                let z = self.fresh_aux();
                let div = wire(
                    &arith::div_const(*c, base)?,
                    &[(va.clone(), base), (z.clone(), base)],
                )?;
                self.close_term(div, [ra, None], &[va]).map(|r| (z, Some(r)))
            }
        }
    }

    /// Conjoins defining relations of sub-terms and projects those of
    /// their result variables that are auxiliaries.
    fn close_term(
        &mut self,
        mut rel: Relation,
        defs: [Option<Relation>; 2],
        results: &[String],
    ) -> Result<Relation> {
        for d in defs.into_iter().flatten() {
            rel = combine(&rel, &d, BoolOp::And, &self.cap)?;
        }
        for v in results {
            if v.starts_with('#') {
                rel = project_var(rel, v, &self.cap)?;
            }
        }
        Ok(rel)
    }

    pub fn compile(&mut self, f: &Formula) -> Result<Relation> {
        match &f.kind {
            FormulaKind::Compare(t1, op, t2) => {
                let base = self.atom_base(&[t1, t2]);
                let (v1, r1) = self.term(t1, base)?;
                let (v2, r2) = self.term(t2, base)?;
                let (dfa, names) = match op {
                    CmpOp::Eq => (arith::rel_eq(base), [&v1, &v2]),
                    CmpOp::Ne => (minimize(&complement(&arith::rel_eq(base))), [&v1, &v2]),
                    CmpOp::Lt => (arith::rel_lt(base), [&v1, &v2]),
                    CmpOp::Le => (arith::rel_leq(base), [&v1, &v2]),
                    CmpOp::Gt => (arith::rel_lt(base), [&v2, &v1]),
                    CmpOp::Ge => (arith::rel_leq(base), [&v2, &v1]),
                };
                let mut rel = wire(
                    &dfa,
                    &[(names[0].clone(), base), (names[1].clone(), base)],
                )?;
                for r in [r1, r2].into_iter().flatten() {
                    rel = combine(&rel, &r, BoolOp::And, &self.cap)?;
                }
                project_auxes(rel, &self.cap)
            }
            FormulaKind::WordCompare(a, op, b) => self.word_compare(a, *op, b, f.pos),
            FormulaKind::Call(name, args) => {
                let named = self
                    .session
                    .resolve_named(name)
                    .map_err(|e| match e {
                        Error::UnknownName(n) => Error::FormulaParse {
                            pos: f.pos,
                            msg: format!("unknown name '{n}'"),
                        },
                        other => other,
                    })?
                    .clone();
                if args.len() != named.bases.len() {
                    return Err(Error::Arity {
                        name: name.clone(),
                        expected: named.bases.len(),
                        got: args.len(),
                    });
                }
                let mut targets = Vec::with_capacity(args.len());
                let mut defs = Vec::new();
                for (arg, &base) in args.iter().zip(&named.bases) {
                    let (v, r) = self.term(arg, base)?;
                    targets.push((v, base));
                    if let Some(r) = r {
                        defs.push(r);
                    }
                }
                let mut rel = wire(&named.dfa, &targets)?;
                for d in defs {
                    rel = combine(&rel, &d, BoolOp::And, &self.cap)?;
                }
                project_auxes(rel, &self.cap)
            }
            FormulaKind::Not(inner) => Ok(negate(&self.compile(inner)?)),
            FormulaKind::And(a, b) => {
                let ra = self.compile(a)?;
                let rb = self.compile(b)?;
                combine(&ra, &rb, BoolOp::And, &self.cap)
            }
            FormulaKind::Or(a, b) => {
                let ra = self.compile(a)?;
                let rb = self.compile(b)?;
                combine(&ra, &rb, BoolOp::Or, &self.cap)
            }
            FormulaKind::Implies(a, b) => {
                let ra = negate(&self.compile(a)?);
                let rb = self.compile(b)?;
                combine(&ra, &rb, BoolOp::Or, &self.cap)
            }
            FormulaKind::Exists(vars, body) => {
                let mut rel = self.compile(body)?;
                for v in vars.iter().rev() {
                    rel = project_var(rel, v, &self.cap)?;
                }
                Ok(rel)
            }
            FormulaKind::Forall(vars, body) => {
                let mut rel = negate(&self.compile(body)?);
                for v in vars.iter().rev() {
                    rel = project_var(rel, v, &self.cap)?;
                }
                Ok(negate(&rel))
            }
        }
    }

    fn word_compare(
        &mut self,
        a: &WordOperand,
        op: CmpOp,
        b: &WordOperand,
        pos: usize,
    ) -> Result<Relation> {
        match (a, b) {
            (WordOperand::Output(x), WordOperand::Output(y)) => {
                Ok(Relation::constant(op.eval(*x, *y)))
            }
            (WordOperand::Index { .. }, WordOperand::Output(c)) => {
                let (outputs, rels, defs) = self.word_side(a, pos)?;
                let mut acc = Relation::constant(false);
                for (v, rel) in outputs.iter().zip(&rels) {
                    if op.eval(*v as u64, *c) {
                        acc = combine(&acc, rel, BoolOp::Or, &self.cap)?;
                    }
                }
                self.finish_word_atom(acc, defs)
            }
            (WordOperand::Output(c), WordOperand::Index { .. }) => {
                let (outputs, rels, defs) = self.word_side(b, pos)?;
                let mut acc = Relation::constant(false);
                for (v, rel) in outputs.iter().zip(&rels) {
                    if op.eval(*c, *v as u64) {
                        acc = combine(&acc, rel, BoolOp::Or, &self.cap)?;
                    }
                }
                self.finish_word_atom(acc, defs)
            }
            (WordOperand::Index { .. }, WordOperand::Index { .. }) => {
                let (outs_a, rels_a, mut defs_a) = self.word_side(a, pos)?;
                let (outs_b, rels_b, defs_b) = self.word_side(b, pos)?;
                defs_a.extend(defs_b);
                let mut acc = Relation::constant(false);
                for (va, ra) in outs_a.iter().zip(&rels_a) {
                    for (vb, rb) in outs_b.iter().zip(&rels_b) {
                        if op.eval(*va, *vb) {
                            let both = combine(ra, rb, BoolOp::And, &self.cap)?;
                            acc = combine(&acc, &both, BoolOp::Or, &self.cap)?;
                        }
                    }
                }
                self.finish_word_atom(acc, defs_a)
            }
        }
    }

    /// For one `W[e1]...[ek]` operand: the output alphabet, one relation
    /// per output wired to the index result variables, and the defining
    /// relations of compound index terms.
    fn word_side(
        &mut self,
        side: &WordOperand,
        pos: usize,
    ) -> Result<(Vec<u32>, Vec<Relation>, Vec<Relation>)> {
        let WordOperand::Index { word, indices } = side else {
            unreachable!("caller matches Index operands")
        };
        let dfao = self
            .session
            .word(word)
            .map_err(|e| match e {
                Error::UnknownName(n) => Error::FormulaParse {
                    pos,
                    msg: format!("unknown word automaton '{n}'"),
                },
                other => other,
            })?
            .clone();
        if indices.len() != dfao.num_tracks() {
            return Err(Error::Arity {
                name: word.clone(),
                expected: dfao.num_tracks(),
                got: indices.len(),
            });
        }
        let mut targets = Vec::new();
        let mut defs = Vec::new();
        for (term, &base) in indices.iter().zip(dfao.track_bases()) {
            let (v, r) = self.term(term, base)?;
            targets.push((v, base));
            if let Some(r) = r {
                defs.push(r);
            }
        }
        let outputs = dfao.output_alphabet();
        let rels = outputs
            .iter()
            .map(|&v| {
                let recog = normalize_padding(&output_dfa(&dfao, v), &self.cap)?;
                wire(&recog, &targets)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((outputs, rels, defs))
    }

    fn finish_word_atom(&mut self, mut rel: Relation, defs: Vec<Relation>) -> Result<Relation> {
        for d in defs {
            rel = combine(&rel, &d, BoolOp::And, &self.cap)?;
        }
        project_auxes(rel, &self.cap)
    }
}

/// Evaluates a compiled, variable-free relation.
pub(crate) fn closed_value(rel: &Relation) -> Result<bool> {
    if !rel.vars.is_empty() {
        let names: Vec<&str> = rel.vars.iter().map(|(v, _)| v.as_str()).collect();
        return Err(Error::NotClosed(names.join(", ")));
    }
    Ok(!is_empty(&rel.dfa))
}
