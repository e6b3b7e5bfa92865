//! Lexer and recursive-descent parser for the query language.
//!
//! Grammar sketch, loosest binding last:
//!
//! ```text
//! formula  := ['?lsd_k'] impl
//! impl     := or ('=>' impl)?
//! or       := and ('|' and)*
//! and      := unary ('&' unary)*
//! unary    := '~' unary | ('A'|'E') v,v,... impl | atom
//! atom     := '(' impl ')' | $name(term,...) | operand cmp operand
//! operand  := term | WORD '[' term ']' ... | '@' num
//! term     := factor (('+'|'-') factor)*
//! factor   := primary (('*'|'/') primary)*
//! primary  := num | var | '(' term ')'
//! ```
//!
//! A quantifier's body extends to the end of the enclosing parenthesized
//! group, which reproduces the grouping of the source queries: in
//! `p>=1 & Aj (j<2*p) => ...` the `Aj` captures the implication to the
//! right and the result becomes the right operand of `&`. Multiplication
//! needs a constant side and division a constant divisor. Quantifier
//! letters fuse with the first variable (`Ei,p,t`, `Aj`).

use super::ast::{CmpOp, Formula, FormulaKind, Term, WordOperand};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(u64),
    OutConst(u64),
    Dollar(String),
    Lsd(u32),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Amp,
    Pipe,
    Tilde,
    Arrow,
    Cmp(CmpOp),
    Plus,
    Minus,
    Star,
    Slash,
}

#[derive(Debug, Clone)]
struct Lexed {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0usize;
    let err = |pos: usize, msg: String| Error::FormulaParse { pos, msg };
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => out.push(Lexed { tok: Tok::LParen, pos }),
            ')' => out.push(Lexed { tok: Tok::RParen, pos }),
            '[' => out.push(Lexed { tok: Tok::LBracket, pos }),
            ']' => out.push(Lexed { tok: Tok::RBracket, pos }),
            ',' => out.push(Lexed { tok: Tok::Comma, pos }),
            '&' => out.push(Lexed { tok: Tok::Amp, pos }),
            '|' => out.push(Lexed { tok: Tok::Pipe, pos }),
            '~' => out.push(Lexed { tok: Tok::Tilde, pos }),
            '+' => out.push(Lexed { tok: Tok::Plus, pos }),
            '-' => out.push(Lexed { tok: Tok::Minus, pos }),
            '*' => out.push(Lexed { tok: Tok::Star, pos }),
            '/' => out.push(Lexed { tok: Tok::Slash, pos }),
            '=' => {
                if bytes.get(i + 1) == Some(&'>') {
                    i += 1;
                    out.push(Lexed { tok: Tok::Arrow, pos });
                } else {
                    out.push(Lexed { tok: Tok::Cmp(CmpOp::Eq), pos });
                }
            }
            '!' => {
                if bytes.get(i + 1) == Some(&'=') {
                    i += 1;
                    out.push(Lexed { tok: Tok::Cmp(CmpOp::Ne), pos });
                } else {
                    return Err(err(pos, "expected '!='".into()));
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&'=') {
                    i += 1;
                    out.push(Lexed { tok: Tok::Cmp(CmpOp::Le), pos });
                } else {
                    out.push(Lexed { tok: Tok::Cmp(CmpOp::Lt), pos });
                }
            }
            '>' => {
                if bytes.get(i + 1) == Some(&'=') {
                    i += 1;
                    out.push(Lexed { tok: Tok::Cmp(CmpOp::Ge), pos });
                } else {
                    out.push(Lexed { tok: Tok::Cmp(CmpOp::Gt), pos });
                }
            }
            '@' => {
                let (n, next) = lex_number(&bytes, i + 1)
                    .ok_or_else(|| err(pos, "expected a number after '@'".into()))?;
                out.push(Lexed { tok: Tok::OutConst(n), pos });
                i = next - 1;
            }
            '$' => {
                let (name, next) = lex_ident(&bytes, i + 1)
                    .ok_or_else(|| err(pos, "expected a name after '$'".into()))?;
                out.push(Lexed { tok: Tok::Dollar(name), pos });
                i = next - 1;
            }
            '?' => {
                let (word, next) = lex_ident(&bytes, i + 1)
                    .ok_or_else(|| err(pos, "expected lsd_<k> after '?'".into()))?;
                let base = word
                    .strip_prefix("lsd_")
                    .and_then(|b| b.parse::<u32>().ok())
                    .filter(|&b| b >= 2)
                    .ok_or_else(|| err(pos, format!("unsupported numeration '?{word}'")))?;
                out.push(Lexed { tok: Tok::Lsd(base), pos });
                i = next - 1;
            }
            c if c.is_ascii_digit() => {
                let (n, next) = lex_number(&bytes, i).unwrap();
                out.push(Lexed { tok: Tok::Num(n), pos });
                i = next - 1;
            }
            c if c.is_ascii_alphabetic() => {
                let (name, next) = lex_ident(&bytes, i).unwrap();
                out.push(Lexed { tok: Tok::Ident(name), pos });
                i = next - 1;
            }
            other => return Err(err(pos, format!("unexpected character '{other}'"))),
        }
        i += 1;
    }
    Ok(out)
}

fn lex_number(bytes: &[char], start: usize) -> Option<(u64, usize)> {
    let mut i = start;
    let mut n: u64 = 0;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        n = n.checked_mul(10)?.checked_add(bytes[i].to_digit(10)? as u64)?;
        i += 1;
    }
    (i > start).then_some((n, i))
}

fn lex_ident(bytes: &[char], start: usize) -> Option<(String, usize)> {
    let mut i = start;
    if i >= bytes.len() || !bytes[i].is_ascii_alphabetic() {
        return None;
    }
    let mut s = String::new();
    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
        s.push(bytes[i]);
        i += 1;
    }
    Some((s, i))
}

/// A parsed formula together with its numeration directive, if present.
#[derive(Debug, Clone)]
pub struct ParsedFormula {
    pub default_base: Option<u32>,
    pub formula: Formula,
}

pub fn parse_formula(text: &str) -> Result<ParsedFormula> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let default_base = match p.peek() {
        Some(Tok::Lsd(k)) => {
            let k = *k;
            p.pos += 1;
            Some(k)
        }
        _ => None,
    };
    let formula = p.implication()?;
    if let Some(t) = p.peek() {
        return Err(p.err_here(format!("unexpected trailing {t:?}")));
    }
    Ok(ParsedFormula {
        default_base,
        formula,
    })
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|l| &l.tok)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map_or(0, |l| l.pos)
    }

    fn err_here(&self, msg: String) -> Error {
        Error::FormulaParse {
            pos: self.here(),
            msg,
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|l| l.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err_here(format!("expected {what}")))
        }
    }

    fn implication(&mut self) -> Result<Formula> {
        let pos = self.here();
        let lhs = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let rhs = self.implication()?;
            Ok(Formula::new(
                FormulaKind::Implies(Box::new(lhs), Box::new(rhs)),
                pos,
            ))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let pos = self.here();
        let mut lhs = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            let rhs = self.conjunction()?;
            lhs = Formula::new(FormulaKind::Or(Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let pos = self.here();
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::new(FormulaKind::And(Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let pos = self.here();
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                let inner = self.unary()?;
                Ok(Formula::new(FormulaKind::Not(Box::new(inner)), pos))
            }
            Some(Tok::Ident(name)) if is_quantifier(name) => {
                let name = name.clone();
                self.pos += 1;
                let universal = name.starts_with('A');
                let mut vars = Vec::new();
                if name.len() > 1 {
                    vars.push(check_var(&name[1..], pos)?);
                } else {
                    vars.push(self.variable()?);
                }
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    vars.push(self.variable()?);
                }
                let body = self.implication()?;
                let kind = if universal {
                    FormulaKind::Forall(vars, Box::new(body))
                } else {
                    FormulaKind::Exists(vars, Box::new(body))
                };
                Ok(Formula::new(kind, pos))
            }
            _ => self.atom(),
        }
    }

    fn variable(&mut self) -> Result<String> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Ident(v)) => check_var(&v, pos),
            _ => Err(Error::FormulaParse {
                pos,
                msg: "expected a variable".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let pos = self.here();
        match self.peek() {
            Some(Tok::Dollar(name)) => {
                let name = name.clone();
                self.pos += 1;
                self.expect(&Tok::LParen, "'(' after predicate name")?;
                let mut args = vec![self.term()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                    args.push(self.term()?);
                }
                self.expect(&Tok::RParen, "')'")?;
                Ok(Formula::new(FormulaKind::Call(name, args), pos))
            }
            Some(Tok::LParen) => {
                // Either a parenthesized formula or a comparison whose left
                // term is parenthesized; try the comparison first.
                let save = self.pos;
                match self.comparison() {
                    Ok(f) => Ok(f),
                    Err(_) => {
                        self.pos = save;
                        self.expect(&Tok::LParen, "'('").unwrap();
                        let inner = self.implication()?;
                        self.expect(&Tok::RParen, "')'")?;
                        Ok(inner)
                    }
                }
            }
            _ => self.comparison(),
        }
    }

    fn comparison(&mut self) -> Result<Formula> {
        let pos = self.here();
        let lhs = self.operand()?;
        let op = match self.bump() {
            Some(Tok::Cmp(op)) => op,
            _ => {
                return Err(Error::FormulaParse {
                    pos: self.here(),
                    msg: "expected a comparison operator".into(),
                })
            }
        };
        let rhs = self.operand()?;
        match (lhs, rhs) {
            (Operand::Term(a), Operand::Term(b)) => {
                Ok(Formula::new(FormulaKind::Compare(a, op, b), pos))
            }
            (Operand::Word(a), Operand::Word(b)) => {
                Ok(Formula::new(FormulaKind::WordCompare(a, op, b), pos))
            }
            _ => Err(Error::FormulaParse {
                pos,
                msg: "word values compare only with word values or @constants".into(),
            }),
        }
    }

    fn operand(&mut self) -> Result<Operand> {
        match self.peek() {
            Some(Tok::OutConst(c)) => {
                let c = *c;
                self.pos += 1;
                Ok(Operand::Word(WordOperand::Output(c)))
            }
            Some(Tok::Ident(_)) if self.peek2() == Some(&Tok::LBracket) => {
                let word = match self.bump() {
                    Some(Tok::Ident(w)) => w,
                    _ => unreachable!(),
                };
                let mut indices = Vec::new();
                while self.peek() == Some(&Tok::LBracket) {
                    self.pos += 1;
                    indices.push(self.term()?);
                    self.expect(&Tok::RBracket, "']'")?;
                }
                Ok(Operand::Word(WordOperand::Index { word, indices }))
            }
            _ => Ok(Operand::Term(self.term()?)),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Term::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = Term::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Term> {
        let mut lhs = self.primary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    let at = self.here();
                    self.pos += 1;
                    let rhs = self.primary()?;
                    lhs = match (lhs, rhs) {
                        (Term::Const(c), t) | (t, Term::Const(c)) => Term::Mul(c, Box::new(t)),
                        _ => {
                            return Err(Error::FormulaParse {
                                pos: at,
                                msg: "multiplication needs a constant side".into(),
                            })
                        }
                    };
                }
                Some(Tok::Slash) => {
                    let at = self.here();
                    self.pos += 1;
                    match self.primary()? {
                        Term::Const(c) if c > 0 => lhs = Term::Div(Box::new(lhs), c),
                        Term::Const(_) => {
                            return Err(Error::FormulaParse {
                                pos: at,
                                msg: "division by zero".into(),
                            })
                        }
                        _ => {
                            return Err(Error::FormulaParse {
                                pos: at,
                                msg: "division needs a constant divisor".into(),
                            })
                        }
                    }
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn primary(&mut self) -> Result<Term> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Term::Const(n)),
            Some(Tok::Ident(v)) => {
                if self.peek() == Some(&Tok::LBracket) {
                    return Err(Error::FormulaParse {
                        pos,
                        msg: "word indexing cannot appear inside arithmetic terms".into(),
                    });
                }
                check_var(&v, pos).map(Term::Var)
            }
            Some(Tok::LParen) => {
                let t = self.term()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(t)
            }
            other => Err(Error::FormulaParse {
                pos,
                msg: format!("expected a term, got {other:?}"),
            }),
        }
    }
}

#[derive(Debug)]
enum Operand {
    Term(Term),
    Word(WordOperand),
}

fn is_quantifier(name: &str) -> bool {
    (name.starts_with('A') || name.starts_with('E'))
        && name[1..].chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

fn check_var(name: &str, pos: usize) -> Result<String> {
    let mut chars = name.chars();
    let ok = chars.next().is_some_and(|c| c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(name.to_string())
    } else {
        Err(Error::FormulaParse {
            pos,
            msg: format!("'{name}' is not a valid variable (lowercase identifiers)"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Formula {
        parse_formula(text).unwrap().formula
    }

    #[test]
    fn parses_hascube_shape() {
        let f = parse_formula(
            "?lsd_3 Ei,p,t p>=1 & Aj (j<2*p) => TP[t][i+j]=TP[t][i+j+p]",
        )
        .unwrap();
        assert_eq!(f.default_base, Some(3));
        assert!(f.formula.free_vars().is_empty());
        match f.formula.kind {
            FormulaKind::Exists(vars, body) => {
                assert_eq!(vars, vec!["i", "p", "t"]);
                // body is p>=1 & (Aj ...)
                match body.kind {
                    FormulaKind::And(_, rhs) => {
                        assert!(matches!(rhs.kind, FormulaKind::Forall(_, _)));
                    }
                    other => panic!("expected conjunction, got {other:?}"),
                }
            }
            other => panic!("expected Exists, got {other:?}"),
        }
    }

    #[test]
    fn quantifier_swallows_implication() {
        // Aj (j<n) => X parses as Aj ((j<n) => X)
        let f = parse("Aj (j<n) => j<m");
        assert_eq!(
            f.free_vars().into_iter().collect::<Vec<_>>(),
            vec!["m".to_string(), "n".to_string()]
        );
        match f.kind {
            FormulaKind::Forall(vars, body) => {
                assert_eq!(vars, vec!["j"]);
                assert!(matches!(body.kind, FormulaKind::Implies(_, _)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn universal_closed() {
        let f = parse("Ax x=x");
        assert!(f.free_vars().is_empty());
        assert!(matches!(f.kind, FormulaKind::Forall(_, _)));
    }

    #[test]
    fn precedence_not_and_or_implies() {
        // ~a=1 & b=1 | c=1 => d=1  ==  ((~(a=1) & b=1) | c=1) => d=1
        let f = parse("~a=1 & b=1 | c=1 => d=1");
        match f.kind {
            FormulaKind::Implies(lhs, _) => match lhs.kind {
                FormulaKind::Or(ll, _) => match ll.kind {
                    FormulaKind::And(not, _) => {
                        assert!(matches!(not.kind, FormulaKind::Not(_)))
                    }
                    other => panic!("expected And, got {other:?}"),
                },
                other => panic!("expected Or, got {other:?}"),
            },
            other => panic!("expected Implies, got {other:?}"),
        }
    }

    #[test]
    fn subtraction_and_parenthesized_terms() {
        let f = parse("TP[t][(i+n)-(j+1)] = @2");
        match f.kind {
            FormulaKind::WordCompare(WordOperand::Index { word, indices }, CmpOp::Eq, rhs) => {
                assert_eq!(word, "TP");
                assert_eq!(indices.len(), 2);
                assert!(matches!(indices[1], Term::Sub(_, _)));
                assert_eq!(rhs, WordOperand::Output(2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn calls_with_compound_args() {
        let f = parse("$cmp(i1,i2,x/9,t,u)");
        match f.kind {
            FormulaKind::Call(name, args) => {
                assert_eq!(name, "cmp");
                assert_eq!(args.len(), 5);
                assert!(matches!(args[2], Term::Div(_, 9)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unbalanced_parenthesis_reports_position() {
        match parse_formula("Ei (i<3 & i>1") {
            Err(Error::FormulaParse { pos, .. }) => assert!(pos >= 12),
            other => panic!("expected error, got {other:?}"),
        }
    }

    #[test]
    fn mixed_word_and_term_comparison_rejected() {
        assert!(parse_formula("TP[t][i] = x").is_err());
        assert!(parse_formula("x = @1").is_err());
    }

    #[test]
    fn multiplication_needs_constant() {
        assert!(parse_formula("x*y = z").is_err());
        assert!(parse_formula("2*y = z").is_ok());
        assert!(parse_formula("y*2 = z").is_ok());
        assert!(parse_formula("x/y = z").is_err());
        assert!(parse_formula("x/0 = z").is_err());
    }
}
