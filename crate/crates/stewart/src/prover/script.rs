//! Statement scripts: `eval`, `def` and `reg` commands in the source
//! query syntax, one statement per `:`/`;` terminator, `#` comments to
//! end of line, formula bodies in double quotes.

use super::Session;
use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Eval { name: String, body: String, line: usize },
    Def { name: String, body: String, line: usize },
    Reg { name: String, bases: Vec<u32>, body: String, line: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptResult {
    Eval { name: String, value: bool },
    Def { name: String, vars: Vec<String>, states: usize },
    Reg { name: String, states: usize },
    Note(String),
}

impl fmt::Display for ScriptResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptResult::Eval { name, value } => {
                write!(f, "{name}: {}", if *value { "TRUE" } else { "FALSE" })
            }
            ScriptResult::Def { name, vars, states } => {
                write!(f, "{name}: defined over ({}), {} states", vars.join(","), states)
            }
            ScriptResult::Reg { name, states } => {
                write!(f, "{name}: registered, {states} states")
            }
            ScriptResult::Note(msg) => write!(f, "note: {msg}"),
        }
    }
}

#[derive(Debug, PartialEq)]
enum RawTok {
    Word(String),
    Quoted(String),
    End, // ':' or ';'
}

fn scan(text: &str) -> Result<Vec<(RawTok, usize)>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1usize;
    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                line += 1;
                chars.next();
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            '#' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        line += 1;
                        break;
                    }
                }
            }
            ':' | ';' => {
                chars.next();
                out.push((RawTok::End, line));
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                let start = line;
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\n') => {
                            line += 1;
                            s.push('\n');
                        }
                        Some(c) => s.push(c),
                        None => {
                            return Err(Error::Script {
                                line: start,
                                msg: "unterminated string".into(),
                            })
                        }
                    }
                }
                out.push((RawTok::Quoted(s), start));
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || matches!(c, ':' | ';' | '"' | '#') {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push((RawTok::Word(s), line));
            }
        }
    }
    Ok(out)
}

/// Splits a script into statements.
pub fn parse_script(text: &str) -> Result<Vec<Statement>> {
    let toks = scan(text)?;
    let mut statements = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let (cmd, line) = match &toks[i] {
            (RawTok::Word(w), l) => (w.clone(), *l),
            (RawTok::End, _) => {
                i += 1;
                continue;
            }
            (other, l) => {
                return Err(Error::Script {
                    line: *l,
                    msg: format!("expected a command, got {other:?}"),
                })
            }
        };
        i += 1;
        let name = match toks.get(i) {
            Some((RawTok::Word(w), _)) => w.clone(),
            _ => {
                return Err(Error::Script {
                    line,
                    msg: format!("'{cmd}' needs a name"),
                })
            }
        };
        i += 1;
        let mut bases = Vec::new();
        if cmd == "reg" {
            while let Some((RawTok::Word(tag), l)) = toks.get(i) {
                let base = tag
                    .strip_prefix("lsd_")
                    .and_then(|b| b.parse::<u32>().ok())
                    .filter(|&b| b >= 2)
                    .ok_or_else(|| Error::Script {
                        line: *l,
                        msg: format!("bad numeration tag '{tag}'"),
                    })?;
                bases.push(base);
                i += 1;
            }
        }
        let body = match toks.get(i) {
            Some((RawTok::Quoted(s), _)) => s.clone(),
            _ => {
                return Err(Error::Script {
                    line,
                    msg: format!("'{cmd}' needs a quoted body"),
                })
            }
        };
        i += 1;
        match toks.get(i) {
            Some((RawTok::End, _)) => i += 1,
            other => {
                return Err(Error::Script {
                    line,
                    msg: format!("statement must end with ':' or ';', got {other:?}"),
                })
            }
        }
        statements.push(match cmd.as_str() {
            "eval" => Statement::Eval { name, body, line },
            "def" => Statement::Def { name, body, line },
            "reg" => {
                if bases.is_empty() {
                    return Err(Error::Script {
                        line,
                        msg: "'reg' needs at least one numeration tag".into(),
                    });
                }
                Statement::Reg { name, bases, body, line }
            }
            other => {
                return Err(Error::Script {
                    line,
                    msg: format!("unknown command '{other}'"),
                })
            }
        });
    }
    Ok(statements)
}

impl Session {
    /// Runs a script of `eval`/`def`/`reg` statements and reports one
    /// result per statement.
    pub fn run_script(&mut self, text: &str) -> Result<Vec<ScriptResult>> {
        let statements = parse_script(text)?;
        let mut out = Vec::new();
        for st in statements {
            match st {
                Statement::Eval { name, body, line } => {
                    self.note_link7(&body, &mut out);
                    let value = self.eval_closed(&body).map_err(|e| prefix_line(e, line))?;
                    out.push(ScriptResult::Eval { name, value });
                }
                Statement::Def { name, body, line } => {
                    self.note_link7(&body, &mut out);
                    let stored = self
                        .define(&name, &body, None)
                        .map_err(|e| prefix_line(e, line))?;
                    out.push(ScriptResult::Def {
                        name,
                        vars: stored.vars.clone(),
                        states: stored.dfa.num_states(),
                    });
                }
                Statement::Reg { name, bases, body, line } => {
                    let stored = self
                        .register_regex(&name, &bases, &body)
                        .map_err(|e| prefix_line(e, line))?;
                    out.push(ScriptResult::Reg {
                        name,
                        states: stored.dfa.num_states(),
                    });
                }
            }
        }
        Ok(out)
    }

    fn note_link7(&self, body: &str, out: &mut Vec<ScriptResult>) {
        if !self.strict && body.contains("$link7") && !self.named_automata().any(|(n, _)| n == "link7")
        {
            out.push(ScriptResult::Note(
                "'$link7' is not defined; resolving it to 'link'".into(),
            ));
        }
    }
}

fn prefix_line(e: Error, line: usize) -> Error {
    match e {
        e @ Error::Script { .. } => e,
        other => Error::Script {
            line,
            msg: other.to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_statements() {
        let script = r#"
# a comment
def faceq "?lsd_3 Ak (k<n) => TP[t][i+k]=TP[t][j+k]":
# vars i,j,n,t
reg power3 lsd_3 "0*10*":
eval hascube "?lsd_3 Ei,p,t p>=1":
"#;
        let sts = parse_script(script).unwrap();
        assert_eq!(sts.len(), 3);
        assert!(matches!(&sts[0], Statement::Def { name, .. } if name == "faceq"));
        assert!(
            matches!(&sts[1], Statement::Reg { name, bases, .. } if name == "power3" && bases == &vec![3])
        );
        assert!(matches!(&sts[2], Statement::Eval { name, .. } if name == "hascube"));
    }

    #[test]
    fn missing_terminator_is_an_error() {
        assert!(parse_script("eval x \"Ei i=i\"").is_err());
    }

    #[test]
    fn multiline_bodies_keep_line_numbers() {
        let script = "reg differ lsd_7 lsd_7 lsd_3\n\"[1,1,0]\n[0,0,0]*\":";
        // body spans lines; the statement parses
        let sts = parse_script(script).unwrap();
        assert_eq!(sts.len(), 1);
    }
}
