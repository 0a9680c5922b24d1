//! Reader for the parenthesised application syntax.
//!
//! ```text
//! VAR  ::= [a-zA-Z_][a-zA-Z0-9_']*
//! TERM ::= VAR | "\" VAR+ TERM | "(" TERM ")" TERM*
//! ```
//!
//! `(t)u v` is `((t)u)v`; an argument that starts with `(` swallows the rest
//! of the sequence, so `(f)(f)x` is `f (f x)`. At the start of a term a bare
//! variable may also take arguments (`x y z` is `((x)y)z`). Builtins are
//! written `@name` and expand to their closed terms.

use super::Term;
use crate::builtins;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Lambda,
    Open,
    Close,
    Var(String),
    Builtin(String),
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_var_start(c: char) -> bool {
    (c.is_alphabetic() && c != 'λ') || c == '_'
}

fn is_var_char(c: char) -> bool {
    (c.is_alphanumeric() && c != 'λ') || c == '_' || c == '\''
}

fn lex(text: &str) -> Result<(Vec<Lexed>, (usize, usize)), ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = match c {
            '\\' | 'λ' => {
                bump(&mut chars);
                Tok::Lambda
            }
            '(' => {
                bump(&mut chars);
                Tok::Open
            }
            ')' => {
                bump(&mut chars);
                Tok::Close
            }
            '@' => {
                bump(&mut chars);
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if is_var_char(c) || c == ':' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                if name.is_empty() {
                    return Err(ParseError {
                        line: l,
                        column: col,
                        message: "expected builtin name after '@'".into(),
                    });
                }
                Tok::Builtin(name)
            }
            c if is_var_start(c) => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if is_var_char(c) {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Var(name)
            }
            other => {
                return Err(ParseError {
                    line: l,
                    column: col,
                    message: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push(Lexed {
            tok,
            line: l,
            column: col,
        });
    }
    Ok((out, (line, column)))
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = match self.toks.get(self.pos) {
            Some(l) => (l.line, l.column),
            None => self.end,
        };
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn starts_term(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Lambda | Tok::Open | Tok::Var(_) | Tok::Builtin(_))
        )
    }

    fn builtin(&self, name: &str) -> Result<Term, ParseError> {
        builtins::lookup(name).ok_or_else(|| self.error(format!("unknown builtin '@{name}'")))
    }

    /// A full term: a λ, or a head followed by any number of arguments.
    fn term(&mut self) -> Result<Term, ParseError> {
        let head = match self.peek() {
            Some(Tok::Lambda) => return self.lambda(),
            Some(Tok::Open) => self.group()?,
            Some(Tok::Var(x)) => {
                let t = Term::var(x.clone());
                self.pos += 1;
                t
            }
            Some(Tok::Builtin(b)) => {
                let t = self.builtin(&b.clone())?;
                self.pos += 1;
                t
            }
            Some(Tok::Close) => return Err(self.error("unexpected ')'")),
            None => return Err(self.error("unexpected end of input")),
        };
        let mut t = head;
        while self.starts_term() {
            let arg = self.argument()?;
            t = Term::app(t, arg);
        }
        Ok(t)
    }

    /// A term in argument position: variables stand alone, anything else
    /// extends as far right as possible.
    fn argument(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Var(x)) => {
                let t = Term::var(x.clone());
                self.pos += 1;
                Ok(t)
            }
            Some(Tok::Builtin(b)) => {
                let t = self.builtin(&b.clone())?;
                self.pos += 1;
                Ok(t)
            }
            _ => self.term(),
        }
    }

    fn group(&mut self) -> Result<Term, ParseError> {
        self.pos += 1;
        let t = self.term()?;
        match self.peek() {
            Some(Tok::Close) => {
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.error("expected ')'")),
        }
    }

    fn lambda(&mut self) -> Result<Term, ParseError> {
        self.pos += 1;
        let mut binders = Vec::new();
        while let Some(Tok::Var(x)) = self.peek() {
            binders.push(x.clone());
            self.pos += 1;
        }
        if binders.is_empty() {
            return Err(self.error("expected a variable after λ"));
        }
        let body = if self.starts_term() {
            self.term()?
        } else if binders.len() >= 2 {
            // `\x f x` reads as λxλf.x
            Term::var(binders.pop().unwrap())
        } else {
            return Err(self.error("expected a body after λ binders"));
        };
        Ok(Term::abs_many(&binders, body))
    }
}

/// Parses a term. Unbound names are free variables.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let (toks, end) = lex(text)?;
    let mut p = Parser { toks, pos: 0, end };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}
