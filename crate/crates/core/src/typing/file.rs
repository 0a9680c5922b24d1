//! Text format for derivations.
//!
//! ```text
//! node     = "(rule" TAG ctx term type [witness] [premises] ")"
//! ctx      = "(ctx" { "(bind" NAME STRING ")" } ")"
//! term     = "(term" STRING ")"
//! type     = "(type" STRING ")"
//! witness  = "(witness" ( "(fo" STRING ")"
//!                       | "(pred (params" {NAME} ")" STRING ")"
//!                       | "(bot (params" {NAME} ")" STRING ")"
//!                       | "(eq" {step} ")" ) ")"
//! step     = "(step" NAME "(inst" { "(" NAME STRING ")" } ")" "(pos" {INT} ")" ("fwd" | "bwd") ")"
//! premises = "(premises" {node} ")"
//! ```
//!
//! Strings hold terms in the λ-term syntax and formulas in the formula
//! syntax; `\"` and `\\` are the only escapes. `;` starts a comment.

use crate::formula::{
    display_fo_term, display_formula, parse_fo_term, parse_formula_with, Direction, EqStep,
    PredAbstraction, Signature,
};
use crate::term::{parse_term, print_folded};

use super::{Context, Derivation, Rule, TypingError};

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Atom(String),
    Str(String),
    List(Vec<Sexp>, (usize, usize)),
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Reader<'_> {
    fn error(&self, message: impl Into<String>) -> TypingError {
        TypingError::Parse {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, TypingError> {
        self.skip_blank();
        let start = (self.line, self.column);
        match self.chars.peek().copied() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek() {
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(items, start));
                        }
                        None => return Err(self.error("unclosed parenthesis")),
                        _ => items.push(self.read()?),
                    }
                }
            }
            Some(')') => Err(self.error("unexpected ')'")),
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(self.error("unterminated string")),
                        Some('"') => return Ok(Sexp::Str(s)),
                        Some('\\') => match self.bump() {
                            Some(c @ ('"' | '\\')) => s.push(c),
                            _ => return Err(self.error("unknown escape in string")),
                        },
                        Some(c) => s.push(c),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | '"' | ';') {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Sexp::Atom(s))
            }
        }
    }
}

fn at((line, column): (usize, usize), message: impl Into<String>) -> TypingError {
    TypingError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A list whose head is the atom `head`, returning the remaining items.
fn form<'a>(s: &'a Sexp, head: &str) -> Result<(&'a [Sexp], (usize, usize)), TypingError> {
    match s {
        Sexp::List(items, pos) => match items.first() {
            Some(Sexp::Atom(h)) if h == head => Ok((&items[1..], *pos)),
            _ => Err(at(*pos, format!("expected ({head} ...)"))),
        },
        _ => Err(TypingError::Parse {
            line: 0,
            column: 0,
            message: format!("expected ({head} ...)"),
        }),
    }
}

fn string(s: &Sexp, pos: (usize, usize), what: &str) -> Result<String, TypingError> {
    match s {
        Sexp::Str(v) => Ok(v.clone()),
        _ => Err(at(pos, format!("expected a string for {what}"))),
    }
}

fn atom(s: &Sexp, pos: (usize, usize), what: &str) -> Result<String, TypingError> {
    match s {
        Sexp::Atom(v) => Ok(v.clone()),
        _ => Err(at(pos, format!("expected a name for {what}"))),
    }
}

fn one<'a>(items: &'a [Sexp], pos: (usize, usize), what: &str) -> Result<&'a Sexp, TypingError> {
    match items {
        [x] => Ok(x),
        _ => Err(at(pos, format!("{what} takes exactly one argument"))),
    }
}

struct Decoder<'s> {
    sig: &'s Signature,
}

impl Decoder<'_> {
    fn formula(&self, text: &str, pos: (usize, usize)) -> Result<crate::formula::Formula, TypingError> {
        parse_formula_with(text, self.sig).map_err(|e| at(pos, format!("in formula {text:?}: {e}")))
    }

    fn node(&self, s: &Sexp) -> Result<Derivation, TypingError> {
        let (items, pos) = form(s, "rule")?;
        let tag = atom(items.first().ok_or_else(|| at(pos, "missing rule tag"))?, pos, "rule tag")?;
        let mut ctx = None;
        let mut term = None;
        let mut ty = None;
        let mut witness = None;
        let mut premises = Vec::new();
        for item in &items[1..] {
            let Sexp::List(parts, ipos) = item else {
                return Err(at(pos, "expected a parenthesised field"));
            };
            let head = parts.first().and_then(|h| match h {
                Sexp::Atom(a) => Some(a.as_str()),
                _ => None,
            });
            let rest = &parts[1..];
            match head {
                Some("ctx") => ctx = Some(self.context(rest, *ipos)?),
                Some("term") => {
                    let text = string(one(rest, *ipos, "term")?, *ipos, "term")?;
                    term = Some(parse_term(&text).map_err(|e| at(*ipos, format!("in term {text:?}: {e}")))?);
                }
                Some("type") => {
                    let text = string(one(rest, *ipos, "type")?, *ipos, "type")?;
                    ty = Some(self.formula(&text, *ipos)?);
                }
                Some("witness") => witness = Some((one(rest, *ipos, "witness")?, *ipos)),
                Some("premises") => {
                    premises = rest.iter().map(|p| self.node(p)).collect::<Result<_, _>>()?;
                }
                _ => return Err(at(*ipos, "unknown field")),
            }
        }
        let rule = self.rule(&tag, witness, pos)?;
        Ok(Derivation {
            ctx: ctx.ok_or_else(|| at(pos, "missing (ctx ...)"))?,
            term: term.ok_or_else(|| at(pos, "missing (term ...)"))?,
            ty: ty.ok_or_else(|| at(pos, "missing (type ...)"))?,
            rule,
            premises,
        })
    }

    fn context(&self, binds: &[Sexp], pos: (usize, usize)) -> Result<Context, TypingError> {
        let mut entries = Vec::new();
        for b in binds {
            let (parts, bpos) = form(b, "bind").map_err(|_| at(pos, "expected (bind NAME \"type\")"))?;
            let [name, ty] = parts else {
                return Err(at(bpos, "bind takes a name and a type"));
            };
            let name = atom(name, bpos, "binding")?;
            let ty = self.formula(&string(ty, bpos, "binding type")?, bpos)?;
            entries.push((name, ty));
        }
        Context::from_entries(entries).map_err(|e| at(pos, e.to_string()))
    }

    fn abstraction(&self, rest: &[Sexp], pos: (usize, usize)) -> Result<PredAbstraction, TypingError> {
        let [params, body] = rest else {
            return Err(at(pos, "expected (params ...) and a body"));
        };
        let (names, ppos) = form(params, "params").map_err(|_| at(pos, "expected (params ...)"))?;
        let params = names
            .iter()
            .map(|n| atom(n, ppos, "parameter"))
            .collect::<Result<Vec<_>, _>>()?;
        let body = self.formula(&string(body, pos, "witness body")?, pos)?;
        Ok(PredAbstraction { params, body })
    }

    fn step(&self, s: &Sexp) -> Result<EqStep, TypingError> {
        let (parts, pos) = form(s, "step")?;
        let [name, inst, position, dir] = parts else {
            return Err(at(pos, "step takes a name, (inst ...), (pos ...) and a direction"));
        };
        let equation = atom(name, pos, "equation")?;
        let (pairs, ipos) = form(inst, "inst")?;
        let mut bindings = Vec::new();
        for p in pairs {
            match p {
                Sexp::List(kv, kpos) if kv.len() == 2 => {
                    let var = atom(&kv[0], *kpos, "variable")?;
                    let text = string(&kv[1], *kpos, "term")?;
                    let t = parse_fo_term(&text, self.sig).map_err(|e| at(*kpos, e.to_string()))?;
                    bindings.push((var, t));
                }
                _ => return Err(at(ipos, "expected (VAR \"term\")")),
            }
        }
        let (idx, ppos) = form(position, "pos")?;
        let position = idx
            .iter()
            .map(|i| match i {
                Sexp::Atom(a) => a.parse().map_err(|_| at(ppos, format!("bad index {a}"))),
                _ => Err(at(ppos, "expected an index")),
            })
            .collect::<Result<Vec<usize>, _>>()?;
        let direction = match atom(dir, pos, "direction")?.as_str() {
            "fwd" => Direction::Forward,
            "bwd" => Direction::Backward,
            other => return Err(at(pos, format!("direction must be fwd or bwd, found {other}"))),
        };
        Ok(EqStep {
            equation,
            inst: bindings,
            position,
            direction,
        })
    }

    fn rule(&self, tag: &str, witness: Option<(&Sexp, (usize, usize))>, pos: (usize, usize)) -> Result<Rule, TypingError> {
        let plain = match tag {
            "ax" => Some(Rule::Ax),
            "abs" => Some(Rule::Abs),
            "app" => Some(Rule::App),
            "gen-fo" => Some(Rule::GenFo),
            "gen-pred" => Some(Rule::GenPred),
            "gen-bot" => Some(Rule::GenBot),
            "inst-fo" | "inst-pred" | "inst-bot" | "eq" => None,
            other => return Err(at(pos, format!("unknown rule {other}"))),
        };
        if let Some(rule) = plain {
            if witness.is_some() {
                return Err(at(pos, format!("{tag} takes no witness")));
            }
            return Ok(rule);
        }
        let (w, wpos) = witness.ok_or_else(|| at(pos, format!("{tag} needs a witness")))?;
        let expected = match tag {
            "inst-fo" => "fo",
            "inst-pred" => "pred",
            "inst-bot" => "bot",
            _ => "eq",
        };
        let (rest, wpos) = form(w, expected).map_err(|_| at(wpos, format!("{tag} needs a ({expected} ...) witness")))?;
        Ok(match expected {
            "fo" => {
                let text = string(one(rest, wpos, "fo")?, wpos, "witness")?;
                Rule::InstFo(parse_fo_term(&text, self.sig).map_err(|e| at(wpos, e.to_string()))?)
            }
            "pred" => Rule::InstPred(self.abstraction(rest, wpos)?),
            "bot" => Rule::InstBot(self.abstraction(rest, wpos)?),
            _ => Rule::Eq(rest.iter().map(|s| self.step(s)).collect::<Result<_, _>>()?),
        })
    }
}

/// Reads one derivation. Formulas are parsed against `sig`.
pub fn parse_derivation(text: &str, sig: &Signature) -> Result<Derivation, TypingError> {
    let mut reader = Reader {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let s = reader.read()?;
    reader.skip_blank();
    if reader.chars.peek().is_some() {
        return Err(reader.error("trailing input after the derivation"));
    }
    Decoder { sig }.node(&s)
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn write_abstraction(kind: &str, g: &PredAbstraction, out: &mut String) {
    out.push_str(&format!(
        "({kind} (params{}) {})",
        g.params.iter().map(|p| format!(" {p}")).collect::<String>(),
        quote(&display_formula(&g.body))
    ));
}

fn write_node(d: &Derivation, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    out.push_str(&format!("{pad}(rule {}\n", d.rule.tag()));
    out.push_str(&format!("{pad}  (ctx"));
    for (x, a) in d.ctx.entries() {
        out.push_str(&format!(" (bind {x} {})", quote(&display_formula(a))));
    }
    out.push_str(")\n");
    out.push_str(&format!("{pad}  (term {})\n", quote(&print_folded(&d.term))));
    out.push_str(&format!("{pad}  (type {})", quote(&display_formula(&d.ty))));
    let mut w = String::new();
    match &d.rule {
        Rule::InstFo(u) => w = format!("(fo {})", quote(&display_fo_term(u))),
        Rule::InstPred(g) => write_abstraction("pred", g, &mut w),
        Rule::InstBot(g) => write_abstraction("bot", g, &mut w),
        Rule::Eq(chain) => {
            w.push_str("(eq");
            for s in chain {
                let inst: String = s
                    .inst
                    .iter()
                    .map(|(x, t)| format!(" ({x} {})", quote(&display_fo_term(t))))
                    .collect();
                let pos: String = s.position.iter().map(|i| format!(" {i}")).collect();
                let dir = match s.direction {
                    Direction::Forward => "fwd",
                    Direction::Backward => "bwd",
                };
                w.push_str(&format!(" (step {} (inst{inst}) (pos{pos}) {dir})", s.equation));
            }
            w.push(')');
        }
        _ => {}
    }
    if !w.is_empty() {
        out.push_str(&format!("\n{pad}  (witness {w})"));
    }
    if !d.premises.is_empty() {
        out.push_str(&format!("\n{pad}  (premises\n"));
        for (i, p) in d.premises.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            write_node(p, indent + 4, out);
        }
        out.push(')');
    }
    out.push(')');
}

/// Prints a derivation in the format read by [`parse_derivation`].
pub fn print_derivation(d: &Derivation) -> String {
    let mut out = String::new();
    write_node(d, 0, &mut out);
    out.push('\n');
    out
}
