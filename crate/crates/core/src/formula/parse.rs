//! Formula, first-order term and equation-file parsers.
//!
//! ```text
//! formula  := unary ("," unary)* "->" formula | unary
//! unary    := "~" unary | quant var ["/" k] unary | "(" formula ")" | "{" formula "}"
//!           | "bot" | macro | Name ["_|"] ["(" term ("," term)* ")"]
//! macro    := "N" | "N[" term "]" | "N*[" term "]" | "N_|[" term "]"
//! term     := var | numeral | sym ["(" term ("," term)* ")"] | compact
//! ```
//!
//! A quantifier binds the unary formula right after it, so `!x X(x) -> Y`
//! reads as `(∀x X(x)) → Y`. Unicode spellings `∀ → ⊥ ¬` are accepted, and
//! `X⊥` is the same as `X_|`. Names starting with an uppercase letter are
//! predicate variables unless the signature declares them as predicate
//! symbols. `N` followed by `[` or standing alone is a macro. A numeral `k`
//! reads as `sᵏ(0)`, and an identifier made of unary symbols followed by
//! one letter or digit is an application, so `ssy` reads as `s(s(y))`.

use std::collections::BTreeMap;

use super::equations::{Equation, EquationSet};
use super::{arrow, nat, nat_bot, nat_prop, nat_star, neg, FoTerm, Formula, FormulaError, SoKind};

/// Arities of function and predicate symbols, fixed for a session.
#[derive(Debug, Clone)]
pub struct Signature {
    pub functions: BTreeMap<String, usize>,
    pub predicates: BTreeMap<String, usize>,
}

impl Default for Signature {
    /// `0`, `s`, `p` and a binary `m`; no predicate symbols.
    fn default() -> Signature {
        let functions = [("0", 0), ("s", 1), ("p", 1), ("m", 2)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        Signature {
            functions,
            predicates: BTreeMap::new(),
        }
    }
}

impl Signature {
    pub fn with_predicate(mut self, name: &str, arity: usize) -> Signature {
        self.predicates.insert(name.into(), arity);
        self
    }

    pub fn with_function(mut self, name: &str, arity: usize) -> Signature {
        self.functions.insert(name.into(), arity);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Forall,
    Arrow,
    Comma,
    Neg,
    Star,
    Slash,
    Colon,
    Equals,
    Open(char),
    Close(char),
    Bot,
    /// Identifier and whether it carries the ⊥-suffix.
    Ident(String, bool),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() && c != 'λ' || c == '\''
}

fn lex(text: &str) -> Result<Vec<Token>, FormulaError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, column, message: String| FormulaError::Parse {
        line,
        column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok, width: usize, i: &mut usize, col: &mut usize| {
            out.push(Token {
                tok,
                line: l0,
                column: c0,
            });
            *i += width;
            *col += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            _ if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '!' | '∀' => push(Tok::Forall, 1, &mut i, &mut col),
            '→' => push(Tok::Arrow, 1, &mut i, &mut col),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Arrow, 2, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            '~' | '¬' => push(Tok::Neg, 1, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '/' => push(Tok::Slash, 1, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            '=' => push(Tok::Equals, 1, &mut i, &mut col),
            '(' | '{' | '[' => push(Tok::Open(c), 1, &mut i, &mut col),
            ')' | '}' | ']' => push(Tok::Close(c), 1, &mut i, &mut col),
            '⊥' => push(Tok::Bot, 1, &mut i, &mut col),
            _ if is_ident_char(c) || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (is_ident_char(chars[i]) || chars[i] == '_' && chars.get(i + 1) != Some(&'|'))
                {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                col += i - start;
                let suffix = if chars.get(i) == Some(&'⊥') {
                    i += 1;
                    col += 1;
                    true
                } else if chars.get(i) == Some(&'_') && chars.get(i + 1) == Some(&'|') {
                    i += 2;
                    col += 2;
                    true
                } else {
                    false
                };
                if name == "bot" && !suffix {
                    out.push(Token {
                        tok: Tok::Bot,
                        line: l0,
                        column: c0,
                    });
                } else {
                    out.push(Token {
                        tok: Tok::Ident(name, suffix),
                        line: l0,
                        column: c0,
                    });
                }
            }
            _ => return Err(err(line, col, format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<Token>,
    pos: usize,
    sig: &'s Signature,
    end: (usize, usize),
}

fn is_upper(name: &str) -> bool {
    name.chars().next().is_some_and(char::is_uppercase)
}

impl<'s> Parser<'s> {
    fn new(text: &str, sig: &'s Signature) -> Result<Parser<'s>, FormulaError> {
        let toks = lex(text)?;
        let line = text.lines().count().max(1);
        let column = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Ok(Parser {
            toks,
            pos: 0,
            sig,
            end: (line, column),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn error(&self, message: impl Into<String>) -> FormulaError {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column));
        FormulaError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), FormulaError> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {}", describe(&want))))
        }
    }

    fn finish(&self) -> Result<(), FormulaError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {}", describe(t)))),
        }
    }

    fn formula(&mut self) -> Result<Formula, FormulaError> {
        let mut premises = vec![self.unary()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            premises.push(self.unary()?);
        }
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let conclusion = self.formula()?;
            Ok(premises.into_iter().rev().fold(conclusion, |acc, p| arrow(p, acc)))
        } else if premises.len() > 1 {
            Err(self.error("expected -> after a list of premises"))
        } else {
            Ok(premises.pop().unwrap())
        }
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek().cloned() {
            Some(Tok::Neg) => {
                self.pos += 1;
                Ok(neg(self.unary()?))
            }
            Some(Tok::Forall) => {
                self.pos += 1;
                self.quantifier()
            }
            Some(Tok::Open(c)) if c == '(' || c == '{' => {
                self.pos += 1;
                let f = self.formula()?;
                self.expect(Tok::Close(if c == '(' { ')' } else { '}' }))?;
                Ok(f)
            }
            Some(Tok::Bot) => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            Some(Tok::Ident(name, suffix)) if name == "N" => self.nat_macro(suffix),
            Some(Tok::Ident(name, suffix)) if is_upper(&name) => {
                self.pos += 1;
                let args = if self.peek() == Some(&Tok::Open('(')) {
                    self.term_args()?
                } else {
                    vec![]
                };
                if suffix {
                    return Ok(Formula::BotVar(name, args));
                }
                match self.sig.predicates.get(&name) {
                    Some(&k) if k != args.len() => Err(FormulaError::Arity {
                        name,
                        expected: k,
                        found: args.len(),
                    }),
                    Some(_) => Ok(Formula::Sym(name, args)),
                    None => Ok(Formula::Pred(name, args)),
                }
            }
            Some(t) => Err(self.error(format!("expected a formula, found {}", describe(&t)))),
            None => Err(self.error("expected a formula, found end of input")),
        }
    }

    fn nat_macro(&mut self, suffix: bool) -> Result<Formula, FormulaError> {
        let star = self.peek_at(1) == Some(&Tok::Star);
        let bracket_at = if star { 2 } else { 1 };
        if self.peek_at(bracket_at) != Some(&Tok::Open('[')) {
            if star || suffix {
                self.pos += 1 + usize::from(star);
                return Err(self.error("expected [ after N* or N_|"));
            }
            if self.peek_at(1) == Some(&Tok::Open('(')) {
                self.pos += 1;
                let args = self.term_args()?;
                return Ok(Formula::Pred("N".into(), args));
            }
            self.pos += 1;
            return Ok(nat_prop());
        }
        self.pos += bracket_at + 1;
        let t = self.term()?;
        self.expect(Tok::Close(']'))?;
        Ok(match (star, suffix) {
            (false, false) => nat(t),
            (true, false) => nat_star(t),
            (false, true) => nat_bot(t),
            (true, true) => return Err(self.error("N* and N_| cannot be combined")),
        })
    }

    fn quantifier(&mut self) -> Result<Formula, FormulaError> {
        let (name, suffix) = match self.bump() {
            Some(Tok::Ident(n, s)) => (n, s),
            _ => {
                self.pos -= 1;
                return Err(self.error("expected a variable after the quantifier"));
            }
        };
        let declared = if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            match self.bump() {
                Some(Tok::Ident(k, false)) if k.chars().all(|c| c.is_ascii_digit()) => {
                    Some(k.parse::<usize>().map_err(|e| self.error(e.to_string()))?)
                }
                _ => {
                    self.pos -= 1;
                    return Err(self.error("expected an arity after /"));
                }
            }
        } else {
            None
        };
        if !is_upper(&name) {
            if suffix || declared.is_some() {
                return Err(self.error("first-order variables take no suffix or arity"));
            }
            if self.sig.functions.contains_key(&name) {
                return Err(self.error(format!("{name} is a function symbol")));
            }
            let body = self.unary()?;
            return Ok(Formula::ForallFo(name, Box::new(body)));
        }
        let kind = if suffix { SoKind::Bot } else { SoKind::Pred };
        let body = self.unary()?;
        let used = first_arity(&body, kind, &name);
        let arity = match (declared, used) {
            (Some(d), Some(u)) if d != u => {
                return Err(FormulaError::Arity {
                    name,
                    expected: d,
                    found: u,
                })
            }
            (Some(d), _) => d,
            (None, Some(u)) => u,
            (None, None) => 0,
        };
        Ok(match kind {
            SoKind::Pred => Formula::ForallPred(name, arity, Box::new(body)),
            SoKind::Bot => Formula::ForallBot(name, arity, Box::new(body)),
        })
    }

    fn term_args(&mut self) -> Result<Vec<FoTerm>, FormulaError> {
        self.expect(Tok::Open('('))?;
        let mut args = vec![self.term()?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            args.push(self.term()?);
        }
        self.expect(Tok::Close(')'))?;
        Ok(args)
    }

    fn term(&mut self) -> Result<FoTerm, FormulaError> {
        let name = match self.peek() {
            Some(Tok::Ident(n, false)) => n.clone(),
            _ => return Err(self.error("expected a first-order term")),
        };
        let has_args = self.peek_at(1) == Some(&Tok::Open('('));
        if let Some(&k) = self.sig.functions.get(&name) {
            self.pos += 1;
            if k == 0 {
                return if has_args {
                    Err(self.error(format!("constant {name} takes no arguments")))
                } else {
                    Ok(FoTerm::Const(name))
                };
            }
            if !has_args {
                return Err(self.error(format!("{name} expects {k} arguments")));
            }
            let args = self.term_args()?;
            if args.len() != k {
                return Err(FormulaError::Arity {
                    name,
                    expected: k,
                    found: args.len(),
                });
            }
            return Ok(FoTerm::Fn(name, args));
        }
        if name.chars().all(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let n: u64 = name.parse().map_err(|_| self.error("numeral too large"))?;
            return Ok(FoTerm::numeral(n));
        }
        if !has_args {
            if let Some(t) = self.compact(&name) {
                self.pos += 1;
                return Ok(t);
            }
        }
        if is_upper(&name) || has_args {
            return Err(self.error(format!("unknown function symbol {name}")));
        }
        self.pos += 1;
        Ok(FoTerm::Var(name))
    }

    fn compact(&self, name: &str) -> Option<FoTerm> {
        let chars: Vec<char> = name.chars().collect();
        let (last, prefix) = chars.split_last()?;
        if prefix.is_empty() || !(last.is_ascii_lowercase() || last.is_ascii_digit()) {
            return None;
        }
        let unary = |c: &char| self.sig.functions.get(&c.to_string()) == Some(&1);
        if !prefix.iter().all(unary) {
            return None;
        }
        let last = last.to_string();
        let base = match self.sig.functions.get(&last) {
            Some(0) => FoTerm::Const(last),
            Some(_) => return None,
            None if last.chars().all(|c| c.is_ascii_digit()) => FoTerm::numeral(last.parse().ok()?),
            None => FoTerm::Var(last),
        };
        Some(
            prefix
                .iter()
                .rev()
                .fold(base, |t, f| FoTerm::Fn(f.to_string(), vec![t])),
        )
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Forall => "quantifier".into(),
        Tok::Arrow => "->".into(),
        Tok::Comma => ",".into(),
        Tok::Neg => "~".into(),
        Tok::Star => "*".into(),
        Tok::Slash => "/".into(),
        Tok::Colon => ":".into(),
        Tok::Equals => "=".into(),
        Tok::Open(c) | Tok::Close(c) => c.to_string(),
        Tok::Bot => "bot".into(),
        Tok::Ident(n, false) => format!("identifier {n}"),
        Tok::Ident(n, true) => format!("identifier {n}_|"),
    }
}

/// Arity at the first free occurrence of a second-order variable.
fn first_arity(f: &Formula, kind: SoKind, x: &str) -> Option<usize> {
    match f {
        Formula::Pred(y, args) if kind == SoKind::Pred && y == x => Some(args.len()),
        Formula::BotVar(y, args) if kind == SoKind::Bot && y == x => Some(args.len()),
        Formula::Arrow(a, b) => first_arity(a, kind, x).or_else(|| first_arity(b, kind, x)),
        Formula::ForallFo(_, b) => first_arity(b, kind, x),
        Formula::ForallPred(y, _, _) if kind == SoKind::Pred && y == x => None,
        Formula::ForallBot(y, _, _) if kind == SoKind::Bot && y == x => None,
        Formula::ForallPred(_, _, b) | Formula::ForallBot(_, _, b) => first_arity(b, kind, x),
        _ => None,
    }
}

/// Checks that every second-order variable is used at one arity only.
fn check_arities(f: &Formula) -> Result<(), FormulaError> {
    fn go(
        f: &Formula,
        pred: &mut Vec<(String, usize)>,
        bot: &mut Vec<(String, usize)>,
    ) -> Result<(), FormulaError> {
        let visit = |scope: &mut Vec<(String, usize)>, x: &String, n: usize| {
            match scope.iter().rev().find(|(y, _)| y == x) {
                Some((_, k)) if *k != n => Err(FormulaError::Arity {
                    name: x.clone(),
                    expected: *k,
                    found: n,
                }),
                Some(_) => Ok(()),
                None => {
                    scope.insert(0, (x.clone(), n));
                    Ok(())
                }
            }
        };
        match f {
            Formula::Pred(x, args) => visit(pred, x, args.len()),
            Formula::BotVar(x, args) => visit(bot, x, args.len()),
            Formula::Bot | Formula::Sym(..) => Ok(()),
            Formula::Arrow(a, b) => {
                go(a, pred, bot)?;
                go(b, pred, bot)
            }
            Formula::ForallFo(_, b) => go(b, pred, bot),
            Formula::ForallPred(x, k, b) => {
                pred.push((x.clone(), *k));
                let r = go(b, pred, bot);
                let i = pred.iter().rposition(|(y, _)| y == x).unwrap();
                pred.remove(i);
                r
            }
            Formula::ForallBot(x, k, b) => {
                bot.push((x.clone(), *k));
                let r = go(b, pred, bot);
                let i = bot.iter().rposition(|(y, _)| y == x).unwrap();
                bot.remove(i);
                r
            }
        }
    }
    go(f, &mut Vec::new(), &mut Vec::new())
}

pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    parse_formula_with(text, &Signature::default())
}

pub fn parse_formula_with(text: &str, sig: &Signature) -> Result<Formula, FormulaError> {
    let mut p = Parser::new(text, sig)?;
    let f = p.formula()?;
    p.finish()?;
    check_arities(&f)?;
    Ok(f)
}

pub fn parse_fo_term(text: &str, sig: &Signature) -> Result<FoTerm, FormulaError> {
    let mut p = Parser::new(text, sig)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

/// Reads lines `name : lhs = rhs`. `#` starts a comment.
pub fn parse_equations(text: &str, sig: &Signature) -> Result<EquationSet, FormulaError> {
    let mut set = EquationSet::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let shift = |e: FormulaError| match e {
            FormulaError::Parse { column, message, .. } => FormulaError::Parse {
                line: i + 1,
                column,
                message,
            },
            other => other,
        };
        let mut p = Parser::new(line, sig).map_err(shift)?;
        let name = match p.bump() {
            Some(Tok::Ident(n, false)) => n,
            _ => {
                p.pos = 0;
                return Err(shift(p.error("expected an equation name")));
            }
        };
        p.expect(Tok::Colon).map_err(shift)?;
        let lhs = p.term().map_err(shift)?;
        p.expect(Tok::Equals).map_err(shift)?;
        let rhs = p.term().map_err(shift)?;
        p.finish().map_err(shift)?;
        if set.get(&name).is_some() {
            return Err(FormulaError::Parse {
                line: i + 1,
                column: 1,
                message: format!("duplicate equation name {name}"),
            });
        }
        set.push(Equation { name, lhs, rhs });
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::super::{print_formula, display_formula};
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn nat_from_text() {
        assert_eq!(f("∀X {X(0), ∀y (X(y) → X(sy)) → X(x)}"), nat(FoTerm::var("x")));
        assert_eq!(f("N[x]"), nat(FoTerm::var("x")));
        assert_eq!(f("N*[0]"), nat_star(FoTerm::zero()));
        assert_eq!(f("N_|[y]"), nat_bot(FoTerm::var("y")));
        assert_eq!(f("N⊥[y]"), nat_bot(FoTerm::var("y")));
        assert_eq!(f("N"), nat_prop());
    }

    #[test]
    fn comma_sugar_and_right_association() {
        assert_eq!(f("A, B -> C"), f("A -> (B -> C)"));
        assert_eq!(f("A -> B -> C"), f("A -> (B -> C)"));
        assert_ne!(f("A -> B -> C"), f("(A -> B) -> C"));
        assert!(parse_formula("A, B").is_err());
    }

    #[test]
    fn quantifier_binds_tightly() {
        assert_eq!(f("!x X(x) -> Y"), f("(!x X(x)) -> Y"));
        assert_eq!(f("~A -> B"), f("(A -> bot) -> B"));
    }

    #[test]
    fn terms() {
        let sig = Signature::default();
        assert_eq!(parse_fo_term("2", &sig).unwrap(), FoTerm::numeral(2));
        assert_eq!(parse_fo_term("ss0", &sig).unwrap(), FoTerm::numeral(2));
        assert_eq!(
            parse_fo_term("sy", &sig).unwrap(),
            FoTerm::succ(FoTerm::var("y"))
        );
        assert_eq!(
            parse_fo_term("m(x, s(y))", &sig).unwrap(),
            FoTerm::Fn("m".into(), vec![FoTerm::var("x"), FoTerm::succ(FoTerm::var("y"))])
        );
        assert!(parse_fo_term("s(x, y)", &sig).is_err());
        assert!(parse_fo_term("q(x)", &sig).is_err());
        assert!(parse_fo_term("0(x)", &sig).is_err());
    }

    #[test]
    fn arity_errors() {
        assert!(matches!(
            parse_formula("!X/1 X(0, 1)"),
            Err(FormulaError::Arity { .. })
        ));
        assert!(matches!(
            parse_formula("X(0) -> X(0, 1)"),
            Err(FormulaError::Arity { .. })
        ));
        let sig = Signature::default().with_predicate("R", 1);
        assert!(matches!(
            parse_formula_with("R(0, 1)", &sig),
            Err(FormulaError::Arity { .. })
        ));
        assert!(matches!(parse_formula_with("R(0)", &sig), Ok(Formula::Sym(..))));
    }

    #[test]
    fn error_positions() {
        match parse_formula("A ->\n  B )") {
            Err(FormulaError::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        match parse_formula("A ->") {
            Err(FormulaError::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn roundtrips() {
        for s in [
            "N[x]",
            "N*[x]",
            "N_|[ss0]",
            "!x (N*[x] -> ~~N[x])",
            "!X_|/1 (bot -> bot)",
            "!y N[m(x, y)]",
            "~(A -> B) -> C",
            "A, (B -> C), ~~D -> E",
            "!X (X -> Y)",
        ] {
            let a = f(s);
            assert_eq!(f(&print_formula(&a)), a, "{s}");
            assert_eq!(f(&display_formula(&a)), a, "{s}");
        }
    }

    #[test]
    fn equation_files() {
        let set = parse_equations("# predecessor\np0 : p(0) = 0\nps : p(s(x)) = x  # step\n", &Signature::default()).unwrap();
        assert_eq!(set.equations().len(), 2);
        assert_eq!(set.get("ps").unwrap().rhs, FoTerm::var("x"));
        match parse_equations("a : 0 = 0\nb 0 = 0", &Signature::default()) {
            Err(FormulaError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
