//! ASCII and Unicode printers. Both outputs parse back.
//!
//! | concept | ASCII | Unicode |
//! |---------|-------|---------|
//! | ⊥ | `bot` | `⊥` |
//! | implication | `->` | `→` |
//! | negation `A → ⊥` | `~A` | `¬A` |
//! | quantifier | `!x` | `∀x` |
//! | ⊥-variable | `X_\|` | `X⊥` |
//! | `s(y)` | `s(y)` | `sy` |

use super::{FoTerm, Formula, SoKind};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Style {
    Ascii,
    Unicode,
}

impl Style {
    fn bot(self) -> &'static str {
        match self {
            Style::Ascii => "bot",
            Style::Unicode => "⊥",
        }
    }
    fn arrow(self) -> &'static str {
        match self {
            Style::Ascii => " -> ",
            Style::Unicode => " → ",
        }
    }
    fn neg(self) -> &'static str {
        match self {
            Style::Ascii => "~",
            Style::Unicode => "¬",
        }
    }
    fn forall(self) -> &'static str {
        match self {
            Style::Ascii => "!",
            Style::Unicode => "∀",
        }
    }
    fn bot_suffix(self) -> &'static str {
        match self {
            Style::Ascii => "_|",
            Style::Unicode => "⊥",
        }
    }
}

/// ASCII rendering, e.g. `!X {X(0), !y(X(y) -> X(s(y))) -> X(x)}`.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    formula(f, Style::Ascii, &mut out);
    out
}

/// Unicode rendering in the usual notation, e.g.
/// `∀X{X(0), ∀y(X(y) → X(sy)) → X(x)}`.
pub fn display_formula(f: &Formula) -> String {
    let mut out = String::new();
    formula(f, Style::Unicode, &mut out);
    out
}

pub fn print_fo_term(t: &FoTerm) -> String {
    let mut out = String::new();
    term(t, Style::Ascii, &mut out);
    out
}

pub fn display_fo_term(t: &FoTerm) -> String {
    let mut out = String::new();
    term(t, Style::Unicode, &mut out);
    out
}

fn compact(t: &FoTerm) -> Option<String> {
    match t {
        FoTerm::Var(x) | FoTerm::Const(x) if x.chars().count() == 1 => Some(x.clone()),
        FoTerm::Fn(f, args) if args.len() == 1 && f.chars().count() == 1 => {
            compact(&args[0]).map(|rest| format!("{f}{rest}"))
        }
        _ => None,
    }
}

fn term(t: &FoTerm, style: Style, out: &mut String) {
    if style == Style::Unicode && matches!(t, FoTerm::Fn(..)) {
        if let Some(c) = compact(t) {
            out.push_str(&c);
            return;
        }
    }
    match t {
        FoTerm::Var(x) | FoTerm::Const(x) => out.push_str(x),
        FoTerm::Fn(f, args) => {
            out.push_str(f);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                term(a, style, out);
            }
            out.push(')');
        }
    }
}

/// `A → ⊥` shown as `¬A`.
fn negated(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Arrow(a, b) if matches!(**b, Formula::Bot) => match **a {
            Formula::Bot => None,
            Formula::Arrow(..) => negated(a).map(|_| a.as_ref()),
            _ => Some(a),
        },
        _ => None,
    }
}

/// Splits `A₁, …, Aₙ → B` into premises and conclusion.
fn chain(f: &Formula) -> (Vec<&Formula>, &Formula) {
    let mut premises = Vec::new();
    let mut cur = f;
    while let Formula::Arrow(a, b) = cur {
        if negated(cur).is_some() {
            break;
        }
        premises.push(a.as_ref());
        cur = b;
    }
    (premises, cur)
}

fn is_chain(f: &Formula) -> bool {
    matches!(f, Formula::Arrow(..)) && negated(f).is_none()
}

fn formula(f: &Formula, style: Style, out: &mut String) {
    if is_chain(f) {
        let (premises, conclusion) = chain(f);
        for (i, p) in premises.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            unary(p, style, out);
        }
        out.push_str(style.arrow());
        unary(conclusion, style, out);
    } else {
        unary(f, style, out);
    }
}

fn unary(f: &Formula, style: Style, out: &mut String) {
    if let Some(a) = negated(f) {
        out.push_str(style.neg());
        unary(a, style, out);
        return;
    }
    match f {
        Formula::Bot => out.push_str(style.bot()),
        Formula::Pred(x, args) | Formula::Sym(x, args) => atom(x, "", args, style, out),
        Formula::BotVar(x, args) => atom(x, style.bot_suffix(), args, style, out),
        Formula::Arrow(..) => {
            out.push('(');
            formula(f, style, out);
            out.push(')');
        }
        Formula::ForallFo(x, b) => quantifier(x, "", None, b, style, out),
        Formula::ForallPred(x, k, b) => {
            let k = vacuous_arity(b, SoKind::Pred, x, *k);
            quantifier(x, "", k, b, style, out)
        }
        Formula::ForallBot(x, k, b) => {
            let k = vacuous_arity(b, SoKind::Bot, x, *k);
            quantifier(x, style.bot_suffix(), k, b, style, out)
        }
    }
}

fn vacuous_arity(body: &Formula, kind: SoKind, x: &str, k: usize) -> Option<usize> {
    (k > 0 && !body.so_free(kind).contains(x)).then_some(k)
}

fn atom(x: &str, suffix: &str, args: &[FoTerm], style: Style, out: &mut String) {
    out.push_str(x);
    out.push_str(suffix);
    if !args.is_empty() {
        out.push('(');
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            term(a, style, out);
        }
        out.push(')');
    }
}

fn quantifier(
    x: &str,
    suffix: &str,
    arity: Option<usize>,
    body: &Formula,
    style: Style,
    out: &mut String,
) {
    out.push_str(style.forall());
    out.push_str(x);
    out.push_str(suffix);
    if let Some(k) = arity {
        out.push_str(&format!("/{k}"));
    }
    if is_chain(body) {
        let multi = chain(body).0.len() > 1;
        out.push(if multi { '{' } else { '(' });
        formula(body, style, out);
        out.push(if multi { '}' } else { ')' });
    } else {
        out.push(' ');
        unary(body, style, out);
    }
}

#[cfg(test)]
mod tests {
    use super::super::{nat, nat_bot, nat_prop, nat_star, parse_formula, FoTerm};
    use super::*;

    #[test]
    fn nat_displays() {
        let x = FoTerm::var("x");
        assert_eq!(display_formula(&nat(x.clone())), "∀X{X(0), ∀y(X(y) → X(sy)) → X(x)}");
        assert_eq!(
            display_formula(&nat_star(x.clone())),
            "∀X{¬X(0), ∀y(¬X(y) → ¬X(sy)) → ¬X(x)}"
        );
        assert_eq!(
            display_formula(&nat_bot(x.clone())),
            "∀X⊥{X⊥(0), ∀y(X⊥(y) → X⊥(sy)) → X⊥(x)}"
        );
        assert_eq!(display_formula(&nat_prop()), "∀X{X, (X → X) → X}");
        assert_eq!(print_formula(&nat(x)), "!X{X(0), !y(X(y) -> X(s(y))) -> X(x)}");
    }

    #[test]
    fn negation_and_bottom_chains() {
        let f = parse_formula("bot, (bot -> bot) -> bot").unwrap();
        assert_eq!(display_formula(&f), "⊥, (⊥ → ⊥) → ⊥");
        let f = parse_formula("~~X").unwrap();
        assert_eq!(display_formula(&f), "¬¬X");
        let f = parse_formula("bot -> bot").unwrap();
        assert_eq!(print_formula(&f), "bot -> bot");
    }

    #[test]
    fn vacuous_quantifier_keeps_arity() {
        let f = parse_formula("!X/2 bot").unwrap();
        assert_eq!(print_formula(&f), "!X/2 bot");
        assert_eq!(parse_formula(&print_formula(&f)).unwrap(), f);
    }
}
