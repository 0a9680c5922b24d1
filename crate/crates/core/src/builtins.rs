//! Church numerals and the combinators used throughout the crate.
//!
//! | name | term |
//! |------|------|
//! | `church:n` | `λxλf (f)ⁿx` |
//! | `succ` | `λnλxλf (f)((n)x)f` |
//! | `delta` | `λf (f)0̄` |
//! | `G` | `λxλy (x)λz(y)(s̄)z` |
//! | `F` | `λxλy (x)(s̄)y` |
//! | `T1` | `λn ((n)δ)G` |
//! | `T2` | `λnλf (((n)f)F)0̄` |
//! | `T`, `T:i` | `λνλf ((ν)(Tᵢ)νf)λxx` |
//! | `Tp`, `Tp:i` | `λνλf ((ν)(Tᵢ)νf)λd(Tᵢ)νf` |
//! | `omega` | `(λx(x)x)λx(x)x` |
//! | `theta0` | `λxλfλz (x)(λdz)λxx` |
//!
//! `T` and `Tp` default to `i = 1`.

use crate::term::{parse_term, Term};

/// A named closed term.
#[derive(Debug, Clone)]
pub struct Builtin {
    pub name: &'static str,
    pub term: Term,
}

fn src(s: &str) -> Term {
    parse_term(s).unwrap_or_else(|e| panic!("builtin source {s:?}: {e}"))
}

/// `n̄ = λxλf (f)ⁿx`.
pub fn church(n: u64) -> Term {
    let mut body = Term::var("x");
    for _ in 0..n {
        body = Term::app(Term::var("f"), body);
    }
    Term::abs("x", Term::abs("f", body))
}

/// Returns `m` when `t` is α-equal to `church(m)`. No reduction is done.
pub fn numeral_of(t: &Term) -> Option<u64> {
    let (x, f, mut body) = match t {
        Term::Abs(x, inner) => match inner.as_ref() {
            Term::Abs(f, body) if f != x => (x, f, body.as_ref()),
            _ => return None,
        },
        _ => return None,
    };
    let mut n = 0;
    loop {
        match body {
            Term::Var(v) if v == x => return Some(n),
            Term::App(g, a) if matches!(g.as_ref(), Term::Var(v) if v == f) => {
                n += 1;
                body = a;
            }
            _ => return None,
        }
    }
}

pub fn zero() -> Term {
    church(0)
}

pub fn succ() -> Term {
    src(r"\n \x \f (f) ((n) x) f")
}

/// `(s̄)ⁿ0̄`, the shape the standard storage operators produce.
pub fn succ_power(n: u64) -> Term {
    (0..n).fold(zero(), |acc, _| Term::app(succ(), acc))
}

pub fn delta() -> Term {
    src(r"\f (f) @church:0")
}

pub fn g_combinator() -> Term {
    src(r"\x \y (x) \z (y) (@succ) z")
}

pub fn f_combinator() -> Term {
    src(r"\x \y (x) (@succ) y")
}

pub fn t1() -> Term {
    src(r"\n ((n) @delta) @G")
}

pub fn t2() -> Term {
    src(r"\n \f (((n) f) @F) @church:0")
}

fn inner_operator(i: u8) -> &'static str {
    match i {
        1 => "@T1",
        2 => "@T2",
        _ => panic!("storage operator index must be 1 or 2, got {i}"),
    }
}

/// `λνλf((ν)(Tᵢ)νf)λxx`.
pub fn t_with(i: u8) -> Term {
    let ti = inner_operator(i);
    src(&format!(r"\v \f ((v) ({ti}) v f) \x x"))
}

/// `λνλf((ν)(Tᵢ)νf)λd(Tᵢ)νf`.
pub fn t_prime_with(i: u8) -> Term {
    let ti = inner_operator(i);
    src(&format!(r"\v \f ((v) ({ti}) v f) \d ({ti}) v f"))
}

pub fn omega() -> Term {
    src(r"(\x (x) x) \x (x) x")
}

pub fn theta0() -> Term {
    src(r"\x \f \z (x) (\d z) \x x")
}

/// Resolves the name after `@` in term syntax.
pub fn lookup(name: &str) -> Option<Term> {
    if let Some(n) = name.strip_prefix("church:") {
        return n.parse().ok().map(church);
    }
    Some(match name {
        "zero" => zero(),
        "succ" => succ(),
        "delta" => delta(),
        "G" => g_combinator(),
        "F" => f_combinator(),
        "T1" => t1(),
        "T2" => t2(),
        "T" | "T:1" => t_with(1),
        "T:2" => t_with(2),
        "Tp" | "Tp:1" => t_prime_with(1),
        "Tp:2" => t_prime_with(2),
        "omega" => omega(),
        "theta0" => theta0(),
        _ => return None,
    })
}

/// Every named builtin except the numeral family.
pub fn all() -> Vec<Builtin> {
    [
        "succ", "delta", "G", "F", "T1", "T2", "T", "T:2", "Tp", "Tp:2", "omega", "theta0",
    ]
    .into_iter()
    .map(|name| Builtin {
        name,
        term: lookup(name).unwrap(),
    })
    .collect()
}

/// Name to print for a closed term that matches a builtin.
pub(crate) fn fold_name(t: &Term) -> Option<String> {
    if !t.is_closed() {
        return None;
    }
    if let Some(n) = numeral_of(t) {
        return Some(format!("church:{n}"));
    }
    thread_local! {
        static TABLE: Vec<Builtin> = all();
    }
    TABLE.with(|table| {
        table
            .iter()
            .find(|b| b.term == *t)
            .map(|b| b.name.to_string())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::{head_reduce, DEFAULT_FUEL};
    use crate::term::{print_folded, print_term};

    #[test]
    fn church_examples() {
        assert_eq!(church(0), parse_term(r"\x \f x").unwrap());
        assert_eq!(church(2), parse_term(r"\x \f (f) (f) x").unwrap());
        assert!(crate::reduce::is_normal(&church(1)));
    }

    #[test]
    fn numeral_recognition() {
        assert_eq!(numeral_of(&parse_term(r"\a \b (b) (b) a").unwrap()), Some(2));
        assert_eq!(numeral_of(&parse_term(r"\x x").unwrap()), None);
        assert_eq!(numeral_of(&parse_term("(@succ) @church:0").unwrap()), None);
        assert_eq!(numeral_of(&parse_term(r"\x \x x").unwrap()), None);
        assert_eq!(numeral_of(&parse_term(r"\f \x (f) x").unwrap()), None);
        for n in 0..=200 {
            assert_eq!(numeral_of(&church(n)), Some(n));
        }
    }

    #[test]
    fn builtins_are_closed_and_roundtrip() {
        for b in all() {
            assert!(b.term.is_closed(), "{}", b.name);
            let printed = print_term(&b.term);
            assert_eq!(parse_term(&printed).unwrap(), b.term, "{}", b.name);
        }
    }

    #[test]
    fn t1_stores_two() {
        let out = head_reduce(&parse_term("(@T1 @church:2) f").unwrap(), DEFAULT_FUEL);
        assert_eq!(
            out.result,
            Term::app(Term::var("f"), succ_power(2))
        );
        assert_eq!(print_folded(&out.result), "(f) (@succ) (@succ) @church:0");
    }

    #[test]
    fn folded_printing_reparses() {
        let t = parse_term("(@T1 @church:2) f").unwrap();
        assert_eq!(parse_term(&print_folded(&t)).unwrap(), t);
    }
}
