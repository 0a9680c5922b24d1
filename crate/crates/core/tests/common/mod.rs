#![allow(dead_code)]

use rand::Rng;

use storop::formula::{FoTerm, Formula};
use storop::reduce::{head_reduce, Status};
use storop::term::Term;

const VARS: [&str; 5] = ["x", "y", "z", "f", "g"];

pub fn term<R: Rng>(rng: &mut R, depth: u32) -> Term {
    if depth == 0 || rng.gen_bool(0.2) {
        return Term::var(VARS[rng.gen_range(0..VARS.len())]);
    }
    if rng.gen_bool(0.4) {
        let x = VARS[rng.gen_range(0..VARS.len())];
        Term::abs(x, term(rng, depth - 1))
    } else {
        Term::app(term(rng, depth - 1), term(rng, depth - 1))
    }
}

/// A term of depth at most `depth` with a head redex: `λx̄ (λy t)u w̄`.
pub fn redex_term<R: Rng>(rng: &mut R, depth: u32) -> Term {
    let d = depth.saturating_sub(3).max(1);
    let y = VARS[rng.gen_range(0..VARS.len())];
    let mut t = Term::app(Term::abs(y, term(rng, d)), term(rng, d));
    for _ in 0..rng.gen_range(0..2) {
        t = Term::app(t, term(rng, d));
    }
    for _ in 0..rng.gen_range(0..2) {
        t = Term::abs(VARS[rng.gen_range(0..VARS.len())], t);
    }
    t
}

/// `u`, the term after `k ≥ 1` head steps, and `k`.
pub fn head_pair<R: Rng>(rng: &mut R) -> (Term, Term, u64) {
    let u = redex_term(rng, 7);
    let max = head_reduce(&u, 12).steps.max(1);
    let k = rng.gen_range(1..=max);
    let v = head_reduce(&u, k);
    assert!(v.steps == k && v.status != Status::NormalForm);
    (u, v.result, k)
}

pub fn is_numeral_by_comparison(t: &Term) -> bool {
    (0..=t.size() as u64).any(|k| *t == storop::builtins::church(k))
}

fn fo_term<R: Rng>(rng: &mut R, depth: u32) -> FoTerm {
    match if depth == 0 { rng.gen_range(0..3) } else { rng.gen_range(0..5) } {
        0 => FoTerm::var("x"),
        1 => FoTerm::var("y"),
        2 => FoTerm::zero(),
        3 => FoTerm::succ(fo_term(rng, depth - 1)),
        _ => FoTerm::Fn("m".into(), vec![fo_term(rng, depth - 1), fo_term(rng, depth - 1)]),
    }
}

/// Predicate variables with fixed arities, so every formula is well formed.
const PREDS: [(&str, usize); 3] = [("X", 1), ("Y", 0), ("Z", 2)];

/// A formula without ⊥-variables.
pub fn formula<R: Rng>(rng: &mut R, depth: u32) -> Formula {
    let atom = |rng: &mut R| {
        if rng.gen_bool(0.15) {
            return Formula::Bot;
        }
        let (p, k) = PREDS[rng.gen_range(0..PREDS.len())];
        Formula::pred(p, (0..k).map(|_| fo_term(rng, 2)).collect())
    };
    if depth == 0 {
        return atom(rng);
    }
    match rng.gen_range(0..6) {
        0 => atom(rng),
        1 | 2 => Formula::Arrow(Box::new(formula(rng, depth - 1)), Box::new(formula(rng, depth - 1))),
        3 => {
            let x = if rng.gen_bool(0.5) { "x" } else { "y" };
            Formula::ForallFo(x.into(), Box::new(formula(rng, depth - 1)))
        }
        4 => {
            let (p, k) = PREDS[rng.gen_range(0..PREDS.len())];
            Formula::ForallPred(p.into(), k, Box::new(formula(rng, depth - 1)))
        }
        _ => {
            let t = fo_term(rng, 2);
            storop::formula::nat(t)
        }
    }
}

/// Reads LaTeX as printed in the source text and maps it to the Unicode
/// notation of [`storop::formula::display_formula`], dropping whitespace.
pub fn tex_to_unicode(tex: &str) -> String {
    let mut s = tex.to_string();
    for (from, to) in [
        ("\\forall", "∀"),
        ("\\neg", "¬"),
        ("\\rightarrow", "→"),
        ("_\\perp", "⊥"),
        ("\\perp", "⊥"),
        ("\\{", "{"),
        ("\\}", "}"),
    ] {
        s = s.replace(from, to);
    }
    squash(&s)
}

pub fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}
