//! Smart constructors that compute each conclusion from the premises.
//!
//! Every builder takes the context explicitly. [`abs`] picks a binder name
//! that is fresh for the context and hands it to the body builder, so
//! derivations can be nested without name clashes.

use std::collections::BTreeSet;

use crate::formula::{
    arrow, instantiate_chain, print_formula, replay_eq_chain, EqStep, EquationSet, FoTerm,
    Formula, PredAbstraction, SoKind, Witness,
};
use crate::term::{fresh_name, Term};

use super::{Context, Derivation, Rule, TypingError};

fn shape(msg: String) -> TypingError {
    TypingError::Shape(msg)
}

/// `Γ ⊢ x : Γ(x)`.
pub fn ax(ctx: &Context, x: &str) -> Result<Derivation, TypingError> {
    let ty = ctx
        .get(x)
        .cloned()
        .ok_or_else(|| TypingError::Unbound(x.to_string()))?;
    Ok(Derivation {
        ctx: ctx.clone(),
        term: Term::var(x),
        ty,
        rule: Rule::Ax,
        premises: vec![],
    })
}

/// `Γ ⊢ λy t : A → B` from `Γ, y : A ⊢ t : B`, where `y` is `x` or a fresh
/// variant of it.
pub fn abs<F>(ctx: &Context, x: &str, ty: Formula, body: F) -> Result<Derivation, TypingError>
where
    F: FnOnce(&Context, &str) -> Result<Derivation, TypingError>,
{
    let names: BTreeSet<String> = ctx.entries().iter().map(|(y, _)| y.clone()).collect();
    let y = fresh_name(x, &names);
    let inner = ctx.extend(&y, ty.clone())?;
    let d = body(&inner, &y)?;
    if d.ctx != inner {
        return Err(shape(format!("body of λ{y} was built in a different context")));
    }
    Ok(Derivation {
        ctx: ctx.clone(),
        term: Term::abs(y, d.term.clone()),
        ty: arrow(ty, d.ty.clone()),
        rule: Rule::Abs,
        premises: vec![d],
    })
}

pub fn app(f: Derivation, a: Derivation) -> Result<Derivation, TypingError> {
    if f.ctx != a.ctx {
        return Err(shape("app premises live in different contexts".into()));
    }
    let ty = match &f.ty {
        Formula::Arrow(x, y) if **x == a.ty => (**y).clone(),
        other => {
            return Err(shape(format!(
                "cannot apply {} to an argument of type {}",
                print_formula(other),
                print_formula(&a.ty)
            )))
        }
    };
    Ok(Derivation {
        ctx: f.ctx.clone(),
        term: Term::app(f.term.clone(), a.term.clone()),
        ty,
        rule: Rule::App,
        premises: vec![f, a],
    })
}

fn unary(d: Derivation, ty: Formula, rule: Rule) -> Derivation {
    Derivation {
        ctx: d.ctx.clone(),
        term: d.term.clone(),
        ty,
        rule,
        premises: vec![d],
    }
}

pub fn gen_fo(d: Derivation, x: &str) -> Result<Derivation, TypingError> {
    if d.ctx.has_free_fo(x) {
        return Err(shape(format!("{x} occurs free in the context")));
    }
    let ty = Formula::ForallFo(x.into(), Box::new(d.ty.clone()));
    Ok(unary(d, ty, Rule::GenFo))
}

fn instantiate(d: Derivation, w: Witness, rule: Rule) -> Result<Derivation, TypingError> {
    let ty = instantiate_chain(&d.ty, &[w])?;
    Ok(unary(d, ty, rule))
}

pub fn inst_fo(d: Derivation, u: FoTerm) -> Result<Derivation, TypingError> {
    instantiate(d, Witness::Fo(u.clone()), Rule::InstFo(u))
}

/// Arity at the first free occurrence, 0 when there is none.
fn arity_in(f: &Formula, kind: SoKind, x: &str) -> usize {
    fn go(f: &Formula, kind: SoKind, x: &str) -> Option<usize> {
        match f {
            Formula::Pred(y, args) if kind == SoKind::Pred && y == x => Some(args.len()),
            Formula::BotVar(y, args) if kind == SoKind::Bot && y == x => Some(args.len()),
            Formula::Arrow(a, b) => go(a, kind, x).or_else(|| go(b, kind, x)),
            Formula::ForallFo(_, b) => go(b, kind, x),
            Formula::ForallPred(y, _, _) if kind == SoKind::Pred && y == x => None,
            Formula::ForallBot(y, _, _) if kind == SoKind::Bot && y == x => None,
            Formula::ForallPred(_, _, b) | Formula::ForallBot(_, _, b) => go(b, kind, x),
            _ => None,
        }
    }
    go(f, kind, x).unwrap_or(0)
}

pub fn gen_pred(d: Derivation, x: &str) -> Result<Derivation, TypingError> {
    if d.ctx.has_free_so(SoKind::Pred, x) {
        return Err(shape(format!("{x} occurs free in the context")));
    }
    let k = arity_in(&d.ty, SoKind::Pred, x);
    let ty = Formula::ForallPred(x.into(), k, Box::new(d.ty.clone()));
    Ok(unary(d, ty, Rule::GenPred))
}

pub fn inst_pred(d: Derivation, g: PredAbstraction) -> Result<Derivation, TypingError> {
    instantiate(d, Witness::Pred(g.clone()), Rule::InstPred(g))
}

pub fn gen_bot(d: Derivation, x: &str) -> Result<Derivation, TypingError> {
    if d.ctx.has_free_so(SoKind::Bot, x) {
        return Err(shape(format!("{x}_| occurs free in the context")));
    }
    let k = arity_in(&d.ty, SoKind::Bot, x);
    let ty = Formula::ForallBot(x.into(), k, Box::new(d.ty.clone()));
    Ok(unary(d, ty, Rule::GenBot))
}

pub fn inst_bot(d: Derivation, g: PredAbstraction) -> Result<Derivation, TypingError> {
    instantiate(d, Witness::Bot(g.clone()), Rule::InstBot(g))
}

pub fn eq(d: Derivation, eqs: &EquationSet, chain: Vec<EqStep>) -> Result<Derivation, TypingError> {
    let ty = replay_eq_chain(&d.ty, eqs, &chain)?;
    Ok(unary(d, ty, Rule::Eq(chain)))
}

/// A first-order variable not free in `ctx` and not in `avoid`.
pub fn fresh_fo(ctx: &Context, base: &str, avoid: &[&str]) -> String {
    let mut used: BTreeSet<String> = avoid.iter().map(|s| s.to_string()).collect();
    for (_, a) in ctx.entries() {
        used.extend(a.fo_free());
    }
    fresh_name(base, &used)
}

/// A second-order variable of the given kind not free in `ctx`.
pub fn fresh_pred(ctx: &Context, kind: SoKind, base: &str) -> String {
    let mut used = BTreeSet::new();
    for (_, a) in ctx.entries() {
        used.extend(a.so_free(kind));
    }
    fresh_name(base, &used)
}
