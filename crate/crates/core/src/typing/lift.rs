use std::collections::BTreeSet;

use crate::formula::{arrow, nat, nat_bot, nat_star, neg, print_formula, FoTerm, Formula, PredAbstraction, SoKind};
use crate::reduce::is_head_normal;
use crate::term::{fresh_name, Term};

use super::{ax, gen_pred, inst_bot, Derivation, Rule, TypingError};

/// Turns a derivation of `⊢ T : ∀x{N*[x] → ¬¬N[x]}` into one of
/// `⊢ T : ∀x{N⊥[x] → ¬¬N[x]}`.
///
/// `T` must be closed and of the form `λν T′`. The context entry of `ν`
/// becomes `N⊥[x]`, and every axiom `ν : N*[x]` is re-derived as
/// `ν : N⊥[x]`, instantiated with `X⊥ := λy.¬X′(y)` and generalised over a
/// fresh `X′`.
pub fn lift_star_to_bot(d: &Derivation) -> Result<Derivation, TypingError> {
    if !d.term.is_closed() || !matches!(d.term, Term::Abs(..)) || !is_head_normal(&d.term) {
        return Err(TypingError::Shape(
            "the subject must be a closed abstraction in head normal form".into(),
        ));
    }
    let (x, body) = match (&d.rule, &d.ty) {
        (Rule::GenFo, Formula::ForallFo(x, body)) => (x.clone(), body),
        _ => {
            return Err(TypingError::Shape(
                "the root must generalise ∀x{N*[x] → ¬¬N[x]}".into(),
            ))
        }
    };
    let xv = FoTerm::var(x.clone());
    let star = nat_star(xv.clone());
    let goal = neg(neg(nat(xv.clone())));
    if **body != arrow(star.clone(), goal.clone()) {
        return Err(TypingError::Shape(format!(
            "expected ∀x{{N*[x] → ¬¬N[x]}}, found {}",
            print_formula(&d.ty)
        )));
    }
    let p = &d.premises[0];
    if p.rule != Rule::Abs || p.ctx != d.ctx {
        return Err(TypingError::Shape("expected an abstraction under the generalisation".into()));
    }
    let q = &p.premises[0];
    let (nu, nu_ty) = q
        .ctx
        .entries()
        .last()
        .cloned()
        .ok_or_else(|| TypingError::Shape("abstraction premise has an empty context".into()))?;
    if nu_ty != star {
        return Err(TypingError::Shape(format!("{nu} must have type N*[x]")));
    }

    let mut used = BTreeSet::new();
    collect_pred_names(q, &mut used);
    let fresh = fresh_name("X", &used);
    let bot = nat_bot(xv);
    let lifted = rewrite(q, &nu, &bot, &fresh)?;

    let abs = Derivation {
        ctx: p.ctx.clone(),
        term: p.term.clone(),
        ty: arrow(bot, goal),
        rule: Rule::Abs,
        premises: vec![lifted],
    };
    Ok(Derivation {
        ctx: d.ctx.clone(),
        term: d.term.clone(),
        ty: Formula::ForallFo(x, Box::new(abs.ty.clone())),
        rule: Rule::GenFo,
        premises: vec![abs],
    })
}

fn collect_pred_names(d: &Derivation, out: &mut BTreeSet<String>) {
    for (_, a) in d.ctx.entries() {
        out.extend(a.so_free(SoKind::Pred));
    }
    out.extend(d.ty.so_free(SoKind::Pred));
    for p in &d.premises {
        collect_pred_names(p, out);
    }
}

fn rewrite(d: &Derivation, nu: &str, bot: &Formula, fresh: &str) -> Result<Derivation, TypingError> {
    let ctx = if d.ctx.contains(nu) {
        d.ctx.with_type(nu, bot.clone())
    } else {
        d.ctx.clone()
    };
    if d.rule == Rule::Ax && d.term == Term::var(nu) {
        let witness = PredAbstraction::new(
            &["y"],
            neg(Formula::pred(fresh, vec![FoTerm::var("y")])),
        );
        return gen_pred(inst_bot(ax(&ctx, nu)?, witness)?, fresh);
    }
    Ok(Derivation {
        ctx,
        term: d.term.clone(),
        ty: d.ty.clone(),
        rule: d.rule.clone(),
        premises: d
            .premises
            .iter()
            .map(|p| rewrite(p, nu, bot, fresh))
            .collect::<Result<_, _>>()?,
    })
}
