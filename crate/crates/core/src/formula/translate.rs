//! The Gödel translation `*`, the ⊥-transformation and the forgetful map `◇`,
//! plus ∀-polarity.

use super::{arrow, neg, Formula, FormulaError};

fn first_bot_var(f: &Formula) -> Option<String> {
    f.so_free(super::SoKind::Bot).into_iter().next().or_else(|| bound_bot_var(f))
}

fn bound_bot_var(f: &Formula) -> Option<String> {
    match f {
        Formula::ForallBot(x, _, _) => Some(x.clone()),
        Formula::Arrow(a, b) => bound_bot_var(a).or_else(|| bound_bot_var(b)),
        Formula::ForallFo(_, b) | Formula::ForallPred(_, _, b) => bound_bot_var(b),
        _ => None,
    }
}

fn require_no_bot_vars(f: &Formula) -> Result<(), FormulaError> {
    match first_bot_var(f) {
        Some(x) => Err(FormulaError::ContainsBotVariable(x)),
        None => Ok(()),
    }
}

/// `A*`: every predicate atom `A` becomes `¬A`. `⊥` is left fixed.
pub fn godel_star(f: &Formula) -> Result<Formula, FormulaError> {
    require_no_bot_vars(f)?;
    Ok(star(f))
}

fn star(f: &Formula) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Pred(..) | Formula::Sym(..) => neg(f.clone()),
        Formula::BotVar(..) => unreachable!("checked by godel_star"),
        Formula::Arrow(a, b) => arrow(star(a), star(b)),
        Formula::ForallFo(x, b) => Formula::ForallFo(x.clone(), Box::new(star(b))),
        Formula::ForallPred(x, k, b) => Formula::ForallPred(x.clone(), *k, Box::new(star(b))),
        Formula::ForallBot(..) => unreachable!("checked by godel_star"),
    }
}

/// `A⊥`: predicate variables become ⊥-variables, everything else is kept.
pub fn bot_transform(f: &Formula) -> Result<Formula, FormulaError> {
    require_no_bot_vars(f)?;
    Ok(to_bot(f))
}

fn to_bot(f: &Formula) -> Formula {
    match f {
        Formula::Bot | Formula::Sym(..) => f.clone(),
        Formula::Pred(x, args) => Formula::BotVar(x.clone(), args.clone()),
        Formula::BotVar(..) | Formula::ForallBot(..) => unreachable!("checked by bot_transform"),
        Formula::Arrow(a, b) => arrow(to_bot(a), to_bot(b)),
        Formula::ForallFo(x, b) => Formula::ForallFo(x.clone(), Box::new(to_bot(b))),
        Formula::ForallPred(x, k, b) => Formula::ForallBot(x.clone(), *k, Box::new(to_bot(b))),
    }
}

/// `A◇`: drops first-order arguments and quantifiers.
pub fn forget_first_order(f: &Formula) -> Formula {
    match f {
        Formula::Bot => Formula::Bot,
        Formula::Pred(x, _) => Formula::Pred(x.clone(), vec![]),
        Formula::BotVar(x, _) => Formula::BotVar(x.clone(), vec![]),
        Formula::Sym(r, _) => Formula::Sym(r.clone(), vec![]),
        Formula::Arrow(a, b) => arrow(forget_first_order(a), forget_first_order(b)),
        Formula::ForallFo(_, b) => forget_first_order(b),
        Formula::ForallPred(x, _, b) => Formula::ForallPred(x.clone(), 0, Box::new(forget_first_order(b))),
        Formula::ForallBot(x, _, b) => Formula::ForallBot(x.clone(), 0, Box::new(forget_first_order(b))),
    }
}

/// Membership in `Ω⁺` and `Ω⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Positive,
    Negative,
    Both,
    Neither,
}

impl Polarity {
    fn from_flags(pos: bool, neg: bool) -> Polarity {
        match (pos, neg) {
            (true, true) => Polarity::Both,
            (true, false) => Polarity::Positive,
            (false, true) => Polarity::Negative,
            (false, false) => Polarity::Neither,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Polarity::Positive | Polarity::Both)
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Polarity::Negative | Polarity::Both)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Both => "both",
            Polarity::Neither => "neither",
        }
    }
}

/// Classifies `f` by the ∀-polarity rules. A quantified ⊥-variable is
/// treated like a predicate variable.
pub fn polarity(f: &Formula) -> Polarity {
    let (p, n) = flags(f);
    Polarity::from_flags(p, n)
}

fn flags(f: &Formula) -> (bool, bool) {
    match f {
        Formula::Bot | Formula::Pred(..) | Formula::BotVar(..) | Formula::Sym(..) => (true, true),
        Formula::Arrow(a, b) => {
            let (ap, an) = flags(a);
            let (bp, bn) = flags(b);
            (an && bp, ap && bn)
        }
        Formula::ForallFo(_, b) => flags(b),
        Formula::ForallPred(x, _, b) => {
            let (p, n) = flags(b);
            (p, n && !b.so_free(super::SoKind::Pred).contains(x))
        }
        Formula::ForallBot(x, _, b) => {
            let (p, n) = flags(b);
            (p, n && !b.so_free(super::SoKind::Bot).contains(x))
        }
    }
}
