use std::collections::BTreeSet;
use std::fmt;

use crate::formula::{
    forget_first_order, instantiate_chain, print_formula, replay_eq_chain, EquationSet, Formula,
    PredAbstraction, SoKind, Witness,
};
use crate::term::Term;

use super::{Derivation, Rule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckVerdict {
    Ok,
    Failed,
}

/// Result of checking a derivation. On failure `failure_path` lists premise
/// indices from the root to the offending node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub verdict: CheckVerdict,
    pub failure_path: Vec<usize>,
    pub reason: String,
}

impl CheckReport {
    fn ok() -> CheckReport {
        CheckReport {
            verdict: CheckVerdict::Ok,
            failure_path: vec![],
            reason: String::new(),
        }
    }

    fn failed(path: Vec<usize>, reason: String) -> CheckReport {
        CheckReport {
            verdict: CheckVerdict::Failed,
            failure_path: path,
            reason,
        }
    }

    pub fn is_ok(&self) -> bool {
        self.verdict == CheckVerdict::Ok
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            CheckVerdict::Ok => f.write_str("ok"),
            CheckVerdict::Failed => write!(f, "failed at {:?}: {}", self.failure_path, self.reason),
        }
    }
}

type Failure = (Vec<usize>, String);

/// Replays every node bottom-up. The first failing node in post-order is
/// reported. When a premise does not fit its parent's context or subject,
/// the premise is blamed; type mismatches are blamed on the parent.
pub fn check_derivation(d: &Derivation, eqs: &EquationSet) -> CheckReport {
    match walk(d, eqs, &mut Vec::new()) {
        Ok(()) => CheckReport::ok(),
        Err((path, reason)) => CheckReport::failed(path, reason),
    }
}

fn walk(d: &Derivation, eqs: &EquationSet, path: &mut Vec<usize>) -> Result<(), Failure> {
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        walk(p, eqs, path)?;
        path.pop();
    }
    local(d, eqs, path)
}

fn show(f: &Formula) -> String {
    print_formula(f)
}

fn local(d: &Derivation, eqs: &EquationSet, path: &[usize]) -> Result<(), Failure> {
    let here = |reason: String| Err((path.to_vec(), reason));
    let at = |i: usize, reason: String| {
        let mut p = path.to_vec();
        p.push(i);
        Err((p, reason))
    };
    let tag = d.rule.tag();
    if d.premises.len() != d.rule.premise_count() {
        return here(format!(
            "{tag} needs {} premises, found {}",
            d.rule.premise_count(),
            d.premises.len()
        ));
    }
    let same_ctx_and_term = |i: usize| -> Result<(), Failure> {
        let p = &d.premises[i];
        if p.ctx != d.ctx {
            return at(i, format!("premise context differs from the conclusion's in {tag}"));
        }
        if p.term != d.term {
            return at(i, format!("premise subject differs from the conclusion's in {tag}"));
        }
        Ok(())
    };
    match &d.rule {
        Rule::Ax => {
            let Term::Var(x) = &d.term else {
                return here("ax needs a variable as subject".into());
            };
            match d.ctx.get(x) {
                None => here(format!("{x} is not bound in the context")),
                Some(a) if *a != d.ty => here(format!(
                    "{x} has type {} in the context, not {}",
                    show(a),
                    show(&d.ty)
                )),
                Some(_) => Ok(()),
            }
        }
        Rule::Abs => {
            let Term::Abs(..) = &d.term else {
                return here("abs needs an abstraction as subject".into());
            };
            let Formula::Arrow(a, b) = &d.ty else {
                return here(format!("abs concludes an implication, found {}", show(&d.ty)));
            };
            let p = &d.premises[0];
            let n = d.ctx.len();
            let entries = p.ctx.entries();
            let prefix_ok = entries.len() == n + 1
                && entries[..n]
                    .iter()
                    .zip(d.ctx.entries())
                    .all(|((x, s), (y, t))| x == y && s == t);
            if !prefix_ok {
                return at(0, "premise context must extend the conclusion's by one binding".into());
            }
            let (y, ty) = &entries[n];
            if d.ctx.contains(y) {
                return at(0, format!("binder {y} is already in the context"));
            }
            if ty != a.as_ref() {
                return at(0, format!("binder {y} has type {}, expected {}", show(ty), show(a)));
            }
            if Term::abs(y.clone(), p.term.clone()) != d.term {
                return at(0, "premise subject is not the abstraction body".into());
            }
            if p.ty != **b {
                return here(format!("body has type {}, expected {}", show(&p.ty), show(b)));
            }
            Ok(())
        }
        Rule::App => {
            let Term::App(u, v) = &d.term else {
                return here("app needs an application as subject".into());
            };
            for (i, (p, sub)) in d.premises.iter().zip([u, v]).enumerate() {
                if p.ctx != d.ctx {
                    return at(i, "premise context differs from the conclusion's in app".into());
                }
                if p.term != **sub {
                    return at(i, "premise subject does not match the application".into());
                }
            }
            let (f, a) = (&d.premises[0], &d.premises[1]);
            match &f.ty {
                Formula::Arrow(x, y) if **x == a.ty && **y == d.ty => Ok(()),
                _ => here(format!(
                    "cannot apply {} to {} to get {}",
                    show(&f.ty),
                    show(&a.ty),
                    show(&d.ty)
                )),
            }
        }
        Rule::GenFo => {
            same_ctx_and_term(0)?;
            let Formula::ForallFo(x, body) = &d.ty else {
                return here(format!("gen-fo concludes ∀x A, found {}", show(&d.ty)));
            };
            if d.premises[0].ty != **body {
                return here("premise type is not the quantified body".into());
            }
            if d.ctx.has_free_fo(x) {
                return here(format!("{x} occurs free in the context"));
            }
            Ok(())
        }
        Rule::GenPred | Rule::GenBot => {
            same_ctx_and_term(0)?;
            let (kind, x, k, body) = match (&d.rule, &d.ty) {
                (Rule::GenPred, Formula::ForallPred(x, k, b)) => (SoKind::Pred, x, *k, b),
                (Rule::GenBot, Formula::ForallBot(x, k, b)) => (SoKind::Bot, x, *k, b),
                _ => return here(format!("{tag} cannot conclude {}", show(&d.ty))),
            };
            if d.premises[0].ty != **body {
                return here("premise type is not the quantified body".into());
            }
            if d.ctx.has_free_so(kind, x) {
                return here(format!("{x} occurs free in the context"));
            }
            let arities = so_arities(body, kind, x);
            if arities.iter().any(|&a| a != k) {
                return here(format!("{x} is used with an arity other than {k}"));
            }
            Ok(())
        }
        Rule::InstFo(_) | Rule::InstPred(_) | Rule::InstBot(_) => {
            same_ctx_and_term(0)?;
            let witness = match &d.rule {
                Rule::InstFo(u) => Witness::Fo(u.clone()),
                Rule::InstPred(g) => Witness::Pred(g.clone()),
                Rule::InstBot(g) => Witness::Bot(g.clone()),
                _ => unreachable!(),
            };
            match instantiate_chain(&d.premises[0].ty, &[witness]) {
                Err(e) => here(e.to_string()),
                Ok(t) if t != d.ty => here(format!(
                    "instantiation gives {}, not {}",
                    show(&t),
                    show(&d.ty)
                )),
                Ok(_) => Ok(()),
            }
        }
        Rule::Eq(chain) => {
            same_ctx_and_term(0)?;
            match replay_eq_chain(&d.premises[0].ty, eqs, chain) {
                Err(e) => here(e.to_string()),
                Ok(t) if t != d.ty => here(format!(
                    "equation chain gives {}, not {}",
                    show(&t),
                    show(&d.ty)
                )),
                Ok(_) => Ok(()),
            }
        }
    }
}

fn so_arities(f: &Formula, kind: SoKind, x: &str) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    fn go(f: &Formula, kind: SoKind, x: &str, out: &mut BTreeSet<usize>) {
        match f {
            Formula::Pred(y, args) if kind == SoKind::Pred && y == x => {
                out.insert(args.len());
            }
            Formula::BotVar(y, args) if kind == SoKind::Bot && y == x => {
                out.insert(args.len());
            }
            Formula::Arrow(a, b) => {
                go(a, kind, x, out);
                go(b, kind, x, out);
            }
            Formula::ForallFo(_, b) => go(b, kind, x, out),
            Formula::ForallPred(y, _, _) if kind == SoKind::Pred && y == x => {}
            Formula::ForallBot(y, _, _) if kind == SoKind::Bot && y == x => {}
            Formula::ForallPred(_, _, b) | Formula::ForallBot(_, _, b) => go(b, kind, x, out),
            _ => {}
        }
    }
    go(f, kind, x, &mut out);
    out
}

/// [`check_derivation`] restricted to the propositional fragment: no
/// first-order terms or quantifiers, no function symbols, no equations.
pub fn check_fperp(d: &Derivation) -> CheckReport {
    let base = check_derivation(d, &EquationSet::default());
    if !base.is_ok() {
        return base;
    }
    match fragment(d, &mut Vec::new()) {
        Ok(()) => CheckReport::ok(),
        Err((path, reason)) => CheckReport::failed(path, reason),
    }
}

fn fragment(d: &Derivation, path: &mut Vec<usize>) -> Result<(), Failure> {
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        fragment(p, path)?;
        path.pop();
    }
    let here = |reason: String| Err((path.clone(), reason));
    if let Rule::GenFo | Rule::InstFo(_) | Rule::Eq(_) = d.rule {
        return here(format!("{} is outside the propositional fragment", d.rule.tag()));
    }
    if let Rule::InstPred(g) | Rule::InstBot(g) = &d.rule {
        if !g.params.is_empty() || g.body.has_first_order_part() {
            return here("witness has first-order structure".into());
        }
    }
    for (x, a) in d.ctx.entries() {
        if a.has_first_order_part() {
            return here(format!("type of {x} has first-order structure"));
        }
    }
    if d.ty.has_first_order_part() {
        return here(format!("{} has first-order structure", show(&d.ty)));
    }
    Ok(())
}

/// Applies `◇` to every judgement. First-order generalisation, instantiation
/// and equation nodes become trivial and are removed.
pub fn forget_derivation(d: &Derivation, eqs: &EquationSet) -> Result<Derivation, CheckReport> {
    let report = check_derivation(d, eqs);
    if !report.is_ok() {
        return Err(report);
    }
    Ok(project(d))
}

fn project_witness(g: &PredAbstraction) -> PredAbstraction {
    PredAbstraction {
        params: vec![],
        body: forget_first_order(&g.body),
    }
}

fn project(d: &Derivation) -> Derivation {
    match &d.rule {
        Rule::GenFo | Rule::InstFo(_) | Rule::Eq(_) => project(&d.premises[0]),
        rule => Derivation {
            ctx: d.ctx.map_types(forget_first_order),
            term: d.term.clone(),
            ty: forget_first_order(&d.ty),
            rule: match rule {
                Rule::InstPred(g) => Rule::InstPred(project_witness(g)),
                Rule::InstBot(g) => Rule::InstBot(project_witness(g)),
                other => other.clone(),
            },
            premises: d.premises.iter().map(project).collect(),
        },
    }
}
