//! First-order matching and anti-unification over λ-terms.
//!
//! Holes are free variables of a pattern. Bound variables are matched up to
//! α-renaming, and a hole never receives a term that mentions a variable
//! bound above it, so `σ(pattern)` is always α-equal to the matched term.

use crate::term::{fresh_name, Term};
use std::collections::{BTreeMap, BTreeSet};

pub type Substitution = BTreeMap<String, Term>;

/// Finds `σ` over `holes` with `σ(pattern) =α t`.
pub fn match_holes(pattern: &Term, holes: &BTreeSet<String>, t: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    if go(pattern, t, holes, &mut Vec::new(), &mut Vec::new(), &mut sigma) {
        Some(sigma)
    } else {
        None
    }
}

fn go<'a>(
    p: &'a Term,
    t: &'a Term,
    holes: &BTreeSet<String>,
    bp: &mut Vec<&'a str>,
    bt: &mut Vec<&'a str>,
    sigma: &mut Substitution,
) -> bool {
    match (p, t) {
        (Term::Var(h), _) if holes.contains(h) && !bp.contains(&h.as_str()) => {
            if t.free_vars().iter().any(|v| bt.contains(&v.as_str())) {
                return false;
            }
            match sigma.get(h) {
                Some(prev) => prev == t,
                None => {
                    sigma.insert(h.clone(), t.clone());
                    true
                }
            }
        }
        (Term::Var(x), Term::Var(y)) => {
            let i = bp.iter().rposition(|b| *b == x);
            let j = bt.iter().rposition(|b| *b == y);
            match (i, j) {
                (None, None) => x == y,
                (Some(i), Some(j)) => i == j,
                _ => false,
            }
        }
        (Term::Abs(x, b1), Term::Abs(y, b2)) => {
            bp.push(x);
            bt.push(y);
            let ok = go(b1, b2, holes, bp, bt, sigma);
            bp.pop();
            bt.pop();
            ok
        }
        (Term::App(f1, a1), Term::App(f2, a2)) => {
            go(f1, f2, holes, bp, bt, sigma) && go(a1, a2, holes, bp, bt, sigma)
        }
        _ => false,
    }
}

/// Least general generalisation of a non-empty list of terms.
#[derive(Debug, Clone)]
pub struct AntiUnifier {
    pub pattern: Term,
    pub holes: BTreeSet<String>,
}

/// Anti-unifies `terms` after α-normalising them. Positions where the terms
/// disagree become holes; the same tuple of disagreeing subterms always
/// maps to the same hole.
pub fn anti_unify(terms: &[Term]) -> AntiUnifier {
    assert!(!terms.is_empty(), "anti_unify needs at least one term");
    let canon: Vec<Term> = terms.iter().map(Term::canonical).collect();
    let mut avoid = BTreeSet::new();
    for t in &canon {
        collect_names(t, &mut avoid);
    }
    let mut state = State {
        avoid,
        table: Vec::new(),
    };
    let refs: Vec<&Term> = canon.iter().collect();
    let pattern = state.lgg(&refs);
    AntiUnifier {
        pattern,
        holes: state.table.into_iter().map(|(_, h)| h).collect(),
    }
}

fn collect_names(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(x) => {
            out.insert(x.clone());
        }
        Term::Abs(x, b) => {
            out.insert(x.clone());
            collect_names(b, out);
        }
        Term::App(f, a) => {
            collect_names(f, out);
            collect_names(a, out);
        }
    }
}

struct State {
    avoid: BTreeSet<String>,
    table: Vec<(Vec<Term>, String)>,
}

impl State {
    fn lgg(&mut self, ts: &[&Term]) -> Term {
        let first = ts[0];
        match first {
            Term::Var(x) if ts.iter().all(|t| matches!(t, Term::Var(y) if y == x)) => {
                return first.clone()
            }
            Term::Abs(x, _) if ts.iter().all(|t| matches!(t, Term::Abs(y, _) if y == x)) => {
                let bodies: Vec<&Term> = ts
                    .iter()
                    .map(|t| match t {
                        Term::Abs(_, b) => b.as_ref(),
                        _ => unreachable!(),
                    })
                    .collect();
                return Term::abs(x.clone(), self.lgg(&bodies));
            }
            Term::App(..) if ts.iter().all(|t| matches!(t, Term::App(..))) => {
                let (fs, args): (Vec<&Term>, Vec<&Term>) = ts
                    .iter()
                    .map(|t| match t {
                        Term::App(f, a) => (f.as_ref(), a.as_ref()),
                        _ => unreachable!(),
                    })
                    .unzip();
                let f = self.lgg(&fs);
                let a = self.lgg(&args);
                return Term::app(f, a);
            }
            _ => {}
        }
        let key: Vec<Term> = ts.iter().map(|t| (*t).clone()).collect();
        if let Some((_, h)) = self
            .table
            .iter()
            .find(|(k, _)| k.iter().zip(&key).all(|(a, b)| a == b))
        {
            return Term::var(h.clone());
        }
        let h = fresh_name(&format!("h{}", self.table.len()), &self.avoid);
        self.avoid.insert(h.clone());
        self.table.push((key, h.clone()));
        Term::var(h)
    }
}
