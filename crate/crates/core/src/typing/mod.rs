//! Explicit typing derivations for AF2 with ⊥-variables, and their checker.
//!
//! A [`Derivation`] is a tree whose nodes carry a full judgement
//! `Γ ⊢ t : A`, the rule that concludes it and every witness the rule
//! needs. Nothing is inferred: [`check_derivation`] replays each node.

mod build;
pub mod bundled;
mod check;
mod file;
mod lift;
pub mod mutate;

use std::fmt;

use thiserror::Error;

use crate::formula::{EqStep, FoTerm, Formula, FormulaError, PredAbstraction, SoKind};
use crate::term::Term;

pub use build::{
    abs, app, ax, eq, fresh_fo, fresh_pred, gen_bot, gen_fo, gen_pred, inst_bot, inst_fo,
    inst_pred,
};
pub use check::{check_derivation, check_fperp, forget_derivation, CheckReport, CheckVerdict};
pub use file::{parse_derivation, print_derivation};
pub use lift::lift_star_to_bot;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TypingError {
    #[error("{0}")]
    Formula(#[from] FormulaError),
    #[error("variable {0} is already bound in the context")]
    DuplicateBinding(String),
    #[error("variable {0} is not in the context")]
    Unbound(String),
    #[error("{0}")]
    Shape(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Ordered bindings `x₁ : A₁, …, xₙ : Aₙ` with distinct names.
#[derive(Debug, Clone, Default)]
pub struct Context {
    entries: Vec<(String, Formula)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn from_entries(entries: Vec<(String, Formula)>) -> Result<Context, TypingError> {
        let mut ctx = Context::new();
        for (x, a) in entries {
            ctx = ctx.extend(&x, a)?;
        }
        Ok(ctx)
    }

    /// `Γ, x : A`.
    pub fn extend(&self, x: &str, a: Formula) -> Result<Context, TypingError> {
        if self.contains(x) {
            return Err(TypingError::DuplicateBinding(x.to_string()));
        }
        let mut entries = self.entries.clone();
        entries.push((x.to_string(), a));
        Ok(Context { entries })
    }

    pub fn get(&self, x: &str) -> Option<&Formula> {
        self.entries.iter().find(|(y, _)| y == x).map(|(_, a)| a)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.get(x).is_some()
    }

    pub fn entries(&self) -> &[(String, Formula)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Replaces the type of one entry, keeping the order.
    pub fn with_type(&self, x: &str, a: Formula) -> Context {
        Context {
            entries: self
                .entries
                .iter()
                .map(|(y, b)| (y.clone(), if y == x { a.clone() } else { b.clone() }))
                .collect(),
        }
    }

    pub fn map_types(&self, f: impl Fn(&Formula) -> Formula) -> Context {
        Context {
            entries: self.entries.iter().map(|(y, b)| (y.clone(), f(b))).collect(),
        }
    }

    pub fn has_free_fo(&self, x: &str) -> bool {
        self.entries.iter().any(|(_, a)| a.fo_free().contains(x))
    }

    pub fn has_free_so(&self, kind: SoKind, x: &str) -> bool {
        self.entries.iter().any(|(_, a)| a.so_free(kind).contains(x))
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Context) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|((x, a), (y, b))| x == y && a == b)
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, a)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} : {a}")?;
        }
        Ok(())
    }
}

/// The rule concluding a node, with its witnesses.
#[derive(Debug, Clone, PartialEq)]
pub enum Rule {
    Ax,
    Abs,
    App,
    GenFo,
    InstFo(FoTerm),
    GenPred,
    InstPred(PredAbstraction),
    GenBot,
    InstBot(PredAbstraction),
    Eq(Vec<EqStep>),
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::Ax => "ax",
            Rule::Abs => "abs",
            Rule::App => "app",
            Rule::GenFo => "gen-fo",
            Rule::InstFo(_) => "inst-fo",
            Rule::GenPred => "gen-pred",
            Rule::InstPred(_) => "inst-pred",
            Rule::GenBot => "gen-bot",
            Rule::InstBot(_) => "inst-bot",
            Rule::Eq(_) => "eq",
        }
    }

    fn premise_count(&self) -> usize {
        match self {
            Rule::Ax => 0,
            Rule::App => 2,
            _ => 1,
        }
    }
}

/// `ctx ⊢ term : ty`, concluded by `rule` from `premises`.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub ctx: Context,
    pub term: Term,
    pub ty: Formula,
    pub rule: Rule,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    pub fn node(&self, path: &[usize]) -> Option<&Derivation> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.premises.get(i)?.node(rest),
        }
    }

    pub fn node_mut(&mut self, path: &[usize]) -> Option<&mut Derivation> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.premises.get_mut(i)?.node_mut(rest),
        }
    }

    /// Paths of all nodes in pre-order.
    pub fn paths(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        fn go(d: &Derivation, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(path.clone());
            for (i, p) in d.premises.iter().enumerate() {
                path.push(i);
                go(p, path, out);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn rules_used(&self) -> Vec<&'static str> {
        let mut out = vec![self.rule.tag()];
        for p in &self.premises {
            out.extend(p.rules_used());
        }
        out
    }
}
