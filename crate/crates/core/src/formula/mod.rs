//! Second-order formulas over a first-order term language.
//!
//! Three kinds of bound variable exist side by side: first-order variables,
//! ordinary predicate variables and ⊥-variables. The last two live in
//! separate namespaces, so `X` and `X⊥` never clash. Equality on
//! [`Formula`] is syntactic up to renaming of bound variables of every kind.

mod equations;
mod parse;
mod print;
mod translate;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

use crate::term::fresh_name;

pub use equations::{
    adequacy_lint, eq_step, replay_eq_chain, Adequacy, Direction, EqStep, Equation, EquationSet,
};
pub use parse::{parse_equations, parse_fo_term, parse_formula, parse_formula_with, Signature};
pub use print::{display_fo_term, display_formula, print_fo_term, print_formula};
pub use translate::{bot_transform, forget_first_order, godel_star, polarity, Polarity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("arity mismatch for {name}: expected {expected}, found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("expected a {expected} quantifier, found {found}")]
    QuantifierMismatch { expected: &'static str, found: String },
    #[error("witness {0} is not a ⊥-type")]
    NotBotType(String),
    #[error("formula contains the ⊥-variable {0}")]
    ContainsBotVariable(String),
    #[error("position {0:?} does not address a first-order term")]
    InvalidPosition(Vec<usize>),
    #[error("term {found} at the position does not match {expected}")]
    NoMatch { expected: String, found: String },
    #[error("variable {0} would be captured by a quantifier above the position")]
    Captured(String),
    #[error("unknown equation {0}")]
    UnknownEquation(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

/// First-order term over a signature of constants and function symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FoTerm {
    Var(String),
    Const(String),
    Fn(String, Vec<FoTerm>),
}

impl FoTerm {
    pub fn var(x: impl Into<String>) -> FoTerm {
        FoTerm::Var(x.into())
    }

    pub fn zero() -> FoTerm {
        FoTerm::Const("0".into())
    }

    pub fn succ(t: FoTerm) -> FoTerm {
        FoTerm::Fn("s".into(), vec![t])
    }

    /// `sⁿ(0)`.
    pub fn numeral(n: u64) -> FoTerm {
        (0..n).fold(FoTerm::zero(), |t, _| FoTerm::succ(t))
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            FoTerm::Var(x) => {
                out.insert(x.clone());
            }
            FoTerm::Const(_) => {}
            FoTerm::Fn(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn has_var(&self, x: &str) -> bool {
        match self {
            FoTerm::Var(y) => x == y,
            FoTerm::Const(_) => false,
            FoTerm::Fn(_, args) => args.iter().any(|a| a.has_var(x)),
        }
    }

    pub fn substitute(&self, map: &BTreeMap<String, FoTerm>) -> FoTerm {
        match self {
            FoTerm::Var(x) => map.get(x).cloned().unwrap_or_else(|| self.clone()),
            FoTerm::Const(_) => self.clone(),
            FoTerm::Fn(f, args) => FoTerm::Fn(f.clone(), args.iter().map(|a| a.substitute(map)).collect()),
        }
    }
}

impl fmt::Display for FoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_fo_term(self))
    }
}

/// Which namespace a second-order variable belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SoKind {
    Pred,
    Bot,
}

#[derive(Debug, Clone)]
pub enum Formula {
    Bot,
    /// Predicate variable applied to first-order terms.
    Pred(String, Vec<FoTerm>),
    /// ⊥-variable applied to first-order terms.
    BotVar(String, Vec<FoTerm>),
    /// Predicate symbol of the language.
    Sym(String, Vec<FoTerm>),
    Arrow(Box<Formula>, Box<Formula>),
    ForallFo(String, Box<Formula>),
    /// `∀X A` with the arity of `X`.
    ForallPred(String, usize, Box<Formula>),
    ForallBot(String, usize, Box<Formula>),
}

/// `λx̄.G`, the witness for instantiating an `n`-ary second-order variable.
#[derive(Debug, Clone, PartialEq)]
pub struct PredAbstraction {
    pub params: Vec<String>,
    pub body: Formula,
}

impl PredAbstraction {
    pub fn new(params: &[&str], body: Formula) -> PredAbstraction {
        PredAbstraction {
            params: params.iter().map(|s| s.to_string()).collect(),
            body,
        }
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    /// `G[ū/x̄]`.
    pub fn apply(&self, args: &[FoTerm]) -> Formula {
        let map: BTreeMap<String, FoTerm> = self
            .params
            .iter()
            .cloned()
            .zip(args.iter().cloned())
            .collect();
        self.body.subst_fo_many(&map)
    }

    fn free_fo(&self) -> BTreeSet<String> {
        let mut fv = self.body.fo_free();
        for p in &self.params {
            fv.remove(p);
        }
        fv
    }
}

/// One step of a `⊴` chain.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Fo(FoTerm),
    Pred(PredAbstraction),
    Bot(PredAbstraction),
}

pub fn neg(a: Formula) -> Formula {
    Formula::Arrow(Box::new(a), Box::new(Formula::Bot))
}

pub fn arrow(a: Formula, b: Formula) -> Formula {
    Formula::Arrow(Box::new(a), Box::new(b))
}

/// `A₁, …, Aₙ → B`.
pub fn arrows<I>(premises: I, conclusion: Formula) -> Formula
where
    I: IntoIterator<Item = Formula>,
    I::IntoIter: DoubleEndedIterator,
{
    premises
        .into_iter()
        .rev()
        .fold(conclusion, |acc, p| arrow(p, acc))
}

/// `N[t] = ∀X{X(0), ∀y(X(y) → X(sy)) → X(t)}`.
pub fn nat(t: FoTerm) -> Formula {
    let x = |arg: FoTerm| Formula::Pred("X".into(), vec![arg]);
    let template = Formula::ForallPred(
        "X".into(),
        1,
        Box::new(arrows(
            [
                x(FoTerm::zero()),
                Formula::ForallFo(
                    "y".into(),
                    Box::new(arrow(x(FoTerm::var("y")), x(FoTerm::succ(FoTerm::var("y"))))),
                ),
            ],
            x(FoTerm::var("x")),
        )),
    );
    template.subst_fo("x", &t)
}

/// The propositional trace `N = ∀X{X, (X → X) → X}`.
pub fn nat_prop() -> Formula {
    let x = || Formula::Pred("X".into(), vec![]);
    Formula::ForallPred(
        "X".into(),
        0,
        Box::new(arrows([x(), arrow(x(), x())], x())),
    )
}

/// `N*[t]`.
pub fn nat_star(t: FoTerm) -> Formula {
    godel_star(&nat(t)).expect("N[t] has no ⊥-variables")
}

/// `N⊥[t]`.
pub fn nat_bot(t: FoTerm) -> Formula {
    bot_transform(&nat(t)).expect("N[t] has no ⊥-variables")
}

impl Formula {
    pub fn pred(name: &str, args: Vec<FoTerm>) -> Formula {
        Formula::Pred(name.into(), args)
    }

    pub fn bot_var(name: &str, args: Vec<FoTerm>) -> Formula {
        Formula::BotVar(name.into(), args)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::Bot | Formula::Pred(..) | Formula::BotVar(..) | Formula::Sym(..)
        )
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha(self, other, &mut Scopes::default())
    }

    /// Free first-order variables.
    pub fn fo_free(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_fo_free(&mut Vec::new(), &mut out);
        out
    }

    fn walk_fo_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let mut add = |args: &[FoTerm], bound: &Vec<String>| {
            for a in args {
                for v in a.vars() {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
        };
        match self {
            Formula::Bot => {}
            Formula::Pred(_, args) | Formula::BotVar(_, args) | Formula::Sym(_, args) => {
                add(args, bound)
            }
            Formula::Arrow(a, b) => {
                a.walk_fo_free(bound, out);
                b.walk_fo_free(bound, out);
            }
            Formula::ForallFo(x, b) => {
                bound.push(x.clone());
                b.walk_fo_free(bound, out);
                bound.pop();
            }
            Formula::ForallPred(_, _, b) | Formula::ForallBot(_, _, b) => {
                b.walk_fo_free(bound, out)
            }
        }
    }

    /// Free second-order variables of the given kind.
    pub fn so_free(&self, kind: SoKind) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_so_free(kind, &mut Vec::new(), &mut out);
        out
    }

    fn walk_so_free(&self, kind: SoKind, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Pred(x, _) if kind == SoKind::Pred && !bound.contains(x) => {
                out.insert(x.clone());
            }
            Formula::BotVar(x, _) if kind == SoKind::Bot && !bound.contains(x) => {
                out.insert(x.clone());
            }
            Formula::Arrow(a, b) => {
                a.walk_so_free(kind, bound, out);
                b.walk_so_free(kind, bound, out);
            }
            Formula::ForallFo(_, b) => b.walk_so_free(kind, bound, out),
            Formula::ForallPred(x, _, b) if kind == SoKind::Pred => {
                bound.push(x.clone());
                b.walk_so_free(kind, bound, out);
                bound.pop();
            }
            Formula::ForallBot(x, _, b) if kind == SoKind::Bot => {
                bound.push(x.clone());
                b.walk_so_free(kind, bound, out);
                bound.pop();
            }
            Formula::ForallPred(_, _, b) | Formula::ForallBot(_, _, b) => {
                b.walk_so_free(kind, bound, out)
            }
            _ => {}
        }
    }

    /// All first-order variable names, bound or free.
    fn fo_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Bot => {}
            Formula::Pred(_, args) | Formula::BotVar(_, args) | Formula::Sym(_, args) => {
                args.iter().for_each(|a| a.collect_vars(out))
            }
            Formula::Arrow(a, b) => {
                a.fo_names(out);
                b.fo_names(out);
            }
            Formula::ForallFo(x, b) => {
                out.insert(x.clone());
                b.fo_names(out);
            }
            Formula::ForallPred(_, _, b) | Formula::ForallBot(_, _, b) => b.fo_names(out),
        }
    }

    fn so_names(&self, kind: SoKind, out: &mut BTreeSet<String>) {
        match self {
            Formula::Pred(x, _) if kind == SoKind::Pred => {
                out.insert(x.clone());
            }
            Formula::BotVar(x, _) if kind == SoKind::Bot => {
                out.insert(x.clone());
            }
            Formula::Arrow(a, b) => {
                a.so_names(kind, out);
                b.so_names(kind, out);
            }
            Formula::ForallFo(_, b) => b.so_names(kind, out),
            Formula::ForallPred(x, _, b) => {
                if kind == SoKind::Pred {
                    out.insert(x.clone());
                }
                b.so_names(kind, out)
            }
            Formula::ForallBot(x, _, b) => {
                if kind == SoKind::Bot {
                    out.insert(x.clone());
                }
                b.so_names(kind, out)
            }
            _ => {}
        }
    }

    /// `A[u/x]`.
    pub fn subst_fo(&self, x: &str, u: &FoTerm) -> Formula {
        let mut map = BTreeMap::new();
        map.insert(x.to_string(), u.clone());
        self.subst_fo_many(&map)
    }

    /// Simultaneous capture-avoiding substitution of first-order terms.
    pub fn subst_fo_many(&self, map: &BTreeMap<String, FoTerm>) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(|a| a.substitute(map)).collect()),
            Formula::BotVar(p, args) => Formula::BotVar(p.clone(), args.iter().map(|a| a.substitute(map)).collect()),
            Formula::Sym(p, args) => Formula::Sym(p.clone(), args.iter().map(|a| a.substitute(map)).collect()),
            Formula::Arrow(a, b) => arrow(a.subst_fo_many(map), b.subst_fo_many(map)),
            Formula::ForallPred(x, k, b) => Formula::ForallPred(x.clone(), *k, Box::new(b.subst_fo_many(map))),
            Formula::ForallBot(x, k, b) => Formula::ForallBot(x.clone(), *k, Box::new(b.subst_fo_many(map))),
            Formula::ForallFo(y, b) => {
                let body_free = b.fo_free();
                let mut inner: BTreeMap<String, FoTerm> = map
                    .iter()
                    .filter(|(k, _)| *k != y && body_free.contains(*k))
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect();
                if inner.is_empty() {
                    return self.clone();
                }
                if inner.values().any(|v| v.has_var(y)) {
                    let mut avoid = BTreeSet::new();
                    b.fo_names(&mut avoid);
                    for (k, v) in &inner {
                        avoid.insert(k.clone());
                        v.collect_vars(&mut avoid);
                    }
                    let z = fresh_name(y, &avoid);
                    inner.insert(y.clone(), FoTerm::var(z.clone()));
                    Formula::ForallFo(z, Box::new(b.subst_fo_many(&inner)))
                } else {
                    Formula::ForallFo(y.clone(), Box::new(b.subst_fo_many(&inner)))
                }
            }
        }
    }

    /// `A[G/X]` for an ordinary predicate variable.
    pub fn subst_pred(&self, x: &str, g: &PredAbstraction) -> Result<Formula, FormulaError> {
        self.subst_so(SoKind::Pred, x, g)
    }

    /// `A[G/X⊥]` for a ⊥-variable.
    pub fn subst_bot(&self, x: &str, g: &PredAbstraction) -> Result<Formula, FormulaError> {
        self.subst_so(SoKind::Bot, x, g)
    }

    pub fn subst_so(&self, kind: SoKind, x: &str, g: &PredAbstraction) -> Result<Formula, FormulaError> {
        let g_fo = g.free_fo();
        let g_pred = g.body.so_free(SoKind::Pred);
        let g_bot = g.body.so_free(SoKind::Bot);
        self.subst_so_in(kind, x, g, &g_fo, &g_pred, &g_bot)
    }

    fn mentions_so(&self, kind: SoKind, x: &str) -> bool {
        self.so_free(kind).contains(x)
    }

    fn subst_so_in(
        &self,
        kind: SoKind,
        x: &str,
        g: &PredAbstraction,
        g_fo: &BTreeSet<String>,
        g_pred: &BTreeSet<String>,
        g_bot: &BTreeSet<String>,
    ) -> Result<Formula, FormulaError> {
        let recur = |f: &Formula| f.subst_so_in(kind, x, g, g_fo, g_pred, g_bot);
        Ok(match self {
            Formula::Pred(p, args) if kind == SoKind::Pred && p == x => instantiate(g, x, args)?,
            Formula::BotVar(p, args) if kind == SoKind::Bot && p == x => instantiate(g, x, args)?,
            Formula::Bot | Formula::Pred(..) | Formula::BotVar(..) | Formula::Sym(..) => self.clone(),
            Formula::Arrow(a, b) => arrow(recur(a)?, recur(b)?),
            Formula::ForallFo(y, b) => {
                if g_fo.contains(y) && b.mentions_so(kind, x) {
                    let mut avoid = g_fo.clone();
                    b.fo_names(&mut avoid);
                    let z = fresh_name(y, &avoid);
                    let renamed = b.subst_fo(y, &FoTerm::var(z.clone()));
                    Formula::ForallFo(z, Box::new(recur(&renamed)?))
                } else {
                    Formula::ForallFo(y.clone(), Box::new(recur(b)?))
                }
            }
            Formula::ForallPred(y, k, b) => {
                if kind == SoKind::Pred && y == x {
                    self.clone()
                } else if g_pred.contains(y) && b.mentions_so(kind, x) {
                    let mut avoid = g_pred.clone();
                    b.so_names(SoKind::Pred, &mut avoid);
                    avoid.insert(x.to_string());
                    let z = fresh_name(y, &avoid);
                    let renamed = b.rename_so(SoKind::Pred, y, &z);
                    Formula::ForallPred(z, *k, Box::new(recur(&renamed)?))
                } else {
                    Formula::ForallPred(y.clone(), *k, Box::new(recur(b)?))
                }
            }
            Formula::ForallBot(y, k, b) => {
                if kind == SoKind::Bot && y == x {
                    self.clone()
                } else if g_bot.contains(y) && b.mentions_so(kind, x) {
                    let mut avoid = g_bot.clone();
                    b.so_names(SoKind::Bot, &mut avoid);
                    avoid.insert(x.to_string());
                    let z = fresh_name(y, &avoid);
                    let renamed = b.rename_so(SoKind::Bot, y, &z);
                    Formula::ForallBot(z, *k, Box::new(recur(&renamed)?))
                } else {
                    Formula::ForallBot(y.clone(), *k, Box::new(recur(b)?))
                }
            }
        })
    }

    /// Renames free occurrences of a second-order variable. `new` must not
    /// be bound anywhere in `self`.
    pub fn rename_so(&self, kind: SoKind, old: &str, new: &str) -> Formula {
        let recur = |f: &Formula| Box::new(f.rename_so(kind, old, new));
        match self {
            Formula::Pred(p, args) if kind == SoKind::Pred && p == old => Formula::Pred(new.into(), args.clone()),
            Formula::BotVar(p, args) if kind == SoKind::Bot && p == old => Formula::BotVar(new.into(), args.clone()),
            Formula::Bot | Formula::Pred(..) | Formula::BotVar(..) | Formula::Sym(..) => self.clone(),
            Formula::Arrow(a, b) => Formula::Arrow(recur(a), recur(b)),
            Formula::ForallFo(y, b) => Formula::ForallFo(y.clone(), recur(b)),
            Formula::ForallPred(y, _, _) if kind == SoKind::Pred && y == old => self.clone(),
            Formula::ForallBot(y, _, _) if kind == SoKind::Bot && y == old => self.clone(),
            Formula::ForallPred(y, k, b) => Formula::ForallPred(y.clone(), *k, recur(b)),
            Formula::ForallBot(y, k, b) => Formula::ForallBot(y.clone(), *k, recur(b)),
        }
    }

    /// Whether any first-order structure (terms or first-order quantifiers)
    /// occurs.
    pub fn has_first_order_part(&self) -> bool {
        match self {
            Formula::Bot => false,
            Formula::Pred(_, args) | Formula::BotVar(_, args) | Formula::Sym(_, args) => !args.is_empty(),
            Formula::Arrow(a, b) => a.has_first_order_part() || b.has_first_order_part(),
            Formula::ForallFo(..) => true,
            Formula::ForallPred(_, k, b) | Formula::ForallBot(_, k, b) => *k > 0 || b.has_first_order_part(),
        }
    }
}

fn instantiate(g: &PredAbstraction, x: &str, args: &[FoTerm]) -> Result<Formula, FormulaError> {
    if args.len() != g.arity() {
        return Err(FormulaError::Arity {
            name: x.to_string(),
            expected: args.len(),
            found: g.arity(),
        });
    }
    Ok(g.apply(args))
}

#[derive(Default)]
struct Scopes<'a> {
    fo: (Vec<&'a str>, Vec<&'a str>),
    pred: (Vec<&'a str>, Vec<&'a str>),
    bot: (Vec<&'a str>, Vec<&'a str>),
}

fn same_var(stack: &(Vec<&str>, Vec<&str>), x: &str, y: &str) -> bool {
    let i = stack.0.iter().rposition(|b| *b == x);
    let j = stack.1.iter().rposition(|b| *b == y);
    match (i, j) {
        (None, None) => x == y,
        (Some(i), Some(j)) => i == j,
        _ => false,
    }
}

fn fo_alpha(s: &FoTerm, t: &FoTerm, stack: &(Vec<&str>, Vec<&str>)) -> bool {
    match (s, t) {
        (FoTerm::Var(x), FoTerm::Var(y)) => same_var(stack, x, y),
        (FoTerm::Const(a), FoTerm::Const(b)) => a == b,
        (FoTerm::Fn(f, xs), FoTerm::Fn(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| fo_alpha(a, b, stack))
        }
        _ => false,
    }
}

fn args_alpha(xs: &[FoTerm], ys: &[FoTerm], stack: &(Vec<&str>, Vec<&str>)) -> bool {
    xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| fo_alpha(a, b, stack))
}

fn alpha<'a>(a: &'a Formula, b: &'a Formula, sc: &mut Scopes<'a>) -> bool {
    match (a, b) {
        (Formula::Bot, Formula::Bot) => true,
        (Formula::Pred(x, xs), Formula::Pred(y, ys)) => same_var(&sc.pred, x, y) && args_alpha(xs, ys, &sc.fo),
        (Formula::BotVar(x, xs), Formula::BotVar(y, ys)) => same_var(&sc.bot, x, y) && args_alpha(xs, ys, &sc.fo),
        (Formula::Sym(x, xs), Formula::Sym(y, ys)) => x == y && args_alpha(xs, ys, &sc.fo),
        (Formula::Arrow(a1, b1), Formula::Arrow(a2, b2)) => alpha(a1, a2, sc) && alpha(b1, b2, sc),
        (Formula::ForallFo(x, b1), Formula::ForallFo(y, b2)) => {
            sc.fo.0.push(x);
            sc.fo.1.push(y);
            let r = alpha(b1, b2, sc);
            sc.fo.0.pop();
            sc.fo.1.pop();
            r
        }
        (Formula::ForallPred(x, k1, b1), Formula::ForallPred(y, k2, b2)) => {
            k1 == k2 && {
                sc.pred.0.push(x);
                sc.pred.1.push(y);
                let r = alpha(b1, b2, sc);
                sc.pred.0.pop();
                sc.pred.1.pop();
                r
            }
        }
        (Formula::ForallBot(x, k1, b1), Formula::ForallBot(y, k2, b2)) => {
            k1 == k2 && {
                sc.bot.0.push(x);
                sc.bot.1.push(y);
                let r = alpha(b1, b2, sc);
                sc.bot.0.pop();
                sc.bot.1.pop();
                r
            }
        }
        _ => false,
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Formula) -> bool {
        self.alpha_eq(other)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_formula(self))
    }
}

/// ⊥-types: `⊥`, `X⊥(t̄)`, `A → B` with `B` a ⊥-type, `∀v A` with `A` a ⊥-type.
pub fn is_bot_type(f: &Formula) -> bool {
    match f {
        Formula::Bot | Formula::BotVar(..) => true,
        Formula::Arrow(_, b) => is_bot_type(b),
        Formula::ForallFo(_, b) | Formula::ForallPred(_, _, b) | Formula::ForallBot(_, _, b) => is_bot_type(b),
        Formula::Pred(..) | Formula::Sym(..) => false,
    }
}

fn kind_name(f: &Formula) -> String {
    match f {
        Formula::ForallFo(..) => "first-order quantifier".into(),
        Formula::ForallPred(..) => "predicate quantifier".into(),
        Formula::ForallBot(..) => "⊥-variable quantifier".into(),
        other => format!("non-quantified formula {}", print_formula(other)),
    }
}

/// Replays a `⊴` chain: each witness removes the outermost quantifier.
pub fn instantiate_chain(f: &Formula, witnesses: &[Witness]) -> Result<Formula, FormulaError> {
    let mut cur = f.clone();
    for w in witnesses {
        cur = match (&cur, w) {
            (Formula::ForallFo(x, b), Witness::Fo(u)) => b.subst_fo(x, u),
            (Formula::ForallPred(x, k, b), Witness::Pred(g)) => {
                check_arity(x, *k, g)?;
                b.subst_pred(x, g)?
            }
            (Formula::ForallBot(x, k, b), Witness::Bot(g)) => {
                check_arity(x, *k, g)?;
                if !is_bot_type(&g.body) {
                    return Err(FormulaError::NotBotType(print_formula(&g.body)));
                }
                b.subst_bot(x, g)?
            }
            (other, w) => {
                return Err(FormulaError::QuantifierMismatch {
                    expected: match w {
                        Witness::Fo(_) => "first-order",
                        Witness::Pred(_) => "predicate",
                        Witness::Bot(_) => "⊥-variable",
                    },
                    found: kind_name(other),
                })
            }
        };
    }
    Ok(cur)
}

fn check_arity(x: &str, k: usize, g: &PredAbstraction) -> Result<(), FormulaError> {
    if k == g.arity() {
        Ok(())
    } else {
        Err(FormulaError::Arity {
            name: x.to_string(),
            expected: k,
            found: g.arity(),
        })
    }
}

/// Checks `F ⊴ E₁ → F₁`, `Fᵢ ⊴ Eᵢ₊₁ → Fᵢ₊₁`, `Fᵣ ⊴ ⊥` for a ⊥-type `F`
/// applied to `r` arguments and returns `E₁, …, Eᵣ`. `chains` holds one
/// witness list per step, `r + 1` in total.
pub fn decompose_applied(
    f: &Formula,
    r: usize,
    chains: &[Vec<Witness>],
) -> Result<Vec<Formula>, FormulaError> {
    if !is_bot_type(f) {
        return Err(FormulaError::NotBotType(print_formula(f)));
    }
    if chains.len() != r + 1 {
        return Err(FormulaError::Decomposition(format!(
            "expected {} witness chains for {r} arguments, got {}",
            r + 1,
            chains.len()
        )));
    }
    let mut cur = f.clone();
    let mut args = Vec::with_capacity(r);
    for (i, chain) in chains[..r].iter().enumerate() {
        match instantiate_chain(&cur, chain)? {
            Formula::Arrow(e, next) => {
                args.push(*e);
                cur = *next;
            }
            other => {
                return Err(FormulaError::Decomposition(format!(
                    "step {}: {} is not an implication",
                    i + 1,
                    print_formula(&other)
                )))
            }
        }
    }
    match instantiate_chain(&cur, &chains[r])? {
        Formula::Bot => Ok(args),
        other => Err(FormulaError::Decomposition(format!(
            "final formula {} is not ⊥",
            print_formula(&other)
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn alpha_equality_for_all_binder_kinds() {
        assert_eq!(f("!x X(x)"), f("!y X(y)"));
        assert_eq!(f("!X X(0)"), f("!Y Y(0)"));
        assert_eq!(f("!X_| X_|(0)"), f("!Z_| Z_|(0)"));
        assert_ne!(f("!X X(0)"), f("!X_| X_|(0)"));
        assert_ne!(f("!x X(x)"), f("!x X(y)"));
    }

    #[test]
    fn bot_type_recognition() {
        assert!(is_bot_type(&Formula::Bot));
        assert!(is_bot_type(&f("A -> X_|(0)")));
        assert!(is_bot_type(&f("!x (X(x) -> bot)")));
        assert!(!is_bot_type(&nat(FoTerm::var("x"))));
        assert!(!is_bot_type(&f("bot -> X(0)")));
    }

    #[test]
    fn nat_substitution_avoids_capture() {
        let n = nat(FoTerm::var("y"));
        assert!(n.fo_free().contains("y"));
        assert_eq!(n.fo_free().len(), 1);
        assert_eq!(nat(FoTerm::var("x")).subst_fo("x", &FoTerm::succ(FoTerm::zero())), nat(FoTerm::numeral(1)));
    }

    #[test]
    fn subst_pred_produces_star_shape() {
        // body of N[x] over X, with X := λy.¬Z(y), regeneralised over Z
        let Formula::ForallPred(_, _, body) = nat(FoTerm::var("x")) else { panic!() };
        let g = PredAbstraction::new(&["y"], neg(Formula::pred("Z", vec![FoTerm::var("y")])));
        let out = body.subst_pred("X", &g).unwrap();
        let regen = Formula::ForallPred("Z".into(), 1, Box::new(out));
        assert_eq!(regen, nat_star(FoTerm::var("x")));
    }

    #[test]
    fn subst_pred_arity_mismatch() {
        let Formula::ForallPred(_, _, body) = nat(FoTerm::var("x")) else { panic!() };
        let g = PredAbstraction::new(&["a", "b"], Formula::Bot);
        assert!(matches!(body.subst_pred("X", &g), Err(FormulaError::Arity { .. })));
    }

    #[test]
    fn subst_pred_avoids_capture() {
        // ∀Y (X → Y) with X := Y must rename the bound Y
        let a = f("!Y (X -> Y)");
        let out = a.subst_pred("X", &PredAbstraction::new(&[], f("Y"))).unwrap();
        assert_eq!(out, f("!Z (Y -> Z)"));
        let b = f("!y X(y, x)");
        let out = b.subst_pred("X", &PredAbstraction::new(&["a", "b"], f("R(a, y)"))).unwrap_or_else(|e| panic!("{e}"));
        assert!(out.fo_free().contains("y"));
    }

    #[test]
    fn chain_examples() {
        let n = forget_first_order(&nat_bot(FoTerm::var("x")));
        let out = instantiate_chain(&n, &[Witness::Bot(PredAbstraction::new(&[], Formula::Bot))]).unwrap();
        assert_eq!(out, f("bot, (bot -> bot) -> bot"));
        assert_eq!(instantiate_chain(&n, &[]).unwrap(), n);
        let bad = instantiate_chain(&n, &[Witness::Bot(PredAbstraction::new(&[], f("X")))]);
        assert!(matches!(bad, Err(FormulaError::NotBotType(_))));
        let mismatch = instantiate_chain(&n, &[Witness::Fo(FoTerm::zero())]);
        assert!(matches!(mismatch, Err(FormulaError::QuantifierMismatch { .. })));
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(decompose_applied(&Formula::Bot, 0, &[vec![]]).unwrap(), vec![]);
        assert_eq!(
            decompose_applied(&f("bot -> bot"), 1, &[vec![], vec![]]).unwrap(),
            vec![Formula::Bot]
        );
        let g = f("!X_| (X_| -> X_|)");
        let w = vec![Witness::Bot(PredAbstraction::new(&[], Formula::Bot))];
        assert_eq!(decompose_applied(&g, 1, &[w, vec![]]).unwrap(), vec![Formula::Bot]);
        assert!(decompose_applied(&f("bot -> X_|"), 1, &[vec![], vec![]]).is_err());
        assert!(decompose_applied(&f("X(0)"), 0, &[vec![]]).is_err());
    }
}
