//! Equations between first-order terms and explicit `≈` steps.
//!
//! A step rewrites one occurrence of an instantiated side of a named
//! equation. No equational search is ever performed; callers spell out
//! the chain.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use super::{print_fo_term, FoTerm, Formula, FormulaError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: FoTerm,
    pub rhs: FoTerm,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} = {}", self.name, print_fo_term(&self.lhs), print_fo_term(&self.rhs))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquationSet {
    equations: Vec<Equation>,
}

impl EquationSet {
    pub fn new(equations: Vec<Equation>) -> EquationSet {
        EquationSet { equations }
    }

    pub fn push(&mut self, eq: Equation) {
        self.equations.push(eq);
    }

    pub fn get(&self, name: &str) -> Option<&Equation> {
        self.equations.iter().find(|e| e.name == name)
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }
}

impl fmt::Display for EquationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.equations {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Rewrite an instance of the left-hand side into the right-hand side.
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// One `≈` step. `position` is a path from the root: `0`/`1` pick the sides
/// of an arrow, `0` enters a quantifier body, and inside an atom or a
/// function application `i` picks the `i`-th argument.
#[derive(Debug, Clone, PartialEq)]
pub struct EqStep {
    pub equation: String,
    pub inst: Vec<(String, FoTerm)>,
    pub position: Vec<usize>,
    pub direction: Direction,
}

impl EqStep {
    pub fn inverse(&self) -> EqStep {
        EqStep {
            direction: self.direction.flip(),
            ..self.clone()
        }
    }
}

/// Applies one step to `f`.
pub fn eq_step(f: &Formula, set: &EquationSet, step: &EqStep) -> Result<Formula, FormulaError> {
    let eq = set
        .get(&step.equation)
        .ok_or_else(|| FormulaError::UnknownEquation(step.equation.clone()))?;
    let inst: BTreeMap<String, FoTerm> = step.inst.iter().cloned().collect();
    let (lhs, rhs) = (eq.lhs.substitute(&inst), eq.rhs.substitute(&inst));
    let (from, to) = match step.direction {
        Direction::Forward => (lhs, rhs),
        Direction::Backward => (rhs, lhs),
    };
    let mut bound = Vec::new();
    rewrite_formula(f, &step.position, &step.position, &from, &to, &mut bound)
}

/// Replays a chain of steps.
pub fn replay_eq_chain(f: &Formula, set: &EquationSet, steps: &[EqStep]) -> Result<Formula, FormulaError> {
    steps.iter().try_fold(f.clone(), |acc, s| eq_step(&acc, set, s))
}

fn rewrite_formula(
    f: &Formula,
    path: &[usize],
    full: &[usize],
    from: &FoTerm,
    to: &FoTerm,
    bound: &mut Vec<String>,
) -> Result<Formula, FormulaError> {
    let invalid = || FormulaError::InvalidPosition(full.to_vec());
    let (&i, rest) = path.split_first().ok_or_else(invalid)?;
    match f {
        Formula::Pred(x, args) | Formula::BotVar(x, args) | Formula::Sym(x, args) => {
            let arg = args.get(i).ok_or_else(invalid)?;
            let new = rewrite_term(arg, rest, full, from, to, bound)?;
            let mut args = args.clone();
            args[i] = new;
            Ok(match f {
                Formula::Pred(..) => Formula::Pred(x.clone(), args),
                Formula::BotVar(..) => Formula::BotVar(x.clone(), args),
                _ => Formula::Sym(x.clone(), args),
            })
        }
        Formula::Arrow(a, b) => match i {
            0 => Ok(super::arrow(rewrite_formula(a, rest, full, from, to, bound)?, (**b).clone())),
            1 => Ok(super::arrow((**a).clone(), rewrite_formula(b, rest, full, from, to, bound)?)),
            _ => Err(invalid()),
        },
        Formula::ForallFo(x, b) if i == 0 => {
            bound.push(x.clone());
            let r = rewrite_formula(b, rest, full, from, to, bound);
            bound.pop();
            Ok(Formula::ForallFo(x.clone(), Box::new(r?)))
        }
        Formula::ForallPred(x, k, b) if i == 0 => Ok(Formula::ForallPred(
            x.clone(),
            *k,
            Box::new(rewrite_formula(b, rest, full, from, to, bound)?),
        )),
        Formula::ForallBot(x, k, b) if i == 0 => Ok(Formula::ForallBot(
            x.clone(),
            *k,
            Box::new(rewrite_formula(b, rest, full, from, to, bound)?),
        )),
        _ => Err(invalid()),
    }
}

fn rewrite_term(
    t: &FoTerm,
    path: &[usize],
    full: &[usize],
    from: &FoTerm,
    to: &FoTerm,
    bound: &[String],
) -> Result<FoTerm, FormulaError> {
    match path.split_first() {
        None => {
            if t != from {
                return Err(FormulaError::NoMatch {
                    expected: print_fo_term(from),
                    found: print_fo_term(t),
                });
            }
            if let Some(v) = from.vars().union(&to.vars()).find(|v| bound.contains(v)) {
                return Err(FormulaError::Captured(v.clone()));
            }
            Ok(to.clone())
        }
        Some((&i, rest)) => match t {
            FoTerm::Fn(f, args) if i < args.len() => {
                let mut args = args.clone();
                args[i] = rewrite_term(&args[i], rest, full, from, to, bound)?;
                Ok(FoTerm::Fn(f.clone(), args))
            }
            _ => Err(FormulaError::InvalidPosition(full.to_vec())),
        },
    }
}

/// Outcome of the bounded adequacy lint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Adequacy {
    /// No violation among ground terms up to `depth`.
    NotRefuted { depth: usize, terms: usize },
    /// `s(a) = 0` follows from the equations.
    ZeroIsSuccessor { witness: String },
    /// `s(a) = s(b)` was derived within the bound but `a = b` was not.
    NotInjective { witness: String },
}

impl Adequacy {
    pub fn is_refuted(&self) -> bool {
        !matches!(self, Adequacy::NotRefuted { .. })
    }
}

impl fmt::Display for Adequacy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Adequacy::NotRefuted { depth, terms } => {
                write!(f, "not refuted ({terms} ground terms up to depth {depth})")
            }
            Adequacy::ZeroIsSuccessor { witness } => write!(f, "refuted: {witness}"),
            Adequacy::NotInjective { witness } => {
                write!(f, "refuted within the bound: {witness}")
            }
        }
    }
}

struct Universe {
    nodes: Vec<(String, Vec<usize>)>,
    index: HashMap<(String, Vec<usize>), usize>,
    parent: Vec<usize>,
}

impl Universe {
    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    fn lookup(&self, t: &FoTerm, env: &BTreeMap<&str, usize>) -> Option<usize> {
        match t {
            FoTerm::Var(x) => env.get(x.as_str()).copied(),
            FoTerm::Const(c) => self.index.get(&(c.clone(), vec![])).copied(),
            FoTerm::Fn(f, args) => {
                let ids = args
                    .iter()
                    .map(|a| self.lookup(a, env))
                    .collect::<Option<Vec<_>>>()?;
                self.index.get(&(f.clone(), ids)).copied()
            }
        }
    }

    fn show(&self, i: usize) -> String {
        let (f, args) = &self.nodes[i];
        if args.is_empty() {
            f.clone()
        } else {
            let inner: Vec<String> = args.iter().map(|a| self.show(*a)).collect();
            format!("{f}({})", inner.join(", "))
        }
    }
}

fn symbols(t: &FoTerm, out: &mut BTreeSet<(String, usize)>) {
    match t {
        FoTerm::Var(_) => {}
        FoTerm::Const(c) => {
            out.insert((c.clone(), 0));
        }
        FoTerm::Fn(f, args) => {
            out.insert((f.clone(), args.len()));
            args.iter().for_each(|a| symbols(a, out));
        }
    }
}

/// Checks both adequacy conditions on the congruence closure of all ground
/// instances over terms of depth at most `depth`, built from `0`, `s` and
/// the symbols of the set. Only a bounded fragment of the equational theory
/// is explored, so `NotRefuted` is evidence rather than proof.
pub fn adequacy_lint(set: &EquationSet, depth: usize) -> Adequacy {
    let mut syms: BTreeSet<(String, usize)> = [("0".to_string(), 0), ("s".to_string(), 1)].into();
    for e in set.equations() {
        symbols(&e.lhs, &mut syms);
        symbols(&e.rhs, &mut syms);
    }
    let mut u = Universe {
        nodes: Vec::new(),
        index: HashMap::new(),
        parent: Vec::new(),
    };
    let add = |u: &mut Universe, key: (String, Vec<usize>)| {
        if !u.index.contains_key(&key) {
            let id = u.nodes.len();
            u.nodes.push(key.clone());
            u.index.insert(key, id);
            u.parent.push(id);
        }
    };
    for (c, _) in syms.iter().filter(|(_, k)| *k == 0) {
        add(&mut u, (c.clone(), vec![]));
    }
    for _ in 1..depth {
        let existing = u.nodes.len();
        for (f, k) in syms.iter().filter(|(_, k)| *k > 0) {
            let mut tuple = vec![0; *k];
            'tuples: loop {
                add(&mut u, (f.clone(), tuple.clone()));
                for slot in tuple.iter_mut() {
                    *slot += 1;
                    if *slot < existing {
                        continue 'tuples;
                    }
                    *slot = 0;
                }
                break;
            }
        }
    }
    let n = u.nodes.len();

    for e in set.equations() {
        let vars: Vec<String> = e.lhs.vars().union(&e.rhs.vars()).cloned().collect();
        let mut choice = vec![0usize; vars.len()];
        'assign: loop {
            let env: BTreeMap<&str, usize> = vars.iter().map(String::as_str).zip(choice.iter().copied()).collect();
            if let (Some(a), Some(b)) = (u.lookup(&e.lhs, &env), u.lookup(&e.rhs, &env)) {
                u.union(a, b);
            }
            for slot in choice.iter_mut() {
                *slot += 1;
                if *slot < n {
                    continue 'assign;
                }
                *slot = 0;
            }
            break;
        }
    }

    loop {
        let mut changed = false;
        let mut seen: HashMap<(String, Vec<usize>), usize> = HashMap::new();
        for i in 0..n {
            let (f, args) = u.nodes[i].clone();
            let key = (f, args.iter().map(|a| u.find(*a)).collect::<Vec<_>>());
            match seen.get(&key) {
                Some(&j) => changed |= u.union(i, j),
                None => {
                    seen.insert(key, i);
                }
            }
        }
        if !changed {
            break;
        }
    }

    let zero = u.index[&("0".to_string(), vec![])];
    let succs: Vec<(usize, usize)> = (0..n)
        .filter(|&i| u.nodes[i].0 == "s" && u.nodes[i].1.len() == 1)
        .map(|i| (i, u.nodes[i].1[0]))
        .collect();
    for &(i, _) in &succs {
        if u.find(i) == u.find(zero) {
            return Adequacy::ZeroIsSuccessor {
                witness: format!("{} = 0", u.show(i)),
            };
        }
    }
    for (x, &(i, a)) in succs.iter().enumerate() {
        for &(j, b) in &succs[x + 1..] {
            if u.find(i) == u.find(j) && u.find(a) != u.find(b) {
                return Adequacy::NotInjective {
                    witness: format!("{} = {} but not {} = {}", u.show(i), u.show(j), u.show(a), u.show(b)),
                };
            }
        }
    }
    Adequacy::NotRefuted { depth, terms: n }
}

#[cfg(test)]
mod tests {
    use super::super::{nat, parse_equations, parse_formula, Signature};
    use super::*;

    fn predecessor() -> EquationSet {
        parse_equations("p0 : p(0) = 0\nps : p(s(x)) = x", &Signature::default()).unwrap()
    }

    fn step(name: &str, inst: &[(&str, FoTerm)], pos: &[usize], dir: Direction) -> EqStep {
        EqStep {
            equation: name.into(),
            inst: inst.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            position: pos.to_vec(),
            direction: dir,
        }
    }

    // N[t] = ∀X (X(0) → (∀y(..) → X(t))): path to t is 0,1,1,0
    const NAT_ARG: [usize; 4] = [0, 1, 1, 0];

    #[test]
    fn predecessor_examples() {
        let eqs = predecessor();
        let p0 = FoTerm::Fn("p".into(), vec![FoTerm::zero()]);
        let out = eq_step(&nat(p0.clone()), &eqs, &step("p0", &[], &NAT_ARG, Direction::Forward)).unwrap();
        assert_eq!(out, nat(FoTerm::zero()));
        let back = eq_step(&nat(FoTerm::zero()), &eqs, &step("p0", &[], &NAT_ARG, Direction::Backward)).unwrap();
        assert_eq!(back, nat(p0));
        let psx = FoTerm::Fn("p".into(), vec![FoTerm::succ(FoTerm::var("x"))]);
        let out = eq_step(
            &nat(psx),
            &eqs,
            &step("ps", &[("x", FoTerm::var("x"))], &NAT_ARG, Direction::Forward),
        )
        .unwrap();
        assert_eq!(out, nat(FoTerm::var("x")));
    }

    #[test]
    fn step_errors() {
        let eqs = predecessor();
        let n0 = nat(FoTerm::zero());
        assert!(matches!(
            eq_step(&n0, &eqs, &step("p0", &[], &NAT_ARG, Direction::Forward)),
            Err(FormulaError::NoMatch { .. })
        ));
        assert!(matches!(
            eq_step(&n0, &eqs, &step("p0", &[], &[0, 7], Direction::Forward)),
            Err(FormulaError::InvalidPosition(_))
        ));
        assert!(matches!(
            eq_step(&n0, &eqs, &step("nope", &[], &NAT_ARG, Direction::Forward)),
            Err(FormulaError::UnknownEquation(_))
        ));
        let f = parse_formula("!x X(p(s(x)))").unwrap();
        assert!(matches!(
            eq_step(&f, &eqs, &step("ps", &[("x", FoTerm::var("x"))], &[0, 0], Direction::Forward)),
            Err(FormulaError::Captured(_))
        ));
    }

    #[test]
    fn lint_accepts_predecessor_equations() {
        assert!(!adequacy_lint(&predecessor(), 4).is_refuted());
        assert!(!adequacy_lint(&EquationSet::default(), 4).is_refuted());
    }

    #[test]
    fn lint_refutes_collapsing_sets() {
        let bad = parse_equations("z : s(0) = 0", &Signature::default()).unwrap();
        assert!(matches!(adequacy_lint(&bad, 3), Adequacy::ZeroIsSuccessor { .. }));
        let bad = parse_equations("c : s(s(0)) = s(p(0))", &Signature::default()).unwrap();
        assert!(matches!(adequacy_lint(&bad, 3), Adequacy::NotInjective { .. }));
    }
}
