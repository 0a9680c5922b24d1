//! The symbolic storage-operator machine.
//!
//! Starting from `U₁ = (T)νf`, each round head-reduces `Uᵢ` to `Vᵢ` and
//! looks at the head of `Vᵢ`:
//!
//! * `(f)τ` stops the run;
//! * `(ν)a b c̄` continues with `(a)c̄` when `n = 0`, otherwise with
//!   `((b)x)c̄` for a fresh indexed variable `x` standing for `n − 1`;
//! * `(x)d̄` for an indexed variable `x` of level `l` continues with `(a)d̄`
//!   when `l = 0`, otherwise with `((b)x′)d̄` for a fresh `x′` of level
//!   `l − 1`, where `a`, `b` are the ones stored with `x`.
//!
//! A run that ends with `τ ≃β n̄` yields a [`Certificate`].

mod behavior;

use std::collections::BTreeSet;
use std::fmt;

use crate::builtins::numeral_of;
use crate::reduce::{head_reduce, normalize, Status};
use crate::term::{print_folded, Term};

pub use behavior::{
    behavioral_check, behavioral_check_against, pair_behavioral, theta_corpus, BehavioralEntry,
    BehavioralReport, EntryVerdict, PairError, PairReport, PairSample, CORPUS_SEED,
};

/// Name of the variable standing for the stored integer.
pub const NU: &str = "ν";
/// Name of the continuation variable.
pub const F: &str = "f";

/// One indexed variable `x_{l,a,b,c̄}`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexedVar {
    pub symbol: String,
    pub level: u64,
    pub a: Term,
    pub b: Term,
    pub args: Vec<Term>,
    pub used: bool,
}

/// Indexed variables in creation order. Symbols are `x0`, `x1`, … and are
/// never reused.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IndexedVarRegistry {
    vars: Vec<IndexedVar>,
}

impl IndexedVarRegistry {
    fn create(&mut self, level: u64, a: Term, b: Term, args: Vec<Term>) -> String {
        let symbol = format!("x{}", self.vars.len());
        self.vars.push(IndexedVar {
            symbol: symbol.clone(),
            level,
            a,
            b,
            args,
            used: false,
        });
        symbol
    }

    fn position(&self, symbol: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.symbol == symbol)
    }

    pub fn get(&self, symbol: &str) -> Option<&IndexedVar> {
        self.position(symbol).map(|i| &self.vars[i])
    }

    pub fn vars(&self) -> &[IndexedVar] {
        &self.vars
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.vars.iter().map(|v| v.symbol.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepRule {
    NuHead,
    IndexedHead,
    FHeadTerminal,
}

impl StepRule {
    pub fn as_str(self) -> &'static str {
        match self {
            StepRule::NuHead => "nu-head",
            StepRule::IndexedHead => "indexed-head",
            StepRule::FHeadTerminal => "f-head-terminal",
        }
    }
}

/// `U ≻ V` in `h` head steps, and the clause used on `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineStep {
    pub u: Term,
    pub v: Term,
    pub rule: StepRule,
    pub h: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `τ` must normalise to `n̄`.
    Strict,
    /// `τ` must normalise to some numeral.
    Lenient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub operator: Term,
    pub n: u64,
    pub steps: Vec<MachineStep>,
    pub tau: Term,
    pub m: u64,
    pub registry: IndexedVarRegistry,
    pub total_h: u64,
    /// Indexed variables created at a level `≥ n`. Recorded, not rejected.
    pub level_flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    BadHeadShape(String),
    ReusedIndexedVariable(String),
    FuelExhausted,
    TauNotNumeral,
    TauWrongValue { m: u64, n: u64 },
}

impl FailureReason {
    pub fn tag(&self) -> &'static str {
        match self {
            FailureReason::BadHeadShape(_) => "bad-head-shape",
            FailureReason::ReusedIndexedVariable(_) => "reused-indexed-variable",
            FailureReason::FuelExhausted => "fuel-exhausted",
            FailureReason::TauNotNumeral => "tau-not-numeral",
            FailureReason::TauWrongValue { .. } => "tau-wrong-value",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::BadHeadShape(why) => write!(f, "bad-head-shape: {why}"),
            FailureReason::ReusedIndexedVariable(x) => {
                write!(f, "reused-indexed-variable: {x} is the head a second time")
            }
            FailureReason::FuelExhausted => f.write_str("fuel-exhausted"),
            FailureReason::TauNotNumeral => f.write_str("tau-not-numeral"),
            FailureReason::TauWrongValue { m, n } => write!(f, "tau-wrong-value: got {m}, expected {n}"),
        }
    }
}

/// A failed run, with everything recorded up to the failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub n: u64,
    pub reason: FailureReason,
    pub steps: Vec<MachineStep>,
    /// Set when the run reached `(f)τ`.
    pub tau: Option<Term>,
    pub registry: IndexedVarRegistry,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n = {}: {}", self.n, self.reason)
    }
}

struct Run {
    n: u64,
    steps: Vec<MachineStep>,
    registry: IndexedVarRegistry,
    fuel: u64,
}

impl Run {
    fn fail(self, reason: FailureReason, tau: Option<Term>) -> Failure {
        Failure {
            n: self.n,
            reason,
            steps: self.steps,
            tau,
            registry: self.registry,
        }
    }
}

/// Runs the machine on `T` for the integer `n`. `fuel` bounds the total
/// number of head steps and machine rounds, plus the normalisation of `τ`.
pub fn certify(t: &Term, n: u64, fuel: u64, mode: Mode) -> Result<Certificate, Failure> {
    let mut run = Run {
        n,
        steps: Vec::new(),
        registry: IndexedVarRegistry::default(),
        fuel,
    };
    let mut u = Term::apply(t.clone(), [Term::var(NU), Term::var(F)]);
    let tau = loop {
        if run.fuel == 0 {
            return Err(run.fail(FailureReason::FuelExhausted, None));
        }
        run.fuel -= 1;
        let out = head_reduce(&u, run.fuel);
        if out.status == Status::FuelExhausted {
            return Err(run.fail(FailureReason::FuelExhausted, None));
        }
        run.fuel -= out.steps;
        let v = out.result;
        let (binders, head, args) = v.decompose();
        let bad = |why: String| FailureReason::BadHeadShape(why);
        if !binders.is_empty() {
            let reason = bad(format!("head normal form {} starts with λ", print_folded(&v)));
            return Err(run.fail(reason, None));
        }
        let Term::Var(h) = head else { unreachable!("head normal form has a variable head") };
        let args: Vec<Term> = args.into_iter().cloned().collect();
        let (rule, next) = if h == F {
            if args.len() != 1 {
                let reason = bad(format!("f has {} arguments, expected 1", args.len()));
                return Err(run.fail(reason, None));
            }
            (StepRule::FHeadTerminal, None)
        } else if h == NU {
            if args.len() < 2 {
                let reason = bad(format!("ν has {} argument(s), expected at least 2", args.len()));
                return Err(run.fail(reason, None));
            }
            let (a, b, rest) = (args[0].clone(), args[1].clone(), args[2..].to_vec());
            let next = if n == 0 {
                Term::apply(a, rest)
            } else {
                let x = run.registry.create(n - 1, a, b.clone(), rest.clone());
                Term::apply(Term::app(b, Term::var(x)), rest)
            };
            (StepRule::NuHead, Some(next))
        } else if let Some(i) = run.registry.position(h) {
            if run.registry.vars[i].used {
                let reason = FailureReason::ReusedIndexedVariable(h.clone());
                return Err(run.fail(reason, None));
            }
            run.registry.vars[i].used = true;
            let IndexedVar { level, a, b, .. } = run.registry.vars[i].clone();
            let next = if level == 0 {
                Term::apply(a, args.clone())
            } else {
                let x = run.registry.create(level - 1, a, b.clone(), args.clone());
                Term::apply(Term::app(b, Term::var(x)), args.clone())
            };
            (StepRule::IndexedHead, Some(next))
        } else {
            let reason = bad(format!("unexpected head variable {h}"));
            return Err(run.fail(reason, None));
        };
        let tau = (rule == StepRule::FHeadTerminal).then(|| args[0].clone());
        run.steps.push(MachineStep { u, v: v.clone(), rule, h: out.steps });
        match next {
            Some(next) => u = next,
            None => break tau.expect("terminal step has τ"),
        }
    };

    let normal = normalize(&tau, run.fuel);
    if normal.status == Status::FuelExhausted {
        return Err(run.fail(FailureReason::FuelExhausted, Some(tau)));
    }
    let Some(m) = numeral_of(&normal.result) else {
        return Err(run.fail(FailureReason::TauNotNumeral, Some(tau)));
    };
    if mode == Mode::Strict && m != n {
        return Err(run.fail(FailureReason::TauWrongValue { m, n }, Some(tau)));
    }
    let level_flags = run
        .registry
        .vars
        .iter()
        .filter(|x| x.level >= n)
        .map(|x| x.symbol.clone())
        .collect();
    Ok(Certificate {
        operator: t.clone(),
        n,
        total_h: run.steps.iter().map(|s| s.h).sum(),
        steps: run.steps,
        tau,
        m,
        registry: run.registry,
        level_flags,
    })
}

/// Per-`n` results of [`certify`] for `n = 0..=n_max`.
#[derive(Debug, Clone)]
pub struct RangeSummary {
    pub results: Vec<Result<Certificate, Failure>>,
}

impl RangeSummary {
    /// The first failure, if any.
    pub fn first_failure(&self) -> Option<&Failure> {
        self.results.iter().find_map(|r| r.as_ref().err())
    }

    pub fn all_ok(&self) -> bool {
        self.first_failure().is_none()
    }

    pub fn certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.results.iter().filter_map(|r| r.as_ref().ok())
    }
}

pub fn certify_range(t: &Term, n_max: u64, fuel: u64, mode: Mode) -> RangeSummary {
    RangeSummary {
        results: (0..=n_max).map(|n| certify(t, n, fuel, mode)).collect(),
    }
}

/// Re-runs head reduction on every recorded `U` and compares with `V` and `h`.
pub fn replay(cert: &Certificate, fuel: u64) -> bool {
    cert.steps.iter().all(|s| {
        let out = head_reduce(&s.u, fuel);
        out.status != Status::FuelExhausted && out.result == s.v && out.steps == s.h
    })
}

impl fmt::Display for Certificate {
    /// Stable text form: one record per machine step, then the registry.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate")?;
        writeln!(f, "operator {}", print_folded(&self.operator))?;
        writeln!(f, "n {}", self.n)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {} {} h={}", i + 1, s.rule.as_str(), s.h)?;
            writeln!(f, "  U {}", print_folded(&s.u))?;
            writeln!(f, "  V {}", print_folded(&s.v))?;
        }
        writeln!(f, "tau {}", print_folded(&self.tau))?;
        writeln!(f, "m {}", self.m)?;
        writeln!(f, "total-h {}", self.total_h)?;
        writeln!(f, "registry {}", self.registry.len())?;
        for x in self.registry.vars() {
            let flag = if self.level_flags.contains(&x.symbol) { " flagged" } else { "" };
            writeln!(f, "  {} level={} used={}{flag}", x.symbol, x.level, x.used)?;
            writeln!(f, "    a {}", print_folded(&x.a))?;
            writeln!(f, "    b {}", print_folded(&x.b))?;
            for c in &x.args {
                writeln!(f, "    arg {}", print_folded(c))?;
            }
        }
        Ok(())
    }
}
