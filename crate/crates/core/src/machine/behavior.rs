//! Behavioural cross-checks: running `(T)θf` on concrete β-representations.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::builtins::{church, numeral_of, succ};
use crate::matching::{anti_unify, match_holes, Substitution};
use crate::reduce::{beta_equiv, head_reduce, normalize, Status, Verdict};
use crate::term::Term;

use super::{Certificate, F};

/// Seed for [`theta_corpus`].
pub const CORPUS_SEED: u64 = 0x5707_0b5e;

fn identity() -> Term {
    Term::abs("z", Term::var("z"))
}

/// `λxλf (f)ⁿ u`.
fn church_over(n: u64, base: Term) -> Term {
    let mut body = base;
    for _ in 0..n {
        body = Term::app(Term::var("f"), body);
    }
    Term::abs("x", Term::abs("f", body))
}

fn candidates(n: u64) -> Vec<Term> {
    let mut out = Vec::new();
    for k in 1..n {
        let mut t = church(n - k);
        for _ in 0..k {
            t = Term::app(succ(), t);
        }
        out.push(t);
    }
    out.push(Term::app(identity(), church(n)));
    out.push(church_over(n, Term::app(identity(), Term::var("x"))));
    let mut g = Term::var("x");
    for _ in 0..n {
        g = Term::app(Term::var("g"), g);
    }
    out.push(Term::abs(
        "x",
        Term::abs("f", Term::app(Term::abs("g", g), Term::var("f"))),
    ));
    out.push(Term::app(Term::app(identity(), succ()), church(n.saturating_sub(1))));
    out
}

/// Closed terms β-equivalent to `n̄`: `n̄` itself, then `(s̄)ⁿ0̄`, then a
/// seeded selection of other β-expansions. Every member is verified.
pub fn theta_corpus(n: u64, variant_count: usize) -> Vec<Term> {
    let target = church(n);
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ n);
    let mut extra = candidates(n);
    extra.shuffle(&mut rng);
    let mut first = vec![target.clone()];
    if n > 0 {
        first.push(crate::builtins::succ_power(n));
    }
    let mut out: Vec<Term> = Vec::new();
    for t in first.into_iter().chain(extra) {
        if out.len() == variant_count.max(1) {
            break;
        }
        if out.contains(&t) {
            continue;
        }
        if beta_equiv(&t, &target, crate::reduce::DEFAULT_FUEL) == Verdict::Yes {
            out.push(t);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub enum EntryVerdict {
    Ok,
    FuelExhausted,
    /// The head normal form is not `(f)t`.
    NotFApplied,
    /// `t` is not an instance of `τ`.
    NoMatch,
    /// `τ` (or `t` when no `τ` is given) does not represent `n`.
    WrongValue(Option<u64>),
}

#[derive(Debug, Clone)]
pub struct BehavioralEntry {
    pub theta: Term,
    /// Whether `θ ≃β n̄`; entries with `No` fall outside the definition.
    pub represents_n: Verdict,
    pub hnf: Option<Term>,
    pub sigma: Option<Substitution>,
    pub verdict: EntryVerdict,
}

#[derive(Debug, Clone)]
pub struct BehavioralReport {
    pub n: u64,
    pub entries: Vec<BehavioralEntry>,
}

impl BehavioralReport {
    pub fn all_ok(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == EntryVerdict::Ok)
    }
}

/// Checks `(T)θf ≻ (f)σ(τ)` for every `θ`, with the certificate's registry
/// symbols as the holes of `τ`.
pub fn behavioral_check(t: &Term, cert: &Certificate, thetas: &[Term], fuel: u64) -> BehavioralReport {
    behavioral_check_against(t, cert.n, Some(&cert.tau), &cert.registry.symbols(), thetas, fuel)
}

fn value(t: &Term, fuel: u64) -> Option<u64> {
    let out = normalize(t, fuel);
    if out.status == Status::FuelExhausted {
        return None;
    }
    numeral_of(&out.result)
}

/// [`behavioral_check`] from raw data, for runs that did not produce a
/// certificate. Without `τ` each entry only requires `(f)t` with `t ≃β n̄`.
pub fn behavioral_check_against(
    t: &Term,
    n: u64,
    tau: Option<&Term>,
    holes: &BTreeSet<String>,
    thetas: &[Term],
    fuel: u64,
) -> BehavioralReport {
    let tau_value = tau.map(|tau| value(tau, fuel));
    let entries = thetas
        .iter()
        .map(|theta| {
            let mut entry = BehavioralEntry {
                theta: theta.clone(),
                represents_n: beta_equiv(theta, &church(n), fuel),
                hnf: None,
                sigma: None,
                verdict: EntryVerdict::FuelExhausted,
            };
            let out = head_reduce(&Term::apply(t.clone(), [theta.clone(), Term::var(F)]), fuel);
            if out.status == Status::FuelExhausted {
                return entry;
            }
            let hnf = out.result;
            let (binders, head, args) = hnf.decompose();
            let arg = match (binders.is_empty(), head, args.as_slice()) {
                (true, Term::Var(h), [arg]) if h == F => (*arg).clone(),
                _ => {
                    entry.verdict = EntryVerdict::NotFApplied;
                    entry.hnf = Some(hnf.clone());
                    return entry;
                }
            };
            entry.hnf = Some(hnf.clone());
            entry.verdict = match (tau, tau_value) {
                (Some(tau), Some(tv)) => match match_holes(tau, holes, &arg) {
                    None => EntryVerdict::NoMatch,
                    Some(sigma) => {
                        entry.sigma = Some(sigma);
                        if tv == Some(n) {
                            EntryVerdict::Ok
                        } else {
                            EntryVerdict::WrongValue(tv)
                        }
                    }
                },
                _ => match value(&arg, fuel) {
                    Some(m) if m == n => EntryVerdict::Ok,
                    other => EntryVerdict::WrongValue(other),
                },
            };
            entry
        })
        .collect();
    BehavioralReport { n, entries }
}

/// A term and β-equivalent variants of it to feed to the operator.
#[derive(Debug, Clone)]
pub struct PairSample {
    pub term: Term,
    pub variants: Vec<Term>,
}

#[derive(Debug, Clone)]
pub struct PairEntry {
    /// Anti-unification of the arguments `u` in `(T)vf ≻ (f)u`.
    pub tau: Term,
    pub holes: BTreeSet<String>,
    /// Normal form of `tau`; closed on success.
    pub normal: Term,
    /// `σ` with `σ(tau) = u`, one per variant.
    pub sigmas: Vec<Substitution>,
}

#[derive(Debug, Clone)]
pub struct PairReport {
    pub entries: Vec<PairEntry>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PairError {
    #[error("sample {0} has no variants")]
    EmptyVariants(usize),
    #[error("variant {variant} of sample {sample} is not β-equivalent to it")]
    NotEquivalent { sample: usize, variant: usize },
    #[error("fuel exhausted on variant {variant} of sample {sample}")]
    FuelExhausted { sample: usize, variant: usize },
    #[error("variant {variant} of sample {sample} does not reduce to (f)u")]
    NotFApplied { sample: usize, variant: usize },
    #[error("sample {sample}: τ does not normalise to a closed term; the operator passes its argument on unevaluated")]
    NotClosed { sample: usize, tau: Term },
}

/// For each sample, runs `(T)vf` on every variant `v`, anti-unifies the
/// arguments of `f` into `τ` and requires the normal form of `τ` to be closed.
pub fn pair_behavioral(t: &Term, samples: &[PairSample], fuel: u64) -> Result<PairReport, PairError> {
    let mut entries = Vec::new();
    for (si, s) in samples.iter().enumerate() {
        if s.variants.is_empty() {
            return Err(PairError::EmptyVariants(si));
        }
        let mut outputs = Vec::new();
        for (vi, v) in s.variants.iter().enumerate() {
            if beta_equiv(v, &s.term, fuel) != Verdict::Yes {
                return Err(PairError::NotEquivalent { sample: si, variant: vi });
            }
            let out = head_reduce(&Term::apply(t.clone(), [v.clone(), Term::var(F)]), fuel);
            if out.status == Status::FuelExhausted {
                return Err(PairError::FuelExhausted { sample: si, variant: vi });
            }
            let (binders, head, args) = out.result.decompose();
            match (binders.is_empty(), head, args.as_slice()) {
                (true, Term::Var(h), [u]) if h == F => outputs.push((*u).clone()),
                _ => return Err(PairError::NotFApplied { sample: si, variant: vi }),
            }
        }
        let au = anti_unify(&outputs);
        let normal = normalize(&au.pattern, fuel);
        if normal.status == Status::FuelExhausted || !normal.result.is_closed() {
            return Err(PairError::NotClosed { sample: si, tau: au.pattern });
        }
        let sigmas = outputs
            .iter()
            .map(|u| match_holes(&au.pattern, &au.holes, u).expect("anti-unifier generalises its inputs"))
            .collect();
        entries.push(PairEntry {
            tau: au.pattern,
            holes: au.holes,
            normal: normal.result,
            sigmas,
        });
    }
    Ok(PairReport { entries })
}
