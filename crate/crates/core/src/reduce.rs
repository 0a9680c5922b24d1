//! Head reduction and leftmost-outermost normalisation with exact step counts.

use crate::term::Term;

/// Step budget used when the caller does not supply one.
pub const DEFAULT_FUEL: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    NormalForm,
    HeadNormalForm,
    FuelExhausted,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::NormalForm => "normal-form-reached",
            Status::HeadNormalForm => "head-normal-form-reached",
            Status::FuelExhausted => "fuel-exhausted",
        }
    }
}

/// Result of a bounded reduction. `steps` counts contracted redexes.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOutcome {
    pub result: Term,
    pub steps: u64,
    pub status: Status,
}

/// Answer of a semi-decision procedure that may run out of fuel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solvability {
    Solvable,
    Unknown,
}

/// Contracts the head redex, if there is one.
pub fn head_step(t: &Term) -> Option<Term> {
    match t {
        Term::Abs(x, body) => head_step(body).map(|b| Term::abs(x.clone(), b)),
        Term::App(..) => {
            let (head, args) = t.spine();
            match head {
                Term::Abs(x, body) => {
                    let contracted = body.substitute_one(x, args[0]);
                    Some(Term::apply(contracted, args[1..].iter().map(|a| (*a).clone())))
                }
                _ => None,
            }
        }
        Term::Var(_) => None,
    }
}

pub fn is_head_normal(t: &Term) -> bool {
    let (_, head, args) = t.decompose();
    !(matches!(head, Term::Abs(..)) && !args.is_empty())
}

/// Head-reduces `t` for at most `fuel` steps.
pub fn head_reduce(t: &Term, fuel: u64) -> ReductionOutcome {
    head_reduce_traced(t, fuel, |_| {})
}

/// [`head_reduce`], calling `visit` on every intermediate term after each step.
pub fn head_reduce_traced(t: &Term, fuel: u64, mut visit: impl FnMut(&Term)) -> ReductionOutcome {
    run(t, fuel, head_step, Status::HeadNormalForm, &mut visit)
}

/// Contracts the leftmost-outermost redex, if there is one.
pub fn normal_step(t: &Term) -> Option<Term> {
    if let Some(next) = head_step(t) {
        return Some(next);
    }
    match t {
        Term::Var(_) => None,
        Term::Abs(x, body) => normal_step(body).map(|b| Term::abs(x.clone(), b)),
        Term::App(..) => {
            let (head, args) = t.spine();
            for (i, a) in args.iter().enumerate() {
                if let Some(reduced) = normal_step(a) {
                    let new_args = args.iter().enumerate().map(|(j, b)| {
                        if i == j {
                            reduced.clone()
                        } else {
                            (*b).clone()
                        }
                    });
                    return Some(Term::apply(head.clone(), new_args));
                }
            }
            None
        }
    }
}

pub fn is_normal(t: &Term) -> bool {
    match t {
        Term::Var(_) => true,
        Term::Abs(_, body) => is_normal(body),
        Term::App(f, a) => !matches!(**f, Term::Abs(..)) && is_normal(f) && is_normal(a),
    }
}

/// Leftmost-outermost reduction to β-normal form.
pub fn normalize(t: &Term, fuel: u64) -> ReductionOutcome {
    normalize_traced(t, fuel, |_| {})
}

pub fn normalize_traced(t: &Term, fuel: u64, mut visit: impl FnMut(&Term)) -> ReductionOutcome {
    run(t, fuel, normal_step, Status::NormalForm, &mut visit)
}

fn run(
    t: &Term,
    fuel: u64,
    step: fn(&Term) -> Option<Term>,
    done: Status,
    visit: &mut dyn FnMut(&Term),
) -> ReductionOutcome {
    let mut current = t.clone();
    let mut steps = 0;
    loop {
        match step(&current) {
            None => {
                return ReductionOutcome {
                    result: current,
                    steps,
                    status: done,
                }
            }
            Some(_) if steps == fuel => {
                return ReductionOutcome {
                    result: current,
                    steps,
                    status: Status::FuelExhausted,
                }
            }
            Some(next) => {
                steps += 1;
                visit(&next);
                current = next;
            }
        }
    }
}

/// Decides `t ≃β u` when both normalise within `fuel` steps each.
pub fn beta_equiv(t: &Term, u: &Term, fuel: u64) -> Verdict {
    let a = normalize(t, fuel);
    if a.status == Status::FuelExhausted {
        return Verdict::Unknown;
    }
    let b = normalize(u, fuel);
    if b.status == Status::FuelExhausted {
        return Verdict::Unknown;
    }
    if a.result == b.result {
        Verdict::Yes
    } else {
        Verdict::No
    }
}

pub fn is_solvable(t: &Term, fuel: u64) -> Solvability {
    match head_reduce(t, fuel).status {
        Status::FuelExhausted => Solvability::Unknown,
        _ => Solvability::Solvable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::term::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn head_step_examples() {
        assert_eq!(head_step(&p(r"(\x x) @church:0")), Some(builtins::church(0)));
        assert_eq!(head_step(&p(r"\x1 (x1) v")), None);
        assert_eq!(head_step(&p(r"\y (\x x) \z z")), Some(p(r"\y \z z")));
    }

    #[test]
    fn head_step_only_touches_the_head() {
        // the redex sits in argument position
        assert_eq!(head_step(&p(r"(x) (\y y) z")), None);
        assert!(is_head_normal(&p(r"(x) (\y y) z")));
    }

    #[test]
    fn omega_exhausts_fuel() {
        let out = head_reduce(&builtins::omega(), 100);
        assert_eq!(out.status, Status::FuelExhausted);
        assert_eq!(out.steps, 100);
        assert_eq!(out.result, builtins::omega());
    }

    #[test]
    fn already_head_normal() {
        let out = head_reduce(&builtins::church(0), DEFAULT_FUEL);
        assert_eq!(out.steps, 0);
        assert_eq!(out.status, Status::HeadNormalForm);
    }

    #[test]
    fn exactly_enough_fuel_is_not_exhaustion() {
        let t = p(r"(\x x) y");
        let out = head_reduce(&t, 1);
        assert_eq!(out.status, Status::HeadNormalForm);
        assert_eq!(out.steps, 1);
    }

    #[test]
    fn normalize_examples() {
        let one = normalize(&p("(@succ) @church:0"), DEFAULT_FUEL);
        assert_eq!(one.status, Status::NormalForm);
        assert_eq!(one.result, p(r"\x \f (f) x"));
        let two = normalize(&builtins::church(2), DEFAULT_FUEL);
        assert_eq!(two.steps, 0);
        let discard = normalize(&p(r"(\d @church:0) \x x"), DEFAULT_FUEL);
        assert_eq!(discard.result, builtins::church(0));
        assert_eq!(discard.steps, 1);
    }

    #[test]
    fn beta_equiv_examples() {
        assert_eq!(
            beta_equiv(&p("(@succ) @church:0"), &builtins::church(1), DEFAULT_FUEL),
            Verdict::Yes
        );
        assert_eq!(
            beta_equiv(&builtins::church(0), &builtins::church(1), DEFAULT_FUEL),
            Verdict::No
        );
        assert_eq!(
            beta_equiv(&builtins::omega(), &builtins::church(0), 100),
            Verdict::Unknown
        );
    }

    #[test]
    fn solvability() {
        assert_eq!(is_solvable(&p(r"\x x"), 10), Solvability::Solvable);
        assert_eq!(is_solvable(&builtins::omega(), 10_000), Solvability::Unknown);
        assert_eq!(
            is_solvable(&p("(@T2 @church:2) f"), DEFAULT_FUEL),
            Solvability::Solvable
        );
    }

    #[test]
    fn normal_forms_have_no_redex() {
        for t in [builtins::church(3), builtins::succ(), builtins::delta()] {
            assert!(is_normal(&t));
            assert!(normal_step(&t).is_none());
        }
        assert!(!is_normal(&builtins::theta0()));
        // (s̄)z inside G is a redex
        assert!(!is_normal(&builtins::t1()));
    }

    #[test]
    fn head_step_is_deterministic() {
        let t = p("(@T1 @church:3) f");
        let mut cur = t;
        while let Some(a) = head_step(&cur) {
            let b = head_step(&cur).unwrap();
            assert_eq!(a, b);
            cur = a;
        }
    }
}
