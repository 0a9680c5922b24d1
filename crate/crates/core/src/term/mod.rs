//! Untyped λ-terms with named variables.
//!
//! Terms are compared up to α-equivalence: `PartialEq` on [`Term`] ignores
//! the names of bound variables. Substitution is simultaneous and never
//! captures.

mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use parse::{parse_term, ParseError};
pub use print::{print_folded, print_term};

/// A λ-term. Application is written `(t)u`, Krivine style.
#[derive(Clone, Debug)]
pub enum Term {
    Var(String),
    Abs(String, Box<Term>),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn abs(binder: impl Into<String>, body: Term) -> Term {
        Term::Abs(binder.into(), Box::new(body))
    }

    pub fn app(function: Term, argument: Term) -> Term {
        Term::App(Box::new(function), Box::new(argument))
    }

    /// `(head)a₁…aₙ`.
    pub fn apply<I: IntoIterator<Item = Term>>(head: Term, args: I) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    /// `λx₁…λxₙ body`.
    pub fn abs_many<S: AsRef<str>>(binders: &[S], body: Term) -> Term {
        binders
            .iter()
            .rev()
            .fold(body, |acc, b| Term::abs(b.as_ref(), acc))
    }

    /// Splits `λx̄.(h)ā` into binders, head and arguments.
    pub fn decompose(&self) -> (Vec<&str>, &Term, Vec<&Term>) {
        let mut binders = Vec::new();
        let mut t = self;
        while let Term::Abs(x, body) = t {
            binders.push(x.as_str());
            t = body;
        }
        let (head, args) = t.spine();
        (binders, head, args)
    }

    /// Splits an application `(h)a₁…aₙ` into `h` and `[a₁,…,aₙ]`.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, a) = t {
            args.push(a.as_ref());
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect_free(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_free(&self, name: &str) -> bool {
        match self {
            Term::Var(x) => x == name,
            Term::Abs(x, body) => x != name && body.is_free(name),
            Term::App(f, a) => f.is_free(name) || a.is_free(name),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Abs(_, body) => 1 + body.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    pub fn alpha_eq(&self, other: &Term) -> bool {
        alpha_eq_in(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// Simultaneous capture-avoiding substitution.
    pub fn substitute(&self, bindings: &BTreeMap<String, Term>) -> Term {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut avoid = BTreeSet::new();
        for (k, v) in bindings {
            avoid.insert(k.clone());
            avoid.extend(v.free_vars());
        }
        subst_in(self, bindings, &avoid)
    }

    /// `self[value/name]`.
    pub fn substitute_one(&self, name: &str, value: &Term) -> Term {
        let mut m = BTreeMap::new();
        m.insert(name.to_string(), value.clone());
        self.substitute(&m)
    }

    /// Renames bound variables to a canonical scheme so that α-equal terms
    /// become syntactically identical.
    pub fn canonical(&self) -> Term {
        let free = self.free_vars();
        let mut prefix = String::from("_b");
        while free.iter().any(|v| v.starts_with(&prefix)) {
            prefix.insert(0, '_');
        }
        canon_in(self, &prefix, &mut Vec::new())
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for Term {}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

fn collect_free(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match t {
        Term::Var(x) => {
            if !bound.iter().any(|b| b == x) {
                out.insert(x.clone());
            }
        }
        Term::Abs(x, body) => {
            bound.push(x.clone());
            collect_free(body, bound, out);
            bound.pop();
        }
        Term::App(f, a) => {
            collect_free(f, bound, out);
            collect_free(a, bound, out);
        }
    }
}

fn alpha_eq_in<'a>(
    s: &'a Term,
    t: &'a Term,
    left: &mut Vec<&'a str>,
    right: &mut Vec<&'a str>,
) -> bool {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) => {
            let i = left.iter().rposition(|b| *b == x);
            let j = right.iter().rposition(|b| *b == y);
            match (i, j) {
                (None, None) => x == y,
                (Some(i), Some(j)) => i == j,
                _ => false,
            }
        }
        (Term::Abs(x, b1), Term::Abs(y, b2)) => {
            left.push(x);
            right.push(y);
            let r = alpha_eq_in(b1, b2, left, right);
            left.pop();
            right.pop();
            r
        }
        (Term::App(f1, a1), Term::App(f2, a2)) => {
            alpha_eq_in(f1, f2, left, right) && alpha_eq_in(a1, a2, left, right)
        }
        _ => false,
    }
}

/// Picks a name derived from `base` that is not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|c| !avoid.contains(c))
        .expect("unbounded supply of names")
}

fn subst_in(t: &Term, bindings: &BTreeMap<String, Term>, avoid: &BTreeSet<String>) -> Term {
    match t {
        Term::Var(x) => bindings.get(x).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, a) => Term::app(subst_in(f, bindings, avoid), subst_in(a, bindings, avoid)),
        Term::Abs(x, body) => {
            let mut inner: BTreeMap<String, Term> = bindings
                .iter()
                .filter(|(k, _)| *k != x && body.is_free(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect();
            if inner.is_empty() {
                return t.clone();
            }
            let captures = inner.values().any(|v| v.is_free(x));
            if captures {
                let mut taken = avoid.clone();
                taken.extend(body.free_vars());
                let y = fresh_name(x, &taken);
                inner.insert(x.clone(), Term::var(y.clone()));
                let mut avoid = avoid.clone();
                avoid.insert(y.clone());
                Term::abs(y, subst_in(body, &inner, &avoid))
            } else {
                Term::abs(x.clone(), subst_in(body, &inner, avoid))
            }
        }
    }
}

fn canon_in(t: &Term, prefix: &str, bound: &mut Vec<(String, String)>) -> Term {
    match t {
        Term::Var(x) => match bound.iter().rev().find(|(b, _)| b == x) {
            Some((_, c)) => Term::var(c.clone()),
            None => t.clone(),
        },
        Term::Abs(x, body) => {
            let c = format!("{prefix}{}", bound.len());
            bound.push((x.clone(), c.clone()));
            let b = canon_in(body, prefix, bound);
            bound.pop();
            Term::abs(c, b)
        }
        Term::App(f, a) => Term::app(canon_in(f, prefix, bound), canon_in(a, prefix, bound)),
    }
}
