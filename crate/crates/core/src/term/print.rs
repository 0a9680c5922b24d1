//! Printer producing text that [`parse_term`](super::parse_term) reads back.

use super::Term;
use crate::builtins;

/// Prints a term in the parenthesised application syntax.
pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    Printer { fold: false }.top(t, &mut out);
    out
}

/// Like [`print_term`] but closed subterms that are α-equal to a builtin are
/// shown as `@name`, so `(f)(s̄)(s̄)0̄` prints as `(f) (@succ) (@succ) @church:0`.
pub fn print_folded(t: &Term) -> String {
    let mut out = String::new();
    Printer { fold: true }.top(t, &mut out);
    out
}

struct Printer {
    fold: bool,
}

impl Printer {
    fn atom(&self, t: &Term) -> Option<String> {
        match t {
            Term::Var(x) => Some(x.clone()),
            _ if self.fold => builtins::fold_name(t).map(|n| format!("@{n}")),
            _ => None,
        }
    }

    fn top(&self, t: &Term, out: &mut String) {
        if let Some(a) = self.atom(t) {
            out.push_str(&a);
            return;
        }
        match t {
            Term::Var(_) => unreachable!(),
            Term::Abs(x, body) => {
                out.push('\\');
                out.push_str(x);
                out.push(' ');
                self.top(body, out);
            }
            Term::App(..) => self.application(t, out),
        }
    }

    fn application(&self, t: &Term, out: &mut String) {
        // Folded builtins may sit inside the spine; collect it manually.
        let mut args = Vec::new();
        let mut head = t;
        while let Term::App(f, a) = head {
            if self.atom(head).is_some() {
                break;
            }
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        let k = args.len();
        // Only the last argument may be a compound term; earlier compound
        // arguments force the prefix into its own parentheses.
        let split = args[..k - 1]
            .iter()
            .rposition(|a| self.atom(a).is_none());
        out.push('(');
        match split {
            Some(j) => {
                let prefix = Term::apply(head.clone(), args[..=j].iter().map(|a| (*a).clone()));
                self.top(&prefix, out);
                out.push(')');
                for a in &args[j + 1..] {
                    out.push(' ');
                    self.top(a, out);
                }
            }
            None => {
                self.top(head, out);
                out.push(')');
                for a in &args {
                    out.push(' ');
                    self.top(a, out);
                }
            }
        }
    }
}
