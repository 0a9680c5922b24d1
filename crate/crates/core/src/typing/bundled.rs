//! Hand-built derivations for the combinators in [`crate::builtins`].
//!
//! Every builder takes the context it works in and picks fresh names for
//! the variables it generalises, so the pieces nest freely.

use std::sync::OnceLock;

use crate::formula::{
    instantiate_chain, nat, nat_bot, nat_star, neg, parse_equations, Direction, EqStep,
    EquationSet, FoTerm, Formula, PredAbstraction, Signature, SoKind, Witness,
};

use super::{
    abs, app, ax, eq, fresh_fo, fresh_pred, gen_fo, gen_pred, inst_bot, inst_fo, inst_pred,
    lift_star_to_bot, Context, Derivation, TypingError,
};

type Built = Result<Derivation, TypingError>;

/// Position of `t` in `N[t]`.
pub const NAT_ARG: [usize; 4] = [0, 1, 1, 0];
/// Position of `t` in `¬N[t]`.
pub const NEG_NAT_ARG: [usize; 5] = [0, 0, 1, 1, 0];

/// The equations used to type `T2`, in equation-file syntax.
pub const SUBTRACTION_SOURCE: &str = "\
# truncated subtraction, enough to type T2
m0 : m(u, 0) = u
mm : m(u, u) = 0
ms : s(m(u, s(v))) = m(u, v)
";

pub fn subtraction_equations() -> &'static EquationSet {
    static SET: OnceLock<EquationSet> = OnceLock::new();
    SET.get_or_init(|| {
        parse_equations(SUBTRACTION_SOURCE, &Signature::default())
            .expect("bundled equations parse")
    })
}

fn var(x: &str) -> FoTerm {
    FoTerm::var(x)
}

fn m(a: FoTerm, b: FoTerm) -> FoTerm {
    FoTerm::Fn("m".into(), vec![a, b])
}

fn step(name: &str, inst: &[(&str, FoTerm)], pos: &[usize], direction: Direction) -> EqStep {
    EqStep {
        equation: name.into(),
        inst: inst.iter().map(|(x, t)| (x.to_string(), t.clone())).collect(),
        position: pos.to_vec(),
        direction,
    }
}

/// The three parts `A, B → C` of the body of `N[t]` (or `N*[t]`) with the
/// quantified variable renamed to `x`.
fn nat_parts(whole: Formula, x: &str) -> (Formula, Formula, Formula) {
    let witness = PredAbstraction::new(&["z"], Formula::pred(x, vec![var("z")]));
    let body = instantiate_chain(&whole, &[Witness::Pred(witness)]).expect("N has a ∀X prefix");
    match body {
        Formula::Arrow(a, rest) => match *rest {
            Formula::Arrow(b, c) => (*a, *b, *c),
            _ => unreachable!(),
        },
        _ => unreachable!(),
    }
}

/// `λx x : A → A`.
pub fn identity(ctx: &Context, a: Formula) -> Built {
    abs(ctx, "x", a, ax)
}

/// `n̄ : N[sⁿ0]`.
pub fn numeral(ctx: &Context, n: u64) -> Built {
    let big_x = fresh_pred(ctx, SoKind::Pred, "X");
    let (a, b, _) = nat_parts(nat(FoTerm::numeral(n)), &big_x);
    let d = abs(ctx, "x", a, |c1, x| {
        abs(c1, "f", b, |c2, f| {
            let mut d = ax(c2, x)?;
            for k in 0..n {
                d = app(inst_fo(ax(c2, f)?, FoTerm::numeral(k))?, d)?;
            }
            Ok(d)
        })
    })?;
    gen_pred(d, &big_x)
}

/// `0̄ : N[0]`.
pub fn zero(ctx: &Context) -> Built {
    numeral(ctx, 0)
}

/// `s̄ : ∀y{N[y] → N[sy]}`.
pub fn succ(ctx: &Context) -> Built {
    let y = fresh_fo(ctx, "y", &[]);
    let big_x = fresh_pred(ctx, SoKind::Pred, "X");
    let (a, b, _) = nat_parts(nat(FoTerm::succ(var(&y))), &big_x);
    let d = abs(ctx, "n", nat(var(&y)), |c1, n| {
        let inner = abs(c1, "x", a, |c2, x| {
            abs(c2, "f", b, |c3, f| {
                let witness = PredAbstraction::new(&["z"], Formula::pred(&big_x, vec![var("z")]));
                let nx = app(inst_pred(ax(c3, n)?, witness)?, ax(c3, x)?)?;
                let nxf = app(nx, ax(c3, f)?)?;
                app(inst_fo(ax(c3, f)?, var(&y))?, nxf)
            })
        })?;
        gen_pred(inner, &big_x)
    })?;
    gen_fo(d, &y)
}

/// `θ₀ : N*[0]`.
pub fn theta0(ctx: &Context) -> Built {
    let big_x = fresh_pred(ctx, SoKind::Pred, "X");
    let (a, b, _) = nat_parts(nat_star(FoTerm::zero()), &big_x);
    let x0 = Formula::pred(&big_x, vec![FoTerm::zero()]);
    let d = abs(ctx, "x", a, |c1, x| {
        abs(c1, "f", b, |c2, _| {
            abs(c2, "z", x0, |c3, z| {
                let k = abs(c3, "d", neg(Formula::Bot), |c4, _| ax(c4, z))?;
                app(ax(c3, x)?, app(k, identity(c3, Formula::Bot)?)?)
            })
        })
    })?;
    gen_pred(d, &big_x)
}

/// `δ = λf (f)0̄ : ¬N[0] → ⊥`.
pub fn delta(ctx: &Context) -> Built {
    abs(ctx, "f", neg(nat(FoTerm::zero())), |c, f| app(ax(c, f)?, zero(c)?))
}

/// `G : ∀y{¬¬N[y] → ¬¬N[sy]}`.
pub fn g_combinator(ctx: &Context) -> Built {
    let y = fresh_fo(ctx, "y", &[]);
    let yv = var(&y);
    let d = abs(ctx, "x", neg(neg(nat(yv.clone()))), |c1, a| {
        abs(c1, "y", neg(nat(FoTerm::succ(yv.clone()))), |c2, b| {
            let k = abs(c2, "z", nat(yv.clone()), |c3, z| {
                app(ax(c3, b)?, app(inst_fo(succ(c3)?, yv.clone())?, ax(c3, z)?)?)
            })?;
            app(ax(c2, a)?, k)
        })
    })?;
    gen_fo(d, &y)
}

/// `F : ∀y{¬N[m(x,y)] → ¬N[m(x,sy)]}` for the given `x`.
pub fn f_combinator(ctx: &Context, x: &FoTerm) -> Built {
    let xs: Vec<String> = x.vars().into_iter().collect();
    let avoid: Vec<&str> = xs.iter().map(String::as_str).collect();
    let y = fresh_fo(ctx, "y", &avoid);
    let yv = var(&y);
    let d = abs(ctx, "x", neg(nat(m(x.clone(), yv.clone()))), |c1, a| {
        abs(c1, "y", nat(m(x.clone(), FoTerm::succ(yv.clone()))), |c2, b| {
            let sb = app(inst_fo(succ(c2)?, m(x.clone(), FoTerm::succ(yv.clone())))?, ax(c2, b)?)?;
            let chain = vec![step(
                "ms",
                &[("u", x.clone()), ("v", yv.clone())],
                &NAT_ARG,
                Direction::Forward,
            )];
            app(ax(c2, a)?, eq(sb, subtraction_equations(), chain)?)
        })
    })?;
    gen_fo(d, &y)
}

/// `T1 : ∀x{N*[x] → ¬¬N[x]}`.
pub fn t1_star(ctx: &Context) -> Built {
    let x = fresh_fo(ctx, "x", &[]);
    let d = abs(ctx, "n", nat_star(var(&x)), |c, n| {
        let witness = PredAbstraction::new(&["y"], neg(nat(var("y"))));
        let dn = inst_pred(ax(c, n)?, witness)?;
        app(app(dn, delta(c)?)?, g_combinator(c)?)
    })?;
    gen_fo(d, &x)
}

/// `T2 : ∀x{N*[x] → ¬¬N[x]}`, using [`subtraction_equations`].
pub fn t2_star(ctx: &Context) -> Built {
    let x = fresh_fo(ctx, "x", &[]);
    let xv = var(&x);
    let eqs = subtraction_equations();
    let d = abs(ctx, "n", nat_star(xv.clone()), |c1, n| {
        abs(c1, "f", neg(nat(xv.clone())), |c, f| {
            let witness = PredAbstraction::new(&["y"], nat(m(xv.clone(), var("y"))));
            let dn = inst_pred(ax(c, n)?, witness)?;
            let to_m0 = vec![step("m0", &[("u", xv.clone())], &NEG_NAT_ARG, Direction::Backward)];
            let df = eq(ax(c, f)?, eqs, to_m0)?;
            let looped = app(app(dn, df)?, f_combinator(c, &xv)?)?;
            let to_zero = vec![step("mm", &[("u", xv.clone())], &NEG_NAT_ARG, Direction::Forward)];
            app(eq(looped, eqs, to_zero)?, zero(c)?)
        })
    })?;
    gen_fo(d, &x)
}

fn star(ctx: &Context, i: u8) -> Built {
    match i {
        1 => t1_star(ctx),
        2 => t2_star(ctx),
        _ => Err(TypingError::Shape(format!("storage operator index must be 1 or 2, got {i}"))),
    }
}

/// `Tᵢ : ∀x{N⊥[x] → ¬¬N[x]}`.
pub fn ti_bot(ctx: &Context, i: u8) -> Built {
    lift_star_to_bot(&star(ctx, i)?)
}

/// `(Tᵢ)νf : ⊥` in a context holding `ν : N⊥[x]` and `f : ¬N[x]`.
fn applied(c: &Context, i: u8, v: &str, f: &str, x: &FoTerm) -> Built {
    app(app(inst_fo(ti_bot(c, i)?, x.clone())?, ax(c, v)?)?, ax(c, f)?)
}

fn t_generic(ctx: &Context, i: u8, prime: bool) -> Built {
    let x = fresh_fo(ctx, "x", &[]);
    let xv = var(&x);
    let d = abs(ctx, "v", nat_bot(xv.clone()), |c1, v| {
        abs(c1, "f", neg(nat(xv.clone())), |c, f| {
            let dv = inst_bot(ax(c, v)?, PredAbstraction::new(&["y"], Formula::Bot))?;
            let first = applied(c, i, v, f, &xv)?;
            let y = fresh_fo(c, "y", &[]);
            let second = if prime {
                abs(c, "d", Formula::Bot, |c2, _| applied(c2, i, v, f, &xv))?
            } else {
                identity(c, Formula::Bot)?
            };
            app(app(dv, first)?, gen_fo(second, &y)?)
        })
    })?;
    gen_fo(d, &x)
}

/// `T = λνλf((ν)(Tᵢ)νf)λxx : ∀x{N⊥[x] → ¬¬N[x]}`.
pub fn t_bot(ctx: &Context, i: u8) -> Built {
    t_generic(ctx, i, false)
}

/// `T′ = λνλf((ν)(Tᵢ)νf)λd(Tᵢ)νf : ∀x{N⊥[x] → ¬¬N[x]}`.
pub fn tp_bot(ctx: &Context, i: u8) -> Built {
    t_generic(ctx, i, true)
}

/// A closed bundled derivation.
#[derive(Debug, Clone)]
pub struct BundledDerivation {
    pub name: String,
    pub derivation: Derivation,
    /// Whether checking needs [`subtraction_equations`].
    pub uses_equations: bool,
}

/// Every bundled derivation, in the empty context.
pub fn all() -> Vec<BundledDerivation> {
    let e = Context::new();
    let mut out = Vec::new();
    let mut push = |name: String, d: Built, uses_equations: bool| {
        let derivation = d.unwrap_or_else(|err| panic!("bundled derivation {name}: {err}"));
        out.push(BundledDerivation { name, derivation, uses_equations });
    };
    for n in 0..=5 {
        push(format!("church:{n}"), numeral(&e, n), false);
    }
    push("succ".into(), succ(&e), false);
    push("theta0".into(), theta0(&e), false);
    push("delta".into(), delta(&e), false);
    push("G".into(), g_combinator(&e), false);
    push("T1-star".into(), t1_star(&e), false);
    push("T2-star".into(), t2_star(&e), true);
    push("T1-bot".into(), ti_bot(&e, 1), false);
    push("T2-bot".into(), ti_bot(&e, 2), true);
    push("T:1".into(), t_bot(&e, 1), false);
    push("T:2".into(), t_bot(&e, 2), true);
    push("Tp:1".into(), tp_bot(&e, 1), false);
    push("Tp:2".into(), tp_bot(&e, 2), true);
    out
}

pub fn lookup(name: &str) -> Option<BundledDerivation> {
    all().into_iter().find(|b| b.name == name)
}
