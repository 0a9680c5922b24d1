//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use storop::builtins::{church, numeral_of, succ_power};
use storop::formula::{
    bot_transform, display_formula, forget_first_order, godel_star, nat, nat_bot, neg, arrow,
    EquationSet, FoTerm, Formula,
};
use storop::machine::{
    behavioral_check, behavioral_check_against, certify, certify_range, theta_corpus, EntryVerdict,
    FailureReason, Mode,
};
use storop::reduce::{beta_equiv, head_reduce, normalize, Status, Verdict, DEFAULT_FUEL};
use storop::term::{parse_term, print_folded, Term};
use storop::typing::bundled::{self, subtraction_equations};
use storop::typing::mutate::mutations;
use storop::typing::{check_derivation, lift_star_to_bot, Context};

type Outcome = Result<String, String>;

fn p(s: &str) -> Term {
    parse_term(s).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn positive_operators() -> Vec<(&'static str, Term)> {
    ["@T1", "@T2", "@T:1", "@T:2", "@Tp:1", "@Tp:2"]
        .into_iter()
        .map(|s| (s, p(s)))
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for (name, t) in positive_operators() {
        let summary = certify_range(&t, 10, DEFAULT_FUEL, Mode::Strict);
        if let Some(f) = summary.first_failure() {
            return Err(format!("{name}: {f}"));
        }
        for cert in summary.certificates() {
            count += 1;
            if name == "@T1" || name == "@T2" {
                ensure(cert.tau == succ_power(cert.n), || {
                    format!("{name} at {}: τ = {}", cert.n, print_folded(&cert.tau))
                })?;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2}s"))?;
    Ok(format!("{count} certificates, τ = (s̄)ⁿ0̄ for T1/T2, {secs:.2}s"))
}

fn criterion_2() -> Outcome {
    let cases = [
        (r"\v \f (f) @church:0", 1, "tau-wrong-value"),
        (r"\v \f (v) f", 0, "bad-head-shape"),
        (r"\v \f @omega", 0, "fuel-exhausted"),
    ];
    for (src, n, tag) in cases {
        match certify(&p(src), n, DEFAULT_FUEL, Mode::Strict) {
            Ok(_) => return Err(format!("{src} certified at {n}")),
            Err(f) => ensure(f.reason.tag() == tag, || format!("{src}: {}", f.reason))?,
        }
    }
    let zero = certify(&p(cases[0].0), 1, DEFAULT_FUEL, Mode::Strict).unwrap_err();
    ensure(zero.reason == FailureReason::TauWrongValue { m: 0, n: 1 }, || zero.to_string())?;
    Ok("tau-wrong-value, bad-head-shape, fuel-exhausted".into())
}

fn criterion_3() -> Outcome {
    let mut runs = 0;
    for (name, t) in positive_operators() {
        for n in 0..=10 {
            let cert = certify(&t, n, DEFAULT_FUEL, Mode::Strict).map_err(|e| format!("{name}: {e}"))?;
            let report = behavioral_check(&t, &cert, &theta_corpus(n, 4), DEFAULT_FUEL);
            ensure(report.entries.len() == 4, || format!("{name} at {n}: short corpus"))?;
            for e in &report.entries {
                runs += 1;
                ensure(e.verdict == EntryVerdict::Ok, || {
                    format!("{name} at {n} on {}: {:?}", print_folded(&e.theta), e.verdict)
                })?;
                let Some(Term::App(_, arg)) = &e.hnf else {
                    return Err(format!("{name} at {n}: no (f)t"));
                };
                let instance = cert.tau.substitute(e.sigma.as_ref().unwrap());
                ensure(instance == **arg, || format!("{name} at {n}: σ(τ) differs from t"))?;
            }
        }
    }
    for (src, n) in [(r"\v \f (f) @church:0", 1), (r"\v \f (v) f", 0), (r"\v \f @omega", 0)] {
        let t = p(src);
        let f = certify(&t, n, 2_000, Mode::Strict).unwrap_err();
        let r = behavioral_check_against(&t, n, f.tau.as_ref(), &f.registry.symbols(), &theta_corpus(n, 4), 2_000);
        ensure(!r.all_ok(), || format!("{src} passes behaviourally"))?;
    }
    Ok(format!("{runs} runs of (T)θf agree with their certificates; negatives fail"))
}

fn criterion_4() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(21);
    for i in 0..200 {
        let (u, v, k) = common::head_pair(&mut r);
        let sigma: BTreeMap<String, Term> =
            u.free_vars().into_iter().map(|x| (x, common::term(&mut r, 3))).collect();
        let out = head_reduce(&u.substitute(&sigma), k);
        ensure(out.steps == k && out.result == v.substitute(&sigma), || {
            format!("part 1, instance {i}: {}", print_folded(&u))
        })?;
    }
    let mut done = 0;
    let mut tries = 0;
    while done < 200 {
        tries += 1;
        if tries > 5_000 {
            return Err(format!("part 2: only {done} instances terminated"));
        }
        let (u, v, k) = common::head_pair(&mut r);
        let args: Vec<Term> = (0..r.gen_range(0..=3)).map(|_| common::term(&mut r, 3)).collect();
        let from_v = head_reduce(&Term::apply(v, args.clone()), 5_000);
        if from_v.status == Status::FuelExhausted {
            continue;
        }
        let from_u = head_reduce(&Term::apply(u.clone(), args), 5_000 + k);
        ensure(from_u.result == from_v.result && from_u.steps == from_v.steps + k, || {
            format!("part 2: {}", print_folded(&u))
        })?;
        done += 1;
    }
    Ok(format!("200 + 200 instances, exact step counts ({tries} drawn for part 2)"))
}

fn eqs_for(b: &bundled::BundledDerivation) -> EquationSet {
    if b.uses_equations {
        subtraction_equations().clone()
    } else {
        EquationSet::default()
    }
}

fn criterion_5() -> Outcome {
    let all = bundled::all();
    let (mut total, mut killed) = (0, 0);
    for b in &all {
        let eqs = eqs_for(b);
        let report = check_derivation(&b.derivation, &eqs);
        ensure(report.is_ok(), || format!("{}: {report}", b.name))?;
        for m in mutations(&b.derivation) {
            total += 1;
            let r = check_derivation(&m.derivation, &eqs);
            if !r.is_ok() && r.failure_path.starts_with(&m.path) {
                killed += 1;
            }
        }
    }
    ensure(killed == total, || format!("{killed}/{total} mutations killed"))?;
    Ok(format!("{} derivations check, {killed}/{total} mutations killed", all.len()))
}

fn storage_type(premise: Formula) -> Formula {
    let x = FoTerm::var("x");
    Formula::ForallFo("x".into(), Box::new(arrow(premise, neg(neg(nat(x))))))
}

fn criterion_6() -> Outcome {
    for (name, star) in [("T1", bundled::t1_star(&Context::new())), ("T2", bundled::t2_star(&Context::new()))] {
        let star = star.map_err(|e| format!("{name}: {e}"))?;
        let lifted = lift_star_to_bot(&star).map_err(|e| format!("{name}: {e}"))?;
        let report = check_derivation(&lifted, subtraction_equations());
        ensure(report.is_ok(), || format!("{name}: {report}"))?;
        ensure(lifted.ty == storage_type(nat_bot(FoTerm::var("x"))), || {
            format!("{name}: concluded {}", display_formula(&lifted.ty))
        })?;
        ensure(lifted.term == star.term, || format!("{name}: subject changed"))?;
    }
    Ok("T1 and T2 lifted to ∀x{N⊥[x] → ¬¬N[x]} and checked".into())
}

const NAT_STAR_TEX: &str = r"\forall X \{ \neg X(0), \forall y(\neg X(y) \rightarrow \neg X(sy)) \rightarrow \neg X(x) \}";
const NAT_BOT_TEX: &str = r"\forall X_\perp \{X_\perp(0), \forall y (X_\perp(y) \rightarrow X_\perp(sy)) \rightarrow X_\perp(x)\}";
const TRACE_TEX: &str = r"\forall X \{X, (X \rightarrow X) \rightarrow X\}";

fn criterion_7() -> Outcome {
    let n = nat(FoTerm::var("x"));
    let shown = |f: &Formula| common::squash(&display_formula(f));
    let star = godel_star(&n).map_err(|e| e.to_string())?;
    ensure(shown(&star) == common::tex_to_unicode(NAT_STAR_TEX), || display_formula(&star))?;
    let bot = bot_transform(&n).map_err(|e| e.to_string())?;
    ensure(shown(&bot) == common::tex_to_unicode(NAT_BOT_TEX), || display_formula(&bot))?;
    let trace = forget_first_order(&n);
    ensure(shown(&trace) == common::tex_to_unicode(TRACE_TEX), || display_formula(&trace))?;
    let mut r = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let a = common::formula(&mut r, 4);
        let ok = forget_first_order(&godel_star(&a).unwrap()) == godel_star(&forget_first_order(&a)).unwrap()
            && forget_first_order(&bot_transform(&a).unwrap()) == bot_transform(&forget_first_order(&a)).unwrap();
        ensure(ok, || format!("formula {i}: {}", display_formula(&a)))?;
    }
    Ok("N*[x], N⊥[x] and N displays match; both squares commute on 100 formulas".into())
}

fn near_misses() -> Vec<Term> {
    vec![
        p(r"\x \f (f) (f) f"),
        p(r"\f \x (f) (f) x"),
        p(r"\x \x x"),
        p(r"\x \f (x) (f) x"),
        p(r"\x \f \g (f) x"),
        p(r"\x (x) x"),
        p(r"\x \f (f) (g) x"),
    ]
}

fn criterion_8() -> Outcome {
    for n in 0..=200 {
        ensure(numeral_of(&church(n)) == Some(n), || format!("church({n})"))?;
    }
    let mut r = ChaCha8Rng::seed_from_u64(8);
    let mut rejected = 0;
    for t in near_misses() {
        ensure(numeral_of(&t).is_none() && !common::is_numeral_by_comparison(&t), || print_folded(&t))?;
        rejected += 1;
    }
    let mut tries = 0;
    while rejected < 50 {
        tries += 1;
        if tries > 10_000 {
            return Err(format!("only {rejected} samples"));
        }
        let out = normalize(&common::term(&mut r, 6), 2_000);
        if out.status != Status::NormalForm || common::is_numeral_by_comparison(&out.result) {
            continue;
        }
        ensure(numeral_of(&out.result).is_none(), || print_folded(&out.result))?;
        rejected += 1;
    }
    Ok("church(0..=200) recognised; 50 non-numeral normal terms rejected".into())
}

fn criterion_9() -> Outcome {
    let all = bundled::all();
    for b in &all {
        let out = normalize(&b.derivation.term, DEFAULT_FUEL);
        ensure(out.status == Status::NormalForm, || format!("{} did not normalise", b.name))?;
    }
    Ok(format!("{} typed terms normalise within {DEFAULT_FUEL} steps", all.len()))
}

fn criterion_10() -> Outcome {
    let d = bundled::theta0(&Context::new()).map_err(|e| e.to_string())?;
    let report = check_derivation(&d, &EquationSet::default());
    ensure(report.is_ok(), || report.to_string())?;
    let theta0 = p("@theta0");
    ensure(beta_equiv(&theta0, &church(0), DEFAULT_FUEL) == Verdict::No, || "θ₀ ≃β 0̄".into())?;
    let out = head_reduce(&Term::apply(p("@T2"), [theta0, Term::var("f")]), DEFAULT_FUEL);
    let text = format!("{}\nsteps: {}\nstatus: {}\n", print_folded(&out.result), out.steps, out.status.as_str());
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("golden/t2_theta0.txt");
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
    }
    let golden = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    ensure(golden == text, || format!("head normal form changed:\n{text}"))?;
    Ok(format!("θ₀ : N*[0] checks, θ₀ ≄β 0̄, (T2)θ₀f ≻ {}", print_folded(&out.result)))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("storage certification, positive", criterion_1),
        ("storage certification, negative", criterion_2),
        ("behavioural cross-check", criterion_3),
        ("head-step counts under substitution and application", criterion_4),
        ("bundled derivations and mutation kill rate", criterion_5),
        ("lifting N* derivations to N⊥", criterion_6),
        ("translations", criterion_7),
        ("numeral recognition", criterion_8),
        ("strong normalisation smoke test", criterion_9),
        ("θ₀ regression", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
