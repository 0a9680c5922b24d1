mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use storop::builtins::numeral_of;
use storop::formula::{
    bot_transform, display_formula, eq_step, forget_first_order, godel_star, parse_equations,
    parse_formula, print_formula, Direction, EqStep, FoTerm, Formula, Signature,
};
use storop::reduce::{head_reduce, head_step, normalize, Status};
use storop::term::Term;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn substitution_preserves_head_step_counts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (u, v, k) = common::head_pair(&mut r);
        let sigma: BTreeMap<String, Term> = u
            .free_vars()
            .into_iter()
            .map(|x| (x, common::term(&mut r, 3)))
            .collect();
        let out = head_reduce(&u.substitute(&sigma), k);
        prop_assert_eq!(out.steps, k);
        prop_assert_eq!(out.result, v.substitute(&sigma));
    }

    #[test]
    fn arguments_add_head_steps(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (u, v, k) = common::head_pair(&mut r);
        let args: Vec<Term> = (0..rand::Rng::gen_range(&mut r, 0..=3)).map(|_| common::term(&mut r, 3)).collect();
        let from_v = head_reduce(&Term::apply(v, args.clone()), 5_000);
        prop_assume!(from_v.status != Status::FuelExhausted);
        let from_u = head_reduce(&Term::apply(u, args), 5_000 + k);
        prop_assert_eq!(from_u.result, from_v.result);
        prop_assert_eq!(from_u.steps, from_v.steps + k);
    }

    #[test]
    fn head_step_is_deterministic(seed in any::<u64>()) {
        let t = common::term(&mut rng(seed), 6);
        prop_assert_eq!(head_step(&t), head_step(&t));
    }

    #[test]
    fn numeral_of_agrees_with_comparison(seed in any::<u64>()) {
        let t = common::term(&mut rng(seed), 6);
        let n = normalize(&t, 2_000);
        prop_assume!(n.status == Status::NormalForm);
        prop_assert_eq!(numeral_of(&n.result).is_some(), common::is_numeral_by_comparison(&n.result));
    }

    #[test]
    fn forgetting_commutes_with_translations(seed in any::<u64>()) {
        let a = common::formula(&mut rng(seed), 4);
        let star_then = forget_first_order(&godel_star(&a).unwrap());
        prop_assert_eq!(star_then, godel_star(&forget_first_order(&a)).unwrap());
        let bot_then = forget_first_order(&bot_transform(&a).unwrap());
        prop_assert_eq!(bot_then, bot_transform(&forget_first_order(&a)).unwrap());
    }

    #[test]
    fn formulas_roundtrip_through_both_printers(seed in any::<u64>()) {
        let a = common::formula(&mut rng(seed), 4);
        prop_assert_eq!(parse_formula(&display_formula(&a)).unwrap(), a.clone());
        prop_assert_eq!(parse_formula(&print_formula(&a)).unwrap(), a);
    }

    #[test]
    fn equation_steps_invert(seed in any::<u64>(), under_quantifier in any::<bool>()) {
        let mut r = rng(seed);
        let set = parse_equations("ps : p(s(u)) = u", &Signature::default()).unwrap();
        let b = common::formula(&mut r, 3);
        let t = FoTerm::Fn("m".into(), vec![FoTerm::var("x"), FoTerm::numeral(2)]);
        let redex = FoTerm::Fn("p".into(), vec![FoTerm::succ(t.clone())]);
        let mut a = Formula::Arrow(Box::new(b), Box::new(Formula::pred("X", vec![redex])));
        let mut position = vec![1, 0];
        if under_quantifier {
            a = Formula::ForallFo("z".into(), Box::new(a));
            position.insert(0, 0);
        }
        let step = EqStep {
            equation: "ps".into(),
            inst: vec![("u".into(), t)],
            position,
            direction: Direction::Forward,
        };
        let rewritten = eq_step(&a, &set, &step).unwrap();
        prop_assert_ne!(&rewritten, &a);
        prop_assert_eq!(eq_step(&rewritten, &set, &step.inverse()).unwrap(), a);
    }
}
