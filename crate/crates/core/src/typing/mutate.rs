//! Single-point corruptions of a derivation, used to test the checker.

use crate::formula::{neg, FoTerm, Formula, PredAbstraction};

use super::{Derivation, Rule};

#[derive(Debug, Clone)]
pub struct Mutation {
    /// Node that was changed.
    pub path: Vec<usize>,
    pub description: String,
    pub derivation: Derivation,
}

/// The next rule in a fixed cycle, with a default witness.
fn other_rule(rule: &Rule) -> Rule {
    let bot = || PredAbstraction::new(&[], Formula::Bot);
    match rule {
        Rule::Ax => Rule::Abs,
        Rule::Abs => Rule::App,
        Rule::App => Rule::GenFo,
        Rule::GenFo => Rule::InstFo(FoTerm::zero()),
        Rule::InstFo(_) => Rule::GenPred,
        Rule::GenPred => Rule::InstPred(bot()),
        Rule::InstPred(_) => Rule::GenBot,
        Rule::GenBot => Rule::InstBot(bot()),
        Rule::InstBot(_) => Rule::Eq(vec![]),
        Rule::Eq(_) => Rule::Ax,
    }
}

fn other_witness(rule: &Rule) -> Option<(Rule, String)> {
    let negate = |g: &PredAbstraction| PredAbstraction {
        params: g.params.clone(),
        body: neg(g.body.clone()),
    };
    match rule {
        Rule::InstFo(u) => Some((Rule::InstFo(FoTerm::succ(u.clone())), "witness u becomes s(u)".into())),
        Rule::InstPred(g) => Some((Rule::InstPred(negate(g)), "witness body negated".into())),
        Rule::InstBot(g) => Some((Rule::InstBot(negate(g)), "witness body negated".into())),
        Rule::Eq(chain) if !chain.is_empty() => {
            let mut chain = chain.clone();
            chain[0].direction = chain[0].direction.flip();
            Some((Rule::Eq(chain), "first equation step reversed".into()))
        }
        _ => None,
    }
}

/// For every node: a rule-tag change, a witness change where the rule has
/// one, and a change of the last context entry `A` into `A → ⊥` at that
/// node only.
pub fn mutations(d: &Derivation) -> Vec<Mutation> {
    let mut out = Vec::new();
    for path in d.paths() {
        let node = d.node(&path).expect("path from paths()");
        let mut push = |description: String, change: &dyn Fn(&mut Derivation)| {
            let mut derivation = d.clone();
            change(derivation.node_mut(&path).expect("path from paths()"));
            out.push(Mutation {
                path: path.clone(),
                description,
                derivation,
            });
        };
        let tag = other_rule(&node.rule);
        push(
            format!("{} becomes {}", node.rule.tag(), tag.tag()),
            &|n| n.rule = tag.clone(),
        );
        if let Some((rule, description)) = other_witness(&node.rule) {
            push(description, &|n| n.rule = rule.clone());
        }
        if let Some((x, a)) = node.ctx.entries().last() {
            let ctx = node.ctx.with_type(x, neg(a.clone()));
            push(format!("type of {x} negated"), &|n| n.ctx = ctx.clone());
        }
    }
    out
}
