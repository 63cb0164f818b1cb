//! Shared fixtures for the integration suites: the worked examples from
//! the docs, a seeded random-program generator, and small helpers.

#![allow(dead_code)]

use olp_core::model::{Literal, LiteralSet, OrderedProgram, PreferenceOrder, Rule, Term};
use olp_core::parser::{parse_program, SourceProgram};
use olp_core::transform::prec_literal;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub fn parse(text: &str) -> OrderedProgram {
    parse_program(&SourceProgram::from_text(text)).unwrap()
}

pub fn lits(items: &[&str]) -> LiteralSet {
    LiteralSet::from_literals(items.iter().map(|s| {
        if let Some(rest) = s.strip_prefix('-') {
            Literal::neg(rest)
        } else {
            Literal::pos(s)
        }
    }))
}

pub fn setset(items: &[&[&str]]) -> BTreeSet<LiteralSet> {
    items.iter().map(|x| lits(x)).collect()
}

pub fn name(s: &str) -> Term {
    Term::constant(s)
}

pub fn order(pairs: &[(&str, &str)]) -> PreferenceOrder {
    PreferenceOrder::from_pairs(pairs.iter().map(|(a, b)| (name(a), name(b))))
}

/// Appends the order as unnamed preference facts.
pub fn with_order_facts(program: &OrderedProgram, order: &PreferenceOrder) -> OrderedProgram {
    let mut rules = program.rules.clone();
    for (lower, higher) in &order.pairs {
        rules.push(Rule::fact(prec_literal(lower, higher)));
    }
    OrderedProgram::new(rules)
}

/// Three rules, two answer sets; preferring the second rule over the
/// third should leave only the answer set containing b.
pub const INTRO: &str = "\
neg a.
b :- name(n2), neg a, not c.
c :- name(n3), not b.
(n3 < n2).
";

/// The same rules with the preference derived by a defeasible rule.
pub const DYNAMIC: &str = "\
    neg a .
        b :- name(n2), neg a, not c.
        c :- name(n3), not b.
(n3 < n2) :- not d.
";

/// Birds and penguins; five rules, the contraposition rule outranks the
/// wings rule.
pub const BIRDS: &str = "\
neg f :- [n1], p, not f.
w :- [n2], b, not neg w.
f :- [n3], w, not neg f.
b :- [n4], p.
p :- [n5].
(n2 < n1).
";

pub const BIRDS_RULES: &str = "\
neg f :- [n1], p, not f.
w :- [n2], b, not neg w.
f :- [n3], w, not neg f.
b :- [n4], p.
p :- [n5].
";

pub fn birds_order() -> PreferenceOrder {
    order(&[("n2", "n1")])
}

/// A rule preferred to an applicable rule whose head is also a fact.
pub const HEAD_REPEAT: &str = "\
a :- [n1], not neg a.
b :- [n2], a, not neg b.
b :- [n3].
(n1 < n2).
";

pub const HEAD_REPEAT_RULES: &str = "\
a :- [n1], not neg a.
b :- [n2], a, not neg b.
b :- [n3].
";

pub fn head_repeat_order() -> PreferenceOrder {
    order(&[("n1", "n2")])
}

/// Four prerequisite-free rules under a full chain; no answer set
/// survives the descriptive check.
pub const NO_PREFERRED_RULES: &str = "\
a :- [n1], not b.
neg a :- [n2], not a.
a :- [n3], not neg a.
b :- [n4], not neg b.
";

pub fn chain4_order() -> PreferenceOrder {
    order(&[
        ("n2", "n1"),
        ("n3", "n1"),
        ("n4", "n1"),
        ("n3", "n2"),
        ("n4", "n2"),
        ("n4", "n3"),
    ])
}

/// Three rules under a full chain; only the answer set applying the top
/// rule survives the descriptive check.
pub const GUESS_CHECK_RULES: &str = "\
b :- [n1], a, not neg b.
neg b :- [n2], not b.
a :- [n3], not neg a.
";

pub fn chain3_order() -> PreferenceOrder {
    order(&[("n2", "n1"), ("n3", "n1"), ("n3", "n2")])
}

/// Preference facts about a rule that itself states a preference.
pub const PREF_ABOUT_PREF: &str = "\
a :- [n1], not neg a.
b :- [n2], not neg b.
(n1 < n2) :- [n3].
(n3 < n1) :- [n4].
";

/// A preference supported by the very literals its rules conclude.
pub const SELF_SUPPORTED_PREF: &str = "\
a :- [n1], not neg a.
b :- [n2], not neg b.
(n1 < n2) :- [n3], a, b.
";

/// The legal reasoning example with variables and compound rule names.
pub const LEGAL: &str = "\
    perfected :- [ucc], possession,             not neg perfected.
neg perfected :- [sma], ship, neg finstatement, not     perfected.

(Y < X) :- [lex_posterior(X,Y)],
           newer(X,Y), not neg (Y < X).
(X < Y) :- [lex_superior(X,Y)],
           state_law(X), federal_law(Y), not neg (X < Y).

possession.              newer(ucc,sma).
ship.                    federal_law(sma).
neg finstatement.        state_law(ucc).

(lex_posterior(X,Y) < lex_superior(X,Y)).
";

pub struct GeneratorConfig {
    pub max_rules: usize,
    pub atoms: Vec<&'static str>,
    pub order_density: f64,
    pub preference_rules: usize,
    /// Chance of turning a rule into an unnamed integrity constraint.
    pub constraint_chance: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_rules: 5,
            atoms: vec!["a", "b", "c", "d"],
            order_density: 0.35,
            preference_rules: 0,
            constraint_chance: 0.0,
        }
    }
}

fn random_literal(rng: &mut ChaCha8Rng, atoms: &[&str]) -> Literal {
    let atom = atoms[rng.gen_range(0..atoms.len())];
    if rng.gen_bool(0.3) {
        Literal::neg(atom)
    } else {
        Literal::pos(atom)
    }
}

/// A random named program over a small atom pool. Rule `i` is named
/// `n<i+1>`; bodies carry up to two prerequisites and two weakly
/// negated literals.
pub fn random_program(rng: &mut ChaCha8Rng, config: &GeneratorConfig) -> OrderedProgram {
    let k = rng.gen_range(1..=config.max_rules);
    let mut rules = Vec::new();
    for i in 0..k {
        let head = random_literal(rng, &config.atoms);
        let pbody: Vec<Literal> = (0..rng.gen_range(0..=2))
            .map(|_| random_literal(rng, &config.atoms))
            .collect();
        let nbody: Vec<Literal> = (0..rng.gen_range(0..=2))
            .map(|_| random_literal(rng, &config.atoms))
            .collect();
        if config.constraint_chance > 0.0
            && !(pbody.is_empty() && nbody.is_empty())
            && rng.gen_bool(config.constraint_chance)
        {
            rules.push(Rule::constraint(pbody, nbody));
        } else {
            rules.push(Rule::new(
                Some(name(&format!("n{}", i + 1))),
                Some(head),
                pbody,
                nbody,
            ));
        }
    }
    for j in 0..config.preference_rules {
        let lower = rng.gen_range(0..k);
        let higher = rng.gen_range(0..k);
        if lower == higher {
            continue;
        }
        let head = prec_literal(
            &name(&format!("n{}", lower + 1)),
            &name(&format!("n{}", higher + 1)),
        );
        let pbody: Vec<Literal> = (0..rng.gen_range(0..=1))
            .map(|_| random_literal(rng, &config.atoms))
            .collect();
        let nbody: Vec<Literal> = (0..rng.gen_range(0..=1))
            .map(|_| random_literal(rng, &config.atoms))
            .collect();
        rules.push(Rule::new(
            Some(name(&format!("n{}", k + j + 1))),
            Some(head),
            pbody,
            nbody,
        ));
    }
    OrderedProgram::new(rules)
}

/// A random strict partial order over the program's names: pairs are
/// drawn in the direction of a random permutation, so the relation is
/// acyclic by construction, then transitively closed.
pub fn random_order(
    rng: &mut ChaCha8Rng,
    program: &OrderedProgram,
    density: f64,
) -> PreferenceOrder {
    let names = program.names();
    let mut permutation: Vec<usize> = (0..names.len()).collect();
    permutation.shuffle(rng);
    let mut pairs = BTreeSet::new();
    for i in 0..names.len() {
        for j in (i + 1)..names.len() {
            if rng.gen_bool(density) {
                pairs.insert((names[permutation[i]].clone(), names[permutation[j]].clone()));
            }
        }
    }
    PreferenceOrder { pairs }
        .strictify()
        .expect("permutation direction is acyclic")
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
