//! Instantiation of variable-bearing programs over their Herbrand
//! constants, and flattening of function terms into plain constants
//! (`f(a)` becomes `f_a`).

use crate::error::GroundError;
use crate::model::{Atom, Literal, OrderedProgram, Rule, Term};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug)]
pub struct GroundingConfig {
    /// Upper bound on the number of ground rules produced.
    pub max_instantiations: usize,
    /// Flatten compound terms to constants after instantiation.
    pub flatten: bool,
}

impl Default for GroundingConfig {
    fn default() -> Self {
        GroundingConfig {
            max_instantiations: 100_000,
            flatten: true,
        }
    }
}

/// Runs the whole grounding step: instantiation over the Herbrand
/// constants, then term flattening when the configuration asks for it.
pub fn ground(
    program: &OrderedProgram,
    config: &GroundingConfig,
) -> Result<Flattened, GroundError> {
    let instantiated = instantiate(program, config)?;
    if config.flatten {
        flatten_terms(&instantiated)
    } else {
        Ok(Flattened {
            program: instantiated,
            mapping: BTreeMap::new(),
        })
    }
}

/// All constants occurring in the program, inside atom arguments and
/// name terms. Propositional atoms contribute nothing.
pub fn herbrand_constants(program: &OrderedProgram) -> BTreeSet<String> {
    let mut consts = BTreeSet::new();
    for r in &program.rules {
        if let Some(n) = &r.name {
            n.collect_consts(&mut consts);
        }
        for l in r.literals() {
            for t in &l.atom.args {
                t.collect_consts(&mut consts);
            }
        }
    }
    consts
}

/// Replaces every rule by all instances over the Herbrand constants.
/// Ground rules pass through unchanged; rule names are instantiated
/// alongside the rule, and naming injectivity is re-checked afterwards.
pub fn instantiate(
    program: &OrderedProgram,
    config: &GroundingConfig,
) -> Result<OrderedProgram, GroundError> {
    let constants: Vec<Term> = herbrand_constants(program)
        .into_iter()
        .map(Term::Const)
        .collect();
    let mut rules = Vec::new();
    for rule in &program.rules {
        let vars = ordered_vars(rule);
        if vars.is_empty() {
            rules.push(rule.clone());
            continue;
        }
        if constants.is_empty() {
            // No constants to instantiate over; the rule denotes nothing.
            continue;
        }
        let mut counters = vec![0usize; vars.len()];
        loop {
            let subst: BTreeMap<String, Term> = vars
                .iter()
                .cloned()
                .zip(counters.iter().map(|&i| constants[i].clone()))
                .collect();
            rules.push(rule.substitute(&subst));
            if rules.len() > config.max_instantiations {
                return Err(GroundError::TooManyInstances {
                    count: rules.len(),
                    limit: config.max_instantiations,
                });
            }
            if !advance_odometer(&mut counters, constants.len()) {
                break;
            }
        }
    }
    let ground = OrderedProgram::new(rules);
    check_name_injectivity(&ground)?;
    Ok(ground)
}

/// Last position runs fastest, so substitutions come out in
/// lexicographic order. Returns false once every combination is spent.
fn advance_odometer(counters: &mut [usize], base: usize) -> bool {
    for c in counters.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

fn ordered_vars(rule: &Rule) -> Vec<String> {
    // First-occurrence order over name, head, then body.
    let mut seen = BTreeSet::new();
    let mut vars = Vec::new();
    let mut visit = |t: &Term| {
        let mut ordered = Vec::new();
        collect_in_order(t, &mut ordered);
        for v in ordered {
            if seen.insert(v.clone()) {
                vars.push(v);
            }
        }
    };
    if let Some(n) = &rule.name {
        visit(n);
    }
    for l in rule.literals() {
        for t in &l.atom.args {
            visit(t);
        }
    }
    vars
}

fn collect_in_order(t: &Term, out: &mut Vec<String>) {
    match t {
        Term::Const(_) => {}
        Term::Var(v) => out.push(v.clone()),
        Term::Compound(_, args) => args.iter().for_each(|a| collect_in_order(a, out)),
    }
}

fn check_name_injectivity(program: &OrderedProgram) -> Result<(), GroundError> {
    let mut seen: BTreeMap<Term, usize> = BTreeMap::new();
    for (i, r) in program.rules.iter().enumerate() {
        if let Some(n) = &r.name {
            if let Some(&j) = seen.get(n) {
                if program.rules[j] != program.rules[i] {
                    return Err(GroundError::NameCollision {
                        name: n.to_string(),
                    });
                }
            } else {
                seen.insert(n.clone(), i);
            }
        }
    }
    Ok(())
}

/// Result of term flattening: the rewritten program and the mapping
/// from each flattened compound term to its replacement constant.
#[derive(Clone, Debug)]
pub struct Flattened {
    pub program: OrderedProgram,
    pub mapping: BTreeMap<Term, String>,
}

/// Replaces every compound term by an underscore-joined constant,
/// recursively (`g(f(a))` becomes `g_f_a`). Atom argument lists are kept;
/// only the terms inside them are rewritten. The mapping must be
/// injective and must not collide with existing constants.
pub fn flatten_terms(program: &OrderedProgram) -> Result<Flattened, GroundError> {
    if !program.is_ground() {
        return Err(GroundError::NotGround {
            context: "flatten_terms".to_string(),
        });
    }
    let existing = herbrand_constants(program);
    let mut mapping: BTreeMap<Term, String> = BTreeMap::new();
    let mut taken: BTreeMap<String, Term> = BTreeMap::new();

    let mut flatten_term = |t: &Term| -> Result<Term, GroundError> {
        match t {
            Term::Const(_) => Ok(t.clone()),
            Term::Var(_) => unreachable!("ground program"),
            Term::Compound(..) => {
                let flat = join_term(t);
                if let Some(prev) = taken.get(&flat) {
                    if prev != t {
                        return Err(GroundError::FlattenCollision {
                            term: t.to_string(),
                            constant: flat,
                        });
                    }
                } else {
                    if existing.contains(&flat) {
                        return Err(GroundError::FlattenCollision {
                            term: t.to_string(),
                            constant: flat,
                        });
                    }
                    taken.insert(flat.clone(), t.clone());
                    mapping.insert(t.clone(), flat.clone());
                }
                Ok(Term::Const(flat))
            }
        }
    };

    let mut rules = Vec::new();
    for r in &program.rules {
        let name = match &r.name {
            Some(n) => Some(flatten_term(n)?),
            None => None,
        };
        let mut map_lit = |l: &Literal| -> Result<Literal, GroundError> {
            let args = l
                .atom
                .args
                .iter()
                .map(&mut flatten_term)
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Literal {
                atom: Atom::new(l.atom.predicate.clone(), args),
                sign: l.sign,
            })
        };
        let head = match &r.head {
            Some(h) => Some(map_lit(h)?),
            None => None,
        };
        let pbody = r
            .pbody
            .iter()
            .map(&mut map_lit)
            .collect::<Result<Vec<_>, _>>()?;
        let nbody = r
            .nbody
            .iter()
            .map(&mut map_lit)
            .collect::<Result<Vec<_>, _>>()?;
        rules.push(Rule::new(name, head, pbody, nbody));
    }
    Ok(Flattened {
        program: OrderedProgram::new(rules),
        mapping,
    })
}

fn join_term(t: &Term) -> String {
    match t {
        Term::Const(c) => c.clone(),
        Term::Var(v) => v.clone(),
        Term::Compound(f, args) => {
            let mut s = f.clone();
            for a in args {
                s.push('_');
                s.push_str(&join_term(a));
            }
            s
        }
    }
}
