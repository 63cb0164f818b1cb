//! Answer set machinery: reducts, logical closure, the consequence
//! operator with its derivation stages, answer set checking, and two
//! enumeration engines (a definitional brute force and a backtracking
//! search with propagation).

use crate::error::SolveError;
use crate::model::{defeated, Literal, LiteralSet, Rule};
use std::collections::{BTreeMap, BTreeSet};

/// A program whose rules carry no weakly negated literals. Headless
/// rules are allowed; a fired one makes the closure inconsistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicProgram {
    pub rules: Vec<Rule>,
}

impl BasicProgram {
    pub fn new(rules: Vec<Rule>) -> Self {
        debug_assert!(rules.iter().all(Rule::is_basic));
        BasicProgram { rules }
    }
}

/// The iterated consequence stages of a basic program, up to fixpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTrace {
    pub stages: Vec<LiteralSet>,
}

impl DerivationTrace {
    pub fn final_stage(&self) -> &LiteralSet {
        self.stages
            .last()
            .expect("trace has at least the empty stage")
    }
}

/// The reduct relative to `x`: drop every rule defeated by `x`, strip
/// the weakly negated part from the survivors.
pub fn reduct(program: &[Rule], x: &LiteralSet) -> BasicProgram {
    let rules = program
        .iter()
        .filter(|r| !defeated(r, x))
        .map(|r| Rule::new(r.name.clone(), r.head.clone(), r.pbody.clone(), vec![]))
        .collect();
    BasicProgram::new(rules)
}

/// One application of the consequence operator to a consistent stage.
/// Returns `Inconsistent` when a headless rule fires or the derived
/// heads contain a complementary pair.
fn step(rules: &[Rule], x: &BTreeSet<Literal>) -> LiteralSet {
    let mut out: BTreeSet<Literal> = BTreeSet::new();
    for r in rules {
        if r.pbody.iter().all(|l| x.contains(l)) {
            match &r.head {
                None => return LiteralSet::Inconsistent,
                Some(h) => {
                    if out.contains(&h.complement()) {
                        return LiteralSet::Inconsistent;
                    }
                    out.insert(h.clone());
                }
            }
        }
    }
    LiteralSet::Consistent(out)
}

/// The full iteration from the empty set up to the fixpoint. Once a
/// stage turns inconsistent it is recorded as the inconsistent closure
/// and the trace ends there.
pub fn tp_trace(basic: &BasicProgram) -> DerivationTrace {
    let mut stages = vec![LiteralSet::empty()];
    loop {
        let current = match stages.last().unwrap() {
            LiteralSet::Inconsistent => break,
            LiteralSet::Consistent(set) => set.clone(),
        };
        let next = step(&basic.rules, &current);
        match next {
            LiteralSet::Inconsistent => {
                stages.push(LiteralSet::Inconsistent);
                break;
            }
            LiteralSet::Consistent(set) => {
                if set == current {
                    break;
                }
                stages.push(LiteralSet::Consistent(set));
            }
        }
    }
    DerivationTrace { stages }
}

/// Smallest logically closed set closed under the basic program.
pub fn th_closure(basic: &BasicProgram) -> LiteralSet {
    tp_trace(basic).final_stage().clone()
}

/// Least stage index at which the literal appears, if any.
pub fn stage_of(trace: &DerivationTrace, literal: &Literal) -> Option<usize> {
    trace.stages.iter().position(|s| s.contains(literal))
}

/// `x` is an answer set of the program iff the closure of the reduct
/// relative to `x` reproduces `x` exactly.
pub fn is_answer_set(program: &[Rule], x: &LiteralSet) -> bool {
    th_closure(&reduct(program, x)) == *x
}

/// Indices of the rules generating `x`: prerequisites inside `x` and
/// not defeated by `x`.
pub fn generating_rule_indices(program: &[Rule], x: &LiteralSet) -> Vec<usize> {
    program
        .iter()
        .enumerate()
        .filter(|(_, r)| x.contains_all(&r.pbody) && !defeated(r, x))
        .map(|(i, _)| i)
        .collect()
}

/// The generating rules themselves, in program order.
pub fn generating_rules(program: &[Rule], x: &LiteralSet) -> Vec<Rule> {
    generating_rule_indices(program, x)
        .into_iter()
        .map(|i| program[i].clone())
        .collect()
}

/// A grounded enumeration of the generating rules of `x`: every rule's
/// prerequisites are heads of earlier rules. Exists for every answer
/// set; `None` signals that `x` is not one.
pub fn grounded_enumeration(program: &[Rule], x: &LiteralSet) -> Option<Vec<usize>> {
    let gr = generating_rule_indices(program, x);
    let mut placed: Vec<usize> = Vec::new();
    let mut heads: BTreeSet<Literal> = BTreeSet::new();
    let mut remaining: Vec<usize> = gr;
    while !remaining.is_empty() {
        let next = remaining
            .iter()
            .position(|&i| program[i].pbody.iter().all(|l| heads.contains(l)))?;
        let i = remaining.remove(next);
        if let Some(h) = &program[i].head {
            heads.insert(h.clone());
        }
        placed.push(i);
    }
    Some(placed)
}

/// Default cap on distinct head literals for the brute-force engine.
pub const BRUTE_FORCE_BOUND: usize = 20;

/// Definitional enumeration: check every consistent subset of the head
/// literals, plus the inconsistent closure. Errors when the number of
/// distinct head literals exceeds `bound` ([`BRUTE_FORCE_BOUND`] is the
/// conventional choice).
pub fn answer_sets_bruteforce(
    program: &[Rule],
    bound: usize,
) -> Result<BTreeSet<LiteralSet>, SolveError> {
    let heads: Vec<Literal> = {
        let set: BTreeSet<Literal> = program.iter().filter_map(|r| r.head.clone()).collect();
        set.into_iter().collect()
    };
    if heads.len() > bound.min(62) {
        return Err(SolveError::BruteForceBound {
            heads: heads.len(),
            bound,
        });
    }
    let mut result = BTreeSet::new();
    for mask in 0u64..(1u64 << heads.len()) {
        let literals: Vec<Literal> = heads
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, l)| l.clone())
            .collect();
        let candidate = LiteralSet::from_literals(literals);
        if !candidate.is_consistent() {
            continue;
        }
        if is_answer_set(program, &candidate) {
            result.insert(candidate);
        }
    }
    if is_answer_set(program, &LiteralSet::Inconsistent) {
        result.insert(LiteralSet::Inconsistent);
    }
    Ok(result)
}

/// Backtracking enumeration of all answer sets. Branches over the
/// literals occurring weakly negated, with deterministic propagation
/// between branch points; every emitted candidate passes a final
/// `is_answer_set` verification. Complete on finite ground programs.
pub fn answer_sets_search(program: &[Rule]) -> BTreeSet<LiteralSet> {
    let mut occurrences: BTreeMap<Literal, usize> = BTreeMap::new();
    for r in program {
        for l in &r.nbody {
            *occurrences.entry(l.clone()).or_insert(0) += 1;
        }
    }
    let mut branch_vars: Vec<Literal> = occurrences.keys().cloned().collect();
    branch_vars.sort_by(|a, b| occurrences[b].cmp(&occurrences[a]).then_with(|| a.cmp(b)));

    let mut found = BTreeSet::new();
    let mut assignment: BTreeMap<Literal, bool> = BTreeMap::new();
    search(program, &branch_vars, &mut assignment, &mut found);
    if is_answer_set(program, &LiteralSet::Inconsistent) {
        found.insert(LiteralSet::Inconsistent);
    }
    found
}

/// Closure of the rules whose weak bodies are settled `out`; a lower
/// bound on any answer set compatible with the assignment.
fn lower_closure(program: &[Rule], assignment: &BTreeMap<Literal, bool>) -> LiteralSet {
    let sure: Vec<Rule> = program
        .iter()
        .filter(|r| r.nbody.iter().all(|l| assignment.get(l) == Some(&false)))
        .map(|r| Rule::new(None, r.head.clone(), r.pbody.clone(), vec![]))
        .collect();
    th_closure(&BasicProgram::new(sure))
}

/// Closure ignoring every weak literal not yet settled `in`; an upper
/// bound on any answer set compatible with the assignment.
fn upper_closure(program: &[Rule], assignment: &BTreeMap<Literal, bool>) -> BTreeSet<Literal> {
    let possible: Vec<Rule> = program
        .iter()
        .filter(|r| r.head.is_some() && r.nbody.iter().all(|l| assignment.get(l) != Some(&true)))
        .map(|r| Rule::new(None, r.head.clone(), r.pbody.clone(), vec![]))
        .collect();
    // The upper bound need not be consistent; run the iteration on raw
    // sets so complementary pairs do not collapse it.
    let mut x: BTreeSet<Literal> = BTreeSet::new();
    loop {
        let mut next = x.clone();
        for r in &possible {
            if r.pbody.iter().all(|l| x.contains(l)) {
                next.insert(r.head.clone().unwrap());
            }
        }
        if next == x {
            return x;
        }
        x = next;
    }
}

fn search(
    program: &[Rule],
    branch_vars: &[Literal],
    assignment: &mut BTreeMap<Literal, bool>,
    found: &mut BTreeSet<LiteralSet>,
) {
    // Propagate to fixpoint: settled-in literals must stay derivable,
    // underivable literals are settled out.
    let mut local: Vec<Literal> = Vec::new();
    loop {
        let lower = lower_closure(program, assignment);
        if !lower.is_consistent() {
            for l in local {
                assignment.remove(&l);
            }
            return;
        }
        let upper = upper_closure(program, assignment);
        let mut changed = false;
        let mut dead = false;
        for v in branch_vars {
            match assignment.get(v) {
                Some(true) => {
                    if !upper.contains(v) {
                        dead = true;
                        break;
                    }
                }
                Some(false) => {
                    if lower.contains(v) {
                        dead = true;
                        break;
                    }
                }
                None => {
                    if lower.contains(v) {
                        assignment.insert(v.clone(), true);
                        local.push(v.clone());
                        changed = true;
                    } else if !upper.contains(v) {
                        assignment.insert(v.clone(), false);
                        local.push(v.clone());
                        changed = true;
                    }
                }
            }
        }
        if dead {
            for l in local {
                assignment.remove(&l);
            }
            return;
        }
        if !changed {
            break;
        }
    }

    match branch_vars.iter().find(|v| !assignment.contains_key(*v)) {
        None => {
            // Fully assigned: build the candidate and verify it.
            let kept: Vec<Rule> = program
                .iter()
                .filter(|r| r.nbody.iter().all(|l| assignment.get(l) != Some(&true)))
                .map(|r| Rule::new(None, r.head.clone(), r.pbody.clone(), vec![]))
                .collect();
            let candidate = th_closure(&BasicProgram::new(kept));
            if candidate.is_consistent() && is_answer_set(program, &candidate) {
                found.insert(candidate);
            }
        }
        Some(v) => {
            let v = v.clone();
            for value in [false, true] {
                assignment.insert(v.clone(), value);
                search(program, branch_vars, assignment, found);
                assignment.remove(&v);
            }
        }
    }
    for l in local {
        assignment.remove(&l);
    }
}
