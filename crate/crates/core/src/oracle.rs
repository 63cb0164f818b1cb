//! Definition-level order-preservation checkers. These are the ground
//! truth the compiled programs are tested against: brute-force searches
//! over rule enumerations, total-order extensions, and the two-pass
//! operator reconstruction for the descriptive semantics.

use crate::error::OracleError;
use crate::model::{Literal, LiteralSet, OrderedProgram, PreferenceOrder, Rule, Term};
use crate::semantics::{generating_rule_indices, is_answer_set};
use crate::transform::{extract_prec_relation, ta_closure};
use std::collections::{BTreeMap, BTreeSet};

/// Resource guards for the enumeration searches.
#[derive(Clone, Copy, Debug)]
pub struct OracleLimits {
    /// Backtracking nodes before giving up with an explicit error.
    pub node_budget: usize,
    /// Cap on generated linear extensions.
    pub max_extensions: usize,
    /// Cap on the constrained part of an enumeration universe.
    pub max_universe: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            node_budget: 500_000,
            max_extensions: 40_320,
            max_universe: 64,
        }
    }
}

/// Which definition a witness enumeration satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CriterionKind {
    DstStatic,
    DstDynamic,
    Wzl,
    BeEnumeration,
}

/// A successful enumeration: indices into the checked rule universe
/// (the program for the static criteria, the order-closed program for
/// the dynamic one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationWitness {
    pub ordering: Vec<usize>,
    pub criterion: CriterionKind,
}

/// A total rule order, stored ascending (lowest priority first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalOrder {
    pub ascending: Vec<usize>,
}

impl TotalOrder {
    /// Processing order for the operator reconstruction: highest first.
    pub fn descending(&self) -> Vec<usize> {
        self.ascending.iter().rev().copied().collect()
    }

    pub fn position(&self, index: usize) -> Option<usize> {
        self.ascending.iter().position(|&i| i == index)
    }
}

// ---------------------------------------------------------------------
// Static-family enumeration criteria over the generating rules.
// ---------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum StaticFlavor {
    Dst,
    Wzl,
    BeEnumeration,
}

struct StaticSearch<'a> {
    program: &'a [Rule],
    flavor: StaticFlavor,
    universe: Vec<usize>,
    /// For universe position k: universe positions that must be placed
    /// earlier because of the order.
    must_precede: Vec<Vec<usize>>,
    /// For universe position k: preferred non-generating rules that must
    /// be neutralised before placement.
    blockers: Vec<Vec<usize>>,
    budget: usize,
}

fn rule_name(rule: &Rule) -> Option<&Term> {
    rule.name.as_ref()
}

impl<'a> StaticSearch<'a> {
    fn new(
        program: &'a [Rule],
        order: &PreferenceOrder,
        x: &'a LiteralSet,
        flavor: StaticFlavor,
        limits: &OracleLimits,
    ) -> Result<Self, OracleError> {
        let universe = generating_rule_indices(program, x);
        if universe.len() > limits.max_universe {
            return Err(OracleError::UniverseTooLarge {
                size: universe.len(),
                limit: limits.max_universe,
            });
        }
        let gr_set: BTreeSet<usize> = universe.iter().copied().collect();
        let mut must_precede = vec![Vec::new(); universe.len()];
        let mut blockers = vec![Vec::new(); universe.len()];
        for (k, &i) in universe.iter().enumerate() {
            let Some(n_i) = rule_name(&program[i]) else {
                continue;
            };
            for (j, other) in program.iter().enumerate() {
                let Some(n_j) = rule_name(other) else {
                    continue;
                };
                if i == j || !order.holds(n_i, n_j) {
                    continue;
                }
                if gr_set.contains(&j) {
                    let pos = universe.iter().position(|&u| u == j).unwrap();
                    must_precede[k].push(pos);
                } else {
                    // A preferred rule outside the generating set: it is
                    // harmless if its prerequisites fail, already handled
                    // if its head holds (descriptive flavor), and must
                    // otherwise be defeated by earlier heads.
                    if !x.contains_all(&other.pbody) {
                        continue;
                    }
                    if flavor == StaticFlavor::BeEnumeration
                        && other.head.as_ref().is_some_and(|h| x.contains(h))
                    {
                        continue;
                    }
                    blockers[k].push(j);
                }
            }
        }
        Ok(StaticSearch {
            program,
            flavor,
            universe,
            must_precede,
            blockers,
            budget: limits.node_budget,
        })
    }

    fn placeable(&self, k: usize, mask: u64, heads: &BTreeSet<Literal>) -> bool {
        let rule = &self.program[self.universe[k]];
        let grounded = match self.flavor {
            StaticFlavor::Dst => rule.pbody.iter().all(|l| heads.contains(l)),
            StaticFlavor::Wzl => {
                rule.pbody.iter().all(|l| heads.contains(l))
                    || rule.head.as_ref().is_some_and(|h| heads.contains(h))
            }
            StaticFlavor::BeEnumeration => true,
        };
        if !grounded {
            return false;
        }
        if !self.must_precede[k].iter().all(|&p| mask & (1 << p) != 0) {
            return false;
        }
        self.blockers[k].iter().all(|&b| {
            let blocked = &self.program[b];
            blocked.nbody.iter().any(|l| heads.contains(l))
                || (self.flavor == StaticFlavor::Wzl
                    && blocked.head.as_ref().is_some_and(|h| heads.contains(h)))
        })
    }

    fn run(&mut self) -> Result<Option<Vec<usize>>, OracleError> {
        let mut placed = Vec::new();
        let mut heads = BTreeSet::new();
        let mut failed: BTreeSet<u64> = BTreeSet::new();
        match self.dfs(0, &mut placed, &mut heads, &mut failed)? {
            true => Ok(Some(placed.iter().map(|&k| self.universe[k]).collect())),
            false => Ok(None),
        }
    }

    fn dfs(
        &mut self,
        mask: u64,
        placed: &mut Vec<usize>,
        heads: &mut BTreeSet<Literal>,
        failed: &mut BTreeSet<u64>,
    ) -> Result<bool, OracleError> {
        if placed.len() == self.universe.len() {
            return Ok(true);
        }
        if failed.contains(&mask) {
            return Ok(false);
        }
        if self.budget == 0 {
            return Err(OracleError::Undecided {
                budget: OracleLimits::default().node_budget,
            });
        }
        self.budget -= 1;
        for k in 0..self.universe.len() {
            if mask & (1 << k) != 0 || !self.placeable(k, mask, heads) {
                continue;
            }
            placed.push(k);
            let head = self.program[self.universe[k]].head.clone();
            let added = match &head {
                Some(h) => heads.insert(h.clone()),
                None => false,
            };
            if self.dfs(mask | (1 << k), placed, heads, failed)? {
                return Ok(true);
            }
            if added {
                heads.remove(head.as_ref().unwrap());
            }
            placed.pop();
        }
        failed.insert(mask);
        Ok(false)
    }
}

fn check_static_flavor(
    program: &[Rule],
    order: &PreferenceOrder,
    x: &LiteralSet,
    flavor: StaticFlavor,
    criterion: CriterionKind,
    limits: &OracleLimits,
) -> Result<Option<EnumerationWitness>, OracleError> {
    if !x.is_consistent() {
        return Err(OracleError::InconsistentCandidate);
    }
    if !is_answer_set(program, x) {
        return Err(OracleError::NotAnAnswerSet);
    }
    let order = order.strictify()?;
    let mut search = StaticSearch::new(program, &order, x, flavor, limits)?;
    Ok(search.run()?.map(|ordering| EnumerationWitness {
        ordering,
        criterion,
    }))
}

/// Prescriptive criterion for statically ordered programs: a grounded
/// enumeration of the generating rules that settles higher-ranked rules
/// first and defeats preferred inapplicable rules by earlier heads.
pub fn check_static_preserving(
    program: &[Rule],
    order: &PreferenceOrder,
    x: &LiteralSet,
) -> Result<Option<EnumerationWitness>, OracleError> {
    check_static_preserving_with(program, order, x, &OracleLimits::default())
}

pub fn check_static_preserving_with(
    program: &[Rule],
    order: &PreferenceOrder,
    x: &LiteralSet,
    limits: &OracleLimits,
) -> Result<Option<EnumerationWitness>, OracleError> {
    check_static_flavor(
        program,
        order,
        x,
        StaticFlavor::Dst,
        CriterionKind::DstStatic,
        limits,
    )
}

/// Weakened criterion: a rule also counts as handled once its head has
/// been derived by earlier rules.
pub fn check_wzl_preserving(
    program: &[Rule],
    order: &PreferenceOrder,
    x: &LiteralSet,
) -> Result<Option<EnumerationWitness>, OracleError> {
    check_static_flavor(
        program,
        order,
        x,
        StaticFlavor::Wzl,
        CriterionKind::Wzl,
        &OracleLimits::default(),
    )
}

/// Enumeration form of the descriptive criterion: no groundedness, and
/// preferred inapplicable rules are also excused when their head holds
/// in the candidate.
pub fn check_be_preserving(
    program: &[Rule],
    order: &PreferenceOrder,
    x: &LiteralSet,
) -> Result<Option<EnumerationWitness>, OracleError> {
    check_static_flavor(
        program,
        order,
        x,
        StaticFlavor::BeEnumeration,
        CriterionKind::BeEnumeration,
        &OracleLimits::default(),
    )
}

/// Re-runs the static-family conditions over a full witness sequence.
pub fn verify_static_witness(
    program: &[Rule],
    order: &PreferenceOrder,
    x: &LiteralSet,
    witness: &EnumerationWitness,
) -> bool {
    let flavor = match witness.criterion {
        CriterionKind::DstStatic => StaticFlavor::Dst,
        CriterionKind::Wzl => StaticFlavor::Wzl,
        CriterionKind::BeEnumeration => StaticFlavor::BeEnumeration,
        CriterionKind::DstDynamic => return false,
    };
    let order = match order.strictify() {
        Ok(o) => o,
        Err(_) => return false,
    };
    let gr = generating_rule_indices(program, x);
    if witness.ordering.len() != gr.len() || witness.ordering.iter().any(|i| !gr.contains(i)) {
        return false;
    }
    let search = match StaticSearch::new(program, &order, x, flavor, &OracleLimits::default()) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let mut mask = 0u64;
    let mut heads = BTreeSet::new();
    for &i in &witness.ordering {
        let k = search.universe.iter().position(|&u| u == i).unwrap();
        if !search.placeable(k, mask, &heads) {
            return false;
        }
        mask |= 1 << k;
        if let Some(h) = &program[i].head {
            heads.insert(h.clone());
        }
    }
    true
}

// ---------------------------------------------------------------------
// Dynamic criterion over the order-closed program.
// ---------------------------------------------------------------------

/// Everything the dynamic placement conditions need to know about one
/// universe rule.
struct DynRule {
    generating: bool,
    prereqs_in_x: bool,
    /// Universe indices that must precede because this rule's name is
    /// ranked below theirs in the candidate.
    must_follow: Vec<usize>,
    /// For each outgoing preference pair, the generating rules able to
    /// derive it; one of each group must precede.
    derivers: Vec<Vec<usize>>,
}

/// Prescriptive criterion for dynamically ordered programs: the
/// enumeration covers the whole order-closed program, every preference
/// atom is derived before the lower-ranked rule is considered, and
/// generating rules stay grounded. Returns the witness over
/// `ta_closure(program).rules`.
pub fn check_dynamic_preserving(
    program: &OrderedProgram,
    x: &LiteralSet,
) -> Result<Option<EnumerationWitness>, OracleError> {
    check_dynamic_preserving_with(program, x, &OracleLimits::default())
}

pub fn check_dynamic_preserving_with(
    program: &OrderedProgram,
    x: &LiteralSet,
    limits: &OracleLimits,
) -> Result<Option<EnumerationWitness>, OracleError> {
    if !x.is_consistent() {
        return Err(OracleError::InconsistentCandidate);
    }
    let ta = ta_closure(program);
    if !is_answer_set(&ta.rules, x) {
        return Err(OracleError::NotAnAnswerSet);
    }
    let prec = extract_prec_relation(x);
    let gr: BTreeSet<usize> = generating_rule_indices(&ta.rules, x).into_iter().collect();
    let names_in_order: BTreeSet<&Term> = prec.pairs.iter().flat_map(|(s, t)| [s, t]).collect();

    // Rules that are inapplicable for want of prerequisites and take no
    // part in the derived order can sit at the end of any witness.
    let mut constrained: Vec<usize> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    for (i, r) in ta.rules.iter().enumerate() {
        let named_in_order = r.name.as_ref().is_some_and(|n| names_in_order.contains(n));
        if !gr.contains(&i) && !x.contains_all(&r.pbody) && !named_in_order {
            free.push(i);
        } else {
            constrained.push(i);
        }
    }
    if constrained.len() > limits.max_universe {
        return Err(OracleError::UniverseTooLarge {
            size: constrained.len(),
            limit: limits.max_universe,
        });
    }

    let position_of: BTreeMap<usize, usize> = constrained
        .iter()
        .enumerate()
        .map(|(k, &i)| (i, k))
        .collect();
    let mut infos: Vec<DynRule> = Vec::new();
    for &i in &constrained {
        let r = &ta.rules[i];
        let mut must_follow = Vec::new();
        let mut derivers = Vec::new();
        if let Some(n_i) = &r.name {
            for (lower, higher) in &prec.pairs {
                if lower != n_i {
                    continue;
                }
                for (j, other) in ta.rules.iter().enumerate() {
                    if j != i && other.name.as_ref() == Some(higher) {
                        must_follow.push(position_of[&j]);
                    }
                }
                let atom = crate::model::Atom::prec(lower.clone(), higher.clone());
                let lit = Literal::positive(atom);
                let group: Vec<usize> = gr
                    .iter()
                    .filter(|&&g| ta.rules[g].head.as_ref() == Some(&lit))
                    .map(|&g| position_of[&g])
                    .collect();
                derivers.push(group);
            }
        }
        infos.push(DynRule {
            generating: gr.contains(&i),
            prereqs_in_x: x.contains_all(&r.pbody),
            must_follow,
            derivers,
        });
    }

    let mut search = DynamicSearch {
        rules: &ta.rules,
        constrained: &constrained,
        infos,
        budget: limits.node_budget,
    };
    let mut placed = Vec::new();
    let mut heads = BTreeSet::new();
    let mut failed = BTreeSet::new();
    if !search.dfs(0, &mut placed, &mut heads, &mut failed)? {
        return Ok(None);
    }
    let mut ordering: Vec<usize> = placed.iter().map(|&k| constrained[k]).collect();
    ordering.extend(free);
    Ok(Some(EnumerationWitness {
        ordering,
        criterion: CriterionKind::DstDynamic,
    }))
}

struct DynamicSearch<'a> {
    rules: &'a [Rule],
    constrained: &'a [usize],
    infos: Vec<DynRule>,
    budget: usize,
}

impl<'a> DynamicSearch<'a> {
    fn placeable(&self, k: usize, mask: u64, gen_heads: &BTreeSet<Literal>) -> bool {
        let info = &self.infos[k];
        let rule = &self.rules[self.constrained[k]];
        if info.generating {
            if !rule.pbody.iter().all(|l| gen_heads.contains(l)) {
                return false;
            }
        } else if info.prereqs_in_x && !rule.nbody.iter().any(|l| gen_heads.contains(l)) {
            return false;
        }
        if !info.must_follow.iter().all(|&p| mask & (1 << p) != 0) {
            return false;
        }
        info.derivers
            .iter()
            .all(|group| group.iter().any(|&p| mask & (1 << p) != 0))
    }

    fn dfs(
        &mut self,
        mask: u64,
        placed: &mut Vec<usize>,
        gen_heads: &mut BTreeSet<Literal>,
        failed: &mut BTreeSet<u64>,
    ) -> Result<bool, OracleError> {
        if placed.len() == self.constrained.len() {
            return Ok(true);
        }
        if failed.contains(&mask) {
            return Ok(false);
        }
        if self.budget == 0 {
            return Err(OracleError::Undecided {
                budget: OracleLimits::default().node_budget,
            });
        }
        self.budget -= 1;
        // Generating rules first: they grow the derived heads and so
        // enable the rest (order-closure instances as early as possible).
        let mut candidates: Vec<usize> = (0..self.constrained.len())
            .filter(|&k| mask & (1 << k) == 0)
            .collect();
        candidates.sort_by_key(|&k| (!self.infos[k].generating, k));
        for k in candidates {
            if !self.placeable(k, mask, gen_heads) {
                continue;
            }
            placed.push(k);
            let head = if self.infos[k].generating {
                self.rules[self.constrained[k]].head.clone()
            } else {
                None
            };
            let added = match &head {
                Some(h) => gen_heads.insert(h.clone()),
                None => false,
            };
            if self.dfs(mask | (1 << k), placed, gen_heads, failed)? {
                return Ok(true);
            }
            if added {
                gen_heads.remove(head.as_ref().unwrap());
            }
            placed.pop();
        }
        failed.insert(mask);
        Ok(false)
    }
}

/// Re-runs the dynamic conditions over a full witness sequence
/// (indices into `ta_closure(program).rules`).
pub fn verify_dynamic_witness(
    program: &OrderedProgram,
    x: &LiteralSet,
    witness: &EnumerationWitness,
) -> bool {
    if witness.criterion != CriterionKind::DstDynamic {
        return false;
    }
    let ta = ta_closure(program);
    if !is_answer_set(&ta.rules, x) || !x.is_consistent() {
        return false;
    }
    let n = ta.rules.len();
    if witness.ordering.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &i in &witness.ordering {
        if i >= n || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    let prec = extract_prec_relation(x);
    let gr: BTreeSet<usize> = generating_rule_indices(&ta.rules, x).into_iter().collect();
    let pos: BTreeMap<usize, usize> = witness
        .ordering
        .iter()
        .enumerate()
        .map(|(p, &i)| (i, p))
        .collect();
    for (i, r) in ta.rules.iter().enumerate() {
        let earlier_gen_heads: BTreeSet<&Literal> = witness.ordering[..pos[&i]]
            .iter()
            .filter(|j| gr.contains(j))
            .filter_map(|&j| ta.rules[j].head.as_ref())
            .collect();
        if let Some(n_i) = &r.name {
            for (lower, higher) in &prec.pairs {
                if lower != n_i {
                    continue;
                }
                for (j, other) in ta.rules.iter().enumerate() {
                    if j != i && other.name.as_ref() == Some(higher) && pos[&j] >= pos[&i] {
                        return false;
                    }
                }
                let lit =
                    Literal::positive(crate::model::Atom::prec(lower.clone(), higher.clone()));
                if !earlier_gen_heads.contains(&lit) {
                    return false;
                }
            }
        }
        if gr.contains(&i) {
            if !r.pbody.iter().all(|l| earlier_gen_heads.contains(l)) {
                return false;
            }
        } else if x.contains_all(&r.pbody) && !r.nbody.iter().any(|l| earlier_gen_heads.contains(l))
        {
            return false;
        }
    }
    true
}

// ---------------------------------------------------------------------
// Descriptive semantics: operator reconstruction over total orders.
// ---------------------------------------------------------------------

/// One pass of the reconstruction operator over prerequisite-free rules
/// given highest priority first: a rule is skipped when defeated by the
/// literals collected so far, or when its head already holds in the
/// candidate while the candidate defeats it; otherwise its head is
/// added. Returns the logical closure of the collected literals.
pub fn be_c_operator(rules_desc: &[Rule], x: &LiteralSet) -> Result<LiteralSet, OracleError> {
    be_c(rules_desc, x, true)
}

/// Same pass without the elimination case, for diagnostics.
pub fn be_c_operator_diagnostic(
    rules_desc: &[Rule],
    x: &LiteralSet,
) -> Result<LiteralSet, OracleError> {
    be_c(rules_desc, x, false)
}

fn be_c(rules_desc: &[Rule], x: &LiteralSet, eliminate: bool) -> Result<LiteralSet, OracleError> {
    if rules_desc.iter().any(|r| !r.is_prerequisite_free()) {
        return Err(OracleError::NotPrerequisiteFree);
    }
    let mut acc: BTreeSet<Literal> = BTreeSet::new();
    for r in rules_desc {
        if r.nbody.iter().any(|l| acc.contains(l)) {
            continue;
        }
        if eliminate
            && r.head.as_ref().is_some_and(|h| x.contains(h))
            && r.nbody.iter().any(|l| x.contains(l))
        {
            continue;
        }
        match &r.head {
            Some(h) => {
                acc.insert(h.clone());
            }
            // A fired constraint leaves no consistent closure.
            None => return Ok(LiteralSet::Inconsistent),
        }
    }
    Ok(LiteralSet::from_literals(acc))
}

/// All linear extensions of the order over the rule universe, ascending
/// and in deterministic sequence. Errors past the extension cap or on a
/// cyclic order.
pub fn total_extensions(
    order: &PreferenceOrder,
    universe: &[Rule],
) -> Result<Vec<TotalOrder>, OracleError> {
    total_extensions_with(order, universe, &OracleLimits::default())
}

pub fn total_extensions_with(
    order: &PreferenceOrder,
    universe: &[Rule],
    limits: &OracleLimits,
) -> Result<Vec<TotalOrder>, OracleError> {
    let order = order.strictify()?;
    // predecessors[i]: indices that must come earlier (lower priority).
    let mut predecessors: Vec<Vec<usize>> = vec![Vec::new(); universe.len()];
    for (i, r) in universe.iter().enumerate() {
        let Some(n_i) = &r.name else { continue };
        for (j, other) in universe.iter().enumerate() {
            let Some(n_j) = &other.name else { continue };
            if i != j && order.holds(n_j, n_i) {
                predecessors[i].push(j);
            }
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; universe.len()];
    extend_totals(
        &predecessors,
        &mut used,
        &mut current,
        &mut out,
        limits.max_extensions,
    )?;
    Ok(out)
}

fn extend_totals(
    predecessors: &[Vec<usize>],
    used: &mut Vec<bool>,
    current: &mut Vec<usize>,
    out: &mut Vec<TotalOrder>,
    max: usize,
) -> Result<(), OracleError> {
    if current.len() == predecessors.len() {
        if out.len() >= max {
            return Err(OracleError::TooManyExtensions {
                count: out.len() + 1,
                limit: max,
            });
        }
        out.push(TotalOrder {
            ascending: current.clone(),
        });
        return Ok(());
    }
    for i in 0..predecessors.len() {
        if used[i] || !predecessors[i].iter().all(|&p| used[p]) {
            continue;
        }
        used[i] = true;
        current.push(i);
        extend_totals(predecessors, used, current, out, max)?;
        current.pop();
        used[i] = false;
    }
    Ok(())
}

/// Builds the prerequisite-free reduction relative to `x` and a total
/// order: rules with underivable prerequisites are dropped, survivors
/// keep only their weak bodies, duplicates collapse onto the highest
/// ranked original. Returns the reduced rules highest priority first.
// Reduced rules are equal up to the order of their weak bodies.
type ReducedRuleKey = (Option<Literal>, BTreeSet<Literal>);

fn be_reduction(program: &[Rule], total: &TotalOrder, x: &LiteralSet) -> Vec<Rule> {
    let mut reduced: BTreeMap<ReducedRuleKey, usize> = BTreeMap::new();
    for &i in &total.ascending {
        let r = &program[i];
        if !x.contains_all(&r.pbody) {
            continue;
        }
        let key = (r.head.clone(), r.nbody.iter().cloned().collect());
        let rank = total.position(i).unwrap();
        let entry = reduced.entry(key).or_insert(rank);
        *entry = (*entry).max(rank);
    }
    let mut ranked: Vec<(usize, ReducedRuleKey)> =
        reduced.into_iter().map(|(key, rank)| (rank, key)).collect();
    ranked.sort_by_key(|(rank, _)| std::cmp::Reverse(*rank));
    ranked
        .into_iter()
        .map(|(_, (head, nbody))| Rule::new(None, head, vec![], nbody.into_iter().collect()))
        .collect()
}

/// Descriptive preferred-answer-set test: true iff `x` is a standard
/// answer set and the operator reconstruction reproduces it under some
/// total extension of the order.
pub fn be_preferred(
    program: &[Rule],
    order: &PreferenceOrder,
    x: &LiteralSet,
) -> Result<bool, OracleError> {
    be_preferred_with(program, order, x, &OracleLimits::default())
}

pub fn be_preferred_with(
    program: &[Rule],
    order: &PreferenceOrder,
    x: &LiteralSet,
    limits: &OracleLimits,
) -> Result<bool, OracleError> {
    Ok(be_preferred_extension(program, order, x, limits)?.is_some())
}

/// Like [`be_preferred`], but hands back the accepting total extension.
pub fn be_preferred_extension(
    program: &[Rule],
    order: &PreferenceOrder,
    x: &LiteralSet,
    limits: &OracleLimits,
) -> Result<Option<TotalOrder>, OracleError> {
    if !x.is_consistent() {
        return Err(OracleError::InconsistentCandidate);
    }
    if !is_answer_set(program, x) {
        return Ok(None);
    }
    for total in total_extensions_with(order, program, limits)? {
        let reduced = be_reduction(program, &total, x);
        if be_c_operator(&reduced, x)? == *x {
            return Ok(Some(total));
        }
    }
    Ok(None)
}

/// Closed-form test for a fully ordered program: `x` is preferred iff
/// every applicable rule with an underived head is defeated by the head
/// of some higher-ranked generating rule.
pub fn be_characterisation(program: &[Rule], total: &TotalOrder, x: &LiteralSet) -> bool {
    let gr = generating_rule_indices(program, x);
    program.iter().enumerate().all(|(i, r)| {
        let applicable =
            x.contains_all(&r.pbody) && r.head.as_ref().is_some_and(|h| !x.contains(h));
        if !applicable {
            return true;
        }
        gr.iter().any(|&g| {
            total.position(i).unwrap() < total.position(g).unwrap()
                && program[g]
                    .head
                    .as_ref()
                    .is_some_and(|h| r.nbody.contains(h))
        })
    })
}
