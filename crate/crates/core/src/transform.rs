//! Compilation strategies: the prescriptive translation and its static
//! simplification, the head-repetition variant, winner-takes-all, and
//! the guess-and-check family working over a primed mirror language.
//!
//! Every translation rewrites an ordered program into a plain extended
//! logic program whose answer sets, projected back onto the source
//! language, are exactly the answer sets selected by the strategy.

use crate::error::TransformError;
use crate::model::{
    desugar_constraint, validate_ordered, Atom, FreshAtoms, Literal, LiteralSet, OrderedProgram,
    PreferenceOrder, Rule, Sign, Term, PREC, PREC_PRIMED, PRIME_PREFIX,
};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Strategy selector for the compiler.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StrategyId {
    /// Dynamic prescriptive translation.
    T,
    /// Static simplification of `T`; requires a statically ordered input.
    Tstatic,
    /// `T` plus elimination of rules whose head is otherwise derived.
    W,
    /// Winner takes all: applying a higher rule withholds consideration
    /// from lower ones.
    Wta,
    /// Guess-and-check translation; preferences read from the guess.
    U,
    /// Variant of `U` forming preference information in the mirror
    /// language.
    V,
    /// Variant of `U` keeping groundedness in the mirror reconstruction.
    S,
}

impl StrategyId {
    pub const ALL: [StrategyId; 7] = [
        StrategyId::T,
        StrategyId::Tstatic,
        StrategyId::W,
        StrategyId::Wta,
        StrategyId::U,
        StrategyId::V,
        StrategyId::S,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            StrategyId::T => "T",
            StrategyId::Tstatic => "Tstatic",
            StrategyId::W => "W",
            StrategyId::Wta => "WTA",
            StrategyId::U => "U",
            StrategyId::V => "V",
            StrategyId::S => "S",
        }
    }

    fn uses_mirror(&self) -> bool {
        matches!(self, StrategyId::U | StrategyId::V | StrategyId::S)
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

impl FromStr for StrategyId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "T" => Ok(StrategyId::T),
            "Tstatic" => Ok(StrategyId::Tstatic),
            "W" => Ok(StrategyId::W),
            "WTA" => Ok(StrategyId::Wta),
            "U" => Ok(StrategyId::U),
            "V" => Ok(StrategyId::V),
            "S" => Ok(StrategyId::S),
            other => Err(format!(
                "unknown strategy `{other}` (use T|Tstatic|W|WTA|U|V|S)"
            )),
        }
    }
}

/// Constructors for the control atoms attached to rule names.
pub struct TagAtomFactory;

impl TagAtomFactory {
    pub fn applied(name: &Term) -> Atom {
        Atom::new("ap", vec![name.clone()])
    }

    pub fn blocked(name: &Term) -> Atom {
        Atom::new("bl", vec![name.clone()])
    }

    pub fn ok(name: &Term) -> Atom {
        Atom::new("ok", vec![name.clone()])
    }

    pub fn ready(name: &Term, other: &Term) -> Atom {
        Atom::new("rdy", vec![name.clone(), other.clone()])
    }

    pub fn name_fact(name: &Term) -> Atom {
        Atom::new("name", vec![name.clone()])
    }
}

/// Bijective renaming between the source language and a disjoint primed
/// namespace. Preference atoms map onto the dedicated `precp` predicate
/// so that name terms stay shared between the two languages.
pub struct PrimedMirror;

impl PrimedMirror {
    pub fn is_primed(atom: &Atom) -> bool {
        atom.predicate.starts_with(PRIME_PREFIX) || atom.predicate == PREC_PRIMED
    }

    pub fn prime_atom(atom: &Atom) -> Result<Atom, TransformError> {
        if Self::is_primed(atom) {
            return Err(TransformError::Invalid {
                report: format!("atom `{atom}` is already primed"),
            });
        }
        let predicate = if atom.is_preference() {
            PREC_PRIMED.to_string()
        } else {
            format!("{PRIME_PREFIX}{}", atom.predicate)
        };
        Ok(Atom::new(predicate, atom.args.clone()))
    }

    pub fn prime(literal: &Literal) -> Result<Literal, TransformError> {
        Ok(Literal {
            atom: Self::prime_atom(&literal.atom)?,
            sign: literal.sign,
        })
    }

    pub fn prime_rule(rule: &Rule) -> Result<Rule, TransformError> {
        let head = rule.head.as_ref().map(Self::prime).transpose()?;
        let pbody = rule
            .pbody
            .iter()
            .map(Self::prime)
            .collect::<Result<_, _>>()?;
        let nbody = rule
            .nbody
            .iter()
            .map(Self::prime)
            .collect::<Result<_, _>>()?;
        Ok(Rule::new(rule.name.clone(), head, pbody, nbody))
    }

    pub fn unprime_atom(atom: &Atom) -> Result<Atom, TransformError> {
        if atom.predicate == PREC_PRIMED {
            return Ok(Atom::new(PREC, atom.args.clone()));
        }
        match atom.predicate.strip_prefix(PRIME_PREFIX) {
            Some(orig) => Ok(Atom::new(orig, atom.args.clone())),
            None => Err(TransformError::Invalid {
                report: format!("atom `{atom}` is not primed"),
            }),
        }
    }
}

/// Positive preference literal `prec(lower, higher)`.
pub fn prec_literal(lower: &Term, higher: &Term) -> Literal {
    Literal::positive(Atom::prec(lower.clone(), higher.clone()))
}

/// The rule preference relation read off a literal set:
/// `(r, s)` for every `prec(n_r, n_s)` it contains.
pub fn extract_prec_relation(x: &LiteralSet) -> PreferenceOrder {
    let pairs = x
        .iter()
        .filter(|l| l.sign == Sign::Positive && l.atom.is_preference())
        .map(|l| (l.atom.args[0].clone(), l.atom.args[1].clone()))
        .collect();
    PreferenceOrder { pairs }
}

/// Output of a compilation strategy: the translated rules in their
/// deterministic emission order, plus the bookkeeping needed to emit
/// and to project answer sets back onto the source language.
#[derive(Clone, Debug)]
pub struct CompiledProgram {
    pub strategy: StrategyId,
    pub rules: Vec<Rule>,
    /// Names of the tagged rules, in source order.
    pub names: Vec<Term>,
    /// Atoms of the user language, for consistency constraints and the
    /// nice filter.
    pub user_atoms: BTreeSet<Atom>,
    pub user_predicates: BTreeSet<String>,
}

impl CompiledProgram {
    pub fn answer_sets(&self) -> BTreeSet<LiteralSet> {
        crate::semantics::answer_sets_search(&self.rules)
    }

    /// Projection onto the user alphabet (no preference atoms).
    pub fn project_user(&self, x: &LiteralSet) -> LiteralSet {
        let preds = self.user_predicates.clone();
        x.retain_predicates(move |a| preds.contains(&a.predicate))
    }

    /// Projection onto the source language: user atoms plus preference
    /// atoms.
    pub fn project_language(&self, x: &LiteralSet) -> LiteralSet {
        let preds = self.user_predicates.clone();
        x.retain_predicates(move |a| preds.contains(&a.predicate) || a.is_preference())
    }

    /// Consistent answer sets projected onto the user alphabet.
    pub fn user_answer_sets(&self) -> BTreeSet<LiteralSet> {
        self.answer_sets()
            .iter()
            .filter(|x| x.is_consistent())
            .map(|x| self.project_user(x))
            .collect()
    }
}

struct NamedRule {
    name: Term,
    rule: Rule,
}

/// Shared preparation: optional auto-naming, validation, groundness
/// check, and desugaring of named constraints (they need heads for
/// their images).
fn prepare(
    program: &OrderedProgram,
    tag_all: bool,
) -> Result<(OrderedProgram, Vec<NamedRule>), TransformError> {
    let program = if tag_all {
        program.tag_all()
    } else {
        program.clone()
    };
    let report = validate_ordered(&program);
    if !report.is_clean() {
        let lines: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
        return Err(TransformError::Invalid {
            report: lines.join("; "),
        });
    }
    if !program.is_ground() {
        return Err(TransformError::Invalid {
            report: "program must be ground (instantiate first)".to_string(),
        });
    }
    let mut fresh = FreshAtoms::for_program(&program);
    let rules: Vec<Rule> = program
        .rules
        .iter()
        .map(|r| {
            if r.is_constraint() && r.name.is_some() {
                desugar_constraint(r, fresh.fresh()).expect("constraint")
            } else {
                r.clone()
            }
        })
        .collect();
    let program = OrderedProgram::new(rules);
    let named = program
        .rules
        .iter()
        .filter(|r| r.name.is_some())
        .map(|r| NamedRule {
            name: r.name.clone().unwrap(),
            rule: r.clone(),
        })
        .collect();
    Ok((program, named))
}

fn ok_rule(name: &Term, over: &[Term]) -> Rule {
    let body = over
        .iter()
        .map(|s| Literal::positive(TagAtomFactory::ready(name, s)))
        .collect();
    Rule::new(
        None,
        Some(Literal::positive(TagAtomFactory::ok(name))),
        body,
        vec![],
    )
}

/// The image of one named rule under the prescriptive translation:
/// head restoration, applicability, blockage by missing prerequisite,
/// blockage by defeat, the ok rule over the tagged universe, and the
/// three readiness rules per universe member.
pub fn tau_t(name: &Term, rule: &Rule, universe: &[Term]) -> Vec<Rule> {
    let ap = Literal::positive(TagAtomFactory::applied(name));
    let bl = Literal::positive(TagAtomFactory::blocked(name));
    let ok = Literal::positive(TagAtomFactory::ok(name));
    let head = rule.head.clone().expect("named constraints are desugared");

    let mut out = Vec::new();
    // head(r) :- ap(n).
    out.push(Rule::new(None, Some(head), vec![ap.clone()], vec![]));
    // ap(n) :- ok(n), body(r).
    let mut pbody = vec![ok.clone()];
    pbody.extend(rule.pbody.iter().cloned());
    out.push(Rule::new(None, Some(ap.clone()), pbody, rule.nbody.clone()));
    // bl(n) :- ok(n), not L  for prerequisites L.
    for l in &rule.pbody {
        out.push(Rule::new(
            None,
            Some(bl.clone()),
            vec![ok.clone()],
            vec![l.clone()],
        ));
    }
    // bl(n) :- ok(n), K  for weakly negated K.
    for k in &rule.nbody {
        out.push(Rule::new(
            None,
            Some(bl.clone()),
            vec![ok.clone(), k.clone()],
            vec![],
        ));
    }
    // ok(n) :- rdy(n, n1), ..., rdy(n, nk).
    out.push(ok_rule(name, universe));
    // rdy(n, s) :- not prec(n, s).
    for s in universe {
        let rdy = Literal::positive(TagAtomFactory::ready(name, s));
        out.push(Rule::new(
            None,
            Some(rdy),
            vec![],
            vec![prec_literal(name, s)],
        ));
    }
    // rdy(n, s) :- prec(n, s), ap(s).
    for s in universe {
        let rdy = Literal::positive(TagAtomFactory::ready(name, s));
        let aps = Literal::positive(TagAtomFactory::applied(s));
        out.push(Rule::new(
            None,
            Some(rdy),
            vec![prec_literal(name, s), aps],
            vec![],
        ));
    }
    // rdy(n, s) :- prec(n, s), bl(s).
    for s in universe {
        let rdy = Literal::positive(TagAtomFactory::ready(name, s));
        let bls = Literal::positive(TagAtomFactory::blocked(s));
        out.push(Rule::new(
            None,
            Some(rdy),
            vec![prec_literal(name, s), bls],
            vec![],
        ));
    }
    out
}

fn transitivity_rules(universe: &[Term]) -> Vec<Rule> {
    let mut out = Vec::new();
    for x in universe {
        for y in universe {
            for z in universe {
                out.push(Rule::new(
                    None,
                    Some(prec_literal(x, z)),
                    vec![prec_literal(x, y), prec_literal(y, z)],
                    vec![],
                ));
            }
        }
    }
    out
}

fn antisymmetry_rules(universe: &[Term]) -> Vec<Rule> {
    let mut out = Vec::new();
    for x in universe {
        for y in universe {
            out.push(Rule::new(
                None,
                Some(prec_literal(y, x).complement()),
                vec![prec_literal(x, y)],
                vec![],
            ));
        }
    }
    out
}

fn name_facts(universe: &[Term]) -> Vec<Rule> {
    universe
        .iter()
        .map(|n| Rule::fact(Literal::positive(TagAtomFactory::name_fact(n))))
        .collect()
}

/// Pairwise consistency constraints `false :- A, neg_A` for every atom
/// of the given set, in sorted order.
fn consistency_constraints(atoms: &BTreeSet<Atom>) -> Vec<Rule> {
    atoms
        .iter()
        .map(|a| {
            Rule::constraint(
                vec![Literal::positive(a.clone()), Literal::negative(a.clone())],
                vec![],
            )
        })
        .collect()
}

fn prec_consistency_constraints(universe: &[Term], predicate: &str) -> Vec<Rule> {
    let mut out = Vec::new();
    for x in universe {
        for y in universe {
            let atom = Atom::new(predicate, vec![x.clone(), y.clone()]);
            out.push(Rule::constraint(
                vec![Literal::positive(atom.clone()), Literal::negative(atom)],
                vec![],
            ));
        }
    }
    out
}

fn dedup_rules(rules: Vec<Rule>) -> Vec<Rule> {
    let mut seen = BTreeSet::new();
    rules
        .into_iter()
        .filter(|r| seen.insert(r.clone()))
        .collect()
}

fn finish(
    strategy: StrategyId,
    source: &OrderedProgram,
    mut rules: Vec<Rule>,
    universe: Vec<Term>,
    with_prec_machinery: bool,
    with_primed_prec: bool,
) -> CompiledProgram {
    let user_atoms = source.user_atoms();
    if with_prec_machinery {
        rules.extend(transitivity_rules(&universe));
        rules.extend(antisymmetry_rules(&universe));
    }
    if with_primed_prec {
        // Mirror-language copies keeping the derived order strict.
        let primed = |r: &Rule| {
            let map = |l: &Literal| Literal {
                atom: Atom::new(PREC_PRIMED, l.atom.args.clone()),
                sign: l.sign,
            };
            Rule::new(
                None,
                r.head.as_ref().map(&map),
                r.pbody.iter().map(&map).collect(),
                r.nbody.iter().map(&map).collect(),
            )
        };
        let t: Vec<Rule> = transitivity_rules(&universe).iter().map(&primed).collect();
        let a: Vec<Rule> = antisymmetry_rules(&universe).iter().map(&primed).collect();
        rules.extend(t);
        rules.extend(a);
    }
    rules.extend(name_facts(&universe));
    rules.extend(consistency_constraints(&user_atoms));
    if strategy.uses_mirror() {
        let primed_atoms: BTreeSet<Atom> = user_atoms
            .iter()
            .map(|a| PrimedMirror::prime_atom(a).expect("user atoms are unprimed"))
            .collect();
        rules.extend(consistency_constraints(&primed_atoms));
    }
    if with_prec_machinery {
        rules.extend(prec_consistency_constraints(&universe, PREC));
    }
    if with_primed_prec {
        rules.extend(prec_consistency_constraints(&universe, PREC_PRIMED));
    }
    let user_predicates = user_atoms.iter().map(|a| a.predicate.clone()).collect();
    CompiledProgram {
        strategy,
        rules: dedup_rules(rules),
        names: universe,
        user_atoms,
        user_predicates,
    }
}

/// Which readiness rules a strategy family emits.
#[derive(Clone, Copy, PartialEq, Eq)]
enum TFlavor {
    Plain,
    HeadRepetition,
    WinnerTakesAll,
}

fn transform_t_family(
    program: &OrderedProgram,
    tag_all: bool,
    flavor: TFlavor,
    strategy: StrategyId,
) -> Result<CompiledProgram, TransformError> {
    let (prepared, named) = prepare(program, tag_all)?;
    let universe: Vec<Term> = named.iter().map(|n| n.name.clone()).collect();
    let mut rules = Vec::new();
    for r in &prepared.rules {
        match &r.name {
            None => rules.push(r.clone()),
            Some(name) => {
                let mut image = tau_t(name, r, &universe);
                if flavor == TFlavor::WinnerTakesAll {
                    // Drop the readiness-by-application rules: an applied
                    // higher rule then never releases the ones below it.
                    image.retain(|rule| {
                        !(rule.pbody.len() == 2
                            && rule.pbody[0].atom.is_preference()
                            && rule.pbody[1].atom.predicate == "ap")
                    });
                }
                rules.extend(image);
                if flavor == TFlavor::HeadRepetition {
                    // rdy(n, s) :- prec(n, s), head(s): a rule whose head
                    // is otherwise derived leaves the preference handling.
                    for s in &named {
                        let rdy = Literal::positive(TagAtomFactory::ready(name, &s.name));
                        let head = s.rule.head.clone().expect("desugared");
                        rules.push(Rule::new(
                            None,
                            Some(rdy),
                            vec![prec_literal(name, &s.name), head],
                            vec![],
                        ));
                    }
                }
            }
        }
    }
    let with_machinery = !universe.is_empty();
    Ok(finish(
        strategy,
        &prepared,
        rules,
        universe,
        with_machinery,
        false,
    ))
}

/// Dynamic prescriptive translation.
pub fn transform_t(
    program: &OrderedProgram,
    tag_all: bool,
) -> Result<CompiledProgram, TransformError> {
    transform_t_family(program, tag_all, TFlavor::Plain, StrategyId::T)
}

/// Dynamic translation with head-repetition readiness.
pub fn transform_w(
    program: &OrderedProgram,
    tag_all: bool,
) -> Result<CompiledProgram, TransformError> {
    transform_t_family(program, tag_all, TFlavor::HeadRepetition, StrategyId::W)
}

/// Winner-takes-all variant.
pub fn transform_wta(
    program: &OrderedProgram,
    tag_all: bool,
) -> Result<CompiledProgram, TransformError> {
    transform_t_family(program, tag_all, TFlavor::WinnerTakesAll, StrategyId::Wta)
}

/// Static simplification: the order is woven directly into the ok
/// bodies and no preference atoms remain in the output.
pub fn transform_t_static(
    program: &OrderedProgram,
    order: &PreferenceOrder,
) -> Result<CompiledProgram, TransformError> {
    if !program.is_statically_ordered()
        || program
            .rules
            .iter()
            .any(|r| r.literals().any(|l| l.atom.is_preference()))
    {
        return Err(TransformError::NotStatic);
    }
    let order = order.strictify()?;
    let (prepared, named) = prepare(program, false)?;
    let universe: Vec<Term> = named.iter().map(|n| n.name.clone()).collect();
    for (lower, higher) in &order.pairs {
        for t in [lower, higher] {
            if !universe.contains(t) {
                return Err(TransformError::Invalid {
                    report: format!("order mentions `{t}`, which names no rule"),
                });
            }
        }
    }
    let mut rules = Vec::new();
    for r in &prepared.rules {
        let Some(name) = &r.name else {
            rules.push(r.clone());
            continue;
        };
        let ap = Literal::positive(TagAtomFactory::applied(name));
        let bl = Literal::positive(TagAtomFactory::blocked(name));
        let ok = Literal::positive(TagAtomFactory::ok(name));
        let head = r.head.clone().expect("desugared");
        rules.push(Rule::new(None, Some(head), vec![ap.clone()], vec![]));
        let mut pbody = vec![ok.clone()];
        pbody.extend(r.pbody.iter().cloned());
        rules.push(Rule::new(None, Some(ap.clone()), pbody, r.nbody.clone()));
        for l in &r.pbody {
            rules.push(Rule::new(
                None,
                Some(bl.clone()),
                vec![ok.clone()],
                vec![l.clone()],
            ));
        }
        for k in &r.nbody {
            rules.push(Rule::new(
                None,
                Some(bl.clone()),
                vec![ok.clone(), k.clone()],
                vec![],
            ));
        }
        let higher = order.higher_than(name);
        rules.push(ok_rule(name, &higher));
        for s in &higher {
            let rdy = Literal::positive(TagAtomFactory::ready(name, s));
            let aps = Literal::positive(TagAtomFactory::applied(s));
            rules.push(Rule::new(None, Some(rdy.clone()), vec![aps], vec![]));
            let bls = Literal::positive(TagAtomFactory::blocked(s));
            rules.push(Rule::new(None, Some(rdy), vec![bls], vec![]));
        }
    }
    Ok(finish(
        StrategyId::Tstatic,
        &prepared,
        rules,
        universe,
        false,
        false,
    ))
}

/// Which guess-and-check variant to build.
#[derive(Clone, Copy, PartialEq, Eq)]
enum MirrorFlavor {
    /// Preferences read from the guessed answer set.
    Descriptive,
    /// Preferences formed in the mirror language.
    PrimedFormation,
    /// Grounded mirror reconstruction, no head-based elimination.
    Grounded,
}

fn transform_mirror_family(
    program: &OrderedProgram,
    tag_all: bool,
    flavor: MirrorFlavor,
    strategy: StrategyId,
) -> Result<CompiledProgram, TransformError> {
    let (prepared, named) = prepare(program, tag_all)?;
    let universe: Vec<Term> = named.iter().map(|n| n.name.clone()).collect();
    // The readiness rules read the preference relation either from the
    // guess or from its mirror reconstruction.
    let prec_atom = |lower: &Term, higher: &Term| -> Literal {
        match flavor {
            MirrorFlavor::PrimedFormation => {
                Literal::positive(Atom::new(PREC_PRIMED, vec![lower.clone(), higher.clone()]))
            }
            _ => prec_literal(lower, higher),
        }
    };

    // The original program is part of the image: it produces the guess.
    let mut rules: Vec<Rule> = prepared.rules.clone();
    let mut fresh = FreshAtoms::for_program(&prepared);

    for nr in &named {
        let name = &nr.name;
        let r = &nr.rule;
        let ap = Literal::positive(TagAtomFactory::applied(name));
        let bl = Literal::positive(TagAtomFactory::blocked(name));
        let ok = Literal::positive(TagAtomFactory::ok(name));
        let head = r.head.clone().expect("desugared");

        // head(r)' :- ap(n).
        rules.push(Rule::new(
            None,
            Some(PrimedMirror::prime(&head)?),
            vec![ap.clone()],
            vec![],
        ));
        // Applicability, reading prerequisites from the guess.
        match flavor {
            MirrorFlavor::Grounded => {
                // ap(n) :- ok(n), body(r), body(r').
                let mut pbody = vec![ok.clone()];
                pbody.extend(r.pbody.iter().cloned());
                for l in &r.pbody {
                    pbody.push(PrimedMirror::prime(l)?);
                }
                let mut nbody = r.nbody.clone();
                for k in &r.nbody {
                    nbody.push(PrimedMirror::prime(k)?);
                }
                rules.push(Rule::new(None, Some(ap.clone()), pbody, nbody));
            }
            _ => {
                // ap(n) :- ok(n), body(r), not nbody(r)'.
                let mut pbody = vec![ok.clone()];
                pbody.extend(r.pbody.iter().cloned());
                let mut nbody = r.nbody.clone();
                for k in &r.nbody {
                    nbody.push(PrimedMirror::prime(k)?);
                }
                rules.push(Rule::new(None, Some(ap.clone()), pbody, nbody));
            }
        }
        // bl(n) :- ok(n), not L, not L'.
        for l in &r.pbody {
            rules.push(Rule::new(
                None,
                Some(bl.clone()),
                vec![ok.clone()],
                vec![l.clone(), PrimedMirror::prime(l)?],
            ));
        }
        // bl(n) :- ok(n), K, K'.
        for k in &r.nbody {
            rules.push(Rule::new(
                None,
                Some(bl.clone()),
                vec![ok.clone(), k.clone(), PrimedMirror::prime(k)?],
                vec![],
            ));
        }
        // ok(n) :- rdy(n, n1), ..., rdy(n, nk).
        rules.push(ok_rule(name, &universe));
        // rdy(n, s) :- not prec(n, s).
        for s in &universe {
            let rdy = Literal::positive(TagAtomFactory::ready(name, s));
            rules.push(Rule::new(None, Some(rdy), vec![], vec![prec_atom(name, s)]));
        }
        // rdy(n, s) :- prec(n, s), ap(s).
        for s in &universe {
            let rdy = Literal::positive(TagAtomFactory::ready(name, s));
            let aps = Literal::positive(TagAtomFactory::applied(s));
            rules.push(Rule::new(
                None,
                Some(rdy),
                vec![prec_atom(name, s), aps],
                vec![],
            ));
        }
        // rdy(n, s) :- prec(n, s), bl(s).
        for s in &universe {
            let rdy = Literal::positive(TagAtomFactory::ready(name, s));
            let bls = Literal::positive(TagAtomFactory::blocked(s));
            rules.push(Rule::new(
                None,
                Some(rdy),
                vec![prec_atom(name, s), bls],
                vec![],
            ));
        }
        // rdy(n, s) :- head(s), J for J in nbody(s): rules whose head is
        // derived although they are defeated leave the handling process.
        if flavor != MirrorFlavor::Grounded {
            for s in &named {
                let shead = s.rule.head.clone().expect("desugared");
                for j in &s.rule.nbody {
                    let rdy = Literal::positive(TagAtomFactory::ready(name, &s.name));
                    rules.push(Rule::new(
                        None,
                        Some(rdy),
                        vec![shead.clone(), j.clone()],
                        vec![],
                    ));
                }
            }
        }
        // Desugared integrity constraint requiring ok(n).
        let de = Rule::constraint(vec![], vec![ok.clone()]);
        rules.push(desugar_constraint(&de, fresh.fresh()).expect("constraint"));
    }
    let with_primed_prec = flavor == MirrorFlavor::PrimedFormation;
    Ok(finish(
        strategy,
        &prepared,
        rules,
        universe,
        true,
        with_primed_prec,
    ))
}

/// Guess-and-check translation reading preferences from the guess.
pub fn transform_u(
    program: &OrderedProgram,
    tag_all: bool,
) -> Result<CompiledProgram, TransformError> {
    transform_mirror_family(program, tag_all, MirrorFlavor::Descriptive, StrategyId::U)
}

/// Guess-and-check translation forming preferences in the mirror
/// language.
pub fn transform_v(
    program: &OrderedProgram,
    tag_all: bool,
) -> Result<CompiledProgram, TransformError> {
    transform_mirror_family(
        program,
        tag_all,
        MirrorFlavor::PrimedFormation,
        StrategyId::V,
    )
}

/// Guess-and-check translation with grounded mirror reconstruction.
pub fn transform_s(
    program: &OrderedProgram,
    tag_all: bool,
) -> Result<CompiledProgram, TransformError> {
    transform_mirror_family(program, tag_all, MirrorFlavor::Grounded, StrategyId::S)
}

/// Adds the transitivity and antisymmetry rules over the name universe,
/// making derived preference information a strict partial order.
pub fn ta_closure(program: &OrderedProgram) -> OrderedProgram {
    let mut universe: Vec<Term> = Vec::new();
    for r in &program.rules {
        if let Some(n) = &r.name {
            if !universe.contains(n) {
                universe.push(n.clone());
            }
        }
        for l in r.literals() {
            if l.atom.is_preference() {
                for t in &l.atom.args {
                    if !universe.contains(t) {
                        universe.push(t.clone());
                    }
                }
            }
        }
    }
    let mut rules = program.rules.clone();
    rules.extend(transitivity_rules(&universe));
    rules.extend(antisymmetry_rules(&universe));
    OrderedProgram::new(dedup_rules(rules))
}

/// Strategy dispatch used by the command line driver. `Tstatic` splits
/// the preference facts off as an external order first.
pub fn transform(
    program: &OrderedProgram,
    strategy: StrategyId,
    tag_all: bool,
) -> Result<CompiledProgram, TransformError> {
    match strategy {
        StrategyId::T => transform_t(program, tag_all),
        StrategyId::W => transform_w(program, tag_all),
        StrategyId::Wta => transform_wta(program, tag_all),
        StrategyId::U => transform_u(program, tag_all),
        StrategyId::V => transform_v(program, tag_all),
        StrategyId::S => transform_s(program, tag_all),
        StrategyId::Tstatic => {
            if !program.is_statically_ordered() {
                return Err(TransformError::NotStatic);
            }
            let (rest, order) = program.split_static();
            let rest = if tag_all { rest.tag_all() } else { rest };
            transform_t_static(&rest, &order)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_program, SourceProgram};
    use std::collections::BTreeSet;

    fn parse(text: &str) -> OrderedProgram {
        parse_program(&SourceProgram::from_text(text)).unwrap()
    }

    fn lits(items: &[&str]) -> LiteralSet {
        LiteralSet::from_literals(items.iter().map(|s| {
            if let Some(rest) = s.strip_prefix('-') {
                Literal::neg(rest)
            } else {
                Literal::pos(s)
            }
        }))
    }

    fn user_sets(compiled: &CompiledProgram) -> BTreeSet<LiteralSet> {
        compiled.user_answer_sets()
    }

    fn setset(items: &[&[&str]]) -> BTreeSet<LiteralSet> {
        items.iter().map(|x| lits(x)).collect()
    }

    /// The four-rule program with a dynamically derived preference.
    fn dynamic_example() -> OrderedProgram {
        parse(
            "neg a.
             b :- name(n2), neg a, not c.
             c :- name(n3), not b.
             (n3 < n2) :- not d.",
        )
    }

    /// Birds and penguins with the contraposition rule ranked highest.
    fn birds_static() -> OrderedProgram {
        parse(
            "neg f :- [n1], p, not f.
             w :- [n2], b, not neg w.
             f :- [n3], w, not neg f.
             b :- [n4], p.
             p :- [n5].
             (n2 < n1).",
        )
    }

    #[test]
    fn image_size_of_one_rule() {
        let p = dynamic_example();
        let r2 = &p.rules[1];
        let universe: Vec<Term> = p.names();
        let image = tau_t(r2.name.as_ref().unwrap(), r2, &universe);
        // Head restoration and applicability, one blockage rule per body
        // literal, the ok rule, and three readiness rules per universe
        // member.
        let body = r2.pbody.len() + r2.nbody.len();
        assert_eq!(image.len(), 2 + body + 1 + 3 * universe.len());
    }

    #[test]
    fn image_of_a_fact_has_no_blockage_rules() {
        let p = parse("p :- [n1].");
        let r = &p.rules[0];
        let image = tau_t(r.name.as_ref().unwrap(), r, &p.names());
        // Two application rules, the ok rule, three readiness rules.
        assert_eq!(image.len(), 6);
        let bl = Literal::positive(TagAtomFactory::blocked(r.name.as_ref().unwrap()));
        assert!(image.iter().all(|rule| rule.head.as_ref() != Some(&bl)));
    }

    #[test]
    fn image_contains_the_displayed_rules() {
        let p = dynamic_example();
        let r2 = &p.rules[1];
        let n2 = r2.name.clone().unwrap();
        let universe = p.names();
        let image = tau_t(&n2, r2, &universe);
        let ok = Literal::positive(TagAtomFactory::ok(&n2));
        let ap = Literal::positive(TagAtomFactory::applied(&n2));
        let bl = Literal::positive(TagAtomFactory::blocked(&n2));
        // ap(n2) :- ok(n2), neg a, not c.
        assert!(image.contains(&Rule::new(
            None,
            Some(ap),
            vec![ok.clone(), Literal::neg("a")],
            vec![Literal::pos("c")],
        )));
        // bl(n2) :- ok(n2), not neg a.
        assert!(image.contains(&Rule::new(
            None,
            Some(bl.clone()),
            vec![ok.clone()],
            vec![Literal::neg("a")],
        )));
        // bl(n2) :- ok(n2), c.
        assert!(image.contains(&Rule::new(
            None,
            Some(bl),
            vec![ok, Literal::pos("c")],
            vec![],
        )));
    }

    #[test]
    fn dynamic_translation_selects_the_respecting_answer_set() {
        let compiled = transform_t(&dynamic_example(), false).unwrap();
        let sets = compiled.answer_sets();
        assert_eq!(sets.len(), 1);
        let x = sets.into_iter().next().unwrap();
        assert_eq!(compiled.project_user(&x), lits(&["-a", "b"]));
        assert!(x.contains(&prec_literal(&Term::constant("n3"), &Term::constant("n2"))));
    }

    #[test]
    fn preference_free_programs_keep_their_answer_sets() {
        let p = parse("neg a :- [n1]. b :- [n2], neg a, not c. c :- [n3], not b.");
        let standard = crate::semantics::answer_sets_search(&p.rules);
        for strategy in [StrategyId::T, StrategyId::W, StrategyId::Wta] {
            let compiled = transform(&p, strategy, false).unwrap();
            assert_eq!(
                user_sets(&compiled),
                standard,
                "conservativity failed for {strategy}"
            );
        }
    }

    #[test]
    fn static_translation_selects_one_bird_answer_set() {
        let compiled = transform(&birds_static(), StrategyId::Tstatic, false).unwrap();
        assert_eq!(user_sets(&compiled), setset(&[&["p", "b", "w", "-f"]]));
        // No preference atoms anywhere in the static image.
        assert!(compiled
            .rules
            .iter()
            .all(|r| r.literals().all(|l| !l.atom.is_preference())));
    }

    #[test]
    fn static_translation_with_empty_order_releases_everything() {
        let p = parse("neg f :- [n1], p, not f. w :- [n2], b, not neg w. f :- [n3], w, not neg f. b :- [n4], p. p :- [n5].");
        let compiled = transform(&p, StrategyId::Tstatic, false).unwrap();
        // Every ok atom becomes a fact.
        for n in &compiled.names {
            assert!(compiled
                .rules
                .contains(&Rule::fact(Literal::positive(TagAtomFactory::ok(n)))));
        }
        assert_eq!(
            user_sets(&compiled),
            setset(&[&["p", "b", "w", "-f"], &["p", "b", "w", "f"]])
        );
    }

    #[test]
    fn inconsistent_answer_sets_survive_the_static_translation_only() {
        let p = parse("p :- [n1]. neg p :- [n2].");
        let stat = transform(&p, StrategyId::Tstatic, false).unwrap();
        assert!(stat.answer_sets().contains(&LiteralSet::Inconsistent));
        let dynamic = transform_t(&p, false).unwrap();
        assert!(dynamic.answer_sets().is_empty());
    }

    /// A rule preferred to an applicable rule whose head is also given
    /// as a fact.
    fn head_repeat() -> OrderedProgram {
        parse(
            "a :- [n1], not neg a.
             b :- [n2], a, not neg b.
             b :- [n3].
             (n1 < n2).",
        )
    }

    #[test]
    fn head_repetition_variant_accepts_where_the_plain_one_refuses() {
        let p = head_repeat();
        let plain = transform_t(&p, false).unwrap();
        assert!(plain.answer_sets().is_empty());
        let weakened = transform_w(&p, false).unwrap();
        assert_eq!(user_sets(&weakened), setset(&[&["a", "b"]]));
    }

    #[test]
    fn head_repetition_rules_only_fire_with_a_preference() {
        let p = parse("a :- [n1], not b. b :- [n2], not a.");
        let compiled = transform_w(&p, false).unwrap();
        assert_eq!(user_sets(&compiled), setset(&[&["a"], &["b"]]));
    }

    /// Specificity chain: swims over flies over walks, with strict rules
    /// deriving the class hierarchy.
    fn locomotion(defeater: bool) -> OrderedProgram {
        let base = "w :- [n1], a, not neg w.
             f :- [n2], b, not neg f.
             s :- [n3], p, not neg s.
             a :- b.
             b :- p.
             p.
             (n1 < n2).
             (n2 < n3).";
        if defeater {
            parse(&format!("{base}\nneg s."))
        } else {
            parse(base)
        }
    }

    #[test]
    fn winner_takes_all_withholds_lower_defaults_after_application() {
        // The most specific default applies; nothing below it is
        // considered, so neither f nor w is derived.
        let compiled = transform_wta(&locomotion(false), false).unwrap();
        assert_eq!(user_sets(&compiled), setset(&[&["p", "b", "a", "s"]]));
        // The plain translation walks down the whole chain.
        let plain = transform_t(&locomotion(false), false).unwrap();
        assert_eq!(
            user_sets(&plain),
            setset(&[&["p", "b", "a", "s", "f", "w"]])
        );
    }

    #[test]
    fn winner_takes_all_passes_on_to_the_next_default_only_via_blockage() {
        // The top default is defeated outright, which still counts as
        // settled; the chain then stops after the first applied rule.
        let compiled = transform_wta(&locomotion(true), false).unwrap();
        assert_eq!(user_sets(&compiled), setset(&[&["p", "b", "a", "-s", "f"]]));
    }

    #[test]
    fn winner_takes_all_drops_the_application_readiness_rules() {
        let compiled = transform_wta(&locomotion(false), false).unwrap();
        assert!(compiled.rules.iter().all(|r| {
            !(r.head.as_ref().is_some_and(|h| h.atom.predicate == "rdy")
                && r.pbody.len() == 2
                && r.pbody[0].atom.is_preference()
                && r.pbody[1].atom.predicate == "ap")
        }));
        let single = parse("p :- [n1], not q.");
        let wta = transform_wta(&single, false).unwrap();
        assert_eq!(user_sets(&wta), setset(&[&["p"]]));
    }

    #[test]
    fn priming_is_a_bijective_rename() {
        let b = Literal::pos("b");
        let primed = PrimedMirror::prime(&b).unwrap();
        assert_eq!(primed.atom.predicate, format!("{PRIME_PREFIX}b"));
        assert_eq!(PrimedMirror::unprime_atom(&primed.atom).unwrap(), b.atom);
        assert!(PrimedMirror::prime(&primed).is_err());

        let prec = prec_literal(&Term::constant("n1"), &Term::constant("n2"));
        let primed_prec = PrimedMirror::prime(&prec).unwrap();
        assert_eq!(primed_prec.atom.predicate, PREC_PRIMED);
        assert_eq!(primed_prec.atom.args, prec.atom.args);
    }

    #[test]
    fn primed_rule_of_a_guessing_rule() {
        let p = parse("b :- [n1], a, not neg b.");
        let primed = PrimedMirror::prime_rule(&p.rules[0]).unwrap();
        assert_eq!(
            primed.head.unwrap().atom.predicate,
            format!("{PRIME_PREFIX}b")
        );
        assert_eq!(primed.pbody[0].atom.predicate, format!("{PRIME_PREFIX}a"));
        assert_eq!(primed.nbody[0].atom.predicate, format!("{PRIME_PREFIX}b"));
        assert_eq!(primed.nbody[0].sign, Sign::Negative);
    }

    /// Three rules under a full chain; the reconstruction accepts only
    /// the answer set applying the top rule.
    fn guess_check_static() -> OrderedProgram {
        parse(
            "b :- [n1], a, not neg b.
             neg b :- [n2], not b.
             a :- [n3], not neg a.
             (n2 < n1). (n3 < n1). (n3 < n2).",
        )
    }

    #[test]
    fn descriptive_translation_on_the_guess_check_program() {
        let compiled = transform_u(&guess_check_static(), false).unwrap();
        assert_eq!(user_sets(&compiled), setset(&[&["a", "b"]]));
    }

    /// Four rules under a full chain with no acceptable answer set.
    fn no_preferred_static() -> OrderedProgram {
        parse(
            "a :- [n1], not b.
             neg a :- [n2], not a.
             a :- [n3], not neg a.
             b :- [n4], not neg b.
             (n2 < n1). (n3 < n1). (n4 < n1).
             (n3 < n2). (n4 < n2). (n4 < n3).",
        )
    }

    #[test]
    fn descriptive_translation_can_refuse_every_answer_set() {
        let compiled = transform_u(&no_preferred_static(), false).unwrap();
        assert!(compiled.answer_sets().is_empty());
    }

    /// Dynamic pair: preferences about a rule that itself derives
    /// preference information.
    fn preference_about_preference() -> OrderedProgram {
        parse(
            "a :- [n1], not neg a.
             b :- [n2], not neg b.
             (n1 < n2) :- [n3].
             (n3 < n1) :- [n4].",
        )
    }

    #[test]
    fn descriptive_and_formation_variants_split_on_dominated_preference_rules() {
        let p = preference_about_preference();
        let u = transform_u(&p, false).unwrap();
        let sets = u.answer_sets();
        assert_eq!(sets.len(), 1);
        let x = sets.into_iter().next().unwrap();
        assert_eq!(u.project_user(&x), lits(&["a", "b"]));
        assert!(x.contains(&prec_literal(&Term::constant("n1"), &Term::constant("n2"))));
        assert!(x.contains(&prec_literal(&Term::constant("n3"), &Term::constant("n1"))));

        let v = transform_v(&p, false).unwrap();
        assert!(v.answer_sets().is_empty());
    }

    /// Preference derived from the very literals its rules conclude.
    fn self_supported_preference() -> OrderedProgram {
        parse(
            "a :- [n1], not neg a.
             b :- [n2], not neg b.
             (n1 < n2) :- [n3], a, b.",
        )
    }

    #[test]
    fn guess_based_variants_accept_ungrounded_preferences() {
        let p = self_supported_preference();
        for (label, compiled) in [
            ("U", transform_u(&p, false).unwrap()),
            ("V", transform_v(&p, false).unwrap()),
            ("S", transform_s(&p, false).unwrap()),
        ] {
            let sets = compiled.answer_sets();
            assert_eq!(sets.len(), 1, "{label}");
            let x = sets.into_iter().next().unwrap();
            assert_eq!(compiled.project_user(&x), lits(&["a", "b"]), "{label}");
            assert!(
                x.contains(&prec_literal(&Term::constant("n1"), &Term::constant("n2"))),
                "{label}"
            );
        }
        let t = transform_t(&p, false).unwrap();
        assert!(t.answer_sets().is_empty());
    }

    #[test]
    fn grounded_variant_accepts_guessed_preferences() {
        let s = transform_s(&preference_about_preference(), false).unwrap();
        assert_eq!(s.answer_sets().len(), 1);
    }

    #[test]
    fn grounded_variant_selects_the_prescriptive_answer_set_statically() {
        let compiled = transform_s(&birds_static(), false).unwrap();
        assert_eq!(user_sets(&compiled), setset(&[&["p", "b", "w", "-f"]]));
    }

    #[test]
    fn mirror_translations_are_conservative_without_preferences() {
        let p = parse("neg a :- [n1]. b :- [n2], neg a, not c. c :- [n3], not b.");
        let standard = crate::semantics::answer_sets_search(&p.rules);
        for strategy in [StrategyId::U, StrategyId::V, StrategyId::S] {
            let compiled = transform(&p, strategy, false).unwrap();
            assert_eq!(
                user_sets(&compiled),
                standard,
                "conservativity failed for {strategy}"
            );
        }
    }

    #[test]
    fn order_closure_counts() {
        let p = parse("a :- [n1], not b. b :- [n2], not a. (n1 < n2).");
        let ta = ta_closure(&p);
        let t_rules = ta
            .rules
            .iter()
            .filter(|r| {
                r.head
                    .as_ref()
                    .is_some_and(|h| h.sign == Sign::Positive && h.atom.is_preference())
                    && !r.pbody.is_empty()
            })
            .count();
        let as_rules = ta
            .rules
            .iter()
            .filter(|r| r.head.as_ref().is_some_and(|h| h.sign == Sign::Negative))
            .count();
        assert_eq!(t_rules, 8);
        assert_eq!(as_rules, 4);
        // Without preference atoms the closure rules never fire.
        let q = parse("a :- [n1], not b. b :- [n2], not a.");
        let ta_q = ta_closure(&q);
        assert_eq!(
            crate::semantics::answer_sets_search(&ta_q.rules),
            crate::semantics::answer_sets_search(&q.rules)
        );
    }

    #[test]
    fn static_dispatch_rejects_dynamic_programs() {
        let p = dynamic_example();
        assert!(matches!(
            transform(&p, StrategyId::Tstatic, false),
            Err(TransformError::NotStatic)
        ));
    }

    #[test]
    fn unknown_preference_names_fail_validation() {
        let p = parse("a :- [n1]. (n1 < n9).");
        assert!(matches!(
            transform_t(&p, false),
            Err(TransformError::Invalid { .. })
        ));
    }

    #[test]
    fn tag_all_recovers_the_fully_named_translation() {
        let p = parse("neg a. b :- neg a, not c. c :- not b.");
        let compiled = transform_t(&p, true).unwrap();
        assert_eq!(compiled.names.len(), 3);
        assert!(compiled
            .names
            .iter()
            .all(|n| n.to_string().starts_with("__r")));
        assert_eq!(user_sets(&compiled), setset(&[&["-a", "b"], &["-a", "c"]]));
    }

    #[test]
    fn prec_relation_extraction() {
        let compiled = transform_t(&dynamic_example(), false).unwrap();
        let x = compiled.answer_sets().into_iter().next().unwrap();
        let rel = extract_prec_relation(&x);
        assert!(rel.holds(&Term::constant("n3"), &Term::constant("n2")));
        assert_eq!(rel.pairs.len(), 1);
    }
}
