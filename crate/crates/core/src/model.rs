//! Data model for extended logic programs with rule names and preference
//! atoms: terms, atoms, literals, rules, programs, literal sets, and
//! strict partial orders over rule names.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Reserved predicate for preference atoms: `prec(s, t)` states that the
/// rule named `t` has higher priority than the rule named `s`.
pub const PREC: &str = "prec";
/// Primed copy of `prec`, used by the translation that forms preference
/// information in the mirrored language.
pub const PREC_PRIMED: &str = "precp";
/// Prefix marking the strongly negated version of a predicate in the
/// flat internal spelling (`neg_a` for `¬a`).
pub const NEG_PREFIX: &str = "neg_";
/// Prefix for predicates of the primed (mirror) language.
pub const PRIME_PREFIX: &str = "__p_";
/// Prefix for fresh atoms introduced when desugaring constraints.
pub const FRESH_PREFIX: &str = "__c";
/// Prefix for automatically generated rule names (`--tag-all`).
pub const AUTONAME_PREFIX: &str = "__r";

/// Tag predicates introduced by the translations. They may not occur in
/// user input.
pub const TAG_PREDICATES: &[&str] = &[
    "ap",
    "bl",
    "ok",
    "rdy",
    "name",
    "neg_prec",
    "precp",
    "neg_precp",
];

/// A term: a constant, a variable (leading uppercase), or a compound
/// term `f(t1, ..., tn)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
    Compound(String, Vec<Term>),
}

impl Term {
    pub fn constant(s: impl Into<String>) -> Self {
        Term::Const(s.into())
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Const(_) => true,
            Term::Var(_) => false,
            Term::Compound(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Compound(_, args) => {
                for t in args {
                    t.collect_vars(out);
                }
            }
        }
    }

    pub fn collect_consts(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(c) => {
                out.insert(c.clone());
            }
            Term::Var(_) => {}
            Term::Compound(_, args) => {
                for t in args {
                    t.collect_consts(out);
                }
            }
        }
    }

    pub fn substitute(&self, subst: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Const(_) => self.clone(),
            Term::Var(v) => subst.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::Compound(f, args) => Term::Compound(
                f.clone(),
                args.iter().map(|t| t.substitute(subst)).collect(),
            ),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => write!(f, "{c}"),
            Term::Var(v) => write!(f, "{v}"),
            Term::Compound(functor, args) => {
                write!(f, "{functor}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// An atom `p(t1, ..., tn)`. Atoms with predicate [`PREC`] and two
/// arguments form the preference category; all others are regular.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn propositional(predicate: impl Into<String>) -> Self {
        Atom::new(predicate, vec![])
    }

    /// The preference atom `prec(lower, higher)`.
    pub fn prec(lower: Term, higher: Term) -> Self {
        Atom::new(PREC, vec![lower, higher])
    }

    pub fn is_preference(&self) -> bool {
        self.predicate == PREC && self.args.len() == 2
    }

    pub fn is_primed_preference(&self) -> bool {
        self.predicate == PREC_PRIMED && self.args.len() == 2
    }

    /// True for atoms generated by the compiler (tags, primed copies,
    /// fresh constraint atoms).
    pub fn is_internal(&self) -> bool {
        TAG_PREDICATES.contains(&self.predicate.as_str()) || self.predicate.starts_with("__")
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    pub fn substitute(&self, subst: &BTreeMap<String, Term>) -> Atom {
        Atom::new(
            self.predicate.clone(),
            self.args.iter().map(|t| t.substitute(subst)).collect(),
        )
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate)?;
        if !self.args.is_empty() {
            write!(f, "(")?;
            for (i, a) in self.args.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

/// A literal: an atom or its strong negation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub sign: Sign,
}

impl Literal {
    pub fn positive(atom: Atom) -> Self {
        Literal {
            atom,
            sign: Sign::Positive,
        }
    }

    pub fn negative(atom: Atom) -> Self {
        Literal {
            atom,
            sign: Sign::Negative,
        }
    }

    pub fn pos(name: &str) -> Self {
        Literal::positive(Atom::propositional(name))
    }

    pub fn neg(name: &str) -> Self {
        Literal::negative(Atom::propositional(name))
    }

    /// Flips the sign, leaving the atom untouched.
    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom.clone(),
            sign: match self.sign {
                Sign::Positive => Sign::Negative,
                Sign::Negative => Sign::Positive,
            },
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }

    pub fn substitute(&self, subst: &BTreeMap<String, Term>) -> Literal {
        Literal {
            atom: self.atom.substitute(subst),
            sign: self.sign,
        }
    }

    /// The flat internal spelling used in emitted files, answer set
    /// printing and candidate files: `neg_` fused onto the predicate.
    pub fn internal_spelling(&self) -> String {
        match self.sign {
            Sign::Positive => self.atom.to_string(),
            Sign::Negative => format!("{NEG_PREFIX}{}", self.atom),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.internal_spelling())
    }
}

/// A rule `head :- pbody, not nbody`, optionally named. A missing head
/// makes the rule an integrity constraint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub name: Option<Term>,
    pub head: Option<Literal>,
    pub pbody: Vec<Literal>,
    pub nbody: Vec<Literal>,
}

impl Rule {
    /// Builds a rule, dropping duplicate body literals while keeping the
    /// first occurrence of each.
    pub fn new(
        name: Option<Term>,
        head: Option<Literal>,
        pbody: Vec<Literal>,
        nbody: Vec<Literal>,
    ) -> Self {
        Rule {
            name,
            head,
            pbody: dedup_keep_order(pbody),
            nbody: dedup_keep_order(nbody),
        }
    }

    pub fn fact(head: Literal) -> Self {
        Rule::new(None, Some(head), vec![], vec![])
    }

    pub fn constraint(pbody: Vec<Literal>, nbody: Vec<Literal>) -> Self {
        Rule::new(None, None, pbody, nbody)
    }

    pub fn named(mut self, name: Term) -> Self {
        self.name = Some(name);
        self
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_none()
    }

    pub fn is_fact(&self) -> bool {
        self.head.is_some() && self.pbody.is_empty() && self.nbody.is_empty()
    }

    pub fn is_basic(&self) -> bool {
        self.nbody.is_empty()
    }

    pub fn is_prerequisite_free(&self) -> bool {
        self.pbody.is_empty()
    }

    pub fn is_ground(&self) -> bool {
        self.name.as_ref().is_none_or(Term::is_ground)
            && self.head.as_ref().is_none_or(Literal::is_ground)
            && self.pbody.iter().all(Literal::is_ground)
            && self.nbody.iter().all(Literal::is_ground)
    }

    /// All literals of the rule: head, prerequisites, weakly negated part.
    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.head
            .iter()
            .chain(self.pbody.iter())
            .chain(self.nbody.iter())
    }

    pub fn collect_vars(&self) -> BTreeSet<String> {
        let mut vars = BTreeSet::new();
        if let Some(n) = &self.name {
            n.collect_vars(&mut vars);
        }
        for l in self.literals() {
            for t in &l.atom.args {
                t.collect_vars(&mut vars);
            }
        }
        vars
    }

    pub fn substitute(&self, subst: &BTreeMap<String, Term>) -> Rule {
        Rule::new(
            self.name.as_ref().map(|n| n.substitute(subst)),
            self.head.as_ref().map(|h| h.substitute(subst)),
            self.pbody.iter().map(|l| l.substitute(subst)).collect(),
            self.nbody.iter().map(|l| l.substitute(subst)).collect(),
        )
    }
}

fn dedup_keep_order(literals: Vec<Literal>) -> Vec<Literal> {
    let mut seen = BTreeSet::new();
    literals
        .into_iter()
        .filter(|l| seen.insert(l.clone()))
        .collect()
}

impl fmt::Display for Rule {
    /// Flat internal spelling, with the name as a prefix tag.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            write!(f, "{n}: ")?;
        }
        match &self.head {
            Some(h) => write!(f, "{h}")?,
            None => write!(f, "false")?,
        }
        if !self.pbody.is_empty() || !self.nbody.is_empty() {
            write!(f, " :- ")?;
            let mut first = true;
            for l in &self.pbody {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "{l}")?;
                first = false;
            }
            for l in &self.nbody {
                if !first {
                    write!(f, ", ")?;
                }
                write!(f, "not {l}")?;
                first = false;
            }
        }
        write!(f, ".")
    }
}

/// Returns true iff the rule's weakly negated body intersects `x`.
pub fn defeated(rule: &Rule, x: &LiteralSet) -> bool {
    match x {
        LiteralSet::Inconsistent => !rule.nbody.is_empty(),
        LiteralSet::Consistent(set) => rule.nbody.iter().any(|l| set.contains(l)),
    }
}

/// A finite set of rules with an injective naming over the named ones.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OrderedProgram {
    pub rules: Vec<Rule>,
}

impl OrderedProgram {
    pub fn new(rules: Vec<Rule>) -> Self {
        OrderedProgram { rules }
    }

    pub fn is_ground(&self) -> bool {
        self.rules.iter().all(Rule::is_ground)
    }

    /// Names of the named rules, in rule order.
    pub fn names(&self) -> Vec<Term> {
        self.rules.iter().filter_map(|r| r.name.clone()).collect()
    }

    /// All atoms of the user language: every atom occurring in the
    /// program outside the preference category.
    pub fn user_atoms(&self) -> BTreeSet<Atom> {
        self.rules
            .iter()
            .flat_map(Rule::literals)
            .map(|l| l.atom.clone())
            .filter(|a| !a.is_preference() && !a.is_internal())
            .collect()
    }

    pub fn user_predicates(&self) -> BTreeSet<String> {
        self.user_atoms().into_iter().map(|a| a.predicate).collect()
    }

    /// Gives every unnamed rule a generated name `__r<i>` (by rule index).
    pub fn tag_all(&self) -> OrderedProgram {
        let rules = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                if r.name.is_none() {
                    r.name = Some(Term::constant(format!("{AUTONAME_PREFIX}{i}")));
                }
                r
            })
            .collect();
        OrderedProgram::new(rules)
    }

    /// Splits the program into preference facts and the remaining rules,
    /// for statically ordered inputs. Rule names on preference facts are
    /// discarded: the fact itself carries the whole order contribution.
    pub fn split_static(&self) -> (OrderedProgram, PreferenceOrder) {
        let mut rest = Vec::new();
        let mut pairs = BTreeSet::new();
        for r in &self.rules {
            match &r.head {
                Some(l)
                    if l.sign == Sign::Positive
                        && l.atom.is_preference()
                        && r.pbody.is_empty()
                        && r.nbody.is_empty() =>
                {
                    pairs.insert((l.atom.args[0].clone(), l.atom.args[1].clone()));
                }
                _ => rest.push(r.clone()),
            }
        }
        (OrderedProgram::new(rest), PreferenceOrder { pairs })
    }

    /// True iff preference atoms occur only as heads of facts.
    pub fn is_statically_ordered(&self) -> bool {
        self.rules.iter().all(|r| {
            let head_ok = match &r.head {
                Some(l) if l.atom.is_preference() => {
                    l.sign == Sign::Positive && r.pbody.is_empty() && r.nbody.is_empty()
                }
                _ => true,
            };
            head_ok
                && r.pbody
                    .iter()
                    .chain(r.nbody.iter())
                    .all(|l| !l.atom.is_preference())
        })
    }
}

/// A candidate or answer set: either a consistent finite set of literals
/// or the inconsistent closure (the set of all literals).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LiteralSet {
    Consistent(BTreeSet<Literal>),
    Inconsistent,
}

impl LiteralSet {
    pub fn empty() -> Self {
        LiteralSet::Consistent(BTreeSet::new())
    }

    /// Builds a literal set from finitely many literals, collapsing to
    /// the inconsistent closure when a complementary pair is present.
    pub fn from_literals(literals: impl IntoIterator<Item = Literal>) -> Self {
        let mut set = BTreeSet::new();
        for l in literals {
            if set.contains(&l.complement()) {
                return LiteralSet::Inconsistent;
            }
            set.insert(l);
        }
        LiteralSet::Consistent(set)
    }

    pub fn contains(&self, l: &Literal) -> bool {
        match self {
            LiteralSet::Inconsistent => true,
            LiteralSet::Consistent(set) => set.contains(l),
        }
    }

    pub fn contains_all(&self, literals: &[Literal]) -> bool {
        literals.iter().all(|l| self.contains(l))
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, LiteralSet::Consistent(_))
    }

    pub fn len(&self) -> Option<usize> {
        match self {
            LiteralSet::Inconsistent => None,
            LiteralSet::Consistent(set) => Some(set.len()),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, LiteralSet::Consistent(set) if set.is_empty())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Literal> {
        match self {
            LiteralSet::Inconsistent => None.into_iter().flatten(),
            LiteralSet::Consistent(set) => Some(set.iter()).into_iter().flatten(),
        }
    }

    /// Keeps only literals whose predicate passes the filter. The
    /// inconsistent closure is left untouched.
    pub fn retain_predicates(&self, keep: impl Fn(&Atom) -> bool) -> LiteralSet {
        match self {
            LiteralSet::Inconsistent => LiteralSet::Inconsistent,
            LiteralSet::Consistent(set) => {
                LiteralSet::Consistent(set.iter().filter(|l| keep(&l.atom)).cloned().collect())
            }
        }
    }

    /// Canonical rendering: literals sorted by atom, positive before
    /// negative, in the flat internal spelling.
    pub fn canonical(&self) -> String {
        match self {
            LiteralSet::Inconsistent => "Lit".to_string(),
            LiteralSet::Consistent(set) => {
                let mut ls: Vec<&Literal> = set.iter().collect();
                ls.sort_by(|a, b| (&a.atom, a.sign).cmp(&(&b.atom, b.sign)));
                let parts: Vec<String> = ls.iter().map(|l| l.internal_spelling()).collect();
                format!("{{{}}}", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for LiteralSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

/// A set of pairs `(s, t)` of name terms, read as "the rule named `t`
/// has higher priority than the rule named `s`".
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PreferenceOrder {
    pub pairs: BTreeSet<(Term, Term)>,
}

impl PreferenceOrder {
    pub fn empty() -> Self {
        PreferenceOrder::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Term, Term)>) -> Self {
        PreferenceOrder {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn holds(&self, lower: &Term, higher: &Term) -> bool {
        self.pairs.contains(&(lower.clone(), higher.clone()))
    }

    /// Names with higher priority than `name`, sorted.
    pub fn higher_than(&self, name: &Term) -> Vec<Term> {
        self.pairs
            .iter()
            .filter(|(s, _)| s == name)
            .map(|(_, t)| t.clone())
            .collect()
    }

    /// Transitive closure, then an irreflexivity check; errors on cycles.
    pub fn strictify(&self) -> Result<PreferenceOrder, crate::error::ModelError> {
        let mut pairs = self.pairs.clone();
        loop {
            let mut added = Vec::new();
            for (a, b) in &pairs {
                for (c, d) in &pairs {
                    if b == c && !pairs.contains(&(a.clone(), d.clone())) {
                        added.push((a.clone(), d.clone()));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            pairs.extend(added);
        }
        if let Some((a, _)) = pairs.iter().find(|(a, b)| a == b) {
            return Err(crate::error::ModelError::CyclicOrder {
                name: a.to_string(),
            });
        }
        Ok(PreferenceOrder { pairs })
    }
}

/// Hands out fresh atoms `__c0`, `__c1`, ... for constraint desugaring.
#[derive(Debug, Default)]
pub struct FreshAtoms {
    next: usize,
}

impl FreshAtoms {
    pub fn new() -> Self {
        FreshAtoms::default()
    }

    /// Starts the counter past every `__c<i>` already present, so fresh
    /// atoms never collide with atoms of the program.
    pub fn for_program(program: &OrderedProgram) -> Self {
        let mut next = 0;
        for r in &program.rules {
            for l in r.literals() {
                if let Some(rest) = l.atom.predicate.strip_prefix(FRESH_PREFIX) {
                    if let Ok(i) = rest.parse::<usize>() {
                        next = next.max(i + 1);
                    }
                }
            }
        }
        FreshAtoms { next }
    }

    pub fn fresh(&mut self) -> Atom {
        let atom = Atom::propositional(format!("{FRESH_PREFIX}{}", self.next));
        self.next += 1;
        atom
    }
}

/// Rewrites a constraint `:- body` into `c :- body, not c` for a fresh
/// atom `c` that occurs nowhere else in the program.
pub fn desugar_constraint(rule: &Rule, fresh: Atom) -> Result<Rule, crate::error::ModelError> {
    if rule.head.is_some() {
        return Err(crate::error::ModelError::NotAConstraint);
    }
    let head = Literal::positive(fresh.clone());
    let mut nbody = rule.nbody.clone();
    nbody.push(Literal::positive(fresh));
    Ok(Rule::new(
        rule.name.clone(),
        Some(head),
        rule.pbody.clone(),
        nbody,
    ))
}

/// Replaces every constraint of the program with its desugared form,
/// using fresh atoms that cannot collide with program atoms.
pub fn desugar_constraints(program: &OrderedProgram) -> OrderedProgram {
    let mut fresh = FreshAtoms::for_program(program);
    let rules = program
        .rules
        .iter()
        .map(|r| {
            if r.is_constraint() {
                desugar_constraint(r, fresh.fresh()).expect("constraint")
            } else {
                r.clone()
            }
        })
        .collect();
    OrderedProgram::new(rules)
}

/// A single problem found while validating an ordered program.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateName { name: String },
    UnknownNameInPreference { name: String },
    ReservedPredicate { predicate: String },
    ConstraintWithEmptyBody,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateName { name } => write!(f, "duplicate rule name `{name}`"),
            Violation::UnknownNameInPreference { name } => {
                write!(f, "preference atom mentions `{name}`, which names no rule")
            }
            Violation::ReservedPredicate { predicate } => {
                write!(f, "user atom uses reserved predicate `{predicate}`")
            }
            Violation::ConstraintWithEmptyBody => write!(f, "constraint with empty body"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks naming injectivity, that preference atoms only mention rule
/// names, and that no user atom hides in the reserved tag namespace.
pub fn validate_ordered(program: &OrderedProgram) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen_names = BTreeSet::new();
    for r in &program.rules {
        if let Some(n) = &r.name {
            if !seen_names.insert(n.clone()) {
                violations.push(Violation::DuplicateName {
                    name: n.to_string(),
                });
            }
        }
        if r.head.is_none() && r.pbody.is_empty() && r.nbody.is_empty() {
            violations.push(Violation::ConstraintWithEmptyBody);
        }
    }
    for r in &program.rules {
        for l in r.literals() {
            let a = &l.atom;
            if a.is_preference() {
                for name in &a.args {
                    // Only ground names can be checked; variable names are
                    // re-validated after instantiation.
                    if name.is_ground() && !seen_names.contains(name) {
                        violations.push(Violation::UnknownNameInPreference {
                            name: name.to_string(),
                        });
                    }
                }
            } else if TAG_PREDICATES.contains(&a.predicate.as_str()) {
                violations.push(Violation::ReservedPredicate {
                    predicate: a.predicate.clone(),
                });
            }
        }
    }
    violations.dedup();
    ValidationReport { violations }
}
