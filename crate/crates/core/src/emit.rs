//! Text emission of compiled programs in the flat internal naming:
//! strong negation as `neg_` prefixes, preference atoms as `prec/2`,
//! tags as `ap/bl/ok/rdy`, `name/1` facts for tagged rules, and
//! pairwise consistency constraints.

use crate::error::EmitError;
use crate::model::{Atom, Literal, LiteralSet, Rule, Sign, Term};
use crate::transform::CompiledProgram;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

/// Output conventions. All three share the rule syntax; they differ in
/// argument spacing and the spelling of integrity constraints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    /// Pretty-printed intermediate code: `false :-` constraints and
    /// `, `-separated argument lists.
    Intermediate,
    /// Headless `:-` constraints, compact argument lists.
    Dlv,
    /// Same text as the dlv form, preceded by a comment naming the
    /// auxiliary predicates a front-end may hide.
    Smodels,
}

impl FromStr for Dialect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "intermediate" => Ok(Dialect::Intermediate),
            "dlv" => Ok(Dialect::Dlv),
            "smodels" => Ok(Dialect::Smodels),
            other => Err(format!(
                "unknown dialect `{other}` (use intermediate|dlv|smodels)"
            )),
        }
    }
}

fn fmt_term(t: &Term, sep: &str, out: &mut String) {
    match t {
        Term::Const(c) => out.push_str(c),
        Term::Var(v) => out.push_str(v),
        Term::Compound(f, args) => {
            out.push_str(f);
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                fmt_term(a, sep, out);
            }
            out.push(')');
        }
    }
}

fn fmt_atom(a: &Atom, sep: &str, out: &mut String) {
    out.push_str(&a.predicate);
    if !a.args.is_empty() {
        out.push('(');
        for (i, t) in a.args.iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            fmt_term(t, sep, out);
        }
        out.push(')');
    }
}

fn fmt_literal(l: &Literal, sep: &str, out: &mut String) {
    if l.sign == Sign::Negative {
        out.push_str(crate::model::NEG_PREFIX);
    }
    fmt_atom(&l.atom, sep, out);
}

fn fmt_rule(r: &Rule, dialect: Dialect, out: &mut String) {
    let sep = match dialect {
        Dialect::Intermediate => ", ",
        Dialect::Dlv | Dialect::Smodels => ",",
    };
    match &r.head {
        Some(h) => fmt_literal(h, sep, out),
        None => match dialect {
            Dialect::Intermediate => out.push_str("false"),
            Dialect::Dlv | Dialect::Smodels => {}
        },
    }
    if !r.pbody.is_empty() || !r.nbody.is_empty() {
        if r.head.is_some() || dialect == Dialect::Intermediate {
            out.push(' ');
        }
        out.push_str(":- ");
        let mut first = true;
        for l in &r.pbody {
            if !first {
                out.push_str(", ");
            }
            fmt_literal(l, sep, out);
            first = false;
        }
        for l in &r.nbody {
            if !first {
                out.push_str(", ");
            }
            out.push_str("not ");
            fmt_literal(l, sep, out);
            first = false;
        }
    }
    out.push('.');
}

/// Prints the compiled program. Deterministic: identical programs give
/// byte-identical text.
pub fn emit(program: &CompiledProgram, dialect: Dialect) -> Result<String, EmitError> {
    let mut out = String::new();
    if dialect == Dialect::Smodels {
        let _ = writeln!(
            out,
            "% auxiliary predicates: ap/1 bl/1 ok/1 rdy/2 name/1 prec/2 neg_prec/2"
        );
    }
    for r in &program.rules {
        if !r.is_ground() {
            return Err(EmitError::NotGround {
                context: format!("{r:?}"),
            });
        }
        fmt_rule(r, dialect, &mut out);
        out.push('\n');
    }
    Ok(out)
}

/// Strips every literal outside the user language from an answer set:
/// tags, preference atoms, primed copies, and fresh constraint atoms all
/// disappear.
pub fn nice_filter(x: &LiteralSet, user_language: &BTreeSet<String>) -> LiteralSet {
    x.retain_predicates(|a| user_language.contains(&a.predicate) && !a.is_internal())
}
