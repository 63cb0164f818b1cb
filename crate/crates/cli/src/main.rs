//! Command line driver: compile ordered logic programs, solve them with
//! the built-in engine, check candidates against the order-preservation
//! criteria, and compare what the strategies select.
//!
//! Exit codes: 0 success (solve found answer sets, check passed),
//! 1 no answer set or failed check, 2 usage or input error,
//! 3 resource guard tripped.

use clap::{Parser, Subcommand, ValueEnum};
use olp_core::emit::{emit, nice_filter, Dialect};
use olp_core::error::{GroundError, OracleError};
use olp_core::ground::{ground, GroundingConfig};
use olp_core::model::{
    Atom, Literal, LiteralSet, OrderedProgram, PreferenceOrder, Sign, NEG_PREFIX,
};
use olp_core::oracle::{
    be_preferred_extension, check_be_preserving, check_dynamic_preserving, check_static_preserving,
    check_wzl_preserving, EnumerationWitness, OracleLimits,
};
use olp_core::parser::{parse_program, parse_program_with, ParseOptions, SourceProgram};
use olp_core::semantics::answer_sets_search;
use olp_core::transform::{ta_closure, transform, StrategyId};
use std::collections::BTreeSet;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "olp",
    about = "Compiler and solver for logic programs with rule preferences",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    #[value(name = "T")]
    T,
    #[value(name = "Tstatic")]
    Tstatic,
    #[value(name = "W")]
    W,
    #[value(name = "WTA")]
    Wta,
    #[value(name = "U")]
    U,
    #[value(name = "V")]
    V,
    #[value(name = "S")]
    S,
}

impl From<StrategyArg> for StrategyId {
    fn from(s: StrategyArg) -> StrategyId {
        match s {
            StrategyArg::T => StrategyId::T,
            StrategyArg::Tstatic => StrategyId::Tstatic,
            StrategyArg::W => StrategyId::W,
            StrategyArg::Wta => StrategyId::Wta,
            StrategyArg::U => StrategyId::U,
            StrategyArg::V => StrategyId::V,
            StrategyArg::S => StrategyId::S,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DialectArg {
    Intermediate,
    Dlv,
    Smodels,
}

impl From<DialectArg> for Dialect {
    fn from(d: DialectArg) -> Dialect {
        match d {
            DialectArg::Intermediate => Dialect::Intermediate,
            DialectArg::Dlv => Dialect::Dlv,
            DialectArg::Smodels => Dialect::Smodels,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CriterionArg {
    #[value(name = "dst-static")]
    DstStatic,
    #[value(name = "dst-dynamic")]
    DstDynamic,
    Wzl,
    #[value(name = "be-enum")]
    BeEnum,
    #[value(name = "be-original")]
    BeOriginal,
}

#[derive(Subcommand)]
enum Command {
    /// Translate an input program and write the result.
    Compile {
        input: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value = "intermediate")]
        dialect: DialectArg,
        /// Give every unnamed rule a generated name before translating.
        #[arg(long)]
        tag_all: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Translate, solve, and print one answer set per line.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        /// Strip auxiliary predicates from the printed answer sets.
        #[arg(long)]
        nice: bool,
        /// Print at most this many answer sets.
        #[arg(long)]
        max_models: Option<usize>,
        #[arg(long)]
        tag_all: bool,
    },
    /// Check a candidate answer set against a preservation criterion.
    Check {
        input: PathBuf,
        #[arg(long, value_enum)]
        criterion: CriterionArg,
        /// File with whitespace-separated literals in the flat internal
        /// spelling (neg_ prefixes strong negation).
        #[arg(long)]
        candidate: PathBuf,
    },
    /// Tabulate the answer sets every strategy selects.
    Compare { input: PathBuf },
}

enum AppError {
    Input(String),
    Guard(String),
}

impl AppError {
    fn code(&self) -> ExitCode {
        match self {
            AppError::Input(_) => ExitCode::from(2),
            AppError::Guard(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            AppError::Input(m) | AppError::Guard(m) => m,
        }
    }
}

fn input_error(e: impl std::fmt::Display) -> AppError {
    AppError::Input(e.to_string())
}

fn main() -> ExitCode {
    // Die quietly when the consumer of our stdout goes away.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

/// Reads and prepares a program: parse, then instantiate and flatten
/// when the extension says variables are present.
fn load_program(path: &Path) -> Result<OrderedProgram, AppError> {
    let origin = path.display().to_string();
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(input_error)?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| AppError::Input(format!("{origin}: {e}")))?
    };
    let source = SourceProgram::new(text, origin.clone());
    let program = parse_program(&source).map_err(input_error)?;
    let has_variables = !program.is_ground();
    let is_vlp = path.extension().is_some_and(|e| e == "vlp");
    if has_variables && !is_vlp {
        return Err(AppError::Input(format!(
            "{origin}: program contains variables; use the .vlp extension"
        )));
    }
    if !is_vlp {
        return Ok(program);
    }
    let flat = ground(&program, &GroundingConfig::default()).map_err(|e| match e {
        GroundError::TooManyInstances { .. } => AppError::Guard(e.to_string()),
        other => AppError::Input(other.to_string()),
    })?;
    Ok(flat.program)
}

fn compiled(
    program: &OrderedProgram,
    strategy: StrategyArg,
    tag_all: bool,
) -> Result<olp_core::transform::CompiledProgram, AppError> {
    transform(program, strategy.into(), tag_all).map_err(input_error)
}

fn run(command: Command) -> Result<ExitCode, AppError> {
    match command {
        Command::Compile {
            input,
            strategy,
            dialect,
            tag_all,
            output,
        } => {
            let program = load_program(&input)?;
            let compiled = compiled(&program, strategy, tag_all)?;
            let text = emit(&compiled, dialect.into()).map_err(input_error)?;
            std::fs::write(&output, text)
                .map_err(|e| AppError::Input(format!("{}: {e}", output.display())))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve {
            input,
            strategy,
            nice,
            max_models,
            tag_all,
        } => {
            let program = load_program(&input)?;
            let compiled = compiled(&program, strategy, tag_all)?;
            let sets = compiled.answer_sets();
            let shown: Vec<String> = sets
                .iter()
                .map(|x| {
                    if nice {
                        nice_filter(x, &compiled.user_predicates).canonical()
                    } else {
                        x.canonical()
                    }
                })
                .take(max_models.unwrap_or(usize::MAX))
                .collect();
            for line in &shown {
                println!("{line}");
            }
            if sets.is_empty() {
                eprintln!("no answer set");
                Ok(ExitCode::from(1))
            } else {
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Check {
            input,
            criterion,
            candidate,
        } => {
            let program = load_program(&input)?;
            let x = read_candidate(&candidate)?;
            check(&program, criterion, &x)
        }
        Command::Compare { input } => {
            let program = load_program(&input)?;
            compare(&program)
        }
    }
}

/// Parses a candidate file: whitespace-separated literals in the flat
/// internal spelling.
fn read_candidate(path: &Path) -> Result<LiteralSet, AppError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AppError::Input(format!("{}: {e}", path.display())))?;
    let mut literals = Vec::new();
    for token in text.split_whitespace() {
        literals.push(parse_literal_token(token).ok_or_else(|| {
            AppError::Input(format!(
                "{}: cannot parse literal `{token}`",
                path.display()
            ))
        })?);
    }
    Ok(LiteralSet::from_literals(literals))
}

fn parse_literal_token(token: &str) -> Option<Literal> {
    let source = SourceProgram::new(format!("{token}."), "<candidate>");
    let parsed = parse_program_with(
        &source,
        ParseOptions {
            whitelist_tags: true,
        },
    )
    .ok()?;
    let head = parsed.rules.first()?.head.clone()?;
    if head.sign != Sign::Positive {
        return None;
    }
    // Fold the flat spelling back into a signed literal.
    match head.atom.predicate.strip_prefix(NEG_PREFIX) {
        Some(base) if !base.is_empty() => Some(Literal::negative(Atom::new(base, head.atom.args))),
        _ => Some(Literal::positive(head.atom)),
    }
}

fn static_parts(program: &OrderedProgram) -> Result<(OrderedProgram, PreferenceOrder), AppError> {
    if !program.is_statically_ordered() {
        return Err(AppError::Input(
            "this criterion needs a statically ordered input (preference facts only)".to_string(),
        ));
    }
    let (rest, order) = program.split_static();
    Ok((rest, order))
}

fn guard_or_fail(e: OracleError) -> Result<ExitCode, AppError> {
    match e {
        OracleError::NotAnAnswerSet | OracleError::InconsistentCandidate => {
            println!("fail: {e}");
            Ok(ExitCode::from(1))
        }
        OracleError::UniverseTooLarge { .. }
        | OracleError::Undecided { .. }
        | OracleError::TooManyExtensions { .. } => Err(AppError::Guard(e.to_string())),
        other => Err(AppError::Input(other.to_string())),
    }
}

fn print_witness(rules: &[olp_core::model::Rule], witness: &EnumerationWitness) {
    println!("pass: witness enumeration");
    for (step, &i) in witness.ordering.iter().enumerate() {
        println!("  {:>3}. {}", step + 1, rules[i]);
    }
}

fn check(
    program: &OrderedProgram,
    criterion: CriterionArg,
    x: &LiteralSet,
) -> Result<ExitCode, AppError> {
    match criterion {
        CriterionArg::DstStatic | CriterionArg::Wzl | CriterionArg::BeEnum => {
            let (rest, order) = static_parts(program)?;
            let result = match criterion {
                CriterionArg::DstStatic => check_static_preserving(&rest.rules, &order, x),
                CriterionArg::Wzl => check_wzl_preserving(&rest.rules, &order, x),
                _ => check_be_preserving(&rest.rules, &order, x),
            };
            match result {
                Ok(Some(w)) => {
                    print_witness(&rest.rules, &w);
                    Ok(ExitCode::SUCCESS)
                }
                Ok(None) => {
                    println!("fail: no order-preserving enumeration exists");
                    Ok(ExitCode::from(1))
                }
                Err(e) => guard_or_fail(e),
            }
        }
        CriterionArg::DstDynamic => match check_dynamic_preserving(program, x) {
            Ok(Some(w)) => {
                let ta = ta_closure(program);
                print_witness(&ta.rules, &w);
                Ok(ExitCode::SUCCESS)
            }
            Ok(None) => {
                println!("fail: no order-preserving enumeration exists");
                Ok(ExitCode::from(1))
            }
            Err(e) => guard_or_fail(e),
        },
        CriterionArg::BeOriginal => {
            let (rest, order) = static_parts(program)?;
            match be_preferred_extension(&rest.rules, &order, x, &OracleLimits::default()) {
                Ok(Some(total)) => {
                    println!("pass: accepted under total extension (lowest first)");
                    for (step, &i) in total.ascending.iter().enumerate() {
                        println!("  {:>3}. {}", step + 1, rest.rules[i]);
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Ok(None) => {
                    println!("fail: no total extension reproduces the candidate");
                    Ok(ExitCode::from(1))
                }
                Err(e) => guard_or_fail(e),
            }
        }
    }
}

fn strategy_sets(program: &OrderedProgram, strategy: StrategyId) -> Option<BTreeSet<LiteralSet>> {
    transform(program, strategy, false).ok().map(|c| {
        c.answer_sets()
            .iter()
            .filter(|x| x.is_consistent())
            .map(|x| c.project_language(x))
            .collect()
    })
}

fn compare(program: &OrderedProgram) -> Result<ExitCode, AppError> {
    let is_static = program.is_statically_ordered();
    // Candidate rows: the standard answer sets of the order-closed
    // program, projected onto the source language.
    let ta = ta_closure(program);
    let user_predicates = program.user_predicates();
    let project = |x: &LiteralSet| {
        x.retain_predicates(|a| user_predicates.contains(&a.predicate) || a.is_preference())
    };
    let standard: Vec<LiteralSet> = answer_sets_search(&ta.rules)
        .iter()
        .filter(|x| x.is_consistent())
        .map(&project)
        .collect();

    let strategies: Vec<StrategyId> = StrategyId::ALL
        .into_iter()
        .filter(|s| is_static || *s != StrategyId::Tstatic)
        .collect();
    let columns: Vec<(String, BTreeSet<LiteralSet>)> = strategies
        .iter()
        .map(|&s| {
            let sets = strategy_sets(program, s).unwrap_or_default();
            (s.to_string(), sets)
        })
        .collect();

    let mut oracle_columns: Vec<(String, BTreeSet<LiteralSet>)> = Vec::new();
    if is_static {
        let (rest, order) = program.split_static();
        let mut dst = BTreeSet::new();
        let mut wzl = BTreeSet::new();
        let mut be = BTreeSet::new();
        for x in &standard {
            let user = x.retain_predicates(|a| !a.is_preference());
            if let Ok(Some(_)) = check_static_preserving(&rest.rules, &order, &user) {
                dst.insert(x.clone());
            }
            if let Ok(Some(_)) = check_wzl_preserving(&rest.rules, &order, &user) {
                wzl.insert(x.clone());
            }
            if let Ok(Some(_)) =
                be_preferred_extension(&rest.rules, &order, &user, &OracleLimits::default())
            {
                be.insert(x.clone());
            }
        }
        oracle_columns.push(("dst".to_string(), dst));
        oracle_columns.push(("wzl".to_string(), wzl));
        oracle_columns.push(("be".to_string(), be));
    }

    let mut header = vec!["answer set".to_string()];
    header.extend(oracle_columns.iter().map(|(n, _)| format!("{n}?")));
    header.extend(columns.iter().map(|(n, _)| n.clone()));
    println!("{}", header.join(" | "));
    for x in &standard {
        let mut row = vec![x.canonical()];
        for (_, accepted) in &oracle_columns {
            row.push(if accepted.contains(x) { "x" } else { "-" }.to_string());
        }
        for (_, sets) in &columns {
            // The T-family drops preference atoms it compiled away, so
            // compare on the user language where needed.
            let hit = sets.contains(x)
                || sets.iter().any(|y| {
                    y.retain_predicates(|a| !a.is_preference())
                        == x.retain_predicates(|a| !a.is_preference())
                });
            row.push(if hit { "x" } else { "-" }.to_string());
        }
        println!("{}", row.join(" | "));
    }
    if is_static {
        println!("hierarchy: dst implies wzl implies be implies standard answer set");
    }
    Ok(ExitCode::SUCCESS)
}
