//! Parser for the surface syntax of ordered logic programs.
//!
//! Rules look like `b :- name(n2), neg a, not c.`; preference atoms are
//! written `(n3 < n2)`, strong negation as `neg`/`-`, weak negation as
//! `not`/`~`, and rule names via `name(n)` or `[n]` among the body
//! elements. `%` starts a comment. A constraint is written `:- body.` or
//! `false :- body.`

use crate::error::ParseError;
use crate::model::{Atom, Literal, OrderedProgram, Rule, Sign, Term, TAG_PREDICATES};
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// A source file or stdin buffer.
#[derive(Clone, Debug)]
pub struct SourceProgram {
    pub text: String,
    pub origin: String,
}

impl SourceProgram {
    pub fn new(text: impl Into<String>, origin: impl Into<String>) -> Self {
        SourceProgram {
            text: text.into(),
            origin: origin.into(),
        }
    }

    pub fn from_text(text: &str) -> Self {
        SourceProgram::new(text, "<input>")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Allow tag predicates and `__`-prefixed identifiers, and turn off
    /// the naming-annotation reading of `name(t)`. Used to re-read
    /// emitted intermediate files.
    pub whitelist_tags: bool,
}

pub fn parse_program(src: &SourceProgram) -> Result<OrderedProgram, ParseError> {
    parse_program_with(src, ParseOptions::default())
}

pub fn parse_program_with(
    src: &SourceProgram,
    options: ParseOptions,
) -> Result<OrderedProgram, ParseError> {
    let tokens = lex(&src.text, &src.origin)?;
    Parser {
        tokens,
        pos: 0,
        origin: src.origin.clone(),
        options,
    }
    .program()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Var(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Arrow,
    Less,
    Minus,
    Tilde,
    Semi,
    Pipe,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, origin: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '%' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            '(' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::LParen,
                    line: l,
                    column: col,
                });
            }
            ')' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::RParen,
                    line: l,
                    column: col,
                });
            }
            '[' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::LBracket,
                    line: l,
                    column: col,
                });
            }
            ']' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::RBracket,
                    line: l,
                    column: col,
                });
            }
            ',' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::Comma,
                    line: l,
                    column: col,
                });
            }
            '.' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::Dot,
                    line: l,
                    column: col,
                });
            }
            '<' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::Less,
                    line: l,
                    column: col,
                });
            }
            '-' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::Minus,
                    line: l,
                    column: col,
                });
            }
            '~' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::Tilde,
                    line: l,
                    column: col,
                });
            }
            ';' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::Semi,
                    line: l,
                    column: col,
                });
            }
            '|' => {
                bump(&mut chars);
                tokens.push(Token {
                    tok: Tok::Pipe,
                    line: l,
                    column: col,
                });
            }
            ':' => {
                bump(&mut chars);
                if chars.peek() == Some(&'-') {
                    bump(&mut chars);
                    tokens.push(Token {
                        tok: Tok::Arrow,
                        line: l,
                        column: col,
                    });
                } else {
                    return Err(ParseError::Syntax {
                        origin: origin.to_string(),
                        line: l,
                        column: col,
                        message: "expected `:-`".to_string(),
                    });
                }
            }
            c if c.is_ascii_lowercase() || c == '_' || c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    tok: Tok::Ident(s),
                    line: l,
                    column: col,
                });
            }
            c if c.is_ascii_uppercase() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                tokens.push(Token {
                    tok: Tok::Var(s),
                    line: l,
                    column: col,
                });
            }
            other => {
                return Err(ParseError::Syntax {
                    origin: origin.to_string(),
                    line: l,
                    column: col,
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    origin: String,
    options: ParseOptions,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.tokens.get(self.pos + 1).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos.min(self.tokens.len().saturating_sub(1)))
            .map(|t| (t.line, t.column))
            .unwrap_or((1, 1))
    }

    fn advance(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError::Syntax {
            origin: self.origin.clone(),
            line,
            column,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.advance();
            Ok(())
        } else {
            Err(self.syntax(format!("expected {what}")))
        }
    }

    fn program(&mut self) -> Result<OrderedProgram, ParseError> {
        let mut rules = Vec::new();
        let mut names = BTreeSet::new();
        while self.peek().is_some() {
            let rule = self.rule()?;
            if let Some(name) = &rule.name {
                if name.is_ground() && !names.insert(name.clone()) {
                    let (line, column) = self.here();
                    return Err(ParseError::DuplicateName {
                        origin: self.origin.clone(),
                        line,
                        column,
                        name: name.to_string(),
                    });
                }
            }
            rules.push(rule);
        }
        Ok(OrderedProgram::new(rules))
    }

    fn rule(&mut self) -> Result<Rule, ParseError> {
        let head = match self.peek() {
            Some(Tok::Arrow) => None,
            Some(Tok::Ident(s)) if s == "false" => {
                self.advance();
                None
            }
            _ => {
                let lit = self.literal(true)?;
                self.check_no_disjunction()?;
                Some(lit)
            }
        };
        let mut name = None;
        let mut pbody = Vec::new();
        let mut nbody = Vec::new();
        if self.peek() == Some(&Tok::Arrow) {
            self.advance();
            loop {
                self.body_element(&mut name, &mut pbody, &mut nbody)?;
                if self.peek() == Some(&Tok::Comma) {
                    self.advance();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Dot, "`.` at end of rule")?;
        if head.is_none() && pbody.is_empty() && nbody.is_empty() {
            return Err(self.syntax("constraint needs a nonempty body"));
        }
        Ok(Rule::new(name, head, pbody, nbody))
    }

    fn check_no_disjunction(&self) -> Result<(), ParseError> {
        let disjunctive = match self.peek() {
            Some(Tok::Semi) | Some(Tok::Pipe) => true,
            Some(Tok::Ident(s)) if s == "v" && !matches!(self.peek2(), Some(Tok::LParen)) => true,
            _ => false,
        };
        if disjunctive {
            let (line, column) = self.here();
            return Err(ParseError::DisjunctiveHead {
                origin: self.origin.clone(),
                line,
                column,
            });
        }
        Ok(())
    }

    fn body_element(
        &mut self,
        name: &mut Option<Term>,
        pbody: &mut Vec<Literal>,
        nbody: &mut Vec<Literal>,
    ) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::LBracket) if !self.options.whitelist_tags => {
                self.advance();
                let t = self.term()?;
                self.expect(Tok::RBracket, "`]` after rule name")?;
                self.set_name(name, t)
            }
            Some(Tok::Ident(s))
                if s == "name"
                    && !self.options.whitelist_tags
                    && self.peek2() == Some(&Tok::LParen) =>
            {
                self.advance();
                self.advance();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)` after rule name")?;
                self.set_name(name, t)
            }
            Some(Tok::Ident(s)) if s == "not" => {
                self.advance();
                let lit = self.literal(false)?;
                nbody.push(lit);
                Ok(())
            }
            Some(Tok::Tilde) => {
                self.advance();
                let lit = self.literal(false)?;
                nbody.push(lit);
                Ok(())
            }
            _ => {
                let lit = self.literal(false)?;
                pbody.push(lit);
                Ok(())
            }
        }
    }

    fn set_name(&mut self, name: &mut Option<Term>, t: Term) -> Result<(), ParseError> {
        if name.is_some() {
            return Err(self.syntax("rule already has a name"));
        }
        self.check_ident_terms(&t)?;
        *name = Some(t);
        Ok(())
    }

    fn literal(&mut self, head_position: bool) -> Result<Literal, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == "neg" => {
                self.advance();
                let atom = self.atom(head_position)?;
                Ok(Literal::negative(atom))
            }
            Some(Tok::Minus) => {
                self.advance();
                let atom = self.atom(head_position)?;
                Ok(Literal::negative(atom))
            }
            Some(Tok::Ident(s)) if s == "not" => {
                Err(self.syntax("weak negation `not` cannot be nested or used here"))
            }
            _ => {
                let atom = self.atom(head_position)?;
                Ok(Literal::positive(atom))
            }
        }
    }

    fn atom(&mut self, head_position: bool) -> Result<Atom, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.advance();
                let lhs = self.term()?;
                self.expect(Tok::Less, "`<` inside preference atom")?;
                let rhs = self.term()?;
                self.expect(Tok::RParen, "`)` after preference atom")?;
                self.check_ident_terms(&lhs)?;
                self.check_ident_terms(&rhs)?;
                Ok(Atom::prec(lhs, rhs))
            }
            Some(Tok::Ident(s)) => {
                if s == "true" {
                    return Err(self.syntax("`true` is not supported in rules"));
                }
                if s == "false" {
                    return Err(self.syntax("`false` may only head a constraint"));
                }
                let (line, column) = self.here();
                self.advance();
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.advance();
                    loop {
                        args.push(self.term()?);
                        match self.advance() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RParen) => break,
                            _ => return Err(self.syntax("expected `,` or `)` in argument list")),
                        }
                    }
                }
                if self.peek() == Some(&Tok::Less) {
                    return Err(self
                        .syntax("`<` only forms a preference atom inside parentheses: `(s < t)`"));
                }
                self.check_predicate(&s, args.len(), head_position, line, column)?;
                for a in &args {
                    self.check_ident_terms(a)?;
                }
                if s == crate::model::PREC && args.len() == 2 {
                    return Ok(Atom::prec(args[0].clone(), args[1].clone()));
                }
                Ok(Atom::new(s, args))
            }
            _ => Err(self.syntax("expected an atom")),
        }
    }

    fn check_predicate(
        &self,
        predicate: &str,
        arity: usize,
        _head_position: bool,
        line: usize,
        column: usize,
    ) -> Result<(), ParseError> {
        if self.options.whitelist_tags {
            return Ok(());
        }
        let reserved = TAG_PREDICATES.contains(&predicate)
            || predicate.starts_with("__")
            || predicate.starts_with(crate::model::NEG_PREFIX)
            || predicate == "name"
            || (predicate == crate::model::PREC && arity != 2);
        if reserved {
            return Err(ParseError::Reserved {
                origin: self.origin.clone(),
                line,
                column,
                predicate: predicate.to_string(),
            });
        }
        Ok(())
    }

    /// Constants and functors starting with `__` belong to the compiler.
    fn check_ident_terms(&self, t: &Term) -> Result<(), ParseError> {
        if self.options.whitelist_tags {
            return Ok(());
        }
        match t {
            Term::Const(c) if c.starts_with("__") => {
                Err(self.syntax(format!("identifier `{c}` uses the reserved `__` prefix")))
            }
            Term::Var(_) | Term::Const(_) => Ok(()),
            Term::Compound(f, args) => {
                if f.starts_with("__") {
                    return Err(
                        self.syntax(format!("identifier `{f}` uses the reserved `__` prefix"))
                    );
                }
                args.iter().try_for_each(|a| self.check_ident_terms(a))
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.advance() {
            Some(Tok::Var(v)) => Ok(Term::Var(v)),
            Some(Tok::Ident(f)) => {
                if self.peek() == Some(&Tok::LParen) {
                    self.advance();
                    let mut args = Vec::new();
                    loop {
                        args.push(self.term()?);
                        match self.advance() {
                            Some(Tok::Comma) => continue,
                            Some(Tok::RParen) => break,
                            _ => return Err(self.syntax("expected `,` or `)` in term")),
                        }
                    }
                    Ok(Term::Compound(f, args))
                } else {
                    Ok(Term::Const(f))
                }
            }
            _ => Err(self.syntax("expected a term")),
        }
    }
}

fn atom_surface(atom: &Atom) -> String {
    if atom.is_preference() {
        format!("({} < {})", atom.args[0], atom.args[1])
    } else {
        atom.to_string()
    }
}

fn literal_surface(lit: &Literal) -> String {
    match lit.sign {
        Sign::Positive => atom_surface(&lit.atom),
        Sign::Negative => format!("neg {}", atom_surface(&lit.atom)),
    }
}

/// Prints a program in the surface syntax so that reparsing yields a
/// structurally equal program. Constraints use the canonical `false :-`
/// spelling and rule names the `name(n)` form in first body position.
pub fn format_program(program: &OrderedProgram) -> String {
    let mut out = String::new();
    for r in &program.rules {
        let mut parts: Vec<String> = Vec::new();
        if let Some(n) = &r.name {
            parts.push(format!("name({n})"));
        }
        parts.extend(r.pbody.iter().map(literal_surface));
        parts.extend(
            r.nbody
                .iter()
                .map(|l| format!("not {}", literal_surface(l))),
        );
        let head = match &r.head {
            None => "false".to_string(),
            Some(l) => literal_surface(l),
        };
        if parts.is_empty() {
            let _ = writeln!(out, "{head}.");
        } else {
            let _ = writeln!(out, "{head} :- {}.", parts.join(", "));
        }
    }
    out
}
