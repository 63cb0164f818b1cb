//! Shared program sources for the benchmarks.

/// Legal-reasoning example: variables, compound rule names, ten tagged
/// rules after instantiation.
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

/// Birds-and-penguins with a single static preference.
pub const BIRDS: &str = "\
neg f :- [n1], p, not f.
w :- [n2], b, not neg w.
f :- [n3], w, not neg f.
b :- [n4], p.
p :- [n5].
(n2 < n1).
";
