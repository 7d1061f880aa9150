//! Bounded-arithmetic terms and formulas: parsing, printing, the strict
//! quantifier hierarchy, substitution, and exact evaluation over ℕ.

pub mod ast;
pub mod classify;
pub mod corpus;
pub mod eval;
pub mod gen;
pub mod parse;
pub mod prenex;
pub mod render;
pub mod subst;
pub mod valid;

pub use ast::{fresh_name, is_sharp, Formula, Term};
pub use classify::{classify, is_b0, member, nnf, oracle_class, ClassKind, QuantClass};
pub use eval::{env_from, eval, eval_term, eval_with, Compiled, Env, EvalConfig, EvalError};
pub use parse::{parse, parse_term, ParseError, ParseErrorKind};
pub use prenex::{
    combine, prenex, prenex_formula, prenex_leading, prenex_sigma, Connective, Prenex, Quant,
};
pub use render::{render, render_term};
pub use subst::{instantiate, rename_bound_apart, substitute, substitute_all, substitute_term};
pub use valid::{check_valid, check_valid_with, CheckConfig, CheckError, Verdict};

/// Parse, panicking on error. For literals in code and tests.
pub fn f(text: &str) -> Formula {
    parse(text).unwrap_or_else(|e| panic!("bad formula literal {text:?}: {e}"))
}

/// Parse a term, panicking on error.
pub fn t(text: &str) -> Term {
    parse_term(text).unwrap_or_else(|e| panic!("bad term literal {text:?}: {e}"))
}

/// Owned variable list from string slices.
pub fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}
