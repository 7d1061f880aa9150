//! Rule and scheme reductions as certificates: each construction returns the
//! formulas it builds together with the derivability claims that justify it,
//! and `check_certificate` tests those claims by brute force at a fixed width.

pub mod basic;
pub mod cert;
pub mod collapse;
pub mod golden;
pub mod split;
pub mod mutate;
pub mod params;
pub mod variants;

pub use basic::{basic_reduce, merge_nested_pi, BasicOpts};
pub use cert::{
    check_certificate, check_certificate_with, check_obligation, satisfies, ClassClaim, DocError,
    Obligation, ObligationReport, ReductionCertificate, Report, Sentence, Status,
};
pub use collapse::{collapse_chain, Codec};
pub use golden::{golden_cases, Construction, GoldenCase};
pub use split::split_expand;
pub use mutate::{mutate, MutOp, Mutation};
pub use params::{bounded_axiomatization, eliminate_parameters};
pub use variants::{variant_reduce, Direction, Variant, VariantOpts};

use formula_core::{classify, instantiate, parse_term, prenex, Formula, QuantClass, Term};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Ind,
    Pind,
    Lind,
    IndLt,
    LindLt,
    PindLt,
    PindRes,
    Min,
    Lmin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Axiom,
    AxiomParamFree,
    Rule,
    RuleParamFree,
    /// Base case moved into the conclusion.
    Rule0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RuleKind {
    pub scheme: Scheme,
    pub form: Form,
    pub class: QuantClass,
}

impl RuleKind {
    pub fn rule(scheme: Scheme, class: QuantClass) -> RuleKind {
        RuleKind {
            scheme,
            form: Form::Rule,
            class,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("class mismatch: expected {expected}, found {found}")]
    ClassMismatch { expected: String, found: QuantClass },
    #[error("free variables {found:?} are not among {allowed:?}")]
    FreeVars {
        allowed: Vec<String>,
        found: Vec<String>,
    },
    #[error("missing option `{0}`")]
    MissingOpt(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("constant c must be at least 1")]
    BadExponent,
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, ReductionError>;

/// Term literal; panics on bad syntax (only used with fixed strings).
pub(crate) fn tm(text: &str) -> Term {
    parse_term(text).unwrap_or_else(|e| panic!("term literal {text:?}: {e}"))
}

/// `f` with the named variables replaced simultaneously by term literals.
pub(crate) fn at(f: &Formula, pairs: &[(&str, &str)]) -> Formula {
    let owned: Vec<(&str, Term)> = pairs.iter().map(|(v, s)| (*v, tm(s))).collect();
    instantiate(f, &owned)
}

pub(crate) fn at_terms(f: &Formula, pairs: &[(&str, Term)]) -> Formula {
    instantiate(f, pairs)
}

pub(crate) fn check_vars(f: &Formula, allowed: &[&str]) -> Result<()> {
    let found: Vec<String> = f.free_vars().into_iter().collect();
    if found.iter().all(|v| allowed.contains(&v.as_str())) {
        Ok(())
    } else {
        Err(ReductionError::FreeVars {
            allowed: allowed.iter().map(|s| s.to_string()).collect(),
            found,
        })
    }
}

pub(crate) fn require(f: &Formula, sigma: bool, level: u32) -> Result<QuantClass> {
    let found = classify(f);
    if found.within(sigma, level) {
        Ok(found)
    } else {
        let expected = if sigma {
            QuantClass::sigma(level)
        } else {
            QuantClass::pi(level)
        };
        Err(ReductionError::ClassMismatch {
            expected: expected.to_string(),
            found,
        })
    }
}

/// Least level `i ≥ min` such that `f` lies in the requested class.
pub(crate) fn level_of(f: &Formula, sigma: bool, min: u32) -> Result<u32> {
    let c = classify(f);
    (min..=min.max(c.level) + 1)
        .find(|&l| c.within(sigma, l))
        .ok_or_else(|| ReductionError::ClassMismatch {
            expected: if sigma { "SigmaHat" } else { "PiHat" }.into(),
            found: c,
        })
}

/// Split off the leading quantifier of `f` (after prenexing) when it has the
/// requested kind: `(var, bound, rest)`.
pub(crate) fn split_first(f: &Formula, exists: bool) -> Option<(String, Term, Formula)> {
    let mut p = prenex(f);
    if p.prefix.first().map(|q| q.exists) != Some(exists) {
        return None;
    }
    let q = p.prefix.remove(0);
    Some((q.var, q.bound, p.into_formula()))
}

pub(crate) fn outputs_or(default: Vec<Formula>, over: Option<&[Formula]>) -> Vec<Formula> {
    match over {
        Some(o) if o.len() == default.len() => o.to_vec(),
        Some(o) => {
            let mut v = o.to_vec();
            v.extend(default.into_iter().skip(o.len()));
            v
        }
        None => default,
    }
}
