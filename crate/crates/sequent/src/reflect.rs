use crate::{ProofStep, Rule, SystemSpec};
use qprop::{qeval, Assignment, QEvalError};

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReflectError {
    #[error("empty proof")]
    Empty,
    #[error(transparent)]
    Eval(#[from] QEvalError),
}

/// Truth of the end-sequent under `a`, read as `∧ antecedent → ∨ succedent`.
/// Extension variables are first set to the value of their definitions, in
/// the order they are introduced. The proof is assumed to be accepted.
pub fn reflection_test(
    p: &[ProofStep],
    _sys: &SystemSpec,
    a: &Assignment,
) -> Result<bool, ReflectError> {
    let end = p.last().ok_or(ReflectError::Empty)?;
    let mut a = a.clone();
    for s in p {
        if let Rule::Extension { var, def } = &s.rule {
            let v = qeval(def, &a)?;
            a.insert(var.clone(), v);
        }
    }
    for f in &end.conclusion.ante {
        if !qeval(f, &a)? {
            return Ok(true);
        }
    }
    for f in &end.conclusion.succ {
        if qeval(f, &a)? {
            return Ok(true);
        }
    }
    Ok(false)
}
