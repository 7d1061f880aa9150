//! Small syntactic corruptions of formulas, used to check that certificate
//! obligations actually depend on the constructed outputs.

use formula_core::{Formula, Term};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutOp {
    /// Negate the whole formula.
    Negate,
    /// Exchange ∃ and ∀ at a quantifier.
    FlipQuantifier,
    /// Negate an atom.
    NegateAtom,
    /// `a <= b` becomes `b <= a`; `a = b` becomes `a <= b`.
    SwapAtom,
    /// ∧ ↔ ∨, and → becomes ∧.
    SwapConnective,
    /// Add one to the right-hand side of an atom.
    PerturbTerm,
    /// Add one to a quantifier bound.
    WidenBound,
}

/// An operator applied at the `nth` applicable position in pre-order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mutation {
    pub op: MutOp,
    pub nth: usize,
}

impl Mutation {
    pub const fn new(op: MutOp, nth: usize) -> Mutation {
        Mutation { op, nth }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.op {
            MutOp::Negate => "negate",
            MutOp::FlipQuantifier => "flip-quantifier",
            MutOp::NegateAtom => "negate-atom",
            MutOp::SwapAtom => "swap-atom",
            MutOp::SwapConnective => "swap-connective",
            MutOp::PerturbTerm => "perturb-term",
            MutOp::WidenBound => "widen-bound",
        };
        write!(f, "{name}#{}", self.nth)
    }
}

/// All mutations applicable to `f`.
pub fn all_mutations(f: &Formula) -> Vec<Mutation> {
    let ops = [
        MutOp::FlipQuantifier,
        MutOp::NegateAtom,
        MutOp::SwapAtom,
        MutOp::SwapConnective,
        MutOp::PerturbTerm,
        MutOp::WidenBound,
    ];
    let mut out = vec![Mutation::new(MutOp::Negate, 0)];
    for op in ops {
        let mut n = 0;
        while mutate(f, Mutation::new(op, n)).is_some() {
            out.push(Mutation::new(op, n));
            n += 1;
        }
    }
    out
}

/// `None` when fewer than `nth + 1` positions admit the operator.
pub fn mutate(f: &Formula, m: Mutation) -> Option<Formula> {
    if m.op == MutOp::Negate {
        return (m.nth == 0).then(|| Formula::not(f.clone()));
    }
    walk(f, m.op, &mut m.nth.clone())
}

fn hit(left: &mut Option<usize>) -> bool {
    match left {
        Some(0) => {
            *left = None;
            true
        }
        Some(n) => {
            *n -= 1;
            false
        }
        None => false,
    }
}

fn walk(f: &Formula, op: MutOp, left: &mut usize) -> Option<Formula> {
    let mut slot = Some(*left);
    let r = go(f, op, &mut slot);
    if let Some(n) = slot {
        *left = n;
        None
    } else {
        Some(r)
    }
}

fn applies(f: &Formula, op: MutOp) -> bool {
    match op {
        MutOp::FlipQuantifier | MutOp::WidenBound => {
            matches!(f, Formula::Exists(..) | Formula::Forall(..))
        }
        MutOp::NegateAtom | MutOp::SwapAtom | MutOp::PerturbTerm => {
            matches!(f, Formula::Eq(..) | Formula::Le(..))
        }
        MutOp::SwapConnective => {
            matches!(f, Formula::And(..) | Formula::Or(..) | Formula::Implies(..))
        }
        MutOp::Negate => false,
    }
}

fn rewrite(f: &Formula, op: MutOp) -> Formula {
    let bx = |x: &Formula| Box::new(x.clone());
    match (op, f) {
        (MutOp::FlipQuantifier, Formula::Exists(v, t, b)) => {
            Formula::Forall(v.clone(), t.clone(), b.clone())
        }
        (MutOp::FlipQuantifier, Formula::Forall(v, t, b)) => {
            Formula::Exists(v.clone(), t.clone(), b.clone())
        }
        (MutOp::WidenBound, Formula::Exists(v, t, b)) => {
            Formula::Exists(v.clone(), t.clone() + Term::One, b.clone())
        }
        (MutOp::WidenBound, Formula::Forall(v, t, b)) => {
            Formula::Forall(v.clone(), t.clone() + Term::One, b.clone())
        }
        (MutOp::NegateAtom, a) => Formula::not(a.clone()),
        (MutOp::SwapAtom, Formula::Le(a, b)) => Formula::Le(b.clone(), a.clone()),
        (MutOp::SwapAtom, Formula::Eq(a, b)) => Formula::Le(a.clone(), b.clone()),
        (MutOp::PerturbTerm, Formula::Le(a, b)) => Formula::Le(a.clone(), b.clone() + Term::One),
        (MutOp::PerturbTerm, Formula::Eq(a, b)) => Formula::Eq(a.clone(), b.clone() + Term::One),
        (MutOp::SwapConnective, Formula::And(a, b)) => Formula::Or(bx(a), bx(b)),
        (MutOp::SwapConnective, Formula::Or(a, b)) => Formula::And(bx(a), bx(b)),
        (MutOp::SwapConnective, Formula::Implies(a, b)) => Formula::And(bx(a), bx(b)),
        _ => f.clone(),
    }
}

fn go(f: &Formula, op: MutOp, left: &mut Option<usize>) -> Formula {
    if left.is_none() {
        return f.clone();
    }
    if applies(f, op) && hit(left) {
        return rewrite(f, op);
    }
    match f {
        Formula::Eq(..) | Formula::Le(..) => f.clone(),
        Formula::Not(a) => Formula::not(go(a, op, left)),
        Formula::And(a, b) => {
            let a = go(a, op, left);
            Formula::and(a, go(b, op, left))
        }
        Formula::Or(a, b) => {
            let a = go(a, op, left);
            Formula::or(a, go(b, op, left))
        }
        Formula::Implies(a, b) => {
            let a = go(a, op, left);
            Formula::implies(a, go(b, op, left))
        }
        Formula::Exists(v, t, b) => Formula::exists(v.clone(), t.clone(), go(b, op, left)),
        Formula::Forall(v, t, b) => Formula::forall(v.clone(), t.clone(), go(b, op, left)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use formula_core::{f, render};

    #[test]
    fn positions_in_preorder() {
        let g = f("EX u <= x. u <= y & y = x");
        let m = |op, n| mutate(&g, Mutation::new(op, n)).map(|h| render(&h));
        assert_eq!(
            m(MutOp::FlipQuantifier, 0).unwrap(),
            render(&f("ALL u <= x. u <= y & y = x"))
        );
        assert_eq!(
            m(MutOp::SwapAtom, 1).unwrap(),
            render(&f("EX u <= x. u <= y & y <= x"))
        );
        assert_eq!(m(MutOp::NegateAtom, 2), None);
        assert_eq!(all_mutations(&g).len(), 1 + 1 + 2 + 2 + 1 + 2 + 1);
    }
}
