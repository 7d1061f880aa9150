//! The shipped corpus of sample constructions, each with the width it is
//! checked at and the output mutations it must reject.

use crate::basic::{basic, merge, BasicOpts};
use crate::cert::ReductionCertificate;
use crate::collapse::collapse;
use crate::split::split;
use crate::mutate::{MutOp, Mutation};
use crate::params::{bounded_ax, eliminate};
use crate::variants::{variant_with, Direction, Variant, VariantOpts};
use crate::{Result, RuleKind, Scheme};
use formula_core::{f, t, Formula, QuantClass, Term};

#[derive(Debug, Clone)]
pub enum Construction {
    EliminateParameters {
        phi: Formula,
        kind: RuleKind,
    },
    BoundedAxiomatization {
        phi: Formula,
    },
    Basic {
        item: u8,
        phi: Formula,
        opts: BasicOpts,
    },
    Variant {
        variant: Variant,
        phi: Formula,
        direction: Direction,
        opts: VariantOpts,
    },
    MergeNestedPi {
        phi: Formula,
        psi: Formula,
        c: u32,
        theory: Vec<Formula>,
    },
    Collapse {
        thetas: Vec<Formula>,
        t: Term,
        c: u32,
        mode: Scheme,
        phi: Formula,
    },
    Split {
        instances: Vec<(Formula, Formula)>,
        phi: Formula,
        theory: Vec<Formula>,
    },
}

impl Construction {
    pub fn build(&self) -> Result<ReductionCertificate> {
        self.build_with(None)
    }

    /// Rebuild with `outputs` in place of the constructed formulas; the
    /// obligations are then stated about the replacements.
    pub fn build_with(&self, outputs: Option<&[Formula]>) -> Result<ReductionCertificate> {
        match self {
            Construction::EliminateParameters { phi, kind } => eliminate(phi, *kind, outputs),
            Construction::BoundedAxiomatization { phi } => bounded_ax(phi, outputs),
            Construction::Basic { item, phi, opts } => basic(*item, phi, opts, outputs),
            Construction::Variant {
                variant,
                phi,
                direction,
                opts,
            } => variant_with(*variant, phi, *direction, opts, outputs),
            Construction::MergeNestedPi {
                phi,
                psi,
                c,
                theory,
            } => merge(phi, psi, *c, theory, outputs),
            Construction::Collapse {
                thetas,
                t,
                c,
                mode,
                phi,
            } => collapse(thetas, t, *c, *mode, phi, outputs),
            Construction::Split {
                instances,
                phi,
                theory,
            } => split(instances, phi, theory, outputs),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GoldenCase {
    pub id: &'static str,
    pub construction: Construction,
    pub width: u32,
    /// Mutations of output 0 that must produce a counterexample.
    pub mutations: Vec<Mutation>,
}

impl GoldenCase {
    /// The certificate with output `index` replaced by its mutation.
    pub fn mutated(&self, index: usize, m: Mutation) -> Option<Result<ReductionCertificate>> {
        let base = match self.construction.build() {
            Ok(c) => c,
            Err(e) => return Some(Err(e)),
        };
        let mut outs = base.outputs.clone();
        outs[index] = crate::mutate(&outs[index], m)?;
        Some(self.construction.build_with(Some(&outs)))
    }
}

fn rule(scheme: Scheme, sigma: bool) -> RuleKind {
    let class = if sigma {
        QuantClass::sigma(1)
    } else {
        QuantClass::pi(1)
    };
    RuleKind::rule(scheme, class)
}

fn case(
    id: &'static str,
    construction: Construction,
    width: u32,
    muts: &[(MutOp, usize)],
) -> GoldenCase {
    GoldenCase {
        id,
        construction,
        width,
        mutations: muts.iter().map(|&(op, n)| Mutation::new(op, n)).collect(),
    }
}

fn elim(phi: &str, scheme: Scheme, sigma: bool) -> Construction {
    Construction::EliminateParameters {
        phi: f(phi),
        kind: rule(scheme, sigma),
    }
}

fn item(item: u8, phi: &str, scheme: Scheme) -> Construction {
    Construction::Basic {
        item,
        phi: f(phi),
        opts: BasicOpts { scheme },
    }
}

fn variant(v: Variant, phi: &str, d: Direction, scheme: Scheme) -> Construction {
    Construction::Variant {
        variant: v,
        phi: f(phi),
        direction: d,
        opts: VariantOpts { scheme, c: 1 },
    }
}

/// Instances α_j = (x = j), β_j = (x < j) with φ = (k <= x): each α_j → β_j
/// rules out x = j, so together they force φ.
pub fn split_sample(k: usize) -> Construction {
    let instances = (0..k as u64)
        .map(|j| {
            (
                Formula::eq(t("x"), Term::num(j)),
                Formula::lt(t("x"), Term::num(j)),
            )
        })
        .collect();
    Construction::Split {
        instances,
        phi: Formula::le(Term::num(k as u64), t("x")),
        theory: vec![],
    }
}

pub fn collapse_sample(k: usize, mode: Scheme) -> Construction {
    let thetas = (1..=k)
        .map(|j| f(&format!("x{j} monus x0 = x{j} | x0 <= x{j}")))
        .collect();
    Construction::Collapse {
        thetas,
        t: t("(1 # x0) monus 1"),
        c: 1,
        mode,
        phi: f("x0 <= x0 + x0"),
    }
}

pub fn golden_cases() -> Vec<GoldenCase> {
    use Direction::*;
    use MutOp::*;
    use Scheme::*;
    use Variant::*;
    vec![
        // parameter elimination
        case(
            "elim-sigma-ind-a",
            elim("EX z <= x. z + y = x", Ind, true),
            5,
            &[(NegateAtom, 0), (PerturbTerm, 1), (Negate, 0)],
        ),
        case(
            "elim-sigma-ind-b",
            elim("EX z <= x + y. z = x + y", Ind, true),
            5,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 1),
                (SwapConnective, 0),
                (PerturbTerm, 1),
            ],
        ),
        case(
            "elim-sigma-ind-c",
            elim("EX z <= x. z + z = x | z + z + 1 = x", Ind, true),
            5,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 1),
                (SwapConnective, 0),
                (PerturbTerm, 1),
            ],
        ),
        case(
            "elim-pi-ind-a",
            elim("ALL z <= y. z monus x <= y", Ind, false),
            5,
            &[
                (NegateAtom, 1),
                (SwapAtom, 1),
                (SwapConnective, 0),
                (WidenBound, 2),
            ],
        ),
        case(
            "elim-pi-ind-b",
            elim("ALL z <= x. z <= x + y", Ind, false),
            5,
            &[
                (NegateAtom, 1),
                (SwapAtom, 1),
                (SwapConnective, 0),
                (WidenBound, 2),
            ],
        ),
        case(
            "elim-pi-ind-c",
            elim("ALL z <= y. x * z <= x * y", Ind, false),
            5,
            &[
                (NegateAtom, 1),
                (SwapAtom, 1),
                (SwapConnective, 0),
                (WidenBound, 2),
            ],
        ),
        case(
            "elim-pi-pind-a",
            elim("ALL z <= y. z monus x <= y", Pind, false),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (WidenBound, 1)],
        ),
        case(
            "elim-pi-pind-b",
            elim("ALL z <= x. z <= x + y", Pind, false),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (WidenBound, 1)],
        ),
        case(
            "elim-pi-pind-c",
            elim("ALL z <= y. x * z <= x * y", Pind, false),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (WidenBound, 1)],
        ),
        case(
            "elim-sigma-pind-a",
            elim("EX u <= 1. x = half(x) + half(x) + u", Pind, true),
            4,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 0),
                (SwapAtom, 0),
                (SwapConnective, 0),
                (PerturbTerm, 0),
            ],
        ),
        case(
            "elim-sigma-pind-b",
            elim("EX u <= 1. u + y = y + mod2(x, 1)", Pind, true),
            4,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 0),
                (SwapAtom, 0),
                (SwapConnective, 0),
                (PerturbTerm, 0),
            ],
        ),
        case(
            "elim-sigma-pind-c",
            elim("EX u <= 1. u <= x", Pind, true),
            4,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 1),
                (SwapAtom, 1),
                (SwapConnective, 0),
            ],
        ),
        case(
            "bounded-ax",
            Construction::BoundedAxiomatization {
                phi: f("ALL y <= x. y <= x"),
            },
            5,
            &[(NegateAtom, 0), (WidenBound, 1), (Negate, 0)],
        ),
        // neighbouring classes
        case(
            "dual-ind",
            item(2, "x <= y", Ind),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (PerturbTerm, 0)],
        ),
        case(
            "dual-pind",
            item(2, "x <= y", Pind),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (PerturbTerm, 0)],
        ),
        case(
            "pi-unfold",
            item(4, "ALL z <= x. z <= x + y", Ind),
            4,
            &[
                (NegateAtom, 1),
                (SwapAtom, 1),
                (SwapConnective, 0),
                (PerturbTerm, 1),
            ],
        ),
        case(
            "pind-via-ind-pi",
            item(5, "ALL u <= x. u <= x + y", Ind),
            4,
            &[(NegateAtom, 0), (SwapAtom, 0), (WidenBound, 1)],
        ),
        case(
            "pind-via-ind-sigma",
            item(5, "EX z <= x. z + z = x | z + z + 1 = x", Ind),
            4,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 0),
                (SwapConnective, 0),
                (PerturbTerm, 0),
            ],
        ),
        case(
            "interval-halving",
            item(6, "x <= y", Ind),
            4,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 1),
                (SwapAtom, 1),
                (SwapConnective, 0),
                (PerturbTerm, 4),
            ],
        ),
        case(
            "additivity",
            item(7, "x <= y + y", Ind),
            4,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 0),
                (SwapAtom, 0),
                (SwapConnective, 0),
                (PerturbTerm, 0),
            ],
        ),
        case(
            "nested-pi-merge",
            Construction::MergeNestedPi {
                phi: f("ALL u <= y. u <= y"),
                psi: f("ALL u <= x. u <= x + 1"),
                c: 1,
                theory: vec![],
            },
            4,
            &[
                (NegateAtom, 0),
                (SwapAtom, 0),
                (SwapConnective, 1),
                (WidenBound, 1),
            ],
        ),
        // variant schemes
        case(
            "base-from-rule0",
            variant(BaseCase, "x <= y", Forward, Ind),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (PerturbTerm, 1)],
        ),
        case(
            "base-to-rule0",
            variant(BaseCase, "x <= y", Backward, Lind),
            5,
            &[(NegateAtom, 1), (SwapAtom, 1), (Negate, 0)],
        ),
        case(
            "length-pind-to-lind",
            variant(Length, "x <= y", Forward, Ind),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (PerturbTerm, 0)],
        ),
        case(
            "length-lind-to-pind",
            variant(Length, "x <= y", Backward, Ind),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (PerturbTerm, 0)],
        ),
        case(
            "length-lt-pi",
            variant(Length, "ALL u <= x. u <= x + y", Lt, Ind),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (WidenBound, 1)],
        ),
        case(
            "length-lt-sigma",
            variant(Length, "EX z <= 1. x = half(x) + half(x) + z", Lt, Ind),
            5,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 0),
                (SwapAtom, 0),
                (PerturbTerm, 1),
                (WidenBound, 1),
            ],
        ),
        case(
            "cov-ind",
            variant(CourseOfValues, "ALL u <= x. u <= x + y", Forward, Ind),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (WidenBound, 1)],
        ),
        case(
            "cov-pind",
            variant(CourseOfValues, "ALL u <= x. u <= x + y", Forward, Pind),
            5,
            &[
                (NegateAtom, 1),
                (SwapAtom, 1),
                (SwapConnective, 0),
                (WidenBound, 1),
            ],
        ),
        case(
            "cov-recode",
            variant(
                CourseOfValues,
                "ALL z <= (1 # x) monus 1. z <= x + z",
                Backward,
                Ind,
            ),
            5,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 0),
                (SwapAtom, 1),
                (SwapConnective, 0),
                (PerturbTerm, 0),
            ],
        ),
        case(
            "res-pi",
            variant(Restricted, "ALL u <= x. u <= x + y", Forward, Ind),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (WidenBound, 1)],
        ),
        case(
            "res-sigma",
            variant(
                Restricted,
                "EX z <= 1. x = half(x) + half(x) + z",
                Forward,
                Ind,
            ),
            5,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 0),
                (SwapAtom, 0),
                (PerturbTerm, 1),
            ],
        ),
        case(
            "witness-sigma",
            variant(
                WitnessWeakening,
                "EX z <= x. z + z = x | z + z + 1 = x",
                Forward,
                Ind,
            ),
            5,
            &[
                (FlipQuantifier, 0),
                (NegateAtom, 3),
                (SwapConnective, 0),
                (PerturbTerm, 3),
            ],
        ),
        case(
            "witness-b0",
            variant(WitnessWeakening, "x <= y", Forward, Ind),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (PerturbTerm, 1)],
        ),
        case(
            "min-as-ind",
            variant(MinAsInd, "y <= x", Forward, Min),
            5,
            &[(NegateAtom, 0), (SwapAtom, 0), (PerturbTerm, 0)],
        ),
        case(
            "min-rule",
            variant(MinRule, "ALL v <= x. v <= x + y", Forward, Min),
            5,
            &[(NegateAtom, 2), (SwapAtom, 2), (WidenBound, 0)],
        ),
        // collapse and splitting
        case(
            "collapse-ind-k1",
            collapse_sample(1, Ind),
            4,
            &[
                (NegateAtom, 0),
                (SwapAtom, 0),
                (SwapConnective, 0),
                (PerturbTerm, 1),
            ],
        ),
        case(
            "collapse-ind-k2",
            collapse_sample(2, Ind),
            4,
            &[(NegateAtom, 2), (SwapAtom, 2), (SwapConnective, 0)],
        ),
        case(
            "collapse-pind-k2",
            collapse_sample(2, Pind),
            4,
            &[(NegateAtom, 0), (SwapAtom, 0), (SwapConnective, 0)],
        ),
        case(
            "split-k1",
            split_sample(1),
            4,
            &[(NegateAtom, 1), (SwapConnective, 0), (Negate, 0)],
        ),
        case(
            "split-k2",
            split_sample(2),
            4,
            &[(NegateAtom, 1), (SwapConnective, 0), (Negate, 0)],
        ),
        case(
            "split-k3",
            split_sample(3),
            4,
            &[(NegateAtom, 1), (SwapConnective, 0), (Negate, 0)],
        ),
    ]
}
