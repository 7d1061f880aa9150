//! Reductions between induction rules of neighbouring classes, and the
//! merge of two nested Π̂ rule applications into one.

use crate::cert::{ClassClaim, Obligation, ReductionCertificate};
use crate::params::rule_premises;
use crate::{
    at, at_terms, check_vars, level_of, outputs_or, require, split_first, tm, ReductionError,
    Result, Scheme,
};
use formula_core::{
    classify, prenex_formula, prenex_sigma, substitute_term, ClassKind, Formula, QuantClass, Term,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicOpts {
    /// IND or PIND flavour where an item has both.
    pub scheme: Scheme,
}

impl Default for BasicOpts {
    fn default() -> Self {
        BasicOpts {
            scheme: Scheme::Ind,
        }
    }
}

pub fn basic_reduce(item: u8, phi: &Formula, opts: &BasicOpts) -> Result<ReductionCertificate> {
    basic(item, phi, opts, None)
}

pub(crate) fn basic(
    item: u8,
    phi: &Formula,
    opts: &BasicOpts,
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    if !matches!(opts.scheme, Scheme::Ind | Scheme::Pind) {
        return Err(ReductionError::Unsupported(format!(
            "{:?} scheme",
            opts.scheme
        )));
    }
    match item {
        2 => dual(phi, opts.scheme, over),
        4 => pi_to_sigma(phi, opts.scheme, over),
        5 => pind_from_ind(phi, over),
        6 => ind_from_pind(phi, over),
        7 => additivity(phi, over),
        _ => Err(ReductionError::Unsupported(format!("item {item}"))),
    }
}

fn single(
    name: String,
    phi: &Formula,
    psi: Formula,
    class: QuantClass,
    obligations: Vec<Obligation>,
) -> ReductionCertificate {
    ReductionCertificate {
        name,
        inputs: vec![phi.clone()],
        outputs: vec![psi.clone()],
        obligations,
        class_claims: vec![ClassClaim {
            formula: psi,
            class,
        }],
    }
}

fn step_of(scheme: Scheme, f: &Formula) -> Formula {
    match scheme {
        Scheme::Pind => Formula::implies(at(f, &[("x", "half(x)")]), f.clone()),
        _ => Formula::implies(f.clone(), at(f, &[("x", "x + 1")])),
    }
}

fn scheme_tag(s: Scheme) -> &'static str {
    if s == Scheme::Pind {
        "pind"
    } else {
        "ind"
    }
}

/// Item 2: induction for φ from induction for ¬φ read backwards from a.
fn dual(phi: &Formula, scheme: Scheme, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    let class = classify(phi);
    if !class.is_strict() {
        return Err(ReductionError::ClassMismatch {
            expected: "a strict class".into(),
            found: class,
        });
    }
    let arg = match scheme {
        Scheme::Pind => "div2(a, len(x))",
        _ => "a monus x",
    };
    let default = prenex_formula(&Formula::not(at(phi, &[("x", arg)])));
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = rule_premises(phi, scheme);
    let mut obligations = vec![
        Obligation::bare(
            "base",
            Formula::implies(
                Formula::not(at(phi, &[("x", "a")])),
                at(&psi, &[("x", "0")]),
            ),
        ),
        Obligation::new("step", vec![prem[1].clone()], step_of(scheme, &psi)),
        Obligation::bare(
            "end",
            Formula::implies(
                at(&psi, &[("x", "a")]),
                Formula::not(at(phi, &[("x", "0")])),
            ),
        ),
        Obligation::bare(
            "reading",
            Formula::iff(Formula::not(psi.clone()), at(phi, &[("x", arg)])),
        ),
    ];
    if scheme != Scheme::Pind {
        obligations.push(Obligation::bare(
            "involution",
            Formula::implies(
                Formula::le(tm("x"), tm("a")),
                Formula::iff(Formula::not(at(&psi, &[("x", "a monus x")])), phi.clone()),
            ),
        ));
    }
    Ok(single(
        format!("dual-{}", scheme_tag(scheme)),
        phi,
        psi,
        class.dual(),
        obligations,
    ))
}

/// Item 4: Π̂ᵢ induction rule from Σ̂ᵢ, unfolding the leading ∀z≤t.
fn pi_to_sigma(
    phi: &Formula,
    scheme: Scheme,
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    let level = level_of(phi, false, 1)?;
    let (zv, t, theta) = split_first(phi, false).ok_or_else(|| ReductionError::ClassMismatch {
        expected: "ALL z <= t. θ with θ strict Σ̂".into(),
        found: classify(phi),
    })?;
    require(&theta, true, level - 1)?;
    let arg = match scheme {
        Scheme::Pind => "div2(a, len(x))",
        _ => "a monus x",
    };
    let to_a = |f: &Formula| at_terms(f, &[("x", tm("a")), (zv.as_str(), tm("z"))]);
    let t_a = substitute_term(&t, &[("x".to_string(), tm("a"))].into_iter().collect());
    let default = prenex_sigma(&Formula::implies(
        Formula::and(at(phi, &[("x", arg)]), Formula::le(tm("z"), t_a)),
        to_a(&theta),
    ));
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = rule_premises(phi, scheme);
    let t_xy = t.clone();
    let conclusion = Formula::implies(
        Formula::forall("z", t_xy, at(&psi, &[("a", "x")])),
        Formula::implies(at(phi, &[("x", "0")]), phi.clone()),
    );
    let obligations = vec![
        Obligation::bare("base", at(&psi, &[("x", "0")])),
        Obligation::new("step", vec![prem[1].clone()], step_of(scheme, &psi)),
        Obligation::bare("conclusion", conclusion),
    ];
    Ok(single(
        format!("pi-unfold-{}", scheme_tag(scheme)),
        phi,
        psi,
        QuantClass::sigma(level),
        obligations,
    ))
}

/// Item 5: PIND for φ from IND for an auxiliary formula.
fn pind_from_ind(phi: &Formula, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    let class = classify(phi);
    let prem = rule_premises(phi, Scheme::Pind);
    match class.kind {
        ClassKind::PiHat | ClassKind::SigmaHatB0 => {
            let level = class.level.max(1);
            let default = prenex_formula(&Formula::forall("u", tm("x"), at(phi, &[("x", "u")])));
            let psi = outputs_or(vec![default], over).remove(0);
            let obligations = vec![
                Obligation::new("base", vec![prem[0].clone()], at(&psi, &[("x", "0")])),
                Obligation::new("step", prem, step_of(Scheme::Ind, &psi)),
                Obligation::bare("conclusion", Formula::implies(psi.clone(), phi.clone())),
            ];
            Ok(single(
                "pind-via-ind-pi".into(),
                phi,
                psi,
                QuantClass::pi(level),
                obligations,
            ))
        }
        ClassKind::SigmaHat => {
            let default = at(phi, &[("x", "div2(a, len(a) monus x)")]);
            let psi = outputs_or(vec![default], over).remove(0);
            let obligations = vec![
                Obligation::new("base", vec![prem[0].clone()], at(&psi, &[("x", "0")])),
                Obligation::new("step", vec![prem[1].clone()], step_of(Scheme::Ind, &psi)),
                Obligation::bare(
                    "conclusion",
                    Formula::implies(at(&psi, &[("x", "len(x)"), ("a", "x")]), phi.clone()),
                ),
            ];
            Ok(single(
                "pind-via-ind-sigma".into(),
                phi,
                psi,
                class,
                obligations,
            ))
        }
        ClassKind::NonStrict => Err(ReductionError::ClassMismatch {
            expected: "a strict class".into(),
            found: class,
        }),
    }
}

/// Item 6: IND for φ ∈ Σ̂ᵢ by halving an interval where φ flips.
fn ind_from_pind(phi: &Formula, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    let level = level_of(phi, true, 0)?;
    let flip = Formula::and(
        Formula::le(tm("u + v"), tm("a")),
        Formula::and(
            at(phi, &[("x", "u")]),
            Formula::not(at(phi, &[("x", "u + v")])),
        ),
    );
    let default = prenex_sigma(&Formula::implies(
        Formula::and(at(phi, &[("x", "0")]), Formula::not(at(phi, &[("x", "a")]))),
        Formula::exists(
            "u",
            tm("a"),
            Formula::exists("v", Term::ceil_div_len(tm("a"), tm("x")), flip),
        ),
    ));
    let psi = outputs_or(vec![default], over).remove(0);
    let steps_below = Formula::forall(
        "u",
        tm("a"),
        Formula::implies(
            Formula::lt(tm("u"), tm("a")),
            Formula::implies(at(phi, &[("x", "u")]), at(phi, &[("x", "u + 1")])),
        ),
    );
    let obligations = vec![
        Obligation::bare("base", at(&psi, &[("x", "0")])),
        Obligation::bare("step", step_of(Scheme::Pind, &psi)),
        Obligation::bare(
            "conclusion",
            Formula::implies(
                at(&psi, &[("x", "a")]),
                Formula::implies(
                    Formula::and(at(phi, &[("x", "0")]), steps_below),
                    at(phi, &[("x", "a")]),
                ),
            ),
        ),
    ];
    Ok(single(
        "interval-halving".into(),
        phi,
        psi,
        QuantClass::sigma(level + 1),
        obligations,
    ))
}

/// Item 7: Σ̂ᵢ-IND rule from Π̂ᵢ₊₁-PIND rule through additivity.
fn additivity(phi: &Formula, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    let level = level_of(phi, true, 0)?;
    let default = prenex_formula(&Formula::forall(
        "x'",
        tm("z"),
        Formula::implies(
            Formula::and(at(phi, &[("x", "x'")]), Formula::le(tm("x + x'"), tm("z"))),
            at(phi, &[("x", "x + x'")]),
        ),
    ));
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = rule_premises(phi, Scheme::Ind);
    let obligations = vec![
        Obligation::bare("base", at(&psi, &[("x", "0")])),
        Obligation::new("one", vec![prem[1].clone()], at(&psi, &[("x", "1")])),
        Obligation::bare(
            "additive",
            Formula::implies(
                Formula::and(at(&psi, &[("x", "x0")]), at(&psi, &[("x", "x1")])),
                at(&psi, &[("x", "x0 + x1")]),
            ),
        ),
        Obligation::bare(
            "conclusion",
            Formula::implies(
                at(&psi, &[("z", "x")]),
                Formula::implies(at(phi, &[("x", "0")]), phi.clone()),
            ),
        ),
    ];
    Ok(single(
        "additivity".into(),
        phi,
        psi,
        QuantClass::pi(level + 1),
        obligations,
    ))
}

/// χ(z) = ∀y≤z φ(y) ∧ ∀x≤z (2^{|x|^c}+x ≤ z → ψ(x)); `theory` is the side
/// theory T, added to every premise list.
pub fn merge_nested_pi(
    phi: &Formula,
    psi: &Formula,
    c: u32,
    theory: &[Formula],
) -> Result<ReductionCertificate> {
    merge(phi, psi, c, theory, None)
}

pub(crate) fn merge(
    phi: &Formula,
    psi: &Formula,
    c: u32,
    theory: &[Formula],
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    if c < 1 {
        return Err(ReductionError::BadExponent);
    }
    check_vars(phi, &["y"])?;
    check_vars(psi, &["x"])?;
    let level = level_of(phi, false, 1)?.max(level_of(psi, false, 1)?);
    let parikh = Term::pow2_len_pow(tm("x"), c);
    let default = prenex_formula(&Formula::and(
        Formula::forall("y", tm("z"), phi.clone()),
        Formula::forall(
            "x",
            tm("z"),
            Formula::implies(Formula::le(parikh.clone() + tm("x"), tm("z")), psi.clone()),
        ),
    ));
    let chi = outputs_or(vec![default], over).remove(0);
    let phi0 = at(phi, &[("y", "0")]);
    let phi_step = Formula::implies(phi.clone(), at(phi, &[("y", "y + 1")]));
    let psi0 = at(psi, &[("x", "0")]);
    let psi_step = Formula::implies(
        Formula::forall("y", parikh.clone(), phi.clone()),
        Formula::implies(psi.clone(), at(psi, &[("x", "x + 1")])),
    );
    let with_t = |mut v: Vec<Formula>| {
        v.extend(theory.iter().cloned());
        v
    };
    let obligations = vec![
        Obligation::new(
            "base",
            with_t(vec![phi0.clone(), psi0.clone()]),
            at(&chi, &[("z", "0")]),
        ),
        Obligation::new(
            "step",
            with_t(vec![phi0, phi_step, psi0, psi_step]),
            Formula::implies(chi.clone(), at(&chi, &[("z", "z + 1")])),
        ),
        Obligation::bare(
            "conclusion",
            Formula::implies(at_terms(&chi, &[("z", parikh + tm("x"))]), psi.clone()),
        ),
    ];
    Ok(ReductionCertificate {
        name: "nested-pi-merge".into(),
        inputs: vec![phi.clone(), psi.clone()],
        outputs: vec![chi.clone()],
        obligations,
        class_claims: vec![ClassClaim {
            formula: chi,
            class: QuantClass::pi(level),
        }],
    })
}
