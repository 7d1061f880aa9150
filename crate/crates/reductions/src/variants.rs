//! Equivalences between the variant schemes and rules (length induction,
//! course-of-values forms, restricted PIND, minimization) and the basic ones.

use crate::cert::{ClassClaim, Obligation, ReductionCertificate};
use crate::params::rule_premises;
use crate::{
    at, at_terms, check_vars, outputs_or, split_first, tm, ReductionError, Result, Scheme,
};
use formula_core::{
    classify, prenex_formula, substitute_term, ClassKind, Formula, QuantClass, Term,
};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Base case inside the conclusion.
    BaseCase,
    /// PIND against LIND.
    Length,
    /// IND against IND<.
    CourseOfValues,
    /// PINDres.
    Restricted,
    WitnessWeakening,
    /// MIN read as IND< for the negation.
    MinAsInd,
    /// MIN rule from the MIN scheme.
    MinRule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
    /// The course-of-values (`<`) form where a variant has one.
    Lt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantOpts {
    pub scheme: Scheme,
    /// Exponent in 2^{|x|^c}.
    pub c: u32,
}

impl Default for VariantOpts {
    fn default() -> Self {
        VariantOpts {
            scheme: Scheme::Ind,
            c: 1,
        }
    }
}

pub fn variant_reduce(
    variant: Variant,
    phi: &Formula,
    direction: Direction,
    opts: &VariantOpts,
) -> Result<ReductionCertificate> {
    variant_with(variant, phi, direction, opts, None)
}

pub(crate) fn variant_with(
    variant: Variant,
    phi: &Formula,
    direction: Direction,
    opts: &VariantOpts,
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    use Direction::*;
    use Variant::*;
    match (variant, direction) {
        (BaseCase, Forward | Backward) => base_position(phi, direction, opts.scheme, over),
        (Length, Forward) => pind_to_lind(phi, over),
        (Length, Backward) => lind_to_pind(phi, over),
        (Length, Lt) => lind_lt(phi, over),
        (CourseOfValues, Forward | Lt) => course_of_values(phi, opts.scheme, over),
        (CourseOfValues, Backward) => pairing_recode(phi, opts.c, over),
        (Restricted, Forward) => pind_res(phi, over),
        (WitnessWeakening, Forward) => witness_weakening(phi, opts.scheme, over),
        (MinAsInd, Forward) => min_as_ind(phi, opts.scheme, over),
        (MinRule, Forward) => min_rule(phi, opts.scheme, over),
        (v, d) => Err(ReductionError::Unsupported(format!("{v:?} with {d:?}"))),
    }
}

fn name(v: &str, tag: &str) -> String {
    format!("{v}-{tag}")
}

fn strict(phi: &Formula) -> Result<QuantClass> {
    let c = classify(phi);
    if c.is_strict() {
        Ok(c)
    } else {
        Err(ReductionError::ClassMismatch {
            expected: "a strict class".into(),
            found: c,
        })
    }
}

fn claim(f: &Formula, class: QuantClass) -> Vec<ClassClaim> {
    vec![ClassClaim {
        formula: f.clone(),
        class,
    }]
}

fn single(
    name: String,
    phi: &Formula,
    psi: Formula,
    class: Option<QuantClass>,
    obligations: Vec<Obligation>,
) -> ReductionCertificate {
    ReductionCertificate {
        name,
        inputs: vec![phi.clone()],
        class_claims: class.map(|c| claim(&psi, c)).unwrap_or_default(),
        outputs: vec![psi],
        obligations,
    }
}

fn subst_t(t: &Term, pairs: &[(&str, Term)]) -> Term {
    let map: BTreeMap<String, Term> = pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect();
    substitute_term(t, &map)
}

/// The base case sits in the premises or in the conclusion.
fn base_position(
    phi: &Formula,
    dir: Direction,
    scheme: Scheme,
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    strict(phi)?;
    let end = match scheme {
        Scheme::Lind => at(phi, &[("x", "len(x)")]),
        Scheme::Ind | Scheme::Pind => phi.clone(),
        s => {
            return Err(ReductionError::Unsupported(format!(
                "{s:?} base repositioning"
            )))
        }
    };
    let phi0 = at(phi, &[("x", "0")]);
    let rule0 = outputs_or(vec![Formula::implies(phi0.clone(), end.clone())], over).remove(0);
    let obligations = match dir {
        Direction::Forward => vec![Obligation::bare(
            "detach",
            Formula::implies(Formula::and(phi0.clone(), rule0.clone()), end),
        )],
        _ => vec![
            Obligation::bare(
                "refuted-base",
                Formula::implies(Formula::not(phi0.clone()), rule0.clone()),
            ),
            Obligation::bare("proved-base", Formula::implies(end, rule0.clone())),
            Obligation::bare(
                "excluded-middle",
                Formula::or(phi0.clone(), Formula::not(phi0)),
            ),
        ],
    };
    let tag = if dir == Direction::Forward {
        "from-rule0"
    } else {
        "to-rule0"
    };
    Ok(single(name("base", tag), phi, rule0, None, obligations))
}

fn pind_to_lind(phi: &Formula, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    let class = strict(phi)?;
    let default = at(phi, &[("x", "div2(z, len(z) monus x)")]);
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = rule_premises(phi, Scheme::Pind);
    let obligations = vec![
        Obligation::new("base", vec![prem[0].clone()], at(&psi, &[("x", "0")])),
        Obligation::new(
            "step",
            vec![prem[1].clone()],
            Formula::implies(psi.clone(), at(&psi, &[("x", "x + 1")])),
        ),
        Obligation::bare(
            "conclusion",
            Formula::implies(at(&psi, &[("x", "len(z)")]), at(phi, &[("x", "z")])),
        ),
    ];
    Ok(single(
        name("length", "pind-to-lind"),
        phi,
        psi,
        Some(class),
        obligations,
    ))
}

fn lind_to_pind(phi: &Formula, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    let class = strict(phi)?;
    let default = at(phi, &[("x", "len(x)")]);
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = rule_premises(phi, Scheme::Ind);
    let obligations = vec![
        Obligation::new("base", vec![prem[0].clone()], at(&psi, &[("x", "0")])),
        Obligation::new(
            "step",
            vec![prem[1].clone()],
            Formula::implies(at(&psi, &[("x", "half(x)")]), psi.clone()),
        ),
        Obligation::bare(
            "conclusion",
            Formula::implies(psi.clone(), at(phi, &[("x", "len(x)")])),
        ),
    ];
    Ok(single(
        name("length", "lind-to-pind"),
        phi,
        psi,
        Some(class),
        obligations,
    ))
}

/// ∀x'<x φ(x') → φ(x), with the inner quantifier bounded by x.
fn cov_premise(phi: &Formula, by_length: bool) -> Formula {
    let guard = if by_length {
        Formula::lt(tm("len(x')"), tm("len(x)"))
    } else {
        Formula::lt(tm("x'"), tm("x"))
    };
    Formula::implies(
        Formula::forall(
            "x'",
            tm("x"),
            Formula::implies(guard, at(phi, &[("x", "x'")])),
        ),
        phi.clone(),
    )
}

/// Σ̂ case helper: `∃w ≤ b ∀u ≤ |x| ((w)_u ≤ t(a(u)) ∧ θ(a(u), (w)_u))`, where
/// `a(u)` is the argument fed to φ at position u and `top` bounds every `a(u)`.
fn sequence_witness(phi: &Formula, arg: &str, top: &str) -> Result<(Formula, QuantClass)> {
    let class = classify(phi);
    let (zv, t, theta) = split_first(phi, true).ok_or_else(|| ReductionError::ClassMismatch {
        expected: "EX z <= t. θ".into(),
        found: class,
    })?;
    crate::require(&theta, false, class.level - 1)?;
    let a = tm(arg);
    let entry = tm("seq(w, u)");
    let t_at = subst_t(&t, &[("x", a.clone())]);
    let t_top = subst_t(&t, &[("x", tm(top))]);
    let theta_at = at_terms(&theta, &[("x", a), (zv.as_str(), entry.clone())]);
    let bound = t_top.clone().len().pair(tm("x + x + 1").smash(t_top));
    let f = prenex_formula(&Formula::exists(
        "w",
        bound,
        Formula::forall(
            "u",
            tm("len(x)"),
            Formula::and(Formula::le(entry, t_at), theta_at),
        ),
    ));
    Ok((f, class))
}

fn lind_lt(phi: &Formula, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    let class = strict(phi)?;
    let (default, claim_class) = match class.kind {
        ClassKind::SigmaHat => sequence_witness(phi, "u", "len(x)")?,
        _ => (
            prenex_formula(&Formula::forall("u", tm("len(x)"), at(phi, &[("x", "u")]))),
            QuantClass::pi(class.level.max(1)),
        ),
    };
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = cov_premise(phi, false);
    let obligations = vec![
        Obligation::new("base", vec![prem.clone()], at(&psi, &[("x", "0")])),
        Obligation::new(
            "step",
            vec![prem],
            Formula::implies(at(&psi, &[("x", "half(x)")]), psi.clone()),
        ),
        Obligation::bare(
            "conclusion",
            Formula::implies(psi.clone(), at(phi, &[("x", "len(x)")])),
        ),
    ];
    Ok(single(
        name("length", "lind-lt-to-pind"),
        phi,
        psi,
        Some(claim_class),
        obligations,
    ))
}

fn course_of_values(
    phi: &Formula,
    scheme: Scheme,
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    let class = strict(phi)?;
    let level = match class.kind {
        ClassKind::SigmaHat => class.level + 1,
        _ => class.level.max(1),
    };
    let (default, prem, step, tag) = match scheme {
        Scheme::Ind => (
            Formula::forall("z", tm("x"), at(phi, &[("x", "z")])),
            cov_premise(phi, false),
            "x + 1",
            "ind-lt",
        ),
        Scheme::Pind => (
            // all z below 2^{|x|}
            Formula::forall(
                "z",
                tm("1 # x"),
                Formula::implies(Formula::lt(tm("z"), tm("1 # x")), at(phi, &[("x", "z")])),
            ),
            cov_premise(phi, true),
            "",
            "pind-lt",
        ),
        s => {
            return Err(ReductionError::Unsupported(format!(
                "{s:?} course-of-values"
            )))
        }
    };
    let psi = outputs_or(vec![prenex_formula(&default)], over).remove(0);
    let step_ob = if step.is_empty() {
        Formula::implies(at(&psi, &[("x", "half(x)")]), psi.clone())
    } else {
        Formula::implies(psi.clone(), at(&psi, &[("x", step)]))
    };
    let obligations = vec![
        Obligation::new("base", vec![prem.clone()], at(&psi, &[("x", "0")])),
        Obligation::new("step", vec![prem], step_ob),
        Obligation::bare("conclusion", Formula::implies(psi.clone(), phi.clone())),
    ];
    Ok(single(
        name("cov", tag),
        phi,
        psi,
        Some(QuantClass::pi(level)),
        obligations,
    ))
}

fn power(base: Term, c: u32) -> Term {
    (1..c).fold(base.clone(), |acc, _| acc * base.clone())
}

/// ⟨u,v⟩ = u·2^{|u|^c} + v.
pub fn len_pair(u: Term, v: Term, c: u32) -> Term {
    u.clone() * Term::pow2_len_pow(u, c) + v
}

/// The bound 2^{|x|^c} ∸ 1 expected on the leading ∀ of a recoded formula.
pub fn recode_bound(c: u32) -> Term {
    Term::pow2_len_pow(tm("x"), c).monus(Term::One)
}

fn pairing_recode(phi: &Formula, c: u32, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    if c < 1 {
        return Err(ReductionError::BadExponent);
    }
    check_vars(phi, &["x"])?;
    let class = classify(phi);
    let (zv, bound, theta) =
        split_first(phi, false).ok_or_else(|| ReductionError::ClassMismatch {
            expected: "ALL z <= 2^{|x|^c} monus 1. θ".into(),
            found: class,
        })?;
    if bound != recode_bound(c) {
        return Err(ReductionError::Malformed(format!(
            "leading bound must be {}",
            formula_core::render_term(&recode_bound(c))
        )));
    }
    let level = class.level.max(1) - 1;
    crate::require(&theta, true, level)?;
    let theta_uv = |u: Term, v: Term| at_terms(&theta, &[("x", u), (zv.as_str(), v)]);
    // |w| = k + k^c singles out k = |l(w)|
    let split = Formula::eq(tm("k") + power(tm("k"), c), tm("len(w)"));
    let low = power(tm("k"), c);
    let decoded = Formula::exists(
        "k",
        tm("len(w)"),
        Formula::and(
            split.clone(),
            theta_uv(tm("w").div2(low.clone()), tm("w").mod2(low)),
        ),
    );
    let undecodable = Formula::forall("k", tm("len(w)"), Formula::not(split));
    let default = prenex_formula(&Formula::or(decoded, undecodable));
    let psi = outputs_or(vec![default], over).remove(0);
    let p = |u: &str| Term::pow2_len_pow(tm(u), c);
    let pair = |u: &str, v: &str| len_pair(tm(u), tm(v), c);
    let below = Formula::forall(
        "w'",
        tm("w"),
        Formula::implies(Formula::lt(tm("w'"), tm("w")), at(&psi, &[("w", "w'")])),
    );
    let ranges = Formula::and(Formula::lt(tm("v"), p("u")), Formula::lt(tm("v'"), p("u'")));
    let obligations = vec![
        Obligation::new(
            "step",
            vec![
                at(phi, &[("x", "0")]),
                Formula::implies(phi.clone(), at(phi, &[("x", "x + 1")])),
            ],
            Formula::implies(below, psi.clone()),
        ),
        Obligation::bare(
            "conclusion",
            Formula::implies(
                Formula::forall(
                    "v",
                    p("x"),
                    Formula::implies(
                        Formula::lt(tm("v"), p("x")),
                        at_terms(&psi, &[("w", pair("x", "v"))]),
                    ),
                ),
                phi.clone(),
            ),
        ),
        Obligation::bare(
            "decode",
            Formula::implies(
                Formula::lt(tm("v"), p("u")),
                Formula::iff(
                    at_terms(&psi, &[("w", pair("u", "v"))]),
                    theta_uv(tm("u"), tm("v")),
                ),
            ),
        ),
        Obligation::bare(
            "side-order",
            Formula::implies(
                Formula::and(Formula::lt(tm("u"), tm("u'")), ranges.clone()),
                Formula::lt(pair("u", "v"), pair("u'", "v'")),
            ),
        ),
        Obligation::bare(
            "side-length",
            Formula::implies(
                Formula::and(Formula::lt(tm("len(u)"), tm("len(u')")), ranges),
                Formula::lt(pair("u", "v").len(), pair("u'", "v'").len()),
            ),
        ),
    ];
    Ok(single(
        name("cov", "pairing-recode"),
        phi,
        psi,
        Some(QuantClass::sigma(level)),
        obligations,
    ))
}

fn pind_res(phi: &Formula, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    let class = strict(phi)?;
    let (default, claim_class) = match class.kind {
        ClassKind::SigmaHat => sequence_witness(phi, "div2(x, u)", "x")?,
        _ => (
            prenex_formula(&Formula::forall(
                "u",
                tm("len(x)"),
                at(phi, &[("x", "div2(x, u)")]),
            )),
            QuantClass::pi(class.level.max(1)),
        ),
    };
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = Formula::implies(
        Formula::forall(
            "u",
            tm("len(x)"),
            Formula::implies(
                Formula::le(Term::One, tm("u")),
                at(phi, &[("x", "div2(x, u)")]),
            ),
        ),
        phi.clone(),
    );
    let obligations = vec![
        Obligation::new("base", vec![prem.clone()], at(&psi, &[("x", "0")])),
        Obligation::new(
            "step",
            vec![prem],
            Formula::implies(at(&psi, &[("x", "half(x)")]), psi.clone()),
        ),
        Obligation::bare("conclusion", Formula::implies(psi.clone(), phi.clone())),
    ];
    Ok(single(
        name("res", "pind-res"),
        phi,
        psi,
        Some(claim_class),
        obligations,
    ))
}

fn witness_weakening(
    phi: &Formula,
    scheme: Scheme,
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    let class = classify(phi);
    let end = match scheme {
        Scheme::Ind | Scheme::Pind => "x",
        Scheme::Lind => "len(x)",
        s => {
            return Err(ReductionError::Unsupported(format!(
                "{s:?} witness weakening"
            )))
        }
    };
    let rule_scheme = if scheme == Scheme::Pind {
        Scheme::Pind
    } else {
        Scheme::Ind
    };
    let (default, guard_bound) = match class.kind {
        ClassKind::SigmaHatB0 => (Formula::implies(at(phi, &[("x", "0")]), phi.clone()), None),
        ClassKind::SigmaHat => {
            let (zv, t, theta) = split_first(phi, true).expect("Σ̂ formula starts with ∃");
            let t0 = subst_t(&t, &[("x", Term::Zero)]);
            let guard = Formula::and(
                Formula::le(tm("z"), t0.clone()),
                at_terms(&theta, &[("x", Term::Zero), (zv.as_str(), tm("z"))]),
            );
            (Formula::implies(guard, phi.clone()), Some(t0))
        }
        _ => {
            return Err(ReductionError::ClassMismatch {
                expected: "SigmaHat (the Π̂ case goes through duality)".into(),
                found: class,
            })
        }
    };
    let psi = outputs_or(vec![prenex_formula(&default)], over).remove(0);
    let prem = rule_premises(phi, rule_scheme);
    let step = match rule_scheme {
        Scheme::Pind => Formula::implies(at(&psi, &[("x", "half(x)")]), psi.clone()),
        _ => Formula::implies(psi.clone(), at(&psi, &[("x", "x + 1")])),
    };
    let at_end = at(&psi, &[("x", end)]);
    let hyp = match &guard_bound {
        Some(t0) => Formula::forall("z", t0.clone(), at_end),
        None => at_end,
    };
    let obligations = vec![
        Obligation::bare("base", at(&psi, &[("x", "0")])),
        Obligation::new("step", vec![prem[1].clone()], step),
        Obligation::bare(
            "conclusion",
            Formula::implies(
                hyp,
                Formula::implies(at(phi, &[("x", "0")]), at(phi, &[("x", end)])),
            ),
        ),
    ];
    Ok(single(
        name("witness", "weakening"),
        phi,
        psi,
        Some(QuantClass::sigma(class.level)),
        obligations,
    ))
}

fn minimal(phi: &Formula, by_length: bool, negate: bool) -> Formula {
    let guard = if by_length {
        Formula::lt(tm("len(x')"), tm("len(x)"))
    } else {
        Formula::lt(tm("x'"), tm("x"))
    };
    let other = at(phi, &[("x", "x'")]);
    let other = if negate { Formula::not(other) } else { other };
    Formula::forall("x'", tm("x"), Formula::implies(guard, other))
}

fn min_flag(scheme: Scheme) -> Result<bool> {
    match scheme {
        Scheme::Min | Scheme::Ind => Ok(false),
        Scheme::Lmin | Scheme::Pind => Ok(true),
        s => Err(ReductionError::Unsupported(format!("{s:?} minimization"))),
    }
}

/// MIN as IND< for ¬φ, with the outer unbounded quantifiers cut at a fresh bound b.
fn min_as_ind(
    phi: &Formula,
    scheme: Scheme,
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    let class = strict(phi)?;
    let by_length = min_flag(scheme)?;
    let default = prenex_formula(&Formula::not(phi.clone()));
    let psi = outputs_or(vec![default], over).remove(0);
    let min_b = Formula::implies(
        Formula::exists("x", tm("b"), phi.clone()),
        Formula::exists(
            "x",
            tm("b"),
            Formula::and(phi.clone(), minimal(phi, by_length, true)),
        ),
    );
    let ind_b = Formula::implies(
        Formula::forall(
            "x",
            tm("b"),
            Formula::implies(minimal(&psi, by_length, false), psi.clone()),
        ),
        Formula::forall("x", tm("b"), psi.clone()),
    );
    let obligations = vec![
        Obligation::bare(
            "negation",
            Formula::iff(psi.clone(), Formula::not(phi.clone())),
        ),
        Obligation::bare("equivalence", Formula::iff(min_b.clone(), ind_b.clone())),
        Obligation::bare("minimization", min_b),
        Obligation::bare("course-of-values", ind_b),
    ];
    let tag = if by_length { "lmin" } else { "min" };
    Ok(single(
        name("min-as-ind", tag),
        phi,
        psi,
        Some(class.dual()),
        obligations,
    ))
}

fn min_rule(
    phi: &Formula,
    scheme: Scheme,
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    let by_length = min_flag(scheme)?;
    let class = classify(phi);
    let (theta_hat, search) = match class.kind {
        ClassKind::SigmaHatB0 => (at(phi, &[("x", "x0")]), tm("x0")),
        ClassKind::PiHat => {
            let (vv, t, theta) = split_first(phi, false).expect("Π̂ formula starts with ∀");
            let t0 = subst_t(&t, &[("x", tm("x0"))]);
            let body = at_terms(&theta, &[("x", tm("x0")), (vv.as_str(), tm("x"))]);
            (
                Formula::implies(Formula::le(tm("x"), t0.clone()), body),
                tm("x0") + t0,
            )
        }
        _ => {
            return Err(ReductionError::ClassMismatch {
                expected: "PiHat".into(),
                found: class,
            })
        }
    };
    let default = prenex_formula(&Formula::implies(theta_hat, phi.clone()));
    let psi = outputs_or(vec![default], over).remove(0);
    let phi_x0 = at(phi, &[("x", "x0")]);
    let obligations = vec![
        Obligation::bare("exists", Formula::exists("x", search, psi.clone())),
        Obligation::bare(
            "transfer",
            Formula::implies(phi_x0.clone(), Formula::iff(psi.clone(), phi.clone())),
        ),
        Obligation::bare(
            "minimal",
            Formula::implies(
                phi_x0,
                Formula::implies(
                    Formula::and(psi.clone(), minimal(&psi, by_length, true)),
                    Formula::and(phi.clone(), minimal(phi, by_length, true)),
                ),
            ),
        ),
    ];
    let tag = if by_length { "lmin-rule" } else { "min-rule" };
    Ok(single(
        name("min", tag),
        phi,
        psi,
        Some(QuantClass::pi(class.level.max(1))),
        obligations,
    ))
}
