//! Parameter elimination for induction rules, and the bounded form of
//! parameter-free Π̂ induction.

use crate::cert::{ClassClaim, Obligation, ReductionCertificate};
use crate::{
    at, at_terms, check_vars, outputs_or, require, split_first, tm, Form, ReductionError, Result,
    RuleKind, Scheme,
};
use formula_core::{prenex_formula, substitute, ClassKind, Formula, QuantClass, Term};

pub fn eliminate_parameters(phi: &Formula, kind: RuleKind) -> Result<ReductionCertificate> {
    eliminate(phi, kind, None)
}

/// Premises of the rule for `phi` in variables x, y.
pub(crate) fn rule_premises(phi: &Formula, scheme: Scheme) -> Vec<Formula> {
    let step_from = match scheme {
        Scheme::Pind => "half(x)",
        _ => "x",
    };
    let step_to = match scheme {
        Scheme::Pind => "x",
        _ => "x + 1",
    };
    vec![
        at(phi, &[("x", "0")]),
        Formula::implies(at(phi, &[("x", step_from)]), at(phi, &[("x", step_to)])),
    ]
}

pub(crate) fn eliminate(
    phi: &Formula,
    kind: RuleKind,
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    check_vars(phi, &["x", "y"])?;
    if !matches!(kind.form, Form::Rule | Form::RuleParamFree) {
        return Err(ReductionError::Unsupported(format!("{:?} form", kind.form)));
    }
    let sigma = match kind.class.kind {
        ClassKind::SigmaHat | ClassKind::SigmaHatB0 => true,
        ClassKind::PiHat => false,
        ClassKind::NonStrict => return Err(ReductionError::Unsupported("non-strict class".into())),
    };
    let level = kind.class.level;
    require(phi, sigma, level)?;
    match (kind.scheme, sigma) {
        (Scheme::Ind, true) => sigma_ind(phi, level, over),
        (Scheme::Ind, false) => pi_ind(phi, level, over),
        (Scheme::Pind, false) => pi_pind(phi, level, over),
        (Scheme::Pind, true) => sigma_pind(phi, level, over),
        (s, _) => Err(ReductionError::Unsupported(format!("{s:?} scheme"))),
    }
}

fn cert(
    name: &str,
    phi: &Formula,
    psi: Formula,
    claim: QuantClass,
    obligations: Vec<Obligation>,
) -> ReductionCertificate {
    ReductionCertificate {
        name: name.into(),
        inputs: vec![phi.clone()],
        outputs: vec![psi.clone()],
        obligations,
        class_claims: vec![ClassClaim {
            formula: psi,
            class: claim,
        }],
    }
}

fn psi_at(psi: &Formula, z: &str) -> Formula {
    at(psi, &[("z", z)])
}

fn sigma_ind(phi: &Formula, level: u32, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    let m = tm("half(len(z) + 1)");
    let body = at_terms(
        phi,
        &[
            ("x", tm("z").slice(m.clone(), tm("len(z)"))),
            ("y", tm("z").slice(Term::One, m)),
        ],
    );
    let default = prenex_formula(&Formula::or(Formula::eq(tm("z"), Term::Zero), body));
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = rule_premises(phi, Scheme::Ind);
    // 2^{2n} + y·2^n + x with n = |x+y|: the middle and low halves read back y and x
    let p = Term::One.smash(tm("x + y"));
    let enc = p.clone() * p.clone() + tm("y") * p + tm("x");
    let obligations = vec![
        Obligation::new("base", vec![prem[0].clone()], psi_at(&psi, "0")),
        Obligation::new(
            "step",
            prem.clone(),
            Formula::implies(psi_at(&psi, "z"), psi_at(&psi, "z + 1")),
        ),
        Obligation::bare(
            "conclusion",
            Formula::implies(at_terms(&psi, &[("z", enc)]), phi.clone()),
        ),
    ];
    Ok(cert(
        "param-elim-sigma-ind",
        phi,
        psi,
        QuantClass::sigma(level),
        obligations,
    ))
}

fn pi_ind(phi: &Formula, level: u32, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    let default = prenex_formula(&Formula::forall(
        "x",
        tm("z"),
        Formula::forall(
            "y",
            tm("z"),
            Formula::implies(Formula::le(tm("pair(x, y)"), tm("z")), phi.clone()),
        ),
    ));
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = rule_premises(phi, Scheme::Ind);
    let obligations = vec![
        Obligation::new("base", vec![prem[0].clone()], psi_at(&psi, "0")),
        Obligation::new(
            "step",
            prem,
            Formula::implies(psi_at(&psi, "z"), psi_at(&psi, "z + 1")),
        ),
        Obligation::bare(
            "conclusion",
            Formula::implies(psi_at(&psi, "pair(x, y)"), phi.clone()),
        ),
    ];
    Ok(cert(
        "param-elim-pi-ind",
        phi,
        psi,
        QuantClass::pi(level),
        obligations,
    ))
}

fn pi_pind(phi: &Formula, level: u32, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    let default = prenex_formula(&Formula::forall(
        "u",
        tm("len(z)"),
        at(phi, &[("x", "mod2(z, u)"), ("y", "div2(z, u)")]),
    ));
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = rule_premises(phi, Scheme::Pind);
    let obligations = vec![
        Obligation::new("base", vec![prem[0].clone()], psi_at(&psi, "0")),
        Obligation::new(
            "step",
            prem,
            Formula::implies(psi_at(&psi, "half(z)"), psi_at(&psi, "z")),
        ),
        // z = y·2^{|x|} + x decodes at u = |x|
        Obligation::bare(
            "conclusion",
            Formula::implies(psi_at(&psi, "y * (1 # x) + x"), phi.clone()),
        ),
    ];
    Ok(cert(
        "param-elim-pi-pind",
        phi,
        psi,
        QuantClass::pi(level),
        obligations,
    ))
}

/// `2^p` for `p < |K|` where `K` is a power of two.
fn pow2_below(p: Term, k: Term) -> Term {
    k.clone().div2(k.len().monus(p + Term::One))
}

fn sigma_pind(phi: &Formula, level: u32, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    if level == 0 {
        // Σ̂ᵇ₀ has no leading ∃; the Π̂ construction applies verbatim
        let mut c = pi_pind(phi, 1, over)?;
        c.name = "param-elim-sigma-pind".into();
        c.class_claims[0].class = QuantClass::sigma(1);
        return Ok(c);
    }
    let (u, t, theta) = split_first(phi, true).ok_or_else(|| ReductionError::ClassMismatch {
        expected: format!("EX u <= t. θ with θ in {}", QuantClass::pi(level - 1)),
        found: formula_core::classify(phi),
    })?;
    require(&theta, false, level - 1)?;
    let t_zz = formula_core::substitute_term(
        &t,
        &[("x".to_string(), tm("z")), ("y".to_string(), tm("z"))]
            .into_iter()
            .collect(),
    );
    let bound = t_zz.clone().len().pair(tm("z").smash(t_zz));
    let xs = tm("slice(z, j, i + j)");
    let ys = tm("slice(z, 0, j)");
    let entry = tm("seq(w, pair(i, j))");
    let t_at = formula_core::substitute_term(
        &t,
        &[("x".to_string(), xs.clone()), ("y".to_string(), ys.clone())]
            .into_iter()
            .collect(),
    );
    let theta_at = at_terms(&theta, &[("x", xs), ("y", ys), (u.as_str(), entry.clone())]);
    let body = Formula::implies(
        Formula::lt(tm("pair(i, j)"), tm("len(z)")),
        Formula::and(Formula::le(entry, t_at), theta_at),
    );
    let default = prenex_formula(&Formula::exists(
        "w",
        bound,
        Formula::forall("i", tm("len(z)"), Formula::forall("j", tm("len(z)"), body)),
    ));
    let psi = outputs_or(vec![default], over).remove(0);
    let prem = rule_premises(phi, Scheme::Pind);
    let decoded = Formula::forall(
        "i",
        tm("len(z)"),
        Formula::forall(
            "j",
            tm("len(z)"),
            Formula::implies(
                Formula::lt(tm("pair(i, j)"), tm("len(z)")),
                at(phi, &[("x", "slice(z, j, i + j)"), ("y", "slice(z, 0, j)")]),
            ),
        ),
    );
    // every (x, y) is read back at (i, j) = (|x|, |y|) from y·2^{|x|} + x
    // (1 when both vanish), shifted left until ⟨i, j⟩ < |z|
    let core = tm("y * (1 # x) + x + cond(x + y, 0, 1)");
    let shift = tm("pair(len(x), len(y)) + 1");
    let s = tm("(x + y + 1) # (x + y + 1)");
    let big = s.clone() * s.clone() * s.clone() * s.clone() * s;
    let enc = core * pow2_below(shift, big);
    let covered = substitute(
        &formula_core::f(
            "pair(len(x), len(y)) + 1 <= len(e) & slice(e, len(y), len(x) + len(y)) = x & slice(e, 0, len(y)) = y",
        ),
        "e",
        &enc,
    );
    let obligations = vec![
        Obligation::new("base", vec![prem[0].clone()], psi_at(&psi, "0")),
        Obligation::new(
            "step",
            prem,
            Formula::implies(psi_at(&psi, "half(z)"), psi_at(&psi, "z")),
        ),
        Obligation::bare(
            "conclusion-decode",
            Formula::implies(psi_at(&psi, "z"), decoded),
        ),
        Obligation::bare("conclusion-cover", covered),
    ];
    Ok(cert(
        "param-elim-sigma-pind",
        phi,
        psi,
        QuantClass::sigma(level),
        obligations,
    ))
}

/// Bounded form of parameter-free Π̂ᵢ induction via ψ(x) = ∀y≤x φ(y).
pub fn bounded_axiomatization(phi: &Formula) -> Result<ReductionCertificate> {
    bounded_ax(phi, None)
}

pub(crate) fn bounded_ax(phi: &Formula, over: Option<&[Formula]>) -> Result<ReductionCertificate> {
    check_vars(phi, &["x"])?;
    let level = crate::level_of(phi, false, 1)?;
    let default = prenex_formula(&Formula::forall("y", tm("x"), at(phi, &[("x", "y")])));
    let psi = outputs_or(vec![default], over).remove(0);
    let steps_below = Formula::forall(
        "y",
        tm("x"),
        Formula::implies(
            Formula::lt(tm("y"), tm("x")),
            Formula::implies(at(phi, &[("x", "y")]), at(phi, &[("x", "y + 1")])),
        ),
    );
    let sentence = Formula::implies(
        Formula::and(at(phi, &[("x", "0")]), steps_below.clone()),
        phi.clone(),
    );
    let obligations = vec![
        Obligation::bare(
            "step",
            Formula::implies(
                Formula::and(steps_below, Formula::not(phi.clone())),
                Formula::implies(at(&psi, &[("x", "z")]), at(&psi, &[("x", "z + 1")])),
            ),
        ),
        Obligation::bare(
            "base",
            Formula::implies(at(phi, &[("x", "0")]), at(&psi, &[("x", "0")])),
        ),
        Obligation::bare("unfold", Formula::implies(psi.clone(), phi.clone())),
        Obligation::bare("sentence", sentence.clone()),
    ];
    Ok(ReductionCertificate {
        name: "bounded-axiomatization".into(),
        inputs: vec![phi.clone()],
        outputs: vec![psi.clone(), sentence],
        obligations,
        class_claims: vec![ClassClaim {
            formula: psi,
            class: QuantClass::pi(level),
        }],
    })
}
