//! Collapse of a chain θ₁..θ_k of witnesses into one formula by packing the
//! tuple into a single number.
//!
//! IND mode packs base-2^d digits, d = |x|^c. PIND mode puts a header bit on
//! top whose position grows with the digit lengths, weighted by powers of
//! d+1, so that shortening one digit and maxing out the later ones shortens
//! the code.

use crate::cert::{ClassClaim, Obligation, ReductionCertificate};
use crate::{at_terms, check_vars, outputs_or, tm, ReductionError, Result, Scheme};
use formula_core::{classify, prenex_formula, render_term, Formula, QuantClass, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Codec {
    pub k: usize,
    pub c: u32,
    pub pind: bool,
}

fn bitlen(v: u128) -> u32 {
    128 - v.leading_zeros()
}

impl Codec {
    pub fn digit_bits(&self, x: u64) -> u32 {
        bitlen(x as u128).pow(self.c)
    }

    fn header(&self, x: u64, tuple: &[u64]) -> u32 {
        let d = self.digit_bits(x);
        let k = self.k as u32;
        let weighted: u32 = tuple
            .iter()
            .enumerate()
            .map(|(j, &v)| bitlen(v as u128) * (d + 1).pow(k - 1 - j as u32))
            .sum();
        weighted + k * d
    }

    /// Entries must be below 2^d.
    pub fn encode(&self, x: u64, tuple: &[u64]) -> u128 {
        assert_eq!(tuple.len(), self.k);
        let d = self.digit_bits(x);
        let data = tuple.iter().fold(0u128, |acc, &v| (acc << d) | v as u128);
        if self.pind {
            (1u128 << self.header(x, tuple)) | data
        } else {
            data
        }
    }

    /// Inverse of `encode` on codes it produces; `None` elsewhere.
    pub fn decode(&self, x: u64, y: u128) -> Option<Vec<u64>> {
        let d = self.digit_bits(x);
        let k = self.k as u32;
        let data = if self.pind {
            if y == 0 {
                return None;
            }
            y - (1u128 << (bitlen(y) - 1))
        } else {
            y
        };
        if data >> (k * d) != 0 {
            return None;
        }
        let mask = (1u128 << d) - 1;
        let tuple: Vec<u64> = (0..k)
            .map(|j| ((data >> ((k - 1 - j) * d)) & mask) as u64)
            .collect();
        if self.pind && bitlen(y) - 1 != self.header(x, &tuple) {
            return None;
        }
        Some(tuple)
    }

    /// Largest code plus one, i.e. the bound above which θ holds outright.
    pub fn limit(&self, x: u64) -> u128 {
        let d = self.digit_bits(x);
        let k = self.k as u32;
        if self.pind {
            1u128 << ((d + 1).pow(k) + k * d)
        } else {
            1u128 << (k * d)
        }
    }
}

fn power(base: Term, n: u32) -> Term {
    if n == 0 {
        return Term::One;
    }
    (1..n).fold(base.clone(), |acc, _| acc * base.clone())
}

fn times(n: u32, t: Term) -> Term {
    if n == 0 {
        return Term::Zero;
    }
    (1..n).fold(t.clone(), |acc, _| acc + t.clone())
}

/// d = |x|^c as a term.
fn digit_width(c: u32) -> Term {
    power(tm("len(x)"), c)
}

/// Term for the j-th digit (1-based) of y.
pub fn digit_term(k: usize, j: usize, c: u32) -> Term {
    let shift = times((k - j) as u32, digit_width(c));
    let shifted = if k == j { tm("y") } else { tm("y").div2(shift) };
    shifted.mod2(digit_width(c))
}

/// Bound t'(x) from which on θ(x, y) holds by construction.
pub fn limit_term(k: usize, c: u32, pind: bool) -> Term {
    let p = Term::pow2_len_pow(tm("x"), c);
    let data = power(p.clone(), k as u32);
    if pind {
        // |p| = d + 1, so this is 2^{(d+1)^k}·2^{kd}
        Term::pow2_len_pow(p, k as u32) * data
    } else {
        data
    }
}

fn var(j: usize) -> String {
    format!("x{j}")
}

pub fn collapse_chain(
    thetas: &[Formula],
    t: &Term,
    c: u32,
    mode: Scheme,
    phi: &Formula,
) -> Result<ReductionCertificate> {
    collapse(thetas, t, c, mode, phi, None)
}

pub(crate) fn collapse(
    thetas: &[Formula],
    t: &Term,
    c: u32,
    mode: Scheme,
    phi: &Formula,
    over: Option<&[Formula]>,
) -> Result<ReductionCertificate> {
    if thetas.is_empty() {
        return Err(ReductionError::Empty("k = 0"));
    }
    if c < 1 {
        return Err(ReductionError::BadExponent);
    }
    let pind = match mode {
        Scheme::Ind => false,
        Scheme::Pind => true,
        s => return Err(ReductionError::Unsupported(format!("{s:?} collapse"))),
    };
    let k = thetas.len();
    if t.vars().iter().any(|v| v != "x0") {
        return Err(ReductionError::Malformed(format!(
            "bound {} may only mention x0",
            render_term(t)
        )));
    }
    check_vars(phi, &["x0"])?;
    let mut level = 0;
    for (j, th) in thetas.iter().enumerate() {
        let allowed: Vec<String> = (0..=j + 1).map(var).collect();
        let allowed: Vec<&str> = allowed.iter().map(|s| s.as_str()).collect();
        check_vars(th, &allowed)?;
        let cl = classify(th);
        level = level.max(crate::level_of(th, false, 0).map_err(|_| {
            ReductionError::ClassMismatch {
                expected: "PiHat".into(),
                found: cl,
            }
        })?);
    }
    let phi_x = at_terms(phi, &[("x0", tm("x"))]);
    // θ_j(x, digit_1(y), .., digit_j(y))
    let digits: Vec<Term> = (1..=k).map(|j| digit_term(k, j, c)).collect();
    let conj = Formula::and_all(thetas.iter().enumerate().map(|(j, th)| {
        let mut pairs: Vec<(String, Term)> = vec![("x0".into(), tm("x"))];
        pairs.extend((1..=j + 1).map(|l| (var(l), digits[l - 1].clone())));
        let refs: Vec<(&str, Term)> = pairs.iter().map(|(a, b)| (a.as_str(), b.clone())).collect();
        at_terms(th, &refs)
    }));
    let limit = limit_term(k, c, pind);
    let inside = if pind {
        let p = Term::pow2_len_pow(tm("x"), c);
        let header = digits
            .iter()
            .enumerate()
            .map(|(j, d)| d.clone().len() * power(p.clone().len(), (k - 1 - j) as u32))
            .fold(times(k as u32, digit_width(c)) + Term::One, |acc, w| {
                acc + w
            });
        Formula::and(Formula::eq(tm("len(y)"), header), conj)
    } else {
        conj
    };
    // IND: the all-max tuple is the last code; PIND: no such shortcut
    let large_from = if pind {
        limit.clone()
    } else {
        limit.clone().monus(Term::One)
    };
    let default = prenex_formula(&Formula::or(Formula::le(limit, tm("y")), inside));
    let outs = outputs_or(
        vec![
            default.clone(),
            prenex_formula(&Formula::or(phi_x.clone(), Formula::not(default))),
        ],
        over,
    );
    let theta = outs[0].clone();
    let precedes = |a: &str, b: &str| {
        if pind {
            Formula::lt(tm(a).len(), tm(b).len())
        } else {
            Formula::lt(tm(a), tm(b))
        }
    };
    let t_x0 = t.clone();
    let tail_premises: Vec<Formula> = thetas
        .iter()
        .enumerate()
        .map(|(j, th)| Formula::implies(Formula::le(t_x0.clone(), tm(&var(j + 1))), th.clone()))
        .collect();
    let descent_premise = Formula::implies(
        Formula::and_all(thetas.iter().cloned()),
        Formula::or_all(
            std::iter::once(phi.clone()).chain(thetas.iter().enumerate().map(|(j, th)| {
                let xj = var(j + 1);
                Formula::exists(
                    "z",
                    tm(&xj),
                    Formula::and(precedes("z", &xj), at_terms(th, &[(xj.as_str(), tm("z"))])),
                )
            })),
        ),
    );
    let shape = Formula::le(t.clone(), Term::pow2_len_pow(tm("x0"), c).monus(Term::One));
    let mut bounded = tail_premises.clone();
    bounded.push(shape.clone());
    let mut all_premises = bounded.clone();
    all_premises.push(descent_premise);
    let mut obligations = vec![
        Obligation::bare("bound-shape", shape),
        Obligation::new(
            "large",
            bounded.clone(),
            Formula::implies(Formula::le(large_from, tm("y")), theta.clone()),
        ),
        Obligation::new(
            "descent",
            all_premises,
            Formula::implies(
                theta.clone(),
                Formula::or(
                    phi_x,
                    Formula::exists(
                        "z",
                        tm("y"),
                        Formula::and(precedes("z", "y"), at_terms(&theta, &[("y", tm("z"))])),
                    ),
                ),
            ),
        ),
    ];
    if k == 1 && !pind {
        obligations.push(Obligation::new(
            "k1-identity",
            bounded,
            Formula::iff(
                theta.clone(),
                at_terms(&thetas[0], &[("x0", tm("x")), ("x1", tm("y"))]),
            ),
        ));
    }
    let mut inputs = thetas.to_vec();
    inputs.push(phi.clone());
    Ok(ReductionCertificate {
        name: format!("collapse-{}", if pind { "pind" } else { "ind" }),
        inputs,
        outputs: outs.clone(),
        obligations,
        class_claims: vec![
            ClassClaim {
                formula: outs[0].clone(),
                class: QuantClass::pi(level),
            },
            ClassClaim {
                formula: outs[1].clone(),
                class: QuantClass::sigma(crate::level_of(phi, true, level)?),
            },
        ],
    })
}
