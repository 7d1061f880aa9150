//! Random ASTs for fuzzing the parser, printer and evaluators.

use crate::ast::{Formula, Term};
use rand::Rng;

const VARS: &[&str] = &["x", "y", "z", "u", "w"];

pub fn random_term<R: Rng>(rng: &mut R, depth: u32) -> Term {
    if depth == 0 || rng.gen_ratio(1, 3) {
        return match rng.gen_range(0..4) {
            0 => Term::Zero,
            1 => Term::One,
            _ => Term::var(VARS[rng.gen_range(0..VARS.len())]),
        };
    }
    let a = random_term(rng, depth - 1);
    let b = random_term(rng, depth - 1);
    let c = random_term(rng, depth - 1);
    match rng.gen_range(0..15) {
        0 => a + b,
        1 => a * b,
        2 => a.smash(b),
        3 => a.half(),
        4 => a.len(),
        5 => a.monus(b),
        6 => a.div2(b),
        7 => a.mod2(b),
        8 => a.pair(b),
        9 => a.left(),
        10 => a.right(),
        11 => a.slice(b, c),
        12 => a.seq(b),
        13 => Term::cond(a, b, c),
        _ => a,
    }
}

pub fn random_formula<R: Rng>(rng: &mut R, depth: u32) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        let a = random_term(rng, 2);
        let b = random_term(rng, 2);
        return if rng.gen_bool(0.5) {
            Formula::eq(a, b)
        } else {
            Formula::le(a, b)
        };
    }
    match rng.gen_range(0..6) {
        0 => Formula::not(random_formula(rng, depth - 1)),
        1 => Formula::and(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        2 => Formula::or(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        3 => Formula::implies(random_formula(rng, depth - 1), random_formula(rng, depth - 1)),
        k => {
            let v = VARS[rng.gen_range(0..VARS.len())];
            let bound = if rng.gen_bool(0.5) {
                random_term(rng, 1).len()
            } else {
                random_term(rng, 1)
            };
            let body = random_formula(rng, depth - 1);
            if k == 4 {
                Formula::exists(v, bound, body)
            } else {
                Formula::forall(v, bound, body)
            }
        }
    }
}
