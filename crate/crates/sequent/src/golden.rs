//! Ten fixed proofs covering G_0, G_1, G*_1, G_1 with an axiom schema, and G_2.

use crate::{ProofBuilder, ProofStep, Sequent, SystemSpec};
use qprop::{q, QProp};
use std::collections::BTreeMap;

pub struct GoldenProof {
    pub id: &'static str,
    pub system: SystemSpec,
    pub steps: Vec<ProofStep>,
}

pub const XI: &str = "x <= x + 1";

fn s(ante: &[&QProp], succ: &[&QProp]) -> Sequent {
    Sequent::new(
        ante.iter().map(|x| (*x).clone()).collect(),
        succ.iter().map(|x| (*x).clone()).collect(),
    )
}

/// ⇒ p ∨ ¬p
fn excluded_middle() -> Vec<ProofStep> {
    let mut b = ProofBuilder::new();
    let a = b.axiom(&q("p"));
    let n = b.not_right(a);
    let x = b.exchange_right(n, 0);
    b.or_right(x);
    b.finish()
}

/// ∀t (t ∨ ¬t) ⇒ (p ∧ q) ∨ ¬(p ∧ q)
fn instantiate() -> Vec<ProofStep> {
    let mut b = ProofBuilder::new();
    let a = b.axiom(&q("p & q | ~(p & q)"));
    b.forall_left(a, "t", &q("t | ~t"), &q("p & q"));
    b.finish()
}

/// ¬(p ∨ q) ⇒ ¬p ∧ ¬q
fn de_morgan() -> Vec<ProofStep> {
    let mut b = ProofBuilder::new();
    let branch = |b: &mut ProofBuilder, v: &str, other: &str, first: bool| {
        let a = b.axiom(&q(v));
        let w = b.weaken_right(a, &q(other));
        let d = if first {
            let x = b.exchange_right(w, 0);
            b.or_right(x)
        } else {
            b.or_right(w)
        };
        let n = b.not_left(d);
        let x = b.exchange_left(n, 0);
        b.not_right(x)
    };
    let l = branch(&mut b, "p", "q", true);
    let r = branch(&mut b, "q", "p", false);
    b.and_right(l, r);
    b.finish()
}

/// p ∧ q ⇒ q ∧ p, through e := p ∧ q and three cuts.
fn extension_swap() -> Vec<ProofStep> {
    let mut b = ProofBuilder::new();
    let (e, d) = (q("e"), q("p & q"));
    let ext = b.extension("e", &d);
    let big = b.seq(ext).succ[0].clone();
    let (fwd, back) = match big.view() {
        qprop::View::And(x, y) => (x, y),
        _ => unreachable!(),
    };
    let goal = q("q & p");

    // E, D ⇒ e
    let a1 = b.axiom(&d);
    let a1 = b.weaken_right(a1, &e);
    let a1 = b.exchange_right(a1, 0);
    let a1 = b.not_left(a1);
    let a2 = b.axiom(&e);
    let a2 = b.weaken_left(a2, &d);
    let a2 = b.exchange_left(a2, 0);
    let ga = b.or_left(a1, a2);
    let ga = b.weaken_left(ga, &fwd);
    let ga = b.and_left(ga);

    // E, e ⇒ D
    let b1 = b.axiom(&e);
    let b1 = b.weaken_right(b1, &d);
    let b1 = b.exchange_right(b1, 0);
    let b1 = b.not_left(b1);
    let b2 = b.axiom(&d);
    let b2 = b.weaken_left(b2, &e);
    let b2 = b.exchange_left(b2, 0);
    let gb = b.or_left(b1, b2);
    let gb = b.weaken_left(gb, &back);
    let gb = b.exchange_left(gb, 0);
    let gb = b.and_left(gb);

    // D ⇒ q ∧ p
    let c1 = b.axiom(&q("q"));
    let c1 = b.weaken_left(c1, &q("p"));
    let c2 = b.axiom(&q("p"));
    let c2 = b.weaken_left(c2, &q("q"));
    let c2 = b.exchange_left(c2, 0);
    let gc = b.and_right(c1, c2);
    let gc = b.and_left(gc);

    let l = b.adjust(gb, &s(&[&big, &e], &[&d, &goal]));
    let r = b.adjust(gc, &s(&[&d, &big, &e], &[&goal]));
    let k1 = b.cut(l, r);
    let l = b.adjust(ga, &s(&[&big, &d], &[&e, &goal]));
    let r = b.adjust(k1, &s(&[&e, &big, &d], &[&goal]));
    let k2 = b.cut(l, r);
    let l = b.adjust(ext, &s(&[&d], &[&big, &goal]));
    let r = b.adjust(k2, &s(&[&big, &d], &[&goal]));
    b.cut(l, r);
    b.finish()
}

/// ⇒ p ∨ ¬p, through e := ¬p.
fn extension_negation() -> Vec<ProofStep> {
    let mut b = ProofBuilder::new();
    let (e, p, np) = (q("e"), q("p"), q("~p"));
    let ext = b.extension("e", &np);
    let big = b.seq(ext).succ[0].clone();
    let (fwd, back) = match big.view() {
        qprop::View::And(x, y) => (x, y),
        _ => unreachable!(),
    };

    // E ⇒ p, e
    let a1 = b.axiom(&p);
    let a1 = b.not_right(a1);
    let a1 = b.not_left(a1);
    let a1 = b.weaken_right(a1, &e);
    let a1 = b.exchange_right(a1, 0);
    let a2 = b.axiom(&e);
    let a2 = b.weaken_right(a2, &p);
    let ga = b.or_left(a1, a2);
    let ga = b.weaken_left(ga, &fwd);
    let ga = b.and_left(ga);

    // E, e ⇒ ¬p
    let b1 = b.axiom(&e);
    let b1 = b.weaken_right(b1, &np);
    let b1 = b.exchange_right(b1, 0);
    let b1 = b.not_left(b1);
    let b2 = b.axiom(&np);
    let b2 = b.weaken_left(b2, &e);
    let b2 = b.exchange_left(b2, 0);
    let gb = b.or_left(b1, b2);
    let gb = b.weaken_left(gb, &back);
    let gb = b.exchange_left(gb, 0);
    let gb = b.and_left(gb);

    let l = b.adjust(ga, &s(&[&big], &[&e, &p, &np]));
    let r = b.adjust(gb, &s(&[&e, &big], &[&p, &np]));
    let k = b.cut(l, r);
    let l = b.adjust(ext, &s(&[], &[&big, &p, &np]));
    let k = b.cut(l, k);
    b.or_right(k);
    b.finish()
}

/// ∃q (q ∧ r) ⇒ ∀s (r ∨ s)
fn eigenvariables() -> Vec<ProofStep> {
    let mut b = ProofBuilder::new();
    let a = b.axiom(&q("r"));
    let a = b.weaken_left(a, &q("q"));
    let a = b.and_left(a);
    let a = b.exists_left(a, "q", &q("q & r"), "q");
    let a = b.weaken_right(a, &q("s"));
    let a = b.exchange_right(a, 0);
    let a = b.or_right(a);
    b.forall_right(a, "s", &q("r | s"), "s");
    b.finish()
}

/// r ⇒ r, through a cut on ∃q (q ∧ r).
fn sigma_one_cut() -> Vec<ProofStep> {
    let mut b = ProofBuilder::new();
    let (r, body) = (q("r"), q("q & r"));
    let cf = QProp::exists("q", &body);
    let x = b.axiom(&r);
    let y = b.axiom(&r);
    let l = b.and_right(x, y);
    let l = b.exists_right(l, "q", &body, &r);
    let l = b.adjust(l, &s(&[&r], &[&cf, &r]));
    let a = b.axiom(&r);
    let a = b.weaken_left(a, &q("q"));
    let a = b.and_left(a);
    let a = b.exists_left(a, "q", &body, "q");
    let a = b.adjust(a, &s(&[&cf, &r], &[&r]));
    b.cut(l, a);
    b.finish()
}

fn xi_args(pairs: &[(&str, &str)]) -> BTreeMap<String, QProp> {
    pairs.iter().map(|(k, v)| (k.to_string(), q(v))).collect()
}

/// ⇒ Ξ ∨ s for the one-bit instance of the axiom schema.
fn xi_weaken() -> Vec<ProofStep> {
    let mut b = ProofBuilder::new();
    let x = b.xi(XI, 1, xi_args(&[("v.x.0", "p & q")]));
    let x = b.weaken_right(x, &q("s"));
    let x = b.exchange_right(x, 0);
    b.or_right(x);
    b.finish()
}

/// ⇒ Ξ ∧ Ξ for a two-bit instance, through a cut on Ξ.
fn xi_cut() -> Vec<ProofStep> {
    let mut b = ProofBuilder::new();
    let x = b.xi(XI, 2, xi_args(&[("v.x.0", "p"), ("v.x.1", "~p")]));
    let inst = b.seq(x).succ[0].clone();
    let a1 = b.axiom(&inst);
    let a2 = b.axiom(&inst);
    let both = b.and_right(a1, a2);
    let conj = b.seq(both).succ[0].clone();
    let l = b.adjust(x, &s(&[], &[&inst, &conj]));
    b.cut(l, both);
    b.finish()
}

/// ⇒ ∃p ∀q (p ∨ ¬q), through a cut on that Σq2 formula.
fn sigma_two_cut() -> Vec<ProofStep> {
    let mut b = ProofBuilder::new();
    let inner = q("p | ~q");
    let all = QProp::forall("q", &inner);
    let goal = QProp::exists("p", &all);
    let t = b.top();
    let t = b.weaken_right(t, &q("~q"));
    let t = b.exchange_right(t, 0);
    let t = b.or_right(t);
    let t = b.forall_right(t, "q", &q("1 | ~q"), "q");
    let l = b.exists_right(t, "p", &all, &q("1"));
    let l = b.weaken_right(l, &goal);
    let r = b.axiom(&goal);
    b.cut(l, r);
    b.finish()
}

pub fn golden_proofs() -> Vec<GoldenProof> {
    let g = |id, system, steps| GoldenProof { id, system, steps };
    vec![
        g("excluded-middle", SystemSpec::g(1), excluded_middle()),
        g("instantiate", SystemSpec::g_star(1), instantiate()),
        g("de-morgan", SystemSpec::g_star(1), de_morgan()),
        g("extension-swap", SystemSpec::g0(), extension_swap()),
        g("extension-negation", SystemSpec::g0(), extension_negation()),
        g("eigenvariables", SystemSpec::g(1), eigenvariables()),
        g("sigma-one-cut", SystemSpec::g(1), sigma_one_cut()),
        g("xi-weaken", SystemSpec::g(1).with_xi(XI), xi_weaken()),
        g("xi-cut", SystemSpec::g(1).with_xi(XI), xi_cut()),
        g("sigma-two-cut", SystemSpec::g(2), sigma_two_cut()),
    ]
}
