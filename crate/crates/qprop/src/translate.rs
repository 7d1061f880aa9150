//! Bounded formulas to quantified propositional formulas, one block of `n`
//! bits per first-order variable.

use crate::{Builder, NodeId, QProp};
use formula_core::{classify, fresh_name, is_b0, Formula, Term};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

pub const DEFAULT_WIDTH_CAP: u32 = 8;

/// Intermediate bit vectors wider than this are refused.
const MAX_VECTOR: usize = 1 << 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error("formula is not in a strict class")]
    NonStrict,
    #[error("bit width {n} outside 1..={cap}")]
    Width { n: u32, cap: u32 },
    #[error("intermediate value needs {0} bits")]
    TooWide(usize),
}

pub fn bit_name(var: &str, k: u32) -> String {
    format!("v.{var}.{k}")
}

/// Source variable and bit index of a translation-produced name.
pub fn provenance(name: &str) -> Option<(String, u32)> {
    let rest = name.strip_prefix("v.")?;
    let (var, k) = rest.rsplit_once('.')?;
    if var.is_empty() || k.is_empty() || !k.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some((var.to_string(), k.parse().ok()?))
}

pub fn translate(f: &Formula, n: u32) -> Result<QProp, TranslateError> {
    translate_with_cap(f, n, DEFAULT_WIDTH_CAP)
}

pub fn translate_with_cap(f: &Formula, n: u32, cap: u32) -> Result<QProp, TranslateError> {
    if n == 0 || n > cap {
        return Err(TranslateError::Width { n, cap });
    }
    if !classify(f).is_strict() {
        return Err(TranslateError::NonStrict);
    }
    let mut c = Circ {
        b: Builder::new(),
        n,
    };
    let mut env = HashMap::new();
    let mut scope = BTreeSet::new();
    for x in f.free_vars() {
        let bits = (0..n).map(|k| c.b.var(&bit_name(&x, k))).collect();
        env.insert(x.clone(), bits);
        scope.insert(x);
    }
    let root = c.formula(f, &mut env, &mut scope)?;
    Ok(c.b.finish(root))
}

type Bv = Vec<NodeId>;

struct Circ {
    b: Builder,
    n: u32,
}

impl Circ {
    fn f(&mut self) -> NodeId {
        self.b.constant(false)
    }

    fn t(&mut self) -> NodeId {
        self.b.constant(true)
    }

    fn konst(&mut self, v: u64) -> Bv {
        let w = 64 - v.leading_zeros();
        (0..w).map(|k| self.b.constant(v >> k & 1 == 1)).collect()
    }

    fn trim(&mut self, mut v: Bv) -> Result<Bv, TranslateError> {
        let zero = self.f();
        while v.last() == Some(&zero) {
            v.pop();
        }
        if v.len() > MAX_VECTOR {
            return Err(TranslateError::TooWide(v.len()));
        }
        Ok(v)
    }

    fn bit(&mut self, v: &Bv, i: usize) -> NodeId {
        match v.get(i) {
            Some(&x) => x,
            None => self.f(),
        }
    }

    fn xor(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let na = self.b.not_s(a);
        let nb = self.b.not_s(b);
        let l = self.b.and_s(a, nb);
        let r = self.b.and_s(na, b);
        self.b.or_s(l, r)
    }

    fn mux(&mut self, c: NodeId, then: NodeId, other: NodeId) -> NodeId {
        let nc = self.b.not_s(c);
        let l = self.b.and_s(c, then);
        let r = self.b.and_s(nc, other);
        self.b.or_s(l, r)
    }

    fn add(&mut self, a: &Bv, b: &Bv) -> Bv {
        let w = a.len().max(b.len());
        let mut carry = self.f();
        let mut out = Vec::with_capacity(w + 1);
        for i in 0..w {
            let (x, y) = (self.bit(a, i), self.bit(b, i));
            let p = self.xor(x, y);
            out.push(self.xor(p, carry));
            let g = self.b.and_s(x, y);
            let pc = self.b.and_s(p, carry);
            carry = self.b.or_s(g, pc);
        }
        out.push(carry);
        out
    }

    fn mul(&mut self, a: &Bv, b: &Bv) -> Result<Bv, TranslateError> {
        let mut acc: Bv = Vec::new();
        for (i, &bi) in b.iter().enumerate() {
            let mut row = vec![self.f(); i];
            for &aj in a {
                row.push(self.b.and_s(aj, bi));
            }
            acc = self.add(&acc, &row);
            acc = self.trim(acc)?;
        }
        Ok(acc)
    }

    /// a < b, scanning from the least significant bit.
    fn lt(&mut self, a: &Bv, b: &Bv) -> NodeId {
        let mut lt = self.f();
        for i in 0..a.len().max(b.len()) {
            let (x, y) = (self.bit(a, i), self.bit(b, i));
            let nx = self.b.not_s(x);
            let here = self.b.and_s(nx, y);
            let d = self.xor(x, y);
            let same = self.b.not_s(d);
            let keep = self.b.and_s(same, lt);
            lt = self.b.or_s(here, keep);
        }
        lt
    }

    fn le(&mut self, a: &Bv, b: &Bv) -> NodeId {
        let gt = self.lt(b, a);
        self.b.not_s(gt)
    }

    fn eq(&mut self, a: &Bv, b: &Bv) -> NodeId {
        let mut acc = self.t();
        for i in 0..a.len().max(b.len()) {
            let (x, y) = (self.bit(a, i), self.bit(b, i));
            let d = self.xor(x, y);
            let s = self.b.not_s(d);
            acc = self.b.and_s(acc, s);
        }
        acc
    }

    fn monus(&mut self, a: &Bv, b: &Bv) -> Bv {
        let w = a.len().max(b.len());
        let ge = self.le(b, a);
        let mut carry = self.t();
        let mut out = Vec::with_capacity(w);
        for i in 0..w {
            let x = self.bit(a, i);
            let yb = self.bit(b, i);
            let y = self.b.not_s(yb);
            let p = self.xor(x, y);
            let s = self.xor(p, carry);
            out.push(self.b.and_s(ge, s));
            let g = self.b.and_s(x, y);
            let pc = self.b.and_s(p, carry);
            carry = self.b.or_s(g, pc);
        }
        out
    }

    /// Indicators of |a| = k for k = 0..=width(a).
    fn len_onehot(&mut self, a: &Bv) -> Vec<NodeId> {
        let w = a.len();
        let mut higher_zero = vec![self.t(); w + 1];
        for i in (0..w).rev() {
            let nz = self.b.not_s(a[i]);
            higher_zero[i] = self.b.and_s(nz, higher_zero[i + 1]);
        }
        let mut out = vec![higher_zero[0]];
        for k in 1..=w {
            out.push(self.b.and_s(a[k - 1], higher_zero[k]));
        }
        out
    }

    fn from_onehot(&mut self, hot: &[NodeId]) -> Bv {
        let w = 64 - (hot.len() as u64).leading_zeros() as usize;
        (0..w)
            .map(|j| {
                let terms: Vec<NodeId> = hot
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| k >> j & 1 == 1)
                    .map(|(_, &h)| h)
                    .collect();
                self.b.or_all(terms)
            })
            .collect()
    }

    fn len(&mut self, a: &Bv) -> Bv {
        let hot = self.len_onehot(a);
        self.from_onehot(&hot)
    }

    fn smash(&mut self, a: &Bv, b: &Bv) -> Result<Bv, TranslateError> {
        let ha = self.len_onehot(a);
        let hb = self.len_onehot(b);
        let top = (ha.len() - 1) * (hb.len() - 1);
        if top + 1 > MAX_VECTOR {
            return Err(TranslateError::TooWide(top + 1));
        }
        let mut out = vec![self.f(); top + 1];
        for (i, &x) in ha.iter().enumerate() {
            for (j, &y) in hb.iter().enumerate() {
                let both = self.b.and_s(x, y);
                out[i * j] = self.b.or_s(out[i * j], both);
            }
        }
        Ok(out)
    }

    fn shr(&mut self, a: &Bv, u: &Bv) -> Bv {
        let mut cur = a.clone();
        for (s, &us) in u.iter().enumerate() {
            let amount = if s < 32 { 1usize << s } else { usize::MAX };
            let next: Bv = (0..cur.len())
                .map(|i| {
                    let from = match i.checked_add(amount) {
                        Some(j) => self.bit(&cur, j),
                        None => self.f(),
                    };
                    self.mux(us, from, cur[i])
                })
                .collect();
            cur = next;
        }
        cur
    }

    fn low(&mut self, a: &Bv, u: &Bv) -> Bv {
        (0..a.len())
            .map(|i| {
                let iv = self.konst(i as u64);
                let below = self.lt(&iv, u);
                self.b.and_s(a[i], below)
            })
            .collect()
    }

    fn unpair(&mut self, z: &Bv) -> Result<(Bv, Bv), TranslateError> {
        let mut big = vec![self.t(), self.f(), self.f()];
        big.extend(z.iter().copied());
        let rbits = big.len().div_ceil(2);
        let mut r = vec![self.f(); rbits];
        for k in (0..rbits).rev() {
            let mut cand = r.clone();
            cand[k] = self.t();
            let sq = self.mul(&cand, &cand)?;
            r[k] = self.le(&sq, &big);
        }
        let one = self.konst(1);
        let r1 = self.monus(&r, &one);
        let w: Bv = r1[1..].to_vec();
        let w1 = self.add(&w, &one);
        let prod = self.mul(&w, &w1)?;
        let tri: Bv = prod.get(1..).map_or(vec![], |s| s.to_vec());
        let x = self.monus(z, &tri);
        let y = self.monus(&w, &x);
        Ok((self.trim(x)?, self.trim(y)?))
    }

    fn term(&mut self, t: &Term, env: &HashMap<String, Bv>) -> Result<Bv, TranslateError> {
        let r = match t {
            Term::Zero => vec![],
            Term::One => vec![self.t()],
            Term::Var(v) => env[v].clone(),
            Term::Add(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                self.add(&a, &b)
            }
            Term::Mul(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                self.mul(&a, &b)?
            }
            Term::Smash(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                self.smash(&a, &b)?
            }
            Term::Half(a) => {
                let a = self.term(a, env)?;
                a.get(1..).map_or(vec![], |s| s.to_vec())
            }
            Term::Len(a) => {
                let a = self.term(a, env)?;
                self.len(&a)
            }
            Term::Monus(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                self.monus(&a, &b)
            }
            Term::Div2(a, u) => {
                let (a, u) = (self.term(a, env)?, self.term(u, env)?);
                self.shr(&a, &u)
            }
            Term::Mod2(a, u) => {
                let (a, u) = (self.term(a, env)?, self.term(u, env)?);
                self.low(&a, &u)
            }
            Term::Pair(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                let s = self.add(&a, &b);
                let one = self.konst(1);
                let s1 = self.add(&s, &one);
                let m = self.mul(&s, &s1)?;
                let half: Bv = m.get(1..).map_or(vec![], |s| s.to_vec());
                self.add(&half, &a)
            }
            Term::Left(a) => {
                let a = self.term(a, env)?;
                self.unpair(&a)?.0
            }
            Term::Right(a) => {
                let a = self.term(a, env)?;
                self.unpair(&a)?.1
            }
            Term::Slice(x, i, j) => {
                let x = self.term(x, env)?;
                let (i, j) = (self.term(i, env)?, self.term(j, env)?);
                let l = self.len(&x);
                let c1 = self.le(&i, &j);
                let c2 = self.le(&j, &l);
                let ok = self.b.and_s(c1, c2);
                let sh = self.monus(&l, &j);
                let moved = self.shr(&x, &sh);
                let width = self.monus(&j, &i);
                let r = self.low(&moved, &width);
                r.into_iter().map(|x| self.b.and_s(ok, x)).collect()
            }
            Term::Seq(w, i) => {
                let (w, i) = (self.term(w, env)?, self.term(i, env)?);
                let (e, data) = self.unpair(&w)?;
                let off = self.mul(&i, &e)?;
                let moved = self.shr(&data, &off);
                self.low(&moved, &e)
            }
            Term::Cond(a, b, c) => {
                let a = self.term(a, env)?;
                let (b, c) = (self.term(b, env)?, self.term(c, env)?);
                let nz = self.b.or_all(a);
                (0..b.len().max(c.len()))
                    .map(|i| {
                        let (x, y) = (self.bit(&b, i), self.bit(&c, i));
                        self.mux(nz, x, y)
                    })
                    .collect()
            }
        };
        self.trim(r)
    }

    fn formula(
        &mut self,
        f: &Formula,
        env: &mut HashMap<String, Bv>,
        scope: &mut BTreeSet<String>,
    ) -> Result<NodeId, TranslateError> {
        Ok(match f {
            Formula::Eq(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                self.eq(&a, &b)
            }
            Formula::Le(a, b) => {
                let (a, b) = (self.term(a, env)?, self.term(b, env)?);
                self.le(&a, &b)
            }
            Formula::Not(a) => {
                let a = self.formula(a, env, scope)?;
                self.b.not_s(a)
            }
            Formula::And(a, b) => {
                let a = self.formula(a, env, scope)?;
                let b = self.formula(b, env, scope)?;
                self.b.and_s(a, b)
            }
            Formula::Or(a, b) => {
                let a = self.formula(a, env, scope)?;
                let b = self.formula(b, env, scope)?;
                self.b.or_s(a, b)
            }
            Formula::Implies(a, b) => {
                let a = self.formula(a, env, scope)?;
                let na = self.b.not_s(a);
                let b = self.formula(b, env, scope)?;
                self.b.or_s(na, b)
            }
            Formula::Exists(y, t, body) | Formula::Forall(y, t, body) => {
                let ex = matches!(f, Formula::Exists(..));
                let bound = self.term(t, env)?;
                let saved = env.remove(y);
                let r = if is_b0(f) {
                    self.expand(ex, y, t, &bound, body, env, scope)?
                } else {
                    self.block(ex, y, &bound, body, env, scope)?
                };
                env.remove(y);
                if let Some(s) = saved {
                    env.insert(y.clone(), s);
                }
                r
            }
        })
    }

    /// Sharply bounded quantifier: one disjunct or conjunct per value.
    #[allow(clippy::too_many_arguments)]
    fn expand(
        &mut self,
        ex: bool,
        y: &str,
        t: &Term,
        bound: &Bv,
        body: &Formula,
        env: &mut HashMap<String, Bv>,
        scope: &mut BTreeSet<String>,
    ) -> Result<NodeId, TranslateError> {
        // |s| never exceeds the width of s
        let Term::Len(s) = t else {
            unreachable!("sharp bounds are lengths")
        };
        let top = self.term(s, env)?.len() as u64;
        let mut parts = Vec::new();
        for v in 0..=top {
            let val = self.konst(v);
            let guard = self.le(&val, bound);
            env.insert(y.to_string(), val);
            let inner = self.formula(body, env, scope)?;
            parts.push(if ex {
                self.b.and_s(guard, inner)
            } else {
                let ng = self.b.not_s(guard);
                self.b.or_s(ng, inner)
            });
        }
        Ok(if ex {
            self.b.or_all(parts)
        } else {
            self.b.and_all(parts)
        })
    }

    /// Block of `n` propositional quantifiers guarded by `y <= bound`.
    fn block(
        &mut self,
        ex: bool,
        y: &str,
        bound: &Bv,
        body: &Formula,
        env: &mut HashMap<String, Bv>,
        scope: &mut BTreeSet<String>,
    ) -> Result<NodeId, TranslateError> {
        let name = fresh_name(y, scope);
        scope.insert(name.clone());
        let names: Vec<String> = (0..self.n).map(|k| bit_name(&name, k)).collect();
        let bits: Bv = names.iter().map(|s| self.b.var(s)).collect();
        let guard = self.le(&bits, bound);
        env.insert(y.to_string(), bits);
        let inner = self.formula(body, env, scope)?;
        scope.remove(&name);
        let mut r = if ex {
            self.b.and_s(guard, inner)
        } else {
            let ng = self.b.not_s(guard);
            self.b.or_s(ng, inner)
        };
        for v in names.iter().rev() {
            r = if ex {
                self.b.exists(v, r)
            } else {
                self.b.forall(v, r)
            };
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        assert_eq!(bit_name("x", 3), "v.x.3");
        assert_eq!(provenance("v.x.3"), Some(("x".into(), 3)));
        assert_eq!(provenance("v.a.b.12"), Some(("a.b".into(), 12)));
        assert_eq!(provenance("p"), None);
        assert_eq!(provenance("v.x."), None);
    }
}
