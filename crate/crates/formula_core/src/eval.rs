use crate::ast::{Formula, Term};
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

pub type Env = BTreeMap<String, BigUint>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("quantifier bound {value} exceeds the domain cap {cap}")]
    DomainCap { value: BigUint, cap: u64 },
    #[error("intermediate value needs {bits} bits, above the limit of {limit}")]
    SizeCap { bits: u64, limit: u64 },
    #[error("no value for variable `{0}`")]
    MissingVar(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalConfig {
    /// Largest admissible quantifier bound value.
    pub domain_cap: u64,
    /// Largest admissible bit length of any intermediate value.
    pub max_bits: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            domain_cap: 1 << 22,
            max_bits: 1 << 16,
        }
    }
}

fn bits(x: &BigUint) -> u64 {
    x.bits()
}

fn pow2(k: u64, cfg: &EvalConfig) -> Result<BigUint, EvalError> {
    if k + 1 > cfg.max_bits {
        return Err(EvalError::SizeCap {
            bits: k + 1,
            limit: cfg.max_bits,
        });
    }
    Ok(BigUint::one() << k)
}

fn small(x: &BigUint) -> Option<u64> {
    x.to_u64()
}

pub fn cantor_pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + x
}

pub fn cantor_unpair(z: &BigUint) -> (BigUint, BigUint) {
    // w = ⌊(√(8z+1) − 1)/2⌋
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let x = z - &t;
    let y = &w - &x;
    (x, y)
}

fn shr(x: &BigUint, u: &BigUint) -> BigUint {
    match small(u) {
        Some(k) if k < bits(x) => x >> k,
        _ => BigUint::zero(),
    }
}

fn low_bits(x: &BigUint, u: &BigUint) -> BigUint {
    match small(u) {
        Some(k) if k < bits(x) => x & ((BigUint::one() << k) - 1u32),
        _ => x.clone(),
    }
}

pub fn slice_value(x: &BigUint, i: &BigUint, j: &BigUint) -> BigUint {
    let len = BigUint::from(bits(x));
    if i > j || j > &len {
        return BigUint::zero();
    }
    low_bits(&shr(x, &(&len - j)), &(j - i))
}

pub fn seq_value(w: &BigUint, i: &BigUint) -> BigUint {
    let (e, data) = cantor_unpair(w);
    if e.is_zero() {
        return BigUint::zero();
    }
    low_bits(&shr(&data, &(i * &e)), &e)
}

pub fn eval_term(t: &Term, env: &Env, cfg: &EvalConfig) -> Result<BigUint, EvalError> {
    let ev = |a: &Term| eval_term(a, env, cfg);
    let checked = |v: BigUint| {
        if bits(&v) > cfg.max_bits {
            Err(EvalError::SizeCap {
                bits: bits(&v),
                limit: cfg.max_bits,
            })
        } else {
            Ok(v)
        }
    };
    match t {
        Term::Zero => Ok(BigUint::zero()),
        Term::One => Ok(BigUint::one()),
        Term::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| EvalError::MissingVar(v.clone())),
        Term::Add(a, b) => checked(ev(a)? + ev(b)?),
        Term::Mul(a, b) => {
            let (x, y) = (ev(a)?, ev(b)?);
            if bits(&x) + bits(&y) > cfg.max_bits + 1 {
                return Err(EvalError::SizeCap {
                    bits: bits(&x) + bits(&y),
                    limit: cfg.max_bits,
                });
            }
            checked(x * y)
        }
        Term::Smash(a, b) => {
            let (x, y) = (ev(a)?, ev(b)?);
            pow2(bits(&x).saturating_mul(bits(&y)), cfg)
        }
        Term::Half(a) => Ok(ev(a)? >> 1u32),
        Term::Len(a) => Ok(BigUint::from(bits(&ev(a)?))),
        Term::Monus(a, b) => {
            let (x, y) = (ev(a)?, ev(b)?);
            Ok(if x > y { x - y } else { BigUint::zero() })
        }
        Term::Div2(a, b) => Ok(shr(&ev(a)?, &ev(b)?)),
        Term::Mod2(a, b) => Ok(low_bits(&ev(a)?, &ev(b)?)),
        Term::Pair(a, b) => checked(cantor_pair(&ev(a)?, &ev(b)?)),
        Term::Left(a) => Ok(cantor_unpair(&ev(a)?).0),
        Term::Right(a) => Ok(cantor_unpair(&ev(a)?).1),
        Term::Slice(a, b, c) => Ok(slice_value(&ev(a)?, &ev(b)?, &ev(c)?)),
        Term::Seq(a, b) => Ok(seq_value(&ev(a)?, &ev(b)?)),
        Term::Cond(a, b, c) => {
            if ev(a)?.is_zero() {
                ev(c)
            } else {
                ev(b)
            }
        }
    }
}

/// Exact evaluation over ℕ; bounded quantifiers range over `0..=bound`.
pub fn eval_with(f: &Formula, env: &Env, cfg: &EvalConfig) -> Result<bool, EvalError> {
    match f {
        Formula::Eq(a, b) => Ok(eval_term(a, env, cfg)? == eval_term(b, env, cfg)?),
        Formula::Le(a, b) => Ok(eval_term(a, env, cfg)? <= eval_term(b, env, cfg)?),
        Formula::Not(a) => Ok(!eval_with(a, env, cfg)?),
        Formula::And(a, b) => Ok(eval_with(a, env, cfg)? && eval_with(b, env, cfg)?),
        Formula::Or(a, b) => Ok(eval_with(a, env, cfg)? || eval_with(b, env, cfg)?),
        Formula::Implies(a, b) => Ok(!eval_with(a, env, cfg)? || eval_with(b, env, cfg)?),
        Formula::Exists(v, t, body) | Formula::Forall(v, t, body) => {
            let bound = eval_term(t, env, cfg)?;
            let n = match small(&bound) {
                Some(n) if n <= cfg.domain_cap => n,
                _ => {
                    return Err(EvalError::DomainCap {
                        value: bound,
                        cap: cfg.domain_cap,
                    })
                }
            };
            let want = matches!(f, Formula::Exists(..));
            let mut inner = env.clone();
            for k in 0..=n {
                inner.insert(v.clone(), BigUint::from(k));
                if eval_with(body, &inner, cfg)? == want {
                    return Ok(want);
                }
            }
            Ok(!want)
        }
    }
}

pub fn eval(f: &Formula, env: &Env) -> Result<bool, EvalError> {
    eval_with(f, env, &EvalConfig::default())
}

pub fn env_from(pairs: &[(&str, u64)]) -> Env {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), BigUint::from(*v)))
        .collect()
}

// ---------------------------------------------------------------------------
// Slot-compiled evaluator over u128, used by the brute-force checkers. Any
// overflow aborts with `Fast::Overflow` and the caller re-runs the exact path.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Fast {
    Overflow,
    Err(EvalError),
}

#[derive(Debug, Clone)]
enum CT {
    Const(u128),
    Slot(usize),
    Un(Op1, Box<CT>),
    Bin(Op2, Box<CT>, Box<CT>),
    Slice(Box<CT>, Box<CT>, Box<CT>),
    Cond(Box<CT>, Box<CT>, Box<CT>),
}

#[derive(Debug, Clone, Copy)]
enum Op1 {
    Half,
    Len,
    Left,
    Right,
}

#[derive(Debug, Clone, Copy)]
enum Op2 {
    Add,
    Mul,
    Smash,
    Monus,
    Div2,
    Mod2,
    Pair,
    Seq,
}

#[derive(Debug, Clone)]
enum CF {
    Eq(CT, CT),
    Le(CT, CT),
    Not(Box<CF>),
    And(Box<CF>, Box<CF>),
    Or(Box<CF>, Box<CF>),
    Imp(Box<CF>, Box<CF>),
    Quant {
        exists: bool,
        slot: usize,
        bound: CT,
        body: Box<CF>,
    },
}

/// A formula compiled against a fixed ordering of its free variables.
#[derive(Debug, Clone)]
pub struct Compiled {
    root: CF,
    slots: usize,
    cfg: EvalConfig,
}

fn compile_term(t: &Term, scope: &[(String, usize)]) -> Result<CT, EvalError> {
    let un = |op, a: &Term| Ok(CT::Un(op, Box::new(compile_term(a, scope)?)));
    let bin = |op, a: &Term, b: &Term| {
        Ok(CT::Bin(
            op,
            Box::new(compile_term(a, scope)?),
            Box::new(compile_term(b, scope)?),
        ))
    };
    match t {
        Term::Zero => Ok(CT::Const(0)),
        Term::One => Ok(CT::Const(1)),
        Term::Var(v) => scope
            .iter()
            .rev()
            .find(|(n, _)| n == v)
            .map(|(_, s)| CT::Slot(*s))
            .ok_or_else(|| EvalError::MissingVar(v.clone())),
        Term::Add(a, b) => bin(Op2::Add, a, b),
        Term::Mul(a, b) => bin(Op2::Mul, a, b),
        Term::Smash(a, b) => bin(Op2::Smash, a, b),
        Term::Monus(a, b) => bin(Op2::Monus, a, b),
        Term::Div2(a, b) => bin(Op2::Div2, a, b),
        Term::Mod2(a, b) => bin(Op2::Mod2, a, b),
        Term::Pair(a, b) => bin(Op2::Pair, a, b),
        Term::Seq(a, b) => bin(Op2::Seq, a, b),
        Term::Half(a) => un(Op1::Half, a),
        Term::Len(a) => un(Op1::Len, a),
        Term::Left(a) => un(Op1::Left, a),
        Term::Right(a) => un(Op1::Right, a),
        Term::Slice(a, b, c) => Ok(CT::Slice(
            Box::new(compile_term(a, scope)?),
            Box::new(compile_term(b, scope)?),
            Box::new(compile_term(c, scope)?),
        )),
        Term::Cond(a, b, c) => Ok(CT::Cond(
            Box::new(compile_term(a, scope)?),
            Box::new(compile_term(b, scope)?),
            Box::new(compile_term(c, scope)?),
        )),
    }
}

fn depth(f: &CF) -> u32 {
    match f {
        CF::Eq(..) | CF::Le(..) => 0,
        CF::Not(a) => depth(a),
        CF::And(a, b) | CF::Or(a, b) | CF::Imp(a, b) => depth(a).max(depth(b)),
        CF::Quant { body, .. } => 1 + depth(body),
    }
}

fn compile_formula(
    f: &Formula,
    scope: &mut Vec<(String, usize)>,
    next: &mut usize,
) -> Result<CF, EvalError> {
    let sub = |a: &Formula, scope: &mut Vec<(String, usize)>, next: &mut usize| {
        compile_formula(a, scope, next).map(Box::new)
    };
    Ok(match f {
        Formula::Eq(a, b) => CF::Eq(compile_term(a, scope)?, compile_term(b, scope)?),
        Formula::Le(a, b) => CF::Le(compile_term(a, scope)?, compile_term(b, scope)?),
        Formula::Not(a) => CF::Not(sub(a, scope, next)?),
        // quantifier-lighter side first; operands are pure so only cost changes
        Formula::And(a, b) => {
            let (a, b) = (sub(a, scope, next)?, sub(b, scope, next)?);
            if depth(&b) < depth(&a) { CF::And(b, a) } else { CF::And(a, b) }
        }
        Formula::Or(a, b) => {
            let (a, b) = (sub(a, scope, next)?, sub(b, scope, next)?);
            if depth(&b) < depth(&a) { CF::Or(b, a) } else { CF::Or(a, b) }
        }
        Formula::Implies(a, b) => {
            let (a, b) = (sub(a, scope, next)?, sub(b, scope, next)?);
            if depth(&b) < depth(&a) { CF::Or(b, Box::new(CF::Not(a))) } else { CF::Imp(a, b) }
        }
        Formula::Exists(v, t, body) | Formula::Forall(v, t, body) => {
            let bound = compile_term(t, scope)?;
            let slot = *next;
            *next += 1;
            scope.push((v.clone(), slot));
            let body = sub(body, scope, next)?;
            scope.pop();
            CF::Quant {
                exists: matches!(f, Formula::Exists(..)),
                slot,
                bound,
                body,
            }
        }
    })
}

fn bitlen(x: u128) -> u128 {
    (128 - x.leading_zeros()) as u128
}

fn unpair(z: u128) -> Result<(u128, u128), Fast> {
    let d = z.checked_mul(8).and_then(|v| v.checked_add(1)).ok_or(Fast::Overflow)?;
    let w = (d.isqrt() - 1) / 2;
    let t = w * (w + 1) / 2;
    let x = z - t;
    Ok((x, w - x))
}

fn shr128(x: u128, u: u128) -> u128 {
    if u >= 128 {
        0
    } else {
        x >> u
    }
}

fn low128(x: u128, u: u128) -> u128 {
    if u >= 128 {
        x
    } else {
        x & ((1u128 << u) - 1)
    }
}

impl Compiled {
    pub fn new(f: &Formula, free: &[String], cfg: EvalConfig) -> Result<Compiled, EvalError> {
        let mut scope: Vec<(String, usize)> = free
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), k))
            .collect();
        let mut next = free.len();
        let root = compile_formula(f, &mut scope, &mut next)?;
        Ok(Compiled {
            root,
            slots: next,
            cfg,
        })
    }

    pub fn slot_count(&self) -> usize {
        self.slots
    }

    /// `values` holds the free variables in compile order.
    pub(crate) fn run(&self, values: &[u128]) -> Result<bool, Fast> {
        let mut slots = vec![0u128; self.slots];
        slots[..values.len()].copy_from_slice(values);
        self.formula(&self.root, &mut slots)
    }

    fn term(&self, t: &CT, s: &[u128]) -> Result<u128, Fast> {
        Ok(match t {
            CT::Const(c) => *c,
            CT::Slot(k) => s[*k],
            CT::Un(op, a) => {
                let x = self.term(a, s)?;
                match op {
                    Op1::Half => x >> 1,
                    Op1::Len => bitlen(x),
                    Op1::Left => unpair(x)?.0,
                    Op1::Right => unpair(x)?.1,
                }
            }
            CT::Bin(op, a, b) => {
                let x = self.term(a, s)?;
                let y = self.term(b, s)?;
                match op {
                    Op2::Add => x.checked_add(y).ok_or(Fast::Overflow)?,
                    Op2::Mul => x.checked_mul(y).ok_or(Fast::Overflow)?,
                    Op2::Smash => {
                        let k = bitlen(x) * bitlen(y);
                        if k >= 127 {
                            return Err(Fast::Overflow);
                        }
                        1u128 << k
                    }
                    Op2::Monus => x.saturating_sub(y),
                    Op2::Div2 => shr128(x, y),
                    Op2::Mod2 => low128(x, y),
                    Op2::Pair => {
                        let sum = x.checked_add(y).ok_or(Fast::Overflow)?;
                        let prod = sum
                            .checked_mul(sum + 1)
                            .ok_or(Fast::Overflow)?;
                        (prod / 2).checked_add(x).ok_or(Fast::Overflow)?
                    }
                    Op2::Seq => {
                        let (e, data) = unpair(x)?;
                        if e == 0 {
                            0
                        } else {
                            let shift = y.checked_mul(e).unwrap_or(u128::MAX);
                            low128(shr128(data, shift), e)
                        }
                    }
                }
            }
            CT::Slice(a, b, c) => {
                let x = self.term(a, s)?;
                let i = self.term(b, s)?;
                let j = self.term(c, s)?;
                let len = bitlen(x);
                if i > j || j > len {
                    0
                } else {
                    low128(shr128(x, len - j), j - i)
                }
            }
            CT::Cond(a, b, c) => {
                if self.term(a, s)? != 0 {
                    self.term(b, s)?
                } else {
                    self.term(c, s)?
                }
            }
        })
    }

    fn formula(&self, f: &CF, s: &mut [u128]) -> Result<bool, Fast> {
        Ok(match f {
            CF::Eq(a, b) => self.term(a, s)? == self.term(b, s)?,
            CF::Le(a, b) => self.term(a, s)? <= self.term(b, s)?,
            CF::Not(a) => !self.formula(a, s)?,
            CF::And(a, b) => self.formula(a, s)? && self.formula(b, s)?,
            CF::Or(a, b) => self.formula(a, s)? || self.formula(b, s)?,
            CF::Imp(a, b) => !self.formula(a, s)? || self.formula(b, s)?,
            CF::Quant {
                exists,
                slot,
                bound,
                body,
            } => {
                let n = self.term(bound, s)?;
                if n > self.cfg.domain_cap as u128 {
                    return Err(Fast::Err(EvalError::DomainCap {
                        value: BigUint::from(n),
                        cap: self.cfg.domain_cap,
                    }));
                }
                for k in 0..=n {
                    s[*slot] = k;
                    if self.formula(body, s)? == *exists {
                        return Ok(*exists);
                    }
                }
                !*exists
            }
        })
    }
}
