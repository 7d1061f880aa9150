use crate::ast::Formula;
use crate::eval::{eval_with, Compiled, Env, EvalConfig, EvalError, Fast};
use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Counterexample(Env),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("width {width} exceeds the configured maximum {max}")]
    WidthCap { width: u32, max: u32 },
    #[error("free variable `{0}` is not listed")]
    Unlisted(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub max_width: u32,
    pub eval: EvalConfig,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            max_width: 8,
            eval: EvalConfig::default(),
        }
    }
}

/// Enumerate all assignments of `free` over `[0, 2^width)`.
pub fn check_valid(f: &Formula, free: &[String], width: u32) -> Result<Verdict, CheckError> {
    check_valid_with(f, free, width, &CheckConfig::default())
}

pub fn check_valid_with(
    f: &Formula,
    free: &[String],
    width: u32,
    cfg: &CheckConfig,
) -> Result<Verdict, CheckError> {
    if width > cfg.max_width {
        return Err(CheckError::WidthCap {
            width,
            max: cfg.max_width,
        });
    }
    if let Some(v) = f.free_vars().into_iter().find(|v| !free.contains(v)) {
        return Err(CheckError::Unlisted(v));
    }
    let compiled = Compiled::new(f, free, cfg.eval)?;
    let k = free.len() as u32;
    let total_bits = width * k;
    if total_bits > 40 {
        return Err(CheckError::WidthCap {
            width,
            max: 40 / k.max(1),
        });
    }
    let total: u64 = 1 << total_bits;
    let mask: u128 = (1u128 << width) - 1;
    let decode = |idx: u64| -> Vec<u128> {
        (0..k)
            .map(|j| ((idx as u128) >> ((k - 1 - j) * width)) & mask)
            .collect()
    };
    let to_env = |vals: &[u128]| -> Env {
        free.iter()
            .zip(vals)
            .map(|(n, v)| (n.clone(), BigUint::from(*v)))
            .collect()
    };
    let probe = |idx: u64| -> Option<Result<Env, CheckError>> {
        let vals = decode(idx);
        let truth = match compiled.run(&vals) {
            Ok(b) => Ok(b),
            Err(Fast::Err(e)) => Err(e),
            Err(Fast::Overflow) => eval_with(f, &to_env(&vals), &cfg.eval),
        };
        match truth {
            Ok(true) => None,
            Ok(false) => Some(Ok(to_env(&vals))),
            Err(e) => Some(Err(e.into())),
        }
    };
    let found = if total <= 256 {
        (0..total).find_map(probe)
    } else {
        (0..total).into_par_iter().find_map_first(probe)
    };
    match found {
        None => Ok(Verdict::Valid),
        Some(Ok(env)) => Ok(Verdict::Counterexample(env)),
        Some(Err(e)) => Err(e),
    }
}
