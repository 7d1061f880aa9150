use crate::ast::{is_sharp, Formula};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassKind {
    SigmaHat,
    PiHat,
    SigmaHatB0,
    NonStrict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantClass {
    pub kind: ClassKind,
    pub level: u32,
}

impl QuantClass {
    pub const B0: QuantClass = QuantClass {
        kind: ClassKind::SigmaHatB0,
        level: 0,
    };
    pub const NON_STRICT: QuantClass = QuantClass {
        kind: ClassKind::NonStrict,
        level: 0,
    };

    pub fn sigma(level: u32) -> QuantClass {
        if level == 0 {
            return QuantClass::B0;
        }
        QuantClass {
            kind: ClassKind::SigmaHat,
            level,
        }
    }

    pub fn pi(level: u32) -> QuantClass {
        if level == 0 {
            return QuantClass::B0;
        }
        QuantClass {
            kind: ClassKind::PiHat,
            level,
        }
    }

    pub fn is_strict(&self) -> bool {
        self.kind != ClassKind::NonStrict
    }

    /// Membership of this class in `Σ̂_level` (`sigma = true`) or `Π̂_level`.
    pub fn within(&self, sigma: bool, level: u32) -> bool {
        match self.kind {
            ClassKind::NonStrict => false,
            ClassKind::SigmaHatB0 => true,
            ClassKind::SigmaHat => {
                self.level <= level && (sigma || self.level < level)
            }
            ClassKind::PiHat => self.level <= level && (!sigma || self.level < level),
        }
    }

    pub fn dual(&self) -> QuantClass {
        match self.kind {
            ClassKind::SigmaHat => QuantClass::pi(self.level),
            ClassKind::PiHat => QuantClass::sigma(self.level),
            _ => *self,
        }
    }
}

impl fmt::Display for QuantClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ClassKind::SigmaHat => write!(f, "SigmaHat{}", self.level),
            ClassKind::PiHat => write!(f, "PiHat{}", self.level),
            ClassKind::SigmaHatB0 => write!(f, "SigmaHatB0"),
            ClassKind::NonStrict => write!(f, "NonStrict"),
        }
    }
}

impl std::str::FromStr for QuantClass {
    type Err = String;

    /// Inverse of `Display`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let level = |rest: &str| rest.parse::<u32>().map_err(|_| format!("bad class `{s}`"));
        match s {
            "SigmaHatB0" => Ok(QuantClass::B0),
            "NonStrict" => Ok(QuantClass::NON_STRICT),
            _ => {
                if let Some(rest) = s.strip_prefix("SigmaHat") {
                    Ok(QuantClass::sigma(level(rest)?))
                } else if let Some(rest) = s.strip_prefix("PiHat") {
                    Ok(QuantClass::pi(level(rest)?))
                } else {
                    Err(format!("bad class `{s}`"))
                }
            }
        }
    }
}

/// Every quantifier is sharply bounded.
pub fn is_b0(f: &Formula) -> bool {
    let mut ok = true;
    f.visit(&mut |g| match g {
        Formula::Exists(_, t, _) | Formula::Forall(_, t, _) if !is_sharp(t) => ok = false,
        _ => {}
    });
    ok
}

/// Leading quantifier kinds (`true` = existential) after pushing negations
/// through the prefix, and the Σ̂ᵇ₀-or-not matrix that remains.
pub(crate) fn prefix_kinds(f: &Formula) -> (Vec<bool>, &Formula) {
    let mut kinds = Vec::new();
    let mut neg = false;
    let mut cur = f;
    loop {
        match cur {
            Formula::Not(a) => {
                neg = !neg;
                cur = a;
            }
            Formula::Exists(_, _, body) | Formula::Forall(_, _, body) if !is_b0(cur) => {
                kinds.push(matches!(cur, Formula::Exists(..)) != neg);
                cur = body;
            }
            _ => return (kinds, cur),
        }
    }
}

pub fn classify(f: &Formula) -> QuantClass {
    if is_b0(f) {
        return QuantClass::B0;
    }
    let (kinds, matrix) = prefix_kinds(f);
    if !is_b0(matrix) || kinds.is_empty() {
        return QuantClass::NON_STRICT;
    }
    let blocks = 1 + kinds.windows(2).filter(|w| w[0] != w[1]).count() as u32;
    if kinds[0] {
        QuantClass::sigma(blocks)
    } else {
        QuantClass::pi(blocks)
    }
}

/// Membership by the recursive definition of the strict classes, kept
/// independent of [`classify`] so the two can be cross-checked.
pub fn member(f: &Formula, sigma: bool, level: u32) -> bool {
    if is_b0(f) {
        return true;
    }
    if level == 0 {
        return false;
    }
    match f {
        Formula::Not(a) => member(a, !sigma, level),
        Formula::Exists(_, _, body) => {
            (sigma && member(body, true, level)) || (!sigma && member(f, true, level - 1))
        }
        Formula::Forall(_, _, body) => {
            (!sigma && member(body, false, level)) || (sigma && member(f, false, level - 1))
        }
        _ => false,
    }
}

/// Least class according to [`member`], or `None` if no strict class contains `f`.
pub fn oracle_class(f: &Formula, max_level: u32) -> Option<QuantClass> {
    if is_b0(f) {
        return Some(QuantClass::B0);
    }
    (1..=max_level).find_map(|i| match (member(f, true, i), member(f, false, i)) {
        (true, false) => Some(QuantClass::sigma(i)),
        (false, true) => Some(QuantClass::pi(i)),
        (true, true) => Some(QuantClass::sigma(i)),
        (false, false) => None,
    })
}

/// Negation normal form: negations only in front of atoms, no implications.
pub fn nnf(f: &Formula) -> Formula {
    fn go(f: &Formula, neg: bool) -> Formula {
        match (f, neg) {
            (Formula::Eq(..) | Formula::Le(..), false) => f.clone(),
            (Formula::Eq(..) | Formula::Le(..), true) => Formula::not(f.clone()),
            (Formula::Not(a), _) => go(a, !neg),
            (Formula::And(a, b), false) | (Formula::Or(a, b), true) => {
                Formula::and(go(a, neg), go(b, neg))
            }
            (Formula::Or(a, b), false) | (Formula::And(a, b), true) => {
                Formula::or(go(a, neg), go(b, neg))
            }
            (Formula::Implies(a, b), false) => Formula::or(go(a, true), go(b, false)),
            (Formula::Implies(a, b), true) => Formula::and(go(a, false), go(b, true)),
            (Formula::Exists(v, t, body), false) | (Formula::Forall(v, t, body), true) => {
                Formula::exists(v.clone(), t.clone(), go(body, neg))
            }
            (Formula::Forall(v, t, body), false) | (Formula::Exists(v, t, body), true) => {
                Formula::forall(v.clone(), t.clone(), go(body, neg))
            }
        }
    }
    go(f, false)
}
