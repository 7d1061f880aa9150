//! A fixed sample of formulas over at most two free variables, levels 0 to 3.
//!
//! Every bound is a free variable, a bound variable, or a length, so all
//! quantified values stay below 2^n whenever the free ones do.

use crate::classify::QuantClass;

pub struct CorpusEntry {
    pub id: &'static str,
    pub text: &'static str,
    pub class: QuantClass,
}

const fn e(id: &'static str, text: &'static str, class: QuantClass) -> CorpusEntry {
    CorpusEntry { id, text, class }
}

const B0: QuantClass = QuantClass::B0;

const fn s(level: u32) -> QuantClass {
    QuantClass {
        kind: crate::classify::ClassKind::SigmaHat,
        level,
    }
}

const fn p(level: u32) -> QuantClass {
    QuantClass {
        kind: crate::classify::ClassKind::PiHat,
        level,
    }
}

pub const CORPUS: [CorpusEntry; 25] = [
    e("zero", "x = 0", B0),
    e("order", "x <= y", B0),
    e("double", "x + 1 <= y * (1 + 1)", B0),
    e("sharp-ex", "EX i <= len(x). i + i = len(y)", B0),
    e("sharp-all", "ALL i <= len(x). mod2(x, i) <= x", B0),
    e("parity", "half(x) + half(x) = x | half(x) + half(x) + 1 = x", B0),
    e("smash", "len(x) * len(y) <= len(x # y)", B0),
    e("even", "EX z <= x. z + z = x", s(1)),
    e("refl", "ALL z <= x. z <= x", p(1)),
    e("square", "EX z <= y. x = z * z", s(1)),
    e("root-bound", "ALL z <= x. ~(z * z = x) | z <= y", p(1)),
    e("sum", "EX z <= x. EX w <= y. z + w = x", s(1)),
    e("commute", "ALL z <= y. z + x = x + z", p(1)),
    e("low-digits", "EX z <= x. z <= y & (ALL i <= len(z). mod2(z, i) <= y)", s(1)),
    e("odd", "~(EX z <= x. z + z = x)", p(1)),
    e("pair-small", "EX z <= x. pair(z, z) <= y + y", s(1)),
    e("unpair", "ALL z <= x. left(pair(z, y)) = z", p(1)),
    e("max-below", "EX z <= x. ALL w <= y. w <= z", s(2)),
    e("dominated", "ALL z <= x. EX w <= y. z <= w", p(2)),
    e("isqrt", "EX z <= x. ALL w <= x. w * w <= x -> w <= z", s(2)),
    e("halves", "ALL z <= y. EX w <= x. z <= w + w", p(2)),
    e("not-dominated", "~(ALL z <= x. EX w <= y. z = w)", s(2)),
    e("three-ex", "EX z <= x. ALL w <= y. EX u <= x. u + w = z | w <= u", s(3)),
    e("three-all", "ALL z <= x. EX w <= y. ALL u <= z. u <= w | w <= u", p(3)),
    e("three-mixed", "EX z <= y. ALL w <= x. EX u <= z. w <= u + z", s(3)),
];
