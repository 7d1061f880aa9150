use crate::ast::{Formula, Term};
use std::fmt;

fn term_prec(t: &Term) -> u8 {
    match t {
        Term::Add(..) | Term::Monus(..) => 1,
        Term::Mul(..) => 2,
        Term::Smash(..) => 3,
        _ => 4,
    }
}

fn write_term(out: &mut String, t: &Term, min: u8) {
    let prec = term_prec(t);
    let wrap = prec < min;
    if wrap {
        out.push('(');
    }
    let bin = |out: &mut String, a: &Term, op: &str, b: &Term| {
        write_term(out, a, prec);
        out.push_str(op);
        write_term(out, b, prec + 1);
    };
    let app = |out: &mut String, name: &str, args: &[&Term]| {
        out.push_str(name);
        out.push('(');
        for (k, a) in args.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            write_term(out, a, 0);
        }
        out.push(')');
    };
    match t {
        Term::Zero => out.push('0'),
        Term::One => out.push('1'),
        Term::Var(v) => out.push_str(v),
        Term::Add(a, b) => bin(out, a, " + ", b),
        Term::Monus(a, b) => bin(out, a, " monus ", b),
        Term::Mul(a, b) => bin(out, a, " * ", b),
        Term::Smash(a, b) => bin(out, a, " # ", b),
        Term::Half(a) => app(out, "half", &[a]),
        Term::Len(a) => app(out, "len", &[a]),
        Term::Left(a) => app(out, "left", &[a]),
        Term::Right(a) => app(out, "right", &[a]),
        Term::Div2(a, b) => app(out, "div2", &[a, b]),
        Term::Mod2(a, b) => app(out, "mod2", &[a, b]),
        Term::Pair(a, b) => app(out, "pair", &[a, b]),
        Term::Seq(a, b) => app(out, "seq", &[a, b]),
        Term::Slice(a, b, c) => app(out, "slice", &[a, b, c]),
        Term::Cond(a, b, c) => app(out, "cond", &[a, b, c]),
    }
    if wrap {
        out.push(')');
    }
}

// Formula precedence: quantifiers 0 (bare only at top or as a body), -> 1, | 2, & 3, ~ 4, atoms 5.
fn formula_prec(f: &Formula) -> u8 {
    match f {
        Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(..) => 2,
        Formula::And(..) => 3,
        Formula::Not(..) => 4,
        Formula::Eq(..) | Formula::Le(..) => 5,
    }
}

fn write_formula(out: &mut String, f: &Formula, min: u8) {
    let prec = formula_prec(f);
    let wrap = prec < min;
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Eq(a, b) | Formula::Le(a, b) => {
            write_term(out, a, 0);
            out.push_str(if matches!(f, Formula::Eq(..)) { " = " } else { " <= " });
            write_term(out, b, 0);
        }
        Formula::Not(a) => {
            out.push('~');
            write_formula(out, a, 4);
        }
        Formula::And(a, b) => {
            write_formula(out, a, 3);
            out.push_str(" & ");
            write_formula(out, b, 4);
        }
        Formula::Or(a, b) => {
            write_formula(out, a, 2);
            out.push_str(" | ");
            write_formula(out, b, 3);
        }
        Formula::Implies(a, b) => {
            write_formula(out, a, 2);
            out.push_str(" -> ");
            write_formula(out, b, 1);
        }
        Formula::Exists(v, t, body) | Formula::Forall(v, t, body) => {
            out.push_str(if matches!(f, Formula::Exists(..)) { "EX " } else { "ALL " });
            out.push_str(v);
            out.push_str(" <= ");
            write_term(out, t, 0);
            out.push_str(". ");
            write_formula(out, body, 0);
        }
    }
    if wrap {
        out.push(')');
    }
}

pub fn render(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f, 0);
    s
}

pub fn render_term(t: &Term) -> String {
    let mut s = String::new();
    write_term(&mut s, t, 0);
    s
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}
