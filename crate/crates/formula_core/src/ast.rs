use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    One,
    Var(String),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    /// `x # y = 2^{|x|·|y|}`
    Smash(Box<Term>, Box<Term>),
    Half(Box<Term>),
    Len(Box<Term>),
    Monus(Box<Term>, Box<Term>),
    /// `⌊x / 2^u⌋`
    Div2(Box<Term>, Box<Term>),
    /// `x mod 2^u`
    Mod2(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Left(Box<Term>),
    Right(Box<Term>),
    /// `x_[i,j)`, most significant digit has index 0
    Slice(Box<Term>, Box<Term>, Box<Term>),
    /// `(w)_i`
    Seq(Box<Term>, Box<Term>),
    /// `b` if `a ≠ 0`, else `c`
    Cond(Box<Term>, Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Le(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Term, Box<Formula>),
    Forall(String, Term, Box<Formula>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn num(n: u64) -> Term {
        match n {
            0 => Term::Zero,
            1 => Term::One,
            _ => {
                // binary expansion: n = 2·(n/2) + (n mod 2)
                let half = Term::num(n / 2);
                let two = Term::One + Term::One;
                let doubled = two * half;
                if n % 2 == 1 {
                    doubled + Term::One
                } else {
                    doubled
                }
            }
        }
    }

    pub fn smash(self, other: Term) -> Term {
        Term::Smash(Box::new(self), Box::new(other))
    }

    pub fn half(self) -> Term {
        Term::Half(Box::new(self))
    }

    pub fn len(self) -> Term {
        Term::Len(Box::new(self))
    }

    pub fn monus(self, other: Term) -> Term {
        Term::Monus(Box::new(self), Box::new(other))
    }

    pub fn div2(self, u: Term) -> Term {
        Term::Div2(Box::new(self), Box::new(u))
    }

    pub fn mod2(self, u: Term) -> Term {
        Term::Mod2(Box::new(self), Box::new(u))
    }

    pub fn pair(self, other: Term) -> Term {
        Term::Pair(Box::new(self), Box::new(other))
    }

    pub fn left(self) -> Term {
        Term::Left(Box::new(self))
    }

    pub fn right(self) -> Term {
        Term::Right(Box::new(self))
    }

    pub fn slice(self, i: Term, j: Term) -> Term {
        Term::Slice(Box::new(self), Box::new(i), Box::new(j))
    }

    pub fn seq(self, i: Term) -> Term {
        Term::Seq(Box::new(self), Box::new(i))
    }

    pub fn cond(a: Term, b: Term, c: Term) -> Term {
        Term::Cond(Box::new(a), Box::new(b), Box::new(c))
    }

    /// `2^{|x|^c}` built from smash: `p_1 = 1 # x`, `p_{c+1} = ⌊(p_c # x) / 2^{|x|}⌋`.
    pub fn pow2_len_pow(x: Term, c: u32) -> Term {
        let mut p = Term::One.smash(x.clone());
        for _ in 1..c.max(1) {
            p = p.smash(x.clone()).div2(x.clone().len());
        }
        p
    }

    /// `⌈a / 2^{|x|}⌉`
    pub fn ceil_div_len(a: Term, x: Term) -> Term {
        let mask = Term::One.smash(x.clone()).monus(Term::One);
        (a + mask).div2(x.len())
    }

    pub fn is_var(&self, name: &str) -> bool {
        matches!(self, Term::Var(v) if v == name)
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Zero | Term::One | Term::Var(_) => vec![],
            Term::Half(a) | Term::Len(a) | Term::Left(a) | Term::Right(a) => vec![a],
            Term::Add(a, b)
            | Term::Mul(a, b)
            | Term::Smash(a, b)
            | Term::Monus(a, b)
            | Term::Div2(a, b)
            | Term::Mod2(a, b)
            | Term::Pair(a, b)
            | Term::Seq(a, b) => vec![a, b],
            Term::Slice(a, b, c) | Term::Cond(a, b, c) => vec![a, b, c],
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Term::Var(v) = self {
            out.insert(v.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

impl std::ops::Add for Term {
    type Output = Term;
    fn add(self, rhs: Term) -> Term {
        Term::Add(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Mul for Term {
    type Output = Term;
    fn mul(self, rhs: Term) -> Term {
        Term::Mul(Box::new(self), Box::new(rhs))
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn le(a: Term, b: Term) -> Formula {
        Formula::Le(a, b)
    }

    /// `a < b` as `a + 1 <= b`.
    pub fn lt(a: Term, b: Term) -> Formula {
        Formula::Le(a + Term::One, b)
    }

    pub fn top() -> Formula {
        Formula::Le(Term::Zero, Term::Zero)
    }

    pub fn bottom() -> Formula {
        Formula::Le(Term::One, Term::Zero)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::implies(a.clone(), b.clone()), Formula::implies(b, a))
    }

    pub fn exists(v: impl Into<String>, bound: Term, body: Formula) -> Formula {
        Formula::Exists(v.into(), bound, Box::new(body))
    }

    pub fn forall(v: impl Into<String>, bound: Term, body: Formula) -> Formula {
        Formula::Forall(v.into(), bound, Box::new(body))
    }

    /// Left-nested conjunction; the empty conjunction is `0 <= 0`.
    pub fn and_all(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or_else(Formula::top)
    }

    /// Left-nested disjunction; the empty disjunction is `1 <= 0`.
    pub fn or_all(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or_else(Formula::bottom)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let add_term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            for v in t.vars() {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Eq(a, b) | Formula::Le(a, b) => {
                add_term(a, bound, out);
                add_term(b, bound, out);
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(v, t, body) | Formula::Forall(v, t, body) => {
                add_term(t, bound, out);
                bound.push(v.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Eq(a, b) | Formula::Le(a, b) => {
                a.collect_vars(&mut out);
                b.collect_vars(&mut out);
            }
            Formula::Exists(v, t, _) | Formula::Forall(v, t, _) => {
                out.insert(v.clone());
                t.collect_vars(&mut out);
            }
            _ => {}
        });
        out
    }

    /// Pre-order traversal over subformulas.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Eq(..) | Formula::Le(..) => {}
            Formula::Not(a) => a.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Exists(_, _, body) | Formula::Forall(_, _, body) => body.visit(f),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Eq(a, b) | Formula::Le(a, b) => 1 + a.size() + b.size(),
            Formula::Not(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::Exists(_, t, body) | Formula::Forall(_, t, body) => {
                1 + t.size() + body.size()
            }
        }
    }

    pub fn quantifier_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |f| {
            if matches!(f, Formula::Exists(..) | Formula::Forall(..)) {
                n += 1;
            }
        });
        n
    }
}

/// A quantifier bound is sharp when it is syntactically `len(t)`.
pub fn is_sharp(bound: &Term) -> bool {
    matches!(bound, Term::Len(_))
}

/// Pick a name based on `base` that avoids everything in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|k| format!("{stem}{k}"))
        .find(|cand| !avoid.contains(cand))
        .expect("unbounded search")
}
