//! Block-level normalization: split a strict formula into its quantifier
//! prefix and Σ̂ᵇ₀ matrix, and rebuild combinations of strict formulas in
//! strict form by merging prefixes block by block.

use crate::ast::{fresh_name, is_sharp, Formula, Term};
use crate::classify::is_b0;
use crate::subst::{substitute_all, substitute_term};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quant {
    pub exists: bool,
    pub var: String,
    pub bound: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prenex {
    pub prefix: Vec<Quant>,
    pub matrix: Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    And,
    Or,
    Implies,
}

impl Prenex {
    pub fn into_formula(self) -> Formula {
        self.prefix.into_iter().rev().fold(self.matrix, |acc, q| {
            if q.exists {
                Formula::exists(q.var, q.bound, acc)
            } else {
                Formula::forall(q.var, q.bound, acc)
            }
        })
    }
}

/// Quantifier chains of independent subformulas still to be interleaved,
/// over a shared matrix.
struct Multi {
    chains: Vec<Vec<Quant>>,
    matrix: Formula,
}

impl Multi {
    fn flip(self) -> Multi {
        Multi {
            chains: self.chains.into_iter().map(flip_all).collect(),
            matrix: self.matrix,
        }
    }

    fn vars(&self) -> BTreeSet<String> {
        let mut out = self.matrix.all_vars();
        for q in self.chains.iter().flatten() {
            out.insert(q.var.clone());
            q.bound.collect_vars(&mut out);
        }
        out
    }

    fn rename(self, avoid: &BTreeSet<String>) -> Multi {
        let lens: Vec<usize> = self.chains.iter().map(|c| c.len()).collect();
        let p = rename_prefix(
            Prenex {
                prefix: self.chains.into_iter().flatten().collect(),
                matrix: self.matrix,
            },
            avoid,
        );
        let mut rest = p.prefix.into_iter();
        Multi {
            chains: lens.iter().map(|&n| rest.by_ref().take(n).collect()).collect(),
            matrix: p.matrix,
        }
    }
}

fn flip_all(chain: Vec<Quant>) -> Vec<Quant> {
    chain
        .into_iter()
        .map(|q| Quant {
            exists: !q.exists,
            ..q
        })
        .collect()
}

fn multi(f: &Formula) -> Multi {
    if is_b0(f) {
        return Multi {
            chains: vec![],
            matrix: f.clone(),
        };
    }
    match f {
        Formula::Eq(..) | Formula::Le(..) => unreachable!("atoms are Σ̂ᵇ₀"),
        Formula::Not(a) => {
            let m = multi(a).flip();
            Multi {
                matrix: Formula::not(m.matrix),
                ..m
            }
        }
        Formula::And(a, b) => join(Connective::And, multi(a), multi(b)),
        Formula::Or(a, b) => join(Connective::Or, multi(a), multi(b)),
        Formula::Implies(a, b) => join(Connective::Implies, multi(a), multi(b)),
        Formula::Exists(v, t, body) | Formula::Forall(v, t, body) => {
            let inner = multi(body);
            if inner.chains.is_empty() && is_sharp(t) {
                return Multi {
                    chains: vec![],
                    matrix: f.clone(),
                };
            }
            let exists = matches!(f, Formula::Exists(..));
            let mut chain = vec![Quant {
                exists,
                var: v.clone(),
                bound: t.clone(),
            }];
            chain.extend(interleave(inner.chains, Some(exists)));
            Multi {
                chains: vec![chain],
                matrix: inner.matrix,
            }
        }
    }
}

fn join(op: Connective, a: Multi, b: Multi) -> Multi {
    let a = if op == Connective::Implies { a.flip() } else { a };
    let b = b.rename(&a.vars());
    let a = a.rename(&b.vars());
    let matrix = match op {
        Connective::And => Formula::and(a.matrix, b.matrix),
        Connective::Or => Formula::or(a.matrix, b.matrix),
        Connective::Implies => Formula::implies(a.matrix, b.matrix),
    };
    let mut chains = a.chains;
    chains.extend(b.chains);
    Multi { chains, matrix }
}

/// Order-preserving interleaving of the chains with the fewest blocks; ties
/// go to `prefer` as the leading kind, else to the kind of the first chain.
fn interleave(chains: Vec<Vec<Quant>>, prefer: Option<bool>) -> Vec<Quant> {
    let first = chains.iter().find_map(|c| c.first().map(|q| q.exists));
    let Some(first) = first else { return vec![] };
    let prefer = prefer.unwrap_or(first);
    [prefer, !prefer]
        .into_iter()
        .map(|start| greedy(&chains, start))
        .min_by_key(|p| count_blocks(p))
        .unwrap_or_default()
}

/// Each round takes every leading quantifier of the current kind.
fn greedy(chains: &[Vec<Quant>], start: bool) -> Vec<Quant> {
    let mut pos = vec![0; chains.len()];
    let total: usize = chains.iter().map(|c| c.len()).sum();
    let mut out = Vec::with_capacity(total);
    let mut kind = start;
    while out.len() < total {
        for (c, p) in chains.iter().zip(pos.iter_mut()) {
            while *p < c.len() && c[*p].exists == kind {
                out.push(c[*p].clone());
                *p += 1;
            }
        }
        kind = !kind;
    }
    out
}

/// Bring `f` into strict prenex form. Sharply bounded quantifiers whose scope
/// is Σ̂ᵇ₀ stay in the matrix; everything else is pulled to the front, with
/// the prefixes of independent subformulas interleaved to save alternations.
pub fn prenex(f: &Formula) -> Prenex {
    prenex_leading(f, None)
}

/// As `prenex`, breaking ties in favour of a leading ∃ (`true`) or ∀ block.
pub fn prenex_leading(f: &Formula, prefer: Option<bool>) -> Prenex {
    let m = multi(f);
    Prenex {
        prefix: interleave(m.chains, prefer),
        matrix: m.matrix,
    }
}

pub fn prenex_formula(f: &Formula) -> Formula {
    prenex(f).into_formula()
}

/// `prenex_leading(f, Some(true))` as a formula.
pub fn prenex_sigma(f: &Formula) -> Formula {
    prenex_leading(f, Some(true)).into_formula()
}

fn vars_of(p: &Prenex) -> BTreeSet<String> {
    p.clone().into_formula().all_vars()
}

/// Rename prefix variables that occur in `avoid`; later bounds and the matrix follow.
fn rename_prefix(p: Prenex, avoid: &BTreeSet<String>) -> Prenex {
    let mut taken: BTreeSet<String> = avoid.clone();
    taken.extend(vars_of(&p));
    let mut map: BTreeMap<String, Term> = BTreeMap::new();
    let mut prefix = Vec::with_capacity(p.prefix.len());
    for q in p.prefix {
        let bound = substitute_term(&q.bound, &map);
        let var = if avoid.contains(&q.var) {
            let nv = fresh_name(&q.var, &taken);
            taken.insert(nv.clone());
            map.insert(q.var.clone(), Term::Var(nv.clone()));
            nv
        } else {
            map.remove(&q.var);
            q.var
        };
        prefix.push(Quant {
            exists: q.exists,
            var,
            bound,
        });
    }
    Prenex {
        prefix,
        matrix: substitute_all(&p.matrix, &map),
    }
}

/// `a ∘ b` with both prefixes pulled out; blocks of equal kind are merged so
/// the result has as few alternations as possible.
pub fn combine(op: Connective, a: Prenex, b: Prenex) -> Prenex {
    let a = if op == Connective::Implies {
        Prenex {
            prefix: a
                .prefix
                .into_iter()
                .map(|q| Quant {
                    exists: !q.exists,
                    ..q
                })
                .collect(),
            matrix: a.matrix,
        }
    } else {
        a
    };
    let b = rename_prefix(b, &vars_of(&a));
    let a = rename_prefix(a, &vars_of(&b));
    let matrix = match op {
        Connective::And => Formula::and(a.matrix.clone(), b.matrix.clone()),
        Connective::Or => Formula::or(a.matrix.clone(), b.matrix.clone()),
        Connective::Implies => Formula::implies(a.matrix.clone(), b.matrix.clone()),
    };
    Prenex {
        prefix: interleave(vec![a.prefix, b.prefix], None),
        matrix,
    }
}

fn count_blocks(p: &[Quant]) -> usize {
    if p.is_empty() {
        return 0;
    }
    1 + p.windows(2).filter(|w| w[0].exists != w[1].exists).count()
}
