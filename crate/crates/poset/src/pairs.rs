use crate::{Form, FragmentNode, FragmentPoset, Gen};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairTag {
    Interior,
    /// Touches the top level, where the truncation hides upper covers.
    Boundary,
    /// Implied by another critical pair through the deduction theorem.
    Subsumed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CriticalPair {
    pub a: FragmentNode,
    pub b: FragmentNode,
    pub tag: PairTag,
    /// For subsumed pairs: the pair `(a⁻, b')` with `b ≤ b'` that implies this one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(FragmentNode, FragmentNode)>,
}

fn raw_pairs(p: &FragmentPoset) -> Vec<(usize, usize)> {
    let n = p.nodes.len();
    let mut out: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            (0..n)
                .filter(move |&b| {
                    !p.leq_ix(a, b)
                        && (0..n).all(|x| x == a || !p.leq_ix(x, a) || p.leq_ix(x, b))
                        && (0..n).all(|y| y == b || !p.leq_ix(b, y) || p.leq_ix(a, y))
                })
                .map(move |b| (a, b))
        })
        .collect();
    out.sort();
    out
}

/// The parameter-free scheme behind a rule node.
fn free_version(p: &FragmentPoset, a: FragmentNode) -> Option<FragmentNode> {
    match a {
        FragmentNode::Gen(g) if g.form == Form::Rule => {
            p.canonical(Gen { form: Form::ParamFree, ..g }.normalize())
        }
        _ => None,
    }
}

fn is_full_scheme(n: FragmentNode) -> bool {
    matches!(n, FragmentNode::Gen(g) if g.form == Form::Axiom)
}

/// Critical pairs of the truncation. A rule that is derivable in a theory
/// given by a full scheme gives the parameter-free scheme there as well, so
/// `⟨ρᴿ, T⟩` is implied by any critical pair `⟨ρ⁻, b'⟩` with `T ≤ b'`; such
/// pairs are tagged as subsumed.
pub fn critical_pairs(p: &FragmentPoset, interior_only: bool) -> Vec<CriticalPair> {
    let raw: Vec<(FragmentNode, FragmentNode)> = raw_pairs(p)
        .into_iter()
        .map(|(a, b)| (p.nodes[a], p.nodes[b]))
        .collect();
    let top = p.max_level;
    raw.iter()
        .map(|&(a, b)| {
            let boundary = a.level().max(b.level()) >= top;
            let witness = if is_full_scheme(b) {
                free_version(p, a).and_then(|f| {
                    raw.iter().copied().find(|&(a2, b2)| a2 == f && p.leq(b, b2))
                })
            } else {
                None
            };
            let tag = if boundary {
                PairTag::Boundary
            } else if witness.is_some() {
                PairTag::Subsumed
            } else {
                PairTag::Interior
            };
            CriticalPair {
                a,
                b,
                tag,
                witness: if tag == PairTag::Subsumed { witness } else { None },
            }
        })
        .filter(|c| !interior_only || c.tag != PairTag::Boundary)
        .collect()
}

/// Non-inequalities `a ≰ b` below the top level not covered by any critical
/// pair `(a', b')` with `a' ≤ a` and `b ≤ b'`. Empty when the critical pairs
/// form a basis there.
pub fn basis_gaps(p: &FragmentPoset) -> Vec<(FragmentNode, FragmentNode)> {
    let pairs = critical_pairs(p, false);
    let inner: Vec<FragmentNode> =
        p.nodes.iter().copied().filter(|n| n.level() < p.max_level).collect();
    inner
        .par_iter()
        .flat_map_iter(|&a| inner.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| {
            !p.leq(a, b) && !pairs.iter().any(|c| p.leq(c.a, a) && p.leq(b, c.b))
        })
        .collect()
}
