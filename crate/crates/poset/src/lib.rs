//! Finite truncations of the posets of induction rules and schemes, ordered
//! by reducibility, with critical pairs and Hasse diagrams.

mod dot;
mod node;
mod pairs;

pub use dot::{level_dot, to_dot};
pub use node::{Class, Family, Form, FragmentNode, Gen, NodeNameError};
pub use pairs::{basis_gaps, critical_pairs, CriticalPair, PairTag};

use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    R,
    T,
}

/// Why a generator edge is there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// The base theory is below everything.
    Base,
    /// A rule follows from the parameter-free scheme.
    RuleBelowFree,
    /// The parameter-free scheme follows from the full scheme.
    FreeBelowFull,
    /// Π̂ᵇᵢ variants reduce to Σ̂ᵇᵢ variants of the same form.
    PiBelowSigma,
    /// PIND reduces to IND of the same form and class.
    PindBelowInd,
    /// Σ̂ᵇᵢ-IND reduces to Σ̂ᵇᵢ₊₁-PINDᴿ.
    IndBelowNextSigmaPindRule,
    /// Σ̂ᵇᵢ-IND⁻ and -INDᴿ reduce to Π̂ᵇᵢ₊₁-PIND of the same form.
    IndBelowNextPiPind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: FragmentNode,
    pub to: FragmentNode,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("max level must be at least 2, got {0}")]
    MaxLevel(u32),
    #[error("order is not antisymmetric: {0} and {1}")]
    NotAntisymmetric(FragmentNode, FragmentNode),
}

#[derive(Debug, Clone)]
pub struct FragmentPoset {
    pub kind: Kind,
    pub max_level: u32,
    /// Canonical nodes in layout order.
    pub nodes: Vec<FragmentNode>,
    /// Generator edges between formal nodes, before any quotient.
    pub edges: Vec<Edge>,
    /// Formal node to canonical node, for every formal node.
    pub quotient: BTreeMap<FragmentNode, FragmentNode>,
    index: BTreeMap<FragmentNode, usize>,
    leq: Vec<Vec<bool>>,
}

fn generator_edges(max_level: u32) -> Vec<Edge> {
    use {Class::*, Family::*, Form::*};
    let mut out = Vec::new();
    let mut push = |a: Gen, b: Gen, provenance| {
        let (from, to) = (a.normalize(), b.normalize());
        if from != to {
            out.push(Edge { from, to, provenance });
        }
    };
    for i in 0..=max_level {
        for family in [Ind, Pind] {
            for class in [Sigma, Pi] {
                let g = |form| Gen::new(family, form, class, i);
                push(g(Rule), g(ParamFree), Provenance::RuleBelowFree);
                push(g(ParamFree), g(Axiom), Provenance::FreeBelowFull);
            }
            for form in [ParamFree, Rule] {
                push(
                    Gen::new(family, form, Pi, i),
                    Gen::new(family, form, Sigma, i),
                    Provenance::PiBelowSigma,
                );
            }
        }
        for form in [Axiom, ParamFree, Rule] {
            for class in [Sigma, Pi] {
                push(
                    Gen::new(Pind, form, class, i),
                    Gen::new(Ind, form, class, i),
                    Provenance::PindBelowInd,
                );
            }
        }
        if i < max_level {
            push(
                Gen::new(Ind, Axiom, Sigma, i),
                Gen::new(Pind, Rule, Sigma, i + 1),
                Provenance::IndBelowNextSigmaPindRule,
            );
            for form in [ParamFree, Rule] {
                push(
                    Gen::new(Ind, form, Sigma, i),
                    Gen::new(Pind, form, Pi, i + 1),
                    Provenance::IndBelowNextPiPind,
                );
            }
        }
    }
    let formal: Vec<FragmentNode> = (0..=max_level).flat_map(FragmentNode::at_level).collect();
    for n in formal {
        out.push(Edge {
            from: FragmentNode::Base,
            to: n,
            provenance: Provenance::Base,
        });
    }
    out
}

/// The P_T identifications: Σ̂ᵇᵢ₊₁-PINDᴿ with Σ̂ᵇᵢ-IND and Π̂ᵇᵢ₊₁-PINDᴿ with Σ̂ᵇᵢ-INDᴿ.
fn theory_quotient(n: FragmentNode) -> FragmentNode {
    use {Class::*, Family::*, Form::*};
    match n {
        FragmentNode::Gen(g) if g.family == Pind && g.form == Rule && g.level >= 1 => {
            let form = if g.class == Sigma { Axiom } else { Rule };
            FragmentNode::gen(Ind, form, Sigma, g.level - 1)
        }
        _ => n,
    }
}

pub fn build_poset(kind: Kind, max_level: u32) -> Result<FragmentPoset, PosetError> {
    if max_level < 2 {
        return Err(PosetError::MaxLevel(max_level));
    }
    let edges = generator_edges(max_level);
    let mut formal = vec![FragmentNode::Base];
    formal.extend((0..=max_level).flat_map(FragmentNode::at_level));
    let quotient: BTreeMap<FragmentNode, FragmentNode> = formal
        .iter()
        .map(|&n| {
            let c = match kind {
                Kind::R => n,
                Kind::T => theory_quotient(n),
            };
            (n, c)
        })
        .collect();
    let mut nodes: Vec<FragmentNode> = quotient.values().copied().collect();
    nodes.sort();
    nodes.dedup();
    let index: BTreeMap<FragmentNode, usize> =
        nodes.iter().enumerate().map(|(k, &n)| (n, k)).collect();

    let n = nodes.len();
    let mut succ = vec![Vec::new(); n];
    for e in &edges {
        let (a, b) = (index[&quotient[&e.from]], index[&quotient[&e.to]]);
        if a != b {
            succ[a].push(b);
        }
    }
    let leq: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &succ[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            seen
        })
        .collect();
    for a in 0..n {
        for b in a + 1..n {
            if leq[a][b] && leq[b][a] {
                return Err(PosetError::NotAntisymmetric(nodes[a], nodes[b]));
            }
        }
    }
    Ok(FragmentPoset {
        kind,
        max_level,
        nodes,
        edges,
        quotient,
        index,
        leq,
    })
}

impl FragmentPoset {
    /// Canonical node for a formal one, if it belongs to this truncation.
    pub fn canonical(&self, n: FragmentNode) -> Option<FragmentNode> {
        self.quotient.get(&n).copied()
    }

    pub fn leq(&self, a: FragmentNode, b: FragmentNode) -> bool {
        let (a, b) = (self.pos(a), self.pos(b));
        self.leq[a][b]
    }

    pub fn lt(&self, a: FragmentNode, b: FragmentNode) -> bool {
        self.canonical(a) != self.canonical(b) && self.leq(a, b)
    }

    fn pos(&self, n: FragmentNode) -> usize {
        let c = self.canonical(n).unwrap_or_else(|| panic!("{n} is not in the truncation"));
        self.index[&c]
    }

    pub(crate) fn leq_ix(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// Covering pairs `(a, b)` with `a < b`, in node order.
    pub fn hasse(&self) -> Vec<(FragmentNode, FragmentNode)> {
        let n = self.nodes.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b
                    && self.leq[a][b]
                    && !(0..n).any(|c| c != a && c != b && self.leq[a][c] && self.leq[c][b])
                {
                    out.push((self.nodes[a], self.nodes[b]));
                }
            }
        }
        out
    }

    /// A chain of generator edges (mapped to canonical nodes) from `a` to `b`.
    pub fn derivation(&self, a: FragmentNode, b: FragmentNode) -> Option<Vec<Edge>> {
        let (a, b) = (self.canonical(a)?, self.canonical(b)?);
        let mut prev: BTreeMap<FragmentNode, Edge> = BTreeMap::new();
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                let mut path = Vec::new();
                let mut cur = b;
                while cur != a {
                    let e = prev[&cur];
                    path.push(e);
                    cur = self.quotient[&e.from];
                }
                path.reverse();
                return Some(path);
            }
            for e in &self.edges {
                let (f, t) = (self.quotient[&e.from], self.quotient[&e.to]);
                if f == x && t != a && t != f && !prev.contains_key(&t) {
                    prev.insert(t, *e);
                    queue.push_back(t);
                }
            }
        }
        None
    }

    pub fn upper_bounds(&self, a: FragmentNode, b: FragmentNode) -> Vec<FragmentNode> {
        self.nodes
            .iter()
            .copied()
            .filter(|&c| self.leq(a, c) && self.leq(b, c))
            .collect()
    }

    pub fn lower_bounds(&self, a: FragmentNode, b: FragmentNode) -> Vec<FragmentNode> {
        self.nodes
            .iter()
            .copied()
            .filter(|&c| self.leq(c, a) && self.leq(c, b))
            .collect()
    }

    /// Two elements without a join: their upper bounds have two incomparable
    /// minimal members. Only nodes below the top level are considered, so the
    /// witness does not depend on where the truncation stops.
    pub fn non_lattice_witness(&self) -> Option<NonLatticeWitness> {
        let inner: Vec<FragmentNode> = self
            .nodes
            .iter()
            .copied()
            .filter(|n| n.level() < self.max_level)
            .collect();
        for (k, &a) in inner.iter().enumerate() {
            for &b in &inner[k + 1..] {
                let ub: Vec<FragmentNode> = self
                    .upper_bounds(a, b)
                    .into_iter()
                    .filter(|n| n.level() < self.max_level)
                    .collect();
                let minimal: Vec<FragmentNode> = ub
                    .iter()
                    .copied()
                    .filter(|&c| !ub.iter().any(|&d| self.lt(d, c)))
                    .collect();
                if minimal.len() >= 2 {
                    return Some(NonLatticeWitness {
                        a,
                        b,
                        bounds: (minimal[0], minimal[1]),
                    });
                }
            }
        }
        None
    }

    pub fn listing(&self, interior_only: bool) -> Listing {
        Listing {
            kind: self.kind,
            max_level: self.max_level,
            nodes: self
                .nodes
                .iter()
                .map(|&n| NodeEntry {
                    name: n,
                    level: n.level(),
                    identified: self
                        .quotient
                        .iter()
                        .filter(|(f, c)| **c == n && **f != n)
                        .map(|(f, _)| *f)
                        .collect(),
                })
                .collect(),
            edges: self.edges.clone(),
            hasse: self.hasse(),
            critical_pairs: critical_pairs(self, interior_only),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NonLatticeWitness {
    pub a: FragmentNode,
    pub b: FragmentNode,
    /// Two incomparable minimal upper bounds of `a` and `b`.
    pub bounds: (FragmentNode, FragmentNode),
}

#[derive(Debug, Clone, Serialize)]
pub struct NodeEntry {
    pub name: FragmentNode,
    pub level: u32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub identified: Vec<FragmentNode>,
}

/// Machine-readable dump of a truncation.
#[derive(Debug, Clone, Serialize)]
pub struct Listing {
    pub kind: Kind,
    pub max_level: u32,
    pub nodes: Vec<NodeEntry>,
    pub edges: Vec<Edge>,
    pub hasse: Vec<(FragmentNode, FragmentNode)>,
    pub critical_pairs: Vec<CriticalPair>,
}
