//! Quantified propositional formulas stored as hash-consed DAGs.

mod class;
mod eval;
pub mod qcir;
pub mod qdimacs;
mod text;
mod translate;

pub use class::{qclassify, qlevels, QClass, QKind};
pub use eval::{qeval, qeval_with_cap, Assignment, QEvalError, DEFAULT_EVAL_CAP};
pub use text::{parse_qprop, render_qprop, ParseError};
pub use translate::{
    bit_name, provenance, translate, translate_with_cap, TranslateError, DEFAULT_WIDTH_CAP,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

pub type NodeId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Var(Arc<str>),
    Const(bool),
    Not(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Exists(Arc<str>, NodeId),
    Forall(Arc<str>, NodeId),
}

/// Arena with structural sharing. Identical nodes get identical ids.
#[derive(Debug, Default, Clone)]
pub struct Builder {
    nodes: Vec<Node>,
    index: HashMap<Node, NodeId>,
}

impl Builder {
    pub fn new() -> Builder {
        Builder::default()
    }

    pub fn add(&mut self, n: Node) -> NodeId {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len() as NodeId;
        self.nodes.push(n.clone());
        self.index.insert(n, id);
        id
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn var(&mut self, name: &str) -> NodeId {
        self.add(Node::Var(name.into()))
    }

    pub fn constant(&mut self, b: bool) -> NodeId {
        self.add(Node::Const(b))
    }

    pub fn not(&mut self, a: NodeId) -> NodeId {
        self.add(Node::Not(a))
    }

    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.add(Node::And(a, b))
    }

    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.add(Node::Or(a, b))
    }

    pub fn exists(&mut self, v: &str, body: NodeId) -> NodeId {
        self.add(Node::Exists(v.into(), body))
    }

    pub fn forall(&mut self, v: &str, body: NodeId) -> NodeId {
        self.add(Node::Forall(v.into(), body))
    }

    fn as_const(&self, id: NodeId) -> Option<bool> {
        match self.node(id) {
            Node::Const(b) => Some(*b),
            _ => None,
        }
    }

    /// Negation that folds constants and double negations.
    pub fn not_s(&mut self, a: NodeId) -> NodeId {
        match self.node(a) {
            Node::Const(b) => {
                let b = !*b;
                self.constant(b)
            }
            Node::Not(x) => *x,
            _ => self.not(a),
        }
    }

    /// Conjunction that folds constants and `a ∧ a`.
    pub fn and_s(&mut self, a: NodeId, b: NodeId) -> NodeId {
        match (self.as_const(a), self.as_const(b)) {
            (Some(false), _) | (_, Some(false)) => self.constant(false),
            (Some(true), _) => b,
            (_, Some(true)) => a,
            _ if a == b => a,
            _ => self.and(a, b),
        }
    }

    pub fn or_s(&mut self, a: NodeId, b: NodeId) -> NodeId {
        match (self.as_const(a), self.as_const(b)) {
            (Some(true), _) | (_, Some(true)) => self.constant(true),
            (Some(false), _) => b,
            (_, Some(false)) => a,
            _ if a == b => a,
            _ => self.or(a, b),
        }
    }

    pub fn and_all(&mut self, xs: impl IntoIterator<Item = NodeId>) -> NodeId {
        let t = self.constant(true);
        xs.into_iter().fold(t, |acc, x| self.and_s(acc, x))
    }

    pub fn or_all(&mut self, xs: impl IntoIterator<Item = NodeId>) -> NodeId {
        let f = self.constant(false);
        xs.into_iter().fold(f, |acc, x| self.or_s(acc, x))
    }

    /// Copy the reachable part of `q` into this arena.
    pub fn import(&mut self, q: &QProp) -> NodeId {
        let mut map: HashMap<NodeId, NodeId> = HashMap::new();
        for id in q.topo() {
            let m = |x: &NodeId| map[x];
            let n = match q.node(id) {
                Node::Var(v) => Node::Var(v.clone()),
                Node::Const(b) => Node::Const(*b),
                Node::Not(a) => Node::Not(m(a)),
                Node::And(a, b) => Node::And(m(a), m(b)),
                Node::Or(a, b) => Node::Or(m(a), m(b)),
                Node::Exists(v, a) => Node::Exists(v.clone(), m(a)),
                Node::Forall(v, a) => Node::Forall(v.clone(), m(a)),
            };
            let new = self.add(n);
            map.insert(id, new);
        }
        map[&q.root]
    }

    pub fn finish(self, root: NodeId) -> QProp {
        QProp {
            nodes: self.nodes.into(),
            root,
        }
    }
}

/// A formula: a root inside a shared, immutable arena.
#[derive(Clone)]
pub struct QProp {
    nodes: Arc<[Node]>,
    root: NodeId,
}

/// One level of a formula, with children as formulas in the same arena.
#[derive(Debug, Clone)]
pub enum View<'a> {
    Var(&'a str),
    Const(bool),
    Not(QProp),
    And(QProp, QProp),
    Or(QProp, QProp),
    Exists(&'a str, QProp),
    Forall(&'a str, QProp),
}

impl QProp {
    fn build(f: impl FnOnce(&mut Builder) -> NodeId) -> QProp {
        let mut b = Builder::new();
        let r = f(&mut b);
        b.finish(r)
    }

    pub fn var(name: &str) -> QProp {
        QProp::build(|b| b.var(name))
    }

    pub fn constant(v: bool) -> QProp {
        QProp::build(|b| b.constant(v))
    }

    pub fn not(&self) -> QProp {
        QProp::build(|b| {
            let a = b.import(self);
            b.not(a)
        })
    }

    pub fn and(&self, other: &QProp) -> QProp {
        QProp::build(|b| {
            let x = b.import(self);
            let y = b.import(other);
            b.and(x, y)
        })
    }

    pub fn or(&self, other: &QProp) -> QProp {
        QProp::build(|b| {
            let x = b.import(self);
            let y = b.import(other);
            b.or(x, y)
        })
    }

    /// `¬a ∨ b`.
    pub fn implies(&self, other: &QProp) -> QProp {
        self.not().or(other)
    }

    pub fn exists(v: &str, body: &QProp) -> QProp {
        QProp::build(|b| {
            let x = b.import(body);
            b.exists(v, x)
        })
    }

    pub fn forall(v: &str, body: &QProp) -> QProp {
        QProp::build(|b| {
            let x = b.import(body);
            b.forall(v, x)
        })
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id as usize]
    }

    fn at(&self, id: NodeId) -> QProp {
        QProp {
            nodes: self.nodes.clone(),
            root: id,
        }
    }

    pub fn view(&self) -> View<'_> {
        match self.node(self.root) {
            Node::Var(v) => View::Var(v),
            Node::Const(b) => View::Const(*b),
            Node::Not(a) => View::Not(self.at(*a)),
            Node::And(a, b) => View::And(self.at(*a), self.at(*b)),
            Node::Or(a, b) => View::Or(self.at(*a), self.at(*b)),
            Node::Exists(v, a) => View::Exists(v, self.at(*a)),
            Node::Forall(v, a) => View::Forall(v, self.at(*a)),
        }
    }

    /// Reachable node ids, children before parents.
    pub fn topo(&self) -> Vec<NodeId> {
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        let mut stack = vec![(self.root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                out.push(id);
                continue;
            }
            if seen[id as usize] {
                continue;
            }
            seen[id as usize] = true;
            stack.push((id, true));
            for c in children(self.node(id)) {
                if !seen[c as usize] {
                    stack.push((c, false));
                }
            }
        }
        out
    }

    /// Number of distinct reachable nodes.
    pub fn size(&self) -> usize {
        self.topo().len()
    }

    pub fn is_quantifier_free(&self) -> bool {
        self.topo()
            .iter()
            .all(|&id| !matches!(self.node(id), Node::Exists(..) | Node::Forall(..)))
    }

    /// Variables bound anywhere in the formula.
    pub fn bound_vars(&self) -> BTreeSet<String> {
        self.topo()
            .into_iter()
            .filter_map(|id| match self.node(id) {
                Node::Exists(v, _) | Node::Forall(v, _) => Some(v.to_string()),
                _ => None,
            })
            .collect()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let free = self.free_sets();
        free[&self.root].iter().map(|s| s.to_string()).collect()
    }

    pub(crate) fn free_sets(&self) -> HashMap<NodeId, BTreeSet<Arc<str>>> {
        let mut free: HashMap<NodeId, BTreeSet<Arc<str>>> = HashMap::new();
        for id in self.topo() {
            let s = match self.node(id) {
                Node::Var(v) => BTreeSet::from([v.clone()]),
                Node::Const(_) => BTreeSet::new(),
                Node::Not(a) => free[a].clone(),
                Node::And(a, b) | Node::Or(a, b) => free[a].union(&free[b]).cloned().collect(),
                Node::Exists(v, a) | Node::Forall(v, a) => {
                    let mut s = free[a].clone();
                    s.remove(v);
                    s
                }
            };
            free.insert(id, s);
        }
        free
    }

    /// Replace free occurrences of variables; binders shadow their variable.
    /// No renaming is done, so the replacements should not mention
    /// variables bound in `self`.
    pub fn substitute(&self, map: &BTreeMap<String, QProp>) -> QProp {
        let mut b = Builder::new();
        let reps: BTreeMap<&str, NodeId> =
            map.iter().map(|(k, v)| (k.as_str(), b.import(v))).collect();
        let mut memo = HashMap::new();
        let r = subst(self, self.root, &reps, &mut Vec::new(), &mut b, &mut memo);
        b.finish(r)
    }

    pub fn instantiate(&self, v: &str, with: &QProp) -> QProp {
        self.substitute(&BTreeMap::from([(v.to_string(), with.clone())]))
    }
}

fn subst(
    q: &QProp,
    id: NodeId,
    reps: &BTreeMap<&str, NodeId>,
    shadow: &mut Vec<Arc<str>>,
    b: &mut Builder,
    memo: &mut HashMap<(NodeId, Vec<Arc<str>>), NodeId>,
) -> NodeId {
    let key = (id, shadow.clone());
    if let Some(&r) = memo.get(&key) {
        return r;
    }
    let r = match q.node(id) {
        Node::Var(v) => match reps.get(&**v) {
            Some(&r) if !shadow.contains(v) => r,
            _ => b.var(v),
        },
        Node::Const(c) => b.constant(*c),
        Node::Not(a) => {
            let a = subst(q, *a, reps, shadow, b, memo);
            b.not(a)
        }
        Node::And(x, y) | Node::Or(x, y) => {
            let x2 = subst(q, *x, reps, shadow, b, memo);
            let y2 = subst(q, *y, reps, shadow, b, memo);
            if matches!(q.node(id), Node::And(..)) {
                b.and(x2, y2)
            } else {
                b.or(x2, y2)
            }
        }
        Node::Exists(v, a) | Node::Forall(v, a) => {
            let pushed = reps.contains_key(&**v) && !shadow.contains(v);
            if pushed {
                shadow.push(v.clone());
                shadow.sort();
            }
            let body = subst(q, *a, reps, shadow, b, memo);
            if pushed {
                shadow.retain(|s| s != v);
            }
            if matches!(q.node(id), Node::Exists(..)) {
                b.exists(v, body)
            } else {
                b.forall(v, body)
            }
        }
    };
    memo.insert(key, r);
    r
}

pub(crate) fn children(n: &Node) -> Vec<NodeId> {
    match n {
        Node::Var(_) | Node::Const(_) => vec![],
        Node::Not(a) | Node::Exists(_, a) | Node::Forall(_, a) => vec![*a],
        Node::And(a, b) | Node::Or(a, b) => vec![*a, *b],
    }
}

impl PartialEq for QProp {
    fn eq(&self, other: &QProp) -> bool {
        if Arc::ptr_eq(&self.nodes, &other.nodes) {
            return self.root == other.root;
        }
        let mut same: HashMap<(NodeId, NodeId), bool> = HashMap::new();
        struct_eq(self, self.root, other, other.root, &mut same)
    }
}

impl Eq for QProp {}

fn struct_eq(
    p: &QProp,
    a: NodeId,
    q: &QProp,
    b: NodeId,
    memo: &mut HashMap<(NodeId, NodeId), bool>,
) -> bool {
    if let Some(&r) = memo.get(&(a, b)) {
        return r;
    }
    let r = match (p.node(a), q.node(b)) {
        (Node::Var(x), Node::Var(y)) => x == y,
        (Node::Const(x), Node::Const(y)) => x == y,
        (Node::Not(x), Node::Not(y)) => struct_eq(p, *x, q, *y, memo),
        (Node::And(x1, x2), Node::And(y1, y2)) | (Node::Or(x1, x2), Node::Or(y1, y2)) => {
            struct_eq(p, *x1, q, *y1, memo) && struct_eq(p, *x2, q, *y2, memo)
        }
        (Node::Exists(v, x), Node::Exists(w, y)) | (Node::Forall(v, x), Node::Forall(w, y)) => {
            v == w && struct_eq(p, *x, q, *y, memo)
        }
        _ => false,
    };
    memo.insert((a, b), r);
    r
}

impl fmt::Debug for QProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() > 200 {
            write!(f, "QProp(<{} nodes>)", self.size())
        } else {
            write!(f, "QProp({})", render_qprop(self))
        }
    }
}

impl fmt::Display for QProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_qprop(self))
    }
}

impl serde::Serialize for QProp {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&render_qprop(self))
    }
}

impl<'de> serde::Deserialize<'de> for QProp {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<QProp, D::Error> {
        let s = String::deserialize(d)?;
        parse_qprop(&s).map_err(serde::de::Error::custom)
    }
}

/// Parse, panicking on malformed input. Meant for tests and fixed samples.
pub fn q(s: &str) -> QProp {
    parse_qprop(s).unwrap_or_else(|e| panic!("bad formula {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharing_and_equality() {
        let a = q("(p & q) | (p & q)");
        assert_eq!(a.size(), 4);
        assert_eq!(q("p & q"), q("p & q"));
        assert_ne!(q("p & q"), q("q & p"));
        let s = q("EX p. p & r").substitute(&BTreeMap::from([
            ("p".to_string(), q("0")),
            ("r".to_string(), q("~s")),
        ]));
        assert_eq!(s, q("EX p. p & ~s"));
        assert_eq!(s.free_vars(), BTreeSet::from(["s".to_string()]));
    }
}
