use crate::{Node, NodeId, QProp};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

pub type Assignment = BTreeMap<String, bool>;

/// Default limit on quantifier nesting depth.
pub const DEFAULT_EVAL_CAP: u32 = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QEvalError {
    #[error("quantifier depth {depth} exceeds cap {cap}")]
    Cap { depth: u32, cap: u32 },
    #[error("no value for free variable {0}")]
    Missing(String),
}

fn quant_depth(q: &QProp) -> u32 {
    let mut d: BTreeMap<NodeId, u32> = BTreeMap::new();
    for id in q.topo() {
        let v = match q.node(id) {
            Node::Var(_) | Node::Const(_) => 0,
            Node::Not(a) => d[a],
            Node::And(a, b) | Node::Or(a, b) => d[a].max(d[b]),
            Node::Exists(_, a) | Node::Forall(_, a) => d[a] + 1,
        };
        d.insert(id, v);
    }
    d[&q.root()]
}

pub fn qeval(q: &QProp, a: &Assignment) -> Result<bool, QEvalError> {
    qeval_with_cap(q, a, DEFAULT_EVAL_CAP)
}

pub fn qeval_with_cap(q: &QProp, a: &Assignment, cap: u32) -> Result<bool, QEvalError> {
    let depth = quant_depth(q);
    if depth > cap {
        return Err(QEvalError::Cap { depth, cap });
    }
    if let Some(v) = q.free_vars().into_iter().find(|v| !a.contains_key(v)) {
        return Err(QEvalError::Missing(v));
    }
    let n = q.topo().into_iter().max().map_or(0, |m| m as usize + 1);
    let mut ev = Evaluator {
        q,
        free: a,
        bound: Vec::new(),
        memo: vec![(u32::MAX, false); n],
        scope: 0,
        next_scope: 1,
    };
    Ok(ev.eval(q.root()))
}

struct Evaluator<'a> {
    q: &'a QProp,
    free: &'a Assignment,
    bound: Vec<(Arc<str>, bool)>,
    // a cached value is reused only inside the scope that computed it
    memo: Vec<(u32, bool)>,
    scope: u32,
    next_scope: u32,
}

impl Evaluator<'_> {
    fn lookup(&self, v: &str) -> bool {
        match self.bound.iter().rev().find(|(n, _)| &**n == v) {
            Some((_, b)) => *b,
            None => self.free[v],
        }
    }

    fn eval(&mut self, id: NodeId) -> bool {
        let (sc, val) = self.memo[id as usize];
        if sc == self.scope {
            return val;
        }
        let r = match self.q.node(id) {
            Node::Var(v) => self.lookup(v),
            Node::Const(b) => *b,
            Node::Not(a) => !self.eval(*a),
            Node::And(a, b) => self.eval(*a) && self.eval(*b),
            Node::Or(a, b) => self.eval(*a) || self.eval(*b),
            Node::Exists(v, a) | Node::Forall(v, a) => {
                let want = matches!(self.q.node(id), Node::Exists(..));
                let outer = self.scope;
                let mut r = !want;
                for val in [false, true] {
                    self.bound.push((v.clone(), val));
                    self.scope = self.next_scope;
                    self.next_scope += 1;
                    let x = self.eval(*a);
                    self.bound.pop();
                    if x == want {
                        r = want;
                        break;
                    }
                }
                self.scope = outer;
                r
            }
        };
        self.memo[id as usize] = (self.scope, r);
        r
    }
}
