//! QDIMACS writer: negation normal form, quantifiers renamed apart and
//! pulled to the front, then Tseitin clauses for the matrix.

use crate::{Builder, Node, NodeId, QProp};
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

struct Nnf<'a> {
    q: &'a QProp,
    free: HashMap<NodeId, BTreeSet<Arc<str>>>,
    b: Builder,
    memo: HashMap<(NodeId, bool, Vec<Arc<str>>), NodeId>,
    counter: usize,
}

impl Nnf<'_> {
    fn go(&mut self, id: NodeId, pos: bool, env: &mut Vec<(Arc<str>, Arc<str>)>) -> NodeId {
        let lookup = |v: &Arc<str>, env: &[(Arc<str>, Arc<str>)]| {
            env.iter()
                .rev()
                .find(|(n, _)| n == v)
                .map_or(v.clone(), |(_, e)| e.clone())
        };
        let key: Vec<Arc<str>> = self.free[&id].iter().map(|v| lookup(v, env)).collect();
        let key = (id, pos, key);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = match self.q.node(id).clone() {
            Node::Var(v) => {
                let x = self.b.var(&lookup(&v, env));
                if pos {
                    x
                } else {
                    self.b.not(x)
                }
            }
            Node::Const(c) => self.b.constant(c == pos),
            Node::Not(a) => self.go(a, !pos, env),
            Node::And(a, c) | Node::Or(a, c) => {
                let conj = matches!(self.q.node(id), Node::And(..)) == pos;
                let x = self.go(a, pos, env);
                let y = self.go(c, pos, env);
                if conj {
                    self.b.and(x, y)
                } else {
                    self.b.or(x, y)
                }
            }
            Node::Exists(v, a) | Node::Forall(v, a) => {
                let ex = matches!(self.q.node(id), Node::Exists(..)) == pos;
                self.counter += 1;
                // '#' cannot occur in parsed names, so these never collide
                let fresh: Arc<str> = format!("{v}#{}", self.counter).into();
                env.push((v, fresh.clone()));
                let body = self.go(a, pos, env);
                env.pop();
                if ex {
                    self.b.exists(&fresh, body)
                } else {
                    self.b.forall(&fresh, body)
                }
            }
        };
        self.memo.insert(key, r);
        r
    }
}

/// Order the quantifiers so that each follows the binders its body
/// mentions, using as few alternations as a greedy sweep finds.
fn order(quants: &[(Arc<str>, bool, BTreeSet<Arc<str>>)]) -> Vec<(bool, Vec<Arc<str>>)> {
    let sweep = |start: bool| {
        let mut done: BTreeSet<Arc<str>> = BTreeSet::new();
        let mut blocks: Vec<(bool, Vec<Arc<str>>)> = Vec::new();
        let mut kind = start;
        let mut stalled = 0;
        while done.len() < quants.len() {
            let mut block = Vec::new();
            loop {
                let ready: Vec<Arc<str>> = quants
                    .iter()
                    .filter(|(v, k, deps)| {
                        *k == kind && !done.contains(v) && deps.iter().all(|d| done.contains(d))
                    })
                    .map(|(v, _, _)| v.clone())
                    .collect();
                if ready.is_empty() {
                    break;
                }
                done.extend(ready.iter().cloned());
                block.extend(ready);
            }
            if block.is_empty() {
                stalled += 1;
                assert!(stalled < 3, "quantifier dependencies are cyclic");
            } else {
                stalled = 0;
                blocks.push((kind, block));
            }
            kind = !kind;
        }
        blocks
    };
    let a = sweep(true);
    let b = sweep(false);
    if b.len() < a.len() {
        b
    } else {
        a
    }
}

pub fn write_qdimacs(q: &QProp) -> String {
    let mut n = Nnf {
        q,
        free: q.free_sets(),
        b: Builder::new(),
        memo: HashMap::new(),
        counter: 0,
    };
    let root = n.go(q.root(), true, &mut Vec::new());
    let nnf = n.b.finish(root);
    let free = nnf.free_sets();

    let mut quants = Vec::new();
    let mut bound: BTreeSet<Arc<str>> = BTreeSet::new();
    for id in nnf.topo() {
        if let Node::Exists(v, a) | Node::Forall(v, a) = nnf.node(id) {
            bound.insert(v.clone());
            quants.push((v.clone(), matches!(nnf.node(id), Node::Exists(..)), free[a].clone()));
        }
    }
    for (v, _, deps) in quants.iter_mut() {
        deps.retain(|d| bound.contains(d) && d != v);
    }
    let blocks = order(&quants);

    let mut num: HashMap<Arc<str>, i64> = HashMap::new();
    let mut names: Vec<Arc<str>> = Vec::new();
    let mut number = |v: &Arc<str>, num: &mut HashMap<Arc<str>, i64>| {
        names.push(v.clone());
        num.insert(v.clone(), names.len() as i64);
    };
    let free_vars: Vec<Arc<str>> = free[&nnf.root()].iter().cloned().collect();
    for v in &free_vars {
        number(v, &mut num);
    }
    for (_, vs) in &blocks {
        for v in vs {
            number(v, &mut num);
        }
    }
    let originals = names.len();

    // Tseitin over the matrix, quantifier nodes being transparent
    let mut next = originals as i64;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    let mut lit: HashMap<NodeId, i64> = HashMap::new();
    let mut truth: Option<i64> = None;
    for id in nnf.topo() {
        let l = match nnf.node(id) {
            Node::Var(v) => num[v],
            Node::Const(c) => {
                let t = *truth.get_or_insert_with(|| {
                    next += 1;
                    clauses.push(vec![next]);
                    next
                });
                if *c {
                    t
                } else {
                    -t
                }
            }
            Node::Not(a) => -lit[a],
            Node::Exists(_, a) | Node::Forall(_, a) => lit[a],
            Node::And(a, b) | Node::Or(a, b) => {
                let (x, y) = (lit[a], lit[b]);
                next += 1;
                let g = next;
                if matches!(nnf.node(id), Node::And(..)) {
                    clauses.push(vec![-g, x]);
                    clauses.push(vec![-g, y]);
                    clauses.push(vec![g, -x, -y]);
                } else {
                    clauses.push(vec![g, -x]);
                    clauses.push(vec![g, -y]);
                    clauses.push(vec![-g, x, y]);
                }
                g
            }
        };
        lit.insert(id, l);
    }
    clauses.push(vec![lit[&nnf.root()]]);

    let mut prefix: Vec<(bool, Vec<i64>)> = Vec::new();
    let mut push = |ex: bool, vs: Vec<i64>| {
        if vs.is_empty() {
            return;
        }
        match prefix.last_mut() {
            Some((k, cur)) if *k == ex => cur.extend(vs),
            _ => prefix.push((ex, vs)),
        }
    };
    push(true, free_vars.iter().map(|v| num[v]).collect());
    for (ex, vs) in &blocks {
        push(*ex, vs.iter().map(|v| num[v]).collect());
    }
    push(true, (originals as i64 + 1..=next).collect());

    let mut s = String::new();
    s.push_str("c prenex form with Tseitin clauses: equisatisfiable with the source, not equivalent\n");
    s.push_str("c free variables are existential in the outermost block\n");
    for (i, v) in names.iter().enumerate() {
        let _ = writeln!(s, "c var {} {}", i + 1, v);
    }
    let _ = writeln!(s, "p cnf {} {}", next, clauses.len());
    for (ex, vs) in &prefix {
        let _ = write!(s, "{}", if *ex { "e" } else { "a" });
        for v in vs {
            let _ = write!(s, " {v}");
        }
        s.push_str(" 0\n");
    }
    for c in &clauses {
        for l in c {
            let _ = write!(s, "{l} ");
        }
        s.push_str("0\n");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn shape() {
        let s = write_qdimacs(&q("ALL p. EX r. p | ~r"));
        assert!(s.contains("p cnf 3 4\n"));
        assert!(s.contains("a 1 0\ne 2 3 0\n"));
    }
}
