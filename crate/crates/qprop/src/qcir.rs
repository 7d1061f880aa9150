//! QCIR-G14 writer and reader.
//!
//! Leading quantifiers of the root become the prefix; quantifiers further in
//! become quantified gates. Bound variables are renamed apart, so a shared
//! node under two binders is written once per binding.

use crate::{Builder, Node, NodeId, QProp};
use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;
use std::sync::Arc;
use thiserror::Error;

fn sanitize(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect();
    if s.is_empty() {
        "_".into()
    } else {
        s
    }
}

struct Writer<'a> {
    q: &'a QProp,
    free: HashMap<NodeId, BTreeSet<Arc<str>>>,
    used: HashSet<String>,
    free_names: HashMap<Arc<str>, String>,
    memo: HashMap<(NodeId, Vec<String>), String>,
    gates: Vec<String>,
    next_gate: usize,
    truth: Option<String>,
}

impl Writer<'_> {
    fn fresh(&mut self, base: &str) -> String {
        let base = sanitize(base);
        let mut cand = base.clone();
        let mut k = 1;
        while self.used.contains(&cand) {
            cand = format!("{base}_{k}");
            k += 1;
        }
        self.used.insert(cand.clone());
        cand
    }

    fn gate(&mut self, body: String) -> String {
        let name = loop {
            let cand = format!("g{}", self.next_gate);
            self.next_gate += 1;
            if !self.used.contains(&cand) {
                break cand;
            }
        };
        self.used.insert(name.clone());
        self.gates.push(format!("{name} = {body}"));
        name
    }

    fn truth(&mut self) -> String {
        if let Some(t) = &self.truth {
            return t.clone();
        }
        let t = self.gate("and()".into());
        self.truth = Some(t.clone());
        t
    }

    fn name_of(&self, v: &Arc<str>, env: &[(Arc<str>, String)]) -> String {
        match env.iter().rev().find(|(n, _)| n == v) {
            Some((_, e)) => e.clone(),
            None => self.free_names[v].clone(),
        }
    }

    fn lit(&mut self, id: NodeId, env: &mut Vec<(Arc<str>, String)>) -> String {
        let key: Vec<String> = self.free[&id]
            .iter()
            .map(|v| self.name_of(v, env))
            .collect();
        let key = (id, key);
        if let Some(l) = self.memo.get(&key) {
            return l.clone();
        }
        let l = match self.q.node(id).clone() {
            Node::Var(v) => self.name_of(&v, env),
            Node::Const(true) => self.truth(),
            Node::Const(false) => format!("-{}", self.truth()),
            Node::Not(a) => neg(&self.lit(a, env)),
            Node::And(a, b) | Node::Or(a, b) => {
                let op = if matches!(self.q.node(id), Node::And(..)) {
                    "and"
                } else {
                    "or"
                };
                let x = self.lit(a, env);
                let y = self.lit(b, env);
                self.gate(format!("{op}({x}, {y})"))
            }
            Node::Exists(..) | Node::Forall(..) => {
                let (blocks, inner) = self.chain(id, env);
                let pushed: usize = blocks.iter().map(|b| b.1.len()).sum();
                let mut body = self.lit(inner, env);
                env.truncate(env.len() - pushed);
                for (ex, names) in blocks.into_iter().rev() {
                    let kw = if ex { "exists" } else { "forall" };
                    body = self.gate(format!("{kw}({}; {body})", names.join(", ")));
                }
                body
            }
        };
        self.memo.insert(key, l.clone());
        l
    }

    /// Leading run of quantifiers grouped into blocks; binds them in `env`.
    fn chain(
        &mut self,
        mut id: NodeId,
        env: &mut Vec<(Arc<str>, String)>,
    ) -> (Vec<(bool, Vec<String>)>, NodeId) {
        let mut blocks: Vec<(bool, Vec<String>)> = Vec::new();
        loop {
            let (ex, v, a) = match self.q.node(id) {
                Node::Exists(v, a) => (true, v.clone(), *a),
                Node::Forall(v, a) => (false, v.clone(), *a),
                _ => return (blocks, id),
            };
            let e = self.fresh(&v);
            env.push((v, e.clone()));
            match blocks.last_mut() {
                Some((k, names)) if *k == ex => names.push(e),
                _ => blocks.push((ex, vec![e])),
            }
            id = a;
        }
    }
}

fn neg(l: &str) -> String {
    match l.strip_prefix('-') {
        Some(s) => s.to_string(),
        None => format!("-{l}"),
    }
}

pub fn write_qcir(q: &QProp) -> String {
    let free = q.free_sets();
    let mut w = Writer {
        q,
        free,
        used: HashSet::new(),
        free_names: HashMap::new(),
        memo: HashMap::new(),
        gates: Vec::new(),
        next_gate: 1,
        truth: None,
    };
    let free_vars: Vec<Arc<str>> = w.free[&q.root()].iter().cloned().collect();
    for v in &free_vars {
        let e = w.fresh(v);
        w.free_names.insert(v.clone(), e);
    }
    let mut env = Vec::new();
    let (blocks, matrix) = w.chain(q.root(), &mut env);
    let mut out = w.lit(matrix, &mut env);
    if out.starts_with('-') || !w.gates.iter().any(|g| g.starts_with(&format!("{out} ="))) {
        out = w.gate(format!("and({out})"));
    }
    let mut s = String::from("#QCIR-G14\n");
    if !free_vars.is_empty() {
        let names: Vec<&str> = free_vars.iter().map(|v| w.free_names[v].as_str()).collect();
        let _ = writeln!(s, "free({})", names.join(", "));
    }
    for (ex, names) in &blocks {
        let kw = if *ex { "exists" } else { "forall" };
        let _ = writeln!(s, "{kw}({})", names.join(", "));
    }
    let _ = writeln!(s, "output({out})");
    for g in &w.gates {
        s.push_str(g);
        s.push('\n');
    }
    s
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct QcirError {
    pub line: usize,
    pub msg: String,
}

fn ident_ok(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Reads the subset of QCIR-G14 produced by [`write_qcir`], plus n-ary
/// `and`/`or`/`xor`/`ite` gates.
pub fn read_qcir(text: &str) -> Result<QProp, QcirError> {
    let mut b = Builder::new();
    let mut gates: HashMap<String, NodeId> = HashMap::new();
    let mut prefix: Vec<(bool, Vec<String>)> = Vec::new();
    let mut output: Option<(usize, String)> = None;
    let mut seen_header = false;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| QcirError { line: line_no, msg };
        let line: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if !seen_header && !line.starts_with("#QCIR-G14") {
                return Err(err("missing #QCIR-G14 header".into()));
            }
            seen_header = true;
            continue;
        }
        if !seen_header {
            return Err(err("missing #QCIR-G14 header".into()));
        }
        let (head, args) = split_call(&line).ok_or_else(|| err(format!("cannot parse {raw:?}")))?;
        if let Some((name, op)) = head.split_once('=') {
            if !ident_ok(name) {
                return Err(err(format!("bad gate name {name:?}")));
            }
            if gates.contains_key(name) {
                return Err(err(format!("gate {name} defined twice")));
            }
            let node = match op {
                "exists" | "forall" => {
                    let (vs, body) = args
                        .split_once(';')
                        .ok_or_else(|| err("quantified gate needs ';'".into()))?;
                    let mut r = literal(&mut b, &gates, body).map_err(err)?;
                    for v in list(vs).into_iter().rev() {
                        if !ident_ok(v) {
                            return Err(err(format!("bad variable {v:?}")));
                        }
                        r = if op == "exists" {
                            b.exists(v, r)
                        } else {
                            b.forall(v, r)
                        };
                    }
                    r
                }
                "and" | "or" | "xor" | "ite" => {
                    let lits = list(args)
                        .into_iter()
                        .map(|l| literal(&mut b, &gates, l))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(err)?;
                    nary(&mut b, op, &lits).map_err(err)?
                }
                _ => return Err(err(format!("unknown gate type {op:?}"))),
            };
            gates.insert(name.to_string(), node);
        } else {
            match head {
                "free" => {}
                "exists" | "forall" => {
                    if output.is_some() {
                        return Err(err("prefix after output".into()));
                    }
                    prefix.push((head == "exists", list(args).iter().map(|s| s.to_string()).collect()));
                }
                "output" => output = Some((line_no, args.to_string())),
                _ => return Err(err(format!("unknown statement {head:?}"))),
            }
        }
    }
    let (line, out) = output.ok_or(QcirError {
        line: 0,
        msg: "no output statement".into(),
    })?;
    let mut r = literal(&mut b, &gates, &out).map_err(|msg| QcirError { line, msg })?;
    for (ex, vs) in prefix.into_iter().rev() {
        for v in vs.iter().rev() {
            r = if ex { b.exists(v, r) } else { b.forall(v, r) };
        }
    }
    Ok(b.finish(r))
}

fn split_call(line: &str) -> Option<(&str, &str)> {
    let open = line.find('(')?;
    let inner = line[open + 1..].strip_suffix(')')?;
    Some((&line[..open], inner))
}

fn list(s: &str) -> Vec<&str> {
    s.split(',').filter(|x| !x.is_empty()).collect()
}

fn literal(b: &mut Builder, gates: &HashMap<String, NodeId>, l: &str) -> Result<NodeId, String> {
    let (negated, name) = match l.strip_prefix('-') {
        Some(n) => (true, n),
        None => (false, l),
    };
    if !ident_ok(name) {
        return Err(format!("bad literal {l:?}"));
    }
    let id = match gates.get(name) {
        Some(&g) => g,
        None => b.var(name),
    };
    Ok(if negated { b.not(id) } else { id })
}

fn nary(b: &mut Builder, op: &str, lits: &[NodeId]) -> Result<NodeId, String> {
    Ok(match op {
        "and" | "or" if lits.is_empty() => b.constant(op == "and"),
        "and" => lits[1..].iter().fold(lits[0], |acc, &x| b.and(acc, x)),
        "or" => lits[1..].iter().fold(lits[0], |acc, &x| b.or(acc, x)),
        "xor" if lits.is_empty() => b.constant(false),
        "xor" => lits[1..].iter().fold(lits[0], |acc, &x| {
            let nx = b.not(x);
            let na = b.not(acc);
            let l = b.and(acc, nx);
            let r = b.and(na, x);
            b.or(l, r)
        }),
        "ite" => {
            let [c, t, e] = lits else {
                return Err("ite takes three literals".into());
            };
            let nc = b.not(*c);
            let l = b.and(*c, *t);
            let r = b.and(nc, *e);
            b.or(l, r)
        }
        _ => unreachable!(),
    })
}
