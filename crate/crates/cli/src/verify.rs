//! The acceptance suite behind `corpus-verify`: ten criteria, each checked
//! against the shipped goldens and independent oracles, with a time limit.

use formula_core::corpus::CORPUS;
use formula_core::gen::random_formula;
use formula_core::{classify, env_from, eval, oracle_class, parse, render, ClassKind, Formula};
use poset::{
    basis_gaps, build_poset, critical_pairs, level_dot, FragmentNode, FragmentPoset, Kind,
    PairTag,
};
use qprop::{bit_name, qclassify, qeval, translate, Assignment, QClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reductions::split::monotone_shape;
use reductions::{check_certificate, golden_cases, Codec, GoldenCase, ReductionCertificate};
use sequent::golden::golden_proofs;
use sequent::{check_proof, mutants, reflection_test, ProofStep, Rule, Verdict};
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

const FIGURE1: &str = include_str!("../../poset/golden/figure1-level2.dot");
const FIGURE2: &str = include_str!("../../poset/golden/figure2-level2.dot");

pub const COUNT: u32 = 10;

#[derive(Debug, Clone)]
pub struct Criterion {
    pub number: u32,
    pub name: &'static str,
    /// Failures found; empty when the checks passed.
    pub failures: Vec<String>,
    pub summary: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.elapsed < self.limit
    }

    pub fn line(&self, times: bool) -> String {
        let mark = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!("[{mark}] {:>2} {}: {}", self.number, self.name, self.summary);
        if times {
            s.push_str(&format!(
                " ({:.2}s, limit {}s)",
                self.elapsed.as_secs_f64(),
                self.limit.as_secs()
            ));
        } else if self.elapsed >= self.limit {
            s.push_str(&format!(" (over the {}s limit)", self.limit.as_secs()));
        }
        for f in self.failures.iter().take(5) {
            s.push_str(&format!("\n       {f}"));
        }
        if self.failures.len() > 5 {
            s.push_str(&format!("\n       ... {} more", self.failures.len() - 5));
        }
        s
    }

    pub fn to_json(&self, times: bool) -> serde_json::Value {
        let mut v = serde_json::json!({
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed(),
            "summary": self.summary,
            "failures": self.failures,
            "limitSeconds": self.limit.as_secs(),
        });
        if times {
            v["seconds"] = serde_json::json!(self.elapsed.as_secs_f64());
        }
        v
    }
}

/// Run criterion `number` (1..=10); `seed` drives the randomized parts.
pub fn criterion(number: u32, seed: u64) -> Criterion {
    let start = Instant::now();
    let (name, limit, (summary, failures)) = match number {
        1 => ("classifier", 1, classifier()),
        2 => ("parser round trip", 5, parser(seed)),
        3 => ("parameter elimination", 60, parameter_elimination()),
        4 => ("neighbouring classes", 120, neighbouring_classes()),
        5 => ("variant schemes", 60, variant_schemes()),
        6 => ("collapse", 60, collapse()),
        7 => ("splitting", 30, splitting()),
        8 => ("translation", 120, translation()),
        9 => ("proof checker", 60, proof_checker(seed)),
        10 => ("fragment posets", 30, posets()),
        _ => panic!("no criterion {number}"),
    };
    Criterion {
        number,
        name,
        failures,
        summary,
        elapsed: start.elapsed(),
        limit: Duration::from_secs(limit),
    }
}

pub fn corpus_verify(seed: u64) -> Vec<Criterion> {
    (1..=COUNT).map(|n| criterion(n, seed)).collect()
}

type Outcome = (String, Vec<String>);

fn classifier() -> Outcome {
    let mut fails = Vec::new();
    let mut levels = BTreeSet::new();
    for e in CORPUS.iter() {
        let g = match parse(e.text) {
            Ok(g) => g,
            Err(err) => {
                fails.push(format!("{}: {err}", e.id));
                continue;
            }
        };
        let c = classify(&g);
        levels.insert(c.level);
        if oracle_class(&g, 4) != Some(c) || c != e.class {
            fails.push(format!("{}: classified {c}, oracle {:?}", e.id, oracle_class(&g, 4)));
        }
    }
    if levels != BTreeSet::from([0, 1, 2, 3]) {
        fails.push(format!("corpus levels {levels:?} do not span 0..3"));
    }
    (format!("{} formulas, {} disagreements", CORPUS.len(), fails.len()), fails)
}

fn round_trips(g: &Formula) -> bool {
    parse(&render(g)).as_ref() == Ok(g)
}

fn parser(seed: u64) -> Outcome {
    let mut fails = Vec::new();
    for e in CORPUS.iter() {
        match parse(e.text) {
            Ok(g) if round_trips(&g) => {}
            _ => fails.push(format!("{}: no round trip", e.id)),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..1000 {
        let g = random_formula(&mut rng, 3);
        if !round_trips(&g) {
            fails.push(format!("random #{k}: {}", render(&g)));
        }
    }
    (format!("{} corpus + 1000 random, seed {seed}", CORPUS.len()), fails)
}

fn cases(pred: impl Fn(&str) -> bool) -> Vec<GoldenCase> {
    golden_cases().into_iter().filter(|c| pred(c.id)).collect()
}

fn build(c: &GoldenCase, fails: &mut Vec<String>) -> Option<ReductionCertificate> {
    match c.construction.build() {
        Ok(cert) => Some(cert),
        Err(e) => {
            fails.push(format!("{}: {e}", c.id));
            None
        }
    }
}

fn all_valid(id: &str, cert: &ReductionCertificate, width: u32, fails: &mut Vec<String>) {
    match check_certificate(cert, width) {
        Ok(r) if r.all_valid() => {}
        Ok(r) => fails.push(format!("{id}: {}", r.text().trim_end().replace('\n', "; "))),
        Err(e) => fails.push(format!("{id}: {e}")),
    }
}

fn parameter_elimination() -> Outcome {
    let mut fails = Vec::new();
    let all = cases(|id| id.starts_with("elim-"));
    for group in ["elim-sigma-ind-", "elim-pi-ind-", "elim-pi-pind-", "elim-sigma-pind-"] {
        let n = all.iter().filter(|c| c.id.starts_with(group)).count();
        if n < 3 {
            fails.push(format!("{group}: only {n} samples"));
        }
    }
    for c in &all {
        let width = if c.id.starts_with("elim-sigma-pind") { 4 } else { 5 };
        if let Some(cert) = build(c, &mut fails) {
            if cert.class_claims.is_empty() {
                fails.push(format!("{}: no class claims", c.id));
            }
            all_valid(c.id, &cert, width, &mut fails);
        }
    }
    (format!("{} certificates", all.len()), fails)
}

/// Valid at the case width, and every frozen mutation is caught.
fn with_mutations(ids: &[&str]) -> Outcome {
    let mut fails = Vec::new();
    let mut mutations = 0;
    let all = cases(|id| ids.contains(&id));
    if all.len() != ids.len() {
        fails.push(format!("expected {} cases, found {}", ids.len(), all.len()));
    }
    for c in &all {
        let Some(cert) = build(c, &mut fails) else { continue };
        all_valid(c.id, &cert, c.width, &mut fails);
        if c.mutations.len() < 3 {
            fails.push(format!("{}: {} mutations", c.id, c.mutations.len()));
        }
        for &m in &c.mutations {
            mutations += 1;
            match c.mutated(0, m) {
                Some(Ok(bad)) => match check_certificate(&bad, c.width) {
                    Ok(r) if r.counterexamples() > 0 => {}
                    _ => fails.push(format!("{}: mutation {m} survives", c.id)),
                },
                _ => fails.push(format!("{}: mutation {m} does not apply", c.id)),
            }
        }
    }
    (format!("{} certificates, {mutations} mutations caught", all.len()), fails)
}

fn neighbouring_classes() -> Outcome {
    with_mutations(&[
        "dual-ind",
        "dual-pind",
        "pi-unfold",
        "pind-via-ind-pi",
        "pind-via-ind-sigma",
        "interval-halving",
        "additivity",
        "nested-pi-merge",
    ])
}

fn variant_schemes() -> Outcome {
    let ids = [
        "base-from-rule0",
        "base-to-rule0",
        "length-pind-to-lind",
        "length-lind-to-pind",
        "length-lt-pi",
        "length-lt-sigma",
        "cov-ind",
        "cov-pind",
        "cov-recode",
        "res-pi",
        "res-sigma",
        "witness-sigma",
        "witness-b0",
        "min-as-ind",
        "min-rule",
    ];
    let mut fails = Vec::new();
    let all = cases(|id| ids.contains(&id));
    if all.len() != ids.len() {
        fails.push(format!("expected {} cases, found {}", ids.len(), all.len()));
    }
    for c in &all {
        if let Some(cert) = build(c, &mut fails) {
            all_valid(c.id, &cert, 5, &mut fails);
            if c.id == "cov-recode" {
                // the pairing side conditions alone, operands below 16
                let side: Vec<_> = cert
                    .obligations
                    .iter()
                    .filter(|o| o.label.starts_with("side"))
                    .cloned()
                    .collect();
                if side.len() != 2 {
                    fails.push(format!("cov-recode: {} side conditions", side.len()));
                }
                let only = ReductionCertificate {
                    obligations: side,
                    class_claims: vec![],
                    ..cert
                };
                all_valid("pairing side conditions", &only, 4, &mut fails);
            }
        }
    }
    (format!("{} certificates at width 5, pairing below 16", all.len()), fails)
}

fn tuples(k: usize, below: u64) -> Vec<Vec<u64>> {
    (0..below.pow(k as u32))
        .map(|mut n| {
            let mut v = vec![0; k];
            for slot in v.iter_mut().rev() {
                *slot = n % below;
                n /= below;
            }
            v
        })
        .collect()
}

fn collapse() -> Outcome {
    let mut fails = Vec::new();
    let mut codes = 0u64;
    for pind in [false, true] {
        for k in 1..=3 {
            let codec = Codec { k, c: 1, pind };
            for x in 0..8u64 {
                let d = codec.digit_bits(x);
                for tup in tuples(k, 1 << d) {
                    codes += 1;
                    let y = codec.encode(x, &tup);
                    if y >= codec.limit(x) || codec.decode(x, y).as_ref() != Some(&tup) {
                        fails.push(format!("k={k} pind={pind} x={x}: {tup:?}"));
                    }
                }
                for y in 0..codec.limit(x).min(1 << 16) {
                    match codec.decode(x, y) {
                        Some(tup) if codec.encode(x, &tup) != y => {
                            fails.push(format!("k={k} pind={pind} x={x}: code {y}"))
                        }
                        None if !pind => fails.push(format!("k={k} x={x}: {y} undecodable")),
                        _ => {}
                    }
                }
            }
        }
    }
    let all = cases(|id| id == "collapse-ind-k2" || id == "collapse-pind-k2");
    for c in &all {
        if let Some(cert) = build(c, &mut fails) {
            all_valid(c.id, &cert, 4, &mut fails);
        }
    }
    (format!("{codes} tuples round-trip, {} k=2 instances", all.len()), fails)
}

fn splitting() -> Outcome {
    let mut fails = Vec::new();
    let all = cases(|id| id.starts_with("split-k"));
    for c in &all {
        if let Some(cert) = build(c, &mut fails) {
            all_valid(c.id, &cert, 4, &mut fails);
            if !monotone_shape(&cert) {
                fails.push(format!("{}: not monotone", c.id));
            }
        }
    }
    if all.len() != 3 {
        fails.push(format!("expected 3 instances, found {}", all.len()));
    }
    (format!("k = 1..{} at width 4", all.len()), fails)
}

fn truth_agrees(g: &Formula, n: u32) -> Result<(), String> {
    let q = translate(g, n).map_err(|e| e.to_string())?;
    let vars: Vec<String> = g.free_vars().into_iter().collect();
    if vars.len() > 2 {
        return Err(format!("{} free variables", vars.len()));
    }
    for code in 0..1u64 << (n as usize * vars.len()) {
        let mut a = Assignment::new();
        let mut pairs = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            let x = code >> (i as u32 * n) & ((1 << n) - 1);
            for k in 0..n {
                a.insert(bit_name(v, k), x >> k & 1 == 1);
            }
            pairs.push((v.as_str(), x));
        }
        let want = eval(g, &env_from(&pairs)).map_err(|e| e.to_string())?;
        if qeval(&q, &a).map_err(|e| e.to_string())? != want {
            return Err(format!("n={n} at {pairs:?}"));
        }
    }
    Ok(())
}

fn translation() -> Outcome {
    let mut fails = Vec::new();
    for e in CORPUS.iter() {
        let g = formula_core::f(e.text);
        for n in 1..=3 {
            if let Err(m) = truth_agrees(&g, n) {
                fails.push(format!("{}: {m}", e.id));
            }
        }
        let c = classify(&g);
        for n in 1..=8 {
            let qc = match translate(&g, n) {
                Ok(q) => qclassify(&q),
                Err(err) => {
                    fails.push(format!("{} n={n}: {err}", e.id));
                    continue;
                }
            };
            let ok = match c.kind {
                ClassKind::SigmaHatB0 => qc == QClass::QF,
                ClassKind::SigmaHat => qc.within(true, c.level),
                ClassKind::PiHat => qc.within(false, c.level),
                ClassKind::NonStrict => false,
            };
            if !ok {
                fails.push(format!("{} n={n}: {c} translated to {qc}", e.id));
            }
        }
    }
    (format!("{} formulas, truth n<=3, class n<=8", CORPUS.len()), fails)
}

fn free_vars(p: &[ProofStep]) -> Vec<String> {
    let ext: BTreeSet<&String> = p
        .iter()
        .filter_map(|s| match &s.rule {
            Rule::Extension { var, .. } => Some(var),
            _ => None,
        })
        .collect();
    let vs: BTreeSet<String> = p.iter().flat_map(|s| s.conclusion.free_vars()).collect();
    vs.into_iter().filter(|v| !ext.contains(v)).collect()
}

fn proof_checker(seed: u64) -> Outcome {
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut total, mut systems) = (0, BTreeSet::new());
    let proofs = golden_proofs();
    for g in &proofs {
        systems.insert(g.system.name());
        if let Verdict::Reject { step, reason, .. } = check_proof(&g.steps, &g.system) {
            fails.push(format!("{}: rejected at step {step}: {reason}", g.id));
            continue;
        }
        for m in mutants(&g.steps, &g.system) {
            total += 1;
            match check_proof(&m.steps, &g.system) {
                Verdict::Reject { reason, .. } if reason == m.expected => {}
                v => fails.push(format!("{}: {} gave {v:?}", g.id, m.label)),
            }
        }
        let vars = free_vars(&g.steps);
        let assignments: Vec<Assignment> = if vars.len() <= 10 {
            (0u32..1 << vars.len())
                .map(|b| vars.iter().enumerate().map(|(k, v)| (v.clone(), b >> k & 1 == 1)).collect())
                .collect()
        } else {
            (0..100).map(|_| vars.iter().map(|v| (v.clone(), rng.gen())).collect()).collect()
        };
        for a in &assignments {
            if reflection_test(&g.steps, &g.system, a) != Ok(true) {
                fails.push(format!("{}: reflection fails under {a:?}", g.id));
                break;
            }
        }
    }
    if total < 50 {
        fails.push(format!("only {total} mutants"));
    }
    let summary = format!(
        "{} proofs over {} systems, {total} mutants rejected",
        proofs.len(),
        systems.len()
    );
    (summary, fails)
}

fn n(s: &str) -> FragmentNode {
    s.parse().expect("node name")
}

fn common_families(max: u32) -> BTreeSet<(FragmentNode, FragmentNode)> {
    let mut out = BTreeSet::from([
        (n("Sigma0-IND"), n("Pi1-IND^-")),
        (n("Sigma0-IND^-"), n("Pi1-IND^R")),
        (n("Sigma0-IND^R"), FragmentNode::Base),
    ]);
    for i in 1..max {
        let j = i + 1;
        for (a, b) in [
            (format!("Sigma{i}-PIND"), format!("Pi{j}-IND^-")),
            (format!("Pi{i}-PIND^-"), format!("Pi{j}-IND^R")),
            (format!("Pi{i}-IND^R"), format!("Sigma{i}-PIND")),
        ] {
            let (a, b) = (n(&a), n(&b));
            if a.level().max(b.level()) < max {
                out.insert((a, b));
            }
        }
    }
    out
}

fn line_set(s: &str) -> BTreeSet<String> {
    s.lines().map(str::to_string).collect()
}

fn check_poset(p: &FragmentPoset, fails: &mut Vec<String>) {
    let tag = format!("P_{:?}", p.kind);
    let pairs = critical_pairs(p, true);
    let with = |t: PairTag| -> BTreeSet<_> {
        pairs.iter().filter(|c| c.tag == t).map(|c| (c.a, c.b)).collect()
    };
    if with(PairTag::Interior) != common_families(p.max_level) {
        fails.push(format!("{tag}: interior pairs differ from the six families"));
    }
    let extra: BTreeSet<_> = (0..p.max_level - 1)
        .map(|i| (n(&format!("Pi{}-PIND^R", i + 1)), n(&format!("Sigma{i}-IND"))))
        .collect();
    let subsumed = with(PairTag::Subsumed);
    match p.kind {
        Kind::R if subsumed != extra => fails.push(format!("{tag}: extra family not subsumed")),
        Kind::T if !subsumed.is_empty() => fails.push(format!("{tag}: unexpected subsumed pairs")),
        _ => {}
    }
    if !basis_gaps(p).is_empty() {
        fails.push(format!("{tag}: basis gaps {:?}", basis_gaps(p)));
    }
    let figure = if p.kind == Kind::R { FIGURE1 } else { FIGURE2 };
    for level in 1..p.max_level {
        let shifted = figure
            .replace("2-", &format!("{level}-"))
            .replace("level2", &format!("level{level}"));
        if line_set(&level_dot(p, level)) != line_set(&shifted) {
            fails.push(format!("{tag}: level {level} panel differs from the figure"));
        }
    }
    match p.non_lattice_witness() {
        Some(w) => {
            let (u, v) = w.bounds;
            let minimal = |c| {
                p.leq(w.a, c)
                    && p.leq(w.b, c)
                    && !p.upper_bounds(w.a, w.b).iter().any(|&d| p.lt(d, c))
            };
            if !(minimal(u) && minimal(v) && !p.leq(u, v) && !p.leq(v, u)) {
                fails.push(format!("{tag}: bad witness {} {}", w.a, w.b));
            }
        }
        None => fails.push(format!("{tag}: no non-lattice witness")),
    }
}

fn posets() -> Outcome {
    let mut fails = Vec::new();
    let mut sizes = Vec::new();
    for kind in [Kind::R, Kind::T] {
        match build_poset(kind, 5) {
            Ok(p) => {
                sizes.push(p.nodes.len());
                check_poset(&p, &mut fails);
            }
            Err(e) => fails.push(e.to_string()),
        }
    }
    (format!("max level 5, node counts {sizes:?}"), fails)
}
