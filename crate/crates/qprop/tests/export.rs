use proptest::prelude::*;
use qprop::qcir::{read_qcir, write_qcir};
use qprop::qdimacs::write_qdimacs;
use qprop::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

const NAMES: [&str; 5] = ["p", "q", "r", "s", "t"];

fn gen(b: &mut Builder, rng: &mut ChaCha8Rng, depth: u32, scope: &mut Vec<&'static str>) -> NodeId {
    if depth == 0 || rng.gen_ratio(1, 6) {
        return if !scope.is_empty() && rng.gen_ratio(9, 10) {
            let v = scope[rng.gen_range(0..scope.len())];
            b.var(v)
        } else {
            b.constant(rng.gen())
        };
    }
    match rng.gen_range(0..5) {
        0 => {
            let a = gen(b, rng, depth - 1, scope);
            b.not(a)
        }
        1 | 2 => {
            let x = gen(b, rng, depth - 1, scope);
            let y = gen(b, rng, depth - 1, scope);
            if rng.gen() {
                b.and(x, y)
            } else {
                b.or(x, y)
            }
        }
        _ => {
            let free: Vec<&str> = NAMES.iter().copied().filter(|v| !scope.contains(v)).collect();
            if free.is_empty() {
                return gen(b, rng, depth - 1, scope);
            }
            let v = free[rng.gen_range(0..free.len())];
            scope.push(v);
            let body = gen(b, rng, depth - 1, scope);
            scope.pop();
            if rng.gen() {
                b.exists(v, body)
            } else {
                b.forall(v, body)
            }
        }
    }
}

/// Closed formulas, each starting with a quantifier.
fn closed(seed: u64) -> QProp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new();
    let mut scope = vec!["p"];
    let body = gen(&mut b, &mut rng, 6, &mut scope);
    let r = if rng.gen() { b.exists("p", body) } else { b.forall("p", body) };
    b.finish(r)
}

fn open(seed: u64) -> QProp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::new();
    let mut scope = vec!["a", "b"];
    let r = gen(&mut b, &mut rng, 5, &mut scope);
    b.finish(r)
}

struct Qdimacs {
    prefix: Vec<(i64, bool)>,
    clauses: Vec<Vec<i64>>,
}

fn parse_qdimacs(s: &str) -> Qdimacs {
    let mut prefix = Vec::new();
    let mut clauses = Vec::new();
    let mut header = None;
    for line in s.lines() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.first() {
            Some(&"c") | None => {}
            Some(&"p") => {
                assert_eq!(toks[1], "cnf");
                header = Some((toks[2].parse::<i64>().unwrap(), toks[3].parse::<usize>().unwrap()));
            }
            Some(&k) if k == "e" || k == "a" => {
                assert_eq!(toks.last(), Some(&"0"));
                for v in &toks[1..toks.len() - 1] {
                    prefix.push((v.parse().unwrap(), k == "e"));
                }
            }
            _ => {
                let lits: Vec<i64> = toks.iter().map(|t| t.parse().unwrap()).collect();
                assert_eq!(lits.last(), Some(&0));
                clauses.push(lits[..lits.len() - 1].to_vec());
            }
        }
    }
    let (vars, n) = header.expect("missing p line");
    assert_eq!(n, clauses.len());
    let mut seen: Vec<i64> = prefix.iter().map(|p| p.0).collect();
    seen.sort();
    assert_eq!(seen, (1..=vars).collect::<Vec<_>>(), "every variable quantified once");
    Qdimacs { prefix, clauses }
}

fn value(l: i64, a: &HashMap<i64, bool>) -> Option<bool> {
    a.get(&l.abs()).map(|&v| v == (l > 0))
}

fn dpll(clauses: &[Vec<i64>], a: &mut HashMap<i64, bool>) -> bool {
    let mut trail = Vec::new();
    let ok = loop {
        let mut unit = None;
        let mut open = None;
        let mut conflict = false;
        for c in clauses {
            if c.iter().any(|&l| value(l, a) == Some(true)) {
                continue;
            }
            let free: Vec<i64> = c.iter().copied().filter(|&l| value(l, a).is_none()).collect();
            match free.len() {
                0 => {
                    conflict = true;
                    break;
                }
                1 => unit = Some(free[0]),
                _ => open = open.or(Some(free[0])),
            }
        }
        if conflict {
            break false;
        }
        if let Some(l) = unit {
            a.insert(l.abs(), l > 0);
            trail.push(l.abs());
            continue;
        }
        let Some(l) = open else { break true };
        let v = l.abs();
        let mut found = false;
        for val in [true, false] {
            a.insert(v, val);
            if dpll(clauses, a) {
                found = true;
                break;
            }
        }
        a.remove(&v);
        break found;
    };
    for v in trail {
        a.remove(&v);
    }
    ok
}

fn solve(q: &Qdimacs, i: usize, a: &mut HashMap<i64, bool>) -> bool {
    if q.prefix[i..].iter().all(|p| p.1) {
        return dpll(&q.clauses, a);
    }
    let (v, ex) = q.prefix[i];
    let mut r = !ex;
    for val in [false, true] {
        a.insert(v, val);
        let x = solve(q, i + 1, a);
        a.remove(&v);
        if x == ex {
            r = ex;
            break;
        }
    }
    r
}

#[test]
fn qcir_round_trip_on_random_closed_instances() {
    let none = Assignment::new();
    let mut truths = [0; 2];
    for seed in 0..50 {
        let q = closed(seed);
        let text = write_qcir(&q);
        let back = read_qcir(&text).unwrap_or_else(|e| panic!("seed {seed}: {e}\n{text}"));
        let want = qeval(&q, &none).unwrap();
        assert_eq!(qeval(&back, &none).unwrap(), want, "seed {seed}\n{text}");
        truths[want as usize] += 1;
    }
    assert!(truths[0] > 5 && truths[1] > 5, "{truths:?}");
}

#[test]
fn qcir_keeps_free_variables() {
    for seed in 0..20 {
        let q = open(seed);
        let back = read_qcir(&write_qcir(&q)).unwrap();
        assert_eq!(back.free_vars(), q.free_vars());
        for (x, y) in [(false, false), (false, true), (true, false), (true, true)] {
            let a = Assignment::from([("a".into(), x), ("b".into(), y)]);
            let a: Assignment = a.into_iter().filter(|(k, _)| q.free_vars().contains(k)).collect();
            assert_eq!(qeval(&back, &a), qeval(&q, &a), "seed {seed}");
        }
    }
}

#[test]
fn qcir_of_a_translation_reads_back() {
    let g = formula_core::f("EX z <= x. ALL w <= z. w <= x");
    let q = translate(&g, 2).unwrap();
    let text = write_qcir(&q);
    assert!(text.starts_with("#QCIR-G14\nfree(v_x_0, v_x_1)\n"));
    let back = read_qcir(&text).unwrap();
    for x in 0..4u32 {
        let a = Assignment::from([("v_x_0".into(), x & 1 == 1), ("v_x_1".into(), x & 2 == 2)]);
        assert!(qeval(&back, &a).unwrap());
    }
}

#[test]
fn qdimacs_is_equisatisfiable_on_random_closed_instances() {
    let none = Assignment::new();
    for seed in 0..50 {
        let q = closed(seed);
        let text = write_qdimacs(&q);
        let parsed = parse_qdimacs(&text);
        let got = solve(&parsed, 0, &mut HashMap::new());
        assert_eq!(got, qeval(&q, &none).unwrap(), "seed {seed}\n{text}");
    }
}

#[test]
fn qdimacs_header_flags_equisatisfiability() {
    let text = write_qdimacs(&q("EX p. ALL r. p | ~r"));
    assert!(text.lines().next().unwrap().contains("equisatisfiable"));
    let parsed = parse_qdimacs(&text);
    assert!(solve(&parsed, 0, &mut HashMap::new()));
    let text = write_qdimacs(&q("ALL p. EX r. ~(p | r)"));
    assert!(!solve(&parse_qdimacs(&text), 0, &mut HashMap::new()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn negation_dualizes_the_class(seed in 0u64..10_000) {
        let f = if seed % 2 == 0 { closed(seed) } else { open(seed) };
        let c = qclassify(&f);
        let n = qclassify(&f.not());
        let (s, p) = qlevels(&f);
        prop_assert_eq!(qlevels(&f.not()), (p, s));
        if s != p {
            prop_assert_eq!(n, c.dual());
        }
        prop_assert_eq!(c.level == 0, c == QClass::QF);
    }

    #[test]
    fn text_round_trip(seed in 0u64..10_000) {
        let f = open(seed);
        let back = parse_qprop(&render_qprop(&f)).unwrap();
        prop_assert_eq!(back, f);
    }
}
