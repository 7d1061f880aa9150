use formula_core::corpus::CORPUS;
use formula_core::{classify, env_from, eval, f, ClassKind};
use qprop::*;
use std::time::Instant;

fn bits(var: &str, v: u64, n: u32, a: &mut Assignment) {
    for k in 0..n {
        a.insert(bit_name(var, k), v >> k & 1 == 1);
    }
}

/// Compare against `eval` on every assignment of the free variables below 2^n.
fn agrees(text: &str, n: u32) {
    let g = f(text);
    let q = translate(&g, n).unwrap();
    let vars: Vec<String> = g.free_vars().into_iter().collect();
    assert!(vars.len() <= 2);
    let total = 1u64 << (n as usize * vars.len());
    for code in 0..total {
        let vals: Vec<u64> = (0..vars.len())
            .map(|i| code >> (i as u32 * n) & ((1 << n) - 1))
            .collect();
        let mut a = Assignment::new();
        let mut pairs = Vec::new();
        for (v, &x) in vars.iter().zip(&vals) {
            bits(v, x, n, &mut a);
            pairs.push((v.as_str(), x));
        }
        let want = eval(&g, &env_from(&pairs)).unwrap();
        assert_eq!(qeval(&q, &a).unwrap(), want, "{text} at n={n}, {pairs:?}");
    }
}

#[test]
fn zero_test_is_the_all_zero_assignment() {
    let q = translate(&f("x = 0"), 2).unwrap();
    assert_eq!(qclassify(&q), QClass::QF);
    for v in 0..4 {
        let mut a = Assignment::new();
        bits("x", v, 2, &mut a);
        assert_eq!(qeval(&q, &a).unwrap(), v == 0);
    }
}

#[test]
fn halving_exhaustive_at_three_bits() {
    agrees("EX y <= x. y + y = x", 3);
}

#[test]
fn every_term_former_matches_eval() {
    for text in [
        "x * y = y + 1",
        "x # y <= x + y",
        "x monus y = half(y)",
        "len(x) = len(y)",
        "div2(x, y) = mod2(y, x)",
        "pair(x, y) = x + y",
        "left(x) = right(y)",
        "seq(x, y) = 1",
        "slice(x, y, len(x)) = y",
        "cond(x, y, x + 1) = y",
    ] {
        for n in 1..=3 {
            agrees(text, n);
        }
    }
}

#[test]
fn corpus_truth_correspondence() {
    let start = Instant::now();
    for e in CORPUS.iter() {
        for n in 1..=3 {
            agrees(e.text, n);
        }
    }
    eprintln!("truth correspondence: {:?}", start.elapsed());
}

#[test]
fn corpus_class_correspondence() {
    for e in CORPUS.iter() {
        let g = f(e.text);
        let c = classify(&g);
        for n in 1..=8 {
            let qc = qclassify(&translate(&g, n).unwrap());
            let ok = match c.kind {
                ClassKind::SigmaHatB0 => qc == QClass::QF,
                ClassKind::SigmaHat => qc.within(true, c.level),
                ClassKind::PiHat => qc.within(false, c.level),
                ClassKind::NonStrict => false,
            };
            assert!(ok, "{} at n={n}: {c} vs {qc}", e.id);
        }
    }
}

#[test]
fn bit_variables_are_lsb_first() {
    let q = translate(&f("x <= y"), 3).unwrap();
    let names: Vec<String> = q.free_vars().into_iter().collect();
    assert_eq!(names, ["v.x.0", "v.x.1", "v.x.2", "v.y.0", "v.y.1", "v.y.2"]);
    assert!(names.iter().all(|v| provenance(v).is_some()));
    let mut a = Assignment::new();
    bits("x", 1, 3, &mut a);
    bits("y", 4, 3, &mut a);
    assert!(qeval(&q, &a).unwrap());
}

#[test]
fn bound_blocks_get_fresh_names() {
    let q = translate(&f("EX x <= x. x = x"), 2).unwrap();
    let text = render_qprop(&q);
    assert!(text.starts_with("EX v.x1.0. EX v.x1.1."), "{text}");
}

#[test]
fn refuses_bad_input() {
    assert_eq!(
        translate(&f("EX y <= x. ALL z <= y. z <= y | EX w <= x. w = z"), 2).unwrap_err(),
        TranslateError::NonStrict
    );
    assert_eq!(
        translate(&f("x = 0"), 9).unwrap_err(),
        TranslateError::Width { n: 9, cap: 8 }
    );
    assert_eq!(
        translate(&f("x = 0"), 0).unwrap_err(),
        TranslateError::Width { n: 0, cap: 8 }
    );
    assert!(translate_with_cap(&f("x = 0"), 12, 16).is_ok());
}

/// Coefficient of determination of the least-squares polynomial of degree
/// `d` through `(n, sizes[n - 1])`, n = 1..=8.
fn poly_fit(sizes: &[usize], d: usize) -> f64 {
    let k = d + 1;
    let mut m = vec![vec![0.0f64; k + 1]; k];
    for (i, &y) in sizes.iter().enumerate() {
        let x = (i + 1) as f64;
        for r in 0..k {
            for c in 0..k {
                m[r][c] += x.powi((r + c) as i32);
            }
            m[r][k] += x.powi(r as i32) * y as f64;
        }
    }
    for col in 0..k {
        let piv = (col..k).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        m.swap(col, piv);
        for r in 0..k {
            if r != col {
                let q = m[r][col] / m[col][col];
                for c in col..=k {
                    m[r][c] -= q * m[col][c];
                }
            }
        }
    }
    let coef: Vec<f64> = (0..k).map(|r| m[r][k] / m[r][r]).collect();
    let mean = sizes.iter().sum::<usize>() as f64 / sizes.len() as f64;
    let (mut res, mut tot) = (0.0, 0.0);
    for (i, &y) in sizes.iter().enumerate() {
        let x = (i + 1) as f64;
        let fit: f64 = coef.iter().enumerate().map(|(p, c)| c * x.powi(p as i32)).sum();
        res += (y as f64 - fit).powi(2);
        tot += (y as f64 - mean).powi(2);
    }
    1.0 - res / tot
}

#[test]
fn sizes_grow_polynomially() {
    let kinds: [(&str, &str, u32); 17] = [
        ("eq", "x = y", 1),
        ("le", "x <= y", 1),
        ("add", "x + y = y", 1),
        ("monus", "x monus y = y", 1),
        ("half", "half(x) = y", 1),
        ("len", "len(x) = y", 1),
        ("cond", "cond(x, y, x) = y", 1),
        ("block", "EX z <= x. z = y", 1),
        ("mul", "x * y = y", 2),
        ("smash", "x # y = y", 2),
        ("div2", "div2(x, y) = y", 2),
        ("mod2", "mod2(x, y) = y", 2),
        ("pair", "pair(x, y) = y", 2),
        ("slice", "slice(x, y, y) = y", 2),
        ("left", "left(x) = y", 3),
        ("right", "right(x) = y", 3),
        ("seq", "seq(x, y) = y", 3),
    ];
    for (kind, text, d) in kinds {
        let sizes: Vec<usize> = (1..=8)
            .map(|n| translate(&f(text), n).unwrap().size())
            .collect();
        // the square-root stage of unpairing grows every other bit
        let floor = if d == 3 { 0.95 } else { 0.99 };
        let r2 = poly_fit(&sizes, d as usize);
        assert!(r2 >= floor, "{kind}: degree {d} fit R² {r2:.4}, sizes {sizes:?}");
    }
}
