use cli::{parse_assignment, parse_system, run_with, EXIT_FAIL, EXIT_OK, EXIT_USAGE};
use sequent::format::write_proof;
use sequent::golden::golden_proofs;
use sequent::SystemSpec;
use std::io::Write as _;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bafrag").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn classify_lists_classes() {
    let f = file("// sample\nx <= y\n\nEX y <= x. y + y = x\nALL z <= x. EX w <= z. w = z\n");
    let (code, out, _) = run(&["classify", path(&f)]);
    assert_eq!(code, EXIT_OK);
    let classes: Vec<&str> = out.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(classes.len(), 3);
    assert_eq!(classes[0], formula_core::QuantClass::B0.to_string());
    let (code, json, _) = run(&["classify", path(&f), "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);
    assert_eq!(v[2]["level"], 2);
}

#[test]
fn bad_formula_is_a_usage_error() {
    let f = file("x <= \n");
    let (code, _, err) = run(&["classify", path(&f)]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn unknown_subcommand_and_missing_file() {
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["classify", "/no/such/file"]).0, EXIT_USAGE);
    assert_eq!(run(&[]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn reduce_shipped_sample() {
    let (code, out, _) = run(&["reduce", "elim-pi-ind-a", "--width", "4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("Valid"));
    assert!(!out.contains("Counterexample"));
}

#[test]
fn reduce_from_file() {
    let f = file("ALL u <= x. u <= x + y\n");
    let (code, out, err) = run(&["reduce", "elim-pi-ind", path(&f), "--width", "4", "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{out}{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["width"], 4);
    assert!(v["obligations"].as_array().unwrap().iter().all(|o| o["status"] == "Valid"));
}

#[test]
fn reduce_wrong_class_and_unknown_case() {
    let f = file("EX u <= x. ALL w <= u. w <= y\n");
    assert_eq!(run(&["reduce", "elim-pi-ind", path(&f)]).0, EXIT_USAGE);
    assert_eq!(run(&["reduce", "no-such-case"]).0, EXIT_USAGE);
    let two = file("x <= y\ny <= x\n");
    assert_eq!(run(&["reduce", "dual-ind", path(&two)]).0, EXIT_USAGE);
}

#[test]
fn width_cap_is_enforced() {
    let (code, _, err) = run(&["reduce", "split-k1", "--width", "9"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("BAFRAG_MAX_WIDTH"), "{err}");
    let f = file("x <= y\n");
    assert_eq!(run(&["translate", path(&f), "-n", "9"]).0, EXIT_USAGE);
    assert_eq!(run(&["poset", "--kind", "R", "--max-level", "9"]).0, EXIT_USAGE);
}

#[test]
fn translate_exports() {
    let f = file("EX y <= x. y + y = x\n");
    let (code, qcir, _) = run(&["translate", path(&f), "-n", "3", "--export", "qcir"]);
    assert_eq!(code, EXIT_OK);
    assert!(qcir.starts_with("#QCIR-G14"), "{qcir}");
    let back = qprop::qcir::read_qcir(&qcir).unwrap();
    let (_, text, _) = run(&["translate", path(&f), "-n", "3"]);
    let q = qprop::parse_qprop(text.trim()).unwrap();
    // even inputs below 8 satisfy the formula
    for x in 0..8u64 {
        let a: qprop::Assignment =
            (0..3).map(|k| (qprop::bit_name("x", k), x >> k & 1 == 1)).collect();
        assert_eq!(qprop::qeval(&q, &a).unwrap(), x % 2 == 0);
        // QCIR names cannot contain dots
        let b: qprop::Assignment = a.iter().map(|(k, v)| (k.replace('.', "_"), *v)).collect();
        assert_eq!(qprop::qeval(&back, &b).unwrap(), x % 2 == 0);
    }
    let (code, dimacs, _) = run(&["translate", path(&f), "-n", "2", "--export", "qdimacs"]);
    assert_eq!(code, EXIT_OK);
    assert!(dimacs.lines().any(|l| l.starts_with("p cnf")));
}

#[test]
fn qeval_text_and_qcir() {
    let f = file("EX a. a & b\n");
    assert_eq!(run(&["qeval", path(&f), "--assign", "b=1"]).1.trim(), "true");
    assert_eq!(run(&["qeval", path(&f), "--assign", "b=0"]).1.trim(), "false");
    assert_eq!(run(&["qeval", path(&f)]).0, EXIT_USAGE);
    assert_eq!(run(&["qeval", path(&f), "--assign", "b=2"]).0, EXIT_USAGE);
    let qc = file(&qprop::qcir::write_qcir(&qprop::q("EX a. a & b")));
    assert_eq!(run(&["qeval", path(&qc), "--assign", "b=true"]).1.trim(), "true");
}

#[test]
fn proof_check_accepts_and_rejects() {
    let g = golden_proofs().into_iter().find(|g| g.id == "sigma-two-cut").unwrap();
    let f = file(&write_proof(&g.system, &g.steps));
    let (code, out, _) = run(&["proof-check", path(&f)]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("accept"));
    // the same proof needs Σq2 cuts
    let (code, out, _) = run(&["proof-check", path(&f), "--system", "G_1", "--format", "json"]);
    assert_eq!(code, EXIT_FAIL);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["reason"], "cut-class");
    let (code, _, _) = run(&["proof-check", path(&f), "--system", "G_0"]);
    assert_eq!(code, EXIT_FAIL);
    assert_eq!(run(&["proof-check", path(&f), "--system", "H_1"]).0, EXIT_USAGE);
    let junk = file("not json\n");
    assert_eq!(run(&["proof-check", path(&junk)]).0, EXIT_USAGE);
}

#[test]
fn system_names() {
    assert_eq!(parse_system("G_0").unwrap(), SystemSpec::g0());
    assert_eq!(parse_system("G2").unwrap(), SystemSpec::g(2));
    assert_eq!(parse_system("G*_1").unwrap(), SystemSpec::g_star(1));
    assert_eq!(
        parse_system("G_1+[x <= x + 1]").unwrap(),
        SystemSpec::g(1).with_xi("x <= x + 1")
    );
    for g in golden_proofs() {
        assert_eq!(parse_system(&g.system.name()).unwrap(), g.system);
    }
    assert!(parse_system("G_1+x").is_err());
    assert!(parse_system("F_1").is_err());
    assert_eq!(parse_assignment("p=1, q = 0").unwrap().len(), 2);
}

#[test]
fn poset_listings() {
    let (code, out, _) = run(&["poset", "--kind", "T", "--max-level", "4", "--critical-pairs", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let pairs = v["critical_pairs"].as_array().unwrap();
    // three at level 0, three for each of levels 1 and 2, one inside level 3
    assert_eq!(pairs.len(), 10);
    let (_, text, _) = run(&["poset", "--kind", "R", "--max-level", "4", "--critical-pairs"]);
    assert!(text.contains("subsumed by"), "{text}");
    let (_, dot, _) = run(&["poset", "--kind", "R", "--max-level", "4", "--dot"]);
    let frozen = include_str!("../../poset/golden/p_r-4.dot");
    assert_eq!(dot, frozen);
    assert_eq!(run(&["poset", "--kind", "R", "--max-level", "1"]).0, EXIT_USAGE);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["poset", "--kind", "R", "--max-level", "5", "--critical-pairs", "--all"]);
    let b = run(&["poset", "--kind", "R", "--max-level", "5", "--critical-pairs", "--all"]);
    assert_eq!(a, b);
    let a = run(&["corpus-verify", "--only", "2", "--seed", "11", "--no-times"]);
    let b = run(&["corpus-verify", "--only", "2", "--seed", "11", "--no-times"]);
    assert_eq!(a, b);
    assert_eq!(a.0, EXIT_OK, "{}", a.1);
    assert!(a.1.contains("seed 11"));
}

#[test]
fn corpus_verify_reports_per_criterion() {
    let (code, out, _) = run(&["corpus-verify", "--only", "1", "--only", "10", "--format", "json"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v["criteria"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["passed"] == true && r["seconds"].is_number()));
    assert_eq!(run(&["corpus-verify", "--only", "11"]).0, EXIT_USAGE);
}
