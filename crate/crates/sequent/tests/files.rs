use sequent::format::{read_proof, write_proof};
use sequent::golden::golden_proofs;
use sequent::*;
use std::path::PathBuf;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden")
}

#[test]
fn golden_files_match_the_built_proofs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for g in golden_proofs() {
        let path = golden_dir().join(format!("{}.jsonl", g.id));
        let text = write_proof(&g.system, &g.steps);
        if update {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        let stored = std::fs::read_to_string(&path).unwrap();
        assert_eq!(stored, text, "{}", path.display());
        let (sys, steps) = read_proof(&stored).unwrap();
        assert_eq!(sys, g.system);
        assert_eq!(steps, g.steps);
        assert!(check_proof(&steps, &sys).is_accept());
    }
}

#[test]
fn mutants_survive_the_round_trip() {
    for g in golden_proofs() {
        for m in mutants(&g.steps, &g.system) {
            let (sys, steps) = read_proof(&write_proof(&g.system, &m.steps)).unwrap();
            assert_eq!(steps, m.steps);
            assert_eq!(check_proof(&steps, &sys).reason(), Some(m.expected));
        }
    }
}

#[test]
fn header_and_step_shape() {
    let g = &golden_proofs()[0];
    let text = write_proof(&g.system, &g.steps);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), r#"{"system":{"base":"G","level":1,"tree_like":false}}"#);
    assert_eq!(
        lines.next().unwrap(),
        r#"{"conclusion":{"ante":["p"],"succ":["p"]},"rule":"axiom-id","premises":[]}"#
    );
    assert!(read_proof("").is_err());
    let err = read_proof("{\"system\":{\"base\":\"G\",\"level\":1,\"tree_like\":false}}\n{oops}\n")
        .unwrap_err();
    assert!(err.to_string().starts_with("line 2"), "{err}");
}
