//! Cross-check QDIMACS exports against an external QBF solver. Skipped unless
//! QDIMACS_SOLVER names a solver command that reads a file argument and exits
//! with 10 (true) or 20 (false), e.g. `QDIMACS_SOLVER=depqbf`.

use formula_core::corpus::CORPUS;
use formula_core::f;
use qprop::qdimacs::write_qdimacs;
use qprop::{qeval, translate, Assignment};
use std::process::Command;

/// The export closes free variables existentially, so compare with that.
fn exists_free(q: &qprop::QProp) -> bool {
    let vars: Vec<String> = q.free_vars().into_iter().collect();
    (0u64..1 << vars.len()).any(|m| {
        let a: Assignment = vars.iter().enumerate().map(|(k, v)| (v.clone(), m >> k & 1 == 1)).collect();
        qeval(q, &a).unwrap()
    })
}

#[test]
fn external_solver_agrees() {
    let Ok(solver) = std::env::var("QDIMACS_SOLVER") else {
        eprintln!("QDIMACS_SOLVER not set; skipping external solver check");
        return;
    };
    let dir = std::env::temp_dir().join(format!("qprop-solver-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for e in CORPUS.iter() {
        for n in 1..=2 {
            let q = translate(&f(e.text), n).unwrap();
            let path = dir.join(format!("{}-{n}.qdimacs", e.id));
            std::fs::write(&path, write_qdimacs(&q)).unwrap();
            let status = Command::new(&solver).arg(&path).status().expect("solver runs");
            let got = match status.code() {
                Some(10) => true,
                Some(20) => false,
                other => panic!("{}: solver exit {other:?}", e.id),
            };
            assert_eq!(got, exists_free(&q), "{} at n={n}", e.id);
        }
    }
    std::fs::remove_dir_all(&dir).ok();
}
