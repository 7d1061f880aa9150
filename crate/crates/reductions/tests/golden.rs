use reductions::{check_certificate, golden_cases, ReductionCertificate, Status};

#[test]
fn every_golden_certificate_checks() {
    let cases = golden_cases();
    assert!(cases.len() >= 40);
    for c in &cases {
        let cert = c.construction.build().unwrap_or_else(|e| panic!("{}: {e}", c.id));
        let r = check_certificate(&cert, c.width).unwrap();
        assert!(r.all_valid(), "{}\n{}", c.id, r.text());
        assert!(r.claims.iter().all(|k| k.holds), "{}\n{}", c.id, r.text());
    }
}

#[test]
fn frozen_mutations_are_rejected() {
    for c in golden_cases() {
        assert!(c.mutations.len() >= 3, "{}", c.id);
        for &m in &c.mutations {
            let cert = c
                .mutated(0, m)
                .unwrap_or_else(|| panic!("{}: {m} does not apply", c.id))
                .unwrap_or_else(|e| panic!("{}: {m}: {e}", c.id));
            let r = check_certificate(&cert, c.width).unwrap();
            assert!(r.counterexamples() > 0, "{}: {m} survives", c.id);
        }
    }
}

#[test]
fn golden_json_round_trips() {
    for c in golden_cases() {
        let cert = c.construction.build().unwrap();
        let back = ReductionCertificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(back, cert, "{}", c.id);
    }
}

#[test]
fn golden_ids_are_unique() {
    let mut ids: Vec<_> = golden_cases().iter().map(|c| c.id).collect();
    let n = ids.len();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), n);
}

#[test]
fn vacuous_flag_is_reported() {
    let c = golden_cases().into_iter().find(|c| c.id == "elim-sigma-ind-a").unwrap();
    let r = check_certificate(&c.construction.build().unwrap(), c.width).unwrap();
    let step = r.obligations.iter().find(|o| o.label == "step").unwrap();
    assert_eq!(step.status, Status::Valid { vacuous: true });
    let concl = r.obligations.iter().find(|o| o.label == "conclusion").unwrap();
    assert_eq!(concl.status, Status::Valid { vacuous: false });
}
