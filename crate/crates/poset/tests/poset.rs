use poset::*;
use proptest::prelude::*;
use std::collections::BTreeSet;
use std::path::PathBuf;

fn n(s: &str) -> FragmentNode {
    s.parse().unwrap()
}

/// Node list recounted from the definition: for each i ≥ 0, Σi-IND, Σi-IND⁻,
/// Σi-INDᴿ, Πi+1-IND⁻, Πi+1-INDᴿ and the five PIND variants at level i+1.
fn listed_nodes(max: u32) -> BTreeSet<FragmentNode> {
    let mut out = BTreeSet::from([FragmentNode::Base]);
    for i in 0..=max {
        let j = i + 1;
        for s in [
            format!("Sigma{i}-IND"),
            format!("Sigma{i}-IND^-"),
            format!("Sigma{i}-IND^R"),
            format!("Pi{j}-IND^-"),
            format!("Pi{j}-IND^R"),
            format!("Sigma{j}-PIND"),
            format!("Sigma{j}-PIND^-"),
            format!("Sigma{j}-PIND^R"),
            format!("Pi{j}-PIND^-"),
            format!("Pi{j}-PIND^R"),
        ] {
            let node = n(&s);
            if node.level() <= max {
                out.insert(node);
            }
        }
    }
    out
}

#[test]
fn small_truncations_are_refused() {
    assert_eq!(build_poset(Kind::R, 1).unwrap_err(), PosetError::MaxLevel(1));
}

#[test]
fn node_sets() {
    for max in 2..=6 {
        let r = build_poset(Kind::R, max).unwrap();
        let listed = listed_nodes(max);
        assert_eq!(r.nodes.iter().copied().collect::<BTreeSet<_>>(), listed);
        assert_eq!(r.nodes.len() as u32, 1 + 3 + 10 * max);
        for level in 1..=max {
            assert_eq!(r.nodes.iter().filter(|x| x.level() == level).count(), 10);
        }
        let t = build_poset(Kind::T, max).unwrap();
        assert_eq!(t.nodes.len() as u32, 1 + 3 + 8 * max);
    }
    // identifications at construction
    assert_eq!(n("Pi0-IND^R"), n("Sigma0-IND^R"));
    assert_eq!(n("Pi3-IND"), n("Sigma3-IND"));
    assert_eq!(n("Sigma0-PIND^-"), FragmentNode::Base);
    assert!("Delta1-IND".parse::<FragmentNode>().is_err());
}

#[test]
fn names_round_trip() {
    let p = build_poset(Kind::R, 4).unwrap();
    for &x in &p.nodes {
        assert_eq!(n(&x.to_string()), x);
    }
}

#[test]
fn order_is_a_partial_order_with_least_base() {
    for kind in [Kind::R, Kind::T] {
        let p = build_poset(kind, 5).unwrap();
        for &a in &p.nodes {
            assert!(p.leq(a, a));
            assert!(p.leq(FragmentNode::Base, a));
            for &b in &p.nodes {
                if a != b && p.leq(a, b) {
                    assert!(!p.leq(b, a), "{a} {b}");
                }
                for &c in &p.nodes {
                    if p.leq(a, b) && p.leq(b, c) {
                        assert!(p.leq(a, c));
                    }
                }
            }
        }
    }
}

#[test]
fn every_strict_inequality_has_a_derivation() {
    for kind in [Kind::R, Kind::T] {
        let p = build_poset(kind, 4).unwrap();
        for &a in &p.nodes {
            for &b in &p.nodes {
                let d = p.derivation(a, b);
                if p.lt(a, b) {
                    let d = d.unwrap_or_else(|| panic!("{a} < {b} without derivation"));
                    assert!(!d.is_empty());
                    assert_eq!(p.canonical(d[0].from), Some(a));
                    assert_eq!(p.canonical(d[d.len() - 1].to), Some(b));
                    for w in d.windows(2) {
                        assert_eq!(p.canonical(w[0].to), p.canonical(w[1].from));
                    }
                } else if a != b {
                    assert!(d.is_none());
                }
            }
        }
    }
}

#[test]
fn levels_are_monotone() {
    for kind in [Kind::R, Kind::T] {
        let p = build_poset(kind, 5).unwrap();
        for &x in &p.nodes {
            if let FragmentNode::Gen(g) = x {
                if g.level < 5 {
                    let up = Gen { level: g.level + 1, ..g }.normalize();
                    assert!(p.leq(x, up), "{x} not below {up}");
                }
            }
        }
    }
}

#[test]
fn theory_quotient_merges_rules_downward() {
    let t = build_poset(Kind::T, 5).unwrap();
    let r = build_poset(Kind::R, 5).unwrap();
    for i in 0..5 {
        let j = i + 1;
        assert_eq!(t.canonical(n(&format!("Sigma{j}-PIND^R"))), Some(n(&format!("Sigma{i}-IND"))));
        assert_eq!(t.canonical(n(&format!("Pi{j}-PIND^R"))), Some(n(&format!("Sigma{i}-IND^R"))));
        assert_ne!(r.canonical(n(&format!("Sigma{j}-PIND^R"))), r.canonical(n(&format!("Sigma{i}-IND"))));
    }
    // the quotient adds inequalities and never removes them
    for &a in &r.nodes {
        for &b in &r.nodes {
            if r.leq(a, b) {
                assert!(t.leq(a, b));
            }
        }
    }
}

#[test]
fn hasse_diagram_generates_the_order() {
    for kind in [Kind::R, Kind::T] {
        let p = build_poset(kind, 4).unwrap();
        let h = p.hasse();
        let ix = |x: FragmentNode| p.nodes.iter().position(|&y| y == x).unwrap();
        let k = p.nodes.len();
        let mut reach = vec![vec![false; k]; k];
        for i in 0..k {
            reach[i][i] = true;
        }
        for &(a, b) in &h {
            assert!(p.lt(a, b));
            reach[ix(a)][ix(b)] = true;
        }
        for m in 0..k {
            for i in 0..k {
                for j in 0..k {
                    if reach[i][m] && reach[m][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
        for (i, &a) in p.nodes.iter().enumerate() {
            for (j, &b) in p.nodes.iter().enumerate() {
                assert_eq!(reach[i][j], p.leq(a, b), "{a} {b}");
            }
        }
    }
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

fn extra_family(max: u32) -> BTreeSet<(FragmentNode, FragmentNode)> {
    (0..max - 1)
        .map(|i| (n(&format!("Pi{}-PIND^R", i + 1)), n(&format!("Sigma{i}-IND"))))
        .collect()
}

#[test]
fn interior_critical_pairs_are_exactly_the_known_families() {
    for max in 3..=7 {
        for kind in [Kind::R, Kind::T] {
            let p = build_poset(kind, max).unwrap();
            let pairs = critical_pairs(&p, true);
            let interior: BTreeSet<_> =
                pairs.iter().filter(|c| c.tag == PairTag::Interior).map(|c| (c.a, c.b)).collect();
            let subsumed: BTreeSet<_> =
                pairs.iter().filter(|c| c.tag == PairTag::Subsumed).map(|c| (c.a, c.b)).collect();
            assert_eq!(interior, common_families(max), "{kind:?} {max}");
            match kind {
                Kind::R => assert_eq!(subsumed, extra_family(max)),
                Kind::T => assert!(subsumed.is_empty()),
            }
            assert!(pairs.iter().all(|c| c.tag != PairTag::Boundary));
        }
    }
}

#[test]
fn subsumed_pairs_carry_their_witness() {
    let p = build_poset(Kind::R, 5).unwrap();
    let all = critical_pairs(&p, false);
    for c in all.iter().filter(|c| c.tag == PairTag::Subsumed) {
        let (a2, b2) = c.witness.unwrap();
        let FragmentNode::Gen(g) = c.a else { panic!() };
        assert_eq!(a2, Gen { form: Form::ParamFree, ..g }.normalize());
        assert!(p.leq(c.b, b2));
        assert!(all.iter().any(|d| (d.a, d.b) == (a2, b2)));
    }
}

#[test]
fn pairs_satisfy_the_definition() {
    for kind in [Kind::R, Kind::T] {
        let p = build_poset(kind, 5).unwrap();
        let pairs = critical_pairs(&p, false);
        let set: BTreeSet<_> = pairs.iter().map(|c| (c.a, c.b)).collect();
        for &a in &p.nodes {
            for &b in &p.nodes {
                let critical = !p.leq(a, b)
                    && p.nodes.iter().all(|&x| !p.lt(x, a) || p.leq(x, b))
                    && p.nodes.iter().all(|&y| !p.lt(b, y) || p.leq(a, y));
                assert_eq!(critical, set.contains(&(a, b)), "{a} {b}");
            }
        }
    }
}

#[test]
fn critical_pairs_form_a_basis_below_the_top() {
    for max in 2..=6 {
        for kind in [Kind::R, Kind::T] {
            let p = build_poset(kind, max).unwrap();
            assert!(basis_gaps(&p).is_empty());
        }
    }
}

#[test]
fn neither_poset_is_a_lattice() {
    for kind in [Kind::R, Kind::T] {
        let p = build_poset(kind, 5).unwrap();
        let w = p.non_lattice_witness().expect("witness");
        let (u, v) = w.bounds;
        for c in [u, v] {
            assert!(p.leq(w.a, c) && p.leq(w.b, c));
            assert!(!p.upper_bounds(w.a, w.b).iter().any(|&d| p.lt(d, c)));
        }
        assert!(!p.leq(u, v) && !p.leq(v, u));
    }
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden").join(name)
}

fn line_set(s: &str) -> BTreeSet<String> {
    s.lines().map(str::to_string).collect()
}

#[test]
fn level_panels_match_the_figures() {
    for max in [4, 5] {
        let r = build_poset(Kind::R, max).unwrap();
        let t = build_poset(Kind::T, max).unwrap();
        let fig1 = std::fs::read_to_string(golden("figure1-level2.dot")).unwrap();
        let fig2 = std::fs::read_to_string(golden("figure2-level2.dot")).unwrap();
        assert_eq!(line_set(&level_dot(&r, 2)), line_set(&fig1));
        assert_eq!(line_set(&level_dot(&t, 2)), line_set(&fig2));
        // the same panel shape on every level away from the ends
        for level in 1..max {
            let shift = |s: &str| s.replace("2-", &format!("{level}-")).replace("level2", &format!("level{level}"));
            assert_eq!(line_set(&level_dot(&r, level)), line_set(&shift(&fig1)));
            assert_eq!(line_set(&level_dot(&t, level)), line_set(&shift(&fig2)));
        }
    }
}

#[test]
fn edges_between_levels_match_the_figures() {
    let cross = |p: &FragmentPoset, i: u32| -> BTreeSet<(FragmentNode, FragmentNode)> {
        p.hasse().into_iter().filter(|(a, b)| a.level() == i - 1 && b.level() == i && *a != FragmentNode::Base).collect()
    };
    let r = build_poset(Kind::R, 5).unwrap();
    let t = build_poset(Kind::T, 5).unwrap();
    for i in 1..=5 {
        let h = i - 1;
        let pairs = |xs: &[(&str, &str)]| -> BTreeSet<_> {
            xs.iter().map(|(a, b)| (n(&a.replace("{h}", &h.to_string())), n(&b.replace("{i}", &i.to_string())))).collect()
        };
        assert_eq!(
            cross(&r, i),
            pairs(&[("Sigma{h}-IND", "Sigma{i}-PIND^R"), ("Sigma{h}-IND^-", "Pi{i}-PIND^-"), ("Sigma{h}-IND^R", "Pi{i}-PIND^R")])
        );
        assert_eq!(
            cross(&t, i),
            pairs(&[
                ("Sigma{h}-IND", "Sigma{i}-IND^R"),
                ("Sigma{h}-IND", "Sigma{i}-PIND^-"),
                ("Sigma{h}-IND^-", "Pi{i}-PIND^-"),
                ("Sigma{h}-IND^R", "Pi{i}-IND^R"),
            ])
        );
    }
}

#[test]
fn dot_output_is_frozen() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for max in [4, 5] {
        for (kind, tag) in [(Kind::R, "r"), (Kind::T, "t")] {
            let p = build_poset(kind, max).unwrap();
            let dot = to_dot(&p, true);
            assert_eq!(dot, to_dot(&build_poset(kind, max).unwrap(), true));
            let path = golden(&format!("p_{tag}-{max}.dot"));
            if update {
                std::fs::write(&path, &dot).unwrap();
            }
            assert_eq!(std::fs::read_to_string(&path).unwrap(), dot, "{}", path.display());
            let flat = to_dot(&p, false);
            assert_eq!(flat.matches("->").count(), p.hasse().len());
            assert_eq!(dot.matches("->").count(), p.hasse().len());
        }
    }
}

#[test]
fn json_listing() {
    let p = build_poset(Kind::T, 4).unwrap();
    let v = serde_json::to_value(p.listing(true)).unwrap();
    assert_eq!(v["kind"], "T");
    assert_eq!(v["nodes"].as_array().unwrap().len(), p.nodes.len());
    let cp = v["critical_pairs"].as_array().unwrap();
    assert!(cp.iter().any(|c| c["a"] == "Pi1-IND^R" && c["b"] == "Sigma1-PIND" && c["tag"] == "interior"));
    let merged = v["nodes"].as_array().unwrap().iter().find(|x| x["name"] == "Sigma0-IND").unwrap();
    assert_eq!(merged["identified"][0], "Sigma1-PIND^R");
    assert!(v["edges"].as_array().unwrap().iter().all(|e| e["provenance"].is_string()));
    let r = build_poset(Kind::R, 4).unwrap();
    let v = serde_json::to_value(r.listing(true)).unwrap();
    let sub = v["critical_pairs"].as_array().unwrap().iter().find(|c| c["tag"] == "subsumed").unwrap();
    assert_eq!(sub["witness"][0], "Pi1-PIND^-");
}

proptest! {
    #[test]
    fn random_pairs_are_covered(max in 2u32..7, r in any::<bool>(), x in 0usize..1000, y in 0usize..1000) {
        let p = build_poset(if r { Kind::R } else { Kind::T }, max).unwrap();
        let inner: Vec<FragmentNode> = p.nodes.iter().copied().filter(|n| n.level() < max).collect();
        let (a, b) = (inner[x % inner.len()], inner[y % inner.len()]);
        if !p.leq(a, b) {
            let pairs = critical_pairs(&p, false);
            prop_assert!(pairs.iter().any(|c| p.leq(c.a, a) && p.leq(b, c.b)));
        }
    }
}
