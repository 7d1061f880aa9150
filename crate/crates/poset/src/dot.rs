use crate::{FragmentNode, FragmentPoset, Kind};
use std::fmt::Write;

fn name(k: Kind) -> &'static str {
    match k {
        Kind::R => "P_R",
        Kind::T => "P_T",
    }
}

fn cluster(p: &FragmentPoset, level: u32, hasse: &[(FragmentNode, FragmentNode)], indent: &str, out: &mut String) {
    for n in p.nodes.iter().filter(|n| n.level() == level) {
        writeln!(out, "{indent}\"{n}\";").unwrap();
    }
    for (a, b) in hasse.iter().filter(|(a, b)| a.level() == level && b.level() == level) {
        writeln!(out, "{indent}\"{a}\" -> \"{b}\";").unwrap();
    }
}

/// DOT digraph of the Hasse diagram, weaker nodes at the bottom. With
/// `per_level`, each level becomes a cluster holding its own edges, and
/// edges between levels follow the clusters.
pub fn to_dot(p: &FragmentPoset, per_level: bool) -> String {
    let hasse = p.hasse();
    let mut out = String::new();
    writeln!(out, "digraph {} {{", name(p.kind)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    if per_level {
        for level in 0..=p.max_level {
            writeln!(out, "  subgraph cluster_level{level} {{").unwrap();
            writeln!(out, "    label=\"level {level}\";").unwrap();
            cluster(p, level, &hasse, "    ", &mut out);
            writeln!(out, "  }}").unwrap();
        }
        for (a, b) in hasse.iter().filter(|(a, b)| a.level() != b.level()) {
            writeln!(out, "  \"{a}\" -> \"{b}\";").unwrap();
        }
    } else {
        for n in &p.nodes {
            writeln!(out, "  \"{n}\";").unwrap();
        }
        for (a, b) in &hasse {
            writeln!(out, "  \"{a}\" -> \"{b}\";").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// One level of the Hasse diagram on its own.
pub fn level_dot(p: &FragmentPoset, level: u32) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {}_level{level} {{", name(p.kind)).unwrap();
    cluster(p, level, &p.hasse(), "  ", &mut out);
    out.push_str("}\n");
    out
}
