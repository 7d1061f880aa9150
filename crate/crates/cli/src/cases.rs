use formula_core::{classify, Formula, QuantClass};
use reductions::{
    golden_cases, BasicOpts, Construction, Direction, RuleKind, Scheme, Variant, VariantOpts,
};

/// Constructions that take their formula(s) from a file.
pub const NAMES: &[&str] = &[
    "elim-sigma-ind",
    "elim-pi-ind",
    "elim-sigma-pind",
    "elim-pi-pind",
    "bounded-ax",
    "dual-ind",
    "dual-pind",
    "pi-unfold",
    "pind-via-ind",
    "interval-halving",
    "additivity",
    "nested-pi-merge",
    "base-from-rule0",
    "base-to-rule0",
    "length-pind-to-lind",
    "length-lind-to-pind",
    "length-lt",
    "cov-ind",
    "cov-pind",
    "cov-recode",
    "res",
    "witness",
    "min-as-ind",
    "min-rule",
];

fn elim(phi: &Formula, scheme: Scheme, sigma: bool) -> Construction {
    let level = classify(phi).level.max(1);
    let class = if sigma {
        QuantClass::sigma(level)
    } else {
        QuantClass::pi(level)
    };
    Construction::EliminateParameters {
        phi: phi.clone(),
        kind: RuleKind::rule(scheme, class),
    }
}

fn item(item: u8, phi: &Formula, scheme: Scheme) -> Construction {
    Construction::Basic {
        item,
        phi: phi.clone(),
        opts: BasicOpts { scheme },
    }
}

fn variant(variant: Variant, phi: &Formula, direction: Direction, scheme: Scheme) -> Construction {
    Construction::Variant {
        variant,
        phi: phi.clone(),
        direction,
        opts: VariantOpts { scheme, c: 1 },
    }
}

/// The construction named `case` applied to `formulas` (one formula, or two
/// for `nested-pi-merge`).
pub fn construction(case: &str, formulas: &[Formula]) -> Result<Construction, String> {
    use Direction::*;
    use Scheme::*;
    use Variant::*;
    let want = if case == "nested-pi-merge" { 2 } else { 1 };
    if !NAMES.contains(&case) {
        return Err(format!(
            "unknown case `{case}`; expected a golden id or one of: {}",
            NAMES.join(", ")
        ));
    }
    if formulas.len() != want {
        return Err(format!(
            "case `{case}` takes {want} formula(s), the file has {}",
            formulas.len()
        ));
    }
    let phi = &formulas[0];
    Ok(match case {
        "elim-sigma-ind" => elim(phi, Ind, true),
        "elim-pi-ind" => elim(phi, Ind, false),
        "elim-sigma-pind" => elim(phi, Pind, true),
        "elim-pi-pind" => elim(phi, Pind, false),
        "bounded-ax" => Construction::BoundedAxiomatization { phi: phi.clone() },
        "dual-ind" => item(2, phi, Ind),
        "dual-pind" => item(2, phi, Pind),
        "pi-unfold" => item(4, phi, Ind),
        "pind-via-ind" => item(5, phi, Ind),
        "interval-halving" => item(6, phi, Ind),
        "additivity" => item(7, phi, Ind),
        "nested-pi-merge" => Construction::MergeNestedPi {
            phi: phi.clone(),
            psi: formulas[1].clone(),
            c: 1,
            theory: vec![],
        },
        "base-from-rule0" => variant(BaseCase, phi, Forward, Ind),
        "base-to-rule0" => variant(BaseCase, phi, Backward, Lind),
        "length-pind-to-lind" => variant(Length, phi, Forward, Ind),
        "length-lind-to-pind" => variant(Length, phi, Backward, Ind),
        "length-lt" => variant(Length, phi, Lt, Ind),
        "cov-ind" => variant(CourseOfValues, phi, Forward, Ind),
        "cov-pind" => variant(CourseOfValues, phi, Forward, Pind),
        "cov-recode" => variant(CourseOfValues, phi, Backward, Ind),
        "res" => variant(Restricted, phi, Forward, Ind),
        "witness" => variant(WitnessWeakening, phi, Forward, Ind),
        "min-as-ind" => variant(MinAsInd, phi, Forward, Min),
        "min-rule" => variant(MinRule, phi, Forward, Min),
        _ => unreachable!(),
    })
}

/// A shipped sample construction and its default width.
pub fn golden(id: &str) -> Option<(Construction, u32)> {
    golden_cases()
        .into_iter()
        .find(|c| c.id == id)
        .map(|c| (c.construction, c.width))
}
