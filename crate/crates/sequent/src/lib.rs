//! Proofs in quantified propositional sequent calculi, their checker, and a
//! reflection test by evaluation.
//!
//! Logical rules act on the first formula of a side: the principal formula
//! of a conclusion sits at index 0, and so do the auxiliary formulas of the
//! premises. Exchange moves formulas around.

mod build;
mod check;
pub mod format;
pub mod golden;
mod mutate;
mod reflect;

pub use build::ProofBuilder;
pub use check::{check_proof, Reason, Verdict};
pub use mutate::{mutants, Mutant, MutationClass};
pub use reflect::{reflection_test, ReflectError};

use formula_core::{classify, parse, ClassKind};
use qprop::QProp;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Sequent {
    pub ante: Vec<QProp>,
    pub succ: Vec<QProp>,
}

impl Sequent {
    pub fn new(ante: Vec<QProp>, succ: Vec<QProp>) -> Sequent {
        Sequent { ante, succ }
    }

    pub fn free_vars(&self) -> std::collections::BTreeSet<String> {
        self.ante
            .iter()
            .chain(&self.succ)
            .flat_map(|f| f.free_vars())
            .collect()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |xs: &[QProp]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        write!(f, "{} => {}", side(&self.ante), side(&self.succ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Rule {
    /// `A ⇒ A`
    AxiomId,
    /// `⇒ 1`
    AxiomTop,
    /// `0 ⇒`
    AxiomBottom,
    /// `⇒ ⟦ξ⟧_n` with formulas substituted for its free bit variables.
    AxiomXi { n: u32, args: BTreeMap<String, QProp> },
    /// `⇒ (¬v ∨ A) ∧ (¬A ∨ v)` for a new variable `v`.
    Extension { var: String, def: QProp },
    WeakenLeft,
    WeakenRight,
    /// Swap positions `at` and `at + 1`.
    ExchangeLeft { at: usize },
    ExchangeRight { at: usize },
    ContractLeft,
    ContractRight,
    NotLeft,
    NotRight,
    AndLeft,
    AndRight,
    OrLeft,
    OrRight,
    ExistsLeft { eigen: String },
    ExistsRight { witness: QProp },
    ForallLeft { witness: QProp },
    ForallRight { eigen: String },
    Cut { formula: QProp },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::AxiomId => "axiom-id",
            Rule::AxiomTop => "axiom-top",
            Rule::AxiomBottom => "axiom-bottom",
            Rule::AxiomXi { .. } => "axiom-xi",
            Rule::Extension { .. } => "extension",
            Rule::WeakenLeft => "weaken-left",
            Rule::WeakenRight => "weaken-right",
            Rule::ExchangeLeft { .. } => "exchange-left",
            Rule::ExchangeRight { .. } => "exchange-right",
            Rule::ContractLeft => "contract-left",
            Rule::ContractRight => "contract-right",
            Rule::NotLeft => "not-left",
            Rule::NotRight => "not-right",
            Rule::AndLeft => "and-left",
            Rule::AndRight => "and-right",
            Rule::OrLeft => "or-left",
            Rule::OrRight => "or-right",
            Rule::ExistsLeft { .. } => "exists-left",
            Rule::ExistsRight { .. } => "exists-right",
            Rule::ForallLeft { .. } => "forall-left",
            Rule::ForallRight { .. } => "forall-right",
            Rule::Cut { .. } => "cut",
        }
    }

    pub fn is_quantifier(&self) -> bool {
        matches!(
            self,
            Rule::ExistsLeft { .. }
                | Rule::ExistsRight { .. }
                | Rule::ForallLeft { .. }
                | Rule::ForallRight { .. }
        )
    }

    pub fn premise_count(&self) -> usize {
        match self {
            Rule::AxiomId
            | Rule::AxiomTop
            | Rule::AxiomBottom
            | Rule::AxiomXi { .. }
            | Rule::Extension { .. } => 0,
            Rule::AndRight | Rule::OrLeft | Rule::Cut { .. } => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub conclusion: Sequent,
    #[serde(flatten)]
    pub rule: Rule,
    #[serde(default)]
    pub premises: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Base {
    #[serde(rename = "G")]
    G,
    #[serde(rename = "G*")]
    GStar,
    #[serde(rename = "G0")]
    G0,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub base: Base,
    /// Cut formulas must lie in Σq of this level.
    pub level: u32,
    pub tree_like: bool,
    /// Axiom schema, in formula syntax.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("G_i and G*_i need level at least 1")]
    Level,
    #[error("G0 has cut level 0")]
    G0Level,
    #[error("G*_i is tree-like")]
    TreeLike,
    #[error("axiom schema does not parse: {0}")]
    XiParse(String),
    #[error("axiom schema is {0}, above the system level")]
    XiClass(String),
    #[error("axiom schemas one level above the system need an extra inference rule, which is not provided")]
    XiRuleUnsupported,
}

impl SystemSpec {
    pub fn g(level: u32) -> SystemSpec {
        SystemSpec {
            base: Base::G,
            level,
            tree_like: false,
            xi: None,
        }
    }

    pub fn g_star(level: u32) -> SystemSpec {
        SystemSpec {
            base: Base::GStar,
            level,
            tree_like: true,
            xi: None,
        }
    }

    pub fn g0() -> SystemSpec {
        SystemSpec {
            base: Base::G0,
            level: 0,
            tree_like: false,
            xi: None,
        }
    }

    pub fn with_xi(mut self, xi: &str) -> SystemSpec {
        self.xi = Some(xi.to_string());
        self
    }

    pub fn name(&self) -> String {
        let base = match self.base {
            Base::G => format!("G_{}", self.level),
            Base::GStar => format!("G*_{}", self.level),
            Base::G0 => "G_0".to_string(),
        };
        match &self.xi {
            Some(x) => format!("{base}+[{x}]"),
            None => base,
        }
    }

    pub fn validate(&self) -> Result<(), SystemError> {
        match self.base {
            Base::G0 if self.level != 0 => return Err(SystemError::G0Level),
            Base::G | Base::GStar if self.level == 0 => return Err(SystemError::Level),
            Base::GStar if !self.tree_like => return Err(SystemError::TreeLike),
            _ => {}
        }
        if let Some(x) = &self.xi {
            let f = parse(x).map_err(|e| SystemError::XiParse(e.to_string()))?;
            let c = classify(&f);
            if !c.within(true, self.level) {
                if c.kind == ClassKind::SigmaHat && c.level == self.level + 1 {
                    return Err(SystemError::XiRuleUnsupported);
                }
                return Err(SystemError::XiClass(c.to_string()));
            }
        }
        Ok(())
    }
}
