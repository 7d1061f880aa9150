use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Ind,
    Pind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Form {
    Axiom,
    ParamFree,
    Rule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Class {
    Sigma,
    Pi,
}

/// A generator before identifications. Field order gives the per-level
/// layout order: full scheme, parameter-free Σ and Π, rule Σ and Π; IND
/// before PIND.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub level: u32,
    pub family: Family,
    pub form: Form,
    pub class: Class,
}

impl Gen {
    pub fn new(family: Family, form: Form, class: Class, level: u32) -> Gen {
        Gen {
            level,
            family,
            form,
            class,
        }
    }

    /// Apply the identifications that hold by definition: full schemes
    /// are the same for Σ and Π, level 0 has no Σ/Π distinction, and
    /// level-0 PIND is part of the base theory.
    pub fn normalize(self) -> FragmentNode {
        let mut g = self;
        if g.form == Form::Axiom {
            g.class = Class::Sigma;
        }
        if g.level == 0 {
            if g.family == Family::Pind {
                return FragmentNode::Base;
            }
            g.class = Class::Sigma;
        }
        FragmentNode::Gen(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FragmentNode {
    Base,
    Gen(Gen),
}

impl FragmentNode {
    pub fn gen(family: Family, form: Form, class: Class, level: u32) -> FragmentNode {
        Gen::new(family, form, class, level).normalize()
    }

    pub fn level(&self) -> u32 {
        match self {
            FragmentNode::Base => 0,
            FragmentNode::Gen(g) => g.level,
        }
    }

    /// The distinct nodes of one level.
    pub fn at_level(level: u32) -> Vec<FragmentNode> {
        let mut out = Vec::new();
        for family in [Family::Ind, Family::Pind] {
            for form in [Form::Axiom, Form::ParamFree, Form::Rule] {
                for class in [Class::Sigma, Class::Pi] {
                    let n = FragmentNode::gen(family, form, class, level);
                    if n != FragmentNode::Base && !out.contains(&n) {
                        out.push(n);
                    }
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for FragmentNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self {
            FragmentNode::Base => return f.write_str("BASE"),
            FragmentNode::Gen(g) => g,
        };
        let class = match g.class {
            Class::Sigma => "Sigma",
            Class::Pi => "Pi",
        };
        let family = match g.family {
            Family::Ind => "IND",
            Family::Pind => "PIND",
        };
        let form = match g.form {
            Form::Axiom => "",
            Form::ParamFree => "^-",
            Form::Rule => "^R",
        };
        write!(f, "{class}{}-{family}{form}", g.level)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a node name: {0}")]
pub struct NodeNameError(pub String);

impl FromStr for FragmentNode {
    type Err = NodeNameError;

    /// Accepts the display form; identified names map to their canonical node.
    fn from_str(s: &str) -> Result<FragmentNode, NodeNameError> {
        let bad = || NodeNameError(s.to_string());
        if s == "BASE" {
            return Ok(FragmentNode::Base);
        }
        let (class, rest) = if let Some(r) = s.strip_prefix("Sigma") {
            (Class::Sigma, r)
        } else if let Some(r) = s.strip_prefix("Pi") {
            (Class::Pi, r)
        } else {
            return Err(bad());
        };
        let (level, rest) = rest.split_once('-').ok_or_else(bad)?;
        let level: u32 = level.parse().map_err(|_| bad())?;
        let (family, form) = match rest {
            "IND" => (Family::Ind, Form::Axiom),
            "IND^-" => (Family::Ind, Form::ParamFree),
            "IND^R" => (Family::Ind, Form::Rule),
            "PIND" => (Family::Pind, Form::Axiom),
            "PIND^-" => (Family::Pind, Form::ParamFree),
            "PIND^R" => (Family::Pind, Form::Rule),
            _ => return Err(bad()),
        };
        Ok(FragmentNode::gen(family, form, class, level))
    }
}

impl Serialize for FragmentNode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
