use crate::{Node, QProp};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum QKind {
    SigmaQ,
    PiQ,
    QuantifierFree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct QClass {
    pub kind: QKind,
    pub level: u32,
}

impl QClass {
    pub const QF: QClass = QClass {
        kind: QKind::QuantifierFree,
        level: 0,
    };

    pub fn sigma(level: u32) -> QClass {
        QClass {
            kind: QKind::SigmaQ,
            level,
        }
    }

    pub fn pi(level: u32) -> QClass {
        QClass {
            kind: QKind::PiQ,
            level,
        }
    }

    /// Membership in Σqᵢ (`sigma`) or Πqᵢ implied by this class alone.
    pub fn within(&self, sigma: bool, level: u32) -> bool {
        match self.kind {
            QKind::QuantifierFree => true,
            QKind::SigmaQ if sigma => self.level <= level,
            QKind::PiQ if !sigma => self.level <= level,
            _ => self.level < level,
        }
    }

    pub fn dual(&self) -> QClass {
        let kind = match self.kind {
            QKind::SigmaQ => QKind::PiQ,
            QKind::PiQ => QKind::SigmaQ,
            QKind::QuantifierFree => QKind::QuantifierFree,
        };
        QClass { kind, ..*self }
    }
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            QKind::SigmaQ => write!(f, "SigmaQ{}", self.level),
            QKind::PiQ => write!(f, "PiQ{}", self.level),
            QKind::QuantifierFree => write!(f, "QF"),
        }
    }
}

/// Least `(s, p)` with the formula in Σq_s and in Πq_p.
pub fn qlevels(q: &QProp) -> (u32, u32) {
    let mut lv: std::collections::HashMap<crate::NodeId, (u32, u32)> = Default::default();
    for id in q.topo() {
        let r = match q.node(id) {
            Node::Var(_) | Node::Const(_) => (0, 0),
            Node::Not(a) => {
                let (s, p) = lv[a];
                (p, s)
            }
            Node::And(a, b) | Node::Or(a, b) => {
                let (s1, p1) = lv[a];
                let (s2, p2) = lv[b];
                (s1.max(s2), p1.max(p2))
            }
            Node::Exists(_, a) => {
                let s = lv[a].0.max(1);
                (s, s + 1)
            }
            Node::Forall(_, a) => {
                let p = lv[a].1.max(1);
                (p + 1, p)
            }
        };
        lv.insert(id, r);
    }
    lv[&q.root()]
}

/// The smaller of the two levels decides; a tie above 0 is reported as Σq.
pub fn qclassify(q: &QProp) -> QClass {
    let (s, p) = qlevels(q);
    if s == 0 {
        QClass::QF
    } else if p < s {
        QClass::pi(p)
    } else {
        QClass::sigma(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn samples() {
        assert_eq!(qclassify(&q("p & ~q")), QClass::QF);
        assert_eq!(qclassify(&q("EX p. ALL q. p & q")), QClass::sigma(2));
        assert_eq!(qclassify(&q("~(EX p. p)")), QClass::pi(1));
        assert_eq!(qlevels(&q("(EX p. p) & (ALL q. q)")), (2, 2));
        assert!(QClass::pi(1).within(true, 2));
        assert!(!QClass::pi(2).within(true, 2));
    }
}
