use crate::check::{extension_formula, xi_instance};
use crate::{ProofStep, Rule, Sequent};
use qprop::QProp;
use std::collections::BTreeMap;

/// Forward construction of proofs. Each method computes the conclusion from
/// its premises and panics when the rule does not apply; the checker is the
/// authority on correctness.
#[derive(Debug, Default, Clone)]
pub struct ProofBuilder {
    steps: Vec<ProofStep>,
}

impl ProofBuilder {
    pub fn new() -> ProofBuilder {
        ProofBuilder::default()
    }

    pub fn seq(&self, i: usize) -> &Sequent {
        &self.steps[i].conclusion
    }

    pub fn last(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn finish(self) -> Vec<ProofStep> {
        self.steps
    }

    fn push(&mut self, conclusion: Sequent, rule: Rule, premises: Vec<usize>) -> usize {
        self.steps.push(ProofStep {
            conclusion,
            rule,
            premises,
        });
        self.steps.len() - 1
    }

    pub fn axiom(&mut self, a: &QProp) -> usize {
        self.push(Sequent::new(vec![a.clone()], vec![a.clone()]), Rule::AxiomId, vec![])
    }

    pub fn top(&mut self) -> usize {
        self.push(Sequent::new(vec![], vec![QProp::constant(true)]), Rule::AxiomTop, vec![])
    }

    pub fn bottom(&mut self) -> usize {
        self.push(Sequent::new(vec![QProp::constant(false)], vec![]), Rule::AxiomBottom, vec![])
    }

    pub fn xi(&mut self, xi: &str, n: u32, args: BTreeMap<String, QProp>) -> usize {
        let inst = xi_instance(xi, n, &args).expect("well-formed instance");
        self.push(Sequent::new(vec![], vec![inst]), Rule::AxiomXi { n, args }, vec![])
    }

    pub fn extension(&mut self, var: &str, def: &QProp) -> usize {
        self.push(
            Sequent::new(vec![], vec![extension_formula(var, def)]),
            Rule::Extension {
                var: var.to_string(),
                def: def.clone(),
            },
            vec![],
        )
    }

    pub fn weaken_left(&mut self, i: usize, a: &QProp) -> usize {
        let mut s = self.seq(i).clone();
        s.ante.insert(0, a.clone());
        self.push(s, Rule::WeakenLeft, vec![i])
    }

    pub fn weaken_right(&mut self, i: usize, a: &QProp) -> usize {
        let mut s = self.seq(i).clone();
        s.succ.insert(0, a.clone());
        self.push(s, Rule::WeakenRight, vec![i])
    }

    pub fn exchange_left(&mut self, i: usize, at: usize) -> usize {
        let mut s = self.seq(i).clone();
        s.ante.swap(at, at + 1);
        self.push(s, Rule::ExchangeLeft { at }, vec![i])
    }

    pub fn exchange_right(&mut self, i: usize, at: usize) -> usize {
        let mut s = self.seq(i).clone();
        s.succ.swap(at, at + 1);
        self.push(s, Rule::ExchangeRight { at }, vec![i])
    }

    pub fn contract_left(&mut self, i: usize) -> usize {
        let mut s = self.seq(i).clone();
        assert!(s.ante[0] == s.ante[1]);
        s.ante.remove(0);
        self.push(s, Rule::ContractLeft, vec![i])
    }

    pub fn contract_right(&mut self, i: usize) -> usize {
        let mut s = self.seq(i).clone();
        assert!(s.succ[0] == s.succ[1]);
        s.succ.remove(0);
        self.push(s, Rule::ContractRight, vec![i])
    }

    pub fn not_left(&mut self, i: usize) -> usize {
        let mut s = self.seq(i).clone();
        let a = s.succ.remove(0);
        s.ante.insert(0, a.not());
        self.push(s, Rule::NotLeft, vec![i])
    }

    pub fn not_right(&mut self, i: usize) -> usize {
        let mut s = self.seq(i).clone();
        let a = s.ante.remove(0);
        s.succ.insert(0, a.not());
        self.push(s, Rule::NotRight, vec![i])
    }

    pub fn and_left(&mut self, i: usize) -> usize {
        let mut s = self.seq(i).clone();
        let a = s.ante.remove(0);
        let b = s.ante.remove(0);
        s.ante.insert(0, a.and(&b));
        self.push(s, Rule::AndLeft, vec![i])
    }

    pub fn or_right(&mut self, i: usize) -> usize {
        let mut s = self.seq(i).clone();
        let a = s.succ.remove(0);
        let b = s.succ.remove(0);
        s.succ.insert(0, a.or(&b));
        self.push(s, Rule::OrRight, vec![i])
    }

    pub fn and_right(&mut self, i: usize, j: usize) -> usize {
        let mut s = self.seq(i).clone();
        let b = self.seq(j).succ[0].clone();
        s.succ[0] = s.succ[0].and(&b);
        self.push(s, Rule::AndRight, vec![i, j])
    }

    pub fn or_left(&mut self, i: usize, j: usize) -> usize {
        let mut s = self.seq(i).clone();
        let b = self.seq(j).ante[0].clone();
        s.ante[0] = s.ante[0].or(&b);
        self.push(s, Rule::OrLeft, vec![i, j])
    }

    /// Replace the first antecedent `body[v := eigen]` by `∃v body`.
    pub fn exists_left(&mut self, i: usize, v: &str, body: &QProp, eigen: &str) -> usize {
        let mut s = self.seq(i).clone();
        s.ante[0] = QProp::exists(v, body);
        self.push(s, Rule::ExistsLeft { eigen: eigen.into() }, vec![i])
    }

    pub fn forall_right(&mut self, i: usize, v: &str, body: &QProp, eigen: &str) -> usize {
        let mut s = self.seq(i).clone();
        s.succ[0] = QProp::forall(v, body);
        self.push(s, Rule::ForallRight { eigen: eigen.into() }, vec![i])
    }

    pub fn exists_right(&mut self, i: usize, v: &str, body: &QProp, witness: &QProp) -> usize {
        let mut s = self.seq(i).clone();
        s.succ[0] = QProp::exists(v, body);
        self.push(
            s,
            Rule::ExistsRight {
                witness: witness.clone(),
            },
            vec![i],
        )
    }

    pub fn forall_left(&mut self, i: usize, v: &str, body: &QProp, witness: &QProp) -> usize {
        let mut s = self.seq(i).clone();
        s.ante[0] = QProp::forall(v, body);
        self.push(
            s,
            Rule::ForallLeft {
                witness: witness.clone(),
            },
            vec![i],
        )
    }

    /// From `Γ ⇒ A, Δ` and `A, Γ ⇒ Δ`.
    pub fn cut(&mut self, i: usize, j: usize) -> usize {
        let mut s = self.seq(i).clone();
        let a = s.succ.remove(0);
        self.push(s, Rule::Cut { formula: a }, vec![i, j])
    }

    /// Exchanges moving `ante[k]` to the front.
    pub fn front_left(&mut self, mut i: usize, k: usize) -> usize {
        for at in (0..k).rev() {
            i = self.exchange_left(i, at);
        }
        i
    }

    pub fn front_right(&mut self, mut i: usize, k: usize) -> usize {
        for at in (0..k).rev() {
            i = self.exchange_right(i, at);
        }
        i
    }

    /// Structural steps from step `i` to `target`, whose sides must be
    /// duplicate-free and contain every formula of the premise.
    pub fn adjust(&mut self, mut i: usize, target: &Sequent) -> usize {
        for left in [true, false] {
            let want = if left { &target.ante } else { &target.succ };
            // contract duplicates
            loop {
                let side = self.side(i, left);
                let dup = (0..side.len()).find_map(|a| {
                    (a + 1..side.len()).find(|&b| side[a] == side[b]).map(|b| (a, b))
                });
                let Some((a, b)) = dup else { break };
                i = self.front(i, left, a);
                i = self.front_to(i, left, b, 1);
                i = if left {
                    self.contract_left(i)
                } else {
                    self.contract_right(i)
                };
            }
            for f in want {
                if !self.side(i, left).contains(f) {
                    i = if left {
                        self.weaken_left(i, f)
                    } else {
                        self.weaken_right(i, f)
                    };
                }
            }
            assert_eq!(self.side(i, left).len(), want.len(), "premise not contained in target");
            // selection sort by adjacent swaps
            for (pos, f) in want.iter().enumerate() {
                let k = self.side(i, left).iter().position(|g| g == f).expect("present");
                i = self.front_to(i, left, k, pos);
            }
        }
        i
    }

    fn side(&self, i: usize, left: bool) -> Vec<QProp> {
        let s = self.seq(i);
        if left {
            s.ante.clone()
        } else {
            s.succ.clone()
        }
    }

    fn front(&mut self, i: usize, left: bool, k: usize) -> usize {
        if left {
            self.front_left(i, k)
        } else {
            self.front_right(i, k)
        }
    }

    /// Move the formula at `k` to position `pos <= k`.
    fn front_to(&mut self, mut i: usize, left: bool, k: usize, pos: usize) -> usize {
        for at in (pos..k).rev() {
            i = if left {
                self.exchange_left(i, at)
            } else {
                self.exchange_right(i, at)
            };
        }
        i
    }
}
