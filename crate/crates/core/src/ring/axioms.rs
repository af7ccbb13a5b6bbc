use serde::Serialize;

use super::{ElementId, RingTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    AddInverse,
    MulAssociative,
    LeftDistributive,
    RightDistributive,
    MulIdentity,
    ZeroIsNotOne,
}

impl Axiom {
    pub const ALL: [Axiom; 9] = [
        Axiom::AddAssociative,
        Axiom::AddCommutative,
        Axiom::AddIdentity,
        Axiom::AddInverse,
        Axiom::MulAssociative,
        Axiom::LeftDistributive,
        Axiom::RightDistributive,
        Axiom::MulIdentity,
        Axiom::ZeroIsNotOne,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    /// Elements violating the axiom, in the order they appear in its statement.
    pub witness: Option<Vec<ElementId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.witness.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| c.witness.is_some())
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .failures()
            .map(|c| {
                let w: Vec<String> = c.witness.iter().flatten().map(|e| e.to_string()).collect();
                format!("{:?} fails at ({})", c.axiom, w.join(","))
            })
            .collect();
        if failed.is_empty() {
            "all axioms hold".to_string()
        } else {
            failed.join("; ")
        }
    }
}

fn find_triple(
    ring: &RingTable,
    pred: impl Fn(ElementId, ElementId, ElementId) -> bool,
) -> Option<Vec<ElementId>> {
    for a in ring.elements() {
        for b in ring.elements() {
            for c in ring.elements() {
                if !pred(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

fn find_pair(
    ring: &RingTable,
    pred: impl Fn(ElementId, ElementId) -> bool,
) -> Option<Vec<ElementId>> {
    for a in ring.elements() {
        for b in ring.elements() {
            if !pred(a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn find_single(ring: &RingTable, pred: impl Fn(ElementId) -> bool) -> Option<Vec<ElementId>> {
    ring.elements().find(|&a| !pred(a)).map(|a| vec![a])
}

/// Exhaustively check every ring axiom, recording the first violating tuple
/// (in index order) for each one. Cost is cubic in the order.
pub fn verify_ring_axioms(ring: &RingTable) -> AxiomReport {
    let r = ring;
    let checks = Axiom::ALL
        .iter()
        .map(|&axiom| {
            let witness = match axiom {
                Axiom::AddAssociative => {
                    find_triple(r, |a, b, c| r.add(r.add(a, b), c) == r.add(a, r.add(b, c)))
                }
                Axiom::AddCommutative => find_pair(r, |a, b| r.add(a, b) == r.add(b, a)),
                Axiom::AddIdentity => find_single(r, |a| r.add(a, r.zero()) == a),
                Axiom::AddInverse => find_single(r, |a| r.add(a, r.neg(a)) == r.zero()),
                Axiom::MulAssociative => {
                    find_triple(r, |a, b, c| r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)))
                }
                Axiom::LeftDistributive => find_triple(r, |a, b, c| {
                    r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c))
                }),
                Axiom::RightDistributive => find_triple(r, |a, b, c| {
                    r.mul(r.add(a, b), c) == r.add(r.mul(a, c), r.mul(b, c))
                }),
                Axiom::MulIdentity => {
                    find_single(r, |a| r.mul(a, r.one()) == a && r.mul(r.one(), a) == a)
                }
                Axiom::ZeroIsNotOne => {
                    (r.order() > 1 && r.zero() == r.one()).then(|| vec![r.zero()])
                }
            };
            AxiomCheck { axiom, witness }
        })
        .collect();
    AxiomReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_is_a_ring() {
        let z6 = RingTable::zn(6).unwrap();
        let report = verify_ring_axioms(&z6);
        assert!(report.passed(), "{}", report.summary());
    }

    #[test]
    fn zero_ring_passes() {
        assert!(verify_ring_axioms(&RingTable::zn(1).unwrap()).passed());
    }

    #[test]
    fn corrupted_entry_is_caught_with_witness() {
        let mut z6 = RingTable::zn(6).unwrap();
        z6.raw_mul_mut()[2 * 6 + 3] = 1;
        let report = verify_ring_axioms(&z6);
        assert!(!report.passed());
        let failed: Vec<Axiom> = report.failures().map(|c| c.axiom).collect();
        assert!(failed.iter().any(|a| matches!(
            a,
            Axiom::MulAssociative | Axiom::LeftDistributive | Axiom::RightDistributive
        )));
        // every reported witness really violates its axiom
        for c in report.failures() {
            let w = c.witness.as_ref().unwrap();
            if c.axiom == Axiom::MulAssociative {
                let (a, b, cc) = (w[0], w[1], w[2]);
                assert_ne!(z6.mul(z6.mul(a, b), cc), z6.mul(a, z6.mul(b, cc)));
            }
            if c.axiom == Axiom::LeftDistributive {
                let (a, b, cc) = (w[0], w[1], w[2]);
                assert_ne!(
                    z6.mul(a, z6.add(b, cc)),
                    z6.add(z6.mul(a, b), z6.mul(a, cc))
                );
            }
        }
    }

    #[test]
    fn zero_equal_one_in_larger_ring_fails() {
        let bad = RingTable::from_fns("bad", 2, 0, 0, |a, b| (a + b) % 2, |_, _| 0, |a| a).unwrap();
        let report = verify_ring_axioms(&bad);
        assert!(report.failures().any(|c| c.axiom == Axiom::ZeroIsNotOne));
    }
}
