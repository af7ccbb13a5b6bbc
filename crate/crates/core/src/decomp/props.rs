use serde::Serialize;

use crate::construct::quotient;
use crate::error::Result;
use crate::ring::subset::{left_multiples, right_multiples};
use crate::ring::{ElementId, RingTable, StructureCache, SubsetHandle};

/// Side convention for the exchange property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `e ∈ xR` and `1 - e ∈ (1 - x)R`.
    Right,
    /// `e ∈ Rx` and `1 - e ∈ R(1 - x)`.
    Left,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExchangeReport {
    pub side: Side,
    pub holds: bool,
    /// Smallest idempotent witnessing the property, per element.
    pub witnesses: Vec<Option<ElementId>>,
    pub failure: Option<ElementId>,
}

pub fn is_exchange(ring: &RingTable, structure: &StructureCache, side: Side) -> ExchangeReport {
    let multiples = |a| match side {
        Side::Right => right_multiples(ring, a),
        Side::Left => left_multiples(ring, a),
    };
    let witnesses: Vec<Option<ElementId>> = ring
        .elements()
        .map(|x| {
            let around_x = multiples(x);
            let around_complement = multiples(ring.sub(ring.one(), x));
            structure.idempotents().iter().copied().find(|&e| {
                around_x[e.index()] && around_complement[ring.sub(ring.one(), e).index()]
            })
        })
        .collect();
    let failure = witnesses
        .iter()
        .position(|w| w.is_none())
        .map(ElementId::from);
    ExchangeReport {
        side,
        holds: failure.is_none(),
        witnesses,
        failure,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PiRegularReport {
    pub holds: bool,
    /// Smallest exponent `k` with `a^k ∈ a^(k+1)R ∩ Ra^(k+1)`, per element.
    pub exponents: Vec<Option<usize>>,
}

/// Strongly π-regular test with exponents bounded by the ring order.
pub fn is_strongly_pi_regular(ring: &RingTable) -> PiRegularReport {
    let exponents: Vec<Option<usize>> = ring
        .elements()
        .map(|a| {
            let mut power = a;
            for k in 1..=ring.order() {
                let next = ring.mul(power, a);
                let right = ring.elements().any(|r| ring.mul(next, r) == power);
                if right && ring.elements().any(|r| ring.mul(r, next) == power) {
                    return Some(k);
                }
                power = next;
            }
            None
        })
        .collect();
    PiRegularReport {
        holds: exponents.iter().all(Option::is_some),
        exponents,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LiftReport {
    pub holds: bool,
    /// `(idempotent coset, its minimal representative, lifted idempotent)`.
    pub lifts: Vec<(ElementId, ElementId, Option<ElementId>)>,
}

/// Lift the idempotent coset of `x` modulo `ideal`: the smallest idempotent
/// `e` with `e - x ∈ I`, or (when `weak`) with `e + x ∈ I`.
pub fn lift_representative(
    ring: &RingTable,
    structure: &StructureCache,
    ideal: &SubsetHandle,
    x: ElementId,
    weak: bool,
) -> Option<ElementId> {
    structure
        .idempotents()
        .iter()
        .copied()
        .find(|&e| ideal.contains(ring.sub(e, x)) || (weak && ideal.contains(ring.add(e, x))))
}

fn lift_all(
    ring: &RingTable,
    structure: &StructureCache,
    ideal: &SubsetHandle,
    weak: bool,
) -> Result<LiftReport> {
    let (q, proj) = quotient(ring, ideal)?;
    let mut reps = vec![None; q.order()];
    for x in ring.elements() {
        reps[proj[x.index()].index()].get_or_insert(x);
    }
    let mut lifts = Vec::new();
    for c in q.elements() {
        if q.mul(c, c) != c {
            continue;
        }
        let rep = reps[c.index()].expect("projection is onto");
        lifts.push((
            c,
            rep,
            lift_representative(ring, structure, ideal, rep, weak),
        ));
    }
    Ok(LiftReport {
        holds: lifts.iter().all(|l| l.2.is_some()),
        lifts,
    })
}

/// Idempotents lift weakly modulo `ideal`: every idempotent coset `x + I`
/// has an idempotent `e` with `e - x ∈ I` or `e + x ∈ I`.
pub fn lifts_idempotents_weakly(
    ring: &RingTable,
    structure: &StructureCache,
    ideal: &SubsetHandle,
) -> Result<LiftReport> {
    lift_all(ring, structure, ideal, true)
}

/// Classical lifting: every idempotent coset contains an idempotent.
pub fn lifts_idempotents(
    ring: &RingTable,
    structure: &StructureCache,
    ideal: &SubsetHandle,
) -> Result<LiftReport> {
    lift_all(ring, structure, ideal, false)
}

/// `4·p^(k-1)`: how many elements of `Z(p^k)` can be of the form `±n ± e`
/// when the only idempotents are 0 and 1. `p` is assumed prime, `k >= 1`.
pub fn nil_clean_count_bound(p: u64, k: u32) -> u128 {
    4 * (p as u128).pow(k.saturating_sub(1))
}
