use super::{ElementId, RingTable, SubsetHandle};

/// Units, idempotents, nilpotents and the Jacobson radical of a ring.
///
/// The radical is computed by quasi-regularity: `x ∈ J(R)` iff `1 - r·x` is a
/// unit for every `r`. In a finite ring a one-sided inverse is two-sided, so
/// this one-sided test is complete.
#[derive(Debug, Clone)]
pub struct StructureCache {
    ring_uid: u64,
    inverse: Vec<Option<ElementId>>,
    units: Vec<ElementId>,
    is_idem: Vec<bool>,
    idempotents: Vec<ElementId>,
    nil_index: Vec<Option<u32>>,
    nilpotents: Vec<ElementId>,
    in_radical: Vec<bool>,
    radical: Vec<ElementId>,
}

impl StructureCache {
    pub fn new(ring: &RingTable) -> Self {
        let n = ring.order();
        let one = ring.one();

        let mut inverse = vec![None; n];
        for x in ring.elements() {
            if inverse[x.index()].is_some() {
                continue;
            }
            if let Some(y) = ring
                .elements()
                .find(|&y| ring.mul(x, y) == one && ring.mul(y, x) == one)
            {
                inverse[x.index()] = Some(y);
                inverse[y.index()] = Some(x);
            }
        }
        let units = collect(&inverse, |v| v.is_some());

        let is_idem: Vec<bool> = ring.elements().map(|e| ring.mul(e, e) == e).collect();
        let idempotents = collect(&is_idem, |&b| b);

        // x is nilpotent iff some power x^k with k <= |R| vanishes
        let nil_index: Vec<Option<u32>> = ring
            .elements()
            .map(|x| {
                let mut p = x;
                for k in 1..=n {
                    if p == ring.zero() {
                        return Some(k as u32);
                    }
                    p = ring.mul(p, x);
                }
                None
            })
            .collect();
        let nilpotents = collect(&nil_index, |v| v.is_some());

        let in_radical: Vec<bool> = ring
            .elements()
            .map(|x| {
                ring.elements()
                    .all(|r| inverse[ring.sub(one, ring.mul(r, x)).index()].is_some())
            })
            .collect();
        let radical = collect(&in_radical, |&b| b);

        StructureCache {
            ring_uid: ring.uid(),
            inverse,
            units,
            is_idem,
            idempotents,
            nil_index,
            nilpotents,
            in_radical,
            radical,
        }
    }

    pub(crate) fn ring_uid(&self) -> u64 {
        self.ring_uid
    }

    pub fn units(&self) -> &[ElementId] {
        &self.units
    }

    pub fn inverse(&self, x: ElementId) -> Option<ElementId> {
        self.inverse[x.index()]
    }

    pub fn is_unit(&self, x: ElementId) -> bool {
        self.inverse[x.index()].is_some()
    }

    pub fn idempotents(&self) -> &[ElementId] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, x: ElementId) -> bool {
        self.is_idem[x.index()]
    }

    pub fn nilpotents(&self) -> &[ElementId] {
        &self.nilpotents
    }

    pub fn is_nilpotent(&self, x: ElementId) -> bool {
        self.nil_index[x.index()].is_some()
    }

    /// Smallest `k >= 1` with `x^k = 0`.
    pub fn nilpotency_index(&self, x: ElementId) -> Option<u32> {
        self.nil_index[x.index()]
    }

    pub fn radical(&self) -> &[ElementId] {
        &self.radical
    }

    pub fn in_radical(&self, x: ElementId) -> bool {
        self.in_radical[x.index()]
    }

    pub fn idempotent_handle(&self, ring: &RingTable) -> SubsetHandle {
        SubsetHandle::from_sorted_unchecked(ring, self.idempotents.clone())
    }

    pub fn nil_handle(&self, ring: &RingTable) -> SubsetHandle {
        SubsetHandle::from_sorted_unchecked(ring, self.nilpotents.clone())
    }

    pub fn radical_handle(&self, ring: &RingTable) -> SubsetHandle {
        SubsetHandle::from_sorted_unchecked(ring, self.radical.clone())
    }

    /// Every element of the ring is idempotent.
    pub fn is_boolean(&self) -> bool {
        self.idempotents.len() == self.is_idem.len()
    }
}

fn collect<T>(v: &[T], keep: impl Fn(&T) -> bool) -> Vec<ElementId> {
    v.iter()
        .enumerate()
        .filter(|(_, t)| keep(t))
        .map(|(i, _)| ElementId(i as u32))
        .collect()
}
