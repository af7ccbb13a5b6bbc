use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::{ElementId, RingTable};
use crate::error::{Error, Result};

/// A subset of a specific ring, with its ideal-theoretic flags.
///
/// Members are kept sorted. Handles order canonically by `(size, members)`.
#[derive(Debug, Clone, Serialize)]
pub struct SubsetHandle {
    #[serde(skip)]
    ring_uid: u64,
    members: Vec<ElementId>,
    #[serde(skip)]
    mask: Vec<bool>,
    pub is_additive_subgroup: bool,
    pub is_left_ideal: bool,
    pub is_right_ideal: bool,
}

impl PartialEq for SubsetHandle {
    fn eq(&self, other: &Self) -> bool {
        self.ring_uid == other.ring_uid && self.members == other.members
    }
}

impl Eq for SubsetHandle {}

impl PartialOrd for SubsetHandle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SubsetHandle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl SubsetHandle {
    pub fn new(ring: &RingTable, members: impl IntoIterator<Item = ElementId>) -> Result<Self> {
        let mut mask = vec![false; ring.order()];
        for m in members {
            if m.index() >= ring.order() {
                return Err(Error::ElementOutOfRange {
                    index: m.index(),
                    order: ring.order(),
                });
            }
            mask[m.index()] = true;
        }
        Ok(Self::from_mask(ring, mask))
    }

    pub(crate) fn from_sorted_unchecked(ring: &RingTable, members: Vec<ElementId>) -> Self {
        let mut mask = vec![false; ring.order()];
        for m in &members {
            mask[m.index()] = true;
        }
        Self::from_mask(ring, mask)
    }

    pub(crate) fn from_mask(ring: &RingTable, mask: Vec<bool>) -> Self {
        let members: Vec<ElementId> = mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| ElementId(i as u32))
            .collect();
        let (additive, left, right) = compute_flags(ring, &members, &mask);
        SubsetHandle {
            ring_uid: ring.uid(),
            members,
            mask,
            is_additive_subgroup: additive,
            is_left_ideal: left,
            is_right_ideal: right,
        }
    }

    /// The whole ring.
    pub fn full(ring: &RingTable) -> Self {
        Self::from_mask(ring, vec![true; ring.order()])
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn belongs_to(&self, ring: &RingTable) -> bool {
        self.ring_uid == ring.uid() && self.mask.len() == ring.order()
    }

    pub(crate) fn check_ring(&self, ring: &RingTable) -> Result<()> {
        if self.belongs_to(ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    #[inline]
    pub fn contains(&self, x: ElementId) -> bool {
        self.mask.get(x.index()).copied().unwrap_or(false)
    }

    pub fn is_ideal(&self) -> bool {
        self.is_left_ideal && self.is_right_ideal
    }

    pub fn is_subset_of(&self, other: &SubsetHandle) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.members.iter().all(|&m| other.contains(m)))
    }

    pub fn intersection(&self, ring: &RingTable, other: &SubsetHandle) -> Result<SubsetHandle> {
        self.check_ring(ring)?;
        other.check_ring(ring)?;
        let mask = self
            .mask
            .iter()
            .zip(&other.mask)
            .map(|(a, b)| *a && *b)
            .collect();
        Ok(Self::from_mask(ring, mask))
    }

    pub fn same_members(&self, other: &SubsetHandle) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.members == other.members)
    }

    fn same_ring(&self, other: &SubsetHandle) -> Result<()> {
        if self.ring_uid == other.ring_uid {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Recompute the flags from the member set.
    pub fn flags_consistent(&self, ring: &RingTable) -> bool {
        let (a, l, r) = compute_flags(ring, &self.members, &self.mask);
        (a, l, r)
            == (
                self.is_additive_subgroup,
                self.is_left_ideal,
                self.is_right_ideal,
            )
    }

    pub fn ids(&self) -> Vec<u32> {
        self.members.iter().map(|m| m.0).collect()
    }
}

fn compute_flags(ring: &RingTable, members: &[ElementId], mask: &[bool]) -> (bool, bool, bool) {
    let additive = mask[ring.zero().index()]
        && members.iter().all(|&a| {
            mask[ring.neg(a).index()] && members.iter().all(|&b| mask[ring.add(a, b).index()])
        });
    if !additive {
        return (false, false, false);
    }
    let left = members
        .iter()
        .all(|&s| ring.elements().all(|r| mask[ring.mul(r, s).index()]));
    let right = members
        .iter()
        .all(|&s| ring.elements().all(|r| mask[ring.mul(s, r).index()]));
    (true, left, right)
}

/// `{ r : r·x = 0 }`, a left ideal.
pub fn ann_left(ring: &RingTable, x: ElementId) -> Result<SubsetHandle> {
    ring.element(x.index())?;
    let mask = ring
        .elements()
        .map(|r| ring.mul(r, x) == ring.zero())
        .collect();
    Ok(SubsetHandle::from_mask(ring, mask))
}

/// `{ r : x·r = 0 }`, a right ideal.
pub fn ann_right(ring: &RingTable, x: ElementId) -> Result<SubsetHandle> {
    ring.element(x.index())?;
    let mask = ring
        .elements()
        .map(|r| ring.mul(x, r) == ring.zero())
        .collect();
    Ok(SubsetHandle::from_mask(ring, mask))
}

/// `R·a`
pub fn left_multiples(ring: &RingTable, a: ElementId) -> Vec<bool> {
    let mut mask = vec![false; ring.order()];
    for r in ring.elements() {
        mask[ring.mul(r, a).index()] = true;
    }
    mask
}

/// `a·R`
pub fn right_multiples(ring: &RingTable, a: ElementId) -> Vec<bool> {
    let mut mask = vec![false; ring.order()];
    for r in ring.elements() {
        mask[ring.mul(a, r).index()] = true;
    }
    mask
}

/// Smallest two-sided ideal containing `gens`, by closure to a fixpoint.
pub fn ideal_generated_by(ring: &RingTable, gens: &[ElementId]) -> Result<SubsetHandle> {
    for g in gens {
        ring.element(g.index())?;
    }
    Ok(SubsetHandle::from_mask(ring, ideal_mask(ring, gens)))
}

fn ideal_mask(ring: &RingTable, gens: &[ElementId]) -> Vec<bool> {
    let mut mask = vec![false; ring.order()];
    let mut members = Vec::new();
    let mut queue = VecDeque::new();
    let push = |x: ElementId,
                mask: &mut Vec<bool>,
                members: &mut Vec<ElementId>,
                queue: &mut VecDeque<ElementId>| {
        if !mask[x.index()] {
            mask[x.index()] = true;
            members.push(x);
            queue.push_back(x);
        }
    };
    push(ring.zero(), &mut mask, &mut members, &mut queue);
    for &g in gens {
        push(g, &mut mask, &mut members, &mut queue);
    }
    while let Some(a) = queue.pop_front() {
        for r in ring.elements() {
            push(ring.mul(r, a), &mut mask, &mut members, &mut queue);
            push(ring.mul(a, r), &mut mask, &mut members, &mut queue);
        }
        let snapshot = members.len();
        for i in 0..snapshot {
            let b = members[i];
            push(ring.add(a, b), &mut mask, &mut members, &mut queue);
        }
    }
    mask
}

/// Every two-sided ideal of the ring, in canonical order.
///
/// Principal ideals are generated first, then the family is saturated under
/// pairwise sums. Every ideal of a finite ring is a finite sum of principal
/// ideals, so the saturation is complete.
pub fn all_ideals(ring: &RingTable) -> Vec<SubsetHandle> {
    let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut family: Vec<Vec<bool>> = Vec::new();
    for x in ring.elements() {
        let m = ideal_mask(ring, &[x]);
        if seen.insert(m.clone()) {
            family.push(m);
        }
    }
    let mut i = 0;
    while i < family.len() {
        let mut j = 0;
        while j < i {
            let sum = ideal_sum(ring, &family[i], &family[j]);
            if seen.insert(sum.clone()) {
                family.push(sum);
            }
            j += 1;
        }
        i += 1;
    }
    let mut ideals: Vec<SubsetHandle> = family
        .into_iter()
        .map(|m| SubsetHandle::from_mask(ring, m))
        .collect();
    ideals.sort();
    ideals
}

fn ideal_sum(ring: &RingTable, a: &[bool], b: &[bool]) -> Vec<bool> {
    let am: Vec<usize> = (0..a.len()).filter(|&i| a[i]).collect();
    let bm: Vec<usize> = (0..b.len()).filter(|&i| b[i]).collect();
    let mut mask = vec![false; ring.order()];
    for &x in &am {
        for &y in &bm {
            mask[ring.add(ElementId(x as u32), ElementId(y as u32)).index()] = true;
        }
    }
    mask
}

/// All maximal proper two-sided ideals, in canonical order.
pub fn maximal_ideals(ring: &RingTable) -> Vec<SubsetHandle> {
    let proper: Vec<SubsetHandle> = all_ideals(ring)
        .into_iter()
        .filter(|i| i.len() < ring.order())
        .collect();
    proper
        .iter()
        .filter(|i| {
            !proper
                .iter()
                .any(|j| j.len() > i.len() && i.members.iter().all(|&m| j.contains(m)))
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> Vec<ElementId> {
        v.iter().map(|&i| ElementId(i)).collect()
    }

    #[test]
    fn annihilators_in_z6() {
        let z6 = RingTable::zn(6).unwrap();
        assert_eq!(ann_left(&z6, ElementId(0)).unwrap().len(), 6);
        assert_eq!(ann_left(&z6, ElementId(1)).unwrap().members(), ids(&[0]));
        let a3 = ann_left(&z6, ElementId(3)).unwrap();
        assert_eq!(a3.members(), ids(&[0, 2, 4]));
        assert!(a3.is_left_ideal);
        assert!(ann_right(&z6, ElementId(3)).unwrap().is_right_ideal);
        assert!(ann_left(&z6, ElementId(9)).is_err());
    }

    #[test]
    fn generated_ideals() {
        let z6 = RingTable::zn(6).unwrap();
        assert_eq!(ideal_generated_by(&z6, &[]).unwrap().members(), ids(&[0]));
        assert_eq!(
            ideal_generated_by(&z6, &ids(&[2])).unwrap().members(),
            ids(&[0, 2, 4])
        );
        let z9 = RingTable::zn(9).unwrap();
        let i = ideal_generated_by(&z9, &ids(&[3])).unwrap();
        assert_eq!(i.members(), ids(&[0, 3, 6]));
        assert!(i.is_ideal());
        assert_eq!(ideal_generated_by(&z6, &ids(&[2, 3])).unwrap().len(), 6);
    }

    #[test]
    fn maximal_ideals_of_small_zn() {
        let z9 = RingTable::zn(9).unwrap();
        let m = maximal_ideals(&z9);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].members(), ids(&[0, 3, 6]));

        let z6 = RingTable::zn(6).unwrap();
        let m: Vec<Vec<u32>> = maximal_ideals(&z6).iter().map(|h| h.ids()).collect();
        assert_eq!(m, vec![vec![0, 3], vec![0, 2, 4]]);

        let z2 = RingTable::zn(2).unwrap();
        let m = maximal_ideals(&z2);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].members(), ids(&[0]));

        assert!(maximal_ideals(&RingTable::zn(1).unwrap()).is_empty());
    }

    #[test]
    fn ideal_count_of_zn_is_divisor_count() {
        for n in 1..=40usize {
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(
                all_ideals(&RingTable::zn(n).unwrap()).len(),
                divisors,
                "n = {n}"
            );
        }
    }

    #[test]
    fn containment_utilities() {
        let z6 = RingTable::zn(6).unwrap();
        let zero = SubsetHandle::new(&z6, ids(&[0])).unwrap();
        let evens = SubsetHandle::new(&z6, ids(&[0, 2, 4])).unwrap();
        let threes = SubsetHandle::new(&z6, ids(&[0, 3])).unwrap();
        assert!(zero.is_subset_of(&evens).unwrap());
        assert!(!threes.is_subset_of(&evens).unwrap());
        assert!(evens.flags_consistent(&z6));

        let other = RingTable::zn(6).unwrap();
        let foreign = SubsetHandle::new(&other, ids(&[0])).unwrap();
        assert_eq!(zero.is_subset_of(&foreign), Err(Error::RingMismatch));
        assert!(SubsetHandle::new(&z6, ids(&[7])).is_err());
    }

    #[test]
    fn flags_on_non_subgroup() {
        let z6 = RingTable::zn(6).unwrap();
        let s = SubsetHandle::new(&z6, ids(&[0, 1])).unwrap();
        assert!(!s.is_additive_subgroup);
        assert!(!s.is_left_ideal);
        assert!(s.flags_consistent(&z6));
    }
}
