//! Classification sweeps over `Z(n)`.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{holds, DecompKind};
use crate::error::Result;
use crate::ring::{RingTable, StructureCache};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    /// One verdict per requested kind, in request order.
    pub verdicts: Vec<bool>,
    /// Weak nil clean but not nil clean.
    pub weak_not_nil: bool,
}

/// Verdicts for `Z(n)` over a range of `n`, in ascending order.
pub fn sweep_zn(range: RangeInclusive<usize>, kinds: &[DecompKind]) -> Result<Vec<SweepRow>> {
    if kinds.iter().any(|k| k.restriction().is_some()) {
        return Err(crate::Error::InvalidS);
    }
    range
        .into_par_iter()
        .map(|n| {
            let r = RingTable::zn(n)?;
            let s = StructureCache::new(&r);
            let verdicts = kinds.iter().map(|k| holds(&r, &s, k)).collect();
            let weak_not_nil =
                holds(&r, &s, &DecompKind::WeakNilClean) && !holds(&r, &s, &DecompKind::NilClean);
            Ok(SweepRow {
                n,
                verdicts,
                weak_not_nil,
            })
        })
        .collect()
}

/// `n = 2^r·3^t` with `r >= 0`, `t >= 1`.
pub fn is_two_three_form(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n;
    while m.is_multiple_of(2) {
        m /= 2;
    }
    let mut threes = 0;
    while m.is_multiple_of(3) {
        m /= 3;
        threes += 1;
    }
    m == 1 && threes >= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_three_form() {
        let hits: Vec<usize> = (1..=54).filter(|&n| is_two_three_form(n)).collect();
        assert_eq!(hits, vec![3, 6, 9, 12, 18, 24, 27, 36, 48, 54]);
    }

    #[test]
    fn small_sweep() {
        let rows = sweep_zn(2..=12, &[DecompKind::WeakNilClean, DecompKind::NilClean]).unwrap();
        assert_eq!(rows.len(), 11);
        let flagged: Vec<usize> = rows
            .iter()
            .filter(|r| r.weak_not_nil)
            .map(|r| r.n)
            .collect();
        assert_eq!(flagged, vec![3, 6, 9, 12]);
        let row8 = rows.iter().find(|r| r.n == 8).unwrap();
        assert_eq!(row8.verdicts, vec![true, true]);
    }
}
