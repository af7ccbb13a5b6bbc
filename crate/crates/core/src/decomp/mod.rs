//! Clean-type decompositions with certificates.
//!
//! Every notion here has the shape `x = c + e` or `x = c - e` where `e` is an
//! idempotent and `c` (the *companion*) is a nilpotent, a unit, or an element
//! of the Jacobson radical. Kinds differ in which companions are allowed,
//! whether the minus sign is allowed, whether `c` and `e` must commute, and
//! whether `e` is restricted to a prescribed set `S`.
//!
//! Searches are exhaustive and deterministic: idempotents in ascending index
//! order, `+` before `-`. The companion is determined by `x` and `e`, so each
//! search is linear in the number of idempotents.

mod props;

pub use props::{
    is_exchange, is_strongly_pi_regular, lift_representative, lifts_idempotents,
    lifts_idempotents_weakly, nil_clean_count_bound, ExchangeReport, LiftReport, PiRegularReport,
    Side,
};

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::{ElementId, RingTable, StructureCache, SubsetHandle};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompanionClass {
    Nilpotent,
    Unit,
    Radical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompKind {
    Clean,
    StronglyClean,
    WeaklyClean,
    NilClean,
    StronglyNilClean,
    WeakNilClean,
    WeakStarNilClean,
    SWeakNilClean(Arc<SubsetHandle>),
    SWeakStarNilClean(Arc<SubsetHandle>),
    JClean,
    StronglyJClean,
    WeakJClean,
    WeakStarJClean,
}

impl DecompKind {
    /// Kinds that need no extra parameter.
    pub const PLAIN: [DecompKind; 11] = [
        DecompKind::Clean,
        DecompKind::StronglyClean,
        DecompKind::WeaklyClean,
        DecompKind::NilClean,
        DecompKind::StronglyNilClean,
        DecompKind::WeakNilClean,
        DecompKind::WeakStarNilClean,
        DecompKind::JClean,
        DecompKind::StronglyJClean,
        DecompKind::WeakJClean,
        DecompKind::WeakStarJClean,
    ];

    pub fn companion(&self) -> CompanionClass {
        use DecompKind::*;
        match self {
            Clean | StronglyClean | WeaklyClean => CompanionClass::Unit,
            NilClean | StronglyNilClean | WeakNilClean | WeakStarNilClean | SWeakNilClean(_)
            | SWeakStarNilClean(_) => CompanionClass::Nilpotent,
            JClean | StronglyJClean | WeakJClean | WeakStarJClean => CompanionClass::Radical,
        }
    }

    /// Whether `x = c - e` is accepted in addition to `x = c + e`.
    pub fn allows_minus(&self) -> bool {
        use DecompKind::*;
        matches!(
            self,
            WeaklyClean
                | WeakNilClean
                | WeakStarNilClean
                | SWeakNilClean(_)
                | SWeakStarNilClean(_)
                | WeakJClean
                | WeakStarJClean
        )
    }

    pub fn requires_commuting(&self) -> bool {
        use DecompKind::*;
        matches!(
            self,
            StronglyClean
                | StronglyNilClean
                | WeakStarNilClean
                | SWeakStarNilClean(_)
                | StronglyJClean
                | WeakStarJClean
        )
    }

    pub fn restriction(&self) -> Option<&SubsetHandle> {
        match self {
            DecompKind::SWeakNilClean(s) | DecompKind::SWeakStarNilClean(s) => Some(s),
            _ => None,
        }
    }

    /// Kebab-case name; `S` kinds append the member list of `S`.
    pub fn name(&self) -> String {
        use DecompKind::*;
        let base = match self {
            Clean => "clean",
            StronglyClean => "strongly-clean",
            WeaklyClean => "weakly-clean",
            NilClean => "nil-clean",
            StronglyNilClean => "strongly-nil-clean",
            WeakNilClean => "weak-nil-clean",
            WeakStarNilClean => "weak-star-nil-clean",
            SWeakNilClean(_) => "s-weak-nil-clean",
            SWeakStarNilClean(_) => "s-weak-star-nil-clean",
            JClean => "j-clean",
            StronglyJClean => "strongly-j-clean",
            WeakJClean => "weak-j-clean",
            WeakStarJClean => "weak-star-j-clean",
        };
        match self.restriction() {
            Some(s) => {
                let ids: Vec<String> = s.members().iter().map(|m| m.to_string()).collect();
                format!("{base}[{}]", ids.join(","))
            }
            None => base.to_string(),
        }
    }

    /// Parse a plain kind name. `weak*-nil-clean` is accepted as an alias of
    /// `weak-star-nil-clean` (likewise for the J variant).
    pub fn from_name(name: &str) -> Result<DecompKind> {
        let norm = name
            .trim()
            .to_ascii_lowercase()
            .replace("weak*", "weak-star")
            .replace('_', "-");
        DecompKind::PLAIN
            .iter()
            .find(|k| k.name() == norm)
            .cloned()
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// `S`-restricted kind, with `S` checked against the idempotents.
    pub fn with_restriction(
        ring: &RingTable,
        structure: &StructureCache,
        s: SubsetHandle,
        commuting: bool,
    ) -> Result<DecompKind> {
        validate_s(ring, structure, &s)?;
        let s = Arc::new(s);
        Ok(if commuting {
            DecompKind::SWeakStarNilClean(s)
        } else {
            DecompKind::SWeakNilClean(s)
        })
    }
}

impl fmt::Display for DecompKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for DecompKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.name())
    }
}

fn validate_s(ring: &RingTable, structure: &StructureCache, s: &SubsetHandle) -> Result<()> {
    s.check_ring(ring)?;
    if s.is_empty() || s.members().iter().any(|&e| !structure.is_idempotent(e)) {
        return Err(Error::InvalidS);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.symbol())
    }
}

/// `target = companion + idempotent` (sign `+`) or
/// `target = companion - idempotent` (sign `-`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompCert {
    pub kind: DecompKind,
    pub target: ElementId,
    pub idempotent: ElementId,
    pub companion: ElementId,
    pub sign: Sign,
    pub commutes: bool,
}

impl Serialize for DecompCert {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Record {
            x: ElementId,
            e: ElementId,
            companion: ElementId,
            sign: Sign,
            commutes: bool,
        }
        Record {
            x: self.target,
            e: self.idempotent,
            companion: self.companion,
            sign: self.sign,
            commutes: self.commutes,
        }
        .serialize(serializer)
    }
}

impl DecompCert {
    /// Re-evaluate the certificate from scratch.
    pub fn verify(&self, ring: &RingTable, structure: &StructureCache) -> bool {
        let value = match self.sign {
            Sign::Plus => ring.add(self.companion, self.idempotent),
            Sign::Minus => ring.sub(self.companion, self.idempotent),
        };
        let class_ok = match self.kind.companion() {
            CompanionClass::Nilpotent => structure.is_nilpotent(self.companion),
            CompanionClass::Unit => structure.is_unit(self.companion),
            CompanionClass::Radical => structure.in_radical(self.companion),
        };
        let commutes = ring.commutes(self.companion, self.idempotent);
        let restricted_ok = self
            .kind
            .restriction()
            .is_none_or(|s| s.contains(self.idempotent));
        value == self.target
            && class_ok
            && structure.is_idempotent(self.idempotent)
            && restricted_ok
            && commutes == self.commutes
            && (self.commutes || !self.kind.requires_commuting())
            && (self.sign == Sign::Plus || self.kind.allows_minus())
    }
}

fn in_class(structure: &StructureCache, class: CompanionClass, c: ElementId) -> bool {
    match class {
        CompanionClass::Nilpotent => structure.is_nilpotent(c),
        CompanionClass::Unit => structure.is_unit(c),
        CompanionClass::Radical => structure.in_radical(c),
    }
}

fn check_inputs(
    ring: &RingTable,
    structure: &StructureCache,
    x: ElementId,
    kind: &DecompKind,
) -> Result<()> {
    ring.element(x.index())?;
    if structure.ring_uid() != ring.uid() {
        return Err(Error::RingMismatch);
    }
    if let Some(s) = kind.restriction() {
        validate_s(ring, structure, s)?;
    }
    Ok(())
}

/// Candidate certificates for `x` in canonical search order.
fn candidates<'a>(
    ring: &'a RingTable,
    structure: &'a StructureCache,
    x: ElementId,
    kind: &'a DecompKind,
) -> impl Iterator<Item = DecompCert> + 'a {
    let signs: &'static [Sign] = if kind.allows_minus() {
        &[Sign::Plus, Sign::Minus]
    } else {
        &[Sign::Plus]
    };
    let class = kind.companion();
    let pool: &'a [ElementId] = match kind.restriction() {
        Some(s) => s.members(),
        None => structure.idempotents(),
    };
    pool.iter().flat_map(move |&e| {
        signs.iter().filter_map(move |&sign| {
            let companion = match sign {
                Sign::Plus => ring.sub(x, e),
                Sign::Minus => ring.add(x, e),
            };
            if !in_class(structure, class, companion) {
                return None;
            }
            let commutes = ring.commutes(companion, e);
            if kind.requires_commuting() && !commutes {
                return None;
            }
            Some(DecompCert {
                kind: kind.clone(),
                target: x,
                idempotent: e,
                companion,
                sign,
                commutes,
            })
        })
    })
}

/// First certificate for `x` under the canonical search order, if any.
pub fn find_decomp(
    ring: &RingTable,
    structure: &StructureCache,
    x: ElementId,
    kind: &DecompKind,
) -> Result<Option<DecompCert>> {
    check_inputs(ring, structure, x, kind)?;
    Ok(candidates(ring, structure, x, kind).next())
}

/// Every certificate for `x`, in canonical order.
pub fn all_decomps(
    ring: &RingTable,
    structure: &StructureCache,
    x: ElementId,
    kind: &DecompKind,
) -> Result<Vec<DecompCert>> {
    check_inputs(ring, structure, x, kind)?;
    Ok(candidates(ring, structure, x, kind).collect())
}

#[derive(Debug, Clone)]
pub struct RingVerdict {
    pub kind: DecompKind,
    pub holds: bool,
    /// The smallest element without a decomposition.
    pub witness_failure: Option<ElementId>,
    /// One certificate per element, ordered by element; empty unless `holds`.
    pub certs: Vec<DecompCert>,
}

impl RingVerdict {
    pub fn record<'a>(&'a self, ring_label: &'a str) -> VerdictRecord<'a> {
        VerdictRecord {
            ring: ring_label,
            kind: &self.kind,
            holds: self.holds,
            witness: self.witness_failure,
            certs: &self.certs,
        }
    }
}

/// JSON shape of a verdict: `{ring, kind, holds, witness, certs}`.
#[derive(Debug, Serialize)]
pub struct VerdictRecord<'a> {
    pub ring: &'a str,
    pub kind: &'a DecompKind,
    pub holds: bool,
    pub witness: Option<ElementId>,
    pub certs: &'a [DecompCert],
}

/// Decide whether every element of the ring admits a decomposition of the
/// given kind. Stops at the first failing element.
pub fn ring_verdict(
    ring: &RingTable,
    structure: &StructureCache,
    kind: &DecompKind,
) -> Result<RingVerdict> {
    check_inputs(ring, structure, ring.zero(), kind)?;
    let mut certs = Vec::with_capacity(ring.order());
    for x in ring.elements() {
        match candidates(ring, structure, x, kind).next() {
            Some(c) => certs.push(c),
            None => {
                return Ok(RingVerdict {
                    kind: kind.clone(),
                    holds: false,
                    witness_failure: Some(x),
                    certs: Vec::new(),
                })
            }
        }
    }
    Ok(RingVerdict {
        kind: kind.clone(),
        holds: true,
        witness_failure: None,
        certs,
    })
}

/// Shorthand for `ring_verdict(..).holds` on a plain kind.
pub fn holds(ring: &RingTable, structure: &StructureCache, kind: &DecompKind) -> bool {
    ring.elements()
        .all(|x| candidates(ring, structure, x, kind).next().is_some())
}

/// Whether `x` admits a decomposition of the given kind.
pub fn element_has(
    ring: &RingTable,
    structure: &StructureCache,
    x: ElementId,
    kind: &DecompKind,
) -> bool {
    candidates(ring, structure, x, kind).next().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_str;
    use crate::BuildOptions;

    fn ring(text: &str) -> (RingTable, StructureCache) {
        let t = build_str(text, &BuildOptions::default()).unwrap().table;
        let s = StructureCache::new(&t);
        (t, s)
    }

    #[test]
    fn z6_element_certificates() {
        let (r, s) = ring("Z(6)");
        let c = find_decomp(&r, &s, ElementId(5), &DecompKind::WeakNilClean)
            .unwrap()
            .unwrap();
        assert_eq!(
            (c.companion, c.idempotent, c.sign),
            (ElementId(0), ElementId(1), Sign::Minus)
        );
        let c = find_decomp(&r, &s, ElementId(2), &DecompKind::WeakNilClean)
            .unwrap()
            .unwrap();
        assert_eq!(
            (c.companion, c.idempotent, c.sign),
            (ElementId(0), ElementId(4), Sign::Minus)
        );
        assert!(find_decomp(&r, &s, ElementId(2), &DecompKind::NilClean)
            .unwrap()
            .is_none());
        assert!(find_decomp(&r, &s, ElementId(5), &DecompKind::NilClean)
            .unwrap()
            .is_none());
    }

    #[test]
    fn zero_is_strongly_nil_clean_everywhere() {
        for text in ["Z(1)", "Z(6)", "M2(Z(2))", "T2(Z(3))"] {
            let (r, s) = ring(text);
            let c = find_decomp(&r, &s, r.zero(), &DecompKind::StronglyNilClean)
                .unwrap()
                .unwrap();
            assert_eq!(
                (c.companion, c.idempotent, c.sign, c.commutes),
                (r.zero(), r.zero(), Sign::Plus, true)
            );
        }
    }

    #[test]
    fn weak_j_clean_in_z4() {
        let (r, s) = ring("Z(4)");
        let c = find_decomp(&r, &s, ElementId(3), &DecompKind::WeakJClean)
            .unwrap()
            .unwrap();
        assert_eq!(
            (c.companion, c.idempotent, c.sign),
            (ElementId(2), ElementId(1), Sign::Plus)
        );
        assert!(c.verify(&r, &s));
    }

    #[test]
    fn ring_verdicts() {
        let (r, s) = ring("Z(6)");
        let v = ring_verdict(&r, &s, &DecompKind::WeakNilClean).unwrap();
        assert!(v.holds);
        assert_eq!(v.certs.len(), 6);
        assert!(v.certs.iter().all(|c| c.verify(&r, &s)));
        let v = ring_verdict(&r, &s, &DecompKind::NilClean).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness_failure, Some(ElementId(2)));

        let (r, s) = ring("T2(Z(3))");
        let v = ring_verdict(&r, &s, &DecompKind::WeakNilClean).unwrap();
        assert!(!v.holds);
        let w = v.witness_failure.unwrap();
        assert!(all_decomps(&r, &s, w, &DecompKind::WeakNilClean)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn s_kinds_validate_s() {
        let (r, s) = ring("Z(6)");
        let bad = SubsetHandle::new(&r, [ElementId(0), ElementId(2)]).unwrap();
        assert_eq!(
            DecompKind::with_restriction(&r, &s, bad.clone(), false),
            Err(Error::InvalidS)
        );
        let kind = DecompKind::SWeakNilClean(Arc::new(bad));
        assert_eq!(
            find_decomp(&r, &s, ElementId(1), &kind),
            Err(Error::InvalidS)
        );

        let s01 = SubsetHandle::new(&r, [r.zero(), r.one()]).unwrap();
        let kind = DecompKind::with_restriction(&r, &s, s01, false).unwrap();
        assert_eq!(kind.name(), "s-weak-nil-clean[0,1]");
        assert!(!ring_verdict(&r, &s, &kind).unwrap().holds);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in DecompKind::PLAIN.iter() {
            assert_eq!(&DecompKind::from_name(&k.name()).unwrap(), k);
        }
        assert_eq!(
            DecompKind::from_name("weak*-nil-clean").unwrap(),
            DecompKind::WeakStarNilClean
        );
        assert!(DecompKind::from_name("very-clean").is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let (r, s) = ring("Z(6)");
        let v = ring_verdict(&r, &s, &DecompKind::WeakNilClean).unwrap();
        let json = serde_json::to_string(&v.record(r.label())).unwrap();
        assert!(json.starts_with(r#"{"ring":"Z(6)","kind":"weak-nil-clean","holds":true,"witness":null,"certs":[{"x":0,"e":0,"companion":0,"sign":"+","commutes":true}"#));
    }

    #[test]
    fn cross_ring_structure_is_rejected() {
        let (r, _) = ring("Z(6)");
        let (_, other) = ring("Z(6)");
        assert_eq!(
            find_decomp(&r, &other, ElementId(1), &DecompKind::NilClean),
            Err(Error::RingMismatch)
        );
        assert!(find_decomp(
            &r,
            &StructureCache::new(&r),
            ElementId(6),
            &DecompKind::NilClean
        )
        .is_err());
    }
}
