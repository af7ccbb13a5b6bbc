//! Individual checks. Each returns `Ok(())` on pass and a [`Witness`] on
//! failure; applicability is decided separately by the registry.

use serde::Serialize;

use crate::construct::{
    build_with, corner, quotient, skew_constant_maps, BuildOptions, ModuleSpec, RingExpr,
};
use crate::decomp::{
    all_decomps, element_has, find_decomp, holds, is_exchange, is_strongly_pi_regular,
    lifts_idempotents, lifts_idempotents_weakly, nil_clean_count_bound, DecompCert, DecompKind,
    Side, Sign,
};
use crate::error::Result;
use crate::ring::{
    all_ideals, left_multiples, maximal_ideals, right_multiples, ElementId, RingTable,
    StructureCache, SubsetHandle,
};
use crate::sweep::is_two_three_form;

/// Elements (by index) and a short explanation of a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub elements: Vec<u32>,
    pub note: String,
}

impl Witness {
    pub fn new(elements: impl IntoIterator<Item = ElementId>, note: impl Into<String>) -> Self {
        Witness {
            elements: elements.into_iter().map(|e| e.0).collect(),
            note: note.into(),
        }
    }
}

pub type CheckResult = std::result::Result<(), Witness>;

fn ensure(cond: bool, witness: impl FnOnce() -> Witness) -> CheckResult {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

/// `J(R) ⊆ Nil(R)`.
pub fn check_j_subset_nil(ring: &RingTable, s: &StructureCache) -> CheckResult {
    let _ = ring;
    match s.radical().iter().find(|&&x| !s.is_nilpotent(x)) {
        Some(&x) => Err(Witness::new([x], "radical element is not nilpotent")),
        None => Ok(()),
    }
}

/// `R/I` is weak nil clean.
pub fn check_quotient_preservation(ring: &RingTable, ideal: &SubsetHandle) -> Result<CheckResult> {
    let (q, _) = quotient(ring, ideal)?;
    let qs = StructureCache::new(&q);
    Ok(ensure(holds(&q, &qs, &DecompKind::WeakNilClean), || {
        Witness::new(
            ideal.members().iter().copied(),
            "quotient by this ideal is not weak nil clean",
        )
    }))
}

/// The product is weak nil clean iff every factor is and at most one factor
/// is not nil clean; the product is nil clean iff every factor is.
pub fn check_product_theorem(factors: &[RingExpr], opts: &BuildOptions) -> Result<CheckResult> {
    let mut factor_wnc = Vec::new();
    let mut factor_nc = Vec::new();
    for f in factors {
        let t = build_with(f, opts)?.table;
        let s = StructureCache::new(&t);
        factor_wnc.push(holds(&t, &s, &DecompKind::WeakNilClean));
        factor_nc.push(holds(&t, &s, &DecompKind::NilClean));
    }
    let product = build_with(&RingExpr::Prod(factors.to_vec()), opts)?.table;
    let ps = StructureCache::new(&product);
    let predicted_wnc =
        factor_wnc.iter().all(|&b| b) && factor_nc.iter().filter(|&&b| !b).count() <= 1;
    let predicted_nc = factor_nc.iter().all(|&b| b);
    let wnc = crate::decomp::ring_verdict(&product, &ps, &DecompKind::WeakNilClean)?;
    let nc = holds(&product, &ps, &DecompKind::NilClean);
    Ok(if wnc.holds != predicted_wnc {
        Err(Witness::new(
            wnc.witness_failure,
            format!(
                "product weak nil clean = {}, factor criterion predicts {}",
                wnc.holds, predicted_wnc
            ),
        ))
    } else if nc != predicted_nc {
        Err(Witness::new(
            [],
            format!("product nil clean = {nc}, factors predict {predicted_nc}"),
        ))
    } else {
        Ok(())
    })
}

/// For commutative `R`: `R` weak nil clean ⇒ `R/Nil(R)` weak nil clean, and
/// `R/Nil(R)` weak nil clean with idempotents lifting modulo `Nil(R)` ⇒ `R`
/// weak nil clean.
pub fn check_nilradical_quotient(ring: &RingTable, s: &StructureCache) -> Result<CheckResult> {
    let nil = s.nil_handle(ring);
    if !nil.is_ideal() {
        return Ok(Err(Witness::new([], "nilpotents do not form an ideal")));
    }
    let (q, _) = quotient(ring, &nil)?;
    let qs = StructureCache::new(&q);
    let r_wnc = holds(ring, s, &DecompKind::WeakNilClean);
    let q_wnc = holds(&q, &qs, &DecompKind::WeakNilClean);
    if r_wnc && !q_wnc {
        return Ok(Err(Witness::new(
            [],
            "ring is weak nil clean but R/Nil(R) is not",
        )));
    }
    let lifts = lifts_idempotents(ring, s, &nil)?;
    if q_wnc && lifts.holds && !r_wnc {
        return Ok(Err(Witness::new(
            [],
            "R/Nil(R) weak nil clean and idempotents lift, but R is not",
        )));
    }
    Ok(Ok(()))
}

/// `R` weak nil clean ⇔ `R(M)` weak nil clean.
pub fn check_idealization(
    base: &RingExpr,
    module: &ModuleSpec,
    opts: &BuildOptions,
) -> Result<CheckResult> {
    let r = build_with(base, opts)?.table;
    let rs = StructureCache::new(&r);
    let rm = build_with(
        &RingExpr::Idealize(Box::new(base.clone()), module.clone()),
        opts,
    )?
    .table;
    let rms = StructureCache::new(&rm);
    let a = holds(&r, &rs, &DecompKind::WeakNilClean);
    let b = holds(&rm, &rms, &DecompKind::WeakNilClean);
    Ok(ensure(a == b, || {
        Witness::new(
            [],
            format!("base weak nil clean = {a}, idealization weak nil clean = {b}"),
        )
    }))
}

fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Classification facts for a single `Z(n)` given its two verdicts.
pub fn check_zn_member(n: usize, weak_nil_clean: bool, nil_clean: bool) -> CheckResult {
    let weak_not_nil = weak_nil_clean && !nil_clean;
    if weak_not_nil != is_two_three_form(n) {
        return Err(Witness::new(
            [],
            format!("Z({n}): weak-not-nil = {weak_not_nil}"),
        ));
    }
    if let Some((p, k)) = prime_power(n) {
        if p == 2 && !nil_clean {
            return Err(Witness::new(
                [],
                format!("Z({n}) is a power of two but not nil clean"),
            ));
        }
        if p == 3 && !(weak_nil_clean && !nil_clean) {
            return Err(Witness::new(
                [],
                format!("Z({n}) is a power of three but not weak-not-nil"),
            ));
        }
        if p > 3 {
            if weak_nil_clean {
                return Err(Witness::new(
                    [],
                    format!("Z({n}) with p = {p} > 3 is weak nil clean"),
                ));
            }
            if nil_clean_count_bound(p as u64, k) >= (p as u128).pow(k) {
                return Err(Witness::new(
                    [],
                    format!("count bound does not exclude Z({n})"),
                ));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ZnClassification {
    pub n_max: usize,
    /// `n` with `Z(n)` weak nil clean but not nil clean.
    pub weak_not_nil: Vec<usize>,
    /// `n` where the exhaustive verdicts disagree with the `2^r·3^t` form
    /// or with the prime-power facts.
    pub mismatches: Vec<usize>,
}

/// Sweep `Z(n)` for `2 <= n <= n_max`.
pub fn check_zn_classification(n_max: usize) -> Result<ZnClassification> {
    let rows = crate::sweep::sweep_zn(
        2..=n_max.max(2),
        &[DecompKind::WeakNilClean, DecompKind::NilClean],
    )?;
    let weak_not_nil = rows
        .iter()
        .filter(|r| r.weak_not_nil)
        .map(|r| r.n)
        .collect();
    let mismatches = rows
        .iter()
        .filter(|r| check_zn_member(r.n, r.verdicts[0], r.verdicts[1]).is_err())
        .map(|r| r.n)
        .collect();
    Ok(ZnClassification {
        n_max,
        weak_not_nil,
        mismatches,
    })
}

/// For every decomposition `x = c ± e` of the given (commuting) kind:
/// `ann_l(x) ⊆ ann_l(e)`, `ann_r(x) ⊆ ann_r(e)`, `ann_l(x) ⊆ R(1-e)` and
/// `ann_r(x) ⊆ (1-e)R`. Returns how many decompositions were checked.
pub fn check_annihilator_lemmas(
    ring: &RingTable,
    s: &StructureCache,
    kind: &DecompKind,
) -> Result<std::result::Result<usize, Witness>> {
    let zero = ring.zero();
    let mut checked = 0;
    for x in ring.elements() {
        let decomps = all_decomps(ring, s, x, kind)?;
        if decomps.is_empty() {
            continue;
        }
        let ann_l: Vec<ElementId> = ring
            .elements()
            .filter(|&r| ring.mul(r, x) == zero)
            .collect();
        let ann_r: Vec<ElementId> = ring
            .elements()
            .filter(|&r| ring.mul(x, r) == zero)
            .collect();
        for d in decomps {
            let e = d.idempotent;
            let co = ring.sub(ring.one(), e);
            let r_co = left_multiples(ring, co);
            let co_r = right_multiples(ring, co);
            let fail = |r: ElementId, what: &str| Witness::new([x, e, r], format!("{what} fails"));
            if let Some(&r) = ann_l.iter().find(|&&r| ring.mul(r, e) != zero) {
                return Ok(Err(fail(r, "ann_l(x) ⊆ ann_l(e)")));
            }
            if let Some(&r) = ann_r.iter().find(|&&r| ring.mul(e, r) != zero) {
                return Ok(Err(fail(r, "ann_r(x) ⊆ ann_r(e)")));
            }
            if let Some(&r) = ann_l.iter().find(|&&r| !r_co[r.index()]) {
                return Ok(Err(fail(r, "ann_l(x) ⊆ R(1-e)")));
            }
            if let Some(&r) = ann_r.iter().find(|&&r| !co_r[r.index()]) {
                return Ok(Err(fail(r, "ann_r(x) ⊆ (1-e)R")));
            }
            checked += 1;
        }
    }
    Ok(Ok(checked))
}

/// For `x ∈ fRf`: `x` has a decomposition of `kind` in `R` iff it has one in
/// `fRf`, and every decomposition `x = c ± e` in `R` projects to the
/// decomposition `x = fcf ± fef` of `fRf`.
pub fn check_corner_theorem(
    ring: &RingTable,
    s: &StructureCache,
    f: ElementId,
    kind: &DecompKind,
) -> Result<CheckResult> {
    let (c, embed) = corner(ring, f)?;
    let cs = StructureCache::new(&c);
    let mut local = vec![None; ring.order()];
    for (i, e) in embed.iter().enumerate() {
        local[e.index()] = Some(ElementId(i as u32));
    }
    let squeeze = |a: ElementId| ring.mul(ring.mul(f, a), f);
    for y in c.elements() {
        let x = embed[y.index()];
        let in_ring = element_has(ring, s, x, kind);
        let in_corner = element_has(&c, &cs, y, kind);
        if in_ring != in_corner {
            return Ok(Err(Witness::new(
                [f, x],
                format!("decomposable in R = {in_ring}, in fRf = {in_corner}"),
            )));
        }
        for d in all_decomps(ring, s, x, kind)? {
            let (Some(comp), Some(idem)) = (
                local[squeeze(d.companion).index()],
                local[squeeze(d.idempotent).index()],
            ) else {
                return Ok(Err(Witness::new([f, x], "projection left the corner")));
            };
            let projected = DecompCert {
                kind: kind.clone(),
                target: y,
                idempotent: idem,
                companion: comp,
                sign: d.sign,
                commutes: c.commutes(comp, idem),
            };
            if !projected.verify(&c, &cs) {
                return Ok(Err(Witness::new(
                    [f, x, d.companion, d.idempotent],
                    "projected decomposition is not valid in fRf",
                )));
            }
        }
    }
    Ok(Ok(()))
}

/// Structure of a `{0,1}`-weak nil clean ring: exactly one maximal ideal,
/// `R = U(R) ∪ Nil(R)`, `U(R) = (1 + Nil(R)) ∪ (-1 + Nil(R))`, `Nil(R)` an
/// ideal equal to `J(R)`.
pub fn check_s_unique_maximal(ring: &RingTable, s: &StructureCache) -> CheckResult {
    if let Some(x) = ring
        .elements()
        .find(|&x| !s.is_unit(x) && !s.is_nilpotent(x))
    {
        return Err(Witness::new([x], "neither a unit nor nilpotent"));
    }
    let minus_one = ring.neg(ring.one());
    if let Some(&u) = s.units().iter().find(|&&u| {
        !s.is_nilpotent(ring.sub(u, ring.one())) && !s.is_nilpotent(ring.sub(u, minus_one))
    }) {
        return Err(Witness::new([u], "unit outside (1 + Nil) ∪ (-1 + Nil)"));
    }
    if !s.nil_handle(ring).is_ideal() {
        return Err(Witness::new([], "Nil(R) is not an ideal"));
    }
    if s.radical() != s.nilpotents() {
        return Err(Witness::new(
            s.radical().iter().copied(),
            "J(R) differs from Nil(R)",
        ));
    }
    let maximal = maximal_ideals(ring);
    ensure(maximal.len() == 1, || {
        Witness::new([], format!("{} maximal ideals", maximal.len()))
    })
}

/// `R` is `S`-weak* nil clean only if `S = Idem(R)`.
pub fn check_s_rigidity(
    ring: &RingTable,
    s: &StructureCache,
    subset: &SubsetHandle,
) -> Result<CheckResult> {
    let kind = DecompKind::with_restriction(ring, s, subset.clone(), true)?;
    let holds_here = holds(ring, s, &kind);
    Ok(ensure(
        !holds_here || subset.members() == s.idempotents(),
        || {
            Witness::new(
                subset.members().iter().copied(),
                "S-weak* nil clean with S a proper subset of Idem(R)",
            )
        },
    ))
}

/// Subsets of the idempotents tried by the rigidity check: all nonempty
/// subsets when there are at most eight idempotents, otherwise the full set
/// and each set missing one idempotent.
pub fn rigidity_subsets(ring: &RingTable, s: &StructureCache) -> Vec<SubsetHandle> {
    let idem = s.idempotents();
    let build = |keep: &dyn Fn(usize) -> bool| {
        SubsetHandle::new(
            ring,
            idem.iter()
                .enumerate()
                .filter(|(i, _)| keep(*i))
                .map(|(_, &e)| e),
        )
        .expect("idempotents are in range")
    };
    if idem.len() <= 8 {
        (1u32..(1 << idem.len()))
            .map(|mask| build(&|i| mask & (1 << i) != 0))
            .collect()
    } else {
        std::iter::once(build(&|_| true))
            .chain((0..idem.len()).map(|skip| build(&move |i| i != skip)))
            .collect()
    }
}

/// A weak* nil clean ring is an exchange ring (both side conventions).
pub fn check_weakstar_exchange(ring: &RingTable, s: &StructureCache) -> CheckResult {
    for side in [Side::Right, Side::Left] {
        let rep = is_exchange(ring, s, side);
        if let Some(x) = rep.failure {
            return Err(Witness::new(
                [x],
                format!("no {side:?}-exchange idempotent"),
            ));
        }
    }
    Ok(())
}

/// For every weak* nil clean decomposition: if `x = n - e` then `1 - n` is a
/// unit and `x - (1-n)⁻¹e(1-n) = (1-n)⁻¹(x - x²)`; if `x = n + e` then
/// `u = 2e - 1 + n` is a unit and `x - e = u⁻¹(x² - x)`. Returns how many
/// `n - e` decompositions were checked.
pub fn check_exchange_identity(
    ring: &RingTable,
    s: &StructureCache,
) -> Result<std::result::Result<usize, Witness>> {
    let one = ring.one();
    let mut minus_checked = 0;
    for x in ring.elements() {
        let x2 = ring.mul(x, x);
        for d in all_decomps(ring, s, x, &DecompKind::WeakStarNilClean)? {
            let (n, e) = (d.companion, d.idempotent);
            match d.sign {
                Sign::Minus => {
                    let u = ring.sub(one, n);
                    let Some(ui) = s.inverse(u) else {
                        return Ok(Err(Witness::new([x, n, e], "1 - n is not a unit")));
                    };
                    let lhs = ring.sub(x, ring.mul(ring.mul(ui, e), u));
                    let rhs = ring.mul(ui, ring.sub(x, x2));
                    if lhs != rhs {
                        return Ok(Err(Witness::new([x, n, e], "identity fails for x = n - e")));
                    }
                    minus_checked += 1;
                }
                Sign::Plus => {
                    let u = ring.add(ring.sub(ring.add(e, e), one), n);
                    let Some(ui) = s.inverse(u) else {
                        return Ok(Err(Witness::new([x, n, e], "2e - 1 + n is not a unit")));
                    };
                    if ring.sub(x, e) != ring.mul(ui, ring.sub(x2, x)) {
                        return Ok(Err(Witness::new([x, n, e], "identity fails for x = n + e")));
                    }
                }
            }
        }
    }
    Ok(Ok(minus_checked))
}

/// Strongly nil clean ⇔ weak* nil clean with `2 ∈ Nil(R)`.
pub fn check_strongly_nilclean_equiv(ring: &RingTable, s: &StructureCache) -> CheckResult {
    let snc = holds(ring, s, &DecompKind::StronglyNilClean);
    let wstar = holds(ring, s, &DecompKind::WeakStarNilClean);
    let two_nil = s.is_nilpotent(ring.two());
    ensure(snc == (wstar && two_nil), || {
        Witness::new(
            [ring.two()],
            format!("strongly nil clean = {snc}, weak* = {wstar}, 2 nilpotent = {two_nil}"),
        )
    })
}

pub fn check_strongly_pi_regular(ring: &RingTable) -> CheckResult {
    let rep = is_strongly_pi_regular(ring);
    match rep.exponents.iter().position(Option::is_none) {
        Some(a) => Err(Witness::new(
            [ElementId::from(a)],
            "no power lands in a^(k+1)R ∩ Ra^(k+1)",
        )),
        None => Ok(()),
    }
}

/// Truncated skew polynomials over a weak nil clean ring are weak nil clean
/// via `f = (f - e) + e` or `f = (f + e) - e`, where `a0 = n ± e` is a
/// decomposition of the constant coefficient.
pub fn check_skew_twist(
    base: &RingTable,
    skew: &RingTable,
    s: &StructureCache,
    degree: usize,
) -> Result<CheckResult> {
    let bs = StructureCache::new(base);
    let (constant, include) = skew_constant_maps(base.order(), degree);
    for f in skew.elements() {
        let a0 = constant(f);
        let Some(cert) = find_decomp(base, &bs, a0, &DecompKind::WeakNilClean)? else {
            return Ok(Err(Witness::new(
                [f],
                "constant coefficient has no decomposition in the base",
            )));
        };
        let e = include(cert.idempotent);
        let companion = match cert.sign {
            Sign::Plus => skew.sub(f, e),
            Sign::Minus => skew.add(f, e),
        };
        if !s.is_nilpotent(companion) || !s.is_idempotent(e) {
            return Ok(Err(Witness::new(
                [f, e, companion],
                "lifted decomposition is not nil clean",
            )));
        }
    }
    Ok(ensure(holds(skew, s, &DecompKind::WeakNilClean), || {
        Witness::new(
            [],
            "ring verdict disagrees with the explicit decompositions",
        )
    }))
}

/// Implications between the notions, ringwise.
pub fn check_implications(ring: &RingTable, s: &StructureCache) -> CheckResult {
    use DecompKind::*;
    let h = |k: &DecompKind| holds(ring, s, k);
    let pairs = [
        (NilClean, WeakNilClean),
        (StronglyNilClean, NilClean),
        (StronglyNilClean, WeakStarNilClean),
        (WeakStarNilClean, WeakNilClean),
        (WeakNilClean, WeaklyClean),
        (NilClean, Clean),
        (Clean, WeaklyClean),
        (StronglyClean, Clean),
        (JClean, WeakJClean),
        (StronglyJClean, JClean),
        (WeakStarJClean, WeakJClean),
    ];
    for (from, to) in pairs {
        if h(&from) && !h(&to) {
            return Err(Witness::new([], format!("{from} holds but {to} does not")));
        }
    }
    Ok(())
}

/// Every weak* J-clean element is strongly clean, via the explicit
/// decompositions `w + e = (1 - e) + (2e - 1 + w)` and
/// `w - e = (1 - e) + (w - 1)`. Returns how many elements were checked.
pub fn check_weakstar_j_strongly_clean(
    ring: &RingTable,
    s: &StructureCache,
) -> Result<std::result::Result<usize, Witness>> {
    let one = ring.one();
    let mut checked = 0;
    for a in ring.elements() {
        let Some(d) = find_decomp(ring, s, a, &DecompKind::WeakStarJClean)? else {
            continue;
        };
        let (w, e) = (d.companion, d.idempotent);
        let idem = ring.sub(one, e);
        let unit = match d.sign {
            Sign::Plus => ring.add(ring.sub(ring.add(e, e), one), w),
            Sign::Minus => ring.sub(w, one),
        };
        let cert = DecompCert {
            kind: DecompKind::StronglyClean,
            target: a,
            idempotent: idem,
            companion: unit,
            sign: Sign::Plus,
            commutes: ring.commutes(unit, idem),
        };
        if !cert.verify(ring, s) {
            return Ok(Err(Witness::new(
                [a, w, e],
                "explicit strongly clean decomposition fails",
            )));
        }
        if !element_has(ring, s, a, &DecompKind::StronglyClean) {
            return Ok(Err(Witness::new([a], "not strongly clean")));
        }
        checked += 1;
    }
    Ok(Ok(checked))
}

/// `R/J(R)` is boolean.
pub fn radical_quotient_is_boolean(ring: &RingTable, s: &StructureCache) -> Result<bool> {
    let (q, _) = quotient(ring, &s.radical_handle(ring))?;
    Ok(q.elements().all(|x| q.mul(x, x) == x))
}

/// `R/J(R)` boolean and idempotents lifting weakly modulo `J(R)` ⇒ weak J-clean.
pub fn check_boolean_lift_weak_j(ring: &RingTable, s: &StructureCache) -> Result<CheckResult> {
    let boolean = radical_quotient_is_boolean(ring, s)?;
    let lifts = lifts_idempotents_weakly(ring, s, &s.radical_handle(ring))?.holds;
    let verdict = crate::decomp::ring_verdict(ring, s, &DecompKind::WeakJClean)?;
    Ok(ensure(!(boolean && lifts) || verdict.holds, || {
        Witness::new(
            verdict.witness_failure,
            "boolean quotient with weak lifting, yet not weak J-clean",
        )
    }))
}

/// Weak* J-clean with `R/J(R)` boolean ⇒ J-clean.
pub fn check_boolean_j_clean(ring: &RingTable, s: &StructureCache) -> Result<CheckResult> {
    let boolean = radical_quotient_is_boolean(ring, s)?;
    let wstar = holds(ring, s, &DecompKind::WeakStarJClean);
    let verdict = crate::decomp::ring_verdict(ring, s, &DecompKind::JClean)?;
    Ok(ensure(!(boolean && wstar) || verdict.holds, || {
        Witness::new(
            verdict.witness_failure,
            "weak* J-clean with boolean quotient, yet not J-clean",
        )
    }))
}

/// Every two-sided ideal, for the homomorphic-image check.
pub fn ideals_for_quotients(ring: &RingTable) -> Vec<SubsetHandle> {
    all_ideals(ring)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::build_str;
    use crate::ring::ideal_generated_by;

    fn ring(text: &str) -> (RingTable, StructureCache) {
        let t = build_str(text, &BuildOptions::default()).unwrap().table;
        let s = StructureCache::new(&t);
        (t, s)
    }

    #[test]
    fn radical_in_nil() {
        for text in ["Z(9)", "Z(12)"] {
            let (r, s) = ring(text);
            assert!(check_j_subset_nil(&r, &s).is_ok());
        }
        let (_, s) = ring("Z(12)");
        assert_eq!(s.radical(), &[ElementId(0), ElementId(6)]);
        assert_eq!(s.nilpotents(), &[ElementId(0), ElementId(6)]);
    }

    #[test]
    fn quotients() {
        let (r, _) = ring("Z(12)");
        let i = ideal_generated_by(&r, &[ElementId(6)]).unwrap();
        assert!(check_quotient_preservation(&r, &i).unwrap().is_ok());
        let (r, _) = ring("Z(36)");
        let i = ideal_generated_by(&r, &[ElementId(4)]).unwrap();
        assert!(check_quotient_preservation(&r, &i).unwrap().is_ok());
    }

    #[test]
    fn products() {
        let opts = BuildOptions::default();
        let z = RingExpr::Zn;
        assert!(check_product_theorem(&[z(4), z(9)], &opts).unwrap().is_ok());
        assert!(check_product_theorem(&[z(9), z(9)], &opts).unwrap().is_ok());
        assert!(check_product_theorem(&[z(2), z(4)], &opts).unwrap().is_ok());
        let (r, s) = ring("prod(Z(9),Z(9))");
        assert!(!holds(&r, &s, &DecompKind::WeakNilClean));
    }

    #[test]
    fn nilradical_quotients() {
        for text in ["Z(12)", "Z(5)", "Z(9)"] {
            let (r, s) = ring(text);
            assert!(check_nilradical_quotient(&r, &s).unwrap().is_ok(), "{text}");
        }
    }

    #[test]
    fn idealizations() {
        let opts = BuildOptions::default();
        assert!(
            check_idealization(&RingExpr::Zn(6), &ModuleSpec::SelfModule, &opts)
                .unwrap()
                .is_ok()
        );
        assert!(
            check_idealization(&RingExpr::Zn(5), &ModuleSpec::SelfModule, &opts)
                .unwrap()
                .is_ok()
        );
        assert!(
            check_idealization(&RingExpr::Zn(6), &ModuleSpec::CyclicModule(3), &opts)
                .unwrap()
                .is_ok()
        );
    }

    #[test]
    fn zn_up_to_54() {
        let c = check_zn_classification(54).unwrap();
        assert!(c.mismatches.is_empty(), "{:?}", c.mismatches);
        assert_eq!(c.weak_not_nil, vec![3, 6, 9, 12, 18, 24, 27, 36, 48, 54]);
        for n in [5, 7, 10, 15] {
            let (r, s) = ring(&format!("Z({n})"));
            assert!(!holds(&r, &s, &DecompKind::WeakNilClean));
        }
        let (r, s) = ring("Z(8)");
        assert!(holds(&r, &s, &DecompKind::NilClean));
    }

    #[test]
    fn annihilators() {
        let kind = DecompKind::WeakStarNilClean;
        for text in ["Z(6)", "Z(9)", "M2(Z(2))"] {
            let (r, s) = ring(text);
            assert!(
                check_annihilator_lemmas(&r, &s, &kind).unwrap().is_ok(),
                "{text}"
            );
        }
    }

    #[test]
    fn corners() {
        let kind = DecompKind::WeakStarNilClean;
        for text in ["M2(Z(2))", "M2(Z(3))", "Z(6)"] {
            let (r, s) = ring(text);
            for &f in s.idempotents() {
                assert!(
                    check_corner_theorem(&r, &s, f, &kind).unwrap().is_ok(),
                    "{text} f={f}"
                );
            }
        }
    }

    #[test]
    fn local_rings() {
        for text in ["Z(9)", "Z(4)"] {
            let (r, s) = ring(text);
            assert!(check_s_unique_maximal(&r, &s).is_ok(), "{text}");
        }
        let (r, s) = ring("Z(6)");
        assert!(check_s_unique_maximal(&r, &s).is_err());
    }

    #[test]
    fn rigidity() {
        let (r, s) = ring("Z(6)");
        let idem = s.idempotent_handle(&r);
        assert!(holds(
            &r,
            &s,
            &DecompKind::with_restriction(&r, &s, idem.clone(), true).unwrap()
        ));
        assert!(check_s_rigidity(&r, &s, &idem).unwrap().is_ok());
        let s01 = SubsetHandle::new(&r, [r.zero(), r.one()]).unwrap();
        assert!(!holds(
            &r,
            &s,
            &DecompKind::with_restriction(&r, &s, s01.clone(), true).unwrap()
        ));
        assert!(check_s_rigidity(&r, &s, &s01).unwrap().is_ok());
        assert_eq!(rigidity_subsets(&r, &s).len(), 15);

        let (r, s) = ring("Z(2)");
        let s01 = SubsetHandle::new(&r, [r.zero(), r.one()]).unwrap();
        assert!(check_s_rigidity(&r, &s, &s01).unwrap().is_ok());
    }

    #[test]
    fn exchange_and_identity() {
        for text in ["Z(6)", "Z(12)", "M2(Z(2))"] {
            let (r, s) = ring(text);
            assert!(check_weakstar_exchange(&r, &s).is_ok(), "{text}");
            assert!(check_exchange_identity(&r, &s).unwrap().is_ok(), "{text}");
        }
    }

    #[test]
    fn strongly_nil_clean_equivalence() {
        for text in ["Z(4)", "Z(9)", "Z(2)"] {
            let (r, s) = ring(text);
            assert!(check_strongly_nilclean_equiv(&r, &s).is_ok(), "{text}");
        }
        let (r, s) = ring("Z(4)");
        assert!(holds(&r, &s, &DecompKind::StronglyNilClean));
        let (r, s) = ring("Z(9)");
        assert!(!holds(&r, &s, &DecompKind::StronglyNilClean));
    }

    #[test]
    fn weak_j_bundle() {
        for text in ["Z(4)", "Z(8)", "Z(6)"] {
            let (r, s) = ring(text);
            assert!(
                check_weakstar_j_strongly_clean(&r, &s).unwrap().is_ok(),
                "{text}"
            );
            assert!(
                check_annihilator_lemmas(&r, &s, &DecompKind::WeakStarJClean)
                    .unwrap()
                    .is_ok()
            );
            for &f in s.idempotents() {
                assert!(check_corner_theorem(&r, &s, f, &DecompKind::WeakStarJClean)
                    .unwrap()
                    .is_ok());
            }
            assert!(check_boolean_lift_weak_j(&r, &s).unwrap().is_ok());
            assert!(check_boolean_j_clean(&r, &s).unwrap().is_ok());
        }
        let (r, s) = ring("Z(4)");
        assert!(radical_quotient_is_boolean(&r, &s).unwrap());
        assert!(holds(&r, &s, &DecompKind::WeakJClean));
        let (r, s) = ring("Z(6)");
        assert!(!radical_quotient_is_boolean(&r, &s).unwrap());
    }
}
