use super::checks::*;
use super::suite::SuiteRing;
use crate::construct::{build_with, RingExpr};
use crate::decomp::{holds, lifts_idempotents_weakly, DecompKind};
use crate::error::Result;
use crate::ring::StructureCache;

/// One registered check.
#[derive(Clone, Copy)]
pub struct TheoremCheck {
    pub id: &'static str,
    /// What the check asserts, for reports and the generated docs.
    pub statement: &'static str,
    /// Hypotheses, in words.
    pub applies_to: &'static str,
    pub applies: fn(&SuiteRing) -> bool,
    pub check: fn(&SuiteRing) -> Result<CheckResult>,
}

impl std::fmt::Debug for TheoremCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TheoremCheck")
            .field("id", &self.id)
            .finish_non_exhaustive()
    }
}

fn always(_: &SuiteRing) -> bool {
    true
}

fn counted(r: Result<std::result::Result<usize, Witness>>) -> Result<CheckResult> {
    r.map(|inner| inner.map(|_| ()))
}

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    mut f: impl FnMut(T) -> Result<CheckResult>,
) -> Result<CheckResult> {
    for item in items {
        if let Err(w) = f(item)? {
            return Ok(Err(w));
        }
    }
    Ok(Ok(()))
}

fn skew_base(ring: &SuiteRing) -> Option<(crate::RingTable, usize)> {
    match &ring.expr {
        Some(RingExpr::SkewPolyQuot(base, _, n)) => {
            build_with(base, &ring.opts).ok().map(|b| (b.table, *n))
        }
        _ => None,
    }
}

fn skew_applies(ring: &SuiteRing) -> bool {
    skew_base(ring).is_some_and(|(base, _)| {
        let s = StructureCache::new(&base);
        holds(&base, &s, &DecompKind::WeakNilClean)
    })
}

fn skew_check(ring: &SuiteRing) -> Result<CheckResult> {
    let (base, n) = skew_base(ring).expect("checked by applicability");
    check_skew_twist(&base, &ring.table, &ring.structure, n)
}

fn boolean_lift_applies(ring: &SuiteRing) -> bool {
    let j = ring.structure.radical_handle(&ring.table);
    radical_quotient_is_boolean(&ring.table, &ring.structure).unwrap_or(false)
        && lifts_idempotents_weakly(&ring.table, &ring.structure, &j).is_ok_and(|l| l.holds)
}

fn boolean_jclean_applies(ring: &SuiteRing) -> bool {
    ring.weak_star_j_clean
        && radical_quotient_is_boolean(&ring.table, &ring.structure).unwrap_or(false)
}

/// All checks, in report order.
pub fn registry() -> Vec<TheoremCheck> {
    vec![
        TheoremCheck {
            id: "annihilator-lemmas",
            statement: "for every weak* nil clean decomposition x = n ± e: ann_l(x) ⊆ ann_l(e), ann_r(x) ⊆ ann_r(e), ann_l(x) ⊆ R(1-e), ann_r(x) ⊆ (1-e)R",
            applies_to: "every ring",
            applies: always,
            check: |r| counted(check_annihilator_lemmas(&r.table, &r.structure, &DecompKind::WeakStarNilClean)),
        },
        TheoremCheck {
            id: "corner-theorem",
            statement: "for every idempotent f and x ∈ fRf: x is weak* nil clean in R iff in fRf, and x = fnf ± fef re-validates in fRf",
            applies_to: "every ring",
            applies: always,
            check: |r| {
                let kind = DecompKind::WeakStarNilClean;
                let idem = r.structure.idempotents().to_vec();
                first_failure(idem, |f| check_corner_theorem(&r.table, &r.structure, f, &kind))
            },
        },
        TheoremCheck {
            id: "exchange-identity",
            statement: "x = n - e gives (1-n) a unit with x - (1-n)⁻¹e(1-n) = (1-n)⁻¹(x - x²); x = n + e gives u = 2e-1+n a unit with x - e = u⁻¹(x² - x)",
            applies_to: "every ring (all weak* nil clean decompositions)",
            applies: always,
            check: |r| counted(check_exchange_identity(&r.table, &r.structure)),
        },
        TheoremCheck {
            id: "idealization",
            statement: "R is weak nil clean iff R(M) is weak nil clean",
            applies_to: "idealize(...) expressions",
            applies: |r| matches!(r.expr, Some(RingExpr::Idealize(..))),
            check: |r| match &r.expr {
                Some(RingExpr::Idealize(base, module)) => check_idealization(base, module, &r.opts),
                _ => unreachable!("checked by applicability"),
            },
        },
        TheoremCheck {
            id: "implications",
            statement: "strongly nil clean ⇒ nil clean ⇒ weak nil clean ⇒ weakly clean, weak* ⇒ weak, nil clean ⇒ clean, and the J-clean analogues",
            applies_to: "every ring",
            applies: always,
            check: |r| Ok(check_implications(&r.table, &r.structure)),
        },
        TheoremCheck {
            id: "j-subset-nil",
            statement: "J(R) ⊆ Nil(R)",
            applies_to: "weak nil clean rings",
            applies: |r| r.weak_nil_clean,
            check: |r| Ok(check_j_subset_nil(&r.table, &r.structure)),
        },
        TheoremCheck {
            id: "nilradical-quotient",
            statement: "R weak nil clean ⇒ R/Nil(R) weak nil clean; R/Nil(R) weak nil clean with idempotents lifting modulo Nil(R) ⇒ R weak nil clean",
            applies_to: "commutative rings",
            applies: |r| r.commutative,
            check: |r| check_nilradical_quotient(&r.table, &r.structure),
        },
        TheoremCheck {
            id: "product-theorem",
            statement: "a finite product is weak nil clean iff every factor is and at most one factor is not nil clean",
            applies_to: "prod(...) expressions",
            applies: |r| matches!(r.expr, Some(RingExpr::Prod(_))),
            check: |r| match &r.expr {
                Some(RingExpr::Prod(factors)) => check_product_theorem(factors, &r.opts),
                _ => unreachable!("checked by applicability"),
            },
        },
        TheoremCheck {
            id: "quotient-preservation",
            statement: "R/I is weak nil clean for every two-sided ideal I",
            applies_to: "weak nil clean rings",
            applies: |r| r.weak_nil_clean,
            check: |r| first_failure(ideals_for_quotients(&r.table), |i| check_quotient_preservation(&r.table, &i)),
        },
        TheoremCheck {
            id: "s-rigidity",
            statement: "R S-weak* nil clean with S ⊆ Idem(R) forces S = Idem(R)",
            applies_to: "weak* nil clean rings (all subsets S when |Idem| ≤ 8, else Idem and its one-element deletions)",
            applies: |r| r.weak_star_nil_clean,
            check: |r| {
                let subsets = rigidity_subsets(&r.table, &r.structure);
                first_failure(subsets, |s| check_s_rigidity(&r.table, &r.structure, &s))
            },
        },
        TheoremCheck {
            id: "s-unique-maximal",
            statement: "a {0,1}-weak nil clean ring has exactly one maximal ideal, R = U(R) ∪ Nil(R), U(R) = (1+Nil) ∪ (-1+Nil), Nil(R) = J(R) is an ideal",
            applies_to: "nonzero {0,1}-weak nil clean rings",
            applies: |r| r.table.order() >= 2 && r.zero_one_weak_nil_clean,
            check: |r| Ok(check_s_unique_maximal(&r.table, &r.structure)),
        },
        TheoremCheck {
            id: "skew-twist",
            statement: "R[x;σ]/(x^n) over a weak nil clean R is weak nil clean via f = (f - e) + e or (f + e) - e",
            applies_to: "skew(...) expressions over a weak nil clean base",
            applies: skew_applies,
            check: skew_check,
        },
        TheoremCheck {
            id: "strongly-nil-clean-equiv",
            statement: "strongly nil clean iff weak* nil clean with 2 ∈ Nil(R)",
            applies_to: "every ring",
            applies: always,
            check: |r| Ok(check_strongly_nilclean_equiv(&r.table, &r.structure)),
        },
        TheoremCheck {
            id: "strongly-pi-regular",
            statement: "weak* nil clean with 2 ∈ Nil(R) ⇒ strongly π-regular",
            applies_to: "weak* nil clean rings with 2 nilpotent",
            applies: |r| r.weak_star_nil_clean && r.structure.is_nilpotent(r.table.two()),
            check: |r| Ok(check_strongly_pi_regular(&r.table)),
        },
        TheoremCheck {
            id: "weakstar-exchange",
            statement: "weak* nil clean ⇒ exchange (right and left conventions)",
            applies_to: "weak* nil clean rings",
            applies: |r| r.weak_star_nil_clean,
            check: |r| Ok(check_weakstar_exchange(&r.table, &r.structure)),
        },
        TheoremCheck {
            id: "wj-annihilators",
            statement: "for every weak* J-clean decomposition a = w ± e: ann_l(a) ⊆ ann_l(e), ann_r(a) ⊆ ann_r(e)",
            applies_to: "every ring",
            applies: always,
            check: |r| counted(check_annihilator_lemmas(&r.table, &r.structure, &DecompKind::WeakStarJClean)),
        },
        TheoremCheck {
            id: "wj-boolean-jclean",
            statement: "weak* J-clean with R/J(R) boolean ⇒ J-clean",
            applies_to: "weak* J-clean rings with R/J(R) boolean",
            applies: boolean_jclean_applies,
            check: |r| check_boolean_j_clean(&r.table, &r.structure),
        },
        TheoremCheck {
            id: "wj-boolean-lift",
            statement: "R/J(R) boolean with idempotents lifting weakly modulo J(R) ⇒ weak J-clean",
            applies_to: "rings with R/J(R) boolean and weak lifting modulo J(R)",
            applies: boolean_lift_applies,
            check: |r| check_boolean_lift_weak_j(&r.table, &r.structure),
        },
        TheoremCheck {
            id: "wj-corner",
            statement: "for every idempotent f and a ∈ fRf: a is weak* J-clean in R iff in fRf",
            applies_to: "every ring",
            applies: always,
            check: |r| {
                let kind = DecompKind::WeakStarJClean;
                let idem = r.structure.idempotents().to_vec();
                first_failure(idem, |f| check_corner_theorem(&r.table, &r.structure, f, &kind))
            },
        },
        TheoremCheck {
            id: "wj-strongly-clean",
            statement: "every weak* J-clean element is strongly clean, via (1-e) + (2e-1+w) or (1-e) + (w-1)",
            applies_to: "every ring",
            applies: always,
            check: |r| counted(check_weakstar_j_strongly_clean(&r.table, &r.structure)),
        },
        TheoremCheck {
            id: "zn-classification",
            statement: "Z(n) is weak nil clean but not nil clean iff n = 2^r·3^t with t ≥ 1; Z(2^k) is nil clean; Z(p^k) with p > 3 is not weak nil clean and 4p^(k-1) < p^k",
            applies_to: "Z(n) with n ≥ 2",
            applies: |r| matches!(r.expr, Some(RingExpr::Zn(n)) if n >= 2),
            check: |r| match r.expr {
                Some(RingExpr::Zn(n)) => Ok(check_zn_member(n, r.weak_nil_clean, r.nil_clean)),
                _ => unreachable!("checked by applicability"),
            },
        },
    ]
}

/// Where each result in the theory is exercised.
#[derive(Debug, Clone, Copy)]
pub enum Coverage {
    Check(&'static str),
    OutOfScope(&'static str),
}

/// Traceability from results to checks. Every result appears exactly once.
pub const COVERAGE: &[(&str, Coverage)] = &[
    (
        "Homomorphic images of weak nil clean rings",
        Coverage::Check("quotient-preservation"),
    ),
    ("Finite direct products", Coverage::Check("product-theorem")),
    (
        "J(R) ⊆ Nil(R) for weak nil clean R",
        Coverage::Check("j-subset-nil"),
    ),
    (
        "Commutative R and R/Nil(R) with lifting",
        Coverage::Check("nilradical-quotient"),
    ),
    ("Idealization R(M)", Coverage::Check("idealization")),
    (
        "Z(3^k) is weak nil clean, not nil clean",
        Coverage::Check("zn-classification"),
    ),
    (
        "Z(p^k) is weak nil clean, not nil clean iff p = 3",
        Coverage::Check("zn-classification"),
    ),
    (
        "Z(n) weak nil clean, not nil clean iff n = 2^r·3^t",
        Coverage::Check("zn-classification"),
    ),
    (
        "Polynomial rings R[x] are not weak nil clean",
        Coverage::OutOfScope("R[x] is infinite; only finite truncations are constructed"),
    ),
    (
        "Truncated skew polynomial rings R[x;σ]/(x^n)",
        Coverage::Check("skew-twist"),
    ),
    (
        "Annihilators of x versus e",
        Coverage::Check("annihilator-lemmas"),
    ),
    (
        "Annihilators of x versus R(1-e) and (1-e)R",
        Coverage::Check("annihilator-lemmas"),
    ),
    (
        "Weak* nil cleanness in fRf versus R",
        Coverage::Check("corner-theorem"),
    ),
    (
        "Corners of weak* nil clean rings",
        Coverage::Check("corner-theorem"),
    ),
    (
        "{0,1}-weak nil clean rings are local",
        Coverage::Check("s-unique-maximal"),
    ),
    (
        "S-weak* nil clean forces S = Idem(R)",
        Coverage::Check("s-rigidity"),
    ),
    (
        "Weak* nil clean rings are exchange rings",
        Coverage::Check("weakstar-exchange"),
    ),
    (
        "Nilpotent-plus-idempotent endomorphisms split the module",
        Coverage::OutOfScope("statement about module endomorphisms, not about a finite ring table"),
    ),
    (
        "Strongly nil clean iff weak* nil clean with 2 nilpotent",
        Coverage::Check("strongly-nil-clean-equiv"),
    ),
    (
        "Weak* nil clean with 2 nilpotent is strongly π-regular",
        Coverage::Check("strongly-pi-regular"),
    ),
    (
        "Weak* J-clean elements are strongly clean",
        Coverage::Check("wj-strongly-clean"),
    ),
    (
        "Annihilators under weak* J-clean decompositions",
        Coverage::Check("wj-annihilators"),
    ),
    (
        "Weak* J-cleanness in fRf versus R",
        Coverage::Check("wj-corner"),
    ),
    (
        "Corners of weak* J-clean rings",
        Coverage::Check("wj-corner"),
    ),
    (
        "Boolean R/J(R) with weak lifting gives weak J-clean",
        Coverage::Check("wj-boolean-lift"),
    ),
    (
        "Weak* J-clean with boolean R/J(R) is J-clean",
        Coverage::Check("wj-boolean-jclean"),
    ),
];

/// Markdown listing of every check and the coverage table.
pub fn checks_markdown() -> String {
    let mut out = String::from("# Theorem checks\n\n");
    out.push_str("Generated by `wnc_core::theorems::checks_markdown`; do not edit by hand.\n\n");
    out.push_str("| id | asserts | applies to |\n|---|---|---|\n");
    for c in registry() {
        out.push_str(&format!(
            "| `{}` | {} | {} |\n",
            c.id,
            c.statement.replace('|', "\\|"),
            c.applies_to
        ));
    }
    out.push_str("\n## Coverage\n\n| result | exercised by |\n|---|---|\n");
    for (name, cov) in COVERAGE {
        let target = match cov {
            Coverage::Check(id) => format!("`{id}`"),
            Coverage::OutOfScope(why) => format!("out of scope: {why}"),
        };
        out.push_str(&format!("| {name} | {target} |\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn ids_are_unique_and_sorted() {
        let ids: Vec<_> = registry().iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
        assert_eq!(ids.iter().collect::<HashSet<_>>().len(), ids.len());
    }

    #[test]
    fn coverage_is_complete() {
        let ids: HashSet<_> = registry().iter().map(|c| c.id).collect();
        let mut covered = HashSet::new();
        for (name, cov) in COVERAGE {
            if let Coverage::Check(id) = cov {
                assert!(ids.contains(id), "{name} points at unknown check {id}");
                covered.insert(*id);
            }
        }
        let names: HashSet<_> = COVERAGE.iter().map(|(n, _)| *n).collect();
        assert_eq!(names.len(), COVERAGE.len());
        // the two bookkeeping checks are not tied to a single result
        let extra: HashSet<_> = ids.difference(&covered).copied().collect();
        assert_eq!(extra, HashSet::from(["exchange-identity", "implications"]));
    }

    #[test]
    fn checks_doc_is_current() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/checks.md");
        let fresh = checks_markdown();
        if std::env::var_os("WNC_BLESS").is_some() {
            std::fs::write(path, &fresh).unwrap();
        }
        let on_disk = std::fs::read_to_string(path).unwrap_or_default();
        assert!(
            on_disk == fresh,
            "docs/checks.md is stale; rerun this test with WNC_BLESS=1"
        );
    }
}
