use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::checks::{CheckResult, Witness};
use super::corpus::{CorpusSource, CorpusSpec};
use super::registry::{registry, TheoremCheck};
use crate::construct::{build_with, BuildOptions, RingExpr};
use crate::decomp::{holds, DecompKind};
use crate::error::{Error, Result};
use crate::ring::{verify_ring_axioms, RingTable, StructureCache, SubsetHandle};

/// A built ring with its structure and the verdicts most checks need.
pub struct SuiteRing {
    pub label: String,
    pub expr: Option<RingExpr>,
    pub table: RingTable,
    pub structure: StructureCache,
    pub opts: BuildOptions,
    pub weak_nil_clean: bool,
    pub nil_clean: bool,
    pub weak_star_nil_clean: bool,
    /// `{0,1}`-weak nil clean.
    pub zero_one_weak_nil_clean: bool,
    pub weak_star_j_clean: bool,
    pub commutative: bool,
}

impl SuiteRing {
    pub fn from_expr(expr: &RingExpr, opts: &BuildOptions) -> Result<Self> {
        let built = build_with(expr, opts)?;
        Ok(Self::assemble(
            expr.to_string(),
            Some(expr.clone()),
            built.table,
            *opts,
        ))
    }

    /// Wrap an externally supplied table after checking the ring axioms.
    pub fn from_table(table: RingTable, opts: &BuildOptions) -> Result<Self> {
        let report = verify_ring_axioms(&table);
        if !report.passed() {
            return Err(Error::NotARing {
                label: table.label().to_string(),
                detail: report.summary(),
            });
        }
        Ok(Self::assemble(
            table.label().to_string(),
            None,
            table,
            *opts,
        ))
    }

    fn assemble(
        label: String,
        expr: Option<RingExpr>,
        table: RingTable,
        opts: BuildOptions,
    ) -> Self {
        let structure = StructureCache::new(&table);
        let h = |k: &DecompKind| holds(&table, &structure, k);
        let s01 =
            SubsetHandle::new(&table, [table.zero(), table.one()]).expect("0 and 1 are in range");
        let zero_one = DecompKind::with_restriction(&table, &structure, s01, false)
            .map(|k| h(&k))
            .unwrap_or(false);
        SuiteRing {
            weak_nil_clean: h(&DecompKind::WeakNilClean),
            nil_clean: h(&DecompKind::NilClean),
            weak_star_nil_clean: h(&DecompKind::WeakStarNilClean),
            zero_one_weak_nil_clean: zero_one,
            weak_star_j_clean: h(&DecompKind::WeakStarJClean),
            commutative: table.is_commutative(),
            label,
            expr,
            table,
            structure,
            opts,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellOutcome {
    Pass,
    Fail,
    NotApplicable,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub ring: String,
    pub check_id: String,
    pub outcome: CellOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckSelector {
    All,
    Ids(Vec<String>),
}

impl CheckSelector {
    /// `all` or a comma-separated list of check ids.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("all") {
            return Ok(CheckSelector::All);
        }
        let known = registry();
        let mut ids = Vec::new();
        for id in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if !known.iter().any(|c| c.id == id) {
                return Err(Error::UnknownName(id.to_string()));
            }
            ids.push(id.to_string());
        }
        Ok(CheckSelector::Ids(ids))
    }

    fn selects(&self, id: &str) -> bool {
        match self {
            CheckSelector::All => true,
            CheckSelector::Ids(ids) => ids.iter().any(|i| i == id),
        }
    }
}

/// All cells of a suite run, sorted by `(ring, check_id)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SuiteReport {
    pub cells: Vec<Cell>,
}

impl SuiteReport {
    /// No cell failed or errored.
    pub fn passed(&self) -> bool {
        self.cells
            .iter()
            .all(|c| matches!(c.outcome, CellOutcome::Pass | CellOutcome::NotApplicable))
    }

    pub fn counts(&self) -> BTreeMap<CellOutcome, usize> {
        let mut m = BTreeMap::new();
        for c in &self.cells {
            *m.entry(c.outcome).or_insert(0) += 1;
        }
        m
    }

    pub fn problems(&self) -> impl Iterator<Item = &Cell> {
        self.cells
            .iter()
            .filter(|c| matches!(c.outcome, CellOutcome::Fail | CellOutcome::Error))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.cells).expect("cells serialize")
    }
}

fn run_check(ring: &SuiteRing, check: &TheoremCheck) -> Cell {
    let (outcome, witness) = if !(check.applies)(ring) {
        (CellOutcome::NotApplicable, None)
    } else {
        match (check.check)(ring) {
            Ok(CheckResult::Ok(())) => (CellOutcome::Pass, None),
            Ok(Err(w)) => (CellOutcome::Fail, Some(w)),
            Err(e) => (
                CellOutcome::Error,
                Some(Witness {
                    elements: Vec::new(),
                    note: e.to_string(),
                }),
            ),
        }
    };
    Cell {
        ring: ring.label.clone(),
        check_id: check.id.to_string(),
        outcome,
        witness,
    }
}

fn build_error(label: String, err: Error) -> Cell {
    Cell {
        ring: label,
        check_id: "build".to_string(),
        outcome: CellOutcome::Error,
        witness: Some(Witness {
            elements: Vec::new(),
            note: err.to_string(),
        }),
    }
}

/// Run the selected checks on every corpus entry. Entries that fail to build
/// produce a single `build` cell with outcome `error`.
pub fn run_suite(
    corpus: &CorpusSpec,
    selector: &CheckSelector,
    opts: &BuildOptions,
) -> SuiteReport {
    let checks: Vec<TheoremCheck> = registry()
        .into_iter()
        .filter(|c| selector.selects(c.id))
        .collect();
    let mut cells: Vec<Cell> = corpus
        .entries
        .par_iter()
        .flat_map_iter(|entry| {
            let mut entry_opts = *opts;
            if let Some(budget) = entry.budget {
                entry_opts.size_budget = budget;
            }
            let ring = match &entry.source {
                CorpusSource::Expr(expr) => SuiteRing::from_expr(expr, &entry_opts),
                CorpusSource::Table(table) => SuiteRing::from_table((**table).clone(), &entry_opts),
            };
            match ring {
                Ok(ring) => checks
                    .iter()
                    .map(|c| run_check(&ring, c))
                    .collect::<Vec<_>>(),
                Err(e) => vec![build_error(entry.label.clone(), e)],
            }
        })
        .collect();
    cells.sort_by(|a, b| (&a.ring, &a.check_id).cmp(&(&b.ring, &b.check_id)));
    SuiteReport { cells }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selector_parsing() {
        assert_eq!(CheckSelector::parse("ALL").unwrap(), CheckSelector::All);
        assert_eq!(
            CheckSelector::parse("j-subset-nil, corner-theorem").unwrap(),
            CheckSelector::Ids(vec!["j-subset-nil".into(), "corner-theorem".into()])
        );
        assert!(matches!(
            CheckSelector::parse("nope"),
            Err(Error::UnknownName(_))
        ));
    }

    #[test]
    fn small_corpus_report() {
        let corpus = CorpusSpec::parse("Z(9)\nT2(Z(3))\n").unwrap();
        let sel = CheckSelector::parse("j-subset-nil").unwrap();
        let report = run_suite(&corpus, &sel, &BuildOptions::default());
        assert!(report.passed());
        let outcomes: Vec<_> = report
            .cells
            .iter()
            .map(|c| (c.ring.as_str(), c.outcome))
            .collect();
        assert_eq!(
            outcomes,
            vec![
                ("T2(Z(3))", CellOutcome::NotApplicable),
                ("Z(9)", CellOutcome::Pass)
            ]
        );
        assert!(report.to_json().contains("\"outcome\": \"not-applicable\""));
    }

    #[test]
    fn over_budget_entry_is_an_error_cell() {
        let corpus = CorpusSpec::parse("M2(Z(12))\nZ(6) | budget=3\nZ(6) | budget=6\n").unwrap();
        let sel = CheckSelector::parse("j-subset-nil").unwrap();
        let report = run_suite(&corpus, &sel, &BuildOptions::default());
        let shape: Vec<_> = report
            .cells
            .iter()
            .map(|c| (c.ring.as_str(), c.check_id.as_str(), c.outcome))
            .collect();
        assert_eq!(
            shape,
            vec![
                ("M2(Z(12))", "build", CellOutcome::Error),
                ("Z(6)", "build", CellOutcome::Error),
                ("Z(6)", "j-subset-nil", CellOutcome::Pass),
            ]
        );
        assert!(!report.passed());
        assert_eq!(report.problems().count(), 2);
    }
}
