use std::sync::Arc;

use crate::construct::{parse_ring_expr, RingExpr};
use crate::error::{Error, Result};
use crate::ring::RingTable;

/// The corpus used by `verify --corpus default` and the acceptance run.
pub const DEFAULT_CORPUS: &str = include_str!("../../data/default_corpus.txt");

#[derive(Debug, Clone)]
pub enum CorpusSource {
    Expr(RingExpr),
    /// A table supplied directly; its axioms are checked before use.
    Table(Arc<RingTable>),
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub label: String,
    pub source: CorpusSource,
    /// Per-entry override of the element-count budget.
    pub budget: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct CorpusSpec {
    pub entries: Vec<CorpusEntry>,
}

impl CorpusSpec {
    /// One ring expression per line. `#` starts a comment; an entry may end
    /// with `| budget=N` to raise or lower its size budget.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (expr_text, budget) = match content.split_once('|') {
                Some((e, opt)) => (e.trim(), Some(parse_budget(opt.trim(), line)?)),
                None => (content, None),
            };
            let expr = parse_ring_expr(expr_text).map_err(|e| Error::Corpus {
                line,
                msg: e.to_string(),
            })?;
            entries.push(CorpusEntry {
                label: expr.to_string(),
                source: CorpusSource::Expr(expr),
                budget,
            });
        }
        Ok(CorpusSpec { entries })
    }

    pub fn default_corpus() -> Self {
        Self::parse(DEFAULT_CORPUS).expect("default corpus parses")
    }

    pub fn push_table(&mut self, table: RingTable) {
        self.entries.push(CorpusEntry {
            label: table.label().to_string(),
            source: CorpusSource::Table(Arc::new(table)),
            budget: None,
        });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn parse_budget(text: &str, line: usize) -> Result<usize> {
    let value = text
        .strip_prefix("budget")
        .map(str::trim_start)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::Corpus {
            line,
            msg: format!("expected `budget=N`, found `{text}`"),
        })?;
    value.trim().parse().map_err(|_| Error::Corpus {
        line,
        msg: format!("bad budget `{}`", value.trim()),
    })
}
