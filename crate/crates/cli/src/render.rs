//! Output formatting shared by every subcommand.

use std::fmt::Write as _;
use std::str::FromStr;

use anyhow::{bail, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => bail!("unknown format `{other}` (expected table, json or csv)"),
        }
    }
}

/// Rows of strings for the table and csv formats.
#[derive(Debug, Clone, Default)]
pub struct Grid {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Grid {
    pub fn new(headers: &[&str]) -> Self {
        Grid {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

fn aligned(grid: &Grid) -> String {
    let mut widths: Vec<usize> = grid.headers.iter().map(|h| h.chars().count()).collect();
    for row in &grid.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(&grid.headers).chain(&grid.rows) {
        let mut line = String::new();
        for (i, (cell, w)) in row.iter().zip(&widths).enumerate() {
            if i + 1 == row.len() {
                line.push_str(cell);
            } else {
                let _ = write!(line, "{cell:<w$}  ");
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn csv_text(grid: &Grid) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(&grid.headers)?;
    for row in &grid.rows {
        w.write_record(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Render `grid` as an aligned table or csv, or `json` as pretty JSON.
pub fn render_report<T: Serialize + ?Sized>(
    grid: &Grid,
    json: &T,
    format: Format,
) -> Result<String> {
    Ok(match format {
        Format::Table => aligned(grid),
        Format::Csv => csv_text(grid)?,
        Format::Json => {
            let mut s = serde_json::to_string_pretty(json)?;
            s.push('\n');
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_csv_is_header_only() {
        let g = Grid::new(&["ring", "check_id", "outcome"]);
        let empty: Vec<u8> = Vec::new();
        assert_eq!(
            render_report(&g, &empty, Format::Csv).unwrap(),
            "ring,check_id,outcome\n"
        );
    }

    #[test]
    fn csv_quotes_commas() {
        let mut g = Grid::new(&["ring", "n"]);
        g.push(vec!["prod(Z(2),Z(3))".into(), "6".into()]);
        assert_eq!(
            render_report(&g, &(), Format::Csv).unwrap(),
            "ring,n\n\"prod(Z(2),Z(3))\",6\n"
        );
    }

    #[test]
    fn one_cell_json_is_single_element_array() {
        #[derive(Serialize)]
        struct Cell {
            ring: &'static str,
        }
        let out = render_report(&Grid::default(), &[Cell { ring: "Z(2)" }], Format::Json).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 1);
    }

    #[test]
    fn table_columns_align() {
        let mut g = Grid::new(&["n", "kind"]);
        g.push(vec!["10".into(), "x".into()]);
        g.push(vec!["2".into(), "y".into()]);
        assert_eq!(
            render_report(&g, &(), Format::Table).unwrap(),
            "n   kind\n10  x\n2   y\n"
        );
    }

    #[test]
    fn format_names() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
