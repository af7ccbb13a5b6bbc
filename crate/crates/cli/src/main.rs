//! `wnc`: build finite rings, classify their elements, sweep `Z(n)` and run
//! the theorem suite.

mod render;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use wnc_core::decomp::all_decomps;
use wnc_core::sweep::sweep_zn;
use wnc_core::theorems::{run_suite, CellOutcome, CheckSelector, CorpusSpec, DEFAULT_CORPUS};
use wnc_core::{
    build_str, find_decomp, ring_verdict, BuildOptions, BuiltRing, DecompKind, ElementId, Error,
    StructureCache, SubsetHandle,
};

use render::{render_report, Format, Grid};

const GRAMMAR: &str = "\
ring expressions:
  Z(n)                      integers modulo n
  prod(A, B, ...)           direct product
  Mk(A)  Tk(A)  eqdiagk(A)  k×k matrices, upper triangular, equal-diagonal upper triangular
  idealize(A, self)         A ⋉ A
  idealize(Z(n), Z(m))      Z(n) ⋉ Z(m), m dividing n
  corner(A, f)              fAf for the idempotent with index f
  quot(A, [g1, g2, ...])    quotient by the ideal generated by g1, g2, ...
  skew(A, id, n)            A[x]/(x^n)
  skew(A, swap(i, j), n)    A[x; σ]/(x^n), σ swapping factors i and j of a product
";

#[derive(Parser)]
#[command(
    name = "wnc",
    version,
    about = "Clean-type decompositions of finite rings"
)]
struct Cli {
    /// Suppress the version banner in table output.
    #[arg(long, global = true)]
    plain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide ring-level properties.
    Classify {
        #[arg(long)]
        ring: String,
        /// Comma-separated kind names.
        #[arg(long, default_value = "weak-nil-clean,nil-clean")]
        kinds: String,
        /// Element indices forming S, for s-weak-nil-clean and s-weak-star-nil-clean.
        #[arg(long)]
        s: Option<String>,
        /// Exit with status 1 unless every requested kind holds.
        #[arg(long)]
        expect: bool,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Find decompositions of a single element.
    Element {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        index: usize,
        #[arg(long, default_value = "weak-nil-clean,nil-clean")]
        kinds: String,
        #[arg(long)]
        s: Option<String>,
        /// List every decomposition instead of the canonical one.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Classify Z(n) over a range, e.g. `--zn 2..100`.
    Sweep {
        #[arg(long)]
        zn: String,
        #[arg(long, default_value = "weak-nil-clean,nil-clean")]
        kinds: String,
        #[arg(long, default_value = "table")]
        format: Format,
    },
    /// Run the theorem suite over a corpus.
    Verify {
        /// `default` or a path to a corpus file.
        #[arg(long, default_value = "default")]
        corpus: String,
        /// `all` or comma-separated check ids.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value = "table")]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print operation tables or per-element structure.
    Dump {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "structure")]
        what: DumpWhat,
        #[arg(long, default_value = "table")]
        format: Format,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum DumpWhat {
    Tables,
    Structure,
}

fn build_options() -> Result<BuildOptions> {
    let mut opts = BuildOptions::default();
    if let Ok(v) = std::env::var("WNC_SIZE_BUDGET") {
        opts.size_budget = v
            .trim()
            .parse()
            .map_err(|_| anyhow!("WNC_SIZE_BUDGET must be a positive integer, got `{v}`"))?;
    }
    Ok(opts)
}

fn load_ring(text: &str) -> Result<BuiltRing> {
    build_str(text, &build_options()?).map_err(|e| match e {
        Error::Parse { .. } => anyhow!("{e}\n\n{GRAMMAR}"),
        other => other.into(),
    })
}

fn parse_ids(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| anyhow!("bad element index `{t}`")))
        .collect()
}

fn parse_kinds(
    text: &str,
    built: Option<(&BuiltRing, &StructureCache)>,
    s: Option<&str>,
) -> Result<Vec<DecompKind>> {
    let mut kinds = Vec::new();
    for name in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let norm = name
            .to_ascii_lowercase()
            .replace("weak*", "weak-star")
            .replace('_', "-");
        if norm == "s-weak-nil-clean" || norm == "s-weak-star-nil-clean" {
            let (built, structure) =
                built.ok_or_else(|| anyhow!("`{name}` is not available here"))?;
            let ids = parse_ids(s.ok_or_else(|| anyhow!("`{name}` needs --s"))?)?;
            let members = ids
                .into_iter()
                .map(|i| built.table.element(i))
                .collect::<wnc_core::Result<Vec<ElementId>>>()?;
            let subset = SubsetHandle::new(&built.table, members)?;
            let commuting = norm == "s-weak-star-nil-clean";
            kinds.push(DecompKind::with_restriction(
                &built.table,
                structure,
                subset,
                commuting,
            )?);
        } else {
            kinds.push(DecompKind::from_name(name)?);
        }
    }
    if kinds.is_empty() {
        bail!("no kinds given");
    }
    Ok(kinds)
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| anyhow!("expected a range like 2..100, got `{text}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let lo: usize = a
        .trim()
        .parse()
        .map_err(|_| anyhow!("bad range start `{a}`"))?;
    let hi: usize = b
        .trim()
        .parse()
        .map_err(|_| anyhow!("bad range end `{b}`"))?;
    if lo < 1 || lo > hi {
        bail!("range `{text}` is empty or starts below 1");
    }
    Ok(lo..=hi)
}

fn emit(text: &str, format: Format, plain: bool) {
    if format == Format::Table && !plain {
        println!("wnc {}", env!("CARGO_PKG_VERSION"));
    }
    print!("{text}");
}

fn cert_cells(cert: Option<&wnc_core::DecompCert>) -> [String; 3] {
    match cert {
        Some(c) => [
            c.companion.to_string(),
            c.sign.symbol().to_string(),
            c.idempotent.to_string(),
        ],
        None => ["-".into(), "-".into(), "-".into()],
    }
}

fn classify(
    ring: &str,
    kinds: &str,
    s: Option<&str>,
    expect: bool,
    format: Format,
    plain: bool,
) -> Result<ExitCode> {
    let built = load_ring(ring)?;
    let structure = StructureCache::new(&built.table);
    let kinds = parse_kinds(kinds, Some((&built, &structure)), s)?;
    let verdicts = kinds
        .iter()
        .map(|k| ring_verdict(&built.table, &structure, k))
        .collect::<wnc_core::Result<Vec<_>>>()?;
    let label = built.table.label();
    let mut grid = Grid::new(&["ring", "kind", "holds", "witness"]);
    for v in &verdicts {
        let witness = v.witness_failure.map_or("-".to_string(), |w| w.to_string());
        grid.push(vec![
            label.to_string(),
            v.kind.name(),
            v.holds.to_string(),
            witness,
        ]);
    }
    let records: Vec<_> = verdicts.iter().map(|v| v.record(label)).collect();
    emit(&render_report(&grid, &records, format)?, format, plain);
    let all_hold = verdicts.iter().all(|v| v.holds);
    Ok(if expect && !all_hold {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

#[derive(Serialize)]
struct ElementRecord<'a> {
    ring: &'a str,
    x: ElementId,
    kind: String,
    certs: Vec<wnc_core::DecompCert>,
}

fn element(
    ring: &str,
    index: usize,
    kinds: &str,
    s: Option<&str>,
    all: bool,
    format: Format,
    plain: bool,
) -> Result<ExitCode> {
    let built = load_ring(ring)?;
    let structure = StructureCache::new(&built.table);
    let x = built.table.element(index)?;
    let kinds = parse_kinds(kinds, Some((&built, &structure)), s)?;
    let label = built.table.label();
    let mut grid = Grid::new(&["ring", "x", "kind", "companion", "sign", "idempotent"]);
    let mut records = Vec::new();
    for kind in kinds {
        let certs = if all {
            all_decomps(&built.table, &structure, x, &kind)?
        } else {
            find_decomp(&built.table, &structure, x, &kind)?
                .into_iter()
                .collect()
        };
        if certs.is_empty() {
            let [c, sg, e] = cert_cells(None);
            grid.push(vec![
                label.to_string(),
                x.to_string(),
                kind.name(),
                c,
                sg,
                e,
            ]);
        }
        for cert in &certs {
            let [c, sg, e] = cert_cells(Some(cert));
            grid.push(vec![
                label.to_string(),
                x.to_string(),
                kind.name(),
                c,
                sg,
                e,
            ]);
        }
        records.push(ElementRecord {
            ring: label,
            x,
            kind: kind.name(),
            certs,
        });
    }
    emit(&render_report(&grid, &records, format)?, format, plain);
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SweepRecord {
    n: usize,
    verdicts: std::collections::BTreeMap<String, bool>,
    weak_not_nil: bool,
}

fn sweep(range: &str, kinds: &str, format: Format, plain: bool) -> Result<ExitCode> {
    let range = parse_range(range)?;
    let kinds = parse_kinds(kinds, None, None)?;
    let rows = sweep_zn(range, &kinds)?;
    let names: Vec<String> = kinds.iter().map(DecompKind::name).collect();
    let mut headers = vec!["n"];
    headers.extend(names.iter().map(String::as_str));
    headers.push("weak-not-nil");
    let mut grid = Grid::new(&headers);
    let mut records = Vec::new();
    for row in rows {
        let mut cells = vec![row.n.to_string()];
        cells.extend(row.verdicts.iter().map(bool::to_string));
        cells.push(row.weak_not_nil.to_string());
        grid.push(cells);
        records.push(SweepRecord {
            n: row.n,
            verdicts: names.iter().cloned().zip(row.verdicts).collect(),
            weak_not_nil: row.weak_not_nil,
        });
    }
    emit(&render_report(&grid, &records, format)?, format, plain);
    Ok(ExitCode::SUCCESS)
}

fn verify(
    corpus: &str,
    checks: &str,
    format: Format,
    output: Option<&PathBuf>,
    plain: bool,
) -> Result<ExitCode> {
    let text = if corpus == "default" {
        DEFAULT_CORPUS.to_string()
    } else {
        std::fs::read_to_string(corpus).with_context(|| format!("reading corpus `{corpus}`"))?
    };
    let spec = CorpusSpec::parse(&text)?;
    let selector = CheckSelector::parse(checks)?;
    let report = run_suite(&spec, &selector, &build_options()?);

    let mut grid = Grid::new(&["ring", "check_id", "outcome", "witness"]);
    for c in &report.cells {
        let outcome = serde_json::to_value(c.outcome)?
            .as_str()
            .unwrap_or_default()
            .to_string();
        let witness = c.witness.as_ref().map_or(String::new(), |w| {
            let ids: Vec<String> = w.elements.iter().map(u32::to_string).collect();
            if ids.is_empty() {
                w.note.clone()
            } else {
                format!("[{}] {}", ids.join(" "), w.note)
            }
        });
        grid.push(vec![c.ring.clone(), c.check_id.clone(), outcome, witness]);
    }
    let text = render_report(&grid, &report.cells, format)?;
    match output {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing `{}`", path.display()))?;
            let counts: Vec<String> = report
                .counts()
                .iter()
                .map(|(k, v)| {
                    format!(
                        "{}={v}",
                        serde_json::to_value(k)
                            .ok()
                            .and_then(|j| j.as_str().map(String::from))
                            .unwrap_or_default()
                    )
                })
                .collect();
            eprintln!("{} cells: {}", report.cells.len(), counts.join(" "));
        }
        None => emit(&text, format, plain),
    }
    let failed = report.cells.iter().any(|c| c.outcome == CellOutcome::Fail);
    let errored = report.cells.iter().any(|c| c.outcome == CellOutcome::Error);
    Ok(if failed {
        ExitCode::from(1)
    } else if errored {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

#[derive(Serialize)]
struct StructureRow {
    index: ElementId,
    coords: String,
    unit: bool,
    inverse: Option<ElementId>,
    idempotent: bool,
    nilpotent_index: Option<u32>,
    radical: bool,
}

fn dump(ring: &str, what: DumpWhat, format: Format, plain: bool) -> Result<ExitCode> {
    let built = load_ring(ring)?;
    let t = &built.table;
    match what {
        DumpWhat::Tables => {
            // tables are always emitted as csv
            print!("{}", t.to_csv());
        }
        DumpWhat::Structure => {
            let s = StructureCache::new(t);
            let rows: Vec<StructureRow> = t
                .elements()
                .map(|x| StructureRow {
                    index: x,
                    coords: built.coords[x.index()].clone(),
                    unit: s.is_unit(x),
                    inverse: s.inverse(x),
                    idempotent: s.is_idempotent(x),
                    nilpotent_index: s.nilpotency_index(x),
                    radical: s.in_radical(x),
                })
                .collect();
            let mut grid = Grid::new(&[
                "index",
                "coords",
                "unit",
                "inverse",
                "idempotent",
                "nilpotent_index",
                "radical",
            ]);
            let opt = |o: Option<String>| o.unwrap_or_else(|| "-".into());
            for r in &rows {
                grid.push(vec![
                    r.index.to_string(),
                    r.coords.clone(),
                    r.unit.to_string(),
                    opt(r.inverse.map(|v| v.to_string())),
                    r.idempotent.to_string(),
                    opt(r.nilpotent_index.map(|v| v.to_string())),
                    r.radical.to_string(),
                ]);
            }
            emit(&render_report(&grid, &rows, format)?, format, plain);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let plain = cli.plain;
    match cli.command {
        Command::Classify {
            ring,
            kinds,
            s,
            expect,
            format,
        } => classify(&ring, &kinds, s.as_deref(), expect, format, plain),
        Command::Element {
            ring,
            index,
            kinds,
            s,
            all,
            format,
        } => element(&ring, index, &kinds, s.as_deref(), all, format, plain),
        Command::Sweep { zn, kinds, format } => sweep(&zn, &kinds, format, plain),
        Command::Verify {
            corpus,
            checks,
            format,
            output,
        } => verify(&corpus, &checks, format, output.as_ref(), plain),
        Command::Dump { ring, what, format } => dump(&ring, what, format, plain),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..12").unwrap(), 2..=12);
        assert_eq!(parse_range("2..=12").unwrap(), 2..=12);
        assert!(parse_range("12..2").is_err());
        assert!(parse_range("0..4").is_err());
        assert!(parse_range("2-12").is_err());
    }

    #[test]
    fn kinds_need_s_when_restricted() {
        let built = build_str("Z(6)", &BuildOptions::default()).unwrap();
        let s = StructureCache::new(&built.table);
        assert!(parse_kinds("s-weak-nil-clean", Some((&built, &s)), None).is_err());
        let k = parse_kinds("s-weak-nil-clean", Some((&built, &s)), Some("0,1")).unwrap();
        assert_eq!(k[0].name(), "s-weak-nil-clean[0,1]");
        assert!(parse_kinds("weak*-nil-clean,clean", None, None).is_ok());
        assert!(parse_kinds("bogus", None, None).is_err());
    }
}
