//! The assembled catalog, its per-height counts, emitters and golden-file checks.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::enumerate::{
    classify, raw_candidates, Candidate, CompositionLayout, GeneratorOptions, Signature, Survivor,
    Verdict,
};
use crate::error::{Error, Result};
use crate::intpoly::Polynomial;
use crate::ordering::{flatten_roots, signature_order, OrderKey};
use crate::par::{map_ordered, Exec};
use crate::realroots::AlgebraicReal;

/// Default refinement exponent: intervals narrower than `10^-11`, ten printed digits.
pub const DEFAULT_PRECISION: u32 = 11;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub c: usize,
    pub n: u32,
    pub k: u32,
    pub layout: CompositionLayout,
    pub signature: Signature,
    pub value: AlgebraicReal,
    pub decimal: String,
    pub key: OrderKey,
}

impl CatalogEntry {
    pub fn poly(&self) -> &Polynomial {
        self.value.minpoly()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogOptions {
    /// Values are certified to width `10^-precision` and printed with `precision - 1` digits.
    pub precision: u32,
    pub exec: Exec,
    pub generator: GeneratorOptions,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            precision: DEFAULT_PRECISION,
            exec: Exec::default(),
            generator: GeneratorOptions::default(),
        }
    }
}

pub fn build_catalog(max_height: u32) -> Result<Vec<CatalogEntry>> {
    build_catalog_with(max_height, &CatalogOptions::default())
}

pub fn build_catalog_with(max_height: u32, opts: &CatalogOptions) -> Result<Vec<CatalogEntry>> {
    if max_height == 0 {
        return Err(Error::Precondition("max height must be at least 1".into()));
    }
    if opts.precision == 0 {
        return Err(Error::Precondition("precision must be at least 1".into()));
    }
    let candidates: Vec<Candidate> = (1..=max_height)
        .flat_map(|n| (1..=n).map(move |k| (n, k)))
        .flat_map(|(n, k)| raw_candidates(n, k, opts.generator))
        .collect();
    let verdicts = map_ordered(opts.exec, &candidates, |c| classify(&c.poly));

    let mut survivors = Vec::new();
    for (candidate, verdict) in candidates.into_iter().zip(verdicts) {
        if let Verdict::Survives(roots) = verdict? {
            survivors.push(Survivor { candidate, roots });
        }
    }

    let mut pending = Vec::new();
    for block in survivors.chunk_by(|a, b| same_layout(&a.candidate, &b.candidate)) {
        let order = signature_order(block);
        for (sig_rank, s, r) in flatten_roots(block, &order) {
            let cand = &block[s].candidate;
            let key = OrderKey {
                n: cand.layout.n,
                k: cand.layout.k,
                layout: cand.rank,
                signature: sig_rank,
                root: r,
            };
            pending.push((cand, key, &block[s].roots[r]));
        }
    }

    let digits = opts.precision - 1;
    let decimals = map_ordered(opts.exec, &pending, |(_, _, root)| {
        root.truncated_decimal(digits)
    });
    Ok(pending
        .into_iter()
        .zip(decimals)
        .enumerate()
        .map(|(i, ((cand, key, root), decimal))| CatalogEntry {
            c: i + 1,
            n: cand.layout.n,
            k: cand.layout.k,
            layout: cand.layout.clone(),
            signature: cand.signature.clone(),
            value: root.clone(),
            decimal,
            key,
        })
        .collect())
}

fn same_layout(a: &Candidate, b: &Candidate) -> bool {
    a.layout == b.layout && a.rank == b.rank
}

/// `Φ(n, k)` and `Φ(n)` for heights `1..=max_height`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiTable {
    pub max_height: u32,
    counts: BTreeMap<(u32, u32), usize>,
}

impl PhiTable {
    pub fn phi(&self, n: u32, k: u32) -> usize {
        self.counts.get(&(n, k)).copied().unwrap_or(0)
    }

    pub fn total(&self, n: u32) -> usize {
        (1..=n).map(|k| self.phi(n, k)).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (1..=self.max_height).map(|n| self.total(n)).collect()
    }

    /// Right-aligned matrix: one row per height, degrees `1..n-1` (just `1` at height 1).
    pub fn render(&self) -> String {
        let h = self.max_height;
        let cols = h.saturating_sub(1).max(1);
        let mut out = String::from("n\\k");
        for k in 1..=cols {
            let _ = write!(out, "{k:>6}");
        }
        out.push_str("  Phi(n)\n");
        for n in 1..=h {
            let _ = write!(out, "{n:>3}");
            let shown = n.saturating_sub(1).max(1);
            for k in 1..=cols {
                if k <= shown {
                    let _ = write!(out, "{:>6}", self.phi(n, k));
                } else {
                    out.push_str("      ");
                }
            }
            let _ = writeln!(out, "{:>8}", self.total(n));
        }
        let totals: Vec<String> = self.totals().iter().map(usize::to_string).collect();
        let _ = writeln!(out, "Phi: {}", totals.join(", "));
        out
    }
}

pub fn phi_table(catalog: &[CatalogEntry]) -> PhiTable {
    let mut counts = BTreeMap::new();
    for e in catalog {
        *counts.entry((e.n, e.k)).or_insert(0) += 1;
    }
    PhiTable {
        max_height: catalog.iter().map(|e| e.n).max().unwrap_or(0),
        counts,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Serialize)]
struct JsonEntry {
    c: usize,
    n: u32,
    k: u32,
    composition: String,
    signs: String,
    value: String,
    polynomial: String,
    interval_lo: String,
    interval_hi: String,
    exact: Option<String>,
}

pub fn emit<W: Write>(
    catalog: &[CatalogEntry],
    format: Format,
    out: &mut W,
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "c,n,k,composition,signs,value,polynomial")?;
            for e in catalog {
                writeln!(
                    out,
                    "{},{},{},\"{}\",\"{}\",{},\"{}\"",
                    e.c,
                    e.n,
                    e.k,
                    e.layout.display(),
                    e.signature,
                    e.decimal,
                    e.poly()
                )?;
            }
        }
        Format::Json => {
            let rows: Vec<JsonEntry> = catalog
                .iter()
                .map(|e| JsonEntry {
                    c: e.c,
                    n: e.n,
                    k: e.k,
                    composition: e.layout.display(),
                    signs: e.signature.to_string(),
                    value: e.decimal.clone(),
                    polynomial: e.poly().to_string(),
                    interval_lo: e.value.interval().lo.to_string(),
                    interval_hi: e.value.interval().hi.to_string(),
                    exact: e.value.as_rational().map(|r| r.to_string()),
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Text => {
            let mut last_n = 0;
            for e in catalog {
                if e.n != last_n {
                    if last_n != 0 {
                        writeln!(out)?;
                    }
                    writeln!(
                        out,
                        "{:>5}  {:>2}  {:>2}  {:<16} {:<12} omega",
                        "c", "n", "k", "composition", "signs"
                    )?;
                    last_n = e.n;
                }
                writeln!(
                    out,
                    "{:>5}  {:>2}  {:>2}  {:<16} {:<12} {}",
                    e.c,
                    e.n,
                    e.k,
                    e.layout.display(),
                    e.signature.to_string(),
                    e.decimal
                )?;
            }
        }
    }
    Ok(())
}

pub fn emit_to_path(catalog: &[CatalogEntry], format: Format, path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io_err)?;
    let mut w = std::io::BufWriter::new(file);
    emit(catalog, format, &mut w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

/// One transcribed table row.
#[derive(Clone, Debug, Deserialize)]
pub struct GoldenRow {
    pub c: usize,
    pub n: u32,
    pub k: u32,
    pub composition: String,
    pub signs: String,
    pub value: String,
    #[serde(default)]
    pub closed_form: String,
    #[serde(default)]
    pub a_number: String,
}

/// A known defect of the transcribed tables and its corrected value.
#[derive(Clone, Debug, Deserialize)]
pub struct Erratum {
    pub c: Option<usize>,
    pub field: String,
    pub golden: String,
    pub corrected: String,
    pub note: String,
}

fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    rdr.deserialize()
        .map(|r| r.map_err(|e| csv_error(path, e)))
        .collect()
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    match e.into_kind() {
        csv::ErrorKind::Io(source) => Error::Io {
            path: path.to_path_buf(),
            source,
        },
        kind => Error::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("{kind:?}"),
        },
    }
}

pub fn load_golden(path: &Path) -> Result<Vec<GoldenRow>> {
    read_csv(path)
}

pub fn load_errata(path: &Path) -> Result<Vec<Erratum>> {
    read_csv(path)
}

/// Drops a leading `+` and the trailing ellipsis used for irrational values.
pub fn normalize_value(raw: &str) -> String {
    let s = raw.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    s.trim_end_matches('.').to_string()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub c: usize,
    pub field: &'static str,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyReport {
    pub checked: usize,
    pub matched: usize,
    pub errata_applied: Vec<(usize, String)>,
    pub mismatches: Vec<Mismatch>,
    /// Golden rows past the end of the catalog, and the reverse.
    pub missing: Vec<usize>,
    pub extra: Vec<usize>,
}

impl VerifyReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty() && self.missing.is_empty() && self.extra.is_empty()
    }

    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}/{} entries match ({} errata applied)\n",
            self.matched,
            self.checked,
            self.errata_applied.len()
        );
        for m in &self.mismatches {
            let _ = writeln!(
                out,
                "c={} {}: expected {:?}, got {:?}",
                m.c, m.field, m.expected, m.actual
            );
        }
        for c in &self.missing {
            let _ = writeln!(out, "c={c}: missing from catalog");
        }
        for c in &self.extra {
            let _ = writeln!(out, "c={c}: not in golden data");
        }
        out
    }
}

/// Compares catalog entries to golden rows on `n, k, composition, signs, value`.
///
/// An erratum replaces a golden field only when the golden text matches it exactly.
pub fn verify_golden(
    catalog: &[CatalogEntry],
    golden: &[GoldenRow],
    errata: &[Erratum],
) -> VerifyReport {
    let mut report = VerifyReport::default();
    let by_c: BTreeMap<usize, &CatalogEntry> = catalog.iter().map(|e| (e.c, e)).collect();
    let max_n = golden.iter().map(|g| g.n).max().unwrap_or(0);
    for row in golden {
        let Some(entry) = by_c.get(&row.c) else {
            report.missing.push(row.c);
            continue;
        };
        report.checked += 1;
        let fields: [(&'static str, String, String); 5] = [
            ("n", row.n.to_string(), entry.n.to_string()),
            ("k", row.k.to_string(), entry.k.to_string()),
            (
                "composition",
                row.composition.clone(),
                entry.layout.display(),
            ),
            ("signs", row.signs.clone(), entry.signature.to_string()),
            ("value", row.value.clone(), entry.decimal.clone()),
        ];
        let mut ok = true;
        for (field, golden_text, actual) in fields {
            let mut expected = golden_text.clone();
            if let Some(e) = errata
                .iter()
                .find(|e| e.c == Some(row.c) && e.field == field && e.golden == golden_text)
            {
                expected = e.corrected.clone();
                report.errata_applied.push((row.c, field.to_string()));
            }
            let expected = if field == "value" {
                normalize_value(&expected)
            } else {
                expected
            };
            if expected != actual {
                ok = false;
                report.mismatches.push(Mismatch {
                    c: row.c,
                    field,
                    expected,
                    actual,
                });
            }
        }
        if ok {
            report.matched += 1;
        }
    }
    let golden_cs: std::collections::BTreeSet<usize> = golden.iter().map(|g| g.c).collect();
    report.extra = catalog
        .iter()
        .filter(|e| e.n <= max_n && !golden_cs.contains(&e.c))
        .map(|e| e.c)
        .collect();
    report
}
