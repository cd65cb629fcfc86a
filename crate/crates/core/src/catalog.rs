//! Catalog records and their JSON, CSV and plain-text renderings.
//!
//! Rationals are rendered as `num/den`; records are emitted in canonical
//! basket order so identical runs produce identical bytes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelProposal;
use crate::orbifold::{Basket, Candidate, Convention, StageFlags};
use crate::pipeline::{PipelineReport, StageCounts, SweepSummary};
use crate::tables::Proposed;
use crate::{Poly, Rational};

pub const DISCLAIMER: &str = "Models are proposals from a generator-degree heuristic that assumes \
general generators; they are not a proved classification.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format {other:?} (expected table, json or csv)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: i64,
}

impl Fraction {
    fn from_rational(q: &Rational) -> Result<Self> {
        use num_traits::ToPrimitive;
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(num), Some(den)) => Ok(Fraction { num, den }),
            _ => Err(Error::NonIntegral(format!("{q} does not fit in 64 bits"))),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Format(format!("bad fraction {s:?}"));
        let (n, d) = s.split_once('/').ok_or_else(bad)?;
        Ok(Fraction {
            num: n.parse().map_err(|_| bad())?,
            den: d.parse().map_err(|_| bad())?,
        })
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelRecord {
    pub weights: Vec<u32>,
    pub numerator: Vec<i64>,
    pub codimension: usize,
    pub equation_degrees: Option<Vec<u32>>,
    pub adjunction_degree: Option<u32>,
}

impl From<&ModelProposal> for ModelRecord {
    fn from(m: &ModelProposal) -> Self {
        ModelRecord {
            weights: m.weights.clone(),
            numerator: m.numerator_coeffs(),
            codimension: m.codimension,
            equation_degrees: m.equation_degrees.clone(),
            adjunction_degree: m.adjunction_degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    pub f: u32,
    pub basket: Vec<[u32; 2]>,
    pub a3: Fraction,
    pub ac2: Fraction,
    pub series_numerator: Vec<i64>,
    pub series_denominator: Vec<i64>,
    pub prefix: Vec<i64>,
    pub stages: StageFlags,
    pub model: Option<ModelRecord>,
}

fn integer_coeffs(p: &Poly, what: &str) -> Result<Vec<i64>> {
    p.to_i64_coeffs()
        .ok_or_else(|| Error::NonIntegral(format!("{what} {p}")))
}

impl CatalogRecord {
    pub fn new(candidate: &Candidate, model: Option<&ModelProposal>) -> Result<Self> {
        let prefix = candidate.prefix.to_i64_coeffs().ok_or_else(|| {
            Error::NonIntegral(format!("series prefix of {{{}}}", candidate.basket))
        })?;
        Ok(CatalogRecord {
            f: candidate.f(),
            basket: candidate
                .basket
                .pairs()
                .into_iter()
                .map(|(r, a)| [r, a])
                .collect(),
            a3: Fraction::from_rational(&candidate.degree)?,
            ac2: Fraction::from_rational(&candidate.ac2)?,
            series_numerator: integer_coeffs(candidate.series.num(), "series numerator")?,
            series_denominator: integer_coeffs(candidate.series.den(), "series denominator")?,
            prefix,
            stages: candidate.stages,
            model: model.map(ModelRecord::from),
        })
    }

    pub fn basket_string(&self) -> String {
        self.basket
            .iter()
            .map(|[r, a]| format!("{r},{a}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogMetadata {
    pub f: u32,
    pub counts: StageCounts,
    pub distinct_series: usize,
    pub unstable_series: usize,
    pub order: usize,
    pub convention: Convention,
    pub stable_only: bool,
    pub disclaimer: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogDocument {
    pub metadata: CatalogMetadata,
    pub records: Vec<CatalogRecord>,
}

impl CatalogDocument {
    pub fn new(report: &PipelineReport, proposals: &[Proposed]) -> Result<Self> {
        let records = proposals
            .iter()
            .map(|p| CatalogRecord::new(&p.candidate, p.proposal.as_ref().ok()))
            .collect::<Result<Vec<_>>>()?;
        Ok(CatalogDocument {
            metadata: CatalogMetadata {
                f: report.f,
                counts: report.counts,
                distinct_series: report.distinct_series,
                unstable_series: report.unstable_series,
                order: report.options.order,
                convention: report.options.convention,
                stable_only: report.options.apply_stability,
                disclaimer: DISCLAIMER.to_string(),
            },
            records,
        })
    }
}

/// `1a:2813 1b:1295 1c:231 stable:181`
pub fn stage_header(counts: &StageCounts) -> String {
    format!(
        "1a:{} 1b:{} 1c:{} stable:{}",
        counts.enumerated, counts.positive_degree, counts.bk_bound, counts.stable
    )
}

fn bracket<T: ToString>(xs: &[T]) -> String {
    let inner: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", inner.join(","))
}

fn unbracket<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    let bad = || Error::Format(format!("bad list {s:?}"));
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(bad)?;
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect()
}

/// One CSV row; lists are written as `[a,b,c]`, absent options as empty
/// cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CsvRow {
    f: u32,
    basket: String,
    a3: String,
    ac2: String,
    series_numerator: String,
    series_denominator: String,
    prefix: String,
    kawamata: bool,
    positive_degree: bool,
    excess_vanishing: bool,
    bk_bound: bool,
    stable: bool,
    weights: String,
    model_numerator: String,
    codimension: String,
    equation_degrees: String,
    adjunction_degree: String,
}

impl From<&CatalogRecord> for CsvRow {
    fn from(r: &CatalogRecord) -> Self {
        let m = r.model.as_ref();
        CsvRow {
            f: r.f,
            basket: r.basket_string(),
            a3: r.a3.to_string(),
            ac2: r.ac2.to_string(),
            series_numerator: bracket(&r.series_numerator),
            series_denominator: bracket(&r.series_denominator),
            prefix: bracket(&r.prefix),
            kawamata: r.stages.kawamata,
            positive_degree: r.stages.positive_degree,
            excess_vanishing: r.stages.excess_vanishing,
            bk_bound: r.stages.bk_bound,
            stable: r.stages.stable,
            weights: m.map(|m| bracket(&m.weights)).unwrap_or_default(),
            model_numerator: m.map(|m| bracket(&m.numerator)).unwrap_or_default(),
            codimension: m.map(|m| m.codimension.to_string()).unwrap_or_default(),
            equation_degrees: m
                .and_then(|m| m.equation_degrees.as_deref())
                .map(bracket)
                .unwrap_or_default(),
            adjunction_degree: m
                .and_then(|m| m.adjunction_degree)
                .map(|k| k.to_string())
                .unwrap_or_default(),
        }
    }
}

impl TryFrom<CsvRow> for CatalogRecord {
    type Error = Error;

    fn try_from(row: CsvRow) -> Result<Self> {
        let basket = Basket::parse(row.f, &row.basket)?
            .pairs()
            .into_iter()
            .map(|(r, a)| [r, a])
            .collect();
        let model = if row.weights.is_empty() {
            None
        } else {
            Some(ModelRecord {
                weights: unbracket(&row.weights)?,
                numerator: unbracket(&row.model_numerator)?,
                codimension: row
                    .codimension
                    .parse()
                    .map_err(|_| Error::Format(format!("bad codimension {:?}", row.codimension)))?,
                equation_degrees: if row.equation_degrees.is_empty() {
                    None
                } else {
                    Some(unbracket(&row.equation_degrees)?)
                },
                adjunction_degree: if row.adjunction_degree.is_empty() {
                    None
                } else {
                    Some(row.adjunction_degree.parse().map_err(|_| {
                        Error::Format(format!("bad adjunction degree {:?}", row.adjunction_degree))
                    })?)
                },
            })
        };
        Ok(CatalogRecord {
            f: row.f,
            basket,
            a3: Fraction::parse(&row.a3)?,
            ac2: Fraction::parse(&row.ac2)?,
            series_numerator: unbracket(&row.series_numerator)?,
            series_denominator: unbracket(&row.series_denominator)?,
            prefix: unbracket(&row.prefix)?,
            stages: StageFlags {
                kawamata: row.kawamata,
                positive_degree: row.positive_degree,
                excess_vanishing: row.excess_vanishing,
                bk_bound: row.bk_bound,
                stable: row.stable,
            },
            model,
        })
    }
}

pub fn records_to_csv(records: &[CatalogRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    if records.is_empty() {
        // header only
        w.write_record([
            "f",
            "basket",
            "a3",
            "ac2",
            "series_numerator",
            "series_denominator",
            "prefix",
            "kawamata",
            "positive_degree",
            "excess_vanishing",
            "bk_bound",
            "stable",
            "weights",
            "model_numerator",
            "codimension",
            "equation_degrees",
            "adjunction_degree",
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

pub fn records_from_csv(text: &str) -> Result<Vec<CatalogRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    rdr.deserialize::<CsvRow>()
        .map(|row| CatalogRecord::try_from(row?))
        .collect()
}

pub fn document_to_json(doc: &CatalogDocument) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

pub fn document_from_json(text: &str) -> Result<CatalogDocument> {
    Ok(serde_json::from_str(text)?)
}

fn model_line(m: &ModelProposal) -> String {
    let mut s = m.to_string();
    if m.codimension > 0 {
        let _ = write!(s, "  codim {}", m.codimension);
    }
    if m.high_codimension {
        s.push_str("  (high codimension, unreviewed)");
    }
    s
}

fn candidate_block(c: &Candidate, out: &mut String) {
    let _ = writeln!(out, "f = {}", c.f());
    let _ = writeln!(out, "basket = {{{}}}", c.basket);
    let _ = writeln!(out, "A^3 = {}", c.degree);
    let _ = writeln!(out, "Ac2 = {}", c.ac2);
    let _ = writeln!(out, "P(t) = {}", c.series);
    let prefix: Vec<String> = c.prefix.coeffs().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "prefix = {}", prefix.join(","));
    let s = c.stages;
    let _ = writeln!(
        out,
        "stages: kawamata={} positive_degree={} excess_vanishing={} bk_bound={} stable={}",
        s.kawamata, s.positive_degree, s.excess_vanishing, s.bk_bound, s.stable
    );
}

/// Output of the `series` command.
pub fn render_series(c: &Candidate, format: Format) -> Result<String> {
    match format {
        Format::Table => {
            let mut out = String::new();
            candidate_block(c, &mut out);
            Ok(out)
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&CatalogRecord::new(c, None)?)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => records_to_csv(&[CatalogRecord::new(c, None)?]),
    }
}

/// Output of the `model` command.
pub fn render_model(c: &Candidate, m: &ModelProposal, format: Format) -> Result<String> {
    match format {
        Format::Table => {
            let mut out = String::new();
            candidate_block(c, &mut out);
            let _ = writeln!(out, "proposal: {}", model_line(m));
            let _ = writeln!(out, "weights = {}", bracket(&m.weights));
            let _ = writeln!(out, "numerator = {}", m.numerator);
            let _ = writeln!(out, "codimension = {}", m.codimension);
            match &m.equation_degrees {
                Some(e) => {
                    let _ = writeln!(out, "equation degrees = {}", bracket(e));
                }
                None => {
                    let _ = writeln!(out, "equation degrees = unknown");
                }
            }
            if let Some(k) = m.adjunction_degree {
                let _ = writeln!(out, "adjunction degree = {k}");
            }
            let _ = writeln!(out, "note: {DISCLAIMER}");
            Ok(out)
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&CatalogRecord::new(c, Some(m))?)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => records_to_csv(&[CatalogRecord::new(c, Some(m))?]),
    }
}

/// Output of the `classify` command.
pub fn render_catalog(
    report: &PipelineReport,
    proposals: &[Proposed],
    format: Format,
) -> Result<String> {
    match format {
        Format::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "{}", stage_header(&report.counts));
            let _ = writeln!(
                out,
                "# f={} excess_vanishing:{} distinct_series:{} unstable_series:{}",
                report.f,
                report.counts.excess_vanishing,
                report.distinct_series,
                report.unstable_series
            );
            for p in proposals {
                let c = &p.candidate;
                let model = match &p.proposal {
                    Ok(m) => model_line(m),
                    Err(e) => format!("no model: {e}"),
                };
                let _ = writeln!(
                    out,
                    "{{{}}}\tA^3={}\tAc2={}\t{}\t{}",
                    c.basket,
                    c.degree,
                    c.ac2,
                    if c.stages.stable {
                        "stable"
                    } else {
                        "unstable"
                    },
                    model
                );
            }
            for w in &report.warnings {
                let _ = writeln!(out, "# warning: {w}");
            }
            Ok(out)
        }
        Format::Json => document_to_json(&CatalogDocument::new(report, proposals)?),
        Format::Csv => records_to_csv(&CatalogDocument::new(report, proposals)?.records),
    }
}

#[derive(Serialize)]
struct SweepCsvRow {
    f: u32,
    series_count: usize,
    unstable_count: usize,
}

/// Output of the `sweep` command.
pub fn render_sweep(summary: &SweepSummary, format: Format) -> Result<String> {
    match format {
        Format::Table => {
            let join = |xs: Vec<String>| xs.join(" ");
            let mut out = String::new();
            let _ = writeln!(
                out,
                "f {}",
                join(summary.rows.keys().map(u32::to_string).collect())
            );
            let _ = writeln!(
                out,
                "series {}",
                join(
                    summary
                        .rows
                        .values()
                        .map(|r| r.series_count.to_string())
                        .collect()
                )
            );
            let _ = writeln!(
                out,
                "unstable {}",
                join(
                    summary
                        .rows
                        .values()
                        .map(|r| r.unstable_count.to_string())
                        .collect()
                )
            );
            Ok(out)
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(summary)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for (&f, r) in &summary.rows {
                w.serialize(SweepCsvRow {
                    f,
                    series_count: r.series_count,
                    unstable_count: r.unstable_count,
                })?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
            String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
        }
    }
}
