//! Published low-codimension tables and comparison of model proposals
//! against them.
//!
//! The fixture ships with the crate (`fixtures/tables.json`). Table 0 holds
//! the weighted projective spaces that are Fano 3-folds themselves, tables 1
//! to 3 the codimension 1-3 models and table 4 the codimension 4 proposals.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{propose_model, ModelProposal};
use crate::orbifold::{Basket, Candidate};
use crate::pipeline::PipelineReport;
use crate::Rational;

const FIXTURE: &str = include_str!("../fixtures/tables.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    /// `"ac2"` or `"basket"`.
    pub field: String,
    pub printed: String,
    pub corrected: String,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub table: u8,
    pub f: u32,
    pub model: String,
    pub basket: Option<String>,
    pub weights: Vec<u32>,
    pub equation_degrees: Option<Vec<u32>>,
    pub a3: Option<String>,
    pub ac2: Option<String>,
    pub codim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<Erratum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimTotals {
    pub columns: Vec<u32>,
    pub codim0: Vec<usize>,
    pub codim1: Vec<usize>,
    pub codim2: Vec<usize>,
    pub codim3: Vec<usize>,
    pub codim4: Vec<usize>,
}

impl CodimTotals {
    /// Counts for index `f`, codimension 0 to 4.
    pub fn for_index(&self, f: u32) -> Option<[usize; 5]> {
        let i = self.columns.iter().position(|&c| c == f)?;
        Some([
            self.codim0[i],
            self.codim1[i],
            self.codim2[i],
            self.codim3[i],
            self.codim4[i],
        ])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub description: String,
    pub codim_totals: CodimTotals,
    pub rows: Vec<TableRow>,
}

pub fn fixture() -> &'static Fixture {
    static PARSED: OnceLock<Fixture> = OnceLock::new();
    PARSED.get_or_init(|| serde_json::from_str(FIXTURE).expect("bundled table fixture parses"))
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Format(format!("bad rational {s:?}")))
}

impl TableRow {
    /// The basket to reproduce the row from, after any basket correction.
    pub fn effective_basket(&self) -> Option<Result<Basket>> {
        let text = match &self.erratum {
            Some(e) if e.field == "basket" => Some(e.corrected.as_str()),
            _ => self.basket.as_deref(),
        }?;
        Some(Basket::parse(self.f, text))
    }

    fn expected(&self, field: &str, printed: &Option<String>) -> Result<Option<Rational>> {
        let text = match &self.erratum {
            Some(e) if e.field == field => Some(e.corrected.clone()),
            _ => printed.clone(),
        };
        text.map(|t| parse_rational(&t)).transpose()
    }

    pub fn expected_a3(&self) -> Result<Option<Rational>> {
        self.expected("a3", &self.a3)
    }

    pub fn expected_ac2(&self) -> Result<Option<Rational>> {
        self.expected("ac2", &self.ac2)
    }
}

/// A candidate with the outcome of the model builder.
#[derive(Clone, Debug)]
pub struct Proposed {
    pub candidate: Candidate,
    pub proposal: std::result::Result<ModelProposal, String>,
}

/// Model proposals for every candidate in a report.
pub fn propose_all(report: &PipelineReport, cap: usize) -> Vec<Proposed> {
    use rayon::prelude::*;
    report
        .candidates
        .par_iter()
        .map(|c| Proposed {
            candidate: c.clone(),
            proposal: propose_model(c, cap).map_err(|e| e.to_string()),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowStatus {
    Matched,
    /// Reproduced, with the computed value replacing a known misprint.
    KnownMisprint {
        field: String,
        printed: String,
        computed: String,
    },
    ValueMismatch {
        details: Vec<String>,
    },
    Missing {
        reason: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct RowMatch {
    pub row: TableRow,
    #[serde(flatten)]
    pub status: RowStatus,
}

impl RowMatch {
    pub fn reproduced(&self) -> bool {
        matches!(
            self.status,
            RowStatus::Matched | RowStatus::KnownMisprint { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtraProposal {
    pub f: u32,
    pub basket: String,
    pub model: String,
    pub codim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowMatch>,
    /// Codimension ≤ 2 proposals that appear in no table.
    pub extras: Vec<ExtraProposal>,
    /// Proposals per index and codimension 0..=4, counting only those with
    /// equation degrees (codim ≤ 3) or any proposal (codim 4).
    pub codim_counts: BTreeMap<u32, [usize; 5]>,
    pub reference_counts: BTreeMap<u32, [usize; 5]>,
}

impl TableReport {
    pub fn rows_in(&self, table: u8) -> impl Iterator<Item = &RowMatch> {
        self.rows.iter().filter(move |r| r.row.table == table)
    }
}

fn compare_row(row: &TableRow, entry: &Proposed) -> RowStatus {
    let model = match &entry.proposal {
        Ok(m) => m,
        Err(e) => {
            return RowStatus::Missing {
                reason: format!("model builder failed: {e}"),
            }
        }
    };
    let mut details = Vec::new();
    let mut misprint = None;
    let c = &entry.candidate;

    let checks = [
        ("a3", row.expected_a3(), &c.degree, &row.a3),
        ("ac2", row.expected_ac2(), &c.ac2, &row.ac2),
    ];
    for (name, expected, computed, printed) in checks {
        match expected {
            Ok(Some(v)) if &v != computed => {
                details.push(format!("{name}: table {v}, computed {computed}"))
            }
            Ok(_) => {}
            Err(e) => details.push(e.to_string()),
        }
        if let Some(e) = row.erratum.as_ref().filter(|e| e.field == name) {
            misprint = Some((
                name.to_string(),
                printed.clone().unwrap_or_default(),
                computed.to_string(),
                e,
            ));
        }
    }
    if let Some(e) = row.erratum.as_ref().filter(|e| e.field == "basket") {
        misprint = Some(("basket".into(), e.printed.clone(), c.basket.to_string(), e));
    }
    if model.weights != row.weights {
        details.push(format!(
            "weights: table {:?}, proposed {:?}",
            row.weights, model.weights
        ));
    }
    if model.codimension != row.codim {
        details.push(format!(
            "codim: table {}, proposed {}",
            row.codim, model.codimension
        ));
    }
    if let Some(eqs) = &row.equation_degrees {
        if model.equation_degrees.as_ref() != Some(eqs) {
            details.push(format!(
                "equations: table {eqs:?}, proposed {:?}",
                model.equation_degrees
            ));
        }
    }
    if !details.is_empty() {
        return RowStatus::ValueMismatch { details };
    }
    match misprint {
        Some((field, printed, computed, _)) => RowStatus::KnownMisprint {
            field,
            printed,
            computed,
        },
        None => RowStatus::Matched,
    }
}

/// Looks up every fixture row among the proposals and reports whether it is
/// reproduced, plus codimension ≤ 2 proposals missing from the tables.
pub fn match_tables(entries: &[Proposed]) -> TableReport {
    let rows = fixture()
        .rows
        .iter()
        .map(|row| {
            let status = match row.effective_basket() {
                Some(Ok(basket)) => match entries.iter().find(|e| e.candidate.basket == basket) {
                    Some(entry) => compare_row(row, entry),
                    None => RowStatus::Missing {
                        reason: format!("no candidate with basket {{{basket}}} at f={}", row.f),
                    },
                },
                Some(Err(e)) => RowStatus::Missing {
                    reason: e.to_string(),
                },
                None => {
                    let found = entries.iter().any(|e| {
                        e.candidate.f() == row.f
                            && e.proposal.as_ref().is_ok_and(|m| m.weights == row.weights)
                    });
                    if found {
                        RowStatus::Matched
                    } else {
                        RowStatus::Missing {
                            reason: format!(
                                "no proposal with weights {:?} at f={}",
                                row.weights, row.f
                            ),
                        }
                    }
                }
            };
            RowMatch {
                row: row.clone(),
                status,
            }
        })
        .collect();

    let tabulated: BTreeSet<(u32, Vec<u32>)> = fixture()
        .rows
        .iter()
        .map(|r| (r.f, r.weights.clone()))
        .collect();
    let mut extras = Vec::new();
    let mut codim_counts: BTreeMap<u32, [usize; 5]> = BTreeMap::new();
    for e in entries {
        let Ok(m) = &e.proposal else { continue };
        let counted = match m.codimension {
            0..=3 => m.equation_degrees.is_some(),
            4 => true,
            _ => false,
        };
        if counted {
            codim_counts.entry(m.f).or_default()[m.codimension] += 1;
        }
        if m.codimension <= 2
            && m.equation_degrees.is_some()
            && !tabulated.contains(&(m.f, m.weights.clone()))
        {
            extras.push(ExtraProposal {
                f: m.f,
                basket: e.candidate.basket.to_string(),
                model: m.to_string(),
                codim: m.codimension,
            });
        }
    }
    let totals = &fixture().codim_totals;
    let reference_counts = totals
        .columns
        .iter()
        .filter_map(|&f| totals.for_index(f).map(|c| (f, c)))
        .collect();

    TableReport {
        rows,
        extras,
        codim_counts,
        reference_counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_shape() {
        let fx = fixture();
        let per_table = |t| fx.rows.iter().filter(|r| r.table == t).count();
        assert_eq!(per_table(0), 7);
        assert_eq!(per_table(1), 27);
        assert_eq!(per_table(2), 14);
        assert_eq!(per_table(3), 2);
        assert_eq!(per_table(4), 7);
        assert_eq!(fx.rows.iter().filter(|r| r.erratum.is_some()).count(), 3);
        assert!(fx.rows.iter().all(|r| r.codim + 4 == r.weights.len()));
    }

    #[test]
    fn reference_totals_sum() {
        let t = &fixture().codim_totals;
        let sums: Vec<usize> = [&t.codim0, &t.codim1, &t.codim2, &t.codim3, &t.codim4]
            .iter()
            .map(|row| row.iter().sum())
            .collect();
        assert_eq!(sums, vec![7, 27, 14, 2, 8]);
    }

    #[test]
    fn corrected_values() {
        let fx = fixture();
        let x4 = fx
            .rows
            .iter()
            .find(|r| r.model == "X_{4} ⊂ P(1,1,1,2,2)")
            .unwrap();
        assert_eq!(
            x4.expected_ac2().unwrap(),
            Some(Rational::from_integer(7.into()))
        );
        let x6 = fx
            .rows
            .iter()
            .find(|r| r.f == 5 && r.weights == vec![1, 2, 2, 3, 3])
            .unwrap();
        assert_eq!(
            x6.effective_basket().unwrap().unwrap().to_string(),
            "2,1;2,1;2,1;3,1;3,1"
        );
    }
}
