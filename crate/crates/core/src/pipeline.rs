//! Basket enumeration under Kawamata's bound and the filter chain that turns
//! baskets into Hilbert series candidates.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::orbifold::rr::{bk_bound, bk_stable, excess_vanishing};
use crate::orbifold::{
    ac2_of, anticanonical_coefficient, check_index, degree_of_with, Basket, Candidate, Convention,
    SingularityType, DEFAULT_ORDER,
};
use crate::{Rational, RationalFunction};

/// Indices with Fano 3-folds, as in the summary table.
pub const DEFAULT_INDICES: [u32; 12] = [3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 17, 19];

/// `r - 1/r < 24` forces `r ≤ 24`.
pub const MAX_LOCAL_INDEX: u32 = 24;

// lcm(2, ..., 24): scales every r - 1/r to an integer
const WEIGHT_SCALE: u64 = 5_354_228_880;
const BUDGET: u64 = 24 * WEIGHT_SCALE;

fn scaled_weight(r: u32) -> u64 {
    let r = u64::from(r);
    (r * r - 1) * (WEIGHT_SCALE / r)
}

/// All canonical germs `[r,a]` with `r ≤ 24` at index `f`, sorted by `(r, a)`.
pub fn enumerate_types(f: u32) -> Result<Vec<SingularityType>> {
    check_index(f)?;
    let mut out = Vec::new();
    for r in 2..=MAX_LOCAL_INDEX {
        for a in 1..=r / 2 {
            if let Ok(s) = SingularityType::new(r.into(), a.into(), f) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

fn extend(
    types: &[(SingularityType, u64)],
    start: usize,
    current: &mut Vec<SingularityType>,
    budget: u64,
    f: u32,
    out: &mut Vec<Basket>,
) {
    out.push(Basket::new(f, current.clone()).expect("germs share the index"));
    for (j, (s, w)) in types.iter().enumerate().skip(start) {
        if *w < budget {
            current.push(*s);
            extend(types, j, current, budget - w, f, out);
            current.pop();
        }
    }
}

fn weighted_types(f: u32) -> Result<Vec<(SingularityType, u64)>> {
    Ok(enumerate_types(f)?
        .into_iter()
        .map(|s| (s, scaled_weight(s.r())))
        .collect())
}

/// Every basket (including the empty one) with `Σ (r - 1/r) < 24`, in
/// lexicographic order of the sorted germ lists.
pub fn enumerate_baskets(f: u32) -> Result<Vec<Basket>> {
    let types = weighted_types(f)?;
    let mut out = Vec::new();
    extend(&types, 0, &mut Vec::new(), BUDGET, f, &mut out);
    Ok(out)
}

/// Same set as [`enumerate_baskets`], computed one subtree per leading germ in
/// parallel and merged back into canonical order.
pub fn enumerate_baskets_parallel(f: u32) -> Result<Vec<Basket>> {
    let types = weighted_types(f)?;
    let mut out: Vec<Basket> = (0..types.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let (s, w) = types[i];
            let mut part = Vec::new();
            if w < BUDGET {
                extend(&types, i, &mut vec![s], BUDGET - w, f, &mut part);
            }
            part
        })
        .collect();
    out.push(Basket::empty(f));
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineOptions {
    /// Drop unstable candidates from the output list (the stage count is
    /// recorded either way).
    pub apply_stability: bool,
    pub convention: Convention,
    pub order: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            apply_stability: false,
            convention: Convention::Standard,
            order: DEFAULT_ORDER,
        }
    }
}

/// Survivor counts after each stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub enumerated: usize,
    pub positive_degree: usize,
    pub excess_vanishing: usize,
    pub bk_bound: usize,
    pub stable: usize,
}

impl StageCounts {
    pub fn as_array(&self) -> [usize; 5] {
        [
            self.enumerated,
            self.positive_degree,
            self.excess_vanishing,
            self.bk_bound,
            self.stable,
        ]
    }
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub f: u32,
    pub options: PipelineOptions,
    pub counts: StageCounts,
    /// Stage 1c survivors (only the stable ones when stability is applied),
    /// in canonical basket order.
    pub candidates: Vec<Candidate>,
    /// Distinct Hilbert series among the 1c survivors.
    pub distinct_series: usize,
    /// Distinct series none of whose baskets is stable.
    pub unstable_series: usize,
    pub warnings: Vec<String>,
}

struct Screened {
    basket: Basket,
    degree: Rational,
    ac2: Rational,
}

/// Runs stages 1a, 1b, 1b+, 1c and 1c+ in order at index `f`.
pub fn run_pipeline(f: u32, options: PipelineOptions) -> Result<PipelineReport> {
    let baskets = enumerate_baskets(f)?;
    let enumerated = baskets.len();
    let convention = options.convention;

    let positive: Vec<Screened> = baskets
        .into_par_iter()
        .map(|basket| {
            let degree = degree_of_with(&basket, convention);
            let ac2 = ac2_of(&basket);
            Screened {
                basket,
                degree,
                ac2,
            }
        })
        .filter(|s| s.degree > Rational::zero())
        .collect();
    let positive_degree = positive.len();

    let vanishing: Vec<Screened> = positive
        .into_par_iter()
        .filter(|s| excess_vanishing(&s.basket, &s.degree, &s.ac2, convention))
        .collect();
    let excess_count = vanishing.len();

    let bounded: Vec<Screened> = vanishing
        .into_iter()
        .filter(|s| bk_bound(f, &s.degree, &s.ac2))
        .collect();
    let bound_count = bounded.len();
    let stable = bounded
        .iter()
        .filter(|s| bk_stable(f, &s.degree, &s.ac2))
        .count();

    let survivors: Vec<Candidate> = bounded
        .into_par_iter()
        .map(|s| Candidate::build_with(s.basket, options.order, convention))
        .collect();

    let mut seen: HashMap<&RationalFunction, bool> = HashMap::new();
    for c in &survivors {
        *seen.entry(&c.series).or_insert(false) |= c.stages.stable;
    }
    let distinct_series = seen.len();
    let unstable_series = seen.values().filter(|stable| !**stable).count();

    let mut warnings = Vec::new();
    if distinct_series != bound_count {
        warnings.push(format!(
            "f={f}: {bound_count} baskets pass stage 1c but give only {distinct_series} distinct series"
        ));
    }
    for c in &survivors {
        if let Some(n) = c.integrality_defect() {
            warnings.push(format!(
                "f={f} basket {{{}}}: coefficient of t^{n} is not a non-negative integer",
                c.basket
            ));
        }
    }

    let candidates = if options.apply_stability {
        survivors.into_iter().filter(|c| c.stages.stable).collect()
    } else {
        survivors
    };

    Ok(PipelineReport {
        f,
        options,
        counts: StageCounts {
            enumerated,
            positive_degree,
            excess_vanishing: excess_count,
            bk_bound: bound_count,
            stable,
        },
        candidates,
        distinct_series,
        unstable_series,
        warnings,
    })
}

/// Every listed candidate has at least one section of `-K_X`, i.e. the
/// coefficient of `t^f` is at least 1.
pub fn all_have_anticanonical_sections(report: &PipelineReport) -> bool {
    let one = Rational::from_integer(1.into());
    report
        .candidates
        .iter()
        .filter(|c| c.stages.survives_bound())
        .all(|c| anticanonical_coefficient(c).is_ok_and(|h| h >= one))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub series_count: usize,
    pub unstable_count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub rows: BTreeMap<u32, SweepRow>,
}

/// Series counts per index, with how many of them are unstable.
pub fn sweep(indices: &[u32]) -> Result<SweepSummary> {
    for &f in indices {
        check_index(f)?;
    }
    let reports = indices
        .par_iter()
        .map(|&f| run_pipeline(f, PipelineOptions::default()))
        .collect::<Result<Vec<_>>>()?;
    let rows = reports
        .into_iter()
        .map(|r| {
            (
                r.f,
                SweepRow {
                    series_count: r.distinct_series,
                    unstable_count: r.unstable_series,
                },
            )
        })
        .collect();
    Ok(SweepSummary { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_weights_are_exact() {
        for r in 2..=MAX_LOCAL_INDEX {
            let exact = Rational::new(i64::from(r * r - 1).into(), i64::from(r).into());
            let scaled = Rational::new(
                i64::try_from(scaled_weight(r)).unwrap().into(),
                i64::try_from(WEIGHT_SCALE).unwrap().into(),
            );
            assert_eq!(exact, scaled);
        }
    }

    #[test]
    fn types_respect_coprimality() {
        let t3 = enumerate_types(3).unwrap();
        let pairs: Vec<(u32, u32)> = t3.iter().map(|s| (s.r(), s.a())).collect();
        for want in [(2, 1), (4, 1), (5, 1), (5, 2), (7, 1)] {
            assert!(pairs.contains(&want));
        }
        assert!(pairs.iter().all(|(r, _)| r % 3 != 0));
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));

        let t5: Vec<(u32, u32)> = enumerate_types(5)
            .unwrap()
            .iter()
            .map(|s| (s.r(), s.a()))
            .collect();
        for want in [(7, 1), (7, 2), (7, 3)] {
            assert!(t5.contains(&want));
        }
        assert!(t5.iter().all(|(r, _)| r % 5 != 0));
        assert!(enumerate_types(19)
            .unwrap()
            .iter()
            .any(|s| (s.r(), s.a()) == (2, 1)));
        assert!(enumerate_types(2).is_err());
        assert!(enumerate_types(20).is_err());
    }

    #[test]
    fn basket_enumeration_at_index_three() {
        let baskets = enumerate_baskets(3).unwrap();
        assert_eq!(baskets.len(), 2813);
        assert_eq!(baskets[0], Basket::empty(3));
        assert!(baskets.windows(2).all(|w| w[0] < w[1]));
        let sixteen = Basket::from_pairs(3, &[(2, 1); 16]).unwrap();
        assert!(!baskets.contains(&sixteen));
        let fifteen = Basket::from_pairs(3, &[(2, 1); 15]).unwrap();
        assert!(baskets.contains(&fifteen));
        assert!(baskets.iter().all(|b| b.satisfies_kawamata()));
    }

    #[test]
    fn parallel_matches_serial() {
        for f in [3, 10] {
            assert_eq!(
                enumerate_baskets(f).unwrap(),
                enumerate_baskets_parallel(f).unwrap()
            );
        }
    }

    #[test]
    fn emptied_report_is_vacuously_fine() {
        let mut report = run_pipeline(10, PipelineOptions::default()).unwrap();
        assert!(all_have_anticanonical_sections(&report));
        report.candidates.clear();
        assert!(all_have_anticanonical_sections(&report));
    }

    #[test]
    fn index_ten() {
        let report = run_pipeline(10, PipelineOptions::default()).unwrap();
        assert_eq!(report.distinct_series, 1);
        assert_eq!(report.unstable_series, 1);
        assert_eq!(report.counts.stable, 0);
        let stable_only = run_pipeline(
            10,
            PipelineOptions {
                apply_stability: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(stable_only.candidates.is_empty());
        assert_eq!(stable_only.distinct_series, 1);
    }
}
