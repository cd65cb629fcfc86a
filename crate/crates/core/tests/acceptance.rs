use std::process::ExitCode;
use std::time::{Duration, Instant};

use fano3_core::model::{absorb_denominator, find_first_generators, propose_model};
use fano3_core::orbifold::{anticanonical_coefficient, Basket, Candidate};
use fano3_core::pipeline::{run_pipeline, sweep, PipelineOptions, DEFAULT_INDICES};
use fano3_core::tables::{match_tables, propose_all, Proposed, RowStatus};
use fano3_core::{Poly, Rational, RationalFunction};

mod common;

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn stage_counts_at_3() -> Outcome {
    let start = Instant::now();
    let report = run_pipeline(3, PipelineOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let c = report.counts;
    let got = [c.enumerated, c.positive_degree, c.bk_bound, c.stable];
    ensure(got == [2813, 1295, 231, 181], || format!("counts {got:?}"))?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "1a:2813 1b:1295 1c:231 stable:181 in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn sweep_counts() -> Outcome {
    let s = sweep(&DEFAULT_INDICES).map_err(|e| e.to_string())?;
    let series: Vec<usize> = s.rows.values().map(|r| r.series_count).collect();
    let unstable: Vec<usize> = s.rows.values().map(|r| r.unstable_count).collect();
    ensure(
        series == [231, 124, 63, 11, 23, 10, 2, 1, 3, 2, 1, 1],
        || format!("series {series:?}"),
    )?;
    ensure(unstable == [50, 42, 29, 5, 11, 6, 0, 1, 0, 0, 0, 0], || {
        format!("unstable {unstable:?}")
    })?;
    Ok(format!("series {series:?}, unstable {unstable:?}"))
}

fn all_proposals(stable_only: bool) -> Result<Vec<Proposed>, String> {
    let mut out = Vec::new();
    for f in DEFAULT_INDICES {
        let report = run_pipeline(
            f,
            PipelineOptions {
                apply_stability: stable_only,
                ..Default::default()
            },
        )
        .map_err(|e| e.to_string())?;
        out.extend(propose_all(&report, 30));
    }
    Ok(out)
}

fn low_codim_tables(proposals: &[Proposed]) -> Outcome {
    let report = match_tables(proposals);
    let mut misprints = Vec::new();
    let mut total = 0;
    for table in 1..=3 {
        for m in report.rows_in(table) {
            total += 1;
            match &m.status {
                RowStatus::Matched => {}
                RowStatus::KnownMisprint {
                    field,
                    printed,
                    computed,
                } => misprints.push(format!(
                    "{} {field}: printed {printed}, computed {computed}",
                    m.row.model
                )),
                other => return Err(format!("{} (f={}): {other:?}", m.row.model, m.row.f)),
            }
        }
    }
    let x4 = report
        .rows
        .iter()
        .find(|m| m.row.model == "X_{4} ⊂ P(1,1,1,2,2)")
        .ok_or("X_4 row missing")?;
    ensure(
        matches!(&x4.status, RowStatus::KnownMisprint { field, computed, .. } if field == "ac2" && computed == "7"),
        || format!("X_4 row: {:?}", x4.status),
    )?;
    let c = Candidate::build(Basket::parse(3, "2,1;7,2").unwrap(), 30);
    let m = propose_model(&c, 30).map_err(|e| e.to_string())?;
    ensure(m.to_string() == "X_{15} ⊂ P(1,2,3,5,7)", || m.to_string())?;
    ensure(
        c.degree.to_string() == "1/14" && c.ac2.to_string() == "73/14",
        || format!("{} {}", c.degree, c.ac2),
    )?;
    Ok(format!(
        "{total} rows reproduced; flagged: {}",
        misprints.join("; ")
    ))
}

fn worked_example() -> Outcome {
    let c = Candidate::build(Basket::parse(5, "2,1;3,1;7,3").unwrap(), 30);
    let printed = RationalFunction::new(
        Poly::from_ints(&[1, 0, 0, 1, 1, 1, 0, 0, 1]),
        Poly::from_ints(&[1, -1, -1, 0, 1, 1, -1, -1, 1, 1, 0, -1, -1, 1]),
    )
    .unwrap();
    ensure(c.series == printed, || format!("series {}", c.series))?;
    let prefix = c.prefix.to_i64_coeffs().ok_or("non-integral prefix")?;
    ensure(prefix[..9] == [1, 1, 2, 4, 6, 9, 13, 18, 24], || {
        format!("prefix {:?}", &prefix[..9])
    })?;
    let est = find_first_generators(&c.prefix, 30).map_err(|e| e.to_string())?;
    ensure(est.degrees == [1, 2, 3, 3, 4, 5], || {
        format!("estimate {:?}", est.degrees)
    })?;
    let absorbed = absorb_denominator(&c.series, &est.degrees).map_err(|e| e.to_string())?;
    ensure(absorbed == [1, 2, 3, 3, 4, 5, 7], || {
        format!("absorbed {absorbed:?}")
    })?;
    let m = propose_model(&c, 30).map_err(|e| e.to_string())?;
    let mut expected = vec![0i64; 21];
    for (k, v) in [
        (0, 1),
        (6, -1),
        (7, -1),
        (8, -1),
        (9, -1),
        (11, 1),
        (12, 1),
        (13, 1),
        (14, 1),
        (20, -1),
    ] {
        expected[k] = v;
    }
    ensure(m.numerator_coeffs() == expected, || {
        format!("numerator {}", m.numerator)
    })?;
    ensure(m.codimension == 3, || format!("codim {}", m.codimension))?;
    ensure(
        m.equation_degrees.as_deref() == Some(&[6, 7, 8, 9, 10][..]),
        || format!("equations {:?}", m.equation_degrees),
    )?;
    Ok(format!("{m}, numerator {}", m.numerator))
}

fn anticanonical_sections() -> Outcome {
    let one = Rational::from_integer(1.into());
    let mut checked = 0;
    for f in DEFAULT_INDICES {
        let report = run_pipeline(f, PipelineOptions::default()).map_err(|e| e.to_string())?;
        for c in &report.candidates {
            let h = anticanonical_coefficient(c).map_err(|e| e.to_string())?;
            ensure(h >= one, || format!("f={f} {{{}}}: h0(-K) = {h}", c.basket))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} candidates with h0(-K) >= 1"))
}

/// Condensed rerun of the property suites over all survivors plus 500
/// random enumerated baskets (the full versions live in `properties.rs`).
fn property_suites() -> Outcome {
    let mut sample = common::survivors(&DEFAULT_INDICES);
    let survivors = sample.len();
    sample.extend(
        common::random_baskets(&DEFAULT_INDICES, 500)
            .into_iter()
            .map(|b| Candidate::build(b, 30)),
    );
    for c in &sample {
        let o = common::Oracle::new(&c.basket);
        let f = o.f;
        for n in 0..=30 {
            ensure(o.p_n(n) == o.series_coeff(n), || {
                format!("plurigenus vs closed form {{{}}} n={n}", c.basket)
            })?;
            ensure(
                c.prefix.coeff(n as usize) == Some(&common::to_big(&o.p_n(n))),
                || format!("prefix {{{}}} n={n}", c.basket),
            )?;
        }
        for p in c.basket.items() {
            let r = i64::from(p.r());
            let dual = Rational::new((-(r * r - 1)).into(), (12 * r).into());
            for n in -30..30 {
                ensure(p.c_p(n) + p.c_p(-n - f as i64) == dual, || {
                    format!("duality {p} n={n}")
                })?;
            }
        }
        for n in (-f + 1)..0 {
            ensure(o.p_n(n) == -o.p_n(-n - f), || {
                format!("antisymmetry {{{}}} n={n}", c.basket)
            })?;
        }
        let serre = fano3_core::orbifold::satisfies_serre_symmetry(&c.series, c.f());
        ensure(serre == c.stages.excess_vanishing, || {
            format!("Serre {{{}}}", c.basket)
        })?;
    }
    let mut fixtures = 0;
    for row in &fano3_core::tables::fixture().rows {
        if let Some(basket) = row.effective_basket() {
            let c = Candidate::build(basket.map_err(|e| e.to_string())?, 30);
            let m = propose_model(&c, 30).map_err(|e| e.to_string())?;
            ensure(
                fano3_core::model::numerator_is_gorenstein(&m.numerator, &m.weights, row.f),
                || format!("Gorenstein {}", row.model),
            )?;
            fixtures += 1;
        }
        if let (true, Some(eqs)) = (row.codim <= 2, &row.equation_degrees) {
            let d = eqs.iter().sum::<u32>() as i64 - row.weights.iter().sum::<u32>() as i64;
            ensure(d == -(row.f as i64), || format!("adjunction {}", row.model))?;
        }
    }
    Ok(format!(
        "{} baskets ({survivors} survivors + 500 random), {fixtures} fixture numerators",
        sample.len()
    ))
}

fn table4_superset(proposals: &[Proposed]) -> Outcome {
    let report = match_tables(proposals);
    let mut n = 0;
    for m in report.rows_in(4) {
        ensure(m.reproduced(), || {
            format!("{} (f={}): {:?}", m.row.model, m.row.f, m.status)
        })?;
        let found = proposals.iter().any(|p| {
            p.candidate.f() == m.row.f
                && p.proposal
                    .as_ref()
                    .is_ok_and(|q| q.codimension == 4 && q.weights == m.row.weights)
        });
        ensure(found, || {
            format!("no codim-4 proposal {:?} at f={}", m.row.weights, m.row.f)
        })?;
        n += 1;
    }
    let extras_f3 = report.extras.iter().filter(|e| e.f == 3).count();
    for e in &report.extras {
        println!(
            "    info: untabulated f={} {{{}}} {}",
            e.f, e.basket, e.model
        );
    }
    for (f, reference) in &report.reference_counts {
        let ours = report.codim_counts.get(f).copied().unwrap_or_default();
        println!("    info: f={f} codim 0-4 ours {ours:?}, reference {reference:?}");
    }
    Ok(format!(
        "{n} tabulated codim-4 rows found among codim-4 proposals; {extras_f3} codim<=2 extras at f=3"
    ))
}

fn main() -> ExitCode {
    let proposals = all_proposals(true);
    let criteria: Vec<(&str, Check)> = vec![
        ("f=3 stage counts", Box::new(stage_counts_at_3)),
        ("sweep series/unstable counts", Box::new(sweep_counts)),
        (
            "Tables 1-3 reproduced",
            Box::new(|| low_codim_tables(proposals.as_ref().map_err(Clone::clone)?)),
        ),
        ("worked example f=5", Box::new(worked_example)),
        (
            "h0(-K) >= 1 for all survivors",
            Box::new(anticanonical_sections),
        ),
        ("property suites", Box::new(property_suites)),
        (
            "Table 4 superset",
            Box::new(|| table4_superset(proposals.as_ref().map_err(Clone::clone)?)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} [{name}]: PASS - {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL - {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
