//! Guessing weighted projective embeddings from a Hilbert series.
//!
//! Generator degrees are estimated greedily from the series prefix, then
//! extended until the series times `∏ (1 - t^w)` is a polynomial. The result
//! is a proposal: the generality assumption behind the estimate can fail, and
//! nothing here checks that a variety with these invariants exists.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{largest_cyclotomic_factor, monomial_counts, MAX_CYCLOTOMIC_ORDER};
use crate::error::{Error, Result};
use crate::orbifold::{Basket, Candidate, DEFAULT_ORDER};
use crate::{Poly, Rational, RationalFunction, Scalar, SeriesPrefix};

pub const DEFAULT_CAP: usize = DEFAULT_ORDER;
pub const MAX_ABSORB_ITERATIONS: usize = 16;
/// Proposals beyond this codimension are emitted but flagged.
pub const REVIEWED_CODIMENSION: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEstimate {
    pub degrees: Vec<u32>,
    /// First degree where the monomials already outnumber `p_d`.
    pub stopped_at: Option<u32>,
    /// The loop ran to the cap without a negative deficit.
    pub capped: bool,
}

/// Greedy generator count: in each degree `d`, add as many generators as
/// `p_d` exceeds the number of monomials in the generators found so far.
pub fn find_first_generators(prefix: &SeriesPrefix, cap: usize) -> Result<GeneratorEstimate> {
    if !prefix.coeffs()[0].is_one() {
        return Err(Error::BadPrefix);
    }
    if cap > prefix.order() {
        return Err(Error::OrderTooSmall {
            order: prefix.order(),
            needed: cap,
        });
    }
    let mut degrees: Vec<u32> = Vec::new();
    for d in 1..=cap {
        let monomials = monomial_counts(&degrees, d)[d];
        let deficit = prefix.coeffs()[d].clone() - Rational::from_integer(monomials.into());
        if deficit.is_negative() {
            return Ok(GeneratorEstimate {
                degrees,
                stopped_at: Some(d as u32),
                capped: false,
            });
        }
        if !deficit.is_zero() {
            let extra = deficit.to_i64_exact().ok_or_else(|| {
                Error::NonIntegral(format!("generator deficit {deficit} in degree {d}"))
            })?;
            degrees.extend(std::iter::repeat_n(d as u32, extra as usize));
        }
    }
    Ok(GeneratorEstimate {
        degrees,
        stopped_at: None,
        capped: true,
    })
}

/// Extends `degrees` with cyclotomic orders until `series · ∏ (1 - t^e)` is
/// a polynomial, taking the largest order that divides the residual
/// denominator each time.
pub fn absorb_denominator(series: &RationalFunction, degrees: &[u32]) -> Result<Vec<u32>> {
    let mut out = degrees.to_vec();
    for _ in 0..=MAX_ABSORB_ITERATIONS {
        let residual = series.mul_by_weight_product(&out);
        if residual.is_polynomial() {
            return Ok(out);
        }
        if out.len() == degrees.len() + MAX_ABSORB_ITERATIONS {
            break;
        }
        match largest_cyclotomic_factor(residual.den(), MAX_CYCLOTOMIC_ORDER) {
            Some(m) => out.push(m),
            None => {
                return Err(Error::AbsorptionFailed {
                    residual: residual.den().to_string(),
                    degrees: out,
                })
            }
        }
    }
    let residual = series.mul_by_weight_product(&out);
    Err(Error::AbsorptionFailed {
        residual: residual.den().to_string(),
        degrees: out,
    })
}

/// Splits `N = ∏ (1 - t^{d_i})` when it has that shape.
pub fn complete_intersection_degrees(numerator: &Poly) -> Option<Vec<u32>> {
    let mut rest = numerator.clone();
    let mut degrees = Vec::new();
    while !rest.is_one() {
        if rest.is_zero() || !rest.coeff(0).is_one() || degrees.len() > 64 {
            return None;
        }
        let k = (1..).find(|&k| !rest.coeff(k).is_zero())?;
        if !rest.coeff(k).is_negative() {
            return None;
        }
        rest = rest.exact_div(&Poly::one_minus_power(k))?;
        degrees.push(k as u32);
    }
    Some(degrees)
}

/// Recognizes `1 - Σ t^{e_i} + Σ t^{k - e_i} - t^k` with five `e_i` summing to
/// `2k`, allowing terms with `e_i = k - e_j` to have cancelled. Returns the
/// sorted `e_i` and `k`.
pub fn pfaffian_degrees(numerator: &Poly) -> Option<(Vec<u32>, u32)> {
    let k = numerator.degree()?;
    if k < 2 || !numerator.coeff(0).is_one() || numerator.coeff(k) != -Rational::one() {
        return None;
    }
    let middle: Vec<i64> = (1..k)
        .map(|e| numerator.coeff(e).to_i64_exact())
        .collect::<Option<_>>()?;
    let mut observed: Vec<u32> = Vec::new();
    for (i, &c) in middle.iter().enumerate() {
        if c < 0 {
            observed.extend(std::iter::repeat_n(i as u32 + 1, (-c) as usize));
        }
    }
    if observed.len() > 5 {
        return None;
    }
    let k32 = k as u32;
    let matches = |exps: &[u32]| -> bool {
        let mut rebuilt = vec![0i64; k - 1];
        for &e in exps {
            rebuilt[e as usize - 1] -= 1;
            rebuilt[(k32 - e) as usize - 1] += 1;
        }
        rebuilt == middle
    };
    let mut found = None;
    search_missing(
        &observed,
        5 - observed.len(),
        1,
        k32,
        &mut Vec::new(),
        &mut |extra| {
            let mut exps = observed.clone();
            exps.extend_from_slice(extra);
            if exps.iter().sum::<u32>() == 2 * k32 && matches(&exps) {
                exps.sort_unstable();
                found = Some(exps);
                true
            } else {
                false
            }
        },
    );
    found.map(|e| (e, k32))
}

fn search_missing(
    observed: &[u32],
    remaining: usize,
    from: u32,
    k: u32,
    chosen: &mut Vec<u32>,
    accept: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    if remaining == 0 {
        return accept(chosen);
    }
    let used: u32 = observed.iter().chain(chosen.iter()).sum();
    for x in from..k {
        if used + x * remaining as u32 > 2 * k {
            break;
        }
        chosen.push(x);
        let done = search_missing(observed, remaining - 1, x, k, chosen, accept);
        chosen.pop();
        if done {
            return true;
        }
    }
    false
}

/// `t^{Σw - f} N(1/t) = (-1)^{|w|} N(t)`.
pub fn numerator_is_gorenstein(numerator: &Poly, weights: &[u32], f: u32) -> bool {
    let span = weights.iter().map(|&w| i64::from(w)).sum::<i64>() - i64::from(f);
    if span < 0 || numerator.degree().is_some_and(|d| d as i64 > span) {
        return false;
    }
    let span = span as usize;
    let sign = if weights.len().is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    (0..=span).all(|j| numerator.coeff(span - j) == sign.clone() * numerator.coeff(j))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelProposal {
    pub f: u32,
    /// Sorted generator degrees.
    pub weights: Vec<u32>,
    /// Integer polynomial `P(t) · ∏ (1 - t^w)`.
    pub numerator: Poly,
    pub codimension: usize,
    pub equation_degrees: Option<Vec<u32>>,
    pub adjunction_degree: Option<u32>,
    /// Codimension above 4: emitted without review.
    pub high_codimension: bool,
    pub estimate: GeneratorEstimate,
}

impl ModelProposal {
    /// `P(1,2,3,3,4,5,7)`
    pub fn ambient(&self) -> String {
        let w: Vec<String> = self.weights.iter().map(u32::to_string).collect();
        format!("P({})", w.join(","))
    }

    pub fn numerator_coeffs(&self) -> Vec<i64> {
        self.numerator
            .to_i64_coeffs()
            .expect("numerator integrality is checked on construction")
    }
}

/// `X_{6,7,8,9,10} ⊂ P(1,2,3,3,4,5,7)`, `X ⊂ P(...)`, or just `P(...)` in
/// codimension 0.
impl fmt::Display for ModelProposal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.equation_degrees {
            _ if self.codimension == 0 => write!(f, "{}", self.ambient()),
            Some(eqs) => {
                let e: Vec<String> = eqs.iter().map(u32::to_string).collect();
                write!(f, "X_{{{}}} ⊂ {}", e.join(","), self.ambient())
            }
            None => write!(f, "X ⊂ {}", self.ambient()),
        }
    }
}

/// Adds generators so every germ `1/r(a, -a, f)` of the basket can sit at a
/// coordinate point: some weight divisible by `r`, and local coordinates of
/// weights congruent to `a`, `-a`, `f` modulo `r`.
///
/// Unmet residue demands are filled greedily: each step adds the smallest
/// degree that meets the most outstanding demands at once.
pub fn add_orbifold_coordinates(weights: &[u32], basket: &Basket) -> Vec<u32> {
    // (modulus, residue, required count)
    let mut demands: Vec<(u32, u32, usize)> = Vec::new();
    for (germ, _) in basket.grouped() {
        let r = germ.r();
        let mut residues = vec![0, germ.a(), r - germ.a(), germ.f() % r];
        residues.sort_unstable();
        residues.dedup();
        for rho in residues {
            let want = if rho == 0 {
                1
            } else {
                [germ.a(), r - germ.a(), germ.f() % r]
                    .iter()
                    .filter(|&&x| x == rho)
                    .count()
            };
            demands.push((r, rho, want));
        }
    }
    let max_r = demands.iter().map(|d| d.0).max().unwrap_or(0);
    let mut out = weights.to_vec();
    loop {
        let unmet: Vec<(u32, u32)> = demands
            .iter()
            .filter(|(r, rho, want)| out.iter().filter(|&&w| w % r == *rho).count() < *want)
            .map(|&(r, rho, _)| (r, rho))
            .collect();
        if unmet.is_empty() {
            return out;
        }
        let score = |w: u32| unmet.iter().filter(|(r, rho)| w % r == *rho).count();
        // degrees up to 2·max r reach every residue of every modulus
        let best = (1..=2 * max_r)
            .max_by_key(|&w| (score(w), std::cmp::Reverse(w)))
            .expect("nonempty range");
        out.push(best);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelOptions {
    /// Degree cap for the generator estimate.
    pub cap: usize,
    /// Run [`add_orbifold_coordinates`] after absorption.
    pub orbifold_coordinates: bool,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions {
            cap: DEFAULT_CAP,
            orbifold_coordinates: true,
        }
    }
}

/// Generator estimate, denominator absorption and equation degrees for a
/// candidate that passed stages 1a-1c.
pub fn propose_model(candidate: &Candidate, cap: usize) -> Result<ModelProposal> {
    propose_model_with(
        candidate,
        ModelOptions {
            cap,
            ..Default::default()
        },
    )
}

pub fn propose_model_with(candidate: &Candidate, options: ModelOptions) -> Result<ModelProposal> {
    if let Some(stage) = candidate.stages.first_failure() {
        return Err(Error::StageFailed(stage));
    }
    let estimate = find_first_generators(&candidate.prefix, options.cap)?;
    let mut weights = absorb_denominator(&candidate.series, &estimate.degrees)?;
    if options.orbifold_coordinates {
        weights = add_orbifold_coordinates(&weights, &candidate.basket);
    }
    weights.sort_unstable();

    let product = candidate.series.mul_by_weight_product(&weights);
    let numerator = product.num().clone();
    if numerator.to_i64_coeffs().is_none() {
        return Err(Error::NonIntegral(format!("model numerator {numerator}")));
    }
    let codimension = weights
        .len()
        .checked_sub(4)
        .ok_or_else(|| Error::AbsorptionFailed {
            residual: "fewer than four generators".into(),
            degrees: weights.clone(),
        })?;

    let (equation_degrees, adjunction_degree) = match codimension {
        0..=2 => match complete_intersection_degrees(&numerator) {
            Some(d) if d.len() == codimension => {
                let k = d.iter().sum();
                (Some(d), Some(k))
            }
            _ => (None, None),
        },
        3 => match pfaffian_degrees(&numerator) {
            Some((e, k)) => (Some(e), Some(k)),
            None => (None, None),
        },
        _ => (None, None),
    };

    Ok(ModelProposal {
        f: candidate.f(),
        weights,
        numerator,
        codimension,
        equation_degrees,
        adjunction_degree,
        high_codimension: codimension > REVIEWED_CODIMENSION,
        estimate,
    })
}
