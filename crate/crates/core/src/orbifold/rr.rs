//! Orbifold Riemann-Roch for `X, A` with `-K_X = fA`: the plurigenera
//! `p_n = h⁰(nA)` and their generating function.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::basket::Basket;
use super::singularity::Convention;
use crate::error::{Error, Result};
use crate::{Poly, Rational, RationalFunction, SeriesPrefix};

pub const DEFAULT_ORDER: usize = 30;

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `Ac₂(X) = (24 - Σ (r - 1/r)) / f`.
pub fn ac2_of(basket: &Basket) -> Rational {
    (int(24) - basket.kawamata_sum()) / int(basket.f().into())
}

fn local_sum(basket: &Basket, n: i64, convention: Convention) -> Rational {
    basket
        .grouped()
        .iter()
        .fold(Rational::zero(), |acc, (s, mult)| {
            acc + s.c_p_with(n, convention) * int(*mult as i64)
        })
}

/// The degree `A³` forced by `p_{-1} = 0`.
pub fn degree_of(basket: &Basket) -> Rational {
    degree_of_with(basket, Convention::Standard)
}

pub fn degree_of_with(basket: &Basket, convention: Convention) -> Rational {
    let f = i64::from(basket.f());
    let ac2 = ac2_of(basket);
    // p_{-1} = 1 - (f-1)(f-2)/12·A³ - Ac₂/12 + Σ c_p(-1)
    let rest = int(1) - ac2 / int(12) + local_sum(basket, -1, convention);
    rest * int(12) / int((f - 1) * (f - 2))
}

/// `p_n` from the plurigenus formula; only defined for `n > -f`.
pub fn p_n(basket: &Basket, a3: &Rational, ac2: &Rational, n: i64) -> Result<Rational> {
    p_n_with(basket, a3, ac2, n, Convention::Standard)
}

pub fn p_n_with(
    basket: &Basket,
    a3: &Rational,
    ac2: &Rational,
    n: i64,
    convention: Convention,
) -> Result<Rational> {
    let f = i64::from(basket.f());
    if n <= -f {
        return Err(Error::DegreeOutOfRange { n, f: basket.f() });
    }
    let cubic = Rational::new((n * (n + f) * (2 * n + f)).into(), 12.into());
    Ok(int(1)
        + cubic * a3.clone()
        + int(n) * ac2.clone() / int(12)
        + local_sum(basket, n, convention))
}

/// `P(t) = Σ p_n tⁿ` in closed form, reduced.
pub fn hilbert_series(basket: &Basket, a3: &Rational, ac2: &Rational) -> RationalFunction {
    hilbert_series_with(basket, a3, ac2, Convention::Standard)
}

pub fn hilbert_series_with(
    basket: &Basket,
    a3: &Rational,
    ac2: &Rational,
    convention: Convention,
) -> RationalFunction {
    let f = i64::from(basket.f());
    let one_minus_t = Poly::one_minus_power(1);

    // group local terms by r so each (1 - t^r) appears once
    let mut by_r: Vec<(u32, Poly)> = Vec::new();
    for (s, mult) in basket.grouped() {
        let local: Vec<Rational> = (0..s.r() as i64)
            .map(|k| {
                if k == 0 {
                    Rational::zero()
                } else {
                    s.c_p_with(k, convention) * int(mult as i64)
                }
            })
            .collect();
        let local = Poly::from_coeffs(local);
        match by_r.iter_mut().find(|(r, _)| *r == s.r()) {
            Some((_, acc)) => *acc = &*acc + &local,
            None => by_r.push((s.r(), local)),
        }
    }

    let r_product = by_r.iter().fold(Poly::one(), |acc, (r, _)| {
        &acc * &Poly::one_minus_power(*r as usize)
    });
    let quartic = one_minus_t.pow(4);
    let den = &quartic * &r_product;

    let cubic = Poly::from_coeffs(vec![
        int(0),
        int(f * f + 3 * f + 2),
        int(8 - 2 * f * f),
        int(f * f - 3 * f + 2),
    ]);

    let mut num = &one_minus_t.pow(3) * &r_product;
    num = &num + &(&cubic * &r_product).scale(&(a3.clone() / int(12)));
    let t_term = Poly::monomial(ac2.clone() / int(12), 1);
    num = &num + &(&(&t_term * &one_minus_t.pow(2)) * &r_product);
    for (i, (_, local)) in by_r.iter().enumerate() {
        let others = by_r
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(quartic.clone(), |acc, (_, (r, _))| {
                &acc * &Poly::one_minus_power(*r as usize)
            });
        num = &num + &(local * &others);
    }
    RationalFunction::new(num, den).expect("denominator is a nonzero product")
}

/// `P(1/t) = t^shift · P(t)` holds with `shift = f` for every candidate.
pub fn satisfies_serre_symmetry(series: &RationalFunction, f: u32) -> bool {
    let (shift, inverted) = series.invert_variable();
    let excess = shift - i64::from(f);
    // t^excess · inverted == series, cross-multiplied
    let (lhs, rhs) = if excess >= 0 {
        (
            &inverted.num().shift(excess as usize) * series.den(),
            series.num() * inverted.den(),
        )
    } else {
        (
            inverted.num() * series.den(),
            &series.num().shift((-excess) as usize) * inverted.den(),
        )
    };
    lhs == rhs
}

/// Which filter conditions a basket satisfies, each evaluated on its own.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StageFlags {
    pub kawamata: bool,
    pub positive_degree: bool,
    pub excess_vanishing: bool,
    pub bk_bound: bool,
    pub stable: bool,
}

/// `p_n = 0` for `n = -2, ..., -(f-1)`.
pub fn excess_vanishing(
    basket: &Basket,
    a3: &Rational,
    ac2: &Rational,
    convention: Convention,
) -> bool {
    let f = i64::from(basket.f());
    (2..f).all(|k| {
        p_n_with(basket, a3, ac2, -k, convention)
            .map(|v| v.is_zero())
            .unwrap_or(false)
    })
}

/// `(4f² - 3f)·A³ ≤ 4f·Ac₂`
pub fn bk_bound(f: u32, a3: &Rational, ac2: &Rational) -> bool {
    let f = i64::from(f);
    int(4 * f * f - 3 * f) * a3.clone() <= int(4 * f) * ac2.clone()
}

/// `f²·A³ ≤ 3·Ac₂`
pub fn bk_stable(f: u32, a3: &Rational, ac2: &Rational) -> bool {
    let f = i64::from(f);
    int(f * f) * a3.clone() <= int(3) * ac2.clone()
}

impl StageFlags {
    pub fn evaluate(
        basket: &Basket,
        a3: &Rational,
        ac2: &Rational,
        convention: Convention,
    ) -> Self {
        StageFlags {
            kawamata: basket.satisfies_kawamata(),
            positive_degree: *a3 > Rational::zero(),
            excess_vanishing: excess_vanishing(basket, a3, ac2, convention),
            bk_bound: bk_bound(basket.f(), a3, ac2),
            stable: bk_stable(basket.f(), a3, ac2),
        }
    }

    /// Stages 1a through 1c all hold.
    pub fn survives_bound(&self) -> bool {
        self.kawamata && self.positive_degree && self.excess_vanishing && self.bk_bound
    }

    /// Name of the first failing stage among 1a..1c.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            (self.kawamata, "1a (Kawamata condition)"),
            (self.positive_degree, "1b (positive degree)"),
            (self.excess_vanishing, "1b+ (excess vanishing)"),
            (self.bk_bound, "1c (Bogomolov-Kawamata bound)"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, name)| name)
    }
}

/// A basket together with everything derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub basket: Basket,
    pub degree: Rational,
    pub ac2: Rational,
    pub series: RationalFunction,
    pub prefix: SeriesPrefix,
    pub stages: StageFlags,
    pub convention: Convention,
}

impl Candidate {
    pub fn build(basket: Basket, order: usize) -> Self {
        Self::build_with(basket, order, Convention::Standard)
    }

    pub fn build_with(basket: Basket, order: usize, convention: Convention) -> Self {
        let degree = degree_of_with(&basket, convention);
        let ac2 = ac2_of(&basket);
        let series = hilbert_series_with(&basket, &degree, &ac2, convention);
        let prefix = series
            .expand(order)
            .expect("Hilbert series denominators have constant term 1");
        let stages = StageFlags::evaluate(&basket, &degree, &ac2, convention);
        Candidate {
            basket,
            degree,
            ac2,
            series,
            prefix,
            stages,
            convention,
        }
    }

    pub fn f(&self) -> u32 {
        self.basket.f()
    }

    pub fn p_n(&self, n: i64) -> Result<Rational> {
        p_n_with(&self.basket, &self.degree, &self.ac2, n, self.convention)
    }

    /// First `n` with a non-integral or negative prefix coefficient.
    pub fn integrality_defect(&self) -> Option<usize> {
        self.prefix
            .coeffs()
            .iter()
            .position(|c| !c.is_integer() || *c < Rational::zero())
    }
}

/// Coefficient of `t^f` in the series prefix: `h⁰(-K_X)`.
pub fn anticanonical_coefficient(candidate: &Candidate) -> Result<Rational> {
    let f = candidate.f() as usize;
    candidate
        .prefix
        .coeff(f)
        .cloned()
        .ok_or(Error::OrderTooSmall {
            order: candidate.prefix.order(),
            needed: f,
        })
}

/// Whether the prefix starts with 1, as every Hilbert series must.
pub fn starts_with_one(prefix: &SeriesPrefix) -> bool {
    prefix.coeffs()[0].is_one()
}
