use std::fmt;

use super::poly::Polynomial;
use super::series::Series;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Reduced quotient `num / den` of polynomials in `t`.
///
/// Normal form: `gcd(num, den) = 1` and the denominator has constant term 1
/// (or leading coefficient 1 in the out-of-scope case `den(0) = 0`). Two
/// equal fractions therefore compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<S> {
    num: Polynomial<S>,
    den: Polynomial<S>,
}

impl<S: Scalar> RatFunc<S> {
    pub fn new(num: Polynomial<S>, den: Polynomial<S>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn from_poly(p: Polynomial<S>) -> Self {
        RatFunc {
            num: p,
            den: Polynomial::one(),
        }
    }

    /// `num / ∏ (1 - t^d)`
    pub fn over_weights(num: Polynomial<S>, degrees: &[u32]) -> Result<Self> {
        Self::new(num, Polynomial::weight_product(degrees))
    }

    fn reduce(num: Polynomial<S>, den: Polynomial<S>) -> Self {
        if num.is_zero() {
            return Self::from_poly(Polynomial::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let c0 = den.coeff(0);
        let norm = if c0.is_zero() {
            den.leading().cloned().expect("nonzero denominator")
        } else {
            c0
        };
        let inv = S::one() / norm;
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn num(&self) -> &Polynomial<S> {
        &self.num
    }

    pub fn den(&self) -> &Polynomial<S> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::reduce(num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) - &(&other.num * &self.den);
        Self::reduce(num, &self.den * &other.den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::reduce(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_poly(&self, p: &Polynomial<S>) -> Self {
        Self::reduce(&self.num * p, self.den.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    /// `self · ∏ (1 - t^d)`, reduced. An empty multiset is the identity.
    pub fn mul_by_weight_product(&self, degrees: &[u32]) -> Self {
        self.mul_poly(&Polynomial::weight_product(degrees))
    }

    /// Power series expansion at `t = 0` through `t^order`.
    ///
    /// Solves `den · P = num` coefficient by coefficient.
    pub fn expand(&self, order: usize) -> Result<Series<S>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        let den = self.den.coeffs();
        let mut out: Vec<S> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.num.coeff(n);
            for (i, d) in den.iter().enumerate().skip(1).take(n) {
                if !d.is_zero() {
                    acc = acc - d.clone() * out[n - i].clone();
                }
            }
            out.push(acc / d0.clone());
        }
        Ok(Series::from_coeffs(out))
    }

    /// `(shift, G)` with `F(1/t) = t^shift · G(t)`; `shift` may be negative.
    pub fn invert_variable(&self) -> (i64, Self) {
        let dn = self.num.degree().unwrap_or(0) as i64;
        let dd = self.den.degree().unwrap_or(0) as i64;
        let g = Self::reduce(self.num.reversed(), self.den.reversed());
        (dd - dn, g)
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for RatFunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type P = Polynomial<Rational>;
    type F = RatFunc<Rational>;

    fn ints(s: &Series<Rational>) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| c.to_i64_exact().unwrap())
            .collect()
    }

    #[test]
    fn geometric_series() {
        let f = F::over_weights(P::one(), &[1]).unwrap();
        assert_eq!(ints(&f.expand(4).unwrap()), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn quadric_series_matches_monomial_count() {
        // oracle: dim of degree-n part of k[x0..x4]/(q) = C(n+4,4) - C(n+2,4)
        fn binom(n: i64, k: i64) -> i64 {
            if n < k {
                return 0;
            }
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        let oracle: Vec<i64> = (0..4).map(|n| binom(n + 4, 4) - binom(n + 2, 4)).collect();
        assert_eq!(oracle, vec![1, 5, 14, 30]);
        let f = F::over_weights(P::one_minus_power(2), &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(ints(&f.expand(3).unwrap()), oracle);
    }

    #[test]
    fn weight_product_cancels() {
        let f = F::over_weights(P::one(), &[1, 1, 1, 1]).unwrap();
        assert_eq!(
            f.mul_by_weight_product(&[1, 1, 1, 1]),
            F::from_poly(P::one())
        );
        let g = F::over_weights(P::one(), &[1]).unwrap();
        assert_eq!(
            g.mul_by_weight_product(&[2]),
            F::from_poly(P::from_ints(&[1, 1]))
        );
        assert_eq!(g.mul_by_weight_product(&[]), g);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            F::new(P::one(), P::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn reduction_is_canonical() {
        // (1+t)/(1-t^2) == 1/(1-t) == (2+2t)/(2-2t^2)
        let a = F::new(P::from_ints(&[1, 1]), P::from_ints(&[1, 0, -1])).unwrap();
        let b = F::over_weights(P::one(), &[1]).unwrap();
        let c = F::new(P::from_ints(&[2, 2]), P::from_ints(&[2, 0, -2])).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
        assert_eq!(a.den().coeff(0), Rational::from_i64(1));
    }

    #[test]
    fn addition_and_subtraction() {
        let a = F::over_weights(P::one(), &[1]).unwrap();
        let b = F::over_weights(P::monomial(Rational::from_i64(1), 1), &[1]).unwrap();
        // 1/(1-t) - t/(1-t) = 1
        assert_eq!(a.sub(&b), F::from_poly(P::one()));
        assert_eq!(
            a.add(&b).expand(3).unwrap().coeffs()[3],
            Rational::from_i64(2)
        );
    }

    #[test]
    fn inverted_variable_of_p3_series() {
        // 1/(1-t)^4 at 1/t is t^4/(1-t)^4
        let f = F::over_weights(P::one(), &[1, 1, 1, 1]).unwrap();
        let (shift, g) = f.invert_variable();
        assert_eq!(shift, 4);
        assert_eq!(g, f);
    }

    #[test]
    fn float_expansion_generic() {
        let f: RatFunc<f64> = RatFunc::over_weights(Polynomial::one(), &[1, 2]).unwrap();
        let s = f.expand(5).unwrap();
        assert_eq!(s.coeffs(), &[1.0, 1.0, 2.0, 2.0, 3.0, 3.0]);
    }
}
