use super::poly::Polynomial;
use crate::scalar::Scalar;

/// Truncated power series `c_0 + c_1 t + ... + c_order t^order`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Series<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Series<S> {
    /// Panics on an empty vector: a prefix always has order ≥ 0.
    pub fn from_coeffs(coeffs: Vec<S>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "series prefix needs at least one coefficient"
        );
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// Coefficient of `t^n`, or `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&S> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Product with a polynomial, truncated to the same order.
    pub fn mul_poly(&self, p: &Polynomial<S>) -> Self {
        let order = self.order();
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(S::zero(), |acc, i| {
                    let pi = p.coeff(i);
                    if pi.is_zero() {
                        acc
                    } else {
                        acc + pi * self.coeffs[n - i].clone()
                    }
                })
            })
            .collect();
        Series { coeffs }
    }

    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(Scalar::to_i64_exact).collect()
    }
}

/// Coefficients of `∏ 1/(1 - t^d)` through `t^order`: the number of monomials
/// of each degree in variables of the given weights.
pub fn monomial_counts(degrees: &[u32], order: usize) -> Vec<u64> {
    let mut counts = vec![0u64; order + 1];
    counts[0] = 1;
    for &d in degrees {
        let d = d as usize;
        for n in d..=order {
            counts[n] += counts[n - d];
        }
    }
    counts
}
