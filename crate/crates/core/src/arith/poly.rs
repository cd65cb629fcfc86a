use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Dense univariate polynomial in `t`, coefficients indexed by exponent.
///
/// The coefficient vector never ends in a zero; the zero polynomial has an
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    /// `1 - t^e`
    pub fn one_minus_power(e: usize) -> Self {
        if e == 0 {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); e + 1];
        coeffs[0] = S::one();
        coeffs[e] = -S::one();
        Polynomial { coeffs }
    }

    /// `∏ (1 - t^e)` over the given exponents.
    pub fn weight_product(degrees: &[u32]) -> Self {
        degrees.iter().fold(Self::one(), |acc, &e| {
            &acc * &Self::one_minus_power(e as usize)
        })
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Zero or a nonzero constant.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![S::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// `t^{deg} p(1/t)`: the coefficient vector read backwards.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Long division over the field. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dlen = divisor.coeffs.len();
        assert!(dlen > 0, "polynomial division by zero");
        if self.coeffs.len() < dlen {
            return (Self::zero(), self.clone());
        }
        let lead = divisor.coeffs[dlen - 1].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![S::zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dlen - 1].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * d.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dlen - 1);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = S::one() / l.clone();
                self.scale(&inv)
            }
        }
    }

    /// All coefficients as `i64`, if they are integers.
    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(Scalar::to_i64_exact).collect()
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn add(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn sub(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, rhs: &Polynomial<S>) -> Polynomial<S> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<S: Scalar> $tr for Polynomial<S> {
            type Output = Polynomial<S>;

            fn $m(self, rhs: Polynomial<S>) -> Polynomial<S> {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        -&self
    }
}

/// Renders highest degree first, e.g. `-t^20 + t^14 - 1/2*t + 1`.
impl<S: Scalar + fmt::Display> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < S::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}*t^{k}")?,
            }
        }
        Ok(())
    }
}
