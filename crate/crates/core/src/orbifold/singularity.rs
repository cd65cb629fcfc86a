use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// Which multiplier drives the sum in the local contribution `c_p`.
///
/// The germ `1/r(a, -a, f)` rewritten in terminal normal form is
/// `1/r(1, -1, β)` with `β = f·a⁻¹ mod r`. The `Literal` reading uses
/// `a⁻¹ mod r` instead; it is kept only for comparison and does not
/// reproduce the published degrees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Standard,
    Literal,
}

/// A germ `[r,a] = 1/r(a, -a, f)` at Fano index `f`, in canonical form
/// `1 ≤ a ≤ r/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SingularityType {
    r: u32,
    a: u32,
    f: u32,
    beta: u32,
    a_inv: u32,
    f_inv: u32,
}

pub(crate) fn mod_inverse(x: i64, r: i64) -> Option<i64> {
    let g = x.extended_gcd(&r);
    (g.gcd == 1).then(|| g.x.rem_euclid(r))
}

impl SingularityType {
    /// Validates coprimality and canonicalizes `a ↦ min(a, r - a)` modulo `r`.
    pub fn new(r: i64, a: i64, f: u32) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidSingularity {
            r,
            a,
            reason: reason.to_string(),
        };
        if r < 2 {
            return Err(invalid("local index r must be at least 2"));
        }
        if r > i64::from(u32::MAX) {
            return Err(invalid("local index too large"));
        }
        if a.gcd(&r) != 1 {
            return Err(invalid("gcd(r,a) ≠ 1"));
        }
        if i64::from(f).gcd(&r) != 1 {
            return Err(invalid("gcd(r,f) ≠ 1"));
        }
        let a = a.rem_euclid(r);
        let a = a.min(r - a);
        let a_inv = mod_inverse(a, r).expect("a is a unit");
        let f_inv = mod_inverse(i64::from(f), r).expect("f is a unit");
        let beta = (i64::from(f) * a_inv).rem_euclid(r);
        Ok(SingularityType {
            r: r as u32,
            a: a as u32,
            f,
            beta: beta as u32,
            a_inv: a_inv as u32,
            f_inv: f_inv as u32,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// `f·a⁻¹ mod r`.
    pub fn beta(&self) -> u32 {
        self.beta
    }

    /// `f⁻¹ mod r`.
    pub fn f_inv(&self) -> u32 {
        self.f_inv
    }

    pub fn multiplier(&self, convention: Convention) -> u32 {
        match convention {
            Convention::Standard => self.beta,
            Convention::Literal => self.a_inv,
        }
    }

    /// `r - 1/r`, the germ's share of Kawamata's bound.
    pub fn kawamata_weight(&self) -> Rational {
        let r = i64::from(self.r);
        Rational::new((r * r - 1).into(), r.into())
    }

    /// Least residue of `-n/f` modulo `r`.
    pub fn i_p(&self, n: i64) -> u32 {
        let r = i64::from(self.r);
        (-n * i64::from(self.f_inv)).rem_euclid(r) as u32
    }

    /// Local Riemann-Roch correction `c_p(n)` for this germ.
    pub fn c_p(&self, n: i64) -> Rational {
        self.c_p_with(n, Convention::Standard)
    }

    pub fn c_p_with(&self, n: i64, convention: Convention) -> Rational {
        let r = i64::from(self.r);
        let i = i64::from(self.i_p(n));
        let b = i64::from(self.multiplier(convention));
        // common denominator 12r: -i(r²-1) + 6·Σ m(r-m)
        let sum: i64 = (1..i)
            .map(|j| {
                let m = (b * j).rem_euclid(r);
                m * (r - m)
            })
            .sum();
        Rational::new((-i * (r * r - 1) + 6 * sum).into(), (12 * r).into())
    }
}

impl Ord for SingularityType {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.r, self.a, self.f).cmp(&(other.r, other.a, other.f))
    }
}

impl PartialOrd for SingularityType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.r, self.a)
    }
}
