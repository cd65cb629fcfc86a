//! Cyclotomic polynomials and divisibility tests.

use super::poly::Polynomial;
use crate::scalar::Scalar;

/// Largest cyclotomic order searched when absorbing denominator factors.
pub const MAX_CYCLOTOMIC_ORDER: u32 = 60;

fn proper_divisors(m: u32) -> impl Iterator<Item = u32> {
    (1..m).filter(move |d| m.is_multiple_of(*d))
}

/// `Φ_m(t)`, from `Φ_m = (t^m - 1) / ∏_{d | m, d < m} Φ_d`.
///
/// Panics if `m == 0`.
pub fn cyclotomic<S: Scalar>(m: u32) -> Polynomial<S> {
    assert!(m > 0, "cyclotomic order must be positive");
    let mut table: Vec<Option<Polynomial<S>>> = vec![None; m as usize + 1];
    build(m, &mut table)
}

fn build<S: Scalar>(m: u32, table: &mut Vec<Option<Polynomial<S>>>) -> Polynomial<S> {
    if let Some(p) = &table[m as usize] {
        return p.clone();
    }
    let mut p = -Polynomial::one_minus_power(m as usize);
    for d in proper_divisors(m) {
        let phi_d = build(d, table);
        p = p
            .exact_div(&phi_d)
            .expect("cyclotomic factor divides t^m - 1");
    }
    table[m as usize] = Some(p.clone());
    p
}

/// Whether `Φ_m` divides `den` exactly. The zero polynomial is divisible by
/// everything.
pub fn cyclotomic_divides<S: Scalar>(den: &Polynomial<S>, m: u32) -> bool {
    if m == 0 {
        return false;
    }
    cyclotomic::<S>(m).divides(den)
}

/// Largest `m ≤ bound` with `Φ_m | den`, if any.
pub fn largest_cyclotomic_factor<S: Scalar>(den: &Polynomial<S>, bound: u32) -> Option<u32> {
    if den.is_constant() {
        return None;
    }
    let mut table: Vec<Option<Polynomial<S>>> = vec![None; bound as usize + 1];
    (1..=bound)
        .rev()
        .find(|&m| build(m, &mut table).divides(den))
}
