//! Exact polynomial, rational-function and truncated power-series arithmetic.

pub mod cyclotomic;
pub mod poly;
pub mod ratfunc;
pub mod series;

pub use cyclotomic::{
    cyclotomic, cyclotomic_divides, largest_cyclotomic_factor, MAX_CYCLOTOMIC_ORDER,
};
pub use poly::Polynomial;
pub use ratfunc::RatFunc;
pub use series::{monomial_counts, Series};
