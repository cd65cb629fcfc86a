//! Germs, baskets and the orbifold Riemann-Roch engine.

pub mod basket;
pub mod rr;
pub mod singularity;

pub use basket::{check_index, Basket, MAX_INDEX, MIN_INDEX};
pub use rr::{
    ac2_of, anticanonical_coefficient, degree_of, degree_of_with, hilbert_series,
    hilbert_series_with, p_n, p_n_with, satisfies_serre_symmetry, Candidate, StageFlags,
    DEFAULT_ORDER,
};
pub use singularity::{Convention, SingularityType};
