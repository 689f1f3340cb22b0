//! Refuting the dimensions `2^n + ... + 2^m + 2^p` (`p <= m-2`) for forms in
//! `I^n`, and the formulas for the dimensions that remain.

pub mod certify;
pub mod construct;
pub mod params;
pub mod patterns;
pub mod tables;

pub use certify::{single_case, verify_contradiction, Certificate, Method};
pub use construct::{build_chi, build_mu_zero, build_xi, mu_prime, mu_prime_generators, target};
pub use params::{forced_witt_sequence, HoleParams};
pub use patterns::{
    check_min_splitting, dim_in_set, gap_certificate, small_splitting_pattern, vishik_pattern,
    GapVerdict,
};
pub use tables::{table_h, table_l};
