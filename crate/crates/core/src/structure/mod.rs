//! Rational families on powers of an anisotropic quadric and the
//! restrictions they obey.

pub mod checks;
pub mod family;
pub mod minimal;
pub mod readoff;
pub mod splitting;

pub use checks::{
    check_all, check_binary_size, check_even_essential, check_forbidden, check_herovyj,
    check_known, check_neravenstva, check_pairs, check_springer, check_supplement, forbidden_cells,
    i1_exclusion_via_steenrod, known_pi, CheckResult, I1Exclusion,
};
pub use family::{closure, FamilyFile, RationalFamily};
pub use minimal::{derivatives, minimal_cycles, primordial_cycles, PrimordialReport};
pub use readoff::{splitting_readoff, witt_index_readoff};
pub use splitting::SplittingData;
