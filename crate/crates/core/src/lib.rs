//! Finite p-groups of every non-positive deficiency.
//!
//! Builds explicit presentations `A_p^r × B_p^s × C_p^t` of deficiency `-n`
//! and certifies them: coset enumeration for orders, Smith normal form for
//! abelian invariants, and the normalized bar complex or the Künneth formula
//! for Schur multipliers.

pub mod coset_enum;
pub mod deficiency;
pub mod homology;
pub mod int;
pub mod linalg;
pub mod presentations;
pub mod words;

pub use coset_enum::{
    enumerate, multiplication_table, order, validate_group, CosetEnumError, CosetTable, GroupTable,
    Strategy, ValidationReport, DEFAULT_MAX_COSETS,
};
pub use deficiency::{
    certify, construct, deficiency_of_counts, figure_one_table, golod_shafarevich_check, solve,
    upper_bound, BlockCounts, CertifyMode, DeficiencyCertificate, GsVerdict,
};
pub use homology::{
    bar_complex, h1_from_presentation, h1_from_table, h2_from_table, h2_kunneth, h2_of_block_product,
    BarComplexSlice, HomologyError, DEFAULT_H2_ORDER_CEILING,
};
pub use int::Int;
pub use linalg::{cokernel, homology_quotient, smith_normal_form, FinAbGroup, IntMatrix};
pub use presentations::{building_block, direct_product, power_product, BlockKind, Presentation};
pub use words::{Letter, Word};
