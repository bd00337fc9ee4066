//! Exact integer linear algebra: Smith normal form and the abelian-group
//! invariants derived from it.

mod abelian;
mod matrix;
mod snf;

pub use abelian::{AbelianError, FinAbGroup};
pub use matrix::{IntMatrix, SPARSE_DENSITY_THRESHOLD};
pub use snf::{
    kernel_basis, rank, smith_normal_form, smith_normal_form_with_transforms, SmithForm, Transforms,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("boundary maps do not compose: outgoing map has {out_cols} columns, incoming map has {in_rows} rows")]
    DimensionMismatch { out_cols: usize, in_rows: usize },
    #[error("boundary maps compose to a nonzero map")]
    ChainConditionViolated,
}

/// `Z^n / (row lattice of M)` where `n` is the number of columns.
///
/// Rows are relations, columns are generators, as in an abelianization matrix.
pub fn cokernel(m: &IntMatrix) -> FinAbGroup {
    let snf = smith_normal_form(m);
    FinAbGroup::new(m.ncols() - snf.rank(), snf.torsion())
}

/// `ker(d_out) / im(d_in)` for boundary maps acting on column vectors, so
/// `d_out.ncols() == d_in.nrows()` is the dimension of the middle chain group.
///
/// The kernel of a map between free modules is a direct summand, so the
/// quotient is free of rank `dim ker d_out - rank d_in` plus the torsion of
/// `d_in`'s Smith form.
pub fn homology_quotient(d_out: &IntMatrix, d_in: &IntMatrix) -> Result<FinAbGroup, LinalgError> {
    if d_out.ncols() != d_in.nrows() {
        return Err(LinalgError::DimensionMismatch { out_cols: d_out.ncols(), in_rows: d_in.nrows() });
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(LinalgError::ChainConditionViolated);
    }
    let kernel_dim = d_out.ncols() - rank(d_out);
    let image = smith_normal_form(d_in);
    Ok(FinAbGroup::new(kernel_dim - image.rank(), image.torsion()))
}
