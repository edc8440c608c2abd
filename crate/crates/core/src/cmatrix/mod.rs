//! Dense complex matrices and the factorizations the predicates rest on.

mod eigen;
mod functional;
mod matrix;
mod svd;

pub use eigen::{eigenvalues, hermitian_eigen, hessenberg, HermitianEigen};
pub use functional::{
    abs_power, complement_projection, inverse, loewner_geq, polar, principal_angles,
    projection_onto, subspaces_equal, subspaces_intersect, PolarFactors, HERMITIAN_TOL,
};
pub use matrix::{inner, norm2, Matrix, C64};
pub(crate) use matrix::{ONE, ZERO};
pub use svd::{
    null_space, orthonormal_complement, range_basis, singular_values, svd, SvdFactors, MAX_SWEEPS,
    RANK_CUTOFF,
};
