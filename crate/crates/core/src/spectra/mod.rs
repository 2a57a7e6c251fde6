//! Characteristic polynomial, determinant identities, spectrum and explicit
//! eigenvectors of `A_n`.

mod charpoly;
mod eigvec;
pub mod hp;
mod report;
mod roots;

pub use charpoly::{det_from_charpoly, det_from_vnk, det_weighted, has_unit_sign_pattern, ShiftedCharPoly};
pub use eigvec::{bilinear_pairing, eigenvector_left, eigenvector_right, EigvecReport};
pub use hp::{HpComplex, HpFloat};
pub use report::{classify_spectrum, spectrum, EigenClass, Eigenvalue, SpectrumReport, REPORT_VERSION};
pub use roots::{
    check_precision, solve_monic, solve_roots, RootReport, RootSet, DEFAULT_PRECISION,
    ITERATION_CAP, MAX_PRECISION, MIN_PRECISION,
};
