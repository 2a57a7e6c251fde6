//! Redheffer-type matrices `A_n = W_n + D_n`: Dirichlet-series coefficient
//! arithmetic, exact dense oracles, the sublinear `v(n, k)` engine, the
//! shifted characteristic polynomial and its spectrum.

pub mod dirichlet;
pub mod error;
pub mod matrix;
pub mod oracle;
pub mod reference;
pub mod spectra;
pub mod vnk;

pub use dirichlet::{
    d_table, dirichlet_convolve, dirichlet_inverse, floor_log2, mertens_table, mobius_sieve,
    CoefficientSequence, DnkTable,
};
pub use error::{Error, Result};
pub use matrix::{
    build_a, build_d, build_e, build_w, redheffer, AnyMatrix, DenseMatrix, Scalar, ScalarMode,
    Variant, WeightVector,
};
pub use oracle::{
    charpoly_exact, det_cofactor, det_exact, eig_residual, IntegerPolynomial, Side, CHARPOLY_CAP,
};
pub use spectra::{
    bilinear_pairing, classify_spectrum, det_from_charpoly, det_from_vnk, det_weighted,
    eigenvector_left, eigenvector_right, solve_monic, solve_roots, spectrum, EigenClass,
    EigvecReport, HpComplex, HpFloat, RootSet, ShiftedCharPoly, SpectrumReport,
    DEFAULT_PRECISION,
};
pub use vnk::{
    read_cache, vl_nk, vnk_fast, vnk_fast_with, vnk_lattice, vnk_naive, vnk_naive_all,
    vnk_naive_row, write_cache, FloorValueSet, VnkTable, Width, LATTICE_CAP, NAIVE_CAP,
};
