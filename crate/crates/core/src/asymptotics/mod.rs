//! Asymptotics of signatures along q_n/p_n = (a + bn)/(c + dn): the limit
//! algebra W_M, signature sequences, Verlinde dimensions and the bivariate
//! polynomials Q_M, R_M, S_M.

mod bivariate;
mod limit;
mod sequence;
mod verlinde;

pub use bivariate::{
    bivariate_by_matrices, bivariate_polys, bivariate_unchecked, block_product_matches, eta_sum,
    homogeneous_part, qlemma_report, specialization_check, BivariateTriple, Clause, QlemmaReport,
};
pub use limit::{
    alpha_sequence, condition_h, condition_h_for, condition_h_sweep, h_polynomials, limit_trace,
    sweep_seeds, HTriple, LimitAlgebra, SeedMatrix, SweepRow, H1_NORMALIZATION,
};
pub use sequence::{
    finite_differences, polynomial_degree_of, polynomiality_check, polynomiality_of, ratio_table, ratio_table_with,
    signature_direct, signature_reciprocal, signature_sequence, signature_sequence_with, PolynomialityReport, RatioRow,
    SignatureRow, RECIPROCAL_CHECK_MAX_P,
};
pub use verlinde::{verlinde_dim, verlinde_genus_two};
