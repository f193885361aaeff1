//! Exact computations for two-bridge knots K(p,q) through their parabolic
//! SL₂(C) representations.
//!
//! - [`twobridge`]: ε-sequences, continuants and the Riley polynomial.
//! - [`frobenius`]: the algebra V = Q[x]/(P_{p−1}), its pairing, Ω and the
//!   signatures σ_g(q/p) = Tr(Ω^{g−1}).
//! - [`torsion`]: the torsions τ₁, τ₂, inverse sums, reciprocity and cusp shape.
//! - [`asymptotics`]: seed matrices, the limit algebra W_M, signature
//!   sequences, Verlinde dimensions and the bivariate polynomials Q_M, R_M, S_M.
//! - [`verify`]: property suites over parameter ranges.
//! - [`cli`] and [`cache`]: the `parabolic` command-line jobs and the on-disk
//!   algebra cache.
//!
//! Each capability has a runnable program under `examples/`, e.g.
//! `cargo run --example frobenius`.
//!
//! ```
//! let sigma = parabolic::frobenius::signature(3, 1, 4).unwrap();
//! assert_eq!(sigma, 16.into());
//! ```

pub mod asymptotics;
pub mod cache;
pub mod cli;
pub mod error;
pub mod exactalg;
pub mod frobenius;
pub mod torsion;
pub mod twobridge;
pub mod verify;

pub use error::{Error, Result};
