//! Laplacian spectra and eigenspaces of k-token graphs of cycles.
//!
//! The k-token graph F_k(C_n) has the k-subsets of Z_n as vertices, two
//! subsets being adjacent when one token can slide to a free neighbouring
//! vertex of the cycle. Its spectrum is computed three independent ways:
//!
//! | Route | Module | Scope |
//! |-------|--------|-------|
//! | dense Laplacian | [`token_graph`] | any `(n, k)` with `C(n, k) <= 5000` |
//! | over-lift matrix `B(z)` | [`overlift`] | any `(n, k)`, one small matrix per root of unity |
//! | continued fractions / transfer matrix | [`contfrac2`] | `k = 2` |
//!
//! The over-lift route indexes `B(z)` by rotation orbits ([`necklaces`]) and
//! stores its entries as Laurent polynomials ([`laurent`]).
//!
//! Sector loops and `(n, k)` sweeps run on rayon when the `parallel`
//! feature is on (the default); see [`exec`].

pub mod contfrac2;
pub mod error;
pub mod exec;
pub mod laurent;
pub mod linalg;
pub mod necklaces;
pub mod overlift;
pub mod poly;
pub mod spectrum;
pub mod token_graph;

pub use error::{Error, Result};
pub use exec::Execution;
pub use spectrum::{Method, SpectrumReport};
