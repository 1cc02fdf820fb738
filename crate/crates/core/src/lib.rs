//! Bent Boolean functions from rational trace forms over binary fields.
//!
//! The crate builds Boolean functions on GF(2^2n) out of rational trace
//! blocks f(x) = Tr(a/(x^(q-1) + b)) and decides their bentness without a
//! Walsh transform, through closed-form exponential sums over the unit
//! circle that reduce to binary Kloosterman sums. Everything closed-form is
//! paired with a brute-force oracle at desk scale (fields up to GF(2^16)),
//! and the full Walsh machinery (fast transform, ANF degree, duals,
//! hyper-bentness) is available for verification and search.
//!
//! Module map:
//! - [`gf2m`]: field arithmetic, traces, unit circle, polar decomposition;
//! - [`boolfun`]: truth tables, Walsh transforms, ANF, bentness, duals;
//! - [`dillon`]: functions of the form g(x^(q-1)) and their circle criteria;
//! - [`expsums`]: Kloosterman sums and the closed-form circle sums;
//! - [`constructions`]: the combined classes, their bentness checkers and
//!   deterministic parameter sweeps;
//! - [`polyform`]: expansion of a block into Dillon-exponent form;
//! - [`eainv`]: invariants for separating candidate functions across
//!   extended-affine equivalence.

#![forbid(unsafe_code)]

pub mod boolfun;
pub mod constructions;
pub mod dillon;
pub mod eainv;
mod error;
pub mod expsums;
pub mod gf2m;
pub mod polyform;

pub use error::{Error, Result};
