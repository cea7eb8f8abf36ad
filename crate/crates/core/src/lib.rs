//! Exact analysis of maximum-likelihood decoder ties for binary block codes
//! on the binary symmetric channel.
//!
//! Everything on the verification path uses exact rational arithmetic: the
//! minimum error probability `a_n`, the tie-free (genie) lower bound `b_n`,
//! the tie probability `delta_n`, and the full hierarchy of set partitions
//! behind the linear bound `b_n <= a_n <= (1 + (1-p)/p * n) * b_n` are all
//! computed with zero rounding error. Monte Carlo estimation is the only
//! floating-point component and is clearly segregated in [`harness`].
//!
//! Module map:
//! - [`bitcode`]: bit-vector codewords, code parsing, Hamming distances,
//!   XOR canonicalization.
//! - [`exactnum`]: arbitrary-precision rationals, distance spectra, binomials.
//! - [`oracle`]: brute-force classification of every channel output; exact
//!   `a_n`, `b_n`, `delta_n`.
//! - [`partition`]: the tie-set / error-set partition hierarchy with all of
//!   its counting formulas and consistency checks.
//! - [`bounds`]: theorem-level verdicts and the exact ratio chain.
//! - [`harness`]: randomized code sweeps and Monte Carlo estimation.
//! - [`fixtures`]: embedded worked-example data and the fixture diff.

pub mod bitcode;
pub mod bounds;
pub mod error;
pub mod exactnum;
pub mod fixtures;
pub mod harness;
pub mod oracle;
pub mod partition;

pub use error::{Error, Result};

/// Default cap on the blocklength for exhaustive 2^n enumeration.
///
/// Overridable per call; 2^24 outputs is desk-scale, anything beyond that is
/// an explicit opt-in.
pub const DEFAULT_ENUM_CAP: u32 = 24;
