//! Saturation of 0-1 matrix patterns.
//!
//! Pattern containment, classification of permutation patterns by
//! saturation, witness constructions with independent certification, and
//! brute-force saturation numbers for small grids.

pub mod containment;
pub mod error;
pub mod format;
pub mod matrix;
pub mod oracle;
pub mod oscillation;
pub mod perm;
pub mod verify;
pub mod witness;

pub use containment::{avoids, contains, contains_naive, contains_with, find_embedding, Embedding, HostIndex};
pub use error::{IndexError, MatrixError, OracleError, OscillationError, ParseError, WitnessError};
pub use matrix::{Entry, Matrix01, Pattern, Transform};
pub use oracle::{ex_bruteforce, sat_bruteforce, OracleResult};
pub use perm::{classify, Classification, PermutationMatrix, Verdict};
pub use verify::{certify, check_expandable, Axis, Claim, Report};
pub use witness::{explicit_witness, full_witness, pad_witness, vertical_witness, WitnessCertificate};
