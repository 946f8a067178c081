//! Exact machinery for Steiner t-designs and their automorphism groups:
//! finite fields, permutation groups with stabilizer chains, the projective
//! line with its classical group actions, design verification and
//! construction, parameter admissibility arithmetic, and the bounded
//! flag-transitivity census for t = 5 and 6.

pub mod error;
pub mod gf;
pub mod perm;
pub mod admiss;
pub mod construct;
pub mod design;
pub mod pgl;

pub use error::{Error, Result};
