//! Exact stability computations for torus actions and for the Borel subgroup
//! of SL(2) acting on binary forms, together with the reductive envelope that
//! certifies them, the variation of the quotient with the linearisation, and
//! brute-force oracles.

pub mod binary_forms;
pub mod envelope;
pub mod error;
pub mod exec;
pub mod hilbert_mumford;
pub mod oracle;
pub mod polytope;
pub mod status;
pub mod vgit;

pub use error::{Error, Result};
pub use exec::Exec;
pub use status::Status;
