//! Exact decision procedures for sets of desirable gamble sets over finite
//! possibility spaces.
//!
//! Every membership answer comes with a certificate that can be re-checked
//! by substitution: coefficient vectors and remainders for cone membership,
//! per-sequence evidence for the natural extension, and machine-checked
//! derivation traces for the finite addition and dominance results.
//!
//! Module map:
//!
//! * [`ratlp`]: exact rationals, two-phase simplex (Bland's rule) and a
//!   Fourier–Motzkin feasibility oracle.
//! * [`gambles`]: possibility spaces, gambles and the dominance orders.
//! * [`cones`]: `posi(E)` and `posi(E ∪ G⪈0)` membership with certificates.
//! * [`extension`]: the natural extension, consistency, the coherence-axiom
//!   harness and the derivation engines.
//! * [`formulations`]: two alternative characterisations of the natural
//!   extension, used for differential testing.
//! * [`representation`]: representation by families of finitely generated
//!   coherent sets of desirable gambles.
//! * [`oracle`]: brute-force ground truth and seeded instance generation.
//! * [`cli`]: the batch JSON interface behind the `desir` binary.

pub mod cli;
pub mod cones;
mod error;
pub mod extension;
pub mod formulations;
pub mod gambles;
pub mod oracle;
pub mod ratlp;
pub mod representation;

pub use error::{Error, Result};
pub use gambles::{Gamble, PossibilitySpace};
pub use ratlp::Rational;
