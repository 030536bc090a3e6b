//! Generalized quantum discord for two-qubit states.
//!
//! The Sharma-Mittal entropy `H_{q,r}` interpolates the Rényi (`r -> 1`),
//! Tsallis (`r -> q`) and von Neumann (`(q, r) -> (1, 1)`) entropies. Replacing
//! the von Neumann entropy in the definition of quantum discord with any of
//! them gives a family of correlation measures. For Bell-diagonal states
//!
//! ```text
//! rho = (I + c1 s1⊗s1 + c2 s2⊗s2 + c3 s3⊗s3) / 4
//! ```
//!
//! the measurement optimization has a closed form: the conditional term is the
//! binary entropy of `((1 + c)/2, (1 - c)/2)` with `c = max |ci|`.
//!
//! Modules:
//!
//! - [`matrix`]: dense complex matrices, tensor products, partial trace and
//!   transpose, Jacobi eigenvalues, JSON density-matrix files.
//! - [`entropy`]: the entropy family on probability vectors.
//! - [`states`]: Bell-diagonal, Werner, isotropic, pointer and pure states.
//! - [`discord`]: closed-form discord, a brute-force measurement oracle,
//!   mutual information and negativity.
//! - [`sweep`]: single-point evaluation, CSV parameter sweeps, zero-discord
//!   root finding and figure data.
//!
//! Rényi, Shannon and von Neumann entropies are in bits. Sharma-Mittal and
//! Tsallis contain no logarithm, so the Sharma-Mittal limits `r -> 1` and
//! `(q, r) -> (1, 1)` land on the Rényi and von Neumann values times `ln 2`.

#![forbid(unsafe_code)]

pub mod discord;
pub mod entropy;
pub mod error;
pub mod matrix;
pub mod states;
pub mod sweep;

pub use discord::{
    conditional_ensemble, conditional_term_closed, discord_bell, discord_isotropic, discord_oracle, discord_pointer,
    discord_werner, mutual_information, negativity, negativity_bell, pure_state_discord, ConditionalEnsemble,
    DiscordResult, MeasurementDirection, OracleResult,
};
pub use entropy::{entropy, EntropyKind, EntropyParams, ProbabilityVector};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, HermitianSpectrum};
pub use states::{BellDiagonalParams, IsotropicParams, PointerAxis, PointerParams, WernerParams};
