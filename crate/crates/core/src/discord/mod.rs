//! Generalized quantum discord of Bell-diagonal states.
//!
//! For an entropy `H` from the Sharma-Mittal family,
//!
//! ```text
//! D(rho) = H(rho_b) + min_{Pi} sum_k p_k H(rho^(k)) - H(rho)
//! ```
//!
//! where `{Pi}` runs over projective measurements on B. For Bell-diagonal
//! states each outcome has `p_k = 1/2` and a conditional state with spectrum
//! `{(1 ± theta)/2, 0, 0}`, `theta = sqrt(sum ci^2 zi^2)`. Binary entropy is
//! non-increasing in `theta`, so the conditional term is extremal at
//! `theta = c = max |ci|`. [`discord_bell`] evaluates that closed form;
//! [`oracle`] finds the same extremum by scanning measurement directions.
//!
//! Sharma-Mittal, Rényi and Tsallis discords can be negative, so both the
//! signed value and its absolute value are reported.

pub mod oracle;

use std::f64::consts::LN_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::entropy::{entropy, xlog2x, EntropyParams, ProbabilityVector};
use crate::error::{Error, Result};
use crate::matrix::{
    hermitian_eigenvalues, partial_trace_a, partial_trace_b, partial_transpose_b, pauli, validate_density_matrix,
    ComplexMatrix,
};
use crate::states::{
    bell_diagonal_eigenvalues, bell_diagonal_matrix, pure_state_density, validate_bell_params, BellDiagonalParams,
    IsotropicParams, PointerParams, WernerParams,
};

pub use oracle::{discord_oracle, discord_oracle_many, sphere_directions, OracleResult};

/// Allowed deviation of `|z|^2` from 1.
pub const UNIT_TOL: f64 = 1e-10;
/// Allowed deviation of `t^2 + |y|^2` from 1 for unitary parameters.
pub const UNITARY_TOL: f64 = 1e-8;

/// Bloch direction `z` of a projective measurement `{V|k><k|V^dagger}` on B.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeasurementDirection {
    z: [f64; 3],
    /// `(t, y1, y2, y3)` with `V = t I + i (y1 s1 + y2 s2 + y3 s3)`, when the
    /// direction was built from a unitary.
    unitary: Option<[f64; 4]>,
}

impl MeasurementDirection {
    pub fn new(z: [f64; 3]) -> Result<Self> {
        let norm_sq: f64 = z.iter().map(|x| x * x).sum();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > UNIT_TOL {
            return Err(Error::NotUnitDirection { norm_sq });
        }
        Ok(Self { z, unitary: None })
    }

    /// Same as [`unitary_to_direction`].
    pub fn from_unitary(t: f64, y1: f64, y2: f64, y3: f64) -> Result<Self> {
        unitary_to_direction(t, y1, y2, y3)
    }

    pub fn z(&self) -> [f64; 3] {
        self.z
    }

    pub fn provenance(&self) -> Option<[f64; 4]> {
        self.unitary
    }

    /// Unitary parameters realizing this direction: the provenance if present,
    /// otherwise the `y3 = 0` solution of the z-map.
    pub fn unitary_params(&self) -> [f64; 4] {
        if let Some(u) = self.unitary {
            return u;
        }
        let [z1, z2, z3] = self.z;
        let sin_a = z1.hypot(z2);
        if sin_a == 0.0 {
            return if z3 > 0.0 { [1.0, 0.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0, 0.0] };
        }
        let alpha = z3.clamp(-1.0, 1.0).acos();
        let (s, t) = (alpha / 2.0).sin_cos();
        [t, s * z2 / sin_a, -s * z1 / sin_a, 0.0]
    }

    /// The 2x2 unitary `V = t I + i (y1 s1 + y2 s2 + y3 s3)`.
    pub fn unitary(&self) -> ComplexMatrix {
        let [t, y1, y2, y3] = self.unitary_params();
        let i = Complex64::new(0.0, 1.0);
        let mut v = ComplexMatrix::identity(2).scale_real(t);
        for (k, y) in [(1, y1), (2, y2), (3, y3)] {
            v = &v + &pauli(k).scale(i * y);
        }
        v
    }

    /// `V |k><k| V^dagger` for outcome `k` in `{0, 1}`.
    pub fn projector(&self, k: usize) -> ComplexMatrix {
        assert!(k < 2, "qubit outcome {k} out of range");
        let v = self.unitary();
        let col = [v[(0, k)], v[(1, k)]];
        ComplexMatrix::outer(&col)
    }

    /// `theta = sqrt(c1^2 z1^2 + c2^2 z2^2 + c3^2 z3^2)`.
    pub fn theta(&self, params: &BellDiagonalParams) -> f64 {
        params.coefficients().iter().zip(self.z).map(|(c, z)| (c * z).powi(2)).sum::<f64>().sqrt().min(1.0)
    }
}

/// Maps unitary parameters on the unit 3-sphere to the measured Bloch direction:
/// `z1 = 2(-t y2 + y1 y3)`, `z2 = 2(t y1 + y2 y3)`, `z3 = t^2 + y3^2 - y1^2 - y2^2`.
pub fn unitary_to_direction(t: f64, y1: f64, y2: f64, y3: f64) -> Result<MeasurementDirection> {
    let norm_sq = t * t + y1 * y1 + y2 * y2 + y3 * y3;
    if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > UNITARY_TOL {
        return Err(Error::InvalidArgument(format!("unitary parameters have t^2 + |y|^2 = {norm_sq}, expected 1")));
    }
    let n = norm_sq.sqrt();
    let (t, y1, y2, y3) = (t / n, y1 / n, y2 / n, y3 / n);
    let z = [2.0 * (-t * y2 + y1 * y3), 2.0 * (t * y1 + y2 * y3), t * t + y3 * y3 - y1 * y1 - y2 * y2];
    let mut dir = MeasurementDirection::new(z)?;
    dir.unitary = Some([t, y1, y2, y3]);
    Ok(dir)
}

#[derive(Clone, Debug)]
pub struct ConditionalOutcome {
    pub probability: f64,
    /// Post-measurement joint state `rho^(k)`, normalized.
    pub state: ComplexMatrix,
}

#[derive(Clone, Debug)]
pub struct ConditionalEnsemble {
    pub outcomes: [ConditionalOutcome; 2],
    pub theta: f64,
}

/// Measures B along `dir` and returns `{p_k, rho^(k)}`:
/// `rho^(k) = (I ⊗ B_k) rho (I ⊗ B_k) / p_k`. Zero-probability outcomes carry
/// the zero matrix.
pub fn measure_b(rho: &ComplexMatrix, dir: &MeasurementDirection) -> Result<[ConditionalOutcome; 2]> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    let outcome = |k: usize| {
        let lift = crate::matrix::tensor_product(&ComplexMatrix::identity(2), &dir.projector(k));
        let projected = &(&lift * rho) * &lift;
        let probability = projected.trace().re;
        let state = if probability > 1e-15 { projected.scale_real(1.0 / probability) } else { ComplexMatrix::zeros(4) };
        ConditionalOutcome { probability, state }
    };
    Ok([outcome(0), outcome(1)])
}

pub fn conditional_ensemble(params: &BellDiagonalParams, dir: &MeasurementDirection) -> ConditionalEnsemble {
    let outcomes = measure_b(&bell_diagonal_matrix(params), dir).expect("4x4 state");
    ConditionalEnsemble { outcomes, theta: dir.theta(params) }
}

/// Signed discord with its three constituent terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiscordResult {
    pub signed: f64,
    pub absolute: f64,
    /// `H(rho_b)`.
    pub marginal_entropy: f64,
    /// Extremal `sum_k p_k H(rho^(k))`.
    pub conditional_term: f64,
    /// `H(rho)`.
    pub joint_entropy: f64,
}

impl DiscordResult {
    pub fn from_terms(marginal_entropy: f64, conditional_term: f64, joint_entropy: f64) -> Self {
        Self::with_signed(
            marginal_entropy + conditional_term - joint_entropy,
            marginal_entropy,
            conditional_term,
            joint_entropy,
        )
    }

    /// Uses a separately computed signed value (e.g. a factored closed form).
    fn with_signed(signed: f64, marginal_entropy: f64, conditional_term: f64, joint_entropy: f64) -> Self {
        Self { signed, absolute: signed.abs(), marginal_entropy, conditional_term, joint_entropy }
    }

    /// `signed - (marginal + conditional - joint)`.
    pub fn residual(&self) -> f64 {
        self.signed - (self.marginal_entropy + self.conditional_term - self.joint_entropy)
    }
}

fn check_entropy(ent: &EntropyParams) -> Result<()> {
    ent.validate().map_err(|e| {
        Error::InvalidEntropyParams(format!("{e}; near q = 1 or r = 1 select the renyi, tsallis or vn kind explicitly"))
    })
}

/// Conditional term at `theta = c`: the entropy of `((1 + c)/2, (1 - c)/2)`.
pub fn conditional_term_closed(c: f64, ent: &EntropyParams) -> Result<f64> {
    check_entropy(ent)?;
    if !(-1e-12..=1.0 + 1e-12).contains(&c) {
        return Err(Error::InvalidArgument(format!("c = {c} outside [0, 1]")));
    }
    entropy(&ProbabilityVector::binary(c.clamp(0.0, 1.0))?, ent)
}

pub fn discord_bell(params: &BellDiagonalParams, ent: &EntropyParams) -> Result<DiscordResult> {
    check_entropy(ent)?;
    let marginal = entropy(&ProbabilityVector::uniform(2), ent)?;
    let conditional = conditional_term_closed(params.c(), ent)?;
    let joint = entropy(&bell_diagonal_eigenvalues(params), ent)?;
    Ok(DiscordResult::from_terms(marginal, conditional, joint))
}

/// Closed-form terms for a family whose conditional probabilities are
/// `(a, b)` and whose spectrum is given as `(eigenvalue, multiplicity)` pairs.
fn family_terms(ent: &EntropyParams, (a, b): (f64, f64), spectrum: &[(f64, f64)]) -> (f64, f64, f64) {
    let power = |x: f64, q: f64| if x > 0.0 { x.powf(q) } else { 0.0 };
    match *ent {
        EntropyParams::SharmaMittal { q, r } => {
            let e = (1.0 - r) / (1.0 - q);
            let cond_sum = power(a, q) + power(b, q);
            let joint_sum: f64 = spectrum.iter().map(|&(l, m)| m * power(l, q)).sum();
            (
                ((1.0 - r) * LN_2).exp_m1() / (1.0 - r),
                (e * cond_sum.ln()).exp_m1() / (1.0 - r),
                (e * joint_sum.ln()).exp_m1() / (1.0 - r),
            )
        }
        EntropyParams::Renyi { q } => {
            let cond_sum = power(a, q) + power(b, q);
            let joint_sum: f64 = spectrum.iter().map(|&(l, m)| m * power(l, q)).sum();
            (1.0, cond_sum.log2() / (1.0 - q), joint_sum.log2() / (1.0 - q))
        }
        EntropyParams::Tsallis { q } => {
            let cond_sum = power(a, q) + power(b, q);
            let joint_sum: f64 = spectrum.iter().map(|&(l, m)| m * power(l, q)).sum();
            ((2f64.powf(1.0 - q) - 1.0) / (1.0 - q), (cond_sum - 1.0) / (1.0 - q), (joint_sum - 1.0) / (1.0 - q))
        }
        EntropyParams::VonNeumann => {
            (1.0, -xlog2x(a) - xlog2x(b), -spectrum.iter().map(|&(l, m)| m * xlog2x(l)).sum::<f64>())
        }
    }
}

/// Werner family: spectrum `{1 - p, p/3 (x3)}`, conditional probabilities
/// `(3 ± |4p - 3|)/6`.
pub fn discord_werner(params: &WernerParams, ent: &EntropyParams) -> Result<DiscordResult> {
    check_entropy(ent)?;
    let p = params.p();
    let k = (4.0 * p - 3.0).abs();
    let (m, c, j) = family_terms(ent, ((3.0 + k) / 6.0, (3.0 - k) / 6.0), &[(1.0 - p, 1.0), (p / 3.0, 3.0)]);
    Ok(DiscordResult::from_terms(m, c, j))
}

/// Isotropic family: spectrum `{F, (1 - F)/3 (x3)}`, conditional
/// probabilities `(3 ± |4F - 1|)/6`.
pub fn discord_isotropic(params: &IsotropicParams, ent: &EntropyParams) -> Result<DiscordResult> {
    check_entropy(ent)?;
    let f = params.fidelity();
    let k = (4.0 * f - 1.0).abs();
    let (m, c, j) = family_terms(ent, ((3.0 + k) / 6.0, (3.0 - k) / 6.0), &[(f, 1.0), ((1.0 - f) / 3.0, 3.0)]);
    Ok(DiscordResult::from_terms(m, c, j))
}

/// Pointer family: spectrum `{(1 ± C)/4 (x2 each)}`. The Sharma-Mittal and
/// Tsallis values use the factored forms
/// `(2^{1-r} - 1)/(1 - r) [1 - 2^{-q(1-r)/(1-q)} ((1+C)^q + (1-C)^q)^{(1-r)/(1-q)}]`
/// and `(2^{1-q} - 1)/(1 - q) [1 - 2^{-q} ((1+C)^q + (1-C)^q)]`. The Rényi and
/// von Neumann discords vanish identically on this family.
pub fn discord_pointer(params: &PointerParams, ent: &EntropyParams) -> Result<DiscordResult> {
    check_entropy(ent)?;
    let big_c = params.c();
    let abs_c = big_c.abs();
    let (m, c, j) = family_terms(
        ent,
        ((1.0 + abs_c) / 2.0, (1.0 - abs_c) / 2.0),
        &[((1.0 + big_c) / 4.0, 2.0), ((1.0 - big_c) / 4.0, 2.0)],
    );
    let s = |q: f64| (1.0 + big_c).powf(q) + (1.0 - big_c).powf(q);
    let signed = match *ent {
        EntropyParams::SharmaMittal { q, r } => {
            let e = (1.0 - r) / (1.0 - q);
            let prefactor = ((1.0 - r) * LN_2).exp_m1() / (1.0 - r);
            -prefactor * (e * (s(q).ln() - q * LN_2)).exp_m1()
        }
        EntropyParams::Tsallis { q } => (2f64.powf(1.0 - q) - 1.0) / (1.0 - q) * (1.0 - 2f64.powf(-q) * s(q)),
        EntropyParams::Renyi { q } => {
            let cond = ((1.0 + abs_c) / 2.0).powf(q) + ((1.0 - abs_c) / 2.0).powf(q);
            let joint = 2f64.powf(1.0 - 2.0 * q) * s(q);
            1.0 + (cond.log2() - joint.log2()) / (1.0 - q)
        }
        EntropyParams::VonNeumann => m + c - j,
    };
    Ok(DiscordResult::with_signed(signed, m, c, j))
}

/// `N = sum max(0, -lambda)` over the spectrum of the partial transpose on B.
pub fn negativity(rho: &ComplexMatrix, dims: (usize, usize)) -> Result<f64> {
    validate_density_matrix(rho)?;
    let pt = partial_transpose_b(rho, dims)?;
    Ok(hermitian_eigenvalues(&pt)?.eigenvalues().iter().map(|&l| (-l).max(0.0)).sum())
}

/// Negativity of a Bell-diagonal state without an eigensolver: transposing B
/// flips the sign of `c2`, so the partial transpose is again Bell-diagonal.
pub fn negativity_bell(params: &BellDiagonalParams) -> f64 {
    let [c1, c2, c3] = params.coefficients();
    validate_bell_params(c1, -c2, c3).eigenvalues.iter().map(|&l| (-l).max(0.0)).sum()
}

/// `(|p - 1/2| - (p - 1/2)) / 2`.
pub fn werner_negativity(p: f64) -> f64 {
    0.5 * ((p - 0.5).abs() - (p - 0.5))
}

/// `(|1/2 - F| - (1/2 - F)) / 2`.
pub fn isotropic_negativity(fidelity: f64) -> f64 {
    0.5 * ((0.5 - fidelity).abs() - (0.5 - fidelity))
}

fn matrix_entropy(m: &ComplexMatrix, ent: &EntropyParams) -> Result<f64> {
    entropy(&ProbabilityVector::from_spectrum(&hermitian_eigenvalues(m)?)?, ent)
}

/// `H(rho_a) + H(rho_b) - H(rho)`.
pub fn mutual_information(rho: &ComplexMatrix, dims: (usize, usize), ent: &EntropyParams) -> Result<f64> {
    check_entropy(ent)?;
    validate_density_matrix(rho)?;
    let a = partial_trace_b(rho, dims)?;
    let b = partial_trace_a(rho, dims)?;
    Ok(matrix_entropy(&a, ent)? + matrix_entropy(&b, ent)? - matrix_entropy(rho, ent)?)
}

/// Discord of a pure state: every measurement leaves pure conditional
/// states, so only `H(rho_b)` survives.
pub fn pure_state_discord(amplitudes: &[Complex64; 4], ent: &EntropyParams) -> Result<f64> {
    check_entropy(ent)?;
    let rho = pure_state_density(amplitudes)?;
    matrix_entropy(&partial_trace_a(&rho, (2, 2))?, ent)
}
