//! Brute-force measurement optimization.
//!
//! Scans projective measurements on B over a fixed set of Bloch directions,
//! builds every conditional ensemble with full matrix arithmetic and keeps the
//! smallest conditional term. Nothing here uses the Bell-diagonal closed form,
//! so it serves as an independent check on [`super::discord_bell`].

use rayon::prelude::*;
use serde::Serialize;

use super::{measure_b, DiscordResult, MeasurementDirection};
use crate::entropy::{entropy, EntropyParams, ProbabilityVector};
use crate::error::{Error, Result};
use crate::matrix::{hermitian_eigenvalues, partial_trace_a, validate_density_matrix, ComplexMatrix};

/// Smallest accepted number of spiral directions.
pub const MIN_GRID: usize = 100;
/// Allowed deviation of either marginal from `I/2`.
pub const MARGINAL_TOL: f64 = 1e-8;
/// Conditional terms this close to the minimum count as ties; the lowest
/// direction index wins.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub result: DiscordResult,
    pub direction: MeasurementDirection,
    /// `2 lambda_max(rho^(0)) - 1` at the extremal direction.
    pub theta: f64,
    pub directions_scanned: usize,
}

/// The six signed axes followed by `grid` Fibonacci-spiral points.
pub fn sphere_directions(grid: usize) -> Vec<MeasurementDirection> {
    let mut dirs = Vec::with_capacity(grid + 6);
    for axis in 0..3 {
        for sign in [1.0, -1.0] {
            let mut z = [0.0; 3];
            z[axis] = sign;
            dirs.push(MeasurementDirection::new(z).expect("unit axis"));
        }
    }
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let n = grid as f64;
    for i in 0..grid {
        let z3 = 1.0 - (2.0 * i as f64 + 1.0) / n;
        let rho = (1.0 - z3 * z3).max(0.0).sqrt();
        let phi = golden * i as f64;
        let z = [rho * phi.cos(), rho * phi.sin(), z3];
        let norm = z.iter().map(|x| x * x).sum::<f64>().sqrt();
        dirs.push(MeasurementDirection::new(z.map(|x| x / norm)).expect("unit spiral point"));
    }
    dirs
}

fn check_input(rho: &ComplexMatrix, grid: usize) -> Result<()> {
    if grid < MIN_GRID {
        return Err(Error::InvalidArgument(format!("grid = {grid}, need at least {MIN_GRID}")));
    }
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    validate_density_matrix(rho)?;
    let half = ComplexMatrix::identity(2).scale_real(0.5);
    for (name, marginal) in [("A", crate::matrix::partial_trace_b(rho, (2, 2))?), ("B", partial_trace_a(rho, (2, 2))?)]
    {
        let defect = marginal.max_abs_diff(&half);
        if defect > MARGINAL_TOL {
            return Err(Error::NotBellDiagonal(format!("marginal {name} differs from I/2 by {defect:.3e}")));
        }
    }
    Ok(())
}

/// Probabilities and spectra of both outcomes for one direction.
struct Measured {
    probabilities: [f64; 2],
    spectra: [ProbabilityVector; 2],
}

fn measure(rho: &ComplexMatrix, dir: &MeasurementDirection) -> Result<Measured> {
    let [o0, o1] = measure_b(rho, dir)?;
    let spectrum = |out: &super::ConditionalOutcome| {
        if out.probability > 1e-15 {
            ProbabilityVector::from_spectrum(&hermitian_eigenvalues(&out.state)?)
        } else {
            ProbabilityVector::new(vec![1.0, 0.0, 0.0, 0.0])
        }
    };
    Ok(Measured { probabilities: [o0.probability, o1.probability], spectra: [spectrum(&o0)?, spectrum(&o1)?] })
}

fn conditional(m: &Measured, ent: &EntropyParams) -> Result<f64> {
    Ok(m.probabilities[0] * entropy(&m.spectra[0], ent)? + m.probabilities[1] * entropy(&m.spectra[1], ent)?)
}

/// Oracle discord for one entropy.
pub fn discord_oracle(rho: &ComplexMatrix, ent: &EntropyParams, grid: usize) -> Result<OracleResult> {
    let mut all = discord_oracle_many(rho, std::slice::from_ref(ent), grid)?;
    Ok(all.pop().expect("one entropy in, one result out"))
}

/// Oracle discord for several entropies sharing one direction scan; the
/// conditional spectra are computed once per direction.
pub fn discord_oracle_many(rho: &ComplexMatrix, ents: &[EntropyParams], grid: usize) -> Result<Vec<OracleResult>> {
    check_input(rho, grid)?;
    for ent in ents {
        ent.validate()?;
    }
    let dirs = sphere_directions(grid);
    let measured: Vec<Measured> = dirs.par_iter().map(|d| measure(rho, d)).collect::<Result<_>>()?;
    let joint_spectrum = ProbabilityVector::from_spectrum(&hermitian_eigenvalues(rho)?)?;
    let marginal_spectrum = ProbabilityVector::from_spectrum(&hermitian_eigenvalues(&partial_trace_a(rho, (2, 2))?)?)?;

    ents.iter()
        .map(|ent| {
            let terms: Vec<f64> = measured.iter().map(|m| conditional(m, ent)).collect::<Result<_>>()?;
            let min = terms.iter().cloned().fold(f64::INFINITY, f64::min);
            let best = terms.iter().position(|&t| t <= min + TIE_TOL).expect("non-empty direction set");
            let cond = terms[best];
            let marginal = entropy(&marginal_spectrum, ent)?;
            let joint = entropy(&joint_spectrum, ent)?;
            let top = measured[best].spectra[0].as_slice().iter().cloned().fold(0.0, f64::max);
            Ok(OracleResult {
                result: DiscordResult::from_terms(marginal, cond, joint),
                direction: dirs[best],
                theta: (2.0 * top - 1.0).clamp(0.0, 1.0),
                directions_scanned: dirs.len(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discord::discord_bell;
    use crate::states::{
        bell_diagonal_matrix, pointer_matrix, werner_matrix, BellDiagonalParams, PointerAxis, PointerParams,
        WernerParams,
    };

    #[test]
    fn directions_are_unit_and_deterministic() {
        let a = sphere_directions(500);
        let b = sphere_directions(500);
        assert_eq!(a.len(), 506);
        assert_eq!(a, b);
        for d in &a {
            let n: f64 = d.z().iter().map(|x| x * x).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
        assert_eq!(a[0].z(), [1.0, 0.0, 0.0]);
        assert_eq!(a[5].z(), [0.0, 0.0, -1.0]);
    }

    #[test]
    fn werner_matches_closed_form() {
        let w = WernerParams::new(0.6).unwrap();
        let ent = EntropyParams::sharma_mittal(0.5, 0.4).unwrap();
        let o = discord_oracle(&werner_matrix(&w), &ent, 2000).unwrap();
        let c = discord_bell(&crate::states::werner_to_bell(&w), &ent).unwrap();
        assert!((o.result.signed - c.signed).abs() < 1e-6, "{o:?} vs {c:?}");
    }

    #[test]
    fn pointer_von_neumann_is_zero_along_axis() {
        let ptr = PointerParams::new(0.8, PointerAxis::Z).unwrap();
        let o = discord_oracle(&pointer_matrix(&ptr), &EntropyParams::VonNeumann, 2000).unwrap();
        assert!(o.result.signed.abs() < 1e-8, "{o:?}");
        let z = o.direction.z();
        assert!((z[2].abs() - 1.0).abs() < 1e-12, "{z:?}");
    }

    #[test]
    fn maximally_mixed_is_isotropic() {
        let rho = ComplexMatrix::identity(4).scale_real(0.25);
        let ent = EntropyParams::renyi(2.0).unwrap();
        let dirs = sphere_directions(100);
        let first = conditional(&measure(&rho, &dirs[0]).unwrap(), &ent).unwrap();
        for d in &dirs {
            let t = conditional(&measure(&rho, d).unwrap(), &ent).unwrap();
            assert!((t - first).abs() < 1e-12);
        }
        let o = discord_oracle(&rho, &ent, 100).unwrap();
        assert_eq!(o.direction.z(), [1.0, 0.0, 0.0]);
        assert!(o.theta.abs() < 1e-12);
    }

    #[test]
    fn extremal_theta_is_max_coefficient() {
        let params = BellDiagonalParams::new(0.1, -0.5, 0.3).unwrap();
        let o = discord_oracle(&bell_diagonal_matrix(&params), &EntropyParams::tsallis(2.0).unwrap(), 500).unwrap();
        assert!((o.theta - 0.5).abs() < 1e-4, "{o:?}");
        assert!((o.direction.z()[1].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        let rho = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(matches!(discord_oracle(&rho, &EntropyParams::VonNeumann, 50), Err(Error::InvalidArgument(_))));
        let skewed = ComplexMatrix::diagonal(&[0.7, 0.1, 0.1, 0.1]);
        assert!(matches!(discord_oracle(&skewed, &EntropyParams::VonNeumann, 100), Err(Error::NotBellDiagonal(_))));
        assert!(discord_oracle(&ComplexMatrix::identity(2).scale_real(0.5), &EntropyParams::VonNeumann, 100).is_err());
    }
}
