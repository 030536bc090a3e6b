//! Two-qubit state families with maximally mixed marginals.
//!
//! Every family here is Bell-diagonal,
//! `rho = (I + c1 s1⊗s1 + c2 s2⊗s2 + c3 s3⊗s3) / 4`, so each constructor also
//! has a map onto [`BellDiagonalParams`].

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::entropy::ProbabilityVector;
use crate::error::{Error, Result};
use crate::matrix::{
    self, partial_trace_a, partial_trace_b, pauli, projectors_sym_antisym, tensor_product, ComplexMatrix,
};

/// Eigenvalues of a valid state may dip this far below zero.
pub const PSD_TOL: f64 = 1e-10;
/// Tolerance of the block normality / commutativity test.
pub const CQ_TOL: f64 = 1e-9;
/// Allowed deviation of a pure-state amplitude vector from unit norm.
pub const NORM_TOL: f64 = 1e-8;
/// Allowed deviation when reading a Bell-diagonal state from a general matrix.
pub const BELL_FORM_TOL: f64 = 1e-8;

/// Correlation coefficients `(c1, c2, c3)` of a Bell-diagonal state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BellDiagonalParams {
    c1: f64,
    c2: f64,
    c3: f64,
}

/// Outcome of checking a coefficient triple against positivity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BellValidity {
    pub coefficients: [f64; 3],
    /// `lambda_0..lambda_3` in closed form.
    pub eigenvalues: [f64; 4],
    /// `-1 <= ci <= 1` for every `i`, up to `4 PSD_TOL`.
    pub coefficients_in_range: bool,
    /// `c1 + c2 + c3 <= 1`, up to `4 PSD_TOL`.
    pub sum_at_most_one: bool,
    /// All four eigenvalues are `>= -1e-10`.
    pub valid: bool,
}

impl BellValidity {
    /// Index and value of the most negative eigenvalue, if any is out of range.
    pub fn offending_eigenvalue(&self) -> Option<(usize, f64)> {
        self.eigenvalues
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, l)| l < -PSD_TOL || !l.is_finite())
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

fn closed_form_eigenvalues([c1, c2, c3]: [f64; 3]) -> [f64; 4] {
    [(1.0 - c1 - c2 - c3) / 4.0, (1.0 - c1 + c2 + c3) / 4.0, (1.0 + c1 - c2 + c3) / 4.0, (1.0 + c1 + c2 - c3) / 4.0]
}

/// Checks a coefficient triple by the full eigenvalue test; the range and sum
/// conditions are reported alongside but do not decide validity.
pub fn validate_bell_params(c1: f64, c2: f64, c3: f64) -> BellValidity {
    let coefficients = [c1, c2, c3];
    let eigenvalues = closed_form_eigenvalues(coefficients);
    let finite = coefficients.iter().all(|c| c.is_finite());
    // The eigenvalue slack, carried over to the linear conditions.
    let slack = 4.0 * PSD_TOL;
    BellValidity {
        coefficients,
        eigenvalues,
        coefficients_in_range: coefficients.iter().all(|c| c.abs() <= 1.0 + slack),
        sum_at_most_one: c1 + c2 + c3 <= 1.0 + slack,
        valid: finite && eigenvalues.iter().all(|&l| l >= -PSD_TOL),
    }
}

impl BellDiagonalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let report = validate_bell_params(c1, c2, c3);
        if let Some((i, l)) = report.offending_eigenvalue() {
            return Err(Error::InvalidState(format!(
                "(c1, c2, c3) = ({c1}, {c2}, {c3}) gives eigenvalue lambda_{i} = {l} < 0"
            )));
        }
        if !report.valid {
            return Err(Error::InvalidState(format!("non-finite coefficients ({c1}, {c2}, {c3})")));
        }
        Ok(Self { c1, c2, c3 })
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// `c = max |ci|`, the length of the longest conditional Bloch vector.
    pub fn c(&self) -> f64 {
        self.c1.abs().max(self.c2.abs()).max(self.c3.abs())
    }

    /// Closed-form eigenvalues `lambda_0..lambda_3`, unclipped.
    pub fn raw_eigenvalues(&self) -> [f64; 4] {
        closed_form_eigenvalues(self.coefficients())
    }

    /// Reads `ci = tr(rho si⊗si)` off a 4x4 matrix and checks that `rho` is
    /// exactly the Bell-diagonal state they describe.
    pub fn from_matrix(rho: &ComplexMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
        }
        let c: Vec<f64> = (1..=3).map(|k| (&tensor_product(&pauli(k), &pauli(k)) * rho).trace().re).collect();
        let params = Self::new(c[0], c[1], c[2])?;
        let defect = bell_diagonal_matrix(&params).max_abs_diff(rho);
        if defect > BELL_FORM_TOL {
            return Err(Error::NotBellDiagonal(format!(
                "matrix differs from its Bell-diagonal projection by {defect:.3e}"
            )));
        }
        Ok(params)
    }
}

pub fn bell_diagonal_matrix(params: &BellDiagonalParams) -> ComplexMatrix {
    let [c1, c2, c3] = params.coefficients();
    ComplexMatrix::from_real_rows(&[
        &[1.0 + c3, 0.0, 0.0, c1 - c2],
        &[0.0, 1.0 - c3, c1 + c2, 0.0],
        &[0.0, c1 + c2, 1.0 - c3, 0.0],
        &[c1 - c2, 0.0, 0.0, 1.0 + c3],
    ])
    .expect("finite 4x4")
    .scale_real(0.25)
}

pub fn bell_diagonal_eigenvalues(params: &BellDiagonalParams) -> ProbabilityVector {
    ProbabilityVector::from_computed(params.raw_eigenvalues().to_vec())
        .expect("validated Bell parameters give a distribution")
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WernerParams {
    p: f64,
}

impl WernerParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidState(format!("Werner p = {p} outside [0, 1]")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// `2p/(d^2+d) P_sym + 2(1-p)/(d^2-d) P_anti` on `C^d ⊗ C^d`.
pub fn werner_matrix_d(d: usize, params: &WernerParams) -> Result<ComplexMatrix> {
    let (sym, anti) = projectors_sym_antisym(d)?;
    let p = params.p;
    let d = d as f64;
    Ok(&sym.scale_real(2.0 * p / (d * d + d)) + &anti.scale_real(2.0 * (1.0 - p) / (d * d - d)))
}

pub fn werner_matrix(params: &WernerParams) -> ComplexMatrix {
    werner_matrix_d(2, params).expect("d = 2")
}

/// `c1 = c2 = c3 = 4p/3 - 1`.
pub fn werner_to_bell(params: &WernerParams) -> BellDiagonalParams {
    let c = 4.0 * params.p / 3.0 - 1.0;
    BellDiagonalParams { c1: c, c2: c, c3: c }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IsotropicParams {
    fidelity: f64,
}

impl IsotropicParams {
    pub fn new(fidelity: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fidelity) {
            return Err(Error::InvalidState(format!("isotropic F = {fidelity} outside [0, 1]")));
        }
        Ok(Self { fidelity })
    }

    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }
}

/// `d^2/(d^2-1) [(1-F) I/d^2 + (F - 1/d^2) |phi+><phi+|]`.
pub fn isotropic_matrix_d(d: usize, params: &IsotropicParams) -> Result<ComplexMatrix> {
    if d < 2 {
        return Err(Error::InvalidState(format!("local dimension must be >= 2, got {d}")));
    }
    let n = d * d;
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let phi: Vec<Complex64> = (0..n).map(|k| if k / d == k % d { amp } else { Complex64::new(0.0, 0.0) }).collect();
    let f = params.fidelity;
    let nf = n as f64;
    let mixed = ComplexMatrix::identity(n).scale_real((1.0 - f) / nf);
    let ent = ComplexMatrix::outer(&phi).scale_real(f - 1.0 / nf);
    Ok((&mixed + &ent).scale_real(nf / (nf - 1.0)))
}

pub fn isotropic_matrix(params: &IsotropicParams) -> ComplexMatrix {
    isotropic_matrix_d(2, params).expect("d = 2")
}

/// `(c1, c2, c3) = (k, -k, k)` with `k = 4F/3 - 1/3`.
pub fn isotropic_to_bell(params: &IsotropicParams) -> BellDiagonalParams {
    let k = 4.0 * params.fidelity / 3.0 - 1.0 / 3.0;
    BellDiagonalParams { c1: k, c2: -k, c3: k }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum PointerAxis {
    X,
    Y,
    #[default]
    Z,
}

impl PointerAxis {
    pub fn index(self) -> usize {
        match self {
            PointerAxis::X => 1,
            PointerAxis::Y => 2,
            PointerAxis::Z => 3,
        }
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(PointerAxis::X),
            2 => Ok(PointerAxis::Y),
            3 => Ok(PointerAxis::Z),
            _ => Err(Error::InvalidState(format!("pointer axis must be 1, 2 or 3, got {i}"))),
        }
    }
}

/// Bell-diagonal state with a single nonzero coefficient `C` on `axis`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PointerParams {
    c: f64,
    axis: PointerAxis,
}

impl PointerParams {
    pub fn new(c: f64, axis: PointerAxis) -> Result<Self> {
        if !(-1.0..=1.0).contains(&c) {
            return Err(Error::InvalidState(format!("pointer C = {c} outside [-1, 1]")));
        }
        Ok(Self { c, axis })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn axis(&self) -> PointerAxis {
        self.axis
    }
}

pub fn pointer_to_bell(params: &PointerParams) -> BellDiagonalParams {
    let mut c = [0.0; 3];
    c[params.axis.index() - 1] = params.c;
    BellDiagonalParams { c1: c[0], c2: c[1], c3: c[2] }
}

pub fn pointer_matrix(params: &PointerParams) -> ComplexMatrix {
    bell_diagonal_matrix(&pointer_to_bell(params))
}

/// One of the ten block equations of the classical-quantum test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockViolation {
    pub equation: String,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalQuantumReport {
    pub classical: bool,
    /// First equation (normality before commutativity) whose residual
    /// exceeds the tolerance.
    pub witness: Option<BlockViolation>,
}

/// Splits a 4x4 state into 2x2 blocks `B11, B12, B21, B22` and checks that
/// each is normal and that every pair commutes.
pub fn classical_quantum_check(rho: &ComplexMatrix) -> Result<ClassicalQuantumReport> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    let names = ["B11", "B12", "B21", "B22"];
    let blocks = [rho.block(0, 0, 2), rho.block(0, 2, 2), rho.block(2, 0, 2), rho.block(2, 2, 2)];

    let normality = blocks.iter().zip(names).map(|(b, name)| {
        let residual = b.commutator(&b.adjoint()).norm();
        (format!("{name} {name}^dagger = {name}^dagger {name}"), residual)
    });
    let commutation = (0..4).flat_map(|i| ((i + 1)..4).map(move |j| (i, j))).map(|(i, j)| {
        let residual = blocks[i].commutator(&blocks[j]).norm();
        (format!("{a} {b} = {b} {a}", a = names[i], b = names[j]), residual)
    });

    let witness = normality
        .chain(commutation)
        .find(|(_, residual)| *residual > CQ_TOL)
        .map(|(equation, residual)| BlockViolation { equation, residual });
    Ok(ClassicalQuantumReport { classical: witness.is_none(), witness })
}

/// `|psi><psi|` for a normalized two-qubit amplitude vector.
pub fn pure_state_density(amplitudes: &[Complex64; 4]) -> Result<ComplexMatrix> {
    let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOL {
        return Err(Error::InvalidState(format!("amplitudes have squared norm {norm_sq}, expected 1")));
    }
    Ok(ComplexMatrix::outer(amplitudes))
}

/// Reduced states `(rho_a, rho_b)` of a two-qubit matrix.
pub fn marginals(rho: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix)> {
    Ok((partial_trace_b(rho, (2, 2))?, partial_trace_a(rho, (2, 2))?))
}

/// A parsed `--state` argument.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Werner(WernerParams),
    Isotropic(IsotropicParams),
    Pointer(PointerParams),
    Bell(BellDiagonalParams),
    File(PathBuf),
}

/// A state ready for discord evaluation.
#[derive(Clone, Debug)]
pub struct ResolvedState {
    pub matrix: ComplexMatrix,
    pub bell: BellDiagonalParams,
}

impl StateSpec {
    pub fn resolve(&self) -> Result<ResolvedState> {
        let (matrix, bell) = match self {
            StateSpec::Werner(w) => (werner_matrix(w), werner_to_bell(w)),
            StateSpec::Isotropic(i) => (isotropic_matrix(i), isotropic_to_bell(i)),
            StateSpec::Pointer(p) => (pointer_matrix(p), pointer_to_bell(p)),
            StateSpec::Bell(b) => (bell_diagonal_matrix(b), *b),
            StateSpec::File(path) => {
                let m = matrix::read_density_matrix(path)?;
                let bell = BellDiagonalParams::from_matrix(&m)?;
                (m, bell)
            }
        };
        Ok(ResolvedState { matrix, bell })
    }
}

fn parse_fields(body: &str) -> Result<Vec<(String, f64)>> {
    body.split(',')
        .map(|field| {
            let (k, v) =
                field.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {field:?}")))?;
            let value = v.trim().parse::<f64>().map_err(|e| Error::Parse(format!("bad number {v:?} for {k}: {e}")))?;
            Ok((k.trim().to_string(), value))
        })
        .collect()
}

fn take(fields: &[(String, f64)], key: &str) -> Option<f64> {
    fields.iter().find(|(k, _)| k == key).map(|&(_, v)| v)
}

fn require(fields: &[(String, f64)], key: &str, family: &str) -> Result<f64> {
    take(fields, key).ok_or_else(|| Error::Parse(format!("{family} state needs {key}=<value>")))
}

fn reject_unknown(fields: &[(String, f64)], allowed: &[&str], family: &str) -> Result<()> {
    match fields.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        Some((k, _)) => Err(Error::Parse(format!("unknown field {k:?} for {family} state"))),
        None => Ok(()),
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    /// `werner:p=<f>`, `isotropic:F=<f>`, `pointer:C=<f>[,axis=<1|2|3>]`,
    /// `bell:c1=<f>,c2=<f>,c3=<f>` or `file:<path.json>`.
    fn from_str(s: &str) -> Result<Self> {
        let (family, body) =
            s.split_once(':').ok_or_else(|| Error::Parse(format!("state spec {s:?} has no family prefix")))?;
        if family == "file" {
            if body.is_empty() {
                return Err(Error::Parse("file: needs a path".into()));
            }
            return Ok(StateSpec::File(PathBuf::from(body)));
        }
        let fields = parse_fields(body)?;
        match family {
            "werner" => {
                reject_unknown(&fields, &["p"], family)?;
                Ok(StateSpec::Werner(WernerParams::new(require(&fields, "p", family)?)?))
            }
            "isotropic" => {
                reject_unknown(&fields, &["F"], family)?;
                Ok(StateSpec::Isotropic(IsotropicParams::new(require(&fields, "F", family)?)?))
            }
            "pointer" => {
                reject_unknown(&fields, &["C", "axis"], family)?;
                let axis = match take(&fields, "axis") {
                    Some(a) if a.fract() == 0.0 && a >= 0.0 => PointerAxis::from_index(a as usize)?,
                    Some(a) => return Err(Error::Parse(format!("pointer axis must be an integer, got {a}"))),
                    None => PointerAxis::default(),
                };
                Ok(StateSpec::Pointer(PointerParams::new(require(&fields, "C", family)?, axis)?))
            }
            "bell" => {
                reject_unknown(&fields, &["c1", "c2", "c3"], family)?;
                Ok(StateSpec::Bell(BellDiagonalParams::new(
                    require(&fields, "c1", family)?,
                    require(&fields, "c2", family)?,
                    require(&fields, "c3", family)?,
                )?))
            }
            other => Err(Error::Parse(format!("unknown state family {other:?}"))),
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Werner(w) => write!(f, "werner:p={}", w.p),
            StateSpec::Isotropic(i) => write!(f, "isotropic:F={}", i.fidelity),
            StateSpec::Pointer(p) => write!(f, "pointer:C={},axis={}", p.c, p.axis.index()),
            StateSpec::Bell(b) => write!(f, "bell:c1={},c2={},c3={}", b.c1, b.c2, b.c3),
            StateSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::hermitian_eigenvalues;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn singlet() -> ComplexMatrix {
        ComplexMatrix::outer(&[
            Complex64::new(0.0, 0.0),
            Complex64::new(H, 0.0),
            Complex64::new(-H, 0.0),
            Complex64::new(0.0, 0.0),
        ])
    }

    fn bell(c1: f64, c2: f64, c3: f64) -> BellDiagonalParams {
        BellDiagonalParams::new(c1, c2, c3).unwrap()
    }

    /// Points of the 0.1-step cube that pass the eigenvalue test.
    fn valid_grid(step: f64) -> Vec<BellDiagonalParams> {
        let n = (2.0 / step).round() as i32;
        let vals: Vec<f64> = (0..=n).map(|k| -1.0 + k as f64 * step).collect();
        let mut out = Vec::new();
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    if let Ok(p) = BellDiagonalParams::new(a, b, c) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn maximally_mixed_and_singlet() {
        assert_eq!(bell_diagonal_matrix(&bell(0.0, 0.0, 0.0)), ComplexMatrix::identity(4).scale_real(0.25));
        assert!(bell_diagonal_matrix(&bell(-1.0, -1.0, -1.0)).max_abs_diff(&singlet()) < 1e-15);
    }

    #[test]
    fn werner_example_matrix() {
        let w = WernerParams::new(0.6).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            &[0.2, 0.0, 0.0, 0.0],
            &[0.0, 0.3, -0.1, 0.0],
            &[0.0, -0.1, 0.3, 0.0],
            &[0.0, 0.0, 0.0, 0.2],
        ])
        .unwrap();
        assert!(werner_matrix(&w).max_abs_diff(&expected) < 1e-15);
        assert!(bell_diagonal_matrix(&werner_to_bell(&w)).max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn werner_special_points() {
        let w0 = WernerParams::new(0.0).unwrap();
        assert!(werner_matrix(&w0).max_abs_diff(&singlet()) < 1e-15);
        assert_eq!(werner_to_bell(&w0).coefficients(), [-1.0, -1.0, -1.0]);
        let w34 = WernerParams::new(0.75).unwrap();
        assert!(werner_matrix(&w34).max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) < 1e-15);
        assert_eq!(werner_to_bell(&w34).coefficients(), [0.0, 0.0, 0.0]);
        let b = werner_to_bell(&WernerParams::new(0.6).unwrap());
        for c in b.coefficients() {
            assert!((c + 0.2).abs() < 1e-15);
        }
        assert!((b.c() - 0.2).abs() < 1e-15);
        assert!(WernerParams::new(1.01).is_err());
        assert!(WernerParams::new(-0.01).is_err());
    }

    #[test]
    fn werner_matrix_matches_paper_entries() {
        for k in 0..=20 {
            let p = k as f64 / 20.0;
            let expected = ComplexMatrix::from_real_rows(&[
                &[p / 3.0, 0.0, 0.0, 0.0],
                &[0.0, 0.5 - p / 3.0, 2.0 * p / 3.0 - 0.5, 0.0],
                &[0.0, 2.0 * p / 3.0 - 0.5, 0.5 - p / 3.0, 0.0],
                &[0.0, 0.0, 0.0, p / 3.0],
            ])
            .unwrap();
            assert!(werner_matrix(&WernerParams::new(p).unwrap()).max_abs_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn general_dimension_werner_and_isotropic_are_states() {
        for d in 2..=4 {
            for x in [0.0, 0.3, 1.0] {
                let w = werner_matrix_d(d, &WernerParams::new(x).unwrap()).unwrap();
                let i = isotropic_matrix_d(d, &IsotropicParams::new(x).unwrap()).unwrap();
                for m in [w, i] {
                    assert!((m.trace().re - 1.0).abs() < 1e-12);
                    assert!(hermitian_eigenvalues(&m).unwrap().min() > -1e-12);
                }
            }
        }
    }

    #[test]
    fn isotropic_special_points() {
        let f14 = IsotropicParams::new(0.25).unwrap();
        assert!(isotropic_matrix(&f14).max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25)) < 1e-15);
        assert!(isotropic_to_bell(&f14).c() < 1e-15);

        let f1 = IsotropicParams::new(1.0).unwrap();
        let phi_plus = ComplexMatrix::outer(&[
            Complex64::new(H, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(H, 0.0),
        ]);
        assert!(isotropic_matrix(&f1).max_abs_diff(&phi_plus) < 1e-15);
        let b1 = isotropic_to_bell(&f1).coefficients();
        assert!((b1[0] - 1.0).abs() < 1e-15 && (b1[1] + 1.0).abs() < 1e-15 && (b1[2] - 1.0).abs() < 1e-15);

        let f0 = IsotropicParams::new(0.0).unwrap();
        let b0 = isotropic_to_bell(&f0);
        assert!((b0.c() - 1.0 / 3.0).abs() < 1e-15);
        let spec = hermitian_eigenvalues(&isotropic_matrix(&f0)).unwrap();
        let expected = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0];
        for (a, b) in spec.eigenvalues().iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn isotropic_matches_paper_entries() {
        for k in 0..=20 {
            let f = k as f64 / 20.0;
            let expected = ComplexMatrix::from_real_rows(&[
                &[f / 3.0 + 1.0 / 6.0, 0.0, 0.0, 2.0 * f / 3.0 - 1.0 / 6.0],
                &[0.0, 1.0 / 3.0 - f / 3.0, 0.0, 0.0],
                &[0.0, 0.0, 1.0 / 3.0 - f / 3.0, 0.0],
                &[2.0 * f / 3.0 - 1.0 / 6.0, 0.0, 0.0, f / 3.0 + 1.0 / 6.0],
            ])
            .unwrap();
            let params = IsotropicParams::new(f).unwrap();
            assert!(isotropic_matrix(&params).max_abs_diff(&expected) < 1e-15);
            assert!(bell_diagonal_matrix(&isotropic_to_bell(&params)).max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn pointer_states() {
        let zero = PointerParams::new(0.0, PointerAxis::Z).unwrap();
        assert_eq!(pointer_matrix(&zero), ComplexMatrix::identity(4).scale_real(0.25));
        let one = PointerParams::new(1.0, PointerAxis::Z).unwrap();
        assert_eq!(pointer_matrix(&one), ComplexMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5]));
        for axis in [PointerAxis::X, PointerAxis::Y, PointerAxis::Z] {
            let half = PointerParams::new(0.5, axis).unwrap();
            let spec = hermitian_eigenvalues(&pointer_matrix(&half)).unwrap();
            for (a, b) in spec.eigenvalues().iter().zip([0.375, 0.375, 0.125, 0.125]) {
                assert!((a - b).abs() < 1e-15);
            }
        }
        assert!(PointerParams::new(1.5, PointerAxis::Z).is_err());
    }

    #[test]
    fn validity_examples() {
        let r = validate_bell_params(1.0, 1.0, 1.0);
        assert!(!r.valid);
        assert_eq!(r.eigenvalues[0], -0.5);
        assert_eq!(r.offending_eigenvalue(), Some((0, -0.5)));

        let r = validate_bell_params(1.0, 0.0, 0.0);
        assert!(r.valid);
        assert_eq!(r.eigenvalues, [0.0, 0.0, 0.5, 0.5]);

        // All four eigenvalues are non-negative: (0.025, 0.025, 0.025, 0.925).
        let r = validate_bell_params(0.9, 0.9, -0.9);
        assert!(r.valid);
        assert!((r.eigenvalues[3] - 0.925).abs() < 1e-15);
        for l in &r.eigenvalues[..3] {
            assert!((l - 0.025).abs() < 1e-15);
        }

        // Satisfies the necessary range and sum conditions, yet lambda_3 < 0.
        let r = validate_bell_params(-1.0, -1.0, 1.0);
        assert!(r.coefficients_in_range && r.sum_at_most_one);
        assert!(!r.valid);
        assert_eq!(r.offending_eigenvalue(), Some((3, -0.5)));

        let err = BellDiagonalParams::new(1.0, 1.0, 1.0).unwrap_err();
        assert!(err.to_string().contains("lambda_0"), "{err}");
        assert!(BellDiagonalParams::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn marginals_are_maximally_mixed_on_grid() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let grid = valid_grid(0.1);
        assert!(grid.len() > 100);
        for params in grid {
            let (a, b) = marginals(&bell_diagonal_matrix(&params)).unwrap();
            assert!(a.max_abs_diff(&half) < 1e-12);
            assert!(b.max_abs_diff(&half) < 1e-12);
        }
    }

    #[test]
    fn closed_form_spectrum_matches_eigensolver() {
        for params in valid_grid(0.1) {
            let numeric = hermitian_eigenvalues(&bell_diagonal_matrix(&params)).unwrap();
            let mut closed = params.raw_eigenvalues().to_vec();
            closed.sort_by(|a, b| b.total_cmp(a));
            for (a, b) in numeric.eigenvalues().iter().zip(&closed) {
                assert!((a - b).abs() < 1e-10, "{params:?}: {a} vs {b}");
            }
            let probs = bell_diagonal_eigenvalues(&params);
            assert!((probs.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lemma_conditions_hold_on_accepted_points() {
        for params in valid_grid(0.1) {
            let [c1, c2, c3] = params.coefficients();
            let r = validate_bell_params(c1, c2, c3);
            assert!(r.coefficients_in_range && r.sum_at_most_one, "{params:?}");
        }
    }

    #[test]
    fn classical_quantum_examples() {
        let pointer = pointer_matrix(&PointerParams::new(0.7, PointerAxis::Z).unwrap());
        assert!(classical_quantum_check(&pointer).unwrap().classical);

        let werner = werner_matrix(&WernerParams::new(0.6).unwrap());
        let report = classical_quantum_check(&werner).unwrap();
        assert!(!report.classical);
        let witness = report.witness.unwrap();
        assert!(witness.equation.starts_with("B11 B11") || witness.equation.starts_with("B12"), "{witness:?}");

        let mixed = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(classical_quantum_check(&mixed).unwrap().classical);
        assert!(classical_quantum_check(&ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn classical_quantum_on_family_grids() {
        for k in 0..=40 {
            let c = -1.0 + k as f64 / 20.0;
            for axis in [PointerAxis::X, PointerAxis::Y, PointerAxis::Z] {
                let m = pointer_matrix(&PointerParams::new(c, axis).unwrap());
                assert!(classical_quantum_check(&m).unwrap().classical, "C={c} axis={axis:?}");
            }
        }
        for k in 0..=40 {
            let p = k as f64 / 40.0;
            let report = classical_quantum_check(&werner_matrix(&WernerParams::new(p).unwrap())).unwrap();
            assert_eq!(report.classical, k == 30, "p={p}");
        }
    }

    #[test]
    fn pure_states() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let product = pure_state_density(&[one, zero, zero, zero]).unwrap();
        assert_eq!(product, ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0]));

        let h = Complex64::new(H, 0.0);
        let s = pure_state_density(&[zero, h, -h, zero]).unwrap();
        assert!(s.max_abs_diff(&singlet()) < 1e-15);
        let (_, b) = marginals(&s).unwrap();
        assert!(b.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);

        let spectrum = hermitian_eigenvalues(&s).unwrap();
        assert!((spectrum.eigenvalues()[0] - 1.0).abs() < 1e-14);
        assert!(pure_state_density(&[one, one, zero, zero]).is_err());
    }

    #[test]
    fn reads_bell_params_back_from_matrix() {
        let params = bell(0.3, -0.5, 0.2);
        let back = BellDiagonalParams::from_matrix(&bell_diagonal_matrix(&params)).unwrap();
        for (a, b) in back.coefficients().iter().zip(params.coefficients()) {
            assert!((a - b).abs() < 1e-15);
        }
        let product = ComplexMatrix::diagonal(&[1.0, 0.0, 0.0, 0.0]);
        assert!(matches!(BellDiagonalParams::from_matrix(&product), Err(Error::NotBellDiagonal(_))));
    }

    #[test]
    fn state_spec_grammar() {
        assert_eq!("werner:p=0.6".parse::<StateSpec>().unwrap(), StateSpec::Werner(WernerParams::new(0.6).unwrap()));
        assert_eq!(
            "isotropic:F=0.7".parse::<StateSpec>().unwrap(),
            StateSpec::Isotropic(IsotropicParams::new(0.7).unwrap())
        );
        assert_eq!(
            "pointer:C=0.5".parse::<StateSpec>().unwrap(),
            StateSpec::Pointer(PointerParams::new(0.5, PointerAxis::Z).unwrap())
        );
        assert_eq!(
            "pointer:C=-0.5,axis=1".parse::<StateSpec>().unwrap(),
            StateSpec::Pointer(PointerParams::new(-0.5, PointerAxis::X).unwrap())
        );
        assert_eq!("bell:c1=0,c2=0,c3=0".parse::<StateSpec>().unwrap(), StateSpec::Bell(bell(0.0, 0.0, 0.0)));
        assert_eq!("file:/tmp/rho.json".parse::<StateSpec>().unwrap(), StateSpec::File(PathBuf::from("/tmp/rho.json")));
        for bad in [
            "werner",
            "werner:q=0.5",
            "werner:p=abc",
            "werner:p=1.5",
            "pointer:C=0.5,axis=4",
            "pointer:C=0.5,axis=1.5",
            "bell:c1=1,c2=1,c3=1",
            "bell:c1=0,c2=0",
            "ghz:p=0.1",
            "file:",
        ] {
            assert!(bad.parse::<StateSpec>().is_err(), "{bad} should not parse");
        }
        let spec: StateSpec = "pointer:C=0.25,axis=2".parse().unwrap();
        assert_eq!(spec.to_string().parse::<StateSpec>().unwrap(), spec);
    }
}
