//! Sharma-Mittal entropy and its Rényi, Tsallis and Shannon limits.
//!
//! ```text
//! H_{q,r}(p) = ((sum p_i^q)^((1-r)/(1-q)) - 1) / (1 - r)
//! ```
//!
//! The kernel is singular on the lines `q = 1` and `r = 1`. It refuses
//! parameters within [`SINGULAR_TOL`] of them; callers select the limit
//! explicitly through [`EntropyParams`].

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::HermitianSpectrum;

/// Distance from `q = 1` or `r = 1` below which the kernels refuse to evaluate.
pub const SINGULAR_TOL: f64 = 1e-8;
/// Negative probabilities down to this value are rounding noise and read as 0.
pub const CLIP_TOL: f64 = 1e-10;
/// Allowed deviation of `sum p_i` from 1.
pub const NORMALIZATION_TOL: f64 = 1e-8;
/// Computed eigenvalues this close to zero are set to exactly zero. For
/// `q < 1`, `x^q` is steep near 0, so leftover rounding noise such as `1e-17`
/// would otherwise shift an entropy by about `1e-17^q`.
pub const SPECTRUM_ZERO_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    /// Clips entries in `[-1e-10, 0)` to zero and checks normalization.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidProbability("empty distribution".into()));
        }
        let mut out = Vec::with_capacity(probs.len());
        for (i, p) in probs.into_iter().enumerate() {
            if !p.is_finite() || !(-CLIP_TOL..=1.0 + CLIP_TOL).contains(&p) {
                return Err(Error::InvalidProbability(format!("entry {i} = {p} outside [0, 1]")));
            }
            out.push(p.clamp(0.0, 1.0));
        }
        let sum: f64 = out.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidProbability(format!("entries sum to {sum}")));
        }
        Ok(Self(out))
    }

    /// Reads a density-matrix spectrum as a distribution.
    pub fn from_spectrum(spectrum: &HermitianSpectrum) -> Result<Self> {
        Self::from_computed(spectrum.eigenvalues().to_vec())
    }

    /// Like [`ProbabilityVector::new`] for values produced by floating-point
    /// arithmetic: entries within [`SPECTRUM_ZERO_TOL`] of zero become zero.
    pub fn from_computed(mut values: Vec<f64>) -> Result<Self> {
        for v in &mut values {
            if v.abs() <= SPECTRUM_ZERO_TOL {
                *v = 0.0;
            }
        }
        Self::new(values)
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    /// The two-point distribution `((1 + theta)/2, (1 - theta)/2)`.
    pub fn binary(theta: f64) -> Result<Self> {
        Self::new(vec![(1.0 + theta) / 2.0, (1.0 - theta) / 2.0])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn power_sum(&self, q: f64) -> f64 {
        self.0.iter().filter(|&&p| p > 0.0).map(|&p| p.powf(q)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyKind {
    SharmaMittal,
    Renyi,
    Tsallis,
    VonNeumann,
}

impl EntropyKind {
    pub fn label(self) -> &'static str {
        match self {
            EntropyKind::SharmaMittal => "sm",
            EntropyKind::Renyi => "renyi",
            EntropyKind::Tsallis => "tsallis",
            EntropyKind::VonNeumann => "vn",
        }
    }
}

impl std::str::FromStr for EntropyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sm" | "sharma_mittal" | "sharma-mittal" => Ok(EntropyKind::SharmaMittal),
            "renyi" => Ok(EntropyKind::Renyi),
            "tsallis" => Ok(EntropyKind::Tsallis),
            "vn" | "von_neumann" | "von-neumann" | "shannon" => Ok(EntropyKind::VonNeumann),
            other => Err(Error::Parse(format!("unknown entropy kind {other:?}"))),
        }
    }
}

/// A validated member of the entropy family.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntropyParams {
    SharmaMittal { q: f64, r: f64 },
    Renyi { q: f64 },
    Tsallis { q: f64 },
    VonNeumann,
}

fn check_q(q: f64) -> Result<()> {
    if !q.is_finite() || q <= 0.0 {
        return Err(Error::InvalidEntropyParams(format!("q must be positive, got {q}")));
    }
    if (q - 1.0).abs() < SINGULAR_TOL {
        return Err(Error::InvalidEntropyParams(format!(
            "q = {q} is on the singular line q = 1; use the von Neumann (or Renyi/Tsallis) limit instead"
        )));
    }
    Ok(())
}

fn check_r(r: f64) -> Result<()> {
    if !r.is_finite() {
        return Err(Error::InvalidEntropyParams(format!("r must be finite, got {r}")));
    }
    if (r - 1.0).abs() < SINGULAR_TOL {
        return Err(Error::InvalidEntropyParams(format!(
            "r = {r} is on the singular line r = 1; use the Renyi limit instead"
        )));
    }
    Ok(())
}

impl EntropyParams {
    pub fn sharma_mittal(q: f64, r: f64) -> Result<Self> {
        check_q(q)?;
        check_r(r)?;
        Ok(EntropyParams::SharmaMittal { q, r })
    }

    pub fn renyi(q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(EntropyParams::Renyi { q })
    }

    pub fn tsallis(q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(EntropyParams::Tsallis { q })
    }

    pub fn von_neumann() -> Self {
        EntropyParams::VonNeumann
    }

    /// Builds parameters from a kind plus optional `q`, `r`, as the CLI supplies them.
    pub fn from_parts(kind: EntropyKind, q: Option<f64>, r: Option<f64>) -> Result<Self> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| Error::InvalidEntropyParams(format!("{} requires {name}", kind.label())))
        };
        match kind {
            EntropyKind::SharmaMittal => Self::sharma_mittal(need(q, "q")?, need(r, "r")?),
            EntropyKind::Renyi => Self::renyi(need(q, "q")?),
            EntropyKind::Tsallis => Self::tsallis(need(q, "q")?),
            EntropyKind::VonNeumann => Ok(Self::VonNeumann),
        }
    }

    pub fn kind(&self) -> EntropyKind {
        match self {
            EntropyParams::SharmaMittal { .. } => EntropyKind::SharmaMittal,
            EntropyParams::Renyi { .. } => EntropyKind::Renyi,
            EntropyParams::Tsallis { .. } => EntropyKind::Tsallis,
            EntropyParams::VonNeumann => EntropyKind::VonNeumann,
        }
    }

    pub fn q(&self) -> Option<f64> {
        match *self {
            EntropyParams::SharmaMittal { q, .. } | EntropyParams::Renyi { q } | EntropyParams::Tsallis { q } => {
                Some(q)
            }
            EntropyParams::VonNeumann => None,
        }
    }

    pub fn r(&self) -> Option<f64> {
        match *self {
            EntropyParams::SharmaMittal { r, .. } => Some(r),
            _ => None,
        }
    }

    /// Re-runs the parameter checks; used on values built by struct literal.
    pub fn validate(&self) -> Result<()> {
        match *self {
            EntropyParams::SharmaMittal { q, r } => check_q(q).and(check_r(r)),
            EntropyParams::Renyi { q } | EntropyParams::Tsallis { q } => check_q(q),
            EntropyParams::VonNeumann => Ok(()),
        }
    }
}

impl fmt::Display for EntropyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropyParams::SharmaMittal { q, r } => write!(f, "sm(q={q},r={r})"),
            EntropyParams::Renyi { q } => write!(f, "renyi(q={q})"),
            EntropyParams::Tsallis { q } => write!(f, "tsallis(q={q})"),
            EntropyParams::VonNeumann => write!(f, "vn"),
        }
    }
}

pub fn sharma_mittal_entropy(p: &ProbabilityVector, q: f64, r: f64) -> Result<f64> {
    check_q(q)?;
    check_r(r)?;
    let s = p.power_sum(q);
    // exp_m1 keeps precision when (1-r)/(1-q) * ln s is small, i.e. near the limits.
    Ok((((1.0 - r) / (1.0 - q)) * s.ln()).exp_m1() / (1.0 - r))
}

pub fn renyi_entropy(p: &ProbabilityVector, q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(p.power_sum(q).log2() / (1.0 - q))
}

pub fn tsallis_entropy(p: &ProbabilityVector, q: f64) -> Result<f64> {
    check_q(q)?;
    Ok((p.power_sum(q) - 1.0) / (1.0 - q))
}

/// `-sum p log2 p`, with `0 log 0 = 0`.
pub fn shannon_entropy(p: &ProbabilityVector) -> f64 {
    -p.as_slice().iter().map(|&x| xlog2x(x)).sum::<f64>()
}

pub(crate) fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

pub fn entropy(p: &ProbabilityVector, params: &EntropyParams) -> Result<f64> {
    match *params {
        EntropyParams::SharmaMittal { q, r } => sharma_mittal_entropy(p, q, r),
        EntropyParams::Renyi { q } => renyi_entropy(p, q),
        EntropyParams::Tsallis { q } => tsallis_entropy(p, q),
        EntropyParams::VonNeumann => Ok(shannon_entropy(p)),
    }
}
