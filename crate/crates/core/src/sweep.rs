//! Point evaluation, CSV parameter sweeps, zero-discord roots and figure data.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::discord::{
    discord_bell, discord_isotropic, discord_pointer, discord_werner, isotropic_negativity, negativity,
    negativity_bell, werner_negativity, DiscordResult,
};
use crate::entropy::{EntropyKind, EntropyParams};
use crate::error::{Error, Result};
use crate::matrix::hermitian_eigenvalues;
use crate::states::{
    validate_bell_params, BellDiagonalParams, BellValidity, IsotropicParams, PointerAxis, PointerParams, StateSpec,
    WernerParams,
};

/// Grid points closer than this to `q = 1` or `r = 1` are skipped.
pub const SINGULAR_SKIP: f64 = 1e-6;
/// Largest accepted `|signed - (marginal + conditional - joint)|` in emitted rows.
pub const ROW_TOL: f64 = 1e-9;
/// Default bisection tolerance on the state parameter.
pub const DEFAULT_ROOT_TOL: f64 = 1e-8;
/// Largest `|D|` accepted at a root where the discord touches zero without
/// changing sign.
pub const TOUCH_TOL: f64 = 1e-9;

/// Everything reported for a single state and entropy.
#[derive(Clone, Debug, Serialize)]
pub struct PointReport {
    pub state: String,
    pub entropy: EntropyParams,
    #[serde(flatten)]
    pub discord: DiscordResult,
    pub negativity: f64,
    /// Spectrum of the state, descending.
    pub eigenvalues: Vec<f64>,
    pub validity: BellValidity,
}

pub fn eval_point(spec: &StateSpec, ent: &EntropyParams) -> Result<PointReport> {
    let resolved = spec.resolve()?;
    let discord = match spec {
        StateSpec::Werner(w) => discord_werner(w, ent)?,
        StateSpec::Isotropic(i) => discord_isotropic(i, ent)?,
        StateSpec::Pointer(p) => discord_pointer(p, ent)?,
        StateSpec::Bell(_) | StateSpec::File(_) => discord_bell(&resolved.bell, ent)?,
    };
    let [c1, c2, c3] = resolved.bell.coefficients();
    Ok(PointReport {
        state: spec.to_string(),
        entropy: *ent,
        discord,
        negativity: negativity(&resolved.matrix, (2, 2))?,
        eigenvalues: hermitian_eigenvalues(&resolved.matrix)?.into_vec(),
        validity: validate_bell_params(c1, c2, c3),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Werner,
    Isotropic,
    Pointer,
    Bell,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::Isotropic => "isotropic",
            Family::Pointer => "pointer",
            Family::Bell => "bell",
        }
    }

    /// The one-dimensional state parameter of the family, if it has one.
    pub fn state_param(self) -> Option<SweepParam> {
        match self {
            Family::Werner => Some(SweepParam::P),
            Family::Isotropic => Some(SweepParam::F),
            Family::Pointer => Some(SweepParam::C),
            Family::Bell => None,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "werner" => Ok(Family::Werner),
            "isotropic" => Ok(Family::Isotropic),
            "pointer" => Ok(Family::Pointer),
            "bell" => Ok(Family::Bell),
            other => Err(Error::Parse(format!("unknown state family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SweepParam {
    #[serde(rename = "p")]
    P,
    #[serde(rename = "F")]
    F,
    #[serde(rename = "C")]
    C,
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "r")]
    R,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::P => "p",
            SweepParam::F => "F",
            SweepParam::C => "C",
            SweepParam::Q => "q",
            SweepParam::R => "r",
        }
    }

    fn domain(self) -> (f64, f64) {
        match self {
            SweepParam::P | SweepParam::F => (0.0, 1.0),
            SweepParam::C => (-1.0, 1.0),
            SweepParam::Q => (f64::MIN_POSITIVE, f64::INFINITY),
            SweepParam::R => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(SweepParam::P),
            "F" => Ok(SweepParam::F),
            "C" => Ok(SweepParam::C),
            "q" => Ok(SweepParam::Q),
            "r" => Ok(SweepParam::R),
            other => Err(Error::Parse(format!("unknown sweep parameter {other:?} (expected p, F, C, q or r)"))),
        }
    }
}

/// One swept parameter: `steps` evenly spaced values from `lo` to `hi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl SweepAxis {
    pub fn new(param: SweepParam, lo: f64, hi: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidSweep(format!("{} needs at least 2 steps, got {steps}", param.name())));
        }
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::InvalidSweep(format!("{} range [{lo}, {hi}] is empty", param.name())));
        }
        let (min, max) = param.domain();
        if lo < min || hi > max {
            return Err(Error::InvalidSweep(format!(
                "{} range [{lo}, {hi}] leaves its domain [{min}, {max}]",
                param.name()
            )));
        }
        Ok(Self { param, lo, hi, steps })
    }

    /// Grid values, minus any within [`SINGULAR_SKIP`] of 1 for `q` and `r`.
    pub fn values(&self) -> Vec<f64> {
        let span = self.hi - self.lo;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.hi } else { self.lo + span * i as f64 / last })
            .filter(|v| !matches!(self.param, SweepParam::Q | SweepParam::R) || (v - 1.0).abs() > SINGULAR_SKIP)
            .collect()
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    /// `param:lo:hi:steps`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [param, lo, hi, steps] = parts[..] else {
            return Err(Error::Parse(format!("sweep {s:?} is not param:lo:hi:steps")));
        };
        let num = |v: &str| v.parse::<f64>().map_err(|e| Error::Parse(format!("bad number {v:?} in sweep {s:?}: {e}")));
        let steps = steps
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad step count {steps:?} in sweep {s:?}: {e}")))?;
        SweepAxis::new(param.parse()?, num(lo)?, num(hi)?, steps)
    }
}

/// Fixed values used for parameters that are not swept.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct FixedParams {
    /// `p`, `F` or `C` for the one-parameter families.
    pub state: Option<f64>,
    pub axis: PointerAxis,
    pub bell: Option<[f64; 3]>,
    pub q: Option<f64>,
    pub r: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSpec {
    pub family: Family,
    pub axes: Vec<SweepAxis>,
    pub kind: EntropyKind,
    pub fixed: FixedParams,
}

impl SweepSpec {
    pub fn new(family: Family, axes: Vec<SweepAxis>, kind: EntropyKind, fixed: FixedParams) -> Result<Self> {
        if axes.is_empty() || axes.len() > 2 {
            return Err(Error::InvalidSweep(format!("need 1 or 2 swept parameters, got {}", axes.len())));
        }
        if axes.len() == 2 && axes[0].param == axes[1].param {
            return Err(Error::InvalidSweep(format!("{} is swept twice", axes[0].param.name())));
        }
        for axis in &axes {
            let allowed = match axis.param {
                SweepParam::Q => kind != EntropyKind::VonNeumann,
                SweepParam::R => kind == EntropyKind::SharmaMittal,
                state => family.state_param() == Some(state),
            };
            if !allowed {
                return Err(Error::InvalidSweep(format!(
                    "{} cannot be swept for {family} with {} entropy",
                    axis.param.name(),
                    kind.label()
                )));
            }
        }
        let spec = Self { family, axes, kind, fixed };
        let swept = |p| spec.axes.iter().any(|a| a.param == p);
        if let Some(sp) = family.state_param() {
            if !swept(sp) && spec.fixed.state.is_none() {
                return Err(Error::InvalidSweep(format!("{family} needs a fixed {} when it is not swept", sp.name())));
            }
        }
        if family == Family::Bell {
            let [c1, c2, c3] =
                spec.fixed.bell.ok_or_else(|| Error::InvalidSweep("bell sweeps need fixed c1, c2, c3".into()))?;
            BellDiagonalParams::new(c1, c2, c3)?;
        }
        // Validate the fixed entropy parameters by building one point.
        let first: Vec<f64> = spec.axes.iter().map(|a| a.values()[0]).collect();
        spec.entropy_at(&first)?;
        Ok(spec)
    }

    fn value(&self, param: SweepParam, point: &[f64]) -> Option<f64> {
        self.axes.iter().position(|a| a.param == param).map(|i| point[i])
    }

    fn entropy_at(&self, point: &[f64]) -> Result<EntropyParams> {
        let q = self.value(SweepParam::Q, point).or(self.fixed.q);
        let r = self.value(SweepParam::R, point).or(self.fixed.r);
        EntropyParams::from_parts(self.kind, q, r)
    }

    fn state_at(&self, point: &[f64]) -> Result<StateSpec> {
        let x = self.family.state_param().and_then(|p| self.value(p, point)).or(self.fixed.state);
        let need = || x.ok_or_else(|| Error::InvalidSweep(format!("{} has no state parameter", self.family)));
        Ok(match self.family {
            Family::Werner => StateSpec::Werner(WernerParams::new(need()?)?),
            Family::Isotropic => StateSpec::Isotropic(IsotropicParams::new(need()?)?),
            Family::Pointer => StateSpec::Pointer(PointerParams::new(need()?, self.fixed.axis)?),
            Family::Bell => {
                let [c1, c2, c3] = self.fixed.bell.expect("checked in SweepSpec::new");
                StateSpec::Bell(BellDiagonalParams::new(c1, c2, c3)?)
            }
        })
    }

    /// Grid points in row-major order (the first axis varies slowest).
    pub fn grid(&self) -> Vec<Vec<f64>> {
        let first = self.axes[0].values();
        match self.axes.get(1) {
            None => first.into_iter().map(|v| vec![v]).collect(),
            Some(second) => {
                let second = second.values();
                first.iter().flat_map(|&a| second.iter().map(move |&b| vec![a, b])).collect()
            }
        }
    }

    pub fn header(&self) -> Vec<String> {
        self.axes
            .iter()
            .map(|a| a.param.name().to_string())
            .chain(["signed", "absolute", "marginal", "conditional", "joint", "negativity"].map(String::from))
            .collect()
    }
}

/// Discord of a family member with the family's own closed form.
fn family_discord(state: &StateSpec, ent: &EntropyParams) -> Result<(DiscordResult, f64)> {
    Ok(match state {
        StateSpec::Werner(w) => (discord_werner(w, ent)?, werner_negativity(w.p())),
        StateSpec::Isotropic(i) => (discord_isotropic(i, ent)?, isotropic_negativity(i.fidelity())),
        StateSpec::Pointer(p) => (discord_pointer(p, ent)?, 0.0),
        StateSpec::Bell(b) => (discord_bell(b, ent)?, negativity_bell(b)),
        StateSpec::File(_) => {
            let r = state.resolve()?;
            (discord_bell(&r.bell, ent)?, negativity(&r.matrix, (2, 2))?)
        }
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub point: Vec<f64>,
    pub discord: DiscordResult,
    pub negativity: f64,
}

/// Evaluates every grid point (in parallel) and returns rows in grid order.
pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.grid()
        .into_par_iter()
        .map(|point| {
            let ent = spec.entropy_at(&point)?;
            let (discord, negativity) = family_discord(&spec.state_at(&point)?, &ent)?;
            Ok(SweepRow { point, discord, negativity })
        })
        .collect()
}

fn fmt_value(v: f64) -> String {
    // Print -0 as 0 so identical values give identical bytes.
    format!("{:.11e}", if v == 0.0 { 0.0 } else { v })
}

fn write_line(out: &mut impl Write, fields: &[String]) -> std::io::Result<()> {
    writeln!(out, "{}", fields.join(","))
}

fn check_row(index: usize, d: &DiscordResult) -> Result<()> {
    let residual = d.residual();
    if residual.is_nan() || residual.abs() > ROW_TOL {
        return Err(Error::InconsistentRow { row: index, residual });
    }
    Ok(())
}

/// Writes the header and one line per row, rechecking each row's terms.
pub fn write_csv(spec: &SweepSpec, rows: &[SweepRow], out: &mut impl Write) -> Result<()> {
    let mut buf = Vec::new();
    write_line(&mut buf, &spec.header()).expect("write to memory");
    for (i, row) in rows.iter().enumerate() {
        check_row(i, &row.discord)?;
        let d = &row.discord;
        let fields: Vec<String> = row
            .point
            .iter()
            .chain(
                [d.signed, d.absolute, d.marginal_entropy, d.conditional_term, d.joint_entropy, row.negativity].iter(),
            )
            .map(|&v| fmt_value(v))
            .collect();
        write_line(&mut buf, &fields).expect("write to memory");
    }
    out.write_all(&buf).map_err(|e| Error::io("<csv output>", e))
}

pub fn sweep_to_path(spec: &SweepSpec, path: &Path) -> Result<usize> {
    let rows = sweep_rows(spec)?;
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(spec, &rows, &mut file).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })?;
    Ok(rows.len())
}

/// The four discords compared along a family's state parameter.
pub fn comparison_entropies(q: f64, r: f64) -> Result<[EntropyParams; 4]> {
    Ok([
        EntropyParams::sharma_mittal(q, r)?,
        EntropyParams::renyi(q)?,
        EntropyParams::tsallis(q)?,
        EntropyParams::VonNeumann,
    ])
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub x: f64,
    /// Signed discords in the order of [`comparison_entropies`].
    pub discords: [f64; 4],
    pub negativity: f64,
}

/// Signed SM, Rényi, Tsallis and von Neumann discords plus negativity along
/// the state parameter of a one-parameter family.
pub fn comparison_rows(family: Family, axis: &SweepAxis, q: f64, r: f64) -> Result<Vec<ComparisonRow>> {
    if family.state_param() != Some(axis.param) {
        return Err(Error::InvalidSweep(format!("{family} comparison must sweep its state parameter")));
    }
    let ents = comparison_entropies(q, r)?;
    let spec = SweepSpec::new(family, vec![*axis], EntropyKind::VonNeumann, FixedParams::default())?;
    axis.values()
        .into_par_iter()
        .map(|x| {
            let state = spec.state_at(&[x])?;
            let mut discords = [0.0; 4];
            let mut negativity = 0.0;
            for (slot, ent) in discords.iter_mut().zip(&ents) {
                let (d, n) = family_discord(&state, ent)?;
                check_row(0, &d)?;
                *slot = d.signed;
                negativity = n;
            }
            Ok(ComparisonRow { x, discords, negativity })
        })
        .collect()
}

pub fn write_comparison_csv(param: SweepParam, rows: &[ComparisonRow], out: &mut impl Write) -> Result<()> {
    let mut buf = Vec::new();
    let header = [param.name(), "sm", "renyi", "tsallis", "vn", "negativity"].map(String::from);
    write_line(&mut buf, &header).expect("write to memory");
    for row in rows {
        let fields: Vec<String> =
            std::iter::once(row.x).chain(row.discords).chain([row.negativity]).map(fmt_value).collect();
        write_line(&mut buf, &fields).expect("write to memory");
    }
    out.write_all(&buf).map_err(|e| Error::io("<csv output>", e))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootQuery {
    pub family: Family,
    pub entropy: EntropyParams,
    pub bracket: (f64, f64),
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootResult {
    pub root: f64,
    /// Signed discord at `root`.
    pub value: f64,
    /// Final bracket; `hi - lo <= tol`.
    pub bracket: (f64, f64),
    /// True when the discord touches zero without changing sign and the root
    /// was located by minimization instead of bisection.
    pub touching: bool,
}

impl RootQuery {
    pub fn new(family: Family, entropy: EntropyParams, bracket: (f64, f64), tol: f64) -> Result<Self> {
        let Some(param) = family.state_param() else {
            return Err(Error::InvalidArgument(format!("{family} has no one-dimensional state parameter")));
        };
        let (lo, hi) = bracket;
        SweepAxis::new(param, lo, hi, 2)?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
        }
        entropy.validate()?;
        Ok(Self { family, entropy, bracket, tol })
    }

    fn discord_at(&self, x: f64) -> Result<f64> {
        let spec = SweepSpec {
            family: self.family,
            axes: Vec::new(),
            kind: self.entropy.kind(),
            fixed: FixedParams { state: Some(x), ..FixedParams::default() },
        };
        Ok(family_discord(&spec.state_at(&[])?, &self.entropy)?.0.signed)
    }
}

/// Bisection on the signed discord over the family parameter.
///
/// Without a sign change the discord may still touch zero inside the bracket
/// (the von Neumann discord is non-negative and vanishes only on
/// zero-discord states). In that case a golden-section search minimizes the
/// discord, and the minimizer is returned if `|D| <= TOUCH_TOL` there.
pub fn find_zero_discord(query: &RootQuery) -> Result<RootResult> {
    let (mut lo, mut hi) = query.bracket;
    let (f_lo0, f_hi0) = (query.discord_at(lo)?, query.discord_at(hi)?);
    let (mut f_lo, f_hi) = (f_lo0, f_hi0);
    if f_lo == 0.0 {
        return Ok(RootResult { root: lo, value: 0.0, bracket: (lo, lo), touching: false });
    }
    if f_hi == 0.0 {
        return Ok(RootResult { root: hi, value: 0.0, bracket: (hi, hi), touching: false });
    }
    if f_lo.signum() != f_hi.signum() {
        while hi - lo > query.tol {
            let mid = 0.5 * (lo + hi);
            let f_mid = query.discord_at(mid)?;
            if f_mid == 0.0 {
                return Ok(RootResult { root: mid, value: 0.0, bracket: (mid, mid), touching: false });
            }
            if f_mid.signum() == f_lo.signum() {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        let root = 0.5 * (lo + hi);
        return Ok(RootResult { root, value: query.discord_at(root)?, bracket: (lo, hi), touching: false });
    }

    // Same sign at both ends: look for a touching zero of D (or of -D).
    let sign = f_lo.signum();
    let g = |x: f64| query.discord_at(x).map(|v| sign * v);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut gc, mut gd) = (g(c)?, g(d)?);
    while b - a > query.tol {
        if gc <= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - inv_phi * (b - a);
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + inv_phi * (b - a);
            gd = g(d)?;
        }
    }
    let root = 0.5 * (a + b);
    let value = query.discord_at(root)?;
    if value.abs() <= TOUCH_TOL {
        Ok(RootResult { root, value, bracket: (a, b), touching: true })
    } else {
        Err(Error::NoSignChange { lo: query.bracket.0, hi: query.bracket.1, f_lo: f_lo0, f_hi: f_hi0 })
    }
}

/// Parameters of one emitted figure file.
#[derive(Clone, Debug, Serialize)]
pub struct FigureEntry {
    pub file: String,
    pub family: Family,
    pub description: String,
    pub entropy: String,
    pub axes: Vec<SweepAxis>,
    pub fixed_q: Option<f64>,
    pub fixed_r: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FigureManifest {
    pub figures: Vec<FigureEntry>,
    pub notes: Vec<String>,
}

/// Lower and upper bounds of the `q` and `r` figure axes.
pub const FIGURE_ENTROPY_RANGE: (f64, f64) = (0.05, 5.0);
/// Grid points along `q` or `r` in surface figures (before skipping 1).
pub const FIGURE_ENTROPY_STEPS: usize = 100;
/// Grid points along the state parameter in surface figures.
pub const FIGURE_STATE_STEPS: usize = 51;
/// Grid points along the state parameter in comparison figures.
pub const FIGURE_COMPARE_STEPS: usize = 101;
/// Entropy parameters of the comparison figures.
pub const FIGURE_COMPARE_QR: (f64, f64) = (0.5, 0.4);
/// Fixed `r` (for the `q` sweep) and fixed `q` (for the `r` sweep) of the
/// Sharma-Mittal surfaces.
pub const FIGURE_FIXED: f64 = 5.0;

fn state_axis(family: Family, steps: usize) -> SweepAxis {
    let param = family.state_param().expect("figure families are one-parameter");
    let (lo, hi) = param.domain();
    SweepAxis::new(param, lo, hi, steps).expect("static figure axis")
}

/// Surface specs for one family: SM vs q, SM vs r, Rényi vs q, Tsallis vs q.
fn surface_specs(family: Family) -> Vec<(String, String, SweepSpec)> {
    let (lo, hi) = FIGURE_ENTROPY_RANGE;
    let x = state_axis(family, FIGURE_STATE_STEPS);
    let q_axis = SweepAxis::new(SweepParam::Q, lo, hi, FIGURE_ENTROPY_STEPS).expect("static axis");
    let r_axis = SweepAxis::new(SweepParam::R, lo, hi, FIGURE_ENTROPY_STEPS).expect("static axis");
    let name = family.name();
    let spec = |axis, kind, q, r| {
        SweepSpec::new(family, vec![x, axis], kind, FixedParams { q, r, ..FixedParams::default() })
            .expect("static figure spec")
    };
    vec![
        (
            format!("fig_{name}_sm_q.csv"),
            format!("Sharma-Mittal discord of the {name} family vs state parameter and q, r = {FIGURE_FIXED}"),
            spec(q_axis, EntropyKind::SharmaMittal, None, Some(FIGURE_FIXED)),
        ),
        (
            format!("fig_{name}_sm_r.csv"),
            format!("Sharma-Mittal discord of the {name} family vs state parameter and r, q = {FIGURE_FIXED}"),
            spec(r_axis, EntropyKind::SharmaMittal, Some(FIGURE_FIXED), None),
        ),
        (
            format!("fig_{name}_renyi.csv"),
            format!("Renyi discord of the {name} family vs state parameter and q"),
            spec(q_axis, EntropyKind::Renyi, None, None),
        ),
        (
            format!("fig_{name}_tsallis.csv"),
            format!("Tsallis discord of the {name} family vs state parameter and q"),
            spec(q_axis, EntropyKind::Tsallis, None, None),
        ),
    ]
}

pub const FIGURE_FAMILIES: [Family; 3] = [Family::Werner, Family::Isotropic, Family::Pointer];

fn write_file(dir: &Path, name: &str, write: impl FnOnce(&mut Vec<u8>) -> Result<()>) -> Result<PathBuf> {
    let path = dir.join(name);
    let mut buf = Vec::new();
    write(&mut buf)?;
    std::fs::write(&path, buf).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes the twelve surface CSVs, the three comparison CSVs and
/// `manifest.json` into `outdir`.
pub fn reproduce_figures(outdir: &Path) -> Result<FigureManifest> {
    std::fs::create_dir_all(outdir).map_err(|e| Error::io(outdir, e))?;
    let mut figures = Vec::new();
    for family in FIGURE_FAMILIES {
        for (file, description, spec) in surface_specs(family) {
            let rows = sweep_rows(&spec)?;
            write_file(outdir, &file, |buf| write_csv(&spec, &rows, buf))?;
            figures.push(FigureEntry {
                file,
                family,
                description,
                entropy: spec.kind.label().to_string(),
                axes: spec.axes.clone(),
                fixed_q: spec.fixed.q,
                fixed_r: spec.fixed.r,
            });
        }
    }
    let (q, r) = FIGURE_COMPARE_QR;
    for family in FIGURE_FAMILIES {
        let axis = state_axis(family, FIGURE_COMPARE_STEPS);
        let rows = comparison_rows(family, &axis, q, r)?;
        let file = format!("fig_compare_{}.csv", family.name());
        write_file(outdir, &file, |buf| write_comparison_csv(axis.param, &rows, buf))?;
        figures.push(FigureEntry {
            file,
            family,
            description: format!(
                "signed SM, Renyi, Tsallis and von Neumann discords and negativity of the {} family",
                family.name()
            ),
            entropy: "sm,renyi,tsallis,vn".into(),
            axes: vec![axis],
            fixed_q: Some(q),
            fixed_r: Some(r),
        });
    }
    let (lo, hi) = FIGURE_ENTROPY_RANGE;
    let manifest = FigureManifest {
        figures,
        notes: vec![
            format!(
                "q and r axes span [{lo}, {hi}] with {FIGURE_ENTROPY_STEPS} points; this range is a chosen default"
            ),
            format!("grid points within {SINGULAR_SKIP:e} of q = 1 or r = 1 are skipped"),
            "discord columns are signed; absolute values are in the surface CSVs".into(),
            "pointer states use axis 3".into(),
        ],
    };
    write_file(outdir, "manifest.json", |buf| {
        serde_json::to_writer_pretty(&mut *buf, &manifest)?;
        buf.push(b'\n');
        Ok(())
    })?;
    Ok(manifest)
}
