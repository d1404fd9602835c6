//! Longitude eigenvalue, the Schlaefli integrand `log|L|` and cone-manifold
//! volumes `Vol(alpha) = int_alpha^pi log|L| d omega` along the geometric branch.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::pair_in;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_kronrod, tanh_sinh, QuadEstimate};
use crate::riley::prop_w_matrix;
use crate::slrep::RepPoint;
use crate::solver::{geometric_branch_with, Branch, BranchPoint, SeedCandidate, TrackOptions};
use crate::words::{Family, KnotParam};

/// Below this angle the integrand is extrapolated rather than tracked.
pub const EXTENSION_START: f64 = 1e-4;
/// The integrand is set to zero this close to the crossing.
const CROSSING_GAP: f64 = 1e-10;
const SPOT_CHECKS: usize = 5;
const SPOT_TOL: f64 = 1e-7;
const MAX_PANELS: usize = 4000;
const MAX_LEVEL: u32 = 12;

/// Longitude eigenvalue `L(z, M)` of `J(k, 2n)`.
pub fn longitude_l(knot: &KnotParam, z: Complex64, m: Complex64) -> Result<Complex64> {
    if m.norm() == 0.0 {
        return Err(Error::ZeroMeridian);
    }
    let minv = m.inv();
    let (sm, sm1) = pair_in(i64::from(knot.family().m()), &z);
    let (u, v, twist) = match knot.family() {
        Family::Odd(_) => (sm, sm1, m.powi(-4 * knot.n())),
        Family::Even(_) => {
            let sm2 = z * sm1 - sm;
            (sm - sm1, sm1 - sm2, Complex64::new(1.0, 0.0))
        }
    };
    let num = minv * u - m * v;
    let den = m * u - minv * v;
    if den.norm() <= 1e-14 * ((m * u).norm() + (minv * v).norm()) {
        return Err(Error::DegenerateLongitude { z });
    }
    Ok(-twist * num / den)
}

/// The same eigenvalue as `-w~_12 / w_12` (times `M^-4n` for odd `k`), with
/// `w~` the relator matrix at `M^-1`.
pub fn longitude_from_w(knot: &KnotParam, z: Complex64, m: Complex64) -> Result<Complex64> {
    let w = prop_w_matrix(knot.k(), &RepPoint::new(m, z)?)?;
    let wt = prop_w_matrix(knot.k(), &RepPoint::new(m.inv(), z)?)?;
    if w.e12.norm() <= 1e-14 * w.max_abs() {
        return Err(Error::DegenerateLongitude { z });
    }
    let twist = match knot.family() {
        Family::Odd(_) => m.powi(-4 * knot.n()),
        Family::Even(_) => Complex64::new(1.0, 0.0),
    };
    Ok(-twist * wt.e12 / w.e12)
}

/// `log|L|` at a branch point: half the real length of the longitude.
pub fn integrand(knot: &KnotParam, bp: &BranchPoint) -> Result<f64> {
    let value = longitude_l(knot, bp.z, bp.m)?.norm().ln();
    if value < (1.0 - 1e-8f64).ln() {
        return Err(Error::NegativeIntegrand {
            omega: bp.omega,
            value,
        });
    }
    Ok(value.max(0.0))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadRule {
    /// Adaptive Gauss-Kronrod in `s`, with `omega = alpha_K - s^2`.
    #[default]
    GaussKronrod,
    /// Tanh-sinh directly in `omega`.
    TanhSinh,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeOptions {
    pub tol: f64,
    pub rule: QuadRule,
    pub track: TrackOptions,
}

impl Default for VolumeOptions {
    fn default() -> Self {
        VolumeOptions {
            tol: 1e-9,
            rule: QuadRule::GaussKronrod,
            track: TrackOptions::default(),
        }
    }
}

impl VolumeOptions {
    pub fn with_tol(tol: f64) -> Self {
        VolumeOptions {
            tol,
            ..VolumeOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VolumeResult {
    #[serde(flatten)]
    pub knot: KnotParam,
    pub alpha: f64,
    #[serde(rename = "alpha_K")]
    pub alpha_k: Option<f64>,
    pub volume: f64,
    pub quad_error: f64,
    pub candidates: Vec<SeedCandidate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// `Vol(X_{J(k,2n)}(alpha))` to absolute tolerance `tol`.
pub fn cone_volume(knot: &KnotParam, alpha: f64, tol: f64) -> Result<VolumeResult> {
    cone_volume_with(knot, alpha, &VolumeOptions::with_tol(tol))
}

pub fn cone_volume_with(
    knot: &KnotParam,
    alpha: f64,
    opts: &VolumeOptions,
) -> Result<VolumeResult> {
    let mut v = volume_curve_with(knot, &[alpha], opts)?;
    Ok(v.pop().expect("one alpha"))
}

/// Volumes at sorted `alphas`, sharing one branch continuation.
pub fn volume_curve(knot: &KnotParam, alphas: &[f64], tol: f64) -> Result<Vec<VolumeResult>> {
    volume_curve_with(knot, alphas, &VolumeOptions::with_tol(tol))
}

pub fn volume_curve_with(
    knot: &KnotParam,
    alphas: &[f64],
    opts: &VolumeOptions,
) -> Result<Vec<VolumeResult>> {
    validate(alphas, opts.tol)?;
    let branch = geometric_branch_with(knot, alphas[0].clamp(EXTENSION_START, 0.1), &opts.track)?;
    let upper = branch.alpha_k.unwrap_or(PI);
    let f = |omega: f64| -> Result<f64> {
        if omega >= upper - CROSSING_GAP {
            return Ok(0.0);
        }
        integrand(knot, &branch.root_at(omega)?)
    };

    // breakpoints b_0 <= ... <= b_{N-1} <= upper; segment i is [b_i, b_{i+1}]
    let mut cuts: Vec<f64> = alphas
        .iter()
        .map(|&a| a.max(EXTENSION_START).min(upper))
        .collect();
    cuts.push(upper);
    let seg_tol = opts.tol / (alphas.len() + 1) as f64;
    let mut segments = Vec::with_capacity(alphas.len());
    for w in cuts.windows(2) {
        segments.push(integrate(&f, w[0], w[1], upper, seg_tol, opts.rule)?);
    }
    let extension = if alphas[0] < EXTENSION_START {
        Some(Extension::new(&f)?)
    } else {
        None
    };

    let warnings = spot_check(knot, &branch);
    let mut out = Vec::with_capacity(alphas.len());
    let (mut value, mut error) = (0.0, 0.0);
    let mut converged = true;
    let mut tail: Vec<(f64, f64)> = Vec::with_capacity(alphas.len());
    for seg in segments.iter().rev() {
        value += seg.value;
        error += seg.error;
        converged &= seg.converged;
        tail.push((value, error));
    }
    tail.reverse();
    for (&alpha, &(mut v, mut e)) in alphas.iter().zip(&tail) {
        if let (Some(ext), true) = (&extension, alpha < EXTENSION_START) {
            let (ev, ee) = ext.integral(alpha);
            v += ev;
            e += ee;
        }
        out.push(VolumeResult {
            knot: *knot,
            alpha,
            alpha_k: branch.alpha_k,
            volume: v.max(0.0),
            quad_error: e,
            candidates: branch.candidates.clone(),
            warnings: warnings.clone(),
        });
    }
    if !converged || out[0].quad_error > opts.tol {
        return Err(Error::QuadratureNotConverged {
            estimate: out[0].volume,
            error: out[0].quad_error,
        });
    }
    Ok(out)
}

fn validate(alphas: &[f64], tol: f64) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::InvalidArgument("no cone angles given".into()));
    }
    if let Some(a) = alphas.iter().find(|a| !(**a >= 0.0 && **a <= PI)) {
        return Err(Error::InvalidArgument(format!(
            "cone angle {a} outside [0, pi]"
        )));
    }
    if alphas.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("cone angles must be sorted".into()));
    }
    if !(tol >= 1e-12 && tol.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be at least 1e-12, got {tol}"
        )));
    }
    Ok(())
}

fn integrate<F>(f: &F, a: f64, b: f64, upper: f64, tol: f64, rule: QuadRule) -> Result<QuadEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    if b <= a {
        return Ok(QuadEstimate::zero());
    }
    match rule {
        QuadRule::GaussKronrod if upper < PI || b < upper => {
            // omega = upper - s^2 removes the square-root onset at the crossing
            let (s0, s1) = ((upper - b).max(0.0).sqrt(), (upper - a).sqrt());
            gauss_kronrod(
                |s: f64| Ok(2.0 * s * f(upper - s * s)?),
                s0,
                s1,
                tol,
                MAX_PANELS,
            )
        }
        QuadRule::GaussKronrod => gauss_kronrod(f, a, b, tol, MAX_PANELS),
        QuadRule::TanhSinh => tanh_sinh(f, a, b, tol, MAX_LEVEL),
    }
}

/// Polynomial extrapolation of the integrand from `h, 2h, 3h` toward 0.
struct Extension {
    f: [f64; 3],
}

impl Extension {
    fn new<F: Fn(f64) -> Result<f64>>(f: &F) -> Result<Self> {
        let h = EXTENSION_START;
        Ok(Extension {
            f: [f(h)?, f(2.0 * h)?, f(3.0 * h)?],
        })
    }

    fn linear(&self, x: f64) -> f64 {
        let h = EXTENSION_START;
        self.f[0] + (self.f[1] - self.f[0]) * (x - h) / h
    }

    fn quadratic(&self, x: f64) -> f64 {
        let h = EXTENSION_START;
        let (t1, t2, t3) = (x - h, x - 2.0 * h, x - 3.0 * h);
        let d = 2.0 * h * h;
        self.f[0] * t2 * t3 / d - self.f[1] * t1 * t3 / (h * h) + self.f[2] * t1 * t2 / d
    }

    /// Integral over `[alpha, h]` and its error estimate.
    fn integral(&self, alpha: f64) -> (f64, f64) {
        let h = EXTENSION_START;
        let simpson = |g: &dyn Fn(f64) -> f64| {
            (h - alpha) / 6.0 * (g(alpha) + 4.0 * g(0.5 * (alpha + h)) + g(h))
        };
        let q = simpson(&|x| self.quadratic(x));
        let l = simpson(&|x| self.linear(x));
        (q, (q - l).abs())
    }
}

/// Checks that the longitude has unit modulus past the crossing.
fn spot_check(knot: &KnotParam, branch: &Branch) -> Vec<String> {
    let Some(ak) = branch.alpha_k else {
        return Vec::new();
    };
    let mut warnings = Vec::new();
    for j in 0..SPOT_CHECKS {
        let omega = ak + (PI - ak) * (j as f64 + 0.5) / SPOT_CHECKS as f64;
        let msg = match branch.root_at(omega) {
            Ok(bp) if bp.log_abs_l().abs() < SPOT_TOL => continue,
            Ok(bp) => format!(
                "log|L| = {:e} at omega = {omega} above alpha_K",
                bp.log_abs_l()
            ),
            Err(e) => format!("spot check at omega = {omega} failed: {e}"),
        };
        log::warn!("{knot}: {msg}");
        warnings.push(msg);
    }
    warnings
}
