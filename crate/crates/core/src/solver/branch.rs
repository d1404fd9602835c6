use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::pair_in;
use crate::error::{Error, Result};
use crate::riley::PhiForm;
use crate::slrep::RepPoint;
use crate::solver::roots::{poly_roots_from, refine_roots};
use crate::volume::longitude_l;
use crate::words::{Family, KnotParam};

pub const DEFAULT_STEP: f64 = 0.005;
pub const DEFAULT_MIN_STEP: f64 = 1e-6;

/// Largest seed angle; seeds sit at `min(alpha, SEED_MAX)`.
const SEED_MAX: f64 = 0.1;
/// Smallest seed angle; requests below it are continued by `root_at`.
const SEED_MIN: f64 = 1e-4;
/// A root is treated as real when `|Im z| <= REAL_TOL * max(1, |z|)`.
const REAL_TOL: f64 = 1e-7;
/// Largest `|Im z| / max(1, |z|)` of the last complex point for a bracket to
/// count as a crossing of the real axis.
const NEAR_REAL_TOL: f64 = 1e-5;
/// Width of the final bracket around the Euclidean angle.
const CROSSING_TOL: f64 = 1e-12;
const REFINE_SWEEPS: usize = 8;
/// How far past the failed bracket a directly solved crossing may lie.
const DOUBLE_ROOT_REACH: f64 = 0.01;
/// Search radius for real roots, relative to `max(1, |x|)`.
const REAL_REACH: f64 = 0.25;
/// Relative `|Im z|` below which each step also looks for a crossing directly.
const APPROACH_TOL: f64 = 1e-2;
/// Angles this close above the crossing evaluate at the double root.
const UNRESOLVED_SPLIT: f64 = 1e-8;

/// Continuation controls.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackOptions {
    /// Largest step in the cone angle.
    pub step: f64,
    /// Halving below this raises [`Error::ContinuationAmbiguous`].
    pub min_step: f64,
    /// Construction of the Riley polynomial used for the coefficients.
    pub form: PhiForm,
}

impl Default for TrackOptions {
    fn default() -> Self {
        TrackOptions {
            step: DEFAULT_STEP,
            min_step: DEFAULT_MIN_STEP,
            form: PhiForm::Closed,
        }
    }
}

impl TrackOptions {
    pub fn with_step(step: f64) -> Self {
        TrackOptions {
            step,
            ..TrackOptions::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if !(self.min_step > 0.0 && self.min_step <= self.step) {
            return Err(Error::InvalidArgument(format!(
                "min_step must lie in (0, step], got {}",
                self.min_step
            )));
        }
        Ok(())
    }
}

/// One point of the tracked geometric root.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchPoint {
    pub omega: f64,
    /// `M = exp(i omega / 2)`.
    pub m: Complex64,
    pub z: Complex64,
    pub imcond: f64,
    /// Longitude eigenvalue `L(z, M)`.
    pub longitude: Complex64,
}

impl BranchPoint {
    pub fn log_abs_l(&self) -> f64 {
        self.longitude.norm().ln()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CandidateStatus {
    Selected,
    Rejected,
    Failed { reason: String },
}

/// A root admitted at the seed angle and what became of it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedCandidate {
    pub z: Complex64,
    pub imcond: f64,
    /// Trapezoid estimate of the volume integral along this candidate's path.
    pub volume_estimate: Option<f64>,
    pub alpha_k: Option<f64>,
    #[serde(flatten)]
    pub status: CandidateStatus,
}

/// The geometric root continued from the seed angle to `pi`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub knot: KnotParam,
    /// Strictly increasing in `omega`.
    pub points: Vec<BranchPoint>,
    /// Angle at which the root becomes real, if it does before `pi`.
    pub alpha_k: Option<f64>,
    /// Always true for a tracked branch; the non-hyperbolic case is an error.
    pub hyperbolic: bool,
    pub candidates: Vec<SeedCandidate>,
    pub options: TrackOptions,
    #[serde(skip)]
    roots: Vec<Vec<Complex64>>,
}

/// `Im(S_m conj S_{m-1})` (odd `k`) or `Im((S_m - S_{m-1}) conj(S_{m-1} - S_{m-2}))` (even `k`).
pub fn imcond(family: Family, z: Complex64) -> f64 {
    let (u, v) = imcond_factors(family, z);
    (u * v.conj()).im
}

fn imcond_factors(family: Family, z: Complex64) -> (Complex64, Complex64) {
    let (sm, sm1) = pair_in(i64::from(family.m()), &z);
    match family {
        Family::Odd(_) => (sm, sm1),
        Family::Even(_) => {
            let sm2 = z * sm1 - sm;
            (sm - sm1, sm1 - sm2)
        }
    }
}

fn is_real(z: Complex64) -> bool {
    z.im.abs() <= REAL_TOL * z.norm().max(1.0)
}

/// Strict half of a conjugate pair: `imcond < 0`, ties broken by `Im z < 0`.
fn is_admissible(family: Family, z: Complex64) -> bool {
    if is_real(z) {
        return false;
    }
    let (u, v) = imcond_factors(family, z);
    let c = (u * v.conj()).im;
    let tie = 1e-12 * u.norm() * v.norm();
    if c.abs() <= tie {
        z.im < 0.0
    } else {
        c < 0.0
    }
}

/// Nonreal roots satisfying the branch inequality `imcond <= 0`, keeping one
/// member of each conjugate pair when `imcond` vanishes.
pub fn admissible_roots(family: Family, roots: &[Complex64]) -> Vec<Complex64> {
    roots
        .iter()
        .copied()
        .filter(|&z| is_admissible(family, z))
        .collect()
}

/// Roots the tracked path may move to: admissible nonreal roots and real
/// roots. The polynomial has real coefficients on `|M| = 1`, so roots within
/// the realness tolerance are placed on the real axis.
fn candidates(family: Family, roots: &[Complex64]) -> Vec<Complex64> {
    roots
        .iter()
        .filter_map(|&z| {
            if is_real(z) {
                Some(Complex64::new(z.re, 0.0))
            } else {
                is_admissible(family, z).then_some(z)
            }
        })
        .collect()
}

fn meridian(omega: f64) -> Complex64 {
    Complex64::from_polar(1.0, 0.5 * omega)
}

fn roots_at(
    knot: &KnotParam,
    form: PhiForm,
    omega: f64,
    warm: Option<&[Complex64]>,
) -> Result<Vec<Complex64>> {
    let (k, n) = (knot.k(), i64::from(knot.n()));
    let m = meridian(omega);
    let p = form.zpoly(k, n, m)?;
    let mut roots = poly_roots_from(&p, warm)?;
    // the coefficient basis loses accuracy inside root clusters; correct
    // against the directly evaluated polynomial
    let direct = |z: Complex64| match RepPoint::new(m, z) {
        Ok(pt) => form.eval_with_derivative(k, n, &pt),
        Err(_) => p.eval_with_derivative(z),
    };
    refine_roots(direct, &mut roots, REFINE_SWEEPS);
    Ok(roots)
}

/// Newton steps on the directly evaluated `Phi`, which is better conditioned
/// than the coefficient form when roots cluster. Real roots stay real.
fn refine(knot: &KnotParam, form: PhiForm, omega: f64, z: Complex64) -> Result<Complex64> {
    let (k, n) = (knot.k(), i64::from(knot.n()));
    let m = meridian(omega);
    let value = |z: Complex64| -> Result<(Complex64, Complex64)> {
        Ok(form.eval_with_derivative(k, n, &RepPoint::new(m, z)?))
    };
    let real = z.im == 0.0;
    let (mut z, (mut v, mut d)) = (z, value(z)?);
    for _ in 0..4 {
        if v.norm() == 0.0 || d.norm() == 0.0 {
            break;
        }
        let mut next = z - v / d;
        if real {
            next.im = 0.0;
        }
        let (vn, dn) = value(next)?;
        if vn.norm() >= v.norm() {
            break;
        }
        z = next;
        v = vn;
        d = dn;
    }
    Ok(z)
}

fn make_point(knot: &KnotParam, form: PhiForm, omega: f64, z: Complex64) -> Result<BranchPoint> {
    let z = refine(knot, form, omega, z)?;
    let m = meridian(omega);
    Ok(BranchPoint {
        omega,
        m,
        z,
        imcond: imcond(knot.family(), z),
        longitude: longitude_l(knot, z, m)?,
    })
}

/// Nearest candidate to `target` and whether it is unambiguous:
/// closer to `target` than half its distance to every other candidate.
fn nearest(cands: &[Complex64], target: Complex64) -> Option<(Complex64, bool)> {
    let (i, c) = cands
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| (a.1 - target).norm().total_cmp(&(b.1 - target).norm()))?;
    let sep = cands
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, o)| (o - c).norm())
        .fold(f64::INFINITY, f64::min);
    Some((c, (c - target).norm() < 0.5 * sep))
}

struct Trace {
    points: Vec<BranchPoint>,
    roots: Vec<Vec<Complex64>>,
    alpha_k: Option<f64>,
}

impl Trace {
    fn push(&mut self, p: BranchPoint, roots: Vec<Complex64>) {
        self.points.push(p);
        self.roots.push(roots);
    }

    fn last(&self) -> &BranchPoint {
        self.points.last().expect("trace is seeded")
    }

    /// Drops trailing complex points whose imaginary part is at the rounding
    /// level of the merging pair: there the root is indistinguishable from
    /// the real double root.
    fn drop_noisy_tail(&mut self) {
        while self.points.len() > 1 {
            let z = self.last().z;
            if z.im.abs() > NEAR_REAL_TOL * z.norm().max(1.0) {
                break;
            }
            self.points.pop();
            self.roots.pop();
        }
    }

    /// Trapezoid rule for the integral of `log|L|` below the crossing.
    fn volume_estimate(&self) -> f64 {
        let cut = self.alpha_k.unwrap_or(f64::INFINITY);
        self.points
            .windows(2)
            .filter(|w| w[1].omega <= cut)
            .map(|w| 0.5 * (w[1].omega - w[0].omega) * (w[0].log_abs_l() + w[1].log_abs_l()))
            .sum()
    }
}

struct Tracker<'a> {
    knot: &'a KnotParam,
    opts: &'a TrackOptions,
    family: Family,
}

impl Tracker<'_> {
    fn roots(&self, omega: f64, warm: &[Complex64]) -> Result<Vec<Complex64>> {
        roots_at(self.knot, self.opts.form, omega, Some(warm))
    }

    fn trace(&self, omega0: f64, z0: Complex64, roots0: Vec<Complex64>) -> Result<Trace> {
        let mut tr = Trace {
            points: Vec::new(),
            roots: Vec::new(),
            alpha_k: None,
        };
        tr.push(make_point(self.knot, self.opts.form, omega0, z0)?, roots0);
        let mut h = self.opts.step;
        let mut slope = Complex64::new(0.0, 0.0);

        while tr.last().omega < PI {
            let (omega, z) = (tr.last().omega, tr.last().z);
            let target = (omega + h).min(PI);
            let dh = target - omega;
            let pred = z + slope * dh;
            let accepted = if tr.alpha_k.is_some() {
                real_root_near(self.knot, self.opts.form, target, pred.re)?
                    .map(|x| (Complex64::new(x, 0.0), Vec::new()))
            } else {
                let roots = self.roots(target, tr.roots.last().expect("seeded"))?;
                let cands = candidates(self.family, &roots);
                match nearest(&cands, pred) {
                    Some((c, true)) if !is_real(c) => {
                        // close to the axis the computed roots are noisy;
                        // check for a merge inside this step directly
                        let scale = z.norm().max(1.0);
                        if c.im.abs() < APPROACH_TOL * scale || pred.im * z.im <= 0.0 {
                            if let Some((alpha_k, x0)) = self.solve_crossing(&mut tr, target, 0.0) {
                                slope = self.enter_real_phase(&mut tr, alpha_k, x0)?;
                                h = self.opts.step;
                                continue;
                            }
                        }
                        Some((c, roots))
                    }
                    Some((c, _)) if is_real(c) => {
                        if let Some((alpha_k, x0)) = self.crossing(&mut tr, target)? {
                            slope = self.enter_real_phase(&mut tr, alpha_k, x0)?;
                            h = self.opts.step;
                            continue;
                        }
                        None
                    }
                    _ => None,
                }
            };
            match accepted {
                Some((c, roots)) => {
                    slope = (c - z) / dh;
                    tr.push(make_point(self.knot, self.opts.form, target, c)?, roots);
                    h = (2.0 * h).min(self.opts.step);
                }
                None => {
                    h *= 0.5;
                    if tr.alpha_k.is_none() && h < self.opts.min_step {
                        // near the axis the conjugate pair can both look
                        // admissible, so resolve the merge directly
                        if let Some((alpha_k, x0)) =
                            self.solve_crossing(&mut tr, target, DOUBLE_ROOT_REACH)
                        {
                            slope = self.enter_real_phase(&mut tr, alpha_k, x0)?;
                            h = self.opts.step;
                            continue;
                        }
                    }
                    if h < self.opts.min_step {
                        return Err(Error::ContinuationAmbiguous {
                            omega: target,
                            step: h,
                        });
                    }
                }
            }
        }
        Ok(tr)
    }

    /// The tracked complex root is still present at `omega`: it is the
    /// unambiguous nearest candidate to `z_ref` and is nonreal.
    fn still_complex(
        &self,
        omega: f64,
        z_ref: Complex64,
        warm: &[Complex64],
    ) -> Result<Option<(Complex64, Vec<Complex64>)>> {
        let roots = self.roots(omega, warm)?;
        let cands = candidates(self.family, &roots);
        Ok(match nearest(&cands, z_ref) {
            Some((c, true)) if !is_real(c) => Some((c, roots)),
            _ => None,
        })
    }

    /// Bisects for the angle at which the tracked root turns real, between
    /// the last accepted point and `hi`. Returns `None` when `hi` is not past
    /// a crossing (the step should be halved instead).
    fn crossing(&self, tr: &mut Trace, mut hi: f64) -> Result<Option<(f64, f64)>> {
        let warm = tr.roots.last().expect("seeded").clone();
        if self.still_complex(hi, tr.last().z, &warm)?.is_some() {
            return Ok(None);
        }
        let mut lo = tr.last().omega;
        while hi - lo > CROSSING_TOL {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let warm = tr.roots.last().expect("seeded").clone();
            match self.still_complex(mid, tr.last().z, &warm)? {
                Some((c, roots)) => {
                    tr.push(make_point(self.knot, self.opts.form, mid, c)?, roots);
                    lo = mid;
                }
                None => hi = mid,
            }
        }
        // The last complex point must sit on the real axis up to the
        // rounding noise of a near-double root; otherwise the bracket closed
        // on a collision with another root rather than a crossing.
        let z_ref = tr.last().z;
        if z_ref.im.abs() <= NEAR_REAL_TOL * z_ref.norm().max(1.0) {
            tr.drop_noisy_tail();
            return Ok(Some((0.5 * (lo + hi), z_ref.re)));
        }
        // Inside a root cluster the computed roots are too noisy to resolve
        // the merge; solve for the real double root directly.
        match self.solve_crossing(tr, hi, DOUBLE_ROOT_REACH) {
            Some(found) => Ok(Some(found)),
            None => Err(Error::ContinuationAmbiguous {
                omega: hi,
                step: hi - lo,
            }),
        }
    }

    /// Crossing from the double-root equations, started at the last
    /// accepted point. It must lie before `hi + reach` and close to that
    /// point's real part; points past it are dropped.
    fn solve_crossing(&self, tr: &mut Trace, hi: f64, reach: f64) -> Option<(f64, f64)> {
        let last = tr.last();
        let z_ref = last.z;
        let (x, alpha_k) = self.double_root(z_ref.re, last.omega)?;
        let first = tr.points.first().expect("seeded").omega;
        if !(alpha_k > first && alpha_k <= hi + reach)
            || (x - z_ref.re).abs() > 2.0 * z_ref.im.abs() + 1e-6
        {
            return None;
        }
        while tr.points.len() > 1 && tr.last().omega >= alpha_k {
            tr.points.pop();
            tr.roots.pop();
        }
        tr.drop_noisy_tail();
        Some((alpha_k, x))
    }

    /// Newton's method for a real `x` and angle `omega` with
    /// `Phi = dPhi/dz = 0`, where the pair of conjugate roots meets.
    fn double_root(&self, mut x: f64, mut omega: f64) -> Option<(f64, f64)> {
        let (k, n) = (self.knot.k(), i64::from(self.knot.n()));
        let form = self.opts.form;
        let f = |x: f64, omega: f64| -> Option<(f64, f64)> {
            let pt = RepPoint::new(meridian(omega), Complex64::new(x, 0.0)).ok()?;
            let (v, d) = form.eval_with_derivative(k, n, &pt);
            Some((v.re, d.re))
        };
        for _ in 0..40 {
            let (f1, f2) = f(x, omega)?;
            let hx = 1e-6 * x.abs().max(1.0);
            let hw = 1e-6;
            let (_, f2xp) = f(x + hx, omega)?;
            let (_, f2xm) = f(x - hx, omega)?;
            let (f1wp, f2wp) = f(x, omega + hw)?;
            let (f1wm, f2wm) = f(x, omega - hw)?;
            let (a, b) = (f2, (f1wp - f1wm) / (2.0 * hw));
            let (c, d) = ((f2xp - f2xm) / (2.0 * hx), (f2wp - f2wm) / (2.0 * hw));
            let det = a * d - b * c;
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let dx = (d * f1 - b * f2) / det;
            let dw = (a * f2 - c * f1) / det;
            x -= dx;
            omega -= dw;
            if !(omega > 0.0 && omega < PI) {
                return None;
            }
            if dx.abs() <= 1e-14 * x.abs().max(1.0) && dw.abs() <= 1e-14 {
                return Some((x, omega));
            }
        }
        None
    }

    /// Records the crossing at the double root `x0` and moves onto the
    /// larger of the two real roots born there. Returns the initial slope
    /// for the predictor.
    fn enter_real_phase(&self, tr: &mut Trace, alpha_k: f64, x0: f64) -> Result<Complex64> {
        tr.alpha_k = Some(alpha_k);
        let remaining = PI - alpha_k;
        if remaining <= CROSSING_TOL {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let reach = REAL_REACH * x0.abs().max(1.0);
        let mut h = self.opts.step.min(remaining);
        loop {
            let omega = alpha_k + h;
            let f = |x: f64| phi_real(self.knot, self.opts.form, omega, x);
            let left = sign_change(&f, x0, -1.0, reach)?;
            let right = sign_change(&f, x0, 1.0, reach)?;
            if let (Some(l), Some(r)) = (left, right) {
                let (dl, dr) = (x0 - l, r - x0);
                // the pair splits symmetrically to leading order
                if dl > 0.0 && dr > 0.0 && (dl - dr).abs() < 0.5 * (dl + dr) {
                    let c = Complex64::new(r, 0.0);
                    tr.push(make_point(self.knot, self.opts.form, omega, c)?, Vec::new());
                    // square-root onset: dx/domega = (x - x0) / (2 h)
                    return Ok(Complex64::new(dr / (2.0 * h), 0.0));
                }
            }
            h *= 0.5;
            if h < self.opts.min_step {
                return Err(Error::ContinuationAmbiguous { omega, step: h });
            }
        }
    }
}

/// `Phi` at real `x`, which is real on the unit circle `|M| = 1`.
fn phi_real(knot: &KnotParam, form: PhiForm, omega: f64, x: f64) -> Result<f64> {
    let pt = RepPoint::new(meridian(omega), Complex64::new(x, 0.0))?;
    Ok(form.eval(knot.k(), i64::from(knot.n()), &pt).re)
}

/// First sign change of `f` going from `from` in direction `dir`, with
/// geometrically growing steps out to `reach`, refined by bisection.
fn sign_change<F>(f: &F, from: f64, dir: f64, reach: f64) -> Result<Option<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let f0 = f(from)?;
    if f0 == 0.0 {
        return Ok(Some(from));
    }
    let mut t = 1e-12 * from.abs().max(1.0);
    let (mut px, mut pf) = (from, f0);
    while t <= reach {
        let x = from + dir * t;
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(Some(x));
        }
        if (fx > 0.0) != (pf > 0.0) {
            let (mut a, mut fa, mut b) = (px, pf, x);
            loop {
                let m = 0.5 * (a + b);
                if m == a || m == b {
                    break;
                }
                let fm = f(m)?;
                if fm == 0.0 {
                    return Ok(Some(m));
                }
                if (fm > 0.0) == (fa > 0.0) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            return Ok(Some(0.5 * (a + b)));
        }
        px = x;
        pf = fx;
        t *= 1.5;
    }
    Ok(None)
}

/// The real root nearest `pred`, if it is closer than half its distance to
/// the nearest real root on the other side.
fn real_root_near(knot: &KnotParam, form: PhiForm, omega: f64, pred: f64) -> Result<Option<f64>> {
    let f = |x: f64| phi_real(knot, form, omega, x);
    let reach = REAL_REACH * pred.abs().max(1.0);
    let left = sign_change(&f, pred, -1.0, reach)?;
    let right = sign_change(&f, pred, 1.0, reach)?;
    Ok(match (left, right) {
        (Some(l), Some(r)) => {
            if l == r {
                Some(l)
            } else {
                let (c, other) = if pred - l <= r - pred { (l, r) } else { (r, l) };
                ((c - pred).abs() < 0.5 * (other - c).abs()).then_some(c)
            }
        }
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    })
}

/// Tracks the geometric root of `J(k, 2n)` over `[min(alpha, 0.1), pi]`.
pub fn geometric_branch(knot: &KnotParam, alpha: f64, step: f64) -> Result<Branch> {
    geometric_branch_with(knot, alpha, &TrackOptions::with_step(step))
}

/// [`geometric_branch`] with full control over the continuation.
///
/// Every admissible nonreal root at the seed is continued; the one whose path
/// gives the largest volume is selected and the others are reported in
/// [`Branch::candidates`].
pub fn geometric_branch_with(knot: &KnotParam, alpha: f64, opts: &TrackOptions) -> Result<Branch> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::InvalidArgument(format!(
            "alpha must lie in (0, pi), got {alpha}"
        )));
    }
    opts.validate()?;
    let family = knot.family();
    let omega0 = alpha.clamp(SEED_MIN, SEED_MAX);
    let roots0 = roots_at(knot, opts.form, omega0, None)?;
    let seeds = admissible_roots(family, &roots0);
    if seeds.is_empty() {
        return Err(Error::NonHyperbolic {
            k: knot.k(),
            n: knot.n(),
        });
    }
    let tracker = Tracker { knot, opts, family };
    let mut candidates = Vec::with_capacity(seeds.len());
    let mut best: Option<(usize, Trace, f64)> = None;
    let mut first_error = None;
    for (i, &z0) in seeds.iter().enumerate() {
        let mut cand = SeedCandidate {
            z: z0,
            imcond: imcond(family, z0),
            volume_estimate: None,
            alpha_k: None,
            status: CandidateStatus::Rejected,
        };
        match tracker.trace(omega0, z0, roots0.clone()) {
            Ok(tr) => {
                let vol = tr.volume_estimate();
                cand.volume_estimate = Some(vol);
                cand.alpha_k = tr.alpha_k;
                if best.as_ref().is_none_or(|b| vol > b.2) {
                    best = Some((i, tr, vol));
                }
            }
            Err(e) => {
                log::debug!("{knot}: seed candidate {z0} failed: {e}");
                cand.status = CandidateStatus::Failed {
                    reason: e.to_string(),
                };
                first_error.get_or_insert(e);
            }
        }
        candidates.push(cand);
    }
    let Some((sel, tr, _)) = best else {
        return Err(first_error.expect("at least one candidate"));
    };
    candidates[sel].status = CandidateStatus::Selected;
    if let Some(ak) = tr.alpha_k {
        if ak < 2.0 * PI / 3.0 - 0.05 {
            log::warn!("{knot}: crossing at {ak} lies below the expected range [2pi/3, pi)");
        }
    }
    Ok(Branch {
        knot: *knot,
        points: tr.points,
        alpha_k: tr.alpha_k,
        hyperbolic: true,
        candidates,
        options: *opts,
        roots: tr.roots,
    })
}

/// Angle at which the geometric root of `J(k, 2n)` becomes real.
pub fn find_alpha_k(knot: &KnotParam) -> Result<f64> {
    geometric_branch(knot, SEED_MAX, DEFAULT_STEP)?
        .alpha_k
        .ok_or(Error::AlphaKNotFound)
}

impl Branch {
    /// Smallest tracked angle.
    pub fn seed_omega(&self) -> f64 {
        self.points[0].omega
    }

    /// The geometric root at an arbitrary angle in `(0, pi]`, recomputed from
    /// the polynomial and matched to the interpolated branch. Angles below
    /// the seed are matched against the seed point.
    pub fn root_at(&self, omega: f64) -> Result<BranchPoint> {
        if !(omega > 0.0 && omega <= PI) {
            return Err(Error::InvalidArgument(format!(
                "omega must lie in (0, pi], got {omega}"
            )));
        }
        let pts = &self.points;
        let i = pts.partition_point(|p| p.omega <= omega);
        let ak = self.alpha_k.unwrap_or(f64::INFINITY);
        let guess = if i == 0 {
            pts[0].z
        } else if i == pts.len() {
            pts[i - 1].z
        } else {
            let (a, b) = (&pts[i - 1], &pts[i]);
            if (a.omega < ak) != (b.omega < ak) {
                // straddles the crossing: stay on the matching side
                if omega < ak {
                    a.z
                } else {
                    b.z
                }
            } else {
                let t = (omega - a.omega) / (b.omega - a.omega);
                a.z + (b.z - a.z) * t
            }
        };
        let ambiguous = Error::ContinuationAmbiguous { omega, step: 0.0 };
        let c = if omega >= ak {
            let first_real = pts.iter().position(|p| p.omega >= ak);
            let x = match first_real {
                // between the crossing and the first real point the pair is
                // barely split; take its upper member as the tracker does
                Some(j) if j > 0 && omega < pts[j].omega => {
                    let x0 = pts[j - 1].z.re;
                    let f = |x: f64| phi_real(&self.knot, self.options.form, omega, x);
                    let upper = sign_change(&f, x0, 1.0, REAL_REACH * x0.abs().max(1.0))?;
                    // too close to the crossing to split the pair
                    upper.or((omega - ak < UNRESOLVED_SPLIT).then_some(x0))
                }
                _ => real_root_near(&self.knot, self.options.form, omega, guess.re)?,
            };
            Complex64::new(x.ok_or(ambiguous)?, 0.0)
        } else {
            let warm = &self.roots[i.saturating_sub(1)];
            let roots = roots_at(&self.knot, self.options.form, omega, Some(warm))?;
            nearest(&candidates(self.knot.family(), &roots), guess)
                .ok_or(ambiguous)?
                .0
        };
        make_point(&self.knot, self.options.form, omega, c)
    }

    pub fn selected_candidate(&self) -> Option<&SeedCandidate> {
        self.candidates
            .iter()
            .find(|c| c.status == CandidateStatus::Selected)
    }
}
