use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::ZPoly;

const MAX_ITERATIONS: usize = 600;

/// Backward-error bound used to accept a root: `1e-10 max|a_i| max(1,|z|)^deg`.
pub fn residual_bound(p: &ZPoly, z: Complex64) -> f64 {
    let deg = p.degree().unwrap_or(0) as i32;
    1e-10 * p.max_abs_coeff() * z.norm().max(1.0).powi(deg)
}

/// All roots of `p`, with multiplicity, by Aberth-Ehrlich iteration started
/// on a circle, followed by Newton polishing. Sorted by real then imaginary
/// part. A nonzero constant has no roots.
pub fn poly_roots(p: &ZPoly) -> Result<Vec<Complex64>> {
    poly_roots_from(p, None)
}

/// As [`poly_roots`], warm-started from `guesses` when their count matches
/// the degree (typically the roots at a nearby parameter value).
pub fn poly_roots_from(p: &ZPoly, guesses: Option<&[Complex64]>) -> Result<Vec<Complex64>> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    // exact zero roots
    let zeros = p.coeffs().iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = ZPoly::new(p.coeffs()[zeros..].to_vec());
    let rdeg = deg - zeros;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if rdeg > 0 {
        let lead = reduced.leading().expect("nonzero");
        let monic: Vec<Complex64> = reduced.coeffs().iter().map(|&c| c / lead).collect();
        let mut z = match guesses {
            Some(g) if g.len() == rdeg && zeros == 0 => g.to_vec(),
            _ => initial_guesses(&monic),
        };
        aberth(&monic, &mut z);
        for r in z.iter_mut() {
            *r = polish(&monic, *r);
        }
        roots.extend(z);
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

/// Simultaneous Aberth correction of a full root set using `f(z) = (value,
/// derivative)` evaluated by some other route than the coefficients.
pub fn refine_roots<F>(f: F, roots: &mut [Complex64], max_sweeps: usize)
where
    F: Fn(Complex64) -> (Complex64, Complex64),
{
    let n = roots.len();
    let mut frozen = vec![false; n];
    for _ in 0..max_sweeps {
        let mut moved = false;
        for i in 0..n {
            if frozen[i] {
                continue;
            }
            let (v, dv) = f(roots[i]);
            if v.norm() == 0.0 {
                frozen[i] = true;
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| roots[i] - roots[j])
                .filter(|d| d.norm() > 0.0)
                .map(|d| d.inv())
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if !step.is_finite() {
                frozen[i] = true;
                continue;
            }
            let next = roots[i] - step;
            roots[i] = next;
            if step.norm() <= 4.0 * f64::EPSILON * next.norm().max(1.0) {
                frozen[i] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Value, derivative and a rounding-error bound for Horner's scheme.
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let zero = Complex64::new(0.0, 0.0);
    let mut p = zero;
    let mut dp = zero;
    let mut bound = 0.0;
    let az = z.norm();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
        bound = bound * az + p.norm();
    }
    (p, dp, 4.0 * f64::EPSILON * bound)
}

fn initial_guesses(monic: &[Complex64]) -> Vec<Complex64> {
    let deg = monic.len() - 1;
    // radius: geometric mean of root moduli, clamped by the Fujiwara bound
    let geo = monic[0].norm().powf(1.0 / deg as f64);
    let fujiwara = (0..deg)
        .map(|i| {
            let scale = if i == 0 { 0.5 } else { 1.0 };
            (scale * monic[i].norm()).powf(1.0 / (deg - i) as f64)
        })
        .fold(0.0, f64::max)
        * 2.0;
    let radius = if geo > 0.0 {
        geo.min(fujiwara)
    } else {
        fujiwara.max(1.0)
    };
    let offset = 0.4;
    (0..deg)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / deg as f64 + offset;
            Complex64::from_polar(radius, angle)
        })
        .collect()
}

fn aberth(monic: &[Complex64], z: &mut [Complex64]) {
    let n = z.len();
    let mut done = vec![false; n];
    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp, bound) = horner(monic, z[i]);
            if p.norm() <= bound {
                done[i] = true;
                continue;
            }
            all_done = false;
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if !step.is_finite() {
                // perturb off a critical point
                z[i] += Complex64::new(1e-8, 1e-8) * z[i].norm().max(1.0);
                continue;
            }
            z[i] -= step;
            if step.norm() <= 2.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if all_done {
            return;
        }
    }
    log::debug!("Aberth iteration hit the iteration cap at degree {n}");
}

fn polish(monic: &[Complex64], mut z: Complex64) -> Complex64 {
    let (mut p, _, _) = horner(monic, z);
    for _ in 0..3 {
        let (_, dp, bound) = horner(monic, z);
        if p.norm() <= bound || dp.norm() == 0.0 {
            break;
        }
        let candidate = z - p / dp;
        let (pc, _, _) = horner(monic, candidate);
        if pc.norm() < p.norm() {
            z = candidate;
            p = pc;
        } else {
            break;
        }
    }
    z
}
