//! One-dimensional quadrature: globally adaptive Gauss-Kronrod (21 point) and
//! double-exponential (tanh-sinh). Integrands are fallible so a failure deep
//! inside the root tracker surfaces unchanged.

use serde::{Deserialize, Serialize};

/// Integral estimate with its error bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadEstimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadEstimate {
    pub fn zero() -> Self {
        QuadEstimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
            converged: true,
        }
    }
}

// Kronrod abscissae; odd positions are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gk21<F, E>(f: &mut F, a: f64, b: f64) -> Result<Panel, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let (f1, f2) = (f(center - dx)?, f(center + dx)?);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = kronrod * half;
    let (abs_sum, asc) = (abs_sum * half.abs(), asc * half.abs());
    let mut error = ((kronrod - gauss) * half).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * abs_sum;
    if roundoff > error {
        error = roundoff;
    }
    Ok(Panel { a, b, value, error })
}

/// Globally adaptive 21-point Gauss-Kronrod on `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// error falls below `tol` or `max_panels` is reached. Subdivision order is a
/// pure function of the integrand values, so results are deterministic.
pub fn gauss_kronrod<F, E>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_panels: usize,
) -> Result<QuadEstimate, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    if a == b {
        return Ok(QuadEstimate::zero());
    }
    let mut panels = vec![gk21(&mut f, a, b)?];
    let mut evaluations = 21;
    loop {
        let total_err: f64 = panels.iter().map(|p| p.error).sum();
        if total_err <= tol || panels.len() >= max_panels {
            let value = panels.iter().map(|p| p.value).sum();
            return Ok(QuadEstimate {
                value,
                error: total_err,
                evaluations,
                converged: total_err <= tol,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, p)| {
                if p.error > best.1 {
                    (i, p.error)
                } else {
                    best
                }
            });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            // cannot split further in floating point
            panels.push(Panel { error: 0.0, ..p });
            continue;
        }
        panels.push(gk21(&mut f, p.a, mid)?);
        panels.push(gk21(&mut f, mid, p.b)?);
        evaluations += 42;
    }
}

/// Double-exponential quadrature on `[a, b]`, tolerant of integrable endpoint
/// singularities. Nodes closer than `1e-15 (b - a)` to an endpoint are skipped.
pub fn tanh_sinh<F, E>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    max_level: u32,
) -> Result<QuadEstimate, E>
where
    F: FnMut(f64) -> Result<f64, E>,
{
    if a == b {
        return Ok(QuadEstimate::zero());
    }
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let min_gap = 1e-15 * (b - a).abs();
    let t_max = 3.5_f64;
    let pi_2 = std::f64::consts::FRAC_PI_2;
    let mut evaluations = 0;

    // Contribution of the node pair at +-t (or the center when t = 0).
    let mut node = |t: f64| -> Result<f64, E> {
        let u = pi_2 * t.sinh();
        let cu = u.cosh();
        let weight = pi_2 * t.cosh() / (cu * cu);
        if t == 0.0 {
            evaluations += 1;
            return Ok(weight * f(center)?);
        }
        // distance of the nodes from the nearest endpoint, without cancellation
        let gap = half.abs() * (-u).exp() / cu;
        if gap < min_gap {
            return Ok(0.0);
        }
        let dx = half.signum() * (half.abs() - gap);
        evaluations += 2;
        Ok(weight * (f(center - dx)? + f(center + dx)?))
    };

    let mut h = 1.0;
    let mut sum = node(0.0)?;
    let mut k = 1;
    while f64::from(k) * h <= t_max {
        sum += node(f64::from(k) * h)?;
        k += 1;
    }
    let mut estimate = half * h * sum;
    let mut error = f64::INFINITY;
    for _ in 1..=max_level {
        h *= 0.5;
        let mut k = 1;
        while f64::from(k) * h <= t_max {
            sum += node(f64::from(k) * h)?;
            k += 2;
        }
        let next = half * h * sum;
        error = (next - estimate).abs();
        estimate = next;
        if error <= tol {
            break;
        }
    }
    Ok(QuadEstimate {
        value: estimate,
        error,
        evaluations,
        converged: error <= tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::convert::Infallible;

    fn ok(f: impl Fn(f64) -> f64) -> impl FnMut(f64) -> Result<f64, Infallible> {
        move |x| Ok(f(x))
    }

    #[test]
    fn gk_polynomial_and_trig() {
        let r = gauss_kronrod(ok(|x| x * x), 0.0, 3.0, 1e-12, 100).unwrap();
        assert!((r.value - 9.0).abs() < 1e-13);
        let r = gauss_kronrod(ok(f64::sin), 0.0, std::f64::consts::PI, 1e-12, 100).unwrap();
        assert!((r.value - 2.0).abs() < 1e-13);
        assert!(r.converged);
    }

    #[test]
    fn gk_sqrt_endpoint() {
        let r =
            gauss_kronrod(ok(|x: f64| (1.0 - x).max(0.0).sqrt()), 0.0, 1.0, 1e-11, 500).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn tanh_sinh_singular_endpoints() {
        let r = tanh_sinh(ok(|x: f64| (1.0 - x).sqrt()), 0.0, 1.0, 1e-13, 10).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-12, "{r:?}");
        let r = tanh_sinh(ok(|x: f64| x.ln()), 0.0, 1.0, 1e-12, 10).unwrap();
        assert!((r.value + 1.0).abs() < 1e-11, "{r:?}");
        let r = tanh_sinh(ok(f64::exp), 1.0, 0.0, 1e-13, 10).unwrap();
        assert!((r.value + (1f64.exp() - 1.0)).abs() < 1e-12, "{r:?}");
    }

    #[test]
    fn errors_propagate() {
        let r: Result<QuadEstimate, &str> = gauss_kronrod(
            |x| if x > 0.5 { Err("boom") } else { Ok(x) },
            0.0,
            1.0,
            1e-9,
            10,
        );
        assert_eq!(r, Err("boom"));
    }
}
