//! Cross-validation suites behind `dtvol check`.

use std::f64::consts::PI;
use std::time::Instant;

use dtvol_core::riley::riley_coefficients;
use dtvol_core::{
    cone_volume, find_alpha_k, jk_word, le_poly_value, mednykh_poly_value, prop_w_matrix, rho_word,
    riley_poly_value, twobridge_word, volume_curve, volume_curve_with, Complex64, Family, FreeWord,
    KnotParam, PhiForm, QuadRule, RepPoint, TrackOptions, TwoBridgeParams, VolumeOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Suite = Box<dyn Fn() -> Outcome>;

fn knot(k: i64, n: i64) -> Result<KnotParam, String> {
    KnotParam::new(k, n).map_err(|e| e.to_string())
}

fn sample_point(rng: &mut ChaCha8Rng) -> Result<RepPoint, String> {
    let m = Complex64::from_polar(
        rng.gen_range(0.5..2.0),
        rng.gen_range(0.0..std::f64::consts::TAU),
    );
    let z = Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
    RepPoint::new(m, z).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn riley_le_mednykh() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut words: Vec<FreeWord> = (2..=12).map(|k| jk_word(k).expect("k >= 2")).collect();
    words.extend(TwoBridgeParams::enumerate(21).iter().map(twobridge_word));
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let w = &words[if i < words.len() {
            i
        } else {
            rng.gen_range(0..words.len())
        }];
        let pt = sample_point(&mut rng)?;
        let r = riley_poly_value(w, &pt).map_err(|e| e.to_string())?;
        let l = le_poly_value(w, &pt).map_err(|e| e.to_string())?;
        let m = mednykh_poly_value(w, &pt).map_err(|e| e.to_string())?;
        let scale = rho_word(w, &pt).max_abs().max(1.0) * (pt.m().norm() + pt.m().inv().norm());
        let d = (r - l).norm().max((l - m).norm()) / scale.max(r.norm());
        worst = worst.max(d);
        ensure(d < 1e-10, || format!("{} differs by {d:.1e}", w.to_ascii()))?;
    }
    Ok(format!("200 samples, worst {worst:.1e}"))
}

fn closed_vs_recursive(samples: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for k in 2..=9u32 {
        for n in (-5..=5i64).filter(|&n| n != 0) {
            for _ in 0..samples {
                let pt = sample_point(&mut rng)?;
                let d = rel(
                    PhiForm::Closed.eval(k, n, &pt),
                    PhiForm::Recursive.eval(k, n, &pt),
                );
                worst = worst.max(d);
                ensure(d < 1e-10, || format!("J({k},{}) differs by {d:.1e}", 2 * n))?;
            }
        }
    }
    Ok(format!(
        "k <= 9, |n| <= 5, {samples} points each, worst {worst:.1e}"
    ))
}

fn w_matrix() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for k in 2..=12u32 {
        let w = jk_word(i64::from(k)).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let pt = sample_point(&mut rng)?;
            let closed = prop_w_matrix(k, &pt).map_err(|e| e.to_string())?;
            let direct = rho_word(&w, &pt);
            let d = (closed - direct).max_abs() / direct.max_abs().max(1.0);
            let t = riley_coefficients(Family::of_k(k), &pt).t;
            let dt = rel(closed.trace(), t).min((closed.trace() - t).norm());
            worst = worst.max(d);
            ensure(d < 1e-10, || format!("k = {k}: entries differ by {d:.1e}"))?;
            ensure(dt < 1e-12, || format!("k = {k}: trace differs by {dt:.1e}"))?;
        }
    }
    Ok(format!("k = 2..12, worst entry {worst:.1e}"))
}

fn alpha_grid() -> Vec<f64> {
    (0..20)
        .map(|i| 0.1 + (PI - 0.1) * (i as f64 + 0.5) / 20.0)
        .collect()
}

fn curve_gap(a: &KnotParam, b: &KnotParam) -> Result<f64, String> {
    let va = volume_curve(a, &alpha_grid(), 1e-10).map_err(|e| format!("{a}: {e}"))?;
    let vb = volume_curve(b, &alpha_grid(), 1e-10).map_err(|e| format!("{b}: {e}"))?;
    Ok(va
        .iter()
        .zip(&vb)
        .map(|(x, y)| (x.volume - y.volume).abs())
        .fold(0.0, f64::max))
}

fn symmetry() -> Outcome {
    let mut parts = Vec::new();
    for ((k1, n1), (k2, n2)) in [((2, 2), (4, 1)), ((2, 3), (6, 1))] {
        let (a, b) = (knot(k1, n1)?, knot(k2, n2)?);
        let d = curve_gap(&a, &b)?;
        ensure(d < 1e-8, || format!("{a} vs {b}: {d:.1e}"))?;
        parts.push(format!("{a} = {b} ({d:.1e})"));
    }
    Ok(parts.join(", "))
}

fn figure_eight_coincidence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let pt = sample_point(&mut rng)?;
        let (a, b) = (
            PhiForm::Closed.eval(3, 1, &pt),
            PhiForm::Closed.eval(2, -1, &pt),
        );
        let d = (a - b).norm() / a.norm().max(1.0);
        ensure(d < 1e-12, || format!("Phi differs by {d:.1e}"))?;
    }
    let d = curve_gap(&knot(3, 1)?, &knot(2, -1)?)?;
    ensure(d < 1e-8, || format!("volume curves differ by {d:.1e}"))?;
    Ok(format!("Phi at 50 points; volume curves {d:.1e}"))
}

/// `-int_0^theta log|2 sin t| dt`: the exact integral of `log t` plus
/// composite Simpson on the smooth remainder.
fn lobachevsky(theta: f64) -> f64 {
    let g = |t: f64| {
        if t == 0.0 {
            2f64.ln()
        } else {
            (2.0 * t.sin() / t).ln()
        }
    };
    let n = 20_000;
    let h = theta / n as f64;
    let inner: f64 = (1..n)
        .map(|i| if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h))
        .sum();
    -(theta * theta.ln() - theta) - (g(0.0) + g(theta) + inner) * h / 3.0
}

fn figure_eight_volume() -> Outcome {
    let v = cone_volume(&knot(2, -1)?, 0.0, 1e-9)
        .map_err(|e| e.to_string())?
        .volume;
    let oracle = 6.0 * lobachevsky(PI / 3.0);
    let d = (v - oracle).abs();
    ensure(d < 1e-6, || format!("{v} vs {oracle}"))?;
    Ok(format!("{v:.12} vs 6 L(pi/3) = {oracle:.12}"))
}

fn census_volumes() -> Outcome {
    let census = [
        (2, 2, 2.828122088330783),
        (2, -2, 3.163963228883144),
        (3, 2, 4.400832516123046),
        (2, 3, 3.331744231641115),
        (2, -3, 3.42720524627408),
    ];
    let mut worst: f64 = 0.0;
    for (k, n, want) in census {
        let kn = knot(k, n)?;
        let v = cone_volume(&kn, 0.0, 1e-10)
            .map_err(|e| format!("{kn}: {e}"))?
            .volume;
        let d = (v - want).abs();
        worst = worst.max(d);
        ensure(d < 1e-8, || format!("{kn}: {v} vs {want}"))?;
    }
    Ok(format!("5_2, 6_1, 6_2, 7_2, 8_1 to {worst:.1e}"))
}

fn alpha_k_sweep() -> Outcome {
    let fig8 = find_alpha_k(&knot(2, -1)?).map_err(|e| e.to_string())?;
    ensure((fig8 - 2.0 * PI / 3.0).abs() < 1e-4, || {
        format!("figure-eight alpha_K {fig8}")
    })?;
    let mut count = 0;
    for k in 2..=9 {
        for n in (-5..=5).filter(|&n| n != 0) {
            let kn = knot(k, n)?;
            match find_alpha_k(&kn) {
                Ok(a) => {
                    ensure((2.0 * PI / 3.0 - 1e-4..PI).contains(&a), || {
                        format!("{kn}: alpha_K {a}")
                    })?;
                    count += 1;
                }
                Err(e) if e.is_non_hyperbolic() => {}
                Err(e) => return Err(format!("{kn}: {e}")),
            }
        }
    }
    Ok(format!(
        "{count} hyperbolic knots with alpha_K in [2pi/3, pi)"
    ))
}

fn self_consistency() -> Outcome {
    let alphas = [0.0, 1.0, 2.0];
    let base = VolumeOptions::with_tol(1e-10);
    let variants = [
        VolumeOptions {
            rule: QuadRule::TanhSinh,
            ..base
        },
        VolumeOptions {
            track: TrackOptions {
                step: base.track.step / 2.0,
                ..base.track
            },
            ..base
        },
        VolumeOptions {
            track: TrackOptions {
                form: PhiForm::Recursive,
                ..base.track
            },
            ..base
        },
    ];
    let mut worst: f64 = 0.0;
    for (k, n) in [(2, -1), (3, 1), (4, 1), (5, -1), (4, -2)] {
        let kn = knot(k, n)?;
        let curve = |o: &VolumeOptions| {
            volume_curve_with(&kn, &alphas, o).map_err(|e| format!("{kn}: {e}"))
        };
        let reference = curve(&base)?;
        for v in &variants {
            let other = curve(v)?;
            let d = reference
                .iter()
                .zip(&other)
                .map(|(a, b)| (a.volume - b.volume).abs())
                .fold(0.0, f64::max);
            worst = worst.max(d);
            ensure(d < 1e-8, || format!("{kn}: variants differ by {d:.1e}"))?;
        }
    }
    Ok(format!("rule, step and form variants agree to {worst:.1e}"))
}

/// Runs the suites and prints a table; true when every suite passed.
pub fn run(full: bool) -> bool {
    let mut suites: Vec<(&str, Suite)> = vec![
        ("Riley = Le = Mednykh", Box::new(riley_le_mednykh)),
        (
            "closed = recursive Riley",
            Box::new(move || closed_vs_recursive(if full { 100 } else { 10 })),
        ),
        ("relator matrix = product", Box::new(w_matrix)),
        ("J(2,4) = J(4,2), J(2,6) = J(6,2)", Box::new(symmetry)),
        (
            "figure-eight J(3,2) = J(2,-2)",
            Box::new(figure_eight_coincidence),
        ),
    ];
    if full {
        suites.push(("figure-eight volume oracle", Box::new(figure_eight_volume)));
        suites.push(("census volumes", Box::new(census_volumes)));
        suites.push(("alpha_K sweep", Box::new(alpha_k_sweep)));
        suites.push(("self-consistency", Box::new(self_consistency)));
    }
    let width = suites.iter().map(|(name, _)| name.len()).max().unwrap_or(0);
    let mut failed = 0;
    for (name, suite) in &suites {
        let start = Instant::now();
        let (status, detail) = match suite() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{status}  {name:<width$}  {:>6.2} s  {detail}",
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "{} of {} suites passed",
        suites.len() - failed,
        suites.len()
    );
    failed == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lobachevsky_known_values() {
        // L(pi/2) = 0 and L(pi/6) = (3/2) L(pi/3)
        assert!(lobachevsky(PI / 2.0).abs() < 1e-12);
        assert!((lobachevsky(PI / 6.0) - 1.5 * lobachevsky(PI / 3.0)).abs() < 1e-12);
    }
}
