//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the report is always shown.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dtvol_core::riley::riley_coefficients;
use dtvol_core::{
    cone_volume_with, find_alpha_k, geometric_branch, jk_word, le_poly_value, mednykh_poly_value,
    poly_roots, prop_w_matrix, rho_word, riley_poly_value, riley_zpoly, twobridge_word,
    volume_curve, volume_curve_with, Branch, Complex64, Error, FreeWord, KnotParam, PhiForm,
    QuadRule, RepPoint, TrackOptions, TwoBridgeParams, VolumeOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn knot(k: i64, n: i64) -> KnotParam {
    KnotParam::new(k, n).expect("valid knot parameters")
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1e-300)
}

fn random_meridian(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(
        rng.gen_range(0.5..2.0),
        rng.gen_range(0.0..std::f64::consts::TAU),
    )
}

fn random_z(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    check(
        elapsed.as_secs_f64() < limit_s,
        format!("runtime {:.1} s exceeds {limit_s} s", elapsed.as_secs_f64()),
    )
}

/// `Л(theta) = -int_0^theta log|2 sin t| dt`, split as the exact integral of
/// `log t` plus composite Simpson on the smooth remainder `log(2 sin t / t)`.
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
    let mut s = g(0.0) + g(theta);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * g(i as f64 * h);
    }
    let smooth = s * h / 3.0;
    -(theta * theta.ln() - theta) - smooth
}

fn hyperbolic_grid() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for k in 2..=9 {
        for n in -5..=5 {
            if n != 0 {
                out.push((k, n));
            }
        }
    }
    out
}

fn alpha_grid() -> Vec<f64> {
    (0..20)
        .map(|i| 0.1 + (PI - 0.1) * (i as f64 + 0.5) / 20.0)
        .collect()
}

fn c1_figure_eight_volume() -> Outcome {
    let start = Instant::now();
    let r = cone_volume_with(&knot(2, -1), 0.0, &VolumeOptions::with_tol(1e-9))
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let oracle = 6.0 * lobachevsky(PI / 3.0);
    let err = (r.volume - oracle).abs();
    check(
        err < 1e-6,
        format!("volume {} vs oracle {oracle}: error {err:e}", r.volume),
    )?;
    within(elapsed, 5.0)?;
    Ok(format!(
        "volume {:.12}, oracle {oracle:.12}, error {err:.1e}, {:.2} s",
        r.volume,
        elapsed.as_secs_f64()
    ))
}

fn c2_euclidean_angle() -> Outcome {
    let start = Instant::now();
    let ak = find_alpha_k(&knot(2, -1)).map_err(|e| e.to_string())?;
    let err = (ak - 2.0 * PI / 3.0).abs();
    check(
        err < 1e-4,
        format!("figure-eight alpha_K {ak}, error {err:e}"),
    )?;
    let lower = 2.0 * PI / 3.0 - 1e-4;
    let mut tested = 0;
    let mut min_ak = f64::INFINITY;
    for (k, n) in hyperbolic_grid() {
        match find_alpha_k(&knot(k, n)) {
            Ok(a) => {
                check(
                    (lower..PI).contains(&a),
                    format!("J({k},{}) alpha_K {a} out of range", 2 * n),
                )?;
                min_ak = min_ak.min(a);
                tested += 1;
            }
            Err(Error::NonHyperbolic { .. }) => {}
            Err(e) => return Err(format!("J({k},{}): {e}", 2 * n)),
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 60.0)?;
    Ok(format!(
        "figure-eight error {err:.1e}; {tested} knots in [2pi/3 - 1e-4, pi), min {min_ak:.6}; {:.1} s",
        elapsed.as_secs_f64()
    ))
}

fn c3_trefoil_exclusion() -> Outcome {
    match geometric_branch(&knot(2, 1), 0.1, 0.005) {
        Err(Error::NonHyperbolic { k: 2, n: 1 }) => {}
        other => {
            return Err(format!(
                "trefoil not excluded: {:?}",
                other.map(|b| b.alpha_k)
            ))
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = Complex64::from_polar(1.0, 0.05);
    let roots =
        poly_roots(&riley_zpoly(2, 1, m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    check(
        roots.iter().all(|z| z.im.abs() < 1e-12),
        "trefoil seed polynomial has a nonreal root",
    )?;
    // every grid parameter without a nonreal seed root must be excluded too
    let mut excluded = 0;
    for (k, n) in hyperbolic_grid() {
        let omega = rng.gen_range(1e-4..0.1);
        let m = Complex64::from_polar(1.0, omega / 2.0);
        let p = riley_zpoly(k as u32, n, m).map_err(|e| e.to_string())?;
        let all_real = poly_roots(&p)
            .map_err(|e| e.to_string())?
            .iter()
            .all(|z| z.im.abs() <= 1e-7 * z.norm().max(1.0));
        if all_real {
            match geometric_branch(&knot(k, n), omega, 0.005) {
                Err(e) if e.is_non_hyperbolic() => excluded += 1,
                _ => {
                    return Err(format!(
                        "J({k},{}) has only real seed roots but was not excluded",
                        2 * n
                    ))
                }
            }
        }
    }
    Ok(format!("J(2,2) is NonHyperbolic; {excluded} grid parameter(s) with only real seed roots, all excluded"))
}

fn c4_triple_formula() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut words: Vec<FreeWord> = (2..=12).map(|k| jk_word(k).expect("k >= 2")).collect();
    let bridges: Vec<FreeWord> = TwoBridgeParams::enumerate(21)
        .iter()
        .map(twobridge_word)
        .collect();
    words.extend(bridges.iter().cloned());
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let w = if i < words.len() {
            words[i].clone()
        } else {
            words[rng.gen_range(0..words.len())].clone()
        };
        let pt = RepPoint::new(random_meridian(&mut rng), random_z(&mut rng))
            .map_err(|e| e.to_string())?;
        let riley = riley_poly_value(&w, &pt).map_err(|e| e.to_string())?;
        let le = le_poly_value(&w, &pt).map_err(|e| e.to_string())?;
        let med = mednykh_poly_value(&w, &pt).map_err(|e| e.to_string())?;
        // values near a root are compared against the size of the terms
        let scale = rho_word(&w, &pt).max_abs().max(1.0) * (pt.m().norm() + pt.m().inv().norm());
        let d = (riley - le).norm().max((le - med).norm()) / scale.max(riley.norm());
        worst = worst.max(d);
        check(
            d < 1e-10,
            format!("word {} disagrees by {d:e}", w.to_ascii()),
        )?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 10.0)?;
    Ok(format!(
        "200 samples, {} distinct words, worst relative difference {worst:.1e}",
        words.len()
    ))
}

fn c5_closed_vs_recursive() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for k in 2..=9u32 {
        for n in -5..=5i64 {
            for _ in 0..100 {
                let pt = RepPoint::new(random_meridian(&mut rng), random_z(&mut rng))
                    .map_err(|e| e.to_string())?;
                let a = PhiForm::Closed.eval(k, n, &pt);
                let b = PhiForm::Recursive.eval(k, n, &pt);
                let d = rel(a, b);
                worst = worst.max(d);
                check(
                    d < 1e-10,
                    format!("J({k},{}) at {pt:?}: relative difference {d:e}", 2 * n),
                )?;
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, 10.0)?;
    Ok(format!(
        "8800 samples, worst relative difference {worst:.1e}"
    ))
}

fn c6_w_matrix() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut worst_entry, mut worst_trace, mut worst_r): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for k in 2..=12u32 {
        let w = jk_word(i64::from(k)).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let pt = RepPoint::new(random_meridian(&mut rng), random_z(&mut rng))
                .map_err(|e| e.to_string())?;
            let closed = prop_w_matrix(k, &pt).map_err(|e| e.to_string())?;
            let direct = rho_word(&w, &pt);
            let scale = direct.max_abs().max(1.0);
            let e = (closed - direct).max_abs() / scale;
            let t = riley_coefficients(pt_family(k), &pt).t;
            let dt = rel(closed.trace(), t).min((closed.trace() - t).norm());
            let dr = (closed.e21 - (2.0 - pt.z()) * closed.e12).norm() / scale;
            worst_entry = worst_entry.max(e);
            worst_trace = worst_trace.max(dt);
            worst_r = worst_r.max(dr);
            check(e < 1e-10, format!("k = {k}: entries differ by {e:e}"))?;
            check(
                dt < 1e-12,
                format!("k = {k}: trace differs from t by {dt:e}"),
            )?;
            check(dr < 1e-10, format!("k = {k}: w21 - (2 - z) w12 = {dr:e}"))?;
        }
    }
    Ok(format!(
        "k = 2..12, 550 points: entries {worst_entry:.1e}, trace {worst_trace:.1e}, w21 relation {worst_r:.1e}"
    ))
}

fn pt_family(k: u32) -> dtvol_core::Family {
    dtvol_core::Family::of_k(k)
}

fn curve(kn: &KnotParam) -> Result<Vec<f64>, String> {
    volume_curve(kn, &alpha_grid(), 1e-10)
        .map(|v| v.into_iter().map(|r| r.volume).collect())
        .map_err(|e| format!("{kn}: {e}"))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn c7_knot_symmetry() -> Outcome {
    let start = Instant::now();
    let mut report = Vec::new();
    for ((k1, n1), (k2, n2)) in [((2, 2), (4, 1)), ((2, 3), (6, 1))] {
        let (a, b) = (knot(k1, n1), knot(k2, n2));
        let d = max_diff(&curve(&a)?, &curve(&b)?);
        check(d < 1e-8, format!("{a} vs {b}: max difference {d:e}"))?;
        report.push(format!("{a} = {b} to {d:.1e}"));
    }
    let elapsed = start.elapsed();
    within(elapsed, 60.0)?;
    Ok(format!(
        "{}; {:.1} s",
        report.join(", "),
        elapsed.as_secs_f64()
    ))
}

fn c8_figure_eight_presentations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let pt = RepPoint::new(random_meridian(&mut rng), random_z(&mut rng))
            .map_err(|e| e.to_string())?;
        let a = PhiForm::Closed.eval(3, 1, &pt);
        let b = PhiForm::Closed.eval(2, -1, &pt);
        let d = (a - b).norm() / a.norm().max(1.0);
        worst = worst.max(d);
        check(d < 1e-12, format!("Phi differs by {d:e} at {pt:?}"))?;
    }
    let dv = max_diff(&curve(&knot(3, 1))?, &curve(&knot(2, -1))?);
    check(dv < 1e-8, format!("volume curves differ by {dv:e}"))?;
    Ok(format!(
        "Phi agrees to {worst:.1e} at 50 points; volume curves to {dv:.1e}"
    ))
}

fn c9_self_consistency() -> Outcome {
    let alphas = [0.0, 0.8, 1.6, 2.2];
    let base = VolumeOptions::with_tol(1e-10);
    let variants: [(&str, VolumeOptions); 3] = [
        (
            "tanh-sinh",
            VolumeOptions {
                rule: QuadRule::TanhSinh,
                ..base
            },
        ),
        (
            "half step",
            VolumeOptions {
                track: TrackOptions {
                    step: base.track.step / 2.0,
                    ..base.track
                },
                ..base
            },
        ),
        (
            "recursive",
            VolumeOptions {
                track: TrackOptions {
                    form: PhiForm::Recursive,
                    ..base.track
                },
                ..base
            },
        ),
    ];
    let mut worst: f64 = 0.0;
    for (k, n) in [(2, -1), (3, 1), (4, 1), (5, -1), (4, -2)] {
        let kn = knot(k, n);
        let reference: Vec<f64> = volume_curve_with(&kn, &alphas, &base)
            .map_err(|e| format!("{kn}: {e}"))?
            .iter()
            .map(|r| r.volume)
            .collect();
        for (name, opts) in &variants {
            let other: Vec<f64> = volume_curve_with(&kn, &alphas, opts)
                .map_err(|e| format!("{kn} ({name}): {e}"))?
                .iter()
                .map(|r| r.volume)
                .collect();
            let d = max_diff(&reference, &other);
            worst = worst.max(d);
            check(d < 1e-8, format!("{kn} ({name}): differs by {d:e}"))?;
        }
    }
    Ok(format!(
        "5 knots x 3 variants x 4 angles, worst difference {worst:.1e}"
    ))
}

fn c10_regime_split() -> Outcome {
    let mut branches: Vec<Branch> = Vec::new();
    for (k, n) in hyperbolic_grid() {
        match geometric_branch(&knot(k, n), 0.1, 0.005) {
            Ok(b) => branches.push(b),
            Err(e) if e.is_non_hyperbolic() => {}
            Err(e) => return Err(format!("J({k},{}): {e}", 2 * n)),
        }
    }
    let (mut above, mut below) = (0usize, 0usize);
    let (mut worst_above, mut min_below): (f64, f64) = (0.0, f64::INFINITY);
    for b in &branches {
        let ak = b
            .alpha_k
            .ok_or_else(|| format!("{}: no crossing found", b.knot))?;
        for p in &b.points {
            let l = p.log_abs_l();
            if p.omega > ak {
                above += 1;
                worst_above = worst_above.max(l.abs());
                check(
                    l.abs() < 1e-7,
                    format!("{} at omega {}: log|L| = {l:e}", b.knot, p.omega),
                )?;
            } else if p.omega < ak {
                below += 1;
                min_below = min_below.min(l);
                check(
                    l > 0.0,
                    format!("{} at omega {}: log|L| = {l:e}", b.knot, p.omega),
                )?;
            }
        }
    }
    Ok(format!(
        "{} branches; {above} points above alpha_K (max |log|L|| {worst_above:.1e}), \
         {below} below (min log|L| {min_below:.1e})",
        branches.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 figure-eight complete volume", c1_figure_eight_volume),
        ("2 Euclidean angle", c2_euclidean_angle),
        ("3 trefoil exclusion", c3_trefoil_exclusion),
        ("4 Riley = Le = Mednykh", c4_triple_formula),
        ("5 closed vs recursive Riley", c5_closed_vs_recursive),
        ("6 relator matrix entries", c6_w_matrix),
        ("7 knot symmetry", c7_knot_symmetry),
        (
            "8 figure-eight presentations",
            c8_figure_eight_presentations,
        ),
        ("9 self-consistency", c9_self_consistency),
        ("10 regime split", c10_regime_split),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name}: {detail}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
