use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Result};
use dtvol_core::solver::{admissible_roots, geometric_branch_with};
use dtvol_core::volume::EXTENSION_START;
use dtvol_core::{
    cone_volume_with, find_alpha_k, poly_roots, volume_curve_with, Complex64, PhiForm, RepPoint,
    TrackOptions, VolumeOptions,
};
use serde::Serialize;

use crate::cache::{Cache, FileOutput, Outputs};
use crate::output::{branch_csv, curve_csv, json_line, json_pretty, write_file};
use crate::{AlphaKArgs, CurveArgs, NumericArgs, RileyArgs, RootsArgs, VolumeArgs};

fn stdout_only(text: String) -> Outputs {
    Outputs {
        stdout: text,
        files: Vec::new(),
    }
}

/// Writes the files of `outputs`, then prints its standard output.
pub fn emit(outputs: &Outputs) -> Result<()> {
    for f in &outputs.files {
        write_file(&f.path, &f.contents)?;
        eprintln!("wrote {}", f.path.display());
    }
    let mut out = std::io::stdout().lock();
    out.write_all(outputs.stdout.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// `n` equally spaced points from `a` to `b` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    b
                } else {
                    a + (b - a) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

fn volume_options(n: &NumericArgs) -> VolumeOptions {
    VolumeOptions {
        tol: n.tol,
        rule: n.rule.into(),
        track: TrackOptions {
            step: n.step,
            form: n.form.into(),
            ..TrackOptions::default()
        },
    }
}

pub fn riley(args: &RileyArgs) -> Result<Outputs> {
    let knot = args.knot.knot()?;
    let (k, n) = (knot.k(), i64::from(knot.n()));
    let form: PhiForm = args.form.into();
    let text = if args.zpoly {
        let p = form.zpoly(k, n, args.m)?;
        json_line(&p.coeffs())?
    } else {
        let values = args
            .z
            .iter()
            .map(|&z| Ok(form.eval(k, n, &RepPoint::new(args.m, z)?)))
            .collect::<dtvol_core::Result<Vec<Complex64>>>()?;
        json_line(&values)?
    };
    Ok(stdout_only(text + "\n"))
}

pub fn roots(args: &RootsArgs) -> Result<Outputs> {
    let knot = args.knot.knot()?;
    let m = match (args.m, args.omega) {
        (Some(m), _) => m,
        (None, Some(omega)) => Complex64::from_polar(1.0, omega / 2.0),
        (None, None) => bail!("either --M or --omega is required"),
    };
    let p = PhiForm::Closed.zpoly(knot.k(), i64::from(knot.n()), m)?;
    let mut roots = poly_roots(&p)?;
    if args.admissible {
        roots = admissible_roots(knot.family(), &roots);
    }
    Ok(stdout_only(json_line(&roots)? + "\n"))
}

fn branch_path(curve: &std::path::Path) -> PathBuf {
    curve.with_extension("branch.csv")
}

pub fn volume(args: &VolumeArgs, cache: &Cache) -> Result<Outputs> {
    let knot = args.knot.knot()?;
    let opts = volume_options(&args.numeric);
    cache.run("volume", serde_json::to_value(args)?, || {
        let Some(curve_path) = &args.curve else {
            let r = cone_volume_with(&knot, args.alpha, &opts)?;
            return Ok(stdout_only(json_pretty(&r)? + "\n"));
        };
        if args.samples == 0 {
            bail!(dtvol_core::Error::InvalidArgument(
                "--samples must be at least 1".into()
            ));
        }
        let alphas = linspace(args.alpha, PI, args.samples);
        let curve = volume_curve_with(&knot, &alphas, &opts)?;
        let seed = args.alpha.clamp(EXTENSION_START, 0.1);
        let branch = geometric_branch_with(&knot, seed, &opts.track)?;
        let branch_out = args
            .branch
            .clone()
            .unwrap_or_else(|| branch_path(curve_path));
        Ok(Outputs {
            stdout: json_pretty(&curve[0])? + "\n",
            files: vec![
                FileOutput {
                    path: curve_path.clone(),
                    contents: curve_csv(&curve)?,
                },
                FileOutput {
                    path: branch_out,
                    contents: branch_csv(&branch)?,
                },
            ],
        })
    })
}

pub fn curve(args: &CurveArgs, cache: &Cache) -> Result<Outputs> {
    let knot = args.knot.knot()?;
    let opts = volume_options(&args.numeric);
    if args.samples == 0 || args.from.is_nan() || args.to.is_nan() || args.from > args.to {
        bail!(dtvol_core::Error::InvalidArgument(
            "need --samples >= 1 and --from <= --to".into()
        ));
    }
    cache.run("curve", serde_json::to_value(args)?, || {
        let alphas = linspace(args.from, args.to, args.samples);
        let csv = curve_csv(&volume_curve_with(&knot, &alphas, &opts)?)?;
        Ok(match &args.out {
            Some(path) => Outputs {
                stdout: String::new(),
                files: vec![FileOutput {
                    path: path.clone(),
                    contents: csv,
                }],
            },
            None => stdout_only(csv),
        })
    })
}

#[derive(Serialize)]
struct AlphaKReport {
    k: u32,
    n: i32,
    #[serde(rename = "alpha_K")]
    alpha_k: f64,
}

pub fn alpha_k(args: &AlphaKArgs, cache: &Cache) -> Result<Outputs> {
    let knot = args.knot.knot()?;
    cache.run("alpha-k", serde_json::to_value(args)?, || {
        let report = AlphaKReport {
            k: knot.k(),
            n: knot.n(),
            alpha_k: find_alpha_k(&knot)?,
        };
        Ok(stdout_only(json_pretty(&report)? + "\n"))
    })
}
