use std::f64::consts::PI;

use dtvol_core::{cone_volume, volume_curve, Error, KnotParam, VolumeResult};

fn knot(k: i64, n: i64) -> KnotParam {
    KnotParam::new(k, n).unwrap()
}

/// Complete hyperbolic volumes from published census tables.
const CENSUS: [(i64, i64, &str, f64); 5] = [
    (2, 2, "5_2", 2.828122088330783),
    (2, -2, "6_1", 3.163963228883144),
    (3, 2, "6_2", 4.400832516123046),
    (2, 3, "7_2", 3.331744231641115),
    (2, -3, "8_1", 3.42720524627408),
];

#[test]
fn complete_volumes_match_census() {
    for (k, n, name, want) in CENSUS {
        let r = cone_volume(&knot(k, n), 0.0, 1e-10).unwrap();
        assert!(
            (r.volume - want).abs() < 1e-8,
            "{name} = J({k},{}): {} vs {want}",
            2 * n,
            r.volume
        );
        assert!(r.quad_error <= 1e-10);
    }
}

#[test]
fn same_knot_in_both_families() {
    // 5_2 = J(2,4) = J(3,-2), 6_1 = J(2,-4) = J(5,2)
    for ((k1, n1), (k2, n2)) in [((2, 2), (3, -1)), ((2, -2), (5, 1))] {
        let a = cone_volume(&knot(k1, n1), 1.3, 1e-10).unwrap();
        let b = cone_volume(&knot(k2, n2), 1.3, 1e-10).unwrap();
        assert!((a.volume - b.volume).abs() < 1e-9);
        assert!((a.alpha_k.unwrap() - b.alpha_k.unwrap()).abs() < 1e-9);
    }
}

#[test]
fn curve_decreases_to_zero_at_alpha_k() {
    let alphas: Vec<f64> = (0..=30).map(|i| i as f64 * PI / 30.0).collect();
    let curve = volume_curve(&knot(4, -2), &alphas, 1e-9).unwrap();
    let ak = curve[0].alpha_k.unwrap();
    for pair in curve.windows(2) {
        assert!(
            pair[1].volume <= pair[0].volume + 1e-12,
            "{} -> {}",
            pair[0].alpha,
            pair[1].alpha
        );
    }
    for r in &curve {
        if r.alpha >= ak {
            assert_eq!(r.volume, 0.0);
        } else {
            assert!(r.volume > 0.0);
        }
    }
}

#[test]
fn curve_matches_single_angles() {
    let kn = knot(5, -1);
    let alphas = [0.2, 1.0, 2.5];
    let curve = volume_curve(&kn, &alphas, 1e-10).unwrap();
    for (r, &a) in curve.iter().zip(&alphas) {
        let single = cone_volume(&kn, a, 1e-10).unwrap();
        assert!((r.volume - single.volume).abs() < 2e-10, "alpha {a}");
    }
}

#[test]
fn curve_is_flat_at_the_complete_structure() {
    // d Vol / d alpha = -(1/2) length of the singular geodesic, which tends
    // to zero as the cone angle closes, so successive drops grow
    let alphas = [0.0, 0.1, 0.2, 0.3];
    let v: Vec<f64> = volume_curve(&knot(2, -1), &alphas, 1e-10)
        .unwrap()
        .iter()
        .map(|r| r.volume)
        .collect();
    let d: Vec<f64> = v.windows(2).map(|w| w[0] - w[1]).collect();
    assert!(0.0 < d[0] && d[0] < d[1] && d[1] < d[2], "{d:?}");
}

#[test]
fn non_hyperbolic_and_bad_input() {
    assert!(matches!(
        cone_volume(&knot(2, 1), 1.0, 1e-9),
        Err(Error::NonHyperbolic { .. })
    ));
    assert!(cone_volume(&knot(2, -1), -0.1, 1e-9).is_err());
    assert!(cone_volume(&knot(2, -1), 4.0, 1e-9).is_err());
    assert!(volume_curve(&knot(2, -1), &[1.0, 0.5], 1e-9).is_err());
    assert!(volume_curve(&knot(2, -1), &[], 1e-9).is_err());
}

#[test]
fn result_round_trips_through_json() {
    let r = cone_volume(&knot(3, 1), 0.5, 1e-9).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(value.get("alpha_K").is_some());
    assert!(value.get("volume").is_some());
    let back: VolumeResult = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}
