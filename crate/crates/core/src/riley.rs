//! Riley polynomial `Phi_{J(k,2n)}(M, z)` of the double twist knots.
//!
//! With `X = M^2 + M^-2` and `S_j = S_j(z)`:
//!
//! ```text
//! k = 2m+1:  t = X + 2 - z - (z-2)(z-X) S_m S_{m-1}
//!            d = 1 - (z-X) S_m (S_m - S_{m-1})
//! k = 2m:    t = 2 + (z-2)(z-X) S_{m-1}^2
//!            d = 1 + (z-X) S_{m-1} (S_m - S_{m-1})
//!
//! Phi = S_n(t) - d S_{n-1}(t)
//! ```
//!
//! The same polynomial satisfies `P_n = t P_{n-1} - P_{n-2}` with `P_0 = 1`
//! and a family-specific `P_1`; that recursive route is kept as an
//! independent construction. Both are written once over [`Ring`] and
//! evaluated either at a complex `z` or over coefficient vectors in `z`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chebyshev::pair_in;
use crate::error::{Error, Result};
use crate::poly::{Dual, Ring, ZPoly};
use crate::slrep::{Mat2C, RepPoint};
use crate::words::Family;

/// Largest `k` and `|n|` for which the coefficient form is considered well
/// conditioned in double precision.
pub const DESK_MAX_K: u32 = 19;
pub const DESK_MAX_ABS_N: i64 = 10;

/// `t = tr rho(w)` and the multiplier `d` of `S_{n-1}(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RileyCoefficients {
    pub t: Complex64,
    pub d: Complex64,
    pub family: Family,
}

/// Which construction of `Phi` to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhiForm {
    /// `S_n(t) - d S_{n-1}(t)`.
    #[default]
    Closed,
    /// Two-term recurrence in `n` from `P_0`, `P_1`.
    Recursive,
}

impl PhiForm {
    pub fn eval(self, k: u32, n: i64, pt: &RepPoint) -> Complex64 {
        match self {
            PhiForm::Closed => riley_closed(Family::of_k(k), n, pt),
            PhiForm::Recursive => riley_recursive(k, n, pt),
        }
    }

    /// `Phi` and `d Phi / dz` at `pt`, by forward differentiation of the
    /// chosen construction.
    pub fn eval_with_derivative(self, k: u32, n: i64, pt: &RepPoint) -> (Complex64, Complex64) {
        let z = Dual::var(pt.z());
        let x = Dual::constant(pt.m2_sum());
        let family = Family::of_k(k);
        let r = match self {
            PhiForm::Closed => closed_in(family, n, &z, &x),
            PhiForm::Recursive => recursive_in(family, n, &z, &x),
        };
        (r.v, r.d)
    }

    pub fn zpoly(self, k: u32, n: i64, m: Complex64) -> Result<ZPoly> {
        match self {
            PhiForm::Closed => riley_zpoly(k, n, m),
            PhiForm::Recursive => riley_zpoly_recursive(k, n, m),
        }
    }
}

struct Parts<T> {
    t: T,
    d: T,
    first: T,
}

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn parts<T: Ring>(family: Family, z: &T, x: &T) -> Parts<T> {
    let one = T::one();
    let two = T::constant(c(2.0));
    let z_minus_x = z.clone() - x.clone();
    match family {
        Family::Odd(m) => {
            let (sm, sm1) = pair_in(i64::from(m), z);
            let t = x.clone() + two.clone()
                - z.clone()
                - (z.clone() - two) * z_minus_x.clone() * sm.clone() * sm1.clone();
            let d = one.clone() - z_minus_x.clone() * sm.clone() * (sm.clone() - sm1.clone());
            let first = one + z_minus_x * sm1.clone() * (sm - sm1);
            Parts { t, d, first }
        }
        Family::Even(m) => {
            let (sm, sm1) = pair_in(i64::from(m), z);
            let sm2 = z.clone() * sm1.clone() - sm.clone();
            let t = two.clone() + (z.clone() - two) * z_minus_x.clone() * sm1.clone() * sm1.clone();
            let d = one.clone() + z_minus_x.clone() * sm1.clone() * (sm - sm1.clone());
            let first = one - z_minus_x * sm1.clone() * (sm1 - sm2);
            Parts { t, d, first }
        }
    }
}

fn closed_in<T: Ring>(family: Family, n: i64, z: &T, x: &T) -> T {
    let Parts { t, d, .. } = parts(family, z, x);
    let (sn, sn1) = pair_in(n, &t);
    sn - d * sn1
}

fn recursive_in<T: Ring>(family: Family, n: i64, z: &T, x: &T) -> T {
    let Parts { t, first, .. } = parts(family, z, x);
    // (P_i, P_{i-1}) at i = 1
    let mut cur = first;
    let mut prev = T::one();
    if n >= 1 {
        for _ in 1..n {
            let next = t.clone() * cur.clone() - prev;
            prev = cur;
            cur = next;
        }
        cur
    } else {
        // walk down: P_{i-2} = t P_{i-1} - P_i
        for _ in 0..(1 - n) {
            let below = t.clone() * prev.clone() - cur;
            cur = prev;
            prev = below;
        }
        cur
    }
}

pub fn riley_coefficients(family: Family, pt: &RepPoint) -> RileyCoefficients {
    let Parts { t, d, .. } = parts(family, &pt.z(), &pt.m2_sum());
    RileyCoefficients { t, d, family }
}

fn riley_closed(family: Family, n: i64, pt: &RepPoint) -> Complex64 {
    closed_in(family, n, &pt.z(), &pt.m2_sum())
}

/// `Phi_{J(2m+1, 2n)}(M, z)` in closed Chebyshev form.
pub fn riley_odd(m: u32, n: i64, pt: &RepPoint) -> Complex64 {
    riley_closed(Family::Odd(m), n, pt)
}

/// `Phi_{J(2m, 2n)}(M, z)` in closed Chebyshev form.
pub fn riley_even(m: u32, n: i64, pt: &RepPoint) -> Complex64 {
    riley_closed(Family::Even(m), n, pt)
}

/// `Phi_{J(k, 2n)}(M, z)` by the recurrence in `n`, stepping toward `n`
/// from `P_0 = 1`, `P_1` (downward for negative `n`).
pub fn riley_recursive(k: u32, n: i64, pt: &RepPoint) -> Complex64 {
    recursive_in(Family::of_k(k), n, &pt.z(), &pt.m2_sum())
}

fn zpoly_with(
    k: u32,
    n: i64,
    m: Complex64,
    form: fn(Family, i64, &ZPoly, &ZPoly) -> ZPoly,
) -> Result<ZPoly> {
    let pt = RepPoint::new(m, Complex64::new(0.0, 0.0))?;
    static ENVELOPE_WARNING: std::sync::Once = std::sync::Once::new();
    if k > DESK_MAX_K || n.abs() > DESK_MAX_ABS_N {
        ENVELOPE_WARNING.call_once(|| log::warn!(
            "J({k},{}) is outside the desk-scale envelope (k <= {DESK_MAX_K}, |n| <= {DESK_MAX_ABS_N}); \
             coefficient form may be ill conditioned",
            2 * n
        ));
    }
    let x = ZPoly::constant(pt.m2_sum());
    let p = form(Family::of_k(k), n, &ZPoly::var(), &x);
    if let Some(lead) = p.leading() {
        let ratio = lead.norm() / p.max_abs_coeff();
        if ratio < 1e-8 {
            log::debug!(
                "Riley polynomial of J({k},{}) has leading/max coefficient ratio {ratio:e}",
                2 * n
            );
        }
    }
    Ok(p)
}

/// Coefficients of `Phi_{J(k,2n)}(M, .)` in `z` from the closed form.
pub fn riley_zpoly(k: u32, n: i64, m: Complex64) -> Result<ZPoly> {
    zpoly_with(k, n, m, closed_in::<ZPoly>)
}

/// Coefficients of `Phi_{J(k,2n)}(M, .)` in `z` from the recurrence in `n`.
pub fn riley_zpoly_recursive(k: u32, n: i64, m: Complex64) -> Result<ZPoly> {
    zpoly_with(k, n, m, recursive_in::<ZPoly>)
}

/// `rho(w)` for the double twist relator word, assembled from closed-form
/// entries in `S_m(z)`, `S_{m-1}(z)`.
pub fn prop_w_matrix(k: u32, pt: &RepPoint) -> Result<Mat2C> {
    if k < 2 {
        return Err(Error::InvalidParams(format!(
            "prop_w_matrix: need k >= 2, got {k}"
        )));
    }
    let (m, z) = (pt.m(), pt.z());
    let minv = m.inv();
    let (m2, minv2) = (m * m, minv * minv);
    let family = Family::of_k(k);
    let (sm, sm1) = pair_in(i64::from(family.m()), &z);
    let (w11, w12, w22) = match family {
        Family::Odd(_) => (
            m2 * sm * sm - 2.0 * m2 * sm * sm1 + (2.0 + m2 - z) * sm1 * sm1,
            (sm - sm1) * (m * sm - minv * sm1),
            (minv2 + 2.0 - z) * sm * sm - 2.0 * minv2 * sm * sm1 + minv2 * sm1 * sm1,
        ),
        Family::Even(_) => (
            sm * sm
                + (2.0 - 2.0 * z) * sm * sm1
                + (1.0 + 2.0 * m2 - 2.0 * z - m2 * z + z * z) * sm1 * sm1,
            (minv - m) * sm * sm1 + (minv + m - minv * z) * sm1 * sm1,
            sm * sm - 2.0 * sm * sm1 + (1.0 + 2.0 * minv2 - minv2 * z) * sm1 * sm1,
        ),
    };
    Ok(Mat2C::new(w11, w12, (2.0 - z) * w12, w22))
}
