//! Chebyshev polynomials of the second kind.
//!
//! `S_0 = 1`, `S_1 = w` and `S_j = w S_{j-1} - S_{j-2}` for every integer `j`.
//! Negative indices run the same recurrence downward from `(S_0, S_{-1}) =
//! (1, 0)`, which gives `S_{-j} = -S_{j-2}`.
//!
//! Everything here is evaluated by the linear recurrence only; the
//! trigonometric form is not used (it degenerates at `w = +-2`).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::poly::{Ring, ZPoly};

/// The pair `(S_j(w), S_{j-1}(w))` from a single recurrence pass.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebPair {
    pub s_j: Complex64,
    pub s_jm1: Complex64,
    pub j: i64,
    pub omega: Complex64,
}

impl ChebPair {
    /// `S_j^2 - w S_j S_{j-1} + S_{j-1}^2 - 1`, identically zero.
    pub fn identity_defect(&self) -> Complex64 {
        self.s_j * self.s_j - self.omega * self.s_j * self.s_jm1 + self.s_jm1 * self.s_jm1 - 1.0
    }
}

/// `(S_j(w), S_{j-1}(w))` over any [`Ring`].
pub fn pair_in<T: Ring>(j: i64, omega: &T) -> (T, T) {
    // (S_i, S_{i-1}) starting at i = 0
    let mut cur = T::one();
    let mut prev = T::zero();
    if j >= 0 {
        for _ in 0..j {
            let next = omega.clone() * cur.clone() - prev;
            prev = cur;
            cur = next;
        }
    } else {
        for _ in 0..(-j) {
            // S_{i-2} = w S_{i-1} - S_i
            let below = omega.clone() * prev.clone() - cur;
            cur = prev;
            prev = below;
        }
    }
    (cur, prev)
}

/// `S_j(w)` for any [`Ring`].
pub fn s_in<T: Ring>(j: i64, omega: &T) -> T {
    pair_in(j, omega).0
}

pub fn eval_s(j: i64, omega: Complex64) -> Complex64 {
    s_in(j, &omega)
}

pub fn eval_pair(j: i64, omega: Complex64) -> ChebPair {
    let (s_j, s_jm1) = pair_in(j, &omega);
    ChebPair {
        s_j,
        s_jm1,
        j,
        omega,
    }
}

/// Coefficients of `S_j` as a polynomial in its argument, constant term first.
///
/// Degree `j` for `j >= 0`; `S_{-1}` is the zero polynomial and `S_{-2} = -1`.
pub fn coeffs_s(j: i64) -> ZPoly {
    s_in(j, &ZPoly::var())
}
