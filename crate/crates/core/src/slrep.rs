//! The normalised nonabelian representation
//!
//! ```text
//! rho(a) = [M 1; 0 M^-1],   rho(b) = [M 0; 2-z M^-1]
//! ```
//!
//! of the free group on `a`, `b`, and the three single-equation descriptions
//! (Riley, Le, Mednykh) of when it factors through `<a, b | wa = bw>`.

use std::ops::{Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{FreeWord, Generator};

/// A 2x2 complex matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2C {
    pub e11: Complex64,
    pub e12: Complex64,
    pub e21: Complex64,
    pub e22: Complex64,
}

impl Mat2C {
    pub const fn new(e11: Complex64, e12: Complex64, e21: Complex64, e22: Complex64) -> Self {
        Mat2C { e11, e12, e21, e22 }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Mat2C::new(one, zero, zero, one)
    }

    pub fn det(&self) -> Complex64 {
        self.e11 * self.e22 - self.e12 * self.e21
    }

    pub fn trace(&self) -> Complex64 {
        self.e11 + self.e22
    }

    /// Inverse of a unimodular matrix via the adjugate.
    pub fn inverse_unimodular(&self) -> Self {
        Mat2C::new(self.e22, -self.e12, -self.e21, self.e11)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Mat2C::new(self.e11 * c, self.e12 * c, self.e21 * c, self.e22 * c)
    }

    pub fn max_abs(&self) -> f64 {
        [self.e11, self.e12, self.e21, self.e22]
            .iter()
            .map(|e| e.norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;

    fn mul(self, o: Mat2C) -> Mat2C {
        Mat2C::new(
            self.e11 * o.e11 + self.e12 * o.e21,
            self.e11 * o.e12 + self.e12 * o.e22,
            self.e21 * o.e11 + self.e22 * o.e21,
            self.e21 * o.e12 + self.e22 * o.e22,
        )
    }
}

impl Sub for Mat2C {
    type Output = Mat2C;

    fn sub(self, o: Mat2C) -> Mat2C {
        Mat2C::new(
            self.e11 - o.e11,
            self.e12 - o.e12,
            self.e21 - o.e21,
            self.e22 - o.e22,
        )
    }
}

/// A parameter point `(M, z)` with `z = tr rho(ab^-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepPoint {
    m: Complex64,
    z: Complex64,
}

impl RepPoint {
    pub fn new(m: Complex64, z: Complex64) -> Result<Self> {
        if m.norm() == 0.0 || !m.is_finite() {
            return Err(Error::ZeroMeridian);
        }
        Ok(RepPoint { m, z })
    }

    pub fn m(&self) -> Complex64 {
        self.m
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn with_z(&self, z: Complex64) -> Self {
        RepPoint { m: self.m, z }
    }

    pub fn with_m(&self, m: Complex64) -> Result<Self> {
        RepPoint::new(m, self.z)
    }

    /// Lower-left entry of `rho(b)`.
    pub fn r(&self) -> Complex64 {
        2.0 - self.z
    }

    /// `M^2 + M^-2`, the only way the Riley polynomials depend on `M`.
    pub fn m2_sum(&self) -> Complex64 {
        let m2 = self.m * self.m;
        m2 + m2.inv()
    }

    /// `x = tr rho(a) = M + M^-1`.
    pub fn x(&self) -> Complex64 {
        self.m + self.m.inv()
    }

    /// `y = tr rho(ab) = M^2 + M^-2 + 2 - z`.
    pub fn y(&self) -> Complex64 {
        self.m2_sum() + 2.0 - self.z
    }
}

pub fn rho_generators(pt: &RepPoint) -> (Mat2C, Mat2C) {
    let m = pt.m;
    let minv = m.inv();
    let zero = Complex64::new(0.0, 0.0);
    let a = Mat2C::new(m, Complex64::new(1.0, 0.0), zero, minv);
    let b = Mat2C::new(m, zero, pt.r(), minv);
    (a, b)
}

pub fn rho_word(u: &FreeWord, pt: &RepPoint) -> Mat2C {
    let (a, b) = rho_generators(pt);
    let (a_inv, b_inv) = (a.inverse_unimodular(), b.inverse_unimodular());
    u.letters().iter().fold(Mat2C::identity(), |acc, l| {
        let g = match (l.gen, l.inverted) {
            (Generator::A, false) => a,
            (Generator::A, true) => a_inv,
            (Generator::B, false) => b,
            (Generator::B, true) => b_inv,
        };
        acc * g
    })
}

fn require_admissible(w: &FreeWord) -> Result<()> {
    if w.is_admissible() {
        Ok(())
    } else {
        Err(Error::InadmissibleWord(w.to_ascii()))
    }
}

/// `w11 - (M - M^-1) w12`; vanishes exactly at nonabelian representations of
/// `<a, b | wa = bw>`.
pub fn riley_poly_value(w: &FreeWord, pt: &RepPoint) -> Result<Complex64> {
    require_admissible(w)?;
    let rw = rho_word(w, pt);
    Ok(rw.e11 - (pt.m - pt.m.inv()) * rw.e12)
}

/// `w11 - (M w12 - M^-1 r^-1 w21)`.
pub fn le_poly_value(w: &FreeWord, pt: &RepPoint) -> Result<Complex64> {
    require_admissible(w)?;
    let r = pt.r();
    if r.norm() == 0.0 {
        return Err(Error::AbelianPole);
    }
    let rw = rho_word(w, pt);
    Ok(rw.e11 - (pt.m * rw.e12 - pt.m.inv() * r.inv() * rw.e21))
}

/// `C = [0 -1/s; s 0]` with `s^2 = r`. Satisfies `C^2 = -I` and
/// `C rho(u) = rho(tilde u) C`.
pub fn mednykh_matrix(sqrt_r: Complex64) -> Mat2C {
    let zero = Complex64::new(0.0, 0.0);
    Mat2C::new(zero, -sqrt_r.inv(), sqrt_r, zero)
}

/// `-tr(rho(bw) C) / sqrt(r)` with the principal square root.
pub fn mednykh_poly_value(w: &FreeWord, pt: &RepPoint) -> Result<Complex64> {
    mednykh_poly_value_with_root(w, pt, pt.r().sqrt())
}

/// Same as [`mednykh_poly_value`] for an explicit choice of `sqrt(r)`; the
/// result does not depend on the branch.
pub fn mednykh_poly_value_with_root(
    w: &FreeWord,
    pt: &RepPoint,
    sqrt_r: Complex64,
) -> Result<Complex64> {
    require_admissible(w)?;
    if pt.r().norm() == 0.0 || sqrt_r.norm() == 0.0 {
        return Err(Error::AbelianPole);
    }
    let (_, b) = rho_generators(pt);
    let c = mednykh_matrix(sqrt_r);
    let tr = (b * rho_word(w, pt) * c).trace();
    Ok(-tr / sqrt_r)
}

/// Largest entry of `|rho(w^n a) - rho(b w^n)|`.
pub fn relator_residual(w: &FreeWord, n: i64, pt: &RepPoint) -> f64 {
    let (a, b) = rho_generators(pt);
    let wn = rho_word(&w.pow(n), pt);
    (wn * a - b * wn).max_abs()
}
