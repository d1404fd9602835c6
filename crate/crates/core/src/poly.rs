//! Dense univariate polynomials with complex coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Coefficients whose magnitude is at most this fraction of the largest
/// coefficient are treated as zero when trimming the leading end.
pub const TRIM_RELATIVE: f64 = 1e-14;

/// Minimal commutative-ring interface shared by complex scalars and
/// polynomials, so that the Chebyshev and Riley recurrences are written once
/// and evaluated either numerically or over coefficient vectors.
pub trait Ring:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn constant(c: Complex64) -> Self;
}

impl Ring for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }

    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }

    fn constant(c: Complex64) -> Self {
        c
    }
}

/// First-order jet `v + d eps` with `eps^2 = 0`: evaluating a ring expression
/// at `Dual::var(z)` yields the value and the derivative at `z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: Complex64,
    pub d: Complex64,
}

impl Dual {
    pub fn var(z: Complex64) -> Self {
        Dual {
            v: z,
            d: Complex64::new(1.0, 0.0),
        }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual {
            v: self.v + o.v,
            d: self.d + o.d,
        }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual {
            v: self.v - o.v,
            d: self.d - o.d,
        }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual {
            v: self.v * o.v,
            d: self.v * o.d + self.d * o.v,
        }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual {
            v: -self.v,
            d: -self.d,
        }
    }
}

impl Ring for Dual {
    fn zero() -> Self {
        Dual::constant(Complex64::new(0.0, 0.0))
    }

    fn one() -> Self {
        Dual::constant(Complex64::new(1.0, 0.0))
    }

    fn constant(c: Complex64) -> Self {
        Dual {
            v: c,
            d: Complex64::new(0.0, 0.0),
        }
    }
}

/// A polynomial in one variable, constant term first.
///
/// The leading end is always trimmed, so the zero polynomial has no
/// coefficients at all.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZPoly {
    coeffs: Vec<Complex64>,
}

impl ZPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut p = ZPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// The monomial `z`.
    pub fn var() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> ZPoly {
        ZPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn scale(&self, c: Complex64) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// True when every coefficient has imaginary part below `tol` times the
    /// largest coefficient magnitude.
    pub fn is_real(&self, tol: f64) -> bool {
        let scale = self.max_abs_coeff();
        self.coeffs.iter().all(|c| c.im.abs() <= tol * scale)
    }

    fn trim(&mut self) {
        let scale = self.max_abs_coeff();
        if scale == 0.0 || !scale.is_finite() {
            if scale == 0.0 {
                self.coeffs.clear();
            }
            return;
        }
        while let Some(last) = self.coeffs.last() {
            if last.norm() <= TRIM_RELATIVE * scale {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() != 0.0)
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for ZPoly {
    type Output = ZPoly;

    fn add(self, rhs: ZPoly) -> ZPoly {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (a, b) in long.iter_mut().zip(short) {
            *a += b;
        }
        ZPoly::new(long)
    }
}

impl Neg for ZPoly {
    type Output = ZPoly;

    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for ZPoly {
    type Output = ZPoly;

    fn sub(self, rhs: ZPoly) -> ZPoly {
        self + (-rhs)
    }
}

impl Mul for ZPoly {
    type Output = ZPoly;

    fn mul(self, rhs: ZPoly) -> ZPoly {
        &self * &rhs
    }
}

impl Mul<&ZPoly> for &ZPoly {
    type Output = ZPoly;

    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly { coeffs: Vec::new() };
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::new(out)
    }
}

impl Ring for ZPoly {
    fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    fn one() -> Self {
        ZPoly::from_real(&[1.0])
    }

    fn constant(c: Complex64) -> Self {
        ZPoly::new(vec![c])
    }
}
