//! Riley polynomials of double twist knots, tracking of the geometric
//! representation along the cone angle, and cone-manifold volumes obtained
//! by integrating the longitude length.
//!
//! The crate is organised bottom-up:
//!
//! * [`chebyshev`]: Chebyshev polynomials of the second kind `S_j`.
//! * [`words`]: reduced words in the free group on `a`, `b`, two-bridge
//!   relators and the double twist relators `J(k, 2n)`.
//! * [`slrep`]: the normalised nonabelian `SL2(C)` representation and the
//!   Riley / Le / Mednykh polynomials of a one-relator group `<a, b | wa = bw>`.
//! * [`riley`]: closed, recursive and coefficient forms of the Riley
//!   polynomial of `J(k, 2n)`.
//! * [`solver`]: polynomial roots and continuation of the geometric root.
//! * [`volume`]: longitude eigenvalue, Schlaefli integrand and volumes.

pub mod chebyshev;
pub mod error;
pub mod poly;
pub mod quadrature;
pub mod riley;
pub mod slrep;
pub mod solver;
pub mod volume;
pub mod words;

pub use num_complex::Complex64;

pub use chebyshev::{coeffs_s, eval_pair, eval_s, ChebPair};
pub use error::{Error, Result};
pub use poly::ZPoly;
pub use riley::{
    prop_w_matrix, riley_even, riley_odd, riley_recursive, riley_zpoly, riley_zpoly_recursive,
    PhiForm, RileyCoefficients,
};
pub use slrep::{
    le_poly_value, mednykh_poly_value, relator_residual, rho_generators, rho_word,
    riley_poly_value, Mat2C, RepPoint,
};
pub use solver::{
    find_alpha_k, geometric_branch, poly_roots, Branch, BranchPoint, SeedCandidate, TrackOptions,
};
pub use volume::{
    cone_volume, cone_volume_with, integrand, longitude_l, volume_curve, volume_curve_with,
    QuadRule, VolumeOptions, VolumeResult,
};
pub use words::{
    jk_word, twobridge_word, Family, FreeWord, Generator, KnotParam, Letter, TwoBridgeParams,
};

/// Package version, recorded in CLI run records and cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
