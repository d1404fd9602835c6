use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("could not parse word {input:?}: unexpected character {found:?}")]
    ParseWord { input: String, found: char },

    #[error("meridian eigenvalue M must be nonzero")]
    ZeroMeridian,

    #[error("word {0} is not admissible: need w nonempty and tilde(w) = w^-1")]
    InadmissibleWord(String),

    #[error("r = 2 - z vanishes; the Le and Mednykh forms have a pole on the abelian locus")]
    AbelianPole,

    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,

    #[error("J({k},{l}) is not hyperbolic: the seed polynomial has only real roots (trefoil or non-hyperbolic parameters)", l = 2 * .n)]
    NonHyperbolic { k: u32, n: i32 },

    #[error("root continuation is ambiguous at omega = {omega} (step reached {step:e})")]
    ContinuationAmbiguous { omega: f64, step: f64 },

    #[error(
        "the tracked root violates the branch condition at omega = {omega} (imcond = {imcond:e})"
    )]
    BranchCondition { omega: f64, imcond: f64 },

    #[error("longitude eigenvalue is degenerate (vanishing denominator) at z = {z}")]
    DegenerateLongitude { z: num_complex::Complex64 },

    #[error("negative integrand log|L| = {value:e} at omega = {omega}: branch selection failed")]
    NegativeIntegrand { omega: f64, value: f64 },

    #[error("quadrature did not converge: estimate {estimate} with error {error:e}")]
    QuadratureNotConverged { estimate: f64, error: f64 },

    #[error("the tracked geometric root never becomes real on (0, pi)")]
    AlphaKNotFound,
}

impl Error {
    /// True for errors that mean "these parameters do not describe a hyperbolic
    /// double twist knot", as opposed to numerical failures.
    pub fn is_non_hyperbolic(&self) -> bool {
        matches!(self, Error::NonHyperbolic { .. })
    }

    /// True for failures of the numerical pipeline (continuation, quadrature, ...).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ContinuationAmbiguous { .. }
                | Error::BranchCondition { .. }
                | Error::DegenerateLongitude { .. }
                | Error::NegativeIntegrand { .. }
                | Error::QuadratureNotConverged { .. }
                | Error::AlphaKNotFound
                | Error::ZeroPolynomial
        )
    }
}
