//! Roots of the Riley polynomial at fixed cone angle, and continuation of the
//! geometric root in the cone angle.

mod branch;
mod roots;

pub use branch::{
    admissible_roots, find_alpha_k, geometric_branch, geometric_branch_with, imcond, Branch,
    BranchPoint, CandidateStatus, SeedCandidate, TrackOptions, DEFAULT_MIN_STEP, DEFAULT_STEP,
};
pub use roots::{poly_roots, poly_roots_from, refine_roots, residual_bound};
