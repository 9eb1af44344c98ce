//! Exact verification of truncated hypergeometric congruences.
//!
//! The crate computes truncated central-binomial sums and Morita p-adic
//! Gamma values in Z/p^k with exact integer arithmetic, then compares the
//! two sides of each congruence family and reports structured verdicts.
//! Every congruence check runs the summation twice, once directly in the
//! residue ring and once over the rationals, and refuses to answer if the
//! routes disagree.
//!
//! Layout:
//! - [`padic`]: rationals, valuations, residue rings, reduction.
//! - [`gamma`]: the p-adic Gamma function and its product kernels.
//! - [`series`]: truncated sums, term ratios, and the exact identities.
//! - [`verify`]: congruence checkers, verdicts, and the identity suite.

pub mod error;
pub mod gamma;
pub mod padic;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use gamma::{gamma_p, gamma_p_int, s_p, GammaEvalPlan, GammaStrategy};
pub use padic::{
    congruent, is_prime, rational, reduce, valuation, PadicContext, Rational, Residue, Valuation,
};
pub use verify::{
    check_family, run_identity_suite, CongruenceVerdict, Family, IdentityName, IdentityVerdict,
};
