//! Exact computation of the Mertens function `M(x) = Σ_{n ≤ x} μ(n)`.
//!
//! The top-level identity splits `M(x)` into `2·M(√x)` minus two double sums
//! over `μ(m1)μ(m2)⌊x/(m1·m2)⌋`: one where a variable exceeds `v ≈ x^{2/5}`
//! ([`nonfree`]), and one where both are at most `v` ([`free`]). The second is
//! evaluated on small rectangles by a linear model of `x/(mn)` plus exact
//! corrections driven by a Diophantine approximation, which is what brings the
//! running time down to roughly `x^{3/5}`.
//!
//! Every routine is integer-exact and has a brute-force counterpart that the
//! test-suite checks it against.

pub mod arith;
pub mod divisor_sum;
pub mod driver;
mod error;
pub mod free;
pub mod nonfree;
pub mod prefix;
pub mod sieve;

pub use driver::{choose_v, mertens, Mode, RunConfig, RunReport};
pub use error::{Error, Result};
