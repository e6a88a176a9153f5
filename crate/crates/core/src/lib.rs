//! One-round, p-processor similarity-join protocols on the Hamming cube
//! `{0,1}^d`.
//!
//! The crate has three layers:
//!
//! * exact combinatorics of the cube: distances, balls, binomials, edge
//!   counts of the similarity graphs at threshold `r`, and a brute-force
//!   join oracle ([`cube`]);
//! * protocol constructors and input generators: randomized ball
//!   edge-coverings, the universal all-pairs scheme, ball-hashing,
//!   subcube splitting, anchor points over a greedy covering code
//!   ([`covering`]), and seeded input distributions including the hard
//!   sub-sampled-ball family ([`inputs`]);
//! * measurement and verification: per-trial overhead/coverage/replication
//!   metrics ([`metrics`]), path counting ([`paths`]), and exact or
//!   Monte-Carlo checkers for the combinatorial inequalities the protocols
//!   rely on ([`verify`]).
//!
//! Everything is deterministic given a 64-bit seed: draws, input sets, and
//! Monte-Carlo verdicts are pure functions of `(params, seed, trial)`.

pub mod covering;
pub mod cube;
pub mod error;
pub mod inputs;
pub mod metrics;
pub mod paths;
pub mod point;
pub mod ratio;
pub mod report;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use point::{BitPoint, PointSet};
pub use ratio::Ratio;
pub use report::{CheckResult, CheckStatus, VerificationReport};
