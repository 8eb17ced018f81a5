//! Solvers for two-player zero-sum matrix games played over probability
//! simplices.
//!
//! The row player `x` maximizes and the column player `y` minimizes the
//! bilinear payoff `F(x, y) = xᵀAy`. Both players move simultaneously with
//! the convex step `v ← v + α(v̄ − v)`, where `v̄` solves one of three inner
//! problems:
//!
//! - [`Method::ConditionalGradient`]: a linear minimization over the simplex,
//!   answered by a vertex ([`cg_vertex`]).
//! - [`Method::EuclideanPenalized`]: linearization plus `β‖v − vᵏ‖²`, solved
//!   exactly by an active-set λ-equalization ([`euclidean_prox`]).
//! - [`Method::KlPenalized`]: linearization plus `β·KL(v ‖ vᵏ)`, solved by a
//!   normalized multiplicative update ([`kl_prox`]).
//!
//! Running means of the iterates are tracked and each recorded iteration
//! carries the reward `F(x̂, ŷ)`, the best-response bounds and the duality gap.
//!
//! ```
//! use advgrad::{run, Method, RewardMatrix, SolverConfig};
//!
//! let game = RewardMatrix::rps();
//! let config = SolverConfig::new(Method::KlPenalized, 0.01)
//!     .with_beta(0.25)
//!     .with_iterations(1000);
//! let result = run(&game, &config).unwrap();
//! let last = result.records.last().unwrap();
//! assert!(last.lower <= last.reward && last.reward <= last.upper);
//! ```

mod error;
pub mod game;
pub mod io;
pub mod simplex;
pub mod solver;
pub mod subproblems;

pub use error::{Error, Result};
pub use game::{kkt_satisfied, RewardMatrix};
pub use io::{load_matrix, parse_matrix, read_trace, write_trace, TraceRow, TraceTable};
pub use simplex::SimplexVector;
pub use solver::{
    bounds, run, running_mean, step, InitialPoint, IterationRecord, Method, RunResult,
    SolverConfig,
};
pub use subproblems::{
    cg_vertex, euclidean_prox, kl_prox, PenaltyWeight, PlayerSense, SubproblemResult,
};
