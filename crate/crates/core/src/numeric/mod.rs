//! Numeric side: exponential-sum systems, damped Newton, hyperplane-avoiding
//! balls, the multi-start search and coset detection.

pub mod ball;
pub mod confine;
pub mod mp;
pub mod newton;
pub mod search;
pub mod system;

pub use ball::{ball_avoiding_hyperplanes, BallSpec, Hyperplane};
pub use confine::{confinement_detect, distance_mod_kernel, Coset, CosetReport};
pub use newton::{newton_solve, newton_solve_cancellable, AttemptStatus, NewtonResult};
pub use search::{ec_search, ec_search_cancellable, AttemptRecord, SearchOptions, Solution, SolveReport};
pub use system::{compile_system, ExpSumSystem, ExpTerm, NumSystem};
