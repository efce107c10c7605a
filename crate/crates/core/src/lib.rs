//! Parallel (1+ε)-approximate solver for positive linear programs.
//!
//! The solver handles mixed packing/covering feasibility problems
//! (`Px ≤ 1, Cx ≥ 1, x ≥ 0` with nonnegative `P`, `C`) via a
//! multiplicative-weight-update iteration accelerated by a step-size
//! search, and drives pure packing / pure covering optimization through
//! an outer search over the objective bound. Graph frontends build the
//! matching, vertex cover, dominating set, densest subgraph and
//! generalized matching relaxations on top of matrix-free incidence
//! operators, so the constraint matrices never materialize.
//!
//! Exact desk-scale references (LP vertex enumeration, Hopcroft-Karp,
//! brute-force densest subgraph) live in [`oracle`] and back the test
//! suite and the `oracle` CLI subcommand.
//!
//! # Example
//!
//! The fractional matching number of a triangle is 3/2:
//!
//! ```
//! use poslp::graph::Graph;
//! use poslp::problems::{solve_problem, ProblemKind};
//! use poslp::solver::SolverConfig;
//! use std::sync::Arc;
//!
//! let g = Arc::new(Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)])?);
//! let out = solve_problem(&ProblemKind::Match, g, SolverConfig::default())?;
//! let value = out.value.unwrap();
//! assert!(value >= 0.9 * 1.5 && value <= 1.1 * 1.5);
//! # Ok::<(), poslp::Error>(())
//! ```

pub mod csb;
pub mod error;
pub mod gen;
pub mod graph;
pub mod kernels;
pub mod model;
pub mod ops;
pub mod oracle;
pub mod problems;
pub mod search;
pub mod smooth;
pub mod solver;

pub use error::{Error, Result};
pub use graph::Graph;
pub use model::{LinearOperator, MixedInstance, ObjBound, SolveMode};
pub use solver::{SolveResult, SolveStatus, Solver, SolverConfig, StepMode};
