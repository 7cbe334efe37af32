//! 0-1 programs for the closest identity/antagonism subelection, an exact
//! branch-and-bound backend, and LP-file export.

mod build;
mod lp;
mod model;
mod solver;

pub use build::{build_hidden_an, build_hidden_id, build_max_an, build_max_id, decode_witness};
pub use lp::{export_lp, parse_lp};
pub use model::{Cmp, IlpModel, LinearConstraint, Objective, ProblemKind, Sense, VarTag};
pub use solver::{solve, IlpSolution, SolveStatus};
