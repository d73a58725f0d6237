//! Bi-objective optimization of whole approximation sets.
//!
//! Two set-based optimizers are built on a real-valued GOMEA:
//!
//! * [`uhvea`] evolves `p` concatenated solutions and maximizes the uncrowded
//!   hypervolume of the set.
//! * [`bezea`] evolves the control points of a Bézier curve in decision space, samples
//!   `p` solutions along it and maximizes the hypervolume of their navigational subset.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.

pub mod benchmarks;
pub mod bezea;
pub mod bezier;
pub mod error;
pub mod gomea;
pub mod indicators;
pub mod problem;
pub mod scalar;
pub mod uhvea;

pub use error::{Error, Result};
pub use problem::{Dominance, EvaluationCounter, MoProblem, Objectives, Solution};
pub use scalar::Scalar;

pub type Objectives64 = problem::Objectives<f64>;
pub type Solution64 = problem::Solution<f64>;
pub type ReferencePoint64 = indicators::ReferencePoint<f64>;
pub type ControlPolygon64 = bezier::ControlPolygon<f64>;
pub type BezierSolutionSet64 = bezier::BezierSolutionSet<f64>;
pub type NavResult64 = bezier::NavResult<f64>;
pub type Individual64 = gomea::Individual<f64>;
pub type GomeaConfig64 = gomea::GomeaConfig<f64>;
