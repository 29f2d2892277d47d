//! Numerical toolkit for the Hopf soliton of the four-dimensional
//! Yang-Mills-Higgs model.
//!
//! The crate is organised around four layers:
//!
//! * [`algebra`] — Pauli/su(2) algebra, complex coordinates on R⁴ and
//!   antisymmetric form containers shared by everything else.
//! * [`hopf`] — the Hopf map S³ → S², its pulled-back forms, and three
//!   independent numerical routes to the Hopf invariant (volume-form
//!   quadrature, Chern-Simons quadrature, Gauss linking of fibers),
//!   plus the rotating-plane deformation of the map.
//! * [`fields`] — the scalar triplet φᵃ = f(r)mᵃ and gauge field
//!   Aᵃ_k = −i ∂_k mᵃ g(r) built from radial profiles, their covariant
//!   derivatives, field strengths, action density and the unbroken-U(1)
//!   boundary quantities.
//! * [`solver`] — damped Newton relaxation for the coupled radial
//!   Euler-Lagrange boundary-value problem satisfied by f and g.
//!
//! Everything is plain `f64`/`Complex64` arithmetic with no global state;
//! all evaluations are pure and safe to run from any number of threads.

pub mod algebra;
pub mod fields;
pub mod hopf;
pub mod io;
pub mod par;
pub mod solver;

#[cfg(test)]
pub(crate) mod testutil;

pub use algebra::{AdjointVector, ComplexPair, OneForm4, Point4, S2Point, TwoForm4};
pub use fields::{FieldSample, ModelParams, RadialProfile};
pub use solver::{SolveReport, SolverConfig};
