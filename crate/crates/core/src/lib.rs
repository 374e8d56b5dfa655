// Negated comparisons like `!(x > 0)` are used on purpose in validation:
// they treat NaN as failing.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Chiral-oscillator dynamics library.
//!
//! The harmonic oscillator decomposes into a pair of first-order, two-component
//! oscillators of opposite rotation sense ("chirality"). This crate implements
//! that decomposition and the machinery built on it:
//!
//! * [`oscillator`] -- HO and chiral-oscillator Lagrangians, brackets,
//!   Hamiltonians, analytic evolution and angular momentum;
//! * [`soldering`] -- fusing the two chiralities back into a bi-dimensional HO
//!   through an auxiliary gauge field;
//! * [`invariants`] -- classical phase invariants constant along the motion;
//! * [`zeeman`] -- the charged oscillator in a magnetic field: chiral
//!   reduction, invariant phases, level splitting;
//! * [`spectrum`] -- a truncated chiral-Fock-basis diagonalization serving as
//!   the quantum ground truth for the splitting;
//! * [`duality`] -- the electric-magnetic duality analogue and its generator;
//! * [`numerics`] / [`field`] -- adaptive Runge-Kutta integration, the Ermakov
//!   auxiliary equation, quadrature, finite differences, field profiles.
//!
//! All numeric code is generic over the scalar type via [`scalar::Scalar`]
//! (`f32` or `f64`); the `*64` aliases below pin the common `f64` choice.

pub mod duality;
pub mod field;
pub mod invariants;
pub mod numerics;
pub mod oscillator;
pub mod params;
pub mod scalar;
pub mod soldering;
pub mod spectrum;
pub mod vec2;
pub mod zeeman;

pub use oscillator::{Chirality, CoState, HoState, RotationClass};
pub use params::PhysicalParams;
pub use scalar::Scalar;

/// `f64` instantiations of the core types.
pub type Params64 = params::PhysicalParams<f64>;
pub type CoState64 = oscillator::CoState<f64>;
pub type HoState64 = oscillator::HoState<f64>;
pub type Trajectory64 = numerics::Trajectory<f64>;
pub type IntegratorConfig64 = numerics::IntegratorConfig<f64>;
pub type FieldProfile64 = field::FieldProfile<f64>;
pub type TabulatedField64 = field::TabulatedField<f64>;
pub type EbState64 = duality::EbState<f64>;
pub type SymMatrix64 = spectrum::SymMatrix<f64>;
pub type SpectrumResult64 = spectrum::SpectrumResult<f64>;
