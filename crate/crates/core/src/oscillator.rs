//! Harmonic and chiral oscillator models.
//!
//! The one-dimensional HO `L = (M/2)(xdot^2 - omega^2 x^2)` is rewritten in
//! first-order form with an auxiliary variable and relabelled by a proper or
//! improper rotation into a pair of first-order, two-component oscillators
//! rotating in opposite senses (chirality + / -):
//!
//! ```text
//! L_pm = (M/2)(pm omega eps_{ab} x_a xdot_b - omega^2 x_a x_a),   eps12 = +1
//! ```
//!
//! The symplectic structure gives `{x_a, x_b}_pm = -(pm) eps_{ab} / (omega M)`
//! and both chiralities share the Hamiltonian `H = (M omega^2 / 2)(x1^2 + x2^2)`.
//! Combining bracket and Hamiltonian, chirality + rotates counter-clockwise
//! (`xdot1 = -omega x2`, `xdot2 = +omega x1`) and chirality - clockwise; this
//! sign convention is fixed here once and relied on everywhere else.

use crate::params::PhysicalParams;
use crate::scalar::Scalar;
use crate::vec2::{self, Vec2};

/// Rotation sense of a chiral oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chirality {
    /// Counter-clockwise rotor; upper sign in `L_pm`.
    Plus,
    /// Clockwise rotor; lower sign.
    Minus,
}

impl Chirality {
    /// `+1` for `Plus`, `-1` for `Minus`.
    pub fn sign<T: Scalar>(self) -> T {
        match self {
            Chirality::Plus => T::one(),
            Chirality::Minus => -T::one(),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }
}

/// Configuration of one chiral oscillator: the internal plane point plus its
/// rotation sense.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoState<T> {
    pub x1: T,
    pub x2: T,
    pub chirality: Chirality,
}

impl<T: Scalar> CoState<T> {
    pub fn new(x1: T, x2: T, chirality: Chirality) -> Self {
        Self { x1, x2, chirality }
    }

    pub fn coords(&self) -> Vec2<T> {
        [self.x1, self.x2]
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    /// Mirror partner: flip chirality together with the x2 sign.
    pub fn mirrored(&self) -> Self {
        Self::new(self.x1, -self.x2, self.chirality.flipped())
    }
}

/// Phase-space point of the plain 1-D harmonic oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoState<T> {
    pub x: T,
    pub p: T,
}

/// Relabelling class for the first-order form: determinant +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationClass {
    Proper,
    Improper,
}

/// `L = (M/2)(xdot^2 - omega^2 x^2)`.
pub fn ho_lagrangian<T: Scalar>(x: T, xdot: T, params: &PhysicalParams<T>) -> T {
    let w = params.omega;
    params.mass / T::of(2) * (xdot * xdot - w * w * x * x)
}

/// Symmetrised first-order form `L = (M/2)(L xdot - x Ldot - L^2 - omega^2 x^2)`
/// with auxiliary variable `lambda` (on-shell `lambda = xdot`).
pub fn first_order_lagrangian<T: Scalar>(
    x: T,
    xdot: T,
    lambda: T,
    lambda_dot: T,
    params: &PhysicalParams<T>,
) -> T {
    let w = params.omega;
    params.mass / T::of(2)
        * (lambda * xdot - x * lambda_dot - lambda * lambda - w * w * x * x)
}

/// Invert the relabelling: given `(x, lambda)` and the rotation angle, return
/// the internal-plane coordinates `(x1, x2)` such that the class's 2x2 matrix
/// maps `(x1, x2)` back to `(x, lambda/omega)`.
///
/// Proper class is the rotation `[[cos, sin], [-sin, cos]]` (det +1); improper
/// is `[[sin, cos], [cos, -sin]]` (det -1, its own inverse).
pub fn decompose_ho<T: Scalar>(
    x: T,
    lambda: T,
    angle: T,
    class: RotationClass,
    params: &PhysicalParams<T>,
) -> (T, T) {
    let u = x;
    let v = lambda / params.omega;
    let (s, c) = angle.sin_cos();
    match class {
        // inverse of [[c, s], [-s, c]] is its transpose
        RotationClass::Proper => (c * u - s * v, s * u + c * v),
        // [[s, c], [c, -s]] is an involution
        RotationClass::Improper => (s * u + c * v, c * u - s * v),
    }
}

/// `L_pm = (M/2)(pm omega eps_{ab} x_a xdot_b - omega^2 x_a x_a)`.
pub fn co_lagrangian<T: Scalar>(state: &CoState<T>, xdot: Vec2<T>, params: &PhysicalParams<T>) -> T {
    let w = params.omega;
    let x = state.coords();
    let sign: T = state.chirality.sign();
    params.mass / T::of(2) * (sign * w * vec2::cross(x, xdot) - w * w * vec2::norm_sq(x))
}

/// Basic bracket `{x_a, x_b}_pm = -(pm) eps_{ab} / (omega M)`; indices are 1-based.
pub fn co_bracket<T: Scalar>(
    alpha: usize,
    beta: usize,
    chirality: Chirality,
    params: &PhysicalParams<T>,
) -> T {
    assert!(
        (1..=2).contains(&alpha) && (1..=2).contains(&beta),
        "bracket indices must be 1 or 2"
    );
    let eps = match (alpha, beta) {
        (1, 2) => T::one(),
        (2, 1) => -T::one(),
        _ => T::zero(),
    };
    let sign: T = chirality.sign();
    -sign * eps / (params.omega * params.mass)
}

/// `H = (M omega^2 / 2)(x1^2 + x2^2)`, identical for both chiralities.
pub fn co_hamiltonian<T: Scalar>(state: &CoState<T>, params: &PhysicalParams<T>) -> T {
    let w = params.omega;
    params.mass * w * w / T::of(2) * vec2::norm_sq(state.coords())
}

/// Bracket equation of motion `xdot_a = {x_a, H}_pm = -(pm) omega eps_{ab} x_b`.
pub fn co_velocity<T: Scalar>(state: &CoState<T>, params: &PhysicalParams<T>) -> Vec2<T> {
    let sign: T = state.chirality.sign();
    vec2::scale(-sign * params.omega, vec2::eps(state.coords()))
}

/// Analytic evolution: rigid rotation of `(x1, x2)` by `(pm) omega t`.
/// Norm-preserving by construction.
pub fn co_evolve<T: Scalar>(state: &CoState<T>, t: T, params: &PhysicalParams<T>) -> CoState<T> {
    let sign: T = state.chirality.sign();
    let r = vec2::rotate(state.coords(), sign * params.omega * t);
    CoState::new(r[0], r[1], state.chirality)
}

/// Canonical momentum of the first-order Lagrangian,
/// `p_b = dL_pm/dxdot_b = (pm)(M omega / 2) eps_{ab} x_a`.
///
/// Carries the 1/2 of the symmetrised form. Distinct from
/// [`co_substitution_momentum`], which is the full-strength identification
/// used in the magnetic-field reduction; the two differ by a factor 2 because
/// the first-order Lagrangian is constrained.
pub fn co_canonical_momentum<T: Scalar>(state: &CoState<T>, params: &PhysicalParams<T>) -> Vec2<T> {
    let sign: T = state.chirality.sign();
    let pre = sign * params.mass * params.omega / T::of(2);
    let x = state.coords();
    // p_b = pre * eps_{ab} x_a  =>  p1 = -pre*x2, p2 = pre*x1
    [-pre * x[1], pre * x[0]]
}

/// Momentum identification consistent with the symplectic structure,
/// `p1 = -(pm) omega M x2`, `p2 = (pm) omega M x1`, used when reducing the
/// charged oscillator to a single chiral sector.
pub fn co_substitution_momentum<T: Scalar>(
    state: &CoState<T>,
    params: &PhysicalParams<T>,
) -> Vec2<T> {
    let sign: T = state.chirality.sign();
    let pre = sign * params.mass * params.omega;
    [-pre * state.x2, pre * state.x1]
}

/// Angular momentum `J_pm = eps_{ab} x_a p_b` with the canonical momentum;
/// satisfies `omega J_pm = (pm) H` identically.
pub fn angular_momentum<T: Scalar>(state: &CoState<T>, params: &PhysicalParams<T>) -> T {
    let p = co_canonical_momentum(state, params);
    vec2::cross(state.coords(), p)
}
