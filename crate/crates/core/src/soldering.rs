//! Soldering of two opposite-chirality oscillators into one bi-dimensional HO.
//!
//! Under the common shift `x -> x + eta, y -> y + eta` the two chiral
//! Lagrangians vary by `delta L_pm = pm M w (eta x zdot) - M w^2 (eta . z)`
//! (Noether form, vanishing on-shell). Coupling an auxiliary vector `B_a` to
//! the combined current
//!
//! ```text
//! C_a = xdot_a + w eps_{ab} x_b - ydot_a + w eps_{ab} y_b
//! ```
//!
//! and completing the square with `-M w^2 B^2` yields a soldered Lagrangian
//!
//! ```text
//! L = L_+(x) + L_-(y) - M w B_a C_a - M w^2 B_a B_a,
//! ```
//!
//! gauge-invariant under `(x, y, B) -> (x+eta, y+eta, B - eps eta)` up to the
//! total time derivative `(M w / 2) d/dt (w x eta)` -- exactly invariant when
//! `xdot = ydot` (or eta is constant and parallel to `wdot`). Eliminating `B`
//! by its equation of motion leaves
//!
//! ```text
//! L_elim = (M/4)(wdot^2 - w^2 w_a^2) + (M w / 4) d/dt (w x s),  w = x - y, s = x + y,
//! ```
//!
//! i.e. the bi-dimensional HO in the difference variable `w` with effective
//! mass `M/2`, modulo the boundary term returned by
//! [`elimination_boundary_term`].

use crate::numerics::{NumericsError, Trajectory};
use crate::oscillator::{co_lagrangian, Chirality, CoState};
use crate::params::PhysicalParams;
use crate::scalar::Scalar;
use crate::vec2::{self, Vec2};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SolderError {
    #[error("soldering expects x with chirality + and y with chirality -")]
    ChiralityMismatch,
    #[error("soldered trajectories must share the time grid")]
    GridMismatch,
    #[error("soldered trajectories must be two-dimensional")]
    BadDimension,
}

/// Two opposite-chirality trajectories on a shared time grid.
#[derive(Debug, Clone)]
pub struct SolderPair<T> {
    x_traj: Trajectory<T>,
    y_traj: Trajectory<T>,
}

impl<T: Scalar> SolderPair<T> {
    pub fn new(x_traj: Trajectory<T>, y_traj: Trajectory<T>) -> Result<Self, SolderError> {
        if x_traj.dim() != 2 || y_traj.dim() != 2 {
            return Err(SolderError::BadDimension);
        }
        if x_traj.times() != y_traj.times() {
            return Err(SolderError::GridMismatch);
        }
        Ok(Self { x_traj, y_traj })
    }

    pub fn x_traj(&self) -> &Trajectory<T> {
        &self.x_traj
    }

    pub fn y_traj(&self) -> &Trajectory<T> {
        &self.y_traj
    }
}

fn check_chiralities<T: Scalar>(x: &CoState<T>, y: &CoState<T>) -> Result<(), SolderError> {
    if x.chirality != Chirality::Plus || y.chirality != Chirality::Minus {
        return Err(SolderError::ChiralityMismatch);
    }
    Ok(())
}

/// Gauge variation of one chiral Lagrangian under `delta z = eta`:
/// `delta L_pm = pm M w (eta x zdot) - M w^2 (eta . z)`.
/// Vanishes on-shell (`zdot_a = -(pm) w eps_{ab} z_b`) and is linear in eta.
pub fn gauge_variation<T: Scalar>(
    z: &CoState<T>,
    zdot: Vec2<T>,
    eta: Vec2<T>,
    params: &PhysicalParams<T>,
) -> T {
    let w = params.omega;
    let sign: T = z.chirality.sign();
    params.mass * w * (sign * vec2::cross(eta, zdot) - w * vec2::dot(eta, z.coords()))
}

/// The soldering current `C_a` contracted with `B_a` in the soldered Lagrangian.
pub fn soldering_constraint<T: Scalar>(
    x: &CoState<T>,
    y: &CoState<T>,
    xdot: Vec2<T>,
    ydot: Vec2<T>,
    params: &PhysicalParams<T>,
) -> Vec2<T> {
    let w = params.omega;
    let wdot = vec2::sub(xdot, ydot);
    let s = vec2::add(x.coords(), y.coords());
    vec2::add(wdot, vec2::scale(w, vec2::eps(s)))
}

/// Soldered Lagrangian `L_+(x) + L_-(y) - M w B.C - M w^2 B.B`.
pub fn soldered_lagrangian<T: Scalar>(
    x: &CoState<T>,
    y: &CoState<T>,
    xdot: Vec2<T>,
    ydot: Vec2<T>,
    baux: Vec2<T>,
    params: &PhysicalParams<T>,
) -> Result<T, SolderError> {
    check_chiralities(x, y)?;
    let w = params.omega;
    let c = soldering_constraint(x, y, xdot, ydot, params);
    Ok(co_lagrangian(x, xdot, params) + co_lagrangian(y, ydot, params)
        - params.mass * w * vec2::dot(baux, c)
        - params.mass * w * w * vec2::norm_sq(baux))
}

/// Apply the soldering gauge transformation
/// `(x, y, B) -> (x + eta, y + eta, B - eps eta)` (velocities untouched).
pub fn gauge_transform<T: Scalar>(
    x: &CoState<T>,
    y: &CoState<T>,
    baux: Vec2<T>,
    eta: Vec2<T>,
) -> (CoState<T>, CoState<T>, Vec2<T>) {
    let xs = CoState::new(x.x1 + eta[0], x.x2 + eta[1], x.chirality);
    let ys = CoState::new(y.x1 + eta[0], y.x2 + eta[1], y.chirality);
    let bs = vec2::sub(baux, vec2::eps(eta));
    (xs, ys, bs)
}

/// Exact change of the soldered Lagrangian under the gauge transformation
/// with parameter `eta` and parameter velocity `eta_dot`:
/// `(M w / 2)[(w x eta_dot) - (eta x wdot)]`, a pure total time derivative.
/// Zero whenever `eta_dot = 0` and `xdot = ydot`.
pub fn gauge_boundary_term<T: Scalar>(
    x: &CoState<T>,
    y: &CoState<T>,
    xdot: Vec2<T>,
    ydot: Vec2<T>,
    eta: Vec2<T>,
    eta_dot: Vec2<T>,
    params: &PhysicalParams<T>,
) -> T {
    let wvec = vec2::sub(x.coords(), y.coords());
    let wdot = vec2::sub(xdot, ydot);
    params.mass * params.omega / T::of(2)
        * (vec2::cross(wvec, eta_dot) - vec2::cross(eta, wdot))
}

/// Stationarity solution for the auxiliary vector: `B* = -C / (2 w)`.
pub fn eliminate_baux<T: Scalar>(
    x: &CoState<T>,
    y: &CoState<T>,
    xdot: Vec2<T>,
    ydot: Vec2<T>,
    params: &PhysicalParams<T>,
) -> Result<Vec2<T>, SolderError> {
    check_chiralities(x, y)?;
    let c = soldering_constraint(x, y, xdot, ydot, params);
    Ok(vec2::scale(-(T::of(2) * params.omega).recip(), c))
}

/// Soldered Lagrangian with the eliminated `B*` substituted back,
/// `L_+(x) + L_-(y) + (M/4) C.C`.
pub fn soldered_lagrangian_reduced<T: Scalar>(
    x: &CoState<T>,
    y: &CoState<T>,
    xdot: Vec2<T>,
    ydot: Vec2<T>,
    params: &PhysicalParams<T>,
) -> Result<T, SolderError> {
    let baux = eliminate_baux(x, y, xdot, ydot, params)?;
    soldered_lagrangian(x, y, xdot, ydot, baux, params)
}

/// The HO Lagrangian in the difference variable the reduction aims at:
/// `(M/4)(wdot^2 - omega^2 w^2)` (effective mass `M/2`).
pub fn difference_ho_lagrangian<T: Scalar>(
    wvec: Vec2<T>,
    wdot: Vec2<T>,
    params: &PhysicalParams<T>,
) -> T {
    let w = params.omega;
    params.mass / T::of(4) * (vec2::norm_sq(wdot) - w * w * vec2::norm_sq(wvec))
}

/// Residual boundary term of the reduction:
/// `L_reduced - (M/4)(wdot^2 - omega^2 w^2) = (M w / 4)[(w x sdot) - (s x wdot)]`,
/// the total derivative `(M w / 4) d/dt (w x s)` with `s = x + y`.
/// Vanishes at zero velocities.
pub fn elimination_boundary_term<T: Scalar>(
    x: &CoState<T>,
    y: &CoState<T>,
    xdot: Vec2<T>,
    ydot: Vec2<T>,
    params: &PhysicalParams<T>,
) -> T {
    let wvec = vec2::sub(x.coords(), y.coords());
    let s = vec2::add(x.coords(), y.coords());
    let wdot = vec2::sub(xdot, ydot);
    let sdot = vec2::add(xdot, ydot);
    params.mass * params.omega / T::of(4)
        * (vec2::cross(wvec, sdot) - vec2::cross(s, wdot))
}

/// Pointwise difference trajectory `w_a(t) = x_a(t) - y_a(t)`; on chiral
/// solutions it satisfies `wddot + omega^2 w = 0`.
pub fn solder<T: Scalar>(pair: &SolderPair<T>) -> Result<Trajectory<T>, NumericsError<T>> {
    let xt = pair.x_traj();
    let yt = pair.y_traj();
    let mut samples = Vec::with_capacity(xt.len() * 2);
    for i in 0..xt.len() {
        let xs = xt.sample(i);
        let ys = yt.sample(i);
        samples.push(xs[0] - ys[0]);
        samples.push(xs[1] - ys[1]);
    }
    Trajectory::new(xt.times().to_vec(), samples, 2, "solder")
}

/// Conserved energy of the soldered oscillator, `(M/4) wdot^2 + (M w^2/4) w^2`.
pub fn soldered_energy<T: Scalar>(wvec: Vec2<T>, wdot: Vec2<T>, params: &PhysicalParams<T>) -> T {
    let w = params.omega;
    params.mass / T::of(4) * (vec2::norm_sq(wdot) + w * w * vec2::norm_sq(wvec))
}
