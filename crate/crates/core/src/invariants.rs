//! Classical phase (angle) invariants of the chiral and harmonic oscillators.
//!
//! The coordinate arctangent alone is not constant under the rotation; the
//! conserved combination carries an explicit time term whose sign is fixed by
//! the rotation convention (chirality + rotates counter-clockwise, so its raw
//! angle grows like `+omega t`):
//!
//! ```text
//! I+ = atan2(x2, x1) - omega t
//! I- = atan2(x1, x2) - omega t     (x1 <-> x2 interchange of I+)
//! ```
//!
//! Both are constant along their own dynamics. Note
//! `I- = pi/2 - [atan2(x2, x1) + omega t]` (mod 2 pi): relative to I+ the
//! interchange flips the sign of the angle and of the time term together.
//! The HO angle invariant is `atan2(p, m omega x) + omega t`.
//!
//! Values are principal-branch angles; [`unwrap_angles`] removes the 2-pi
//! jumps along a densely sampled trajectory (branch tracking).

use crate::oscillator::{Chirality, CoState};
use crate::params::PhysicalParams;
use crate::scalar::Scalar;
use crate::vec2::{self, Vec2};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum InvariantError {
    #[error("phase invariant undefined at the origin of phase space")]
    UndefinedAtOrigin,
}

/// One branch-tracked invariant sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSample<T> {
    pub t: T,
    pub value: T,
}

/// Chiral-oscillator invariant `I_pm` at time `t`.
pub fn co_invariant<T: Scalar>(
    state: &CoState<T>,
    t: T,
    params: &PhysicalParams<T>,
) -> Result<T, InvariantError> {
    if state.x1 == T::zero() && state.x2 == T::zero() {
        return Err(InvariantError::UndefinedAtOrigin);
    }
    let raw = match state.chirality {
        Chirality::Plus => state.x2.atan2(state.x1),
        Chirality::Minus => state.x1.atan2(state.x2),
    };
    Ok(raw - params.omega * t)
}

/// HO angle invariant `atan2(p, m omega x) + omega t` for an oscillator of
/// the given mass (the frequency comes from `params`).
pub fn ho_invariant<T: Scalar>(
    x: T,
    p: T,
    t: T,
    mass: T,
    params: &PhysicalParams<T>,
) -> Result<T, InvariantError> {
    if x == T::zero() && p == T::zero() {
        return Err(InvariantError::UndefinedAtOrigin);
    }
    Ok(p.atan2(mass * params.omega * x) + params.omega * t)
}

/// Soldered invariant: the pair of HO angle invariants of the difference
/// oscillator `w = x - y` with momentum `M (xdot - ydot) / 2` and mass `M/2`,
/// one per component. Components where `(w_i, wdot_i) = (0, 0)` are
/// individually undefined.
pub fn soldered_invariant<T: Scalar>(
    x: &CoState<T>,
    y: &CoState<T>,
    xdot: Vec2<T>,
    ydot: Vec2<T>,
    t: T,
    params: &PhysicalParams<T>,
) -> (Result<T, InvariantError>, Result<T, InvariantError>) {
    let wvec = vec2::sub(x.coords(), y.coords());
    let wdot = vec2::sub(xdot, ydot);
    let half_mass = params.mass / T::of(2);
    let comp = |i: usize| ho_invariant(wvec[i], half_mass * wdot[i], t, half_mass, params);
    (comp(0), comp(1))
}

/// Branch-tracked invariant series: principal-branch values unwrapped into a
/// continuous angle sequence and paired with their times.
pub fn branch_tracked_series<T: Scalar>(times: &[T], values: &[T]) -> Vec<InvariantSample<T>> {
    assert_eq!(times.len(), values.len(), "times and values must align");
    unwrap_angles(values)
        .into_iter()
        .zip(times.iter())
        .map(|(value, &t)| InvariantSample { t, value })
        .collect()
}

/// Remove 2-pi branch jumps from an angle series: each output differs from
/// its predecessor by at most pi.
pub fn unwrap_angles<T: Scalar>(values: &[T]) -> Vec<T> {
    let two_pi = T::of(2) * T::PI();
    let mut out = Vec::with_capacity(values.len());
    let mut offset = T::zero();
    for (i, &v) in values.iter().enumerate() {
        if i > 0 {
            let prev = out[i - 1];
            let mut adjusted = v + offset;
            while adjusted - prev > T::PI() {
                offset -= two_pi;
                adjusted -= two_pi;
            }
            while adjusted - prev < -T::PI() {
                offset += two_pi;
                adjusted += two_pi;
            }
            out.push(adjusted);
        } else {
            out.push(v);
        }
    }
    out
}

/// Max absolute deviation from the first element.
pub fn max_drift<T: Scalar>(values: &[T]) -> T {
    match values.first() {
        None => T::zero(),
        Some(&v0) => values
            .iter()
            .map(|&v| (v - v0).abs())
            .fold(T::zero(), |a, b| a.max(b)),
    }
}
