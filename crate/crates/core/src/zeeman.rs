//! Charged oscillator in an axially symmetric magnetic field: Hamiltonian,
//! semiclassical validity, chiral reduction, invariant phase, Zeeman levels.

use crate::field::FieldProfile;
use crate::numerics::{quad, NumericsError, Trajectory};
use crate::oscillator::{co_substitution_momentum, Chirality, CoState};
use crate::params::PhysicalParams;
use crate::scalar::Scalar;
use crate::vec2::Vec2;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZeemanError<T: Scalar> {
    #[error("rho trajectory does not cover the requested span")]
    SpanNotCovered,
    #[error("rho trajectory must carry (rho, rhodot) samples")]
    BadTrajectory,
    #[error("angular momentum must be positive")]
    NonPositiveAngularMomentum,
    #[error(transparent)]
    Numerics(#[from] NumericsError<T>),
    #[error(transparent)]
    Field(#[from] crate::field::FieldError<T>),
}

/// Quantum numbers entering the phase through `n + (j + 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    pub n: u32,
    pub j: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, j: u32) -> Self {
        Self { n, j }
    }

    /// `n + (j + 1/2)`.
    pub fn weight<T: Scalar>(&self) -> T {
        T::from_u32(self.n).unwrap() + T::from_u32(self.j).unwrap() + T::lit(0.5)
    }
}

/// Source of `rho^{-2}(t)` for the phase integral.
#[derive(Debug)]
pub enum RhoInput<'a, T> {
    /// `(rho, rhodot)` trajectory from [`crate::numerics::solve_ermakov`];
    /// the integrand is sampled on its grid.
    Trajectory(&'a Trajectory<T>),
    /// Constant signed `rho^{-2}`, allowing the formal stationary branch
    /// `rho^2 = -sqrt(2)/B` where rho itself is not real.
    InverseSquared(T),
}

/// `H = p^2/2M + (M w^2/2) r^2 + (eB/2Mc)(x2 p1 - x1 p2) + (e^2 B^2/8Mc^2) r^2`.
pub fn charged_ho_hamiltonian<T: Scalar>(
    x: Vec2<T>,
    p: Vec2<T>,
    b: T,
    params: &PhysicalParams<T>,
) -> T {
    let m = params.mass;
    let w = params.omega;
    let e = params.charge;
    let c = params.light_speed;
    let r_sq = x[0] * x[0] + x[1] * x[1];
    let p_sq = p[0] * p[0] + p[1] * p[1];
    let two = T::of(2);
    let eight = T::of(8);
    p_sq / (two * m)
        + m * w * w / two * r_sq
        + e * b / (two * m * c) * (x[1] * p[0] - x[0] * p[1])
        + e * e * b * b / (eight * m * c * c) * r_sq
}

/// Smallness parameter of the semiclassical treatment, `hbar^3 B / (c M^2 e^3)`.
pub fn semiclassical_ratio<T: Scalar>(b: T, params: &PhysicalParams<T>) -> T {
    let h = params.hbar;
    let m = params.mass;
    let e = params.charge;
    h * h * h * b / (params.light_speed * m * m * e * e * e)
}

/// Effective oscillation frequency of the Bohr-model electron, `M e^4 / l^3`.
pub fn bohr_frequency<T: Scalar>(l: T, params: &PhysicalParams<T>) -> Result<T, ZeemanError<T>> {
    if !(l > T::zero()) {
        return Err(ZeemanError::NonPositiveAngularMomentum);
    }
    let e = params.charge;
    Ok(params.mass * e * e * e * e / (l * l * l))
}

/// Magnitude ratio of the paramagnetic to the potential term of the charged
/// oscillator under the Bohr-model substitutions `omega = M e^4 / l^3`,
/// `x2 p1 - x1 p2 = l`, `r^2 = r_Bohr^2` with `l = hbar` (ground state,
/// `r_Bohr = hbar^2 / M e^2`). Algebraically identical to
/// [`semiclassical_ratio`].
pub fn semiclassical_term_ratio<T: Scalar>(b: T, params: &PhysicalParams<T>) -> T {
    let m = params.mass;
    let e = params.charge;
    let c = params.light_speed;
    let l = params.hbar;
    let omega = m * e * e * e * e / (l * l * l);
    let r_bohr = params.hbar * params.hbar / (m * e * e);
    let paramagnetic = (e * b / (T::of(2) * m * c) * l).abs();
    let potential = (m / T::of(2) * omega * omega * r_bohr * r_bohr).abs();
    paramagnetic / potential
}

/// Charged-oscillator energy reduced to a single chiral sector by the
/// momentum identification `p1 = -(pm) w M x2`, `p2 = (pm) w M x1`
/// (direct substitution into the full Hamiltonian).
pub fn co_reduced_hamiltonian<T: Scalar>(state: &CoState<T>, b: T, params: &PhysicalParams<T>) -> T {
    let p = co_substitution_momentum(state, params);
    charged_ho_hamiltonian(state.coords(), p, b, params)
}

/// Invariant phase of the chiral sector,
/// `alpha_pm(t) = -(pm) [n + (j + 1/2)] (e/Mc) Int_{t0}^{t1} [B(t)/2 - rho^{-2}(t)] dt`,
/// integrated with composite Simpson on the trajectory grid (or a uniform
/// 2048-interval grid for the constant-`rho^{-2}` branch).
pub fn zeeman_phase<T: Scalar>(
    qn: QuantumNumbers,
    chirality: Chirality,
    field: &FieldProfile<T>,
    rho: RhoInput<'_, T>,
    t_span: (T, T),
    params: &PhysicalParams<T>,
) -> Result<T, ZeemanError<T>> {
    let (t0, t1) = t_span;
    if !(t1 > t0) {
        return Err(ZeemanError::Numerics(NumericsError::InvalidSpan));
    }
    field.covers(t0, t1)?;
    let two = T::of(2);
    let integral = match rho {
        RhoInput::Trajectory(traj) => {
            if traj.dim() != 2 {
                return Err(ZeemanError::BadTrajectory);
            }
            let eps = T::lit(1e-9) * (t1 - t0).abs();
            if (traj.time(0) - t0).abs() > eps || (traj.last_time() - t1).abs() > eps {
                return Err(ZeemanError::SpanNotCovered);
            }
            let mut f = Vec::with_capacity(traj.len());
            for (t, s) in traj.iter() {
                let b = field.sample(t)?;
                f.push(b / two - (s[0] * s[0]).recip());
            }
            quad::simpson(traj.times(), &f)?
        }
        RhoInput::InverseSquared(inv_sq) => {
            if !inv_sq.is_finite() {
                return Err(ZeemanError::Numerics(NumericsError::InvalidInput(
                    "rho^{-2} must be finite",
                )));
            }
            let n = 2048usize;
            let h = (t1 - t0) / T::from_usize(n).unwrap();
            let mut ts = Vec::with_capacity(n + 1);
            let mut f = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let t = if i == n { t1 } else { t0 + h * T::from_usize(i).unwrap() };
                ts.push(t);
                f.push(field.sample(t)? / two - inv_sq);
            }
            quad::simpson(&ts, &f)?
        }
    };
    let sign: T = chirality.sign();
    let weight: T = qn.weight();
    Ok(-sign * weight * params.charge / (params.mass * params.light_speed) * integral)
}

/// Zeeman doublet `E_pm = (n + 1/2) hbar w (pm) [n + (j + 1/2)] hbar e B / (M c)`;
/// returned as `(E_plus, E_minus)`. The `hbar` on the shift makes it an energy.
pub fn zeeman_levels<T: Scalar>(qn: QuantumNumbers, b: T, params: &PhysicalParams<T>) -> (T, T) {
    let e0 = unperturbed_level(qn.n, params);
    let weight: T = qn.weight();
    let shift = weight * params.hbar * params.charge * b / (params.mass * params.light_speed);
    (e0 + shift, e0 - shift)
}

/// Unshifted level `(n + 1/2) hbar omega`.
pub fn unperturbed_level<T: Scalar>(n: u32, params: &PhysicalParams<T>) -> T {
    (T::from_u32(n).unwrap() + T::lit(0.5)) * params.hbar * params.omega
}

/// Level shifted by the phase route: `(n + 1/2) hbar omega - hbar dalpha/dt`.
pub fn level_from_phase_rate<T: Scalar>(n: u32, dalpha_dt: T, params: &PhysicalParams<T>) -> T {
    unperturbed_level(n, params) - params.hbar * dalpha_dt
}
