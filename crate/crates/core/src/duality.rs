//! Electric-magnetic duality analogue on the oscillator.
//!
//! In the normalization `M = omega = 1` the HO variables `E = xdot, B = x`
//! satisfy the identity `Bdot - E = 0` by construction and the equation of
//! motion `Edot + B = 0` on solutions. The discrete duality maps are the
//! `theta = +-pi/2` cases of the SO(2) rotation of `(E, B)`; they swap the
//! equation of motion with the identity but flip the sign of the HO
//! Lagrangian `(E^2 - B^2)/2`. The chiral oscillator, by contrast, is exactly
//! invariant under the continuous rotation generated by `Q = x_a x_a / 2`.

use crate::numerics::{fd, NumericsError, Trajectory};
use crate::oscillator::CoState;
use crate::params::PhysicalParams;
use crate::scalar::Scalar;
use crate::vec2;

/// HO state in the duality variables (`M = omega = 1` units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EbState<T> {
    /// `E = xdot`.
    pub e: T,
    /// `B = x`.
    pub b: T,
}

/// Discrete duality branch: the `theta = +pi/2` or `theta = -pi/2` rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapSign {
    Plus,
    Minus,
}

/// Change of variables `(x, xdot) -> (E, B) = (xdot, x)`.
pub fn to_eb<T: Scalar>(x: T, xdot: T) -> EbState<T> {
    EbState { e: xdot, b: x }
}

/// HO Lagrangian in duality variables, `(E^2 - B^2)/2`.
pub fn eb_lagrangian<T: Scalar>(s: &EbState<T>) -> T {
    (s.e * s.e - s.b * s.b) / T::of(2)
}

/// Discrete duality rotation by `+-pi/2`:
/// `Plus: (E, B) -> (B, -E)`, `Minus: (E, B) -> (-B, E)`.
/// Applying the same branch twice gives `-(E, B)`, the original state up to
/// the overall-sign identification.
pub fn discrete_swap<T: Scalar>(s: &EbState<T>, sign: SwapSign) -> EbState<T> {
    match sign {
        SwapSign::Plus => EbState { e: s.b, b: -s.e },
        SwapSign::Minus => EbState { e: -s.b, b: s.e },
    }
}

/// Apply [`discrete_swap`] to every sample of an `(E, B)` trajectory.
pub fn swap_trajectory<T: Scalar>(
    traj: &Trajectory<T>,
    sign: SwapSign,
) -> Result<Trajectory<T>, NumericsError<T>> {
    expect_eb(traj)?;
    let mut samples = Vec::with_capacity(traj.len() * 2);
    for (_, s) in traj.iter() {
        let sw = discrete_swap(&EbState { e: s[0], b: s[1] }, sign);
        samples.push(sw.e);
        samples.push(sw.b);
    }
    Trajectory::new(traj.times().to_vec(), samples, 2, "discrete_swap")
}

/// Build an `(E, B)` trajectory from an `(x, xdot)` one.
pub fn eb_trajectory_from_ho<T: Scalar>(
    traj: &Trajectory<T>,
) -> Result<Trajectory<T>, NumericsError<T>> {
    expect_eb(traj)?;
    let mut samples = Vec::with_capacity(traj.len() * 2);
    for (_, s) in traj.iter() {
        samples.push(s[1]);
        samples.push(s[0]);
    }
    Trajectory::new(traj.times().to_vec(), samples, 2, "to_eb")
}

fn expect_eb<T: Scalar>(traj: &Trajectory<T>) -> Result<(), NumericsError<T>> {
    if traj.dim() != 2 {
        return Err(NumericsError::InvalidInput("expected a two-component trajectory"));
    }
    if traj.len() < 3 {
        return Err(NumericsError::GridTooCoarse(3));
    }
    Ok(())
}

/// Equation-of-motion residual `Edot + B` per sample (finite differences).
pub fn eom_residual<T: Scalar>(traj: &Trajectory<T>) -> Result<Vec<T>, NumericsError<T>> {
    expect_eb(traj)?;
    let e = traj.component(0);
    let b = traj.component(1);
    let de = fd::derivative(traj.times(), &e)?;
    Ok(de.iter().zip(b.iter()).map(|(&d, &bv)| d + bv).collect())
}

/// Identity residual `Bdot - E` per sample; zero by construction on any
/// trajectory built via [`to_eb`] from a differentiable `x(t)`.
pub fn bianchi_residual<T: Scalar>(traj: &Trajectory<T>) -> Result<Vec<T>, NumericsError<T>> {
    expect_eb(traj)?;
    let e = traj.component(0);
    let b = traj.component(1);
    let db = fd::derivative(traj.times(), &b)?;
    Ok(db.iter().zip(e.iter()).map(|(&d, &ev)| d - ev).collect())
}

/// Duality rotation of the chiral oscillator in the `M = omega = 1`
/// normalization: the internal plane rotates by `(pm) theta` with the sense
/// set by the chirality (the flow of [`generator_flow`] at unit parameters).
/// Leaves the CO Lagrangian and Hamiltonian invariant.
pub fn duality_rotate<T: Scalar>(state: &CoState<T>, theta: T) -> CoState<T> {
    let sign: T = state.chirality.sign();
    let r = vec2::rotate(state.coords(), sign * theta);
    CoState::new(r[0], r[1], state.chirality)
}

/// Finite flow of the generator `Q = x_a x_a / 2` under the chiral bracket:
/// `dx_a/dtheta = {x_a, Q}_pm`, a rotation by `(pm) theta / (omega M)`.
/// Coincides with [`duality_rotate`] when `M = omega = 1`.
pub fn generator_flow<T: Scalar>(state: &CoState<T>, theta: T, params: &PhysicalParams<T>) -> CoState<T> {
    let sign: T = state.chirality.sign();
    let angle = sign * theta / (params.omega * params.mass);
    let r = vec2::rotate(state.coords(), angle);
    CoState::new(r[0], r[1], state.chirality)
}

/// The duality generator `Q = (x1^2 + x2^2) / 2`.
pub fn generator_q<T: Scalar>(state: &CoState<T>) -> T {
    vec2::norm_sq(state.coords()) / T::of(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate_ode, IntegratorConfig};
    use crate::oscillator::{co_lagrangian, Chirality};
    use approx::assert_relative_eq;

    fn cos_traj(n: usize, h: f64) -> Trajectory<f64> {
        // x(t) = cos t, a solution: E = -sin t, B = cos t
        let times: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let mut samples = Vec::with_capacity(2 * n);
        for &t in &times {
            samples.push(-t.sin());
            samples.push(t.cos());
        }
        Trajectory::new(times, samples, 2, "cos").unwrap()
    }

    #[test]
    fn to_eb_definition() {
        let s = to_eb(1.0f64, 2.0);
        assert_eq!((s.e, s.b), (2.0, 1.0));
        let z = to_eb(0.0f64, 0.0);
        assert_eq!((z.e, z.b), (0.0, 0.0));
    }

    #[test]
    fn residuals_on_solution() {
        let traj = cos_traj(4001, 1e-3);
        let eom = eom_residual(&traj).unwrap();
        let bia = bianchi_residual(&traj).unwrap();
        let max = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(max(&eom) < 1e-6, "eom {}", max(&eom));
        assert!(max(&bia) < 1e-6, "bianchi {}", max(&bia));
    }

    #[test]
    fn residuals_on_non_solutions() {
        let times: Vec<f64> = (0..100).map(|i| i as f64 * 0.01).collect();
        let n = times.len();
        // E = 0, B = 1: eom residual = 1
        let mut s = Vec::new();
        for _ in 0..n {
            s.extend_from_slice(&[0.0, 1.0]);
        }
        let traj = Trajectory::new(times.clone(), s, 2, "t").unwrap();
        for r in eom_residual(&traj).unwrap() {
            assert_relative_eq!(r, 1.0, epsilon = 1e-12);
        }
        // E = 1, B = 0: bianchi residual = -1
        let mut s = Vec::new();
        for _ in 0..n {
            s.extend_from_slice(&[1.0, 0.0]);
        }
        let traj = Trajectory::new(times, s, 2, "t").unwrap();
        for r in bianchi_residual(&traj).unwrap() {
            assert_relative_eq!(r, -1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn swap_values_and_involution() {
        let s = EbState { e: 1.0f64, b: 0.0 };
        assert_eq!(discrete_swap(&s, SwapSign::Minus), EbState { e: 0.0, b: 1.0 });
        assert_eq!(discrete_swap(&s, SwapSign::Plus), EbState { e: 0.0, b: -1.0 });
        // twice = original up to overall sign
        let twice = discrete_swap(&discrete_swap(&s, SwapSign::Plus), SwapSign::Plus);
        assert_eq!(twice, EbState { e: -1.0, b: 0.0 });
    }

    #[test]
    fn swap_exchanges_residuals_pointwise() {
        let traj = cos_traj(501, 2e-3);
        let eom = eom_residual(&traj).unwrap();
        let bia = bianchi_residual(&traj).unwrap();
        let swapped_p = swap_trajectory(&traj, SwapSign::Plus).unwrap();
        let swapped_m = swap_trajectory(&traj, SwapSign::Minus).unwrap();
        let eom_p = eom_residual(&swapped_p).unwrap();
        let bia_p = bianchi_residual(&swapped_p).unwrap();
        let eom_m = eom_residual(&swapped_m).unwrap();
        let bia_m = bianchi_residual(&swapped_m).unwrap();
        for i in 0..traj.len() {
            assert_eq!(eom_p[i], bia[i]);
            assert_eq!(bia_p[i], -eom[i]);
            assert_eq!(eom_m[i], -bia[i]);
            assert_eq!(bia_m[i], eom[i]);
        }
    }

    #[test]
    fn eb_lagrangian_not_swap_invariant() {
        let s = EbState { e: 1.0f64, b: 0.0 };
        let before = eb_lagrangian(&s);
        let after = eb_lagrangian(&discrete_swap(&s, SwapSign::Plus));
        assert_eq!(before, 0.5);
        assert_eq!(after, -0.5);
        assert!((before - after).abs() >= 0.5);
    }

    #[test]
    fn duality_rotate_identity_and_quarter_turn() {
        let s = CoState::new(1.0, 0.0, Chirality::Plus);
        let id = duality_rotate(&s, 0.0);
        assert_eq!((id.x1, id.x2), (1.0, 0.0));
        let q = duality_rotate(&s, std::f64::consts::FRAC_PI_2);
        assert!(q.x1.abs() < 1e-15 && (q.x2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn co_lagrangian_invariant_under_duality_rotation() {
        let p = PhysicalParams::<f64>::unit();
        for (x1, x2, v1, v2, th, ch) in [
            (0.7, -0.3, 0.2, 0.9, 0.63, Chirality::Plus),
            (-1.1, 0.4, -0.5, 0.1, 2.9, Chirality::Minus),
        ] {
            let s = CoState::new(x1, x2, ch);
            let before = co_lagrangian(&s, [v1, v2], &p);
            let rs = duality_rotate(&s, th);
            let sign: f64 = ch.sign();
            let rv = vec2::rotate([v1, v2], sign * th);
            let after = co_lagrangian(&rs, rv, &p);
            assert_relative_eq!(before, after, max_relative = 1e-13, epsilon = 1e-15);
        }
    }

    #[test]
    fn generator_flow_matches_numerical_bracket_flow() {
        // oracle: integrate dx/dtheta = {x, Q}_pm numerically
        let p = PhysicalParams::new(1.6, 0.9, 1.0, 1.0, 1.0).unwrap();
        for ch in [Chirality::Plus, Chirality::Minus] {
            let s0 = CoState::new(0.8, -0.55, ch);
            let sign: f64 = ch.sign();
            let theta1 = 2.4;
            let cfg = IntegratorConfig::default();
            let traj = integrate_ode(
                |_t, y: &[f64], dy: &mut [f64]| {
                    // {x_a, Q} = -(pm) eps_{ab} x_b / (omega M)
                    let scale = sign / (p.omega * p.mass);
                    dy[0] = -scale * y[1];
                    dy[1] = scale * y[0];
                },
                &[s0.x1, s0.x2],
                (0.0, theta1),
                &cfg,
                "bracket flow",
            )
            .unwrap();
            let num = traj.last_sample();
            let closed = generator_flow(&s0, theta1, &p);
            assert!((num[0] - closed.x1).abs() < 1e-9);
            assert!((num[1] - closed.x2).abs() < 1e-9);
        }
    }

    #[test]
    fn generator_flow_group_property_and_q_preservation() {
        let p = PhysicalParams::<f64>::unit();
        let s = CoState::new(0.3, 1.2, Chirality::Minus);
        let (t1, t2) = (0.7, 1.9);
        let a = generator_flow(&s, t1 + t2, &p);
        let b = generator_flow(&generator_flow(&s, t1, &p), t2, &p);
        assert_relative_eq!(a.x1, b.x1, epsilon = 1e-12);
        assert_relative_eq!(a.x2, b.x2, epsilon = 1e-12);
        assert_relative_eq!(generator_q(&a), generator_q(&s), max_relative = 1e-12);
    }

    #[test]
    fn rotate_and_flow_agree_at_unit_params() {
        let p = PhysicalParams::<f64>::unit();
        let s = CoState::new(-0.9, 0.2, Chirality::Plus);
        for k in 0..32 {
            let th = 2.0 * std::f64::consts::PI * k as f64 / 32.0;
            let a = duality_rotate(&s, th);
            let b = generator_flow(&s, th, &p);
            assert!((a.x1 - b.x1).abs() < 1e-10 && (a.x2 - b.x2).abs() < 1e-10);
        }
    }

    #[test]
    fn coarse_grid_rejected() {
        let traj = Trajectory::new(vec![0.0, 1.0], vec![0.0; 4], 2, "t").unwrap();
        assert!(matches!(eom_residual(&traj), Err(NumericsError::GridTooCoarse(3))));
    }
}
