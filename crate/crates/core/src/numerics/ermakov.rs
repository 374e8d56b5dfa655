//! Ermakov auxiliary equation for the charged oscillator,
//! `(Mc/e)^2 rhoddot + (B^2(t)/2) rho - rho^{-3} = 0`.

use super::{integrate_with_guard, IntegratorConfig, NumericsError, Trajectory};
use crate::field::FieldProfile;
use crate::params::PhysicalParams;
use crate::scalar::Scalar;

/// Below this value of rho the `rho^{-3}` term is treated as a singularity
/// and the integration aborts with the partial trajectory.
pub const RHO_FLOOR: f64 = 1e-10;

/// Stationary-solution branch sign in `rho^2 = +-sqrt(2)/B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Positive,
    Negative,
}

/// Stationary solution of the Ermakov equation for constant field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryRho<T> {
    /// `+-sqrt(2)/B` per branch; may be negative (formal root, rho not real).
    pub rho_sq: T,
    /// Real root `(2/B^2)^{1/4}` when `rho_sq > 0`.
    pub rho: Option<T>,
}

/// `rho^2 = +-sqrt(2)/B`. Errors for `B = 0` (no stationary solution).
pub fn stationary_rho<T: Scalar>(b: T, branch: Branch) -> Result<StationaryRho<T>, NumericsError<T>> {
    if b == T::zero() {
        return Err(NumericsError::NoStationaryRho);
    }
    let sign = match branch {
        Branch::Positive => T::one(),
        Branch::Negative => -T::one(),
    };
    let rho_sq = sign * T::SQRT_2() / b;
    let rho = if rho_sq > T::zero() { Some(rho_sq.sqrt()) } else { None };
    Ok(StationaryRho { rho_sq, rho })
}

/// Conserved quantity of the constant-field Ermakov equation:
/// `(Mc/e)^2 rhodot^2 + (B^2/2) rho^2 + rho^{-2}`.
pub fn ermakov_invariant<T: Scalar>(rho: T, rhodot: T, b: T, params: &PhysicalParams<T>) -> T {
    let k = params.mass * params.light_speed / params.charge;
    k * k * rhodot * rhodot + b * b / T::of(2) * rho * rho + (rho * rho).recip()
}

/// Integrate the Ermakov equation; the trajectory carries `(rho, rhodot)`.
///
/// Aborts with [`NumericsError::RhoSingularity`] (partial trajectory and last
/// good time attached) if rho falls below [`RHO_FLOOR`].
pub fn solve_ermakov<T: Scalar>(
    field: &FieldProfile<T>,
    rho0: T,
    rhodot0: T,
    t_span: (T, T),
    params: &PhysicalParams<T>,
    cfg: &IntegratorConfig<T>,
) -> Result<Trajectory<T>, NumericsError<T>> {
    if !(rho0 > T::zero()) {
        return Err(NumericsError::InvalidInput("rho0 must be positive"));
    }
    field.covers(t_span.0, t_span.1)?;
    let inv_k_sq = {
        let k = params.mass * params.light_speed / params.charge;
        (k * k).recip()
    };
    let floor = T::lit(RHO_FLOOR);
    let two = T::of(2);
    let rhs = |t: T, y: &[T], dy: &mut [T]| {
        let rho = y[0];
        dy[0] = y[1];
        if rho <= T::zero() {
            // past the pole: poison the step so it is rejected
            dy[1] = T::nan();
            return;
        }
        let b = match field.sample(t) {
            Ok(b) => b,
            Err(_) => {
                dy[1] = T::nan();
                return;
            }
        };
        dy[1] = inv_k_sq * ((rho * rho * rho).recip() - b * b / two * rho);
    };
    let guard = |_t: T, y: &[T]| y[0] > floor;
    let result = integrate_with_guard(rhs, &[rho0, rhodot0], t_span, cfg, "solve_ermakov", guard);
    match result {
        Ok((traj, None)) => Ok(traj),
        Ok((traj, Some(t_stop))) => {
            // last sample at or below the floor: report the previous one as good
            let last_good_time = if traj.len() >= 2 { traj.time(traj.len() - 2) } else { t_stop };
            Err(NumericsError::RhoSingularity { last_good_time, partial: Box::new(traj) })
        }
        Err(e) => Err(e),
    }
}

/// Residual of the Ermakov equation on a trajectory, evaluated with central
/// finite differences at the interior samples.
pub fn ermakov_residual<T: Scalar>(
    traj: &Trajectory<T>,
    field: &FieldProfile<T>,
    params: &PhysicalParams<T>,
) -> Result<Vec<T>, NumericsError<T>> {
    let rho = traj.component(0);
    let d2 = super::fd::second_derivative_interior(traj.times(), &rho)?;
    let k = params.mass * params.light_speed / params.charge;
    let k_sq = k * k;
    let two = T::of(2);
    let mut out = Vec::with_capacity(d2.len());
    for (i, rddot) in d2.iter().enumerate() {
        let t = traj.time(i + 1);
        let r = rho[i + 1];
        let b = field.sample(t)?;
        out.push(k_sq * *rddot + b * b / two * r - (r * r * r).recip());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> PhysicalParams<f64> {
        PhysicalParams::unit()
    }

    #[test]
    fn stationary_branches() {
        let s = stationary_rho(std::f64::consts::SQRT_2, Branch::Positive).unwrap();
        assert_relative_eq!(s.rho_sq, 1.0, epsilon = 1e-15);
        assert_relative_eq!(s.rho.unwrap(), 1.0, epsilon = 1e-15);
        let s = stationary_rho(std::f64::consts::SQRT_2, Branch::Negative).unwrap();
        assert_relative_eq!(s.rho_sq, -1.0, epsilon = 1e-15);
        assert!(s.rho.is_none());
        assert!(matches!(stationary_rho(0.0f64, Branch::Positive), Err(NumericsError::NoStationaryRho)));
    }

    #[test]
    fn stationary_scaling_in_b() {
        for branch in [Branch::Positive, Branch::Negative] {
            let a = stationary_rho(0.7f64, branch).unwrap().rho_sq;
            let b = stationary_rho(1.4f64, branch).unwrap().rho_sq;
            assert_relative_eq!(b.abs(), a.abs() / 2.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn stationary_solution_is_fixed_point() {
        let b = 0.9;
        let rho0 = (2.0f64 / (b * b)).powf(0.25);
        let field = FieldProfile::Constant(b);
        let traj = solve_ermakov(&field, rho0, 0.0, (0.0, 20.0), &unit(), &IntegratorConfig::default())
            .unwrap();
        for (_, s) in traj.iter() {
            assert!((s[0] - rho0).abs() < 1e-10);
            assert!(s[1].abs() < 1e-10);
        }
    }

    #[test]
    fn zero_field_closed_form() {
        let p = unit();
        let rho0 = 1.3;
        let field = FieldProfile::Constant(0.0);
        let traj =
            solve_ermakov(&field, rho0, 0.0, (0.0, 8.0), &p, &IntegratorConfig::default()).unwrap();
        let k = p.charge / (p.mass * p.light_speed);
        for (t, s) in traj.iter() {
            let expect = (rho0 * rho0 + (k * t / rho0).powi(2)).sqrt();
            assert!((s[0] - expect).abs() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn invariant_conserved_generic_run() {
        let p = unit();
        let b = 1.3;
        let field = FieldProfile::Constant(b);
        let traj =
            solve_ermakov(&field, 1.0, 0.4, (0.0, 20.0), &p, &IntegratorConfig::default()).unwrap();
        let i0 = ermakov_invariant(1.0, 0.4, b, &p);
        let drift = traj
            .iter()
            .map(|(_, s)| (ermakov_invariant(s[0], s[1], b, &p) - i0).abs())
            .fold(0.0f64, f64::max);
        assert!(drift < 1e-8, "drift {drift}");
    }

    #[test]
    fn inverse_cube_wall_repels_inward_motion() {
        // For regular initial data the conserved quantity
        // rhodot^2 + rho^{-2} bounds rho away from zero: the motion bounces.
        let field = FieldProfile::Constant(0.0);
        let traj = solve_ermakov(&field, 0.5, -2.0, (0.0, 10.0), &unit(), &IntegratorConfig::default())
            .unwrap();
        let rho_min_expect = 1.0 / (4.0f64 + 4.0).sqrt();
        let rho_min = traj.iter().map(|(_, s)| s[0]).fold(f64::INFINITY, f64::min);
        assert!(rho_min >= rho_min_expect - 1e-8, "sampled min {rho_min} below barrier");
        assert!(rho_min <= rho_min_expect + 2e-2, "never approached the barrier: {rho_min}");
        assert!(traj.last_sample()[0] > 1.0, "did not bounce back out");
    }

    #[test]
    fn singularity_reported_with_partial_trajectory() {
        // Crossing the floor takes pathological data: enormous inward
        // momentum at tiny radius, enough to beat the inverse-square barrier.
        let field = FieldProfile::Constant(0.0);
        let r = solve_ermakov(&field, 2e-10, -2e10, (0.0, 1e-20), &unit(), &IntegratorConfig::default());
        match r {
            Err(NumericsError::RhoSingularity { last_good_time, partial }) => {
                assert!(last_good_time >= 0.0);
                assert!(partial.len() > 1);
                assert!(partial.last_sample()[0] <= RHO_FLOOR);
            }
            Err(NumericsError::StepSizeUnderflow { .. }) => {}
            other => panic!("expected singularity, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_rho0_and_uncovered_span() {
        let field = FieldProfile::Constant(0.0);
        assert!(solve_ermakov(&field, -1.0, 0.0, (0.0, 1.0), &unit(), &IntegratorConfig::default())
            .is_err());
        let tab = crate::field::TabulatedField::from_csv_str("t,B\n0.0,1.0\n1.0,1.0\n").unwrap();
        let field = FieldProfile::Tabulated(tab);
        assert!(matches!(
            solve_ermakov(&field, 1.0, 0.0, (0.0, 2.0), &unit(), &IntegratorConfig::default()),
            Err(NumericsError::Field(_))
        ));
    }

    #[test]
    fn residual_small_on_smooth_profile() {
        let p = unit();
        let field = FieldProfile::closed_form("slow ramp", |t: f64| 1.0 + 0.1 * (0.3 * t).sin());
        let cfg = IntegratorConfig::fixed_rk4(0.004);
        let traj = solve_ermakov(&field, 1.1, 0.0, (0.0, 10.0), &p, &cfg).unwrap();
        let res = ermakov_residual(&traj, &field, &p).unwrap();
        let max = res.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        assert!(max < 1e-5, "residual {max}");
    }
}
