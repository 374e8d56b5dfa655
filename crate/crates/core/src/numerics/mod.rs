//! ODE integration and related numerical machinery.
//!
//! The workhorse is an embedded Dormand-Prince 4(5) pair with a proportional
//! step controller, plus a fixed-step RK4 fallback for uniform-grid work
//! (finite-difference residual checks want uniform grids). Trajectories are
//! immutable once built and validated on construction.

pub mod fd;
pub mod quad;

mod ermakov;
pub use ermakov::{
    ermakov_invariant, ermakov_residual, solve_ermakov, stationary_rho, Branch, StationaryRho,
    RHO_FLOOR,
};

use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError<T: Scalar> {
    #[error("time span must satisfy t1 > t0")]
    InvalidSpan,
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),
    #[error("trajectory times must be strictly increasing")]
    NonMonotonicTimes,
    #[error("trajectory sample count does not match time count")]
    LengthMismatch,
    #[error("non-finite trajectory sample")]
    NonFiniteSample,
    #[error("step size underflow at t = {t}: stiffness or singularity")]
    StepSizeUnderflow { t: T },
    #[error("right-hand side returned a non-finite value at t = {t}")]
    NonFiniteRhs { t: T },
    #[error("step budget exceeded at t = {t}")]
    StepBudgetExceeded { t: T },
    #[error("grid too coarse: at least {0} samples required")]
    GridTooCoarse(usize),
    #[error("no stationary rho solution for B = 0")]
    NoStationaryRho,
    #[error("rho reached the 1/rho^3 singularity; last good time {last_good_time}")]
    RhoSingularity {
        last_good_time: T,
        partial: Box<Trajectory<T>>,
    },
    #[error("field profile error: {0}")]
    Field(#[from] crate::field::FieldError<T>),
}

/// Ordered time series of state vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    times: Vec<T>,
    samples: Vec<T>,
    dim: usize,
    producer: String,
}

impl<T: Scalar> Trajectory<T> {
    /// Build from a time grid and flat row-major samples (`len = times * dim`).
    pub fn new(
        times: Vec<T>,
        samples: Vec<T>,
        dim: usize,
        producer: impl Into<String>,
    ) -> Result<Self, NumericsError<T>> {
        if dim == 0 {
            return Err(NumericsError::InvalidInput("dimension must be positive"));
        }
        if samples.len() != times.len() * dim {
            return Err(NumericsError::LengthMismatch);
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(NumericsError::NonMonotonicTimes);
        }
        if times.iter().any(|t| !t.is_finite()) || samples.iter().any(|s| !s.is_finite()) {
            return Err(NumericsError::NonFiniteSample);
        }
        Ok(Self { times, samples, dim, producer: producer.into() })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn producer(&self) -> &str {
        &self.producer
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn time(&self, i: usize) -> T {
        self.times[i]
    }

    pub fn sample(&self, i: usize) -> &[T] {
        &self.samples[i * self.dim..(i + 1) * self.dim]
    }

    pub fn last_time(&self) -> T {
        *self.times.last().expect("non-empty trajectory")
    }

    pub fn last_sample(&self) -> &[T] {
        self.sample(self.len() - 1)
    }

    /// Copy of one state component along the whole trajectory.
    pub fn component(&self, j: usize) -> Vec<T> {
        assert!(j < self.dim, "component index out of range");
        (0..self.len()).map(|i| self.sample(i)[j]).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, &[T])> {
        (0..self.len()).map(move |i| (self.times[i], self.sample(i)))
    }
}

/// Integration method selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Embedded Dormand-Prince 4(5) with adaptive step control.
    AdaptiveRk45,
    /// Classic RK4 on a uniform grid with step `max_step`.
    FixedRk4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_step: T,
    pub method: Method,
}

impl<T: Scalar> Default for IntegratorConfig<T> {
    /// rel 1e-10 / abs 1e-12, unrestricted step, adaptive method.
    fn default() -> Self {
        Self {
            rel_tol: T::lit(1e-10),
            abs_tol: T::lit(1e-12),
            max_step: T::infinity(),
            method: Method::AdaptiveRk45,
        }
    }
}

impl<T: Scalar> IntegratorConfig<T> {
    pub fn with_max_step(mut self, h: T) -> Self {
        self.max_step = h;
        self
    }

    pub fn with_tols(mut self, rel: T, abs: T) -> Self {
        self.rel_tol = rel;
        self.abs_tol = abs;
        self
    }

    pub fn fixed_rk4(step: T) -> Self {
        Self {
            method: Method::FixedRk4,
            max_step: step,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), NumericsError<T>> {
        if !(self.rel_tol > T::zero()) || !(self.abs_tol > T::zero()) {
            return Err(NumericsError::InvalidInput("tolerances must be positive"));
        }
        if !(self.max_step > T::zero()) {
            return Err(NumericsError::InvalidInput("max_step must be positive"));
        }
        Ok(())
    }
}

/// Integrate `ydot = rhs(t, y)` over `t_span`, recording every accepted step.
/// The final step is clipped so the trajectory ends exactly at `t_span.1`.
pub fn integrate_ode<T, F>(
    rhs: F,
    y0: &[T],
    t_span: (T, T),
    cfg: &IntegratorConfig<T>,
    producer: &str,
) -> Result<Trajectory<T>, NumericsError<T>>
where
    T: Scalar,
    F: FnMut(T, &[T], &mut [T]),
{
    integrate_with_guard(rhs, y0, t_span, cfg, producer, |_, _| true).map(|(traj, _)| traj)
}

/// Outcome of a guarded integration: the trajectory plus, when the guard
/// tripped, the time of the last accepted state.
pub(crate) type Guarded<T> = (Trajectory<T>, Option<T>);

/// Same as [`integrate_ode`] but stops early (keeping the partial trajectory)
/// as soon as `guard(t, y)` returns false on an accepted state.
pub(crate) fn integrate_with_guard<T, F, G>(
    mut rhs: F,
    y0: &[T],
    t_span: (T, T),
    cfg: &IntegratorConfig<T>,
    producer: &str,
    mut guard: G,
) -> Result<Guarded<T>, NumericsError<T>>
where
    T: Scalar,
    F: FnMut(T, &[T], &mut [T]),
    G: FnMut(T, &[T]) -> bool,
{
    cfg.validate()?;
    let (t0, t1) = t_span;
    if !(t1 > t0) {
        return Err(NumericsError::InvalidSpan);
    }
    if y0.iter().any(|v| !v.is_finite()) {
        return Err(NumericsError::InvalidInput("initial state must be finite"));
    }
    match cfg.method {
        Method::FixedRk4 => rk4_fixed(&mut rhs, y0, t_span, cfg, producer, &mut guard),
        Method::AdaptiveRk45 => dopri5(&mut rhs, y0, t_span, cfg, producer, &mut guard),
    }
}

fn rk4_fixed<T, F, G>(
    rhs: &mut F,
    y0: &[T],
    (t0, t1): (T, T),
    cfg: &IntegratorConfig<T>,
    producer: &str,
    guard: &mut G,
) -> Result<Guarded<T>, NumericsError<T>>
where
    T: Scalar,
    F: FnMut(T, &[T], &mut [T]),
    G: FnMut(T, &[T]) -> bool,
{
    if !cfg.max_step.is_finite() {
        return Err(NumericsError::InvalidInput("fixed-rk4 requires a finite max_step"));
    }
    let span = t1 - t0;
    let n_steps = (span / cfg.max_step).ceil().to_usize().unwrap_or(0).max(1);
    let dim = y0.len();
    let h = span / T::from_usize(n_steps).unwrap();

    let mut y = y0.to_vec();
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut samples = Vec::with_capacity((n_steps + 1) * dim);
    times.push(t0);
    samples.extend_from_slice(&y);

    let mut k1 = vec![T::zero(); dim];
    let mut k2 = vec![T::zero(); dim];
    let mut k3 = vec![T::zero(); dim];
    let mut k4 = vec![T::zero(); dim];
    let mut tmp = vec![T::zero(); dim];
    let two = T::of(2);
    let six = T::of(6);

    let mut stopped = None;
    for i in 0..n_steps {
        let t = t0 + h * T::from_usize(i).unwrap();
        rhs(t, &y, &mut k1);
        for j in 0..dim {
            tmp[j] = y[j] + h / two * k1[j];
        }
        rhs(t + h / two, &tmp, &mut k2);
        for j in 0..dim {
            tmp[j] = y[j] + h / two * k2[j];
        }
        rhs(t + h / two, &tmp, &mut k3);
        for j in 0..dim {
            tmp[j] = y[j] + h * k3[j];
        }
        rhs(t + h, &tmp, &mut k4);
        for j in 0..dim {
            y[j] += h / six * (k1[j] + two * k2[j] + two * k3[j] + k4[j]);
        }
        let t_next = if i + 1 == n_steps { t1 } else { t0 + h * T::from_usize(i + 1).unwrap() };
        if y.iter().any(|v| !v.is_finite()) {
            return Err(NumericsError::NonFiniteRhs { t: t_next });
        }
        times.push(t_next);
        samples.extend_from_slice(&y);
        if !guard(t_next, &y) {
            stopped = Some(t_next);
            break;
        }
    }
    Ok((Trajectory::new(times, samples, dim, producer)?, stopped))
}

// Dormand-Prince 4(5) Butcher tableau.
const DP_C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const DP_B5: [f64; 7] =
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const MAX_STEPS: usize = 50_000_000;

fn dopri5<T, F, G>(
    rhs: &mut F,
    y0: &[T],
    (t0, t1): (T, T),
    cfg: &IntegratorConfig<T>,
    producer: &str,
    guard: &mut G,
) -> Result<Guarded<T>, NumericsError<T>>
where
    T: Scalar,
    F: FnMut(T, &[T], &mut [T]),
    G: FnMut(T, &[T]) -> bool,
{
    let dim = y0.len();
    let span = t1 - t0;
    let h_floor = T::lit(1e-14) * span;

    let c: Vec<T> = DP_C.iter().map(|&v| T::lit(v)).collect();
    let a: Vec<Vec<T>> = DP_A.iter().map(|row| row.iter().map(|&v| T::lit(v)).collect()).collect();
    let b5: Vec<T> = DP_B5.iter().map(|&v| T::lit(v)).collect();
    let b4: Vec<T> = DP_B4.iter().map(|&v| T::lit(v)).collect();

    let mut k: Vec<Vec<T>> = (0..7).map(|_| vec![T::zero(); dim]).collect();
    let mut y = y0.to_vec();
    let mut y_next = vec![T::zero(); dim];
    let mut stage = vec![T::zero(); dim];

    let mut t = t0;
    let mut times = vec![t0];
    let mut samples = y0.to_vec();

    rhs(t, &y, &mut k[0]);
    check_finite(&k[0], t)?;

    let hundred = T::of(100);
    let mut h = (span / hundred).min(cfg.max_step);
    let order_exp = T::one() / T::of(5);
    let safety = T::lit(0.9);
    let shrink = T::lit(0.2);
    let grow = T::of(5);

    let mut stopped = None;
    let mut n_steps = 0usize;
    'outer: while t < t1 {
        n_steps += 1;
        if n_steps > MAX_STEPS {
            return Err(NumericsError::StepBudgetExceeded { t });
        }
        if h < h_floor {
            return Err(NumericsError::StepSizeUnderflow { t });
        }
        let mut clipped = false;
        if t + h >= t1 {
            h = t1 - t;
            clipped = true;
        }

        // stages 2..7 (k[0] is FSAL from the previous step)
        for s in 1..7 {
            for j in 0..dim {
                let mut acc = T::zero();
                for (r, k_r) in k.iter().enumerate().take(s) {
                    let w = a[s - 1][r];
                    if w != T::zero() {
                        acc += w * k_r[j];
                    }
                }
                stage[j] = y[j] + h * acc;
            }
            rhs(t + c[s] * h, &stage, &mut k[s]);
        }
        for k_s in k.iter().skip(1) {
            check_finite(k_s, t)?;
        }

        // 5th-order solution and embedded error
        let mut err_sq = T::zero();
        for j in 0..dim {
            let mut acc5 = T::zero();
            let mut acc_err = T::zero();
            for s in 0..7 {
                acc5 += b5[s] * k[s][j];
                acc_err += (b5[s] - b4[s]) * k[s][j];
            }
            y_next[j] = y[j] + h * acc5;
            let scale = cfg.abs_tol + cfg.rel_tol * y[j].abs().max(y_next[j].abs());
            let e = h * acc_err / scale;
            err_sq += e * e;
        }
        let err = (err_sq / T::from_usize(dim).unwrap()).sqrt();

        if err <= T::one() {
            t = if clipped { t1 } else { t + h };
            std::mem::swap(&mut y, &mut y_next);
            check_finite(&y, t)?;
            times.push(t);
            samples.extend_from_slice(&y);
            // FSAL: last stage was evaluated at (t+h, y_new)
            k.swap(0, 6);
            if !guard(t, &y) {
                stopped = Some(t);
                break 'outer;
            }
            let factor = if err == T::zero() {
                grow
            } else {
                (safety * err.powf(-order_exp)).max(shrink).min(grow)
            };
            h = (h * factor).min(cfg.max_step);
        } else {
            let factor = (safety * err.powf(-order_exp)).max(shrink).min(T::one());
            h *= factor;
        }
    }

    Ok((Trajectory::new(times, samples, dim, producer)?, stopped))
}

fn check_finite<T: Scalar>(v: &[T], t: T) -> Result<(), NumericsError<T>> {
    if v.iter().any(|x| !x.is_finite()) {
        Err(NumericsError::NonFiniteRhs { t })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn exponential_decay_matches_closed_form() {
        let cfg = IntegratorConfig::default();
        let traj = integrate_ode(
            |_t, y: &[f64], dy: &mut [f64]| dy[0] = -y[0],
            &[1.0],
            (0.0, 1.0),
            &cfg,
            "test",
        )
        .unwrap();
        assert_eq!(traj.last_time(), 1.0);
        assert_relative_eq!(traj.last_sample()[0], (-1.0f64).exp(), max_relative = 1e-10);
    }

    #[test]
    fn constant_rhs_constant_trajectory() {
        let cfg = IntegratorConfig::default();
        let traj = integrate_ode(
            |_t, _y: &[f64], dy: &mut [f64]| dy[0] = 0.0,
            &[2.5],
            (0.0, 7.0),
            &cfg,
            "test",
        )
        .unwrap();
        assert!(traj.iter().all(|(_, s)| s[0] == 2.5));
    }

    #[test]
    fn full_rotation_returns_to_start() {
        let cfg = IntegratorConfig::default();
        let traj = integrate_ode(
            |_t, y: &[f64], dy: &mut [f64]| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            &[1.0, 0.0],
            (0.0, 2.0 * std::f64::consts::PI),
            &cfg,
            "test",
        )
        .unwrap();
        let last = traj.last_sample();
        assert!((last[0] - 1.0).abs() < 1e-8);
        assert!(last[1].abs() < 1e-8);
    }

    #[test]
    fn adaptive_meets_tolerance_band() {
        for rel in [1e-6, 1e-8, 1e-10] {
            let cfg = IntegratorConfig::default().with_tols(rel, rel * 1e-4);
            let traj = integrate_ode(
                |_t, y: &[f64], dy: &mut [f64]| dy[0] = -y[0],
                &[1.0],
                (0.0, 1.0),
                &cfg,
                "test",
            )
            .unwrap();
            let exact = (-1.0f64).exp();
            let err = (traj.last_sample()[0] - exact).abs();
            assert!(err <= 100.0 * rel * exact, "rel={rel}: err={err}");
        }
    }

    #[test]
    fn halving_tolerance_never_increases_rotation_error() {
        let endpoint_err = |rel: f64| {
            let cfg = IntegratorConfig::default().with_tols(rel, rel * 1e-2);
            let traj = integrate_ode(
                |_t, y: &[f64], dy: &mut [f64]| {
                    dy[0] = y[1];
                    dy[1] = -y[0];
                },
                &[1.0, 0.0],
                (0.0, 2.0 * std::f64::consts::PI),
                &cfg,
                "test",
            )
            .unwrap();
            let s = traj.last_sample();
            ((s[0] - 1.0).powi(2) + s[1].powi(2)).sqrt()
        };
        let mut rel = 1e-6;
        let mut prev = endpoint_err(rel);
        for _ in 0..10 {
            rel /= 2.0;
            let next = endpoint_err(rel);
            assert!(next <= prev + 1e-15, "rel={rel}: {next} > {prev}");
            prev = next;
        }
    }

    #[test]
    fn fixed_rk4_uniform_grid() {
        let cfg = IntegratorConfig::fixed_rk4(0.01);
        let traj = integrate_ode(
            |_t, y: &[f64], dy: &mut [f64]| dy[0] = -y[0],
            &[1.0],
            (0.0, 1.0),
            &cfg,
            "test",
        )
        .unwrap();
        assert_eq!(traj.len(), 101);
        assert_eq!(traj.last_time(), 1.0);
        assert_relative_eq!(traj.last_sample()[0], (-1.0f64).exp(), max_relative = 1e-9);
    }

    #[test]
    fn f32_instantiation() {
        let cfg = IntegratorConfig::<f32> {
            rel_tol: 1e-5,
            abs_tol: 1e-6,
            ..IntegratorConfig::default()
        };
        let traj = integrate_ode(
            |_t, y: &[f32], dy: &mut [f32]| dy[0] = -y[0],
            &[1.0f32],
            (0.0, 1.0),
            &cfg,
            "test",
        )
        .unwrap();
        assert!((traj.last_sample()[0] - (-1.0f32).exp()).abs() < 1e-4);
    }

    #[test]
    fn rejects_bad_span_and_state() {
        let cfg = IntegratorConfig::<f64>::default();
        let r = integrate_ode(|_t, _y: &[f64], dy: &mut [f64]| dy[0] = 0.0, &[1.0], (1.0, 1.0), &cfg, "t");
        assert!(matches!(r, Err(NumericsError::InvalidSpan)));
        let r = integrate_ode(
            |_t, _y: &[f64], dy: &mut [f64]| dy[0] = 0.0,
            &[f64::NAN],
            (0.0, 1.0),
            &cfg,
            "t",
        );
        assert!(matches!(r, Err(NumericsError::InvalidInput(_))));
    }

    #[test]
    fn nonfinite_rhs_reported() {
        let cfg = IntegratorConfig::<f64>::default();
        let r = integrate_ode(
            |_t, _y: &[f64], dy: &mut [f64]| dy[0] = f64::NAN,
            &[1.0],
            (0.0, 1.0),
            &cfg,
            "t",
        );
        assert!(matches!(r, Err(NumericsError::NonFiniteRhs { .. })));
    }

    #[test]
    fn trajectory_validation() {
        let r = Trajectory::new(vec![0.0, 0.0], vec![1.0, 2.0], 1, "t");
        assert!(matches!(r, Err(NumericsError::NonMonotonicTimes)));
        let r = Trajectory::new(vec![0.0, 1.0], vec![1.0], 1, "t");
        assert!(matches!(r, Err(NumericsError::LengthMismatch)));
        let r = Trajectory::new(vec![0.0, 1.0], vec![1.0, f64::INFINITY], 1, "t");
        assert!(matches!(r, Err(NumericsError::NonFiniteSample)));
    }
}
