//! Command implementations. Each returns the process exit code on success
//! (0, or 1 when a property check fails) and maps failures onto the
//! documented exit codes via [`CliError`].

use crate::config::Config;
use crate::output::{sidecar_path, write_out, Cell, Check, OutputFormat, Report, Table};
use chiralosc::duality::{self, SwapSign};
use chiralosc::field::{FieldProfile, TabulatedField};
use chiralosc::invariants;
use chiralosc::numerics::{fd, integrate_ode, quad, IntegratorConfig, NumericsError, Trajectory};
use chiralosc::oscillator::{
    angular_momentum, co_hamiltonian, co_lagrangian, co_velocity,
};
use chiralosc::soldering;
use chiralosc::spectrum::{exact_landau_levels, solve_spectrum, FockBasisSpec};
use chiralosc::vec2;
use chiralosc::zeeman::{self, QuantumNumbers};
use chiralosc::{Chirality, CoState, Params64, Trajectory64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::Path;

/// Failure modes with their process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: configuration or input-file problem.
    Config(String),
    /// Exit 3: numerical failure (integration, eigensolver, ...).
    Numerical(String),
    /// Exit 4: Ermakov singularity (partial output already written).
    Singularity(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Singularity(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) | CliError::Singularity(m) => m,
        }
    }
}

fn numerical(e: impl std::fmt::Display) -> CliError {
    CliError::Numerical(e.to_string())
}

/// Integrate the chiral bracket dynamics on the configured integrator.
fn integrate_co(
    state: CoState<f64>,
    span: (f64, f64),
    params: &Params64,
    cfg: &IntegratorConfig<f64>,
) -> Result<Trajectory64, NumericsError<f64>> {
    let p = *params;
    let ch = state.chirality;
    integrate_ode(
        move |_t, y: &[f64], dy: &mut [f64]| {
            let v = co_velocity(&CoState::new(y[0], y[1], ch), &p);
            dy[0] = v[0];
            dy[1] = v[1];
        },
        &[state.x1, state.x2],
        span,
        cfg,
        "evolve",
    )
}

/// Integrate a CO+ / CO- pair on one shared grid (4-dim state).
fn integrate_pair(
    x0: [f64; 2],
    y0: [f64; 2],
    span: (f64, f64),
    params: &Params64,
    cfg: &IntegratorConfig<f64>,
) -> Result<Trajectory64, NumericsError<f64>> {
    let p = *params;
    integrate_ode(
        move |_t, y: &[f64], dy: &mut [f64]| {
            let xv = co_velocity(&CoState::new(y[0], y[1], Chirality::Plus), &p);
            let yv = co_velocity(&CoState::new(y[2], y[3], Chirality::Minus), &p);
            dy[..2].copy_from_slice(&xv);
            dy[2..].copy_from_slice(&yv);
        },
        &[x0[0], x0[1], y0[0], y0[1]],
        span,
        cfg,
        "solder pair",
    )
}


/// Max drift of a branch-tracked invariant series from its initial value.
fn invariant_drift(times: &[f64], values: &[f64]) -> f64 {
    let series = invariants::branch_tracked_series(times, values);
    let v0 = series.first().map(|s| s.value).unwrap_or(0.0);
    series.iter().map(|s| (s.value - v0).abs()).fold(0.0, f64::max)
}

#[derive(Debug, Serialize)]
struct DriftSidecar {
    samples: usize,
    hamiltonian_drift: f64,
    angular_momentum_drift: f64,
    invariant_drift: f64,
}

pub fn cmd_evolve(
    config: &Config,
    out: Option<&Path>,
    format: OutputFormat,
    tol: Option<f64>,
) -> Result<i32, CliError> {
    let out = out.ok_or_else(|| {
        CliError::Config("evolve writes a trajectory plus a drift sidecar; --out is required".into())
    })?;
    let params = config.physical_params().map_err(|e| CliError::Config(e.to_string()))?;
    let icfg = config.integrator_config(tol);
    let ev = &config.evolve;
    let state = CoState::new(ev.x0[0], ev.x0[1], ev.chirality.into());

    let traj =
        integrate_co(state, (ev.t_start, ev.t_end), &params, &icfg).map_err(numerical)?;

    let mut table = Table::new(vec!["t", "x1", "x2"]);
    for (t, s) in traj.iter() {
        table.push(vec![Cell::Float(t), Cell::Float(s[0]), Cell::Float(s[1])]);
    }

    let h0 = co_hamiltonian(&state, &params);
    let j0 = angular_momentum(&state, &params);
    let mut h_drift = 0.0f64;
    let mut j_drift = 0.0f64;
    let mut inv_vals = Vec::with_capacity(traj.len());
    for (t, s) in traj.iter() {
        let st = CoState::new(s[0], s[1], state.chirality);
        h_drift = h_drift.max((co_hamiltonian(&st, &params) - h0).abs());
        j_drift = j_drift.max((angular_momentum(&st, &params) - j0).abs());
        inv_vals.push(
            invariants::co_invariant(&st, t, &params)
                .map_err(|e| CliError::Numerical(e.to_string()))?,
        );
    }
    let inv_drift = invariant_drift(traj.times(), &inv_vals);
    let sidecar = DriftSidecar {
        samples: traj.len(),
        hamiltonian_drift: h_drift,
        angular_momentum_drift: j_drift,
        invariant_drift: inv_drift,
    };

    write_out(Some(out), &table.render(format)).map_err(numerical)?;
    let mut sidecar_json = serde_json::to_string_pretty(&sidecar).expect("serializable");
    sidecar_json.push('\n');
    write_out(Some(&sidecar_path(out)), &sidecar_json).map_err(numerical)?;
    Ok(0)
}

pub fn cmd_zeeman(
    config: &Config,
    out: Option<&Path>,
    format: OutputFormat,
    tol: Option<f64>,
) -> Result<i32, CliError> {
    let params = config.physical_params().map_err(|e| CliError::Config(e.to_string()))?;
    let z = &config.zeeman;
    let qn = QuantumNumbers::new(z.n, z.j);

    if z.field_csv.is_none() {
        // constant field: level table
        let b = z.b.unwrap_or(0.1);
        let (e_plus, e_minus) = zeeman::zeeman_levels(qn, b, &params);
        let e0 = zeeman::unperturbed_level(z.n, &params);
        let mut table = Table::new(vec!["n", "j", "E_minus", "E_0", "E_plus"]);
        table.push(vec![
            Cell::Int(z.n as i64),
            Cell::Int(z.j as i64),
            Cell::Float(e_minus),
            Cell::Float(e0),
            Cell::Float(e_plus),
        ]);
        write_out(out, &table.render(format)).map_err(numerical)?;
        return Ok(0);
    }

    // tabulated field: Ermakov rho and the accumulated phases
    let path = z.field_csv.as_ref().expect("validated");
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("field_csv {}: {e}", path.display())))?;
    let tab = TabulatedField::from_csv_str(&text)
        .map_err(|e| CliError::Config(format!("field_csv {}: {e}", path.display())))?;
    let field = FieldProfile::Tabulated(tab);
    let (lo, hi) = field.span().expect("tabulated");
    let t0 = z.t_start.unwrap_or(lo);
    let t1 = z.t_end.unwrap_or(hi);
    if t0 < lo || t1 > hi || !(t1 > t0) {
        return Err(CliError::Config(format!(
            "span [{t0}, {t1}] not inside the field table span [{lo}, {hi}]"
        )));
    }
    let rho0 = z.rho0.expect("validated");
    let rhodot0 = z.rhodot0.unwrap_or(0.0);
    let icfg = config.integrator_config(tol);

    let solved = chiralosc::numerics::solve_ermakov(&field, rho0, rhodot0, (t0, t1), &params, &icfg);
    let (traj, singular_at) = match solved {
        Ok(t) => (t, None),
        Err(NumericsError::RhoSingularity { last_good_time, partial }) => {
            (*partial, Some(last_good_time))
        }
        Err(e) => return Err(numerical(e)),
    };

    let scale = params.charge / (params.mass * params.light_speed);
    let weight: f64 = qn.weight();
    let mut integrand = Vec::with_capacity(traj.len());
    for (t, s) in traj.iter() {
        let b = field.sample(t).map_err(numerical)?;
        integrand.push(scale * (b / 2.0 - (s[0] * s[0]).recip()));
    }
    let cumulative = quad::cumulative(traj.times(), &integrand).map_err(numerical)?;

    let mut table = Table::new(vec!["t", "rho", "alpha_plus", "alpha_minus"]);
    for (i, (t, s)) in traj.iter().enumerate() {
        let alpha = weight * cumulative[i];
        table.push(vec![
            Cell::Float(t),
            Cell::Float(s[0]),
            Cell::Float(-alpha),
            Cell::Float(alpha),
        ]);
    }
    if let Some(ts) = singular_at {
        table.trailers.push(format!("ermakov_singularity_after_t={}", crate::fmtnum::fmt_g17(ts)));
    }
    write_out(out, &table.render(format)).map_err(numerical)?;
    match singular_at {
        Some(ts) => Err(CliError::Singularity(format!(
            "rho reached the singularity floor after t = {ts}; partial table written"
        ))),
        None => Ok(0),
    }
}

pub fn cmd_spectrum(
    config: &Config,
    out: Option<&Path>,
    format: OutputFormat,
) -> Result<i32, CliError> {
    let params = config.physical_params().map_err(|e| CliError::Config(e.to_string()))?;
    let s = &config.spectrum;
    let spec = FockBasisSpec::new(s.n_max).map_err(|e| CliError::Config(e.to_string()))?;
    let result = solve_spectrum(&spec, s.b, &params).map_err(numerical)?;

    let mut table =
        Table::new(vec!["n_plus", "n_minus", "energy", "truncation_error", "exact_dev"]);
    for i in 0..result.eigenvalues.len() {
        let (np, nm) = result.labels[i];
        let exact = exact_landau_levels(np, nm, s.b, &params);
        table.push(vec![
            Cell::Int(np as i64),
            Cell::Int(nm as i64),
            Cell::Float(result.eigenvalues[i]),
            Cell::Float(result.truncation_error[i]),
            Cell::Float(result.eigenvalues[i] - exact),
        ]);
    }
    write_out(out, &table.render(format)).map_err(numerical)?;
    Ok(0)
}

const EXACT_TOL: f64 = 1e-12;
const DRIFT_TOL: f64 = 1e-7;
const RESIDUAL_TOL: f64 = 1e-6;
const ENERGY_TOL: f64 = 1e-8;
const GENERATOR_TOL: f64 = 1e-10;

pub fn cmd_solder(
    config: &Config,
    out: Option<&Path>,
    tol: Option<f64>,
) -> Result<i32, CliError> {
    let params = config.physical_params().map_err(|e| CliError::Config(e.to_string()))?;
    let s = &config.solder;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed());
    let gen = |r: &mut ChaCha8Rng| r.gen_range(-2.0..2.0);

    // randomized algebraic identities
    let mut inv_shared = 0.0f64;
    let mut inv_boundary = 0.0f64;
    let mut red_zero = 0.0f64;
    let mut red_boundary = 0.0f64;
    for _ in 0..s.trials {
        let x = CoState::new(gen(&mut rng), gen(&mut rng), Chirality::Plus);
        let y = CoState::new(gen(&mut rng), gen(&mut rng), Chirality::Minus);
        let b = [gen(&mut rng), gen(&mut rng)];
        let eta = [gen(&mut rng), gen(&mut rng)];
        let v = [gen(&mut rng), gen(&mut rng)];
        let l0 = soldering::soldered_lagrangian(&x, &y, v, v, b, &params).map_err(numerical)?;
        let (xs, ys, bs) = soldering::gauge_transform(&x, &y, b, eta);
        let l1 = soldering::soldered_lagrangian(&xs, &ys, v, v, bs, &params).map_err(numerical)?;
        inv_shared = inv_shared.max((l1 - l0).abs() / l0.abs().max(1.0));

        let xd = [gen(&mut rng), gen(&mut rng)];
        let yd = [gen(&mut rng), gen(&mut rng)];
        let ed = [gen(&mut rng), gen(&mut rng)];
        let l0 = soldering::soldered_lagrangian(&x, &y, xd, yd, b, &params).map_err(numerical)?;
        let l1 = soldering::soldered_lagrangian(
            &xs,
            &ys,
            vec2::add(xd, ed),
            vec2::add(yd, ed),
            bs,
            &params,
        )
        .map_err(numerical)?;
        let boundary = soldering::gauge_boundary_term(&x, &y, xd, yd, eta, ed, &params);
        inv_boundary = inv_boundary.max((l1 - l0 - boundary).abs() / l0.abs().max(1.0));

        let wv = vec2::sub(x.coords(), y.coords());
        let l = soldering::soldered_lagrangian_reduced(&x, &y, [0.0; 2], [0.0; 2], &params)
            .map_err(numerical)?;
        let target = soldering::difference_ho_lagrangian(wv, [0.0; 2], &params);
        red_zero = red_zero.max((l - target).abs() / target.abs().max(1.0));

        let l = soldering::soldered_lagrangian_reduced(&x, &y, xd, yd, &params).map_err(numerical)?;
        let target = soldering::difference_ho_lagrangian(wv, vec2::sub(xd, yd), &params)
            + soldering::elimination_boundary_term(&x, &y, xd, yd, &params);
        red_boundary = red_boundary.max((l - target).abs() / target.abs().max(1.0));
    }

    // trajectory checks
    let span = (0.0, s.periods * params.period());
    let rk4 = IntegratorConfig::fixed_rk4(1.5e-3);
    let traj = integrate_pair(s.x0, s.y0, span, &params, &rk4).map_err(numerical)?;
    let times = traj.times().to_vec();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    for (_, smp) in traj.iter() {
        xs.extend_from_slice(&smp[..2]);
        ys.extend_from_slice(&smp[2..]);
    }
    let pair = soldering::SolderPair::new(
        Trajectory::new(times.clone(), xs, 2, "co+").map_err(numerical)?,
        Trajectory::new(times, ys, 2, "co-").map_err(numerical)?,
    )
    .map_err(|e| CliError::Numerical(e.to_string()))?;
    let w = soldering::solder(&pair).map_err(numerical)?;
    let mut residual = 0.0f64;
    for jcomp in 0..2 {
        let comp = w.component(jcomp);
        let d2 = fd::second_derivative_interior(w.times(), &comp).map_err(numerical)?;
        for (i, acc) in d2.iter().enumerate() {
            residual = residual.max((acc + params.omega * params.omega * comp[i + 1]).abs());
        }
    }

    let icfg = config.integrator_config(tol);
    let traj = integrate_pair(s.x0, s.y0, span, &params, &icfg).map_err(numerical)?;
    let mut e0 = None;
    let mut energy_drift = 0.0f64;
    for (_, smp) in traj.iter() {
        let x = CoState::new(smp[0], smp[1], Chirality::Plus);
        let y = CoState::new(smp[2], smp[3], Chirality::Minus);
        let wv = vec2::sub(x.coords(), y.coords());
        let wd = vec2::sub(co_velocity(&x, &params), co_velocity(&y, &params));
        let e = soldering::soldered_energy(wv, wd, &params);
        match e0 {
            None => e0 = Some(e),
            Some(e0) => energy_drift = energy_drift.max((e - e0).abs()),
        }
    }

    let report = Report::new(
        "solder",
        vec![
            Check::at_most("gauge_invariance_shared_velocity", inv_shared, EXACT_TOL),
            Check::at_most("gauge_boundary_identity", inv_boundary, EXACT_TOL),
            Check::at_most("reduction_matches_difference_ho_at_rest", red_zero, EXACT_TOL),
            Check::at_most("reduction_boundary_identity", red_boundary, EXACT_TOL),
            Check::at_most("difference_eom_fd_residual", residual, RESIDUAL_TOL),
            Check::at_most("soldered_energy_drift", energy_drift, ENERGY_TOL),
        ],
    );
    write_out(out, &report.render()).map_err(numerical)?;
    Ok(if report.pass { 0 } else { 1 })
}

pub fn cmd_invariants(
    config: &Config,
    out: Option<&Path>,
    tol: Option<f64>,
) -> Result<i32, CliError> {
    let params = config.physical_params().map_err(|e| CliError::Config(e.to_string()))?;
    let icfg = config.integrator_config(tol);
    let inv = &config.invariants;
    let span = (0.0, inv.periods * params.period());

    let mut checks = Vec::new();
    for (name, ch) in [
        ("co_plus_invariant_drift", Chirality::Plus),
        ("co_minus_invariant_drift", Chirality::Minus),
    ] {
        let traj = integrate_co(CoState::new(inv.x0[0], inv.x0[1], ch), span, &params, &icfg)
            .map_err(numerical)?;
        let mut vals = Vec::with_capacity(traj.len());
        for (t, smp) in traj.iter() {
            vals.push(
                invariants::co_invariant(&CoState::new(smp[0], smp[1], ch), t, &params)
                    .map_err(|e| CliError::Numerical(e.to_string()))?,
            );
        }
        let drift = invariant_drift(traj.times(), &vals);
        checks.push(Check::at_most(name, drift, DRIFT_TOL));
    }

    let p = params;
    let ho = integrate_ode(
        move |_t, y: &[f64], dy: &mut [f64]| {
            dy[0] = y[1] / p.mass;
            dy[1] = -p.mass * p.omega * p.omega * y[0];
        },
        &[inv.x0[0], inv.x0[1]],
        span,
        &icfg,
        "ho",
    )
    .map_err(numerical)?;
    let mut vals = Vec::with_capacity(ho.len());
    for (t, smp) in ho.iter() {
        vals.push(
            invariants::ho_invariant(smp[0], smp[1], t, params.mass, &params)
                .map_err(|e| CliError::Numerical(e.to_string()))?,
        );
    }
    let drift = invariant_drift(ho.times(), &vals);
    checks.push(Check::at_most("ho_invariant_drift", drift, DRIFT_TOL));

    let traj = integrate_pair(inv.x0, inv.y0, span, &params, &icfg).map_err(numerical)?;
    let mut comp1 = Vec::with_capacity(traj.len());
    let mut comp2 = Vec::with_capacity(traj.len());
    for (t, smp) in traj.iter() {
        let x = CoState::new(smp[0], smp[1], Chirality::Plus);
        let y = CoState::new(smp[2], smp[3], Chirality::Minus);
        let (c1, c2) = invariants::soldered_invariant(
            &x,
            &y,
            co_velocity(&x, &params),
            co_velocity(&y, &params),
            t,
            &params,
        );
        comp1.push(c1.map_err(|e| CliError::Numerical(e.to_string()))?);
        comp2.push(c2.map_err(|e| CliError::Numerical(e.to_string()))?);
    }
    checks.push(Check::at_most(
        "soldered_invariant_drift_1",
        invariant_drift(traj.times(), &comp1),
        DRIFT_TOL,
    ));
    checks.push(Check::at_most(
        "soldered_invariant_drift_2",
        invariant_drift(traj.times(), &comp2),
        DRIFT_TOL,
    ));

    let report = Report::new("invariants", checks);
    write_out(out, &report.render()).map_err(numerical)?;
    Ok(if report.pass { 0 } else { 1 })
}

pub fn cmd_duality(config: &Config, out: Option<&Path>) -> Result<i32, CliError> {
    let params = Params64::unit(); // duality sector is normalized to M = omega = 1
    let d = &config.duality;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed());
    let gen = |r: &mut ChaCha8Rng| r.gen_range(-2.0..2.0);

    let mut worst_l = 0.0f64;
    for _ in 0..d.trials {
        let ch = if rng.gen_bool(0.5) { Chirality::Plus } else { Chirality::Minus };
        let s = CoState::new(gen(&mut rng), gen(&mut rng), ch);
        let v = [gen(&mut rng), gen(&mut rng)];
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let before = co_lagrangian(&s, v, &params);
        let rs = duality::duality_rotate(&s, theta);
        let sign: f64 = ch.sign();
        let rv = vec2::rotate(v, sign * theta);
        let after = co_lagrangian(&rs, rv, &params);
        worst_l = worst_l.max((after - before).abs() / before.abs().max(1.0));
    }

    // swap-residual exchange on a sampled solution trajectory
    let times: Vec<f64> = (0..500).map(|i| i as f64 * 2e-3).collect();
    let mut samples = Vec::new();
    for &t in &times {
        samples.push(-(t + 0.3).sin());
        samples.push((t + 0.3).cos());
    }
    let traj = Trajectory::new(times, samples, 2, "eb").map_err(numerical)?;
    let eom = duality::eom_residual(&traj).map_err(numerical)?;
    let bia = duality::bianchi_residual(&traj).map_err(numerical)?;
    let swapped = duality::swap_trajectory(&traj, SwapSign::Plus).map_err(numerical)?;
    let eom_s = duality::eom_residual(&swapped).map_err(numerical)?;
    let bia_s = duality::bianchi_residual(&swapped).map_err(numerical)?;
    let mut worst_swap = 0.0f64;
    for i in 0..eom.len() {
        worst_swap = worst_swap
            .max((eom_s[i] - bia[i]).abs())
            .max((bia_s[i] + eom[i]).abs());
    }

    let witness_state = duality::EbState { e: 1.0f64, b: 0.0 };
    let witness = (duality::eb_lagrangian(&witness_state)
        - duality::eb_lagrangian(&duality::discrete_swap(&witness_state, SwapSign::Plus)))
    .abs();

    let mut worst_gen = 0.0f64;
    for ch in [Chirality::Plus, Chirality::Minus] {
        let s = CoState::new(0.8, -0.55, ch);
        for k in 0..d.theta_points {
            let theta = std::f64::consts::TAU * k as f64 / d.theta_points as f64;
            let a = duality::duality_rotate(&s, theta);
            let b = duality::generator_flow(&s, theta, &params);
            worst_gen = worst_gen.max((a.x1 - b.x1).abs().max((a.x2 - b.x2).abs()));
        }
    }

    let report = Report::new(
        "duality",
        vec![
            Check::at_most("co_lagrangian_duality_invariance", worst_l, EXACT_TOL),
            Check::at_most("swap_residual_exchange", worst_swap, EXACT_TOL),
            Check::at_least("ho_eb_noninvariance_witness", witness, 0.5),
            Check::at_most("generator_vs_rotation", worst_gen, GENERATOR_TOL),
        ],
    );
    write_out(out, &report.render()).map_err(numerical)?;
    Ok(if report.pass { 0 } else { 1 })
}
