//! TOML run configuration. Unknown keys are rejected; every value is
//! validated before any output file is touched.

use chiralosc::numerics::{IntegratorConfig, Method};
use chiralosc::{Chirality, Params64};
use serde::Deserialize;
use std::path::PathBuf;

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Seed for the deterministic randomized checks.
    pub seed: Option<u64>,
    #[serde(default)]
    pub params: ParamsSection,
    #[serde(default)]
    pub integrator: IntegratorSection,
    #[serde(default)]
    pub evolve: EvolveSection,
    #[serde(default)]
    pub zeeman: ZeemanSection,
    #[serde(default)]
    pub spectrum: SpectrumSection,
    #[serde(default)]
    pub solder: SolderSection,
    #[serde(default)]
    pub invariants: InvariantsSection,
    #[serde(default)]
    pub duality: DualitySection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ParamsSection {
    pub mass: f64,
    pub omega: f64,
    pub charge: f64,
    pub light_speed: f64,
    pub hbar: f64,
}

impl Default for ParamsSection {
    fn default() -> Self {
        Self { mass: 1.0, omega: 1.0, charge: 1.0, light_speed: 1.0, hbar: 1.0 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegratorSection {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: Option<f64>,
    pub method: MethodName,
}

impl Default for IntegratorSection {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-12, max_step: None, method: MethodName::AdaptiveRk45 }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
pub enum MethodName {
    #[serde(rename = "adaptive-rk45")]
    AdaptiveRk45,
    #[serde(rename = "fixed-rk4")]
    FixedRk4,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EvolveSection {
    pub chirality: ChiralityName,
    pub x0: [f64; 2],
    pub t_start: f64,
    pub t_end: f64,
}

impl Default for EvolveSection {
    fn default() -> Self {
        Self {
            chirality: ChiralityName::Plus,
            x0: [1.0, 0.0],
            t_start: 0.0,
            t_end: 2.0 * std::f64::consts::PI,
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
pub enum ChiralityName {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl From<ChiralityName> for Chirality {
    fn from(c: ChiralityName) -> Chirality {
        match c {
            ChiralityName::Plus => Chirality::Plus,
            ChiralityName::Minus => Chirality::Minus,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ZeemanSection {
    pub n: u32,
    pub j: u32,
    /// Constant field strength; mutually exclusive with `field_csv`.
    /// Defaults to 0.1 when neither is given.
    pub b: Option<f64>,
    /// Tabulated field table (`t,B` CSV); switches to the phase-table output.
    pub field_csv: Option<PathBuf>,
    /// Ermakov initial data for the tabulated route.
    pub rho0: Option<f64>,
    pub rhodot0: Option<f64>,
    /// Span for the tabulated route; defaults to the table's span.
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
}

impl Default for ZeemanSection {
    fn default() -> Self {
        Self {
            n: 1,
            j: 0,
            b: None,
            field_csv: None,
            rho0: None,
            rhodot0: None,
            t_start: None,
            t_end: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectrumSection {
    pub n_max: u32,
    pub b: f64,
}

impl Default for SpectrumSection {
    fn default() -> Self {
        Self { n_max: 10, b: 0.2 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolderSection {
    pub x0: [f64; 2],
    pub y0: [f64; 2],
    pub periods: f64,
    pub trials: u32,
}

impl Default for SolderSection {
    fn default() -> Self {
        Self { x0: [1.0, 0.0], y0: [1.0, 0.0], periods: 10.0, trials: 200 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InvariantsSection {
    pub x0: [f64; 2],
    pub y0: [f64; 2],
    pub periods: f64,
}

impl Default for InvariantsSection {
    fn default() -> Self {
        Self { x0: [1.0, 0.4], y0: [0.25, -0.35], periods: 10.0 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DualitySection {
    pub trials: u32,
    pub theta_points: u32,
}

impl Default for DualitySection {
    fn default() -> Self {
        Self { trials: 100, theta_points: 32 }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        let cfg: Config = toml::from_str(text).map_err(|e| e.to_string())?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        self.physical_params().map_err(|e| e.to_string())?;
        if !(self.integrator.rel_tol > 0.0) || !(self.integrator.abs_tol > 0.0) {
            return Err("integrator tolerances must be positive".into());
        }
        if let Some(h) = self.integrator.max_step {
            if !(h > 0.0) {
                return Err("integrator.max_step must be positive".into());
            }
        }
        if self.integrator.method == MethodName::FixedRk4 && self.integrator.max_step.is_none() {
            return Err("fixed-rk4 requires integrator.max_step".into());
        }
        if !(self.evolve.t_end > self.evolve.t_start) {
            return Err("evolve: t_end must exceed t_start".into());
        }
        if self.zeeman.b.is_some() && self.zeeman.field_csv.is_some() {
            return Err("zeeman: `b` and `field_csv` are mutually exclusive".into());
        }
        if self.zeeman.field_csv.is_some() && self.zeeman.rho0.is_none() {
            return Err("zeeman: tabulated field requires rho0 (and optionally rhodot0)".into());
        }
        if let Some(r) = self.zeeman.rho0 {
            if !(r > 0.0) {
                return Err("zeeman: rho0 must be positive".into());
            }
        }
        if self.spectrum.n_max < 2 {
            return Err("spectrum: n_max must be at least 2".into());
        }
        if !(self.solder.periods > 0.0) || !(self.invariants.periods > 0.0) {
            return Err("periods must be positive".into());
        }
        if self.solder.trials == 0 || self.duality.trials == 0 {
            return Err("trial counts must be positive".into());
        }
        if self.duality.theta_points < 2 {
            return Err("duality.theta_points must be at least 2".into());
        }
        Ok(())
    }

    pub fn physical_params(&self) -> Result<Params64, chiralosc::params::ParamsError> {
        let p = &self.params;
        Params64::new(p.mass, p.omega, p.charge, p.light_speed, p.hbar)
    }

    /// Integrator config with the optional `--tol` override applied
    /// (`rel_tol = tol`, `abs_tol = tol / 100`).
    pub fn integrator_config(&self, tol_override: Option<f64>) -> IntegratorConfig<f64> {
        let mut cfg = IntegratorConfig {
            rel_tol: self.integrator.rel_tol,
            abs_tol: self.integrator.abs_tol,
            max_step: self.integrator.max_step.unwrap_or(f64::INFINITY),
            method: match self.integrator.method {
                MethodName::AdaptiveRk45 => Method::AdaptiveRk45,
                MethodName::FixedRk4 => Method::FixedRk4,
            },
        };
        if let Some(t) = tol_override {
            cfg.rel_tol = t;
            cfg.abs_tol = t / 100.0;
        }
        cfg
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(42)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        assert!(Config::default().validate().is_ok());
    }

    #[test]
    fn unknown_keys_rejected() {
        let r = Config::from_toml("[params]\nmass = 1.0\nbogus = 2\n");
        assert!(r.is_err());
        let r = Config::from_toml("nonsense = true\n");
        assert!(r.is_err());
    }

    #[test]
    fn zeeman_exclusivity() {
        let r = Config::from_toml("[zeeman]\nn = 1\nj = 0\nb = 0.1\nfield_csv = \"x.csv\"\n");
        assert!(r.is_err());
        let r = Config::from_toml("[zeeman]\nn = 1\nj = 0\nfield_csv = \"x.csv\"\n");
        assert!(r.is_err(), "rho0 required");
    }

    #[test]
    fn tol_override() {
        let cfg = Config::default();
        let ic = cfg.integrator_config(Some(1e-6));
        assert_eq!(ic.rel_tol, 1e-6);
        assert_eq!(ic.abs_tol, 1e-8);
    }
}
