//! Physical parameters shared by all models.

use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ParamsError {
    #[error("parameter {0} must be positive and finite")]
    NotPositive(&'static str),
}

/// Mass, frequency, charge, light speed and reduced Planck constant.
///
/// Defaults are all 1 (natural units); every quantity in the library carries
/// these symbolically so dimensional factors like `eB/2Mc` stay visible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams<T> {
    pub mass: T,
    pub omega: T,
    pub charge: T,
    pub light_speed: T,
    pub hbar: T,
}

impl<T: Scalar> Default for PhysicalParams<T> {
    fn default() -> Self {
        Self::unit()
    }
}

impl<T: Scalar> PhysicalParams<T> {
    /// All parameters set to 1.
    pub fn unit() -> Self {
        Self {
            mass: T::one(),
            omega: T::one(),
            charge: T::one(),
            light_speed: T::one(),
            hbar: T::one(),
        }
    }

    pub fn new(mass: T, omega: T, charge: T, light_speed: T, hbar: T) -> Result<Self, ParamsError> {
        let p = Self { mass, omega, charge, light_speed, hbar };
        p.validate()?;
        Ok(p)
    }

    /// Mass, omega, light speed and hbar must be positive; the charge is free.
    pub fn validate(&self) -> Result<(), ParamsError> {
        let pos = |v: T, name: &'static str| {
            if v > T::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(ParamsError::NotPositive(name))
            }
        };
        pos(self.mass, "mass")?;
        pos(self.omega, "omega")?;
        pos(self.light_speed, "light_speed")?;
        pos(self.hbar, "hbar")?;
        if !self.charge.is_finite() {
            return Err(ParamsError::NotPositive("charge"));
        }
        Ok(())
    }

    /// Larmor-type splitting rate `eB / 2Mc`.
    pub fn larmor(&self, b: T) -> T {
        self.charge * b / (T::of(2) * self.mass * self.light_speed)
    }

    /// One oscillator period `2 pi / omega`.
    pub fn period(&self) -> T {
        T::of(2) * T::PI() / self.omega
    }
}
