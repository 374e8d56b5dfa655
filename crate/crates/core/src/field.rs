//! Magnetic-field profiles B(t): constant, closed-form, or tabulated samples.
//!
//! Tabulated profiles come from a two-column CSV `t,B` with a header row and
//! strictly increasing times, and are interpolated with a monotone cubic
//! (Fritsch-Carlson) Hermite spline.

use crate::scalar::Scalar;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FieldError<T: Scalar> {
    #[error("field sample requested at t = {t} outside the tabulated span [{lo}, {hi}]")]
    OutOfRange { t: T, lo: T, hi: T },
    #[error("field CSV: {0}")]
    Csv(String),
    #[error("closed-form field returned a non-finite value at t = {t}")]
    NonFinite { t: T },
}

/// Magnetic field as a function of time.
#[derive(Clone)]
pub enum FieldProfile<T> {
    Constant(T),
    ClosedForm(ClosedFormField<T>),
    Tabulated(TabulatedField<T>),
}

impl<T: Scalar> fmt::Debug for FieldProfile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldProfile::Constant(b) => write!(f, "FieldProfile::Constant({b})"),
            FieldProfile::ClosedForm(c) => write!(f, "FieldProfile::ClosedForm({})", c.label),
            FieldProfile::Tabulated(t) => {
                write!(f, "FieldProfile::Tabulated({} samples)", t.times.len())
            }
        }
    }
}

impl<T: Scalar> FieldProfile<T> {
    pub fn closed_form(label: impl Into<String>, f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        FieldProfile::ClosedForm(ClosedFormField { label: label.into(), f: Arc::new(f) })
    }

    /// Field strength at `t`.
    pub fn sample(&self, t: T) -> Result<T, FieldError<T>> {
        match self {
            FieldProfile::Constant(b) => Ok(*b),
            FieldProfile::ClosedForm(c) => {
                let v = (c.f)(t);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(FieldError::NonFinite { t })
                }
            }
            FieldProfile::Tabulated(tab) => tab.sample(t),
        }
    }

    /// Time span on which the profile is defined; `None` means all of time.
    pub fn span(&self) -> Option<(T, T)> {
        match self {
            FieldProfile::Tabulated(tab) => {
                Some((tab.times[0], tab.times[tab.times.len() - 1]))
            }
            _ => None,
        }
    }

    /// Check the profile is defined on the whole `[t0, t1]`.
    pub fn covers(&self, t0: T, t1: T) -> Result<(), FieldError<T>> {
        if let Some((lo, hi)) = self.span() {
            if t0 < lo || t1 > hi {
                let t = if t0 < lo { t0 } else { t1 };
                return Err(FieldError::OutOfRange { t, lo, hi });
            }
        }
        Ok(())
    }
}

#[derive(Clone)]
pub struct ClosedFormField<T> {
    label: String,
    f: Arc<dyn Fn(T) -> T + Send + Sync>,
}

/// Tabulated samples with precomputed monotone-cubic slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedField<T> {
    times: Vec<T>,
    values: Vec<T>,
    slopes: Vec<T>,
}

impl<T: Scalar> TabulatedField<T> {
    pub fn new(times: Vec<T>, values: Vec<T>) -> Result<Self, FieldError<T>> {
        if times.len() < 2 {
            return Err(FieldError::Csv("need at least two samples".into()));
        }
        if times.len() != values.len() {
            return Err(FieldError::Csv("time/value length mismatch".into()));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(FieldError::Csv("times must be strictly increasing".into()));
        }
        if times.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(FieldError::Csv("non-finite sample".into()));
        }
        let slopes = fritsch_carlson_slopes(&times, &values);
        Ok(Self { times, values, slopes })
    }

    /// Parse the `t,B` CSV format. The first line must be the header `t,B`.
    pub fn from_csv_str(text: &str) -> Result<Self, FieldError<T>> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| FieldError::Csv("empty file".into()))?;
        if header.trim().trim_end_matches('\r') != "t,B" {
            return Err(FieldError::Csv(format!("expected header 't,B', got '{}'", header.trim())));
        }
        let mut times = Vec::new();
        let mut values = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.trim().trim_end_matches('\r');
            let mut parts = line.split(',');
            let t = parts.next().and_then(|s| s.trim().parse::<f64>().ok());
            let b = parts.next().and_then(|s| s.trim().parse::<f64>().ok());
            if parts.next().is_some() {
                return Err(FieldError::Csv(format!("row {}: more than two columns", lineno + 2)));
            }
            match (t, b) {
                (Some(t), Some(b)) => {
                    times.push(T::lit(t));
                    values.push(T::lit(b));
                }
                _ => return Err(FieldError::Csv(format!("row {}: malformed floats", lineno + 2))),
            }
        }
        Self::new(times, values)
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn sample(&self, t: T) -> Result<T, FieldError<T>> {
        let n = self.times.len();
        let (lo, hi) = (self.times[0], self.times[n - 1]);
        if t < lo || t > hi {
            return Err(FieldError::OutOfRange { t, lo, hi });
        }
        // rightmost interval with times[i] <= t
        let i = self
            .times
            .partition_point(|&x| x <= t)
            .saturating_sub(1)
            .min(n - 2);
        let h = self.times[i + 1] - self.times[i];
        let s = (t - self.times[i]) / h;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (m0, m1) = (self.slopes[i], self.slopes[i + 1]);
        let s2 = s * s;
        let s3 = s2 * s;
        let two = T::of(2);
        let three = T::of(3);
        Ok((two * s3 - three * s2 + T::one()) * y0
            + (s3 - two * s2 + s) * h * m0
            + (three * s2 - two * s3) * y1
            + (s3 - s2) * h * m1)
    }
}

/// Fritsch-Carlson monotonicity-preserving slopes for cubic Hermite data.
fn fritsch_carlson_slopes<T: Scalar>(t: &[T], y: &[T]) -> Vec<T> {
    let n = t.len();
    let h: Vec<T> = (0..n - 1).map(|i| t[i + 1] - t[i]).collect();
    let d: Vec<T> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
    let mut m = vec![T::zero(); n];
    if n == 2 {
        m[0] = d[0];
        m[1] = d[0];
        return m;
    }
    let two = T::of(2);
    let three = T::of(3);
    for i in 1..n - 1 {
        if d[i - 1] * d[i] <= T::zero() {
            m[i] = T::zero();
        } else {
            let w1 = two * h[i] + h[i - 1];
            let w2 = h[i] + two * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    m[0] = endpoint_slope(h[0], h[1], d[0], d[1]);
    m[n - 1] = endpoint_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
    // clamp endpoints per Fritsch-Carlson
    if m[0] * d[0] <= T::zero() {
        m[0] = T::zero();
    } else if d[0] * d[1] <= T::zero() && m[0].abs() > three * d[0].abs() {
        m[0] = three * d[0];
    }
    let dn = d[n - 2];
    if m[n - 1] * dn <= T::zero() {
        m[n - 1] = T::zero();
    } else if dn * d[n - 3] <= T::zero() && m[n - 1].abs() > three * dn.abs() {
        m[n - 1] = three * dn;
    }
    m
}

fn endpoint_slope<T: Scalar>(h0: T, h1: T, d0: T, d1: T) -> T {
    ((T::of(2) * h0 + h1) * d0 - h0 * d1) / (h0 + h1)
}
