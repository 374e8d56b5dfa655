//! Finite-difference stencils on (possibly non-uniform) trajectory grids.

use super::NumericsError;
use crate::scalar::Scalar;

/// First derivative at every sample: three-point central stencil in the
/// interior, second-order one-sided stencils at the ends.
pub fn derivative<T: Scalar>(times: &[T], values: &[T]) -> Result<Vec<T>, NumericsError<T>> {
    let n = times.len();
    if n < 3 {
        return Err(NumericsError::GridTooCoarse(3));
    }
    if values.len() != n {
        return Err(NumericsError::LengthMismatch);
    }
    let mut out = Vec::with_capacity(n);
    out.push(one_sided_start(times, values));
    for i in 1..n - 1 {
        let hm = times[i] - times[i - 1];
        let hp = times[i + 1] - times[i];
        let d = -hp / (hm * (hm + hp)) * values[i - 1]
            + (hp - hm) / (hm * hp) * values[i]
            + hm / (hp * (hm + hp)) * values[i + 1];
        out.push(d);
    }
    out.push(one_sided_end(times, values));
    Ok(out)
}

fn one_sided_start<T: Scalar>(t: &[T], y: &[T]) -> T {
    let h0 = t[1] - t[0];
    let h1 = t[2] - t[1];
    -(T::of(2) * h0 + h1) / (h0 * (h0 + h1)) * y[0] + (h0 + h1) / (h0 * h1) * y[1]
        - h0 / (h1 * (h0 + h1)) * y[2]
}

fn one_sided_end<T: Scalar>(t: &[T], y: &[T]) -> T {
    let n = t.len();
    let h0 = t[n - 2] - t[n - 3];
    let h1 = t[n - 1] - t[n - 2];
    h1 / (h0 * (h0 + h1)) * y[n - 3] - (h0 + h1) / (h0 * h1) * y[n - 2]
        + (h0 + T::of(2) * h1) / (h1 * (h0 + h1)) * y[n - 1]
}

/// Second derivative at the interior samples (`times[1..n-1]`); the returned
/// vector has length `n - 2`.
pub fn second_derivative_interior<T: Scalar>(
    times: &[T],
    values: &[T],
) -> Result<Vec<T>, NumericsError<T>> {
    let n = times.len();
    if n < 3 {
        return Err(NumericsError::GridTooCoarse(3));
    }
    if values.len() != n {
        return Err(NumericsError::LengthMismatch);
    }
    let two = T::of(2);
    let mut out = Vec::with_capacity(n - 2);
    for i in 1..n - 1 {
        let hm = times[i] - times[i - 1];
        let hp = times[i + 1] - times[i];
        let d = two * (hm * values[i + 1] - (hm + hp) * values[i] + hp * values[i - 1])
            / (hm * hp * (hm + hp));
        out.push(d);
    }
    Ok(out)
}
