//! Composite Simpson quadrature on arbitrary grids.

use super::NumericsError;
use crate::scalar::Scalar;

/// Composite Simpson rule over a (possibly non-uniform) grid. Interval pairs
/// are handled with the non-uniform Simpson formula; a trailing odd interval
/// uses the parabola through the last three points.
pub fn simpson<T: Scalar>(times: &[T], values: &[T]) -> Result<T, NumericsError<T>> {
    let n = times.len();
    if n < 2 {
        return Err(NumericsError::GridTooCoarse(2));
    }
    if values.len() != n {
        return Err(NumericsError::LengthMismatch);
    }
    if n == 2 {
        // single interval: trapezoid is all the data supports
        return Ok((values[0] + values[1]) * (times[1] - times[0]) / T::of(2));
    }
    let mut total = T::zero();
    let mut i = 0;
    while i + 2 < n {
        total += simpson_pair(
            times[i], times[i + 1], times[i + 2],
            values[i], values[i + 1], values[i + 2],
        );
        i += 2;
    }
    if i + 2 == n {
        // odd trailing interval: integrate the last parabola over it
        total += parabola_tail(
            times[n - 3], times[n - 2], times[n - 1],
            values[n - 3], values[n - 2], values[n - 1],
        );
    }
    Ok(total)
}

/// Running integral evaluated at every grid point (cumulative Simpson-style
/// rule: each interval is integrated under the parabola through it and its
/// neighbour). `out[0] = 0`.
pub fn cumulative<T: Scalar>(times: &[T], values: &[T]) -> Result<Vec<T>, NumericsError<T>> {
    let n = times.len();
    if n < 2 {
        return Err(NumericsError::GridTooCoarse(2));
    }
    if values.len() != n {
        return Err(NumericsError::LengthMismatch);
    }
    let mut out = Vec::with_capacity(n);
    out.push(T::zero());
    if n == 2 {
        out.push((values[0] + values[1]) * (times[1] - times[0]) / T::of(2));
        return Ok(out);
    }
    let mut acc = T::zero();
    for i in 0..n - 1 {
        let piece = if i + 2 < n {
            parabola_head(times[i], times[i + 1], times[i + 2], values[i], values[i + 1], values[i + 2])
        } else {
            parabola_tail(times[i - 1], times[i], times[i + 1], values[i - 1], values[i], values[i + 1])
        };
        acc += piece;
        out.push(acc);
    }
    Ok(out)
}

/// Exact integral over [t0, t2] of the parabola through the three samples.
fn simpson_pair<T: Scalar>(t0: T, t1: T, t2: T, f0: T, f1: T, f2: T) -> T {
    let h0 = t1 - t0;
    let h1 = t2 - t1;
    let six = T::of(6);
    (h0 + h1) / six
        * ((T::of(2) - h1 / h0) * f0
            + (h0 + h1) * (h0 + h1) / (h0 * h1) * f1
            + (T::of(2) - h0 / h1) * f2)
}

/// Integral over the first interval [t0, t1] of the parabola through all three.
fn parabola_head<T: Scalar>(t0: T, t1: T, t2: T, f0: T, f1: T, f2: T) -> T {
    let h0 = t1 - t0;
    let h1 = t2 - t1;
    let six = T::of(6);
    let three = T::of(3);
    h0 * (T::of(2) * h0 + three * h1) / (six * (h0 + h1)) * f0
        + h0 * (h0 + three * h1) / (six * h1) * f1
        - h0 * h0 * h0 / (six * h1 * (h0 + h1)) * f2
}

/// Integral over the last interval [t1, t2] of the parabola through all three.
fn parabola_tail<T: Scalar>(t0: T, t1: T, t2: T, f0: T, f1: T, f2: T) -> T {
    let h0 = t1 - t0;
    let h1 = t2 - t1;
    let six = T::of(6);
    let three = T::of(3);
    h1 * (T::of(2) * h1 + three * h0) / (six * (h0 + h1)) * f2
        + h1 * (h1 + three * h0) / (six * h0) * f1
        - h1 * h1 * h1 / (six * h0 * (h0 + h1)) * f0
}
