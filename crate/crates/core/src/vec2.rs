//! Small helpers for the internal 2-vectors (x1, x2).
//!
//! Convention used throughout: `eps12 = +1`, so `cross(a, b) = a1*b2 - a2*b1`
//! and `(eps a)_i = eps_{ij} a_j`, i.e. `eps((a1, a2)) = (a2, -a1)`.

use crate::scalar::Scalar;

/// Plain 2-vector; the internal oscillator plane.
pub type Vec2<T> = [T; 2];

pub fn dot<T: Scalar>(a: Vec2<T>, b: Vec2<T>) -> T {
    a[0] * b[0] + a[1] * b[1]
}

/// `eps_{ij} a_i b_j = a1*b2 - a2*b1`.
pub fn cross<T: Scalar>(a: Vec2<T>, b: Vec2<T>) -> T {
    a[0] * b[1] - a[1] * b[0]
}

/// Contraction with the antisymmetric symbol: `(eps a)_i = eps_{ij} a_j`.
pub fn eps<T: Scalar>(a: Vec2<T>) -> Vec2<T> {
    [a[1], -a[0]]
}

pub fn add<T: Scalar>(a: Vec2<T>, b: Vec2<T>) -> Vec2<T> {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn sub<T: Scalar>(a: Vec2<T>, b: Vec2<T>) -> Vec2<T> {
    [a[0] - b[0], a[1] - b[1]]
}

pub fn scale<T: Scalar>(s: T, a: Vec2<T>) -> Vec2<T> {
    [s * a[0], s * a[1]]
}

pub fn norm_sq<T: Scalar>(a: Vec2<T>) -> T {
    dot(a, a)
}

/// Counter-clockwise rotation by `angle`.
pub fn rotate<T: Scalar>(a: Vec2<T>, angle: T) -> Vec2<T> {
    let (s, c) = angle.sin_cos();
    [c * a[0] - s * a[1], s * a[0] + c * a[1]]
}
