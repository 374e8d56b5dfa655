//! Dense symmetric matrices and a cyclic Jacobi eigensolver.

use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SpectrumError {
    #[error("matrix data is not symmetric")]
    NotSymmetric,
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("basis truncation must satisfy n_max >= 2")]
    TruncationTooSmall,
}

/// Real symmetric matrix, full row-major storage. Symmetry is enforced by the
/// constructors (`set` writes both triangles).
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    a: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, a: vec![T::zero(); n * n] }
    }

    /// Validate and wrap raw row-major data.
    pub fn from_rows(n: usize, a: Vec<T>) -> Result<Self, SpectrumError> {
        assert_eq!(a.len(), n * n, "row data must be n*n");
        if a.iter().any(|v| !v.is_finite()) {
            return Err(SpectrumError::NonFinite);
        }
        for i in 0..n {
            for j in 0..i {
                if a[i * n + j] != a[j * n + i] {
                    return Err(SpectrumError::NotSymmetric);
                }
            }
        }
        Ok(Self { n, a })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.a[i * self.n + j]
    }

    /// Symmetric write: sets both (i, j) and (j, i).
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.a[i * self.n + j] = v;
        self.a[j * self.n + i] = v;
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> T {
        self.a.iter().map(|&v| v * v).sum::<T>().sqrt()
    }

    /// Frobenius norm of the strict off-diagonal part.
    pub fn off_diagonal_norm(&self) -> T {
        let mut s = T::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    let v = self.get(i, j);
                    s += v * v;
                }
            }
        }
        s.sqrt()
    }

    /// `|| A B - B A ||_F`.
    pub fn commutator_norm(&self, other: &SymMatrix<T>) -> T {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                let mut ab = T::zero();
                let mut ba = T::zero();
                for k in 0..n {
                    ab += self.get(i, k) * other.get(k, j);
                    ba += other.get(i, k) * self.get(k, j);
                }
                let d = ab - ba;
                s += d * d;
            }
        }
        s.sqrt()
    }
}

/// Eigendecomposition: `values` ascending, `vectors[k]` the unit eigenvector
/// for `values[k]` with its largest-magnitude component made positive.
#[derive(Debug, Clone)]
pub struct Eigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
}

const MAX_SWEEPS: usize = 50;

/// Cyclic Jacobi diagonalization. Converged when the off-diagonal Frobenius
/// norm drops below `1e-12` (floored at a few machine epsilons) times the
/// Frobenius norm of the input.
pub fn diagonalize<T: Scalar>(m: &SymMatrix<T>) -> Result<Eigen<T>, SpectrumError> {
    let n = m.dim();
    if n == 0 {
        return Ok(Eigen { values: vec![], vectors: vec![] });
    }
    let norm0 = m.frobenius_norm();
    let tol = norm0 * T::lit(1e-12).max(T::epsilon() * T::of(8));

    let mut a = m.clone();
    // v[i][k]: i-th component of the k-th column eigenvector, stored flat
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }

    let mut sweeps = 0;
    while a.off_diagonal_norm() > tol {
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(SpectrumError::NoConvergence(MAX_SWEEPS));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == T::zero() {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                // stable rotation: t = sign(theta) / (|theta| + sqrt(theta^2 + 1))
                let theta = (aqq - app) / (T::of(2) * apq);
                let t = {
                    let mag = theta.abs() + (theta * theta + T::one()).sqrt();
                    if theta >= T::zero() { mag.recip() } else { -mag.recip() }
                };
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                let tau = s / (T::one() + c);

                a.set(p, p, app - t * apq);
                a.set(q, q, aqq + t * apq);
                a.set(p, q, T::zero());
                for k in 0..n {
                    if k != p && k != q {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, akp - s * (akq + tau * akp));
                        a.set(k, q, akq + s * (akp - tau * akq));
                    }
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp - s * (vkq + tau * vkp);
                    v[k * n + q] = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a.get(i, i)
            .partial_cmp(&a.get(j, j))
            .expect("finite eigenvalues")
            .then(i.cmp(&j))
    });

    let values: Vec<T> = order.iter().map(|&k| a.get(k, k)).collect();
    let vectors: Vec<Vec<T>> = order
        .iter()
        .map(|&k| {
            let mut col: Vec<T> = (0..n).map(|i| v[i * n + k]).collect();
            // deterministic sign: largest-|component| positive
            let mut imax = 0;
            for (i, &c) in col.iter().enumerate() {
                if c.abs() > col[imax].abs() {
                    imax = i;
                }
            }
            if col[imax] < T::zero() {
                for c in col.iter_mut() {
                    *c = -*c;
                }
            }
            col
        })
        .collect();

    Ok(Eigen { values, vectors })
}
