//! Brute-force quantum oracle: the charged-oscillator Hamiltonian
//! diagonalized in a truncated circular (chiral) Fock basis.
//!
//! Basis states are labelled by the chiral quanta `(n_plus, n_minus)` of the
//! frequency-`omega` oscillator and enumerated lexicographically in
//! `(N, m) = (n_plus + n_minus, n_plus - n_minus)`, `N` outermost, `m`
//! ascending in steps of 2. In this basis the angular-momentum term is
//! diagonal (`x2 p1 - x1 p2 -> -hbar m`) and the `r^2` terms couple only
//! `(n_plus, n_minus) -> (n_plus + 1, n_minus + 1)`:
//!
//! ```text
//! r^2 = (hbar / M omega) [ (N + 1) diag + a+ a- + a+^t a-^t ],
//! <n+ + 1, n- + 1 | a+^t a-^t | n+, n-> = sqrt((n+ + 1)(n- + 1)),
//! ```
//!
//! so the full matrix is real symmetric.

mod jacobi;
pub use jacobi::{diagonalize, Eigen, SpectrumError, SymMatrix};

use crate::params::PhysicalParams;
use crate::scalar::Scalar;
use std::io::Write;

/// Truncated chiral Fock basis with `n_plus + n_minus <= n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBasisSpec {
    n_max: u32,
}

impl FockBasisSpec {
    pub fn new(n_max: u32) -> Result<Self, SpectrumError> {
        if n_max < 2 {
            return Err(SpectrumError::TruncationTooSmall);
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        let n = self.n_max as usize;
        (n + 1) * (n + 2) / 2
    }

    /// Basis labels in the documented order.
    pub fn states(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.dim());
        for total in 0..=self.n_max {
            let mut m = -(total as i64);
            while m <= total as i64 {
                let np = ((total as i64 + m) / 2) as u32;
                let nm = ((total as i64 - m) / 2) as u32;
                out.push((np, nm));
                m += 2;
            }
        }
        out
    }

    /// Position of `(n_plus, n_minus)` in [`Self::states`].
    pub fn index(&self, n_plus: u32, n_minus: u32) -> Option<usize> {
        let total = n_plus + n_minus;
        if total > self.n_max {
            return None;
        }
        let offset = (total as usize) * (total as usize + 1) / 2;
        Some(offset + n_plus as usize)
    }
}

/// Matrix of the charged-oscillator Hamiltonian in the chiral Fock basis.
pub fn build_zeeman_matrix<T: Scalar>(
    spec: &FockBasisSpec,
    b: T,
    params: &PhysicalParams<T>,
) -> SymMatrix<T> {
    let states = spec.states();
    let mut h = SymMatrix::zeros(spec.dim());
    let hbar = params.hbar;
    let w = params.omega;
    let m = params.mass;
    let e = params.charge;
    let c = params.light_speed;
    let larmor = e * b / (T::of(2) * m * c);
    // (e^2 B^2 / 8 M c^2) * (hbar / M omega)
    let dia = e * e * b * b / (T::of(8) * m * c * c) * hbar / (m * w);
    for (k, &(np, nm)) in states.iter().enumerate() {
        let total = T::from_u32(np + nm).unwrap();
        let mq = T::from_u32(np).unwrap() - T::from_u32(nm).unwrap();
        let diag = hbar * w * (total + T::one()) - larmor * hbar * mq + dia * (total + T::one());
        h.set(k, k, diag);
        if let Some(k2) = spec.index(np + 1, nm + 1) {
            let amp = dia
                * (T::from_u32(np + 1).unwrap() * T::from_u32(nm + 1).unwrap()).sqrt();
            h.set(k, k2, amp);
        }
    }
    h
}

/// Closed-form levels of the charged oscillator:
/// `E = hbar Omega (n+ + n- + 1) - (e B hbar / 2 M c)(n+ - n-)` with
/// `Omega = sqrt(omega^2 + (e B / 2 M c)^2)`.
pub fn exact_landau_levels<T: Scalar>(
    n_plus: u32,
    n_minus: u32,
    b: T,
    params: &PhysicalParams<T>,
) -> T {
    let larmor = params.larmor(b);
    let w = params.omega;
    let omega_eff = (w * w + larmor * larmor).sqrt();
    let total = T::from_u32(n_plus + n_minus).unwrap();
    let mq = T::from_u32(n_plus).unwrap() - T::from_u32(n_minus).unwrap();
    params.hbar * omega_eff * (total + T::one()) - larmor * params.hbar * mq
}

/// Result of [`zeroth_invariant_check`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZerothInvariantCheck<T> {
    /// `|| [I0, H0] ||_F`; exactly zero since I0 is H0.
    pub commutator_norm: T,
    /// Worst per-level overlap between the eigenvectors of I0 and H0
    /// (matched by label); 1 when the eigenbases coincide.
    pub min_eigenvector_overlap: T,
}

/// The zeroth-order invariant equals the unperturbed Hamiltonian, so the two
/// operators commute exactly and share their eigenbasis.
pub fn zeroth_invariant_check<T: Scalar>(
    spec: &FockBasisSpec,
    params: &PhysicalParams<T>,
) -> Result<ZerothInvariantCheck<T>, SpectrumError> {
    let h0 = build_zeeman_matrix(spec, T::zero(), params);
    let i0 = build_zeeman_matrix(spec, T::zero(), params);
    let commutator_norm = i0.commutator_norm(&h0);
    let eh = diagonalize(&h0)?;
    let ei = diagonalize(&i0)?;
    let mut min_overlap = T::one();
    for (u, v) in eh.vectors.iter().zip(ei.vectors.iter()) {
        let dot: T = u.iter().zip(v.iter()).map(|(&a, &b)| a * b).sum();
        min_overlap = min_overlap.min(dot.abs());
    }
    Ok(ZerothInvariantCheck { commutator_norm, min_eigenvector_overlap: min_overlap })
}

/// Eigenvalues with quantum-number labels and truncation-error estimates.
#[derive(Debug, Clone)]
pub struct SpectrumResult<T> {
    /// Energies, ascending.
    pub eigenvalues: Vec<T>,
    /// `(n_plus, n_minus)` per level, assigned from the angular-momentum
    /// sector of each eigenvector plus its rank within the sector. Exact away
    /// from degeneracies; heuristic (continuity-based) at them.
    pub labels: Vec<(u32, u32)>,
    /// Per-level `|E(n_max) - E(n_max + 4)|`, matched by label.
    pub truncation_error: Vec<T>,
}

/// Diagonalize at `n_max` and `n_max + 4`, label the levels, and estimate the
/// truncation error per level.
pub fn solve_spectrum<T: Scalar>(
    spec: &FockBasisSpec,
    b: T,
    params: &PhysicalParams<T>,
) -> Result<SpectrumResult<T>, SpectrumError> {
    let eigen = diagonalize(&build_zeeman_matrix(spec, b, params))?;
    let labels = label_levels(&eigen, spec);

    let spec_big = FockBasisSpec::new(spec.n_max() + 4)?;
    let eigen_big = diagonalize(&build_zeeman_matrix(&spec_big, b, params))?;
    let labels_big = label_levels(&eigen_big, &spec_big);
    let mut by_label = std::collections::HashMap::new();
    for (lab, &val) in labels_big.iter().zip(eigen_big.values.iter()) {
        by_label.entry(*lab).or_insert(val);
    }
    let truncation_error = labels
        .iter()
        .zip(eigen.values.iter())
        .map(|(lab, &val)| match by_label.get(lab) {
            Some(&big) => (val - big).abs(),
            None => T::nan(),
        })
        .collect();

    Ok(SpectrumResult { eigenvalues: eigen.values, labels, truncation_error })
}

/// Assign `(n_plus, n_minus)` labels: round the angular-momentum expectation
/// of each eigenvector to get the sector `m`, then rank within the sector.
pub fn label_levels<T: Scalar>(eigen: &Eigen<T>, spec: &FockBasisSpec) -> Vec<(u32, u32)> {
    let states = spec.states();
    let n = eigen.values.len();
    let mut m_of: Vec<i64> = Vec::with_capacity(n);
    for v in &eigen.vectors {
        let mut m_exp = T::zero();
        for (i, &(np, nm)) in states.iter().enumerate() {
            let mi = T::from_u32(np).unwrap() - T::from_u32(nm).unwrap();
            m_exp += v[i] * v[i] * mi;
        }
        m_of.push(m_exp.round().to_i64().unwrap_or(0));
    }
    let mut rank: std::collections::HashMap<i64, u32> = std::collections::HashMap::new();
    let mut labels = Vec::with_capacity(n);
    for &m in &m_of {
        let k = rank.entry(m).or_insert(0);
        // within sector m the k-th level has N = |m| + 2k
        let total = m.unsigned_abs() as i64 + 2 * (*k as i64);
        let np = ((total + m) / 2) as u32;
        let nm = ((total - m) / 2) as u32;
        labels.push((np, nm));
        *k += 1;
    }
    labels
}

/// CSV export: `n_plus,n_minus,energy,truncation_error`, one row per level,
/// energies ascending. Floats use `fmt` (e.g. a fixed 17-significant-digit
/// formatter) so output is reproducible byte for byte.
pub fn write_spectrum_csv<T: Scalar, W: Write>(
    result: &SpectrumResult<T>,
    fmt: impl Fn(T) -> String,
    out: &mut W,
) -> std::io::Result<()> {
    writeln!(out, "n_plus,n_minus,energy,truncation_error")?;
    for i in 0..result.eigenvalues.len() {
        let (np, nm) = result.labels[i];
        writeln!(
            out,
            "{},{},{},{}",
            np,
            nm,
            fmt(result.eigenvalues[i]),
            fmt(result.truncation_error[i])
        )?;
    }
    Ok(())
}
