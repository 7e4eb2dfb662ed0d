//! Dense complex matrices sized for a handful of qutrits (dim ≤ 81).

use crate::{Error, Result};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// A dense complex square matrix with explicit dimension, stored row-major.
///
/// Houses every operator in the crate: Paulis, Clifford unitaries,
/// phase-point operators, projectors, and density matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl Operator {
    pub fn zeros(dim: usize) -> Self {
        Operator {
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Operator::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Builds from row-major entries; length must be a perfect square.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        Ok(Operator { dim, entries })
    }

    /// Projector |ψ⟩⟨ψ| onto a (not necessarily normalized) ket.
    pub fn from_ket(ket: &[Complex64]) -> Self {
        let dim = ket.len();
        let norm2: f64 = ket.iter().map(|c| c.norm_sqr()).sum();
        let mut m = Operator::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = ket[i] * ket[j].conj() / norm2;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, rhs: &Operator) -> Result<Operator> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Operator) -> Result<Operator> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let mut out = self.clone();
        for (o, r) in out.entries.iter_mut().zip(&rhs.entries) {
            *o += r;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Operator) -> Result<Operator> {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Operator {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e *= c;
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Operator {
        let n = self.dim;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    /// Kronecker product, row order: `self` indexes the slower factor.
    pub fn tensor(&self, rhs: &Operator) -> Operator {
        let (n, m) = (self.dim, rhs.dim);
        let nm = n * m;
        let mut out = Operator::zeros(nm);
        for i in 0..n {
            for j in 0..n {
                let a = self.entries[i * n + j];
                if a == Complex64::ZERO {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.entries[(i * m + k) * nm + (j * m + l)] = a * rhs.entries[k * m + l];
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, ket: &[Complex64]) -> Vec<Complex64> {
        debug_assert_eq!(ket.len(), self.dim);
        let n = self.dim;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.entries[i * n + j] * ket[j])
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Largest entrywise modulus of `self - rhs`.
    pub fn max_abs_diff(&self, rhs: &Operator) -> f64 {
        self.entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, rhs: &Operator, tol: f64) -> bool {
        self.dim == rhs.dim && self.max_abs_diff(rhs) <= tol
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.dagger()) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        match self.dagger().mul(self) {
            Ok(p) => p.approx_eq(&Operator::identity(self.dim), tol),
            Err(_) => false,
        }
    }

    /// Checks Hermiticity and unit trace, the preconditions shared by all
    /// state-consuming operations.
    pub fn check_state(&self) -> Result<()> {
        if !self.is_hermitian(1e-9) {
            return Err(Error::InvalidState("not Hermitian".to_string()));
        }
        let t = self.trace();
        if (t.re - 1.0).abs() > 1e-9 || t.im.abs() > 1e-9 {
            return Err(Error::InvalidState(alloc::format!(
                "trace {:.6}+{:.6}i != 1",
                t.re,
                t.im
            )));
        }
        Ok(())
    }

    /// Projects onto the Hermitian part and renormalizes the trace to one.
    /// Fixed-point iteration amplifies any non-Hermitian rounding residue,
    /// so every round output passes through this.
    pub fn hermitized_unit_trace(&self) -> Operator {
        let n = self.dim;
        let mut out = Operator::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] =
                    (self.entries[i * n + j] + self.entries[j * n + i].conj()) * 0.5;
            }
        }
        let t = out.trace().re;
        out.scale(Complex64::new(1.0 / t, 0.0))
    }

    /// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi
    /// rotations.
    pub fn herm_eigenvalues(&self) -> Vec<f64> {
        debug_assert!(self.is_hermitian(1e-8));
        let n = self.dim;
        let mut a = self.entries.clone();
        // symmetrize exactly
        for i in 0..n {
            for j in 0..n {
                let h = (a[i * n + j] + a[j * n + i].conj()) * 0.5;
                a[i * n + j] = h;
                a[j * n + i] = h.conj();
            }
        }
        for _sweep in 0..64 {
            let mut off = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a[p * n + q].norm_sqr();
                }
            }
            if off < 1e-28 {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq.norm_sqr() < 1e-32 {
                        continue;
                    }
                    // Unitary 2x2 rotation zeroing the (p,q) element:
                    // with apq = |apq| e^{iφ}, rotate in the (p,q) plane.
                    let app = a[p * n + p].re;
                    let aqq = a[q * n + q].re;
                    let abs = apq.norm();
                    let phase = apq / abs;
                    let theta = 0.5 * libm::atan2(2.0 * abs, app - aqq);
                    let (s, c) = (libm::sin(theta), libm::cos(theta));
                    // columns
                    for i in 0..n {
                        let aip = a[i * n + p];
                        let aiq = a[i * n + q];
                        a[i * n + p] = aip * c + aiq * phase.conj() * s;
                        a[i * n + q] = -aip * phase * s + aiq * c;
                    }
                    // rows
                    for j in 0..n {
                        let apj = a[p * n + j];
                        let aqj = a[q * n + j];
                        a[p * n + j] = apj * c + aqj * phase * s;
                        a[q * n + j] = -apj * phase.conj() * s + aqj * c;
                    }
                }
            }
        }
        let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
        eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
        eig
    }

    /// Smallest eigenvalue of a Hermitian matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        self.herm_eigenvalues()[0]
    }
}

impl core::ops::Index<(usize, usize)> for Operator {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Operator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        let n = self.dim;
        &mut self.entries[i * n + j]
    }
}

/// ⟨ψ|ρ|ψ⟩ for a normalized ket: fidelity of a state with a pure target.
pub fn fidelity(rho: &Operator, target: &[Complex64]) -> f64 {
    let w = rho.apply(target);
    target.iter().zip(&w).map(|(t, w)| (t.conj() * w).re).sum()
}

/// Trace distance `½‖ρ - σ‖₁` between Hermitian matrices.
pub fn trace_distance(rho: &Operator, sigma: &Operator) -> Result<f64> {
    let diff = rho.sub(sigma)?;
    Ok(0.5 * diff.herm_eigenvalues().iter().map(|e| e.abs()).sum::<f64>())
}

/// Normalizes a ket to unit norm.
pub fn normalized(ket: &[Complex64]) -> Vec<Complex64> {
    let norm = libm::sqrt(ket.iter().map(|c| c.norm_sqr()).sum::<f64>());
    ket.iter().map(|c| c / norm).collect()
}
