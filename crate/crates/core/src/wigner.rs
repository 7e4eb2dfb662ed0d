//! Discrete Wigner function on the d×d phase space, sum-negativity, and
//! membership tests for the Wigner and stabilizer polytopes.
//!
//! The phase-point operators are `A_{x,z} = D_(x|z) A₀,₀ D†_(x|z)` with
//! `A₀,₀ = (1/d) Σ_u D_u`, the parity operator; at d = 3 this is the
//! permutation matrix fixing |0⟩ and swapping |1⟩ ↔ |2⟩. A state is inside
//! the Wigner polytope iff `W_ρ(x,z) = (1/d)Tr(A_{x,z} ρ) ≥ 0` everywhere;
//! such states are known to be useless for magic state distillation. The
//! stabilizer polytope (convex hull of the 12 pure qutrit stabilizer
//! states) sits strictly inside it.

use crate::linalg::Operator;
use crate::pauli::{all_single_labels, displacement, omega_pow, PauliLabel};
use crate::simplex;
use crate::{Error, Result};
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Tolerance on the most negative Wigner entry for polytope classification.
pub const WIGNER_TOL: f64 = 1e-12;
/// Tolerance on the phase-1 simplex optimum for stabilizer membership.
pub const STAB_LP_TOL: f64 = 1e-9;

/// The d×d grid of real Wigner values `W(x, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerTable {
    d: u8,
    values: Vec<f64>,
}

impl WignerTable {
    pub fn from_values(d: u8, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), (d as usize).pow(2));
        WignerTable { d, values }
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn get(&self, x: usize, z: usize) -> f64 {
        self.values[x * self.d as usize + z]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Total magnitude of the negative entries.
    pub fn sum_negativity(&self) -> f64 {
        -self.values.iter().filter(|v| **v < 0.0).sum::<f64>()
    }

    pub fn max_abs_diff(&self, other: &WignerTable) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Membership verdict for a polytope test. `margin` is the most negative
/// Wigner entry, or minus the phase-1 simplex infeasibility for the
/// stabilizer polytope; `inside` iff the margin clears the tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolytopeVerdict {
    pub inside: bool,
    pub margin: f64,
}

/// `A₀,₀ = (1/d) Σ_(x,z) D_(x|z)`, the parity operator.
pub fn a00(d: u8) -> Operator {
    let mut sum = Operator::zeros(d as usize);
    for label in all_single_labels(d) {
        sum = sum.add(&displacement(&label)).expect("same dim");
    }
    sum.scale(Complex64::new(1.0 / d as f64, 0.0))
}

/// Phase-point operator `A_{x,z} = D_(x|z) A₀,₀ D†_(x|z)`.
pub fn phase_point_operator(x: i64, z: i64, d: u8) -> Operator {
    let dm = displacement(&PauliLabel::single(x, z, d));
    dm.mul(&a00(d))
        .expect("same dim")
        .mul(&dm.dagger())
        .expect("same dim")
}

/// All d² phase-point operators in lexicographic (x, z) order.
pub fn phase_point_operators(d: u8) -> Vec<Operator> {
    let a0 = a00(d);
    all_single_labels(d)
        .iter()
        .map(|label| {
            let dm = displacement(label);
            dm.mul(&a0)
                .expect("same dim")
                .mul(&dm.dagger())
                .expect("same dim")
        })
        .collect()
}

/// `W_ρ(x,z) = (1/d) Tr(A_{x,z} ρ)` for a Hermitian unit-trace input.
pub fn wigner_function(rho: &Operator) -> Result<WignerTable> {
    rho.check_state()?;
    let d = rho.dim() as u8;
    let mut values = Vec::with_capacity((d as usize).pow(2));
    for a in phase_point_operators(d) {
        let t = a.mul(rho)?.trace();
        if t.im.abs() > 1e-10 {
            return Err(Error::InvalidState(
                "Wigner value has imaginary part".to_string(),
            ));
        }
        values.push(t.re / d as f64);
    }
    Ok(WignerTable { d, values })
}

/// Reconstructs `ρ = Σ_(x,z) W(x,z) A_{x,z}` from a table.
pub fn reconstruct(table: &WignerTable) -> Operator {
    let d = table.d;
    let mut rho = Operator::zeros(d as usize);
    for (w, a) in table.values.iter().zip(phase_point_operators(d)) {
        rho = rho
            .add(&a.scale(Complex64::new(*w, 0.0)))
            .expect("same dim");
    }
    rho
}

/// Sum-negativity `sn(ρ) = Σ_{W<0} |W|`, equal to `(Σ|W| − 1)/2` for
/// unit-trace states.
pub fn sum_negativity(rho: &Operator) -> Result<f64> {
    Ok(wigner_function(rho)?.sum_negativity())
}

/// Wigner polytope membership: every Wigner value nonnegative.
pub fn in_wigner_polytope(rho: &Operator) -> Result<PolytopeVerdict> {
    let min = wigner_function(rho)?.min();
    Ok(PolytopeVerdict {
        inside: min >= -WIGNER_TOL,
        margin: min,
    })
}

/// The 12 pure qutrit stabilizer states: the eigenbases of Z, X, XZ, XZ²,
/// each ordered by eigenvalue ω⁰, ω¹, ω². Returned as kets.
pub fn stabilizer_kets(d: u8) -> Vec<Vec<Complex64>> {
    assert_eq!(d, 3, "stabilizer vertex list is qutrit-specific");
    let mut states = Vec::with_capacity(12);
    for k in 0..3 {
        let mut v = vec![Complex64::ZERO; 3];
        v[k] = Complex64::ONE;
        states.push(v);
    }
    // Eigenvectors of X Z^m: v_{j+1} = λ⁻¹ ω^{mj} v_j with λ = ω^k.
    let inv_sqrt3 = Complex64::new(1.0 / libm::sqrt(3.0), 0.0);
    for m in 0..3i64 {
        for k in 0..3i64 {
            let lam_inv = omega_pow(-k, d);
            let mut v = [Complex64::ONE; 3];
            for j in 0..2usize {
                v[j + 1] = v[j] * lam_inv * omega_pow(m * j as i64, d);
            }
            states.push(v.iter().map(|c| c * inv_sqrt3).collect());
        }
    }
    states
}

/// The 12 pure stabilizer states as density matrices, deterministic order.
pub fn stabilizer_states(d: u8) -> Vec<Operator> {
    stabilizer_kets(d)
        .iter()
        .map(|k| Operator::from_ket(k))
        .collect()
}

/// Real 9-vector parameterization of a 3×3 Hermitian matrix: diagonal,
/// then (re, im) of the strict upper triangle.
fn herm_to_vec9(rho: &Operator) -> [f64; 9] {
    [
        rho[(0, 0)].re,
        rho[(1, 1)].re,
        rho[(2, 2)].re,
        rho[(0, 1)].re,
        rho[(0, 1)].im,
        rho[(0, 2)].re,
        rho[(0, 2)].im,
        rho[(1, 2)].re,
        rho[(1, 2)].im,
    ]
}

/// Stabilizer polytope membership: feasibility of
/// `ρ = Σᵢ λᵢ |sᵢ⟩⟨sᵢ|, λᵢ ≥ 0` over the 12 pure stabilizer states,
/// solved by phase-1 simplex. (Σλᵢ = 1 is implied by the trace row.)
pub fn in_stabilizer_polytope(rho: &Operator) -> Result<PolytopeVerdict> {
    rho.check_state()?;
    if rho.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 3,
        });
    }
    let vertices = stabilizer_states(3);
    let (m, n) = (9, vertices.len());
    let mut a = vec![0.0f64; m * n];
    for (j, s) in vertices.iter().enumerate() {
        let col = herm_to_vec9(s);
        for i in 0..m {
            a[i * n + j] = col[i];
        }
    }
    let b = herm_to_vec9(rho);
    let infeas = simplex::phase1_infeasibility(&a, m, n, &b);
    Ok(PolytopeVerdict {
        inside: infeas <= STAB_LP_TOL,
        margin: -infeas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::normalized;
    use crate::OP_TOL;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn maximally_mixed() -> Operator {
        Operator::identity(3).scale(c(1.0 / 3.0, 0.0))
    }

    fn norrell() -> Vec<Complex64> {
        normalized(&[c(2.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)])
    }

    #[test]
    fn a00_matches_parity_matrix() {
        let a = a00(3);
        let mut want = Operator::zeros(3);
        want[(0, 0)] = c(1.0, 0.0);
        want[(1, 2)] = c(1.0, 0.0);
        want[(2, 1)] = c(1.0, 0.0);
        assert!(a.approx_eq(&want, OP_TOL));
        assert!(phase_point_operator(0, 0, 3).approx_eq(&want, OP_TOL));
    }

    #[test]
    fn phase_point_operator_properties() {
        let mut sum = Operator::zeros(3);
        for a in phase_point_operators(3) {
            assert!(a.is_hermitian(OP_TOL));
            assert!((a.trace().re - 1.0).abs() < OP_TOL);
            let sq = a.mul(&a).unwrap();
            assert!(sq.approx_eq(&Operator::identity(3), OP_TOL));
            let eig = a.herm_eigenvalues();
            assert!((eig[0] + 1.0).abs() < 1e-9);
            assert!((eig[1] - 1.0).abs() < 1e-9);
            assert!((eig[2] - 1.0).abs() < 1e-9);
            sum = sum.add(&a).unwrap();
        }
        // Σ A_{x,z} = 3·1
        assert!(sum.approx_eq(&Operator::identity(3).scale(c(3.0, 0.0)), OP_TOL));
    }

    #[test]
    fn wigner_of_maximally_mixed_is_flat() {
        let w = wigner_function(&maximally_mixed()).unwrap();
        for x in 0..3 {
            for z in 0..3 {
                assert!((w.get(x, z) - 1.0 / 9.0).abs() < OP_TOL);
            }
        }
    }

    #[test]
    fn wigner_of_norrell_state() {
        // Two entries of exactly -1/6, at (1,0) and (2,0); sum-negativity 1/3.
        let rho = Operator::from_ket(&norrell());
        let w = wigner_function(&rho).unwrap();
        assert!((w.get(0, 0) - 1.0 / 3.0).abs() < 1e-12);
        assert!((w.get(1, 0) + 1.0 / 6.0).abs() < 1e-12);
        assert!((w.get(2, 0) + 1.0 / 6.0).abs() < 1e-12);
        let negatives = w.values().iter().filter(|v| **v < -1e-12).count();
        assert_eq!(negatives, 2);
        assert!((w.sum_negativity() - 1.0 / 3.0).abs() < 1e-12);
        assert!((sum_negativity(&rho).unwrap() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn wigner_of_zero_state() {
        let mut ket = vec![Complex64::ZERO; 3];
        ket[0] = Complex64::ONE;
        let w = wigner_function(&Operator::from_ket(&ket)).unwrap();
        // Direct evaluation: 1/3 along x = 0, zero elsewhere.
        for z in 0..3 {
            assert!((w.get(0, z) - 1.0 / 3.0).abs() < 1e-12);
            assert!(w.get(1, z).abs() < 1e-12);
            assert!(w.get(2, z).abs() < 1e-12);
        }
        assert!(w.min() >= -1e-15);
        assert!(sum_negativity(&Operator::from_ket(&ket)).unwrap() < 1e-15);
    }

    #[test]
    fn wigner_rejects_invalid_states() {
        let not_unit_trace = Operator::identity(3);
        assert!(matches!(
            wigner_function(&not_unit_trace),
            Err(Error::InvalidState(_))
        ));
        let mut non_herm = maximally_mixed();
        non_herm[(0, 1)] = c(0.5, 0.0);
        assert!(matches!(
            wigner_function(&non_herm),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn depolarized_norrell_negativity() {
        // Halfway to the maximally mixed state: sn = 1/18.
        let rho = Operator::from_ket(&norrell())
            .scale(c(0.5, 0.0))
            .add(&maximally_mixed().scale(c(0.5, 0.0)))
            .unwrap();
        let sn = sum_negativity(&rho).unwrap();
        assert!((sn - 1.0 / 18.0).abs() < 1e-12);
        assert!(sn > 0.0 && sn < 1.0 / 3.0);
    }

    #[test]
    fn wigner_polytope_verdicts() {
        let v = in_wigner_polytope(&maximally_mixed()).unwrap();
        assert!(v.inside);
        assert!((v.margin - 1.0 / 9.0).abs() < 1e-12);
        let v = in_wigner_polytope(&Operator::from_ket(&norrell())).unwrap();
        assert!(!v.inside);
        assert!((v.margin + 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn stabilizer_state_list() {
        let kets = stabilizer_kets(3);
        assert_eq!(kets.len(), 12);
        // Contains |0⟩, |1⟩, |2⟩.
        for k in 0..3 {
            let mut basis = vec![Complex64::ZERO; 3];
            basis[k] = Complex64::ONE;
            assert!(kets
                .iter()
                .any(|s| Operator::from_ket(s).approx_eq(&Operator::from_ket(&basis), OP_TOL)));
        }
        // Contains (1, ω^k, ω^k)/√3 for k = 0, 1, 2.
        for k in 0..3i64 {
            let w = omega_pow(k, 3);
            let target = Operator::from_ket(&normalized(&[Complex64::ONE, w, w]));
            assert!(kets
                .iter()
                .any(|s| Operator::from_ket(s).approx_eq(&target, OP_TOL)));
        }
        // All 12 are nonnegatively represented.
        for s in &kets {
            assert!(sum_negativity(&Operator::from_ket(s)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn stabilizer_polytope_verdicts() {
        assert!(in_stabilizer_polytope(&maximally_mixed()).unwrap().inside);
        for s in stabilizer_states(3) {
            assert!(in_stabilizer_polytope(&s).unwrap().inside, "vertex");
        }
        let v = in_stabilizer_polytope(&Operator::from_ket(&norrell())).unwrap();
        assert!(!v.inside);
        assert!(v.margin < -0.1);
    }

    #[test]
    fn pole_mixture_is_a_vertex_barycenter() {
        // ½|0⟩⟨0| + ½|N⟩⟨N| equals the uniform mixture of |0⟩ and the three
        // (1, ω^k, ω^k)/√3 vertices, so the LP reports it inside even though
        // the sphere picture puts |N⟩ far outside: the coordinates do not
        // respect convexity.
        let n = normalized(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let mut zero = vec![Complex64::ZERO; 3];
        zero[0] = Complex64::ONE;
        let mix = Operator::from_ket(&zero)
            .scale(c(0.5, 0.0))
            .add(&Operator::from_ket(&n).scale(c(0.5, 0.0)))
            .unwrap();
        let mut quarter = Operator::from_ket(&zero).scale(c(0.25, 0.0));
        for k in 0..3i64 {
            let w = omega_pow(k, 3);
            let vertex = Operator::from_ket(&normalized(&[Complex64::ONE, w, w]));
            quarter = quarter.add(&vertex.scale(c(0.25, 0.0))).unwrap();
        }
        assert!(mix.approx_eq(&quarter, 1e-14));
        assert!(in_stabilizer_polytope(&mix).unwrap().inside);
        // The pure south pole itself is far outside.
        assert!(
            !in_stabilizer_polytope(&Operator::from_ket(&n))
                .unwrap()
                .inside
        );
    }

    #[test]
    fn reconstruction_roundtrip() {
        let rho = Operator::from_ket(&norrell());
        let w = wigner_function(&rho).unwrap();
        assert!(reconstruct(&w).approx_eq(&rho, 1e-10));
    }
}
