//! Generalized Pauli (displacement) operators `D_(x|z) = ω^{2⁻¹xz} X^x Z^z`
//! and the symplectic Clifford unitaries `U_F`.

use crate::gf::{self, SymplecticMat2, Zd};
use crate::linalg::Operator;
use crate::Result;
use alloc::vec::Vec;
use num_complex::Complex64;

/// `ω^k` with `ω = e^{2πi/d}`, for an integer exponent reduced mod d.
pub fn omega_pow(k: i64, d: u8) -> Complex64 {
    let e = k.rem_euclid(d as i64) as f64;
    let angle = 2.0 * core::f64::consts::PI * e / d as f64;
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

/// Label `(x⃗|z⃗)` of an n-qudit displacement operator, together with an
/// overall phase exponent of ω. All entries reduced mod d.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliLabel {
    d: u8,
    x: Vec<u8>,
    z: Vec<u8>,
    phase_exp: u8,
}

impl PauliLabel {
    pub fn new(x: &[i64], z: &[i64], phase_exp: i64, d: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(crate::Error::DimensionMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        let md = d as i64;
        Ok(PauliLabel {
            d,
            x: x.iter().map(|&v| v.rem_euclid(md) as u8).collect(),
            z: z.iter().map(|&v| v.rem_euclid(md) as u8).collect(),
            phase_exp: phase_exp.rem_euclid(md) as u8,
        })
    }

    /// Single-qudit label with no extra phase.
    pub fn single(x: i64, z: i64, d: u8) -> Self {
        PauliLabel::new(&[x], &[z], 0, d).expect("lengths match")
    }

    pub fn qudits(&self) -> usize {
        self.x.len()
    }

    pub fn modulus(&self) -> u8 {
        self.d
    }

    pub fn x(&self) -> &[u8] {
        &self.x
    }

    pub fn z(&self) -> &[u8] {
        &self.z
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    /// The label with phase exponent shifted by `delta`.
    pub fn with_phase(&self, delta: i64) -> Self {
        let mut out = self.clone();
        out.phase_exp = (self.phase_exp as i64 + delta).rem_euclid(self.d as i64) as u8;
        out
    }

    /// Row as the flattened vector `(x..., z...)` over ℤ_d.
    pub fn row(&self) -> Vec<u8> {
        let mut r = self.x.clone();
        r.extend_from_slice(&self.z);
        r
    }

    /// Exponent `c` in `D_a D_b = ω^c D_b D_a`, i.e. the symplectic form
    /// `Σᵢ (x_b z_a − x_a z_b)` mod d. Zero iff the displacements commute.
    pub fn commutation_exponent(&self, other: &PauliLabel) -> Zd {
        debug_assert_eq!(self.d, other.d);
        debug_assert_eq!(self.qudits(), other.qudits());
        let mut acc = 0i64;
        for i in 0..self.qudits() {
            acc += other.x[i] as i64 * self.z[i] as i64 - self.x[i] as i64 * other.z[i] as i64;
        }
        Zd::new(acc, self.d)
    }

    pub fn commutes_with(&self, other: &PauliLabel) -> bool {
        self.commutation_exponent(other).value() == 0
    }
}

/// The qudit shift: `X|j⟩ = |j+1 mod d⟩`.
pub fn pauli_x(d: u8) -> Operator {
    let n = d as usize;
    let mut m = Operator::zeros(n);
    for j in 0..n {
        m[((j + 1) % n, j)] = Complex64::ONE;
    }
    m
}

/// The qudit clock: `Z|j⟩ = ω^j |j⟩`.
pub fn pauli_z(d: u8) -> Operator {
    let n = d as usize;
    let mut m = Operator::zeros(n);
    for j in 0..n {
        m[(j, j)] = omega_pow(j as i64, d);
    }
    m
}

fn matrix_power(m: &Operator, k: u8) -> Operator {
    let mut out = Operator::identity(m.dim());
    for _ in 0..k {
        out = out.mul(m).expect("same dim");
    }
    out
}

/// Single-qudit displacement `ω^{2⁻¹xz} X^x Z^z`.
fn displacement_single(x: u8, z: u8, d: u8) -> Operator {
    let half = gf::inv_mod(2, d).expect("2 invertible for odd d") as i64;
    let phase = omega_pow(half * x as i64 * z as i64, d);
    matrix_power(&pauli_x(d), x)
        .mul(&matrix_power(&pauli_z(d), z))
        .expect("same dim")
        .scale(phase)
}

/// Dense matrix of a labeled displacement: the tensor product of the
/// single-qudit factors in row order, times `ω^{phase_exp}`.
pub fn displacement(label: &PauliLabel) -> Operator {
    let d = label.modulus();
    let mut out = displacement_single(label.x[0], label.z[0], d);
    for i in 1..label.qudits() {
        out = out.tensor(&displacement_single(label.x[i], label.z[i], d));
    }
    out.scale(omega_pow(label.phase_exp as i64, d))
}

/// The symplectic Clifford unitary `U_F` for `F = (α β; γ δ)`, det 1:
/// a normalized double sum for β ≠ 0, a monomial matrix for β = 0. The
/// global phase is taken literally from the construction; conjugations
/// and projectors downstream are insensitive to it.
pub fn clifford_unitary(f: &SymplecticMat2) -> Operator {
    let d = f.modulus();
    let n = d as usize;
    let half = gf::inv_mod(2, d).expect("odd d") as i64;
    let (alpha, beta, gamma, delta) = f.entries();
    let mut u = Operator::zeros(n);
    if beta != 0 {
        let beta_inv = gf::inv_mod(beta as i64, d).expect("nonzero") as i64;
        for j in 0..n as i64 {
            for k in 0..n as i64 {
                let e = half * beta_inv * (alpha as i64 * k * k - 2 * j * k + delta as i64 * j * j);
                u[(j as usize, k as usize)] = omega_pow(e, d);
            }
        }
        u.scale(Complex64::new(1.0 / libm::sqrt(d as f64), 0.0))
    } else {
        for k in 0..n as i64 {
            let e = half * alpha as i64 * gamma as i64 * k * k;
            u[((alpha as usize * k as usize) % n, k as usize)] = omega_pow(e, d);
        }
        u
    }
}

/// Tensor power `m^{⊗k}`.
pub fn tensor_power(m: &Operator, k: usize) -> Operator {
    let mut out = m.clone();
    for _ in 1..k {
        out = out.tensor(m);
    }
    out
}

/// All d² single-qudit labels in lexicographic (x, z) order.
pub fn all_single_labels(d: u8) -> Vec<PauliLabel> {
    let mut out = Vec::new();
    for x in 0..d as i64 {
        for z in 0..d as i64 {
            out.push(PauliLabel::single(x, z, d));
        }
    }
    out
}
