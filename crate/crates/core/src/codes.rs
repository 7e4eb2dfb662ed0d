//! `[[n,1,·]]₃` stabilizer codes from `(x|z)` generator tables: validation,
//! trivial-syndrome projectors, and the decoding isometry onto one logical
//! qutrit.

use crate::gf::{self, Zd};
use crate::linalg::{normalized, Operator};
use crate::pauli::{displacement, PauliLabel};
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// A stabilizer code given by its generator rows and a logical Weyl pair,
/// all as displacement labels.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerCode {
    pub n: usize,
    pub k: usize,
    pub d: u8,
    pub generators: Vec<PauliLabel>,
    pub logical_z: PauliLabel,
    pub logical_x: PauliLabel,
}

/// Codespace data derived from a validated code: the trivial-syndrome
/// projector Π and the orthonormal logical basis `V|0⟩, V|1⟩, V|2⟩`
/// (columns of the decoding isometry, fixed by the logical Weyl pair up to
/// one global phase).
#[derive(Debug, Clone)]
pub struct CodeSpace {
    pub projector: Operator,
    pub isometry: Vec<Vec<Complex64>>,
}

/// A violated code invariant, naming the offending rows.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    GeneratorsAnticommute {
        i: usize,
        j: usize,
        exponent: u8,
    },
    LogicalAnticommutes {
        which: &'static str,
        generator: usize,
    },
    LogicalPairDegenerate,
    DependentGenerators {
        rank: usize,
    },
    WrongLogicalCount {
        k: usize,
    },
    MixedModulus,
    MixedLength,
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Violation::GeneratorsAnticommute { i, j, exponent } => {
                write!(
                    f,
                    "generators {i} and {j} fail to commute (exponent {exponent})"
                )
            }
            Violation::LogicalAnticommutes { which, generator } => {
                write!(
                    f,
                    "logical {which} fails to commute with generator {generator}"
                )
            }
            Violation::LogicalPairDegenerate => {
                write!(f, "logical Z and X commute; they do not form a Weyl pair")
            }
            Violation::DependentGenerators { rank } => {
                write!(f, "generator rows have rank {rank}, expected n-k")
            }
            Violation::WrongLogicalCount { k } => write!(f, "k = {k}, only k = 1 supported"),
            Violation::MixedModulus => write!(f, "rows use different moduli"),
            Violation::MixedLength => write!(f, "rows act on different qudit counts"),
        }
    }
}

impl StabilizerCode {
    /// Builds a code from raw `(x…, z…)` rows of length 2n over ℤ_d.
    pub fn from_rows(
        d: u8,
        n: usize,
        generators: &[Vec<i64>],
        logical_z: &[i64],
        logical_x: &[i64],
    ) -> Result<Self> {
        let to_label = |row: &[i64]| -> Result<PauliLabel> {
            if row.len() != 2 * n {
                return Err(Error::DimensionMismatch {
                    left: row.len(),
                    right: 2 * n,
                });
            }
            PauliLabel::new(&row[..n], &row[n..], 0, d)
        };
        let generators = generators
            .iter()
            .map(|r| to_label(r))
            .collect::<Result<Vec<_>>>()?;
        let k = n - generators.len();
        Ok(StabilizerCode {
            n,
            k,
            d,
            generators,
            logical_z: to_label(logical_z)?,
            logical_x: to_label(logical_x)?,
        })
    }

    /// Checks every code invariant; an empty list means the code is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.k != 1 {
            out.push(Violation::WrongLogicalCount { k: self.k });
        }
        let rows: Vec<&PauliLabel> = self
            .generators
            .iter()
            .chain([&self.logical_z, &self.logical_x])
            .collect();
        if rows.iter().any(|r| r.modulus() != self.d) {
            out.push(Violation::MixedModulus);
            return out;
        }
        if rows.iter().any(|r| r.qudits() != self.n) {
            out.push(Violation::MixedLength);
            return out;
        }
        for i in 0..self.generators.len() {
            for j in (i + 1)..self.generators.len() {
                let e = self.generators[i].commutation_exponent(&self.generators[j]);
                if e.value() != 0 {
                    out.push(Violation::GeneratorsAnticommute {
                        i,
                        j,
                        exponent: e.value(),
                    });
                }
            }
        }
        for (i, g) in self.generators.iter().enumerate() {
            if !self.logical_z.commutes_with(g) {
                out.push(Violation::LogicalAnticommutes {
                    which: "Z",
                    generator: i,
                });
            }
            if !self.logical_x.commutes_with(g) {
                out.push(Violation::LogicalAnticommutes {
                    which: "X",
                    generator: i,
                });
            }
        }
        if self.logical_z.commutes_with(&self.logical_x) {
            out.push(Violation::LogicalPairDegenerate);
        }
        let gen_rows: Vec<Vec<u8>> = self.generators.iter().map(PauliLabel::row).collect();
        let rank = gf::rank(&gen_rows, self.d);
        if rank != self.generators.len() {
            out.push(Violation::DependentGenerators { rank });
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Commutation exponent of the logical pair, `Z_L X_L = ω^e X_L Z_L`.
    pub fn logical_pair_exponent(&self) -> Zd {
        self.logical_z.commutation_exponent(&self.logical_x)
    }
}

/// Projector onto the joint ω⁰ eigenspace of every generator's
/// displacement: `Π = Πᵢ (1/d) Σ_m Gᵢ^m`. Hermitian, idempotent, rank d^k
/// for a valid code.
pub fn trivial_syndrome_projector(code: &StabilizerCode) -> Result<Operator> {
    let dim = (code.d as usize).pow(code.n as u32);
    let mut proj = Operator::identity(dim);
    for g in &code.generators {
        let gm = displacement(g);
        let mut sector = Operator::identity(dim);
        let mut power = Operator::identity(dim);
        for _ in 1..code.d {
            power = power.mul(&gm)?;
            sector = sector.add(&power)?;
        }
        sector = sector.scale(Complex64::new(1.0 / code.d as f64, 0.0));
        proj = proj.mul(&sector)?;
    }
    // Π is a product of commuting projectors; its trace is the rank.
    let rank = proj.trace().re;
    let want = (code.d as usize).pow(code.k as u32) as f64;
    if (rank - want).abs() > 1e-8 {
        return Err(Error::PhaseConvention { rank });
    }
    Ok(proj)
}

/// Builds the decoding isometry: columns `v_j` with `Π v_j = v_j`,
/// `Z_L v_j = ω^j v_j`, and `X_L v_j = v_{j+1}`. The construction takes
/// `v₀` from the rank-1 projector `(1/d) Σ_m Z_L^m Π` and shifts it with
/// `X_L`; the only freedom left is a global phase, which cancels in the
/// decoded state.
pub fn logical_isometry(code: &StabilizerCode) -> Result<CodeSpace> {
    let projector = trivial_syndrome_projector(code)?;
    let d = code.d as usize;
    let dim = projector.dim();
    let zl = displacement(&code.logical_z);
    let xl = displacement(&code.logical_x);

    if code.logical_pair_exponent().value() != 1 {
        return Err(Error::LogicalAlgebra(
            "logical pair exponent is not 1; relabel X_L by a scalar multiple",
        ));
    }

    let mut q0 = projector.clone();
    let mut power = Operator::identity(dim);
    for _ in 1..code.d {
        power = power.mul(&zl)?;
        q0 = q0.add(&power.mul(&projector)?)?;
    }
    q0 = q0.scale(Complex64::new(1.0 / d as f64, 0.0));
    let q0rank = q0.trace().re;
    if (q0rank - 1.0).abs() > 1e-8 {
        return Err(Error::LogicalAlgebra(
            "logical Z does not split the codespace into three lines",
        ));
    }

    // Largest column of the rank-1 projector, phase-fixed so its largest
    // entry is real positive; deterministic across runs.
    let mut best_col = 0;
    let mut best_norm = -1.0;
    for c in 0..dim {
        let norm: f64 = (0..dim).map(|r| q0[(r, c)].norm_sqr()).sum();
        if norm > best_norm + 1e-12 {
            best_norm = norm;
            best_col = c;
        }
    }
    let col: Vec<Complex64> = (0..dim).map(|r| q0[(r, best_col)]).collect();
    let mut v0 = normalized(&col);
    let kmax = (0..dim)
        .max_by(|&a, &b| {
            v0[a]
                .norm()
                .partial_cmp(&v0[b].norm())
                .expect("finite amplitudes")
        })
        .expect("nonempty");
    let phase = v0[kmax] / v0[kmax].norm();
    for a in v0.iter_mut() {
        *a /= phase;
    }

    let mut isometry = vec![v0];
    for j in 1..d {
        let prev = &isometry[j - 1];
        isometry.push(xl.apply(prev));
    }

    // The columns must be an orthonormal logical basis with the advertised
    // Weyl action.
    for (j, v) in isometry.iter().enumerate() {
        let pv = projector.apply(v);
        let resid: f64 = pv
            .iter()
            .zip(v)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if resid > 1e-8 {
            return Err(Error::LogicalAlgebra("logical basis leaves the codespace"));
        }
        let zv = zl.apply(v);
        let want = crate::pauli::omega_pow(j as i64, code.d);
        let resid: f64 = zv
            .iter()
            .zip(v.iter().map(|a| a * want))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if resid > 1e-8 {
            return Err(Error::LogicalAlgebra("Z_L eigenvalue pattern broken"));
        }
    }
    for i in 0..d {
        for j in 0..d {
            let dot: Complex64 = isometry[i]
                .iter()
                .zip(&isometry[j])
                .map(|(a, b)| a.conj() * b)
                .sum();
            let want = if i == j { 1.0 } else { 0.0 };
            if (dot - Complex64::new(want, 0.0)).norm() > 1e-8 {
                return Err(Error::LogicalAlgebra("logical basis not orthonormal"));
            }
        }
    }

    Ok(CodeSpace {
        projector,
        isometry,
    })
}

impl CodeSpace {
    /// `V† σ V` as a d×d matrix (σ acts on the full register).
    pub fn compress(&self, sigma: &Operator) -> Result<Operator> {
        let d = self.isometry.len();
        if sigma.dim() != self.projector.dim() {
            return Err(Error::DimensionMismatch {
                left: sigma.dim(),
                right: self.projector.dim(),
            });
        }
        let mut out = Operator::zeros(d);
        let images: Vec<Vec<Complex64>> = self.isometry.iter().map(|v| sigma.apply(v)).collect();
        for i in 0..d {
            for j in 0..d {
                out[(i, j)] = self.isometry[i]
                    .iter()
                    .zip(&images[j])
                    .map(|(a, b)| a.conj() * b)
                    .sum();
            }
        }
        Ok(out)
    }
}

/// The `[[4,1,2]]₃` code with the edge state |E⟩ as its limiting state.
pub fn edge_code() -> StabilizerCode {
    StabilizerCode::from_rows(
        3,
        4,
        &[
            vec![0, 0, 0, 2, 2, 2, 0, 0],
            vec![1, 1, 0, 1, 1, 1, 2, 2],
            vec![0, 0, 1, 0, 2, 0, 0, 0],
        ],
        &[2, 0, 0, 2, 2, 2, 1, 2],
        &[0, 0, 0, 0, 1, 2, 0, 0],
    )
    .expect("built-in rows are well formed")
}

/// The `[[4,1,2]]₃` code with the Norrell state |N′⟩ as its limiting state.
pub fn face_code() -> StabilizerCode {
    StabilizerCode::from_rows(
        3,
        4,
        &[
            vec![2, 0, 0, 2, 1, 2, 0, 1],
            vec![2, 1, 0, 1, 1, 0, 1, 0],
            vec![1, 0, 1, 2, 0, 2, 1, 0],
        ],
        &[1, 0, 0, 2, 1, 0, 1, 2],
        &[0, 0, 0, 0, 1, 2, 1, 2],
    )
    .expect("built-in rows are well formed")
}

/// Human-readable validation report.
pub fn violation_report(violations: &[Violation]) -> String {
    let mut s = String::new();
    for v in violations {
        s.push_str(&format!("{v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{omega_pow, pauli_x};
    use crate::OP_TOL;

    #[test]
    fn builtin_code_rows() {
        let e = edge_code();
        assert_eq!(e.generators[0].row(), vec![0, 0, 0, 2, 2, 2, 0, 0]);
        assert_eq!(e.logical_x.row(), vec![0, 0, 0, 0, 1, 2, 0, 0]);
        let f = face_code();
        assert_eq!(f.logical_x.row(), vec![0, 0, 0, 0, 1, 2, 1, 2]);
        assert_eq!(f.generators[2].row(), vec![1, 0, 1, 2, 0, 2, 1, 0]);
    }

    #[test]
    fn both_codes_validate() {
        assert!(edge_code().validate().is_empty());
        assert!(face_code().validate().is_empty());
        assert_eq!(edge_code().logical_pair_exponent().value(), 1);
        assert_eq!(face_code().logical_pair_exponent().value(), 1);
    }

    #[test]
    fn validation_catches_constructed_defects() {
        let mut dup = edge_code();
        dup.generators[1] = dup.generators[0].clone();
        assert!(dup
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::DependentGenerators { .. })));

        // X on qutrit 0 and Z on qutrit 0 anticommute.
        let bad = StabilizerCode::from_rows(
            3,
            4,
            &[
                vec![1, 0, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 0, 0, 0],
            ],
            &[0, 0, 0, 1, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 0, 1],
        )
        .unwrap();
        assert!(bad
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::GeneratorsAnticommute { i: 0, j: 1, .. })));
    }

    #[test]
    fn toy_single_qutrit_projector() {
        // Code stabilized by Z alone projects onto |0⟩.
        let code = StabilizerCode {
            n: 1,
            k: 0,
            d: 3,
            generators: vec![PauliLabel::single(0, 1, 3)],
            logical_z: PauliLabel::single(0, 1, 3),
            logical_x: PauliLabel::single(1, 0, 3),
        };
        let p = trivial_syndrome_projector(&code).unwrap();
        let mut want = Operator::zeros(3);
        want[(0, 0)] = Complex64::ONE;
        assert!(p.approx_eq(&want, OP_TOL));
    }

    #[test]
    fn projectors_are_rank_three_and_idempotent() {
        for code in [edge_code(), face_code()] {
            let p = trivial_syndrome_projector(&code).unwrap();
            assert_eq!(p.dim(), 81);
            assert!(p.is_hermitian(OP_TOL));
            assert!((p.trace().re - 3.0).abs() < 1e-9);
            assert!(p.mul(&p).unwrap().approx_eq(&p, 1e-9));
        }
    }

    #[test]
    fn projector_commutes_with_logicals() {
        for code in [edge_code(), face_code()] {
            let p = trivial_syndrome_projector(&code).unwrap();
            for l in [&code.logical_z, &code.logical_x] {
                let lm = displacement(l);
                let lhs = p.mul(&lm).unwrap();
                let rhs = lm.mul(&p).unwrap();
                assert!(lhs.approx_eq(&rhs, 1e-9));
            }
        }
    }

    #[test]
    fn projector_invariant_under_generator_powers() {
        // Replacing a generator row by its double (D_{2a} = D_a² exactly,
        // no phase) generates the same group and the same projector.
        for code in [edge_code(), face_code()] {
            let p1 = trivial_syndrome_projector(&code).unwrap();
            let mut alt = code.clone();
            let doubled: Vec<i64> = code.generators[0]
                .row()
                .iter()
                .map(|&v| 2 * v as i64)
                .collect();
            let (x, z) = doubled.split_at(4);
            alt.generators[0] = PauliLabel::new(x, z, 0, 3).unwrap();
            let p2 = trivial_syndrome_projector(&alt).unwrap();
            assert!(p1.approx_eq(&p2, 1e-9));
        }
    }

    #[test]
    fn projector_invariant_under_row_recombination() {
        // Replacing G₂ by G₁²·G₂ generates the same stabilizer group.
        // The product differs from the bare summed-row displacement by a
        // power of ω, carried in the label's phase exponent.
        let code = edge_code();
        let p1 = trivial_syndrome_projector(&code).unwrap();
        let g1 = code.generators[0].row();
        let g2 = code.generators[1].row();
        let combo: Vec<i64> = g1
            .iter()
            .zip(&g2)
            .map(|(a, b)| (2 * *a as i64 + *b as i64) % 3)
            .collect();
        let (x, z) = combo.split_at(4);
        let d1 = displacement(&code.generators[0]);
        let d2 = displacement(&code.generators[1]);
        let prod = d1.mul(&d1).unwrap().mul(&d2).unwrap();
        let label0 = PauliLabel::new(x, z, 0, 3).unwrap();
        let bare = displacement(&label0);
        let phase_exp = (0..3i64)
            .find(|&e| bare.scale(omega_pow(e, 3)).approx_eq(&prod, 1e-9))
            .expect("a product of displacements is a phased displacement");
        let mut alt = code.clone();
        alt.generators[1] = label0.with_phase(phase_exp);
        let p2 = trivial_syndrome_projector(&alt).unwrap();
        assert!(p1.approx_eq(&p2, 1e-9));
    }

    #[test]
    fn isometry_carries_the_logical_weyl_algebra() {
        for code in [edge_code(), face_code()] {
            let space = logical_isometry(&code).unwrap();
            // V†V = 1 (checked inside), V† Z_L V = diag(1, ω, ω²),
            // V† X_L V = X.
            let zl = displacement(&code.logical_z);
            let z_restricted = space_compress(&space, &zl);
            for j in 0..3 {
                assert!((z_restricted[(j, j)] - omega_pow(j as i64, 3)).norm() < 1e-9);
            }
            let xl = displacement(&code.logical_x);
            let x_restricted = space_compress(&space, &xl);
            assert!(x_restricted.approx_eq(&pauli_x(3), 1e-9));
            // V V† = Π.
            let mut vvd = Operator::zeros(81);
            for v in &space.isometry {
                vvd = vvd.add(&Operator::from_ket(v)).unwrap();
            }
            assert!(vvd.approx_eq(&space.projector, 1e-9));
        }
    }

    fn space_compress(space: &CodeSpace, op: &Operator) -> Operator {
        space.compress(op).unwrap()
    }
}
