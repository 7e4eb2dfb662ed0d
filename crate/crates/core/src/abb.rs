//! The Bloch-like sphere of the `(a,b,b)` eigenspace of A₀,₀.
//!
//! Pure states `(cos θ, e^{iφ} sin θ/√2, e^{iφ} sin θ/√2)` form a sphere
//! with |0⟩ at the North pole and `|N⟩ = (|1⟩+|2⟩)/√2` at the South pole;
//! interior points `(r, θ, φ)` are depolarized versions of the surface
//! state. Cartesian coordinates are
//! `(x, y, z) = r (sin 2θ cos φ, sin 2θ sin φ, cos 2θ)`, which puts the
//! tetrahedron edge joining |0⟩ and `(1,1,1)/√3` on the φ = 0 meridian.
//!
//! Interior points are *not* convex mixtures of surface states (equal
//! mixing of the poles lands at the origin but differs from 𝟙/3). The
//! picture still makes the Clifford symmetry transparent: PSL(2,ℤ₃) acts
//! as the rotation group of the tetrahedron, partitioning the ball into
//! 12 equivalent wedges.

use crate::gf::{enumerate_psl2, SymplecticMat2};
use crate::linalg::{normalized, Operator};
use crate::pauli::clifford_unitary;
use crate::wigner::a00;
use crate::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// θ at the tetrahedron vertex `(1,1,1)/√3`; the edge arc from |0⟩ spans
/// `θ ∈ [0, THETA_VERTEX]`.
pub fn theta_vertex() -> f64 {
    libm::acos(1.0 / libm::sqrt(3.0))
}

/// θ of the +1 eigenstate of the qutrit Fourier transform, the midpoint of
/// the edge arc.
pub fn theta_fourier() -> f64 {
    0.5 * theta_vertex()
}

/// A point of the `(a,b,b)` ball in spherical coordinates, with the
/// density matrix it induces.
#[derive(Debug, Clone)]
pub struct AbbPoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    rho: Operator,
}

impl AbbPoint {
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0 + 1e-12).contains(&r) {
            return Err(Error::Domain(format!("radius {r} outside [0, 1]")));
        }
        let rho = depolarized_state(r.min(1.0), theta, phi);
        Ok(AbbPoint {
            r: r.min(1.0),
            theta,
            phi,
            rho,
        })
    }

    /// The state `r |ψ(θ,φ)⟩⟨ψ(θ,φ)| + (1−r) 𝟙/3`.
    pub fn state(&self) -> &Operator {
        &self.rho
    }

    pub fn cartesian(&self) -> CartesianPoint {
        let s2 = libm::sin(2.0 * self.theta);
        let c2 = libm::cos(2.0 * self.theta);
        CartesianPoint {
            x: self.r * s2 * libm::cos(self.phi),
            y: self.r * s2 * libm::sin(self.phi),
            z: self.r * c2,
        }
    }
}

/// Cartesian coordinates in the unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl CartesianPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        CartesianPoint { x, y, z }
    }

    pub fn radius(&self) -> f64 {
        libm::sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
    }

    pub fn to_abb(&self) -> Result<AbbPoint> {
        let r = self.radius();
        if r > 1.0 + 1e-12 {
            return Err(Error::Domain(format!(
                "point at radius {r} outside the ball"
            )));
        }
        if r < 1e-15 {
            return AbbPoint::new(0.0, 0.0, 0.0);
        }
        let theta = 0.5 * libm::acos((self.z / r).clamp(-1.0, 1.0));
        let mut phi = libm::atan2(self.y, self.x);
        if phi < 0.0 {
            phi += 2.0 * core::f64::consts::PI;
        }
        AbbPoint::new(r, theta, phi)
    }

    pub fn distance(&self, other: &CartesianPoint) -> f64 {
        let (dx, dy, dz) = (self.x - other.x, self.y - other.y, self.z - other.z);
        libm::sqrt(dx * dx + dy * dy + dz * dz)
    }
}

/// Ket `(cos θ, e^{iφ} sin θ/√2, e^{iφ} sin θ/√2)`, a +1 eigenvector of A₀,₀.
pub fn pure_ket(theta: f64, phi: f64) -> Vec<Complex64> {
    let e = Complex64::new(libm::cos(phi), libm::sin(phi));
    let b = e * (libm::sin(theta) / libm::sqrt(2.0));
    vec![Complex64::new(libm::cos(theta), 0.0), b, b]
}

/// Projector onto [`pure_ket`].
pub fn pure_state(theta: f64, phi: f64) -> Operator {
    Operator::from_ket(&pure_ket(theta, phi))
}

/// `r |ψ(θ,φ)⟩⟨ψ| + (1−r) 𝟙/3`. The depolarizing-noise rate of the usual
/// noise model is `p = 1 − r`.
pub fn depolarized_state(r: f64, theta: f64, phi: f64) -> Operator {
    depolarized(&pure_state(theta, phi), 1.0 - r)
}

/// `(1−p) ρ + p 𝟙/3` for an arbitrary qutrit state.
pub fn depolarized(rho: &Operator, p: f64) -> Operator {
    rho.scale(Complex64::new(1.0 - p, 0.0))
        .add(&Operator::identity(3).scale(Complex64::new(p / 3.0, 0.0)))
        .expect("same dim")
}

/// State at a Cartesian point of the ball.
pub fn state_from_cartesian(point: &CartesianPoint) -> Result<Operator> {
    Ok(point.to_abb()?.state().clone())
}

/// The Norrell state `|N′⟩ = (2,−1,−1)/√6`, the maximally negative qutrit
/// state and the face code's limiting state.
pub fn norrell_ket() -> Vec<Complex64> {
    normalized(&[
        Complex64::new(2.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(-1.0, 0.0),
    ])
}

pub fn norrell_state() -> Operator {
    Operator::from_ket(&norrell_ket())
}

/// The South pole `|N⟩ = (|1⟩+|2⟩)/√2`, Clifford-equivalent to |N′⟩.
pub fn south_pole_ket() -> Vec<Complex64> {
    pure_ket(core::f64::consts::FRAC_PI_2, 0.0)
}

pub fn south_pole_state() -> Operator {
    Operator::from_ket(&south_pole_ket())
}

/// θ of the edge code's limiting state `|E⟩ ≈ (0.774149, 0.447601, 0.447601)`.
pub fn theta_edge_e() -> f64 {
    libm::acos(0.774149)
}

/// The edge code's limiting state `|E⟩`, on the φ = 0 edge arc.
pub fn edge_state_e() -> Operator {
    pure_state(theta_edge_e(), 0.0)
}

pub fn edge_e_ket() -> Vec<Complex64> {
    pure_ket(theta_edge_e(), 0.0)
}

/// The +1 eigenstate of the qutrit Fourier transform, the maximally robust
/// edge state at the midpoint of the edge arc.
pub fn fourier_plus_state() -> Operator {
    pure_state(theta_fourier(), 0.0)
}

pub fn fourier_plus_ket() -> Vec<Complex64> {
    pure_ket(theta_fourier(), 0.0)
}

/// Commutator norm with A₀,₀; small iff the state stays in the `(a,b,b)`
/// picture.
pub fn a00_commutator_norm(rho: &Operator) -> f64 {
    let a = a00(3);
    let comm = a
        .mul(rho)
        .expect("qutrit")
        .sub(&rho.mul(&a).expect("qutrit"))
        .expect("qutrit");
    comm.max_abs_diff(&Operator::zeros(3))
}

/// Cartesian coordinates of a state in the `(a,b,b)` ball. Errors if the
/// state does not commute with A₀,₀ (tolerance 1e-9).
pub fn cartesian_coordinates(rho: &Operator) -> Result<CartesianPoint> {
    let comm = a00_commutator_norm(rho);
    if comm > 1e-9 {
        return Err(Error::OutsideSubspace {
            commutator_norm: comm,
        });
    }
    // Bloch components on the span of |0⟩ and (|1⟩+|2⟩)/√2.
    let n = south_pole_ket();
    let e0 = [Complex64::ONE, Complex64::ZERO, Complex64::ZERO];
    let rho_n = rho.apply(&n);
    let cross: Complex64 = e0.iter().zip(&rho_n).map(|(a, b)| a.conj() * b).sum();
    let p00 = rho[(0, 0)].re;
    let pnn: f64 = n.iter().zip(&rho_n).map(|(a, b)| (a.conj() * b).re).sum();
    Ok(CartesianPoint {
        x: 2.0 * cross.re,
        y: -2.0 * cross.im,
        z: p00 - pnn,
    })
}

/// Coordinate-tie tolerance for the wedge selection rule.
const WEDGE_TOL: f64 = 1e-9;

/// Maps a state into the reference wedge by trying all 12 PSL(2,ℤ₃)
/// symplectic unitaries and keeping the image that maximizes the
/// z-coordinate, then the x-coordinate (ties broken towards the identity,
/// then lexicographically smaller F). Returns the canonical image and the
/// matrix that produced it.
pub fn wedge_canonicalize(rho: &Operator) -> Result<(Operator, SymplecticMat2)> {
    cartesian_coordinates(rho)?; // subspace check
    let mut best: Option<(Operator, SymplecticMat2, CartesianPoint)> = None;
    for f in wedge_candidates() {
        let u = clifford_unitary(&f);
        let img = u.mul(rho)?.mul(&u.dagger())?;
        let c = cartesian_coordinates(&img)?;
        let better = match &best {
            None => true,
            Some((_, _, bc)) => {
                if c.z > bc.z + WEDGE_TOL {
                    true
                } else if c.z < bc.z - WEDGE_TOL {
                    false
                } else {
                    c.x > bc.x + WEDGE_TOL
                }
            }
        };
        if better {
            best = Some((img, f, c));
        }
    }
    let (img, f, _) = best.expect("twelve candidates");
    Ok((img, f))
}

/// PSL(2,ℤ₃) representatives ordered identity-first, then lexicographic,
/// so canonicalizing an already-canonical state returns F = 𝟙.
pub fn wedge_candidates() -> Vec<SymplecticMat2> {
    let mut reps = enumerate_psl2(3);
    let id = reps.iter().position(SymplecticMat2::is_identity);
    if let Some(i) = id {
        let f = reps.remove(i);
        reps.insert(0, f);
    }
    reps
}

/// Distance from a Cartesian point to the tetrahedron edge arc
/// `{(sin 2θ, 0, cos 2θ) : θ ∈ [0, arccos 1/√3]}`. The squared distance
/// along the arc is `C − A·cos(2θ − ψ)`, so the clamped angular projection
/// is the true minimizer.
pub fn distance_to_edge_arc(point: &CartesianPoint) -> f64 {
    let theta = 0.5 * libm::atan2(point.x, point.z);
    let clamped = theta.clamp(0.0, theta_vertex());
    let arc = CartesianPoint {
        x: libm::sin(2.0 * clamped),
        y: 0.0,
        z: libm::cos(2.0 * clamped),
    };
    point.distance(&arc)
}

/// The four face-center directions: the orbit of the South pole (and of
/// |N′⟩) under the wedge group, as pure states.
pub fn face_direction_states() -> Vec<Operator> {
    let south = south_pole_state();
    let mut out: Vec<Operator> = Vec::new();
    for f in enumerate_psl2(3) {
        let u = clifford_unitary(&f);
        let img = u
            .mul(&south)
            .expect("qutrit")
            .mul(&u.dagger())
            .expect("qutrit");
        if !out.iter().any(|s| s.approx_eq(&img, 1e-9)) {
            out.push(img);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::enumerate_sl2;
    use crate::linalg::fidelity;
    use crate::wigner::sum_negativity;
    use crate::OP_TOL;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn poles_and_vertex() {
        let north = pure_ket(0.0, 0.0);
        assert!((north[0].re - 1.0).abs() < OP_TOL);
        let south = pure_ket(core::f64::consts::FRAC_PI_2, 0.0);
        assert!(south[0].norm() < OP_TOL);
        assert!((south[1].re - 1.0 / libm::sqrt(2.0)).abs() < OP_TOL);
        // θ = arccos(1/√3), φ = 0 is the stabilizer vertex (1,1,1)/√3.
        let v = pure_ket(theta_vertex(), 0.0);
        for a in &v {
            assert!((a - c(1.0 / libm::sqrt(3.0), 0.0)).norm() < OP_TOL);
        }
    }

    #[test]
    fn pure_states_live_in_the_plus_one_eigenspace() {
        let a = a00(3);
        for &(theta, phi) in &[(0.0, 0.0), (0.7, 1.3), (1.2, 4.0), (0.3, 2.2)] {
            let ket = pure_ket(theta, phi);
            let aket = a.apply(&ket);
            let diff: f64 = ket
                .iter()
                .zip(&aket)
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12);
        }
    }

    #[test]
    fn depolarized_endpoints() {
        let mixed = depolarized_state(0.0, 0.4, 1.0);
        assert!(mixed.approx_eq(&Operator::identity(3).scale(c(1.0 / 3.0, 0.0)), OP_TOL));
        let pure0 = depolarized_state(1.0, 0.0, 0.0);
        let mut want = Operator::zeros(3);
        want[(0, 0)] = c(1.0, 0.0);
        assert!(pure0.approx_eq(&want, OP_TOL));
    }

    #[test]
    fn pole_mixture_matrix() {
        let mix = south_pole_state()
            .scale(c(0.5, 0.0))
            .add(&pure_state(0.0, 0.0).scale(c(0.5, 0.0)))
            .unwrap();
        let mut want = Operator::zeros(3);
        want[(0, 0)] = c(0.5, 0.0);
        for i in 1..3 {
            for j in 1..3 {
                want[(i, j)] = c(0.25, 0.0);
            }
        }
        assert!(mix.approx_eq(&want, 1e-15));
        assert!(!mix.approx_eq(&Operator::identity(3).scale(c(1.0 / 3.0, 0.0)), 0.05));
    }

    #[test]
    fn named_states() {
        let n = norrell_ket();
        assert!((n[0].re - 2.0 / libm::sqrt(6.0)).abs() < OP_TOL);
        // ⟨N′| A₀,₀ |N′⟩ = 1: it has the (a,b,b) form.
        let a = a00(3);
        let exp: f64 = fidelity(&a, &n);
        assert!((exp - 1.0).abs() < OP_TOL);

        let e = edge_e_ket();
        assert!((e[0].re - 0.774149).abs() < 1e-9);
        assert!((e[1].re - 0.447601).abs() < 1e-4);

        // The Fourier state is an eigenvector of U_F for F = (0,-1;1,0)
        // with unimodular eigenvalue.
        let f = SymplecticMat2::new(0, -1, 1, 0, 3).unwrap();
        let u = clifford_unitary(&f);
        let ket = fourier_plus_ket();
        let uket = u.apply(&ket);
        let lam: Complex64 = ket.iter().zip(&uket).map(|(a, b)| a.conj() * b).sum();
        assert!((lam.norm() - 1.0).abs() < 1e-10);
        let resid: f64 = uket
            .iter()
            .zip(ket.iter().map(|k| k * lam))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(resid < 1e-10);
    }

    #[test]
    fn cartesian_roundtrip() {
        for &(x, y, z) in &[
            (0.3, -0.2, 0.5),
            (0.0, 0.0, 0.9),
            (-0.4, 0.4, -0.3),
            (0.1, 0.0, -0.05),
        ] {
            let p = CartesianPoint::new(x, y, z);
            let back = p.to_abb().unwrap().cartesian();
            assert!(p.distance(&back) < 1e-12, "({x},{y},{z}) -> {back:?}");
        }
        assert!(CartesianPoint::new(1.2, 0.0, 0.0).to_abb().is_err());
        assert!(AbbPoint::new(1.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn coordinates_match_construction() {
        let point = AbbPoint::new(0.8, 0.5, 2.0).unwrap();
        let got = cartesian_coordinates(point.state()).unwrap();
        assert!(got.distance(&point.cartesian()) < 1e-12);
        // A state with coherence out of the subspace is rejected.
        let mut bad = Operator::identity(3).scale(c(1.0 / 3.0, 0.0));
        bad[(0, 1)] = c(0.1, 0.0);
        bad[(1, 0)] = c(0.1, 0.0);
        assert!(matches!(
            cartesian_coordinates(&bad),
            Err(Error::OutsideSubspace { .. })
        ));
    }

    #[test]
    fn symplectic_unitaries_preserve_the_subspace() {
        let a = a00(3);
        for f in enumerate_sl2(3) {
            let u = clifford_unitary(&f);
            let conj = u.mul(&a).unwrap().mul(&u.dagger()).unwrap();
            assert!(conj.approx_eq(&a, OP_TOL), "F = {:?}", f.entries());
        }
        // U_{-1} = A₀,₀ fixes every (a,b,b) vector.
        let minus1 = SymplecticMat2::new(-1, 0, 0, -1, 3).unwrap();
        let u = clifford_unitary(&minus1);
        let ket = pure_ket(0.9, 2.5);
        let uket = u.apply(&ket);
        let diff: f64 = ket
            .iter()
            .zip(&uket)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-12);
    }

    #[test]
    fn canonicalization_of_reference_wedge_point_is_identity() {
        let rho = depolarized_state(0.7, 0.35, 0.9);
        let (img, f) = wedge_canonicalize(&rho).unwrap();
        assert!(f.is_identity());
        assert!(img.approx_eq(&rho, OP_TOL));
    }

    #[test]
    fn twelve_images_of_generic_point_are_distinct() {
        let rho = depolarized_state(0.7, 0.35, 0.9);
        let mut carts = Vec::new();
        for f in enumerate_psl2(3) {
            let u = clifford_unitary(&f);
            let img = u.mul(&rho).unwrap().mul(&u.dagger()).unwrap();
            carts.push(cartesian_coordinates(&img).unwrap());
        }
        for i in 0..carts.len() {
            for j in (i + 1)..carts.len() {
                assert!(carts[i].distance(&carts[j]) > 1e-3, "{i} vs {j}");
            }
        }
    }

    #[test]
    fn south_pole_canonicalizes_to_a_norrell_image() {
        let (img, f) = wedge_canonicalize(&south_pole_state()).unwrap();
        assert_eq!(f.entries(), (0, 1, 2, 1));
        let c = cartesian_coordinates(&img).unwrap();
        assert!((c.z - 1.0 / 3.0).abs() < 1e-9);
        assert!((c.x - libm::sqrt(2.0) / 3.0).abs() < 1e-9);
        // The canonical image is one of the face directions, i.e. the
        // Norrell orbit: |N⟩ and |N′⟩ are Clifford equivalent.
        assert!(face_direction_states()
            .iter()
            .any(|s| s.approx_eq(&img, 1e-9)));
        let (imgn, fn_) = wedge_canonicalize(&norrell_state()).unwrap();
        assert_eq!(fn_.entries(), (1, 0, 1, 1));
        assert!(imgn.approx_eq(&img, 1e-9), "same canonical face image");
    }

    #[test]
    fn edge_e_canonicalizes_to_its_arc_mirror() {
        let (img, f) = wedge_canonicalize(&edge_state_e()).unwrap();
        assert_eq!(f.entries(), (0, 1, 2, 0));
        let c = cartesian_coordinates(&img).unwrap();
        assert!((c.x - 0.513947102).abs() < 1e-8);
        assert!(c.y.abs() < 1e-9);
        assert!((c.z - 0.857821879).abs() < 1e-8);
        assert!(distance_to_edge_arc(&c) < 1e-9);
    }

    #[test]
    fn fourier_state_is_its_own_canonical_image() {
        let (img, f) = wedge_canonicalize(&fourier_plus_state()).unwrap();
        assert!(f.is_identity());
        assert!(img.approx_eq(&fourier_plus_state(), OP_TOL));
    }

    #[test]
    fn norrell_has_maximal_negativity_among_named_states() {
        let sn = sum_negativity(&norrell_state()).unwrap();
        assert!((sn - 1.0 / 3.0).abs() < 1e-12);
        let sn_south = sum_negativity(&south_pole_state()).unwrap();
        assert!((sn_south - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn edge_arc_distance() {
        let on_arc = CartesianPoint::new(libm::sin(0.8), 0.0, libm::cos(0.8));
        assert!(distance_to_edge_arc(&on_arc) < 1e-12);
        let off = CartesianPoint::new(0.0, 0.0, -1.0);
        assert!(distance_to_edge_arc(&off) > 0.5);
    }
}
