//! Exact arithmetic over ℤ_d for odd prime d, and the symplectic groups
//! SL(2,ℤ_d) and PSL(2,ℤ_d) = SL(2,ℤ_d)/±𝟙.

use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// A residue mod d, always stored reduced into `[0, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Zd {
    value: u8,
    modulus: u8,
}

impl Zd {
    /// Reduces `value` (possibly negative) into `[0, d)`.
    pub fn new(value: i64, d: u8) -> Self {
        debug_assert!(d >= 3 && is_odd_prime(d), "d must be an odd prime");
        let m = d as i64;
        Zd {
            value: (value.rem_euclid(m)) as u8,
            modulus: d,
        }
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> u8 {
        self.modulus
    }
}

impl core::ops::Add for Zd {
    type Output = Zd;
    fn add(self, rhs: Zd) -> Zd {
        Zd::new(self.value as i64 + rhs.value as i64, self.modulus)
    }
}

impl core::ops::Sub for Zd {
    type Output = Zd;
    fn sub(self, rhs: Zd) -> Zd {
        Zd::new(self.value as i64 - rhs.value as i64, self.modulus)
    }
}

impl core::ops::Mul for Zd {
    type Output = Zd;
    fn mul(self, rhs: Zd) -> Zd {
        Zd::new(self.value as i64 * rhs.value as i64, self.modulus)
    }
}

impl core::ops::Neg for Zd {
    type Output = Zd;
    fn neg(self) -> Zd {
        Zd::new(-(self.value as i64), self.modulus)
    }
}

pub fn is_odd_prime(d: u8) -> bool {
    if d < 3 || d.is_multiple_of(2) {
        return false;
    }
    let mut k = 3u16;
    while k * k <= d as u16 {
        if (d as u16).is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// Multiplicative inverse mod d.
pub fn inv(a: Zd) -> Result<Zd> {
    let d = a.modulus();
    if a.value() == 0 {
        return Err(Error::NonInvertible {
            value: 0,
            modulus: d as u64,
        });
    }
    // d is tiny; scan for the inverse.
    for b in 1..d {
        if (a.value() as u16 * b as u16) % d as u16 == 1 {
            return Ok(Zd::new(b as i64, d));
        }
    }
    Err(Error::NonInvertible {
        value: a.value() as u64,
        modulus: d as u64,
    })
}

/// Shorthand for the inverse of a raw residue.
pub fn inv_mod(a: i64, d: u8) -> Result<u8> {
    inv(Zd::new(a, d)).map(Zd::value)
}

/// A 2×2 matrix over ℤ_d with unit determinant,
/// `F = (alpha, beta; gamma, delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymplecticMat2 {
    pub alpha: Zd,
    pub beta: Zd,
    pub gamma: Zd,
    pub delta: Zd,
}

impl SymplecticMat2 {
    /// Builds from raw entries, reducing mod d; fails if det ≠ 1.
    pub fn new(alpha: i64, beta: i64, gamma: i64, delta: i64, d: u8) -> Result<Self> {
        let f = SymplecticMat2 {
            alpha: Zd::new(alpha, d),
            beta: Zd::new(beta, d),
            gamma: Zd::new(gamma, d),
            delta: Zd::new(delta, d),
        };
        if f.det().value() != 1 {
            return Err(Error::Domain(alloc::format!(
                "det ({alpha},{beta};{gamma},{delta}) != 1 mod {d}"
            )));
        }
        Ok(f)
    }

    pub fn identity(d: u8) -> Self {
        SymplecticMat2::new(1, 0, 0, 1, d).expect("identity is symplectic")
    }

    pub fn modulus(&self) -> u8 {
        self.alpha.modulus()
    }

    pub fn det(&self) -> Zd {
        self.alpha * self.delta - self.beta * self.gamma
    }

    /// Entries as a flattened tuple `(alpha, beta, gamma, delta)`.
    pub fn entries(&self) -> (u8, u8, u8, u8) {
        (
            self.alpha.value(),
            self.beta.value(),
            self.gamma.value(),
            self.delta.value(),
        )
    }

    pub fn negated(&self) -> Self {
        SymplecticMat2 {
            alpha: -self.alpha,
            beta: -self.beta,
            gamma: -self.gamma,
            delta: -self.delta,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries() == (1, 0, 0, 1)
    }

    /// Image of the phase-space point `(x, z)` under `F`.
    pub fn apply(&self, x: Zd, z: Zd) -> (Zd, Zd) {
        (
            self.alpha * x + self.beta * z,
            self.gamma * x + self.delta * z,
        )
    }
}

/// Group product `F · G`.
pub fn symplectic_mul(f: &SymplecticMat2, g: &SymplecticMat2) -> SymplecticMat2 {
    debug_assert_eq!(f.modulus(), g.modulus());
    SymplecticMat2 {
        alpha: f.alpha * g.alpha + f.beta * g.gamma,
        beta: f.alpha * g.beta + f.beta * g.delta,
        gamma: f.gamma * g.alpha + f.delta * g.gamma,
        delta: f.gamma * g.beta + f.delta * g.delta,
    }
}

/// Group inverse; for det 1 this is `(delta, -beta; -gamma, alpha)`.
pub fn symplectic_inv(f: &SymplecticMat2) -> SymplecticMat2 {
    SymplecticMat2 {
        alpha: f.delta,
        beta: -f.beta,
        gamma: -f.gamma,
        delta: f.alpha,
    }
}

/// All of SL(2,ℤ_d) in lexicographic order of `(alpha, beta, gamma, delta)`.
pub fn enumerate_sl2(d: u8) -> Vec<SymplecticMat2> {
    let mut out = Vec::new();
    for a in 0..d as i64 {
        for b in 0..d as i64 {
            for g in 0..d as i64 {
                for e in 0..d as i64 {
                    if let Ok(f) = SymplecticMat2::new(a, b, g, e, d) {
                        out.push(f);
                    }
                }
            }
        }
    }
    out
}

/// One representative per pair `{F, -F}`: the lexicographically smaller
/// flattened entry tuple. Output sorted lexicographically.
pub fn enumerate_psl2(d: u8) -> Vec<SymplecticMat2> {
    let mut out: Vec<SymplecticMat2> = enumerate_sl2(d)
        .into_iter()
        .filter(|f| f.entries() <= f.negated().entries())
        .collect();
    out.sort_by_key(|f| f.entries());
    out
}

// ---------------------------------------------------------------------------
// Linear algebra over ℤ_d (row vectors with entries in [0, d)).
// ---------------------------------------------------------------------------

/// Rank of a set of row vectors over ℤ_d.
#[allow(clippy::needless_range_loop)] // parallel row indexing in the elimination
pub fn rank(rows: &[Vec<u8>], d: u8) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i64).collect())
        .collect();
    let ncol = m.first().map_or(0, Vec::len);
    let md = d as i64;
    let mut rank = 0;
    for c in 0..ncol {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] % md != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = inv_mod(m[rank][c], d).expect("pivot nonzero") as i64;
        for v in m[rank].iter_mut() {
            *v = (*v * inv).rem_euclid(md);
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] % md != 0 {
                let f = m[i][c];
                for j in 0..ncol {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(md);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Solves `A x = b` over ℤ_d by Gauss-Jordan elimination. Returns one
/// solution (free variables set to zero), or `None` if inconsistent.
#[allow(clippy::needless_range_loop)] // parallel row indexing in the elimination
pub fn solve(a: &[Vec<u8>], b: &[u8], d: u8) -> Option<Vec<u8>> {
    let m = a.len();
    let ncol = a.first().map_or(0, Vec::len);
    let md = d as i64;
    let mut aug: Vec<Vec<i64>> = (0..m)
        .map(|i| {
            let mut row: Vec<i64> = a[i].iter().map(|&v| v as i64).collect();
            row.push(b[i] as i64);
            row
        })
        .collect();
    let mut piv_cols = Vec::new();
    let mut rank = 0;
    for c in 0..ncol {
        let Some(piv) = (rank..m).find(|&i| aug[i][c] % md != 0) else {
            continue;
        };
        aug.swap(rank, piv);
        let inv = inv_mod(aug[rank][c], d).expect("pivot nonzero") as i64;
        for v in aug[rank].iter_mut() {
            *v = (*v * inv).rem_euclid(md);
        }
        for i in 0..m {
            if i != rank && aug[i][c] % md != 0 {
                let f = aug[i][c];
                for j in 0..=ncol {
                    aug[i][j] = (aug[i][j] - f * aug[rank][j]).rem_euclid(md);
                }
            }
        }
        piv_cols.push(c);
        rank += 1;
        if rank == m {
            break;
        }
    }
    if (rank..m).any(|i| aug[i][ncol] % md != 0) {
        return None;
    }
    let mut x = vec![0u8; ncol];
    for (i, &c) in piv_cols.iter().enumerate() {
        x[c] = (aug[i][ncol].rem_euclid(md)) as u8;
    }
    Some(x)
}
