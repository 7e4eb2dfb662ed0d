//! Seeded randomized search over four-qutrit stabilizer codes, classified
//! by the limiting states their distillation maps converge to.

use crate::abb::{self, AbbPoint};
use crate::codes::StabilizerCode;
use crate::distill::{Distiller, StopReason, DEFAULT_ITER_TOL};
use crate::gf;
use crate::linalg::{trace_distance, Operator};
use crate::wigner;
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Trace-distance tolerance when deduplicating fixed points.
pub const DEDUP_TOL: f64 = 1e-6;
/// Re-verification tolerance: a hit must reproduce itself in one round.
pub const FIXED_POINT_TOL: f64 = 1e-9;
/// Distance to the edge arc / Norrell orbit that counts as that class.
pub const CLASS_TOL: f64 = 1e-4;

/// Starting-state ensemble for the fixed-point runs.
#[derive(Debug, Clone)]
pub enum StartEnsemble {
    /// Fixed θ ladders along given meridians at a common radius.
    Meridians {
        phis: Vec<f64>,
        per_meridian: usize,
        r: f64,
    },
    /// Explicit list of `(r, θ, φ)` points.
    Points(Vec<(f64, f64, f64)>),
    /// Uniform directions on the sphere at a common radius, drawn from the
    /// seeded stream.
    RandomSphere { count: usize, r: f64 },
}

impl Default for StartEnsemble {
    /// Twenty points along each of three meridians of the reference wedge
    /// at r = 0.9.
    fn default() -> Self {
        StartEnsemble::Meridians {
            phis: vec![
                0.0,
                core::f64::consts::FRAC_PI_6,
                core::f64::consts::FRAC_PI_3,
            ],
            per_meridian: 20,
            r: 0.9,
        }
    }
}

/// Reproducible search configuration; the seed fully determines the
/// candidate stream and any random starting states.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub seed: u64,
    pub num_candidates: usize,
    pub max_iters: usize,
    pub starts: StartEnsemble,
}

impl SearchConfig {
    pub fn new(seed: u64, num_candidates: usize) -> Self {
        SearchConfig {
            seed,
            num_candidates,
            max_iters: 150,
            starts: StartEnsemble::default(),
        }
    }
}

/// Classification of a limiting state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HitClass {
    /// Inside the stabilizer polytope.
    Stabilizer,
    /// On the tetrahedron edge arc after wedge canonicalization.
    EdgeType,
    /// On the Norrell orbit (the four face directions).
    FaceType,
    /// Anything else.
    Other,
}

impl HitClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            HitClass::Stabilizer => "stabilizer",
            HitClass::EdgeType => "edge-type",
            HitClass::FaceType => "face-type",
            HitClass::Other => "other",
        }
    }
}

/// A deduplicated, re-verified fixed point of one code's round map.
#[derive(Debug, Clone)]
pub struct SearchHit {
    pub fixed_point: Operator,
    /// Sphere coordinates when the fixed point commutes with A₀,₀.
    pub point: Option<AbbPoint>,
    pub sum_negativity: f64,
    pub class: HitClass,
}

/// All hits of one candidate code.
#[derive(Debug, Clone)]
pub struct AtlasEntry {
    pub code_id: usize,
    pub code: StabilizerCode,
    pub hits: Vec<SearchHit>,
}

/// SplitMix64; used to derive independent per-candidate seeds so that
/// candidates can run in any order (or in parallel) without changing the
/// stream each one sees.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of candidate `index` under a search seed.
pub fn candidate_seed(seed: u64, index: usize) -> u64 {
    splitmix64(seed ^ splitmix64(index as u64))
}

/// Uniform draw from `0..n` by rejection; stable across rand versions.
fn uniform(rng: &mut impl RngCore, n: u32) -> u32 {
    let limit = u32::MAX - u32::MAX % n;
    loop {
        let v = rng.next_u32();
        if v < limit {
            return v % n;
        }
    }
}

fn random_row(rng: &mut impl RngCore, width: usize) -> Vec<u8> {
    (0..width).map(|_| uniform(rng, 3) as u8).collect()
}

fn symplectic_product_mod3(a: &[u8], b: &[u8]) -> u8 {
    let n = a.len() / 2;
    let mut acc = 0i64;
    for i in 0..n {
        acc += b[i] as i64 * a[n + i] as i64 - a[i] as i64 * b[n + i] as i64;
    }
    acc.rem_euclid(3) as u8
}

/// Draws a valid `[[4,1,·]]₃` code: three independent pairwise-commuting
/// generator rows by rejection, then a logical Weyl pair completed from
/// the symplectic complement (with `Z_L X_L = ω X_L Z_L` enforced).
pub fn random_code(rng: &mut impl RngCore) -> StabilizerCode {
    let width = 8;
    loop {
        let mut gens: Vec<Vec<u8>> = Vec::with_capacity(3);
        let mut attempts = 0;
        while gens.len() < 3 {
            attempts += 1;
            if attempts > 10_000 {
                break; // resample from scratch
            }
            let g = random_row(rng, width);
            if g.iter().all(|&v| v == 0) {
                continue;
            }
            if gens.iter().any(|h| symplectic_product_mod3(h, &g) != 0) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(g.clone());
            if gf::rank(&trial, 3) != trial.len() {
                continue;
            }
            gens = trial;
        }
        if gens.len() < 3 {
            continue;
        }

        // Logical Z: commutes with every generator, independent of them.
        let mut logical_z = None;
        for _ in 0..10_000 {
            let c = random_row(rng, width);
            if gens.iter().any(|g| symplectic_product_mod3(g, &c) != 0) {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(c.clone());
            if gf::rank(&trial, 3) == 4 {
                logical_z = Some(c);
                break;
            }
        }
        let Some(zl) = logical_z else { continue };

        // Logical X: solve the linear system "commutes with all generators,
        // has commutation exponent 1 with Z_L" over ℤ₃.
        let mut a: Vec<Vec<u8>> = Vec::with_capacity(4);
        let mut b: Vec<u8> = Vec::with_capacity(4);
        for g in &gens {
            a.push(commutation_row(g));
            b.push(0);
        }
        a.push(commutation_row(&zl));
        b.push(1);
        let Some(xl) = gf::solve(&a, &b, 3) else {
            continue;
        };

        let to_i64 = |row: &[u8]| row.iter().map(|&v| v as i64).collect::<Vec<_>>();
        let code = StabilizerCode::from_rows(
            3,
            4,
            &gens.iter().map(|g| to_i64(g)).collect::<Vec<_>>(),
            &to_i64(&zl),
            &to_i64(&xl),
        )
        .expect("rows well formed");
        if code.is_valid() {
            return code;
        }
    }
}

/// Coefficient row of the linear constraint `comm(g, x) = const` on the
/// unknown row x: `Σᵢ x_x[i]·z_g[i] − z_x[i]·x_g[i]`.
fn commutation_row(g: &[u8]) -> Vec<u8> {
    let n = g.len() / 2;
    let mut row = Vec::with_capacity(g.len());
    row.extend_from_slice(&g[n..]);
    row.extend(g[..n].iter().map(|&v| (3 - v % 3) % 3));
    row
}

/// Starting states for the fixed-point runs of one candidate.
pub fn start_states(config: &SearchConfig) -> Vec<Operator> {
    match &config.starts {
        StartEnsemble::Meridians {
            phis,
            per_meridian,
            r,
        } => {
            let mut out = Vec::new();
            for &phi in phis {
                for i in 0..*per_meridian {
                    let theta =
                        (i as f64 + 0.5) * core::f64::consts::FRAC_PI_2 / *per_meridian as f64;
                    out.push(abb::depolarized_state(*r, theta, phi));
                }
            }
            out
        }
        StartEnsemble::Points(pts) => pts
            .iter()
            .map(|&(r, theta, phi)| abb::depolarized_state(r, theta, phi))
            .collect(),
        StartEnsemble::RandomSphere { count, r } => {
            let mut rng = ChaCha8Rng::seed_from_u64(splitmix64(config.seed ^ 0x5ee5_1ab1e));
            let mut out = Vec::new();
            for _ in 0..*count {
                // uniform direction via inverse-CDF on cos 2θ and uniform φ
                let u = rng.next_u64() as f64 / u64::MAX as f64;
                let v = rng.next_u64() as f64 / u64::MAX as f64;
                let theta = 0.5 * libm::acos(1.0 - 2.0 * u);
                let phi = 2.0 * core::f64::consts::PI * v;
                out.push(abb::depolarized_state(*r, theta, phi));
            }
            out
        }
    }
}

/// Runs the fixed-point iteration from every starting state in every
/// Clifford frame (pre-rotations are free operations, and a code's basin
/// need not meet the reference wedge), deduplicates the converged limits,
/// re-verifies each as a genuine fixed point, and labels them.
pub fn classify_code(distiller: &Distiller, config: &SearchConfig) -> Result<Vec<SearchHit>> {
    let mut fixed_points: Vec<Operator> = Vec::new();
    let mut images = Vec::new();
    for start in start_states(config) {
        for (_, u) in distiller.frames() {
            images.push(u.mul(&start)?.mul(&u.dagger())?.hermitized_unit_trace());
        }
    }
    for start in images {
        let trace = distiller.iterate(&start, config.max_iters, DEFAULT_ITER_TOL, None)?;
        if trace.reason != StopReason::Converged {
            continue;
        }
        let fp = trace.fixed_point;
        let round = distiller.round(&fp);
        let verified = match round {
            Ok(r) => trace_distance(&r.rho_out, &fp)? <= FIXED_POINT_TOL,
            Err(_) => false,
        };
        if !verified {
            continue;
        }
        if fixed_points
            .iter()
            .map(|f| trace_distance(f, &fp))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|&d| d > DEDUP_TOL)
        {
            fixed_points.push(fp);
        }
    }
    fixed_points.iter().map(label_hit).collect()
}

fn label_hit(fp: &Operator) -> Result<SearchHit> {
    let sum_negativity = wigner::sum_negativity(fp)?;
    let point = abb::cartesian_coordinates(fp)
        .ok()
        .and_then(|c| c.to_abb().ok());
    let class = if wigner::in_stabilizer_polytope(fp)?.inside {
        HitClass::Stabilizer
    } else if on_edge_arc(fp)? {
        HitClass::EdgeType
    } else if on_norrell_orbit(fp)? {
        HitClass::FaceType
    } else {
        HitClass::Other
    };
    Ok(SearchHit {
        fixed_point: fp.clone(),
        point,
        sum_negativity,
        class,
    })
}

fn on_edge_arc(fp: &Operator) -> Result<bool> {
    let Ok((canonical, _)) = abb::wedge_canonicalize(fp) else {
        return Ok(false);
    };
    let cart = abb::cartesian_coordinates(&canonical)?;
    Ok(abb::distance_to_edge_arc(&cart) <= CLASS_TOL)
}

fn on_norrell_orbit(fp: &Operator) -> Result<bool> {
    for face in abb::face_direction_states() {
        if trace_distance(fp, &face)? <= CLASS_TOL {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Generates `num_candidates` random codes from the seed and classifies
/// each; entries come back in candidate-index order regardless of how the
/// caller schedules the work.
pub fn atlas(config: &SearchConfig) -> Result<Vec<AtlasEntry>> {
    (0..config.num_candidates)
        .map(|code_id| atlas_entry(config, code_id))
        .collect()
}

/// The single candidate `code_id` of the configured stream; exposed so
/// callers can fan candidates out across threads and reassemble by index.
pub fn atlas_entry(config: &SearchConfig, code_id: usize) -> Result<AtlasEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(candidate_seed(config.seed, code_id));
    let code = random_code(&mut rng);
    let distiller = Distiller::new(code.clone())?;
    let hits = classify_code(&distiller, config)?;
    Ok(AtlasEntry {
        code_id,
        code,
        hits,
    })
}
