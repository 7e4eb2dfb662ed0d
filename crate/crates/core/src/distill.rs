//! One round of 4-to-1 distillation, fixed-point iteration, and
//! depolarizing-noise thresholds.
//!
//! A round prepares `ρ_in^⊗4`, postselects the trivial syndrome of a
//! `[[4,1,2]]₃` code, and decodes the logical qutrit:
//! `ρ_out = V† ρ_in^⊗4 V / p_succ` with `p_succ = Tr(Π ρ_in^⊗4)`.
//! Iterating the round drives states in the basin of the code's limiting
//! state towards it; the threshold along a depolarizing axis is the noise
//! rate where the axis leaves that basin.
//!
//! Distillation protocols get Clifford operations for free, so membership
//! in the basin is decided up to the twelve PSL(2,ℤ₃) frames: a state
//! "distills" if any symplectic image of it converges to the code's magic
//! fixed point. States with nonnegative Wigner function can never distill
//! (the round map preserves Wigner positivity), which both bounds the
//! thresholds and gives the iteration an early exit.

use crate::abb::{self, CartesianPoint};
use crate::codes::{logical_isometry, CodeSpace, StabilizerCode};
use crate::gf::SymplecticMat2;
use crate::linalg::{trace_distance, Operator};
use crate::pauli::clifford_unitary;
use crate::wigner::{phase_point_operators, WignerTable, WIGNER_TOL};
use crate::{Error, Result};
use alloc::format;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Final fidelity with the reference magic state that counts as a
/// successful distillation run.
pub const DISTILL_FIDELITY: f64 = 0.99;
/// Default iteration cap; near a threshold convergence is slow and the cap
/// dominates the bisection cost.
pub const DEFAULT_MAX_ITERS: usize = 200;
/// Default trace-distance convergence tolerance for the iteration.
pub const DEFAULT_ITER_TOL: f64 = 1e-12;
/// Postselection probabilities below this are treated as measure-zero.
pub const MIN_P_SUCC: f64 = 1e-14;

/// Output of one distillation round.
#[derive(Debug, Clone)]
pub struct RoundResult {
    pub rho_out: Operator,
    pub p_succ: f64,
}

/// Why an iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Converged,
    MaxIters,
    PeriodTwoCycle,
    PostselectionImpossible,
}

/// Record of a fixed-point iteration.
#[derive(Debug, Clone)]
pub struct IterationTrace {
    /// Visited states, starting with the input.
    pub states: Vec<Operator>,
    /// Fidelity of each visited state with the tracked target, when one
    /// was supplied.
    pub fidelities: Vec<f64>,
    /// Success probability of each executed round.
    pub p_succs: Vec<f64>,
    pub converged: bool,
    pub reason: StopReason,
    pub fixed_point: Operator,
}

/// Result of a threshold bisection.
#[derive(Debug, Clone)]
pub struct ThresholdResult {
    /// Midpoint of the final bracket.
    pub p_star: f64,
    pub bracket_width: f64,
    /// Bracket endpoints: distills at `p_lo`, fails at `p_hi`.
    pub p_lo: f64,
    pub p_hi: f64,
    /// Classification fidelities observed at the bracket endpoints.
    pub fidelity_lo: f64,
    pub fidelity_hi: f64,
    pub bisection_steps: usize,
    /// The magic fixed point used as the success reference.
    pub reference: Operator,
}

/// Grid classification classes, in decision order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanClass {
    /// Mixture of stabilizer states.
    Stab,
    /// Nonnegative Wigner function (but outside the stabilizer polytope).
    PosW,
    /// Some Clifford frame of the state converges to the reference.
    Distill,
    /// Negatively represented yet not distilled by this routine.
    NegUndist,
}

impl ScanClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScanClass::Stab => "STAB",
            ScanClass::PosW => "POSW",
            ScanClass::Distill => "DISTILL",
            ScanClass::NegUndist => "NEGUNDIST",
        }
    }
}

/// One classified grid point.
#[derive(Debug, Clone)]
pub struct ScanRow {
    pub coord1: f64,
    pub coord2: f64,
    pub class: ScanClass,
    /// Best final fidelity with the reference over the attempted frames
    /// (for non-iterated classes, the fidelity of the grid state itself).
    pub fidelity: f64,
    /// First-round success probability at the grid state.
    pub p_succ: f64,
}

/// Coordinate plane (third coordinate zero), or the surface wedge
/// `(θ, φ) ∈ [0, π/2] × [0, π/3]` at r = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanPlane {
    XZ,
    YZ,
    XY,
    Wedge,
}

/// A rectangular grid over a plane cross-section or the wedge surface.
#[derive(Debug, Clone)]
pub struct ScanGrid {
    pub plane: ScanPlane,
    pub n1: usize,
    pub n2: usize,
}

impl ScanGrid {
    pub fn new(plane: ScanPlane, n1: usize, n2: usize) -> Self {
        ScanGrid { plane, n1, n2 }
    }

    fn coords(&self, i: usize, j: usize) -> (f64, f64) {
        match self.plane {
            ScanPlane::Wedge => (
                core::f64::consts::FRAC_PI_2 * i as f64 / (self.n1 - 1).max(1) as f64,
                core::f64::consts::FRAC_PI_3 * j as f64 / (self.n2 - 1).max(1) as f64,
            ),
            _ => (
                -1.0 + 2.0 * i as f64 / (self.n1 - 1).max(1) as f64,
                -1.0 + 2.0 * j as f64 / (self.n2 - 1).max(1) as f64,
            ),
        }
    }

    /// All grid points in row-major order with their states; points
    /// outside the unit ball are dropped.
    pub fn points(&self) -> Vec<(f64, f64, Operator)> {
        let mut out = Vec::new();
        for i in 0..self.n1 {
            for j in 0..self.n2 {
                let (c1, c2) = self.coords(i, j);
                let cart = match self.plane {
                    ScanPlane::XZ => CartesianPoint::new(c1, 0.0, c2),
                    ScanPlane::YZ => CartesianPoint::new(0.0, c1, c2),
                    ScanPlane::XY => CartesianPoint::new(c1, c2, 0.0),
                    ScanPlane::Wedge => {
                        out.push((c1, c2, abb::pure_state(c1, c2)));
                        continue;
                    }
                };
                if cart.radius() <= 1.0 + 1e-12 {
                    out.push((c1, c2, abb::state_from_cartesian(&cart).expect("in ball")));
                }
            }
        }
        out
    }
}

/// A prepared distillation routine: the validated code with its projector,
/// decoding isometry, and the phase-point operators used for early exits.
#[derive(Debug, Clone)]
pub struct Distiller {
    code: StabilizerCode,
    space: CodeSpace,
    wigner_ops: Vec<Operator>,
    frames: Vec<(SymplecticMat2, Operator)>,
}

impl Distiller {
    pub fn new(code: StabilizerCode) -> Result<Self> {
        let violations = code.validate();
        if !violations.is_empty() {
            return Err(Error::Domain(format!(
                "invalid code: {}",
                crate::codes::violation_report(&violations)
            )));
        }
        if code.n != 4 || code.k != 1 || code.d != 3 {
            return Err(Error::Domain(format!(
                "distillation rounds need a [[4,1,·]]_3 code, got n={} k={} d={}",
                code.n, code.k, code.d
            )));
        }
        let space = logical_isometry(&code)?;
        let frames = abb::wedge_candidates()
            .into_iter()
            .map(|f| {
                let u = clifford_unitary(&f);
                (f, u)
            })
            .collect();
        Ok(Distiller {
            code,
            space,
            wigner_ops: phase_point_operators(3),
            frames,
        })
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn code_space(&self) -> &CodeSpace {
        &self.space
    }

    /// The twelve PSL(2,ℤ₃) frames (identity first) with their unitaries.
    pub fn frames(&self) -> &[(SymplecticMat2, Operator)] {
        &self.frames
    }

    fn min_wigner(&self, rho: &Operator) -> f64 {
        self.wigner_ops
            .iter()
            .map(|a| a.mul(rho).expect("qutrit").trace().re / 3.0)
            .fold(f64::INFINITY, f64::min)
    }

    /// One round: `σ = ρ^⊗4`, postselect the trivial syndrome, decode.
    pub fn round(&self, rho_in: &Operator) -> Result<RoundResult> {
        rho_in.check_state()?;
        let sigma = crate::pauli::tensor_power(rho_in, 4);
        let compressed = self.space.compress(&sigma)?;
        let p_succ = compressed.trace().re;
        if p_succ < MIN_P_SUCC {
            return Err(Error::PostselectionImpossible { p_succ });
        }
        let rho_out = compressed
            .scale(Complex64::new(1.0 / p_succ, 0.0))
            .hermitized_unit_trace();
        Ok(RoundResult { rho_out, p_succ })
    }

    /// `Tr(Π ρ_in^⊗4)` without normalizing an output state.
    pub fn success_probability(&self, rho_in: &Operator) -> Result<f64> {
        rho_in.check_state()?;
        let sigma = crate::pauli::tensor_power(rho_in, 4);
        Ok(self.space.compress(&sigma)?.trace().re)
    }

    /// Feeds the round output back as all four inputs until the state
    /// stops moving (trace distance below `tol`), a period-two cycle
    /// closes, postselection dies, or `max_iters` is reached.
    pub fn iterate(
        &self,
        rho0: &Operator,
        max_iters: usize,
        tol: f64,
        target: Option<&Operator>,
    ) -> Result<IterationTrace> {
        let mut rho = rho0.hermitized_unit_trace();
        let mut states = Vec::with_capacity(max_iters.min(64) + 1);
        let mut fidelities = Vec::new();
        let mut p_succs = Vec::new();
        let fid = |r: &Operator, t: &Operator| r.mul(t).expect("qutrit").trace().re;
        if let Some(t) = target {
            fidelities.push(fid(&rho, t));
        }
        states.push(rho.clone());
        let mut reason = StopReason::MaxIters;
        for _ in 0..max_iters {
            let out = match self.round(&rho) {
                Ok(r) => {
                    p_succs.push(r.p_succ);
                    r.rho_out
                }
                Err(Error::PostselectionImpossible { .. }) => {
                    reason = StopReason::PostselectionImpossible;
                    break;
                }
                Err(e) => return Err(e),
            };
            let step = trace_distance(&out, &rho)?;
            // A genuine period-two cycle keeps a macroscopic step while the
            // two-step distance closes; oscillatory convergence to a fixed
            // point closes both.
            let cycle = step > 1e-6 && states.len() >= 2 && {
                let prev2 = &states[states.len() - 2];
                trace_distance(&out, prev2)? < tol
            };
            rho = out;
            states.push(rho.clone());
            if let Some(t) = target {
                fidelities.push(fid(&rho, t));
            }
            if step < tol {
                reason = StopReason::Converged;
                break;
            }
            if cycle {
                reason = StopReason::PeriodTwoCycle;
                break;
            }
        }
        Ok(IterationTrace {
            fixed_point: rho,
            converged: reason == StopReason::Converged,
            reason,
            states,
            fidelities,
            p_succs,
        })
    }

    /// The magic fixed point the routine drives `target`'s axis towards:
    /// iterate from each PSL frame of the pure target and return the first
    /// limit that is decisively outside the Wigner polytope. `None` if
    /// every frame collapses to positively-represented states (stabilizer
    /// targets).
    pub fn reference_state(&self, target: &Operator, max_iters: usize) -> Result<Option<Operator>> {
        for (_, u) in &self.frames {
            let image = u.mul(target)?.mul(&u.dagger())?.hermitized_unit_trace();
            let trace = self.iterate(&image, max_iters, DEFAULT_ITER_TOL, None)?;
            let fp = &trace.fixed_point;
            if trace.reason == StopReason::PostselectionImpossible {
                continue;
            }
            let purity = fp.mul(fp)?.trace().re;
            if purity > 0.98 && self.min_wigner(fp) < -0.01 {
                return Ok(Some(fp.clone()));
            }
        }
        Ok(None)
    }

    /// Whether some PSL frame of `rho0` converges to the reference magic
    /// state. Returns the best final fidelity over the attempted frames.
    /// Frames whose trajectory enters the Wigner polytope are abandoned:
    /// positively represented states stay positively represented under the
    /// round map, so they can never reach a magic fixed point.
    pub fn distills_to(
        &self,
        rho0: &Operator,
        reference: &Operator,
        max_iters: usize,
    ) -> Result<(bool, f64)> {
        let mut best = 0.0f64;
        for (_, u) in &self.frames {
            let mut rho = u.mul(rho0)?.mul(&u.dagger())?.hermitized_unit_trace();
            if self.min_wigner(&rho) >= -WIGNER_TOL {
                let f = rho.mul(reference)?.trace().re;
                best = best.max(f);
                continue;
            }
            let mut prev: Option<Operator> = None;
            let mut aborted = false;
            for _ in 0..max_iters {
                let out = match self.round(&rho) {
                    Ok(r) => r.rho_out,
                    Err(Error::PostselectionImpossible { .. }) => {
                        aborted = true;
                        break;
                    }
                    Err(e) => return Err(e),
                };
                if self.min_wigner(&out) >= -WIGNER_TOL {
                    // entered the undistillable region
                    rho = out;
                    aborted = true;
                    break;
                }
                let step = trace_distance(&out, &rho)?;
                let cycled = step > 1e-6
                    && match &prev {
                        Some(p) => trace_distance(&out, p)? < DEFAULT_ITER_TOL,
                        None => false,
                    };
                prev = Some(rho);
                rho = out;
                if step < DEFAULT_ITER_TOL || cycled {
                    break;
                }
            }
            let f = rho.mul(reference)?.trace().re;
            best = best.max(f);
            if !aborted && f > DISTILL_FIDELITY {
                return Ok((true, f));
            }
        }
        Ok((false, best))
    }

    /// Bisects the depolarizing noise rate along `target`'s axis for the
    /// largest p that still distills. Endpoints must classify differently.
    pub fn threshold_bisection(
        &self,
        target: &Operator,
        p_lo: f64,
        p_hi: f64,
        tol: f64,
    ) -> Result<ThresholdResult> {
        target.check_state()?;
        let reference = self.reference_state(target, DEFAULT_MAX_ITERS)?.ok_or(
            Error::NoThresholdInBracket {
                distills_lo: false,
                distills_hi: false,
            },
        )?;
        let classify = |p: f64| -> Result<(bool, f64)> {
            let rho = abb::depolarized(target, p);
            self.distills_to(&rho, &reference, DEFAULT_MAX_ITERS)
        };
        let (lo_ok, fid_lo) = classify(p_lo)?;
        let (hi_ok, fid_hi) = classify(p_hi)?;
        if !lo_ok || hi_ok {
            return Err(Error::NoThresholdInBracket {
                distills_lo: lo_ok,
                distills_hi: hi_ok,
            });
        }
        let (mut lo, mut hi) = (p_lo, p_hi);
        let (mut fid_lo, mut fid_hi) = (fid_lo, fid_hi);
        let mut steps = 0;
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            let (ok, fid) = classify(mid)?;
            if ok {
                lo = mid;
                fid_lo = fid;
            } else {
                hi = mid;
                fid_hi = fid;
            }
            steps += 1;
            if steps > 80 {
                break;
            }
        }
        Ok(ThresholdResult {
            p_star: 0.5 * (lo + hi),
            bracket_width: hi - lo,
            p_lo: lo,
            p_hi: hi,
            fidelity_lo: fid_lo,
            fidelity_hi: fid_hi,
            bisection_steps: steps,
            reference,
        })
    }

    /// Classifies every point of a grid cross-section against this
    /// routine. Points are tested in decision order: stabilizer mixture,
    /// positive Wigner function, distills to the reference, else negative
    /// but undistilled.
    pub fn scan_region(&self, target: &Operator, grid: &ScanGrid) -> Result<Vec<ScanRow>> {
        let reference = self.reference_state(target, DEFAULT_MAX_ITERS)?.ok_or(
            Error::NoThresholdInBracket {
                distills_lo: false,
                distills_hi: false,
            },
        )?;
        grid.points()
            .into_iter()
            .map(|(c1, c2, rho)| self.classify_point(c1, c2, &rho, &reference))
            .collect()
    }

    /// Classification of a single prepared state; shared by the serial
    /// scan and any caller that parallelizes over grid points.
    pub fn classify_point(
        &self,
        coord1: f64,
        coord2: f64,
        rho: &Operator,
        reference: &Operator,
    ) -> Result<ScanRow> {
        let p_succ = self.success_probability(rho)?;
        let passive_fid = rho.mul(reference)?.trace().re;
        let class;
        let fidelity;
        if crate::wigner::in_stabilizer_polytope(rho)?.inside {
            class = ScanClass::Stab;
            fidelity = passive_fid;
        } else if self.min_wigner(rho) >= -WIGNER_TOL {
            class = ScanClass::PosW;
            fidelity = passive_fid;
        } else {
            let (ok, fid) = self.distills_to(rho, reference, DEFAULT_MAX_ITERS)?;
            class = if ok {
                ScanClass::Distill
            } else {
                ScanClass::NegUndist
            };
            fidelity = fid;
        }
        Ok(ScanRow {
            coord1,
            coord2,
            class,
            fidelity,
            p_succ,
        })
    }
}

/// Convenience wrapper: one round of a code on an input state.
pub fn distill_round(code: &StabilizerCode, rho_in: &Operator) -> Result<RoundResult> {
    Distiller::new(code.clone())?.round(rho_in)
}

/// Convenience wrapper: iterates a code's round map from `rho0` until it
/// stops moving (see [`Distiller::iterate`]). Prefer a [`Distiller`] when
/// calling repeatedly; this rebuilds the projector each time.
pub fn iterate_to_fixed_point(
    code: &StabilizerCode,
    rho0: &Operator,
    max_iters: usize,
    tol: f64,
) -> Result<IterationTrace> {
    Distiller::new(code.clone())?.iterate(rho0, max_iters, tol, None)
}

/// Closed-form edge threshold
/// `p*(θ) = 1 − 4 / (1 + 3 cos 2θ + 3√2 sin 2θ)` for the arc
/// `θ ∈ [0, arccos 1/√3]`.
pub fn edge_threshold_formula(theta: f64) -> Result<f64> {
    let max = abb::theta_vertex();
    if !(-1e-12..=max + 1e-12).contains(&theta) {
        return Err(Error::Domain(format!(
            "theta {theta} outside the edge arc [0, {max:.6}]"
        )));
    }
    let c2 = libm::cos(2.0 * theta);
    let s2 = libm::sin(2.0 * theta);
    Ok(1.0 - 4.0 / (1.0 + 3.0 * c2 + 3.0 * libm::sqrt(2.0) * s2))
}

/// Analytic Wigner table of the threshold state
/// `ρ_θ = (1 − p*(θ)) |θ⟩⟨θ| + p*(θ) 𝟙/3`:
/// rows `(r, s, s) / (t, 0, 0) / (t, 0, 0)` with all entries nonnegative.
/// `t` is evaluated as `3√2 sin 2θ / (9 cos 2θ + 9√2 sin 2θ + 3)`, the
/// cot/csc-free form that extends to θ = 0.
pub fn edge_boundary_wigner(theta: f64) -> Result<WignerTable> {
    edge_threshold_formula(theta)?; // domain check
    let c2 = libm::cos(2.0 * theta);
    let s2 = libm::sin(2.0 * theta);
    let sqrt2 = libm::sqrt(2.0);
    let den = 9.0 * c2 + 9.0 * sqrt2 * s2 + 3.0;
    let r = (c2 + sqrt2 * s2 + 3.0) / den;
    let s = (4.0 * c2 + sqrt2 * s2) / den;
    let t = 3.0 * sqrt2 * s2 / den;
    Ok(WignerTable::from_values(
        3,
        alloc::vec![r, s, s, t, 0.0, 0.0, t, 0.0, 0.0],
    ))
}
