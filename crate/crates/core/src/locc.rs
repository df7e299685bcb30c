//! Best separable-measurement error for a single entangled pair.
//!
//! Without rotation-invariant ancillas every separable strategy reduces to
//! one party measuring first and the other estimating a rotation from a
//! single spin-j state, so the achievable error is bounded by
//!
//!   <d^2> = (2j+1) * min over psi of integral dmu(h) d^2(h) |<psi| U_h |psi>|^2
//!
//! over the full group, Haar-factorized as class angle x uniform axis. For
//! j = 1/2 all pure states are rotation-equivalent and the bound evaluates to
//! 16/9, strictly above the 4/3 achievable with invariant-ancilla assistance.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::quad::GaussLegendre;
use crate::spin::TWO_PI;
use crate::su2::{angular_momentum_matrices, haar_class_weight_raw, squared_axis_distance_raw};
use crate::{Error, QuadratureSpec, Result, Spin};

/// Cap on the dense path: states above twice_j = 20 are refused.
pub const MAX_TWICE_J: u32 = 20;

const AXIS_POLAR_NODES: usize = 32;
const AXIS_AZIMUTH_NODES: usize = 64;

/// A pure single-spin state over the |j, m> basis (m = j down to -j).
#[derive(Debug, Clone)]
pub struct SingleSpinState {
    j: Spin,
    amplitudes: Vec<Complex64>,
}

impl SingleSpinState {
    pub fn new(j: Spin, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != j.dimension() {
            return Err(Error::InvalidArgument(format!(
                "expected {} amplitudes for twice_j = {}, got {}",
                j.dimension(),
                j.twice(),
                amplitudes.len()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Unnormalized(norm));
        }
        Ok(Self { j, amplitudes })
    }

    /// The basis state |j, m> (twice_m runs from twice_j down to -twice_j).
    pub fn basis(j: Spin, twice_m: i64) -> Result<Self> {
        let tj = j.twice() as i64;
        if twice_m.abs() > tj || (twice_m - tj) % 2 != 0 {
            return Err(Error::SectorOutOfRange(twice_m));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); j.dimension()];
        let row = ((tj - twice_m) / 2) as usize;
        amplitudes[row] = Complex64::new(1.0, 0.0);
        Ok(Self { j, amplitudes })
    }

    pub fn spin(&self) -> Spin {
        self.j
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

/// Estimation error for a rotation imprinted on a single spin-j state:
/// (2j+1) * integral over the group of d^2 |<psi|U_h|psi>|^2, with the Haar
/// measure split into the class angle (Gauss-Legendre, at least 512 nodes)
/// and a product grid on the axis sphere. U_h is exponentiated by spectral
/// decomposition of the axis generator.
pub fn single_spin_state_error(psi: &SingleSpinState, quad: &QuadratureSpec) -> Result<f64> {
    let j = psi.spin();
    if j.twice() > MAX_TWICE_J {
        return Err(Error::DimensionCap(j.twice(), MAX_TWICE_J));
    }
    let gens = angular_momentum_matrices(j)?;
    let d = j.dimension();
    let psi_vec = DVector::from_column_slice(psi.amplitudes());

    let omega_rule = GaussLegendre::new(quad.node_count.max(512));
    // per-node product weight * d^2, reused across axes
    let omega_nodes: Vec<(f64, f64)> = omega_rule
        .mapped(0.0, TWO_PI)
        .map(|(w, wt)| {
            (
                w,
                wt * haar_class_weight_raw(w) * squared_axis_distance_raw(w),
            )
        })
        .collect();

    let polar = GaussLegendre::new(AXIS_POLAR_NODES);
    let phi_weight = TWO_PI / AXIS_AZIMUTH_NODES as f64;
    let mut total = 0.0;
    for (u, wu) in polar.mapped(-1.0, 1.0) {
        let s = (1.0 - u * u).sqrt();
        for iphi in 0..AXIS_AZIMUTH_NODES {
            let phi = TWO_PI * iphi as f64 / AXIS_AZIMUTH_NODES as f64;
            let mut h = &gens.x * Complex64::new(s * phi.cos(), 0.0);
            h += &gens.y * Complex64::new(s * phi.sin(), 0.0);
            h += &gens.z * Complex64::new(u, 0.0);
            let eig = h.symmetric_eigen();
            // weights over the eigenbasis of the axis generator
            let mut weights = Vec::with_capacity(d);
            for col in 0..d {
                let overlap: Complex64 = (0..d)
                    .map(|row| eig.eigenvectors[(row, col)].conj() * psi_vec[row])
                    .sum();
                weights.push((overlap.norm_sqr(), eig.eigenvalues[col]));
            }
            let mut omega_integral = 0.0;
            for &(omega, wt) in &omega_nodes {
                let mut re = 0.0;
                let mut im = 0.0;
                for &(a, lambda) in &weights {
                    let (sin, cos) = (omega * lambda).sin_cos();
                    re += a * cos;
                    im -= a * sin;
                }
                omega_integral += wt * (re * re + im * im);
            }
            total += wu * phi_weight * omega_integral / (4.0 * std::f64::consts::PI);
        }
    }
    Ok(d as f64 * total)
}

/// The spin-1/2 specialization with the axis integral done analytically:
/// the axis average of |<psi|U|psi>|^2 is cos^2(w/2) + sin^2(w/2)/3 for every
/// pure state, leaving a one-dimensional class-angle quadrature.
pub fn single_spin_state_error_analytic_axis(
    psi: &SingleSpinState,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if psi.spin().twice() != 1 {
        return Err(Error::InvalidArgument(
            "analytic axis reduction is specific to twice_j = 1".into(),
        ));
    }
    let rule = GaussLegendre::new(quad.node_count.max(512));
    let val = rule.integrate(0.0, TWO_PI, |w| {
        let half = w / 2.0;
        let overlap_sq = half.cos().powi(2) + half.sin().powi(2) / 3.0;
        haar_class_weight_raw(w) * squared_axis_distance_raw(w) * overlap_sq
    });
    Ok(2.0 * val)
}

/// Separable bound next to the invariant-ancilla-assisted value 4/3.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LoccReport {
    pub twice_j: u32,
    pub locc_bound: f64,
    pub assisted_value: f64,
    pub gap: f64,
    /// True when no optimization over input states is needed (twice_j = 1);
    /// larger spins minimize over a finite heuristic family only.
    pub certified: bool,
}

/// Best single-pair separable error. For j = 1/2 the |up> evaluation is the
/// exact optimum (all pure states are rotation-equivalent); for larger spins
/// the result is a heuristic minimum over basis states, the uniform
/// superposition and a deterministic pseudo-random family.
pub fn locc_single_pair_bound(j: Spin, quad: &QuadratureSpec) -> Result<LoccReport> {
    if j.twice() == 0 {
        return Err(Error::TrivialRepresentation);
    }
    let (value, certified) = if j.twice() == 1 {
        let up = SingleSpinState::basis(j, 1)?;
        (single_spin_state_error(&up, quad)?, true)
    } else {
        let mut best = f64::INFINITY;
        for psi in candidate_states(j) {
            best = best.min(single_spin_state_error(&psi, quad)?);
        }
        (best, false)
    };
    let assisted = 4.0 / 3.0;
    Ok(LoccReport {
        twice_j: j.twice(),
        locc_bound: value,
        assisted_value: assisted,
        gap: value - assisted,
        certified,
    })
}

fn candidate_states(j: Spin) -> Vec<SingleSpinState> {
    let d = j.dimension();
    let mut states = Vec::new();
    let tj = j.twice() as i64;
    for idx in 0..d {
        states.push(SingleSpinState::basis(j, tj - 2 * idx as i64).unwrap());
    }
    let uniform = vec![Complex64::new(1.0 / (d as f64).sqrt(), 0.0); d];
    states.push(SingleSpinState::new(j, uniform).unwrap());
    // deterministic pseudo-random family
    let mut z = 0x5851_f42d_4c95_7f2du64 ^ j.twice() as u64;
    let mut next = move || {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        (z ^ (z >> 31)) as f64 / u64::MAX as f64 * 2.0 - 1.0
    };
    for _ in 0..8 {
        let mut amps: Vec<Complex64> = (0..d).map(|_| Complex64::new(next(), next())).collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        for a in amps.iter_mut() {
            *a /= norm;
        }
        states.push(SingleSpinState::new(j, amps).unwrap());
    }
    states
}
