//! Stochastic simulation of the estimation protocol.
//!
//! The optimal covariant measurement induces a density over the relative
//! rotation angle; we tabulate its CDF once per state and draw angles by
//! inverse-CDF sampling with linear interpolation. Random numbers come from
//! a counter-based generator keyed by (seed, trial index), so runs are
//! reproducible bit for bit and independent of evaluation order; aggregation
//! is chunked compensated summation combined in fixed chunk order.

use serde::{Deserialize, Serialize};

use crate::alignment::outcome_density_raw;
use crate::decomposition::CoefficientVector;
use crate::spin::TWO_PI;
use crate::su2::squared_axis_distance_raw;
use crate::{Error, Result, Spin};

/// Default CDF grid size (2^16 + 1 nodes).
pub const DEFAULT_GRID: usize = (1 << 16) + 1;
/// Largest grid the automatic refinement will try (2^20 + 1 nodes).
pub const MAX_GRID: usize = (1 << 20) + 1;
/// Largest acceptable renormalization defect of the tabulated CDF.
pub const MAX_CDF_DEFECT: f64 = 1e-6;

const CHUNK: usize = 1 << 16;

/// SplitMix64 output mix; a counter-based generator keyed by (seed, index).
fn splitmix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform draw in [0, 1) for the given trial index: pure in (seed, index).
fn uniform(seed: u64, index: u64) -> f64 {
    let counter = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    (splitmix(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Compensated (Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Tabulated inverse-CDF sampler for the outcome density of a state.
#[derive(Debug, Clone)]
pub struct SamplerTable {
    coefficients: CoefficientVector,
    cdf: Vec<f64>,
    step: f64,
    defect: f64,
}

/// Tabulate the CDF of the outcome density on a uniform angle grid with
/// trapezoid accumulation. The raw total should be 1; its defect is recorded
/// and must stay below [`MAX_CDF_DEFECT`] (otherwise the grid is too coarse
/// for this state).
pub fn build_sampler(c: &CoefficientVector, grid_size: usize) -> Result<SamplerTable> {
    let norm = c.norm_sq();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Unnormalized(norm));
    }
    if grid_size < 4096 {
        return Err(Error::InvalidArgument(format!(
            "sampler grid must have at least 4096 nodes, got {grid_size}"
        )));
    }
    let step = TWO_PI / (grid_size - 1) as f64;
    let mut cdf = Vec::with_capacity(grid_size);
    cdf.push(0.0);
    let mut acc = Kahan::default();
    let mut prev = outcome_density_raw(c, 0.0);
    for i in 1..grid_size {
        let q = outcome_density_raw(c, i as f64 * step);
        acc.add(0.5 * (prev + q) * step);
        cdf.push(acc.sum);
        prev = q;
    }
    let total = *cdf.last().unwrap();
    let defect = (total - 1.0).abs();
    if defect > MAX_CDF_DEFECT {
        return Err(Error::ToleranceNotMet {
            requested: MAX_CDF_DEFECT,
            achieved: defect,
        });
    }
    for v in cdf.iter_mut() {
        *v /= total;
    }
    *cdf.last_mut().unwrap() = 1.0;
    Ok(SamplerTable {
        coefficients: c.clone(),
        cdf,
        step,
        defect,
    })
}

/// Build a sampler at the default grid, doubling the resolution until the
/// renormalization defect passes (up to [`MAX_GRID`]).
pub fn auto_sampler(c: &CoefficientVector) -> Result<SamplerTable> {
    let mut grid = DEFAULT_GRID;
    loop {
        match build_sampler(c, grid) {
            Err(Error::ToleranceNotMet { .. }) if grid < MAX_GRID => {
                grid = (grid - 1) * 2 + 1;
            }
            other => return other,
        }
    }
}

impl SamplerTable {
    pub fn coefficients(&self) -> &CoefficientVector {
        &self.coefficients
    }

    pub fn grid_size(&self) -> usize {
        self.cdf.len()
    }

    /// Renormalization defect of the raw trapezoid total.
    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }

    /// CDF value at an angle (linear interpolation between grid nodes).
    pub fn cdf_at(&self, omega: f64) -> f64 {
        let pos = (omega / self.step).clamp(0.0, (self.cdf.len() - 1) as f64);
        let i = (pos as usize).min(self.cdf.len() - 2);
        let frac = pos - i as f64;
        self.cdf[i] + frac * (self.cdf[i + 1] - self.cdf[i])
    }

    /// Map a uniform u in [0, 1) to an angle by inverting the tabulated CDF.
    pub fn sample(&self, u: f64) -> f64 {
        let idx = self.cdf.partition_point(|&v| v <= u);
        let i = idx.saturating_sub(1).min(self.cdf.len() - 2);
        let span = self.cdf[i + 1] - self.cdf[i];
        let frac = if span > 0.0 {
            ((u - self.cdf[i]) / span).clamp(0.0, 1.0)
        } else {
            0.0
        };
        (i as f64 + frac) * self.step
    }
}

/// Result of a simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McResult {
    pub trials: u64,
    pub seed: u64,
    pub mean_d2: f64,
    /// Sample standard deviation / sqrt(trials).
    pub std_error: f64,
    /// Empirical Prob[d^2 > eps^2] per requested eps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_frequencies: Option<Vec<(f64, f64)>>,
}

impl McResult {
    /// View as an error report: the estimate with its statistical provenance.
    pub fn to_error_report(&self, n: Option<u32>, j: Spin) -> crate::ErrorReport {
        crate::ErrorReport {
            n,
            j,
            value: self.mean_d2,
            method: crate::Method::MonteCarlo {
                trials: self.trials,
                std_error: self.std_error,
            },
        }
    }
}

fn run_trials(table: &SamplerTable, trials: u64, seed: u64, epsilons: Option<&[f64]>) -> McResult {
    let thresholds: Vec<f64> = epsilons
        .map(|eps| eps.iter().map(|e| e * e).collect())
        .unwrap_or_default();
    let mut sum = Kahan::default();
    let mut sum_sq = Kahan::default();
    let mut tail_counts = vec![0u64; thresholds.len()];
    let mut index = 0u64;
    while index < trials {
        let stop = (index + CHUNK as u64).min(trials);
        let mut chunk_sum = Kahan::default();
        let mut chunk_sq = Kahan::default();
        for i in index..stop {
            let omega = table.sample(uniform(seed, i));
            let d2 = squared_axis_distance_raw(omega);
            chunk_sum.add(d2);
            chunk_sq.add(d2 * d2);
            for (count, &t) in tail_counts.iter_mut().zip(&thresholds) {
                if d2 > t {
                    *count += 1;
                }
            }
        }
        sum.add(chunk_sum.sum);
        sum_sq.add(chunk_sq.sum);
        index = stop;
    }
    let nf = trials as f64;
    let mean = sum.sum / nf;
    let variance = ((sum_sq.sum - nf * mean * mean) / (nf - 1.0)).max(0.0);
    McResult {
        trials,
        seed,
        mean_d2: mean,
        std_error: (variance / nf).sqrt(),
        tail_frequencies: epsilons.map(|eps| {
            eps.iter()
                .zip(&tail_counts)
                .map(|(&e, &c)| (e, c as f64 / nf))
                .collect()
        }),
    }
}

/// Simulate the protocol for n copies of the spin-j singlet: draw relative
/// rotation angles from the outcome density and average the squared distance.
/// Deterministic in (n, j, trials, seed).
pub fn simulate_protocol(n: u32, j: Spin, trials: u64, seed: u64) -> Result<McResult> {
    if trials < 10_000 {
        return Err(Error::InvalidArgument(format!(
            "need at least 10^4 trials, got {trials}"
        )));
    }
    let c = CoefficientVector::for_copies(n, j)?;
    let table = auto_sampler(&c)?;
    Ok(run_trials(&table, trials, seed, None))
}

/// Tail-probability run for an arbitrary state: records the empirical
/// Prob[d^2 > eps^2] for each eps, for comparison against the concentration
/// bound Prob[d^2 > eps^2] <= <d^2>/eps^2.
pub fn chebyshev_check(
    c: &CoefficientVector,
    epsilons: &[f64],
    trials: u64,
    seed: u64,
) -> Result<McResult> {
    if trials < 10_000 {
        return Err(Error::InvalidArgument(format!(
            "need at least 10^4 trials, got {trials}"
        )));
    }
    if epsilons.iter().any(|&e| e.is_nan() || e <= 0.0) {
        return Err(Error::InvalidArgument(
            "every epsilon must be positive".into(),
        ));
    }
    let table = auto_sampler(c)?;
    Ok(run_trials(&table, trials, seed, Some(epsilons)))
}
