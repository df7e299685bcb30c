//! The probabilistic sector filter that turns two singlet copies into the
//! optimal frame-transmitting state.
//!
//! A local two-outcome operation with operators proportional to
//! sum_k (c_k_opt / c_k) P_k remodulates the two-copy sector amplitudes into
//! the optimal ones. The contraction constraint makes the largest achievable
//! success probability
//!
//!   p_yes = min_k (2k+1)(j+1) / ((2j+1)^2 sin^2(pi (k+1) / (2 (j+1)))),
//!
//! which stays above 43.9% for every j and tends to 0.4393 as j grows. The
//! failing branch keeps standard-quantum-limit scaling ~1.189/j.

use serde::{Deserialize, Serialize};

use crate::alignment::{exact_error, optimal_state_coefficients, ErrorReport};
use crate::decomposition::CoefficientVector;
use crate::{Error, Result, Spin};

/// Large-j limit of the filter success probability.
pub const P_YES_LIMIT: f64 = 0.4393;

/// Which conditional branch of the filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Yes,
    No,
}

/// A designed sector filter: attenuation, success probability and both
/// conditional branch states.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FilterDesign {
    pub j: Spin,
    /// Overall attenuation of the passing branch; p_yes = lambda^2.
    pub lambda: f64,
    pub p_yes: f64,
    /// Sector where the contraction constraint binds.
    pub argmin_k: Spin,
    pub yes_branch: CoefficientVector,
    pub no_branch: CoefficientVector,
}

/// Design the filter for two spin-j singlet copies.
pub fn design_filter(j: Spin) -> Result<FilterDesign> {
    if j.twice() == 0 {
        return Err(Error::InvalidArgument("filter needs twice_j >= 1".into()));
    }
    let jf = j.as_f64();
    let dim2 = (2.0 * jf + 1.0) * (2.0 * jf + 1.0);
    let yes_branch = optimal_state_coefficients(j)?;
    let p_opt = yes_branch.probabilities();

    // two-copy weights p_k = (2k+1)/(2j+1)^2 on the integer grid k = 0..2j
    let p_two: Vec<f64> = (0..=j.twice())
        .map(|k| (2.0 * k as f64 + 1.0) / dim2)
        .collect();

    // exhaustive scan of the contraction bound over all sectors
    let (argmin, p_yes) = p_two
        .iter()
        .zip(&p_opt)
        .map(|(&p, &q)| p / q)
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one sector");

    // failing-branch weights (p_k - p_yes p_k_opt)/(1 - p_yes); tiny negatives
    // from the binding sector are roundoff and clamp to zero
    let no_probs: Vec<f64> = p_two
        .iter()
        .zip(&p_opt)
        .map(|(&p, &q)| {
            let v = (p - p_yes * q) / (1.0 - p_yes);
            if v < 0.0 {
                debug_assert!(v > -1e-15, "negative branch weight {v}");
                0.0
            } else {
                v
            }
        })
        .collect();
    let no_branch = CoefficientVector::from_probabilities(j, 0, &no_probs);

    Ok(FilterDesign {
        j,
        lambda: p_yes.sqrt(),
        p_yes,
        argmin_k: Spin::integer(argmin as u32),
        yes_branch,
        no_branch,
    })
}

/// Exact error conditioned on a filter branch.
pub fn conditional_error(design: &FilterDesign, branch: Branch) -> Result<ErrorReport> {
    match branch {
        Branch::Yes => exact_error(&design.yes_branch),
        Branch::No => exact_error(&design.no_branch),
    }
}

/// Probability that at least one of `pair_batches` independent filter runs
/// succeeds, in the large-j limit: 1 - (1 - 0.4393)^n.
///
/// This is the limiting bound, not an exact finite-j probability; the per-j
/// value composes from [`design_filter`].
pub fn repeated_filter_success(pair_batches: u32) -> f64 {
    1.0 - (1.0 - P_YES_LIMIT).powi(pair_batches as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spin(twice: i64) -> Spin {
        Spin::from_twice(twice).unwrap()
    }

    fn design(j: u32) -> FilterDesign {
        design_filter(Spin::integer(j)).unwrap()
    }

    #[test]
    fn success_probability_converges_to_limit() {
        let d = design(1000);
        assert!((d.p_yes - 0.4393).abs() <= 0.0005, "{}", d.p_yes);
    }

    #[test]
    fn success_probability_above_439_for_all_plotted_spins() {
        for j in 10..=1000u32 {
            let d = design(j);
            assert!(d.p_yes > 0.439, "j={j}: {}", d.p_yes);
        }
    }

    #[test]
    fn success_probability_above_44_percent_for_small_spins() {
        // the 44% bound holds up to j = 199 and first fails at j = 200
        for j in 10..=199u32 {
            assert!(design(j).p_yes > 0.44, "j={j}");
        }
        assert!(design(200).p_yes < 0.44);
    }

    #[test]
    fn contraction_binds_at_argmin() {
        for twice_j in [2i64, 5, 20, 101] {
            let d = design_filter(spin(twice_j)).unwrap();
            let p_opt = d.yes_branch.probabilities();
            let dim2 = (twice_j as f64 + 1.0) * (twice_j as f64 + 1.0);
            let mut max_ratio: f64 = 0.0;
            for (idx, q) in p_opt.iter().enumerate() {
                let p = (2.0 * idx as f64 + 1.0) / dim2;
                // lambda * c_opt / c = sqrt(p_yes * q / p) must be a contraction
                let ratio = (d.p_yes * q / p).sqrt();
                assert!(ratio <= 1.0 + 1e-12, "sector {idx}: {ratio}");
                max_ratio = max_ratio.max(ratio);
            }
            assert_abs_diff_eq!(max_ratio, 1.0, epsilon = 1e-9);
            let bind = (d.p_yes * p_opt[(d.argmin_k.twice() / 2) as usize]
                / ((d.argmin_k.twice() as f64 + 1.0) / dim2))
                .sqrt();
            assert_abs_diff_eq!(bind, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn branch_mixture_reconstructs_two_copy_weights() {
        for twice_j in [1i64, 2, 9, 40] {
            let d = design_filter(spin(twice_j)).unwrap();
            let yes = d.yes_branch.probabilities();
            let no = d.no_branch.probabilities();
            let dim2 = (twice_j as f64 + 1.0) * (twice_j as f64 + 1.0);
            for (idx, (py, pn)) in yes.iter().zip(&no).enumerate() {
                let mixed = d.p_yes * py + (1.0 - d.p_yes) * pn;
                let original = (2.0 * idx as f64 + 1.0) / dim2;
                assert_abs_diff_eq!(mixed, original, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn probability_bookkeeping() {
        for twice_j in [1i64, 3, 10, 55] {
            let d = design_filter(spin(twice_j)).unwrap();
            let no_total = d.no_branch.norm_sq();
            assert_abs_diff_eq!(d.p_yes + (1.0 - d.p_yes) * no_total, 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(d.lambda * d.lambda, d.p_yes, epsilon = 1e-15);
        }
    }

    #[test]
    fn success_probability_band_and_monotone_tail() {
        let grid: Vec<f64> = (10..=1000).map(|j| design(j).p_yes).collect();
        assert!(grid.iter().all(|&p| (0.439..=0.50).contains(&p)));
        for p in &grid[grid.len() - 100..] {
            assert!((p - 0.4393).abs() <= 0.001);
        }
    }

    #[test]
    fn yes_branch_error_heisenberg_band() {
        let d = design(100);
        let e = conditional_error(&d, Branch::Yes).unwrap().value;
        let scaled = e * 100.0 * 100.0;
        assert!((1.48..=1.81).contains(&scaled), "{scaled}");
    }

    #[test]
    fn no_branch_error_sql_constant() {
        let d = design(10_000);
        let e = conditional_error(&d, Branch::No).unwrap().value;
        let scaled = e * 10_000.0;
        assert!((1.179..=1.199).contains(&scaled), "{scaled}");
    }

    #[test]
    fn no_branch_small_spin_in_range() {
        let d = design(1);
        let e = conditional_error(&d, Branch::No).unwrap().value;
        assert!((0.0..=8.0 / 3.0).contains(&e));
    }

    #[test]
    fn yes_branch_beats_unfiltered_two_copies() {
        for twice_j in 2..=200i64 {
            let d = design_filter(spin(twice_j)).unwrap();
            let yes = conditional_error(&d, Branch::Yes).unwrap().value;
            let plain = crate::alignment::n_copy_error(2, spin(twice_j))
                .unwrap()
                .value;
            assert!(yes < plain, "twice_j={twice_j}: {yes} vs {plain}");
        }
    }

    #[test]
    fn repetition_bound() {
        assert_abs_diff_eq!(repeated_filter_success(1), 0.4393, epsilon = 1e-12);
        assert_abs_diff_eq!(
            repeated_filter_success(2),
            1.0 - 0.5607f64.powi(2),
            epsilon = 1e-12
        );
        let mut prev = 0.0;
        for n in 1..=40 {
            let p = repeated_filter_success(n);
            assert!(p > prev);
            prev = p;
        }
        assert!(repeated_filter_success(40) > 0.999_999);
    }
}
