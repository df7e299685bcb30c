//! Expected squared alignment error of the optimal covariant measurement.
//!
//! For a signal state with sector amplitudes c_k the optimal covariant
//! measurement yields an outcome density over the relative rotation angle,
//! q(omega) = weight(omega) * (sum_k c_k chi_k(omega))^2, and the expected
//! squared axis distance reduces to a closed form in the amplitudes. The
//! production evaluator uses the cancellation-free rewriting
//!
//!   <d^2> = (2/3) * [ sum over the zero-padded grid of (c_k - c_{k-1})^2 + c_0^2 ],
//!
//! algebraically identical to (1/3)(4 + 2 c_0^2 - 4 sum_k c_k c_{k-1}) under
//! normalization, but stable when the answer is nine orders below the terms.

use serde::{Deserialize, Serialize};

use crate::decomposition::CoefficientVector;
use crate::quad::GaussLegendre;
use crate::su2::{character_raw, haar_class_weight_raw, squared_axis_distance_raw};
use crate::{ClassAngle, Error, QuadRule, QuadratureSpec, Result, Spin};

/// How an error value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature { nodes: usize },
    MonteCarlo { trials: u64, std_error: f64 },
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature { .. } => "quadrature",
            Method::MonteCarlo { .. } => "monte_carlo",
        }
    }
}

/// A computed expected squared distance with its provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorReport {
    /// Copy count, None for custom amplitude vectors.
    pub n: Option<u32>,
    pub j: Spin,
    /// Expected squared axis distance, in [0, 8/3].
    pub value: f64,
    pub method: Method,
}

fn require_normalized(c: &CoefficientVector) -> Result<()> {
    let norm = c.norm_sq();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::Unnormalized(norm));
    }
    Ok(())
}

/// Exact error of the optimal covariant measurement for the given amplitudes.
pub fn exact_error(c: &CoefficientVector) -> Result<ErrorReport> {
    require_normalized(c)?;
    let values = c.amplitudes();
    let mut sum = values[0] * values[0]; // boundary pair against c = 0 below k_min
    for w in values.windows(2) {
        let d = w[1] - w[0];
        sum += d * d;
    }
    let last = values[values.len() - 1];
    sum += last * last; // boundary pair above k_max
    let c0 = c.amplitude_at_zero();
    let value = 2.0 / 3.0 * (sum + c0 * c0);
    debug_assert!((-1e-12..=8.0 / 3.0 + 1e-12).contains(&value));
    Ok(ErrorReport {
        n: c.copies(),
        j: c.spin(),
        value,
        method: Method::ClosedForm,
    })
}

/// The textbook inner-product form (1/3)(4 + 2 c_0^2 - 4 sum c_k c_{k-1}).
/// Numerically unstable at large j; kept as a cross-check only.
#[doc(hidden)]
pub fn exact_error_inner_product_form(c: &CoefficientVector) -> Result<f64> {
    require_normalized(c)?;
    let values = c.amplitudes();
    let overlap: f64 = values.windows(2).map(|w| w[0] * w[1]).sum();
    let c0 = c.amplitude_at_zero();
    Ok((4.0 + 2.0 * c0 * c0 - 4.0 * overlap) / 3.0)
}

/// Outcome density of the optimal covariant measurement over the relative
/// rotation angle: q(omega) = weight(omega) * (sum_k c_k chi_k(omega))^2.
pub fn outcome_density(c: &CoefficientVector, omega: ClassAngle) -> f64 {
    outcome_density_raw(c, omega.radians())
}

pub(crate) fn outcome_density_raw(c: &CoefficientVector, omega: f64) -> f64 {
    let amp: f64 = c.iter().map(|(tk, ck)| ck * character_raw(tk, omega)).sum();
    haar_class_weight_raw(omega) * amp * amp
}

/// Independent oracle for [`exact_error`]: integrate d^2(omega) against the
/// outcome density. Also verifies that the density integrates to 1; a defect
/// beyond `quad.abs_tolerance` is an error carrying the achieved accuracy.
pub fn error_via_quadrature(c: &CoefficientVector, quad: &QuadratureSpec) -> Result<ErrorReport> {
    require_normalized(c)?;
    let (mut norm, mut value) = (0.0, 0.0);
    let mut accumulate = |omega: f64, wt: f64| {
        let q = outcome_density_raw(c, omega);
        norm += wt * q;
        value += wt * q * squared_axis_distance_raw(omega);
    };
    match quad.rule {
        QuadRule::GaussLegendre => {
            let gl = GaussLegendre::new(quad.node_count);
            for (omega, wt) in gl.mapped(0.0, crate::spin::TWO_PI) {
                accumulate(omega, wt);
            }
        }
        QuadRule::Trapezoid => {
            let m = quad.node_count;
            let h = crate::spin::TWO_PI / (m - 1) as f64;
            for i in 0..m {
                let wt = if i == 0 || i == m - 1 { 0.5 * h } else { h };
                accumulate(i as f64 * h, wt);
            }
        }
    }
    let defect = (norm - 1.0).abs();
    if defect > quad.abs_tolerance {
        return Err(Error::ToleranceNotMet {
            requested: quad.abs_tolerance,
            achieved: defect,
        });
    }
    Ok(ErrorReport {
        n: c.copies(),
        j: c.spin(),
        value,
        method: Method::Quadrature {
            nodes: quad.node_count,
        },
    })
}

/// Amplitudes of the optimal state for transmitting a Cartesian frame with
/// total angular momentum bounded by 2j:
/// c_k = sin(pi (k+1) / (2 (j+1))) / sqrt(j+1) on the integer grid k = 0..2j.
///
/// Its error is pi^2/(6 j^2) + O(1/j^3).
pub fn optimal_state_coefficients(j: Spin) -> Result<CoefficientVector> {
    if j.twice() == 0 {
        return Err(Error::InvalidArgument(
            "optimal state needs twice_j >= 1".into(),
        ));
    }
    let jf = j.as_f64();
    let sectors = j.twice() as usize + 1; // k = 0..2j in unit steps
    let probs: Vec<f64> = (0..sectors)
        .map(|k| {
            let s = (std::f64::consts::PI * (k as f64 + 1.0) / (2.0 * (jf + 1.0))).sin();
            s * s / (jf + 1.0)
        })
        .collect();
    Ok(CoefficientVector::from_probabilities(j, 0, &probs))
}

/// Exact error for n copies of the spin-j singlet.
pub fn n_copy_error(n: u32, j: Spin) -> Result<ErrorReport> {
    let c = CoefficientVector::for_copies(n, j)?;
    exact_error(&c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn spin(twice: i64) -> Spin {
        Spin::from_twice(twice).unwrap()
    }

    #[test]
    fn single_singlet_error_is_four_thirds_for_every_spin() {
        for twice_j in 1..=20i64 {
            let r = n_copy_error(1, spin(twice_j)).unwrap();
            assert_abs_diff_eq!(r.value, 4.0 / 3.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn two_copies_spin_one_frozen_value() {
        // frozen from the quadrature oracle at 8192 nodes
        let r = n_copy_error(2, spin(2)).unwrap();
        assert_abs_diff_eq!(r.value, 0.577031977218, epsilon = 1e-7);
    }

    #[test]
    fn quadrature_oracle_agrees_on_frozen_cells() {
        let quad = QuadratureSpec::gauss_legendre(8192, 1e-9).unwrap();
        let c = CoefficientVector::for_copies(2, spin(2)).unwrap();
        let r = error_via_quadrature(&c, &quad).unwrap();
        assert_abs_diff_eq!(r.value, 0.577031977218, epsilon = 1e-9);
        let single = CoefficientVector::for_copies(1, spin(4)).unwrap();
        let r = error_via_quadrature(&single, &quad).unwrap();
        assert_abs_diff_eq!(r.value, 4.0 / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn closed_form_matches_quadrature_sweep() {
        for n in 1..=4u32 {
            for twice_j in 1..=40i64 {
                let c = CoefficientVector::for_copies(n, spin(twice_j)).unwrap();
                let quad = QuadratureSpec::auto_for(n, twice_j as u32);
                let exact = exact_error(&c).unwrap().value;
                let by_quad = error_via_quadrature(&c, &quad).unwrap().value;
                assert!(
                    (exact - by_quad).abs() <= 1e-9,
                    "n={n} twice_j={twice_j}: {exact} vs {by_quad}"
                );
            }
        }
    }

    #[test]
    fn stable_form_matches_inner_product_form() {
        for (n, twice_j) in [(2u32, 2i64), (3, 1), (3, 4), (4, 5)] {
            let c = CoefficientVector::for_copies(n, spin(twice_j)).unwrap();
            let stable = exact_error(&c).unwrap().value;
            let literal = exact_error_inner_product_form(&c).unwrap();
            assert_abs_diff_eq!(stable, literal, epsilon = 1e-12);
        }
    }

    #[test]
    fn half_integer_grid_boundary_terms() {
        // three spin-1/2 singlets: amplitudes sqrt(1/2) on k = 1/2, 3/2;
        // the class integral gives exactly 2/3
        let c = CoefficientVector::for_copies(3, spin(1)).unwrap();
        let r = exact_error(&c).unwrap();
        assert_abs_diff_eq!(r.value, 2.0 / 3.0, epsilon = 1e-13);
        let quad = QuadratureSpec::gauss_legendre(4096, 1e-10).unwrap();
        let q = error_via_quadrature(&c, &quad).unwrap();
        assert_abs_diff_eq!(q.value, 2.0 / 3.0, epsilon = 1e-10);
    }

    #[test]
    fn rejects_unnormalized_input() {
        let c = CoefficientVector::from_probabilities(spin(2), 0, &[0.3, 0.3]);
        assert!(matches!(exact_error(&c), Err(Error::Unnormalized(_))));
    }

    #[test]
    fn optimal_state_spin_half() {
        let c = optimal_state_coefficients(spin(1)).unwrap();
        let p = c.probabilities();
        assert_abs_diff_eq!(p[0], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(p[1], 0.5, epsilon = 1e-14);
        // (1/3)(4 + 2*(1/2) - 4*(1/2)) = 1
        assert_abs_diff_eq!(exact_error(&c).unwrap().value, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn optimal_state_normalization() {
        for twice_j in (1..=200i64).step_by(7) {
            let c = optimal_state_coefficients(spin(twice_j)).unwrap();
            assert_abs_diff_eq!(c.norm_sq(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn optimal_state_heisenberg_band_at_moderate_spin() {
        let j = 50.0;
        let c = optimal_state_coefficients(spin(100)).unwrap();
        let scaled = exact_error(&c).unwrap().value * j * j;
        let target = std::f64::consts::PI.powi(2) / 6.0;
        assert!(scaled >= 0.9 * target && scaled <= 1.1 * target, "{scaled}");
    }

    #[test]
    fn optimal_state_beats_two_copies() {
        for twice_j in 2..=40i64 {
            let opt = exact_error(&optimal_state_coefficients(spin(twice_j)).unwrap()).unwrap();
            let two = n_copy_error(2, spin(twice_j)).unwrap();
            assert!(opt.value <= two.value, "twice_j={twice_j}");
        }
    }

    #[test]
    fn two_copy_large_spin_sql_constant() {
        let r = n_copy_error(2, spin(2000)).unwrap();
        let scaled = r.value * 1000.0;
        assert!((scaled - 2.0 / 3.0).abs() <= 0.02, "{scaled}");
    }

    #[test]
    fn four_copy_large_spin_heisenberg_constant() {
        let j = 10_000.0;
        let r = n_copy_error(4, spin(20_000)).unwrap();
        let scaled = r.value * j * j;
        let target = 11.0 * 2f64.ln() / 18.0;
        assert!((scaled - target).abs() <= 0.01, "{scaled} vs {target}");
    }

    #[test]
    fn outcome_density_special_cases() {
        // single singlet at omega = 0: the class weight vanishes
        let c = CoefficientVector::for_copies(1, spin(2)).unwrap();
        assert_eq!(outcome_density(&c, ClassAngle::new(0.0).unwrap()), 0.0);
        // a k = 0 only vector reduces to the bare class weight
        let c0 = CoefficientVector::from_probabilities(spin(0), 0, &[1.0]);
        for omega in [0.4, 1.0, 3.0, 6.0] {
            assert_abs_diff_eq!(
                outcome_density(&c0, ClassAngle::new(omega).unwrap()),
                haar_class_weight_raw(omega),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn outcome_density_normalizes() {
        let c = CoefficientVector::for_copies(2, spin(2)).unwrap();
        let gl = GaussLegendre::new(4096);
        let total = gl.integrate(0.0, crate::spin::TWO_PI, |w| outcome_density_raw(&c, w));
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn every_report_in_range() {
        for (n, twice_j) in [(1u32, 1i64), (2, 7), (3, 3), (4, 10), (7, 4)] {
            let r = n_copy_error(n, spin(twice_j)).unwrap();
            assert!((0.0..=8.0 / 3.0).contains(&r.value));
        }
    }
}
