//! Leading-order scaling laws of the alignment error and the numerical
//! integrals behind them.
//!
//! Regimes: one copy is flat at 4/3 for every spin; two copies reach the
//! standard quantum limit 2/(3j); three copies the quasi-Heisenberg law
//! ln(j)/(8 j^2); four copies the Heisenberg law 11 ln(2)/(18 j^2); the
//! optimal filtered state pi^2/(6 j^2); and for many copies at fixed spin
//! the error is 3/(2 n j (j+1)).

use serde::{Deserialize, Serialize};

use crate::alignment::n_copy_error;
use crate::quad::GaussLegendre;
use crate::{Error, QuadratureSpec, Result, Spin};

/// Scaling regime selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SingleCopy,
    TwoCopy,
    TwoCopyUnfavourable,
    ThreeCopy,
    FourCopy,
    OptimalState,
    LargeN,
}

impl Regime {
    /// Leading term of the expected squared distance in this regime; the
    /// copy count is only consulted (and required) for [`Regime::LargeN`].
    pub fn evaluate(self, n: Option<u32>, j: Spin) -> Result<f64> {
        leading_term(self, n, j)
    }
}

/// Closed-form leading term only, no higher corrections.
pub fn leading_term(regime: Regime, n: Option<u32>, j: Spin) -> Result<f64> {
    let jf = j.as_f64();
    if !matches!(regime, Regime::SingleCopy) && j.twice() == 0 {
        return Err(Error::InvalidArgument(
            "scaling regimes need twice_j >= 1".into(),
        ));
    }
    Ok(match regime {
        Regime::SingleCopy => 4.0 / 3.0,
        Regime::TwoCopy => 2.0 / (3.0 * jf),
        Regime::TwoCopyUnfavourable => 1.189 / jf,
        Regime::ThreeCopy => jf.ln() / (8.0 * jf * jf),
        Regime::FourCopy => 11.0 * 2f64.ln() / (18.0 * jf * jf),
        Regime::OptimalState => std::f64::consts::PI.powi(2) / (6.0 * jf * jf),
        Regime::LargeN => {
            let n = n
                .ok_or_else(|| Error::InvalidArgument("large-n regime needs a copy count".into()))?
                as f64;
            3.0 / (2.0 * n * jf * (jf + 1.0))
        }
    })
}

/// Cubic polynomial helpers for the continuous amplitude extensions.
#[derive(Debug, Clone, Copy)]
struct Cubic {
    // coefficients of a0 + a1 k + a2 k^2 + a3 k^3
    a: [f64; 4],
}

impl Cubic {
    /// (2k + 1) * (quadratic m), as exact coefficient arithmetic.
    fn sector_weight(m0: f64, m1: f64, m2: f64) -> Self {
        Self {
            a: [m0, m1 + 2.0 * m0, m2 + 2.0 * m1, 2.0 * m2],
        }
    }

    fn eval(&self, k: f64) -> f64 {
        self.a[0] + k * (self.a[1] + k * (self.a[2] + k * self.a[3]))
    }

    fn d1(&self, k: f64) -> f64 {
        self.a[1] + k * (2.0 * self.a[2] + 3.0 * k * self.a[3])
    }

    fn d2(&self, k: f64) -> f64 {
        2.0 * self.a[2] + 6.0 * k * self.a[3]
    }
}

/// m(k) polynomial for the branch of the n-copy multiplicity containing k.
fn branch_weight(n: u32, j: f64, upper: bool) -> Cubic {
    match (n, upper) {
        // m = 2k + 1
        (3, false) => Cubic::sector_weight(1.0, 2.0, 0.0),
        // m = 3j + 1 - k
        (3, true) => Cubic::sector_weight(3.0 * j + 1.0, -1.0, 0.0),
        // m = -3k^2/2 + (4j + 1/2) k + 2j + 1
        (4, false) => Cubic::sector_weight(2.0 * j + 1.0, 4.0 * j + 0.5, -1.5),
        // m = k^2/2 - (4j + 3/2) k + 8j^2 + 6j + 1
        (4, true) => Cubic::sector_weight(8.0 * j * j + 6.0 * j + 1.0, -4.0 * j - 1.5, 0.5),
        _ => unreachable!(),
    }
}

/// c(k) c''(k) for c = sqrt(g)/(2j+1)^{n/2}: equals (2 g g'' - g'^2) / (4 g (2j+1)^n).
fn c_times_c2(g: &Cubic, k: f64, dim_pow: f64) -> f64 {
    let gv = g.eval(k);
    (2.0 * gv * g.d2(k) - g.d1(k).powi(2)) / (4.0 * gv * dim_pow)
}

/// Leading Euler-Maclaurin integral -(2/3) * integral of c(k) c''(k) dk over
/// the branch ranges of the n-copy amplitude extension (n = 3 or 4).
///
/// For n = 4 the range splits at the branch point 2j into [1, 2j] and
/// [2j+1, 4j-1]; for n = 3 the leading contribution is the upper branch
/// [j+1, 3j-1]. Requires twice_j >= 20 so the extension is smooth there.
pub fn leading_integral(n: u32, j: Spin, quad: &QuadratureSpec) -> Result<f64> {
    if n != 3 && n != 4 {
        return Err(Error::InvalidArgument(format!(
            "leading integral defined for n in {{3, 4}}, got {n}"
        )));
    }
    if j.twice() < 20 {
        return Err(Error::InvalidArgument(
            "leading integral needs twice_j >= 20".into(),
        ));
    }
    let jf = j.as_f64();
    let dim_pow = (2.0 * jf + 1.0).powi(n as i32);
    let gl = GaussLegendre::new(quad.node_count.max(256));
    let total = if n == 4 {
        let low = branch_weight(4, jf, false);
        let high = branch_weight(4, jf, true);
        gl.integrate(1.0, 2.0 * jf, |k| c_times_c2(&low, k, dim_pow))
            + gl.integrate(2.0 * jf + 1.0, 4.0 * jf - 1.0, |k| {
                c_times_c2(&high, k, dim_pow)
            })
    } else {
        let high = branch_weight(3, jf, true);
        gl.integrate(jf + 1.0, 3.0 * jf - 1.0, |k| c_times_c2(&high, k, dim_pow))
    };
    Ok(-2.0 / 3.0 * total)
}

/// One row of a scaling scan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u32,
    pub twice_j: u32,
    pub error: f64,
    pub leading_term: f64,
    pub residual: f64,
    pub method: String,
}

/// Exact errors with the regime-specific scaled residual:
/// n=2: j <d^2> - 2/3; n=3: 8 j^2 <d^2> - ln j; n=4: j^2 <d^2> - 11 ln(2)/18.
pub fn residual_scan(n: u32, j_values: &[Spin]) -> Result<Vec<ScanRow>> {
    let regime = match n {
        2 => Regime::TwoCopy,
        3 => Regime::ThreeCopy,
        4 => Regime::FourCopy,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "residual scan defined for n in {{2, 3, 4}}, got {n}"
            )))
        }
    };
    j_values
        .iter()
        .map(|&j| {
            let report = n_copy_error(n, j)?;
            let jf = j.as_f64();
            let residual = match n {
                2 => jf * report.value - 2.0 / 3.0,
                3 => 8.0 * jf * jf * report.value - jf.ln(),
                _ => jf * jf * report.value - 11.0 * 2f64.ln() / 18.0,
            };
            Ok(ScanRow {
                n,
                twice_j: j.twice(),
                error: report.value,
                leading_term: leading_term(regime, Some(n), j)?,
                residual,
                method: report.method.name().to_string(),
            })
        })
        .collect()
}
