//! Sector decomposition of n-fold singlet tensor powers.
//!
//! The n-fold power of a spin-j singlet splits into spin-k singlet sectors,
//! k running from k_min (1/2 when n is odd and j half-integer, else 0) to nj
//! in unit steps. Multiplicities come from the Clebsch-Gordan coupling
//! recursion m_{i+1}(k) = sum over |k'-j| <= k <= k'+j of m_i(k'), done in
//! exact integer arithmetic; the associated amplitude over sector k is
//! c_k = sqrt((2k+1) m_{n,k} / (2j+1)^n).

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::quad::GaussLegendre;
use crate::su2::{character_raw, haar_class_weight_raw};
use crate::{Error, QuadRule, QuadratureSpec, Result, Spin};

/// Guard on the sector count: tables with n * twice_j beyond this are refused.
pub const MAX_SECTOR_PRODUCT: u64 = 1_000_000;

/// Exact multiplicities of the spin-k sectors in the n-fold singlet power.
#[derive(Debug, Clone)]
pub struct MultiplicityTable {
    n: u32,
    j: Spin,
    twice_k_min: u32,
    entries: Vec<BigUint>,
    total_dimension: BigUint,
}

impl MultiplicityTable {
    pub fn new(n: u32, j: Spin) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("copy count n must be >= 1".into()));
        }
        let product = n as u64 * j.twice() as u64;
        if product > MAX_SECTOR_PRODUCT {
            return Err(Error::CapacityExceeded(product, MAX_SECTOR_PRODUCT));
        }
        let dim = BigUint::from(j.twice() + 1).pow(n);
        let entries = match convolve_u128(n, j.twice()) {
            Some(small) => small.into_iter().map(BigUint::from).collect(),
            None => convolve_big(n, j.twice()),
        };
        let twice_k_min = if n == 1 {
            j.twice()
        } else {
            (n * j.twice()) % 2
        };
        Ok(Self {
            n,
            j,
            twice_k_min,
            entries,
            total_dimension: dim,
        })
    }

    pub fn copies(&self) -> u32 {
        self.n
    }

    pub fn spin(&self) -> Spin {
        self.j
    }

    pub fn twice_k_min(&self) -> u32 {
        self.twice_k_min
    }

    pub fn twice_k_max(&self) -> u32 {
        self.twice_k_min + 2 * (self.entries.len() as u32 - 1)
    }

    pub fn sector_count(&self) -> usize {
        self.entries.len()
    }

    /// Multiplicity of the spin-k sector; None when k is off the grid.
    pub fn multiplicity(&self, k: Spin) -> Option<&BigUint> {
        let tk = k.twice();
        if tk < self.twice_k_min || !(tk - self.twice_k_min).is_multiple_of(2) {
            return None;
        }
        self.entries.get(((tk - self.twice_k_min) / 2) as usize)
    }

    /// Iterate (twice_k, multiplicity) pairs in increasing k.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(i, m)| (self.twice_k_min + 2 * i as u32, m))
    }

    /// (2j+1)^n as an exact integer.
    pub fn total_dimension(&self) -> &BigUint {
        &self.total_dimension
    }

    /// Exact check of sum over k of (2k+1) m_k = (2j+1)^n.
    pub fn dimension_identity_holds(&self) -> bool {
        let sum: BigUint = self.iter().map(|(tk, m)| BigUint::from(tk + 1) * m).sum();
        sum == self.total_dimension
    }

    /// Sector weight p_k = (2k+1) m_k / (2j+1)^n.
    pub fn sector_probability(&self, index: usize) -> f64 {
        let tk = self.twice_k_min + 2 * index as u32;
        let num = BigUint::from(tk + 1) * &self.entries[index];
        // direct ratio while both sides fit the f64 exponent range
        if self.total_dimension.bits() < 1000 {
            num.to_f64().unwrap_or(f64::INFINITY) / self.total_dimension.to_f64().unwrap()
        } else {
            (big_ln(&num) - big_ln(&self.total_dimension)).exp()
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.entries.len())
            .map(|i| self.sector_probability(i))
            .collect()
    }
}

/// Coupling recursion with u128 prefix sums; None when (2j+1)^n risks overflow.
fn convolve_u128(n: u32, twice_j: u32) -> Option<Vec<u128>> {
    // every entry and prefix sum is bounded by the total dimension
    (twice_j as u128 + 1).checked_pow(n)?;
    let mut cur_min = twice_j;
    let mut cur = vec![1u128];
    for step in 1..n {
        let par = ((step + 1) * twice_j) % 2;
        let new_max = (step + 1) * twice_j;
        let mut prefix = Vec::with_capacity(cur.len() + 1);
        prefix.push(0u128);
        for &v in &cur {
            prefix.push(prefix.last().unwrap() + v);
        }
        let len = ((new_max - par) / 2 + 1) as usize;
        let mut next = Vec::with_capacity(len);
        let mut tk = par;
        while tk <= new_max {
            let lo = tk.abs_diff(twice_j);
            let hi = tk + twice_j;
            let ilo = lo.saturating_sub(cur_min) / 2;
            let ihi = ((hi - cur_min) / 2).min(cur.len() as u32 - 1);
            next.push(if ihi >= ilo {
                prefix[ihi as usize + 1] - prefix[ilo as usize]
            } else {
                0
            });
            tk += 2;
        }
        cur_min = par;
        cur = next;
    }
    Some(cur)
}

/// Same recursion in arbitrary precision, for copy counts where the
/// dimension outgrows u128.
fn convolve_big(n: u32, twice_j: u32) -> Vec<BigUint> {
    let mut cur_min = twice_j;
    let mut cur = vec![BigUint::from(1u32)];
    for step in 1..n {
        let par = ((step + 1) * twice_j) % 2;
        let new_max = (step + 1) * twice_j;
        let mut prefix = Vec::with_capacity(cur.len() + 1);
        prefix.push(BigUint::ZERO);
        for v in &cur {
            let last = prefix.last().unwrap().clone();
            prefix.push(last + v);
        }
        let mut next = Vec::new();
        let mut tk = par;
        while tk <= new_max {
            let lo = tk.abs_diff(twice_j);
            let hi = tk + twice_j;
            let ilo = lo.saturating_sub(cur_min) / 2;
            let ihi = ((hi - cur_min) / 2).min(cur.len() as u32 - 1);
            next.push(if ihi >= ilo {
                &prefix[ihi as usize + 1] - &prefix[ilo as usize]
            } else {
                BigUint::ZERO
            });
            tk += 2;
        }
        cur_min = par;
        cur = next;
    }
    cur
}

/// Natural log of a big integer, accurate to f64 precision.
fn big_ln(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        x.to_f64().unwrap().ln()
    } else {
        let shift = bits - 53;
        let top = (x >> shift).to_f64().unwrap();
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Closed-form multiplicity for n in {2, 3, 4}: the piecewise polynomials
/// that the coupling recursion reproduces sector by sector.
pub fn closed_form_multiplicity(n: u32, j: Spin, k: Spin) -> Result<u128> {
    let tj = j.twice() as i128;
    let tk = k.twice() as i128;
    let k_min = if n % 2 == 1 && j.is_half_odd() { 1 } else { 0 };
    if tk < k_min || tk > n as i128 * tj || (tk - n as i128 * tj) % 2 != 0 {
        return Err(Error::SectorOutOfRange(k.twice() as i64));
    }
    let m8 = match n {
        2 => 8,
        3 => {
            if tk <= tj {
                8 * (tk + 1) // m = 2k + 1
            } else {
                4 * (3 * tj - tk) + 8 // m = 3j + 1 - k
            }
        }
        4 => {
            if tk <= 2 * tj {
                // m = -3k^2/2 + 4kj + k/2 + 2j + 1
                -3 * tk * tk + 8 * tk * tj + 2 * tk + 8 * tj + 8
            } else {
                // m = 8j^2 + k^2/2 - 4kj + 6j - 3k/2 + 1
                16 * tj * tj + tk * tk - 8 * tk * tj + 24 * tj - 6 * tk + 8
            }
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "closed forms exist only for n in 2..=4, got {n}"
            )))
        }
    };
    debug_assert!(m8 % 8 == 0 && m8 >= 0);
    Ok((m8 / 8) as u128)
}

/// Amplitudes c_k of a signal state over total-angular-momentum sectors.
///
/// Amplitudes are non-negative by phase convention; probabilities are the
/// derived view `probabilities()`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoefficientVector {
    j: Spin,
    copies: Option<u32>,
    twice_k_min: u32,
    values: Vec<f64>,
    normalized: bool,
}

impl CoefficientVector {
    /// Amplitudes of the n-fold singlet power: c_k = sqrt((2k+1) m_k / (2j+1)^n).
    pub fn for_copies(n: u32, j: Spin) -> Result<Self> {
        let table = MultiplicityTable::new(n, j)?;
        let values: Vec<f64> = table.probabilities().iter().map(|p| p.sqrt()).collect();
        Ok(Self {
            j,
            copies: Some(n),
            twice_k_min: table.twice_k_min(),
            values,
            normalized: true,
        })
    }

    /// Independent route to the same amplitudes: sector weights as character
    /// integrals p_k = (2k+1) * integral of weight * chi_k * (chi_j/(2j+1))^n.
    ///
    /// The achieved accuracy is estimated by the normalization defect of the
    /// computed weights; exceeding `quad.abs_tolerance` is an error.
    pub fn via_character_integral(n: u32, j: Spin, quad: &QuadratureSpec) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("copy count n must be >= 1".into()));
        }
        let product = n as u64 * j.twice() as u64;
        if product > MAX_SECTOR_PRODUCT {
            return Err(Error::CapacityExceeded(product, MAX_SECTOR_PRODUCT));
        }
        let twice_k_min = if n == 1 {
            j.twice()
        } else {
            (n * j.twice()) % 2
        };
        let twice_k_max = n * j.twice();
        let sectors = ((twice_k_max - twice_k_min) / 2 + 1) as usize;
        let dim = j.twice() as f64 + 1.0;

        let nodes: Vec<(f64, f64)> = match quad.rule {
            QuadRule::GaussLegendre => GaussLegendre::new(quad.node_count)
                .mapped(0.0, crate::spin::TWO_PI)
                .collect(),
            QuadRule::Trapezoid => {
                let m = quad.node_count;
                let h = crate::spin::TWO_PI / (m - 1) as f64;
                (0..m)
                    .map(|i| {
                        let w = if i == 0 || i == m - 1 { 0.5 * h } else { h };
                        (i as f64 * h, w)
                    })
                    .collect()
            }
        };

        let mut p = vec![0.0; sectors];
        for &(omega, wt) in &nodes {
            let base = wt
                * haar_class_weight_raw(omega)
                * (character_raw(j.twice(), omega) / dim).powi(n as i32);
            for (idx, pk) in p.iter_mut().enumerate() {
                let tk = twice_k_min + 2 * idx as u32;
                *pk += base * character_raw(tk, omega);
            }
        }
        for (idx, pk) in p.iter_mut().enumerate() {
            let tk = twice_k_min + 2 * idx as u32;
            *pk *= tk as f64 + 1.0;
        }
        let defect = (p.iter().sum::<f64>() - 1.0).abs();
        if defect > quad.abs_tolerance {
            return Err(Error::ToleranceNotMet {
                requested: quad.abs_tolerance,
                achieved: defect,
            });
        }
        let values = p.iter().map(|&x| x.max(0.0).sqrt()).collect();
        Ok(Self {
            j,
            copies: Some(n),
            twice_k_min,
            values,
            normalized: true,
        })
    }

    /// A custom vector from sector probabilities (takes non-negative roots).
    pub fn from_probabilities(j: Spin, twice_k_min: u32, probabilities: &[f64]) -> Self {
        let values: Vec<f64> = probabilities.iter().map(|&p| p.max(0.0).sqrt()).collect();
        let norm: f64 = values.iter().map(|c| c * c).sum();
        Self {
            j,
            copies: None,
            twice_k_min,
            values,
            normalized: (norm - 1.0).abs() <= 1e-10,
        }
    }

    pub fn spin(&self) -> Spin {
        self.j
    }

    /// Copy count, None for custom vectors (e.g. filter branches).
    pub fn copies(&self) -> Option<u32> {
        self.copies
    }

    pub fn twice_k_min(&self) -> u32 {
        self.twice_k_min
    }

    pub fn twice_k_max(&self) -> u32 {
        self.twice_k_min + 2 * (self.values.len() as u32 - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.values
    }

    /// Amplitude of the k=0 sector, zero when absent (half-integer grids).
    pub fn amplitude_at_zero(&self) -> f64 {
        if self.twice_k_min == 0 {
            self.values[0]
        } else {
            0.0
        }
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.values.iter().map(|c| c * c).collect()
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|c| c * c).sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Iterate (twice_k, amplitude) pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &c)| (self.twice_k_min + 2 * i as u32, c))
    }
}

/// Large-n Gaussian approximation to the sector weight p_{n,k}:
/// 3 sqrt(3) (2k+1)^2 / (2 sqrt(2 pi n^3 j^3 (j+1)^3)) * exp(-3k^2 / (2 n j (j+1))).
///
/// No accuracy promise outside the asymptotic regime n >> 1.
pub fn gaussian_weight_approx(n: u32, j: Spin, k: Spin) -> f64 {
    let nf = n as f64;
    let jf = j.as_f64();
    let kf = k.as_f64();
    let dim_k = 2.0 * kf + 1.0;
    let var = nf * jf * (jf + 1.0);
    3.0 * 3f64.sqrt() * dim_k * dim_k / (2.0 * (2.0 * std::f64::consts::PI * var.powi(3)).sqrt())
        * (-3.0 * kf * kf / (2.0 * var)).exp()
}
