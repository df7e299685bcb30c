//! Quantum Fisher information of the rotated spin-j singlet and Cramér-Rao
//! comparisons against the exact optimal error.
//!
//! The singlet reduces every one-sided expectation to a normalized trace,
//! <A (x) I> = Tr[A]/(2j+1), so the QFI matrix over the three rotation
//! generators is (4 j (j+1)/3) I. The CRB benchmark for the expected squared
//! distance is 3/(2 n j (j+1)); the optimal measurement attains it for large
//! n (approaching from below at finite n, since the squared axis distance
//! sits under its own quadratic expansion).

use serde::{Deserialize, Serialize};

use crate::alignment::n_copy_error;
use crate::su2::angular_momentum_matrices;
use crate::{Error, Result, Spin};

/// Cap on the dense-matrix path.
pub const MAX_TWICE_J: u32 = 100;

/// The 3x3 quantum Fisher information matrix over rotation-generator
/// parameters (symmetric, positive semi-definite).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QfiMatrix {
    pub j: Spin,
    pub entries: [[f64; 3]; 3],
}

impl QfiMatrix {
    /// Largest |F_ab - G_ab| against another matrix.
    pub fn max_deviation_from(&self, other: &[[f64; 3]; 3]) -> f64 {
        self.entries
            .iter()
            .zip(other)
            .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }

    /// The closed form (4 j (j+1)/3) * identity.
    pub fn closed_form(j: Spin) -> [[f64; 3]; 3] {
        let jf = j.as_f64();
        let diag = 4.0 * jf * (jf + 1.0) / 3.0;
        let mut m = [[0.0; 3]; 3];
        for (a, row) in m.iter_mut().enumerate() {
            row[a] = diag;
        }
        m
    }
}

/// QFI of one spin-j singlet, computed from first principles with dense
/// angular momentum matrices:
/// F_ab = 4 [ Tr(J_a J_b + J_b J_a) / (2 (2j+1)) - Tr(J_a) Tr(J_b) / (2j+1)^2 ].
pub fn qfi_matrix(j: Spin) -> Result<QfiMatrix> {
    if j.twice() == 0 {
        return Err(Error::TrivialRepresentation);
    }
    if j.twice() > MAX_TWICE_J {
        return Err(Error::DimensionCap(j.twice(), MAX_TWICE_J));
    }
    let gens = angular_momentum_matrices(j)?;
    let comps = gens.components();
    let dim = j.dimension() as f64;
    let mut entries = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in a..3 {
            let anti = comps[a] * comps[b] + comps[b] * comps[a];
            let tr_anti: f64 = anti.diagonal().iter().map(|z| z.re).sum();
            let tr_a: f64 = comps[a].diagonal().iter().map(|z| z.re).sum();
            let tr_b: f64 = comps[b].diagonal().iter().map(|z| z.re).sum();
            let val = 4.0 * (0.5 * tr_anti / dim - (tr_a / dim) * (tr_b / dim));
            entries[a][b] = val;
            entries[b][a] = val;
        }
    }
    Ok(QfiMatrix { j, entries })
}

/// CRB benchmark on the expected squared distance for n copies: 3/(2 n j (j+1)).
pub fn crb_error_bound(n: u32, j: Spin) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("copy count n must be >= 1".into()));
    }
    if j.twice() == 0 {
        return Err(Error::TrivialRepresentation);
    }
    let jf = j.as_f64();
    Ok(3.0 / (2.0 * n as f64 * jf * (jf + 1.0)))
}

/// Exact error next to its CRB benchmark.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrbGap {
    pub n: u32,
    pub twice_j: u32,
    pub exact_error: f64,
    pub crb_bound: f64,
    /// exact / benchmark; grows like 8 j (j+1)/9 for a single copy, tends to 1
    /// for many copies.
    pub ratio: f64,
}

pub fn crb_gap_report(n: u32, j: Spin) -> Result<CrbGap> {
    let exact = n_copy_error(n, j)?.value;
    let bound = crb_error_bound(n, j)?;
    Ok(CrbGap {
        n,
        twice_j: j.twice(),
        exact_error: exact,
        crb_bound: bound,
        ratio: exact / bound,
    })
}
