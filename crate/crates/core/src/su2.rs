//! SU(2) primitives: characters, the Haar class measure, angular momentum
//! matrices, and the axis-averaged squared distance between rotated frames.
//!
//! Everything here is a class function of the rotation angle omega in
//! [0, 2*pi] (the full SU(2) range, for integer and half-integer spins alike).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::spin::TWO_PI;
use crate::{ClassAngle, Error, Result, Spin};

/// Character of the spin-k irrep at rotation angle omega:
/// chi_k(omega) = sin((2k+1) omega/2) / sin(omega/2).
///
/// The removable singularities at omega = 0 and 2*pi are evaluated by a
/// quadratic Taylor guard; |chi_k| <= 2k+1 always.
pub fn character(k: Spin, omega: ClassAngle) -> f64 {
    character_raw(k.twice(), omega.radians())
}

pub(crate) fn character_raw(twice_k: u32, omega: f64) -> f64 {
    let dim = twice_k as f64 + 1.0;
    let half_sin = (omega / 2.0).sin();
    if half_sin.abs() < 1e-6 {
        // Near a multiple of 2*pi: chi_k(delta) = (2k+1) [1 - ((2k+1)^2 - 1) delta^2 / 24]
        // with delta the signed distance to the nearest multiple. Crossing
        // 2*pi flips the sign for half-integer k (chi picks up (-1)^{2k}).
        let (delta, sign) = if omega > std::f64::consts::PI {
            (omega - TWO_PI, if twice_k % 2 == 1 { -1.0 } else { 1.0 })
        } else {
            (omega, 1.0)
        };
        sign * dim * (1.0 - (dim * dim - 1.0) * delta * delta / 24.0)
    } else {
        (dim * omega / 2.0).sin() / half_sin
    }
}

/// Density of the SU(2) class measure: sin^2(omega/2) / pi.
///
/// Normalized so that the integral over [0, 2*pi] is 1 and characters are
/// orthonormal with respect to it.
pub fn haar_class_weight(omega: ClassAngle) -> f64 {
    haar_class_weight_raw(omega.radians())
}

pub(crate) fn haar_class_weight_raw(omega: f64) -> f64 {
    let s = (omega / 2.0).sin();
    s * s / std::f64::consts::PI
}

/// Squared distance between a frame and its image under a rotation by omega,
/// averaged over the three axes: d^2(omega) = (4/3)(1 - cos omega).
///
/// Depends only on the rotation angle, not the axis; range [0, 8/3].
pub fn squared_axis_distance(omega: ClassAngle) -> f64 {
    squared_axis_distance_raw(omega.radians())
}

pub(crate) fn squared_axis_distance_raw(omega: f64) -> f64 {
    4.0 / 3.0 * (1.0 - omega.cos())
}

/// The standard spin-j angular momentum matrices in the |j, m> basis
/// (m = j, j-1, ..., -j), Hermitian, satisfying [Jx, Jy] = i Jz cyclically.
#[derive(Debug, Clone)]
pub struct AngularMomentum {
    pub x: DMatrix<Complex64>,
    pub y: DMatrix<Complex64>,
    pub z: DMatrix<Complex64>,
}

impl AngularMomentum {
    pub fn components(&self) -> [&DMatrix<Complex64>; 3] {
        [&self.x, &self.y, &self.z]
    }
}

/// Build Jx, Jy, Jz for spin j. The trivial representation is rejected:
/// j = 0 has no nonzero generators.
pub fn angular_momentum_matrices(j: Spin) -> Result<AngularMomentum> {
    if j.twice() == 0 {
        return Err(Error::TrivialRepresentation);
    }
    let d = j.dimension();
    let jf = j.as_f64();
    // raising operator in the |j, m> basis: <m+1| J+ |m> = sqrt(j(j+1) - m(m+1))
    let mut plus = DMatrix::<Complex64>::zeros(d, d);
    for col in 1..d {
        let m = jf - col as f64; // m of the column state
        let amp = (jf * (jf + 1.0) - m * (m + 1.0)).sqrt();
        plus[(col - 1, col)] = Complex64::new(amp, 0.0);
    }
    let minus = plus.adjoint();
    let x = (&plus + &minus).map(|z| z * Complex64::new(0.5, 0.0));
    let y = (&plus - &minus).map(|z| z * Complex64::new(0.0, -0.5));
    let mut z = DMatrix::<Complex64>::zeros(d, d);
    for row in 0..d {
        z[(row, row)] = Complex64::new(jf - row as f64, 0.0);
    }
    Ok(AngularMomentum { x, y, z })
}
