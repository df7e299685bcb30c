//! Spin labels and rotation class angles.
//!
//! Spins are stored as twice their value so that half-integers are exact
//! integers; no floating-point spin label appears anywhere in the crate.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An exact half-integer spin (or total-angular-momentum) label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    /// Spin from its doubled value: `from_twice(1)` is j = 1/2, `from_twice(4)` is j = 2.
    pub fn from_twice(twice: i64) -> Result<Self> {
        if twice < 0 || twice > u32::MAX as i64 {
            return Err(Error::NegativeSpin(twice));
        }
        Ok(Self {
            twice: twice as u32,
        })
    }

    /// Integer spin j.
    pub fn integer(j: u32) -> Self {
        Self { twice: 2 * j }
    }

    /// The doubled label 2j.
    pub fn twice(self) -> u32 {
        self.twice
    }

    /// Representation dimension 2j + 1.
    pub fn dimension(self) -> usize {
        self.twice as usize + 1
    }

    /// j as a floating-point value.
    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    /// True for half-odd-integer spins (1/2, 3/2, ...).
    pub fn is_half_odd(self) -> bool {
        !self.twice.is_multiple_of(2)
    }
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// A rotation angle in [0, 2*pi]: the conjugacy-class coordinate of SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassAngle {
    omega: f64,
}

pub(crate) const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

impl ClassAngle {
    pub fn new(omega: f64) -> Result<Self> {
        if !omega.is_finite() || !(0.0..=TWO_PI).contains(&omega) {
            return Err(Error::AngleOutOfRange(omega));
        }
        Ok(Self { omega })
    }

    pub fn radians(self) -> f64 {
        self.omega
    }
}
