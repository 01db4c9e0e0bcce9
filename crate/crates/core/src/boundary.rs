//! Extended complex numbers: the boundary sphere C ∪ {∞} and cross ratios.

use crate::{Error, Result};
use core::fmt;
use num_complex::Complex64;

/// A point of the boundary sphere at infinity: a finite complex number or
/// the distinguished point at infinity. Infinity is a tagged value, never a
/// sentinel float; arithmetic follows the limit rules of fractional linear
/// transformations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

pub use ExtComplex::{Finite, Infinity};

impl ExtComplex {
    pub fn new(re: f64, im: f64) -> Self {
        Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match self {
            Finite(z) => Some(*z),
            Infinity => None,
        }
    }

    /// Chordal distance on the Riemann sphere (diameter-2 normalization).
    /// Finite everywhere, symmetric, zero iff equal.
    pub fn chordal(&self, other: &ExtComplex) -> f64 {
        match (self, other) {
            (Infinity, Infinity) => 0.0,
            (Finite(z), Infinity) | (Infinity, Finite(z)) => {
                2.0 / (1.0 + z.norm_sqr()).sqrt()
            }
            (Finite(z), Finite(w)) => {
                2.0 * (z - w).norm()
                    / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
            }
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        Finite(z)
    }
}

impl From<f64> for ExtComplex {
    fn from(x: f64) -> Self {
        Finite(Complex64::new(x, 0.0))
    }
}

impl fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(z) => write!(f, "{}", z),
            Infinity => f.write_str("inf"),
        }
    }
}

/// Cross ratio R(a,b,c,d) = (a-c)(b-d) / ((a-d)(b-c)), extended by the
/// limit rules when one argument is infinite.
///
/// Returns `Infinity` when only the denominator vanishes (a = d or b = c),
/// and `DegenerateCrossRatio` when numerator and denominator both vanish or
/// when more than one argument is infinite.
pub fn cross_ratio(a: ExtComplex, b: ExtComplex, c: ExtComplex, d: ExtComplex) -> Result<ExtComplex> {
    let inf_count = [a, b, c, d].iter().filter(|p| p.is_infinite()).count();
    if inf_count > 1 {
        return Err(Error::DegenerateCrossRatio);
    }
    let (num, den) = match (a, b, c, d) {
        (Infinity, Finite(b), Finite(c), Finite(d)) => (b - d, b - c),
        (Finite(a), Infinity, Finite(c), Finite(d)) => (a - c, a - d),
        (Finite(a), Finite(b), Infinity, Finite(d)) => (b - d, a - d),
        (Finite(a), Finite(b), Finite(c), Infinity) => (a - c, b - c),
        (Finite(a), Finite(b), Finite(c), Finite(d)) => ((a - c) * (b - d), (a - d) * (b - c)),
        _ => unreachable!(),
    };
    if den == Complex64::new(0.0, 0.0) {
        if num == Complex64::new(0.0, 0.0) {
            Err(Error::DegenerateCrossRatio)
        } else {
            Ok(Infinity)
        }
    } else {
        Ok(Finite(num / den))
    }
}

/// Cross ratio required to be finite; callers use this inside identities
/// where an infinite value would mean a degenerate configuration.
pub fn cross_ratio_finite(
    a: ExtComplex,
    b: ExtComplex,
    c: ExtComplex,
    d: ExtComplex,
) -> Result<Complex64> {
    cross_ratio(a, b, c, d)?.finite().ok_or(Error::DegenerateCrossRatio)
}
