//! Pants decomposition data: ordered boundary cuffs, the two-hexagon
//! decomposition, and complex twist measurements along a cuff.

use crate::geodesic::{double_cross_width, Displacement, OrientedGeodesic};
use crate::polygons::{hexagon_complete, HexagonWidths, SolveBranch};
use crate::{Error, Result};
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Euclid;

/// One boundary cuff of a pair of pants: a geodesic representative with its
/// complex length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cuff {
    pub geodesic: OrientedGeodesic,
    pub length: Complex64,
}

/// A boundary-ordered pair of pants. The ordering of the three cuffs is
/// significant and preserved.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledPants {
    boundary: [Cuff; 3],
}

impl LabeledPants {
    pub fn new(boundary: [Cuff; 3]) -> Result<Self> {
        if boundary.iter().any(|c| c.length.re <= 0.0) {
            return Err(Error::OutOfDomain);
        }
        Ok(LabeledPants { boundary })
    }

    /// k-th boundary cuff, 1-based.
    pub fn boundary(&self, k: usize) -> &Cuff {
        &self.boundary[k - 1]
    }
}

/// Decomposes the pants with cuff lengths l₁, l₂, l₃ into its two isometric
/// right-angled hexagons: alternating widths l_i/2 + iπ, completed by the
/// law of cosines. The even widths' real parts are the pairwise seam
/// distances between boundary components.
pub fn pants_from_cuff_lengths(
    l1: Complex64,
    l2: Complex64,
    l3: Complex64,
) -> Result<(HexagonWidths, HexagonWidths)> {
    for l in [l1, l2, l3] {
        if l.re <= 0.0 {
            return Err(Error::OutOfDomain);
        }
    }
    let w = |l: Complex64| Displacement::new(l / 2.0 + Complex64::new(0.0, PI));
    let hex = hexagon_complete(w(l1), w(l2), w(l3), SolveBranch::PositiveRe)?;
    Ok((hex.clone(), hex))
}

/// A complex twist measurement along a cuff: `twist0` is the raw
/// displacement carrying m₁ to m₂ along the axis; `twist` reduces the real
/// part mod the curve length to minimal absolute value (when the length is
/// known) and the imaginary part to (-π, π]; `sign` is +1 when the axis
/// orientation agrees with the curve's own orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistMeasurement {
    pub twist0: Complex64,
    pub twist: Complex64,
    pub sign: i8,
}

/// Measures the complex twist carrying the perpendicular `m1` to `m2` along
/// `axis`: the displacement of the isometry with the given axis mapping m₁
/// to m₂, which is the double-cross width μ(m₁, m₂; axis), sign-adjusted by
/// whether the axis orientation agrees with the curve's.
pub fn complex_twist(
    axis: &OrientedGeodesic,
    m1: &OrientedGeodesic,
    m2: &OrientedGeodesic,
    orientation_agrees: bool,
    curve_length: Option<f64>,
) -> Result<TwistMeasurement> {
    let mu = double_cross_width(m1, m2, axis)?.get();
    let sign: i8 = if orientation_agrees { 1 } else { -1 };
    let twist0 = mu * sign as f64;
    let re = match curve_length {
        Some(len) if len > 0.0 => {
            let mut r = Euclid::rem_euclid(&twist0.re, &len);
            if r > len / 2.0 {
                r -= len;
            }
            r
        }
        _ => twist0.re,
    };
    let twist = Displacement::new(Complex64::new(re, twist0.im)).get();
    Ok(TwistMeasurement { twist0, twist, sign })
}
