//! Möbius transformations (PSL₂(C)) and their action on the boundary sphere
//! and on upper half-space.

use crate::boundary::{ExtComplex, Finite, Infinity};
use crate::{Error, Result};
use num_complex::Complex64;

/// A projective 2x2 complex matrix [[a,b],[c,d]], normalized to det = 1 on
/// construction. `M` and `-M` represent the same isometry; all operations
/// here agree on the two representatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

/// A point of upper half-space: `z` the horizontal complex coordinate, `t`
/// the positive height. Points of the hyperbolic plane have `z` real.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointH {
    pub z: Complex64,
    pub t: f64,
}

impl PointH {
    pub fn new(z: Complex64, t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::OutOfDomain);
        }
        Ok(PointH { z, t })
    }

    pub fn real(x: f64, t: f64) -> Result<Self> {
        PointH::new(Complex64::new(x, 0.0), t)
    }
}

impl Mobius {
    /// Builds and normalizes (det -> 1). Fails on a singular matrix.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() == 0.0 {
            return Err(Error::SingularMatrix);
        }
        let s = det.sqrt();
        Ok(Mobius { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn identity() -> Self {
        Mobius {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn diagonal(lambda: Complex64) -> Result<Self> {
        Mobius::new(lambda, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), lambda.inv())
    }

    /// a + d. Only defined up to sign, like the matrix itself.
    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Self {
        Mobius { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn compose(&self, rhs: &Mobius) -> Self {
        Mobius {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    /// self ∘ m ∘ self⁻¹.
    pub fn conjugate(&self, m: &Mobius) -> Self {
        self.compose(m).compose(&self.inverse())
    }

    /// Projective equality up to tolerance: min ||M ∓ N|| over the sign.
    pub fn approx_eq(&self, other: &Mobius, tol: f64) -> bool {
        let dist = |s: f64| {
            ((self.a - other.a * s).norm_sqr()
                + (self.b - other.b * s).norm_sqr()
                + (self.c - other.c * s).norm_sqr()
                + (self.d - other.d * s).norm_sqr())
            .sqrt()
        };
        dist(1.0).min(dist(-1.0)) <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()).sqrt()
    }

    /// Largest singular value. For det = 1 the smaller one is its inverse.
    pub fn op_norm(&self) -> f64 {
        let f2 = self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr();
        let det2 = (self.a * self.d - self.b * self.c).norm_sqr();
        let disc = (f2 * f2 - 4.0 * det2).max(0.0);
        (0.5 * (f2 + disc.sqrt())).sqrt()
    }

    /// Action on the boundary sphere with the standard infinity conventions:
    /// p = ∞ maps to a/c (or ∞ if c = 0); a vanishing denominator maps to ∞.
    pub fn apply(&self, p: ExtComplex) -> ExtComplex {
        match p {
            Infinity => {
                if self.c == Complex64::new(0.0, 0.0) {
                    Infinity
                } else {
                    Finite(self.a / self.c)
                }
            }
            Finite(z) => {
                let den = self.c * z + self.d;
                if den == Complex64::new(0.0, 0.0) {
                    Infinity
                } else {
                    Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Isometric action on upper half-space.
    pub fn apply_point(&self, p: &PointH) -> PointH {
        let czd = self.c * p.z + self.d;
        let delta = czd.norm_sqr() + self.c.norm_sqr() * p.t * p.t;
        let z = ((self.a * p.z + self.b) * czd.conj() + self.a * self.c.conj() * p.t * p.t) / delta;
        PointH { z, t: p.t / delta }
    }

    /// True when trace² lies on the real segment [0, 4] (within `tol`), i.e.
    /// the isometry is elliptic, parabolic or the identity.
    pub fn is_loxodromic(&self, tol: f64) -> bool {
        let t2 = self.trace() * self.trace();
        !(t2.im.abs() <= tol && t2.re >= -tol && t2.re <= 4.0 + tol)
    }

    /// Derivative of the boundary action at a fixed point; conjugation
    /// invariant (the multiplier).
    pub fn multiplier_at(&self, p: ExtComplex) -> Complex64 {
        match p {
            Infinity => self.d * self.d, // c = 0 at a fixed ∞; d/a = d² for det 1
            Finite(z) => {
                let den = self.c * z + self.d;
                (den * den).inv()
            }
        }
    }

    /// Fixed points on the boundary. For c = 0 the finite fixed point is
    /// listed first and ∞ second; a parabolic map reports its single fixed
    /// point twice with the flag set.
    pub fn fixed_points(&self) -> Result<FixedPoints> {
        let zero = Complex64::new(0.0, 0.0);
        if self.approx_eq(&Mobius::identity(), 1e-14) {
            return Err(Error::IdentityInput);
        }
        let tr = self.trace();
        let disc = tr * tr - Complex64::new(4.0, 0.0);
        let parabolic = disc.norm() <= 1e-14 * (1.0 + tr.norm_sqr());
        if self.c == zero {
            if parabolic || self.a == self.d {
                return Ok(FixedPoints { first: Infinity, second: Infinity, parabolic: true });
            }
            let p = self.b / (self.d - self.a);
            return Ok(FixedPoints { first: Finite(p), second: Infinity, parabolic: false });
        }
        if parabolic {
            let p = Finite((self.a - self.d) / (2.0 * self.c));
            return Ok(FixedPoints { first: p, second: p, parabolic: true });
        }
        let s = disc.sqrt();
        let p1 = (self.a - self.d + s) / (2.0 * self.c);
        let p2 = (self.a - self.d - s) / (2.0 * self.c);
        Ok(FixedPoints { first: Finite(p1), second: Finite(p2), parabolic: false })
    }
}

/// Fixed-point pair of a Möbius transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoints {
    pub first: ExtComplex,
    pub second: ExtComplex,
    pub parabolic: bool,
}

/// Hyperbolic distance in upper half-space:
/// cosh d = 1 + (|z1-z2|² + (t1-t2)²) / (2 t1 t2).
pub fn dist_point(p: &PointH, q: &PointH) -> f64 {
    let x = ((p.z - q.z).norm_sqr() + (p.t - q.t) * (p.t - q.t)) / (2.0 * p.t * q.t);
    acosh1p(x)
}

/// acosh(1 + x) for x >= 0, stable for small x.
pub fn acosh1p(x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (x + (x * (x + 2.0)).sqrt()).ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::ExtComplex;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_fixes_everything() {
        let m = Mobius::identity();
        let p = ExtComplex::new(5.0, 2.0);
        assert_eq!(m.apply(p), p);
    }

    #[test]
    fn infinity_maps_to_a_over_c() {
        let m = Mobius::new(cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0)).unwrap();
        let img = m.apply(Infinity).finite().unwrap();
        assert!((img - cx(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn scaling_map() {
        let l = 2.0_f64;
        let m = Mobius::diagonal(cx((l / 2.0).exp(), 0.0)).unwrap();
        let img = m.apply(ExtComplex::new(1.0, 0.0)).finite().unwrap();
        assert!((img.re - l.exp()).abs() < 1e-12 * l.exp());
    }

    #[test]
    fn parabolic_fixed_points() {
        let m = Mobius::new(cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)).unwrap();
        let fp = m.fixed_points().unwrap();
        assert!(fp.parabolic);
        assert!(fp.first.is_infinite() && fp.second.is_infinite());
    }

    #[test]
    fn diagonal_fixed_points() {
        let m = Mobius::diagonal(cx(1.0_f64.exp(), 0.0)).unwrap();
        let fp = m.fixed_points().unwrap();
        assert_eq!(fp.first, ExtComplex::new(0.0, 0.0));
        assert!(fp.second.is_infinite());
        assert!(!fp.parabolic);
    }

    #[test]
    fn golden_ratio_fixed_points() {
        let m = Mobius::new(cx(2.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0)).unwrap();
        let fp = m.fixed_points().unwrap();
        for p in [fp.first, fp.second] {
            let img = m.apply(p);
            assert!(img.chordal(&p) < 1e-10);
        }
        let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
        let got = fp.first.finite().unwrap().re.max(fp.second.finite().unwrap().re);
        assert!((got - phi).abs() < 1e-12);
    }

    #[test]
    fn distance_examples() {
        let p = PointH::real(0.0, 1.0).unwrap();
        assert_eq!(dist_point(&p, &p), 0.0);
        let q = PointH::real(0.0, 1.0_f64.exp()).unwrap();
        assert!((dist_point(&p, &q) - 1.0).abs() < 1e-13);
        let r = PointH::real(1.0, 1.0).unwrap();
        assert!((dist_point(&p, &r) - 1.5_f64.acosh()).abs() < 1e-13);
    }

    #[test]
    fn point_action_is_isometric() {
        let m = Mobius::new(cx(1.3, 0.2), cx(-0.4, 1.1), cx(0.9, -0.6), cx(1.0, 0.3)).unwrap();
        let p = PointH::new(cx(0.4, -0.2), 0.7).unwrap();
        let q = PointH::new(cx(-1.1, 0.5), 2.3).unwrap();
        let d0 = dist_point(&p, &q);
        let d1 = dist_point(&m.apply_point(&p), &m.apply_point(&q));
        assert!((d0 - d1).abs() < 1e-12 * (1.0 + d0));
    }

    #[test]
    fn projective_sign_agreement() {
        let m = Mobius::new(cx(2.0, 1.0), cx(0.5, 0.0), cx(0.0, 0.3), cx(0.6, -0.2)).unwrap();
        let n = Mobius { a: -m.a, b: -m.b, c: -m.c, d: -m.d };
        assert!(m.approx_eq(&n, 1e-15));
        let p = ExtComplex::new(0.3, 0.8);
        assert!(m.apply(p).chordal(&n.apply(p)) < 1e-15);
    }
}
