//! Oriented geodesics, displacements, double crosses and common
//! perpendiculars.

use crate::boundary::{cross_ratio_finite, ExtComplex, Finite, Infinity};
use crate::mobius::{Mobius, PointH};
use crate::{Error, Result, FIXED_POINT_TOL, PERP_TOL};
use core::f64::consts::PI;
use core::fmt;
use num_complex::Complex64;
use num_traits::Euclid;

/// A geodesic of hyperbolic space given by an ordered pair of distinct
/// boundary points, oriented from `from` to `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedGeodesic {
    pub from: ExtComplex,
    pub to: ExtComplex,
}

impl OrientedGeodesic {
    pub fn new(from: ExtComplex, to: ExtComplex) -> Result<Self> {
        if from == to {
            return Err(Error::SharedEndpoint);
        }
        Ok(OrientedGeodesic { from, to })
    }

    pub fn reverse(&self) -> Self {
        OrientedGeodesic { from: self.to, to: self.from }
    }

    /// The vertical axis 0 -> ∞.
    pub fn vertical() -> Self {
        OrientedGeodesic { from: ExtComplex::new(0.0, 0.0), to: Infinity }
    }

    /// Same unoriented geodesic, up to chordal tolerance on the endpoint set.
    pub fn same_set(&self, other: &OrientedGeodesic, tol: f64) -> bool {
        (self.from.chordal(&other.from) < tol && self.to.chordal(&other.to) < tol)
            || (self.from.chordal(&other.to) < tol && self.to.chordal(&other.from) < tol)
    }
}

impl fmt::Display for OrientedGeodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} -> {})", self.from, self.to)
    }
}

/// A complex displacement mod 2πi, reduced so Im ∈ (-π, π]. The real part is
/// a signed translation distance, the imaginary part a turning angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Displacement(Complex64);

impl Displacement {
    pub fn new(mu: Complex64) -> Self {
        Displacement(reduce_im(mu))
    }

    pub fn get(&self) -> Complex64 {
        self.0
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    /// `-μ`, reduced back to the strip.
    pub fn negate(&self) -> Self {
        Displacement::new(-self.0)
    }

    /// Distance between the reduced representatives mod 2πi.
    pub fn dist(&self, other: &Displacement) -> f64 {
        let d = self.0 - other.0;
        let im = d.im.abs().min((d.im.abs() - 2.0 * PI).abs());
        (d.re * d.re + im * im).sqrt()
    }
}

impl From<Complex64> for Displacement {
    fn from(mu: Complex64) -> Self {
        Displacement::new(mu)
    }
}

impl fmt::Display for Displacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Reduces the imaginary part into (-π, π]. Idempotent. Angles within
/// 1e-12 of the ±π boundary are snapped to the canonical +π representative
/// so that rounding cannot push a value across the branch cut.
pub fn reduce_im(mu: Complex64) -> Complex64 {
    let r = Euclid::rem_euclid(&(PI - mu.im), &(2.0 * PI));
    let mut im = PI - r;
    if (im - PI).abs() < 1e-12 || (im + PI).abs() < 1e-12 {
        im = PI;
    }
    Complex64::new(mu.re, im)
}

/// The Möbius transformation sending `g.from` to 0 and `g.to` to ∞.
pub fn to_standard_position(g: &OrientedGeodesic) -> Result<Mobius> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match (g.from, g.to) {
        (Finite(p), Finite(q)) => Mobius::new(one, -p, one, -q),
        (Finite(p), Infinity) => Mobius::new(one, -p, zero, one),
        (Infinity, Finite(q)) => Mobius::new(zero, one, one, -q),
        (Infinity, Infinity) => Err(Error::SharedEndpoint),
    }
}

/// The isometry with oriented axis `axis` and displacement `mu`: translation
/// by Re μ along the axis combined with rotation by Im μ about it.
pub fn screw_along(axis: &OrientedGeodesic, mu: Complex64) -> Result<Mobius> {
    let a = to_standard_position(axis)?;
    let d = Mobius::diagonal((mu / 2.0).exp())?;
    Ok(a.inverse().compose(&d).compose(&a))
}

/// Relative residual of the orthogonality identity R(u,u',w,w') = -1.
pub fn perpendicularity_residual(g: &OrientedGeodesic, h: &OrientedGeodesic) -> Result<f64> {
    let r = cross_ratio_finite(g.from, g.to, h.from, h.to)?;
    Ok((r + Complex64::new(1.0, 0.0)).norm() / (1.0 + r.norm()))
}

/// True when the two geodesics intersect at a right angle in hyperbolic
/// space, within the crate-wide tolerance.
pub fn is_perpendicular(g: &OrientedGeodesic, h: &OrientedGeodesic) -> bool {
    matches!(perpendicularity_residual(g, h), Ok(r) if r <= PERP_TOL)
}

/// Width of the double cross (g1, g2; g3): exp(μ) = R(u, v, w', w) where
/// g1 = (u,u'), g2 = (v,v'), g3 = (w,w') and g3 is perpendicular to both.
///
/// Satisfies μ(g1,g2;g3) = -μ(g2,g1;g3), μ(g1,g2;-g3) = -μ(g1,g2;g3) and
/// μ(-g1,g2;g3) = μ(g1,g2;g3) + iπ.
pub fn double_cross_width(
    g1: &OrientedGeodesic,
    g2: &OrientedGeodesic,
    g3: &OrientedGeodesic,
) -> Result<Displacement> {
    for g in [g1, g2] {
        match perpendicularity_residual(g, g3) {
            Ok(r) if r <= PERP_TOL => {}
            _ => return Err(Error::NotPerpendicular),
        }
    }
    let r = cross_ratio_finite(g1.from, g2.from, g3.to, g3.from)?;
    if r.norm() == 0.0 {
        return Err(Error::DegenerateCrossRatio);
    }
    Ok(Displacement::new(r.ln()))
}

/// Displacement of a loxodromic isometry along its oriented axis:
/// exp(μ) is the multiplier of `m` at the axis' initial endpoint, so
/// cosh(μ/2) = ±trace/2 and reversing the orientation negates μ.
pub fn displacement(m: &Mobius, axis: &OrientedGeodesic) -> Result<Displacement> {
    if !m.is_loxodromic(1e-12) {
        return Err(Error::NotLoxodromic);
    }
    for p in [axis.from, axis.to] {
        if m.apply(p).chordal(&p) > FIXED_POINT_TOL {
            return Err(Error::WrongAxis);
        }
    }
    let lambda = m.multiplier_at(axis.from);
    Ok(Displacement::new(lambda.ln()))
}

/// Complex translation length: the displacement along the axis oriented
/// from the repelling to the attracting fixed point. Re > 0.
///
/// Computed as 2 acosh(trace/2) reduced mod 2πi, which is projectively
/// well defined (the two trace signs shift the value by 2πi) and avoids
/// the cancellation of the fixed-point route.
pub fn translation_length(m: &Mobius) -> Result<Displacement> {
    if !m.is_loxodromic(1e-12) {
        return Err(Error::NotLoxodromic);
    }
    let mu = 2.0 * (m.trace() / 2.0).acosh();
    Ok(Displacement::new(mu))
}

/// Oriented axis of a loxodromic isometry, from repelling to attracting.
pub fn oriented_axis(m: &Mobius) -> Result<OrientedGeodesic> {
    if !m.is_loxodromic(1e-12) {
        return Err(Error::NotLoxodromic);
    }
    let fp = m.fixed_points()?;
    let l1 = m.multiplier_at(fp.first);
    if l1.norm() > 1.0 {
        OrientedGeodesic::new(fp.first, fp.second)
    } else {
        OrientedGeodesic::new(fp.second, fp.first)
    }
}

/// Common perpendicular of two geodesics with four distinct endpoints,
/// oriented from `g1` toward `g2`. When the geodesics intersect (zero
/// distance), the orientation is chosen so the turning angle lies in (0, π].
pub fn common_perpendicular(
    g1: &OrientedGeodesic,
    g2: &OrientedGeodesic,
) -> Result<OrientedGeodesic> {
    let a = to_standard_position(g1)?;
    let v = a.apply(g2.from);
    let w = a.apply(g2.to);
    let (v, w) = match (v.finite(), w.finite()) {
        (Some(v), Some(w)) => (v, w),
        _ => return Err(Error::SharedEndpoint),
    };
    let prod = v * w;
    if prod.norm() == 0.0 {
        return Err(Error::SharedEndpoint);
    }
    let p = prod.sqrt();
    let ainv = a.inverse();
    let cand = OrientedGeodesic::new(ainv.apply(Finite(p)), ainv.apply(Finite(-p)))?;
    let mu = double_cross_width(g1, g2, &cand)?.get();
    let flip = if mu.re < -1e-12 {
        true
    } else if mu.re <= 1e-12 {
        // Intersecting case: normalize the turning angle into (0, π].
        mu.im < 0.0
    } else {
        false
    };
    Ok(if flip { cand.reverse() } else { cand })
}

/// Geodesic through two distinct points of upper half-space, oriented so
/// that traveling from `from` to `to` passes `p` before `q`.
pub fn geodesic_through(p: &PointH, q: &PointH) -> Result<OrientedGeodesic> {
    let dz = q.z - p.z;
    let sep = dz.norm();
    if sep <= 1e-14 * (1.0 + p.t.max(q.t)) {
        if (p.t - q.t).abs() == 0.0 {
            return Err(Error::SharedEndpoint);
        }
        let e = Finite(p.z);
        return Ok(if q.t > p.t {
            OrientedGeodesic { from: e, to: Infinity }
        } else {
            OrientedGeodesic { from: Infinity, to: e }
        });
    }
    let u = dz / sep;
    let x0 = (sep * sep + q.t * q.t - p.t * p.t) / (2.0 * sep);
    let r = (x0 * x0 + p.t * p.t).sqrt();
    // The 1-d coordinate increases from p (at 0) to q (at sep).
    let e_neg = p.z + u * (x0 - r);
    let e_pos = p.z + u * (x0 + r);
    OrientedGeodesic::new(Finite(e_neg), Finite(e_pos))
}

/// Intersection point of two geodesics that meet in hyperbolic space.
pub fn intersection_point(g1: &OrientedGeodesic, g2: &OrientedGeodesic) -> Result<PointH> {
    let a = to_standard_position(g1)?;
    let r = a.apply(g2.from).finite().ok_or(Error::NoIntersection)?;
    let s = a.apply(g2.to).finite().ok_or(Error::NoIntersection)?;
    let prod = r * s.conj();
    // g2 crosses the vertical axis iff r and s are antipodal through 0.
    if prod.re >= 0.0 || prod.im.abs() > 1e-7 * prod.norm() {
        return Err(Error::NoIntersection);
    }
    let t = (-prod.re).sqrt();
    Ok(a.inverse().apply_point(&PointH { z: Complex64::new(0.0, 0.0), t }))
}

/// Height coordinate of a point after mapping the geodesic to the vertical
/// axis; orders points along the oriented geodesic.
pub fn position_along(g: &OrientedGeodesic, p: &PointH) -> Result<f64> {
    let a = to_standard_position(g)?;
    let img = a.apply_point(p);
    Ok(img.t.ln())
}

/// Reorients `g` (as a set) so that traveling along it meets `first` before
/// `second`; both points must lie on the geodesic.
pub fn orient_through(
    g: &OrientedGeodesic,
    first: &PointH,
    second: &PointH,
) -> Result<OrientedGeodesic> {
    let h1 = position_along(g, first)?;
    let h2 = position_along(g, second)?;
    if h1 < h2 {
        Ok(*g)
    } else {
        Ok(g.reverse())
    }
}

/// Midpoint of the geodesic segment between two points.
pub fn midpoint(p: &PointH, q: &PointH) -> Result<PointH> {
    if (p.z - q.z).norm() == 0.0 && p.t == q.t {
        return Ok(*p);
    }
    let g = geodesic_through(p, q)?;
    let a = to_standard_position(&g)?;
    let ip = a.apply_point(p);
    let iq = a.apply_point(q);
    let t = (ip.t * iq.t).sqrt();
    Ok(a.inverse().apply_point(&PointH { z: Complex64::new(0.0, 0.0), t }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mobius::dist_point;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn geo(a: f64, b: f64) -> OrientedGeodesic {
        OrientedGeodesic::new(ExtComplex::new(a, 0.0), ExtComplex::new(b, 0.0)).unwrap()
    }

    #[test]
    fn reduce_im_strip() {
        assert_eq!(reduce_im(cx(1.0, PI)).im, PI);
        assert_eq!(reduce_im(cx(1.0, -PI)).im, PI);
        assert!((reduce_im(cx(0.0, 3.0 * PI)).im - PI).abs() < 1e-12);
        assert!((reduce_im(cx(2.0, 0.3)).im - 0.3).abs() < 1e-15);
        // Idempotent.
        let m = reduce_im(cx(-1.0, 7.9));
        assert_eq!(reduce_im(m), m);
    }

    #[test]
    fn displacement_of_diagonal() {
        let m = Mobius::diagonal(cx(1.5_f64.exp(), 0.0)).unwrap();
        let up = OrientedGeodesic::vertical();
        let mu = displacement(&m, &up).unwrap();
        assert!((mu.get() - cx(3.0, 0.0)).norm() < 1e-12);
        let down = up.reverse();
        let mu2 = displacement(&m, &down).unwrap();
        assert!((mu2.get() - cx(-3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn displacement_with_rotation() {
        let half = cx(0.5, PI / 4.0);
        let m = Mobius::diagonal(half.exp()).unwrap();
        let mu = displacement(&m, &OrientedGeodesic::vertical()).unwrap();
        assert!((mu.get() - cx(1.0, PI / 2.0)).norm() < 1e-12);
    }

    #[test]
    fn displacement_rejects_wrong_axis() {
        let m = Mobius::diagonal(cx(2.0, 0.0)).unwrap();
        let axis = geo(-1.0, 1.0);
        assert_eq!(displacement(&m, &axis), Err(Error::WrongAxis));
    }

    #[test]
    fn translation_length_sign_normalization() {
        let m = Mobius::diagonal(cx((-1.5_f64).exp(), 0.0)).unwrap();
        // Repelling fixed point is ∞ here, so tr.length = 3 along ∞ -> 0.
        let mu = translation_length(&m).unwrap();
        assert!((mu.get() - cx(3.0, 0.0)).norm() < 1e-12);
        let axis = oriented_axis(&m).unwrap();
        assert!(axis.from.is_infinite());
    }

    #[test]
    fn not_loxodromic_is_rejected() {
        let rot = Mobius::new(cx(0.6, 0.0), cx(0.8, 0.0), cx(-0.8, 0.0), cx(0.6, 0.0)).unwrap();
        assert_eq!(translation_length(&rot), Err(Error::NotLoxodromic));
        let par = Mobius::new(cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0)).unwrap();
        assert_eq!(translation_length(&par), Err(Error::NotLoxodromic));
    }

    #[test]
    fn double_cross_coincident() {
        let g = geo(-1.0, 1.0);
        let axis = OrientedGeodesic::vertical();
        let mu = double_cross_width(&g, &g, &axis).unwrap();
        assert!(mu.get().norm() < 1e-12);
    }

    #[test]
    fn double_cross_translation() {
        let s = 0.8_f64;
        let g1 = geo(-1.0, 1.0);
        let g2 = geo(-s.exp(), s.exp());
        let axis = OrientedGeodesic::vertical();
        let mu = double_cross_width(&g1, &g2, &axis).unwrap();
        assert!((mu.get() - cx(s, 0.0)).norm() < 1e-12);
        // Reversing g2 adds iπ.
        let mu2 = double_cross_width(&g1, &g2.reverse(), &axis).unwrap();
        assert!((mu2.get() - cx(s, PI)).norm() < 1e-12);
        // Reversing the cross negates.
        let mu3 = double_cross_width(&g1, &g2, &axis.reverse()).unwrap();
        assert!((mu3.get() + cx(s, 0.0)).norm() < 1e-12);
        // Antisymmetry in the first two arguments.
        let mu4 = double_cross_width(&g2, &g1, &axis).unwrap();
        assert!((mu4.get() + mu.get()).norm() < 1e-12);
    }

    #[test]
    fn double_cross_requires_perpendicularity() {
        let g1 = geo(-1.0, 1.0);
        let g2 = geo(0.5, 3.0);
        let axis = OrientedGeodesic::vertical();
        assert_eq!(double_cross_width(&g1, &g2, &axis), Err(Error::NotPerpendicular));
    }

    #[test]
    fn common_perpendicular_examples() {
        // (0,∞) and (1,2): perpendicular has endpoints ±√2.
        let g1 = OrientedGeodesic::vertical();
        let g2 = geo(1.0, 2.0);
        let p = common_perpendicular(&g1, &g2).unwrap();
        let r2 = 2.0_f64.sqrt();
        assert!(p.same_set(&geo(-r2, r2), 1e-12));
        assert!(perpendicularity_residual(&g1, &p).unwrap() < 1e-12);
        assert!(perpendicularity_residual(&g2, &p).unwrap() < 1e-12);
        // Orientation: from g1 toward g2 gives positive real width.
        let mu = double_cross_width(&g1, &g2, &p).unwrap();
        assert!(mu.re() > 0.0);
    }

    #[test]
    fn common_perpendicular_of_intersecting_pair() {
        // (0,∞) and (-e^s, e^s) meet at right angles; the perpendicular is
        // the axis through ±i e^s.
        let s = 0.7_f64;
        let g1 = OrientedGeodesic::vertical();
        let g2 = geo(-s.exp(), s.exp());
        let p = common_perpendicular(&g1, &g2).unwrap();
        let expected = OrientedGeodesic::new(
            ExtComplex::new(0.0, s.exp()),
            ExtComplex::new(0.0, -s.exp()),
        )
        .unwrap();
        assert!(p.same_set(&expected, 1e-12));
    }

    #[test]
    fn shared_endpoint_rejected() {
        let g1 = OrientedGeodesic::vertical();
        let g2 = OrientedGeodesic::new(ExtComplex::new(0.0, 0.0), ExtComplex::new(2.0, 0.0))
            .unwrap();
        assert_eq!(common_perpendicular(&g1, &g2), Err(Error::SharedEndpoint));
    }

    #[test]
    fn geodesic_through_points() {
        let p = PointH::real(0.0, 1.0).unwrap();
        let q = PointH::real(0.0, 2.0).unwrap();
        let g = geodesic_through(&p, &q).unwrap();
        assert_eq!(g.from, ExtComplex::new(0.0, 0.0));
        assert!(g.to.is_infinite());

        let r = PointH::real(1.0, 1.0).unwrap();
        let g2 = geodesic_through(&p, &r).unwrap();
        // Semicircle through (0,1) and (1,1): center 1/2, radius sqrt(5)/2.
        let lo = 0.5 - 1.25_f64.sqrt();
        let hi = 0.5 + 1.25_f64.sqrt();
        assert!(g2.same_set(&geo(lo, hi), 1e-12));
        // Orientation passes p before r.
        assert!(position_along(&g2, &p).unwrap() < position_along(&g2, &r).unwrap());
    }

    #[test]
    fn intersection_and_midpoint() {
        let g1 = OrientedGeodesic::vertical();
        let g2 = geo(-2.0, 2.0);
        let x = intersection_point(&g1, &g2).unwrap();
        assert!((x.z.norm()) < 1e-12 && (x.t - 2.0).abs() < 1e-12);

        let p = PointH::real(0.0, 1.0).unwrap();
        let q = PointH::real(0.0, 4.0).unwrap();
        let m = midpoint(&p, &q).unwrap();
        assert!((m.t - 2.0).abs() < 1e-12);
        assert!((dist_point(&p, &m) - dist_point(&m, &q)).abs() < 1e-12);

        let a = PointH::new(cx(0.3, -0.4), 0.9).unwrap();
        let b = PointH::new(cx(-1.0, 0.7), 2.1).unwrap();
        let mab = midpoint(&a, &b).unwrap();
        assert!((dist_point(&a, &mab) - dist_point(&mab, &b)).abs() < 1e-12);
        assert!(
            (dist_point(&a, &mab) + dist_point(&mab, &b) - dist_point(&a, &b)).abs() < 1e-12
        );
    }

    #[test]
    fn screw_moves_perpendiculars() {
        let s = 1.1_f64;
        let axis = OrientedGeodesic::vertical();
        let m = screw_along(&axis, cx(s, 0.0)).unwrap();
        let g = geo(-1.0, 1.0);
        let img_from = m.apply(g.from).finite().unwrap();
        assert!((img_from - cx(-s.exp(), 0.0)).norm() < 1e-12);
    }
}
