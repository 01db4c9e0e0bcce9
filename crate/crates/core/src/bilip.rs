//! Local bi-Lipschitz building blocks with numeric certificates: the
//! trirectangle coordinate map and the annulus shear.
//!
//! Trirectangles live in rectangular (Fermi) coordinates with metric
//! ds² = cosh²(y) dx² + dy²: (x, 0) is at distance |x| from the origin
//! along the base geodesic and (x, y) at distance |y| above it. The model
//! map F(x,y) = (ax, by) has metric-normalized differential
//! K = diag(a cosh(by)/cosh(y), b). Beyond the equidistant curve y = h the
//! trirectangle ends in a curvilinear triangle Δ where F is extended by
//! similarities along the fibers perpendicular to the equidistant curve;
//! that region is certified by sampling only.
//!
//! The annulus shear acts on the upper half-plane by
//! F(re^{iθ}) = f(θ) r e^{iθ} with f ≡ e^t below the collar angle α,
//! f ≡ 1 above π - α, and the affine ramp in between; its K-matrix is
//! unipotent with off-diagonal f'(θ)/f(θ), maximized by (e^t-1)/(π-2α).

use crate::{Error, Result};
use alloc::vec::Vec;

/// A point in rectangular coordinates (x along the base geodesic, y the
/// signed perpendicular distance).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectCoordPoint {
    pub x: f64,
    pub y: f64,
}

impl RectCoordPoint {
    pub fn new(x: f64, y: f64) -> Self {
        RectCoordPoint { x, y }
    }
}

/// The coordinate scaling map F(x, y) = (a x, b y). Fixes the origin; its
/// restriction to the base y = 0 is a similarity with ratio `a_scale`, and
/// vertical segments scale by exactly `b_scale`.
pub fn trirect_map(a_scale: f64, b_scale: f64, p: RectCoordPoint) -> RectCoordPoint {
    RectCoordPoint::new(a_scale * p.x, b_scale * p.y)
}

/// Metric-normalized differential of `trirect_map` at `p`:
/// diag(a cosh(b y)/cosh(y), b).
pub fn trirect_k_matrix(p: RectCoordPoint, a_scale: f64, b_scale: f64) -> [[f64; 2]; 2] {
    let k11 = a_scale * (b_scale * p.y).cosh() / p.y.cosh();
    [[k11, 0.0], [0.0, b_scale]]
}

/// Bi-Lipschitz constant certified by a 2x2 K-matrix sample: the larger of
/// the largest singular value and the inverse of the smallest.
pub fn bilip_constant_of(k: [[f64; 2]; 2]) -> f64 {
    let f2 = k[0][0] * k[0][0] + k[0][1] * k[0][1] + k[1][0] * k[1][0] + k[1][1] * k[1][1];
    let det = (k[0][0] * k[1][1] - k[0][1] * k[1][0]).abs();
    let disc = (f2 * f2 - 4.0 * det * det).max(0.0).sqrt();
    let smax = (0.5 * (f2 + disc)).sqrt();
    let smin = (0.5 * (f2 - disc)).max(0.0).sqrt();
    if smin <= 0.0 {
        return f64::INFINITY;
    }
    smax.max(1.0 / smin)
}

fn inf_norm_dev(k: [[f64; 2]; 2]) -> f64 {
    let d00 = (k[0][0] - 1.0).abs();
    let d11 = (k[1][1] - 1.0).abs();
    let off = k[0][1].abs().max(k[1][0].abs());
    d00.max(d11).max(off)
}

/// Geometry of one trirectangle: base length m (half a short seam), height
/// h (quarter cuff), in rectangular coordinates with the right angle at the
/// origin. The top side is the geodesic through (0, h) perpendicular to
/// the y-axis: tanh y_top(x) = tanh(h) cosh(x); it meets the vertical side
/// x = m as long as cosh(m) tanh(h) < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trirectangle {
    pub base: f64,
    pub height: f64,
}

impl Trirectangle {
    pub fn new(base: f64, height: f64) -> Result<Self> {
        if !(base > 0.0) || !(height > 0.0) {
            return Err(Error::OutOfDomain);
        }
        if base.cosh() * height.tanh() >= 1.0 {
            return Err(Error::OutOfDomain);
        }
        Ok(Trirectangle { base, height })
    }

    /// Height of the top (fourth) side above x.
    pub fn y_top(&self, x: f64) -> f64 {
        (self.height.tanh() * x.cosh()).atanh()
    }

    /// d/dx of `y_top`.
    pub fn y_top_prime(&self, x: f64) -> f64 {
        let t = self.height.tanh() * x.sinh();
        let y = self.y_top(x);
        t * y.cosh() * y.cosh()
    }
}

/// Certification report for the trirectangle map between `from` and `to`:
/// closed-form K-deviation on the lower region (y ≤ h, where K depends on
/// y only) and sampled K-deviation on the curvilinear triangle Δ. The Δ
/// figure is empirical: the extension map there has no closed-form K.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrirectCertificate {
    pub a_scale: f64,
    pub b_scale: f64,
    pub lower_max_dev: f64,
    pub delta_max_dev: f64,
    pub certified_bilip: f64,
    pub grid: usize,
}

/// Certifies the map from trirectangle `from` onto `to`: the model
/// F(x,y) = (ax, by) on y ≤ h with a = to.base/from.base and
/// b = to.height/from.height, extended over Δ by the vertical-fiber
/// similarity map. `grid` is the sampling resolution per axis.
pub fn trirect_certificate(
    from: &Trirectangle,
    to: &Trirectangle,
    grid: usize,
) -> Result<TrirectCertificate> {
    if grid < 2 {
        return Err(Error::OutOfDomain);
    }
    let a = to.base / from.base;
    let b = to.height / from.height;
    // Lower region: K = diag(a cosh(by)/cosh y, b) depends only on y, but
    // sweep the full grid as specified for the certificate.
    let mut lower_max = 0.0_f64;
    let mut bilip = 1.0_f64;
    for iy in 0..grid {
        let y = from.height * (iy as f64) / ((grid - 1) as f64);
        let k = trirect_k_matrix(RectCoordPoint::new(0.0, y), a, b);
        lower_max = lower_max.max(inf_norm_dev(k));
        bilip = bilip.max(bilip_constant_of(k));
    }
    // Δ region: F(x, y) = (ax, h₀ + (y - h₁) s(x)) with
    // s(x) = (ytop₀(ax) - h₀)/(ytop₁(x) - h₁); fibers x = const map to
    // fibers ax = const by similarities. K = [[a cosh(Y)/cosh(y), 0],
    // [G_x / cosh(y), s(x)]] with G_x = (y - h₁) s'(x).
    let mut delta_max = 0.0_f64;
    let (h0, h1) = (to.height, from.height);
    let s_of = |x: f64| -> (f64, f64) {
        let t1 = from.y_top(x) - h1;
        let t0 = to.y_top(a * x) - h0;
        let t1p = from.y_top_prime(x);
        let t0p = to.y_top_prime(a * x);
        let s = t0 / t1;
        let sp = (a * t0p * t1 - t0 * t1p) / (t1 * t1);
        (s, sp)
    };
    for ix in 1..grid {
        let x = from.base * (ix as f64) / ((grid - 1) as f64);
        let (s, sp) = s_of(x);
        let ytop = from.y_top(x);
        for iy in 0..grid {
            let y = h1 + (ytop - h1) * (iy as f64) / ((grid - 1) as f64);
            let cap_y = h0 + (y - h1) * s;
            let gx = (y - h1) * sp;
            let k = [[a * cap_y.cosh() / y.cosh(), 0.0], [gx / y.cosh(), s]];
            delta_max = delta_max.max(inf_norm_dev(k));
            bilip = bilip.max(bilip_constant_of(k));
        }
    }
    Ok(TrirectCertificate {
        a_scale: a,
        b_scale: b,
        lower_max_dev: lower_max,
        delta_max_dev: delta_max,
        certified_bilip: bilip,
        grid,
    })
}

/// Shear data on the collar of a closed geodesic of length `l`: shear
/// distance t ≥ 0, collar half-width w > 0, and the derived collar angle
/// with sin(alpha) cosh(w) = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusShearSpec {
    pub l: f64,
    pub t: f64,
    pub w: f64,
    pub alpha: f64,
}

impl AnnulusShearSpec {
    pub fn new(l: f64, t: f64, w: f64) -> Result<Self> {
        if !(l > 0.0) || !(t >= 0.0) || !(w > 0.0) {
            return Err(Error::OutOfDomain);
        }
        let alpha = (1.0 / w.cosh()).asin();
        Ok(AnnulusShearSpec { l, t, w, alpha })
    }
}

/// The radial scaling profile f(θ): e^t on (0, α], the affine ramp
/// (θ-α)/(π-2α) + (1 - (θ-α)/(π-2α)) e^t on (α, π-α), and 1 on [π-α, π).
pub fn annulus_f(theta: f64, spec: &AnnulusShearSpec) -> Result<f64> {
    use core::f64::consts::PI;
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::OutOfDomain);
    }
    let a = spec.alpha;
    Ok(if theta <= a {
        spec.t.exp()
    } else if theta < PI - a {
        let s = (theta - a) / (PI - 2.0 * a);
        s + (1.0 - s) * spec.t.exp()
    } else {
        1.0
    })
}

/// Maximum of |f'(θ)/f(θ)| over the profile: (e^t - 1)/(π - 2α), attained
/// on the ramp where f ≥ 1. This is the off-diagonal entry of the
/// unipotent K-matrix and bounds the bi-Lipschitz defect.
pub fn annulus_k_deviation(spec: &AnnulusShearSpec) -> Result<f64> {
    use core::f64::consts::PI;
    let denom = PI - 2.0 * spec.alpha;
    if denom <= 0.0 {
        return Err(Error::AlphaTooLarge);
    }
    Ok((spec.t.exp() - 1.0) / denom)
}

/// Certificate for the annulus shear: the analytic K-deviation and the
/// certified bi-Lipschitz constant of the unipotent [[1, q], [0, 1]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusCertificate {
    pub max_dev: f64,
    pub certified_bilip: f64,
}

pub fn annulus_certificate(spec: &AnnulusShearSpec) -> Result<AnnulusCertificate> {
    let q = annulus_k_deviation(spec)?;
    let smax = 0.5 * q + (1.0 + 0.25 * q * q).sqrt();
    Ok(AnnulusCertificate { max_dev: q, certified_bilip: smax })
}

/// Samples the certified bi-Lipschitz constant of the trirectangle model
/// map over a (τ, ρ) shrink sequence; used to exhibit monotone improvement
/// toward 1.
pub fn trirect_shrink_sweep(
    l: f64,
    taus: &[f64],
    rhos: &[f64],
    grid: usize,
) -> Result<Vec<f64>> {
    let m = crate::polygons::m_exact(l)?;
    let base0 = m / 2.0;
    let h0 = l / 4.0;
    let to = Trirectangle::new(base0, h0)?;
    let mut out = Vec::with_capacity(taus.len().min(rhos.len()));
    for (&tau, &rho) in taus.iter().zip(rhos.iter()) {
        let from = Trirectangle::new((1.0 + tau) * (-l / 4.0).exp(), h0 + rho)?;
        let cert = trirect_certificate(&from, &to, grid)?;
        out.push(cert.certified_bilip);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn identity_map_is_identity() {
        let p = RectCoordPoint::new(0.37, -1.2);
        assert_eq!(trirect_map(1.0, 1.0, p), p);
        let k = trirect_k_matrix(p, 1.0, 1.0);
        assert!(inf_norm_dev(k) < 1e-15);
    }

    #[test]
    fn base_scaling() {
        let p = RectCoordPoint::new(0.1, 0.0);
        let q = trirect_map(2.0, 1.0, p);
        assert!((q.x - 0.2).abs() < 1e-15 && q.y == 0.0);
        // y = 0: K = diag(a, b).
        let k = trirect_k_matrix(p, 2.0, 1.0);
        assert!((k[0][0] - 2.0).abs() < 1e-15 && (k[1][1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn vertical_segments_scale_by_b() {
        // (x, y) is at distance |y| from (x, 0): the y-axis direction is
        // unit, so vertical lengths scale exactly by b.
        let b = 0.85;
        let p0 = trirect_map(1.3, b, RectCoordPoint::new(0.4, 0.2));
        let p1 = trirect_map(1.3, b, RectCoordPoint::new(0.4, 0.9));
        assert!(((p1.y - p0.y) - b * 0.7).abs() < 1e-15);
    }

    #[test]
    fn k_deviation_small_for_small_perturbation() {
        // (τ, ρ, L) = (0.01, 0.01, 30): max ||K - I||_∞ < 0.05 over y ∈ [0, L/4].
        let l = 30.0_f64;
        let a = 1.0 / 1.01;
        let b = 1.0 / (1.0 + 4.0 * 0.01 / l);
        let mut max_dev = 0.0_f64;
        let n = 200;
        for iy in 0..=n {
            let y = (l / 4.0) * (iy as f64) / (n as f64);
            let k = trirect_k_matrix(RectCoordPoint::new(0.0, y), a, b);
            max_dev = max_dev.max(inf_norm_dev(k));
        }
        assert!(max_dev < 0.05, "max dev = {}", max_dev);
    }

    #[test]
    fn trirect_certificate_near_identity() {
        let l = 30.0_f64;
        let m = crate::polygons::m_exact(l).unwrap();
        let to = Trirectangle::new(m / 2.0, l / 4.0).unwrap();
        let from =
            Trirectangle::new(1.01 * (-l / 4.0).exp(), l / 4.0 + 0.01).unwrap();
        let cert = trirect_certificate(&from, &to, 200).unwrap();
        assert!(cert.lower_max_dev < 0.05, "lower {}", cert.lower_max_dev);
        assert!(cert.delta_max_dev < 0.1, "delta {}", cert.delta_max_dev);
        assert!(cert.certified_bilip < 1.1);
    }

    #[test]
    fn shrink_sweep_tends_to_isometry() {
        let l = 30.0;
        let taus = [0.04, 0.02, 0.01, 0.005];
        let rhos = [0.04, 0.02, 0.01, 0.005];
        let consts = trirect_shrink_sweep(l, &taus, &rhos, 60).unwrap();
        for w in consts.windows(2) {
            assert!(w[1] <= w[0] + 1e-12);
        }
        assert!(consts.last().unwrap() - 1.0 < 0.03);
    }

    #[test]
    fn annulus_profile_plateaus() {
        let spec = AnnulusShearSpec::new(8.0, 0.3, 0.5).unwrap();
        assert!((spec.alpha.sin() * spec.w.cosh() - 1.0).abs() < 1e-12);
        let t = spec.t;
        assert!((annulus_f(spec.alpha, &spec).unwrap() - t.exp()).abs() < 1e-15);
        assert!((annulus_f(PI - spec.alpha, &spec).unwrap() - 1.0).abs() < 1e-15);
        // Midpoint value of the affine ramp.
        let mid = annulus_f(PI / 2.0, &spec).unwrap();
        assert!((mid - 0.5 * (1.0 + t.exp())).abs() < 1e-12);
        // Continuity across the ramp ends.
        let e = 1e-9;
        assert!((annulus_f(spec.alpha + e, &spec).unwrap() - t.exp()).abs() < 1e-6);
        assert!((annulus_f(PI - spec.alpha - e, &spec).unwrap() - 1.0).abs() < 1e-6);
        // Monotone between plateaus, f > 0 everywhere sampled.
        let mut prev = annulus_f(spec.alpha + 1e-6, &spec).unwrap();
        for i in 1..100 {
            let th = spec.alpha + (PI - 2.0 * spec.alpha) * (i as f64) / 100.0;
            let v = annulus_f(th, &spec).unwrap();
            assert!(v > 0.0 && v <= prev + 1e-12);
            prev = v;
        }
        // t = 0 is the identity profile.
        let flat = AnnulusShearSpec::new(8.0, 0.0, 0.5).unwrap();
        for i in 1..20 {
            let th = PI * (i as f64) / 20.0;
            assert_eq!(annulus_f(th, &flat).unwrap(), 1.0);
        }
        assert_eq!(annulus_k_deviation(&flat).unwrap(), 0.0);
    }

    #[test]
    fn annulus_domain_checked() {
        let spec = AnnulusShearSpec::new(8.0, 0.1, 0.5).unwrap();
        assert_eq!(annulus_f(0.0, &spec), Err(Error::OutOfDomain));
        assert_eq!(annulus_f(PI, &spec), Err(Error::OutOfDomain));
    }

    #[test]
    fn deviation_value_and_linearity() {
        // w = (1/2)e^{-L/4}, L = 30, t = 0.1 e^{-7.5}: deviation ≈ 0.1
        // within 10% (π - 2α ≈ 2 tanh w ≈ e^{-L/4} for small w... the
        // collar is narrow so the ramp is nearly the whole interval).
        let l = 30.0_f64;
        let w = 0.5 * (-l / 4.0).exp();
        let t = 0.1 * (-l / 4.0).exp();
        let spec = AnnulusShearSpec::new(l, t, w).unwrap();
        let dev = annulus_k_deviation(&spec).unwrap();
        assert!((dev - 0.1).abs() < 0.01, "dev = {}", dev);
        // Linear scaling in t at fixed spec.
        let d1 = annulus_k_deviation(&AnnulusShearSpec::new(l, t, w).unwrap()).unwrap();
        let d2 = annulus_k_deviation(&AnnulusShearSpec::new(l, 2.0 * t, w).unwrap()).unwrap();
        let d4 = annulus_k_deviation(&AnnulusShearSpec::new(l, 4.0 * t, w).unwrap()).unwrap();
        assert!((d2 / d1 - 2.0).abs() < 0.01);
        assert!((d4 / d1 - 4.0).abs() < 0.01);
    }

    #[test]
    fn equidistant_relation_via_distance() {
        // distance from (cos α, sin α) to (0, 1) equals w exactly.
        use crate::mobius::{dist_point, PointH};
        let w = 0.37_f64;
        let alpha = (1.0 / w.cosh()).asin();
        let p = PointH::real(alpha.cos(), alpha.sin()).unwrap();
        let q = PointH::real(0.0, 1.0).unwrap();
        assert!((dist_point(&p, &q) - w).abs() < 1e-12);
    }
}
