//! Right-angled hexagons and pentagons: exact solvers, nearly-symmetric
//! asymptotics, and concrete realizations by oriented geodesics.
//!
//! Widths follow the double-cross convention: σ_i is the width of
//! (S_{i-1}, S_{i+1}; S_i) for a standardly oriented polygon, indices
//! cyclic and 1-based. A hexagon satisfies
//!
//! - law of sines: sinh σ₁ / sinh σ₄ = sinh σ₃ / sinh σ₆ = sinh σ₅ / sinh σ₂,
//! - law of cosines: cosh σ_i = cosh σ_{i-2} cosh σ_{i+2}
//!   + sinh σ_{i-2} sinh σ_{i+2} cosh σ_{i+3};
//!
//! a pentagon satisfies cosh σ_n = -sinh σ_{n-2} sinh σ_{n+2}
//! = -coth σ_{n-1} coth σ_{n+1}.

use crate::boundary::ExtComplex;
use crate::geodesic::{
    self, double_cross_width, intersection_point, orient_through, reduce_im, screw_along,
    Displacement, OrientedGeodesic,
};
use crate::mobius::{acosh1p, PointH};
use crate::{Error, Result, WIDTH_TOL};
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

fn cpx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Branch selector for the `acosh` applied to a solved width: the principal
/// branch has nonnegative real part; the negated branch flips it. The
/// nearly-symmetric configurations use the principal branch, whose
/// representative carries the `+iπ` convention automatically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolveBranch {
    #[default]
    PositiveRe,
    NegativeRe,
}

fn acosh_branch(c: Complex64, branch: SolveBranch) -> Complex64 {
    let w = c.acosh();
    match branch {
        SolveBranch::PositiveRe => reduce_im(w),
        SolveBranch::NegativeRe => reduce_im(-w),
    }
}

/// The six widths σ₁..σ₆ of a right-angled hexagon, 1-based cyclic access.
#[derive(Debug, Clone, PartialEq)]
pub struct HexagonWidths {
    sigma: [Displacement; 6],
}

impl HexagonWidths {
    pub fn new(sigma: [Displacement; 6]) -> Self {
        HexagonWidths { sigma }
    }

    /// σ_i with 1-based cyclic index.
    pub fn sigma(&self, i: usize) -> Displacement {
        self.sigma[(i + 5) % 6]
    }

    pub fn as_array(&self) -> &[Displacement; 6] {
        &self.sigma
    }

    /// Max pairwise residual of the law of sines ratios.
    pub fn sines_residual(&self) -> f64 {
        let r1 = self.sigma(1).get().sinh() / self.sigma(4).get().sinh();
        let r2 = self.sigma(3).get().sinh() / self.sigma(6).get().sinh();
        let r3 = self.sigma(5).get().sinh() / self.sigma(2).get().sinh();
        let scale = 1.0 + r1.norm().max(r2.norm()).max(r3.norm());
        (r1 - r2).norm().max((r1 - r3).norm()) / scale
    }

    /// Max relative residual of the six laws of cosines.
    pub fn cosines_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 1..=6 {
            let lhs = self.sigma(i).get().cosh();
            let a = self.sigma(i + 4).get(); // σ_{i-2}
            let b = self.sigma(i + 2).get();
            let c = self.sigma(i + 3).get();
            let rhs = a.cosh() * b.cosh() + a.sinh() * b.sinh() * c.cosh();
            let res = (lhs - rhs).norm() / (1.0 + lhs.norm().max(rhs.norm()));
            worst = worst.max(res);
        }
        worst
    }
}

/// The five widths σ₁..σ₅ of a right-angled pentagon.
#[derive(Debug, Clone, PartialEq)]
pub struct PentagonWidths {
    sigma: [Displacement; 5],
}

impl PentagonWidths {
    pub fn new(sigma: [Displacement; 5]) -> Self {
        PentagonWidths { sigma }
    }

    pub fn sigma(&self, i: usize) -> Displacement {
        self.sigma[(i + 4) % 5]
    }

    /// Max relative residual of cosh σ_n = -sinh σ_{n-2} sinh σ_{n+2}.
    pub fn sinh_identity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for n in 1..=5 {
            let lhs = self.sigma(n).get().cosh();
            let rhs = -(self.sigma(n + 3).get().sinh() * self.sigma(n + 2).get().sinh());
            worst = worst.max((lhs - rhs).norm() / (1.0 + lhs.norm().max(rhs.norm())));
        }
        worst
    }

    /// Max relative residual of cosh σ_n = -coth σ_{n-1} coth σ_{n+1}.
    pub fn coth_identity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for n in 1..=5 {
            let lhs = self.sigma(n).get().cosh();
            let a = self.sigma(n + 4).get();
            let b = self.sigma(n + 1).get();
            let rhs = -(a.cosh() / a.sinh()) * (b.cosh() / b.sinh());
            worst = worst.max((lhs - rhs).norm() / (1.0 + lhs.norm().max(rhs.norm())));
        }
        worst
    }
}

fn check_side(s: Complex64) -> Result<()> {
    if s.sinh().norm() < 1e-12 {
        Err(Error::DegenerateSide)
    } else {
        Ok(())
    }
}

/// Completes a right-angled hexagon from its alternating widths σ₁, σ₃, σ₅.
/// The even widths come from the law of cosines; their branch signs are
/// coupled through the law of sines, with `branch` fixing the overall sign.
pub fn hexagon_complete(
    s1: Displacement,
    s3: Displacement,
    s5: Displacement,
    branch: SolveBranch,
) -> Result<HexagonWidths> {
    let (a, b, c) = (s1.get(), s3.get(), s5.get());
    for s in [a, b, c] {
        check_side(s)?;
    }
    let cosh4 = (a.cosh() - b.cosh() * c.cosh()) / (b.sinh() * c.sinh());
    let cosh6 = (b.cosh() - a.cosh() * c.cosh()) / (a.sinh() * c.sinh());
    let cosh2 = (c.cosh() - a.cosh() * b.cosh()) / (a.sinh() * b.sinh());
    let sig4 = acosh_branch(cosh4, branch);
    // Law of sines fixes the remaining branch signs relative to σ₄.
    let target = a.sinh() / sig4.sinh();
    let pick = |cosh_val: Complex64, over: Complex64| -> Complex64 {
        let w = acosh_branch(cosh_val, SolveBranch::PositiveRe);
        let alt = reduce_im(-w);
        let res = |cand: Complex64| (over.sinh() / cand.sinh() - target).norm();
        if res(w) <= res(alt) {
            w
        } else {
            alt
        }
    };
    let sig6 = pick(cosh6, b);
    let sig2 = pick(cosh2, c);
    Ok(HexagonWidths::new([
        s1,
        Displacement::new(sig2),
        s3,
        Displacement::new(sig4),
        s5,
        Displacement::new(sig6),
    ]))
}

/// Completes a right-angled hexagon from σ₁, σ₅ and σ₆ (two widths around a
/// corner plus the one between their far neighbors). σ₃ comes from the law
/// of cosines at i = 3; σ₂ and σ₄ from the law of sines, with branches fixed
/// by minimizing the law-of-cosines residual over the four sign choices.
pub fn hexagon_complete_from_156(
    s1: Displacement,
    s5: Displacement,
    s6: Displacement,
    branch: SolveBranch,
) -> Result<HexagonWidths> {
    let (a, e, f) = (s1.get(), s5.get(), s6.get());
    check_side(a)?;
    check_side(e)?;
    let cosh3 = a.cosh() * e.cosh() + a.sinh() * e.sinh() * f.cosh();
    let sig3 = acosh_branch(cosh3, branch);
    check_side(sig3)?;
    // sinh σ₂ = sinh σ₅ sinh σ₆ / sinh σ₃, sinh σ₄ = sinh σ₁ sinh σ₆ / sinh σ₃.
    let s2v = e.sinh() * f.sinh() / sig3.sinh();
    let s4v = a.sinh() * f.sinh() / sig3.sinh();
    let cand = |w: Complex64| [reduce_im(w.asinh()), reduce_im(cpx(0.0, PI) - w.asinh())];
    let mut best: Option<(f64, HexagonWidths)> = None;
    for c2 in cand(s2v) {
        for c4 in cand(s4v) {
            let hx = HexagonWidths::new([
                s1,
                Displacement::new(c2),
                Displacement::new(sig3),
                Displacement::new(c4),
                s5,
                s6,
            ]);
            let res = hx.cosines_residual();
            if best.as_ref().map_or(true, |(r, _)| res < *r) {
                best = Some((res, hx));
            }
        }
    }
    let (res, hx) = best.unwrap();
    if res > 1e-6 {
        return Err(Error::InconsistentWidths);
    }
    Ok(hx)
}

/// Completes a right-angled pentagon from two adjacent widths
/// σ_gap, σ_{gap+1} (1-based cyclic). The remaining widths come from the
/// pentagon identities; branch signs are fixed by requiring both identity
/// families to agree.
pub fn pentagon_complete(
    s_a: Displacement,
    s_b: Displacement,
    gap: usize,
    branch: SolveBranch,
) -> Result<PentagonWidths> {
    if !(1..=5).contains(&gap) {
        return Err(Error::OutOfDomain);
    }
    // Work in a frame where the known pair sits at positions (2, 3).
    let (p2, p3) = (s_a.get(), s_b.get());
    check_side(p2)?;
    check_side(p3)?;
    // cosh σ₅ = -sinh σ₂ sinh σ₃.
    let p5 = acosh_branch(-(p2.sinh() * p3.sinh()), branch);
    check_side(p5)?;
    let coth = |z: Complex64| z.cosh() / z.sinh();
    let pick = |cosh_val: Complex64, want_cosh: Complex64| -> Complex64 {
        let w = acosh_branch(cosh_val, SolveBranch::PositiveRe);
        let alt = reduce_im(-w);
        let res = |cand: Complex64| (want_cosh + cand.sinh() * p5.sinh()).norm();
        if res(w) <= res(alt) {
            w
        } else {
            alt
        }
    };
    // cosh σ₁ = -coth σ₂ coth σ₅, sign fixed by cosh σ₃ = -sinh σ₁ sinh σ₅;
    // cosh σ₄ = -coth σ₃ coth σ₅, sign fixed by cosh σ₂ = -sinh σ₄ sinh σ₅.
    let p1 = pick(-(coth(p2) * coth(p5)), p3.cosh());
    let p4 = pick(-(coth(p3) * coth(p5)), p2.cosh());
    let canonical = [p1, p2, p3, p4, p5];
    // Rotate back so the given pair lands at positions (gap, gap+1).
    let mut sigma = [Displacement::new(cpx(0.0, 0.0)); 5];
    for (k, value) in canonical.iter().enumerate() {
        let pos = (k + gap + 3) % 5;
        sigma[pos] = Displacement::new(*value);
    }
    Ok(PentagonWidths::new(sigma))
}

/// A nearly-symmetric hexagon specification: alternating widths
/// L/2 + ρ_j/2 + iπ for j = 1, 3, 5, with |ρ_j| ≤ eps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearlySymmetricSpec {
    pub l: f64,
    pub rho: [Complex64; 3],
    pub eps: f64,
}

impl NearlySymmetricSpec {
    pub fn new(l: f64, rho: [Complex64; 3], eps: f64) -> Result<Self> {
        if !(eps < 0.5) || !(l >= 4.0 * eps) || !l.is_finite() || l <= 0.0 {
            return Err(Error::InvalidSpec);
        }
        if rho.iter().any(|r| r.norm() > eps * (1.0 + 1e-12)) {
            return Err(Error::InvalidSpec);
        }
        Ok(NearlySymmetricSpec { l, rho, eps })
    }

    pub fn symmetric(l: f64) -> Result<Self> {
        NearlySymmetricSpec::new(l, [cpx(0.0, 0.0); 3], 0.0)
    }

    /// ρ_j for j in {1, 3, 5}.
    pub fn rho_odd(&self, j: usize) -> Complex64 {
        match j {
            1 => self.rho[0],
            3 => self.rho[1],
            5 => self.rho[2],
            _ => cpx(0.0, 0.0),
        }
    }

    /// The alternating input widths L/2 + ρ_j/2 + iπ.
    pub fn odd_widths(&self) -> [Displacement; 3] {
        let w = |r: Complex64| Displacement::new(cpx(self.l / 2.0, PI) + r / 2.0);
        [w(self.rho[0]), w(self.rho[1]), w(self.rho[2])]
    }

    /// Exact solve of the full width set.
    pub fn solve(&self) -> Result<HexagonWidths> {
        let [s1, s3, s5] = self.odd_widths();
        hexagon_complete(s1, s3, s5, SolveBranch::PositiveRe)
    }
}

/// Leading-order closed forms attached to a nearly-symmetric hexagon: the
/// short widths, the altitude-pentagon widths, the fifth side after a cuff
/// extension, M(L), and the midpoint-distance cosh. All O(·) corrections
/// are dropped; error budgeting lives in the test suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateBundle {
    pub sigma2: Complex64,
    pub sigma4: Complex64,
    pub sigma6: Complex64,
    pub k1: Complex64,
    pub k4: Complex64,
    pub k5: Complex64,
    pub fifth_side: Complex64,
    pub m_estimate: f64,
    pub midpoint_cosh: f64,
}

/// Closed-form leading-order estimates for a nearly-symmetric hexagon:
/// σ_k = 2 exp(-L/4 + ρ_{k+3}/4 - ρ_{k+1}/4 - ρ_{k-1}/4) + iπ for k even,
/// K₁ = L/4 + (ρ₅ - ρ₃ - ρ₁)/4 + iπ,
/// K₄ = exp(-L/4 - ρ₅/4 - ρ₃/4 + ρ₁/4) + iπ,
/// K₅ = L/4 + log 2 + (ρ₅ + ρ₃ - ρ₁)/4 + iπ,
/// fifth side L/2 + ρ₁/2 + ρ₃/2 + iπ, M(L) = 2 exp(-L/4), midpoint cosh 3/2.
pub fn nearly_symmetric_estimates(spec: &NearlySymmetricSpec) -> EstimateBundle {
    let l = spec.l;
    let (r1, r3, r5) = (spec.rho_odd(1), spec.rho_odd(3), spec.rho_odd(5));
    let ipi = cpx(0.0, PI);
    let short = |rp3: Complex64, rp1: Complex64, rm1: Complex64| {
        2.0 * ((rp3 - rp1 - rm1) / 4.0 + cpx(-l / 4.0, 0.0)).exp() + ipi
    };
    EstimateBundle {
        sigma2: short(r5, r3, r1),
        sigma4: short(r1, r5, r3),
        sigma6: short(r3, r1, r5),
        k1: cpx(l / 4.0, PI) + (r5 - r3 - r1) / 4.0,
        k4: ((r1 - r5 - r3) / 4.0 + cpx(-l / 4.0, 0.0)).exp() + ipi,
        k5: cpx(l / 4.0 + 2.0_f64.ln(), PI) + (r5 + r3 - r1) / 4.0,
        fifth_side: cpx(l / 2.0, PI) + (r1 + r3) / 2.0,
        m_estimate: 2.0 * (-l / 4.0).exp(),
        midpoint_cosh: 1.5,
    }
}

/// Real part of the short width of the symmetric hexagon with long widths
/// L/2 + iπ, by the exact solve: M(L) = acosh(1 + 1/(cosh(L/2) - 1)).
/// Stable for large L; equals 2 exp(-L/4) + O(exp(-3L/4)).
pub fn m_exact(l: f64) -> Result<f64> {
    if !(l >= 2.0) {
        return Err(Error::OutOfDomain);
    }
    let u = 1.0 / ((l / 2.0).cosh() - 1.0);
    Ok(acosh1p(u))
}

/// cosh of the distance between the midpoints of two long sides of the
/// symmetric hexagon: 1 + coth²(L/4)/2 exactly, which tends to 3/2.
pub fn midpoint_distance_exact(l: f64) -> Result<f64> {
    if !(l >= 2.0) {
        return Err(Error::OutOfDomain);
    }
    let coth = 1.0 / (l / 4.0).tanh();
    Ok(1.0 + 0.5 * coth * coth)
}

/// A right-angled hexagon realized by six concrete oriented geodesics with
/// their vertices.
#[derive(Debug, Clone)]
pub struct RealizedHexagon {
    sides: [OrientedGeodesic; 6],
    vertices: [PointH; 6],
}

impl RealizedHexagon {
    /// Side S_i, 1-based cyclic.
    pub fn side(&self, i: usize) -> &OrientedGeodesic {
        &self.sides[(i + 5) % 6]
    }

    /// Vertex v_i = S_i ∩ S_{i+1}, 1-based cyclic.
    pub fn vertex(&self, i: usize) -> &PointH {
        &self.vertices[(i + 5) % 6]
    }

    /// Re-measures all six double-cross widths.
    pub fn measure(&self) -> Result<HexagonWidths> {
        let mut out = [Displacement::new(cpx(0.0, 0.0)); 6];
        for (i, slot) in out.iter_mut().enumerate() {
            let i = i + 1;
            *slot = double_cross_width(self.side(i + 5), self.side(i + 1), self.side(i))?;
        }
        Ok(HexagonWidths::new(out))
    }

    /// Midpoint of side i (between v_{i-1} and v_i).
    pub fn side_midpoint(&self, i: usize) -> Result<PointH> {
        geodesic::midpoint(self.vertex(i + 5), self.vertex(i))
    }

    /// The altitude perpendicular to sides i and i+3, oriented from side i.
    pub fn altitude(&self, i: usize) -> Result<OrientedGeodesic> {
        geodesic::common_perpendicular(self.side(i), self.side(i + 3))
    }

    /// Assembles a hexagon from six side geodesics (as sets): orients them
    /// standardly via the vertices, then verifies the measured widths
    /// against `expect` when given.
    pub fn assemble(
        raw_sides: [OrientedGeodesic; 6],
        expect: Option<&HexagonWidths>,
    ) -> Result<RealizedHexagon> {
        let mut vertices = [PointH { z: cpx(0.0, 0.0), t: 1.0 }; 6];
        for i in 0..6 {
            vertices[i] = intersection_point(&raw_sides[i], &raw_sides[(i + 1) % 6])
                .map_err(|_| Error::InconsistentWidths)?;
        }
        let mut sides = raw_sides;
        for i in 0..6 {
            let prev = vertices[(i + 5) % 6];
            let next = vertices[i];
            sides[i] = orient_through(&sides[i], &prev, &next)?;
        }
        let hex = RealizedHexagon { sides, vertices };
        if let Some(w) = expect {
            let measured = hex.measure()?;
            for i in 1..=6 {
                if measured.sigma(i).dist(&w.sigma(i)) > WIDTH_TOL * (1.0 + w.sigma(i).re().abs())
                {
                    return Err(Error::InconsistentWidths);
                }
            }
        }
        Ok(hex)
    }
}

/// Realizes a width set by concrete geodesics. Side 1 is anchored at the
/// vertical axis (0, ∞) with v₁ = (0, 1); later sides are grown by screwing
/// the previous side along the current one, and the remaining normalization
/// (chirality of side 2) is fixed by matching the measured widths.
pub fn hexagon_realize(w: &HexagonWidths) -> Result<RealizedHexagon> {
    let plus = ExtComplex::new(1.0, 0.0);
    let minus = ExtComplex::new(-1.0, 0.0);
    let mut last_err = Error::InconsistentWidths;
    for s2 in [
        OrientedGeodesic::new(plus, minus)?,
        OrientedGeodesic::new(minus, plus)?,
    ] {
        match realize_with(w, s2) {
            Ok(h) => return Ok(h),
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

fn realize_with(w: &HexagonWidths, s2: OrientedGeodesic) -> Result<RealizedHexagon> {
    let mut sides: Vec<OrientedGeodesic> = Vec::with_capacity(6);
    sides.push(OrientedGeodesic::vertical());
    sides.push(s2);
    // S_{i+1} is the image of S_{i-1} under the screw along S_i by σ_i.
    // The new side's orientation is fixed by re-measuring: a flipped γ₂
    // shifts the width by iπ, which the inputs distinguish.
    for i in 2..=5usize {
        let screw = screw_along(&sides[i - 1], w.sigma(i).get())?;
        let prev = sides[i - 2];
        let tol = WIDTH_TOL * (1.0 + w.sigma(i).re().abs());
        let mut next = OrientedGeodesic::new(screw.apply(prev.from), screw.apply(prev.to))?;
        let measured = double_cross_width(&prev, &next, &sides[i - 1])?;
        if measured.dist(&w.sigma(i)) > tol {
            next = next.reverse();
            let measured = double_cross_width(&prev, &next, &sides[i - 1])?;
            if measured.dist(&w.sigma(i)) > tol {
                return Err(Error::InconsistentWidths);
            }
        }
        sides.push(next);
    }
    let raw: [OrientedGeodesic; 6] = [sides[0], sides[1], sides[2], sides[3], sides[4], sides[5]];
    RealizedHexagon::assemble(raw, Some(w))
}
