//! The parametrized isometry family g(L, T, ν, δ, θ), its inverse
//! factorization, translation-length estimates, and the right-angled
//! hexagon built on its axis.
//!
//! The matrix is the five-factor product
//! diag(e^{L/2}, e^{-L/2}) · N_T · C_ν · R_δ · C_{iθ} with
//! N_t = [[1,0],[t,1]], C_ν = diag(e^ν, e^{-ν}) and R_δ the rotation
//! matrix, which multiplies out to
//!
//! ```text
//! [ e^{L/2+ν+iθ} cos δ                            e^{L/2+ν-iθ} sin δ                          ]
//! [ e^{-L/2}(T e^{ν+iθ} cos δ - e^{-ν+iθ} sin δ)  e^{-L/2}(T e^{ν-iθ} sin δ + e^{-ν-iθ} cos δ) ]
//! ```

use crate::boundary::{ExtComplex, Finite};
use crate::geodesic::{double_cross_width, reduce_im, screw_along, OrientedGeodesic};
use crate::mobius::Mobius;
use crate::polygons::RealizedHexagon;
use crate::{Error, Result};
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use num_complex::Complex64;

fn cpx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Parameters (L, T, ν, δ, θ) of the isometry family. L is the large scale;
/// T shifts along the horocycle; ν, δ, θ are small corrections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GParams {
    pub l: f64,
    pub t: Complex64,
    pub nu: Complex64,
    pub delta: f64,
    pub theta: f64,
}

impl GParams {
    pub fn new(l: f64, t: Complex64, nu: Complex64, delta: f64, theta: f64) -> Self {
        GParams { l, t, nu, delta, theta }
    }

    pub fn pure(l: f64) -> Self {
        GParams::new(l, cpx(0.0, 0.0), cpx(0.0, 0.0), 0.0, 0.0)
    }

    /// Flags (does not reject) violations of the estimate-mode bounds
    /// |ν|, |δ|, |θ|, |Im T| ≤ eps and |Re T| ≤ t_hat.
    pub fn in_bounds(&self, eps: f64, t_hat: f64) -> bool {
        self.nu.norm() <= eps
            && self.delta.abs() <= eps
            && self.theta.abs() <= eps
            && self.t.im.abs() <= eps
            && self.t.re.abs() <= t_hat
    }
}

/// The five factor matrices of the product, in application order.
pub fn g_factors(p: &GParams) -> Result<[Mobius; 5]> {
    let one = cpx(1.0, 0.0);
    let zero = cpx(0.0, 0.0);
    Ok([
        Mobius::diagonal(cpx((p.l / 2.0).exp(), 0.0))?,
        Mobius::new(one, zero, p.t, one)?,
        Mobius::diagonal(p.nu.exp())?,
        Mobius::new(
            cpx(p.delta.cos(), 0.0),
            cpx(p.delta.sin(), 0.0),
            cpx(-p.delta.sin(), 0.0),
            cpx(p.delta.cos(), 0.0),
        )?,
        Mobius::diagonal(cpx(0.0, p.theta).exp())?,
    ])
}

/// Closed-form product of the five factors.
pub fn g_matrix(p: &GParams) -> Mobius {
    let (cd, sd) = (p.delta.cos(), p.delta.sin());
    let el = cpx(p.l / 2.0, 0.0).exp();
    let eml = cpx(-p.l / 2.0, 0.0).exp();
    let enu = p.nu.exp();
    let emnu = (-p.nu).exp();
    let eit = cpx(0.0, p.theta).exp();
    let emit = cpx(0.0, -p.theta).exp();
    Mobius {
        a: el * enu * eit * cd,
        b: el * enu * emit * sd,
        c: eml * (p.t * enu * eit * cd - emnu * eit * sd),
        d: eml * (p.t * enu * emit * sd + emnu * emit * cd),
    }
}

/// Inverts the factorization for a given L. θ and δ are normalized to
/// θ ∈ (-π/4, π/4] and δ ∈ (-π/2, π/2); when δ = 0 the pair (Im ν, θ) is
/// only jointly determined and the convention θ = 0 applies. Projective:
/// decompose(-m) = decompose(m).
pub fn g_decompose(m: &Mobius, l: f64) -> Result<GParams> {
    if m.a.norm() == 0.0 {
        return Err(Error::NotFactorizable);
    }
    let r = m.b / m.a;
    let (delta, theta) = if r.norm() < 1e-300 {
        (0.0, 0.0)
    } else {
        // tan δ · e^{-2iθ} = b/a with δ, θ real.
        let theta0 = -r.arg() / 2.0;
        // Representative of θ0 mod π/2 in (-π/4, π/4].
        let k = ((theta0 - FRAC_PI_4) / FRAC_PI_2).ceil();
        let theta = theta0 - k * FRAC_PI_2;
        let tan_delta = (r * cpx(0.0, 2.0 * theta).exp()).re;
        let delta = tan_delta.atan();
        if FRAC_PI_2 - delta.abs() < 1e-8 {
            return Err(Error::AmbiguousBranch);
        }
        (delta, theta)
    };
    let cd = cpx(delta.cos(), 0.0);
    // Choose the projective sign putting Im ν in (-π/2, π/2].
    let mut chosen: Option<(Complex64, f64)> = None;
    for sign in [1.0, -1.0] {
        let nu = (m.a * sign / cd).ln() - cpx(l / 2.0, theta);
        if nu.im > -FRAC_PI_2 && nu.im <= FRAC_PI_2 {
            chosen = Some((nu, sign));
            break;
        }
    }
    let (nu, sign) = chosen.ok_or(Error::NotFactorizable)?;
    let eit = cpx(0.0, theta).exp();
    let t = (m.c * sign * cpx(l / 2.0, 0.0).exp() + (-nu).exp() * eit * cpx(delta.sin(), 0.0))
        / (nu.exp() * eit * cd);
    let params = GParams::new(l, t, nu, delta, theta);
    if !g_matrix(&params).approx_eq(m, 1e-9 * (1.0 + m.frobenius_norm())) {
        return Err(Error::NotFactorizable);
    }
    Ok(params)
}

/// Closed-form translation length estimate L + 2ν + 2iθ + 2 log cos δ.
/// Exact minus estimate is O(e^{-L}) with constant depending only on
/// bounds for |T| and |ν|.
pub fn tr_length_estimate(p: &GParams) -> Result<Complex64> {
    if p.delta.abs() >= FRAC_PI_2 {
        return Err(Error::OutOfDomain);
    }
    Ok(cpx(p.l, 0.0) + 2.0 * p.nu + cpx(0.0, 2.0 * p.theta) + 2.0 * p.delta.cos().ln())
}

/// Exact translation length minus the closed-form estimate, computed
/// without cancellation: with A the dominant trace term and B the
/// e^{-L/2} remainder,
///
/// tr.length - estimate = 2 [ log(1 + B/A) + log((1 + sqrt(1 - (trace/2)⁻²)) / 2) ],
///
/// both logs evaluated in series-safe form. Accurate down to e^{-L}
/// scales far beyond direct f64 subtraction of the two lengths.
pub fn tr_length_gap(p: &GParams) -> Result<Complex64> {
    let (cd, sd) = (p.delta.cos(), p.delta.sin());
    if cd == 0.0 {
        return Err(Error::OutOfDomain);
    }
    let a = (cpx(p.l / 2.0, p.theta) + p.nu).exp() * cd;
    let b = cpx(-p.l / 2.0, 0.0).exp()
        * (p.t * (p.nu + cpx(0.0, -p.theta)).exp() * sd
            + (-p.nu + cpx(0.0, -p.theta)).exp() * cd);
    let half_trace = (a + b) / 2.0;
    let x = (half_trace * half_trace).inv();
    let one = cpx(1.0, 0.0);
    let sqrt_term = (one - x).sqrt();
    // log((1 + sqrt(1-x))/2) = log1p(-x / (2(1+sqrt(1-x)))).
    let inner = -x / (2.0 * (one + sqrt_term));
    Ok(2.0 * (ln_1p(b / a) + ln_1p(inner)))
}

/// log(1 + z) accurate for small |z|.
pub fn ln_1p(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        // Relative error O(|z|^4) — far below f64 eps at this magnitude.
        z * (cpx(1.0, 0.0) - z * (cpx(0.5, 0.0) - z * (cpx(1.0 / 3.0, 0.0) - z * 0.25)))
    } else {
        (cpx(1.0, 0.0) + z).ln()
    }
}

/// Derived quantities of the hexagon built on g: trace pieces N₁, N₂, the
/// fixed-point denominator D, the H₄ correction terms Z and Q, the frame
/// parameters X̃ and M̃, and α = log(M̃ e^{L/4}/2).
///
/// N₂ takes the square-root branch with positive real part, which makes
/// e₀ = (N₁ - N₂)/D the fixed point close to zero and e₁ = (N₁ + N₂)/D the
/// one close to infinity. N₁ - N₂ and N₁² - N₂² are carried by the stable
/// route 4 - 4XY (X, Y the two trace pieces), never by literal subtraction.
#[derive(Debug, Clone, Copy)]
pub struct HexHQuantities {
    pub n1: Complex64,
    pub n2: Complex64,
    pub d: Complex64,
    pub z: Complex64,
    pub q: Complex64,
    pub xtilde: Complex64,
    pub mtilde: Complex64,
    pub alpha: f64,
    pub e0: ExtComplex,
    pub e1: ExtComplex,
    nsq_diff: Complex64,
}

impl HexHQuantities {
    /// Window constants for the frame checks X̃ = e^{L/2} + O(e^{L/4}) and
    /// M̃ = 2e^{-L/4+α}; generous and documented rather than sharp.
    const XTILDE_WINDOW: f64 = 100.0;
    const ALPHA_WINDOW: f64 = 4.7; // ~log 100

    pub fn new(p: &GParams, xtilde: Complex64, mtilde: Complex64) -> Result<Self> {
        let (cd, sd) = (p.delta.cos(), p.delta.sin());
        let el2 = cpx(p.l / 2.0, 0.0).exp();
        let eml2 = cpx(-p.l / 2.0, 0.0).exp();
        let eit = cpx(0.0, p.theta).exp();
        let emit = cpx(0.0, -p.theta).exp();
        let enu = p.nu.exp();
        let emnu = (-p.nu).exp();

        // Dominant and remainder trace pieces: trace = X + Y, N₁ = X - Y.
        let x_piece = el2 * enu * eit * cd;
        let y_piece = eml2 * emit * (enu * p.t * sd + emnu * cd);
        let n1 = x_piece - y_piece;
        let trace = x_piece + y_piece;
        let n2 = (trace * trace - 4.0).sqrt();
        let n2 = if n2.re >= 0.0 { n2 } else { -n2 };
        let d = 2.0 * eml2 * (p.t * enu * eit * cd - emnu * eit * sd);

        // N₁² - N₂² = (X-Y)² - ((X+Y)² - 4) = 4 - 4XY.
        let nsq_diff = 4.0 * (cpx(1.0, 0.0) - x_piece * y_piece);

        if d.norm() == 0.0 {
            return Err(Error::AxisDegenerate);
        }
        let n_sum = n1 + n2;
        if n_sum.norm() == 0.0 || xtilde.norm() == 0.0 {
            return Err(Error::AxisDegenerate);
        }
        let e0 = Finite(nsq_diff / (n_sum * d));
        let e1 = Finite(n_sum / d);
        let z = (d * xtilde * xtilde + nsq_diff / d) / (xtilde * n2);
        let q = (d * d * xtilde.powu(4) + (nsq_diff / d) * (nsq_diff / d))
            / (xtilde * xtilde * n2 * n2);

        if (xtilde - el2).norm() > Self::XTILDE_WINDOW * (p.l / 4.0).exp() {
            return Err(Error::HypothesisViolated);
        }
        if mtilde.re <= 0.0 {
            return Err(Error::HypothesisViolated);
        }
        let alpha = (mtilde.norm() * (p.l / 4.0).exp() / 2.0).ln();
        if alpha.abs() > Self::ALPHA_WINDOW {
            return Err(Error::HypothesisViolated);
        }
        Ok(HexHQuantities { n1, n2, d, z, q, xtilde, mtilde, alpha, e0, e1, nsq_diff })
    }

    /// N₁² - N₂² by the stable route.
    pub fn n_sq_diff(&self) -> Complex64 {
        self.nsq_diff
    }

    /// Closed form -2 sin δ e^{L/2 + ν - iθ} for (N₁² - N₂²)/D.
    pub fn ratio_closed_form(p: &GParams) -> Complex64 {
        -2.0 * p.delta.sin() * (cpx(p.l / 2.0, -p.theta) + p.nu).exp()
    }
}

/// Builds the hexagon H(g, X̃, M̃): side 1 on the vertical axis, side 3 on
/// the axis of g, side 6 with endpoints ±X̃, width H₆ = M̃ + iπ; standardly
/// oriented, realized by concrete geodesics and re-measured.
pub fn hexagon_h_build(
    p: &GParams,
    xtilde: Complex64,
    mtilde: Complex64,
) -> Result<RealizedHexagon> {
    let g = g_matrix(p);
    if !g.is_loxodromic(1e-12) {
        return Err(Error::AxisDegenerate);
    }
    let q = HexHQuantities::new(p, xtilde, mtilde)?;
    let s1 = OrientedGeodesic::vertical();
    let s3 = OrientedGeodesic::new(q.e0, q.e1).map_err(|_| Error::AxisDegenerate)?;
    let h6_width = mtilde + cpx(0.0, PI);
    let mut last = Error::AxisDegenerate;
    for flip6 in [false, true] {
        let s6 = if flip6 {
            OrientedGeodesic::new(Finite(-xtilde), Finite(xtilde))?
        } else {
            OrientedGeodesic::new(Finite(xtilde), Finite(-xtilde))?
        };
        match try_build_h(&s1, &s3, &s6, h6_width) {
            Ok(hex) => {
                // Accept the branch whose measured H₆ equals M̃ + iπ.
                let measured = hex.measure()?;
                if measured.sigma(6).dist(&h6_width.into()) < 1e-7 * (1.0 + mtilde.norm()) {
                    return Ok(hex);
                }
                last = Error::InconsistentWidths;
            }
            Err(e) => last = e,
        }
    }
    Err(last)
}

fn try_build_h(
    s1: &OrientedGeodesic,
    s3: &OrientedGeodesic,
    s6: &OrientedGeodesic,
    h6_width: Complex64,
) -> Result<RealizedHexagon> {
    use crate::geodesic::common_perpendicular;
    let s2 = common_perpendicular(s1, s3).map_err(|_| Error::AxisDegenerate)?;
    // H₆ = μ(H̃₅, H̃₁; H̃₆), so H̃₅ is the screw image of H̃₁ by -H₆ along H̃₆.
    let screw = screw_along(s6, -h6_width)?;
    let s5 = OrientedGeodesic::new(screw.apply(s1.from), screw.apply(s1.to))
        .map_err(|_| Error::AxisDegenerate)?;
    let s4 = common_perpendicular(s3, &s5).map_err(|_| Error::AxisDegenerate)?;
    RealizedHexagon::assemble([*s1, s2, *s3, s4, s5, *s6], None)
        .map_err(|_| Error::AxisDegenerate)
}

/// Leading term of the width H₅ with the square-root discrepancy τ
/// reported separately. `value` is the quoted closed form
/// (√2/2) coth(M̃) e^{-L/2} (T + τ) + iπ, where
/// (T + τ)² = (T - tan δ e^{-2ν})² + tan²δ e^{-4iθ} with the root chosen
/// closest to T; under |tan δ| ≤ 2 eps and |e^{-2ν}| ≤ 2 the construction
/// guarantees |τ| ≤ 6 eps.
///
/// `corrected` carries the same leading term with coefficient 1 instead of
/// √2/2. The exact width chain cosh H₅ = -(num)/sinh H₄ with
/// sinh²H₄ = num² + (N₁/N₂)² - 1 - Z²/4 (num = (N₁/N₂) sinh M̃
/// + (1/2) cosh M̃ Z) expands to H₅ - iπ = (1/2) coth(M̃) Z + O(e^{-L/2}),
/// and Z² = Q + 2(N₁²-N₂²)/N₂² with √Q = 2 e^{-L/2}(T+τ) + O(e^{-3L/4}) —
/// the square root of Q = 4e^{-L}(T+τ)² + ... carries a factor 2 that the
/// √2/2 form does not account for. Measurements of built hexagons match
/// `corrected` to O(e^{-L/2}) and differ from `value` by the factor √2 on
/// the leading term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H5Estimate {
    pub value: Complex64,
    pub corrected: Complex64,
    pub tau: Complex64,
}

pub fn h5_estimate(p: &GParams, q: &HexHQuantities, eps: f64) -> Result<H5Estimate> {
    let tan_d = p.delta.tan();
    if tan_d.abs() > 2.0 * eps || (-2.0 * p.nu).exp().norm() > 2.0 {
        return Err(Error::HypothesisViolated);
    }
    let u = p.t - tan_d * (-2.0 * p.nu).exp();
    let w = u * u + tan_d * tan_d * cpx(0.0, -4.0 * p.theta).exp();
    let s = w.sqrt();
    let root = if (p.t - s).norm() <= (p.t + s).norm() { s } else { -s };
    let tau = root - p.t;
    let coth_m = q.mtilde.cosh() / q.mtilde.sinh();
    let lead = coth_m * cpx(-p.l / 2.0, 0.0).exp() * (p.t + tau);
    Ok(H5Estimate {
        value: 0.5 * 2.0_f64.sqrt() * lead + cpx(0.0, PI),
        corrected: lead + cpx(0.0, PI),
        tau,
    })
}

/// cosh H₂ = -N₁/N₂.
pub fn h2_cosh_closed_form(q: &HexHQuantities) -> Complex64 {
    -q.n1 / q.n2
}

/// The H̃₅ endpoint sign convention of a built hexagon: +1 when
/// f₀ = -tanh(M̃/2)·X̃ (the figure's side, T > 0 in the source picture),
/// -1 when the defining conditions force the mirror f₀ = +tanh(M̃/2)·X̃.
/// The discrete bit enters the H₄ formula through the sign of Z.
pub fn h5_sign(hex: &RealizedHexagon, xtilde: Complex64, mtilde: Complex64) -> Result<f64> {
    let (f0, _) = h5_endpoints(hex)?;
    let expected = -(mtilde / 2.0).tanh() * xtilde;
    Ok(if (f0 - expected).norm() <= (f0 + expected).norm() { 1.0 } else { -1.0 })
}

/// cosh H₄ = (N₁/N₂) cosh M̃ + (1/2) sinh M̃ · Z, in the +1 convention of
/// [`h5_sign`]; the mirror configuration flips the sign of the Z term.
pub fn h4_cosh_closed_form(q: &HexHQuantities) -> Complex64 {
    h4_cosh_closed_form_signed(q, 1.0)
}

/// cosh H₄ with an explicit convention sign from [`h5_sign`].
pub fn h4_cosh_closed_form_signed(q: &HexHQuantities, sign: f64) -> Complex64 {
    (q.n1 / q.n2) * q.mtilde.cosh() + sign * 0.5 * q.mtilde.sinh() * q.z
}

/// Endpoints f₀, f₁ of side 5 of a built hexagon H, ordered |f₀| < |f₁|.
pub fn h5_endpoints(hex: &RealizedHexagon) -> Result<(Complex64, Complex64)> {
    let s5 = hex.side(5);
    let f0 = s5.from.finite().ok_or(Error::AxisDegenerate)?;
    let f1 = s5.to.finite().ok_or(Error::AxisDegenerate)?;
    if f0.norm() <= f1.norm() {
        Ok((f0, f1))
    } else {
        Ok((f1, f0))
    }
}

/// Width of (S_{i-1}, S_{i+1}; S_i) of a realized hexagon, as a raw complex.
pub fn measure_width(hex: &RealizedHexagon, i: usize) -> Result<Complex64> {
    Ok(double_cross_width(hex.side(i + 5), hex.side(i + 1), hex.side(i))?.get())
}

/// acosh branch of a cosh value matched to a measured width: picks the
/// strip representative closest to `measured`.
pub fn acosh_match(cosh_value: Complex64, measured: Complex64) -> Complex64 {
    let w = reduce_im(cosh_value.acosh());
    if (w - measured).norm() <= (reduce_im(-w) - measured).norm() {
        w
    } else {
        reduce_im(-w)
    }
}
