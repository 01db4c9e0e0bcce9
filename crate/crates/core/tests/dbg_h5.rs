use hyptile_core::isometry::*;
use num_complex::Complex64;
use std::f64::consts::PI;
fn cpx(re: f64, im: f64) -> Complex64 { Complex64::new(re, im) }

#[test]
fn dbg() {
    let l = 30.0_f64;
    let p = GParams::new(l, cpx(1.0, 0.02), cpx(0.015, -0.02), 0.02, 0.015);
    let xt = cpx((l / 2.0).exp(), 0.0);
    let mt = cpx(2.0 * (-l / 4.0).exp(), 0.0);
    let hex = hexagon_h_build(&p, xt, mt).unwrap();
    let q = HexHQuantities::new(&p, xt, mt).unwrap();
    let h = |i: usize| measure_width(&hex, i).unwrap();
    let (h2, h4, h5, h6) = (h(2), h(4), h(5), h(6));
    // law of cosines: cosh H5 = (cosh H2 - cosh H6 cosh H4)/(sinh H6 sinh H4)
    let rhs = (h2.cosh() - h6.cosh() * h4.cosh()) / (h6.sinh() * h4.sinh());
    println!("cosh H5 measured = {}", h5.cosh());
    println!("law-of-cos rhs   = {}", rhs);
    println!("coshH5+1 = {}", h5.cosh() + 1.0);
    println!("(1/4)coth^2 Q = {}", 0.25 * (mt.cosh()/mt.sinh()).powu(2) * q.q);
    println!("Z = {}", q.z);
    println!("Q = {}", q.q);
    println!("sqrtQ = {}", q.q.sqrt());
    println!("2 e^(-L/2)(T+tau-ish) check: Q vs 4e^-L(...)");
    let tan_d = p.delta.tan();
    let u = p.t - tan_d * (-2.0 * p.nu).exp();
    let w = u * u + tan_d * tan_d * cpx(0.0, -4.0 * p.theta).exp();
    println!("4 e^-L w = {}", 4.0 * (-l).exp() * w);
    println!("Q direct = {}", q.q);
}
