use hyptile_core::isometry::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
fn cpx(re: f64, im: f64) -> Complex64 { Complex64::new(re, im) }

#[test]
fn dbg() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let eps = 0.1; let t_hat = 5.0;
    for l in [15.0_f64, 25.0, 35.0] {
        let mut done = 0;
        let mut worst2 = 0.0_f64; let mut worst4 = 0.0_f64; let mut worstf = 0.0_f64;
        let mut fails = 0;
        while done < 200 {
            let t = cpx(rng.gen_range(-t_hat..t_hat), rng.gen_range(-eps..eps));
            let nu = cpx(rng.gen_range(-eps..eps), rng.gen_range(-eps..eps)) / 2.0_f64.sqrt();
            let mag = rng.gen_range(0.001..eps);
            let delta = mag * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let theta = rng.gen_range(-eps..eps);
            if (t * delta.cos() - (-2.0 * nu).exp() * delta.sin()).norm() < 0.01 { continue; }
            let p = GParams::new(l, t, nu, delta, theta);
            let xt = cpx((l / 2.0).exp(), 0.0) + (l / 4.0).exp() * cpx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let alpha: f64 = rng.gen_range(-0.1..0.1);
            let beta: f64 = rng.gen_range(-0.01..0.01);
            let mt = 2.0 * (-l / 4.0 + alpha).exp() * cpx(beta.cos(), beta.sin());
            let q = HexHQuantities::new(&p, xt, mt).unwrap();
            match hexagon_h_build(&p, xt, mt) {
                Ok(hex) => {
                    let h2 = measure_width(&hex, 2).unwrap();
                    let r2 = h2_cosh_closed_form(&q);
                    worst2 = worst2.max((h2.cosh() - r2).norm() / (1.0 + r2.norm()));
                    let h4 = measure_width(&hex, 4).unwrap();
                    let r4 = h4_cosh_closed_form(&q);
                    let res4 = (h4.cosh() - r4).norm() / (1.0 + r4.norm());
                    if res4 > worst4 { worst4 = res4; }
                    let (f0, f1) = h5_endpoints(&hex).unwrap();
                    worstf = worstf.max((f0 * f1 - xt * xt).norm() / xt.norm_sqr());
                }
                Err(e) => { fails += 1; if fails < 3 { println!("L={} build err {:?} T={} nu={} d={}", l, e, t, nu, delta); } }
            }
            done += 1;
        }
        println!("L={}: worst H2 {:e}, H4 {:e}, f0f1 {:e}, build fails {}", l, worst2, worst4, worstf, fails);
    }
}
