//! Best-effort word-ball search for group elements conjugate to a
//! parametrized isometry: enumerate reduced words over the generators,
//! prune by matrix norm and trace, and keep the words whose conjugated
//! matrix factorizes with in-bounds parameters.

use crate::isometry::{g_decompose, GParams};
use crate::mobius::Mobius;
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// Search configuration. `generators` must generate a group: each listed
/// generator either has its inverse available (taken automatically) or is
/// an involution, detected as g² = ±I. The trace window defaults to
/// 4·e^eps: accepted matrices must satisfy
/// e^{L/2}/window ≤ |trace| ≤ e^{L/2}·window.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub generators: Vec<Mobius>,
    pub conjugator: Mobius,
    pub l: f64,
    pub eps: f64,
    pub t_hat: f64,
    pub max_word_length: usize,
    pub trace_window: f64,
}

impl SearchConfig {
    pub fn new(
        generators: Vec<Mobius>,
        conjugator: Mobius,
        l: f64,
        eps: f64,
        t_hat: f64,
        max_word_length: usize,
    ) -> Self {
        let trace_window = 4.0 * eps.exp();
        SearchConfig { generators, conjugator, l, eps, t_hat, max_word_length, trace_window }
    }
}

/// One search hit: the reduced word (signed 1-based letters, +k for
/// generator k, -k for its inverse), the conjugated matrix A w A⁻¹ and its
/// factorization parameters.
#[derive(Debug, Clone)]
pub struct SearchHit {
    pub word: Vec<i32>,
    pub matrix: Mobius,
    pub params: GParams,
}

struct Letter {
    m: Mobius,
    code: i32,
    inverse_index: usize,
}

/// Enumerates reduced words up to the configured length in depth-first
/// letter order; returns hits sorted by word length, then lexicographically
/// by letter codes. Empty output is a valid outcome — the search budget may
/// simply be too small.
pub fn word_ball_search(cfg: &SearchConfig) -> Result<Vec<SearchHit>> {
    let mut letters: Vec<Letter> = Vec::new();
    for (i, g) in cfg.generators.iter().enumerate() {
        let g2 = g.compose(g);
        let involution = g2.approx_eq(&Mobius::identity(), 1e-9);
        let idx = letters.len();
        if involution {
            letters.push(Letter { m: *g, code: (i + 1) as i32, inverse_index: idx });
        } else {
            letters.push(Letter { m: *g, code: (i + 1) as i32, inverse_index: idx + 1 });
            letters.push(Letter { m: g.inverse(), code: -((i + 1) as i32), inverse_index: idx });
        }
    }
    let mut hits: Vec<SearchHit> = Vec::new();
    if letters.is_empty() || cfg.max_word_length == 0 {
        return Ok(hits);
    }

    // Norm pruning: any acceptable w = A⁻¹ m A has operator norm at most
    // cond(A)·W with W bounding the target matrix norm; a prefix that can
    // no longer shrink below that within the remaining letters is dead.
    // 1.5x slack covers rounding.
    let cond_a = cfg.conjugator.op_norm() * cfg.conjugator.inverse().op_norm();
    let target_norm = (cfg.l / 2.0 + cfg.eps).exp() * (1.0 + 2.0 * cfg.eps)
        + (-cfg.l / 2.0).exp() * (cfg.t_hat + 2.0);
    let lambda_max = letters.iter().map(|l| l.m.op_norm()).fold(1.0_f64, f64::max);
    let norm_cap = 1.5 * cond_a * target_norm;

    let tr_lo = (cfg.l / 2.0).exp() / cfg.trace_window;
    let tr_hi = (cfg.l / 2.0).exp() * cfg.trace_window;

    struct Frame {
        matrix: Mobius,
        last: usize,
        next_letter: usize,
    }
    let mut word: Vec<usize> = Vec::new();
    let mut stack: Vec<Frame> =
        vec![Frame { matrix: Mobius::identity(), last: usize::MAX, next_letter: 0 }];
    while let Some(top) = stack.last_mut() {
        let li = top.next_letter;
        if li >= letters.len() {
            stack.pop();
            word.pop();
            continue;
        }
        top.next_letter += 1;
        // Free/relator reduction: never follow a letter by its inverse
        // (involutions are their own inverse).
        if top.last != usize::MAX && letters[top.last].inverse_index == li {
            continue;
        }
        let m = top.matrix.compose(&letters[li].m);
        let depth = stack.len(); // word length once this letter is appended
        let remaining = cfg.max_word_length - depth;
        if m.op_norm() > norm_cap * lambda_max.powi(remaining as i32) {
            continue;
        }
        word.push(li);
        let conj = cfg.conjugator.compose(&m).compose(&cfg.conjugator.inverse());
        let tr = conj.trace().norm();
        if tr >= tr_lo && tr <= tr_hi {
            if let Ok(params) = g_decompose(&conj, cfg.l) {
                if params.in_bounds(cfg.eps, cfg.t_hat) {
                    hits.push(SearchHit {
                        word: word.iter().map(|&i| letters[i].code).collect(),
                        matrix: conj,
                        params,
                    });
                }
            }
        }
        if depth < cfg.max_word_length {
            stack.push(Frame { matrix: m, last: li, next_letter: 0 });
        } else {
            word.pop();
        }
    }
    hits.sort_by(|a, b| {
        a.word
            .len()
            .cmp(&b.word.len())
            .then_with(|| letter_key(&a.word).cmp(&letter_key(&b.word)))
    });
    Ok(hits)
}

fn letter_key(word: &[i32]) -> Vec<u32> {
    // Letter order: g1 < g1⁻¹ < g2 < g2⁻¹ < ...
    word.iter()
        .map(|&c| {
            let base = (c.unsigned_abs() - 1) * 2;
            if c > 0 {
                base
            } else {
                base + 1
            }
        })
        .collect()
}

/// Generators of the genus-2 surface group coming from the regular
/// hyperbolic octagon with vertex angle π/4: four translations through the
/// center of length 2 acosh(1 + √2), with axes through i at angles kπ/4,
/// k = 0..3 (upper half-plane model, opposite sides identified).
pub fn octagon_generators() -> Vec<Mobius> {
    let cosh_half = 1.0 + 2.0_f64.sqrt();
    let sinh_half = (cosh_half * cosh_half - 1.0).sqrt();
    let c = num_complex::Complex64::new(cosh_half, 0.0);
    let s = num_complex::Complex64::new(sinh_half, 0.0);
    let translate = Mobius::new(c, s, s, c).unwrap();
    let mut gens = Vec::with_capacity(4);
    for k in 0..4 {
        // An elliptic matrix with half-angle φ rotates about i by 2φ.
        let half_angle = (k as f64) * core::f64::consts::FRAC_PI_4 / 2.0;
        let rot = Mobius::new(
            num_complex::Complex64::new(half_angle.cos(), 0.0),
            num_complex::Complex64::new(half_angle.sin(), 0.0),
            num_complex::Complex64::new(-half_angle.sin(), 0.0),
            num_complex::Complex64::new(half_angle.cos(), 0.0),
        )
        .unwrap();
        gens.push(rot.compose(&translate).compose(&rot.inverse()));
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::translation_length;
    use num_complex::Complex64;

    fn cx(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn empty_generators_give_empty() {
        let cfg = SearchConfig::new(Vec::new(), Mobius::identity(), 10.0, 0.1, 1.0, 5);
        assert!(word_ball_search(&cfg).unwrap().is_empty());
    }

    #[test]
    fn cyclic_group_power_hit() {
        let ell = 5.0_f64;
        let g = Mobius::diagonal(cx((ell / 2.0).exp())).unwrap();
        let k = 4;
        let cfg =
            SearchConfig::new(vec![g], Mobius::identity(), ell * k as f64, 0.05, 1.0, 6);
        let hits = word_ball_search(&cfg).unwrap();
        assert_eq!(hits.len(), 1);
        let hit = &hits[0];
        assert_eq!(hit.word, vec![1; k]);
        assert!(hit.params.t.norm() < 1e-9);
        assert!(hit.params.nu.norm() < 1e-9);
        assert!(hit.params.delta.abs() < 1e-9);
        assert!(hit.params.theta.abs() < 1e-9);
    }

    #[test]
    fn search_is_sound() {
        // Octagon group at small word length, conjugated so that the axis
        // of g1 lands on the vertical axis: every hit's matrix is
        // reproduced by its parameters and has tr.length in the L ± band.
        let gens = octagon_generators();
        let axis1 = crate::geodesic::oriented_axis(&gens[0]).unwrap();
        let a = crate::geodesic::to_standard_position(&axis1).unwrap();
        let d = 2.0 * (1.0 + 2.0_f64.sqrt()).acosh();
        let cfg = SearchConfig::new(gens, a, 2.0 * d, 0.2, 8.0, 4);
        let hits = word_ball_search(&cfg).unwrap();
        assert!(!hits.is_empty());
        for h in &hits {
            let g = crate::isometry::g_matrix(&h.params);
            assert!(g.approx_eq(&h.matrix, 1e-8 * (1.0 + h.matrix.frobenius_norm())));
            let tl = translation_length(&h.matrix).unwrap().get();
            assert!((tl.re - cfg.l).abs() <= 2.0 * cfg.eps + 1e-6);
            assert!(tl.im.abs() <= 2.0 * cfg.eps + 1e-6);
        }
        // g1² realizes L = 2d exactly with all parameters zero.
        assert!(hits.iter().any(|h| h.word == vec![1, 1]));
    }

    #[test]
    fn octagon_generators_are_hyperbolic_with_known_length() {
        let d = 2.0 * (1.0 + 2.0_f64.sqrt()).acosh();
        for g in octagon_generators() {
            let tl = translation_length(&g).unwrap().get();
            assert!((tl.re - d).abs() < 1e-12);
            assert!(tl.im.abs() < 1e-12);
        }
    }
}
