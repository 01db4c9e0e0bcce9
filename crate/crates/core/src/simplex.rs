//! Phase-1 exact-rational simplex with Bland's rule, for feasibility of
//! {Ax = b, x ≥ 0} systems. Instances here are tiny (tens of variables),
//! so a dense tableau over `BigRational` is the right tool: terminating,
//! exact, and deterministic.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Outcome of the feasibility solve.
#[derive(Debug, Clone, PartialEq)]
pub enum SimplexOutcome {
    /// A feasible point of {Ax = b, x ≥ 0}.
    Feasible(Vec<BigRational>),
    /// Farkas certificate: y with yᵀA ≤ 0 componentwise and yᵀb > 0.
    Infeasible(FarkasCertificate),
}

/// Separating dual vector proving emptiness, validated exactly on
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct FarkasCertificate {
    pub dual: Vec<BigRational>,
    pub valid: bool,
}

impl FarkasCertificate {
    /// Exact check of yᵀA_j ≤ 0 for all columns j and yᵀb > 0.
    pub fn check(&self, a: &[Vec<BigRational>], b: &[BigRational]) -> bool {
        let m = a.len();
        if self.dual.len() != m {
            return false;
        }
        let n = if m == 0 { 0 } else { a[0].len() };
        for j in 0..n {
            let mut s = BigRational::zero();
            for i in 0..m {
                s += &self.dual[i] * &a[i][j];
            }
            if s > BigRational::zero() {
                return false;
            }
        }
        let mut yb = BigRational::zero();
        for i in 0..m {
            yb += &self.dual[i] * &b[i];
        }
        yb > BigRational::zero()
    }
}

/// Solves the feasibility problem {Ax = b, x ≥ 0} by minimizing the sum of
/// artificial variables. Deterministic: Bland's rule (lowest eligible index
/// enters; ties on the ratio test break toward the lowest basic variable).
pub fn phase1_feasibility(a: &[Vec<BigRational>], b: &[BigRational]) -> SimplexOutcome {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    // Tableau columns: n structural, m artificial, 1 rhs.
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = vec![BigRational::zero(); width];
        let flip = b[i] < BigRational::zero();
        for j in 0..n {
            row[j] = if flip { -&a[i][j] } else { a[i][j].clone() };
        }
        row[n + i] = BigRational::one();
        row[width - 1] = if flip { -&b[i] } else { b[i].clone() };
        t.push(row);
    }
    // Objective row: minimize sum of artificials. Price out the initial
    // basis: obj = -(sum of constraint rows) over structural columns, with
    // objective value -(sum of rhs).
    let mut obj = vec![BigRational::zero(); width];
    for row in t.iter() {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width - 1] -= &row[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // Bland: entering = lowest-index column with negative reduced cost.
        let mut entering = None;
        for (j, cost) in obj.iter().enumerate().take(n + m) {
            if cost < &BigRational::zero() {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else { break };
        // Ratio test with Bland tie-breaking on the basic variable index.
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..m {
            if t[i][e] > BigRational::zero() {
                let ratio = &t[i][width - 1] / &t[i][e];
                match &leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < *lr || (ratio == *lr && basis[i] < basis[*li]) {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        let Some((l, _)) = leave else {
            // Unbounded phase-1 objective cannot happen (bounded below by 0).
            break;
        };
        pivot(&mut t, &mut obj, l, e, width);
        basis[l] = e;
    }

    let w_opt = -obj[width - 1].clone();
    if w_opt > BigRational::zero() {
        // Infeasible: recover multipliers from the artificial columns of
        // the objective row (cost 1 each): y_i = 1 - reduced_cost(artif i)
        // satisfies yᵀ A_j ≤ 0 and yᵀ b = w_opt > 0, modulo the row sign
        // flips applied for negative b.
        let mut dual: Vec<BigRational> = (0..m)
            .map(|i| BigRational::one() - &obj[n + i])
            .collect();
        for (i, bi) in b.iter().enumerate() {
            if bi < &BigRational::zero() {
                dual[i] = -dual[i].clone();
            }
        }
        let cert = FarkasCertificate { valid: false, dual };
        let valid = cert.check(a, b);
        return SimplexOutcome::Infeasible(FarkasCertificate { valid, ..cert });
    }

    // Feasible: drive remaining artificials out of the basis where
    // possible; rows with no structural pivot are redundant zero rows.
    for i in 0..m {
        if basis[i] >= n && t[i][width - 1].is_zero() {
            if let Some(e) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut obj, i, e, width);
                basis[i] = e;
            }
        }
    }
    let mut x = vec![BigRational::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            x[basis[i]] = t[i][width - 1].clone();
        }
    }
    SimplexOutcome::Feasible(x)
}

fn pivot(t: &mut [Vec<BigRational>], obj: &mut [BigRational], l: usize, e: usize, width: usize) {
    let p = t[l][e].clone();
    for v in t[l].iter_mut() {
        *v /= &p;
    }
    for i in 0..t.len() {
        if i != l && !t[i][e].is_zero() {
            let f = t[i][e].clone();
            for j in 0..width {
                let d = &t[l][j] * &f;
                t[i][j] -= d;
            }
        }
    }
    if !obj[e].is_zero() {
        let f = obj[e].clone();
        for (j, o) in obj.iter_mut().enumerate() {
            let d = &t[l][j] * &f;
            *o -= d;
        }
    }
}

/// Convenience: BigRational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_ax_eq_b(a: &[Vec<BigRational>], b: &[BigRational], x: &[BigRational]) -> bool {
        for (row, bi) in a.iter().zip(b) {
            let mut s = BigRational::zero();
            for (c, xi) in row.iter().zip(x) {
                s += c * xi;
            }
            if &s != bi {
                return false;
            }
        }
        x.iter().all(|v| v >= &BigRational::zero())
    }

    #[test]
    fn feasible_system() {
        // x0 + x1 = 1, x0 - x1 = 0 -> x = (1/2, 1/2).
        let a = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]];
        let b = vec![rat(1), rat(0)];
        match phase1_feasibility(&a, &b) {
            SimplexOutcome::Feasible(x) => {
                assert!(check_ax_eq_b(&a, &b, &x));
            }
            _ => panic!("expected feasible"),
        }
    }

    #[test]
    fn infeasible_system_has_valid_certificate() {
        // x0 + x1 = -1 with x >= 0 is empty.
        let a = vec![vec![rat(1), rat(1)]];
        let b = vec![rat(-1)];
        match phase1_feasibility(&a, &b) {
            SimplexOutcome::Infeasible(cert) => assert!(cert.valid),
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn infeasible_pair() {
        // x0 = 1 and x0 = 2 simultaneously.
        let a = vec![vec![rat(1)], vec![rat(1)]];
        let b = vec![rat(1), rat(2)];
        match phase1_feasibility(&a, &b) {
            SimplexOutcome::Infeasible(cert) => assert!(cert.valid),
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn redundant_rows_are_fine() {
        let a = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        let b = vec![rat(2), rat(4)];
        match phase1_feasibility(&a, &b) {
            SimplexOutcome::Feasible(x) => assert!(check_ax_eq_b(&a, &b, &x)),
            _ => panic!("expected feasible"),
        }
    }
}
