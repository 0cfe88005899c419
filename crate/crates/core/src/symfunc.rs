//! Schur polynomials via the bialternant determinant, the generating-series
//! polynomial P_N(x,y,T), the perturbed-Vandermonde determinant identity,
//! Hecke multiplicativity checks and the Rankin–Selberg Euler factor.
//!
//! Subscript convention: `schur(x, &[a_1, …, a_{N-1}])` is S_{a_1,…,a_{N-1}}(x),
//! the ratio of the alternant with row exponents (reading the matrix bottom-up)
//! 0, 1+a_1, 2+a_1+a_2, …, N-1+a_1+…+a_{N-1} to the Vandermonde determinant.
//! Fourier coefficients at prime powers are a(q^{k_1},…,q^{k_{N-1}}) =
//! S_{k_{N-1},…,k_1}, i.e. the subscript tuple is the reversed exponent tuple.

use num_complex::Complex64;

use crate::error::{Error, Result};

const GAP_MIN: f64 = 1e-6;

/// Polynomial in T with complex coefficients; index = power of T.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyInT {
    pub coeffs: Vec<Complex64>,
}

impl PolyInT {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.norm() < 1e-12).unwrap_or(false) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }
}

fn min_pairwise_gap(x: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..x.len() {
        for j in 0..i {
            gap = gap.min((x[i] - x[j]).norm());
        }
    }
    gap
}

fn check_distinct(x: &[Complex64]) -> Result<()> {
    let gap = min_pairwise_gap(x);
    if gap <= GAP_MIN {
        return Err(Error::NearDegenerate(gap));
    }
    Ok(())
}

/// Complex determinant by LU with partial pivoting.
pub fn determinant(mat: &mut [Vec<Complex64>]) -> Complex64 {
    let n = mat.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| mat[a][col].norm().total_cmp(&mat[b][col].norm()))
            .unwrap();
        if mat[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            mat.swap(pivot, col);
            det = -det;
        }
        det *= mat[col][col];
        for row in col + 1..n {
            let factor = mat[row][col] / mat[col][col];
            for k in col..n {
                let sub = factor * mat[col][k];
                mat[row][k] -= sub;
            }
        }
    }
    det
}

/// Vandermonde determinant V(x) = Π_{i<j} (x_i - x_j).
pub fn vandermonde(x: &[Complex64]) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            v *= x[i] - x[j];
        }
    }
    v
}

/// Elementary symmetric polynomials e_0..e_n of x (Vieta recurrence).
pub fn elementary_symmetric(x: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); x.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (m, &xi) in x.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            let add = e[k - 1] * xi;
            e[k] += add;
        }
    }
    e
}

/// Alternant ratio det(x_j^{exps_i}) / V(x); exps in decreasing order.
fn alternant_ratio(x: &[Complex64], exps: &[u32]) -> Complex64 {
    let mut mat: Vec<Vec<Complex64>> = exps
        .iter()
        .map(|&e| x.iter().map(|&xi| xi.powu(e)).collect())
        .collect();
    let num = determinant(&mut mat);
    num / vandermonde(x)
}

/// Row exponents of the Schur alternant for subscripts (a_1..a_{N-1}), top row
/// first: N-1+Σa, …, 1+a_1, 0.
fn schur_exponents(n: usize, subs: &[u32]) -> Vec<u32> {
    assert_eq!(subs.len(), n - 1);
    let mut exps = Vec::with_capacity(n);
    // from the bottom: row r has exponent r + a_1 + … + a_r
    let mut acc = 0u32;
    exps.push(0u32);
    for (r, &a) in subs.iter().enumerate() {
        acc += a;
        exps.push((r as u32 + 1) + acc);
    }
    exps.reverse();
    exps
}

/// Partition (λ_1 ≥ … ≥ λ_N = 0) attached to subscripts: λ_j = a_1+…+a_{N-j}.
pub fn schur_partition(n: usize, subs: &[u32]) -> Vec<u32> {
    assert_eq!(subs.len(), n - 1);
    let mut lambda = vec![0u32; n];
    for j in 1..n {
        lambda[n - 1 - j] = lambda[n - j] + subs[j - 1];
    }
    lambda
}

/// Schur polynomial S_{a_1,…,a_{N-1}}(x) as a bialternant determinant ratio.
pub fn schur(x: &[Complex64], subs: &[u32]) -> Result<Complex64> {
    check_distinct(x)?;
    Ok(alternant_ratio(x, &schur_exponents(x.len(), subs)))
}

/// Independent Schur evaluation through the Jacobi–Trudi determinant in the
/// complete homogeneous polynomials h_k (generated by the Vieta recurrence
/// Σ_j (-1)^j e_j h_{k-j} = 0). Cross-validation path for `schur`.
pub fn schur_jacobi_trudi(x: &[Complex64], subs: &[u32]) -> Complex64 {
    let lambda = schur_partition(x.len(), subs);
    let parts: Vec<u32> = lambda.into_iter().filter(|&l| l > 0).collect();
    if parts.is_empty() {
        return Complex64::new(1.0, 0.0);
    }
    let max_h = parts[0] as usize + parts.len();
    let h = complete_homogeneous(x, max_h);
    let ell = parts.len();
    let mut mat: Vec<Vec<Complex64>> = (0..ell)
        .map(|i| {
            (0..ell)
                .map(|j| {
                    let idx = parts[i] as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        h[idx as usize]
                    }
                })
                .collect()
        })
        .collect();
    determinant(&mut mat)
}

/// h_0..h_max of x via h_k = Σ_{j=1..min(k,N)} (-1)^{j-1} e_j h_{k-j}.
pub fn complete_homogeneous(x: &[Complex64], max: usize) -> Vec<Complex64> {
    let e = elementary_symmetric(x);
    let mut h = vec![Complex64::new(0.0, 0.0); max + 1];
    h[0] = Complex64::new(1.0, 0.0);
    for k in 1..=max {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k.min(x.len()) {
            let term = e[j] * h[k - j];
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        h[k] = acc;
    }
    h
}

/// The modified alternant S̃ of the P_N expansion: the Schur alternant rows
/// at positions J_1<…<J_k (1-indexed from the top) carry exponents
/// N-J_i+m_i instead of N-J_i, all divided by V(x).
fn s_tilde(x: &[Complex64], js: &[usize], ms: &[u32]) -> Complex64 {
    let n = x.len();
    let mut exps: Vec<u32> = (0..n).map(|i| (n - 1 - i) as u32).collect();
    for (i, &j) in js.iter().enumerate() {
        exps[j - 1] = (n - j) as u32 + ms[i];
    }
    let mut mat: Vec<Vec<Complex64>> = exps
        .iter()
        .map(|&e| x.iter().map(|&xi| xi.powu(e)).collect())
        .collect();
    determinant(&mut mat) / vandermonde(x)
}

fn compositions(total: u32, parts: usize, max_part: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    if parts == 0 {
        if total == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let lo = 1u32;
    let hi = max_part.min(total.saturating_sub(parts as u32 - 1));
    for v in lo..=hi {
        cur.push(v);
        compositions(total - v, parts - 1, max_part, out, cur);
        cur.pop();
    }
}

fn subsets_of_rows(n: usize, k: usize) -> Vec<Vec<usize>> {
    // k-subsets of {2..N}, increasing
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(2, n, k, &mut cur, &mut out);
    out
}

/// The numerator polynomial P_N(x,y,T) of the Schur generating series
/// Σ_k S_{0,…,0,k}(x) S_{0,…,0,k}(y) T^k = P_N(x,y,T) / Π_{j,k} (1 - x_j y_k T),
/// assembled from its explicit expansion: degree ≤ N(N-1), constant term 1,
/// vanishing T¹ coefficient.
pub fn pn_polynomial(x: &[Complex64], y: &[Complex64]) -> Result<PolyInT> {
    let n = x.len();
    assert_eq!(y.len(), n);
    check_distinct(x)?;
    check_distinct(y)?;
    let ey = elementary_symmetric(y);
    let deg = n * (n - 1);
    let mut coeffs = vec![Complex64::new(0.0, 0.0); deg + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    for m in 2..=deg as u32 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let mut total = Complex64::new(0.0, 0.0);
        let kmax = (m as usize).min(n - 1);
        for k in 1..=kmax {
            let mut comps = Vec::new();
            compositions(m, k, (m).min(n as u32), &mut comps, &mut Vec::new());
            for comp in &comps {
                let mut ey_prod = Complex64::new(1.0, 0.0);
                for &mj in comp {
                    ey_prod *= ey[mj as usize];
                }
                if ey_prod.norm() == 0.0 {
                    continue;
                }
                let mut det_sum = Complex64::new(0.0, 0.0);
                for js in subsets_of_rows(n, k) {
                    det_sum += s_tilde(x, &js, comp);
                }
                total += ey_prod * det_sum;
            }
        }
        coeffs[m as usize] = total * sign;
    }
    Ok(PolyInT::new(coeffs))
}

/// Residual of the generating-series identity at truncation order `k_max`:
/// the truncated series Σ_{k≤K} S_{0,…,0,k}(x) S_{0,…,0,k}(y) T^k is multiplied
/// by Π_{j,k}(1 - x_j y_k T) and compared coefficient-by-coefficient against
/// `pn_polynomial` (and against 0 beyond degree N(N-1)). The series side runs
/// through the h_k recurrence, the polynomial side through alternant
/// determinants, so the two routes share no code path.
pub fn verify_generating_identity(x: &[Complex64], y: &[Complex64], k_max: usize) -> Result<f64> {
    let n = x.len();
    let need = n * (n - 1) + 5;
    if k_max < need {
        return Err(Error::TruncationTooShort { got: k_max as u64, min: need as u64 });
    }
    check_distinct(x)?;
    check_distinct(y)?;
    // S_{0,…,0,k} = h_k
    let hx = complete_homogeneous(x, k_max);
    let hy = complete_homogeneous(y, k_max);
    let mut series: Vec<Complex64> = (0..=k_max).map(|k| hx[k] * hy[k]).collect();
    // multiply by Π_{j,k} (1 - x_j y_k T), truncated at k_max
    for &xj in x {
        for &yk in y {
            let root = xj * yk;
            for i in (1..=k_max).rev() {
                let sub = series[i - 1] * root;
                series[i] -= sub;
            }
        }
    }
    let pn = pn_polynomial(x, y)?;
    let mut residual = 0.0f64;
    for (k, &c) in series.iter().enumerate() {
        residual = residual.max((c - pn.coeff(k)).norm());
    }
    Ok(residual)
}

/// |det - V(x)| for the perturbed Vandermonde determinant whose rows below the
/// first carry the extra factor (1 - x_j Y); the identity says the determinant
/// is V(x) for every Y.
pub fn vandermonde_lemma_check(x: &[Complex64], y_param: Complex64) -> Result<f64> {
    check_distinct(x)?;
    let n = x.len();
    let mut mat: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    mat.push(x.iter().map(|&xi| xi.powu(n as u32 - 1)).collect());
    for row in 1..n {
        let e = (n - 1 - row) as u32;
        mat.push(
            x.iter()
                .map(|&xi| xi.powu(e) * (Complex64::new(1.0, 0.0) - xi * y_param))
                .collect(),
        );
    }
    let det = determinant(&mut mat);
    Ok((det - vandermonde(x)).norm())
}

fn check_unit_determinant(x: &[Complex64]) -> Result<()> {
    let prod: Complex64 = x.iter().product();
    let dev = (prod - Complex64::new(1.0, 0.0)).norm();
    if dev > 1e-10 {
        return Err(Error::NonUnitDeterminant(dev));
    }
    Ok(())
}

/// Fourier coefficient a(q^{k_1},…,q^{k_{N-1}}) as a Schur polynomial in the
/// Satake tuple (subscripts reversed).
pub fn fourier_coefficient(x: &[Complex64], ks: &[u32]) -> Result<Complex64> {
    let mut subs: Vec<u32> = ks.to_vec();
    subs.reverse();
    schur(x, &subs)
}

/// Residual of the Hecke multiplicativity relation at m = q, m_i = q^{k_i}:
///
///   a(q,1,…,1)·a(q^{k_1},…,q^{k_{N-1}}) = Σ a(q^{k_1}c_N/c_1, …)
///
/// where the sum runs over (c_1..c_N) with Π c_ℓ = q and c_j | q^{k_j}; with
/// m = q exactly one c_ℓ equals q, leaving at most N terms.
pub fn hecke_relation_check(x: &[Complex64], ks: &[u32]) -> Result<f64> {
    let n = x.len();
    assert_eq!(ks.len(), n - 1);
    if ks.iter().any(|&k| k > 4) {
        return Err(Error::CapExceeded { got: *ks.iter().max().unwrap() as u64, cap: 4 });
    }
    check_unit_determinant(x)?;
    check_distinct(x)?;
    let mut e1_index = vec![0u32; n - 1];
    e1_index[0] = 1;
    let lhs = fourier_coefficient(x, &e1_index)? * fourier_coefficient(x, ks)?;
    let mut rhs = Complex64::new(0.0, 0.0);
    // c_N = q: first index gains a factor q
    {
        let mut idx = ks.to_vec();
        idx[0] += 1;
        rhs += fourier_coefficient(x, &idx)?;
    }
    // c_j = q for j < N: requires q | q^{k_j}; index j divides by q, index j+1
    // (when present) gains a factor q
    for j in 0..n - 1 {
        if ks[j] >= 1 {
            let mut idx = ks.to_vec();
            idx[j] -= 1;
            if j + 1 < n - 1 {
                idx[j + 1] += 1;
            }
            rhs += fourier_coefficient(x, &idx)?;
        }
    }
    Ok((lhs - rhs).norm())
}

/// Single Euler factor P_N(x, conj(x), 1/q) of the Rankin–Selberg product;
/// positive under the Ramanujan-type bound max_j |x_j| ≤ q^{1/2 - 1/(N²+1)}.
pub fn euler_factor(x: &[Complex64], q: u64) -> Result<f64> {
    let n = x.len() as f64;
    let bound = (q as f64).powf(0.5 - 1.0 / (n * n + 1.0));
    if x.iter().any(|xi| xi.norm() > bound * (1.0 + 1e-12)) {
        return Err(Error::RamanujanViolation { q });
    }
    let xbar: Vec<Complex64> = x.iter().map(|xi| xi.conj()).collect();
    let pn = pn_polynomial(x, &xbar)?;
    let value = pn.eval(Complex64::new(1.0 / q as f64, 0.0));
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn torus(angles: &[f64]) -> Vec<Complex64> {
        angles.iter().map(|&t| Complex64::from_polar(1.0, t)).collect()
    }

    /// Unit-determinant torus tuple: angles summing to zero.
    fn torus_unit_det(angles: &[f64]) -> Vec<Complex64> {
        let sum: f64 = angles.iter().sum();
        let mut full = angles.to_vec();
        full.push(-sum);
        torus(&full)
    }

    #[test]
    fn schur_trivial_subscripts() {
        for x in [vec![c(2.0, 0.0), c(1.0, 0.0)], vec![c(0.3, 0.2), c(-1.0, 0.4), c(0.9, -0.7)]] {
            let subs = vec![0u32; x.len() - 1];
            let s = schur(&x, &subs).unwrap();
            assert!((s - c(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn schur_monomial_sum_oracle_n2() {
        // S_3(x1,x2) = h_3 = x1³+x1²x2+x1x2²+x2³ at (2,1) = 15
        let x = vec![c(2.0, 0.0), c(1.0, 0.0)];
        let s = schur(&x, &[3]).unwrap();
        assert!((s - c(15.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn schur_e1_on_unit_torus() {
        let x = torus_unit_det(&[0.7, -0.3]);
        let s = schur(&x, &[0, 1]).unwrap();
        let e1: Complex64 = x.iter().sum();
        assert!((s - e1).norm() < 1e-9);
    }

    #[test]
    fn schur_matches_jacobi_trudi() {
        let x = vec![c(0.5, 0.1), c(-0.4, 0.8), c(1.1, -0.2), c(0.2, -0.9)];
        for subs in [[0u32, 0, 2], [1, 0, 3], [2, 2, 1], [0, 4, 0]] {
            let a = schur(&x, &subs).unwrap();
            let b = schur_jacobi_trudi(&x, &subs);
            assert!((a - b).norm() < 1e-9 * (1.0 + b.norm()), "{subs:?}: {a} vs {b}");
        }
    }

    #[test]
    fn schur_rejects_near_degenerate() {
        let x = vec![c(1.0, 0.0), c(1.0 + 1e-8, 0.0)];
        assert!(matches!(schur(&x, &[1]), Err(Error::NearDegenerate(_))));
    }

    #[test]
    fn schur_symmetric_under_permutation() {
        let x = vec![c(0.3, 0.4), c(-0.8, 0.1), c(0.5, -0.6)];
        let mut perm = x.clone();
        perm.swap(0, 2);
        for subs in [[1u32, 2], [3, 0]] {
            let a = schur(&x, &subs).unwrap();
            let b = schur(&perm, &subs).unwrap();
            assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn pn_matches_n2_closed_form() {
        let x = vec![c(0.5, 0.0), c(0.3, 0.0)];
        let y = vec![c(0.4, 0.0), c(0.2, 0.0)];
        let pn = pn_polynomial(&x, &y).unwrap();
        let e2x = elementary_symmetric(&x)[2];
        let e2y = elementary_symmetric(&y)[2];
        assert!((pn.coeff(0) - c(1.0, 0.0)).norm() < 1e-12);
        assert!(pn.coeff(1).norm() < 1e-9);
        assert!((pn.coeff(2) + e2x * e2y).norm() < 1e-9);
        assert!(pn.degree() <= 2);
    }

    #[test]
    fn pn_matches_n3_remark_coefficients() {
        let x = torus_unit_det(&[0.9, -0.4]);
        let y = torus_unit_det(&[0.2, 1.3]);
        let pn = pn_polynomial(&x, &y).unwrap();
        let ex = elementary_symmetric(&x);
        let ey = elementary_symmetric(&y);
        assert!((pn.coeff(0) - c(1.0, 0.0)).norm() < 1e-9);
        assert!(pn.coeff(1).norm() < 1e-9);
        assert!((pn.coeff(2) + ex[2] * ey[2]).norm() < 1e-8);
        // T³: e3(x)·Σ_{k1≠k2} y_{k1} y_{k2}² + e3(y)·Σ x_{j1} x_{j2}² + 4 e3(x)e3(y)
        let mixed = |z: &[Complex64]| -> Complex64 {
            let mut acc = c(0.0, 0.0);
            for a in 0..3 {
                for b in 0..3 {
                    if a != b {
                        acc += z[a] * z[b] * z[b];
                    }
                }
            }
            acc
        };
        let t3 = ex[3] * mixed(&y) + ey[3] * mixed(&x) + ex[3] * ey[3] * 4.0;
        assert!((pn.coeff(3) - t3).norm() < 1e-8, "{} vs {}", pn.coeff(3), t3);
        // T⁴: -e1(x)e3(x)e1(y)e3(y)
        let t4 = -(ex[1] * ex[3] * ey[1] * ey[3]);
        assert!((pn.coeff(4) - t4).norm() < 1e-8);
        // T⁵ vanishes, T⁶: e3(x)²e3(y)²
        assert!(pn.coeff(5).norm() < 1e-8);
        assert!((pn.coeff(6) - ex[3] * ex[3] * ey[3] * ey[3]).norm() < 1e-8);
    }

    #[test]
    fn generating_identity_small_real_points() {
        let x = vec![c(0.5, 0.0), c(0.3, 0.0)];
        let y = vec![c(0.4, 0.0), c(0.2, 0.0)];
        let residual = verify_generating_identity(&x, &y, 15).unwrap();
        assert!(residual < 1e-9, "residual {residual:e}");
    }

    #[test]
    fn generating_identity_torus_n3() {
        let x = torus_unit_det(&[1.1, -0.5]);
        let y = torus_unit_det(&[0.4, 2.0]);
        let residual = verify_generating_identity(&x, &y, 20).unwrap();
        assert!(residual < 1e-8, "residual {residual:e}");
    }

    #[test]
    fn generating_identity_rejects_short_truncation() {
        let x = vec![c(0.5, 0.0), c(0.3, 0.0)];
        let y = vec![c(0.4, 0.0), c(0.2, 0.0)];
        assert!(matches!(
            verify_generating_identity(&x, &y, 2),
            Err(Error::TruncationTooShort { .. })
        ));
    }

    #[test]
    fn vandermonde_identity() {
        // N=3, x=(3,2,1), V = 2
        let x = vec![c(3.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)];
        let v = vandermonde(&x);
        assert!((v - c(2.0, 0.0)).norm() < 1e-12);
        let r = vandermonde_lemma_check(&x, c(5.0, 0.0)).unwrap();
        assert!(r < 1e-8 * v.norm(), "residual {r:e}");
        // Y = 0 reduces to the plain Vandermonde
        let r0 = vandermonde_lemma_check(&x, c(0.0, 0.0)).unwrap();
        assert!(r0 < 1e-13);
        // N=4 with complex entries and complex Y
        let x4 = vec![c(1.3, 0.7), c(-0.6, 0.9), c(0.2, -1.1), c(-1.0, -0.3)];
        let v4 = vandermonde(&x4).norm();
        let r4 = vandermonde_lemma_check(&x4, c(1.0, 1.0)).unwrap();
        assert!(r4 < 1e-7 * v4, "residual {r4:e} vs scale {v4:e}");
    }

    #[test]
    fn hecke_classical_gl2() {
        // S_1(x)² = S_2(x) + 1 under x1 x2 = 1
        let x = torus_unit_det(&[0.8]);
        let r = hecke_relation_check(&x, &[1]).unwrap();
        assert!(r < 1e-10, "residual {r:e}");
    }

    #[test]
    fn hecke_gl3_zero_exponents() {
        let x = torus_unit_det(&[0.6, -1.5]);
        let r = hecke_relation_check(&x, &[0, 0]).unwrap();
        assert!(r < 1e-12);
    }

    #[test]
    fn hecke_gl3_ones() {
        let x = torus_unit_det(&[0.45, 1.8]);
        let r = hecke_relation_check(&x, &[1, 1]).unwrap();
        assert!(r < 1e-9, "residual {r:e}");
    }

    #[test]
    fn hecke_rejects_non_unit_determinant() {
        let x = vec![c(2.0, 0.0), c(1.0, 0.0)];
        assert!(matches!(hecke_relation_check(&x, &[1]), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn euler_factor_n2_unit_circle() {
        // x2 = conj(x1) on the unit circle: e2(x)e2(x̄) = 1, P_2 = 1 - T²
        let x = vec![Complex64::from_polar(1.0, 0.9), Complex64::from_polar(1.0, -0.9)];
        let v = euler_factor(&x, 5).unwrap();
        assert!((v - 0.96).abs() < 1e-10, "got {v}");
    }

    #[test]
    fn euler_factor_n3_matches_product_formula() {
        // self-conjugate torus tuple near (1,1,1)
        let x = vec![
            Complex64::from_polar(1.0, 0.3),
            Complex64::from_polar(1.0, -0.3),
            c(1.0, 0.0),
        ];
        let q = 7.0f64;
        let v = euler_factor(&x, 7).unwrap();
        let a = x.iter().sum::<Complex64>().norm();
        let want = (1.0 - 1.0 / q).powi(2)
            * (1.0 + (1.0 + a) / q + 1.0 / (q * q))
            * (1.0 + (1.0 - a) / q + 1.0 / (q * q));
        assert!((v - want).abs() < 1e-9, "{v} vs {want}");
        assert!(v > 0.0);
    }

    #[test]
    fn euler_factor_rejects_ramanujan_violation() {
        let x = vec![c(3.0, 0.0), c(0.5, 0.0)];
        assert!(matches!(euler_factor(&x, 2), Err(Error::RamanujanViolation { q: 2 })));
    }
}
