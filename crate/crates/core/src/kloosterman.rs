//! Normalized hyper-Kloosterman sums, their full tables over F_p^*, product
//! moment sums and autocorrelations.
//!
//! K_r(u,p) = p^{-(r-1)/2} Σ_{x_1···x_r = u} e((x_1+···+x_r)/p), summed over
//! r-tuples in (F_p^*)^r. The table over all u is computed by reindexing F_p^*
//! through the discrete log, which turns the multiplicative convolution into a
//! cyclic convolution of length p-1, evaluated with an FFT.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::ffield::PrimeContext;

/// The full vector of K_r(u,p) over u ∈ {1..p-1}.
#[derive(Debug, Clone)]
pub struct KloostermanTable {
    rank: u32,
    p: u64,
    values: Vec<Complex64>,
}

impl KloostermanTable {
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// K_r(u,p) for u in 1..p (u taken mod p must be nonzero).
    pub fn value(&self, u: u64) -> Complex64 {
        let u = u % self.p;
        debug_assert!(u != 0);
        self.values[(u - 1) as usize]
    }

    /// K_r at a signed argument reduced mod p; errors on u ≡ 0.
    pub fn value_signed(&self, u: i64) -> Result<Complex64> {
        let r = u.rem_euclid(self.p as i64) as u64;
        if r == 0 {
            return Err(Error::BadResidue(0));
        }
        Ok(self.values[(r - 1) as usize])
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Degenerate value K_r(0,p) = (-1)^{r-1} p^{-(r-1)/2}.
///
/// Forced by the convolution recursion K_r(0) = p^{-1/2}(Σ_x e(x/p))·K_{r-1}(0)
/// with K_1(0) = e(0) = 1; this is the value under which the Voronoï dual sum
/// absorbs the terms with p | m.
pub fn kloosterman_zero(rank: u32, p: u64) -> Complex64 {
    let sign = if (rank - 1) % 2 == 0 { 1.0 } else { -1.0 };
    Complex64::new(sign * (p as f64).powf(-((rank as f64 - 1.0) / 2.0)), 0.0)
}

/// K_r(u,p) by iterated direct convolution, O(r·p²) for the underlying table.
///
/// The recursion K_r(u) = p^{-1/2} Σ_x e(x/p) K_{r-1}(u x̄) is applied r-1
/// times to the base table K_1(u) = e(u/p); only the entry at u is returned.
pub fn kloosterman_naive(ctx: &PrimeContext, rank: u32, u: u64) -> Result<Complex64> {
    let p = ctx.p();
    if u % p == 0 {
        return Err(Error::BadResidue(u));
    }
    let table = naive_table(ctx, rank);
    Ok(table[(u % p - 1) as usize])
}

fn naive_table(ctx: &PrimeContext, rank: u32) -> Vec<Complex64> {
    let p = ctx.p();
    let n = (p - 1) as usize;
    let inv: Vec<u64> = (1..p).map(|u| ctx.inv(u).expect("nonzero")).collect();
    let mut cur: Vec<Complex64> = (1..p).map(|u| ctx.additive_char(u as i64)).collect();
    let scale = 1.0 / (p as f64).sqrt();
    for _ in 1..rank {
        let mut next = vec![Complex64::new(0.0, 0.0); n];
        for (xi, x) in (1..p).enumerate() {
            let ex = ctx.additive_char(x as i64);
            let xinv = inv[xi];
            for u in 1..p {
                // u * x^{-1} mod p indexes the previous-rank table
                let v = u * xinv % p;
                next[(u - 1) as usize] += ex * cur[(v - 1) as usize];
            }
        }
        for z in &mut next {
            *z *= scale;
        }
        cur = next;
    }
    cur
}

/// Full table of K_r(·,p) via FFT cyclic convolution of length p-1.
///
/// The character vector f(j) = e(g^j/p) is convolved with itself r-1 times in
/// the cyclic group Z/(p-1); cyclic convolutions are realized as zero-padded
/// power-of-two FFT products with circular wrap-around.
pub fn kloosterman_table_fft(ctx: &PrimeContext, rank: u32) -> KloostermanTable {
    let p = ctx.p();
    let n = (p - 1) as usize;
    let mut by_log = vec![Complex64::new(0.0, 0.0); n];
    {
        // g^j enumerated once; by_log[j] = e(g^j/p)
        let g = ctx.generator();
        let mut pow = 1u64;
        for item in by_log.iter_mut() {
            *item = ctx.additive_char(pow as i64);
            pow = pow * g % p;
        }
    }
    let scale = 1.0 / (p as f64).sqrt();
    let mut acc = by_log.clone();
    if rank > 1 {
        let mut planner = FftPlanner::new();
        let size = (2 * n - 1).next_power_of_two();
        let fft = planner.plan_fft_forward(size);
        let ifft = planner.plan_fft_inverse(size);
        let mut fa: Vec<Complex64> = by_log.iter().cloned().chain(std::iter::repeat(Complex64::new(0.0, 0.0))).take(size).collect();
        fft.process(&mut fa);
        for _ in 1..rank {
            let mut fb: Vec<Complex64> = acc.iter().cloned().chain(std::iter::repeat(Complex64::new(0.0, 0.0))).take(size).collect();
            fft.process(&mut fb);
            for (b, a) in fb.iter_mut().zip(&fa) {
                *b *= a;
            }
            ifft.process(&mut fb);
            let norm = 1.0 / size as f64;
            // wrap the linear convolution of length 2n-1 back onto Z/n
            for j in 0..n {
                let mut z = fb[j];
                if j + n < 2 * n - 1 {
                    z += fb[j + n];
                }
                acc[j] = z * norm * scale;
            }
        }
    }
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    for u in 1..p {
        values[(u - 1) as usize] = acc[ctx.dlog(u) as usize];
    }
    KloostermanTable { rank, p, values }
}

/// Exponent data of a product moment sum S_{m;n}(c;p).
#[derive(Debug, Clone)]
pub struct MomentSpec {
    pub m: Vec<u32>,
    pub n: Vec<u32>,
    pub c: Vec<u64>,
    pub rank: u32,
}

impl MomentSpec {
    pub fn new(m: Vec<u32>, n: Vec<u32>, c: Vec<u64>, rank: u32) -> Self {
        assert!(!m.is_empty() && m.len() == n.len() && m.len() == c.len());
        Self { m, n, c, rank }
    }

    /// Single-factor spec with shift c = 1.
    pub fn single(m: u32, n: u32, rank: u32) -> Self {
        Self { m: vec![m], n: vec![n], c: vec![1], rank }
    }

    /// Total exponent s = Σ (m_j + n_j); the even-rank main term carries (-1)^s.
    pub fn total_degree(&self) -> u32 {
        self.m.iter().chain(&self.n).sum()
    }

    /// Whether the shifts are pairwise distinct in F_p^*/{±1}.
    pub fn shifts_distinct_mod_sign(&self, p: u64) -> bool {
        let mut seen = std::collections::HashSet::new();
        for &c in &self.c {
            let c = c % p;
            if c == 0 {
                return false;
            }
            let key = c.min(p - c);
            if !seen.insert(key) {
                return false;
            }
        }
        true
    }
}

fn pairwise_sum(v: &mut [Complex64]) -> Complex64 {
    match v.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => v[0],
        _ => {
            let mid = v.len() / 2;
            let (a, b) = v.split_at_mut(mid);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// S_{m;n}(c;p) = (1/p) Σ_{a∈F_p^*} Π_j K_N(a c_j)^{n_j} K_N(-a c_j)^{m_j},
/// accumulated with pairwise summation over a.
pub fn moment_sum(table: &KloostermanTable, spec: &MomentSpec) -> Result<Complex64> {
    if spec.rank != table.rank {
        return Err(Error::RankMismatch { spec: spec.rank, table: table.rank });
    }
    let p = table.p;
    for &c in &spec.c {
        if c % p == 0 {
            return Err(Error::BadResidue(c));
        }
    }
    let mut terms: Vec<Complex64> = Vec::with_capacity((p - 1) as usize);
    for a in 1..p {
        let mut prod = Complex64::new(1.0, 0.0);
        for j in 0..spec.c.len() {
            let ac = a * (spec.c[j] % p) % p;
            let pos = table.value(ac);
            let neg = table.value(p - ac);
            for _ in 0..spec.n[j] {
                prod *= pos;
            }
            for _ in 0..spec.m[j] {
                prod *= neg;
            }
        }
        terms.push(prod);
    }
    Ok(pairwise_sum(&mut terms) / p as f64)
}

/// Σ_{x∈F_p^*} conj(K_r(x,p))·K_r(ax,p).
///
/// Closed forms (over the base field): p-1-p^{-1}-…-p^{-(r-1)} for a ≡ 1 and
/// -1-p^{-1}-…-p^{-(r-1)} otherwise.
pub fn autocorrelation(table: &KloostermanTable, a: u64) -> Result<Complex64> {
    let p = table.p;
    if a % p == 0 {
        return Err(Error::BadResidue(a));
    }
    let a = a % p;
    let mut terms: Vec<Complex64> = (1..p)
        .map(|x| table.value(x).conj() * table.value(a * x % p))
        .collect();
    Ok(pairwise_sum(&mut terms))
}

/// The closed form of the autocorrelation over F_p (base-field case).
pub fn autocorrelation_closed_form(rank: u32, p: u64, a: u64) -> f64 {
    let head = if a % p == 1 { p as f64 - 1.0 } else { -1.0 };
    let mut tail = 0.0;
    for i in 1..rank {
        tail += (p as f64).powi(-(i as i32));
    }
    head - tail
}
