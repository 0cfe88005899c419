//! Prime-field arithmetic, discrete logarithms and additive-character tables.
//!
//! Everything downstream (Kloosterman tables, moment sums, Voronoï dual sums)
//! works over a fixed odd prime p through a [`PrimeContext`]: a primitive root
//! g, the discrete-log table base g, and the table of additive-character
//! values e(k/p) = exp(2πik/p).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Immutable arithmetic substrate for a fixed odd prime.
///
/// Construction is deterministic: the smallest primitive root is chosen, so
/// tables are identical across runs and platforms. Contexts are safe to share
/// read-only between threads.
#[derive(Debug, Clone)]
pub struct PrimeContext {
    p: u64,
    g: u64,
    /// dlog[u-1] = j with g^j ≡ u (mod p), for u in 1..p.
    dlog: Vec<u32>,
    /// char_table[k] = e(k/p) for k in 0..p.
    char_table: Vec<Complex64>,
}

impl PrimeContext {
    /// Builds the full context for an odd prime `p` (supported range 3 ≤ p < 2^31).
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenModulus);
        }
        if p < 3 || !is_prime(p) {
            return Err(Error::CompositeModulus(p));
        }
        if p >= 1 << 31 {
            return Err(Error::CapExceeded { got: p, cap: (1 << 31) - 1 });
        }
        let g = smallest_primitive_root(p);
        let mut dlog = vec![0u32; (p - 1) as usize];
        let mut pow = 1u64;
        for j in 0..(p - 1) {
            dlog[(pow - 1) as usize] = j as u32;
            pow = pow * g % p;
        }
        debug_assert_eq!(pow, 1);
        Ok(Self { p, g, dlog, char_table: build_char_table(p) })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn generator(&self) -> u64 {
        self.g
    }

    /// e(k/p), with k reduced modulo p (negative k allowed).
    pub fn additive_char(&self, k: i64) -> Complex64 {
        let p = self.p as i64;
        let k = k.rem_euclid(p) as usize;
        self.char_table[k]
    }

    /// Discrete logarithm of u base g; u must be in 1..p.
    pub fn dlog(&self, u: u64) -> u32 {
        debug_assert!(u >= 1 && u < self.p);
        self.dlog[(u - 1) as usize]
    }

    /// Multiplicative inverse of u modulo p.
    pub fn inv(&self, u: u64) -> Result<u64> {
        if u % self.p == 0 {
            return Err(Error::BadResidue(u));
        }
        Ok(pow_mod(u % self.p, self.p - 2, self.p))
    }
}

/// char_table built from the single angle 2π/p by repeated multiplication,
/// renormalized every 64 steps to keep the drift below 1e-13 for p < 1e7.
fn build_char_table(p: u64) -> Vec<Complex64> {
    let theta = 2.0 * std::f64::consts::PI / p as f64;
    let step = Complex64::new(theta.cos(), theta.sin());
    let mut table = Vec::with_capacity(p as usize);
    let mut z = Complex64::new(1.0, 0.0);
    for k in 0..p {
        if k % 64 == 0 {
            let angle = theta * k as f64;
            z = Complex64::new(angle.cos(), angle.sin());
        }
        table.push(z);
        z *= step;
    }
    table
}

/// x^e mod m with 128-bit intermediates.
pub fn pow_mod(mut x: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    x %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * x as u128) % m as u128) as u64;
        }
        x = ((x as u128 * x as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, with a witness set valid for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest primitive root of the odd prime p, by checking
/// g^((p-1)/q) ≠ 1 for every prime q | p-1.
fn smallest_primitive_root(p: u64) -> u64 {
    let order = p - 1;
    let factors = distinct_prime_factors(order);
    'outer: for g in 2..p {
        for &q in &factors {
            if pow_mod(g, order / q, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("every odd prime has a primitive root");
}

/// Legendre symbol (a|p) by Euler's criterion.
pub fn legendre_symbol(a: i64, p: u64) -> i32 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let e = pow_mod(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}
