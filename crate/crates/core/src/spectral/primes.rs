//! Prime windows and good-prime selection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::SpectralError;

/// Widest window [`primes_in`] scans by default.
pub const DEFAULT_WINDOW_BUDGET: u64 = 1 << 26;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve primes as witnesses are
/// sufficient for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Half-open interval `(p_min, p_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeWindow {
    p_min: u64,
    p_max: u64,
}

impl PrimeWindow {
    pub fn new(p_min: u64, p_max: u64) -> Result<Self, SpectralError> {
        if p_min < 2 || p_max <= p_min || p_max > 1 << 63 {
            return Err(SpectralError::InvalidWindow { p_min, p_max });
        }
        Ok(Self { p_min, p_max })
    }

    pub fn p_min(&self) -> u64 {
        self.p_min
    }

    pub fn p_max(&self) -> u64 {
        self.p_max
    }

    pub fn contains(&self, p: u64) -> bool {
        self.p_min < p && p <= self.p_max
    }
}

/// All primes in the window, ascending.
pub fn primes_in(window: PrimeWindow) -> Result<Vec<u64>, SpectralError> {
    primes_in_with_budget(window, DEFAULT_WINDOW_BUDGET)
}

pub fn primes_in_with_budget(window: PrimeWindow, budget: u64) -> Result<Vec<u64>, SpectralError> {
    let width = window.p_max - window.p_min;
    if width > budget {
        return Err(SpectralError::WindowTooLarge { width, budget });
    }
    Ok(PrimeIter::new(window).collect())
}

/// Lazy ascending iterator over the primes of a window.
pub struct PrimeIter {
    next: u64,
    end: u64,
}

impl PrimeIter {
    pub fn new(window: PrimeWindow) -> Self {
        Self {
            next: window.p_min + 1,
            end: window.p_max,
        }
    }
}

impl Iterator for PrimeIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next <= self.end {
            let n = self.next;
            self.next += 1;
            if is_prime(n) {
                return Some(n);
            }
        }
        None
    }
}

/// Whether every fraction `a/p` with `0 < a < p` stays more than
/// `1 / (2 max_p^2)` away from `alpha`. Exact rational arithmetic.
pub fn avoids(alpha: f64, p: u64, max_p: u64) -> bool {
    let alpha = BigRational::from_float(alpha).expect("finite alpha");
    let gap = BigRational::new(1.into(), BigInt::from(2) * BigInt::from(max_p).pow(2));
    let p_big = BigInt::from(p);
    let nearest = (&alpha * &p_big).round().to_integer();
    let centre = nearest.to_i128().unwrap_or(i128::MAX / 2);
    (centre - 1..=centre + 1)
        .filter(|&a| 0 < a && a < p as i128)
        .all(|a| {
            let frac = BigRational::new(BigInt::from(a), p_big.clone());
            (frac - &alpha).abs() > gap
        })
}

/// First prime in `primes` whose nontrivial fractions all avoid every alpha.
/// Only the fractions nearest each alpha need checking: they are the closest
/// candidates, so if they clear the gap all others do.
///
/// With at least `alphas.len() + 1` primes such a prime always exists; the
/// function panics otherwise.
pub fn good_prime(alphas: &[f64], primes: &[u64]) -> u64 {
    assert!(
        primes.len() > alphas.len(),
        "need more primes than frequencies"
    );
    let max_p = *primes.iter().max().expect("nonempty");
    primes
        .iter()
        .copied()
        .find(|&p| alphas.iter().all(|&alpha| avoids(alpha, p, max_p)))
        .expect("pigeonhole guarantees a good prime")
}
