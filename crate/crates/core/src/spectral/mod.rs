//! Evaluation of sparse polynomials at prime-order roots of unity.
//!
//! All magnitudes reported here are rigorous: values come from ball
//! arithmetic and every comparison uses the lower or upper end of a ball,
//! never its center. Exponents are reduced modulo `p` before evaluation, so
//! lacunary degrees cost nothing.

pub mod ball;
pub mod primes;

use std::f64::consts::PI;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::bounds::{log2_big, max_of, Log2Sum};
use crate::error::{PolyError, SpectralError};
use crate::poly::SparsePoly;

pub use ball::{Ball, ComplexBall, Round};
pub use primes::{good_prime, is_prime, primes_in, PrimeIter, PrimeWindow};

/// Working precision the harness starts from.
pub const DEFAULT_PRECISION_BITS: u32 = 128;
/// Largest precision the harness escalates to.
pub const DEFAULT_PRECISION_CEILING: u32 = 4096;
/// Extra fractional bits carried internally on top of the requested
/// precision. Root tables accumulate at most a few thousand ulps of error,
/// so results stay within `||g||_1 * 2^-precision_bits`.
pub const GUARD_BITS: u32 = 32;

/// Start precision and doubling ceiling for rigorous evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub ceiling_bits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        Self {
            start_bits: DEFAULT_PRECISION_BITS,
            ceiling_bits: DEFAULT_PRECISION_CEILING,
        }
    }
}

impl PrecisionPolicy {
    fn check(&self, bits: u32) -> Result<(), SpectralError> {
        if bits == 0 || bits > self.ceiling_bits {
            Err(SpectralError::PrecisionBudget {
                bits,
                ceiling: self.ceiling_bits,
            })
        } else {
            Ok(())
        }
    }
}

fn require_prime(p: u64) -> Result<(), SpectralError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(SpectralError::BadPrime(p))
    }
}

fn residue(e: &BigUint, p: u64) -> u64 {
    (e % p).to_u64().expect("residue below p")
}

/// Encloses `e^{2 pi i m / p}` directly from the Taylor series.
fn root_direct(m: u64, p: u64, pi: &Ball) -> ComplexBall {
    let prec = pi.prec();
    if m == 0 {
        return ComplexBall::one(prec);
    }
    // centre the angle in [-pi, pi]
    let k = if 2 * m > p {
        -BigInt::from(p - m)
    } else {
        BigInt::from(m)
    };
    let angle = pi.mul_int(&(k * 2)).div_u64(p);
    ComplexBall::expi(&angle)
}

/// All powers `w^k`, `0 <= k < p`, of `w = e^{2 pi i / p}`.
pub struct RootTable {
    p: u64,
    roots: Vec<ComplexBall>,
}

impl RootTable {
    pub fn new(p: u64, precision_bits: u32) -> Self {
        assert!(p >= 2, "root table needs p >= 2");
        let prec = precision_bits + GUARD_BITS;
        let pi = Ball::pi(prec);
        let w = root_direct(1, p, &pi);
        let n = usize::try_from(p).expect("table size");
        let mut roots = vec![ComplexBall::zero(prec); n];
        roots[0] = ComplexBall::one(prec);
        for k in 1..=n / 2 {
            roots[k] = roots[k - 1].mul(&w);
        }
        // w^(p-k) is the conjugate of w^k
        for k in n / 2 + 1..n {
            roots[k] = roots[n - k].conj();
        }
        Self { p, roots }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn root(&self, k: u64) -> &ComplexBall {
        &self.roots[(k % self.p) as usize]
    }

    /// Encloses `g(w^a)`.
    pub fn eval(&self, g: &SparsePoly, a: u64) -> ComplexBall {
        let reduced = reduce_exponents(g, self.p);
        self.eval_reduced(&reduced, a)
    }

    fn eval_reduced(&self, reduced: &[(u64, &BigInt)], a: u64) -> ComplexBall {
        let prec = self.roots[0].prec();
        let mut acc = ComplexBall::zero(prec);
        for &(e, c) in reduced {
            let k = (u128::from(a) * u128::from(e) % u128::from(self.p)) as u64;
            acc = acc.add(&self.roots[k as usize].mul_int(c));
        }
        acc
    }
}

fn reduce_exponents(g: &SparsePoly, p: u64) -> Vec<(u64, &BigInt)> {
    g.terms()
        .iter()
        .map(|t| (residue(t.exponent(), p), t.coefficient()))
        .collect()
}

/// Rigorous enclosure of `g(e^{2 pi i a / p})`.
///
/// The radius is at most `||g||_1 * 2^-precision_bits`.
pub fn eval_at_pth_root(
    g: &SparsePoly,
    p: u64,
    a: u64,
    precision_bits: u32,
) -> Result<ComplexBall, SpectralError> {
    require_prime(p)?;
    if a >= p {
        return Err(SpectralError::BadRootIndex { a, p });
    }
    PrecisionPolicy::default().check(precision_bits)?;
    let prec = precision_bits + GUARD_BITS;
    let pi = Ball::pi(prec);
    let mut acc = ComplexBall::zero(prec);
    for t in g.terms() {
        let m = (u128::from(a) * u128::from(residue(t.exponent(), p)) % u128::from(p)) as u64;
        acc = acc.add(&root_direct(m, p, &pi).mul_int(t.coefficient()));
    }
    Ok(acc)
}

/// Lower and upper bounds on `min |g(w)|` over nontrivial `p`-th roots.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinBounds {
    pub lower: f64,
    pub upper: f64,
    pub precision_bits: u32,
}

fn min_bounds_at(g: &SparsePoly, p: u64, precision_bits: u32) -> MinBounds {
    if g.sparsity() == 1 {
        // |c w^k| = |c| exactly
        let c = g.lc().expect("nonzero").magnitude();
        let lower = ball::to_f64(c, 0, Round::Down);
        let upper = ball::to_f64(c, 0, Round::Up);
        return MinBounds {
            lower,
            upper,
            precision_bits,
        };
    }
    let table = RootTable::new(p, precision_bits);
    let reduced = reduce_exponents(g, p);
    let mut lower = f64::INFINITY;
    let mut upper = f64::INFINITY;
    for a in 1..p {
        let value = table.eval_reduced(&reduced, a);
        lower = lower.min(value.abs_lower());
        upper = upper.min(value.abs_upper());
    }
    MinBounds {
        lower,
        upper,
        precision_bits,
    }
}

/// Bounds on `min |g(w)|`, escalating precision while some evaluation ball
/// still contains zero.
pub fn min_eval_bounds(
    g: &SparsePoly,
    p: u64,
    policy: PrecisionPolicy,
) -> Result<MinBounds, SpectralError> {
    if g.is_zero() {
        return Err(PolyError::ZeroPolynomial.into());
    }
    require_prime(p)?;
    if p < 3 {
        return Err(SpectralError::BadPrime(p));
    }
    policy.check(policy.start_bits)?;
    let mut bits = policy.start_bits;
    loop {
        let bounds = min_bounds_at(g, p, bits);
        if bounds.lower > 0.0 {
            return Ok(bounds);
        }
        if bits >= policy.ceiling_bits {
            return Err(SpectralError::Indeterminate { p, bits });
        }
        bits = (bits * 2).min(policy.ceiling_bits);
    }
}

/// Rigorous lower bound on `min_{0 < a < p} |g(e^{2 pi i a / p})|`.
pub fn min_eval_on_pth_roots(
    g: &SparsePoly,
    p: u64,
    precision_bits: u32,
) -> Result<f64, SpectralError> {
    let policy = PrecisionPolicy {
        start_bits: precision_bits,
        ..PrecisionPolicy::default()
    };
    min_eval_bounds(g, p, policy).map(|b| b.lower)
}

/// The prime window `(p_min, p_max]` with
/// `p_max = ceil(2 L(p_min + 12 s (deg g - ord0 g)))`, and the threshold
/// `Max * (pi / (sqrt(2) s p_max^2))^(s - 1)` rounded down, where
/// `s = ||g||_0` and `L(n) = n ln n`.
pub fn lemma_window_and_rhs(
    g: &SparsePoly,
    p_min: u64,
) -> Result<(PrimeWindow, f64), SpectralError> {
    let (max, _) = max_of(g).map_err(|e| match e {
        crate::error::BoundError::Poly(p) => SpectralError::Poly(p),
        _ => unreachable!("max_of only fails on zero input"),
    })?;
    let s = g.sparsity();
    let width = g.support_width()?;
    let too_large = || SpectralError::InvalidWindow {
        p_min,
        p_max: u64::MAX,
    };
    let spread = width
        .to_u64()
        .and_then(|w| w.checked_mul(12 * s as u64))
        .ok_or_else(too_large)?;
    let t = p_min.checked_add(spread).ok_or_else(too_large)?;
    let t_f = t as f64;
    let p_max = (2.0 * t_f * t_f.ln()).ceil();
    if p_max.is_nan() || p_max >= 2f64.powi(63) {
        return Err(too_large());
    }
    let window = PrimeWindow::new(p_min, p_max as u64)?;

    let rhs = if s == 1 {
        ball::to_f64(&max, 0, Round::Down)
    } else {
        let mut sum = Log2Sum::default();
        sum.add(log2_big(&max));
        let per_factor = PI.log2() - 0.5 - (s as f64).log2() - 2.0 * (window.p_max() as f64).log2();
        sum.add((s - 1) as f64 * per_factor);
        sum.down().exp2().next_down()
    };
    Ok((window, rhs))
}

/// A prime at which `|g|` provably clears the lemma's threshold on every
/// nontrivial root of unity.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalCertificate {
    pub prime: u64,
    /// Rigorous lower bound on `min |g(w)|`, rounded down.
    pub min_abs_lower: f64,
    /// The threshold, rounded down.
    pub theoretical_rhs: f64,
    pub satisfied: bool,
    pub window: PrimeWindow,
    pub precision_bits: u32,
    /// Primes examined before this one succeeded.
    pub primes_rejected: usize,
}

impl fmt::Display for EvalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "prime={}", self.prime)?;
        writeln!(f, "min_abs_lower={:.16e}", self.min_abs_lower)?;
        writeln!(f, "min_abs_lower_rounding=down")?;
        writeln!(f, "rhs={:.16e}", self.theoretical_rhs)?;
        writeln!(f, "rhs_rounding=down")?;
        writeln!(f, "satisfied={}", self.satisfied)?;
        writeln!(f, "p_min={}", self.window.p_min())?;
        writeln!(f, "p_max={}", self.window.p_max())?;
        writeln!(f, "precision_bits={}", self.precision_bits)?;
        writeln!(f, "primes_rejected={}", self.primes_rejected)
    }
}

pub fn certify_evaluation_bound(
    g: &SparsePoly,
    p_min: u64,
) -> Result<EvalCertificate, SpectralError> {
    certify_evaluation_bound_with(g, p_min, PrecisionPolicy::default())
}

/// Scans the lemma's window for the first prime whose nontrivial roots of
/// unity all certify `|g(w)| >= rhs`. Primes where `g` may vanish are
/// skipped once the precision ceiling is reached.
pub fn certify_evaluation_bound_with(
    g: &SparsePoly,
    p_min: u64,
    policy: PrecisionPolicy,
) -> Result<EvalCertificate, SpectralError> {
    policy.check(policy.start_bits)?;
    let (window, rhs) = lemma_window_and_rhs(g, p_min)?;
    for (rejected, p) in PrimeIter::new(window).enumerate() {
        let mut bits = policy.start_bits;
        loop {
            let bounds = min_bounds_at(g, p, bits);
            if bounds.lower >= rhs {
                return Ok(EvalCertificate {
                    prime: p,
                    min_abs_lower: bounds.lower,
                    theoretical_rhs: rhs,
                    satisfied: true,
                    window,
                    precision_bits: bits,
                    primes_rejected: rejected,
                });
            }
            if bounds.upper < rhs || bits >= policy.ceiling_bits {
                break;
            }
            bits = (bits * 2).min(policy.ceiling_bits);
        }
    }
    Err(SpectralError::NoCertificate {
        p_min: window.p_min(),
        p_max: window.p_max(),
    })
}

/// Upper bound on `| ||h||_2^2 - (1/p) sum_a |h(w^a)|^2 |`.
pub fn parseval_residual(h: &SparsePoly, p: u64, precision_bits: u32) -> Result<f64, SpectralError> {
    require_prime(p)?;
    PrecisionPolicy::default().check(precision_bits)?;
    if let Some(degree) = h.degree() {
        if *degree >= BigUint::from(p) {
            return Err(SpectralError::PrimeTooSmall {
                p,
                required: degree.to_string(),
            });
        }
    }
    let table = RootTable::new(p, precision_bits);
    let prec = precision_bits + GUARD_BITS;
    let reduced = reduce_exponents(h, p);
    let mut total = Ball::zero(prec);
    for a in 0..p {
        total = total.add(&table.eval_reduced(&reduced, a).norm_sqr());
    }
    let mean = total.div_u64(p);
    let exact = Ball::from_int(BigInt::from(h.norms().l2_squared), prec);
    Ok(mean.sub(&exact).abs_upper_f64())
}

/// `sqrt(2) ||f||_1 / min |g(w)|` over nontrivial `p`-th roots, rounded up:
/// an upper bound on `||f / g||_2` whenever `g | f`.
pub fn dft_cofactor_upper(
    f: &SparsePoly,
    g: &SparsePoly,
    p: u64,
    precision_bits: u32,
) -> Result<f64, SpectralError> {
    require_prime(p)?;
    let deg_f = f.degree().cloned().unwrap_or_default();
    if BigUint::from(p) <= &deg_f * 2u32 {
        return Err(SpectralError::PrimeTooSmall {
            p,
            required: (deg_f * 2u32).to_string(),
        });
    }
    let l1 = f.norms().l1;
    if l1.is_zero() {
        return Ok(0.0);
    }
    let lower = min_eval_on_pth_roots(g, p, precision_bits)?;
    let l1_up = ball::to_f64(&l1, 0, Round::Up);
    let numerator = (std::f64::consts::SQRT_2.next_up() * l1_up).next_up();
    Ok((numerator / lower).next_up())
}
