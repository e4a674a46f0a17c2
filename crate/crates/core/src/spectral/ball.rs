//! Fixed-point ball arithmetic.
//!
//! A [`Ball`] at precision `prec` is a pair of integers `(mid, rad)` standing
//! for the interval `[(mid - rad) 2^-prec, (mid + rad) 2^-prec]`. Every
//! operation returns a ball that contains the exact result for all inputs in
//! the argument balls. Truncation errors are at most one unit in the last
//! place per operation and are always added to the radius.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigUint,
    prec: u32,
}

/// `ceil(n / 2^shift)`.
fn shr_ceil(n: &BigUint, shift: u32) -> BigUint {
    let q: BigUint = n >> shift;
    if (&q << shift) == *n {
        q
    } else {
        q + 1u32
    }
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Self {
            mid: BigInt::zero(),
            rad: BigUint::zero(),
            prec,
        }
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        Self {
            mid: n.into() << prec,
            rad: BigUint::zero(),
            prec,
        }
    }

    /// Exact ball for the dyadic value `mid * 2^-prec` widened by `rad` ulps.
    pub fn from_parts(mid: BigInt, rad: BigUint, prec: u32) -> Self {
        Self { mid, rad, prec }
    }

    /// Encloses the rational `num / den` (`den > 0`).
    pub fn from_ratio(num: &BigInt, den: &BigUint, prec: u32) -> Self {
        let scaled: BigInt = num << prec;
        let den = BigInt::from(den.clone());
        let (q, r) = scaled.div_mod_floor(&den);
        Self {
            mid: q,
            rad: if r.is_zero() { BigUint::zero() } else { BigUint::one() },
            prec,
        }
    }

    /// Encloses an `f64` exactly when representable at this precision.
    pub fn from_f64(x: f64, prec: u32) -> Self {
        let ratio = num_rational::BigRational::from_float(x).expect("finite input");
        let den = ratio.denom().magnitude().clone();
        Self::from_ratio(ratio.numer(), &den, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad(&self) -> &BigUint {
        &self.rad
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.prec, other.prec, "mixed ball precisions");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        Self {
            mid: &self.mid + &other.mid,
            rad: &self.rad + &other.rad,
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        Self {
            mid: &self.mid - &other.mid,
            rad: &self.rad + &other.rad,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            mid: -&self.mid,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let product = &self.mid * &other.mid;
        let spread = self.mid.magnitude() * &other.rad
            + other.mid.magnitude() * &self.rad
            + &self.rad * &other.rad;
        Self {
            // arithmetic shift floors, so the truncation error is below one ulp
            mid: product >> self.prec,
            rad: shr_ceil(&spread, self.prec) + 1u32,
            prec: self.prec,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self {
            mid: &self.mid * k,
            rad: &self.rad * k.magnitude(),
            prec: self.prec,
        }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: &BigUint) -> Self {
        assert!(!k.is_zero(), "division by zero");
        let den = BigInt::from(k.clone());
        let (q, r) = self.mid.div_mod_floor(&den);
        let (rq, rr) = self.rad.div_rem(k);
        let extra = u32::from(!r.is_zero()) + u32::from(!rr.is_zero());
        Self {
            mid: q,
            rad: rq + extra,
            prec: self.prec,
        }
    }

    pub fn div_u64(&self, k: u64) -> Self {
        self.div_int(&BigUint::from(k))
    }

    /// Adds `extra` ulps of uncertainty.
    pub fn widen(&self, extra: &BigUint) -> Self {
        Self {
            mid: self.mid.clone(),
            rad: &self.rad + extra,
            prec: self.prec,
        }
    }

    /// Upper bound on `|x|` in ulps.
    pub fn abs_upper_ulps(&self) -> BigUint {
        self.mid.magnitude() + &self.rad
    }

    /// Lower bound on `|x|` in ulps (zero if the ball straddles zero).
    pub fn abs_lower_ulps(&self) -> BigUint {
        let m = self.mid.magnitude();
        if *m > self.rad {
            m - &self.rad
        } else {
            BigUint::zero()
        }
    }

    pub fn contains_zero(&self) -> bool {
        *self.mid.magnitude() <= self.rad
    }

    /// Lower end of the ball, rounded down to `f64`.
    pub fn lower_f64(&self) -> f64 {
        signed_to_f64(&(&self.mid - BigInt::from(self.rad.clone())), self.prec, Round::Down)
    }

    /// Upper end of the ball, rounded up to `f64`.
    pub fn upper_f64(&self) -> f64 {
        signed_to_f64(&(&self.mid + BigInt::from(self.rad.clone())), self.prec, Round::Up)
    }

    pub fn abs_upper_f64(&self) -> f64 {
        to_f64(&self.abs_upper_ulps(), -i64::from(self.prec), Round::Up)
    }

    pub fn abs_lower_f64(&self) -> f64 {
        to_f64(&self.abs_lower_ulps(), -i64::from(self.prec), Round::Down)
    }

    /// Approximate center.
    pub fn center_f64(&self) -> f64 {
        signed_to_f64(&self.mid, self.prec, Round::Down)
    }

    /// Strictly below `other` for every pair of enclosed values.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.check(other);
        let hi = &self.mid + BigInt::from(self.rad.clone());
        let lo = &other.mid - BigInt::from(other.rad.clone());
        hi.cmp(&lo) == Ordering::Less
    }

    /// Encloses `pi` using Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi(prec: u32) -> Self {
        let work = prec + 16;
        let a = atan_inverse(5, work).mul_int(&BigInt::from(16));
        let b = atan_inverse(239, work).mul_int(&BigInt::from(4));
        a.sub(&b).with_prec(prec)
    }

    /// Re-express at a lower precision, rounding outward.
    pub fn with_prec(&self, prec: u32) -> Self {
        match prec.cmp(&self.prec) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => Self {
                mid: &self.mid << (prec - self.prec),
                rad: &self.rad << (prec - self.prec),
                prec,
            },
            Ordering::Less => {
                let shift = self.prec - prec;
                Self {
                    mid: &self.mid >> shift,
                    rad: shr_ceil(&self.rad, shift) + 1u32,
                    prec,
                }
            }
        }
    }

    /// Encloses `(cos x, sin x)` for every `x` in the ball; requires
    /// `|x| <= 4`.
    pub fn cos_sin(&self) -> (Ball, Ball) {
        let four = BigUint::from(4u32) << self.prec;
        assert!(self.abs_upper_ulps() <= four, "cos_sin argument out of range");
        let prec = self.prec;
        let mut cos = Ball::from_int(1, prec);
        let mut sin = Ball::zero(prec);
        let mut term = Ball::from_int(1, prec);
        let mut j: u64 = 0;
        loop {
            j += 1;
            term = term.mul(self).div_u64(j);
            match j % 4 {
                1 => sin = sin.add(&term),
                2 => cos = cos.sub(&term),
                3 => sin = sin.sub(&term),
                _ => cos = cos.add(&term),
            }
            // Once j + 1 >= 2|x| the remaining terms shrink geometrically by
            // at least 1/2, so their sum is bounded by the last included term.
            if j >= 8 && term.abs_upper_ulps() <= BigUint::one() {
                let tail = term.abs_upper_ulps();
                return (cos.widen(&tail), sin.widen(&tail));
            }
        }
    }
}

/// Encloses `atan(1/k)` for an integer `k >= 2`.
fn atan_inverse(k: u64, prec: u32) -> Ball {
    let k2 = BigUint::from(k * k);
    // floor(floor(a)/n) == floor(a/n), so `power` is exactly floor(2^prec / k^(2n+1))
    let mut power = (BigUint::one() << prec) / k;
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    while !power.is_zero() {
        let term = BigInt::from(&power / (2 * n + 1));
        if n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        n += 1;
    }
    // two ulps per included term, plus the alternating tail below one ulp
    Ball::from_parts(sum, BigUint::from(2 * n + 1), prec)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

fn pow2(e: i64) -> f64 {
    debug_assert!((-1022..=1023).contains(&e));
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// `n * 2^scale` rounded to `f64` in the given direction.
pub fn to_f64(n: &BigUint, scale: i64, round: Round) -> f64 {
    if n.is_zero() {
        return 0.0;
    }
    let bits = n.bits() as i64;
    let shift = (bits - 53).max(0);
    let mut mantissa = u64::try_from(&(n >> shift as u32)).expect("53-bit mantissa");
    let exact = shift == 0 || (BigUint::from(mantissa) << shift as u32) == *n;
    let exp = scale + shift;
    // the value lies in [2^(top - 1), 2^top)
    let top = exp + bits.min(53);
    if top > 1024 {
        return match round {
            Round::Up => f64::INFINITY,
            Round::Down => f64::MAX,
        };
    }
    if exp < -1022 {
        return match round {
            Round::Down => 0.0,
            Round::Up => pow2(top.max(-1022)),
        };
    }
    if round == Round::Up && !exact {
        mantissa += 1;
    }
    mantissa as f64 * pow2(exp)
}

/// Signed fixed-point value at `prec` fractional bits, directed rounding.
pub fn signed_to_f64(n: &BigInt, prec: u32, round: Round) -> f64 {
    let scale = -i64::from(prec);
    match n.sign() {
        Sign::Minus => {
            let flipped = match round {
                Round::Down => Round::Up,
                Round::Up => Round::Down,
            };
            -to_f64(n.magnitude(), scale, flipped)
        }
        _ => to_f64(n.magnitude(), scale, round),
    }
}

/// Complex ball as a rectangle of two real balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn zero(prec: u32) -> Self {
        Self {
            re: Ball::zero(prec),
            im: Ball::zero(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Self {
            re: Ball::from_int(1, prec),
            im: Ball::zero(prec),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self {
            re: self.re.mul_int(k),
            im: self.im.mul_int(k),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// `e^{i x}` for a real ball with `|x| <= 4`.
    pub fn expi(x: &Ball) -> Self {
        let (re, im) = x.cos_sin();
        Self { re, im }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn real_center(&self) -> f64 {
        self.re.center_f64()
    }

    pub fn imag_center(&self) -> f64 {
        self.im.center_f64()
    }

    /// Upper bound on the distance from the center to any enclosed value.
    pub fn radius(&self) -> f64 {
        to_f64(&(self.re.rad() + self.im.rad()), -i64::from(self.prec()), Round::Up)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Rigorous lower bound on `|z|`.
    pub fn abs_lower(&self) -> f64 {
        let (a, b) = (self.re.abs_lower_ulps(), self.im.abs_lower_ulps());
        let root = (&a * &a + &b * &b).sqrt();
        to_f64(&root, -i64::from(self.prec()), Round::Down)
    }

    /// Rigorous upper bound on `|z|`.
    pub fn abs_upper(&self) -> f64 {
        let (a, b) = (self.re.abs_upper_ulps(), self.im.abs_upper_ulps());
        let square = &a * &a + &b * &b;
        let root = square.sqrt();
        let root = if &root * &root == square { root } else { root + 1u32 };
        to_f64(&root, -i64::from(self.prec()), Round::Up)
    }

    /// Ball enclosing `|z|^2`.
    pub fn norm_sqr(&self) -> Ball {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Whether two balls may hold the same value.
    pub fn overlaps(&self, other: &Self) -> bool {
        self.sub(other).contains_zero()
    }
}
