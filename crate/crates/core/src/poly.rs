//! Sparse univariate polynomials over the integers.
//!
//! A [`SparsePoly`] stores only its nonzero terms, sorted by strictly
//! increasing exponent. Exponents are unbounded, so a polynomial such as
//! `x^(2^100) - 1` costs two terms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// A single nonzero term `coefficient * x^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    exponent: BigUint,
    coefficient: BigInt,
}

impl Term {
    /// Returns `None` when the coefficient is zero.
    pub fn new(exponent: impl Into<BigUint>, coefficient: impl Into<BigInt>) -> Option<Self> {
        let coefficient = coefficient.into();
        if coefficient.is_zero() {
            None
        } else {
            Some(Self {
                exponent: exponent.into(),
                coefficient,
            })
        }
    }

    pub fn exponent(&self) -> &BigUint {
        &self.exponent
    }

    pub fn coefficient(&self) -> &BigInt {
        &self.coefficient
    }

    pub fn into_parts(self) -> (BigUint, BigInt) {
        (self.exponent, self.coefficient)
    }
}

/// Norms of a polynomial's coefficient vector.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Norms {
    /// Number of nonzero terms.
    pub sparsity: usize,
    pub l1: BigUint,
    /// Squared Euclidean norm, kept squared so it stays exact.
    pub l2_squared: BigUint,
    /// Largest absolute coefficient.
    pub height: BigUint,
}

/// A polynomial in canonical sparse form.
///
/// Invariants: exponents strictly increasing, no zero coefficients, and the
/// empty term list is the zero polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    terms: Vec<Term>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0u32, c)
    }

    pub fn monomial(exponent: impl Into<BigUint>, coefficient: impl Into<BigInt>) -> Self {
        Self {
            terms: Term::new(exponent, coefficient).into_iter().collect(),
        }
    }

    /// Builds a canonical polynomial from `(exponent, coefficient)` pairs in
    /// any order. Like terms are merged and zeros dropped.
    pub fn from_pairs<E, C, I>(pairs: I) -> Self
    where
        E: Into<BigUint>,
        C: Into<BigInt>,
        I: IntoIterator<Item = (E, C)>,
    {
        let raw = pairs
            .into_iter()
            .map(|(e, c)| (e.into(), c.into()))
            .collect::<Vec<_>>();
        Self::from_raw(raw)
    }

    /// Dense constructor: `coeffs[i]` is the coefficient of `x^i`.
    pub fn from_coeffs<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_pairs(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (BigUint::from(i), c.into())),
        )
    }

    pub(crate) fn from_raw(mut raw: Vec<(BigUint, BigInt)>) -> Self {
        raw.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for (exponent, coefficient) in raw {
            match terms.last_mut() {
                Some(last) if last.exponent == exponent => last.coefficient += coefficient,
                _ => {
                    if let Some(last) = terms.last() {
                        if last.coefficient.is_zero() {
                            terms.pop();
                        }
                    }
                    terms.push(Term {
                        exponent,
                        coefficient,
                    });
                }
            }
        }
        if terms.last().is_some_and(|t| t.coefficient.is_zero()) {
            terms.pop();
        }
        let poly = Self { terms };
        debug_assert!(poly.is_canonical());
        poly
    }

    /// Wraps terms that are already sorted, distinct and nonzero.
    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Self {
        let poly = Self { terms };
        debug_assert!(poly.is_canonical());
        poly
    }

    /// Checks the representation invariants.
    pub fn is_canonical(&self) -> bool {
        self.terms.iter().all(|t| !t.coefficient.is_zero())
            && self
                .terms
                .windows(2)
                .all(|w| w[0].exponent < w[1].exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    /// Number of nonzero terms.
    pub fn sparsity(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `x^exponent` (zero when absent).
    pub fn coefficient(&self, exponent: &BigUint) -> BigInt {
        self.terms
            .binary_search_by(|t| t.exponent.cmp(exponent))
            .map(|i| self.terms[i].coefficient.clone())
            .unwrap_or_default()
    }

    pub fn norms(&self) -> Norms {
        let mut norms = Norms {
            sparsity: self.terms.len(),
            ..Norms::default()
        };
        for t in &self.terms {
            let abs = t.coefficient.magnitude();
            norms.l1 += abs;
            norms.l2_squared += abs * abs;
            if *abs > norms.height {
                norms.height = abs.clone();
            }
        }
        norms
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<&BigUint> {
        self.terms.last().map(|t| &t.exponent)
    }

    /// Largest `i` with `x^i | self`, i.e. the smallest exponent.
    pub fn ord0(&self) -> Result<&BigUint, PolyError> {
        self.terms
            .first()
            .map(|t| &t.exponent)
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_term(&self) -> Result<&Term, PolyError> {
        self.terms.last().ok_or(PolyError::ZeroPolynomial)
    }

    pub fn trailing_term(&self) -> Result<&Term, PolyError> {
        self.terms.first().ok_or(PolyError::ZeroPolynomial)
    }

    /// Leading coefficient.
    pub fn lc(&self) -> Result<&BigInt, PolyError> {
        self.leading_term().map(|t| &t.coefficient)
    }

    /// Trailing coefficient (coefficient of the smallest exponent).
    pub fn tc(&self) -> Result<&BigInt, PolyError> {
        self.trailing_term().map(|t| &t.coefficient)
    }

    /// `deg - ord0`, the width of the support.
    pub fn support_width(&self) -> Result<BigUint, PolyError> {
        Ok(self.leading_term()?.exponent.clone() - self.ord0()?)
    }

    /// Divides out the largest power of `x`: `g / x^ord0(g)`.
    pub fn strip_to_g0(&self) -> Result<Self, PolyError> {
        let shift = self.ord0()?.clone();
        Ok(self.shift_down(&shift))
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: &BigUint) -> Self {
        Self::from_sorted_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    exponent: &t.exponent + k,
                    coefficient: t.coefficient.clone(),
                })
                .collect(),
        )
    }

    /// Divides by `x^k`. Panics if `k > ord0`.
    pub(crate) fn shift_down(&self, k: &BigUint) -> Self {
        Self::from_sorted_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    exponent: &t.exponent - k,
                    coefficient: t.coefficient.clone(),
                })
                .collect(),
        )
    }

    /// `x^deg(g) * g(1/x)`.
    pub fn reverse(&self) -> Result<Self, PolyError> {
        let degree = self.leading_term()?.exponent.clone();
        Ok(Self::from_sorted_terms(
            self.terms
                .iter()
                .rev()
                .map(|t| Term {
                    exponent: &degree - &t.exponent,
                    coefficient: t.coefficient.clone(),
                })
                .collect(),
        ))
    }

    pub fn derivative(&self) -> Self {
        Self::from_sorted_terms(
            self.terms
                .iter()
                .filter(|t| !t.exponent.is_zero())
                .map(|t| Term {
                    exponent: &t.exponent - 1u32,
                    coefficient: &t.coefficient * BigInt::from(t.exponent.clone()),
                })
                .collect(),
        )
    }

    /// Product of `deg - e` over every non-leading exponent `e` of the
    /// support; `1` for monomials.
    pub fn d_value(&self) -> Result<BigUint, PolyError> {
        let degree = &self.leading_term()?.exponent;
        let (_, rest) = self.terms.split_last().expect("nonzero");
        Ok(rest
            .iter()
            .fold(BigUint::one(), |acc, t| acc * (degree - &t.exponent)))
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self::from_sorted_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    exponent: t.exponent.clone(),
                    coefficient: &t.coefficient * k,
                })
                .collect(),
        )
    }

    /// Multiplies by the single term `coefficient * x^exponent`.
    pub fn mul_term(&self, exponent: &BigUint, coefficient: &BigInt) -> Self {
        if coefficient.is_zero() {
            return Self::zero();
        }
        Self::from_sorted_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    exponent: &t.exponent + exponent,
                    coefficient: &t.coefficient * coefficient,
                })
                .collect(),
        )
    }

    /// Value at an integer point.
    pub fn eval_integer(&self, x: &BigInt) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, t| {
            let e = u32::try_from(&t.exponent).expect("exponent too large for integer evaluation");
            acc + &t.coefficient * num_traits::pow::Pow::pow(x, e)
        })
    }
}

fn merge(a: &SparsePoly, b: &SparsePoly, negate_b: bool) -> SparsePoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let mut left = a.terms.iter().peekable();
    let mut right = b.terms.iter().peekable();
    let signed = |t: &Term| {
        if negate_b {
            Term {
                exponent: t.exponent.clone(),
                coefficient: -&t.coefficient,
            }
        } else {
            t.clone()
        }
    };
    loop {
        match (left.peek(), right.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(left.next().unwrap().clone()),
            (None, Some(_)) => out.push(signed(right.next().unwrap())),
            (Some(l), Some(r)) => match l.exponent.cmp(&r.exponent) {
                Ordering::Less => out.push(left.next().unwrap().clone()),
                Ordering::Greater => out.push(signed(right.next().unwrap())),
                Ordering::Equal => {
                    let coefficient = if negate_b {
                        &l.coefficient - &r.coefficient
                    } else {
                        &l.coefficient + &r.coefficient
                    };
                    if !coefficient.is_zero() {
                        out.push(Term {
                            exponent: l.exponent.clone(),
                            coefficient,
                        });
                    }
                    left.next();
                    right.next();
                }
            },
        }
    }
    SparsePoly::from_sorted_terms(out)
}

impl Add for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        merge(self, rhs, false)
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        merge(self, rhs, true)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;

    /// Schoolbook product: all pairwise terms, then sort and merge.
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        if self.is_zero() || rhs.is_zero() {
            return SparsePoly::zero();
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                raw.push((&a.exponent + &b.exponent, &a.coefficient * &b.coefficient));
            }
        }
        SparsePoly::from_raw(raw)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;

            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;

    fn neg(mut self) -> SparsePoly {
        for t in &mut self.terms {
            t.coefficient = -std::mem::take(&mut t.coefficient);
        }
        self
    }
}

impl fmt::Display for SparsePoly {
    /// Descending exponents, e.g. `3*x^5 - 2*x + 7`; zero prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().rev().enumerate() {
            let negative = t.coefficient.sign() == Sign::Minus;
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = t.coefficient.abs();
            if t.exponent.is_zero() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            if t.exponent.is_one() {
                f.write_str("x")?;
            } else {
                write!(f, "x^{}", t.exponent)?;
            }
        }
        Ok(())
    }
}
