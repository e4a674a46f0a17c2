//! Dense exact-rational reference arithmetic.
//!
//! Deliberately naive schoolbook division over `Q`, used as ground truth for
//! the sparse pipeline on small inputs.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::OracleError;
use crate::poly::SparsePoly;

/// Largest degree [`densify`] accepts by default.
pub const DEFAULT_DENSE_CEILING: usize = 1_000_000;

/// Coefficient vector indexed by exponent, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DensePoly {
    coeffs: Vec<BigRational>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

pub fn densify(p: &SparsePoly) -> Result<DensePoly, OracleError> {
    densify_with_ceiling(p, DEFAULT_DENSE_CEILING)
}

pub fn densify_with_ceiling(p: &SparsePoly, ceiling: usize) -> Result<DensePoly, OracleError> {
    let Some(degree) = p.degree() else {
        return Ok(DensePoly::default());
    };
    let too_big = || OracleError::DegreeCeiling {
        degree: degree.to_string(),
        ceiling,
    };
    let degree = degree.to_usize().ok_or_else(too_big)?;
    if degree > ceiling {
        return Err(too_big());
    }
    let mut coeffs = vec![BigRational::zero(); degree + 1];
    for t in p.terms() {
        let e = t.exponent().to_usize().expect("below degree");
        coeffs[e] = BigRational::from_integer(t.coefficient().clone());
    }
    Ok(DensePoly::new(coeffs))
}

pub fn sparsify(d: &DensePoly) -> Result<SparsePoly, OracleError> {
    let mut pairs = Vec::new();
    for (exponent, c) in d.coeffs.iter().enumerate() {
        if !c.is_integer() {
            return Err(OracleError::NonIntegral { exponent });
        }
        if !c.is_zero() {
            pairs.push((BigUint::from(exponent), c.to_integer()));
        }
    }
    Ok(SparsePoly::from_pairs(pairs))
}

/// Schoolbook division over `Q`: `f = g q + r` with `deg r < deg g`.
pub fn dense_divmod(f: &DensePoly, g: &DensePoly) -> Result<(DensePoly, DensePoly), OracleError> {
    let Some(deg_g) = g.degree() else {
        return Err(OracleError::ZeroDivisor);
    };
    let lc_g = &g.coeffs[deg_g];
    let mut r = f.coeffs.clone();
    let mut q = vec![BigRational::zero(); f.coeffs.len().saturating_sub(deg_g)];
    while r.len() > deg_g {
        let lead = r.pop().expect("nonempty");
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - deg_g;
        let factor = lead / lc_g;
        for (i, c) in g.coeffs[..deg_g].iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        q[shift] = factor;
    }
    let (q, r) = (DensePoly::new(q), DensePoly::new(r));
    assert_eq!(g.mul(&q).add(&r), *f, "division identity violated");
    assert!(r.degree().is_none_or(|d| d < deg_g), "remainder degree too large");
    Ok((q, r))
}

/// Whether `g` divides `f` in `Z[x]`: zero remainder and integral quotient.
pub fn oracle_divides(f: &SparsePoly, g: &SparsePoly) -> Result<bool, OracleError> {
    let (q, r) = dense_divmod(&densify(f)?, &densify(g)?)?;
    Ok(r.is_zero() && q.coeffs.iter().all(BigRational::is_integer))
}

/// `g * q == f` by exact sparse multiplication.
pub fn check_factorization(f: &SparsePoly, g: &SparsePoly, q: &SparsePoly) -> bool {
    g * q == *f
}
