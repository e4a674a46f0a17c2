//! Cofactor-norm bounds for exact division `f = g * h`.
//!
//! Every bound is reported as an upper estimate of `log2` of its value. The
//! raw values are astronomically large, so they are never materialized except
//! as the final power-of-two coefficient cap.
//!
//! Rounding: each bound is evaluated in `f64` from exact integer inputs and
//! then pushed upward by `REL_SLACK * (sum of |summands|) + ABS_SLACK`. The
//! individual `f64` operations are accurate to a few units in 2^-52, so the
//! slack dominates their accumulated error by a wide margin.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{BoundError, PolyError};
use crate::poly::SparsePoly;

/// Relative slack applied to every `log2` sum.
pub const REL_SLACK: f64 = 1.0 / (1u64 << 40) as f64;
/// Absolute slack, in bits, applied to every `log2` sum.
pub const ABS_SLACK: f64 = 1.0 / (1u64 << 40) as f64;

/// Approximate `log2(n)` for `n > 0`, within a few ulps.
pub fn log2_big(n: &BigUint) -> f64 {
    assert!(!n.is_zero(), "log2 of zero");
    let bits = n.bits();
    if bits <= 64 {
        return n.to_u64().expect("fits").to_f64().expect("finite").log2();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("64 bits");
    (top as f64).log2() + shift as f64
}

/// `log2` of a nonnegative integer converted through `f64`; degrees beyond
/// `f64` range are saturated to infinity, which keeps upper bounds sound.
fn as_f64(n: &BigUint) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}

/// `log2(n ln n)` for `n >= 2`.
pub fn log2_l(n: &BigUint) -> f64 {
    let lg = log2_big(n);
    lg + (lg * std::f64::consts::LN_2).log2()
}

/// Sum of `log2` contributions, rounded up (or down) by the declared slack.
#[derive(Default)]
pub(crate) struct Log2Sum {
    value: f64,
    magnitude: f64,
}

impl Log2Sum {
    pub(crate) fn add(&mut self, x: f64) -> &mut Self {
        self.value += x;
        self.magnitude += x.abs();
        self
    }

    pub(crate) fn up(&self) -> f64 {
        self.value + self.magnitude * REL_SLACK + ABS_SLACK
    }

    pub(crate) fn down(&self) -> f64 {
        self.value - self.magnitude * REL_SLACK - ABS_SLACK
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundFormula {
    /// `||h||_inf <= 2^deg f * ||f||_inf / ||g||_inf`.
    Gelfond,
    /// `||h||_1 <= 2^deg h * ||f||_2`.
    Mignotte,
    /// `||h||_inf <= ||f||_inf (||g||_inf + 1)^((||h||_0 + 1)/2)`.
    Induction,
    /// The sparse-divisor bound on `||h||_2`.
    SparseCofactorL2,
    /// `||f/(x - a)||_2 < 100 ||f||_1 deg^2 f`.
    LinearCofactorL2,
}

impl BoundFormula {
    pub fn name(self) -> &'static str {
        match self {
            Self::Gelfond => "Gelfond",
            Self::Mignotte => "Mignotte",
            Self::Induction => "Induction",
            Self::SparseCofactorL2 => "SparseCofactorL2",
            Self::LinearCofactorL2 => "LinearCofactorL2",
        }
    }

    /// Which norm of the cofactor `h` the bound controls.
    pub fn bounded_norm(self) -> &'static str {
        match self {
            Self::Gelfond | Self::Induction => "height",
            Self::Mignotte => "l1",
            Self::SparseCofactorL2 | Self::LinearCofactorL2 => "l2",
        }
    }
}

/// The inputs a bound actually consumed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundInputs {
    pub deg_f: Option<BigUint>,
    pub deg_g: Option<BigUint>,
    pub ord0_g: Option<BigUint>,
    pub f_l1: Option<BigUint>,
    pub f_l2_squared: Option<BigUint>,
    pub f_height: Option<BigUint>,
    pub g_sparsity: Option<usize>,
    pub g_height: Option<BigUint>,
    pub max: Option<BigUint>,
    pub h_degree: Option<BigUint>,
    pub h_sparsity: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub formula: BoundFormula,
    /// Upper bound on `log2` of the formula's value.
    pub log2_bound: f64,
    pub inputs: BoundInputs,
}

impl fmt::Display for BoundReport {
    /// Flat `key=value` record, one pair per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formula={}", self.formula.name())?;
        writeln!(f, "bounds={}", self.formula.bounded_norm())?;
        writeln!(f, "log2_bound={:.17e}", self.log2_bound)?;
        let i = &self.inputs;
        let fields: [(&str, Option<String>); 11] = [
            ("deg_f", i.deg_f.as_ref().map(ToString::to_string)),
            ("deg_g", i.deg_g.as_ref().map(ToString::to_string)),
            ("ord0_g", i.ord0_g.as_ref().map(ToString::to_string)),
            ("f_l1", i.f_l1.as_ref().map(ToString::to_string)),
            ("f_l2_squared", i.f_l2_squared.as_ref().map(ToString::to_string)),
            ("f_height", i.f_height.as_ref().map(ToString::to_string)),
            ("g_sparsity", i.g_sparsity.map(|s| s.to_string())),
            ("g_height", i.g_height.as_ref().map(ToString::to_string)),
            ("max", i.max.as_ref().map(ToString::to_string)),
            ("h_degree", i.h_degree.as_ref().map(ToString::to_string)),
            ("h_sparsity", i.h_sparsity.map(|s| s.to_string())),
        ];
        for (key, value) in fields {
            if let Some(value) = value {
                writeln!(f, "{key}={value}")?;
            }
        }
        Ok(())
    }
}

fn nonzero(p: &SparsePoly) -> Result<(), PolyError> {
    if p.is_zero() {
        Err(PolyError::ZeroPolynomial)
    } else {
        Ok(())
    }
}

fn degree(p: &SparsePoly) -> BigUint {
    p.degree().cloned().unwrap_or_default()
}

pub fn gelfond_height_bound(f: &SparsePoly, g: &SparsePoly) -> Result<BoundReport, BoundError> {
    nonzero(f)?;
    nonzero(g)?;
    let (fn_, gn) = (f.norms(), g.norms());
    let deg_f = degree(f);
    let mut sum = Log2Sum::default();
    sum.add(as_f64(&deg_f))
        .add(log2_big(&fn_.height))
        .add(-log2_big(&gn.height));
    Ok(BoundReport {
        formula: BoundFormula::Gelfond,
        log2_bound: sum.up(),
        inputs: BoundInputs {
            deg_f: Some(deg_f),
            f_height: Some(fn_.height),
            g_height: Some(gn.height),
            ..BoundInputs::default()
        },
    })
}

/// Bounds `||h||_1` for a cofactor `h` of degree `h_degree`.
pub fn mignotte_l1_bound(f: &SparsePoly, h_degree: &BigUint) -> Result<BoundReport, BoundError> {
    nonzero(f)?;
    let norms = f.norms();
    let mut sum = Log2Sum::default();
    sum.add(as_f64(h_degree))
        .add(0.5 * log2_big(&norms.l2_squared));
    Ok(BoundReport {
        formula: BoundFormula::Mignotte,
        log2_bound: sum.up(),
        inputs: BoundInputs {
            deg_f: f.degree().cloned(),
            f_l2_squared: Some(norms.l2_squared),
            h_degree: Some(h_degree.clone()),
            ..BoundInputs::default()
        },
    })
}

pub fn induction_height_bound(
    f: &SparsePoly,
    g: &SparsePoly,
    h_sparsity: usize,
) -> Result<BoundReport, BoundError> {
    nonzero(f)?;
    nonzero(g)?;
    let (fn_, gn) = (f.norms(), g.norms());
    let mut sum = Log2Sum::default();
    sum.add(log2_big(&fn_.height))
        .add((h_sparsity as f64 + 1.0) / 2.0 * log2_big(&(&gn.height + 1u32)));
    Ok(BoundReport {
        formula: BoundFormula::Induction,
        log2_bound: sum.up(),
        inputs: BoundInputs {
            f_height: Some(fn_.height),
            g_height: Some(gn.height),
            h_sparsity: Some(h_sparsity),
            ..BoundInputs::default()
        },
    })
}

/// Which side of `g` realizes `Max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxBranch {
    /// `|lc(g)| * d(g)`; also reported on ties.
    Leading,
    /// `|tc(g)| * d(g_rev)`.
    Trailing,
}

/// `Max = max(|lc(g)| d(g), |tc(g)| d(g_rev))`.
pub fn max_of(g: &SparsePoly) -> Result<(BigUint, MaxBranch), BoundError> {
    let lead = g.lc()?.magnitude() * g.d_value()?;
    let trail = g.tc()?.magnitude() * g.reverse()?.d_value()?;
    Ok(if trail > lead {
        (trail, MaxBranch::Trailing)
    } else {
        (lead, MaxBranch::Leading)
    })
}

/// Upper bound on `log2 ||h||_2` for `f = g * h`:
///
/// ```text
/// sqrt(2) ||f||_1 / Max * (2 s L(12 s (deg g - ord0 g) + 2 deg f)^2)^(s - 1)
/// ```
///
/// with `s = ||g||_0` and `L(n) = n ln n`.
pub fn sparse_cofactor_l2_log_bound(
    f: &SparsePoly,
    g: &SparsePoly,
) -> Result<BoundReport, BoundError> {
    nonzero(f)?;
    let (max, _) = max_of(g)?;
    let f_norms = f.norms();
    let s = g.sparsity();
    let deg_f = degree(f);
    let deg_g = degree(g);
    let ord0_g = g.ord0()?.clone();

    let mut sum = Log2Sum::default();
    sum.add(0.5).add(log2_big(&f_norms.l1)).add(-log2_big(&max));
    if s > 1 {
        let width = &deg_g - &ord0_g;
        let n = BigUint::from(12 * s) * width + &deg_f * 2u32;
        let per_factor = 1.0 + (s as f64).log2() + 2.0 * log2_l(&n);
        sum.add((s - 1) as f64 * per_factor);
    }
    Ok(BoundReport {
        formula: BoundFormula::SparseCofactorL2,
        log2_bound: sum.up(),
        inputs: BoundInputs {
            deg_f: Some(deg_f),
            deg_g: Some(deg_g),
            ord0_g: Some(ord0_g),
            f_l1: Some(f_norms.l1),
            g_sparsity: Some(s),
            max: Some(max),
            ..BoundInputs::default()
        },
    })
}

/// Upper bound on `log2 ||f / (x - a)||_2` when `f` has a root `a`.
pub fn linear_cofactor_l2_bound(f: &SparsePoly) -> Result<BoundReport, BoundError> {
    nonzero(f)?;
    let deg_f = degree(f);
    if deg_f.is_zero() {
        return Err(BoundError::ConstantInput);
    }
    let l1 = f.norms().l1;
    let mut sum = Log2Sum::default();
    sum.add(100f64.log2())
        .add(log2_big(&l1))
        .add(2.0 * log2_big(&deg_f));
    Ok(BoundReport {
        formula: BoundFormula::LinearCofactorL2,
        log2_bound: sum.up(),
        inputs: BoundInputs {
            deg_f: Some(deg_f),
            f_l1: Some(l1),
            ..BoundInputs::default()
        },
    })
}

fn require_degrees(f: &SparsePoly, g: &SparsePoly) -> Result<(BigUint, BigUint), BoundError> {
    nonzero(f)?;
    nonzero(g)?;
    let (df, dg) = (degree(f), degree(g));
    if df < dg {
        return Err(BoundError::DegreeTooSmall {
            deg_f: df.to_string(),
            deg_g: dg.to_string(),
        });
    }
    Ok((df, dg))
}

/// Power-of-two cap `c >= ||f/g||_inf`, valid whenever `g | f`.
pub fn coefficient_cap(f: &SparsePoly, g: &SparsePoly) -> Result<BigUint, BoundError> {
    require_degrees(f, g)?;
    let log2 = sparse_cofactor_l2_log_bound(f, g)?.log2_bound;
    let exponent = log2.ceil();
    if exponent <= 0.0 {
        return Ok(BigUint::one());
    }
    let exponent = exponent.to_u64().expect("finite coefficient cap");
    Ok(BigUint::one() << exponent)
}

/// `deg f - deg g + 1`, the most terms a quotient can have.
pub fn sparsity_cap(f: &SparsePoly, g: &SparsePoly) -> Result<BigUint, BoundError> {
    let (df, dg) = require_degrees(f, g)?;
    Ok(df - dg + 1u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse;

    fn poly(s: &str) -> SparsePoly {
        parse(s).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn gelfond_examples() {
        let r = gelfond_height_bound(&poly("x^2-1"), &poly("x-1")).unwrap();
        assert!(r.log2_bound >= 2.0 && close(r.log2_bound, 2.0, 1e-9));
        let f = poly("3*x^4 - x + 9");
        let r = gelfond_height_bound(&f, &f).unwrap();
        assert!(r.log2_bound >= 4.0 && close(r.log2_bound, 4.0, 1e-9));
        let r = gelfond_height_bound(&poly("x^2-x-2"), &poly("x-2")).unwrap();
        assert!(r.log2_bound >= 2.0 && close(r.log2_bound, 2.0, 1e-9));
        assert!(gelfond_height_bound(&SparsePoly::zero(), &f).is_err());
    }

    #[test]
    fn mignotte_examples() {
        let expected = (2.0 * 6f64.sqrt()).log2();
        for f in ["x^2+2*x+1", "x^2-x-2"] {
            let r = mignotte_l1_bound(&poly(f), &BigUint::one()).unwrap();
            assert!(r.log2_bound >= expected && close(r.log2_bound, expected, 1e-9));
        }
        assert!(close(expected, 2.292, 1e-3));
        let f = poly("x^2+2*x+1");
        let r = mignotte_l1_bound(&f, &BigUint::zero()).unwrap();
        assert!(close(r.log2_bound, 6f64.sqrt().log2(), 1e-9));
    }

    #[test]
    fn induction_examples() {
        let r = induction_height_bound(&poly("x^2-x-2"), &poly("x-2"), 2).unwrap();
        let expected = (2.0 * 3f64.powf(1.5)).log2();
        assert!(r.log2_bound >= expected && close(r.log2_bound, expected, 1e-9));
        assert!(close(2.0 * 3f64.powf(1.5), 10.392, 1e-3));

        let r = induction_height_bound(&poly("5*x^3"), &poly("x"), 0).unwrap();
        assert!(close(r.log2_bound, 5f64.log2() + 0.5, 1e-9));

        let r = induction_height_bound(&poly("x^3-1"), &poly("x-1"), 3).unwrap();
        assert!(r.log2_bound >= 2.0 && close(r.log2_bound, 2.0, 1e-9));
    }

    #[test]
    fn max_examples() {
        assert_eq!(max_of(&poly("x-2")).unwrap(), (2u32.into(), MaxBranch::Trailing));
        assert_eq!(
            max_of(&poly("x^7+3*x^2+1")).unwrap(),
            (35u32.into(), MaxBranch::Leading)
        );
        assert_eq!(max_of(&poly("5*x^3")).unwrap(), (5u32.into(), MaxBranch::Leading));
        assert!(max_of(&SparsePoly::zero()).is_err());
    }

    #[test]
    fn sparse_bound_examples() {
        // sqrt(2) * 4 / 2 * (4 * (28 ln 28)^2)
        let l = 28.0 * 28f64.ln();
        let value = 2f64.sqrt() * 4.0 / 2.0 * (4.0 * l * l);
        assert!(close(value, 9.85e4, 0.01e4));
        let r = sparse_cofactor_l2_log_bound(&poly("x^2-x-2"), &poly("x-2")).unwrap();
        assert!(r.log2_bound >= value.log2());
        assert!(close(r.log2_bound, value.log2(), 1e-9));
        assert!(close(r.log2_bound, 16.588, 1e-3));

        // monomial divisor: empty product
        let f = poly("3*x^4 - 6*x^3");
        let r = sparse_cofactor_l2_log_bound(&f, &poly("3*x^3")).unwrap();
        assert!(close(r.log2_bound, (2f64.sqrt() * 9.0 / 3.0).log2(), 1e-9));
    }

    #[test]
    fn linear_examples() {
        let r = linear_cofactor_l2_bound(&poly("x^2-1")).unwrap();
        assert!(r.log2_bound >= 800f64.log2() && close(r.log2_bound, 800f64.log2(), 1e-9));
        let r = linear_cofactor_l2_bound(&poly("x^2-x-2")).unwrap();
        assert!(close(r.log2_bound, 1600f64.log2(), 1e-9));
        let r = linear_cofactor_l2_bound(&poly("x+1")).unwrap();
        assert!(close(r.log2_bound, 200f64.log2(), 1e-9));
        assert_eq!(
            linear_cofactor_l2_bound(&poly("7")),
            Err(BoundError::ConstantInput)
        );
    }

    #[test]
    fn caps() {
        let (f, g) = (poly("x^2-x-2"), poly("x-2"));
        assert_eq!(coefficient_cap(&f, &g).unwrap(), BigUint::one() << 17u32);
        let f = poly("x^5 + 7*x^2 - 3");
        let c = coefficient_cap(&f, &poly("x^2")).unwrap();
        let expected = (2f64.sqrt() * 11.0).log2().ceil() as u32;
        assert_eq!(c, BigUint::one() << expected);

        assert_eq!(sparsity_cap(&poly("x^2+1"), &poly("x+3")).unwrap(), 2u32.into());
        assert_eq!(
            sparsity_cap(&poly("x^1000000+1"), &poly("x+3")).unwrap(),
            1_000_000u32.into()
        );
        assert_eq!(sparsity_cap(&poly("x^4+1"), &poly("2*x^4")).unwrap(), 1u32.into());
        assert!(matches!(
            sparsity_cap(&poly("x"), &poly("x^2")),
            Err(BoundError::DegreeTooSmall { .. })
        ));
        assert!(coefficient_cap(&poly("x"), &poly("x^2")).is_err());
    }

    #[test]
    fn report_record() {
        let r = sparse_cofactor_l2_log_bound(&poly("x^2-x-2"), &poly("x-2")).unwrap();
        let text = r.to_string();
        assert!(text.starts_with("formula=SparseCofactorL2\n"));
        assert!(text.contains("\nmax=2\n"));
        assert!(text.contains("\ng_sparsity=2\n"));
    }

    #[test]
    fn log2_big_is_accurate() {
        let n = (BigUint::one() << 300u32) * 3u32;
        assert!(close(log2_big(&n), 300.0 + 3f64.log2(), 1e-12));
        assert_eq!(log2_big(&BigUint::one()), 0.0);
    }
}
