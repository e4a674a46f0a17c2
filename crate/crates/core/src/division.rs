//! Bounded long division over the integers.
//!
//! [`bounded_long_division`] runs the classical long-division loop but gives
//! up as soon as the quotient has used up its term budget or produced a
//! coefficient above the cap. [`exact_divide`] derives both caps from the
//! cofactor bounds in [`crate::bounds`], so a divisible pair always runs to
//! completion and a non-divisible one stops early.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::bounds::{coefficient_cap, sparsity_cap};
use crate::error::DivisionError;
use crate::poly::{SparsePoly, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotDivisibleReason {
    /// `lc(g)` does not divide the leading coefficient of the remainder.
    LeadingCoeffNondivisible,
    /// A quotient coefficient exceeded the coefficient cap.
    CoeffCapExceeded,
    /// The quotient used up its term budget with work left to do.
    SparsityCapExceeded,
    /// The loop finished with a nonzero remainder.
    NonzeroRemainder,
    /// `deg f < deg g` with `f != 0`.
    DegreeTooSmall,
    /// `x^ord0(g)` does not divide `f`.
    TrailingPowerTooSmall,
}

impl NotDivisibleReason {
    pub fn name(self) -> &'static str {
        match self {
            Self::LeadingCoeffNondivisible => "LeadingCoeffNondivisible",
            Self::CoeffCapExceeded => "CoeffCapExceeded",
            Self::SparsityCapExceeded => "SparsityCapExceeded",
            Self::NonzeroRemainder => "NonzeroRemainder",
            Self::DegreeTooSmall => "DegreeTooSmall",
            Self::TrailingPowerTooSmall => "TrailingPowerTooSmall",
        }
    }
}

impl fmt::Display for NotDivisibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Exact(SparsePoly),
    NotDivisible(NotDivisibleReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionOutcome {
    verdict: Verdict,
    /// Loop iterations, one per revealed quotient term.
    pub iterations: u64,
    /// Largest term count the remainder reached.
    pub peak_remainder_sparsity: usize,
}

impl DivisionOutcome {
    /// An exact outcome; panics unless `quotient * divisor == dividend`.
    fn exact(
        quotient: SparsePoly,
        dividend: &SparsePoly,
        divisor: &SparsePoly,
        iterations: u64,
        peak_remainder_sparsity: usize,
    ) -> Self {
        assert!(
            &quotient * divisor == *dividend,
            "exact quotient failed recomposition"
        );
        Self {
            verdict: Verdict::Exact(quotient),
            iterations,
            peak_remainder_sparsity,
        }
    }

    fn not_divisible(reason: NotDivisibleReason, iterations: u64, peak: usize) -> Self {
        Self {
            verdict: Verdict::NotDivisible(reason),
            iterations,
            peak_remainder_sparsity: peak,
        }
    }

    pub fn verdict(&self) -> &Verdict {
        &self.verdict
    }

    pub fn into_verdict(self) -> Verdict {
        self.verdict
    }

    pub fn quotient(&self) -> Option<&SparsePoly> {
        match &self.verdict {
            Verdict::Exact(q) => Some(q),
            Verdict::NotDivisible(_) => None,
        }
    }

    pub fn reason(&self) -> Option<NotDivisibleReason> {
        match self.verdict {
            Verdict::Exact(_) => None,
            Verdict::NotDivisible(reason) => Some(reason),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.verdict, Verdict::Exact(_))
    }
}

/// Long division of `f` by `g` with at most `s_cap` quotient terms and
/// quotient coefficients bounded by `c_cap` in absolute value.
///
/// The coefficient guard inspects the term produced by the previous
/// iteration, so the first iteration always runs once the degree and term
/// guards pass, and an over-cap term still gets subtracted before the loop
/// stops. The result is `Exact` iff the remainder reaches zero.
pub fn bounded_long_division(
    f: &SparsePoly,
    g: &SparsePoly,
    s_cap: &BigUint,
    c_cap: &BigUint,
) -> Result<DivisionOutcome, DivisionError> {
    if g.is_zero() {
        return Err(DivisionError::ZeroDivisor);
    }
    if c_cap.is_zero() {
        return Err(DivisionError::InvalidCaps);
    }
    let lead_g = g.leading_term().expect("nonzero divisor");
    let (deg_g, lc_g) = (lead_g.exponent(), lead_g.coefficient());
    // Terms of g below the leading one; the leading term cancels by construction.
    let (_, g_tail) = g.terms().split_last().expect("nonzero divisor");

    let mut remainder: BTreeMap<BigUint, BigInt> = f
        .terms()
        .iter()
        .map(|t| (t.exponent().clone(), t.coefficient().clone()))
        .collect();
    let mut quotient: Vec<Term> = Vec::new();
    let mut iterations = 0u64;
    let mut peak = remainder.len();
    let mut over_cap = false;

    while let Some((deg_r, lc_r)) = remainder.last_key_value() {
        if deg_r < deg_g || over_cap || BigUint::from(iterations) >= *s_cap {
            break;
        }
        let (coefficient, rem) = lc_r.div_rem(lc_g);
        if !rem.is_zero() {
            return Ok(DivisionOutcome::not_divisible(
                NotDivisibleReason::LeadingCoeffNondivisible,
                iterations,
                peak,
            ));
        }
        let shift = deg_r - deg_g;
        remainder.pop_last();
        for term in g_tail {
            let exponent = term.exponent() + &shift;
            let delta = &coefficient * term.coefficient();
            match remainder.entry(exponent) {
                std::collections::btree_map::Entry::Occupied(mut slot) => {
                    *slot.get_mut() -= delta;
                    if slot.get().is_zero() {
                        slot.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(-delta);
                }
            }
        }
        over_cap = coefficient.magnitude() > c_cap;
        quotient.push(Term::new(shift, coefficient).expect("nonzero quotient term"));
        iterations += 1;
        peak = peak.max(remainder.len());
    }

    if remainder.is_empty() {
        quotient.reverse();
        let q = SparsePoly::from_sorted_terms(quotient);
        return Ok(DivisionOutcome::exact(q, f, g, iterations, peak));
    }
    let stalled_on_terms = remainder
        .last_key_value()
        .is_some_and(|(deg_r, _)| deg_r >= deg_g)
        && BigUint::from(iterations) >= *s_cap;
    let reason = if over_cap {
        NotDivisibleReason::CoeffCapExceeded
    } else if stalled_on_terms {
        NotDivisibleReason::SparsityCapExceeded
    } else {
        NotDivisibleReason::NonzeroRemainder
    };
    Ok(DivisionOutcome::not_divisible(reason, iterations, peak))
}

/// Divides `f` by `g` when the division is exact, reporting why not
/// otherwise. Common powers of `x` are removed first; they do not change
/// the coefficients of the quotient.
pub fn exact_divide(f: &SparsePoly, g: &SparsePoly) -> Result<DivisionOutcome, DivisionError> {
    if g.is_zero() {
        return Err(DivisionError::ZeroDivisor);
    }
    if f.is_zero() {
        return Ok(DivisionOutcome::exact(SparsePoly::zero(), f, g, 0, 0));
    }
    // Stripping is symmetric, so the degree gap can be tested up front.
    if f.degree() < g.degree() {
        return Ok(DivisionOutcome::not_divisible(
            NotDivisibleReason::DegreeTooSmall,
            0,
            f.sparsity(),
        ));
    }
    let shift = g.ord0().expect("nonzero");
    if shift > f.ord0().expect("nonzero") {
        return Ok(DivisionOutcome::not_divisible(
            NotDivisibleReason::TrailingPowerTooSmall,
            0,
            f.sparsity(),
        ));
    }
    let f0 = f.shift_down(shift);
    let g0 = g.shift_down(shift);
    let s_cap = sparsity_cap(&f0, &g0)?;
    let c_cap = coefficient_cap(&f0, &g0)?;
    let outcome = bounded_long_division(&f0, &g0, &s_cap, &c_cap)?;
    match outcome.verdict {
        Verdict::Exact(q) => Ok(DivisionOutcome::exact(
            q,
            f,
            g,
            outcome.iterations,
            outcome.peak_remainder_sparsity,
        )),
        Verdict::NotDivisible(_) => Ok(outcome),
    }
}

/// Whether `g` divides `f` over the integers.
pub fn divides(f: &SparsePoly, g: &SparsePoly) -> Result<bool, DivisionError> {
    exact_divide(f, g).map(|o| o.is_exact())
}
