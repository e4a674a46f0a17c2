//! Seeded random instances and the bound-comparison experiment.
//!
//! Every trial derives its own generator seed from the base seed and the
//! trial index, so a single CSV row can be reproduced in isolation.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::{self, log2_big};
use crate::division::{exact_divide, Verdict};
use crate::poly::SparsePoly;

/// Shape of generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Profile {
    pub name: &'static str,
    pub g_sparsity: (usize, usize),
    pub g_degree: (u64, u64),
    pub h_sparsity: (usize, usize),
    /// Cap on `deg f = deg g + deg h`.
    pub f_degree_max: u64,
    /// Coefficients are drawn from `[-2^bits, 2^bits] \ {0}`.
    pub coefficient_bits: (u32, u32),
}

impl Profile {
    pub const TINY: Profile = Profile {
        name: "tiny",
        g_sparsity: (1, 3),
        g_degree: (1, 16),
        h_sparsity: (1, 4),
        f_degree_max: 48,
        coefficient_bits: (1, 8),
    };

    pub const DESK: Profile = Profile {
        name: "desk",
        g_sparsity: (1, 6),
        g_degree: (1, 500),
        h_sparsity: (1, 32),
        f_degree_max: 10_000,
        coefficient_bits: (1, 32),
    };

    pub const STRESS: Profile = Profile {
        name: "stress",
        g_sparsity: (1, 6),
        g_degree: (1, 10_000),
        h_sparsity: (1, 256),
        f_degree_max: 20_000,
        coefficient_bits: (1, 32),
    };

    /// Benchmark sizes: quotient term counts for the scaling run.
    pub fn bench_sizes(&self) -> Vec<usize> {
        let base = match self.name {
            "tiny" => 100,
            "stress" => 2_000,
            _ => 1_000,
        };
        (0..4).map(|i| base << i).collect()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown profile `{0}` (expected tiny, desk or stress)")]
pub struct UnknownProfile(String);

impl FromStr for Profile {
    type Err = UnknownProfile;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tiny" => Ok(Self::TINY),
            "desk" => Ok(Self::DESK),
            "stress" => Ok(Self::STRESS),
            other => Err(UnknownProfile(other.to_owned())),
        }
    }
}

/// Seed for trial `index`, mixed with SplitMix64 so neighbouring trials get
/// unrelated streams.
pub fn trial_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform nonzero integer in `[-2^bits, 2^bits]`.
pub fn random_coefficient<R: Rng>(rng: &mut R, bits: u32) -> BigInt {
    let bound = 1i64 << bits;
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return BigInt::from(c);
        }
    }
}

/// Random polynomial of exactly `sparsity` terms with exponents drawn
/// without replacement from `[0, degree]`; the top exponent is always
/// `degree` so the degree is exact.
pub fn random_sparse<R: Rng>(rng: &mut R, sparsity: usize, degree: u64, bits: u32) -> SparsePoly {
    let span = usize::try_from(degree).expect("degree fits in memory");
    let sparsity = sparsity.clamp(1, span + 1);
    let mut exponents = vec![degree];
    if sparsity > 1 {
        exponents.extend(
            index::sample(rng, span, sparsity - 1)
                .into_iter()
                .map(|e| e as u64),
        );
    }
    SparsePoly::from_pairs(
        exponents
            .into_iter()
            .map(|e| (BigUint::from(e), random_coefficient(rng, bits))),
    )
}

/// A random exact instance `(g, h)`.
pub fn random_pair<R: Rng>(rng: &mut R, profile: &Profile) -> (SparsePoly, SparsePoly) {
    let bits = rng.gen_range(profile.coefficient_bits.0..=profile.coefficient_bits.1);
    let g_degree = rng.gen_range(profile.g_degree.0..=profile.g_degree.1);
    let g_sparsity = rng.gen_range(profile.g_sparsity.0..=profile.g_sparsity.1);
    let g = random_sparse(rng, g_sparsity, g_degree, bits);
    let h_degree = rng.gen_range(0..=profile.f_degree_max - g_degree);
    let h_sparsity = rng.gen_range(profile.h_sparsity.0..=profile.h_sparsity.1);
    let h = random_sparse(rng, h_sparsity, h_degree, bits);
    (g, h)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentRow {
    pub seed: u64,
    pub g_sparsity: usize,
    pub g_degree: BigUint,
    pub f_degree: BigUint,
    pub h_sparsity: usize,
    pub h_l2_squared: BigUint,
    pub log2_sparse_bound: f64,
    pub log2_mignotte_bound: f64,
    pub log2_gelfond_bound: f64,
    pub division_time_ns: u128,
    pub verdict: String,
}

pub const CSV_HEADER: [&str; 11] = [
    "seed",
    "g_sparsity",
    "g_degree",
    "f_degree",
    "h_sparsity",
    "h_l2_squared",
    "log2_sparse_bound",
    "log2_mignotte_bound",
    "log2_gelfond_bound",
    "division_time_ns",
    "verdict",
];

/// Scientific notation with 17 significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

impl ExperimentRow {
    pub fn record(&self) -> [String; 11] {
        [
            self.seed.to_string(),
            self.g_sparsity.to_string(),
            self.g_degree.to_string(),
            self.f_degree.to_string(),
            self.h_sparsity.to_string(),
            self.h_l2_squared.to_string(),
            sci(self.log2_sparse_bound),
            sci(self.log2_mignotte_bound),
            sci(self.log2_gelfond_bound),
            self.division_time_ns.to_string(),
            self.verdict.clone(),
        ]
    }
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("trial {trial} (seed {seed}): {what}")]
    Violation { trial: u64, seed: u64, what: String },
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
}

/// Whether `n <= 2^log2`. Conservative: a borderline case within `1e-12`
/// bits of the bound counts as a violation.
pub fn within_log2(n: &BigUint, log2: f64) -> bool {
    if n.bits() == 0 || log2 == f64::INFINITY {
        return true;
    }
    let floor = log2.floor();
    if floor >= 0.0 && (n.bits() as f64) <= floor {
        return true;
    }
    if floor == log2 && (0.0..=f64::from(u32::MAX)).contains(&log2) {
        return *n <= BigUint::from(1u32) << (log2 as u64);
    }
    log2_big(n) + 1e-12 <= log2
}

/// Runs one trial and checks every invariant of the experiment.
pub fn run_trial(
    trial: u64,
    seed: u64,
    profile: &Profile,
    timing: bool,
) -> Result<ExperimentRow, ExperimentError> {
    let row_seed = trial_seed(seed, trial);
    let mut rng = rng_for(row_seed);
    let (g, h) = random_pair(&mut rng, profile);
    let f = &g * &h;
    let violation = |what: String| ExperimentError::Violation {
        trial,
        seed: row_seed,
        what,
    };

    let sparse = bounds::sparse_cofactor_l2_log_bound(&f, &g).expect("nonzero inputs");
    let h_degree = h.degree().cloned().unwrap_or_default();
    let mignotte = bounds::mignotte_l1_bound(&f, &h_degree).expect("nonzero inputs");
    let gelfond = bounds::gelfond_height_bound(&f, &g).expect("nonzero inputs");
    let h_norms = h.norms();
    if !within_log2(&h_norms.l2_squared, 2.0 * sparse.log2_bound) {
        return Err(violation(format!(
            "||h||_2^2 = {} exceeds 2^(2 * {})",
            h_norms.l2_squared, sparse.log2_bound
        )));
    }
    if !within_log2(&h_norms.l1, mignotte.log2_bound) {
        return Err(violation("||h||_1 exceeds the Mignotte bound".into()));
    }
    if !within_log2(&h_norms.height, gelfond.log2_bound) {
        return Err(violation("||h||_inf exceeds the Gelfond bound".into()));
    }

    let start = Instant::now();
    let outcome = exact_divide(&f, &g).expect("nonzero divisor");
    let elapsed = start.elapsed().as_nanos();
    let verdict = match outcome.verdict() {
        Verdict::Exact(q) if *q == h => "Exact".to_owned(),
        Verdict::Exact(_) => return Err(violation("quotient differs from h".into())),
        Verdict::NotDivisible(reason) => {
            return Err(violation(format!("exact instance reported {reason}")))
        }
    };
    Ok(ExperimentRow {
        seed: row_seed,
        g_sparsity: g.sparsity(),
        g_degree: g.degree().cloned().unwrap_or_default(),
        f_degree: f.degree().cloned().unwrap_or_default(),
        h_sparsity: h_norms.sparsity,
        h_l2_squared: h_norms.l2_squared,
        log2_sparse_bound: sparse.log2_bound,
        log2_mignotte_bound: mignotte.log2_bound,
        log2_gelfond_bound: gelfond.log2_bound,
        division_time_ns: if timing { elapsed } else { 0 },
        verdict,
    })
}

/// Writes the CSV for `trials` trials. Without `timing` the time column is
/// zero so the output is byte-for-byte reproducible.
pub fn run_experiment<W: Write>(
    out: W,
    trials: u64,
    seed: u64,
    profile: &Profile,
    timing: bool,
) -> Result<u64, ExperimentError> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for trial in 0..trials {
        let row = run_trial(trial, seed, profile, timing)?;
        writer.write_record(row.record())?;
    }
    writer.flush()?;
    Ok(trials)
}

/// One point of the scaling benchmark.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchPoint {
    pub quotient_terms: usize,
    pub median_ns: u128,
}

/// Fixed divisor for the scaling benchmark: three terms, 32-bit coefficients.
pub fn bench_divisor() -> SparsePoly {
    SparsePoly::from_pairs([
        (BigUint::from(0u32), BigInt::from(-2_876_543_211i64)),
        (BigUint::from(17u32), BigInt::from(3_000_000_019i64)),
        (BigUint::from(40u32), BigInt::from(4_123_456_789i64)),
    ])
}

/// Median wall time of `exact_divide(g * h, g)` for quotients of each size.
pub fn bench(sizes: &[usize], repetitions: usize, seed: u64) -> Vec<BenchPoint> {
    let g = bench_divisor();
    sizes
        .iter()
        .map(|&t| {
            let mut rng = rng_for(trial_seed(seed, t as u64));
            let h = random_sparse(&mut rng, t, 10 * t as u64, 32);
            let f = &g * &h;
            let mut times: Vec<u128> = (0..repetitions.max(1))
                .map(|_| {
                    let start = Instant::now();
                    let outcome = exact_divide(&f, &g).expect("nonzero divisor");
                    let elapsed = start.elapsed().as_nanos();
                    assert!(outcome.is_exact(), "benchmark instance must divide");
                    elapsed
                })
                .collect();
            times.sort_unstable();
            BenchPoint {
                quotient_terms: t,
                median_ns: times[times.len() / 2],
            }
        })
        .collect()
}

/// Worst ratio of observed growth to linear growth across consecutive sizes.
pub fn worst_linearity_ratio(points: &[BenchPoint]) -> f64 {
    points
        .windows(2)
        .map(|w| {
            let time = w[1].median_ns as f64 / w[0].median_ns.max(1) as f64;
            let size = w[1].quotient_terms as f64 / w[0].quotient_terms as f64;
            time / size
        })
        .fold(0.0, f64::max)
}
