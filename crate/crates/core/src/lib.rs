//! Sparse (lacunary) integer polynomials with early-terminating exact
//! division.
//!
//! - [`poly`]: canonical sparse representation, norms and transforms.
//! - [`text`]: expression and line formats.
//! - [`bounds`]: cofactor-norm bounds in rounded `log2` space.
//! - [`division`]: bounded long division and the exact-division entry points.
//! - [`spectral`]: rigorous evaluation at roots of unity and the checks built
//!   on it.
//! - [`oracle`]: dense exact-rational reference division.
//! - [`experiment`]: seeded instance generators and the CSV experiment.
//!
//! ```
//! use lacunary::{exact_divide, text::parse, Verdict};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let f = parse("x^1000000000000000000001 - x")?;
//! let g = parse("x^500000000000000000000 - 1")?;
//! match exact_divide(&f, &g)?.into_verdict() {
//!     Verdict::Exact(q) => assert_eq!(q.to_string(), "x^500000000000000000001 + x"),
//!     Verdict::NotDivisible(why) => panic!("{why}"),
//! }
//! # Ok(())
//! # }
//! ```

pub mod bounds;
pub mod cli;
pub mod division;
pub mod error;
pub mod experiment;
pub mod oracle;
pub mod poly;
pub mod spectral;
pub mod text;

pub use division::{divides, exact_divide, DivisionOutcome, NotDivisibleReason, Verdict};
pub use error::{BoundError, DivisionError, OracleError, ParseError, PolyError, SpectralError};
pub use poly::{Norms, SparsePoly, Term};
