//! Exact-arithmetic stability decisions for line bundles on smooth
//! projective surfaces.
//!
//! The crate decides, with no floating point anywhere on a verdict path:
//!
//! * numerical dHYM stability and semistability of a line bundle `L`
//!   against a `B`-field and an ample class `ω` ([`dhym`]),
//! * Bridgeland stability of `L^⊗k` under the scaled data `(kB, kω)`,
//!   tested against the curve destabilizers of negative self-intersection
//!   ([`scaling`]),
//! * per-curve destabilization thresholds in the scaling parameter `k`
//!   and the large-scaling-limit verdict ([`scaling`]),
//! * consistency of the implication chain relating all of the above on a
//!   given surface model ([`scaling::theorem_consistency`]).
//!
//! Ample classes are carried as `√s·ω′` with `s` and `ω′` rational, so
//! quantities odd in `ω` are rational multiples of `√s` and quantities even
//! in `ω` are rational; every sign test and phase comparison is then exact,
//! and wall cases (exact zeroes) are decidable.
//!
//! All values are immutable after construction and all operations are pure
//! functions, so everything is freely shareable across threads.

pub mod charge;
pub mod dhym;
pub mod error;
pub mod lattice;
pub mod scaling;
pub mod surface;

pub use error::Error;

/// Arbitrary-precision rational, always stored reduced with canonical sign.
pub type Rational = num_rational::BigRational;

/// Shorthand used throughout the crate.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Parse `p/q` or a bare integer into a rational. Whitespace around the
/// slash is tolerated; a zero denominator is an error.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    use num_bigint::BigInt;
    use num_traits::Zero;

    let trimmed = text.trim();
    let (numer, denom) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let numer: BigInt = numer
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational literal `{text}`")))?;
    let denom: BigInt = denom
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational literal `{text}`")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!(
            "zero denominator in rational literal `{text}`"
        )));
    }
    Ok(Rational::new(numer, denom))
}
