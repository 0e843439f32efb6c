//! Exact arithmetic substrate: arbitrary-precision rationals and the two
//! algebraic extensions used throughout the crate, values linear in 1/pi
//! and values linear in sqrt(3)/pi, plus polynomials in 1/pi.
//!
//! Every type here is immutable after construction and safe to share
//! across threads. All operations keep fractions fully reduced.

mod inv_pi;
mod pi_linear;
mod poly;
mod sqrt3;

pub use inv_pi::{inv_pi_rational, sqrt3_over_pi_rational};
pub use pi_linear::PiLinear;
pub use poly::UPolynomial;
pub use sqrt3::Sqrt3PiLinear;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Arbitrary-precision reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer pair, reducing on construction.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `num/den` (reduced, no whitespace), the wire form
/// used by the C-table file.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `num/den` wire form. The fraction must arrive reduced with a
/// positive denominator, so that files round-trip bit for bit.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let (num, den) = s
        .split_once('/')
        .ok_or_else(|| format!("expected num/den, got {s:?}"))?;
    let num: BigInt = num.parse().map_err(|e| format!("bad numerator: {e}"))?;
    let den: BigInt = den.parse().map_err(|e| format!("bad denominator: {e}"))?;
    if den <= BigInt::from(0) {
        return Err(format!("denominator must be positive in {s:?}"));
    }
    let r = Rational::new(num.clone(), den.clone());
    if r.numer() != &num || r.denom() != &den {
        return Err(format!("fraction {s:?} is not reduced"));
    }
    Ok(r)
}

/// Nearest f64 to a rational, failing on overflow of the float range.
pub fn rational_to_f64(r: &Rational) -> Result<f64> {
    match r.to_f64() {
        Some(f) if f.is_finite() => Ok(f),
        _ => Err(Error::MagnitudeOverflow),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use rand::{Rng, SeedableRng};

    fn random_rational(rng: &mut impl Rng) -> Rational {
        let num = rng.gen_range(-1_000_000i64..=1_000_000);
        let den = rng.gen_range(1i64..=1_000_000);
        ratio(num, den)
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5a11ad);
        for _ in 0..10_000 {
            let a = random_rational(&mut rng);
            let b = random_rational(&mut rng);
            let c = random_rational(&mut rng);
            assert_eq!((&a + &b) + &c, &a + (&b + &c));
            assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            assert_eq!((&a * &b) * &c, &a * (&b * &c));
        }
    }

    #[test]
    fn rationals_stay_reduced() {
        let r = ratio(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let s = ratio(1, 3) + ratio(2, 3);
        assert!(s.is_one());
        assert!((ratio(5, 7) - ratio(5, 7)).is_zero());
    }

    #[test]
    fn wire_format_roundtrip() {
        for r in [ratio(0, 1), ratio(-8, 1), ratio(472, 15), ratio(-92, 15)] {
            assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        }
        assert!(parse_rational("4/6").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("1.5").is_err());
    }
}
