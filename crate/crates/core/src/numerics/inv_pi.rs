use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Zero};

use super::Rational;

/// Exact rational approximation of 1/pi with absolute error at most
/// 2^-bits, via Machin's formula evaluated in fixed-point integers.
///
/// The series terms are truncated integer divisions, so each contributes
/// at most one unit in the last place of the working precision; sixteen
/// guard bits absorb the accumulated slack for any practical precision.
pub fn inv_pi_rational(bits: u32) -> Rational {
    let prec = bits + 16;
    // pi = 16 atan(1/5) - 4 atan(1/239)
    let pi_fixed = atan_inv_fixed(5, prec) * 16 - atan_inv_fixed(239, prec) * 4;
    let inv = (BigInt::one() << (2 * prec)) / pi_fixed;
    Rational::new(inv, BigInt::one() << prec)
}

/// Exact rational approximation of sqrt(3)/pi with absolute error at most
/// 2^-bits.
pub fn sqrt3_over_pi_rational(bits: u32) -> Rational {
    let prec = bits + 8;
    let sqrt3 = (BigInt::from(3) << (2 * prec)).sqrt();
    inv_pi_rational(prec) * Rational::new(sqrt3, BigInt::one() << prec)
}

/// atan(1/x) * 2^prec, truncated alternating series.
fn atan_inv_fixed(x: u64, prec: u32) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << prec) / x;
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power /= &x2;
        if power.is_zero() {
            return sum;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{ratio, rational_to_f64};
    use num_traits::Signed;

    #[test]
    fn matches_f64_constant() {
        let u = inv_pi_rational(64);
        let f = rational_to_f64(&u).unwrap();
        assert!((f - std::f64::consts::FRAC_1_PI).abs() < 1e-16);
    }

    #[test]
    fn precision_scales() {
        // successive precisions agree to the coarser tolerance
        let lo = inv_pi_rational(80);
        let hi = inv_pi_rational(320);
        let diff = (&lo - &hi).abs();
        assert!(diff < ratio(1, 1) / Rational::from(BigInt::one() << 80));
        // the two-term split constant reproduces 1/pi to better than 1e-16:
        // |(1/pi - 1725033/5419351) - 2.27595720048157e-15| < 1e-16
        let split = ratio(1_725_033, 5_419_351);
        let tail = Rational::new(
            BigInt::from(227_595_720_048_157u64),
            BigInt::from(10u64).pow(29),
        );
        let err = ((&hi - &split) - &tail).abs();
        assert!(err < ratio(1, 1) / Rational::from(BigInt::from(10u64).pow(16)));
    }
}
