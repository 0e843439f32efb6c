use std::fmt;
use std::ops::{Add, Sub};

use num_traits::Zero;

use super::{rational_to_f64, Rational};
use crate::error::Result;

/// Exact value `a + b*sqrt(3)/pi` with rational `a`, `b`; the closed
/// subring in which the triangular-lattice diagonal resistances live.
///
/// sqrt(3)/pi is irrational, so the representation is unique and equality
/// is componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sqrt3PiLinear {
    a: Rational,
    b: Rational,
}

impl Sqrt3PiLinear {
    pub fn new(a: Rational, b: Rational) -> Self {
        Sqrt3PiLinear { a, b }
    }

    pub fn zero() -> Self {
        Sqrt3PiLinear::new(Rational::zero(), Rational::zero())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Sqrt3PiLinear::new(&self.a * k, &self.b * k)
    }

    /// Shifts the sqrt(3)/pi component; how the inhomogeneous recurrence
    /// term enters.
    pub fn add_b(&self, delta: &Rational) -> Self {
        Sqrt3PiLinear::new(self.a.clone(), &self.b + delta)
    }

    /// Nearest f64. The components grow exponentially along the resistance
    /// recurrence while the value stays near 1, so the irrational factor is
    /// expanded to enough bits to absorb the cancellation and the sum is
    /// rounded once as an exact rational.
    pub fn to_f64(&self) -> Result<f64> {
        if self.b.is_zero() {
            return rational_to_f64(&self.a);
        }
        let bits = self.b.numer().bits() as u32 + 64;
        let t = super::inv_pi::sqrt3_over_pi_rational(bits);
        rational_to_f64(&(&self.a + &self.b * t))
    }
}

impl Add for &Sqrt3PiLinear {
    type Output = Sqrt3PiLinear;
    fn add(self, rhs: &Sqrt3PiLinear) -> Sqrt3PiLinear {
        Sqrt3PiLinear::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Sqrt3PiLinear {
    type Output = Sqrt3PiLinear;
    fn sub(self, rhs: &Sqrt3PiLinear) -> Sqrt3PiLinear {
        Sqrt3PiLinear::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl fmt::Display for Sqrt3PiLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "({})*sqrt(3)/pi", self.b)
        } else {
            write!(f, "{} + ({})*sqrt(3)/pi", self.a, self.b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn readout_and_uniqueness() {
        let r2 = Sqrt3PiLinear::new(ratio(8, 3), ratio(-4, 1));
        let v = r2.to_f64().unwrap();
        assert!((v - 0.4613510849794985).abs() < 1e-14);
        assert_eq!(r2, Sqrt3PiLinear::new(ratio(16, 6), ratio(-8, 2)));
        assert_ne!(r2, Sqrt3PiLinear::new(ratio(8, 3), ratio(4, 1)));
    }
}
