use std::fmt;

use num_traits::Zero;

use super::{inv_pi_rational, rational_to_f64, Rational};
use crate::error::{Error, Result};

/// Polynomial with rational coefficients in the formal variable `u`
/// standing for 1/pi; `coeffs[k]` multiplies `u^k`.
///
/// Trailing zero coefficients are trimmed on construction, so the degree is
/// well defined and the zero polynomial is the empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPolynomial {
    coeffs: Vec<Rational>,
}

impl UPolynomial {
    pub fn zero() -> Self {
        UPolynomial { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `u^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Exact Horner evaluation at a rational node.
    pub fn eval(&self, u: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    /// Evaluates at u = 1/pi with at least `precision_bits` working bits,
    /// returning the exact rational value of the polynomial at a rational
    /// approximant of 1/pi that is accurate enough for the stated bound
    /// (error at most 2^(3-precision_bits) times the largest intermediate
    /// magnitude).
    pub fn eval_inv_pi(&self, precision_bits: u32) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        // extra bits cover the derivative factor deg * |u| summed over terms
        let degree = self.coeffs.len() as u32;
        let guard = 8 + 32 - degree.leading_zeros();
        self.eval(&inv_pi_rational(precision_bits + guard))
    }

    /// f64 readout of `eval_inv_pi`.
    pub fn eval_inv_pi_f64(&self, precision_bits: u32) -> Result<f64> {
        rational_to_f64(&self.eval_inv_pi(precision_bits))
    }

    /// Unique polynomial of degree < points.len() through the given
    /// (node, value) pairs, by Newton divided differences, exact.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<UPolynomial> {
        for (i, (xi, _)) in points.iter().enumerate() {
            for (xj, _) in points.iter().skip(i + 1) {
                if xi == xj {
                    return Err(Error::DuplicateNode(xi.to_string()));
                }
            }
        }
        let n = points.len();
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &points[i].0 - &points[i - j].0;
                dd[i] = num / den;
            }
        }
        // Horner expansion of the Newton form into monomial coefficients
        let mut poly = vec![dd[n - 1].clone()];
        for i in (0..n - 1).rev() {
            // poly <- poly * (u - x_i) + dd[i]
            poly.insert(0, Rational::zero());
            let xi = &points[i].0;
            for k in 0..poly.len() - 1 {
                let shift = &poly[k + 1] * xi;
                poly[k] = &poly[k] - &shift;
            }
            poly[0] += &dd[i];
        }
        Ok(UPolynomial::from_coeffs(poly))
    }
}

impl fmt::Display for UPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})*u"),
                _ => format!("({c})*u^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    fn pts(v: &[(i64, i64)]) -> Vec<(Rational, Rational)> {
        v.iter().map(|&(x, y)| (ratio(x, 1), ratio(y, 1))).collect()
    }

    #[test]
    fn single_point_is_constant() {
        let p = UPolynomial::interpolate(&pts(&[(0, 5)])).unwrap();
        assert_eq!(p.coeffs(), &[ratio(5, 1)]);
    }

    #[test]
    fn exact_quadratics() {
        // u^2 has coefficients [0, 0, 1]
        let p = UPolynomial::interpolate(&pts(&[(0, 0), (1, 1), (2, 4)])).unwrap();
        assert_eq!(p.coeffs(), vec![ratio(0, 1), ratio(0, 1), ratio(1, 1)]);

        // solved by hand from the 3x3 Vandermonde system
        let q = UPolynomial::interpolate(&pts(&[(0, 1), (1, 3), (-1, 1)])).unwrap();
        assert_eq!(q.coeffs(), vec![ratio(1, 1), ratio(1, 1), ratio(1, 1)]);
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert!(matches!(
            UPolynomial::interpolate(&pts(&[(2, 1), (2, 3)])),
            Err(Error::DuplicateNode(_))
        ));
    }

    #[test]
    fn interpolation_hits_nodes_exactly() {
        let points = pts(&[(0, 7), (1, -2), (3, 10), (5, 0), (-4, 9), (11, 1)]);
        let p = UPolynomial::interpolate(&points).unwrap();
        for (x, y) in &points {
            assert_eq!(&p.eval(x), y);
        }
        assert_eq!(p.degree(), Some(5));
    }

    #[test]
    fn eval_inv_pi_reference_values() {
        assert!(UPolynomial::zero().eval_inv_pi(64).is_zero());
        let p = UPolynomial::from_coeffs(vec![ratio(0, 1), ratio(-4, 1)]);
        let v = p.eval_inv_pi_f64(128).unwrap();
        assert!((v - (-1.2732395447351628)).abs() < 1e-15);
    }
}
