//! Exact diagonal resistances r_n between the origin and (n,n) on the
//! infinite triangular resistor lattice.
//!
//! Three independent routes are provided: the third-order recurrence with
//! inhomogeneous term -4 sqrt(3)/(pi (n-1)); the closed form built from the
//! terminating hypergeometric values H(n); and a quadrature oracle for the
//! defining integral. The first two agree exactly, the oracle numerically.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numerics::{ratio, Rational, Sqrt3PiLinear};

/// Diagonal resistance r_n = a + b sqrt(3)/pi, exact.
#[derive(Clone, Debug, PartialEq)]
pub struct TriResistance {
    pub n: usize,
    pub value: Sqrt3PiLinear,
}

/// r_0..r_{n_max} by the recurrence
/// r_n = ((15n-22) r_{n-1} - (15n-23) r_{n-2} + (n-2) r_{n-3}) / (n-1)
///       - 4 sqrt(3) / (pi (n-1)),
/// with r_{-1} = 0, r_0 = 0, r_1 = 1/3. The homogeneous part acts on both
/// components; the inhomogeneous term only touches the sqrt(3)/pi one.
pub fn resistances(n_max: usize) -> Vec<TriResistance> {
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(TriResistance { n: 0, value: Sqrt3PiLinear::zero() });
    if n_max == 0 {
        return out;
    }
    out.push(TriResistance {
        n: 1,
        value: Sqrt3PiLinear::new(ratio(1, 3), Rational::zero()),
    });
    let zero = Sqrt3PiLinear::zero();
    for n in 2..=n_max {
        let back = |k: usize| -> &Sqrt3PiLinear {
            // r_{n-3} is the conventional zero when n = 2
            if n >= k { &out[n - k].value } else { &zero }
        };
        let ni = n as i64;
        let homogeneous = &(&back(1).scale(&ratio(15 * ni - 22, ni - 1))
            - &back(2).scale(&ratio(15 * ni - 23, ni - 1)))
            + &back(3).scale(&ratio(ni - 2, ni - 1));
        let value = homogeneous.add_b(&ratio(-4, ni - 1));
        out.push(TriResistance { n, value });
    }
    out
}

/// The terminating hypergeometric value H(n) = 3F2(1/2, -n+1, n+1; 1, 3/2; -3),
/// a rational number, computed as (1/n) sum_{k=0}^{n-1} c(n,k) 3^k with
/// c(n,k) = (n+k)! / ((2k+1) (k!)^2 (n-k-1)!). Each term follows from the
/// previous by a small rational ratio, so factorials never materialize.
pub fn h_value(n: usize) -> Result<Rational> {
    if n == 0 {
        return Err(Error::TriDomain);
    }
    let ni = n as i64;
    // k = 0 term: c(n,0) 3^0 = n
    let mut term = Rational::from_integer(ni.into());
    let mut sum = term.clone();
    for k in 0..ni - 1 {
        // c(n,k+1) 3^{k+1} / (c(n,k) 3^k)
        let num = 3 * (2 * k + 1) * (ni + k + 1) * (ni - k - 1);
        let den = (2 * k + 3) * (k + 1) * (k + 1);
        term *= ratio(num, den);
        sum += &term;
    }
    Ok(sum / Rational::from_integer(ni.into()))
}

/// Closed form r_n = (n/3) H(n) - (4 sqrt(3)/pi) sum_{m=1}^{n} (n-m) H(n-m) H(m).
/// The m = n summand carries weight zero, so H(0) is never needed.
pub fn closed_form(n: usize) -> TriResistance {
    let value = closed_form_from(&h_table(n), n);
    TriResistance { n, value }
}

/// H(1)..H(n) in one pass (empty for n = 0).
pub fn h_table(n: usize) -> Vec<Rational> {
    (1..=n).map(|m| h_value(m).expect("m >= 1")).collect()
}

fn closed_form_from(h: &[Rational], n: usize) -> Sqrt3PiLinear {
    if n == 0 {
        return Sqrt3PiLinear::zero();
    }
    let a = ratio(n as i64, 3) * &h[n - 1];
    let mut s = Rational::zero();
    for m in 1..n {
        s += Rational::from_integer(((n - m) as i64).into()) * &h[n - m - 1] * &h[m - 1];
    }
    Sqrt3PiLinear::new(a, s * ratio(-4, 1))
}

/// Two-term logarithmic asymptotic
/// r_n ~ log(n)/(sqrt(3) pi) + (gamma + log(2 sqrt(3)))/(sqrt(3) pi).
pub fn asymptotic(n: usize) -> f64 {
    assert!(n >= 1);
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    let s3pi = 3f64.sqrt() * std::f64::consts::PI;
    ((n as f64).ln() + EULER_GAMMA + (2.0 * 3f64.sqrt()).ln()) / s3pi
}

/// Quadrature of r_n = (2/pi) int_0^{pi/2} sin(nx)^2 / (sin x sqrt(4 - cos^2 x)) dx.
///
/// The integrand behaves like sin(nx)^2/(sqrt(3) x) near zero. That part is
/// split off and integrated by a convergent series on [0, a] with n a <= 4;
/// the smooth remainder on [0, a] and the full integrand on [a, pi/2] go
/// through the midpoint rule, which never samples x = 0.
pub fn integral_oracle(n: usize, grid: usize) -> f64 {
    assert!(grid >= 128, "grid too coarse for the oracle");
    if n == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let a = (4.0 / nf).min(half_pi);

    // series for (1/sqrt(3)) int_0^a sin(nx)^2 / x dx with v = n a:
    // int_0^v sin(u)^2/u du = sum_{k>=1} (-1)^{k+1} (2v)^{2k} / (4k (2k)!)
    let v = nf * a;
    let mut series = 0.0f64;
    let mut p = 1.0f64; // (2v)^{2k} / (2k)!, starting at k = 0
    let fourv2 = 4.0 * v * v;
    for k in 1..=60 {
        p *= fourv2 / ((2 * k - 1) as f64 * (2 * k) as f64);
        let term = p / (4.0 * k as f64);
        series += if k % 2 == 1 { term } else { -term };
        if term.abs() < 1e-22 {
            break;
        }
    }
    let singular_part = series / 3f64.sqrt();

    let f = |x: f64| 1.0 / (x.sin() * (4.0 - x.cos() * x.cos()).sqrt());
    let sin2 = |x: f64| {
        let s = (nf * x).sin();
        s * s
    };

    // smooth remainder on [0, a]
    let m1 = (grid / 4).max(64);
    let h1 = a / m1 as f64;
    let mut patch = 0.0f64;
    for k in 0..m1 {
        let x = (k as f64 + 0.5) * h1;
        patch += sin2(x) * (f(x) - 1.0 / (3f64.sqrt() * x));
    }
    patch *= h1;

    // full integrand on [a, pi/2]
    let mut tail = 0.0f64;
    if a < half_pi {
        let h2 = (half_pi - a) / grid as f64;
        for k in 0..grid {
            let x = a + (k as f64 + 0.5) * h2;
            tail += sin2(x) * f(x);
        }
        tail *= h2;
    }

    (2.0 / std::f64::consts::PI) * (singular_part + patch + tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_values() {
        let rs = resistances(2);
        assert_eq!(rs[0].value, Sqrt3PiLinear::zero());
        assert_eq!(
            rs[1].value,
            Sqrt3PiLinear::new(ratio(1, 3), Rational::zero())
        );
        assert_eq!(rs[2].value, Sqrt3PiLinear::new(ratio(8, 3), ratio(-4, 1)));
    }

    #[test]
    fn h_values() {
        assert!(h_value(0).is_err());
        assert!(h_value(1).unwrap().is_one());
        assert_eq!(h_value(2).unwrap(), ratio(4, 1));
        assert_eq!(h_value(3).unwrap(), ratio(27, 1));
        assert_eq!(h_value(5).unwrap(), ratio(11249, 5));
    }

    #[test]
    fn n_h_satisfies_homogeneous_recurrence() {
        let h = h_table(50);
        // n H(n), with the n = 0 element of the sequence being zero
        let nh = |n: usize| {
            if n == 0 {
                Rational::zero()
            } else {
                ratio(n as i64, 1) * &h[n - 1]
            }
        };
        for n in 3..=50i64 {
            let lhs = nh(n as usize) * ratio(n - 1, 1);
            let rhs = ratio(15 * n - 22, 1) * nh((n - 1) as usize)
                - ratio(15 * n - 23, 1) * nh((n - 2) as usize)
                + ratio(n - 2, 1) * nh((n - 3) as usize);
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn closed_form_matches_recurrence() {
        let rs = resistances(40);
        let h = h_table(40);
        for n in 0..=40 {
            assert_eq!(closed_form_from(&h, n), rs[n].value, "n = {n}");
        }
    }

    #[test]
    fn oracle_matches_exact_values() {
        assert_eq!(integral_oracle(0, 128), 0.0);
        assert!((integral_oracle(1, 1024) - 1.0 / 3.0).abs() < 1e-6);
        let r2 = Sqrt3PiLinear::new(ratio(8, 3), ratio(-4, 1)).to_f64().unwrap();
        assert!((integral_oracle(2, 1024) - r2).abs() < 1e-4);
        let rs = resistances(10);
        for r in &rs {
            let exact = r.value.to_f64().unwrap();
            let approx = integral_oracle(r.n, 8192);
            assert!(
                (exact - approx).abs() <= 1e-6,
                "n = {}: {exact} vs {approx}",
                r.n
            );
        }
    }

    #[test]
    fn asymptotic_properties() {
        let rs = resistances(200);
        let exact = |n: usize| rs[n].value.to_f64().unwrap();
        // residual already small at n = 1
        assert!((exact(1) - asymptotic(1)).abs() < 0.2);
        // log law between two evaluations
        let d = asymptotic(100) - asymptotic(10);
        assert!((d - 10f64.ln() / (3f64.sqrt() * std::f64::consts::PI)).abs() < 1e-12);
        // resistance grows with distance
        for n in 1..=100 {
            assert!(exact(n) > exact(n - 1), "monotonicity at n = {n}");
        }
    }
}
