use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::green::CTable;
use crate::numerics::{ratio, rational_to_f64, PiLinear, Rational, UPolynomial};
use crate::sap::Word;

use super::neighborhood::build_neighborhood;
use super::numeric::extract_cp;

/// Exact fraction F_p = scale * g(1/pi) with rational scale 4^-(l+1) and a
/// rational-coefficient polynomial g.
#[derive(Clone, Debug)]
pub struct FpExact {
    pub word: Word,
    pub scale: Rational,
    pub g: UPolynomial,
}

impl FpExact {
    /// Exact rational approximation of the value, good to roughly
    /// `precision_bits` bits.
    pub fn value(&self, precision_bits: u32) -> Rational {
        self.g.eval_inv_pi(precision_bits) * &self.scale
    }

    pub fn value_f64(&self) -> Result<f64> {
        rational_to_f64(&self.value(128))
    }
}

/// Evaluates F_p exactly. The contraction deg^T adj(M(u)) 1 is a polynomial
/// of degree at most the neighborhood size N in the formal variable u
/// standing for 1/pi, so it is pinned down by exact evaluation at N+1
/// rational nodes (integers 0, 1, 2, ... skipping any where M is singular)
/// followed by interpolation.
pub fn fp_exact(word: &Word, table: &CTable) -> Result<FpExact> {
    let graph = build_neighborhood(word)?;
    let n = graph.size();
    let cp = extract_cp(table, &graph)?;
    let degrees: Vec<Rational> = (0..n).map(|i| ratio(graph.degree(i) as i64, 1)).collect();

    let needed = n + 1;
    let budget = 3 * needed;
    let mut points: Vec<(Rational, Rational)> = Vec::with_capacity(needed);
    let mut node = 0i64;
    let mut tried = 0usize;
    while points.len() < needed && tried < budget {
        let u = ratio(node, 1);
        node += 1;
        tried += 1;
        if let Some(value) = contract_at(&cp, &graph.adjacency_lists(), &degrees, n, &u) {
            points.push((u, value));
        }
    }
    if points.len() < needed {
        return Err(Error::InterpolationFailure { needed, tried });
    }

    let g = UPolynomial::interpolate(&points)?;
    let l = word.len() as u32;
    let scale = Rational::new(BigInt::one(), BigInt::from(4u8).pow(l + 1));
    Ok(FpExact { word: word.clone(), scale, g })
}

/// det(M(u)) * deg^T M(u)^-1 1 over exact rationals, or None when M(u) is
/// singular. M(u) = Id + (1/4) C_p(u) B_p with every C_p entry affine in u.
fn contract_at(
    cp: &[PiLinear],
    adjacency: &[Vec<usize>],
    degrees: &[Rational],
    n: usize,
    u: &Rational,
) -> Option<Rational> {
    let quarter = ratio(1, 4);
    // rational M, column by column through the 0/1 structure of B
    let mut m = vec![Rational::zero(); n * n];
    for (j, adj) in adjacency.iter().enumerate() {
        for &k in adj {
            for i in 0..n {
                let e = cp[i * n + k].eval_at(u);
                m[i * n + j] += e;
            }
        }
    }
    for v in m.iter_mut() {
        *v *= &quarter;
    }
    for i in 0..n {
        m[i * n + i] += Rational::one();
    }

    // Gaussian elimination on [M | 1] with row pivoting, det from pivots
    let mut rhs = vec![Rational::one(); n];
    let mut det = Rational::one();
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !m[r * n + k].is_zero())?;
        if pivot_row != k {
            for c in k..n {
                m.swap(k * n + c, pivot_row * n + c);
            }
            rhs.swap(k, pivot_row);
            det = -det;
        }
        let pivot = m[k * n + k].clone();
        det *= &pivot;
        for r in k + 1..n {
            if m[r * n + k].is_zero() {
                continue;
            }
            let factor = &m[r * n + k] / &pivot;
            for c in k + 1..n {
                let sub = &factor * &m[k * n + c];
                m[r * n + c] -= sub;
            }
            let sub = &factor * &rhs[k];
            rhs[r] -= sub;
            m[r * n + k] = Rational::zero();
        }
    }
    // back substitution
    for k in (0..n).rev() {
        let mut acc = rhs[k].clone();
        for c in k + 1..n {
            acc -= &m[k * n + c] * &rhs[c];
        }
        rhs[k] = acc / &m[k * n + k];
    }
    let mut s = Rational::zero();
    for (d, y) in degrees.iter().zip(&rhs) {
        s += d * y;
    }
    Some(det * s)
}
