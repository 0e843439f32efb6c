use std::f64::consts::PI;

/// Numeric estimate of c(i,j) from the standard resistance double integral,
/// c = -2 R with
/// R(i,j) = 1/(4 pi^2) * integral over [-pi,pi]^2 of
///          (1 - cos(i t + j p)) / (2 - cos t - cos p) dt dp,
/// by the midpoint product rule on a `grid` x `grid` mesh. The mesh points
/// sit at cell centers, so the removable singularity at the origin is never
/// sampled. Used as an independent check of the exact table.
pub fn quadrature_oracle(i: i64, j: i64, grid: usize) -> f64 {
    assert!(grid >= 64, "grid too coarse for the oracle");
    if i == 0 && j == 0 {
        return 0.0;
    }
    let n = grid;
    let h = 2.0 * PI / n as f64;
    // nodes t_k = -pi + (k + 1/2) h; precompute the trig arrays so the
    // inner loop is additions and multiplications only
    let mut cos_t = vec![0.0f64; n];
    let mut cos_it = vec![0.0f64; n];
    let mut sin_it = vec![0.0f64; n];
    let mut cos_jt = vec![0.0f64; n];
    let mut sin_jt = vec![0.0f64; n];
    for k in 0..n {
        let t = -PI + (k as f64 + 0.5) * h;
        cos_t[k] = t.cos();
        let it = i as f64 * t;
        cos_it[k] = it.cos();
        sin_it[k] = it.sin();
        let jt = j as f64 * t;
        cos_jt[k] = jt.cos();
        sin_jt[k] = jt.sin();
    }
    let mut sum = 0.0f64;
    for a in 0..n {
        let mut row = 0.0f64;
        for b in 0..n {
            // cos(i t_a + j t_b) via the addition formula
            let c = cos_it[a] * cos_jt[b] - sin_it[a] * sin_jt[b];
            row += (1.0 - c) / (2.0 - cos_t[a] - cos_t[b]);
        }
        sum += row;
    }
    let resistance = sum * h * h / (4.0 * PI * PI);
    -2.0 * resistance
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::CTable;

    #[test]
    fn matches_known_values() {
        assert_eq!(quadrature_oracle(0, 0, 64), 0.0);
        assert!((quadrature_oracle(0, 1, 512) - (-1.0)).abs() < 1e-6);
        assert!((quadrature_oracle(1, 1, 512) - (-1.2732395)).abs() < 1e-6);
        assert!((quadrature_oracle(2, 2, 512) - (-1.6976527)).abs() < 1e-6);
    }

    #[test]
    fn agrees_with_exact_table() {
        let t = CTable::build(4);
        for i in 0..=4i64 {
            for j in i..=4i64 {
                let exact = t.lookup(i, j).unwrap().to_f64().unwrap();
                let approx = quadrature_oracle(i, j, 1024);
                assert!(
                    (exact - approx).abs() <= 1e-5,
                    "c({i},{j}): {exact} vs {approx}"
                );
            }
        }
    }
}
