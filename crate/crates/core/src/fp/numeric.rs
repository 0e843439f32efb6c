use crate::error::{Error, Result};
use crate::green::CTable;
use crate::numerics::PiLinear;
use crate::sap::Word;

use super::neighborhood::{build_neighborhood, NeighborhoodGraph};

/// Relative determinant floor below which the numeric path refuses to
/// answer and recommends exact mode.
const DET_FLOOR: f64 = 1e-12;

/// f64 readout of a C table, cached once so polygon sweeps do no rational
/// arithmetic in the inner loop.
#[derive(Clone, Debug)]
pub struct FloatCTable {
    max_index: usize,
    values: Vec<f64>,
}

impl FloatCTable {
    pub fn new(table: &CTable) -> Result<FloatCTable> {
        let n = table.max_index();
        let mut values = Vec::with_capacity((n + 1) * (n + 2) / 2);
        for j in 0..=n {
            for i in 0..=j {
                values.push(table.lookup(i as i64, j as i64)?.to_f64()?);
            }
        }
        Ok(FloatCTable { max_index: n, values })
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    #[inline]
    pub fn lookup(&self, dx: i64, dy: i64) -> Result<f64> {
        let i = dx.unsigned_abs().min(dy.unsigned_abs()) as usize;
        let j = dx.unsigned_abs().max(dy.unsigned_abs()) as usize;
        if j > self.max_index {
            return Err(Error::TableTooSmall { i, j, max_index: self.max_index });
        }
        Ok(self.values[j * (j + 1) / 2 + i])
    }
}

/// Restriction of the exact C matrix to the neighborhood, row-major.
pub fn extract_cp(table: &CTable, graph: &NeighborhoodGraph) -> Result<Vec<PiLinear>> {
    let n = graph.size();
    let verts = graph.vertices();
    let mut out = Vec::with_capacity(n * n);
    for &(xi, yi) in verts {
        for &(xj, yj) in verts {
            out.push(table.lookup(xi - xj, yi - yj)?.clone());
        }
    }
    Ok(out)
}

fn extract_cp_f64(floats: &FloatCTable, graph: &NeighborhoodGraph) -> Result<Vec<f64>> {
    let n = graph.size();
    let verts = graph.vertices();
    let mut out = Vec::with_capacity(n * n);
    for &(xi, yi) in verts {
        for &(xj, yj) in verts {
            out.push(floats.lookup(xi - xj, yi - yj)?);
        }
    }
    Ok(out)
}

/// Fraction of closed walks whose last erased loop is the polygon `word`:
/// 4^-(l+1) * deg^T adj(Id + C_p B_p / 4) 1, evaluated in floats with the
/// adjugate factored as det * inverse.
pub fn fp_numeric(word: &Word, table: &CTable) -> Result<f64> {
    fp_numeric_with(word, &FloatCTable::new(table)?)
}

/// Same as `fp_numeric` against a pre-built float table; the entry point
/// for sweeps.
pub fn fp_numeric_with(word: &Word, floats: &FloatCTable) -> Result<f64> {
    let graph = build_neighborhood(word)?;
    fp_numeric_graph(&graph, floats)
}

pub(crate) fn fp_numeric_graph(graph: &NeighborhoodGraph, floats: &FloatCTable) -> Result<f64> {
    let n = graph.size();
    let c = extract_cp_f64(floats, graph)?;

    // M = Id + (1/4) C B; B is 0/1 so column j of C B sums the C columns
    // at j's neighbors
    let mut m = vec![0.0f64; n * n];
    for j in 0..n {
        for &k in graph.neighbors(j) {
            for i in 0..n {
                m[i * n + j] += c[i * n + k];
            }
        }
    }
    for v in m.iter_mut() {
        *v *= 0.25;
    }
    for i in 0..n {
        m[i * n + i] += 1.0;
    }

    // Hadamard-style conditioning reference: product of row infinity norms
    let mut log2_norms = 0.0f64;
    for i in 0..n {
        let norm = m[i * n..(i + 1) * n]
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        log2_norms += norm.log2();
    }

    let lu = lu_decompose(m, n)?;
    if lu.log2_abs_det < log2_norms + DET_FLOOR.log2() {
        return Err(Error::IllConditioned { threshold: DET_FLOOR });
    }

    // y = M^-1 1, s = deg . y
    let y = lu.solve_ones(n);
    let mut s = 0.0f64;
    for (i, yi) in y.iter().enumerate() {
        s += graph.degree(i) as f64 * yi;
    }

    // F = det(M) * s * 4^-(l+1), assembled in exponent pieces
    let l = graph.polygon_len() as i64;
    Ok(scale_by_pow2(
        lu.det_mantissa * s,
        lu.det_exponent - 2 * (l + 1),
    ))
}

struct Lu {
    data: Vec<f64>,
    pivots: Vec<usize>,
    det_mantissa: f64,
    det_exponent: i64,
    log2_abs_det: f64,
}

/// In-place LU with partial pivoting. The determinant is carried as a
/// mantissa renormalized into [2^-512, 2^512] plus a power-of-two exponent,
/// so polygons with hundreds of vertices cannot under- or overflow it.
fn lu_decompose(mut m: Vec<f64>, n: usize) -> Result<Lu> {
    let mut pivots = vec![0usize; n];
    let mut mant = 1.0f64;
    let mut exp = 0i64;
    for k in 0..n {
        let mut best = k;
        let mut best_abs = m[k * n + k].abs();
        for r in k + 1..n {
            let a = m[r * n + k].abs();
            if a > best_abs {
                best = r;
                best_abs = a;
            }
        }
        if best_abs == 0.0 {
            return Err(Error::IllConditioned { threshold: DET_FLOOR });
        }
        pivots[k] = best;
        if best != k {
            for c in 0..n {
                m.swap(k * n + c, best * n + c);
            }
            mant = -mant;
        }
        let pivot = m[k * n + k];
        mant *= pivot;
        while mant.abs() > 1.34e154 {
            mant *= 7.458340731200207e-155; // 2^-512
            exp += 512;
        }
        while mant.abs() < 7.458340731200207e-155 {
            mant *= 1.3407807929942597e154; // 2^512
            exp -= 512;
        }
        for r in k + 1..n {
            let factor = m[r * n + k] / pivot;
            m[r * n + k] = factor;
            if factor != 0.0 {
                for c in k + 1..n {
                    m[r * n + c] -= factor * m[k * n + c];
                }
            }
        }
    }
    let log2_abs_det = mant.abs().log2() + exp as f64;
    Ok(Lu {
        data: m,
        pivots,
        det_mantissa: mant,
        det_exponent: exp,
        log2_abs_det,
    })
}

impl Lu {
    /// Solves M y = 1 through the stored factors.
    fn solve_ones(&self, n: usize) -> Vec<f64> {
        let mut y = vec![1.0f64; n];
        for k in 0..n {
            y.swap(k, self.pivots[k]);
            let yk = y[k];
            if yk != 0.0 {
                for r in k + 1..n {
                    y[r] -= self.data[r * n + k] * yk;
                }
            }
        }
        for k in (0..n).rev() {
            let mut acc = y[k];
            for c in k + 1..n {
                acc -= self.data[k * n + c] * y[c];
            }
            y[k] = acc / self.data[k * n + k];
        }
        y
    }
}

/// x * 2^e without overflowing intermediate powers.
fn scale_by_pow2(mut x: f64, mut e: i64) -> f64 {
    while e > 900 {
        x *= 2f64.powi(900);
        e -= 900;
    }
    while e < -900 {
        x *= 2f64.powi(-900);
        e += 900;
    }
    x * 2f64.powi(e as i32)
}
