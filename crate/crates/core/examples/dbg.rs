// standalone copy of the LU kernel to probe it on the RL matrix
fn lu(mut m: Vec<f64>, n: usize) -> (Vec<f64>, Vec<usize>, f64) {
    let mut pivots = vec![0usize; n];
    let mut det = 1.0f64;
    for k in 0..n {
        let mut best = k;
        let mut best_abs = m[k * n + k].abs();
        for r in k + 1..n {
            let a = m[r * n + k].abs();
            if a > best_abs { best = r; best_abs = a; }
        }
        pivots[k] = best;
        if best != k {
            for c in 0..n { m.swap(k * n + c, best * n + c); }
            det = -det;
        }
        let pivot = m[k * n + k];
        det *= pivot;
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
    (m, pivots, det)
}

fn main() {
    let t = sapfrac::green::CTable::build(8);
    let floats = sapfrac::fp::FloatCTable::new(&t).unwrap();
    let w: sapfrac::sap::Word = "RL".parse().unwrap();
    let g = sapfrac::fp::build_neighborhood(&w).unwrap();
    let n = g.size();
    let verts = g.vertices();
    let mut c = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            c[i*n+j] = floats.lookup(verts[i].0-verts[j].0, verts[i].1-verts[j].1).unwrap();
        }
    }
    let mut m = vec![0.0f64; n * n];
    for j in 0..n {
        for &k in g.neighbors(j) {
            for i in 0..n { m[i*n+j] += c[i*n+k]; }
        }
    }
    for v in m.iter_mut() { *v *= 0.25; }
    for i in 0..n { m[i*n+i] += 1.0; }

    let (lu_m, piv, det) = lu(m.clone(), n);
    println!("det = {det}");
    // solve M y = 1
    let mut y = vec![1.0f64; n];
    for k in 0..n {
        y.swap(k, piv[k]);
        let yk = y[k];
        for r in k+1..n { y[r] -= lu_m[r*n+k] * yk; }
    }
    for k in (0..n).rev() {
        let mut acc = y[k];
        for cc in k+1..n { acc -= lu_m[k*n+cc] * y[cc]; }
        y[k] = acc / lu_m[k*n+k];
    }
    println!("y = {y:?}");
    let s: f64 = (0..n).map(|i| g.degree(i) as f64 * y[i]).sum();
    println!("s = {s}, det*s/64 = {}", det*s/64.0);
    // residual check M y - 1
    let mut maxres = 0.0f64;
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n { acc += m[i*n+j]*y[j]; }
        maxres = maxres.max((acc-1.0).abs());
    }
    println!("max residual = {maxres:e}");
}
