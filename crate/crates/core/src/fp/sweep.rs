use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::green::CTable;
use crate::sap::{enumerate, partition, Explorer, Word};

use super::numeric::{fp_numeric_graph, FloatCTable};
use super::neighborhood::build_neighborhood;

/// Neumaier compensated accumulator; the sweep adds up to billions of
/// same-sign terms and must keep 14 digits.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    sum: f64,
    comp: f64,
}

impl Accumulator {
    pub fn new() -> Self {
        Accumulator::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }

    fn parts(&self) -> (f64, f64) {
        (self.sum, self.comp)
    }
}

/// Per-length sweep outcome: polygon count, the canonical-representative
/// sum, F(l) = 2l times that sum, and the running cumulative S(l).
#[derive(Clone, Copy, Debug)]
pub struct SweepResult {
    pub len: usize,
    pub count: u64,
    pub canonical_sum: f64,
    pub f_ell: f64,
    pub s_ell: f64,
}

/// Accumulates S(l) across sweeps run in ascending length order,
/// starting from S(0) = 0.
#[derive(Debug, Default)]
pub struct SweepAccumulator {
    s: Accumulator,
}

impl SweepAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sweeps an explicit word stream (from a store or any source).
    pub fn sweep<I>(&mut self, len: usize, floats: &FloatCTable, words: I) -> Result<SweepResult>
    where
        I: IntoIterator<Item = Word>,
    {
        let mut acc = Accumulator::new();
        let mut count = 0u64;
        for w in words {
            if w.len() != len {
                return Err(Error::StreamMismatch { expected: len, got: w.len() });
            }
            let graph = build_neighborhood(&w)?;
            acc.add(fp_numeric_graph(&graph, floats)?);
            count += 1;
        }
        Ok(self.finish(len, count, acc))
    }

    /// Enumerates on the fly and sweeps, optionally across `jobs` workers.
    /// The work split and the merge order are fixed by the partition
    /// prefixes alone, so results are identical for any worker count.
    pub fn sweep_enumerated(
        &mut self,
        len: usize,
        floats: &FloatCTable,
        jobs: usize,
    ) -> Result<SweepResult> {
        let (count, acc) = sweep_canonical_sum(len, floats, jobs)?;
        Ok(self.finish(len, count, acc))
    }

    fn finish(&mut self, len: usize, count: u64, acc: Accumulator) -> SweepResult {
        let canonical_sum = acc.total();
        let f_ell = 2.0 * len as f64 * canonical_sum;
        self.s.add(f_ell);
        SweepResult {
            len,
            count,
            canonical_sum,
            f_ell,
            s_ell: self.s.total(),
        }
    }
}

/// Depth of the static work partition: deep enough to give a few thousand
/// chunks at sweep scale, small enough that the frontier itself is cheap.
fn partition_depth(len: usize) -> usize {
    (len / 2).min(8).max(1)
}

/// Canonical-representative sum over Sap_len with deterministic chunking.
fn sweep_canonical_sum(
    len: usize,
    floats: &FloatCTable,
    jobs: usize,
) -> Result<(u64, Accumulator)> {
    let jobs = jobs.max(1);
    if len == 2 || jobs == 1 {
        let mut acc = Accumulator::new();
        let mut count = 0u64;
        let mut failure: Option<Error> = None;
        enumerate(len, |w| {
            if failure.is_some() {
                return;
            }
            match build_neighborhood(w).and_then(|g| fp_numeric_graph(&g, floats)) {
                Ok(v) => {
                    acc.add(v);
                    count += 1;
                }
                Err(e) => failure = Some(e),
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        return Ok((count, acc));
    }

    let prefixes = partition(len, partition_depth(len))?;
    let chunks = prefixes.len();
    let results: Mutex<Vec<Option<Result<(u64, f64, f64)>>>> =
        Mutex::new((0..chunks).map(|_| None).collect());
    let cursor = AtomicUsize::new(0);

    std::thread::scope(|scope| {
        for _ in 0..jobs.min(chunks) {
            scope.spawn(|| {
                let mut explorer = match Explorer::new(len) {
                    Ok(e) => e,
                    Err(_) => return, // length validated by partition above
                };
                loop {
                    let idx = cursor.fetch_add(1, Ordering::Relaxed);
                    if idx >= chunks {
                        return;
                    }
                    let mut acc = Accumulator::new();
                    let mut count = 0u64;
                    let mut failure: Option<Error> = None;
                    let emitted = explorer.run_prefix(prefixes[idx].steps(), |steps| {
                        if failure.is_some() {
                            return;
                        }
                        let word = Word::new(steps.to_vec());
                        match build_neighborhood(&word)
                            .and_then(|g| fp_numeric_graph(&g, floats))
                        {
                            Ok(v) => {
                                acc.add(v);
                                count += 1;
                            }
                            Err(e) => failure = Some(e),
                        }
                    });
                    let outcome = match (failure, emitted) {
                        (Some(e), _) => Err(e),
                        (None, Some(_)) => {
                            let (s, c) = acc.parts();
                            Ok((count, s, c))
                        }
                        (None, None) => Ok((0, 0.0, 0.0)),
                    };
                    results.lock().unwrap()[idx] = Some(outcome);
                }
            });
        }
    });

    // merge in prefix order: chunk boundaries, not the worker schedule,
    // define the floating-point reduction
    let mut acc = Accumulator::new();
    let mut count = 0u64;
    for slot in results.into_inner().unwrap() {
        let (n, s, c) = slot.expect("all chunks visited")?;
        count += n;
        acc.add(s);
        acc.add(c);
    }
    Ok((count, acc))
}

/// Extremal fractions over all canonical polygons of one length, ties
/// resolved toward the lexicographically smallest word.
#[derive(Clone, Debug)]
pub struct Extrema {
    pub max_word: Word,
    pub max_fp: f64,
    pub min_word: Word,
    pub min_fp: f64,
}

pub fn extrema(len: usize, table: &CTable) -> Result<Extrema> {
    let floats = FloatCTable::new(table)?;
    let mut best: Option<Extrema> = None;
    let mut failure: Option<Error> = None;
    enumerate(len, |w| {
        if failure.is_some() {
            return;
        }
        let v = match build_neighborhood(w).and_then(|g| fp_numeric_graph(&g, &floats)) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        match &mut best {
            None => {
                best = Some(Extrema {
                    max_word: w.clone(),
                    max_fp: v,
                    min_word: w.clone(),
                    min_fp: v,
                });
            }
            Some(b) => {
                if v > b.max_fp {
                    b.max_word = w.clone();
                    b.max_fp = v;
                }
                if v < b.min_fp {
                    b.min_word = w.clone();
                    b.min_fp = v;
                }
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    best.ok_or_else(|| Error::InvalidPolygon("empty enumeration".into()))
}

/// Writes the per-length sweep table as `ell,pi,F_ell,S_ell` with 14
/// digits, the published layout.
pub fn write_sweep_csv<W: Write>(mut out: W, rows: &[SweepResult]) -> Result<()> {
    writeln!(out, "ell,pi,F_ell,S_ell")?;
    for r in rows {
        writeln!(out, "{},{},{:.14},{:.14}", r.len, r.count, r.f_ell, r.s_ell)?;
    }
    Ok(())
}

/// Deviation of S(l) from the conjectured 1 - l^(-3/5) law, raw and scaled
/// by l.
#[derive(Clone, Copy, Debug)]
pub struct FitRow {
    pub len: usize,
    pub s_ell: f64,
    pub eps: f64,
    pub eps_times_ell: f64,
}

/// Per-side-length square-family fit row; the log column uses base 10,
/// the plot convention.
#[derive(Clone, Copy, Debug)]
pub struct SquareFitRow {
    pub side: usize,
    pub fp: f64,
    pub log_f_over_4l: f64,
}

pub fn fit_rows(results: &[SweepResult]) -> Vec<FitRow> {
    results
        .iter()
        .map(|r| {
            let eps = r.s_ell - (1.0 - (r.len as f64).powf(-0.6));
            FitRow {
                len: r.len,
                s_ell: r.s_ell,
                eps,
                eps_times_ell: eps * r.len as f64,
            }
        })
        .collect()
}

pub fn square_fit_rows(squares: &[(usize, f64)]) -> Vec<SquareFitRow> {
    squares
        .iter()
        .map(|&(side, fp)| SquareFitRow {
            side,
            fp,
            log_f_over_4l: fp.log10() / (4.0 * side as f64),
        })
        .collect()
}

pub fn write_fit_csv<W: Write>(
    mut out: W,
    rows: &[FitRow],
    squares: &[SquareFitRow],
) -> Result<()> {
    writeln!(out, "ell,S,eps,eps_times_ell")?;
    for r in rows {
        writeln!(
            out,
            "{},{:.14},{:.14},{:.14}",
            r.len, r.s_ell, r.eps, r.eps_times_ell
        )?;
    }
    writeln!(out, "L,F,logF_over_4L")?;
    for r in squares {
        writeln!(out, "{},{:e},{:.14}", r.side, r.fp, r.log_f_over_4l)?;
    }
    Ok(())
}
