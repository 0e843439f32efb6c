use std::io::{BufRead, BufReader, Read, Write};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numerics::{format_rational, parse_rational, ratio, PiLinear, Rational};

/// Exact square-lattice C-matrix coefficients c(i,j) = C_{O,(i,j)} for
/// 0 <= i <= j <= max_index, each a rational plus a rational multiple
/// of 1/pi.
///
/// The full dihedral symmetry of the lattice means any offset (dx, dy)
/// resolves to the stored triangle via (min(|dx|,|dy|), max(|dx|,|dy|)).
#[derive(Clone, Debug, PartialEq)]
pub struct CTable {
    max_index: usize,
    // triangular layout: entry (i, j) with i <= j lives at j(j+1)/2 + i
    entries: Vec<PiLinear>,
}

fn tri_index(i: usize, j: usize) -> usize {
    j * (j + 1) / 2 + i
}

impl CTable {
    /// Builds the table by the exact recurrence, row by row in increasing j:
    /// the first column from the axis relation, interior entries from the
    /// four-neighbor relation, the near-diagonal entry from the symmetric
    /// combination, and the diagonal from the odd-harmonic sum.
    pub fn build(max_index: usize) -> CTable {
        assert!(max_index >= 1, "table needs max_index >= 1");
        let n = max_index;
        let mut entries = vec![PiLinear::zero(); tri_index(n, n) + 1];

        // c(0,0) = 0, c(0,1) = -1, c(1,1) = -4/pi
        entries[tri_index(0, 1)] = PiLinear::from_integers(-1, 0);
        let mut diag_b = Rational::zero();
        diag_b -= ratio(4, 1);
        entries[tri_index(1, 1)] = PiLinear::new(Rational::zero(), diag_b.clone());

        for j in 2..=n {
            // c(0,j) = 4 c(0,j-1) - c(0,j-2) - 2 c(1,j-1)
            let v = &(&entries[tri_index(0, j - 1)].scale_int(4)
                - &entries[tri_index(0, j - 2)])
                - &entries[tri_index(1, j - 1)].scale_int(2);
            entries[tri_index(0, j)] = v;
            // c(i,j) = 4 c(i,j-1) - c(i,j-2) - c(i-1,j-1) - c(i+1,j-1)
            for i in 1..=j.saturating_sub(2) {
                let v = &(&(&entries[tri_index(i, j - 1)].scale_int(4)
                    - &entries[tri_index(i, j - 2)])
                    - &entries[tri_index(i - 1, j - 1)])
                    - &entries[tri_index(i + 1, j - 1)];
                entries[tri_index(i, j)] = v;
            }
            // c(j-1,j) = 2 c(j-1,j-1) - c(j-2,j-1)
            let v = &entries[tri_index(j - 1, j - 1)].scale_int(2)
                - &entries[tri_index(j - 2, j - 1)];
            entries[tri_index(j - 1, j)] = v;
            // c(j,j) = -(4/pi) * sum_{k=1..j} 1/(2k-1)
            diag_b -= ratio(4, 2 * j as i64 - 1);
            entries[tri_index(j, j)] = PiLinear::new(Rational::zero(), diag_b.clone());
        }
        CTable { max_index: n, entries }
    }

    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry for the lattice offset (dx, dy), resolved through the
    /// dihedral symmetry of the square lattice.
    pub fn lookup(&self, dx: i64, dy: i64) -> Result<&PiLinear> {
        let i = dx.unsigned_abs().min(dy.unsigned_abs()) as usize;
        let j = dx.unsigned_abs().max(dy.unsigned_abs()) as usize;
        if j > self.max_index {
            return Err(Error::TableTooSmall { i, j, max_index: self.max_index });
        }
        Ok(&self.entries[tri_index(i, j)])
    }

    /// Writes the plain-text table format: a `SQCT,1,<max_index>` header
    /// followed by one `<i>,<j>,<a>,<b>` line per stored entry, j ascending
    /// then i, fractions in reduced `num/den` form.
    pub fn save<W: Write>(&self, mut sink: W) -> Result<()> {
        writeln!(sink, "SQCT,1,{}", self.max_index)?;
        for j in 0..=self.max_index {
            for i in 0..=j {
                let e = &self.entries[tri_index(i, j)];
                writeln!(
                    sink,
                    "{},{},{},{}",
                    i,
                    j,
                    format_rational(e.a()),
                    format_rational(e.b())
                )?;
            }
        }
        Ok(())
    }

    pub fn load<R: Read>(source: R) -> Result<CTable> {
        let reader = BufReader::new(source);
        let mut lines = reader.lines().enumerate();
        let header = lines
            .next()
            .ok_or_else(|| fmt_err(1, "empty file, expected SQCT header"))?
            .1?;
        let mut parts = header.split(',');
        let (magic, version, max_index) = (parts.next(), parts.next(), parts.next());
        if magic != Some("SQCT") {
            return Err(fmt_err(1, "missing SQCT magic"));
        }
        if version != Some("1") {
            return Err(fmt_err(1, "unsupported version"));
        }
        let n: usize = max_index
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| fmt_err(1, "bad max_index in header"))?;
        if n < 1 || parts.next().is_some() {
            return Err(fmt_err(1, "bad header"));
        }

        let mut entries = vec![PiLinear::zero(); tri_index(n, n) + 1];
        let mut expect = (0usize, 0usize);
        for (idx, line) in lines {
            let line_no = idx + 1;
            let line = line?;
            if expect.1 > n {
                return Err(fmt_err(line_no, "more rows than the header announces"));
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(fmt_err(line_no, "expected 4 comma-separated fields"));
            }
            let i: usize = fields[0]
                .parse()
                .map_err(|_| fmt_err(line_no, "bad i"))?;
            let j: usize = fields[1]
                .parse()
                .map_err(|_| fmt_err(line_no, "bad j"))?;
            if (i, j) != expect {
                return Err(fmt_err(
                    line_no,
                    &format!("expected entry ({},{}), got ({i},{j})", expect.0, expect.1),
                ));
            }
            let a = parse_rational(fields[2]).map_err(|e| fmt_err(line_no, &e))?;
            let b = parse_rational(fields[3]).map_err(|e| fmt_err(line_no, &e))?;
            entries[tri_index(i, j)] = PiLinear::new(a, b);
            expect = if i == j { (0, j + 1) } else { (i + 1, j) };
        }
        if expect != (0, n + 1) {
            return Err(fmt_err(
                0,
                &format!("file truncated before entry ({},{})", expect.0, expect.1),
            ));
        }
        Ok(CTable { max_index: n, entries })
    }

    /// Exact harmonicity audit: around every interior point the four
    /// neighbor values must sum to 4 c(i,j), with a -4 defect at the origin
    /// only. Returns the violating (i, j) pairs, which must be empty.
    pub fn harmonicity_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for j in 0..self.max_index {
            for i in 0..=j {
                let (i, j) = (i as i64, j as i64);
                let mut sum = PiLinear::zero();
                for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    sum += self.lookup(i + dx, j + dy).expect("interior neighbor");
                }
                let mut rhs = self.lookup(i, j).expect("interior").scale_int(4);
                if (i, j) == (0, 0) {
                    rhs = &rhs - &PiLinear::from_integers(4, 0);
                }
                if sum != rhs {
                    bad.push((i as usize, j as usize));
                }
            }
        }
        bad
    }
}

fn fmt_err(line: usize, msg: &str) -> Error {
    Error::TableFormat { line, msg: msg.to_string() }
}
