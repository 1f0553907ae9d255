//! Matrix Market coordinate files (`real general`) and a CSR operator.

use std::io::{BufRead, Write};

use crate::dense::DenseMatrix;
use crate::error::{check_dim, Error, Result};
use crate::lanczos::MatrixOracle;

pub const HEADER: &str = "%%MatrixMarket matrix coordinate real general";

/// Compressed sparse row matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut sorted = triplets.to_vec();
        for &(i, j, _) in &sorted {
            if i >= nrows || j >= ncols {
                return Err(Error::InvalidArgument(format!(
                    "entry ({i}, {j}) outside a {nrows} x {ncols} matrix"
                )));
            }
        }
        sorted.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut row_ptr = vec![0; nrows + 1];
        let mut col_idx = Vec::with_capacity(sorted.len());
        let mut values: Vec<f64> = Vec::with_capacity(sorted.len());
        let mut last = None;
        for (i, j, v) in sorted {
            if last == Some((i, j)) {
                *values.last_mut().expect("previous entry") += v;
                continue;
            }
            last = Some((i, j));
            row_ptr[i + 1] += 1;
            col_idx.push(j);
            values.push(v);
        }
        for i in 0..nrows {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(Self {
            nrows,
            ncols,
            row_ptr,
            col_idx,
            values,
        })
    }

    pub fn from_dense(a: &DenseMatrix<f64>) -> Self {
        let mut t = Vec::new();
        for j in 0..a.ncols() {
            for (i, &v) in a.col(j).iter().enumerate() {
                if v != 0.0 {
                    t.push((i, j, v));
                }
            }
        }
        Self::from_triplets(a.nrows(), a.ncols(), &t).expect("indices within bounds")
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nrows).flat_map(move |i| {
            (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (i, self.col_idx[k], self.values[k]))
        })
    }

    pub fn to_dense(&self) -> DenseMatrix<f64> {
        let mut out = DenseMatrix::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.triplets() {
            out.set(i, j, v);
        }
        out
    }

    pub fn mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim("sparse product input length", self.ncols, x.len())?;
        Ok((0..self.nrows)
            .map(|i| {
                (self.row_ptr[i]..self.row_ptr[i + 1])
                    .map(|k| self.values[k] * x[self.col_idx[k]])
                    .sum()
            })
            .collect())
    }

    pub fn tr_mul_vec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim("sparse transpose product input length", self.nrows, x.len())?;
        let mut out = vec![0.0; self.ncols];
        for (i, &xi) in x.iter().enumerate() {
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                out[self.col_idx[k]] += self.values[k] * xi;
            }
        }
        Ok(out)
    }
}

impl MatrixOracle for CsrMatrix {
    fn dim(&self) -> usize {
        self.nrows
    }

    fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim("operator column count", self.nrows, self.ncols)?;
        self.mul_vec(x)
    }

    fn apply_transpose(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim("operator column count", self.nrows, self.ncols)?;
        self.tr_mul_vec(x)
    }
}

/// Malformed-file errors carry the 1-based line number.
fn malformed(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("Matrix Market line {line}: {msg}"))
}

/// Reads a `coordinate real general` file with 1-based indices.
pub fn read<R: BufRead>(reader: R) -> Result<CsrMatrix> {
    let mut lines = reader.lines().enumerate();
    let (_, first) = lines
        .next()
        .ok_or_else(|| malformed(1, "empty file"))?;
    let first = first.map_err(|e| Error::Io(e.to_string()))?;
    let banner: Vec<String> = first.split_whitespace().map(str::to_ascii_lowercase).collect();
    let want = ["%%matrixmarket", "matrix", "coordinate", "real", "general"];
    if banner.len() != 5 || banner.iter().zip(want).any(|(a, b)| a != b) {
        return Err(malformed(1, format!("unsupported header `{first}`, expected `{HEADER}`")));
    }

    let mut size: Option<(usize, usize, usize)> = None;
    let mut entries = Vec::new();
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Io(e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match size {
            None => {
                if fields.len() != 3 {
                    return Err(malformed(lineno, "size line needs `rows cols nnz`"));
                }
                let parse = |s: &str| s.parse::<usize>().map_err(|e| malformed(lineno, e));
                size = Some((parse(fields[0])?, parse(fields[1])?, parse(fields[2])?));
                entries.reserve(size.map_or(0, |s| s.2));
            }
            Some((nrows, ncols, _)) => {
                if fields.len() != 3 {
                    return Err(malformed(lineno, "entry needs `row col value`"));
                }
                let i: usize = fields[0].parse().map_err(|e| malformed(lineno, e))?;
                let j: usize = fields[1].parse().map_err(|e| malformed(lineno, e))?;
                let v: f64 = fields[2].parse().map_err(|e| malformed(lineno, e))?;
                if i == 0 || j == 0 || i > nrows || j > ncols {
                    return Err(malformed(lineno, format!("index ({i}, {j}) out of range")));
                }
                entries.push((i - 1, j - 1, v));
            }
        }
    }
    let (nrows, ncols, nnz) = size.ok_or_else(|| malformed(2, "missing size line"))?;
    if entries.len() != nnz {
        return Err(Error::Format(format!(
            "Matrix Market file declares {nnz} entries but holds {}",
            entries.len()
        )));
    }
    CsrMatrix::from_triplets(nrows, ncols, &entries).map_err(|e| Error::Format(e.to_string()))
}

pub fn read_path(path: &std::path::Path) -> Result<CsrMatrix> {
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read(std::io::BufReader::new(file))
}

/// Writes `a` with round-trip precision.
pub fn write<W: Write>(mut out: W, a: &CsrMatrix) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    writeln!(out, "{HEADER}").map_err(io)?;
    writeln!(out, "{} {} {}", a.nrows(), a.ncols(), a.nnz()).map_err(io)?;
    for (i, j, v) in a.triplets() {
        writeln!(out, "{} {} {:.16e}", i + 1, j + 1, v).map_err(io)?;
    }
    Ok(())
}

pub fn write_path(path: &std::path::Path, a: &CsrMatrix) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut w = std::io::BufWriter::new(file);
    write(&mut w, a)?;
    w.flush().map_err(|e| Error::Io(e.to_string()))
}
