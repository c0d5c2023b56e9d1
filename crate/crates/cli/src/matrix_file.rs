//! Dense matrix dumps.
//!
//! Text: a header line `SCHURMAT 1 <n> <d> <dim>` followed by one row per line,
//! each entry written as `re im`. Floats use the shortest representation that
//! parses back to the same value.
//!
//! Binary: `SCHM` then `n`, `d`, `dim` as little-endian `u32` (16 bytes), then the
//! entries row-major as little-endian `f64` pairs.

use std::io::{BufRead, BufReader, Read, Write};

use num_complex::Complex64;
use schur_core::linalg::ComplexMatrix;
use schur_core::schur_basis::SchurTransform;

use crate::error::{CliError, CliResult};

pub const MAGIC: [u8; 4] = *b"SCHM";
const TEXT_TAG: &str = "SCHURMAT";
const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Binary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFile {
    pub n: usize,
    pub d: usize,
    pub matrix: ComplexMatrix,
}

impl MatrixFile {
    pub fn new(n: usize, d: usize, matrix: ComplexMatrix) -> CliResult<Self> {
        let dim = expected_dim(n, d)?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(CliError::Format(format!("matrix is {}x{}, expected {dim}x{dim}", matrix.nrows(), matrix.ncols())));
        }
        Ok(Self { n, d, matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn write(&self, format: Format, out: impl Write) -> CliResult<()> {
        write_rows(self.n, self.d, self.dim(), format, out, |f| {
            for r in 0..self.dim() {
                let row: Vec<Complex64> = self.matrix.row(r).iter().copied().collect();
                f(&row)?;
            }
            Ok(())
        })
    }

    /// Reads either form, telling them apart by the first four bytes.
    pub fn read(input: impl Read) -> CliResult<Self> {
        let mut input = BufReader::new(input);
        let head = input.fill_buf()?;
        if head.starts_with(&MAGIC) {
            read_binary(input)
        } else {
            read_text(input)
        }
    }
}

fn expected_dim(n: usize, d: usize) -> CliResult<usize> {
    d.checked_pow(n as u32).ok_or_else(|| CliError::Format(format!("{d}^{n} overflows")))
}

/// Streams a transform row by row without holding a second dense copy.
pub fn write_transform(u: &SchurTransform, format: Format, out: impl Write) -> CliResult<()> {
    write_rows(u.n, u.d, u.dim(), format, out, |f| {
        let mut result = Ok(());
        u.for_each_dense_row(|_, row| {
            if result.is_ok() {
                result = f(row);
            }
        });
        result
    })
}

type RowSink<'a> = dyn FnMut(&[Complex64]) -> CliResult<()> + 'a;

fn write_rows(
    n: usize,
    d: usize,
    dim: usize,
    format: Format,
    out: impl Write,
    rows: impl FnOnce(&mut RowSink<'_>) -> CliResult<()>,
) -> CliResult<()> {
    let mut out = std::io::BufWriter::new(out);
    match format {
        Format::Text => {
            writeln!(out, "{TEXT_TAG} {VERSION} {n} {d} {dim}")?;
            rows(&mut |row| {
                let mut line = String::with_capacity(row.len() * 24);
                for (i, z) in row.iter().enumerate() {
                    if i > 0 {
                        line.push(' ');
                    }
                    line.push_str(&format!("{} {}", z.re, z.im));
                }
                writeln!(out, "{line}")?;
                Ok(())
            })?;
        }
        Format::Binary => {
            out.write_all(&MAGIC)?;
            for v in [n, d, dim] {
                let v = u32::try_from(v).map_err(|_| CliError::Format(format!("{v} does not fit the header")))?;
                out.write_all(&v.to_le_bytes())?;
            }
            rows(&mut |row| {
                for z in row {
                    out.write_all(&z.re.to_le_bytes())?;
                    out.write_all(&z.im.to_le_bytes())?;
                }
                Ok(())
            })?;
        }
    }
    out.flush()?;
    Ok(())
}

fn read_text(input: impl BufRead) -> CliResult<MatrixFile> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| CliError::Format("empty file".into()))??;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != TEXT_TAG {
        return Err(CliError::Format(format!("bad header {header:?}")));
    }
    if fields[1] != VERSION.to_string() {
        return Err(CliError::Format(format!("unsupported version {}", fields[1])));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| CliError::Format(format!("bad header field {s:?}")));
    let (n, d, dim) = (num(fields[2])?, num(fields[3])?, num(fields[4])?);
    if dim != expected_dim(n, d)? {
        return Err(CliError::Format(format!("dim {dim} is not {d}^{n}")));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        let line = lines.next().ok_or_else(|| CliError::Format(format!("missing row {r}")))??;
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| CliError::Format(format!("bad number {t:?} in row {r}"))))
            .collect::<CliResult<_>>()?;
        if vals.len() != 2 * dim {
            return Err(CliError::Format(format!("row {r} has {} numbers, expected {}", vals.len(), 2 * dim)));
        }
        data.extend(vals.chunks(2).map(|p| Complex64::new(p[0], p[1])));
    }
    MatrixFile::new(n, d, ComplexMatrix::from_row_slice(dim, dim, &data))
}

fn read_binary(mut input: impl Read) -> CliResult<MatrixFile> {
    let mut header = [0u8; 16];
    input.read_exact(&mut header)?;
    let field = |i: usize| u32::from_le_bytes(header[4 * i..4 * i + 4].try_into().expect("4 bytes")) as usize;
    let (n, d, dim) = (field(1), field(2), field(3));
    if dim != expected_dim(n, d)? {
        return Err(CliError::Format(format!("dim {dim} is not {d}^{n}")));
    }
    let mut bytes = vec![0u8; dim * dim * 16];
    input.read_exact(&mut bytes)?;
    let f = |c: &[u8]| f64::from_le_bytes(c.try_into().expect("8 bytes"));
    let data: Vec<Complex64> = bytes.chunks_exact(16).map(|c| Complex64::new(f(&c[..8]), f(&c[8..]))).collect();
    let mut rest = [0u8; 1];
    if input.read(&mut rest)? != 0 {
        return Err(CliError::Format("trailing bytes after matrix".into()));
    }
    MatrixFile::new(n, d, ComplexMatrix::from_row_slice(dim, dim, &data))
}
