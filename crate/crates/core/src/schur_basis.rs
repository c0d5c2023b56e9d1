//! The output basis `(λ, S, M)` of a Schur transform, its flat indexing, and a
//! weight-block container for the transform itself.
//!
//! Every construction in this crate preserves the weight of a basis string, so a
//! Schur unitary is a direct sum of square blocks, one per weight. Storing the
//! blocks keeps `dⁿ = 4096` cases cheap to build and to check.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::combinat::{enumerate_gt, enumerate_partitions, enumerate_syt, enumerate_weights, GtPattern, Partition, StandardTableau, Weight};
use crate::error::{SchurError, SchurResult};
use crate::linalg::{c, identity, max_abs_diff, zeros, ComplexMatrix};
use crate::symrep::string_of_index;

/// Default bound on `dⁿ` for building a transform.
pub const DEFAULT_CAP: usize = 4096;

/// Tableaux and patterns of one irrep pair `H_λ ⊗ W_λ`.
#[derive(Clone, Debug)]
pub struct ShapeSector {
    pub shape: Partition,
    pub tableaux: Vec<StandardTableau>,
    pub patterns: Vec<GtPattern>,
    pub offset: usize,
    tableau_index: HashMap<Vec<usize>, usize>,
    pattern_index: HashMap<GtPattern, usize>,
}

impl ShapeSector {
    pub fn syt_dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn gt_dim(&self) -> usize {
        self.patterns.len()
    }

    pub fn tableau_position(&self, word: &[usize]) -> Option<usize> {
        self.tableau_index.get(word).copied()
    }

    pub fn pattern_position(&self, m: &GtPattern) -> Option<usize> {
        self.pattern_index.get(m).copied()
    }

    /// Flat index of `(S, M)` within the whole space.
    pub fn flat(&self, s: usize, m: usize) -> usize {
        self.offset + s * self.patterns.len() + m
    }
}

/// Canonical bijection between `(λ, S, M)` and `0..dⁿ`: shapes in partition order,
/// then tableau, then pattern.
#[derive(Clone, Debug)]
pub struct SchurIndex {
    n: usize,
    d: usize,
    sectors: Vec<ShapeSector>,
}

impl SchurIndex {
    pub fn new(n: usize, d: usize) -> SchurResult<Self> {
        if d == 0 {
            return Err(SchurError::InvalidInput("local dimension must be positive".into()));
        }
        let mut sectors = Vec::new();
        let mut offset = 0;
        for shape in enumerate_partitions(n, d) {
            let tableaux = enumerate_syt(&shape);
            let patterns = enumerate_gt(&shape, d)?;
            let tableau_index = tableaux.iter().enumerate().map(|(i, t)| (t.word().to_vec(), i)).collect();
            let pattern_index = patterns.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let size = tableaux.len() * patterns.len();
            sectors.push(ShapeSector { shape, tableaux, patterns, offset, tableau_index, pattern_index });
            offset += size;
        }
        let expected = d.checked_pow(n as u32).ok_or(SchurError::CapExceeded { size: usize::MAX, cap: usize::MAX })?;
        if offset != expected {
            return Err(SchurError::InvalidShape(format!("Schur basis has {offset} states, expected {expected}")));
        }
        Ok(Self { n, d, sectors })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.sectors.last().map_or(1, |s| s.offset + s.syt_dim() * s.gt_dim())
    }

    pub fn sectors(&self) -> &[ShapeSector] {
        &self.sectors
    }

    pub fn sector(&self, shape: &Partition) -> Option<&ShapeSector> {
        self.sectors.iter().find(|s| &s.shape == shape)
    }

    /// Flat index of `(λ, S, M)`.
    pub fn flat(&self, shape: &Partition, tableau: &[usize], m: &GtPattern) -> Option<usize> {
        let sec = self.sector(shape)?;
        Some(sec.flat(sec.tableau_position(tableau)?, sec.pattern_position(m)?))
    }

    /// `(sector, tableau position, pattern position)` of a flat index.
    pub fn decode(&self, flat: usize) -> (usize, usize, usize) {
        let k = self.sectors.partition_point(|s| s.offset <= flat) - 1;
        let sec = &self.sectors[k];
        let local = flat - sec.offset;
        (k, local / sec.gt_dim(), local % sec.gt_dim())
    }

    pub fn row_weight(&self, flat: usize) -> Weight {
        let (k, _, m) = self.decode(flat);
        self.sectors[k].patterns[m].weight()
    }
}

/// Which construction produced a transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Krovi,
    Bch,
    BchHighDim,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Krovi => "krovi",
            Method::Bch => "bch",
            Method::BchHighDim => "bch-highdim",
        })
    }
}

/// One weight block: rows and columns are flat indices, both ascending.
#[derive(Clone, Debug)]
pub struct WeightBlock {
    pub weight: Weight,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub matrix: ComplexMatrix,
}

/// A Schur transform stored as a direct sum over weights.
#[derive(Clone, Debug)]
pub struct SchurTransform {
    pub n: usize,
    pub d: usize,
    pub method: Method,
    pub blocks: Vec<WeightBlock>,
}

/// Sparse column: `(flat row index, amplitude)`.
pub type Column = Vec<(usize, f64)>;

impl SchurTransform {
    /// Assembles a transform from per-string columns, computed in parallel.
    pub fn from_columns<F>(index: &SchurIndex, method: Method, column: F) -> SchurResult<Self>
    where
        F: Fn(&[usize]) -> SchurResult<Column> + Sync,
    {
        let (n, d) = (index.n(), index.d());
        let dim = index.dim();
        let weights = enumerate_weights(n, d);
        let block_of: HashMap<&Weight, usize> = weights.iter().enumerate().map(|(i, w)| (w, i)).collect();

        let row_block: Vec<usize> = (0..dim).map(|r| block_of[&index.row_weight(r)]).collect();
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); weights.len()];
        let mut row_pos = vec![0; dim];
        for r in 0..dim {
            row_pos[r] = rows[row_block[r]].len();
            rows[row_block[r]].push(r);
        }
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); weights.len()];
        let mut col_block = vec![0; dim];
        let mut col_pos = vec![0; dim];
        for x in 0..dim {
            let w = Weight::of_string(&string_of_index(x, n, d), d)?;
            let b = block_of[&w];
            col_block[x] = b;
            col_pos[x] = cols[b].len();
            cols[b].push(x);
        }
        for (b, w) in weights.iter().enumerate() {
            if rows[b].len() != cols[b].len() {
                return Err(SchurError::MalformedState(format!(
                    "weight {:?} has {} output states but {} inputs",
                    w.entries(),
                    rows[b].len(),
                    cols[b].len()
                )));
            }
        }

        let columns: Vec<SchurResult<Column>> =
            (0..dim).into_par_iter().map(|x| column(&string_of_index(x, n, d))).collect();

        let mut mats: Vec<ComplexMatrix> = rows.iter().map(|r| zeros(r.len(), r.len())).collect();
        for (x, col) in columns.into_iter().enumerate() {
            let b = col_block[x];
            for (r, v) in col? {
                if row_block[r] != b {
                    if v.abs() > 1e-13 {
                        return Err(SchurError::MalformedState(format!(
                            "input {x} has amplitude {v} on output {r} of a different weight"
                        )));
                    }
                    continue;
                }
                mats[b][(row_pos[r], col_pos[x])] += c(v);
            }
        }
        let blocks = weights
            .into_iter()
            .zip(rows)
            .zip(cols)
            .zip(mats)
            .map(|(((weight, rows), cols), matrix)| WeightBlock { weight, rows, cols, matrix })
            .collect();
        Ok(Self { n, d, method, blocks })
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.rows.len()).sum()
    }

    /// Dense `dⁿ × dⁿ` matrix.
    pub fn to_dense(&self) -> ComplexMatrix {
        let dim = self.dim();
        let mut m = zeros(dim, dim);
        for b in &self.blocks {
            for (i, &r) in b.rows.iter().enumerate() {
                for (j, &col) in b.cols.iter().enumerate() {
                    m[(r, col)] = b.matrix[(i, j)];
                }
            }
        }
        m
    }

    /// Visits every row of the dense matrix in order without materialising it.
    pub fn for_each_dense_row(&self, mut f: impl FnMut(usize, &[num_complex::Complex64])) {
        let dim = self.dim();
        let mut where_row = vec![(0, 0); dim];
        for (bi, b) in self.blocks.iter().enumerate() {
            for (i, &r) in b.rows.iter().enumerate() {
                where_row[r] = (bi, i);
            }
        }
        let mut buf = vec![c(0.0); dim];
        for (r, &(bi, i)) in where_row.iter().enumerate() {
            buf.iter_mut().for_each(|z| *z = c(0.0));
            let b = &self.blocks[bi];
            for (j, &col) in b.cols.iter().enumerate() {
                buf[col] = b.matrix[(i, j)];
            }
            f(r, &buf);
        }
    }

    /// Largest entrywise deviation of `U U†` and `U† U` from the identity, block by block.
    pub fn unitarity_deviation(&self) -> f64 {
        self.blocks
            .par_iter()
            .map(|b| {
                let id = identity(b.rows.len());
                let ua = b.matrix.adjoint();
                max_abs_diff(&(&b.matrix * &ua), &id).max(max_abs_diff(&(&ua * &b.matrix), &id))
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Largest entry count of any block.
    pub fn largest_block(&self) -> usize {
        self.blocks.iter().map(|b| b.rows.len()).max().unwrap_or(0)
    }
}

/// Rejects `dⁿ` above the cap.
pub fn check_cap(n: usize, d: usize, cap: usize) -> SchurResult<usize> {
    let size = d.checked_pow(n as u32).unwrap_or(usize::MAX);
    if size > cap {
        return Err(SchurError::CapExceeded { size, cap });
    }
    Ok(size)
}
