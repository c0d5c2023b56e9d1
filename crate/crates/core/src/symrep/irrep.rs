use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::combinat::{enumerate_partitions, enumerate_syt, Partition, StandardTableau};
use crate::linalg::{from_real, ComplexMatrix};
use crate::symrep::permutation::Permutation;

/// One row of a Young–Yamanouchi generator: the diagonal entry and the optional
/// partner tableau with its off-diagonal entry.
#[derive(Clone, Copy, Debug)]
struct GenEntry {
    diag: f64,
    partner: Option<(usize, f64)>,
}

/// Young–Yamanouchi (orthogonal form) irrep of `S_n` for one shape.
#[derive(Clone, Debug)]
pub struct Irrep {
    shape: Partition,
    tableaux: Vec<StandardTableau>,
    index: HashMap<Vec<usize>, usize>,
    generators: Vec<Vec<GenEntry>>,
}

impl Irrep {
    pub fn new(shape: &Partition) -> Self {
        let tableaux = enumerate_syt(shape);
        let index: HashMap<Vec<usize>, usize> =
            tableaux.iter().enumerate().map(|(i, t)| (t.word().to_vec(), i)).collect();
        let n = shape.size();
        let generators = (1..n)
            .map(|i| {
                tableaux
                    .iter()
                    .map(|t| {
                        let r = t.axial_distance(i) as f64;
                        let partner = if r.abs() > 1.0 {
                            let s = t.swapped(i).expect("|r| > 1 keeps the swap standard");
                            Some((index[s.word()], (1.0 - 1.0 / (r * r)).sqrt()))
                        } else {
                            None
                        };
                        GenEntry { diag: 1.0 / r, partner }
                    })
                    .collect()
            })
            .collect();
        Self { shape: shape.clone(), tableaux, index, generators }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn n(&self) -> usize {
        self.shape.size()
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    pub fn index_of(&self, t: &StandardTableau) -> Option<usize> {
        self.index.get(t.word()).copied()
    }

    pub fn index_of_word(&self, word: &[usize]) -> Option<usize> {
        self.index.get(word).copied()
    }

    /// Dense real matrix of `ψ_λ(σ_i)`.
    pub fn generator_real(&self, i: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (t, e) in self.generators[i - 1].iter().enumerate() {
            m[(t, t)] = e.diag;
            if let Some((s, v)) = e.partner {
                m[(t, s)] = v;
            }
        }
        m
    }

    /// `a ← ψ_λ(σ_i)·a` using the two-nonzeros-per-row structure.
    pub fn apply_generator(&self, i: usize, a: &mut DMatrix<f64>) {
        let gen = &self.generators[i - 1];
        let old = a.clone();
        for (t, e) in gen.iter().enumerate() {
            let mut row = old.row(t) * e.diag;
            if let Some((s, v)) = e.partner {
                row += old.row(s) * v;
            }
            a.set_row(t, &row);
        }
    }

    /// `a ← ψ_λ(σ)·a`.
    pub fn apply_permutation(&self, sigma: &Permutation, a: &mut DMatrix<f64>) {
        for &i in sigma.adjacent_word().iter().rev() {
            self.apply_generator(i, a);
        }
    }

    pub fn matrix_real(&self, sigma: &Permutation) -> DMatrix<f64> {
        let mut a = DMatrix::identity(self.dim(), self.dim());
        self.apply_permutation(sigma, &mut a);
        a
    }

    pub fn matrix(&self, sigma: &Permutation) -> ComplexMatrix {
        from_real(&self.matrix_real(sigma))
    }
}

/// Irreps of `S_n` for every shape with at most `max_rows` rows, in partition order.
#[derive(Clone, Debug)]
pub struct IrrepTable {
    n: usize,
    irreps: Vec<Irrep>,
}

impl IrrepTable {
    pub fn new(n: usize) -> Self {
        Self::with_max_rows(n, n.max(1))
    }

    pub fn with_max_rows(n: usize, max_rows: usize) -> Self {
        let irreps = enumerate_partitions(n, max_rows).iter().map(Irrep::new).collect();
        Self { n, irreps }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn get(&self, shape: &Partition) -> Option<&Irrep> {
        self.irreps.iter().find(|ir| ir.shape() == shape)
    }
}

/// `ψ_λ(σ_i)` in the canonical tableau order.
pub fn yy_generator(lambda: &Partition, i: usize) -> ComplexMatrix {
    from_real(&Irrep::new(lambda).generator_real(i))
}

/// `ψ_λ(σ)`.
pub fn irrep_matrix(lambda: &Partition, sigma: &Permutation) -> ComplexMatrix {
    Irrep::new(lambda).matrix(sigma)
}
