use std::collections::BTreeMap;

use itertools::Itertools;
use nalgebra::DVector;

use crate::combinat::{factorial, Composition, Weight};
use crate::error::{SchurError, SchurResult};
use crate::linalg::{c, zeros, Complex64, ComplexMatrix};
use crate::symrep::irrep::{Irrep, IrrepTable};
use crate::symrep::permutation::{all_permutations, Permutation};

/// Sparse element of the group algebra `ℂS_n`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<Permutation, Complex64>,
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(g: Permutation) -> Self {
        Self::from_terms([(g, c(1.0))])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Permutation, Complex64)>) -> Self {
        let mut out = Self::zero();
        for (g, v) in terms {
            out.add_term(g, v);
        }
        out
    }

    /// Uniform average `(1/|H|) Σ_{h∈H} h`.
    pub fn average(elements: &[Permutation]) -> Self {
        let w = c(1.0 / elements.len() as f64);
        Self::from_terms(elements.iter().cloned().map(|g| (g, w)))
    }

    /// Plain sum `Σ_{h∈H} h`.
    pub fn sum_of(elements: &[Permutation]) -> Self {
        Self::from_terms(elements.iter().cloned().map(|g| (g, c(1.0))))
    }

    pub fn add_term(&mut self, g: Permutation, v: Complex64) {
        *self.terms.entry(g).or_insert(c(0.0)) += v;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &Permutation) -> Complex64 {
        self.terms.get(g).copied().unwrap_or(c(0.0))
    }

    pub fn support_len(&self) -> usize {
        self.terms.values().filter(|v| v.norm() > 0.0).count()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { terms: self.terms.iter().map(|(g, v)| (g.clone(), v * s)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, v) in &other.terms {
            out.add_term(g.clone(), *v);
        }
        out
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(g.compose(h), a * b);
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let keys: Vec<&Permutation> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|g| (self.coefficient(g) - other.coefficient(g)).norm())
            .fold(0.0, f64::max)
    }

    pub fn norm(&self) -> f64 {
        self.terms.values().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Coefficient vector over `S_n` in lexicographic order.
    pub fn to_vector(&self, n: usize) -> DVector<Complex64> {
        let mut v = DVector::from_element(factorial(n) as usize, c(0.0));
        for (g, a) in &self.terms {
            v[g.lex_rank()] += a;
        }
        v
    }

    /// `Σ_g c_g L(g)`.
    pub fn left_regular(&self, n: usize) -> ComplexMatrix {
        let size = factorial(n) as usize;
        let perms = all_permutations(n);
        let mut m = zeros(size, size);
        for (g, a) in &self.terms {
            for (col, pi) in perms.iter().enumerate() {
                m[(g.compose(pi).lex_rank(), col)] += a;
            }
        }
        m
    }

    /// `Σ_g c_g R(g)`.
    pub fn right_regular(&self, n: usize) -> ComplexMatrix {
        let size = factorial(n) as usize;
        let perms = all_permutations(n);
        let mut m = zeros(size, size);
        for (g, a) in &self.terms {
            let gi = g.inverse();
            for (col, pi) in perms.iter().enumerate() {
                m[(pi.compose(&gi).lex_rank(), col)] += a;
            }
        }
        m
    }

    /// `Σ_g c_g ψ_λ(g)`.
    pub fn in_irrep(&self, irrep: &Irrep) -> ComplexMatrix {
        let mut m = zeros(irrep.dim(), irrep.dim());
        for (g, a) in &self.terms {
            m += irrep.matrix(g) * *a;
        }
        m
    }
}

/// Elements of the Young subgroup `S_{μ_1} × ⋯ × S_{μ_ℓ}`, lexicographic.
pub fn young_subgroup(mu: &Composition) -> Vec<Permutation> {
    let n = mu.size();
    let sums = mu.prefix_sums();
    let blocks: Vec<Vec<Vec<usize>>> = (0..mu.len())
        .map(|k| ((sums[k] + 1)..=sums[k + 1]).permutations(mu.parts()[k]).collect())
        .collect();
    if blocks.is_empty() {
        return vec![Permutation::identity(n)];
    }
    let mut out: Vec<Permutation> = blocks
        .into_iter()
        .multi_cartesian_product()
        .map(|choice| Permutation::new(choice.concat()).expect("block product is a permutation"))
        .collect();
    out.sort();
    out
}

/// Young subgroup of a weight (zero entries contribute nothing).
pub fn young_subgroup_of_weight(w: &Weight) -> Vec<Permutation> {
    young_subgroup(&w.split().0)
}

/// Stable-sort coset representatives of `S_n / Y_μ`: permutations increasing on each block.
pub fn transversal(mu: &Composition) -> Vec<Permutation> {
    let sums = mu.prefix_sums();
    all_permutations(mu.size())
        .into_iter()
        .filter(|t| (0..mu.len()).all(|k| (sums[k] + 1..sums[k + 1]).all(|i| t.apply(i) < t.apply(i + 1))))
        .collect()
}

/// Uniform superposition over the permutations that sort `x`.
pub fn coset_vector(x: &[usize]) -> SchurResult<GroupAlgebraElement> {
    if x.contains(&0) {
        return Err(SchurError::InvalidInput("symbols are 1-based".into()));
    }
    let d = x.iter().copied().max().unwrap_or(0);
    let (mu, _) = Weight::of_string(x, d)?.split();
    let t = Permutation::stable_sort_of(x);
    let ys = young_subgroup(&mu);
    let amp = c(1.0 / (ys.len() as f64).sqrt());
    Ok(GroupAlgebraElement::from_terms(ys.iter().map(|h| (t.compose(h), amp))))
}

/// `Π_{λ,μ}`: average of `ψ_λ(h)` over the Young subgroup.
pub fn young_projector(irrep: &Irrep, mu: &Composition) -> ComplexMatrix {
    GroupAlgebraElement::average(&young_subgroup(mu)).in_irrep(irrep)
}

pub fn left_regular(sigma: &Permutation) -> ComplexMatrix {
    GroupAlgebraElement::basis(sigma.clone()).left_regular(sigma.n())
}

pub fn right_regular(sigma: &Permutation) -> ComplexMatrix {
    GroupAlgebraElement::basis(sigma.clone()).right_regular(sigma.n())
}

/// Default largest `n` for which the dense `n! × n!` Fourier matrix is built.
pub const QFT_CAP: usize = 6;

/// Fourier transform over `S_n`: rows `(λ, S, T)` (λ outer, then S, then T), columns permutations.
pub fn qft_matrix(n: usize, cap: usize) -> SchurResult<ComplexMatrix> {
    if n > cap {
        return Err(SchurError::CapExceeded { size: n, cap });
    }
    let table = IrrepTable::new(n);
    Ok(qft_with_table(&table))
}

pub fn qft_with_table(table: &IrrepTable) -> ComplexMatrix {
    let n = table.n();
    let nf = factorial(n) as f64;
    let perms = all_permutations(n);
    let size = perms.len();
    let mut m = zeros(size, size);
    let mut offset = 0;
    for ir in table.irreps() {
        let dl = ir.dim();
        let scale = (dl as f64 / nf).sqrt();
        for (col, pi) in perms.iter().enumerate() {
            let psi = ir.matrix_real(pi);
            for s in 0..dl {
                for t in 0..dl {
                    m[(offset + s * dl + t, col)] = c(scale * psi[(s, t)]);
                }
            }
        }
        offset += dl * dl;
    }
    m
}

/// Index of a computational basis string (first symbol most significant).
pub fn string_index(x: &[usize], d: usize) -> usize {
    x.iter().fold(0, |acc, &s| acc * d + (s - 1))
}

pub fn string_of_index(mut idx: usize, n: usize, d: usize) -> Vec<usize> {
    let mut x = vec![0; n];
    for i in (0..n).rev() {
        x[i] = idx % d + 1;
        idx /= d;
    }
    x
}

/// `ψ(σ)` on `(ℂ^d)^{⊗n}`: site `i` receives the symbol from site `σ⁻¹(i)`.
pub fn tensor_perm_action(sigma: &Permutation, d: usize, cap: usize) -> SchurResult<ComplexMatrix> {
    let n = sigma.n();
    let size = d.checked_pow(n as u32).unwrap_or(usize::MAX);
    if size > cap {
        return Err(SchurError::CapExceeded { size, cap });
    }
    let inv = sigma.inverse();
    let mut m = zeros(size, size);
    for col in 0..size {
        let x = string_of_index(col, n, d);
        let y: Vec<usize> = (1..=n).map(|i| x[inv.apply(i) - 1]).collect();
        m[(string_index(&y, d), col)] = c(1.0);
    }
    Ok(m)
}
