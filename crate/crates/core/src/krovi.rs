//! Schur transform through the symmetric group: coset-state preprocessing, the
//! Fourier transform over `S_n`, and the isometry `V` from tableau labels to
//! Gelfand–Tsetlin labels.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::combinat::{
    enumerate_compressed, factorial, AlphabetMap, Composition, GtPattern, Partition, StandardTableau, Weight,
};
use crate::error::{SchurError, SchurResult};
use crate::linalg::{c, from_real, zeros, Complex64, ComplexMatrix};
use crate::recoupling::f_left;
use crate::schur_basis::{check_cap, Column, Method, SchurIndex, SchurTransform};
use crate::symrep::{coset_vector, qft_with_table, young_subgroup, Irrep, IrrepTable, Permutation};

/// Output of the preprocessing isometry for one basis string.
#[derive(Clone, Debug, PartialEq)]
pub struct PreprocessResult {
    pub alphabet: AlphabetMap,
    pub composition: Composition,
    /// Stable-sort representative `t_x` of the coset `t_x Y_μ`.
    pub representative: Permutation,
}

impl PreprocessResult {
    /// All `|Y_μ|` permutations that sort the string. Factorial in size, so built on demand.
    pub fn support(&self) -> Vec<Permutation> {
        young_subgroup(&self.composition).iter().map(|h| self.representative.compose(h)).collect()
    }

    /// Rebuilds the string: position `t(j)` carries the symbol of sorted position `j`.
    pub fn reconstruct(&self) -> Vec<usize> {
        let n = self.composition.size();
        let mut x = vec![0; n];
        for j in 1..=n {
            let block = self.composition.block_of(j);
            x[self.representative.apply(j) - 1] = self.alphabet.get(block);
        }
        x
    }
}

pub fn preprocess(x: &[usize]) -> SchurResult<PreprocessResult> {
    if x.contains(&0) {
        return Err(SchurError::InvalidInput("symbols are 1-based".into()));
    }
    let d = x.iter().copied().max().unwrap_or(0);
    let (composition, alphabet) = Weight::of_string(x, d)?.split();
    let representative = Permutation::stable_sort_of(x);
    Ok(PreprocessResult { alphabet, composition, representative })
}

/// `⟨T|V_{λ,μ}|M̃⟩` for a tableau `T` of shape `λ` and a compressed pattern `M̃` of weight `μ`.
pub fn v_entry(lambda: &Partition, mu: &Composition, t: &StandardTableau, m: &GtPattern) -> SchurResult<f64> {
    if t.shape() != *lambda {
        return Err(SchurError::InvalidShape(format!("tableau has shape {}, expected {lambda}", t.shape())));
    }
    if m.d() != mu.len() || m.weight().entries() != mu.parts() {
        return Err(SchurError::InvalidShape(format!("pattern weight does not match composition {mu}")));
    }
    if m.top() != *lambda {
        return Err(SchurError::InvalidShape(format!("pattern top row {} is not {lambda}", m.top())));
    }
    let sums = mu.prefix_sums();
    let word = t.word();
    let mut value = 1.0;
    for k in 1..=mu.len() {
        // the previous segment must end exactly on the previous pattern row
        if t.prefix_shape(sums[k - 1]) != m.row_partition(k - 1) {
            return Ok(0.0);
        }
        let target = m.row_partition(k);
        for j in 1..mu.part(k) {
            let base = t.prefix_shape(sums[k - 1] + j - 1);
            let a = word[sums[k - 1] + j - 1];
            let f = f_left(mu.part(k) - j + 1, &base, &target, a)?;
            if f == 0.0 {
                return Ok(0.0);
            }
            value *= f;
        }
    }
    if t.prefix_shape(sums[mu.len()]) != m.row_partition(mu.len()) {
        return Ok(0.0);
    }
    Ok(value)
}

/// `V_{λ,μ}`: rows are tableaux of shape `λ`, columns compressed patterns of weight `μ`.
#[derive(Clone, Debug)]
pub struct VBlock {
    pub lambda: Partition,
    pub mu: Composition,
    pub columns: Vec<GtPattern>,
    pub values: DMatrix<f64>,
}

impl VBlock {
    pub fn matrix(&self) -> ComplexMatrix {
        from_real(&self.values)
    }

    pub fn kostka(&self) -> usize {
        self.columns.len()
    }
}

pub fn v_block(lambda: &Partition, mu: &Composition) -> SchurResult<VBlock> {
    v_block_for(&Irrep::new(lambda), mu)
}

pub fn v_block_for(irrep: &Irrep, mu: &Composition) -> SchurResult<VBlock> {
    let lambda = irrep.shape();
    let columns = enumerate_compressed(lambda, mu);
    let mut values = DMatrix::zeros(irrep.dim(), columns.len());
    for (s, t) in irrep.tableaux().iter().enumerate() {
        for (j, m) in columns.iter().enumerate() {
            values[(s, j)] = v_entry(lambda, mu, t, m)?;
        }
    }
    Ok(VBlock { lambda: lambda.clone(), mu: mu.clone(), columns, values })
}

/// Precomputed data for columns of the transform at one `(n, d)`.
struct KroviTables {
    index: SchurIndex,
    irreps: Vec<Irrep>,
    blocks: HashMap<(usize, Composition), VBlock>,
}

impl KroviTables {
    fn new(n: usize, d: usize) -> SchurResult<Self> {
        let index = SchurIndex::new(n, d)?;
        let irreps: Vec<Irrep> = index.sectors().iter().map(|s| Irrep::new(&s.shape)).collect();
        let mut comps: Vec<Composition> = crate::combinat::enumerate_weights(n, d)
            .into_iter()
            .map(|w| w.split().0)
            .collect();
        comps.sort();
        comps.dedup();
        let jobs: Vec<(usize, Composition)> = (0..irreps.len())
            .flat_map(|k| comps.iter().map(move |mu| (k, mu.clone())))
            .filter(|(k, mu)| irreps[*k].shape().len() <= mu.len())
            .collect();
        let blocks = jobs
            .into_par_iter()
            .map(|(k, mu)| v_block_for(&irreps[k], &mu).map(|b| ((k, mu), b)))
            .collect::<SchurResult<HashMap<_, _>>>()?;
        Ok(Self { index, irreps, blocks })
    }

    fn column(&self, x: &[usize]) -> SchurResult<Column> {
        let n = x.len();
        let d = self.index.d();
        let pre = preprocess(x)?;
        let y = pre.composition.young_subgroup_order() as f64;
        let nf = factorial(n) as f64;
        let mut out = Vec::new();
        for (k, sec) in self.index.sectors().iter().enumerate() {
            let Some(block) = self.blocks.get(&(k, pre.composition.clone())) else { continue };
            if block.kostka() == 0 {
                continue;
            }
            let mut w = block.values.clone();
            self.irreps[k].apply_permutation(&pre.representative, &mut w);
            let scale = (sec.syt_dim() as f64 * y / nf).sqrt();
            for (j, small) in block.columns.iter().enumerate() {
                let full = GtPattern::decompress(small, &pre.alphabet, d)?;
                let m = sec.pattern_position(&full).expect("decompressed pattern has top row λ");
                for s in 0..sec.syt_dim() {
                    let v = w[(s, j)];
                    if v != 0.0 {
                        out.push((sec.flat(s, m), scale * v));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The Schur transform through the symmetric group, column by closed form.
pub fn schur_unitary_krovi(n: usize, d: usize, cap: usize) -> SchurResult<SchurTransform> {
    check_cap(n, d, cap)?;
    let tables = KroviTables::new(n, d)?;
    SchurTransform::from_columns(&tables.index, Method::Krovi, |x| tables.column(x))
}

/// Dense transform obtained by literally applying coset preparation, the Fourier
/// transform over `S_n`, the projector `Π_{λ,μ}` and `V†` to every basis string.
pub fn schur_unitary_krovi_staged(n: usize, d: usize, qft_cap: usize) -> SchurResult<ComplexMatrix> {
    if n > qft_cap {
        return Err(SchurError::CapExceeded { size: n, cap: qft_cap });
    }
    let index = SchurIndex::new(n, d)?;
    let table = IrrepTable::new(n);
    let qft = qft_with_table(&table);
    let dim = index.dim();
    let mut u = zeros(dim, dim);
    // offsets of each shape inside the Fourier basis
    let mut fourier_offset = HashMap::new();
    let mut off = 0;
    for ir in table.irreps() {
        fourier_offset.insert(ir.shape().clone(), off);
        off += ir.dim() * ir.dim();
    }
    for col in 0..dim {
        let x = crate::symrep::string_of_index(col, n, d);
        let pre = preprocess(&x)?;
        let coset: DVector<Complex64> = coset_vector(&x)?.to_vector(n);
        let f = &qft * coset;
        for sec in index.sectors() {
            let ir = table.get(&sec.shape).expect("shape of S_n");
            let dl = ir.dim();
            let base = fourier_offset[&sec.shape];
            let vb = v_block_for(ir, &pre.composition)?;
            if vb.kostka() == 0 {
                continue;
            }
            let proj = crate::symrep::young_projector(ir, &pre.composition);
            let v = vb.matrix();
            for s in 0..dl {
                let row: DVector<Complex64> = DVector::from_iterator(dl, (0..dl).map(|t| f[base + s * dl + t]));
                let projected = &proj * &row;
                let coeffs = v.adjoint() * projected;
                for (j, small) in vb.columns.iter().enumerate() {
                    let full = GtPattern::decompress(small, &pre.alphabet, d)?;
                    let m = sec.pattern_position(&full).expect("top row λ");
                    u[(sec.flat(s, m), col)] = coeffs[j];
                }
            }
        }
    }
    Ok(u)
}

/// Block of the Fourier-basis state `QFT|t Y_μ⟩` for shape `λ`, rows `S`, columns `T`.
pub fn fourier_coset_block(irrep: &Irrep, x: &[usize]) -> SchurResult<ComplexMatrix> {
    let n = x.len();
    let coset = coset_vector(x)?;
    let nf = factorial(n) as f64;
    let dl = irrep.dim();
    let scale = c((dl as f64 / nf).sqrt());
    let mut m = zeros(dl, dl);
    for (g, a) in coset.terms() {
        m += irrep.matrix(g) * (scale * a);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{enumerate_compositions, enumerate_partitions, enumerate_syt, kostka};
    use crate::linalg::{max_abs_diff, unitarity_deviation};
    use crate::symrep::{string_index, string_of_index, tensor_perm_action, young_projector};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn preprocess_example() {
        let r = preprocess(&[1, 2, 1, 5, 2]).unwrap();
        assert_eq!(r.alphabet.values(), &[1, 2, 5]);
        assert_eq!(r.composition.parts(), &[2, 2, 1]);
        let t = Permutation::transposition(5, 2, 3).compose(&Permutation::transposition(5, 4, 5));
        assert_eq!(r.representative, t);
        assert_eq!(r.support().len(), 4);
        assert!(preprocess(&[1, 1, 2, 3]).unwrap().representative.is_identity());
    }

    #[test]
    fn representative_maps_sorted_string_to_input() {
        for idx in 0..81 {
            let x = string_of_index(idx, 4, 3);
            let r = preprocess(&x).unwrap();
            assert_eq!(r.reconstruct(), x);
            let mut sorted = x.clone();
            sorted.sort();
            let psi = tensor_perm_action(&r.representative, 3, 4096).unwrap();
            let out = string_index(&x, 3);
            assert_eq!(psi[(out, string_index(&sorted, 3))], c(1.0));
        }
    }

    #[test]
    fn worked_v_entry_is_zero() {
        let t = StandardTableau::from_word(vec![1, 1, 1, 2, 2]).unwrap();
        let m = GtPattern::from_rows(&[vec![2], vec![2, 1], vec![3, 2, 0]]).unwrap();
        assert_eq!(v_entry(&p(&[3, 2]), &comp(&[2, 1, 2]), &t, &m).unwrap(), 0.0);
    }

    #[test]
    fn trivial_blocks() {
        let b = v_block(&p(&[2]), &comp(&[2])).unwrap();
        assert_eq!(b.values.shape(), (1, 1));
        assert!((b.values[(0, 0)] - 1.0).abs() < 1e-15);
        let empty = v_block(&p(&[1, 1]), &comp(&[2])).unwrap();
        assert_eq!(empty.values.shape(), (1, 0));
        let col = v_block(&p(&[2, 1]), &comp(&[2, 1])).unwrap();
        assert_eq!(col.values.shape(), (2, 1));
        assert!((col.values.column(0).norm() - 1.0).abs() < 1e-15);
        let mixed = v_block(&p(&[2, 1]), &comp(&[1, 2])).unwrap();
        assert!((mixed.values[(0, 0)] - 0.5).abs() < 1e-15);
        assert!((mixed.values[(1, 0)] - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn all_ones_composition_gives_classical_v() {
        for n in 1..=5 {
            let ones = comp(&vec![1; n]);
            for lambda in enumerate_partitions(n, n) {
                let b = v_block(&lambda, &ones).unwrap();
                for (s, t) in enumerate_syt(&lambda).iter().enumerate() {
                    for (j, m) in b.columns.iter().enumerate() {
                        let same = (0..=n).all(|k| t.prefix_shape(k) == m.row_partition(k));
                        assert_eq!(b.values[(s, j)], if same { 1.0 } else { 0.0 });
                    }
                }
            }
        }
    }

    #[test]
    fn v_is_isometry_onto_projector() {
        for n in 1..=5 {
            for lambda in enumerate_partitions(n, n) {
                let ir = Irrep::new(&lambda);
                for mu in enumerate_compositions(n) {
                    let b = v_block_for(&ir, &mu).unwrap();
                    assert_eq!(b.kostka() as u64, kostka(&lambda, mu.parts()));
                    let v = b.matrix();
                    let vv = v.adjoint() * &v;
                    assert!(max_abs_diff(&vv, &ComplexMatrix::identity(b.kostka(), b.kostka())) < 1e-12);
                    let proj = young_projector(&ir, &mu);
                    assert!(max_abs_diff(&(&v * v.adjoint()), &proj) < 1e-12, "{lambda} {mu}");
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_staged() {
        for (n, d) in [(1, 2), (2, 2), (3, 2), (2, 3), (3, 3), (4, 2), (4, 3), (5, 2)] {
            let closed = schur_unitary_krovi(n, d, 4096).unwrap();
            assert!(closed.unitarity_deviation() < 1e-12);
            let staged = schur_unitary_krovi_staged(n, d, 6).unwrap();
            assert!(max_abs_diff(&closed.to_dense(), &staged) < 1e-12, "n={n} d={d}");
            assert!(unitarity_deviation(&staged) < 1e-12);
        }
    }

    #[test]
    fn one_site_is_relabelling() {
        let u = schur_unitary_krovi(1, 3, 4096).unwrap();
        let idx = SchurIndex::new(1, 3).unwrap();
        let dense = u.to_dense();
        for x in 1..=3 {
            let row = (0..3).find(|&r| dense[(r, x - 1)].norm() > 0.5).unwrap();
            let mut w = [0; 3];
            w[x - 1] = 1;
            assert_eq!(idx.row_weight(row).entries(), &w[..]);
            assert!((dense[(row, x - 1)].re - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn projector_fixes_fourier_coset_state() {
        for idx in 0..81 {
            let x = string_of_index(idx, 4, 3);
            let (mu, _) = Weight::of_string(&x, 3).unwrap().split();
            for lambda in enumerate_partitions(4, 4) {
                let ir = Irrep::new(&lambda);
                let f = fourier_coset_block(&ir, &x).unwrap();
                let proj = young_projector(&ir, &mu);
                // the column index T carries the right action, so Π acts from the right
                assert!(max_abs_diff(&(&f * &proj), &f) < 1e-12);
            }
        }
    }
}
