//! Unitary-group side: the action of the Cartan and adjacent root generators of
//! `gl_d` on the Gelfand–Tsetlin basis, and the matching tensor action on
//! `(ℂ^d)^{⊗n}`.

use std::collections::HashMap;

use crate::combinat::{enumerate_gt, GtPattern, Partition};
use crate::error::{SchurError, SchurResult};
use crate::linalg::{c, zeros, ComplexMatrix};
use crate::symrep::{string_index, string_of_index};

/// Shifted entry `l_{k,i} = M_{k,i} − i`.
fn l(m: &GtPattern, k: usize, i: usize) -> i64 {
    m.get(k, i) as i64 - i as i64
}

/// Coefficient of `|M + δ_{k−1,j}⟩` in `E_{k−1,k}|M⟩`. The caller has checked that the target is valid.
pub fn gamma_plus(m: &GtPattern, k: usize, j: usize) -> f64 {
    let lj = l(m, k - 1, j);
    let mut num = 1.0;
    for i in 1..=k {
        num *= (l(m, k, i) - lj) as f64;
    }
    for i in 1..=k.saturating_sub(2) {
        num *= (l(m, k - 2, i) - lj - 1) as f64;
    }
    let mut den = 1.0;
    for i in (1..k).filter(|&i| i != j) {
        let li = l(m, k - 1, i);
        den *= ((li - lj) * (li - lj - 1)) as f64;
    }
    assert!(den != 0.0, "zero denominator in raising coefficient");
    (num / den).abs().sqrt()
}

/// Coefficient of `|M − δ_{k−1,j}⟩` in `E_{k,k−1}|M⟩`. The caller has checked that the target is valid.
pub fn gamma_minus(m: &GtPattern, k: usize, j: usize) -> f64 {
    let lj = l(m, k - 1, j);
    let mut num = 1.0;
    for i in 1..=k {
        num *= (l(m, k, i) - lj + 1) as f64;
    }
    for i in 1..=k.saturating_sub(2) {
        num *= (l(m, k - 2, i) - lj) as f64;
    }
    let mut den = 1.0;
    for i in (1..k).filter(|&i| i != j) {
        let li = l(m, k - 1, i);
        den *= ((li - lj) * (li - lj + 1)) as f64;
    }
    assert!(den != 0.0, "zero denominator in lowering coefficient");
    (num / den).abs().sqrt()
}

/// Nonzero terms of `E_{k,k−1}|M⟩` (moves weight from `k−1` to `k`).
pub fn lower_terms(m: &GtPattern, k: usize) -> Vec<(GtPattern, f64)> {
    (1..k)
        .filter_map(|j| {
            let target = m.shifted(k - 1, j, -1)?;
            let g = gamma_minus(m, k, j);
            (g != 0.0).then_some((target, g))
        })
        .collect()
}

/// Nonzero terms of `E_{k−1,k}|M⟩` (moves weight from `k` to `k−1`).
pub fn raise_terms(m: &GtPattern, k: usize) -> Vec<(GtPattern, f64)> {
    (1..k)
        .filter_map(|j| {
            let target = m.shifted(k - 1, j, 1)?;
            let g = gamma_plus(m, k, j);
            (g != 0.0).then_some((target, g))
        })
        .collect()
}

/// Dense matrix of one generator `E_{k,l}` on `W_λ` in canonical pattern order.
#[derive(Clone, Debug)]
pub struct GlGeneratorMatrix {
    pub shape: Partition,
    pub d: usize,
    pub label: (usize, usize),
    pub matrix: ComplexMatrix,
}

fn pattern_index(patterns: &[GtPattern]) -> HashMap<&GtPattern, usize> {
    patterns.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

fn check_k(k: usize, lo: usize, d: usize) -> SchurResult<()> {
    if k < lo || k > d {
        return Err(SchurError::InvalidInput(format!("generator index {k} outside [{lo}, {d}]")));
    }
    Ok(())
}

/// `E_{k,k}`: diagonal of weights `w_k(M)`.
pub fn gl_diag(lambda: &Partition, d: usize, k: usize) -> SchurResult<GlGeneratorMatrix> {
    check_k(k, 1, d)?;
    let pats = enumerate_gt(lambda, d)?;
    let mut m = zeros(pats.len(), pats.len());
    for (i, p) in pats.iter().enumerate() {
        m[(i, i)] = c(p.weight().entries()[k - 1] as f64);
    }
    Ok(GlGeneratorMatrix { shape: lambda.clone(), d, label: (k, k), matrix: m })
}

fn off_diagonal(
    lambda: &Partition,
    d: usize,
    k: usize,
    label: (usize, usize),
    terms: fn(&GtPattern, usize) -> Vec<(GtPattern, f64)>,
) -> SchurResult<GlGeneratorMatrix> {
    check_k(k, 2, d)?;
    let pats = enumerate_gt(lambda, d)?;
    let index = pattern_index(&pats);
    let mut m = zeros(pats.len(), pats.len());
    for (col, p) in pats.iter().enumerate() {
        for (target, v) in terms(p, k) {
            m[(index[&target], col)] = c(v);
        }
    }
    Ok(GlGeneratorMatrix { shape: lambda.clone(), d, label, matrix: m })
}

/// `E_{k,k−1}`.
pub fn gl_lower(lambda: &Partition, d: usize, k: usize) -> SchurResult<GlGeneratorMatrix> {
    off_diagonal(lambda, d, k, (k, k - 1), lower_terms)
}

/// `E_{k−1,k}`.
pub fn gl_raise(lambda: &Partition, d: usize, k: usize) -> SchurResult<GlGeneratorMatrix> {
    off_diagonal(lambda, d, k, (k - 1, k), raise_terms)
}

/// Generator `E_{k,l}` with `|k − l| ≤ 1` on `W_λ`.
pub fn gl_generator(lambda: &Partition, d: usize, k: usize, l: usize) -> SchurResult<GlGeneratorMatrix> {
    match (k, l) {
        _ if k == l => gl_diag(lambda, d, k),
        _ if k == l + 1 => gl_lower(lambda, d, k),
        _ if l == k + 1 => gl_raise(lambda, d, l),
        _ => Err(SchurError::InvalidInput(format!("E_({k},{l}) is not adjacent"))),
    }
}

/// `φ(E_{k,l}) = Σ_i I ⊗ ⋯ ⊗ |k⟩⟨l| ⊗ ⋯ ⊗ I` on `(ℂ^d)^{⊗n}`.
pub fn tensor_gl_action(k: usize, l: usize, n: usize, d: usize, cap: usize) -> SchurResult<ComplexMatrix> {
    let size = d.checked_pow(n as u32).unwrap_or(usize::MAX);
    if size > cap {
        return Err(SchurError::CapExceeded { size, cap });
    }
    if k == 0 || l == 0 || k > d || l > d {
        return Err(SchurError::InvalidInput(format!("E_({k},{l}) outside gl_{d}")));
    }
    let mut m = zeros(size, size);
    for col in 0..size {
        let x = string_of_index(col, n, d);
        for i in 0..n {
            if x[i] == l {
                let mut y = x.clone();
                y[i] = k;
                m[(string_index(&y, d), col)] += c(1.0);
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::enumerate_partitions;
    use crate::linalg::{max_abs, max_abs_diff};
    use crate::symrep::{all_permutations, tensor_perm_action, Permutation};

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn e(lambda: &Partition, d: usize, k: usize, l: usize) -> ComplexMatrix {
        gl_generator(lambda, d, k, l).unwrap().matrix
    }

    #[test]
    fn defining_irrep() {
        let diag = gl_diag(&p(&[1]), 2, 1).unwrap().matrix;
        assert_eq!(diag[(0, 0)], c(0.0));
        assert_eq!(diag[(1, 1)], c(1.0));
        let lower = gl_lower(&p(&[1]), 2, 2).unwrap().matrix;
        // patterns in order: weight (0,1) then (1,0); lowering sends the second to the first
        assert_eq!(lower[(0, 1)], c(1.0));
        assert!((lower.iter().map(|z| z.norm()).sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn adjointness_and_cartan_trace() {
        for n in 0..=5 {
            for d in 1..=5 {
                for lambda in enumerate_partitions(n, d) {
                    for k in 2..=d {
                        let lo = e(&lambda, d, k, k - 1);
                        let hi = e(&lambda, d, k - 1, k);
                        assert!(max_abs_diff(&lo, &hi.adjoint()) < 1e-12, "{lambda} d={d} k={k}");
                        assert!(lo.iter().all(|z| z.re >= 0.0 && z.im == 0.0));
                    }
                    let tr: f64 = (1..=d).map(|k| e(&lambda, d, k, k).trace().re).sum();
                    let m = enumerate_gt(&lambda, d).unwrap().len();
                    assert_eq!(tr as usize, n * m);
                }
            }
        }
    }

    #[test]
    fn commutation_relations() {
        // [E_ij, E_kl] = δ_jk E_il − δ_li E_kj over adjacent and Cartan generators
        for n in 0..=5 {
            for d in 2..=5 {
                if n > 4 && d > 4 {
                    continue;
                }
                for lambda in enumerate_partitions(n, d) {
                    let mut gens = Vec::new();
                    for k in 1..=d {
                        gens.push((k, k));
                        if k >= 2 {
                            gens.push((k, k - 1));
                            gens.push((k - 1, k));
                        }
                    }
                    let mats: HashMap<(usize, usize), ComplexMatrix> =
                        gens.iter().map(|&(a, b)| ((a, b), e(&lambda, d, a, b))).collect();
                    let dim = mats[&(1, 1)].nrows();
                    for &(i, j) in &gens {
                        for &(k, l) in &gens {
                            let lhs = &mats[&(i, j)] * &mats[&(k, l)] - &mats[&(k, l)] * &mats[&(i, j)];
                            let mut rhs = zeros(dim, dim);
                            let mut known = true;
                            if j == k {
                                match mats.get(&(i, l)) {
                                    Some(m) => rhs += m,
                                    None => known = false,
                                }
                            }
                            if l == i {
                                match mats.get(&(k, j)) {
                                    Some(m) => rhs -= m,
                                    None => known = false,
                                }
                            }
                            if known {
                                assert!(
                                    max_abs_diff(&lhs, &rhs) < 1e-9,
                                    "{lambda} d={d} [E{i}{j}, E{k}{l}]"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn raising_moves_weight() {
        let lambda = p(&[2, 1]);
        for k in 2..=3 {
            let hi = e(&lambda, 3, k - 1, k);
            let pats = enumerate_gt(&lambda, 3).unwrap();
            for (col, m) in pats.iter().enumerate() {
                for (row, t) in pats.iter().enumerate() {
                    if hi[(row, col)].norm() > 0.0 {
                        let mut w = m.weight().entries().to_vec();
                        w[k - 2] += 1;
                        w[k - 1] -= 1;
                        assert_eq!(t.weight().entries(), &w[..]);
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_action_properties() {
        let one = tensor_gl_action(1, 1, 1, 2, 64).unwrap();
        assert_eq!(one[(0, 0)], c(1.0));
        assert_eq!(one[(1, 1)], c(0.0));
        for n in 1..=4 {
            for d in 1..=3 {
                for k in 1..=d {
                    for l in 1..=d {
                        if usize::abs_diff(k, l) > 1 {
                            continue;
                        }
                        let phi = tensor_gl_action(k, l, n, d, 4096).unwrap();
                        for s in all_permutations(n).iter().filter(|s| s.inversions() == 1) {
                            let psi = tensor_perm_action(s, d, 4096).unwrap();
                            assert!(max_abs(&(&phi * &psi - &psi * &phi)) < 1e-15);
                        }
                        if k == l {
                            for idx in 0..d.pow(n as u32) {
                                let x = string_of_index(idx, n, d);
                                let count = x.iter().filter(|&&s| s == k).count();
                                assert_eq!(phi[(idx, idx)], c(count as f64));
                            }
                        }
                    }
                }
            }
        }
        let _ = Permutation::identity(1);
        assert!(tensor_gl_action(1, 2, 13, 2, 4096).is_err());
    }
}
