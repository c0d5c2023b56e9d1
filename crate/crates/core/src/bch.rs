//! Schur transform as a cascade of Pieri Clebsch–Gordan transforms, one site
//! at a time, plus a variant that first compresses the alphabet to at most `n`
//! symbols and runs the cascade in dimension `n`.

use std::collections::BTreeMap;

use crate::combinat::{enumerate_gt, GtPattern, Partition};
use crate::error::{SchurError, SchurResult};
use crate::prep_circuit::compress_string;
use crate::recoupling::cg_terms;
use crate::schur_basis::{check_cap, Column, Method, SchurIndex, SchurTransform};

/// Partial cascade output: Yamanouchi word so far and the current pattern.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CascadeState {
    pub step: usize,
    pub terms: BTreeMap<(Vec<usize>, GtPattern), f64>,
}

impl CascadeState {
    /// The empty tableau with the zero pattern in `d` rows.
    pub fn vacuum(d: usize) -> SchurResult<Self> {
        let m = enumerate_gt(&Partition::empty(), d)?.remove(0);
        Ok(Self { step: 0, terms: BTreeMap::from([((Vec::new(), m), 1.0)]) })
    }

    /// Couples one more site holding symbol `x`.
    pub fn push(&self, x: usize) -> Self {
        let mut terms = BTreeMap::new();
        for ((word, m), &a) in &self.terms {
            for (row, m2, coeff) in cg_terms(m, x) {
                let mut w = word.clone();
                w.push(row);
                *terms.entry((w, m2)).or_insert(0.0) += a * coeff;
            }
        }
        terms.retain(|_, v: &mut f64| *v != 0.0);
        Self { step: self.step + 1, terms }
    }

    pub fn norm(&self) -> f64 {
        self.terms.values().map(|a| a * a).sum::<f64>().sqrt()
    }
}

/// Runs the full cascade on a string over `[d]`.
pub fn cascade(x: &[usize], d: usize) -> SchurResult<CascadeState> {
    if let Some(&bad) = x.iter().find(|&&s| s == 0 || s > d) {
        return Err(SchurError::InvalidInput(format!("symbol {bad} outside 1..={d}")));
    }
    let mut s = CascadeState::vacuum(d)?;
    for &xi in x {
        s = s.push(xi);
    }
    Ok(s)
}

fn to_column(index: &SchurIndex, state: &CascadeState) -> SchurResult<Column> {
    state
        .terms
        .iter()
        .map(|((word, m), &a)| {
            let shape = m.top();
            let flat = index
                .flat(&shape, word, m)
                .ok_or_else(|| SchurError::MalformedState(format!("cascade produced unknown label {word:?}")))?;
            Ok((flat, a))
        })
        .collect()
}

/// Cascade of `CG_d` transforms.
pub fn schur_unitary_bch(n: usize, d: usize, cap: usize) -> SchurResult<SchurTransform> {
    check_cap(n, d, cap)?;
    let index = SchurIndex::new(n, d)?;
    SchurTransform::from_columns(&index, Method::Bch, |x| to_column(&index, &cascade(x, d)?))
}

/// Cascade run on the rank string in dimension `n`, then relabelled to `d` rows.
pub fn highdim_column(x: &[usize], d: usize) -> SchurResult<CascadeState> {
    let n = x.len();
    let c = compress_string(x)?;
    let small = cascade(&c.ranks, n.max(1))?;
    let l = c.alphabet.len();
    let mut terms = BTreeMap::new();
    for ((word, m), a) in small.terms {
        let full = GtPattern::decompress(&m.truncated(l), &c.alphabet, d)?;
        terms.insert((word, full), a);
    }
    Ok(CascadeState { step: small.step, terms })
}

pub fn schur_unitary_bch_highdim(n: usize, d: usize, cap: usize) -> SchurResult<SchurTransform> {
    check_cap(n, d, cap)?;
    let index = SchurIndex::new(n, d)?;
    SchurTransform::from_columns(&index, Method::BchHighDim, |x| to_column(&index, &highdim_column(x, d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::symrep::string_of_index;

    #[test]
    fn one_site_is_relabelling() {
        for d in 1..=5 {
            let u = schur_unitary_bch(1, d, 4096).unwrap();
            let dense = u.to_dense();
            for col in 0..d {
                let nonzero: Vec<_> = (0..d).filter(|&r| dense[(r, col)].norm() > 0.0).collect();
                assert_eq!(nonzero.len(), 1);
                assert!((dense[(nonzero[0], col)].re - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn spin_half_pair() {
        let dense = schur_unitary_bch(2, 2, 4096).unwrap().to_dense();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for v in dense.iter() {
            let a = v.re.abs();
            assert!(a < 1e-15 || (a - 1.0).abs() < 1e-15 || (a - h).abs() < 1e-15);
        }
        // the singlet row sits last and is antisymmetric in |12⟩, |21⟩
        assert!((dense[(3, 1)].re + dense[(3, 2)].re).abs() < 1e-15);
        assert!((dense[(3, 1)].re.abs() - h).abs() < 1e-15);
    }

    #[test]
    fn cascade_preserves_norm() {
        for idx in 0..3usize.pow(5) {
            let x = string_of_index(idx, 5, 3);
            let mut s = CascadeState::vacuum(3).unwrap();
            for &xi in &x {
                s = s.push(xi);
                assert!((s.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn unitary_small() {
        for (n, d) in [(2, 2), (3, 2), (2, 3), (3, 3), (4, 3), (6, 2), (3, 5)] {
            assert!(schur_unitary_bch(n, d, 4096).unwrap().unitarity_deviation() < 1e-12);
            assert!(schur_unitary_bch_highdim(n, d, 4096).unwrap().unitarity_deviation() < 1e-12);
        }
    }

    #[test]
    fn highdim_equals_plain_when_d_is_n() {
        for n in 1..=4 {
            let a = schur_unitary_bch(n, n, 4096).unwrap().to_dense();
            let b = schur_unitary_bch_highdim(n, n, 4096).unwrap().to_dense();
            assert!(max_abs_diff(&a, &b) < 1e-13);
        }
    }

    #[test]
    fn rank_cascade_matches_full_cascade_entrywise() {
        // dimension-stable coefficients: the same amplitudes appear in n rows and in d rows
        for (n, d) in [(2usize, 4usize), (3, 5), (3, 6), (4, 6)] {
            for idx in 0..d.pow(n as u32) {
                let x = string_of_index(idx, n, d);
                let plain = cascade(&x, d).unwrap();
                let high = highdim_column(&x, d).unwrap();
                assert_eq!(plain.terms.len(), high.terms.len());
                for (k, v) in &plain.terms {
                    assert!((v - high.terms[k]).abs() < 1e-10, "{x:?}");
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(schur_unitary_bch(13, 2, 4096), Err(SchurError::CapExceeded { .. })));
    }
}
