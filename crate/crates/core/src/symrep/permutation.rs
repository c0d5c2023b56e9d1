use std::fmt;

use itertools::Itertools;

use crate::error::{SchurError, SchurResult};

/// Permutation of `1..=n` in one-line notation. Composition is right-to-left:
/// `(σ·τ)(i) = σ(τ(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: impl Into<Vec<usize>>) -> SchurResult<Self> {
        let images = images.into();
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(SchurError::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[v - 1] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self { images: (1..=n).collect() }
    }

    /// Transposition of `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    /// Adjacent transposition `σ_i = (i, i+1)`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    /// The cycle `1 → 2 → ⋯ → k → 1` acting on `[n]`.
    pub fn cycle(n: usize, k: usize) -> Self {
        let mut images: Vec<usize> = (1..=n).collect();
        for j in 1..k {
            images[j - 1] = j + 1;
        }
        if k >= 1 {
            images[k - 1] = 1;
        }
        Self { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { images: other.images.iter().map(|&i| self.images[i - 1]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    pub fn pow(&self, e: usize) -> Permutation {
        let mut out = Self::identity(self.n());
        for _ in 0..e {
            out = self.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn sign(&self) -> i32 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn inversions(&self) -> usize {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count()
    }

    /// Word `(i_1, …, i_k)` with `σ = σ_{i_1} σ_{i_2} ⋯ σ_{i_k}`, from bubble sort.
    pub fn adjacent_word(&self) -> Vec<usize> {
        // sorting the one-line form by swaps at (j, j+1) multiplies by σ_j on the right
        let mut a = self.images.clone();
        let mut swaps = Vec::new();
        let n = a.len();
        for pass in 0..n {
            for j in 0..n.saturating_sub(1 + pass) {
                if a[j] > a[j + 1] {
                    a.swap(j, j + 1);
                    swaps.push(j + 1);
                }
            }
        }
        swaps.reverse();
        swaps
    }

    /// Index in the lexicographic order of `S_n`.
    pub fn lex_rank(&self) -> usize {
        let n = self.n();
        let mut rank = 0;
        let mut fact = vec![1usize; n + 1];
        for i in 1..=n {
            fact[i] = fact[i - 1] * i;
        }
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&v| v < self.images[i]).count();
            rank += smaller * fact[n - 1 - i];
        }
        rank
    }

    /// Stable argsort of `x`: `t(j)` is the position of the `j`-th smallest entry,
    /// ties kept in their original order.
    pub fn stable_sort_of(x: &[usize]) -> Permutation {
        let mut idx: Vec<usize> = (1..=x.len()).collect();
        idx.sort_by_key(|&i| x[i - 1]);
        Permutation { images: idx }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.images.iter().join(" "))
    }
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    (1..=n)
        .permutations(n)
        .map(|images| Permutation { images })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_to_left() {
        let s = Permutation::new(vec![2, 1, 3]).unwrap();
        let t = Permutation::new(vec![1, 3, 2]).unwrap();
        assert_eq!(s.compose(&t).images(), &[2, 3, 1]);
        assert_eq!(s.compose(&t).apply(2), s.apply(t.apply(2)));
    }

    #[test]
    fn words_reproduce_the_permutation() {
        for n in 1..=5 {
            for p in all_permutations(n) {
                let w = p.adjacent_word();
                assert_eq!(w.len(), p.inversions());
                let mut q = Permutation::identity(n);
                for &i in &w {
                    q = q.compose(&Permutation::adjacent(n, i));
                }
                assert_eq!(q, p);
            }
        }
    }

    #[test]
    fn lex_rank_matches_enumeration() {
        for (i, p) in all_permutations(5).iter().enumerate() {
            assert_eq!(p.lex_rank(), i);
        }
    }

    #[test]
    fn stable_sort_example() {
        let t = Permutation::stable_sort_of(&[1, 2, 1, 5, 2]);
        assert_eq!(t.images(), &[1, 3, 2, 5, 4]);
        let expected = Permutation::transposition(5, 2, 3).compose(&Permutation::transposition(5, 4, 5));
        assert_eq!(t, expected);
    }

    #[test]
    fn cycle_and_inverse() {
        let c = Permutation::cycle(4, 3);
        assert_eq!(c.images(), &[2, 3, 1, 4]);
        assert!(c.pow(3).is_identity());
        assert!(c.compose(&c.inverse()).is_identity());
        assert!(Permutation::new(vec![1, 1]).is_err());
    }
}
