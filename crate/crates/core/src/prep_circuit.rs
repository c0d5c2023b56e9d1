//! Register-level semantics of the coset-state preparation circuit, the
//! alphabet compression used by the high-dimensional cascade, a mixed-radix
//! permutation encoding, and small index helpers.
//!
//! States are sparse: a map from basis assignments of all registers to real
//! amplitudes. Only subroutine E branches, so exhaustive checks stay cheap.
//!
//! Register conventions. `p` and `mu` are padded with `0` as the empty symbol,
//! empty entries always sit at the tail. The coset register stores, for each
//! site, the rank of that site in the stably sorted string, i.e. the one-line
//! form of `σ⁻¹` for each sorting permutation `σ`.

use std::collections::BTreeMap;

use crate::combinat::{AlphabetMap, Composition, Weight};
use crate::error::{SchurError, SchurResult};
use crate::symrep::{coset_vector, Permutation};

/// One basis assignment of every register.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Registers {
    /// Input sites not yet absorbed.
    pub pending: Vec<usize>,
    pub p: Vec<usize>,
    pub mu: Vec<usize>,
    pub coset: Vec<usize>,
    /// Position ancilla `|·⟩_p`.
    pub pos: usize,
    /// Uniqueness bit `|·⟩_u`.
    pub unique: usize,
}

impl Registers {
    pub fn input(x: &[usize]) -> Self {
        Self { pending: x.to_vec(), p: Vec::new(), mu: Vec::new(), coset: Vec::new(), pos: 0, unique: 0 }
    }

    /// Number of absorbed sites.
    pub fn width(&self) -> usize {
        self.p.len()
    }
}

/// Sparse real superposition of register assignments.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RegisterState {
    terms: BTreeMap<Registers, f64>,
}

impl RegisterState {
    pub fn basis(r: Registers) -> Self {
        Self { terms: BTreeMap::from([(r, 1.0)]) }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Registers, f64)>) -> Self {
        let mut s = Self::default();
        for (r, a) in terms {
            *s.terms.entry(r).or_insert(0.0) += a;
        }
        s
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Registers, &f64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.terms.values().map(|a| a * a).sum::<f64>().sqrt()
    }

    /// Applies a basis permutation gate to every branch.
    fn map(&self, f: impl Fn(&Registers) -> SchurResult<Registers>) -> SchurResult<Self> {
        let mut out = BTreeMap::new();
        for (r, &a) in &self.terms {
            let r2 = f(r)?;
            if out.insert(r2, a).is_some() {
                return Err(SchurError::MalformedState("gate is not injective on this state".into()));
            }
        }
        Ok(Self { terms: out })
    }
}

/// Moves the next input site into the active registers, `p'_n := x_n`, with
/// fresh zero registers for `μ_n` and the coset entry.
pub fn attach_site(state: &RegisterState) -> SchurResult<RegisterState> {
    state.map(|r| {
        let Some((&x, rest)) = r.pending.split_first() else {
            return Err(SchurError::MalformedState("no pending input site".into()));
        };
        let mut r2 = r.clone();
        r2.pending = rest.to_vec();
        r2.p.push(x);
        r2.mu.push(0);
        r2.coset.push(0);
        Ok(r2)
    })
}

/// Computes the position `e_n` of `x_n` in the updated alphabet and whether it was seen before.
pub fn subroutine_a(state: &RegisterState) -> SchurResult<RegisterState> {
    state.map(|r| {
        if r.pos != 0 || r.unique != 0 {
            return Err(SchurError::MalformedState("ancillas must start at 0".into()));
        }
        let m = r.width();
        let x = r.p[m - 1];
        let mut r2 = r.clone();
        // A_k: count strictly smaller symbols, then the position is one past them
        r2.pos = 1 + r.p[..m - 1].iter().filter(|&&q| q != 0 && q < x).count();
        // A'_k: flip the bit on a match
        for &q in &r.p[..m - 1] {
            if q == x {
                r2.unique ^= 1;
            }
        }
        Ok(r2)
    })
}

/// Inserts a fresh symbol into `p`, or clears the `x_n` register for a repeated one.
pub fn subroutine_b(state: &RegisterState) -> SchurResult<RegisterState> {
    state.map(|r| {
        let m = r.width();
        let e = r.pos;
        if e == 0 || e > m {
            return Err(SchurError::MalformedState(format!("position {e} outside 1..={m}")));
        }
        let mut r2 = r.clone();
        if r.unique == 0 {
            for k in (e + 1..=m).rev() {
                r2.p.swap(k - 1, k - 2);
            }
        } else {
            if r.p[e - 1] != r.p[m - 1] {
                return Err(SchurError::MalformedState("repeated symbol does not match p_e".into()));
            }
            r2.p[m - 1] -= r.p[e - 1];
        }
        Ok(r2)
    })
}

/// Updates the type register `μ`.
pub fn subroutine_c(state: &RegisterState) -> SchurResult<RegisterState> {
    state.map(|r| {
        let m = r.width();
        let e = r.pos;
        if r.mu[m - 1] != 0 {
            return Err(SchurError::MalformedState("fresh μ register is not 0".into()));
        }
        let mut r2 = r.clone();
        if r.unique == 0 {
            r2.mu[m - 1] += 1;
            for k in (e + 1..=m).rev() {
                r2.mu.swap(k - 1, k - 2);
            }
        } else {
            r2.mu[e - 1] += 1;
        }
        Ok(r2)
    })
}

/// Uncomputes the uniqueness bit from `μ_{e_n}`.
pub fn subroutine_d(state: &RegisterState) -> SchurResult<RegisterState> {
    state.map(|r| {
        let mut r2 = r.clone();
        if r.mu[r.pos - 1] != 1 {
            r2.unique ^= 1;
        }
        if r2.unique != 0 {
            return Err(SchurError::MalformedState("uniqueness bit not cleared".into()));
        }
        Ok(r2)
    })
}

/// Writes the last coset entry as a uniform superposition over the ranks of
/// block `e_n`, relabelling earlier entries to make room.
pub fn subroutine_e(state: &RegisterState) -> SchurResult<RegisterState> {
    let mut out = BTreeMap::new();
    for (r, &a) in state.terms() {
        let m = r.width();
        let e = r.pos;
        if r.coset[m - 1] != 0 {
            return Err(SchurError::MalformedState("fresh coset register is not 0".into()));
        }
        let size = r.mu[e - 1];
        let shift: usize = r.mu[..e - 1].iter().sum();
        let amp = a / (size as f64).sqrt();
        for l in 1..=size {
            // E_k then the shifts E'_k
            let rank = l + shift;
            let mut r2 = r.clone();
            // E''_k
            for v in r2.coset[..m - 1].iter_mut() {
                if *v >= rank {
                    *v += 1;
                }
            }
            r2.coset[m - 1] = rank;
            *out.entry(r2).or_insert(0.0) += amp;
        }
    }
    Ok(RegisterState { terms: out })
}

/// Prefix sums `μ ↦ μ̃`.
pub fn prefix_sums(mu: &[usize]) -> Vec<usize> {
    mu.iter()
        .scan(0, |acc, &m| {
            *acc += m;
            Some(*acc)
        })
        .collect()
}

/// Inverse of [`prefix_sums`].
pub fn prefix_differences(sums: &[usize]) -> Vec<usize> {
    let mut prev = 0;
    sums.iter()
        .map(|&s| {
            let d = s - prev;
            prev = s;
            d
        })
        .collect()
}

/// Uncomputes the position register from `μ̃` and the last coset entry.
pub fn subroutine_h(state: &RegisterState) -> SchurResult<RegisterState> {
    state.map(|r| {
        let m = r.width();
        let rank = r.coset[m - 1];
        let mut r2 = r.clone();
        r2.mu = prefix_sums(&r.mu);
        // with μ̃_0 = 0, exactly e_n of the partial sums lie strictly below the rank
        for k in 0..=m {
            let tilde = if k == 0 { 0 } else { r2.mu[k - 1] };
            if tilde < rank {
                r2.pos = r2.pos.checked_sub(1).ok_or_else(|| {
                    SchurError::MalformedState("position register underflow".into())
                })?;
            }
        }
        r2.mu = prefix_differences(&r2.mu);
        if r2.pos != 0 {
            return Err(SchurError::MalformedState(format!("position register left at {}", r2.pos)));
        }
        Ok(r2)
    })
}

/// One round `Prep_m`: attach the next site and run A, B, C, D, E, H.
pub fn prep_step(state: &RegisterState) -> SchurResult<RegisterState> {
    let s = attach_site(state)?;
    let s = subroutine_a(&s)?;
    let s = subroutine_b(&s)?;
    let s = subroutine_c(&s)?;
    let s = subroutine_d(&s)?;
    let s = subroutine_e(&s)?;
    subroutine_h(&s)
}

/// The full preparation `Prep_1 ⋯ Prep_n` on a basis string.
pub fn prepare(x: &[usize]) -> SchurResult<RegisterState> {
    if x.contains(&0) {
        return Err(SchurError::InvalidInput("symbols are 1-based".into()));
    }
    let mut s = RegisterState::basis(Registers::input(x));
    for _ in 0..x.len() {
        s = prep_step(&s)?;
    }
    Ok(s)
}

/// The state the preparation should produce, built from the direct coset vector.
pub fn expected_preparation(x: &[usize]) -> SchurResult<RegisterState> {
    let n = x.len();
    let d = x.iter().copied().max().unwrap_or(1);
    let (mu, p) = Weight::of_string(x, d)?.split();
    let mut pp = p.values().to_vec();
    pp.resize(n, 0);
    let mut mm = mu.parts().to_vec();
    mm.resize(n, 0);
    let coset = coset_vector(x)?;
    Ok(RegisterState::from_terms(coset.terms().map(|(sigma, a)| {
        let r = Registers {
            pending: Vec::new(),
            p: pp.clone(),
            mu: mm.clone(),
            coset: sigma.inverse().images().to_vec(),
            pos: 0,
            unique: 0,
        };
        (r, a.re)
    })))
}

/// Largest absolute amplitude difference between two states.
pub fn state_distance(a: &RegisterState, b: &RegisterState) -> f64 {
    let mut m: f64 = 0.0;
    for (r, &x) in a.terms() {
        m = m.max((x - b.terms.get(r).copied().unwrap_or(0.0)).abs());
    }
    for (r, &y) in b.terms() {
        if !a.terms.contains_key(r) {
            m = m.max(y.abs());
        }
    }
    m
}

/// A string written as ranks into its sorted alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedString {
    pub ranks: Vec<usize>,
    pub alphabet: AlphabetMap,
    pub composition: Composition,
}

impl CompressedString {
    /// The alphabet register padded to length `n`; `None` marks unused slots.
    pub fn padded_alphabet(&self) -> Vec<Option<usize>> {
        let mut v: Vec<Option<usize>> = self.alphabet.values().iter().map(|&s| Some(s)).collect();
        v.resize(self.ranks.len(), None);
        v
    }

    pub fn decompress(&self) -> Vec<usize> {
        self.ranks.iter().map(|&e| self.alphabet.get(e)).collect()
    }
}

pub fn compress_string(x: &[usize]) -> SchurResult<CompressedString> {
    if x.contains(&0) {
        return Err(SchurError::InvalidInput("symbols are 1-based".into()));
    }
    let d = x.iter().copied().max().unwrap_or(1);
    let (composition, alphabet) = Weight::of_string(x, d)?.split();
    let ranks = x.iter().map(|&s| alphabet.rank_of(s).expect("symbol in alphabet")).collect();
    Ok(CompressedString { ranks, alphabet, composition })
}

/// Digits `(i_n, …, i_2)` with `σ = c_n^{i_n} ⋯ c_2^{i_2}` and `i_k ∈ ℤ_k`,
/// where `c_k` is the cycle `1 → 2 → ⋯ → k → 1`.
pub fn encode_perm(sigma: &Permutation) -> Vec<usize> {
    let n = sigma.n();
    let mut s = sigma.clone();
    let mut digits = Vec::with_capacity(n.saturating_sub(1));
    for k in (2..=n).rev() {
        let i = s.apply(k) % k;
        digits.push(i);
        s = Permutation::cycle(n, k).pow(k - i).compose(&s);
    }
    digits
}

pub fn decode_perm(n: usize, digits: &[usize]) -> SchurResult<Permutation> {
    if digits.len() != n.saturating_sub(1) {
        return Err(SchurError::InvalidInput(format!("{} digits for n = {n}", digits.len())));
    }
    let mut s = Permutation::identity(n);
    for (pos, &i) in digits.iter().enumerate() {
        let k = n - pos;
        if i >= k {
            return Err(SchurError::InvalidInput(format!("digit {i} out of range for ℤ_{k}")));
        }
        s = s.compose(&Permutation::cycle(n, k).pow(i));
    }
    Ok(s)
}

/// Splits a position `1 ≤ i ≤ n` into its block `k` of `μ` and the offset `j` inside it.
pub fn row_index_map(mu: &Composition, i: usize) -> SchurResult<(usize, usize)> {
    if i == 0 || i > mu.size() {
        return Err(SchurError::InvalidInput(format!("index {i} outside 1..={}", mu.size())));
    }
    let sums = mu.prefix_sums();
    let k = mu.block_of(i);
    Ok((k, i - sums[k - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symrep::{all_permutations, string_of_index};

    fn comp(v: &[usize]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    fn run_abcd(x: &[usize]) -> RegisterState {
        let mut s = RegisterState::basis(Registers::input(x));
        for _ in 0..x.len() {
            s = attach_site(&s).unwrap();
            s = subroutine_a(&s).unwrap();
            s = subroutine_b(&s).unwrap();
            s = subroutine_c(&s).unwrap();
            s = subroutine_d(&s).unwrap();
            // E and H are skipped; clear the position by hand
            s = s.map(|r| Ok(Registers { pos: 0, ..r.clone() })).unwrap();
        }
        s
    }

    #[test]
    fn subroutine_a_examples() {
        let mut r = Registers::input(&[]);
        r.p = vec![2, 5, 0, 4];
        let s = subroutine_a(&RegisterState::basis(r.clone())).unwrap();
        let (r2, _) = s.terms().next().unwrap();
        assert_eq!((r2.pos, r2.unique), (2, 0));
        r.p = vec![2, 5, 0, 5];
        let s = subroutine_a(&RegisterState::basis(r)).unwrap();
        let (r2, _) = s.terms().next().unwrap();
        assert_eq!((r2.pos, r2.unique), (2, 1));
    }

    #[test]
    fn subroutine_a_matches_direct_rank() {
        for idx in 0..256 {
            let x = string_of_index(idx, 4, 4);
            let mut s = RegisterState::basis(Registers::input(&x));
            for m in 1..=4 {
                s = attach_site(&s).unwrap();
                let a = subroutine_a(&s).unwrap();
                let (r, _) = a.terms().next().unwrap();
                let prefix = &x[..m];
                let mut distinct: Vec<usize> = prefix.to_vec();
                distinct.sort();
                distinct.dedup();
                assert_eq!(r.pos, distinct.iter().position(|&v| v == x[m - 1]).unwrap() + 1);
                assert_eq!(r.unique, usize::from(x[..m - 1].contains(&x[m - 1])));
                s = subroutine_h(&subroutine_e(&subroutine_d(&subroutine_c(&subroutine_b(&a).unwrap()).unwrap()).unwrap()).unwrap()).unwrap();
            }
        }
    }

    #[test]
    fn bookkeeping_trace() {
        let x = [1, 2, 1, 5, 2];
        let expected = [
            (vec![1], vec![1]),
            (vec![1, 2], vec![1, 1]),
            (vec![1, 2, 0], vec![2, 1, 0]),
            (vec![1, 2, 5, 0], vec![2, 1, 1, 0]),
            (vec![1, 2, 5, 0, 0], vec![2, 2, 1, 0, 0]),
        ];
        let mut s = RegisterState::basis(Registers::input(&x));
        for (p, mu) in expected {
            s = prep_step(&s).unwrap();
            for (r, _) in s.terms() {
                assert_eq!(r.p, p);
                assert_eq!(r.mu, mu);
            }
        }
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn abcd_matches_direct_type() {
        for idx in 0..256 {
            let x = string_of_index(idx, 4, 4);
            let s = run_abcd(&x);
            let (mu, p) = Weight::of_string(&x, 4).unwrap().split();
            let (r, _) = s.terms().next().unwrap();
            let mut pp = p.values().to_vec();
            pp.resize(4, 0);
            let mut mm = mu.parts().to_vec();
            mm.resize(4, 0);
            assert_eq!(r.p, pp);
            assert_eq!(r.mu, mm);
            assert_eq!(r.unique, 0);
        }
    }

    #[test]
    fn fresh_symbol_is_absorbed() {
        let s = run_abcd(&[3]);
        let (r, _) = s.terms().next().unwrap();
        assert_eq!(r.p, vec![3]);
    }

    #[test]
    fn preparation_matches_coset_vector() {
        for (n, d) in [(1usize, 4usize), (2, 4), (3, 4), (4, 3), (4, 4), (5, 3), (8, 2)] {
            for idx in 0..d.pow(n as u32) {
                let x = string_of_index(idx, n, d);
                let got = prepare(&x).unwrap();
                let want = expected_preparation(&x).unwrap();
                assert!(state_distance(&got, &want) < 1e-14, "{x:?}");
                assert!((got.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn worked_preparation() {
        let s = prepare(&[1, 2, 1, 5, 2]).unwrap();
        assert_eq!(s.len(), 4);
        for (r, &a) in s.terms() {
            assert!((a - 0.5).abs() < 1e-15);
            assert_eq!(r.p, vec![1, 2, 5, 0, 0]);
            assert_eq!(r.mu, vec![2, 2, 1, 0, 0]);
        }
    }

    #[test]
    fn superpositions_keep_their_norm() {
        let inputs = [vec![1, 2, 2], vec![3, 1, 2], vec![2, 2, 2]];
        let s = RegisterState::from_terms(inputs.iter().zip([0.6, 0.0, 0.8]).map(|(x, a)| (Registers::input(x), a)));
        let mut s = RegisterState::from_terms(s.terms().filter(|(_, &a)| a != 0.0).map(|(r, &a)| (r.clone(), a)));
        for _ in 0..3 {
            s = prep_step(&s).unwrap();
            assert!((s.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dirty_ancilla_is_rejected() {
        let mut r = Registers::input(&[1, 2]);
        r.pos = 1;
        let s = attach_site(&RegisterState::basis(r)).unwrap();
        assert!(subroutine_a(&s).is_err());
    }

    #[test]
    fn sum_map() {
        assert_eq!(prefix_sums(&[2, 2, 1]), vec![2, 4, 5]);
        assert_eq!(prefix_differences(&[2, 4, 5]), vec![2, 2, 1]);
    }

    #[test]
    fn compression_example() {
        let c = compress_string(&[9, 2, 5, 9, 11, 2]).unwrap();
        assert_eq!(c.ranks, vec![3, 1, 2, 3, 4, 1]);
        assert_eq!(c.padded_alphabet(), vec![Some(2), Some(5), Some(9), Some(11), None, None]);
        assert_eq!(compress_string(&[4, 4, 4]).unwrap().ranks, vec![1, 1, 1]);
        for idx in 0..343 {
            let x = string_of_index(idx, 3, 7);
            assert_eq!(compress_string(&x).unwrap().decompress(), x);
        }
    }

    #[test]
    fn permutation_encoding_is_bijective() {
        for n in 1..=5 {
            let mut seen = std::collections::HashSet::new();
            for sigma in all_permutations(n) {
                let digits = encode_perm(&sigma);
                assert_eq!(decode_perm(n, &digits).unwrap(), sigma);
                assert!(seen.insert(digits));
            }
            assert_eq!(seen.len() as u128, crate::combinat::factorial(n));
        }
        assert_eq!(encode_perm(&Permutation::identity(4)), vec![0, 0, 0]);
    }

    #[test]
    fn row_index_examples() {
        assert_eq!(row_index_map(&comp(&[4, 2, 1, 1]), 5).unwrap(), (2, 1));
        for i in 1..=6 {
            assert_eq!(row_index_map(&comp(&[6]), i).unwrap(), (1, i));
        }
        assert!(row_index_map(&comp(&[2, 1]), 4).is_err());
    }
}
