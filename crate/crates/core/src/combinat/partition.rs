use std::fmt;

use crate::error::{SchurError, SchurResult};

/// Integer partition stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, trimming trailing zeros. Rejects increasing sequences.
    pub fn new(parts: impl Into<Vec<usize>>) -> SchurResult<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SchurError::InvalidShape(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Self { parts })
    }

    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// The one-row partition `(k)`.
    pub fn row(k: usize) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Self { parts: vec![k] }
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Row `i` (1-based); zero past the last row.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// View padded with zeros to `rows` entries. Panics if the partition is longer.
    pub fn padded(&self, rows: usize) -> Vec<usize> {
        assert!(self.len() <= rows, "partition {self} does not fit in {rows} rows");
        let mut v = self.parts.clone();
        v.resize(rows, 0);
        v
    }

    /// Adds a box in row `a` (1-based) if the result is still a partition.
    pub fn add_box(&self, a: usize) -> Option<Self> {
        if a == 0 || a > self.len() + 1 {
            return None;
        }
        if a > 1 && self.part(a - 1) == self.part(a) {
            return None;
        }
        let mut parts = self.parts.clone();
        if a == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[a - 1] += 1;
        }
        Some(Self { parts })
    }

    /// Removes a box from row `r` (1-based) if the result is still a partition.
    pub fn remove_box(&self, r: usize) -> Option<Self> {
        if r == 0 || r > self.len() || self.part(r) == self.part(r + 1) {
            return None;
        }
        let mut parts = self.parts.clone();
        parts[r - 1] -= 1;
        Self::new(parts).ok()
    }

    /// True when every row of `other` fits inside the matching row of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (1..=other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// Skew shape `self / inner` has at most one box per column.
    pub fn is_horizontal_strip_over(&self, inner: &Partition) -> bool {
        self.contains(inner) && (1..=self.len()).all(|i| inner.part(i) >= self.part(i + 1))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` with at most `max_rows` rows, descending lexicographic.
pub fn enumerate_partitions(n: usize, max_rows: usize) -> Vec<Partition> {
    fn rec(rem: usize, cap: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        if rows_left == 0 {
            return;
        }
        for p in (1..=cap.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_rows, &mut Vec::new(), &mut out);
    out
}

/// Rows `a` (ascending) where a box can be added keeping at most `d` rows.
pub fn addable_rows(lambda: &Partition, d: usize) -> Vec<usize> {
    (1..=d.min(lambda.len() + 1))
        .filter(|&a| lambda.add_box(a).is_some())
        .collect()
}

/// Rows from which a box can be removed.
pub fn removable_rows(lambda: &Partition) -> Vec<usize> {
    (1..=lambda.len()).filter(|&r| lambda.remove_box(r).is_some()).collect()
}

/// Composition of `n`: strictly positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: impl Into<Vec<usize>>) -> SchurResult<Self> {
        let parts = parts.into();
        if parts.contains(&0) {
            return Err(SchurError::InvalidShape(format!(
                "composition {parts:?} has a zero part"
            )));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Part `k` (1-based).
    pub fn part(&self, k: usize) -> usize {
        self.parts[k - 1]
    }

    /// Prefix sums `μ̃_0 = 0, μ̃_1, …, μ̃_ℓ`.
    pub fn prefix_sums(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        out.push(0);
        let mut acc = 0;
        for &p in &self.parts {
            acc += p;
            out.push(acc);
        }
        out
    }

    /// Order of the Young subgroup `S_{μ_1} × ⋯ × S_{μ_ℓ}`.
    pub fn young_subgroup_order(&self) -> u128 {
        self.parts.iter().map(|&p| factorial(p)).product()
    }

    /// Value of the block containing position `i` (1-based), i.e. the `k` with `μ̃_{k-1} < i ≤ μ̃_k`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut acc = 0;
        for (k, &p) in self.parts.iter().enumerate() {
            acc += p;
            if i <= acc {
                return k + 1;
            }
        }
        panic!("position {i} outside composition of {}", self.size());
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", strs.join(","))
    }
}

/// All compositions of `n` (ascending lex).
pub fn enumerate_compositions(n: usize) -> Vec<Composition> {
    fn rec(rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(Composition { parts: cur.clone() });
            return;
        }
        for p in 1..=rem {
            cur.push(p);
            rec(rem - p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Strictly increasing list of symbols in `[d]` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphabetMap {
    values: Vec<usize>,
}

impl AlphabetMap {
    pub fn new(values: impl Into<Vec<usize>>) -> SchurResult<Self> {
        let values = values.into();
        if values.first() == Some(&0) || values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SchurError::InvalidShape(format!(
                "alphabet map {values:?} must be strictly increasing and 1-based"
            )));
        }
        Ok(Self { values })
    }

    pub fn identity(len: usize) -> Self {
        Self { values: (1..=len).collect() }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Symbol `p_i` (1-based `i`).
    pub fn get(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// Position of `symbol` in the map (1-based).
    pub fn rank_of(&self, symbol: usize) -> Option<usize> {
        self.values.binary_search(&symbol).ok().map(|i| i + 1)
    }
}

/// Length-`d` occurrence vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    entries: Vec<usize>,
}

impl Weight {
    pub fn new(entries: impl Into<Vec<usize>>) -> Self {
        Self { entries: entries.into() }
    }

    /// Occurrence counts of symbols `1..=d` in `x`.
    pub fn of_string(x: &[usize], d: usize) -> SchurResult<Self> {
        let mut entries = vec![0; d];
        for &s in x {
            if s == 0 || s > d {
                return Err(SchurError::InvalidInput(format!("symbol {s} outside [1, {d}]")));
            }
            entries[s - 1] += 1;
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn d(&self) -> usize {
        self.entries.len()
    }

    pub fn size(&self) -> usize {
        self.entries.iter().sum()
    }

    /// Drops zeros: the nonzero counts and the symbols that carry them.
    pub fn split(&self) -> (Composition, AlphabetMap) {
        let mut parts = Vec::new();
        let mut values = Vec::new();
        for (i, &w) in self.entries.iter().enumerate() {
            if w > 0 {
                parts.push(w);
                values.push(i + 1);
            }
        }
        (Composition { parts }, AlphabetMap { values })
    }

    /// Inverse of [`Weight::split`].
    pub fn join(mu: &Composition, p: &AlphabetMap, d: usize) -> SchurResult<Self> {
        if mu.len() != p.len() {
            return Err(SchurError::InvalidShape(format!(
                "composition {mu} and alphabet {:?} differ in length",
                p.values()
            )));
        }
        if p.values().last().is_some_and(|&m| m > d) {
            return Err(SchurError::InvalidShape(format!("alphabet exceeds d = {d}")));
        }
        let mut entries = vec![0; d];
        for (k, &s) in p.values().iter().enumerate() {
            entries[s - 1] = mu.parts()[k];
        }
        Ok(Self { entries })
    }
}

/// All weights of length `d` summing to `n`, ascending lex.
pub fn enumerate_weights(n: usize, d: usize) -> Vec<Weight> {
    fn rec(rem: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Weight>) {
        if slots == 1 {
            cur.push(rem);
            out.push(Weight { entries: cur.clone() });
            cur.pop();
            return;
        }
        for v in 0..=rem {
            cur.push(v);
            rec(rem - v, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if n == 0 {
            out.push(Weight { entries: vec![] });
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
