use crate::combinat::partition::{AlphabetMap, Composition, Partition, Weight};
use crate::error::{SchurError, SchurResult};

/// Gelfand–Tsetlin pattern with `d` rows. Row `k` (1-based) has `k` entries.
///
/// Entries are stored row after row, so the derived ordering is lexicographic on
/// the reading sequence `M_{1,1}, M_{2,1}, M_{2,2}, …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GtPattern {
    d: usize,
    flat: Vec<usize>,
}

fn row_start(k: usize) -> usize {
    k * (k - 1) / 2
}

impl GtPattern {
    /// Builds a pattern from explicit rows (`rows[k-1]` has length `k`) and checks interlacing.
    pub fn from_rows(rows: &[Vec<usize>]) -> SchurResult<Self> {
        let d = rows.len();
        let mut flat = Vec::with_capacity(d * (d + 1) / 2);
        for (k, row) in rows.iter().enumerate() {
            if row.len() != k + 1 {
                return Err(SchurError::InvalidShape(format!("row {} has {} entries", k + 1, row.len())));
            }
            flat.extend_from_slice(row);
        }
        let m = Self { d, flat };
        if !m.is_valid() {
            return Err(SchurError::InvalidShape(format!("rows {rows:?} do not interlace")));
        }
        Ok(m)
    }

    fn from_flat_unchecked(d: usize, flat: Vec<usize>) -> Self {
        Self { d, flat }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Row `k` (1-based).
    pub fn row(&self, k: usize) -> &[usize] {
        &self.flat[row_start(k)..row_start(k) + k]
    }

    /// Entry `M_{k,i}`.
    pub fn get(&self, k: usize, i: usize) -> usize {
        self.flat[row_start(k) + i - 1]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (1..=self.d).map(|k| self.row(k).to_vec()).collect()
    }

    pub fn reading(&self) -> &[usize] {
        &self.flat
    }

    pub fn row_partition(&self, k: usize) -> Partition {
        if k == 0 {
            return Partition::empty();
        }
        Partition::new(self.row(k).to_vec()).expect("rows of a valid pattern are partitions")
    }

    pub fn top(&self) -> Partition {
        self.row_partition(self.d)
    }

    pub fn row_sum(&self, k: usize) -> usize {
        if k == 0 {
            0
        } else {
            self.row(k).iter().sum()
        }
    }

    pub fn is_valid(&self) -> bool {
        (1..=self.d).all(|k| self.row(k).windows(2).all(|w| w[0] >= w[1]))
            && (2..=self.d).all(|k| {
                (1..k).all(|i| self.get(k, i) >= self.get(k - 1, i) && self.get(k - 1, i) >= self.get(k, i + 1))
            })
    }

    pub fn weight(&self) -> Weight {
        Weight::new((1..=self.d).map(|k| self.row_sum(k) - self.row_sum(k - 1)).collect::<Vec<_>>())
    }

    /// Copy with `M_{k,i}` shifted by `delta`; `None` if the result is not a valid pattern.
    pub fn shifted(&self, k: usize, i: usize, delta: i64) -> Option<Self> {
        let idx = row_start(k) + i - 1;
        let v = self.flat[idx] as i64 + delta;
        if v < 0 {
            return None;
        }
        let mut flat = self.flat.clone();
        flat[idx] = v as usize;
        let m = Self { d: self.d, flat };
        // only rows k-1, k, k+1 can break
        let ok = m.row(k).windows(2).all(|w| w[0] >= w[1])
            && (k == 1 || (1..k).all(|j| m.get(k, j) >= m.get(k - 1, j) && m.get(k - 1, j) >= m.get(k, j + 1)))
            && (k == m.d || (1..=k).all(|j| m.get(k + 1, j) >= m.get(k, j) && m.get(k, j) >= m.get(k + 1, j + 1)));
        ok.then_some(m)
    }

    /// Replace the top row and keep the lower rows; `None` if interlacing fails.
    pub fn with_top(&self, top: &[usize]) -> Option<Self> {
        let mut flat = self.flat.clone();
        flat[row_start(self.d)..].copy_from_slice(top);
        let m = Self { d: self.d, flat };
        m.is_valid().then_some(m)
    }

    /// Append a new top row `top` (length `d+1`); `None` if it does not interlace.
    pub fn extended(&self, top: &[usize]) -> Option<Self> {
        assert_eq!(top.len(), self.d + 1);
        let mut flat = self.flat.clone();
        flat.extend_from_slice(top);
        let m = Self { d: self.d + 1, flat };
        let k = m.d;
        let ok = top.windows(2).all(|w| w[0] >= w[1])
            && (1..k).all(|i| m.get(k, i) >= m.get(k - 1, i) && m.get(k - 1, i) >= m.get(k, i + 1));
        ok.then_some(m)
    }

    /// Lowest `k` rows as a pattern of its own.
    pub fn truncated(&self, k: usize) -> Self {
        Self::from_flat_unchecked(k, self.flat[..row_start(k + 1)].to_vec())
    }

    /// Drop zero-weight rows: returns the small pattern and the rows that were kept.
    pub fn compress(&self) -> (GtPattern, AlphabetMap) {
        let w = self.weight();
        let mut flat = Vec::new();
        let mut values = Vec::new();
        for k in 1..=self.d {
            if w.entries()[k - 1] > 0 {
                values.push(k);
                let j = values.len();
                flat.extend_from_slice(&self.row(k)[..j]);
            }
        }
        let small = Self::from_flat_unchecked(values.len(), flat);
        (small, AlphabetMap::new(values).expect("increasing"))
    }

    /// Inverse of [`GtPattern::compress`].
    pub fn decompress(small: &GtPattern, p: &AlphabetMap, d: usize) -> SchurResult<GtPattern> {
        if small.d != p.len() {
            return Err(SchurError::InvalidShape(format!(
                "pattern has {} rows but alphabet has {} symbols",
                small.d,
                p.len()
            )));
        }
        if p.values().last().is_some_and(|&m| m > d) {
            return Err(SchurError::InvalidShape(format!("alphabet exceeds d = {d}")));
        }
        if small.weight().entries().contains(&0) {
            return Err(SchurError::InvalidShape("compressed pattern has a zero weight".into()));
        }
        let mut flat = Vec::with_capacity(d * (d + 1) / 2);
        let mut j = 0;
        for k in 1..=d {
            if j < p.len() && p.get(j + 1) == k {
                j += 1;
            }
            let mut row = vec![0; k];
            if j > 0 {
                row[..j].copy_from_slice(small.row(j));
            }
            flat.extend_from_slice(&row);
        }
        let m = Self::from_flat_unchecked(d, flat);
        debug_assert!(m.is_valid());
        Ok(m)
    }
}

/// Interlacing rows directly below `upper` (length `k`), optionally with a fixed sum.
fn lower_rows(upper: &[usize], sum: Option<usize>) -> Vec<Vec<usize>> {
    let k = upper.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k - 1);
    // suffix bounds for pruning on the sum
    let mut min_rest = vec![0; k];
    let mut max_rest = vec![0; k];
    for i in (0..k - 1).rev() {
        min_rest[i] = min_rest[i + 1] + upper[i + 1];
        max_rest[i] = max_rest[i + 1] + upper[i];
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        upper: &[usize],
        acc: usize,
        sum: Option<usize>,
        min_rest: &[usize],
        max_rest: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = upper.len();
        if i == k - 1 {
            if sum.is_none_or(|s| s == acc) {
                out.push(cur.clone());
            }
            return;
        }
        for v in upper[i + 1]..=upper[i] {
            if let Some(s) = sum {
                let total = acc + v;
                if total + min_rest[i + 1] > s || total + max_rest[i + 1] < s {
                    continue;
                }
            }
            cur.push(v);
            rec(i + 1, upper, acc + v, sum, min_rest, max_rest, cur, out);
            cur.pop();
        }
    }
    rec(0, upper, 0, sum, &min_rest, &max_rest, &mut cur, &mut out);
    out
}

fn build_patterns(top: Vec<usize>, row_sums: Option<&[usize]>) -> Vec<GtPattern> {
    let d = top.len();
    let mut stacks: Vec<Vec<Vec<usize>>> = vec![vec![top]];
    for k in (1..d).rev() {
        let sum = row_sums.map(|s| s[k - 1]);
        let mut next = Vec::new();
        for stack in &stacks {
            let upper = stack.last().unwrap();
            for row in lower_rows(upper, sum) {
                let mut s = stack.clone();
                s.push(row);
                next.push(s);
            }
        }
        stacks = next;
    }
    let mut out: Vec<GtPattern> = stacks
        .into_iter()
        .map(|mut stack| {
            stack.reverse();
            GtPattern::from_flat_unchecked(d, stack.concat())
        })
        .collect();
    out.sort();
    out
}

/// All patterns with top row `lambda` padded to `d`, in canonical order.
pub fn enumerate_gt(lambda: &Partition, d: usize) -> SchurResult<Vec<GtPattern>> {
    if lambda.len() > d {
        return Err(SchurError::InvalidShape(format!("{lambda} has more than {d} rows")));
    }
    if d == 0 {
        return Ok(vec![GtPattern::from_flat_unchecked(0, Vec::new())]);
    }
    Ok(build_patterns(lambda.padded(d), None))
}

/// Patterns with top row `lambda` and a prescribed weight (length = number of rows).
pub fn enumerate_gt_with_weight(lambda: &Partition, weight: &[usize]) -> Vec<GtPattern> {
    let d = weight.len();
    if lambda.len() > d || lambda.size() != weight.iter().sum::<usize>() {
        return Vec::new();
    }
    if d == 0 {
        return vec![GtPattern::from_flat_unchecked(0, Vec::new())];
    }
    // sums[k-1] is the required sum of row k
    let mut sums = Vec::with_capacity(d);
    let mut acc = 0;
    for &w in weight {
        acc += w;
        sums.push(acc);
    }
    build_patterns(lambda.padded(d), Some(&sums[..]))
        .into_iter()
        .filter(|m| m.weight().entries() == weight)
        .collect()
}

/// Compressed patterns: `ℓ(μ)` rows, top row `lambda`, weight exactly `μ`.
pub fn enumerate_compressed(lambda: &Partition, mu: &Composition) -> Vec<GtPattern> {
    enumerate_gt_with_weight(lambda, mu.parts())
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka(lambda: &Partition, mu: &[usize]) -> u64 {
    // count without materialising patterns
    fn rec(upper: Vec<usize>, sums: &[usize]) -> u64 {
        let k = upper.len();
        if k == 1 {
            return 1;
        }
        lower_rows(&upper, Some(sums[k - 2]))
            .into_iter()
            .map(|row| rec(row, sums))
            .sum()
    }
    let nonzero: Vec<usize> = mu.iter().copied().filter(|&m| m > 0).collect();
    if lambda.size() != nonzero.iter().sum::<usize>() || lambda.len() > nonzero.len() {
        return 0;
    }
    if nonzero.is_empty() {
        return 1;
    }
    let mut sums = Vec::new();
    let mut acc = 0;
    for &w in &nonzero {
        acc += w;
        sums.push(acc);
    }
    rec(lambda.padded(nonzero.len()), &sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::partition::{enumerate_partitions, enumerate_weights};
    use crate::combinat::tableau::enumerate_syt;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn five_row_pattern() -> GtPattern {
        GtPattern::from_rows(&[vec![0], vec![2, 0], vec![2, 0, 0], vec![2, 1, 0, 0], vec![3, 2, 0, 0, 0]]).unwrap()
    }

    // Oracle: semistandard fillings by brute force over all [d]^n fillings of the diagram.
    fn brute_ssyt(lambda: &Partition, d: usize) -> Vec<Vec<usize>> {
        let n = lambda.size();
        let mut out = Vec::new();
        let total = d.pow(n as u32);
        for mut code in 0..total {
            let mut fill = Vec::with_capacity(n);
            for _ in 0..n {
                fill.push(code % d + 1);
                code /= d;
            }
            let mut rows = Vec::new();
            let mut k = 0;
            for &len in lambda.parts() {
                rows.push(fill[k..k + len].to_vec());
                k += len;
            }
            let ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]))
                && (1..rows.len()).all(|r| (0..rows[r].len()).all(|c| rows[r - 1][c] < rows[r][c]));
            if ok {
                out.push(fill);
            }
        }
        out
    }

    #[test]
    fn gt_examples() {
        assert_eq!(enumerate_gt(&p(&[1]), 2).unwrap().len(), 2);
        assert_eq!(enumerate_gt(&p(&[2]), 2).unwrap().len(), 3);
        assert!(enumerate_gt(&p(&[3, 2]), 5).unwrap().contains(&five_row_pattern()));
        assert!(enumerate_gt(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn gt_counts_match_ssyt() {
        for n in 0..=5 {
            for d in 1..=4 {
                for lambda in enumerate_partitions(n, d) {
                    let pats = enumerate_gt(&lambda, d).unwrap();
                    assert_eq!(pats.len(), brute_ssyt(&lambda, d).len(), "{lambda} d={d}");
                    assert!(pats.windows(2).all(|w| w[0] < w[1]));
                    assert!(pats.iter().all(GtPattern::is_valid));
                }
            }
        }
    }

    #[test]
    fn weights() {
        assert_eq!(five_row_pattern().weight().entries(), &[0, 2, 0, 1, 2]);
        for lambda in enumerate_partitions(5, 4) {
            let hw_rows: Vec<Vec<usize>> = (1..=4).map(|k| lambda.padded(4)[..k].to_vec()).collect();
            let hw = GtPattern::from_rows(&hw_rows).unwrap();
            assert_eq!(hw.weight().entries(), &lambda.padded(4)[..]);
            for m in enumerate_gt(&lambda, 4).unwrap() {
                assert_eq!(m.weight().size(), 5);
            }
        }
    }

    #[test]
    fn compression_examples() {
        let (small, alpha) = five_row_pattern().compress();
        assert_eq!(small.rows(), vec![vec![2], vec![2, 1], vec![3, 2, 0]]);
        assert_eq!(alpha.values(), &[2, 4, 5]);
        assert_eq!(GtPattern::decompress(&small, &alpha, 5).unwrap(), five_row_pattern());

        let full = GtPattern::from_rows(&[vec![1], vec![2, 0]]).unwrap();
        let (s, a) = full.compress();
        assert_eq!(s, full);
        assert_eq!(a, AlphabetMap::identity(2));

        for m in enumerate_gt(&p(&[3, 2]), 5).unwrap() {
            let (s, a) = m.compress();
            assert_eq!(GtPattern::decompress(&s, &a, 5).unwrap(), m);
        }
    }

    #[test]
    fn decompress_rejects_mismatch() {
        let small = GtPattern::from_rows(&[vec![1], vec![1, 1]]).unwrap();
        assert!(GtPattern::decompress(&small, &AlphabetMap::new(vec![1]).unwrap(), 3).is_err());
        assert!(GtPattern::decompress(&small, &AlphabetMap::new(vec![1, 4]).unwrap(), 3).is_err());
    }

    #[test]
    fn kostka_examples_and_oracle() {
        assert_eq!(kostka(&p(&[2, 1]), &[1, 1, 1]), 2);
        assert_eq!(kostka(&p(&[3, 1]), &[3, 1]), 1);
        assert_eq!(kostka(&p(&[1, 1]), &[2]), 0);
        for n in 1..=5 {
            for lambda in enumerate_partitions(n, 3) {
                let ssyt = brute_ssyt(&lambda, 3);
                for w in enumerate_weights(n, 3) {
                    let brute = ssyt
                        .iter()
                        .filter(|f| Weight::of_string(f, 3).unwrap() == w)
                        .count() as u64;
                    assert_eq!(kostka(&lambda, w.entries()), brute, "{lambda} {w:?}");
                    assert_eq!(enumerate_gt_with_weight(&lambda, w.entries()).len() as u64, brute);
                }
            }
        }
    }

    #[test]
    fn counting_identities_small() {
        for n in 0..=4 {
            for d in 1..=3 {
                let total: usize = enumerate_partitions(n, d)
                    .iter()
                    .map(|l| enumerate_syt(l).len() * enumerate_gt(l, d).unwrap().len())
                    .sum();
                assert_eq!(total, d.pow(n as u32));
            }
        }
    }

    #[test]
    fn shifted_respects_interlacing() {
        let m = GtPattern::from_rows(&[vec![1], vec![1, 0]]).unwrap();
        assert!(m.shifted(1, 1, -1).is_some());
        assert!(m.shifted(1, 1, 1).is_none());
    }
}
