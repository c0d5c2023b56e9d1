use crate::combinat::partition::{addable_rows, Partition};
use crate::error::{SchurError, SchurResult};

/// Standard Young tableau stored as its Yamanouchi word: `word[i-1]` is the row of entry `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardTableau {
    word: Vec<usize>,
}

impl StandardTableau {
    /// Validates that every prefix of the word is a partition.
    pub fn from_word(word: impl Into<Vec<usize>>) -> SchurResult<Self> {
        let word = word.into();
        let mut counts: Vec<usize> = Vec::new();
        for &r in &word {
            if r == 0 || r > counts.len() + 1 {
                return Err(SchurError::InvalidShape(format!("word {word:?} is not Yamanouchi")));
            }
            if r == counts.len() + 1 {
                counts.push(0);
            }
            if r > 1 && counts[r - 2] == counts[r - 1] {
                return Err(SchurError::InvalidShape(format!("word {word:?} is not Yamanouchi")));
            }
            counts[r - 1] += 1;
        }
        Ok(Self { word })
    }

    /// Builds from a saturated chain `∅ = T_0 ⊂ T_1 ⊂ ⋯ ⊂ T_n`.
    pub fn from_chain(chain: &[Partition]) -> SchurResult<Self> {
        if chain.first().is_none_or(|t| !t.is_empty()) {
            return Err(SchurError::InvalidShape("chain must start at the empty shape".into()));
        }
        let mut word = Vec::with_capacity(chain.len().saturating_sub(1));
        for pair in chain.windows(2) {
            let row = (1..=pair[1].len())
                .find(|&r| pair[0].add_box(r).as_ref() == Some(&pair[1]))
                .ok_or_else(|| {
                    SchurError::InvalidShape(format!("{} -> {} is not a single box", pair[0], pair[1]))
                })?;
            word.push(row);
        }
        Ok(Self { word })
    }

    /// Builds from a row-wise filling with entries `1..=n`.
    pub fn from_filling(rows: &[Vec<usize>]) -> SchurResult<Self> {
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut word = vec![0; n];
        for (r, row) in rows.iter().enumerate() {
            for &e in row {
                if e == 0 || e > n || word[e - 1] != 0 {
                    return Err(SchurError::InvalidShape(format!("bad filling {rows:?}")));
                }
                word[e - 1] = r + 1;
            }
        }
        let t = Self::from_word(word)?;
        if t.filling() != rows {
            return Err(SchurError::InvalidShape(format!("filling {rows:?} is not standard")));
        }
        Ok(t)
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn shape(&self) -> Partition {
        self.prefix_shape(self.word.len())
    }

    /// Shape `T_i` formed by entries `1..=i`.
    pub fn prefix_shape(&self, i: usize) -> Partition {
        let mut counts: Vec<usize> = Vec::new();
        for &r in &self.word[..i] {
            if r > counts.len() {
                counts.resize(r, 0);
            }
            counts[r - 1] += 1;
        }
        Partition::new(counts).expect("Yamanouchi prefix is a partition")
    }

    pub fn chain(&self) -> Vec<Partition> {
        (0..=self.word.len()).map(|i| self.prefix_shape(i)).collect()
    }

    /// Rows of the filled tableau.
    pub fn filling(&self) -> Vec<Vec<usize>> {
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for (i, &r) in self.word.iter().enumerate() {
            if r > rows.len() {
                rows.resize(r, Vec::new());
            }
            rows[r - 1].push(i + 1);
        }
        rows
    }

    /// (row, column) of entry `e`, both 1-based.
    pub fn position(&self, e: usize) -> (usize, usize) {
        let r = self.word[e - 1];
        let col = self.word[..e].iter().filter(|&&x| x == r).count();
        (r, col)
    }

    /// Content `col − row` of entry `e`.
    pub fn content(&self, e: usize) -> i64 {
        let (r, c) = self.position(e);
        c as i64 - r as i64
    }

    /// Signed axial distance from `i` to `i+1`: +1 in the same row, −1 in the same column.
    pub fn axial_distance(&self, i: usize) -> i64 {
        assert!(i >= 1 && i < self.n(), "axial distance index {i} out of range");
        self.content(i + 1) - self.content(i)
    }

    /// Tableau with entries `i` and `i+1` exchanged, if that is still standard.
    pub fn swapped(&self, i: usize) -> Option<Self> {
        let mut w = self.word.clone();
        w.swap(i - 1, i);
        Self::from_word(w).ok()
    }
}

/// All standard tableaux of shape `lambda`, ascending lex on the Yamanouchi word.
pub fn enumerate_syt(lambda: &Partition) -> Vec<StandardTableau> {
    fn rec(target: &Partition, cur: &Partition, word: &mut Vec<usize>, out: &mut Vec<StandardTableau>) {
        if cur == target {
            out.push(StandardTableau { word: word.clone() });
            return;
        }
        for a in addable_rows(cur, target.len()) {
            let next = cur.add_box(a).expect("addable");
            if target.contains(&next) {
                word.push(a);
                rec(target, &next, word, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(lambda, &Partition::empty(), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::partition::enumerate_partitions;
    use itertools::Itertools;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    // Oracle: permutations of 1..n placed into the shape row by row, filtered for standardness.
    fn brute_syt_count(lambda: &Partition) -> usize {
        let n = lambda.size();
        (1..=n)
            .permutations(n)
            .filter(|perm| {
                let mut rows = Vec::new();
                let mut k = 0;
                for &len in lambda.parts() {
                    rows.push(perm[k..k + len].to_vec());
                    k += len;
                }
                let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
                let cols_ok = (1..rows.len()).all(|r| (0..rows[r].len()).all(|c| rows[r - 1][c] < rows[r][c]));
                rows_ok && cols_ok
            })
            .count()
    }

    #[test]
    fn syt_examples() {
        let t = enumerate_syt(&p(&[2, 1]));
        let words: Vec<&[usize]> = t.iter().map(|t| t.word()).collect();
        assert_eq!(words, vec![&[1, 1, 2][..], &[1, 2, 1][..]]);
        assert_eq!(enumerate_syt(&p(&[5])).len(), 1);
        let sq = enumerate_syt(&p(&[2, 2]));
        assert!(sq.iter().any(|t| t.word() == [1, 2, 1, 2]));
    }

    #[test]
    fn syt_counts_match_brute_force() {
        for n in 0..=6 {
            for lambda in enumerate_partitions(n, n.max(1)) {
                assert_eq!(enumerate_syt(&lambda).len(), brute_syt_count(&lambda), "{lambda}");
            }
        }
    }

    #[test]
    fn representations_roundtrip() {
        for lambda in enumerate_partitions(6, 6) {
            for t in enumerate_syt(&lambda) {
                assert_eq!(StandardTableau::from_chain(&t.chain()).unwrap(), t);
                assert_eq!(StandardTableau::from_filling(&t.filling()).unwrap(), t);
                assert_eq!(t.shape(), lambda);
            }
        }
    }

    #[test]
    fn axial_distance_signs() {
        let row = StandardTableau::from_word(vec![1, 1, 1]).unwrap();
        let col = StandardTableau::from_word(vec![1, 2, 3]).unwrap();
        for i in 1..3 {
            assert_eq!(row.axial_distance(i), 1);
            assert_eq!(col.axial_distance(i), -1);
        }
        let t = StandardTableau::from_word(vec![1, 2, 1, 2]).unwrap();
        assert_eq!(t.axial_distance(2).abs(), 2);
    }

    #[test]
    fn rejects_non_standard() {
        assert!(StandardTableau::from_word(vec![2, 1]).is_err());
        assert!(StandardTableau::from_word(vec![1, 2, 2]).is_err());
        assert!(StandardTableau::from_filling(&[vec![2, 1]]).is_err());
    }
}
