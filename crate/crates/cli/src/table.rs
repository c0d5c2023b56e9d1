//! Coefficient tables written as JSON lines, one record per coefficient.

use serde::{Deserialize, Serialize};

use schur_core::combinat::{
    addable_rows, enumerate_partitions, kostka, removable_rows, Composition, GtPattern, Partition,
};
use schur_core::krovi::v_block;
use schur_core::recoupling::{f_left, f_right, rw_entry};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TableRow {
    Kostka {
        lambda: Vec<usize>,
        weight: Vec<usize>,
        value: u64,
    },
    /// `index` is the row receiving the box (left) or losing it (right).
    Fsymbol {
        side: Side,
        k: usize,
        lambda: Vec<usize>,
        nu: Vec<usize>,
        index: usize,
        value: f64,
    },
    Rw {
        upper: Vec<usize>,
        lower: Vec<usize>,
        i: usize,
        j: usize,
        value: f64,
    },
    /// `tableau` is the Yamanouchi word, `pattern` the rows of the compressed pattern.
    Ventry {
        lambda: Vec<usize>,
        mu: Vec<usize>,
        tableau: Vec<usize>,
        pattern: Vec<Vec<usize>>,
        value: f64,
    },
}

impl TableRow {
    pub fn to_line(&self) -> CliResult<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_line(line: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(line)?)
    }
}

/// Parses `3,2,1`; the empty string is the empty list.
pub fn parse_list(s: &str) -> CliResult<Vec<usize>> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Query(format!("bad number {t:?}"))))
        .collect()
}

pub fn parse_partition(s: &str) -> CliResult<Partition> {
    let mut parts = parse_list(s)?;
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Ok(Partition::new(parts)?)
}

/// Parses pattern rows bottom to top separated by `;`, e.g. `2;2,1;3,2,0`.
pub fn parse_pattern(s: &str) -> CliResult<GtPattern> {
    let rows: Vec<Vec<usize>> = s.split(';').map(parse_list).collect::<CliResult<_>>()?;
    Ok(GtPattern::from_rows(&rows)?)
}

/// Kostka numbers `K_{λ,w}`. Missing shape or weight ranges over all partitions of `n`.
pub fn kostka_rows(n: Option<usize>, lambda: Option<&Partition>, weight: Option<&[usize]>) -> CliResult<Vec<TableRow>> {
    let size = match (n, lambda, weight) {
        (Some(n), _, _) => n,
        (None, Some(l), _) => l.size(),
        (None, None, Some(w)) => w.iter().sum(),
        (None, None, None) => return Err(CliError::Query("kostka needs --n, --lambda or --weight".into())),
    };
    let shapes = match lambda {
        Some(l) => vec![l.clone()],
        None => enumerate_partitions(size, size),
    };
    let weights: Vec<Vec<usize>> = match weight {
        Some(w) => vec![w.to_vec()],
        None => enumerate_partitions(size, size).iter().map(|p| p.parts().to_vec()).collect(),
    };
    let mut rows = Vec::new();
    for l in &shapes {
        for w in &weights {
            if l.size() != size || w.iter().sum::<usize>() != size {
                return Err(CliError::Query(format!("shape {l} and weight {w:?} must both have size {size}")));
            }
            rows.push(TableRow::Kostka { lambda: l.parts().to_vec(), weight: w.clone(), value: kostka(l, w) });
        }
    }
    Ok(rows)
}

/// One-row F-symbols for every admissible row index, for one or both sides.
pub fn fsymbol_rows(lambda: &Partition, nu: &Partition, side: Option<Side>) -> CliResult<Vec<TableRow>> {
    let k = nu
        .size()
        .checked_sub(lambda.size())
        .filter(|&k| k > 0)
        .ok_or_else(|| CliError::Query(format!("|{nu}| must exceed |{lambda}|")))?;
    let mut rows = Vec::new();
    if side != Some(Side::Right) {
        for a in addable_rows(lambda, nu.len()) {
            let value = f_left(k, lambda, nu, a)?;
            rows.push(fsym(Side::Left, k, lambda, nu, a, value));
        }
    }
    if side != Some(Side::Left) {
        for r in removable_rows(nu) {
            let value = f_right(k, lambda, nu, r)?;
            rows.push(fsym(Side::Right, k, lambda, nu, r, value));
        }
    }
    Ok(rows)
}

fn fsym(side: Side, k: usize, lambda: &Partition, nu: &Partition, index: usize, value: f64) -> TableRow {
    TableRow::Fsymbol { side, k, lambda: lambda.parts().to_vec(), nu: nu.parts().to_vec(), index, value }
}

/// Reduced Wigner entries for a level-`d` row and a level-`d−1` row.
pub fn rw_rows(upper: &[usize], lower: &[usize], i: Option<usize>, j: Option<usize>) -> CliResult<Vec<TableRow>> {
    let d = upper.len();
    if d == 0 || lower.len() + 1 != d {
        return Err(CliError::Query(format!("lower row needs {} entries when upper has {d}", d.saturating_sub(1))));
    }
    let ok = (0..lower.len()).all(|t| upper[t] >= lower[t] && lower[t] >= upper[t + 1])
        && upper.windows(2).all(|w| w[0] >= w[1]);
    if !ok {
        return Err(CliError::Query(format!("{lower:?} does not interlace {upper:?}")));
    }
    let is: Vec<usize> = match i {
        Some(i) if (1..=d).contains(&i) => vec![i],
        Some(i) => return Err(CliError::Query(format!("i = {i} outside 1..={d}"))),
        None => (1..=d).collect(),
    };
    let js: Vec<usize> = match j {
        Some(j) if j < d => vec![j],
        Some(j) => return Err(CliError::Query(format!("j = {j} outside 0..{d}"))),
        None => (0..d).collect(),
    };
    let mut rows = Vec::new();
    for &i in &is {
        for &j in &js {
            rows.push(TableRow::Rw { upper: upper.to_vec(), lower: lower.to_vec(), i, j, value: rw_entry(upper, lower, i, j) });
        }
    }
    Ok(rows)
}

/// Entries of the isometry block for `(λ, μ)`, optionally restricted to one row or column.
pub fn ventry_rows(
    lambda: &Partition,
    mu: &Composition,
    tableau: Option<&[usize]>,
    pattern: Option<&GtPattern>,
) -> CliResult<Vec<TableRow>> {
    if lambda.size() != mu.size() {
        return Err(CliError::Query(format!("{lambda} and μ = {:?} have different sizes", mu.parts())));
    }
    let vb = v_block(lambda, mu)?;
    let tabs = schur_core::combinat::enumerate_syt(lambda);
    if let Some(w) = tableau {
        if !tabs.iter().any(|t| t.word() == w) {
            return Err(CliError::Query(format!("{w:?} is not a standard tableau of shape {lambda}")));
        }
    }
    if let Some(m) = pattern {
        if !vb.columns.contains(m) {
            return Err(CliError::Query(format!("pattern {:?} has wrong shape or weight", m.rows())));
        }
    }
    let mut rows = Vec::new();
    for (s, t) in tabs.iter().enumerate() {
        if tableau.is_some_and(|w| w != t.word()) {
            continue;
        }
        for (c, m) in vb.columns.iter().enumerate() {
            if pattern.is_some_and(|p| p != m) {
                continue;
            }
            rows.push(TableRow::Ventry {
                lambda: lambda.parts().to_vec(),
                mu: mu.parts().to_vec(),
                tableau: t.word().to_vec(),
                pattern: m.rows(),
                value: vb.values[(s, c)],
            });
        }
    }
    Ok(rows)
}
