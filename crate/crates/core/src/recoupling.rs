//! Recoupling coefficients: the one-row F-symbols used by the isometry `V`,
//! reduced Wigner entries, and the Pieri Clebsch–Gordan transform built from them.

use std::collections::HashMap;

use crate::combinat::{addable_rows, enumerate_gt, GtPattern, Partition};
use crate::error::{SchurError, SchurResult};
use crate::linalg::{c, zeros, ComplexMatrix};

fn check_fusion(k: usize, lambda: &Partition, nu: &Partition) -> SchurResult<()> {
    if k == 0 {
        return Err(SchurError::InvalidShape("one-row shape must have at least one box".into()));
    }
    if nu.size() != lambda.size() + k {
        return Err(SchurError::InvalidShape(format!("|{nu}| != |{lambda}| + {k}")));
    }
    if !nu.contains(lambda) {
        return Err(SchurError::InvalidShape(format!("{lambda} is not contained in {nu}")));
    }
    Ok(())
}

/// Overlap between fusing `(k−1) ⊗ □` into `(k)` first and fusing `□ ⊗ λ` into `λ^{+a}` first,
/// inside the total shape `ν`. Nonnegative by convention.
pub fn f_left(k: usize, lambda: &Partition, nu: &Partition, a: usize) -> SchurResult<f64> {
    check_fusion(k, lambda, nu)?;
    if lambda.add_box(a).is_none() {
        return Err(SchurError::InvalidShape(format!("row {a} is not addable to {lambda}")));
    }
    // one row past ℓ(ν) so that a new row outside ν contributes its zero
    let rows = nu.len() + 1;
    let la = lambda.part(a) as i64 - a as i64;
    let mut num = 1.0;
    let mut den = 1.0;
    for i in 1..=rows {
        num *= (nu.part(i) as i64 - i as i64 - la) as f64;
        if i != a {
            den *= (lambda.part(i) as i64 - i as i64 - la) as f64;
        }
    }
    if den == 0.0 {
        return Err(SchurError::ZeroDenominator(format!("f_left({k}, {lambda}, {nu}, {a})")));
    }
    Ok((num / den / k as f64).abs().sqrt())
}

/// Overlap between fusing `(k−1) ⊗ □` into `(k)` first and fusing `(k−1) ⊗ λ` into `ν^{−r}` first.
pub fn f_right(k: usize, lambda: &Partition, nu: &Partition, r: usize) -> SchurResult<f64> {
    check_fusion(k, lambda, nu)?;
    if nu.remove_box(r).is_none() {
        return Err(SchurError::InvalidShape(format!("row {r} is not removable from {nu}")));
    }
    let rows = nu.len() + 1;
    let nr = nu.part(r) as i64 - r as i64;
    let mut num = 1.0;
    let mut den = 1.0;
    for i in 1..=rows {
        num *= (nr - lambda.part(i) as i64 + i as i64) as f64;
        if i != r {
            den *= (nr - nu.part(i) as i64 + i as i64) as f64;
        }
    }
    if den == 0.0 {
        return Err(SchurError::ZeroDenominator(format!("f_right({k}, {lambda}, {nu}, {r})")));
    }
    Ok((num / den / k as f64).abs().sqrt())
}

fn interlaces(upper: &[usize], lower: &[usize]) -> bool {
    (0..lower.len()).all(|i| upper[i] >= lower[i] && lower[i] >= upper[i + 1])
}

/// Reduced Wigner coefficient at level `d = upper.len()`.
///
/// `upper` is the level-`d` row before coupling (length `d`) and `lower` the level-`d−1`
/// row before coupling (length `d−1`). The box lands in row `i` of `upper` and in row `j`
/// of `lower`, with `j = 0` meaning the lower row is unchanged. Combinations that do not
/// give interlacing partitions return 0. Values depend only on the nonzero parts.
pub fn rw_entry(upper: &[usize], lower: &[usize], i: usize, j: usize) -> f64 {
    let d = upper.len();
    assert!(d >= 1 && lower.len() + 1 == d, "row lengths {} and {} do not nest", d, lower.len());
    if i == 0 || i > d || j > d - 1 {
        return 0.0;
    }
    let is_partition = |v: &[usize]| v.windows(2).all(|w| w[0] >= w[1]);
    let mut up = upper.to_vec();
    up[i - 1] += 1;
    let mut low = lower.to_vec();
    if j > 0 {
        low[j - 1] += 1;
    }
    if !is_partition(&up) || !is_partition(&low) || !interlaces(upper, lower) || !interlaces(&up, &low) {
        return 0.0;
    }
    let l_up = |k: usize| upper[k - 1] as i64 - k as i64;
    let l_low = |k: usize| lower[k - 1] as i64 - k as i64;
    let li = l_up(i);
    let mut num = 1.0;
    let mut den = 1.0;
    for k in (1..=d).filter(|&k| k != i) {
        den *= (l_up(k) - li) as f64;
    }
    if j == 0 {
        for k in 1..d {
            num *= (l_low(k) - li - 1) as f64;
        }
        assert!(den != 0.0, "zero denominator in reduced Wigner entry");
        return (num / den).abs().sqrt();
    }
    let lj = l_low(j);
    for k in (1..d).filter(|&k| k != j) {
        num *= (l_low(k) - li - 1) as f64;
        den *= (l_low(k) - lj - 1) as f64;
    }
    for k in (1..=d).filter(|&k| k != i) {
        num *= (l_up(k) - lj) as f64;
    }
    assert!(den != 0.0, "zero denominator in reduced Wigner entry");
    let sign = if i <= j { 1.0 } else { -1.0 };
    sign * (num / den).abs().sqrt()
}

/// Nonzero terms `(a, M′, coefficient)` of `|M⟩ ⊗ |x⟩` in the coupled basis
/// `⊕_a W_{λ+a}`, where `λ` is the top row of `M`.
pub fn cg_terms(m: &GtPattern, x: usize) -> Vec<(usize, GtPattern, f64)> {
    let d = m.d();
    assert!(x >= 1 && x <= d, "symbol {x} outside [1, {d}]");
    let mut out = Vec::new();
    for a in 1..=d {
        let mut rows = m.rows();
        rows[d - 1][a - 1] += 1;
        if !rows[d - 1].windows(2).all(|w| w[0] >= w[1]) {
            continue;
        }
        descend(m, x, d, a, 1.0, &mut rows, &mut out);
    }
    out
}

// `rows` already holds the coupled rows for levels > k and level k; work on level k → k−1.
fn descend(
    m: &GtPattern,
    x: usize,
    k: usize,
    a: usize,
    amp: f64,
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<(usize, GtPattern, f64)>,
) {
    let upper = m.row(k);
    let lower: &[usize] = if k >= 2 { m.row(k - 1) } else { &[] };
    if k == x {
        let v = if k == 1 { 1.0 } else { rw_entry(upper, lower, a, 0) };
        if v != 0.0 {
            if let Ok(mp) = GtPattern::from_rows(rows) {
                let top_a = row_added(m, &mp);
                out.push((top_a, mp, amp * v));
            }
        }
        return;
    }
    for j in 1..k {
        let v = rw_entry(upper, lower, a, j);
        if v == 0.0 {
            continue;
        }
        rows[k - 2][j - 1] += 1;
        descend(m, x, k - 1, j, amp * v, rows, out);
        rows[k - 2][j - 1] -= 1;
    }
}

fn row_added(before: &GtPattern, after: &GtPattern) -> usize {
    let d = before.d();
    (1..=d).find(|&i| after.get(d, i) != before.get(d, i)).expect("one box was added")
}

/// Pieri Clebsch–Gordan transform for `W_λ ⊗ ℂ^d`.
///
/// Columns are `(M, x)` with `M` outer (index `m·d + x − 1`); rows are the
/// channels `a` in ascending order, each followed by its patterns in canonical order.
#[derive(Clone, Debug)]
pub struct CgBlock {
    pub shape: Partition,
    pub d: usize,
    pub input_patterns: Vec<GtPattern>,
    pub channels: Vec<usize>,
    pub output_patterns: Vec<(usize, GtPattern)>,
    pub matrix: ComplexMatrix,
}

impl CgBlock {
    pub fn column_index(&self, m: usize, x: usize) -> usize {
        m * self.d + x - 1
    }
}

/// Rows of the CG block: `(channel, pattern)` in block order.
pub fn cg_output_basis(lambda: &Partition, d: usize) -> SchurResult<Vec<(usize, GtPattern)>> {
    let mut out = Vec::new();
    for a in addable_rows(lambda, d) {
        let nu = lambda.add_box(a).expect("addable");
        out.extend(enumerate_gt(&nu, d)?.into_iter().map(|m| (a, m)));
    }
    Ok(out)
}

pub fn cg_transform(lambda: &Partition, d: usize, cap: usize) -> SchurResult<CgBlock> {
    let input = enumerate_gt(lambda, d)?;
    let size = input.len() * d;
    if size > cap {
        return Err(SchurError::CapExceeded { size, cap });
    }
    let output = cg_output_basis(lambda, d)?;
    if output.len() != size {
        return Err(SchurError::InvalidShape(format!(
            "Pieri decomposition of {lambda} ⊗ □ has {} states, expected {size}",
            output.len()
        )));
    }
    let row_of: HashMap<&GtPattern, usize> = output.iter().enumerate().map(|(i, (_, m))| (m, i)).collect();
    let mut mat = zeros(size, size);
    for (mi, m) in input.iter().enumerate() {
        for x in 1..=d {
            for (_, mp, v) in cg_terms(m, x) {
                mat[(row_of[&mp], mi * d + x - 1)] += c(v);
            }
        }
    }
    Ok(CgBlock {
        shape: lambda.clone(),
        d,
        input_patterns: input,
        channels: addable_rows(lambda, d),
        output_patterns: output,
        matrix: mat,
    })
}
