//! Executable checks: equivariance of a Schur unitary under both actions,
//! blockwise comparison of two transforms, the group-algebra identities behind
//! the symmetric-group construction, and an independent Clebsch–Gordan oracle.

use std::collections::HashMap;
use std::fmt;

use nalgebra::DMatrix;

use crate::bch::{schur_unitary_bch, schur_unitary_bch_highdim};
use crate::combinat::{
    addable_rows, enumerate_compositions, enumerate_gt, enumerate_partitions, enumerate_weights, kostka, GtPattern,
    Partition, Weight,
};
use crate::error::{SchurError, SchurResult};
use crate::glrep::{gl_generator, lower_terms, tensor_gl_action};
use crate::krovi::{schur_unitary_krovi, v_block_for, VBlock};
use crate::linalg::{c, direct_sum, identity, kron, max_abs_diff, zeros, ComplexMatrix};
use crate::recoupling::{cg_output_basis, CgBlock};
use crate::schur_basis::{SchurIndex, SchurTransform};
use crate::symrep::{
    all_permutations, qft_with_table, right_regular, tensor_perm_action, young_projector, young_subgroup,
    GroupAlgebraElement, Irrep, IrrepTable, Permutation,
};

/// Tolerance for identities that should hold exactly.
pub const TOL_EXACT: f64 = 1e-10;
/// Tolerance for identities involving chained square-root products.
pub const TOL_CHAINED: f64 = 1e-9;

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub params: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, params: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        let passed = deviation.is_finite() && deviation <= tolerance;
        Self { name: name.into(), params: params.into(), deviation, tolerance, passed }
    }

    /// Merges reports of the same check, keeping the worst deviation.
    pub fn merge(name: impl Into<String>, params: impl Into<String>, reports: &[CheckReport], tolerance: f64) -> Self {
        let dev = reports.iter().map(|r| r.deviation).fold(0.0, f64::max);
        let nan = reports.iter().any(|r| !r.deviation.is_finite());
        Self::new(name, params, if nan { f64::NAN } else { dev }, tolerance)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} ({}) deviation {:.3e} tol {:.0e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.params,
            self.deviation,
            self.tolerance
        )
    }
}

/// Which action an equivariance check covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Sym,
    Gl,
}

/// `⊕_λ ψ_λ(σ) ⊗ I_{m_λ}` in Schur index order.
pub fn sym_target(index: &SchurIndex, sigma: &Permutation) -> ComplexMatrix {
    let blocks: Vec<ComplexMatrix> = index
        .sectors()
        .iter()
        .map(|s| kron(&Irrep::new(&s.shape).matrix(sigma), &identity(s.gt_dim())))
        .collect();
    direct_sum(&blocks)
}

/// `⊕_λ I_{d_λ} ⊗ E_{k,l}|_{W_λ}` in Schur index order.
pub fn gl_target(index: &SchurIndex, k: usize, l: usize) -> SchurResult<ComplexMatrix> {
    let blocks = index
        .sectors()
        .iter()
        .map(|s| Ok(kron(&identity(s.syt_dim()), &gl_generator(&s.shape, index.d(), k, l)?.matrix)))
        .collect::<SchurResult<Vec<_>>>()?;
    Ok(direct_sum(&blocks))
}

/// Compares `U A U†` against the block form for every generator of one side.
pub fn check_schur_equivariance(u: &ComplexMatrix, n: usize, d: usize, side: Side, tol: f64) -> SchurResult<CheckReport> {
    let index = SchurIndex::new(n, d)?;
    let dim = index.dim();
    if u.nrows() != dim || u.ncols() != dim {
        return Err(SchurError::InvalidShape(format!("expected a {dim}×{dim} matrix, got {}×{}", u.nrows(), u.ncols())));
    }
    let ua = u.adjoint();
    let mut dev: f64 = 0.0;
    let cap = usize::MAX;
    match side {
        Side::Sym => {
            for i in 1..n {
                let sigma = Permutation::adjacent(n, i);
                let conj = u * tensor_perm_action(&sigma, d, cap)? * &ua;
                dev = dev.max(max_abs_diff(&conj, &sym_target(&index, &sigma)));
            }
        }
        Side::Gl => {
            let mut gens = Vec::new();
            for k in 1..=d {
                gens.push((k, k));
                if k >= 2 {
                    gens.push((k, k - 1));
                    gens.push((k - 1, k));
                }
            }
            for (k, l) in gens {
                let conj = u * tensor_gl_action(k, l, n, d, cap)? * &ua;
                dev = dev.max(max_abs_diff(&conj, &gl_target(&index, k, l)?));
            }
        }
    }
    let name = match side {
        Side::Sym => "equivariance-sym",
        Side::Gl => "equivariance-gl",
    };
    Ok(CheckReport::new(name, format!("n={n} d={d}"), dev, tol))
}

/// Blockwise comparison `D = A B†`: the observed sign per shape and the worst
/// deviation of `D` from `⊕ ε_λ I`.
#[derive(Clone, Debug)]
pub struct PipelineComparison {
    pub signs: Vec<(Partition, f64)>,
    pub report: CheckReport,
}

pub fn compare_transforms(a: &SchurTransform, b: &SchurTransform, tol: f64) -> SchurResult<PipelineComparison> {
    if (a.n, a.d) != (b.n, b.d) || a.blocks.len() != b.blocks.len() {
        return Err(SchurError::InvalidShape("transforms have different sizes".into()));
    }
    let index = SchurIndex::new(a.n, a.d)?;
    let mut sign: Vec<Option<f64>> = vec![None; index.sectors().len()];
    let mut dev: f64 = 0.0;
    for (ba, bb) in a.blocks.iter().zip(&b.blocks) {
        if ba.rows != bb.rows || ba.cols != bb.cols {
            return Err(SchurError::InvalidShape(format!("weight blocks differ at {:?}", ba.weight.entries())));
        }
        let dmat = &ba.matrix * bb.matrix.adjoint();
        for (i, &r) in ba.rows.iter().enumerate() {
            let (k, _, _) = index.decode(r);
            let diag = dmat[(i, i)];
            let eps = *sign[k].get_or_insert(if diag.re < 0.0 { -1.0 } else { 1.0 });
            for j in 0..ba.rows.len() {
                let want = if i == j { c(eps) } else { c(0.0) };
                dev = dev.max((dmat[(i, j)] - want).norm());
            }
        }
    }
    let signs = index.sectors().iter().zip(sign).map(|(s, e)| (s.shape.clone(), e.unwrap_or(1.0))).collect();
    let report = CheckReport::new(
        format!("compare {} vs {}", a.method, b.method),
        format!("n={} d={}", a.n, a.d),
        dev,
        tol,
    );
    Ok(PipelineComparison { signs, report })
}

/// Krovi against plain BCH, and high-dimensional BCH against plain BCH.
pub fn compare_pipelines(n: usize, d: usize, cap: usize, tol: f64) -> SchurResult<Vec<PipelineComparison>> {
    let k = schur_unitary_krovi(n, d, cap)?;
    let b = schur_unitary_bch(n, d, cap)?;
    let h = schur_unitary_bch_highdim(n, d, cap)?;
    Ok(vec![compare_transforms(&k, &b, tol)?, compare_transforms(&h, &b, tol)?])
}

/// Rank-one perturbation of a transform, used to show that checks are not vacuous.
pub fn perturbed(u: &SchurTransform) -> SchurTransform {
    let mut out = u.clone();
    if let Some(b) = out.blocks.iter_mut().find(|b| b.rows.len() >= 2) {
        b.matrix.swap_rows(0, 1);
    } else if let Some(b) = out.blocks.first_mut() {
        b.matrix[(0, 0)] = -b.matrix[(0, 0)];
    }
    out
}

fn group_algebra_dev(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> f64 {
    a.max_abs_diff(b)
}

/// Young subgroup elements `Y_w` with zero parts skipped.
fn young_of_weight(w: &[usize]) -> Vec<Permutation> {
    young_subgroup(&Weight::new(w.to_vec()).split().0)
}

/// `w^{(k)}`: one unit moved from entry `k−1` to entry `k`.
pub fn shifted_weight(w: &[usize], k: usize) -> Option<Vec<usize>> {
    if k < 2 || k > w.len() || w[k - 2] == 0 {
        return None;
    }
    let mut v = w.to_vec();
    v[k - 2] -= 1;
    v[k - 1] += 1;
    Some(v)
}

/// Grand orthogonality for all pairs of irreps and all matrix units.
pub fn check_gor(n: usize, tol: f64) -> Vec<CheckReport> {
    let table = IrrepTable::new(n);
    let perms = all_permutations(n);
    let g = perms.len() as f64;
    let mats: Vec<Vec<DMatrix<f64>>> =
        table.irreps().iter().map(|ir| perms.iter().map(|p| ir.matrix_real(p)).collect()).collect();
    let mut out = Vec::new();
    for (a, ia) in table.irreps().iter().enumerate() {
        for (b, ib) in table.irreps().iter().enumerate() {
            let mut dev: f64 = 0.0;
            for t in 0..ia.dim() {
                for tp in 0..ib.dim() {
                    let mut acc = DMatrix::<f64>::zeros(ia.dim(), ib.dim());
                    for (gi, _) in perms.iter().enumerate() {
                        // ψ(g)|T⟩⟨T'|ψ(g⁻¹) = column T of ψ_a(g) times row T' of ψ_b(g)ᵀ
                        let col = mats[a][gi].column(t);
                        let row = mats[b][gi].column(tp).transpose();
                        acc += col * row;
                    }
                    acc /= g;
                    for i in 0..ia.dim() {
                        for j in 0..ib.dim() {
                            let want = if a == b && t == tp && i == j { 1.0 / ia.dim() as f64 } else { 0.0 };
                            dev = dev.max((acc[(i, j)] - want).abs());
                        }
                    }
                }
            }
            out.push(CheckReport::new("GOR", format!("λ={} λ'={}", ia.shape(), ib.shape()), dev, tol));
        }
    }
    out
}

/// `Σ_t L(t)|Y_μ⟩⟨Y_μ|L(t⁻¹) = R(Π_μ)` on `ℂ[S_n]` and its Fourier-side form.
pub fn check_qft_twirl(n: usize, tol: f64) -> Vec<CheckReport> {
    let table = IrrepTable::new(n);
    let qft = qft_with_table(&table);
    let perms = all_permutations(n);
    let pos: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let size = perms.len();
    let mut out = Vec::new();
    for mu in enumerate_compositions(n) {
        let ys = young_subgroup(&mu);
        let amp = 1.0 / (ys.len() as f64).sqrt();
        let mut lhs = zeros(size, size);
        for t in crate::symrep::transversal(&mu) {
            let mut v = vec![0.0; size];
            for h in &ys {
                v[pos[&t.compose(h)]] = amp;
            }
            for i in 0..size {
                for j in 0..size {
                    lhs[(i, j)] += c(v[i] * v[j]);
                }
            }
        }
        let mut rhs = zeros(size, size);
        for h in &ys {
            rhs += right_regular(h) * c(1.0 / ys.len() as f64);
        }
        let dev_group = max_abs_diff(&lhs, &rhs);
        let fourier = &qft * &lhs * qft.adjoint();
        let blocks: Vec<ComplexMatrix> =
            table.irreps().iter().map(|ir| kron(&identity(ir.dim()), &young_projector(ir, &mu))).collect();
        let dev_fourier = max_abs_diff(&fourier, &direct_sum(&blocks));
        out.push(CheckReport::new("qft_twirl", format!("μ={mu}"), dev_group.max(dev_fourier), tol));
    }
    out
}

/// One coset representative per left coset `tK` inside `H`.
fn left_transversal(h: &[Permutation], k: &[Permutation]) -> Vec<Permutation> {
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for t in h {
        let coset: std::collections::BTreeSet<Permutation> = k.iter().map(|x| t.compose(x)).collect();
        let key = coset.iter().next().cloned().expect("nonempty");
        if seen.insert(key) {
            reps.push(t.clone());
        }
    }
    reps
}

/// `(Σ_{t ∈ H₁/K} t)(Σ_{h ∈ H₂} h) = |H₁||H₂|/|K| Π_{H₁}Π_{H₂}` with Young subgroups
/// `H₁ = Y_w`, `H₂ = Y_{w^{(k)}}` and `K` their intersection.
pub fn check_h1_h2_k(n: usize, tol: f64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for w in enumerate_weights(n, n.min(3)) {
        let w = w.entries().to_vec();
        for k in 2..=w.len() {
            let Some(wk) = shifted_weight(&w, k) else { continue };
            let h1 = young_of_weight(&w);
            let h2 = young_of_weight(&wk);
            let h2set: std::collections::HashSet<&Permutation> = h2.iter().collect();
            let kk: Vec<Permutation> = h1.iter().filter(|g| h2set.contains(g)).cloned().collect();
            let reps = left_transversal(&h1, &kk);
            let lhs = GroupAlgebraElement::sum_of(&reps).mul(&GroupAlgebraElement::sum_of(&h2));
            let scale = (h1.len() * h2.len()) as f64 / kk.len() as f64;
            let rhs = GroupAlgebraElement::average(&h1).mul(&GroupAlgebraElement::average(&h2)).scale(c(scale));
            out.push(CheckReport::new("h1_h2_k", format!("w={w:?} k={k}"), group_algebra_dev(&lhs, &rhs), tol));
        }
    }
    out
}

/// Sum of transpositions swapping position `pivot` with each entry of block `k−1`.
fn block_transpositions(n: usize, w: &[usize], k: usize, pivot: usize) -> Vec<Permutation> {
    let end: usize = w[..k - 1].iter().sum();
    (1..=w[k - 2])
        .map(|j| {
            let a = end - j + 1;
            if a == pivot {
                Permutation::identity(n)
            } else {
                Permutation::transposition(n, a.min(pivot), a.max(pivot))
            }
        })
        .collect()
}

fn lr_trick_deviation(w: &[usize], k: usize, pivot_block: usize) -> f64 {
    let n: usize = w.iter().sum();
    let wk = shifted_weight(w, k).expect("movable weight");
    let pivot: usize = w[..pivot_block].iter().sum();
    let ts = block_transpositions(n, w, k, pivot);
    let yk = young_of_weight(&wk);
    let coset_k = GroupAlgebraElement::sum_of(&yk).scale(c(1.0 / (yk.len() as f64).sqrt()));
    let lhs = GroupAlgebraElement::sum_of(&ts).mul(&coset_k);
    let yw = young_of_weight(w);
    let coset_w = GroupAlgebraElement::sum_of(&yw).scale(c(1.0 / (yw.len() as f64).sqrt()));
    // R(Π)|v⟩ is right multiplication by Π⁻¹ = Π
    let factor = ((w[k - 2] * (w[k - 1] + 1)) as f64).sqrt();
    let rhs = coset_w.mul(&GroupAlgebraElement::average(&yk)).scale(c(factor));
    lhs.max_abs_diff(&rhs)
}

/// `Σ_j L((w̃_{k−1}−j+1, w̃_{k−1}))|Y_{w^{(k)}}⟩ = √(w_{k−1}(w_k+1)) R(Π_{w^{(k)}})|Y_w⟩`.
pub fn check_l_r_trick(n: usize, tol: f64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for w in enumerate_weights(n, n.min(3)) {
        let w = w.entries().to_vec();
        for k in 2..=w.len() {
            if shifted_weight(&w, k).is_none() {
                continue;
            }
            out.push(CheckReport::new("L_R_trick", format!("w={w:?} k={k}"), lr_trick_deviation(&w, k, k - 1), tol));
        }
    }
    out
}

/// The same identity with the pivot at `w̃_k`; fails whenever `w_k > 0`.
pub fn l_r_trick_literal_pivot(w: &[usize], k: usize) -> f64 {
    lr_trick_deviation(w, k, k)
}

/// `Π_{λ,μ} = V V†`, `Π² = Π` and `tr Π = K_{λμ}`.
pub fn check_pi_proj(n: usize, tol: f64) -> Vec<CheckReport> {
    check_pi_proj_with(n, tol, |_| {})
}

/// [`check_pi_proj`] with a hook that may alter each `V` before checking.
pub fn check_pi_proj_with(n: usize, tol: f64, tamper: impl Fn(&mut VBlock)) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for lambda in enumerate_partitions(n, n) {
        let ir = Irrep::new(&lambda);
        for mu in enumerate_compositions(n) {
            let mut vb = v_block_for(&ir, &mu).expect("valid pair");
            tamper(&mut vb);
            let v = vb.matrix();
            let proj = young_projector(&ir, &mu);
            let dev_v = max_abs_diff(&(&v * v.adjoint()), &proj);
            let dev_idem = max_abs_diff(&(&proj * &proj), &proj);
            let trace = proj.trace().re;
            let dev_rank = (trace - kostka(&lambda, mu.parts()) as f64).abs();
            out.push(CheckReport::new(
                "Pi_proj",
                format!("λ={lambda} μ={mu}"),
                dev_v.max(dev_idem).max(dev_rank),
                tol,
            ));
        }
    }
    out
}

/// Isometry `V_{λ,w}` indexed by full `d`-row patterns of weight `w`.
fn v_for_weight(ir: &Irrep, w: &[usize], d: usize) -> SchurResult<(Vec<GtPattern>, DMatrix<f64>)> {
    let (mu, p) = Weight::new(w.to_vec()).split();
    let vb = v_block_for(ir, &mu)?;
    let pats = vb
        .columns
        .iter()
        .map(|m| GtPattern::decompress(m, &p, d))
        .collect::<SchurResult<Vec<_>>>()?;
    Ok((pats, vb.values))
}

/// `√(w_{k−1}(w_k+1)) ⟨M'|V†_{λ,w^{(k)}} V_{λ,w}|M⟩` against the lowering coefficient,
/// including all pairs where the coefficient vanishes.
pub fn check_overlap(n: usize, d: usize, tol: f64) -> SchurResult<Vec<CheckReport>> {
    let mut out = Vec::new();
    for lambda in enumerate_partitions(n, d) {
        let ir = Irrep::new(&lambda);
        let mut dev: f64 = 0.0;
        let mut zero_cases = 0usize;
        for w in enumerate_weights(n, d) {
            let w = w.entries().to_vec();
            let (pats, v) = v_for_weight(&ir, &w, d)?;
            for k in 2..=d {
                let Some(wk) = shifted_weight(&w, k) else { continue };
                let (pats_k, vk) = v_for_weight(&ir, &wk, d)?;
                let factor = ((w[k - 2] * (w[k - 1] + 1)) as f64).sqrt();
                let overlap = vk.transpose() * &v;
                for (j, m) in pats.iter().enumerate() {
                    let expected: HashMap<GtPattern, f64> = lower_terms(m, k).into_iter().collect();
                    for (i, mp) in pats_k.iter().enumerate() {
                        let want = expected.get(mp).copied().unwrap_or(0.0);
                        if want == 0.0 {
                            zero_cases += 1;
                        }
                        dev = dev.max((factor * overlap[(i, j)] - want).abs());
                    }
                }
            }
        }
        out.push(CheckReport::new(
            "overlap",
            format!("λ={lambda} d={d} zero-cases={zero_cases}"),
            dev,
            tol,
        ));
    }
    Ok(out)
}

/// Every identity above at one `n`.
pub fn lemma_suite(n: usize, tol: f64) -> SchurResult<Vec<CheckReport>> {
    let mut out = Vec::new();
    out.push(CheckReport::merge("GOR", format!("n={n}"), &check_gor(n, tol), tol));
    out.push(CheckReport::merge("qft_twirl", format!("n={n}"), &check_qft_twirl(n, tol), tol));
    let h = check_h1_h2_k(n, tol);
    if !h.is_empty() {
        out.push(CheckReport::merge("h1_h2_k", format!("n={n}, {} instances", h.len()), &h, tol));
    }
    let lr = check_l_r_trick(n, tol);
    if !lr.is_empty() {
        out.push(CheckReport::merge("L_R_trick", format!("n={n}, {} instances", lr.len()), &lr, tol));
    }
    out.push(CheckReport::merge("Pi_proj", format!("n={n}"), &check_pi_proj(n, tol), tol));
    let d = n.clamp(2, 3);
    out.push(CheckReport::merge("overlap", format!("n={n} d={d}"), &check_overlap(n, d, tol)?, tol));
    Ok(out)
}

fn real(m: &ComplexMatrix) -> DMatrix<f64> {
    m.map(|z| z.re)
}

/// Independent CG block: each channel's highest-weight vector is the kernel of
/// the raising operators on its weight space, and the rest of the channel is
/// filled weight by weight from the lowering relations by least squares.
pub fn cg_block_oracle(lambda: &Partition, d: usize) -> SchurResult<CgBlock> {
    let input = enumerate_gt(lambda, d)?;
    let size = input.len() * d;
    let gen = |k: usize, l: usize| -> SchurResult<DMatrix<f64>> {
        let local = real(&gl_generator(lambda, d, k, l)?.matrix);
        let mut unit = DMatrix::<f64>::zeros(d, d);
        unit[(k - 1, l - 1)] = 1.0;
        Ok(local.kronecker(&DMatrix::identity(d, d)) + DMatrix::identity(input.len(), input.len()).kronecker(&unit))
    };
    let weight_of_col = |col: usize| -> Vec<usize> {
        let mut w = input[col / d].weight().entries().to_vec();
        w[col % d] += 1;
        w
    };
    let raise: Vec<DMatrix<f64>> = (2..=d).map(|k| gen(k - 1, k)).collect::<SchurResult<_>>()?;
    let lower: Vec<DMatrix<f64>> = (2..=d).map(|k| gen(k, k - 1)).collect::<SchurResult<_>>()?;

    let output = cg_output_basis(lambda, d)?;
    let mut rows: HashMap<(usize, GtPattern), nalgebra::DVector<f64>> = HashMap::new();
    for a in addable_rows(lambda, d) {
        let nu = lambda.add_box(a).expect("addable");
        let top = nu.padded(d);
        let cols: Vec<usize> = (0..size).filter(|&col| weight_of_col(col) == top).collect();
        // stacked raising operators restricted to the highest weight space
        let mut stack = DMatrix::<f64>::zeros(raise.len() * size, cols.len());
        for (r, op) in raise.iter().enumerate() {
            for (j, &col) in cols.iter().enumerate() {
                for i in 0..size {
                    stack[(r * size + i, j)] = op[(i, col)];
                }
            }
        }
        let hw = kernel_vector(&stack)?;
        let mut v = nalgebra::DVector::<f64>::zeros(size);
        for (j, &col) in cols.iter().enumerate() {
            v[col] = hw[j];
        }
        let first = v.iter().copied().find(|x| x.abs() > 1e-12).unwrap_or(1.0);
        if first < 0.0 {
            v = -v;
        }
        let pats = enumerate_gt(&nu, d)?;
        let hw_pattern = pats.iter().find(|m| m.weight().entries() == &top[..]).expect("highest weight").clone();
        rows.insert((a, hw_pattern.clone()), v);

        // weights of ν in decreasing order; each is reached from weights one step higher
        let mut by_weight: Vec<(Vec<usize>, Vec<GtPattern>)> = Vec::new();
        for m in pats {
            let w = m.weight().entries().to_vec();
            match by_weight.iter_mut().find(|(x, _)| *x == w) {
                Some((_, list)) => list.push(m),
                None => by_weight.push((w, vec![m])),
            }
        }
        by_weight.sort_by(|x, y| y.0.cmp(&x.0));
        for (w, targets) in by_weight {
            if w == top {
                continue;
            }
            let tpos: HashMap<&GtPattern, usize> = targets.iter().enumerate().map(|(i, m)| (m, i)).collect();
            let mut coeffs: Vec<Vec<f64>> = Vec::new();
            let mut rhs: Vec<nalgebra::DVector<f64>> = Vec::new();
            for k in 2..=d {
                let mut up = w.clone();
                if up[k - 1] == 0 {
                    continue;
                }
                up[k - 1] -= 1;
                up[k - 2] += 1;
                let sources: Vec<(GtPattern, nalgebra::DVector<f64>)> = rows
                    .iter()
                    .filter(|((ch, m), _)| *ch == a && m.weight().entries() == &up[..])
                    .map(|((_, m), v)| (m.clone(), v.clone()))
                    .collect();
                for (m, vm) in sources {
                    let mut row = vec![0.0; targets.len()];
                    for (mp, g) in lower_terms(&m, k) {
                        row[tpos[&mp]] = g;
                    }
                    coeffs.push(row);
                    rhs.push(&lower[k - 2] * vm);
                }
            }
            let g = DMatrix::from_fn(coeffs.len(), targets.len(), |i, j| coeffs[i][j]);
            let b = DMatrix::from_fn(coeffs.len(), size, |i, j| rhs[i][j]);
            let svd = g.clone().svd(true, true);
            if svd.singular_values.iter().any(|&s| s < 1e-10) {
                return Err(SchurError::Oracle(format!("lowering system for weight {w:?} is degenerate")));
            }
            let x = svd.solve(&b, 1e-12).map_err(|e| SchurError::Oracle(e.to_string()))?;
            for (i, m) in targets.iter().enumerate() {
                rows.insert((a, m.clone()), x.row(i).transpose());
            }
        }
    }
    let mut mat = zeros(size, size);
    for (r, key) in output.iter().enumerate() {
        let v = rows.get(key).ok_or_else(|| SchurError::Oracle("missing output state".into()))?;
        for col in 0..size {
            mat[(r, col)] = c(v[col]);
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

/// Unit vector spanning the one-dimensional kernel of `a`.
fn kernel_vector(a: &DMatrix<f64>) -> SchurResult<nalgebra::DVector<f64>> {
    let cols = a.ncols();
    if cols == 0 {
        return Err(SchurError::Oracle("empty highest weight space".into()));
    }
    let gram = a.transpose() * a;
    let eig = gram.symmetric_eigen();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    if eig.eigenvalues[order[0]].abs() > 1e-10 {
        return Err(SchurError::Oracle("no highest weight vector".into()));
    }
    if cols > 1 && eig.eigenvalues[order[1]].abs() < 1e-10 {
        return Err(SchurError::Oracle("highest weight space is not one-dimensional".into()));
    }
    Ok(eig.eigenvectors.column(order[0]).into_owned())
}

/// Largest deviation between two CG blocks after fixing one sign per channel.
pub fn cg_blocks_agree(a: &CgBlock, b: &CgBlock) -> f64 {
    let mut dev: f64 = 0.0;
    for &ch in &a.channels {
        let rows: Vec<usize> = (0..a.output_patterns.len()).filter(|&r| a.output_patterns[r].0 == ch).collect();
        let mut best = f64::INFINITY;
        for s in [1.0, -1.0] {
            let mut d: f64 = 0.0;
            for &r in &rows {
                for col in 0..a.matrix.ncols() {
                    d = d.max((a.matrix[(r, col)] - b.matrix[(r, col)] * s).norm());
                }
            }
            best = best.min(d);
        }
        dev = dev.max(best);
    }
    dev
}
