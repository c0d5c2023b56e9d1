//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use schur_core::bch::{cascade, highdim_column, schur_unitary_bch, schur_unitary_bch_highdim};
use schur_core::combinat::{
    enumerate_gt, enumerate_partitions, enumerate_syt, factorial, Composition, GtPattern, Partition, StandardTableau,
};
use schur_core::krovi::{preprocess, schur_unitary_krovi, v_block, v_entry};
use schur_core::prep_circuit::{compress_string, decode_perm, encode_perm, expected_preparation, prepare, state_distance};
use schur_core::recoupling::{cg_transform, rw_entry};
use schur_core::schur_basis::SchurTransform;
use schur_core::symrep::{all_permutations, string_of_index, Permutation};
use schur_core::verify::{
    cg_block_oracle, cg_blocks_agree, check_pi_proj_with, check_schur_equivariance, compare_transforms,
    l_r_trick_literal_pivot, lemma_suite, perturbed, Side, TOL_CHAINED, TOL_EXACT,
};
use schur_core::SchurResult;

const CAP: usize = 4096;
const EQUIVARIANCE_SET: [(usize, usize); 6] = [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2)];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn pipelines(n: usize, d: usize) -> SchurResult<[SchurTransform; 3]> {
    Ok([schur_unitary_krovi(n, d, CAP)?, schur_unitary_bch(n, d, CAP)?, schur_unitary_bch_highdim(n, d, CAP)?])
}

/// All `(n, d)` with `d ≥ 2` and `dⁿ ≤ 4096`, plus single sites up to `d = 64`.
fn unitarity_grid() -> Vec<(usize, usize)> {
    let mut grid = Vec::new();
    for d in 2..=64usize {
        grid.push((1, d));
        let mut n = 2;
        while d.checked_pow(n as u32).is_some_and(|s| s <= CAP) {
            grid.push((n, d));
            n += 1;
        }
    }
    grid
}

fn criterion_1() -> SchurResult<Outcome> {
    let start = Instant::now();
    let grid = unitarity_grid();
    let mut worst: f64 = 0.0;
    let mut worst_at = (0, 0);
    for &(n, d) in &grid {
        for u in pipelines(n, d)? {
            let dev = u.unitarity_deviation();
            if dev > worst {
                worst = dev;
                worst_at = (n, d);
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(outcome(
        worst <= TOL_EXACT,
        format!(
            "{} (n,d) pairs x 3 pipelines, max deviation {worst:.2e} at {worst_at:?}, {secs:.1}s",
            grid.len()
        ),
    ))
}

fn equivariance(side: Side, tol: f64) -> SchurResult<Outcome> {
    let mut worst: f64 = 0.0;
    for (n, d) in EQUIVARIANCE_SET {
        for u in pipelines(n, d)? {
            worst = worst.max(check_schur_equivariance(&u.to_dense(), n, d, side, tol)?.deviation);
        }
    }
    let control = check_schur_equivariance(&perturbed(&schur_unitary_krovi(3, 2, CAP)?).to_dense(), 3, 2, side, tol)?;
    Ok(outcome(
        worst <= tol && !control.passed,
        format!("max deviation {worst:.2e}, permuted-U control deviation {:.2e}", control.deviation),
    ))
}

fn criterion_4() -> SchurResult<Outcome> {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 1..=5 {
        for r in lemma_suite(n, TOL_CHAINED)? {
            worst = worst.max(r.deviation);
            count += 1;
        }
    }
    let tampered = check_pi_proj_with(4, TOL_CHAINED, |vb| {
        if vb.values.ncols() > 0 {
            vb.values[(0, 0)] += 1e-3;
        }
    });
    let control_fails = tampered.iter().any(|r| !r.passed);
    let pivot = l_r_trick_literal_pivot(&[2, 1], 2);
    Ok(outcome(
        worst <= TOL_CHAINED && control_fails && pivot > TOL_CHAINED,
        format!("{count} lemma reports for n ≤ 5, max deviation {worst:.2e}; perturbed-V control fails: {control_fails}"),
    ))
}

fn criterion_5() -> SchurResult<Outcome> {
    let mut worst: f64 = 0.0;
    let mut negative = 0;
    for (n, d) in EQUIVARIANCE_SET {
        let [k, b, h] = pipelines(n, d)?;
        for cmp in [compare_transforms(&k, &b, TOL_EXACT)?, compare_transforms(&h, &b, TOL_EXACT)?] {
            worst = worst.max(cmp.report.deviation);
            negative += cmp.signs.iter().filter(|(_, s)| *s < 0.0).count();
        }
    }
    let b = schur_unitary_bch(3, 2, CAP)?;
    let control = compare_transforms(&perturbed(&b), &b, TOL_EXACT)?;
    Ok(outcome(
        worst <= TOL_EXACT && !control.report.passed,
        format!("max off-scalar deviation {worst:.2e}, {negative} shape sectors with ε = −1"),
    ))
}

fn criterion_6() -> SchurResult<Outcome> {
    let mut failures = Vec::new();

    let m = GtPattern::from_rows(&[vec![0], vec![2, 0], vec![2, 0, 0], vec![2, 1, 0, 0], vec![3, 2, 0, 0, 0]])?;
    let (small, p) = m.compress();
    if small != GtPattern::from_rows(&[vec![2], vec![2, 1], vec![3, 2, 0]])? || p.values() != [2, 4, 5] {
        failures.push("GT compression");
    }
    if m.weight().entries() != [0, 2, 0, 1, 2] {
        failures.push("pattern weight");
    }

    let pre = preprocess(&[1, 2, 1, 5, 2])?;
    let t = Permutation::new(vec![1, 3, 2, 5, 4])?;
    if pre.alphabet.values() != [1, 2, 5] || pre.composition.parts() != [2, 2, 1] || pre.representative != t {
        failures.push("preprocessing example");
    }

    let tab = StandardTableau::from_word(vec![1, 1, 1, 2, 2])?;
    let mt = GtPattern::from_rows(&[vec![2], vec![2, 1], vec![3, 2, 0]])?;
    if v_entry(&Partition::new(vec![3, 2])?, &Composition::new(vec![2, 1, 2])?, &tab, &mt)? != 0.0 {
        failures.push("V entry example");
    }

    let c = compress_string(&[9, 2, 5, 9, 11, 2])?;
    if c.ranks != [3, 1, 2, 3, 4, 1] || c.padded_alphabet() != [Some(2), Some(5), Some(9), Some(11), None, None] {
        failures.push("string compression example");
    }

    let mut classical = 0;
    for n in 1..=5 {
        let ones = Composition::new(vec![1; n])?;
        for lambda in enumerate_partitions(n, n) {
            let vb = v_block(&lambda, &ones)?;
            for (s, tab) in enumerate_syt(&lambda).iter().enumerate() {
                for (j, col) in vb.columns.iter().enumerate() {
                    let same = (0..=n).all(|k| tab.prefix_shape(k) == col.row_partition(k));
                    if vb.values[(s, j)] != if same { 1.0 } else { 0.0 } {
                        failures.push("classical V");
                    }
                }
            }
            classical += 1;
        }
    }
    failures.dedup();
    Ok(outcome(
        failures.is_empty(),
        if failures.is_empty() {
            format!("5 worked examples and {classical} classical V blocks reproduced exactly")
        } else {
            format!("mismatch: {}", failures.join(", "))
        },
    ))
}

fn criterion_7() -> SchurResult<Outcome> {
    let mut ok = true;
    for n in 0..=6 {
        for d in 1..=5 {
            let total: u128 = enumerate_partitions(n, d)
                .iter()
                .map(|l| enumerate_syt(l).len() as u128 * enumerate_gt(l, d).map(|g| g.len() as u128).unwrap_or(0))
                .sum();
            ok &= total == (d as u128).pow(n as u32);
        }
    }
    for n in 0..=7 {
        let total: u128 = enumerate_partitions(n, n.max(1)).iter().map(|l| (enumerate_syt(l).len() as u128).pow(2)).sum();
        ok &= total == factorial(n);
    }
    Ok(outcome(ok, "Σ d_λ m_λ = dⁿ for n ≤ 6, d ≤ 5 and Σ d_λ² = n! for n ≤ 7"))
}

fn criterion_8() -> SchurResult<Outcome> {
    let mut worst: f64 = 0.0;
    let mut blocks = 0;
    for size in 0..=4 {
        for d in 1..=4 {
            for lambda in enumerate_partitions(size, d) {
                worst = worst.max(cg_blocks_agree(&cg_transform(&lambda, d, CAP)?, &cg_block_oracle(&lambda, d)?));
                blocks += 1;
            }
        }
    }
    // reduced Wigner entries are unchanged by padding both rows with zeros
    let mut pad: f64 = 0.0;
    for d in 1..=4 {
        for n in 0..=5 {
            for lam in enumerate_partitions(n, d) {
                let upper = lam.padded(d);
                for m in enumerate_gt(&lam, d)? {
                    let lower: Vec<usize> = if d >= 2 { m.row(d - 1).to_vec() } else { vec![] };
                    let (mut up2, mut low2) = (upper.clone(), lower.clone());
                    up2.push(0);
                    low2.push(0);
                    for i in 1..=d {
                        for j in 0..d {
                            pad = pad.max((rw_entry(&upper, &lower, i, j) - rw_entry(&up2, &low2, i, j)).abs());
                        }
                    }
                }
            }
        }
    }
    // the same cascade amplitudes in n rows and in d rows
    for (n, d) in [(2usize, 5usize), (3, 5), (3, 7), (4, 6)] {
        for idx in 0..d.pow(n as u32) {
            let x = string_of_index(idx, n, d);
            let plain = cascade(&x, d)?;
            let high = highdim_column(&x, d)?;
            if plain.terms.len() != high.terms.len() {
                pad = f64::INFINITY;
            }
            for (k, v) in &plain.terms {
                pad = pad.max((v - high.terms.get(k).copied().unwrap_or(f64::INFINITY)).abs());
            }
        }
    }
    Ok(outcome(
        worst <= TOL_CHAINED && pad <= TOL_EXACT,
        format!("{blocks} CG blocks, max deviation {worst:.2e}; padding deviation {pad:.2e}"),
    ))
}

fn criterion_9() -> SchurResult<Outcome> {
    let mut strings = 0;
    let mut worst: f64 = 0.0;
    for d in 2..=256usize {
        let mut n = 1;
        while d.checked_pow(n as u32).is_some_and(|s| s <= 256) {
            for idx in 0..d.pow(n as u32) {
                let x = string_of_index(idx, n, d);
                let got = prepare(&x)?;
                if got.terms().any(|(r, _)| r.pos != 0 || r.unique != 0 || !r.pending.is_empty()) {
                    return Ok(outcome(false, format!("ancilla left set for {x:?}")));
                }
                worst = worst.max(state_distance(&got, &expected_preparation(&x)?));
                strings += 1;
            }
            n += 1;
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut roundtrip = true;
    for sigma in all_permutations(5) {
        let digits = encode_perm(&sigma);
        roundtrip &= decode_perm(5, &digits)? == sigma;
        seen.insert(digits);
    }
    let bijective = roundtrip && seen.len() == 120;
    Ok(outcome(
        worst <= 1e-12 && bijective,
        format!("{strings} strings prepared, max amplitude deviation {worst:.2e}; S_5 encoding bijective: {bijective}"),
    ))
}

type Criterion = (&'static str, fn() -> SchurResult<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("unitarity", criterion_1),
        ("S_n equivariance", || equivariance(Side::Sym, TOL_EXACT)),
        ("gl_d equivariance", || equivariance(Side::Gl, TOL_CHAINED)),
        ("lemma suite", criterion_4),
        ("cross-pipeline agreement", criterion_5),
        ("worked values", criterion_6),
        ("counting identities", criterion_7),
        ("oracle agreement", criterion_8),
        ("circuit semantics", criterion_9),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        all &= o.passed;
        println!(
            "criterion {}: {} {name}: {} [{:.1}s]",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
