//! Verification suites behind `schur verify`.

use schur_core::bch::{schur_unitary_bch, schur_unitary_bch_highdim};
use schur_core::krovi::schur_unitary_krovi;
use schur_core::schur_basis::SchurTransform;
use schur_core::verify::{
    check_pi_proj_with, check_schur_equivariance, compare_transforms, lemma_suite, perturbed, CheckReport, Side,
};

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Unitarity,
    Equivariance,
    Lemmas,
    Compare,
}

pub struct SuiteConfig {
    pub n: usize,
    pub d: usize,
    pub tol: f64,
    pub cap: usize,
    /// Damage the Krovi transform (or the isometry for the lemma suite) first.
    pub perturb: bool,
}

fn pipelines(cfg: &SuiteConfig) -> CliResult<Vec<SchurTransform>> {
    let mut k = schur_unitary_krovi(cfg.n, cfg.d, cfg.cap)?;
    if cfg.perturb {
        k = perturbed(&k);
    }
    Ok(vec![k, schur_unitary_bch(cfg.n, cfg.d, cfg.cap)?, schur_unitary_bch_highdim(cfg.n, cfg.d, cfg.cap)?])
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> CliResult<Vec<CheckReport>> {
    let params = format!("n={} d={}", cfg.n, cfg.d);
    let mut out = Vec::new();
    let needs_transforms = matches!(suite, Suite::All | Suite::Unitarity | Suite::Equivariance | Suite::Compare);
    let us = if needs_transforms { pipelines(cfg)? } else { Vec::new() };

    if matches!(suite, Suite::All | Suite::Unitarity) {
        for u in &us {
            out.push(CheckReport::new(format!("unitarity {}", u.method), &params, u.unitarity_deviation(), cfg.tol));
        }
    }
    if matches!(suite, Suite::All | Suite::Equivariance) {
        for u in &us {
            let dense = u.to_dense();
            for side in [Side::Sym, Side::Gl] {
                let mut r = check_schur_equivariance(&dense, cfg.n, cfg.d, side, cfg.tol)?;
                r.name = format!("{} {}", r.name, u.method);
                out.push(r);
            }
        }
    }
    if matches!(suite, Suite::All | Suite::Compare) {
        for other in [&us[0], &us[2]] {
            let cmp = compare_transforms(other, &us[1], cfg.tol)?;
            let mut r = cmp.report;
            let flipped: Vec<String> =
                cmp.signs.iter().filter(|(_, s)| *s < 0.0).map(|(l, _)| l.to_string()).collect();
            if !flipped.is_empty() {
                r.params = format!("{}, ε = −1 on {}", r.params, flipped.join(" "));
            }
            out.push(r);
        }
    }
    if matches!(suite, Suite::All | Suite::Lemmas) {
        out.extend(lemma_suite(cfg.n, cfg.tol)?);
        if cfg.perturb {
            out.extend(check_pi_proj_with(cfg.n, cfg.tol, |vb| {
                if vb.values.nrows() > 0 && vb.values.ncols() > 0 {
                    vb.values[(0, 0)] += 1e-3;
                }
            }));
        }
    }
    Ok(out)
}
