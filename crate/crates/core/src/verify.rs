//! The bundled invariant suite: constraint annihilation, Casimir labels,
//! dimension, Lie-algebra closure, invariance of the span, weak
//! commutators, row exchange, hermiticity, quadratic Casimir, coherent
//! covariance and the structure-function expansion, evaluated for one
//! (N, irrep) pair with machine-readable reports. Exact checks carry zero
//! tolerance; floating checks carry the documented ones.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coherent::{
    covariance_check, expansion_residual, membership_residual, projection_defect, CoherentError,
};
use crate::fock::{FockError, State, StateF};
use crate::isb::{irrep_basis, isb_create, weyl_dimension, ExactEchelon, IrrepLabel, IsbError};
use crate::liealg::{
    apply_constraint, check_casimir_commutation, check_hermiticity, check_lie_algebra,
    jacobi_residual, matrix_rep, orthonormalize, GeneratorBasis, LieError, MatrixRep,
};
use crate::manifold::{haar_sample, sample_seed};
use crate::report::CheckReport;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Isb(#[from] IsbError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Coherent(#[from] CoherentError),
}

/// Full verification record for one irrep.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifySummary {
    #[serde(rename = "N")]
    pub n: u32,
    pub irrep: Vec<u32>,
    pub dim: usize,
    pub weyl: u64,
    pub quadratic_casimir: f64,
    pub expected_casimir: f64,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
}

/// Theoretical quadratic Casimir Σ_a (Q^a)² of the irrep, in the
/// Tr(Λ^aΛ^b) = 2δ normalization:
/// ½ [Σ_i λ_i(λ_i + N + 1 − 2i) − (Σλ)²/N] with λ the padded rows.
pub fn expected_casimir(label: &IrrepLabel) -> f64 {
    let n = label.group_n() as i64;
    let mut lambda: Vec<i64> = label.rows().iter().map(|&x| i64::from(x)).collect();
    lambda.push(0);
    let total: i64 = lambda.iter().sum();
    let mut acc = BigRational::new(BigInt::from(0), BigInt::from(1));
    for (idx, &l) in lambda.iter().enumerate() {
        let i = idx as i64 + 1;
        acc += BigRational::from_integer(BigInt::from(l * (l + n + 1 - 2 * i)));
    }
    acc -= BigRational::new(BigInt::from(total * total), BigInt::from(n));
    acc /= BigRational::from_integer(BigInt::from(2));
    acc.to_f64().unwrap()
}

fn check_dimension(label: &IrrepLabel, basis: &[State]) -> CheckReport {
    let weyl = weyl_dimension(label);
    let gap = (basis.len() as i64 - weyl as i64).unsigned_abs() as f64;
    CheckReport::new("dimension", gap, 0.0, basis.len())
}

fn check_constraint_annihilation(label: &IrrepLabel, basis: &[State]) -> CheckReport {
    let n = label.group_n() as u8;
    let mut failures = 0.0;
    let mut probes = 0;
    for v in basis {
        for i in 1..n {
            for j in (i + 1)..n {
                probes += 1;
                let lv = apply_constraint(i, j, v).expect("pair in range");
                if !lv.is_zero() {
                    failures += 1.0;
                }
            }
        }
    }
    CheckReport::new("constraint_annihilation", failures, 0.0, probes)
}

fn check_casimir_labels(label: &IrrepLabel, basis: &[State]) -> CheckReport {
    let mut failures = 0.0;
    for v in basis {
        match v.plet_profile() {
            Ok(profile) => {
                let want: Vec<u64> = label.rows().iter().map(|&r| u64::from(r)).collect();
                if profile != want {
                    failures += 1.0;
                }
            }
            Err(_) => failures += 1.0,
        }
    }
    CheckReport::new("casimir_labels", failures, 0.0, basis.len())
}

fn check_trace_orthonormality(gens: &GeneratorBasis) -> CheckReport {
    let g = gens.count();
    let mut worst = 0.0_f64;
    for a in 1..=g {
        for b in 1..=g {
            let t = gens
                .lambda(a)
                .expect("in range")
                .mat
                .mul(&gens.lambda(b).expect("in range").mat)
                .trace();
            let want = if a == b { 2.0 } else { 0.0 };
            worst = worst.max((t - crate::linalg::C64::new(want, 0.0)).norm());
        }
    }
    CheckReport::new("trace_orthonormality", worst, 1e-12, g * g)
}

/// Span closure: exact membership for rational generators, floating
/// projection residual for the rest.
fn check_invariance(
    gens: &GeneratorBasis,
    basis: &[State],
    onb: &[StateF],
) -> CheckReport {
    let mut echelon = ExactEchelon::new(gens.group_n());
    for v in basis {
        echelon.insert(v);
    }
    let mut exact_failures = 0.0;
    let mut float_worst = 0.0_f64;
    let mut probes = 0;
    for v in basis {
        for a in 1..=gens.count() {
            probes += 1;
            let rational = gens.lambda(a).expect("in range").rational;
            if rational {
                let qv = gens.apply_generator(a, v).expect("rational path");
                if !qv.is_zero() && !echelon.contains(&qv) {
                    exact_failures += 1.0;
                }
            } else {
                let vf = v.to_float();
                let qv = gens.apply_generator_f(a, &vf).expect("in range");
                if qv.is_zero() {
                    continue;
                }
                // Normalize by the probe, not the image: a mathematically
                // zero image survives in floats as ~1e-16 noise and must not
                // be amplified by its own tiny norm.
                float_worst = float_worst.max(projection_defect(onb, &qv) / vf.norm_f64());
            }
        }
    }
    let residual = if exact_failures > 0.0 {
        exact_failures
    } else {
        float_worst
    };
    CheckReport::new("invariance", residual, 1e-10, probes)
}

fn check_weak_commutators(label: &IrrepLabel, basis: &[State]) -> CheckReport {
    let n = label.group_n() as u8;
    let mut failures = 0.0;
    let mut probes = 0;
    for v in basis {
        for k in 1..n {
            for alpha in 1..=n {
                let av = match isb_create(k, alpha, v) {
                    Ok(w) => w,
                    Err(_) => {
                        failures += 1.0;
                        continue;
                    }
                };
                for i in 1..n {
                    for j in (i + 1)..n {
                        probes += 1;
                        // L̂_ij v = 0 on the basis, so the commutator
                        // [L̂_ij, A†_α[k]] v reduces to L̂_ij (A†_α[k] v).
                        let comm = apply_constraint(i, j, &av).expect("pair in range");
                        if !comm.is_zero() {
                            failures += 1.0;
                        }
                    }
                }
            }
        }
    }
    CheckReport::new("weak_commutators", failures, 0.0, probes)
}

fn check_row_exchange(label: &IrrepLabel, basis: &[State]) -> CheckReport {
    let n = label.group_n() as u8;
    let mut failures = 0.0;
    let mut probes = 0;
    for v in basis {
        for k in 1..n {
            for alpha in 1..=n {
                for beta in (alpha + 1)..=n {
                    probes += 1;
                    let ab = isb_create(k, alpha, &isb_create(k, beta, v).expect("valid"))
                        .expect("valid");
                    let ba = isb_create(k, beta, &isb_create(k, alpha, v).expect("valid"))
                        .expect("valid");
                    if ab.sub(&ba).expect("same rank") != State::zero(label.group_n()) {
                        failures += 1.0;
                    }
                }
            }
        }
    }
    CheckReport::new("row_exchange", failures, 0.0, probes)
}

fn check_quadratic_casimir(label: &IrrepLabel, rep: &MatrixRep) -> (CheckReport, f64) {
    let (fitted, uniformity) = rep.quadratic_casimir();
    let expected = expected_casimir(label);
    let residual = uniformity.max((fitted - expected).abs());
    (
        CheckReport::new("quadratic_casimir", residual, 1e-8, rep.dim()),
        fitted,
    )
}

fn check_covariance(
    label: &IrrepLabel,
    gens: &GeneratorBasis,
    rep: &MatrixRep,
    pairs: usize,
    seed: u64,
) -> Result<CheckReport, VerifyError> {
    let g = gens.count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for trial in 0..pairs {
        let p = haar_sample(label.group_n(), sample_seed(seed, trial as u64));
        let theta: Vec<f64> = (0..g).map(|_| rng.random_range(-1.0..1.0)).collect();
        let scale = 1.0 / (theta.iter().map(|t| t * t).sum::<f64>().sqrt()).max(1.0);
        let theta: Vec<f64> = theta.iter().map(|t| t * scale).collect();
        let res = covariance_check(label, &p, &theta, rep, gens)?;
        worst = worst.max(res);
    }
    Ok(CheckReport::new("covariance", worst, 1e-8, pairs))
}

fn check_expansion(label: &IrrepLabel, seeds: &[u64]) -> Result<CheckReport, VerifyError> {
    let mut worst = 0.0_f64;
    for &s in seeds {
        let p = haar_sample(label.group_n(), s);
        worst = worst.max(expansion_residual(label, &p)?);
    }
    Ok(CheckReport::new("expansion", worst, 1e-10, seeds.len()))
}

fn check_membership(
    label: &IrrepLabel,
    onb: &[StateF],
    seeds: &[u64],
) -> Result<CheckReport, VerifyError> {
    let mut worst = 0.0_f64;
    for &s in seeds {
        let p = haar_sample(label.group_n(), s);
        let cs = crate::coherent::coherent_state(label, &p)?;
        worst = worst.max(membership_residual(onb, &cs.vector));
    }
    Ok(CheckReport::new("membership", worst, 1e-10, seeds.len()))
}

/// Run every check for one irrep. Lie-algebra probes are capped at the
/// first six basis vectors; everything else sweeps the whole basis.
pub fn run_verification(label: &IrrepLabel) -> Result<VerifySummary, VerifyError> {
    let n = label.group_n();
    let gens = GeneratorBasis::new(n)?;
    let basis = irrep_basis(label)?;
    let floats: Vec<StateF> = basis.iter().map(State::to_float).collect();
    let onb = orthonormalize(&floats)?;
    let rep = matrix_rep(&basis, &gens)?;

    let probe_cap = basis.len().min(6);
    let probes = &basis[..probe_cap];

    let mut checks = vec![
        check_dimension(label, &basis),
        check_constraint_annihilation(label, &basis),
        check_casimir_labels(label, &basis),
        check_trace_orthonormality(&gens),
        check_lie_algebra(&gens, probes),
        check_casimir_commutation(&gens, probes),
        CheckReport::new("jacobi", jacobi_residual(&gens), 1e-12, gens.count()),
        check_hermiticity(&gens, probes),
        check_invariance(&gens, &basis, &onb),
        check_weak_commutators(label, &basis),
        check_row_exchange(label, probes),
    ];
    let (casimir_check, fitted_casimir) = check_quadratic_casimir(label, &rep);
    checks.push(casimir_check);
    checks.push(check_covariance(label, &gens, &rep, 5, 0xC0FFEE)?);
    checks.push(check_expansion(label, &[17, 18])?);
    checks.push(check_membership(label, &onb, &[19, 20])?);

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifySummary {
        n,
        irrep: label.rows().to_vec(),
        dim: basis.len(),
        weyl: weyl_dimension(label),
        quadratic_casimir: fitted_casimir,
        expected_casimir: expected_casimir(label),
        checks,
        pass,
    })
}
