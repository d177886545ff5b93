//! The `verify` suites.
//!
//! `small` runs in a few seconds. `full` adds the four-qutrit checks, the
//! five-qubit fixed space and a noiseless round trip with random states.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ucr_core::channel::{
    build_channel, gell_mann_generators, gell_mann_matrices, group_fixed_residual, noiseless_round_trip, Angles,
    GeneratorSet,
};
use ucr_core::combinatorics::Partition;
use ucr_core::spechtspace::{block_structure, decomposition_report};
use ucr_core::verify::{
    collective_generators, commutant_dimension, fixed_space_dimension, power_sum_identity, schur_weyl_crosscheck,
    OracleReport,
};
use ucr_core::{ComplexMatrix, Limits};

use crate::config::Settings;
use crate::{states, Failure, Suite};

fn sum_dim_squared(d: usize, n: usize, limits: &Limits) -> Result<u64, Failure> {
    Ok(block_structure(d, n, limits)?.iter().map(|b| b.dim * b.dim).sum())
}

/// Commutant of `{u_n(x)}` over the Gell-Mann set against `sum dim^2`.
pub fn collective_commutant(d: usize, n: usize, limits: &Limits) -> Result<OracleReport, Failure> {
    let us = collective_generators(&gell_mann_matrices(d), n, limits)?;
    Ok(OracleReport::count(
        format!("commutant of u_n(x) vs sum dim^2, d={d} n={n}"),
        sum_dim_squared(d, n, limits)?,
        commutant_dimension(&us, limits)? as u64,
    ))
}

/// Fixed space of the Gell-Mann channel with default angles against `sum dim^2`.
pub fn fixed_space(d: usize, n: usize, limits: &Limits) -> Result<OracleReport, Failure> {
    let ch = build_channel(&gell_mann_generators(d)?, n, limits)?;
    Ok(OracleReport::count(
        format!("dim Fix(E) vs sum dim^2, d={d} n={n}"),
        sum_dim_squared(d, n, limits)?,
        fixed_space_dimension(&ch, limits)? as u64,
    ))
}

pub fn permutations_fixed(set: &GeneratorSet, label: &str, n: usize, tol: f64, limits: &Limits) -> Result<OracleReport, Failure> {
    let ch = build_channel(set, n, limits)?;
    Ok(OracleReport::new(
        format!("E(pi(sigma)) = pi(sigma), {label}, d={} n={n}", set.d()),
        0.0,
        group_fixed_residual(&ch),
        tol,
    ))
}

pub fn dimension_check(d: usize, n: usize, limits: &Limits) -> Result<OracleReport, Failure> {
    let blocks = block_structure(d, n, limits)?;
    Ok(OracleReport::count(
        format!("sum dim*mult = d^n, d={d} n={n}"),
        (d as u64).pow(n as u32),
        blocks.iter().map(|b| b.dim * b.mult).sum(),
    ))
}

pub fn round_trip(
    d: usize,
    n: usize,
    lambda: &[usize],
    pairs: usize,
    seed: u64,
    tol: f64,
    limits: &Limits,
) -> Result<Vec<OracleReport>, Failure> {
    let lambda = Partition::new(lambda.to_vec())?;
    let report = decomposition_report(d, n, limits)?;
    let ch = build_channel(&gell_mann_generators(d)?, n, limits)?;
    let block = report
        .basis_for(&lambda)
        .ok_or_else(|| Failure::Usage(format!("{lambda} carries no block for d = {d}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs_list: Vec<_> = (0..pairs)
        .map(|_| (states::random_density(block.dim, &mut rng), states::random_density(block.mult, &mut rng)))
        .collect();
    let mut out = Vec::new();
    for k in [1, 10] {
        let mut worst: f64 = 1.0;
        for (logical, ancilla) in &pairs_list {
            worst = worst.min(noiseless_round_trip(&report, &lambda, &ch, logical, ancilla, k)?);
        }
        out.push(OracleReport::new(
            format!("noiseless round trip {lambda}, d={d} n={n}, {k} applications, min fidelity over {pairs} pairs"),
            1.0,
            worst,
            tol,
        ));
    }
    Ok(out)
}

pub fn run_suite(suite: Suite, seed: u64, settings: &Settings) -> Result<Vec<OracleReport>, Failure> {
    let limits = settings.limits();
    let tol = settings.tol;
    let mut reports = Vec::new();
    let small = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3)];
    for &(d, n) in &small {
        reports.push(dimension_check(d, n, &limits)?);
        reports.push(collective_commutant(d, n, &limits)?);
        if d.pow(n as u32) <= limits.superoperator_cap {
            reports.push(fixed_space(d, n, &limits)?);
        }
    }
    for (d, n) in [(2, 4), (3, 3)] {
        reports.extend(schur_weyl_crosscheck(d, n, &limits)?.reports());
    }
    reports.push(power_sum_identity(2, &ComplexMatrix::diag_real(&[1.0, 2.0]), &limits)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in [2, 3] {
        let g = states::ginibre(d, &mut rng);
        let x = (&g + &g.adjoint()).scale_real(0.5);
        reports.push(power_sum_identity(3, &x, &limits)?);
    }
    for (d, n) in [(2, 2), (2, 4), (3, 3)] {
        reports.push(permutations_fixed(&gell_mann_generators(d)?, "Gell-Mann", n, tol, &limits)?);
    }
    let lone = GeneratorSet::new(vec![ComplexMatrix::diag_real(&[1.0, -1.0])], Angles::Explicit(vec![0.3]))?;
    reports.push(permutations_fixed(&lone, "single generator Z", 4, tol, &limits)?);

    if suite == Suite::Full {
        for (d, n) in [(2, 5), (2, 6), (3, 4)] {
            reports.push(dimension_check(d, n, &limits)?);
        }
        reports.push(collective_commutant(2, 5, &limits)?);
        reports.push(fixed_space(2, 5, &limits)?);
        reports.extend(schur_weyl_crosscheck(2, 5, &limits)?.reports());
        reports.push(permutations_fixed(&gell_mann_generators(3)?, "Gell-Mann", 4, tol, &limits)?);
        let mut lone3 = gell_mann_matrices(3);
        lone3.truncate(1);
        let lone3 = GeneratorSet::new(lone3, Angles::Auto)?;
        reports.push(permutations_fixed(&lone3, "single generator", 4, tol, &limits)?);
        reports.extend(round_trip(3, 4, &[2, 1, 1], 20, seed, tol, &limits)?);
    }
    Ok(reports)
}
