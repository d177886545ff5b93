//! Universal collective rotation channels and noiseless encoding.
//!
//! For a set `S` of single-qudit Hermitian generators with angles `theta_x`, the
//! channel on `n` qudits is
//!
//! ```text
//! E(rho) = (1/|S|) sum_{x in S} exp(i theta_x u_n(x)) rho exp(-i theta_x u_n(x))
//! ```
//!
//! so every Kraus operator is a unitary scaled by `1/sqrt(|S|)`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::combinatorics::{transpositions, Partition, Permutation};
use crate::error::{Error, Result};
use crate::linalg::{
    fidelity, hermitian_eigenvalues, kron, partial_trace, rank, unitary_exp, ComplexMatrix, DensityMatrix, Keep, C64,
    ONE,
};
use crate::spechtspace::{permutation_matrix, DecompositionReport, OrthonormalBlock};
use crate::Limits;

/// Generators must be Hermitian to this absolute tolerance.
pub const GENERATOR_HERMITIAN_TOL: f64 = 1e-12;

/// Constant in the default angle rule `theta = c / (1 + diameter)`.
pub const DEFAULT_ANGLE_CONSTANT: f64 = 0.739_085_133_2;

/// Distance from a nonzero multiple of `2 pi` that counts as aliasing.
pub const ALIASING_TOL: f64 = 1e-6;

/// Largest support leakage tolerated by [`decode_noiseless`].
pub const LEAKAGE_TOL: f64 = 1e-8;

/// Rotation angles of a generator set.
#[derive(Debug, Clone, PartialEq)]
pub enum Angles {
    /// `theta_x = c / (1 + spectral diameter of u_n(x))`, fixed when the channel is built.
    Auto,
    /// One nonzero angle per generator, in radians.
    Explicit(Vec<f64>),
}

/// A finite set of Hermitian single-qudit generators with rotation angles.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    d: usize,
    generators: Vec<ComplexMatrix>,
    angles: Angles,
    maximal: bool,
}

impl GeneratorSet {
    pub fn new(generators: Vec<ComplexMatrix>, angles: Angles) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyInput("generator set"))?;
        let d = first.rows();
        if d == 0 {
            return Err(Error::EmptyInput("0x0 generator"));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.rows() != d || g.cols() != d {
                return Err(Error::DimensionMismatch(format!(
                    "generator {i} is {}x{}, expected {d}x{d}",
                    g.rows(),
                    g.cols()
                )));
            }
            let residual = g.hermitian_residual();
            if residual > GENERATOR_HERMITIAN_TOL {
                return Err(Error::NotHermitian { residual });
            }
        }
        if let Angles::Explicit(list) = &angles {
            if list.len() != generators.len() {
                return Err(Error::DimensionMismatch(format!(
                    "{} angles for {} generators",
                    list.len(),
                    generators.len()
                )));
            }
            if let Some(bad) = list.iter().find(|t| **t == 0.0 || !t.is_finite()) {
                return Err(Error::InvalidArgument(format!("rotation angle must be finite and nonzero, got {bad}")));
            }
        }
        let maximal = spans_traceless(&generators, d);
        Ok(Self {
            d,
            generators,
            angles,
            maximal,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn angles(&self) -> &Angles {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Whether the real span of the generators contains every traceless Hermitian matrix.
    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    pub fn with_angles(self, angles: Angles) -> Result<Self> {
        Self::new(self.generators, angles)
    }

    /// Angles used on `n` qudits.
    pub fn resolved_angles(&self, n: usize) -> Result<Vec<f64>> {
        match &self.angles {
            Angles::Explicit(list) => Ok(list.clone()),
            Angles::Auto => self
                .generators
                .iter()
                .map(|x| {
                    let values = hermitian_eigenvalues(x)?;
                    let diameter = n as f64 * (values[values.len() - 1] - values[0]);
                    Ok(DEFAULT_ANGLE_CONSTANT / (1.0 + diameter))
                })
                .collect(),
        }
    }
}

/// Real coordinates of a Hermitian matrix: diagonal, then real and imaginary
/// parts of the strict upper triangle.
fn hermitian_coordinates(h: &ComplexMatrix) -> Vec<C64> {
    let d = h.rows();
    let mut out = Vec::with_capacity(d * d);
    for i in 0..d {
        out.push(C64::new(h[(i, i)].re, 0.0));
    }
    for i in 0..d {
        for j in i + 1..d {
            out.push(C64::new(h[(i, j)].re, 0.0));
            out.push(C64::new(h[(i, j)].im, 0.0));
        }
    }
    out
}

fn spans_traceless(generators: &[ComplexMatrix], d: usize) -> bool {
    let target = d * d - 1;
    if generators.len() < target {
        return false;
    }
    let shift = |x: &ComplexMatrix| {
        let t = x.trace() / d as f64;
        x - &ComplexMatrix::identity(d).scale(t)
    };
    let rows: Vec<Vec<C64>> = generators.iter().map(|x| hermitian_coordinates(&shift(x))).collect();
    let data: Vec<C64> = rows.concat();
    let m = ComplexMatrix::from_vec(rows.len(), d * d, data);
    rank(&m, 1e-12) >= target
}

/// The generalized Gell-Mann matrices: symmetric pairs, antisymmetric pairs,
/// then the traceless diagonals. For `d = 2` these are the Pauli matrices.
pub fn gell_mann_matrices(d: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in j + 1..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = ONE;
            m[(k, j)] = ONE;
            out.push(m);
        }
    }
    for j in 0..d {
        for k in j + 1..d {
            let mut m = ComplexMatrix::zeros(d, d);
            m[(j, k)] = C64::new(0.0, -1.0);
            m[(k, j)] = C64::new(0.0, 1.0);
            out.push(m);
        }
    }
    for l in 1..d {
        let scale = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut entries = vec![0.0; d];
        for e in entries.iter_mut().take(l) {
            *e = scale;
        }
        entries[l] = -(l as f64) * scale;
        out.push(ComplexMatrix::diag_real(&entries));
    }
    out
}

/// The Gell-Mann generators with default angles; a maximal set.
pub fn gell_mann_generators(d: usize) -> Result<GeneratorSet> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("local dimension d = {d}, need d >= 2")));
    }
    GeneratorSet::new(gell_mann_matrices(d), Angles::Auto)
}

/// `X`, `Y`, `Z` with default angles.
pub fn pauli_generators() -> GeneratorSet {
    GeneratorSet::new(gell_mann_matrices(2), Angles::Auto).expect("Pauli matrices are Hermitian")
}

fn state_dim(d: usize, n: usize, limits: &Limits) -> Result<usize> {
    let required = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if required > limits.state_cap as u128 {
        return Err(Error::ResourceLimit {
            what: "state space d^n",
            required,
            cap: limits.state_cap as u128,
        });
    }
    Ok(required as usize)
}

/// `u_n(x)`: the sum over slots `k` of `x` acting on the `k`-th tensor factor.
pub fn collective_operator(x: &ComplexMatrix, n: usize, limits: &Limits) -> Result<ComplexMatrix> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch(format!("{}x{} generator", x.rows(), x.cols())));
    }
    if n == 0 {
        return Err(Error::EmptyInput("zero tensor factors"));
    }
    let d = x.rows();
    state_dim(d, n, limits)?;
    let id = ComplexMatrix::identity(d);
    let mut total: Option<ComplexMatrix> = None;
    for slot in 0..n {
        let mut term = if slot == 0 { x.clone() } else { id.clone() };
        for k in 1..n {
            term = kron(&term, if k == slot { x } else { &id });
        }
        total = Some(match total {
            None => term,
            Some(t) => &t + &term,
        });
    }
    Ok(total.expect("n >= 1"))
}

/// `x (x) ... (x) x` with `n` factors.
pub fn tensor_power(x: &ComplexMatrix, n: usize) -> ComplexMatrix {
    let mut out = x.clone();
    for _ in 1..n {
        out = kron(&out, x);
    }
    out
}

/// Distinct eigenvalues of `u_n(x)`: sums of `n` eigenvalues of `x` with repetition.
fn collective_spectrum(x_values: &[f64], n: usize) -> Vec<f64> {
    let mut sums = vec![0.0];
    for _ in 0..n {
        let mut next: Vec<f64> = sums.iter().flat_map(|s| x_values.iter().map(move |w| s + w)).collect();
        next.sort_by(f64::total_cmp);
        next.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * (1.0 + b.abs()));
        sums = next;
    }
    sums
}

/// A rotation whose angle maps two distinct eigenvalues of `u_n(x)` to the same phase.
#[derive(Debug, Clone, PartialEq)]
pub struct AliasingWarning {
    pub generator: usize,
    pub angle: f64,
    /// Difference of the two eigenvalues of `u_n(x)`.
    pub gap: f64,
    /// `angle * gap` is close to `2 pi * multiple`.
    pub multiple: i64,
}

fn aliasing(index: usize, x: &ComplexMatrix, angle: f64, n: usize) -> Result<Option<AliasingWarning>> {
    let spectrum = collective_spectrum(&hermitian_eigenvalues(x)?, n);
    for (i, a) in spectrum.iter().enumerate() {
        for b in &spectrum[i + 1..] {
            let gap = b - a;
            let phase = angle * gap;
            let multiple = (phase / (2.0 * PI)).round();
            if multiple != 0.0 && (phase - 2.0 * PI * multiple).abs() <= ALIASING_TOL {
                return Ok(Some(AliasingWarning {
                    generator: index,
                    angle,
                    gap,
                    multiple: multiple as i64,
                }));
            }
        }
    }
    Ok(None)
}

/// A built channel on `n` qudits.
#[derive(Debug, Clone)]
pub struct UcrChannel {
    pub d: usize,
    pub n: usize,
    /// `exp(i theta_x u_n(x)) / sqrt(|S|)` in generator order.
    pub kraus: Vec<ComplexMatrix>,
    pub angles: Vec<f64>,
    pub maximal: bool,
    pub warnings: Vec<AliasingWarning>,
}

impl UcrChannel {
    pub fn dim(&self) -> usize {
        self.kraus[0].rows()
    }

    /// `|| sum_k E_k^dagger E_k - 1 ||_F`.
    pub fn trace_preservation_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim(), self.dim());
        for e in &self.kraus {
            sum += &e.adjoint_mul(e);
        }
        sum.distance(&ComplexMatrix::identity(self.dim()))
    }

    /// `|| sum_k E_k E_k^dagger - 1 ||_F`.
    pub fn unitality_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim(), self.dim());
        for e in &self.kraus {
            sum += &e.matmul(&e.adjoint());
        }
        sum.distance(&ComplexMatrix::identity(self.dim()))
    }
}

/// Builds the channel. `exp(i theta u_n(x))` is assembled as the tensor power
/// of `exp(i theta x)`, since the slot terms of `u_n(x)` commute.
pub fn build_channel(set: &GeneratorSet, n: usize, limits: &Limits) -> Result<UcrChannel> {
    if n == 0 {
        return Err(Error::EmptyInput("zero tensor factors"));
    }
    state_dim(set.d, n, limits)?;
    let angles = set.resolved_angles(n)?;
    let weight = 1.0 / (set.len() as f64).sqrt();
    let mut kraus = Vec::with_capacity(set.len());
    let mut warnings = Vec::new();
    for (i, (x, &theta)) in set.generators.iter().zip(&angles).enumerate() {
        let local = unitary_exp(x, theta)?;
        kraus.push(tensor_power(&local, n).scale_real(weight));
        if let Some(w) = aliasing(i, x, theta, n)? {
            warnings.push(w);
        }
    }
    Ok(UcrChannel {
        d: set.d,
        n,
        kraus,
        angles,
        maximal: set.maximal,
        warnings,
    })
}

/// `sum_k E_k rho E_k^dagger`.
pub fn apply_channel(ch: &UcrChannel, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let dim = ch.dim();
    if rho.rows() != dim || rho.cols() != dim {
        return Err(Error::DimensionMismatch(format!(
            "channel acts on {dim}x{dim} operators, got {}x{}",
            rho.rows(),
            rho.cols()
        )));
    }
    let mut out = ComplexMatrix::zeros(dim, dim);
    for e in &ch.kraus {
        out += &e.conjugate(rho);
    }
    Ok(out)
}

/// `max_sigma || E(pi(sigma)) - pi(sigma) ||_F` over the given permutations.
pub fn fixed_residual_for(ch: &UcrChannel, perms: &[Permutation]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for sigma in perms {
        if sigma.n() != ch.n {
            return Err(Error::DimensionMismatch(format!(
                "permutation on {} letters for a channel on {} qudits",
                sigma.n(),
                ch.n
            )));
        }
        let p = permutation_matrix(sigma, ch.d);
        worst = worst.max(apply_channel(ch, &p)?.distance(&p));
    }
    Ok(worst)
}

/// [`fixed_residual_for`] over all transpositions and the long cycle, which generate `S_n`.
pub fn group_fixed_residual(ch: &UcrChannel) -> f64 {
    let mut perms = transpositions(ch.n);
    perms.push(Permutation::long_cycle(ch.n));
    fixed_residual_for(ch, &perms).expect("permutations built for the channel size")
}

fn block<'a>(report: &'a DecompositionReport, lambda: &Partition) -> Result<&'a OrthonormalBlock> {
    report.basis_for(lambda).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "S^{lambda} does not occur in ({}-dimensional qudits)^{}",
            report.d, report.n
        ))
    })
}

/// `V (ancilla (x) logical) V^dagger`, with `V` the orthonormal basis of the
/// isotypic block: the copy index carries the ancilla, the Specht index the logical state.
pub fn encode_noiseless(
    report: &DecompositionReport,
    lambda: &Partition,
    logical: &DensityMatrix,
    ancilla: &DensityMatrix,
) -> Result<DensityMatrix> {
    let b = block(report, lambda)?;
    if logical.dim() != b.dim || ancilla.dim() != b.mult {
        return Err(Error::DimensionMismatch(format!(
            "block {lambda} needs a {}-dimensional logical and {}-dimensional ancilla state, got {} and {}",
            b.dim,
            b.mult,
            logical.dim(),
            ancilla.dim()
        )));
    }
    let inner = kron(ancilla.matrix(), logical.matrix());
    DensityMatrix::with_tolerance(b.basis.conjugate(&inner), 1e-10)
}

/// Recovers the logical state: `tr_copy(V^dagger rho V)`.
///
/// Fails with [`Error::SupportLeak`] when more than [`LEAKAGE_TOL`] of the trace
/// lies outside the block.
pub fn decode_noiseless(report: &DecompositionReport, lambda: &Partition, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let b = block(report, lambda)?;
    if rho.dim() != b.basis.rows() {
        return Err(Error::DimensionMismatch(format!(
            "state is {}-dimensional, block lives in dimension {}",
            rho.dim(),
            b.basis.rows()
        )));
    }
    let compressed = b.basis.adjoint_mul(&rho.matrix().matmul(&b.basis));
    let leaked = rho.matrix().trace().re - compressed.trace().re;
    if leaked > LEAKAGE_TOL {
        return Err(Error::SupportLeak { leaked });
    }
    let reduced = partial_trace(&compressed, (b.mult, b.dim), Keep::Second)?;
    DensityMatrix::with_tolerance(reduced, 1e-9)
}

/// Encodes, applies the channel `applications` times, decodes, and returns the
/// fidelity of the decoded state with `logical`.
pub fn noiseless_round_trip(
    report: &DecompositionReport,
    lambda: &Partition,
    ch: &UcrChannel,
    logical: &DensityMatrix,
    ancilla: &DensityMatrix,
    applications: usize,
) -> Result<f64> {
    let mut rho = encode_noiseless(report, lambda, logical, ancilla)?.into_matrix();
    for _ in 0..applications {
        rho = apply_channel(ch, &rho)?;
    }
    let rho = DensityMatrix::with_tolerance(rho, 1e-9)?;
    let out = decode_noiseless(report, lambda, &rho)?;
    fidelity(out.matrix(), logical.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ZERO;
    use crate::spechtspace::decomposition_report;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ginibre(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
    }

    fn z() -> ComplexMatrix {
        ComplexMatrix::diag_real(&[1.0, -1.0])
    }

    #[test]
    fn collective_operator_examples() {
        let limits = Limits::default();
        let u = collective_operator(&ComplexMatrix::identity(3), 3, &limits).unwrap();
        assert_eq!(u, ComplexMatrix::identity(27).scale_real(3.0));
        let x = gell_mann_matrices(3)[4].clone();
        assert_eq!(collective_operator(&x, 1, &limits).unwrap(), x);
        let u = collective_operator(&z(), 2, &limits).unwrap();
        assert_eq!(u, ComplexMatrix::diag_real(&[2.0, 0.0, 0.0, -2.0]));
        assert!(matches!(
            collective_operator(&z(), 13, &limits),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn gell_mann_basis() {
        let paulis = gell_mann_matrices(2);
        assert_eq!(paulis[0], ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        assert_eq!(paulis[1][(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(paulis[2], z());
        for d in 2..=5 {
            let set = gell_mann_matrices(d);
            assert_eq!(set.len(), d * d - 1);
            for (i, a) in set.iter().enumerate() {
                assert!(a.hermitian_residual() == 0.0);
                assert!(a.trace().norm() < 1e-14);
                for (j, b) in set.iter().enumerate() {
                    let overlap = a.matmul(b).trace();
                    let expect = if i == j { 2.0 } else { 0.0 };
                    assert!((overlap - C64::new(expect, 0.0)).norm() < 1e-12);
                }
            }
            assert!(gell_mann_generators(d).unwrap().is_maximal());
        }
    }

    #[test]
    fn maximality_test() {
        let mut three = gell_mann_matrices(3);
        three.pop();
        assert!(!GeneratorSet::new(three.clone(), Angles::Auto).unwrap().is_maximal());
        // adding identity multiples does not change the traceless span
        let shifted: Vec<ComplexMatrix> = gell_mann_matrices(3)
            .into_iter()
            .map(|x| &x + &ComplexMatrix::identity(3))
            .collect();
        assert!(GeneratorSet::new(shifted, Angles::Auto).unwrap().is_maximal());
        three.push(three[0].scale_real(2.0));
        assert!(!GeneratorSet::new(three, Angles::Auto).unwrap().is_maximal());
        assert!(!GeneratorSet::new(vec![z()], Angles::Auto).unwrap().is_maximal());
    }

    #[test]
    fn generator_validation() {
        assert!(GeneratorSet::new(Vec::new(), Angles::Auto).is_err());
        let not_hermitian = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(
            GeneratorSet::new(vec![not_hermitian], Angles::Auto),
            Err(Error::NotHermitian { .. })
        ));
        assert!(GeneratorSet::new(vec![z()], Angles::Explicit(vec![0.0])).is_err());
        assert!(GeneratorSet::new(vec![z()], Angles::Explicit(vec![0.1, 0.2])).is_err());
        assert!(GeneratorSet::new(vec![z(), ComplexMatrix::identity(3)], Angles::Auto).is_err());
    }

    #[test]
    fn default_angles_follow_the_diameter_rule() {
        let set = pauli_generators();
        let angles = set.resolved_angles(4).unwrap();
        for a in angles {
            assert!((a - DEFAULT_ANGLE_CONSTANT / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn aliasing_is_reported() {
        let limits = Limits::default();
        // u_2(Z) has eigenvalues 2, 0, -2; a gap of 2 at angle pi is one full turn.
        let set = GeneratorSet::new(vec![z()], Angles::Explicit(vec![PI])).unwrap();
        let ch = build_channel(&set, 2, &limits).unwrap();
        assert_eq!(ch.warnings.len(), 1);
        assert_eq!(ch.warnings[0].multiple, 1);
        let safe = build_channel(&pauli_generators(), 4, &limits).unwrap();
        assert!(safe.warnings.is_empty());
    }

    #[test]
    fn kraus_operators_match_direct_exponentials() {
        let limits = Limits::default();
        let set = gell_mann_generators(3).unwrap();
        let ch = build_channel(&set, 2, &limits).unwrap();
        let weight = 1.0 / 8f64.sqrt();
        for ((x, &theta), e) in set.generators().iter().zip(&ch.angles).zip(&ch.kraus) {
            let u = unitary_exp(&collective_operator(x, 2, &limits).unwrap(), theta).unwrap();
            assert!(u.scale_real(weight).distance(e) < 1e-12);
        }
    }

    #[test]
    fn channels_are_unital_and_trace_preserving() {
        let limits = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (d, n) in [(2, 1), (2, 3), (3, 2)] {
            let ch = build_channel(&gell_mann_generators(d).unwrap(), n, &limits).unwrap();
            assert!(ch.trace_preservation_residual() < 1e-9);
            assert!(ch.unitality_residual() < 1e-9);
            let dim = ch.dim();
            let mixed = ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64);
            assert!(apply_channel(&ch, &mixed).unwrap().distance(&mixed) < 1e-9);
            let rho = DensityMatrix::from_ginibre(&ginibre(dim, &mut rng)).unwrap();
            let out = apply_channel(&ch, rho.matrix()).unwrap();
            assert!((out.trace().re - 1.0).abs() < 1e-12);
            assert!(out.hermitian_residual() < 1e-12);
        }
    }

    #[test]
    fn single_generator_is_a_unitary_conjugation() {
        let limits = Limits::default();
        let set = GeneratorSet::new(vec![z()], Angles::Explicit(vec![PI / 7.0])).unwrap();
        let ch = build_channel(&set, 2, &limits).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi: Vec<C64> = (0..4).map(|_| C64::new(rng.random(), rng.random())).collect();
        let rho = DensityMatrix::pure(&psi).unwrap();
        let out = apply_channel(&ch, rho.matrix()).unwrap();
        let purity = out.matmul(&out).trace().re;
        assert!((purity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn permutations_are_fixed() {
        let limits = Limits::default();
        let ch = build_channel(&gell_mann_generators(3).unwrap(), 3, &limits).unwrap();
        assert!(group_fixed_residual(&ch) <= 1e-9);
        assert!(fixed_residual_for(&ch, &[Permutation::identity(3)]).unwrap() < 1e-12);
        let lone = GeneratorSet::new(vec![z()], Angles::Explicit(vec![0.3])).unwrap();
        let ch = build_channel(&lone, 4, &limits).unwrap();
        assert!(group_fixed_residual(&ch) <= 1e-9);
    }

    #[test]
    fn generic_states_are_moved() {
        let limits = Limits::default();
        let ch = build_channel(&pauli_generators(), 2, &limits).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rho = DensityMatrix::from_ginibre(&ginibre(4, &mut rng)).unwrap();
        let out = apply_channel(&ch, rho.matrix()).unwrap();
        assert!(out.distance(rho.matrix()) >= 1e-3);
        assert!(apply_channel(&ch, &ComplexMatrix::identity(8)).is_err());
    }

    #[test]
    fn channel_is_permutation_covariant() {
        let limits = Limits::default();
        let ch = build_channel(&gell_mann_generators(2).unwrap(), 3, &limits).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let rho = DensityMatrix::from_ginibre(&ginibre(8, &mut rng)).unwrap().into_matrix();
        for sigma in transpositions(3) {
            let p = permutation_matrix(&sigma, 2);
            let lhs = apply_channel(&ch, &p.conjugate(&rho)).unwrap();
            let rhs = p.conjugate(&apply_channel(&ch, &rho).unwrap());
            assert!(lhs.distance(&rhs) < 1e-9);
        }
    }

    #[test]
    fn encode_decode_round_trip() {
        let limits = Limits::default();
        let report = decomposition_report(2, 4, &limits).unwrap();
        let ch = build_channel(&pauli_generators(), 4, &limits).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for b in &report.bases {
            let logical = DensityMatrix::from_ginibre(&ginibre(b.dim, &mut rng)).unwrap();
            let ancilla = DensityMatrix::from_ginibre(&ginibre(b.mult, &mut rng)).unwrap();
            let rho = encode_noiseless(&report, &b.lambda, &logical, &ancilla).unwrap();
            let proj = b.projection();
            assert!(proj.conjugate(rho.matrix()).distance(rho.matrix()) < 1e-10);
            let back = decode_noiseless(&report, &b.lambda, &rho).unwrap();
            assert!(back.matrix().distance(logical.matrix()) < 1e-10);
            for k in [1, 10] {
                let f = noiseless_round_trip(&report, &b.lambda, &ch, &logical, &ancilla, k).unwrap();
                assert!(f >= 1.0 - 1e-9, "{} k={k} f={f}", b.lambda);
            }
        }
    }

    #[test]
    fn pure_inputs_encode_to_pure_states() {
        let limits = Limits::default();
        let report = decomposition_report(2, 3, &limits).unwrap();
        let lambda = Partition::new(vec![2, 1]).unwrap();
        let logical = DensityMatrix::pure(&[ONE, C64::new(0.0, 1.0)]).unwrap();
        let ancilla = DensityMatrix::pure(&[ZERO, ONE]).unwrap();
        let rho = encode_noiseless(&report, &lambda, &logical, &ancilla).unwrap();
        assert_eq!(rank(rho.matrix(), 1e-12), 1);
        let trivial = Partition::new(vec![3]).unwrap();
        let one = DensityMatrix::maximally_mixed(1);
        let anc = DensityMatrix::maximally_mixed(4);
        let rho = encode_noiseless(&report, &trivial, &one, &anc).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn leakage_and_missing_blocks_are_errors() {
        let limits = Limits::default();
        let report = decomposition_report(2, 2, &limits).unwrap();
        let sym = Partition::new(vec![2]).unwrap();
        // the singlet lies entirely outside the symmetric block
        let s = 1.0 / 2f64.sqrt();
        let singlet = DensityMatrix::pure(&[ZERO, C64::new(s, 0.0), C64::new(-s, 0.0), ZERO]).unwrap();
        match decode_noiseless(&report, &sym, &singlet) {
            Err(Error::SupportLeak { leaked }) => assert!((leaked - 1.0).abs() < 1e-12),
            other => panic!("expected leakage, got {other:?}"),
        }
        let absent = Partition::new(vec![1, 1]).unwrap();
        let report3 = decomposition_report(2, 3, &limits).unwrap();
        let one = DensityMatrix::maximally_mixed(1);
        assert!(encode_noiseless(&report3, &absent, &one, &one).is_err());
        let wrong = DensityMatrix::maximally_mixed(2);
        assert!(encode_noiseless(&report, &sym, &wrong, &wrong).is_err());
    }
}
