//! Brute-force numerical oracles for the tableau-derived block structure.
//!
//! These solve the defining linear equations directly (commutants and fixed
//! spaces as nullspaces of vectorized maps) and share no code with the
//! combinatorial side beyond the dense kernel.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::channel::{collective_operator, tensor_power, UcrChannel};
use crate::combinatorics::{enumerate_partitions, multinomial, multiplicity, transpositions};
use crate::error::{Error, Result};
use crate::linalg::{gram_nullity_with_scale, kron, nullspace_dimension_with_scale, ComplexMatrix, C64};
use crate::spechtspace::permutation_matrix;
use crate::Limits;

/// Relative threshold on squared singular values used by the nullspace oracles.
pub const ORACLE_TOL: f64 = 1e-8;

/// Outcome of one oracle comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl OracleReport {
    pub fn new(name: impl Into<String>, expected: f64, observed: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            expected,
            observed,
            tolerance,
            pass: (expected - observed).abs() <= tolerance,
            detail: String::new(),
        }
    }

    /// Exact comparison of two counts.
    pub fn count(name: impl Into<String>, expected: u64, observed: u64) -> Self {
        Self::new(name, expected as f64, observed as f64, 0.0)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// Dimension of `{X : [X, g] = 0 for all g}`.
///
/// Solves for the nullspace of the stacked maps `X -> Xg - gX` on the `N^2`
/// entries of `X`, through their accumulated Gram matrix.
pub fn commutant_dimension(generators: &[ComplexMatrix], limits: &Limits) -> Result<usize> {
    let n = generators.first().ok_or(Error::EmptyInput("no generators"))?.rows();
    for g in generators {
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "generator is {}x{}, expected {n}x{n}",
                g.rows(),
                g.cols()
            )));
        }
    }
    if n > limits.oracle_cap {
        return Err(Error::ResourceLimit {
            what: "commutant oracle matrix size",
            required: n as u128,
            cap: limits.oracle_cap as u128,
        });
    }
    let unknowns = n * n;
    let mut gram = ComplexMatrix::zeros(unknowns, unknowns);
    let mut row: Vec<(usize, C64)> = Vec::with_capacity(2 * n);
    for g in generators {
        for i in 0..n {
            for j in 0..n {
                // row (i, j) of X -> Xg - gX in row-major vectorization
                row.clear();
                for k in 0..n {
                    let right = g[(k, j)];
                    if right.norm_sqr() != 0.0 {
                        row.push((i * n + k, right));
                    }
                    let left = g[(i, k)];
                    if left.norm_sqr() != 0.0 {
                        row.push((k * n + j, -left));
                    }
                }
                for &(a, va) in &row {
                    let ca = va.conj();
                    for &(b, vb) in &row {
                        gram[(a, b)] += ca * vb;
                    }
                }
            }
        }
    }
    let scale = generators.iter().map(|g| {
        let f = g.frobenius_norm();
        f * f
    }).fold(0.0, f64::max);
    Ok(gram_nullity_with_scale(&gram, ORACLE_TOL, scale))
}

/// Row-major superoperator `sum_k E_k (x) conj(E_k)` of a channel.
pub fn superoperator(ch: &UcrChannel) -> ComplexMatrix {
    let dim = ch.dim();
    let mut s = ComplexMatrix::zeros(dim * dim, dim * dim);
    for e in &ch.kraus {
        s += &kron(e, &e.conj());
    }
    s
}

/// Dimension of the fixed-point space `{rho : E(rho) = rho}`.
pub fn fixed_space_dimension(ch: &UcrChannel, limits: &Limits) -> Result<usize> {
    let dim = ch.dim();
    if dim > limits.superoperator_cap {
        return Err(Error::ResourceLimit {
            what: "fixed-space oracle state dimension",
            required: dim as u128,
            cap: limits.superoperator_cap as u128,
        });
    }
    let shifted = &superoperator(ch) - &ComplexMatrix::identity(dim * dim);
    // E - id has operator norm at most 2, so 1 is a natural reference scale
    Ok(nullspace_dimension_with_scale(&shifted, ORACLE_TOL, 1.0))
}

/// The three computations of `dim pi(S_n)'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurWeylCheck {
    pub d: usize,
    pub n: usize,
    /// Nullspace oracle on the transposition matrices.
    pub oracle: u64,
    /// `sum_lambda m_{lambda,d}^2`.
    pub multiplicity_sum: u64,
    /// `C(d^2 + n - 1, n)`, the dimension of the symmetric tensors over `M_d`.
    pub symmetric_dim: u64,
}

impl SchurWeylCheck {
    pub fn agree(&self) -> bool {
        self.oracle == self.multiplicity_sum && self.multiplicity_sum == self.symmetric_dim
    }

    pub fn reports(&self) -> Vec<OracleReport> {
        let tag = format!("d={} n={}", self.d, self.n);
        alloc::vec![
            OracleReport::count(format!("permutation commutant vs sum mult^2 ({tag})"), self.multiplicity_sum, self.oracle),
            OracleReport::count(
                format!("sum mult^2 vs symmetric tensor dimension ({tag})"),
                self.symmetric_dim,
                self.multiplicity_sum
            ),
        ]
    }
}

/// Compares the commutant of the qudit permutations, computed numerically from
/// the transpositions, with `sum m^2` and with the symmetric tensor dimension.
pub fn schur_weyl_crosscheck(d: usize, n: usize, limits: &Limits) -> Result<SchurWeylCheck> {
    if d < 2 || n == 0 {
        return Err(Error::InvalidArgument(format!("need d >= 2 and n >= 1, got d = {d}, n = {n}")));
    }
    let size = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > limits.oracle_cap as u128 {
        return Err(Error::ResourceLimit {
            what: "commutant oracle matrix size",
            required: size,
            cap: limits.oracle_cap as u128,
        });
    }
    let oracle = if n == 1 {
        (d * d) as u64
    } else {
        let perms: Vec<ComplexMatrix> = transpositions(n).iter().map(|s| permutation_matrix(s, d)).collect();
        commutant_dimension(&perms, limits)? as u64
    };
    let mut multiplicity_sum = 0u64;
    for lambda in enumerate_partitions(n, d)? {
        let m = multiplicity(&lambda, d)?;
        multiplicity_sum += m * m;
    }
    let symmetric_dim = multinomial(&[n, d * d - 1])?;
    Ok(SchurWeylCheck {
        d,
        n,
        oracle,
        multiplicity_sum,
        symmetric_dim,
    })
}

/// Coefficient of `u_3(x^3)` in the expansion of `x (x) x (x) x` obtained by
/// expanding `(sum_k w_k)^3` and collecting the terms with a repeated slot.
pub const CUBIC_POWER_SUM_COEFFICIENT: f64 = 2.0;

/// The opposite sign, kept to show that it does not satisfy the identity.
pub const CUBIC_POWER_SUM_MISQUOTED: f64 = -2.0;

/// `(1/6)(u^3 - 3 u(x^2) u + s u(x^3))` on three factors.
pub fn cubic_power_sum(x: &ComplexMatrix, s: f64, limits: &Limits) -> Result<ComplexMatrix> {
    let u1 = collective_operator(x, 3, limits)?;
    let x2 = x.matmul(x);
    let u2 = collective_operator(&x2, 3, limits)?;
    let u3 = collective_operator(&x2.matmul(x), 3, limits)?;
    let cube = u1.matmul(&u1).matmul(&u1);
    let mixed = u2.matmul(&u1).scale_real(3.0);
    Ok((&(&cube - &mixed) + &u3.scale_real(s)).scale_real(1.0 / 6.0))
}

/// Least-squares fit of `s` in `x^{(x)3} = (1/6)(u^3 - 3 u(x^2) u + s u(x^3))`.
pub fn fit_cubic_coefficient(x: &ComplexMatrix, limits: &Limits) -> Result<f64> {
    let target = tensor_power(x, 3);
    let base = cubic_power_sum(x, 0.0, limits)?;
    let direction = &cubic_power_sum(x, 1.0, limits)? - &base;
    let residual = &target - &base;
    let num: C64 = direction.as_slice().iter().zip(residual.as_slice()).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = direction.as_slice().iter().map(|a| a.norm_sqr()).sum();
    if den == 0.0 {
        return Err(Error::InvalidArgument("u(x^3) vanishes; coefficient undetermined".into()));
    }
    Ok(num.re / den)
}

/// Checks the power-sum expansion of `x^{(x)n}` for `n = 2` or `3`.
///
/// For `n = 3` the report uses the derived coefficient and records the residual
/// under the misquoted one in `detail`.
pub fn power_sum_identity(n: usize, x: &ComplexMatrix, limits: &Limits) -> Result<OracleReport> {
    if !x.is_square() || x.rows() > 4 {
        return Err(Error::InvalidArgument(format!("power-sum check needs a square x of size <= 4, got {}x{}", x.rows(), x.cols())));
    }
    match n {
        2 => {
            let u = collective_operator(x, 2, limits)?;
            let u2 = collective_operator(&x.matmul(x), 2, limits)?;
            let rhs = (&u.matmul(&u) - &u2).scale_real(0.5);
            let residual = tensor_power(x, 2).distance(&rhs);
            Ok(OracleReport::new("power-sum identity n=2", 0.0, residual, 1e-10))
        }
        3 => {
            let target = tensor_power(x, 3);
            let derived = target.distance(&cubic_power_sum(x, CUBIC_POWER_SUM_COEFFICIENT, limits)?);
            let misquoted = target.distance(&cubic_power_sum(x, CUBIC_POWER_SUM_MISQUOTED, limits)?);
            Ok(OracleReport::new("power-sum identity n=3", 0.0, derived, 1e-9).with_detail(format!(
                "coefficient of u(x^3): {CUBIC_POWER_SUM_COEFFICIENT:+} (residual {derived:.3e}); \
                 with {CUBIC_POWER_SUM_MISQUOTED:+} the residual is {misquoted:.3e}"
            )))
        }
        _ => Err(Error::InvalidArgument(format!("power-sum check supports n = 2 or 3, got {n}"))),
    }
}

/// `{u_n(x) : x in generators}`.
pub fn collective_generators(generators: &[ComplexMatrix], n: usize, limits: &Limits) -> Result<Vec<ComplexMatrix>> {
    generators.iter().map(|x| collective_operator(x, n, limits)).collect()
}
