//! Explicit isotypic decomposition of `(C^d)^{(x) n}` under qudit permutations.
//!
//! Everything up to the orthonormalization step is exact integer arithmetic on
//! sparse vectors over the computational basis.
//!
//! Permutation action: `pi(sigma)` moves tensor factors so that output position
//! `p` carries the digit found at position `sigma(p)` of the input, e.g.
//! `pi((1 4)) |0011> = |1010>`. For a tableau `t`, the vector `h_{T,t}` is the
//! signed column-stabilizer sum of `pi(sigma)` applied to `Theta_T(e_{t})`, the
//! sum of all kets row-equivalent (with respect to `t`) to `gamma_t(T)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::combinatorics::{
    compositions, enumerate_partitions, multiplicity, next_permutation, semistandard_tableaux, specht_dim,
    stabilizer, standard_tableaux, Axis, Composition, Partition, Permutation, Tableau, TypedTableau,
};
use crate::error::{Error, Result};
use crate::linalg::{inverse_sqrt_posdef, kron, ComplexMatrix, C64, ONE, ZERO};
use crate::Limits;

/// Relative tolerance for the Gram factorization `G = M (x) K`.
pub const GRAM_FACTORIZATION_TOL: f64 = 1e-10;

/// A computational basis label `|i_1 ... i_n>`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KetIndex {
    digits: Vec<usize>,
}

impl KetIndex {
    pub fn new(digits: Vec<usize>, d: usize) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&x| x >= d) {
            return Err(Error::InvalidArgument(format!("digit {bad} is not below d = {d}")));
        }
        Ok(Self { digits })
    }

    /// Parses a digit string such as `"0112"` (single-character digits, so `d <= 10`).
    pub fn parse(s: &str, d: usize) -> Result<Self> {
        let digits = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::InvalidArgument(format!("bad digit {c:?} in ket {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(digits, d)
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn n(&self) -> usize {
        self.digits.len()
    }

    /// Big-endian base-`d` position in the dense state vector.
    pub fn linear_index(&self, d: usize) -> usize {
        self.digits.iter().fold(0, |acc, &x| acc * d + x)
    }

    pub fn from_linear(mut index: usize, d: usize, n: usize) -> Self {
        let mut digits = vec![0; n];
        for slot in digits.iter_mut().rev() {
            *slot = index % d;
            index /= d;
        }
        Self { digits }
    }

    /// Digit counts `(k_0, ..., k_{d-1})`.
    pub fn weight(&self, d: usize) -> Composition {
        let mut counts = vec![0; d];
        for &x in &self.digits {
            counts[x] += 1;
        }
        Composition::new(counts).expect("d >= 1")
    }

    /// The ket `pi(sigma)|self>`: output position `p` takes the digit at `sigma(p)`.
    pub fn permuted(&self, sigma: &Permutation) -> KetIndex {
        KetIndex {
            digits: (0..self.n()).map(|p| self.digits[sigma.apply(p)]).collect(),
        }
    }
}

impl fmt::Display for KetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.digits.iter().any(|&x| x > 9);
        write!(f, "|")?;
        for (i, x) in self.digits.iter().enumerate() {
            if wide && i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "\u{27e9}")
    }
}

/// A vector with integer coefficients over the computational basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntKetVector {
    d: usize,
    n: usize,
    coeffs: BTreeMap<KetIndex, i64>,
}

impl IntKetVector {
    pub fn zero(d: usize, n: usize) -> Self {
        Self {
            d,
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(ket: KetIndex, d: usize) -> Self {
        let mut v = Self::zero(d, ket.n());
        v.add_term(ket, 1);
        v
    }

    /// Builds a vector from `(coefficient, digit string)` pairs.
    pub fn from_terms(d: usize, terms: &[(i64, &str)]) -> Result<Self> {
        let n = terms
            .first()
            .map(|(_, s)| s.len())
            .ok_or(Error::EmptyInput("vector without terms"))?;
        let mut v = Self::zero(d, n);
        for &(c, s) in terms {
            let ket = KetIndex::parse(s, d)?;
            if ket.n() != n {
                return Err(Error::DimensionMismatch(format!("ket {s} has {} digits, expected {n}", ket.n())));
            }
            v.add_term(ket, c);
        }
        Ok(v)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, ket: KetIndex, c: i64) {
        debug_assert_eq!(ket.n(), self.n);
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(ket);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, ket: &KetIndex) -> i64 {
        self.coeffs.get(ket).copied().unwrap_or(0)
    }

    /// Non-zero terms in ket order.
    pub fn terms(&self) -> impl Iterator<Item = (&KetIndex, i64)> {
        self.coeffs.iter().map(|(k, &c)| (k, c))
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scaled(&self, s: i64) -> Self {
        let mut out = Self::zero(self.d, self.n);
        for (k, c) in self.terms() {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, s: i64) {
        for (k, c) in other.terms() {
            self.add_term(k.clone(), c * s);
        }
    }

    /// Exact inner product.
    pub fn dot(&self, other: &Self) -> i128 {
        let (small, large) = if self.coeffs.len() <= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .terms()
            .map(|(k, c)| c as i128 * large.coefficient(k) as i128)
            .sum()
    }

    pub fn to_dense(&self) -> Vec<C64> {
        let mut out = vec![ZERO; self.d.pow(self.n as u32)];
        for (k, c) in self.terms() {
            out[k.linear_index(self.d)] = C64::new(c as f64, 0.0);
        }
        out
    }
}

impl fmt::Display for IntKetVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

/// Kets with the prescribed digit counts, lexicographic.
pub fn weight_basis(k: &Composition) -> Vec<KetIndex> {
    let mut digits: Vec<usize> = k
        .entries()
        .iter()
        .enumerate()
        .flat_map(|(value, &count)| core::iter::repeat_n(value, count))
        .collect();
    let mut out = vec![KetIndex { digits: digits.clone() }];
    while next_permutation(&mut digits) {
        out.push(KetIndex { digits: digits.clone() });
    }
    out
}

/// `pi(sigma) v`.
pub fn apply_permutation(sigma: &Permutation, v: &IntKetVector) -> Result<IntKetVector> {
    if sigma.n() != v.n {
        return Err(Error::DimensionMismatch(format!(
            "permutation on {} letters applied to a vector on {} factors",
            sigma.n(),
            v.n
        )));
    }
    let mut out = IntKetVector::zero(v.d, v.n);
    for (k, c) in v.terms() {
        out.add_term(k.permuted(sigma), c);
    }
    Ok(out)
}

/// `pi(sigma)` applied to a dense state vector on `n` qudits of dimension `d`.
pub fn permute_dense(sigma: &Permutation, v: &[C64], d: usize) -> Vec<C64> {
    let n = sigma.n();
    let mut out = vec![ZERO; v.len()];
    for (i, &x) in v.iter().enumerate() {
        if x == ZERO {
            continue;
        }
        let ket = KetIndex::from_linear(i, d, n).permuted(sigma);
        out[ket.linear_index(d)] = x;
    }
    out
}

/// Dense matrix of `pi(sigma)` on `(C^d)^{(x) n}`.
pub fn permutation_matrix(sigma: &Permutation, d: usize) -> ComplexMatrix {
    let n = sigma.n();
    let dim = d.pow(n as u32);
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        let j = KetIndex::from_linear(i, d, n).permuted(sigma).linear_index(d);
        m[(j, i)] = ONE;
    }
    m
}

fn check_same_shape(t: &Tableau, big_t: &TypedTableau) -> Result<()> {
    if t.shape() != big_t.shape() {
        return Err(Error::DimensionMismatch(format!(
            "tableau shapes differ: {} vs {}",
            t.shape(),
            big_t.shape()
        )));
    }
    Ok(())
}

/// `gamma_{t0}(T)` as the tuple of letter sets `(A_0, ..., A_{d-1})`, one-based letters.
pub fn gamma_sets(t0: &Tableau, big_t: &TypedTableau) -> Result<Vec<Vec<usize>>> {
    let ket = gamma(t0, big_t)?;
    let mut sets = vec![Vec::new(); big_t.d()];
    for (pos, &value) in ket.digits.iter().enumerate() {
        sets[value].push(pos + 1);
    }
    Ok(sets)
}

/// `gamma_{t0}(T)` as a ket: letter `j` gets the value `T` places in the cell where `t0` has `j`.
pub fn gamma(t0: &Tableau, big_t: &TypedTableau) -> Result<KetIndex> {
    check_same_shape(t0, big_t)?;
    let mut digits = vec![0; t0.n()];
    for (i, row) in t0.rows().iter().enumerate() {
        for (j, &letter) in row.iter().enumerate() {
            digits[letter - 1] = big_t.value(i, j);
        }
    }
    Ok(KetIndex { digits })
}

/// `Theta_T(e_{t0})`: the sum of every ket row-equivalent to `gamma_{t0}(T)`
/// under the rows of `t0`. `t0` need not be standard.
pub fn theta_image(big_t: &TypedTableau, t0: &Tableau) -> Result<IntKetVector> {
    let seed = gamma(t0, big_t)?;
    let n = t0.n();
    let mut kets = vec![seed.digits];
    for row in t0.rows().iter().filter(|r| r.len() > 1) {
        let positions: Vec<usize> = row.iter().map(|&l| l - 1).collect();
        let mut next = Vec::new();
        for digits in &kets {
            let mut values: Vec<usize> = positions.iter().map(|&p| digits[p]).collect();
            values.sort_unstable();
            loop {
                let mut d = digits.clone();
                for (&p, &v) in positions.iter().zip(&values) {
                    d[p] = v;
                }
                next.push(d);
                if !next_permutation(&mut values) {
                    break;
                }
            }
        }
        kets = next;
    }
    let mut out = IntKetVector::zero(big_t.d(), n);
    for digits in kets {
        out.add_term(KetIndex { digits }, 1);
    }
    Ok(out)
}

/// `h_{T,t}`: the signed column-stabilizer sum applied to `Theta_T(e_{t})`.
pub fn polytabloid_image(big_t: &TypedTableau, t: &Tableau, limits: &Limits) -> Result<IntKetVector> {
    let theta = theta_image(big_t, t)?;
    let mut out = IntKetVector::zero(big_t.d(), t.n());
    for sigma in stabilizer(t, Axis::Column, limits.stabilizer_cap)? {
        let image = apply_permutation(&sigma, &theta)?;
        out.add_scaled(&image, sigma.sign());
    }
    Ok(out)
}

/// One copy of `S^lambda` inside a weight space.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotypicCopy {
    pub composition: Composition,
    pub tableau: TypedTableau,
    /// `h_{T,t}` for the standard tableaux `t` in canonical order.
    pub basis: Vec<IntKetVector>,
}

/// All copies of `S^lambda` produced by semistandard tableaux, composition-major.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotypicFamily {
    pub lambda: Partition,
    pub d: usize,
    pub n: usize,
    pub copies: Vec<IsotypicCopy>,
}

impl IsotypicFamily {
    pub fn dim(&self) -> usize {
        self.copies.first().map_or(0, |c| c.basis.len())
    }

    pub fn mult(&self) -> usize {
        self.copies.len()
    }
}

fn check_state_cap(d: usize, n: usize, limits: &Limits) -> Result<usize> {
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

/// Builds every copy of `S^lambda` in `(C^d)^{(x) n}`: for each composition `k`
/// of `n` into `d` entries and each semistandard `lambda`-tableau `T` with
/// content `k`, the vectors `h_{T,t}` over the standard tableaux `t`.
///
/// Shapes with more than `d` rows give an empty family.
pub fn isotypic_family(lambda: &Partition, d: usize, n: usize, limits: &Limits) -> Result<IsotypicFamily> {
    if lambda.n() != n {
        return Err(Error::InvalidArgument(format!("{lambda} is not a partition of {n}")));
    }
    check_state_cap(d, n, limits)?;
    let mut family = IsotypicFamily {
        lambda: lambda.clone(),
        d,
        n,
        copies: Vec::new(),
    };
    if lambda.num_rows() > d {
        return Ok(family);
    }
    let standard = standard_tableaux(lambda);
    for k in compositions(n, d) {
        for big_t in semistandard_tableaux(lambda, k.entries()) {
            let basis = standard
                .iter()
                .map(|t| polytabloid_image(&big_t, t, limits))
                .collect::<Result<Vec<_>>>()?;
            if rank_mod_p(&basis) != basis.len() {
                return Err(Error::InternalConsistency(format!(
                    "polytabloid images for T = {big_t} are linearly dependent"
                )));
            }
            family.copies.push(IsotypicCopy {
                composition: k.clone(),
                tableau: big_t,
                basis,
            });
        }
    }
    let expected = multiplicity(lambda, d)?;
    if family.copies.len() as u64 != expected {
        return Err(Error::InternalConsistency(format!(
            "{} copies of S^{lambda} built, multiplicity formula gives {expected}",
            family.copies.len()
        )));
    }
    Ok(family)
}

const MODULUS: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    acc
}

/// Rank over `GF(2^61 - 1)`, a lower bound on the rational rank; equal to the
/// number of vectors only if they are linearly independent over `Q`.
fn rank_mod_p(vectors: &[IntKetVector]) -> usize {
    let mut columns: BTreeMap<&KetIndex, usize> = BTreeMap::new();
    for v in vectors {
        for (k, _) in v.terms() {
            let next = columns.len();
            columns.entry(k).or_insert(next);
        }
    }
    let width = columns.len();
    let mut rows: Vec<Vec<u64>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![0u64; width];
            for (k, c) in v.terms() {
                let r = c.rem_euclid(MODULUS as i64) as u64;
                row[columns[k]] = r;
            }
            row
        })
        .collect();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = powmod(rows[rank][col], MODULUS - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = mulmod(rows[r][col], inv);
                for c in col..width {
                    let sub = mulmod(factor, rows[rank][c]);
                    rows[r][c] = (rows[r][c] + MODULUS - sub) % MODULUS;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// An orthonormal basis `v_{a,b}` of one isotypic component.
///
/// Column `a * dim + b` of `basis` is `v_{a,b}` (copy `a`, Specht index `b`).
/// Every `pi(sigma)` acts as `1_mult (x) R(sigma)` in this basis, with one
/// unitary `R(sigma)` shared by all copies.
#[derive(Debug, Clone)]
pub struct OrthonormalBlock {
    pub lambda: Partition,
    pub d: usize,
    pub n: usize,
    pub dim: usize,
    pub mult: usize,
    pub basis: ComplexMatrix,
    /// `M`: cross-copy Gram factor, normalized so `M[0][0] = 1`.
    pub copy_gram: ComplexMatrix,
    /// `K`: Gram matrix of the first copy.
    pub specht_gram: ComplexMatrix,
}

impl OrthonormalBlock {
    /// The columns belonging to copy `a`.
    pub fn copy_basis(&self, a: usize) -> ComplexMatrix {
        let rows = self.basis.rows();
        ComplexMatrix::from_fn(rows, self.dim, |i, b| self.basis[(i, a * self.dim + b)])
    }

    /// The central projection `P_lambda = V V^dagger`.
    pub fn projection(&self) -> ComplexMatrix {
        self.basis.matmul(&self.basis.adjoint())
    }

    /// `R(sigma) = V_0^dagger pi(sigma) V_0` on the first copy.
    pub fn representation_matrix(&self, sigma: &Permutation) -> ComplexMatrix {
        let v0 = self.copy_basis(0);
        v0.adjoint_mul(&self.permuted_columns(sigma, &v0))
    }

    fn permuted_columns(&self, sigma: &Permutation, m: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
        for c in 0..m.cols() {
            out.set_column(c, &permute_dense(sigma, &m.column(c), self.d));
        }
        out
    }

    /// `max_a ||pi(sigma) V_a - V_a R(sigma)||_F`, with `R(sigma)` taken from copy 0.
    pub fn equivariance_residual(&self, sigma: &Permutation) -> f64 {
        let r = self.representation_matrix(sigma);
        (0..self.mult)
            .map(|a| {
                let va = self.copy_basis(a);
                self.permuted_columns(sigma, &va).distance(&va.matmul(&r))
            })
            .fold(0.0, f64::max)
    }
}

/// Orthonormalizes an isotypic family while keeping the copy structure.
///
/// The Gram matrix of the vectors `h_{a,b}` factors as `G = M (x) K`, with `M`
/// the cross-copy inner products and `K` the Gram matrix shared by every copy
/// (up to the scalar in `M`). The output is `V = H (M^{-1/2} (x) K^{-1/2})`.
pub fn orthonormalize_isotypic(family: &IsotypicFamily) -> Result<OrthonormalBlock> {
    let mult = family.mult();
    let dim = family.dim();
    if mult == 0 {
        return Err(Error::InvalidArgument(format!(
            "S^{} does not occur for d = {}",
            family.lambda, family.d
        )));
    }
    let size = mult * dim;
    let vector = |col: usize| &family.copies[col / dim].basis[col % dim];

    let mut gram = ComplexMatrix::zeros(size, size);
    for i in 0..size {
        for j in i..size {
            let (a, b) = (i / dim, j / dim);
            if family.copies[a].composition != family.copies[b].composition {
                continue;
            }
            let g = vector(i).dot(vector(j)) as f64;
            gram[(i, j)] = C64::new(g, 0.0);
            gram[(j, i)] = C64::new(g, 0.0);
        }
    }

    let block = |a: usize, b: usize| ComplexMatrix::from_fn(dim, dim, |i, j| gram[(a * dim + i, b * dim + j)]);
    let specht_gram = block(0, 0);
    let kk: f64 = specht_gram.as_slice().iter().map(|z| z.norm_sqr()).sum();
    let copy_gram = ComplexMatrix::from_fn(mult, mult, |a, b| {
        let g = block(a, b);
        let overlap: C64 = specht_gram.as_slice().iter().zip(g.as_slice()).map(|(k, x)| k.conj() * x).sum();
        overlap / kk
    });

    let factored = kron(&copy_gram, &specht_gram);
    let residual = factored.distance(&gram);
    if residual > GRAM_FACTORIZATION_TOL * gram.frobenius_norm() {
        return Err(Error::InternalConsistency(format!(
            "Gram matrix of S^{} copies does not factor (residual {residual:.3e})",
            family.lambda
        )));
    }

    let weights = kron(&inverse_sqrt_posdef(&copy_gram)?, &inverse_sqrt_posdef(&specht_gram)?);
    let total = family.d.pow(family.n as u32);
    let mut basis = ComplexMatrix::zeros(total, size);
    for r in 0..size {
        for (ket, c) in vector(r).terms() {
            let row = ket.linear_index(family.d);
            for col in 0..size {
                let w = weights[(r, col)];
                if w != ZERO {
                    basis[(row, col)] += w * c as f64;
                }
            }
        }
    }

    Ok(OrthonormalBlock {
        lambda: family.lambda.clone(),
        d: family.d,
        n: family.n,
        dim,
        mult,
        basis,
        copy_gram,
        specht_gram,
    })
}

/// One summand `M_dim (x) 1_mult` of the fixed-point algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub lambda: Partition,
    pub dim: u64,
    pub mult: u64,
}

/// The block structure `{(lambda, dim S^lambda, m_{lambda,d})}` with `m > 0`,
/// reverse-lexicographic in `lambda`. Purely combinatorial.
pub fn block_structure(d: usize, n: usize, limits: &Limits) -> Result<Vec<Block>> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("local dimension d = {d}, need d >= 2")));
    }
    if n == 0 {
        return Err(Error::EmptyInput("zero tensor factors"));
    }
    check_state_cap(d, n, limits)?;
    enumerate_partitions(n, d)?
        .into_iter()
        .map(|lambda| {
            let dim = specht_dim(&lambda)?;
            let mult = multiplicity(&lambda, d)?;
            Ok(Block { lambda, dim, mult })
        })
        .filter(|b| !matches!(b, Ok(Block { mult: 0, .. })))
        .collect()
}

/// Block structure plus orthonormal bases of every isotypic component.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub d: usize,
    pub n: usize,
    pub blocks: Vec<Block>,
    pub bases: Vec<OrthonormalBlock>,
}

impl DecompositionReport {
    /// `sum dim * mult`; equals `d^n`.
    pub fn dimension_check(&self) -> u64 {
        self.blocks.iter().map(|b| b.dim * b.mult).sum()
    }

    /// Dimension of the permutation algebra (the noise commutant for maximal sets): `sum dim^2`.
    pub fn commutant_dim(&self) -> u64 {
        self.blocks.iter().map(|b| b.dim * b.dim).sum()
    }

    /// Dimension of the interaction algebra for maximal sets: `sum mult^2`.
    pub fn interaction_dim(&self) -> u64 {
        self.blocks.iter().map(|b| b.mult * b.mult).sum()
    }

    /// Largest `k` such that `M_k` embeds as a noiseless block: `max dim`.
    pub fn largest_full_matrix(&self) -> u64 {
        self.blocks.iter().map(|b| b.dim).max().unwrap_or(0)
    }

    pub fn basis_for(&self, lambda: &Partition) -> Option<&OrthonormalBlock> {
        self.bases.iter().find(|b| &b.lambda == lambda)
    }

    pub fn projection(&self, lambda: &Partition) -> Option<ComplexMatrix> {
        self.basis_for(lambda).map(OrthonormalBlock::projection)
    }
}

/// Full decomposition of `(C^d)^{(x) n}` into isotypic components.
pub fn decomposition_report(d: usize, n: usize, limits: &Limits) -> Result<DecompositionReport> {
    let blocks = block_structure(d, n, limits)?;
    let bases = blocks
        .iter()
        .map(|b| orthonormalize_isotypic(&isotypic_family(&b.lambda, d, n, limits)?))
        .collect::<Result<Vec<_>>>()?;
    for (b, basis) in blocks.iter().zip(&bases) {
        if basis.dim as u64 != b.dim || basis.mult as u64 != b.mult {
            return Err(Error::InternalConsistency(format!(
                "block {} built as {}x{}, expected {}x{}",
                b.lambda, basis.dim, basis.mult, b.dim, b.mult
            )));
        }
    }
    Ok(DecompositionReport { d, n, blocks, bases })
}

/// Formats a list of blocks as `(4):1x15, (3,1):3x15`.
pub fn format_blocks(blocks: &[Block]) -> String {
    let mut s = String::new();
    for (i, b) in blocks.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(&format!("{}:{}x{}", b.lambda, b.dim, b.mult));
    }
    s
}
