//! Dense complex linear algebra on small operators.
//!
//! Matrices are stored row-major. Tensor products follow the usual block
//! convention: in `kron(a, b)` the first factor indexes the most significant
//! digit, so the computational basis state `|i_1 ... i_n>` sits at the
//! big-endian base-`d` index of its digits.
//!
//! The Hermitian eigensolver reduces to real tridiagonal form with complex
//! Householder reflections and finishes with implicit QL iterations.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
#[allow(dead_code)]
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Anti-Hermitian residual accepted by the eigensolver, relative to `max(1, ||h||_F)`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Smallest eigenvalue accepted by [`inverse_sqrt_posdef`].
pub const POSDEF_FLOOR: f64 = 1e-10;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row-major data. Panics if the length is not `rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must equal rows * cols");
        Self { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must equal rows * cols");
        Self {
            rows,
            cols,
            data: data.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    pub fn diag(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn diag_real(entries: &[f64]) -> Self {
        let v: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diag(&v)
    }

    /// Column vector from its entries.
    pub fn column_vector(entries: &[C64]) -> Self {
        Self::from_vec(entries.len(), 1, entries.to_vec())
    }

    /// The rank-one projector `|v><v|`.
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.data[i * self.cols + j]).collect()
    }

    pub fn set_column(&mut self, j: usize, values: &[C64]) {
        assert_eq!(values.len(), self.rows);
        for (i, &v) in values.iter().enumerate() {
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `||self - other||_F`. Panics on shape mismatch.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `||h - h^dagger||_F`; infinite for non-square input.
    pub fn hermitian_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_residual() <= tol
    }

    /// Matrix product. Panics on inner-dimension mismatch.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul: {}x{} times {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let out_row = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let other_row = &other.data[k * oc..(k + 1) * oc];
                for (o, &b) in out_row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// `self^dagger * other` without forming the adjoint.
    pub fn adjoint_mul(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "adjoint_mul: row counts differ");
        let mut out = Self::zeros(self.cols, other.cols);
        let oc = other.cols;
        for k in 0..self.rows {
            let other_row = &other.data[k * oc..(k + 1) * oc];
            for i in 0..self.cols {
                let a = self.data[k * self.cols + i].conj();
                if a.is_zero() {
                    continue;
                }
                let out_row = &mut out.data[i * oc..(i + 1) * oc];
                for (o, &b) in out_row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self * rho * self^dagger`.
    pub fn conjugate(&self, rho: &Self) -> Self {
        self.matmul(rho).matmul(&self.adjoint())
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " ")?;
            for z in self.row(i) {
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape mismatch");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_real(-1.0)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Kronecker product with row-major block layout.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a[(ar, ac)];
            if x.is_zero() {
                continue;
            }
            for br in 0..b.rows {
                let dst = (ar * b.rows + br) * cols + ac * b.cols;
                let src = b.row(br);
                for (o, &y) in out.data[dst..dst + b.cols].iter_mut().zip(src) {
                    *o = x * y;
                }
            }
        }
    }
    out
}

/// [`kron`] guarded by a cap on the larger output dimension.
pub fn checked_kron(a: &ComplexMatrix, b: &ComplexMatrix, max_dim: usize) -> Result<ComplexMatrix> {
    let rows = (a.rows as u128) * (b.rows as u128);
    let cols = (a.cols as u128) * (b.cols as u128);
    let required = rows.max(cols);
    if required > max_dim as u128 {
        return Err(Error::ResourceLimit {
            what: "Kronecker product",
            required,
            cap: max_dim as u128,
        });
    }
    Ok(kron(a, b))
}

/// Result of a Hermitian eigendecomposition: `h = vectors * diag(values) * vectors^dagger`,
/// eigenvalues ascending, eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// Rebuilds `V f(diag) V^dagger` for a real function of the spectrum.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let fw: Vec<C64> = self.values.iter().map(|&w| f(w)).collect();
        let mut scaled = v.clone();
        for i in 0..n {
            for j in 0..n {
                scaled[(i, j)] *= fw[j];
            }
        }
        scaled.matmul(&v.adjoint())
    }
}

fn check_hermitian(h: &ComplexMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            h.rows, h.cols
        )));
    }
    let residual = h.hermitian_residual();
    if residual > HERMITIAN_TOL * h.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian { residual });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(h)?;
    let n = h.rows;
    let mut work = h.clone();
    let mut q = ComplexMatrix::identity(n);
    let (diag, offdiag) = tridiagonalize(&mut work, Some(&mut q));
    let (phases, off_abs) = real_offdiagonal(&offdiag);

    let mut values = diag;
    // Rows of `zt` are eigenvectors of the real tridiagonal matrix.
    let mut zt = vec![0.0; n * n];
    for i in 0..n {
        zt[i * n + i] = 1.0;
    }
    tql2(&mut values, &off_abs, Some(&mut zt))?;

    // U = Q * diag(phases) * Z
    let mut qd = q;
    for r in 0..n {
        for (c, &ph) in phases.iter().enumerate() {
            qd[(r, c)] *= ph;
        }
    }
    let mut vectors = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        let qrow = qd.row(r);
        for j in 0..n {
            let z = &zt[j * n..(j + 1) * n];
            let mut acc = ZERO;
            for (a, &b) in qrow.iter().zip(z) {
                acc += a * b;
            }
            vectors[(r, j)] = acc;
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only (ascending); cheaper than [`hermitian_eig`].
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    check_hermitian(h)?;
    let mut work = h.clone();
    let (mut diag, offdiag) = tridiagonalize(&mut work, None);
    let (_, off_abs) = real_offdiagonal(&offdiag);
    tql2(&mut diag, &off_abs, None)?;
    Ok(diag)
}

/// Householder reduction of a Hermitian matrix to tridiagonal form.
///
/// On return `a` holds the tridiagonal matrix `T` and, if given, `q` has been
/// right-multiplied so that `a_in = q T q^dagger`. Returns the real diagonal and
/// the (complex) subdiagonal of `T`.
fn tridiagonalize(a: &mut ComplexMatrix, mut q: Option<&mut ComplexMatrix>) -> (Vec<f64>, Vec<C64>) {
    let n = a.rows;
    let mut v = vec![ZERO; n];
    let mut p = vec![ZERO; n];
    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let m = n - lo;
        let x0 = a[(lo, k)];
        let tail: f64 = (lo + 1..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let sigma = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { ONE };
        let alpha = -phase * sigma;

        // v = (x - alpha e1) / ||x - alpha e1||
        v[0] = x0 - alpha;
        for i in 1..m {
            v[i] = a[(lo + i, k)];
        }
        let vnorm = v[..m].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v[..m].iter_mut() {
            *z /= vnorm;
        }

        // Trailing block update B <- H B H with H = I - 2 v v^dagger.
        for i in 0..m {
            let row = &a.data[(lo + i) * n + lo..(lo + i) * n + n];
            p[i] = row.iter().zip(&v[..m]).map(|(b, vj)| b * vj).sum();
        }
        let c: C64 = v[..m].iter().zip(&p[..m]).map(|(vi, pi)| vi.conj() * pi).sum();
        for i in 0..m {
            p[i] -= c * v[i];
        }
        for i in 0..m {
            let vi = v[i];
            let wi = p[i];
            let row = &mut a.data[(lo + i) * n + lo..(lo + i) * n + n];
            for j in 0..m {
                row[j] -= 2.0 * (vi * p[j].conj() + wi * v[j].conj());
            }
        }

        a[(lo, k)] = alpha;
        a[(k, lo)] = alpha.conj();
        for i in lo + 1..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }

        if let Some(q) = q.as_deref_mut() {
            for r in 0..n {
                let row = &mut q.data[r * n + lo..r * n + n];
                let s: C64 = row.iter().zip(&v[..m]).map(|(x, vj)| x * vj).sum();
                for (x, vj) in row.iter_mut().zip(&v[..m]) {
                    *x -= 2.0 * s * vj.conj();
                }
            }
        }
    }
    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    let off = (0..n.saturating_sub(1)).map(|i| a[(i + 1, i)]).collect();
    (diag, off)
}

/// Unit phases `delta` with `conj(delta_{i+1}) e_i delta_i = |e_i|`, and the moduli `|e_i|`.
fn real_offdiagonal(off: &[C64]) -> (Vec<C64>, Vec<f64>) {
    let mut phases = Vec::with_capacity(off.len() + 1);
    let mut current = ONE;
    phases.push(current);
    let mut abs = Vec::with_capacity(off.len());
    for &e in off {
        let r = e.norm();
        if r > 0.0 {
            current *= e / r;
        }
        phases.push(current);
        abs.push(r);
    }
    (phases, abs)
}

/// Implicit QL on a real symmetric tridiagonal matrix (EISPACK `tql2`).
///
/// `d` is overwritten with ascending eigenvalues. When `zt` is given it must
/// hold an `n x n` row-major matrix whose rows are rotated alongside, so that
/// starting from the identity row `j` ends as the `j`-th eigenvector.
fn tql2(d: &mut [f64], off: &[f64], mut zt: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::NoConvergence);
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(z) = zt.as_deref_mut() {
                        let (head, tail) = z.split_at_mut((i + 1) * n);
                        let row_i = &mut head[i * n..];
                        let row_next = &mut tail[..n];
                        for (zi, zn) in row_i.iter_mut().zip(row_next.iter_mut()) {
                            let hk = *zn;
                            *zn = s * *zi + c * hk;
                            *zi = c * *zi - s * hk;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    // Selection sort, ascending, carrying eigenvector rows.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        for j in i + 1..n {
            if d[j] < d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            if let Some(z) = zt.as_deref_mut() {
                for c in 0..n {
                    z.swap(i * n + c, k * n + c);
                }
            }
        }
    }
    Ok(())
}

/// `exp(i theta h)` for Hermitian `h`.
pub fn unitary_exp(h: &ComplexMatrix, theta: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(eig.map_spectrum(|w| C64::new(0.0, theta * w).exp()))
}

/// Number of singular values of `a` that are negligible relative to the largest.
///
/// Computed from the eigenvalues of `a^dagger a`: an eigenvalue counts as zero when
/// it is at most `tol` times the largest one. The squared scale keeps the
/// threshold above the rounding floor of the Gram eigenvalues.
pub fn nullspace_dimension(a: &ComplexMatrix, tol: f64) -> usize {
    nullspace_dimension_with_scale(a, tol, 0.0)
}

/// [`nullspace_dimension`] with the threshold taken relative to
/// `max(largest eigenvalue of a^dagger a, scale)`, so that an operator which is
/// zero up to rounding is recognised as zero.
pub fn nullspace_dimension_with_scale(a: &ComplexMatrix, tol: f64, scale: f64) -> usize {
    let gram = a.adjoint_mul(a);
    gram_nullity_with_scale(&gram, tol, scale)
}

/// Nullity of a positive semidefinite Gram matrix with the same rule as
/// [`nullspace_dimension`].
pub fn gram_nullity(gram: &ComplexMatrix, tol: f64) -> usize {
    gram_nullity_with_scale(gram, tol, 0.0)
}

/// [`gram_nullity`] with a lower bound `scale` on the reference eigenvalue.
pub fn gram_nullity_with_scale(gram: &ComplexMatrix, tol: f64, scale: f64) -> usize {
    let n = gram.rows;
    if n == 0 {
        return 0;
    }
    // Gram matrices are Hermitian up to rounding; symmetrize before solving.
    let sym = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (gram[(i, j)] + gram[(j, i)].conj()));
    let values = match hermitian_eigenvalues(&sym) {
        Ok(v) => v,
        Err(_) => return 0,
    };
    let max = values.iter().cloned().fold(0.0, f64::max).max(scale);
    if max <= 0.0 {
        return n;
    }
    values.iter().filter(|&&w| w <= tol * max).count()
}

/// Rank of `a` under the [`nullspace_dimension`] rule.
pub fn rank(a: &ComplexMatrix, tol: f64) -> usize {
    a.cols - nullspace_dimension(a, tol)
}

/// `g^{-1/2}` for a Hermitian positive definite matrix.
pub fn inverse_sqrt_posdef(g: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(g)?;
    if let Some(&smallest) = eig.values.first() {
        if smallest <= POSDEF_FLOOR {
            return Err(Error::Degenerate { eigenvalue: smallest });
        }
    }
    Ok(eig.map_spectrum(|w| C64::new(1.0 / w.sqrt(), 0.0)))
}

/// Principal square root of a positive semidefinite matrix; small negative
/// eigenvalues from rounding are clamped to zero.
pub fn sqrt_psd(g: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(g)?;
    Ok(eig.map_spectrum(|w| C64::new(w.max(0.0).sqrt(), 0.0)))
}

/// Which tensor factor [`partial_trace`] keeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Partial trace of an operator on `C^a (x) C^b`.
pub fn partial_trace(rho: &ComplexMatrix, dims: (usize, usize), keep: Keep) -> Result<ComplexMatrix> {
    let (da, db) = dims;
    if !rho.is_square() || rho.rows != da * db {
        return Err(Error::DimensionMismatch(format!(
            "partial trace over {}x{} factors needs a {}x{} operator, got {}x{}",
            da,
            db,
            da * db,
            da * db,
            rho.rows,
            rho.cols
        )));
    }
    Ok(match keep {
        Keep::Second => ComplexMatrix::from_fn(db, db, |j, jp| {
            (0..da).map(|i| rho[(i * db + j, i * db + jp)]).sum()
        }),
        Keep::First => ComplexMatrix::from_fn(da, da, |i, ip| {
            (0..db).map(|j| rho[(i * db + j, ip * db + j)]).sum()
        }),
    })
}

/// Uhlmann fidelity `(tr sqrt(sqrt(s) t sqrt(s)))^2` of two density matrices.
pub fn fidelity(s: &ComplexMatrix, t: &ComplexMatrix) -> Result<f64> {
    if s.rows != t.rows || !s.is_square() || !t.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "fidelity of {}x{} and {}x{} operators",
            s.rows, s.cols, t.rows, t.cols
        )));
    }
    let root = sqrt_psd(s)?;
    let inner = root.matmul(t).matmul(&root);
    let inner = ComplexMatrix::from_fn(inner.rows, inner.cols, |i, j| {
        0.5 * (inner[(i, j)] + inner[(j, i)].conj())
    });
    let values = hermitian_eigenvalues(&inner)?;
    let tr: f64 = values.iter().map(|&w| w.max(0.0).sqrt()).sum();
    Ok(tr * tr)
}

/// A validated density matrix: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Tolerance for the Hermitian, positivity and trace checks.
    pub const TOL: f64 = 1e-12;

    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(m, Self::TOL)
    }

    pub fn with_tolerance(m: ComplexMatrix, tol: f64) -> Result<Self> {
        let residual = m.hermitian_residual();
        if residual > tol {
            return Err(Error::NotHermitian { residual });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidArgument(format!(
                "density matrix trace is {:.6e}{:+.6e}i, expected 1",
                tr.re, tr.im
            )));
        }
        let values = hermitian_eigenvalues(&m)?;
        if let Some(&smallest) = values.first() {
            if smallest < -tol {
                return Err(Error::InvalidArgument(format!(
                    "density matrix has negative eigenvalue {smallest:.3e}"
                )));
            }
        }
        Ok(Self(m))
    }

    /// `|psi><psi| / <psi|psi>`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm == 0.0 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        Ok(Self(ComplexMatrix::outer(psi).scale_real(1.0 / norm)))
    }

    /// `g g^dagger / tr(g g^dagger)`. With `g` filled by independent complex
    /// Gaussians this samples the Hilbert-Schmidt measure (full rank when `g` is square).
    pub fn from_ginibre(g: &ComplexMatrix) -> Result<Self> {
        let m = g.matmul(&g.adjoint());
        let tr = m.trace().re;
        if tr <= 0.0 {
            return Err(Error::InvalidArgument("zero Ginibre matrix".into()));
        }
        let m = m.scale_real(1.0 / tr);
        let n = m.rows();
        Ok(Self(ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()))))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
        let a = ComplexMatrix::from_fn(n, n, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        (&a + &a.adjoint()).scale_real(0.5)
    }

    fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])
    }

    #[test]
    fn kron_identities_and_diagonals() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let a = ComplexMatrix::diag_real(&[1.0, 2.0]);
        let b = ComplexMatrix::diag_real(&[3.0, 4.0]);
        assert_eq!(kron(&a, &b), ComplexMatrix::diag_real(&[3.0, 4.0, 6.0, 8.0]));
    }

    #[test]
    fn kron_of_swaps_maps_00_to_11() {
        let xx = kron(&pauli_x(), &pauli_x());
        let col = xx.column(0);
        assert_eq!(col, vec![ZERO, ZERO, ZERO, ONE]);
    }

    #[test]
    fn kron_is_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_hermitian(2, &mut rng);
        let b = random_hermitian(3, &mut rng);
        let c = random_hermitian(2, &mut rng);
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        assert!(left.distance(&right) < 1e-14);
    }

    #[test]
    fn checked_kron_reports_cap() {
        let a = ComplexMatrix::identity(8);
        let err = checked_kron(&a, &a, 32).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { required: 64, cap: 32, .. }));
    }

    #[test]
    fn eig_of_diagonal_and_pauli_x() {
        let eig = hermitian_eig(&ComplexMatrix::diag_real(&[3.0, 1.0])).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14 && (eig.values[1] - 3.0).abs() < 1e-14);

        let eig = hermitian_eig(&pauli_x()).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-14 && (eig.values[1] - 1.0).abs() < 1e-14);
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let v0 = eig.vectors.column(0);
        // (1, -1)/sqrt 2 up to a global phase
        let overlap = v0[0] * s - v0[1] * s;
        assert!((overlap.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(matches!(hermitian_eig(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &n in &[1usize, 2, 3, 8, 17, 40] {
            let h = random_hermitian(n, &mut rng);
            let eig = hermitian_eig(&h).unwrap();
            let rebuilt = eig.map_spectrum(|w| C64::new(w, 0.0));
            assert!(rebuilt.distance(&h) <= 1e-9 * h.frobenius_norm().max(1.0), "n={n}");
            let gram = eig.vectors.adjoint_mul(&eig.vectors);
            assert!(gram.distance(&ComplexMatrix::identity(n)) < 1e-10);
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
            let only = hermitian_eigenvalues(&h).unwrap();
            for (a, b) in only.iter().zip(&eig.values) {
                assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eig_handles_degenerate_spectrum() {
        // Projector of rank 2 in dimension 5: eigenvalues 0,0,0,1,1.
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let h = random_hermitian(5, &mut rng);
        let eig = hermitian_eig(&h).unwrap();
        let p = eig.map_spectrum(|w| if w > eig.values[2] { ONE } else { ZERO });
        let pe = hermitian_eig(&p).unwrap();
        let expect = [0.0, 0.0, 0.0, 1.0, 1.0];
        for (a, b) in pe.values.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn unitary_exp_cases() {
        let h = ComplexMatrix::diag_real(&[0.3, -1.1]);
        assert!(unitary_exp(&h, 0.0).unwrap().distance(&ComplexMatrix::identity(2)) < 1e-14);
        let theta = 0.7;
        let u = unitary_exp(&h, theta).unwrap();
        let expect = ComplexMatrix::diag(&[C64::new(0.0, theta * 0.3).exp(), C64::new(0.0, -theta * 1.1).exp()]);
        assert!(u.distance(&expect) < 1e-14);

        // exp(i pi X / 2) = cos(pi/2) I + i sin(pi/2) X = i X
        let u = unitary_exp(&pauli_x(), core::f64::consts::FRAC_PI_2).unwrap();
        assert!(u.distance(&pauli_x().scale(I)) < 1e-14);
    }

    #[test]
    fn unitary_exp_is_a_one_parameter_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_hermitian(6, &mut rng);
        let a = unitary_exp(&h, 0.4).unwrap();
        let b = unitary_exp(&h, -1.3).unwrap();
        let ab = unitary_exp(&h, 0.4 - 1.3).unwrap();
        assert!(a.matmul(&b).distance(&ab) < 1e-9);
        assert!(a.matmul(&a.adjoint()).distance(&ComplexMatrix::identity(6)) < 1e-9);
    }

    #[test]
    fn nullspace_cases() {
        assert_eq!(nullspace_dimension(&ComplexMatrix::zeros(4, 4), 1e-8), 4);
        assert_eq!(nullspace_dimension(&ComplexMatrix::identity(4), 1e-8), 0);
        let v = [C64::new(1.0, 0.5), C64::new(-2.0, 0.0), C64::new(0.0, 3.0)];
        assert_eq!(nullspace_dimension(&ComplexMatrix::outer(&v), 1e-8), 2);
    }

    #[test]
    fn inverse_sqrt_cases() {
        let id = ComplexMatrix::identity(3);
        assert!(inverse_sqrt_posdef(&id).unwrap().distance(&id) < 1e-14);
        let g = ComplexMatrix::diag_real(&[4.0, 9.0]);
        let expect = ComplexMatrix::diag_real(&[0.5, 1.0 / 3.0]);
        assert!(inverse_sqrt_posdef(&g).unwrap().distance(&expect) < 1e-14);

        // Gram matrix of (1,0) and (1,1).
        let g = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 2.0]);
        let r = inverse_sqrt_posdef(&g).unwrap();
        assert!(r.matmul(&g).matmul(&r).distance(&ComplexMatrix::identity(2)) < 1e-9);

        let singular = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        assert!(matches!(inverse_sqrt_posdef(&singular), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn partial_trace_cases() {
        let s = ComplexMatrix::from_real(2, 2, &[0.7, 0.1, 0.1, 0.3]);
        let t = ComplexMatrix::from_real(3, 3, &[0.5, 0.0, 0.1, 0.0, 0.25, 0.0, 0.1, 0.0, 0.25]);
        let st = kron(&s, &t);
        assert!(partial_trace(&st, (2, 3), Keep::Second).unwrap().distance(&t) < 1e-14);
        assert!(partial_trace(&st, (2, 3), Keep::First).unwrap().distance(&s) < 1e-14);

        let h = core::f64::consts::FRAC_1_SQRT_2;
        let bell = DensityMatrix::pure(&[C64::new(h, 0.0), ZERO, ZERO, C64::new(h, 0.0)]).unwrap();
        let reduced = partial_trace(bell.matrix(), (2, 2), Keep::First).unwrap();
        assert!(reduced.distance(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-14);

        assert!(partial_trace(&ComplexMatrix::identity(5), (2, 3), Keep::First).is_err());
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let m = random_hermitian(6, &mut rng);
        let r = partial_trace(&m, (2, 3), Keep::First).unwrap();
        assert!((r.trace() - m.trace()).norm() < 1e-12);
    }

    #[test]
    fn fidelity_of_identical_and_orthogonal_states() {
        let a = DensityMatrix::pure(&[ONE, ZERO]).unwrap();
        let b = DensityMatrix::pure(&[ZERO, ONE]).unwrap();
        assert!(fidelity(a.matrix(), b.matrix()).unwrap() < 1e-12);
        let mixed = ComplexMatrix::from_real(2, 2, &[0.6, 0.2, 0.2, 0.4]);
        assert!((fidelity(&mixed, &mixed).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(2)).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::diag_real(&[1.5, -0.5])).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::diag_real(&[0.25, 0.75])).is_ok());
        assert_eq!(DensityMatrix::maximally_mixed(4).dim(), 4);
    }
}
