//! Dense complex linear algebra for small square matrices.
//!
//! Everything here is sized for dimensions in the 2..64 range: a cyclic
//! Jacobi eigensolver for Hermitian matrices, partial-pivot Gaussian
//! elimination, a positive-semidefiniteness test and the spectral norm.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default tolerance for the "is this Hermitian / PSD / on the circle" tests.
pub const DEFAULT_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_OFF_DIAG_REL: f64 = 1e-13;
const QL_MAX_ITERATIONS: usize = 60;
const PIVOT_REL: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not Hermitian: ‖H − H*‖ = {defect:.3e} exceeds {allowed:.3e}")]
    NotHermitian { defect: f64, allowed: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("singular system: pivot {pivot:.3e} at column {column} below threshold {threshold:.3e}")]
    Singular { column: usize, pivot: f64, threshold: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid matrix: {0}")]
    Invalid(String),
}

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, Complex64::new(1.0, 0.0))
    }

    /// `value · I`.
    pub fn scalar(dim: usize, value: Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = value;
        }
        m
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = *v;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows; every row must have the same length as the row count
    /// and every entry must be finite.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, LinalgError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(LinalgError::Invalid("empty matrix".into()));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(LinalgError::Invalid(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    dim
                )));
            }
            data.extend_from_slice(row);
        }
        if data.iter().any(|z| !z.is_finite()) {
            return Err(LinalgError::Invalid("non-finite entry".into()));
        }
        Ok(Self { dim, data })
    }

    /// Real-entried convenience constructor, mostly for fixtures.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, LinalgError> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * factor).collect() }
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨Tx, x⟩ = x* T x`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        inner(&self.mul_vec(x), x)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::identity(self.dim);
        for _ in 0..n {
            result = &result * self;
        }
        result
    }

    /// `(H + H*)/2`, making the result Hermitian to the last bit.
    pub fn symmetrized(&self) -> Self {
        let mut m = Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5);
        for i in 0..self.dim {
            m[(i, i)].im = 0.0;
        }
        m
    }

    /// `‖H − H*‖_F`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn check_hermitian(&self, tol: f64) -> Result<(), LinalgError> {
        let defect = self.hermitian_defect();
        let allowed = tol * (1.0 + self.frobenius_norm());
        if defect > allowed {
            Err(LinalgError::NotHermitian { defect, allowed })
        } else {
            Ok(())
        }
    }

    fn check_same_dim(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &'a CMatrix) -> CMatrix {
        self.check_same_dim(rhs);
        CMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &'a CMatrix) -> CMatrix {
        self.check_same_dim(rhs);
        CMatrix { dim: self.dim, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &'a CMatrix) -> CMatrix {
        self.check_same_dim(rhs);
        let n = self.dim;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        self.scale_real(-1.0)
    }
}

/// `⟨x, y⟩ = Σ x_i · conj(y_i)`, linear in the first slot.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

pub fn vec_norm(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Spectrum of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors; `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl EigenDecomposition {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn top_vector(&self) -> &[Complex64] {
        self.eigenvectors.last().expect("non-empty spectrum")
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
pub fn hermitian_eig(h: &CMatrix, tol: f64) -> Result<EigenDecomposition, LinalgError> {
    h.check_hermitian(tol)?;
    let n = h.dim();
    let mut a = h.symmetrized();
    let mut v = CMatrix::identity(n);

    let threshold = JACOBI_OFF_DIAG_REL * a.frobenius_norm();
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(LinalgError::NoConvergence { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    Ok(EigenDecomposition {
        eigenvalues: order.iter().map(|&i| a[(i, i)].re).collect(),
        eigenvectors: order.iter().map(|&i| v.column(i)).collect(),
    })
}

/// Eigenvalues only, ascending: Householder reduction to a real symmetric
/// tridiagonal matrix followed by implicit QL with Wilkinson shifts. Several
/// times cheaper than [`hermitian_eig`] on the small matrices used here.
pub fn hermitian_eigenvalues(h: &CMatrix, tol: f64) -> Result<Vec<f64>, LinalgError> {
    h.check_hermitian(tol)?;
    let (mut d, mut e) = tridiagonalize(h.symmetrized());
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Diagonal and (absolute) off-diagonal of a unitarily similar tridiagonal matrix.
/// The off-diagonal phases are dropped: a diagonal unitary similarity makes them real.
fn tridiagonalize(mut a: CMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.dim();
    let mut e = vec![0.0; n];
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    let mut q = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        let norm_x = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * norm_x;
        v.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        v[k + 1] = x0 - alpha;
        for i in k + 2..n {
            v[i] = a[(i, k)];
        }
        let v_norm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        e[k] = norm_x;
        if v_norm_sqr == 0.0 {
            continue;
        }
        // A ← H A H with H = I − τ v v*, written as A − v w* − w v*.
        let tau = 2.0 / v_norm_sqr;
        for i in 0..n {
            q[i] = (k + 1..n).map(|j| a[(i, j)] * v[j]).sum::<Complex64>() * tau;
        }
        let kappa = 0.5 * tau * (k + 1..n).map(|i| v[i].conj() * q[i]).sum::<Complex64>().re;
        for i in 0..n {
            q[i] -= v[i] * kappa;
        }
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] -= v[i] * q[j].conj() + q[i] * v[j].conj();
            }
        }
    }
    if n >= 2 {
        e[n - 2] = a[(n - 1, n - 2)].norm();
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), e)
}

/// Implicit QL on a symmetric tridiagonal matrix; `e[i]` couples rows `i` and
/// `i + 1`. Eigenvalues are left in `d`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<(), LinalgError> {
    let n = d.len();
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let scale = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * scale {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > QL_MAX_ITERATIONS {
                return Err(LinalgError::NoConvergence { sweeps: iterations, off_norm: e[l].abs() });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates `a[p][q]` with a unitary `G = diag(1, e^{-iφ}) · R(θ)` acting on the (p, q) plane,
/// replacing `a ← G* a G` and `v ← v G`.
fn jacobi_rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let phase = apq / magnitude;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let tau = (aqq - app) / (2.0 * magnitude);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // G = [[c, s], [-s·conj(phase), c·conj(phase)]]
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    // Columns p, q of G* A G off the (p, q) block; rows follow by symmetry.
    let n = a.dim();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_p = akp * g_pp + akq * g_qp;
        let new_q = akp * g_pq + akq * g_qq;
        a[(k, p)] = new_p;
        a[(k, q)] = new_q;
        a[(p, k)] = new_p.conj();
        a[(q, k)] = new_q.conj();
    }
    a[(p, p)] = Complex64::new(app - t * magnitude, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * magnitude, 0.0);
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Solves `A X = B` by Gaussian elimination with partial pivoting.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix, LinalgError> {
    if a.dim() != b.dim() {
        return Err(LinalgError::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let n = a.dim();
    let threshold = PIVOT_REL * a.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut lu = a.clone();
    let mut x = b.clone();

    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, lu[(r, col)].norm()))
            .max_by(|l, r| l.1.total_cmp(&r.1))
            .expect("non-empty column");
        if pivot <= threshold {
            return Err(LinalgError::Singular { column: col, pivot, threshold });
        }
        if pivot_row != col {
            for j in 0..n {
                lu.data.swap(col * n + j, pivot_row * n + j);
                x.data.swap(col * n + j, pivot_row * n + j);
            }
        }
        let inv_pivot = lu[(col, col)].inv();
        for r in col + 1..n {
            let factor = lu[(r, col)] * inv_pivot;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            lu[(r, col)] = Complex64::new(0.0, 0.0);
            for j in col + 1..n {
                let u = lu[(col, j)];
                lu[(r, j)] -= factor * u;
            }
            for j in 0..n {
                let xv = x[(col, j)];
                x[(r, j)] -= factor * xv;
            }
        }
    }

    for col in (0..n).rev() {
        let inv_pivot = lu[(col, col)].inv();
        for j in 0..n {
            let mut acc = x[(col, j)];
            for k in col + 1..n {
                acc -= lu[(col, k)] * x[(k, j)];
            }
            x[(col, j)] = acc * inv_pivot;
        }
    }
    Ok(x)
}

pub fn inverse(a: &CMatrix) -> Result<CMatrix, LinalgError> {
    solve(a, &CMatrix::identity(a.dim()))
}

/// Outcome of a positive-semidefiniteness test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdCheck {
    pub psd: bool,
    pub min_eigenvalue: f64,
}

/// `H ≥ 0` up to `tol`: true iff `λ_min(H) ≥ −tol`.
pub fn is_psd(h: &CMatrix, tol: f64) -> Result<PsdCheck, LinalgError> {
    let min_eigenvalue = hermitian_eigenvalues(h, tol)?[0];
    Ok(PsdCheck { psd: min_eigenvalue >= -tol, min_eigenvalue })
}

/// Spectral norm, `sqrt(λ_max(T* T))`.
pub fn operator_norm(t: &CMatrix) -> f64 {
    let gram = (&t.adjoint() * t).symmetrized();
    // The Gram matrix is Hermitian by construction, so only convergence can fail.
    let top = hermitian_eig(&gram, f64::INFINITY)
        .map(|e| e.max())
        .expect("Jacobi converges on Gram matrices");
    top.max(0.0).sqrt()
}
