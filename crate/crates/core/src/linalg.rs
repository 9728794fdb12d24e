//! Dense complex-matrix kernel for small qubit registers.
//!
//! Qubit ordering follows one fixed convention throughout the crate: within a
//! register, the first listed qubit is the most significant bit of the
//! computational-basis index.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::PureState;

/// Largest matrix dimension handled by the kernel.
pub const MAX_DIM: usize = 128;

/// Maximum entrywise deviation from hermiticity accepted as roundoff.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as roundoff and set to zero.
pub const EIGEN_CLAMP: f64 = 1e-9;

const TRACE_TOL: f64 = 1e-10;
const MAX_SWEEPS: usize = 64;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; `data.len()` must be a perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() || dim == 0 {
            return Err(Error::InvalidArgument(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Outer product `|v⟩⟨v|`.
    pub fn projector(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (m, n) = (self.dim, other.dim);
        Self::from_fn(m * n, |i, j| self[(i / n, j / n)] * other[(i % n, j % n)])
    }

    /// Largest entrywise deviation `|m_ij − conj(m_ji)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    fn ensure_hermitian(&self) -> Result<()> {
        let dev = self.hermitian_deviation();
        if dev > HERMITIAN_TOL || !dev.is_finite() {
            return Err(Error::NotHermitian(dev));
        }
        Ok(())
    }

    /// Number of qubits when the dimension is a power of two.
    pub fn qubit_count(&self) -> Option<usize> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros() as usize)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
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

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix over a labelled set of qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    qubits: Vec<usize>,
}

impl DensityMatrix {
    /// Validates `matrix` and attaches qubit labels (first label = most significant bit).
    pub fn new(matrix: ComplexMatrix, qubits: Vec<usize>) -> Result<Self> {
        let n = matrix
            .qubit_count()
            .filter(|_| matrix.dim() <= MAX_DIM)
            .ok_or(Error::UnsupportedDimension(matrix.dim()))?;
        if qubits.len() != n {
            return Err(Error::InvalidDensityMatrix(format!(
                "{} labels for a {}-qubit matrix",
                qubits.len(),
                n
            )));
        }
        check_distinct(&qubits)?;
        let dev = matrix.hermitian_deviation();
        if dev > HERMITIAN_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "hermitian deviation {dev:e}"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        let min = hermitian_eigvals(&matrix)?[0];
        if min < -EIGEN_CLAMP {
            return Err(Error::InvalidDensityMatrix(format!(
                "minimum eigenvalue {min:e}"
            )));
        }
        Ok(Self { matrix, qubits })
    }

    /// Density matrix with labels `0..n`.
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let n = matrix
            .qubit_count()
            .ok_or(Error::UnsupportedDimension(matrix.dim()))?;
        Self::new(matrix, (0..n).collect())
    }

    /// `|ψ⟩⟨ψ|` of a pure state.
    pub fn from_pure(state: &PureState) -> Result<Self> {
        if state.dim() > MAX_DIM {
            return Err(Error::UnsupportedDimension(state.dim()));
        }
        Ok(Self::trusted(
            ComplexMatrix::projector(state.amplitudes()),
            (0..state.n_qubits()).collect(),
        ))
    }

    /// Skips validation; callers guarantee the invariants by construction.
    pub(crate) fn trusted(matrix: ComplexMatrix, qubits: Vec<usize>) -> Self {
        Self { matrix, qubits }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }
}

fn check_distinct(labels: &[usize]) -> Result<()> {
    for (i, a) in labels.iter().enumerate() {
        if labels[..i].contains(a) {
            return Err(Error::InvalidSubset(format!("qubit {a} listed twice")));
        }
    }
    Ok(())
}

/// Bit positions (from the least significant end) of `subset` within `register`.
fn bit_positions(register: &[usize], subset: &[usize]) -> Result<Vec<u32>> {
    if subset.is_empty() {
        return Err(Error::InvalidSubset("empty subset".into()));
    }
    check_distinct(subset)?;
    let k = register.len();
    subset
        .iter()
        .map(|q| {
            register
                .iter()
                .position(|r| r == q)
                .map(|p| (k - 1 - p) as u32)
                .ok_or_else(|| {
                    Error::InvalidSubset(format!("qubit {q} is not in register {register:?}"))
                })
        })
        .collect()
}

/// Full-register indices for every value of the listed bits, listed bit first = MSB.
fn scatter_table(positions: &[u32]) -> Vec<usize> {
    let k = positions.len();
    (0..1usize << k)
        .map(|v| {
            positions
                .iter()
                .enumerate()
                .filter(|&(p, _)| (v >> (k - 1 - p)) & 1 == 1)
                .fold(0usize, |acc, (_, &bit)| acc | (1 << bit))
        })
        .collect()
}

fn complement(n: usize, positions: &[u32]) -> Vec<u32> {
    (0..n as u32).rev().filter(|b| !positions.contains(b)).collect()
}

/// Reduced state of `rho` on `keep`; the output's qubit order is the order of `keep`.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.qubits.len();
    let kept = bit_positions(&rho.qubits, keep)?;
    let kept_idx = scatter_table(&kept);
    let rest_idx = scatter_table(&complement(n, &kept));
    let d = kept_idx.len();
    let mut out = ComplexMatrix::zeros(d);
    for r in 0..d {
        for c in r..d {
            let mut acc = ZERO;
            for &t in &rest_idx {
                acc += rho.matrix[(kept_idx[r] | t, kept_idx[c] | t)];
            }
            out[(r, c)] = acc;
        }
    }
    symmetrize_from_upper(&mut out);
    Ok(DensityMatrix::trusted(out, keep.to_vec()))
}

/// Reduced state of a pure register on `keep`, without forming `|ψ⟩⟨ψ|`.
pub fn partial_trace_pure(state: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    let n = state.n_qubits();
    let register: Vec<usize> = (0..n).collect();
    let kept = bit_positions(&register, keep)?;
    if kept.len() > MAX_DIM.trailing_zeros() as usize {
        return Err(Error::UnsupportedDimension(1 << kept.len()));
    }
    let kept_idx = scatter_table(&kept);
    let rest_idx = scatter_table(&complement(n, &kept));
    let psi = state.amplitudes();
    let d = kept_idx.len();
    let rows: Vec<Vec<Complex64>> = kept_idx
        .iter()
        .map(|&k| rest_idx.iter().map(|&t| psi[k | t]).collect())
        .collect();
    let mut out = ComplexMatrix::zeros(d);
    for r in 0..d {
        for c in r..d {
            out[(r, c)] = rows[r]
                .iter()
                .zip(&rows[c])
                .map(|(a, b)| a * b.conj())
                .sum();
        }
    }
    symmetrize_from_upper(&mut out);
    Ok(DensityMatrix::trusted(out, keep.to_vec()))
}

fn symmetrize_from_upper(m: &mut ComplexMatrix) {
    let d = m.dim();
    for r in 0..d {
        m[(r, r)].im = 0.0;
        for c in r + 1..d {
            m[(c, r)] = m[(r, c)].conj();
        }
    }
}

/// Partial transpose of `rho` with respect to the qubits in `part`.
pub fn partial_transpose(rho: &DensityMatrix, part: &[usize]) -> Result<ComplexMatrix> {
    let mask = bit_positions(&rho.qubits, part)?
        .iter()
        .fold(0usize, |acc, &b| acc | (1 << b));
    Ok(transpose_bits(&rho.matrix, mask))
}

/// Swaps the masked bits between row and column index of every entry.
pub(crate) fn transpose_bits(m: &ComplexMatrix, mask: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.dim(), |i, j| {
        let src_i = (i & !mask) | (j & mask);
        let src_j = (j & !mask) | (i & mask);
        m[(src_i, src_j)]
    })
}

/// Eigen-decomposition of a hermitian matrix: ascending eigenvalues and the
/// matching unit eigenvectors as columns of a unitary.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Real eigenvalues of a hermitian matrix, ascending.
pub fn hermitian_eigvals(m: &ComplexMatrix) -> Result<Vec<f64>> {
    m.ensure_hermitian()?;
    if m.dim() == 2 {
        let (lo, hi) = eigvals_2x2(m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
        return Ok(vec![lo, hi]);
    }
    let (mut values, _) = jacobi(m, false)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Eigenvalues and eigenvectors of a hermitian matrix (cyclic Jacobi).
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    m.ensure_hermitian()?;
    let (values, vectors) = jacobi(m, true)?;
    let vectors = vectors.expect("vectors requested");
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted_vectors = ComplexMatrix::from_fn(m.dim(), |i, j| vectors[(i, order[j])]);
    Ok(HermitianEigen {
        values: order.iter().map(|&k| values[k]).collect(),
        vectors: sorted_vectors,
    })
}

#[inline]
pub(crate) fn eigvals_2x2(a: f64, d: f64, b: Complex64) -> (f64, f64) {
    let mean = 0.5 * (a + d);
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mean - half_gap, mean + half_gap)
}

fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = m.dim();
    let mut a = m.clone();
    // Work on the exactly hermitian part.
    symmetrize_from_upper(&mut a);
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let scale = a.frobenius_norm();
    if scale == 0.0 || n == 1 {
        return Ok(((0..n).map(|i| a[(i, i)].re).collect(), v));
    }
    let target = 1e-13 * scale;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off < target {
            return Ok(((0..n).map(|i| a[(i, i)].re).collect(), v));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
    }
    Err(Error::NoConvergence(MAX_SWEEPS))
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    if mag < f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a[(p, q)] = ZERO;
        a[(q, p)] = ZERO;
        return;
    }
    let phase = apq / mag;
    let tau = (aqq - app) / (2.0 * mag);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let t = if tau == 0.0 { 1.0 } else { t };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J = [[c, s], [-s e^{-iα}, c e^{-iα}]] on the (p, q) plane.
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;
    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * s + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * s + aqk * jqq.conj();
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;
    if let Some(v) = v {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * c + vkq * jqp;
            v[(k, q)] = vkp * s + vkq * jqq;
        }
    }
}

/// Clamps roundoff-negative eigenvalues to zero; rejects genuinely negative ones.
pub(crate) fn clamp_eigenvalue(x: f64) -> Result<f64> {
    if x >= 0.0 {
        Ok(x)
    } else if x >= -EIGEN_CLAMP {
        Ok(0.0)
    } else {
        Err(Error::NegativeEigenvalue(x))
    }
}

/// Principal square root of a hermitian positive semidefinite matrix.
pub fn matrix_sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m)?;
    let roots = eig
        .values
        .iter()
        .map(|&x| clamp_eigenvalue(x).map(f64::sqrt))
        .collect::<Result<Vec<_>>>()?;
    let vecs = &eig.vectors;
    let mut out = ComplexMatrix::from_fn(m.dim(), |i, j| {
        roots
            .iter()
            .enumerate()
            .map(|(k, &r)| vecs[(i, k)] * vecs[(j, k)].conj() * r)
            .sum()
    });
    symmetrize_from_upper(&mut out);
    Ok(out)
}

/// `−x log₂ x` with `0 log 0 = 0`.
#[inline]
pub(crate) fn xlog2x_neg(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.log2()
    }
}

/// Shannon entropy (bits) of a spectrum; entries are clamped to `[0, 1]`.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs.iter().map(|&p| xlog2x_neg(p.clamp(0.0, 1.0))).sum()
}

/// Binary entropy `h(x)` in bits, unchecked.
#[inline]
pub(crate) fn h2(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    xlog2x_neg(x) + xlog2x_neg(1.0 - x)
}

/// Binary entropy `h(x) = −x log₂ x − (1−x) log₂(1−x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) || x.is_nan() {
        return Err(Error::OutOfDomain {
            value: x,
            domain: "[0, 1]",
        });
    }
    Ok(h2(x))
}

/// Von Neumann entropy `S(ρ) = −tr ρ log₂ ρ` in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    if m.dim() == 2 {
        return qubit_entropy(m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
    }
    // Invariants of DensityMatrix guarantee a hermitian input.
    let values = hermitian_eigvals(m).expect("density matrix is hermitian");
    shannon_entropy(&values)
}

/// Entropy of the (possibly unnormalized, trace `a + d`) qubit matrix `[[a, b], [b*, d]]`
/// after normalization.
#[inline]
pub(crate) fn qubit_entropy(a: f64, d: f64, b: Complex64) -> f64 {
    let t = a + d;
    if t <= 0.0 {
        return 0.0;
    }
    let (_, hi) = eigvals_2x2(a / t, d / t, b / t);
    h2(hi)
}

/// Trace norm of a hermitian matrix: the sum of absolute eigenvalues.
pub fn trace_norm_hermitian(m: &ComplexMatrix) -> Result<f64> {
    Ok(hermitian_eigvals(m)?.iter().map(|x| x.abs()).sum())
}
