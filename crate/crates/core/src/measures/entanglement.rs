//! Entanglement monotones: concurrence, entanglement of formation, negativity.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    self, clamp_eigenvalue, h2, hermitian_eigen, hermitian_eigvals, partial_transpose,
    trace_norm_hermitian, ComplexMatrix, DensityMatrix,
};
use crate::states::PureState;

fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 {
        return Err(Error::InvalidDensityMatrix(format!(
            "expected a two-qubit state, got dimension {}",
            rho.dim()
        )));
    }
    Ok(())
}

/// Eigenvalues of `ρ` at or below this are treated as roundoff when
/// building the concurrence decomposition.
const RANK_TOL: f64 = 1e-14;

/// Wootters concurrence of a two-qubit state.
///
/// With `ρ = Σ_k v_k v_k†` over the eigenpairs above [`RANK_TOL`], the λ's are
/// the singular values of `τ_kl = v_kᵀ (σ_y ⊗ σ_y) v_l`. Working at the rank of
/// `ρ` keeps pure and low-rank inputs exact, where square roots of
/// roundoff-level eigenvalues of `√ρ ρ̃ √ρ` would cost about 1e-8.
pub fn concurrence_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    const SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    require_two_qubit(rho)?;
    let eig = hermitian_eigen(rho.matrix())?;
    let kept: Vec<[Complex64; 4]> = eig
        .values
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > RANK_TOL)
        .map(|(k, &p)| std::array::from_fn(|i| eig.vectors[(i, k)] * p.sqrt()))
        .collect();
    let r = kept.len();
    if r == 0 {
        return Err(Error::InvalidDensityMatrix("zero state".into()));
    }
    let tau = |k: usize, l: usize| -> Complex64 {
        (0..4).map(|i| kept[k][i] * kept[l][3 - i] * SIGN[i]).sum()
    };
    let mut lambdas = if r == 1 {
        vec![tau(0, 0).norm()]
    } else {
        let t = ComplexMatrix::from_fn(r, tau);
        let gram = &t.adjoint() * &t;
        hermitian_eigvals(&gram)?
            .into_iter()
            .map(|x| clamp_eigenvalue(x).map(f64::sqrt))
            .collect::<Result<Vec<_>>>()?
    };
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let rest: f64 = lambdas[1..].iter().sum();
    Ok((lambdas[0] - rest).clamp(0.0, 1.0))
}

/// Concurrence of a pure state across the `nodal : rest` cut, `2√det ρ_nodal`.
pub fn concurrence_pure_cut(psi: &PureState, nodal: usize) -> Result<f64> {
    let rho = linalg::partial_trace_pure(psi, &[nodal])?;
    Ok(concurrence_from_marginal(rho.matrix()))
}

pub(crate) fn concurrence_from_marginal(m: &ComplexMatrix) -> f64 {
    let det = m[(0, 0)].re * m[(1, 1)].re - m[(0, 1)].norm_sqr();
    2.0 * det.clamp(0.0, 0.25).sqrt()
}

/// Entanglement of formation from concurrence, `h((1 + √(1 − C²))/2)`.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&c) || c.is_nan() {
        return Err(Error::OutOfDomain {
            value: c,
            domain: "[0, 1]",
        });
    }
    let c = c.clamp(0.0, 1.0);
    Ok(h2(0.5 * (1.0 + (1.0 - c * c).max(0.0).sqrt())))
}

/// Negativity `(‖ρ^{T_part}‖₁ − 1)/2`, clamped at zero.
pub fn negativity(rho: &DensityMatrix, part: &[usize]) -> Result<f64> {
    let pt = partial_transpose(rho, part)?;
    negativity_of_transposed(&pt)
}

fn negativity_of_transposed(pt: &ComplexMatrix) -> Result<f64> {
    Ok(((trace_norm_hermitian(pt)? - 1.0) / 2.0).max(0.0))
}

/// Logarithmic negativity `log₂(2N + 1)`.
pub fn log_negativity(rho: &DensityMatrix, part: &[usize]) -> Result<f64> {
    Ok(log_negativity_from(negativity(rho, part)?))
}

#[inline]
pub(crate) fn log_negativity_from(neg: f64) -> f64 {
    (2.0 * neg + 1.0).log2()
}

/// Negativity of a pure state across the `nodal : rest` cut.
///
/// Registers small enough for the dense kernel go through the partial
/// transpose of `|ψ⟩⟨ψ|`; larger ones use the Schmidt form `√(λ₀ λ₁)`.
pub fn negativity_pure_cut(psi: &PureState, nodal: usize) -> Result<f64> {
    if psi.dim() <= linalg::MAX_DIM {
        let rho = DensityMatrix::from_pure(psi)?;
        negativity(&rho, &[nodal])
    } else {
        Ok(concurrence_pure_cut(psi, nodal)? / 2.0)
    }
}

/// `|Φ+⟩ = (|00⟩ + |11⟩)/√2`, handy in tests and examples.
pub fn bell_phi_plus() -> PureState {
    let s = Complex64::new(0.5f64.sqrt(), 0.0);
    let z = Complex64::new(0.0, 0.0);
    PureState::new(vec![s, z, z, s]).expect("normalized")
}
