//! Measurement-based correlations of two-qubit states: quantum discord and
//! one-way work-deficit, optimized over rank-one projective measurements on
//! one qubit.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{h2, partial_trace, von_neumann_entropy, DensityMatrix};

/// Which qubit of a two-qubit state `ρ_AB` is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// `→`: the first qubit (A) is measured.
    OnFirst,
    /// `←`: the second qubit (B) is measured.
    OnSecond,
}

impl Direction {
    pub fn arrow(self) -> &'static str {
        match self {
            Direction::OnFirst => "->",
            Direction::OnSecond => "<-",
        }
    }
}

/// Rank-one projector pair `P± = (I ± n̂·σ)/2` with `n̂` at Bloch angles `(θ, φ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl MeasurementBasis {
    pub const COMPUTATIONAL: Self = Self {
        theta: 0.0,
        phi: 0.0,
    };

    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Unit Bloch vector `n̂`.
    #[inline]
    pub fn axis(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Same measurement with angles folded into `θ ∈ [0, π]`, `φ ∈ [0, 2π)`.
    pub fn canonical(&self) -> Self {
        let [x, y, z] = self.axis();
        let theta = z.clamp(-1.0, 1.0).acos();
        let phi = y.atan2(x).rem_euclid(2.0 * PI);
        Self { theta, phi }
    }
}

/// Pauli-basis form `ρ = ¼(I + a·σ⊗I + I⊗b·σ + Σ T_ij σ_i⊗σ_j)` of a two-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationForm {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl CorrelationForm {
    pub fn from_density(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 4 {
            return Err(Error::InvalidDensityMatrix(format!(
                "expected a two-qubit state, got dimension {}",
                rho.dim()
            )));
        }
        let m = rho.matrix();
        let e = |i: usize, j: usize| m[(i, j)];
        // tr(ρ (σ_i ⊗ σ_j)) written out over the computational basis.
        let re = |i, j| e(i, j).re;
        let im = |i, j| e(i, j).im;
        let a = [
            2.0 * (re(0, 2) + re(1, 3)),
            2.0 * (im(2, 0) + im(3, 1)),
            re(0, 0) + re(1, 1) - re(2, 2) - re(3, 3),
        ];
        let b = [
            2.0 * (re(0, 1) + re(2, 3)),
            2.0 * (im(1, 0) + im(3, 2)),
            re(0, 0) - re(1, 1) + re(2, 2) - re(3, 3),
        ];
        let t = [
            [
                2.0 * (re(0, 3) + re(1, 2)),
                2.0 * (im(3, 0) + im(1, 2)),
                2.0 * (re(0, 2) - re(1, 3)),
            ],
            [
                2.0 * (im(3, 0) + im(2, 1)),
                2.0 * (re(1, 2) - re(0, 3)),
                2.0 * (im(2, 0) - im(3, 1)),
            ],
            [
                2.0 * (re(0, 1) - re(2, 3)),
                2.0 * (im(1, 0) - im(3, 2)),
                re(0, 0) - re(1, 1) - re(2, 2) + re(3, 3),
            ],
        ];
        Ok(Self { a, b, t })
    }

    /// Exchanges the roles of the two qubits.
    pub fn swapped(&self) -> Self {
        let mut t = [[0.0; 3]; 3];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.t[j][i];
            }
        }
        Self {
            a: self.b,
            b: self.a,
            t,
        }
    }

    /// Outcome probabilities and entropies of A's conditional states after
    /// measuring B along `axis`: `[(p₊, S₊), (p₋, S₋)]`.
    #[inline]
    fn conditional(&self, axis: [f64; 3]) -> [(f64, f64); 2] {
        let bn = dot(self.b, axis);
        let tn = [
            dot(self.t[0], axis),
            dot(self.t[1], axis),
            dot(self.t[2], axis),
        ];
        let branch = |sign: f64| {
            let p = 0.5 * (1.0 + sign * bn);
            if p < PROB_FLOOR {
                return (0.0, 0.0);
            }
            let r = [
                self.a[0] + sign * tn[0],
                self.a[1] + sign * tn[1],
                self.a[2] + sign * tn[2],
            ];
            let len = (dot(r, r).sqrt() / (2.0 * p)).min(1.0);
            (p, h2(0.5 * (1.0 + len)))
        };
        [branch(1.0), branch(-1.0)]
    }

    /// `Σ_i p_i S(ρ_{A|i})` for a measurement on B along `axis`.
    #[inline]
    pub fn measured_conditional_entropy(&self, axis: [f64; 3]) -> f64 {
        self.conditional(axis).iter().map(|(p, s)| p * s).sum()
    }

    /// Entropy of the state after dephasing B along `axis`:
    /// `H({p_i}) + Σ_i p_i S(ρ_{A|i})`.
    #[inline]
    pub fn dephased_entropy(&self, axis: [f64; 3]) -> f64 {
        let outcomes = self.conditional(axis);
        h2(outcomes[0].0) + outcomes.iter().map(|(p, s)| p * s).sum::<f64>()
    }

    fn marginal_entropy_a(&self) -> f64 {
        bloch_entropy(self.a)
    }

    fn marginal_entropy_b(&self) -> f64 {
        bloch_entropy(self.b)
    }
}

const PROB_FLOOR: f64 = 1e-12;

#[inline]
fn dot(u: [f64; 3], v: [f64; 3]) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

fn bloch_entropy(r: [f64; 3]) -> f64 {
    h2(0.5 * (1.0 + dot(r, r).sqrt().min(1.0)))
}

/// Settings of the measurement-basis optimizer: a uniform `(θ, φ)` grid,
/// then pattern search from the best grid points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisSearch {
    /// Grid points over `θ ∈ [0, π]`, endpoints included.
    pub theta_steps: usize,
    /// Grid points over `φ ∈ [0, 2π)`.
    pub phi_steps: usize,
    /// Number of best grid points refined locally.
    pub starts: usize,
    /// Refinement stops once the step falls below this angle (radians).
    pub min_step: f64,
    /// A refinement move is taken only if it lowers the objective by more than this.
    pub objective_tol: f64,
}

impl Default for BasisSearch {
    fn default() -> Self {
        Self {
            theta_steps: 60,
            phi_steps: 120,
            starts: 3,
            min_step: 1e-5,
            objective_tol: 1e-7,
        }
    }
}

/// A minimizing measurement and the objective value it attains.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BasisOptimum {
    pub basis: MeasurementBasis,
    pub value: f64,
}

impl BasisSearch {
    pub fn validate(&self) -> Result<()> {
        if self.theta_steps < 2 || self.phi_steps < 1 || self.starts == 0 {
            return Err(Error::InvalidArgument(format!(
                "basis search needs theta_steps >= 2, phi_steps >= 1, starts >= 1 (got {self:?})"
            )));
        }
        if !(self.min_step > 0.0) || !(self.objective_tol >= 0.0) {
            return Err(Error::InvalidArgument(
                "basis search tolerances must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Minimizes `objective(n̂)` over unit Bloch vectors.
    pub fn minimize(&self, objective: impl Fn([f64; 3]) -> f64) -> BasisOptimum {
        let d_theta = PI / (self.theta_steps - 1) as f64;
        let d_phi = 2.0 * PI / self.phi_steps as f64;
        let phis: Vec<(f64, f64)> = (0..self.phi_steps)
            .map(|j| (j as f64 * d_phi).sin_cos())
            .collect();

        // n̂ and −n̂ define the same measurement. When the grid contains every
        // antipode, (i, j) ↔ (last − i, j + φ_steps/2), scanning the upper half suffices.
        let rows = if self.phi_steps.is_multiple_of(2) {
            self.theta_steps.div_ceil(2)
        } else {
            self.theta_steps
        };
        let keep = self.starts;
        let mut best: Vec<(f64, usize, usize)> = Vec::with_capacity(keep + 1);
        for i in 0..rows {
            let (st, ct) = (i as f64 * d_theta).sin_cos();
            // All φ coincide at the poles.
            let phi_count = if i == 0 || i == self.theta_steps - 1 {
                1
            } else {
                self.phi_steps
            };
            for (j, &(sp, cp)) in phis.iter().take(phi_count).enumerate() {
                let f = objective([st * cp, st * sp, ct]);
                if best.len() < keep || f < best[best.len() - 1].0 {
                    let pos = best.partition_point(|e| e.0 <= f);
                    best.insert(pos, (f, i, j));
                    best.truncate(keep);
                }
            }
        }

        best.iter()
            .map(|&(f, i, j)| {
                self.refine(
                    &objective,
                    MeasurementBasis::new(i as f64 * d_theta, j as f64 * d_phi),
                    f,
                    d_theta,
                    d_phi,
                )
            })
            .min_by(|x, y| x.value.total_cmp(&y.value))
            .expect("at least one start")
    }

    fn refine(
        &self,
        objective: &impl Fn([f64; 3]) -> f64,
        start: MeasurementBasis,
        start_value: f64,
        d_theta: f64,
        d_phi: f64,
    ) -> BasisOptimum {
        let (mut theta, mut phi, mut f) = (start.theta, start.phi, start_value);
        let (mut step_t, mut step_p) = (d_theta, d_phi);
        let eval = |t: f64, p: f64| objective(MeasurementBasis::new(t, p).axis());
        while step_t >= self.min_step {
            let moves = [
                (theta + step_t, phi),
                (theta - step_t, phi),
                (theta, phi + step_p),
                (theta, phi - step_p),
            ];
            let (nt, np, nf) = moves
                .iter()
                .map(|&(t, p)| (t, p, eval(t, p)))
                .min_by(|x, y| x.2.total_cmp(&y.2))
                .expect("four moves");
            if nf < f - self.objective_tol {
                theta = nt;
                phi = np;
                f = nf;
            } else {
                step_t *= 0.5;
                step_p *= 0.5;
            }
        }
        BasisOptimum {
            basis: MeasurementBasis::new(theta, phi).canonical(),
            value: f,
        }
    }
}

fn oriented(rho: &DensityMatrix, dir: Direction) -> Result<CorrelationForm> {
    let form = CorrelationForm::from_density(rho)?;
    Ok(match dir {
        Direction::OnSecond => form,
        Direction::OnFirst => form.swapped(),
    })
}

/// `Σ_i p_i S(ρ_{·|i})` for one fixed measurement on the qubit selected by `dir`.
pub fn measured_conditional_entropy(
    rho: &DensityMatrix,
    basis: MeasurementBasis,
    dir: Direction,
) -> Result<f64> {
    Ok(oriented(rho, dir)?.measured_conditional_entropy(basis.axis()))
}

/// Minimum measured conditional entropy and the basis attaining it.
pub fn min_conditional_entropy(
    rho: &DensityMatrix,
    dir: Direction,
    search: &BasisSearch,
) -> Result<BasisOptimum> {
    let form = oriented(rho, dir)?;
    Ok(search.minimize(|n| form.measured_conditional_entropy(n)))
}

/// Quantum mutual information `S(ρ_A) + S(ρ_B) − S(ρ_AB)`.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let form = CorrelationForm::from_density(rho)?;
    Ok(form.marginal_entropy_a() + form.marginal_entropy_b() - von_neumann_entropy(rho))
}

/// Quantum discord with the default optimizer.
pub fn quantum_discord(rho: &DensityMatrix, dir: Direction) -> Result<f64> {
    quantum_discord_with(rho, dir, &BasisSearch::default())
}

/// Quantum discord `I − J`, with `J` maximized over projective measurements
/// on the qubit selected by `dir`.
pub fn quantum_discord_with(
    rho: &DensityMatrix,
    dir: Direction,
    search: &BasisSearch,
) -> Result<f64> {
    let form = oriented(rho, dir)?;
    let best = search.minimize(|n| form.measured_conditional_entropy(n));
    // I − (S_unmeasured − min) = S_measured − S_AB + min
    let value = form.marginal_entropy_b() - von_neumann_entropy(rho) + best.value;
    Ok(value.max(0.0))
}

/// One-way work-deficit with the default optimizer.
pub fn work_deficit_one_way(rho: &DensityMatrix, dir: Direction) -> Result<f64> {
    work_deficit_one_way_with(rho, dir, &BasisSearch::default())
}

/// One-way work-deficit: minimum over single-qubit dephasings (on the qubit
/// selected by `dir`) of the entropy increase `S(dephased) − S(ρ)`.
pub fn work_deficit_one_way_with(
    rho: &DensityMatrix,
    dir: Direction,
    search: &BasisSearch,
) -> Result<f64> {
    let form = oriented(rho, dir)?;
    let best = search.minimize(|n| form.dephased_entropy(n));
    Ok((best.value - von_neumann_entropy(rho)).max(0.0))
}

/// Entropy of `rho` after dephasing the qubit selected by `dir` in `basis`.
pub fn dephased_entropy(
    rho: &DensityMatrix,
    basis: MeasurementBasis,
    dir: Direction,
) -> Result<f64> {
    Ok(oriented(rho, dir)?.dephased_entropy(basis.axis()))
}

/// Unmeasured conditional entropy `S(ρ_pair) − S(ρ_second)`; may be negative.
pub fn unmeasured_conditional_entropy(rho_pair: &DensityMatrix) -> Result<f64> {
    if rho_pair.dim() != 4 {
        return Err(Error::InvalidDensityMatrix(format!(
            "expected a two-qubit state, got dimension {}",
            rho_pair.dim()
        )));
    }
    let second = partial_trace(rho_pair, &rho_pair.qubits()[1..2])?;
    Ok(von_neumann_entropy(rho_pair) - von_neumann_entropy(&second))
}
