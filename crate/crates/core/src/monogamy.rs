//! Monogamy scores `δ_Q = Q(nodal : rest) − Σ_j Q(nodal, j)`, the tangle,
//! bound checkers, Monte Carlo percentage tables and the power-law fit.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{partial_trace_pure, DensityMatrix};
use crate::measures::{
    pair_base, pure_cut_base, quantum_discord_with, unmeasured_conditional_entropy,
    BasisSearch, Direction, Measure, MeasureKind,
};
use crate::states::{EnsembleSpec, PureState};

/// Default classification threshold: a state is monogamous iff `δ ≥ −eps`.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Tolerance used when asserting the zero-tangle discord bound.
pub const BOUND_TOL: f64 = 1e-6;

/// Tangle values at or below this count as vanishing.
pub const ZERO_TANGLE: f64 = 1e-8;

/// Score of one measure on one state, with the terms it was assembled from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonogamyRecord {
    pub kind: MeasureKind,
    pub nodal: usize,
    /// `Q(nodal : rest)`, squared for squared kinds.
    pub cut_value: f64,
    /// `Q(nodal, j)` for every other qubit `j` in ascending order, squared for squared kinds.
    pub pair_values: Vec<f64>,
    pub score: f64,
}

impl MonogamyRecord {
    pub fn new(kind: MeasureKind, nodal: usize, cut_value: f64, pair_values: Vec<f64>) -> Self {
        let score = cut_value - pair_values.iter().sum::<f64>();
        Self {
            kind,
            nodal,
            cut_value,
            pair_values,
            score,
        }
    }

    pub fn is_monogamous(&self, eps: f64) -> bool {
        self.score >= -eps
    }
}

fn check_nodal(psi: &PureState, nodal: usize) -> Result<()> {
    if nodal >= psi.n_qubits() {
        return Err(Error::InvalidSubset(format!(
            "nodal qubit {nodal} outside a {}-qubit register",
            psi.n_qubits()
        )));
    }
    Ok(())
}

/// Two-qubit reduced states `ρ_{nodal, j}`, nodal qubit first, for every `j ≠ nodal`.
pub fn nodal_pairs(psi: &PureState, nodal: usize) -> Result<Vec<DensityMatrix>> {
    check_nodal(psi, nodal)?;
    (0..psi.n_qubits())
        .filter(|&j| j != nodal)
        .map(|j| partial_trace_pure(psi, &[nodal, j]))
        .collect()
}

/// Scores of several kinds on one state, sharing reduced states and each
/// base measure between a kind and its square.
pub fn monogamy_scores(
    psi: &PureState,
    kinds: &[MeasureKind],
    nodal: usize,
    search: &BasisSearch,
) -> Result<Vec<MonogamyRecord>> {
    let pairs = nodal_pairs(psi, nodal)?;
    let mut bases: Vec<Measure> = kinds.iter().map(|k| k.measure).collect();
    bases.sort();
    bases.dedup();
    let mut evaluated = Vec::with_capacity(bases.len());
    for &m in &bases {
        let cut = pure_cut_base(psi, nodal, m)?;
        let pair_vals = pairs
            .iter()
            .map(|rho| pair_base(rho, m, search))
            .collect::<Result<Vec<_>>>()?;
        evaluated.push((m, cut, pair_vals));
    }
    Ok(kinds
        .iter()
        .map(|&kind| {
            let (_, cut, pair_vals) = evaluated
                .iter()
                .find(|(m, _, _)| *m == kind.measure)
                .expect("every base evaluated");
            MonogamyRecord::new(
                kind,
                nodal,
                kind.transform(*cut),
                pair_vals.iter().map(|&v| kind.transform(v)).collect(),
            )
        })
        .collect())
}

/// Score of one kind with the default optimizer.
pub fn monogamy_score(psi: &PureState, kind: MeasureKind, nodal: usize) -> Result<MonogamyRecord> {
    monogamy_score_with(psi, kind, nodal, &BasisSearch::default())
}

pub fn monogamy_score_with(
    psi: &PureState,
    kind: MeasureKind,
    nodal: usize,
    search: &BasisSearch,
) -> Result<MonogamyRecord> {
    let mut records = monogamy_scores(psi, &[kind], nodal, search)?;
    Ok(records.remove(0))
}

/// Tangle `C²(nodal : rest) − Σ_j C²(nodal, j)`.
pub fn tangle(psi: &PureState, nodal: usize) -> Result<f64> {
    let kind = MeasureKind::squared(Measure::Concurrence);
    Ok(monogamy_score_with(psi, kind, nodal, &BasisSearch::default())?.score)
}

/// Discord score, its zero-tangle upper bound, and the tangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscordBound {
    /// `δ_D←` at the nodal qubit.
    pub score: f64,
    /// `Σ_j S(ρ_{nodal|j})`, unmeasured conditional entropies conditioned on each `j`.
    pub bound: f64,
    pub tangle: f64,
}

impl DiscordBound {
    /// Whether the bound applies (vanishing tangle).
    pub fn premise_holds(&self) -> bool {
        self.tangle.abs() <= ZERO_TANGLE
    }

    /// `score ≤ bound + BOUND_TOL`, or `None` when the premise fails.
    pub fn bound_holds(&self) -> Option<bool> {
        self.premise_holds()
            .then_some(self.score <= self.bound + BOUND_TOL)
    }
}

/// Computes the zero-tangle discord bound triple.
///
/// Returns an error if the tangle vanishes and the score nevertheless
/// exceeds the bound.
/// `(δ_D←, Σ_j S(ρ_{nodal|j}), τ)` without asserting anything.
pub fn discord_bound(psi: &PureState, nodal: usize, search: &BasisSearch) -> Result<DiscordBound> {
    let kinds = [
        MeasureKind::plain(Measure::DiscordBwd),
        MeasureKind::squared(Measure::Concurrence),
    ];
    let records = monogamy_scores(psi, &kinds, nodal, search)?;
    let bound = nodal_pairs(psi, nodal)?
        .iter()
        .map(unmeasured_conditional_entropy)
        .sum::<Result<f64>>()?;
    Ok(DiscordBound {
        score: records[0].score,
        bound,
        tangle: records[1].score,
    })
}

/// Like [`discord_bound`], but fails when the tangle vanishes and the score
/// exceeds the bound by more than [`BOUND_TOL`].
pub fn theorem4_bound_check(
    psi: &PureState,
    nodal: usize,
    search: &BasisSearch,
) -> Result<DiscordBound> {
    let out = discord_bound(psi, nodal, search)?;
    if out.bound_holds() == Some(false) {
        return Err(Error::InvalidState(format!(
            "zero-tangle discord bound violated: score {} > bound {}",
            out.score, out.bound
        )));
    }
    Ok(out)
}

pub fn koashi_winter_gap(
    psi: &PureState,
    nodal: usize,
    i: usize,
    j: usize,
    search: &BasisSearch,
) -> Result<f64> {
    if nodal == i || nodal == j || i == j {
        return Err(Error::InvalidSubset(format!(
            "qubits {nodal}, {i}, {j} must be distinct"
        )));
    }
    let rho_nj = partial_trace_pure(psi, &[nodal, j])?;
    let rho_ni = partial_trace_pure(psi, &[nodal, i])?;
    let lhs = unmeasured_conditional_entropy(&rho_nj)?
        + quantum_discord_with(&rho_nj, Direction::OnSecond, search)?;
    let rhs = pair_base(&rho_ni, Measure::EntanglementOfFormation, search)?;
    Ok(lhs - rhs)
}

/// `Σ_j [S(ρ_{n|j}) + D←(ρ_{nj})] − Σ_j E(ρ_{nj})` over all `j ≠ nodal`;
/// non-negative for every pure state.
pub fn eof_discord_chain_gap(psi: &PureState, nodal: usize, search: &BasisSearch) -> Result<f64> {
    let mut gap = 0.0;
    for rho in nodal_pairs(psi, nodal)? {
        gap += unmeasured_conditional_entropy(&rho)?
            + quantum_discord_with(&rho, Direction::OnSecond, search)?
            - pair_base(&rho, Measure::EntanglementOfFormation, search)?;
    }
    Ok(gap)
}

/// Share of monogamous states in an ensemble for one measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PercentageRow {
    pub ensemble: EnsembleSpec,
    pub kind: MeasureKind,
    pub nodal: usize,
    pub monogamous_count: u64,
    pub total: u64,
    pub percentage: f64,
    pub classification_epsilon: f64,
}

impl PercentageRow {
    pub fn new(
        ensemble: EnsembleSpec,
        kind: MeasureKind,
        nodal: usize,
        monogamous_count: u64,
        eps: f64,
    ) -> Self {
        let total = ensemble.samples;
        Self {
            ensemble,
            kind,
            nodal,
            monogamous_count,
            total,
            percentage: 100.0 * monogamous_count as f64 / total as f64,
            classification_epsilon: eps,
        }
    }
}

/// Scores of every sample of `spec`, in sample order: `scores[i][k]` is
/// `δ` of `kinds[k]` on sample `i`.
///
/// Samples are evaluated on the current rayon pool; each sample draws from
/// its own seed, so the result does not depend on the number of workers.
pub fn ensemble_scores(
    spec: &EnsembleSpec,
    kinds: &[MeasureKind],
    nodal: usize,
    search: &BasisSearch,
) -> Result<Vec<Vec<f64>>> {
    spec.validate()?;
    search.validate()?;
    if nodal >= spec.n {
        return Err(Error::InvalidSubset(format!(
            "nodal qubit {nodal} outside a {}-qubit register",
            spec.n
        )));
    }
    (0..spec.samples)
        .into_par_iter()
        .map(|i| {
            let psi = spec.sample(i)?;
            Ok(monogamy_scores(&psi, kinds, nodal, search)?
                .into_iter()
                .map(|r| r.score)
                .collect())
        })
        .collect()
}

/// Classifies precomputed scores into one row per kind.
pub fn classify(
    spec: &EnsembleSpec,
    kinds: &[MeasureKind],
    nodal: usize,
    scores: &[Vec<f64>],
    eps: f64,
) -> Vec<PercentageRow> {
    kinds
        .iter()
        .enumerate()
        .map(|(k, &kind)| {
            let count = scores.iter().filter(|s| s[k] >= -eps).count() as u64;
            PercentageRow::new(spec.clone(), kind, nodal, count, eps)
        })
        .collect()
}

/// Percentage of monogamous states for each kind over the ensemble.
pub fn percentage_table(
    spec: &EnsembleSpec,
    kinds: &[MeasureKind],
    nodal: usize,
    eps: f64,
    search: &BasisSearch,
) -> Result<Vec<PercentageRow>> {
    if kinds.is_empty() {
        return Err(Error::InvalidArgument("no measures requested".into()));
    }
    let scores = ensemble_scores(spec, kinds, nodal, search)?;
    Ok(classify(spec, kinds, nodal, &scores, eps))
}

/// Least-squares fit of `log(p_n − p_c)` against `log n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub points: Vec<(f64, f64)>,
    pub p_c: f64,
    /// Negated slope of the log-log fit.
    pub alpha: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
}

/// Fits `p_n ≈ p_c + A·n^{−α}` on a log-log scale.
pub fn scaling_fit(points: &[(f64, f64)], p_c: f64) -> Result<ScalingFit> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument(
            "scaling fit needs at least two points".into(),
        ));
    }
    let mut xs = Vec::with_capacity(points.len());
    let mut ys = Vec::with_capacity(points.len());
    for &(n, p) in points {
        if !(n > 0.0) {
            return Err(Error::OutOfDomain {
                value: n,
                domain: "n > 0",
            });
        }
        if !(p > p_c) {
            return Err(Error::OutOfDomain {
                value: p,
                domain: "p_n > p_c",
            });
        }
        xs.push(n.ln());
        ys.push((p - p_c).ln());
    }
    let m = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / m;
    let mean_y = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument(
            "scaling fit needs at least two distinct n".into(),
        ));
    }
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(ScalingFit {
        points: points.to_vec(),
        p_c,
        alpha: -slope,
        intercept,
        residual: (sse / m).sqrt(),
    })
}

/// Entropy of the nodal marginal; equals the cut value of E, D and Δ on pure states.
pub fn nodal_entropy(psi: &PureState, nodal: usize) -> Result<f64> {
    pure_cut_base(psi, nodal, Measure::EntanglementOfFormation)
}
