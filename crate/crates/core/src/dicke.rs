//! Closed-form monogamy scores of Dicke states `|W_n^r⟩`.
//!
//! All pairs of a Dicke state share the same reduced state, so every score
//! is `cut − (n − 1)·pair` and only the 2×2 and 4×4 analytic reduced states
//! are needed. Nothing here allocates `2^n` amplitudes.

use crate::error::{Error, Result};
use crate::linalg::{h2, shannon_entropy, von_neumann_entropy};
use crate::measures::{work_deficit_one_way_with, BasisSearch, Direction};
use crate::states::{dicke_pair_rdm, dicke_single_rdm, DickePopulations};

/// Populations, entropies and the λ± spectrum entering the discord score.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DickeParams {
    pub n: usize,
    pub r: usize,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Entropy of one qubit.
    pub s1: f64,
    /// Entropy of the single-qubit marginal of a pair, from its populations.
    pub s2: f64,
    /// Entropy of a pair.
    pub s12: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl DickeParams {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        let DickePopulations { a, b, c } = DickePopulations::new(n, r)?;
        let x = r as f64 / n as f64;
        let root = (1.0 - 4.0 * (a * b + b * c + c * a)).max(0.0).sqrt();
        Ok(Self {
            n,
            r,
            a,
            b,
            c,
            s1: h2(x),
            s2: shannon_entropy(&[a + b, b + c]),
            s12: shannon_entropy(&[a, 2.0 * b, c]),
            lambda_plus: 0.5 * (1.0 + root),
            lambda_minus: 0.5 * (1.0 - root),
        })
    }

    /// Minimum measured conditional entropy of the pair state, `H({λ±})`.
    pub fn conditional_entropy(&self) -> f64 {
        shannon_entropy(&[self.lambda_plus, self.lambda_minus])
    }

    /// Discord of one pair, `S₂ − S₁₂ + H({λ±})`.
    pub fn pair_discord(&self) -> f64 {
        self.s2 - self.s12 + self.conditional_entropy()
    }

    /// Concurrence of one pair from the X-state form `max{0, 2(b − √(ac))}`.
    pub fn pair_concurrence(&self) -> f64 {
        (2.0 * (self.b - (self.a * self.c).sqrt())).max(0.0)
    }
}

fn check_interior(n: usize, r: usize, min_n: usize) -> Result<()> {
    if n < min_n || r < 1 || r >= n {
        return Err(Error::InvalidArgument(format!(
            "need n >= {min_n} and 1 <= r <= n-1, got n={n}, r={r}"
        )));
    }
    Ok(())
}

/// Discord monogamy score `S₁ − (n−1)(S₂ − S₁₂ + H({λ±}))` of `|W_n^r⟩`.
pub fn dicke_discord_score(n: usize, r: usize) -> Result<f64> {
    check_interior(n, r, 3)?;
    let p = DickeParams::new(n, r)?;
    Ok(p.s1 - (n - 1) as f64 * p.pair_discord())
}

/// Work-deficit monogamy score of `|W_n^r⟩` with the default optimizer.
pub fn dicke_workdeficit_score(n: usize, r: usize, dir: Direction) -> Result<f64> {
    dicke_workdeficit_score_with(n, r, dir, &BasisSearch::default())
}

/// Work-deficit monogamy score: the pair term is optimized numerically on the
/// analytic 4×4 reduced state.
pub fn dicke_workdeficit_score_with(
    n: usize,
    r: usize,
    dir: Direction,
    search: &BasisSearch,
) -> Result<f64> {
    check_interior(n, r, 2)?;
    let single = von_neumann_entropy(&dicke_single_rdm(n, r)?);
    let pair = work_deficit_one_way_with(&dicke_pair_rdm(n, r)?, dir, search)?;
    Ok(single - (n - 1) as f64 * pair)
}

/// Tangle of `|W_n^r⟩`: `4(r/n)(1 − r/n) − (n−1)·C_pair²`.
pub fn dicke_tangle(n: usize, r: usize) -> Result<f64> {
    let p = DickeParams::new(n, r)?;
    let x = r as f64 / n as f64;
    let c = p.pair_concurrence();
    Ok(4.0 * x * (1.0 - x) - (n - 1) as f64 * c * c)
}
