//! Pure-state constructors and seeded samplers.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityMatrix};
use crate::rng::{sample_seed, GaussianStream};

/// Largest register held as a dense amplitude vector.
pub const MAX_QUBITS: usize = 12;

const NORM_TOL: f64 = 1e-12;

/// Unit-norm amplitude vector over `n` qubits; qubit 0 is the most significant bit.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Wraps amplitudes that are already normalized to within `1e-12`.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let n = register_size(amps.len())?;
        let norm = norm(&amps);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(Self { n, amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        let n = register_size(amps.len())?;
        let norm = norm(&amps);
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState(format!("cannot normalize vector of norm {norm}")));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n, amps })
    }

    /// Computational-basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        if index >= 1 << n {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    /// Projector `|ψ⟩⟨ψ|` as a density matrix.
    pub fn density(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_pure(self)
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

fn norm(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

fn register_size(len: usize) -> Result<usize> {
    if !len.is_power_of_two() {
        return Err(Error::InvalidState(format!(
            "{len} amplitudes is not a power of two"
        )));
    }
    let n = len.trailing_zeros() as usize;
    check_qubits(n)?;
    Ok(n)
}

fn check_qubits(n: usize) -> Result<()> {
    if !(2..=MAX_QUBITS).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "qubit count {n} outside supported range 2..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

fn check_excitations(n: usize, r: usize, lo: usize, hi: usize) -> Result<()> {
    if r < lo || r > hi {
        return Err(Error::InvalidArgument(format!(
            "excitation count r={r} outside {lo}..={hi} for n={n}"
        )));
    }
    Ok(())
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn weight_indices(n: usize, r: usize) -> impl Iterator<Item = usize> {
    (0..1usize << n).filter(move |i| i.count_ones() as usize == r)
}

fn complex_gaussians(seed: u64, count: usize) -> Vec<Complex64> {
    let mut g = GaussianStream::new(seed);
    (0..count)
        .map(|_| {
            let re = g.next_normal();
            let im = g.next_normal();
            Complex64::new(re, im)
        })
        .collect()
}

/// Haar-random pure state: a normalized vector of `2^n` standard complex Gaussians.
pub fn haar_random_pure(n: usize, seed: u64) -> Result<PureState> {
    check_qubits(n)?;
    PureState::normalized(complex_gaussians(seed, 1 << n))
}

/// `|W_n⟩`: equal superposition of the weight-one basis states.
pub fn w_state(n: usize) -> Result<PureState> {
    dicke_state(n, 1)
}

/// Dicke state `|W_n^r⟩`: equal superposition of all weight-`r` basis states.
pub fn dicke_state(n: usize, r: usize) -> Result<PureState> {
    check_qubits(n)?;
    check_excitations(n, r, 0, n)?;
    let amp = Complex64::new(1.0 / (binomial(n, r) as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for i in weight_indices(n, r) {
        amps[i] = amp;
    }
    Ok(PureState { n, amps })
}

/// Random superposition inside the weight-`r` sector, uniform on its unit sphere.
pub fn generalized_dicke_random(n: usize, r: usize, seed: u64) -> Result<PureState> {
    check_qubits(n)?;
    check_excitations(n, r, 1, n - 1)?;
    let indices: Vec<usize> = weight_indices(n, r).collect();
    let coeffs = complex_gaussians(seed, indices.len());
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for (&i, &z) in indices.iter().zip(&coeffs) {
        amps[i] = z;
    }
    PureState::normalized(amps)
}

/// Random symmetric state `Σ_r a_r |W_n^r⟩` with `(a_0, …, a_n)` uniform on the unit sphere.
pub fn symmetric_random(n: usize, seed: u64) -> Result<PureState> {
    check_qubits(n)?;
    let coeffs = complex_gaussians(seed, n + 1);
    let amps = (0..1usize << n)
        .map(|i| {
            let r = i.count_ones() as usize;
            coeffs[r] / (binomial(n, r) as f64).sqrt()
        })
        .collect();
    PureState::normalized(amps)
}

/// `(|0…0⟩ + |1…1⟩)/√2`.
pub fn ghz_state(n: usize) -> Result<PureState> {
    check_qubits(n)?;
    let s = Complex64::new(0.5f64.sqrt(), 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = s;
    amps[(1 << n) - 1] = s;
    Ok(PureState { n, amps })
}

/// Populations of the two-qubit reduced state of a Dicke state.
///
/// In the basis `{|00⟩, |01⟩, |10⟩, |11⟩}` the reduced state has diagonal
/// `(a, b, b, c)` and a coherence `b` between `|01⟩` and `|10⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DickePopulations {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl DickePopulations {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("n={n} must be at least 2")));
        }
        check_excitations(n, r, 0, n)?;
        let (nf, rf) = (n as f64, r as f64);
        let denom = nf * (nf - 1.0);
        Ok(Self {
            a: (nf - rf) * (nf - rf - 1.0) / denom,
            b: rf * (nf - rf) / denom,
            c: rf * (rf - 1.0) / denom,
        })
    }
}

/// Closed-form two-qubit reduced state of `dicke_state(n, r)`; valid for any `n ≥ 2`.
pub fn dicke_pair_rdm(n: usize, r: usize) -> Result<DensityMatrix> {
    let DickePopulations { a, b, c } = DickePopulations::new(n, r)?;
    let mut m = ComplexMatrix::from_diag(&[a, b, b, c]);
    m[(1, 2)] = Complex64::new(b, 0.0);
    m[(2, 1)] = Complex64::new(b, 0.0);
    Ok(DensityMatrix::trusted(m, vec![0, 1]))
}

/// Closed-form single-qubit reduced state `diag(1 − r/n, r/n)` of `dicke_state(n, r)`.
pub fn dicke_single_rdm(n: usize, r: usize) -> Result<DensityMatrix> {
    DickePopulations::new(n, r)?;
    let p = r as f64 / n as f64;
    Ok(DensityMatrix::trusted(
        ComplexMatrix::from_diag(&[1.0 - p, p]),
        vec![0],
    ))
}

/// Random-state family of a Monte Carlo sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Haar,
    GenDicke,
    Symmetric,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Haar => "haar",
            Family::GenDicke => "gen-dicke",
            Family::Symmetric => "symmetric",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "haar" => Ok(Family::Haar),
            "gen-dicke" => Ok(Family::GenDicke),
            "symmetric" => Ok(Family::Symmetric),
            _ => Err(Error::InvalidArgument(format!("unknown family '{s}'"))),
        }
    }
}

/// A seeded ensemble of random pure states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub family: Family,
    pub n: usize,
    /// Excitation count, used by the generalized Dicke family only.
    pub r: Option<usize>,
    pub samples: u64,
    pub master_seed: u64,
}

impl EnsembleSpec {
    pub fn haar(n: usize, samples: u64, master_seed: u64) -> Self {
        Self {
            family: Family::Haar,
            n,
            r: None,
            samples,
            master_seed,
        }
    }

    pub fn gen_dicke(n: usize, r: usize, samples: u64, master_seed: u64) -> Self {
        Self {
            family: Family::GenDicke,
            n,
            r: Some(r),
            samples,
            master_seed,
        }
    }

    pub fn symmetric(n: usize, samples: u64, master_seed: u64) -> Self {
        Self {
            family: Family::Symmetric,
            n,
            r: None,
            samples,
            master_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_qubits(self.n)?;
        if self.samples == 0 {
            return Err(Error::InvalidArgument("sample count must be positive".into()));
        }
        match (self.family, self.r) {
            (Family::GenDicke, Some(r)) => check_excitations(self.n, r, 1, self.n - 1),
            (Family::GenDicke, None) => Err(Error::InvalidArgument(
                "the gen-dicke family needs an excitation count r".into(),
            )),
            (_, Some(r)) => check_excitations(self.n, r, 0, self.n),
            (_, None) => Ok(()),
        }
    }

    /// The `index`-th state of the ensemble; a pure function of `(spec, index)`.
    pub fn sample(&self, index: u64) -> Result<PureState> {
        let seed = sample_seed(self.master_seed, index);
        match self.family {
            Family::Haar => haar_random_pure(self.n, seed),
            Family::GenDicke => {
                let r = self.r.ok_or_else(|| {
                    Error::InvalidArgument("the gen-dicke family needs r".into())
                })?;
                generalized_dicke_random(self.n, r, seed)
            }
            Family::Symmetric => symmetric_random(self.n, seed),
        }
    }
}
