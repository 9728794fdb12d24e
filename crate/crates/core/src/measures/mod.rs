//! Bipartite quantum correlation measures for two-qubit states and for the
//! `nodal : rest` cut of a pure state.

pub mod discord;
pub mod entanglement;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{partial_trace_pure, von_neumann_entropy, DensityMatrix};
use crate::states::PureState;

pub use discord::{
    dephased_entropy, measured_conditional_entropy, min_conditional_entropy, mutual_information,
    quantum_discord, quantum_discord_with, unmeasured_conditional_entropy, work_deficit_one_way,
    work_deficit_one_way_with, BasisOptimum, BasisSearch, CorrelationForm, Direction,
    MeasurementBasis,
};
pub use entanglement::{
    concurrence_pure_cut, concurrence_two_qubit, eof_from_concurrence, log_negativity,
    negativity, negativity_pure_cut,
};

/// The eight base quantities a monogamy score can be built from.
///
/// Arrows follow the discord convention for both discord and work-deficit:
/// `Fwd` (`→`) measures the nodal (first) qubit of a pair, `Bwd` (`←`)
/// measures the other one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measure {
    Concurrence,
    EntanglementOfFormation,
    Negativity,
    LogNegativity,
    DiscordFwd,
    DiscordBwd,
    WorkDeficitFwd,
    WorkDeficitBwd,
}

impl Measure {
    pub const ALL: [Measure; 8] = [
        Measure::Concurrence,
        Measure::EntanglementOfFormation,
        Measure::Negativity,
        Measure::LogNegativity,
        Measure::DiscordFwd,
        Measure::DiscordBwd,
        Measure::WorkDeficitFwd,
        Measure::WorkDeficitBwd,
    ];

    /// Measured side, for the measurement-based quantities.
    pub fn direction(self) -> Option<Direction> {
        match self {
            Measure::DiscordFwd | Measure::WorkDeficitFwd => Some(Direction::OnFirst),
            Measure::DiscordBwd | Measure::WorkDeficitBwd => Some(Direction::OnSecond),
            _ => None,
        }
    }

    fn stem(self) -> &'static str {
        match self {
            Measure::Concurrence => "c",
            Measure::EntanglementOfFormation => "e",
            Measure::Negativity => "n",
            Measure::LogNegativity => "ln",
            Measure::DiscordFwd | Measure::DiscordBwd => "d",
            Measure::WorkDeficitFwd | Measure::WorkDeficitBwd => "wd",
        }
    }
}

/// One of the sixteen scored quantities: a base measure, optionally squared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MeasureKind {
    pub measure: Measure,
    pub squared: bool,
}

impl MeasureKind {
    pub const fn new(measure: Measure, squared: bool) -> Self {
        Self { measure, squared }
    }

    pub const fn plain(measure: Measure) -> Self {
        Self::new(measure, false)
    }

    pub const fn squared(measure: Measure) -> Self {
        Self::new(measure, true)
    }

    /// All sixteen kinds, each base measure followed by its square.
    pub fn all() -> Vec<MeasureKind> {
        Measure::ALL
            .iter()
            .flat_map(|&m| [Self::plain(m), Self::squared(m)])
            .collect()
    }

    /// Applies the squaring (if any) to a base value.
    #[inline]
    pub fn transform(self, value: f64) -> f64 {
        if self.squared {
            value * value
        } else {
            value
        }
    }

    /// Short name as used on the command line: `c`, `c2`, `d2-fwd`, `wd-bwd`, ...
    pub fn flag(self) -> String {
        let sq = if self.squared { "2" } else { "" };
        match self.measure.direction() {
            None => format!("{}{}", self.measure.stem(), sq),
            Some(Direction::OnFirst) => format!("{}{}-fwd", self.measure.stem(), sq),
            Some(Direction::OnSecond) => format!("{}{}-bwd", self.measure.stem(), sq),
        }
    }

    /// Parses a comma-separated list of flags; `all` expands to every kind.
    pub fn parse_list(list: &str) -> Result<Vec<MeasureKind>> {
        let mut out = Vec::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            if item == "all" {
                out.extend(Self::all());
            } else {
                out.push(item.parse()?);
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidArgument("empty measure list".into()));
        }
        let mut seen = Vec::with_capacity(out.len());
        out.retain(|k| {
            let fresh = !seen.contains(k);
            seen.push(*k);
            fresh
        });
        Ok(out)
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.flag())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeasureKind::all()
            .into_iter()
            .find(|k| k.flag() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown measure '{s}'")))
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

/// Base value (before squaring) of `measure` across the `nodal : rest` cut of a pure state.
///
/// For pure states entanglement of formation, discord and one-way
/// work-deficit all reduce to the entropy of the nodal marginal.
pub fn pure_cut_base(psi: &PureState, nodal: usize, measure: Measure) -> Result<f64> {
    check_nodal(psi, nodal)?;
    match measure {
        Measure::Concurrence => concurrence_pure_cut(psi, nodal),
        Measure::Negativity => negativity_pure_cut(psi, nodal),
        Measure::LogNegativity => {
            negativity_pure_cut(psi, nodal).map(entanglement::log_negativity_from)
        }
        Measure::EntanglementOfFormation
        | Measure::DiscordFwd
        | Measure::DiscordBwd
        | Measure::WorkDeficitFwd
        | Measure::WorkDeficitBwd => {
            Ok(von_neumann_entropy(&partial_trace_pure(psi, &[nodal])?))
        }
    }
}

/// Value of `kind` across the `nodal : rest` cut of a pure state.
pub fn pure_cut_value(psi: &PureState, nodal: usize, kind: MeasureKind) -> Result<f64> {
    pure_cut_base(psi, nodal, kind.measure).map(|v| kind.transform(v))
}

/// Base value of `measure` on a two-qubit state whose first qubit is the nodal one.
pub fn pair_base(rho: &DensityMatrix, measure: Measure, search: &BasisSearch) -> Result<f64> {
    let first = &rho.qubits()[..1];
    match measure {
        Measure::Concurrence => concurrence_two_qubit(rho),
        Measure::EntanglementOfFormation => {
            eof_from_concurrence(concurrence_two_qubit(rho)?)
        }
        Measure::Negativity => negativity(rho, first),
        Measure::LogNegativity => log_negativity(rho, first),
        Measure::DiscordFwd => quantum_discord_with(rho, Direction::OnFirst, search),
        Measure::DiscordBwd => quantum_discord_with(rho, Direction::OnSecond, search),
        Measure::WorkDeficitFwd => work_deficit_one_way_with(rho, Direction::OnFirst, search),
        Measure::WorkDeficitBwd => work_deficit_one_way_with(rho, Direction::OnSecond, search),
    }
}

/// Value of `kind` on a two-qubit state whose first qubit is the nodal one.
pub fn pair_value(rho: &DensityMatrix, kind: MeasureKind, search: &BasisSearch) -> Result<f64> {
    pair_base(rho, kind.measure, search).map(|v| kind.transform(v))
}
