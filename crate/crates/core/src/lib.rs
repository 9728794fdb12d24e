//! Bipartite quantum correlation measures and their monogamy scores for
//! multiqubit pure states.
//!
//! The crate is organized bottom-up:
//!
//! - [`linalg`]: small dense complex matrices, partial trace and transpose,
//!   hermitian eigenvalues, entropies.
//! - [`states`]: W, Dicke, GHZ and seeded random-state families.
//! - [`measures`]: concurrence, entanglement of formation, negativity,
//!   logarithmic negativity, quantum discord and one-way work-deficit.
//! - [`dicke`]: closed-form scores of Dicke states, usable for large `n`.
//! - [`monogamy`]: monogamy scores, tangle, bound checkers, Monte Carlo
//!   percentage tables and the power-law fit.
//! - [`cli`]: the `qorrelate` command-line front end.
//!
//! Qubits are labelled from 0 in the library; qubit 0 is the most
//! significant bit of a basis index and is the default nodal observer.

pub mod cli;
pub mod dicke;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod monogamy;
pub mod rng;
pub mod states;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix};
pub use measures::{BasisSearch, Direction, Measure, MeasureKind, MeasurementBasis};
pub use monogamy::{MonogamyRecord, PercentageRow, ScalingFit};
pub use states::{EnsembleSpec, Family, PureState};
