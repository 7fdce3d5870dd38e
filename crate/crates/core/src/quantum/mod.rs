//! Two spin-1/2 particles: Born probabilities, reduction, and the
//! piecewise wave function between emission and both decisions.

pub mod bell;
mod spinor;
mod state;
mod table;
pub mod timeline;

pub use bell::{chsh_value, optimal_axes, ChshResult, LHV_BOUND};
pub use spinor::{eigenvector, projector, Sign, Spinor, C};
pub use state::{collapse_state, intermediate_state, singlet, StateVector};
pub use table::{
    born_probabilities, conditional_probabilities, lhv_constraints_check, LhvReport, LhvViolation,
    Outcome, ProbabilityTable,
};
pub use timeline::{build_timeline, BranchFactor, Epoch, FactorKind, SpinResult, WaveFunctionTimeline, WaveState};
