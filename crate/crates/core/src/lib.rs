//! Simulation of dissipative entanglement preparation for two Λ-type atoms in
//! fiber-coupled optical cavities.
//!
//! The model keeps the zero- and one-excitation subspaces of two three-level
//! atoms, two cavity modes, and one fiber mode (20 states), drives them with a
//! laser and a microwave in a time-independent rotating frame, and damps them
//! through seven Lindblad channels (fiber loss, cavity leakage, spontaneous
//! emission). The crate provides:
//!
//! - [`hilbert`]: the truncated basis and elementary operators;
//! - [`model`]: the rotating-frame Hamiltonian and the jump operators;
//! - [`spectra`]: closed-form dressed states, their numerical verification,
//!   and the drive couplings between dressed levels;
//! - [`dynamics`]: the vectorized Liouvillian, matrix-exponential propagation,
//!   and steady states;
//! - [`observables`]: fidelities and zero-subspace populations.

pub mod dynamics;
pub mod hilbert;
pub mod model;
pub mod observables;
pub mod spectra;

pub use dynamics::{build_liouvillian, propagate, steady_state, DensityMatrix, Liouvillian, Propagator, TimeSeries};
pub use hilbert::{Atom, AtomLevel, Basis, BasisState, Mode, Operator};
pub use model::{
    hamiltonian, lindblad_set, resonance_detuning, validate_short_fiber, Delta, LindbladChannel, LindbladSet,
    SystemParams,
};
pub use observables::{atomic_fidelity_t, fidelity_t, zero_subspace_populations, ObservableRecord};
pub use spectra::{
    all_dressed_states, analytic_energies, dressed_couplings, dressed_state, jump_image, verify_spectrum,
    CouplingRow, CouplingTable, DressedLabel, DressedState, Drive, SpectrumReport,
};
