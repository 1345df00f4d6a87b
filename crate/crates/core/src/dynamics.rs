//! Lindblad superoperator assembly, matrix-exponential propagation over
//! uniform time grids, and steady-state extraction.
//!
//! Density matrices are vectorized column-major: `vec(ρ)[i + n·j] = ρ[i,j]`,
//! so `vec(AρB) = (Bᵀ ⊗ A)·vec(ρ)`. The master equation
//! `ρ̇ = i[ρ,H] + Σ_j (L_j ρ L_j† − ½{L_j†L_j, ρ})` becomes
//! `vec(ρ̇) = 𝓛·vec(ρ)` with
//! `𝓛 = i(Hᵀ⊗I − I⊗H) + Σ_j [L̄_j⊗L_j − ½ I⊗(L_j†L_j) − ½ (L_j†L_j)ᵀ⊗I]`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::hilbert::{Basis, BasisState, Operator};
use crate::model::LindbladSet;
use crate::observables::{record, ObservableRecord};

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("operands live on different bases")]
    BasisMismatch,
    #[error("time grid must be non-empty and start at 0, got first point {0}")]
    BadGridStart(f64),
    #[error("time grid is not uniform at index {index}: step {got} vs {expected}")]
    NonUniformGrid { index: usize, expected: f64, got: f64 },
    #[error("propagation step must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("steady state is not unique: Liouvillian null space has dimension {dim}")]
    DegenerateSteadyState { dim: usize },
    #[error("not a valid density matrix: {0}")]
    InvalidDensity(String),
    #[error("state {0} is outside the basis")]
    UnknownState(String),
}

/// Hermitian, unit-trace, positive-semidefinite state on a [`Basis`].
#[derive(Clone, Debug)]
pub struct DensityMatrix<'b> {
    basis: &'b Basis,
    matrix: DMatrix<C64>,
}

impl<'b> DensityMatrix<'b> {
    /// |ψ⟩⟨ψ| for a (renormalized) pure state.
    pub fn from_pure(basis: &'b Basis, ket: &DVector<C64>) -> Result<Self, DynamicsError> {
        if ket.len() != basis.len() {
            return Err(DynamicsError::BasisMismatch);
        }
        let norm = ket.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(DynamicsError::InvalidDensity(format!("pure state norm {norm}")));
        }
        let normalized = ket / C64::new(norm, 0.0);
        Ok(Self { basis, matrix: &normalized * normalized.adjoint() })
    }

    pub fn from_basis_state(basis: &'b Basis, state: &BasisState) -> Result<Self, DynamicsError> {
        let ket = basis.ket(state).ok_or_else(|| DynamicsError::UnknownState(state.to_string()))?;
        Self::from_pure(basis, &ket)
    }

    /// Wrap an arbitrary matrix; use [`DensityMatrix::validate`] to check the
    /// state invariants.
    pub fn from_matrix(basis: &'b Basis, matrix: DMatrix<C64>) -> Result<Self, DynamicsError> {
        if matrix.nrows() != basis.len() || matrix.ncols() != basis.len() {
            return Err(DynamicsError::BasisMismatch);
        }
        Ok(Self { basis, matrix })
    }

    pub fn basis(&self) -> &'b Basis {
        self.basis
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// (ρ + ρ†)/2.
    pub fn hermitized(&self) -> Self {
        Self { basis: self.basis, matrix: (&self.matrix + self.matrix.adjoint()) * C64::new(0.5, 0.0) }
    }

    /// Smallest eigenvalue of the hermitized matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.matrix + self.matrix.adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(herm);
        eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Check the density-matrix invariants: Hermitian to 1e-10, unit trace to
    /// 1e-8, smallest eigenvalue above −1e-8.
    pub fn validate(&self) -> Result<(), DynamicsError> {
        let herm_dev = (&self.matrix - self.matrix.adjoint()).norm() / 2.0;
        if !(herm_dev <= 1e-10) {
            return Err(DynamicsError::InvalidDensity(format!("Hermiticity deviation {herm_dev:.3e}")));
        }
        let trace_err = (self.trace() - C64::new(1.0, 0.0)).norm();
        if !(trace_err <= 1e-8) {
            return Err(DynamicsError::InvalidDensity(format!("trace error {trace_err:.3e}")));
        }
        let min_eig = self.min_eigenvalue();
        if !(min_eig >= -1e-8) {
            return Err(DynamicsError::InvalidDensity(format!("minimum eigenvalue {min_eig:.3e}")));
        }
        Ok(())
    }
}

fn vec_of(m: &DMatrix<C64>) -> DVector<C64> {
    DVector::from_column_slice(m.as_slice())
}

fn unvec(n: usize, v: &DVector<C64>) -> DMatrix<C64> {
    DMatrix::from_column_slice(n, n, v.as_slice())
}

/// The master-equation generator as a dense matrix on vectorized states.
#[derive(Clone, Debug)]
pub struct Liouvillian<'b> {
    basis: &'b Basis,
    matrix: DMatrix<C64>,
}

/// Assemble the vectorized generator from the Hamiltonian and the jump
/// operators.
pub fn build_liouvillian<'b>(h: &Operator<'b>, ls: &LindbladSet<'b>) -> Result<Liouvillian<'b>, DynamicsError> {
    if h.basis() != ls.basis() {
        return Err(DynamicsError::BasisMismatch);
    }
    let n = h.dim();
    let eye = DMatrix::<C64>::identity(n, n);
    let i = C64::new(0.0, 1.0);
    let mut sup = (h.matrix().transpose().kronecker(&eye) - eye.kronecker(h.matrix())) * i;
    for (_, l) in ls.iter() {
        let lm = l.matrix();
        let ldl = lm.adjoint() * lm;
        sup += lm.conjugate().kronecker(lm);
        sup -= (eye.kronecker(&ldl) + ldl.transpose().kronecker(&eye)) * C64::new(0.5, 0.0);
    }
    Ok(Liouvillian { basis: h.basis(), matrix: sup })
}

impl<'b> Liouvillian<'b> {
    pub fn basis(&self) -> &'b Basis {
        self.basis
    }

    /// The n²×n² generator matrix.
    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// 𝓛(ρ) as a matrix.
    pub fn apply(&self, rho: &DensityMatrix<'_>) -> DMatrix<C64> {
        unvec(self.basis.len(), &(&self.matrix * vec_of(rho.matrix())))
    }

    /// exp(step·𝓛) for a fixed grid step.
    pub fn propagator(&self, step: f64) -> Result<Propagator<'b>, DynamicsError> {
        if !(step.is_finite() && step > 0.0) {
            return Err(DynamicsError::BadStep(step));
        }
        let matrix = (&self.matrix * C64::new(step, 0.0)).exp();
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(DynamicsError::Numerical(format!("exp({step}·L) produced non-finite entries")));
        }
        Ok(Propagator { basis: self.basis, step, matrix })
    }
}

/// Precomputed exp(step·𝓛); one application advances a state by one grid
/// step.
#[derive(Clone, Debug)]
pub struct Propagator<'b> {
    basis: &'b Basis,
    step: f64,
    matrix: DMatrix<C64>,
}

impl<'b> Propagator<'b> {
    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn advance(&self, rho: &DensityMatrix<'b>) -> Result<DensityMatrix<'b>, DynamicsError> {
        if rho.basis() != self.basis {
            return Err(DynamicsError::BasisMismatch);
        }
        let v = &self.matrix * vec_of(rho.matrix());
        if v.iter().any(|x| !x.is_finite()) {
            return Err(DynamicsError::Numerical("propagation produced non-finite state".into()));
        }
        Ok(DensityMatrix { basis: self.basis, matrix: unvec(self.basis.len(), &v) })
    }
}

/// Observables over a uniform time grid, plus the reachable final state.
#[derive(Clone, Debug)]
pub struct TimeSeries<'b> {
    pub times: Vec<f64>,
    pub records: Vec<ObservableRecord>,
    pub final_state: DensityMatrix<'b>,
}

fn check_grid(t_grid: &[f64]) -> Result<Option<f64>, DynamicsError> {
    let Some(&first) = t_grid.first() else {
        return Err(DynamicsError::BadGridStart(f64::NAN));
    };
    if !(first.abs() <= 1e-12) {
        return Err(DynamicsError::BadGridStart(first));
    }
    if t_grid.len() == 1 {
        return Ok(None);
    }
    let step = t_grid[1] - t_grid[0];
    if !(step.is_finite() && step > 0.0) {
        return Err(DynamicsError::BadStep(step));
    }
    for (k, w) in t_grid.windows(2).enumerate() {
        let dk = w[1] - w[0];
        if (dk - step).abs() > 1e-9 * step.max(1e-300) {
            return Err(DynamicsError::NonUniformGrid { index: k + 1, expected: step, got: dk });
        }
    }
    Ok(Some(step))
}

/// March `rho0` across the grid with one precomputed matrix exponential,
/// recording observables at every grid point. States are re-symmetrized for
/// recording only; the stepped state itself is never touched.
pub fn propagate<'b>(
    rho0: &DensityMatrix<'b>,
    liouvillian: &Liouvillian<'b>,
    t_grid: &[f64],
) -> Result<TimeSeries<'b>, DynamicsError> {
    if rho0.basis() != liouvillian.basis() {
        return Err(DynamicsError::BasisMismatch);
    }
    let step = check_grid(t_grid)?;
    let propagator = step.map(|h| liouvillian.propagator(h)).transpose()?;

    let mut state = rho0.clone();
    let mut records = Vec::with_capacity(t_grid.len());
    let mut last_recorded = state.hermitized();
    records.push(record(&last_recorded));
    for (k, _) in t_grid.iter().enumerate().skip(1) {
        let propagator = propagator.as_ref().expect("multi-point grid has a propagator");
        state = propagator.advance(&state).map_err(|e| match e {
            DynamicsError::Numerical(msg) => DynamicsError::Numerical(format!("{msg} at grid index {k}")),
            other => other,
        })?;
        last_recorded = state.hermitized();
        records.push(record(&last_recorded));
    }
    Ok(TimeSeries { times: t_grid.to_vec(), records, final_state: last_recorded })
}

/// Relative singular-value threshold below which a direction counts as part
/// of the Liouvillian null space.
pub const NULL_SPACE_TOL: f64 = 1e-10;

/// Solve 𝓛(ρ) = 0 with Tr ρ = 1 by extracting the smallest-singular-value
/// direction. A null space of dimension above one is reported as a
/// degeneracy instead of picking an arbitrary member.
pub fn steady_state<'b>(liouvillian: &Liouvillian<'b>) -> Result<DensityMatrix<'b>, DynamicsError> {
    let svd = liouvillian.matrix.clone().svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested right singular vectors");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let null: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] < NULL_SPACE_TOL * sigma_max)
        .collect();
    match null.len() {
        0 => Err(DynamicsError::Numerical("Liouvillian has no null direction".into())),
        1 => {
            let n = liouvillian.basis.len();
            let v: DVector<C64> = v_t.row(null[0]).adjoint();
            let raw = unvec(n, &v);
            let trace = raw.trace();
            if trace.norm() < 1e-10 {
                return Err(DynamicsError::Numerical("stationary direction is traceless".into()));
            }
            let scaled = raw / trace;
            let state =
                DensityMatrix { basis: liouvillian.basis, matrix: (&scaled + scaled.adjoint()) * C64::new(0.5, 0.0) };
            state.validate().map_err(|e| DynamicsError::Numerical(format!("steady state failed validation: {e}")))?;
            Ok(state)
        }
        dim => Err(DynamicsError::DegenerateSteadyState { dim }),
    }
}
