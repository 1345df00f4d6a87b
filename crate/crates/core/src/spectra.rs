//! Analytic dressed states of the drive-free atom-cavity-fiber Hamiltonian,
//! their verification against numerical diagonalization, and the drive
//! couplings they induce between the zero- and one-excitation blocks.
//!
//! The closed forms use the coupling algebra g₁² = g² + 2ν²,
//! g₂² = g² − 2ν², g₃² = √(g⁴ + 4ν⁴). Energies are stored as
//! `excitation · Δ' + offset` so the same data serves any rotating-frame
//! detuning.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::hilbert::{singlet_ket, triplet_ket, AtomLevel, Basis, BasisState, Operator};
use crate::model::{
    hamiltonian, laser_hamiltonian, lindblad_set, microwave_hamiltonian, LindbladChannel, ModelError, SystemParams,
};

const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Error)]
pub enum SpectraError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("dressed-state algebra needs g1^2 >= g3^2; got g1^2 = {g1_sq}, g3^2 = {g3_sq} at g = {g}, nu = {nu}")]
    ComplexSpectrum { g: f64, nu: f64, g1_sq: f64, g3_sq: f64 },
    #[error("spectrum verification requires drive-free parameters (omega = omega_mw = 0)")]
    DrivenParameters,
    #[error("basis does not contain the required state {0}")]
    MissingState(String),
}

/// Labels for the twenty analytic eigenstates in the zero- and one-excitation
/// blocks.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum DressedLabel {
    Zero00,
    ZeroS,
    ZeroT,
    Zero11,
    Phi1,
    Phi2,
    Phi3,
    Phi4,
    Phi5,
    Phi6,
    Phi7,
    Phi8,
    T1,
    S1,
    T2,
    S2,
    T3,
    S3,
    T4,
    S4,
}

impl DressedLabel {
    /// Canonical order: the zero-excitation block, then the one-excitation
    /// states in table order with degenerate T/S partners adjacent.
    pub const ALL: [DressedLabel; 20] = [
        DressedLabel::Zero00,
        DressedLabel::ZeroS,
        DressedLabel::ZeroT,
        DressedLabel::Zero11,
        DressedLabel::Phi1,
        DressedLabel::Phi2,
        DressedLabel::Phi3,
        DressedLabel::Phi4,
        DressedLabel::Phi5,
        DressedLabel::Phi6,
        DressedLabel::Phi7,
        DressedLabel::Phi8,
        DressedLabel::T1,
        DressedLabel::S1,
        DressedLabel::T2,
        DressedLabel::S2,
        DressedLabel::T3,
        DressedLabel::S3,
        DressedLabel::T4,
        DressedLabel::S4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DressedLabel::Zero00 => "00",
            DressedLabel::ZeroS => "S",
            DressedLabel::ZeroT => "T",
            DressedLabel::Zero11 => "11",
            DressedLabel::Phi1 => "phi1",
            DressedLabel::Phi2 => "phi2",
            DressedLabel::Phi3 => "phi3",
            DressedLabel::Phi4 => "phi4",
            DressedLabel::Phi5 => "phi5",
            DressedLabel::Phi6 => "phi6",
            DressedLabel::Phi7 => "phi7",
            DressedLabel::Phi8 => "phi8",
            DressedLabel::T1 => "T1",
            DressedLabel::S1 => "S1",
            DressedLabel::T2 => "T2",
            DressedLabel::S2 => "S2",
            DressedLabel::T3 => "T3",
            DressedLabel::S3 => "S3",
            DressedLabel::T4 => "T4",
            DressedLabel::S4 => "S4",
        }
    }

    fn canonical_index(self) -> usize {
        DressedLabel::ALL.iter().position(|l| *l == self).unwrap()
    }
}

impl std::fmt::Display for DressedLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Eigenenergy of the drive-free Hamiltonian, stored frame-independently as
/// `excitation · Δ' + offset`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DressedEnergy {
    pub excitation: u32,
    pub offset: f64,
}

impl DressedEnergy {
    pub fn value(&self, delta: f64) -> f64 {
        f64::from(self.excitation) * delta + self.offset
    }
}

/// One analytic eigenstate: amplitude vector over the truncated basis plus
/// its frame-independent energy.
#[derive(Clone, Debug)]
pub struct DressedState<'b> {
    pub label: DressedLabel,
    pub vector: DVector<C64>,
    pub energy: DressedEnergy,
    basis: &'b Basis,
}

impl<'b> DressedState<'b> {
    pub fn basis(&self) -> &'b Basis {
        self.basis
    }
}

/// g₁², g₂², g₃² and friends; g₂² may legitimately be negative.
struct CouplingAlgebra {
    g2_sq: f64,
    g3_sq: f64,
    g1: f64,
    /// √(g₁² − g₃²), real everywhere in the valid region.
    diff_root: f64,
    /// √(g₁² + g₃²).
    sum_root: f64,
}

impl CouplingAlgebra {
    fn new(g: f64, nu: f64) -> Result<Self, SpectraError> {
        if !(g.is_finite() && nu.is_finite()) || g <= 0.0 || nu <= 0.0 {
            return Err(ModelError::NonPositive { name: if g <= 0.0 { "g" } else { "nu" }, value: g.min(nu) }.into());
        }
        let g1_sq = g * g + 2.0 * nu * nu;
        let g2_sq = g * g - 2.0 * nu * nu;
        let g3_sq = (g.powi(4) + 4.0 * nu.powi(4)).sqrt();
        if g1_sq < g3_sq {
            // algebraically unreachable for g, nu > 0 (g1^4 - g3^4 = 4 g^2 nu^2)
            return Err(SpectraError::ComplexSpectrum { g, nu, g1_sq, g3_sq });
        }
        Ok(Self {
            g2_sq,
            g3_sq,
            g1: g1_sq.sqrt(),
            diff_root: (g1_sq - g3_sq).sqrt(),
            sum_root: (g1_sq + g3_sq).sqrt(),
        })
    }
}

/// All twenty analytic energies in canonical label order.
pub fn analytic_energies(g: f64, nu: f64) -> Result<Vec<(DressedLabel, DressedEnergy)>, SpectraError> {
    let alg = CouplingAlgebra::new(g, nu)?;
    let e = |excitation: u32, offset: f64| DressedEnergy { excitation, offset };
    Ok(vec![
        (DressedLabel::Zero00, e(0, 0.0)),
        (DressedLabel::ZeroS, e(0, 0.0)),
        (DressedLabel::ZeroT, e(0, 0.0)),
        (DressedLabel::Zero11, e(0, 0.0)),
        (DressedLabel::Phi1, e(1, 0.0)),
        (DressedLabel::Phi2, e(1, -SQRT_2 * nu)),
        (DressedLabel::Phi3, e(1, SQRT_2 * nu)),
        (DressedLabel::Phi4, e(1, 0.0)),
        (DressedLabel::Phi5, e(1, -g)),
        (DressedLabel::Phi6, e(1, g)),
        (DressedLabel::Phi7, e(1, -alg.g1)),
        (DressedLabel::Phi8, e(1, alg.g1)),
        (DressedLabel::T1, e(1, -alg.diff_root / SQRT_2)),
        (DressedLabel::S1, e(1, -alg.diff_root / SQRT_2)),
        (DressedLabel::T2, e(1, alg.diff_root / SQRT_2)),
        (DressedLabel::S2, e(1, alg.diff_root / SQRT_2)),
        (DressedLabel::T3, e(1, -alg.sum_root / SQRT_2)),
        (DressedLabel::S3, e(1, -alg.sum_root / SQRT_2)),
        (DressedLabel::T4, e(1, alg.sum_root / SQRT_2)),
        (DressedLabel::S4, e(1, alg.sum_root / SQRT_2)),
    ])
}

fn state(a: AtomLevel, b: AtomLevel, na: u8, nf: u8, nb: u8) -> BasisState {
    BasisState::new(a, b, na, nf, nb)
}

/// Components listed in the order they are written in the closed-form
/// expression; the leading coefficient fixes the overall sign.
fn assemble(basis: &Basis, components: &[(f64, BasisState)]) -> Result<DVector<C64>, SpectraError> {
    let mut v = DVector::zeros(basis.len());
    for (amp, s) in components {
        let i = basis.index_of(s).ok_or_else(|| SpectraError::MissingState(s.to_string()))?;
        v[i] += C64::new(*amp, 0.0);
    }
    let flip = components.iter().find(|(amp, _)| amp.abs() > 1e-14).map(|(amp, _)| *amp < 0.0).unwrap_or(false);
    if flip {
        v = -v;
    }
    Ok(v)
}

/// Build one analytic dressed state from its closed form. The overall phase
/// makes the first-written coefficient positive.
pub fn dressed_state<'b>(label: DressedLabel, basis: &'b Basis, g: f64, nu: f64) -> Result<DressedState<'b>, SpectraError> {
    use AtomLevel::{E, G0, G1};
    let alg = CouplingAlgebra::new(g, nu)?;
    let energy = analytic_energies(g, nu)?
        .into_iter()
        .find(|(l, _)| *l == label)
        .map(|(_, e)| e)
        .expect("analytic_energies covers every label");

    let vector = match label {
        DressedLabel::Zero00 => assemble(basis, &[(1.0, state(G0, G0, 0, 0, 0))])?,
        DressedLabel::ZeroS => singlet_ket(basis),
        DressedLabel::ZeroT => triplet_ket(basis),
        DressedLabel::Zero11 => assemble(basis, &[(1.0, state(G1, G1, 0, 0, 0))])?,
        DressedLabel::Phi1 => assemble(
            basis,
            &[(1.0 / SQRT_2, state(G0, G0, 1, 0, 0)), (-1.0 / SQRT_2, state(G0, G0, 0, 0, 1))],
        )?,
        DressedLabel::Phi2 => assemble(
            basis,
            &[
                (0.5, state(G0, G0, 1, 0, 0)),
                (0.5, state(G0, G0, 0, 0, 1)),
                (-SQRT_2 / 2.0, state(G0, G0, 0, 1, 0)),
            ],
        )?,
        DressedLabel::Phi3 => assemble(
            basis,
            &[
                (0.5, state(G0, G0, 1, 0, 0)),
                (0.5, state(G0, G0, 0, 0, 1)),
                (SQRT_2 / 2.0, state(G0, G0, 0, 1, 0)),
            ],
        )?,
        DressedLabel::Phi4 => {
            let norm = (2.0 + (g / nu).powi(2)).sqrt();
            assemble(
                basis,
                &[
                    (1.0 / norm, state(E, G1, 0, 0, 0)),
                    (1.0 / norm, state(G1, E, 0, 0, 0)),
                    (-(g / nu) / norm, state(G1, G1, 0, 1, 0)),
                ],
            )?
        }
        DressedLabel::Phi5 => assemble(
            basis,
            &[
                (0.5, state(G1, G1, 0, 0, 1)),
                (0.5, state(E, G1, 0, 0, 0)),
                (-0.5, state(G1, E, 0, 0, 0)),
                (-0.5, state(G1, G1, 1, 0, 0)),
            ],
        )?,
        DressedLabel::Phi6 => assemble(
            basis,
            &[
                (0.5, state(G1, G1, 1, 0, 0)),
                (0.5, state(E, G1, 0, 0, 0)),
                (-0.5, state(G1, E, 0, 0, 0)),
                (-0.5, state(G1, G1, 0, 0, 1)),
            ],
        )?,
        DressedLabel::Phi7 | DressedLabel::Phi8 => {
            let sign = if label == DressedLabel::Phi7 { -1.0 } else { 1.0 };
            let norm = (2.0 * (alg.g1 / g).powi(2) + (2.0 * nu / g).powi(2) + 2.0).sqrt();
            assemble(
                basis,
                &[
                    (1.0 / norm, state(E, G1, 0, 0, 0)),
                    (1.0 / norm, state(G1, E, 0, 0, 0)),
                    ((2.0 * nu / g) / norm, state(G1, G1, 0, 1, 0)),
                    (sign * (alg.g1 / g) / norm, state(G1, G1, 0, 0, 1)),
                    (sign * (alg.g1 / g) / norm, state(G1, G1, 1, 0, 0)),
                ],
            )?
        }
        DressedLabel::T1 | DressedLabel::S1 | DressedLabel::T2 | DressedLabel::S2 => {
            let denom = (2.0 * (alg.g3_sq * alg.g3_sq + g * g * alg.g3_sq - 2.0 * alg.g3_sq * nu * nu)).sqrt() / (g * nu);
            let c100 = alg.diff_root * (g * g + alg.g3_sq) / (2.0 * SQRT_2 * g * nu * nu);
            let c010 = -(alg.g2_sq + alg.g3_sq) / (2.0 * g * nu);
            let c001 = -alg.diff_root / (SQRT_2 * g);
            // going 1 -> 2 flips the cavity-photon coefficients but not the
            // fiber-photon one
            let (outer, pair_sign) = match label {
                DressedLabel::T1 => (1.0, 1.0),
                DressedLabel::S1 => (1.0, -1.0),
                DressedLabel::T2 => (-1.0, 1.0),
                DressedLabel::S2 => (-1.0, -1.0),
                _ => unreachable!(),
            };
            ts_state(basis, outer * c100, c010, outer * c001, pair_sign, denom)?
        }
        DressedLabel::T3 | DressedLabel::S3 | DressedLabel::T4 | DressedLabel::S4 => {
            let denom = (2.0 * (alg.g3_sq * alg.g3_sq - g * g * alg.g3_sq + 2.0 * alg.g3_sq * nu * nu)).sqrt() / (g * nu);
            let d010 = (alg.g3_sq - alg.g2_sq) / (2.0 * g * nu);
            let (c100, c001, pair_sign) = match label {
                DressedLabel::T3 => (alg.sum_root * (g * g - alg.g3_sq) / (2.0 * SQRT_2 * g * nu * nu), -alg.sum_root / (SQRT_2 * g), 1.0),
                DressedLabel::S3 => (alg.sum_root * (g * g - alg.g3_sq) / (2.0 * SQRT_2 * g * nu * nu), -alg.sum_root / (SQRT_2 * g), -1.0),
                DressedLabel::T4 => (alg.sum_root * (alg.g3_sq - g * g) / (2.0 * SQRT_2 * g * nu * nu), alg.sum_root / (SQRT_2 * g), 1.0),
                DressedLabel::S4 => (alg.sum_root * (alg.g3_sq - g * g) / (2.0 * SQRT_2 * g * nu * nu), alg.sum_root / (SQRT_2 * g), -1.0),
                _ => unreachable!(),
            };
            ts_state(basis, c100, d010, c001, pair_sign, denom)?
        }
    };

    debug_assert!((vector.norm() - 1.0).abs() < 1e-12, "{label}: closed form must be normalized");
    Ok(DressedState { label, vector, energy, basis })
}

/// Common shape of the eight T/S eigenstates:
/// `[c100 (|01,100⟩ ± |10,001⟩) + c010 (|01,010⟩ ± |10,010⟩)
///   + c001 (|01,001⟩ ± |10,100⟩) + (|0e,000⟩ ± |e0,000⟩)] / denom`
/// with `+` for T-type and `−` for S-type partners.
fn ts_state(
    basis: &Basis,
    c100: f64,
    c010: f64,
    c001: f64,
    pair_sign: f64,
    denom: f64,
) -> Result<DVector<C64>, SpectraError> {
    use AtomLevel::{E, G0, G1};
    assemble(
        basis,
        &[
            (c100 / denom, state(G0, G1, 1, 0, 0)),
            (pair_sign * c100 / denom, state(G1, G0, 0, 0, 1)),
            (c010 / denom, state(G0, G1, 0, 1, 0)),
            (pair_sign * c010 / denom, state(G1, G0, 0, 1, 0)),
            (c001 / denom, state(G0, G1, 0, 0, 1)),
            (pair_sign * c001 / denom, state(G1, G0, 1, 0, 0)),
            (1.0 / denom, state(G0, E, 0, 0, 0)),
            (pair_sign / denom, state(E, G0, 0, 0, 0)),
        ],
    )
}

/// All twenty dressed states in canonical order.
pub fn all_dressed_states<'b>(basis: &'b Basis, g: f64, nu: f64) -> Result<Vec<DressedState<'b>>, SpectraError> {
    DressedLabel::ALL.iter().map(|l| dressed_state(*l, basis, g, nu)).collect()
}

/// Per-state outcome of the analytic-vs-numerical comparison.
#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    pub label: DressedLabel,
    /// Analytic eigenvalue in the rotating frame.
    pub energy: f64,
    /// Closest numerically computed eigenvalue.
    pub nearest_eigenvalue: f64,
    pub energy_residual: f64,
    /// ‖Hv − Ev‖ for the analytic vector.
    pub eigen_residual: f64,
    /// Frobenius distance between the analytic and numerical projectors of
    /// the state's degeneracy cluster.
    pub subspace_distance: f64,
    pub matched: bool,
}

/// Result of [`verify_spectrum`].
#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub entries: Vec<SpectrumEntry>,
    pub max_energy_residual: f64,
    pub max_eigen_residual: f64,
    pub max_subspace_distance: f64,
}

impl SpectrumReport {
    pub fn is_success(&self) -> bool {
        self.entries.iter().all(|e| e.matched)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SpectrumEntry> {
        self.entries.iter().filter(|e| !e.matched)
    }
}

/// Eigenvalue agreement required for a match.
pub const ENERGY_TOL: f64 = 1e-9;

/// Diagonalize the drive-free Hamiltonian numerically and match every
/// analytic dressed state to it: eigenvalues within [`ENERGY_TOL`],
/// eigenvectors by per-state residual, and degenerate clusters by projector
/// distance (numerical eigenvectors inside a cluster are gauge-arbitrary).
pub fn verify_spectrum(basis: &Basis, params: &SystemParams) -> Result<SpectrumReport, SpectraError> {
    if params.omega != 0.0 || params.omega_mw != 0.0 {
        return Err(SpectraError::DrivenParameters);
    }
    let states = all_dressed_states(basis, params.g, params.nu)?;
    verify_spectrum_against(basis, params, &states)
}

fn verify_spectrum_against(
    basis: &Basis,
    params: &SystemParams,
    states: &[DressedState<'_>],
) -> Result<SpectrumReport, SpectraError> {
    let delta = params.resolved_delta()?;
    let h = hamiltonian(basis, &params.without_drives())?;
    let h_norm = h.matrix().norm();
    let cluster_tol = 1e-8 * h_norm.max(1.0);

    let eigen = SymmetricEigen::new(h.matrix().clone());
    let eigenvalues: Vec<f64> = eigen.eigenvalues.iter().copied().collect();

    let mut entries = Vec::with_capacity(states.len());
    for ds in states {
        let energy = ds.energy.value(delta);
        let (nearest_idx, nearest) = eigenvalues
            .iter()
            .copied()
            .enumerate()
            .min_by(|(_, a), (_, b)| (a - energy).abs().total_cmp(&(b - energy).abs()))
            .expect("spectrum is non-empty");
        let _ = nearest_idx;
        let energy_residual = (nearest - energy).abs();
        let eigen_residual = (h.matrix() * &ds.vector - &ds.vector * C64::new(energy, 0.0)).norm();

        // degeneracy cluster around this analytic energy
        let analytic_cluster: Vec<&DressedState> =
            states.iter().filter(|other| (other.energy.value(delta) - energy).abs() <= cluster_tol).collect();
        let numeric_cluster: Vec<usize> =
            (0..eigenvalues.len()).filter(|&k| (eigenvalues[k] - energy).abs() <= cluster_tol).collect();

        let subspace_distance = if analytic_cluster.len() == numeric_cluster.len() {
            let n = basis.len();
            let mut p_analytic = DMatrix::<C64>::zeros(n, n);
            for s in &analytic_cluster {
                p_analytic += &s.vector * s.vector.adjoint();
            }
            let mut p_numeric = DMatrix::<C64>::zeros(n, n);
            for &k in &numeric_cluster {
                let col = eigen.eigenvectors.column(k);
                p_numeric += col * col.adjoint();
            }
            (p_analytic - p_numeric).norm()
        } else {
            f64::INFINITY
        };

        let matched = energy_residual <= ENERGY_TOL
            && eigen_residual <= 1e-10 * h_norm.max(1.0)
            && subspace_distance <= 1e-8;
        entries.push(SpectrumEntry {
            label: ds.label,
            energy,
            nearest_eigenvalue: nearest,
            energy_residual,
            eigen_residual,
            subspace_distance,
            matched,
        });
    }

    let max_energy_residual = entries.iter().map(|e| e.energy_residual).fold(0.0, f64::max);
    let max_eigen_residual = entries.iter().map(|e| e.eigen_residual).fold(0.0, f64::max);
    let max_subspace_distance = entries.iter().map(|e| e.subspace_distance).fold(0.0, f64::max);
    Ok(SpectrumReport { entries, max_energy_residual, max_eigen_residual, max_subspace_distance })
}

/// Which drive a coupling row belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Drive {
    Laser,
    Microwave,
}

impl Drive {
    pub fn label(self) -> &'static str {
        match self {
            Drive::Laser => "laser",
            Drive::Microwave => "microwave",
        }
    }
}

impl std::fmt::Display for Drive {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One nonzero drive matrix element between dressed states.
#[derive(Clone, Debug)]
pub struct CouplingRow {
    pub source: DressedLabel,
    pub target: DressedLabel,
    pub drive: Drive,
    /// |⟨target|H_drive|source⟩|.
    pub magnitude: f64,
    /// energy(target) − energy(source) in the rotating frame.
    pub detuning: f64,
}

/// Every nonzero drive matrix element among the twenty dressed states.
#[derive(Clone, Debug)]
pub struct CouplingTable {
    pub rows: Vec<CouplingRow>,
}

impl CouplingTable {
    /// Look up a row regardless of the stored source/target orientation.
    pub fn find(&self, a: DressedLabel, b: DressedLabel, drive: Drive) -> Option<&CouplingRow> {
        self.rows.iter().find(|r| {
            r.drive == drive && ((r.source == a && r.target == b) || (r.source == b && r.target == a))
        })
    }
}

/// Compute |⟨target|H_drive|source⟩| and the dressed-energy gap for every
/// pair of dressed states, for both drives. Rows below 1e-12 of the drive
/// amplitude are dropped as numerically zero; the source is the state earlier
/// in canonical order.
pub fn dressed_couplings(basis: &Basis, params: &SystemParams) -> Result<CouplingTable, SpectraError> {
    params.validate()?;
    let delta = params.resolved_delta()?;
    let states = all_dressed_states(basis, params.g, params.nu)?;
    let drives = [
        (Drive::Laser, laser_hamiltonian(basis, params.omega), params.omega),
        (Drive::Microwave, microwave_hamiltonian(basis, params.omega_mw), params.omega_mw),
    ];

    let mut rows = Vec::new();
    for i in 0..states.len() {
        for j in (i + 1)..states.len() {
            let source = &states[i];
            let target = &states[j];
            for (drive, h_drive, amplitude) in &drives {
                if *amplitude == 0.0 {
                    continue;
                }
                let element = target.vector.adjoint() * h_drive.matrix() * &source.vector;
                let magnitude = element[(0, 0)].norm();
                if magnitude <= 1e-12 * amplitude {
                    continue;
                }
                rows.push(CouplingRow {
                    source: source.label,
                    target: target.label,
                    drive: *drive,
                    magnitude,
                    detuning: target.energy.value(delta) - source.energy.value(delta),
                });
            }
        }
    }
    rows.sort_by_key(|r| (r.source.canonical_index(), r.target.canonical_index(), r.drive == Drive::Microwave));
    Ok(CouplingTable { rows })
}

/// Apply one Lindblad channel to a dressed state: returns the unnormalized
/// image `L|state⟩` and the fraction of its squared norm lying on |T⟩|000⟩
/// (zero for a vanishing image).
pub fn jump_image(
    dressed: &DressedState<'_>,
    channel: LindbladChannel,
    params: &SystemParams,
) -> Result<(DVector<C64>, f64), SpectraError> {
    let basis = dressed.basis();
    let ls = lindblad_set(basis, params)?;
    let image = ls.get(channel).apply(&dressed.vector);
    let norm_sq = image.norm_squared();
    let fraction = if norm_sq > 0.0 {
        let t = triplet_ket(basis);
        t.dotc(&image).norm_sqr() / norm_sq
    } else {
        0.0
    };
    Ok((image, fraction))
}

/// Matrix of the drive-free Hamiltonian restricted to checks in tests.
pub fn drive_free_hamiltonian<'b>(basis: &'b Basis, params: &SystemParams) -> Result<Operator<'b>, SpectraError> {
    Ok(hamiltonian(basis, &params.without_drives())?)
}
