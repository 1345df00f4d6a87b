//! Physical model on the truncated basis: rotating-frame Hamiltonian,
//! dissipation channels, and parameter bookkeeping.
//!
//! All time dependence of the lab-frame drives is removed by rotating with
//! `H_0 = ω_MW Σ_i|1⟩⟨1|_i + ω Σ_i|e⟩⟨e|_i + (ω − ω_MW)(Σ_m a†_m a_m + b†b)`,
//! where ω and ω_MW are the laser and microwave frequencies. With the cavities
//! resonant on |1⟩↔|e⟩, the fiber resonant with the cavities, and the
//! microwave resonant on |0⟩↔|1⟩, every bare frequency collapses into the
//! single detuning Δ' = ω_e − ω carried by the excited states and all photon
//! modes. Rates are expressed in units of the atom-cavity coupling g.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilbert::{atomic_transition, excitation_operator, mode_annihilator, Atom, AtomLevel, Basis, Mode, Operator};

/// Vacuum speed of light in m/s, used by the short-fiber-limit check.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Errors from parameter validation and model assembly.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("parameter {name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("rate {name} must be non-negative, got {value}")]
    NegativeRate { name: &'static str, value: f64 },
    #[error("parameter {name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("basis has max excitation {got}, the one-excitation model requires 1")]
    WrongTruncation { got: u32 },
}

/// Rotating-frame detuning Δ' = ω_e − ω: either an explicit value or the
/// sentinel that resolves to the |00⟩|000⟩ ↔ |T₄⟩ resonance condition.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Delta {
    /// Resolve to −√(g₁² + g₃²)/√2 from the current g and ν.
    AutoT4,
    Value(f64),
}

const AUTO_T4_SENTINEL: &str = "auto_T4";

impl Serialize for Delta {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Delta::AutoT4 => serializer.serialize_str(AUTO_T4_SENTINEL),
            Delta::Value(v) => serializer.serialize_f64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Delta {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct DeltaVisitor;

        impl Visitor<'_> for DeltaVisitor {
            type Value = Delta;

            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                write!(f, "a number or the string \"{AUTO_T4_SENTINEL}\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Delta, E> {
                Ok(Delta::Value(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Delta, E> {
                Ok(Delta::Value(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Delta, E> {
                Ok(Delta::Value(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Delta, E> {
                if v.eq_ignore_ascii_case(AUTO_T4_SENTINEL) {
                    Ok(Delta::AutoT4)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        deserializer.deserialize_any(DeltaVisitor)
    }
}

/// All physical rates and frequencies, in units of g.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemParams {
    /// Atom-cavity coupling (the rate unit; normally 1).
    pub g: f64,
    /// Cavity-fiber coupling ν.
    pub nu: f64,
    /// Laser Rabi frequency Ω.
    pub omega: f64,
    /// Microwave Rabi frequency Ω_MW.
    pub omega_mw: f64,
    /// Rotating-frame detuning Δ' = ω_e − ω.
    pub delta: Delta,
    /// Fiber loss rate β.
    pub beta: f64,
    /// Cavity decay rate κ (both cavities).
    pub kappa: f64,
    /// Total atomic spontaneous emission rate γ (branching γ/2 per ground
    /// state).
    pub gamma: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            g: 1.0,
            nu: 1.0,
            omega: 0.0,
            omega_mw: 0.0,
            delta: Delta::AutoT4,
            beta: 0.0,
            kappa: 0.0,
            gamma: 0.0,
        }
    }
}

impl SystemParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        let positive = [("g", self.g)];
        for (name, value) in positive {
            if !value.is_finite() {
                return Err(ModelError::NonFinite { name, value });
            }
            if value <= 0.0 {
                return Err(ModelError::NonPositive { name, value });
            }
        }
        let rates = [
            ("nu", self.nu),
            ("omega", self.omega),
            ("omega_mw", self.omega_mw),
            ("beta", self.beta),
            ("kappa", self.kappa),
            ("gamma", self.gamma),
        ];
        for (name, value) in rates {
            if !value.is_finite() {
                return Err(ModelError::NonFinite { name, value });
            }
            if value < 0.0 {
                return Err(ModelError::NegativeRate { name, value });
            }
        }
        if let Delta::Value(v) = self.delta {
            if !v.is_finite() {
                return Err(ModelError::NonFinite { name: "delta", value: v });
            }
        } else {
            // the resonance formula needs both couplings
            resonance_detuning(self.g, self.nu)?;
        }
        Ok(())
    }

    /// Numeric Δ', resolving the `auto_T4` sentinel.
    pub fn resolved_delta(&self) -> Result<f64, ModelError> {
        match self.delta {
            Delta::Value(v) => Ok(v),
            Delta::AutoT4 => resonance_detuning(self.g, self.nu),
        }
    }

    /// Same parameters with both drives switched off.
    pub fn without_drives(&self) -> SystemParams {
        SystemParams { omega: 0.0, omega_mw: 0.0, ..*self }
    }
}

/// Detuning Δ' = −√(g₁² + g₃²)/√2 that puts the laser transition
/// |00⟩|000⟩ ↔ |T₄⟩ on resonance, with g₁² = g² + 2ν² and
/// g₃² = √(g⁴ + 4ν⁴).
pub fn resonance_detuning(g: f64, nu: f64) -> Result<f64, ModelError> {
    if !g.is_finite() {
        return Err(ModelError::NonFinite { name: "g", value: g });
    }
    if !nu.is_finite() {
        return Err(ModelError::NonFinite { name: "nu", value: nu });
    }
    if g <= 0.0 {
        return Err(ModelError::NonPositive { name: "g", value: g });
    }
    if nu <= 0.0 {
        return Err(ModelError::NonPositive { name: "nu", value: nu });
    }
    let g1_sq = g * g + 2.0 * nu * nu;
    let g3_sq = (g.powi(4) + 4.0 * nu.powi(4)).sqrt();
    Ok(-((g1_sq + g3_sq) / 2.0).sqrt())
}

fn check_truncation(basis: &Basis) -> Result<(), ModelError> {
    if basis.max_excitation() != 1 {
        return Err(ModelError::WrongTruncation { got: basis.max_excitation() });
    }
    Ok(())
}

/// Atom-cavity-fiber couplings: g Σ_i |e⟩⟨1|_i a_i + ν b(a†_A + a†_B) + H.c.
pub fn interaction_hamiltonian<'b>(basis: &'b Basis, g: f64, nu: f64) -> Operator<'b> {
    let a_a = mode_annihilator(basis, Mode::CavityA);
    let a_b = mode_annihilator(basis, Mode::CavityB);
    let b = mode_annihilator(basis, Mode::Fiber);
    let up_a = atomic_transition(basis, Atom::A, AtomLevel::E, AtomLevel::G1);
    let up_b = atomic_transition(basis, Atom::B, AtomLevel::E, AtomLevel::G1);
    let atom_part = &(&up_a * &a_a) + &(&up_b * &a_b);
    let fiber_part = &(&a_a.dagger() + &a_b.dagger()) * &b;
    let half = &(&atom_part * g) + &(&fiber_part * nu);
    &half + &half.dagger()
}

/// Laser drive in the rotating frame: Ω Σ_i |0⟩⟨e|_i + H.c.
pub fn laser_hamiltonian<'b>(basis: &'b Basis, omega: f64) -> Operator<'b> {
    let down_a = atomic_transition(basis, Atom::A, AtomLevel::G0, AtomLevel::E);
    let down_b = atomic_transition(basis, Atom::B, AtomLevel::G0, AtomLevel::E);
    let half = &(&down_a + &down_b) * omega;
    &half + &half.dagger()
}

/// Microwave drive in the rotating frame:
/// Ω_MW (|0⟩⟨1|_A − |0⟩⟨1|_B) + H.c. The relative minus sign makes the
/// triplet dark and the singlet bright.
pub fn microwave_hamiltonian<'b>(basis: &'b Basis, omega_mw: f64) -> Operator<'b> {
    let flip_a = atomic_transition(basis, Atom::A, AtomLevel::G0, AtomLevel::G1);
    let flip_b = atomic_transition(basis, Atom::B, AtomLevel::G0, AtomLevel::G1);
    let half = &(&flip_a - &flip_b) * omega_mw;
    &half + &half.dagger()
}

/// Full rotating-frame Hamiltonian
/// `H = Δ'·N + H_interaction + H_laser + H_microwave` on the one-excitation
/// truncated basis.
pub fn hamiltonian<'b>(basis: &'b Basis, params: &SystemParams) -> Result<Operator<'b>, ModelError> {
    check_truncation(basis)?;
    params.validate()?;
    let delta = params.resolved_delta()?;
    let free = &excitation_operator(basis) * delta;
    let h = &(&free + &interaction_hamiltonian(basis, params.g, params.nu))
        + &(&laser_hamiltonian(basis, params.omega) + &microwave_hamiltonian(basis, params.omega_mw));
    debug_assert!(h.is_hermitian(1e-12));
    Ok(h)
}

/// The seven dissipation channels, in the fixed order used everywhere
/// (CSV columns, diagnostics, superoperator assembly).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum LindbladChannel {
    /// Fiber loss, √β b.
    Beta,
    /// √(γ/2) |0⟩⟨e| on atom A.
    Gamma1,
    /// √(γ/2) |1⟩⟨e| on atom A.
    Gamma2,
    /// √(γ/2) |0⟩⟨e| on atom B.
    Gamma3,
    /// √(γ/2) |1⟩⟨e| on atom B.
    Gamma4,
    /// Cavity A leakage, √κ a_A.
    Kappa1,
    /// Cavity B leakage, √κ a_B.
    Kappa2,
}

impl LindbladChannel {
    pub const ALL: [LindbladChannel; 7] = [
        LindbladChannel::Beta,
        LindbladChannel::Gamma1,
        LindbladChannel::Gamma2,
        LindbladChannel::Gamma3,
        LindbladChannel::Gamma4,
        LindbladChannel::Kappa1,
        LindbladChannel::Kappa2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LindbladChannel::Beta => "beta",
            LindbladChannel::Gamma1 => "gamma1",
            LindbladChannel::Gamma2 => "gamma2",
            LindbladChannel::Gamma3 => "gamma3",
            LindbladChannel::Gamma4 => "gamma4",
            LindbladChannel::Kappa1 => "kappa1",
            LindbladChannel::Kappa2 => "kappa2",
        }
    }
}

impl std::fmt::Display for LindbladChannel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// The seven jump operators. Zero-rate channels are present as zero matrices
/// so downstream shapes never change.
#[derive(Clone, Debug)]
pub struct LindbladSet<'b> {
    ops: Vec<(LindbladChannel, Operator<'b>)>,
}

impl<'b> LindbladSet<'b> {
    pub fn ops(&self) -> &[(LindbladChannel, Operator<'b>)] {
        &self.ops
    }

    pub fn get(&self, channel: LindbladChannel) -> &Operator<'b> {
        &self.ops.iter().find(|(c, _)| *c == channel).expect("all channels present").1
    }

    pub fn basis(&self) -> &'b Basis {
        self.ops[0].1.basis()
    }

    pub fn iter(&self) -> impl Iterator<Item = (LindbladChannel, &Operator<'b>)> {
        self.ops.iter().map(|(c, op)| (*c, op))
    }
}

/// Build L_β, L_γ1..γ4, L_κ1, L_κ2 from the rates in `params`.
pub fn lindblad_set<'b>(basis: &'b Basis, params: &SystemParams) -> Result<LindbladSet<'b>, ModelError> {
    check_truncation(basis)?;
    params.validate()?;
    let sqrt_beta = params.beta.sqrt();
    let sqrt_half_gamma = (params.gamma / 2.0).sqrt();
    let sqrt_kappa = params.kappa.sqrt();
    let ops = vec![
        (LindbladChannel::Beta, &mode_annihilator(basis, Mode::Fiber) * sqrt_beta),
        (
            LindbladChannel::Gamma1,
            &atomic_transition(basis, Atom::A, AtomLevel::G0, AtomLevel::E) * sqrt_half_gamma,
        ),
        (
            LindbladChannel::Gamma2,
            &atomic_transition(basis, Atom::A, AtomLevel::G1, AtomLevel::E) * sqrt_half_gamma,
        ),
        (
            LindbladChannel::Gamma3,
            &atomic_transition(basis, Atom::B, AtomLevel::G0, AtomLevel::E) * sqrt_half_gamma,
        ),
        (
            LindbladChannel::Gamma4,
            &atomic_transition(basis, Atom::B, AtomLevel::G1, AtomLevel::E) * sqrt_half_gamma,
        ),
        (LindbladChannel::Kappa1, &mode_annihilator(basis, Mode::CavityA) * sqrt_kappa),
        (LindbladChannel::Kappa2, &mode_annihilator(basis, Mode::CavityB) * sqrt_kappa),
    ];
    Ok(LindbladSet { ops })
}

/// Short-fiber-limit check: true iff l·v̄/(2πc) ≤ 1 (boundary included).
pub fn validate_short_fiber(length_m: f64, vbar: f64) -> Result<bool, ModelError> {
    if !length_m.is_finite() {
        return Err(ModelError::NonFinite { name: "length_m", value: length_m });
    }
    if !vbar.is_finite() {
        return Err(ModelError::NonFinite { name: "vbar", value: vbar });
    }
    if length_m <= 0.0 {
        return Err(ModelError::NonPositive { name: "length_m", value: length_m });
    }
    if vbar <= 0.0 {
        return Err(ModelError::NonPositive { name: "vbar", value: vbar });
    }
    Ok(length_m * vbar / (2.0 * std::f64::consts::PI * SPEED_OF_LIGHT) <= 1.0)
}

/// Convenience for tests and diagnostics: dense matrix of the drive-free
/// Hamiltonian at the given detuning.
pub fn drive_free_matrix(basis: &Basis, g: f64, nu: f64, delta: f64) -> DMatrix<C64> {
    let free = &excitation_operator(basis) * delta;
    (&free + &interaction_hamiltonian(basis, g, nu)).matrix().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{triplet_ket, BasisState};
    use approx::assert_abs_diff_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn basis() -> Basis {
        Basis::new(1)
    }

    fn st(a: AtomLevel, b: AtomLevel, na: u8, nf: u8, nb: u8) -> BasisState {
        BasisState::new(a, b, na, nf, nb)
    }

    #[test]
    fn resonance_detuning_at_equal_couplings_is_negative_golden_ratio() {
        // g1^2 = 3, g3^2 = sqrt(5): sqrt((3 + sqrt5)/2) is the golden ratio.
        let value = resonance_detuning(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(value, -1.618033988749894848, epsilon = 1e-15);
    }

    #[test]
    fn resonance_detuning_collapses_to_single_cavity_limit() {
        // nu -> 0+ gives g1 = g3 = g and the closed form tends to -g.
        let value = resonance_detuning(1.0, 1e-9).unwrap();
        assert_abs_diff_eq!(value, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn resonance_detuning_matches_high_precision_reference() {
        // 30-digit evaluation of the same closed form (mpmath).
        let value = resonance_detuning(1.0, 0.9).unwrap();
        assert_abs_diff_eq!(value, -1.503_959_058_988_302_745_75, epsilon = 1e-12);
    }

    #[test]
    fn resonance_detuning_rejects_non_positive_couplings() {
        assert!(resonance_detuning(0.0, 1.0).is_err());
        assert!(resonance_detuning(1.0, 0.0).is_err());
        assert!(resonance_detuning(-1.0, 1.0).is_err());
    }

    fn demo_params() -> SystemParams {
        SystemParams {
            g: 1.0,
            nu: 1.0,
            omega: 0.008,
            omega_mw: 0.002,
            delta: Delta::AutoT4,
            beta: 0.1,
            kappa: 0.0,
            gamma: 0.0,
        }
    }

    #[test]
    fn hamiltonian_matrix_elements_match_the_model() {
        let basis = basis();
        let p = demo_params();
        let h = hamiltonian(&basis, &p).unwrap();
        let idx = |s: &BasisState| basis.index_of(s).unwrap();

        let e1_000 = idx(&st(AtomLevel::E, AtomLevel::G1, 0, 0, 0));
        let k11_100 = idx(&st(AtomLevel::G1, AtomLevel::G1, 1, 0, 0));
        assert_abs_diff_eq!(h.element(e1_000, k11_100).re, p.g, epsilon = 1e-15);

        let k00_100 = idx(&st(AtomLevel::G0, AtomLevel::G0, 1, 0, 0));
        let k00_010 = idx(&st(AtomLevel::G0, AtomLevel::G0, 0, 1, 0));
        assert_abs_diff_eq!(h.element(k00_100, k00_010).re, p.nu, epsilon = 1e-15);

        let k00 = idx(&st(AtomLevel::G0, AtomLevel::G0, 0, 0, 0));
        let e0_000 = idx(&st(AtomLevel::E, AtomLevel::G0, 0, 0, 0));
        assert_abs_diff_eq!(h.element(k00, e0_000).re, p.omega, epsilon = 1e-15);

        let k10 = idx(&st(AtomLevel::G1, AtomLevel::G0, 0, 0, 0));
        let k01 = idx(&st(AtomLevel::G0, AtomLevel::G1, 0, 0, 0));
        assert_abs_diff_eq!(h.element(k00, k10).re, p.omega_mw, epsilon = 1e-15);
        assert_abs_diff_eq!(h.element(k00, k01).re, -p.omega_mw, epsilon = 1e-15);
    }

    #[test]
    fn diagonal_is_delta_times_excitation() {
        let basis = basis();
        let p = demo_params();
        let delta = p.resolved_delta().unwrap();
        let h = hamiltonian(&basis, &p).unwrap();
        for (i, s) in basis.states().iter().enumerate() {
            let expect = delta * f64::from(s.excitation());
            assert_abs_diff_eq!(h.element(i, i).re, expect, epsilon = 1e-15);
            assert_abs_diff_eq!(h.element(i, i).im, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn hamiltonian_is_hermitian_for_random_parameters() {
        let basis = basis();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..25 {
            let p = SystemParams {
                g: rng.random_range(0.2..2.0),
                nu: rng.random_range(0.1..1.3),
                omega: rng.random_range(0.0..0.5),
                omega_mw: rng.random_range(0.0..0.5),
                delta: Delta::Value(rng.random_range(-2.0..2.0)),
                beta: 0.0,
                kappa: 0.0,
                gamma: 0.0,
            };
            let h = hamiltonian(&basis, &p).unwrap();
            assert!(h.is_hermitian(1e-12));
        }
    }

    #[test]
    fn drive_free_part_commutes_with_excitation_and_drives_shift_it() {
        let basis = basis();
        let n = excitation_operator(&basis);
        let free = interaction_hamiltonian(&basis, 1.0, 0.7);
        let comm = &(&n * &free) - &(&free * &n);
        assert_abs_diff_eq!(comm.matrix().norm(), 0.0);

        // every nonzero drive element changes the excitation count by one
        for drive in [laser_hamiltonian(&basis, 0.3), microwave_hamiltonian(&basis, 0.2)] {
            for (i, si) in basis.states().iter().enumerate() {
                for (j, sj) in basis.states().iter().enumerate() {
                    if drive.element(i, j).norm() > 0.0 {
                        let diff = i32::try_from(si.excitation()).unwrap() - i32::try_from(sj.excitation()).unwrap();
                        assert!(
                            diff.abs() <= 1,
                            "drive element {si} <- {sj} changes excitation by {diff}"
                        );
                    }
                }
            }
        }
        // the laser changes it by exactly one
        let laser = laser_hamiltonian(&basis, 0.3);
        for (i, si) in basis.states().iter().enumerate() {
            for (j, sj) in basis.states().iter().enumerate() {
                if laser.element(i, j).norm() > 0.0 {
                    assert_eq!((i32::try_from(si.excitation()).unwrap() - i32::try_from(sj.excitation()).unwrap()).abs(), 1);
                }
            }
        }
    }

    #[test]
    fn triplet_is_dark_to_the_microwave() {
        let basis = basis();
        let h_mw = microwave_hamiltonian(&basis, 0.25);
        let t = triplet_ket(&basis);
        assert_abs_diff_eq!(h_mw.apply(&t).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn hamiltonian_is_linear_in_the_laser_amplitude() {
        let basis = basis();
        let p = demo_params();
        let mut doubled = p;
        doubled.omega *= 2.0;
        let h1 = hamiltonian(&basis, &p).unwrap();
        let h2 = hamiltonian(&basis, &doubled).unwrap();
        let diff = &h2 - &h1;
        let laser = laser_hamiltonian(&basis, p.omega);
        assert_abs_diff_eq!((&diff - &laser).matrix().norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn hamiltonian_rejects_wrong_truncation() {
        let basis0 = Basis::new(0);
        let err = hamiltonian(&basis0, &demo_params()).unwrap_err();
        assert!(matches!(err, ModelError::WrongTruncation { got: 0 }));
    }

    #[test]
    fn lindblad_operators_act_as_defined() {
        let basis = basis();
        let mut p = demo_params();
        p.beta = 0.1;
        p.kappa = 0.05;
        p.gamma = 0.2;
        let ls = lindblad_set(&basis, &p).unwrap();

        // L_gamma2 |e1>|000> = sqrt(gamma/2) |11>|000>
        let ke1 = basis.ket(&st(AtomLevel::E, AtomLevel::G1, 0, 0, 0)).unwrap();
        let k11 = basis.ket(&st(AtomLevel::G1, AtomLevel::G1, 0, 0, 0)).unwrap();
        let img = ls.get(LindbladChannel::Gamma2).apply(&ke1);
        assert_abs_diff_eq!((img - &k11 * C64::new((p.gamma / 2.0).sqrt(), 0.0)).norm(), 0.0, epsilon = 1e-15);

        // L_beta |00>|010> = sqrt(beta) |00>|000>
        let k_fib = basis.ket(&st(AtomLevel::G0, AtomLevel::G0, 0, 1, 0)).unwrap();
        let k_vac = basis.ket(&st(AtomLevel::G0, AtomLevel::G0, 0, 0, 0)).unwrap();
        let img = ls.get(LindbladChannel::Beta).apply(&k_fib);
        assert_abs_diff_eq!((img - &k_vac * C64::new(p.beta.sqrt(), 0.0)).norm(), 0.0, epsilon = 1e-15);

        // every channel annihilates every zero-excitation state
        for (_, op) in ls.iter() {
            for (j, s) in basis.states().iter().enumerate() {
                if s.excitation() == 0 {
                    assert_abs_diff_eq!(op.matrix().column(j).norm(), 0.0);
                }
                // and each maps the one-excitation block into the zero block
                if s.excitation() == 1 {
                    let col = op.matrix().column(j);
                    for (i, amp) in col.iter().enumerate() {
                        if amp.norm() > 0.0 {
                            assert_eq!(basis.state(i).excitation(), 0, "channel image must drop to zero excitation");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn channel_order_is_fixed_and_zero_rates_stay_as_zero_matrices() {
        let basis = basis();
        let p = demo_params(); // kappa = gamma = 0
        let ls = lindblad_set(&basis, &p).unwrap();
        let order: Vec<LindbladChannel> = ls.iter().map(|(c, _)| c).collect();
        assert_eq!(order, LindbladChannel::ALL);
        assert_abs_diff_eq!(ls.get(LindbladChannel::Kappa1).matrix().norm(), 0.0);
        assert_abs_diff_eq!(ls.get(LindbladChannel::Gamma4).matrix().norm(), 0.0);
        assert!(ls.get(LindbladChannel::Beta).matrix().norm() > 0.0);
    }

    #[test]
    fn squared_norm_scales_linearly_with_the_rate() {
        let basis = basis();
        let mut p = demo_params();
        p.beta = 0.07;
        let ls1 = lindblad_set(&basis, &p).unwrap();
        p.beta *= 2.0;
        let ls2 = lindblad_set(&basis, &p).unwrap();
        let l1 = ls1.get(LindbladChannel::Beta);
        let l2 = ls2.get(LindbladChannel::Beta);
        let n1 = (&l1.dagger() * l1).matrix().norm();
        let n2 = (&l2.dagger() * l2).matrix().norm();
        assert_abs_diff_eq!(n2, 2.0 * n1, epsilon = 1e-14);
    }

    #[test]
    fn short_fiber_limit_examples() {
        // l = 1 m, vbar = 2π·1e8 1/s: ratio ≈ 0.3336 -> inside the limit
        assert!(validate_short_fiber(1.0, 2.0 * std::f64::consts::PI * 1e8).unwrap());
        // boundary l·vbar = 2πc counts as inside ("≤ 1")
        assert!(validate_short_fiber(1.0, 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT).unwrap());
        // tiny fiber is always inside
        assert!(validate_short_fiber(1e-12, 1e6).unwrap());
        // beyond the limit
        assert!(!validate_short_fiber(3.0, 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT).unwrap());
        // domain errors
        assert!(validate_short_fiber(0.0, 1.0).is_err());
        assert!(validate_short_fiber(1.0, -2.0).is_err());
    }

    #[test]
    fn delta_serde_round_trips() {
        let auto: Delta = serde_json::from_str("\"auto_T4\"").unwrap();
        assert_eq!(auto, Delta::AutoT4);
        let val: Delta = serde_json::from_str("-1.5").unwrap();
        assert_eq!(val, Delta::Value(-1.5));
        assert_eq!(serde_json::to_string(&Delta::AutoT4).unwrap(), "\"auto_T4\"");
        assert!(serde_json::from_str::<Delta>("\"resonant\"").is_err());
    }
}
