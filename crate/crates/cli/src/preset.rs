//! Named scenario presets reproducing the published parameter sets.
//!
//! Every preset starts from |11⟩|000⟩, resolves the detuning to the
//! |00⟩|000⟩ ↔ |T₄⟩ resonance, works in units of g, and keeps the record
//! step at 10/g.

use std::path::PathBuf;

use fiberqed::{Delta, SystemParams};

use crate::config::{AxisGrid, ConfigError, InitialState, ParamField, ScenarioConfig, SweepAxis};

pub const PRESET_NAMES: [&str; 16] = [
    "fig3a",
    "fig3b",
    "fig3b_inset",
    "fig3c",
    "fig3d",
    "fig3d_inset",
    "fig3e",
    "fig3f",
    "fig3f_inset",
    "fig4a",
    "fig4b",
    "fig4c",
    "fig5",
    "fig6a",
    "fig6b",
    "exp_check",
];

fn base(omega: f64, omega_mw: f64, nu: f64, beta: f64, kappa: f64, gamma: f64) -> SystemParams {
    SystemParams { g: 1.0, nu, omega, omega_mw, delta: Delta::AutoT4, beta, kappa, gamma }
}

fn series(params: SystemParams, t_max: f64, name: &str) -> ScenarioConfig {
    ScenarioConfig {
        params,
        initial_state: InitialState::Ket11,
        t_max,
        n_records: (t_max / 10.0).round() as usize + 1,
        sweep: Vec::new(),
        record_time: None,
        evaluate_steady_state: false,
        output: PathBuf::from(format!("{name}.csv")),
    }
}

fn range(lo: f64, hi: f64, points: usize) -> AxisGrid {
    AxisGrid::Range { lo, hi, points }
}

fn axis(fields: Vec<ParamField>, grid: AxisGrid) -> SweepAxis {
    SweepAxis { fields, grid, relative: false }
}

fn relative_axis(field: ParamField, points: usize) -> SweepAxis {
    SweepAxis { fields: vec![field], grid: range(-0.5, 0.5, points), relative: true }
}

fn sweep_at(mut config: ScenarioConfig, axes: Vec<SweepAxis>, record_time: f64) -> ScenarioConfig {
    config.sweep = axes;
    config.record_time = Some(record_time);
    config.t_max = record_time;
    config.n_records = (record_time / 10.0).round() as usize + 1;
    config
}

/// Look up a preset by name.
pub fn preset(name: &str) -> Result<ScenarioConfig, ConfigError> {
    let omega = 0.008;
    let config = match name {
        // beta = 0.1g alone; the populations (a) and fidelity (b) panels share one run
        "fig3a" | "fig3b" => series(base(omega, 0.25 * omega, 1.0, 0.1, 0.0, 0.0), 1e4, name),
        "fig3b_inset" => sweep_at(
            series(base(omega, 0.25 * omega, 1.0, 0.1, 0.0, 0.0), 8e3, name),
            vec![axis(vec![ParamField::Beta], range(0.0, 0.1, 11))],
            8e3,
        ),
        // kappa = 0.1g alone
        "fig3c" | "fig3d" => series(base(omega, 0.2 * omega, 1.0, 0.0, 0.1, 0.0), 1.6e4, name),
        "fig3d_inset" => sweep_at(
            series(base(omega, 0.2 * omega, 1.0, 0.0, 0.1, 0.0), 1.6e4, name),
            vec![axis(vec![ParamField::Kappa], range(0.0, 0.1, 11))],
            1.6e4,
        ),
        // gamma = 0.1g alone
        "fig3e" | "fig3f" => series(base(omega, 0.2 * omega, 1.0, 0.0, 0.0, 0.1), 1.6e4, name),
        "fig3f_inset" => sweep_at(
            series(base(omega, 0.2 * omega, 1.0, 0.0, 0.0, 0.1), 1.6e4, name),
            vec![axis(vec![ParamField::Gamma], range(0.0, 0.1, 11))],
            1.6e4,
        ),
        // two dissipative factors at a time, fidelity at 1.5e4/g
        "fig4a" => sweep_at(
            series(base(omega, 0.25 * omega, 1.0, 0.0, 0.0, 0.0), 1.5e4, name),
            vec![
                axis(vec![ParamField::Beta], range(0.0, 0.06, 7)),
                axis(vec![ParamField::Kappa], range(0.0, 0.06, 7)),
            ],
            1.5e4,
        ),
        "fig4b" => sweep_at(
            series(base(omega, 0.25 * omega, 1.0, 0.0, 0.0, 0.0), 1.5e4, name),
            vec![
                axis(vec![ParamField::Beta], range(0.0, 0.06, 7)),
                axis(vec![ParamField::Gamma], range(0.0, 0.06, 7)),
            ],
            1.5e4,
        ),
        "fig4c" => sweep_at(
            series(base(omega, 0.25 * omega, 1.0, 0.0, 0.0, 0.0), 1.5e4, name),
            vec![
                axis(vec![ParamField::Gamma], range(0.0, 0.06, 7)),
                axis(vec![ParamField::Kappa], range(0.0, 0.06, 7)),
            ],
            1.5e4,
        ),
        // all three factors equal, full time series per value
        "fig5" => {
            let mut config = series(base(omega, 0.25 * omega, 1.0, 0.0, 0.0, 0.0), 2e4, name);
            config.sweep = vec![axis(
                vec![ParamField::Beta, ParamField::Kappa, ParamField::Gamma],
                AxisGrid::Explicit { values: vec![0.0, 0.01, 0.02, 0.04, 0.08, 0.12] },
            )];
            config
        }
        // drive-amplitude robustness at t = 2e4/g
        "fig6a" => sweep_at(
            series(base(omega, 0.002, 1.0, 0.04, 0.04, 0.04), 2e4, name),
            vec![relative_axis(ParamField::Omega, 5), relative_axis(ParamField::OmegaMw, 5)],
            2e4,
        ),
        // coupling-strength robustness, full series per nu
        "fig6b" => {
            let mut config = series(base(omega, 0.002, 1.0, 0.04, 0.04, 0.04), 2e4, name);
            config.sweep = vec![axis(vec![ParamField::Nu], range(0.7, 1.3, 7))];
            config
        }
        // (g, kappa, gamma) ~ 2π × (34, 4.1, 3.6) MHz, beta = kappa, nu = 0.9g
        "exp_check" => {
            let mut config = series(base(0.015, 0.36 * 0.015, 0.9, 4.1 / 34.0, 4.1 / 34.0, 3.6 / 34.0), 2e4, name);
            config.evaluate_steady_state = true;
            config
        }
        other => {
            return Err(ConfigError::UnknownPreset { name: other.to_string(), valid: PRESET_NAMES.join(", ") });
        }
    };
    debug_assert!(config.validate().is_ok());
    Ok(config)
}
