//! The reported quantities: target-state fidelity, zero-excitation-subspace
//! populations, and the physicality diagnostics carried along every run.

use nalgebra::DVector;
use num_complex::Complex64 as C64;

use crate::dynamics::DensityMatrix;
use crate::hilbert::{singlet_ket, triplet_ket, AtomLevel, BasisState};

/// One row of observables. Field names are the normative CSV column names.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ObservableRecord {
    pub p00: f64,
    pub ps: f64,
    pub pt: f64,
    pub p11: f64,
    pub fidelity: f64,
    pub trace_error: f64,
    pub min_eig: f64,
}

fn projector_expectation(rho: &DensityMatrix<'_>, ket: &DVector<C64>) -> f64 {
    (ket.adjoint() * rho.matrix() * ket)[(0, 0)].re
}

/// Fidelity of the target: F = ⟨T,000|ρ|T,000⟩ with |T⟩ = (|01⟩ + |10⟩)/√2.
pub fn fidelity_t(rho: &DensityMatrix<'_>) -> f64 {
    projector_expectation(rho, &triplet_ket(rho.basis()))
}

/// Populations of {|00⟩, |S⟩, |T⟩, |11⟩} ⊗ |000⟩. PT is computed through the
/// same projector as [`fidelity_t`], so the two agree exactly.
pub fn zero_subspace_populations(rho: &DensityMatrix<'_>) -> (f64, f64, f64, f64) {
    let basis = rho.basis();
    let k00 = basis
        .ket(&BasisState::new(AtomLevel::G0, AtomLevel::G0, 0, 0, 0))
        .expect("zero-excitation block present");
    let k11 = basis
        .ket(&BasisState::new(AtomLevel::G1, AtomLevel::G1, 0, 0, 0))
        .expect("zero-excitation block present");
    (
        projector_expectation(rho, &k00),
        projector_expectation(rho, &singlet_ket(basis)),
        projector_expectation(rho, &triplet_ket(basis)),
        projector_expectation(rho, &k11),
    )
}

/// Photon-traced alternative fidelity: ⟨T|Tr_photons ρ|T⟩ on the two-atom
/// reduced state. Differs from [`fidelity_t`] only by transient
/// one-excitation population.
pub fn atomic_fidelity_t(rho: &DensityMatrix<'_>) -> f64 {
    let basis = rho.basis();
    let amp = |s: &BasisState| -> f64 {
        match (s.atom_a, s.atom_b) {
            (AtomLevel::G0, AtomLevel::G1) | (AtomLevel::G1, AtomLevel::G0) => std::f64::consts::FRAC_1_SQRT_2,
            _ => 0.0,
        }
    };
    let mut f = C64::new(0.0, 0.0);
    for (i, si) in basis.states().iter().enumerate() {
        let ai = amp(si);
        if ai == 0.0 {
            continue;
        }
        for (j, sj) in basis.states().iter().enumerate() {
            let aj = amp(sj);
            if aj == 0.0 {
                continue;
            }
            if (si.cavity_a, si.fiber, si.cavity_b) == (sj.cavity_a, sj.fiber, sj.cavity_b) {
                f += rho.matrix()[(i, j)] * ai * aj;
            }
        }
    }
    f.re
}

/// Assemble the full observable row for one state.
pub fn record(rho: &DensityMatrix<'_>) -> ObservableRecord {
    let (p00, ps, pt, p11) = zero_subspace_populations(rho);
    ObservableRecord {
        p00,
        ps,
        pt,
        p11,
        fidelity: fidelity_t(rho),
        trace_error: (rho.trace() - C64::new(1.0, 0.0)).norm(),
        min_eig: rho.min_eigenvalue(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::DensityMatrix;
    use crate::hilbert::Basis;
    use crate::testutil::random_density;
    use approx::assert_abs_diff_eq;
    use nalgebra::DMatrix;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn basis() -> Basis {
        Basis::new(1)
    }

    fn st(a: AtomLevel, b: AtomLevel) -> BasisState {
        BasisState::new(a, b, 0, 0, 0)
    }

    #[test]
    fn fidelity_of_reference_states() {
        let basis = basis();
        let t = DensityMatrix::from_pure(&basis, &triplet_ket(&basis)).unwrap();
        assert_abs_diff_eq!(fidelity_t(&t), 1.0, epsilon = 1e-14);

        let k11 = DensityMatrix::from_basis_state(&basis, &st(AtomLevel::G1, AtomLevel::G1)).unwrap();
        assert_abs_diff_eq!(fidelity_t(&k11), 0.0, epsilon = 1e-14);

        let k01 = DensityMatrix::from_basis_state(&basis, &st(AtomLevel::G0, AtomLevel::G1)).unwrap();
        assert_abs_diff_eq!(fidelity_t(&k01), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn populations_of_reference_states() {
        let basis = basis();
        let k11 = DensityMatrix::from_basis_state(&basis, &st(AtomLevel::G1, AtomLevel::G1)).unwrap();
        let (p00, ps, pt, p11) = zero_subspace_populations(&k11);
        assert_abs_diff_eq!(p00, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ps, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pt, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p11, 1.0, epsilon = 1e-15);

        // |10> = (|T> - |S>)/sqrt2
        let k10 = DensityMatrix::from_basis_state(&basis, &st(AtomLevel::G1, AtomLevel::G0)).unwrap();
        let (p00, ps, pt, p11) = zero_subspace_populations(&k10);
        assert_abs_diff_eq!(p00, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ps, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(pt, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p11, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn fidelity_equals_pt_exactly() {
        let basis = basis();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..10 {
            let rho = random_density(&basis, &mut rng);
            let (_, _, pt, _) = zero_subspace_populations(&rho);
            assert_eq!(fidelity_t(&rho), pt);
        }
    }

    #[test]
    fn populations_ignore_one_excitation_perturbations() {
        let basis = basis();
        let k11 = DensityMatrix::from_basis_state(&basis, &st(AtomLevel::G1, AtomLevel::G1)).unwrap();
        let before = zero_subspace_populations(&k11);

        // traceless Hermitian perturbation supported on the one-excitation block
        let n = basis.len();
        let mut pert = DMatrix::<C64>::zeros(n, n);
        let one_exc: Vec<usize> =
            (0..n).filter(|&i| basis.state(i).excitation() == 1).collect();
        let (a, b) = (one_exc[0], one_exc[3]);
        pert[(a, b)] = C64::new(0.01, 0.003);
        pert[(b, a)] = C64::new(0.01, -0.003);
        pert[(a, a)] = C64::new(0.02, 0.0);
        pert[(b, b)] = C64::new(-0.02, 0.0);

        let perturbed = DensityMatrix::from_matrix(&basis, k11.matrix() + pert).unwrap();
        let after = zero_subspace_populations(&perturbed);
        assert_eq!(before, after);
    }

    #[test]
    fn fidelity_stays_in_range_for_random_states() {
        let basis = basis();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..25 {
            let rho = random_density(&basis, &mut rng);
            let f = fidelity_t(&rho);
            assert!((-1e-8..=1.0 + 1e-8).contains(&f), "F = {f}");
            let (p00, ps, pt, p11) = zero_subspace_populations(&rho);
            assert!(p00 + ps + pt + p11 <= 1.0 + 1e-8);
            let rec = record(&rho);
            assert!(rec.trace_error <= 1e-10);
            assert!(rec.min_eig >= -1e-10);
        }
    }

    #[test]
    fn atomic_fidelity_counts_photon_carrying_triplet_weight() {
        let basis = basis();
        // triplet with one fiber photon: full fidelity 0, photon-traced 1
        let mut v = DVector::zeros(basis.len());
        let i01 = basis.index_of(&BasisState::new(AtomLevel::G0, AtomLevel::G1, 0, 1, 0)).unwrap();
        let i10 = basis.index_of(&BasisState::new(AtomLevel::G1, AtomLevel::G0, 0, 1, 0)).unwrap();
        v[i01] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        v[i10] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let rho = DensityMatrix::from_pure(&basis, &v).unwrap();
        assert_abs_diff_eq!(fidelity_t(&rho), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(atomic_fidelity_t(&rho), 1.0, epsilon = 1e-14);

        // on the vacuum triplet the two definitions coincide
        let t = DensityMatrix::from_pure(&basis, &triplet_ket(&basis)).unwrap();
        assert_abs_diff_eq!(atomic_fidelity_t(&t), fidelity_t(&t), epsilon = 1e-14);
    }
}
