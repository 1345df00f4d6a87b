//! Excitation-truncated product basis for two Λ-type atoms coupled to three
//! bosonic modes (cavity A, fiber, cavity B), plus the elementary operators
//! living on it.
//!
//! States are labeled `|αβ⟩|γδε⟩`: atom A, atom B, then the photon numbers of
//! cavity A, the fiber, and cavity B. The basis keeps every product state with
//! total excitation number (excited atoms plus photons) at most
//! `max_excitation`, ordered lexicographically with `g0 < g1 < e` and
//! `0 < 1 < …`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

/// Level of a Λ-type atom. The declaration order fixes the canonical basis
/// ordering.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomLevel {
    /// Ground state |0⟩.
    G0,
    /// Ground state |1⟩.
    G1,
    /// Excited state |e⟩.
    E,
}

impl AtomLevel {
    pub const ALL: [AtomLevel; 3] = [AtomLevel::G0, AtomLevel::G1, AtomLevel::E];

    fn glyph(self) -> char {
        match self {
            AtomLevel::G0 => '0',
            AtomLevel::G1 => '1',
            AtomLevel::E => 'e',
        }
    }
}

/// Which atom an atomic operator acts on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    A,
    B,
}

/// Which bosonic mode a ladder operator acts on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    CavityA,
    Fiber,
    CavityB,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::CavityA, Mode::Fiber, Mode::CavityB];
}

/// One product state `|αβ⟩|γδε⟩` of the two atoms and three modes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisState {
    pub atom_a: AtomLevel,
    pub atom_b: AtomLevel,
    pub cavity_a: u8,
    pub fiber: u8,
    pub cavity_b: u8,
}

impl BasisState {
    pub fn new(atom_a: AtomLevel, atom_b: AtomLevel, cavity_a: u8, fiber: u8, cavity_b: u8) -> Self {
        Self { atom_a, atom_b, cavity_a, fiber, cavity_b }
    }

    /// Total excitation number: excited atoms plus all photons.
    pub fn excitation(&self) -> u32 {
        u32::from(self.atom_a == AtomLevel::E)
            + u32::from(self.atom_b == AtomLevel::E)
            + u32::from(self.cavity_a)
            + u32::from(self.fiber)
            + u32::from(self.cavity_b)
    }

    pub fn level(&self, atom: Atom) -> AtomLevel {
        match atom {
            Atom::A => self.atom_a,
            Atom::B => self.atom_b,
        }
    }

    pub fn occupation(&self, mode: Mode) -> u8 {
        match mode {
            Mode::CavityA => self.cavity_a,
            Mode::Fiber => self.fiber,
            Mode::CavityB => self.cavity_b,
        }
    }

    fn with_level(mut self, atom: Atom, level: AtomLevel) -> Self {
        match atom {
            Atom::A => self.atom_a = level,
            Atom::B => self.atom_b = level,
        }
        self
    }

    fn with_occupation(mut self, mode: Mode, n: u8) -> Self {
        match mode {
            Mode::CavityA => self.cavity_a = n,
            Mode::Fiber => self.fiber = n,
            Mode::CavityB => self.cavity_b = n,
        }
        self
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|{}{}>|{}{}{}>",
            self.atom_a.glyph(),
            self.atom_b.glyph(),
            self.cavity_a,
            self.fiber,
            self.cavity_b
        )
    }
}

/// The excitation-truncated basis with its canonical index map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    max_excitation: u32,
    states: Vec<BasisState>,
    index: HashMap<BasisState, usize>,
}

impl Basis {
    /// Enumerate every product state with excitation number at most
    /// `max_excitation`, in lexicographic order of
    /// `(atom_a, atom_b, cavity_a, fiber, cavity_b)`. Photon numbers per mode
    /// are capped at `max_excitation` (the total-excitation filter makes any
    /// larger occupation unreachable anyway).
    pub fn new(max_excitation: u32) -> Self {
        let cap = u8::try_from(max_excitation.min(u32::from(u8::MAX))).unwrap();
        let mut states = Vec::new();
        for atom_a in AtomLevel::ALL {
            for atom_b in AtomLevel::ALL {
                for cavity_a in 0..=cap {
                    for fiber in 0..=cap {
                        for cavity_b in 0..=cap {
                            let s = BasisState::new(atom_a, atom_b, cavity_a, fiber, cavity_b);
                            if s.excitation() <= max_excitation {
                                states.push(s);
                            }
                        }
                    }
                }
            }
        }
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Self { max_excitation, states, index }
    }

    pub fn max_excitation(&self) -> u32 {
        self.max_excitation
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> BasisState {
        self.states[i]
    }

    /// Canonical position of `state`, or `None` if it lies outside the
    /// truncation.
    pub fn index_of(&self, state: &BasisState) -> Option<usize> {
        self.index.get(state).copied()
    }

    /// Unit vector for a basis state.
    pub fn ket(&self, state: &BasisState) -> Option<DVector<C64>> {
        let i = self.index_of(state)?;
        let mut v = DVector::zeros(self.len());
        v[i] = C64::new(1.0, 0.0);
        Some(v)
    }
}

/// Dense operator on a [`Basis`].
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<'b> {
    basis: &'b Basis,
    matrix: DMatrix<C64>,
}

impl<'b> Operator<'b> {
    /// Wrap a dense matrix. Panics if the dimension disagrees with the basis;
    /// all constructors in this crate are dimension-consistent by design.
    pub fn from_matrix(basis: &'b Basis, matrix: DMatrix<C64>) -> Self {
        assert_eq!(
            (matrix.nrows(), matrix.ncols()),
            (basis.len(), basis.len()),
            "operator dimension must equal basis size"
        );
        Self { basis, matrix }
    }

    pub fn zeros(basis: &'b Basis) -> Self {
        Self { basis, matrix: DMatrix::zeros(basis.len(), basis.len()) }
    }

    pub fn identity(basis: &'b Basis) -> Self {
        Self { basis, matrix: DMatrix::identity(basis.len(), basis.len()) }
    }

    pub fn basis(&self) -> &'b Basis {
        self.basis
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn dagger(&self) -> Operator<'b> {
        Operator { basis: self.basis, matrix: self.matrix.adjoint() }
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.matrix * v
    }

    /// ⟨v|M|v⟩.
    pub fn expectation(&self, v: &DVector<C64>) -> C64 {
        (v.adjoint() * &self.matrix * v)[(0, 0)]
    }

    pub fn element(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    /// Entrywise Hermiticity check.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                if (self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    pub fn scale(&self, factor: C64) -> Operator<'b> {
        Operator { basis: self.basis, matrix: &self.matrix * factor }
    }
}

fn assert_same_basis(a: &Operator<'_>, b: &Operator<'_>) {
    assert_eq!(a.basis, b.basis, "operator basis mismatch");
}

impl<'b> Add for &Operator<'b> {
    type Output = Operator<'b>;
    fn add(self, rhs: &Operator<'b>) -> Operator<'b> {
        assert_same_basis(self, rhs);
        Operator { basis: self.basis, matrix: &self.matrix + &rhs.matrix }
    }
}

impl<'b> Sub for &Operator<'b> {
    type Output = Operator<'b>;
    fn sub(self, rhs: &Operator<'b>) -> Operator<'b> {
        assert_same_basis(self, rhs);
        Operator { basis: self.basis, matrix: &self.matrix - &rhs.matrix }
    }
}

impl<'b> Mul for &Operator<'b> {
    type Output = Operator<'b>;
    fn mul(self, rhs: &Operator<'b>) -> Operator<'b> {
        assert_same_basis(self, rhs);
        Operator { basis: self.basis, matrix: &self.matrix * &rhs.matrix }
    }
}

impl<'b> Mul<f64> for &Operator<'b> {
    type Output = Operator<'b>;
    fn mul(self, rhs: f64) -> Operator<'b> {
        self.scale(C64::new(rhs, 0.0))
    }
}

/// Annihilation operator of one bosonic mode: ⟨s'|a|s⟩ = √n when `s'` is `s`
/// with the occupation lowered by one. Images outside the truncation vanish.
pub fn mode_annihilator<'b>(basis: &'b Basis, mode: Mode) -> Operator<'b> {
    let mut m = DMatrix::zeros(basis.len(), basis.len());
    for (j, s) in basis.states().iter().enumerate() {
        let n = s.occupation(mode);
        if n == 0 {
            continue;
        }
        let target = s.with_occupation(mode, n - 1);
        if let Some(i) = basis.index_of(&target) {
            m[(i, j)] = C64::new(f64::from(n).sqrt(), 0.0);
        }
    }
    Operator { basis, matrix: m }
}

/// Atomic transition operator |to⟩⟨from| on one atom, identity elsewhere,
/// truncated to the basis.
pub fn atomic_transition<'b>(basis: &'b Basis, atom: Atom, to: AtomLevel, from: AtomLevel) -> Operator<'b> {
    let mut m = DMatrix::zeros(basis.len(), basis.len());
    for (j, s) in basis.states().iter().enumerate() {
        if s.level(atom) != from {
            continue;
        }
        let target = s.with_level(atom, to);
        if let Some(i) = basis.index_of(&target) {
            m[(i, j)] = C64::new(1.0, 0.0);
        }
    }
    Operator { basis, matrix: m }
}

/// Diagonal total-excitation-number operator
/// `N = Σ_i |e⟩⟨e|_i + Σ_m a†_m a_m`.
pub fn excitation_operator<'b>(basis: &'b Basis) -> Operator<'b> {
    let diag =
        DVector::from_iterator(basis.len(), basis.states().iter().map(|s| C64::new(f64::from(s.excitation()), 0.0)));
    Operator { basis, matrix: DMatrix::from_diagonal(&diag) }
}

/// Two-atom singlet over the photon vacuum: (|01⟩ − |10⟩)/√2 ⊗ |000⟩.
pub fn singlet_ket(basis: &Basis) -> DVector<C64> {
    two_atom_combo_ket(basis, -1.0)
}

/// Two-atom triplet over the photon vacuum: (|01⟩ + |10⟩)/√2 ⊗ |000⟩.
pub fn triplet_ket(basis: &Basis) -> DVector<C64> {
    two_atom_combo_ket(basis, 1.0)
}

fn two_atom_combo_ket(basis: &Basis, sign: f64) -> DVector<C64> {
    let k01 = BasisState::new(AtomLevel::G0, AtomLevel::G1, 0, 0, 0);
    let k10 = BasisState::new(AtomLevel::G1, AtomLevel::G0, 0, 0, 0);
    let mut v = DVector::zeros(basis.len());
    let amp = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    v[basis.index_of(&k01).expect("basis must contain the zero-excitation block")] = amp;
    v[basis.index_of(&k10).expect("basis must contain the zero-excitation block")] = amp * sign;
    v
}
