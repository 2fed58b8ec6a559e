//! Truncated product space of a V-type three-level atom and the two circular
//! polarizations of a single cavity mode, together with the interaction-picture
//! Hamiltonian on that space.
//!
//! Basis states are written `|atom, n_plus, n_minus>` where `n_plus`
//! (`n_minus`) counts sigma-plus (sigma-minus) photons. The flat index is
//! atom-major, then `n_plus`, then `n_minus`.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Probability allowed beyond the photon-number cutoff when building a
/// coherent state.
pub const TAIL_BOUND: f64 = 1e-6;

/// Internal levels of the atom. `A` and `B` are the upper levels reached by
/// absorbing a sigma-plus or sigma-minus photon respectively; `C` is the
/// common ground level.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum AtomLevel {
    A,
    B,
    C,
}

impl AtomLevel {
    pub const ALL: [AtomLevel; 3] = [AtomLevel::A, AtomLevel::B, AtomLevel::C];

    pub fn index(self) -> usize {
        match self {
            AtomLevel::A => 0,
            AtomLevel::B => 1,
            AtomLevel::C => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AtomLevel::A => "a",
            AtomLevel::B => "b",
            AtomLevel::C => "c",
        }
    }
}

/// Truncated basis `atom (x) fock(n_max) (x) fock(n_max)` with a bijective
/// map between `(atom, n_plus, n_minus)` and flat indices `0..dim`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SystemBasis {
    n_max: usize,
}

impl SystemBasis {
    /// Build a basis holding up to `n_max` photons per polarization.
    /// At least one photon per polarization is required to represent a qubit.
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::InvalidArgument(format!(
                "n_max must be >= 1, got {n_max}"
            )));
        }
        Ok(Self { n_max })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of Fock states per polarization, `n_max + 1`.
    pub fn fock_dim(&self) -> usize {
        self.n_max + 1
    }

    /// Total dimension `3 (n_max + 1)^2`.
    pub fn dim(&self) -> usize {
        3 * self.fock_dim() * self.fock_dim()
    }

    /// Flat index of `|atom, n_plus, n_minus>`.
    ///
    /// *Panics* if a photon number exceeds `n_max`.
    pub fn index_of(&self, atom: AtomLevel, n_plus: usize, n_minus: usize) -> usize {
        assert!(
            n_plus <= self.n_max && n_minus <= self.n_max,
            "photon number out of range: ({n_plus}, {n_minus}) with n_max = {}",
            self.n_max,
        );
        let p = self.fock_dim();
        atom.index() * p * p + n_plus * p + n_minus
    }

    /// Inverse of [`Self::index_of`].
    ///
    /// *Panics* if `index >= dim`.
    pub fn state_at(&self, index: usize) -> (AtomLevel, usize, usize) {
        assert!(index < self.dim(), "index {index} out of range");
        let p = self.fock_dim();
        let atom = AtomLevel::ALL[index / (p * p)];
        let rem = index % (p * p);
        (atom, rem / p, rem % p)
    }

    /// Iterate over all `(atom, n_plus, n_minus)` labels in index order.
    pub fn states(&self) -> impl Iterator<Item = (AtomLevel, usize, usize)> + '_ {
        (0..self.dim()).map(|i| self.state_at(i))
    }
}

/// Normalized complex state over a [`SystemBasis`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    basis: SystemBasis,
    amps: Array1<C64>,
}

impl StateVector {
    /// The basis vector `|atom, n_plus, n_minus>`.
    pub fn basis_state(
        basis: SystemBasis,
        atom: AtomLevel,
        n_plus: usize,
        n_minus: usize,
    ) -> Result<Self> {
        if n_plus > basis.n_max() || n_minus > basis.n_max() {
            return Err(Error::InvalidArgument(format!(
                "photon numbers ({n_plus}, {n_minus}) exceed n_max = {}",
                basis.n_max(),
            )));
        }
        let mut amps = Array1::zeros(basis.dim());
        amps[basis.index_of(atom, n_plus, n_minus)] = C64::new(1.0, 0.0);
        Ok(Self { basis, amps })
    }

    /// Wrap an amplitude vector. The vector must have length `basis.dim()`
    /// and unit norm to within 1e-6.
    pub fn from_amplitudes(basis: SystemBasis, amps: Array1<C64>) -> Result<Self> {
        if amps.len() != basis.dim() {
            return Err(Error::InvalidArgument(format!(
                "amplitude vector has length {}, basis dimension is {}",
                amps.len(),
                basis.dim(),
            )));
        }
        let state = Self { basis, amps };
        let norm = state.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidArgument(format!(
                "amplitude vector is not normalized (norm = {norm})"
            )));
        }
        Ok(state)
    }

    pub fn basis(&self) -> SystemBasis {
        self.basis
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut Array1<C64> {
        &mut self.amps
    }

    pub fn amplitude(&self, atom: AtomLevel, n_plus: usize, n_minus: usize) -> C64 {
        self.amps[self.basis.index_of(atom, n_plus, n_minus)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Amplitudes `(c00, c01, c10, c11)` of the four ground-level states
    /// spanning the two polarization qubits, read directly from the state
    /// without renormalization.
    pub fn computational_amplitudes(&self) -> [C64; 4] {
        [
            self.amplitude(AtomLevel::C, 0, 0),
            self.amplitude(AtomLevel::C, 0, 1),
            self.amplitude(AtomLevel::C, 1, 0),
            self.amplitude(AtomLevel::C, 1, 1),
        ]
    }

    /// Overlaps with the bright and dark combinations
    /// `(|a,0,1> +/- |b,1,0>) / sqrt(2)` of the singly-excited pair.
    pub fn bright_dark_components(&self) -> (C64, C64) {
        let a01 = self.amplitude(AtomLevel::A, 0, 1);
        let b10 = self.amplitude(AtomLevel::B, 1, 0);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ((a01 + b10) * s, (a01 - b10) * s)
    }
}

/// Coupling rate and detunings of the atom-field model, all in angular
/// frequency units (or dimensionless with `g = 1`).
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ModelParams {
    g: f64,
    delta_plus: f64,
    delta_minus: f64,
}

impl ModelParams {
    pub fn new(g: f64, delta_plus: f64, delta_minus: f64) -> Result<Self> {
        if !g.is_finite() || g < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "coupling g must be finite and >= 0, got {g}"
            )));
        }
        if !delta_plus.is_finite() || !delta_minus.is_finite() {
            return Err(Error::InvalidArgument("detunings must be finite".into()));
        }
        Ok(Self {
            g,
            delta_plus,
            delta_minus,
        })
    }

    /// Equal detunings on both polarizations (two-photon resonance).
    pub fn symmetric(g: f64, delta: f64) -> Result<Self> {
        Self::new(g, delta, delta)
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn delta_plus(&self) -> f64 {
        self.delta_plus
    }

    pub fn delta_minus(&self) -> f64 {
        self.delta_minus
    }

    pub fn is_symmetric(&self) -> bool {
        self.delta_plus == self.delta_minus
    }
}

/// One off-diagonal pair of the coupling Hamiltonian: the matrix element
/// `<upper|H|lower> = g * weight * exp(-i delta t)` plus its conjugate,
/// where `weight` carries the photon ladder factor.
#[derive(Copy, Clone, Debug)]
pub(crate) struct Coupling {
    pub upper: usize,
    pub lower: usize,
    pub weight: f64,
    pub plus: bool,
}

/// Enumerate all couplings on the truncated space. Absorbing a sigma-plus
/// photon takes `|c, n+1, m>` to `|a, n, m>` with ladder factor
/// `sqrt(n + 1)`; absorbing a sigma-minus photon takes `|c, n, m+1>` to
/// `|b, n, m>` with factor `sqrt(m + 1)`.
pub(crate) fn couplings(basis: SystemBasis) -> Vec<Coupling> {
    let n_max = basis.n_max();
    let mut list = Vec::with_capacity(2 * n_max * (n_max + 1));
    for n in 0..n_max {
        for m in 0..=n_max {
            list.push(Coupling {
                upper: basis.index_of(AtomLevel::A, n, m),
                lower: basis.index_of(AtomLevel::C, n + 1, m),
                weight: ((n + 1) as f64).sqrt(),
                plus: true,
            });
        }
    }
    for n in 0..=n_max {
        for m in 0..n_max {
            list.push(Coupling {
                upper: basis.index_of(AtomLevel::B, n, m),
                lower: basis.index_of(AtomLevel::C, n, m + 1),
                weight: ((m + 1) as f64).sqrt(),
                plus: false,
            });
        }
    }
    list
}

/// Interaction-picture Hamiltonian at time `t` as a dense Hermitian matrix.
///
/// Nonzero elements are `<a,n,m|H|c,n+1,m> = g sqrt(n+1) exp(-i delta_plus t)`
/// and `<b,n,m|H|c,n,m+1> = g sqrt(m+1) exp(-i delta_minus t)` together with
/// their conjugates. `|c,0,0>` couples to nothing and does not evolve.
pub fn hamiltonian_at(params: &ModelParams, basis: SystemBasis, t: f64) -> Array2<C64> {
    let mut h = Array2::zeros((basis.dim(), basis.dim()));
    let phase_plus = C64::from_polar(1.0, -params.delta_plus() * t);
    let phase_minus = C64::from_polar(1.0, -params.delta_minus() * t);
    for c in couplings(basis) {
        let v = params.g() * c.weight * if c.plus { phase_plus } else { phase_minus };
        h[[c.upper, c.lower]] = v;
        h[[c.lower, c.upper]] = v.conj();
    }
    h
}

/// Probability mass of a Poisson distribution with mean `lambda` beyond
/// `n_max`.
fn poisson_tail(lambda: f64, n_max: usize) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let mut term = (-lambda).exp();
    let mut cdf = term;
    for n in 1..=n_max {
        term *= lambda / n as f64;
        cdf += term;
    }
    (1.0 - cdf).max(0.0)
}

fn required_n_max(lambda: f64) -> usize {
    let mut n = 1;
    while poisson_tail(lambda, n) > TAIL_BOUND {
        n += 1;
    }
    n
}

/// Product of two coherent states with the atom in the ground level,
/// truncated at `n_max` and renormalized to unit norm:
///
/// ```text
/// <c,j,k|psi> ~ alpha_plus^j alpha_minus^k / sqrt(j! k!)
///               * exp(-(|alpha_plus|^2 + |alpha_minus|^2) / 2)
/// ```
///
/// Fails with [`Error::Truncation`] if either polarization keeps more than
/// [`TAIL_BOUND`] probability beyond the cutoff.
pub fn coherent_product_state(
    alpha_plus: C64,
    alpha_minus: C64,
    basis: SystemBasis,
) -> Result<StateVector> {
    let n_max = basis.n_max();
    for lambda in [alpha_plus.norm_sqr(), alpha_minus.norm_sqr()] {
        let tail = poisson_tail(lambda, n_max);
        if tail > TAIL_BOUND {
            return Err(Error::Truncation {
                n_max,
                tail,
                bound: TAIL_BOUND,
                required_n_max: required_n_max(lambda),
            });
        }
    }

    // Fock amplitudes alpha^n / sqrt(n!), built by recurrence.
    let ladder = |alpha: C64| -> Vec<C64> {
        let mut v = Vec::with_capacity(n_max + 1);
        let mut a = C64::new(1.0, 0.0);
        v.push(a);
        for n in 1..=n_max {
            a *= alpha / (n as f64).sqrt();
            v.push(a);
        }
        v
    };
    let fp = ladder(alpha_plus);
    let fm = ladder(alpha_minus);
    let envelope = (-(alpha_plus.norm_sqr() + alpha_minus.norm_sqr()) / 2.0).exp();

    let mut amps: Array1<C64> = Array1::zeros(basis.dim());
    for j in 0..=n_max {
        for k in 0..=n_max {
            amps[basis.index_of(AtomLevel::C, j, k)] = envelope * fp[j] * fm[k];
        }
    }
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.mapv_inplace(|a| a / norm);
    Ok(StateVector { basis, amps })
}
