//! Gate fidelity, the projected two-qubit concurrence, and physical-unit
//! conversions for the microwave and optical settings.

use num_complex::Complex64 as C64;
use std::f64::consts::TAU;

use crate::analytic::{amplitude_cjk, GateKind};
use crate::dynamics::{evolve, IntegratorConfig};
use crate::error::{Error, Result};
use crate::hilbert::{AtomLevel, ModelParams, StateVector, SystemBasis};

/// How the evolved computational-basis amplitudes are obtained.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Closed-form amplitudes; equal detunings only.
    Analytic,
    /// Numerical integration; any detunings.
    Numeric,
}

/// Conjugated target phase factors `exp(-i phi_jk)` of a gate, ordered
/// `(00, 01, 10, 11)`. The phase patterns are `(0, 0, 0, pi)` for `U1` and,
/// after factoring out the global sign, `(0, pi, pi, pi)` for `U2`; the
/// factors are exact so that a perfect gate scores exactly one.
pub fn target_factors(gate: GateKind) -> [C64; 4] {
    let one = C64::new(1.0, 0.0);
    match gate {
        GateKind::U1 => [one, one, one, -one],
        GateKind::U2 => [one, -one, -one, -one],
    }
}

/// Evolved ground-level amplitudes `c_jk = <c,j,k|psi_jk(t)>` for the four
/// computational-basis inputs, ordered `(00, 01, 10, 11)`.
pub fn evolved_computational_amplitudes(
    params: &ModelParams,
    t: f64,
    engine: Engine,
) -> Result<[C64; 4]> {
    match engine {
        Engine::Analytic => {
            if !params.is_symmetric() {
                return Err(Error::InvalidArgument(
                    "the analytic engine requires equal detunings".into(),
                ));
            }
            let (g, d) = (params.g(), params.delta_plus());
            Ok([
                amplitude_cjk(g, d, t, false, false),
                amplitude_cjk(g, d, t, false, true),
                amplitude_cjk(g, d, t, true, false),
                amplitude_cjk(g, d, t, true, true),
            ])
        }
        Engine::Numeric => {
            // One photon per polarization closes the dynamics of all four
            // inputs exactly.
            let basis = SystemBasis::new(1).expect("n_max = 1 is valid");
            let cfg = IntegratorConfig::for_system(params, basis);
            let mut out = [C64::ZERO; 4];
            for (slot, (j, k)) in out.iter_mut().zip([(0, 0), (0, 1), (1, 0), (1, 1)]) {
                let psi0 = StateVector::basis_state(basis, AtomLevel::C, j, k)?;
                let psi = evolve(&psi0, params, t, &cfg)?;
                *slot = psi.amplitude(AtomLevel::C, j, k);
            }
            Ok(out)
        }
    }
}

/// Fidelity computed from already-evolved ground-level amplitudes, ordered
/// `(00, 01, 10, 11)`.
pub fn fidelity_from_amplitudes(amps: &[C64; 4], gate: GateKind) -> f64 {
    let sum: C64 = amps
        .iter()
        .zip(target_factors(gate))
        .map(|(c, f)| f * c)
        .sum();
    (sum / 4.0).norm_sqr()
}

/// Overlap fidelity of the realized transformation with the ideal gate:
/// each computational-basis state is evolved for a time `t`, and
/// `F = |sum_jk exp(-i phi_jk) c_jk / 4|^2` scores amplitude leakage and
/// phase error together. `F = 1` exactly for a perfect gate; a fresh start
/// (`t = 0`) scores 1/4 for `U1`.
pub fn gate_fidelity(params: &ModelParams, gate: GateKind, t: f64, engine: Engine) -> Result<f64> {
    let amps = evolved_computational_amplitudes(params, t, engine)?;
    Ok(fidelity_from_amplitudes(&amps, gate))
}

/// Physical constants and cavity geometry used to convert between laboratory
/// units and the dimensionless model.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct PhysicalSetup {
    /// Vacuum Rabi frequency as an ordinary frequency, `g / 2 pi`, in Hz.
    pub g_hz: f64,
    /// Effective cavity length in meters; the transit time of an atom moving
    /// at speed `v` is `L / v`.
    pub cavity_length_m: f64,
    /// Gyromagnetic factor of the upper levels.
    pub g_j: f64,
    /// Magnetic quantum number of the upper levels.
    pub m_j: f64,
    /// Bohr magneton, J/T.
    pub mu_b: f64,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
}

pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;
pub const HBAR: f64 = 1.054_571_817e-34;

impl PhysicalSetup {
    pub fn new(g_hz: f64, cavity_length_m: f64, g_j: f64, m_j: f64) -> Result<Self> {
        if !g_hz.is_finite()
            || !cavity_length_m.is_finite()
            || g_hz <= 0.0
            || cavity_length_m <= 0.0
        {
            return Err(Error::InvalidArgument(
                "g_hz and cavity_length_m must be positive".into(),
            ));
        }
        Ok(Self {
            g_hz,
            cavity_length_m,
            g_j,
            m_j,
            mu_b: BOHR_MAGNETON,
            hbar: HBAR,
        })
    }

    /// Rydberg-atom setting: `g / 2 pi = 50 kHz`, 4 cm effective length,
    /// `g_J = 3/2`, `m_J = 1`.
    pub fn microwave() -> Self {
        Self::new(5.0e4, 0.04, 1.5, 1.0).expect("preset is valid")
    }

    /// High-finesse optical microcavity setting: `g / 2 pi = 25 MHz`; the
    /// remaining fields keep the microwave geometry.
    pub fn optical() -> Self {
        Self::new(2.5e7, 0.04, 1.5, 1.0).expect("preset is valid")
    }

    /// Coupling rate in angular-frequency units.
    pub fn g_angular(&self) -> f64 {
        TAU * self.g_hz
    }
}

/// Zeeman detuning of the sigma-plus transition produced by a magnetic field
/// along the cavity axis: `delta_plus = mu_B g_J m_J B / hbar`. The field
/// shifts the two transitions oppositely, so the companion detuning is
/// `delta_minus = -delta_plus`.
pub fn bfield_to_detuning(b_tesla: f64, setup: &PhysicalSetup) -> f64 {
    setup.mu_b * setup.g_j * setup.m_j * b_tesla / setup.hbar
}

/// Concurrence of the two polarization qubits, reading the four ground-level
/// amplitudes directly from the state without renormalization:
/// `C = 2 |c00 c11 - c01 c10|`. Correlations outside the zero- and one-photon
/// block are ignored.
pub fn concurrence_computational(state: &StateVector) -> f64 {
    let [c00, c01, c10, c11] = state.computational_amplitudes();
    2.0 * (c00 * c11 - c01 * c10).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::solution_parameters;
    use crate::hilbert::coherent_product_state;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn fidelity_at_start_is_one_quarter() {
        let params = ModelParams::symmetric(1.0, 0.0).unwrap();
        for engine in [Engine::Analytic, Engine::Numeric] {
            let f = gate_fidelity(&params, GateKind::U1, 0.0, engine).unwrap();
            assert_abs_diff_eq!(f, 0.25, epsilon = 1e-9);
        }
    }

    #[test]
    fn fidelity_peaks_at_gate_times() {
        // First U1 realization: d = 0, gt = 12 pi.
        let params = ModelParams::symmetric(1.0, 0.0).unwrap();
        let f = gate_fidelity(&params, GateKind::U1, 12.0 * PI, Engine::Analytic).unwrap();
        assert!(f >= 0.99);
        assert_abs_diff_eq!(f, 0.998, epsilon = 1e-3);

        // Detuned U2 realization: d/g = 2.353, gt = 42.73.
        let s = solution_parameters(GateKind::U2, 8, 10).unwrap();
        let params = ModelParams::symmetric(1.0, s.delta_over_g).unwrap();
        let f = gate_fidelity(&params, GateKind::U2, s.gt, Engine::Numeric).unwrap();
        assert!(f >= 0.99);
    }

    #[test]
    fn analytic_engine_rejects_unequal_detunings() {
        let params = ModelParams::new(1.0, 0.1, -0.1).unwrap();
        assert!(gate_fidelity(&params, GateKind::U1, 1.0, Engine::Analytic).is_err());
        assert!(gate_fidelity(&params, GateKind::U1, 1.0, Engine::Numeric).is_ok());
    }

    #[test]
    fn detuning_conversion() {
        let setup = PhysicalSetup::microwave();
        assert_eq!(bfield_to_detuning(0.0, &setup), 0.0);
        // 1 mG
        assert_abs_diff_eq!(bfield_to_detuning(1e-7, &setup), 1.319e4, epsilon = 10.0);
        // linearity
        assert_abs_diff_eq!(
            bfield_to_detuning(1e-8, &setup),
            bfield_to_detuning(1e-7, &setup) / 10.0,
            epsilon = 1e-9,
        );
    }

    #[test]
    fn concurrence_of_product_states_vanishes() {
        let basis = SystemBasis::new(8).unwrap();
        let psi = coherent_product_state(C64::new(0.5_f64.sqrt(), 0.0), C64::new(0.3, 0.4), basis)
            .unwrap();
        assert!(concurrence_computational(&psi) < 1e-12);
    }

    #[test]
    fn concurrence_after_ideal_phase_flip() {
        // Flipping the sign of c11 on a coherent product with mean photon
        // number 1/2 per mode gives C = 2/e.
        let basis = SystemBasis::new(8).unwrap();
        let a = C64::new(0.5_f64.sqrt(), 0.0);
        let mut psi = coherent_product_state(a, a, basis).unwrap();
        let i11 = basis.index_of(AtomLevel::C, 1, 1);
        psi.amplitudes_mut()[i11] = -psi.amplitudes()[i11];
        // Renormalization of the truncated state shifts this below 1e-6.
        assert_abs_diff_eq!(
            concurrence_computational(&psi),
            2.0 / std::f64::consts::E,
            epsilon = 1e-6,
        );
        assert_abs_diff_eq!(concurrence_computational(&psi), 0.7358, epsilon = 1e-4);
    }

    #[test]
    fn ideal_flip_concurrence_matches_closed_form_on_a_grid() {
        // Flipping c11 on |alpha_plus, alpha_minus> leaves
        // C = 4 sqrt(n_plus n_minus) exp(-(n_plus + n_minus)).
        let basis = SystemBasis::new(8).unwrap();
        for &(np, nm) in &[(0.1, 0.1), (0.25, 0.5), (0.5, 0.5), (0.8, 0.3)] {
            let mut psi = coherent_product_state(
                C64::new(f64::sqrt(np), 0.0),
                C64::new(f64::sqrt(nm), 0.0),
                basis,
            )
            .unwrap();
            let i11 = basis.index_of(AtomLevel::C, 1, 1);
            psi.amplitudes_mut()[i11] = -psi.amplitudes()[i11];
            let expect = 4.0 * (np * nm).sqrt() * (-(np + nm)).exp();
            assert_abs_diff_eq!(concurrence_computational(&psi), expect, epsilon = 1e-6);
        }
    }

    #[test]
    fn microwave_preset_values() {
        let s = PhysicalSetup::microwave();
        assert_eq!(s.g_hz, 5.0e4);
        assert_eq!(s.cavity_length_m, 0.04);
        assert_eq!((s.g_j, s.m_j), (1.5, 1.0));
        assert_eq!(PhysicalSetup::optical().g_hz, 2.5e7);
        assert!(PhysicalSetup::new(-1.0, 0.04, 1.5, 1.0).is_err());
    }
}
