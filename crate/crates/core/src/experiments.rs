//! Experiment runners: fidelity traces over interaction time, the
//! velocity/magnetic-field robustness map, and the concurrence map over
//! coherent-state amplitudes. Grid cells are independent computations and are
//! evaluated in parallel with deterministic assembly.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::analytic::{GateKind, GateSolution};
use crate::dynamics::{evolve, evolve_sampled, IntegratorConfig};
use crate::error::{Error, Result};
use crate::hilbert::{coherent_product_state, AtomLevel, ModelParams, StateVector, SystemBasis};
use crate::metrics::{
    bfield_to_detuning, concurrence_computational, fidelity_from_amplitudes, PhysicalSetup,
};

/// A named, unit-tagged, uniformly sampled axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub unit: String,
    pub values: Vec<f64>,
}

impl Axis {
    /// `samples` points from `min` to `max` inclusive.
    pub fn uniform(name: &str, unit: &str, min: f64, max: f64, samples: usize) -> Self {
        let step = if samples > 1 {
            (max - min) / (samples - 1) as f64
        } else {
            0.0
        };
        Self {
            name: name.into(),
            unit: unit.into(),
            values: (0..samples).map(|i| min + step * i as f64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Result matrix over one or two axes. Values are stored x-major:
/// `values[ix * ny + iy]` (with `ny = 1` for one-dimensional data). All
/// values lie in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentGrid {
    pub x: Axis,
    pub y: Option<Axis>,
    pub value_name: String,
    pub values: Vec<f64>,
}

impl ExperimentGrid {
    fn new(x: Axis, y: Option<Axis>, value_name: &str, values: Vec<f64>) -> Self {
        let ny = y.as_ref().map_or(1, Axis::len);
        assert_eq!(values.len(), x.len() * ny, "grid shape mismatch");
        // Fidelity and concurrence are bounded; allow only rounding spill.
        let values = values
            .into_iter()
            .map(|v| {
                assert!(
                    (-1e-6..=1.0 + 1e-6).contains(&v),
                    "grid value {v} outside [0, 1]"
                );
                v.clamp(0.0, 1.0)
            })
            .collect();
        Self {
            x,
            y,
            value_name: value_name.into(),
            values,
        }
    }

    pub fn ny(&self) -> usize {
        self.y.as_ref().map_or(1, Axis::len)
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[ix * self.ny() + iy]
    }

    /// Location of the maximum value as `(ix, iy)`.
    pub fn argmax(&self) -> (usize, usize) {
        let (idx, _) =
            self.values
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, &v)| {
                    if v > best.1 {
                        (i, v)
                    } else {
                        best
                    }
                });
        (idx / self.ny(), idx % self.ny())
    }
}

/// Fidelities of the four evolved inputs sampled along an ascending time
/// grid, one integrator pass per input.
fn fidelity_samples(params: &ModelParams, gate: GateKind, times: &[f64]) -> Result<Vec<f64>> {
    let basis = SystemBasis::new(1).expect("n_max = 1 is valid");
    let cfg = IntegratorConfig::for_system(params, basis);
    let mut amps: Vec<[C64; 4]> = vec![[C64::ZERO; 4]; times.len()];
    for (slot, (j, k)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
        let psi0 = StateVector::basis_state(basis, AtomLevel::C, j, k)?;
        for (cell, psi) in amps
            .iter_mut()
            .zip(evolve_sampled(&psi0, params, times, &cfg)?)
        {
            cell[slot] = psi.amplitude(AtomLevel::C, j, k);
        }
    }
    Ok(amps
        .iter()
        .map(|a| fidelity_from_amplitudes(a, gate))
        .collect())
}

/// Gate fidelity sampled on a uniform grid of dimensionless interaction times
/// `gt` from zero to `gt_max`.
pub fn fidelity_trace(
    params: &ModelParams,
    gate: GateKind,
    gt_max: f64,
    samples: usize,
) -> Result<ExperimentGrid> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "samples must be >= 2, got {samples}"
        )));
    }
    if params.g() <= 0.0 {
        return Err(Error::InvalidArgument(
            "fidelity_trace requires a positive coupling g".into(),
        ));
    }
    if !gt_max.is_finite() || gt_max <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "gt_max must be > 0, got {gt_max}"
        )));
    }
    let x = Axis::uniform("gt", "dimensionless", 0.0, gt_max, samples);
    let times: Vec<f64> = x.values.iter().map(|gt| gt / params.g()).collect();
    let values = fidelity_samples(params, gate, &times)?;
    Ok(ExperimentGrid::new(x, None, "fidelity", values))
}

/// Gate fidelity over the plane of atomic velocity and axial magnetic field.
///
/// Each cell uses the transit time `t = L / v` of a constant-coupling pass
/// through the cavity, the gate's own detuning as baseline, and the Zeeman
/// shift of the field applied antisymmetrically:
/// `delta_plus = base + dB`, `delta_minus = base - dB`.
pub fn velocity_bfield_map(
    setup: &PhysicalSetup,
    solution: &GateSolution,
    v_range: (f64, f64),
    b_range: (f64, f64),
    samples: usize,
) -> Result<ExperimentGrid> {
    let (v_min, v_max) = v_range;
    if !v_min.is_finite() || !v_max.is_finite() || v_min <= 0.0 || v_max < v_min {
        return Err(Error::InvalidArgument(format!(
            "velocity range must satisfy 0 < v_min <= v_max, got ({v_min}, {v_max})"
        )));
    }
    let (b_min, b_max) = b_range;
    if !b_min.is_finite() || !b_max.is_finite() || b_max < b_min {
        return Err(Error::InvalidArgument(format!(
            "field range must satisfy b_min <= b_max, got ({b_min}, {b_max})"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "samples must be >= 2, got {samples}"
        )));
    }
    let x = Axis::uniform("velocity", "m/s", v_min, v_max, samples);
    let y = Axis::uniform("magnetic_field", "T", b_min, b_max, samples);

    let g = setup.g_angular();
    let base_delta = solution.delta_over_g * g;
    // Ascending transit times correspond to descending velocities.
    let times: Vec<f64> = x
        .values
        .iter()
        .rev()
        .map(|v| setup.cavity_length_m / v)
        .collect();
    let gate = solution.gate;

    let columns: Vec<Vec<f64>> = y
        .values
        .par_iter()
        .map(|&b| {
            let db = bfield_to_detuning(b, setup);
            let params = ModelParams::new(g, base_delta + db, base_delta - db)?;
            fidelity_samples(&params, gate, &times)
        })
        .collect::<Result<_>>()?;

    let nx = x.len();
    let ny = y.len();
    let mut values = vec![0.0; nx * ny];
    for (iy, column) in columns.iter().enumerate() {
        for (pos, &f) in column.iter().enumerate() {
            values[(nx - 1 - pos) * ny + iy] = f;
        }
    }
    Ok(ExperimentGrid::new(x, Some(y), "fidelity", values))
}

/// Concurrence left in the polarization qubits after applying a gate
/// realization to a product of coherent states, over a square grid of mean
/// photon numbers `[0, mean_max]^2`. Dimensionless units (`g = 1`).
pub fn concurrence_map(
    solution: &GateSolution,
    n_max: usize,
    mean_max: f64,
    samples: usize,
) -> Result<ExperimentGrid> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "samples must be >= 2, got {samples}"
        )));
    }
    if !mean_max.is_finite() || mean_max < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "mean_max must be >= 0, got {mean_max}"
        )));
    }
    let basis = SystemBasis::new(n_max)?;
    let params = ModelParams::symmetric(1.0, solution.delta_over_g)?;
    let cfg = IntegratorConfig::for_system(&params, basis);
    let t = solution.gt;

    let x = Axis::uniform("mean_photons_plus", "dimensionless", 0.0, mean_max, samples);
    let y = Axis::uniform(
        "mean_photons_minus",
        "dimensionless",
        0.0,
        mean_max,
        samples,
    );
    let xv = x.values.clone();
    let yv = y.values.clone();
    let ny = yv.len();

    let values: Vec<f64> = (0..xv.len() * ny)
        .into_par_iter()
        .map(|idx| {
            let alpha_plus = C64::new(xv[idx / ny].sqrt(), 0.0);
            let alpha_minus = C64::new(yv[idx % ny].sqrt(), 0.0);
            let psi0 = coherent_product_state(alpha_plus, alpha_minus, basis)?;
            let psi = evolve(&psi0, &params, t, &cfg)?;
            Ok(concurrence_computational(&psi))
        })
        .collect::<Result<_>>()?;

    Ok(ExperimentGrid::new(x, Some(y), "concurrence", values))
}
