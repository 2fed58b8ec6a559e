//! Closed-form dynamics of the computational basis and the integer search for
//! gate parameters.
//!
//! With equal detunings the four two-qubit basis states evolve as three
//! uncoupled two-level systems plus the stationary `|c,0,0>`. The ground-level
//! amplitude of `|c,j,k>` is
//!
//! ```text
//! c_jk(t) = exp(i d t / 2) / 2 * [ (1 - d/W) exp(i W t / 2)
//!                                + (1 + d/W) exp(-i W t / 2) ]
//! ```
//!
//! with `W = sqrt(4 g^2 + d^2)` for a single photon and
//! `W = sqrt(8 g^2 + d^2)` for one photon in each polarization. A phase gate
//! is realized at times where all three oscillations close simultaneously;
//! the closure conditions reduce to finding integers `(m, n)` for which
//! `8 n^2 - 4 m^2` (or `2 (2n+1)^2 - 4 m^2` for the sign-flipped gate) is
//! close to the square of an odd integer.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// The two realizable conditional phase gates on the polarization qubits.
///
/// `U1` flips the phase of `|1,1>` only; `U2` is the variant that, up to a
/// global sign, flips the phase of `|0,0>` relative to the other three.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    U1,
    U2,
}

impl GateKind {
    pub fn label(self) -> &'static str {
        match self {
            GateKind::U1 => "U1",
            GateKind::U2 => "U2",
        }
    }
}

/// One solution of the gate-timing conditions.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct GateSolution {
    pub gate: GateKind,
    pub m: u32,
    pub n: u32,
    /// Real solution of the closure condition; the gate is exact when
    /// `2 p_star + 1` is an odd integer.
    pub p_star: f64,
    /// Detuning in units of the coupling rate.
    pub delta_over_g: f64,
    /// Interaction time in units of `1/g`.
    pub gt: f64,
    /// Distance of `2 p_star + 1` from the nearest odd integer.
    pub epsilon: f64,
}

impl GateSolution {
    /// Nearest integer to `p_star`.
    pub fn p(&self) -> u32 {
        self.p_star.round() as u32
    }

    /// Single-photon Rabi frequency in units of `g`.
    pub fn omega_01_over_g(&self) -> f64 {
        (4.0 + self.delta_over_g * self.delta_over_g).sqrt()
    }

    /// Two-photon (bright-state) Rabi frequency in units of `g`.
    pub fn omega_11_over_g(&self) -> f64 {
        (8.0 + self.delta_over_g * self.delta_over_g).sqrt()
    }

    /// Interaction time for a given coupling rate.
    pub fn gate_time(&self, g: f64) -> f64 {
        self.gt / g
    }
}

/// Rabi frequencies `(W_01, W_11)` of the single-photon and two-photon
/// two-level systems: `W_01 = sqrt(4 g^2 + d^2)`, `W_11 = sqrt(8 g^2 + d^2)`.
pub fn rabi_frequencies(g: f64, delta: f64) -> (f64, f64) {
    let g2 = g * g;
    let d2 = delta * delta;
    ((4.0 * g2 + d2).sqrt(), (8.0 * g2 + d2).sqrt())
}

/// Closed-form amplitude `<c,j,k|psi(t)>` for the computational-basis input
/// `|c,j,k>` under equal detunings. `(0,0)` is stationary and returns exactly
/// one; at zero detuning the expression reduces to `cos(W_jk t / 2)`.
pub fn amplitude_cjk(g: f64, delta: f64, t: f64, j: bool, k: bool) -> C64 {
    if !j && !k {
        return C64::new(1.0, 0.0);
    }
    let (w01, w11) = rabi_frequencies(g, delta);
    let w = if j && k { w11 } else { w01 };
    if w == 0.0 {
        // g = delta = 0: nothing couples.
        return C64::new(1.0, 0.0);
    }
    let r = delta / w;
    let up = C64::from_polar(1.0, w * t / 2.0);
    (C64::from_polar(1.0, delta * t / 2.0) / 2.0) * ((1.0 - r) * up + (1.0 + r) * up.conj())
}

fn nearest_odd_distance(x: f64) -> f64 {
    let p = ((x - 1.0) / 2.0).round();
    (x - (2.0 * p + 1.0)).abs()
}

/// Gate parameters for a given integer pair.
///
/// For `U1` the closure conditions fix `delta/g = 2m / sqrt(n^2 - m^2)` and
/// `gt = 2 pi sqrt(n^2 - m^2)`, with `(2 p_star + 1)^2 = 8 n^2 - 4 m^2`.
/// For `U2` they fix `delta/g = 4m / sqrt((2n+1)^2 - 4 m^2)` and
/// `gt = pi sqrt((2n+1)^2 - 4 m^2)`, with
/// `(2 p_star + 1)^2 = 2 (2n+1)^2 - 4 m^2`.
pub fn solution_parameters(gate: GateKind, m: u32, n: u32) -> Result<GateSolution> {
    let (mf, nf) = (m as f64, n as f64);
    let (delta_over_g, gt, odd_sq) = match gate {
        GateKind::U1 => {
            if m >= n {
                return Err(Error::InvalidArgument(format!(
                    "U1 requires 0 <= m < n, got (m, n) = ({m}, {n})"
                )));
            }
            let disc = nf * nf - mf * mf;
            (
                2.0 * mf / disc.sqrt(),
                2.0 * PI * disc.sqrt(),
                8.0 * nf * nf - 4.0 * mf * mf,
            )
        }
        GateKind::U2 => {
            if m > n {
                return Err(Error::InvalidArgument(format!(
                    "U2 requires 0 <= 2m < 2n + 1, got (m, n) = ({m}, {n})"
                )));
            }
            let q = 2.0 * nf + 1.0;
            let disc = q * q - 4.0 * mf * mf;
            (
                4.0 * mf / disc.sqrt(),
                PI * disc.sqrt(),
                2.0 * q * q - 4.0 * mf * mf,
            )
        }
    };
    let two_p_plus_1 = odd_sq.sqrt();
    Ok(GateSolution {
        gate,
        m,
        n,
        p_star: (two_p_plus_1 - 1.0) / 2.0,
        delta_over_g,
        gt,
        epsilon: nearest_odd_distance(two_p_plus_1),
    })
}

fn chain_holds(s: &GateSolution) -> bool {
    let two_p_plus_1 = 2 * s.p() + 1;
    match s.gate {
        GateKind::U1 => two_p_plus_1 > 2 * s.n && s.n > s.m,
        GateKind::U2 => two_p_plus_1 > 2 * s.n + 1 && 2 * s.n + 1 > 2 * s.m,
    }
}

/// Enumerate all admissible `(m, n)` with `n <= max_n`, keep solutions whose
/// mismatch does not exceed `epsilon_max`, and sort ascending by interaction
/// time (ties broken by `(m, n)`).
pub fn search_solutions(gate: GateKind, max_n: u32, epsilon_max: f64) -> Result<Vec<GateSolution>> {
    if max_n < 1 {
        return Err(Error::InvalidArgument(format!(
            "max_n must be >= 1, got {max_n}"
        )));
    }
    if !epsilon_max.is_finite() || epsilon_max <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "epsilon_max must be > 0, got {epsilon_max}"
        )));
    }
    let mut out = Vec::new();
    for n in 0..=max_n {
        let m_limit = match gate {
            GateKind::U1 => n,     // m < n
            GateKind::U2 => n + 1, // 2m < 2n + 1
        };
        for m in 0..m_limit {
            let s = solution_parameters(gate, m, n).expect("enumeration respects constraints");
            if s.epsilon <= epsilon_max && chain_holds(&s) {
                out.push(s);
            }
        }
    }
    out.sort_by(|a, b| {
        (a.gt, a.m, a.n)
            .partial_cmp(&(b.gt, b.m, b.n))
            .expect("gt is finite")
    });
    Ok(out)
}

/// Mismatch threshold that singles out the canonical gate list: every entry
/// of the reference set has `epsilon <= 0.0295` while the next-best pair
/// comes in at `0.0319`.
pub const TABLE_EPSILON: f64 = 0.03;

/// Interaction-time cap of the canonical gate list.
pub const TABLE_GT_MAX: f64 = 100.0;

/// The ten canonical gate realizations: both gate kinds merged, mismatch at
/// most [`TABLE_EPSILON`], interaction time at most [`TABLE_GT_MAX`], sorted
/// by interaction time.
pub fn table_solutions() -> Vec<GateSolution> {
    let mut all: Vec<GateSolution> = search_solutions(GateKind::U1, 30, TABLE_EPSILON)
        .expect("fixed arguments are valid")
        .into_iter()
        .chain(
            search_solutions(GateKind::U2, 30, TABLE_EPSILON).expect("fixed arguments are valid"),
        )
        .filter(|s| s.gt <= TABLE_GT_MAX)
        .collect();
    all.sort_by(|a, b| {
        (a.gt, a.gate.label(), a.m, a.n)
            .partial_cmp(&(b.gt, b.gate.label(), b.m, b.n))
            .expect("gt is finite")
    });
    all
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rabi_frequency_values() {
        let (w01, w11) = rabi_frequencies(1.0, 0.0);
        assert_eq!(w01, 2.0);
        assert_abs_diff_eq!(w11, 2.0 * 2.0_f64.sqrt(), epsilon = 1e-15);

        let (w01, w11) = rabi_frequencies(0.0, 5.0);
        assert_eq!((w01, w11), (5.0, 5.0));

        let (w01, w11) = rabi_frequencies(1.0, 2.353);
        assert_abs_diff_eq!(w01 * w01, 4.0 + 2.353 * 2.353, epsilon = 1e-12);
        assert_abs_diff_eq!(w11 * w11, 8.0 + 2.353 * 2.353, epsilon = 1e-12);
        assert_abs_diff_eq!(w01, 3.0881, epsilon = 2e-4);
        assert_abs_diff_eq!(w11, 3.6793, epsilon = 2e-4);
    }

    #[test]
    fn amplitude_initial_and_resonant_values() {
        for &(g, d) in &[(1.0, 0.0), (0.3, 1.7), (2.0, -0.5)] {
            for &(j, k) in &[(false, false), (false, true), (true, false), (true, true)] {
                assert_eq!(amplitude_cjk(g, d, 0.0, j, k), C64::new(1.0, 0.0));
            }
        }
        // cos(W_01 t / 2) = cos(pi) at g = 1, d = 0, t = pi.
        let a = amplitude_cjk(1.0, 0.0, PI, true, false);
        assert_abs_diff_eq!(a.re, -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-12);
        // Near the phase-flip time of the first gate.
        let a = amplitude_cjk(1.0, 0.0, 37.699, true, true);
        assert_abs_diff_eq!(a.re, (2.0_f64.sqrt() * 37.699).cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(a.re, -0.9956, epsilon = 2e-4);
    }

    #[test]
    fn amplitude_reduces_to_cosine_on_resonance() {
        for &t in &[0.1, 1.0, 7.3, 40.0] {
            let a = amplitude_cjk(1.0, 0.0, t, true, true);
            assert_abs_diff_eq!(a.re, (2.0_f64.sqrt() * t).cos(), epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn amplitude_satisfies_the_eliminated_two_level_equation() {
        // Eliminating the upper-level amplitude from the coupled pair leaves
        // c'' = i d c' - geff^2 c with geff^2 = (W^2 - d^2) / 4. Check by
        // central differences; the residual is O(h^2).
        let h = 1e-4;
        for &(g, d) in &[(1.0, 0.0), (1.0, 2.353), (0.7, -1.1)] {
            for &(j, k) in &[(true, false), (true, true)] {
                let geff_sq = if j && k { 2.0 * g * g } else { g * g };
                for &t in &[0.3, 5.0, 21.7] {
                    let cm = amplitude_cjk(g, d, t - h, j, k);
                    let c0 = amplitude_cjk(g, d, t, j, k);
                    let cp = amplitude_cjk(g, d, t + h, j, k);
                    let d2 = (cp - 2.0 * c0 + cm) / (h * h);
                    let d1 = (cp - cm) / (2.0 * h);
                    let residual = d2 - C64::i() * d * d1 + geff_sq * c0;
                    assert!(
                        residual.norm() < 1e-5,
                        "residual {:.3e} at (g={g}, d={d}, t={t})",
                        residual.norm()
                    );
                }
            }
        }
    }

    #[test]
    fn reference_solution_rows() {
        let s = solution_parameters(GateKind::U1, 0, 6).unwrap();
        assert_eq!(s.delta_over_g, 0.0);
        assert_abs_diff_eq!(s.gt, 37.70, epsilon = 5e-3);
        assert_abs_diff_eq!(s.p_star, 7.985, epsilon = 5e-4);

        let s = solution_parameters(GateKind::U2, 8, 10).unwrap();
        assert_abs_diff_eq!(s.delta_over_g, 2.353, epsilon = 5e-4);
        assert_abs_diff_eq!(s.gt, 42.73, epsilon = 5e-3);
        assert_abs_diff_eq!(s.p_star, 12.01, epsilon = 5e-4);

        // The zero-detuning sign-flip gate; p_star follows from
        // (2p+1)^2 = 2 * 29^2.
        let s = solution_parameters(GateKind::U2, 0, 14).unwrap();
        assert_eq!(s.delta_over_g, 0.0);
        assert_abs_diff_eq!(s.gt, 91.10, epsilon = 7e-3);
        assert_abs_diff_eq!(s.p_star, 20.006, epsilon = 5e-4);
        assert_abs_diff_eq!(
            s.p_star,
            (2.0_f64.sqrt() * 29.0 - 1.0) / 2.0,
            epsilon = 1e-12
        );
    }

    #[test]
    fn solution_constraint_errors() {
        assert!(solution_parameters(GateKind::U1, 6, 6).is_err());
        assert!(solution_parameters(GateKind::U1, 7, 6).is_err());
        assert!(solution_parameters(GateKind::U2, 7, 6).is_err());
        assert!(solution_parameters(GateKind::U2, 6, 6).is_ok());
    }

    #[test]
    fn search_contains_reference_entries() {
        let u1 = search_solutions(GateKind::U1, 30, 0.07).unwrap();
        assert!(u1.iter().any(|s| s.m == 0 && s.n == 6));
        let u2 = search_solutions(GateKind::U2, 30, 0.07).unwrap();
        let row = u2.iter().find(|s| s.m == 18 && s.n == 21).unwrap();
        assert_abs_diff_eq!(row.p_star, 24.005, epsilon = 5e-4);
        assert_abs_diff_eq!(row.gt, 73.88, epsilon = 5e-3);
    }

    #[test]
    fn search_sorted_and_empty_for_exact_demand() {
        // 8 n^2 - 4 m^2 is even, an odd square never is: no exact solutions.
        let none = search_solutions(GateKind::U1, 5, 1e-9).unwrap();
        assert!(none.is_empty());

        let u1 = search_solutions(GateKind::U1, 30, 0.07).unwrap();
        assert!(u1.windows(2).all(|w| w[0].gt <= w[1].gt));
    }

    #[test]
    fn search_argument_validation() {
        assert!(search_solutions(GateKind::U1, 0, 0.07).is_err());
        assert!(search_solutions(GateKind::U1, 10, 0.0).is_err());
        assert!(search_solutions(GateKind::U1, 10, -1.0).is_err());
    }

    #[test]
    fn canonical_table_is_the_reference_set() {
        let rows = table_solutions();
        let expect: [(GateKind, u32, u32, f64, f64, f64); 10] = [
            (GateKind::U1, 0, 6, 7.985, 0.0, 37.70),
            (GateKind::U2, 8, 10, 12.01, 2.353, 42.73),
            (GateKind::U1, 12, 15, 16.993, 2.667, 56.55),
            (GateKind::U1, 4, 12, 15.992, 0.707, 71.09),
            (GateKind::U2, 18, 21, 24.005, 3.062, 73.88),
            (GateKind::U2, 10, 15, 19.007, 1.689, 74.41),
            (GateKind::U1, 24, 28, 30.996, 3.328, 90.61),
            (GateKind::U2, 0, 14, 20.006, 0.0, 91.10),
            (GateKind::U1, 25, 29, 32.011, 3.402, 92.34),
            (GateKind::U2, 16, 22, 27.004, 2.022, 99.39),
        ];
        assert_eq!(rows.len(), expect.len());
        for (row, &(gate, m, n, p, d, gt)) in rows.iter().zip(expect.iter()) {
            assert_eq!((row.gate, row.m, row.n), (gate, m, n));
            assert_abs_diff_eq!(row.p_star, p, epsilon = 1e-2);
            assert_abs_diff_eq!(row.delta_over_g, d, epsilon = 5e-3);
            assert_abs_diff_eq!(row.gt, gt, epsilon = 5e-2);
        }
    }
}
