//! Initial-state descriptors, their time-zero quadrature characteristic
//! functions and quadrature densities, and the classical (ground-state) bound.
//!
//! Quadrature convention throughout the crate: x̂_φ = â e^{iφ} + â† e^{−iφ},
//! so the vacuum variance is 1 and the ground-state characteristic function is
//! G_gr(k) = e^{−k²/2}. Many texts use vacuum variance 1/2 instead; every
//! formula here is tied to the variance-1 convention.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::BathParams;
use crate::specfun;

/// Descriptor of the initial single-mode state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateSpec {
    Ground,
    /// Number state |m⟩.
    Fock { m: u32 },
    /// Squeezed vacuum exp[−(r/2)â†² + (r/2)â²]|0⟩ with r ≥ 0.
    SqueezedVacuum { r: f64 },
    /// Thermal state of mean occupation n̄ ≥ 0.
    Thermal { nbar: f64 },
}

impl StateSpec {
    pub fn fock(m: u32) -> Self {
        StateSpec::Fock { m }
    }

    pub fn squeezed_vacuum(r: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::domain(format!("squeeze parameter must satisfy r >= 0, got {r}")));
        }
        Ok(StateSpec::SqueezedVacuum { r })
    }

    pub fn thermal(nbar: f64) -> Result<Self> {
        if !nbar.is_finite() || nbar < 0.0 {
            return Err(Error::domain(format!("thermal occupation must satisfy nbar >= 0, got {nbar}")));
        }
        Ok(StateSpec::Thermal { nbar })
    }

    /// True for the states whose quadrature distribution is a zero-mean Gaussian.
    pub fn is_gaussian(&self) -> bool {
        !matches!(self, StateSpec::Fock { m } if *m > 0)
    }

    /// Quadrature variance ⟨x̂_φ²⟩ at t = 0 for the Gaussian kinds.
    ///
    /// Returns `None` for Fock states with m ≥ 1 (non-Gaussian).
    pub fn gaussian_variance(&self, phi: f64) -> Option<f64> {
        match *self {
            StateSpec::Ground | StateSpec::Fock { m: 0 } => Some(1.0),
            StateSpec::Fock { .. } => None,
            StateSpec::SqueezedVacuum { r } => {
                let (s, c) = phi.sin_cos();
                Some((-2.0 * r).exp() * c * c + (2.0 * r).exp() * s * s)
            }
            StateSpec::Thermal { nbar } => Some(2.0 * nbar + 1.0),
        }
    }

    /// Time-zero quadrature characteristic function G(k, φ) of this state.
    pub fn cf(&self, k: f64, phi: f64) -> f64 {
        match *self {
            StateSpec::Ground => cf_ground(k),
            StateSpec::Fock { m } => cf_fock(m, k),
            StateSpec::SqueezedVacuum { r } => cf_squeezed_vacuum(r, k, phi),
            StateSpec::Thermal { nbar } => (-(nbar + 0.5) * k * k).exp(),
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StateSpec::Ground => write!(f, "ground"),
            StateSpec::Fock { m } => write!(f, "fock:{m}"),
            StateSpec::SqueezedVacuum { r } => write!(f, "sv:{r}"),
            StateSpec::Thermal { nbar } => write!(f, "thermal:{nbar}"),
        }
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    /// Parses the CLI syntax: `ground`, `fock:<m>`, `sv:<r>`, `thermal:<nbar>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ground" {
            return Ok(StateSpec::Ground);
        }
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::config(format!("unknown state '{s}' (expected ground, fock:<m>, sv:<r> or thermal:<nbar>)")))?;
        match kind {
            "fock" => {
                let m: u32 = arg
                    .parse()
                    .map_err(|_| Error::config(format!("fock:<m> needs a non-negative integer, got '{arg}'")))?;
                Ok(StateSpec::Fock { m })
            }
            "sv" => {
                let r: f64 = arg
                    .parse()
                    .map_err(|_| Error::config(format!("sv:<r> needs a real number, got '{arg}'")))?;
                StateSpec::squeezed_vacuum(r).map_err(|e| Error::config(e.to_string()))
            }
            "thermal" => {
                let nbar: f64 = arg
                    .parse()
                    .map_err(|_| Error::config(format!("thermal:<nbar> needs a real number, got '{arg}'")))?;
                StateSpec::thermal(nbar).map_err(|e| Error::config(e.to_string()))
            }
            _ => Err(Error::config(format!("unknown state kind '{kind}'"))),
        }
    }
}

/// Ground-state (classical-limit) characteristic function e^{−k²/2}.
pub fn cf_ground(k: f64) -> f64 {
    (-0.5 * k * k).exp()
}

/// Characteristic function of the number state |m⟩: L_m(k²) e^{−k²/2}.
///
/// Phase-independent, so the φ argument is omitted.
pub fn cf_fock(m: u32, k: f64) -> f64 {
    let k2 = k * k;
    specfun::laguerre(m, k2).expect("finite k") * (-0.5 * k2).exp()
}

/// Characteristic function of the squeezed vacuum: exp(−k² v(φ)/2) with
/// v(φ) = e^{−2r} cos²φ + e^{2r} sin²φ, the variance of x̂_φ.
pub fn cf_squeezed_vacuum(r: f64, k: f64, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    let v = (-2.0 * r).exp() * c * c + (2.0 * r).exp() * s * s;
    (-0.5 * k * k * v).exp()
}

/// Quadrature probability density p(x) of the state at phase φ.
///
/// Fock: p_m(x) = (2π)^{−1/2} (2^m m!)^{−1} H_m(x/√2)² e^{−x²/2}, independent
/// of φ. The Gaussian kinds are zero-mean normals with variance v(φ).
pub fn quadrature_pdf(state: &StateSpec, phi: f64, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("quadrature value must be finite, got {x}")));
    }
    match *state {
        StateSpec::Fock { m } => {
            let h = specfun::hermite(m, x / std::f64::consts::SQRT_2)?;
            let mut norm = (TAU).sqrt().recip();
            for j in 1..=m {
                norm /= 2.0 * f64::from(j);
            }
            Ok(norm * h * h * (-0.5 * x * x).exp())
        }
        _ => {
            let v = state
                .gaussian_variance(phi)
                .expect("all non-Fock kinds are Gaussian");
            Ok((TAU * v).sqrt().recip() * (-0.5 * x * x / v).exp())
        }
    }
}

/// One sampled point of a characteristic function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharFnPoint {
    /// Dimensionless CF argument k ≥ 0 (the probe scaling k = 2|Ω|τ).
    pub k: f64,
    /// Quadrature phase, normalized to [0, 2π).
    pub phi: f64,
    pub value: Complex64,
}

/// A characteristic-function curve with its generating metadata; the central
/// exchange format between the analytic, oracle and sampling paths.
#[derive(Debug, Clone, PartialEq)]
pub struct CharFnCurve {
    pub state: StateSpec,
    pub bath: Option<BathParams>,
    /// Time in units of 1/γ when a bath is present, 0 otherwise.
    pub time: f64,
    /// Points sorted by (φ, k).
    pub points: Vec<CharFnPoint>,
}

impl CharFnCurve {
    /// Evaluates the analytic characteristic function of `state` (evolved for
    /// `time` under `bath` when present) on the product grid `phis` × `ks`.
    pub fn evaluate(
        state: StateSpec,
        bath: Option<BathParams>,
        time: f64,
        phis: &[f64],
        ks: &[f64],
    ) -> Result<Self> {
        if time < 0.0 || !time.is_finite() {
            return Err(Error::domain(format!("time must satisfy t >= 0, got {time}")));
        }
        if bath.is_none() && time > 0.0 {
            return Err(Error::domain("time > 0 requires a bath".to_string()));
        }
        let mut points = Vec::with_capacity(phis.len() * ks.len());
        for &phi in phis {
            let phi = phi.rem_euclid(TAU);
            for &k in ks {
                if k < 0.0 || !k.is_finite() {
                    return Err(Error::domain(format!("k must satisfy k >= 0, got {k}")));
                }
                let value = match bath {
                    Some(b) => crate::evolution::cf_evolved(&state, &b, time, k, phi)?,
                    None => Complex64::new(state.cf(k, phi), 0.0),
                };
                points.push(CharFnPoint { k, phi, value });
            }
        }
        points.sort_by(|a, b| {
            (a.phi, a.k)
                .partial_cmp(&(b.phi, b.k))
                .expect("grid values are finite")
        });
        Ok(CharFnCurve { state, bath, time, points })
    }
}
