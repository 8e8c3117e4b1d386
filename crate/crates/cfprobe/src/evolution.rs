//! Closed-form thermal-bath evolution of characteristic functions and the
//! derived observables: evolved CFs, the t = 0 decay derivative and its
//! maximizing argument k_max, the Mandel Q parameter, mean excitation,
//! squeezed-vacuum variance decay and the decay-rate comparison.
//!
//! Time is dimensionless throughout: every `t` argument is γt. The damping
//! rate γ enters only quantities with physical-rate dimension (the time
//! derivative of the characteristic function and the occupation decay rate).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{laguerre, laguerre_assoc};
use crate::states::{cf_fock, StateSpec};

/// Thermal-bath parameters of the damping channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParams {
    /// Damping rate γ > 0 (units 1/time).
    pub gamma: f64,
    /// Mean reservoir occupation n̄ ≥ 0 (dimensionless).
    pub nbar: f64,
}

impl BathParams {
    pub fn new(gamma: f64, nbar: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::domain(format!("damping rate must satisfy gamma > 0, got {gamma}")));
        }
        if !(nbar.is_finite() && nbar >= 0.0) {
            return Err(Error::domain(format!("reservoir occupation must satisfy nbar >= 0, got {nbar}")));
        }
        Ok(BathParams { gamma, nbar })
    }
}

/// Snapshot of the decay diagnostics at one time, as plotted against each
/// other in the Fock-state comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedObservables {
    /// Time in units of 1/γ.
    pub t: f64,
    /// ⟨n̂(t)⟩.
    pub mean_n: f64,
    /// Mandel Q(t).
    pub mandel_q: f64,
    /// Occupation probability of the initially prepared Fock state (oracle-computed).
    pub p_initial: f64,
    /// Normalized characteristic function g_m(k_max, t) = G_m(k_max,t)/G_m(k_max,0).
    pub g_norm: f64,
}

fn check_time(t: f64) -> Result<()> {
    if t.is_finite() && t >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("time must satisfy t >= 0, got {t}")))
    }
}

/// Thermal-bath propagation of a Wigner characteristic function:
///
///   χ(ξ, t) = exp{−(n̄ + 1/2)|ξ|² [1 − e^{−2t}]} · χ(ξ e^{−t}, 0),
///
/// with t in γt units and `initial_cf` the Wigner CF at t = 0.
pub fn wigner_cf_evolved<F>(initial_cf: F, bath: &BathParams, t: f64, xi: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    check_time(t)?;
    let decay = (-t).exp();
    let env = (-(bath.nbar + 0.5) * xi.norm_sqr() * (1.0 - decay * decay)).exp();
    Ok(initial_cf(xi * decay) * env)
}

/// Wigner characteristic function of `state` at t = 0, χ(ξ, 0).
pub fn initial_wigner_cf(state: &StateSpec, xi: Complex64) -> Complex64 {
    let n2 = xi.norm_sqr();
    match *state {
        StateSpec::Ground => Complex64::new((-0.5 * n2).exp(), 0.0),
        StateSpec::Fock { m } => {
            Complex64::new(laguerre(m, n2).expect("finite |xi|") * (-0.5 * n2).exp(), 0.0)
        }
        StateSpec::Thermal { nbar } => Complex64::new((-(nbar + 0.5) * n2).exp(), 0.0),
        StateSpec::SqueezedVacuum { r } => {
            // Bogoliubov transform of the vacuum CF: ξ' = ξ cosh r + ξ* sinh r
            let xip = xi * r.cosh() + xi.conj() * r.sinh();
            Complex64::new((-0.5 * xip.norm_sqr()).exp(), 0.0)
        }
    }
}

/// Evolved quadrature characteristic function G(k, t, φ) = χ(i k e^{−iφ}, t).
pub fn cf_evolved(state: &StateSpec, bath: &BathParams, t: f64, k: f64, phi: f64) -> Result<Complex64> {
    let xi = Complex64::new(0.0, k) * Complex64::from_polar(1.0, -phi);
    wigner_cf_evolved(|z| initial_wigner_cf(state, z), bath, t, xi)
}

/// Closed form of the evolved Fock-state characteristic function:
///
///   G_m(k, t) = exp{−n̄ [1 − e^{−2t}] k²} · L_m(k² e^{−2t}) · e^{−k²/2}.
pub fn cf_fock_evolved(m: u32, bath: &BathParams, t: f64, k: f64) -> Result<f64> {
    check_time(t)?;
    let u = (-2.0 * t).exp();
    let k2 = k * k;
    Ok((-bath.nbar * (1.0 - u) * k2).exp() * laguerre(m, k2 * u)? * (-0.5 * k2).exp())
}

/// Minimum quadrature variance of the evolved squeezed vacuum (φ = 0):
///
///   ⟨(Δx̂(t))²⟩_min = (1 + 2n̄)(1 − e^{−2t}) + e^{−2r} e^{−2t}.
pub fn variance_min_squeezed(r: f64, bath: &BathParams, t: f64) -> Result<f64> {
    check_time(t)?;
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::domain(format!("squeeze parameter must satisfy r >= 0, got {r}")));
    }
    let u = (-2.0 * t).exp();
    Ok((1.0 + 2.0 * bath.nbar) * (1.0 - u) + (-2.0 * r).exp() * u)
}

/// Closed form of the evolved squeezed-vacuum CF at the minimum-variance
/// phase: G_sv(k, t) = exp(−k² ⟨(Δx̂(t))²⟩_min / 2).
pub fn cf_sv_evolved_min_phase(r: f64, bath: &BathParams, t: f64, k: f64) -> Result<f64> {
    Ok((-0.5 * k * k * variance_min_squeezed(r, bath, t)?).exp())
}

/// Initial decay rate of the Fock-state characteristic function:
///
///   Ġ_m(k, 0) = 2γ [L_{m−1}^(1)(k²) − n̄ L_m(k²)] k² e^{−k²/2},
///
/// with L_{−1}^(1) ≡ 0 for m = 0. Units 1/time (this is a physical rate).
pub fn cf_fock_time_derivative_at_zero(m: u32, bath: &BathParams, k: f64) -> Result<f64> {
    if !k.is_finite() {
        return Err(Error::domain(format!("k must be finite, got {k}")));
    }
    let k2 = k * k;
    let gain = if m == 0 { 0.0 } else { laguerre_assoc(m - 1, 1, k2)? };
    Ok(2.0 * bath.gamma * (gain - bath.nbar * laguerre(m, k2)?) * k2 * (-0.5 * k2).exp())
}

/// Deterministic 1-D maximizer: grid scan (step `scan_step`) followed by
/// golden-section refinement of the bracketing interval.
fn argmax_scan_golden<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, scan_step: f64) -> f64 {
    let n = ((hi - lo) / scan_step).round() as usize;
    let mut best_i = 0usize;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=n {
        let k = lo + (hi - lo) * i as f64 / n as f64;
        let v = f(k);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let step = (hi - lo) / n as f64;
    let mut a = (lo + step * best_i as f64 - step).max(lo);
    let mut b = (lo + step * best_i as f64 + step).min(hi);
    // golden-section search for the maximum on [a, b]
    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > 1e-10 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Argument k_max maximizing |Ġ_m(k, 0)| over `k_range` ⊆ [0, 12]:
/// the most decoherence-sensitive argument of the characteristic function.
pub fn find_kmax_fock(m: u32, bath: &BathParams, k_range: (f64, f64)) -> Result<f64> {
    let (lo, hi) = k_range;
    if !(lo.is_finite() && hi.is_finite()) || lo < 0.0 || hi > 12.0 || hi <= lo {
        return Err(Error::domain(format!("k range must be a nonempty interval within [0, 12], got [{lo}, {hi}]")));
    }
    let obj = |k: f64| {
        cf_fock_time_derivative_at_zero(m, bath, k)
            .expect("finite k")
            .abs()
    };
    Ok(argmax_scan_golden(obj, lo, hi, 0.001))
}

/// Most sensitive argument for the squeezed vacuum, k_max = √(2 e^{2r});
/// independent of the reservoir occupation n̄.
pub fn kmax_squeezed(r: f64) -> Result<f64> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::domain(format!("squeeze parameter must satisfy r >= 0, got {r}")));
    }
    Ok((2.0 * (2.0 * r).exp()).sqrt())
}

/// Numerical maximizer of |∂_t G_sv(k, t)|_{t=0}| over k; cross-check route
/// for [`kmax_squeezed`].
pub fn kmax_squeezed_numeric(r: f64, bath: &BathParams, k_hi: f64) -> Result<f64> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(Error::domain(format!("squeeze parameter must satisfy r >= 0, got {r}")));
    }
    // ∂_t G_sv(k, 0) = −(k²/2) V'(0) e^{−k² e^{−2r}/2}, V'(0) = 2γ(1 + 2n̄ − e^{−2r})
    let vdot = 2.0 * bath.gamma * (1.0 + 2.0 * bath.nbar - (-2.0 * r).exp());
    if vdot == 0.0 {
        return Err(Error::domain(
            "the state is stationary (r = 0, nbar = 0): |dG/dt| vanishes identically".to_string(),
        ));
    }
    let v0 = (-2.0 * r).exp();
    let obj = move |k: f64| (0.5 * k * k * vdot * (-0.5 * k * k * v0).exp()).abs();
    Ok(argmax_scan_golden(obj, 0.0, k_hi, 0.001))
}

/// Mandel parameter of an initially m-quantum state damped by the bath:
///
///   Q(t) = [(n̄² − 2n̄m − m) e^{−4t} + 2n̄(m − n̄) e^{−2t} + n̄²]
///          / [m e^{−2t} + n̄(1 − e^{−2t})].
///
/// Q(0) = −1 for every m ≥ 1 and Q(∞) = n̄. Requires m ≥ 1 so the
/// denominator is nonzero at t = 0; m = 0 with n̄ = 0 is the undefined 0/0.
pub fn mandel_q(m: u32, bath: &BathParams, t: f64) -> Result<f64> {
    check_time(t)?;
    if m == 0 {
        return Err(Error::domain(
            "mandel_q needs m >= 1 (for m = 0 the t = 0 expression degenerates to 0/0)".to_string(),
        ));
    }
    let mf = f64::from(m);
    let nb = bath.nbar;
    let u = (-2.0 * t).exp();
    let num = (nb * nb - 2.0 * nb * mf - mf) * u * u + 2.0 * nb * (mf - nb) * u + nb * nb;
    let den = mf * u + nb * (1.0 - u);
    Ok(num / den)
}

/// Mean excitation ⟨n̂(t)⟩ = m e^{−2t} + n̄(1 − e^{−2t}): exponential decay of
/// the initial occupation toward the thermal value.
pub fn mean_excitation(m: u32, bath: &BathParams, t: f64) -> Result<f64> {
    check_time(t)?;
    let u = (-2.0 * t).exp();
    Ok(f64::from(m) * u + bath.nbar * (1.0 - u))
}

/// Ratio of the initial decay rate of the normalized characteristic function
/// g_m(k_max, t) to the initial decay rate of the occupation probability
/// p_m(t), both per unit γt:
///
///   ratio = [−ġ_m(k_max, 0)] / [−ṗ_m(0)].
///
/// The occupation rate comes from the master-equation gain/loss balance.
pub fn decay_rate_ratio(m: u32, bath: &BathParams) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("decay_rate_ratio needs m >= 1".to_string()));
    }
    let k_max = find_kmax_fock(m, bath, (0.0, 12.0))?;
    decay_rate_ratio_at(m, bath, k_max)
}

/// Same ratio evaluated at an arbitrary k instead of k_max.
pub fn decay_rate_ratio_at(m: u32, bath: &BathParams, k: f64) -> Result<f64> {
    if m == 0 {
        return Err(Error::domain("decay_rate_ratio needs m >= 1".to_string()));
    }
    let g0 = cf_fock(m, k);
    if g0 == 0.0 {
        return Err(Error::numerical(format!("G_m(k, 0) vanishes at k = {k}; normalized rate undefined")));
    }
    let g_rate = -cf_fock_time_derivative_at_zero(m, bath, k)? / (bath.gamma * g0);
    let p_rate = crate::oracle::fock_survival_decay_rate(m, bath) / bath.gamma;
    Ok(g_rate / p_rate)
}

/// Times at which g_m(k_max, ·) and the oracle p_m(·) first fall to one half,
/// and their ratio t_half(p)/t_half(g); the half-life counterpart of
/// [`decay_rate_ratio`], emitted for comparison.
pub fn halflife_comparison(m: u32, bath: &BathParams, k_max: f64) -> Result<(f64, f64, f64)> {
    let g0 = cf_fock(m, k_max);
    if g0 == 0.0 {
        return Err(Error::numerical("G_m(k_max, 0) vanishes".to_string()));
    }
    // first crossing of 1/2 on a fine grid, then bisection
    let g = |t: f64| cf_fock_evolved(m, bath, t, k_max).expect("t >= 0") / g0 - 0.5;
    let t_g = first_root(g, 0.0, 5.0, 1e-4)
        .ok_or_else(|| Error::numerical("normalized CF never reaches 1/2".to_string()))?;

    let cfg = crate::oracle::IntegratorConfig::default_for_dim(64.max(2 * m as usize + 8));
    let mut p0 = vec![0.0; cfg.n_trunc];
    p0[m as usize] = 1.0;
    let step = 1e-3;
    let mut t = 0.0;
    let mut p = p0;
    let mut prev = 1.0;
    let t_p = loop {
        let next = crate::oracle::evolve_occupations(&p, bath, step, &cfg)?;
        t += step;
        let cur = next[m as usize];
        if cur <= 0.5 {
            // linear interpolation inside the step
            break t - step + step * (prev - 0.5) / (prev - cur);
        }
        if t > 20.0 {
            return Err(Error::numerical("occupation never reaches 1/2".to_string()));
        }
        prev = cur;
        p = next;
    };
    Ok((t_g, t_p, t_p / t_g))
}

fn first_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, scan: f64) -> Option<f64> {
    let mut a = lo;
    let mut fa = f(a);
    let mut x = lo + scan;
    while x <= hi {
        let fx = f(x);
        if fa * fx <= 0.0 && fa > 0.0 {
            // bisect [a, x]
            let (mut l, mut r) = (a, x);
            for _ in 0..60 {
                let mid = 0.5 * (l + r);
                if f(l) * f(mid) <= 0.0 {
                    r = mid;
                } else {
                    l = mid;
                }
            }
            return Some(0.5 * (l + r));
        }
        a = x;
        fa = fx;
        x += scan;
    }
    None
}

/// Characteristic function of an incoherent Fock mixture,
/// Σ_n p_n L_n(k²) e^{−k²/2}.
pub fn cf_as_fock_mixture(occupations: &[(u32, f64)], k: f64) -> Result<f64> {
    let mut total = 0.0;
    let mut sum = 0.0;
    for &(n, p) in occupations {
        if !(p.is_finite() && p >= 0.0) {
            return Err(Error::domain(format!("occupation weight must satisfy p >= 0, got p_{n} = {p}")));
        }
        total += p;
        sum += p * cf_fock(n, k);
    }
    if total > 1.0 + 1e-9 {
        return Err(Error::domain(format!("occupation weights sum to {total} > 1")));
    }
    Ok(sum)
}
