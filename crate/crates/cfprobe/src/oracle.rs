//! Independent numerical ground truth: truncated-Fock-basis integration of the
//! thermal-bath master equation
//!
//!   dρ̂/dt = γ(n̄+1)[2âρ̂â† − â†âρ̂ − ρ̂â†â] + γn̄[2â†ρ̂â − ââ†ρ̂ − ρ̂ââ†],
//!
//! plus direct computation of characteristic functions and moments from the
//! density matrix. Nothing here reuses the closed-form evolution module, so
//! the two paths cross-validate each other.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::evolution::BathParams;
use crate::states::StateSpec;

/// Tail mass above which a state no longer fits its truncated basis.
pub const TAIL_HEALTH_TOL: f64 = 1e-8;
/// Stricter tail requirement imposed when building initial states.
pub const BUILD_TAIL_TOL: f64 = 1e-10;

/// Hermitian, unit-trace state in a truncated Fock basis.
///
/// Construction validates Hermiticity (1e−12), trace (1e−9) and diagonal
/// nonnegativity (−1e−12). Truncation health — the mass captured in the top
/// five levels — is recorded via [`DensityMatrix::tail_mass`] and enforced at
/// the operations that physically require it ([`evolve`],
/// [`build_initial_density`], and the ion-probe embedding).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    data: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn from_matrix(data: DMatrix<Complex64>) -> Result<Self> {
        if data.nrows() != data.ncols() || data.nrows() == 0 {
            return Err(Error::domain(format!(
                "density matrix must be square and nonempty, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        let dim = data.nrows();
        let mut herm_err = 0.0f64;
        for n in 0..dim {
            for m in 0..=n {
                herm_err = herm_err.max((data[(m, n)] - data[(n, m)].conj()).norm());
            }
        }
        if herm_err > 1e-12 {
            return Err(Error::domain(format!("density matrix is not Hermitian: max asymmetry {herm_err:.3e}")));
        }
        let trace: Complex64 = data.diagonal().sum();
        if (trace.re - 1.0).abs() > 1e-9 || trace.im.abs() > 1e-9 {
            return Err(Error::domain(format!("density matrix trace {trace} deviates from 1")));
        }
        for n in 0..dim {
            if data[(n, n)].re < -1e-12 {
                return Err(Error::domain(format!("negative occupation p_{n} = {:.3e}", data[(n, n)].re)));
            }
        }
        Ok(DensityMatrix { data })
    }

    /// Random full-rank mixed state (Ginibre construction), reproducible from
    /// the seed. Intended for validation runs; it deliberately occupies the
    /// whole truncated basis, so its tail mass is large by construction.
    pub fn random(dim: usize, seed: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let a = DMatrix::from_fn(dim, dim, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let mut rho = &a * a.adjoint();
        let trace: Complex64 = rho.diagonal().sum();
        rho /= trace;
        // symmetrize away the last-ulp asymmetry of the matrix product
        let rho_h = (rho.adjoint() + &rho) * Complex64::new(0.5, 0.0);
        DensityMatrix { data: rho_h }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        self.data.diagonal().iter().map(|z| z.re).sum()
    }

    /// Diagonal occupation probabilities p_n.
    pub fn occupations(&self) -> Vec<f64> {
        self.data.diagonal().iter().map(|z| z.re).collect()
    }

    /// Mass captured in the top five levels of the basis, Σ_{n ≥ dim−5} p_n.
    pub fn tail_mass(&self) -> f64 {
        let dim = self.dim();
        let from = dim.saturating_sub(5);
        (from..dim).map(|n| self.data[(n, n)].re).sum()
    }

    /// ⟨n̂⟩ = Σ n p_n.
    pub fn mean_number(&self) -> f64 {
        self.occupations()
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    /// ⟨n̂²⟩ = Σ n² p_n.
    pub fn second_number_moment(&self) -> f64 {
        self.occupations()
            .iter()
            .enumerate()
            .map(|(n, p)| (n as f64) * (n as f64) * p)
            .sum()
    }

    /// ⟨x̂_φ²⟩ = 2 Re[e^{2iφ} Tr(ρ̂â²)] + 2⟨n̂⟩ + 1.
    pub fn quadrature_second_moment(&self, phi: f64) -> f64 {
        let dim = self.dim();
        let mut tr_a2 = Complex64::default();
        for m in 2..dim {
            let w = (m as f64 * (m as f64 - 1.0)).sqrt();
            tr_a2 += self.data[(m, m - 2)] * w;
        }
        2.0 * (Complex64::from_polar(1.0, 2.0 * phi) * tr_a2).re + 2.0 * self.mean_number() + 1.0
    }
}

/// Numerical scheme identifiers for [`evolve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Classical fixed-step 4th-order Runge–Kutta with step-halving acceptance.
    ClassicRk4,
}

/// Integration controls, all in γt units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub n_trunc: usize,
    /// Initial step (refined downward until accepted); at most 0.01.
    pub step: f64,
    pub method: Method,
    /// Step-halving acceptance tolerance in max norm; at most 1e−9.
    pub tol: f64,
}

impl IntegratorConfig {
    pub fn new(n_trunc: usize, step: f64, tol: f64) -> Result<Self> {
        if n_trunc == 0 {
            return Err(Error::domain("n_trunc must be positive".to_string()));
        }
        if !(step > 0.0 && step <= 0.01) {
            return Err(Error::domain(format!("integrator step must be in (0, 0.01], got {step}")));
        }
        if !(tol > 0.0 && tol <= 1e-9) {
            return Err(Error::domain(format!("integrator tolerance must be in (0, 1e-9], got {tol}")));
        }
        Ok(IntegratorConfig { n_trunc, step, method: Method::ClassicRk4, tol })
    }

    pub fn default_for_dim(n_trunc: usize) -> Self {
        IntegratorConfig { n_trunc, step: 0.01, method: Method::ClassicRk4, tol: 1e-9 }
    }
}

/// Right-hand side of the master equation, dρ̂/dt.
///
/// In the Fock basis the generator is local:
///
///   (dρ/dt)_{mn} = γ(n̄+1)[2√((m+1)(n+1)) ρ_{m+1,n+1} − (m+n) ρ_{mn}]
///                + γn̄    [2√(mn) ρ_{m−1,n−1} − (m+n+2) ρ_{mn}].
///
/// The trace of the result vanishes up to truncation edge effects (loss out of
/// the top level).
pub fn lindblad_rhs(rho: &DensityMatrix, bath: &BathParams) -> DMatrix<Complex64> {
    let dim = rho.dim();
    let mut out = DMatrix::<Complex64>::zeros(dim, dim);
    rhs_into(rho.entries().as_slice(), out.as_mut_slice(), dim, bath.nbar);
    out * Complex64::new(bath.gamma, 0.0)
}

/// dρ/d(γt) written into `dst`; slices are column-major dim×dim.
fn rhs_into(src: &[Complex64], dst: &mut [Complex64], dim: usize, nbar: f64) {
    let root = |i: usize| (i as f64).sqrt();
    for n in 0..dim {
        for m in 0..dim {
            let idx = n * dim + m;
            let mut acc = src[idx] * (-(nbar + 1.0) * (m + n) as f64 - nbar * (m + n + 2) as f64);
            if m + 1 < dim && n + 1 < dim {
                acc += src[(n + 1) * dim + (m + 1)] * (2.0 * (nbar + 1.0) * root(m + 1) * root(n + 1));
            }
            if m >= 1 && n >= 1 {
                acc += src[(n - 1) * dim + (m - 1)] * (2.0 * nbar * root(m) * root(n));
            }
            dst[idx] = acc;
        }
    }
}

/// dp/d(γt) of the occupation (birth–death) chain; the diagonal restriction of
/// the master equation, which preserves diagonality of diagonal states.
fn occupation_rhs_into(src: &[f64], dst: &mut [f64], nbar: f64) {
    let dim = src.len();
    for n in 0..dim {
        let nf = n as f64;
        let mut acc = -2.0 * (nbar + 1.0) * nf * src[n] - 2.0 * nbar * (nf + 1.0) * src[n];
        if n + 1 < dim {
            acc += 2.0 * (nbar + 1.0) * (nf + 1.0) * src[n + 1];
        }
        if n >= 1 {
            acc += 2.0 * nbar * nf * src[n - 1];
        }
        dst[n] = acc;
    }
}

fn rk4_fixed_span_matrix(rho0: &[Complex64], dim: usize, nbar: f64, span: f64, step: f64) -> Vec<Complex64> {
    let n_steps = (span / step).ceil().max(1.0) as usize;
    let h = span / n_steps as f64;
    let len = dim * dim;
    let mut y = rho0.to_vec();
    let mut stage = vec![Complex64::default(); len];
    let mut k1 = vec![Complex64::default(); len];
    let mut k2 = vec![Complex64::default(); len];
    let mut k3 = vec![Complex64::default(); len];
    let mut k4 = vec![Complex64::default(); len];
    for _ in 0..n_steps {
        rhs_into(&y, &mut k1, dim, nbar);
        for i in 0..len {
            stage[i] = y[i] + k1[i] * (0.5 * h);
        }
        rhs_into(&stage, &mut k2, dim, nbar);
        for i in 0..len {
            stage[i] = y[i] + k2[i] * (0.5 * h);
        }
        rhs_into(&stage, &mut k3, dim, nbar);
        for i in 0..len {
            stage[i] = y[i] + k3[i] * h;
        }
        rhs_into(&stage, &mut k4, dim, nbar);
        let w = h / 6.0;
        for i in 0..len {
            y[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * w;
        }
    }
    y
}

fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Evolves `rho0` for time `t` (γt units) under the master equation.
///
/// Fixed-step RK4; the step is halved until two successive refinements agree
/// within `cfg.tol` in max norm. Errors if the truncated basis stops holding
/// the state (tail-mass health check on input and output).
pub fn evolve(rho0: &DensityMatrix, bath: &BathParams, t: f64, cfg: &IntegratorConfig) -> Result<DensityMatrix> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::domain(format!("time must satisfy t >= 0, got {t}")));
    }
    if rho0.dim() != cfg.n_trunc {
        return Err(Error::domain(format!(
            "state dimension {} does not match integrator n_trunc {}",
            rho0.dim(),
            cfg.n_trunc
        )));
    }
    check_tail(rho0.tail_mass(), cfg.n_trunc, TAIL_HEALTH_TOL)?;
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    let dim = rho0.dim();
    let src = rho0.entries().as_slice();
    let mut h = cfg.step.min(t);
    let mut prev = rk4_fixed_span_matrix(src, dim, bath.nbar, t, h);
    let accepted = loop {
        h *= 0.5;
        let cur = rk4_fixed_span_matrix(src, dim, bath.nbar, t, h);
        let diff = max_abs_diff(&prev, &cur);
        if diff < cfg.tol {
            break cur;
        }
        if h < 1e-7 {
            return Err(Error::numerical(format!(
                "step halving did not converge (step {h:.3e}, residual {diff:.3e})"
            )));
        }
        prev = cur;
    };
    let out = DensityMatrix::from_matrix(DMatrix::from_column_slice(dim, dim, &accepted))
        .map_err(|e| Error::numerical(format!("integration left the state manifold: {e}")))?;
    check_tail(out.tail_mass(), cfg.n_trunc, TAIL_HEALTH_TOL)?;
    Ok(out)
}

/// Diagonal fast path: evolves an occupation vector for time `t` (γt units).
pub fn evolve_occupations(p0: &[f64], bath: &BathParams, t: f64, cfg: &IntegratorConfig) -> Result<Vec<f64>> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::domain(format!("time must satisfy t >= 0, got {t}")));
    }
    if p0.len() != cfg.n_trunc {
        return Err(Error::domain(format!(
            "occupation vector length {} does not match integrator n_trunc {}",
            p0.len(),
            cfg.n_trunc
        )));
    }
    if t == 0.0 {
        return Ok(p0.to_vec());
    }
    let run = |step: f64| -> Vec<f64> {
        let n_steps = (t / step).ceil().max(1.0) as usize;
        let h = t / n_steps as f64;
        let dim = p0.len();
        let mut y = p0.to_vec();
        let mut stage = vec![0.0; dim];
        let mut k1 = vec![0.0; dim];
        let mut k2 = vec![0.0; dim];
        let mut k3 = vec![0.0; dim];
        let mut k4 = vec![0.0; dim];
        for _ in 0..n_steps {
            occupation_rhs_into(&y, &mut k1, bath.nbar);
            for i in 0..dim {
                stage[i] = y[i] + 0.5 * h * k1[i];
            }
            occupation_rhs_into(&stage, &mut k2, bath.nbar);
            for i in 0..dim {
                stage[i] = y[i] + 0.5 * h * k2[i];
            }
            occupation_rhs_into(&stage, &mut k3, bath.nbar);
            for i in 0..dim {
                stage[i] = y[i] + h * k3[i];
            }
            occupation_rhs_into(&stage, &mut k4, bath.nbar);
            for i in 0..dim {
                y[i] += h / 6.0 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
            }
        }
        y
    };
    let mut h = cfg.step.min(t);
    let mut prev = run(h);
    loop {
        h *= 0.5;
        let cur = run(h);
        let diff = prev
            .iter()
            .zip(&cur)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if diff < cfg.tol {
            let tail: f64 = cur[cur.len().saturating_sub(5)..].iter().sum();
            check_tail(tail, cfg.n_trunc, TAIL_HEALTH_TOL)?;
            return Ok(cur);
        }
        if h < 1e-7 {
            return Err(Error::numerical(format!(
                "step halving did not converge (step {h:.3e}, residual {diff:.3e})"
            )));
        }
        prev = cur;
    }
}

fn check_tail(tail: f64, n_trunc: usize, tol: f64) -> Result<()> {
    if tail < tol {
        Ok(())
    } else {
        Err(Error::Truncation { n_trunc, tail, required: 2 * n_trunc })
    }
}

/// Loss rate −ṗ_m(0) = 2γ[(n̄+1)m + n̄(m+1)] of a pure Fock state, read off
/// the gain/loss balance of the master equation at t = 0.
pub fn fock_survival_decay_rate(m: u32, bath: &BathParams) -> f64 {
    2.0 * bath.gamma * ((bath.nbar + 1.0) * f64::from(m) + bath.nbar * f64::from(m + 1))
}

/// Fock-basis matrix of the displacement operator D(α) = exp(αâ† − α*â):
///
///   ⟨m|D(α)|n⟩ = √(n!/m!) α^{m−n} e^{−|α|²/2} L_n^{(m−n)}(|α|²),  m ≥ n,
///
/// with the conjugate-symmetric counterpart (α → −α*) below the diagonal.
fn displacement_matrix(dim: usize, alpha: Complex64) -> DMatrix<Complex64> {
    let x = alpha.norm_sqr();
    let envelope = (-0.5 * x).exp();
    let mut d = DMatrix::<Complex64>::zeros(dim, dim);
    for off in 0..dim {
        // prefactor √(n!/m!) α^{m−n} e^{−|α|²/2} at n = 0, m = off
        let mut pref = Complex64::new(envelope, 0.0);
        for j in 1..=off {
            pref *= alpha / (j as f64).sqrt();
        }
        let lower_sign = if off % 2 == 0 { 1.0 } else { -1.0 };
        // one recurrence pass along the whole diagonal: L_n^{(off)}(x) for all n
        let mut lag_prev = 0.0; // L_{n−1}
        let mut lag = 1.0; // L_n, starting at L_0
        for n in 0..dim - off {
            let upper = pref * lag;
            d[(n + off, n)] = upper;
            if off > 0 {
                d[(n, n + off)] = upper.conj() * lower_sign;
            }
            let nf = n as f64;
            let next = ((2.0 * nf + 1.0 + off as f64 - x) * lag - (nf + off as f64) * lag_prev) / (nf + 1.0);
            lag_prev = lag;
            lag = next;
            // advance prefactor: n → n+1 multiplies by √((n+1)/(n+1+off))
            pref *= ((nf + 1.0) / (nf + 1.0 + off as f64)).sqrt();
        }
    }
    d
}

/// Quadrature characteristic function from the density matrix:
/// G(k, φ) = Tr[ρ̂ D(ξ)] with ξ = i k e^{−iφ}.
pub fn cf_from_density(rho: &DensityMatrix, k: f64, phi: f64) -> Complex64 {
    cf_from_density_grid(rho, &[k], &[phi])[0][0]
}

/// Grid evaluation of [`cf_from_density`]; the displacement matrix is built
/// once per k and re-phased per φ (D(ike^{−iφ}) = U_φ† D(ik) U_φ with
/// U_φ = diag e^{inφ}). Result is indexed `[ik][iphi]`.
pub fn cf_from_density_grid(rho: &DensityMatrix, ks: &[f64], phis: &[f64]) -> Vec<Vec<Complex64>> {
    let dim = rho.dim();
    let data = rho.entries();
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let d = displacement_matrix(dim, Complex64::new(0.0, k));
        let mut per_phi = Vec::with_capacity(phis.len());
        for &phi in phis {
            // G = Σ_{m,n} ρ_nm d_mn e^{−i(m−n)φ}
            let mut acc = Complex64::default();
            for n in 0..dim {
                for m in 0..dim {
                    let twist = Complex64::from_polar(1.0, -(m as f64 - n as f64) * phi);
                    acc += data[(n, m)] * d[(m, n)] * twist;
                }
            }
            per_phi.push(acc);
        }
        out.push(per_phi);
    }
    out
}

/// Builds the density matrix of `state` in an `n_trunc`-dimensional basis.
///
/// The squeezed vacuum is exp[−(r/2)â†² + (r/2)â²]|0⟩, computed by applying
/// the exponential of the truncated squeeze generator to the vacuum vector.
/// Errors unless the captured tail mass is below 1e−10.
pub fn build_initial_density(state: &StateSpec, n_trunc: usize) -> Result<DensityMatrix> {
    if n_trunc == 0 {
        return Err(Error::domain("n_trunc must be positive".to_string()));
    }
    let rho = match *state {
        StateSpec::Ground => fock_density(0, n_trunc)?,
        StateSpec::Fock { m } => fock_density(m, n_trunc)?,
        StateSpec::Thermal { nbar } => {
            let mut m = DMatrix::<Complex64>::zeros(n_trunc, n_trunc);
            if nbar == 0.0 {
                m[(0, 0)] = Complex64::new(1.0, 0.0);
            } else {
                for n in 0..n_trunc {
                    let p = nbar.powi(n as i32) / (nbar + 1.0).powi(n as i32 + 1);
                    m[(n, n)] = Complex64::new(p, 0.0);
                }
            }
            DensityMatrix::from_matrix(m).map_err(|_| Error::Truncation {
                n_trunc,
                tail: (nbar / (nbar + 1.0)).powi(n_trunc as i32),
                required: 2 * n_trunc,
            })?
        }
        StateSpec::SqueezedVacuum { r } => {
            let psi = squeeze_vacuum_vector(r, n_trunc);
            let mut m = DMatrix::<Complex64>::zeros(n_trunc, n_trunc);
            for i in 0..n_trunc {
                for j in 0..n_trunc {
                    m[(i, j)] = Complex64::new(psi[i] * psi[j], 0.0);
                }
            }
            DensityMatrix::from_matrix(m)?
        }
    };
    check_tail(rho.tail_mass(), n_trunc, BUILD_TAIL_TOL)?;
    Ok(rho)
}

/// [`build_initial_density`] with automatic escalation: doubles `n_trunc`
/// until the tail-mass requirement holds (up to `cap`).
pub fn build_initial_density_auto(state: &StateSpec, n_trunc: usize, cap: usize) -> Result<DensityMatrix> {
    let mut dim = n_trunc.max(1);
    loop {
        match build_initial_density(state, dim) {
            Err(Error::Truncation { .. }) if dim < cap => dim *= 2,
            other => return other,
        }
    }
}

fn fock_density(m: u32, n_trunc: usize) -> Result<DensityMatrix> {
    if (m as usize) >= n_trunc {
        return Err(Error::Truncation { n_trunc, tail: 1.0, required: 2 * (m as usize + 1) });
    }
    let mut data = DMatrix::<Complex64>::zeros(n_trunc, n_trunc);
    data[(m as usize, m as usize)] = Complex64::new(1.0, 0.0);
    DensityMatrix::from_matrix(data)
}

/// exp[(r/2)(â² − â†²)] |0⟩ in the truncated basis, by substepped Taylor
/// application of the (real antisymmetric) generator — exactly orthogonal, so
/// the result keeps unit norm up to roundoff.
fn squeeze_vacuum_vector(r: f64, dim: usize) -> Vec<f64> {
    let apply_k = |v: &[f64], scale: f64| -> Vec<f64> {
        // (Kv)_n = s[√((n+1)(n+2)) v_{n+2} − √(n(n−1)) v_{n−2}], s = scale·r/2
        let s = scale * 0.5 * r;
        let mut out = vec![0.0; dim];
        for n in 0..dim {
            let mut acc = 0.0;
            if n + 2 < dim {
                acc += ((n as f64 + 1.0) * (n as f64 + 2.0)).sqrt() * v[n + 2];
            }
            if n >= 2 {
                acc -= ((n as f64) * (n as f64 - 1.0)).sqrt() * v[n - 2];
            }
            out[n] = s * acc;
        }
        out
    };
    let substeps = (r * dim as f64).ceil().max(1.0) as usize;
    let scale = 1.0 / substeps as f64;
    let mut psi = vec![0.0; dim];
    psi[0] = 1.0;
    for _ in 0..substeps {
        // Taylor series of exp(K/substeps) applied to psi
        let mut term = psi.clone();
        let mut sum = psi.clone();
        for order in 1..200 {
            term = apply_k(&term, scale);
            for x in term.iter_mut() {
                *x /= order as f64;
            }
            let mut norm2 = 0.0;
            for i in 0..dim {
                sum[i] += term[i];
                norm2 += term[i] * term[i];
            }
            if norm2 < 1e-34 {
                break;
            }
        }
        psi = sum;
    }
    let norm = psi.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in psi.iter_mut() {
        *x /= norm;
    }
    psi
}

/// Diagonal of the density matrix; nonnegative and summing to one within the
/// construction tolerances.
pub fn occupations(rho: &DensityMatrix) -> Vec<f64> {
    rho.occupations()
}
