//! Orthogonal polynomials used throughout the characteristic-function formulas:
//! Laguerre Lₘ, associated Laguerre Lₘ^(α) and physicists' Hermite Hₘ.
//!
//! All three are evaluated by their upward three-term recurrences in double
//! precision, which is stable and overflow-free for the degrees (m ≲ 20) and
//! arguments (x ≲ 150) this crate needs. Values are recomputed on every call;
//! callers batch over k-grids instead of memoizing here.

use crate::error::{Error, Result};

/// Degree and association index of an (associated) Laguerre polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyOrder {
    /// Polynomial degree m ≥ 0.
    pub m: u32,
    /// Association index α ≥ 0 (0 for the plain Laguerre polynomial).
    pub alpha: u32,
}

impl PolyOrder {
    pub fn new(m: u32, alpha: u32) -> Self {
        PolyOrder { m, alpha }
    }

    /// Evaluates L_m^(α)(x).
    pub fn eval_laguerre(self, x: f64) -> Result<f64> {
        laguerre_assoc(self.m, self.alpha, x)
    }
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("polynomial argument must be finite, got {x}")))
    }
}

/// Laguerre polynomial L_m(x) via (n+1)L_{n+1} = (2n+1−x)L_n − n L_{n−1}.
pub fn laguerre(m: u32, x: f64) -> Result<f64> {
    laguerre_assoc(m, 0, x)
}

/// Associated Laguerre polynomial L_m^(α)(x) via
/// (n+1)L_{n+1}^(α) = (2n+1+α−x)L_n^(α) − (n+α)L_{n−1}^(α).
pub fn laguerre_assoc(m: u32, alpha: u32, x: f64) -> Result<f64> {
    check_finite(x)?;
    let a = f64::from(alpha);
    if m == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0; // L_0
    let mut cur = 1.0 + a - x; // L_1
    for n in 1..m {
        let nf = f64::from(n);
        let next = ((2.0 * nf + 1.0 + a - x) * cur - (nf + a) * prev) / (nf + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Physicists' Hermite polynomial H_m(x) via H_{n+1} = 2x H_n − 2n H_{n−1}.
pub fn hermite(m: u32, x: f64) -> Result<f64> {
    check_finite(x)?;
    if m == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0; // H_0
    let mut cur = 2.0 * x; // H_1
    for n in 1..m {
        let next = 2.0 * x * cur - 2.0 * f64::from(n) * prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Direct series Σ_k (−1)^k C(m+α, m−k) x^k / k!, the textbook definition.
    /// Independent of the recurrence path above.
    fn laguerre_series(m: u32, alpha: u32, x: f64) -> f64 {
        let mut sum = 0.0;
        for k in 0..=m {
            // C(m+α, m−k)
            let mut binom = 1.0;
            for j in 0..(m - k) {
                binom *= f64::from(m + alpha - j) / f64::from(m - k - j);
            }
            let mut term = binom;
            for j in 1..=k {
                term *= -x / f64::from(j);
            }
            sum += term;
        }
        sum
    }

    #[test]
    fn laguerre_low_orders() {
        assert_eq!(laguerre(0, 7.3).unwrap(), 1.0);
        assert_eq!(laguerre(1, 2.0).unwrap(), -1.0);
        // 1 − 2x + x²/2 at x = 2
        assert!((laguerre(2, 2.0).unwrap() - (-1.0)).abs() < 1e-14);
    }

    #[test]
    fn laguerre_assoc_low_orders() {
        assert_eq!(laguerre_assoc(0, 1, 5.0).unwrap(), 1.0);
        assert_eq!(laguerre_assoc(1, 1, 3.0).unwrap(), -1.0);
        // (α+1)(α+2)/2 − (α+2)x + x²/2 at α = 1, x = 1
        assert!((laguerre_assoc(2, 1, 1.0).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite(0, 4.2).unwrap(), 1.0);
        assert_eq!(hermite(1, 3.0).unwrap(), 6.0);
        assert_eq!(hermite(2, 1.0).unwrap(), 2.0);
    }

    #[test]
    fn non_finite_argument_rejected() {
        assert!(laguerre(3, f64::NAN).is_err());
        assert!(laguerre_assoc(3, 1, f64::INFINITY).is_err());
        assert!(hermite(3, f64::NEG_INFINITY).is_err());
    }

    #[test]
    fn recurrence_matches_series() {
        for m in 0..=12 {
            for alpha in [0, 1] {
                for &x in &[0.1, 1.0, 5.0, 36.0] {
                    let rec = laguerre_assoc(m, alpha, x).unwrap();
                    let ser = laguerre_series(m, alpha, x);
                    let scale = ser.abs().max(1e-300);
                    assert!(
                        ((rec - ser) / scale).abs() < 1e-10,
                        "L_{m}^({alpha})({x}): recurrence {rec} vs series {ser}"
                    );
                }
            }
        }
        // Hermite against its series Σ_k (−1)^k m!/(k!(m−2k)!) (2x)^{m−2k}
        for m in 0..=12u32 {
            for &x in &[0.1, 1.0, 5.0, 6.0] {
                let mut ser = 0.0;
                let mut k = 0;
                while 2 * k <= m {
                    let mut term = if k % 2 == 0 { 1.0 } else { -1.0 };
                    // m!/(k!(m−2k)!)
                    for j in (m - 2 * k + 1)..=m {
                        term *= f64::from(j);
                    }
                    for j in 1..=k {
                        term /= f64::from(j);
                    }
                    term *= (2.0f64 * x).powi((m - 2 * k) as i32);
                    ser += term;
                    k += 1;
                }
                let rec = hermite(m, x).unwrap();
                let scale = ser.abs().max(1.0);
                assert!(((rec - ser) / scale).abs() < 1e-10, "H_{m}({x})");
            }
        }
    }

    #[test]
    fn derivative_identity_vs_finite_differences() {
        // d/dx L_m(x) = −L_{m−1}^(1)(x), checked by central differences.
        // The polynomials extend smoothly to x < 0 so the stencil at x = 0 is fine.
        let h = 1e-5;
        for m in 1..=12u32 {
            for i in 0..=80 {
                let x = 0.5 * f64::from(i);
                let fd = (laguerre(m, x + h).unwrap() - laguerre(m, x - h).unwrap()) / (2.0 * h);
                let analytic = -laguerre_assoc(m - 1, 1, x).unwrap();
                let scale = analytic.abs().max(1.0);
                assert!(
                    ((fd - analytic) / scale).abs() < 1e-6,
                    "m={m} x={x}: fd {fd} vs −L^(1) {analytic}"
                );
            }
        }
    }

    #[test]
    fn values_at_zero_are_exact() {
        for m in 0..=20 {
            assert_eq!(laguerre(m, 0.0).unwrap(), 1.0, "L_{m}(0)");
            assert_eq!(
                laguerre_assoc(m, 1, 0.0).unwrap(),
                f64::from(m + 1),
                "L_{m}^(1)(0)"
            );
        }
    }

    proptest! {
        #[test]
        fn hermite_parity(m in 0u32..16, x in -8.0f64..8.0) {
            let plus = hermite(m, x).unwrap();
            let minus = hermite(m, -x).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let scale = plus.abs().max(1.0);
            prop_assert!(((minus - sign * plus) / scale).abs() < 1e-12);
        }

        #[test]
        fn laguerre_finite_on_working_range(m in 0u32..21, x in 0.0f64..150.0) {
            prop_assert!(laguerre(m, x).unwrap().is_finite());
            prop_assert!(laguerre_assoc(m, 1, x).unwrap().is_finite());
        }
    }
}
