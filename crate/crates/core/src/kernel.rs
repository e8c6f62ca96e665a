//! Point-pair kernels Psi_{n,s}(u) of the weight-2n resolvent, their
//! transforms Q and g, and the inversion back from Q' to Psi.

use crate::error::{Error, Result};
use crate::quad::{integrate_real_line, integrate_to_infinity, QuadOptions, QuadValue};
use crate::special::{
    digamma, finite, hyp2f1_resolvent, log_gamma, real, zero_balanced_log_series, Complex64,
};
use std::f64::consts::PI;

/// A resolvent pair: kernel Psi_{n,s} - Psi_{n,a}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    pub n: u32,
    pub s: Complex64,
    pub a: Complex64,
}

impl KernelParams {
    pub fn new(n: u32, s: Complex64, a: Complex64) -> Result<Self> {
        let nf = n as f64;
        for (name, x) in [("s", s), ("a", a)] {
            if !(x.re > 0.0) || !(x.re + nf > 0.5) {
                return Err(Error::domain(format!("{name} = {x} needs Re > 0 and Re + n > 1/2")));
            }
        }
        if s == a {
            return Err(Error::domain("s and a must differ"));
        }
        Ok(KernelParams { n, s, a })
    }

    pub fn real(n: u32, s: f64, a: f64) -> Result<Self> {
        Self::new(n, real(s), real(a))
    }

    /// s + n - 1/2 and a + n - 1/2.
    pub fn shifts(&self) -> (Complex64, Complex64) {
        let h = self.n as f64 - 0.5;
        (self.s + h, self.a + h)
    }
}

/// Psi_{n,s}(u) = (u+1)^(-s)/(4 pi) Gamma(s)Gamma(s+2n)/Gamma(2s+2n) 2F1(s, s+2n; 2s+2n; 1/(u+1)).
pub fn psi_ns(n: u32, s: Complex64, u: f64) -> Result<Complex64> {
    if !(u >= 0.0) || !u.is_finite() {
        return Err(Error::domain(format!("kernel argument u = {u}")));
    }
    if u == 0.0 {
        return Err(Error::pole("kernel is logarithmic at u = 0"));
    }
    let b = s + 2.0 * n as f64;
    let damp = (-s * u.ln_1p()).exp();
    let z = 1.0 / (1.0 + u);
    let body = if z <= crate::special::HYP2F1_DIRECT_UP_TO {
        let ratio = (log_gamma(s)? + log_gamma(b)? - log_gamma(s + b)?).exp();
        ratio * hyp2f1_resolvent(s, n, z)?
    } else {
        zero_balanced_log_series(s, b, u / (1.0 + u))?
    };
    finite(damp * body / (4.0 * PI), "kernel")
}

/// Psi_{n,s}(u) - Psi_{n,a}(u).
pub fn psi_resolvent(p: &KernelParams, u: f64) -> Result<Complex64> {
    Ok(psi_ns(p.n, p.s, u)? - psi_ns(p.n, p.a, u)?)
}

/// Leading small-u behaviour (1/4 pi){ln(1/u) + 2 psi(1) - psi(s+2n) - psi(s)}.
pub fn psi_small_u_expansion(n: u32, s: Complex64, u: f64) -> Result<Complex64> {
    if !(u > 0.0) {
        return Err(Error::domain("expansion needs u > 0"));
    }
    let v = -u.ln() + 2.0 * digamma(real(1.0))? - digamma(s + 2.0 * n as f64)? - digamma(s)?;
    Ok(v / (4.0 * PI))
}

fn power_gamma_ratio(alpha: Complex64, n: u32, half: f64) -> Result<Complex64> {
    let nf = n as f64;
    Ok((log_gamma(alpha + nf)? + log_gamma(alpha + nf + half)? - log_gamma(alpha)? - log_gamma(alpha + 2.0 * nf)?)
        .exp())
}

fn check_power(alpha: Complex64) -> Result<()> {
    if alpha.re > 0.5 {
        Ok(())
    } else {
        Err(Error::domain(format!("power kernel exponent {alpha} needs Re > 1/2")))
    }
}

/// Q for Psi(u) = (u+1)^(-alpha):
/// 2 sqrt(pi) (v+1)^-(alpha+n-1/2) Gamma(alpha+n)Gamma(alpha+n-1/2)/(Gamma(alpha)Gamma(alpha+2n)).
pub fn q_power_closed(alpha: Complex64, n: u32, v: f64) -> Result<Complex64> {
    check_power(alpha)?;
    let e = alpha + n as f64 - 0.5;
    let r = 2.0 * PI.sqrt() * (-e * (v + 1.0).ln()).exp() * power_gamma_ratio(alpha, n, -0.5)?;
    finite(r, "Q")
}

/// dQ/dv for the power kernel.
pub fn q_power_prime_closed(alpha: Complex64, n: u32, v: f64) -> Result<Complex64> {
    check_power(alpha)?;
    let e = alpha + n as f64 + 0.5;
    let r = -2.0 * PI.sqrt() * (-e * (v + 1.0).ln()).exp() * power_gamma_ratio(alpha, n, 0.5)?;
    finite(r, "Q'")
}

fn quad_opts() -> QuadOptions {
    QuadOptions::with_tol(1e-13, 1e-12)
}

/// Q(v) = 2(-1)^n int_R Psi(x^2+v) (x - i sqrt(v+1))^(-2n) dx, by quadrature.
pub fn q_quadrature<F>(psi: F, n: u32, v: f64) -> Result<QuadValue>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(v >= 0.0) {
        return Err(Error::domain("Q needs v >= 0"));
    }
    let c = (v + 1.0).sqrt();
    let two_n = 2 * n as i32;
    let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
    let r = integrate_to_infinity(
        |x| {
            let w = Complex64::new(x, -c).powi(-two_n) + Complex64::new(x, c).powi(-two_n);
            Ok(psi(x * x + v)? * w)
        },
        0.0,
        &quad_opts(),
    )?;
    Ok(r.scale(real(sign)))
}

/// Q for the resolvent pair, from g(t) = Q(sinh^2(t/2)).
pub fn q_resolvent_closed(p: &KernelParams, v: f64) -> Result<Complex64> {
    if !(v >= 0.0) {
        return Err(Error::domain("Q needs v >= 0"));
    }
    g_of_t(p, 2.0 * v.sqrt().asinh())
}

fn expm1(z: Complex64) -> Complex64 {
    if z.norm() > 0.5 {
        return z.exp() - 1.0;
    }
    let mut term = z;
    let mut sum = z;
    for k in 2..30 {
        term *= z / k as f64;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// dQ/dv for the resolvent pair, analytic through v = 0.
pub fn q_resolvent_prime_closed(p: &KernelParams, v: f64) -> Result<Complex64> {
    if !(v >= 0.0) {
        return Err(Error::domain("Q' needs v >= 0"));
    }
    let (b, g) = p.shifts();
    let t = v.sqrt().asinh();
    if t == 0.0 {
        return Ok(b - g);
    }
    // -(e^{-2bt} - e^{-2gt}) / sinh(2t)
    let num = expm1(-2.0 * b * t) - expm1(-2.0 * g * t);
    finite(-num / (2.0 * t).sinh(), "Q'")
}

/// g(t) = e^{-|t|(s+n-1/2)}/(2s+2n-1) - (same with a).
pub fn g_of_t(p: &KernelParams, t: f64) -> Result<Complex64> {
    let (b, g) = p.shifts();
    let t = t.abs();
    finite((-b * t).exp() / (2.0 * b) - (-g * t).exp() / (2.0 * g), "g")
}

/// h(r) = 1/(r^2 + (s+n-1/2)^2) - (same with a).
pub fn h_of_r(p: &KernelParams, r: f64) -> Result<Complex64> {
    let (b, g) = p.shifts();
    finite((b * b + r * r).inv() - (g * g + r * r).inv(), "h")
}

/// int_R g(|t|) e^{irt} dt by quadrature.
pub fn fourier_g(p: &KernelParams, r: f64) -> Result<QuadValue> {
    let v = integrate_to_infinity(|t| Ok(g_of_t(p, t)? * (r * t).cos()), 0.0, &quad_opts())?;
    Ok(v.scale(real(2.0)))
}

/// Psi(x) = -(1/2 pi) int_R Q'(x+t^2) (sqrt(x+1+t^2) - t)^{2n} dt.
pub fn inversion_integral<F>(q_prime: F, n: u32, x: f64) -> Result<QuadValue>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(x > 0.0) {
        return Err(Error::domain("inversion needs x > 0"));
    }
    let two_n = 2 * n as i32;
    let r = integrate_real_line(
        |t| {
            let root = (x + 1.0 + t * t).sqrt();
            // sqrt(x+1+t^2) - t without cancellation for large positive t
            let d = if t > 0.0 { (x + 1.0) / (root + t) } else { root - t };
            Ok(q_prime(x + t * t)? * d.powi(two_n))
        },
        &quad_opts(),
    )?;
    Ok(r.scale(real(-1.0 / (2.0 * PI))))
}

#[derive(Debug, Clone, Copy)]
pub struct InversionCheck {
    pub reconstructed: Complex64,
    pub direct: Complex64,
    pub residual: f64,
}

/// Rebuilds Psi_{n,s} - Psi_{n,a} at x from the analytic Q' and compares.
pub fn inversion_check(p: &KernelParams, x: f64) -> Result<InversionCheck> {
    let rec = inversion_integral(|v| q_resolvent_prime_closed(p, v), p.n, x)?.value;
    let direct = psi_resolvent(p, x)?;
    Ok(InversionCheck { reconstructed: rec, direct, residual: (rec - direct).norm() })
}

/// Relative residual of u(u+1)Psi'' - [(2n-2)u - 1]Psi' - s(s+2n-1)Psi at u,
/// with five-point differences.
pub fn ode_residual(n: u32, s: Complex64, u: f64) -> Result<f64> {
    let h = 1e-3 * u.min(1.0);
    let f = |x: f64| psi_ns(n, s, x);
    let (m2, m1, c0, p1, p2) = (f(u - 2.0 * h)?, f(u - h)?, f(u)?, f(u + h)?, f(u + 2.0 * h)?);
    let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    let d2 = (-m2 + 16.0 * m1 - 30.0 * c0 + 16.0 * p1 - p2) / (12.0 * h * h);
    let nf = n as f64;
    let t2 = u * (u + 1.0) * d2;
    let t1 = ((2.0 * nf - 2.0) * u - 1.0) * d1;
    let t0 = s * (s + 2.0 * nf - 1.0) * c0;
    let scale = t2.norm() + t1.norm() + t0.norm();
    Ok((t2 - t1 - t0).norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_example() {
        let v = psi_ns(0, real(1.0), 1.0).unwrap();
        assert!((v.re - 2f64.ln() / (4.0 * PI)).abs() < 1e-15);
        assert!(matches!(psi_ns(1, real(2.0), 0.0), Err(Error::Pole(_))));
    }

    #[test]
    fn psi_continuous_across_branch_switch() {
        for (n, s) in [(0u32, real(1.3)), (2, real(2.5)), (1, Complex64::new(1.5, 2.0))] {
            let u = 1.0 / crate::special::HYP2F1_DIRECT_UP_TO - 1.0;
            let a = psi_ns(n, s, u * (1.0 - 1e-13)).unwrap();
            let b = psi_ns(n, s, u * (1.0 + 1e-13)).unwrap();
            assert!((a - b).norm() < 1e-11 * a.norm());
        }
    }

    #[test]
    fn ode_holds() {
        for (n, s) in [(0u32, 1.5), (1, 2.0), (2, 1.3), (3, 0.7)] {
            for k in 0..20 {
                let u = 0.1 * (100f64).powf(k as f64 / 19.0);
                let r = ode_residual(n, real(s), u).unwrap();
                assert!(r < 1e-5, "n={n} s={s} u={u} r={r}");
            }
        }
    }

    #[test]
    fn small_u_law() {
        let (n, s) = (1u32, real(1.7));
        let coef = (s * (s + 2.0)).norm() / (4.0 * PI);
        let mut last = f64::INFINITY;
        for u in [1e-4, 1e-5, 1e-6] {
            let d = (psi_ns(n, s, u).unwrap() - psi_small_u_expansion(n, s, u).unwrap()).norm();
            let r = d / (u * (1.0 / u).ln());
            let dev = (r - coef).abs();
            assert!(dev < last);
            last = dev;
            assert!(d / u < 2.0 * coef * (1.0 / u).ln() + 10.0);
        }
    }

    #[test]
    fn power_kernel_q_example() {
        let v = q_power_closed(real(1.5), 0, 0.0).unwrap();
        assert!((v.re - 4.0).abs() < 1e-14);
    }

    #[test]
    fn q_derivative_is_consistent() {
        let h = 1e-5;
        for (al, n, v) in [(1.5, 0u32, 0.5), (2.5, 2, 2.0)] {
            let fd = (q_power_closed(real(al), n, v + h).unwrap() - q_power_closed(real(al), n, v - h).unwrap()) / (2.0 * h);
            assert!((fd - q_power_prime_closed(real(al), n, v).unwrap()).norm() < 1e-8);
        }
        let p = KernelParams::real(1, 2.0, 5.0).unwrap();
        for v in [0.3, 4.0] {
            let fd = (q_resolvent_closed(&p, v + h).unwrap() - q_resolvent_closed(&p, v - h).unwrap()) / (2.0 * h);
            assert!((fd - q_resolvent_prime_closed(&p, v).unwrap()).norm() < 1e-8, "v={v}");
        }
        // Q(v) = Q(0) + (b-g) v + (2/3)(g^2-b^2) v^(3/2) + O(v^2) at the origin
        let hh = 1e-8;
        let fd = (q_resolvent_closed(&p, hh).unwrap() - q_resolvent_closed(&p, 0.0).unwrap()) / hh;
        let q0 = q_resolvent_prime_closed(&p, 0.0).unwrap();
        assert!((q0.re + 3.0).abs() < 1e-15);
        let c32 = 2.0 / 3.0 * (5.5f64.powi(2) - 2.5f64.powi(2));
        assert!((fd.re - q0.re - c32 * hh.sqrt()).abs() < 1e-5);
        let q_small = q_resolvent_prime_closed(&p, 1e-14).unwrap();
        assert!((q_small - q0).norm() < 1e-5);
    }

    #[test]
    fn resolvent_q_at_zero() {
        let p = KernelParams::real(1, 2.0, 5.0).unwrap();
        let q = q_quadrature(|u| psi_resolvent(&p, u), 1, 0.0).unwrap();
        let want = 1.0 / 5.0 - 1.0 / 11.0;
        assert!((q.value.re - want).abs() < 1e-9, "{}", q.value);
        assert!(q.error < 1e-9);
        assert!((q_resolvent_closed(&p, 0.0).unwrap().re - want).abs() < 1e-15);
    }

    #[test]
    fn fourier_pair() {
        let p = KernelParams::real(1, 2.0, 5.0).unwrap();
        for r in [0.0, 0.5, 0.7, 1.0, 3.0] {
            let f = fourier_g(&p, r).unwrap().value;
            assert!((f - h_of_r(&p, r).unwrap()).norm() < 1e-8, "r={r}");
        }
    }

    #[test]
    fn inversion_contract_examples() {
        for (n, s, a, x) in [(0u32, 1.5, 4.0, 0.7), (2, 2.0, 6.0, 2.0)] {
            let p = KernelParams::real(n, s, a).unwrap();
            let c = inversion_check(&p, x).unwrap();
            assert!(c.residual < 1e-5, "{c:?}");
        }
    }

    #[test]
    fn power_kernel_inversion() {
        let v = inversion_integral(|v| q_power_prime_closed(real(2.0), 0, v), 0, 0.7).unwrap();
        assert!((v.value.re - 1.7f64.powi(-2)).abs() < 1e-8);
    }

    #[test]
    fn invalid_params() {
        assert!(KernelParams::real(0, 2.0, 2.0).is_err());
        assert!(KernelParams::real(0, 0.4, 2.0).is_err());
        assert!(KernelParams::real(0, -1.0, 2.0).is_err());
    }
}
