use super::{cot_pi, digamma, finite, log_gamma, real, BERNOULLI_EVEN, GLAISHER, POLE_TOL};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const CORRECTIONS: usize = 10;
const MIN_TERMS: usize = 12;
const REFLECT_BELOW: f64 = -1.5;

/// (2j)! for j = 1..=10
const FACT_EVEN: [f64; CORRECTIONS] = [
    2.0,
    24.0,
    720.0,
    40320.0,
    3628800.0,
    479001600.0,
    87178291200.0,
    20922789888000.0,
    6402373705728000.0,
    2432902008176640000.0,
];

/// k^(-z) with the modulus from powf, which keeps full precision when
/// |Re z| ln k is a few units.
fn pow_neg(k: f64, z: Complex64) -> Complex64 {
    Complex64::from_polar(k.powf(-z.re), -z.im * k.ln())
}

fn terms_for(z: Complex64) -> usize {
    MIN_TERMS.max(z.norm().ceil() as usize + 12)
}

/// Euler-Maclaurin pieces: returns (S, S') with
/// zeta(z) = S + N^(1-z)/(z-1) and S' = dS/dz.
fn em_parts(z: Complex64) -> (Complex64, Complex64, usize) {
    let n = terms_for(z);
    let mut s = Complex64::new(0.0, 0.0);
    let mut ds = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let lk = (k as f64).ln();
        let t = pow_neg(k as f64, z);
        s += t;
        ds -= lk * t;
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_mz = pow_neg(nf, z);
    s += 0.5 * n_mz;
    ds -= 0.5 * ln_n * n_mz;
    // T_j = B_2j/(2j)! * z(z+1)...(z+2j-2) * N^(-z-2j+1)
    let mut p = z;
    let mut dp = real(1.0);
    let mut npow = n_mz / nf;
    for j in 0..CORRECTIONS {
        let c = BERNOULLI_EVEN[j] / FACT_EVEN[j];
        s += c * p * npow;
        ds += c * (dp - ln_n * p) * npow;
        let base = (2 * j + 1) as f64;
        dp = dp * (z + base) + p;
        p *= z + base;
        dp = dp * (z + base + 1.0) + p;
        p *= z + base + 1.0;
        npow /= nf * nf;
    }
    (s, ds, n)
}

/// Riemann zeta with its derivative.
pub fn zeta_with_derivative(z: Complex64) -> Result<(Complex64, Complex64)> {
    if (z - 1.0).norm() <= POLE_TOL {
        return Err(Error::pole("zeta at 1"));
    }
    if z.re < REFLECT_BELOW {
        let w = real(1.0) - z;
        let (zw, dzw) = zeta_with_derivative(w)?;
        // zeta(z) = 2^z pi^(z-1) sin(pi z/2) Gamma(1-z) zeta(1-z)
        let half = z * 0.5;
        let chi = ((z * 2f64.ln()) + (z - 1.0) * PI.ln() + log_gamma(w)?).exp() * (PI * half).sin();
        let v = chi * zw;
        let dlog = real(2f64.ln() + PI.ln()) + 0.5 * PI * cot_pi(half) - digamma(w)? - dzw / zw;
        return Ok((finite(v, "zeta")?, finite(v * dlog, "zeta'")?));
    }
    let (s, ds, n) = em_parts(z);
    let nf = n as f64;
    let ln_n = nf.ln();
    let zm1 = z - 1.0;
    let head = nf * pow_neg(nf, z) / zm1;
    let v = s + head;
    let dv = ds - ln_n * head - head / zm1;
    Ok((finite(v, "zeta")?, finite(dv, "zeta'")?))
}

pub fn riemann_zeta(z: Complex64) -> Result<Complex64> {
    Ok(zeta_with_derivative(z)?.0)
}

/// zeta'(z)/zeta(z).
pub fn zeta_log_deriv(z: Complex64) -> Result<Complex64> {
    let (v, d) = zeta_with_derivative(z)?;
    if v.norm() == 0.0 {
        return Err(Error::pole(format!("zeta vanishes at {z}")));
    }
    finite(d / v, "zeta'/zeta")
}

/// ((w-1) zeta(w), d/dw [(w-1) zeta(w)]), analytic through w = 1.
pub fn zeta_regularized(w: Complex64) -> Result<(Complex64, Complex64)> {
    if w.re < REFLECT_BELOW {
        let (v, d) = zeta_with_derivative(w)?;
        return Ok((v * (w - 1.0), v + (w - 1.0) * d));
    }
    let (s, ds, n) = em_parts(w);
    let nf = n as f64;
    let ln_n = nf.ln();
    let head = nf * pow_neg(nf, w);
    let wm1 = w - 1.0;
    let v = wm1 * s + head;
    let d = s + wm1 * ds - ln_n * head;
    Ok((finite(v, "(w-1)zeta")?, finite(d, "d/dw (w-1)zeta")?))
}

/// zeta'(-1) = 1/12 - ln A.
pub fn zeta_prime_minus_one() -> f64 {
    1.0 / 12.0 - GLAISHER.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::c64;

    #[test]
    fn classical_values() {
        let z2 = riemann_zeta(real(2.0)).unwrap();
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-14);
        let z0 = riemann_zeta(real(0.0)).unwrap();
        assert!((z0.re + 0.5).abs() < 1e-14);
        let zm1 = riemann_zeta(real(-1.0)).unwrap();
        assert!((zm1.re + 1.0 / 12.0).abs() < 1e-13);
        let zm7 = riemann_zeta(real(-7.0)).unwrap();
        assert!((zm7.re - 1.0 / 240.0).abs() < 1e-15);
        assert!(matches!(riemann_zeta(real(1.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn zeta_prime_at_minus_one_two_routes() {
        let (_, d) = zeta_with_derivative(real(-1.0)).unwrap();
        assert!((d.re - zeta_prime_minus_one()).abs() < 1e-9);
        assert!((zeta_prime_minus_one() + 0.165_421_143_700_450_9).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let h = 1e-5;
        for z in [c64(0.5, 14.0), c64(1.5, -3.0), c64(0.0, 49.0), c64(2.0, 0.3)] {
            let (_, d) = zeta_with_derivative(z).unwrap();
            let fd = (riemann_zeta(z + h).unwrap() - riemann_zeta(z - h).unwrap()) / (2.0 * h);
            assert!((d - fd).norm() < 1e-8 * d.norm().max(1.0), "z={z}");
        }
    }

    #[test]
    fn first_zero_on_critical_line() {
        let v = riemann_zeta(c64(0.5, 14.134_725_141_734_693)).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn functional_equation_consistent() {
        // reflected and direct evaluation on both sides of the switch
        for x in [-1.4, -1.6, -3.9] {
            let v = riemann_zeta(real(x)).unwrap();
            let w = real(1.0 - x);
            let chi = 2f64.powf(x) * PI.powf(x - 1.0) * (PI * x / 2.0).sin()
                * log_gamma(w).unwrap().exp().re;
            let want = chi * riemann_zeta(w).unwrap().re;
            assert!((v.re - want).abs() < 1e-12 * want.abs(), "{x}");
        }
    }

    #[test]
    fn regularized_is_smooth_at_one() {
        let (v, d) = zeta_regularized(real(1.0)).unwrap();
        assert!((v.re - 1.0).abs() < 1e-14);
        // (w-1) zeta(w) = 1 + gamma (w-1) + ...
        assert!((d.re - crate::special::EULER_GAMMA).abs() < 1e-12);
        let (v2, _) = zeta_regularized(real(2.0)).unwrap();
        assert!((v2.re - PI * PI / 6.0).abs() < 1e-14);
    }
}
