use super::{finite, log_gamma, nonpositive_integer_near, zeta_prime_minus_one, BERNOULLI_EVEN, LN_2PI};
use crate::error::{Error, Result};
use num_complex::Complex64;

const SHIFT: f64 = 20.0;
const MAX_MODULUS: f64 = 1e7;

/// ln G(z) for the Barnes G-function, G(1) = 1, G(z+1) = Gamma(z) G(z).
pub fn log_barnes_g(z: Complex64) -> Result<Complex64> {
    if let Some(k) = nonpositive_integer_near(z) {
        return Err(Error::pole(format!("Barnes G vanishes at {k}")));
    }
    if !(z.norm() <= MAX_MODULUS) {
        return Err(Error::domain(format!("|z| = {} too large for log_gamma2", z.norm())));
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT {
        acc += log_gamma(w)?;
        w += 1.0;
    }
    finite(asymptotic(w - 1.0) - acc, "log_barnes_g")
}

/// ln Gamma_2(z) with Gamma_2 = 1/G, so Gamma_2(z+1) = Gamma_2(z)/Gamma(z).
pub fn log_gamma2(z: Complex64) -> Result<Complex64> {
    Ok(-log_barnes_g(z)?)
}

/// ln G(x + 1) for large |x|.
fn asymptotic(x: Complex64) -> Complex64 {
    let lx = x.ln();
    let x2 = x * x;
    let mut r = 0.5 * x2 * lx - 0.75 * x2 + 0.5 * LN_2PI * x - lx / 12.0 + zeta_prime_minus_one();
    let inv2 = (x * x).inv();
    let mut p = inv2;
    for k in 1..=8usize {
        let b = BERNOULLI_EVEN[k];
        let kf = k as f64;
        r += p * (b / (4.0 * kf * (kf + 1.0)));
        p *= inv2;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{c64, real, EULER_GAMMA};
    
    #[test]
    fn small_integer_values() {
        assert!(log_gamma2(real(1.0)).unwrap().norm() < 1e-13);
        assert!(log_gamma2(real(2.0)).unwrap().norm() < 1e-13);
        assert!((log_gamma2(real(4.0)).unwrap().re - 0.5f64.ln()).abs() < 1e-13);
        // G(6) = 1! 2! 3! 4! = 288
        assert!((log_gamma2(real(6.0)).unwrap().re + 288f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn recurrence_on_real_axis() {
        let mut x = 0.1;
        while x <= 10.0 {
            let z = real(x);
            let r = log_gamma2(z + 1.0).unwrap() - log_gamma2(z).unwrap() + log_gamma(z).unwrap();
            assert!(r.norm() < 1e-10, "x={x} r={r}");
            x += 0.37;
        }
    }

    #[test]
    fn pole_at_nonpositive_integers() {
        assert!(matches!(log_gamma2(real(0.0)), Err(Error::Pole(_))));
        assert!(matches!(log_gamma2(real(-3.0)), Err(Error::Pole(_))));
    }

    // Independent route: the Weierstrass product
    // Gamma_2(s+1) = (2pi)^(-s/2) exp(s/2 + (gamma+1) s^2/2) prod_k (1+s/k)^(-k) exp(s - s^2/(2k)),
    // truncated at K factors with the tail summed from its 1/k expansion.
    fn product_oracle(s: f64) -> f64 {
        let kmax = 2000usize;
        let mut acc = -0.5 * s * LN_2PI + 0.5 * s + 0.5 * (EULER_GAMMA + 1.0) * s * s;
        for k in 1..=kmax {
            let kf = k as f64;
            acc += -kf * (s / kf).ln_1p() + s - s * s / (2.0 * kf);
        }
        // tail: sum_{k>K} sum_{j>=3} (-1)^j s^j / (j k^(j-1))
        let a = (kmax + 1) as f64;
        for j in 3..30usize {
            let p = (j - 1) as f64;
            let hz = hurwitz_tail(p, a);
            acc += (-1f64).powi(j as i32) * s.powi(j as i32) / j as f64 * hz;
        }
        acc
    }

    // sum_{k>=0} (a+k)^(-p) by Euler-Maclaurin
    fn hurwitz_tail(p: f64, a: f64) -> f64 {
        let mut r = a.powf(1.0 - p) / (p - 1.0) + 0.5 * a.powf(-p);
        let b = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0];
        let mut fact = 1.0;
        let mut poch = p;
        for (i, bi) in b.iter().enumerate() {
            let two_i = 2 * (i + 1);
            fact *= (two_i - 1) as f64 * two_i as f64;
            r += bi / fact * poch * a.powf(-p - (two_i - 1) as f64);
            poch *= (p + (two_i - 1) as f64) * (p + two_i as f64);
        }
        r
    }

    #[test]
    fn matches_weierstrass_product() {
        let mut z = 0.05;
        while z <= 5.0 {
            let got = log_gamma2(real(z)).unwrap().re;
            let want = product_oracle(z - 1.0);
            assert!((got - want).abs() < 1e-10, "z={z} got={got} want={want}");
            z += 0.15;
        }
    }

    #[test]
    fn complex_recurrence() {
        for z in [c64(0.6, 3.0), c64(2.0, -9.0), c64(15.0, 1.0)] {
            let r = log_gamma2(z + 1.0).unwrap() - log_gamma2(z).unwrap() + log_gamma(z).unwrap();
            assert!(r.norm() < 1e-9, "z={z} r={r}");
        }
    }
}
