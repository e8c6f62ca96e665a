use super::{finite, nonpositive_integer_near, real, BERNOULLI_EVEN, LN_2PI};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const SHIFT: f64 = 10.0;

/// Log-gamma. For `Re z >= 1/2` this is the branch continuous from the
/// positive real axis, so `log_gamma(z + 1) = log_gamma(z) + ln z` with the
/// principal logarithm. Left of that line the reflection formula is used and
/// only `exp(log_gamma(z))` is guaranteed.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if let Some(k) = nonpositive_integer_near(z) {
        return Err(Error::pole(format!("log_gamma at {k}")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("log_gamma of a non-finite argument"));
    }
    if z.re < 0.5 {
        if z.im == 0.0 {
            // real axis: ln|Gamma| plus i*pi where Gamma is negative
            let sn = (PI * z.re).sin();
            let re = PI.ln() - sn.abs().ln() - log_gamma(real(1.0 - z.re))?.re;
            let im = if sn < 0.0 { PI } else { 0.0 };
            return finite(Complex64::new(re, im), "log_gamma");
        }
        let r = real(PI.ln()) - log_sin_pi(z) - log_gamma(real(1.0) - z)?;
        return finite(r, "log_gamma");
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT {
        acc += w.ln();
        w += 1.0;
    }
    finite(stirling(w) - acc, "log_gamma")
}

fn stirling(w: Complex64) -> Complex64 {
    let mut r = (w - 0.5) * w.ln() - w + 0.5 * LN_2PI;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    for (k, b) in BERNOULLI_EVEN.iter().take(10).enumerate() {
        let k = (k + 1) as f64;
        r += p * (b / (2.0 * k * (2.0 * k - 1.0)));
        p *= inv2;
    }
    r
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    finite(log_gamma(z)?.exp(), "gamma")
}

/// Digamma function psi = Gamma'/Gamma.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if let Some(k) = nonpositive_integer_near(z) {
        return Err(Error::pole(format!("digamma at {k}")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain("digamma of a non-finite argument"));
    }
    if z.re < 0.5 {
        let r = digamma(real(1.0) - z)? - PI * cot_pi(z);
        return finite(r, "digamma");
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT {
        acc -= w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut r = w.ln() - 0.5 * inv;
    let mut p = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().take(10).enumerate() {
        let k = (k + 1) as f64;
        r -= p * (b / (2.0 * k));
        p *= inv2;
    }
    finite(r + acc, "digamma")
}

/// cot(pi z), stable for large |Im z|.
pub fn cot_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im >= 0.0 {
        let e = (2.0 * PI * i * z).exp();
        i * (e + 1.0) / (e - 1.0)
    } else {
        let e = (-2.0 * PI * i * z).exp();
        i * (1.0 + e) / (1.0 - e)
    }
}

/// A logarithm of sin(pi z) that does not overflow for large |Im z|.
pub fn log_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 20.0 {
        return (PI * z).sin().ln();
    }
    if z.im > 0.0 {
        -i * PI * z + (1.0 - (2.0 * PI * i * z).exp()).ln() + Complex64::new(0.5, 0.0).ln() + i * (PI / 2.0)
    } else {
        i * PI * z + (1.0 - (-2.0 * PI * i * z).exp()).ln() + Complex64::new(0.5, 0.0).ln() - i * (PI / 2.0)
    }
}
