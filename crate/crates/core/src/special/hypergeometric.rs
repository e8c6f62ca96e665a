use super::{digamma, finite, log_gamma, nonpositive_integer_near, real, POLE_TOL};
use crate::error::{Error, Result};
use num_complex::Complex64;

const MAX_TERMS: usize = 2000;
const EPS: f64 = 1e-17;
/// The log series cancels badly near w = 1/2 once a, b are a few units.
pub const DIRECT_UP_TO: f64 = 0.75;

/// 2F1(s, s+2n; 2s+2n; z) for real z in [0, 1).
pub fn hyp2f1_resolvent(s: Complex64, n: u32, z: f64) -> Result<Complex64> {
    hyp2f1_zero_balanced(s, s + 2.0 * n as f64, z)
}

/// 2F1(a, b; a+b; z) for real z in [0, 1). Direct series up to z = 3/4,
/// beyond that the logarithmic connection formula around z = 1.
pub fn hyp2f1_zero_balanced(a: Complex64, b: Complex64, z: f64) -> Result<Complex64> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::domain(format!("hypergeometric argument {z} outside [0, 1)")));
    }
    let c = a + b;
    if let Some(k) = nonpositive_integer_near(c) {
        return Err(Error::pole(format!("2F1 lower parameter at {k}")));
    }
    let terminating = nonpositive_integer_near(a).is_some() || nonpositive_integer_near(b).is_some();
    if z <= DIRECT_UP_TO || terminating {
        return direct_series(a, b, c, z);
    }
    let w = 1.0 - z;
    let pref = (log_gamma(c)? - log_gamma(a)? - log_gamma(b)?).exp();
    finite(pref * zero_balanced_log_series(a, b, w)?, "2F1")
}

fn direct_series(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    let mut term = real(1.0);
    let mut sum = term;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if term.norm() <= EPS * sum.norm() {
            return finite(sum, "2F1");
        }
    }
    Err(Error::convergence(format!("2F1 series at z = {z}")))
}

/// sum_k (a)_k (b)_k / (k!)^2 [2 psi(k+1) - psi(a+k) - psi(b+k) - ln w] w^k,
/// which equals Gamma(a)Gamma(b)/Gamma(a+b) * 2F1(a, b; a+b; 1-w).
pub fn zero_balanced_log_series(a: Complex64, b: Complex64, w: f64) -> Result<Complex64> {
    if !(w > 0.0 && w < 1.0) {
        return Err(Error::domain(format!("connection variable {w} outside (0, 1)")));
    }
    let lw = w.ln();
    let mut coef = real(1.0);
    let mut psi1 = digamma(real(1.0))?;
    let mut psia = digamma(a)?;
    let mut psib = digamma(b)?;
    let mut sum = coef * (2.0 * psi1 - psia - psib - lw);
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        coef *= (a + kf) * (b + kf) / ((kf + 1.0) * (kf + 1.0)) * w;
        psi1 += 1.0 / (kf + 1.0);
        psia += (a + kf).inv();
        psib += (b + kf).inv();
        let term = coef * (2.0 * psi1 - psia - psib - lw);
        sum += term;
        if term.norm() <= EPS * sum.norm() && coef.norm() <= EPS * sum.norm().max(1.0) {
            return finite(sum, "log series");
        }
    }
    Err(Error::convergence(format!("logarithmic series at w = {w}")))
}

/// Terminating 4F3(-n, a2, a3, a4; b1, b2, b3; 1).
pub fn hyp4f3_terminating(n: u32, upper: [Complex64; 3], lower: [Complex64; 3]) -> Result<Complex64> {
    let nf = n as f64;
    let mut term = real(1.0);
    let mut sum = term;
    for m in 0..n {
        let mf = m as f64;
        let mut den = real(mf + 1.0);
        for b in lower {
            let d = b + mf;
            if d.norm() < POLE_TOL {
                return Err(Error::pole(format!("4F3 lower parameter {b} meets -{m}")));
            }
            den *= d;
        }
        let mut num = real(mf - nf);
        for a in upper {
            num *= a + mf;
        }
        term *= num / den;
        sum += term;
    }
    finite(sum, "4F3")
}

/// 4F3(-n, -n+1/2, alpha+1/2, alpha+1/2; 1/2, -s-2n+alpha+3/2, s+alpha+1/2; 1).
pub fn hyp4f3_balanced(n: u32, alpha: Complex64, s: Complex64) -> Result<Complex64> {
    let nf = n as f64;
    let h = alpha + 0.5;
    hyp4f3_terminating(
        n,
        [real(0.5 - nf), h, h],
        [real(0.5), -s - 2.0 * nf + alpha + 1.5, s + alpha + 0.5],
    )
}
