//! Special functions on complex arguments: log-gamma, digamma, the double
//! gamma function, the two hypergeometric families used by the kernel, and
//! the Riemann zeta function with its logarithmic derivative.

mod barnes;
mod gamma;
mod hypergeometric;
mod zeta;

pub use barnes::{log_barnes_g, log_gamma2};
pub use gamma::{digamma, gamma, log_gamma, log_sin_pi, cot_pi};
pub use hypergeometric::DIRECT_UP_TO as HYP2F1_DIRECT_UP_TO;
pub use hypergeometric::{
    hyp2f1_resolvent, hyp2f1_zero_balanced, hyp4f3_balanced, hyp4f3_terminating,
    zero_balanced_log_series,
};
pub use zeta::{
    riemann_zeta, zeta_log_deriv, zeta_prime_minus_one, zeta_regularized, zeta_with_derivative,
};

use crate::error::{Error, Result};
pub use num_complex::Complex64;

/// Complex scalar used throughout the crate. Values returned by public
/// functions always have finite components.
pub type ComplexScalar = Complex64;

/// Distance below which an argument is treated as sitting on a pole.
pub const POLE_TOL: f64 = 1e-14;

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Glaisher-Kinkelin constant A.
pub const GLAISHER: f64 = 1.282_427_129_100_622_6;

pub(crate) const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Bernoulli numbers B_2, B_4, ..., B_24.
pub(crate) const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Rejects non-finite results so overflow never leaks out as inf/NaN.
pub fn finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Overflow(format!("{what} is not finite")))
    }
}

/// Returns the non-positive integer `z` sits on, if any.
pub fn nonpositive_integer_near(z: Complex64) -> Option<i64> {
    if z.re > 0.5 || z.im.abs() > POLE_TOL {
        return None;
    }
    let k = z.re.round();
    if k <= 0.0 && (z - real(k)).norm() <= POLE_TOL {
        Some(k as i64)
    } else {
        None
    }
}
