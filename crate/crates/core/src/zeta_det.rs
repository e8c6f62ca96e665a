//! Truncated Selberg zeta function, the gamma factors Z_inf, Z_ell, Z_par,
//! the determinant of Delta_n + s(s+2n-1) and the regularized determinant.

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_to_infinity, QuadOptions};
use crate::residues::{alpha, beta_closed, rational, Rational};
use crate::scattering::{a_constant, ScatteringModel};
use crate::special::{
    finite, log_gamma, log_gamma2, real, zeta_prime_minus_one, Complex64, LN_2PI, POLE_TOL,
};
use crate::surface::{dim_holomorphic, to_f64, SurfaceSignature};
use crate::trace_geom::LengthSpectrum;
use num_traits::Zero;
use std::f64::consts::{LN_2, PI};

/// Per-class cut-off for the Euler product: stop once |N^(-(s+k))| < this.
pub const PRODUCT_CUTOFF: f64 = 1e-18;

/// Largest relative tail of the truncated product accepted without error.
pub const PRODUCT_TAIL_TOL: f64 = 1e-10;

/// Point at which the s -> 0 limit of the determinant is sampled.
pub const LIMIT_PROBE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelbergValue {
    pub log: Complex64,
    pub log_deriv: Complex64,
    /// Bound on the neglected part of log Z.
    pub tail: f64,
}

impl SelbergValue {
    pub fn value(&self) -> Complex64 {
        self.log.exp()
    }

    pub fn derivative(&self) -> Complex64 {
        self.value() * self.log_deriv
    }
}

fn log_one_minus(x: Complex64) -> Complex64 {
    if x.norm() < 1e-4 {
        -x * (1.0 + x * (0.5 + x / 3.0 + x * x / 4.0))
    } else {
        (real(1.0) - x).ln()
    }
}

/// Z(s) = prod_P prod_k (1 - N^(-s-k)) over the given classes, in log form,
/// with its analytic log-derivative.
pub fn selberg_zeta_trunc(spec: &LengthSpectrum, s: Complex64, kmax: u32) -> Result<SelbergValue> {
    if !(s.re > 0.0) {
        return Err(Error::domain(format!("truncated product needs Re s > 0, got {s}")));
    }
    spec.check_norms()?;
    let mut log = Complex64::new(0.0, 0.0);
    let mut dlog = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    for e in &spec.entries {
        let ln_n = e.norm.ln();
        let rho = 1.0 / e.norm;
        let mult = e.multiplicity as f64;
        let mut x = (-s * ln_n).exp();
        let mut k = 0;
        loop {
            if (real(1.0) - x).norm() < POLE_TOL {
                return Err(Error::pole(format!("factor 1 - N^(-s-k) vanishes for N = {}", e.norm)));
            }
            log += mult * log_one_minus(x);
            dlog += mult * ln_n * x / (real(1.0) - x);
            x *= rho;
            k += 1;
            if x.norm() < PRODUCT_CUTOFF {
                break;
            }
            if k >= kmax {
                let xn = x.norm();
                tail += mult * xn / ((1.0 - rho) * (1.0 - xn));
                break;
            }
        }
    }
    if tail > PRODUCT_TAIL_TOL {
        return Err(Error::convergence(format!("Euler product tail {tail:e} with kmax = {kmax}")));
    }
    Ok(SelbergValue { log: finite(log, "log Z")?, log_deriv: finite(dlog, "Z'/Z")?, tail })
}

/// Order and log of the leading Taylor coefficient of the truncated product
/// at s = 0: every class contributes (1 - N^(-s)) ~ s log N.
pub fn selberg_leading_at_zero(spec: &LengthSpectrum, kmax: u32) -> Result<(u32, f64)> {
    spec.check_norms()?;
    let mut order = 0;
    let mut log = 0.0;
    for e in &spec.entries {
        let mult = e.multiplicity as f64;
        order += e.multiplicity;
        log += mult * e.norm.ln().ln();
        let mut x = 1.0 / e.norm;
        let mut k = 1;
        while x >= PRODUCT_CUTOFF && k <= kmax {
            log += mult * (-x).ln_1p();
            x /= e.norm;
            k += 1;
        }
    }
    Ok((order, log))
}

/// log Z_inf(s) = (|X|/4pi) log[(2pi)^(2s+2n-1) G2(s+2n)^2 G2(s)^2 Gamma(s+2n)^(2n-1) / Gamma(s)^(2n+1)].
pub fn log_z_infinity(sig: &SurfaceSignature, n: u32, s: Complex64) -> Result<Complex64> {
    let nf = n as f64;
    let s2n = s + 2.0 * nf;
    let inner = (2.0 * s + 2.0 * nf - 1.0) * LN_2PI
        + 2.0 * log_gamma2(s2n)?
        + 2.0 * log_gamma2(s)?
        + (2.0 * nf - 1.0) * log_gamma(s2n)?
        - (2.0 * nf + 1.0) * log_gamma(s)?;
    finite(sig.area_over_4pi() * inner, "log Z_inf")
}

fn ell_exponents(m: i64, n: i64, r: i64) -> Result<(Rational, Rational)> {
    Ok((
        rational(2 * alpha(m, r - n)? + 1 - m, 2 * m),
        rational(2 * alpha(m, r + n)? + 1 - m, 2 * m),
    ))
}

/// log Z_ell(s) = sum_j sum_r [e_- log Gamma((s+r)/m) + e_+ log Gamma((s+2n+r)/m)].
pub fn log_z_ell(sig: &SurfaceSignature, n: u32, s: Complex64) -> Result<Complex64> {
    let ni = n as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in sig.orders() {
        let mf = m as f64;
        for r in 0..m {
            let (em, ep) = ell_exponents(m, ni, r)?;
            acc += to_f64(&em) * log_gamma((s + r as f64) / mf)?;
            acc += to_f64(&ep) * log_gamma((s + (2 * ni + r) as f64) / mf)?;
        }
    }
    finite(acc, "log Z_ell")
}

/// log Z_par(s) = (q/2) log[Gamma(s)Gamma(s+2n) / (2^(2s+2n-1) Gamma(s+n)^2 Gamma(s+n+1/2)^2)]
/// + (A/2) log(s+n-1/2), the last term only for s+n-1/2 in the right half-plane.
pub fn log_z_par(sig: &SurfaceSignature, n: u32, s: Complex64, a: i64) -> Result<Complex64> {
    let q = sig.cusps as f64;
    let nf = n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    if sig.cusps > 0 {
        let inner = log_gamma(s)? + log_gamma(s + 2.0 * nf)?
            - (2.0 * s + 2.0 * nf - 1.0) * LN_2
            - 2.0 * log_gamma(s + nf)?
            - 2.0 * log_gamma(s + nf + 0.5)?;
        acc += 0.5 * q * inner;
    }
    if a != 0 {
        let u = s + nf - 0.5;
        if !(u.re > 0.0) {
            return Err(Error::domain("(s+n-1/2)^(A/2) is only taken for Re(s+n-1/2) > 0"));
        }
        acc += 0.5 * a as f64 * u.ln();
    }
    finite(acc, "log Z_par")
}

/// B = -|X|/2pi and D = (|X|/pi) zeta'(-1) + (q/2) log 2pi + sum_j beta_j log m_j.
pub fn b_d_constants(sig: &SurfaceSignature, n: u32) -> Result<(f64, f64)> {
    let area_2pi = to_f64(&sig.area_over_2pi());
    let b = -area_2pi;
    let mut d = 2.0 * area_2pi * zeta_prime_minus_one() + 0.5 * sig.cusps as f64 * LN_2PI;
    for m in sig.orders() {
        d += to_f64(&beta_closed(m, n as i64)?) * (m as f64).ln();
    }
    Ok((b, d))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EllipticAsymptotics {
    /// Coefficient of log u.
    pub b: Rational,
    /// Constant term.
    pub d: f64,
}

/// log Z_ell = A u log u + B log u + C u + D + o(1). A and C vanish because
/// each exponent family sums to zero; this is checked exactly.
pub fn asymptotic_coeffs_ell(sig: &SurfaceSignature, n: u32) -> Result<EllipticAsymptotics> {
    let ni = n as i64;
    let half = rational(1, 2);
    let mut b = Rational::zero();
    let mut d = 0.0;
    for m in sig.orders() {
        let mut alpha_j = Rational::zero();
        let mut beta_j = Rational::zero();
        for r in 0..m {
            let (em, ep) = ell_exponents(m, ni, r)?;
            alpha_j += &em + &ep;
            beta_j += &em * (rational(2 * (r - ni) + 1, 2 * m) - &half);
            beta_j += &ep * (rational(2 * (r + ni) + 1, 2 * m) - &half);
        }
        if !alpha_j.is_zero() {
            return Err(Error::internal(format!("exponent sum for m = {m} is {alpha_j}, not 0")));
        }
        d -= to_f64(&beta_j) * (m as f64).ln();
        b += beta_j;
    }
    Ok(EllipticAsymptotics { b, d })
}

/// (|X|/4pi){(-2u^2 + 2n^2 - 1/6) log u + 3u^2 - 4 zeta'(-1)}.
pub fn log_z_infinity_asymptotic(sig: &SurfaceSignature, n: u32, u: f64) -> f64 {
    let nf = n as f64;
    sig.area_over_4pi() * ((-2.0 * u * u + 2.0 * nf * nf - 1.0 / 6.0) * u.ln() + 3.0 * u * u - 4.0 * zeta_prime_minus_one())
}

/// (q/2){-(2u+1) log u + 2u - log 2pi - 2u log 2} + (A/2) log u.
pub fn log_z_par_asymptotic(sig: &SurfaceSignature, u: f64, a: i64) -> f64 {
    let q = sig.cusps as f64;
    0.5 * q * (-(2.0 * u + 1.0) * u.ln() + 2.0 * u - LN_2PI - 2.0 * u * LN_2) + 0.5 * a as f64 * u.ln()
}

/// B log u + D for log Z_ell.
pub fn log_z_ell_asymptotic(sig: &SurfaceSignature, n: u32, u: f64) -> Result<f64> {
    let c = asymptotic_coeffs_ell(sig, n)?;
    Ok(to_f64(&c.b) * u.ln() + c.d)
}

/// Leading terms of log Gamma_2(s+1) for large s:
/// -s^2/2 log s + 3s^2/4 - (s/2) log 2pi + (1/12) log s - zeta'(-1).
pub fn log_gamma2_asymptotic(s: f64) -> f64 {
    let ls = s.ln();
    let s2 = s * s;
    -(0.5 * s2 * ls - 0.75 * s2 + 0.5 * LN_2PI * s - ls / 12.0 + zeta_prime_minus_one())
}

/// A for a surface and a scattering model: 0 without cusps.
pub fn a_for(sig: &SurfaceSignature, model: &ScatteringModel) -> Result<i64> {
    match model {
        ScatteringModel::None if sig.cusps == 0 => Ok(0),
        ScatteringModel::None => Err(Error::model("surfaces with cusps need a scattering model")),
        m if m.cusps() != sig.cusps => Err(Error::model(format!("model has {} cusps, surface has {}", m.cusps(), sig.cusps))),
        m => a_constant(m),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetResolvent {
    pub z_infinity: Complex64,
    pub z_selberg: Complex64,
    pub z_ell: Complex64,
    pub z_par: Complex64,
    /// B(s+n-1/2)^2 + D
    pub exponent: Complex64,
    pub log_det: Complex64,
}

/// log det(Delta_n + s(s+2n-1)) = log[Z_inf(s) Z(s+n) Z_ell(s) Z_par(s)] + B(s+n-1/2)^2 + D.
pub fn log_det_resolvent(
    sig: &SurfaceSignature,
    n: u32,
    s: Complex64,
    spec: &LengthSpectrum,
    a: i64,
    kmax: u32,
) -> Result<DetResolvent> {
    let (b, d) = b_d_constants(sig, n)?;
    let u = s + n as f64 - 0.5;
    let z_infinity = log_z_infinity(sig, n, s)?;
    let z_selberg = selberg_zeta_trunc(spec, s + n as f64, kmax)?.log;
    let z_ell = log_z_ell(sig, n, s)?;
    let z_par = log_z_par(sig, n, s, a)?;
    let exponent = b * u * u + d;
    Ok(DetResolvent {
        z_infinity,
        z_selberg,
        z_ell,
        z_par,
        exponent,
        log_det: z_infinity + z_selberg + z_ell + z_par + exponent,
    })
}

/// A real constant kept as log|C| and sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub log_abs: f64,
    pub sign: f64,
}

impl SignedLog {
    pub fn value(&self) -> f64 {
        self.sign * self.log_abs.exp()
    }
}

fn parity(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 }
}

/// The constant C_n of the regularized determinant. n0 (order of the zero
/// of phi at 0) only enters for n = 0.
pub fn c_constant(sig: &SurfaceSignature, n: u32, a: i64, n0: u32) -> Result<SignedLog> {
    if a < 0 || a % 2 != 0 {
        return Err(Error::domain(format!("A = {a} must be even and non-negative")));
    }
    let (b, d) = b_d_constants(sig, n)?;
    let x4 = sig.area_over_4pi();
    let q = sig.cusps as f64;
    let lg = |x: f64| -> Result<f64> { Ok(log_gamma(real(x))?.re) };
    if n == 0 {
        let mut l = (q - a as f64 / 2.0) * LN_2 - (q / 2.0 + x4) * LN_2PI + b / 4.0 + d;
        for m in sig.orders() {
            let mf = m as f64;
            l += (1.0 - mf) / mf * mf.ln();
            for r in 1..m {
                l += (2 * r + 1 - m) as f64 / mf * lg(r as f64 / mf)?;
            }
        }
        let sign = parity(a / 2 + 1 - n0 as i64);
        return Ok(SignedLog { log_abs: l, sign });
    }
    let ni = n as i64;
    let nf = n as f64;
    let two_n = 2.0 * nf;
    let mut l = x4 * ((two_n - 1.0) * LN_2PI + 2.0 * log_gamma2(real(two_n))?.re + (two_n - 1.0) * lg(two_n)?);
    for m in sig.orders() {
        let mf = m as f64;
        l += (2 * alpha(m, -ni)? + 1 - m) as f64 / (2.0 * mf) * mf.ln();
        for r in 1..m {
            l += (2 * alpha(m, r - ni)? + 1 - m) as f64 / (2.0 * mf) * lg(r as f64 / mf)?;
        }
        for r in 0..m {
            l += (2 * alpha(m, r + ni)? + 1 - m) as f64 / (2.0 * mf) * lg((2 * ni + r) as f64 / mf)?;
        }
    }
    l += 0.5 * q * ((two_n - 1.0) * LN_2 - PI.ln() - lg(two_n)?);
    let dn = dim_holomorphic(sig, n)? as f64;
    l -= dn * (two_n - 1.0).ln();
    l += 0.5 * a as f64 * (nf - 0.5).ln();
    l += b * (nf - 0.5) * (nf - 0.5) + d;
    Ok(SignedLog { log_abs: l, sign: 1.0 })
}

/// (power of s, constant) of log Gamma((s+c)/m) as s -> 0.
fn gamma_at_zero(c: i64, m: i64) -> Result<(f64, f64)> {
    if c == 0 {
        // Gamma(s/m) = (m/s) Gamma(1 + s/m)
        Ok((-1.0, (m as f64).ln()))
    } else {
        Ok((0.0, log_gamma(real(c as f64 / m as f64))?.re))
    }
}

/// (power of s, constant) of log Gamma_2(s+c) as s -> 0.
fn gamma2_at_zero(c: i64) -> Result<(f64, f64)> {
    if c == 0 {
        // Gamma_2(s) = Gamma_2(1+s) Gamma(s)
        Ok((-1.0, 0.0))
    } else {
        Ok((0.0, log_gamma2(real(c as f64))?.re))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitExpansion {
    /// p in det(Delta_n + s(s+2n-1)) / Z(s+n) ~ K s^p.
    pub power: f64,
    /// C_n recovered from K.
    pub constant: SignedLog,
}

/// C_n re-derived from the s -> 0 behaviour of each factor, with the
/// singular log s parts split off from the gamma factors.
pub fn c_constant_via_limits(sig: &SurfaceSignature, n: u32, a: i64, n0: u32) -> Result<LimitExpansion> {
    let (b, d) = b_d_constants(sig, n)?;
    let ni = n as i64;
    let mut p = 0.0;
    let mut k = 0.0;
    let mut add = |(pp, kk): (f64, f64), w: f64| {
        p += w * pp;
        k += w * kk;
    };
    let x4 = sig.area_over_4pi();
    add((0.0, (2 * ni - 1) as f64 * LN_2PI), x4);
    add(gamma2_at_zero(2 * ni)?, 2.0 * x4);
    add(gamma2_at_zero(0)?, 2.0 * x4);
    add(gamma_at_zero(2 * ni, 1)?, (2 * ni - 1) as f64 * x4);
    add(gamma_at_zero(0, 1)?, -((2 * ni + 1) as f64) * x4);
    for m in sig.orders() {
        for r in 0..m {
            let (em, ep) = ell_exponents(m, ni, r)?;
            add(gamma_at_zero(r, m)?, to_f64(&em));
            add(gamma_at_zero(2 * ni + r, m)?, to_f64(&ep));
        }
    }
    let mut sign = 1.0;
    if sig.cusps > 0 {
        let q2 = sig.cusps as f64 / 2.0;
        add(gamma_at_zero(0, 1)?, q2);
        add(gamma_at_zero(2 * ni, 1)?, q2);
        add((0.0, -((2 * ni - 1) as f64) * LN_2), q2);
        add(gamma_at_zero(ni, 1)?, -2.0 * q2);
        add((0.0, log_gamma(real(n as f64 + 0.5))?.re), -2.0 * q2);
    }
    if a != 0 {
        let u0 = n as f64 - 0.5;
        add((0.0, u0.abs().ln()), a as f64 / 2.0);
        if u0 < 0.0 {
            sign *= parity(a / 2);
        }
    }
    let u0 = n as f64 - 0.5;
    k += b * u0 * u0 + d;
    if n == 0 {
        // divide by [s(s-1)]^(1-n0) ~ (-1)^(1-n0) s^(1-n0)
        sign *= parity(1 - n0 as i64);
    } else {
        k -= dim_holomorphic(sig, n)? as f64 * (2.0 * n as f64 - 1.0).ln();
    }
    Ok(LimitExpansion { power: p, constant: SignedLog { log_abs: k, sign } })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetPrime {
    pub value: f64,
    pub c: SignedLog,
    /// Z(n), Z'(1) or Z_0 depending on n.
    pub zeta_factor: f64,
    /// det(Delta_n + s(s+2n-1)) / ([s(s+2n-1)]^d_n C_n Z(n)) at s = 1e-4, n >= 2.
    pub limit_ratio: Option<f64>,
}

/// det' Delta_n: C_0 Z_0 (n = 0), C_1 Z'(1) (n = 1), C_n Z(n) (n >= 2).
/// For n = 0, Z_0 is `z0` when given, else the leading coefficient of the
/// truncated product at s = 0 when its order is 2g - 1 + q - n0.
pub fn det_prime(
    sig: &SurfaceSignature,
    n: u32,
    spec: &LengthSpectrum,
    model: &ScatteringModel,
    n0: u32,
    z0: Option<f64>,
    kmax: u32,
) -> Result<DetPrime> {
    let a = a_for(sig, model)?;
    let c = c_constant(sig, n, a, n0)?;
    match n {
        0 => {
            let zeta_factor = match z0 {
                Some(z) => z,
                None => {
                    let want = 2 * sig.genus as i64 - 1 + sig.cusps as i64 - n0 as i64;
                    let (order, log) = selberg_leading_at_zero(spec, kmax)?;
                    if order as i64 != want {
                        return Err(Error::domain(format!(
                            "truncated product vanishes to order {order} at 0, expected {want}; supply Z_0"
                        )));
                    }
                    log.exp()
                }
            };
            Ok(DetPrime { value: c.value() * zeta_factor, c, zeta_factor, limit_ratio: None })
        }
        1 => {
            let z = selberg_zeta_trunc(spec, real(1.0), kmax)?;
            let zeta_factor = z.derivative().re;
            Ok(DetPrime { value: c.value() * zeta_factor, c, zeta_factor, limit_ratio: None })
        }
        _ => {
            let z = selberg_zeta_trunc(spec, real(n as f64), kmax)?;
            let zeta_factor = z.value().re;
            let s = LIMIT_PROBE;
            let det = log_det_resolvent(sig, n, real(s), spec, a, kmax)?;
            let dn = dim_holomorphic(sig, n)? as f64;
            let log_ratio = det.log_det.re - dn * (s * (s + 2.0 * n as f64 - 1.0)).ln() - c.log_abs - z.log.re;
            let ratio = log_ratio.exp();
            if !((ratio - 1.0).abs() <= 1e-2) {
                return Err(Error::Diagnostic(format!("limit ratio {ratio} deviates from 1")));
            }
            Ok(DetPrime { value: c.value() * zeta_factor, c, zeta_factor, limit_ratio: Some(ratio) })
        }
    }
}

/// The four Mellin transforms of the small-t heat expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MellinKind {
    /// t^(w-1)
    Log,
    /// t^(w-2)
    Quadratic,
    /// t^(w-3/2)
    Linear,
    /// t^(w-3/2) log t
    LinearLog,
}

impl MellinKind {
    pub const ALL: [MellinKind; 4] = [MellinKind::Log, MellinKind::Quadratic, MellinKind::Linear, MellinKind::LinearLog];

    fn offset(self) -> f64 {
        match self {
            MellinKind::Log => 0.0,
            MellinKind::Quadratic => -1.0,
            MellinKind::Linear | MellinKind::LinearLog => -0.5,
        }
    }
}

/// d/dw at w = 0 of (1/Gamma(w)) int_0^inf t^(w-1+offset) [log t] e^(-t u^2) dt, closed form.
pub fn mellin_closed(kind: MellinKind, u: f64) -> f64 {
    let sp = PI.sqrt();
    let g = crate::special::EULER_GAMMA;
    match kind {
        MellinKind::Log => -2.0 * u.ln(),
        MellinKind::Quadratic => -u * u + 2.0 * u * u * u.ln(),
        MellinKind::Linear => -2.0 * sp * u,
        MellinKind::LinearLog => -2.0 * sp * u * (2.0 - 2.0 * LN_2 - g - 2.0 * u.ln()),
    }
}

/// (1/Gamma(w)) int_0^inf t^(w-1+offset) [log t] e^(-t u^2) dt, continued to
/// small w by subtracting two Taylor terms of the exponential on [0, 1].
fn mellin_continued(kind: MellinKind, u: f64, w: f64) -> Result<f64> {
    const TERMS: usize = 2;
    let al = w + kind.offset();
    let with_log = kind == MellinKind::LinearLog;
    let u2 = u * u;
    let remainder = |x: f64| -> f64 {
        // e^(-x) minus its first TERMS Taylor terms
        let mut term: f64 = 1.0;
        for j in 0..TERMS {
            term *= -x / (j + 1) as f64;
        }
        let mut acc: f64 = 0.0;
        let mut j = TERMS;
        while term.abs() > 1e-18 * acc.abs().max(1e-300) && j < 200 {
            acc += term;
            j += 1;
            term *= -x / j as f64;
        }
        acc
    };
    let opts = QuadOptions::with_tol(1e-15, 1e-14);
    let lw = |t: f64| if with_log { t.ln() } else { 1.0 };
    let head = integrate(|t| Ok(real(t.powf(al - 1.0) * lw(t) * remainder(t * u2))), 0.0, 1.0, &opts)?;
    let tail = integrate_to_infinity(|t| Ok(real(t.powf(al - 1.0) * lw(t) * (-t * u2).exp())), 1.0, &opts)?;
    let mut poly = 0.0;
    let mut c = 1.0;
    for j in 0..TERMS {
        let aj = w + (kind.offset() + j as f64);
        poly += if with_log { -c / (aj * aj) } else { c / aj };
        c *= -u2 / (j + 1) as f64;
    }
    let integral = head.value.re + tail.value.re + poly;
    let lg = log_gamma(real(w))?;
    // 1/Gamma(w), negative for small negative w
    let inv = (-lg.re).exp() * lg.im.cos();
    Ok(integral * inv)
}

/// Central difference in w of [`mellin_continued`] at w = 0.
pub fn mellin_numeric(kind: MellinKind, u: f64, h: f64) -> Result<f64> {
    Ok((mellin_continued(kind, u, h)? - mellin_continued(kind, u, -h)?) / (2.0 * h))
}
