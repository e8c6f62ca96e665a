//! The geometric side of the resolvent trace formula: identity, hyperbolic,
//! elliptic and parabolic contributions in single-parameter form, with the
//! quadrature routes used to check the elliptic and parabolic closed forms.

use crate::error::{Error, Result};
use crate::kernel::{psi_resolvent, KernelParams};
use crate::quad::{integrate, integrate_sqrt_endpoints, integrate_to_infinity, QuadOptions, QuadValue};
use crate::residues::alpha;
use crate::scattering::{a_constant, sigma_integral, ScatteringModel, SigmaValue};
use crate::special::{digamma, finite, real, Complex64, EULER_GAMMA, POLE_TOL};
use crate::surface::SurfaceSignature;
use serde::{Deserialize, Serialize};
use std::f64::consts::{LN_2, PI};

pub const DEFAULT_KMAX: u32 = 64;

/// Relative size of the hyperbolic tail bound that still counts as converged.
pub const HYPERBOLIC_TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthEntry {
    pub norm: f64,
    pub multiplicity: u32,
}

/// Multipliers N(gamma) > 1 of primitive hyperbolic classes.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawSpectrum")]
pub struct LengthSpectrum {
    pub entries: Vec<LengthEntry>,
}

#[derive(Deserialize)]
struct RawSpectrum {
    entries: Vec<LengthEntry>,
}

impl TryFrom<RawSpectrum> for LengthSpectrum {
    type Error = Error;
    fn try_from(r: RawSpectrum) -> Result<Self> {
        LengthSpectrum::new(r.entries)
    }
}

impl LengthSpectrum {
    pub fn new(entries: Vec<LengthEntry>) -> Result<Self> {
        for e in &entries {
            if !(e.norm > 1.0) || !e.norm.is_finite() {
                return Err(Error::domain(format!("norm {} must be a finite number > 1", e.norm)));
            }
            if e.multiplicity == 0 {
                return Err(Error::domain("multiplicities must be positive"));
            }
        }
        if entries.windows(2).any(|w| w[1].norm < w[0].norm) {
            return Err(Error::domain("norms must be sorted ascending"));
        }
        Ok(LengthSpectrum { entries })
    }

    pub fn empty() -> Self {
        LengthSpectrum { entries: Vec::new() }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::config(format!("length spectrum: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spectrum serializes")
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn check_norms(&self) -> Result<()> {
        if let Some(e) = self.entries.first() {
            if e.norm <= 1.0 + 1e-12 {
                return Err(Error::convergence(format!("norm {} too close to 1", e.norm)));
            }
        }
        Ok(())
    }
}

fn prefactor(n: u32, s: Complex64) -> Result<Complex64> {
    let d = 2.0 * s + (2.0 * n as f64 - 1.0);
    if d.norm() < POLE_TOL {
        return Err(Error::pole("2s + 2n - 1 = 0"));
    }
    Ok(d)
}

/// -(|X|/4 pi)[psi(s+2n) + psi(s)].
pub fn identity_term(sig: &SurfaceSignature, n: u32, s: Complex64) -> Result<Complex64> {
    let c = sig.area_over_4pi();
    finite(-c * (digamma(s + 2.0 * n as f64)? + digamma(s)?), "identity term")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicValue {
    pub value: Complex64,
    pub tail_bound: f64,
}

/// (2s+2n-1)^(-1) sum_P sum_k log N / (N^(s+n+k) - 1), truncated at kmax per
/// class (earlier once N^(-(Re s+n+k)) < 1e-18) with a geometric tail bound.
pub fn hyperbolic_term(spec: &LengthSpectrum, n: u32, s: Complex64, kmax: u32) -> Result<HyperbolicValue> {
    if kmax == 0 {
        return Err(Error::domain("kmax must be at least 1"));
    }
    spec.check_norms()?;
    let w = s + n as f64;
    if !(w.re > 0.0) {
        return Err(Error::domain(format!("hyperbolic term needs Re(s+n) > 0, got {w}")));
    }
    let pref = prefactor(n, s)?;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut tail = 0.0;
    for e in &spec.entries {
        let ln_n = e.norm.ln();
        let mut part = Complex64::new(0.0, 0.0);
        let mut last = 0;
        for k in 0..kmax {
            last = k;
            let den = ((w + k as f64) * ln_n).exp() - 1.0;
            if den.norm() < POLE_TOL {
                return Err(Error::pole(format!("N^(s+n+k) = 1 for N = {}", e.norm)));
            }
            part += ln_n / den;
            if (-(w.re + k as f64) * ln_n).exp() < 1e-18 {
                break;
            }
        }
        // sum_{k > last} |N^(-(s+n+k))| / (1 - |.|)
        let x = (-(w.re + last as f64 + 1.0) * ln_n).exp();
        let rho = 1.0 / e.norm;
        if x >= 1.0 {
            return Err(Error::convergence("hyperbolic tail does not decay"));
        }
        tail += e.multiplicity as f64 * ln_n * x / ((1.0 - rho) * (1.0 - x));
        sum += part * e.multiplicity as f64;
    }
    let value = finite(sum / pref, "hyperbolic term")?;
    let tail_bound = tail / pref.norm();
    if tail_bound > HYPERBOLIC_TAIL_TOL * value.norm().max(1.0) {
        return Err(Error::convergence(format!("hyperbolic tail bound {tail_bound:e} with kmax = {kmax}")));
    }
    Ok(HyperbolicValue { value, tail_bound })
}

/// Coefficients (2 alpha_m(r -+ n) + 1 - m)/(2 m^2) of the elliptic digamma sum.
fn elliptic_coefficients(m: i64, n: i64, r: i64) -> Result<(f64, f64)> {
    let mm = (2 * m * m) as f64;
    Ok((
        (2 * alpha(m, r - n)? + 1 - m) as f64 / mm,
        (2 * alpha(m, r + n)? + 1 - m) as f64 / mm,
    ))
}

/// (2s+2n-1)^(-1) sum_j sum_r [c_- psi((s+r)/m) + c_+ psi((s+2n+r)/m)].
pub fn elliptic_term(sig: &SurfaceSignature, n: u32, s: Complex64) -> Result<Complex64> {
    if sig.elliptic_orders.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let pref = prefactor(n, s)?;
    let ni = n as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for m in sig.orders() {
        let mf = m as f64;
        for r in 0..m {
            let (cm, cp) = elliptic_coefficients(m, ni, r)?;
            acc += cm * digamma((s + r as f64) / mf)? + cp * digamma((s + (2 * ni + r) as f64) / mf)?;
        }
    }
    finite(acc / pref, "elliptic term")
}

fn check_class(m: u32, ell: u32) -> Result<f64> {
    if m < 2 || ell == 0 || ell >= m {
        return Err(Error::domain(format!("need m >= 2 and 1 <= l <= m-1, got m = {m}, l = {ell}")));
    }
    Ok(PI * ell as f64 / m as f64)
}

/// sum_{k>=0} x^k/(z+k) for x an m-th root of unity other than 1:
/// -(1/m) sum_r x^r psi((z+r)/m).
fn root_of_unity_series(x: Complex64, m: u32, z: Complex64) -> Result<Complex64> {
    let mf = m as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut xr = Complex64::new(1.0, 0.0);
    for r in 0..m {
        acc += xr * digamma((z + r as f64) / mf)?;
        xr *= x;
    }
    Ok(-acc / mf)
}

/// Closed form of one elliptic class in single-parameter form:
/// (2s+2n-1)^(-1) (i e^(2in theta)/(2m sin theta))
///   (sum_k e^(-i(2k+1)theta)/(s+k) - sum_k e^(i(2k+1)theta)/(s+2n+k)),
/// theta = pi l/m. The k-sums are evaluated exactly through digamma values.
pub fn elliptic_single_closed(m: u32, ell: u32, n: u32, s: Complex64) -> Result<Complex64> {
    let theta = check_class(m, ell)?;
    let pref = prefactor(n, s)?;
    let e = |phi: f64| Complex64::from_polar(1.0, phi);
    let lead = Complex64::i() * e(2.0 * n as f64 * theta) / (2.0 * m as f64 * theta.sin());
    let first = e(-theta) * root_of_unity_series(e(-2.0 * theta), m, s)?;
    let second = e(theta) * root_of_unity_series(e(2.0 * theta), m, s + 2.0 * n as f64)?;
    finite(lead * (first - second) / pref, "elliptic class")
}

/// Difference form of [`elliptic_single_closed`] at s and a.
pub fn elliptic_single_closed_diff(m: u32, ell: u32, n: u32, s: Complex64, a: Complex64) -> Result<Complex64> {
    Ok(elliptic_single_closed(m, ell, n, s)? - elliptic_single_closed(m, ell, n, a)?)
}

/// (-1)^n (pi/(m sin theta)) int_0^inf Psi(u) (sqrt(u + sin^2) - i cos)^(-2n) du / sqrt(u + sin^2),
/// with Psi = Psi_{n,s} - Psi_{n,a} and theta = pi l/m.
///
/// With the orientation used in the integral, this equals the closed form of
/// the class m - l (its complex conjugate for real s, a); the two agree once
/// summed over l.
pub fn elliptic_single_quadrature(m: u32, ell: u32, n: u32, s: Complex64, a: Complex64) -> Result<QuadValue> {
    let theta = check_class(m, ell)?;
    let p = KernelParams::new(n, s, a)?;
    let (sn, cs) = theta.sin_cos();
    let sin2 = sn * sn;
    let f = |u: f64| -> Result<Complex64> {
        let root = (u + sin2).sqrt();
        let d = Complex64::new(root, -cs).powi(-2 * n as i32);
        Ok(psi_resolvent(&p, u)? * d / root)
    };
    let opts = QuadOptions::with_tol(1e-12, 1e-11);
    let head = integrate(f, 0.0, 1.0, &opts)?;
    let tail = integrate_to_infinity(f, 1.0, &opts)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let v = head.add(tail).scale(real(sign * PI / (m as f64 * sn)));
    if v.error > 1e-8 {
        return Err(Error::convergence(format!("elliptic quadrature error {:e}", v.error)));
    }
    Ok(v)
}

/// int_{t-sqrt(t^2-1)}^{t+sqrt(t^2-1)} dy / (y sqrt(2yt - 1 - y^2)), which is pi for t > 1.
pub fn pi_lemma_integral(t: f64) -> Result<QuadValue> {
    if !(t > 1.0) {
        return Err(Error::domain("need t > 1"));
    }
    let h = (t * t - 1.0).sqrt();
    let (lo, hi) = (t - h, t + h);
    // the substitution in the helper absorbs the square root
    let w = |y: f64| ((y - lo) * (hi - y)).max(0.0).sqrt();
    integrate_sqrt_endpoints(
        |y| {
            let r = w(y);
            if r == 0.0 {
                return Ok(real(0.0));
            }
            Ok(real(1.0 / (y * r)))
        },
        lo,
        hi,
        &QuadOptions::with_tol(1e-13, 1e-12),
    )
}

/// int_0^inf e^(-mu t)/(cosh t - cos 2 theta) dt by quadrature.
pub fn cosh_integral_quadrature(mu: f64, theta: f64) -> Result<QuadValue> {
    let c = (2.0 * theta).cos();
    if !(mu > -1.0) || (1.0 - c).abs() < 1e-14 {
        return Err(Error::domain("need mu > -1 and sin(theta) != 0"));
    }
    integrate_to_infinity(|t| Ok(real((-mu * t).exp() / (t.cosh() - c))), 0.0, &QuadOptions::with_tol(1e-14, 1e-13))
}

/// (2/sin 2 theta) sum_{k>=1} sin(2k theta)/(mu+k), summed to `terms` terms with
/// a two-term summation-by-parts estimate of the remainder.
pub fn cosh_integral_series(mu: f64, theta: f64, terms: usize) -> Result<f64> {
    let s2 = (2.0 * theta).sin();
    if s2.abs() < 1e-14 || !(mu > -1.0) {
        return Err(Error::domain("need sin(2 theta) != 0 and mu > -1"));
    }
    let z = Complex64::from_polar(1.0, 2.0 * theta);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 1..=terms {
        zk *= z;
        acc += zk / (mu + k as f64);
    }
    let f = |k: f64| 1.0 / (mu + k);
    let k1 = terms as f64 + 1.0;
    let lead = zk * z / (real(1.0) - z);
    acc += lead * (f(k1) + z / (real(1.0) - z) * (f(k1 + 1.0) - f(k1)));
    Ok(2.0 / s2 * acc.im)
}

/// I_{P,0} single-parameter closed form, 1/(2s+2n-1).
pub fn ip0_closed(n: u32, s: Complex64) -> Result<Complex64> {
    Ok(prefactor(n, s)?.inv())
}

/// I_{P,1} single-parameter closed form:
/// (1/(2(2s+2n-1))){psi(s)+psi(s+2n)-4 log 2-2 psi(s+n+1/2)-2 psi(s+n)} - gamma/(2s+2n-1) + 1/(2s+2n-1)^2.
pub fn ip1_closed(n: u32, s: Complex64) -> Result<Complex64> {
    let d = prefactor(n, s)?;
    let nf = n as f64;
    let br = digamma(s)? + digamma(s + 2.0 * nf)? - 4.0 * LN_2 - 2.0 * digamma(s + nf + 0.5)? - 2.0 * digamma(s + nf)?;
    finite(br / (2.0 * d) - EULER_GAMMA / d + (d * d).inv(), "I_P1")
}

fn ip_quadrature(n: u32, s: Complex64, a: Complex64, with_log: bool) -> Result<QuadValue> {
    let p = KernelParams::new(n, s, a)?;
    let two_n = 2 * n as i32;
    let f = |u: f64| -> Result<Complex64> {
        let w = Complex64::new(u, 1.0).powi(-two_n) + Complex64::new(u, -1.0).powi(-two_n);
        let l = if with_log { u.ln() } else { 1.0 };
        Ok(psi_resolvent(&p, u * u)? * w * l)
    };
    let opts = QuadOptions { max_intervals: 8000, ..QuadOptions::with_tol(1e-13, 1e-12) };
    let head = integrate(f, 0.0, 1.0, &opts)?;
    let tail = integrate_to_infinity(f, 1.0, &opts)?;
    let sign = if n % 2 == 0 { 2.0 } else { -2.0 };
    Ok(head.add(tail).scale(real(sign)))
}

/// 2(-1)^n int_0^inf Psi(u^2)[(u+i)^(-2n) + (u-i)^(-2n)] du with Psi = Psi_{n,s} - Psi_{n,a}.
pub fn ip0_quadrature(n: u32, s: Complex64, a: Complex64) -> Result<QuadValue> {
    ip_quadrature(n, s, a, false)
}

/// 2(-1)^n int_0^inf Psi(u^2)[(u+i)^(-2n) + (u-i)^(-2n)] log u du with Psi = Psi_{n,s} - Psi_{n,a}.
pub fn ip1_quadrature(n: u32, s: Complex64, a: Complex64) -> Result<QuadValue> {
    ip_quadrature(n, s, a, true)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolicValue {
    /// (q/(2(2s+2n-1))){psi(s)+psi(s+2n)-2 log 2-2 psi(s+n+1/2)-2 psi(s+n)}
    pub bracket: Complex64,
    /// A/(2s+2n-1)^2
    pub a_term: Complex64,
    pub sigma: Option<SigmaValue>,
    /// Set when Sigma (and possibly A) was left out.
    pub partial: bool,
}

impl ParabolicValue {
    /// The part entering the geometric trace.
    pub fn trace_part(&self) -> Complex64 {
        self.bracket + self.a_term
    }

    /// The full parabolic contribution including Sigma/2.
    pub fn value(&self) -> Complex64 {
        self.trace_part() + self.sigma.map_or(Complex64::new(0.0, 0.0), |s| s.value * 0.5)
    }
}

pub fn parabolic_term(
    sig: &SurfaceSignature,
    n: u32,
    s: Complex64,
    model: &ScatteringModel,
    skip_scattering: bool,
) -> Result<ParabolicValue> {
    let zero = Complex64::new(0.0, 0.0);
    let q = sig.cusps;
    let has_model = !matches!(model, ScatteringModel::None);
    if q == 0 {
        if has_model {
            return Err(Error::model("a scattering model was given for a surface without cusps"));
        }
        return Ok(ParabolicValue { bracket: zero, a_term: zero, sigma: None, partial: false });
    }
    if !has_model && !skip_scattering {
        return Err(Error::model("surfaces with cusps need a scattering model or the skip flag"));
    }
    if has_model && model.cusps() != q {
        return Err(Error::model(format!("model has {} cusps, surface has {q}", model.cusps())));
    }
    let d = prefactor(n, s)?;
    let nf = n as f64;
    let br = digamma(s)? + digamma(s + 2.0 * nf)? - 2.0 * LN_2 - 2.0 * digamma(s + nf + 0.5)? - 2.0 * digamma(s + nf)?;
    let bracket = finite(q as f64 * br / (2.0 * d), "parabolic bracket")?;
    let a_term = if has_model { a_constant(model)? as f64 / (d * d) } else { zero };
    let sigma = if skip_scattering { None } else { Some(sigma_integral(n, s, model)?) };
    Ok(ParabolicValue { bracket, a_term, sigma, partial: skip_scattering })
}

#[derive(Debug, Clone, Copy)]
pub struct TraceOptions {
    pub kmax: u32,
    pub skip_scattering: bool,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions { kmax: DEFAULT_KMAX, skip_scattering: false }
    }
}

/// Per-term record of the geometric trace. `parabolic` is the part that
/// enters the trace (without Sigma); Sigma is reported alongside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceBreakdown {
    pub identity: Complex64,
    pub hyperbolic: Complex64,
    pub elliptic: Complex64,
    pub parabolic: Complex64,
    pub total: Complex64,
    pub truncation_error: f64,
    pub sigma: Option<Complex64>,
    pub partial: bool,
}

pub fn geometric_trace(
    sig: &SurfaceSignature,
    n: u32,
    s: Complex64,
    spectrum: &LengthSpectrum,
    model: &ScatteringModel,
    opts: &TraceOptions,
) -> Result<TraceBreakdown> {
    let identity = identity_term(sig, n, s)?;
    let hyp = if spectrum.is_empty() {
        HyperbolicValue { value: Complex64::new(0.0, 0.0), tail_bound: 0.0 }
    } else {
        hyperbolic_term(spectrum, n, s, opts.kmax)?
    };
    let elliptic = elliptic_term(sig, n, s)?;
    let par = parabolic_term(sig, n, s, model, opts.skip_scattering)?;
    let parabolic = par.trace_part();
    Ok(TraceBreakdown {
        identity,
        hyperbolic: hyp.value,
        elliptic,
        parabolic,
        total: identity + hyp.value + elliptic + parabolic,
        truncation_error: hyp.tail_bound,
        sigma: par.sigma.map(|v| v.value),
        partial: par.partial,
    })
}

/// T_G(s) - T_G(a).
pub fn geometric_trace_difference(
    sig: &SurfaceSignature,
    n: u32,
    s: Complex64,
    a: Complex64,
    spectrum: &LengthSpectrum,
    model: &ScatteringModel,
    opts: &TraceOptions,
) -> Result<Complex64> {
    let ts = geometric_trace(sig, n, s, spectrum, model, opts)?;
    let ta = geometric_trace(sig, n, a, spectrum, model, opts)?;
    Ok(ts.total - ta.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residues::zero_sum;
    use crate::special::c64;

    fn sig(g: u32, q: u32, m: &[u32]) -> SurfaceSignature {
        SurfaceSignature::new(g, q, m.to_vec()).unwrap()
    }

    fn digamma_recurrence(x: f64) -> f64 {
        // psi(x) from psi(x + N) asymptotics and the downward recurrence
        let mut y = x;
        let mut acc = 0.0;
        while y < 30.0 {
            acc -= 1.0 / y;
            y += 1.0;
        }
        let y2 = 1.0 / (y * y);
        acc + y.ln() - 0.5 / y - y2 * (1.0 / 12.0 - y2 * (1.0 / 120.0 - y2 / 252.0))
    }

    #[test]
    fn identity_examples() {
        let v = identity_term(&sig(0, 1, &[2, 3]), 0, real(1.0)).unwrap();
        assert!((v.re - EULER_GAMMA / 6.0).abs() < 1e-14);
        let v = identity_term(&sig(2, 0, &[]), 1, real(2.0)).unwrap();
        let want = -(digamma_recurrence(4.0) + digamma_recurrence(2.0));
        assert!((v.re - want).abs() < 1e-12);
        assert!(matches!(identity_term(&sig(2, 0, &[]), 0, real(0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn hyperbolic_examples() {
        let empty = LengthSpectrum::empty();
        assert_eq!(hyperbolic_term(&empty, 0, real(2.0), 64).unwrap().value, real(0.0));
        let e2 = std::f64::consts::E.powi(2);
        let spec = LengthSpectrum::new(vec![LengthEntry { norm: e2, multiplicity: 1 }]).unwrap();
        let v = hyperbolic_term(&spec, 0, real(2.0), 200).unwrap().value.re;
        let oracle: f64 = (0..400).map(|k| 2.0 / ((2.0 * (2.0 + k as f64)).exp() - 1.0)).sum::<f64>() / 3.0;
        assert!((v - oracle).abs() < 1e-14);
        let close = LengthSpectrum::new(vec![LengthEntry { norm: 1.0 + 1e-13, multiplicity: 1 }]).unwrap();
        assert!(matches!(hyperbolic_term(&close, 0, real(2.0), 64), Err(Error::Convergence(_))));
        let slow = LengthSpectrum::new(vec![LengthEntry { norm: 1.05, multiplicity: 1 }]).unwrap();
        assert!(matches!(hyperbolic_term(&slow, 0, real(1.0), 8), Err(Error::Convergence(_))));
    }

    #[test]
    fn spectrum_json() {
        let spec = LengthSpectrum::from_json(r#"{"entries":[{"norm":3.5,"multiplicity":2},{"norm":9.0,"multiplicity":1}]}"#).unwrap();
        assert_eq!(spec.entries.len(), 2);
        assert_eq!(LengthSpectrum::from_json(&spec.to_json()).unwrap(), spec);
        assert!(LengthSpectrum::from_json(r#"{"entries":[{"norm":9.0,"multiplicity":1},{"norm":3.5,"multiplicity":2}]}"#).is_err());
        assert!(LengthSpectrum::from_json(r#"{"entries":[{"norm":0.5,"multiplicity":1}]}"#).is_err());
    }

    #[test]
    fn elliptic_coefficients_sum_to_zero() {
        for m in 2..12i64 {
            for n in 0..8i64 {
                let (a, b) = (0..m).map(|r| elliptic_coefficients(m, n, r).unwrap()).fold((0.0, 0.0), |x, y| (x.0 + y.0, x.1 + y.1));
                assert!(a.abs() < 1e-15 && b.abs() < 1e-15);
                assert_eq!(zero_sum(m, n).unwrap(), (0, 0));
            }
        }
        assert_eq!(elliptic_term(&sig(2, 0, &[]), 1, real(2.0)).unwrap(), real(0.0));
    }

    #[test]
    fn elliptic_closed_sum_matches_term() {
        for (m, n) in [(2u32, 0u32), (3, 1), (5, 2), (7, 4)] {
            let s = c64(1.7, 0.3);
            let total: Complex64 = (1..m).map(|l| elliptic_single_closed(m, l, n, s).unwrap()).sum();
            let term = elliptic_term(&sig(1, 1, &[m]), n, s).unwrap();
            assert!((total - term).norm() < 1e-12, "m={m} n={n} {total} {term}");
        }
    }

    #[test]
    fn elliptic_closed_matches_partial_sums() {
        // direct k-sums with a summation-by-parts tail
        let (m, l, n, s) = (5u32, 2u32, 1u32, 1.3f64);
        let theta = PI * l as f64 / m as f64;
        let e = |phi: f64| Complex64::from_polar(1.0, phi);
        let series = |x: Complex64, z: f64| {
            let terms = 200000;
            let mut acc = Complex64::new(0.0, 0.0);
            let mut xk = Complex64::new(1.0, 0.0);
            for k in 0..terms {
                acc += xk / (z + k as f64);
                xk *= x;
            }
            acc + xk / ((real(1.0) - x) * (z + terms as f64))
        };
        let lead = Complex64::i() * e(2.0 * n as f64 * theta) / (2.0 * m as f64 * theta.sin());
        let want = lead * (e(-theta) * series(e(-2.0 * theta), s) - e(theta) * series(e(2.0 * theta), s + 2.0)) / (2.0 * s + 1.0);
        let got = elliptic_single_closed(m, l, n, real(s)).unwrap();
        assert!((got - want).norm() < 1e-9, "{got} {want}");
    }

    #[test]
    fn elliptic_quadrature_pairs_with_reflected_class() {
        for (m, n, s, a) in [(2u32, 0u32, 2.0, 5.0), (3, 1, 1.5, 6.0)] {
            for l in 1..m {
                let quad = elliptic_single_quadrature(m, m - l, n, real(s), real(a)).unwrap();
                let closed = elliptic_single_closed_diff(m, l, n, real(s), real(a)).unwrap();
                assert!((quad.value - closed).norm() < 1e-6, "m={m} l={l} {} {}", quad.value, closed);
                assert!(quad.error < 1e-8);
            }
        }
        // at theta = pi/2, e^{2in theta} = (-1)^n
        let lhs = Complex64::from_polar(1.0, 2.0 * 3.0 * PI / 2.0);
        assert!((lhs + 1.0).norm() < 1e-14);
    }

    #[test]
    fn lemma_integrals() {
        for t in [1.1, 2.0, 10.0] {
            assert!((pi_lemma_integral(t).unwrap().value.re - PI).abs() < 1e-10);
        }
        for (mu, theta) in [(2.5, PI / 3.0), (4.0, PI / 5.0)] {
            let q = cosh_integral_quadrature(mu, theta).unwrap().value.re;
            let s = cosh_integral_series(mu, theta, 10_000).unwrap();
            assert!((q - s).abs() < 1e-10, "{q} {s}");
        }
    }

    #[test]
    fn ip_identities() {
        let v = ip1_quadrature(0, real(1.3), real(8.0)).unwrap().value;
        let c = ip1_closed(0, real(1.3)).unwrap() - ip1_closed(0, real(8.0)).unwrap();
        assert!((v - c).norm() < 1e-8 && (c.re + 0.749_559_466_9).abs() < 1e-9, "{v} {c}");
        for n in 0..3 {
            let (s, a) = (real(2.7), real(8.0));
            let q = ip0_quadrature(n, s, a).unwrap().value;
            let c = ip0_closed(n, s).unwrap() - ip0_closed(n, a).unwrap();
            assert!((q - c).norm() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn parabolic_examples() {
        let p = parabolic_term(&sig(2, 0, &[]), 1, real(2.0), &ScatteringModel::None, false).unwrap();
        assert_eq!(p.value(), real(0.0));
        let g = sig(0, 1, &[2, 3]);
        let p = parabolic_term(&g, 2, real(1.0), &ScatteringModel::Modular, false).unwrap();
        let d = 5.0;
        let want = (digamma_recurrence(1.0) + digamma_recurrence(5.0) - 2.0 * LN_2 - 2.0 * digamma_recurrence(3.5) - 2.0 * digamma_recurrence(3.0)) / (2.0 * d);
        assert!((p.bracket.re - want).abs() < 1e-12);
        assert!((p.a_term.re - 2.0 / 25.0).abs() < 1e-15);
        assert!(p.sigma.is_some() && !p.partial);
        assert!(matches!(parabolic_term(&g, 2, real(1.0), &ScatteringModel::None, false), Err(Error::Model(_))));
        let skipped = parabolic_term(&g, 2, real(1.0), &ScatteringModel::None, true).unwrap();
        assert!(skipped.partial && skipped.sigma.is_none() && skipped.a_term == real(0.0));
    }

    #[test]
    fn assembly() {
        let compact = sig(2, 0, &[]);
        let t = geometric_trace(&compact, 0, real(2.0), &LengthSpectrum::empty(), &ScatteringModel::None, &TraceOptions::default()).unwrap();
        assert_eq!(t.total, t.identity);
        let g = sig(0, 1, &[2, 3]);
        let spec = LengthSpectrum::new(vec![
            LengthEntry { norm: 7.0, multiplicity: 1 },
            LengthEntry { norm: 13.9, multiplicity: 2 },
            LengthEntry { norm: 50.0, multiplicity: 1 },
        ])
        .unwrap();
        let t = geometric_trace(&g, 2, real(1.5), &spec, &ScatteringModel::Modular, &TraceOptions::default()).unwrap();
        assert_eq!(t.total, t.identity + t.hyperbolic + t.elliptic + t.parabolic);
        let opts = TraceOptions::default();
        let d1 = geometric_trace_difference(&g, 2, real(1.5), real(4.0), &spec, &ScatteringModel::Modular, &opts).unwrap();
        let d2 = geometric_trace_difference(&g, 2, real(4.0), real(1.5), &spec, &ScatteringModel::Modular, &opts).unwrap();
        assert_eq!(d1, -d2);
    }

    #[test]
    fn residue_recovers_dimension() {
        let g = sig(0, 1, &[2, 3]);
        let spec = LengthSpectrum::new(vec![LengthEntry { norm: 7.0, multiplicity: 1 }]).unwrap();
        for n in [3u32, 6] {
            let s = 1e-5;
            let t = geometric_trace(&g, n, real(s), &spec, &ScatteringModel::Modular, &TraceOptions { skip_scattering: true, ..Default::default() }).unwrap();
            let d = crate::surface::dim_holomorphic(&g, n).unwrap() as f64;
            assert!(((2 * n - 1) as f64 * s * t.total.re - d).abs() < 1e-3, "n={n}");
        }
    }
}
