//! Scattering data for the cusps: the modular-group scattering function, a
//! sampled log-derivative table, and the continuous-spectrum integral Sigma.

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_to_infinity, QuadOptions, QuadValue};
use crate::special::{
    digamma, finite, log_gamma, nonpositive_integer_near, real, zeta_log_deriv, zeta_regularized,
    Complex64, POLE_TOL,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub r: f64,
    pub re: f64,
    pub im: f64,
}

/// Samples of Tr Phi'(1/2+ir) Phi(1/2+ir)^{-1} on a symmetric grid, with an
/// algebraic tail |r|^tail_exponent beyond the last sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct SampledTable {
    pub q: u32,
    pub trace_phi_half: f64,
    pub samples: Vec<Sample>,
    pub tail_exponent: f64,
}

#[derive(Deserialize)]
struct RawTable {
    q: u32,
    trace_phi_half: Option<f64>,
    samples: Vec<Sample>,
    tail_exponent: f64,
}

impl TryFrom<RawTable> for SampledTable {
    type Error = Error;
    fn try_from(r: RawTable) -> Result<Self> {
        let tr = r
            .trace_phi_half
            .ok_or_else(|| Error::model("trace_phi_half is missing"))?;
        SampledTable::new(r.q, tr, r.samples, r.tail_exponent)
    }
}

impl SampledTable {
    pub fn new(q: u32, trace_phi_half: f64, samples: Vec<Sample>, tail_exponent: f64) -> Result<Self> {
        if q == 0 {
            return Err(Error::model("a sampled model needs at least one cusp"));
        }
        if samples.len() < 4 {
            return Err(Error::model("need at least four samples for cubic interpolation"));
        }
        if !samples.iter().all(|s| s.r.is_finite() && s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::model("non-finite sample"));
        }
        if samples.windows(2).any(|w| !(w[1].r > w[0].r)) {
            return Err(Error::model("samples must be strictly increasing in r"));
        }
        let lo = samples[0].r;
        let hi = samples[samples.len() - 1].r;
        if !(hi > 0.0) || (lo + hi).abs() > 1e-9 * hi {
            return Err(Error::model(format!("sample domain [{lo}, {hi}] is not symmetric")));
        }
        if !tail_exponent.is_finite() || tail_exponent >= 1.0 {
            return Err(Error::model("tail exponent must be below 1 for the integral to converge"));
        }
        if !trace_phi_half.is_finite() || trace_phi_half.abs() > q as f64 + 1e-8 {
            return Err(Error::model("trace of Phi(1/2) must lie in [-q, q]"));
        }
        Ok(SampledTable { q, trace_phi_half, samples, tail_exponent })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| {
            if e.to_string().contains("scattering model") {
                Error::model(e.to_string())
            } else {
                Error::config(format!("scattering table: {e}"))
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serializes")
    }

    pub fn radius(&self) -> f64 {
        self.samples[self.samples.len() - 1].r
    }

    fn value(&self, i: usize) -> Complex64 {
        Complex64::new(self.samples[i].re, self.samples[i].im)
    }

    /// Index i with r_i <= r <= r_{i+1}.
    fn bracket(&self, r: f64) -> usize {
        let k = self.samples.partition_point(|s| s.r <= r);
        k.saturating_sub(1).min(self.samples.len() - 2)
    }

    /// Local cubic through the four samples around [r_i, r_{i+1}].
    fn cubic(&self, i: usize, r: f64) -> Complex64 {
        let n = self.samples.len();
        let start = i.saturating_sub(1).min(n - 4);
        let mut acc = Complex64::new(0.0, 0.0);
        for j in start..start + 4 {
            let mut w = 1.0;
            for k in start..start + 4 {
                if k != j {
                    w *= (r - self.samples[k].r) / (self.samples[j].r - self.samples[k].r);
                }
            }
            acc += self.value(j) * w;
        }
        acc
    }

    /// Interpolated log-derivative, with the algebraic tail outside the grid.
    pub fn log_deriv(&self, r: f64) -> Complex64 {
        let rmax = self.radius();
        if r > rmax {
            self.value(self.samples.len() - 1) * (r / rmax).powf(self.tail_exponent)
        } else if r < -rmax {
            self.value(0) * (-r / rmax).powf(self.tail_exponent)
        } else {
            self.cubic(self.bracket(r), r)
        }
    }

    /// int_a^b w(r) * interpolant(r) dr, one Gauss-Kronrod panel per grid cell.
    fn integrate_cells<W: Fn(f64) -> Complex64>(&self, a: f64, b: f64, weight: W) -> Result<QuadValue> {
        let opts = QuadOptions::with_tol(1e-15, 1e-13);
        let (lo, hi, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
        let mut total = QuadValue { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 };
        let mut i = self.bracket(lo);
        let mut left = lo;
        while left < hi {
            let right = self.samples[i + 1].r.min(hi);
            if right > left {
                let v = integrate(|r| Ok(weight(r) * self.cubic(i, r)), left, right, &opts)?;
                total.value += v.value;
                total.error += v.error;
                total.evaluations += v.evaluations;
            }
            left = right;
            if i + 2 >= self.samples.len() {
                break;
            }
            i += 1;
        }
        Ok(total.scale(real(sign)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScatteringModel {
    /// No cusps.
    None,
    /// PSL(2, Z): phi(s) = sqrt(pi) Gamma(s-1/2) zeta(2s-1) / (Gamma(s) zeta(2s)).
    Modular,
    Sampled(SampledTable),
}

impl ScatteringModel {
    /// Parses `none`, `modular` or `file:PATH`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        match spec {
            "none" => Ok(ScatteringModel::None),
            "modular" => Ok(ScatteringModel::Modular),
            _ => {
                if let Some(path) = spec.strip_prefix("file:") {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::config(format!("reading {path}: {e}")))?;
                    Ok(ScatteringModel::Sampled(SampledTable::from_json(&text)?))
                } else {
                    Err(Error::config(format!("unknown scattering model '{spec}'")))
                }
            }
        }
    }

    pub fn cusps(&self) -> u32 {
        match self {
            ScatteringModel::None => 0,
            ScatteringModel::Modular => 1,
            ScatteringModel::Sampled(t) => t.q,
        }
    }

    /// Tr Phi(1/2).
    pub fn trace_phi_half(&self) -> Result<f64> {
        match self {
            ScatteringModel::None => Ok(0.0),
            ScatteringModel::Modular => Ok(phi_modular(real(0.5))?.re),
            ScatteringModel::Sampled(t) => Ok(t.trace_phi_half),
        }
    }

    /// Tr Phi'(1/2+ir) Phi(1/2+ir)^{-1}.
    pub fn log_deriv_critical(&self, r: f64) -> Result<Complex64> {
        match self {
            ScatteringModel::None => Ok(Complex64::new(0.0, 0.0)),
            ScatteringModel::Modular => modular_log_deriv(Complex64::new(0.5, r)),
            ScatteringModel::Sampled(t) => Ok(t.log_deriv(r)),
        }
    }

    /// Scattering function off the critical line (single cusp, closed form only).
    pub fn phi(&self, s: Complex64) -> Result<Complex64> {
        match self {
            ScatteringModel::Modular => phi_modular(s),
            ScatteringModel::None => Err(Error::model("no cusps, no scattering function")),
            ScatteringModel::Sampled(_) => {
                Err(Error::model("a sampled model only knows phi on the critical line"))
            }
        }
    }

    /// phi(1/2+ir) for a single cusp. A sampled model integrates its
    /// log-derivative from r = 0, where phi(1/2) = Tr Phi(1/2).
    pub fn phi_critical(&self, r: f64) -> Result<Complex64> {
        match self {
            ScatteringModel::Modular => phi_modular(Complex64::new(0.5, r)),
            ScatteringModel::None => Err(Error::model("no cusps, no scattering function")),
            ScatteringModel::Sampled(t) => {
                if t.q != 1 {
                    return Err(Error::model("phi values need a single cusp"));
                }
                let rmax = t.radius();
                let inner = r.clamp(-rmax, rmax);
                let mut phase = t.integrate_cells(0.0, inner, |_| real(1.0))?.value;
                if r.abs() > rmax {
                    let p = t.tail_exponent;
                    let edge = if r > 0.0 { t.value(t.samples.len() - 1) } else { -t.value(0) };
                    // int_rmax^|r| (x/rmax)^p dx
                    let ext = rmax / (p + 1.0) * ((r.abs() / rmax).powf(p + 1.0) - 1.0);
                    phase += edge * ext;
                }
                Ok(t.trace_phi_half * (Complex64::i() * phase).exp())
            }
        }
    }
}

/// (w-1) pi^(-w/2) Gamma(w/2) zeta(w), in logarithmic form, plus its log-derivative.
fn log_completed(w: Complex64) -> Result<(Complex64, Complex64)> {
    let (z, dz) = zeta_regularized(w)?;
    if z.norm() == 0.0 {
        return Err(Error::pole(format!("zeta vanishes at {w}")));
    }
    let half = w * 0.5;
    let lr = z.ln() - half * PI.ln() + log_gamma(half)?;
    let dlr = dz / z - 0.5 * PI.ln() + 0.5 * digamma(half)?;
    Ok((lr, dlr))
}

/// Scattering function of PSL(2, Z), evaluated as -R(2-2s)/R(2s) with
/// R(w) = (w-1) pi^(-w/2) Gamma(w/2) zeta(w), smooth through s = 1/2.
pub fn phi_modular(s: Complex64) -> Result<Complex64> {
    let w1 = real(2.0) - 2.0 * s;
    let w2 = 2.0 * s;
    if nonpositive_integer_near(w1 * 0.5).is_some() {
        return Err(Error::pole(format!("phi has a pole at s = {s}")));
    }
    if nonpositive_integer_near(w2 * 0.5).is_some() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (a, _) = log_completed(w1)?;
    let (b, _) = log_completed(w2)?;
    finite(-(a - b).exp(), "phi")
}

/// phi'/phi for PSL(2, Z).
pub fn modular_log_deriv(s: Complex64) -> Result<Complex64> {
    let w1 = real(2.0) - 2.0 * s;
    let w2 = 2.0 * s;
    if nonpositive_integer_near(w1 * 0.5).is_some() || nonpositive_integer_near(w2 * 0.5).is_some() {
        return Err(Error::pole(format!("phi'/phi singular at s = {s}")));
    }
    let (_, da) = log_completed(w1)?;
    let (_, db) = log_completed(w2)?;
    finite(-2.0 * da - 2.0 * db, "phi'/phi")
}

/// Gamma(s)^2/(Gamma(s+n)Gamma(s-n)) phi0 = prod_{j=1}^n (s-j)/(s+j-1) phi0.
pub fn weight_shift(s: Complex64, n: u32, phi0: Complex64) -> Result<Complex64> {
    let mut r = phi0;
    for j in 1..=n {
        let d = s + (j as f64 - 1.0);
        if d.norm() < POLE_TOL {
            return Err(Error::pole(format!("weight shift at s = {s}")));
        }
        r *= (s - j as f64) / d;
    }
    finite(r, "weight shift")
}

/// A = q - Tr Phi(1/2), an even non-negative integer.
pub fn a_constant(model: &ScatteringModel) -> Result<i64> {
    let q = model.cusps() as f64;
    let tr = model.trace_phi_half()?;
    if !tr.is_finite() {
        return Err(Error::model("Tr Phi(1/2) is not finite"));
    }
    let a = q - tr;
    let k = (a / 2.0).round();
    if (a - 2.0 * k).abs() > 1e-8 || k < 0.0 {
        return Err(Error::model(format!("q - Tr Phi(1/2) = {a} is not an even non-negative integer")));
    }
    Ok(2 * k as i64)
}

#[derive(Debug, Clone, Copy)]
pub struct SigmaOptions {
    pub initial_radius: f64,
    pub max_radius: f64,
    pub tol: f64,
}

impl Default for SigmaOptions {
    fn default() -> Self {
        SigmaOptions { initial_radius: 100.0, max_radius: 1600.0, tol: 1e-8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaValue {
    pub value: Complex64,
    pub error_estimate: f64,
    pub radius: f64,
}

fn u_of(n: u32, s: Complex64) -> Result<Complex64> {
    let u = s + n as f64 - 0.5;
    if !(u.re > 0.0) {
        return Err(Error::domain(format!("Sigma needs Re(s + n - 1/2) > 0, got {u}")));
    }
    Ok(u)
}

/// (1/2 pi) int_{-R}^{R} Tr Phi'/Phi(1/2+ir) / (r^2 + (s+n-1/2)^2) dr, no tail.
pub fn sigma_truncated(n: u32, s: Complex64, model: &ScatteringModel, radius: f64) -> Result<QuadValue> {
    let u = u_of(n, s)?;
    let u2 = u * u;
    let v = match model {
        ScatteringModel::None => QuadValue { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 },
        ScatteringModel::Sampled(t) => {
            let r = radius.min(t.radius());
            t.integrate_cells(-r, r, |x| (u2 + x * x).inv())?
        }
        ScatteringModel::Modular => {
            let opts = QuadOptions { max_intervals: 20000, ..QuadOptions::with_tol(1e-12, 1e-11) };
            let half = integrate(|x| Ok(modular_log_deriv(Complex64::new(0.5, x))? / (u2 + x * x)), 0.0, radius, &opts)?;
            half.scale(real(2.0))
        }
    };
    Ok(v.scale(real(1.0 / (2.0 * PI))))
}

/// Smooth part of phi'/phi(1/2+ir) for PSL(2, Z): 2 ln pi - 2 Re psi(1/2+ir).
fn modular_smooth(r: f64) -> Result<f64> {
    Ok(2.0 * PI.ln() - 2.0 * digamma(Complex64::new(0.5, r))?.re)
}

/// int_R Re[zeta'/zeta(1+2ir)] regularized at r = 0, against 1/(r^2+u^2):
/// closing the contour around r = -iu gives (pi/u) zeta'/zeta(1+2u) + pi/(2u^2).
fn modular_oscillatory_line_integral(u: Complex64) -> Result<Complex64> {
    let z = zeta_log_deriv(real(1.0) + 2.0 * u)?;
    Ok(-4.0 * (PI / u * z + PI / (2.0 * u * u)))
}

/// Sigma(s) = (1/2 pi) int_R Tr Phi'/Phi(1/2+ir) / (r^2 + (s+n-1/2)^2) dr.
pub fn sigma_integral(n: u32, s: Complex64, model: &ScatteringModel) -> Result<SigmaValue> {
    sigma_integral_with(n, s, model, &SigmaOptions::default())
}

pub fn sigma_integral_with(n: u32, s: Complex64, model: &ScatteringModel, opts: &SigmaOptions) -> Result<SigmaValue> {
    let u = u_of(n, s)?;
    let u2 = u * u;
    match model {
        ScatteringModel::None => Ok(SigmaValue { value: Complex64::new(0.0, 0.0), error_estimate: 0.0, radius: 0.0 }),
        ScatteringModel::Sampled(t) => {
            let inner = t.integrate_cells(-t.radius(), t.radius(), |x| (u2 + x * x).inv())?;
            let tail = sampled_tail(t, u2)?;
            let value = (inner.value + tail) / (2.0 * PI);
            Ok(SigmaValue { value, error_estimate: (inner.error + tail.norm()) / (2.0 * PI), radius: t.radius() })
        }
        ScatteringModel::Modular => {
            let closed = modular_oscillatory_line_integral(u)?;
            let quad_opts = QuadOptions::with_tol(1e-13, 1e-12);
            let at = |radius: f64| -> Result<(Complex64, f64)> {
                let head = integrate(|x| Ok(real(modular_smooth(x)?) / (u2 + x * x)), 0.0, radius, &quad_opts)?;
                let tail = integrate_to_infinity(|x| Ok(real(modular_smooth(x)?) / (u2 + x * x)), radius, &quad_opts)?;
                Ok((2.0 * (head.value + tail.value), 2.0 * (head.error + tail.error)))
            };
            let mut radius = opts.initial_radius;
            let (mut prev, mut prev_err) = at(radius)?;
            loop {
                let next_radius = 2.0 * radius;
                if next_radius > opts.max_radius {
                    return Err(Error::convergence(format!("Sigma did not settle by R = {}", opts.max_radius)));
                }
                let (cur, cur_err) = at(next_radius)?;
                let change = (cur - prev).norm();
                if change < opts.tol * 2.0 * PI {
                    let value = (cur + closed) / (2.0 * PI);
                    let err = (change + cur_err.max(prev_err)) / (2.0 * PI);
                    return Ok(SigmaValue { value, error_estimate: err, radius: next_radius });
                }
                radius = next_radius;
                prev = cur;
                prev_err = cur_err;
            }
        }
    }
}

/// int_{|r| > R} f(+-R) (|r|/R)^p / (r^2+u^2) dr for the declared tail.
fn sampled_tail(t: &SampledTable, u2: Complex64) -> Result<Complex64> {
    let rmax = t.radius();
    let p = t.tail_exponent;
    let opts = QuadOptions::with_tol(1e-15, 1e-12);
    let w = integrate_to_infinity(|x| Ok((x / rmax).powf(p) / (u2 + x * x)), rmax, &opts)?;
    Ok((t.value(0) + t.value(t.samples.len() - 1)) * w.value)
}

fn conj_close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() < POLE_TOL
}

/// Maass-Selberg relation for truncated Eisenstein series, single cusp:
/// Y^{s1+s2b-1}/(s1+s2b-1) + phi(s1) Y^{s2b-s1}/(s2b-s1)
///   + conj(phi(s2)) Y^{s1-s2b}/(s1-s2b) - phi(s1) conj(phi(s2)) Y^{1-s1-s2b}/(s1+s2b-1).
pub fn maass_selberg_general_with<F>(s1: Complex64, s2: Complex64, y: f64, phi: F) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let s2b = s2.conj();
    if conj_close(s1, s2b) || conj_close(s1 + s2b, real(1.0)) {
        return Err(Error::domain("Maass-Selberg needs s1 != conj(s2) and s1 + conj(s2) != 1"));
    }
    if !(y > 1.0) {
        return Err(Error::domain("truncation height must exceed 1"));
    }
    let ly = y.ln();
    let p1 = phi(s1)?;
    let p2 = phi(s2)?.conj();
    let e = s1 + s2b - 1.0;
    let d = s2b - s1;
    let v = (e * ly).exp() / e + p1 * (d * ly).exp() / d + p2 * (-d * ly).exp() / (-d) - p1 * p2 * (-e * ly).exp() / e;
    finite(v, "Maass-Selberg")
}

pub fn maass_selberg_general(s1: Complex64, s2: Complex64, y: f64, model: &ScatteringModel) -> Result<Complex64> {
    maass_selberg_general_with(s1, s2, y, |s| model.phi(s))
}

/// The sigma -> 1/2 limit with s1 = s2 = sigma + ir:
/// (1/2ir)[phi(1/2-ir) Y^{2ir} - phi(1/2+ir) Y^{-2ir}] + 2q ln Y - phi'/phi(1/2+ir).
pub fn maass_selberg_limit(r: f64, y: f64, model: &ScatteringModel) -> Result<Complex64> {
    if r == 0.0 {
        return Err(Error::domain("the limit formula needs r != 0"));
    }
    if !(y > 1.0) {
        return Err(Error::domain("truncation height must exceed 1"));
    }
    let q = model.cusps() as f64;
    let ly = y.ln();
    let i = Complex64::i();
    let plus = model.phi_critical(r)?;
    let minus = model.phi_critical(-r)?;
    let osc = (minus * (2.0 * i * r * ly).exp() - plus * (-2.0 * i * r * ly).exp()) / (2.0 * i * r);
    finite(osc + 2.0 * q * ly - model.log_deriv_critical(r)?, "Maass-Selberg limit")
}
