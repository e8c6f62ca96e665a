//! Adaptive 21-point Gauss-Kronrod quadrature for complex-valued integrands,
//! with mappings for half-lines and inverse-square-root endpoints.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BinaryHeap;
use std::cmp::Ordering;

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_626_368_680,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Gauss weights for XGK[1], XGK[3], ..., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { abs_tol: 1e-13, rel_tol: 1e-11, max_intervals: 4000 }
    }
}

impl QuadOptions {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        QuadOptions { abs_tol, rel_tol, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadValue {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

impl QuadValue {
    fn zero() -> Self {
        QuadValue { value: Complex64::new(0.0, 0.0), error: 0.0, evaluations: 0 }
    }
    pub fn add(self, o: QuadValue) -> Self {
        QuadValue {
            value: self.value + o.value,
            error: self.error + o.error,
            evaluations: self.evaluations + o.evaluations,
        }
    }
    pub fn scale(self, c: Complex64) -> Self {
        QuadValue { value: self.value * c, error: self.error * c.norm(), ..self }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Segment {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn qk21<F>(f: &mut F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut res_k = fc * WGK[10];
    let mut res_g = Complex64::new(0.0, 0.0);
    let mut res_abs = fc.norm() * WGK[10];
    let mut fv1 = [Complex64::new(0.0, 0.0); 10];
    let mut fv2 = [Complex64::new(0.0, 0.0); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += (f1 + f2) * WGK[j];
        res_abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            res_g += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }
    let h = half.abs();
    let value = res_k * half;
    res_abs *= h;
    res_asc *= h;
    let mut err = ((res_k - res_g) * half).norm();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((value, err))
}

/// Integrates `f` over the finite interval [a, b].
pub fn integrate<F>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadValue>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    if a == b {
        return Ok(QuadValue::zero());
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integrate needs finite limits"));
    }
    let (v, e) = qk21(&mut f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value: v, error: e });
    let mut total = v;
    let mut err = e;
    let mut evals = 21;
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * total.norm());
        if err <= tol {
            break;
        }
        if heap.len() >= opts.max_intervals {
            if err <= 100.0 * tol {
                break;
            }
            return Err(Error::convergence(format!(
                "quadrature on [{a}, {b}]: error {err:.3e} above tolerance {tol:.3e}"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            // interval can no longer be split
            if err <= 100.0 * tol {
                heap.push(worst);
                break;
            }
            return Err(Error::convergence(format!("quadrature on [{a}, {b}] hit machine resolution")));
        }
        let (v1, e1) = qk21(&mut f, worst.a, mid)?;
        let (v2, e2) = qk21(&mut f, mid, worst.b)?;
        evals += 42;
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
        if heap.len() % 64 == 0 {
            // refresh the running sums to keep cancellation from drifting
            total = heap.iter().map(|s| s.value).sum();
            err = heap.iter().map(|s| s.error).sum();
        }
    }
    let total: Complex64 = heap.iter().map(|s| s.value).sum();
    let err: f64 = heap.iter().map(|s| s.error).sum();
    Ok(QuadValue { value: total, error: err, evaluations: evals })
}

/// Integrates over [a, inf). The part beyond max(a, 1) is mapped by x = 1/t.
pub fn integrate_to_infinity<F>(mut f: F, a: f64, opts: &QuadOptions) -> Result<QuadValue>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let split = if a > 0.0 { a } else { 1.0 };
    let head = if a < split { integrate(&mut f, a, split, opts)? } else { QuadValue::zero() };
    let tail = integrate(
        |t: f64| {
            let x = 1.0 / t;
            Ok(f(x)? * (x * x))
        },
        0.0,
        1.0 / split,
        opts,
    )?;
    Ok(head.add(tail))
}

/// Integrates over the whole real line.
pub fn integrate_real_line<F>(mut f: F, opts: &QuadOptions) -> Result<QuadValue>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let right = integrate_to_infinity(&mut f, 0.0, opts)?;
    let left = integrate_to_infinity(|x| f(-x), 0.0, opts)?;
    Ok(right.add(left))
}

/// Integrates over [a, b] for integrands with inverse-square-root behaviour
/// at both ends, via x = (a+b)/2 + (b-a)/2 sin(phi).
pub fn integrate_sqrt_endpoints<F>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> Result<QuadValue>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    integrate(
        |phi: f64| Ok(f(c + h * phi.sin())? * (h * phi.cos())),
        -std::f64::consts::FRAC_PI_2,
        std::f64::consts::FRAC_PI_2,
        opts,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn re(x: f64) -> Result<Complex64> {
        Ok(Complex64::new(x, 0.0))
    }

    #[test]
    fn weights_sum_to_two() {
        let k: f64 = WGK[10] + 2.0 * WGK[..10].iter().sum::<f64>();
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn rules_are_exact_for_polynomials() {
        for deg in 0..=31u32 {
            let mut f = |x: f64| re(x.powi(deg as i32));
            let (v, _) = qk21(&mut f, -1.0, 1.0).unwrap();
            let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((v.re - exact).abs() < 1e-14, "deg {deg}");
        }
        // the embedded Gauss rule integrates degree 19 exactly
        let mut g = Complex64::new(0.0, 0.0);
        for j in 0..5 {
            let x = XGK[2 * j + 1];
            g += 2.0 * WG[j] * x.powi(18);
        }
        assert!((g.re - 2.0 / 19.0).abs() < 1e-14);
    }

    #[test]
    fn oscillatory_and_singular() {
        let o = QuadOptions::default();
        let v = integrate(|x| re((50.0 * x).cos()), 0.0, PI, &o).unwrap();
        assert!(v.value.norm() < 1e-12);
        let v = integrate(|x| re(x.ln()), 0.0, 1.0, &o).unwrap();
        assert!((v.value.re + 1.0).abs() < 1e-10);
        let v = integrate_to_infinity(|x| re((-x).exp()), 0.0, &o).unwrap();
        assert!((v.value.re - 1.0).abs() < 1e-12);
        let v = integrate_real_line(|x| re(1.0 / (1.0 + x * x)), &o).unwrap();
        assert!((v.value.re - PI).abs() < 1e-11);
        let v = integrate_sqrt_endpoints(|x| re(1.0 / (1.0 - x * x).sqrt()), -1.0, 1.0, &o).unwrap();
        assert!((v.value.re - PI).abs() < 1e-12);
    }

    #[test]
    fn complex_integrand() {
        let o = QuadOptions::default();
        let v = integrate(|x| Ok(Complex64::new(0.0, x).exp()), 0.0, PI, &o).unwrap();
        assert!((v.value - Complex64::new(0.0, 2.0)).norm() < 1e-13);
    }

    #[test]
    fn errors_propagate() {
        let o = QuadOptions::default();
        let r = integrate(|_| Err(Error::pole("here")), 0.0, 1.0, &o);
        assert!(matches!(r, Err(Error::Pole(_))));
    }
}
