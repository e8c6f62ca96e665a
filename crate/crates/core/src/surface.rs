//! Surface signatures (genus, cusps, elliptic orders), area, and dimensions of
//! spaces of holomorphic n-differentials.

use crate::error::{Error, Result};
use crate::residues::{alpha, rational, Rational};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSignature")]
pub struct SurfaceSignature {
    pub genus: u32,
    pub cusps: u32,
    pub elliptic_orders: Vec<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSignature {
    genus: u32,
    cusps: u32,
    #[serde(default)]
    elliptic_orders: Vec<u32>,
}

impl TryFrom<RawSignature> for SurfaceSignature {
    type Error = Error;
    fn try_from(r: RawSignature) -> Result<Self> {
        SurfaceSignature::new(r.genus, r.cusps, r.elliptic_orders)
    }
}

impl SurfaceSignature {
    /// Validates and sorts the orders; rejects signatures with |X| <= 0.
    pub fn new(genus: u32, cusps: u32, mut elliptic_orders: Vec<u32>) -> Result<Self> {
        if let Some(m) = elliptic_orders.iter().find(|&&m| m < 2) {
            return Err(Error::domain(format!("elliptic order {m} must be at least 2")));
        }
        elliptic_orders.sort_unstable();
        let sig = SurfaceSignature { genus, cusps, elliptic_orders };
        if !sig.area_over_2pi().is_positive() {
            return Err(Error::domain(format!(
                "signature ({genus}; {cusps}; {:?}) is not hyperbolic",
                sig.elliptic_orders
            )));
        }
        Ok(sig)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::config(format!("surface: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("signature serializes")
    }

    /// |X|/(2 pi) = 2g - 2 + q + sum (1 - 1/m), exactly.
    pub fn area_over_2pi(&self) -> Rational {
        let mut a = rational(2 * self.genus as i64 - 2 + self.cusps as i64, 1);
        for &m in &self.elliptic_orders {
            a += rational(m as i64 - 1, m as i64);
        }
        a
    }

    /// |X|/(4 pi) as a float.
    pub fn area_over_4pi(&self) -> f64 {
        to_f64(&self.area_over_2pi()) / 2.0
    }

    pub fn orders(&self) -> impl Iterator<Item = i64> + '_ {
        self.elliptic_orders.iter().map(|&m| m as i64)
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational converts to f64")
}

/// Hyperbolic area |X|.
pub fn area(sig: &SurfaceSignature) -> f64 {
    2.0 * PI * to_f64(&sig.area_over_2pi())
}

/// Dimension d_n of holomorphic n-differentials.
pub fn dim_holomorphic(sig: &SurfaceSignature, n: u32) -> Result<u64> {
    match n {
        0 => Ok(1),
        1 => Ok(sig.genus as u64),
        _ => {
            let n = n as i64;
            let g = sig.genus as i64;
            let q = sig.cusps as i64;
            let mut d = (2 * n - 1) * (g - 1) + (n - 1) * q;
            for m in sig.orders() {
                // floor(n - n/m)
                d += n - (n + m - 1) / m;
            }
            let via_alpha = dim_alpha_form(sig, n)?;
            if via_alpha != rational(d, 1) {
                return Err(Error::internal(format!(
                    "d_{n}: floor form {d} disagrees with residue-class form {via_alpha}"
                )));
            }
            if d < 0 {
                return Err(Error::internal(format!("d_{n} = {d} is negative")));
            }
            Ok(d as u64)
        }
    }
}

/// (2n-1)/2 [2g-2+q+sum(1-1/m)] + 1/2 sum (m-1-2 alpha_m(-n))/m - q/2.
fn dim_alpha_form(sig: &SurfaceSignature, n: i64) -> Result<Rational> {
    let mut d = sig.area_over_2pi() * rational(2 * n - 1, 2) - rational(sig.cusps as i64, 2);
    for m in sig.orders() {
        d += rational(m - 1 - 2 * alpha(m, -n)?, 2 * m);
    }
    Ok(d)
}

/// One digamma contribution to the geometric trace:
/// `coef * (2s+2n-1)^(-inverse_power) * psi((s + shift)/scale)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DigammaTerm {
    pub coef: Rational,
    pub inverse_power: u32,
    pub shift: Rational,
    pub scale: i64,
}

impl DigammaTerm {
    /// Residue at s = 0: psi((s+c)/m) has residue -m where (s+c)/m hits a
    /// non-positive integer.
    pub fn residue_at_zero(&self, n: u32) -> Rational {
        let arg = &self.shift / rational(self.scale, 1);
        if !(arg.is_integer() && !arg.is_positive()) {
            return Rational::zero();
        }
        let pref = rational(2 * n as i64 - 1, 1);
        let mut r = &self.coef * rational(-self.scale, 1);
        for _ in 0..self.inverse_power {
            r /= &pref;
        }
        r
    }
}

/// The digamma terms of the identity, elliptic and parabolic contributions
/// to the geometric trace, written out symbolically.
pub fn trace_pole_ledger(sig: &SurfaceSignature, n: u32) -> Result<Vec<DigammaTerm>> {
    let ni = n as i64;
    let mut v = Vec::new();
    let ident = -sig.area_over_2pi() / rational(2, 1);
    for c in [2 * ni, 0] {
        v.push(DigammaTerm { coef: ident.clone(), inverse_power: 0, shift: rational(c, 1), scale: 1 });
    }
    for m in sig.orders() {
        for r in 0..m {
            v.push(DigammaTerm {
                coef: rational(2 * alpha(m, r - ni)? + 1 - m, 2 * m * m),
                inverse_power: 1,
                shift: rational(r, 1),
                scale: m,
            });
            v.push(DigammaTerm {
                coef: rational(2 * alpha(m, r + ni)? + 1 - m, 2 * m * m),
                inverse_power: 1,
                shift: rational(2 * ni + r, 1),
                scale: m,
            });
        }
    }
    let q = sig.cusps as i64;
    if q > 0 {
        let half = rational(q, 2);
        for (c, k) in [(rational(0, 1), 1), (rational(2 * ni, 1), 1), (rational(2 * ni + 1, 2), -2), (rational(ni, 1), -2)] {
            v.push(DigammaTerm { coef: &half * rational(k, 1), inverse_power: 1, shift: c, scale: 1 });
        }
    }
    Ok(v)
}

/// d_n as (2n-1) Res_{s=0} of the geometric trace, n >= 1.
pub fn dim_via_residue(sig: &SurfaceSignature, n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::domain("the residue route needs n >= 1"));
    }
    let mut res = Rational::zero();
    for t in trace_pole_ledger(sig, n)? {
        res += t.residue_at_zero(n);
    }
    if n == 1 {
        // simple zero of the Selberg zeta function at s = 1
        res += Rational::from_integer(1.into());
    }
    Ok(res * rational(2 * n as i64 - 1, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(g: u32, q: u32, m: &[u32]) -> SurfaceSignature {
        SurfaceSignature::new(g, q, m.to_vec()).unwrap()
    }

    #[test]
    fn areas() {
        assert!((area(&sig(2, 0, &[])) - 4.0 * PI).abs() < 1e-14);
        assert!((area(&sig(0, 1, &[2, 3])) - PI / 3.0).abs() < 1e-14);
        assert!((area(&sig(1, 1, &[])) - 2.0 * PI).abs() < 1e-14);
        assert_eq!(sig(0, 1, &[2, 3]).area_over_2pi(), rational(1, 6));
    }

    #[test]
    fn non_hyperbolic_rejected() {
        assert!(SurfaceSignature::new(1, 0, vec![]).is_err());
        assert!(SurfaceSignature::new(0, 0, vec![2, 3, 6]).is_err());
        assert!(SurfaceSignature::new(0, 2, vec![]).is_err());
        assert!(SurfaceSignature::new(0, 0, vec![2, 3, 7]).is_ok());
        assert!(SurfaceSignature::new(2, 0, vec![1]).is_err());
    }

    #[test]
    fn json_round_trip_sorts() {
        let s = SurfaceSignature::from_json(r#"{"genus":0,"cusps":1,"elliptic_orders":[3,2]}"#).unwrap();
        assert_eq!(s.elliptic_orders, vec![2, 3]);
        assert_eq!(SurfaceSignature::from_json(&s.to_json()).unwrap(), s);
        assert!(SurfaceSignature::from_json(r#"{"genus":1,"cusps":0,"elliptic_orders":[]}"#).is_err());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_holomorphic(&sig(3, 2, &[2, 2]), 1).unwrap(), 3);
        assert_eq!(dim_holomorphic(&sig(0, 1, &[2, 3]), 6).unwrap(), 1);
        assert_eq!(dim_holomorphic(&sig(2, 0, &[]), 2).unwrap(), 3);
        let modular: Vec<u64> = (2..=6).map(|n| dim_holomorphic(&sig(0, 1, &[2, 3]), n).unwrap()).collect();
        assert_eq!(modular, vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn residue_route_examples() {
        let s = sig(0, 1, &[2, 3]);
        for n in 1..=12 {
            let d = dim_holomorphic(&s, n).unwrap();
            assert_eq!(dim_via_residue(&s, n).unwrap(), rational(d as i64, 1), "n={n}");
        }
        assert!(dim_via_residue(&s, 0).is_err());
    }

    fn arb_sig() -> impl Strategy<Value = SurfaceSignature> {
        (0u32..=5, 0u32..=3, prop::collection::vec(prop::sample::select(vec![2u32, 3, 5, 7]), 0..5))
            .prop_filter_map("hyperbolic", |(g, q, m)| SurfaceSignature::new(g, q, m).ok())
    }

    proptest! {
        #[test]
        fn residue_route_matches_riemann_roch(s in arb_sig(), n in 1u32..=12) {
            let d = dim_holomorphic(&s, n).unwrap();
            prop_assert_eq!(dim_via_residue(&s, n).unwrap(), rational(d as i64, 1));
        }

        #[test]
        fn first_dimension_is_genus(s in arb_sig()) {
            prop_assert_eq!(dim_holomorphic(&s, 1).unwrap(), s.genus as u64);
        }

        #[test]
        fn dimensions_grow_for_higher_genus(g in 2u32..=5, q in 0u32..=3, n in 2u32..=11) {
            let s = SurfaceSignature::new(g, q, vec![]).unwrap();
            prop_assert!(dim_holomorphic(&s, n + 1).unwrap() >= dim_holomorphic(&s, n).unwrap());
        }
    }
}
