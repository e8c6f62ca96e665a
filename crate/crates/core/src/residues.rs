//! Residue-class bookkeeping for elliptic elements: alpha_m(k), the root-of-unity
//! sums S_k, and the rational constants beta_m(n).

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use std::f64::consts::PI;

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn check_order(m: i64) -> Result<()> {
    if m < 2 {
        Err(Error::domain(format!("elliptic order {m} must be at least 2")))
    } else {
        Ok(())
    }
}

/// k mod m, in [0, m-1].
pub fn alpha(m: i64, k: i64) -> Result<i64> {
    check_order(m)?;
    Ok(k.rem_euclid(m))
}

/// S_k(m) = -2 alpha_m(k) + m - 1.
pub fn s_sum_closed(m: i64, k: i64) -> Result<i64> {
    Ok(-2 * alpha(m, k)? + m - 1)
}

/// sum_{l=1}^{m-1} i/sin(pi l/m) * exp(-pi i l (2k+1)/m), evaluated directly.
pub fn s_sum_bruteforce(m: i64, k: i64) -> Result<Complex64> {
    check_order(m)?;
    let mf = m as f64;
    // reduce the phase exactly before going to floating point
    let phase_num = (2 * k.rem_euclid(m) + 1) as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 1..m {
        let lf = l as f64;
        let th = PI * lf / mf;
        acc += Complex64::i() / th.sin() * Complex64::from_polar(1.0, -th * phase_num);
    }
    Ok(acc)
}

/// (sum_r S_{r-n}, sum_r S_{r+n}) over r = 0..m-1; both vanish.
pub fn zero_sum(m: i64, n: i64) -> Result<(i64, i64)> {
    check_order(m)?;
    let mut lo = 0;
    let mut hi = 0;
    for r in 0..m {
        lo += s_sum_closed(m, r - n)?;
        hi += s_sum_closed(m, r + n)?;
    }
    Ok((lo, hi))
}

/// beta_m(n) = (m^2-1)/(6m) - alpha_m(n)(m - alpha_m(n))/m.
pub fn beta_closed(m: i64, n: i64) -> Result<Rational> {
    let a = alpha(m, n)?;
    Ok(rational(m * m - 1, 6 * m) - rational(a * (m - a), m))
}

/// beta_m(n) = (1/m) sum_r r [(2 alpha(r-n)+1-m)/(2m) + (2 alpha(r+n)+1-m)/(2m)].
pub fn beta_bruteforce(m: i64, n: i64) -> Result<Rational> {
    check_order(m)?;
    let mut acc = rational(0, 1);
    for r in 0..m {
        let lo = rational(2 * alpha(m, r - n)? + 1 - m, 2 * m);
        let hi = rational(2 * alpha(m, r + n)? + 1 - m, 2 * m);
        acc += (lo + hi) * rational(r, 1);
    }
    Ok(acc / rational(m, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(3, -1).unwrap(), 2);
        assert_eq!(alpha(5, 0).unwrap(), 0);
        assert_eq!(alpha(5, 12).unwrap(), 2);
        assert!(matches!(alpha(1, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_closed(2, 1).unwrap(), rational(-1, 4));
        assert_eq!(beta_closed(3, 0).unwrap(), rational(4, 9));
        assert_eq!(beta_closed(5, 10).unwrap(), rational(4, 5));
    }

    #[test]
    fn exhaustive_small_ranges() {
        for m in 2..=50 {
            for n in 0..=20 {
                assert_eq!(zero_sum(m, n).unwrap(), (0, 0));
            }
        }
        for m in 2..=30 {
            for n in 0..=10 {
                assert_eq!(beta_closed(m, n).unwrap(), beta_bruteforce(m, n).unwrap());
            }
        }
    }

    #[test]
    fn negative_index_relations() {
        // S_{-k} = -S_{k-1}; alpha(-k) = m - alpha(k) off multiples of m
        for m in 2..=12 {
            for k in -30..=30 {
                assert_eq!(s_sum_closed(m, -k).unwrap() + s_sum_closed(m, k - 1).unwrap(), 0);
                let a = alpha(m, k).unwrap();
                let b = alpha(m, -k).unwrap();
                if k % m == 0 {
                    assert_eq!(b, 0);
                } else {
                    assert_eq!(a + b, m);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn closed_and_bruteforce_sums_agree(m in 2i64..=50, k in -100i64..=100) {
            let b = s_sum_bruteforce(m, k).unwrap();
            prop_assert!(b.im.abs() < 1e-10);
            prop_assert!((b.re - s_sum_closed(m, k).unwrap() as f64).abs() < 1e-9);
        }
    }
}
