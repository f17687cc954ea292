//! Spherical-harmonic dimensions and normalized Gegenbauer polynomials.
//!
//! Points live on `S^d ⊂ R^{d+1}`. The polynomial `g_{k,d}` is the degree-`k`
//! Gegenbauer polynomial with parameter `(d-1)/2`, normalized so that
//! `g_{k,d}(1) = 1`; `g_{k,d}((x,y))` is then the normalized reproducing
//! kernel of `Harm_k(S^d)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalars::QuadScalar;

/// Largest degree for which the dimension is computed exactly in `u128`
/// without risk of overflow for `d ≤ 10_000`.
const MAX_DEGREE: usize = 64;

/// The space `Harm_k(S^d)` together with its dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HarmonicSpace {
    pub d: usize,
    pub k: usize,
    pub dim: u64,
}

impl HarmonicSpace {
    pub fn new(k: usize, d: usize) -> Result<Self> {
        Ok(Self {
            d,
            k,
            dim: harm_dim(k, d)?,
        })
    }
}

/// `dim Harm_k(S^d) = (2k+d-1)/(k+d-1) · C(d+k-1, k)`.
pub fn harm_dim(k: usize, d: usize) -> Result<u64> {
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "harmonic degree k={k} must be in 1..={MAX_DEGREE}"
        )));
    }
    if !(2..=10_000).contains(&d) {
        return Err(Error::InvalidParameter(format!(
            "sphere dimension d={d} must be in 2..=10000"
        )));
    }
    let binom =
        binomial((d + k - 1) as u128, k as u128).ok_or(Error::Overflow("computing binomial"))?;
    let num = binom
        .checked_mul((2 * k + d - 1) as u128)
        .ok_or(Error::Overflow("computing harmonic dimension"))?;
    let den = (k + d - 1) as u128;
    if num % den != 0 {
        return Err(Error::Invariant(format!(
            "dim Harm_{k}(S^{d}) is not an integer"
        )));
    }
    u64::try_from(num / den).map_err(|_| Error::Overflow("computing harmonic dimension"))
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiply
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Degree-2 closed form `g_{2,d}(t) = ((d+1)t² − 1)/d`.
pub fn gegenbauer2(d: usize, t: &QuadScalar) -> QuadScalar {
    assert!(d >= 1, "sphere dimension must be positive");
    let n = BigInt::from(d + 1);
    let t2 = t.square().scale_int(&n) - QuadScalar::one();
    t2 * QuadScalar::from_ratio(1, d as i64)
}

/// Values `g_{0,d}(t), …, g_{kmax,d}(t)` from the three-term recurrence
///
/// `(k+n-2) g_{k+1} = (2k+n-2) t g_k − k g_{k-1}`, with `n = d+1`.
pub fn gegenbauer_table(kmax: usize, d: usize, t: &QuadScalar) -> Vec<QuadScalar> {
    assert!(d >= 1, "sphere dimension must be positive");
    let n = d + 1;
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(QuadScalar::one());
    if kmax == 0 {
        return out;
    }
    out.push(t.clone());
    for k in 1..kmax {
        let lead = t * &out[k];
        let lead = lead.scale_int(&BigInt::from(2 * k + n - 2));
        let tail = out[k - 1].scale_int(&BigInt::from(k));
        let next = (lead - tail)
            * QuadScalar::rational(BigRational::new(1.into(), BigInt::from(k + n - 2)));
        out.push(next);
    }
    out
}

/// `g_{k,d}(t)` with `g_{k,d}(1) = 1`.
pub fn gegenbauer(k: usize, d: usize, t: &QuadScalar) -> QuadScalar {
    gegenbauer_table(k, d, t)
        .pop()
        .expect("table is never empty")
}

/// Float evaluation of the same recurrence.
pub fn gegenbauer_f64(k: usize, d: usize, t: f64) -> f64 {
    let n = (d + 1) as f64;
    let (mut prev, mut cur) = (1.0, t);
    if k == 0 {
        return prev;
    }
    for j in 1..k {
        let j = j as f64;
        let next = ((2.0 * j + n - 2.0) * t * cur - j * prev) / (j + n - 2.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Rising factorial `(x)_m`.
    fn pochhammer(x: &BigRational, m: usize) -> BigRational {
        (0..m).fold(BigRational::one(), |acc, i| {
            acc * (x + BigRational::from_integer(i.into()))
        })
    }

    fn factorial(m: usize) -> BigRational {
        (1..=m).fold(BigRational::one(), |acc, i| {
            acc * BigRational::from_integer(i.into())
        })
    }

    /// Explicit monomial expansion of `C_k^λ(t)/C_k^λ(1)` with `λ = (d-1)/2`.
    fn oracle(k: usize, d: usize, t: &BigRational) -> BigRational {
        let lambda = rat(d as i64 - 1, 2);
        let two_t = t * BigRational::from_integer(2.into());
        let mut c = BigRational::zero();
        for j in 0..=k / 2 {
            let mut term = pochhammer(&lambda, k - j) / (factorial(j) * factorial(k - 2 * j));
            for _ in 0..k - 2 * j {
                term *= &two_t;
            }
            if j % 2 == 1 {
                term = -term;
            }
            c += term;
        }
        let at_one = pochhammer(&(&lambda * BigRational::from_integer(2.into())), k) / factorial(k);
        c / at_one
    }

    #[test]
    fn dimensions() {
        assert_eq!(harm_dim(2, 7).unwrap(), 35);
        assert_eq!(harm_dim(1, 9).unwrap(), 10);
        assert_eq!(harm_dim(2, 23).unwrap(), 299);
        assert_eq!(harm_dim(2, 2).unwrap(), 5);
        assert!(harm_dim(0, 5).is_err());
        assert!(harm_dim(2, 1).is_err());
    }

    #[test]
    fn dimension_is_integral_and_matches_degree_two_formula() {
        for k in 1..=10 {
            for d in 2..=100 {
                let dim = harm_dim(k, d).unwrap();
                if k == 2 {
                    assert_eq!(dim as usize, d * (d + 3) / 2);
                }
                if k == 1 {
                    assert_eq!(dim as usize, d + 1);
                }
            }
        }
    }

    #[test]
    fn degree_two_values() {
        let q = |s: &str| s.parse::<QuadScalar>().unwrap();
        assert_eq!(gegenbauer2(7, &q("1/2")), q("1/7"));
        assert_eq!(gegenbauer2(6, &q("1/3")), q("-1/27"));
        assert_eq!(gegenbauer2(3, &q("1/4+1/4*sqrt(5)")), q("1/6+1/6*sqrt(5)"));
        for d in 2..40 {
            assert!(gegenbauer2(d, &QuadScalar::one()).is_one());
        }
    }

    #[test]
    fn normalization_at_one() {
        for d in 2..=100 {
            for (k, v) in gegenbauer_table(10, d, &QuadScalar::one())
                .iter()
                .enumerate()
            {
                assert!(v.is_one(), "g_{k},{d}(1) = {v}");
            }
        }
        assert!(gegenbauer(3, 2, &QuadScalar::one()).is_one());
    }

    #[test]
    fn recurrence_matches_explicit_expansion() {
        let points = [
            rat(0, 1),
            rat(1, 2),
            rat(-1, 3),
            rat(2, 7),
            rat(-5, 9),
            rat(3, 4),
            rat(1, 1),
            rat(-1, 1),
        ];
        for d in [2usize, 3, 5, 6, 7, 22, 23, 50] {
            for t in &points {
                let table = gegenbauer_table(10, d, &QuadScalar::rational(t.clone()));
                for (k, v) in table.iter().enumerate() {
                    assert_eq!(
                        v,
                        &QuadScalar::rational(oracle(k, d, t)),
                        "k={k} d={d} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn quadratic_argument_matches_float() {
        let t: QuadScalar = "-1/4+1/4*sqrt(5)".parse().unwrap();
        for k in 0..=12 {
            let exact = gegenbauer(k, 3, &t).to_f64();
            assert!((exact - gegenbauer_f64(k, 3, t.to_f64())).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn recurrence_agrees_with_oracle(k in 0usize..=10, d in 2usize..=100, n in -60i64..=60, den in 1i64..=60) {
            let t = rat(n, den);
            prop_assert_eq!(gegenbauer(k, d, &QuadScalar::rational(t.clone())), QuadScalar::rational(oracle(k, d, &t)));
        }

        #[test]
        fn bounded_on_interval(k in 0usize..=10, d in 2usize..=100, n in -1000i64..=1000) {
            let t = QuadScalar::from_ratio(n, 1000);
            prop_assert!(gegenbauer(k, d, &t).to_f64().abs() <= 1.0 + 1e-12);
        }
    }
}
