//! Test-only oracles, independent of the library's evaluation paths.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Exact `L_n^α(x)` for integer `α >= −1` and the exact rational value of `x`:
/// `Σ_k (−1)^k C(n+α, n−k) x^k / k!`.
pub fn laguerre_exact(n: i64, alpha: i64, x: &BigRational) -> BigRational {
    if n < 0 {
        return BigRational::zero();
    }
    let mut total = BigRational::zero();
    let mut power = BigRational::one();
    let mut fact = BigInt::one();
    for k in 0..=n {
        if k > 0 {
            power = &power * x;
            fact *= BigInt::from(k);
        }
        let c = if alpha == -1 {
            // C(n−1, n−k) with the k = 0 term vanishing for n >= 1
            if n == 0 {
                BigInt::one()
            } else {
                binomial(n - 1, n - k)
            }
        } else {
            binomial(n + alpha, n - k)
        };
        let term = &power * BigRational::new(c, fact.clone());
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("representable")
}
