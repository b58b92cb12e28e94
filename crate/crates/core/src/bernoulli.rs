//! Bernoulli numbers via `Σ_{j=0}^{m} C(m+1, j) B_j = 0`, with `B_1 = -1/2`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn cache() -> &'static Mutex<Vec<BigRational>> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

/// `B_m`.
pub fn bernoulli(m: usize) -> BigRational {
    let mut table = cache().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= m {
        let k = table.len();
        // B_k = -1/(k+1) Σ_{j<k} C(k+1, j) B_j
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, b) in table.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * b;
            binom = binom * BigInt::from(k + 1 - j) / BigInt::from(j + 1);
        }
        let next = -acc / BigRational::from_integer(BigInt::from(k + 1));
        table.push(next);
    }
    table[m].clone()
}

/// Coefficients of `x / (1 - e^{-x}) = Σ (-1)^k B_k x^k / k!` up to `x^max_degree`.
pub fn todd_coefficients(max_degree: usize) -> Vec<BigRational> {
    let mut factorial = BigInt::one();
    (0..=max_degree)
        .map(|k| {
            if k > 0 {
                factorial *= BigInt::from(k);
            }
            let c = bernoulli(k) / BigRational::from_integer(factorial.clone());
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Coefficients of `(1 - e^{-x}) / x = Σ (-1)^k x^k / (k+1)!`, the inverse Todd factor.
pub fn inverse_todd_coefficients(max_degree: usize) -> Vec<BigRational> {
    let mut factorial = BigInt::one();
    (0..=max_degree)
        .map(|k| {
            factorial *= BigInt::from(k + 1);
            let c = BigRational::new(BigInt::one(), factorial.clone());
            if k % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect()
}

/// Coefficients `1/k!` of the exponential series.
pub fn exp_coefficients(max_degree: usize) -> Vec<BigRational> {
    let mut factorial = BigInt::one();
    (0..=max_degree)
        .map(|k| {
            if k > 0 {
                factorial *= BigInt::from(k);
            }
            BigRational::new(BigInt::one(), factorial.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(6), q(1, 42));
        assert_eq!(bernoulli(12), q(-691, 2730));
        for m in (3..40).step_by(2) {
            assert!(bernoulli(m).is_zero());
        }
    }

    #[test]
    fn todd_leading_coefficients() {
        let c = todd_coefficients(6);
        assert_eq!(c[..5], [q(1, 1), q(1, 2), q(1, 12), q(0, 1), q(-1, 720)]);
        assert_eq!(c[6], q(1, 30240));
    }

    #[test]
    fn todd_times_inverse_is_one() {
        let a = todd_coefficients(20);
        let b = inverse_todd_coefficients(20);
        for n in 0..=20 {
            let s: BigRational = (0..=n).map(|k| &a[k] * &b[n - k]).sum();
            assert_eq!(s, if n == 0 { q(1, 1) } else { q(0, 1) });
        }
    }
}
