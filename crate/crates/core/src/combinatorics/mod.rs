//! Exact integer and q-polynomial counting: binomials, Gaussian binomials,
//! the subspace-intersection count λ(a,b;s,t), and integer determinants.

mod determinant;
mod qpoly;

pub use determinant::{bareiss_determinant, IntMatrix};
pub use qpoly::{gaussian_binomial_poly, lambda_poly, QPolynomial};

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient C(n, k).
///
/// Zero when `k < 0`, when `k > n >= 0`, and (unlike the analytic extension)
/// whenever `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn check_q(q: &BigInt) -> Result<()> {
    if *q < BigInt::from(2) {
        return Err(Error::InvalidInput(format!(
            "q must be at least 2, got {q}"
        )));
    }
    Ok(())
}

/// `q^e` for a non-negative exponent.
pub fn big_pow(q: &BigInt, e: u64) -> BigInt {
    num::pow(q.clone(), e as usize)
}

/// Gaussian binomial `[u v]_q`, zero unless `0 <= v <= u`.
pub fn gaussian_binomial(u: i64, v: i64, q: &BigInt) -> Result<BigInt> {
    check_q(q)?;
    Ok(gaussian_binomial_unchecked(u, v, q))
}

pub(crate) fn gaussian_binomial_unchecked(u: i64, v: i64, q: &BigInt) -> BigInt {
    if v < 0 || v > u {
        return BigInt::zero();
    }
    // (q^u - 1)(q^{u-1} - 1)...(q^{u-v+1} - 1) / (q^v - 1)...(q - 1)
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..v {
        num *= big_pow(q, (u - i) as u64) - 1;
        den *= big_pow(q, (i + 1) as u64) - 1;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// λ(a,b;s,t) = Σ_{r=s}^{t} (-1)^{r-s} q^{C(r-s,2)} [a-s, r-s]_q [b-r, t-r]_q.
///
/// For `0 <= s <= a <= b` and `s <= t <= b` this is the number of
/// t-dimensional subspaces T of a b-dimensional space with `T ∩ A = S`,
/// where `dim A = a` and `dim S = s`.
pub fn lambda_count(a: i64, b: i64, s: i64, t: i64, q: &BigInt) -> Result<BigInt> {
    check_q(q)?;
    Ok(lambda_count_unchecked(a, b, s, t, q))
}

pub(crate) fn lambda_count_unchecked(a: i64, b: i64, s: i64, t: i64, q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for r in s..=t {
        let j = r - s;
        let left = gaussian_binomial_unchecked(a - s, j, q);
        if left.is_zero() {
            continue;
        }
        let right = gaussian_binomial_unchecked(b - r, t - r, q);
        let term = big_pow(q, (j * (j - 1) / 2) as u64) * left * right;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    debug_assert!(
        !(0 <= s && s <= a && a <= b && s <= t && t <= b) || !acc.is_negative(),
        "negative subspace count"
    );
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 3), q(10));
        assert_eq!(binomial(4, 0), q(1));
        assert_eq!(binomial(3, 5), q(0));
        assert_eq!(binomial(0, 0), q(1));
        assert_eq!(binomial(-3, 2), q(0));
        assert_eq!(binomial(7, -1), q(0));
        assert_eq!(
            binomial(60, 30),
            "118264581564861424".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(4, 2, &q(2)).unwrap(), q(35));
        assert_eq!(gaussian_binomial(3, 5, &q(2)).unwrap(), q(0));
        for u in 0..6 {
            assert_eq!(gaussian_binomial(u, 0, &q(7)).unwrap(), q(1));
        }
        assert_eq!(gaussian_binomial(4, 2, &q(3)).unwrap(), q(130));
        assert_eq!(gaussian_binomial(5, 2, &q(2)).unwrap(), q(155));
        assert_eq!(gaussian_binomial(6, 3, &q(2)).unwrap(), q(1395));
        assert!(gaussian_binomial(3, 1, &q(1)).is_err());
        assert!(gaussian_binomial(3, -1, &q(2)).unwrap().is_zero());
    }

    #[test]
    fn gaussian_symmetry() {
        for u in 0..9 {
            for v in 0..=u {
                for qq in [2, 3, 5] {
                    assert_eq!(
                        gaussian_binomial(u, v, &q(qq)).unwrap(),
                        gaussian_binomial(u, u - v, &q(qq)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn lambda_values() {
        for b in 0..6 {
            for t in 0..=b {
                assert_eq!(
                    lambda_count(0, b, 0, t, &q(3)).unwrap(),
                    gaussian_binomial(b, t, &q(3)).unwrap()
                );
            }
        }
        assert_eq!(lambda_count(2, 4, 1, 2, &q(2)).unwrap(), q(6));
        assert!(lambda_count(3, 5, 2, 1, &q(2)).unwrap().is_zero());
        assert!(lambda_count(1, 2, 0, 1, &q(0)).is_err());
    }
}
