use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};

/// Polynomial in the indeterminate `q` with integer coefficients.
///
/// Coefficients are stored densely by exponent with no trailing zeros, so the
/// zero polynomial has an empty coefficient vector and no degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^exp`.
    pub fn monomial(c: BigInt, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(|c| c.is_one())
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        let coeffs = (0..len)
            .map(|i| {
                f(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Self::from_coeffs(coeffs)
    }
}

impl Add for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: Self) -> QPolynomial {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: Self) -> QPolynomial {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: Self) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match exp {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if exp == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{exp}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `[u v]_q` as a polynomial, built from the q-Pascal recurrence
/// `[n k] = [n-1 k-1] + q^k [n-1 k]`.
pub fn gaussian_binomial_poly(u: i64, v: i64) -> QPolynomial {
    if v < 0 || v > u {
        return QPolynomial::zero();
    }
    let (u, v) = (u as usize, v as usize);
    // row[k] holds [n k]_q for the current n.
    let mut row = vec![QPolynomial::one()];
    for n in 1..=u {
        let mut next = Vec::with_capacity(n + 1);
        for k in 0..=n.min(v) {
            let from_left = if k > 0 {
                row[k - 1].clone()
            } else {
                QPolynomial::zero()
            };
            let from_up = match row.get(k) {
                Some(p) if k < n => &QPolynomial::monomial(BigInt::one(), k) * p,
                _ => QPolynomial::zero(),
            };
            next.push(&from_left + &from_up);
        }
        row = next;
    }
    row.swap_remove(v)
}

/// λ(a,b;s,t) as a polynomial in q.
pub fn lambda_poly(a: i64, b: i64, s: i64, t: i64) -> QPolynomial {
    let mut acc = QPolynomial::zero();
    for r in s..=t {
        let j = r - s;
        let left = gaussian_binomial_poly(a - s, j);
        if left.is_zero() {
            continue;
        }
        let right = gaussian_binomial_poly(b - r, t - r);
        let sign = if j % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let term = &(&QPolynomial::monomial(sign, (j * (j - 1) / 2) as usize) * &left) * &right;
        acc = &acc + &term;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{binomial, gaussian_binomial};

    fn poly(c: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(QPolynomial::zero().degree(), None);
        assert_eq!(poly(&[0, 0, 0]), QPolynomial::zero());
        assert_eq!(poly(&[1, 0, 3, 0]).degree(), Some(2));
    }

    #[test]
    fn small_gaussian_polys() {
        assert_eq!(gaussian_binomial_poly(2, 1), poly(&[1, 1]));
        assert_eq!(gaussian_binomial_poly(3, 1), poly(&[1, 1, 1]));
        assert_eq!(gaussian_binomial_poly(4, 2), poly(&[1, 1, 2, 1, 1]));
        assert_eq!(
            gaussian_binomial_poly(4, 2).eval(&BigInt::one()),
            BigInt::from(6)
        );
        assert!(gaussian_binomial_poly(3, 5).is_zero());
        assert_eq!(gaussian_binomial_poly(0, 0), QPolynomial::one());
    }

    #[test]
    fn poly_matches_integer_gaussian() {
        for u in 0..=8 {
            for v in 0..=u {
                let p = gaussian_binomial_poly(u, v);
                assert_eq!(p.eval(&BigInt::one()), binomial(u, v));
                for q in [2, 3, 5, 7] {
                    let q = BigInt::from(q);
                    assert_eq!(p.eval(&q), gaussian_binomial(u, v, &q).unwrap());
                }
            }
        }
    }

    #[test]
    fn lambda_poly_examples() {
        assert_eq!(lambda_poly(0, 3, 0, 1), poly(&[1, 1, 1]));
        assert_eq!(
            lambda_poly(2, 4, 1, 2).eval(&BigInt::one()),
            BigInt::from(2)
        );
        assert!(lambda_poly(2, 4, 3, 2).is_zero());
    }

    #[test]
    fn arithmetic_and_display() {
        let a = poly(&[1, 1]);
        let b = poly(&[-1, 1]);
        assert_eq!(&a * &b, poly(&[-1, 0, 1]));
        assert_eq!(&a - &a, QPolynomial::zero());
        assert_eq!((-&a).to_string(), "-1 - q");
        assert_eq!(poly(&[1, 1, 2, 1]).to_string(), "1 + q + 2q^2 + q^3");
    }
}
