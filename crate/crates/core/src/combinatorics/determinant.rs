use num::{BigInt, One, Zero};

use crate::error::{Error, Result};

/// Square integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::ShapeMismatch("matrix order must be positive".into()));
        }
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::ShapeMismatch(format!(
                "matrix with {order} rows is not square"
            )));
        }
        Ok(Self {
            order,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> BigInt) -> Result<Self> {
        Self::from_rows(
            (0..order)
                .map(|i| (0..order).map(|j| f(i, j)).collect())
                .collect(),
        )
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::from_fn(order, |i, j| {
            if i == j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.order + j]
    }
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn bareiss_determinant(m: &IntMatrix) -> BigInt {
    let n = m.order;
    let mut a: Vec<Vec<BigInt>> = m.entries.chunks(n).map(<[BigInt]>::to_vec).collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                // exact by Sylvester's identity
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(
            bareiss_determinant(&IntMatrix::identity(3).unwrap()),
            BigInt::one()
        );
        assert_eq!(
            bareiss_determinant(&mat(&[&[2, 1], &[1, 3]])),
            BigInt::from(5)
        );
        assert!(bareiss_determinant(&mat(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]])).is_zero());
    }

    #[test]
    fn needs_pivoting() {
        assert_eq!(
            bareiss_determinant(&mat(&[&[0, 1], &[1, 0]])),
            BigInt::from(-1)
        );
        assert_eq!(
            bareiss_determinant(&mat(&[&[0, 2, 1], &[0, 0, 3], &[4, 1, 1]])),
            BigInt::from(24)
        );
    }

    #[test]
    fn rejects_non_square() {
        assert!(IntMatrix::from_rows(vec![]).is_err());
        assert!(IntMatrix::from_rows(vec![vec![BigInt::one()], vec![]]).is_err());
    }
}
