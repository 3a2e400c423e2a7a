//! Finite fields GF(p^e) with table-driven arithmetic.
//!
//! Elements are identified with their canonical encoding: the coefficient
//! vector `(c_0, ..., c_{e-1})` of the polynomial representative maps to
//! `Σ c_i p^i`. Zero encodes as 0 and one as 1.

use crate::error::{Error, Result};

/// Canonical encoding of a field element, in `0..q`.
pub type Elem = u8;

/// Largest order representable by [`Elem`].
pub const MAX_ORDER: u64 = 256;

/// Default bound on the field order accepted by [`make_field`].
pub const DEFAULT_FIELD_BOUND: u64 = 256;

#[derive(Clone, Debug)]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: usize,
    /// Monic modulus, coefficients from the constant term up (length e + 1).
    modulus: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// GF(q) with the default order bound.
pub fn make_field(q: u64) -> Result<FieldSpec> {
    make_field_with_bound(q, DEFAULT_FIELD_BOUND)
}

/// GF(q), refusing orders above `bound` (itself capped at [`MAX_ORDER`]).
///
/// The modulus is the lexicographically smallest monic irreducible polynomial
/// of degree e, comparing coefficient vectors from the constant term upward.
pub fn make_field_with_bound(q: u64, bound: u64) -> Result<FieldSpec> {
    let (p, e) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
    let bound = bound.min(MAX_ORDER);
    if q > bound {
        return Err(Error::FieldTooLarge { q, bound });
    }
    let (p, e) = (p as u32, e as u32);
    let modulus = smallest_irreducible(p, e as usize);
    Ok(FieldSpec::with_modulus(p, e, modulus))
}

/// `(p, e)` with `q = p^e`.
pub fn check_prime_power(q: u64) -> Result<(u64, u64)> {
    prime_power(q).ok_or(Error::NotAPrimePower(q))
}

fn prime_power(q: u64) -> Option<(u64, u64)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q)
        .take_while(|d| d * d <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Coefficient vectors of length `len` over GF(p), ordered lexicographically
/// with index 0 most significant.
fn vectors_lex(p: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (p as u64).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % p as u64) as u32;
            idx /= p as u64;
        }
        v
    })
}

fn smallest_irreducible(p: u32, e: usize) -> Vec<u32> {
    vectors_lex(p, e)
        .map(|mut low| {
            low.push(1);
            low
        })
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    (1..=deg / 2).all(|d| {
        vectors_lex(p, d).all(|mut low| {
            low.push(1);
            !poly_rem(f, &low, p).iter().all(|&c| c == 0)
        })
    })
}

/// Remainder of `f` modulo the monic polynomial `g`.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                let sub = (lead * gc) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

impl FieldSpec {
    fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> Self {
        let q = (p as usize).pow(e);
        let decode = |x: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut x = x;
            for _ in 0..e {
                v.push((x % p as usize) as u32);
                x /= p as usize;
            }
            v
        };
        let encode = |v: &[u32]| -> Elem {
            v.iter()
                .rev()
                .fold(0usize, |acc, &c| acc * p as usize + c as usize) as Elem
        };
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let va = decode(a);
            for b in 0..q {
                let vb = decode(b);
                let sum: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum);
                let mut prod = vec![0u32; 2 * e as usize - 1];
                for (i, x) in va.iter().enumerate() {
                    for (j, y) in vb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = poly_rem(&prod, &modulus, p);
                red.resize(e as usize, 0);
                mul[a * q + b] = encode(&red);
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem)
            .collect();
        let inv = (0..q)
            .map(|a| {
                (0..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .map_or(0, |b| b as Elem)
            })
            .collect();
        Self {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        1
    }

    /// All q elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(|x| x as Elem)
    }

    pub fn coefficients(&self, x: Elem) -> Vec<u32> {
        let mut x = x as u32;
        (0..self.e)
            .map(|_| {
                let c = x % self.p;
                x /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidInput(format!(
                "{coeffs:?} is not a coefficient vector over GF({})^{}",
                self.p, self.e
            )));
        }
        Ok(coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c) as Elem)
    }

    pub fn element(&self, value: u64) -> Result<Elem> {
        if value >= self.q as u64 {
            return Err(Error::InvalidInput(format!(
                "{value} is not an element encoding of GF({})",
                self.q
            )));
        }
        Ok(value as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv[a as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Σ a_i b_i.
    #[inline]
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        if self.e == 1 {
            let s: u32 = a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum();
            (s % self.p) as Elem
        } else {
            a.iter()
                .zip(b)
                .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
        }
    }

    /// Row-reduces `rows` (each of length `cols`) in place and returns the rank.
    pub fn rank(&self, rows: &mut [Vec<Elem>]) -> usize {
        let cols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.inv[rows[rank][c] as usize];
            for x in rows[rank].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let factor = rows[r][c];
                    let pivot_row = rows[rank].clone();
                    for (x, &p) in rows[r].iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(factor, p));
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Determinant of a square matrix given row-major.
    pub fn determinant(&self, mut a: Vec<Vec<Elem>>) -> Elem {
        let n = a.len();
        let mut det = 1;
        for c in 0..n {
            let Some(pivot) = (c..n).find(|&r| a[r][c] != 0) else {
                return 0;
            };
            if pivot != c {
                a.swap(c, pivot);
                det = self.neg(det);
            }
            det = self.mul(det, a[c][c]);
            let inv = self.inv[a[c][c] as usize];
            for r in c + 1..n {
                if a[r][c] != 0 {
                    let factor = self.mul(a[r][c], inv);
                    let (top, bottom) = a.split_at_mut(r);
                    for (x, &p) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                        *x = self.sub(*x, self.mul(factor, p));
                    }
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let f5 = make_field(5).unwrap();
        assert_eq!((f5.characteristic(), f5.degree(), f5.order()), (5, 1, 5));
        assert_eq!(f5.modulus(), &[0, 1]);
        let f4 = make_field(4).unwrap();
        assert_eq!((f4.characteristic(), f4.degree()), (2, 2));
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(make_field(6), Err(Error::NotAPrimePower(6)));
        assert_eq!(make_field(1), Err(Error::NotAPrimePower(1)));
        assert_eq!(make_field(0), Err(Error::NotAPrimePower(0)));
        assert_eq!(
            make_field(257),
            Err(Error::FieldTooLarge { q: 257, bound: 256 })
        );
        assert_eq!(
            make_field_with_bound(16, 9),
            Err(Error::FieldTooLarge { q: 16, bound: 9 })
        );
        // constant term most significant: x^3 + x^2 + 1 precedes x^3 + x + 1
        assert_eq!(make_field(8).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(make_field(9).unwrap().modulus(), &[1, 0, 1]);
        assert!(make_field(256).is_ok());
    }

    #[test]
    fn deterministic() {
        for q in [2, 4, 8, 9, 16, 27, 25] {
            assert_eq!(make_field(q).unwrap(), make_field(q).unwrap());
        }
    }

    #[test]
    fn gf4_multiplication() {
        let f = make_field(4).unwrap();
        // x has encoding 2, x + 1 has encoding 3
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.coefficients(3), vec![1, 1]);
        assert_eq!(f.from_coefficients(&[0, 1]).unwrap(), 2);
        assert!(f.from_coefficients(&[2, 0]).is_err());
        assert_eq!(f.inv(1).unwrap(), 1);
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }

    #[test]
    fn elements_in_canonical_order() {
        assert_eq!(
            make_field(2).unwrap().elements().collect::<Vec<_>>(),
            vec![0, 1]
        );
        assert_eq!(
            make_field(4).unwrap().elements().collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(make_field(9).unwrap().elements().count(), 9);
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = make_field(q).unwrap();
            let els: Vec<Elem> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, q - 1), 1, "GF({q}) element {a}");
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn dot_agrees_with_tables() {
        for q in [3, 4, 7] {
            let f = make_field(q).unwrap();
            let a: Vec<Elem> = (0..10).map(|i| (i * 5 % q) as Elem).collect();
            let b: Vec<Elem> = (0..10)
                .map(|i| (i * 3 % q + 1) as Elem % q as Elem)
                .collect();
            let slow = a
                .iter()
                .zip(&b)
                .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
            assert_eq!(f.dot(&a, &b), slow);
        }
    }

    #[test]
    fn rank_and_determinant() {
        let f = make_field(3).unwrap();
        let mut rows = vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]];
        assert_eq!(f.rank(&mut rows.clone()), 2);
        assert_eq!(f.determinant(rows.clone()), 0);
        rows[1] = vec![0, 1, 0];
        assert_eq!(f.rank(&mut rows.clone()), 3);
        assert_eq!(f.determinant(rows), 1);
        assert_eq!(f.determinant(vec![vec![0, 1], vec![1, 0]]), 2);
    }
}
