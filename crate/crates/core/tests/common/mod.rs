#![allow(dead_code)]

use std::collections::HashSet;

use num::{BigInt, One, Zero};

/// GF(q) for q prime or q = 4, by explicit tables.
pub struct TinyField {
    pub q: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl TinyField {
    pub fn new(q: usize) -> Self {
        if q == 4 {
            // 0, 1, x, x+1 with x^2 = x + 1
            let mul = vec![
                vec![0, 0, 0, 0],
                vec![0, 1, 2, 3],
                vec![0, 2, 3, 1],
                vec![0, 3, 1, 2],
            ];
            let add = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
            return Self { q, add, mul };
        }
        assert!(
            (2..q).all(|d| !q.is_multiple_of(d)),
            "TinyField supports primes and 4"
        );
        Self {
            q,
            add: (0..q)
                .map(|a| (0..q).map(|b| (a + b) % q).collect())
                .collect(),
            mul: (0..q)
                .map(|a| (0..q).map(|b| (a * b) % q).collect())
                .collect(),
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        (1..self.q).find(|&b| self.mul[a][b] == 1).expect("nonzero")
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add[a][b] == 0).unwrap()
    }
}

/// Vectors of GF(q)^u encoded as integers in base q, coordinate 0 least
/// significant.
pub struct VectorSpace<'a> {
    pub f: &'a TinyField,
    pub u: usize,
    pub size: usize,
    add: Vec<usize>,
    scale: Vec<usize>,
}

impl<'a> VectorSpace<'a> {
    pub fn new(f: &'a TinyField, u: usize) -> Self {
        let size = f.q.pow(u as u32);
        let digits = |mut x: usize| {
            (0..u)
                .map(|_| {
                    let d = x % f.q;
                    x /= f.q;
                    d
                })
                .collect::<Vec<_>>()
        };
        let encode = |d: &[usize]| d.iter().rev().fold(0, |acc, &x| acc * f.q + x);
        let mut add = vec![0; size * size];
        for a in 0..size {
            let da = digits(a);
            for b in 0..size {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(&x, &y)| f.add(x, y)).collect();
                add[a * size + b] = encode(&s);
            }
        }
        let mut scale = vec![0; f.q * size];
        for c in 0..f.q {
            for a in 0..size {
                let s: Vec<usize> = digits(a).iter().map(|&x| f.mul(c, x)).collect();
                scale[c * size + a] = encode(&s);
            }
        }
        Self {
            f,
            u,
            size,
            add,
            scale,
        }
    }

    fn words(&self) -> usize {
        self.size.div_ceil(64)
    }

    fn contains(set: &[u64], v: usize) -> bool {
        set[v / 64] >> (v % 64) & 1 == 1
    }

    fn insert(set: &mut [u64], v: usize) {
        set[v / 64] |= 1 << (v % 64);
    }

    fn span_with(&self, w: &[u64], v: usize) -> Vec<u64> {
        let mut out = w.to_vec();
        for x in 0..self.size {
            if Self::contains(w, x) {
                for c in 1..self.f.q {
                    let y = self.add[x * self.size + self.scale[c * self.size + v]];
                    Self::insert(&mut out, y);
                }
            }
        }
        out
    }

    /// Every subspace of each dimension, as membership bitsets, found by
    /// repeatedly adjoining vectors and discarding duplicates.
    pub fn subspaces_by_dimension(&self) -> Vec<Vec<Vec<u64>>> {
        let mut zero = vec![0u64; self.words()];
        Self::insert(&mut zero, 0);
        let mut levels = vec![vec![zero]];
        for _ in 0..self.u {
            let mut seen: HashSet<Vec<u64>> = HashSet::new();
            let mut next = Vec::new();
            for w in levels.last().unwrap() {
                for v in 0..self.size {
                    if !Self::contains(w, v) {
                        let s = self.span_with(w, v);
                        if seen.insert(s.clone()) {
                            next.push(s);
                        }
                    }
                }
            }
            levels.push(next);
        }
        levels
    }

    /// Membership bitset of the span of the first `a` coordinate vectors.
    pub fn coordinate_subspace(&self, a: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.words()];
        let bound = self.f.q.pow(a as u32);
        for v in 0..bound {
            Self::insert(&mut out, v);
        }
        out
    }
}

/// Number of v-dimensional subspaces of GF(q)^u found by brute force.
pub fn brute_subspace_counts(q: usize, u: usize) -> Vec<u64> {
    let f = TinyField::new(q);
    let space = VectorSpace::new(&f, u);
    space
        .subspaces_by_dimension()
        .iter()
        .map(|l| l.len() as u64)
        .collect()
}

/// Counts |{T ⊂ GF(q)^b : dim T = t, T ∩ A = S}| for coordinate subspaces
/// S ⊂ A of dimensions s and a, over the brute-force subspace lattice.
pub struct MobiusOracle {
    levels: Vec<Vec<Vec<u64>>>,
    coordinate: Vec<Vec<u64>>,
}

impl MobiusOracle {
    pub fn new(q: usize, b: usize) -> Self {
        let f = TinyField::new(q);
        let space = VectorSpace::new(&f, b);
        Self {
            levels: space.subspaces_by_dimension(),
            coordinate: (0..=b).map(|a| space.coordinate_subspace(a)).collect(),
        }
    }

    pub fn count(&self, a: usize, s: usize, t: usize) -> u64 {
        let (big_a, big_s) = (&self.coordinate[a], &self.coordinate[s]);
        self.levels[t]
            .iter()
            .filter(|tt| {
                tt.iter()
                    .zip(big_a)
                    .map(|(x, y)| x & y)
                    .eq(big_s.iter().copied())
            })
            .count() as u64
    }
}

/// Σ over pivot sets of q^(free entries) in reduced row echelon form.
pub fn rref_subspace_count(q: u64, u: usize, v: usize) -> BigInt {
    let mut total = BigInt::zero();
    for pivots in combinations(u, v) {
        let free: usize = pivots
            .iter()
            .enumerate()
            .map(|(i, &p)| (p + 1..u).filter(|c| !pivots[i + 1..].contains(c)).count())
            .sum();
        total += num::pow(BigInt::from(q), free);
    }
    total
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let term = BigInt::from(m[0][j]) * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// C(n, k) for any integer n, k >= 0, including negative upper index.
pub fn generalized_binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Rank of a matrix over GF(q), q prime or 4.
pub fn rank(f: &TinyField, rows: &[Vec<usize>]) -> usize {
    let mut a = rows.to_vec();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let factor = f.neg(a[i][c]);
                let pivot_row = a[r].clone();
                for (x, &p) in a[i].iter_mut().zip(&pivot_row) {
                    *x = f.add(*x, f.mul(factor, p));
                }
            }
        }
        r += 1;
    }
    r
}

/// All ℓ×m matrices in reduced row echelon form of full rank.
pub fn all_rref(f: &TinyField, ell: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for pivots in combinations(m, ell) {
        let free: Vec<(usize, usize)> = (0..ell)
            .flat_map(|i| {
                let pivots = pivots.clone();
                (pivots[i] + 1..m)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let total = f.q.pow(free.len() as u32);
        for mut code in 0..total {
            let mut mat = vec![vec![0; m]; ell];
            for (i, &p) in pivots.iter().enumerate() {
                mat[i][p] = 1;
            }
            for &(i, c) in &free {
                mat[i][c] = code % f.q;
                code /= f.q;
            }
            out.push(mat);
        }
    }
    out
}

/// dim(W ∩ span(e_1..e_j)) >= i at every (i, α_i), with W the row space.
pub fn satisfies_schubert_conditions(f: &TinyField, mat: &[Vec<usize>], alpha: &[usize]) -> bool {
    let ell = mat.len();
    alpha.iter().enumerate().all(|(i, &a)| {
        let tail: Vec<Vec<usize>> = mat.iter().map(|r| r[a..].to_vec()).collect();
        let dim = ell
            - if tail[0].is_empty() {
                0
            } else {
                rank(f, &tail)
            };
        dim > i
    })
}

/// Minimum nonzero weight over all messages, by direct encoding.
pub fn naive_min_distance(f: &TinyField, rows: &[Vec<usize>]) -> u64 {
    let k = rows.len();
    let n = rows[0].len();
    let mut best = u64::MAX;
    for mut msg in 1..f.q.pow(k as u32) {
        let mut word = vec![0; n];
        for row in rows {
            let c = msg % f.q;
            msg /= f.q;
            for (w, &x) in word.iter_mut().zip(row) {
                *w = f.add(*w, f.mul(c, x));
            }
        }
        best = best.min(word.iter().filter(|&&x| x != 0).count() as u64);
    }
    best
}
