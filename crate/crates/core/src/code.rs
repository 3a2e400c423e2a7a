//! Generator matrices of Schubert codes and exhaustive weight computations.
//!
//! Distances are computed geometrically: a nonzero functional f contributes
//! q - 1 codewords of weight `n - |X ∩ ker f|`, and the r-th higher weight is
//! `n - max |X ∩ Π|` over codimension-r subspaces Π. A second, independent
//! route enumerates all messages and measures codeword weights directly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num::BigInt;
use serde::Serialize;

use crate::combinatorics::gaussian_binomial_unchecked;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::geometry::enumerate_schubert_points;
use crate::index_tuple::IndexTuple;
use crate::par;
use crate::SearchOptions;

/// Upper limit on the hyperplane incidence table used for higher weights.
const INCIDENCE_TABLE_BYTES: u64 = 1 << 30;

/// k×n generator matrix over GF(q), stored column by column.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix {
    field: FieldSpec,
    k: usize,
    n: usize,
    columns: Vec<Elem>,
    /// Set for Schubert codes: α and the row labels (the downset of α).
    alpha: Option<IndexTuple>,
    row_labels: Vec<IndexTuple>,
}

impl GeneratorMatrix {
    /// A code from explicit columns, each of length k.
    pub fn from_columns(field: FieldSpec, k: usize, columns: &[Vec<Elem>]) -> Result<Self> {
        if k == 0 || columns.is_empty() {
            return Err(Error::ShapeMismatch(
                "a code needs k >= 1 and n >= 1".into(),
            ));
        }
        if columns.iter().any(|c| c.len() != k) {
            return Err(Error::ShapeMismatch(format!(
                "every column must have length {k}"
            )));
        }
        if columns
            .iter()
            .flatten()
            .any(|&x| x as usize >= field.order())
        {
            return Err(Error::InvalidInput(format!(
                "entries must lie in 0..{}",
                field.order()
            )));
        }
        Ok(Self {
            field,
            k,
            n: columns.len(),
            columns: columns.concat(),
            alpha: None,
            row_labels: Vec::new(),
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> Option<&IndexTuple> {
        self.alpha.as_ref()
    }

    pub fn row_labels(&self) -> &[IndexTuple] {
        &self.row_labels
    }

    pub fn column(&self, j: usize) -> &[Elem] {
        &self.columns[j * self.k..(j + 1) * self.k]
    }

    pub fn entry(&self, row: usize, col: usize) -> Elem {
        self.columns[col * self.k + row]
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        (0..self.n).map(|j| self.entry(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        (0..self.k).map(|i| self.row(i)).collect()
    }

    pub fn rank(&self) -> usize {
        self.field.rank(&mut self.rows())
    }

    /// The matrix file: a header line, then k rows of n space-separated
    /// canonical integers.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        match &self.alpha {
            Some(a) => writeln!(
                out,
                "q={} l={} m={} alpha={} n={} k={}",
                self.field.order(),
                a.ell(),
                a.m(),
                a,
                self.n,
                self.k
            ),
            None => writeln!(out, "q={} n={} k={}", self.field.order(), self.n, self.k),
        }
        .expect("writing to a String");
        for i in 0..self.k {
            let row: Vec<String> = (0..self.n).map(|j| self.entry(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// The Schubert code C_α(ℓ,m): rows indexed by the downset of α, columns by
/// the points of Ω_α in enumeration order.
pub fn build_schubert_code(
    alpha: &IndexTuple,
    field: &FieldSpec,
    opts: &SearchOptions,
) -> Result<GeneratorMatrix> {
    let points = enumerate_schubert_points(alpha, field, opts)?;
    let row_labels = alpha.enumerate_downset();
    let ranks: Vec<usize> = row_labels.iter().map(IndexTuple::lex_rank).collect();
    let k = ranks.len();
    let mut columns = Vec::with_capacity(points.len() * k);
    for p in &points {
        let before = columns.len();
        columns.extend(ranks.iter().map(|&r| p.coords()[r]));
        if columns[before..].iter().all(|&x| x == 0) {
            return Err(Error::Nondegeneracy(format!(
                "a point of Ω_{alpha} vanishes on the whole downset"
            )));
        }
    }
    let code = GeneratorMatrix {
        field: field.clone(),
        k,
        n: points.len(),
        columns,
        alpha: Some(alpha.clone()),
        row_labels,
    };
    let rank = code.rank();
    if rank != k {
        return Err(Error::Nondegeneracy(format!(
            "generator matrix of C_{alpha} has rank {rank}, expected {k}"
        )));
    }
    Ok(code)
}

/// Nonzero vectors of GF(q)^k with first nonzero entry 1.
///
/// Ordered by the position j of the leading 1, then by the tail read as a
/// base-q number with position j+1 most significant.
#[derive(Clone, Debug)]
pub(crate) struct NormalizedVectors {
    q: usize,
    k: usize,
    group_start: Vec<u64>,
}

impl NormalizedVectors {
    pub(crate) fn new(q: usize, k: usize) -> Option<Self> {
        let mut group_start = Vec::with_capacity(k + 1);
        let mut acc = 0u64;
        group_start.push(0);
        for j in 0..k {
            acc = acc.checked_add((q as u64).checked_pow((k - 1 - j) as u32)?)?;
            group_start.push(acc);
        }
        Some(Self { q, k, group_start })
    }

    pub(crate) fn count(&self) -> u64 {
        self.group_start[self.k]
    }

    pub(crate) fn decode(&self, idx: u64, out: &mut [Elem]) {
        let j = self.group_start.partition_point(|&s| s <= idx) - 1;
        out[..j].fill(0);
        out[j] = 1;
        let mut tail = idx - self.group_start[j];
        for slot in out[j + 1..].iter_mut().rev() {
            *slot = (tail % self.q as u64) as Elem;
            tail /= self.q as u64;
        }
    }

    pub(crate) fn advance(&self, v: &mut [Elem]) {
        let j = v.iter().position(|&x| x != 0).expect("normalized vector");
        for slot in v[j + 1..].iter_mut().rev() {
            if (*slot as usize) + 1 < self.q {
                *slot += 1;
                return;
            }
            *slot = 0;
        }
        v[j] = 0;
        if j + 1 < self.k {
            v[j + 1] = 1;
        }
    }

    pub(crate) fn encode(&self, v: &[Elem]) -> u64 {
        let j = v.iter().position(|&x| x != 0).expect("normalized vector");
        debug_assert_eq!(v[j], 1);
        let tail = v[j + 1..]
            .iter()
            .fold(0u64, |acc, &x| acc * self.q as u64 + x as u64);
        self.group_start[j] + tail
    }
}

fn hyperplanes(code: &GeneratorMatrix, opts: &SearchOptions) -> Result<NormalizedVectors> {
    let needed = || {
        let q = BigInt::from(code.field.order());
        (num::pow(q.clone(), code.k) - 1u32) / (q - 1u32)
    };
    let nv = NormalizedVectors::new(code.field.order(), code.k)
        .ok_or_else(|| Error::budget("hyperplane search", needed(), opts.budget.subspaces))?;
    if nv.count() > opts.budget.subspaces {
        return Err(Error::budget(
            "hyperplane search",
            needed(),
            opts.budget.subspaces,
        ));
    }
    Ok(nv)
}

/// Calls `hit(j)` for every column j with `f · x_j = 0`.
#[inline]
fn for_each_on_hyperplane(code: &GeneratorMatrix, f: &[Elem], mut hit: impl FnMut(usize)) {
    let field = &code.field;
    let cols = code.columns.chunks_exact(code.k);
    if field.is_prime_field() {
        let p = field.characteristic();
        if p == 2 {
            for (j, x) in cols.enumerate() {
                let s: u32 = f.iter().zip(x).map(|(&a, &b)| (a & b) as u32).sum();
                if s & 1 == 0 {
                    hit(j);
                }
            }
        } else {
            for (j, x) in cols.enumerate() {
                let s: u32 = f.iter().zip(x).map(|(&a, &b)| a as u32 * b as u32).sum();
                if s.is_multiple_of(p) {
                    hit(j);
                }
            }
        }
    } else {
        for (j, x) in cols.enumerate() {
            if field.dot(f, x) == 0 {
                hit(j);
            }
        }
    }
}

const BLOCK: usize = 1024;

/// `|X ∩ ker f|` for every normalized functional f, in [`NormalizedVectors`]
/// order.
pub fn hyperplane_section_counts(code: &GeneratorMatrix, opts: &SearchOptions) -> Result<Vec<u32>> {
    let nv = hyperplanes(code, opts)?;
    let mut counts = vec![0u32; nv.count() as usize];
    par::fill_blocks(opts.execution, &mut counts, BLOCK, |start, out| {
        let mut f = vec![0; code.k];
        nv.decode(start as u64, &mut f);
        for slot in out.iter_mut() {
            let mut c = 0u32;
            for_each_on_hyperplane(code, &f, |_| c += 1);
            *slot = c;
            nv.advance(&mut f);
        }
    });
    Ok(counts)
}

/// `n - max_H |X ∩ H|`.
pub fn min_distance_bruteforce(code: &GeneratorMatrix, opts: &SearchOptions) -> Result<u64> {
    let counts = hyperplane_section_counts(code, opts)?;
    let best = counts.iter().copied().max().unwrap_or(0);
    Ok(code.n as u64 - best as u64)
}

/// Weight distribution from hyperplane section counts.
pub fn weight_distribution(
    code: &GeneratorMatrix,
    opts: &SearchOptions,
) -> Result<BTreeMap<u64, u64>> {
    let counts = hyperplane_section_counts(code, opts)?;
    Ok(distribution_from_counts(code, &counts))
}

fn distribution_from_counts(code: &GeneratorMatrix, counts: &[u32]) -> BTreeMap<u64, u64> {
    let scalars = code.field.order() as u64 - 1;
    let mut dist = BTreeMap::new();
    dist.insert(0, 1);
    for &c in counts {
        *dist.entry(code.n as u64 - c as u64).or_insert(0) += scalars;
    }
    dist
}

/// For each normalized functional, the set of columns on its kernel.
struct Incidence {
    words: usize,
    bits: Vec<u64>,
    nv: NormalizedVectors,
}

impl Incidence {
    fn build(code: &GeneratorMatrix, opts: &SearchOptions) -> Result<Self> {
        let nv = hyperplanes(code, opts)?;
        let words = code.n.div_ceil(64);
        let bytes = nv.count() as u128 * words as u128 * 8;
        if bytes > INCIDENCE_TABLE_BYTES as u128 {
            return Err(Error::budget(
                "hyperplane incidence table (bytes)",
                bytes,
                INCIDENCE_TABLE_BYTES,
            ));
        }
        let mut bits = vec![0u64; nv.count() as usize * words];
        par::fill_blocks(opts.execution, &mut bits, BLOCK * words, |start, out| {
            let mut f = vec![0; code.k];
            nv.decode((start / words) as u64, &mut f);
            for row in out.chunks_mut(words) {
                for_each_on_hyperplane(code, &f, |j| row[j / 64] |= 1 << (j % 64));
                nv.advance(&mut f);
            }
        });
        Ok(Self { words, bits, nv })
    }

    fn row(&self, idx: u64) -> &[u64] {
        let s = idx as usize * self.words;
        &self.bits[s..s + self.words]
    }

    fn counts(&self) -> Vec<u32> {
        self.bits
            .chunks_exact(self.words)
            .map(|r| r.iter().map(|w| w.count_ones()).sum())
            .collect()
    }
}

/// The reduced row echelon r×k matrices over GF(q), i.e. the r-dimensional
/// subspaces of GF(q)^k, grouped by pivot set in lexicographic order.
struct EchelonBases {
    q: usize,
    k: usize,
    r: usize,
    pivot_sets: Vec<Vec<usize>>,
    free: Vec<Vec<(usize, usize)>>,
    start: Vec<u64>,
}

impl EchelonBases {
    fn new(q: usize, k: usize, r: usize) -> Option<Self> {
        let mut pivot_sets = Vec::new();
        let mut cur = Vec::with_capacity(r);
        combinations(k, r, 0, &mut cur, &mut pivot_sets);
        let free: Vec<Vec<(usize, usize)>> = pivot_sets
            .iter()
            .map(|piv| {
                let mut fp = Vec::new();
                for (i, &p) in piv.iter().enumerate() {
                    for c in p + 1..k {
                        if !piv.contains(&c) {
                            fp.push((i, c));
                        }
                    }
                }
                fp
            })
            .collect();
        let mut start = vec![0u64];
        for fp in &free {
            let size = (q as u64).checked_pow(fp.len() as u32)?;
            start.push(start.last().unwrap().checked_add(size)?);
        }
        Some(Self {
            q,
            k,
            r,
            pivot_sets,
            free,
            start,
        })
    }

    fn count(&self) -> u64 {
        *self.start.last().unwrap()
    }

    /// Basis of subspace number `idx`, rows concatenated.
    fn decode(&self, idx: u64, out: &mut [Elem]) -> usize {
        let set = self.start.partition_point(|&s| s <= idx) - 1;
        out.fill(0);
        for (i, &p) in self.pivot_sets[set].iter().enumerate() {
            out[i * self.k + p] = 1;
        }
        let mut t = idx - self.start[set];
        for &(i, c) in self.free[set].iter().rev() {
            out[i * self.k + c] = (t % self.q as u64) as Elem;
            t /= self.q as u64;
        }
        set
    }

    /// Steps to the next basis, returning the new pivot-set index.
    fn advance(&self, set: usize, out: &mut [Elem]) -> usize {
        for &(i, c) in self.free[set].iter().rev() {
            let slot = &mut out[i * self.k + c];
            if (*slot as usize) + 1 < self.q {
                *slot += 1;
                return set;
            }
            *slot = 0;
        }
        if set + 1 < self.pivot_sets.len() {
            self.decode(self.start[set + 1], out)
        } else {
            set
        }
    }
}

fn combinations(k: usize, r: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    for c in from..k {
        if k - c < r - cur.len() {
            break;
        }
        cur.push(c);
        combinations(k, r, c + 1, cur, out);
        cur.pop();
    }
}

fn max_codim_section(
    code: &GeneratorMatrix,
    inc: &Incidence,
    r: usize,
    opts: &SearchOptions,
) -> Result<u32> {
    let q = code.field.order();
    let needed = || gaussian_binomial_unchecked(code.k as i64, r as i64, &BigInt::from(q));
    let bases = EchelonBases::new(q, code.k, r).ok_or_else(|| {
        Error::budget(
            "codimension-r subspace search",
            needed(),
            opts.budget.subspaces,
        )
    })?;
    if bases.count() > opts.budget.subspaces {
        return Err(Error::budget(
            "codimension-r subspace search",
            needed(),
            opts.budget.subspaces,
        ));
    }
    let k = code.k;
    let best = par::fold_ranges(
        opts.execution,
        bases.count(),
        || 0u32,
        |mut best, range| {
            if range.is_empty() {
                return best;
            }
            let mut basis = vec![0; bases.r * k];
            let mut set = bases.decode(range.start, &mut basis);
            let mut acc = vec![0u64; inc.words];
            for _ in range {
                acc.copy_from_slice(inc.row(inc.nv.encode(&basis[..k])));
                for row in basis.chunks_exact(k).skip(1) {
                    for (a, b) in acc.iter_mut().zip(inc.row(inc.nv.encode(row))) {
                        *a &= b;
                    }
                }
                let c: u32 = acc.iter().map(|w| w.count_ones()).sum();
                best = best.max(c);
                set = bases.advance(set, &mut basis);
            }
            best
        },
        u32::max,
    );
    Ok(best)
}

fn check_r(code: &GeneratorMatrix, r: usize) -> Result<()> {
    if r == 0 || r > code.k {
        return Err(Error::Range(format!(
            "r must lie in 1..={}, got {r}",
            code.k
        )));
    }
    Ok(())
}

/// d_r: n minus the largest number of columns in a codimension-r subspace.
pub fn higher_weight_bruteforce(
    code: &GeneratorMatrix,
    r: usize,
    opts: &SearchOptions,
) -> Result<u64> {
    check_r(code, r)?;
    if r == 1 {
        return min_distance_bruteforce(code, opts);
    }
    let inc = Incidence::build(code, opts)?;
    Ok(code.n as u64 - max_codim_section(code, &inc, r, opts)? as u64)
}

/// `(d_1, ..., d_{r_max})`, sharing one incidence table.
pub fn weight_hierarchy(
    code: &GeneratorMatrix,
    r_max: usize,
    opts: &SearchOptions,
) -> Result<Vec<u64>> {
    Ok(weight_report(code, r_max, false, opts)?.d)
}

/// Serialized result of a distance computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub n: u64,
    pub k: u64,
    /// `d[r - 1]` is the r-th higher weight.
    pub d: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distribution: Option<BTreeMap<u64, u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

pub fn weight_report(
    code: &GeneratorMatrix,
    r_max: usize,
    with_distribution: bool,
    opts: &SearchOptions,
) -> Result<WeightReport> {
    check_r(code, r_max)?;
    let started = Instant::now();
    let n = code.n as u64;
    let (counts, inc) = if r_max >= 2 {
        // refuse early if any requested level is out of budget
        for r in 2..=r_max {
            let total = gaussian_binomial_unchecked(
                code.k as i64,
                r as i64,
                &BigInt::from(code.field.order()),
            );
            if total > BigInt::from(opts.budget.subspaces) {
                return Err(Error::budget(
                    "codimension-r subspace search",
                    total,
                    opts.budget.subspaces,
                ));
            }
        }
        let inc = Incidence::build(code, opts)?;
        (inc.counts(), Some(inc))
    } else {
        (hyperplane_section_counts(code, opts)?, None)
    };
    let mut d = vec![n - counts.iter().copied().max().unwrap_or(0) as u64];
    if let Some(inc) = &inc {
        for r in 2..=r_max {
            d.push(n - max_codim_section(code, inc, r, opts)? as u64);
        }
    }
    let distribution = with_distribution.then(|| distribution_from_counts(code, &counts));
    Ok(WeightReport {
        n,
        k: code.k as u64,
        d,
        distribution,
        elapsed_ms: Some(started.elapsed().as_millis() as u64),
    })
}

/// Histogram of codeword weights over all q^k messages, computed by direct
/// encoding (independent of the hyperplane route).
pub fn codeword_weight_distribution(
    code: &GeneratorMatrix,
    opts: &SearchOptions,
) -> Result<BTreeMap<u64, u64>> {
    let q = code.field.order();
    let k = code.k;
    let total = (q as u64)
        .checked_pow(k as u32)
        .filter(|&t| t <= opts.budget.subspaces)
        .ok_or_else(|| {
            Error::budget(
                "codeword enumeration",
                num::pow(BigInt::from(q), k),
                opts.budget.subspaces,
            )
        })?;
    let n = code.n;
    // scaled[i][c] = c * row_i
    let scaled: Vec<Vec<Vec<Elem>>> = code
        .rows()
        .iter()
        .map(|row| {
            code.field
                .elements()
                .map(|c| row.iter().map(|&x| code.field.mul(c, x)).collect())
                .collect()
        })
        .collect();
    let mut prefix_len = 0;
    while prefix_len < k && (q as u64).pow(prefix_len as u32) < 256 {
        prefix_len += 1;
    }
    let prefixes = (q as u64).pow(prefix_len as u32);
    let ctx = Encoder {
        field: &code.field,
        scaled: &scaled,
        k,
    };
    let hist = par::fold_ranges(
        opts.execution,
        prefixes,
        || vec![0u64; n + 1],
        |mut hist, range| {
            let mut stack = vec![vec![0 as Elem; n]; k + 1];
            for idx in range {
                let mut t = idx;
                let mut partial = vec![0 as Elem; n];
                for depth in (0..prefix_len).rev() {
                    let c = (t % q as u64) as usize;
                    t /= q as u64;
                    ctx.accumulate(&mut partial, depth, c);
                }
                stack[prefix_len].copy_from_slice(&partial);
                ctx.descend(prefix_len, &mut stack, &mut hist);
            }
            hist
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    debug_assert_eq!(hist.iter().sum::<u64>(), total);
    Ok(hist
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(w, c)| (w as u64, c))
        .collect())
}

struct Encoder<'a> {
    field: &'a FieldSpec,
    scaled: &'a [Vec<Vec<Elem>>],
    k: usize,
}

impl Encoder<'_> {
    fn accumulate(&self, acc: &mut [Elem], row: usize, c: usize) {
        if c == 0 {
            return;
        }
        for (a, &b) in acc.iter_mut().zip(&self.scaled[row][c]) {
            *a = self.field.add(*a, b);
        }
    }

    fn descend(&self, depth: usize, stack: &mut [Vec<Elem>], hist: &mut [u64]) {
        let q = self.field.order();
        if depth == self.k {
            let w = stack[depth].iter().filter(|&&x| x != 0).count();
            hist[w] += 1;
            return;
        }
        if depth + 1 == self.k {
            // leaf level: count weights without materializing
            let cur = &stack[depth];
            for c in 0..q {
                let w = if c == 0 {
                    cur.iter().filter(|&&x| x != 0).count()
                } else {
                    self.leaf_weight(cur, &self.scaled[depth][c])
                };
                hist[w] += 1;
            }
            return;
        }
        for c in 0..q {
            {
                let (lo, hi) = stack.split_at_mut(depth + 1);
                let (cur, next) = (&lo[depth], &mut hi[0]);
                if c == 0 {
                    next.copy_from_slice(cur);
                } else {
                    for ((o, &a), &b) in next.iter_mut().zip(cur).zip(&self.scaled[depth][c]) {
                        *o = self.field.add(a, b);
                    }
                }
            }
            self.descend(depth + 1, stack, hist);
        }
    }

    #[inline]
    fn leaf_weight(&self, a: &[Elem], b: &[Elem]) -> usize {
        let f = self.field;
        if f.is_prime_field() {
            let p = f.characteristic() as u16;
            a.iter()
                .zip(b)
                .filter(|&(&x, &y)| {
                    let s = x as u16 + y as u16;
                    s != 0 && s != p
                })
                .count()
        } else {
            a.iter().zip(b).filter(|&(&x, &y)| f.add(x, y) != 0).count()
        }
    }
}

/// Minimum nonzero codeword weight by direct encoding of every message.
pub fn min_distance_by_codewords(code: &GeneratorMatrix, opts: &SearchOptions) -> Result<u64> {
    let mut dist = codeword_weight_distribution(code, opts)?;
    // drop the zero message
    if let Some(z) = dist.get_mut(&0) {
        *z -= 1;
    }
    Ok(dist.iter().find(|&(_, &c)| c > 0).map_or(0, |(&w, _)| w))
}

/// Which of the two explicit close-family constructions to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CloseFamilyBranch {
    /// `m - ℓ >= ℓ`: α^(j) = (m-ℓ+2-j, m-ℓ+2, ..., m).
    FirstEntryVaries,
    /// `ℓ >= m - ℓ`: α^(j) = (m-ℓ, ..., m) with m-ℓ+j-1 removed.
    OneEntryRemoved,
}

fn check_divisor_range(ell: usize, m: usize, r: usize) -> Result<()> {
    if !(1 < ell && ell < m) {
        return Err(Error::Range(format!(
            "need 1 < ℓ < m, got ℓ = {ell}, m = {m}"
        )));
    }
    let max = ell.max(m - ell);
    if r == 0 || r > max {
        return Err(Error::Range(format!("r must lie in 1..={max}, got {r}")));
    }
    Ok(())
}

/// The close family α^(1) = θ, α^(2) = η, ..., α^(r+1).
pub fn close_family(
    ell: usize,
    m: usize,
    r: usize,
    branch: CloseFamilyBranch,
) -> Result<Vec<IndexTuple>> {
    check_divisor_range(ell, m, r)?;
    match branch {
        CloseFamilyBranch::FirstEntryVaries if m - ell >= ell => (1..=r + 1)
            .map(|j| {
                let mut e = vec![m - ell + 2 - j];
                e.extend(m - ell + 2..=m);
                IndexTuple::new(e, m)
            })
            .collect(),
        CloseFamilyBranch::OneEntryRemoved if ell >= m - ell => (1..=r + 1)
            .map(|j| {
                let removed = m - ell + j - 1;
                IndexTuple::new((m - ell..=m).filter(|&x| x != removed).collect(), m)
            })
            .collect(),
        _ => Err(Error::Range(format!(
            "{branch:?} does not apply to ℓ = {ell}, m = {m}"
        ))),
    }
}

/// Default branch: the first construction whenever `m - ℓ >= ℓ`.
pub fn default_branch(ell: usize, m: usize) -> CloseFamilyBranch {
    if m >= 2 * ell {
        CloseFamilyBranch::FirstEntryVaries
    } else {
        CloseFamilyBranch::OneEntryRemoved
    }
}

/// Points of Ω_η whose Plücker coordinates at α^(2), ..., α^(r+1) vanish.
pub fn close_family_section_count(
    ell: usize,
    m: usize,
    field: &FieldSpec,
    r: usize,
    opts: &SearchOptions,
) -> Result<u64> {
    close_family_section_count_with(ell, m, field, r, default_branch(ell, m), opts)
}

pub fn close_family_section_count_with(
    ell: usize,
    m: usize,
    field: &FieldSpec,
    r: usize,
    branch: CloseFamilyBranch,
    opts: &SearchOptions,
) -> Result<u64> {
    let family = close_family(ell, m, r, branch)?;
    let eta = IndexTuple::eta(ell, m)?;
    let ranks: Vec<usize> = family[1..].iter().map(IndexTuple::lex_rank).collect();
    let points = enumerate_schubert_points(&eta, field, opts)?;
    Ok(points
        .iter()
        .filter(|p| ranks.iter().all(|&i| p.coords()[i] == 0))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn t(e: &[usize], m: usize) -> IndexTuple {
        IndexTuple::new(e.to_vec(), m).unwrap()
    }

    #[test]
    fn normalized_vectors_walk() {
        for (q, k) in [(2, 1), (2, 4), (3, 3), (4, 2)] {
            let nv = NormalizedVectors::new(q, k).unwrap();
            assert_eq!(nv.count(), ((q as u64).pow(k as u32) - 1) / (q as u64 - 1));
            let mut v = vec![0; k];
            nv.decode(0, &mut v);
            for idx in 0..nv.count() {
                let mut d = vec![0; k];
                nv.decode(idx, &mut d);
                assert_eq!(d, v);
                assert_eq!(nv.encode(&v), idx);
                nv.advance(&mut v);
            }
        }
    }

    #[test]
    fn echelon_bases_walk() {
        for (q, k, r) in [(2, 4, 2), (3, 3, 2), (2, 5, 3), (2, 3, 3)] {
            let eb = EchelonBases::new(q, k, r).unwrap();
            let expected = gaussian_binomial_unchecked(k as i64, r as i64, &BigInt::from(q));
            assert_eq!(BigInt::from(eb.count()), expected);
            let f = make_field(q as u64).unwrap();
            let mut cur = vec![0; r * k];
            let mut set = eb.decode(0, &mut cur);
            let mut seen = std::collections::HashSet::new();
            for idx in 0..eb.count() {
                let mut d = vec![0; r * k];
                assert_eq!(eb.decode(idx, &mut d), set);
                assert_eq!(d, cur);
                let mut rows: Vec<Vec<Elem>> = cur.chunks(k).map(<[u8]>::to_vec).collect();
                assert_eq!(f.rank(&mut rows), r);
                assert!(seen.insert(rows), "duplicate subspace");
                set = eb.advance(set, &mut cur);
            }
        }
    }

    #[test]
    fn trivial_code() {
        let f2 = make_field(2).unwrap();
        let opts = SearchOptions::default();
        let code = build_schubert_code(&t(&[1, 2], 4), &f2, &opts).unwrap();
        assert_eq!((code.k(), code.n()), (1, 1));
        assert_eq!(code.column(0), &[1]);
        assert_eq!(min_distance_bruteforce(&code, &opts).unwrap(), 1);
        let dist = weight_distribution(&code, &opts).unwrap();
        assert_eq!(dist, BTreeMap::from([(0, 1), (1, 1)]));
        assert_eq!(min_distance_by_codewords(&code, &opts).unwrap(), 1);
    }

    #[test]
    fn klein_quadric_codes() {
        let f2 = make_field(2).unwrap();
        let opts = SearchOptions::default();
        let eta = build_schubert_code(&t(&[2, 4], 4), &f2, &opts).unwrap();
        assert_eq!((eta.k(), eta.n(), eta.rank()), (5, 19, 5));
        assert_eq!(min_distance_bruteforce(&eta, &opts).unwrap(), 8);
        assert_eq!(higher_weight_bruteforce(&eta, 2, &opts).unwrap(), 12);
        let dist = weight_distribution(&eta, &opts).unwrap();
        assert_eq!(dist.values().sum::<u64>(), 32);
        assert_eq!(dist.keys().nth(1), Some(&8));
        assert_eq!(dist, codeword_weight_distribution(&eta, &opts).unwrap());

        let theta = build_schubert_code(&t(&[3, 4], 4), &f2, &opts).unwrap();
        assert_eq!((theta.k(), theta.n(), theta.rank()), (6, 35, 6));
        assert_eq!(
            weight_hierarchy(&theta, 3, &opts).unwrap(),
            vec![16, 24, 28]
        );
        let dist = weight_distribution(&theta, &opts).unwrap();
        assert_eq!(dist.values().sum::<u64>(), 64);
        assert_eq!(dist.keys().nth(1), Some(&16));
        assert_eq!(higher_weight_bruteforce(&theta, 6, &opts).unwrap(), 35);
        assert!(higher_weight_bruteforce(&theta, 7, &opts).is_err());
        assert!(higher_weight_bruteforce(&theta, 0, &opts).is_err());
    }

    #[test]
    fn budgets_refuse() {
        let f2 = make_field(2).unwrap();
        let mut opts = SearchOptions::default();
        let theta = build_schubert_code(&t(&[3, 4], 4), &f2, &opts).unwrap();
        opts.budget.subspaces = 62;
        assert!(matches!(
            min_distance_bruteforce(&theta, &opts),
            Err(Error::BudgetExceeded { .. })
        ));
        opts.budget.subspaces = 63;
        assert!(min_distance_bruteforce(&theta, &opts).is_ok());
        assert!(matches!(
            higher_weight_bruteforce(&theta, 2, &opts),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(
            codeword_weight_distribution(&theta, &opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn file_format() {
        let f3 = make_field(3).unwrap();
        let code = build_schubert_code(&t(&[1, 2], 4), &f3, &SearchOptions::default()).unwrap();
        assert_eq!(
            code.to_file_string(),
            "q=3 l=2 m=4 alpha=(1,2) n=1 k=1\n1\n"
        );
    }

    #[test]
    fn close_families() {
        let fam = close_family(2, 4, 2, CloseFamilyBranch::FirstEntryVaries).unwrap();
        assert_eq!(fam, vec![t(&[3, 4], 4), t(&[2, 4], 4), t(&[1, 4], 4)]);
        let fam = close_family(2, 4, 2, CloseFamilyBranch::OneEntryRemoved).unwrap();
        assert_eq!(fam, vec![t(&[3, 4], 4), t(&[2, 4], 4), t(&[2, 3], 4)]);
        assert!(close_family(2, 5, 3, CloseFamilyBranch::OneEntryRemoved).is_err());
        assert!(close_family(2, 5, 4, CloseFamilyBranch::FirstEntryVaries).is_err());
        assert!(close_family(1, 5, 1, CloseFamilyBranch::FirstEntryVaries).is_err());
        for fam in [
            close_family(3, 6, 3, CloseFamilyBranch::FirstEntryVaries).unwrap(),
            close_family(4, 6, 4, CloseFamilyBranch::OneEntryRemoved).unwrap(),
        ] {
            for a in &fam {
                for b in &fam {
                    let common = a
                        .entries()
                        .iter()
                        .filter(|x| b.entries().contains(x))
                        .count();
                    assert!(a == b || common == a.ell() - 1, "{a} and {b} are not close");
                }
            }
        }
        let f2 = make_field(2).unwrap();
        let opts = SearchOptions::default();
        assert_eq!(close_family_section_count(2, 4, &f2, 1, &opts).unwrap(), 11);
        assert_eq!(close_family_section_count(2, 4, &f2, 2, &opts).unwrap(), 7);
    }
}
