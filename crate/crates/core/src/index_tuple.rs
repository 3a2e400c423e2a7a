//! The index set I(ℓ,m) of strictly increasing ℓ-tuples in `1..=m`.

use std::fmt;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use num::ToPrimitive;

/// A strictly increasing tuple `1 <= α_1 < ... < α_ℓ <= m`.
///
/// Entries are stored 0-indexed in memory but hold the 1-based values used
/// throughout (α_i is `entries()[i - 1]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    entries: Vec<usize>,
    m: usize,
}

/// Maximal decomposition of a tuple into runs of consecutive integers.
///
/// `boundaries` holds the 1-based positions `p_1 < ... < p_u` at which a run
/// ends and the next entry jumps by more than one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStructure {
    pub boundaries: Vec<usize>,
    pub ell: usize,
}

impl BlockStructure {
    /// Number of jumps; the tuple has `u() + 1` blocks.
    pub fn u(&self) -> usize {
        self.boundaries.len()
    }

    /// Position ranges `(p_i, p_{i+1}]` of each block, with `p_0 = 0` and
    /// `p_{u+1} = ℓ`.
    pub fn ranges(&self) -> Vec<(usize, usize)> {
        let mut cuts = Vec::with_capacity(self.boundaries.len() + 2);
        cuts.push(0);
        cuts.extend_from_slice(&self.boundaries);
        cuts.push(self.ell);
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

impl IndexTuple {
    pub fn new(entries: Vec<usize>, m: usize) -> Result<Self> {
        let ell = entries.len();
        if ell == 0 || ell > m {
            return Err(Error::InvalidTuple(format!(
                "need 1 <= ℓ <= m, got ℓ = {ell}, m = {m}"
            )));
        }
        if entries[0] < 1 || entries[ell - 1] > m || entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidTuple(format!(
                "{} is not strictly increasing within 1..={m}",
                fmt_entries(&entries)
            )));
        }
        Ok(Self { entries, m })
    }

    /// `(1, 2, ..., ℓ)`, the unique minimal element.
    pub fn minimal(ell: usize, m: usize) -> Result<Self> {
        Self::new((1..=ell).collect(), m)
    }

    /// θ = `(m-ℓ+1, ..., m)`, the unique maximal element.
    pub fn theta(ell: usize, m: usize) -> Result<Self> {
        if ell == 0 || ell > m {
            return Err(Error::InvalidTuple(format!(
                "need 1 <= ℓ <= m, got ℓ = {ell}, m = {m}"
            )));
        }
        Self::new((m - ell + 1..=m).collect(), m)
    }

    /// η = `(m-ℓ, m-ℓ+2, ..., m)`, the Schubert divisor; needs `1 < ℓ < m`.
    pub fn eta(ell: usize, m: usize) -> Result<Self> {
        if !(1 < ell && ell < m) {
            return Err(Error::Range(format!(
                "the Schubert divisor needs 1 < ℓ < m, got ℓ = {ell}, m = {m}"
            )));
        }
        let mut entries = vec![m - ell];
        entries.extend(m - ell + 2..=m);
        Self::new(entries, m)
    }

    /// Parses `"(2,4)"` or `"2,4"`.
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let inner = text.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(inner);
        let entries = inner
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidTuple(format!("cannot parse {text:?} as a tuple")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries, m)
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn ell(&self) -> usize {
        self.entries.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// δ = Σ (α_i - i).
    pub fn delta(&self) -> usize {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &a)| a - (i + 1))
            .sum()
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        if self.ell() != other.ell() || self.m != other.m {
            return Err(Error::ShapeMismatch(format!(
                "cannot compare {self} in I({}, {}) with {other} in I({}, {})",
                self.ell(),
                self.m,
                other.ell(),
                other.m
            )));
        }
        Ok(self.le_unchecked(other))
    }

    pub(crate) fn le_unchecked(&self, other: &Self) -> bool {
        self.entries.iter().zip(&other.entries).all(|(b, a)| b <= a)
    }

    /// Every β <= α, in lexicographic order.
    pub fn enumerate_downset(&self) -> Vec<IndexTuple> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(self.ell());
        self.downset_rec(0, &mut current, &mut out);
        out
    }

    fn downset_rec(&self, pos: usize, current: &mut Vec<usize>, out: &mut Vec<IndexTuple>) {
        if pos == self.ell() {
            out.push(IndexTuple {
                entries: current.clone(),
                m: self.m,
            });
            return;
        }
        let lo = current.last().map_or(1, |&p| p + 1);
        for v in lo..=self.entries[pos] {
            current.push(v);
            self.downset_rec(pos + 1, current, out);
            current.pop();
        }
    }

    pub fn consecutive_blocks(&self) -> BlockStructure {
        let boundaries = self
            .entries
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] + 1 < w[1])
            .map(|(i, _)| i + 1)
            .collect();
        BlockStructure {
            boundaries,
            ell: self.ell(),
        }
    }

    /// First entry of each block.
    pub fn block_starts(&self) -> Vec<usize> {
        self.consecutive_blocks()
            .ranges()
            .iter()
            .map(|&(lo, _)| self.entries[lo])
            .collect()
    }

    /// Inverse of (`consecutive_blocks`, `block_starts`).
    pub fn from_blocks(blocks: &BlockStructure, starts: &[usize], m: usize) -> Result<Self> {
        let ranges = blocks.ranges();
        if ranges.len() != starts.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} blocks but {} start values",
                ranges.len(),
                starts.len()
            )));
        }
        let entries = ranges
            .iter()
            .zip(starts)
            .flat_map(|(&(lo, hi), &s)| (0..hi - lo).map(move |k| s + k))
            .collect();
        Self::new(entries, m)
    }

    /// Position of this tuple in the lexicographic listing of I(ℓ,m).
    pub fn lex_rank(&self) -> usize {
        let ell = self.ell() as i64;
        let mut rank = 0usize;
        let mut prev = 0usize;
        for (i, &a) in self.entries.iter().enumerate() {
            for v in prev + 1..a {
                rank += binomial((self.m - v) as i64, ell - i as i64 - 1)
                    .to_usize()
                    .expect("rank fits in usize");
            }
            prev = a;
        }
        rank
    }
}

/// All of I(ℓ,m) in lexicographic order.
pub fn enumerate_all(ell: usize, m: usize) -> Result<Vec<IndexTuple>> {
    Ok(IndexTuple::theta(ell, m)?.enumerate_downset())
}

fn fmt_entries(entries: &[usize]) -> String {
    let parts: Vec<String> = entries.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_entries(&self.entries))
    }
}
