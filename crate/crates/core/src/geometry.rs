//! Rational points of Schubert varieties via the Ehresmann cell
//! decomposition, and their Plücker coordinates.

use num::BigInt;

use crate::combinatorics::big_pow;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::index_tuple::{enumerate_all, IndexTuple};
use crate::par;
use crate::SearchOptions;

/// Row-reduced representative of a point in the cell C_β.
///
/// Row i has a 1 in column β_i, zeros to its right, and zeros below every
/// pivot; the remaining δ_β positions are free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonRepresentative {
    pub cell: IndexTuple,
    /// ℓ rows of length m.
    pub matrix: Vec<Vec<Elem>>,
}

/// Normalized Plücker coordinates, indexed by I(ℓ,m) in lexicographic order.
/// The first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerPoint {
    coords: Vec<Elem>,
}

impl PluckerPoint {
    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    /// Coordinate at γ.
    pub fn at(&self, gamma: &IndexTuple) -> Elem {
        self.coords[gamma.lex_rank()]
    }

    /// Comma-separated canonical integers, the point dump line format.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(u8::to_string).collect();
        parts.join(",")
    }
}

/// `dims[j-1] = dim(W ∩ A_j)` for j = 1..=m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFlagProfile {
    pub dims: Vec<usize>,
}

/// The coordinate index set I(ℓ,m) together with the minor evaluator.
#[derive(Clone, Debug)]
pub struct PluckerEmbedding {
    ell: usize,
    m: usize,
    columns: Vec<Vec<usize>>,
}

impl PluckerEmbedding {
    pub fn new(ell: usize, m: usize) -> Result<Self> {
        let columns = enumerate_all(ell, m)?
            .into_iter()
            .map(|g| g.entries().iter().map(|c| c - 1).collect())
            .collect();
        Ok(Self { ell, m, columns })
    }

    pub fn dimension(&self) -> usize {
        self.columns.len()
    }

    /// Plücker point of the row space of an ℓ×m matrix.
    pub fn point(&self, field: &FieldSpec, matrix: &[Vec<Elem>]) -> Result<PluckerPoint> {
        check_shape(matrix, self.ell, self.m)?;
        let mut coords: Vec<Elem> = self
            .columns
            .iter()
            .map(|cols| minor(field, matrix, cols))
            .collect();
        let Some(&lead) = coords.iter().find(|&&c| c != 0) else {
            let rank = field.rank(&mut matrix.to_vec());
            return Err(Error::RankDeficient {
                rank,
                expected: self.ell,
            });
        };
        if lead != 1 {
            let inv = field.inv(lead)?;
            for c in coords.iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
        Ok(PluckerPoint { coords })
    }
}

fn check_shape(matrix: &[Vec<Elem>], ell: usize, m: usize) -> Result<()> {
    if matrix.len() != ell || matrix.iter().any(|r| r.len() != m) {
        return Err(Error::ShapeMismatch(format!("expected a {ell}x{m} matrix")));
    }
    Ok(())
}

fn minor(field: &FieldSpec, matrix: &[Vec<Elem>], cols: &[usize]) -> Elem {
    match cols.len() {
        1 => matrix[0][cols[0]],
        2 => {
            let (a, b) = (&matrix[0], &matrix[1]);
            field.sub(
                field.mul(a[cols[0]], b[cols[1]]),
                field.mul(a[cols[1]], b[cols[0]]),
            )
        }
        _ => field.determinant(
            matrix
                .iter()
                .map(|row| cols.iter().map(|&c| row[c]).collect())
                .collect(),
        ),
    }
}

/// Positions `(row, col)` (0-based) left free in cell β, row-major.
pub fn free_positions(beta: &IndexTuple) -> Vec<(usize, usize)> {
    let pivots: Vec<usize> = beta.entries().iter().map(|b| b - 1).collect();
    let mut out = Vec::with_capacity(beta.delta());
    for (i, &piv) in pivots.iter().enumerate() {
        for col in 0..piv {
            if !pivots[..i].contains(&col) {
                out.push((i, col));
            }
        }
    }
    out
}

/// `q^δ` as u64, or `None` if it overflows.
fn checked_cell_size(q: usize, delta: usize) -> Option<u64> {
    (q as u64).checked_pow(delta as u32)
}

fn check_point_budget(total: &BigInt, budget: u64) -> Result<()> {
    if *total > BigInt::from(budget) {
        return Err(Error::budget("point enumeration", total, budget));
    }
    Ok(())
}

/// The q^{δ_β} representatives of C_β, ordered by assigning free entries in
/// row-major order (first free position most significant).
pub fn enumerate_cell(
    beta: &IndexTuple,
    field: &FieldSpec,
    opts: &SearchOptions,
) -> Result<Vec<EchelonRepresentative>> {
    let size = big_pow(&BigInt::from(field.order()), beta.delta() as u64);
    check_point_budget(&size, opts.budget.points)?;
    Ok(cell_matrices(beta, field)
        .map(|matrix| EchelonRepresentative {
            cell: beta.clone(),
            matrix,
        })
        .collect())
}

fn cell_matrices<'a>(
    beta: &'a IndexTuple,
    field: &'a FieldSpec,
) -> impl Iterator<Item = Vec<Vec<Elem>>> + 'a {
    let (ell, m, q) = (beta.ell(), beta.m(), field.order());
    let free = free_positions(beta);
    let count = checked_cell_size(q, free.len()).expect("cell size checked against budget");
    let mut base = vec![vec![0; m]; ell];
    for (i, &b) in beta.entries().iter().enumerate() {
        base[i][b - 1] = 1;
    }
    (0..count).map(move |mut idx| {
        let mut mat = base.clone();
        for &(r, c) in free.iter().rev() {
            mat[r][c] = (idx % q as u64) as Elem;
            idx /= q as u64;
        }
        mat
    })
}

/// Σ_{β≤α} q^{δ_β}, the number of points `enumerate_schubert_points` yields.
pub fn schubert_point_count(alpha: &IndexTuple, q: usize) -> BigInt {
    let q = BigInt::from(q);
    alpha
        .enumerate_downset()
        .iter()
        .map(|b| big_pow(&q, b.delta() as u64))
        .sum()
}

/// All F_q-rational points of Ω_α: cells β ≤ α in lexicographic order, each
/// in its representative order.
pub fn enumerate_schubert_points(
    alpha: &IndexTuple,
    field: &FieldSpec,
    opts: &SearchOptions,
) -> Result<Vec<PluckerPoint>> {
    check_point_budget(
        &schubert_point_count(alpha, field.order()),
        opts.budget.points,
    )?;
    let embedding = PluckerEmbedding::new(alpha.ell(), alpha.m())?;
    let cells = alpha.enumerate_downset();
    let per_cell = par::map_collect(opts.execution, &cells, |beta| {
        cell_matrices(beta, field)
            .map(|mat| embedding.point(field, &mat))
            .collect::<Result<Vec<_>>>()
    });
    let mut points = Vec::new();
    for cell in per_cell {
        points.extend(cell?);
    }
    Ok(points)
}

/// Plücker coordinates of an arbitrary rank-ℓ matrix in the ambient G(ℓ,m).
pub fn plucker_coordinates(field: &FieldSpec, matrix: &[Vec<Elem>]) -> Result<PluckerPoint> {
    let ell = matrix.len();
    let m = matrix.first().map_or(0, Vec::len);
    PluckerEmbedding::new(ell, m)?.point(field, matrix)
}

/// The flag profile `r_j = dim(W ∩ A_j)` of the row space W and the unique
/// cell β containing W.
pub fn profile_and_cell(
    field: &FieldSpec,
    matrix: &[Vec<Elem>],
) -> Result<(SubspaceFlagProfile, IndexTuple)> {
    let ell = matrix.len();
    let m = matrix.first().map_or(0, Vec::len);
    if ell == 0 || ell > m {
        return Err(Error::ShapeMismatch(format!(
            "{ell}x{m} matrix is not a point of a Grassmannian"
        )));
    }
    check_shape(matrix, ell, m)?;
    let rank = field.rank(&mut matrix.to_vec());
    if rank < ell {
        return Err(Error::RankDeficient {
            rank,
            expected: ell,
        });
    }
    // dim(W ∩ A_j) = ℓ - rank of columns j+1..m
    let dims: Vec<usize> = (1..=m)
        .map(|j| {
            let mut tail: Vec<Vec<Elem>> = matrix.iter().map(|r| r[j..].to_vec()).collect();
            ell - if j == m { 0 } else { field.rank(&mut tail) }
        })
        .collect();
    let mut prev = 0;
    let mut beta = Vec::with_capacity(ell);
    for (j, &d) in dims.iter().enumerate() {
        if d > prev {
            beta.push(j + 1);
        }
        prev = d;
    }
    Ok((SubspaceFlagProfile { dims }, IndexTuple::new(beta, m)?))
}

/// Whether the row space lies in Ω_α, tested by dim(W ∩ A_{α_i}) >= i.
pub fn in_schubert_variety(
    field: &FieldSpec,
    matrix: &[Vec<Elem>],
    alpha: &IndexTuple,
) -> Result<bool> {
    let (profile, _) = profile_and_cell(field, matrix)?;
    if alpha.ell() != matrix.len() || alpha.m() != profile.dims.len() {
        return Err(Error::ShapeMismatch(format!(
            "{alpha} does not index a Schubert variety of this Grassmannian"
        )));
    }
    Ok(alpha
        .entries()
        .iter()
        .enumerate()
        .all(|(i, &a)| profile.dims[a - 1] > i))
}
