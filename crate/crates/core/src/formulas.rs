//! Closed-form parameters of Schubert codes.
//!
//! Length and dimension each have several independent expressions; they are
//! kept separate so that they can be compared against one another and
//! against the enumerated geometry.

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

use crate::combinatorics::{
    bareiss_determinant, big_pow, binomial, gaussian_binomial_unchecked, lambda_count_unchecked,
    IntMatrix, QPolynomial,
};
use crate::error::{Error, Result};
use crate::index_tuple::IndexTuple;

fn big_q(q: u64) -> Result<BigInt> {
    if q < 2 {
        return Err(Error::InvalidInput(format!(
            "q must be at least 2, got {q}"
        )));
    }
    Ok(BigInt::from(q))
}

/// n_α = Σ_{β≤α} q^{δ_β}.
pub fn length_via_cells(alpha: &IndexTuple, q: u64) -> Result<BigInt> {
    let q = big_q(q)?;
    Ok(alpha
        .enumerate_downset()
        .iter()
        .map(|b| big_pow(&q, b.delta() as u64))
        .sum())
}

/// Sums `Π_{i=0}^{u} term(α_{p_i}, α_{p_{i+1}}, s_i, s_{i+1})` over
/// `p_i <= s_i <= α_{p_i}`, with `α_{p_0} = s_0 = 0` and `s_{u+1} = ℓ`.
fn block_nested_sum(alpha: &IndexTuple, term: &dyn Fn(i64, i64, i64, i64) -> BigInt) -> BigInt {
    let blocks = alpha.consecutive_blocks();
    let e = alpha.entries();
    // (p_i, α_{p_i}) for i = 0..=u+1
    let mut cuts: Vec<(i64, i64)> = vec![(0, 0)];
    cuts.extend(
        blocks
            .boundaries
            .iter()
            .map(|&p| (p as i64, e[p - 1] as i64)),
    );
    cuts.push((alpha.ell() as i64, e[alpha.ell() - 1] as i64));

    fn rec(
        cuts: &[(i64, i64)],
        i: usize,
        s_prev: i64,
        term: &dyn Fn(i64, i64, i64, i64) -> BigInt,
    ) -> BigInt {
        let a_prev = cuts[i - 1].1;
        let (p, a) = cuts[i];
        if i == cuts.len() - 1 {
            return term(a_prev, a, s_prev, p);
        }
        let mut acc = BigInt::zero();
        for s in p..=a {
            let head = term(a_prev, a, s_prev, s);
            if head.is_zero() {
                continue;
            }
            acc += head * rec(cuts, i + 1, s, term);
        }
        acc
    }
    rec(&cuts, 1, 0, term)
}

/// n_α as a nested sum of products of λ-counts over the consecutive blocks.
pub fn length_via_nested_sums(alpha: &IndexTuple, q: u64) -> Result<BigInt> {
    let q = big_q(q)?;
    Ok(block_nested_sum(alpha, &|a, b, s, t| {
        lambda_count_unchecked(a, b, s, t, &q)
    }))
}

/// n_α by the sum over chains `(k_1, ..., k_{ℓ-1})` with `i <= k_i <= α_i`,
/// `k_i <= k_{i+1}`, `α_0 = k_0 = 0`, `k_ℓ = ℓ`.
pub fn length_via_gv(alpha: &IndexTuple, q: u64) -> Result<BigInt> {
    let q = big_q(q)?;
    let ell = alpha.ell();
    let mut a = vec![0i64];
    a.extend(alpha.entries().iter().map(|&x| x as i64));

    fn rec(a: &[i64], ell: usize, q: &BigInt, ks: &mut Vec<i64>) -> BigInt {
        let i = ks.len();
        if i == ell {
            ks.push(ell as i64);
            let mut prod = BigInt::one();
            for j in 0..ell {
                let dk = ks[j + 1] - ks[j];
                let g = gaussian_binomial_unchecked(a[j + 1] - a[j], dk, q);
                if g.is_zero() {
                    prod = BigInt::zero();
                    break;
                }
                let e = (a[j] - ks[j]) * dk;
                debug_assert!(e >= 0);
                prod *= g * big_pow(q, e as u64);
            }
            ks.pop();
            return prod;
        }
        let prev = *ks.last().unwrap();
        let hi = a[i].min(ell as i64);
        let mut acc = BigInt::zero();
        for k in (i as i64).max(prev)..=hi {
            ks.push(k);
            acc += rec(a, ell, q, ks);
            ks.pop();
        }
        acc
    }
    let mut ks = vec![0i64];
    Ok(rec(&a, ell, &q, &mut ks))
}

/// n_α(q) = Σ_{β≤α} q^{δ_β} as a polynomial.
pub fn length_poly(alpha: &IndexTuple) -> QPolynomial {
    let downset = alpha.enumerate_downset();
    let mut coeffs = vec![BigInt::zero(); alpha.delta() + 1];
    for b in &downset {
        coeffs[b.delta()] += 1;
    }
    QPolynomial::from_coeffs(coeffs)
}

/// k_α = det( C(α_j - j + 1, i - j + 1) )_{1<=i,j<=ℓ}.
pub fn dimension_via_determinant(alpha: &IndexTuple) -> BigInt {
    let e = alpha.entries();
    let m = IntMatrix::from_fn(alpha.ell(), |i, j| {
        binomial(e[j] as i64 - j as i64, i as i64 - j as i64 + 1)
    })
    .expect("ℓ >= 1");
    bareiss_determinant(&m)
}

/// k_α as the nested sum of binomial products over the consecutive blocks.
pub fn dimension_via_limit_sums(alpha: &IndexTuple) -> BigInt {
    block_nested_sum(alpha, &|a, b, s, t| binomial(b - a, t - s))
}

/// k_α = (α_1 / α_{ℓ+1}) C(α_{ℓ+1}, ℓ) when α_i = c(i-1) + d, with
/// α_{ℓ+1} = cℓ + d.
pub fn dimension_arith_progression(alpha: &IndexTuple) -> Result<BigInt> {
    let e = alpha.entries();
    let ell = e.len() as i64;
    let first = e[0] as i64;
    let step = if e.len() >= 2 { e[1] as i64 - first } else { 1 };
    if e.windows(2).any(|w| w[1] as i64 - w[0] as i64 != step) {
        return Err(Error::NotApplicable(format!(
            "{alpha} is not an arithmetic progression"
        )));
    }
    let next = step * ell + first;
    let value = BigRational::new(BigInt::from(first), BigInt::from(next))
        * BigRational::from_integer(binomial(next, ell));
    if !value.is_integer() {
        return Err(Error::Nondegeneracy(format!(
            "arithmetic-progression dimension for {alpha} is not integral: {value}"
        )));
    }
    Ok(value.to_integer())
}

/// Parameters of C_α(2,m) for α = (m-h-1, m) in the ℓ = 2 closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChenParameters {
    pub n: BigInt,
    pub k: BigInt,
    pub d: BigInt,
}

pub fn chen_parameters(m: u64, h: u64, q: u64) -> Result<ChenParameters> {
    let qb = big_q(q)?;
    if m < 3 || h > m - 3 {
        return Err(Error::Range(format!(
            "need m >= 3 and 0 <= h <= m - 3, got m = {m}, h = {h}"
        )));
    }
    let full =
        (big_pow(&qb, m) - 1) * (big_pow(&qb, m - 1) - 1) / ((big_pow(&qb, 2) - 1) * (&qb - 1));
    let mut correction = BigInt::zero();
    for j in 1..=h {
        for i in 1..=j {
            correction += big_pow(&qb, 2 * m - j - 2 - i);
        }
    }
    Ok(ChenParameters {
        n: full - correction,
        k: BigInt::from(m * (m - 1) / 2 - h * (h + 1) / 2),
        d: big_pow(&qb, 2 * m - h - 4),
    })
}

/// q^{α_1} (q^{α_2} - q^{α_1}) ... (q^{α_ℓ} - q^{α_{ℓ-1}}) / q^{1+2+...+ℓ}.
///
/// A rational number in general; integral once α is large enough.
pub fn gv_lower_bound(alpha: &IndexTuple, q: u64) -> Result<BigRational> {
    let qb = big_q(q)?;
    let e = alpha.entries();
    let mut num = big_pow(&qb, e[0] as u64);
    for w in e.windows(2) {
        num *= big_pow(&qb, w[1] as u64) - big_pow(&qb, w[0] as u64);
    }
    let ell = e.len() as u64;
    Ok(BigRational::new(num, big_pow(&qb, ell * (ell + 1) / 2)))
}

/// q^{δ_α - ℓ}, the weaker lower bound, as a rational.
pub fn gv_weak_lower_bound(alpha: &IndexTuple, q: u64) -> Result<BigRational> {
    let qb = big_q(q)?;
    let (delta, ell) = (alpha.delta() as u64, alpha.ell() as u64);
    Ok(if delta >= ell {
        BigRational::from_integer(big_pow(&qb, delta - ell))
    } else {
        BigRational::new(BigInt::one(), big_pow(&qb, ell - delta))
    })
}

/// q^{δ_α}, the upper bound on the minimum distance.
pub fn mdc_upper_bound(alpha: &IndexTuple, q: u64) -> Result<BigInt> {
    Ok(big_pow(&big_q(q)?, alpha.delta() as u64))
}

fn check_divisor(ell: u64, m: u64) -> Result<()> {
    if !(1 < ell && ell < m) {
        return Err(Error::Range(format!(
            "need 1 < ℓ < m, got ℓ = {ell}, m = {m}"
        )));
    }
    Ok(())
}

/// d_r(C_η) = q^{δ-1} + ... + q^{δ-r} for 1 <= r <= max(ℓ, m-ℓ).
pub fn divisor_higher_weight(ell: u64, m: u64, q: u64, r: u64) -> Result<BigInt> {
    let qb = big_q(q)?;
    check_divisor(ell, m)?;
    let max = ell.max(m - ell);
    if r == 0 || r > max {
        return Err(Error::Range(format!("r must lie in 1..={max}, got {r}")));
    }
    let delta = ell * (m - ell);
    Ok((1..=r).map(|i| big_pow(&qb, delta - i)).sum())
}

/// Grassmann code parameters `(n, k, d, d_r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannReference {
    pub n: BigInt,
    pub k: BigInt,
    pub d: BigInt,
    pub d_r: BigInt,
}

pub fn grassmann_reference(ell: u64, m: u64, q: u64, r: u64) -> Result<GrassmannReference> {
    let qb = big_q(q)?;
    if ell == 0 || ell > m {
        return Err(Error::Range(format!(
            "need 1 <= ℓ <= m, got ℓ = {ell}, m = {m}"
        )));
    }
    let delta = ell * (m - ell);
    let k = binomial(m as i64, ell as i64);
    let max = (ell.max(m - ell) + 1).min(delta + 1);
    if r == 0 || r > max {
        return Err(Error::Range(format!("r must lie in 1..={max}, got {r}")));
    }
    Ok(GrassmannReference {
        n: gaussian_binomial_unchecked(m as i64, ell as i64, &qb),
        k,
        d: big_pow(&qb, delta),
        d_r: (0..r).map(|i| big_pow(&qb, delta - i)).sum(),
    })
}

/// n_η = [m ℓ]_q - q^{ℓ(m-ℓ)}.
pub fn schubert_divisor_length(ell: u64, m: u64, q: u64) -> Result<BigInt> {
    let qb = big_q(q)?;
    check_divisor(ell, m)?;
    Ok(gaussian_binomial_unchecked(m as i64, ell as i64, &qb) - big_pow(&qb, ell * (m - ell)))
}

/// Every length and dimension formula for one α and q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterBundle {
    pub alpha: IndexTuple,
    pub q: u64,
    pub delta: usize,
    pub n_cells: BigInt,
    pub n_nested: BigInt,
    pub n_gv: BigInt,
    pub k_determinant: BigInt,
    pub k_limit: BigInt,
    pub k_downset: BigInt,
    /// `None` when α is not an arithmetic progression.
    pub k_arith: Option<BigInt>,
    pub lower_bound: BigRational,
    pub upper_bound: BigInt,
}

impl ParameterBundle {
    pub fn compute(alpha: &IndexTuple, q: u64) -> Result<Self> {
        let k_arith = match dimension_arith_progression(alpha) {
            Ok(k) => Some(k),
            Err(Error::NotApplicable(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            alpha: alpha.clone(),
            q,
            delta: alpha.delta(),
            n_cells: length_via_cells(alpha, q)?,
            n_nested: length_via_nested_sums(alpha, q)?,
            n_gv: length_via_gv(alpha, q)?,
            k_determinant: dimension_via_determinant(alpha),
            k_limit: dimension_via_limit_sums(alpha),
            k_downset: BigInt::from(alpha.enumerate_downset().len()),
            k_arith,
            lower_bound: gv_lower_bound(alpha, q)?,
            upper_bound: mdc_upper_bound(alpha, q)?,
        })
    }

    pub fn lengths_agree(&self) -> bool {
        self.n_cells == self.n_nested && self.n_cells == self.n_gv
    }

    pub fn dimensions_agree(&self) -> bool {
        self.k_determinant == self.k_limit
            && self.k_determinant == self.k_downset
            && self
                .k_arith
                .as_ref()
                .is_none_or(|k| *k == self.k_determinant)
    }

    pub fn bounds_ordered(&self) -> bool {
        self.lower_bound <= BigRational::from_integer(self.upper_bound.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        ParameterJson::from(self).to_value()
    }
}

#[derive(Serialize)]
struct ParameterJson {
    alpha: String,
    ell: usize,
    m: usize,
    q: u64,
    delta: usize,
    n: serde_json::Value,
    k: serde_json::Value,
    bounds: [serde_json::Value; 2],
    lengths_agree: bool,
    dimensions_agree: bool,
}

impl ParameterJson {
    fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// An exact integer as a JSON number.
pub(crate) fn json_int(v: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(
        v.to_string()
            .parse()
            .expect("integers are valid JSON numbers"),
    )
}

/// Exact rationals print as integers when integral, else as "num/den".
pub(crate) fn json_rational(v: &BigRational) -> serde_json::Value {
    if v.is_integer() {
        json_int(&v.to_integer())
    } else {
        serde_json::Value::String(v.to_string())
    }
}

impl From<&ParameterBundle> for ParameterJson {
    fn from(b: &ParameterBundle) -> Self {
        Self {
            alpha: b.alpha.to_string(),
            ell: b.alpha.ell(),
            m: b.alpha.m(),
            q: b.q,
            delta: b.delta,
            n: serde_json::json!({
                "cells": json_int(&b.n_cells),
                "nested_sums": json_int(&b.n_nested),
                "gv": json_int(&b.n_gv),
            }),
            k: serde_json::json!({
                "determinant": json_int(&b.k_determinant),
                "limit_sums": json_int(&b.k_limit),
                "downset": json_int(&b.k_downset),
                "arith_progression": b.k_arith.as_ref().map(json_int),
            }),
            bounds: [json_rational(&b.lower_bound), json_int(&b.upper_bound)],
            lengths_agree: b.lengths_agree(),
            dimensions_agree: b.dimensions_agree(),
        }
    }
}
