//! Partitions, strict partitions, Frobenius coordinates and content products.
//!
//! Partitions label the KP lattice, strict partitions the BKP lattice; the
//! Frobenius coordinates `(alpha | beta)` tie the two together. Content
//! products over (shifted) skew Young diagrams supply the coefficients of the
//! generalized r/p-deformed families.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::rat::Rat;
use crate::Error;

/// Weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self, Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `lambda_i` with zeros beyond the length (1-based index not used; `i` is 0-based).
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.part(0) as usize;
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p as usize > j).count() as u32)
            .collect();
        Partition { parts }
    }

    pub fn contains(&self, inner: &Partition) -> bool {
        (0..inner.len()).all(|i| self.part(i) >= inner.part(i))
    }

    /// Frobenius rank: number of diagonal cells.
    pub fn frobenius_rank(&self) -> usize {
        (0..self.len()).filter(|&i| self.part(i) as usize > i).count()
    }

    /// All sub-partitions `rho` with `rho_i <= lambda_i`, ordered by weight then lex.
    pub fn sub_partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn rec(lam: &Partition, i: usize, prev: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if i == lam.len() {
                let parts: Vec<u32> = cur.iter().copied().filter(|&p| p > 0).collect();
                out.push(Partition { parts });
                return;
            }
            for v in 0..=lam.part(i).min(prev) {
                cur.push(v);
                rec(lam, i + 1, v, cur, out);
                cur.pop();
            }
        }
        rec(self, 0, u32::MAX, &mut cur, &mut out);
        out.sort_by(|a, b| (a.weight(), &a.parts).cmp(&(b.weight(), &b.parts)));
        out.dedup();
        out
    }

    /// All partitions of weight `n`, lex-descending within the weight.
    pub fn all_of_weight(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        fn rec(n: u32, maxp: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for first in (1..=n.min(maxp)).rev() {
                cur.push(first);
                rec(n - first, first, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Frobenius coordinates `(alpha | beta)`: arm and leg lengths along the diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FrobeniusCoords {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl FrobeniusCoords {
    pub fn new(alpha: Vec<u32>, beta: Vec<u32>) -> Result<Self, Error> {
        if alpha.len() != beta.len() {
            return Err(Error::BadFrobenius("alpha/beta length mismatch".into()));
        }
        if alpha.windows(2).any(|w| w[0] <= w[1]) || beta.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::BadFrobenius("indices must be strictly decreasing".into()));
        }
        Ok(FrobeniusCoords { alpha, beta })
    }

    pub fn rank(&self) -> usize {
        self.alpha.len()
    }
}

/// `to_frobenius`: `alpha_j = lambda_j - j`, `beta_j = lambda'_j - j` over the diagonal.
pub fn to_frobenius(lambda: &Partition) -> FrobeniusCoords {
    let r = lambda.frobenius_rank();
    let conj = lambda.conjugate();
    let alpha = (0..r).map(|i| lambda.part(i) - i as u32 - 1).collect();
    let beta = (0..r).map(|i| conj.part(i) - i as u32 - 1).collect();
    FrobeniusCoords { alpha, beta }
}

/// Inverse of [`to_frobenius`].
pub fn from_frobenius(fc: &FrobeniusCoords) -> Partition {
    let r = fc.rank();
    let mut rows: Vec<u32> = Vec::new();
    for i in 0..r {
        rows.push(fc.alpha[i] + i as u32 + 1);
    }
    // legs: column i (0-based) has beta_i + i + 1 cells; convert to extra rows.
    let max_leg = fc.beta.iter().zip(0..).map(|(&b, i)| b as usize + i + 1).max().unwrap_or(0);
    for row in r..max_leg {
        let cnt = (0..r).filter(|&i| fc.beta[i] as usize + i + 1 > row).count() as u32;
        rows.push(cnt);
    }
    Partition { parts: rows.into_iter().filter(|&p| p > 0).collect() }
}

/// Strictly decreasing sequence of non-negative integers, at most one zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StrictPartition {
    parts: Vec<u32>,
}

impl TryFrom<Vec<u32>> for StrictPartition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self, Error> {
        StrictPartition::new(parts)
    }
}

impl From<StrictPartition> for Vec<u32> {
    fn from(p: StrictPartition) -> Vec<u32> {
        p.parts
    }
}

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self, Error> {
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::NotStrict(format!("{parts:?}")));
        }
        Ok(StrictPartition { parts })
    }

    pub fn empty() -> Self {
        StrictPartition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Cardinality `m`, counting a zero part.
    pub fn cardinality(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn has_zero(&self) -> bool {
        self.parts.last() == Some(&0)
    }

    /// Parts with any trailing zero removed.
    pub fn positive_parts(&self) -> &[u32] {
        if self.has_zero() {
            &self.parts[..self.parts.len() - 1]
        } else {
            &self.parts
        }
    }

    pub fn contains(&self, inner: &StrictPartition) -> bool {
        inner.positive_parts().len() <= self.parts.len()
            && (0..inner.parts.len()).all(|i| self.part(i) >= inner.part(i))
    }

    /// All strict partitions of weight `n` with positive parts.
    pub fn all_of_weight(n: u32) -> Vec<StrictPartition> {
        let mut out = Vec::new();
        fn rec(n: u32, maxp: u32, cur: &mut Vec<u32>, out: &mut Vec<StrictPartition>) {
            if n == 0 {
                out.push(StrictPartition { parts: cur.clone() });
                return;
            }
            let hi = n.min(maxp);
            for first in (1..=hi).rev() {
                cur.push(first);
                rec(n - first, first.saturating_sub(1), cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `I(beta)`: the strict partition with parts `beta_j + 1`.
pub fn strictify_beta(beta: &[u32]) -> Result<StrictPartition, Error> {
    StrictPartition::new(beta.iter().map(|&b| b + 1).collect())
}

/// Supplemented partition: pad with a zero part to even cardinality.
pub fn supplement(nu: &StrictPartition) -> Result<StrictPartition, Error> {
    if nu.cardinality() % 2 == 0 {
        return Ok(nu.clone());
    }
    if nu.has_zero() {
        // The zero part is already present; a second one would collapse
        // anyway, so the label is left as-is and only the cardinality
        // bookkeeping (supplemented_cardinality) rounds up.
        return Ok(nu.clone());
    }
    let mut parts = nu.parts().to_vec();
    parts.push(0);
    StrictPartition::new(parts)
}

/// Supplemented cardinality `m(nu-hat)` without constructing the label.
pub fn supplemented_cardinality(nu: &StrictPartition) -> usize {
    let m = nu.cardinality();
    m + m % 2
}

/// The double `D(alpha)`: partition with Frobenius coordinates `(alpha | alpha - 1)`.
pub fn double(alpha: &StrictPartition) -> Result<Partition, Error> {
    if alpha.has_zero() {
        return Err(Error::ZeroPart(alpha.to_string()));
    }
    let a = alpha.parts().to_vec();
    let b: Vec<u32> = a.iter().map(|&x| x - 1).collect();
    Ok(from_frobenius(&FrobeniusCoords::new(a, b)?))
}

/// Skew shape `lambda / rho` with `rho` contained in `lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, Error> {
        if !outer.contains(&inner) {
            return Err(Error::Containment);
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn cells(&self) -> u32 {
        self.outer.weight() - self.inner.weight()
    }
}

/// Content-product parameters: a finite window of `r_j` values indexed over Z.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RParams {
    values: BTreeMap<i64, Rat>,
    b_symmetric: bool,
}

impl RParams {
    /// Checks `r_j = r_(1-j)` on the window whenever `b_symmetric` is requested.
    pub fn new(values: BTreeMap<i64, Rat>, b_symmetric: bool) -> Result<Self, Error> {
        if b_symmetric {
            for (&j, v) in &values {
                if let Some(w) = values.get(&(1 - j)) {
                    if v != w {
                        return Err(Error::NotSymmetricR(j));
                    }
                }
            }
        }
        Ok(RParams { values, b_symmetric })
    }

    /// `r_j = 1` on `[-window, window]`.
    pub fn ones(window: i64) -> Self {
        let values = (-window..=window).map(|j| (j, Rat::one())).collect();
        RParams { values, b_symmetric: true }
    }

    /// `r_j = f(j)` on `[-window, window]`.
    pub fn from_fn(window: i64, f: impl Fn(i64) -> Rat) -> Self {
        let values: BTreeMap<i64, Rat> = (-window..=window).map(|j| (j, f(j))).collect();
        let b_symmetric = values.iter().all(|(&j, v)| values.get(&(1 - j)).map_or(true, |w| w == v));
        RParams { values, b_symmetric }
    }

    pub fn is_b_symmetric(&self) -> bool {
        self.b_symmetric
    }

    pub fn get(&self, j: i64) -> Result<&Rat, Error> {
        self.values.get(&j).ok_or(Error::UndefinedR(j))
    }
}

/// `r_(lambda/rho)`: product of `r_(j-i)` over the cells of the skew diagram
/// (rows `i`, columns `j`, both 1-based).
pub fn content_product(shape: &SkewShape, r: &RParams) -> Result<Rat, Error> {
    let mut acc = Rat::one();
    for i in 0..shape.outer.len() {
        for j in shape.inner.part(i) + 1..=shape.outer.part(i) {
            acc *= r.get(j as i64 - (i as i64 + 1))?;
        }
    }
    Ok(acc)
}

/// `r^B_(mu/nu)`: product of `r_j` over the rows of the shifted skew diagram,
/// `j` running over `nu_i + 1 ..= mu_i`.
pub fn shifted_content_product(
    mu: &StrictPartition,
    nu: &StrictPartition,
    r: &RParams,
) -> Result<Rat, Error> {
    if !mu.contains(nu) {
        return Err(Error::Containment);
    }
    let mut acc = Rat::one();
    for i in 0..mu.cardinality() {
        for j in nu.part(i) + 1..=mu.part(i) {
            acc *= r.get(j as i64)?;
        }
    }
    Ok(acc)
}
