//! Graded polynomial ring in the flow variables `t1, t2, ...` with
//! `deg t_j = j`, over exact rationals.
//!
//! Every polynomial carries a truncation degree `D`; products drop monomials
//! of weighted degree above `D`. Constants built by `zero()`/`one()` are
//! degree-agnostic and adopt the truncation of whatever they are combined
//! with, but combining two polynomials of different explicit truncations is
//! an error, never a silent coercion.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rat::{format_rat, parse_rat, rat, Rat};
use crate::Error;

/// Sentinel truncation for degree-agnostic constants.
pub const TRUNC_ANY: u32 = u32::MAX;

/// Exponent multi-index; `exps[i]` is the power of `t_(i+1)`. Trailing zeros
/// are stripped so the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono {
    exps: Vec<u32>,
}

impl Mono {
    pub fn unit() -> Self {
        Mono { exps: Vec::new() }
    }

    pub fn from_exps(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Mono { exps }
    }

    pub fn var(j: u32) -> Self {
        assert!(j >= 1, "flow variables are t1, t2, ...");
        let mut exps = vec![0; j as usize];
        exps[j as usize - 1] = 1;
        Mono { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Weighted degree `sum j * e_j`.
    pub fn degree(&self) -> u32 {
        self.exps.iter().zip(1u32..).map(|(&e, j)| j * e).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let n = self.exps.len().max(other.exps.len());
        let exps = (0..n)
            .map(|i| {
                self.exps.get(i).copied().unwrap_or(0) + other.exps.get(i).copied().unwrap_or(0)
            })
            .collect();
        Mono::from_exps(exps)
    }

    /// True when only odd-index variables occur.
    pub fn is_odd_support(&self) -> bool {
        self.exps.iter().zip(1u32..).all(|(&e, j)| e == 0 || j % 2 == 1)
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    /// Graded lexicographic with `t1 > t2 > ...`: weighted degree first, then
    /// reversed lex on exponent vectors, so `t1^2` sorts before `t2`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.exps.cmp(&self.exps))
    }
}

/// Sparse polynomial in flow variables with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPoly {
    terms: BTreeMap<Mono, Rat>,
    trunc: u32,
}

fn join_trunc(a: u32, b: u32) -> Result<u32, Error> {
    match (a, b) {
        (TRUNC_ANY, t) | (t, TRUNC_ANY) => Ok(t),
        (s, t) if s == t => Ok(s),
        (s, t) => Err(Error::TruncationMismatch(s, t)),
    }
}

impl GradedPoly {
    pub fn zero_at(trunc: u32) -> Self {
        GradedPoly { terms: BTreeMap::new(), trunc }
    }

    pub fn constant(c: Rat, trunc: u32) -> Self {
        let mut p = GradedPoly::zero_at(trunc);
        if !c.is_zero() {
            p.terms.insert(Mono::unit(), c);
        }
        p
    }

    /// The variable `t_j`, or zero when `j > trunc`.
    pub fn var(j: u32, trunc: u32) -> Self {
        let mut p = GradedPoly::zero_at(trunc);
        if trunc == TRUNC_ANY || j <= trunc {
            p.terms.insert(Mono::var(j), Rat::one());
        }
        p
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Degree of the highest nonzero monomial, or None for the zero polynomial.
    pub fn top_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Mono::degree)
    }

    /// The homogeneous component of weighted degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> GradedPoly {
        let terms =
            self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone()));
        GradedPoly { terms: terms.collect(), trunc: self.trunc }
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    fn insert_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() || (self.trunc != TRUNC_ANY && m.degree() > self.trunc) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &GradedPoly) -> Result<GradedPoly, Error> {
        let trunc = join_trunc(self.trunc, other.trunc)?;
        let mut out = GradedPoly { terms: self.terms.clone(), trunc };
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &GradedPoly) -> Result<GradedPoly, Error> {
        let trunc = join_trunc(self.trunc, other.trunc)?;
        let mut out = GradedPoly::zero_at(trunc);
        for (m1, c1) in &self.terms {
            if trunc != TRUNC_ANY && m1.degree() > trunc {
                continue;
            }
            for (m2, c2) in &other.terms {
                let m = m1.mul(m2);
                if trunc != TRUNC_ANY && m.degree() > trunc {
                    continue;
                }
                out.insert_term(m, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero_at(self.trunc);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        GradedPoly { terms, trunc: self.trunc }
    }

    pub fn pow(&self, k: u32) -> GradedPoly {
        let mut acc = GradedPoly::constant(Rat::one(), self.trunc);
        for _ in 0..k {
            acc = acc.checked_mul(self).expect("same truncation");
        }
        acc
    }

    /// Substitutes `t_(2k) = 0`.
    pub fn restrict_odd(&self) -> GradedPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.is_odd_support())
            .map(|(m, c)| (m.clone(), c.clone()));
        GradedPoly { terms: terms.collect(), trunc: self.trunc }
    }

    /// Evaluates at the normalized power sums `t_i = (1/i) sum_j x_j^i`.
    pub fn eval_power_sums(&self, x: &[Rat]) -> Rat {
        let vals = |i: u32| -> Rat {
            let s: Rat = x.iter().map(|xj| pow_rat(xj, i)).sum();
            s / rat(i as i64)
        };
        self.eval_at(&vals)
    }

    /// Evaluates at `t_(2i-1) = (2/(2i-1)) sum_j y_j^(2i-1)`, `t_(2i) = 0`.
    pub fn eval_supersymmetric(&self, y: &[Rat]) -> Result<Rat, Error> {
        if self.terms.keys().any(|m| !m.is_odd_support()) {
            return Err(Error::EvenSupport);
        }
        let vals = |i: u32| -> Rat {
            if i % 2 == 0 {
                Rat::zero()
            } else {
                let s: Rat = y.iter().map(|yj| pow_rat(yj, i)).sum();
                rat(2) * s / rat(i as i64)
            }
        };
        Ok(self.eval_at(&vals))
    }

    fn eval_at(&self, value: &dyn Fn(u32) -> Rat) -> Rat {
        let mut acc = Rat::zero();
        let mut cache: BTreeMap<u32, Rat> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = i as u32 + 1;
                let v = cache.entry(j).or_insert_with(|| value(j)).clone();
                term *= pow_rat(&v, e);
            }
            acc += term;
        }
        acc
    }

    /// Evaluates at the point `t_j = v_j` (zero off the support of `v`).
    pub fn eval_flow(&self, v: &FlowVector) -> Rat {
        self.eval_at(&|j| v.get(j).cloned().unwrap_or_else(Rat::zero))
    }

    /// Substitutes `t_j -> t_j + shift_j` and re-truncates.
    pub fn flow_add(&self, shift: &FlowVector) -> GradedPoly {
        let mut out = GradedPoly::zero_at(self.trunc);
        for (m, c) in &self.terms {
            let mut factor = GradedPoly::constant(c.clone(), self.trunc);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = i as u32 + 1;
                let mut base = GradedPoly::var(j, self.trunc);
                if let Some(s) = shift.get(j) {
                    base = base
                        .checked_add(&GradedPoly::constant(s.clone(), self.trunc))
                        .expect("same truncation");
                }
                factor = factor.checked_mul(&base.pow(e)).expect("same truncation");
            }
            out = out.checked_add(&factor).expect("same truncation");
        }
        out
    }

    /// Canonical text form, e.g. `1/3 t1^3 - t3`; graded-lex term order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mut pieces: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_unit() {
                pieces.push(format_rat(&mag));
            }
            for (idx, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let j = idx + 1;
                if e == 1 {
                    pieces.push(format!("t{j}"));
                } else {
                    pieces.push(format!("t{j}^{e}"));
                }
            }
            out.push_str(&pieces.join(" "));
        }
        out
    }
}

fn pow_rat(x: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl Zero for GradedPoly {
    fn zero() -> Self {
        GradedPoly::zero_at(TRUNC_ANY)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for GradedPoly {
    fn one() -> Self {
        GradedPoly::constant(Rat::one(), TRUNC_ANY)
    }
}

impl Add for GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: GradedPoly) -> GradedPoly {
        self.checked_add(&rhs).expect("truncation mismatch")
    }
}

impl<'a> Add<&'a GradedPoly> for GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_add(rhs).expect("truncation mismatch")
    }
}

impl AddAssign<&GradedPoly> for GradedPoly {
    fn add_assign(&mut self, rhs: &GradedPoly) {
        *self = self.checked_add(rhs).expect("truncation mismatch");
    }
}

impl Sub for GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: GradedPoly) -> GradedPoly {
        self.checked_add(&rhs.neg()).expect("truncation mismatch")
    }
}

impl<'a> Sub<&'a GradedPoly> for GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_add(&rhs.clone().neg()).expect("truncation mismatch")
    }
}

impl SubAssign<&GradedPoly> for GradedPoly {
    fn sub_assign(&mut self, rhs: &GradedPoly) {
        *self = self.checked_add(&rhs.clone().neg()).expect("truncation mismatch");
    }
}

impl Mul for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: GradedPoly) -> GradedPoly {
        self.checked_mul(&rhs).expect("truncation mismatch")
    }
}

impl<'a> Mul<&'a GradedPoly> for GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_mul(rhs).expect("truncation mismatch")
    }
}

impl MulAssign<&GradedPoly> for GradedPoly {
    fn mul_assign(&mut self, rhs: &GradedPoly) {
        *self = self.checked_mul(rhs).expect("truncation mismatch");
    }
}

impl Neg for GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        let terms = self.terms.into_iter().map(|(m, c)| (m, -c)).collect();
        GradedPoly { terms, trunc: self.trunc }
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coef: String,
    exps: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct JsonPoly {
    trunc: Option<u32>,
    terms: Vec<JsonTerm>,
}

impl Serialize for GradedPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| JsonTerm { coef: format_rat(c), exps: m.exps().to_vec() })
            .collect();
        let trunc = if self.trunc == TRUNC_ANY { None } else { Some(self.trunc) };
        JsonPoly { trunc, terms }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GradedPoly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = JsonPoly::deserialize(de)?;
        let mut out = GradedPoly::zero_at(raw.trunc.unwrap_or(TRUNC_ANY));
        for t in raw.terms {
            let c = parse_rat(&t.coef).map_err(serde::de::Error::custom)?;
            out.insert_term(Mono::from_exps(t.exps), c);
        }
        Ok(out)
    }
}

/// Finitely-supported rational assignment `j -> t_j`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FlowVector {
    values: BTreeMap<u32, Rat>,
}

impl FlowVector {
    pub fn new() -> Self {
        FlowVector::default()
    }

    pub fn set(&mut self, j: u32, v: Rat) {
        assert!(j >= 1, "flow variables are t1, t2, ...");
        if v.is_zero() {
            self.values.remove(&j);
        } else {
            self.values.insert(j, v);
        }
    }

    pub fn get(&self, j: u32) -> Option<&Rat> {
        self.values.get(&j)
    }

    pub fn support(&self) -> impl Iterator<Item = (&u32, &Rat)> {
        self.values.iter()
    }

    /// `t0 = (1, 0, 0, ...)`: the single-variable power-sum point `x = (1)`.
    pub fn t0() -> Self {
        let mut v = FlowVector::new();
        v.set(1, Rat::one());
        v
    }

    /// Normalized power sums of the points `x`: `t_j = (1/j) sum x_i^j`, up to `j <= d`.
    pub fn power_sums(x: &[Rat], d: u32) -> Self {
        let mut v = FlowVector::new();
        for j in 1..=d {
            let s: Rat = x.iter().map(|xi| pow_rat(xi, j)).sum();
            v.set(j, s / rat(j as i64));
        }
        v
    }
}

/// `h_0..h_D` with `sum_k h_k z^k = exp(sum_j t_j z^j)`.
pub fn h_series(d: u32) -> Vec<GradedPoly> {
    series_from_vars(d, false)
}

/// `q_0..q_D` with `sum_k q_k z^k = exp(sum_{j odd} t_j z^j)`.
pub fn q_series(d: u32) -> Vec<GradedPoly> {
    series_from_vars(d, true)
}

fn series_from_vars(d: u32, odd_only: bool) -> Vec<GradedPoly> {
    // Newton recurrence k*h_k = sum_{j=1..k} j*t_j*h_{k-j}.
    let mut out = vec![GradedPoly::constant(Rat::one(), d)];
    for k in 1..=d {
        let mut acc = GradedPoly::zero_at(d);
        for j in 1..=k {
            if odd_only && j % 2 == 0 {
                continue;
            }
            let tj = GradedPoly::var(j, d).scale(&rat(j as i64));
            acc += &tj.checked_mul(&out[(k - j) as usize]).expect("same truncation");
        }
        out.push(acc.scale(&rat(k as i64).recip()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn var(j: u32) -> GradedPoly {
        GradedPoly::var(j, 12)
    }

    #[test]
    fn h_series_low_orders() {
        let h = h_series(4);
        assert_eq!(h[0], GradedPoly::constant(rat(1), 4));
        assert_eq!(h[1].to_text(), "t1");
        assert_eq!(h[2].to_text(), "1/2 t1^2 + t2");
        assert_eq!(h[3].to_text(), "1/6 t1^3 + t1 t2 + t3");
        for (k, hk) in h.iter().enumerate() {
            assert!(hk.is_homogeneous(k as u32));
        }
    }

    #[test]
    fn q_series_low_orders() {
        let q = q_series(4);
        assert_eq!(q[1].to_text(), "t1");
        assert_eq!(q[2].to_text(), "1/2 t1^2");
        assert_eq!(q[3].to_text(), "1/6 t1^3 + t3");
    }

    #[test]
    fn q_series_is_odd_restricted_h_series() {
        let h = h_series(9);
        let q = q_series(9);
        for k in 0..=9 {
            assert_eq!(h[k].restrict_odd(), q[k]);
        }
    }

    #[test]
    fn newton_identity() {
        let d = 8;
        let h = h_series(d);
        for k in 1..=d {
            let lhs = h[k as usize].scale(&rat(k as i64));
            let mut rhs = GradedPoly::zero_at(d);
            for j in 1..=k {
                let tj = GradedPoly::var(j, d).scale(&rat(j as i64));
                rhs += &tj.checked_mul(&h[(k - j) as usize]).unwrap();
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn restrict_odd_examples() {
        assert_eq!(var(2).restrict_odd(), GradedPoly::zero_at(12));
        let p = var(1).pow(2) + &var(2);
        assert_eq!(p.restrict_odd(), var(1).pow(2));
        let h = h_series(12);
        assert_eq!(h[2].restrict_odd().to_text(), "1/2 t1^2");
    }

    #[test]
    fn eval_power_sums_examples() {
        assert_eq!(var(1).eval_power_sums(&[rat(1), rat(1)]), rat(2));
        let h = h_series(12);
        assert_eq!(h[2].eval_power_sums(&[rat(1)]), rat(1));
        assert_eq!(GradedPoly::constant(rat(1), 12).eval_power_sums(&[rat(7)]), rat(1));
    }

    #[test]
    fn eval_supersymmetric_examples() {
        assert_eq!(var(1).eval_supersymmetric(&[rat(1)]).unwrap(), rat(2));
        assert_eq!(var(3).eval_supersymmetric(&[rat(1)]).unwrap(), ratio(2, 3));
        assert_eq!(var(1).pow(2).eval_supersymmetric(&[rat(1), rat(1)]).unwrap(), rat(16));
        assert!(var(2).eval_supersymmetric(&[rat(1)]).is_err());
    }

    #[test]
    fn flow_add_examples() {
        let mut shift = FlowVector::new();
        shift.set(1, rat(1));
        assert_eq!(var(1).flow_add(&shift).to_text(), "1 + t1");
        assert_eq!(var(1).pow(2).flow_add(&shift).to_text(), "1 + 2 t1 + t1^2");
        let h = h_series(12);
        let mut s2 = FlowVector::new();
        s2.set(2, rat(5));
        assert_eq!(h[2].flow_add(&s2), h[2].clone() + GradedPoly::constant(rat(5), 12));
    }

    #[test]
    fn truncation_mismatch_is_an_error() {
        let a = GradedPoly::var(1, 4);
        let b = GradedPoly::var(1, 5);
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&b).is_err());
        assert!(a.checked_add(&GradedPoly::one()).is_ok());
    }

    #[test]
    fn truncation_drops_high_terms() {
        let p = GradedPoly::var(1, 3).pow(2) * GradedPoly::var(2, 3);
        assert!(p.is_zero());
        let q = GradedPoly::var(3, 2);
        assert!(q.is_zero());
    }

    #[test]
    fn text_and_json_round_trip() {
        let p = var(1).pow(3).scale(&ratio(1, 3)) - &var(3);
        assert_eq!(p.to_text(), "1/3 t1^3 - t3");
        let js = serde_json::to_string(&p).unwrap();
        let back: GradedPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        assert_eq!(GradedPoly::zero_at(4).to_text(), "0");
    }

    #[test]
    fn graded_lex_order() {
        let a = Mono::var(2); // degree 2
        let b = Mono::from_exps(vec![2]); // t1^2, degree 2
        let c = Mono::var(3); // degree 3
        assert!(Mono::unit() < b);
        assert!(b < a); // same degree: t1^2 before t2
        assert!(a < c);
    }
}
