//! Finite-window free-fermion calculator: the independent brute-force oracle.
//!
//! States live on the window `[-N, N)` of integer positions, stored as
//! occupancy bitmasks (position `p` is bit `p + N`). Positions below the
//! window are treated as occupied, positions at or above it as empty; an
//! operator that would act nontrivially outside the window is either exactly
//! zero by those conventions or an error, never a silent truncation.
//!
//! Scalars are Gaussian rationals `a + b i`. Square roots of two never
//! appear: `phi` operators are applied without their `1/sqrt(2)` and callers
//! fold the tracked exponent in pairs, so every asserted value is rational.

use std::collections::HashMap;

use crate::linalg::{Ring, SkewMatrix};
use crate::partition::{to_frobenius, Partition, StrictPartition};
use crate::poly::GradedPoly;
use crate::polarization::enumerate_polarizations;
use crate::rat::{pow2, rat, Rat};
use crate::Error;

/// Gaussian rational `re + im * i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        CRat { re, im: Rat::zero() }
    }

    pub fn i() -> Self {
        CRat { re: Rat::zero(), im: Rat::one() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl Ring for CRat {
    const IS_FIELD: bool = true;
    fn zero() -> Self {
        CRat::real(Rat::zero())
    }
    fn one() -> Self {
        CRat::real(Rat::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        CRat::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn sub(&self, o: &Self) -> Self {
        CRat::new(&self.re - &o.re, &self.im - &o.im)
    }
    fn mul(&self, o: &Self) -> Self {
        CRat::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
    fn neg(&self) -> Self {
        CRat::new(-self.re.clone(), -self.im.clone())
    }
    fn div(&self, o: &Self) -> Self {
        let norm = &o.re * &o.re + &o.im * &o.im;
        CRat::new(
            (&self.re * &o.re + &self.im * &o.im) / &norm,
            (&self.im * &o.re - &self.re * &o.im) / &norm,
        )
    }
}

/// Linear combination of Maya states at a fixed window half-width `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    n: i64,
    amps: HashMap<u128, CRat>,
}

fn bit(p: i64, n: i64) -> u32 {
    (p + n) as u32
}

impl FockVector {
    pub fn zero(n: i64) -> Self {
        FockVector { n, amps: HashMap::new() }
    }

    /// Charge-`c` vacuum: occupied positions `c-1, c-2, ..., -n`.
    pub fn vacuum(n: i64, charge: i64) -> Result<Self, Error> {
        if n < 1 || charge > n || charge < -n {
            return Err(Error::WindowTooSmall(n));
        }
        let mut mask = 0u128;
        for p in -n..charge {
            mask |= 1 << bit(p, n);
        }
        let mut amps = HashMap::new();
        amps.insert(mask, CRat::one());
        Ok(FockVector { n, amps })
    }

    pub fn window(&self) -> i64 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitude(&self, mask: u128) -> CRat {
        self.amps.get(&mask).cloned().unwrap_or_else(Ring::zero)
    }

    fn insert(&mut self, mask: u128, c: CRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.amps.entry(mask) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        assert_eq!(self.n, other.n, "window mismatch");
        let mut out = self.clone();
        for (&m, c) in &other.amps {
            out.insert(m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CRat) -> FockVector {
        if c.is_zero() {
            return FockVector::zero(self.n);
        }
        FockVector {
            n: self.n,
            amps: self.amps.iter().map(|(&m, v)| (m, v.mul(c))).collect(),
        }
    }

    /// Occupancy picture over the window, most negative position first.
    pub fn maya_string(mask: u128, n: i64) -> String {
        (-n..n)
            .map(|p| if mask >> bit(p, n) & 1 == 1 { '\u{25cf}' } else { '\u{25cb}' })
            .collect()
    }
}

fn sign_above(mask: u128, j: i64, n: i64) -> CRat {
    let above = (mask >> (bit(j, n) + 1)).count_ones();
    if above % 2 == 0 {
        CRat::one()
    } else {
        CRat::one().neg()
    }
}

/// `psi_j`: exterior multiplication by `e_j`. Zero for `j < -n` (position
/// occupied below the window); error for `j >= n` (the particle would escape).
pub fn apply_psi(v: &FockVector, j: i64) -> Result<FockVector, Error> {
    let n = v.window();
    if j < -n {
        return Ok(FockVector::zero(n));
    }
    if j >= n {
        return Err(Error::IndexOutsideWindow(j, n));
    }
    let mut out = FockVector::zero(n);
    for (&mask, c) in &v.amps {
        if mask >> bit(j, n) & 1 == 1 {
            continue;
        }
        let s = sign_above(mask, j, n);
        out.insert(mask | 1 << bit(j, n), c.mul(&s));
    }
    Ok(out)
}

/// `psi-dagger_j`: interior multiplication. Zero for `j >= n` (empty above the
/// window); error for `j < -n` (would expose the filled sea).
pub fn apply_psi_dag(v: &FockVector, j: i64) -> Result<FockVector, Error> {
    let n = v.window();
    if j >= n {
        return Ok(FockVector::zero(n));
    }
    if j < -n {
        return Err(Error::IndexOutsideWindow(j, n));
    }
    let mut out = FockVector::zero(n);
    for (&mask, c) in &v.amps {
        if mask >> bit(j, n) & 1 == 0 {
            continue;
        }
        let s = sign_above(mask, j, n);
        out.insert(mask & !(1 << bit(j, n)), c.mul(&s));
    }
    Ok(out)
}

/// Sign of a neutral fermion: `Plus` for `phi+`, `Minus` for `phi-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiSign {
    Plus,
    Minus,
}

/// Neutral fermion `phi+-_j` WITHOUT its `1/sqrt(2)`; the caller folds one
/// factor of 2 per applied pair.
///
/// `phi+_j = (psi_j + (-1)^j psi-dag_(-j)) / sqrt(2)`,
/// `phi-_j = i (psi_j - (-1)^j psi-dag_(-j)) / sqrt(2)`.
pub fn apply_phi(v: &FockVector, sign: PhiSign, j: i64) -> Result<FockVector, Error> {
    let s = if j.rem_euclid(2) == 0 { CRat::one() } else { CRat::one().neg() };
    let a = apply_psi(v, j)?;
    let mut b = apply_psi_dag(v, -j)?.scale(&s);
    if sign == PhiSign::Minus {
        b = b.scale(&CRat::one().neg());
    }
    let mut w = a.add(&b);
    if sign == PhiSign::Minus {
        w = w.scale(&CRat::i());
    }
    Ok(w)
}

/// `|lambda>` at charge zero:
/// `(-1)^(sum beta_j) prod_j psi_(alpha_j) psi-dag_(-beta_j - 1) |0>`.
pub fn build_state(lambda: &Partition, n: i64) -> Result<FockVector, Error> {
    let fc = to_frobenius(lambda);
    let r = fc.rank() as i64;
    if n <= lambda.part(0) as i64 + r {
        return Err(Error::WindowTooSmall(n));
    }
    let mut v = FockVector::vacuum(n, 0)?;
    for j in (0..fc.rank()).rev() {
        v = apply_psi_dag(&v, -(fc.beta[j] as i64) - 1)?;
        v = apply_psi(&v, fc.alpha[j] as i64)?;
    }
    let sgn = crate::rat::sign_pow(fc.beta.iter().sum());
    Ok(v.scale(&CRat::real(sgn)))
}

/// Right side of the polarization lemma: the same state assembled from
/// `phi+-` monomials over all polarizations of `(alpha | I(beta))`.
pub fn polarization_state(lambda: &Partition, n: i64) -> Result<FockVector, Error> {
    let fc = to_frobenius(lambda);
    let r = fc.rank();
    let s = crate::polarization::intersection_s(&fc.alpha, &fc.beta)?.cardinality();
    let mut total = FockVector::zero(n);
    for p in enumerate_polarizations(&fc)? {
        let mut v = FockVector::vacuum(n, 0)?;
        for &x in p.mu_minus.parts().iter().rev() {
            v = apply_phi(&v, PhiSign::Minus, x as i64)?;
        }
        for &x in p.mu_plus.parts().iter().rev() {
            v = apply_phi(&v, PhiSign::Plus, x as i64)?;
        }
        // i^(m(mu_minus))
        for _ in 0..p.m_minus {
            v = v.scale(&CRat::i());
        }
        // per-term sign and the folded sqrt(2)^(-2r) from the 2r phi factors
        let coef = Rat::from_integer(p.sign.into())
            * crate::rat::sign_pow(p.pi_minus as u32)
            * pow2(-(r as i32));
        total = total.add(&v.scale(&CRat::real(coef)));
    }
    let pref = crate::rat::sign_pow((r * (r + 1) / 2 + s) as u32) * pow2(-((r - s) as i32));
    Ok(total.scale(&CRat::real(pref)))
}

/// KP current `J_j = sum_k psi_k psi-dag_(k+j)`: moves one occupied position
/// `p` down to `p - j`.
pub fn apply_j(v: &FockVector, j: i64) -> Result<FockVector, Error> {
    let n = v.window();
    let mut out = FockVector::zero(n);
    for (&mask, c) in &v.amps {
        for p in -n..n {
            if mask >> bit(p, n) & 1 == 0 {
                continue;
            }
            let k = p - j;
            if k < -n {
                continue; // target occupied below the window: term vanishes
            }
            if mask >> bit(k, n) & 1 == 1 {
                continue;
            }
            let s1 = sign_above(mask, p, n);
            let removed = mask & !(1 << bit(p, n));
            let s2 = sign_above(removed, k, n);
            out.insert(removed | 1 << bit(k, n), c.mul(&s1).mul(&s2));
        }
    }
    Ok(out)
}

/// BKP current `J^(B+-)_j = 1/2 sum_k (-1)^(k+1) phi_k phi_(-k-j)` in the
/// chosen neutral family; the `1/sqrt(2)` of each phi pair is folded in.
pub fn apply_jb(v: &FockVector, sign: PhiSign, j: i64) -> Result<FockVector, Error> {
    let n = v.window();
    let mut out = FockVector::zero(n);
    for k in -n..n {
        let partner = -k - j;
        if partner < -n || partner >= n {
            continue;
        }
        let w = apply_phi(v, sign, partner)?;
        let w = apply_phi(&w, sign, k)?;
        let c = crate::rat::sign_pow((k + 1).rem_euclid(2) as u32) * crate::rat::ratio(1, 4);
        out = out.add(&w.scale(&CRat::real(c)));
    }
    Ok(out)
}

/// Which flow exponential to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gamma {
    /// `exp(sum_(j>=1) t_j J_j)`
    Plus,
    /// `exp(sum_(j odd) t_j J^(B+)_j)`
    BPlus,
    /// `exp(sum_(j odd) t_j J^(B-)_j)`
    BMinus,
}

/// Applies the truncated flow exponential to a real FockVector, producing
/// polynomial amplitudes up to weighted degree `d`.
pub fn apply_gamma(
    v: &FockVector,
    gamma: Gamma,
    d: u32,
) -> Result<HashMap<u128, GradedPoly>, Error> {
    let n = v.window();
    let mut total: HashMap<u128, GradedPoly> = HashMap::new();
    let mut term: HashMap<u128, GradedPoly> = HashMap::new();
    for (&mask, c) in &v.amps {
        if !c.is_real() {
            return Err(Error::IrrationalScalar(1));
        }
        let p = GradedPoly::constant(c.re.clone(), d);
        total.insert(mask, p.clone());
        term.insert(mask, p);
    }
    let js: Vec<i64> = match gamma {
        Gamma::Plus => (1..=d as i64).collect(),
        Gamma::BPlus | Gamma::BMinus => (1..=d as i64).step_by(2).collect(),
    };
    let mut order = 0u32;
    while !term.is_empty() && order <= d + 1 {
        order += 1;
        let mut new: HashMap<u128, GradedPoly> = HashMap::new();
        for (&mask, poly) in &term {
            let mut basis = FockVector::zero(n);
            basis.insert(mask, CRat::one());
            for &j in &js {
                let moved = match gamma {
                    Gamma::Plus => apply_j(&basis, j)?,
                    Gamma::BPlus => apply_jb(&basis, PhiSign::Plus, j)?,
                    Gamma::BMinus => apply_jb(&basis, PhiSign::Minus, j)?,
                };
                for (&mask2, amp) in &moved.amps {
                    if !amp.is_real() {
                        return Err(Error::IrrationalScalar(1));
                    }
                    let contrib =
                        GradedPoly::var(j as u32, d).scale(&amp.re).checked_mul(poly)?;
                    if contrib.is_zero() {
                        continue;
                    }
                    new.entry(mask2)
                        .and_modify(|p| *p += &contrib)
                        .or_insert(contrib);
                }
            }
        }
        let inv = rat(order as i64).recip();
        term = new
            .into_iter()
            .filter_map(|(m, p)| {
                let p = p.scale(&inv);
                if p.is_zero() {
                    None
                } else {
                    Some((m, p))
                }
            })
            .collect();
        for (m, p) in &term {
            total.entry(*m).and_modify(|q| *q += p).or_insert_with(|| p.clone());
        }
    }
    Ok(total)
}

/// `<0| gamma |v>` truncated at degree `d`: the vacuum amplitude of
/// [`apply_gamma`].
pub fn gamma_vev(v: &FockVector, gamma: Gamma, d: u32) -> Result<GradedPoly, Error> {
    let n = v.window();
    let vac_mask = {
        let mut mask = 0u128;
        for p in -n..0 {
            mask |= 1 << bit(p, n);
        }
        mask
    };
    let total = apply_gamma(v, gamma, d)?;
    Ok(total.get(&vac_mask).cloned().unwrap_or_else(|| GradedPoly::zero_at(d)))
}

/// Window half-width for a state of top part `max_part`, Frobenius rank `r`
/// and flow degree `d`.
pub fn window_for(max_part: u32, r: usize, d: u32) -> i64 {
    max_part as i64 + r as i64 + d as i64 + 2
}

/// `<0| gamma-hat_+(t) |lambda>`: must equal `schur(lambda)`.
pub fn schur_oracle(lambda: &Partition, d: u32) -> Result<GradedPoly, Error> {
    let n = window_for(lambda.part(0), to_frobenius(lambda).rank(), d);
    gamma_vev(&build_state(lambda, n)?, Gamma::Plus, d)
}

/// `<0| gamma-hat^(B+)(t_B) |mu-hat)`: equals `2^(-m/2) qschur(mu)` where `m`
/// is the supplemented cardinality. The 2-power is returned separately as
/// `(poly, half_exponent)` with value `poly` and the constant `2^(-m/2)`
/// folded in already (m is even, so it is rational).
pub fn qschur_oracle(mu: &StrictPartition, d: u32) -> Result<GradedPoly, Error> {
    let m = crate::partition::supplemented_cardinality(mu);
    let mut parts: Vec<u32> = mu.positive_parts().to_vec();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    let n = window_for(mu.part(0), parts.len(), d);
    let mut v = FockVector::vacuum(n, 0)?;
    for &x in parts.iter().rev() {
        v = apply_phi(&v, PhiSign::Plus, x as i64)?;
    }
    // fold sqrt(2)^(-m) = 2^(-m/2)
    v = v.scale(&CRat::real(pow2(-((m / 2) as i32))));
    gamma_vev(&v, Gamma::BPlus, d)
}

/// One linear fermionic generator for [`wick_vev`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FermiOp {
    Psi(i64),
    PsiDag(i64),
    Phi(PhiSign, i64),
}

fn contraction(a: &FermiOp, b: &FermiOp) -> Result<CRat, Error> {
    use FermiOp::*;
    let phi_mixed = matches!(
        (a, b),
        (Phi(..), Psi(_)) | (Phi(..), PsiDag(_)) | (Psi(_), Phi(..)) | (PsiDag(_), Phi(..))
    );
    if phi_mixed {
        // a single phi against a charged fermion carries a bare 1/sqrt(2)
        return Err(Error::IrrationalScalar(1));
    }
    Ok(match (a, b) {
        (Psi(j), PsiDag(k)) if j == k && *j < 0 => CRat::one(),
        (PsiDag(j), Psi(k)) if j == k && *j >= 0 => CRat::one(),
        (Phi(s1, j), Phi(s2, k)) => {
            if s1 == s2 {
                if j + k == 0 && *j <= 0 {
                    let base = if *j == 0 { crate::rat::ratio(1, 2) } else { Rat::one() };
                    CRat::real(crate::rat::sign_pow(j.rem_euclid(2) as u32) * base)
                } else {
                    Ring::zero()
                }
            } else if *j == 0 && *k == 0 {
                // <phi+_0 phi-_0> = i/2; the reverse order is -i/2
                let half_i = CRat::new(Rat::zero(), crate::rat::ratio(1, 2));
                if *s1 == PhiSign::Plus {
                    half_i
                } else {
                    half_i.neg()
                }
            } else {
                Ring::zero()
            }
        }
        _ => Ring::zero(),
    })
}

/// Vacuum expectation of an ordered product of linear generators, as the
/// Pfaffian of the two-point contraction matrix. Odd counts give zero.
/// Products mixing `phi` with `psi`/`psi-dag` are rejected: a lone `phi`
/// carries an un-paired `sqrt(2)`.
pub fn wick_vev(ops: &[FermiOp]) -> Result<CRat, Error> {
    if ops.len() % 2 == 1 {
        return Ok(Ring::zero());
    }
    let has_phi = ops.iter().any(|o| matches!(o, FermiOp::Phi(..)));
    let has_charged = ops.iter().any(|o| !matches!(o, FermiOp::Phi(..)));
    if has_phi && has_charged {
        return Err(Error::IrrationalScalar(1));
    }
    let mut entries: Vec<Vec<CRat>> = vec![vec![Ring::zero(); ops.len()]; ops.len()];
    for a in 0..ops.len() {
        for b in a + 1..ops.len() {
            entries[a][b] = contraction(&ops[a], &ops[b])?;
        }
    }
    let m = SkewMatrix::from_upper(ops.len(), |i, j| entries[i][j].clone());
    Ok(m.pfaffian().value)
}

/// Direct-application VEV of the same product: apply right-to-left to the
/// vacuum and read off the vacuum amplitude, folding `2^(-#phi/2)`.
pub fn direct_vev(ops: &[FermiOp], n: i64) -> Result<CRat, Error> {
    let mut v = FockVector::vacuum(n, 0)?;
    let mut phis = 0i32;
    for op in ops.iter().rev() {
        v = match op {
            FermiOp::Psi(j) => apply_psi(&v, *j)?,
            FermiOp::PsiDag(j) => apply_psi_dag(&v, *j)?,
            FermiOp::Phi(s, j) => {
                phis += 1;
                apply_phi(&v, *s, *j)?
            }
        };
    }
    if phis % 2 == 1 {
        return Err(Error::IrrationalScalar(phis));
    }
    let vac = FockVector::vacuum(n, 0)?;
    let (&vac_mask, _) = vac.amps.iter().next().expect("vacuum nonempty");
    Ok(v.amplitude(vac_mask).mul(&CRat::real(pow2(-(phis / 2)))))
}
