//! Identity verifiers: every bilinear statement is checked as an exact
//! zero-residual equation in rational polynomial arithmetic, with
//! machine-readable reports.

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::linalg::SkewMatrix;
use crate::partition::{
    double, supplement, to_frobenius, FrobeniusCoords, Partition, RParams, StrictPartition,
};
use crate::poly::{FlowVector, GradedPoly};
use crate::polarization::{
    enumerate_polarizations, enumerate_polarizations_of, intersection_s, polarization_coefficient,
};
use crate::qschur::{gen_q_rp, qschur};
use crate::rat::{format_rat, pow2, rat, ratio, sign_pow, Rat};
use crate::schur::{gen_schur_rp, laguerre, schur};
use crate::Error;

/// One term of the bilinear expansion of a Schur function in products of
/// pairs of Q-functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub coefficient: Rat,
    pub mu_plus_hat: StrictPartition,
    pub mu_minus_hat: StrictPartition,
}

impl Serialize for ExpansionTerm {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("ExpansionTerm", 3)?;
        st.serialize_field("coefficient", &format_rat(&self.coefficient))?;
        st.serialize_field("mu_plus_hat", &self.mu_plus_hat)?;
        st.serialize_field("mu_minus_hat", &self.mu_minus_hat)?;
        st.end()
    }
}

/// Outcome of one identity check; `pass` holds exactly when the residual is
/// the zero polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub pass: bool,
    pub millis: u128,
}

fn report(
    identity: &str,
    instance: String,
    lhs: &GradedPoly,
    rhs: &GradedPoly,
    start: Instant,
) -> VerificationReport {
    let residual = lhs.clone() - rhs;
    VerificationReport {
        identity: identity.to_string(),
        instance,
        lhs: lhs.to_text(),
        rhs: rhs.to_text(),
        residual: residual.to_text(),
        pass: residual.is_zero(),
        millis: start.elapsed().as_millis(),
    }
}

/// Verifier switches: `corrupt` flips one expansion coefficient (negative
/// control), `oracle` cross-checks polynomials against the Fock oracle.
#[derive(Debug, Clone, Copy, Default)]
pub struct LabOptions {
    pub corrupt: bool,
    pub oracle: bool,
}

/// Expansion terms of `s_lambda(t')` over the polarizations of its Frobenius
/// data, with supplemented labels. `corrupt` negates the first coefficient.
pub fn expand_bilinear(fc: &FrobeniusCoords, corrupt: bool) -> Result<Vec<ExpansionTerm>, Error> {
    let r = fc.rank();
    let s = intersection_s(&fc.alpha, &fc.beta)?.cardinality();
    let mut out = Vec::new();
    for p in enumerate_polarizations(fc)? {
        let mut coefficient = polarization_coefficient(&p, r, s);
        if corrupt && out.is_empty() {
            coefficient = -coefficient;
        }
        out.push(ExpansionTerm {
            coefficient,
            mu_plus_hat: supplement(&p.mu_plus)?,
            mu_minus_hat: supplement(&p.mu_minus)?,
        });
    }
    Ok(out)
}

fn oracle_check_schur(lambda: &Partition, expect: &GradedPoly) -> Result<bool, Error> {
    let got = crate::fock::schur_oracle(lambda, lambda.weight())?;
    Ok(&got == expect)
}

/// `restrict_odd(schur(lambda)) = sum coeff * qschur(mu+) * qschur(mu-)`.
pub fn verify_schur_q(lambda: &Partition, opts: &LabOptions) -> Result<VerificationReport, Error> {
    let start = Instant::now();
    let d = lambda.weight();
    let fc = to_frobenius(lambda);
    let full = schur(lambda, d)?;
    let lhs = full.restrict_odd();
    let mut rhs = GradedPoly::zero_at(d);
    for term in expand_bilinear(&fc, opts.corrupt)? {
        let qp = qschur(&term.mu_plus_hat, d)?;
        let qm = qschur(&term.mu_minus_hat, d)?;
        rhs += &(qp * qm).scale(&term.coefficient);
    }
    let mut rep = report("schur-q", format!("lambda={lambda}"), &lhs, &rhs, start);
    if opts.oracle && rep.pass {
        rep.pass = oracle_check_schur(lambda, &full)?;
        if !rep.pass {
            rep.residual = "oracle mismatch".into();
        }
    }
    Ok(rep)
}

/// Determinant/Pfaffian minor identity on a skew matrix:
/// `det(A_(I|J))` against the polarization sum of products of principal
/// Pfaffians, odd-cardinality terms dropped. `I`, `J` strictly increasing.
pub fn verify_det_pfaffian(
    a: &SkewMatrix<Rat>,
    i_rows: &[usize],
    j_cols: &[usize],
) -> Result<VerificationReport, Error> {
    let start = Instant::now();
    if i_rows.len() != j_cols.len() {
        return Err(Error::BadMinor);
    }
    let r = i_rows.len();
    let lhs_val = a.matrix().submatrix(i_rows, j_cols)?.det()?;

    let mut i_dec: Vec<u32> = i_rows.iter().map(|&x| x as u32).collect();
    let mut j_dec: Vec<u32> = j_cols.iter().map(|&x| x as u32).collect();
    i_dec.sort_unstable_by(|x, y| y.cmp(x));
    j_dec.sort_unstable_by(|x, y| y.cmp(x));
    let s = i_dec.iter().filter(|x| j_dec.contains(x)).count();

    let mut acc = Rat::zero();
    for p in enumerate_polarizations_of(&i_dec, &j_dec)? {
        if p.m_plus % 2 == 1 || p.m_minus % 2 == 1 {
            continue;
        }
        // Pfaffians of principal minors taken in increasing index order
        let mut k_inc: Vec<usize> = p.mu_plus.parts().iter().map(|&x| x as usize).collect();
        let mut l_inc: Vec<usize> = p.mu_minus.parts().iter().map(|&x| x as usize).collect();
        k_inc.reverse();
        l_inc.reverse();
        let pf_k = a.principal(&k_inc)?.pfaffian().value;
        let pf_l = a.principal(&l_inc)?.pfaffian().value;
        let term_sign = sign_pow((p.pi_minus + p.m_minus / 2) as u32)
            * Rat::from_integer(p.sign.into());
        acc += term_sign * pf_k * pf_l;
    }
    let pref = sign_pow((r * (r + 1) / 2 + s) as u32) * pow2(-((r - s) as i32));
    let rhs_val = pref * acc;

    let lhs = GradedPoly::constant(lhs_val, crate::poly::TRUNC_ANY);
    let rhs = GradedPoly::constant(rhs_val, crate::poly::TRUNC_ANY);
    Ok(report(
        "det-pf",
        format!("n={} I={:?} J={:?}", a.dim(), i_rows, j_cols),
        &lhs,
        &rhs,
        start,
    ))
}

/// Generalized bilinear identity with content products: the r/p-deformed
/// Schur function at odd flows against deformed Q pairs.
pub fn verify_generalized(
    lambda: &Partition,
    r: &RParams,
    p_b: &FlowVector,
    opts: &LabOptions,
) -> Result<VerificationReport, Error> {
    let start = Instant::now();
    let d = lambda.weight();
    let fc = to_frobenius(lambda);
    let lhs = gen_schur_rp(lambda, r, p_b, d)?.restrict_odd();
    let mut rhs = GradedPoly::zero_at(d);
    for term in expand_bilinear(&fc, opts.corrupt)? {
        let gp = gen_q_rp(&term.mu_plus_hat, r, p_b, d)?;
        let gm = gen_q_rp(&term.mu_minus_hat, r, p_b, d)?;
        rhs += &(gp * gm).scale(&term.coefficient);
    }
    Ok(report("generalized", format!("lambda={lambda}"), &lhs, &rhs, start))
}

/// Square relation at the doubled partition:
/// `restrict_odd(schur(D(alpha))) = 2^(-r) qschur(alpha)^2`.
pub fn verify_square(
    alpha: &StrictPartition,
    opts: &LabOptions,
) -> Result<VerificationReport, Error> {
    let start = Instant::now();
    let lam = double_or_empty(alpha)?;
    let d = lam.weight();
    let r = alpha.cardinality();
    let full = schur(&lam, d)?;
    let lhs = full.restrict_odd();
    let q = qschur(alpha, d)?;
    let mut rhs = (q.clone() * q).scale(&pow2(-(r as i32)));
    if opts.corrupt {
        rhs = -rhs;
    }
    let mut rep = report("square", format!("alpha={alpha}"), &lhs, &rhs, start);
    if opts.oracle && rep.pass {
        rep.pass = oracle_check_schur(&lam, &full)?;
        if !rep.pass {
            rep.residual = "oracle mismatch".into();
        }
    }
    Ok(rep)
}

fn double_or_empty(alpha: &StrictPartition) -> Result<Partition, Error> {
    if alpha.cardinality() == 0 {
        Ok(Partition::empty())
    } else {
        double(alpha)
    }
}

/// Laguerre consistency: the explicit factorial-determinant sum equals the
/// content-product deformation with `r_j = -(z+j)(z'+j)` at `p = t0`.
pub fn verify_laguerre(
    lambda: &Partition,
    z: &Rat,
    zprime: &Rat,
) -> Result<VerificationReport, Error> {
    let start = Instant::now();
    let d = lambda.weight();
    let lhs = laguerre(lambda, z, zprime, d)?;
    let window = lambda.part(0) as i64 + lambda.len() as i64 + 1;
    let r = RParams::from_fn(window, |j| -(z + rat(j)) * (zprime + rat(j)));
    let rhs = gen_schur_rp(lambda, &r, &FlowVector::t0(), d)?;
    Ok(report(
        "laguerre",
        format!("lambda={lambda} z={} z'={}", format_rat(z), format_rat(zprime)),
        &lhs,
        &rhs,
        start,
    ))
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    ratio(rng.gen_range(-7..=7), rng.gen_range(1..=7))
}

fn random_partition(rng: &mut ChaCha8Rng, max_weight: u32) -> Partition {
    let w = rng.gen_range(0..=max_weight);
    let all = Partition::all_of_weight(w);
    all[rng.gen_range(0..all.len())].clone()
}

fn random_symmetric_r(rng: &mut ChaCha8Rng, window: i64) -> RParams {
    let vals: Vec<Rat> = (0..=window).map(|_| random_rat(rng)).collect();
    // r_j = r_(1-j): index by the orbit representative max(j, 1-j)
    RParams::from_fn(window, |j| {
        let rep = j.max(1 - j) as usize;
        vals[rep.min(window as usize)].clone()
    })
}

fn random_odd_flow(rng: &mut ChaCha8Rng) -> FlowVector {
    let mut p = FlowVector::new();
    p.set(1, random_rat(rng));
    p.set(3, random_rat(rng));
    p
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> SkewMatrix<Rat> {
    SkewMatrix::from_upper(n, |_, _| random_rat(rng))
}

fn increasing_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// Seeded randomized instances across all verifiers. Deterministic per seed;
/// `budget` scales the number of instances per family.
pub fn fuzz_all(
    seed: u64,
    budget: usize,
    opts: &LabOptions,
) -> Result<Vec<VerificationReport>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::new();

    for _ in 0..budget {
        let lam = random_partition(&mut rng, 6);
        reports.push(verify_schur_q(&lam, opts)?);
    }
    for _ in 0..budget {
        let n = rng.gen_range(2..=6usize);
        let a = random_skew(&mut rng, n);
        let r = rng.gen_range(1..=2usize.min(n));
        let subsets = increasing_subsets(n, r);
        let i = subsets[rng.gen_range(0..subsets.len())].clone();
        let j = subsets[rng.gen_range(0..subsets.len())].clone();
        reports.push(verify_det_pfaffian(&a, &i, &j)?);
    }
    for _ in 0..budget {
        let lam = random_partition(&mut rng, 4);
        let r = random_symmetric_r(&mut rng, 12);
        let p = random_odd_flow(&mut rng);
        reports.push(verify_generalized(&lam, &r, &p, opts)?);
    }
    for _ in 0..budget {
        let w = rng.gen_range(0..=5u32);
        let all = if w == 0 {
            vec![StrictPartition::empty()]
        } else {
            StrictPartition::all_of_weight(w)
        };
        let alpha = all[rng.gen_range(0..all.len())].clone();
        reports.push(verify_square(&alpha, opts)?);
    }
    for _ in 0..budget {
        let lam = random_partition(&mut rng, 4);
        let z = random_rat(&mut rng);
        let zp = random_rat(&mut rng);
        reports.push(verify_laguerre(&lam, &z, &zp)?);
    }
    Ok(reports)
}
