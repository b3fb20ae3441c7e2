//! Schur Q-functions in the half-normalized odd flow variables and their
//! content-product deformations: the BKP lattice.
//!
//! Everything stored here is the rational-coefficient object `Qtilde` built
//! from the q-series of `exp(sum_(j odd) t_j z^j)`; the scaled variant that
//! carries `2^(-m/2)` is represented by tracking the integer cardinality `m`
//! alongside, never by irrational scalars.

use num_traits::{One, Zero};

use crate::linalg::SkewMatrix;
use crate::partition::{shifted_content_product, RParams, StrictPartition};
use crate::poly::{q_series, FlowVector, GradedPoly};
use crate::rat::Rat;
use crate::Error;

fn check_degree(d: u32, need: u32) -> Result<(), Error> {
    if d < need {
        return Err(Error::DegreeTooSmall { have: d, need });
    }
    Ok(())
}

fn q_at(q: &[GradedPoly], k: u32, d: u32) -> GradedPoly {
    q.get(k as usize).cloned().unwrap_or_else(|| GradedPoly::zero_at(d))
}

fn two_row_from(q: &[GradedPoly], a: u32, b: u32, d: u32) -> GradedPoly {
    let mut acc = q_at(q, a, d) * q_at(q, b, d);
    for i in 1..=b {
        let term = q_at(q, a + i, d) * q_at(q, b - i, d);
        let c = if i % 2 == 0 { crate::rat::rat(2) } else { crate::rat::rat(-2) };
        acc += &term.scale(&c);
    }
    acc
}

/// `Qtilde_(a,b)` for `a > b >= 0`:
/// `q_a q_b + 2 sum_(i=1..b) (-1)^i q_(a+i) q_(b-i)`; in particular
/// `Qtilde_(a,0) = q_a`.
pub fn q_two_row(a: u32, b: u32, d: u32) -> Result<GradedPoly, Error> {
    if a <= b && !(a == 0 && b == 0) {
        return Err(Error::NotStrict(format!("({a},{b})")));
    }
    let q = q_series(d);
    Ok(two_row_from(&q, a, b, d))
}

/// `Qtilde_mu-hat`: Pfaffian of the skew matrix of two-row values over the
/// supplemented label. Homogeneous of degree `|mu|`.
pub fn qschur(mu: &StrictPartition, d: u32) -> Result<GradedPoly, Error> {
    check_degree(d, mu.weight())?;
    let mut parts: Vec<u32> = mu.positive_parts().to_vec();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    if parts.is_empty() {
        return Ok(GradedPoly::constant(Rat::one(), d));
    }
    let q = q_series(d);
    let m = SkewMatrix::from_upper(parts.len(), |i, j| two_row_from(&q, parts[i], parts[j], d));
    Ok(m.pfaffian().value)
}

/// Solves `sum_i x_i basis_i = target` exactly by Gaussian elimination on
/// monomial coordinates. `deg` only labels the error on inconsistency.
pub fn solve_in_basis(
    target: &GradedPoly,
    basis: &[GradedPoly],
    deg: u32,
) -> Result<Vec<Rat>, Error> {
    let mut monos: Vec<_> = basis
        .iter()
        .flat_map(|b| b.terms().map(|(m, _)| m.clone()))
        .chain(target.terms().map(|(m, _)| m.clone()))
        .collect();
    monos.sort();
    monos.dedup();
    let n = basis.len();
    let mut rows: Vec<Vec<Rat>> = monos
        .iter()
        .map(|m| {
            let mut row: Vec<Rat> = basis.iter().map(|b| b.coeff(m)).collect();
            row.push(target.coeff(m));
            row
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let pv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x /= &pv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..=n {
                    let delta = &f * &rows[r][k];
                    rows[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Err(Error::SolveInconsistent(deg));
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][n].clone();
    }
    Ok(x)
}

/// Expands an odd-supported polynomial in the `qschur` basis, degree by
/// degree. Labels come out with positive parts only.
pub fn expand_in_qschur_basis(
    p: &GradedPoly,
    max_deg: u32,
) -> Result<Vec<(StrictPartition, Rat)>, Error> {
    if p.terms().any(|(m, _)| !m.is_odd_support()) {
        return Err(Error::EvenSupport);
    }
    let mut out = Vec::new();
    for deg in 0..=max_deg {
        let comp = p.homogeneous_part(deg);
        let labels = StrictPartition::all_of_weight(deg);
        let basis: Vec<GradedPoly> =
            labels.iter().map(|nu| qschur(nu, p.trunc())).collect::<Result<_, _>>()?;
        let coeffs = solve_in_basis(&comp, &basis, deg)?;
        for (nu, c) in labels.into_iter().zip(coeffs) {
            if !c.is_zero() {
                out.push((nu, c));
            }
        }
    }
    Ok(out)
}

fn check_odd_flow(p: &FlowVector) -> Result<(), Error> {
    if p.support().any(|(&j, _)| j % 2 == 0) {
        return Err(Error::EvenSupport);
    }
    Ok(())
}

/// Skew Q value `Qtilde_(mu-hat/nu)` at the odd flow point `p_B`, extracted
/// from the coproduct `qschur(mu)(t + p_B) = sum_nu (skew at p_B) qschur(nu)(t)`.
pub fn qschur_skew(
    mu: &StrictPartition,
    nu: &StrictPartition,
    p_b: &FlowVector,
    d: u32,
) -> Result<Rat, Error> {
    check_degree(d, mu.weight())?;
    check_odd_flow(p_b)?;
    let mu_pos = StrictPartition::new(mu.positive_parts().to_vec())?;
    let nu_pos = StrictPartition::new(nu.positive_parts().to_vec())?;
    if !mu_pos.contains(&nu_pos) {
        return Err(Error::Containment);
    }
    let shifted = qschur(&mu_pos, d)?.flow_add(p_b);
    let coeffs = expand_in_qschur_basis(&shifted, mu.weight())?;
    Ok(coeffs
        .into_iter()
        .find(|(label, _)| *label == nu_pos)
        .map(|(_, c)| c)
        .unwrap_or_else(Rat::zero))
}

/// Generalized Q polynomial
/// `sum_(nu in mu-hat) r^B_(mu-hat/nu) * (skew at p_B) * qschur(nu)(t)`.
pub fn gen_q_rp(
    mu: &StrictPartition,
    r: &RParams,
    p_b: &FlowVector,
    d: u32,
) -> Result<GradedPoly, Error> {
    check_degree(d, mu.weight())?;
    if !r.is_b_symmetric() {
        return Err(Error::NotSymmetricR(0));
    }
    check_odd_flow(p_b)?;
    let mu_pos = StrictPartition::new(mu.positive_parts().to_vec())?;
    let shifted = qschur(&mu_pos, d)?.flow_add(p_b);
    let coeffs = expand_in_qschur_basis(&shifted, mu.weight())?;
    let mut acc = GradedPoly::zero_at(d);
    for (nu, c) in coeffs {
        if !mu_pos.contains(&nu) {
            return Err(Error::Containment);
        }
        let rb = shifted_content_product(&mu_pos, &nu, r)?;
        if rb.is_zero() {
            continue;
        }
        acc += &qschur(&nu, d)?.scale(&(c * rb));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn two_row_examples() {
        assert_eq!(q_two_row(1, 0, 4).unwrap().to_text(), "t1");
        // (2,1): q2 q1 - 2 q3 q0 = t1^3/6 - 2 t3
        assert_eq!(q_two_row(2, 1, 4).unwrap().to_text(), "1/6 t1^3 - 2 t3");
        assert!(q_two_row(2, 2, 4).is_err());
        assert!(q_two_row(1, 2, 4).is_err());
    }

    #[test]
    fn qschur_low_weight() {
        assert_eq!(qschur(&StrictPartition::empty(), 4).unwrap().to_text(), "1");
        assert_eq!(qschur(&sp(&[1]), 4).unwrap().to_text(), "t1");
        assert_eq!(qschur(&sp(&[2, 1]), 4).unwrap(), q_two_row(2, 1, 4).unwrap());
    }

    #[test]
    fn qschur_ignores_trailing_zero_label() {
        assert_eq!(qschur(&sp(&[2, 1, 0]), 4).unwrap(), qschur(&sp(&[2, 1]), 4).unwrap());
        assert_eq!(qschur(&sp(&[3, 0]), 4).unwrap(), qschur(&sp(&[3]), 4).unwrap());
    }

    #[test]
    fn qschur_homogeneous_and_odd() {
        for w in 0..=7 {
            for mu in StrictPartition::all_of_weight(w) {
                let q = qschur(&mu, 8).unwrap();
                assert!(q.is_homogeneous(w));
                assert!(q.terms().all(|(m, _)| m.is_odd_support()));
            }
        }
    }

    #[test]
    fn qschur_basis_linearly_independent() {
        for deg in 1..=8u32 {
            let labels = StrictPartition::all_of_weight(deg);
            let basis: Vec<GradedPoly> =
                labels.iter().map(|nu| qschur(nu, deg).unwrap()).collect();
            // independence: solving for the zero target yields only the zero vector
            for (i, b) in basis.iter().enumerate() {
                let coeffs = solve_in_basis(b, &basis, deg).unwrap();
                for (j, c) in coeffs.iter().enumerate() {
                    assert_eq!(c.is_zero(), i != j, "degree {deg}");
                }
            }
        }
    }

    #[test]
    fn expansion_round_trip() {
        let d = 5;
        let target = qschur(&sp(&[3, 2]), d).unwrap().scale(&ratio(-5, 3))
            + &qschur(&sp(&[1]), d).unwrap().scale(&rat(2));
        let coeffs = expand_in_qschur_basis(&target, d).unwrap();
        let mut back = GradedPoly::zero_at(d);
        for (nu, c) in &coeffs {
            back += &qschur(nu, d).unwrap().scale(c);
        }
        assert_eq!(back, target);
        assert!(expand_in_qschur_basis(&GradedPoly::var(2, 4), 4).is_err());
    }

    #[test]
    fn skew_degenerate_cases() {
        let mut pb = FlowVector::new();
        pb.set(1, rat(1));
        assert_eq!(qschur_skew(&sp(&[2, 1]), &sp(&[2, 1]), &pb, 3).unwrap(), rat(1));
        // mu = (1,0), nu = empty: qschur((1)) at t1 = 1 is 1
        assert_eq!(qschur_skew(&sp(&[1, 0]), &StrictPartition::empty(), &pb, 1).unwrap(), rat(1));
        assert!(qschur_skew(&sp(&[1]), &sp(&[2]), &pb, 2).is_err());
        let mut even = FlowVector::new();
        even.set(2, rat(1));
        assert!(qschur_skew(&sp(&[2]), &sp(&[1]), &even, 2).is_err());
    }

    #[test]
    fn skew_against_direct_expansion() {
        // (2,1)/(1): qschur((2,1))(t + p) has qschur((1)) coefficient
        // d/dt-style: Qt_(2,1) = t1^3/6 - 2 t3, shift t1 -> t1 + a, t3 -> t3 + b:
        // coefficient of t1 (= qschur((1))) is a^2/2.
        let mut pb = FlowVector::new();
        pb.set(1, ratio(1, 2));
        pb.set(3, rat(4));
        let v = qschur_skew(&sp(&[2, 1]), &sp(&[1]), &pb, 3).unwrap();
        assert_eq!(v, ratio(1, 8));
    }

    #[test]
    fn gen_q_degenerate_cases() {
        let r = RParams::ones(8);
        let mu = sp(&[3, 1]);
        let g0 = gen_q_rp(&mu, &r, &FlowVector::new(), 4).unwrap();
        assert_eq!(g0, qschur(&mu, 4).unwrap());
        let ge = gen_q_rp(&StrictPartition::empty(), &r, &FlowVector::t0(), 2).unwrap();
        assert_eq!(ge.to_text(), "1");
        // non-symmetric r rejected
        let bad = RParams::from_fn(4, |j| rat(j));
        assert!(gen_q_rp(&mu, &bad, &FlowVector::t0(), 4).is_err());
    }

    #[test]
    fn gen_q_top_component() {
        let r = RParams::from_fn(10, |j| rat((2 * j - 1).pow(2)));
        let mut pb = FlowVector::new();
        pb.set(1, ratio(1, 3));
        pb.set(3, rat(-2));
        for mu in [sp(&[2]), sp(&[3, 1]), sp(&[4, 2, 1])] {
            let d = mu.weight();
            let g = gen_q_rp(&mu, &r, &pb, d).unwrap();
            assert_eq!(g.homogeneous_part(d), qschur(&mu, d).unwrap(), "{mu}");
        }
    }
}
