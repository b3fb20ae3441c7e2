//! Schur polynomials in the flow variables and their content-product
//! deformations: the KP lattice.
//!
//! The workhorse is the Jacobi-Trudi determinant `det(h_(lambda_i - i + j))`
//! over the h-series; the Giambelli hook determinant is kept as an
//! independent cross-check. The deformed family `gen_schur_rp` follows the
//! sub-partition expansion with content products, and the multivariate
//! Laguerre polynomials are its specialization `r_j = -(z+j)(z'+j)` at the
//! single-point flow vector `t0`.

use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::partition::{content_product, FrobeniusCoords, Partition, RParams, SkewShape};
use crate::poly::{h_series, FlowVector, GradedPoly};
use crate::rat::{factorial, rat, sign_pow, Rat};
use crate::Error;

fn check_degree(d: u32, need: u32) -> Result<(), Error> {
    if d < need {
        return Err(Error::DegreeTooSmall { have: d, need });
    }
    Ok(())
}

fn jacobi_trudi(h: &[GradedPoly], lambda: &Partition, rho: &Partition, d: u32) -> GradedPoly {
    let l = lambda.len();
    if l == 0 {
        return GradedPoly::constant(Rat::one(), d);
    }
    let m = Matrix::from_fn(l, l, |i, j| {
        let k = lambda.part(i) as i64 - rho.part(j) as i64 - i as i64 + j as i64;
        if k < 0 || k as usize >= h.len() {
            GradedPoly::zero_at(d)
        } else {
            h[k as usize].clone()
        }
    });
    m.det().expect("square by construction")
}

/// `s_lambda(t)`, homogeneous of degree `|lambda|`.
pub fn schur(lambda: &Partition, d: u32) -> Result<GradedPoly, Error> {
    check_degree(d, lambda.weight())?;
    let h = h_series(d);
    Ok(jacobi_trudi(&h, lambda, &Partition::empty(), d))
}

/// Hook Schur function `s_(a|b)`: the hook `(a+1, 1^b)`.
pub fn hook_schur(a: u32, b: u32, d: u32) -> Result<GradedPoly, Error> {
    let mut parts = vec![a + 1];
    parts.extend(std::iter::repeat(1).take(b as usize));
    schur(&Partition::new(parts)?, d)
}

/// Giambelli determinant `det(s_(alpha_j | beta_k))`; equals [`schur`].
pub fn giambelli_schur(lambda: &Partition, d: u32) -> Result<GradedPoly, Error> {
    check_degree(d, lambda.weight())?;
    let fc = crate::partition::to_frobenius(lambda);
    giambelli_from_frobenius(&fc, d)
}

/// Giambelli determinant straight from Frobenius data.
pub fn giambelli_from_frobenius(fc: &FrobeniusCoords, d: u32) -> Result<GradedPoly, Error> {
    let r = fc.rank();
    if r == 0 {
        return Ok(GradedPoly::constant(Rat::one(), d));
    }
    let mut hooks = vec![vec![GradedPoly::zero_at(d); r]; r];
    for (j, row) in hooks.iter_mut().enumerate() {
        for (k, cell) in row.iter_mut().enumerate() {
            *cell = hook_schur(fc.alpha[j], fc.beta[k], d)?;
        }
    }
    Matrix::from_rows(hooks)?.det()
}

/// Skew Schur polynomial `s_(lambda/rho)(t)`.
pub fn skew_schur(shape: &SkewShape, d: u32) -> Result<GradedPoly, Error> {
    check_degree(d, shape.cells())?;
    let h = h_series(d);
    Ok(jacobi_trudi(&h, &shape.outer, &shape.inner, d))
}

/// Generalized Schur polynomial
/// `sum_(rho in lambda) r_(lambda/rho) * s_(lambda/rho)(p) * s_rho(t)`.
pub fn gen_schur_rp(
    lambda: &Partition,
    r: &RParams,
    p: &FlowVector,
    d: u32,
) -> Result<GradedPoly, Error> {
    check_degree(d, lambda.weight())?;
    let mut acc = GradedPoly::zero_at(d);
    for rho in lambda.sub_partitions() {
        let shape = SkewShape::new(lambda.clone(), rho.clone())?;
        let c = content_product(&shape, r)?;
        if c.is_zero() {
            continue;
        }
        let skew_at_p = skew_schur(&shape, d)?.eval_flow(p);
        if skew_at_p.is_zero() {
            continue;
        }
        acc += &schur(&rho, d)?.scale(&(c * skew_at_p));
    }
    Ok(acc)
}

/// Pochhammer-type content product `(z)_(lambda/rho) = prod (z + j - i)` over
/// the cells of the skew diagram.
fn content_shift_product(shape: &SkewShape, z: &Rat) -> Rat {
    let mut acc = Rat::one();
    for i in 0..shape.outer.len() {
        for j in shape.inner.part(i) + 1..=shape.outer.part(i) {
            acc *= z + rat(j as i64 - (i as i64 + 1));
        }
    }
    acc
}

/// Multivariate Laguerre polynomial:
/// `sum_rho (-1)^(|lambda|-|rho|) (z)_(lambda/rho) (z')_(lambda/rho)
///  det(1/(lambda_i - i - rho_j + j)!) s_rho(t)`.
pub fn laguerre(lambda: &Partition, z: &Rat, zprime: &Rat, d: u32) -> Result<GradedPoly, Error> {
    check_degree(d, lambda.weight())?;
    let l = lambda.len();
    let mut acc = GradedPoly::zero_at(d);
    for rho in lambda.sub_partitions() {
        let shape = SkewShape::new(lambda.clone(), rho.clone())?;
        let zc = content_shift_product(&shape, z) * content_shift_product(&shape, zprime);
        if zc.is_zero() {
            continue;
        }
        // det of reciprocal factorials, with 1/n! = 0 for n < 0
        let m = Matrix::from_fn(l, l, |i, j| {
            let k = lambda.part(i) as i64 - (i as i64 + 1) - rho.part(j) as i64 + (j as i64 + 1);
            if k < 0 {
                Rat::zero()
            } else {
                factorial(k as u32).recip()
            }
        });
        let fdet = m.det()?;
        if fdet.is_zero() {
            continue;
        }
        let sign = sign_pow(shape.cells());
        acc += &schur(&rho, d)?.scale(&(sign * zc * fdet));
    }
    Ok(acc)
}

/// Expands a polynomial in the Schur basis, degree by degree, by exact
/// triangular solve. Errors if the polynomial is outside the span.
pub fn expand_in_schur_basis(
    p: &GradedPoly,
    max_deg: u32,
) -> Result<Vec<(Partition, Rat)>, Error> {
    let mut out = Vec::new();
    for deg in 0..=max_deg {
        let comp = p.homogeneous_part(deg);
        let labels = Partition::all_of_weight(deg);
        let basis: Vec<GradedPoly> =
            labels.iter().map(|lam| schur(lam, p.trunc())).collect::<Result<_, _>>()?;
        let coeffs = crate::qschur::solve_in_basis(&comp, &basis, deg)?;
        for (lam, c) in labels.into_iter().zip(coeffs) {
            if !c.is_zero() {
                out.push((lam, c));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn schur_low_weight() {
        assert_eq!(schur(&Partition::empty(), 4).unwrap().to_text(), "1");
        assert_eq!(schur(&p(&[1]), 4).unwrap().to_text(), "t1");
        assert_eq!(schur(&p(&[2]), 4).unwrap().to_text(), "1/2 t1^2 + t2");
        assert_eq!(schur(&p(&[1, 1]), 4).unwrap().to_text(), "1/2 t1^2 - t2");
        assert_eq!(schur(&p(&[2, 1]), 4).unwrap().to_text(), "1/3 t1^3 - t3");
    }

    #[test]
    fn schur_homogeneous() {
        for w in 0..=6 {
            for lam in Partition::all_of_weight(w) {
                assert!(schur(&lam, 8).unwrap().is_homogeneous(w));
            }
        }
    }

    #[test]
    fn degree_guard() {
        assert!(matches!(
            schur(&p(&[3, 1]), 3),
            Err(Error::DegreeTooSmall { have: 3, need: 4 })
        ));
    }

    #[test]
    fn giambelli_matches_jacobi_trudi() {
        for w in 0..=8 {
            for lam in Partition::all_of_weight(w) {
                assert_eq!(giambelli_schur(&lam, w).unwrap(), schur(&lam, w).unwrap(), "{lam}");
            }
        }
    }

    #[test]
    fn hook_examples() {
        assert_eq!(hook_schur(0, 0, 4).unwrap().to_text(), "t1");
        assert_eq!(hook_schur(1, 1, 4).unwrap(), schur(&p(&[2, 1]), 4).unwrap());
    }

    #[test]
    fn skew_examples() {
        let lam = p(&[2, 1]);
        let full = SkewShape::new(lam.clone(), lam.clone()).unwrap();
        assert_eq!(skew_schur(&full, 4).unwrap().to_text(), "1");
        let one = SkewShape::new(p(&[2]), p(&[1])).unwrap();
        assert_eq!(skew_schur(&one, 4).unwrap().to_text(), "t1");
        let corner = SkewShape::new(p(&[2, 1]), p(&[1])).unwrap();
        // s_(2,1)/(1) = s_(2) + s_(1,1) = t1^2
        assert_eq!(skew_schur(&corner, 4).unwrap().to_text(), "t1^2");
    }

    #[test]
    fn skew_translation_identity() {
        // s_lambda(t + p) = sum_rho s_(lambda/rho)(p) s_rho(t)
        let d = 6;
        let mut pvec = FlowVector::new();
        pvec.set(1, ratio(1, 2));
        pvec.set(2, rat(-1));
        pvec.set(3, ratio(2, 3));
        for lam in [p(&[2, 1]), p(&[3, 2]), p(&[2, 2, 1])] {
            let lhs = schur(&lam, d).unwrap().flow_add(&pvec);
            let mut rhs = GradedPoly::zero_at(d);
            for rho in lam.sub_partitions() {
                let shape = SkewShape::new(lam.clone(), rho.clone()).unwrap();
                let c = skew_schur(&shape, d).unwrap().eval_flow(&pvec);
                rhs += &schur(&rho, d).unwrap().scale(&c);
            }
            assert_eq!(lhs, rhs, "{lam}");
        }
    }

    #[test]
    fn schur_equals_power_sum_evaluation() {
        // s_(2,1) at x = (1, 2): classical value x1 x2 (x1 + x2) = 6.
        let s = schur(&p(&[2, 1]), 4).unwrap();
        assert_eq!(s.eval_power_sums(&[rat(1), rat(2)]), rat(6));
        // s_(2) at x = (1): h2 at t = power sums of (1) is 1.
        assert_eq!(schur(&p(&[2]), 4).unwrap().eval_power_sums(&[rat(1)]), rat(1));
    }

    #[test]
    fn gen_schur_degenerate_cases() {
        let lam = p(&[2, 1]);
        let d = 4;
        let r1 = RParams::ones(8);
        // p = 0 keeps only rho = lambda
        let gen0 = gen_schur_rp(&lam, &r1, &FlowVector::new(), d).unwrap();
        assert_eq!(gen0, schur(&lam, d).unwrap());
        // r = 0 everywhere keeps only rho = lambda as well (empty product = 1)
        let r0 = RParams::from_fn(8, |_| Rat::zero());
        let genr0 = gen_schur_rp(&lam, &r0, &FlowVector::t0(), d).unwrap();
        assert_eq!(genr0, schur(&lam, d).unwrap());
        // empty lambda
        let e = gen_schur_rp(&Partition::empty(), &r1, &FlowVector::t0(), d).unwrap();
        assert_eq!(e.to_text(), "1");
    }

    #[test]
    fn gen_schur_top_component() {
        let lam = p(&[3, 1]);
        let r = RParams::from_fn(8, |j| rat(j) + ratio(1, 2));
        let mut pv = FlowVector::new();
        pv.set(1, rat(2));
        pv.set(3, ratio(-1, 3));
        let g = gen_schur_rp(&lam, &r, &pv, 4).unwrap();
        assert_eq!(g.homogeneous_part(4), schur(&lam, 4).unwrap());
    }

    #[test]
    fn laguerre_examples() {
        let z = ratio(3, 2);
        let zp = ratio(-1, 3);
        assert_eq!(laguerre(&Partition::empty(), &z, &zp, 2).unwrap().to_text(), "1");
        let l1 = laguerre(&p(&[1]), &z, &zp, 2).unwrap();
        let expected = GradedPoly::var(1, 2)
            + GradedPoly::constant(-(z.clone() * zp.clone()), 2);
        assert_eq!(l1, expected);
    }

    #[test]
    fn laguerre_is_gen_schur_specialization() {
        let z = ratio(3, 2);
        let zp = ratio(-1, 3);
        let r = RParams::from_fn(10, |j| -(&z + rat(j)) * (&zp + rat(j)));
        for lam in [p(&[1]), p(&[2]), p(&[2, 1]), p(&[3, 1]), p(&[2, 2]), p(&[3, 2])] {
            let d = lam.weight();
            assert_eq!(
                laguerre(&lam, &z, &zp, d).unwrap(),
                gen_schur_rp(&lam, &r, &FlowVector::t0(), d).unwrap(),
                "{lam}"
            );
        }
    }

    #[test]
    fn schur_basis_expansion_round_trip() {
        let d = 5;
        let target = schur(&p(&[3, 1]), d).unwrap().scale(&ratio(2, 7))
            + &schur(&p(&[2]), d).unwrap().scale(&rat(-3))
            + &GradedPoly::constant(rat(4), d);
        let coeffs = expand_in_schur_basis(&target, d).unwrap();
        let mut back = GradedPoly::zero_at(d);
        for (lam, c) in &coeffs {
            back += &schur(lam, d).unwrap().scale(c);
        }
        assert_eq!(back, target);
        assert_eq!(coeffs.len(), 3);
    }
}
