//! Polarizations of Frobenius data: the 2^(2r-2s) ways of splitting the
//! multiset `alpha + I(beta)` into an ordered pair of strict partitions, with
//! their permutation signs and parity bookkeeping.

use serde::Serialize;

use crate::partition::{strictify_beta, FrobeniusCoords, StrictPartition};
use crate::rat::{pow2, sign_pow, Rat};
use crate::Error;

/// One polarization `(mu_plus, mu_minus)` with its binary sequence, sign and
/// parities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polarization {
    pub mu_plus: StrictPartition,
    pub mu_minus: StrictPartition,
    /// `+`/`-` per position of the source sequence `(alpha_1..alpha_r, I(beta)_1..I(beta)_r)`.
    pub epsilon: String,
    /// Sign of the permutation taking the tagged source sequence to
    /// `(mu_plus, mu_minus)` in decreasing order.
    pub sign: i32,
    /// `pi(mu_minus) = |alpha intersect mu_minus|` as sets.
    pub pi_minus: usize,
    pub m_plus: usize,
    pub m_minus: usize,
}

/// `S = alpha intersect I(beta)`, sorted decreasing.
pub fn intersection_s(alpha: &[u32], beta: &[u32]) -> Result<StrictPartition, Error> {
    let ib = strictify_beta(beta)?;
    let s: Vec<u32> =
        alpha.iter().copied().filter(|a| ib.parts().contains(a)).collect();
    StrictPartition::new(s)
}

fn perm_sign(perm: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                s = -s;
            }
        }
    }
    s
}

/// Polarizations of a pair of strictly decreasing sequences of equal length.
///
/// Shared values (the set `S`) go to both sides with `+` on the first-sequence
/// copy and `-` on the second; the remaining values are 2-colored freely.
/// Output is sorted lexicographically on the epsilon sequence (`+` before `-`).
pub fn enumerate_polarizations_of(
    aside: &[u32],
    bside: &[u32],
) -> Result<Vec<Polarization>, Error> {
    if aside.len() != bside.len() {
        return Err(Error::BadFrobenius("sequences of unequal length".into()));
    }
    // validate strictness
    StrictPartition::new(aside.to_vec())?;
    StrictPartition::new(bside.to_vec())?;
    let s_set: Vec<u32> = aside.iter().copied().filter(|a| bside.contains(a)).collect();
    let mut free: Vec<u32> = aside
        .iter()
        .chain(bside.iter())
        .copied()
        .filter(|x| !s_set.contains(x))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    free.sort_unstable_by(|a, b| b.cmp(a));

    let mut out = Vec::with_capacity(1 << free.len());
    for bits in 0u32..1 << free.len() {
        let mut plus: Vec<u32> = s_set.clone();
        let mut minus: Vec<u32> = s_set.clone();
        for (k, &x) in free.iter().enumerate() {
            if bits >> k & 1 == 0 {
                plus.push(x);
            } else {
                minus.push(x);
            }
        }
        plus.sort_unstable_by(|a, b| b.cmp(a));
        minus.sort_unstable_by(|a, b| b.cmp(a));

        let mut epsilon = String::with_capacity(2 * aside.len());
        for a in aside {
            if s_set.contains(a) || plus.contains(a) {
                epsilon.push('+');
            } else {
                epsilon.push('-');
            }
        }
        for b in bside {
            if s_set.contains(b) || !plus.contains(b) {
                epsilon.push('-');
            } else {
                epsilon.push('+');
            }
        }

        // Tagged source sequence and its rearrangement into (plus, minus).
        let src: Vec<(u32, char)> = aside
            .iter()
            .chain(bside.iter())
            .copied()
            .zip(epsilon.chars())
            .collect();
        let tgt: Vec<(u32, char)> = plus
            .iter()
            .map(|&v| (v, '+'))
            .chain(minus.iter().map(|&v| (v, '-')))
            .collect();
        let perm: Vec<usize> = tgt
            .iter()
            .map(|x| src.iter().position(|y| y == x).expect("tagged multiset mismatch"))
            .collect();
        let sign = perm_sign(&perm);
        let pi_minus = aside.iter().filter(|a| minus.contains(a)).count();

        out.push(Polarization {
            m_plus: plus.len(),
            m_minus: minus.len(),
            mu_plus: StrictPartition::new(plus)?,
            mu_minus: StrictPartition::new(minus)?,
            epsilon,
            sign,
            pi_minus,
        });
    }
    out.sort_by(|a, b| a.epsilon.cmp(&b.epsilon));
    Ok(out)
}

/// Polarizations of Frobenius data `(alpha | beta)`; the second sequence is `I(beta)`.
pub fn enumerate_polarizations(fc: &FrobeniusCoords) -> Result<Vec<Polarization>, Error> {
    let ib = strictify_beta(&fc.beta)?;
    enumerate_polarizations_of(&fc.alpha, ib.parts())
}

/// Scalar weight of one polarization in the bilinear Schur/Q expansion:
/// `((-1)^(r(r+1)/2 + s) / 2^(2r-s)) * sgn(mu) * (-1)^(pi(mu_minus) + m(mu_minus-hat)/2)`.
pub fn polarization_coefficient(p: &Polarization, r: usize, s: usize) -> Rat {
    let m_hat = p.m_minus + p.m_minus % 2;
    let global = sign_pow((r * (r + 1) / 2 + s) as u32) * pow2(-((2 * r - s) as i32));
    let local = Rat::from_integer(p.sign.into()) * sign_pow((p.pi_minus + m_hat / 2) as u32);
    global * local
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(intersection_s(&[0], &[0]).unwrap(), StrictPartition::empty());
        assert_eq!(intersection_s(&[1], &[0]).unwrap(), sp(&[1]));
        assert_eq!(intersection_s(&[2, 0], &[1, 0]).unwrap(), sp(&[2]));
    }

    #[test]
    fn box_partition_polarizations() {
        // (alpha|beta) = ((0),(0)): I(beta) = (1), S empty, 2^2 = 4 polarizations.
        let fc = FrobeniusCoords::new(vec![0], vec![0]).unwrap();
        let ps = enumerate_polarizations(&fc).unwrap();
        assert_eq!(ps.len(), 4);
        let pairs: Vec<(Vec<u32>, Vec<u32>)> = ps
            .iter()
            .map(|p| (p.mu_plus.parts().to_vec(), p.mu_minus.parts().to_vec()))
            .collect();
        assert!(pairs.contains(&(vec![1, 0], vec![])));
        assert!(pairs.contains(&(vec![], vec![1, 0])));
        assert!(pairs.contains(&(vec![0], vec![1])));
        assert!(pairs.contains(&(vec![1], vec![0])));
    }

    #[test]
    fn shared_value_forces_single_polarization() {
        // (alpha|beta) = ((1),(0)): I(beta) = (1) = alpha, so S = {1}, s = r = 1.
        let fc = FrobeniusCoords::new(vec![1], vec![1 - 1]).unwrap();
        let ps = enumerate_polarizations(&fc).unwrap();
        assert_eq!(ps.len(), 1);
        let p = &ps[0];
        assert_eq!(p.mu_plus, sp(&[1]));
        assert_eq!(p.mu_minus, sp(&[1]));
        assert_eq!(p.epsilon, "+-");
        assert_eq!(p.sign, 1);
        assert_eq!(p.pi_minus, 1);
    }

    #[test]
    fn doubled_partition_polarization_is_unique() {
        // D(alpha) has Frobenius coordinates (alpha | alpha - 1), so
        // I(beta) = alpha and mu_plus = mu_minus = alpha.
        for alpha in [vec![1u32], vec![2], vec![2, 1], vec![3, 1], vec![4, 2, 1]] {
            let beta: Vec<u32> = alpha.iter().map(|&a| a - 1).collect();
            let fc = FrobeniusCoords::new(alpha.clone(), beta).unwrap();
            let ps = enumerate_polarizations(&fc).unwrap();
            assert_eq!(ps.len(), 1);
            assert_eq!(ps[0].mu_plus.parts(), alpha.as_slice());
            assert_eq!(ps[0].mu_minus.parts(), alpha.as_slice());
        }
    }

    #[test]
    fn cardinality_is_power_of_four() {
        for (alpha, beta) in [
            (vec![0u32], vec![0u32]),
            (vec![1, 0], vec![1, 0]),
            (vec![2, 0], vec![1, 0]),
            (vec![3, 2, 0], vec![2, 1, 0]),
            (vec![5, 3, 1, 0], vec![3, 2, 1, 0]),
        ] {
            let fc = FrobeniusCoords::new(alpha.clone(), beta.clone()).unwrap();
            let r = alpha.len();
            let s = intersection_s(&alpha, &beta).unwrap().cardinality();
            let ps = enumerate_polarizations(&fc).unwrap();
            assert_eq!(ps.len(), 1 << (2 * r - 2 * s));
        }
    }

    #[test]
    fn invariants_hold() {
        let fc = FrobeniusCoords::new(vec![3, 1, 0], vec![2, 1, 0]).unwrap();
        let r = 3;
        let ib = strictify_beta(&fc.beta).unwrap();
        let s_set = intersection_s(&fc.alpha, &fc.beta).unwrap();
        let s = s_set.cardinality();
        for p in enumerate_polarizations(&fc).unwrap() {
            assert_eq!(p.m_plus + p.m_minus, 2 * r);
            // union and intersection as sets
            let mut union: Vec<u32> =
                p.mu_plus.parts().iter().chain(p.mu_minus.parts()).copied().collect();
            union.sort_unstable();
            union.dedup();
            let mut expected: Vec<u32> =
                fc.alpha.iter().chain(ib.parts()).copied().collect();
            expected.sort_unstable();
            expected.dedup();
            assert_eq!(union, expected);
            let inter: Vec<u32> = p
                .mu_plus
                .parts()
                .iter()
                .copied()
                .filter(|x| p.mu_minus.parts().contains(x))
                .collect();
            assert_eq!(inter.len(), s);
            // pi(mu_plus) + pi(mu_minus) = r + s
            let pi_plus =
                fc.alpha.iter().filter(|a| p.mu_plus.parts().contains(a)).count();
            assert_eq!(pi_plus + p.pi_minus, r + s);
            // epsilon pinned on S
            for (j, a) in fc.alpha.iter().enumerate() {
                if s_set.parts().contains(a) {
                    assert_eq!(p.epsilon.as_bytes()[j], b'+');
                }
            }
            for (j, b) in ib.parts().iter().enumerate() {
                if s_set.parts().contains(b) {
                    assert_eq!(p.epsilon.as_bytes()[r + j], b'-');
                }
            }
        }
    }

    #[test]
    fn swap_involution_when_s_empty() {
        let fc = FrobeniusCoords::new(vec![2, 0], vec![3, 0]).unwrap();
        let ps = enumerate_polarizations(&fc).unwrap();
        for p in &ps {
            let swapped = ps
                .iter()
                .find(|q| q.mu_plus == p.mu_minus && q.mu_minus == p.mu_plus)
                .expect("swap partner present");
            assert_eq!(swapped.m_plus, p.m_minus);
        }
    }

    #[test]
    fn coefficient_examples() {
        // r = s = 1 forces the single polarization of ((1),(0)).
        let fc = FrobeniusCoords::new(vec![1], vec![0]).unwrap();
        let ps = enumerate_polarizations(&fc).unwrap();
        assert_eq!(polarization_coefficient(&ps[0], 1, 1), ratio(1, 2));
        // r = 0: empty polarization, coefficient 1.
        let empty = FrobeniusCoords::new(vec![], vec![]).unwrap();
        let ps0 = enumerate_polarizations(&empty).unwrap();
        assert_eq!(ps0.len(), 1);
        assert_eq!(polarization_coefficient(&ps0[0], 0, 0), ratio(1, 1));
    }

    #[test]
    fn json_shape() {
        let fc = FrobeniusCoords::new(vec![1], vec![0]).unwrap();
        let ps = enumerate_polarizations(&fc).unwrap();
        let js = serde_json::to_value(&ps[0]).unwrap();
        assert_eq!(js["mu_plus"], serde_json::json!([1]));
        assert_eq!(js["epsilon"], "+-");
        assert_eq!(js["sign"], 1);
        assert_eq!(js["pi_minus"], 1);
    }
}
