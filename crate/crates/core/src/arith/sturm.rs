//! Exact real-root counting with Sturm sequences.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::{Rat, UniPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

impl Bound {
    pub fn at(r: Rat) -> Self {
        Bound::Finite(r)
    }

    fn rank(&self) -> u8 {
        match self {
            Bound::NegInf => 0,
            Bound::Finite(_) => 1,
            Bound::PosInf => 2,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a.partial_cmp(b),
            _ => self.rank().partial_cmp(&other.rank()),
        }
    }
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_at(p: &UniPoly, b: &Bound) -> i8 {
    let s = match b {
        Bound::Finite(x) => p.eval(x),
        Bound::PosInf => p.lc(),
        Bound::NegInf => {
            if p.deg() % 2 == 0 {
                p.lc()
            } else {
                -p.lc()
            }
        }
    };
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

fn variations(chain: &[UniPoly], b: &Bound) -> usize {
    let signs: Vec<i8> = chain.iter().map(|q| sign_at(q, b)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of the squarefree polynomial `p` in `(lo, hi]`.
pub fn sturm_count(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if lo.partial_cmp(hi) != Some(Ordering::Less) {
        return Err(Error::EmptyInterval);
    }
    if p.is_constant() {
        return Ok(0);
    }
    if !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let chain = sturm_chain(p);
    let (vl, vh) = (variations(&chain, lo), variations(&chain, hi));
    Ok(vl.saturating_sub(vh))
}

/// Distinct real roots of any nonzero polynomial (squarefree part taken first).
pub fn count_real_roots(p: &UniPoly) -> Result<usize> {
    let sf = p.squarefree_part()?;
    sturm_count(&sf, &Bound::NegInf, &Bound::PosInf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(c)
    }

    #[test]
    fn fig8_roots_positive() {
        assert_eq!(sturm_count(&p(&[1, -3, 1]), &Bound::at(rat(0)), &Bound::PosInf).unwrap(), 2);
        // (3 - sqrt 5)/2 ~ 0.38 lies in (0, 1], the other root does not
        assert_eq!(sturm_count(&p(&[1, -3, 1]), &Bound::at(rat(0)), &Bound::at(rat(1))).unwrap(), 1);
    }

    #[test]
    fn degree_eight_has_no_real_roots() {
        let f = p(&[1, -3, 5, -7, 9, -7, 5, -3, 1]);
        assert_eq!(sturm_count(&f, &Bound::NegInf, &Bound::PosInf).unwrap(), 0);
    }

    #[test]
    fn f7_four_positive_roots() {
        let f = p(&[1, -7, 13, -7, 1]);
        assert_eq!(sturm_count(&f, &Bound::at(rat(0)), &Bound::PosInf).unwrap(), 4);
    }

    #[test]
    fn half_open_interval_includes_upper_root() {
        // roots 1, 2, 3
        let f = p(&[-6, 11, -6, 1]);
        assert_eq!(sturm_count(&f, &Bound::at(rat(1)), &Bound::at(rat(3))).unwrap(), 2);
        assert_eq!(sturm_count(&f, &Bound::at(ratio(1, 2)), &Bound::at(rat(1))).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(sturm_count(&p(&[1, -2, 1]), &Bound::NegInf, &Bound::PosInf), Err(Error::NotSquarefree));
        assert_eq!(sturm_count(&p(&[1, 1]), &Bound::at(rat(1)), &Bound::at(rat(1))), Err(Error::EmptyInterval));
        assert_eq!(sturm_count(&UniPoly::zero(), &Bound::NegInf, &Bound::PosInf), Err(Error::ZeroPolynomial));
        assert_eq!(count_real_roots(&p(&[1, -2, 1])).unwrap(), 1);
    }
}
