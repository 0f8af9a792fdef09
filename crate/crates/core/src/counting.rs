//! Closed-form counts for hyperplane partitions of `k` points in `R^d`.
//!
//! - `phi(d, k) = Σ_{i=0}^{d} C(k-1, i)`: size of `H(X)` in general position.
//! - `tau(d, k) = Σ_{i=1}^{d} C(k-2, i-1)`: smallest minimal transversal.
//! - `eta(d, k) = Σ_{i=0}^{d} C(k-2, i)`: largest minimal transversal.
//! - `bound(d, k) = (d+1)·eta(d, k) + k`: subset size in the colorful
//!   Kirchberger theorem.

use crate::{Error, Result};

/// `C(n, i)`, zero when `i > n`.
pub fn binomial(n: u64, i: u64) -> Result<u64> {
    if i > n {
        return Ok(0);
    }
    let i = i.min(n - i);
    let mut acc: u128 = 1;
    for j in 0..i {
        acc = acc
            .checked_mul(u128::from(n - j))
            .ok_or(Error::Overflow)?
            / u128::from(j + 1);
    }
    u64::try_from(acc).map_err(|_| Error::Overflow)
}

fn check(d: u64, k: u64, min_k: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be positive"));
    }
    if k < min_k {
        return Err(Error::InvalidParameter(if min_k == 1 {
            "need at least one point"
        } else {
            "need at least two points"
        }));
    }
    Ok(())
}

fn sum_binomials(n: u64, range: core::ops::RangeInclusive<u64>) -> Result<u64> {
    let mut acc = 0u64;
    for i in range {
        acc = acc.checked_add(binomial(n, i)?).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

pub fn phi(d: u64, k: u64) -> Result<u64> {
    check(d, k, 1)?;
    sum_binomials(k - 1, 0..=d)
}

pub fn tau(d: u64, k: u64) -> Result<u64> {
    check(d, k, 2)?;
    let mut acc = 0u64;
    for i in 1..=d {
        acc = acc.checked_add(binomial(k - 2, i - 1)?).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

pub fn eta(d: u64, k: u64) -> Result<u64> {
    check(d, k, 2)?;
    sum_binomials(k - 2, 0..=d)
}

pub fn bound(d: u64, k: u64) -> Result<u64> {
    let e = eta(d, k)?;
    (d + 1)
        .checked_mul(e)
        .and_then(|v| v.checked_add(k))
        .ok_or(Error::Overflow)
}

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct CountingTriple {
    pub phi: u64,
    pub tau: u64,
    pub eta: u64,
    pub bound: u64,
}

impl CountingTriple {
    pub fn new(d: u64, k: u64) -> Result<CountingTriple> {
        Ok(CountingTriple {
            phi: phi(d, k)?,
            tau: tau(d, k)?,
            eta: eta(d, k)?,
            bound: bound(d, k)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pentagon_numbers() {
        assert_eq!(phi(2, 6).unwrap(), 16);
        assert_eq!(phi(2, 5).unwrap(), 11);
        assert_eq!(tau(2, 6).unwrap(), 5);
        assert_eq!(eta(2, 6).unwrap(), 11);
    }

    #[test]
    fn small_values() {
        assert_eq!(eta(2, 3).unwrap(), 2);
        assert_eq!(bound(2, 3).unwrap(), 9);
        assert_eq!(bound(1, 2).unwrap(), 4);
        assert_eq!(bound(1, 3).unwrap(), 7);
        assert_eq!(phi(2, 3).unwrap(), 4);
        assert_eq!(tau(2, 3).unwrap(), 2);
        assert_eq!(phi(7, 1).unwrap(), 1);
        for d in 1..6 {
            assert_eq!(eta(d, 2).unwrap(), 1);
            assert_eq!(bound(d, 2).unwrap(), d + 3);
            assert_eq!(phi(d, 2).unwrap(), 2);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(phi(0, 3).is_err());
        assert!(phi(2, 0).is_err());
        assert!(tau(2, 1).is_err());
        assert!(eta(2, 1).is_err());
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(200, 100), Err(Error::Overflow));
    }

    /// Independent route: count subsets directly instead of a product formula.
    fn binomial_by_subsets(n: u64, i: u64) -> u64 {
        (0u32..1 << n).filter(|m| u64::from(m.count_ones()) == i).count() as u64
    }

    #[test]
    fn binomial_matches_subset_count() {
        for n in 0..12 {
            for i in 0..14 {
                assert_eq!(binomial(n, i).unwrap(), binomial_by_subsets(n, i));
            }
        }
    }

    #[test]
    fn tau_plus_eta_is_phi_and_pascal_holds() {
        for d in 1..=6 {
            for k in 2..=12 {
                let t = CountingTriple::new(d, k).unwrap();
                assert_eq!(t.tau + t.eta, t.phi, "d={d} k={k}");
                assert_eq!(t.bound, (d + 1) * t.eta + k);
                for i in 1..=d {
                    assert_eq!(
                        binomial(k - 1, i).unwrap(),
                        binomial(k - 2, i).unwrap() + binomial(k - 2, i - 1).unwrap()
                    );
                }
                assert_eq!(phi(d, k).unwrap() - phi(d, k - 1).unwrap(), t.tau);
            }
        }
    }
}
