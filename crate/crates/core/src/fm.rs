//! Exact Fourier–Motzkin elimination for systems `coeffs · x >= rhs`.
//!
//! Variables are eliminated in index order. Every intermediate row is kept
//! with a primitive integer coefficient vector, rows with identical
//! coefficients are merged keeping the tightest right-hand side, and a
//! feasible system is answered with an explicit rational point obtained by
//! back-substitution in reverse elimination order.
//!
//! Each row remembers which input rows it was combined from. After `t`
//! eliminations a row built from more than `t + 1` inputs is implied by the
//! others (Chernikov's rule) and is dropped, which keeps the row count
//! polynomial in the number of inputs for a fixed number of variables.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Inequality {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigRational,
}

impl Inequality {
    /// `coeffs · x >= rhs` with rational coefficients, scaled to integers.
    pub fn from_rationals(coeffs: &[BigRational], rhs: BigRational) -> Inequality {
        let mut lcm = BigInt::one();
        for c in coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let scale = BigRational::from_integer(lcm.clone());
        let coeffs = coeffs
            .iter()
            .map(|c| (c * &scale).to_integer())
            .collect();
        Inequality {
            coeffs,
            rhs: rhs * scale,
        }
    }
}

/// Input rows a derived row was combined from, as a bitset.
#[derive(Clone, Debug, PartialEq, Eq)]
struct History(Vec<u64>);

impl History {
    fn single(i: usize, inputs: usize) -> History {
        let mut words = alloc::vec![0u64; inputs.div_ceil(64).max(1)];
        words[i / 64] |= 1 << (i % 64);
        History(words)
    }

    fn union(&self, other: &History) -> History {
        History(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
}

/// Right-hand side `numer / scale` of a row, `scale > 0`, in lowest terms.
/// Kept as two integers so elimination never reduces rationals.
#[derive(Clone, Debug)]
struct Row {
    numer: BigInt,
    scale: BigInt,
    history: History,
}

impl Row {
    /// `self.numer / self.scale > other.numer / other.scale`.
    fn tighter_than(&self, other: &Row) -> bool {
        &self.numer * &other.scale > &other.numer * &self.scale
    }

    fn rhs(&self) -> BigRational {
        BigRational::new(self.numer.clone(), self.scale.clone())
    }
}

/// Primitive coefficient vector to its tightest right-hand side.
type RowSet = BTreeMap<Vec<BigInt>, Row>;

enum Insert {
    Kept,
    Infeasible,
}

/// Adds `coeffs · x >= numer / scale` with integer `coeffs`.
fn insert_row(rows: &mut RowSet, mut coeffs: Vec<BigInt>, numer: BigInt, scale: BigInt, history: History) -> Insert {
    let mut g = BigInt::zero();
    for c in &coeffs {
        g = g.gcd(c);
    }
    if g.is_zero() {
        // 0 >= rhs
        return if numer.is_positive() {
            Insert::Infeasible
        } else {
            Insert::Kept
        };
    }
    if !g.is_one() {
        for c in coeffs.iter_mut() {
            *c = &*c / &g;
        }
    }
    let scale = scale * g;
    let r = numer.gcd(&scale);
    let row = if r.is_one() {
        Row { numer, scale, history }
    } else {
        Row {
            numer: numer / &r,
            scale: scale / &r,
            history,
        }
    };
    match rows.get_mut(&coeffs) {
        Some(existing) => {
            if row.tighter_than(existing)
                || (!existing.tighter_than(&row) && row.history.count() < existing.history.count())
            {
                *existing = row;
            }
        }
        None => {
            rows.insert(coeffs, row);
        }
    }
    Insert::Kept
}

/// Eliminates `var`, the `eliminated`-th variable removed (counting from 1).
fn eliminate(rows: &RowSet, var: usize, eliminated: u32) -> Option<RowSet> {
    let mut next = RowSet::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (coeffs, row) in rows {
        let c = &coeffs[var];
        if c.is_positive() {
            pos.push((coeffs, row));
        } else if c.is_negative() {
            neg.push((coeffs, row));
        } else {
            next.insert(coeffs.clone(), row.clone());
        }
    }
    for (pc, pr) in &pos {
        for (nc, nr) in &neg {
            let history = pr.history.union(&nr.history);
            if history.count() > eliminated + 1 {
                continue;
            }
            let p_scale = -&nc[var];
            let n_scale = &pc[var];
            let coeffs: Vec<BigInt> = pc
                .iter()
                .zip(nc.iter())
                .map(|(a, b)| a * &p_scale + b * n_scale)
                .collect();
            // p_scale · pr + n_scale · nr over the common scale.
            let numer = &p_scale * &pr.numer * &nr.scale + n_scale * &nr.numer * &pr.scale;
            let scale = &pr.scale * &nr.scale;
            if let Insert::Infeasible = insert_row(&mut next, coeffs, numer, scale, history) {
                return None;
            }
        }
    }
    Some(next)
}

/// Picks a value in `[lower, upper]`: zero if allowed, else the integer
/// closest to zero, else the bound closest to zero.
fn pick(lower: Option<BigRational>, upper: Option<BigRational>) -> Option<BigRational> {
    if let (Some(l), Some(u)) = (&lower, &upper) {
        if l > u {
            return None;
        }
    }
    let zero = BigRational::zero();
    let above = lower.as_ref().is_none_or(|l| *l <= zero);
    let below = upper.as_ref().is_none_or(|u| *u >= zero);
    if above && below {
        return Some(zero);
    }
    if !above {
        let l = lower.unwrap();
        let c = l.ceil();
        return Some(match &upper {
            Some(u) if c > *u => l,
            _ => c,
        });
    }
    let u = upper.unwrap();
    let f = u.floor();
    Some(match &lower {
        Some(l) if f < *l => u,
        _ => f,
    })
}

/// Returns a point satisfying every row, or `None` when the system is
/// infeasible.
pub(crate) fn feasible_point(nvars: usize, rows: &[Inequality]) -> Option<Vec<BigRational>> {
    let mut first = RowSet::new();
    for (i, row) in rows.iter().enumerate() {
        debug_assert_eq!(row.coeffs.len(), nvars);
        let history = History::single(i, rows.len());
        let (numer, scale) = (row.rhs.numer().clone(), row.rhs.denom().clone());
        if let Insert::Infeasible = insert_row(&mut first, row.coeffs.clone(), numer, scale, history) {
            return None;
        }
    }
    let mut stages = Vec::with_capacity(nvars);
    stages.push(first);
    for var in 0..nvars.saturating_sub(1) {
        let next = eliminate(stages.last().unwrap(), var, var as u32 + 1)?;
        stages.push(next);
    }

    let mut x = alloc::vec![BigRational::zero(); nvars];
    for var in (0..nvars).rev() {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for (coeffs, row) in &stages[var] {
            let c = &coeffs[var];
            let mut rest = row.rhs();
            for (j, cj) in coeffs.iter().enumerate().skip(var + 1) {
                if !cj.is_zero() {
                    rest -= &x[j] * BigRational::from_integer(cj.clone());
                }
            }
            if c.is_zero() {
                // Already implied by a later stage.
                if rest.is_positive() {
                    debug_assert!(false, "back-substitution violated a reduced row");
                    return None;
                }
                continue;
            }
            let bound = rest / BigRational::from_integer(c.clone());
            if c.is_positive() {
                if lower.as_ref().is_none_or(|l| bound > *l) {
                    lower = Some(bound);
                }
            } else if upper.as_ref().is_none_or(|u| bound < *u) {
                upper = Some(bound);
            }
        }
        x[var] = pick(lower, upper)?;
    }
    Some(x)
}
