//! Points, hyperplanes and the exact predicates built on them.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::colorful::Coloring;
use crate::divisions::Partition;
use crate::fm::{self, Inequality};
use crate::{Error, Rat, Result};

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PointId(pub u32);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Integer image of a rational point: `coords = scale · x` with `scale > 0`
/// the least common denominator of `x`.
#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Scaled {
    pub coords: Vec<BigInt>,
    pub scale: BigInt,
}

impl Scaled {
    fn of(coords: &[Rat]) -> Scaled {
        let mut scale = BigInt::one();
        for c in coords {
            scale = scale.lcm(c.denom());
        }
        let coords = coords
            .iter()
            .map(|c| c.numer() * (&scale / c.denom()))
            .collect();
        Scaled { coords, scale }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Point {
    id: PointId,
    coords: Vec<Rat>,
    scaled: Scaled,
}

impl Point {
    pub fn new(id: PointId, coords: Vec<Rat>) -> Point {
        let scaled = Scaled::of(&coords);
        Point { id, coords, scaled }
    }

    pub fn id(&self) -> PointId {
        self.id
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub(crate) fn scaled(&self) -> &Scaled {
        &self.scaled
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{:?}", self.id, self.coords)
    }
}

/// A finite labeled point set in `R^dim`, optionally colored.
///
/// Ids and coordinate vectors are pairwise distinct, and a coloring, when
/// present, covers exactly the ids of the configuration.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointConfig {
    dim: usize,
    points: Vec<Point>,
    coloring: Option<Coloring>,
}

impl PointConfig {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<PointConfig> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut ids = BTreeSet::new();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.dim(),
                });
            }
            if !ids.insert(p.id) {
                return Err(Error::DuplicateId(p.id));
            }
        }
        let mut by_coords: Vec<&Point> = points.iter().collect();
        by_coords.sort_by(|a, b| a.coords.cmp(&b.coords));
        for (a, b) in by_coords.iter().tuple_windows() {
            if a.coords == b.coords {
                let (lo, hi) = if a.id < b.id { (a.id, b.id) } else { (b.id, a.id) };
                return Err(Error::DuplicatePoint(lo, hi));
            }
        }
        Ok(PointConfig {
            dim,
            points,
            coloring: None,
        })
    }

    /// Builds a configuration with ids `0..n` in the given order.
    pub fn from_coords(dim: usize, coords: Vec<Vec<Rat>>) -> Result<PointConfig> {
        let points = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| Point::new(PointId(i as u32), c))
            .collect();
        PointConfig::new(dim, points)
    }

    /// Integer-coordinate convenience constructor, ids `0..n`.
    pub fn from_ints(dim: usize, coords: &[&[i64]]) -> Result<PointConfig> {
        PointConfig::from_coords(
            dim,
            coords
                .iter()
                .map(|c| c.iter().map(|&v| Rat::from(v)).collect())
                .collect(),
        )
    }

    pub fn with_coloring(mut self, coloring: Coloring) -> Result<PointConfig> {
        coloring.check_covers(self.ids())?;
        self.coloring = Some(coloring);
        Ok(self)
    }

    pub fn without_coloring(mut self) -> PointConfig {
        self.coloring = None;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn ids(&self) -> impl Iterator<Item = PointId> + '_ {
        self.points.iter().map(|p| p.id)
    }

    pub fn sorted_ids(&self) -> Vec<PointId> {
        let mut ids: Vec<_> = self.ids().collect();
        ids.sort();
        ids
    }

    pub fn point(&self, id: PointId) -> Option<&Point> {
        self.points.iter().find(|p| p.id == id)
    }

    pub fn require(&self, id: PointId) -> Result<&Point> {
        self.point(id).ok_or(Error::UnknownPoint(id))
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        self.coloring.as_ref()
    }

    pub fn require_coloring(&self) -> Result<&Coloring> {
        self.coloring.as_ref().ok_or(Error::MissingColoring)
    }

    /// The sub-configuration on `ids`, in this configuration's order. The
    /// coloring, if any, is restricted along.
    pub fn subset(&self, ids: &[PointId]) -> Result<PointConfig> {
        let wanted: BTreeSet<PointId> = ids.iter().copied().collect();
        for id in &wanted {
            self.require(*id)?;
        }
        let points: Vec<Point> = self
            .points
            .iter()
            .filter(|p| wanted.contains(&p.id))
            .cloned()
            .collect();
        let mut sub = PointConfig::new(self.dim, points)?;
        if let Some(c) = &self.coloring {
            sub.coloring = Some(c.restrict(&wanted));
        }
        Ok(sub)
    }

    /// Same ids (and coloring) with every coordinate vector replaced by `f`.
    pub fn map_coords(&self, mut f: impl FnMut(&Point) -> Vec<Rat>) -> Result<PointConfig> {
        let points = self.points.iter().map(|p| Point::new(p.id, f(p))).collect();
        let mut out = PointConfig::new(self.dim, points)?;
        out.coloring = self.coloring.clone();
        Ok(out)
    }
}

/// An affine hyperplane `normal · x = offset`. Its positive side `h⁺` is
/// `normal · x > offset` and its negative side `h⁻` is `normal · x < offset`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hyperplane {
    normal: Vec<Rat>,
    offset: Rat,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rat>, offset: Rat) -> Result<Hyperplane> {
        if normal.iter().all(Rat::is_zero) {
            return Err(Error::ZeroNormal);
        }
        Ok(Hyperplane { normal, offset })
    }

    pub fn normal(&self) -> &[Rat] {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal · x - offset`.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        let mut acc = -&self.offset;
        for (n, c) in self.normal.iter().zip(x) {
            acc = acc + n * c;
        }
        acc
    }

    /// +1 on `h⁺`, -1 on `h⁻`, 0 on the hyperplane.
    pub fn side(&self, x: &[Rat]) -> i8 {
        self.eval(x).signum()
    }

    /// Same hyperplane with the sides exchanged.
    pub fn flipped(&self) -> Hyperplane {
        Hyperplane {
            normal: self.normal.iter().map(|n| -n).collect(),
            offset: -&self.offset,
        }
    }
}

fn check_dims<'a>(points: impl IntoIterator<Item = &'a Point>, dim: usize) -> Result<()> {
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
    }
    Ok(())
}

/// Exact sign of a square integer determinant by Bareiss elimination.
fn det_sign(mut m: Vec<Vec<BigInt>>) -> i8 {
    let n = m.len();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return 0;
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let last = &m[n - 1][n - 1];
    if last.is_positive() {
        sign
    } else if last.is_negative() {
        -sign
    } else {
        0
    }
}

/// Sign of `det [[1, p_0], …, [1, p_d]]` for `d + 1` points in `R^d`. Zero iff
/// the points are affinely dependent.
pub fn orient(points: &[&Point], dim: usize) -> Result<i8> {
    if points.len() != dim + 1 {
        return Err(Error::WrongPointCount {
            expected: dim + 1,
            found: points.len(),
        });
    }
    check_dims(points.iter().copied(), dim)?;
    let rows = points
        .iter()
        .map(|p| {
            let s = p.scaled();
            let mut row = Vec::with_capacity(dim + 1);
            row.push(s.scale.clone());
            row.extend(s.coords.iter().cloned());
            row
        })
        .collect();
    Ok(det_sign(rows))
}

/// Dimension of the affine hull of `points` (`-1` is never returned; an
/// empty slice has rank 0).
pub fn affine_rank(points: &[&Point]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    let mut rows: Vec<Vec<BigRational>> = rest
        .iter()
        .map(|p| {
            p.coords()
                .iter()
                .zip(first.coords())
                .map(|(a, b)| (a - b).as_big().clone())
                .collect()
        })
        .collect();
    let cols = first.dim();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let (top, rest) = rows.split_at_mut(r);
            let (pivot_row, row) = (&top[rank], &mut rest[0]);
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= p * &factor;
            }
        }
        rank += 1;
    }
    rank
}

/// No `d + 1` points lie on a common hyperplane. With at most `d` points the
/// whole set must be affinely independent.
pub fn general_position(config: &PointConfig) -> bool {
    let d = config.dim();
    let pts: Vec<&Point> = config.points().iter().collect();
    if pts.len() <= d {
        return affine_rank(&pts) + 1 == pts.len();
    }
    pts.iter()
        .copied()
        .combinations(d + 1)
        .all(|tuple| orient(&tuple, d).map(|s| s != 0).unwrap_or(false))
}

pub(crate) fn separate_scaled(a: &[&Scaled], b: &[&Scaled], dim: usize) -> Option<Hyperplane> {
    // Unknowns (normal_1, …, normal_d, offset); margin-1 normalization:
    //   normal·a - offset >= 1,   offset - normal·b >= 1.
    let row = |s: &Scaled, positive: bool| {
        let mut coeffs = Vec::with_capacity(dim + 1);
        if positive {
            coeffs.extend(s.coords.iter().cloned());
            coeffs.push(-&s.scale);
        } else {
            coeffs.extend(s.coords.iter().map(|c| -c));
            coeffs.push(s.scale.clone());
        }
        Inequality {
            coeffs,
            rhs: BigRational::from_integer(s.scale.clone()),
        }
    };
    let rows: Vec<Inequality> = a
        .iter()
        .map(|s| row(s, true))
        .chain(b.iter().map(|s| row(s, false)))
        .collect();
    let x = fm::feasible_point(dim + 1, &rows)?;
    let mut x: Vec<Rat> = x.into_iter().map(Rat::from_big).collect();
    let offset = x.pop().unwrap();
    Hyperplane::new(x, offset).ok()
}

/// A hyperplane with every point of `a` in `h⁺` and every point of `b` in
/// `h⁻`, if one exists. Such a hyperplane exists iff the convex hulls of the
/// two sets are disjoint.
pub fn strict_separate(a: &[&Point], b: &[&Point], dim: usize) -> Result<Option<Hyperplane>> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    check_dims(a.iter().chain(b).copied(), dim)?;
    let sa: Vec<&Scaled> = a.iter().map(|p| p.scaled()).collect();
    let sb: Vec<&Scaled> = b.iter().map(|p| p.scaled()).collect();
    let Some(h) = separate_scaled(&sa, &sb, dim) else {
        return Ok(None);
    };
    let ok = a.iter().all(|p| h.side(p.coords()) > 0) && b.iter().all(|p| h.side(p.coords()) < 0);
    if !ok {
        return Err(Error::Verification(format!(
            "separating witness {h:?} violates a strict inequality"
        )));
    }
    Ok(Some(h))
}

/// The partition `{X ∩ h⁺, X ∩ h⁻}` with an empty side dropped.
pub fn realize(h: &Hyperplane, config: &PointConfig) -> Result<Partition> {
    if h.dim() != config.dim() {
        return Err(Error::DimensionMismatch {
            expected: config.dim(),
            found: h.dim(),
        });
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for p in config.points() {
        match h.side(p.coords()) {
            1 => plus.push(p.id()),
            -1 => minus.push(p.id()),
            _ => return Err(Error::PointOnHyperplane(p.id())),
        }
    }
    let blocks = [plus, minus].into_iter().filter(|b| !b.is_empty()).collect();
    Partition::new(blocks)
}

/// A hyperplane with all of `points` strictly on its positive side.
pub(crate) fn enclosing_hyperplane<'a>(points: impl IntoIterator<Item = &'a Point>, dim: usize) -> Hyperplane {
    let min = points
        .into_iter()
        .map(|p| p.coords()[0].clone())
        .min()
        .unwrap_or_else(Rat::zero);
    let mut normal = alloc::vec![Rat::zero(); dim];
    normal[0] = Rat::one();
    Hyperplane {
        normal,
        offset: (min - Rat::one()).floor(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn pts(dim: usize, coords: &[&[i64]]) -> PointConfig {
        PointConfig::from_ints(dim, coords).unwrap()
    }

    fn refs(c: &PointConfig) -> Vec<&Point> {
        c.points().iter().collect()
    }

    #[test]
    fn orient_examples() {
        let line = pts(1, &[&[0], &[1]]);
        assert_ne!(orient(&refs(&line), 1).unwrap(), 0);
        let col = pts(2, &[&[0, 0], &[1, 0], &[2, 0]]);
        assert_eq!(orient(&refs(&col), 2).unwrap(), 0);
        let tri = pts(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(orient(&refs(&tri), 2).unwrap(), 1);
        assert!(matches!(
            orient(&refs(&tri)[..2], 2),
            Err(Error::WrongPointCount { .. })
        ));
        let bad = Point::new(PointId(9), vec![Rat::zero()]);
        let p = refs(&tri);
        assert!(matches!(
            orient(&[p[0], p[1], &bad], 2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn general_position_examples() {
        assert!(!general_position(&pts(2, &[&[0, 0], &[1, 0], &[2, 0], &[0, 1]])));
        assert!(general_position(&pts(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]])));
        assert!(general_position(&pts(3, &[&[0, 0, 0]])));
        // Three collinear points in R^3 lie in too small an affine hull.
        assert!(!general_position(&pts(3, &[&[0, 0, 0], &[1, 1, 1], &[2, 2, 2]])));
        assert!(general_position(&pts(1, &[&[3], &[-1], &[7]])));
    }

    #[test]
    fn config_rejects_duplicates() {
        assert_eq!(
            PointConfig::from_ints(2, &[&[0, 0], &[1, 1], &[0, 0]]),
            Err(Error::DuplicatePoint(PointId(0), PointId(2)))
        );
        let p = Point::new(PointId(1), vec![Rat::zero()]);
        let q = Point::new(PointId(1), vec![Rat::one()]);
        assert_eq!(PointConfig::new(1, vec![p, q]), Err(Error::DuplicateId(PointId(1))));
    }

    #[test]
    fn strict_separate_examples() {
        let c = pts(1, &[&[0], &[1]]);
        let p = refs(&c);
        let h = strict_separate(&[p[0]], &[p[1]], 1).unwrap().unwrap();
        assert_eq!(h.side(p[0].coords()), 1);
        assert_eq!(h.side(p[1].coords()), -1);

        let xor = pts(2, &[&[0, 0], &[1, 1], &[1, 0], &[0, 1]]);
        let p = refs(&xor);
        assert!(strict_separate(&[p[0], p[1]], &[p[2], p[3]], 2).unwrap().is_none());
        assert_eq!(strict_separate(&[], &[p[0]], 2), Err(Error::EmptyInput));
    }

    #[test]
    fn realize_examples() {
        let c = pts(1, &[&[0], &[1]]);
        let half = Hyperplane::new(vec![Rat::one()], Rat::new(1, 2).unwrap()).unwrap();
        let part = realize(&half, &c).unwrap();
        assert_eq!(part.blocks().len(), 2);
        let far = Hyperplane::new(vec![Rat::one()], Rat::from(5)).unwrap();
        assert_eq!(realize(&far, &c).unwrap().blocks().len(), 1);
        let on = Hyperplane::new(vec![Rat::one()], Rat::one()).unwrap();
        assert_eq!(realize(&on, &c), Err(Error::PointOnHyperplane(PointId(1))));
        assert_eq!(
            Hyperplane::new(vec![Rat::zero()], Rat::one()),
            Err(Error::ZeroNormal)
        );
    }

    #[test]
    fn enclosing_hyperplane_has_everything_on_one_side() {
        let c = PointConfig::from_coords(
            2,
            vec![
                vec![Rat::new(-7, 3).unwrap(), Rat::zero()],
                vec![Rat::from(4), Rat::from(-2)],
            ],
        )
        .unwrap();
        let h = enclosing_hyperplane(c.points(), 2);
        assert!(c.points().iter().all(|p| h.side(p.coords()) == 1));
    }

    fn small_config(dim: usize, max_len: usize) -> impl Strategy<Value = PointConfig> {
        proptest::collection::btree_set(
            proptest::collection::vec(-4i64..=4, dim),
            dim + 1..=max_len,
        )
        .prop_map(move |set| {
            PointConfig::from_coords(
                dim,
                set.into_iter()
                    .map(|c| c.into_iter().map(Rat::from).collect())
                    .collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn orient_antisymmetric_and_translation_invariant(
            c in small_config(2, 3),
            shift in proptest::collection::vec(-5i64..=5, 2),
        ) {
            let p = refs(&c);
            let s = orient(&p, 2).unwrap();
            prop_assert_eq!(orient(&[p[1], p[0], p[2]], 2).unwrap(), -s);
            let moved = c
                .map_coords(|q| q.coords().iter().zip(&shift).map(|(x, t)| x + Rat::from(*t)).collect())
                .unwrap();
            prop_assert_eq!(orient(&refs(&moved), 2).unwrap(), s);
        }

        #[test]
        fn separation_is_symmetric_and_exact(c in small_config(2, 7), mask in 1u32..64) {
            let p = refs(&c);
            let (a, b): (Vec<&Point>, Vec<&Point>) =
                p.iter().enumerate().partition_map(|(i, q)| {
                    if mask >> i & 1 == 1 { itertools::Either::Left(*q) } else { itertools::Either::Right(*q) }
                });
            prop_assume!(!a.is_empty() && !b.is_empty());
            let ab = strict_separate(&a, &b, 2).unwrap();
            let ba = strict_separate(&b, &a, 2).unwrap();
            prop_assert_eq!(ab.is_some(), ba.is_some());
            if let Some(h) = ab {
                prop_assert!(a.iter().all(|q| h.side(q.coords()) == 1));
                prop_assert!(b.iter().all(|q| h.side(q.coords()) == -1));
            }
        }

        #[test]
        fn realize_covers_exactly(c in small_config(2, 6), n in proptest::collection::vec(-3i64..=3, 2), off in -20i64..20) {
            prop_assume!(n.iter().any(|&v| v != 0));
            // Offsets at half-integers avoid integer lattice points.
            let h = Hyperplane::new(n.into_iter().map(Rat::from).collect(), Rat::new(2 * off + 1, 2).unwrap()).unwrap();
            let part = realize(&h, &c).unwrap();
            let mut all: Vec<PointId> = part.blocks().iter().flatten().copied().collect();
            all.sort();
            prop_assert_eq!(all, c.sorted_ids());
            prop_assert!(part.blocks().iter().all(|b| !b.is_empty()));
        }
    }
}
