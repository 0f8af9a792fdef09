//! Colored point sets: separation along two colors, the dual halfspace
//! system used in Kirchberger-type arguments, partition by hyperplanes along
//! `k` colors, and extraction of small non-partitionable witnesses.
//!
//! A colored set `S` is *partitioned by hyperplanes along the colors* when
//! some family of hyperplanes avoids `S`, separates every two points of
//! different colors, and never separates two points of the same color.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use itertools::Itertools;
use num_rational::BigRational;

use crate::divisions::{MemberSet, Partition};
use crate::fm::{self, Inequality};
use crate::geom::{enclosing_hyperplane, realize, separate_scaled, Point, Scaled};
use crate::{counting, Error, HDivision, Hyperplane, PointConfig, PointId, Rat, Result};

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ColorId(pub u32);

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A total map from point ids to colors. `k` counts the colors in use, so
/// every color class is nonempty.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Coloring {
    map: BTreeMap<PointId, ColorId>,
}

impl Coloring {
    pub fn new(map: BTreeMap<PointId, ColorId>) -> Coloring {
        Coloring { map }
    }

    /// Colors `ids[i]` with `colors[i]`.
    pub fn from_parts(ids: impl IntoIterator<Item = PointId>, colors: impl IntoIterator<Item = u32>) -> Coloring {
        Coloring {
            map: ids.into_iter().zip(colors.into_iter().map(ColorId)).collect(),
        }
    }

    pub fn color(&self, id: PointId) -> Option<ColorId> {
        self.map.get(&id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (PointId, ColorId)> + '_ {
        self.map.iter().map(|(&p, &c)| (p, c))
    }

    /// Distinct colors in increasing order.
    pub fn colors(&self) -> Vec<ColorId> {
        let set: BTreeSet<ColorId> = self.map.values().copied().collect();
        set.into_iter().collect()
    }

    pub fn k(&self) -> usize {
        self.colors().len()
    }

    /// Color classes keyed by color, each sorted by id.
    pub fn classes(&self) -> BTreeMap<ColorId, Vec<PointId>> {
        let mut out: BTreeMap<ColorId, Vec<PointId>> = BTreeMap::new();
        for (&p, &c) in &self.map {
            out.entry(c).or_default().push(p);
        }
        out
    }

    /// Lowest id of every color, in color order.
    pub fn representatives(&self) -> Vec<PointId> {
        self.classes().values().map(|class| class[0]).collect()
    }

    pub(crate) fn restrict(&self, ids: &BTreeSet<PointId>) -> Coloring {
        Coloring {
            map: self
                .map
                .iter()
                .filter(|(p, _)| ids.contains(p))
                .map(|(&p, &c)| (p, c))
                .collect(),
        }
    }

    pub(crate) fn check_covers(&self, ids: impl Iterator<Item = PointId>) -> Result<()> {
        let ids: BTreeSet<PointId> = ids.collect();
        if let Some(&id) = ids.iter().find(|id| !self.map.contains_key(id)) {
            return Err(Error::UncoloredPoint(id));
        }
        if let Some(&id) = self.map.keys().find(|id| !ids.contains(id)) {
            return Err(Error::UnknownPoint(id));
        }
        Ok(())
    }
}

fn scaled_of<'a>(config: &'a PointConfig, ids: impl IntoIterator<Item = &'a PointId>) -> Vec<&'a Scaled> {
    ids.into_iter()
        .map(|&id| config.point(id).expect("ids come from the configuration").scaled())
        .collect()
}

/// Strict separation of `points` into those with `in_plus` true (on `h⁺`)
/// and the rest (on `h⁻`). A one-sided split is always separable.
fn split_separable(points: &[&Point], dim: usize, in_plus: impl Fn(PointId) -> bool) -> Option<Hyperplane> {
    let (plus, minus): (Vec<&Point>, Vec<&Point>) = points.iter().partition(|p| in_plus(p.id()));
    match (plus.is_empty(), minus.is_empty()) {
        (_, true) => Some(enclosing_hyperplane(plus, dim)),
        (true, false) => Some(enclosing_hyperplane(minus, dim).flipped()),
        (false, false) => {
            let sp: Vec<&Scaled> = plus.iter().map(|p| p.scaled()).collect();
            let sm: Vec<&Scaled> = minus.iter().map(|p| p.scaled()).collect();
            separate_scaled(&sp, &sm, dim)
        }
    }
}

fn two_colors(config: &PointConfig) -> Result<(&Coloring, Vec<ColorId>)> {
    let coloring = config.require_coloring()?;
    let colors = coloring.colors();
    if colors.len() > 2 {
        return Err(Error::TooManyColors {
            max: 2,
            found: colors.len(),
        });
    }
    Ok((coloring, colors))
}

/// A hyperplane with the lower color on `h⁺` and the other color on `h⁻`.
/// With a single color every point lands on `h⁺`.
pub fn separable_along_colors(config: &PointConfig) -> Result<Option<Hyperplane>> {
    let (coloring, colors) = two_colors(config)?;
    let first = colors[0];
    let points: Vec<&Point> = config.points().iter().collect();
    Ok(split_separable(&points, config.dim(), |id| coloring.color(id) == Some(first)))
}

/// One dual halfspace: `{λ : λ·coeffs < 1}` when the point shares the pivot's
/// color, `{λ : λ·coeffs > 1}` otherwise. `coeffs` is the point translated so
/// the pivot sits at the origin.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualHalfspace {
    pub id: PointId,
    pub coeffs: Vec<Rat>,
    pub same_color: bool,
}

impl DualHalfspace {
    pub fn contains(&self, lambda: &[Rat]) -> bool {
        let dot = lambda.iter().zip(&self.coeffs).fold(Rat::zero(), |acc, (l, a)| acc + l * a);
        if self.same_color {
            dot < Rat::one()
        } else {
            dot > Rat::one()
        }
    }
}

/// The halfspace system `{H_a : a ≠ p}` of a 2-colored set with pivot `p`.
///
/// A hyperplane `λ·(x - p) = 1` misses `p`, puts `p` on its `< 1` side, and
/// separates `a` from `p` iff `λ·(a - p) > 1`. Hence a subset containing `p`
/// is separable along the colors iff its halfspaces have a common point.
#[derive(Clone, Debug)]
pub struct HellyDual {
    pivot: PointId,
    pivot_coords: Vec<Rat>,
    halfspaces: Vec<DualHalfspace>,
}

impl HellyDual {
    pub fn new(config: &PointConfig, pivot: PointId) -> Result<HellyDual> {
        let (coloring, _) = two_colors(config)?;
        let p = config.require(pivot)?;
        let red = coloring.color(pivot);
        let halfspaces = config
            .points()
            .iter()
            .filter(|a| a.id() != pivot)
            .map(|a| DualHalfspace {
                id: a.id(),
                coeffs: a.coords().iter().zip(p.coords()).map(|(x, o)| x - o).collect(),
                same_color: coloring.color(a.id()) == red,
            })
            .collect();
        Ok(HellyDual {
            pivot,
            pivot_coords: p.coords().to_vec(),
            halfspaces,
        })
    }

    pub fn pivot(&self) -> PointId {
        self.pivot
    }

    pub fn halfspaces(&self) -> &[DualHalfspace] {
        &self.halfspaces
    }

    /// A point in every halfspace, if the system has one.
    pub fn common_point(&self) -> Option<Vec<Rat>> {
        Self::solve(self.pivot_coords.len(), self.halfspaces.iter())
    }

    /// A common point of the halfspaces indexed by `ids` (the pivot, if
    /// listed, is ignored).
    pub fn common_point_of(&self, ids: &[PointId]) -> Result<Option<Vec<Rat>>> {
        let mut chosen = Vec::with_capacity(ids.len());
        for &id in ids {
            if id == self.pivot {
                continue;
            }
            chosen.push(
                self.halfspaces
                    .iter()
                    .find(|h| h.id == id)
                    .ok_or(Error::UnknownPoint(id))?,
            );
        }
        Ok(Self::solve(self.pivot_coords.len(), chosen.into_iter()))
    }

    fn solve<'a>(dim: usize, halfspaces: impl Iterator<Item = &'a DualHalfspace>) -> Option<Vec<Rat>> {
        // Homogenize λ = μ / t with t >= 1 and margin 1:
        //   same color:  t - μ·a >= 1,    other color:  μ·a - t >= 1.
        let mut rows = Vec::new();
        for h in halfspaces {
            let sign = if h.same_color { -Rat::one() } else { Rat::one() };
            let mut coeffs: Vec<BigRational> = h.coeffs.iter().map(|c| (c * &sign).as_big().clone()).collect();
            coeffs.push((-&sign).as_big().clone());
            rows.push(Inequality::from_rationals(&coeffs, BigRational::from_integer(1.into())));
        }
        let mut t_row = alloc::vec![BigRational::from_integer(0.into()); dim];
        t_row.push(BigRational::from_integer(1.into()));
        rows.push(Inequality::from_rationals(&t_row, BigRational::from_integer(1.into())));
        let mut x: Vec<Rat> = fm::feasible_point(dim + 1, &rows)?.into_iter().map(Rat::from_big).collect();
        let t = x.pop().unwrap();
        Some(x.iter().map(|m| m / &t).collect())
    }

    /// The separating hyperplane `λ·(x - p) = 1`, oriented so the pivot's
    /// color lies on `h⁺`.
    pub fn hyperplane(&self, lambda: &[Rat]) -> Result<Hyperplane> {
        let mut lambda = lambda.to_vec();
        if lambda.iter().all(Rat::is_zero) && self.halfspaces.iter().all(|h| h.same_color) {
            // λ = 0 only works for one color; tilt it slightly so it is a
            // real hyperplane and every `λ·(a - p) < 1` stays strict.
            let spread = self
                .halfspaces
                .iter()
                .map(|h| h.coeffs[0].abs())
                .fold(Rat::zero(), |m, v| if v > m { v } else { m });
            lambda[0] = Rat::one() / (spread + Rat::one());
        }
        let shift = lambda.iter().zip(&self.pivot_coords).fold(Rat::one(), |acc, (l, p)| acc + l * p);
        Hyperplane::new(lambda.iter().map(|l| -l).collect(), -shift)
    }
}

/// Subsets of `ids` with exactly `size` elements, each sorted, in
/// lexicographic order.
pub(crate) fn lex_subsets(ids: &[PointId], size: usize) -> impl Iterator<Item = Vec<PointId>> + '_ {
    ids.iter().copied().combinations(size)
}

/// A subset containing `pivot` of size at most `d + 2` that is not separable
/// along the colors, or `None` when the whole set is separable. Candidates
/// are scanned smallest first, lexicographically by ids within a size.
pub fn kirchberger_witness(config: &PointConfig, pivot: PointId) -> Result<Option<Vec<PointId>>> {
    let (coloring, colors) = two_colors(config)?;
    config.require(pivot)?;
    if separable_along_colors(config)?.is_some() {
        return Ok(None);
    }
    let first = colors[0];
    let in_plus = |id: PointId| coloring.color(id) == Some(first);
    let ids = config.sorted_ids();
    for size in 1..=config.dim() + 2 {
        let mut candidates: Vec<Vec<PointId>> = lex_subsets(&ids, size).filter(|s| s.contains(&pivot)).collect();
        candidates.sort();
        for s in candidates {
            let pts: Vec<&Point> = s.iter().map(|&id| config.point(id).unwrap()).collect();
            if split_separable(&pts, config.dim(), in_plus).is_none() {
                return Ok(Some(s));
            }
        }
    }
    Err(Error::Verification(format!(
        "no inseparable subset of size <= {} contains point {pivot}",
        config.dim() + 2
    )))
}

/// Whether every subset of at most `d + 2` points (containing `pivot`, if
/// given) is separable along the colors.
pub fn small_subsets_separable(config: &PointConfig, pivot: Option<PointId>) -> Result<bool> {
    let (coloring, colors) = two_colors(config)?;
    let first = colors[0];
    let ids = config.sorted_ids();
    for size in 1..=(config.dim() + 2).min(ids.len()) {
        for s in lex_subsets(&ids, size) {
            if pivot.is_some_and(|p| !s.contains(&p)) {
                continue;
            }
            let pts: Vec<&Point> = s.iter().map(|&id| config.point(id).unwrap()).collect();
            if split_separable(&pts, config.dim(), |id| coloring.color(id) == Some(first)).is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Extends a partition of one representative per color to the whole set:
/// each block becomes the union of the color classes it represents.
pub fn extend_partition(p: &Partition, config: &PointConfig) -> Result<Partition> {
    let coloring = config.require_coloring()?;
    let reps = p.support();
    let rep_colors: BTreeSet<ColorId> = reps.iter().filter_map(|&id| coloring.color(id)).collect();
    if reps.iter().any(|&id| config.point(id).is_none())
        || rep_colors.len() != reps.len()
        || rep_colors.len() != coloring.k()
    {
        return Err(Error::BadRepresentatives);
    }
    let classes = coloring.classes();
    let blocks = p
        .blocks()
        .iter()
        .map(|block| {
            block
                .iter()
                .flat_map(|&id| classes[&coloring.color(id).unwrap()].iter().copied())
                .collect()
        })
        .collect();
    Partition::new(blocks)
}

/// A family of hyperplanes partitioning a colored set along its colors.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Certificate {
    pub family: Vec<(Hyperplane, Partition)>,
}

impl Certificate {
    /// Re-checks the three defining conditions with exact arithmetic.
    pub fn verify(&self, config: &PointConfig) -> Result<bool> {
        let coloring = config.require_coloring()?;
        for (h, part) in &self.family {
            // Avoids every point, and the recorded partition is the realized one.
            match realize(h, config) {
                Ok(r) if r == *part => {}
                _ => return Ok(false),
            }
        }
        for (p, q) in config.points().iter().tuple_combinations() {
            let same = coloring.color(p.id()) == coloring.color(q.id());
            let split = self.family.iter().any(|(h, _)| h.side(p.coords()) != h.side(q.coords()));
            if same == split {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }
}

/// Grouping of color indices: bit `i` set puts color `i` on the first side.
/// Canonical masks have bit 0 set.
fn canonical(mask: u32, full: u32) -> u32 {
    if mask & 1 == 1 {
        mask
    } else {
        !mask & full
    }
}

/// Hyperplanes tried, keyed by canonical mask, and the masks chosen.
type Groupings = (BTreeMap<u32, Option<Hyperplane>>, BTreeSet<u32>);

/// Grouping search: for every pair of colors, a grouping of the color
/// classes into two sides that splits the pair and is strictly separable.
/// Returns the separating hyperplane of each grouping tried (keyed by
/// canonical mask) and the groupings chosen, or `None` if some pair has no
/// separable grouping.
fn grouping_search(config: &PointConfig) -> Result<Option<Groupings>> {
    let coloring = config.require_coloring()?;
    let colors = coloring.colors();
    let k = colors.len();
    if k > 31 {
        return Err(Error::TooManyColors { max: 31, found: k });
    }
    let classes = coloring.classes();
    let class_of: Vec<&Vec<PointId>> = colors.iter().map(|c| &classes[c]).collect();
    let full = (1u32 << k) - 1;
    let mut tried: BTreeMap<u32, Option<Hyperplane>> = BTreeMap::new();
    let mut chosen: BTreeSet<u32> = BTreeSet::new();
    for (i, j) in (0..k).tuple_combinations() {
        // A grouping chosen for an earlier pair may already split this one.
        if chosen.iter().any(|&m| (m >> i & 1) != (m >> j & 1)) {
            continue;
        }
        let mut found = None;
        for mask in 1..full {
            if mask >> i & 1 == 0 || mask >> j & 1 == 1 {
                continue;
            }
            let key = canonical(mask, full);
            let result = tried.entry(key).or_insert_with(|| {
                let (plus, minus): (Vec<usize>, Vec<usize>) = (0..k).partition(|&c| key >> c & 1 == 1);
                let a = scaled_of(config, plus.iter().flat_map(|&c| class_of[c].iter()));
                let b = scaled_of(config, minus.iter().flat_map(|&c| class_of[c].iter()));
                separate_scaled(&a, &b, config.dim())
            });
            if result.is_some() {
                found = Some(key);
                break;
            }
        }
        match found {
            Some(key) => {
                chosen.insert(key);
            }
            None => return Ok(None),
        }
    }
    Ok(Some((tried, chosen)))
}

/// Decides partitionability with the grouping search and, when it succeeds,
/// thins the collected hyperplanes by a greedy cover of the color pairs.
pub fn is_partitionable(config: &PointConfig) -> Result<Option<Certificate>> {
    let k = config.require_coloring()?.k();
    if k <= 1 {
        return Ok(Some(Certificate::default()));
    }
    let Some((tried, mut chosen)) = grouping_search(config)? else {
        return Ok(None);
    };
    let mut uncovered: BTreeSet<(usize, usize)> = (0..k).tuple_combinations().collect();
    let mut family = Vec::new();
    while !uncovered.is_empty() {
        let covers = |m: u32| uncovered.iter().filter(|&&(i, j)| (m >> i & 1) != (m >> j & 1)).count();
        let best = *chosen.iter().max_by_key(|&&m| (covers(m), core::cmp::Reverse(m))).unwrap();
        chosen.remove(&best);
        uncovered.retain(|&(i, j)| (best >> i & 1) == (best >> j & 1));
        let h = tried[&best].clone().unwrap();
        let part = realize(&h, config)?;
        family.push((h, part));
    }
    let cert = Certificate { family };
    if !cert.verify(config)? {
        return Err(Error::Verification("partition certificate failed re-verification".into()));
    }
    Ok(Some(cert))
}

/// Like [`is_partitionable`] without building a certificate.
fn partitionable_decision(config: &PointConfig) -> Result<bool> {
    if config.require_coloring()?.k() <= 1 {
        return Ok(true);
    }
    Ok(grouping_search(config)?.is_some())
}

/// Independent route to partitionability: keep the members of `H(X)` that
/// split no color class and test whether they separate every color pair.
pub fn is_partitionable_via_h(config: &PointConfig) -> Result<bool> {
    let coloring = config.require_coloring()?;
    let colors = coloring.colors();
    if colors.len() <= 1 {
        return Ok(true);
    }
    let hx = HDivision::enumerate(config);
    let classes = coloring.classes();
    let respecting: Vec<&Partition> = hx
        .members()
        .iter()
        .filter(|p| {
            classes.values().all(|class| {
                let b = p.block_of(class[0]);
                class.iter().all(|&id| p.block_of(id) == b)
            })
        })
        .collect();
    Ok(colors.iter().tuple_combinations().all(|(ci, cj)| {
        let (a, b) = (classes[ci][0], classes[cj][0]);
        respecting.iter().any(|p| p.block_of(a) != p.block_of(b))
    }))
}

/// A small non-partitionable subset together with the intermediate objects
/// of its construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessReport {
    pub witness: Vec<PointId>,
    /// One point per color (the lowest id of each color).
    pub representatives: Vec<PointId>,
    /// Members of `H(Y)` in the minimalized transversal.
    pub transversal: Vec<Partition>,
    /// Every pair `(a, b)` of representatives with `sep(a, b | Y)` equal to
    /// the minimalized transversal.
    pub transversal_pairs: Vec<(PointId, PointId)>,
    /// For each transversal member `P`: a set of at most `d + 2` points
    /// meeting `Y` that cannot be separated along the extension of `P`.
    pub per_member_sets: Vec<(Partition, Vec<PointId>)>,
    pub size_bound: u64,
}

/// Builds a non-partitionable subset of at most `(d+1)·eta(d, k) + k`
/// points.
///
/// With `Y` one point per color, the members of `H(Y)` whose extension to
/// the whole set is not realizable form a transversal of the full
/// subdivisions of `H(Y)`. After minimalizing it, each remaining member
/// contributes a small subset that cannot be split along its extension.
pub fn witness_nonpartitionable(config: &PointConfig) -> Result<WitnessReport> {
    let coloring = config.require_coloring()?;
    let k = coloring.k();
    if k < 2 {
        return Err(Error::InvalidParameter("need at least two colors"));
    }
    if is_partitionable(config)?.is_some() {
        return Err(Error::Partitionable);
    }
    let dim = config.dim();
    let mut reps = coloring.representatives();
    reps.sort();
    let hy = HDivision::enumerate(&config.subset(&reps)?);
    let classes = coloring.classes();

    let extension_realizable = |p: &Partition| -> Result<bool> {
        if p.blocks().len() == 1 {
            return Ok(true);
        }
        let ext = extend_partition(p, config)?;
        let a = scaled_of(config, ext.blocks()[0].iter());
        let b = scaled_of(config, ext.blocks()[1].iter());
        Ok(separate_scaled(&a, &b, dim).is_some())
    };
    let mut bad = MemberSet::new();
    for (i, p) in hy.members().iter().enumerate() {
        if !extension_realizable(p)? {
            bad.insert(i);
        }
    }
    let division = hy.division();
    if !division.is_transversal(&bad)? {
        return Err(Error::Verification(
            "non-extendable members of H(Y) do not form a transversal".into(),
        ));
    }
    let minimal = division.minimalize_transversal(&bad)?;
    let transversal_pairs: Vec<(PointId, PointId)> = reps
        .iter()
        .tuple_combinations()
        .filter(|(&a, &b)| division.sep_set(a, b).map(|s| s == minimal).unwrap_or(false))
        .map(|(&a, &b)| (a, b))
        .collect();
    if transversal_pairs.is_empty() {
        return Err(Error::Verification("minimal transversal is not of the form sep(a, b)".into()));
    }

    let ids = config.sorted_ids();
    let in_y = |id: &PointId| reps.binary_search(id).is_ok();
    let mut per_member_sets = Vec::new();
    for &m in &minimal {
        let p = &hy.members()[m];
        let ext = extend_partition(p, config)?;
        let plus: BTreeSet<PointId> = ext.blocks()[0].iter().copied().collect();
        let mut found = None;
        'search: for size in 2..=dim + 2 {
            for s in lex_subsets(&ids, size) {
                if !s.iter().any(in_y) {
                    continue;
                }
                let pts: Vec<&Point> = s.iter().map(|&id| config.point(id).unwrap()).collect();
                if split_separable(&pts, dim, |id| plus.contains(&id)).is_none() {
                    found = Some(s);
                    break 'search;
                }
            }
        }
        let Some(s) = found else {
            return Err(Error::Verification(format!(
                "no subset of size <= {} meeting the representatives blocks the extension of {p:?}",
                dim + 2
            )));
        };
        per_member_sets.push((p.clone(), s));
    }

    let mut witness: BTreeSet<PointId> = reps.iter().copied().collect();
    for (_, s) in &per_member_sets {
        witness.extend(s.iter().copied());
    }
    let witness: Vec<PointId> = witness.into_iter().collect();
    let size_bound = counting::bound(dim as u64, k as u64)?;
    if witness.len() as u64 > size_bound {
        return Err(Error::Verification(format!(
            "witness of {} points exceeds the bound {size_bound}",
            witness.len()
        )));
    }
    if is_partitionable(&config.subset(&witness)?)?.is_some() {
        return Err(Error::Verification("extracted witness is partitionable".into()));
    }
    debug_assert_eq!(classes.len(), k);
    Ok(WitnessReport {
        witness,
        representatives: reps,
        transversal: minimal.iter().map(|&m| hy.members()[m].clone()).collect(),
        transversal_pairs,
        per_member_sets,
        size_bound,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TheoremCheck {
    Partitionable(Certificate),
    Witness(WitnessReport),
}

/// Either a certificate for the whole set or a verified non-partitionable
/// subset within the size bound.
pub fn verify_main_theorem(config: &PointConfig) -> Result<TheoremCheck> {
    match is_partitionable(config)? {
        Some(cert) => Ok(TheoremCheck::Partitionable(cert)),
        None => Ok(TheoremCheck::Witness(witness_nonpartitionable(config)?)),
    }
}

/// Size of a smallest non-partitionable subset, or `None` if the whole set
/// is partitionable. Partitionability passes to subsets, so every smaller
/// subset is partitionable.
pub fn smallest_nonpartitionable(config: &PointConfig, max_size: usize) -> Result<Option<Vec<PointId>>> {
    if partitionable_decision(config)? {
        return Ok(None);
    }
    let coloring = config.require_coloring()?;
    let ids = config.sorted_ids();
    for size in 2..=max_size.min(ids.len()) {
        for s in lex_subsets(&ids, size) {
            // Only subsets with two or more colors can fail.
            let first = coloring.color(s[0]);
            if s.iter().all(|&id| coloring.color(id) == first) {
                continue;
            }
            if !partitionable_decision(&config.subset(&s)?)? {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}
