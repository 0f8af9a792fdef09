//! `H(X)`: the partitions of a point set realizable by one hyperplane, and
//! the constructions that move a configuration while controlling the sizes
//! of its separating sets.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divisions::{Division, MemberSet, Partition};
use crate::geom::{enclosing_hyperplane, general_position, separate_scaled, Point, Scaled};
use crate::{counting, Error, Hyperplane, PointConfig, PointId, Rat, Result};

/// `H(X)` together with one realizing hyperplane per member.
#[derive(Clone, Debug)]
pub struct HDivision {
    config: PointConfig,
    division: Division,
    witnesses: Vec<Option<Hyperplane>>,
}

fn split_by_mask(points: &[Point], mask: u64) -> (Vec<usize>, Vec<usize>) {
    // Point 0 always lands in the first block.
    (0..points.len()).partition(|&i| i == 0 || mask >> (i - 1) & 1 == 0)
}

impl HDivision {
    /// Exhaustive enumeration over all `2^(n-1) - 1` nontrivial
    /// bipartitions, each tested with the exact separation oracle.
    pub fn enumerate(config: &PointConfig) -> HDivision {
        let points = config.points();
        let n = points.len();
        assert!(n < 64, "H(X) enumeration is limited to fewer than 64 points");
        let dim = config.dim();
        let ids: Vec<PointId> = config.ids().collect();
        let mut found: BTreeMap<Partition, Option<Hyperplane>> = BTreeMap::new();
        let enclosing = (n >= 2).then(|| enclosing_hyperplane(points, dim));
        found.insert(Partition::trivial(&ids).expect("nonempty support"), enclosing);

        let scaled: Vec<&Scaled> = points.iter().map(Point::scaled).collect();
        for mask in 1..(1u64 << (n - 1)) {
            let (a, b) = split_by_mask(points, mask);
            let sa: Vec<&Scaled> = a.iter().map(|&i| scaled[i]).collect();
            let sb: Vec<&Scaled> = b.iter().map(|&i| scaled[i]).collect();
            if let Some(h) = separate_scaled(&sa, &sb, dim) {
                let part = Partition::new(alloc::vec![
                    a.iter().map(|&i| ids[i]).collect(),
                    b.iter().map(|&i| ids[i]).collect(),
                ])
                .expect("bipartition of distinct ids");
                found.insert(part, Some(h));
            }
        }
        let witnesses = found.values().cloned().collect();
        let division = Division::new(ids, found.into_keys()).expect("members share the support");
        HDivision {
            config: config.clone(),
            division,
            witnesses,
        }
    }

    pub fn config(&self) -> &PointConfig {
        &self.config
    }

    pub fn division(&self) -> &Division {
        &self.division
    }

    pub fn len(&self) -> usize {
        self.division.len()
    }

    pub fn is_empty(&self) -> bool {
        self.division.is_empty()
    }

    pub fn members(&self) -> &[Partition] {
        self.division.members()
    }

    pub fn witness(&self, member: usize) -> Option<&Hyperplane> {
        self.witnesses.get(member).and_then(Option::as_ref)
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.division.index_of(p)
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.index_of(p).is_some()
    }

    pub fn sep(&self, a: PointId, b: PointId) -> Result<MemberSet> {
        self.division.sep_set(a, b)
    }

    pub fn notsep(&self, a: PointId, b: PointId) -> Result<MemberSet> {
        self.division.notsep_set(a, b)
    }
}

/// Output of [`shrink_to_min`].
#[derive(Clone, Debug)]
pub struct Shrink {
    /// The moved configuration; the moved point keeps the id of `a`.
    pub config: PointConfig,
    pub moved: PointId,
    /// `c = b + t·(a - b)`.
    pub t: Rat,
    pub sep_size: usize,
    pub tau: u64,
}

const MAX_HALVINGS: u32 = 64;

/// Moves `a` towards `b` along the segment until `|sep(c, b)|` drops to the
/// minimum `tau(d, k)`.
///
/// Candidates are `c = b + t·(a - b)` for `t = 1/2, 1/4, …`. A candidate is
/// accepted once `c` lies on the `b` side of every stored witness of
/// `sep(a, b | X)`, the moved set is in general position, and the count is
/// confirmed by enumerating the moved `H`.
pub fn shrink_to_min(config: &PointConfig, a: PointId, b: PointId) -> Result<Shrink> {
    if a == b {
        return Err(Error::SamePoint(a));
    }
    if !general_position(config) {
        return Err(Error::NotGeneralPosition);
    }
    let pa = config.require(a)?.coords().to_vec();
    let pb = config.require(b)?.coords().to_vec();
    let k = config.len() as u64;
    let tau = counting::tau(config.dim() as u64, k)?;
    let hx = HDivision::enumerate(config);
    let sep = hx.sep(a, b)?;
    let witnesses: Vec<&Hyperplane> = sep
        .iter()
        .map(|&m| hx.witness(m).expect("nontrivial members carry witnesses"))
        .collect();

    let mut t = Rat::one();
    let half = Rat::new(1, 2).unwrap();
    for _ in 0..MAX_HALVINGS {
        t = &t * &half;
        let c: Vec<Rat> = pb.iter().zip(&pa).map(|(vb, va)| vb + &t * (va - vb)).collect();
        if witnesses.iter().any(|h| h.side(&c) != h.side(&pb)) {
            continue;
        }
        let Ok(moved) = config.map_coords(|p| if p.id() == a { c.clone() } else { p.coords().to_vec() }) else {
            continue;
        };
        if !general_position(&moved) {
            continue;
        }
        let size = HDivision::enumerate(&moved).sep(a, b)?.len();
        if size as u64 == tau {
            return Ok(Shrink {
                config: moved,
                moved: a,
                t,
                sep_size: size,
                tau,
            });
        }
    }
    Err(Error::Verification(format!(
        "no point on the segment from {b} to {a} reached |sep| = {tau} after {MAX_HALVINGS} halvings"
    )))
}

/// Output of [`projective_flip`]. Ids are preserved, so `a' = a`, `b' = b`.
#[derive(Clone, Debug)]
pub struct Flip {
    pub config: PointConfig,
    pub sep_before: usize,
    pub sep_after: usize,
    pub phi: u64,
    /// `(index in H(X) of a member not separating a, b; index in H(X') of its
    /// image, which separates a', b')`.
    pub bijection: Vec<(usize, usize)>,
}

/// Relabels each point by the parity of its block in `q` and in `p`.
fn xor_partitions(q: &Partition, p: &Partition) -> Result<Partition> {
    let mut sides: [Vec<PointId>; 2] = [Vec::new(), Vec::new()];
    for id in q.support() {
        let parity = (q.block_of(id).unwrap() + p.block_of(id).ok_or(Error::UnknownPoint(id))?) % 2;
        sides[parity].push(id);
    }
    Partition::new(sides.into_iter().filter(|s| !s.is_empty()).collect())
}

/// Sends the realizing hyperplane of `H(X)[member]` to infinity.
///
/// After translating so the hyperplane `h` misses the origin and writing it
/// as `λ·x = 1`, every point maps to `x / (λ·x - 1)`. A member `Q` of
/// `notsep(a, b | X)` corresponds to the member of the new `H` whose blocks
/// are the parity classes of `Q` and `P`; this correspondence is checked to
/// be a bijection onto `sep(a, b | X')`.
pub fn projective_flip(config: &PointConfig, a: PointId, b: PointId, member: usize) -> Result<Flip> {
    if a == b {
        return Err(Error::SamePoint(a));
    }
    if !general_position(config) {
        return Err(Error::NotGeneralPosition);
    }
    let hx = HDivision::enumerate(config);
    let sep = hx.sep(a, b)?;
    if member >= hx.len() {
        return Err(Error::UnknownMember(member));
    }
    if !sep.contains(&member) {
        return Err(Error::NotSeparating);
    }
    let h = hx.witness(member).expect("separating members carry witnesses");
    let p = &hx.members()[member];

    let shift: Vec<Rat> = if h.offset().is_zero() {
        h.normal().to_vec()
    } else {
        alloc::vec![Rat::zero(); config.dim()]
    };
    let shifted_offset = h
        .normal()
        .iter()
        .zip(&shift)
        .fold(h.offset().clone(), |acc, (n, s)| acc + n * s);
    let lambda: Vec<Rat> = h.normal().iter().map(|n| n / &shifted_offset).collect();

    let mut on_h = None;
    let flipped = config.map_coords(|pt| {
        let y: Vec<Rat> = pt.coords().iter().zip(&shift).map(|(x, s)| x + s).collect();
        let w = lambda.iter().zip(&y).fold(-Rat::one(), |acc, (l, v)| acc + l * v);
        if w.is_zero() {
            on_h = Some(pt.id());
            return y;
        }
        y.iter().map(|v| v / &w).collect()
    });
    if let Some(id) = on_h {
        return Err(Error::PointOnHyperplane(id));
    }
    let flipped = flipped.map_err(|e| Error::Verification(format!("flip collapsed points: {e}")))?;
    if !general_position(&flipped) {
        return Err(Error::Verification("flipped configuration left general position".into()));
    }

    let hy = HDivision::enumerate(&flipped);
    let sep_after = hy.sep(a, b)?;
    let phi = counting::phi(config.dim() as u64, config.len() as u64)?;
    let mut bijection = Vec::new();
    let mut images = BTreeSet::new();
    for q in hx.notsep(a, b)? {
        let image = xor_partitions(&hx.members()[q], p)?;
        let Some(j) = hy.index_of(&image) else {
            return Err(Error::Verification(format!("image of member {q} is not realizable after the flip")));
        };
        if !sep_after.contains(&j) || !images.insert(j) {
            return Err(Error::Verification(format!("image of member {q} breaks the bijection")));
        }
        bijection.push((q, j));
    }
    if images.len() != sep_after.len() || (sep.len() + sep_after.len()) as u64 != phi {
        return Err(Error::Verification(format!(
            "|sep| + |sep'| = {} + {} differs from phi = {phi}",
            sep.len(),
            sep_after.len()
        )));
    }
    Ok(Flip {
        config: flipped,
        sep_before: sep.len(),
        sep_after: sep_after.len(),
        phi,
        bijection,
    })
}

/// Output of [`perturb`].
#[derive(Clone, Debug)]
pub struct Perturbation {
    pub config: PointConfig,
    pub attempts: u32,
    pub h_before: usize,
    pub h_after: usize,
}

pub const DEFAULT_PERTURB_ATTEMPTS: u32 = 64;

const PERTURB_BITS: u32 = 16;

/// Moves every coordinate by a seeded offset of magnitude at most `2^-j` on
/// attempt `j` until the result is in general position and every member of
/// `H(X)` is still realizable on the moved points.
pub fn perturb(config: &PointConfig, seed: u64) -> Result<Perturbation> {
    perturb_with(config, seed, DEFAULT_PERTURB_ATTEMPTS)
}

pub fn perturb_with(config: &PointConfig, seed: u64, max_attempts: u32) -> Result<Perturbation> {
    if config.len() < 2 {
        return Err(Error::InvalidParameter("perturbation needs at least two points"));
    }
    let hx = HDivision::enumerate(config);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reach = 1i64 << PERTURB_BITS;
    let mut last = config.clone();
    for attempt in 1..=max_attempts {
        let denom = num_bigint::BigInt::from(1u8) << (attempt + PERTURB_BITS);
        let candidate = config.map_coords(|p| {
            p.coords()
                .iter()
                .map(|x| x + Rat::new(rng.gen_range(-reach..=reach), denom.clone()).unwrap())
                .collect()
        });
        let Ok(candidate) = candidate else { continue };
        let embeds = general_position(&candidate) && embeds_into(&hx, &candidate);
        if embeds {
            let h_after = HDivision::enumerate(&candidate).len();
            return Ok(Perturbation {
                config: candidate,
                attempts: attempt,
                h_before: hx.len(),
                h_after,
            });
        }
        last = candidate;
    }
    Err(Error::RetryExhausted {
        attempts: max_attempts,
        last: alloc::boxed::Box::new(last),
    })
}

/// Every member of `hx` (as id blocks) is realizable on `target`.
pub fn embeds_into(hx: &HDivision, target: &PointConfig) -> bool {
    let lookup = |id: PointId| target.point(id).map(Point::scaled);
    hx.members().iter().all(|p| match p.blocks() {
        [_] => true,
        [u, v] => {
            let (Some(su), Some(sv)) = (
                u.iter().map(|&id| lookup(id)).collect::<Option<Vec<_>>>(),
                v.iter().map(|&id| lookup(id)).collect::<Option<Vec<_>>>(),
            ) else {
                return false;
            };
            separate_scaled(&su, &sv, target.dim()).is_some()
        }
        _ => false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberReport {
    pub h_full: usize,
    pub h_deleted: usize,
    pub sep_size: usize,
    /// Every restriction of a member of `H(X)` lies in `H(X \ {a})`.
    pub restrictions_realizable: bool,
    /// Every member of `H(X \ {a})` is such a restriction.
    pub onto: bool,
    pub max_fiber: usize,
}

impl FiberReport {
    pub fn holds(&self) -> bool {
        self.restrictions_realizable
            && self.onto
            && self.max_fiber <= 2
            && self.h_full - self.h_deleted <= self.sep_size
    }
}

/// Compares `H(X)` with `H(X \ {a})` through restriction.
pub fn deletion_fiber_check(config: &PointConfig, a: PointId, b: PointId) -> Result<FiberReport> {
    if config.len() < 2 {
        return Err(Error::InvalidParameter("need at least two points"));
    }
    if a == b {
        return Err(Error::SamePoint(a));
    }
    config.require(b)?;
    let rest: Vec<PointId> = config.ids().filter(|&id| id != a).collect();
    if rest.len() == config.len() {
        return Err(Error::UnknownPoint(a));
    }
    let hx = HDivision::enumerate(config);
    let hxa = HDivision::enumerate(&config.subset(&rest)?);
    let mut fibers: BTreeMap<Partition, usize> = BTreeMap::new();
    for p in hx.members() {
        *fibers.entry(p.restrict(&rest)?).or_default() += 1;
    }
    let restrictions_realizable = fibers.keys().all(|r| hxa.contains(r));
    let onto = hxa.members().iter().all(|r| fibers.contains_key(r));
    Ok(FiberReport {
        h_full: hx.len(),
        h_deleted: hxa.len(),
        sep_size: hx.sep(a, b)?.len(),
        restrictions_realizable,
        onto,
        max_fiber: fibers.values().copied().max().unwrap_or(0),
    })
}
