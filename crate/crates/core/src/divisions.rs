//! Partitions of a finite id set, divisions, full subdivisions and their
//! transversals.
//!
//! A division is a support together with a set of partitions of it. A
//! subset of its members is *full* when every pair of distinct support
//! elements is separated by one of them, and a *transversal* when it meets
//! every full subset. Transversality is decided through the complement: `T`
//! is a transversal iff the members outside `T` are not full.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use itertools::Itertools;

use crate::{Error, PointId, Result};

/// Disjoint nonempty blocks covering a support. Blocks are sorted and
/// ordered by their minimum id, so derived equality is set equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    blocks: Vec<Vec<PointId>>,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<PointId>>) -> Result<Partition> {
        let mut blocks: Vec<Vec<PointId>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort();
                b
            })
            .collect();
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks"));
        }
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(Error::InvalidPartition("empty block"));
        }
        if blocks.iter().any(|b| b.windows(2).any(|w| w[0] == w[1])) {
            return Err(Error::InvalidPartition("repeated id inside a block"));
        }
        blocks.sort();
        let total: usize = blocks.iter().map(Vec::len).sum();
        let distinct: BTreeSet<PointId> = blocks.iter().flatten().copied().collect();
        if distinct.len() != total {
            return Err(Error::InvalidPartition("blocks overlap"));
        }
        Ok(Partition { blocks })
    }

    /// The one-block partition `{support}`.
    pub fn trivial(support: &[PointId]) -> Result<Partition> {
        Partition::new(alloc::vec![support.to_vec()])
    }

    pub fn blocks(&self) -> &[Vec<PointId>] {
        &self.blocks
    }

    pub fn support(&self) -> Vec<PointId> {
        let mut s: Vec<PointId> = self.blocks.iter().flatten().copied().collect();
        s.sort();
        s
    }

    pub fn contains(&self, id: PointId) -> bool {
        self.block_of(id).is_some()
    }

    pub fn block_of(&self, id: PointId) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&id).is_ok())
    }

    /// `{U ∩ Y : U ∈ P} \ {∅}`.
    pub fn restrict(&self, target: &[PointId]) -> Result<Partition> {
        if target.is_empty() || target.iter().any(|id| !self.contains(*id)) {
            return Err(Error::BadRestriction);
        }
        let keep: BTreeSet<PointId> = target.iter().copied().collect();
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().copied().filter(|id| keep.contains(id)).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect();
        Partition::new(blocks)
    }

    pub fn separates(&self, a: PointId, b: PointId) -> Result<bool> {
        if a == b {
            return Err(Error::SamePoint(a));
        }
        let ba = self.block_of(a).ok_or(Error::UnknownPoint(a))?;
        let bb = self.block_of(b).ok_or(Error::UnknownPoint(b))?;
        Ok(ba != bb)
    }

    /// Relabels every id through `f`.
    pub fn map_ids(&self, f: impl Fn(PointId) -> PointId) -> Result<Partition> {
        Partition::new(
            self.blocks
                .iter()
                .map(|b| b.iter().map(|&id| f(id)).collect())
                .collect(),
        )
    }
}

/// Sorted indices into [`Division::members`].
pub type MemberSet = BTreeSet<usize>;

/// A support and a deduplicated, canonically ordered family of partitions of
/// that support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Division {
    support: Vec<PointId>,
    members: Vec<Partition>,
}

/// One inclusion-minimal `sep(a, b)`, with every pair that produces it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MinimalTransversal {
    pub pairs: Vec<(PointId, PointId)>,
    pub members: MemberSet,
}

impl MinimalTransversal {
    pub fn pair(&self) -> (PointId, PointId) {
        self.pairs[0]
    }

    pub fn cardinality(&self) -> usize {
        self.members.len()
    }
}

impl Division {
    pub fn new(support: Vec<PointId>, members: impl IntoIterator<Item = Partition>) -> Result<Division> {
        let mut support = support;
        support.sort();
        if support.is_empty() {
            return Err(Error::EmptyInput);
        }
        if support.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateId(support.windows(2).find(|w| w[0] == w[1]).unwrap()[0]));
        }
        let mut set = BTreeSet::new();
        for m in members {
            if m.support() != support {
                return Err(Error::InvalidPartition("member support differs from division support"));
            }
            set.insert(m);
        }
        Ok(Division {
            support,
            members: set.into_iter().collect(),
        })
    }

    pub fn support(&self) -> &[PointId] {
        &self.support
    }

    pub fn members(&self) -> &[Partition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.members.binary_search(p).ok()
    }

    pub fn all_members(&self) -> MemberSet {
        (0..self.members.len()).collect()
    }

    fn check_members(&self, set: &MemberSet) -> Result<()> {
        match set.iter().next_back() {
            Some(&i) if i >= self.members.len() => Err(Error::UnknownMember(i)),
            _ => Ok(()),
        }
    }

    fn check_pair(&self, a: PointId, b: PointId) -> Result<()> {
        if a == b {
            return Err(Error::SamePoint(a));
        }
        for id in [a, b] {
            if self.support.binary_search(&id).is_err() {
                return Err(Error::UnknownPoint(id));
            }
        }
        Ok(())
    }

    fn separated_within(&self, select: impl Fn(usize) -> bool, a: PointId, b: PointId) -> bool {
        self.members
            .iter()
            .enumerate()
            .any(|(i, m)| select(i) && m.block_of(a) != m.block_of(b))
    }

    fn full_within(&self, select: impl Fn(usize) -> bool) -> bool {
        self.support
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| self.separated_within(&select, a, b))
    }

    /// Every pair of distinct support elements is separated by some member.
    pub fn is_full(&self) -> bool {
        self.full_within(|_| true)
    }

    /// Fullness of the subdivision made of the members in `set`.
    pub fn is_full_subset(&self, set: &MemberSet) -> Result<bool> {
        self.check_members(set)?;
        Ok(self.full_within(|i| set.contains(&i)))
    }

    pub fn sep_set(&self, a: PointId, b: PointId) -> Result<MemberSet> {
        self.check_pair(a, b)?;
        Ok(self
            .members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.block_of(a) != m.block_of(b))
            .map(|(i, _)| i)
            .collect())
    }

    pub fn notsep_set(&self, a: PointId, b: PointId) -> Result<MemberSet> {
        let sep = self.sep_set(a, b)?;
        Ok(self.complement(&sep))
    }

    pub fn complement(&self, set: &MemberSet) -> MemberSet {
        (0..self.members.len()).filter(|i| !set.contains(i)).collect()
    }

    /// Whether `set` meets every full subdivision, decided by checking that
    /// its complement is not full.
    pub fn is_transversal(&self, set: &MemberSet) -> Result<bool> {
        if !self.is_full() {
            return Err(Error::NotFull);
        }
        self.check_members(set)?;
        Ok(!self.full_within(|i| !set.contains(&i)))
    }

    /// Drops members of `set` in canonical order whenever the rest is still
    /// a transversal.
    pub fn minimalize_transversal(&self, set: &MemberSet) -> Result<MemberSet> {
        if !self.is_transversal(set)? {
            return Err(Error::NotTransversal);
        }
        let mut current = set.clone();
        for &m in set {
            current.remove(&m);
            if self.full_within(|i| !current.contains(&i)) {
                current.insert(m);
            }
        }
        Ok(current)
    }

    /// All minimal transversals, each an inclusion-minimal `sep(a, b)`,
    /// ordered by their member sets.
    pub fn minimal_transversals(&self) -> Result<Vec<MinimalTransversal>> {
        if self.support.len() < 2 {
            return Err(Error::InvalidParameter("support needs at least two elements"));
        }
        if !self.is_full() {
            return Err(Error::NotFull);
        }
        let mut by_set: BTreeMap<MemberSet, Vec<(PointId, PointId)>> = BTreeMap::new();
        for (&a, &b) in self.support.iter().tuple_combinations() {
            by_set.entry(self.sep_set(a, b)?).or_default().push((a, b));
        }
        let sets: Vec<&MemberSet> = by_set.keys().collect();
        let minimal = by_set
            .iter()
            .filter(|(s, _)| !sets.iter().any(|o| o.len() < s.len() && o.is_subset(s)))
            .map(|(s, pairs)| MinimalTransversal {
                pairs: pairs.clone(),
                members: s.clone(),
            })
            .collect();
        Ok(minimal)
    }

    /// Minimum cardinality of a minimal transversal.
    pub fn tau(&self) -> Result<usize> {
        Ok(self
            .minimal_transversals()?
            .iter()
            .map(MinimalTransversal::cardinality)
            .min()
            .unwrap())
    }

    /// Maximum cardinality of a minimal transversal.
    pub fn eta(&self) -> Result<usize> {
        Ok(self
            .minimal_transversals()?
            .iter()
            .map(MinimalTransversal::cardinality)
            .max()
            .unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn ids(v: &[u32]) -> Vec<PointId> {
        v.iter().map(|&i| PointId(i)).collect()
    }

    fn part(blocks: &[&[u32]]) -> Partition {
        Partition::new(blocks.iter().map(|b| ids(b)).collect()).unwrap()
    }

    /// `H(X)` for three points at 0, 1, 2 on a line.
    fn line3() -> Division {
        Division::new(
            ids(&[0, 1, 2]),
            [part(&[&[0, 1, 2]]), part(&[&[0], &[1, 2]]), part(&[&[0, 1], &[2]])],
        )
        .unwrap()
    }

    #[test]
    fn partition_invariants() {
        assert!(Partition::new(vec![ids(&[1]), vec![]]).is_err());
        assert!(Partition::new(vec![ids(&[1, 2]), ids(&[2])]).is_err());
        assert_eq!(part(&[&[3], &[2, 1]]), part(&[&[1, 2], &[3]]));
        assert_eq!(part(&[&[3], &[2, 1]]).blocks()[0], ids(&[1, 2]));
    }

    #[test]
    fn restrict_examples() {
        let p = part(&[&[1, 2], &[3]]);
        assert_eq!(p.restrict(&ids(&[1, 3])).unwrap(), part(&[&[1], &[3]]));
        assert_eq!(p.restrict(&ids(&[1, 2])).unwrap(), part(&[&[1, 2]]));
        assert_eq!(part(&[&[1], &[2], &[3]]).restrict(&ids(&[2])).unwrap(), part(&[&[2]]));
        assert_eq!(p.restrict(&[]), Err(Error::BadRestriction));
        assert_eq!(p.restrict(&ids(&[4])), Err(Error::BadRestriction));
    }

    #[test]
    fn separates_examples() {
        let p = part(&[&[1], &[2, 3]]);
        assert!(p.separates(PointId(1), PointId(2)).unwrap());
        assert!(!p.separates(PointId(2), PointId(3)).unwrap());
        assert!(!part(&[&[1, 2, 3]]).separates(PointId(1), PointId(3)).unwrap());
        assert_eq!(p.separates(PointId(1), PointId(1)), Err(Error::SamePoint(PointId(1))));
        assert_eq!(p.separates(PointId(1), PointId(7)), Err(Error::UnknownPoint(PointId(7))));
    }

    #[test]
    fn fullness_examples() {
        let trivial = Division::new(ids(&[0, 1]), [part(&[&[0, 1]])]).unwrap();
        assert!(!trivial.is_full());
        let two = Division::new(ids(&[1, 2, 3]), [part(&[&[1], &[2, 3]]), part(&[&[1, 2], &[3]])]).unwrap();
        assert!(two.is_full());
        let single = Division::new(ids(&[5]), [part(&[&[5]])]).unwrap();
        assert!(single.is_full());
        assert!(line3().is_full());
    }

    #[test]
    fn division_dedups_and_checks_support() {
        let d = Division::new(ids(&[0, 1]), [part(&[&[0], &[1]]), part(&[&[1], &[0]])]).unwrap();
        assert_eq!(d.len(), 1);
        assert!(Division::new(ids(&[0, 1, 2]), [part(&[&[0], &[1]])]).is_err());
    }

    #[test]
    fn sep_sets_on_a_line() {
        let d = line3();
        let s02 = d.sep_set(PointId(0), PointId(2)).unwrap();
        let s01 = d.sep_set(PointId(0), PointId(1)).unwrap();
        assert_eq!(s02.len(), 2);
        assert_eq!(s01.len(), 1);
        assert!(s01.is_subset(&s02) && s01 != s02);
        assert_eq!(d.notsep_set(PointId(0), PointId(1)).unwrap().len(), 2);
        assert_eq!(d.sep_set(PointId(0), PointId(0)), Err(Error::SamePoint(PointId(0))));
    }

    #[test]
    fn transversal_examples() {
        let d = line3();
        assert!(d.is_transversal(&d.all_members()).unwrap());
        assert!(!d.is_transversal(&MemberSet::new()).unwrap());
        let s01 = d.sep_set(PointId(0), PointId(1)).unwrap();
        assert!(d.is_transversal(&s01).unwrap());
        let not_full = Division::new(ids(&[0, 1]), [part(&[&[0, 1]])]).unwrap();
        assert_eq!(not_full.is_transversal(&MemberSet::new()), Err(Error::NotFull));
        assert_eq!(d.is_transversal(&[7].into_iter().collect()), Err(Error::UnknownMember(7)));
    }

    #[test]
    fn minimalize_examples() {
        let d = line3();
        let s01 = d.sep_set(PointId(0), PointId(1)).unwrap();
        assert_eq!(d.minimalize_transversal(&s01).unwrap(), s01);

        let from_all = d.minimalize_transversal(&d.all_members()).unwrap();
        let seps: Vec<MemberSet> = [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(a, b)| d.sep_set(PointId(a), PointId(b)).unwrap())
            .collect();
        assert!(seps.contains(&from_all));

        let s02 = d.sep_set(PointId(0), PointId(2)).unwrap();
        let shrunk = d.minimalize_transversal(&s02).unwrap();
        assert_eq!(shrunk.len(), 1);
        assert!(shrunk.is_subset(&s02));
        assert_eq!(d.minimalize_transversal(&MemberSet::new()), Err(Error::NotTransversal));
    }

    #[test]
    fn minimal_transversals_on_a_line() {
        let d = line3();
        let mins = d.minimal_transversals().unwrap();
        let pairs: Vec<_> = mins.iter().map(|m| m.pair()).collect();
        assert_eq!(pairs, vec![(PointId(0), PointId(1)), (PointId(1), PointId(2))]);
        assert!(mins.iter().all(|m| m.cardinality() == 1));
        assert_eq!(d.tau().unwrap(), 1);
        assert_eq!(d.eta().unwrap(), 1);

        let two = Division::new(ids(&[0, 1]), [part(&[&[0, 1]]), part(&[&[0], &[1]])]).unwrap();
        let mins = two.minimal_transversals().unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].cardinality(), 1);
    }

    /// A full division on `0..n` assembled from arbitrary 2-block masks.
    fn random_division() -> impl Strategy<Value = Division> {
        (3u32..=5).prop_flat_map(|n| {
            proptest::collection::vec(1u32..(1 << (n - 1)), 1..8).prop_map(move |masks| {
                let support = (0..n).map(PointId).collect::<Vec<_>>();
                let members = masks.into_iter().map(|m| {
                    // Point 0 always sits in the first block.
                    let (a, b): (Vec<PointId>, Vec<PointId>) = (0..n)
                        .map(PointId)
                        .partition(|id| id.0 == 0 || m >> (id.0 - 1) & 1 == 0);
                    Partition::new(vec![a, b]).unwrap()
                });
                Division::new(support, members).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn transversal_iff_complement_not_full(d in random_division(), pick in proptest::collection::vec(any::<bool>(), 8)) {
            prop_assume!(d.is_full());
            let t: MemberSet = (0..d.len()).filter(|&i| pick[i]).collect();
            let is_t = d.is_transversal(&t).unwrap();
            let comp_full = d.is_full_subset(&d.complement(&t)).unwrap();
            prop_assert!(is_t ^ comp_full);
        }

        #[test]
        fn every_sep_set_is_a_transversal(d in random_division()) {
            prop_assume!(d.is_full());
            for (&a, &b) in d.support().iter().tuple_combinations() {
                prop_assert!(d.is_transversal(&d.sep_set(a, b).unwrap()).unwrap());
            }
        }

        #[test]
        fn restriction_stays_a_partition(d in random_division(), keep in proptest::collection::vec(any::<bool>(), 5)) {
            let target: Vec<PointId> = d.support().iter().copied().filter(|id| keep[id.0 as usize]).collect();
            prop_assume!(!target.is_empty());
            for m in d.members() {
                let r = m.restrict(&target).unwrap();
                prop_assert_eq!(r.support(), target.clone());
            }
        }
    }
}
