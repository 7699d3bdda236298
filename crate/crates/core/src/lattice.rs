//! The intersection lattice L(A): flats as closed sets of hyperplane indices,
//! localization and restriction, the characteristic polynomial, and the
//! modular-chain test for supersolvability.
//!
//! Flats are stored as index bitsets, never as subspaces: equality, dedup and
//! interval computations are set operations, and subspaces are computed on
//! demand only for restriction. Order convention: the partial order X <= Y of
//! the lattice corresponds to X.members being a subset of Y.members, so all
//! code works with member sets to avoid sign errors. The lattice is built
//! level by level; every rank-(k+1) flat is the closure of a rank-k flat
//! together with one extra hyperplane.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bitset::IndexSet;
use crate::error::{Error, Result};
use crate::exactfield::poly::{z_format, ZPoly};
use crate::geometry::{intersect_kernels, restrict_functional, Arrangement, Functional, Subspace};

/// A lattice element: the closed set of hyperplanes containing a subspace,
/// together with the codimension of that subspace.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Flat {
    pub members: IndexSet,
    pub rank: usize,
}

/// The closure of a set of hyperplane indices: all hyperplanes containing the
/// common intersection of the set.
pub fn closure(a: &Arrangement, set: IndexSet) -> Flat {
    let kernel = intersect_kernels(
        a.dim(),
        a.field(),
        set.iter().map(|i| a.functional(i)),
    );
    members_containing(a, &kernel)
}

/// All hyperplanes of `a` containing the given subspace, as a flat.
pub fn members_containing(a: &Arrangement, subspace: &Subspace) -> Flat {
    let mut members = IndexSet::EMPTY;
    for (j, f) in a.hyperplanes().iter().enumerate() {
        let vanishes = subspace.basis().iter().all(|b| f.evaluate(b).is_zero());
        if vanishes {
            members.insert(j);
        }
    }
    Flat {
        members,
        rank: a.dim() - subspace.dim(),
    }
}

/// The localization A_X: the sub-arrangement of hyperplanes containing the
/// flat X, in the same ambient space and input order.
pub fn localization(a: &Arrangement, x: &Flat) -> Result<Arrangement> {
    let closed = closure(a, x.members);
    if closed.members != x.members {
        return Err(Error::NotAFlat(x.members.to_string()));
    }
    Ok(a.subarrangement(x.members))
}

/// The localization A_U at an arbitrary subspace: hyperplanes containing U.
/// Equals the localization at the flat closure of U.
pub fn localization_at_subspace(a: &Arrangement, u: &Subspace) -> Arrangement {
    let flat = members_containing(a, u);
    a.subarrangement(flat.members)
}

/// The restriction A^X, with the trace recording, for every hyperplane of A
/// not containing X, the index of its image inside X. Coincident restrictions
/// are deduplicated (first occurrence wins), so several hyperplanes may trace
/// to the same image.
pub fn restriction_with_trace(a: &Arrangement, x: &Flat) -> (Arrangement, Vec<Option<usize>>) {
    let kernel = intersect_kernels(
        a.dim(),
        a.field(),
        x.members.iter().map(|i| a.functional(i)),
    );
    let mut images: Vec<Functional> = Vec::new();
    let mut seen: HashMap<Functional, usize> = HashMap::new();
    let mut trace = vec![None; a.len()];
    for (j, f) in a.hyperplanes().iter().enumerate() {
        if x.members.contains(j) {
            continue;
        }
        let restricted = restrict_functional(f, &kernel)
            .expect("hyperplane not containing the flat restricts to a nonzero functional");
        let idx = match seen.get(&restricted) {
            Some(&idx) => idx,
            None => {
                let idx = images.len();
                images.push(restricted.clone());
                seen.insert(restricted, idx);
                idx
            }
        };
        trace[j] = Some(idx);
    }
    let restricted = Arrangement::from_functionals(kernel.dim(), a.field(), images)
        .expect("restricted functionals are deduplicated");
    (restricted, trace)
}

/// The restriction A^X of A to the flat X.
pub fn restriction(a: &Arrangement, x: &Flat) -> Result<Arrangement> {
    let closed = closure(a, x.members);
    if closed.members != x.members {
        return Err(Error::NotAFlat(x.members.to_string()));
    }
    Ok(restriction_with_trace(a, x).0)
}

/// The full intersection lattice of a central arrangement.
///
/// Flats are sorted by (rank, member bitset), which is the canonical report
/// order used everywhere.
pub struct IntersectionLattice {
    n: usize,
    dim: usize,
    flats: Vec<Flat>,
    rank_ranges: Vec<std::ops::Range<usize>>,
    index_by_members: HashMap<u64, usize>,
    mobius: Vec<BigInt>,
    charpoly: ZPoly,
}

impl IntersectionLattice {
    pub fn build(a: &Arrangement) -> Result<Self> {
        if a.len() > 64 {
            return Err(Error::TooManyHyperplanes(a.len()));
        }
        let n = a.len();
        let bottom = closure(a, IndexSet::EMPTY);
        debug_assert!(bottom.members.is_empty(), "no zero functionals allowed");

        let mut flats: Vec<Flat> = Vec::new();
        let mut rank_ranges: Vec<std::ops::Range<usize>> = Vec::new();
        let mut level: Vec<Flat> = vec![bottom];
        while !level.is_empty() {
            level.sort_by_key(|f| f.members);
            let start = flats.len();
            flats.extend(level.iter().copied());
            rank_ranges.push(start..flats.len());

            let mut tried: HashSet<u64> = HashSet::new();
            let mut next: Vec<Flat> = Vec::new();
            for flat in &level {
                for j in 0..n {
                    if flat.members.contains(j) {
                        continue;
                    }
                    let mut gen = flat.members;
                    gen.insert(j);
                    if !tried.insert(gen.0) {
                        continue;
                    }
                    // A generating set inside an already-found flat of the
                    // next rank closes to exactly that flat.
                    if next.iter().any(|f| gen.is_subset(f.members)) {
                        continue;
                    }
                    let cand = closure(a, gen);
                    debug_assert_eq!(cand.rank, flat.rank + 1);
                    if !next.iter().any(|f| f.members == cand.members) {
                        next.push(cand);
                    }
                }
            }
            level = next;
        }

        let index_by_members: HashMap<u64, usize> = flats
            .iter()
            .enumerate()
            .map(|(i, f)| (f.members.0, i))
            .collect();

        // Moebius function by recursive inversion over the member-set order.
        let mut mobius = vec![BigInt::zero(); flats.len()];
        for i in 0..flats.len() {
            if i == 0 {
                mobius[0] = BigInt::from(1);
                continue;
            }
            let mut acc = BigInt::zero();
            for j in 0..i {
                if flats[j].members.is_proper_subset(flats[i].members) {
                    acc += &mobius[j];
                }
            }
            mobius[i] = -acc;
        }

        let mut charpoly = vec![BigInt::zero(); a.dim() + 1];
        for (i, f) in flats.iter().enumerate() {
            charpoly[a.dim() - f.rank] += &mobius[i];
        }

        Ok(IntersectionLattice {
            n,
            dim: a.dim(),
            flats,
            rank_ranges,
            index_by_members,
            mobius,
            charpoly,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplane_count(&self) -> usize {
        self.n
    }

    /// Rank of the arrangement: rank of the maximal flat.
    pub fn rank(&self) -> usize {
        self.rank_ranges.len() - 1
    }

    /// All flats, sorted by (rank, member bitset).
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flats_of_rank(&self, rank: usize) -> &[Flat] {
        match self.rank_ranges.get(rank) {
            Some(range) => &self.flats[range.clone()],
            None => &[],
        }
    }

    /// The center: the unique maximal flat of a central arrangement.
    pub fn center(&self) -> &Flat {
        let top = self.flats.last().expect("lattice has at least the flat V");
        debug_assert_eq!(top.members, IndexSet::full(self.n));
        top
    }

    pub fn flat_index(&self, members: IndexSet) -> Option<usize> {
        self.index_by_members.get(&members.0).copied()
    }

    pub fn mobius(&self, flat_index: usize) -> &BigInt {
        &self.mobius[flat_index]
    }

    /// chi(A, t) as integer coefficients, ascending degree.
    pub fn charpoly(&self) -> &ZPoly {
        &self.charpoly
    }

    pub fn charpoly_string(&self) -> String {
        z_format(&self.charpoly, "t")
    }

    /// Join (least upper bound): the minimal flat containing the union.
    pub fn join_index(&self, x: usize, y: usize) -> usize {
        let union = self.flats[x].members.union(self.flats[y].members);
        if let Some(i) = self.flat_index(union) {
            return i;
        }
        self.flats
            .iter()
            .position(|f| union.is_subset(f.members))
            .expect("the center contains every union")
    }

    /// Meet (greatest lower bound): member-set intersection, which is closed.
    pub fn meet_index(&self, x: usize, y: usize) -> usize {
        let inter = self.flats[x].members.intersection(self.flats[y].members);
        self.flat_index(inter)
            .expect("the intersection of closed sets is closed")
    }

    /// Whether the flat is a modular lattice element:
    /// r(X) + r(Y) = r(X v Y) + r(X ^ Y) for every flat Y.
    pub fn is_modular(&self, flat_index: usize) -> bool {
        let rx = self.flats[flat_index].rank;
        (0..self.flats.len()).all(|y| {
            let ry = self.flats[y].rank;
            let join = self.flats[self.join_index(flat_index, y)].rank;
            let meet = self.flats[self.meet_index(flat_index, y)].rank;
            rx + ry == join + meet
        })
    }

    /// A maximal chain V = X_0 < X_1 < ... < X_r = center of modular flats
    /// with r(X_i) = i, if one exists. Greedy over the canonical flat order
    /// with backtracking.
    pub fn modular_chain(&self) -> Option<Vec<Flat>> {
        let target = self.rank();
        let mut modular_cache: HashMap<usize, bool> = HashMap::new();
        let mut chain = vec![0usize];
        if self.search_chain(target, &mut chain, &mut modular_cache) {
            Some(chain.into_iter().map(|i| self.flats[i]).collect())
        } else {
            None
        }
    }

    fn search_chain(
        &self,
        target: usize,
        chain: &mut Vec<usize>,
        modular_cache: &mut HashMap<usize, bool>,
    ) -> bool {
        let current = *chain.last().expect("chain starts at V");
        let rank = self.flats[current].rank;
        if rank == target {
            return true;
        }
        let range = self.rank_ranges[rank + 1].clone();
        for cand in range {
            if !self.flats[current]
                .members
                .is_subset(self.flats[cand].members)
            {
                continue;
            }
            let modular = *modular_cache
                .entry(cand)
                .or_insert_with(|| self.is_modular(cand));
            if !modular {
                continue;
            }
            chain.push(cand);
            if self.search_chain(target, chain, modular_cache) {
                return true;
            }
            chain.pop();
        }
        false
    }
}

/// Supersolvability with a witness chain of modular flats.
pub fn is_supersolvable(a: &Arrangement) -> Result<Option<Vec<Flat>>> {
    Ok(IntersectionLattice::build(a)?.modular_chain())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{FieldContext, FieldElement, Rational};
    use num_bigint::BigInt as BI;

    fn qv(coords: &[i64]) -> Vec<FieldElement> {
        coords
            .iter()
            .map(|&c| FieldElement::Rational(Rational::from(BI::from(c))))
            .collect()
    }

    fn braid3() -> Arrangement {
        Arrangement::new(
            3,
            FieldContext::Rational,
            vec![qv(&[1, -1, 0]), qv(&[1, 0, -1]), qv(&[0, 1, -1])],
        )
        .unwrap()
    }

    fn boolean(l: usize) -> Arrangement {
        let rows = (0..l)
            .map(|i| {
                let mut row = vec![0i64; l];
                row[i] = 1;
                qv(&row)
            })
            .collect();
        Arrangement::new(l, FieldContext::Rational, rows).unwrap()
    }

    #[test]
    fn closure_examples() {
        let a = braid3();
        // x2 - x3 contains the line x1 = x2 = x3.
        let c = closure(&a, IndexSet::from_indices([0, 1]));
        assert_eq!(c.members, IndexSet::from_indices([0, 1, 2]));
        assert_eq!(c.rank, 2);

        let empty = closure(&a, IndexSet::EMPTY);
        assert_eq!(empty.members, IndexSet::EMPTY);
        assert_eq!(empty.rank, 0);

        let b = boolean(2);
        let single = closure(&b, IndexSet::singleton(0));
        assert_eq!(single.members, IndexSet::singleton(0));
        assert_eq!(single.rank, 1);
    }

    #[test]
    fn lattice_of_braid3() {
        let a = braid3();
        let lat = IntersectionLattice::build(&a).unwrap();
        assert_eq!(lat.flats().len(), 5);
        assert_eq!(lat.flats_of_rank(0).len(), 1);
        assert_eq!(lat.flats_of_rank(1).len(), 3);
        assert_eq!(lat.flats_of_rank(2).len(), 1);
        assert_eq!(lat.rank(), 2);
        // chi = t(t-1)(t-2) = t^3 - 3t^2 + 2t
        let expected: Vec<BI> = [0i64, 2, -3, 1].iter().map(|&c| BI::from(c)).collect();
        assert_eq!(lat.charpoly(), &expected);
        assert_eq!(lat.charpoly_string(), "t^3 - 3*t^2 + 2*t");
    }

    #[test]
    fn lattice_of_empty_and_boolean() {
        let empty = Arrangement::empty(3, FieldContext::Rational);
        let lat = IntersectionLattice::build(&empty).unwrap();
        assert_eq!(lat.flats().len(), 1);
        let expected: Vec<BI> = [0i64, 0, 0, 1].iter().map(|&c| BI::from(c)).collect();
        assert_eq!(lat.charpoly(), &expected);

        let b3 = boolean(3);
        let lat = IntersectionLattice::build(&b3).unwrap();
        assert_eq!(lat.flats().len(), 8, "boolean lattice");

        let b2 = boolean(2);
        let lat = IntersectionLattice::build(&b2).unwrap();
        let expected: Vec<BI> = [1i64, -2, 1].iter().map(|&c| BI::from(c)).collect();
        assert_eq!(lat.charpoly(), &expected, "(t-1)^2");
    }

    #[test]
    fn rank_one_flat_count_matches_hyperplane_count() {
        for a in [braid3(), boolean(3)] {
            let lat = IntersectionLattice::build(&a).unwrap();
            assert_eq!(lat.flats_of_rank(1).len(), a.len());
        }
    }

    #[test]
    fn localization_examples() {
        let a = braid3();
        let lat = IntersectionLattice::build(&a).unwrap();
        let v = lat.flats()[0];
        assert_eq!(localization(&a, &v).unwrap().len(), 0);
        let center = *lat.center();
        assert_eq!(localization(&a, &center).unwrap().len(), 3);
        let c = closure(&a, IndexSet::from_indices([0, 1]));
        assert_eq!(localization(&a, &c).unwrap().len(), 3);

        let not_closed = Flat {
            members: IndexSet::from_indices([0, 1]),
            rank: 2,
        };
        assert!(matches!(
            localization(&a, &not_closed),
            Err(Error::NotAFlat(_))
        ));
    }

    #[test]
    fn localization_at_subspace_examples() {
        let a = braid3();
        let origin = intersect_kernels(
            3,
            FieldContext::Rational,
            [
                Functional::new(qv(&[1, 0, 0])).unwrap(),
                Functional::new(qv(&[0, 1, 0])).unwrap(),
                Functional::new(qv(&[0, 0, 1])).unwrap(),
            ]
            .iter(),
        );
        assert_eq!(localization_at_subspace(&a, &origin).len(), 3);
        let whole = intersect_kernels(3, FieldContext::Rational, std::iter::empty());
        assert_eq!(localization_at_subspace(&a, &whole).len(), 0);
    }

    #[test]
    fn restriction_examples() {
        let a = braid3();
        let lat = IntersectionLattice::build(&a).unwrap();
        // A^V = A.
        let v = lat.flats()[0];
        let r = restriction(&a, &v).unwrap();
        assert!(r.same_hyperplanes(&a));
        // Restricting braid-3 to a rank-1 flat merges the two other
        // hyperplanes into one line.
        for f in lat.flats_of_rank(1) {
            let r = restriction(&a, f).unwrap();
            assert_eq!(r.dim(), 2);
            assert_eq!(r.len(), 1);
        }
        // Boolean: restriction to ker x1 keeps x2, x3.
        let b = boolean(3);
        let f = closure(&b, IndexSet::singleton(0));
        let r = restriction(&b, &f).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.dim(), 2);
    }

    #[test]
    fn chi_at_one_vanishes_for_nonempty_central() {
        use crate::exactfield::poly::z_eval;
        for a in [braid3(), boolean(2), boolean(3)] {
            let lat = IntersectionLattice::build(&a).unwrap();
            assert_eq!(z_eval(lat.charpoly(), &BI::from(1)), BI::zero());
        }
    }

    #[test]
    fn supersolvable_examples() {
        assert!(is_supersolvable(&boolean(3)).unwrap().is_some());
        let chain = is_supersolvable(&braid3()).unwrap().unwrap();
        assert_eq!(chain.len(), 3);
        assert_eq!(chain[0].rank, 0);
        assert_eq!(chain[2].rank, 2);
    }

    #[test]
    fn localized_lattice_is_the_interval() {
        // Flats of A_X are exactly the closed subsets of X.members.
        let a = braid3();
        let lat = IntersectionLattice::build(&a).unwrap();
        for x in lat.flats() {
            let local = a.subarrangement(x.members);
            let local_lat = IntersectionLattice::build(&local).unwrap();
            let to_global: Vec<usize> = x.members.iter().collect();
            let mut local_members: Vec<IndexSet> = local_lat
                .flats()
                .iter()
                .map(|f| f.members.iter().map(|i| to_global[i]).collect())
                .collect();
            let mut interval: Vec<IndexSet> = lat
                .flats()
                .iter()
                .filter(|f| f.members.is_subset(x.members))
                .map(|f| f.members)
                .collect();
            local_members.sort();
            interval.sort();
            assert_eq!(local_members, interval);
        }
    }
}
