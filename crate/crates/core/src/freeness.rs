//! Combinatorial inductive-freeness oracle.
//!
//! Membership in the inductively free class is decided recursively: some
//! hyperplane has a deletion and a restriction that are both inductively
//! free with exp A'' contained in exp A', and the exponents compose by the
//! addition-deletion rule. Rank at most 2 is accepted outright: every central
//! rank-2 arrangement with n hyperplanes is free with exponents {1, n-1}
//! (padded with zeros), a classical fact outside this crate's scope to
//! re-derive. Since inductively free arrangements are free, their
//! characteristic polynomials split over the nonnegative integers into the
//! exponents (Terao's factorization); branches whose chi cannot split, or
//! whose deletion/restriction chi disagree with the forced exponent
//! bookkeeping, are pruned without changing any answer. A `None` answer
//! means "not found within the inductively free class", never "not free".

use crate::error::Result;
use crate::exactfield::poly::{z_add, z_deflate_root, z_deg, z_eval, ZPoly};
use crate::geometry::Arrangement;
use crate::lattice::{localization, restriction_with_trace, Flat, IntersectionLattice};

use crate::factorization::search::Engine;

/// A multiset of nonnegative integers, stored sorted ascending. For a free
/// arrangement it has one entry per ambient dimension and sums to |A|.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExponentMultiset {
    values: Vec<usize>,
}

impl ExponentMultiset {
    pub fn new(mut values: Vec<usize>) -> Self {
        values.sort_unstable();
        ExponentMultiset { values }
    }

    pub fn zeros(len: usize) -> Self {
        ExponentMultiset {
            values: vec![0; len],
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }

    /// The nonzero entries, ascending.
    pub fn nonzero(&self) -> Vec<usize> {
        self.values.iter().copied().filter(|&v| v > 0).collect()
    }

    /// Multiset inclusion.
    pub fn is_submultiset_of(&self, other: &ExponentMultiset) -> bool {
        self.difference_from(other).is_some()
    }

    /// `other` minus `self` as multisets, if `self` is contained in `other`.
    fn difference_from(&self, other: &ExponentMultiset) -> Option<Vec<usize>> {
        let mut rest = other.values.clone();
        for v in &self.values {
            let pos = rest.iter().position(|w| w == v)?;
            rest.remove(pos);
        }
        Some(rest)
    }

    pub fn contains(&self, value: usize) -> bool {
        self.values.binary_search(&value).is_ok()
    }

    /// The multiset with one occurrence of `value` removed.
    fn remove_one(&self, value: usize) -> Option<ExponentMultiset> {
        let pos = self.values.binary_search(&value).ok()?;
        let mut values = self.values.clone();
        values.remove(pos);
        Some(ExponentMultiset { values })
    }

    fn with(&self, extra: usize) -> ExponentMultiset {
        let mut values = self.values.clone();
        values.push(extra);
        ExponentMultiset::new(values)
    }
}

impl Engine {
    /// Decide membership in the inductively free class and return the
    /// exponents on success.
    pub fn is_inductively_free(&self, a: &Arrangement) -> Result<Option<ExponentMultiset>> {
        let key = self.arr_key(a);
        self.indfree_memoized(a, key, None)
    }

    fn indfree_memoized(
        &self,
        a: &Arrangement,
        key: Vec<u32>,
        chi_hint: Option<ZPoly>,
    ) -> Result<Option<ExponentMultiset>> {
        if let Some(hit) = self.free_memo.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        self.tick()?;
        let verdict = self.indfree_uncached(a, &key, chi_hint)?;
        self.free_memo.lock().unwrap().insert(key, verdict.clone());
        Ok(verdict)
    }

    /// The characteristic polynomial of a node. Deletions inherit theirs from
    /// the deletion-restriction identity chi(A') = chi(A) + chi(A''), so the
    /// lattice is only ever built for restriction roots (one dimension down).
    fn chi_of(&self, a: &Arrangement, key: &[u32], hint: Option<ZPoly>) -> Result<ZPoly> {
        if let Some(hit) = self.chi_memo.lock().unwrap().get(key) {
            return Ok(hit.clone());
        }
        let chi = match hint {
            Some(chi) => chi,
            None => IntersectionLattice::build(a)?.charpoly().clone(),
        };
        self.chi_memo
            .lock()
            .unwrap()
            .insert(key.to_vec(), chi.clone());
        Ok(chi)
    }

    fn indfree_uncached(
        &self,
        a: &Arrangement,
        key: &[u32],
        chi_hint: Option<ZPoly>,
    ) -> Result<Option<ExponentMultiset>> {
        let n = a.len();
        let dim = a.dim();
        if n == 0 {
            return Ok(Some(ExponentMultiset::zeros(dim)));
        }
        let rank = a.rank();
        if rank == 1 {
            debug_assert_eq!(n, 1, "distinct hyperplanes of rank 1");
            return Ok(Some(ExponentMultiset::zeros(dim - 1).with(1)));
        }
        if rank == 2 {
            return Ok(Some(
                ExponentMultiset::zeros(dim - 2).with(1).with(n - 1),
            ));
        }

        // An inductively free arrangement is free, so its chi must split over
        // the nonnegative integers into exactly the exponents. The split also
        // pins down every admissible induction step: removing H must drop
        // |A| - |A^H| to an exponent, and the deletion and restriction chi
        // are forced. Branches violating any of this can never satisfy the
        // addition-deletion recursion and are skipped wholesale.
        let chi = self.chi_of(a, key, chi_hint)?;
        let Some(target) = split_exponents(&chi, dim, n) else {
            return Ok(None);
        };

        for pivot in pivot_order(a) {
            let flat = Flat {
                members: crate::bitset::IndexSet::singleton(pivot),
                rank: 1,
            };
            let (restricted, _) = restriction_with_trace(a, &flat);
            let dropped = n - restricted.len();
            let Some(expected_restricted) = target.remove_one(dropped) else {
                continue;
            };
            let restricted_key = self.arr_key(&restricted);
            let chi_restricted = self.chi_of(&restricted, &restricted_key, None)?;
            if split_exponents(&chi_restricted, dim - 1, restricted.len())
                .as_ref()
                != Some(&expected_restricted)
            {
                continue;
            }
            let Some(exp_restricted) =
                self.indfree_memoized(&restricted, restricted_key, None)?
            else {
                continue;
            };

            let deleted = a.delete(pivot);
            let chi_deleted = z_add(&chi, &chi_restricted);
            if split_exponents(&chi_deleted, dim, n - 1).as_ref()
                != Some(&expected_restricted.with(dropped - 1))
            {
                continue;
            }
            let deleted_key = self.arr_key(&deleted);
            let Some(exp_deleted) =
                self.indfree_memoized(&deleted, deleted_key, Some(chi_deleted))?
            else {
                continue;
            };

            let Some(leftover) = exp_restricted.difference_from(&exp_deleted) else {
                continue;
            };
            debug_assert_eq!(leftover.len(), 1);
            let exponents = exp_restricted.with(leftover[0] + 1);
            debug_assert_eq!(exponents.sum(), n, "exponents sum to |A|");
            debug_assert_eq!(exponents.len(), dim);
            debug_assert_eq!(exponents, target);
            return Ok(Some(exponents));
        }
        Ok(None)
    }

    /// Inductive freeness localizes: check it on a single localization.
    pub fn check_indfree_localization(&self, a: &Arrangement, x: &Flat) -> Result<bool> {
        let local = localization(a, x)?;
        Ok(self.is_inductively_free(&local)?.is_some())
    }
}

/// The exponent multiset forced by chi if the arrangement is free:
/// chi = t^m * prod (t - e_i) with positive integer roots e_i, padded with m
/// zeros. `None` when chi does not split that way.
fn split_exponents(chi: &ZPoly, dim: usize, n: usize) -> Option<ExponentMultiset> {
    use num_traits::Zero;
    let zeros = chi.iter().take_while(|c| c.is_zero()).count();
    if zeros > dim {
        return None;
    }
    let mut g: ZPoly = chi[zeros..].to_vec();
    let mut exponents = vec![0usize; zeros];
    for e in 1..=n {
        let root = num_bigint::BigInt::from(e);
        while z_deg(&g) > Some(0) && z_eval(&g, &root).is_zero() {
            g = z_deflate_root(&g, &root);
            exponents.push(e);
        }
    }
    if z_deg(&g) == Some(0) && exponents.len() == dim {
        Some(ExponentMultiset::new(exponents))
    } else {
        None
    }
}

/// Deletion pivots in peeling order: highest-coordinate supports first,
/// larger supports before smaller ones within the same top coordinate.
/// For the catalog families this follows a supersolvable peeling; in general
/// it is just a fixed deterministic order.
fn pivot_order(a: &Arrangement) -> Vec<usize> {
    let mut order: Vec<usize> = (0..a.len()).collect();
    let key = |h: usize| {
        let mut support: Vec<usize> = a
            .functional(h)
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        support.reverse();
        support
    };
    order.sort_by(|&x, &y| key(y).cmp(&key(x)).then_with(|| y.cmp(&x)));
    order
}

/// One-shot wrappers over a fresh engine.
pub fn is_inductively_free(a: &Arrangement) -> Result<Option<ExponentMultiset>> {
    Engine::new().is_inductively_free(a)
}

pub fn check_indfree_localization(a: &Arrangement, x: &Flat) -> Result<bool> {
    Engine::new().check_indfree_localization(a, x)
}
