//! Deterministic searches over the inductively factored class: the memoized
//! membership decision, certificate construction and replay, certificate
//! localization, partition enumeration with niceness pruning, and the
//! hereditary variant.
//!
//! Sub-problems recur massively across search trees, so results are memoized
//! on canonical keys: interned normalized functionals (sorted) plus the
//! partition as sorted blocks of interned ids. Restricted arrangements live
//! in lower-dimensional coordinates and intern to different ids, so keys
//! embed the ambient dimension for free. The memo tables tolerate concurrent
//! idempotent insertion, and every search iterates candidates in a fixed
//! order, so answers are independent of scheduling.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bitset::IndexSet;
use crate::error::{Error, Result};
use crate::exactfield::poly::{z_deflate_root, z_deg, z_eval};
use crate::freeness::ExponentMultiset;
use crate::geometry::{rank_of, Arrangement, Functional};
use crate::lattice::{closure, restriction, restriction_with_trace, Flat, IntersectionLattice};

use super::{
    restriction_map_from_parts, CertStep, Certificate, Partition,
};

/// Candidate-partition enumeration strategy for
/// [`Engine::find_inductive_factorization`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchMode {
    /// Restrict block-size multisets to the integer roots of the reduced
    /// characteristic polynomial. When chi does not split over the positive
    /// integers there is no candidate at all.
    ChiPruned,
    /// Enumerate every partition into rank-many blocks.
    Exhaustive,
}

type ArrKey = Vec<u32>;
type FacKey = (Vec<u32>, Vec<Vec<u32>>);

/// Search engine with shared memo tables and an optional node budget.
///
/// One engine may be shared freely across threads; searches themselves run
/// sequentially and deterministically, and memo values are pure functions of
/// their keys, so concurrent use never changes an answer.
pub struct Engine {
    interner: Mutex<HashMap<Functional, u32>>,
    fac_memo: Mutex<HashMap<FacKey, bool>>,
    pub(crate) free_memo: Mutex<HashMap<ArrKey, Option<ExponentMultiset>>>,
    pub(crate) chi_memo: Mutex<HashMap<ArrKey, crate::exactfield::poly::ZPoly>>,
    nodes: AtomicU64,
    budget: Option<u64>,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine {
            interner: Mutex::new(HashMap::new()),
            fac_memo: Mutex::new(HashMap::new()),
            free_memo: Mutex::new(HashMap::new()),
            chi_memo: Mutex::new(HashMap::new()),
            nodes: AtomicU64::new(0),
            budget: None,
        }
    }

    /// Cap the total number of search nodes; exceeding it aborts with
    /// [`Error::BudgetExhausted`] instead of reporting a verdict.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn nodes_visited(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn tick(&self) -> Result<()> {
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        match self.budget {
            Some(limit) if seen > limit => Err(Error::BudgetExhausted(limit)),
            _ => Ok(()),
        }
    }

    fn intern(&self, f: &Functional) -> u32 {
        let mut table = self.interner.lock().unwrap();
        let next = table.len() as u32;
        *table.entry(f.clone()).or_insert(next)
    }

    pub(crate) fn arr_key(&self, a: &Arrangement) -> ArrKey {
        let mut ids: Vec<u32> = a.hyperplanes().iter().map(|f| self.intern(f)).collect();
        ids.sort_unstable();
        ids
    }

    fn fac_key(&self, a: &Arrangement, pi: &Partition) -> FacKey {
        let ids: Vec<u32> = a.hyperplanes().iter().map(|f| self.intern(f)).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        let mut blocks: Vec<Vec<u32>> = pi
            .blocks()
            .iter()
            .map(|b| {
                let mut block: Vec<u32> = b.iter().map(|h| ids[h]).collect();
                block.sort_unstable();
                block
            })
            .collect();
        blocks.sort();
        (sorted, blocks)
    }

    /// Pivot candidates in peeling order: hyperplanes supported on the
    /// highest coordinates first, larger supports before smaller ones. For
    /// the catalog constructors this walks straight down the supersolvable
    /// chain; for arbitrary arrangements it is just a fixed total order.
    fn pivot_order(a: &Arrangement, candidates: IndexSet) -> Vec<usize> {
        let mut order: Vec<usize> = candidates.iter().collect();
        let key = |h: usize| {
            let f = a.functional(h);
            let mut support: Vec<usize> = f
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

    /// Memoized membership decision for the inductively factored class.
    ///
    /// `pi` must be a valid partition of `a` (callers validate). Recursion
    /// follows the defining closure: some pivot in some designated block has
    /// a bijective restriction map and both the deleted and restricted pairs
    /// belong to the class.
    fn accepts(&self, a: &Arrangement, pi: &Partition) -> Result<bool> {
        if a.is_empty() {
            return Ok(pi.is_empty());
        }
        let key = self.fac_key(a, pi);
        if let Some(&hit) = self.fac_memo.lock().unwrap().get(&key) {
            return Ok(hit);
        }
        self.tick()?;
        let verdict = self.accepts_uncached(a, pi)?;
        self.fac_memo.lock().unwrap().insert(key, verdict);
        Ok(verdict)
    }

    fn accepts_uncached(&self, a: &Arrangement, pi: &Partition) -> Result<bool> {
        // Necessary conditions, cheapest first: an inductive factorization
        // has exactly rank-many blocks and is independent.
        if pi.len() != rank_of(a.hyperplanes().iter()) {
            return Ok(false);
        }
        if super::dependent_transversal(a, pi).is_some() {
            return Ok(false);
        }
        let n = a.len();
        let all = IndexSet::full(n);
        // Peel large blocks first; within a block follow the pivot order.
        let mut block_order: Vec<usize> = (0..pi.len()).collect();
        block_order.sort_by_key(|&b| (std::cmp::Reverse(pi.blocks()[b].len()), b));
        for &b in &block_order {
            for h0 in Self::pivot_order(a, pi.blocks()[b]) {
                let flat = Flat {
                    members: IndexSet::singleton(h0),
                    rank: 1,
                };
                let (restricted, trace) = restriction_with_trace(a, &flat);
                let rm = restriction_map_from_parts(n, pi, h0, b, restricted, &trace);
                if !rm.bijective {
                    continue;
                }
                let pi_restricted = rm
                    .restricted_partition
                    .expect("bijective maps induce a partition");
                if !self.accepts(&rm.restricted, &pi_restricted)? {
                    continue;
                }
                let deleted = a.delete(h0);
                let remaining = all.difference(IndexSet::singleton(h0));
                let (pi_deleted, _) = pi.induced_relabeled(remaining);
                if !self.accepts(&deleted, &pi_deleted)? {
                    continue;
                }
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Reconstruct a replayable certificate for an accepted pair by peeling
    /// one hyperplane at a time, re-using the memoized decisions.
    fn build_certificate(&self, a: &Arrangement, pi: &Partition) -> Result<Certificate> {
        let partition = pi.clone();
        let mut current = a.clone();
        let mut current_pi = pi.clone();
        let mut index_map: Vec<usize> = (0..a.len()).collect();
        let mut block_map: Vec<usize> = (0..pi.len()).collect();
        let mut rev_order = Vec::with_capacity(a.len());
        let mut rev_steps = Vec::with_capacity(a.len());

        while !current.is_empty() {
            let n = current.len();
            let all = IndexSet::full(n);
            let mut found = None;
            let mut block_order: Vec<usize> = (0..current_pi.len()).collect();
            block_order
                .sort_by_key(|&b| (std::cmp::Reverse(current_pi.blocks()[b].len()), b));
            'scan: for &b in &block_order {
                for h0 in Self::pivot_order(&current, current_pi.blocks()[b]) {
                    let flat = Flat {
                        members: IndexSet::singleton(h0),
                        rank: 1,
                    };
                    let (restricted, trace) = restriction_with_trace(&current, &flat);
                    let rm =
                        restriction_map_from_parts(n, &current_pi, h0, b, restricted, &trace);
                    if !rm.bijective {
                        continue;
                    }
                    let pi_restricted = rm
                        .restricted_partition
                        .expect("bijective maps induce a partition");
                    if !self.accepts(&rm.restricted, &pi_restricted)? {
                        continue;
                    }
                    let deleted = current.delete(h0);
                    let remaining = all.difference(IndexSet::singleton(h0));
                    let (pi_deleted, origin) = current_pi.induced_relabeled(remaining);
                    if !self.accepts(&deleted, &pi_deleted)? {
                        continue;
                    }
                    found = Some((b, h0, deleted, pi_deleted, origin));
                    break 'scan;
                }
            }
            let (b, h0, deleted, pi_deleted, origin) =
                found.expect("an accepted pair admits an induction step");
            rev_order.push(index_map[h0]);
            rev_steps.push(CertStep {
                pivot: index_map[h0],
                pivot_block: block_map[b],
                bijective: true,
            });
            index_map.remove(h0);
            block_map = origin.iter().map(|&ob| block_map[ob]).collect();
            current = deleted;
            current_pi = pi_deleted;
        }

        rev_order.reverse();
        rev_steps.reverse();
        Ok(Certificate {
            order: rev_order,
            partition,
            steps: rev_steps,
        })
    }

    /// Decide whether `pi` is an inductive factorization of `a`, returning a
    /// replayable certificate on success.
    pub fn is_inductively_factored(
        &self,
        a: &Arrangement,
        pi: &Partition,
    ) -> Result<Option<Certificate>> {
        let pi = Partition::new(pi.blocks().to_vec(), a.len())?;
        if self.accepts(a, &pi)? {
            Ok(Some(self.build_certificate(a, &pi)?))
        } else {
            Ok(None)
        }
    }

    /// Search for an inductive factorization of `a`.
    ///
    /// Candidate partitions into rank-many blocks are enumerated in
    /// lexicographic order of the block-assignment vector, pruned to nice
    /// partitions (dependent transversals and missing singleton blocks are
    /// detected on assignment prefixes); the first accepted candidate wins.
    pub fn find_inductive_factorization(
        &self,
        a: &Arrangement,
        mode: SearchMode,
    ) -> Result<Option<(Partition, Certificate)>> {
        if a.is_empty() {
            return Ok(Some((Partition::empty(), Certificate::empty())));
        }
        let lattice = IntersectionLattice::build(a)?;
        self.find_with_lattice(a, &lattice, mode)
    }

    /// Like [`Engine::find_inductive_factorization`] with a prebuilt lattice.
    pub fn find_with_lattice(
        &self,
        a: &Arrangement,
        lattice: &IntersectionLattice,
        mode: SearchMode,
    ) -> Result<Option<(Partition, Certificate)>> {
        if a.is_empty() {
            return Ok(Some((Partition::empty(), Certificate::empty())));
        }
        let rank = lattice.rank();
        let sizes = match mode {
            SearchMode::ChiPruned => match chi_block_sizes(lattice) {
                Some(sizes) => Some(sizes),
                // chi does not split over the positive integers: no candidate
                // block-size multiset is consistent with a factorization.
                None => return Ok(None),
            },
            SearchMode::Exhaustive => None,
        };
        let mut found = None;
        enumerate_nice_partitions(a, lattice, rank, sizes.as_deref(), &mut |pi| {
            self.tick()?;
            if self.accepts(a, pi)? {
                let cert = self.build_certificate(a, pi)?;
                found = Some((pi.clone(), cert));
                Ok(true)
            } else {
                Ok(false)
            }
        })?;
        Ok(found)
    }

    /// Replay a certificate step by step. Structural defects (orders that are
    /// not permutations, malformed partitions) are input errors; a step whose
    /// replay fails yields `Invalid` with that step index.
    pub fn verify_certificate(
        &self,
        a: &Arrangement,
        cert: &Certificate,
    ) -> Result<CertificateCheck> {
        let n = a.len();
        if cert.order.len() != n {
            return Err(Error::InvalidCertificate(format!(
                "order lists {} hyperplanes, arrangement has {}",
                cert.order.len(),
                n
            )));
        }
        let mut seen = IndexSet::EMPTY;
        for &i in &cert.order {
            if i >= n {
                return Err(Error::InvalidCertificate(format!(
                    "order entry {} out of range",
                    i
                )));
            }
            if seen.contains(i) {
                return Err(Error::InvalidCertificate(format!(
                    "order repeats hyperplane {}",
                    i
                )));
            }
            seen.insert(i);
        }
        let pi = Partition::new(cert.partition.blocks().to_vec(), n)?;
        if cert.steps.len() != n {
            return Err(Error::InvalidCertificate(format!(
                "{} steps for {} hyperplanes",
                cert.steps.len(),
                n
            )));
        }
        for step in &cert.steps {
            if step.pivot_block >= pi.len() {
                return Err(Error::InvalidCertificate(format!(
                    "pivot block {} out of range",
                    step.pivot_block
                )));
            }
        }

        let mut members = IndexSet::EMPTY;
        for (i, step) in cert.steps.iter().enumerate() {
            let pivot_global = cert.order[i];
            members.insert(pivot_global);
            if step.pivot != pivot_global {
                return Ok(CertificateCheck::invalid(
                    i,
                    format!(
                        "step pivot {} disagrees with order entry {}",
                        step.pivot, pivot_global
                    ),
                ));
            }
            if !step.bijective {
                return Ok(CertificateCheck::invalid(
                    i,
                    "step records a non-bijective restriction map",
                ));
            }
            if !pi.blocks()[step.pivot_block].contains(pivot_global) {
                return Ok(CertificateCheck::invalid(
                    i,
                    format!(
                        "pivot {} is not in partition block {}",
                        pivot_global, step.pivot_block
                    ),
                ));
            }
            let prefix = a.subarrangement(members);
            let (pi_prefix, origin) = pi.induced_relabeled(members);
            let pivot_local = members
                .position_of(pivot_global)
                .expect("pivot was just inserted");
            let designated = pi_prefix
                .block_of(pivot_local)
                .expect("induced partition covers the prefix");
            if origin[designated] != step.pivot_block {
                return Ok(CertificateCheck::invalid(
                    i,
                    format!(
                        "designated block resolves to partition block {}, step says {}",
                        origin[designated], step.pivot_block
                    ),
                ));
            }
            let flat = Flat {
                members: IndexSet::singleton(pivot_local),
                rank: 1,
            };
            let (restricted, trace) = restriction_with_trace(&prefix, &flat);
            let rm = restriction_map_from_parts(
                prefix.len(),
                &pi_prefix,
                pivot_local,
                designated,
                restricted,
                &trace,
            );
            if !rm.bijective {
                return Ok(CertificateCheck::invalid(
                    i,
                    "restriction map is not bijective at this step",
                ));
            }
            let pi_restricted = rm
                .restricted_partition
                .expect("bijective maps induce a partition");
            if !self.accepts(&rm.restricted, &pi_restricted)? {
                return Ok(CertificateCheck::invalid(
                    i,
                    "restricted pair is not inductively factored",
                ));
            }
        }
        Ok(CertificateCheck::Valid)
    }

    /// Localize a verified certificate to a flat: filter the order to the
    /// hyperplanes of the localization, induce the partition, and recompute
    /// every step record, so the result replays on (A_X, pi_X).
    pub fn localize_certificate(
        &self,
        a: &Arrangement,
        cert: &Certificate,
        x: &Flat,
    ) -> Result<Certificate> {
        let closed = closure(a, x.members);
        if closed.members != x.members {
            return Err(Error::NotAFlat(x.members.to_string()));
        }
        match self.verify_certificate(a, cert)? {
            CertificateCheck::Valid => {}
            CertificateCheck::Invalid { .. } => return Err(Error::CertificateDoesNotVerify),
        }

        let members = x.members;
        let local = a.subarrangement(members);
        let (pi_local, _) = cert.partition.induced_relabeled(members);
        let order: Vec<usize> = cert
            .order
            .iter()
            .filter(|&&h| members.contains(h))
            .map(|&h| members.position_of(h).expect("filtered to members"))
            .collect();

        let mut steps = Vec::with_capacity(order.len());
        let mut prefix_members = IndexSet::EMPTY;
        for &pivot in &order {
            prefix_members.insert(pivot);
            let prefix = local.subarrangement(prefix_members);
            let (pi_prefix, origin) = pi_local.induced_relabeled(prefix_members);
            let pivot_local = prefix_members
                .position_of(pivot)
                .expect("pivot was just inserted");
            let designated = pi_prefix
                .block_of(pivot_local)
                .expect("induced partition covers the prefix");
            let flat = Flat {
                members: IndexSet::singleton(pivot_local),
                rank: 1,
            };
            let (restricted, trace) = restriction_with_trace(&prefix, &flat);
            let rm = restriction_map_from_parts(
                prefix.len(),
                &pi_prefix,
                pivot_local,
                designated,
                restricted,
                &trace,
            );
            steps.push(CertStep {
                pivot,
                pivot_block: origin[designated],
                bijective: rm.bijective,
            });
        }
        Ok(Certificate {
            order,
            partition: pi_local,
            steps,
        })
    }

    /// Whether every restriction A^Y admits an inductive factorization,
    /// reporting the first failing flat in canonical order.
    pub fn is_hereditarily_inductively_factored(
        &self,
        a: &Arrangement,
        mode: SearchMode,
    ) -> Result<HereditaryCheck> {
        let lattice = IntersectionLattice::build(a)?;
        for y in lattice.flats() {
            let restricted = restriction(a, y)?;
            if self.find_inductive_factorization(&restricted, mode)?.is_none() {
                return Ok(HereditaryCheck::FailsAt(*y));
            }
        }
        Ok(HereditaryCheck::Factored)
    }
}

/// Outcome of replaying a certificate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CertificateCheck {
    Valid,
    Invalid { step: usize, reason: String },
}

impl CertificateCheck {
    fn invalid(step: usize, reason: impl Into<String>) -> Self {
        CertificateCheck::Invalid {
            step,
            reason: reason.into(),
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateCheck::Valid)
    }
}

/// Outcome of the hereditary check.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum HereditaryCheck {
    Factored,
    FailsAt(Flat),
}

impl HereditaryCheck {
    pub fn holds(&self) -> bool {
        matches!(self, HereditaryCheck::Factored)
    }
}

/// Block sizes forced by chi(A, t) = t^(l-r) * prod (t - a_i), if chi splits
/// that way over the positive integers. Returns the sorted multiset.
pub fn chi_block_sizes(lattice: &IntersectionLattice) -> Option<Vec<usize>> {
    let rank = lattice.rank();
    let dim = lattice.dim();
    let chi = lattice.charpoly();
    // The lowest nonzero coefficient of chi sits at t^(l-r).
    if chi[..dim - rank].iter().any(|c| !c.is_zero()) {
        return None;
    }
    let mut g: Vec<BigInt> = chi[dim - rank..].to_vec();
    let n = lattice.hyperplane_count();
    let mut sizes = Vec::with_capacity(rank);
    for a in 1..=n {
        let root = BigInt::from(a);
        while z_deg(&g) > Some(0) && z_eval(&g, &root).is_zero() {
            g = z_deflate_root(&g, &root);
            sizes.push(a);
        }
    }
    if z_deg(&g) == Some(0) && sizes.len() == rank {
        debug_assert_eq!(sizes.iter().sum::<usize>(), n);
        Some(sizes)
    } else {
        None
    }
}

/// Enumerate the nice partitions of `a` into `rank` blocks, in lexicographic
/// order of the block-assignment vector (restricted growth strings), calling
/// `visit` on each one until it returns `true`.
///
/// Pruning is by the definition of niceness and skips only candidates that
/// provably fail it: an assignment prefix dies as soon as some flat sees more
/// distinct blocks than its rank (a dependent transversal exists) or all of a
/// flat's members are placed without any block holding exactly one of them
/// (no singleton in the induced partition). With an optional block-size
/// multiset, prefixes that cannot match it are cut as well.
fn enumerate_nice_partitions(
    a: &Arrangement,
    lattice: &IntersectionLattice,
    rank: usize,
    sizes: Option<&[usize]>,
    visit: &mut dyn FnMut(&Partition) -> Result<bool>,
) -> Result<()> {
    let n = a.len();
    if n == 0 || rank == 0 {
        return Ok(());
    }
    // Flats of rank >= 2 constrain assignments; atoms are trivial.
    let flats: Vec<Flat> = lattice
        .flats()
        .iter()
        .copied()
        .filter(|f| f.rank >= 2)
        .collect();
    let mut flats_by_hyp: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (fi, f) in flats.iter().enumerate() {
        for h in f.members.iter() {
            flats_by_hyp[h].push(fi);
        }
    }

    struct State<'s> {
        n: usize,
        rank: usize,
        sizes: Option<&'s [usize]>,
        flats: Vec<Flat>,
        flats_by_hyp: Vec<Vec<usize>>,
        counts: Vec<Vec<u16>>,
        distinct: Vec<usize>,
        assigned: Vec<usize>,
        block_counts: Vec<usize>,
        blocks: Vec<IndexSet>,
    }

    impl State<'_> {
        /// Can the current block fill levels still be completed to the target
        /// size multiset? Checked by matching blocks to sizes injectively.
        fn sizes_feasible(&self) -> bool {
            let Some(sizes) = self.sizes else {
                return true;
            };
            fn matchable(counts: &[usize], sizes: &[usize], block: usize, used: u32) -> bool {
                if block == counts.len() {
                    return true;
                }
                for (si, &size) in sizes.iter().enumerate() {
                    if used & (1 << si) == 0
                        && counts[block] <= size
                        && matchable(counts, sizes, block + 1, used | (1 << si))
                    {
                        return true;
                    }
                }
                false
            }
            let mut counts = self.block_counts.clone();
            counts.resize(self.rank, 0);
            matchable(&counts, sizes, 0, 0)
        }

        fn place(&mut self, h: usize, b: usize) -> bool {
            self.blocks[b].insert(h);
            self.block_counts[b] += 1;
            let mut ok = true;
            for &fi in &self.flats_by_hyp[h] {
                self.counts[fi][b] += 1;
                if self.counts[fi][b] == 1 {
                    self.distinct[fi] += 1;
                }
                self.assigned[fi] += 1;
                if self.distinct[fi] > self.flats[fi].rank {
                    ok = false;
                }
                if ok && self.assigned[fi] == self.flats[fi].members.len() {
                    let singleton = self.counts[fi].contains(&1);
                    if !singleton {
                        ok = false;
                    }
                }
            }
            ok && self.sizes_feasible()
        }

        fn unplace(&mut self, h: usize, b: usize) {
            self.blocks[b].remove(h);
            self.block_counts[b] -= 1;
            for &fi in &self.flats_by_hyp[h] {
                self.counts[fi][b] -= 1;
                if self.counts[fi][b] == 0 {
                    self.distinct[fi] -= 1;
                }
                self.assigned[fi] -= 1;
            }
        }

        fn walk(
            &mut self,
            h: usize,
            used: usize,
            visit: &mut dyn FnMut(&Partition) -> Result<bool>,
        ) -> Result<bool> {
            if h == self.n {
                if used == self.rank {
                    let pi = Partition::from_blocks_unchecked(self.blocks[..used].to_vec());
                    return visit(&pi);
                }
                return Ok(false);
            }
            // Exactly `rank` labels must end up nonempty.
            let remaining = self.n - h;
            if used + remaining < self.rank {
                return Ok(false);
            }
            let max_label = (used + 1).min(self.rank);
            for b in 0..max_label {
                let ok = self.place(h, b);
                if ok {
                    let next_used = used.max(b + 1);
                    if self.walk(h + 1, next_used, visit)? {
                        return Ok(true);
                    }
                }
                self.unplace(h, b);
            }
            Ok(false)
        }
    }

    let flat_count = flats.len();
    let mut state = State {
        n,
        rank,
        sizes,
        flats,
        flats_by_hyp,
        counts: vec![vec![0; rank]; flat_count],
        distinct: vec![0; flat_count],
        assigned: vec![0; flat_count],
        block_counts: vec![0; rank],
        blocks: vec![IndexSet::EMPTY; rank],
    };
    state.walk(0, 0, visit)?;
    Ok(())
}

/// One-shot wrappers over a fresh engine.
pub fn is_inductively_factored(a: &Arrangement, pi: &Partition) -> Result<Option<Certificate>> {
    Engine::new().is_inductively_factored(a, pi)
}

pub fn find_inductive_factorization(
    a: &Arrangement,
    mode: SearchMode,
) -> Result<Option<(Partition, Certificate)>> {
    Engine::new().find_inductive_factorization(a, mode)
}

pub fn verify_certificate(a: &Arrangement, cert: &Certificate) -> Result<CertificateCheck> {
    Engine::new().verify_certificate(a, cert)
}

pub fn localize_certificate(a: &Arrangement, cert: &Certificate, x: &Flat) -> Result<Certificate> {
    Engine::new().localize_certificate(a, cert, x)
}

pub fn is_hereditarily_inductively_factored(
    a: &Arrangement,
    mode: SearchMode,
) -> Result<HereditaryCheck> {
    Engine::new().is_hereditarily_inductively_factored(a, mode)
}
