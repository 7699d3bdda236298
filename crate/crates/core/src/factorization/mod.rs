//! Nice partitions and the factorization calculus: independence, induced
//! partitions, triples, the restriction map, the addition-deletion check for
//! nice partitions, and replayable induction certificates.
//!
//! Searches (inductive factorization, certificate verification and
//! localization, the hereditary variant) live in [`search`].

pub mod search;

use serde::{Deserialize, Serialize};

use crate::bitset::IndexSet;
use crate::error::{Error, Result};
use crate::freeness::ExponentMultiset;
use crate::geometry::{rank_of, Arrangement};
use crate::lattice::{restriction_with_trace, Flat, IntersectionLattice};

pub use search::{
    find_inductive_factorization, is_hereditarily_inductively_factored, is_inductively_factored,
    localize_certificate, verify_certificate, CertificateCheck, Engine, HereditaryCheck,
    SearchMode,
};

/// An ordered list of disjoint nonempty blocks of hyperplane indices covering
/// the arrangement. Block order only matters in that addition-deletion steps
/// designate the block containing the chosen pivot.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    blocks: Vec<IndexSet>,
}

impl Partition {
    /// Validate blocks against a ground set of `n` hyperplanes.
    pub fn new(blocks: Vec<IndexSet>, n: usize) -> Result<Self> {
        let mut seen = IndexSet::EMPTY;
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", i)));
            }
            if !seen.intersection(*b).is_empty() {
                return Err(Error::InvalidPartition(format!(
                    "block {} overlaps an earlier block",
                    i
                )));
            }
            seen = seen.union(*b);
        }
        if seen != IndexSet::full(n) {
            return Err(Error::InvalidPartition(format!(
                "blocks cover {{{}}}, expected all {} hyperplanes",
                seen, n
            )));
        }
        Ok(Partition { blocks })
    }

    pub fn from_vecs(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let blocks = blocks
            .into_iter()
            .map(|b| {
                if b.iter().any(|&i| i >= 64) {
                    Err(Error::IndexOutOfRange {
                        index: *b.iter().max().unwrap(),
                        count: n,
                    })
                } else {
                    Ok(IndexSet::from_indices(b))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(blocks, n)
    }

    /// The empty partition of the empty arrangement.
    pub fn empty() -> Self {
        Partition { blocks: Vec::new() }
    }

    /// Internal constructor for blocks already known to be valid.
    pub(crate) fn from_blocks_unchecked(blocks: Vec<IndexSet>) -> Self {
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, index: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(index))
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    /// The induced partition on a sub-arrangement, in global indices:
    /// the nonempty intersections block ∩ members, original order kept.
    pub fn induced(&self, members: IndexSet) -> Partition {
        Partition {
            blocks: self
                .blocks
                .iter()
                .map(|b| b.intersection(members))
                .filter(|b| !b.is_empty())
                .collect(),
        }
    }

    /// The induced partition relabeled to the local indices of the
    /// sub-arrangement on `members`, plus the map from local block index back
    /// to the original block index.
    pub fn induced_relabeled(&self, members: IndexSet) -> (Partition, Vec<usize>) {
        let mut blocks = Vec::new();
        let mut origin = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            let inter = b.intersection(members);
            if !inter.is_empty() {
                blocks.push(inter.relabel_into(members));
                origin.push(i);
            }
        }
        (Partition { blocks }, origin)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.blocks
                .iter()
                .map(|b| serde_json::json!(b.to_vec()))
                .collect(),
        )
    }

    pub fn from_json_value(v: &serde_json::Value, n: usize) -> Result<Self> {
        let blocks: Vec<Vec<usize>> = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("partition JSON: {}", e)))?;
        Partition::from_vecs(blocks, n)
    }

    pub fn from_json_str(s: &str, n: usize) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("partition JSON: {}", e)))?;
        Self::from_json_value(&v, n)
    }
}

/// The induced partition pi_X of a localization, in global indices.
pub fn induced_partition(pi: &Partition, target: IndexSet) -> Partition {
    pi.induced(target)
}

/// First dependent transversal (one hyperplane per block), or `None` when
/// every transversal is linearly independent. Blocks are enumerated by
/// increasing size so dependent choices surface early, and a prefix whose
/// rank already lags is not extended further.
pub fn dependent_transversal(a: &Arrangement, pi: &Partition) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..pi.len()).collect();
    order.sort_by_key(|&b| (pi.blocks()[b].len(), b));
    let mut chosen: Vec<usize> = Vec::with_capacity(order.len());

    fn rec(
        a: &Arrangement,
        pi: &Partition,
        order: &[usize],
        chosen: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        let depth = chosen.len();
        if depth == order.len() {
            return None;
        }
        for h in pi.blocks()[order[depth]].iter() {
            chosen.push(h);
            let rank = rank_of(chosen.iter().map(|&i| a.functional(i)));
            if rank < chosen.len() {
                // Any completion stays dependent; pick one per leftover block.
                let mut witness = chosen.clone();
                for &b in &order[depth + 1..] {
                    witness.push(pi.blocks()[b].first().expect("blocks are nonempty"));
                }
                witness.sort_unstable();
                return Some(witness);
            }
            if let Some(w) = rec(a, pi, order, chosen) {
                return Some(w);
            }
            chosen.pop();
        }
        None
    }

    rec(a, pi, &order, &mut chosen)
}

/// Whether every transversal of the partition is linearly independent.
pub fn is_independent(a: &Arrangement, pi: &Partition) -> bool {
    dependent_transversal(a, pi).is_none()
}

/// Outcome of a niceness check, with the failing witness when not nice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NiceCheck {
    Nice,
    /// Some transversal is linearly dependent.
    DependentTransversal(Vec<usize>),
    /// The induced partition at this flat has no singleton block.
    NoSingleton(Flat),
}

impl NiceCheck {
    pub fn is_nice(&self) -> bool {
        matches!(self, NiceCheck::Nice)
    }
}

/// Whether the partition is nice (a factorization) for the arrangement:
/// independent, and every nontrivial localization induces a singleton block.
pub fn is_nice(a: &Arrangement, pi: &Partition) -> Result<NiceCheck> {
    let lattice = IntersectionLattice::build(a)?;
    is_nice_with_lattice(a, &lattice, pi)
}

/// Niceness check against a prebuilt lattice.
pub fn is_nice_with_lattice(
    a: &Arrangement,
    lattice: &IntersectionLattice,
    pi: &Partition,
) -> Result<NiceCheck> {
    Partition::new(pi.blocks().to_vec(), a.len())?;
    if let Some(witness) = dependent_transversal(a, pi) {
        return Ok(NiceCheck::DependentTransversal(witness));
    }
    for flat in lattice.flats() {
        if flat.rank == 0 {
            continue;
        }
        let singleton = pi
            .blocks()
            .iter()
            .any(|b| b.intersection(flat.members).len() == 1);
        if !singleton {
            return Ok(NiceCheck::NoSingleton(*flat));
        }
    }
    Ok(NiceCheck::Nice)
}

/// A triple (A, A', A''): the arrangement, its deletion at the pivot, and its
/// restriction to the pivot hyperplane, with the trace mapping each remaining
/// hyperplane to its image in the restriction.
#[derive(Clone, Debug)]
pub struct Triple {
    pub full: Arrangement,
    pub deleted: Arrangement,
    pub restricted: Arrangement,
    pub pivot: usize,
    /// Indexed by hyperplanes of `full`; `None` exactly at the pivot.
    /// `deleted` keeps the order of `full` with the pivot removed.
    pub trace: Vec<Option<usize>>,
}

/// Build the triple at the given pivot hyperplane.
pub fn make_triple(a: &Arrangement, pivot: usize) -> Result<Triple> {
    if pivot >= a.len() {
        return Err(Error::IndexOutOfRange {
            index: pivot,
            count: a.len(),
        });
    }
    let flat = Flat {
        members: IndexSet::singleton(pivot),
        rank: 1,
    };
    let (restricted, trace) = restriction_with_trace(a, &flat);
    Ok(Triple {
        full: a.clone(),
        deleted: a.delete(pivot),
        restricted,
        pivot,
        trace,
    })
}

/// The restriction map R of a partition at a pivot, with its bijectivity
/// verdict and, when bijective, the partition it induces on the restriction.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    pub pivot: usize,
    /// Index (in the partition) of the designated block containing the pivot.
    pub pivot_block: usize,
    /// Pairs (hyperplane outside the designated block, image index in A'').
    pub pairs: Vec<(usize, usize)>,
    pub bijective: bool,
    /// pi'' = (R(pi_i)) over the non-designated blocks, in order, on A''
    /// indices. Present exactly when the map is bijective.
    pub restricted_partition: Option<Partition>,
    pub restricted: Arrangement,
}

/// Compute the restriction map R : A \ pi_1 -> A'' at `pivot`, where pi_1 is
/// the block containing the pivot.
pub fn restriction_map(a: &Arrangement, pi: &Partition, pivot: usize) -> Result<RestrictionMap> {
    let pivot_block = pi.block_of(pivot).ok_or_else(|| {
        Error::InvalidPartition(format!("pivot {} is not covered by the partition", pivot))
    })?;
    let triple = make_triple(a, pivot)?;
    Ok(restriction_map_from_parts(
        a.len(),
        pi,
        pivot,
        pivot_block,
        triple.restricted,
        &triple.trace,
    ))
}

/// Shared bijectivity computation once the restriction and its trace exist.
pub(crate) fn restriction_map_from_parts(
    n: usize,
    pi: &Partition,
    pivot: usize,
    pivot_block: usize,
    restricted: Arrangement,
    trace: &[Option<usize>],
) -> RestrictionMap {
    let designated = pi.blocks()[pivot_block];
    let mut pairs = Vec::with_capacity(n - designated.len());
    let mut image = IndexSet::EMPTY;
    let mut injective = true;
    for h in 0..n {
        if designated.contains(h) {
            continue;
        }
        let img = trace[h].expect("non-pivot hyperplanes have images");
        if image.contains(img) {
            injective = false;
        }
        image.insert(img);
        pairs.push((h, img));
    }
    let bijective = injective && image.len() == restricted.len();
    let restricted_partition = bijective.then(|| {
        Partition::from_blocks_unchecked(
            pi.blocks()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != pivot_block)
                .map(|(_, b)| {
                    b.iter()
                        .map(|h| trace[h].expect("non-pivot hyperplanes have images"))
                        .collect()
                })
                .collect(),
        )
    });
    RestrictionMap {
        pivot,
        pivot_block,
        pairs,
        bijective,
        restricted_partition,
        restricted,
    }
}

/// The three statements of the addition-deletion theorem for nice partitions,
/// each evaluated independently.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AdditionDeletionReport {
    /// (i) pi is nice for A.
    pub full_nice: bool,
    /// (ii) pi' is nice for A'.
    pub deleted_nice: bool,
    /// R : A \ pi_1 -> A'' is bijective.
    pub bijective: bool,
    /// pi'' is nice for A'' (false whenever R is not bijective).
    pub restricted_nice: bool,
}

impl AdditionDeletionReport {
    pub fn statements(&self) -> [bool; 3] {
        [
            self.full_nice,
            self.deleted_nice,
            self.bijective && self.restricted_nice,
        ]
    }

    /// "Any two imply the third": exactly two of the three statements holding
    /// would be a counterexample.
    pub fn consistent(&self) -> bool {
        self.statements().iter().filter(|s| **s).count() != 2
    }
}

/// Evaluate all three addition-deletion statements at the given pivot.
/// This is a test oracle, not part of the search hot path.
pub fn check_addition_deletion(
    a: &Arrangement,
    pi: &Partition,
    pivot: usize,
) -> Result<AdditionDeletionReport> {
    Partition::new(pi.blocks().to_vec(), a.len())?;
    let rm = restriction_map(a, pi, pivot)?;
    let full_nice = is_nice(a, pi)?.is_nice();

    let deleted = a.delete(pivot);
    let remaining = IndexSet::full(a.len()).difference(IndexSet::singleton(pivot));
    let (pi_deleted, _) = pi.induced_relabeled(remaining);
    let deleted_nice = is_nice(&deleted, &pi_deleted)?.is_nice();

    let restricted_nice = match &rm.restricted_partition {
        Some(pi_restricted) => is_nice(&rm.restricted, pi_restricted)?.is_nice(),
        None => false,
    };
    Ok(AdditionDeletionReport {
        full_nice,
        deleted_nice,
        bijective: rm.bijective,
        restricted_nice,
    })
}

/// Exponents of an inductively factored arrangement: the block sizes padded
/// with zeros up to the ambient dimension.
pub fn exponents_from_factorization(pi: &Partition, dim: usize) -> ExponentMultiset {
    let mut values: Vec<usize> = vec![0; dim - pi.len()];
    values.extend(pi.sizes());
    ExponentMultiset::new(values)
}

/// Check that a nice partition stays nice under localization at a flat.
pub fn check_nice_localization(a: &Arrangement, pi: &Partition, x: &Flat) -> Result<bool> {
    let local = crate::lattice::localization(a, x)?;
    let (pi_local, _) = pi.induced_relabeled(x.members);
    Ok(is_nice(&local, &pi_local)?.is_nice())
}

/// One step of an induction of factorizations: the hyperplane added, the
/// designated block of the full partition containing it, and the verified
/// bijectivity of the restriction map at that step.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CertStep {
    pub pivot: usize,
    pub pivot_block: usize,
    pub bijective: bool,
}

/// A replayable induction of factorizations: a total order on the
/// hyperplanes plus a partition, with one record per addition step.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub order: Vec<usize>,
    pub partition: Partition,
    pub steps: Vec<CertStep>,
}

impl Certificate {
    pub fn empty() -> Self {
        Certificate {
            order: Vec::new(),
            partition: Partition::empty(),
            steps: Vec::new(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "partition": self.partition.to_json(),
            "steps": self.steps,
        })
    }

    pub fn from_json_value(v: &serde_json::Value, n: usize) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            order: Vec<usize>,
            partition: Vec<Vec<usize>>,
            steps: Vec<CertStep>,
        }
        let doc: Doc = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("certificate JSON: {}", e)))?;
        Ok(Certificate {
            order: doc.order,
            partition: Partition::from_vecs(doc.partition, n)?,
            steps: doc.steps,
        })
    }

    pub fn from_json_str(s: &str, n: usize) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("certificate JSON: {}", e)))?;
        Self::from_json_value(&v, n)
    }
}
