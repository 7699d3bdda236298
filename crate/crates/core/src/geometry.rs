//! Canonical hyperplanes, arrangements of linear functionals, and exact rank
//! computation over Q and Q(zeta_r).
//!
//! Every functional is normalized so that its first nonzero coefficient is 1;
//! two functionals define the same hyperplane exactly when their
//! representations are equal, uniformly over both coefficient domains.
//! Subspaces carry a reduced-row-echelon basis, which is unique, so subspace
//! equality is representational equality as well. Elimination pivots on the
//! first nonzero column and first nonzero row; with exact arithmetic there is
//! no numerical pivoting and results are reproducible.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactfield::{scalar_from_json, scalar_to_json, FieldContext, FieldElement};

/// A nonzero linear functional in canonical form: first nonzero coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional {
    coeffs: Vec<FieldElement>,
}

impl Functional {
    /// Normalize a raw coefficient vector. Errors on the zero vector.
    pub fn new(raw: Vec<FieldElement>) -> Result<Self> {
        let lead = raw.iter().position(|c| !c.is_zero());
        let Some(lead) = lead else {
            return Err(Error::ZeroFunctional);
        };
        let inv = raw[lead].inv().expect("leading coefficient is nonzero");
        let coeffs = raw.iter().map(|c| c.mul(&inv)).collect();
        Ok(Functional { coeffs })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Evaluate at a point given in ambient coordinates.
    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.coeffs.len(), "dimension mismatch");
        dot(&self.coeffs, point)
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let mut acc: Option<FieldElement> = None;
    for (x, y) in a.iter().zip(b) {
        let term = x.mul(y);
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term),
        });
    }
    acc.expect("dot product of empty vectors has no field context")
}

/// Normalize a raw scalar vector into a canonical functional.
pub fn normalize(raw: Vec<FieldElement>) -> Result<Functional> {
    Functional::new(raw)
}

/// In-place reduced row echelon form; returns the pivot columns.
/// Pivoting is deterministic: first nonzero column, first nonzero row.
fn rref(rows: &mut [Vec<FieldElement>]) -> Vec<usize> {
    let height = rows.len();
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..width {
        if next_row == height {
            break;
        }
        let Some(src) = (next_row..height).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_row, src);
        let inv = rows[next_row][col]
            .inv()
            .expect("pivot entry is nonzero");
        for c in col..width {
            rows[next_row][c] = rows[next_row][c].mul(&inv);
        }
        for r in 0..height {
            if r != next_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..width {
                    let delta = factor.mul(&rows[next_row][c]);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    pivots
}

/// Row rank of a set of functionals; 0 for the empty set.
pub fn rank_of<'a, I>(functionals: I) -> usize
where
    I: IntoIterator<Item = &'a Functional>,
{
    let mut rows: Vec<Vec<FieldElement>> = functionals
        .into_iter()
        .map(|f| f.coeffs.to_vec())
        .collect();
    rref(&mut rows).len()
}

/// A linear subspace with a canonical (reduced row echelon) basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    field: FieldContext,
    basis: Vec<Vec<FieldElement>>,
}

impl Subspace {
    /// Canonicalize a spanning set into the unique echelon basis.
    pub fn from_spanning(
        ambient_dim: usize,
        field: FieldContext,
        vectors: Vec<Vec<FieldElement>>,
    ) -> Result<Self> {
        for v in &vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    got: v.len(),
                });
            }
        }
        let mut rows = vectors;
        let pivots = rref(&mut rows);
        rows.truncate(pivots.len());
        Ok(Subspace {
            ambient_dim,
            field,
            basis: rows,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldContext {
        self.field
    }

    /// Dimension of the subspace itself.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "field": self.field,
            "dim": self.ambient_dim,
            "basis": self.basis.iter()
                .map(|row| row.iter().map(scalar_to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            field: FieldContext,
            dim: usize,
            basis: Vec<Vec<serde_json::Value>>,
        }
        let doc: Doc =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("subspace JSON: {}", e)))?;
        let mut rows = Vec::with_capacity(doc.basis.len());
        for raw in &doc.basis {
            let row = raw
                .iter()
                .map(|v| scalar_from_json(&doc.field, v))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Subspace::from_spanning(doc.dim, doc.field, rows)
    }
}

/// Canonical echelon basis of the common kernel of a set of functionals.
/// The empty set yields the whole ambient space.
pub fn intersect_kernels<'a, I>(ambient_dim: usize, field: FieldContext, functionals: I) -> Subspace
where
    I: IntoIterator<Item = &'a Functional>,
{
    let mut rows: Vec<Vec<FieldElement>> = functionals
        .into_iter()
        .map(|f| {
            assert_eq!(f.dim(), ambient_dim, "dimension mismatch");
            f.coeffs.to_vec()
        })
        .collect();
    let pivots = rref(&mut rows);
    let pivot_set: Vec<usize> = pivots.clone();
    let is_pivot = |c: usize| pivot_set.binary_search(&c).is_ok();
    let mut basis = Vec::new();
    for free in 0..ambient_dim {
        if is_pivot(free) {
            continue;
        }
        let mut v = vec![field.zero(); ambient_dim];
        v[free] = field.one();
        for (row, &p) in pivot_set.iter().enumerate() {
            v[p] = rows[row][free].neg();
        }
        basis.push(v);
    }
    Subspace::from_spanning(ambient_dim, field, basis)
        .expect("kernel basis rows have the ambient dimension")
}

/// Express a functional in the basis coordinates of a subspace.
/// Returns `None` when the functional vanishes identically on the subspace.
pub fn restrict_functional(f: &Functional, subspace: &Subspace) -> Option<Functional> {
    assert_eq!(f.dim(), subspace.ambient_dim(), "dimension mismatch");
    let vals: Vec<FieldElement> = subspace.basis.iter().map(|b| f.evaluate(b)).collect();
    if vals.iter().all(|v| v.is_zero()) {
        None
    } else {
        Some(Functional::new(vals).expect("some coordinate is nonzero"))
    }
}

/// A central arrangement: ambient dimension, coefficient field, and an
/// ordered list of distinct canonical functionals. The input order is the
/// fixed tie-breaking order used everywhere downstream.
#[derive(Clone, Debug)]
pub struct Arrangement {
    dim: usize,
    field: FieldContext,
    hyperplanes: Vec<Functional>,
    name: Option<String>,
}

impl Arrangement {
    /// The empty arrangement in dimension `dim`.
    pub fn empty(dim: usize, field: FieldContext) -> Self {
        Arrangement {
            dim,
            field,
            hyperplanes: Vec::new(),
            name: None,
        }
    }

    /// Normalize raw coefficient vectors, rejecting zero rows and duplicates.
    pub fn new(dim: usize, field: FieldContext, raw: Vec<Vec<FieldElement>>) -> Result<Self> {
        let mut functionals = Vec::with_capacity(raw.len());
        for (i, row) in raw.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: row.len(),
                });
            }
            for c in &row {
                if c.context() != field {
                    return Err(Error::FieldMismatch(
                        field.to_string(),
                        c.context().to_string(),
                    ));
                }
            }
            let f = Functional::new(row)
                .map_err(|_| Error::Parse(format!("hyperplane {} is the zero functional", i)))?;
            functionals.push(f);
        }
        Self::from_functionals(dim, field, functionals)
    }

    /// Build from already-canonical functionals, rejecting duplicates.
    pub fn from_functionals(
        dim: usize,
        field: FieldContext,
        functionals: Vec<Functional>,
    ) -> Result<Self> {
        let mut seen: HashMap<&Functional, usize> = HashMap::new();
        for (i, f) in functionals.iter().enumerate() {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: f.dim(),
                });
            }
            if let Some(&first) = seen.get(f) {
                return Err(Error::DuplicateHyperplane { first, second: i });
            }
            seen.insert(f, i);
        }
        drop(seen);
        Ok(Arrangement {
            dim,
            field,
            hyperplanes: functionals,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> FieldContext {
        self.field
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Functional] {
        &self.hyperplanes
    }

    pub fn functional(&self, i: usize) -> &Functional {
        &self.hyperplanes[i]
    }

    pub fn rank(&self) -> usize {
        rank_of(self.hyperplanes.iter())
    }

    /// Sub-arrangement keeping the hyperplanes in `members`, preserving the
    /// input order. The result's index `k` is the `k`-th smallest member.
    pub fn subarrangement(&self, members: crate::bitset::IndexSet) -> Arrangement {
        let hyperplanes = members
            .iter()
            .map(|i| self.hyperplanes[i].clone())
            .collect();
        Arrangement {
            dim: self.dim,
            field: self.field,
            hyperplanes,
            name: None,
        }
    }

    /// The deletion A' = A minus the hyperplane `pivot`.
    pub fn delete(&self, pivot: usize) -> Arrangement {
        let hyperplanes = self
            .hyperplanes
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pivot)
            .map(|(_, f)| f.clone())
            .collect();
        Arrangement {
            dim: self.dim,
            field: self.field,
            hyperplanes,
            name: None,
        }
    }

    /// Hyperplane-set equality, ignoring input order and names.
    pub fn same_hyperplanes(&self, other: &Arrangement) -> bool {
        if self.dim != other.dim || self.field != other.field || self.len() != other.len() {
            return false;
        }
        let mut a: Vec<&Functional> = self.hyperplanes.iter().collect();
        let mut b: Vec<&Functional> = other.hyperplanes.iter().collect();
        a.sort();
        b.sort();
        a == b
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut doc = serde_json::Map::new();
        if let Some(name) = &self.name {
            doc.insert("name".into(), serde_json::Value::String(name.clone()));
        }
        doc.insert("field".into(), serde_json::to_value(self.field).unwrap());
        doc.insert("dim".into(), serde_json::json!(self.dim));
        doc.insert(
            "hyperplanes".into(),
            serde_json::Value::Array(
                self.hyperplanes
                    .iter()
                    .map(|f| {
                        serde_json::Value::Array(f.coeffs().iter().map(scalar_to_json).collect())
                    })
                    .collect(),
            ),
        );
        serde_json::Value::Object(doc)
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        #[derive(Serialize, Deserialize)]
        struct Doc {
            name: Option<String>,
            field: FieldContext,
            dim: usize,
            hyperplanes: Vec<Vec<serde_json::Value>>,
        }
        let doc: Doc = serde_json::from_value(v.clone())
            .map_err(|e| Error::Parse(format!("arrangement JSON: {}", e)))?;
        let mut raw = Vec::with_capacity(doc.hyperplanes.len());
        for (i, row) in doc.hyperplanes.iter().enumerate() {
            let row = row
                .iter()
                .map(|s| scalar_from_json(&doc.field, s))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Parse(format!("hyperplane {}: {}", i, e)))?;
            raw.push(row);
        }
        let arr = Arrangement::new(doc.dim, doc.field, raw)?;
        Ok(match doc.name {
            Some(name) => arr.with_name(name),
            None => arr,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let v: serde_json::Value =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("arrangement JSON: {}", e)))?;
        Self::from_json_value(&v)
    }
}
