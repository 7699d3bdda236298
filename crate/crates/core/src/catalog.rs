//! Constructors for the named arrangements exercised throughout: boolean and
//! braid arrangements over Q, and the intermediate arrangements A^k_l(r) over
//! Q(zeta_r) interpolating between the reflection arrangements of G(r,1,l)
//! (k = l) and G(r,r,l) (k = 0), together with the distinguished localizing
//! flat used with them.
//!
//! Hyperplane order inside each constructor is fixed (coordinate hyperplanes
//! first, then (i,j,n) lexicographic), so certificates and reports are
//! reproducible across runs and platforms.

use crate::error::{Error, Result};
use crate::exactfield::FieldContext;
use crate::geometry::{intersect_kernels, Arrangement, Functional, Subspace};

/// ker x_1, ..., ker x_l over Q.
pub fn boolean_arrangement(l: usize) -> Arrangement {
    let field = FieldContext::Rational;
    let rows = (0..l)
        .map(|i| {
            let mut row = vec![field.zero(); l];
            row[i] = field.one();
            row
        })
        .collect();
    Arrangement::new(l, field, rows)
        .expect("coordinate hyperplanes are distinct and nonzero")
        .with_name(format!("boolean_{}", l))
}

/// ker(x_i - x_j) for 1 <= i < j <= l over Q: l(l-1)/2 hyperplanes, rank l-1.
pub fn braid_arrangement(l: usize) -> Arrangement {
    assert!(l >= 1, "braid arrangement needs l >= 1");
    let field = FieldContext::Rational;
    let mut rows = Vec::with_capacity(l * (l - 1) / 2);
    for i in 0..l {
        for j in (i + 1)..l {
            let mut row = vec![field.zero(); l];
            row[i] = field.one();
            row[j] = field.integer(-1);
            rows.push(row);
        }
    }
    Arrangement::new(l, field, rows)
        .expect("difference hyperplanes are distinct and nonzero")
        .with_name(format!("A(S_{})", l))
}

/// The intermediate arrangement A^k_l(r) over Q(zeta_r): the coordinate
/// hyperplanes x_1, ..., x_k followed by ker(x_i - zeta^n x_j) for
/// 1 <= i < j <= l and 0 <= n < r. Total count k + r*l*(l-1)/2.
pub fn intermediate_arrangement(l: usize, r: u32, k: usize) -> Result<Arrangement> {
    if l < 2 || r < 2 {
        return Err(Error::Unsupported(format!(
            "intermediate arrangement needs l >= 2 and r >= 2, got l={}, r={}",
            l, r
        )));
    }
    if k > l {
        return Err(Error::Unsupported(format!(
            "intermediate arrangement needs 0 <= k <= l, got k={}, l={}",
            k, l
        )));
    }
    let field = FieldContext::Cyclotomic { r };
    let mut rows = Vec::with_capacity(k + r as usize * l * (l - 1) / 2);
    for i in 0..k {
        let mut row = vec![field.zero(); l];
        row[i] = field.one();
        rows.push(row);
    }
    for i in 0..l {
        for j in (i + 1)..l {
            for n in 0..r {
                let mut row = vec![field.zero(); l];
                row[i] = field.one();
                row[j] = field.zeta_pow(n)?.neg();
                rows.push(row);
            }
        }
    }
    Ok(Arrangement::new(l, field, rows)?.with_name(format!("A^{}_{}({})", k, l, r)))
}

/// The distinguished flat for A^k_l(r): the intersection of the kernels of
/// x_i - zeta^n x_j over k+1 <= i < j <= l and 0 <= n < r, computed exactly
/// as a kernel intersection.
pub fn example_flat(l: usize, r: u32, k: usize) -> Result<Subspace> {
    if l < 2 || r < 2 {
        return Err(Error::Unsupported(format!(
            "example flat needs l >= 2 and r >= 2, got l={}, r={}",
            l, r
        )));
    }
    if k + 2 > l {
        return Err(Error::Unsupported(format!(
            "example flat needs k <= l - 2, got k={}, l={}",
            k, l
        )));
    }
    let field = FieldContext::Cyclotomic { r };
    let mut functionals = Vec::new();
    for i in k..l {
        for j in (i + 1)..l {
            for n in 0..r {
                let mut row = vec![field.zero(); l];
                row[i] = field.one();
                row[j] = field.zeta_pow(n)?.neg();
                functionals.push(Functional::new(row)?);
            }
        }
    }
    Ok(intersect_kernels(l, field, functionals.iter()))
}
