//! Dense univariate polynomial helpers over Q and Z.
//!
//! Coefficient vectors are ascending in degree and kept trimmed (no trailing
//! zeros), so the zero polynomial is the empty vector. Everything here is
//! plumbing for the cyclotomic quotient-ring arithmetic and for
//! characteristic-polynomial bookkeeping.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type QPoly = Vec<BigRational>;
pub type ZPoly = Vec<BigInt>;

pub fn q_trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn q_is_zero(p: &QPoly) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Degree, or `None` for the zero polynomial.
pub fn q_deg(p: &QPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn q_add(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    q_trim(&mut out);
    out
}

pub fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    q_trim(&mut out);
    out
}

pub fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if q_is_zero(a) || q_is_zero(b) {
        return QPoly::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    q_trim(&mut out);
    out
}

/// Quotient and remainder of `a` by `b`; `b` must be nonzero.
pub fn q_divmod(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    let db = q_deg(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.clone();
    q_trim(&mut rem);
    let mut quot = QPoly::new();
    while let Some(dr) = q_deg(&rem) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let coeff = &rem[dr] / &lead;
        if quot.len() <= shift {
            quot.resize(shift + 1, BigRational::zero());
        }
        quot[shift] = coeff.clone();
        for i in 0..=db {
            let delta = &coeff * &b[i];
            rem[i + shift] -= delta;
        }
        q_trim(&mut rem);
    }
    q_trim(&mut quot);
    (quot, rem)
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g` and `g` monic
/// (or zero when both inputs are zero).
pub fn q_ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
    let one = || vec![BigRational::one()];
    let (mut r0, mut r1) = (a.clone(), b.clone());
    q_trim(&mut r0);
    q_trim(&mut r1);
    let (mut s0, mut s1) = (one(), QPoly::new());
    let (mut t0, mut t1) = (QPoly::new(), one());
    while !q_is_zero(&r1) {
        let (q, r) = q_divmod(&r0, &r1);
        let s = q_sub(&s0, &q_mul(&q, &s1));
        let t = q_sub(&t0, &q_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if let Some(d) = q_deg(&r0) {
        let lead = r0[d].clone();
        for c in r0.iter_mut().chain(s0.iter_mut()).chain(t0.iter_mut()) {
            *c /= lead.clone();
        }
    }
    (r0, s0, t0)
}

pub fn z_trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn z_deg(p: &ZPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn z_add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    z_trim(&mut out);
    out
}

pub fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if z_deg(a).is_none() || z_deg(b).is_none() {
        return ZPoly::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    z_trim(&mut out);
    out
}

/// Exact division by a monic divisor; panics if the division is not exact.
pub fn z_div_exact_monic(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = z_deg(b).expect("division by the zero polynomial");
    assert!(b[db].is_one(), "divisor must be monic");
    let mut rem = a.clone();
    z_trim(&mut rem);
    let mut quot = ZPoly::new();
    while let Some(dr) = z_deg(&rem) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        let coeff = rem[dr].clone();
        if quot.len() <= shift {
            quot.resize(shift + 1, BigInt::zero());
        }
        quot[shift] = coeff.clone();
        for i in 0..=db {
            let delta = &coeff * &b[i];
            rem[i + shift] -= delta;
        }
        z_trim(&mut rem);
    }
    assert!(z_deg(&rem).is_none(), "division was not exact");
    z_trim(&mut quot);
    quot
}

/// Evaluate an integer polynomial at an integer point.
pub fn z_eval(p: &ZPoly, x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Deflate `p` by the linear factor `(t - a)`; `a` must be a root.
pub fn z_deflate_root(p: &ZPoly, a: &BigInt) -> ZPoly {
    let d = z_deg(p).expect("cannot deflate the zero polynomial");
    let mut out = vec![BigInt::zero(); d];
    let mut carry = BigInt::zero();
    for i in (0..=d).rev() {
        let c = &p[i] + &carry;
        if i == 0 {
            assert!(c.is_zero(), "not a root");
        } else {
            carry = &c * a;
            out[i - 1] = c;
        }
    }
    z_trim(&mut out);
    out
}

/// Render an integer polynomial in the variable `var`, descending powers.
pub fn z_format(p: &ZPoly, var: &str) -> String {
    let Some(d) = z_deg(p) else {
        return "0".to_string();
    };
    let mut out = String::new();
    for i in (0..=d).rev() {
        let c = &p[i];
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let show_coeff = i == 0 || !mag.is_one();
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        if i > 0 {
            if show_coeff {
                out.push('*');
            }
            out.push_str(var);
            if i > 1 {
                out.push_str(&format!("^{}", i));
            }
        }
    }
    out
}

/// The r-th cyclotomic polynomial as integer coefficients, ascending degree.
///
/// Computed by exact division of `x^r - 1` by the cyclotomic polynomials of
/// all proper divisors of `r`; results are cached process-wide.
pub fn cyclotomic_polynomial(r: u32) -> Arc<ZPoly> {
    assert!(r >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<ZPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&r) {
        return hit.clone();
    }
    // x^r - 1
    let mut num = vec![BigInt::zero(); r as usize + 1];
    num[0] = -BigInt::one();
    num[r as usize] = BigInt::one();
    let mut phi = num;
    for d in 1..r {
        if r.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            phi = z_div_exact_monic(&phi, &phi_d);
        }
    }
    let arc = Arc::new(phi);
    cache.lock().unwrap().insert(r, arc.clone());
    arc
}

/// Euler's totient: the degree of the r-th cyclotomic polynomial.
pub fn totient(r: u32) -> usize {
    z_deg(&cyclotomic_polynomial(r)).expect("cyclotomic polynomial is nonzero")
}
