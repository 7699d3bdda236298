//! Elements of the cyclotomic field Q(zeta_r), represented as canonical
//! residues in Q[x]/(Phi_r(x)) with zeta mapped to x.
//!
//! The quotient is taken by the r-th cyclotomic polynomial, not by x^r - 1:
//! Phi_r is irreducible over Q, so the quotient is a field and every nonzero
//! residue is invertible — which is exactly what exact Gaussian elimination
//! needs. Residues are stored as coefficient vectors of the fixed length
//! phi(r), so equality of field elements is equality of representations.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{self, cyclotomic_polynomial, totient, QPoly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicNumber {
    order: u32,
    /// Exactly `totient(order)` coefficients in the basis 1, zeta, ..., zeta^(phi(r)-1).
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    /// Reduce an arbitrary polynomial in zeta to the canonical residue.
    pub fn from_poly(order: u32, p: QPoly) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = cyclotomic_polynomial(order);
        let degree = totient(order);
        let mut rem = p;
        poly::q_trim(&mut rem);
        // Long division by the monic integer polynomial Phi_r.
        while let Some(dr) = poly::q_deg(&rem) {
            if dr < degree {
                break;
            }
            let shift = dr - degree;
            let lead = rem[dr].clone();
            for i in 0..=degree {
                if !phi[i].is_zero() {
                    let delta = &lead * BigRational::from(phi[i].clone());
                    rem[i + shift] -= delta;
                }
            }
            poly::q_trim(&mut rem);
        }
        rem.resize(degree, BigRational::zero());
        CyclotomicNumber { order, coeffs: rem }
    }

    pub fn zero(order: u32) -> Self {
        CyclotomicNumber {
            order,
            coeffs: vec![BigRational::zero(); totient(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u32, q: BigRational) -> Self {
        Self::from_poly(order, vec![q])
    }

    /// The chosen primitive r-th root of unity: the residue of x.
    pub fn zeta(order: u32) -> Self {
        Self::from_poly(order, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn zeta_pow(order: u32, n: u32) -> Self {
        let mut p = vec![BigRational::zero(); (n as usize % order as usize) + 1];
        let last = p.len() - 1;
        p[last] = BigRational::one();
        Self::from_poly(order, p)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        let expected = totient(order);
        if coeffs.len() != expected {
            return Err(Error::Parse(format!(
                "cyclotomic element of order {} needs {} coefficients, got {}",
                order,
                expected,
                coeffs.len()
            )));
        }
        Ok(CyclotomicNumber { order, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first().is_some_and(|c| c.is_one())
            && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    fn assert_same_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic elements of different orders cannot be combined"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CyclotomicNumber {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CyclotomicNumber {
            order: self.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_order(other);
        let prod = poly::q_mul(&self.coeffs, &other.coeffs);
        Self::from_poly(self.order, prod)
    }

    /// Multiplicative inverse via the extended gcd of the residue with Phi_r.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi: QPoly = cyclotomic_polynomial(self.order)
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let mut a = self.coeffs.clone();
        poly::q_trim(&mut a);
        let (g, s, _t) = poly::q_ext_gcd(&a, &phi);
        debug_assert_eq!(poly::q_deg(&g), Some(0), "Phi_r is irreducible over Q");
        Ok(Self::from_poly(self.order, s))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if i == 0 || !mag.is_one() {
                write!(f, "{}", mag)?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            if i > 0 {
                write!(f, "z")?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}
