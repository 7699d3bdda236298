//! Exact scalar arithmetic over Q and over the cyclotomic fields Q(zeta_r).
//!
//! These are the coefficient domains for every arrangement in the crate:
//! rational arrangements (boolean, braid) work directly over Q and skip the
//! cyclotomic machinery, while the intermediate and reflection arrangements
//! live over Q(zeta_r). All values are immutable and all operations are pure;
//! arbitrary-precision integers underneath keep rank decisions sound no
//! matter how coefficients grow during elimination.
//!
//! Scalars have a canonical form (reduced fraction, reduced residue mod
//! Phi_r), so equality of field elements is equality of representations.

mod cyclotomic;
pub mod poly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use cyclotomic::CyclotomicNumber;
pub use poly::{cyclotomic_polynomial, totient};

use crate::error::{Error, Result};

/// Exact rational number; reduced, positive denominator, zero is 0/1.
pub type Rational = BigRational;

/// The coefficient domain shared by all scalars of one arrangement.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldContext {
    Rational,
    Cyclotomic { r: u32 },
}

impl FieldContext {
    pub fn zero(&self) -> FieldElement {
        match self {
            FieldContext::Rational => FieldElement::Rational(Rational::zero()),
            FieldContext::Cyclotomic { r } => {
                FieldElement::Cyclotomic(CyclotomicNumber::zero(*r))
            }
        }
    }

    pub fn one(&self) -> FieldElement {
        match self {
            FieldContext::Rational => FieldElement::Rational(Rational::one()),
            FieldContext::Cyclotomic { r } => FieldElement::Cyclotomic(CyclotomicNumber::one(*r)),
        }
    }

    pub fn integer(&self, n: i64) -> FieldElement {
        match self {
            FieldContext::Rational => FieldElement::Rational(Rational::from(BigInt::from(n))),
            FieldContext::Cyclotomic { r } => FieldElement::Cyclotomic(
                CyclotomicNumber::from_rational(*r, Rational::from(BigInt::from(n))),
            ),
        }
    }

    /// The distinguished primitive root of unity; an error over Q.
    pub fn zeta(&self) -> Result<FieldElement> {
        match self {
            FieldContext::Rational => Err(Error::Unsupported(
                "the rational field has no primitive root of unity".into(),
            )),
            FieldContext::Cyclotomic { r } => {
                Ok(FieldElement::Cyclotomic(CyclotomicNumber::zeta(*r)))
            }
        }
    }

    pub fn zeta_pow(&self, n: u32) -> Result<FieldElement> {
        match self {
            FieldContext::Rational => Err(Error::Unsupported(
                "the rational field has no primitive root of unity".into(),
            )),
            FieldContext::Cyclotomic { r } => {
                Ok(FieldElement::Cyclotomic(CyclotomicNumber::zeta_pow(*r, n)))
            }
        }
    }

    /// Field extension degree over Q.
    pub fn degree(&self) -> usize {
        match self {
            FieldContext::Rational => 1,
            FieldContext::Cyclotomic { r } => totient(*r),
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldContext::Rational => write!(f, "Q"),
            FieldContext::Cyclotomic { r } => write!(f, "Q(zeta_{})", r),
        }
    }
}

/// An exact scalar in Q or Q(zeta_r), in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldElement {
    Rational(Rational),
    Cyclotomic(CyclotomicNumber),
}

impl FieldElement {
    pub fn context(&self) -> FieldContext {
        match self {
            FieldElement::Rational(_) => FieldContext::Rational,
            FieldElement::Cyclotomic(c) => FieldContext::Cyclotomic { r: c.order() },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Cyclotomic(c) => c.is_one(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a + b)
            }
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => {
                FieldElement::Cyclotomic(a.add(b))
            }
            _ => panic!("field mismatch: {} vs {}", self.context(), other.context()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a - b)
            }
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => {
                FieldElement::Cyclotomic(a.sub(b))
            }
            _ => panic!("field mismatch: {} vs {}", self.context(), other.context()),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => {
                FieldElement::Rational(a * b)
            }
            (FieldElement::Cyclotomic(a), FieldElement::Cyclotomic(b)) => {
                FieldElement::Cyclotomic(a.mul(b))
            }
            _ => panic!("field mismatch: {} vs {}", self.context(), other.context()),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Cyclotomic(a) => FieldElement::Cyclotomic(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            FieldElement::Rational(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(FieldElement::Rational(a.recip()))
                }
            }
            FieldElement::Cyclotomic(a) => Ok(FieldElement::Cyclotomic(a.inv()?)),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            FieldElement::Cyclotomic(c) => write!(f, "{}", c),
        }
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Parse "p/q" (or a bare integer "p") into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational numerator {:?}", num)))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational denominator {:?}", den)))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {:?}", s)));
    }
    Ok(Rational::new(n, d))
}

/// Canonical "p/q" rendering with a positive denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Scalar wire format: rationals are "p/q" strings, cyclotomic elements are
/// coefficient lists of "p/q" strings in the zeta-power basis.
pub fn scalar_to_json(x: &FieldElement) -> serde_json::Value {
    match x {
        FieldElement::Rational(q) => serde_json::Value::String(format_rational(q)),
        FieldElement::Cyclotomic(c) => serde_json::Value::Array(
            c.coeffs()
                .iter()
                .map(|q| serde_json::Value::String(format_rational(q)))
                .collect(),
        ),
    }
}

pub fn scalar_from_json(field: &FieldContext, v: &serde_json::Value) -> Result<FieldElement> {
    match (field, v) {
        (FieldContext::Rational, serde_json::Value::String(s)) => {
            Ok(FieldElement::Rational(parse_rational(s)?))
        }
        (FieldContext::Cyclotomic { r }, serde_json::Value::Array(items)) => {
            let coeffs = items
                .iter()
                .map(|item| match item {
                    serde_json::Value::String(s) => parse_rational(s),
                    other => Err(Error::Parse(format!(
                        "expected \"p/q\" string coefficient, got {}",
                        other
                    ))),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FieldElement::Cyclotomic(CyclotomicNumber::from_coeffs(
                *r, coeffs,
            )?))
        }
        (FieldContext::Rational, other) => Err(Error::Parse(format!(
            "expected \"p/q\" string scalar over Q, got {}",
            other
        ))),
        (FieldContext::Cyclotomic { .. }, other) => Err(Error::Parse(format!(
            "expected coefficient-list scalar over {}, got {}",
            field, other
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldElement::Rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn additive_identity() {
        let ctx = FieldContext::Rational;
        let a = q(-7, 3);
        assert_eq!(a.add(&ctx.zero()), a);
        let cyc = FieldContext::Cyclotomic { r: 5 };
        let z = cyc.zeta().unwrap();
        assert_eq!(z.add(&cyc.zero()), z);
    }

    #[test]
    fn zeta_times_zeta_squared_is_one_in_q_zeta3() {
        let ctx = FieldContext::Cyclotomic { r: 3 };
        let z = ctx.zeta().unwrap();
        let z2 = ctx.zeta_pow(2).unwrap();
        assert!(z.mul(&z2).is_one());
    }

    #[test]
    fn division_examples() {
        // 1/zeta = -zeta in Q(zeta_4).
        let ctx = FieldContext::Cyclotomic { r: 4 };
        let z = ctx.zeta().unwrap();
        assert_eq!(ctx.one().div(&z).unwrap(), z.neg());
        // and over Q
        assert_eq!(q(1, 1).div(&q(2, 3)).unwrap(), q(3, 2));
        assert_eq!(q(1, 1).div(&q(0, 1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn is_zero_examples() {
        assert!(q(0, 5).is_zero());
        let ctx = FieldContext::Cyclotomic { r: 3 };
        let z = ctx.zeta().unwrap();
        let relation = z.mul(&z).add(&z).add(&ctx.one());
        assert!(relation.is_zero());
        assert!(!z.sub(&ctx.one()).is_zero());
    }

    #[test]
    fn rational_string_round_trip() {
        for s in ["0/1", "-2/3", "5/1", "7", "-4"] {
            let parsed = parse_rational(s).unwrap();
            let again = parse_rational(&format_rational(&parsed)).unwrap();
            assert_eq!(parsed, again);
        }
        assert_eq!(format_rational(&parse_rational("4/-6").unwrap()), "-2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn scalar_json_round_trip() {
        let ctx = FieldContext::Cyclotomic { r: 4 };
        let x = ctx.zeta().unwrap().add(&ctx.integer(-2));
        let v = scalar_to_json(&x);
        assert_eq!(v, serde_json::json!(["-2/1", "1/1"]));
        assert_eq!(scalar_from_json(&ctx, &v).unwrap(), x);

        let y = q(-2, 3);
        let v = scalar_to_json(&y);
        assert_eq!(v, serde_json::json!("-2/3"));
        assert_eq!(scalar_from_json(&FieldContext::Rational, &v).unwrap(), y);
    }
}
