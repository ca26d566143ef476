//! Coefficient fields Q and Q(z), their places, valuations and normalized
//! absolute values.
//!
//! Places of Q are the primes and the archimedean place. Places of Q(z) are
//! the monic irreducible polynomials over Q together with the place at
//! infinity; the absolute value at `q` is normalized with weight `deg q`, so
//! that `sum_q deg(q) * ord_q(a) + ord_inf(a) = 0` holds exactly.
//!
//! [`Place::Generic`] is a pseudo-place standing for the cofinite set of
//! places where every coefficient under consideration is a unit.

pub mod integer;
pub mod ratfunc;
pub mod upoly;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
pub use ratfunc::RationalFunction;
pub use upoly::Poly;

pub type Rational = BigRational;

/// Which coefficient field a scalar or polynomial lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    FunctionField,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Rationals => "Q",
            Field::FunctionField => "Q(z)",
        })
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "q" | "rationals" => Ok(Field::Rationals),
            "Q(z)" | "qz" | "Qz" | "function" => Ok(Field::FunctionField),
            other => Err(Error::InvalidArgument(format!("unknown field `{other}`"))),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of Q or of Q(z).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(Rational),
    Function(RationalFunction),
}

impl Scalar {
    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(Rational::from_integer(n.into()))
    }

    pub fn zero_in(field: Field) -> Self {
        Self::from_rational_in(Rational::zero(), field)
    }

    pub fn one_in(field: Field) -> Self {
        Self::from_rational_in(Rational::one(), field)
    }

    pub fn from_rational_in(r: Rational, field: Field) -> Self {
        match field {
            Field::Rationals => Scalar::Rational(r),
            Field::FunctionField => Scalar::Function(RationalFunction::constant(r)),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Function(_) => Field::FunctionField,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Function(f) => f.is_zero(),
        }
    }

    /// The value in Q when this scalar is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Function(f) => f.as_constant(),
        }
    }

    pub fn to_function(&self) -> RationalFunction {
        match self {
            Scalar::Rational(r) => RationalFunction::constant(r.clone()),
            Scalar::Function(f) => f.clone(),
        }
    }

    /// Re-expresses the scalar in `field`; fails for a non-constant function
    /// moved into Q.
    pub fn coerce(&self, field: Field) -> Result<Scalar> {
        match (self, field) {
            (Scalar::Rational(_), Field::Rationals) | (Scalar::Function(_), Field::FunctionField) => {
                Ok(self.clone())
            }
            (Scalar::Rational(r), Field::FunctionField) => {
                Ok(Scalar::Function(RationalFunction::constant(r.clone())))
            }
            (Scalar::Function(f), Field::Rationals) => f
                .as_constant()
                .map(Scalar::Rational)
                .ok_or_else(|| Error::FieldMismatch {
                    expected: Field::Rationals.to_string(),
                    found: Field::FunctionField.to_string(),
                }),
        }
    }

    fn combine(
        &self,
        rhs: &Scalar,
        on_q: impl Fn(&Rational, &Rational) -> Rational,
        on_f: impl Fn(&RationalFunction, &RationalFunction) -> RationalFunction,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(on_q(a, b)),
            _ => Scalar::Function(on_f(&self.to_function(), &rhs.to_function())),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a - b, |a, b| a - b)
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a * b, |a, b| a * b)
    }

    /// Division; panics on a zero divisor (callers check).
    pub fn div(&self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        self.combine(rhs, |a, b| a / b, |a, b| a / b)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Function(f) => Scalar::Function(-f),
        }
    }

    /// Parses the scalar grammar: `p/q`, or polynomial ratios in `z` such as
    /// `(z-1)/(z^2+1)`.
    pub fn parse(text: &str, field: Field) -> Result<Scalar> {
        crate::laurent::parse::parse_scalar(text, field)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Function(g) => write!(f, "{g}"),
        }
    }
}

/// A place of Q or Q(z), or the generic pseudo-place.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// A prime of Q, weighted by `log p`.
    Prime(BigInt),
    /// The real absolute value of Q.
    Archimedean,
    /// A monic irreducible polynomial of Q[z], weighted by its degree.
    Irreducible(Poly),
    /// The place of Q(z) at infinity, `ord = deg(den) - deg(num)`.
    Infinity,
    /// Any place outside the support of the coefficients in play; all
    /// valuations vanish.
    Generic,
}

impl Place {
    pub fn prime(p: impl Into<BigInt>) -> Result<Place> {
        let p = p.into();
        if integer::is_prime(&p) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::InvalidPlace(format!("p:{p} is not prime")))
        }
    }

    pub fn irreducible(q: Poly) -> Result<Place> {
        if !q.is_monic() || !q.is_irreducible() {
            return Err(Error::InvalidPlace(format!("q:{q} is not monic irreducible")));
        }
        Ok(Place::Irreducible(q))
    }

    /// Shorthand for the place `z - r`.
    pub fn root(r: i64) -> Place {
        Place::Irreducible(Poly::from_ints(&[-r, 1]))
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Place::Archimedean)
    }

    /// The field whose place this is; `None` for the generic pseudo-place.
    pub fn field(&self) -> Option<Field> {
        match self {
            Place::Prime(_) | Place::Archimedean => Some(Field::Rationals),
            Place::Irreducible(_) | Place::Infinity => Some(Field::FunctionField),
            Place::Generic => None,
        }
    }

    fn mismatch(&self, field: Field) -> Error {
        Error::PlaceFieldMismatch { place: self.to_string(), field: field.to_string() }
    }

    /// Checks that this place can be used with scalars of `field`.
    pub fn check_field(&self, field: Field) -> Result<()> {
        match self.field() {
            Some(f) if f != field => Err(self.mismatch(field)),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "p:{p}"),
            Place::Archimedean => f.write_str("arch"),
            Place::Irreducible(q) => write!(f, "q:{}", q.to_string().replace(' ', "")),
            Place::Infinity => f.write_str("inf"),
            Place::Generic => f.write_str("generic"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Place> {
        let s = s.trim();
        match s {
            "arch" => return Ok(Place::Archimedean),
            "inf" => return Ok(Place::Infinity),
            "generic" => return Ok(Place::Generic),
            _ => {}
        }
        if let Some(p) = s.strip_prefix("p:") {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|_| Error::InvalidPlace(s.to_string()))?;
            return Place::prime(p);
        }
        if let Some(q) = s.strip_prefix("q:") {
            let poly = crate::laurent::parse::parse_z_polynomial(q)
                .map_err(|e| Error::InvalidPlace(format!("{s}: {e}")))?;
            return Place::irreducible(poly);
        }
        Err(Error::InvalidPlace(s.to_string()))
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The valuation `ord_p(a)` at a finite place.
pub fn valuation(a: &Scalar, p: &Place) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    match (a, p) {
        (_, Place::Generic) => Ok(0),
        (Scalar::Rational(_), Place::Archimedean) => Err(Error::ArchimedeanNotSupported),
        (Scalar::Rational(r), Place::Prime(q)) => {
            Ok(integer::p_adic_order(r.numer(), q) - integer::p_adic_order(r.denom(), q))
        }
        (Scalar::Function(f), Place::Irreducible(q)) => Ok(f.order_at(q)),
        (Scalar::Function(f), Place::Infinity) => Ok(f.order_at_infinity()),
        _ => Err(p.mismatch(a.field())),
    }
}

/// `-log |a|_p` for the normalized absolute value at `p`.
pub fn log_abs(a: &Scalar, p: &Place) -> Result<f64> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    match (a, p) {
        (Scalar::Rational(r), Place::Archimedean) => {
            Ok(integer::ln_abs(r.denom()) - integer::ln_abs(r.numer()))
        }
        (_, Place::Prime(q)) => Ok(valuation(a, p)? as f64 * integer::ln_abs(q)),
        (_, Place::Irreducible(q)) => Ok((valuation(a, p)? * q.degree() as i64) as f64),
        _ => Ok(valuation(a, p)? as f64),
    }
}

/// Exact product-formula sum `sum_q deg(q) ord_q(a) + ord_inf(a)` for an
/// element of Q(z); always zero.
pub fn product_formula_exact(a: &RationalFunction) -> Result<i64> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut total = a.order_at_infinity();
    for part in [a.numerator(), a.denominator()] {
        for (q, _) in part.factor() {
            total += q.degree() as i64 * a.order_at(&q);
        }
    }
    Ok(total)
}

/// Per-place contributions `-log |a|_p` over the support of `a` plus the
/// archimedean place (for rationals).
pub fn product_formula_terms(a: &Scalar) -> Result<Vec<(Place, f64)>> {
    let mut places: Vec<Place> = support_places(std::slice::from_ref(a))?.into_iter().collect();
    if a.field() == Field::Rationals {
        places.push(Place::Archimedean);
    }
    places
        .into_iter()
        .map(|p| log_abs(a, &p).map(|v| (p, v)))
        .collect()
}

/// Sum of `-log |a|_p` over all places; zero up to rounding for rationals and
/// exactly zero for rational functions.
pub fn product_formula_residual(a: &Scalar) -> Result<f64> {
    if let Scalar::Function(f) = a {
        return product_formula_exact(f).map(|k| k as f64);
    }
    Ok(product_formula_terms(a)?.iter().map(|(_, v)| v).sum())
}

/// Finite places where some entry has nonzero valuation.
pub fn support_places(values: &[Scalar]) -> Result<BTreeSet<Place>> {
    let mut out = BTreeSet::new();
    for a in values {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        match a {
            Scalar::Rational(r) => {
                for n in [r.numer(), r.denom()] {
                    out.extend(integer::factor(n).into_iter().map(|(p, _)| Place::Prime(p)));
                }
            }
            Scalar::Function(f) => {
                for part in [f.numerator(), f.denominator()] {
                    out.extend(part.factor().into_iter().map(|(q, _)| Place::Irreducible(q)));
                }
                if f.order_at_infinity() != 0 {
                    out.insert(Place::Infinity);
                }
            }
        }
    }
    Ok(out)
}

/// Real absolute value of a rational, as a float.
pub fn abs_f64(r: &Rational) -> f64 {
    (integer::ln_abs(r.numer()) - integer::ln_abs(r.denom())).exp()
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let mag = abs_f64(r);
        if r.is_negative() {
            -mag
        } else {
            mag
        }
    })
}
