use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::One;

use super::upoly::Poly;
use super::Rational;

/// A reduced element of Q(z): `numerator / denominator` with coprime parts
/// and a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFunction {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunction {
    /// Builds and reduces `num / den`; panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lead = den.leading();
        RationalFunction {
            numerator: num.scale(&lead.recip()),
            denominator: den.monic(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { numerator: p, denominator: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn z() -> Self {
        Self::from_poly(Poly::monomial(Rational::one(), 1))
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The value when this function is a constant of Q.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.numerator.is_constant() && self.denominator.is_one())
            .then(|| self.numerator.constant_term())
    }

    pub fn recip(&self) -> Self {
        Self::new(self.denominator.clone(), self.numerator.clone())
    }

    /// Order of vanishing at the irreducible `q`.
    pub fn order_at(&self, q: &Poly) -> i64 {
        self.numerator.order_at(q) - self.denominator.order_at(q)
    }

    /// Order of vanishing at infinity: `deg(den) - deg(num)`.
    pub fn order_at_infinity(&self) -> i64 {
        self.denominator.degree() as i64 - self.numerator.degree() as i64
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.numerator * &rhs.denominator) + &(&rhs.numerator * &self.denominator),
            &self.denominator * &rhs.denominator,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &self.numerator * &rhs.numerator,
            &self.denominator * &rhs.denominator,
        )
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        RationalFunction::new(
            &self.numerator * &rhs.denominator,
            &self.denominator * &rhs.numerator,
        )
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_constant() {
            return write!(f, "{c}");
        }
        if self.denominator.is_one() {
            write!(f, "({})", self.numerator)
        } else {
            write!(f, "({})/({})", self.numerator, self.denominator)
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalizes() {
        // (2z^2 - 2) / (2z + 2) = z - 1
        let f = RationalFunction::new(Poly::from_ints(&[-2, 0, 2]), Poly::from_ints(&[2, 2]));
        assert_eq!(f, RationalFunction::from_poly(Poly::from_ints(&[-1, 1])));
        let g = RationalFunction::new(Poly::from_ints(&[1]), Poly::from_ints(&[0, -2]));
        assert!(g.denominator().is_monic());
        assert_eq!(g.to_string(), "(-1/2)/(z)");
    }

    #[test]
    fn orders() {
        let f = RationalFunction::new(Poly::from_ints(&[0, 0, 1]), Poly::from_ints(&[-1, 1]));
        assert_eq!(f.order_at(&Poly::from_ints(&[0, 1])), 2);
        assert_eq!(f.order_at(&Poly::from_ints(&[-1, 1])), -1);
        assert_eq!(f.order_at_infinity(), -1);
    }

    #[test]
    fn field_ops() {
        let z = RationalFunction::z();
        let one = RationalFunction::one();
        let h = &(&z - &one) / &z;
        assert_eq!(&(&h * &z) + &one, z);
        assert_eq!(h.recip().recip(), h);
    }
}
