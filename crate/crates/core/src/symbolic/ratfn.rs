//! Quotients of polynomials, used only where division by a conformal factor
//! cannot be avoided.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::One;

use super::poly::{Poly, VarSet};
use crate::error::AlgebraError;

/// `numerator / denominator` with a primitive denominator whose leading
/// coefficient is positive. When the denominator divides the numerator
/// exactly the quotient is stored over `1`.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.vars());
        RationalFn { num: p, den }
    }

    pub fn zero(vars: &VarSet) -> Self {
        Self::from_poly(Poly::zero(vars))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(num.vars());
        }
        if den.is_constant() {
            let c = den.constant_term();
            return Self::from_poly(num.scale(&c.recip()));
        }
        if let Some(quot) = num.div_exact(&den) {
            return Self::from_poly(quot);
        }
        let c = den.content();
        RationalFn {
            num: num.scale(&c.recip()),
            den: den.scale(&c.recip()),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value, when the denominator is `1`.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Partial derivative by the quotient rule.
    pub fn derivative(&self, i: usize) -> RationalFn {
        let n = &(&self.num.derivative(i) * &self.den) - &(&self.num * &self.den.derivative(i));
        Self::normalize(n, &self.den * &self.den)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFn {}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

impl<'a> Add<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &'a RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &'a RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &'a RationalFn) -> RationalFn {
        RationalFn::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::parse::parse_expr;

    fn p(s: &str) -> Poly {
        parse_expr(s, &VarSet::txyz()).unwrap()
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFn::new(p("x"), p("0")).unwrap_err(),
            AlgebraError::ZeroDenominator
        );
    }

    #[test]
    fn normalization() {
        let r = RationalFn::new(p("4*x"), p("-2*x^2 - 2")).unwrap();
        assert_eq!(r.denominator(), &p("x^2 + 1"));
        assert_eq!(r.numerator(), &p("-2*x"));
        assert_eq!(r.to_string(), "(-2*x)/(x^2 + 1)");
        let exact = RationalFn::new(p("x^2 - y^2"), p("x + y")).unwrap();
        assert_eq!(exact.as_poly(), Some(&p("x - y")));
    }

    #[test]
    fn arithmetic() {
        let a = RationalFn::new(p("1"), p("x")).unwrap();
        let b = RationalFn::new(p("1"), p("y")).unwrap();
        let s = &a + &b;
        assert_eq!(s, RationalFn::new(p("x + y"), p("x*y")).unwrap());
        assert!((&s - &s).is_zero());
        let d = a.derivative(1);
        assert_eq!(d, RationalFn::new(p("-1"), p("x^2")).unwrap());
    }
}
