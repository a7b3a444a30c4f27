use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::Zero;

use super::poly;
use super::{Coeff, Laurent};

/// Element of `Q(q)` stored as a reduced fraction of Laurent polynomials.
///
/// Normal form: the denominator has lowest exponent 0, a positive lowest
/// coefficient, and shares no polynomial or integer factor with the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<C> {
    num: Laurent<C>,
    den: Laurent<C>,
}

impl<C: Coeff> RatFunc<C> {
    pub fn zero() -> Self {
        RatFunc {
            num: Laurent::zero(),
            den: Laurent::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc {
            num: Laurent::one(),
            den: Laurent::one(),
        }
    }

    pub fn from_laurent(p: Laurent<C>) -> Self {
        RatFunc {
            num: p,
            den: Laurent::one(),
        }
    }

    /// `None` when the denominator is zero.
    pub fn new(num: Laurent<C>, den: Laurent<C>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalize(num, den))
    }

    fn normalize(num: Laurent<C>, den: Laurent<C>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.terms().len() == 1 {
            // monomial denominator: fold the q-power, divide out the integer gcd
            let (e, d) = den.terms()[0].clone();
            let g = num_integer::Integer::gcd(&num.content(), &d);
            let mut n = num.shift(-e).div_scalar_exact(&g).unwrap();
            let mut d = d / g;
            if d.is_negative() {
                n = -n;
                d = -d;
            }
            return RatFunc {
                num: n,
                den: Laurent::constant(d),
            };
        }
        let (ln, a) = num.dense();
        let (ld, b) = den.dense();
        let g = poly::gcd_primitive(&a, &b);
        let (qa, _) = poly::divrem_exact(&a, &g).expect("gcd divides numerator");
        let (qb, _) = poly::divrem_exact(&b, &g).expect("gcd divides denominator");
        let mut n = Laurent::from_dense(ln - ld, &qa);
        let mut d = Laurent::from_dense(0, &qb);
        let c = num_integer::Integer::gcd(&n.content(), &d.content());
        n = n.div_scalar_exact(&c).unwrap();
        d = d.div_scalar_exact(&c).unwrap();
        let lo = d.min_exp().unwrap();
        n = n.shift(-lo);
        d = d.shift(-lo);
        if d.terms()[0].1.is_negative() {
            n = -n;
            d = -d;
        }
        RatFunc { num: n, den: d }
    }

    pub fn numer(&self) -> &Laurent<C> {
        &self.num
    }

    pub fn denom(&self) -> &Laurent<C> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial when the denominator is 1.
    pub fn to_laurent(&self) -> Option<Laurent<C>> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalize(self.den.clone(), self.num.clone()))
        }
    }

    pub fn checked_div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self * &i)
    }
}

impl<C: Coeff> fmt::Debug for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<C: Coeff> fmt::Display for RatFunc<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<C: Coeff> From<Laurent<C>> for RatFunc<C> {
    fn from(p: Laurent<C>) -> Self {
        RatFunc::from_laurent(p)
    }
}

impl<'a, C: Coeff> Add<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;
    fn add(self, o: &RatFunc<C>) -> RatFunc<C> {
        if self.den == o.den {
            return RatFunc::normalize(&self.num + &o.num, self.den.clone());
        }
        RatFunc::normalize(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a, C: Coeff> Sub<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;
    fn sub(self, o: &RatFunc<C>) -> RatFunc<C> {
        self + &(-o)
    }
}

impl<'a, C: Coeff> Mul<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;
    fn mul(self, o: &RatFunc<C>) -> RatFunc<C> {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::normalize(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a, C: Coeff> Div<&'a RatFunc<C>> for &'a RatFunc<C> {
    type Output = RatFunc<C>;
    fn div(self, o: &RatFunc<C>) -> RatFunc<C> {
        self.checked_div(o).expect("division by zero in Q(q)")
    }
}

impl<C: Coeff> Neg for &RatFunc<C> {
    type Output = RatFunc<C>;
    fn neg(self) -> RatFunc<C> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<C: Coeff> Zero for RatFunc<C> {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<C: Coeff> Add for RatFunc<C> {
    type Output = RatFunc<C>;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}
