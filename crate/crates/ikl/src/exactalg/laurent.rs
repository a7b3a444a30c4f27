use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Coeff;

/// Laurent polynomial in `q` with coefficients in `C`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<C> {
    terms: Vec<(i32, C)>,
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(C::from_i64(c).expect("coefficient out of range"))
    }

    pub fn monomial(c: C, e: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(e, c)] }
        }
    }

    /// `q^e`
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(C::one(), e)
    }

    /// `±q^e`
    pub fn signed_q_pow(negative: bool, e: i32) -> Self {
        let c = if negative { -C::one() } else { C::one() };
        Self::monomial(c, e)
    }

    /// Builds from arbitrary (exponent, coefficient) pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, C)>>(it: I) -> Self {
        let mut acc: BTreeMap<i32, C> = BTreeMap::new();
        for (e, c) in it {
            let slot = acc.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        Laurent {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(i32, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn coeff(&self, e: i32) -> C {
        match self.terms.binary_search_by(|t| t.0.cmp(&e)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|t| t.0)
    }

    /// Largest absolute exponent, used as a size witness.
    pub fn degree_span(&self) -> i32 {
        self.terms.iter().map(|t| t.0.abs()).max().unwrap_or(0)
    }

    /// The ring involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<(i32, C)> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        Laurent { terms }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Multiply by `q^s`.
    pub fn shift(&self, s: i32) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &C) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, c.clone() * k.clone())).collect(),
        }
    }

    /// Terms with exponent > 0.
    pub fn positive_part(&self) -> Self {
        Laurent {
            terms: self.terms.iter().filter(|t| t.0 > 0).cloned().collect(),
        }
    }

    /// Terms with exponent < 0.
    pub fn negative_part(&self) -> Self {
        Laurent {
            terms: self.terms.iter().filter(|t| t.0 < 0).cloned().collect(),
        }
    }

    pub fn constant_term(&self) -> C {
        self.coeff(0)
    }

    /// Membership in `qZ[q]`.
    pub fn in_q_zq(&self) -> bool {
        self.terms.iter().all(|t| t.0 > 0)
    }

    /// Membership in `q^-1 Z[q^-1]`.
    pub fn in_qinv_zqinv(&self) -> bool {
        self.terms.iter().all(|t| t.0 < 0)
    }

    /// Membership in `N[q, q^-1]`.
    pub fn has_nonneg_coeffs(&self) -> bool {
        self.terms.iter().all(|t| !t.1.is_negative())
    }

    /// Monomial units `±q^e`.
    pub fn as_unit(&self) -> Option<(bool, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = &self.terms[0];
        if c.is_one() {
            Some((false, *e))
        } else if (-c.clone()).is_one() {
            Some((true, *e))
        } else {
            None
        }
    }

    /// Inverse in the Laurent ring; only units are invertible.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.as_unit().map(|(neg, e)| Self::signed_q_pow(neg, -e))
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> C {
        self.terms.iter().fold(C::zero(), |acc, t| acc + t.1.clone())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Dense coefficients starting at the lowest exponent.
    pub(crate) fn dense(&self) -> (i32, Vec<C>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![C::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    pub(crate) fn from_dense(lo: i32, v: &[C]) -> Self {
        Laurent {
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i32, c.clone()))
                .collect(),
        }
    }

    /// Content: gcd of coefficients, nonnegative.
    pub fn content(&self) -> C {
        self.terms
            .iter()
            .fold(C::zero(), |g, t| num_integer::Integer::gcd(&g, &t.1))
    }

    /// Exact quotient in `Z[q, q^-1]`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (la, a) = self.dense();
        let (lb, b) = d.dense();
        let (quot, rem) = super::poly::divrem_exact(&a, &b)?;
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(la - lb, &quot))
    }

    pub fn div_scalar_exact(&self, k: &C) -> Option<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let (qt, r) = num_integer::Integer::div_rem(c, k);
            if !r.is_zero() {
                return None;
            }
            terms.push((*e, qt));
        }
        Some(Laurent { terms })
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let pick = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match pick {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let (e, c) = &other.terms[j];
                    out.push((*e, if negate_other { -c.clone() } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (e, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if negate_other {
                        a.clone() - b.clone()
                    } else {
                        a.clone() + b.clone()
                    };
                    if !c.is_zero() {
                        out.push((*e, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Laurent { terms: out }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return Laurent {
                terms: self.terms.iter().map(|(f, d)| (f + e, d.clone() * c.clone())).collect(),
            };
        }
        let (la, a) = self.dense();
        let (lb, b) = other.dense();
        let mut v = vec![C::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] = v[i + j].clone() + x.clone() * y.clone();
                }
            }
        }
        Self::from_dense(la + lb, &v)
    }

    /// Human-readable form, highest exponent first: `q^2 - 2 + 3q^-1`.
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{}", e),
            };
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}{}", abs, mono));
            }
        }
        s
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

impl<C: Coeff> fmt::Debug for Laurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({})", self.to_pretty())
    }
}

impl<C: Coeff> Default for Laurent<C> {
    fn default() -> Self {
        Laurent::zero()
    }
}

impl<C: Coeff> Zero for Laurent<C> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for Laurent<C> {
    fn one() -> Self {
        Laurent::one()
    }
}

impl<C: Coeff> From<i64> for Laurent<C> {
    fn from(c: i64) -> Self {
        Laurent::from_i64(c)
    }
}

impl<'a, C: Coeff> Add<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn add(self, o: &Laurent<C>) -> Laurent<C> {
        self.merge(o, false)
    }
}

impl<'a, C: Coeff> Sub<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn sub(self, o: &Laurent<C>) -> Laurent<C> {
        self.merge(o, true)
    }
}

impl<'a, C: Coeff> Mul<&'a Laurent<C>> for &'a Laurent<C> {
    type Output = Laurent<C>;
    fn mul(self, o: &Laurent<C>) -> Laurent<C> {
        self.mul_ref(o)
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr<Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, o: Laurent<C>) -> Laurent<C> {
                (&self).$m(&o)
            }
        }
        impl<'a, C: Coeff> $tr<&'a Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $m(self, o: &'a Laurent<C>) -> Laurent<C> {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> AddAssign<&Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, o: &Laurent<C>) {
        *self = self.merge(o, false);
    }
}

impl<C: Coeff> SubAssign<&Laurent<C>> for Laurent<C> {
    fn sub_assign(&mut self, o: &Laurent<C>) {
        *self = self.merge(o, true);
    }
}

impl<C: Coeff> MulAssign<&Laurent<C>> for Laurent<C> {
    fn mul_assign(&mut self, o: &Laurent<C>) {
        *self = self.mul_ref(o);
    }
}

// JSON form: {"exp": coeff}. Coefficients that fit in i64 are numbers,
// larger ones are decimal strings.
impl<C: Coeff> Serialize for Laurent<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match c.to_i64() {
                Some(v) => map.serialize_entry(&e.to_string(), &v)?,
                None => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de, C: Coeff> Deserialize<'de> for Laurent<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<C>(std::marker::PhantomData<C>);
        impl<'de, C: Coeff> Visitor<'de> for V<C> {
            type Value = Laurent<C>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from exponent to integer coefficient")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> Result<Self::Value, A::Error> {
                let mut terms = Vec::new();
                while let Some((k, v)) = m.next_entry::<String, serde_json::Value>()? {
                    let e: i32 = k.parse().map_err(de::Error::custom)?;
                    let c = match v {
                        serde_json::Value::Number(n) => n
                            .as_i64()
                            .and_then(C::from_i64)
                            .ok_or_else(|| de::Error::custom("bad coefficient"))?,
                        serde_json::Value::String(s) => {
                            C::from_str_radix(&s, 10).map_err(|_| de::Error::custom("bad coefficient"))?
                        }
                        _ => return Err(de::Error::custom("bad coefficient")),
                    };
                    terms.push((e, c));
                }
                Ok(Laurent::from_terms(terms))
            }
        }
        d.deserialize_map(V(std::marker::PhantomData))
    }
}
