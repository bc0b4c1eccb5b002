use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::clutter::Elem;
use crate::error::Error;

/// Exact rational in canonical form, serialized as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Rat {
        Rat(BigRational::new(num, den))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Distance to the nearest integer.
    pub fn fractionality(&self) -> Rat {
        let f = self.0.clone() - self.0.floor();
        let g = BigRational::one() - f.clone();
        Rat(if f < g { f } else { g })
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat, Error> {
        let bad = || Error::InvalidParameter(format!("bad rational {s:?}"));
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rat(BigRational::new(p, q)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl<'a> $tr<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat((&self.0).$m(&o.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, o: &Rat) {
        self.0 += &o.0;
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |mut a, b| {
            a += b;
            a
        })
    }
}

/// A point indexed by ground elements (edge ids).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVec(pub BTreeMap<Elem, Rat>);

impl RatVec {
    pub fn constant(ground: &[Elem], value: &Rat) -> RatVec {
        RatVec(ground.iter().map(|&e| (e, value.clone())).collect())
    }

    pub fn get(&self, e: Elem) -> Option<&Rat> {
        self.0.get(&e)
    }

    pub fn is_integral(&self) -> bool {
        self.0.values().all(Rat::is_integer)
    }

    /// Sum of the coordinates over `set`; missing elements count as zero.
    pub fn sum_over(&self, set: &[Elem]) -> Rat {
        set.iter().filter_map(|e| self.0.get(e)).sum()
    }

    pub fn keys(&self) -> Vec<Elem> {
        self.0.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, (e, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}: {v}")?;
        }
        write!(f, ")")
    }
}
