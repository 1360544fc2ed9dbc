//! Exact rational numbers.
//!
//! Values that fit in `i64` numerator and denominator are kept inline; anything
//! larger spills to [`BigRational`]. The representation is canonical (reduced,
//! positive denominator, inline whenever it fits), so derived equality is value
//! equality.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Small(i64, i64),
    Big(Box<BigRational>),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq)]
pub struct Rat(Repr);

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => b.hash(state),
        }
    }
}

fn from_i128(n: i128, d: i128) -> Rat {
    debug_assert!(d != 0);
    let g = n.gcd(&d);
    let (mut n, mut d) = if g > 1 { (n / g, d / g) } else { (n, d) };
    if d < 0 {
        n = -n;
        d = -d;
    }
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(a), Ok(b)) => Rat(Repr::Small(a, b)),
        _ => Rat(Repr::Big(Box::new(BigRational::new_raw(
            BigInt::from(n),
            BigInt::from(d),
        )))),
    }
}

fn from_big(b: BigRational) -> Rat {
    match (b.numer().to_i64(), b.denom().to_i64()) {
        (Some(n), Some(d)) => Rat(Repr::Small(n, d)),
        _ => Rat(Repr::Big(Box::new(b))),
    }
}

impl Rat {
    pub fn zero() -> Rat {
        Rat(Repr::Small(0, 1))
    }

    pub fn one() -> Rat {
        Rat(Repr::Small(1, 1))
    }

    pub fn int(n: i64) -> Rat {
        Rat(Repr::Small(n, 1))
    }

    /// `n / d`; panics on a zero denominator.
    pub fn new(n: i64, d: i64) -> Rat {
        assert!(d != 0, "zero denominator");
        from_i128(n as i128, d as i128)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(n, d) => from_i128(*d as i128, *n as i128),
            Repr::Big(b) => from_big(b.recip()),
        })
    }

    /// Numerator and denominator as strings (denominator positive).
    fn parts(&self) -> (String, String) {
        match &self.0 {
            Repr::Small(n, d) => (n.to_string(), d.to_string()),
            Repr::Big(b) => (b.numer().to_string(), b.denom().to_string()),
        }
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::int(n)
    }
}

impl From<BigRational> for Rat {
    fn from(b: BigRational) -> Rat {
        from_big(b)
    }
}

impl<'a> Add<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn add(self, o: &Rat) -> Rat {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Rat(Repr::Small(s, 1)),
                        None => from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                from_i128(a * d + c * b, b * d)
            }
            _ => from_big(self.to_big() + o.to_big()),
        }
    }
}

impl<'a> Sub<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn sub(self, o: &Rat) -> Rat {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn mul(self, o: &Rat) -> Rat {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(s) => Rat(Repr::Small(s, 1)),
                        None => from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => from_big(self.to_big() * o.to_big()),
        }
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, o: &Rat) -> Rat {
        self * &o.recip().expect("division by zero")
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rat(Repr::Small(m, *d)),
                None => from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(b) => from_big(-(**b).clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                (&self).$m(o)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, o: &Rat) {
        *self = &*self + o;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, o: &Rat) {
        *self = &*self - o;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, o: &Rat) {
        *self = &*self * o;
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, o: &Rat) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rat {
    fn cmp(&self, o: &Rat) -> Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.parts();
        if d == "1" {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error for malformed rational literals.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatParseError {
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl FromStr for Rat {
    type Err = RatParseError;
    fn from_str(s: &str) -> Result<Rat, RatParseError> {
        let t = s.trim();
        let bad = || RatParseError::Malformed(t.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(RatParseError::ZeroDenominator(t.to_string()));
        }
        Ok(from_big(BigRational::new(n, d)))
    }
}

impl num::traits::Zero for Rat {
    fn zero() -> Rat {
        Rat::zero()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl num::traits::One for Rat {
    fn one() -> Rat {
        Rat::one()
    }
}
