//! Exact scalar fields.
//!
//! Everything in the crate is generic over [`Field`]. Two implementations are
//! provided: the rationals [`Q`] and the prime fields [`Fp`]. There is no
//! floating point anywhere.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact field.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(n: i64) -> Self;
    /// `n / d`, or `None` when `d` vanishes in the field.
    fn from_ratio(n: i64, d: i64) -> Option<Self> {
        Self::from_i64(d).inv().map(|di| Self::from_i64(n) * di)
    }
    /// Zero for the rationals.
    fn characteristic() -> u64;
    /// Short descriptor used in report fingerprints, e.g. `Q` or `GF(7)`.
    fn descriptor() -> String;
    /// All elements, for finite fields only.
    fn elements() -> Option<Vec<Self>> {
        None
    }
    /// Parses `n` or `n/d`.
    fn parse(s: &str) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A rational number.
///
/// Values that fit into a pair of `i64` are stored inline and combined with
/// checked `i128` arithmetic; anything larger falls back to a big rational.
/// The representation is canonical, so derived equality is numeric equality.
#[derive(Clone)]
pub enum Q {
    #[doc(hidden)]
    Small(i64, i64),
    #[doc(hidden)]
    Big(BigRational),
}

impl Q {
    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Q::from_i128(n as i128, d as i128)
    }

    pub fn integer(n: i64) -> Q {
        Q::Small(n, 1)
    }

    fn from_i128(n: i128, d: i128) -> Q {
        debug_assert!(d != 0);
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q::Small(n, d),
            _ => Q::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(n, d),
            _ => Q::Big(r),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Q::Small(n, _) => BigInt::from(*n),
            Q::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Q::Small(_, d) => BigInt::from(*d),
            Q::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(n, _) => *n < 0,
            Q::Big(r) => r.is_negative(),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
            (Q::Big(x), Q::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Q {}

impl Hash for Q {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Q::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Q::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, rhs: Q) -> Q {
        if let (Q::Small(a, b), Q::Small(c, d)) = (&self, &rhs) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                if let Some(n) = a.checked_add(c) {
                    return Q::from_i128(n, b);
                }
            } else if let (Some(x), Some(y), Some(den)) =
                (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d))
            {
                if let Some(n) = x.checked_add(y) {
                    return Q::from_i128(n, den);
                }
            }
        }
        Q::from_big(self.to_big() + rhs.to_big())
    }
}

impl Sub for Q {
    type Output = Q;
    fn sub(self, rhs: Q) -> Q {
        self + (-rhs)
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, rhs: Q) -> Q {
        if let (Q::Small(a, b), Q::Small(c, d)) = (&self, &rhs) {
            if *a == 0 || *c == 0 {
                return Q::Small(0, 1);
            }
            // cross-cancel first so the products stay small
            let g1 = a.gcd(d);
            let g2 = c.gcd(b);
            let (a, d) = ((a / g1) as i128, (d / g1) as i128);
            let (c, b) = ((c / g2) as i128, (b / g2) as i128);
            return Q::from_i128(a * c, b * d);
        }
        Q::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(n, d) => match n.checked_neg() {
                Some(m) => Q::Small(m, d),
                None => Q::from_big(-BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
            },
            Q::Big(r) => Q::from_big(-r),
        }
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Q::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Q {
    type Err = String;
    fn from_str(s: &str) -> Result<Q, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}

impl Field for Q {
    fn zero() -> Q {
        Q::Small(0, 1)
    }
    fn one() -> Q {
        Q::Small(1, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }
    fn inv(&self) -> Option<Q> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Q::Small(n, d) => Q::from_i128(*d as i128, *n as i128),
            Q::Big(r) => Q::from_big(r.recip()),
        })
    }
    fn from_i64(n: i64) -> Q {
        Q::Small(n, 1)
    }
    fn from_ratio(n: i64, d: i64) -> Option<Q> {
        (d != 0).then(|| Q::new(n, d))
    }
    fn characteristic() -> u64 {
        0
    }
    fn descriptor() -> String {
        "Q".to_string()
    }
    fn parse(s: &str) -> Option<Q> {
        s.parse().ok()
    }
}

/// The prime field with `P` elements. `P` must be a prime below 2^32.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(n: i64) -> Self {
        Fp(n.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(self.0 * rhs.0 % P)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn characteristic() -> u64 {
        P
    }
    fn descriptor() -> String {
        format!("GF({P})")
    }
    fn elements() -> Option<Vec<Self>> {
        Some((0..P).map(Fp).collect())
    }
    fn parse(s: &str) -> Option<Self> {
        let q: Q = s.parse().ok()?;
        let p = BigInt::from(P);
        let n = q.numer().mod_floor(&p).to_i64()?;
        let d = q.denom().mod_floor(&p).to_i64()?;
        Fp::<P>::from_ratio(n, d)
    }
}

/// The prime field used by tests that need eigenvalues to split over small
/// group exponents (7 is 1 mod 6).
pub type F7 = Fp<7>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_overflow_promotes_and_demotes() {
        let big = Q::integer(i64::MAX) * Q::integer(i64::MAX);
        assert!(matches!(big, Q::Big(_)));
        let back = big * Q::new(1, i64::MAX);
        assert_eq!(back, Q::integer(i64::MAX));
        assert!(matches!(back, Q::Small(..)));
        assert_eq!(-Q::integer(i64::MIN), Q::integer(i64::MAX) + Q::one());
    }

    #[test]
    fn q_parse_and_display() {
        let q: Q = "6/-4".parse().unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(Q::parse("7").unwrap(), Q::integer(7));
        assert!(Q::parse("1/0").is_none());
    }

    #[test]
    fn fp_inverse_and_parse() {
        for x in 1..7 {
            let a = F7::new(x);
            assert_eq!(a * a.inv().unwrap(), F7::one());
        }
        assert_eq!(F7::parse("1/2").unwrap(), F7::new(4));
        assert_eq!(F7::parse("-1").unwrap(), F7::new(6));
    }
}
