//! Coefficient rings: Q, Z/p^k (p >= 5) and truncated polynomial rings over Q.

mod laurent;
pub mod poly;
mod value;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use laurent::Laurent;
pub use poly::{Monomial, Poly};
pub use value::RingValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(RingDescriptor, RingDescriptor),
    #[error("not invertible in this ring: {0}")]
    NotInvertible(String),
    #[error("invalid ring descriptor `{0}`: {1}")]
    InvalidDescriptor(String, String),
    #[error("cannot parse ring value `{0}`: {1}")]
    Parse(String, String),
}

/// Which coefficient ring a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingDescriptor {
    Rationals,
    /// Z / p^k; `p` prime, `p >= 5`.
    ZMod {
        p: u64,
        k: u32,
    },
    /// Q[e1..em] / (all monomials of degree >= d).
    Trunc {
        m: u32,
        d: u32,
    },
}

impl RingDescriptor {
    pub fn zmod(p: u64, k: u32) -> Result<Self, RingError> {
        let name = format!("zmod:{p}^{k}");
        if p < 5 || !is_prime(p) {
            return Err(RingError::InvalidDescriptor(name, "p must be a prime >= 5".into()));
        }
        if k == 0 {
            return Err(RingError::InvalidDescriptor(name, "k must be >= 1".into()));
        }
        match p.checked_pow(k) {
            Some(n) if n < (1u64 << 62) => Ok(RingDescriptor::ZMod { p, k }),
            _ => Err(RingError::InvalidDescriptor(name, "p^k must be below 2^62".into())),
        }
    }

    pub fn trunc(m: u32, d: u32) -> Result<Self, RingError> {
        if d == 0 {
            return Err(RingError::InvalidDescriptor(format!("trunc:{m},{d}"), "d must be >= 1".into()));
        }
        Ok(RingDescriptor::Trunc { m, d })
    }

    /// Parses "q", "zmod:p^k" (or "zmod:n" with n prime) and "trunc:m,d".
    pub fn parse(s: &str) -> Result<Self, RingError> {
        let bad = |why: &str| RingError::InvalidDescriptor(s.to_string(), why.to_string());
        let s_trim = s.trim();
        if s_trim.eq_ignore_ascii_case("q") {
            return Ok(RingDescriptor::Rationals);
        }
        if let Some(rest) = s_trim.strip_prefix("zmod:") {
            let (p, k) = match rest.split_once('^') {
                Some((p, k)) => (p, k),
                None => (rest, "1"),
            };
            let p: u64 = p.trim().parse().map_err(|_| bad("p is not an integer"))?;
            let k: u32 = k.trim().parse().map_err(|_| bad("k is not an integer"))?;
            return Self::zmod(p, k);
        }
        if let Some(rest) = s_trim.strip_prefix("trunc:") {
            let (m, d) = rest.split_once(',').ok_or_else(|| bad("expected trunc:m,d"))?;
            let m: u32 = m.trim().parse().map_err(|_| bad("m is not an integer"))?;
            let d: u32 = d.trim().parse().map_err(|_| bad("d is not an integer"))?;
            return Self::trunc(m, d);
        }
        Err(bad("expected q, zmod:p^k or trunc:m,d"))
    }

    pub fn modulus(&self) -> Option<u64> {
        match *self {
            RingDescriptor::ZMod { p, k } => Some(p.pow(k)),
            _ => None,
        }
    }

    pub fn is_local(&self) -> bool {
        !matches!(self, RingDescriptor::Rationals)
    }

    /// Residue field of the (local) ring; Q is its own residue field.
    pub fn residue_field(&self) -> RingDescriptor {
        match *self {
            RingDescriptor::Rationals => RingDescriptor::Rationals,
            RingDescriptor::ZMod { p, .. } => RingDescriptor::ZMod { p, k: 1 },
            RingDescriptor::Trunc { .. } => RingDescriptor::Rationals,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Rationals => write!(f, "q"),
            RingDescriptor::ZMod { p, k } => write!(f, "zmod:{p}^{k}"),
            RingDescriptor::Trunc { m, d } => write!(f, "trunc:{m},{d}"),
        }
    }
}

impl std::str::FromStr for RingDescriptor {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i.saturating_mul(i) <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Minimal interface the dense matrix code needs. Constructors take `&self`
/// as a prototype so that runtime-parametrized rings need no global context.
///
/// For [`RingValue`] the arithmetic methods panic on descriptor mismatch; use
/// the `checked_*` methods where operands come from user input.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn try_inverse(&self) -> Option<Self>;
    fn is_unit(&self) -> bool {
        self.try_inverse().is_some()
    }
    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn int_like(&self, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn is_unit(&self) -> bool {
        !Zero::is_zero(self)
    }
}

/// Integers; only ±1 are units. Overflow panics (all integer matrices here
/// have tiny entries).
impl Scalar for i64 {
    fn zero_like(&self) -> Self {
        0
    }
    fn one_like(&self) -> Self {
        1
    }
    fn int_like(&self, n: i64) -> Self {
        n
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(*o).expect("integer overflow")
    }
    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(*o).expect("integer overflow")
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(*o).expect("integer overflow")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn try_inverse(&self) -> Option<Self> {
        (self.abs() == 1).then_some(*self)
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exact conversion of an integral rational to i64.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}
