use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde_json::{json, Value};

use super::{fmt_rational, parse_rational, Monomial, Poly, RingDescriptor, RingError, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Q(BigRational),
    Z(u64),
    T(Poly),
}

/// An element of one of the three concrete rings, in canonical form
/// (reduced fraction, residue in `[0, p^k)`, truncated sparse polynomial).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingValue {
    desc: RingDescriptor,
    repr: Repr,
}

fn mod_of(desc: RingDescriptor) -> u64 {
    desc.modulus().expect("modular descriptor")
}

fn reduce_bigint(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

impl RingValue {
    pub fn descriptor(&self) -> RingDescriptor {
        self.desc
    }

    pub fn zero(desc: RingDescriptor) -> Self {
        Self::from_i64(desc, 0)
    }

    pub fn one(desc: RingDescriptor) -> Self {
        Self::from_i64(desc, 1)
    }

    pub fn from_i64(desc: RingDescriptor, n: i64) -> Self {
        let repr = match desc {
            RingDescriptor::Rationals => Repr::Q(BigRational::from_integer(n.into())),
            RingDescriptor::ZMod { .. } => Repr::Z(n.rem_euclid(mod_of(desc) as i64) as u64),
            RingDescriptor::Trunc { .. } => Repr::T(Poly::from_int(n)),
        };
        RingValue { desc, repr }
    }

    /// Image of a rational number; fails in Z/p^k when p divides the denominator.
    pub fn from_rational(desc: RingDescriptor, q: &BigRational) -> Result<Self, RingError> {
        let repr = match desc {
            RingDescriptor::Rationals => Repr::Q(q.clone()),
            RingDescriptor::ZMod { .. } => {
                let m = mod_of(desc);
                let n = reduce_bigint(q.numer(), m);
                let d = reduce_bigint(q.denom(), m);
                let dinv = mod_inverse(d, m).ok_or_else(|| RingError::NotInvertible(format!("denominator {} mod {m}", q.denom())))?;
                Repr::Z(((n as u128 * dinv as u128) % m as u128) as u64)
            }
            RingDescriptor::Trunc { d, .. } => Repr::T(Poly::constant(q.clone()).truncate(d)),
        };
        Ok(RingValue { desc, repr })
    }

    /// The nilpotent generator e_{i+1} of a truncated ring (0-based `i`).
    pub fn var(desc: RingDescriptor, i: u32) -> Result<Self, RingError> {
        match desc {
            RingDescriptor::Trunc { m, d } if i < m => Ok(RingValue { desc, repr: Repr::T(Poly::var(i).truncate(d)) }),
            _ => Err(RingError::Parse(format!("e{}", i + 1), format!("no such variable in {desc}"))),
        }
    }

    pub fn from_poly(desc: RingDescriptor, p: Poly) -> Result<Self, RingError> {
        match desc {
            RingDescriptor::Trunc { m, d } => {
                if p.vars().iter().any(|&v| v >= m) {
                    return Err(RingError::Parse(p.to_string(), format!("variable out of range for {desc}")));
                }
                if p.terms().any(|(mono, _)| !mono.is_nonnegative()) {
                    return Err(RingError::Parse(p.to_string(), "negative exponent".into()));
                }
                Ok(RingValue { desc, repr: Repr::T(p.truncate(d)) })
            }
            _ => Err(RingError::Parse(p.to_string(), format!("{desc} is not a polynomial ring"))),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Q(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self.repr {
            Repr::Z(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match &self.repr {
            Repr::T(p) => Some(p),
            _ => None,
        }
    }

    /// Signed integer view for modular values (centered lift) and integral rationals.
    pub fn to_i64_centered(&self) -> Option<i64> {
        match &self.repr {
            Repr::Q(q) => super::rational_to_i64(q),
            Repr::Z(r) => {
                let m = mod_of(self.desc);
                Some(if *r > m / 2 { *r as i64 - m as i64 } else { *r as i64 })
            }
            Repr::T(p) => p.is_constant().then(|| super::rational_to_i64(&p.constant_term())).flatten(),
        }
    }

    fn same(&self, o: &Self) -> Result<(), RingError> {
        if self.desc == o.desc {
            Ok(())
        } else {
            Err(RingError::DescriptorMismatch(self.desc, o.desc))
        }
    }

    fn with(&self, repr: Repr) -> Self {
        RingValue { desc: self.desc, repr }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, RingError> {
        self.same(o)?;
        Ok(self.with(match (&self.repr, &o.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a + b),
            (Repr::Z(a), Repr::Z(b)) => Repr::Z(((*a as u128 + *b as u128) % mod_of(self.desc) as u128) as u64),
            (Repr::T(a), Repr::T(b)) => Repr::T(a.add(b)),
            _ => unreachable!(),
        }))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, RingError> {
        self.checked_add(&o.negate())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, RingError> {
        self.same(o)?;
        Ok(self.with(match (&self.repr, &o.repr) {
            (Repr::Q(a), Repr::Q(b)) => Repr::Q(a * b),
            (Repr::Z(a), Repr::Z(b)) => Repr::Z(((*a as u128 * *b as u128) % mod_of(self.desc) as u128) as u64),
            (Repr::T(a), Repr::T(b)) => {
                let RingDescriptor::Trunc { d, .. } = self.desc else { unreachable!() };
                Repr::T(a.mul(b, Some(d)))
            }
            _ => unreachable!(),
        }))
    }

    pub fn negate(&self) -> Self {
        self.with(match &self.repr {
            Repr::Q(a) => Repr::Q(-a),
            Repr::Z(a) => Repr::Z(if *a == 0 { 0 } else { mod_of(self.desc) - a }),
            Repr::T(a) => Repr::T(a.neg()),
        })
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Q(a) => Zero::is_zero(a),
            Repr::Z(a) => *a == 0,
            Repr::T(a) => a.is_zero(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match (&self.repr, self.desc) {
            (Repr::Q(a), _) => !Zero::is_zero(a),
            (Repr::Z(a), RingDescriptor::ZMod { p, .. }) => a % p != 0,
            (Repr::T(a), _) => !Zero::is_zero(&a.constant_term()),
            _ => unreachable!(),
        }
    }

    /// Membership in the maximal ideal; for Q the radical is {0}.
    pub fn in_radical(&self) -> bool {
        match &self.repr {
            Repr::Q(a) => Zero::is_zero(a),
            _ => !self.is_unit(),
        }
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        let err = || RingError::NotInvertible(self.to_string());
        Ok(self.with(match (&self.repr, self.desc) {
            (Repr::Q(a), _) => {
                if Zero::is_zero(a) {
                    return Err(err());
                }
                Repr::Q(a.recip())
            }
            (Repr::Z(a), desc) => Repr::Z(mod_inverse(*a, mod_of(desc)).ok_or_else(err)?),
            (Repr::T(a), RingDescriptor::Trunc { d, .. }) => Repr::T(a.trunc_inverse(d).ok_or_else(err)?),
            _ => unreachable!(),
        }))
    }

    /// Image in the residue field (Z/p for Z/p^k, Q for truncated rings).
    pub fn residue(&self) -> RingValue {
        let desc = self.desc.residue_field();
        let repr = match (&self.repr, self.desc) {
            (Repr::Q(a), _) => Repr::Q(a.clone()),
            (Repr::Z(a), RingDescriptor::ZMod { p, .. }) => Repr::Z(a % p),
            (Repr::T(a), _) => Repr::Q(a.constant_term()),
            _ => unreachable!(),
        };
        RingValue { desc, repr }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.desc);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow_signed(&self, e: i64) -> Result<Self, RingError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Serialized form: "num/den" for Q, decimal residue for Z/p^k,
    /// `[{"exp": [...], "coef": "num/den"}]` for truncated polynomials.
    pub fn to_json(&self) -> Value {
        match (&self.repr, self.desc) {
            (Repr::Q(a), _) => Value::String(fmt_rational(a)),
            (Repr::Z(a), _) => json!(a),
            (Repr::T(p), RingDescriptor::Trunc { m, .. }) => Value::Array(
                p.terms()
                    .map(|(mono, c)| {
                        let mut exp = vec![0i32; m as usize];
                        for &(v, e) in mono.pairs() {
                            exp[v as usize] = e;
                        }
                        json!({ "exp": exp, "coef": fmt_rational(c) })
                    })
                    .collect(),
            ),
            _ => unreachable!(),
        }
    }

    pub fn from_json(desc: RingDescriptor, v: &Value) -> Result<Self, RingError> {
        let bad = |why: &str| RingError::Parse(v.to_string(), why.to_string());
        match (desc, v) {
            (_, Value::String(s)) => Self::parse(desc, s),
            (_, Value::Number(n)) => {
                let q = parse_rational(&n.to_string()).ok_or_else(|| bad("not an integer"))?;
                Self::from_rational(desc, &q)
            }
            (RingDescriptor::Trunc { m, .. }, Value::Array(items)) => {
                let mut p = Poly::zero();
                for it in items {
                    let exp = it.get("exp").and_then(Value::as_array).ok_or_else(|| bad("missing exp"))?;
                    if exp.len() != m as usize {
                        return Err(bad("exponent vector has wrong length"));
                    }
                    let mut pairs = Vec::new();
                    for (i, e) in exp.iter().enumerate() {
                        let e = e.as_i64().filter(|e| *e >= 0).ok_or_else(|| bad("exponent must be a nonnegative integer"))?;
                        if e > 0 {
                            pairs.push((i as u32, e as i32));
                        }
                    }
                    let coef = match it.get("coef") {
                        Some(Value::String(s)) => parse_rational(s),
                        Some(Value::Number(n)) => parse_rational(&n.to_string()),
                        _ => None,
                    }
                    .ok_or_else(|| bad("bad coefficient"))?;
                    p.add_term(Monomial::from_pairs(pairs), coef);
                }
                Self::from_poly(desc, p)
            }
            _ => Err(bad("unexpected JSON shape")),
        }
    }

    /// Parses a rational literal in any ring, or (truncated rings) a JSON
    /// term list or a sum like "1 + 2*e1 - 1/2*e1*e3".
    pub fn parse(desc: RingDescriptor, s: &str) -> Result<Self, RingError> {
        let t = s.trim();
        if let Some(q) = parse_rational(t) {
            return Self::from_rational(desc, &q);
        }
        if let RingDescriptor::Trunc { .. } = desc {
            if t.starts_with('[') {
                let v: Value = serde_json::from_str(t).map_err(|e| RingError::Parse(s.into(), e.to_string()))?;
                return Self::from_json(desc, &v);
            }
            return Self::from_poly(desc, parse_poly_expr(t).map_err(|why| RingError::Parse(s.into(), why))?);
        }
        Err(RingError::Parse(s.into(), format!("not a value of {desc}")))
    }

    /// Uniform-ish random element with small coefficients.
    pub fn random<R: Rng + ?Sized>(desc: RingDescriptor, rng: &mut R) -> Self {
        match desc {
            RingDescriptor::Rationals => {
                let n = rng.gen_range(-9i64..=9);
                let d = rng.gen_range(1i64..=5);
                Self::from_rational(desc, &super::rational(n, d)).unwrap()
            }
            RingDescriptor::ZMod { .. } => {
                let m = mod_of(desc);
                RingValue { desc, repr: Repr::Z(rng.gen_range(0..m)) }
            }
            RingDescriptor::Trunc { m, d } => {
                let c = Self::random(RingDescriptor::Rationals, rng);
                let mut p = Poly::constant(c.as_rational().unwrap().clone());
                p = p.add(&random_radical_poly(m, d, rng));
                RingValue { desc, repr: Repr::T(p) }
            }
        }
    }

    pub fn random_unit<R: Rng + ?Sized>(desc: RingDescriptor, rng: &mut R) -> Self {
        loop {
            let x = Self::random(desc, rng);
            if x.is_unit() {
                return x;
            }
        }
    }

    /// Random element of the radical (zero for Q).
    pub fn random_radical<R: Rng + ?Sized>(desc: RingDescriptor, rng: &mut R) -> Self {
        match desc {
            RingDescriptor::Rationals => Self::zero(desc),
            RingDescriptor::ZMod { p, .. } => {
                let m = mod_of(desc);
                RingValue { desc, repr: Repr::Z((rng.gen_range(0..m / p) * p) % m) }
            }
            RingDescriptor::Trunc { m, d } => RingValue { desc, repr: Repr::T(random_radical_poly(m, d, rng)) },
        }
    }

    /// Random unit congruent to 1 modulo the radical.
    pub fn random_one_plus_radical<R: Rng + ?Sized>(desc: RingDescriptor, rng: &mut R) -> Self {
        Self::one(desc).add(&Self::random_radical(desc, rng))
    }
}

fn random_radical_poly<R: Rng + ?Sized>(m: u32, d: u32, rng: &mut R) -> Poly {
    let mut p = Poly::zero();
    if m == 0 || d <= 1 {
        return p;
    }
    let nterms = rng.gen_range(0..=4);
    for _ in 0..nterms {
        let deg = rng.gen_range(1..d);
        let mono = Monomial::from_pairs((0..deg).map(|_| (rng.gen_range(0..m), 1)));
        let c = super::rational(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        p.add_term(mono, c);
    }
    p
}

/// Tiny parser for sums of terms `[coef*]e<i>[^k]*...`.
fn parse_poly_expr(s: &str) -> Result<Poly, String> {
    let mut p = Poly::zero();
    let normalized = s.replace(' ', "").replace('-', "+-");
    for raw in normalized.split('+').filter(|t| !t.is_empty()) {
        let (neg, body) = match raw.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, raw),
        };
        let mut coef = BigRational::one();
        let mut mono = Monomial::one();
        for factor in body.split('*') {
            if let Some(var) = factor.strip_prefix('e') {
                let (idx, e) = match var.split_once('^') {
                    Some((i, e)) => (i, e.parse::<i32>().map_err(|_| format!("bad exponent in `{factor}`"))?),
                    None => (var, 1),
                };
                let idx: u32 = idx.parse().map_err(|_| format!("bad variable `{factor}`"))?;
                if idx == 0 {
                    return Err("variables are numbered from e1".into());
                }
                mono = mono.mul(&Monomial::var_pow(idx - 1, e));
            } else {
                coef *= parse_rational(factor).ok_or_else(|| format!("bad factor `{factor}`"))?;
            }
        }
        p.add_term(mono, if neg { -coef } else { coef });
    }
    Ok(p)
}

impl Scalar for RingValue {
    fn zero_like(&self) -> Self {
        Self::zero(self.desc)
    }
    fn one_like(&self) -> Self {
        Self::one(self.desc)
    }
    fn int_like(&self, n: i64) -> Self {
        Self::from_i64(self.desc, n)
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
    fn neg(&self) -> Self {
        self.negate()
    }
    fn is_zero(&self) -> bool {
        RingValue::is_zero(self)
    }
    fn try_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn is_unit(&self) -> bool {
        RingValue::is_unit(self)
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Q(a) => write!(f, "{}", fmt_rational(a)),
            Repr::Z(a) => write!(f, "{a}"),
            Repr::T(p) => write!(f, "{p}"),
        }
    }
}

impl std::ops::Add for &RingValue {
    type Output = RingValue;
    fn add(self, o: &RingValue) -> RingValue {
        Scalar::add(self, o)
    }
}

impl std::ops::Sub for &RingValue {
    type Output = RingValue;
    fn sub(self, o: &RingValue) -> RingValue {
        Scalar::sub(self, o)
    }
}

impl std::ops::Mul for &RingValue {
    type Output = RingValue;
    fn mul(self, o: &RingValue) -> RingValue {
        Scalar::mul(self, o)
    }
}

impl std::ops::Neg for &RingValue {
    type Output = RingValue;
    fn neg(self) -> RingValue {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z25() -> RingDescriptor {
        RingDescriptor::zmod(5, 2).unwrap()
    }

    #[test]
    fn modular_examples() {
        let d = z25();
        let a = RingValue::from_i64(d, 13);
        assert_eq!(a.mul(&RingValue::from_i64(d, 2)), RingValue::one(d));
        assert_eq!(RingValue::from_i64(d, 2).inv().unwrap(), a);
        assert!(RingValue::from_i64(d, 5).inv().is_err());
        let r = RingValue::from_i64(d, 1 + 5 * 3).residue();
        assert_eq!(r, RingValue::one(RingDescriptor::zmod(5, 1).unwrap()));
        assert!(RingValue::from_i64(RingDescriptor::zmod(7, 2).unwrap(), 3).is_unit());
    }

    #[test]
    fn truncated_examples() {
        let d2 = RingDescriptor::trunc(1, 2).unwrap();
        let e = RingValue::var(d2, 0).unwrap();
        let one = RingValue::one(d2);
        assert_eq!((&one + &e).mul(&(&one - &e)), one);
        assert!(e.in_radical());
        let d3 = RingDescriptor::trunc(1, 3).unwrap();
        let e = RingValue::var(d3, 0).unwrap();
        let one = RingValue::one(d3);
        let expect = &(&one - &e) + &e.pow(2);
        assert_eq!((&one + &e).inv().unwrap(), expect);
    }

    #[test]
    fn rational_example() {
        let q = RingDescriptor::Rationals;
        let a = RingValue::parse(q, "1/2").unwrap();
        let b = RingValue::parse(q, "1/3").unwrap();
        assert_eq!((&a + &b).to_string(), "5/6");
    }

    #[test]
    fn mismatched_descriptors_are_rejected() {
        let a = RingValue::one(z25());
        let b = RingValue::one(RingDescriptor::Rationals);
        assert!(matches!(a.checked_add(&b), Err(RingError::DescriptorMismatch(..))));
    }

    #[test]
    fn json_roundtrip_truncated() {
        let d = RingDescriptor::trunc(3, 3).unwrap();
        let x = RingValue::parse(d, "1 + 2*e1 - 1/2*e1*e3").unwrap();
        let back = RingValue::from_json(d, &x.to_json()).unwrap();
        assert_eq!(x, back);
        assert_eq!(RingValue::parse(d, &x.to_json().to_string()).unwrap(), x);
    }

    #[test]
    fn descriptor_strings() {
        for s in ["q", "zmod:5^2", "zmod:7^1", "trunc:100,2"] {
            assert_eq!(RingDescriptor::parse(s).unwrap().to_string(), s);
        }
        assert!(RingDescriptor::parse("zmod:3^2").is_err());
        assert!(RingDescriptor::parse("zmod:25").is_err());
        assert!(RingDescriptor::parse("trunc:2,0").is_err());
    }
}
