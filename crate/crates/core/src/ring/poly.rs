//! Sparse multivariate polynomials over Q with signed exponents.
//!
//! One representation serves two rings: truncated polynomials (nonnegative
//! exponents, every monomial of total degree >= d dropped) and Laurent
//! polynomials (no truncation, monomials invertible).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Sorted `(variable, exponent)` pairs with nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(SmallVec<[(u32, i32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: u32) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: u32, e: i32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut s = SmallVec::new();
        s.push((v, e));
        Monomial(s)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, i32)>) -> Self {
        let mut m = Self::one();
        for (v, e) in pairs {
            m = m.mul(&Self::var_pow(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    pub fn exponent(&self, v: u32) -> i32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn pairs(&self) -> &[(u32, i32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    /// Split off the power of `v`: returns (exponent of v, rest).
    pub fn split(&self, v: u32) -> (i32, Monomial) {
        let mut rest = SmallVec::new();
        let mut e = 0;
        for &(w, k) in &self.0 {
            if w == v {
                e = k;
            } else {
                rest.push((w, k));
            }
        }
        (e, Monomial(rest))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&(_, e)| e > 0)
    }
}

/// Polynomial as a map monomial → nonzero rational coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

fn keep(m: &Monomial, trunc: Option<u32>) -> bool {
    trunc.is_none_or(|d| m.degree() < d as i64)
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: u32) -> Self {
        Self::term(Monomial::var(v), BigRational::one())
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigRational)>, trunc: Option<u32>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            if keep(&m, trunc) {
                p.add_term(m, c);
            }
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Highest total degree present (`None` for zero).
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &Poly, trunc: Option<u32>) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(d) = trunc {
                    if ma.degree() + mb.degree() >= d as i64 {
                        continue;
                    }
                }
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32, trunc: Option<u32>) -> Poly {
        let mut acc = Poly::from_int(1);
        for _ in 0..e {
            acc = acc.mul(self, trunc);
        }
        acc
    }

    pub fn truncate(&self, d: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m, Some(d))).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Inverse in the truncated ring: requires a nonzero constant term.
    pub fn trunc_inverse(&self, d: u32) -> Option<Poly> {
        let c = self.constant_term();
        if c.is_zero() {
            return None;
        }
        let cinv = c.recip();
        // self = c(1 + n), n nilpotent of order < d
        let n = self.scale(&cinv).sub(&Poly::from_int(1));
        let mut acc = Poly::from_int(1);
        let mut pw = Poly::from_int(1);
        let neg_n = n.neg();
        for _ in 1..d {
            pw = pw.mul(&neg_n, Some(d));
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw);
        }
        Some(acc.scale(&cinv))
    }

    /// Inverse in the Laurent ring: only single terms are units.
    pub fn laurent_inverse(&self) -> Option<Poly> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some(Poly::term(m.inv(), c.recip()))
    }

    /// Coefficient of the bare monomial `v`.
    pub fn linear_coeff(&self, v: u32) -> BigRational {
        self.coeff(&Monomial::var(v))
    }

    pub fn contains_var(&self, v: u32) -> bool {
        self.terms.keys().any(|m| m.exponent(v) != 0)
    }

    pub fn vars(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.terms.keys().flat_map(|m| m.pairs().iter().map(|&(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Replace `v` by `value`. `powers[k]` must hold `value^k` for every
    /// exponent of `v` that occurs (negative exponents need a Laurent inverse).
    pub fn substitute_with_powers(&self, v: u32, powers: &[Poly], trunc: Option<u32>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e == 0 {
                if keep(&rest, trunc) {
                    out.add_term(rest, c.clone());
                }
                continue;
            }
            assert!(e > 0, "negative exponent in substitution");
            let pw = &powers[e as usize];
            let restdeg = rest.degree();
            for (mp, cp) in &pw.terms {
                if let Some(d) = trunc {
                    if restdeg + mp.degree() >= d as i64 {
                        continue;
                    }
                }
                out.add_term(rest.mul(mp), c * cp);
            }
        }
        out
    }

    pub fn substitute(&self, v: u32, value: &Poly, trunc: Option<u32>) -> Poly {
        let maxe = self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0).max(0) as usize;
        let mut powers = vec![Poly::from_int(1)];
        for k in 1..=maxe {
            let next = powers[k - 1].mul(value, trunc);
            powers.push(next);
        }
        self.substitute_with_powers(v, &powers, trunc)
    }

    /// Substitute a variable that occurs with possibly negative exponents by
    /// a Laurent unit (single term) or any value when exponents are >= 0.
    pub fn substitute_laurent(&self, v: u32, value: &Poly) -> Option<Poly> {
        let mut out = Poly::zero();
        let inv = value.laurent_inverse();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            let factor = if e >= 0 { value.pow(e as u32, None) } else { inv.as_ref()?.pow((-e) as u32, None) };
            out = out.add(&factor.mul(&Poly::term(rest, c.clone()), None));
        }
        Some(out)
    }

    pub fn map_coeffs(&self, f: impl Fn(&BigRational) -> BigRational) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, name: &dyn Fn(u32) -> String) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono: Vec<String> = m.pairs().iter().map(|&(v, e)| if e == 1 { name(v) } else { format!("{}^{}", name(v), e) }).collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Poly {
    /// Renders with custom variable names.
    pub fn render(&self, name: impl Fn(u32) -> String) -> String {
        struct W<'a, F: Fn(u32) -> String>(&'a Poly, F);
        impl<F: Fn(u32) -> String> fmt::Display for W<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_with(f, &self.1)
            }
        }
        W(self, name).to_string()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &|v| format!("e{}", v + 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn truncated_inverse_is_geometric_series() {
        let x = Poly::from_int(1).add(&Poly::var(0));
        let inv = x.trunc_inverse(3).unwrap();
        let expect = Poly::from_int(1).sub(&Poly::var(0)).add(&Poly::var(0).pow(2, None));
        assert_eq!(inv, expect);
        assert_eq!(x.mul(&inv, Some(3)), Poly::from_int(1));
    }

    #[test]
    fn monomials_cancel_in_laurent_products() {
        let x = Poly::term(Monomial::var_pow(2, -3), q(2));
        let y = Poly::term(Monomial::var_pow(2, 3), q(1) / q(2));
        assert_eq!(x.mul(&y, None), Poly::from_int(1));
    }

    #[test]
    fn substitution_respects_truncation() {
        // (e1 + e2)^2 with e1 := e2 in degree < 2 leaves nothing
        let p = Poly::var(0).add(&Poly::var(1)).pow(2, None);
        assert!(p.substitute(0, &Poly::var(1), Some(2)).is_zero());
        let r = Poly::var(0).mul(&Poly::var(1), None).substitute(0, &Poly::from_int(3), None);
        assert_eq!(r, Poly::var(1).scale(&q(3)));
    }
}
