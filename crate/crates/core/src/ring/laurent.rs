use std::fmt;

use num_rational::BigRational;

use super::{Poly, Scalar};

/// Laurent polynomial over Q; used for identities that hold for symbolic
/// unit parameters (torus coordinates, basis-change scalars).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent(pub Poly);

impl Laurent {
    pub fn var(v: u32) -> Self {
        Laurent(Poly::var(v))
    }

    pub fn constant(c: BigRational) -> Self {
        Laurent(Poly::constant(c))
    }

    pub fn int(n: i64) -> Self {
        Laurent(Poly::from_int(n))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Laurent(self.0.scale(c))
    }

    /// Substitute `v := value`; negative powers of `v` require `value` to be a monomial.
    pub fn subst(&self, v: u32, value: &Laurent) -> Option<Laurent> {
        self.0.substitute_laurent(v, &value.0).map(Laurent)
    }
}

impl Scalar for Laurent {
    fn zero_like(&self) -> Self {
        Laurent(Poly::zero())
    }
    fn one_like(&self) -> Self {
        Laurent::int(1)
    }
    fn int_like(&self, n: i64) -> Self {
        Laurent::int(n)
    }
    fn add(&self, o: &Self) -> Self {
        Laurent(self.0.add(&o.0))
    }
    fn sub(&self, o: &Self) -> Self {
        Laurent(self.0.sub(&o.0))
    }
    fn mul(&self, o: &Self) -> Self {
        Laurent(self.0.mul(&o.0, None))
    }
    fn neg(&self) -> Self {
        Laurent(self.0.neg())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.0.laurent_inverse().map(Laurent)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
