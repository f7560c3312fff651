//! Normal form λ·t1(s1)·t2(s2)·x_{α1}(t1)···x_{α6}(t6)·x_{−α1}(u1)···x_{−α6}(u6)
//! and the recovery of its 15 parameters from 15 matrix entries.

use std::fmt;

use rand::Rng;
use serde_json::{json, Value};

use crate::chevalley::DIM;
use crate::group::{coweight_torus, root_matrix, GroupElement, RMatrix};
use crate::matrix::Matrix;
use crate::report::Report;
use crate::ring::{RingDescriptor, RingValue, Scalar};
use crate::rootsys::Root;

use super::ReplayError;

/// The entries (1-based) read by the extraction.
pub const PROD2_ENTRIES: [(usize, usize); 15] = [
    (12, 12),
    (12, 10),
    (12, 8),
    (12, 6),
    (12, 4),
    (12, 14),
    (10, 12),
    (10, 10),
    (10, 8),
    (14, 12),
    (4, 12),
    (4, 6),
    (8, 8),
    (14, 6),
    (14, 8),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusUnipotentParams {
    pub lambda: RingValue,
    pub s: [RingValue; 2],
    pub t: [RingValue; 6],
    pub u: [RingValue; 6],
}

impl TorusUnipotentParams {
    pub fn trivial(desc: RingDescriptor) -> Self {
        let one = RingValue::one(desc);
        let zero = RingValue::zero(desc);
        TorusUnipotentParams {
            lambda: one.clone(),
            s: [one.clone(), one],
            t: std::array::from_fn(|_| zero.clone()),
            u: std::array::from_fn(|_| zero.clone()),
        }
    }

    /// λ a unit, s_i ≡ 1 and t_i, u_i in the radical.
    pub fn random<R: Rng + ?Sized>(desc: RingDescriptor, rng: &mut R) -> Self {
        TorusUnipotentParams {
            lambda: RingValue::random_unit(desc, rng),
            s: std::array::from_fn(|_| RingValue::random_one_plus_radical(desc, rng)),
            t: std::array::from_fn(|_| RingValue::random_radical(desc, rng)),
            u: std::array::from_fn(|_| RingValue::random_radical(desc, rng)),
        }
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.lambda.descriptor()
    }

    pub fn to_json(&self) -> Value {
        let arr = |v: &[RingValue]| Value::Array(v.iter().map(RingValue::to_json).collect());
        json!({
            "ring": self.descriptor().to_string(),
            "lambda": self.lambda.to_json(),
            "s": arr(&self.s),
            "t": arr(&self.t),
            "u": arr(&self.u),
        })
    }
}

impl fmt::Display for TorusUnipotentParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lambda = {}", self.lambda)?;
        for (i, s) in self.s.iter().enumerate() {
            writeln!(f, "s{} = {s}", i + 1)?;
        }
        for (i, t) in self.t.iter().enumerate() {
            writeln!(f, "t{} = {t}", i + 1)?;
        }
        for (i, u) in self.u.iter().enumerate() {
            writeln!(f, "u{} = {u}", i + 1)?;
        }
        Ok(())
    }
}

pub fn prod2_assemble(p: &TorusUnipotentParams) -> Result<GroupElement, ReplayError> {
    let desc = p.descriptor();
    let not_unit = |what: &str, v: &RingValue| ReplayError::NotNormalForm(format!("{what} = {v} is not a unit"));
    let mut m: RMatrix = Matrix::identity(DIM, &RingValue::one(desc)).scale(&p.lambda);
    for (i, s) in p.s.iter().enumerate() {
        m = m.mul(&coweight_torus(i + 1, s).ok_or_else(|| not_unit(&format!("s{}", i + 1), s))?);
    }
    for (i, t) in p.t.iter().enumerate() {
        m = m.mul(&root_matrix(Root::from_index(i as i32 + 1), t));
    }
    for (i, u) in p.u.iter().enumerate() {
        m = m.mul(&root_matrix(Root::from_index(-(i as i32) - 1), u));
    }
    Ok(GroupElement { matrix: m, word: None })
}

const MAX_ROUNDS: usize = 256;

/// Recovers the parameters from the 15 entries and verifies by reassembly.
pub fn prod2_extract(x: &GroupElement) -> Result<TorusUnipotentParams, ReplayError> {
    let desc = x.descriptor();
    if !desc.is_local() {
        return Err(ReplayError::NotLocal(desc));
    }
    let e = |r: usize, c: usize| x.matrix.get(r - 1, c - 1).clone();
    let k = |n: i64| RingValue::from_i64(desc, n);
    let inv = |v: &RingValue, what: &str| v.inv().map_err(|_| ReplayError::NotNormalForm(format!("{what} = {v} is not a unit")));
    let zero = k(0);

    // row 12 carries λ/(s1³s2²)·(u-data)
    let c = e(12, 12);
    let ci = inv(&c, "x(12,12)")?;
    let mut u: [RingValue; 6] = std::array::from_fn(|_| zero.clone());
    u[1] = &e(12, 10) * &ci;
    u[2] = (&e(12, 8) * &ci).negate();
    u[3] = (&e(12, 6) * &ci).negate();
    u[4] = &e(12, 4) * &ci;
    u[5] = &(&e(12, 14) * &ci) - &(&u[1] * &u[4]);
    // row 10: μ = λ/(s1³s2)
    let mu = &e(10, 10) - &(&e(10, 12) * &u[1]);
    let mui = inv(&mu, "x(10,10) − x(10,12)·u2")?;
    let mut t: [RingValue; 6] = std::array::from_fn(|_| zero.clone());
    t[1] = &e(10, 12) * &mui;
    let s2 = &mu * &ci;
    u[0] = &(&e(10, 8) * &mui) + &(&t[1] * &u[2]);

    // the remaining six unknowns: one invertible coefficient per equation
    let (x1412, x412, x46, x88, x146, x148) = (e(14, 12), e(4, 12), e(4, 6), e(8, 8), e(14, 6), e(14, 8));
    let mut s1 = k(1);
    let [u1, u3, u4] = [u[0].clone(), u[2].clone(), u[3].clone()];
    let t2 = t[1].clone();
    let mut converged = false;
    for _ in 0..MAX_ROUNDS {
        let lambda = &(&c * &s1.pow(3)) * &s2.pow(2);
        let li = inv(&lambda, "λ")?;
        let [t1, _, t3, t4, t5, t6] = t.clone();
        let nt6 = (&(&(&x1412 * &li) - &(&t2 * &t5)) - &(&k(3) * &(&t3 * &t4))).scale_half();
        let t1sq = &t1 * &t1;
        let t1cu = &t1sq * &t1;
        let nt5 = &(&(&(&(&x412 * &s2) * &li) + &(&t1cu * &t2)) - &(&k(3) * &(&t1sq * &t3))) - &(&k(3) * &(&t1 * &t4));
        let nt1 = &(&(&(&(&(&t1cu * &(&t2 * &u4)) - &(&t1cu * &(&u1 * &u1))) - &(&k(3) * &(&t1sq * &(&t3 * &u4))))
            - &(&k(2) * &(&t1sq * &u1)))
            - &(&k(3) * &(&t1 * &(&t4 * &u4))))
            - &(&(&t5 * &u4) + &(&(&x46 * &s2) * &li));
        let bracket = &(&(&(&k(3) * &(&t1 * &(&t2 * &u3))) - &(&k(3) * &(&t1 * &u1))) - &(&k(3) * &(&t3 * &u3))) - &k(1);
        let denom = &(&c * &s2) * &bracket;
        let ns1 = (&x88 * &inv(&denom, "x(12,12)·s2·(3t1t2u3 − 3t1u1 − 3t3u3 − 1)")?).negate();
        let nt3 = (&(&x146 * &li)
            + &(&(&(&(&(&t2 * &(&t5 * &u4)) + &(&k(3) * &(&t3 * &(&t4 * &u4)))) - &(&k(2) * &(&t4 * &u1))) + &(&t5 * &(&u1 * &u1)))
                + &(&k(2) * &(&t6 * &u4))))
            .negate();
        let nt4 =
            &(&(&(&(&x148 * &li) + &(&t2 * &(&t5 * &u3))) + &(&k(3) * &(&t3 * &(&t4 * &u3)))) + &(&t5 * &u1)) + &(&k(2) * &(&t6 * &u3));
        let next = [nt1, t2.clone(), nt3, nt4, nt5, nt6];
        if next == t && ns1 == s1 {
            converged = true;
            break;
        }
        t = next;
        s1 = ns1;
    }
    if !converged {
        return Err(ReplayError::NotNormalForm("parameter iteration does not converge".into()));
    }
    let lambda = &(&c * &s1.pow(3)) * &s2.pow(2);
    let p = TorusUnipotentParams { lambda, s: [s1, s2], t, u };
    let back = prod2_assemble(&p)?;
    if let Some((i, j)) = back.matrix.first_difference(&x.matrix) {
        return Err(ReplayError::NotNormalForm(format!(
            "reassembly differs at ({},{}): {} vs {}",
            i + 1,
            j + 1,
            back.matrix.get(i, j),
            x.matrix.get(i, j)
        )));
    }
    Ok(p)
}

/// assemble → extract → equality of parameters (and, inside extract, of the matrix).
pub fn prod2_report<R: Rng + ?Sized>(rings: &[RingDescriptor], trials: usize, rng: &mut R) -> Report {
    Report::timed("prod2", |r| {
        for &desc in rings {
            let mut bad = None;
            for n in 0..trials {
                let p = TorusUnipotentParams::random(desc, rng);
                let outcome = prod2_assemble(&p).and_then(|x| prod2_extract(&x));
                match outcome {
                    Ok(q) if q == p => {}
                    Ok(q) => bad = Some(format!("trial {n}: recovered\n{q}from\n{p}")),
                    Err(e) => bad = Some(format!("trial {n}: {e}")),
                }
                if bad.is_some() {
                    break;
                }
            }
            r.check(format!("{trials} random roundtrips over {desc}"), bad.is_none(), || bad.unwrap());
        }
    })
}

trait Half {
    fn scale_half(&self) -> Self;
}

impl Half for RingValue {
    fn scale_half(&self) -> Self {
        let h = self.int_like(2).try_inverse().expect("2 is invertible in the ring");
        self * &h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_gives_trivial_parameters() {
        let d = RingDescriptor::zmod(5, 2).unwrap();
        let x = GroupElement::identity(d);
        assert_eq!(prod2_extract(&x).unwrap(), TorusUnipotentParams::trivial(d));
    }

    #[test]
    fn single_u2_is_read_from_row_twelve() {
        let d = RingDescriptor::zmod(5, 2).unwrap();
        let mut p = TorusUnipotentParams::trivial(d);
        p.u[1] = RingValue::from_i64(d, 5);
        let x = prod2_assemble(&p).unwrap();
        // x_{−α2}(u) puts +u at (12,10) in this basis
        assert_eq!(x.matrix.get(11, 9).to_i64_centered(), Some(5));
        assert_eq!(prod2_extract(&x).unwrap(), p);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for desc in [RingDescriptor::zmod(5, 3).unwrap(), RingDescriptor::trunc(14, 3).unwrap()] {
            for _ in 0..5 {
                let p = TorusUnipotentParams::random(desc, &mut rng);
                let x = prod2_assemble(&p).unwrap();
                assert_eq!(prod2_extract(&x).unwrap(), p);
            }
        }
    }

    #[test]
    fn non_unit_corner_is_rejected() {
        let d = RingDescriptor::zmod(5, 2).unwrap();
        let mut x = GroupElement::identity(d);
        x.matrix.set(11, 11, RingValue::from_i64(d, 5));
        assert!(matches!(prod2_extract(&x), Err(ReplayError::NotNormalForm(_))));
    }
}
