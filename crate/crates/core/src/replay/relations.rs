//! Seeded random checks of the defining relations among x_α, w_α, h_α.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::group::{root_matrix, torus_matrix, weyl_matrix};
use crate::report::Report;
use crate::ring::{RingDescriptor, RingValue};
use crate::rootsys::{all_roots, cartan_int, reflect, Root};

/// ε with w_α(1)·x_β(1)·w_α(1)⁻¹ = x_{s_α β}(ε), read off over the integers.
pub fn weyl_sign(a: Root, b: Root) -> Option<i64> {
    let w = weyl_matrix(a, &1i64)?;
    let wi = weyl_matrix(a, &-1i64)?;
    let lhs = w.mul(&root_matrix(b, &1i64)).mul(&wi);
    let s = reflect(&b, &a);
    [1i64, -1].into_iter().find(|e| lhs == root_matrix(s, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Additivity,
    WeylConjugation,
    TorusAction,
    TorusMultiplicativity,
}

impl Relation {
    pub const ALL: [Relation; 4] =
        [Relation::Additivity, Relation::WeylConjugation, Relation::TorusAction, Relation::TorusMultiplicativity];

    pub fn statement(&self) -> &'static str {
        match self {
            Relation::Additivity => "x_b(s)·x_b(t) = x_b(s+t)",
            Relation::WeylConjugation => "w_a(1)·x_b(t)·w_a(1)⁻¹ = x_{s_a b}(±t)",
            Relation::TorusAction => "h_a(u)·x_b(t)·h_a(u)⁻¹ = x_b(u^<b,a>·t)",
            Relation::TorusMultiplicativity => "h_a(u)·h_a(v) = h_a(uv)",
        }
    }

    /// One random instance; `Err` carries a description of the failing instance.
    pub fn trial<R: Rng + ?Sized>(&self, desc: RingDescriptor, rng: &mut R) -> Result<(), String> {
        let roots = all_roots();
        let a = *roots.choose(rng).unwrap();
        let b = *roots.choose(rng).unwrap();
        let t = RingValue::random(desc, rng);
        let u = RingValue::random_unit(desc, rng);
        let (lhs, rhs, what) = match self {
            Relation::Additivity => {
                let s = RingValue::random(desc, rng);
                (root_matrix(b, &s).mul(&root_matrix(b, &t)), root_matrix(b, &(&s + &t)), format!("b={b}, s={s}, t={t}"))
            }
            Relation::WeylConjugation => {
                let eps = weyl_sign(a, b).ok_or_else(|| format!("a={a}, b={b}: no sign over the integers"))?;
                let w = weyl_matrix(a, &RingValue::one(desc)).unwrap();
                let wi = weyl_matrix(a, &RingValue::from_i64(desc, -1)).unwrap();
                let lhs = w.mul(&root_matrix(b, &t)).mul(&wi);
                (lhs, root_matrix(reflect(&b, &a), &(&RingValue::from_i64(desc, eps) * &t)), format!("a={a}, b={b}, t={t}"))
            }
            Relation::TorusAction => {
                let h = torus_matrix(a, &u).unwrap();
                let hi = torus_matrix(a, &u.inv().unwrap()).unwrap();
                let c = u.pow_signed(cartan_int(&b, &a) as i64).unwrap();
                (h.mul(&root_matrix(b, &t)).mul(&hi), root_matrix(b, &(&c * &t)), format!("a={a}, b={b}, u={u}, t={t}"))
            }
            Relation::TorusMultiplicativity => {
                let v = RingValue::random_unit(desc, rng);
                let lhs = torus_matrix(a, &u).unwrap().mul(&torus_matrix(a, &v).unwrap());
                (lhs, torus_matrix(a, &(&u * &v)).unwrap(), format!("a={a}, u={u}, v={v}"))
            }
        };
        match lhs.first_difference(&rhs) {
            None => Ok(()),
            Some((i, j)) => Err(format!("{what}: entry ({},{}) {} vs {}", i + 1, j + 1, lhs.get(i, j), rhs.get(i, j))),
        }
    }
}

/// Runs `trials` instances of each relation in each ring.
pub fn relations_report<R: Rng + ?Sized>(rings: &[RingDescriptor], trials: usize, rng: &mut R) -> Report {
    Report::timed("relations", |r| {
        for &desc in rings {
            for rel in Relation::ALL {
                let mut first_failure = None;
                let mut failed = 0;
                for _ in 0..trials {
                    if let Err(e) = rel.trial(desc, rng) {
                        failed += 1;
                        first_failure.get_or_insert(e);
                    }
                }
                r.check(format!("{} over {desc} ({trials} trials)", rel.statement()), failed == 0, || {
                    format!("{failed} failures; first: {}", first_failure.unwrap_or_default())
                });
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_pair_has_a_sign() {
        for a in all_roots() {
            for b in all_roots() {
                assert!(weyl_sign(a, b).is_some(), "{a} {b}");
            }
        }
    }

    #[test]
    fn reflection_signs_are_minus_one() {
        // w_a x_a(t) w_a⁻¹ = x_{−a}(−t)
        for a in all_roots() {
            assert_eq!(weyl_sign(a, a), Some(-1), "{a}");
        }
    }

    #[test]
    fn small_suite_passes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = relations_report(&[RingDescriptor::zmod(7, 2).unwrap()], 10, &mut rng);
        assert!(r.all_pass(), "{}", r.to_text());
    }
}
