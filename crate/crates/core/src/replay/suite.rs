//! The full replay: every sub-report, run concurrently, collected in a fixed order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chevalley::{explicit, verify_chevalley_properties, IntMatrix};
use crate::group::{root_matrix, torus_matrix, weyl_matrix};
use crate::report::Report;
use crate::ring::RingDescriptor;
use crate::rootsys::Root;

use super::basis_change::basis_change_commute;
use super::conditions::verify_conditions;
use super::elimination::{elimination_report, EliminationOptions, Ledger};
use super::hblock::hblock_report;
use super::involution::involution_report;
use super::normalizer::normalizer_report;
use super::prod2::prod2_report;
use super::relations::relations_report;
use super::shapes::verify_block_shapes;
use super::torus_image::verify_torus_image;
use super::units::units_report;

#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Trials per relation, prod2 roundtrips per ring, involution conjugations.
    pub trials: usize,
    /// Random (k,l,m) triples for the unit product check.
    pub unit_triples: usize,
    /// Replaces the default rings of the randomized suites.
    pub ring: Option<RingDescriptor>,
    pub elimination: EliminationOptions,
    /// Also run the elimination at d = 3.
    pub guard: bool,
    pub ledger: Option<Ledger>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            trials: 100,
            unit_triples: 50,
            ring: None,
            elimination: EliminationOptions::default(),
            guard: true,
            ledger: None,
        }
    }
}

fn zmod(p: u64, k: u32) -> RingDescriptor {
    RingDescriptor::zmod(p, k).expect("p ≥ 5")
}

fn trunc(m: u32, d: u32) -> RingDescriptor {
    RingDescriptor::trunc(m, d).expect("valid truncation")
}

impl SuiteOptions {
    fn rings(&self, default: &[RingDescriptor]) -> Vec<RingDescriptor> {
        match self.ring {
            Some(r) => vec![r],
            None => default.to_vec(),
        }
    }

    /// Independent stream per sub-suite so that results do not depend on scheduling.
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    pub fn relation_rings(&self) -> Vec<RingDescriptor> {
        self.rings(&[zmod(5, 2), zmod(7, 2), trunc(4, 3)])
    }

    pub fn prod2_rings(&self) -> Vec<RingDescriptor> {
        self.rings(&[zmod(5, 2), zmod(5, 3), trunc(14, 3)])
    }

    pub fn unit_rings(&self) -> Vec<RingDescriptor> {
        self.rings(&[zmod(5, 2), zmod(7, 2)])
    }

    pub fn involution_ring(&self) -> RingDescriptor {
        self.ring.unwrap_or(zmod(5, 2))
    }
}

/// Built x_{α1}(1), x_{α2}(1), w_{αi}(1), h_{αi}(−1) against the printed matrices.
pub fn generator_fidelity() -> Report {
    Report::timed("generators", |r| {
        let a1 = Root::simple(1);
        let a2 = Root::simple(2);
        let cases: [(&str, IntMatrix, IntMatrix); 6] = [
            ("x_a1(1)", root_matrix(a1, &1), explicit::x1()),
            ("x_a2(1)", root_matrix(a2, &1), explicit::x2()),
            ("w1 = w_a1(1)", weyl_matrix(a1, &1).unwrap(), explicit::w1()),
            ("w2 = w_a2(1)", weyl_matrix(a2, &1).unwrap(), explicit::w2()),
            ("h_a1(-1)", torus_matrix(a1, &-1).unwrap(), explicit::h1_minus_one()),
            ("h_a2(-1)", torus_matrix(a2, &-1).unwrap(), explicit::h2_minus_one()),
        ];
        for (name, built, printed) in cases {
            r.check(format!("{name} equals the printed matrix"), built == printed, || {
                let diffs: Vec<String> = built
                    .entries()
                    .filter(|&(i, j, v)| v != printed.get(i, j))
                    .map(|(i, j, v)| format!("({},{}) built {v}, printed {}", i + 1, j + 1, printed.get(i, j)))
                    .collect();
                format!("{} entries differ: {}", diffs.len(), diffs.join("; "))
            });
        }
        let printed_w1 = explicit::w1();
        for (t, name) in [(-1i64, "w_a1(-1)"), (1, "w_a1(1)")] {
            if weyl_matrix(a1, &t).unwrap() == printed_w1 {
                r.note("printed w1", format!("equals {name}"));
            }
        }
    })
}

pub fn elimination_suite(opts: &SuiteOptions) -> Report {
    let ledger = opts.ledger.clone().unwrap_or_else(Ledger::paper);
    elimination_report(&ledger, &opts.elimination, opts.guard)
}

pub fn relations_suite(opts: &SuiteOptions) -> Report {
    relations_report(&opts.relation_rings(), opts.trials, &mut opts.rng(1))
}

pub fn prod2_suite(opts: &SuiteOptions) -> Report {
    prod2_report(&opts.prod2_rings(), opts.trials, &mut opts.rng(2))
}

pub fn units_suite(opts: &SuiteOptions) -> Report {
    units_report(&opts.unit_rings(), opts.unit_triples, &mut opts.rng(3))
}

pub fn involution_suite(opts: &SuiteOptions) -> Report {
    involution_report(opts.involution_ring(), opts.trials, &mut opts.rng(4))
}

/// Every sub-report, in a fixed order regardless of completion order.
pub fn verify_paper(opts: &SuiteOptions) -> Vec<Report> {
    type Job<'a> = Box<dyn Fn() -> Report + Send + Sync + 'a>;
    let jobs: Vec<Job> = vec![
        Box::new(generator_fidelity),
        Box::new(verify_chevalley_properties),
        Box::new(|| relations_suite(opts)),
        Box::new(|| involution_suite(opts)),
        Box::new(hblock_report),
        Box::new(verify_conditions),
        Box::new(verify_block_shapes),
        Box::new(basis_change_commute),
        Box::new(|| elimination_suite(opts)),
        Box::new(verify_torus_image),
        Box::new(|| units_suite(opts)),
        Box::new(|| prod2_suite(opts)),
        Box::new(normalizer_report),
    ];
    jobs.par_iter().map(|j| j()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fidelity_flags_only_w1() {
        let r = generator_fidelity();
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["w1 = w_a1(1) equals the printed matrix"]);
        assert_eq!(r.find("printed w1").unwrap().witness.as_deref(), Some("equals w_a1(-1)"));
    }

    #[test]
    fn streams_are_independent_of_order() {
        let o = SuiteOptions { seed: 9, ..Default::default() };
        use rand::Rng;
        let a: u64 = o.rng(1).gen();
        let _: u64 = o.rng(2).gen();
        assert_eq!(a, o.rng(1).gen::<u64>());
        assert_ne!(a, o.rng(2).gen::<u64>());
    }
}
