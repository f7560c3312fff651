//! The G2 root system with the fixed numbering
//! α1 = (1,0), α2 = (0,1), α3 = α1+α2, α4 = 2α1+α2, α5 = 3α1+α2, α6 = 3α1+2α2.
//!
//! Matrix positions: +i ↦ 2i−1, −i ↦ 2i (1-based), i.e. 0-based 2(i−1) and 2(i−1)+1.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

const POSITIVE: [(i32, i32); 6] = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)];

// α1 = e1 − e2, α2 = −2e1 + e2 + e3
const E_ALPHA1: [i32; 3] = [1, -1, 0];
const E_ALPHA2: [i32; 3] = [-2, 1, 1];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("({0},{1}) is not a root")]
    NotARoot(i32, i32),
    #[error("bad root name `{0}` (expected a1..a6 or -a1..-a6)")]
    BadName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub n1: i32,
    pub n2: i32,
}

impl Root {
    pub fn new(n1: i32, n2: i32) -> Result<Root, RootError> {
        if is_root(n1, n2) {
            Ok(Root { n1, n2 })
        } else {
            Err(RootError::NotARoot(n1, n2))
        }
    }

    /// Root with signed index ±1..±6.
    pub fn from_index(i: i32) -> Root {
        assert!((1..=6).contains(&i.abs()), "root index out of range: {i}");
        let (a, b) = POSITIVE[(i.unsigned_abs() - 1) as usize];
        let s = i.signum();
        Root { n1: s * a, n2: s * b }
    }

    pub fn simple(i: usize) -> Root {
        Root::from_index(i as i32)
    }

    pub fn index(&self) -> i32 {
        let k = POSITIVE.iter().position(|&(a, b)| (a, b) == (self.n1.abs(), self.n2.abs())).expect("valid root") as i32 + 1;
        if self.is_positive() {
            k
        } else {
            -k
        }
    }

    /// 0-based matrix position of the weight vector v_α.
    pub fn position(&self) -> usize {
        let i = self.index();
        let base = 2 * (i.unsigned_abs() as usize - 1);
        if i > 0 {
            base
        } else {
            base + 1
        }
    }

    pub fn from_position(pos: usize) -> Root {
        assert!(pos < 12, "position {pos} is not a root line");
        let k = (pos / 2 + 1) as i32;
        Root::from_index(if pos.is_multiple_of(2) { k } else { -k })
    }

    pub fn is_positive(&self) -> bool {
        self.n1 > 0 || (self.n1 == 0 && self.n2 > 0)
    }

    pub fn neg(&self) -> Root {
        Root { n1: -self.n1, n2: -self.n2 }
    }

    pub fn euclidean(&self) -> [i32; 3] {
        std::array::from_fn(|k| self.n1 * E_ALPHA1[k] + self.n2 * E_ALPHA2[k])
    }

    pub fn length2(&self) -> i32 {
        dot(self, self)
    }

    pub fn is_long(&self) -> bool {
        self.length2() == 6
    }

    /// Coordinates of the coroot α∨ = 2α/(α,α) in the simple-coroot basis.
    pub fn coroot_coords(&self) -> (i32, i32) {
        // α∨ = n1·(|α1|²/|α|²)α1∨ + n2·(|α2|²/|α|²)α2∨
        let l = self.length2();
        (self.n1 * 2 / l, self.n2 * 6 / l)
    }

    pub fn name(&self) -> String {
        let i = self.index();
        if i > 0 {
            format!("a{i}")
        } else {
            format!("-a{}", -i)
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Root {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Root, RootError> {
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let k: i32 = body
            .strip_prefix('a')
            .or_else(|| body.strip_prefix("alpha"))
            .and_then(|d| d.parse().ok())
            .filter(|k| (1..=6).contains(k))
            .ok_or_else(|| RootError::BadName(s.to_string()))?;
        Ok(Root::from_index(if neg { -k } else { k }))
    }
}

fn dot(a: &Root, b: &Root) -> i32 {
    let (x, y) = (a.euclidean(), b.euclidean());
    (0..3).map(|k| x[k] * y[k]).sum()
}

pub fn is_root(n1: i32, n2: i32) -> bool {
    POSITIVE.iter().any(|&(a, b)| (a, b) == (n1, n2) || (-a, -b) == (n1, n2))
}

/// The 12 roots ordered α1, −α1, α2, −α2, …, α6, −α6.
pub fn all_roots() -> Vec<Root> {
    (0..12).map(Root::from_position).collect()
}

pub fn positive_roots() -> Vec<Root> {
    (1..=6).map(Root::from_index).collect()
}

pub fn sum(a: &Root, b: &Root) -> Option<Root> {
    Root::new(a.n1 + b.n1, a.n2 + b.n2).ok()
}

/// ⟨α, β⟩ = 2(α,β)/(β,β).
pub fn cartan_int(a: &Root, b: &Root) -> i32 {
    2 * dot(a, b) / b.length2()
}

/// w_β(α) = α − ⟨α,β⟩β.
pub fn reflect(a: &Root, b: &Root) -> Root {
    let c = cartan_int(a, b);
    Root { n1: a.n1 - c * b.n1, n2: a.n2 - c * b.n2 }
}

/// Orbit of a root under the group generated by all reflections.
pub fn weyl_orbit(a: &Root) -> Vec<Root> {
    let mut orbit = vec![*a];
    let mut i = 0;
    while i < orbit.len() {
        let cur = orbit[i];
        for b in all_roots() {
            let r = reflect(&cur, &b);
            if !orbit.contains(&r) {
                orbit.push(r);
            }
        }
        i += 1;
    }
    orbit.sort();
    orbit
}

#[derive(Debug, Clone, Serialize)]
pub struct RootRow {
    pub index: i32,
    pub name: String,
    pub n1: i32,
    pub n2: i32,
    pub euclidean: [i32; 3],
    pub length2: i32,
    pub position: usize,
}

pub fn root_table() -> Vec<RootRow> {
    all_roots()
        .into_iter()
        .map(|r| RootRow {
            index: r.index(),
            name: r.name(),
            n1: r.n1,
            n2: r.n2,
            euclidean: r.euclidean(),
            length2: r.length2(),
            position: r.position() + 1,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: i32) -> Root {
        Root::from_index(i)
    }

    #[test]
    fn sums() {
        assert_eq!(sum(&a(1), &a(2)), Some(a(3)));
        assert_eq!(sum(&a(1), &a(1)), None);
        assert_eq!(sum(&a(5), &a(-5)), None);
    }

    #[test]
    fn cartan_integers_from_euclidean_oracle() {
        assert_eq!(cartan_int(&a(1), &a(1)), 2);
        assert_eq!(cartan_int(&a(2), &a(1)), -3);
        assert_eq!(cartan_int(&a(1), &a(2)), -1);
    }

    #[test]
    fn reflections() {
        assert_eq!(reflect(&a(1), &a(1)), a(-1));
        assert_eq!(reflect(&a(2), &a(1)), a(5));
        assert_eq!(reflect(&a(6), &a(1)), a(6));
    }

    #[test]
    fn ordering_and_positions() {
        let names: Vec<String> = all_roots().iter().map(Root::name).collect();
        assert_eq!(names[..4], ["a1", "-a1", "a2", "-a2"]);
        for (p, r) in all_roots().iter().enumerate() {
            assert_eq!(r.position(), p);
        }
        assert_eq!("-a3".parse::<Root>().unwrap(), a(-3));
        assert!("a7".parse::<Root>().is_err());
    }

    #[test]
    fn lengths_and_coroots() {
        for r in all_roots() {
            let long = [2, 5, 6].contains(&r.index().abs());
            assert_eq!(r.length2(), if long { 6 } else { 2 });
        }
        assert_eq!(a(3).coroot_coords(), (1, 3));
        assert_eq!(a(6).coroot_coords(), (1, 2));
        assert_eq!(a(-2).coroot_coords(), (0, -1));
    }

    #[test]
    fn length_classes_are_single_orbits() {
        assert_eq!(weyl_orbit(&a(1)).len(), 6);
        assert_eq!(weyl_orbit(&a(2)).len(), 6);
        assert!(weyl_orbit(&a(2)).iter().all(Root::is_long));
    }
}
