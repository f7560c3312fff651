//! Block parametrizations of the unknown images of x_{α1}(1), x_{α2}(1)
//! and of a torus element, plus the residue list of the parameters.

use std::fmt;
use std::str::FromStr;

use crate::chevalley::DIM;
use crate::matrix::Matrix;
use crate::ring::Scalar;

/// Which layout to use: as printed, or with the typographical fixes that make
/// the template commute with its defining elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Printed,
    Corrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Y,
    Z,
}

/// A template parameter y_i or z_i, 1 ≤ i ≤ 52.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: Family,
    pub index: usize,
}

impl Var {
    pub fn y(index: usize) -> Var {
        Var { family: Family::Y, index }
    }
    pub fn z(index: usize) -> Var {
        Var { family: Family::Z, index }
    }

    /// Value modulo the radical at the true elements.
    pub fn residue(self) -> i64 {
        let i = self.index;
        match self.family {
            Family::Y => match i {
                1 | 6 | 11 | 16 | 18 | 20 | 21 | 30 | 34 | 36 | 39 | 48 => 1,
                2 | 32 => -1,
                4 | 50 => -2,
                37 => 3,
                52 => -3,
                _ => 0,
            },
            Family::Z => match i {
                1 | 10 | 12 | 21 | 30 | 32 | 33 | 36 | 38 | 43 | 50 | 52 => 1,
                34 => -1,
                _ => 0,
            },
        }
    }

    /// Position among all 104 parameters (y1..y52, z1..z52).
    pub fn slot(self) -> usize {
        match self.family {
            Family::Y => self.index - 1,
            Family::Z => 52 + self.index - 1,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.family == Family::Y { 'y' } else { 'z' };
        write!(f, "{c}{}", self.index)
    }
}

impl FromStr for Var {
    type Err = String;
    fn from_str(s: &str) -> Result<Var, String> {
        let s = s.trim();
        let family = match s.chars().next() {
            Some('y') => Family::Y,
            Some('z') => Family::Z,
            _ => return Err(format!("variable `{s}` must be y<i> or z<i>")),
        };
        let index: usize = s[1..].parse().map_err(|_| format!("bad variable index in `{s}`"))?;
        if !(1..=52).contains(&index) {
            return Err(format!("variable `{s}` out of range 1..52"));
        }
        Ok(Var { family, index })
    }
}

/// Normalized parameters, fixed before elimination.
pub const NORMALIZED: [(Family, usize, i64); 4] = [(Family::Y, 15, 0), (Family::Y, 16, 1), (Family::Z, 51, 0), (Family::Z, 52, 1)];

pub fn is_normalized(v: Var) -> bool {
    NORMALIZED.iter().any(|&(f, i, _)| f == v.family && i == v.index)
}

/// The 100 unknowns of the elimination, in ε-variable order.
pub fn elimination_vars() -> Vec<Var> {
    (1..=52).map(Var::y).chain((1..=52).map(Var::z)).filter(|v| !is_normalized(*v)).collect()
}

fn place<T: Scalar>(m: &mut Matrix<T>, block: &[usize], rows: Vec<Vec<T>>) {
    for (a, row) in rows.into_iter().enumerate() {
        for (b, v) in row.into_iter().enumerate() {
            m.set(block[a] - 1, block[b] - 1, v);
        }
    }
}

fn half<T: Scalar>(p: &T) -> T {
    p.int_like(2).try_inverse().expect("2 is invertible")
}

/// Template commuting with h_{α1}(−1) and w_{α6}(1); `y(i)` supplies y_i.
pub fn x1_template<T: Scalar>(y: impl Fn(usize) -> T, variant: Variant) -> Matrix<T> {
    let p = y(1);
    let z = p.zero_like();
    let k = |n: i64| p.int_like(n);
    let h = half(&p);
    let m32 = k(-3).mul(&h);
    let m = |n: i64, i: usize| k(n).mul(&y(i));
    let mut out = Matrix::zeros(DIM, DIM, &z);
    let r13_12 = match variant {
        Variant::Printed => y(17).add(&m(3, 19)),
        Variant::Corrected => m(3, 19).sub(&y(17)),
    };
    let r1 = vec![
        vec![y(1), y(2), y(3), m(-1, 3), y(4), m32.mul(&y(4))],
        vec![y(5), y(6), y(7), m(-1, 7), y(8), m32.mul(&y(8))],
        vec![y(9), y(10), y(11), y(12), y(13), y(14)],
        vec![m(-1, 9), m(-1, 10), y(12), y(11), m(-1, 13), m(3, 13).add(&y(14))],
        vec![y(15), y(16), y(17), r13_12, y(18), k(3).mul(&h).mul(&y(20).sub(&y(18)))],
        vec![z.clone(), z.clone(), y(19), y(19), z.clone(), y(20)],
    ];
    place(&mut out, &[1, 2, 11, 12, 13, 14], r1);
    let neg = |i: usize| m(-1, i);
    let fwd = |a: usize| vec![y(a), y(a + 1), y(a + 2), y(a + 3), neg(a + 4), neg(a + 5), neg(a + 6), neg(a + 7)];
    let rev = |a: usize| (0..8).map(|j| y(a - j)).collect::<Vec<_>>();
    let r2 = vec![fwd(21), fwd(29), fwd(37), fwd(45), rev(52), rev(44), rev(36), rev(28)];
    place(&mut out, &[3, 4, 5, 6, 7, 8, 9, 10], r2);
    out
}

/// Template commuting with h_{α2}(−1) and w_{α4}(1); `z(i)` supplies z_i.
pub fn x2_template<T: Scalar>(z: impl Fn(usize) -> T, variant: Variant) -> Matrix<T> {
    let p = z(1);
    let zero = p.zero_like();
    let k = |n: i64| p.int_like(n);
    let m = |n: i64, i: usize| k(n).mul(&z(i));
    let mut out = Matrix::zeros(DIM, DIM, &zero);
    let run = |a: usize| (a..a + 8).map(&z).collect::<Vec<_>>();
    let twist = |a: usize, b: usize| {
        // [-z(a+3), -z(a+2), z(a+1), z(a), -z(b+3), -z(b+2), z(b+1), z(b)]
        vec![m(-1, a + 3), m(-1, a + 2), z(a + 1), z(a), m(-1, b + 3), m(-1, b + 2), z(b + 1), z(b)]
    };
    let mut row3 = twist(9, 13);
    if variant == Variant::Printed {
        row3[6] = z(13);
        row3[7] = z(14);
    } else {
        row3[6] = z(14);
        row3[7] = z(13);
    }
    let r1 = vec![run(1), run(9), row3, twist(1, 5), run(17), run(25), twist(25, 29), twist(17, 21)];
    place(&mut out, &[1, 2, 5, 6, 9, 10, 11, 12], r1);
    let s36 = if variant == Variant::Printed { m(2, 36) } else { m(-2, 36) };
    let r2 = vec![
        vec![z(33), z(34), m(-1, 35), z(35), z(36), s36],
        vec![z(37), z(38), m(-1, 39), z(39), z(40), m(-2, 40)],
        vec![z(41), z(42), z(43), z(44), z(45), z(46)],
        vec![m(-1, 41), m(-1, 42), z(44), z(43), z(45).add(&z(46)), m(-1, 46)],
        vec![zero.clone(), zero.clone(), z(47).add(&z(48)), z(47).add(&z(48)), m(2, 49).add(&z(50)), zero.clone()],
        vec![z(51), z(52), z(47), z(48), z(49), z(50)],
    ];
    place(&mut out, &[3, 4, 7, 8, 13, 14], r2);
    out
}

/// Template for a torus image commuting with h_{α1}(−1), h_{α2}(−1),
/// w_{α6}(1), x_{α6}(1); `d(i)` supplies d_i, 1 ≤ i ≤ 14.
pub fn ht_template<T: Scalar>(d: impl Fn(usize) -> T, variant: Variant) -> Matrix<T> {
    let p = d(1);
    let mut m = Matrix::zeros(DIM, DIM, &p.zero_like());
    let shift = usize::from(variant == Variant::Printed);
    m.set(0, 0, d(1));
    m.set(0, 1, d(2));
    m.set(1, 0, d(3));
    m.set(1, 1, d(4));
    for (r, (a, b)) in [(3, (5, 6)), (4, (7, 8)), (5, (9, 10)), (6, (11, 12))] {
        m.set(r - 1, r - 1, d(a));
        m.set(r - 1, r + 3 - shift, d(b).neg());
    }
    for (r, (a, b, c)) in [(7, (12, 11, 3)), (8, (10, 9, 4)), (9, (8, 7, 5)), (10, (6, 5, 6))] {
        m.set(r - 1, c - 1, d(a));
        m.set(r - 1, r - 1 - shift, d(b));
    }
    m.set(10, 10, d(13));
    m.set(11, 11, d(13));
    m.set(12, 12, d(14));
    let h = half(&p);
    m.set(12, 13, p.int_like(3).mul(&h).mul(&d(13).sub(&d(14))));
    m.set(13, 13, d(13));
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_list_counts() {
        let all: Vec<Var> = (1..=52).map(Var::y).chain((1..=52).map(Var::z)).collect();
        let units = all.iter().filter(|v| v.residue() != 0).count();
        // 12 + 12 ones, three −1, two −2, one 3, one −3
        assert_eq!(units, 31);
        assert_eq!(Var::y(37).residue(), 3);
        assert_eq!(Var::y(52).residue(), -3);
        assert_eq!(elimination_vars().len(), 100);
    }

    #[test]
    fn var_round_trip() {
        for v in ["y1", "z52", "y37"] {
            assert_eq!(v.parse::<Var>().unwrap().to_string(), v);
        }
        assert!("y53".parse::<Var>().is_err());
        assert!("x3".parse::<Var>().is_err());
    }
}
