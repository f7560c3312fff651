//! Exact linear algebra over Q: fraction-free rank, rational nullspace,
//! and modular rank with CRT + rational reconstruction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Primes used for the modular cross-checks (all >= 5, pairwise distinct).
pub const CHECK_PRIMES: [u64; 3] = [1_000_000_007, 998_244_353, 2_147_483_647];

/// Scales each row by the lcm of its denominators.
pub fn integer_rows(rows: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

/// Rank by fraction-free (Bareiss) elimination over Z.
pub fn rank_fraction_free(rows: &[Vec<BigRational>]) -> usize {
    let mut a = integer_rows(rows);
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    let n = a.len();
    if n == 0 {
        return 0;
    }
    let m = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..n {
            if a[i][c].is_zero() {
                // Bareiss update with zero multiplier: row scales by pivot / prev.
                for j in c + 1..m {
                    if !a[i][j].is_zero() {
                        a[i][j] = (&a[r][c] * &a[i][j]) / &prev;
                    }
                }
                continue;
            }
            for j in c + 1..m {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Reduced row echelon form over Q; returns (rref rows, pivot columns).
pub fn rref(rows: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of {v : A v = 0}.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let (red, pivots) = rref(rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

fn to_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Reduced echelon form mod p; returns (rows, pivots).
pub fn rref_mod_p(rows: &[Vec<BigInt>], p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| to_mod(x, p)).collect()).collect();
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    let mul = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        if r == n {
            break;
        }
        let Some(pr) = (r..n).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, pr);
        let inv = pow_mod(a[r][c], p - 2, p);
        for x in a[r].iter_mut() {
            *x = mul(*x, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                if pv != 0 {
                    *x = (*x + p - mul(f, pv)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank_mod_p(rows: &[Vec<BigRational>], p: u64) -> usize {
    rref_mod_p(&integer_rows(rows), p).1.len()
}

/// Nullspace basis mod p in the canonical (free-variable = unit vector) form.
pub fn nullspace_mod_p(rows: &[Vec<BigRational>], ncols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let (red, pivots) = rref_mod_p(&integer_rows(rows), p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = (p - row[f]) % p;
            }
            v
        })
        .collect();
    (free, basis)
}

/// Wang's rational reconstruction of `a mod m`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// CRT-combine residues of one value across `primes`.
pub fn crt(residues: &[u64], primes: &[u64]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (&r, &p) in residues.iter().zip(primes) {
        let pb = BigInt::from(p);
        // x' ≡ x (mod m), x' ≡ r (mod p)
        let diff = (BigInt::from(r) - &x).mod_floor(&pb);
        let minv = pow_mod(to_mod(&m, p), p - 2, p);
        let k = (diff * BigInt::from(minv)).mod_floor(&pb);
        x += &m * k;
        m *= pb;
    }
    (x, m)
}

/// Outcome of the modular cross-check of an exact rank computation.
#[derive(Debug, Clone)]
pub struct ModularRank {
    pub ranks: Vec<(u64, usize)>,
    /// Kernel basis reconstructed over Q from the modular kernels, if the
    /// kernel was nonempty and reconstruction succeeded.
    pub reconstructed_kernel: Option<Vec<Vec<BigRational>>>,
    /// Whether every reconstructed vector is an exact rational kernel vector.
    pub reconstruction_verified: bool,
}

pub fn modular_rank_check(rows: &[Vec<BigRational>], ncols: usize) -> ModularRank {
    let ranks: Vec<(u64, usize)> = CHECK_PRIMES.iter().map(|&p| (p, rank_mod_p(rows, p))).collect();
    let kernels: Vec<(Vec<usize>, Vec<Vec<u64>>)> = CHECK_PRIMES.iter().map(|&p| nullspace_mod_p(rows, ncols, p)).collect();
    let same_shape = kernels.windows(2).all(|w| w[0].0 == w[1].0);
    if kernels[0].1.is_empty() {
        return ModularRank { ranks, reconstructed_kernel: Some(Vec::new()), reconstruction_verified: true };
    }
    if !same_shape {
        return ModularRank { ranks, reconstructed_kernel: None, reconstruction_verified: false };
    }
    let mut basis = Vec::new();
    for b in 0..kernels[0].1.len() {
        let mut v = Vec::with_capacity(ncols);
        for c in 0..ncols {
            let residues: Vec<u64> = kernels.iter().map(|k| k.1[b][c]).collect();
            let (x, m) = crt(&residues, &CHECK_PRIMES);
            match rational_reconstruct(&x, &m) {
                Some(q) => v.push(q),
                None => {
                    return ModularRank { ranks, reconstructed_kernel: None, reconstruction_verified: false };
                }
            }
        }
        basis.push(v);
    }
    let verified =
        basis.iter().all(|v| rows.iter().all(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b).is_zero()));
    ModularRank { ranks, reconstructed_kernel: Some(basis), reconstruction_verified: verified }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, rational};

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn bareiss_rank_matches_rref() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1], &[0, 0, 0]]);
        assert_eq!(rank_fraction_free(&a), 2);
        assert_eq!(rref(&a).1.len(), 2);
        let b = m(&[&[0, 2, 0, 1], &[0, 0, 0, 3], &[5, 1, 0, 0]]);
        assert_eq!(rank_fraction_free(&b), 3);
    }

    #[test]
    fn nullspace_vectors_annihilate() {
        let a = vec![vec![int(1), rational(1, 2), int(0)], vec![int(2), int(1), int(0)]];
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let s: BigRational = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let mm = BigInt::from(1_000_000_007u64);
        let target = rational(-3, 7);
        let inv7 = pow_mod(7, 1_000_000_005, 1_000_000_007);
        let a = (BigInt::from(1_000_000_007u64 - 3) * BigInt::from(inv7)).mod_floor(&mm);
        assert_eq!(rational_reconstruct(&a, &mm), Some(target));
    }

    #[test]
    fn modular_kernel_is_reconstructed() {
        let a = vec![vec![int(2), int(3), int(0)], vec![int(0), int(0), int(1)]];
        let r = modular_rank_check(&a, 3);
        assert!(r.ranks.iter().all(|&(_, k)| k == 2));
        assert!(r.reconstruction_verified);
        assert_eq!(r.reconstructed_kernel.unwrap(), vec![vec![rational(-3, 2), int(1), int(0)]]);
    }
}
