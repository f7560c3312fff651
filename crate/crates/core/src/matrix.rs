//! Dense matrices over any [`Scalar`].

use std::fmt;

use crate::ring::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let c = self.cols;
        self.data.iter().enumerate().map(move |(k, v)| (k / c, k % c, v))
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, proto: &T) -> Self {
        let z = proto.zero_like();
        Matrix { rows, cols, data: vec![z; rows * cols] }
    }

    pub fn identity(n: usize, proto: &T) -> Self {
        let mut m = Self::zeros(n, n, proto);
        for i in 0..n {
            m.set(i, i, proto.one_like());
        }
        m
    }

    pub fn diag(values: Vec<T>) -> Self {
        let n = values.len();
        let proto = values[0].clone();
        let mut m = Self::zeros(n, n, &proto);
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Matrix unit e_{k,l} (0-based indices).
    pub fn unit(n: usize, k: usize, l: usize, proto: &T) -> Self {
        let mut m = Self::zeros(n, n, proto);
        m.set(k, l, proto.one_like());
        m
    }

    pub fn proto(&self) -> &T {
        &self.data[0]
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(|a| a.neg())
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|a| k.mul(a))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols, self.proto());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Row-parallel product, for entries with expensive arithmetic.
    pub fn par_mul(&self, o: &Self) -> Self {
        use rayon::prelude::*;
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let zero = self.proto().zero_like();
        let data: Vec<T> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|i| {
                let mut row = vec![zero.clone(); o.cols];
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    for (j, slot) in row.iter_mut().enumerate() {
                        let b = o.get(k, j);
                        if !b.is_zero() {
                            *slot = slot.add(&a.mul(b));
                        }
                    }
                }
                row
            })
            .collect();
        Matrix { rows: self.rows, cols: o.cols, data }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows, self.proto());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// [A, B] = AB − BA.
    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && self.entries().all(|(i, j, v)| if i == j { v.is_one() } else { v.is_zero() })
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, v)| i == j || v.is_zero())
    }

    /// First position (row-major) where the matrices differ.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize)> {
        self.entries().zip(o.entries()).find(|((_, _, a), (_, _, b))| a != b).map(|((i, j, _), _)| (i, j))
    }

    pub fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        self.entries().filter(|(_, _, v)| !v.is_zero()).map(|(i, j, _)| (i, j)).collect()
    }

    /// Gauss–Jordan inverse choosing unit pivots; correct over fields and
    /// local rings (an invertible matrix over a local ring always has a unit
    /// in each pivot column).
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n, self.proto());
        for c in 0..n {
            let piv = (c..n).find(|&r| a.get(r, c).is_unit())?;
            if piv != c {
                a.swap_rows(piv, c);
                inv.swap_rows(piv, c);
            }
            let pinv = a.get(c, c).try_inverse()?;
            a.scale_row(c, &pinv);
            inv.scale_row(c, &pinv);
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                a.axpy_row(r, c, &f);
                inv.axpy_row(r, c, &f);
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, k: &T) {
        for c in 0..self.cols {
            let idx = i * self.cols + c;
            self.data[idx] = k.mul(&self.data[idx]);
        }
    }

    /// row_r -= f · row_c
    fn axpy_row(&mut self, r: usize, c: usize, f: &T) {
        for j in 0..self.cols {
            let v = self.get(c, j).clone();
            if v.is_zero() {
                continue;
            }
            let idx = r * self.cols + j;
            self.data[idx] = self.data[idx].sub(&f.mul(&v));
        }
    }
}

impl<T: fmt::Display> Matrix<T> {
    /// Plain text rendering with right-aligned columns.
    pub fn render(&self) -> String {
        let cells: Vec<String> = self.data.iter().map(|v| v.to_string()).collect();
        let w = cells.iter().map(String::len).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| format!("{:>w$}", cells[i * self.cols + j])).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Sparse "c*e(i,j)" listing with 1-based positions.
    pub fn sparse_string(&self) -> String
    where
        T: Scalar,
    {
        let parts: Vec<String> =
            self.entries().filter(|(_, _, v)| !v.is_zero()).map(|(i, j, v)| format!("({},{})={}", i + 1, j + 1, v)).collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RingDescriptor, RingValue};

    #[test]
    fn inverse_over_local_ring() {
        let d = RingDescriptor::zmod(5, 2).unwrap();
        let v = |n| RingValue::from_i64(d, n);
        // first column has a non-unit on the diagonal
        let m = Matrix::from_rows(vec![vec![v(5), v(1)], vec![v(1), v(3)]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let sing = Matrix::from_rows(vec![vec![v(5), v(10)], vec![v(0), v(5)]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn bracket_of_units() {
        let e12 = Matrix::unit(3, 0, 1, &0i64);
        let e21 = Matrix::unit(3, 1, 0, &0i64);
        let h = e12.bracket(&e21);
        assert_eq!(h, Matrix::diag(vec![1, -1, 0]));
    }
}
