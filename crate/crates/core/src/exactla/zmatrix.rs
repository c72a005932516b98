use alloc::vec;
use alloc::vec::Vec;
use core::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{QMatrix, Rational};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        ZMatrix { rows, cols, data: entries.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        ZMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> ZMatrix {
        let mut t = ZMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn to_q(&self) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |i, j| Rational::from_integer(self.get(i, j).clone()))
    }

    pub fn det(&self) -> BigInt {
        self.to_q().det().to_integer()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * f;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * f;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -core::mem::take(x);
        }
    }
}

impl Mul for &ZMatrix {
    type Output = ZMatrix;

    fn mul(self, rhs: &ZMatrix) -> ZMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = ZMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

/// Smith normal form `U·m·V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: ZMatrix,
    pub d: ZMatrix,
    pub v: ZMatrix,
}

impl Snf {
    /// Nonzero diagonal entries of `D`, each dividing the next.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

pub fn smith_normal_form(m: &ZMatrix) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = ZMatrix::identity(r);
    let mut v = ZMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(u, d, v);
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..r {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let f = -d.get(i, t).div_floor(d.get(t, t));
                d.add_row(i, t, &f);
                u.add_row(i, t, &f);
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let f = -d.get(t, j).div_floor(d.get(t, t));
                d.add_col(j, t, &f);
                v.add_col(j, t, &f);
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    d.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(u, d, v)
}

fn finish(u: ZMatrix, d: ZMatrix, v: ZMatrix) -> Snf {
    Snf { u, d, v }
}

/// Row-style Hermite normal form of the lattice spanned by `vectors`, zero rows dropped.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hermite_rows(cols: usize, vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m = ZMatrix::from_rows(cols, vectors);
    let mut r = 0;
    for c in 0..cols {
        if r == m.rows {
            break;
        }
        loop {
            let best = (r..m.rows)
                .filter(|&i| !m.get(i, c).is_zero())
                .min_by(|&a, &b| m.get(a, c).abs().cmp(&m.get(b, c).abs()));
            let Some(p) = best else { break };
            m.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..m.rows {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = -m.get(i, c).div_floor(m.get(r, c));
                m.add_row(i, r, &f);
                done &= m.get(i, c).is_zero();
            }
            if done {
                break;
            }
        }
        if m.get(r, c).is_zero() {
            continue;
        }
        if m.get(r, c).is_negative() {
            m.negate_row(r);
        }
        for i in 0..r {
            let f = -m.get(i, c).div_floor(m.get(r, c));
            if !f.is_zero() {
                m.add_row(i, r, &f);
            }
        }
        r += 1;
    }
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

/// Z-basis of `{x ∈ Z^cols : m·x = 0}` in Hermite normal form.
pub fn integer_kernel(m: &ZMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let basis: Vec<Vec<BigInt>> = (rank..m.cols).map(|j| snf.v.column(j)).collect();
    hermite_rows(m.cols, &basis)
}
