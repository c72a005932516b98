use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{QMatrix, QSubspace, Rational};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All `p`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, p));
    let mut cur = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < p - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    rec(0, n, p, &mut cur, &mut out);
    out
}

/// Position of a sorted subset in the lexicographic list of `subsets(n, s.len())`.
pub fn subset_rank(n: usize, s: &[usize]) -> usize {
    let p = s.len();
    let mut rank = 0;
    let mut prev = 0;
    for (k, &x) in s.iter().enumerate() {
        for y in prev..x {
            rank += binomial(n - y - 1, p - k - 1);
        }
        prev = x + 1;
    }
    rank
}

fn minor(m: &QMatrix, rows: &[usize], cols: &[usize]) -> Rational {
    match rows.len() {
        0 => Rational::one(),
        1 => m.get(rows[0], cols[0]).clone(),
        2 => {
            m.get(rows[0], cols[0]) * m.get(rows[1], cols[1])
                - m.get(rows[0], cols[1]) * m.get(rows[1], cols[0])
        }
        k => QMatrix::from_fn(k, k, |i, j| m.get(rows[i], cols[j]).clone()).det(),
    }
}

/// Coordinates of `v₁ ∧ … ∧ v_p` in the lexicographic basis of `∧^p Q^n`.
pub fn wedge_of(n: usize, vectors: &[Vec<Rational>]) -> Vec<Rational> {
    let p = vectors.len();
    if p == 0 {
        return vec![Rational::one()];
    }
    let m = QMatrix::from_rows(n, vectors);
    let rows: Vec<usize> = (0..p).collect();
    subsets(n, p).iter().map(|s| minor(&m, &rows, s)).collect()
}

/// `∧^p V` inside `∧^p Q^n`.
pub fn wedge_power(v: &QSubspace, p: usize) -> QSubspace {
    let n = v.ambient_dim();
    let n_p = binomial(n, p);
    if p > v.dim() {
        return QSubspace::zero(n_p);
    }
    let basis = v.basis();
    let vs: Vec<Vec<Rational>> = subsets(v.dim(), p)
        .iter()
        .map(|s| {
            let chosen: Vec<Vec<Rational>> = s.iter().map(|&i| basis[i].clone()).collect();
            wedge_of(n, &chosen)
        })
        .collect();
    QSubspace::from_vectors(n_p, &vs)
}

/// The `p`-th compound matrix, i.e. the matrix of `∧^p m`.
pub fn compound(m: &QMatrix, p: usize) -> QMatrix {
    let rs = subsets(m.rows(), p);
    let cs = subsets(m.cols(), p);
    QMatrix::from_fn(rs.len(), cs.len(), |i, j| minor(m, &rs[i], &cs[j]))
}

/// Matrix of interior multiplication by `x ∈ Q^n`, from `∧^l (Q^n)^*` to `∧^{l-1} (Q^n)^*`.
pub fn contraction(n: usize, l: usize, x: &[Rational]) -> QMatrix {
    assert_eq!(x.len(), n);
    if l == 0 {
        return QMatrix::zeros(0, 1);
    }
    let src = subsets(n, l);
    let mut out = QMatrix::zeros(binomial(n, l - 1), src.len());
    for (j, s) in src.iter().enumerate() {
        for (k, &i) in s.iter().enumerate() {
            if x[i].is_zero() {
                continue;
            }
            let mut rest = s.clone();
            rest.remove(k);
            let r = subset_rank(n, &rest);
            let v = if k % 2 == 0 { x[i].clone() } else { -x[i].clone() };
            out.set(r, j, out.get(r, j) + v);
        }
    }
    out
}
