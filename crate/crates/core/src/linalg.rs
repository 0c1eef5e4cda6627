//! Dense linear algebra over any field implementing [`FieldOps`].

pub trait FieldOps {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Panics on zero.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
}

pub type Matrix<E> = Vec<Vec<E>>;

pub fn zeros<F: FieldOps>(f: &F, rows: usize, cols: usize) -> Matrix<F::E> {
    vec![vec![f.zero(); cols]; rows]
}

pub fn identity<F: FieldOps>(f: &F, n: usize) -> Matrix<F::E> {
    let mut m = zeros(f, n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = f.one();
    }
    m
}

/// In-place reduced row-echelon form. Returns pivot columns; zero rows are removed.
pub fn rref<F: FieldOps>(f: &F, m: &mut Matrix<F::E>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]);
        if inv != f.one() {
            for x in m[r][c..].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&factor, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank<F: FieldOps>(f: &F, m: &Matrix<F::E>) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Basis of the right kernel {v : M v = 0} for a matrix with `cols` columns.
pub fn nullspace<F: FieldOps>(f: &F, m: &Matrix<F::E>, cols: usize) -> Matrix<F::E> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let mut is_pivot = vec![usize::MAX; cols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = i;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| is_pivot[c] == usize::MAX) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(&a[i][free]);
        }
        basis.push(v);
    }
    basis
}

pub fn inverse<F: FieldOps>(f: &F, m: &Matrix<F::E>) -> Option<Matrix<F::E>> {
    let n = m.len();
    let mut aug: Matrix<F::E> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: FieldOps>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> Matrix<F::E> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = vec![f.zero(); cols];
            for k in 0..inner {
                if f.is_zero(&row[k]) {
                    continue;
                }
                for (o, y) in out.iter_mut().zip(&b[k]) {
                    *o = f.add(o, &f.mul(&row[k], y));
                }
            }
            out
        })
        .collect()
}

pub fn mat_vec<F: FieldOps>(f: &F, a: &Matrix<F::E>, v: &[F::E]) -> Vec<F::E> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(f.zero(), |acc, (x, y)| {
                if f.is_zero(x) || f.is_zero(y) {
                    acc
                } else {
                    f.add(&acc, &f.mul(x, y))
                }
            })
        })
        .collect()
}

pub fn kron<F: FieldOps>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> Matrix<F::E> {
    let (ar, ac) = (a.len(), a.first().map_or(0, |r| r.len()));
    let (br, bc) = (b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = zeros(f, ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            if f.is_zero(&a[i][j]) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = f.mul(&a[i][j], &b[k][l]);
                }
            }
        }
    }
    out
}

pub fn transpose<E: Clone>(m: &Matrix<E>, cols: usize) -> Matrix<E> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// True if `v` lies in the row space of the RREF matrix `basis` with pivot columns `pivots`.
pub fn in_row_space<F: FieldOps>(f: &F, basis: &Matrix<F::E>, pivots: &[usize], v: &[F::E]) -> bool {
    let mut w = v.to_vec();
    for (row, &c) in basis.iter().zip(pivots) {
        if f.is_zero(&w[c]) {
            continue;
        }
        let factor = w[c].clone();
        for (x, y) in w.iter_mut().zip(row) {
            *x = f.sub(x, &f.mul(&factor, y));
        }
    }
    w.iter().all(|x| f.is_zero(x))
}
