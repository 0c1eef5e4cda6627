use super::{embedding, make_field, Elt, FieldDescriptor};
use crate::error::{Error, Result};
use crate::linalg::{self, FieldOps, Matrix};
use crate::poly;
use crate::util::{gcd, lcm};

/// F_{q^n} ⊗ F_{q^m} ≅ (F_{q^ℓ})^d with ν(α^i ⊗ β^j) = (α^i ω_1^j, ..., α^i ω_d^j).
///
/// Source coordinates are indexed by `i*m + j`; target coordinates by
/// `k*ell + c` for component k and power-basis coordinate c.
pub struct TensorSplit {
    pub left: FieldDescriptor,
    pub right: FieldDescriptor,
    pub big: FieldDescriptor,
    pub d: usize,
    pub ell: usize,
    pub omegas: Vec<Elt>,
    pub forward: Matrix<u32>,
    pub inverse: Matrix<u32>,
}

/// Builds ν for a prime ground field `q` and checks it is a ring isomorphism.
pub fn tensor_split(n: usize, m: usize, q: &FieldDescriptor) -> Result<TensorSplit> {
    if q.k() != 1 {
        return Err(Error::Unsupported("tensor splitting over a non-prime ground field".into()));
    }
    if n == 0 || m == 0 {
        return Err(Error::ZeroDegree);
    }
    let p = q.p();
    let d = gcd(n as u64, m as u64) as usize;
    let ell = lcm(n as u64, m as u64) as usize;
    let left = make_field(p, n)?;
    let right = make_field(p, m)?;
    let big = make_field(p, ell)?;
    let alpha = embedding(&left, &big)?.apply(&left.generator());
    let beta = embedding(&right, &big)?.apply(&right.generator());
    let mut omegas = Vec::with_capacity(d);
    let mut w = beta;
    for _ in 0..d {
        omegas.push(w.clone());
        w = big.frobenius(&w, 1);
    }
    let fp = q.prime_field();
    let size = n * m;
    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(size);
    let mut ai = big.one_elt();
    for _ in 0..n {
        let mut pows: Vec<Elt> = omegas.iter().map(|_| ai.clone()).collect();
        for _ in 0..m {
            cols.push(pows.iter().flatten().copied().collect());
            for (pw, om) in pows.iter_mut().zip(&omegas) {
                *pw = big.mul(pw, om);
            }
        }
        ai = big.mul(&ai, &alpha);
    }
    let forward = linalg::transpose(&cols, size);
    let inverse = linalg::inverse(&fp, &forward)
        .ok_or_else(|| Error::Verification("tensor map is singular".into()))?;
    let ts = TensorSplit { left, right, big, d, ell, omegas, forward, inverse };
    ts.verify()?;
    Ok(ts)
}

impl TensorSplit {
    pub fn n(&self) -> usize {
        self.left.k()
    }
    pub fn m(&self) -> usize {
        self.right.k()
    }

    pub fn apply(&self, u: &[u32]) -> Vec<u32> {
        linalg::mat_vec(&self.left.prime_field(), &self.forward, u)
    }

    pub fn unapply(&self, v: &[u32]) -> Vec<u32> {
        linalg::mat_vec(&self.left.prime_field(), &self.inverse, v)
    }

    /// Product in F_{q^n} ⊗ F_{q^m}.
    pub fn source_mul(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let (n, m) = (self.n(), self.m());
        let fp = self.left.prime_field();
        let mut w = vec![vec![0u32; 2 * m - 1]; 2 * n - 1];
        for i in 0..n {
            for j in 0..m {
                let a = u[i * m + j];
                if a == 0 {
                    continue;
                }
                for i2 in 0..n {
                    for j2 in 0..m {
                        let b = v[i2 * m + j2];
                        w[i + i2][j + j2] = fp.add(&w[i + i2][j + j2], &fp.mul(&a, &b));
                    }
                }
            }
        }
        let reduce = |coeffs: Vec<u32>, modulus: &[u32], len: usize| -> Vec<u32> {
            let mut r = if modulus.len() == 2 && modulus[0] == 0 {
                coeffs.into_iter().take(1).collect()
            } else {
                poly::rem(&fp, &coeffs, modulus)
            };
            r.resize(len, 0);
            r
        };
        let rows: Vec<Vec<u32>> = w.into_iter().map(|row| reduce(row, self.right.poly(), m)).collect();
        let mut out = vec![0u32; n * m];
        for j in 0..m {
            let col: Vec<u32> = rows.iter().map(|r| r[j]).collect();
            for (i, c) in reduce(col, self.left.poly(), n).into_iter().enumerate() {
                out[i * m + j] = c;
            }
        }
        out
    }

    /// Component-wise product in (F_{q^ℓ})^d.
    pub fn target_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.chunks(self.ell)
            .zip(b.chunks(self.ell))
            .flat_map(|(x, y)| self.big.mul(&x.to_vec(), &y.to_vec()))
            .collect()
    }

    fn verify(&self) -> Result<()> {
        let size = self.n() * self.m();
        let basis = |idx: usize| -> Vec<u32> { (0..size).map(|t| (t == idx) as u32).collect() };
        let one = self.apply(&basis(0));
        let expected_one: Vec<u32> = (0..self.d).flat_map(|_| self.big.one_elt()).collect();
        if one != expected_one {
            return Err(Error::Verification("ν(1) ≠ 1".into()));
        }
        let mut gens = Vec::new();
        if self.n() > 1 {
            gens.push(basis(self.m()));
        }
        if self.m() > 1 {
            gens.push(basis(1));
        }
        for g in &gens {
            for b in 0..size {
                let lhs = self.apply(&self.source_mul(g, &basis(b)));
                let rhs = self.target_mul(&self.apply(g), &self.apply(&basis(b)));
                if lhs != rhs {
                    return Err(Error::Verification("ν is not multiplicative".into()));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let f3 = make_field(3, 1).unwrap();
        let t = tensor_split(1, 5, &f3).unwrap();
        assert_eq!((t.d, t.ell), (1, 5));
        let t = tensor_split(2, 2, &f3).unwrap();
        assert_eq!((t.d, t.ell), (2, 2));
        let t = tensor_split(2, 4, &f3).unwrap();
        assert_eq!((t.d, t.ell), (2, 4));
        assert_eq!(t.forward.len(), 8);
    }
}
