use crate::error::{Error, Result};
use crate::gf::SmallField;
use crate::linalg::{self, Matrix};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::fmt;
use std::sync::Arc;

/// A linear [n, k] code over F_q (q ≤ 256) held as an RREF generator matrix.
#[derive(Clone)]
pub struct LinearCode {
    pub field: Arc<SmallField>,
    pub n: usize,
    gen: Matrix<u8>,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Row space of `rows`; rank-deficient input is fine.
    pub fn from_rows(field: &Arc<SmallField>, n: usize, rows: Matrix<u8>) -> Result<LinearCode> {
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("expected rows of length {n}")));
        }
        let mut gen = rows;
        let pivots = linalg::rref(&**field, &mut gen);
        Ok(LinearCode { field: field.clone(), n, gen, pivots })
    }

    pub fn full(field: &Arc<SmallField>, n: usize) -> LinearCode {
        LinearCode { field: field.clone(), n, gen: linalg::identity(&**field, n), pivots: (0..n).collect() }
    }

    pub fn zero(field: &Arc<SmallField>, n: usize) -> LinearCode {
        LinearCode { field: field.clone(), n, gen: Vec::new(), pivots: Vec::new() }
    }

    /// Reads `{"q": .., "n": .., "generator": [[..], ..]}` with entries in byte encoding.
    pub fn from_json(v: &serde_json::Value) -> Result<LinearCode> {
        let bad = |m: &str| Error::Invalid(format!("code JSON: {m}"));
        let q = v["q"].as_u64().ok_or_else(|| bad("missing q"))?;
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let field = SmallField::new(q)?;
        let rows = v["generator"]
            .as_array()
            .ok_or_else(|| bad("missing generator"))?
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| bad("rows must be arrays"))?
                    .iter()
                    .map(|x| x.as_u64().filter(|&x| x < q).map(|x| x as u8).ok_or_else(|| bad("entry out of range")))
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Matrix<u8>>>()?;
        LinearCode::from_rows(&field, n, rows)
    }

    pub fn q(&self) -> usize {
        self.field.q
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    pub fn generator(&self) -> &Matrix<u8> {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        v.len() == self.n && linalg::in_row_space(&*self.field, &self.gen, &self.pivots, v)
    }

    /// Euclidean dual.
    pub fn dual(&self) -> LinearCode {
        let h = linalg::nullspace(&*self.field, &self.gen, self.n);
        LinearCode::from_rows(&self.field, self.n, h).expect("lengths agree")
    }

    /// Parity-check matrix H (rows span the dual), so that c ∈ C iff H c = 0.
    pub fn parity_check(&self) -> Matrix<u8> {
        self.dual().gen
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n == other.n && self.field.q == other.field.q && self.gen.iter().all(|r| other.contains(r))
    }

    /// Encode a message of length k.
    pub fn encode(&self, msg: &[u8]) -> Vec<u8> {
        let f = &*self.field;
        let mut out = vec![0u8; self.n];
        for (&m, row) in msg.iter().zip(&self.gen) {
            if m == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = f.add_u8(*o, f.mul_u8(m, g));
            }
        }
        out
    }

    pub fn permute_coordinates(&self, perm: &[usize]) -> LinearCode {
        let rows = self
            .gen
            .iter()
            .map(|r| {
                let mut out = vec![0u8; self.n];
                for (i, &v) in r.iter().enumerate() {
                    out[perm[i]] = v;
                }
                out
            })
            .collect();
        LinearCode::from_rows(&self.field, self.n, rows).expect("lengths agree")
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, o: &Self) -> bool {
        self.field.q == o.field.q && self.n == o.n && self.gen == o.gen
    }
}
impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]_{} code", self.n, self.k(), self.field.q)
    }
}

impl Serialize for LinearCode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("LinearCode", 4)?;
        st.serialize_field("q", &self.field.q)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k())?;
        st.serialize_field("generator", &self.gen)?;
        st.end()
    }
}

pub fn weight(v: &[u8]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Euclidean inner product.
pub fn dot(f: &SmallField, a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add_u8(acc, f.mul_u8(x, y)))
}

pub fn rref(f: &SmallField, m: &Matrix<u8>) -> Matrix<u8> {
    let mut a = m.clone();
    linalg::rref(f, &mut a);
    a
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_of_repetition() {
        let f = SmallField::new(3).unwrap();
        let rep = LinearCode::from_rows(&f, 4, vec![vec![1, 1, 1, 1]]).unwrap();
        let d = rep.dual();
        assert_eq!(d.k(), 3);
        assert!(d.contains(&[1, 2, 0, 0]));
        assert_eq!(d.dual(), rep);
        assert_eq!(LinearCode::full(&f, 5).dual().k(), 0);
    }

    #[test]
    fn rref_small() {
        let f = SmallField::new(3).unwrap();
        assert_eq!(rref(&f, &vec![vec![0, 1], vec![0, 2]]), vec![vec![0, 1]]);
    }
}
