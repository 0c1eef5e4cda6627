use super::{make_field, Elt, FieldDescriptor};
use crate::error::{Error, Result};
use crate::linalg::FieldOps;
use crate::util::prime_power;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Table-driven F_q for q ≤ 256. Elements are bytes whose base-p digits are
/// the coefficient vector of the canonical field (c0 least significant).
pub struct SmallField {
    pub q: usize,
    pub p: u32,
    pub field: FieldDescriptor,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl SmallField {
    pub fn new(q: u64) -> Result<Arc<SmallField>> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<SmallField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&q) {
            return Ok(f.clone());
        }
        if q > 256 {
            return Err(Error::Unsupported(format!("ground field of order {q} > 256")));
        }
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let field = make_field(p as u32, e as usize)?;
        let qu = q as usize;
        let elts: Vec<Elt> = (0..qu).map(|i| field.from_index(i as u128)).collect();
        let mut add = vec![0u8; qu * qu];
        let mut mul = vec![0u8; qu * qu];
        for a in 0..qu {
            for b in 0..qu {
                add[a * qu + b] = field.index(&field.add(&elts[a], &elts[b])) as u8;
                mul[a * qu + b] = field.index(&field.mul(&elts[a], &elts[b])) as u8;
            }
        }
        let neg = (0..qu).map(|a| field.index(&field.neg(&elts[a])) as u8).collect();
        let mut inv = vec![0u8; qu];
        for a in 1..qu {
            inv[a] = (1..qu).find(|&b| mul[a * qu + b] == 1).unwrap() as u8;
        }
        let f = Arc::new(SmallField { q: qu, p: p as u32, field, add, mul, neg, inv });
        Ok(cache.lock().unwrap().entry(q).or_insert(f).clone())
    }

    pub fn is_prime(&self) -> bool {
        self.q == self.p as usize
    }

    pub fn from_int(&self, x: i64) -> u8 {
        x.rem_euclid(self.p as i64) as u8
    }

    pub fn from_elt(&self, a: &[u32]) -> u8 {
        self.field.index(a) as u8
    }

    pub fn to_elt(&self, a: u8) -> Elt {
        self.field.from_index(a as u128)
    }

    #[inline]
    pub fn add_u8(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }
    #[inline]
    pub fn mul_u8(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }
    #[inline]
    pub fn neg_u8(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
    #[inline]
    pub fn inv_u8(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }
    pub fn mul_row(&self, a: u8) -> &[u8] {
        &self.mul[a as usize * self.q..(a as usize + 1) * self.q]
    }
}

impl FieldOps for SmallField {
    type E = u8;
    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn add(&self, a: &u8, b: &u8) -> u8 {
        self.add_u8(*a, *b)
    }
    fn sub(&self, a: &u8, b: &u8) -> u8 {
        self.add_u8(*a, self.neg_u8(*b))
    }
    fn mul(&self, a: &u8, b: &u8) -> u8 {
        self.mul_u8(*a, *b)
    }
    fn neg(&self, a: &u8) -> u8 {
        self.neg_u8(*a)
    }
    fn inv(&self, a: &u8) -> u8 {
        self.inv_u8(*a)
    }
    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree_with_field() {
        for q in [2u64, 3, 4, 5, 8, 9, 25, 27] {
            let sf = SmallField::new(q).unwrap();
            for a in 0..q as u8 {
                for b in 0..q as u8 {
                    let prod = sf.field.mul(&sf.to_elt(a), &sf.to_elt(b));
                    assert_eq!(sf.mul_u8(a, b), sf.from_elt(&prod));
                }
                if a != 0 {
                    assert_eq!(sf.mul_u8(a, sf.inv_u8(a)), 1);
                }
                assert_eq!(sf.add_u8(a, sf.neg_u8(a)), 0);
            }
        }
        assert!(SmallField::new(6).is_err());
        assert!(SmallField::new(257).is_err());
    }
}
