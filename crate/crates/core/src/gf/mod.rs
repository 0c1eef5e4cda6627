//! Finite fields F_{p^k} with canonical defining polynomials, embeddings
//! between them, and the explicit splitting of tensor products of fields.

mod embed;
mod prime;
mod small;
mod tensor;

pub use embed::{embedding, find_root_lexmin, Embedding};
pub use prime::Fp;
pub use small::SmallField;
pub use tensor::{tensor_split, TensorSplit};

use crate::error::{Error, Result};
use crate::linalg::FieldOps;
use crate::poly;
use crate::util::is_prime;
use serde::{Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Elements of `F_{p^k}` as coefficient vectors over the power basis.
pub type Elt = Vec<u32>;

pub struct Field {
    p: u32,
    k: usize,
    poly: Vec<u32>,
    order: u128,
    fp: Fp,
    frob: OnceLock<Vec<Elt>>,
}

/// Shared handle to a canonical field; equal `(p, k)` always yield the same object.
pub type FieldDescriptor = Arc<Field>;

fn registry() -> &'static Mutex<HashMap<(u32, usize), FieldDescriptor>> {
    static REG: OnceLock<Mutex<HashMap<(u32, usize), FieldDescriptor>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn make_field(p: u32, k: usize) -> Result<FieldDescriptor> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    let order = match (p as u128).checked_pow(k as u32) {
        Some(o) if o < (1u128 << 126) => o,
        _ => return Err(Error::FieldTooLarge { p, k }),
    };
    if let Some(f) = registry().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    // Computed outside the lock: the search can take a while for large k.
    let poly = if k == 1 { vec![0, 1] } else { lex_smallest_irreducible(p, k) };
    let field = Arc::new(Field { p, k, poly, order, fp: Fp::new(p), frob: OnceLock::new() });
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry((p, k)).or_insert(field).clone())
}

/// Field of order `q`, which must be a prime power.
pub fn field_of_order(q: u64) -> Result<FieldDescriptor> {
    let (p, e) = crate::util::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p as u32, e as usize)
}

fn lex_smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let fp = Fp::new(p);
    // Candidates with c0 = 0 are divisible by x, so start the counter just below c0 = 1.
    let mut c = vec![p - 1; k];
    c[0] = 0;
    loop {
        // c[0] is the most significant digit of the lexicographic counter.
        let mut i = k;
        loop {
            i -= 1;
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            assert!(i > 0, "no irreducible polynomial found");
        }
        let mut f = c.clone();
        f.push(1);
        if is_irreducible_fp(&fp, &f) {
            return f;
        }
    }
}

/// Ben-Or irreducibility test for a monic polynomial over F_p.
pub fn is_irreducible_fp(fp: &Fp, f: &[u32]) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=k / 2 {
        h = poly::powmod(fp, &h, fp.p as u128, f);
        let g = poly::gcd(fp, &poly::sub(fp, &h, &x), f);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl Field {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> usize {
        self.k
    }
    /// Defining polynomial, low-degree-first, monic of degree k.
    pub fn poly(&self) -> &[u32] {
        &self.poly
    }
    pub fn order(&self) -> u128 {
        self.order
    }
    pub fn prime_field(&self) -> Fp {
        self.fp
    }

    pub fn zero_elt(&self) -> Elt {
        vec![0; self.k]
    }
    pub fn one_elt(&self) -> Elt {
        let mut e = vec![0; self.k];
        e[0] = 1;
        e
    }
    pub fn from_int(&self, x: i64) -> Elt {
        let mut e = vec![0; self.k];
        e[0] = self.fp.reduce(x);
        e
    }
    /// The class of the polynomial variable (for k = 1 this is 0 by the degree-one convention).
    pub fn generator(&self) -> Elt {
        let mut e = vec![0; self.k];
        if self.k > 1 {
            e[1] = 1;
        }
        e
    }

    pub fn from_index(&self, mut idx: u128) -> Elt {
        let mut e = vec![0; self.k];
        for c in e.iter_mut() {
            *c = (idx % self.p as u128) as u32;
            idx /= self.p as u128;
        }
        e
    }

    pub fn index(&self, a: &[u32]) -> u128 {
        a.iter().rev().fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        (0..self.order).map(move |i| self.from_index(i))
    }

    pub fn pow(&self, a: &[u32], mut e: u128) -> Elt {
        let mut base = a.to_vec();
        let mut acc = self.one_elt();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn frob_images(&self) -> &Vec<Elt> {
        self.frob.get_or_init(|| {
            let xp = self.pow(&self.generator(), self.p as u128);
            let mut imgs = Vec::with_capacity(self.k);
            let mut cur = self.one_elt();
            for _ in 0..self.k {
                imgs.push(cur.clone());
                cur = self.mul(&cur, &xp);
            }
            imgs
        })
    }

    /// a ↦ a^{p^j}.
    pub fn frobenius(&self, a: &[u32], j: usize) -> Elt {
        if self.k == 1 {
            return a.to_vec();
        }
        let imgs = self.frob_images();
        let mut cur = a.to_vec();
        for _ in 0..j % self.k {
            let mut next = vec![0u64; self.k];
            for (c, img) in cur.iter().zip(imgs) {
                if *c == 0 {
                    continue;
                }
                for (n, v) in next.iter_mut().zip(img) {
                    *n = (*n + *c as u64 * *v as u64) % self.p as u64;
                }
            }
            cur = next.into_iter().map(|x| x as u32).collect();
        }
        cur
    }

    /// Multiplicative order of a nonzero element, given the prime factors of order − 1.
    pub fn element_order(&self, a: &[u32], factors_of_group_order: &[u64]) -> u128 {
        let mut ord = self.order - 1;
        for &l in factors_of_group_order {
            while ord % l as u128 == 0 && self.pow(a, ord / l as u128) == self.one_elt() {
                ord /= l as u128;
            }
        }
        ord
    }

    /// Element with the given rank in lexicographic order (coefficient c0 compared first).
    pub fn from_lex_rank(&self, mut idx: u128) -> Elt {
        let mut e = vec![0; self.k];
        for c in e.iter_mut().rev() {
            *c = (idx % self.p as u128) as u32;
            idx /= self.p as u128;
        }
        e
    }

    /// Lexicographically smallest primitive element (requires order − 1 to fit in u64).
    pub fn primitive_element(&self) -> Elt {
        let m = u64::try_from(self.order - 1).expect("field too large to factor its unit group");
        let factors = crate::util::prime_factors(m);
        (1..self.order)
            .map(|i| self.from_lex_rank(i))
            .find(|a| self.element_order(a, &factors) == self.order - 1)
            .expect("primitive element exists")
    }
}

impl FieldOps for Field {
    type E = Elt;
    fn zero(&self) -> Elt {
        self.zero_elt()
    }
    fn one(&self) -> Elt {
        self.one_elt()
    }
    fn add(&self, a: &Elt, b: &Elt) -> Elt {
        let p = self.p as u64;
        a.iter().zip(b).map(|(&x, &y)| ((x as u64 + y as u64) % p) as u32).collect()
    }
    fn sub(&self, a: &Elt, b: &Elt) -> Elt {
        let p = self.p as u64;
        a.iter().zip(b).map(|(&x, &y)| ((x as u64 + p - y as u64) % p) as u32).collect()
    }
    fn neg(&self, a: &Elt) -> Elt {
        a.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect()
    }
    fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let k = self.k;
        let p = self.p as u64;
        if k == 1 {
            return vec![(a[0] as u64 * b[0] as u64 % p) as u32];
        }
        let small = p < (1 << 16);
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if small {
                    prod[i + j] += x as u64 * y as u64;
                } else {
                    prod[i + j] = (prod[i + j] + x as u64 * y as u64 % p) % p;
                }
            }
        }
        for c in prod.iter_mut() {
            *c %= p;
        }
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            // x^d = -sum poly[i] x^{d-k+i}
            for i in 0..k {
                let t = c * self.poly[i] as u64 % p;
                prod[d - k + i] = (prod[d - k + i] + p - t) % p;
            }
        }
        prod.truncate(k);
        prod.into_iter().map(|x| x as u32).collect()
    }
    fn inv(&self, a: &Elt) -> Elt {
        assert!(!self.is_zero(a), "inverse of zero");
        self.pow(a, self.order - 2)
    }
    fn is_zero(&self, a: &Elt) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} {:?}", self.p, self.k, self.poly)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}
impl Eq for Field {}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Field", 3)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("poly", &self.poly)?;
        st.end()
    }
}

/// An element together with its field, for the checked public API.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    pub field: FieldDescriptor,
    pub coeffs: Elt,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl FieldElement {
    pub fn new(field: &FieldDescriptor, coeffs: Elt) -> Result<Self> {
        if coeffs.len() != field.k || coeffs.iter().any(|&c| c >= field.p) {
            return Err(Error::Invalid(format!("bad coefficient vector {coeffs:?}")));
        }
        Ok(FieldElement { field: field.clone(), coeffs })
    }
    pub fn zero(field: &FieldDescriptor) -> Self {
        FieldElement { field: field.clone(), coeffs: field.zero_elt() }
    }
    pub fn one(field: &FieldDescriptor) -> Self {
        FieldElement { field: field.clone(), coeffs: field.one_elt() }
    }
    pub fn generator(field: &FieldDescriptor) -> Self {
        FieldElement { field: field.clone(), coeffs: field.generator() }
    }
    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.coeffs)
    }
    fn check(&self, other: &Self) -> Result<()> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
    fn wrap(&self, coeffs: Elt) -> Self {
        FieldElement { field: self.field.clone(), coeffs }
    }
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(&self.coeffs, &other.coeffs)))
    }
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(&self.coeffs, &other.coeffs)))
    }
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(&self.coeffs, &other.coeffs)))
    }
    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(&self.coeffs))
    }
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.wrap(self.field.inv(&self.coeffs)))
    }
    pub fn pow(&self, e: u128) -> Self {
        self.wrap(self.field.pow(&self.coeffs, e))
    }
    pub fn frobenius(&self, j: usize) -> Self {
        self.wrap(self.field.frobenius(&self.coeffs, j))
    }
}
