//! Dense univariate polynomials over any [`FieldOps`] field, low-degree-first.

use crate::linalg::FieldOps;

pub fn trim<F: FieldOps>(f: &F, a: &mut Vec<F::E>) {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
}

pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn add<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let mut out: Vec<F::E> = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, &mut out);
    out
}

pub fn sub<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let mut out: Vec<F::E> = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trim(f, &mut out);
    out
}

pub fn scale<F: FieldOps>(f: &F, a: &[F::E], c: &F::E) -> Vec<F::E> {
    let mut out: Vec<F::E> = a.iter().map(|x| f.mul(x, c)).collect();
    trim(f, &mut out);
    out
}

pub fn mul<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

/// Quotient and remainder; panics if `b` is zero.
pub fn divmod<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(f, &mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead_inv = f.inv(&b[db]);
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let d = r.len() - 1;
        let c = f.mul(&r[d], &lead_inv);
        for (i, y) in b.iter().enumerate() {
            r[d - db + i] = f.sub(&r[d - db + i], &f.mul(&c, y));
        }
        q[d - db] = c;
        r.pop();
        trim(f, &mut r);
    }
    trim(f, &mut q);
    (q, r)
}

pub fn rem<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    divmod(f, a, b).1
}

pub fn monic<F: FieldOps>(f: &F, a: &[F::E]) -> Vec<F::E> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(f, a, &f.inv(l)),
    }
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub fn gcd<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(f, &mut x);
    trim(f, &mut y);
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn eval<F: FieldOps>(f: &F, a: &[F::E], x: &F::E) -> F::E {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
}

pub fn mulmod<F: FieldOps>(f: &F, a: &[F::E], b: &[F::E], m: &[F::E]) -> Vec<F::E> {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod<F: FieldOps>(f: &F, a: &[F::E], mut e: u128, m: &[F::E]) -> Vec<F::E> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &[f.one()], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(f, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(f, &base, &base, m);
        }
    }
    acc
}
