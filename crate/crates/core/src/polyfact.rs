//! Polynomials over F_q and the canonical factorizations of x^n − 1 and x^n + 1.

use crate::error::{Error, Result};
use crate::gf::{embedding, make_field, Elt, FieldDescriptor};
use crate::linalg::FieldOps;
use crate::poly;
use crate::util::{divisors, gcd, mult_order, prime_factors};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    pub field: FieldDescriptor,
    /// Low-degree-first, no trailing zeros.
    pub coeffs: Vec<Elt>,
}

impl Poly {
    pub fn new(field: &FieldDescriptor, mut coeffs: Vec<Elt>) -> Poly {
        poly::trim(&**field, &mut coeffs);
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_ints(field: &FieldDescriptor, c: &[i64]) -> Poly {
        Poly::new(field, c.iter().map(|&x| field.from_int(x)).collect())
    }

    /// x^n + c.
    pub fn binomial(field: &FieldDescriptor, n: usize, c: i64) -> Poly {
        let mut coeffs = vec![field.zero_elt(); n + 1];
        coeffs[0] = field.add(&coeffs[0], &field.from_int(c));
        coeffs[n] = field.add(&coeffs[n], &field.one_elt());
        Poly::new(field, coeffs)
    }

    pub fn degree(&self) -> Option<usize> {
        poly::degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn wrap(&self, coeffs: Vec<Elt>) -> Poly {
        Poly::new(&self.field, coeffs)
    }

    pub fn add(&self, o: &Poly) -> Result<Poly> {
        self.check(o)?;
        Ok(self.wrap(poly::add(&*self.field, &self.coeffs, &o.coeffs)))
    }

    pub fn sub(&self, o: &Poly) -> Result<Poly> {
        self.check(o)?;
        Ok(self.wrap(poly::sub(&*self.field, &self.coeffs, &o.coeffs)))
    }

    pub fn mul(&self, o: &Poly) -> Result<Poly> {
        self.check(o)?;
        Ok(self.wrap(poly::mul(&*self.field, &self.coeffs, &o.coeffs)))
    }

    pub fn divmod(&self, o: &Poly) -> Result<(Poly, Poly)> {
        self.check(o)?;
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = poly::divmod(&*self.field, &self.coeffs, &o.coeffs);
        Ok((self.wrap(q), self.wrap(r)))
    }

    pub fn gcd(&self, o: &Poly) -> Result<Poly> {
        self.check(o)?;
        Ok(self.wrap(poly::gcd(&*self.field, &self.coeffs, &o.coeffs)))
    }

    pub fn eval(&self, x: &Elt) -> Elt {
        poly::eval(&*self.field, &self.coeffs, x)
    }

    /// Evaluates at an element of an extension field of the coefficient field.
    pub fn eval_in(&self, ext: &FieldDescriptor, x: &Elt) -> Result<Elt> {
        let e = embedding(&self.field, ext)?;
        let lifted: Vec<Elt> = self.coeffs.iter().map(|c| e.apply(c)).collect();
        Ok(poly::eval(&**ext, &lifted, x))
    }

    pub fn monic(&self) -> Poly {
        self.wrap(poly::monic(&*self.field, &self.coeffs))
    }

    /// Ben-Or test: no factor of degree ≤ deg/2, via gcd with x^{q^i} − x.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        let f = &*self.field;
        let m = poly::monic(f, &self.coeffs);
        let x = vec![f.zero_elt(), f.one_elt()];
        let mut h = x.clone();
        for _ in 1..=d / 2 {
            h = poly::powmod(f, &h, f.order(), &m);
            if poly::gcd(f, &poly::sub(f, &h, &x), &m).len() > 1 {
                return false;
            }
        }
        true
    }

    /// Monic-normalized x^{deg f} f(1/x).
    pub fn reciprocal(&self) -> Result<Poly> {
        if self.is_zero() {
            return Err(Error::Reciprocal("zero polynomial"));
        }
        if self.field.is_zero(&self.coeffs[0]) {
            return Err(Error::Reciprocal("constant term is zero"));
        }
        let rev: Vec<Elt> = self.coeffs.iter().rev().cloned().collect();
        Ok(self.wrap(rev).monic())
    }

    /// Coefficients as residues; only meaningful over a prime field.
    pub fn prime_coeffs(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c[0]).collect()
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients compared low-degree-first.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let p = self.field.p() as i64;
        let prime = self.field.k() == 1;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if prime {
                let v = c[0] as i64;
                let signed = if v > p / 2 { v - p } else { v };
                let neg = signed < 0;
                let mag = signed.abs();
                if first {
                    write!(f, "{}", if neg { "-" } else { "" })?;
                } else {
                    write!(f, " {} ", if neg { "-" } else { "+" })?;
                }
                if mag != 1 || i == 0 {
                    write!(f, "{mag}")?;
                }
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "{c:?}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            write!(f, "{mono}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorKind {
    SelfReciprocal,
    PairFirst,
    PairSecond,
}

#[derive(Clone, Debug, Serialize)]
pub struct Factor {
    pub poly: Poly,
    pub kind: FactorKind,
    pub partner: Option<usize>,
    /// Orbit of exponents under multiplication by q, as residues mod `root_order`.
    #[serde(skip)]
    pub coset: Vec<u64>,
    #[serde(skip)]
    pub root_order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorList {
    pub n: usize,
    pub sign: Sign,
    pub modulus: Poly,
    pub factors: Vec<Factor>,
    /// Number of self-reciprocal factors.
    pub self_reciprocal: usize,
    /// Number of reciprocal pairs.
    pub pairs: usize,
}

impl FactorList {
    /// Factors with each reciprocal pair collapsed to its first member.
    pub fn collapsed(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter().filter(|f| f.kind != FactorKind::PairSecond)
    }
}

fn check_semisimple(q: &FieldDescriptor, n: usize, sign: Sign) -> Result<()> {
    let m = match sign {
        Sign::Minus => n as u64,
        Sign::Plus => 2 * n as u64,
    };
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    if m % q.p() as u64 == 0 {
        return Err(Error::NotSemisimple { p: q.p(), n: m });
    }
    Ok(())
}

/// Root orders d whose primitive roots are the roots of x^n ∓ 1 (ascending).
fn root_orders(n: u64, sign: Sign) -> Vec<u64> {
    match sign {
        Sign::Minus => divisors(n),
        Sign::Plus => divisors(2 * n).into_iter().filter(|d| n % d != 0).collect(),
    }
}

/// Orbits of the units mod d under multiplication by q, each sorted, listed by smallest member.
pub fn unit_cosets(q: u64, d: u64) -> Vec<Vec<u64>> {
    let mut seen = vec![false; d as usize];
    let mut out = Vec::new();
    for c in 0..d {
        if seen[c as usize] || gcd(c, d) != 1 {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = c;
        while !seen[x as usize] {
            seen[x as usize] = true;
            orbit.push(x);
            x = ((x as u128 * q as u128) % d as u128) as u64;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// A primitive d-th root of unity in `field`, chosen deterministically.
pub fn primitive_root_of_unity(field: &FieldDescriptor, d: u64) -> Elt {
    assert!((field.order() - 1) % d as u128 == 0, "no primitive {d}-th root in this field");
    if d == 1 {
        return field.one_elt();
    }
    let primes = prime_factors(d);
    let cofactor = (field.order() - 1) / d as u128;
    for i in 1..field.order() {
        let a = field.from_lex_rank(i);
        let w = field.pow(&a, cofactor);
        if primes.iter().all(|&l| field.pow(&w, (d / l) as u128) != field.one_elt()) {
            return w;
        }
    }
    unreachable!()
}

pub fn factor_cyclotomic(q: &FieldDescriptor, n: usize, sign: Sign) -> Result<FactorList> {
    check_semisimple(q, n, sign)?;
    let qn = u64::try_from(q.order()).map_err(|_| Error::FieldTooLarge { p: q.p(), k: q.k() })?;
    let mut raw: Vec<(Poly, Vec<u64>, u64)> = Vec::new();
    for d in root_orders(n as u64, sign) {
        let t = mult_order(qn, d) as usize;
        let big = make_field(q.p(), q.k() * t)?;
        let emb = embedding(q, &big)?;
        let w = primitive_root_of_unity(&big, d);
        for coset in unit_cosets(qn, d) {
            let mut prod = vec![big.one_elt()];
            for &c in &coset {
                let root = big.pow(&w, c as u128);
                prod = poly::mul(&*big, &prod, &[big.neg(&root), big.one_elt()]);
            }
            let coeffs = prod
                .iter()
                .map(|c| emb.pullback(c).ok_or_else(|| Error::Verification("coefficient outside F_q".into())))
                .collect::<Result<Vec<_>>>()?;
            raw.push((Poly::new(q, coeffs), coset, d));
        }
    }
    let modulus = Poly::binomial(q, n, if sign == Sign::Minus { -1 } else { 1 });
    Ok(order_factors(n, sign, modulus, raw))
}

fn is_self_reciprocal_coset(coset: &[u64], d: u64) -> bool {
    coset.iter().all(|&c| coset.binary_search(&((d - c) % d)).is_ok())
}

fn order_factors(n: usize, sign: Sign, modulus: Poly, raw: Vec<(Poly, Vec<u64>, u64)>) -> FactorList {
    let mut linear = Vec::new();
    let mut selfrec = Vec::new();
    let mut pair_members = Vec::new();
    for (poly, coset, d) in raw {
        if d <= 2 {
            linear.push((poly, coset, d));
        } else if is_self_reciprocal_coset(&coset, d) {
            selfrec.push((poly, coset, d));
        } else {
            pair_members.push((poly, coset, d));
        }
    }
    // x − 1 (d = 1) precedes x + 1 (d = 2).
    linear.sort_by_key(|x| x.2);
    selfrec.sort_by(|a, b| a.0.cmp(&b.0));
    let mut pairs: Vec<((Poly, Vec<u64>, u64), (Poly, Vec<u64>, u64))> = Vec::new();
    let mut used = vec![false; pair_members.len()];
    for i in 0..pair_members.len() {
        if used[i] {
            continue;
        }
        let (_, coset, d) = &pair_members[i];
        let neg_min = coset.iter().map(|&c| (d - c) % d).min().unwrap();
        let j = (0..pair_members.len())
            .find(|&j| !used[j] && j != i && pair_members[j].2 == *d && pair_members[j].1[0] == neg_min)
            .expect("reciprocal coset present");
        used[i] = true;
        used[j] = true;
        let (a, b) = (pair_members[i].clone(), pair_members[j].clone());
        pairs.push(if a.0 <= b.0 { (a, b) } else { (b, a) });
    }
    pairs.sort_by(|a, b| a.0 .0.cmp(&b.0 .0));
    let mut factors = Vec::new();
    let mk = |(poly, coset, d): (Poly, Vec<u64>, u64), kind, partner| Factor { poly, kind, partner, coset, root_order: d };
    for x in linear.into_iter().chain(selfrec) {
        factors.push(mk(x, FactorKind::SelfReciprocal, None));
    }
    let self_reciprocal = factors.len();
    let npairs = pairs.len();
    for (a, b) in pairs {
        let i = factors.len();
        factors.push(mk(a, FactorKind::PairFirst, Some(i + 1)));
        factors.push(mk(b, FactorKind::PairSecond, Some(i)));
    }
    FactorList { n, sign, modulus, factors, self_reciprocal, pairs: npairs }
}

pub fn reciprocal(f: &Poly) -> Result<Poly> {
    f.reciprocal()
}

/// Degree and kind of a factor, without constructing any field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorShape {
    pub degree: u64,
    /// Self-reciprocal, or one entry standing for a reciprocal pair.
    pub pair: bool,
    /// Root order d (1 for x − 1, 2 for x + 1).
    pub root_order: u64,
}

/// Factor shapes of x^n ∓ 1 over F_q in canonical order with pairs collapsed:
/// linear factors, then self-reciprocal by degree, then pairs by degree.
pub fn cyclotomic_shape(q: u64, n: u64, sign: Sign) -> Result<Vec<FactorShape>> {
    let (p, _) = crate::util::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let m = if sign == Sign::Minus { n } else { 2 * n };
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    if m % p == 0 {
        return Err(Error::NotSemisimple { p: p as u32, n: m });
    }
    let mut linear = Vec::new();
    let mut selfrec = Vec::new();
    let mut pairs = Vec::new();
    for d in root_orders(n, sign) {
        let t = mult_order(q, d);
        let cosets = (crate::util::euler_phi(d) / t) as usize;
        if d <= 2 {
            linear.push(FactorShape { degree: 1, pair: false, root_order: d });
        } else if self_reciprocal_orders(q, d) {
            selfrec.extend((0..cosets).map(|_| FactorShape { degree: t, pair: false, root_order: d }));
        } else {
            pairs.extend((0..cosets / 2).map(|_| FactorShape { degree: t, pair: true, root_order: d }));
        }
    }
    selfrec.sort_by_key(|s| s.degree);
    pairs.sort_by_key(|s| s.degree);
    linear.extend(selfrec);
    linear.extend(pairs);
    Ok(linear)
}

/// For d > 2, every q-coset of units mod d is closed under negation iff −1 is a power of q mod d.
fn self_reciprocal_orders(q: u64, d: u64) -> bool {
    let mut x = q % d;
    for _ in 0..mult_order(q, d) {
        if x == d - 1 {
            return true;
        }
        x = ((x as u128 * q as u128) % d as u128) as u64;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x4_minus_1_over_f3() {
        let f3 = make_field(3, 1).unwrap();
        let fl = factor_cyclotomic(&f3, 4, Sign::Minus).unwrap();
        let polys: Vec<String> = fl.factors.iter().map(|f| f.poly.to_string()).collect();
        assert_eq!(polys, ["x - 1", "x + 1", "x^2 + 1"]);
        assert_eq!((fl.self_reciprocal, fl.pairs), (3, 0));
    }

    #[test]
    fn x16_minus_1_over_f3() {
        let f3 = make_field(3, 1).unwrap();
        let fl = factor_cyclotomic(&f3, 16, Sign::Minus).unwrap();
        let polys: Vec<String> = fl.factors.iter().map(|f| f.poly.to_string()).collect();
        assert_eq!(
            polys,
            ["x - 1", "x + 1", "x^2 + 1", "x^2 + x - 1", "x^2 - x - 1", "x^4 + x^2 - 1", "x^4 - x^2 - 1"]
        );
        assert_eq!((fl.self_reciprocal, fl.pairs), (3, 2));
    }

    #[test]
    fn reciprocal_examples() {
        let f3 = make_field(3, 1).unwrap();
        let p = Poly::from_ints(&f3, &[-1, 1, 1]);
        assert_eq!(p.reciprocal().unwrap(), Poly::from_ints(&f3, &[-1, -1, 1]));
        assert!(Poly::from_ints(&f3, &[0, 1]).reciprocal().is_err());
    }
}
