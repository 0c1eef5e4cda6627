//! Wedderburn–Artin decompositions as block multisets, their combination
//! rule for direct products, and the closed-form corollary tables.

use crate::error::{Error, Result};
use crate::gf::field_of_order;
use crate::polyfact::{cyclotomic_shape, FactorShape, Sign};
use crate::util::{divisors, gcd, lcm, mobius, mult_order, prime_power};
use serde::{Deserialize, Serialize, Serializer};
use std::fmt;

/// `mult` copies of M_n(F_{q^r}).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub mult: u64,
    pub n: u64,
    pub r: u64,
}

impl Block {
    pub fn new(mult: u64, n: u64, r: u64) -> Block {
        Block { mult, n, r }
    }
    pub fn dim(&self) -> u64 {
        self.mult * self.n * self.n * self.r
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub q: u64,
    pub group_order: u64,
    /// Sorted by (n, r) with multiplicities merged.
    pub blocks: Vec<Block>,
}

impl Decomposition {
    pub fn new(q: u64, group_order: u64, blocks: impl IntoIterator<Item = Block>) -> Decomposition {
        let mut d = Decomposition { q, group_order, blocks: blocks.into_iter().collect() };
        d.canonicalize();
        d
    }

    fn canonicalize(&mut self) {
        self.blocks.retain(|b| b.mult > 0);
        self.blocks.sort_by_key(|b| (b.n, b.r));
        let mut merged: Vec<Block> = Vec::new();
        for b in self.blocks.drain(..) {
            match merged.last_mut() {
                Some(last) if last.n == b.n && last.r == b.r => last.mult += b.mult,
                _ => merged.push(b),
            }
        }
        self.blocks = merged;
    }

    pub fn dimension(&self) -> u64 {
        self.blocks.iter().map(Block::dim).sum()
    }

    /// Individual summands (n, r) in canonical order.
    pub fn summands(&self) -> Vec<(u64, u64)> {
        self.blocks.iter().flat_map(|b| (0..b.mult).map(move |_| (b.n, b.r))).collect()
    }

    pub fn summand_count(&self) -> u64 {
        self.blocks.iter().map(|b| b.mult).sum()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let field = if b.r == 1 { format!("F_{}", self.q) } else { format!("F_{{{}^{}}}", self.q, b.r) };
                let alg = if b.n == 1 { field } else { format!("M_{}({field})", b.n) };
                if b.mult == 1 {
                    alg
                } else {
                    format!("{}{alg}", b.mult)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::{Error as _, SerializeStruct};
        let field = field_of_order(self.q).map_err(S::Error::custom)?;
        let mut st = s.serialize_struct("Decomposition", 3)?;
        st.serialize_field("q", &*field)?;
        st.serialize_field("order", &self.group_order)?;
        st.serialize_field("blocks", &self.blocks)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    Dihedral(u64),
    Quaternion(u64),
    Product(Vec<GroupSpec>),
}

impl GroupSpec {
    pub fn order(&self) -> u64 {
        match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Quaternion(n) => 4 * n,
            GroupSpec::Product(fs) => fs.iter().map(GroupSpec::order).product(),
        }
    }

    /// Non-product factors, flattening nested products.
    pub fn factors(&self) -> Vec<GroupSpec> {
        match self {
            GroupSpec::Product(fs) => fs.iter().flat_map(GroupSpec::factors).collect(),
            g => vec![g.clone()],
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Product(fs) if fs.len() < 2 => {
                Err(Error::InvalidGroup("a product needs at least two factors".into()))
            }
            GroupSpec::Product(fs) => fs.iter().try_for_each(GroupSpec::validate),
            GroupSpec::Cyclic(0) | GroupSpec::Dihedral(0) | GroupSpec::Quaternion(0) => {
                Err(Error::InvalidGroup("order parameter must be positive".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn has_quaternion(&self) -> bool {
        self.factors().iter().any(|g| matches!(g, GroupSpec::Quaternion(_)))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion(n) => write!(f, "Q{n}"),
            GroupSpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|g| g.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

fn check_q(q: u64, order: u64) -> Result<u64> {
    let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if order % p == 0 {
        return Err(Error::NotSemisimple { p: p as u32, n: order });
    }
    Ok(p)
}

pub fn decompose_cyclic(q: u64, n: u64) -> Result<Decomposition> {
    check_q(q, n)?;
    let mut blocks = Vec::new();
    for s in cyclotomic_shape(q, n, Sign::Minus)? {
        blocks.push(Block::new(if s.pair { 2 } else { 1 }, 1, s.degree));
    }
    Ok(Decomposition::new(q, n, blocks))
}

/// Perlis–Walker: blocks (F_{q^{t_d}})^{a_d} for d dividing the exponent.
pub fn decompose_abelian(q: u64, orders: &[u64]) -> Result<Decomposition> {
    let total: u64 = orders.iter().product();
    check_q(q, total)?;
    // Elements of order dividing e: ∏ gcd(e, a_i).
    let exponent = orders.iter().fold(1, |acc, &a| lcm(acc, a));
    let count_dividing = |e: u64| -> i64 { orders.iter().map(|&a| gcd(e, a) as i64).product() };
    let mut blocks = Vec::new();
    for d in divisors(exponent) {
        let n_d: i64 = divisors(d).into_iter().map(|e| mobius(d / e) * count_dividing(e)).sum();
        if n_d == 0 {
            continue;
        }
        let t = mult_order(q, d);
        blocks.push(Block::new(n_d as u64 / t, 1, t));
    }
    Ok(Decomposition::new(q, total, blocks))
}

fn dihedral_blocks(shapes: &[FactorShape]) -> Vec<Block> {
    shapes
        .iter()
        .map(|s| {
            if s.pair {
                Block::new(1, 2, s.degree)
            } else if s.degree == 1 {
                Block::new(2, 1, 1)
            } else {
                Block::new(1, 2, s.degree / 2)
            }
        })
        .collect()
}

pub fn decompose_dihedral(q: u64, n: u64) -> Result<Decomposition> {
    check_q(q, 2 * n)?;
    let shapes = cyclotomic_shape(q, n, Sign::Minus)?;
    Ok(Decomposition::new(q, 2 * n, dihedral_blocks(&shapes)))
}

/// Q_n of order 4n. The factor x + 1 of x^n + 1 (n odd) contributes the quotient
/// F_q[y]/(y² + 1), which is F_q ⊕ F_q when q ≡ 1 mod 4 and F_{q²} otherwise.
pub fn decompose_quaternion(q: u64, n: u64) -> Result<Decomposition> {
    check_q(q, 4 * n)?;
    let mut blocks = dihedral_blocks(&cyclotomic_shape(q, n, Sign::Minus)?);
    for s in cyclotomic_shape(q, n, Sign::Plus)? {
        blocks.push(if s.degree == 1 && !s.pair {
            if q % 4 == 1 {
                Block::new(2, 1, 1)
            } else {
                Block::new(1, 1, 2)
            }
        } else if s.pair {
            Block::new(1, 2, s.degree)
        } else {
            Block::new(1, 2, s.degree / 2)
        });
    }
    Ok(Decomposition::new(q, 4 * n, blocks))
}

/// The quaternion block list read literally, with F_q ⊕ F_q for x + 1 regardless of q.
/// Kept for comparison; it over-splits when q ≡ 3 mod 4 and n is odd.
pub fn decompose_quaternion_literal(q: u64, n: u64) -> Result<Decomposition> {
    check_q(q, 4 * n)?;
    let mut blocks = dihedral_blocks(&cyclotomic_shape(q, n, Sign::Minus)?);
    blocks.extend(dihedral_blocks(&cyclotomic_shape(q, n, Sign::Plus)?));
    Ok(Decomposition::new(q, 4 * n, blocks))
}

pub fn tensor_decompositions(a: &Decomposition, b: &Decomposition) -> Result<Decomposition> {
    if a.q != b.q {
        return Err(Error::FieldMismatch);
    }
    let mut blocks = Vec::new();
    for x in &a.blocks {
        for y in &b.blocks {
            blocks.push(Block::new(x.mult * y.mult * gcd(x.r, y.r), x.n * y.n, lcm(x.r, y.r)));
        }
    }
    Ok(Decomposition::new(a.q, a.group_order * b.group_order, blocks))
}

pub fn decompose_group(q: u64, spec: &GroupSpec) -> Result<Decomposition> {
    spec.validate()?;
    check_q(q, spec.order())?;
    match spec {
        GroupSpec::Cyclic(n) => decompose_cyclic(q, *n),
        GroupSpec::Dihedral(n) => decompose_dihedral(q, *n),
        GroupSpec::Quaternion(n) => decompose_quaternion(q, *n),
        GroupSpec::Product(fs) => {
            let mut acc = decompose_group(q, &fs[0])?;
            for g in &fs[1..] {
                acc = tensor_decompositions(&acc, &decompose_group(q, g)?)?;
            }
            Ok(acc)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaCase {
    /// 2·gcd(m, n) divides m.
    Divides,
    /// 2·gcd(m, n) does not divide m.
    NotDivides,
}

/// (gcd(m/2, n), lcm(m/2, n)) computed from α = gcd(m, n), β = lcm(m, n).
pub fn gcd_lcm_halved(m: u64, n: u64) -> Result<(u64, u64, LemmaCase)> {
    if m % 2 != 0 || m == 0 || n == 0 {
        return Err(Error::Invalid(format!("m must be positive and even, got m = {m}, n = {n}")));
    }
    let (alpha, beta) = (gcd(m, n), lcm(m, n));
    if m % (2 * alpha) == 0 {
        Ok((alpha, beta / 2, LemmaCase::Divides))
    } else {
        Ok((alpha / 2, beta, LemmaCase::NotDivides))
    }
}

/// (gcd(m/2, n/2), lcm(m/2, n/2)) for m, n both even.
pub fn gcd_lcm_both_halved(m: u64, n: u64) -> Result<(u64, u64)> {
    if m % 2 != 0 || n % 2 != 0 || m == 0 || n == 0 {
        return Err(Error::Invalid("both arguments must be positive and even".into()));
    }
    Ok((gcd(m, n) / 2, lcm(m, n) / 2))
}

pub fn dihedral_quaternion_iso(q: u64, t: u64) -> bool {
    t % 2 == 0 || q % 4 == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorollaryCase {
    DxC(u64, u64),
    DxD(u64, u64),
    DxQ(u64, u64),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cat {
    Lin,
    SelfRec,
    Pair,
}

fn categorize(shapes: &[FactorShape]) -> Vec<(Cat, u64)> {
    shapes
        .iter()
        .map(|s| {
            let c = if s.pair {
                Cat::Pair
            } else if s.degree == 1 {
                Cat::Lin
            } else {
                Cat::SelfRec
            };
            (c, s.degree)
        })
        .collect()
}

/// Blocks A_{ij}^{d_ij} of the dihedral-times-dihedral table; `fix_minus_one` replaces
/// the one-dimensional rows of the second factor by the F_{q²} quotient (quaternion case, q ≡ 3 mod 4).
fn dd_table(fs: &[(Cat, u64)], gs: &[(Cat, u64)], fix_minus_one: bool) -> Vec<Block> {
    use Cat::*;
    let mut out = Vec::new();
    for &(ci, di) in fs {
        for &(cj, dj) in gs {
            let a = gcd(di, dj);
            let l = lcm(di, dj);
            if fix_minus_one && cj == Lin {
                match ci {
                    Lin => out.push(Block::new(2, 1, 2)),
                    SelfRec => out.push(Block::new(gcd(di / 2, 2), 2, lcm(di / 2, 2))),
                    Pair => out.push(Block::new(gcd(di, 2), 2, lcm(di, 2))),
                }
                continue;
            }
            let (n, r, count) = match (ci, cj) {
                (Lin, Lin) => (1, 1, 4),
                (SelfRec, Lin) | (Lin, SelfRec) => (2, l / 2, 1),
                (Pair, Lin) | (Lin, Pair) => (2, l, 1),
                (SelfRec, SelfRec) => (4, l / 2, 1),
                (SelfRec, Pair) if di % (2 * a) == 0 => (4, l / 2, 1),
                (Pair, SelfRec) if dj % (2 * a) == 0 => (4, l / 2, 1),
                _ => (4, l, 1),
            };
            let d = match (ci, cj) {
                (Lin, SelfRec | Pair) | (SelfRec | Pair, Lin) => 2 * a,
                (SelfRec, SelfRec) => a / 2,
                (SelfRec, Pair) if di % (2 * a) != 0 => a / 2,
                (Pair, SelfRec) if dj % (2 * a) != 0 => a / 2,
                _ => a,
            };
            out.push(Block::new(count * d, n, r));
        }
    }
    out
}

/// Closed-form decompositions of F_q[D_n × C_a], F_q[D_n × D_m] and F_q[D_n × Q_m],
/// applying the first matching table row at boundary indices.
pub fn corollary_decompose(q: u64, case: CorollaryCase) -> Result<Decomposition> {
    use Cat::*;
    let (n, order) = match case {
        CorollaryCase::DxC(n, a) => (n, 2 * n * a),
        CorollaryCase::DxD(n, m) => (n, 4 * n * m),
        CorollaryCase::DxQ(n, m) => (n, 8 * n * m),
    };
    check_q(q, order)?;
    let fs = categorize(&cyclotomic_shape(q, n, Sign::Minus)?);
    let blocks = match case {
        CorollaryCase::DxC(_, a) => {
            let mut ps = Vec::new();
            for s in cyclotomic_shape(q, a, Sign::Minus)? {
                ps.extend(std::iter::repeat(s.degree).take(if s.pair { 2 } else { 1 }));
            }
            let mut out = Vec::new();
            for &(ci, di) in &fs {
                for &dj in &ps {
                    let a = gcd(di, dj);
                    let l = lcm(di, dj);
                    out.push(match ci {
                        Lin => Block::new(2 * a, 1, dj),
                        SelfRec if di % (2 * a) == 0 => Block::new(a, 2, l / 2),
                        SelfRec => Block::new(a / 2, 2, l),
                        Pair => Block::new(a, 2, l),
                    });
                }
            }
            out
        }
        CorollaryCase::DxD(_, m) => {
            let gs = categorize(&cyclotomic_shape(q, m, Sign::Minus)?);
            dd_table(&fs, &gs, false)
        }
        CorollaryCase::DxQ(_, m) => {
            let gs = categorize(&cyclotomic_shape(q, m, Sign::Minus)?);
            let hs = categorize(&cyclotomic_shape(q, m, Sign::Plus)?);
            let mut out = dd_table(&fs, &gs, false);
            out.extend(dd_table(&fs, &hs, q % 4 == 3));
            out
        }
    };
    Ok(Decomposition::new(q, order, blocks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(q: u64, order: u64, b: &[(u64, u64, u64)]) -> Decomposition {
        Decomposition::new(q, order, b.iter().map(|&(m, n, r)| Block::new(m, n, r)))
    }

    #[test]
    fn small_examples() {
        assert_eq!(decompose_cyclic(3, 5).unwrap(), d(3, 5, &[(1, 1, 1), (1, 1, 4)]));
        assert_eq!(decompose_cyclic(3, 4).unwrap(), d(3, 4, &[(2, 1, 1), (1, 1, 2)]));
        assert_eq!(decompose_dihedral(3, 4).unwrap(), d(3, 8, &[(4, 1, 1), (1, 2, 1)]));
        assert_eq!(
            decompose_dihedral(3, 20).unwrap(),
            d(3, 40, &[(4, 1, 1), (1, 2, 1), (2, 2, 2), (1, 2, 4)])
        );
        assert_eq!(decompose_quaternion(3, 2).unwrap(), d(3, 8, &[(4, 1, 1), (1, 2, 1)]));
        assert_eq!(decompose_quaternion(3, 1).unwrap(), decompose_cyclic(3, 4).unwrap());
        assert_eq!(decompose_abelian(3, &[2, 2]).unwrap(), d(3, 4, &[(4, 1, 1)]));
        assert_eq!(decompose_abelian(3, &[5]).unwrap(), decompose_cyclic(3, 5).unwrap());
        assert_eq!(decompose_abelian(3, &[]).unwrap(), d(3, 1, &[(1, 1, 1)]));
    }

    #[test]
    fn lemma_cases() {
        assert_eq!(gcd_lcm_halved(4, 2).unwrap(), (2, 2, LemmaCase::Divides));
        assert_eq!(gcd_lcm_halved(6, 4).unwrap(), (1, 12, LemmaCase::NotDivides));
        assert!(gcd_lcm_halved(5, 2).is_err());
    }

    #[test]
    fn display() {
        let dec = decompose_group(3, &GroupSpec::Product(vec![GroupSpec::Dihedral(4), GroupSpec::Cyclic(4)])).unwrap();
        assert_eq!(dec.to_string(), "8F_3 ⊕ 4F_{3^2} ⊕ 2M_2(F_3) ⊕ M_2(F_{3^2})");
    }
}
