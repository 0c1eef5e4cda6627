//! Concrete group algebras F_q[G] for products of cyclic, dihedral and
//! generalised quaternion groups.

mod iso;
mod oracle;

pub use iso::{apply_iso, build_iso, inverse_iso, AlgebraIso, BlockKind, IsoBlock};
pub use oracle::{brute_force_left_ideals, regular_decomposition};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf::SmallField;
use crate::wa::GroupSpec;
use rand::Rng;
use std::fmt;
use std::sync::Arc;

const TABLE_LIMIT: usize = 1024;

/// A group with its elements in canonical order: lexicographic on exponent
/// tuples, factors of a product compared left to right.
pub struct Group {
    spec: GroupSpec,
    factors: Vec<GroupSpec>,
    sizes: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
    table: Option<Vec<u32>>,
    inverses: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    /// Exponents: one per cyclic factor, (i, j) for x^i y^j per dihedral or quaternion factor.
    pub coords: Vec<u64>,
}

fn factor_mul(f: &GroupSpec, a: usize, b: usize) -> usize {
    match *f {
        GroupSpec::Cyclic(n) => (a + b) % n as usize,
        GroupSpec::Dihedral(n) => {
            let n = n as usize;
            let (i, j, k, l) = (a / 2, a % 2, b / 2, b % 2);
            let e = if j == 0 { i + k } else { i + n - k };
            (e % n) * 2 + (j ^ l)
        }
        GroupSpec::Quaternion(n) => {
            let (n, m) = (n as usize, 2 * n as usize);
            let (i, j, k, l) = (a / 2, a % 2, b / 2, b % 2);
            let mut e = if j == 0 { i + k } else { i + m - k };
            if j == 1 && l == 1 {
                e += n;
                (e % m) * 2
            } else {
                (e % m) * 2 + (j ^ l)
            }
        }
        GroupSpec::Product(_) => unreachable!("factors are atomic"),
    }
}

fn factor_size(f: &GroupSpec) -> usize {
    f.order() as usize
}

impl Group {
    pub fn new(spec: &GroupSpec) -> Result<Arc<Group>> {
        spec.validate()?;
        let factors = spec.factors();
        let sizes: Vec<usize> = factors.iter().map(factor_size).collect();
        let order: usize = sizes.iter().product();
        let mut strides = vec![1; sizes.len()];
        for i in (0..sizes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1];
        }
        let mut g = Group { spec: spec.clone(), factors, sizes, strides, order, table: None, inverses: Vec::new() };
        if order <= TABLE_LIMIT {
            let mut t = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    t[a * order + b] = g.mul_direct(a, b) as u32;
                }
            }
            g.table = Some(t);
        }
        g.inverses = (0..order)
            .map(|a| {
                let parts: Vec<usize> = g
                    .split(a)
                    .into_iter()
                    .zip(&g.factors)
                    .map(|(x, f)| (0..factor_size(f)).find(|&y| factor_mul(f, x, y) == 0).unwrap())
                    .collect();
                g.join(&parts) as u32
            })
            .collect();
        Ok(Arc::new(g))
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    pub fn factors(&self) -> &[GroupSpec] {
        &self.factors
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn identity(&self) -> usize {
        0
    }

    /// Local indices per factor.
    pub fn split(&self, a: usize) -> Vec<usize> {
        self.sizes.iter().zip(&self.strides).map(|(&s, &st)| (a / st) % s).collect()
    }

    pub fn join(&self, parts: &[usize]) -> usize {
        parts.iter().zip(&self.strides).map(|(p, s)| p * s).sum()
    }

    fn mul_direct(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (self.split(a), self.split(b));
        let parts: Vec<usize> = self.factors.iter().enumerate().map(|(i, f)| factor_mul(f, pa[i], pb[i])).collect();
        self.join(&parts)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None => self.mul_direct(a, b),
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn element(&self, a: usize) -> GroupElement {
        let mut coords = Vec::new();
        for (x, f) in self.split(a).into_iter().zip(&self.factors) {
            match f {
                GroupSpec::Cyclic(_) => coords.push(x as u64),
                _ => {
                    coords.push((x / 2) as u64);
                    coords.push((x % 2) as u64);
                }
            }
        }
        GroupElement { coords }
    }

    pub fn index_of(&self, e: &GroupElement) -> Result<usize> {
        let mut parts = Vec::with_capacity(self.factors.len());
        let mut it = e.coords.iter();
        let bad = || Error::Invalid("coordinates do not match the group".into());
        for f in &self.factors {
            let part = match *f {
                GroupSpec::Cyclic(n) => (*it.next().ok_or_else(bad)? % n) as usize,
                GroupSpec::Dihedral(n) | GroupSpec::Quaternion(n) => {
                    let m = if matches!(f, GroupSpec::Dihedral(_)) { n } else { 2 * n };
                    let i = *it.next().ok_or_else(bad)? % m;
                    let j = *it.next().ok_or_else(bad)?;
                    if j > 1 {
                        return Err(bad());
                    }
                    (i * 2 + j) as usize
                }
                GroupSpec::Product(_) => unreachable!(),
            };
            parts.push(part);
        }
        if it.next().is_some() {
            return Err(bad());
        }
        Ok(self.join(&parts))
    }

    /// Generators of factor `f` as group-element indices: [z] for cyclic, [x, y] otherwise.
    pub fn generators_of(&self, f: usize) -> Vec<usize> {
        let local: Vec<usize> = match self.factors[f] {
            GroupSpec::Cyclic(1) => vec![0],
            GroupSpec::Cyclic(_) => vec![1],
            GroupSpec::Dihedral(1) => vec![0, 1],
            _ => vec![2, 1],
        };
        local.into_iter().map(|l| l * self.strides[f]).collect()
    }

    pub fn group_mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        Ok(self.element(self.mul(self.index_of(a)?, self.index_of(b)?)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        for a in 0..self.order {
            if seen[a] {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.order).map(|g| self.mul(self.mul(g, a), self.inv(g))).collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls);
        }
        out
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.spec)
    }
}

/// Default generator names per factor: dihedral and quaternion factors take
/// (x,y), (c,d), (a,b), (u,v) in turn; cyclic factors take z, w, t, s.
pub fn default_generator_names(spec: &GroupSpec) -> Vec<Vec<String>> {
    const PAIRS: [(&str, &str); 4] = [("x", "y"), ("c", "d"), ("a", "b"), ("u", "v")];
    const SINGLES: [&str; 4] = ["z", "w", "t", "s"];
    let (mut pi, mut si) = (0, 0);
    spec.factors()
        .iter()
        .map(|f| match f {
            GroupSpec::Cyclic(_) => {
                let name = SINGLES.get(si).map_or_else(|| format!("z{si}"), |s| s.to_string());
                si += 1;
                vec![name]
            }
            _ => {
                let names = PAIRS
                    .get(pi)
                    .map_or_else(|| vec![format!("x{pi}"), format!("y{pi}")], |(a, b)| vec![a.to_string(), b.to_string()]);
                pi += 1;
                names
            }
        })
        .collect()
}

#[derive(Clone)]
pub struct AlgebraElement {
    pub group: Arc<Group>,
    pub field: Arc<SmallField>,
    pub coeffs: Vec<u8>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, o: &Self) -> bool {
        self.group.spec == o.group.spec && self.field.q == o.field.q && self.coeffs == o.coeffs
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement({:?})", self.coeffs)
    }
}

impl AlgebraElement {
    pub fn zero(group: &Arc<Group>, field: &Arc<SmallField>) -> Self {
        AlgebraElement { group: group.clone(), field: field.clone(), coeffs: vec![0; group.order()] }
    }

    pub fn one(group: &Arc<Group>, field: &Arc<SmallField>) -> Self {
        Self::basis(group, field, 0)
    }

    pub fn basis(group: &Arc<Group>, field: &Arc<SmallField>, g: usize) -> Self {
        let mut e = Self::zero(group, field);
        e.coeffs[g] = 1;
        e
    }

    pub fn from_coeffs(group: &Arc<Group>, field: &Arc<SmallField>, coeffs: Vec<u8>) -> Result<Self> {
        if coeffs.len() != group.order() || coeffs.iter().any(|&c| c as usize >= field.q) {
            return Err(Error::DimensionMismatch("coefficient vector does not fit the algebra".into()));
        }
        Ok(AlgebraElement { group: group.clone(), field: field.clone(), coeffs })
    }

    pub fn random<R: Rng>(group: &Arc<Group>, field: &Arc<SmallField>, rng: &mut R) -> Self {
        let coeffs = (0..group.order()).map(|_| rng.gen_range(0..field.q) as u8).collect();
        AlgebraElement { group: group.clone(), field: field.clone(), coeffs }
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.group.spec != o.group.spec || self.field.q != o.field.q {
            return Err(Error::Invalid("elements belong to different algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(&a, &b)| self.field.add_u8(a, b)).collect();
        Ok(AlgebraElement { coeffs, ..self.clone() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(self.field.neg_u8(1)))
    }

    pub fn scale(&self, c: u8) -> Self {
        let coeffs = self.coeffs.iter().map(|&a| self.field.mul_u8(a, c)).collect();
        AlgebraElement { coeffs, ..self.clone() }
    }

    /// Convolution product: (uv)_g = Σ_h u_h v_{h⁻¹g}.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let (g, f) = (&self.group, &self.field);
        let mut out = vec![0u8; g.order()];
        for (a, &ua) in self.coeffs.iter().enumerate() {
            if ua == 0 {
                continue;
            }
            let row = f.mul_row(ua);
            for (b, &vb) in o.coeffs.iter().enumerate() {
                if vb != 0 {
                    let c = g.mul(a, b);
                    out[c] = f.add_u8(out[c], row[vb as usize]);
                }
            }
        }
        Ok(AlgebraElement { coeffs: out, ..self.clone() })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.group, &self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

pub fn algebra_mul(u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
    u.mul(v)
}

/// The left ideal F_q[G]·u as a linear code of length |G|.
pub fn left_ideal_from_element(u: &AlgebraElement) -> LinearCode {
    let g = &u.group;
    let n = g.order();
    let support: Vec<(usize, u8)> = u.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(h, &c)| (h, c)).collect();
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|a| {
            let mut row = vec![0u8; n];
            for &(h, c) in &support {
                row[g.mul(a, h)] = c;
            }
            row
        })
        .collect();
    LinearCode::from_rows(&u.field, n, rows).expect("row length is |G|")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> Arc<Group> {
        Group::new(&GroupSpec::Dihedral(4)).unwrap()
    }

    #[test]
    fn relations() {
        let g = d4();
        let (x, y) = (2, 1);
        // y x = x^3 y
        assert_eq!(g.element(g.mul(y, x)).coords, vec![3, 1]);
        let q2 = Group::new(&GroupSpec::Quaternion(2)).unwrap();
        assert_eq!(q2.element(q2.mul(1, 1)).coords, vec![2, 0]);
        let p = Group::new(&GroupSpec::Product(vec![GroupSpec::Dihedral(4), GroupSpec::Cyclic(4)])).unwrap();
        let xz = p.index_of(&GroupElement { coords: vec![1, 0, 1] }).unwrap();
        let yz = p.index_of(&GroupElement { coords: vec![0, 1, 1] }).unwrap();
        assert_eq!(p.element(p.mul(xz, yz)).coords, vec![1, 1, 2]);
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let p = Group::new(&GroupSpec::Product(vec![GroupSpec::Dihedral(3), GroupSpec::Cyclic(2)])).unwrap();
        let els: Vec<_> = (0..p.order()).map(|a| p.element(a)).collect();
        assert!(els.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn trivial_ideals() {
        let g = d4();
        let f = SmallField::new(3).unwrap();
        assert_eq!(left_ideal_from_element(&AlgebraElement::one(&g, &f)).k(), 8);
        let all = AlgebraElement::from_coeffs(&g, &f, vec![1; 8]).unwrap();
        assert_eq!(left_ideal_from_element(&all).k(), 1);
        assert_eq!(left_ideal_from_element(&AlgebraElement::zero(&g, &f)).k(), 0);
    }
}
