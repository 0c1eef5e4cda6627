use super::{AlgebraElement, Group};
use crate::error::{Error, Result};
use crate::gf::{embedding, find_root_lexmin, make_field, Elt, FieldDescriptor, SmallField};
use crate::linalg::{self, FieldOps, Matrix};
use crate::polyfact::{factor_cyclotomic, FactorKind, Sign};
use crate::wa::{decompose_group, Block, Decomposition, GroupSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// One summand M_n(F_{q^r}) of the decomposition and its coordinate slice.
#[derive(Clone, Debug)]
pub struct IsoBlock {
    pub n: usize,
    pub r: usize,
    pub field: FieldDescriptor,
    pub offset: usize,
    pub kind: BlockKind,
}

/// Where a block comes from, for single-factor groups.
#[derive(Clone, Debug, PartialEq)]
pub enum BlockKind {
    /// One-dimensional: a character of a cyclic or dihedral group.
    Scalar,
    /// Dihedral block of a self-reciprocal factor; `a` = α + α⁻¹ in F_{q^{deg/2}}.
    SelfReciprocal { a: Elt },
    /// Dihedral block of a reciprocal pair; `alpha` is the chosen root of the first member.
    Pair { alpha: Elt },
    /// Block of a direct product.
    Composite,
}

impl IsoBlock {
    pub fn len(&self) -> usize {
        self.n * self.n * self.r
    }
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The explicit isomorphism ψ: F_q[G] → ⊕ M_{n_i}(F_{q^{r_i}}) in flattened coordinates.
/// Entries of each block are stored row-major, each taking r consecutive F_q coordinates.
pub struct AlgebraIso {
    pub group: Arc<Group>,
    pub field: Arc<SmallField>,
    pub decomposition: Decomposition,
    pub blocks: Vec<IsoBlock>,
    /// Images of the generators (in factor order) per block.
    pub generator_images: Vec<Vec<Matrix<Elt>>>,
    matrix: Matrix<u8>,
    inverse: Matrix<u8>,
}

struct LocalBlock {
    n: usize,
    field: FieldDescriptor,
    gens: Vec<Matrix<Elt>>,
    kind: BlockKind,
}


fn atomic_blocks(p: u32, spec: &GroupSpec) -> Result<Vec<LocalBlock>> {
    let fp = make_field(p, 1)?;
    let int = |x: i64| fp.from_int(x);
    match *spec {
        GroupSpec::Cyclic(n) => {
            let fl = factor_cyclotomic(&fp, n as usize, Sign::Minus)?;
            fl.factors
                .iter()
                .map(|f| {
                    let field = make_field(p, f.poly.degree().unwrap())?;
                    let alpha = find_root_lexmin(&f.poly.prime_coeffs(), &field).expect("splitting field");
                    Ok(LocalBlock { n: 1, gens: vec![vec![vec![alpha]]], field, kind: BlockKind::Scalar })
                })
                .collect()
        }
        GroupSpec::Dihedral(n) => {
            let fl = factor_cyclotomic(&fp, n as usize, Sign::Minus)?;
            let mut out = Vec::new();
            for f in fl.collapsed() {
                let deg = f.poly.degree().unwrap();
                if deg == 1 && f.kind == FactorKind::SelfReciprocal {
                    let xv = fp.neg(&f.poly.coeffs[0]);
                    for yv in [1, -1] {
                        out.push(LocalBlock { n: 1, field: fp.clone(), gens: vec![vec![vec![xv.clone()]], vec![vec![int(yv)]]], kind: BlockKind::Scalar });
                    }
                } else if f.kind == FactorKind::SelfReciprocal {
                    let big = make_field(p, deg)?;
                    let small = make_field(p, deg / 2)?;
                    let alpha = find_root_lexmin(&f.poly.prime_coeffs(), &big).expect("splitting field");
                    let sum = big.add(&alpha, &big.inv(&alpha));
                    let a = embedding(&small, &big)?.pullback(&sum).ok_or_else(|| {
                        Error::Verification("α + α⁻¹ does not lie in the half-degree subfield".into())
                    })?;
                    let (z, o) = (small.zero_elt(), small.one_elt());
                    let m1 = small.neg(&o);
                    let x = vec![vec![z.clone(), o.clone()], vec![m1.clone(), a.clone()]];
                    let y = vec![vec![o, z], vec![a.clone(), m1]];
                    out.push(LocalBlock { n: 2, field: small, gens: vec![x, y], kind: BlockKind::SelfReciprocal { a } });
                } else {
                    let field = make_field(p, deg)?;
                    let alpha = find_root_lexmin(&f.poly.prime_coeffs(), &field).expect("splitting field");
                    let (z, o) = (field.zero_elt(), field.one_elt());
                    let x = vec![vec![alpha.clone(), z.clone()], vec![z.clone(), field.inv(&alpha)]];
                    let y = vec![vec![z.clone(), o.clone()], vec![o, z]];
                    out.push(LocalBlock { n: 2, field, gens: vec![x, y], kind: BlockKind::Pair { alpha } });
                }
            }
            Ok(out)
        }
        GroupSpec::Quaternion(_) => {
            Err(Error::Unsupported("explicit isomorphisms are not available for quaternion factors".into()))
        }
        GroupSpec::Product(_) => unreachable!("atomic factor expected"),
    }
}

fn map_matrix(m: &Matrix<Elt>, f: impl Fn(&Elt) -> Elt) -> Matrix<Elt> {
    m.iter().map(|row| row.iter().map(&f).collect()).collect()
}

/// Blocks of F[G × H] from blocks of F[G] and F[H]: each pair of blocks over F_{p^a}, F_{p^b}
/// yields gcd(a, b) blocks over F_{p^lcm}, the k-th twisting the second factor by σ^k.
fn combine(p: u32, left: Vec<LocalBlock>, right: &[LocalBlock]) -> Result<Vec<LocalBlock>> {
    let mut out = Vec::new();
    for a in &left {
        for b in right {
            let (ka, kb) = (a.field.k(), b.field.k());
            let d = crate::util::gcd(ka as u64, kb as u64) as usize;
            let ell = ka / d * kb;
            let big = make_field(p, ell)?;
            let ea = embedding(&a.field, &big)?;
            let eb = embedding(&b.field, &big)?;
            let ia = linalg::identity(&*big, a.n);
            let ib = linalg::identity(&*big, b.n);
            let a_gens: Vec<Matrix<Elt>> =
                a.gens.iter().map(|g| linalg::kron(&*big, &map_matrix(g, |e| ea.apply(e)), &ib)).collect();
            for k in 0..d {
                let mut gens = a_gens.clone();
                for h in &b.gens {
                    let twisted = map_matrix(h, |e| big.frobenius(&eb.apply(e), k));
                    gens.push(linalg::kron(&*big, &ia, &twisted));
                }
                out.push(LocalBlock { n: a.n * b.n, field: big.clone(), gens, kind: BlockKind::Composite });
            }
        }
    }
    Ok(out)
}

fn mat_pow(f: &crate::gf::Field, m: &Matrix<Elt>, e: usize) -> Matrix<Elt> {
    let mut acc = linalg::identity(f, m.len());
    for _ in 0..e {
        acc = linalg::mat_mul(f, &acc, m);
    }
    acc
}

impl AlgebraIso {
    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn flatten(&self, mats: &[Matrix<Elt>]) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.dim());
        for m in mats {
            for row in m {
                for e in row {
                    out.extend(e.iter().map(|&c| c as u8));
                }
            }
        }
        out
    }

    pub fn unflatten(&self, v: &[u8]) -> Result<Vec<Matrix<Elt>>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates, got {}", self.dim(), v.len())));
        }
        Ok(self
            .blocks
            .iter()
            .map(|b| {
                (0..b.n)
                    .map(|i| {
                        (0..b.n)
                            .map(|j| {
                                let s = b.offset + (i * b.n + j) * b.r;
                                v[s..s + b.r].iter().map(|&c| c as u32).collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect())
    }

    /// Blockwise product of two flattened vectors.
    pub fn block_mul(&self, a: &[u8], b: &[u8]) -> Result<Vec<u8>> {
        let (ma, mb) = (self.unflatten(a)?, self.unflatten(b)?);
        let prod: Vec<Matrix<Elt>> =
            self.blocks.iter().zip(ma.iter().zip(&mb)).map(|(bl, (x, y))| linalg::mat_mul(&*bl.field, x, y)).collect();
        Ok(self.flatten(&prod))
    }

    pub fn identity_vector(&self) -> Vec<u8> {
        let ids: Vec<Matrix<Elt>> = self.blocks.iter().map(|b| linalg::identity(&*b.field, b.n)).collect();
        self.flatten(&ids)
    }

    /// Column g of the matrix: the flattened image of the group element g.
    pub fn image_of_group_element(&self, g: usize) -> Vec<u8> {
        self.matrix.iter().map(|row| row[g]).collect()
    }

    pub fn matrix(&self) -> &Matrix<u8> {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix<u8> {
        &self.inverse
    }

    pub fn apply(&self, u: &AlgebraElement) -> Result<Vec<u8>> {
        if u.group.spec() != self.group.spec() || u.field.q != self.field.q {
            return Err(Error::DimensionMismatch("element is not in the domain of ψ".into()));
        }
        Ok(linalg::mat_vec(&*self.field, &self.matrix, &u.coeffs))
    }

    pub fn unapply(&self, v: &[u8]) -> Result<AlgebraElement> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!("expected {} coordinates, got {}", self.dim(), v.len())));
        }
        let coeffs = linalg::mat_vec(&*self.field, &self.inverse, v);
        AlgebraElement::from_coeffs(&self.group, &self.field, coeffs)
    }
}

pub fn apply_iso(iso: &AlgebraIso, u: &AlgebraElement) -> Result<Vec<u8>> {
    iso.apply(u)
}

pub fn inverse_iso(iso: &AlgebraIso, v: &[u8]) -> Result<AlgebraElement> {
    iso.unapply(v)
}

/// Build and verify ψ for a product of cyclic and dihedral groups over a prime field.
pub fn build_iso(q: u64, spec: &GroupSpec) -> Result<AlgebraIso> {
    let field = SmallField::new(q)?;
    if !field.is_prime() {
        return Err(Error::Unsupported("explicit isomorphisms are built over prime fields only".into()));
    }
    let p = field.p;
    let decomposition = decompose_group(q, spec)?;
    let group = Group::new(spec)?;
    let factors = group.factors().to_vec();
    let mut locals = atomic_blocks(p, &factors[0])?;
    for f in &factors[1..] {
        locals = combine(p, locals, &atomic_blocks(p, f)?)?;
    }
    locals.sort_by_key(|b| (b.n, b.field.k()));

    let shape = Decomposition::new(q, group.order() as u64, locals.iter().map(|b| Block::new(1, b.n as u64, b.field.k() as u64)));
    if shape != decomposition {
        return Err(Error::Verification(format!("block shapes {shape} differ from {decomposition}")));
    }

    // Generator index ranges per factor.
    let mut gen_start = Vec::with_capacity(factors.len());
    let mut acc = 0;
    for f in &factors {
        gen_start.push(acc);
        acc += if matches!(f, GroupSpec::Cyclic(_)) { 1 } else { 2 };
    }

    // Images of every local element of every factor, per block.
    let local_images: Vec<Vec<Vec<Matrix<Elt>>>> = locals
        .iter()
        .map(|b| {
            let fld = &*b.field;
            factors
                .iter()
                .enumerate()
                .map(|(fi, f)| {
                    let s = gen_start[fi];
                    match *f {
                        GroupSpec::Cyclic(n) => {
                            let mut v = Vec::with_capacity(n as usize);
                            let mut cur = linalg::identity(fld, b.n);
                            for _ in 0..n {
                                v.push(cur.clone());
                                cur = linalg::mat_mul(fld, &cur, &b.gens[s]);
                            }
                            v
                        }
                        GroupSpec::Dihedral(n) => {
                            let mut v = Vec::with_capacity(2 * n as usize);
                            let mut cur = linalg::identity(fld, b.n);
                            for _ in 0..n {
                                v.push(cur.clone());
                                v.push(linalg::mat_mul(fld, &cur, &b.gens[s + 1]));
                                cur = linalg::mat_mul(fld, &cur, &b.gens[s]);
                            }
                            v
                        }
                        _ => unreachable!(),
                    }
                })
                .collect()
        })
        .collect();

    let element_image = |bi: usize, g: usize| -> Matrix<Elt> {
        let b = &locals[bi];
        let mut m = linalg::identity(&*b.field, b.n);
        for (fi, li) in group.split(g).into_iter().enumerate() {
            m = linalg::mat_mul(&*b.field, &m, &local_images[bi][fi][li]);
        }
        m
    };

    let mut blocks = Vec::with_capacity(locals.len());
    let mut offset = 0;
    for b in &locals {
        let ib = IsoBlock { n: b.n, r: b.field.k(), field: b.field.clone(), offset, kind: b.kind.clone() };
        offset += ib.len();
        blocks.push(ib);
    }
    let n = group.order();
    let mut iso = AlgebraIso {
        group: group.clone(),
        field: field.clone(),
        decomposition,
        blocks,
        generator_images: locals.iter().map(|b| b.gens.clone()).collect(),
        matrix: Vec::new(),
        inverse: Vec::new(),
    };
    let images: Vec<Vec<Matrix<Elt>>> = (0..locals.len()).map(|bi| (0..n).map(|g| element_image(bi, g)).collect()).collect();
    let columns: Vec<Vec<u8>> = (0..n)
        .map(|g| {
            let mats: Vec<Matrix<Elt>> = images.iter().map(|im| im[g].clone()).collect();
            iso.flatten(&mats)
        })
        .collect();
    iso.matrix = linalg::transpose(&columns, n);
    iso.inverse = linalg::inverse(&*field, &iso.matrix).ok_or_else(|| Error::Verification("ψ is not invertible".into()))?;

    // Relations.
    for b in &locals {
        let fld = &*b.field;
        let id = linalg::identity(fld, b.n);
        for (fi, f) in factors.iter().enumerate() {
            let s = gen_start[fi];
            let ok = match *f {
                GroupSpec::Cyclic(m) => mat_pow(fld, &b.gens[s], m as usize) == id,
                GroupSpec::Dihedral(m) => {
                    let (x, y) = (&b.gens[s], &b.gens[s + 1]);
                    let yxyx = linalg::mat_mul(fld, &linalg::mat_mul(fld, &linalg::mat_mul(fld, y, x), y), x);
                    mat_pow(fld, x, m as usize) == id && linalg::mat_mul(fld, y, y) == id && yxyx == id
                }
                _ => unreachable!(),
            };
            if !ok {
                return Err(Error::Verification(format!("relations of {f} fail in a block")));
            }
        }
    }
    if images.iter().zip(&locals).any(|(im, b)| im[0] != linalg::identity(&*b.field, b.n)) {
        return Err(Error::Verification("ψ(1) is not the identity".into()));
    }

    // Multiplicativity on basis pairs.
    let check_pair = |g: usize, h: usize| -> bool {
        let gh = group.mul(g, h);
        images.iter().zip(&locals).all(|(im, b)| linalg::mat_mul(&*b.field, &im[g], &im[h]) == im[gh])
    };
    let ok = if n <= 32 {
        (0..n).all(|g| (0..n).all(|h| check_pair(g, h)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..100).all(|_| {
            let (g, h) = (rng.gen_range(0..n), rng.gen_range(0..n));
            check_pair(g, h)
        })
    };
    if !ok {
        return Err(Error::Verification("ψ is not multiplicative".into()));
    }
    Ok(iso)
}
