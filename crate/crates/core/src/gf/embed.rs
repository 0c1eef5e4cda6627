use super::{Elt, FieldDescriptor, FieldElement};
use crate::error::{Error, Result};
use crate::linalg::{self, FieldOps};
use crate::poly;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Lexicographically smallest root in `target` of a monic irreducible `g` over F_p
/// (low-degree-first), or `None` if `deg g` does not divide the degree of `target`.
///
/// Roots are separated deterministically with trace polynomials
/// T_β(x) = Σ_j σ^j(β) x^{p^j}, β running over the power basis of the target.
pub fn find_root_lexmin(g: &[u32], target: &super::Field) -> Option<Elt> {
    let k = g.len() - 1;
    let big_k = target.k();
    if k == 0 || big_k % k != 0 {
        return None;
    }
    let fp = target.prime_field();
    let lift = |c: u32| target.from_int(c as i64);
    let one_root = if k == 1 {
        target.from_int(-(g[0] as i64))
    } else {
        // x^{p^j} mod g over F_p, periodic with period k.
        let mut xs: Vec<Vec<u32>> = Vec::with_capacity(k);
        let mut cur = vec![0, 1];
        for _ in 0..k {
            xs.push(cur.clone());
            cur = poly::powmod(&fp, &cur, fp.p as u128, g);
        }
        let mut h: Vec<Elt> = g.iter().map(|&c| lift(c)).collect();
        let mut traces: HashMap<usize, Vec<Elt>> = HashMap::new();
        'outer: while h.len() > 2 {
            for b in 0..big_k {
                let t = traces.entry(b).or_insert_with(|| {
                    let mut beta = target.zero_elt();
                    beta[b] = 1;
                    let mut t = vec![target.zero_elt(); k];
                    for j in 0..big_k {
                        for (ti, &xc) in t.iter_mut().zip(&xs[j % k]) {
                            if xc != 0 {
                                *ti = target.add(ti, &target.mul(&beta, &lift(xc)));
                            }
                        }
                        beta = target.frobenius(&beta, 1);
                    }
                    let mut t = t;
                    poly::trim(target, &mut t);
                    t
                });
                for c in 0..fp.p {
                    let shifted = poly::sub(target, t, &[lift(c)]);
                    let d = poly::gcd(target, &h, &shifted);
                    if d.len() > 1 && d.len() < h.len() {
                        h = d;
                        continue 'outer;
                    }
                }
            }
            unreachable!("trace splitting failed to separate roots");
        }
        target.neg(&h[0])
    };
    let mut best = one_root.clone();
    let mut r = one_root;
    for _ in 1..k {
        r = target.frobenius(&r, 1);
        if r < best {
            best = r.clone();
        }
    }
    Some(best)
}

/// The canonical embedding F_{p^k} → F_{p^K}, sending the generator to the
/// lexicographically smallest root of its defining polynomial.
pub struct Embedding {
    pub from: FieldDescriptor,
    pub to: FieldDescriptor,
    pub image_of_generator: Elt,
    /// Images of the power basis 1, y, ..., y^{k-1}.
    basis_images: Vec<Elt>,
    echelon: Vec<Elt>,
    pivots: Vec<usize>,
    transform: Vec<Vec<u32>>,
}

impl Embedding {
    fn build(from: &FieldDescriptor, to: &FieldDescriptor) -> Result<Embedding> {
        let (k, big_k) = (from.k(), to.k());
        if from.p() != to.p() || big_k % k != 0 {
            return Err(Error::NoEmbedding { p: from.p(), from: k, to: big_k });
        }
        let image = if k == 1 {
            to.zero_elt()
        } else {
            find_root_lexmin(from.poly(), to).expect("degree divides")
        };
        let mut basis_images = Vec::with_capacity(k);
        let mut cur = to.one_elt();
        for _ in 0..k {
            basis_images.push(cur.clone());
            cur = to.mul(&cur, &image);
        }
        let fp = to.prime_field();
        let mut aug: Vec<Vec<u32>> = basis_images
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..k).map(|j| (i == j) as u32));
                r
            })
            .collect();
        let pivots = linalg::rref(&fp, &mut aug);
        assert_eq!(pivots.len(), k, "embedding image must be linearly independent");
        let echelon = aug.iter().map(|r| r[..big_k].to_vec()).collect();
        let transform = aug.iter().map(|r| r[big_k..].to_vec()).collect();
        Ok(Embedding {
            from: from.clone(),
            to: to.clone(),
            image_of_generator: image,
            basis_images,
            echelon,
            pivots,
            transform,
        })
    }

    pub fn apply(&self, a: &[u32]) -> Elt {
        let p = self.to.p() as u64;
        let mut out = vec![0u64; self.to.k()];
        for (c, img) in a.iter().zip(&self.basis_images) {
            if *c == 0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(img) {
                *o = (*o + *c as u64 * *v as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Preimage of `b`, or `None` if `b` is outside the image.
    pub fn pullback(&self, b: &[u32]) -> Option<Elt> {
        let fp = self.to.prime_field();
        let coeffs: Vec<u32> = self.pivots.iter().map(|&c| b[c]).collect();
        let mut residual = b.to_vec();
        for (c, row) in coeffs.iter().zip(&self.echelon) {
            for (r, v) in residual.iter_mut().zip(row) {
                *r = fp.sub(r, &fp.mul(c, v));
            }
        }
        if residual.iter().any(|&r| r != 0) {
            return None;
        }
        let mut out = vec![0u32; self.from.k()];
        for (c, t) in coeffs.iter().zip(&self.transform) {
            for (o, v) in out.iter_mut().zip(t) {
                *o = fp.add(o, &fp.mul(c, v));
            }
        }
        Some(out)
    }
}

pub fn embedding(from: &FieldDescriptor, to: &FieldDescriptor) -> Result<Arc<Embedding>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize, usize), Arc<Embedding>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (from.p(), from.k(), to.k());
    if let Some(e) = cache.lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let e = Arc::new(Embedding::build(from, to)?);
    Ok(cache.lock().unwrap().entry(key).or_insert(e).clone())
}

impl FieldElement {
    pub fn embed(&self, target: &FieldDescriptor) -> Result<FieldElement> {
        let e = embedding(&self.field, target)?;
        Ok(FieldElement { field: target.clone(), coeffs: e.apply(&self.coeffs) })
    }
}
