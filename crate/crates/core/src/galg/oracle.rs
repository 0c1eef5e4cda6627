//! Independent checks that use only the group multiplication table:
//! the Wedderburn–Artin shape read off the regular representation, and
//! brute-force enumeration of left ideals of a matrix ring.

use super::{left_ideal_from_element, AlgebraElement, Group};
use crate::error::{Error, Result};
use crate::gf::SmallField;
use crate::linalg::{self, Matrix};
use crate::wa::{Block, Decomposition, GroupSpec};

/// Decomposition of F_q[G] computed from central idempotents.
///
/// The centre is spanned by class sums; the fixed space of z ↦ z^q on it is
/// the subalgebra with one F_q per simple component, whose elements split
/// the identity into primitive central idempotents e. Each component then has
/// r = dim Z·e and n² r = dim F_q[G]·e.
pub fn regular_decomposition(q: u64, spec: &GroupSpec) -> Result<Decomposition> {
    let field = SmallField::new(q)?;
    let group = Group::new(spec)?;
    let order = group.order();
    if order % field.p as usize == 0 {
        return Err(Error::NotSemisimple { p: field.p, n: order as u64 });
    }
    let f = &*field;
    let classes = group.conjugacy_classes();
    let class_sums: Vec<AlgebraElement> = classes
        .iter()
        .map(|c| {
            let mut e = AlgebraElement::zero(&group, &field);
            for &g in c {
                e.coeffs[g] = 1;
            }
            e
        })
        .collect();
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let coords = |z: &AlgebraElement| -> Vec<u8> { reps.iter().map(|&g| z.coeffs[g]).collect() };
    let c = classes.len();

    // Rows of (Frob − I)ᵀ so that its right kernel is the fixed space.
    let images: Vec<Vec<u8>> = class_sums.iter().map(|b| coords(&b.pow(q))).collect();
    let mut m: Matrix<u8> = vec![vec![0; c]; c];
    for j in 0..c {
        for i in 0..c {
            let id = (i == j) as u8;
            m[i][j] = f.add_u8(images[j][i], f.neg_u8(id));
        }
    }
    let kernel = linalg::nullspace(f, &m, c);
    let s = kernel.len();
    let from_coords = |v: &[u8]| -> AlgebraElement {
        let mut z = AlgebraElement::zero(&group, &field);
        for (cls, &a) in classes.iter().zip(v) {
            for &g in cls {
                z.coeffs[g] = a;
            }
        }
        z
    };

    let one = AlgebraElement::one(&group, &field);
    let mut idempotents = vec![one.clone()];
    for v in &kernel {
        if idempotents.len() == s {
            break;
        }
        let b = from_coords(v);
        let mut next = Vec::new();
        for e in &idempotents {
            for cval in 0..field.q as u8 {
                let shifted = b.sub(&one.scale(cval))?;
                let indicator = one.sub(&shifted.pow(q - 1))?;
                let part = e.mul(&indicator)?;
                if !part.is_zero() {
                    next.push(part);
                }
            }
        }
        idempotents = next;
    }
    if idempotents.len() != s {
        return Err(Error::Verification("central idempotents did not separate".into()));
    }

    let mut blocks = Vec::with_capacity(s);
    for e in &idempotents {
        let rows: Matrix<u8> = class_sums.iter().map(|b| b.mul(e).unwrap().coeffs).collect();
        let r = linalg::rank(f, &rows);
        let total = left_ideal_from_element(e).k();
        let n2 = total / r;
        let n = (n2 as f64).sqrt().round() as usize;
        if n * n * r != total {
            return Err(Error::Verification(format!("component of dimension {total} is not n²·{r}")));
        }
        blocks.push(Block::new(1, n as u64, r as u64));
    }
    Ok(Decomposition::new(q, order as u64, blocks))
}

/// Every subspace of F_q^dim, each as an RREF basis.
pub fn all_subspaces(field: &SmallField, dim: usize) -> Vec<Matrix<u8>> {
    let q = field.q as u8;
    let mut out = Vec::new();
    for mask in 0u32..(1 << dim) {
        let pivots: Vec<usize> = (0..dim).filter(|&i| mask >> i & 1 == 1).collect();
        // Free positions: right of the pivot, not a pivot column.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &pc)| ((pc + 1)..dim).filter(|c| !pivots.contains(c)).map(move |c| (row, c)))
            .collect();
        let total = (q as u64).pow(free.len() as u32);
        for mut idx in 0..total {
            let mut m: Matrix<u8> = pivots
                .iter()
                .map(|&pc| {
                    let mut r = vec![0u8; dim];
                    r[pc] = 1;
                    r
                })
                .collect();
            for &(row, col) in &free {
                m[row][col] = (idx % q as u64) as u8;
                idx /= q as u64;
            }
            out.push(m);
        }
    }
    out
}

/// Number of left ideals of M_n(F_q), found by testing every subspace for
/// closure under left multiplication by the matrix units.
pub fn brute_force_left_ideals(q: u64, n: usize) -> Result<u64> {
    let field = SmallField::new(q)?;
    let f = &*field;
    let dim = n * n;
    let mut count = 0;
    for basis in all_subspaces(f, dim) {
        let mut echelon = basis.clone();
        let pivots = linalg::rref(f, &mut echelon);
        let closed = basis.iter().all(|v| {
            (0..n).all(|u| {
                (0..n).all(|w| {
                    // e_{uw}·V moves row w of V to row u.
                    let mut out = vec![0u8; dim];
                    out[u * n..(u + 1) * n].copy_from_slice(&v[w * n..(w + 1) * n]);
                    linalg::in_row_space(f, &echelon, &pivots, &out)
                })
            })
        });
        if closed {
            count += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wa::decompose_group;

    #[test]
    fn oracle_matches_formulas() {
        for (q, spec) in [
            (3, GroupSpec::Cyclic(5)),
            (3, GroupSpec::Dihedral(4)),
            (5, GroupSpec::Dihedral(6)),
            (3, GroupSpec::Quaternion(2)),
            (3, GroupSpec::Quaternion(1)),
            (5, GroupSpec::Quaternion(3)),
            (7, GroupSpec::Quaternion(3)),
            (3, GroupSpec::Product(vec![GroupSpec::Dihedral(2), GroupSpec::Cyclic(4)])),
        ] {
            assert_eq!(regular_decomposition(q, &spec).unwrap(), decompose_group(q, &spec).unwrap(), "{q} {spec}");
        }
    }

    #[test]
    fn left_ideal_counts() {
        assert_eq!(brute_force_left_ideals(2, 2).unwrap(), 5);
        assert_eq!(brute_force_left_ideals(3, 2).unwrap(), 6);
    }
}
