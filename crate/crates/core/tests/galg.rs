use groupcodes::galg::*;
use groupcodes::gf::SmallField;
use groupcodes::linalg::{self, FieldOps};
use groupcodes::wa::GroupSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(n: u64) -> GroupSpec {
    GroupSpec::Cyclic(n)
}
fn d(n: u64) -> GroupSpec {
    GroupSpec::Dihedral(n)
}
fn prod(v: Vec<GroupSpec>) -> GroupSpec {
    GroupSpec::Product(v)
}

#[test]
fn square_of_x_plus_y() {
    let g = Group::new(&d(4)).unwrap();
    let f = SmallField::new(3).unwrap();
    let x = AlgebraElement::basis(&g, &f, 2);
    let y = AlgebraElement::basis(&g, &f, 1);
    let s = x.add(&y).unwrap();
    let sq = algebra_mul(&s, &s).unwrap();
    // x² + xy + x³y + 1
    let mut want = vec![0u8; 8];
    for idx in [4, 3, 7, 0] {
        want[idx] = 1;
    }
    assert_eq!(sq.coeffs, want);
}

#[test]
fn associativity_and_unit() {
    let spec = prod(vec![d(3), c(4)]);
    let g = Group::new(&spec).unwrap();
    let f = SmallField::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let one = AlgebraElement::one(&g, &f);
    for _ in 0..100 {
        let (u, v, w) = (
            AlgebraElement::random(&g, &f, &mut rng),
            AlgebraElement::random(&g, &f, &mut rng),
            AlgebraElement::random(&g, &f, &mut rng),
        );
        assert_eq!(u.mul(&v).unwrap().mul(&w).unwrap(), u.mul(&v.mul(&w).unwrap()).unwrap());
        assert_eq!(u.mul(&one).unwrap(), u);
    }
}

#[test]
fn iso_round_trip_and_multiplicativity() {
    let spec = prod(vec![d(4), c(4)]);
    let iso = build_iso(3, &spec).unwrap();
    let g = iso.group.clone();
    let f = iso.field.clone();
    assert_eq!(iso.apply(&AlgebraElement::one(&g, &f)).unwrap(), iso.identity_vector());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let u = AlgebraElement::random(&g, &f, &mut rng);
        assert_eq!(iso.unapply(&iso.apply(&u).unwrap()).unwrap(), u);
    }
    for _ in 0..100 {
        let u = AlgebraElement::random(&g, &f, &mut rng);
        let v = AlgebraElement::random(&g, &f, &mut rng);
        let lhs = iso.apply(&u.mul(&v).unwrap()).unwrap();
        let rhs = iso.block_mul(&iso.apply(&u).unwrap(), &iso.apply(&v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn cyclic_images_are_roots() {
    let iso = build_iso(3, &c(4)).unwrap();
    let mut vals: Vec<(usize, Vec<u32>)> = Vec::new();
    for (b, imgs) in iso.blocks.iter().zip(&iso.generator_images) {
        vals.push((b.r, imgs[0][0][0].clone()));
    }
    // Roots of x − 1, x + 1 and x² + 1.
    assert_eq!(vals[0], (1, vec![1]));
    assert_eq!(vals[1], (1, vec![2]));
    let f9 = &iso.blocks[2].field;
    let z = &vals[2].1;
    assert_eq!(f9.add(&f9.mul(z, z), &f9.one_elt()), f9.zero_elt());
}

#[test]
fn dihedral_x_block_has_order_four() {
    let iso = build_iso(3, &d(4)).unwrap();
    let (b, imgs) = iso.blocks.iter().zip(&iso.generator_images).find(|(b, _)| b.n == 2).unwrap();
    let f = &*b.field;
    let x = &imgs[0];
    // Characteristic polynomial λ² − tr λ + det must be λ² + 1.
    let tr = f.add(&x[0][0], &x[1][1]);
    let det = f.sub(&f.mul(&x[0][0], &x[1][1]), &f.mul(&x[0][1], &x[1][0]));
    assert!(f.is_zero(&tr));
    assert_eq!(det, f.one());
    let x2 = linalg::mat_mul(f, x, x);
    assert_ne!(x2, linalg::identity(f, 2));
    assert_eq!(linalg::mat_mul(f, &x2, &x2), linalg::identity(f, 2));
}

#[test]
fn quaternion_iso_is_unsupported() {
    assert!(build_iso(3, &GroupSpec::Quaternion(2)).is_err());
    assert!(build_iso(9, &c(4)).is_err());
}

#[test]
fn left_ideal_dimension_matches_block_ranks() {
    let spec = prod(vec![d(5), c(2)]);
    let iso = build_iso(3, &spec).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let u = AlgebraElement::random(&iso.group, &iso.field, &mut rng);
        let mats = iso.unflatten(&iso.apply(&u).unwrap()).unwrap();
        let predicted: usize = iso.blocks.iter().zip(&mats).map(|(b, m)| b.n * b.r * linalg::rank(&*b.field, m)).sum();
        assert_eq!(left_ideal_from_element(&u).k(), predicted);
    }
}

#[test]
fn coordinate_order_independence() {
    let spec = prod(vec![d(3), c(2)]);
    let g = Group::new(&spec).unwrap();
    let f = SmallField::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let u = AlgebraElement::random(&g, &f, &mut rng);
    let code = left_ideal_from_element(&u);
    let perm: Vec<usize> = (0..g.order()).rev().collect();
    assert_eq!(code.permute_coordinates(&perm).k(), code.k());
}
