use groupcodes::codes::*;
use groupcodes::galg::*;
use groupcodes::gf::{Elt, Field, SmallField};
use groupcodes::linalg::{self, FieldOps, Matrix};
use groupcodes::wa::{decompose_group, GroupSpec};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_form<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix<Elt> {
    let (z, o) = (f.zero_elt(), f.one_elt());
    if n == 1 {
        return vec![vec![if rng.gen_bool(0.5) { o } else { z }]];
    }
    match rng.gen_range(0..5) {
        0 => linalg::zeros(f, 2, 2),
        1 => linalg::identity(f, 2),
        2 => vec![vec![o, z.clone()], vec![z.clone(), z]],
        3 => vec![vec![z.clone(), o], vec![z.clone(), z]],
        _ => {
            let lambda = f.from_index(rng.gen_range(1..f.order()));
            vec![vec![o, lambda], vec![z.clone(), z]]
        }
    }
}

#[test]
fn dual_tables_match_null_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [3u64, 5] {
        for n in 3..=12u64 {
            if (2 * n) % q == 0 {
                continue;
            }
            let iso = build_iso(q, &GroupSpec::Dihedral(n)).unwrap();
            for _ in 0..60 {
                let gens = iso.blocks.iter().map(|b| random_form(&b.field, b.n, &mut rng)).collect();
                let ideal = IdealSpec::new(&iso.decomposition, gens).unwrap();
                let code = code_from_ideal(&iso, &ideal).unwrap();
                assert_eq!(code.k(), code_dimension(&ideal));
                let dual = dihedral_dual_ideal_with(&iso, &ideal).unwrap();
                assert_eq!(code_from_ideal(&iso, &dual).unwrap(), code.dual(), "q={q} n={n}");
            }
        }
    }
}

#[test]
fn two_paths_to_the_same_code() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for spec in [GroupSpec::Product(vec![GroupSpec::Dihedral(4), GroupSpec::Cyclic(4)]), GroupSpec::Dihedral(10)] {
        let iso = build_iso(3, &spec).unwrap();
        for _ in 0..50 {
            let u = AlgebraElement::random(&iso.group, &iso.field, &mut rng);
            let ideal = IdealSpec::from_element(&iso, &u).unwrap();
            let code = code_from_ideal(&iso, &ideal).unwrap();
            assert_eq!(code, left_ideal_from_element(&u));
            assert_eq!(code.k(), code_dimension(&ideal));
        }
    }
}

#[test]
fn full_and_zero_ideals() {
    let iso = build_iso(5, &GroupSpec::Dihedral(6)).unwrap();
    let full = IdealSpec::full(&iso.decomposition).unwrap();
    assert_eq!(code_from_ideal(&iso, &full).unwrap().k(), 12);
    assert_eq!(code_dimension(&IdealSpec::zero(&iso.decomposition).unwrap()), 0);
    let dual = dihedral_dual_ideal(5, 6, &full).unwrap();
    assert_eq!(code_dimension(&dual), 0);
}

#[test]
fn ideal_json_round_trip() {
    let iso = build_iso(3, &GroupSpec::Dihedral(16)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let gens = iso.blocks.iter().map(|b| random_form(&b.field, b.n, &mut rng)).collect();
    let ideal = IdealSpec::new(&iso.decomposition, gens).unwrap();
    let back = IdealSpec::from_json(&iso.decomposition, &ideal.to_json()).unwrap();
    assert_eq!(back, ideal);
}

#[test]
fn malformed_ideals_are_rejected() {
    let dec = decompose_group(3, &GroupSpec::Dihedral(4)).unwrap();
    assert!(IdealSpec::new(&dec, vec![]).is_err());
    let v = serde_json::json!({"blocks": [{"gen": [[1]]}]});
    assert!(IdealSpec::from_json(&dec, &v).is_err());
}

#[test]
fn published_counts() {
    let c = |n| GroupSpec::Cyclic(n);
    let d = |n| GroupSpec::Dihedral(n);
    let cases: [(GroupSpec, u64); 4] = [
        (c(5), 4),
        (d(4), 96),
        // 2^4 · 2^4 · 6 · 84; the printed total 131072 does not equal this product.
        (GroupSpec::Product(vec![d(4), c(5)]), 129024),
        (GroupSpec::Product(vec![d(4), d(4)]), 23335966605312),
    ];
    for (spec, want) in cases {
        assert_eq!(count_group_codes(&decompose_group(3, &spec).unwrap()), BigUint::from(want));
    }
}

#[test]
fn rref_preserves_row_space_over_f9() {
    let f = SmallField::new(9).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..20 {
        let m: Matrix<u8> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(0..9)).collect()).collect();
        let r = rref(&f, &m);
        // Each original row lies in the RREF span and vice versa, by brute force over F_9^4 combinations.
        let span = |rows: &Matrix<u8>| -> std::collections::HashSet<Vec<u8>> {
            let mut set = std::collections::HashSet::new();
            let k = rows.len();
            for idx in 0..9usize.pow(k as u32) {
                let mut v = vec![0u8; 4];
                let mut t = idx;
                for row in rows {
                    let c = (t % 9) as u8;
                    t /= 9;
                    for (o, &x) in v.iter_mut().zip(row) {
                        *o = f.add(o, &f.mul(&c, &x));
                    }
                }
                set.insert(v);
            }
            set
        };
        assert_eq!(span(&m), span(&r));
    }
}

#[test]
fn dual_is_an_involution() {
    let f = SmallField::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(1..12);
        let k = rng.gen_range(0..=n);
        let rows = (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..5)).collect()).collect();
        let c = LinearCode::from_rows(&f, n, rows).unwrap();
        assert_eq!(c.k() + c.dual().k(), n);
        assert_eq!(c.dual().dual(), c);
    }
}
