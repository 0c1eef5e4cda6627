use groupcodes::galg::regular_decomposition;
use groupcodes::util::{gcd, lcm};
use groupcodes::wa::*;
use proptest::prelude::*;

fn semisimple(q: u64, order: u64) -> bool {
    let p = groupcodes::util::prime_power(q).unwrap().0;
    order % p != 0
}

const QS: [u64; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

#[test]
fn worked_decompositions_over_f3() {
    let c = |n| GroupSpec::Cyclic(n);
    let d = |n| GroupSpec::Dihedral(n);
    let cases = [
        (c(5), "F_3 ⊕ F_{3^4}"),
        (d(4), "4F_3 ⊕ M_2(F_3)"),
        (GroupSpec::Product(vec![d(4), c(5)]), "4F_3 ⊕ 4F_{3^4} ⊕ M_2(F_3) ⊕ M_2(F_{3^4})"),
        (GroupSpec::Product(vec![d(4), d(4)]), "16F_3 ⊕ 8M_2(F_3) ⊕ M_4(F_3)"),
        (GroupSpec::Product(vec![d(4), c(4)]), "8F_3 ⊕ 4F_{3^2} ⊕ 2M_2(F_3) ⊕ M_2(F_{3^2})"),
    ];
    for (spec, want) in cases {
        assert_eq!(decompose_group(3, &spec).unwrap().to_string(), want);
    }
    assert_eq!(decompose_dihedral(3, 16).unwrap().to_string(), "4F_3 ⊕ M_2(F_3) ⊕ M_2(F_{3^2}) ⊕ M_2(F_{3^4})");
    assert_eq!(decompose_dihedral(3, 20).unwrap().dimension(), 40);
}

#[test]
fn corollary_agrees_with_tensor_rule() {
    for q in QS {
        for n in 1..=200u64 {
            for m in 1..=200u64 {
                for (case, spec, order) in [
                    (CorollaryCase::DxC(n, m), GroupSpec::Product(vec![GroupSpec::Dihedral(n), GroupSpec::Cyclic(m)]), 2 * n * m),
                    (CorollaryCase::DxD(n, m), GroupSpec::Product(vec![GroupSpec::Dihedral(n), GroupSpec::Dihedral(m)]), 4 * n * m),
                    (CorollaryCase::DxQ(n, m), GroupSpec::Product(vec![GroupSpec::Dihedral(n), GroupSpec::Quaternion(m)]), 8 * n * m),
                ] {
                    if order > 400 || !semisimple(q, order) {
                        continue;
                    }
                    assert_eq!(corollary_decompose(q, case).unwrap(), decompose_group(q, &spec).unwrap(), "q={q} {case:?}");
                }
            }
        }
    }
}

#[test]
fn quaternion_matches_regular_representation() {
    for q in [3u64, 5, 7, 9, 11, 13] {
        for n in 1..=12u64 {
            if !semisimple(q, 4 * n) {
                continue;
            }
            let spec = GroupSpec::Quaternion(n);
            assert_eq!(decompose_quaternion(q, n).unwrap(), regular_decomposition(q, &spec).unwrap(), "q={q} n={n}");
        }
    }
}

#[test]
fn literal_quaternion_list_overcounts_for_odd_n() {
    // Q_1 ≅ C_4 over F_3 is 2F_3 ⊕ F_9, not 4F_3.
    assert_eq!(decompose_quaternion(3, 1).unwrap(), decompose_cyclic(3, 4).unwrap());
    assert_ne!(decompose_quaternion_literal(3, 1).unwrap(), decompose_cyclic(3, 4).unwrap());
    assert_eq!(decompose_quaternion_literal(5, 3).unwrap(), decompose_quaternion(5, 3).unwrap());
}

#[test]
fn dihedral_small_cases_match_regular_representation() {
    for q in [3u64, 5, 7, 9] {
        for n in 1..=15u64 {
            if semisimple(q, 2 * n) {
                let spec = GroupSpec::Dihedral(n);
                assert_eq!(decompose_dihedral(q, n).unwrap(), regular_decomposition(q, &spec).unwrap());
            }
        }
    }
}

#[test]
fn dihedral_quaternion_criterion() {
    assert!(dihedral_quaternion_iso(3, 2));
    assert!(!dihedral_quaternion_iso(3, 1));
    assert!(dihedral_quaternion_iso(5, 1));
    for q in [3u64, 5, 7, 9] {
        for t in 1..=10u64 {
            if !semisimple(q, 4 * t) {
                continue;
            }
            let same = decompose_dihedral(q, 2 * t).unwrap() == decompose_quaternion(q, t).unwrap();
            assert_eq!(same, dihedral_quaternion_iso(q, t), "q={q} t={t}");
        }
    }
}

#[test]
fn halving_lemma_matches_naive() {
    for m in (2..=200u64).step_by(2) {
        for n in 1..=200u64 {
            let (g, l, _) = gcd_lcm_halved(m, n).unwrap();
            assert_eq!((g, l), (gcd(m / 2, n), lcm(m / 2, n)));
            if n % 2 == 0 {
                assert_eq!(gcd_lcm_both_halved(m, n).unwrap(), (gcd(m / 2, n / 2), lcm(m / 2, n / 2)));
            }
        }
    }
}

#[test]
fn trivial_group_is_tensor_identity() {
    let d = decompose_dihedral(3, 4).unwrap();
    let one = decompose_cyclic(3, 1).unwrap();
    assert_eq!(tensor_decompositions(&d, &one).unwrap(), d);
}

fn atomic() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u64..=20).prop_map(GroupSpec::Cyclic),
        (1u64..=12).prop_map(GroupSpec::Dihedral),
        (1u64..=8).prop_map(GroupSpec::Quaternion),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dimension_audit(q in prop::sample::select(QS.to_vec()), fs in prop::collection::vec(atomic(), 1..4)) {
        let spec = if fs.len() == 1 { fs[0].clone() } else { GroupSpec::Product(fs) };
        prop_assume!(spec.order() <= 500 && semisimple(q, spec.order()));
        let d = decompose_group(q, &spec).unwrap();
        prop_assert_eq!(d.dimension(), spec.order());
    }

    #[test]
    fn tensor_commutes_and_associates(q in prop::sample::select(QS.to_vec()), a in atomic(), b in atomic(), c in atomic()) {
        let order = a.order() * b.order() * c.order();
        prop_assume!(semisimple(q, order));
        let (da, db, dc) = (decompose_group(q, &a).unwrap(), decompose_group(q, &b).unwrap(), decompose_group(q, &c).unwrap());
        prop_assert_eq!(tensor_decompositions(&da, &db).unwrap(), tensor_decompositions(&db, &da).unwrap());
        let left = tensor_decompositions(&tensor_decompositions(&da, &db).unwrap(), &dc).unwrap();
        let right = tensor_decompositions(&da, &tensor_decompositions(&db, &dc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn abelian_matches_cyclic_products(q in prop::sample::select(QS.to_vec()), orders in prop::collection::vec(1u64..=12, 1..4)) {
        let total: u64 = orders.iter().product();
        prop_assume!(semisimple(q, total));
        let spec = if orders.len() == 1 { GroupSpec::Cyclic(orders[0]) } else { GroupSpec::Product(orders.iter().map(|&n| GroupSpec::Cyclic(n)).collect()) };
        prop_assert_eq!(decompose_abelian(q, &orders).unwrap(), decompose_group(q, &spec).unwrap());
    }
}
