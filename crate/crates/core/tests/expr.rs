use groupcodes::expr::*;
use groupcodes::galg::{AlgebraElement, Group};
use groupcodes::gf::SmallField;
use groupcodes::repro::{DNCR_TABLE, DNDM_TABLE};
use groupcodes::wa::GroupSpec;
use groupcodes::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra(g: &str, q: u64) -> (std::sync::Arc<Group>, std::sync::Arc<SmallField>) {
    (Group::new(&parse_group(g).unwrap()).unwrap(), SmallField::new(q).unwrap())
}

#[test]
fn printed_elements_parse() {
    for row in DNCR_TABLE.iter().chain(&DNDM_TABLE) {
        let (g, f) = algebra(row.group, 3);
        let u = parse_element(row.element, &g, &f, None).unwrap();
        assert!(!u.is_zero(), "{}", row.group);
        let back = parse_element(&format_element(&u, None).unwrap(), &g, &f, None).unwrap();
        assert_eq!(back, u);
    }
}

#[test]
fn monomials_multiply_left_to_right() {
    let (g, f) = algebra("D4", 3);
    let yx = parse_element("yx", &g, &f, None).unwrap();
    let x3y = parse_element("x^3y", &g, &f, None).unwrap();
    assert_eq!(yx, x3y);
    let y2 = parse_element("y^2", &g, &f, None).unwrap();
    assert_eq!(y2, AlgebraElement::one(&g, &f));
    let x4 = parse_element("x^4 - 1", &g, &f, None).unwrap();
    assert!(x4.is_zero());
}

#[test]
fn coefficients_reduce_mod_p() {
    let (g, f) = algebra("C5", 3);
    let a = parse_element("4z + 2*z^2 - 5", &g, &f, None).unwrap();
    assert_eq!(a.coeffs, vec![1, 1, 2, 0, 0]);
    assert_eq!(format_element(&a, None).unwrap(), "1 + z - z^2");
    let sum = parse_element("z + z + z", &g, &f, None).unwrap();
    assert!(sum.is_zero());
    assert_eq!(format_element(&sum, None).unwrap(), "0");
}

#[test]
fn extension_coefficients() {
    let (g, f) = algebra("C4", 9);
    let a = parse_element("[0,1]z + [2,1] - [1]z^3", &g, &f, None).unwrap();
    assert_eq!(a.coeffs, vec![2 + 3, 3, 0, f.neg_u8(1)]);
    assert!(parse_element("[1,1,1]z", &g, &f, None).is_err());
    let back = parse_element(&format_element(&a, None).unwrap(), &g, &f, None).unwrap();
    assert_eq!(back, a);
}

#[test]
fn custom_generator_names() {
    let (g, f) = algebra("D4xC4", 3);
    let names = parse_generator_names("r,s:t");
    let a = parse_element("r*s + t^3", &g, &f, Some(&names)).unwrap();
    let b = parse_element("xy + z^3", &g, &f, None).unwrap();
    assert_eq!(a, b);
    assert_eq!(format_element(&a, Some(&names)).unwrap(), "t^3 + rs");
    assert!(parse_element("xy", &g, &f, Some(&names)).is_err());
    assert!(parse_element("r", &g, &f, Some(&parse_generator_names("r,s"))).is_err());
    assert!(parse_element("r", &g, &f, Some(&parse_generator_names("r,r:t"))).is_err());
}

#[test]
fn malformed_input_reports_position() {
    let (g, f) = algebra("D4xC4", 3);
    for (s, pos) in [("x + w", 4), ("x 2", 2), ("x +", 2), ("2*", 2), ("x*+y", 1), ("", 0), ("x^", 2)] {
        match parse_element(s, &g, &f, None) {
            Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{s:?}"),
            other => panic!("{s:?} gave {other:?}"),
        }
    }
}

#[test]
fn group_grammar() {
    assert_eq!(
        parse_group("D7xD2").unwrap(),
        GroupSpec::Product(vec![GroupSpec::Dihedral(7), GroupSpec::Dihedral(2)])
    );
    assert_eq!(
        parse_group("Q3 x C2 x D5").unwrap(),
        GroupSpec::Product(vec![GroupSpec::Quaternion(3), GroupSpec::Cyclic(2), GroupSpec::Dihedral(5)])
    );
    for bad in ["D0", "E4", "D", "D4x", "D4xx C2", "C-1"] {
        assert!(matches!(parse_group(bad), Err(Error::Parse { .. })), "{bad}");
    }
}

#[test]
fn json_round_trip() {
    let (g, f) = algebra("Q3xC2", 5);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let u = AlgebraElement::random(&g, &f, &mut rng);
    let v = element_to_json(&u);
    assert_eq!(element_from_json(&v).unwrap(), u);
    let mut broken = v.clone();
    broken["coeffs"][0] = 7.into();
    assert!(element_from_json(&broken).is_err());
}

proptest! {
    #[test]
    fn format_then_parse_is_identity(
        gi in 0usize..5,
        qi in 0usize..4,
        seed in any::<u64>(),
    ) {
        let groups = ["D4xC4", "D3xD2", "Q2xC3", "C7", "D5"];
        let qs = [3u64, 5, 7, 9];
        let (g, f) = algebra(groups[gi], qs[qi]);
        if g.order() as u64 % f.p as u64 == 0 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = AlgebraElement::random(&g, &f, &mut rng);
        let s = format_element(&u, None).unwrap();
        let back = parse_element(&s, &g, &f, None).unwrap();
        prop_assert_eq!(&back, &u);
        prop_assert_eq!(format_element(&back, None).unwrap(), s);
    }
}
