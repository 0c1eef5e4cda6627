use groupcodes::codes::*;
use groupcodes::gf::SmallField;
use proptest::prelude::{any, prop, prop_assert, prop_assert_eq, prop_assume, proptest, ProptestConfig};
use std::sync::Arc;

fn brute_force(code: &LinearCode) -> usize {
    let k = code.k();
    let q = code.q() as u64;
    let mut best = usize::MAX;
    for m in 1..q.pow(k as u32) {
        let mut t = m;
        let msg: Vec<u8> = (0..k)
            .map(|_| {
                let d = (t % q) as u8;
                t /= q;
                d
            })
            .collect();
        best = best.min(weight(&code.encode(&msg)));
    }
    best
}

fn code_from(q: u64, n: usize, rows: Vec<Vec<u8>>) -> LinearCode {
    let f: Arc<SmallField> = SmallField::new(q).unwrap();
    let rows = rows.into_iter().map(|r| r.into_iter().map(|x| x % q as u8).collect()).collect();
    LinearCode::from_rows(&f, n, rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn strategies_agree_with_brute_force(
        q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 9]),
        n in 3usize..14,
        seed in prop::collection::vec(prop::collection::vec(any::<u8>(), 14), 1..5),
    ) {
        let rows: Vec<Vec<u8>> = seed.into_iter().map(|r| r[..n].to_vec()).collect();
        let code = code_from(q, n, rows);
        prop_assume!(code.k() > 0);
        let truth = brute_force(&code);
        let b = Budget::default();
        let ex = min_distance(&code, Strategy::Exhaustive, &b).unwrap();
        prop_assert_eq!(ex.value, truth);
        let lw = min_distance(&code, Strategy::LowWeight, &b).unwrap();
        prop_assert_eq!(lw.status, DistanceStatus::Exact);
        prop_assert_eq!(lw.value, truth);
        let w = lw.witness.unwrap();
        prop_assert!(code.contains(&w));
        prop_assert_eq!(weight(&w), truth);
        let est = min_distance(&code, Strategy::Estimate, &b).unwrap();
        prop_assert!(est.value >= truth);
        prop_assert!(truth <= n - code.k() + 1);
        let cert = verify_distance(&code, truth, &b).unwrap();
        prop_assert!(cert.certified(truth));
        if truth < n {
            let over = verify_distance(&code, truth + 1, &b).unwrap();
            prop_assert!(!over.no_lighter);
            prop_assert_eq!(weight(over.witness.as_ref().unwrap()), truth);
        }
    }
}

#[test]
fn zero_code_is_an_error() {
    let f = SmallField::new(3).unwrap();
    let z = LinearCode::zero(&f, 5);
    assert!(min_distance(&z, Strategy::Auto, &Budget::default()).is_err());
}

#[test]
fn budget_is_enforced() {
    let f = SmallField::new(3).unwrap();
    let full = LinearCode::full(&f, 40);
    let tight = Budget { exhaustive: 10, ..Budget::default() };
    assert!(min_distance(&full, Strategy::Exhaustive, &tight).is_err());
    let rep = LinearCode::from_rows(&f, 40, vec![vec![1; 40]]).unwrap();
    let tiny = Budget { ops: 1000, ..Budget::default() };
    assert!(verify_distance(&rep, 40, &tiny).is_err());
}
