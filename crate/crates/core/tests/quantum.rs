use groupcodes::codes::*;
use groupcodes::gf::SmallField;
use groupcodes::quantum::*;
use groupcodes::repro::css_example;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_words(code: &LinearCode) -> Vec<Vec<u8>> {
    let q = code.q();
    let k = code.k();
    (0..q.pow(k as u32))
        .map(|mut i| {
            let msg: Vec<u8> = (0..k)
                .map(|_| {
                    let d = (i % q) as u8;
                    i /= q;
                    d
                })
                .collect();
            code.encode(&msg)
        })
        .collect()
}

/// Least weight in (C1 ∖ C2^⊥) ∪ (C2 ∖ C1^⊥) by listing codewords.
fn brute_force(c1: &LinearCode, c2: &LinearCode) -> Option<usize> {
    let d1 = c2.dual();
    let d2 = c1.dual();
    all_words(c1)
        .into_iter()
        .filter(|w| !d1.contains(w))
        .chain(all_words(c2).into_iter().filter(|w| !d2.contains(w)))
        .map(|w| weight(&w))
        .min()
}

fn random_rows(rng: &mut ChaCha8Rng, q: usize, n: usize, k: usize) -> Vec<Vec<u8>> {
    (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..q) as u8).collect()).collect()
}

#[test]
fn dihedral_examples() {
    let b = Budget::default();
    for (n, k, dims) in [(16u64, 10i64, (23, 19)), (20, 16, (33, 23))] {
        let (iso, d, c) = css_example(n).unwrap();
        let dc = code_from_ideal(&iso, &d).unwrap();
        let cc = code_from_ideal(&iso, &c).unwrap();
        assert_eq!((dc.k(), cc.k()), dims);
        assert!(css_check(&dc, &cc).unwrap());
        let p = css_build(&dc, &cc, &b).unwrap();
        assert_eq!((p.n, p.k, p.d.value, p.d.status), (2 * n as usize, k, Some(4), QuantumStatus::Exact));
        // The dual tables predict C^⊥ exactly.
        let cd = dihedral_dual_ideal(3, n, &c).unwrap();
        assert_eq!(code_from_ideal(&iso, &cd).unwrap(), cc.dual());
    }
}

#[test]
fn certification_is_monotone() {
    let (iso, d, c) = css_example(16).unwrap();
    let c1 = code_from_ideal(&iso, &d).unwrap();
    let c2 = code_from_ideal(&iso, &c).unwrap();
    let p = css_build(&c1, &c2, &Budget::default()).unwrap();
    let dq = p.d.value.unwrap();
    let w = p.d.witness.clone().unwrap();
    assert_eq!(weight(&w), dq);
    let in1 = c1.contains(&w) && !c2.dual().contains(&w);
    let in2 = c2.contains(&w) && !c1.dual().contains(&w);
    assert!(in1 || in2);
    // Nothing qualifying one weight lower, in either code.
    let ops = std::sync::atomic::AtomicU64::new(0);
    for (a, b) in [(&c1, &c2), (&c2, &c1)] {
        let dual = b.dual();
        let s = WeightSearch::for_code(a);
        for lighter in 1..dq {
            assert!(s.find_weight(lighter, &|v| !dual.contains(v), &ops).is_none());
        }
    }
}

#[test]
fn symmetric_when_both_contain() {
    let (iso, d, c) = css_example(16).unwrap();
    let dc = code_from_ideal(&iso, &d).unwrap();
    let cc = code_from_ideal(&iso, &c).unwrap();
    assert!(css_check(&cc, &dc).unwrap());
    let a = css_build(&dc, &cc, &Budget::default()).unwrap();
    let b = css_build(&cc, &dc, &Budget::default()).unwrap();
    assert_eq!((a.n, a.k, a.d.value), (b.n, b.k, b.d.value));
}

#[test]
fn json_shape() {
    let f = SmallField::new(5).unwrap();
    let full = LinearCode::full(&f, 3);
    let p = css_build(&full, &full, &Budget::default()).unwrap();
    let v = serde_json::to_value(&p).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["k"], 3);
    assert_eq!(v["q"], 5);
    assert_eq!(v["d"]["value"], 1);
    assert_eq!(v["d"]["status"], "exact");
}

#[test]
fn containment_violation_is_an_error() {
    let f = SmallField::new(3).unwrap();
    let c = LinearCode::from_rows(&f, 4, vec![vec![1, 1, 1, 1]]).unwrap();
    assert!(!css_check(&c, &c).unwrap());
    assert!(matches!(css_build(&c, &c, &Budget::default()), Err(groupcodes::Error::Containment(_))));
}

#[test]
fn tight_budget_reports_bounds() {
    let (iso, d, c) = css_example(20).unwrap();
    let dc = code_from_ideal(&iso, &d).unwrap();
    let cc = code_from_ideal(&iso, &c).unwrap();
    let b = Budget { ops: 2_000, ..Budget::default() };
    let p = css_build(&dc, &cc, &b).unwrap();
    assert_eq!(p.d.status, QuantumStatus::UpperBound);
    let v = p.d.value.unwrap();
    assert!(p.d.lower_bound <= 4 && v >= 4);
    assert_eq!(weight(p.d.witness.as_ref().unwrap()), v);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]
    #[test]
    fn matches_brute_force(qi in 0usize..3, n in 2usize..8, k2 in 0usize..5, extra in 0usize..4, seed in any::<u64>()) {
        let q = [2usize, 3, 4][qi];
        let f = SmallField::new(q as u64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c2 = LinearCode::from_rows(&f, n, random_rows(&mut rng, q, n, k2.min(n))).unwrap();
        let mut rows = c2.dual().generator().clone();
        rows.extend(random_rows(&mut rng, q, n, extra));
        let c1 = LinearCode::from_rows(&f, n, rows).unwrap();
        prop_assume!(c1.k() + c2.k() <= 12);
        let p = css_build(&c1, &c2, &Budget::default()).unwrap();
        prop_assert_eq!(p.k, c1.k() as i64 + c2.k() as i64 - n as i64);
        match brute_force(&c1, &c2) {
            None => prop_assert_eq!(p.d.status, QuantumStatus::Undefined),
            Some(d) => {
                prop_assert_eq!(p.d.status, QuantumStatus::Exact);
                prop_assert_eq!(p.d.value, Some(d));
            }
        }
    }
}
