//! CSS codes from a pair of linear codes with C2^⊥ ⊆ C1.

use crate::codes::{dot, estimate_filtered, Budget, LinearCode, WeightSearch};
use crate::error::{Error, Result};
use serde::Serialize;
use std::sync::atomic::{AtomicU64, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantumStatus {
    Exact,
    UpperBound,
    /// C1 = C2^⊥, so both set differences are empty.
    Undefined,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuantumDistance {
    pub value: Option<usize>,
    pub status: QuantumStatus,
    /// Every word in (C1 ∖ C2^⊥) ∪ (C2 ∖ C1^⊥) has at least this weight.
    pub lower_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u8>>,
    pub ops: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CSSParams {
    pub n: usize,
    pub k: i64,
    pub d: QuantumDistance,
    pub q: usize,
}

impl std::fmt::Display for CSSParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.d.value, self.d.status) {
            (Some(d), QuantumStatus::Exact) => write!(f, "[[{}, {}, {}]]_{}", self.n, self.k, d, self.q),
            (Some(d), _) => write!(f, "[[{}, {}, ≤{}]]_{}", self.n, self.k, d, self.q),
            (None, _) => write!(f, "[[{}, {}, undefined]]_{}", self.n, self.k, self.q),
        }
    }
}

fn same_space(c1: &LinearCode, c2: &LinearCode) -> Result<()> {
    if c1.n != c2.n {
        return Err(Error::DimensionMismatch(format!("code lengths {} and {}", c1.n, c2.n)));
    }
    if c1.q() != c2.q() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// True iff C2^⊥ ⊆ C1.
pub fn css_check(c1: &LinearCode, c2: &LinearCode) -> Result<bool> {
    same_space(c1, c2)?;
    Ok(c2.dual().is_subcode_of(c1))
}

/// c ∉ C^⊥, i.e. some generator of C is not orthogonal to c.
fn outside_dual(c: &LinearCode) -> impl Fn(&[u8]) -> bool + Sync + '_ {
    move |v: &[u8]| c.generator().iter().any(|g| dot(&c.field, g, v) != 0)
}

/// Parameters [[n, k1 + k2 − n, d]]_q. The distance is the least weight in
/// (C1 ∖ C2^⊥) ∪ (C2 ∖ C1^⊥), searched by increasing weight in both codes.
pub fn css_build(c1: &LinearCode, c2: &LinearCode, budget: &Budget) -> Result<CSSParams> {
    if !css_check(c1, c2)? {
        return Err(Error::Containment("C2^⊥ is not contained in C1".into()));
    }
    let n = c1.n;
    let k = c1.k() as i64 + c2.k() as i64 - n as i64;
    let params = |d| CSSParams { n, k, d, q: c1.q() };
    if k == 0 {
        return Ok(params(QuantumDistance {
            value: None,
            status: QuantumStatus::Undefined,
            lower_bound: 0,
            witness: None,
            ops: 0,
        }));
    }
    let in1 = outside_dual(c2);
    let in2 = outside_dual(c1);
    let searches = [(WeightSearch::for_code(c1), &in1 as &(dyn Fn(&[u8]) -> bool + Sync)), (WeightSearch::for_code(c2), &in2)];
    let ops = AtomicU64::new(0);
    let mut spent: u128 = 0;
    for w in 1..=n {
        spent += searches.iter().map(|(s, _)| s.predicted_ops(w)).sum::<u128>();
        if spent > budget.ops as u128 {
            let mut best: Option<Vec<u8>> = None;
            for (code, accept) in [(c1, &in1 as &dyn Fn(&[u8]) -> bool), (c2, &in2)] {
                let (bw, word) = estimate_filtered(code, budget.estimate_iters, budget.seed, accept)?;
                if bw != usize::MAX && best.as_ref().is_none_or(|b| crate::codes::weight(b) > bw) {
                    best = Some(word);
                }
            }
            return Ok(params(QuantumDistance {
                value: best.as_ref().map(|b| crate::codes::weight(b)),
                status: QuantumStatus::UpperBound,
                lower_bound: w,
                witness: best,
                ops: ops.load(Ordering::Relaxed),
            }));
        }
        for (search, accept) in &searches {
            if let Some(c) = search.find_weight(w, *accept, &ops) {
                return Ok(params(QuantumDistance {
                    value: Some(w),
                    status: QuantumStatus::Exact,
                    lower_bound: w,
                    witness: Some(c),
                    ops: ops.load(Ordering::Relaxed),
                }));
            }
        }
    }
    unreachable!("k > 0 leaves a word outside the dual")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::SmallField;

    #[test]
    fn full_space_pair() {
        let f = SmallField::new(3).unwrap();
        let full = LinearCode::full(&f, 5);
        let p = css_build(&full, &full, &Budget::default()).unwrap();
        assert_eq!((p.n, p.k, p.d.value, p.d.status), (5, 5, Some(1), QuantumStatus::Exact));
    }

    #[test]
    fn zero_pair_fails_check() {
        let f = SmallField::new(3).unwrap();
        let z = LinearCode::zero(&f, 4);
        assert!(!css_check(&z, &z).unwrap());
        assert!(css_build(&z, &z, &Budget::default()).is_err());
        assert!(css_check(&z, &LinearCode::zero(&f, 5)).is_err());
    }

    #[test]
    fn self_dual_pair_is_undefined() {
        let f = SmallField::new(3).unwrap();
        // The tetracode is self-dual.
        let c = LinearCode::from_rows(&f, 4, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        assert_eq!(c.dual(), c);
        let p = css_build(&c, &c, &Budget::default()).unwrap();
        assert_eq!(p.k, 0);
        assert_eq!(p.d.status, QuantumStatus::Undefined);
    }
}
