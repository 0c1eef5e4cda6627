use crate::error::{Error, Result};
use crate::wa::Decomposition;
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Number of k-dimensional subspaces of F_Q^n, ∏_{i<k} (Q^{n−i} − 1)/(Q^{i+1} − 1).
pub fn gaussian_binomial(q: &BigUint, n: u32, k: u32) -> Result<BigUint> {
    if k > n {
        return Err(Error::Invalid(format!("k = {k} exceeds n = {n}")));
    }
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow(n - i) - &one;
        den *= q.pow(i + 1) - &one;
    }
    Ok(num / den)
}

/// I_Q(n): the number of subspaces of F_Q^n, equal to the number of left ideals of M_n(F_Q).
pub fn ideal_count(q: &BigUint, n: u32) -> BigUint {
    (0..=n).map(|k| gaussian_binomial(q, n, k).expect("k ≤ n")).fold(BigUint::zero(), |a, b| a + b)
}

/// ∏ over summands of I_{q^{r_i}}(n_i).
pub fn count_group_codes(dec: &Decomposition) -> BigUint {
    let q = BigUint::from(dec.q);
    dec.blocks.iter().fold(BigUint::one(), |acc, b| {
        acc * ideal_count(&q.pow(b.r as u32), b.n as u32).pow(b.mult as u32)
    })
}
