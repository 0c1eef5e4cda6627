//! Minimum distance: exhaustive codeword walks, information-set estimates, and
//! exact certification by meet-in-the-middle syndrome matching.

use super::swar::{hash_words, Packed};
use super::LinearCode;
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::sync::atomic::{AtomicU64, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Walk all codewords; exact.
    Exhaustive,
    /// Estimate an upper bound, then rule out every lighter weight; exact within budget.
    LowWeight,
    /// Random information sets; an upper bound only.
    Estimate,
    /// Exhaustive when q^k fits the budget, otherwise LowWeight.
    Auto,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Strategy> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "exhaustive" => Ok(Strategy::Exhaustive),
            "low-weight" | "lowweight" => Ok(Strategy::LowWeight),
            "estimate" => Ok(Strategy::Estimate),
            "auto" => Ok(Strategy::Auto),
            _ => Err(Error::Invalid(format!("unknown distance strategy {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Largest q^k walked exhaustively.
    pub exhaustive: u128,
    /// Largest number of patterns processed by syndrome matching.
    pub ops: u64,
    /// Information sets sampled by the estimator.
    pub estimate_iters: usize,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { exhaustive: 1 << 28, ops: 1 << 30, estimate_iters: 300, seed: 0x6c6f_7765_7267 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceStatus {
    Exact,
    UpperBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceResult {
    /// Exact distance, or the best upper bound found.
    pub value: usize,
    pub status: DistanceStatus,
    /// No nonzero codeword is lighter than this.
    pub lower_bound: usize,
    pub method: &'static str,
    pub witness: Option<Vec<u8>>,
    pub ops: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub no_lighter: bool,
    pub witness: Option<Vec<u8>>,
    pub ops: u64,
}

impl Certificate {
    pub fn certified(&self, d: usize) -> bool {
        self.no_lighter && self.witness.as_ref().is_some_and(|w| super::weight(w) == d)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: Option<DistanceResult>,
}

fn binom(n: usize, k: usize) -> u128 {
    crate::util::binomial(n as u64, k as u64)
}

/// Patterns processed when searching weight w in length n over F_q.
pub fn predicted_ops(n: usize, q: usize, w: usize) -> u128 {
    if w == 0 || w > n {
        return 0;
    }
    let h = n / 2;
    let windows = if n % 2 == 0 { h + 1 } else { n } as u128;
    let (a, b) = (w / 2, w - w / 2);
    let qm = (q - 1) as u128;
    windows * (binom(h, a) * qm.pow(a as u32) + binom(n - h, b) * qm.pow(b as u32 - 1))
}

/// Meet-in-the-middle search for codewords of a given weight, phrased on a parity-check matrix.
///
/// For a support S of size w and windows W_i of ⌊n/2⌋ cyclically consecutive
/// positions, |S ∩ W_i| moves by at most one per shift and takes values on
/// both sides of ⌊w/2⌋, so some window holds exactly ⌊w/2⌋ positions of S.
/// Left halves (all values, inside the window) are hashed by syndrome; right
/// halves (outside, first value 1) look up the negated syndrome.
pub struct WeightSearch {
    pub n: usize,
    q: usize,
    syn: Packed,
    /// cols[pos][v − 1] = v·H[:, pos], packed.
    cols: Vec<Vec<Vec<u64>>>,
    neg_cols: Vec<Vec<Vec<u64>>>,
    binom: Vec<Vec<u64>>,
}

struct Table {
    slots: Vec<u64>,
    mask: usize,
}

impl Table {
    fn with_capacity(count: usize) -> Table {
        let cap = (2 * count.max(1)).next_power_of_two();
        Table { slots: vec![0; cap], mask: cap - 1 }
    }
    fn insert(&mut self, h: u64, rank: u32) {
        let mut i = h as usize & self.mask;
        while self.slots[i] != 0 {
            i = (i + 1) & self.mask;
        }
        self.slots[i] = (h >> 32) << 32 | (rank as u64 + 1);
    }
    fn probe(&self, h: u64, mut f: impl FnMut(u32) -> bool) -> bool {
        let tag = h >> 32;
        let mut i = h as usize & self.mask;
        loop {
            let s = self.slots[i];
            if s == 0 {
                return false;
            }
            if s >> 32 == tag && f((s & 0xffff_ffff) as u32 - 1) {
                return true;
            }
            i = (i + 1) & self.mask;
        }
    }
}

impl WeightSearch {
    /// `h` is a parity-check matrix with n columns (possibly zero rows).
    pub fn new(field: &std::sync::Arc<crate::gf::SmallField>, n: usize, h: &[Vec<u8>]) -> WeightSearch {
        let q = field.q;
        let syn = Packed::new(field, h.len());
        let col = |pos: usize, v: u8| -> Vec<u64> {
            let c: Vec<u8> = h.iter().map(|row| field.mul_u8(row[pos], v)).collect();
            syn.pack(&c)
        };
        let cols = (0..n).map(|p| (1..q as u8).map(|v| col(p, v)).collect()).collect();
        let neg_cols = (0..n).map(|p| (1..q as u8).map(|v| col(p, field.neg_u8(v))).collect()).collect();
        let mut binom = vec![vec![0u64; 65]; n + 1];
        for i in 0..=n {
            binom[i][0] = 1;
            for j in 1..=i.min(64) {
                binom[i][j] = binom[i - 1][j - 1] + if j < i { binom[i - 1][j] } else { 0 };
            }
        }
        WeightSearch { n, q, syn, cols, neg_cols, binom }
    }

    pub fn for_code(code: &LinearCode) -> WeightSearch {
        WeightSearch::new(&code.field, code.n, &code.parity_check())
    }

    pub fn predicted_ops(&self, w: usize) -> u128 {
        predicted_ops(self.n, self.q, w)
    }

    fn windows(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.n;
        let h = n / 2;
        let count = if n % 2 == 0 { h + 1 } else { n };
        (0..count)
            .map(|i| {
                let mut inside = vec![false; n];
                let left: Vec<usize> = (0..h).map(|t| (i + t) % n).collect();
                for &p in &left {
                    inside[p] = true;
                }
                let right = (0..n).filter(|&p| !inside[p]).collect();
                (left, right)
            })
            .collect()
    }

    fn syndrome(&self, positions: &[usize], values: &[u8]) -> Vec<u64> {
        let mut s = vec![0u64; self.syn.words];
        for (&p, &v) in positions.iter().zip(values) {
            self.syn.add_into(&mut s, &self.cols[p][v as usize - 1]);
        }
        s
    }

    fn rank(&self, idx: &[usize], vals: &[u8]) -> u64 {
        let mut combo = 0u64;
        for (i, &c) in idx.iter().enumerate() {
            combo += self.binom[c][i + 1];
        }
        let mut v = 0u64;
        for &x in vals {
            v = v * (self.q as u64 - 1) + (x as u64 - 1);
        }
        combo * (self.q as u64 - 1).pow(vals.len() as u32) + v
    }

    fn unrank(&self, mut rank: u64, a: usize, h: usize) -> (Vec<usize>, Vec<u8>) {
        let qm = self.q as u64 - 1;
        let per = qm.pow(a as u32);
        let mut v = rank % per;
        rank /= per;
        let mut vals = vec![0u8; a];
        for x in vals.iter_mut().rev() {
            *x = (v % qm) as u8 + 1;
            v /= qm;
        }
        let mut idx = vec![0usize; a];
        let mut top = h;
        for i in (0..a).rev() {
            let mut c = i;
            while c + 1 < top && self.binom[c + 1][i + 1] <= rank {
                c += 1;
            }
            rank -= self.binom[c][i + 1];
            idx[i] = c;
            top = c;
        }
        (idx, vals)
    }

    /// Visit all (positions ⊂ `pool` of size `a`, values) with their accumulated syndromes.
    /// When `first_one`, the first chosen position carries value 1 only.
    fn enumerate(
        &self,
        pool: &[usize],
        a: usize,
        first_one: bool,
        neg: bool,
        start: Option<usize>,
        visit: &mut dyn FnMut(&[usize], &[u8], &[u64]) -> bool,
    ) -> bool {
        let mut idx = Vec::with_capacity(a);
        let mut vals = Vec::with_capacity(a);
        let mut acc = vec![vec![0u64; self.syn.words]; a + 1];
        self.rec(pool, a, first_one, neg, start, &mut idx, &mut vals, &mut acc, visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        pool: &[usize],
        a: usize,
        first_one: bool,
        neg: bool,
        start: Option<usize>,
        idx: &mut Vec<usize>,
        vals: &mut Vec<u8>,
        acc: &mut [Vec<u64>],
        visit: &mut dyn FnMut(&[usize], &[u8], &[u64]) -> bool,
    ) -> bool {
        let depth = idx.len();
        if depth == a {
            return visit(idx, vals, &acc[depth]);
        }
        let lo = idx.last().map_or(0, |&c| c + 1);
        let (lo, hi) = match (depth, start) {
            (0, Some(s)) => (s, s + 1),
            _ => (lo, pool.len() - (a - depth - 1)),
        };
        let cols = if neg { &self.neg_cols } else { &self.cols };
        for c in lo..hi {
            let maxv = if first_one && depth == 0 { 1 } else { self.q as u8 - 1 };
            for v in 1..=maxv {
                let (head, tail) = acc.split_at_mut(depth + 1);
                tail[0].copy_from_slice(&head[depth]);
                self.syn.add_into(&mut tail[0], &cols[pool[c]][v as usize - 1]);
                idx.push(c);
                vals.push(v);
                let stop = self.rec(pool, a, first_one, neg, start, idx, vals, acc, visit);
                idx.pop();
                vals.pop();
                if stop {
                    return true;
                }
            }
        }
        false
    }

    /// First codeword (in a deterministic search order) of weight exactly `w`
    /// satisfying `accept`. Adds the patterns processed to `ops`.
    pub fn find_weight(&self, w: usize, accept: &(dyn Fn(&[u8]) -> bool + Sync), ops: &AtomicU64) -> Option<Vec<u8>> {
        if w == 0 || w > self.n {
            return None;
        }
        let (a, b) = (w / 2, w - w / 2);
        for (left, right) in self.windows() {
            let count = (self.binom[left.len()][a] * (self.q as u64 - 1).pow(a as u32)) as usize;
            let mut table = Table::with_capacity(count);
            let mut inserted = 0u64;
            self.enumerate(&left, a, false, false, None, &mut |idx, vals, s| {
                table.insert(hash_words(s), self.rank(idx, vals) as u32);
                inserted += 1;
                false
            });
            ops.fetch_add(inserted, Ordering::Relaxed);
            let firsts: Vec<usize> = (0..right.len().saturating_sub(b - 1)).collect();
            let found = firsts.par_iter().find_map_first(|&first| {
                let mut local_ops = 0u64;
                let mut hit = None;
                self.enumerate(&right, b, true, true, Some(first), &mut |ridx, rvals, target| {
                    local_ops += 1;
                    table.probe(hash_words(target), |rank| {
                        let (lidx, lvals) = self.unrank(rank as u64, a, left.len());
                        let lpos: Vec<usize> = lidx.iter().map(|&i| left[i]).collect();
                        if self.syndrome(&lpos, &lvals) != target {
                            return false;
                        }
                        let mut c = vec![0u8; self.n];
                        for (&p, &v) in lpos.iter().zip(&lvals) {
                            c[p] = v;
                        }
                        for (&i, &v) in ridx.iter().zip(rvals) {
                            c[right[i]] = v;
                        }
                        if accept(&c) {
                            hit = Some(c);
                            true
                        } else {
                            false
                        }
                    })
                });
                ops.fetch_add(local_ops, Ordering::Relaxed);
                hit
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Walk every codeword up to scalars with a p-ary modular Gray code over the
/// F_p-expansion of the message (step i changes digit v_p(i) by one).
pub fn exhaustive(code: &LinearCode) -> Result<(usize, Vec<u8>, u64)> {
    let k = code.k();
    if k == 0 {
        return Err(Error::Invalid("the zero code has no minimum distance".into()));
    }
    let q = code.q();
    let f = &*code.field;
    let p = f.p as u64;
    let e = f.field.k();
    let pk = Packed::new(&code.field, code.n);
    let g = code.generator();
    // Byte encodings of the power basis 1, ξ, ..., ξ^{e−1}.
    let basis: Vec<u8> = (0..e).map(|t| (p as usize).pow(t as u32) as u8).collect();
    let expanded = |d: usize| -> Vec<Vec<u64>> { basis.iter().map(|&b| pk.pack(&pk.scale(&g[d], b))).collect() };
    // Tasks: leading digit j is 1, and the last free digit (if any) is fixed per task.
    let mut tasks = Vec::new();
    for j in 0..k {
        if j + 1 < k {
            for top in 0..q as u8 {
                tasks.push((j, Some(top)));
            }
        } else {
            tasks.push((j, None));
        }
    }
    let results: Vec<(u32, Vec<u64>, u64)> = tasks
        .par_iter()
        .map(|&(j, top)| {
            let mut cur = pk.pack(&g[j]);
            let last = if let Some(t) = top {
                pk.add_into(&mut cur, &pk.pack(&pk.scale(&g[k - 1], t)));
                k - 1
            } else {
                k
            };
            let steps: Vec<Vec<u64>> = (j + 1..last).flat_map(expanded).collect();
            let mut best = (pk.weight(&cur), cur.clone());
            let total = p.pow(steps.len() as u32);
            for i in 1..total {
                let mut t = i;
                let mut digit = 0;
                while t % p == 0 {
                    t /= p;
                    digit += 1;
                }
                pk.add_into(&mut cur, &steps[digit]);
                let w = pk.weight(&cur);
                if w < best.0 {
                    best = (w, cur.clone());
                }
            }
            (best.0, best.1, total)
        })
        .collect();
    let ops = results.iter().map(|r| r.2).sum();
    let best = results.into_iter().min_by_key(|r| r.0).unwrap();
    Ok((best.0 as usize, pk.unpack(&best.1), ops))
}

/// Random information sets; combinations of at most two systematic rows.
pub fn estimate(code: &LinearCode, iters: usize, seed: u64) -> Result<(usize, Vec<u8>)> {
    estimate_filtered(code, iters, seed, &|_| true)
}

/// As `estimate`, keeping only words that satisfy `accept`. Returns weight
/// `usize::MAX` and an empty word if nothing qualifying was seen.
pub fn estimate_filtered(
    code: &LinearCode,
    iters: usize,
    seed: u64,
    accept: &dyn Fn(&[u8]) -> bool,
) -> Result<(usize, Vec<u8>)> {
    let k = code.k();
    if k == 0 {
        return Err(Error::Invalid("the zero code has no minimum distance".into()));
    }
    let n = code.n;
    let f = &*code.field;
    let pk = Packed::new(&code.field, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_w = usize::MAX;
    let mut best = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    for it in 0..iters.max(1) {
        if it > 0 {
            perm.shuffle(&mut rng);
        }
        let mut m: Vec<Vec<u8>> = code.generator().iter().map(|r| perm.iter().map(|&p| r[p]).collect()).collect();
        crate::linalg::rref(f, &mut m);
        let rows: Vec<Vec<u64>> = m.iter().map(|r| pk.pack(r)).collect();
        let scaled: Vec<Vec<Vec<u64>>> =
            m.iter().map(|r| (1..f.q as u8).map(|c| pk.pack(&pk.scale(r, c))).collect()).collect();
        let mut consider = |v: &[u64]| {
            let w = pk.weight(v) as usize;
            if w > 0 && w < best_w {
                let u = pk.unpack(v);
                let mut orig = vec![0u8; n];
                for (i, &p) in perm.iter().enumerate() {
                    orig[p] = u[i];
                }
                if accept(&orig) {
                    best_w = w;
                    best = orig;
                }
            }
        };
        for i in 0..rows.len() {
            consider(&rows[i]);
            for j in i + 1..rows.len() {
                for s in &scaled[j] {
                    let mut v = rows[i].clone();
                    pk.add_into(&mut v, s);
                    consider(&v);
                }
            }
        }
    }
    Ok((best_w, best))
}

pub fn min_distance(code: &LinearCode, strategy: Strategy, budget: &Budget) -> Result<DistanceResult> {
    if code.k() == 0 {
        return Err(Error::Invalid("the zero code has no minimum distance".into()));
    }
    let walk = (code.q() as u128).checked_pow(code.k() as u32).unwrap_or(u128::MAX);
    let strategy = match strategy {
        Strategy::Auto if walk <= budget.exhaustive => Strategy::Exhaustive,
        Strategy::Auto => Strategy::LowWeight,
        s => s,
    };
    match strategy {
        Strategy::Exhaustive => {
            if walk > budget.exhaustive {
                return Err(Error::BudgetExceeded(format!("q^k = {walk} exceeds the exhaustive budget")));
            }
            let (d, w, ops) = exhaustive(code)?;
            Ok(DistanceResult { value: d, status: DistanceStatus::Exact, lower_bound: d, method: "exhaustive", witness: Some(w), ops })
        }
        Strategy::Estimate => {
            let (d, w) = estimate(code, budget.estimate_iters, budget.seed)?;
            Ok(DistanceResult { value: d, status: DistanceStatus::UpperBound, lower_bound: 1, method: "estimate", witness: Some(w), ops: 0 })
        }
        Strategy::LowWeight => {
            let (ub, wit) = estimate(code, budget.estimate_iters, budget.seed)?;
            let search = WeightSearch::for_code(code);
            let ops = AtomicU64::new(0);
            let mut spent: u128 = 0;
            for w in 1..ub {
                spent += search.predicted_ops(w);
                if spent > budget.ops as u128 {
                    return Ok(DistanceResult {
                        value: ub,
                        status: DistanceStatus::UpperBound,
                        lower_bound: w,
                        method: "low-weight",
                        witness: Some(wit),
                        ops: ops.into_inner(),
                    });
                }
                if let Some(c) = search.find_weight(w, &|_| true, &ops) {
                    return Ok(DistanceResult {
                        value: w,
                        status: DistanceStatus::Exact,
                        lower_bound: w,
                        method: "low-weight",
                        witness: Some(c),
                        ops: ops.into_inner(),
                    });
                }
            }
            Ok(DistanceResult { value: ub, status: DistanceStatus::Exact, lower_bound: ub, method: "low-weight", witness: Some(wit), ops: ops.into_inner() })
        }
        Strategy::Auto => unreachable!(),
    }
}

/// Certify d: no nonzero codeword of weight below d, and a witness of weight d.
/// If a lighter word exists it is returned as the witness.
pub fn verify_distance(code: &LinearCode, d: usize, budget: &Budget) -> Result<Certificate> {
    if code.k() == 0 {
        return Err(Error::Invalid("the zero code has no minimum distance".into()));
    }
    let search = WeightSearch::for_code(code);
    let predicted: u128 = (1..=d).map(|w| search.predicted_ops(w)).sum();
    if predicted > budget.ops as u128 {
        return Err(Error::BudgetExceeded(format!("certifying d = {d} needs about {predicted} syndrome operations")));
    }
    let ops = AtomicU64::new(0);
    for w in 1..d {
        if let Some(c) = search.find_weight(w, &|_| true, &ops) {
            return Ok(Certificate { no_lighter: false, witness: Some(c), ops: ops.into_inner() });
        }
    }
    let witness = search.find_weight(d, &|_| true, &ops);
    Ok(Certificate { no_lighter: true, witness, ops: ops.into_inner() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::SmallField;

    #[test]
    fn repetition_codes() {
        let f = SmallField::new(3).unwrap();
        let rep = LinearCode::from_rows(&f, 6, vec![vec![1; 6]]).unwrap();
        for s in [Strategy::Exhaustive, Strategy::LowWeight, Strategy::Estimate] {
            assert_eq!(min_distance(&rep, s, &Budget::default()).unwrap().value, 6);
        }
        let rep4 = LinearCode::from_rows(&f, 4, vec![vec![1; 4]]).unwrap();
        assert!(verify_distance(&rep4, 4, &Budget::default()).unwrap().certified(4));
    }

    #[test]
    fn unrank_inverts_rank() {
        let f = SmallField::new(5).unwrap();
        let s = WeightSearch::new(&f, 12, &[vec![1; 12]]);
        let mut seen = 0;
        s.enumerate(&(0..6).collect::<Vec<_>>(), 3, false, false, None, &mut |idx, vals, _| {
            let r = s.rank(idx, vals);
            assert_eq!(s.unrank(r, 3, 6), (idx.to_vec(), vals.to_vec()));
            seen += 1;
            false
        });
        assert_eq!(seen, 20 * 64);
    }
}
