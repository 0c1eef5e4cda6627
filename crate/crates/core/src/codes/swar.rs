//! Vectors over F_q packed one symbol per byte into u64 words.

use crate::gf::SmallField;
use std::sync::Arc;

const ONES: u64 = 0x0101_0101_0101_0101;
const HIGH: u64 = 0x8080_8080_8080_8080;
const LOW7: u64 = 0x7f7f_7f7f_7f7f_7f7f;

#[derive(Clone, Copy, Debug)]
enum Arith {
    Prime(u64),
    Char2,
    Table,
}

#[derive(Clone)]
pub struct Packed {
    pub field: Arc<SmallField>,
    arith: Arith,
    pub len: usize,
    pub words: usize,
}

impl Packed {
    pub fn new(field: &Arc<SmallField>, len: usize) -> Packed {
        let arith = if field.p == 2 {
            Arith::Char2
        } else if field.is_prime() && field.p < 128 {
            Arith::Prime(field.p as u64)
        } else {
            Arith::Table
        };
        Packed { field: field.clone(), arith, len, words: len.div_ceil(8) }
    }

    pub fn pack(&self, v: &[u8]) -> Vec<u64> {
        let mut out = vec![0u64; self.words];
        for (i, &x) in v.iter().enumerate() {
            out[i / 8] |= (x as u64) << (8 * (i % 8));
        }
        out
    }

    pub fn unpack(&self, w: &[u64]) -> Vec<u8> {
        (0..self.len).map(|i| (w[i / 8] >> (8 * (i % 8))) as u8).collect()
    }

    #[inline]
    pub fn add_word(&self, a: u64, b: u64) -> u64 {
        match self.arith {
            Arith::Char2 => a ^ b,
            Arith::Prime(p) => {
                let t = a + b;
                let ge = (t + (0x80 - p) * ONES) & HIGH;
                t - (((ge >> 7) * 0xff) & (p * ONES))
            }
            Arith::Table => {
                let mut out = 0u64;
                for s in 0..8 {
                    let x = (a >> (8 * s)) as u8;
                    let y = (b >> (8 * s)) as u8;
                    out |= (self.field.add_u8(x, y) as u64) << (8 * s);
                }
                out
            }
        }
    }

    #[inline]
    pub fn add_into(&self, dst: &mut [u64], src: &[u64]) {
        for (d, s) in dst.iter_mut().zip(src) {
            *d = self.add_word(*d, *s);
        }
    }

    #[inline]
    pub fn weight(&self, w: &[u64]) -> u32 {
        w.iter().map(|&x| ((((x & LOW7) + LOW7) | x) & HIGH).count_ones()).sum()
    }

    pub fn scale(&self, v: &[u8], c: u8) -> Vec<u8> {
        v.iter().map(|&x| self.field.mul_u8(x, c)).collect()
    }
}

#[inline]
pub fn hash_words(w: &[u64]) -> u64 {
    let mut h: u64 = 0x243f_6a88_85a3_08d3;
    for &x in w {
        h = (h ^ x).wrapping_mul(0x9e37_79b9_7f4a_7c15);
        h ^= h >> 29;
    }
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^ (h >> 32)
}
