//! Reference implementations used as oracles. They share no code with the library
//! beyond the truth-table container and the coordinate map under test.

#![allow(dead_code)]

use negabent::BooleanFunction;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shift-and-add multiplication modulo `modulus` (degree `n`).
pub fn naive_mul(a: u32, mut b: u32, n: u32, modulus: u64) -> u32 {
    let mut acc: u64 = 0;
    let mut a64 = a as u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a64;
        }
        b >>= 1;
        a64 <<= 1;
        if (a64 >> n) & 1 == 1 {
            a64 ^= modulus;
        }
    }
    acc as u32
}

pub fn naive_pow(a: u32, mut e: u64, n: u32, modulus: u64) -> u32 {
    let mut base = a;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = naive_mul(acc, base, n, modulus);
        }
        base = naive_mul(base, base, n, modulus);
        e >>= 1;
    }
    acc
}

/// `x + x^2 + ... + x^{2^{m-1}}` computed in GF(2^n).
pub fn naive_partial_trace(x: u32, m: u32, n: u32, modulus: u64) -> u32 {
    let mut acc = 0;
    let mut y = x;
    for _ in 0..m {
        acc ^= y;
        y = naive_mul(y, y, n, modulus);
    }
    acc
}

pub fn naive_trace(x: u32, n: u32, modulus: u64) -> bool {
    match naive_partial_trace(x, n, n, modulus) {
        0 => false,
        1 => true,
        other => panic!("trace landed outside GF(2): {other:#x}"),
    }
}

/// Absolute trace of every element, indexed by polynomial-basis value.
pub fn trace_table(n: u32, modulus: u64) -> Vec<bool> {
    (0..1u32 << n).map(|x| naive_trace(x, n, modulus)).collect()
}

/// `sum_x (-1)^{f(x) + l.x}` by definition.
pub fn direct_walsh(f: &BooleanFunction) -> Vec<i64> {
    let len = f.len() as u32;
    (0..len)
        .map(|l| {
            (0..len)
                .map(|x| if f.get(x) ^ ((l & x).count_ones() % 2 == 1) { -1 } else { 1 })
                .sum()
        })
        .collect()
}

/// `sum_x (-1)^{f(x) + l.x} i^{wt(x)}` by definition, as (re, im).
pub fn direct_nega(f: &BooleanFunction) -> Vec<(i64, i64)> {
    const UNIT: [(i64, i64); 4] = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    let len = f.len() as u32;
    (0..len)
        .map(|l| {
            let mut s = (0, 0);
            for x in 0..len {
                let sign = if f.get(x) ^ ((l & x).count_ones() % 2 == 1) { -1 } else { 1 };
                let (re, im) = UNIT[(x.count_ones() % 4) as usize];
                s.0 += sign * re;
                s.1 += sign * im;
            }
            s
        })
        .collect()
}

pub fn direct_is_negabent(f: &BooleanFunction) -> bool {
    let target = 1i64 << f.n();
    direct_nega(f).iter().all(|&(a, b)| a * a + b * b == target)
}

/// ANF degree via a separate Moebius transform over bytes; `None` for zero.
pub fn anf_degree(f: &BooleanFunction) -> Option<u32> {
    let mut v: Vec<u8> = f.iter().map(u8::from).collect();
    let mut h = 1;
    while h < v.len() {
        for i in 0..v.len() {
            if i & h != 0 {
                v[i] ^= v[i ^ h];
            }
        }
        h <<= 1;
    }
    (0..v.len()).filter(|&a| v[a] == 1).map(|a| a.count_ones()).max()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_function(rng: &mut ChaCha8Rng, n: u32) -> BooleanFunction {
    BooleanFunction::from_fn(n, |_| rng.gen())
}

pub fn random_permutation(rng: &mut ChaCha8Rng, size: usize) -> Vec<u32> {
    let mut p: Vec<u32> = (0..size as u32).collect();
    p.shuffle(rng);
    p
}
