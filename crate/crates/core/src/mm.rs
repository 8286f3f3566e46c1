//! Maiorana-McFarland functions `Tr(x pi(y) + h(y))` on GF(2^t) x GF(2^t),
//! their negabent criterion, and complete mappings (both found by search and
//! taken from two explicit families).
//!
//! The realized table has `2t` variables: index `x + 2^t y` with `x` the low
//! block and `y` the high block, each in the self-dual coordinates of GF(2^t).

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolfun::{BooleanFunction, UnivariatePoly};
use crate::error::{Error, Result};
use crate::field::{make_field, FieldCtx, FieldElement};

/// A map GF(2^t) -> GF(2^t) given by its value table (indexed by field element).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermSpec {
    t: u32,
    table: Vec<FieldElement>,
}

impl PermSpec {
    pub fn new(ctx: &FieldCtx, table: Vec<FieldElement>) -> Result<Self> {
        if table.len() != ctx.size() || table.iter().any(|&v| v as usize >= ctx.size()) {
            return Err(Error::InvalidParameters(format!(
                "table must hold {} elements of GF(2^{})",
                ctx.size(),
                ctx.n()
            )));
        }
        Ok(PermSpec { t: ctx.n(), table })
    }

    pub fn from_poly(ctx: &FieldCtx, poly: &UnivariatePoly) -> Self {
        PermSpec { t: ctx.n(), table: ctx.elements().map(|y| poly.eval(ctx, y)).collect() }
    }

    pub fn from_fn(ctx: &FieldCtx, f: impl Fn(FieldElement) -> FieldElement) -> Self {
        PermSpec { t: ctx.n(), table: ctx.elements().map(f).collect() }
    }

    pub fn identity(ctx: &FieldCtx) -> Self {
        Self::from_fn(ctx, |y| y)
    }

    /// `y -> c y`.
    pub fn linear(ctx: &FieldCtx, c: FieldElement) -> Self {
        Self::from_fn(ctx, |y| ctx.mul(c, y))
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn table(&self) -> &[FieldElement] {
        &self.table
    }

    pub fn apply(&self, y: FieldElement) -> FieldElement {
        self.table[y as usize]
    }

    pub fn is_bijection(&self) -> bool {
        is_bijective_table(&self.table)
    }

    /// Both `pi` and `pi + id` are bijections.
    pub fn is_complete_mapping(&self) -> bool {
        self.is_bijection() && self.add_identity().is_bijection()
    }

    /// `y -> pi(y) + y`.
    pub fn add_identity(&self) -> PermSpec {
        let table = self.table.iter().enumerate().map(|(y, &v)| v ^ y as u32).collect();
        PermSpec { t: self.t, table }
    }

    /// Maximum ANF degree of the coordinate functions, in self-dual coordinates.
    /// `None` for the zero map.
    pub fn algebraic_degree(&self, ctx: &FieldCtx) -> Option<u32> {
        (0..self.t)
            .filter_map(|j| {
                BooleanFunction::from_fn(self.t, |i| {
                    (ctx.coords(self.apply(ctx.from_coords(i))) >> j) & 1 == 1
                })
                .degree()
            })
            .max()
    }
}

fn is_bijective_table(table: &[u32]) -> bool {
    let mut seen = vec![false; table.len()];
    table.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
}

/// A realized Maiorana-McFarland function.
#[derive(Debug, Clone)]
pub struct MMFunction {
    pub t: u32,
    pub pi: PermSpec,
    pub h: UnivariatePoly,
    pub function: BooleanFunction,
}

/// Realizes `Tr(x pi(y) + h(y))` on `2t` variables.
pub fn mm_build(ctx: &FieldCtx, pi: &PermSpec, h: &UnivariatePoly) -> Result<MMFunction> {
    let t = ctx.n();
    if pi.t != t || h.n() != t {
        return Err(Error::FieldMismatch(format!("GF(2^{t})"), format!("GF(2^{})", pi.t.max(h.n()))));
    }
    if 2 * t > BooleanFunction::MAX_VARIABLES {
        return Err(Error::UnsupportedDegree(2 * t));
    }
    let size = ctx.size() as u32;
    // Row y is the linear function x -> <x, coords(pi(y))> plus the constant Tr(h(y)).
    let rows: Vec<(u32, bool)> = (0..size)
        .map(|yi| {
            let y = ctx.from_coords(yi);
            (ctx.coords(pi.apply(y)), ctx.trace(h.eval(ctx, y)))
        })
        .collect();
    let function = BooleanFunction::from_fn(2 * t, |i| {
        let (mask, c) = rows[(i >> t) as usize];
        ((i & (size - 1) & mask).count_ones() & 1 == 1) ^ c
    });
    Ok(MMFunction { t, pi: pi.clone(), h: h.clone(), function })
}

/// `pi(y) = y^{2^i}`: the negabent MM case governed by bentness of `Tr(h)`.
pub fn homo_build(ctx: &FieldCtx, i: u32, h: &UnivariatePoly) -> Result<MMFunction> {
    if i >= ctx.n() {
        return Err(Error::InvalidParameters(format!("need i < t = {}", ctx.n())));
    }
    let pi = PermSpec::from_fn(ctx, |y| ctx.frobenius(y, i));
    mm_build(ctx, &pi, h)
}

/// `Y_{a,b} = { y : pi(y) + pi(y + b) = a }`.
pub fn y_set(pi: &PermSpec, a: FieldElement, b: FieldElement) -> Vec<FieldElement> {
    (0..pi.table.len() as u32)
        .filter(|&y| pi.apply(y) ^ pi.apply(y ^ b) == a)
        .collect()
}

/// Negabentness of an MM bent function: for every `a, b != 0`,
/// `sum_{y in Y_{a,b}} (-1)^{Tr(a pi(y) + h(y) + h(y+b) + b y)} = 0`.
pub fn mm_negabent_test(ctx: &FieldCtx, m: &MMFunction) -> Result<bool> {
    if !m.pi.is_bijection() {
        return Err(Error::NotBijective);
    }
    if m.pi.t != ctx.n() {
        return Err(Error::FieldMismatch(format!("GF(2^{})", ctx.n()), format!("GF(2^{})", m.pi.t)));
    }
    let size = ctx.size();
    let hv: Vec<FieldElement> = ctx.elements().map(|y| m.h.eval(ctx, y)).collect();
    let mut sums = vec![0i64; size];
    for b in 1..size as u32 {
        sums.iter_mut().for_each(|s| *s = 0);
        for y in 0..size as u32 {
            let (p, q) = (m.pi.apply(y), m.pi.apply(y ^ b));
            let a = p ^ q;
            let e = ctx.mul(a, p) ^ hv[y as usize] ^ hv[(y ^ b) as usize] ^ ctx.mul(b, y);
            sums[a as usize] += if ctx.trace(e) { -1 } else { 1 };
        }
        // a = 0 never occurs for a bijective pi and b != 0
        if sums.iter().any(|&s| s != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multiplicative order of 2 modulo an odd `m > 1`.
pub fn order_of_two(m: u32) -> Result<u32> {
    if m < 2 || m.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("order of 2 mod {m} needs odd m > 1")));
    }
    let mut k = 1;
    let mut r = 2 % m;
    while r != 1 {
        r = r * 2 % m;
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YannVariant {
    /// `x (x^s + a)`
    One,
    /// `a x^{s+1}`
    Two,
}

/// Parameters of the two families over GF(2^{k l m}), `s = (2^{klm} - 1)/m`.
#[derive(Debug, Clone)]
pub struct YannParams {
    pub m: u32,
    pub ell: u32,
    pub k: u32,
    pub ctx: FieldCtx,
}

impl YannParams {
    pub fn new(m: u32, ell: u32) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidParameters(format!("m = {m}: need odd m >= 3")));
        }
        let k = order_of_two(m)?;
        if ell == 0 || k * ell * m > 24 {
            return Err(Error::InvalidParameters(format!("k l m = {}*{ell}*{m} outside 1..=24", k)));
        }
        Ok(YannParams { m, ell, k, ctx: make_field(k * ell * m, None)? })
    }

    pub fn degree(&self) -> u32 {
        self.k * self.ell * self.m
    }

    fn exponent(&self) -> u64 {
        self.ctx.group_order() / self.m as u64
    }

    /// Whether `a` satisfies the family's conditions: `a` in GF(2^{kl}) with
    /// `a^m != 1`; variant one also needs `(a + 1)^m != 1`, variant two `a != 0`.
    pub fn accepts(&self, variant: YannVariant, a: FieldElement) -> bool {
        let ctx = &self.ctx;
        let m = self.m as u64;
        let ok = a >> ctx.n() == 0 && ctx.in_subfield(self.k * self.ell, a) && ctx.pow(a, m) != 1;
        ok && match variant {
            YannVariant::One => ctx.pow(a ^ 1, m) != 1,
            YannVariant::Two => a != 0,
        }
    }

    /// Every admissible `a`, in increasing order.
    pub fn valid_a(&self, variant: YannVariant) -> Vec<FieldElement> {
        self.ctx.elements().filter(|&a| self.accepts(variant, a)).collect()
    }
}

pub fn yann_mapping(params: &YannParams, variant: YannVariant, a: FieldElement) -> Result<PermSpec> {
    if !params.accepts(variant, a) {
        return Err(Error::InvalidParameters(format!(
            "a = {a:#x} is not admissible for m = {}, l = {}",
            params.m, params.ell
        )));
    }
    let ctx = &params.ctx;
    let s = params.exponent();
    Ok(match variant {
        YannVariant::One => PermSpec::from_fn(ctx, |x| ctx.mul(x, ctx.pow(x, s) ^ a)),
        YannVariant::Two => PermSpec::from_fn(ctx, |x| ctx.mul(a, ctx.pow(x, s + 1))),
    })
}

/// Finds up to `max_count` distinct complete mappings of GF(2^t).
///
/// `t <= 3` is searched exhaustively in lexicographic order; larger `t` use
/// a seeded min-conflict local search over permutations. With
/// `degree_of_sum = Some(d)` only mappings with `deg(pi + id) = d` are kept.
pub fn search_complete_mappings(
    ctx: &FieldCtx,
    max_count: usize,
    seed: u64,
    degree_of_sum: Option<u32>,
) -> Vec<PermSpec> {
    let keep = |p: &PermSpec| degree_of_sum.is_none_or(|d| p.add_identity().algebraic_degree(ctx) == Some(d));
    if max_count == 0 {
        return Vec::new();
    }
    if ctx.n() <= 3 {
        let mut out = Vec::new();
        let size = ctx.size();
        let mut table = vec![0u32; size];
        let mut used = vec![false; size];
        let mut used_sum = vec![false; size];
        dfs(0, &mut table, &mut used, &mut used_sum, &mut |tab| {
            let p = PermSpec { t: ctx.n(), table: tab.to_vec() };
            if keep(&p) {
                out.push(p);
            }
            out.len() < max_count
        });
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = HashSet::new();
    let mut out = Vec::new();
    let budget = 200 * max_count;
    for _ in 0..budget {
        if out.len() >= max_count {
            break;
        }
        if let Some(table) = local_search(ctx.size(), &mut rng) {
            let p = PermSpec { t: ctx.n(), table };
            if keep(&p) && found.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    out
}

/// Returns false from `emit` to stop.
fn dfs(
    y: usize,
    table: &mut [u32],
    used: &mut [bool],
    used_sum: &mut [bool],
    emit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    if y == table.len() {
        return emit(table);
    }
    for v in 0..table.len() {
        let s = v ^ y;
        if used[v] || used_sum[s] {
            continue;
        }
        used[v] = true;
        used_sum[s] = true;
        table[y] = v as u32;
        let go_on = dfs(y + 1, table, used, used_sum, emit);
        used[v] = false;
        used_sum[s] = false;
        if !go_on {
            return false;
        }
    }
    true
}

/// One restart: swap entries of a random permutation until `p(y) + y` is also a permutation.
fn local_search(size: usize, rng: &mut ChaCha8Rng) -> Option<Vec<u32>> {
    let mut p: Vec<u32> = (0..size as u32).collect();
    p.shuffle(rng);
    let mut cnt = vec![0u32; size];
    for (y, &v) in p.iter().enumerate() {
        cnt[(v ^ y as u32) as usize] += 1;
    }
    let mut cost: i64 = cnt.iter().map(|&c| c.saturating_sub(1) as i64).sum();
    for _ in 0..100 * size {
        if cost == 0 {
            return Some(p);
        }
        let conflicted: Vec<usize> =
            (0..size).filter(|&y| cnt[(p[y] ^ y as u32) as usize] > 1).collect();
        let y = *conflicted.choose(rng).expect("positive cost has a conflict");
        let z = if rng.gen_bool(0.1) {
            let mut z = rng.gen_range(0..size);
            while z == y {
                z = rng.gen_range(0..size);
            }
            z
        } else {
            let mut best = i64::MAX;
            let mut ties = Vec::new();
            for z in (0..size).filter(|&z| z != y) {
                let d = swap_delta(&mut cnt, &p, y, z);
                if d < best {
                    best = d;
                    ties.clear();
                }
                if d == best {
                    ties.push(z);
                }
            }
            *ties.choose(rng).expect("size > 1")
        };
        cost += swap_delta(&mut cnt, &p, y, z);
        for (w, delta) in [(y, -1i64), (z, -1)] {
            let idx = (p[w] ^ w as u32) as usize;
            cnt[idx] = (cnt[idx] as i64 + delta) as u32;
        }
        p.swap(y, z);
        for w in [y, z] {
            cnt[(p[w] ^ w as u32) as usize] += 1;
        }
    }
    None
}

/// Change in `sum max(cnt - 1, 0)` if `p[y]` and `p[z]` were swapped; `cnt` is restored.
fn swap_delta(cnt: &mut [u32], p: &[u32], y: usize, z: usize) -> i64 {
    let old = [(p[y] ^ y as u32) as usize, (p[z] ^ z as u32) as usize];
    let new = [(p[z] ^ y as u32) as usize, (p[y] ^ z as u32) as usize];
    let mut delta = 0;
    for &v in &old {
        if cnt[v] > 1 {
            delta -= 1;
        }
        cnt[v] -= 1;
    }
    for &v in &new {
        if cnt[v] >= 1 {
            delta += 1;
        }
        cnt[v] += 1;
    }
    for &v in &new {
        cnt[v] -= 1;
    }
    for &v in &old {
        cnt[v] += 1;
    }
    delta
}
