//! Quadratic monomials `Tr(l x^{2^k+1})`: negabentness through the linearized
//! polynomial `P(x) = l^{2^{n-k}} x^{2^{n-k}} + l x^{2^k} + x`, the `Z_t`
//! recursion and its explicit root set, bentness through the power-map image,
//! and the counting that guarantees bent-negabent coefficients exist.

use serde::{Deserialize, Serialize};

use crate::bitmatrix::BitMatrix;
use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// `sum_i c_i x^{2^i}` over GF(2^n); `coeffs[i]` is `c_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    coeffs: Vec<FieldElement>,
}

impl LinearizedPoly {
    pub fn new(ctx: &FieldCtx, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() != ctx.n() as usize {
            return Err(Error::InvalidParameters(format!(
                "linearized polynomial needs {} coefficients, got {}",
                ctx.n(),
                coeffs.len()
            )));
        }
        Ok(LinearizedPoly { coeffs })
    }

    /// Sums `(c, i)` terms, reducing `i` modulo `n`.
    pub fn from_terms(ctx: &FieldCtx, terms: &[(FieldElement, u32)]) -> Self {
        let mut coeffs = vec![0; ctx.n() as usize];
        for &(c, i) in terms {
            coeffs[(i % ctx.n()) as usize] ^= c;
        }
        LinearizedPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .fold(0, |acc, (i, &c)| acc ^ ctx.mul(c, ctx.frobenius(x, i as u32)))
    }

    /// Matrix of the map in the polynomial basis (column `j` is the image of `x^j`).
    pub fn matrix(&self, ctx: &FieldCtx) -> BitMatrix {
        let images: Vec<u32> = (0..ctx.n()).map(|j| self.eval(ctx, 1 << j)).collect();
        BitMatrix::from_columns(&images, ctx.n() as usize)
    }

    /// A basis of the roots.
    pub fn kernel(&self, ctx: &FieldCtx) -> Vec<FieldElement> {
        self.matrix(ctx).kernel()
    }
}

/// A linearized polynomial permutes the field iff its only root is zero.
pub fn linearized_is_permutation(ctx: &FieldCtx, l: &LinearizedPoly) -> bool {
    l.matrix(ctx).rank() == ctx.n()
}

fn check_gold(ctx: &FieldCtx, lambda: FieldElement, k: u32) -> Result<()> {
    if lambda == 0 {
        return Err(Error::ZeroCoefficient);
    }
    if k == 0 || k >= ctx.n() || lambda >> ctx.n() != 0 {
        return Err(Error::InvalidGoldParameter { n: ctx.n(), k });
    }
    Ok(())
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `x^{2^k + 1}`.
#[inline]
fn gold_power(ctx: &FieldCtx, x: FieldElement, k: u32) -> FieldElement {
    ctx.mul(ctx.frobenius(x, k), x)
}

/// Truth table of `x -> Tr(l x^{2^k+1})`.
pub fn gold_function(ctx: &FieldCtx, lambda: FieldElement, k: u32) -> Result<BooleanFunction> {
    check_gold(ctx, lambda, k)?;
    Ok(gold_table(ctx, lambda, k))
}

fn gold_table(ctx: &FieldCtx, lambda: FieldElement, k: u32) -> BooleanFunction {
    BooleanFunction::from_fn(ctx.n(), |i| {
        let x = ctx.from_coords(i);
        ctx.trace(ctx.mul(lambda, gold_power(ctx, x, k)))
    })
}

/// `x^{2^k+1}` for every table index, for building many Gold functions with one `k`.
pub fn gold_powers(ctx: &FieldCtx, k: u32) -> Vec<FieldElement> {
    (0..ctx.size() as u32).map(|i| gold_power(ctx, ctx.from_coords(i), k)).collect()
}

/// Gold function from a [`gold_powers`] table; no parameter checks.
pub fn gold_from_powers(ctx: &FieldCtx, powers: &[FieldElement], lambda: FieldElement) -> BooleanFunction {
    BooleanFunction::from_fn(ctx.n(), |i| ctx.trace(ctx.mul(lambda, powers[i as usize])))
}

/// `P(x) = l^{2^{n-k}} x^{2^{n-k}} + l x^{2^k} + x`.
pub fn negabent_poly(ctx: &FieldCtx, lambda: FieldElement, k: u32) -> LinearizedPoly {
    let n = ctx.n();
    LinearizedPoly::from_terms(ctx, &[(ctx.frobenius(lambda, n - k), n - k), (lambda, k), (1, 0)])
}

/// `M(x) = l^{2^{n-k}} x^{2^{n-k}} + l x^{2^k}`, the derivative map of the Gold function.
pub fn bent_poly(ctx: &FieldCtx, lambda: FieldElement, k: u32) -> LinearizedPoly {
    let n = ctx.n();
    LinearizedPoly::from_terms(ctx, &[(ctx.frobenius(lambda, n - k), n - k), (lambda, k)])
}

pub fn is_negabent_monomial(ctx: &FieldCtx, lambda: FieldElement, k: u32) -> Result<bool> {
    check_gold(ctx, lambda, k)?;
    Ok(linearized_is_permutation(ctx, &negabent_poly(ctx, lambda, k)))
}

/// `(d, t)` with `d = gcd(k, n)` and `n = t d`.
pub fn split_degree(n: u32, k: u32) -> (u32, u32) {
    let d = gcd(k as u64, n as u64) as u32;
    (d, n / d)
}

/// `Z_t(l)` from `C_1 = C_2 = 1`, `C_{i+2} = C_{i+1} + l^{2^{ik}} C_i` and
/// `Z_t = C_{t+1} + l C_{t-1}^{2^k}`.
pub fn zt_eval(ctx: &FieldCtx, lambda: FieldElement, k: u32) -> Result<FieldElement> {
    let n = ctx.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidGoldParameter { n, k });
    }
    let (_, t) = split_degree(n, k);
    if t <= 1 {
        return Err(Error::InvalidParameters("Z_t needs t > 1".into()));
    }
    // c[i] holds C_i; index 0 unused.
    let t = t as usize;
    let mut c = vec![0u32; t + 2];
    c[1] = 1;
    c[2] = 1;
    for i in 1..t {
        let twist = ctx.frobenius(lambda, ((i as u64 * k as u64) % n as u64) as u32);
        c[i + 2] = c[i + 1] ^ ctx.mul(twist, c[i]);
    }
    Ok(c[t + 1] ^ ctx.mul(lambda, ctx.frobenius(c[t - 1], k)))
}

/// Every value of `v^{2^{2k}+1} / (v + v^{2^k})^{2^k+1}` for `v` outside GF(2^d),
/// sorted and deduplicated.
pub fn zt_root_set(ctx: &FieldCtx, k: u32) -> Result<Vec<FieldElement>> {
    let n = ctx.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidGoldParameter { n, k });
    }
    let (d, _) = split_degree(n, k);
    let mut seen = vec![false; ctx.size()];
    for v0 in ctx.elements().filter(|&v| !ctx.in_subfield(d, v)) {
        let v1 = ctx.frobenius(v0, k);
        let num = ctx.mul(ctx.frobenius(v0, 2 * k), v0);
        let den = gold_power(ctx, v0 ^ v1, k);
        let root = ctx.mul(num, ctx.inverse(den)?);
        seen[root as usize] = true;
    }
    Ok(ctx.elements().filter(|&x| seen[x as usize]).collect())
}

/// Closed-form size of the root set: `(2^{n+d} - 2^d)/(2^{2d} - 1)` for even `t`,
/// `(2^{n+d} - 2^{2d})/(2^{2d} - 1)` for odd `t`.
pub fn root_count_formula(n: u32, k: u32) -> u64 {
    let (d, t) = split_degree(n, k);
    let sub = if t % 2 == 0 { 1u64 << d } else { 1u64 << (2 * d) };
    ((1u64 << (n + d)) - sub) / ((1u64 << (2 * d)) - 1)
}

/// Membership table of `{ x^{2^k+1} : x in GF(2^n) }` (zero included).
pub fn power_image(ctx: &FieldCtx, k: u32) -> Vec<bool> {
    let mut image = vec![false; ctx.size()];
    for x in ctx.elements() {
        image[gold_power(ctx, x, k) as usize] = true;
    }
    image
}

pub fn is_bent_monomial(ctx: &FieldCtx, lambda: FieldElement, k: u32) -> Result<bool> {
    check_gold(ctx, lambda, k)?;
    if ctx.n() % 2 == 1 {
        return Err(Error::OddDegree(ctx.n()));
    }
    Ok(!power_image(ctx, k)[lambda as usize])
}

/// Both `M(x)` and `M(x) + x` permute the field, i.e. `M` is a complete mapping.
pub fn complete_mapping_check(ctx: &FieldCtx, lambda: FieldElement, k: u32) -> Result<bool> {
    check_gold(ctx, lambda, k)?;
    if ctx.n() % 2 == 1 {
        return Err(Error::OddDegree(ctx.n()));
    }
    Ok(linearized_is_permutation(ctx, &bent_poly(ctx, lambda, k))
        && linearized_is_permutation(ctx, &negabent_poly(ctx, lambda, k)))
}

/// `l` is neither a `(2^k+1)`-th power nor a root of `Z_t`.
pub fn is_bent_negabent_monomial(ctx: &FieldCtx, lambda: FieldElement, k: u32) -> Result<bool> {
    let class = MonomialClass::new(ctx, k)?;
    class.is_bent_negabent(lambda)
}

/// Per-`(n, k)` cache of the power image and the `Z_t` root set.
#[derive(Debug, Clone)]
pub struct MonomialClass {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    pub t: u32,
    power_image: Vec<bool>,
    roots: Vec<bool>,
}

impl MonomialClass {
    pub fn new(ctx: &FieldCtx, k: u32) -> Result<Self> {
        let n = ctx.n();
        if k == 0 || k >= n {
            return Err(Error::InvalidGoldParameter { n, k });
        }
        let (d, t) = split_degree(n, k);
        let mut roots = vec![false; ctx.size()];
        for r in zt_root_set(ctx, k)? {
            roots[r as usize] = true;
        }
        Ok(MonomialClass { n, k, d, t, power_image: power_image(ctx, k), roots })
    }

    pub fn in_power_image(&self, lambda: FieldElement) -> bool {
        self.power_image[lambda as usize]
    }

    pub fn is_zt_root(&self, lambda: FieldElement) -> bool {
        self.roots[lambda as usize]
    }

    pub fn power_image_size(&self) -> usize {
        self.power_image.iter().filter(|&&b| b).count()
    }

    pub fn root_set_size(&self) -> usize {
        self.roots.iter().filter(|&&b| b).count()
    }

    pub fn is_negabent(&self, lambda: FieldElement) -> Result<bool> {
        if lambda == 0 {
            return Err(Error::ZeroCoefficient);
        }
        Ok(!self.is_zt_root(lambda))
    }

    pub fn is_bent(&self, lambda: FieldElement) -> Result<bool> {
        if lambda == 0 {
            return Err(Error::ZeroCoefficient);
        }
        if self.n % 2 == 1 {
            return Err(Error::OddDegree(self.n));
        }
        Ok(!self.in_power_image(lambda))
    }

    pub fn is_bent_negabent(&self, lambda: FieldElement) -> Result<bool> {
        Ok(self.is_bent(lambda)? && self.is_negabent(lambda)?)
    }
}

/// Cardinalities behind the existence argument for quadratic bent-negabent monomials.
///
/// `S_1` is the image of `x -> x^{2^k+1}`; it is reported with zero
/// (`s1`, the set over all of GF(2^n)) and without (`s1_nonzero`, the image of
/// the multiplicative group). `S_2` is the `Z_t` root set, which never contains zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub n: u32,
    pub k: u32,
    pub d: u32,
    pub t: u32,
    pub power_gcd: u64,
    pub s1: u64,
    pub s1_nonzero: u64,
    pub s2: u64,
    pub s2_formula: u64,
    pub intersection: u64,
    pub union: u64,
    pub union_nonzero: u64,
    /// `2^n - |S_1 u S_2|` with zero in `S_1`: exactly the number of bent-negabent `l`.
    pub surplus: u64,
    /// `2^n - |S_1^* u S_2|`, the quantity bounded in the counting argument.
    pub surplus_nonzero: u64,
    /// `(2^n - 1) / 3`.
    pub s1_nonzero_bound: u64,
}

impl Census {
    /// `surplus_nonzero >= |S_1 n S_2| + 1`.
    pub fn counting_inequality_holds(&self) -> bool {
        self.surplus_nonzero > self.intersection
    }
}

pub fn existence_census(ctx: &FieldCtx, k: u32) -> Result<Census> {
    let class = MonomialClass::new(ctx, k)?;
    let n = ctx.n();
    let size = ctx.size() as u64;
    let mut inter = 0;
    let mut union = 0;
    for x in ctx.elements() {
        let (a, b) = (class.in_power_image(x), class.is_zt_root(x));
        inter += (a && b) as u64;
        union += (a || b) as u64;
    }
    let s1 = class.power_image_size() as u64;
    // zero is always in the power image and never a root
    let union_nonzero = union - 1;
    Ok(Census {
        n,
        k,
        d: class.d,
        t: class.t,
        power_gcd: gcd((1u64 << k) + 1, size - 1),
        s1,
        s1_nonzero: s1 - 1,
        s2: class.root_set_size() as u64,
        s2_formula: root_count_formula(n, k),
        intersection: inter,
        union,
        union_nonzero,
        surplus: size - union,
        surplus_nonzero: size - union_nonzero,
        s1_nonzero_bound: (size - 1) / 3,
    })
}
