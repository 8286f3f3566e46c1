//! Truth tables, algebraic normal form, and univariate trace polynomials.

use std::fmt;

use crate::affine::AffineTransform;
use crate::bitmatrix::LinearMap;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// An `n`-variable Boolean function stored as a packed truth table.
///
/// Bit `i` of the table is `f` evaluated at the input whose coordinate vector is `i`.
/// For functions on GF(2^n) those coordinates are the self-dual ones of [`FieldCtx`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: u32,
    words: Vec<u64>,
}

const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

fn word_count(n: u32) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

fn valid_mask(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl BooleanFunction {
    pub const MAX_VARIABLES: u32 = 30;

    pub fn zero(n: u32) -> Self {
        assert!(n <= Self::MAX_VARIABLES, "too many variables: {n}");
        BooleanFunction { n, words: vec![0; word_count(n)] }
    }

    pub fn constant(n: u32, value: bool) -> Self {
        let mut f = Self::zero(n);
        if value {
            let mask = valid_mask(n);
            f.words.iter_mut().for_each(|w| *w = mask);
        }
        f
    }

    pub fn from_fn(n: u32, mut f: impl FnMut(u32) -> bool) -> Self {
        let mut out = Self::zero(n);
        for x in 0..(1u32 << n) {
            if f(x) {
                out.words[(x >> 6) as usize] |= 1 << (x & 63);
            }
        }
        out
    }

    pub fn from_bools(bits: &[bool]) -> Result<Self> {
        if !bits.len().is_power_of_two() {
            return Err(Error::Parse(format!("truth table length {} is not a power of two", bits.len())));
        }
        let n = bits.len().trailing_zeros();
        Ok(Self::from_fn(n, |x| bits[x as usize]))
    }

    /// Packed words, bit `i` of word `w` is entry `64 w + i`.
    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self> {
        if n > Self::MAX_VARIABLES || words.len() != word_count(n) || words[0] & !valid_mask(n) != 0 {
            return Err(Error::Parse(format!("word buffer does not fit {n} variables")));
        }
        Ok(BooleanFunction { n, words })
    }

    /// `x -> <mask, x>`.
    pub fn linear(n: u32, mask: u32) -> Self {
        Self::from_fn(n, |x| (x & mask).count_ones() & 1 == 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, x: u32) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: u32, v: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        if v {
            *w |= 1 << (x & 63);
        } else {
            *w &= !(1 << (x & 63));
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len() as u32).map(move |x| self.get(x))
    }

    /// `(-1)^{f(x)}` for every `x`.
    pub fn signs(&self) -> Vec<i64> {
        self.iter().map(|b| if b { -1 } else { 1 }).collect()
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.weight() * 2 == self.len() as u64
    }

    /// `Some(c)` when the function is the constant `c`.
    pub fn constant_value(&self) -> Option<bool> {
        match self.weight() {
            0 => Some(false),
            w if w == self.len() as u64 => Some(true),
            _ => None,
        }
    }

    pub fn xor(&self, other: &BooleanFunction) -> Result<BooleanFunction> {
        if self.n != other.n {
            return Err(Error::VariableMismatch(self.n, other.n));
        }
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Ok(BooleanFunction { n: self.n, words })
    }

    pub fn complement(&self) -> BooleanFunction {
        let mask = valid_mask(self.n);
        let words = self.words.iter().map(|w| !w & mask).collect();
        BooleanFunction { n: self.n, words }
    }

    /// `x -> f(x ^ a)`.
    pub fn translate(&self, a: u32) -> BooleanFunction {
        let high = (a >> 6) as usize;
        let low = a & 63;
        let mut words = vec![0u64; self.words.len()];
        for (i, w) in words.iter_mut().enumerate() {
            let mut v = self.words[i ^ high];
            for (s, mask) in LOW_MASKS.iter().enumerate() {
                if (low >> s) & 1 == 1 {
                    let sh = 1 << s;
                    v = ((v & mask) << sh) | ((v >> sh) & mask);
                }
            }
            *w = v;
        }
        BooleanFunction { n: self.n, words }
    }

    /// `D_a f (x) = f(x) + f(x + a)`.
    pub fn derivative(&self, a: u32) -> BooleanFunction {
        self.xor(&self.translate(a)).expect("same variable count")
    }

    /// Nonzero `a` for which `D_a f` is constant.
    pub fn linear_structures(&self) -> Vec<u32> {
        (1..self.len() as u32)
            .filter(|&a| self.derivative(a).constant_value().is_some())
            .collect()
    }

    pub fn anf(&self) -> Anf {
        Anf { coeffs: self.mobius() }
    }

    /// Algebraic degree; `None` for the zero function.
    pub fn degree(&self) -> Option<u32> {
        self.anf().degree()
    }

    /// Binary Moebius transform; an involution.
    fn mobius(&self) -> BooleanFunction {
        let mut words = self.words.clone();
        for s in 0..self.n.min(6) {
            let sh = 1 << s;
            for w in words.iter_mut() {
                *w ^= (*w & LOW_MASKS[s as usize]) << sh;
            }
        }
        let mut h = 1;
        while h < words.len() {
            for block in (0..words.len()).step_by(2 * h) {
                for j in block..block + h {
                    words[j + h] ^= words[j];
                }
            }
            h *= 2;
        }
        BooleanFunction { n: self.n, words }
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, ", self.n)?;
        if self.n <= 8 {
            for b in self.iter() {
                write!(f, "{}", b as u8)?;
            }
        } else {
            write!(f, "weight={}", self.weight())?;
        }
        write!(f, ")")
    }
}

/// Algebraic normal form: coefficient `a` multiplies the monomial `prod_{i in a} x_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Anf {
    coeffs: BooleanFunction,
}

impl Anf {
    pub fn from_coefficients(coeffs: BooleanFunction) -> Self {
        Anf { coeffs }
    }

    pub fn n(&self) -> u32 {
        self.coeffs.n
    }

    pub fn coeff(&self, monomial: u32) -> bool {
        self.coeffs.get(monomial)
    }

    pub fn coefficients(&self) -> &BooleanFunction {
        &self.coeffs
    }

    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.coeffs.len() as u32).filter(|&a| self.coeffs.get(a))
    }

    pub fn degree(&self) -> Option<u32> {
        self.monomials().map(|a| a.count_ones()).max()
    }

    pub fn to_function(&self) -> BooleanFunction {
        self.coeffs.mobius()
    }
}

/// `result(x) = f(A x + b) + <l, x> + c`.
pub fn compose_affine(f: &BooleanFunction, t: &AffineTransform) -> Result<BooleanFunction> {
    if t.n() != f.n() {
        return Err(Error::VariableMismatch(f.n(), t.n()));
    }
    if !t.matrix().is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let map = LinearMap::from_matrix(t.matrix());
    let (b, l, c) = (t.translation(), t.functional(), t.constant());
    Ok(BooleanFunction::from_fn(f.n(), |x| {
        f.get(map.apply(x) ^ b) ^ ((x & l).count_ones() & 1 == 1) ^ c
    }))
}

/// A polynomial `sum c_i x^{e_i}` over GF(2^n).
///
/// Exponents are reduced with `x^{2^n} = x`: a positive exponent lands in
/// `1..=2^n - 1` (so `x^{2^n - 1}` stays distinct from the constant term).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnivariatePoly {
    n: u32,
    terms: Vec<(FieldElement, u64)>,
}

impl UnivariatePoly {
    pub fn new(ctx: &FieldCtx, terms: impl IntoIterator<Item = (FieldElement, u64)>) -> Self {
        let n = ctx.n();
        let ord = ctx.group_order();
        let mut merged: Vec<(FieldElement, u64)> = Vec::new();
        for (c, e) in terms {
            let e = if e == 0 { 0 } else { (e - 1) % ord + 1 };
            match merged.iter_mut().find(|(_, f)| *f == e) {
                Some(t) => t.0 ^= c,
                None => merged.push((c, e)),
            }
        }
        merged.retain(|(c, _)| *c != 0);
        merged.sort_by_key(|&(_, e)| e);
        UnivariatePoly { n, terms: merged }
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        Self::new(ctx, [])
    }

    pub fn monomial(ctx: &FieldCtx, coeff: FieldElement, exp: u64) -> Self {
        Self::new(ctx, [(coeff, exp)])
    }

    /// The identity map `x`.
    pub fn x(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, 1, 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &[(FieldElement, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, ctx: &FieldCtx, other: &UnivariatePoly) -> UnivariatePoly {
        Self::new(ctx, self.terms.iter().chain(&other.terms).copied())
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement) -> FieldElement {
        self.terms.iter().fold(0, |acc, &(c, e)| acc ^ ctx.mul(c, ctx.pow(x, e)))
    }

    /// Maximum binary weight of an exponent. An upper bound for the degree of
    /// `Tr(F)`; cancellations such as `Tr(x^{2^n-1}) = 0` for even `n` can lower it.
    pub fn algebraic_degree(&self) -> Option<u32> {
        self.terms.iter().map(|&(_, e)| e.count_ones()).max()
    }

    /// Parses `coefhex*x^exp` terms separated by `,` or `+`. A bare `x^e`
    /// has coefficient 1 and a bare hex constant has exponent 0.
    pub fn parse(ctx: &FieldCtx, s: &str) -> Result<Self> {
        let bad = |t: &str| Error::Parse(format!("bad polynomial term {t:?}"));
        let mut terms = Vec::new();
        for raw in s.split([',', '+']) {
            let t = raw.trim();
            if t.is_empty() {
                continue;
            }
            let (coef, mono) = match t.split_once('*') {
                Some((c, m)) => (Some(c.trim()), Some(m.trim())),
                None if t.starts_with('x') => (None, Some(t)),
                None => (Some(t), None),
            };
            let coef = match coef {
                Some(c) => u32::from_str_radix(c.trim_start_matches("0x"), 16).map_err(|_| bad(t))?,
                None => 1,
            };
            if coef >> ctx.n() != 0 {
                return Err(Error::Parse(format!("coefficient {coef:#x} is not in GF(2^{})", ctx.n())));
            }
            let exp = match mono {
                None => 0,
                Some("x") => 1,
                Some(m) => m
                    .strip_prefix("x^")
                    .and_then(|e| e.trim().parse::<u64>().ok())
                    .ok_or_else(|| bad(t))?,
            };
            terms.push((coef, exp));
        }
        Ok(Self::new(ctx, terms))
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, e)| format!("{c:x}*x^{e}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `x -> Tr(F(x))` over the self-dual index convention.
pub fn from_trace_poly(ctx: &FieldCtx, poly: &UnivariatePoly) -> BooleanFunction {
    BooleanFunction::from_fn(ctx.n(), |i| ctx.trace(poly.eval(ctx, ctx.from_coords(i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn constant_one_has_degree_zero() {
        for n in 0..8 {
            let anf = BooleanFunction::constant(n, true).anf();
            assert_eq!(anf.monomials().collect::<Vec<_>>(), vec![0]);
            assert_eq!(anf.degree(), Some(0));
        }
        assert_eq!(BooleanFunction::zero(5).degree(), None);
    }

    #[test]
    fn mobius_is_an_involution_on_all_three_variable_functions() {
        for tt in 0..256u64 {
            let f = BooleanFunction::from_words(3, vec![tt]).unwrap();
            assert_eq!(f.anf().to_function(), f);
        }
    }

    #[test]
    fn product_of_two_variables() {
        let f = BooleanFunction::from_fn(2, |x| x == 3);
        let anf = f.anf();
        assert_eq!(anf.monomials().collect::<Vec<_>>(), vec![3]);
        assert_eq!(f.degree(), Some(2));
        assert!(f.linear_structures().is_empty());
    }

    #[test]
    fn translate_matches_pointwise_definition() {
        for n in [3u32, 6, 7, 9] {
            let f = BooleanFunction::from_fn(n, |x| (x.wrapping_mul(2654435761) >> 7) & 1 == 1);
            for a in [0u32, 1, 5, 63, (1 << n) - 1, 1 << (n - 1)] {
                let g = f.translate(a);
                for x in 0..(1u32 << n) {
                    assert_eq!(g.get(x), f.get(x ^ a));
                }
            }
        }
    }

    #[test]
    fn derivative_at_zero_vanishes() {
        let f = BooleanFunction::from_fn(7, |x| x % 3 == 1);
        assert_eq!(f.derivative(0), BooleanFunction::zero(7));
    }

    #[test]
    fn affine_functions_have_every_linear_structure() {
        let f = BooleanFunction::linear(4, 0b1011).complement();
        assert_eq!(f.linear_structures().len(), 15);
        assert!(BooleanFunction::linear(4, 0b0110).is_balanced());
    }

    #[test]
    fn mismatched_xor() {
        let err = BooleanFunction::zero(3).xor(&BooleanFunction::zero(4)).unwrap_err();
        assert_eq!(err, Error::VariableMismatch(3, 4));
    }

    #[test]
    fn trace_of_identity_is_balanced() {
        let ctx = make_field(4, None).unwrap();
        assert_eq!(from_trace_poly(&ctx, &UnivariatePoly::zero(&ctx)), BooleanFunction::zero(4));
        let f = from_trace_poly(&ctx, &UnivariatePoly::x(&ctx));
        assert_eq!(f.weight(), 8);
        assert_eq!(f.degree(), Some(1));
    }

    #[test]
    fn trace_of_all_ones_exponent() {
        // y^{2^t - 1} is the indicator of y != 0, so its trace is Tr(1) times that indicator.
        let odd = make_field(3, None).unwrap();
        let f = from_trace_poly(&odd, &UnivariatePoly::monomial(&odd, 1, 7));
        assert_eq!(f.degree(), Some(3));
        let even = make_field(6, None).unwrap();
        let g = from_trace_poly(&even, &UnivariatePoly::monomial(&even, 1, 63));
        assert_eq!(g.degree(), None);
        let c = even.elements().find(|&c| even.trace(c)).unwrap();
        let g = from_trace_poly(&even, &UnivariatePoly::monomial(&even, c, 63));
        assert_eq!(g.degree(), Some(6));
        // Tr(y^7) on GF(2^6): exponent weight 3, ANF agrees.
        let h = from_trace_poly(&even, &UnivariatePoly::monomial(&even, 1, 7));
        assert_eq!(h.degree(), Some(3));
    }

    #[test]
    fn exponent_reduction() {
        let ctx = make_field(4, None).unwrap();
        let p = UnivariatePoly::new(&ctx, [(1, 16), (1, 1), (3, 15), (2, 0)]);
        assert_eq!(p.terms(), &[(2, 0), (3, 15)]);
        assert_eq!(UnivariatePoly::new(&ctx, [(1, 30)]).terms(), &[(1, 15)]);
    }

    #[test]
    fn poly_parse_and_display() {
        let ctx = make_field(4, None).unwrap();
        let p = UnivariatePoly::parse(&ctx, "3*x^5, x^3 + 1, a*x").unwrap();
        assert_eq!(p.terms(), &[(1, 0), (0xa, 1), (1, 3), (3, 5)]);
        assert_eq!(p.to_string(), "1*x^0,a*x^1,1*x^3,3*x^5");
        assert_eq!(UnivariatePoly::parse(&ctx, &p.to_string()).unwrap(), p);
        assert!(UnivariatePoly::parse(&ctx, "1*y^2").is_err());
        assert!(UnivariatePoly::parse(&ctx, "10*x^2").is_err());
        assert!(UnivariatePoly::parse(&ctx, "").unwrap().is_zero());
    }

    #[test]
    fn field_multiplication_is_not_coordinatewise() {
        let ctx = make_field(4, None).unwrap();
        let differs = ctx.elements().any(|x| {
            ctx.elements()
                .any(|y| ctx.coords(ctx.mul(x, y)) != ctx.coords(x) & ctx.coords(y))
        });
        assert!(differs);
    }
}
