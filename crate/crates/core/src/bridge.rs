//! The quadratic bridge `Q`, the bent <-> negabent transport `f -> f + Q`,
//! affine equivalence of quadratic bent functions, and the optimal-degree
//! bent-negabent construction built on complete mappings.

use serde::{Deserialize, Serialize};

use crate::affine::AffineTransform;
use crate::bitmatrix::BitMatrix;
use crate::boolfun::{compose_affine, BooleanFunction, UnivariatePoly};
use crate::error::{Error, Result};
use crate::field::{make_field, FieldCtx, FieldElement};
use crate::mm::{mm_build, search_complete_mappings, PermSpec, YannParams, YannVariant};
use crate::spectra::{is_bent, is_negabent, symplectic_matrix};

/// `sum_{i<j} B_ij x_i x_j + <l, x> + c` with `B` symmetric and zero on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub n: u32,
    pub b: BitMatrix,
    pub l: u32,
    pub c: bool,
}

impl QuadraticForm {
    pub fn new(b: BitMatrix, l: u32, c: bool) -> Result<Self> {
        let n = b.ncols();
        if !b.is_symmetric() || (0..n).any(|i| b.get(i, i)) {
            return Err(Error::InvalidParameters("B must be symmetric with zero diagonal".into()));
        }
        Ok(QuadraticForm { n: n as u32, b, l, c })
    }

    /// Reads the form off the ANF; fails above degree two.
    pub fn from_function(f: &BooleanFunction) -> Result<Self> {
        let b = symplectic_matrix(f)?;
        let anf = f.anf();
        let l = anf.monomials().filter(|m| m.count_ones() == 1).fold(0, |acc, m| acc | m);
        Ok(QuadraticForm { n: f.n(), b, l, c: anf.coeff(0) })
    }

    pub fn eval(&self, x: u32) -> bool {
        let mut acc = (x & self.l).count_ones() & 1 == 1;
        for i in 0..self.n as usize {
            if (x >> i) & 1 == 1 {
                // pairs i < j only
                let upper = self.b.row(i) & !((2u32 << i) - 1);
                acc ^= (upper & x).count_ones() & 1 == 1;
            }
        }
        acc ^ self.c
    }

    pub fn to_function(&self) -> BooleanFunction {
        BooleanFunction::from_fn(self.n, |x| self.eval(x))
    }

    pub fn is_bent(&self) -> bool {
        self.b.rank() == self.n
    }
}

fn check_even(n: u32) -> Result<()> {
    if n % 2 == 1 {
        Err(Error::OddDegree(n))
    } else {
        Ok(())
    }
}

/// `Q(x) = sum_{i=1}^{n/2-1} Tr(x^{2^i+1}) + Tr_1^{n/2}(x^{2^{n/2}+1})`.
pub fn q_function(ctx: &FieldCtx) -> Result<BooleanFunction> {
    let n = ctx.n();
    check_even(n)?;
    let half = n / 2;
    let mut err = None;
    let f = BooleanFunction::from_fn(n, |i| {
        let x = ctx.from_coords(i);
        let mut v = (1..half).fold(false, |acc, j| acc ^ ctx.trace(ctx.mul(ctx.frobenius(x, j), x)));
        // x^{2^{n/2}+1} is the norm to GF(2^{n/2})
        match ctx.subfield_trace(half, ctx.mul(ctx.frobenius(x, half), x)) {
            Ok(b) => v ^= b,
            Err(e) => err = Some(e),
        }
        v
    });
    match err {
        Some(e) => Err(Error::Internal(format!("norm outside the half field: {e}"))),
        None => Ok(f),
    }
}

/// Constant `c` such that `Q(x) + Q(x+a) = Tr(a)Tr(x) + Tr(ax) + c` for all `x`,
/// or `None` if no constant makes the identity hold. `a` is a field element.
pub fn q_derivative_constant(ctx: &FieldCtx, q: &BooleanFunction, a: FieldElement) -> Option<bool> {
    let ta = ctx.trace(a);
    let shift = ctx.coords(a);
    let rhs = |i: u32| {
        let x = ctx.from_coords(i);
        (ta && ctx.trace(x)) ^ ctx.trace(ctx.mul(a, x))
    };
    let c = q.get(0) ^ q.get(shift);
    (0..q.len() as u32).all(|i| q.get(i) ^ q.get(i ^ shift) == rhs(i) ^ c).then_some(c)
}

pub fn q_derivative_check(ctx: &FieldCtx, q: &BooleanFunction, a: FieldElement) -> bool {
    q_derivative_constant(ctx, q, a).is_some()
}

/// `f + Q` over the given field.
pub fn transport(ctx: &FieldCtx, f: &BooleanFunction) -> Result<BooleanFunction> {
    check_even(f.n())?;
    if f.n() != ctx.n() {
        return Err(Error::VariableMismatch(f.n(), ctx.n()));
    }
    f.xor(&q_function(ctx)?)
}

/// `sum_x (-1)^{f(x) + f(x+a) + <beta, x>}` with `beta` and `a` as coordinate vectors.
/// Zero for bent `f` whenever `<beta, a> = 1`.
pub fn hyperplane_sum(f: &BooleanFunction, beta: u32, a: u32) -> i64 {
    let d = f.derivative(a).xor(&BooleanFunction::linear(f.n(), beta)).expect("same n");
    f.len() as i64 - 2 * d.weight() as i64
}

/// An affine `T` with `compose_affine(q1, T) = q2`, for bent quadratic forms of equal size.
pub fn quad_equivalence(q1: &QuadraticForm, q2: &QuadraticForm) -> Result<AffineTransform> {
    if q1.n != q2.n {
        return Err(Error::VariableMismatch(q1.n, q2.n));
    }
    for q in [q1, q2] {
        if !q.is_bent() {
            return Err(Error::NotBent { rank: q.b.rank(), n: q.n });
        }
    }
    // S^T B S = J for both, so A = S1 S2^{-1} carries B1 to B2
    let s1 = q1.b.symplectic_basis()?;
    let s2 = q2.b.symplectic_basis()?;
    let a = s1.mul(&s2.inverse()?);
    let f1 = q1.to_function();
    let f2 = q2.to_function();
    let moved = compose_affine(&f1, &AffineTransform::new(a.clone(), 0, 0, false)?)?;
    let diff = moved.xor(&f2)?;
    let c = diff.get(0);
    let l = (0..q1.n).filter(|&j| diff.get(1 << j) ^ c).fold(0, |acc, j| acc | 1 << j);
    let t = AffineTransform::new(a, 0, l, c)?;
    if compose_affine(&f1, &t)? != f2 {
        return Err(Error::Internal("quadratic equivalence failed pointwise".into()));
    }
    Ok(t)
}

/// Same as [`quad_equivalence`] on truth tables of degree at most two.
pub fn quad_equivalence_fn(f1: &BooleanFunction, f2: &BooleanFunction) -> Result<AffineTransform> {
    quad_equivalence(&QuadraticForm::from_function(f1)?, &QuadraticForm::from_function(f2)?)
}

/// Parameters of `G(a1 x + a2, a3 y + a4) + Tr(beta x) + Tr(gamma y) + c` on GF(2^t)^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRelation {
    pub alpha: [FieldElement; 4],
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub c: bool,
}

/// Searches every block-structured affine image of `G(x, y) = Tr(xy)` for one equal
/// to `Q` of GF(2^{2t}), both read through the fixed block layout.
pub fn block_relation_search(ctx_t: &FieldCtx, ctx_n: &FieldCtx) -> Result<Option<BlockRelation>> {
    let t = ctx_t.n();
    if ctx_n.n() != 2 * t {
        return Err(Error::FieldMismatch(ctx_t.spec().to_string(), ctx_n.spec().to_string()));
    }
    if t > 4 {
        return Err(Error::InvalidParameters("block search limited to t <= 4".into()));
    }
    let q = q_function(ctx_n)?;
    let size = ctx_t.size() as u32;
    let mask = size - 1;
    for a1 in 1..size {
        for a3 in 1..size {
            for a2 in 0..size {
                for a4 in 0..size {
                    // Q + G(a1 x + a2, a3 y + a4) must be affine
                    let d = BooleanFunction::from_fn(2 * t, |i| {
                        let x = ctx_t.from_coords(i & mask);
                        let y = ctx_t.from_coords(i >> t);
                        let u = ctx_t.mul(a1, x) ^ a2;
                        let v = ctx_t.mul(a3, y) ^ a4;
                        q.get(i) ^ ctx_t.trace(ctx_t.mul(u, v))
                    });
                    if d.degree().is_none_or(|deg| deg <= 1) {
                        let c = d.get(0);
                        let l = (0..2 * t).filter(|&j| d.get(1 << j) ^ c).fold(0, |acc, j| acc | 1 << j);
                        return Ok(Some(BlockRelation {
                            alpha: [a1, a2, a3, a4],
                            beta: ctx_t.from_coords(l & mask),
                            gamma: ctx_t.from_coords(l >> t),
                            c,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Output of [`construct_f`] with its verification.
#[derive(Debug, Clone)]
pub struct Construction {
    pub function: BooleanFunction,
    pub transform: AffineTransform,
    pub pi: PermSpec,
    pub h: UnivariatePoly,
    pub bent: bool,
    pub negabent: bool,
    pub degree: Option<u32>,
}

impl Construction {
    pub fn is_bent_negabent(&self) -> bool {
        self.bent && self.negabent
    }
}

/// `F = compose_affine(Tr(x (pi(y) + y) + h(y)), T)` where `T` carries `G = Tr(xy)`
/// onto `Q` of `ctx_n` (solved when `transform` is `None`).
///
/// With `pi` a complete mapping, both `F` and `F + Q = Tr(x pi(y) + h(y))` after the
/// substitution of `T` are bent, hence `F` is bent-negabent.
pub fn construct_f(
    ctx_t: &FieldCtx,
    ctx_n: &FieldCtx,
    pi: &PermSpec,
    h: &UnivariatePoly,
    transform: Option<AffineTransform>,
) -> Result<Construction> {
    if ctx_n.n() != 2 * ctx_t.n() {
        return Err(Error::FieldMismatch(ctx_t.spec().to_string(), ctx_n.spec().to_string()));
    }
    if !pi.is_complete_mapping() {
        return Err(Error::NotCompleteMapping);
    }
    let q = q_function(ctx_n)?;
    let transform = match transform {
        Some(t) => t,
        None => {
            let g = mm_build(ctx_t, &PermSpec::identity(ctx_t), &UnivariatePoly::zero(ctx_t))?;
            quad_equivalence_fn(&g.function, &q)?
        }
    };
    let sum = mm_build(ctx_t, &pi.add_identity(), h)?;
    let function = compose_affine(&sum.function, &transform)?;
    Ok(Construction {
        bent: is_bent(&function),
        negabent: is_negabent(&function),
        degree: function.degree(),
        function,
        transform,
        pi: pi.clone(),
        h: h.clone(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Yann1,
    Yann2,
    Search,
}

impl std::str::FromStr for Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yann1" => Ok(Source::Yann1),
            "yann2" => Ok(Source::Yann2),
            "search" => Ok(Source::Search),
            _ => Err(Error::Parse(format!("unknown source {s:?}"))),
        }
    }
}

/// `c y^{2^t - 1}` with `c` the smallest element of trace one; its trace is the
/// indicator of `y != 0`, of degree `t`.
pub fn full_degree_h(ctx_t: &FieldCtx) -> UnivariatePoly {
    let c = ctx_t.elements().find(|&c| ctx_t.trace(c)).expect("trace is onto");
    UnivariatePoly::monomial(ctx_t, c, ctx_t.group_order())
}

/// Resolves `t = k l m` with odd `m >= 3` and returns the family member for the
/// smallest admissible `a`.
pub fn yann_for_degree(t: u32, variant: YannVariant) -> Result<PermSpec> {
    for m in (3..=t).step_by(2) {
        let Ok(k) = crate::mm::order_of_two(m) else { continue };
        if !t.is_multiple_of(k * m) {
            continue;
        }
        let params = YannParams::new(m, t / (k * m))?;
        if let Some(&a) = params.valid_a(variant).first() {
            return crate::mm::yann_mapping(&params, variant, a);
        }
    }
    Err(Error::InvalidParameters(format!("no admissible (m, l, a) with k l m = {t}")))
}

/// A bent-negabent function on `n` variables of degree `n/2`.
///
/// The complete mapping comes from `source`; `search` prefers `deg(pi + id) = n/2 - 1`.
/// `h` defaults to [`full_degree_h`].
pub fn optimal_degree_construction(
    n: u32,
    source: Source,
    seed: u64,
    h: Option<UnivariatePoly>,
) -> Result<Construction> {
    check_even(n)?;
    if n < 4 {
        return Err(Error::InvalidParameters("need n >= 4".into()));
    }
    let t = n / 2;
    let ctx_t = make_field(t, None)?;
    let ctx_n = make_field(n, None)?;
    let pi = match source {
        Source::Yann1 => yann_for_degree(t, YannVariant::One)?,
        Source::Yann2 => yann_for_degree(t, YannVariant::Two)?,
        // small fields may only have affine complete mappings, e.g. every one of GF(8)
        Source::Search => {
            let mut found = search_complete_mappings(&ctx_t, 1, seed, Some(t - 1));
            if found.is_empty() {
                found = search_complete_mappings(&ctx_t, 1, seed, None);
            }
            found
                .pop()
                .ok_or_else(|| Error::InvalidParameters(format!("no complete mapping found for t = {t}")))?
        }
    };
    let h = h.unwrap_or_else(|| full_degree_h(&ctx_t));
    construct_f(&ctx_t, &ctx_n, &pi, &h, None)
}
