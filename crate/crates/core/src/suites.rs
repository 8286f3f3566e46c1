//! Verification suites run by `negabent verify`. Every failure carries a
//! reproducer, normally the offending truth table in file format.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::boolfun::{from_trace_poly, BooleanFunction, UnivariatePoly};
use crate::bridge::{optimal_degree_construction, q_derivative_check, q_function, QuadraticForm, Source};
use crate::error::{Error, Result};
use crate::field::{make_field, FieldCtx};
use crate::io::{write_table, FieldTag};
use crate::mm::{homo_build, mm_build, mm_negabent_test, PermSpec};
use crate::quadratic::{
    complete_mapping_check, gold_from_powers, gold_powers, linearized_is_permutation, negabent_poly,
    root_count_formula, zt_eval, MonomialClass,
};
use crate::spectra::{is_bent, is_negabent};

/// Failures kept per suite; `failure_count` keeps counting past it.
const MAX_RECORDED: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub reproducer: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub checks: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
}

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult { name: name.into(), checks: 0, failure_count: 0, failures: Vec::new() }
    }

    fn record(&mut self, ok: bool, check: impl FnOnce() -> String, reproducer: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_RECORDED {
                self.failures.push(Failure { check: check(), reproducer: reproducer() });
            }
        }
    }

    fn merge(&mut self, other: SuiteResult) {
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        let room = MAX_RECORDED.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    MonomialGrid,
    Mm,
    Transport,
    Construction,
    FieldCore,
}

impl Suite {
    pub const ALL: [Suite; 5] =
        [Suite::MonomialGrid, Suite::Mm, Suite::Transport, Suite::Construction, Suite::FieldCore];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MonomialGrid => "monomial-grid",
            Suite::Mm => "mm",
            Suite::Transport => "transport",
            Suite::Construction => "construction",
            Suite::FieldCore => "field-core",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Size knobs shared by the suites; unset values fall back to per-suite defaults.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub n: Option<u32>,
    pub n_max: Option<u32>,
    pub t_max: Option<u32>,
    pub exhaustive_quadratics: bool,
    pub samples: Option<usize>,
    pub seed: u64,
}

pub fn run_suite(suite: Suite, p: &SuiteParams) -> Result<SuiteResult> {
    match suite {
        Suite::MonomialGrid => monomial_grid(p.n_max.unwrap_or(10)),
        Suite::Mm => mm_suite(p.t_max.unwrap_or(3), p.samples.unwrap_or(200), p.seed),
        Suite::Transport => {
            transport_suite(p.n.unwrap_or(4), p.exhaustive_quadratics, p.samples.unwrap_or(200), p.seed)
        }
        Suite::Construction => construction_suite(p.n_max.unwrap_or(12), p.seed),
        Suite::FieldCore => field_core(p.n_max.unwrap_or(12), p.seed),
    }
}

fn table_repro(ctx: &FieldCtx, prefix: String, f: &BooleanFunction) -> String {
    let table = write_table(f, FieldTag::Single(ctx.spec())).unwrap_or_default();
    format!("{prefix}\n{table}")
}

fn monomial_grid(n_max: u32) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("monomial-grid");
    for n in 2..=n_max {
        let ctx = make_field(n, None)?;
        for k in 1..n {
            let class = MonomialClass::new(&ctx, k)?;
            res.record(
                class.root_set_size() as u64 == root_count_formula(n, k),
                || format!("root count n={n} k={k}"),
                || format!("field={} k={k}", ctx.spec()),
            );
            let powers = gold_powers(&ctx, k);
            let part = (1..ctx.size() as u32)
                .into_par_iter()
                .map(|lambda| {
                    let mut r = SuiteResult::new("monomial-grid");
                    let f = gold_from_powers(&ctx, &powers, lambda);
                    let repro = || table_repro(&ctx, format!("k={k} lambda={lambda:#x}"), &f);
                    let nh = is_negabent(&f);
                    let perm = linearized_is_permutation(&ctx, &negabent_poly(&ctx, lambda, k));
                    let z = zt_eval(&ctx, lambda, k).map(|z| z != 0).unwrap_or(!nh);
                    let outside = !class.is_zt_root(lambda);
                    r.record(
                        nh == perm && perm == z && z == outside,
                        || format!("negabent agreement n={n} k={k} lambda={lambda:#x}: nht={nh} perm={perm} zt={z} roots={outside}"),
                        repro,
                    );
                    if n % 2 == 0 {
                        let bent = is_bent(&f);
                        let predicted = class.is_bent(lambda).unwrap_or(!bent);
                        r.record(bent == predicted, || format!("bent agreement n={n} k={k} lambda={lambda:#x}"), repro);
                        let cond1 = complete_mapping_check(&ctx, lambda, k).unwrap_or(false);
                        r.record(
                            cond1 == (bent && nh),
                            || format!("complete mapping condition n={n} k={k} lambda={lambda:#x}"),
                            repro,
                        );
                    }
                    r
                })
                .reduce(|| SuiteResult::new("monomial-grid"), |mut a, b| {
                    a.merge(b);
                    a
                });
            res.merge(part);
        }
    }
    Ok(res)
}

fn random_poly(ctx: &FieldCtx, rng: &mut ChaCha8Rng, terms: usize) -> UnivariatePoly {
    let size = ctx.size() as u32;
    UnivariatePoly::new(ctx, (0..terms).map(|_| (rng.gen_range(0..size), rng.gen_range(0..size as u64))))
}

fn random_permutation(ctx: &FieldCtx, rng: &mut ChaCha8Rng) -> PermSpec {
    let mut table: Vec<u32> = (0..ctx.size() as u32).collect();
    table.shuffle(rng);
    PermSpec::new(ctx, table).expect("valid table")
}

fn mm_checks(res: &mut SuiteResult, ctx: &FieldCtx, pi: &PermSpec, h: &UnivariatePoly) -> Result<()> {
    let m = mm_build(ctx, pi, h)?;
    let repro = || {
        let table = write_table(&m.function, FieldTag::Square(ctx.spec())).unwrap_or_default();
        format!("pi={:?} h={h}\n{table}", pi.table())
    };
    let bent = is_bent(&m.function);
    res.record(bent == pi.is_bijection(), || format!("bent iff bijective, t={}", ctx.n()), repro);
    if pi.is_bijection() {
        let criterion = mm_negabent_test(ctx, &m)?;
        res.record(
            criterion == is_negabent(&m.function),
            || format!("negabent criterion, t={}", ctx.n()),
            repro,
        );
    }
    Ok(())
}

fn homo_check(res: &mut SuiteResult, ctx: &FieldCtx, i: u32, h: &UnivariatePoly) -> Result<()> {
    let m = homo_build(ctx, i, h)?;
    let h_bent = is_bent(&from_trace_poly(ctx, h));
    res.record(
        is_negabent(&m.function) == h_bent,
        || format!("y^(2^{i}) negabent iff Tr(h) bent, t={}", ctx.n()),
        || format!("field={} i={i} h={h}", ctx.spec()),
    );
    Ok(())
}

fn mm_suite(t_max: u32, samples: usize, seed: u64) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("mm");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = make_field(2, None)?;
    // every map GF(4) -> GF(4), every h with exponents 0, 1, 3
    let hs: Vec<UnivariatePoly> = (0..64u32)
        .map(|c| UnivariatePoly::new(&ctx, [(c & 3, 0), ((c >> 2) & 3, 1), (c >> 4, 3)]))
        .collect();
    for code in 0..256u32 {
        let table = (0..4).map(|y| (code >> (2 * y)) & 3).collect();
        let pi = PermSpec::new(&ctx, table)?;
        for h in &hs {
            mm_checks(&mut res, &ctx, &pi, h)?;
        }
    }
    for i in 0..2 {
        for h in &hs {
            homo_check(&mut res, &ctx, i, h)?;
        }
    }
    for t in 3..=t_max {
        let ctx = make_field(t, None)?;
        for s in 0..samples {
            let h = random_poly(&ctx, &mut rng, 3);
            let pi = if s % 4 == 3 {
                let table = (0..ctx.size()).map(|_| rng.gen_range(0..ctx.size() as u32)).collect();
                PermSpec::new(&ctx, table)?
            } else {
                random_permutation(&ctx, &mut rng)
            };
            mm_checks(&mut res, &ctx, &pi, &h)?;
            let i = rng.gen_range(0..t);
            homo_check(&mut res, &ctx, i, &h)?;
        }
    }
    Ok(res)
}

/// Quadratic function from an index: six pair bits, four linear bits, one constant bit (n = 4).
fn quadratic_from_code(n: u32, code: u32) -> BooleanFunction {
    let pairs: Vec<(u32, u32)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let np = pairs.len() as u32;
    BooleanFunction::from_fn(n, |x| {
        let mut v = false;
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if (code >> bit) & 1 == 1 {
                v ^= (x >> i) & (x >> j) & 1 == 1;
            }
        }
        v ^= ((code >> np) & x & ((1 << n) - 1)).count_ones() & 1 == 1;
        v ^ ((code >> (np + n)) & 1 == 1)
    })
}

fn transport_checks(res: &mut SuiteResult, ctx: &FieldCtx, q: &BooleanFunction, f: &BooleanFunction) -> Result<()> {
    let g = f.xor(q)?;
    let (fb, fnb, gb, gnb) = (is_bent(f), is_negabent(f), is_bent(&g), is_negabent(&g));
    let repro = || table_repro(ctx, "f".into(), f);
    res.record(!fb || gnb, || "bent f gives negabent f+Q".into(), repro);
    res.record(!fnb || gb, || "negabent f gives bent f+Q".into(), repro);
    res.record((fb && fnb) == (fb && gb), || "bent-negabent iff f and f+Q bent".into(), repro);
    res.record((fb && fnb) == (gb && gnb), || "f+Q bent-negabent iff f is".into(), repro);
    res.record(g.xor(q)? == *f, || "transport is an involution".into(), repro);
    Ok(())
}

fn transport_suite(n: u32, exhaustive: bool, samples: usize, seed: u64) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("transport");
    let ctx = make_field(n, None)?;
    let q = q_function(&ctx)?;
    res.record(is_bent(&q) && !is_negabent(&q), || "Q bent and not negabent".into(), || table_repro(&ctx, "Q".into(), &q));
    for a in 1..ctx.size() as u32 {
        res.record(q_derivative_check(&ctx, &q, a), || format!("derivative identity a={a:#x}"), || format!("field={}", ctx.spec()));
    }
    if exhaustive {
        if n > 6 {
            return Err(Error::InvalidParameters("exhaustive quadratics need n <= 6".into()));
        }
        let bits = n * (n - 1) / 2 + n + 1;
        for code in 0..1u32 << bits {
            transport_checks(&mut res, &ctx, &q, &quadratic_from_code(n, code))?;
        }
        return Ok(res);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = n / 2;
    let ctx_t = make_field(t, None)?;
    for _ in 0..samples {
        let pi = random_permutation(&ctx_t, &mut rng);
        let h = random_poly(&ctx_t, &mut rng, 3);
        transport_checks(&mut res, &ctx, &q, &mm_build(&ctx_t, &pi, &h)?.function)?;
        let affine = BooleanFunction::linear(n, rng.gen_range(0..1u32 << n));
        let affine = if rng.gen() { affine.complement() } else { affine };
        transport_checks(&mut res, &ctx, &q, &affine)?;
    }
    Ok(res)
}

fn construction_suite(n_max: u32, seed: u64) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("construction");
    for n in (4..=n_max).step_by(2) {
        let ctx = make_field(n, None)?;
        let q = q_function(&ctx)?;
        let c = optimal_degree_construction(n, Source::Search, seed, None)?;
        let repro = || table_repro(&ctx, format!("n={n} source=search seed={seed}"), &c.function);
        res.record(c.is_bent_negabent(), || format!("bent-negabent n={n}"), repro);
        res.record(c.degree == Some(n / 2), || format!("degree {:?} != {} at n={n}", c.degree, n / 2), repro);
        res.record(is_bent(&c.function.xor(&q)?), || format!("F+Q bent n={n}"), repro);
        let qf = QuadraticForm::from_function(&q)?;
        res.record(qf.is_bent(), || format!("Q has full-rank form n={n}"), repro);
    }
    Ok(res)
}

fn field_core(n_max: u32, seed: u64) -> Result<SuiteResult> {
    let mut res = SuiteResult::new("field-core");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 1..=n_max.min(24) {
        let ctx = make_field(n, None)?;
        let spec = ctx.spec();
        let basis = ctx.self_dual_basis_elements();
        let gram = basis
            .iter()
            .enumerate()
            .all(|(i, &a)| basis.iter().enumerate().all(|(j, &b)| ctx.trace(ctx.mul(a, b)) == (i == j)));
        res.record(gram, || format!("Gram identity n={n}"), || format!("field={spec}"));
        let dot = |x: u32, y: u32| ctx.trace(ctx.mul(x, y)) == ((ctx.coords(x) & ctx.coords(y)).count_ones() % 2 == 1);
        let size = ctx.size() as u32;
        let ok = if n <= 12 {
            (0..size).into_par_iter().all(|x| (0..size).all(|y| dot(x, y)))
        } else {
            (0..100_000).all(|_| dot(rng.gen_range(0..size), rng.gen_range(0..size)))
        };
        res.record(ok, || format!("trace form equals coordinate dot product n={n}"), || format!("field={spec}"));
        let coords_ok = (0..size.min(1 << 16)).all(|b| ctx.coords(ctx.from_coords(b)) == b);
        res.record(coords_ok, || format!("coordinate bijection n={n}"), || format!("field={spec}"));
        if n % 2 == 0 {
            let half = n / 2;
            let sample: Vec<u32> = if n <= 12 {
                (0..size).collect()
            } else {
                (0..10_000).map(|_| rng.gen_range(0..size)).collect()
            };
            let ok = sample.iter().all(|&x| {
                ctx.rel_trace(half, x).and_then(|y| ctx.subfield_trace(half, y)).ok() == Some(ctx.trace(x))
            });
            res.record(ok, || format!("trace transitivity n={n}"), || format!("field={spec}"));
        }
    }
    Ok(res)
}
