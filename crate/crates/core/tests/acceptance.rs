//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::Rng;

use common::*;
use negabent::bridge::{construct_f, q_function, yann_for_degree};
use negabent::mm::{homo_build, mm_build, mm_negabent_test, search_complete_mappings, PermSpec, YannVariant};
use negabent::quadratic::{
    existence_census, gcd, gold_from_powers, gold_function, gold_powers, linearized_is_permutation, negabent_poly, zt_eval,
    zt_root_set, MonomialClass,
};
use negabent::spectra::{nega, negaperiodic_acf, periodic_acf, quad_rank_oracle, walsh};
use negabent::{
    compose_affine, from_trace_poly, is_bent, is_bent_negabent, is_negabent, make_field, BooleanFunction, FieldCtx,
    UnivariatePoly,
};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const EVEN_GRID: [u32; 5] = [4, 6, 8, 10, 12];

fn oracle_mul(ctx: &FieldCtx, a: u32, b: u32) -> u32 {
    naive_mul(a, b, ctx.n(), ctx.modulus())
}

/// Root count from the closed form, recomputed here.
fn expected_roots(n: u32, k: u32) -> u64 {
    let d = gcd(n as u64, k as u64) as u32;
    let t = n / d;
    let num = if t.is_multiple_of(2) { (1u64 << (n + d)) - (1 << d) } else { (1u64 << (n + d)) - (1 << (2 * d)) };
    num / ((1u64 << (2 * d)) - 1)
}

fn oracle_gold(ctx: &FieldCtx, lambda: u32, k: u32) -> BooleanFunction {
    let (n, m) = (ctx.n(), ctx.modulus());
    BooleanFunction::from_fn(n, |i| {
        let x = ctx.from_coords(i);
        let p = naive_mul(naive_pow(x, 1 << k, n, m), x, n, m);
        naive_trace(naive_mul(lambda, p, n, m), n, m)
    })
}

/// Whether the linearized `P` has only the zero root, by evaluation.
fn oracle_p_injective(ctx: &FieldCtx, lambda: u32, k: u32) -> bool {
    let (n, m) = (ctx.n(), ctx.modulus());
    let c = naive_pow(lambda, 1 << (n - k), n, m);
    (1..ctx.size() as u32).all(|x| {
        let v = naive_mul(c, naive_pow(x, 1 << (n - k), n, m), n, m)
            ^ naive_mul(lambda, naive_pow(x, 1 << k, n, m), n, m)
            ^ x;
        v != 0
    })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut total = 0u64;
    let mut oracle_checked = 0u64;
    for n in EVEN_GRID {
        let ctx = make_field(n, None).map_err(|e| e.to_string())?;
        for k in 1..n {
            let class = MonomialClass::new(&ctx, k).map_err(|e| e.to_string())?;
            let powers = gold_powers(&ctx, k);
            for lambda in 1..ctx.size() as u32 {
                let f = gold_from_powers(&ctx, &powers, lambda);
                let nht = is_negabent(&f);
                let perm = linearized_is_permutation(&ctx, &negabent_poly(&ctx, lambda, k));
                let z = zt_eval(&ctx, lambda, k).map_err(|e| e.to_string())? != 0;
                let outside = !class.is_zt_root(lambda);
                check!(
                    nht == perm && perm == z && z == outside,
                    "n={n} k={k} lambda={lambda:#x}: nht={nht} perm={perm} zt={z} outside={outside}"
                );
                if n <= 6 {
                    check!(f == oracle_gold(&ctx, lambda, k), "gold table mismatch n={n} k={k}");
                    check!(nht == direct_is_negabent(&f), "direct sum mismatch n={n} k={k}");
                    check!(perm == oracle_p_injective(&ctx, lambda, k), "P evaluation mismatch n={n} k={k}");
                    oracle_checked += 1;
                }
                total += 1;
            }
        }
    }
    check!(start.elapsed() < Duration::from_secs(120), "took {:?}", start.elapsed());
    Ok(format!("{total} (n,k,lambda) triples agree, {oracle_checked} also against evaluation oracles"))
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    for n in EVEN_GRID {
        let ctx = make_field(n, None).map_err(|e| e.to_string())?;
        for k in 1..n {
            let roots = zt_root_set(&ctx, k).map_err(|e| e.to_string())?;
            check!(roots.len() as u64 == expected_roots(n, k), "n={n} k={k}: {} roots", roots.len());
            cases += 1;
        }
    }
    let r41 = zt_root_set(&make_field(4, None).unwrap(), 1).unwrap().len();
    let r62 = zt_root_set(&make_field(6, None).unwrap(), 2).unwrap().len();
    check!(r41 == 10 && r62 == 16, "(4,1) -> {r41}, (6,2) -> {r62}");
    Ok(format!("{cases} (n,k) pairs; (4,1) has 10 roots, (6,2) has 16"))
}

fn criterion_3() -> Outcome {
    let ctx = make_field(4, None).map_err(|e| e.to_string())?;
    let (n, m) = (4, ctx.modulus());
    let cubes: Vec<u32> = (0..16).map(|x| naive_pow(x, 3, n, m)).collect();
    let bent: Vec<u32> = (1..16).filter(|&l| is_bent(&oracle_gold(&ctx, l, 1))).collect();
    let noncubes: Vec<u32> = (1..16).filter(|l| !cubes.contains(l)).collect();
    check!(bent.len() == 10 && bent == noncubes, "(4,1): bent {bent:?}, noncubes {noncubes:?}");

    let in_f2 = |v: u32| v <= 1;
    let bn: Vec<u32> = (1..16).filter(|&l| is_bent_negabent(&oracle_gold(&ctx, l, 2))).collect();
    let predicted: Vec<u32> = (1..16).filter(|&l| !in_f2(l ^ naive_pow(l, 16 / 4, n, m))).collect();
    check!(bn.len() == 8 && bn == predicted, "(4,2): bent-negabent {bn:?}, predicted {predicted:?}");
    let negabent = (1..16).filter(|&l| is_negabent(&oracle_gold(&ctx, l, 2))).count();
    let predicted_nb = (1..16).filter(|&l| l ^ naive_pow(l, 4, n, m) != 1).count();
    check!(negabent == predicted_nb, "(4,2): negabent {negabent} vs {predicted_nb}");
    Ok(format!("(4,1): 10 bent lambda; (4,2): 8 bent-negabent, {negabent} negabent nonzero lambda"))
}

fn criterion_4() -> Outcome {
    let mut cases = 0;
    let mut zero_convention_failures = 0;
    for n in EVEN_GRID {
        let ctx = make_field(n, None).map_err(|e| e.to_string())?;
        let size = ctx.size() as u64;
        for k in 1..n {
            if gcd((1 << k) + 1, size - 1) == 1 {
                continue;
            }
            let c = existence_census(&ctx, k).map_err(|e| e.to_string())?;
            // independent S_1 and S_2
            let mut s1 = vec![false; ctx.size()];
            for x in 0..size as u32 {
                s1[naive_pow(x, (1 << k) + 1, n, ctx.modulus()) as usize] = true;
            }
            let s2: Vec<bool> = (0..size as u32).map(|l| l != 0 && zt_eval(&ctx, l, k) == Ok(0)).collect();
            let count = |p: &dyn Fn(usize) -> bool| (0..size as usize).filter(|&i| p(i)).count() as u64;
            check!(c.s1 == count(&|i| s1[i]), "n={n} k={k}: |S1|");
            check!(c.s2 == count(&|i| s2[i]), "n={n} k={k}: |S2|");
            check!(c.intersection == count(&|i| s1[i] && s2[i]), "n={n} k={k}: intersection");
            let powers = gold_powers(&ctx, k);
            let witnesses =
                (1..size as u32).filter(|&l| is_bent_negabent(&gold_from_powers(&ctx, &powers, l))).count() as u64;
            check!(witnesses == c.surplus, "n={n} k={k}: {witnesses} witnesses vs surplus {}", c.surplus);
            check!(c.s1_nonzero <= c.s1_nonzero_bound, "n={n} k={k}: |S1*| above (2^n-1)/3");
            check!(c.surplus_nonzero >= 1, "n={n} k={k}: surplus {}", c.surplus_nonzero);
            check!(
                c.counting_inequality_holds(),
                "n={n} k={k}: surplus {} < |S1 n S2| + 1 = {}",
                c.surplus_nonzero,
                c.intersection + 1
            );
            check!(witnesses >= 1, "n={n} k={k}: no bent-negabent lambda");
            if c.surplus <= c.intersection {
                zero_convention_failures += 1;
            }
            cases += 1;
        }
    }
    Ok(format!(
        "{cases} (n,k) cases with S1 taken over nonzero x; counting 0 in S1 breaks the inequality in {zero_convention_failures} of them"
    ))
}

/// `Q` from its defining sums, with oracle arithmetic.
fn oracle_q(ctx: &FieldCtx) -> BooleanFunction {
    let (n, m) = (ctx.n(), ctx.modulus());
    let half = n / 2;
    BooleanFunction::from_fn(n, |i| {
        let x = ctx.from_coords(i);
        let mut v = false;
        for j in 1..half {
            v ^= naive_trace(naive_mul(naive_pow(x, 1 << j, n, m), x, n, m), n, m);
        }
        let norm = naive_mul(naive_pow(x, 1 << half, n, m), x, n, m);
        v ^ (naive_partial_trace(norm, half, n, m) == 1)
    })
}

/// All functions of degree at most two on four variables.
fn quadratics4() -> Vec<BooleanFunction> {
    let pairs: Vec<(u32, u32)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    (0..1u32 << 11)
        .map(|code| {
            BooleanFunction::from_fn(4, |x| {
                let mut v = (code >> 10) & 1 == 1;
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    v ^= (code >> b) & (x >> i) & (x >> j) & 1 == 1;
                }
                v ^ (((code >> 6) & 0xf & x).count_ones() % 2 == 1)
            })
        })
        .collect()
}

fn random_h(ctx: &FieldCtx, rng: &mut rand_chacha::ChaCha8Rng) -> UnivariatePoly {
    let size = ctx.size() as u32;
    UnivariatePoly::new(ctx, (0..3).map(|_| (rng.gen_range(0..size), rng.gen_range(0..size as u64))))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    for n in [4u32, 6, 8] {
        let ctx = make_field(n, None).unwrap();
        check!(q_function(&ctx).unwrap() == oracle_q(&ctx), "Q table differs from its definition at n={n}");
    }
    let ctx = make_field(4, None).unwrap();
    let q = q_function(&ctx).unwrap();
    let (mut bents, mut negabents) = (0, 0);
    for f in quadratics4() {
        let verdict = quad_rank_oracle(&f).unwrap();
        let g = f.xor(&q).unwrap();
        if verdict.bent {
            bents += 1;
            check!(is_negabent(&g), "bent quadratic with non-negabent f+Q");
        }
        if verdict.negabent {
            negabents += 1;
            check!(is_bent(&g), "negabent quadratic with non-bent f+Q");
        }
    }
    let mut rng = rng(5);
    for n in [6u32, 8] {
        let ctx = make_field(n, None).unwrap();
        let ctx_t = make_field(n / 2, None).unwrap();
        let q = q_function(&ctx).unwrap();
        for i in 0..1000 {
            let pi = PermSpec::new(&ctx_t, random_permutation(&mut rng, ctx_t.size())).unwrap();
            let f = mm_build(&ctx_t, &pi, &random_h(&ctx_t, &mut rng)).unwrap().function;
            check!(is_bent(&f), "MM function with bijective pi not bent");
            check!(is_negabent(&f.xor(&q).unwrap()), "n={n}: bent MM f with non-negabent f+Q");
            let g = if i % 2 == 0 {
                let a = BooleanFunction::linear(n, rng.gen_range(0..1 << n));
                if rng.gen() { a.complement() } else { a }
            } else {
                f.xor(&q).unwrap()
            };
            check!(is_negabent(&g), "n={n}: corpus function not negabent");
            check!(is_bent(&g.xor(&q).unwrap()), "n={n}: negabent g with non-bent g+Q");
        }
    }
    check!(start.elapsed() < Duration::from_secs(60), "took {:?}", start.elapsed());
    Ok(format!("n=4: {bents} bent and {negabents} negabent quadratics; n=6,8: 1000 bent and 1000 negabent each"))
}

fn mm_agrees(ctx: &FieldCtx, pi: &PermSpec, h: &UnivariatePoly) -> Result<(), String> {
    let m = mm_build(ctx, pi, h).map_err(|e| e.to_string())?;
    let criterion = mm_negabent_test(ctx, &m).map_err(|e| e.to_string())?;
    let spectral = direct_or_fast_negabent(&m.function);
    check!(criterion == spectral, "t={} pi={:?} h={h}: criterion {criterion}, spectrum {spectral}", ctx.n(), pi.table());
    Ok(())
}

fn direct_or_fast_negabent(f: &BooleanFunction) -> bool {
    if f.n() <= 6 {
        direct_is_negabent(f)
    } else {
        is_negabent(f)
    }
}

fn homo_agrees(ctx: &FieldCtx, i: u32, h: &UnivariatePoly) -> Result<bool, String> {
    let m = homo_build(ctx, i, h).map_err(|e| e.to_string())?;
    let nb = direct_or_fast_negabent(&m.function);
    let h_bent = is_bent(&from_trace_poly(ctx, h));
    check!(nb == h_bent, "t={} i={i} h={h}: negabent {nb}, Tr(h) bent {h_bent}", ctx.n());
    Ok(nb)
}

fn criterion_6() -> Outcome {
    let ctx = make_field(2, None).unwrap();
    let hs: Vec<UnivariatePoly> =
        (0..64u32).map(|c| UnivariatePoly::new(&ctx, [(c & 3, 0), ((c >> 2) & 3, 1), (c >> 4, 3)])).collect();
    let distinct: std::collections::HashSet<_> = hs.iter().map(|h| from_trace_poly(&ctx, h)).collect();
    check!(distinct.len() == 16, "h family covers {} of 16 functions", distinct.len());
    let mut perms = 0;
    for code in 0..256u32 {
        let pi = PermSpec::new(&ctx, (0..4).map(|y| (code >> (2 * y)) & 3).collect()).unwrap();
        if !pi.is_bijection() {
            continue;
        }
        perms += 1;
        for h in &hs {
            mm_agrees(&ctx, &pi, h)?;
        }
    }
    check!(perms == 24, "{perms} permutations of GF(4)");
    let mut homo_negabent = 0;
    for i in 0..2 {
        for h in &hs {
            homo_negabent += homo_agrees(&ctx, i, h)? as u32;
        }
    }
    let mut rng = rng(6);
    for t in [3u32, 4] {
        let ctx = make_field(t, None).unwrap();
        for _ in 0..1000 {
            let pi = PermSpec::new(&ctx, random_permutation(&mut rng, ctx.size())).unwrap();
            mm_agrees(&ctx, &pi, &random_h(&ctx, &mut rng))?;
            let i = rng.gen_range(0..t);
            homo_negabent += homo_agrees(&ctx, i, &random_h(&ctx, &mut rng))? as u32;
        }
    }
    check!(homo_negabent > 0, "no negabent case in the power-map corpus");
    Ok(format!("t=2: 24 x 64 exhaustive; t=3,4: 1000 random each; {homo_negabent} negabent power-map cases"))
}

fn criterion_7() -> Outcome {
    let mut details = Vec::new();
    for n in [8u32, 12] {
        let start = Instant::now();
        let t = n / 2;
        let ctx_t = make_field(t, None).unwrap();
        let ctx_n = make_field(n, None).unwrap();
        let h = UnivariatePoly::monomial(&ctx_t, 1, (1 << t) - 1);
        let pi = search_complete_mappings(&ctx_t, 1, 0, Some(t - 1))
            .pop()
            .ok_or(format!("no complete mapping with deg(pi + id) = {} at t={t}", t - 1))?;
        check!(pi.is_complete_mapping(), "search returned a non complete mapping");
        let c = construct_f(&ctx_t, &ctx_n, &pi, &h, None).map_err(|e| e.to_string())?;
        let f = &c.function;
        check!(is_bent(f) && direct_is_bent(f), "n={n}: not bent");
        check!(direct_is_negabent(f), "n={n}: not negabent");
        check!(anf_degree(f) == Some(n / 2), "n={n}: degree {:?}", anf_degree(f));
        let q = q_function(&ctx_n).unwrap();
        let plain = mm_build(&ctx_t, &pi, &h).unwrap().function;
        let moved = compose_affine(&plain, &c.transform.substitution_only()).unwrap();
        check!(f.xor(&q).unwrap() == moved, "n={n}: F + Q is not the substituted MM function");
        let elapsed = start.elapsed();
        if n == 12 {
            check!(elapsed < Duration::from_secs(30), "n=12 took {elapsed:?}");
        }
        details.push(format!("n={n} degree {} in {:.2?}", n / 2, elapsed));
    }
    check!(yann_for_degree(6, YannVariant::One).is_err(), "t=6 family unexpectedly resolved");
    Ok(details.join(", "))
}

fn direct_is_bent(f: &BooleanFunction) -> bool {
    let target = 1i64 << f.n();
    direct_walsh(f).iter().all(|v| v * v == target)
}

fn criterion_8() -> Outcome {
    let mut compared = 0u64;
    for n in 1..=4u32 {
        for code in 0..1u64 << (1 << n) {
            let f = BooleanFunction::from_words(n, vec![code]).unwrap();
            let fast: Vec<(i64, i64)> = nega(&f).values.iter().map(|z| (z.re, z.im)).collect();
            check!(fast == direct_nega(&f), "nega mismatch n={n} table={code:#x}");
            check!(walsh(&f).values == direct_walsh(&f), "walsh mismatch n={n} table={code:#x}");
            compared += 1;
        }
    }
    let mut rng = rng(8);
    for _ in 0..1000 {
        let f = random_function(&mut rng, 8);
        let fast: Vec<(i64, i64)> = nega(&f).values.iter().map(|z| (z.re, z.im)).collect();
        check!(fast == direct_nega(&f), "nega mismatch on a random 8-variable function");
        compared += 1;
    }
    for f in quadratics4() {
        let v = quad_rank_oracle(&f).unwrap();
        check!(v.bent == is_bent(&f) && v.negabent == is_negabent(&f), "rank oracle mismatch");
    }
    let mut negabent_seen = 0;
    for i in 0..1000u32 {
        let n = 1 + i % 10;
        let f = match i % 4 {
            0 => random_function(&mut rng, n),
            1 => BooleanFunction::linear(n, rng.gen_range(0..1 << n)),
            2 if n % 2 == 0 && n >= 4 => {
                let ctx = make_field(n, None).unwrap();
                gold_function(&ctx, rng.gen_range(1..1 << n), rng.gen_range(1..n)).unwrap()
            }
            _ if n % 2 == 0 && n >= 2 => {
                let ctx = make_field(n, None).unwrap();
                let g = if n >= 4 {
                    let ctx_t = make_field(n / 2, None).unwrap();
                    let pi = PermSpec::new(&ctx_t, random_permutation(&mut rng, ctx_t.size())).unwrap();
                    mm_build(&ctx_t, &pi, &random_h(&ctx_t, &mut rng)).unwrap().function
                } else {
                    BooleanFunction::from_fn(2, |x| x == 3)
                };
                g.xor(&q_function(&ctx).unwrap()).unwrap()
            }
            _ => random_function(&mut rng, n),
        };
        let acf_flat = negaperiodic_acf(&f)[1..].iter().all(|&v| v == 0);
        let nb = is_negabent(&f);
        check!(acf_flat == nb, "negaperiodic autocorrelation disagrees with the transform (n={n})");
        let bent_acf = periodic_acf(&f)[1..].iter().all(|&v| v == 0);
        check!(bent_acf == is_bent(&f), "periodic autocorrelation disagrees with bentness (n={n})");
        negabent_seen += nb as u32;
    }
    Ok(format!("{compared} transforms vs direct sums, 2048 quadratics, 1000 autocorrelations ({negabent_seen} negabent)"))
}

fn criterion_9() -> Outcome {
    let mut pairs = 0u64;
    for n in 1..=12u32 {
        let ctx = make_field(n, None).map_err(|e| e.to_string())?;
        let m = ctx.modulus();
        let basis = ctx.self_dual_basis_elements();
        for (i, &a) in basis.iter().enumerate() {
            for (j, &b) in basis.iter().enumerate() {
                check!(naive_trace(naive_mul(a, b, n, m), n, m) == (i == j), "Gram entry ({i},{j}) at n={n}");
            }
        }
        let tr = trace_table(n, m);
        let coords: Vec<u32> = (0..ctx.size() as u32).map(|x| ctx.coords(x)).collect();
        for x in 0..ctx.size() as u32 {
            for y in 0..ctx.size() as u32 {
                let dot = (coords[x as usize] & coords[y as usize]).count_ones() % 2 == 1;
                if tr[oracle_mul(&ctx, x, y) as usize] != dot {
                    return Err(format!("Tr(xy) != <x,y> at n={n}, x={x:#x}, y={y:#x}"));
                }
            }
        }
        pairs += (ctx.size() * ctx.size()) as u64;
    }
    Ok(format!("Gram identity for n = 1..12 and {pairs} (x, y) pairs"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "monomial four-way agreement", criterion_1),
        (2, "root-count formula", criterion_2),
        (3, "bent monomial counts", criterion_3),
        (4, "existence census", criterion_4),
        (5, "transport theorem", criterion_5),
        (6, "MM negabent criterion", criterion_6),
        (7, "optimal-degree construction", criterion_7),
        (8, "consistency oracles", criterion_8),
        (9, "field layer", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (id, title, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| title.contains(f.as_str()) || *f == id.to_string()) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(msg)
        });
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(e) => {
                failed += 1;
                ("FAIL", e)
            }
        };
        println!("criterion {id} {status}: {title}: {detail} [{:.2?}]", start.elapsed());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
