//! Exact Walsh-Hadamard and nega-Hadamard spectra, autocorrelations, and the
//! bent / negabent predicates.
//!
//! Transforms are unnormalized: `W(l) = sum_x (-1)^{f(x) + l.x}` and
//! `N(l) = sum_x (-1)^{f(x) + l.x} i^{wt(x)}`. A function is bent when every
//! `W(l)^2 = 2^n` and negabent when every `|N(l)|^2 = 2^n`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::bitmatrix::BitMatrix;
use crate::boolfun::BooleanFunction;
use crate::error::{Error, Result};

pub type Gaussian = Complex<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    pub n: u32,
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegaSpectrum {
    pub n: u32,
    pub values: Vec<Gaussian>,
}

impl WalshSpectrum {
    pub fn is_flat(&self) -> bool {
        let target = 1i64 << self.n;
        self.values.iter().all(|v| v * v == target)
    }

    pub fn sum_of_squares(&self) -> i128 {
        self.values.iter().map(|&v| (v as i128) * (v as i128)).sum()
    }

    pub fn max_abs_sq(&self) -> i64 {
        self.values.iter().map(|v| v * v).max().unwrap_or(0)
    }
}

impl NegaSpectrum {
    pub fn abs_sq(&self, lambda: usize) -> i64 {
        self.values[lambda].norm_sqr()
    }

    pub fn is_flat(&self) -> bool {
        let target = 1i64 << self.n;
        self.values.iter().all(|v| v.norm_sqr() == target)
    }

    pub fn sum_of_squares(&self) -> i128 {
        self.values.iter().map(|v| v.norm_sqr() as i128).sum()
    }

    pub fn max_abs_sq(&self) -> i64 {
        self.values.iter().map(|v| v.norm_sqr()).max().unwrap_or(0)
    }
}

pub fn walsh(f: &BooleanFunction) -> WalshSpectrum {
    let mut v = f.signs();
    let len = v.len();
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for j in block..block + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
    WalshSpectrum { n: f.n(), values: v }
}

/// Nega-Hadamard spectrum. Each coordinate applies the kernel
/// `(u, v) -> (u + i v, u - i v)`, coordinate 0 first, so the phase
/// `i^{wt(x)}` accumulates one factor per set bit of `x`.
pub fn nega(f: &BooleanFunction) -> NegaSpectrum {
    let mut v: Vec<Gaussian> = f.signs().into_iter().map(|s| Complex::new(s, 0)).collect();
    let len = v.len();
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for j in block..block + h {
                let u = v[j];
                // i * (a + b i) = -b + a i
                let w = Complex::new(-v[j + h].im, v[j + h].re);
                v[j] = u + w;
                v[j + h] = u - w;
            }
        }
        h *= 2;
    }
    NegaSpectrum { n: f.n(), values: v }
}

/// `tau_a = sum_x (-1)^{f(x) + f(x + a)}` for every `a`.
pub fn periodic_acf(f: &BooleanFunction) -> Vec<i64> {
    let len = f.len() as i64;
    (0..f.len() as u32)
        .map(|a| len - 2 * f.derivative(a).weight() as i64)
        .collect()
}

/// `sum_x (-1)^{f(x) + f(x + a) + a.x}` for every `a`.
pub fn negaperiodic_acf(f: &BooleanFunction) -> Vec<i64> {
    let len = f.len() as i64;
    (0..f.len() as u32)
        .map(|a| {
            let d = f.derivative(a).xor(&BooleanFunction::linear(f.n(), a)).expect("same n");
            len - 2 * d.weight() as i64
        })
        .collect()
}

/// Bent: flat Walsh spectrum. Always false for odd `n`.
pub fn is_bent(f: &BooleanFunction) -> bool {
    f.n().is_multiple_of(2) && walsh(f).is_flat()
}

pub fn is_negabent(f: &BooleanFunction) -> bool {
    nega(f).is_flat()
}

pub fn is_bent_negabent(f: &BooleanFunction) -> bool {
    is_bent(f) && is_negabent(f)
}

/// `B = Q + Q^T` built from the quadratic ANF coefficients.
pub fn symplectic_matrix(f: &BooleanFunction) -> Result<BitMatrix> {
    let anf = f.anf();
    if let Some(d) = anf.degree().filter(|&d| d > 2) {
        return Err(Error::NotQuadratic(d));
    }
    let n = f.n() as usize;
    let mut b = BitMatrix::zero(n, n);
    for mono in anf.monomials().filter(|m| m.count_ones() == 2) {
        let i = mono.trailing_zeros() as usize;
        let j = 31 - mono.leading_zeros() as usize;
        b.set(i, j, true);
        b.set(j, i, true);
    }
    Ok(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadVerdict {
    pub bent: bool,
    pub negabent: bool,
}

/// Rank criteria for functions of degree at most two: bent iff `rank B = n`,
/// negabent iff `rank (B + I) = n`.
pub fn quad_rank_oracle(f: &BooleanFunction) -> Result<QuadVerdict> {
    let b = symplectic_matrix(f)?;
    let n = f.n();
    let bi = b.add(&BitMatrix::identity(n as usize));
    Ok(QuadVerdict { bent: b.rank() == n, negabent: bi.rank() == n })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transform {
    Walsh,
    Nega,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub transform: Transform,
    pub lambda: u32,
    pub abs_sq: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxAbsSq {
    pub walsh: i64,
    pub nega: i64,
}

/// Flatness summary of both spectra; `violations` lists every `lambda` whose
/// squared magnitude differs from `2^n` (Walsh entries only for even `n`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    pub bent: bool,
    pub negabent: bool,
    pub max_abs_sq: MaxAbsSq,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
}

impl SpectrumSummary {
    pub fn new(w: &WalshSpectrum, nh: &NegaSpectrum) -> Self {
        let target = 1i64 << w.n;
        let mut violations = Vec::new();
        if w.n.is_multiple_of(2) {
            for (l, v) in w.values.iter().enumerate() {
                if v * v != target {
                    violations.push(Violation { transform: Transform::Walsh, lambda: l as u32, abs_sq: v * v });
                }
            }
        }
        for (l, v) in nh.values.iter().enumerate() {
            if v.norm_sqr() != target {
                violations.push(Violation {
                    transform: Transform::Nega,
                    lambda: l as u32,
                    abs_sq: v.norm_sqr(),
                });
            }
        }
        SpectrumSummary {
            bent: w.n.is_multiple_of(2) && w.is_flat(),
            negabent: nh.is_flat(),
            max_abs_sq: MaxAbsSq { walsh: w.max_abs_sq(), nega: nh.max_abs_sq() },
            violation_count: violations.len(),
            violations,
        }
    }

    pub fn of(f: &BooleanFunction) -> Self {
        Self::new(&walsh(f), &nega(f))
    }

    /// Keeps the first `limit` violations; `violation_count` still holds the total.
    pub fn truncated(mut self, limit: usize) -> Self {
        self.violations.truncate(limit);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_function_is_delta() {
        let w = walsh(&BooleanFunction::zero(5));
        assert_eq!(w.values[0], 32);
        assert!(w.values[1..].iter().all(|&v| v == 0));
    }

    #[test]
    fn linear_function_peaks_at_its_mask() {
        let w = walsh(&BooleanFunction::linear(6, 0b101101));
        for (l, &v) in w.values.iter().enumerate() {
            assert_eq!(v, if l == 0b101101 { 64 } else { 0 });
        }
    }

    #[test]
    fn two_variable_product_is_bent_not_negabent() {
        let f = BooleanFunction::from_fn(2, |x| x == 3);
        assert!(walsh(&f).values.iter().all(|v| v.abs() == 2));
        assert!(is_bent(&f));
        assert!(!is_negabent(&f));
        let b = symplectic_matrix(&f).unwrap();
        assert_eq!(b, BitMatrix::from_rows(vec![0b10, 0b01], 2));
        assert_eq!(quad_rank_oracle(&f).unwrap(), QuadVerdict { bent: true, negabent: false });
    }

    #[test]
    fn one_variable_nega_spectrum() {
        let nh = nega(&BooleanFunction::zero(1));
        assert_eq!(nh.values, vec![Complex::new(1, 1), Complex::new(1, -1)]);
        assert!(nh.is_flat());
    }

    #[test]
    fn affine_functions_are_negabent() {
        for n in 1..=7 {
            for mask in [0u32, 1, (1 << n) - 1, 0b1010 & ((1 << n) - 1)] {
                let f = BooleanFunction::linear(n, mask);
                assert!(is_negabent(&f), "n={n} mask={mask}");
                assert!(is_negabent(&f.complement()));
            }
        }
    }

    #[test]
    fn linear_oracle_verdict() {
        let f = BooleanFunction::linear(4, 0b0111);
        assert_eq!(quad_rank_oracle(&f).unwrap(), QuadVerdict { bent: false, negabent: true });
        let cubic = BooleanFunction::from_fn(3, |x| x == 7);
        assert_eq!(quad_rank_oracle(&cubic), Err(Error::NotQuadratic(3)));
    }

    #[test]
    fn autocorrelation_at_zero() {
        let f = BooleanFunction::from_fn(6, |x| x.count_ones() % 3 == 0);
        assert_eq!(periodic_acf(&f)[0], 64);
        assert_eq!(negaperiodic_acf(&f)[0], 64);
    }

    #[test]
    fn odd_n_is_never_bent() {
        assert!(!is_bent(&BooleanFunction::from_fn(3, |x| x == 3)));
    }

    #[test]
    fn summary_lists_violations() {
        let f = BooleanFunction::from_fn(2, |x| x == 3);
        let s = SpectrumSummary::of(&f);
        assert!(s.bent);
        assert!(!s.negabent);
        assert!(s.violations.iter().all(|v| v.transform == Transform::Nega));
        assert_eq!(s.max_abs_sq.walsh, 4);
    }
}
