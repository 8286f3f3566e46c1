//! Arithmetic in GF(2^n), trace maps, and self-dual coordinates.
//!
//! Elements are stored as bitmasks in the polynomial basis `1, x, ..., x^{n-1}`
//! of the chosen modulus. At the Boolean-function boundary every element is
//! addressed by its coordinates in a self-dual basis `{a_0, ..., a_{n-1}}`
//! (`Tr(a_i a_j) = [i == j]`), so that `Tr(x y)` is the dot product of the
//! coordinate vectors. Truth-table index `i` is the element `from_coords(i)`.

use std::fmt;
use std::str::FromStr;

use crate::bitmatrix::{BitMatrix, LinearMap};
use crate::error::{Error, Result};

/// Polynomial-basis bitmask of an element of the owning [`FieldCtx`].
pub type FieldElement = u32;

pub const MAX_DEGREE: u32 = 24;

/// Log/antilog tables are built up to this degree; above it multiplication is
/// carry-less with reduction.
pub const LOG_TABLE_MAX_DEGREE: u32 = 20;

/// Low-weight irreducible polynomials, indexed by degree, leading term included.
pub const DEFAULT_MODULI: [u64; 25] = [
    0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x211, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b, 0x20009, 0x40081, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x100001b,
];

/// `gf2_<n>:<modulus-hex>`, the textual name of a field used in file headers and CLI flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub n: u32,
    pub modulus: u64,
}

impl FieldSpec {
    pub fn default_for(n: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        Ok(FieldSpec { n, modulus: DEFAULT_MODULI[n as usize] })
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gf2_{}:{:x}", self.n, self.modulus)
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad field spec {s:?}, expected gf2_<n>:<hex>"));
        let rest = s.trim().strip_prefix("gf2_").ok_or_else(bad)?;
        let (n, hex) = match rest.split_once(':') {
            Some((n, hex)) => (n, Some(hex)),
            None => (rest, None),
        };
        let n: u32 = n.parse().map_err(|_| bad())?;
        match hex {
            Some(h) => {
                let h = h.trim_start_matches("0x");
                let modulus = u64::from_str_radix(h, 16).map_err(|_| bad())?;
                Ok(FieldSpec { n, modulus })
            }
            None => FieldSpec::default_for(n),
        }
    }
}

#[derive(Debug, Clone)]
struct LogTables {
    /// `exp[i] = g^i` for `0 <= i < 2 (2^n - 1)`.
    exp: Vec<u32>,
    /// `log[x]` for `x != 0`.
    log: Vec<u32>,
}

/// The field GF(2^n) together with a self-dual basis.
///
/// Immutable after construction; share it freely across threads.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    n: u32,
    modulus: u64,
    trace_mask: u32,
    sd_basis: Vec<u32>,
    sd_basis_inv: BitMatrix,
    to_coords: LinearMap,
    from_coords: LinearMap,
    tables: Option<LogTables>,
}

/// Builds GF(2^n) with the given modulus (or the default one) and a self-dual basis.
pub fn make_field(n: u32, modulus: Option<u64>) -> Result<FieldCtx> {
    FieldCtx::new(n, modulus)
}

impl FieldCtx {
    pub fn new(n: u32, modulus: Option<u64>) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&n) {
            return Err(Error::UnsupportedDegree(n));
        }
        let modulus = modulus.unwrap_or(DEFAULT_MODULI[n as usize]);
        if modulus == 0 || 63 - modulus.leading_zeros() != n {
            return Err(Error::ModulusDegree { n, modulus });
        }
        if !is_irreducible(modulus) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let mut ctx = FieldCtx {
            n,
            modulus,
            trace_mask: 0,
            sd_basis: Vec::new(),
            sd_basis_inv: BitMatrix::identity(n as usize),
            to_coords: LinearMap::from_images(&[]),
            from_coords: LinearMap::from_images(&[]),
            tables: None,
        };
        if n <= LOG_TABLE_MAX_DEGREE {
            ctx.tables = Some(ctx.build_log_tables());
        }
        ctx.trace_mask = (0..n).fold(0, |m, i| m | ((ctx.trace_slow(1 << i) as u32) << i));
        let basis = ctx.self_dual_basis()?;
        let s = BitMatrix::from_rows(basis.clone(), n as usize);
        let inv = s.inverse().map_err(|_| Error::Internal("self-dual basis is singular".into()))?;
        ctx.from_coords = LinearMap::from_images(&basis);
        ctx.to_coords = LinearMap::from_images(inv.rows());
        ctx.sd_basis = basis;
        ctx.sd_basis_inv = inv;
        for i in 0..n as usize {
            for j in 0..n as usize {
                if ctx.trace(ctx.mul(ctx.sd_basis[i], ctx.sd_basis[j])) != (i == j) {
                    return Err(Error::Internal("Gram condition failed for self-dual basis".into()));
                }
            }
        }
        Ok(ctx)
    }

    pub fn from_spec(spec: FieldSpec) -> Result<Self> {
        Self::new(spec.n, Some(spec.modulus))
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { n: self.n, modulus: self.modulus }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Multiplicative group order `2^n - 1`.
    pub fn group_order(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// Self-dual basis elements in polynomial-basis form (the rows of the basis matrix).
    pub fn self_dual_basis_elements(&self) -> &[u32] {
        &self.sd_basis
    }

    pub fn basis_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.sd_basis.clone(), self.n as usize)
    }

    pub fn basis_matrix_inverse(&self) -> &BitMatrix {
        &self.sd_basis_inv
    }

    pub fn has_log_tables(&self) -> bool {
        self.tables.is_some()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.clmul(a, b),
        }
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let ord = self.group_order();
        if let Some(t) = &self.tables {
            let l = (t.log[a as usize] as u128 * e as u128 % ord as u128) as usize;
            return t.exp[l];
        }
        let mut e = e % ord;
        if e == 0 {
            return 1;
        }
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.clmul(acc, base);
            }
            base = self.clmul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: FieldElement) -> Result<FieldElement> {
        if a == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow(a, self.group_order() - 1))
    }

    /// `a^{2^i}`.
    pub fn frobenius(&self, a: FieldElement, i: u32) -> FieldElement {
        let i = i % self.n;
        if let Some(t) = &self.tables {
            if a == 0 {
                return 0;
            }
            let l = ((t.log[a as usize] as u64) << i) % self.group_order();
            return t.exp[l as usize];
        }
        (0..i).fold(a, |x, _| self.clmul(x, x))
    }

    /// Absolute trace `Tr_1^n(x)`.
    #[inline]
    pub fn trace(&self, x: FieldElement) -> bool {
        (x & self.trace_mask).count_ones() & 1 == 1
    }

    /// `Tr_m^n(x) = sum_{i < n/m} x^{2^{m i}}`, an element of the subfield GF(2^m).
    pub fn rel_trace(&self, m: u32, x: FieldElement) -> Result<FieldElement> {
        self.check_divisor(m)?;
        Ok((0..self.n / m).fold(0, |acc, i| acc ^ self.frobenius(x, m * i)))
    }

    /// `Tr_1^m(y)` for `y` in the subfield GF(2^m).
    pub fn subfield_trace(&self, m: u32, y: FieldElement) -> Result<bool> {
        self.check_divisor(m)?;
        if !self.in_subfield(m, y) {
            return Err(Error::NotInSubfield(y));
        }
        let s = (0..m).fold(0, |acc, i| acc ^ self.frobenius(y, i));
        match s {
            0 => Ok(false),
            1 => Ok(true),
            _ => Err(Error::Internal("subfield trace left GF(2)".into())),
        }
    }

    pub fn in_subfield(&self, m: u32, y: FieldElement) -> bool {
        self.n.is_multiple_of(m) && self.frobenius(y, m) == y
    }

    /// All elements of the subfield GF(2^m), in increasing bitmask order.
    pub fn subfield_elements(&self, m: u32) -> Result<Vec<FieldElement>> {
        self.check_divisor(m)?;
        Ok(self.elements().filter(|&y| self.in_subfield(m, y)).collect())
    }

    /// Self-dual coordinates of `x`: bit `j` is the coefficient of `a_j`.
    #[inline]
    pub fn coords(&self, x: FieldElement) -> u32 {
        self.to_coords.apply(x)
    }

    #[inline]
    pub fn from_coords(&self, bits: u32) -> FieldElement {
        self.from_coords.apply(bits)
    }

    /// All elements in polynomial-basis order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..(1u32 << self.n)
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        match &self.tables {
            Some(t) => t.exp[1],
            None => self.find_primitive(),
        }
    }

    fn check_divisor(&self, m: u32) -> Result<()> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, n: self.n });
        }
        Ok(())
    }

    fn clmul(&self, a: u32, b: u32) -> u32 {
        let mut r = 0u64;
        let mut a = a as u64;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        poly_mod(r, self.modulus) as u32
    }

    fn trace_slow(&self, x: u32) -> bool {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.n {
            acc ^= y;
            y = self.clmul(y, y);
        }
        debug_assert!(acc <= 1);
        acc == 1
    }

    fn find_primitive(&self) -> u32 {
        let ord = self.group_order();
        let primes = prime_factors(ord);
        (1..(1u32 << self.n))
            .find(|&g| {
                let pw = |e: u64| {
                    let (mut base, mut acc, mut e) = (g, 1u32, e);
                    while e > 0 {
                        if e & 1 == 1 {
                            acc = self.clmul(acc, base);
                        }
                        base = self.clmul(base, base);
                        e >>= 1;
                    }
                    acc
                };
                primes.iter().all(|&p| pw(ord / p) != 1)
            })
            .expect("multiplicative group is cyclic")
    }

    fn build_log_tables(&self) -> LogTables {
        let q1 = self.group_order() as usize;
        let g = self.find_primitive();
        let mut exp = vec![0u32; 2 * q1];
        let mut log = vec![0u32; q1 + 1];
        let mut x = 1u32;
        for i in 0..q1 {
            exp[i] = x;
            exp[i + q1] = x;
            log[x as usize] = i as u32;
            x = self.clmul(x, g);
        }
        LogTables { exp, log }
    }

    /// Orthonormalizes the trace form `(u, v) -> Tr(u v)` starting from the polynomial basis.
    fn self_dual_basis(&self) -> Result<Vec<u32>> {
        let form = |u: u32, v: u32| self.trace(self.clmul(u, v));
        let mut pending: Vec<u32> = (0..self.n).map(|i| 1u32 << i).collect();
        let mut done: Vec<u32> = Vec::with_capacity(self.n as usize);
        while !pending.is_empty() {
            // Tr(v v) = Tr(v), so the diagonal of the form is the trace itself.
            if let Some(pos) = pending.iter().position(|&v| self.trace(v)) {
                let v = pending.swap_remove(pos);
                for z in pending.iter_mut() {
                    if form(*z, v) {
                        *z ^= v;
                    }
                }
                done.push(v);
                continue;
            }
            // The remaining subspace is alternating: trade one finished vector and a
            // hyperbolic pair for three orthonormal vectors.
            let alpha = done
                .pop()
                .ok_or_else(|| Error::Internal("trace form is alternating".into()))?;
            let u = pending.swap_remove(0);
            let pos = pending
                .iter()
                .position(|&w| form(u, w))
                .ok_or_else(|| Error::Internal("trace form is degenerate".into()))?;
            let w = pending.swap_remove(pos);
            for z in pending.iter_mut() {
                let zu = form(*z, u);
                let zw = form(*z, w);
                if zw {
                    *z ^= u;
                }
                if zu {
                    *z ^= w;
                }
            }
            done.extend([alpha ^ u, alpha ^ w, alpha ^ u ^ w]);
        }
        Ok(done)
    }
}

/// `r mod m` for polynomials over GF(2) packed into `u64`.
fn poly_mod(mut r: u64, m: u64) -> u64 {
    let dm = 63 - m.leading_zeros();
    while r != 0 {
        let dr = 63 - r.leading_zeros();
        if dr < dm {
            break;
        }
        r ^= m << (dr - dm);
    }
    r
}

fn poly_mulmod(a: u64, b: u64, m: u64) -> u64 {
    let mut r = 0u64;
    let mut a = poly_mod(a, m);
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        a = poly_mod(a << 1, m);
        b >>= 1;
    }
    r
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test: `x^{2^n} = x (mod f)` and `gcd(x^{2^{n/p}} - x, f) = 1` for every prime `p | n`.
pub fn is_irreducible(f: u64) -> bool {
    if f < 2 {
        return false;
    }
    let n = 63 - f.leading_zeros();
    if n == 0 {
        return false;
    }
    let frob = |k: u32| (0..k).fold(poly_mod(2, f), |x, _| poly_mulmod(x, x, f));
    if frob(n) != poly_mod(2, f) {
        return false;
    }
    prime_factors(n as u64)
        .into_iter()
        .all(|p| poly_gcd(f, frob(n / p as u32) ^ poly_mod(2, f)) == 1)
}

pub(crate) fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x.is_multiple_of(p) {
            out.push(p);
            while x.is_multiple_of(p) {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}
