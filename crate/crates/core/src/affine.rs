use crate::bitmatrix::BitMatrix;
use crate::error::{Error, Result};

/// The map on Boolean functions `f -> f(A x + b) + <l, x> + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineTransform {
    a: BitMatrix,
    b: u32,
    l: u32,
    c: bool,
}

impl AffineTransform {
    pub fn new(a: BitMatrix, b: u32, l: u32, c: bool) -> Result<Self> {
        if !a.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let n = a.ncols();
        if n < 32 && (b >> n != 0 || l >> n != 0) {
            return Err(Error::InvalidParameters("vector wider than matrix".into()));
        }
        Ok(AffineTransform { a, b, l, c })
    }

    pub fn identity(n: u32) -> Self {
        AffineTransform { a: BitMatrix::identity(n as usize), b: 0, l: 0, c: false }
    }

    pub fn n(&self) -> u32 {
        self.a.ncols() as u32
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.a
    }

    pub fn translation(&self) -> u32 {
        self.b
    }

    pub fn functional(&self) -> u32 {
        self.l
    }

    pub fn constant(&self) -> bool {
        self.c
    }

    /// The input substitution `x -> A x + b`.
    pub fn apply_point(&self, x: u32) -> u32 {
        self.a.mul_vec(x) ^ self.b
    }

    /// Same input substitution with the functional part `(l, c)` dropped.
    pub fn substitution_only(&self) -> Self {
        AffineTransform { a: self.a.clone(), b: self.b, l: 0, c: false }
    }
}
