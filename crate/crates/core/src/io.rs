//! Text formats: truth-table and ANF files, spectrum and sweep CSVs.
//!
//! A truth-table file has two lines:
//!
//! ```text
//! btf1 n=4 field=gf2_4:13
//! 9c63
//! ```
//!
//! The second line lists the table bytes in order, bit 0 of byte 0 being `f` at
//! index 0. Functions realized on GF(2^t) x GF(2^t) carry `field=gf2_t:<hex>^2`.

use std::fmt;
use std::str::FromStr;

use crate::boolfun::{Anf, BooleanFunction};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldSpec};
use crate::quadratic::MonomialClass;
use crate::spectra::{NegaSpectrum, WalshSpectrum};

pub const TABLE_TAG: &str = "btf1";
pub const ANF_TAG: &str = "anf1";

/// Which field the table indices live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    /// Indices are self-dual coordinates of GF(2^n).
    Single(FieldSpec),
    /// Index `x + 2^t y` over GF(2^t) x GF(2^t).
    Square(FieldSpec),
}

impl FieldTag {
    pub fn spec(&self) -> FieldSpec {
        match *self {
            FieldTag::Single(s) | FieldTag::Square(s) => s,
        }
    }

    pub fn variables(&self) -> u32 {
        match *self {
            FieldTag::Single(s) => s.n,
            FieldTag::Square(s) => 2 * s.n,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Single(s) => write!(f, "{s}"),
            FieldTag::Square(s) => write!(f, "{s}^2"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.strip_suffix("^2") {
            Some(base) => Ok(FieldTag::Square(base.parse()?)),
            None => Ok(FieldTag::Single(s.parse()?)),
        }
    }
}

/// Table bytes as lowercase hex (at least one byte).
pub fn to_hex(f: &BooleanFunction) -> String {
    let nbytes = (f.len() / 8).max(1);
    let mut out = String::with_capacity(2 * nbytes);
    for i in 0..nbytes {
        let byte = (f.words()[i / 8] >> (8 * (i % 8))) & 0xff;
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

pub fn from_hex(n: u32, hex: &str) -> Result<BooleanFunction> {
    let hex = hex.trim();
    let nbytes = (1usize << n).div_ceil(8);
    if hex.len() != 2 * nbytes || !hex.is_ascii() {
        return Err(Error::Parse(format!("expected {} hex digits for n = {n}, got {}", 2 * nbytes, hex.len())));
    }
    let mut words = vec![0u64; nbytes.div_ceil(8)];
    for i in 0..nbytes {
        let byte = u64::from_str_radix(&hex[2 * i..2 * i + 2], 16)
            .map_err(|_| Error::Parse(format!("bad hex byte at offset {}", 2 * i)))?;
        words[i / 8] |= byte << (8 * (i % 8));
    }
    BooleanFunction::from_words(n, words)
}

fn write_tagged(tag: &str, f: &BooleanFunction, field: FieldTag) -> Result<String> {
    if field.variables() != f.n() {
        return Err(Error::Parse(format!("field {field} does not match n = {}", f.n())));
    }
    Ok(format!("{tag} n={} field={field}\n{}\n", f.n(), to_hex(f)))
}

fn read_tagged(tag: &str, text: &str) -> Result<(BooleanFunction, FieldTag)> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some(tag) {
        return Err(Error::Parse(format!("missing {tag} header")));
    }
    let mut n = None;
    let mut field = None;
    for p in parts {
        match p.split_once('=') {
            Some(("n", v)) => n = Some(v.parse::<u32>().map_err(|_| Error::Parse(format!("bad n {v:?}")))?),
            Some(("field", v)) => field = Some(v.parse::<FieldTag>()?),
            _ => return Err(Error::Parse(format!("unexpected header field {p:?}"))),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("header lacks n=".into()))?;
    let field = field.ok_or_else(|| Error::Parse("header lacks field=".into()))?;
    if n > BooleanFunction::MAX_VARIABLES {
        return Err(Error::Parse(format!("n = {n} too large")));
    }
    if field.variables() != n {
        return Err(Error::Parse(format!("n = {n} does not match field {field}")));
    }
    let body = lines.next().ok_or_else(|| Error::Parse("missing table line".into()))?;
    if lines.next().is_some() {
        return Err(Error::Parse("trailing data after table".into()));
    }
    Ok((from_hex(n, body)?, field))
}

pub fn write_table(f: &BooleanFunction, field: FieldTag) -> Result<String> {
    write_tagged(TABLE_TAG, f, field)
}

pub fn read_table(text: &str) -> Result<(BooleanFunction, FieldTag)> {
    read_tagged(TABLE_TAG, text)
}

/// Same layout as a table file; bit `a` is the coefficient of the monomial with support `a`.
pub fn write_anf(anf: &Anf, field: FieldTag) -> Result<String> {
    write_tagged(ANF_TAG, anf.coefficients(), field)
}

pub fn read_anf(text: &str) -> Result<(Anf, FieldTag)> {
    let (coeffs, field) = read_tagged(ANF_TAG, text)?;
    Ok((Anf::from_coefficients(coeffs), field))
}

pub fn walsh_csv(w: &WalshSpectrum) -> String {
    let mut out = String::from("lambda_index,re\n");
    for (l, v) in w.values.iter().enumerate() {
        out.push_str(&format!("{l},{v}\n"));
    }
    out
}

pub fn nega_csv(s: &NegaSpectrum) -> String {
    let mut out = String::from("lambda_index,re,im\n");
    for (l, v) in s.values.iter().enumerate() {
        out.push_str(&format!("{l},{},{}\n", v.re, v.im));
    }
    out
}

/// One row per field element `lambda` (as a polynomial-basis bitmask, zero included).
/// `bent` and `negabent` are the monomial predicates, both `false` at zero.
pub fn sweep_csv(ctx: &FieldCtx, k: u32) -> Result<String> {
    let class = MonomialClass::new(ctx, k)?;
    let even = ctx.n().is_multiple_of(2);
    let mut out = String::from("lambda,bent,negabent,zt_zero,in_power_image\n");
    for lambda in ctx.elements() {
        let nonzero = lambda != 0;
        let bent = nonzero && even && class.is_bent(lambda)?;
        let negabent = nonzero && class.is_negabent(lambda)?;
        out.push_str(&format!(
            "{lambda},{},{},{},{}\n",
            bent as u8,
            negabent as u8,
            class.is_zt_root(lambda) as u8,
            class.in_power_image(lambda) as u8
        ));
    }
    Ok(out)
}
