// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Codeword files: `LDC1`, then `t`, `m`, `h` as little-endian `u32`, then
//! every coordinate as `ceil(t / 8)` little-endian bytes.

use std::io::{Read, Write};
use std::sync::Arc;

use super::{CodeSpec, Codeword};
use crate::algebra::gf2x::Limbs;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"LDC1";

fn io(e: std::io::Error) -> Error {
    Error::Format(e.to_string())
}

pub fn write_codeword<W: Write>(cw: &Codeword, mut w: W) -> Result<()> {
    let spec = cw.spec();
    let t = spec.field().t();
    w.write_all(MAGIC).map_err(io)?;
    for x in [t, spec.m() as u32, spec.h() as u32] {
        w.write_all(&x.to_le_bytes()).map_err(io)?;
    }
    let nb = spec.field().element_bytes();
    let mut buf = Vec::with_capacity(nb);
    for v in cw.raw() {
        buf.clear();
        buf.extend(v.iter().flat_map(|x| x.to_le_bytes()).take(nb));
        w.write_all(&buf).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Reads a codeword of `spec`, rejecting headers that describe another
/// code and elements with bits at or above degree `t`.
pub fn read_codeword<R: Read>(spec: &Arc<CodeSpec>, mut r: R) -> Result<Codeword> {
    let mut head = [0u8; 16];
    r.read_exact(&mut head).map_err(io)?;
    if &head[..4] != MAGIC {
        return Err(Error::Format("missing LDC1 magic".into()));
    }
    let word = |i: usize| u32::from_le_bytes(head[i..i + 4].try_into().expect("4 bytes"));
    let (t, m, h) = (word(4), word(8), word(12));
    if t != spec.field().t() || m as u64 != spec.m() || h as usize != spec.h() {
        return Err(Error::Format(format!(
            "file holds t = {t}, m = {m}, h = {h}; spec has t = {}, m = {}, h = {}",
            spec.field().t(),
            spec.m(),
            spec.h()
        )));
    }
    let nb = spec.field().element_bytes();
    let words = spec.field().zero_raw().len();
    let mut buf = vec![0u8; nb];
    let mut values = Vec::with_capacity(spec.len());
    for idx in 0..spec.len() {
        r.read_exact(&mut buf).map_err(io)?;
        let mut v: Limbs = Limbs::from_elem(0, words);
        for (b, byte) in buf.iter().enumerate() {
            v[b / 8] |= (*byte as u64) << (8 * (b % 8));
        }
        let high = t as usize;
        if (high..nb * 8).any(|bit| (v[bit / 64] >> (bit % 64)) & 1 == 1) {
            return Err(Error::Format(format!("element {idx} has degree >= {t}")));
        }
        values.push(v);
    }
    let mut extra = [0u8; 1];
    if r.read(&mut extra).map_err(io)? != 0 {
        return Err(Error::Format("trailing bytes after the last element".into()));
    }
    Ok(Codeword::from_raw(spec.clone(), values))
}
