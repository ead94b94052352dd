// Copyright 2026 The ldcforge Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

//! Hex form of packed bit vectors: exactly `ceil(bits / 4)` lowercase digits,
//! least-significant word first. Each word except the last prints as 16
//! big-endian digits; the last word takes the remaining digits.

use smallvec::SmallVec;

use super::gf2x::Limbs;
use crate::error::{Error, Result};

fn layout(bits: usize) -> (usize, usize) {
    let words = bits.div_ceil(64).max(1);
    let digits = bits.div_ceil(4).max(1);
    (words, digits - 16 * (words - 1))
}

pub(crate) fn encode_bits(words: &[u64], bits: usize) -> String {
    let (n, last) = layout(bits);
    let mut s = String::with_capacity(bits.div_ceil(4));
    for i in 0..n {
        let w = words.get(i).copied().unwrap_or(0);
        if i + 1 < n {
            s.push_str(&format!("{w:016x}"));
        } else {
            s.push_str(&format!("{w:0last$x}"));
        }
    }
    s
}

pub(crate) fn decode_bits(s: &str, bits: usize) -> Result<Limbs> {
    let (n, last) = layout(bits);
    if s.len() != 16 * (n - 1) + last || !s.is_ascii() {
        return Err(Error::Format(format!("hex string {s:?} does not encode {bits} bits")));
    }
    let mut out: Limbs = SmallVec::with_capacity(n);
    for i in 0..n {
        let start = 16 * i;
        let end = if i + 1 < n { start + 16 } else { s.len() };
        let w = u64::from_str_radix(&s[start..end], 16).map_err(|e| Error::Format(format!("bad hex {s:?}: {e}")))?;
        out.push(w);
    }
    let top = bits - 64 * (n - 1);
    if top < 64 && out[n - 1] >> top != 0 {
        return Err(Error::Format(format!(
            "hex string {s:?} has bits beyond position {bits}"
        )));
    }
    Ok(out)
}
