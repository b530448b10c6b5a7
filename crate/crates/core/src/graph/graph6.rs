//! graph6 text encoding.
//!
//! Header: `n + 63` as one byte for `n <= 62`, otherwise `~` followed by
//! `n` in three big-endian 6-bit groups. Body: the upper triangle in column
//! order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed six bits per byte
//! with the first bit most significant, zero-padded, each byte offset by 63.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        let row = g.rows()[j];
        for i in 0..j {
            acc = acc << 1 | (row >> i & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse { offset, reason: reason.into() }
}

/// Decodes one graph6 string. A leading `>>graph6<<` marker and surrounding
/// ASCII whitespace are accepted; byte offsets in errors refer to the input
/// as given.
pub fn graph6_decode(text: &str) -> Result<Graph> {
    let lead = text.len() - text.trim_start().len();
    let mut bytes = text.trim().as_bytes();
    let mut base = lead;
    if bytes.starts_with(HEADER.as_bytes()) {
        bytes = &bytes[HEADER.len()..];
        base += HEADER.len();
    }
    if bytes.is_empty() {
        return Err(parse_err(base, "empty input"));
    }
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(parse_err(base + pos, format!("byte 0x{:02x} outside the graph6 range", bytes[pos])));
    }
    let (n, header_len) = if bytes[0] != b'~' {
        (usize::from(bytes[0] - 63), 1)
    } else {
        if bytes.get(1) == Some(&b'~') {
            return Err(parse_err(base + 1, "eight-byte size header exceeds capacity"));
        }
        if bytes.len() < 4 {
            return Err(parse_err(base + bytes.len(), "truncated size header"));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | usize::from(b - 63));
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let body_len = bits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() != body_len {
        let offset = base + header_len + body.len().min(body_len);
        return Err(parse_err(
            offset,
            format!("body has {} bytes, {n} vertices need {body_len}", body.len()),
        ));
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[body_len - 1] - 63;
        if last & ((1u8 << (6 - bits % 6)) - 1) != 0 {
            return Err(parse_err(base + header_len + body_len - 1, "nonzero padding bits"));
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}
