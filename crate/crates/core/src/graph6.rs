//! graph6 encoding (bytes offset by 63, upper triangle in column order).

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const MAX_ORDER: usize = 258_047;

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

/// Decode one graph6 record. A leading `>>graph6<<` header and trailing
/// line terminators are ignored; byte offsets in errors count from the start
/// of the record proper.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();

    let mut data = Vec::with_capacity(bytes.len());
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, format!("byte 0x{b:02x} outside the printable range 63..=126")));
        }
        data.push(b - 63);
    }

    let (n, body_start) = match data.first() {
        None => return Err(err(0, "empty record")),
        Some(&x) if x < 63 => (x as usize, 1),
        Some(_) => {
            if data.get(1) == Some(&63) {
                return Err(err(1, "orders above 258047 are not supported"));
            }
            if data.len() < 4 {
                return Err(err(data.len(), "truncated length header"));
            }
            let n = (data[1] as usize) << 12 | (data[2] as usize) << 6 | data[3] as usize;
            (n, 4)
        }
    };
    if body_start == 4 && n < 63 {
        return Err(err(0, format!("non-canonical length header for n = {n}")));
    }

    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    let body = &data[body_start..];
    if body.len() < need {
        return Err(err(bytes.len(), format!("expected {need} adjacency bytes, found {}", body.len())));
    }
    if body.len() > need {
        return Err(err(body_start + need, "trailing bytes after adjacency data"));
    }
    let pad = need * 6 - bits;
    if need > 0 && body[need - 1] & ((1u8 << pad) - 1) != 0 {
        return Err(err(body_start + need - 1, "nonzero padding bits"));
    }

    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let byte = body[k / 6];
            if byte >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(u, v)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Encode a graph as a graph6 record (no header, no newline).
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    debug_assert!(n <= MAX_ORDER);
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8);
    } else {
        out.extend([63, (n >> 12) as u8 & 63, (n >> 6) as u8 & 63, n as u8 & 63]);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(acc << (6 - filled));
    }
    out.into_iter().map(|b| (b + 63) as char).collect()
}
