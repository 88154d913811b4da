//! graph6 encoding.
//!
//! `N(n)` followed by the upper triangle of the adjacency matrix taken
//! column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed six bits
//! per byte big-endian, each byte offset by 63. An optional `>>graph6<<`
//! header is accepted on input.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const HEADER: &str = ">>graph6<<";

fn encode_n(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(((acc << (6 - nbits)) + 63) as char);
    }
    out
}

fn sextet(b: u8) -> Result<u8> {
    if (63..=126).contains(&b) {
        Ok(b - 63)
    } else {
        Err(Error::Parse(format!(
            "byte {b:#04x} outside the graph6 range 63..=126"
        )))
    }
}

fn decode_n(bytes: &[u8]) -> Result<(usize, usize)> {
    let take = |k: usize, from: usize| -> Result<usize> {
        if bytes.len() < from + k {
            return Err(Error::Parse("truncated graph6 size field".into()));
        }
        bytes[from..from + k]
            .iter()
            .try_fold(0usize, |acc, &b| Ok((acc << 6) | sextet(b)? as usize))
    };
    match bytes {
        [] => Err(Error::Parse("empty graph6 string".into())),
        [126, 126, ..] => Ok((take(6, 2)?, 8)),
        [126, ..] => Ok((take(3, 1)?, 4)),
        [b, ..] => Ok((sextet(*b)? as usize, 1)),
    }
}

pub fn decode(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let (n, off) = decode_n(bytes)?;
    let nbits = n * n.saturating_sub(1) / 2;
    let want = nbits.div_ceil(6);
    let body = &bytes[off..];
    if body.len() != want {
        return Err(Error::Parse(format!(
            "graph6 body for n={n} needs {want} bytes, got {}",
            body.len()
        )));
    }
    for b in body {
        sextet(*b)?;
    }
    let mut g = Graph::new(n);
    let mut bits = body.iter().flat_map(|&b| {
        let v = b.wrapping_sub(63);
        (0..6).rev().map(move |i| (v >> i) & 1 == 1)
    });
    for j in 1..n {
        for i in 0..j {
            if bits.next().unwrap_or(false) {
                g.add_edge(i, j);
            }
        }
    }
    // Padding bits must be zero for a canonical encoding.
    if bits.any(|b| b) {
        return Err(Error::Parse("nonzero padding bits in graph6 body".into()));
    }
    Ok(g)
}

/// Decodes one graph per non-empty line.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| decode(l).map_err(|e| Error::Parse(format!("line {}: {e}", i + 1))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        // Reference encodings from the format description.
        assert_eq!(encode(&Graph::new(0)), "?");
        assert_eq!(encode(&Graph::path(2)), "A_");
        assert_eq!(encode(&Graph::cycle(4)), "Cl");
        assert_eq!(encode(&Graph::complete(4)), "C~");
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn header_accepted() {
        assert_eq!(decode(">>graph6<<Cl").unwrap(), Graph::cycle(4));
    }

    #[test]
    fn large_n_size_field() {
        let g = Graph::path(63);
        let s = encode(&g);
        assert!(s.starts_with("~??~"));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(decode("").is_err());
        assert!(decode("C").is_err());
        assert!(decode("Cl?").is_err());
        assert!(decode("C\x7f").is_err());
        // Padding bits set.
        assert!(decode("A`").is_err());
    }

    proptest! {
        #[test]
        fn roundtrip(n in 0usize..80, seed in any::<u64>()) {
            let mut g = Graph::new(n);
            let mut x = seed | 1;
            for i in 0..n {
                for j in i + 1..n {
                    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                    if x & 3 == 0 { g.add_edge(i, j); }
                }
            }
            prop_assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }
}
