//! Text encodings for trees: a plain edge list and graph6.
//!
//! An edge-list record reads `n; u-v,u-v,...` with 0-based vertices; the
//! single vertex is `1;`.

use crate::error::{Error, Result};
use crate::graph::Tree;

const EDGE_LIST: &str = "edge-list";
const GRAPH6: &str = "graph6";

/// Largest order graph6 can describe with the 4-byte header.
pub const GRAPH6_MAX_ORDER: usize = 258_047;

fn parse_err(format: &'static str, reason: impl Into<String>) -> Error {
    Error::Parse {
        format,
        reason: reason.into(),
    }
}

pub fn to_edge_list(t: &Tree) -> String {
    let mut out = format!("{};", t.order());
    for (i, (u, v)) in t.edges().iter().enumerate() {
        out.push(if i == 0 { ' ' } else { ',' });
        out.push_str(&format!("{u}-{v}"));
    }
    out
}

pub fn parse_edge_list(line: &str) -> Result<Tree> {
    let (head, rest) = line
        .split_once(';')
        .ok_or_else(|| parse_err(EDGE_LIST, "missing ';'"))?;
    let n = parse_number(head)?;
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let edges = if rest.is_empty() {
        Vec::new()
    } else {
        let body = rest
            .strip_prefix(' ')
            .ok_or_else(|| parse_err(EDGE_LIST, "expected a space after ';'"))?;
        body.split(',')
            .map(|pair| {
                let (u, v) = pair
                    .split_once('-')
                    .ok_or_else(|| parse_err(EDGE_LIST, format!("bad edge {pair:?}")))?;
                Ok((parse_number(u)?, parse_number(v)?))
            })
            .collect::<Result<Vec<_>>>()?
    };
    if edges.len() + 1 != n {
        return Err(parse_err(
            EDGE_LIST,
            format!("{} edges for order {n}", edges.len()),
        ));
    }
    Tree::new(n, edges)
}

fn parse_number(s: &str) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(EDGE_LIST, format!("bad number {s:?}")));
    }
    s.parse()
        .map_err(|_| parse_err(EDGE_LIST, format!("number out of range {s:?}")))
}

pub fn to_graph6(t: &Tree) -> Result<String> {
    let n = t.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::InvalidOrder(n));
    }
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut packed = vec![0u8; bits.div_ceil(6)];
    for &(u, v) in t.edges() {
        let (i, j) = if u < v { (u, v) } else { (v, u) };
        let k = j * (j - 1) / 2 + i;
        packed[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(packed.into_iter().map(|b| b + 63));
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn parse_graph6(line: &str) -> Result<Tree> {
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(GRAPH6, format!("byte {b} outside 63..=126")));
    }
    let (n, body) = match bytes {
        [] => return Err(parse_err(GRAPH6, "empty record")),
        [126, 126, ..] => return Err(parse_err(GRAPH6, "orders above 258047 unsupported")),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(parse_err(GRAPH6, "truncated order"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            if n <= 62 {
                return Err(parse_err(GRAPH6, "long header for a short order"));
            }
            (n, &rest[3..])
        }
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let bits = n * (n - 1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(parse_err(
            GRAPH6,
            format!("{} data bytes for order {n}", body.len()),
        ));
    }
    let mut edges = Vec::new();
    let (mut i, mut j) = (0usize, 1usize);
    for k in 0..bits {
        if (body[k / 6] - 63) & (1 << (5 - k % 6)) != 0 {
            if edges.len() + 1 == n {
                return Err(parse_err(GRAPH6, "too many edges for a tree"));
            }
            edges.push((i, j));
        }
        i += 1;
        if i == j {
            i = 0;
            j += 1;
        }
    }
    if bits % 6 != 0 && (body[body.len() - 1] - 63) & ((1 << (6 - bits % 6)) - 1) != 0 {
        return Err(parse_err(GRAPH6, "nonzero padding"));
    }
    Tree::new(n, edges)
}
