//! Text formats: edge lists, graph6 and the partition file.
//!
//! Edge list: one `u v` pair per line, optionally preceded by an `n=<count>`
//! header. Blank lines and lines starting with `#` are ignored.
//!
//! graph6: the order `N(n)` followed by the upper triangle of the adjacency
//! matrix in column order (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed six
//! bits per byte, most significant bit first, each byte offset by 63. The
//! last byte is padded with zero bits.
//!
//! Partition file: a `kind=2proper` or `kind=almost` header, then one part
//! per line as space-separated vertex ids.

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::partition::{Partition, PartitionKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: self-loop {vertex} {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: invalid token {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected two vertex ids, found {found}")]
    Arity { line: usize, found: usize },
    #[error("header n={n} is smaller than vertex id {vertex}")]
    HeaderTooSmall { n: usize, vertex: usize },
    #[error("graph6: byte {byte} at offset {offset} outside [63, 126]")]
    Graph6Byte { offset: usize, byte: u8 },
    #[error("graph6: expected {expected} data bytes, found {found}")]
    Graph6Length { expected: usize, found: usize },
    #[error("graph6: non-zero padding bits")]
    Graph6Padding,
    #[error("graph6: empty input")]
    Graph6Empty,
    #[error("partition: missing or invalid kind header")]
    PartitionHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Input encodings accepted by [`parse_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    EdgeList,
    Graph6,
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut header: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if let Some(rest) = body.strip_prefix("n=") {
            let n =
                rest.trim().parse::<usize>().map_err(|_| FormatError::BadToken { line, token: body.to_string() })?;
            header = Some(n);
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(FormatError::Arity { line, found: tokens.len() });
        }
        let mut ids = [0usize; 2];
        for (slot, tok) in ids.iter_mut().zip(&tokens) {
            *slot = tok.parse::<usize>().map_err(|_| FormatError::BadToken { line, token: tok.to_string() })?;
        }
        let [u, v] = ids;
        if u == v {
            return Err(FormatError::SelfLoop { line, vertex: u });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = match (header, max_id) {
        (Some(n), Some(m)) if m >= n => return Err(FormatError::HeaderTooSmall { n, vertex: m }),
        (Some(n), _) => n,
        (None, Some(m)) => m + 1,
        (None, None) => 0,
    };
    Ok(Graph::from_edges(n, edges)?)
}

/// Edge-list text with an explicit `n=` header, so isolated vertices survive.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn decode_order(bytes: &[u8]) -> Result<(usize, usize), FormatError> {
    let first = *bytes.first().ok_or(FormatError::Graph6Empty)?;
    if first < 126 {
        return Ok(((first - 63) as usize, 1));
    }
    let (start, count) = if bytes.get(1) == Some(&126) { (2, 6) } else { (1, 3) };
    if bytes.len() < start + count {
        return Err(FormatError::Graph6Length { expected: start + count, found: bytes.len() });
    }
    let mut n = 0usize;
    for &b in &bytes[start..start + count] {
        n = (n << 6) | (b - 63) as usize;
    }
    Ok((n, start + count))
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn parse_graph6(line: &str) -> Result<Graph, FormatError> {
    let trimmed = line.trim();
    let body = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed).as_bytes();
    for (offset, &byte) in body.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(FormatError::Graph6Byte { offset, byte });
        }
    }
    let (n, header) = decode_order(body)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &body[header..];
    if data.len() != expected {
        return Err(FormatError::Graph6Length { expected, found: data.len() });
    }
    let bit = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    while k < expected * 6 {
        if bit(k) {
            return Err(FormatError::Graph6Padding);
        }
        k += 1;
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Guesses the encoding: a single whitespace-free token made only of bytes in
/// `[63, 126]` is graph6, anything else is an edge list.
pub fn sniff(text: &str) -> InputFormat {
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let body = first.strip_prefix(">>graph6<<").unwrap_or(first);
    if !body.is_empty() && !body.contains(char::is_whitespace) && body.bytes().all(|b| (63..=126).contains(&b)) {
        InputFormat::Graph6
    } else {
        InputFormat::EdgeList
    }
}

pub fn parse_graph(text: &str, format: Option<InputFormat>) -> Result<Graph, FormatError> {
    match format.unwrap_or_else(|| sniff(text)) {
        InputFormat::EdgeList => parse_edge_list(text),
        InputFormat::Graph6 => {
            let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
            parse_graph6(first)
        }
    }
}

pub fn emit_partition(p: &Partition) -> String {
    let mut out = format!("kind={}\n", p.kind.tag());
    for part in &p.parts {
        let line: Vec<String> = part.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a partition file. Parts are kept in file order; no normalization.
pub fn parse_partition(text: &str) -> Result<Partition, FormatError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines.next().ok_or(FormatError::PartitionHeader)?;
    let kind = header.strip_prefix("kind=").and_then(PartitionKind::from_tag).ok_or(FormatError::PartitionHeader)?;
    let mut parts = Vec::new();
    for (line, body) in lines {
        let part = body
            .split_whitespace()
            .map(|tok| tok.parse::<usize>().map_err(|_| FormatError::BadToken { line, token: tok.to_string() }))
            .collect::<Result<Vec<_>, _>>()?;
        parts.push(part);
    }
    Ok(Partition { parts, kind })
}
