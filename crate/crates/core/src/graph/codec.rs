//! Text records: `<n>\t<upper-triangle bits, row-major>`.

use super::{Graph, MAX_VERTICES};
use crate::error::{Error, Result};

pub fn encode_record(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(4 + n * (n - 1) / 2);
    out.push_str(&n.to_string());
    out.push('\t');
    for u in 0..n {
        for v in u + 1..n {
            out.push(if g.has_edge(u, v) { '1' } else { '0' });
        }
    }
    out
}

/// Parse a graph record. `line` is the 1-based line number used in errors.
pub fn decode_record(record: &str, line: usize) -> Result<Graph> {
    let (n_field, bits) = record
        .split_once('\t')
        .ok_or_else(|| Error::parse(line, "record", "expected <n>\\t<bits>"))?;
    let n: usize = n_field
        .parse()
        .map_err(|_| Error::parse(line, "n", format!("not an integer: {n_field:?}")))?;
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::parse(line, "n", format!("{n} outside 1..=64")));
    }
    let expected = n * (n - 1) / 2;
    if bits.len() != expected {
        return Err(Error::parse(
            line,
            "bits",
            format!("expected {expected} bits, found {}", bits.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut chars = bits.bytes();
    for u in 0..n {
        for v in u + 1..n {
            match chars.next() {
                Some(b'1') => g.insert_edge(u, v),
                Some(b'0') => {}
                other => {
                    return Err(Error::parse(
                        line,
                        "bits",
                        format!("unexpected {:?}", other.map(char::from)),
                    ))
                }
            }
        }
    }
    Ok(g)
}
