//! Whitespace-separated text formats.
//!
//! Multiset: a header `q k`, then one multiplicity per point of PG(k−1, q) in
//! the canonical point order. Point sets use the same format with 0/1 values.
//!
//! Generator matrix: a header `q k n`, then `k` rows of `n` field element codes.
//!
//! `#` starts a comment that runs to the end of the line.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::gf::Elem;
use crate::multiset::PointMultiset;
use crate::twochar::GeneratorMatrix;

fn tokens(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::Parse(format!("missing {what}")))?;
    tok.parse().map_err(|_| Error::Parse(format!("invalid {what}: {tok:?}")))
}

/// Reads a multiset; `geometry` is reused when it matches the header.
pub fn parse_multiset(text: &str, geometry: Option<Arc<Geometry>>) -> Result<PointMultiset> {
    let mut it = tokens(text);
    let q: u64 = parse_num(it.next(), "field order")?;
    let k: usize = parse_num(it.next(), "dimension")?;
    let geometry = match geometry {
        Some(g) if g.q() == q && g.k() == k => g,
        _ => Arc::new(Geometry::new(q, k)?),
    };
    let values = it.map(|t| parse_num(Some(t), "multiplicity")).collect::<Result<Vec<u64>>>()?;
    PointMultiset::new(geometry, values)
}

pub fn write_multiset(m: &PointMultiset) -> String {
    let g = m.geometry();
    let mut out = format!("{} {}\n", g.q(), g.k());
    for chunk in m.multiplicities().chunks(32) {
        let line: Vec<String> = chunk.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn parse_generator_matrix(text: &str) -> Result<GeneratorMatrix> {
    let mut it = tokens(text);
    let q: u64 = parse_num(it.next(), "field order")?;
    let k: usize = parse_num(it.next(), "row count")?;
    let n: usize = parse_num(it.next(), "column count")?;
    let entries = it.map(|t| parse_num(Some(t), "matrix entry")).collect::<Result<Vec<u64>>>()?;
    if entries.len() != k * n {
        return Err(Error::LengthMismatch { expected: k * n, got: entries.len() });
    }
    if let Some(&bad) = entries.iter().find(|&&x| x >= q) {
        return Err(Error::Parse(format!("matrix entry {bad} is not an element of GF({q})")));
    }
    let rows = entries.chunks(n.max(1)).take(k).map(|r| r.iter().map(|&x| x as Elem).collect()).collect();
    Ok(GeneratorMatrix { q, rows })
}

pub fn write_generator_matrix(gm: &GeneratorMatrix) -> String {
    let mut out = format!("{} {} {}\n", gm.q, gm.k(), gm.n());
    for row in &gm.rows {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// Generator matrix whose columns are the points of `m`, each repeated by its multiplicity.
pub fn generator_matrix_of(m: &PointMultiset) -> GeneratorMatrix {
    let g = m.geometry();
    let mut rows = vec![Vec::new(); g.k()];
    for (p, &c) in m.multiplicities().iter().enumerate() {
        for _ in 0..c {
            for (row, &x) in rows.iter_mut().zip(g.point(p)) {
                row.push(x);
            }
        }
    }
    GeneratorMatrix { q: g.q(), rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_round_trip() {
        let text = "# Fano line\n2 3\n1 1 1 0 0 0 0\n";
        let m = parse_multiset(text, None).unwrap();
        assert_eq!(m.cardinality(), 3);
        assert_eq!(parse_multiset(&write_multiset(&m), None).unwrap(), m);
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(parse_multiset("2 3\n1 1", None).is_err());
        assert!(parse_multiset("6 3\n", None).is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let gm = parse_generator_matrix("3 2 4\n1 0 1 1\n0 1 1 2\n").unwrap();
        assert_eq!((gm.k(), gm.n()), (2, 4));
        assert_eq!(parse_generator_matrix(&write_generator_matrix(&gm)).unwrap(), gm);
        assert!(parse_generator_matrix("3 2 2\n1 0 3 1").is_err());
    }
}
