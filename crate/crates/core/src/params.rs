//! Candidate parameters of canonical two-character multisets and sets, the
//! bundled status ledger, and table emission.

use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::constructions::{series_params, Series};
use crate::error::{Error, Result};
use crate::geometry::{checked_pow, gaussian};
use crate::gf::prime_power;
use crate::par::Exec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Annotation {
    #[serde(rename = "series_S")]
    SeriesS,
    #[serde(rename = "series_P")]
    SeriesP,
    #[serde(rename = "series_K")]
    SeriesK,
    #[serde(rename = "table_row")]
    TableRow,
    #[serde(rename = "excluded")]
    Excluded,
    #[serde(rename = "open")]
    Open,
}

impl Annotation {
    pub fn as_str(self) -> &'static str {
        match self {
            Annotation::SeriesS => "series_S",
            Annotation::SeriesP => "series_P",
            Annotation::SeriesK => "series_K",
            Annotation::TableRow => "table_row",
            Annotation::Excluded => "excluded",
            Annotation::Open => "open",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::SeriesS, Self::SeriesP, Self::SeriesK, Self::TableRow, Self::Excluded, Self::Open]
            .into_iter()
            .find(|a| a.as_str() == s)
    }
}

/// One parameter row. `n, s, t` refer to the hyperplane sum `Σ_{h∈D} χ_h`;
/// primed and zero-indexed values to the canonical multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamRow {
    pub g: u64,
    pub mu: u64,
    pub r: u64,
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<u64>,
    pub s: u64,
    pub t: u64,
    pub s0: u64,
    pub t0: u64,
    pub n_prime: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma_prime: Option<u64>,
    pub a_s: u64,
    pub a_t: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub annotation: Option<Annotation>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub citation: Option<String>,
}

/// Gaussian coefficients and `q^{k−2}` as `i128`, checked.
#[derive(Clone, Copy, Debug)]
pub struct Consts {
    pub k: usize,
    pub q: u64,
    pub gk: i128,
    pub gk1: i128,
    pub gk2: i128,
    pub qk2: i128,
}

impl Consts {
    pub fn new(k: usize, q: u64) -> Result<Self> {
        if prime_power(q).is_none() {
            return Err(Error::NotAPrimePower(q));
        }
        if k < 2 {
            return Err(Error::DimensionTooSmall { k, needed: 2 });
        }
        let g = |j: usize| gaussian(j as u32, q).map(i128::from);
        Ok(Consts {
            k,
            q,
            gk: g(k)?,
            gk1: g(k - 1)?,
            gk2: g(k - 2)?,
            qk2: checked_pow(q, (k - 2) as u32)? as i128,
        })
    }
}

fn binom2(x: i128) -> i128 {
    x * (x - 1) / 2
}

fn to_u64(x: i128) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow("table parameter"))
}

impl ParamRow {
    /// Derives the full row from `(r, μ, g)` if it passes the feasibility
    /// conditions; the standard equations are applied when `sets_only`.
    pub fn candidate(c: &Consts, r: u64, mu: u64, g: u64, sets_only: bool) -> Result<Option<ParamRow>> {
        let Some(row) = Self::derive(c, r, mu, g)? else {
            return Ok(None);
        };
        let (n_prime, s0, t0) = (row.n_prime as i128, row.s0 as i128, row.t0 as i128);
        if n_prime >= c.gk || row.a_s < 1 || row.a_t < 1 {
            return Ok(None);
        }
        if sets_only && binom2(s0) * row.a_s as i128 + binom2(t0) * row.a_t as i128 != binom2(n_prime) * c.gk2 {
            return Ok(None);
        }
        Ok(Some(row))
    }

    /// All derived columns of `(r, μ, g)` when they are integral, with no
    /// size restriction (canonical multisets may exceed `[k]_q` points).
    pub fn derive(c: &Consts, r: u64, mu: u64, g: u64) -> Result<Option<ParamRow>> {
        let (r, mu, gi) = (r as i128, mu as i128, g as i128);
        if gi == 0 || c.qk2 % gi != 0 {
            return Ok(None);
        }
        let num_n = r * c.gk1 - mu * c.gk;
        let num_t = r * c.gk2 - mu * c.gk1;
        if num_n <= 0 || num_n % gi != 0 || num_t < 0 || num_t % gi != 0 {
            return Ok(None);
        }
        let (n_prime, t0) = (num_n / gi, num_t / gi);
        let s0 = t0 + c.qk2 / gi;
        let num_as = gi * (n_prime * c.gk1 - t0 * c.gk);
        if num_as % c.qk2 != 0 {
            return Ok(None);
        }
        let a_s = num_as / c.qk2;
        let a_t = c.gk - a_s;
        if a_s < 0 || a_t < 0 {
            return Ok(None);
        }
        Ok(Some(ParamRow {
            g,
            mu: mu as u64,
            r: r as u64,
            n: to_u64(r * c.gk1)?,
            gamma: None,
            s: to_u64(r * c.gk2 + c.qk2)?,
            t: to_u64(r * c.gk2)?,
            s0: to_u64(s0)?,
            t0: to_u64(t0)?,
            n_prime: to_u64(n_prime)?,
            gamma_prime: None,
            a_s: to_u64(a_s)?,
            a_t: to_u64(a_t)?,
            annotation: None,
            citation: None,
        }))
    }

    /// `(n', s₀, t₀)` of the complementary set `χ_V − M'`.
    pub fn complement_params(&self, c: &Consts) -> (i128, i128, i128) {
        (c.gk - self.n_prime as i128, c.gk1 - self.t0 as i128, c.gk1 - self.s0 as i128)
    }

    fn enumeration_key(&self) -> (u64, u64, u64, u64, u64, u64) {
        (self.n_prime, self.s0, self.t0, self.r, self.mu, self.g)
    }

    /// Classification order: γ′ first, then n′, g, μ, r, and the rest.
    pub fn classification_cmp(&self, other: &Self) -> Ordering {
        let key = |x: &Self| {
            (x.gamma_prime, x.n_prime, x.g, x.mu, x.r, x.n, x.gamma, x.s, x.t, x.s0, x.t0)
        };
        key(self).cmp(&key(other))
    }
}

/// All `(r, μ, g)` with `1 ≤ r < [k]`, `0 ≤ μ ≤ ⌊r[k−2]/[k−1]⌋`, `g | q^{k−2}`
/// passing the feasibility conditions, sorted by `(n', s₀, t₀, r, μ, g)`.
pub fn enumerate_candidates(k: usize, q: u64, sets_only: bool, exec: Exec) -> Result<Vec<ParamRow>> {
    let c = Consts::new(k, q)?;
    let (p, e) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
    let divisors: Vec<u64> = (0..=e * (k as u32 - 2)).map(|j| p.pow(j)).collect();
    let top = usize::try_from(c.gk).map_err(|_| Error::Overflow("point count"))?;
    let chunks = exec.flat_map_range(1..top, |r| {
        let r = r as u64;
        let mu_max = (r as i128 * c.gk2 / c.gk1) as u64;
        let mut out = Vec::new();
        for mu in 0..=mu_max {
            for &g in &divisors {
                match ParamRow::candidate(&c, r, mu, g, sets_only) {
                    Ok(None) => {}
                    other => out.push(other.map(Option::unwrap)),
                }
            }
        }
        out
    });
    let mut rows = chunks.into_iter().collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(ParamRow::enumeration_key);
    rows.dedup();
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LedgerStatus {
    Excluded,
    Open,
    /// Realized in the literature, recorded only for its note.
    Constructed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub q: u64,
    pub k: usize,
    pub n_prime: u64,
    pub status: LedgerStatus,
    pub citation: String,
}

/// Status data transcribed from the literature. Nothing here is proven by
/// this crate; it is carried along with its citations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionLedger {
    pub entries: Vec<LedgerEntry>,
}

const BUNDLED_LEDGER: &str = include_str!("../data/exclusions.json");

impl ExclusionLedger {
    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_LEDGER).expect("bundled ledger is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<LedgerEntry> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if let Some(e) = entries.iter().find(|e| e.citation.trim().is_empty()) {
            return Err(Error::Parse(format!("ledger entry k={} n'={} lacks a citation", e.k, e.n_prime)));
        }
        Ok(ExclusionLedger { entries })
    }

    pub fn lookup(&self, q: u64, k: usize, n_prime: u64) -> Option<&LedgerEntry> {
        self.entries.iter().find(|e| e.q == q && e.k == k && e.n_prime == n_prime)
    }
}

fn series_match(series: Series, k: usize, q: u64, c: &Consts, row: &ParamRow) -> Option<String> {
    let own = (row.n_prime as i128, row.s0 as i128, row.t0 as i128);
    let comp = row.complement_params(c);
    (1..)
        .map_while(|i| series_params(series, i, k, q).ok().map(|p| (i, p)))
        .find_map(|(i, (n, s, t))| {
            let p = (n as i128, s as i128, t as i128);
            if p == own {
                Some(format!("{series:?}_{i}"))
            } else if p == comp {
                Some(format!("complement of {series:?}_{i}"))
            } else {
                None
            }
        })
}

/// Attaches an annotation and citation to every row. Ledger status wins,
/// then membership in the S, P, K series (or their complements).
pub fn annotate(rows: &[ParamRow], ledger: &ExclusionLedger, k: usize, q: u64) -> Result<Vec<ParamRow>> {
    let c = Consts::new(k, q)?;
    Ok(rows
        .iter()
        .map(|row| {
            let mut row = row.clone();
            let entry = ledger.lookup(q, k, row.n_prime);
            let (annotation, citation) = match entry {
                Some(e) if e.status == LedgerStatus::Excluded => (Annotation::Excluded, Some(e.citation.clone())),
                Some(e) if e.status == LedgerStatus::Open => (Annotation::Open, Some(e.citation.clone())),
                _ => {
                    let series = [
                        (Series::S, Annotation::SeriesS),
                        (Series::P, Annotation::SeriesP),
                        (Series::K, Annotation::SeriesK),
                    ]
                    .into_iter()
                    .find_map(|(s, a)| series_match(s, k, q, &c, &row).map(|cite| (a, Some(cite))));
                    series.unwrap_or((Annotation::TableRow, entry.map(|e| e.citation.clone())))
                }
            };
            row.annotation = Some(annotation);
            row.citation = citation;
            row
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// Canonical multiset rows from classification.
    Multiset,
    /// Candidate set rows from enumeration.
    Set,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Paper,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            "paper" => Some(Format::Paper),
            _ => None,
        }
    }
}

pub const MULTISET_HEADER: [&str; 11] = ["g", "mu", "r", "n", "gamma", "s", "t", "s0", "t0", "n_prime", "gamma_prime"];
pub const SET_HEADER: [&str; 9] = ["r", "mu", "g", "n_prime", "s0", "t0", "a_s", "a_t", "annotation"];

fn opt(x: Option<u64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

fn cells(row: &ParamRow, kind: TableKind) -> Vec<String> {
    match kind {
        TableKind::Multiset => vec![
            row.g.to_string(),
            row.mu.to_string(),
            row.r.to_string(),
            row.n.to_string(),
            opt(row.gamma),
            row.s.to_string(),
            row.t.to_string(),
            row.s0.to_string(),
            row.t0.to_string(),
            row.n_prime.to_string(),
            opt(row.gamma_prime),
        ],
        TableKind::Set => vec![
            row.r.to_string(),
            row.mu.to_string(),
            row.g.to_string(),
            row.n_prime.to_string(),
            row.s0.to_string(),
            row.t0.to_string(),
            row.a_s.to_string(),
            row.a_t.to_string(),
            row.annotation.map_or("", Annotation::as_str).to_string(),
        ],
    }
}

pub fn emit_table(rows: &[ParamRow], kind: TableKind, format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            let header: &[&str] = match kind {
                TableKind::Multiset => &MULTISET_HEADER,
                TableKind::Set => &SET_HEADER,
            };
            w.write_record(header).map_err(|e| Error::Io(e.to_string()))?;
            for row in rows {
                w.write_record(cells(row, kind)).map_err(|e| Error::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Paper => {
            let mut out = String::new();
            for row in rows {
                let mut cs = cells(row, kind);
                if kind == TableKind::Set && cs.last().is_some_and(String::is_empty) {
                    cs.pop();
                }
                let _ = writeln!(out, "{} \\\\", cs.join(" & "));
            }
            Ok(out)
        }
    }
}

/// Parses CSV emitted by [`emit_table`]; derived columns are recomputed from `(k, q)`.
pub fn parse_table(text: &str, kind: TableKind, k: usize, q: u64) -> Result<Vec<ParamRow>> {
    let c = Consts::new(k, q)?;
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    let expected: Vec<&str> = match kind {
        TableKind::Multiset => MULTISET_HEADER.to_vec(),
        TableKind::Set => SET_HEADER.to_vec(),
    };
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Parse(format!("unexpected header {:?}", headers)));
    }
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let num = |i: usize| -> Result<u64> {
            record[i].parse().map_err(|_| Error::Parse(format!("row {}: bad number {:?}", line + 1, &record[i])))
        };
        let num_opt = |i: usize| -> Result<Option<u64>> {
            if record[i].is_empty() {
                Ok(None)
            } else {
                num(i).map(Some)
            }
        };
        let (r, mu, g, gamma, gamma_prime, annotation) = match kind {
            TableKind::Multiset => (num(2)?, num(1)?, num(0)?, num_opt(4)?, num_opt(10)?, None),
            TableKind::Set => {
                let a = match &record[8] {
                    "" => None,
                    s => Some(Annotation::parse(s).ok_or_else(|| Error::Parse(format!("unknown annotation {s:?}")))?),
                };
                (num(0)?, num(1)?, num(2)?, None, None, a)
            }
        };
        let derived = match kind {
            TableKind::Multiset => ParamRow::derive(&c, r, mu, g)?,
            TableKind::Set => ParamRow::candidate(&c, r, mu, g, false)?,
        };
        let mut row = derived
            .ok_or_else(|| Error::Parse(format!("row {}: (r, mu, g) = ({r}, {mu}, {g}) is infeasible", line + 1)))?;
        row.gamma = gamma;
        row.gamma_prime = gamma_prime;
        row.annotation = annotation;
        let stated = match kind {
            TableKind::Multiset => [num(3)?, num(5)?, num(6)?, num(7)?, num(8)?, num(9)?],
            TableKind::Set => [row.n, row.s, row.t, num(4)?, num(5)?, num(3)?],
        };
        if stated != [row.n, row.s, row.t, row.s0, row.t0, row.n_prime] {
            return Err(Error::Parse(format!("row {}: columns disagree with (r, mu, g)", line + 1)));
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_candidates() {
        let rows = enumerate_candidates(4, 2, true, Exec::Sequential).unwrap();
        assert_eq!(rows.len(), 10);
        let first = &rows[0];
        assert_eq!((first.r, first.mu, first.g), (7, 3, 4));
        assert_eq!((first.n_prime, first.s0, first.t0, first.a_s, first.a_t), (1, 1, 0, 7, 8));
    }

    #[test]
    fn k6_anchor() {
        let rows = enumerate_candidates(6, 2, true, Exec::Parallel).unwrap();
        let row = rows.iter().find(|r| (r.r, r.mu, r.g) == (54, 26, 4)).unwrap();
        assert_eq!((row.n_prime, row.s0, row.t0, row.a_s, row.a_t), (9, 5, 1, 54, 9));
    }

    #[test]
    fn strategies_agree() {
        for k in 3..=7 {
            assert_eq!(
                enumerate_candidates(k, 2, false, Exec::Sequential).unwrap(),
                enumerate_candidates(k, 2, false, Exec::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn row_invariants() {
        for (k, q) in [(4, 2), (5, 2), (3, 3), (4, 3), (3, 4)] {
            let c = Consts::new(k, q).unwrap();
            for row in enumerate_candidates(k, q, false, Exec::Parallel).unwrap() {
                let (n, s0, t0, g) = (row.n_prime as i128, row.s0 as i128, row.t0 as i128, row.g as i128);
                assert_eq!(n * g, row.r as i128 * c.gk1 - row.mu as i128 * c.gk);
                assert_eq!(t0 * g, row.r as i128 * c.gk2 - row.mu as i128 * c.gk1);
                assert_eq!((s0 - t0) * g, c.qk2);
                assert_eq!(row.a_s as i128 * s0 + row.a_t as i128 * t0, n * c.gk1);
                assert_eq!(row.a_s + row.a_t, c.gk as u64);
            }
        }
    }

    #[test]
    fn annotations() {
        let ledger = ExclusionLedger::bundled();
        let rows = annotate(&enumerate_candidates(4, 2, true, Exec::Parallel).unwrap(), &ledger, 4, 2).unwrap();
        let kinds: Vec<_> = rows.iter().map(|r| (r.n_prime, r.annotation.unwrap())).collect();
        assert!(kinds.contains(&(1, Annotation::SeriesS)));
        assert!(kinds.contains(&(6, Annotation::SeriesP)));
        assert!(kinds.contains(&(10, Annotation::SeriesK)));
        assert!(kinds.contains(&(14, Annotation::SeriesS)));

        let rows = annotate(&enumerate_candidates(6, 2, true, Exec::Parallel).unwrap(), &ledger, 6, 2).unwrap();
        let nine = rows.iter().find(|r| r.n_prime == 9).unwrap();
        assert_eq!(nine.annotation, Some(Annotation::Excluded));
        assert!(nine.citation.as_ref().unwrap().contains("4-divisible"));
    }

    #[test]
    fn csv_round_trip() {
        let rows = annotate(
            &enumerate_candidates(4, 2, true, Exec::Parallel).unwrap(),
            &ExclusionLedger::bundled(),
            4,
            2,
        )
        .unwrap();
        let text = emit_table(&rows, TableKind::Set, Format::Csv).unwrap();
        let back = parse_table(&text, TableKind::Set, 4, 2).unwrap();
        assert_eq!(emit_table(&back, TableKind::Set, Format::Csv).unwrap(), text);
        assert_eq!(text.lines().count(), 11);
        assert_eq!(emit_table(&[], TableKind::Multiset, Format::Csv).unwrap(), "g,mu,r,n,gamma,s,t,s0,t0,n_prime,gamma_prime\n");
    }

    #[test]
    fn ledger_requires_citations() {
        let bad = r#"[{"q":2,"k":6,"n_prime":9,"status":"excluded","citation":" "}]"#;
        assert!(ExclusionLedger::from_json(bad).is_err());
    }
}
