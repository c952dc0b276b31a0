//! Exhaustive classification of point sets of PG(k−1, q) up to projective
//! equivalence, and of the two-character multisets they induce.
//!
//! Orbits are grown level by level: every orbit of `r + 1`-sets contains a
//! one-point extension of some `r`-set representative. Levels above `N/2` are
//! obtained by complementation. Each level is checked against `C(N, r)`.

mod canon;
mod checkpoint;

pub use canon::{bitstring, lex_key, parse_bitstring, pgl_order, Canon, Canonizer};
pub use checkpoint::Checkpoint;

use std::path::PathBuf;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::multiset::PointMultiset;
use crate::par::Exec;
use crate::params::ParamRow;
use crate::twochar::{canonical_from_pointset, CanonicalSummary, DualPointSet};

/// One orbit of `r`-subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub r: usize,
    /// Lexicographically minimal member.
    pub representative: u64,
    pub size: u64,
}

#[derive(Clone, Debug, Default)]
pub struct ClassifyOptions {
    pub exec: Exec,
    /// Maximum number of canonical-form evaluations for this call.
    pub budget: Option<u64>,
    /// Completed levels are appended here and reloaded on the next run.
    pub checkpoint: Option<PathBuf>,
    /// Largest subset size to enumerate; all sizes when `None`.
    pub r_max: Option<usize>,
}

/// An orbit together with the canonical multiset its representative induces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub orbit: Orbit,
    pub parameters: CanonicalSummary,
}

fn binomial(n: usize, r: usize) -> u128 {
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn check_level(n: usize, r: usize, level: &[Orbit]) -> Result<()> {
    let total: u128 = level.iter().map(|o| o.size as u128).sum();
    if total != binomial(n, r) {
        return Err(Error::InternalInconsistency(format!(
            "orbits of {r}-sets cover {total} sets, expected C({n},{r}) = {}",
            binomial(n, r)
        )));
    }
    Ok(())
}

fn sort_level(level: &mut Vec<Orbit>) {
    level.sort_by_key(|o| lex_key(o.representative));
    level.dedup_by_key(|o| o.representative);
}

/// All orbits of subsets of the point set, from `r = 0` to `r_max` (default `N`),
/// indexed by size.
pub fn enumerate_orbits(geometry: &Geometry, options: &ClassifyOptions) -> Result<Vec<Vec<Orbit>>> {
    let canon = Canonizer::new(geometry)?;
    let n = canon.num_points();
    let half = n / 2;
    let r_max = options.r_max.unwrap_or(n).min(n);

    let mut levels: Vec<Vec<Orbit>> = match &options.checkpoint {
        Some(path) if path.exists() => Checkpoint::load(path, n)?.levels,
        _ => Vec::new(),
    };
    levels.truncate(half + 1);
    for (r, level) in levels.iter().enumerate() {
        check_level(n, r, level)?;
    }
    let mut writer = options.checkpoint.as_ref().map(|p| Checkpoint::writer(p, &levels, n)).transpose()?;
    if levels.is_empty() {
        let level = vec![Orbit { r: 0, representative: 0, size: 1 }];
        if let Some(w) = writer.as_mut() {
            w.append(&level, n)?;
        }
        levels.push(level);
    }

    let mut spent = 0u64;
    while levels.len() <= half.min(r_max) {
        let r = levels.len();
        let prev = &levels[r - 1];
        let cost = prev.len() as u64 * (n - r + 1) as u64;
        if let Some(budget) = options.budget {
            if spent + cost > budget {
                return Err(Error::BudgetExceeded { level: r, spent });
            }
        }
        let children: Vec<Vec<Canon>> = options.exec.map(prev, |o| {
            (0..n)
                .filter(|&x| o.representative >> x & 1 == 0)
                .map(|x| canon.canonical(o.representative | 1 << x))
                .collect()
        });
        spent += cost;
        let mut level: Vec<Orbit> = children
            .into_iter()
            .flatten()
            .map(|c| Orbit { r, representative: c.form, size: canon.orbit_size(&c) })
            .collect();
        sort_level(&mut level);
        check_level(n, r, &level)?;
        if let Some(w) = writer.as_mut() {
            w.append(&level, n)?;
        }
        levels.push(level);
    }

    let full = canon.full_mask();
    for r in half + 1..=r_max {
        let mirrored = options.exec.map(&levels[n - r], |o| canon.canonical(full ^ o.representative));
        let mut level: Vec<Orbit> = mirrored
            .into_iter()
            .map(|c| Orbit { r, representative: c.form, size: canon.orbit_size(&c) })
            .collect();
        sort_level(&mut level);
        check_level(n, r, &level)?;
        levels.push(level);
    }
    levels.truncate(r_max + 1);
    Ok(levels)
}

/// Orbits of proper nonempty subsets with the summary of their canonical multiset.
pub fn orbit_records(geometry: &Arc<Geometry>, options: &ClassifyOptions) -> Result<Vec<OrbitRecord>> {
    let levels = enumerate_orbits(geometry, options)?;
    let n = geometry.num_points();
    let orbits: Vec<Orbit> = levels.into_iter().flatten().filter(|o| o.r > 0 && o.r < n).collect();
    options
        .exec
        .map(&orbits, |&orbit| summarize(geometry, orbit.representative).map(|(parameters, _)| OrbitRecord { orbit, parameters }))
        .into_iter()
        .collect()
}

/// Distinct parameter rows of the canonical two-character multisets arising
/// from point sets, optionally with `γ' ≤ gamma_max`, in classification order.
pub fn classify_parameters(
    geometry: &Arc<Geometry>,
    gamma_max: Option<u64>,
    options: &ClassifyOptions,
) -> Result<Vec<ParamRow>> {
    let levels = enumerate_orbits(geometry, options)?;
    let n = geometry.num_points();
    let reps: Vec<u64> = levels
        .iter()
        .flatten()
        .filter(|o| o.r > 0 && o.r < n)
        .map(|o| o.representative)
        .collect();
    let rows = options.exec.map(&reps, |&set| parameter_row(geometry, set));
    let mut rows: Vec<ParamRow> = rows
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|row| match (gamma_max, row.gamma_prime) {
            (Some(max), Some(g)) => g <= max,
            _ => true,
        })
        .collect();
    rows.sort_by(ParamRow::classification_cmp);
    rows.dedup();
    Ok(rows)
}

fn summarize(geometry: &Arc<Geometry>, set: u64) -> Result<(CanonicalSummary, PointMultiset)> {
    let indicator = (0..geometry.num_points()).map(|p| set >> p & 1 == 1).collect();
    let d = DualPointSet::from_indicator(geometry.clone(), indicator)?;
    let (canonical, summary) = canonical_from_pointset(&d)?;
    Ok((summary, canonical))
}

/// Parameter row of the canonical multiset induced by the point set `set`.
pub fn parameter_row(geometry: &Arc<Geometry>, set: u64) -> Result<ParamRow> {
    let (s, canonical) = summarize(geometry, set)?;
    let (_, _, a_s, a_t) = canonical
        .spectrum()
        .two_character()
        .ok_or_else(|| Error::InternalInconsistency("canonical multiset is not two-character".into()))?;
    Ok(ParamRow {
        g: s.g,
        mu: s.mu,
        r: s.r,
        n: s.n,
        gamma: Some(s.gamma),
        s: s.s,
        t: s.t,
        s0: s.s0,
        t0: s.t0,
        n_prime: s.n_prime,
        gamma_prime: Some(s.gamma_prime),
        a_s,
        a_t,
        annotation: None,
        citation: None,
    })
}
