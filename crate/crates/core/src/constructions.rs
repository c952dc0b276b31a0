//! Named constructions of two-character multisets with predicted parameters.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{checked_pow, gaussian, Geometry};
use crate::gf::Elem;
use crate::multiset::PointMultiset;
use crate::twochar::DualPointSet;

/// Node budget for the partial spread search unless a caller overrides it.
pub const DEFAULT_SPREAD_BUDGET: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionKind {
    Subspace,
    SubspaceComplement,
    TwoSubspace,
    PartialSpread,
    HyperplaneSum,
    GammaTight,
    #[serde(rename = "series_S")]
    SeriesS,
    #[serde(rename = "series_P")]
    SeriesP,
    #[serde(rename = "series_K")]
    SeriesK,
}

impl ConstructionKind {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "subspace" => Self::Subspace,
            "subspace_complement" | "subspace-complement" => Self::SubspaceComplement,
            "two_subspace" | "two-subspace" => Self::TwoSubspace,
            "partial_spread" | "partial-spread" => Self::PartialSpread,
            "hyperplane_sum" | "hyperplane-sum" => Self::HyperplaneSum,
            "gamma_tight" | "gamma-tight" => Self::GammaTight,
            "series_S" | "series-S" | "S" => Self::SeriesS,
            "series_P" | "series-P" | "P" => Self::SeriesP,
            "series_K" | "series-K" | "K" => Self::SeriesK,
            _ => return None,
        })
    }
}

/// Parameters a construction promises. `gamma`/`mu` are `None` where no
/// closed formula exists (they then depend on the chosen hyperplanes).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub n: u64,
    pub s: u64,
    pub t: u64,
    pub gamma: Option<u64>,
    pub mu: Option<u64>,
}

/// Measured counterpart of a [`Prediction`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Measured {
    pub n: u64,
    pub values: Vec<u64>,
    pub gamma: u64,
    pub mu: u64,
}

impl Measured {
    pub fn of(m: &PointMultiset) -> Self {
        Measured { n: m.cardinality(), values: m.spectrum().values(), gamma: m.gamma(), mu: m.mu() }
    }

    /// Every occurring hyperplane value is one of `{s, t}` and the scalar
    /// parameters agree. (A full spread, for instance, only attains `s`.)
    pub fn matches(&self, p: &Prediction) -> bool {
        self.n == p.n
            && self.values.iter().all(|&v| v == p.s || v == p.t)
            && p.gamma.map_or(true, |g| g == self.gamma)
            && p.mu.map_or(true, |m| m == self.mu)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionRecipe {
    pub kind: ConstructionKind,
    pub parameters: Vec<i64>,
    pub predicted: Option<Prediction>,
}

fn sorted_pair(a: u64, b: u64) -> (u64, u64) {
    (a.max(b), a.min(b))
}

fn param(parameters: &[i64], i: usize, what: &str) -> Result<usize> {
    let v = *parameters
        .get(i)
        .ok_or_else(|| Error::PreconditionViolated(format!("missing parameter {what}")))?;
    usize::try_from(v).map_err(|_| Error::PreconditionViolated(format!("{what} must be non-negative, got {v}")))
}

impl ConstructionRecipe {
    /// Builds the recipe and its prediction for the given geometry.
    pub fn new(kind: ConstructionKind, parameters: Vec<i64>, geometry: &Geometry) -> Result<Self> {
        let predicted = predict(kind, &parameters, geometry)?;
        Ok(ConstructionRecipe { kind, parameters, predicted })
    }

    /// Realizes the multiset; `None` for parameter-only series.
    pub fn realize(&self, geometry: &Arc<Geometry>) -> Result<Option<PointMultiset>> {
        let ps = &self.parameters;
        let g = geometry.clone();
        let m = match self.kind {
            ConstructionKind::Subspace | ConstructionKind::SeriesS => subspace(g, param(ps, 0, "l")?)?,
            ConstructionKind::SubspaceComplement => subspace_complement(g, param(ps, 0, "l")?)?,
            ConstructionKind::TwoSubspace => {
                two_subspace(g, param(ps, 0, "a")?, param(ps, 1, "b")?, param(ps, 2, "i")?)?
            }
            ConstructionKind::PartialSpread => {
                let sizes = (0..ps.len()).map(|i| param(ps, i, "spread size")).collect::<Result<Vec<_>>>()?;
                partial_spread_sum(g, &sizes, DEFAULT_SPREAD_BUDGET)?
            }
            ConstructionKind::SeriesP => partial_spread_sum(g, &[param(ps, 0, "i")?], DEFAULT_SPREAD_BUDGET)?,
            ConstructionKind::HyperplaneSum => {
                let (reduce, hs) = split_reduce_flag(ps)?;
                hyperplane_sum(g, &hs, reduce)?
            }
            ConstructionKind::GammaTight => gamma_tight_example(g)?,
            ConstructionKind::SeriesK => return Ok(None),
        };
        Ok(Some(m))
    }
}

// Hyperplane-sum parameters: a leading −1 requests μ-reduction.
fn split_reduce_flag(ps: &[i64]) -> Result<(bool, Vec<usize>)> {
    let reduce = ps.first() == Some(&-1);
    let rest = if reduce { &ps[1..] } else { ps };
    let hs = (0..rest.len()).map(|i| param(rest, i, "hyperplane index")).collect::<Result<_>>()?;
    Ok((reduce, hs))
}

fn predict(kind: ConstructionKind, ps: &[i64], geo: &Geometry) -> Result<Option<Prediction>> {
    let k = geo.k();
    let q = geo.q();
    let gs = |j: usize| geo.gauss(j);
    Ok(Some(match kind {
        ConstructionKind::Subspace | ConstructionKind::SeriesS => {
            let l = param(ps, 0, "l")?;
            check_subspace_dim(l, k)?;
            Prediction { n: gs(l), s: gs(l), t: gs(l - 1), gamma: Some(1), mu: Some(0) }
        }
        ConstructionKind::SubspaceComplement => {
            let l = param(ps, 0, "l")?;
            check_subspace_dim(l, k)?;
            Prediction {
                n: gs(k) - gs(l),
                s: gs(k - 1) - gs(l - 1),
                t: gs(k - 1) - gs(l),
                gamma: Some(1),
                mu: Some(0),
            }
        }
        ConstructionKind::TwoSubspace => {
            let (a, b, i) = (param(ps, 0, "a")?, param(ps, 1, "b")?, param(ps, 2, "i")?);
            check_two_subspace(a, b, i, k)?;
            let w = geo.qpow(a - b);
            let v1 = gs(a - 1) + w * gs(b - 1);
            let (s, t) = sorted_pair(v1, v1 + geo.qpow(a - 1));
            let gamma = if i == 0 { w } else { w + 1 };
            Prediction { n: gs(a) + w * gs(b), s, t, gamma: Some(gamma), mu: Some(0) }
        }
        ConstructionKind::PartialSpread | ConstructionKind::SeriesP => {
            let r: usize = (0..ps.len()).map(|i| param(ps, i, "spread size")).sum::<Result<usize>>()?;
            let m = spread_dim(k)?;
            let full = r as u64 == geo.qpow(m) + 1;
            Prediction {
                n: r as u64 * gs(m),
                s: r as u64 * gs(m - 1) + geo.qpow(m - 1),
                t: r as u64 * gs(m - 1),
                gamma: Some(u64::from(r > 0)),
                mu: Some(u64::from(full)),
            }
        }
        ConstructionKind::HyperplaneSum => {
            let (reduce, hs) = split_reduce_flag(ps)?;
            if k < 3 {
                return Err(Error::BadDimension(format!("hyperplane sums need k >= 3, got {k}")));
            }
            let mut hs = hs;
            hs.sort_unstable();
            hs.dedup();
            if let Some(&h) = hs.iter().find(|&&h| h >= geo.num_points()) {
                return Err(Error::IndexOutOfBounds { index: h, len: geo.num_points() });
            }
            let r = hs.len() as u64;
            let mu = if reduce {
                (0..geo.num_points())
                    .map(|p| hs.iter().filter(|&&h| geo.incident(p, h)).count() as u64)
                    .min()
                    .unwrap_or(0)
            } else {
                0
            };
            Prediction {
                n: r * gs(k - 1) - mu * gs(k),
                s: r * gs(k - 2) + geo.qpow(k - 2) - mu * gs(k - 1),
                t: r * gs(k - 2) - mu * gs(k - 1),
                gamma: None,
                mu: reduce.then_some(0),
            }
        }
        ConstructionKind::GammaTight => {
            check_gamma_tight(k, q)?;
            let qk2 = geo.qpow(k - 2);
            let r = qk2 + 1;
            Prediction {
                n: r * gs(k - 1),
                s: r * gs(k - 2) + qk2,
                t: r * gs(k - 2),
                gamma: Some(qk2),
                mu: Some(0),
            }
        }
        ConstructionKind::SeriesK => return Ok(None),
    }))
}

fn check_subspace_dim(l: usize, k: usize) -> Result<()> {
    if l == 0 || l >= k {
        return Err(Error::BadDimension(format!("subspace dimension must satisfy 1 <= l < k = {k}, got {l}")));
    }
    Ok(())
}

fn check_two_subspace(a: usize, b: usize, i: usize, k: usize) -> Result<()> {
    if b == 0 || a < b || i >= b || a + b - i != k {
        return Err(Error::BadDimension(format!(
            "need a >= b >= 1, 0 <= i <= b-1 and a+b-i = k; got a={a}, b={b}, i={i}, k={k}"
        )));
    }
    Ok(())
}

fn check_gamma_tight(k: usize, q: u64) -> Result<()> {
    if k < 3 || (k, q) == (3, 2) {
        return Err(Error::BadDimension(format!("the tight example needs k >= 3 and (k,q) != (3,2); got k={k}, q={q}")));
    }
    Ok(())
}

fn spread_dim(k: usize) -> Result<usize> {
    if k % 2 != 0 || k == 0 {
        return Err(Error::BadDimension(format!("spreads need an even k, got {k}")));
    }
    Ok(k / 2)
}

/// Indicator of the `l`-space spanned by the last `l` unit vectors, i.e. the
/// first `[l]_q` points of the global order.
pub fn subspace(geometry: Arc<Geometry>, l: usize) -> Result<PointMultiset> {
    check_subspace_dim(l, geometry.k())?;
    let pts: Vec<usize> = (0..geometry.gauss(l) as usize).collect();
    PointMultiset::characteristic(geometry, &pts)
}

/// `χ_V − χ_L` for an `l`-space `L`.
pub fn subspace_complement(geometry: Arc<Geometry>, l: usize) -> Result<PointMultiset> {
    subspace(geometry, l)?.l_complement(1)
}

fn unit_span(geometry: &Geometry, from: usize, to: usize) -> Vec<usize> {
    let k = geometry.k();
    let gens: Vec<Vec<Elem>> = (from..to)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect();
    geometry.span_points(&gens)
}

/// `χ_A + q^{a−b}·χ_B` for an `a`-space `A` and a `b`-space `B` meeting in an
/// `i`-space, with `k = a + b − i`.
pub fn two_subspace(geometry: Arc<Geometry>, a: usize, b: usize, i: usize) -> Result<PointMultiset> {
    let k = geometry.k();
    check_two_subspace(a, b, i, k)?;
    let sa = unit_span(&geometry, 0, a);
    let sb = unit_span(&geometry, a - i, k);
    let w = geometry.qpow(a - b);
    let mut mult = vec![0u64; geometry.num_points()];
    for p in sa {
        mult[p] += 1;
    }
    for p in sb {
        mult[p] += w;
    }
    PointMultiset::new(geometry, mult)
}

/// Sum of indicators of `r = Σ spread_sizes` pairwise disjoint `k/2`-spaces.
/// The grouping into spreads does not affect the result, only `r` does.
pub fn partial_spread_sum(geometry: Arc<Geometry>, spread_sizes: &[usize], node_budget: u64) -> Result<PointMultiset> {
    let m = spread_dim(geometry.k())?;
    let r: usize = spread_sizes.iter().sum();
    let chosen = find_disjoint_subspaces(&geometry, m, r, node_budget)?;
    let mut mult = vec![0u64; geometry.num_points()];
    for space in chosen {
        for p in space {
            mult[p] += 1;
        }
    }
    PointMultiset::new(geometry, mult)
}

/// `r` pairwise disjoint `m`-spaces, by backtracking on the smallest point
/// not yet decided (cover it with some space, or leave it uncovered).
pub fn find_disjoint_subspaces(geometry: &Geometry, m: usize, r: usize, node_budget: u64) -> Result<Vec<Vec<usize>>> {
    let n = geometry.num_points();
    let spaces = geometry.subspaces(m);
    let words = n.div_ceil(64);
    let mask_of = |pts: &[usize]| {
        let mut w = vec![0u64; words];
        for &p in pts {
            w[p / 64] |= 1 << (p % 64);
        }
        w
    };
    let masks: Vec<Vec<u64>> = spaces.iter().map(|s| mask_of(s)).collect();
    let mut by_point: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in spaces.iter().enumerate() {
        for &p in s {
            by_point[p].push(i);
        }
    }
    let size = spaces.first().map_or(0, Vec::len);

    struct Search<'a> {
        masks: &'a [Vec<u64>],
        by_point: &'a [Vec<usize>],
        n: usize,
        size: usize,
        r: usize,
        budget: u64,
        nodes: u64,
        best: usize,
        chosen: Vec<usize>,
        covered: Vec<u64>,
        skipped: usize,
    }

    impl Search<'_> {
        fn free(&self, p: usize) -> bool {
            self.covered[p / 64] >> (p % 64) & 1 == 0
        }

        fn go(&mut self, from: usize) -> bool {
            self.nodes += 1;
            self.best = self.best.max(self.chosen.len());
            if self.chosen.len() == self.r {
                return true;
            }
            if self.nodes > self.budget {
                return false;
            }
            // points still available for the remaining spaces
            let available = self.n - self.chosen.len() * self.size - self.skipped;
            if (self.r - self.chosen.len()) * self.size > available {
                return false;
            }
            let Some(p) = (from..self.n).find(|&p| self.free(p)) else { return false };
            for &s in &self.by_point[p] {
                let disjoint = self.masks[s].iter().zip(&self.covered).all(|(a, b)| a & b == 0);
                if !disjoint {
                    continue;
                }
                for (c, &a) in self.covered.iter_mut().zip(&self.masks[s]) {
                    *c |= a;
                }
                self.chosen.push(s);
                if self.go(p + 1) {
                    return true;
                }
                self.chosen.pop();
                for (c, &a) in self.covered.iter_mut().zip(&self.masks[s]) {
                    *c &= !a;
                }
            }
            // leave p uncovered
            self.skipped += 1;
            self.covered[p / 64] |= 1 << (p % 64);
            let found = self.go(p + 1);
            self.covered[p / 64] &= !(1 << (p % 64));
            self.skipped -= 1;
            found
        }
    }

    let run = |target: usize| {
        let mut search = Search {
            masks: &masks,
            by_point: &by_point,
            n,
            size,
            r: target,
            budget: node_budget,
            nodes: 0,
            best: 0,
            chosen: Vec::new(),
            covered: vec![0; words],
            skipped: 0,
        };
        let found = target == 0 || search.go(0);
        (found.then(|| search.chosen.clone()), search.best)
    };
    if size > 0 && r * size > n {
        // cannot fit; report how far a packing of maximal size gets
        let (_, best) = run(n / size);
        return Err(Error::SpreadConstructionFailed { requested: r, achieved: best });
    }
    match run(r) {
        (Some(chosen), _) => Ok(chosen.iter().map(|&s| spaces[s].clone()).collect()),
        (None, best) => Err(Error::SpreadConstructionFailed { requested: r, achieved: best }),
    }
}

/// `Σ_{H ∈ hyperplanes} χ_H`, optionally minus `μ·χ_V`.
pub fn hyperplane_sum(geometry: Arc<Geometry>, hyperplanes: &[usize], reduce_mu: bool) -> Result<PointMultiset> {
    let k = geometry.k();
    if k < 3 {
        return Err(Error::BadDimension(format!("hyperplane sums need k >= 3, got {k}")));
    }
    let d = DualPointSet::from_points(geometry.clone(), hyperplanes)?;
    if d.r() == 0 || d.r() == geometry.num_points() {
        return Err(Error::DegenerateSet { r: d.r(), points: geometry.num_points() });
    }
    let sum = d.hyperplane_sum();
    if !reduce_mu {
        return Ok(sum);
    }
    let mu = sum.mu();
    let mult = sum.multiplicities().iter().map(|&x| x - mu).collect();
    PointMultiset::new(geometry, mult)
}

/// The hyperplanes through `P` (point 0) that miss `Q` (point 1), plus the
/// first hyperplane missing both. Attains `γ = q^{k−2}` with `μ = 0`, gcd 1.
pub fn gamma_tight_hyperplanes(geometry: &Geometry) -> Result<Vec<usize>> {
    check_gamma_tight(geometry.k(), geometry.q())?;
    let (p, q) = (0, 1);
    let mut hs: Vec<usize> = geometry
        .hyperplanes_through(p)
        .iter()
        .map(|&h| h as usize)
        .filter(|&h| !geometry.incident(q, h))
        .collect();
    let extra = (0..geometry.num_points())
        .find(|&h| !geometry.incident(p, h) && !geometry.incident(q, h))
        .expect("some hyperplane avoids two points when k >= 2");
    hs.push(extra);
    hs.sort_unstable();
    Ok(hs)
}

pub fn gamma_tight_example(geometry: Arc<Geometry>) -> Result<PointMultiset> {
    let hs = gamma_tight_hyperplanes(&geometry)?;
    hyperplane_sum(geometry, &hs, false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    S,
    P,
    K,
}

/// `(n', s₀, t₀)` of the `i`-th member of a parametric series.
pub fn series_params(kind: Series, i: u64, k: usize, q: u64) -> Result<(u64, u64, u64)> {
    let gs = |j: usize| gaussian(j as u32, q);
    let out_of_range = |hi: String| Error::IndexOutOfRange(format!("{kind:?}_{i} needs {hi}"));
    match kind {
        Series::S => {
            if i == 0 || i as usize >= k {
                return Err(out_of_range(format!("1 <= i <= {}", k.saturating_sub(1))));
            }
            let i = i as usize;
            Ok((gs(i)?, gs(i)?, gs(i - 1)?))
        }
        Series::P => {
            let m = spread_dim(k)?;
            let top = checked_pow(q, m as u32)? + 1;
            if i == 0 || i >= top {
                return Err(out_of_range(format!("0 < i < {top}")));
            }
            let t0 = i * gs(m - 1)?;
            Ok((i * gs(m)?, t0 + checked_pow(q, m as u32 - 1)?, t0))
        }
        Series::K => {
            if q != 2 {
                return Err(Error::BadDimension(format!("series K is binary only, got q={q}")));
            }
            let m = spread_dim(k)?;
            let top = gs(m)?;
            if i == 0 || i >= top {
                return Err(out_of_range(format!("0 < i < {top}")));
            }
            let s0 = i * (checked_pow(q, m as u32 - 1)? + 1);
            Ok((i * (checked_pow(q, m as u32)? + 1), s0, s0 - checked_pow(q, m as u32 - 1)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(q: u64, k: usize) -> Arc<Geometry> {
        Arc::new(Geometry::new(q, k).unwrap())
    }

    fn measure(m: &PointMultiset) -> (u64, u64, u64, u64, u64) {
        let (s, t, ..) = m.spectrum().two_character().unwrap();
        (m.cardinality(), s, t, m.gamma(), m.mu())
    }

    #[test]
    fn subspaces() {
        assert_eq!(measure(&subspace(pg(2, 3), 2).unwrap()), (3, 3, 1, 1, 0));
        assert_eq!(measure(&subspace(pg(2, 3), 1).unwrap()).1, 1);
        assert_eq!(measure(&subspace(pg(2, 4), 3).unwrap()), (7, 7, 3, 1, 0));
        assert!(matches!(subspace(pg(2, 3), 3), Err(Error::BadDimension(_))));
        assert!(matches!(subspace(pg(2, 3), 0), Err(Error::BadDimension(_))));
    }

    #[test]
    fn two_subspaces() {
        let m = two_subspace(pg(2, 3), 2, 1, 0).unwrap();
        assert_eq!(measure(&m), (5, 3, 1, 2, 0));
        assert_eq!(measure(&two_subspace(pg(2, 3), 2, 2, 1).unwrap()), (6, 4, 2, 2, 0));
        assert_eq!(measure(&two_subspace(pg(2, 4), 2, 2, 0).unwrap()), (6, 4, 2, 1, 0));
        assert!(two_subspace(pg(2, 4), 2, 2, 1).is_err());
    }

    #[test]
    fn spreads_in_pg3_2() {
        let g = pg(2, 4);
        assert_eq!(measure(&partial_spread_sum(g.clone(), &[2], 10_000).unwrap()), (6, 4, 2, 1, 0));
        assert_eq!(measure(&partial_spread_sum(g.clone(), &[2, 1], 10_000).unwrap()), (9, 5, 3, 1, 0));
        let full = partial_spread_sum(g.clone(), &[5], 100_000).unwrap();
        assert_eq!(full, PointMultiset::constant(g.clone(), 1));
        assert_eq!(
            partial_spread_sum(g, &[6], 100_000).unwrap_err(),
            Error::SpreadConstructionFailed { requested: 6, achieved: 5 }
        );
    }

    #[test]
    fn series() {
        assert_eq!(series_params(Series::S, 3, 4, 2).unwrap(), (7, 7, 3));
        assert_eq!(series_params(Series::P, 2, 4, 2).unwrap(), (6, 4, 2));
        assert_eq!(series_params(Series::K, 2, 4, 2).unwrap(), (10, 6, 4));
        assert!(matches!(series_params(Series::S, 4, 4, 2), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(series_params(Series::P, 1, 5, 2), Err(Error::BadDimension(_))));
        assert!(matches!(series_params(Series::K, 3, 4, 2), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(series_params(Series::K, 1, 4, 3), Err(Error::BadDimension(_))));
    }

    #[test]
    fn gamma_tight() {
        for (q, k) in [(2, 4), (3, 3), (2, 5), (4, 3)] {
            let g = pg(q, k);
            let m = gamma_tight_example(g.clone()).unwrap();
            assert_eq!(m.gamma(), g.qpow(k - 2), "q={q} k={k}");
            assert_eq!((m.mu(), m.multiplicity_gcd()), (0, 1));
        }
        assert!(gamma_tight_example(pg(2, 3)).is_err());
    }

    #[test]
    fn recipes_match_predictions() {
        let g = pg(2, 4);
        for (kind, ps) in [
            (ConstructionKind::Subspace, vec![2]),
            (ConstructionKind::SubspaceComplement, vec![1]),
            (ConstructionKind::TwoSubspace, vec![3, 2, 1]),
            (ConstructionKind::PartialSpread, vec![1, 2]),
            (ConstructionKind::HyperplaneSum, vec![0, 3, 5]),
            (ConstructionKind::HyperplaneSum, vec![-1, 0, 1, 2, 3, 4, 5, 6, 7, 8]),
            (ConstructionKind::GammaTight, vec![]),
        ] {
            let recipe = ConstructionRecipe::new(kind, ps, &g).unwrap();
            let m = recipe.realize(&g).unwrap().unwrap();
            assert!(Measured::of(&m).matches(recipe.predicted.as_ref().unwrap()), "{recipe:?}");
        }
        let k = ConstructionRecipe::new(ConstructionKind::SeriesK, vec![1], &g).unwrap();
        assert_eq!(k.realize(&g).unwrap(), None);
    }
}
