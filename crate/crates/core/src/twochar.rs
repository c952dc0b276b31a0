//! Two-character multisets through their dual point sets.
//!
//! A two-character multiset `M` with hyperplane values `s > t` determines the
//! point set `D = {P : M(P^⊥) = s}`. Conversely every proper nonempty point set
//! `D` has a canonical two-character multiset `M'` such that the multisets with
//! dual set `D` are exactly `u·M' + v·χ_V`.

use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Geometry;
use crate::gf::Elem;
use crate::multiset::PointMultiset;

/// A 0/1 point set together with its hyperplane-degree data.
#[derive(Clone, Debug)]
pub struct DualPointSet {
    geometry: Arc<Geometry>,
    indicator: Vec<bool>,
    r: usize,
    /// `φ(P)`: number of points of the set on the hyperplane `P^⊥`.
    degree: Vec<u64>,
    m: u64,
    shifts: Vec<u64>,
}

impl DualPointSet {
    pub fn from_indicator(geometry: Arc<Geometry>, indicator: Vec<bool>) -> Result<Self> {
        let n = geometry.num_points();
        if indicator.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: indicator.len() });
        }
        let r = indicator.iter().filter(|&&b| b).count();
        let degree: Vec<u64> = (0..n)
            .map(|p| geometry.points_on(p).iter().filter(|&&x| indicator[x as usize]).count() as u64)
            .collect();
        let m = degree.iter().copied().min().unwrap_or(0);
        let mut shifts: Vec<u64> = degree.iter().map(|&d| d - m).collect();
        shifts.sort_unstable();
        shifts.dedup();
        Ok(DualPointSet { geometry, indicator, r, degree, m, shifts })
    }

    pub fn from_points(geometry: Arc<Geometry>, points: &[usize]) -> Result<Self> {
        let n = geometry.num_points();
        let mut indicator = vec![false; n];
        for &p in points {
            if p >= n {
                return Err(Error::IndexOutOfBounds { index: p, len: n });
            }
            indicator[p] = true;
        }
        Self::from_indicator(geometry, indicator)
    }

    /// Reads a 0/1 multiset as a point set.
    pub fn from_multiset(m: &PointMultiset) -> Result<Self> {
        if let Some(p) = m.multiplicities().iter().position(|&x| x > 1) {
            return Err(Error::PreconditionViolated(format!(
                "point {p} has multiplicity {} but a point set needs 0/1 entries",
                m.get(p)
            )));
        }
        Self::from_indicator(m.geometry().clone(), m.multiplicities().iter().map(|&x| x == 1).collect())
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn indicator(&self) -> &[bool] {
        &self.indicator
    }

    pub fn contains(&self, p: usize) -> bool {
        self.indicator[p]
    }

    pub fn points(&self) -> Vec<usize> {
        (0..self.indicator.len()).filter(|&p| self.indicator[p]).collect()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn degree(&self) -> &[u64] {
        &self.degree
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn shifts(&self) -> &[u64] {
        &self.shifts
    }

    pub fn shift_gcd(&self) -> u64 {
        self.shifts.iter().fold(0, |g, &x| g.gcd(&x))
    }

    /// `Σ_{h ∈ D} χ_h`, whose value at `P` is `φ(P)`.
    pub fn hyperplane_sum(&self) -> PointMultiset {
        PointMultiset::new(self.geometry.clone(), self.degree.clone()).expect("lengths agree")
    }

    fn ensure_proper(&self) -> Result<()> {
        let n = self.geometry.num_points();
        if self.r == 0 || self.r == n {
            return Err(Error::DegenerateSet { r: self.r, points: n });
        }
        Ok(())
    }
}

/// `{P : M(P^⊥) = s}` for a two-character `M` with values `s > t`.
pub fn geometric_dual(m: &PointMultiset) -> Result<DualPointSet> {
    let spectrum = m.spectrum();
    let (s, ..) = spectrum
        .two_character()
        .ok_or(Error::NotTwoCharacter { values: spectrum.entries.len() })?;
    let indicator = m.hyperplane_values().iter().map(|&v| v == s).collect();
    DualPointSet::from_indicator(m.geometry().clone(), indicator)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(PointMultiset),
    /// First point whose value is negative or fractional, as a reduced fraction.
    Infeasible { point: usize, numer: i128, denom: i128 },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Whether a multiset with dual set `D` and hyperplane values `(s, t)` exists,
/// and if so which. The candidate is
/// `M(P) = (q^{k−2}(t + Δφ(P)) − Δ[k−2](r − φ(P))) / (q^{k−2}[k−1])`, `Δ = s − t`.
pub fn feasible_pair(d: &DualPointSet, s: u64, t: u64) -> Result<Feasibility> {
    let g = d.geometry();
    let k = g.k();
    if k < 2 {
        return Err(Error::DimensionTooSmall { k, needed: 2 });
    }
    if s < t {
        return Err(Error::PreconditionViolated(format!("expected s >= t, got s={s}, t={t}")));
    }
    let qk2 = g.qpow(k - 2) as i128;
    let g2 = g.gauss(k - 2) as i128;
    let den = qk2 * g.gauss(k - 1) as i128;
    let (s, t, r) = (s as i128, t as i128, d.r() as i128);
    let delta = s - t;
    let mut values = Vec::with_capacity(g.num_points());
    for (point, &phi) in d.degree().iter().enumerate() {
        let phi = phi as i128;
        let num = qk2 * (t + delta * phi) - delta * g2 * (r - phi);
        if num < 0 || num % den != 0 {
            let c = num.gcd(&den);
            return Ok(Feasibility::Infeasible { point, numer: num / c, denom: den / c });
        }
        values.push(num / den);
    }
    Ok(Feasibility::Feasible(PointMultiset::from_signed(g.clone(), &values)?))
}

/// Parameters attached to the canonical multiset of a point set.
///
/// `n, gamma, s, t, mu` describe the plain hyperplane sum `Σ_{h∈D} χ_h`;
/// the primed quantities describe `M' = (Σ χ_h − μχ_V)/g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalSummary {
    pub g: u64,
    pub mu: u64,
    pub r: u64,
    pub n: u64,
    pub gamma: u64,
    pub s: u64,
    pub t: u64,
    pub s0: u64,
    pub t0: u64,
    pub n_prime: u64,
    pub gamma_prime: u64,
    pub u: u64,
    pub v: u64,
    pub f: u32,
    pub w1: u64,
    pub w2: u64,
}

impl CanonicalSummary {
    /// `Δ₀ = s₀ − t₀ = q^{k−2}/g`.
    pub fn delta0(&self) -> u64 {
        self.s0 - self.t0
    }
}

/// Exponent `f` with `p^f = x`, if `x` is a power of `p`.
pub fn log_p(x: u64, p: u64) -> Option<u32> {
    let (mut x, mut f) = (x, 0);
    if x == 0 {
        return None;
    }
    while x % p == 0 {
        x /= p;
        f += 1;
    }
    (x == 1).then_some(f)
}

fn exact_div(num: i128, den: i128, what: &str) -> Result<u64> {
    if den == 0 || num % den != 0 || num < 0 {
        return Err(Error::InternalInconsistency(format!("{what}: {num}/{den} is not a natural number")));
    }
    u64::try_from(num / den).map_err(|_| Error::Overflow("canonical parameter"))
}

/// Canonical multiset `M'` of a proper nonempty point set and its summary.
pub fn canonical_from_pointset(d: &DualPointSet) -> Result<(PointMultiset, CanonicalSummary)> {
    d.ensure_proper()?;
    let geo = d.geometry();
    let k = geo.k();
    if k < 2 {
        return Err(Error::DimensionTooSmall { k, needed: 2 });
    }
    let sum = d.hyperplane_sum();
    let mu = sum.mu();
    let g = d.degree().iter().fold(0u64, |acc, &x| acc.gcd(&(x - mu)));
    let canonical = PointMultiset::new(geo.clone(), d.degree().iter().map(|&x| (x - mu) / g).collect())?;

    let r = d.r() as i128;
    let (gk, gk1, gk2) = (geo.gauss(k) as i128, geo.gauss(k - 1) as i128, geo.gauss(k - 2) as i128);
    let qk2 = geo.qpow(k - 2);
    let (mu_i, g_i) = (mu as i128, g as i128);
    let n_prime = exact_div(r * gk1 - mu_i * gk, g_i, "n'")?;
    let t0 = exact_div(r * gk2 - mu_i * gk1, g_i, "t0")?;
    let delta0 = exact_div(qk2 as i128, g_i, "q^(k-2)/g")?;
    let s0 = t0 + delta0;

    let measured = canonical.spectrum();
    if measured.two_character().map(|x| (x.0, x.1)) != Some((s0, t0)) || canonical.cardinality() != n_prime {
        return Err(Error::InternalInconsistency(format!(
            "canonical multiset measures {:?} with n={}, predicted s0={s0}, t0={t0}, n'={n_prime}",
            measured.entries,
            canonical.cardinality()
        )));
    }
    let p = geo.field().characteristic() as u64;
    let f = log_p(delta0, p)
        .ok_or_else(|| Error::InternalInconsistency(format!("Δ₀ = {delta0} is not a power of {p}")))?;
    let summary = CanonicalSummary {
        g,
        mu,
        r: d.r() as u64,
        n: sum.cardinality(),
        gamma: sum.gamma(),
        s: (r * gk2) as u64 + qk2,
        t: (r * gk2) as u64,
        s0,
        t0,
        n_prime,
        gamma_prime: canonical.gamma(),
        u: 1,
        v: 0,
        f,
        w1: n_prime - s0,
        w2: n_prime - t0,
    };
    Ok((canonical, summary))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub u: u64,
    pub v: u64,
    /// Canonical multiset of the dual set; all-zero for one-character input.
    pub canonical: PointMultiset,
}

/// Writes `M = u·M' + v·χ_V` with `M'` canonical for the dual set of `M`.
pub fn decompose(m: &PointMultiset) -> Result<Decomposition> {
    let spectrum = m.spectrum();
    match spectrum.entries.len() {
        1 => {
            let v = m.mu();
            if m.gamma() != v {
                return Err(Error::InternalInconsistency(
                    "one hyperplane value but non-constant multiplicities".into(),
                ));
            }
            Ok(Decomposition { u: 0, v, canonical: PointMultiset::zero(m.geometry().clone()) })
        }
        2 => {
            let d = geometric_dual(m)?;
            let (canonical, _) = canonical_from_pointset(&d)?;
            let v = m.mu();
            let gp = canonical.gamma();
            let u = (m.gamma() - v) / gp;
            let rebuilt = canonical
                .scale(u)?
                .combine(&PointMultiset::constant(m.geometry().clone(), 1), 1, v as i64)?;
            if (m.gamma() - v) % gp != 0 || &rebuilt != m {
                return Err(Error::InternalInconsistency(format!(
                    "multiset is not {u}·M' + {v}·χ_V for its canonical M'"
                )));
            }
            Ok(Decomposition { u, v, canonical })
        }
        values => Err(Error::NotTwoCharacter { values }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inapplicable {
    NotSpanning,
    Repetitive,
    FullSupport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightForm {
    pub u: u64,
    pub f: u32,
    /// `p^f`.
    pub unit: u64,
    pub w1: u64,
    pub w2: u64,
    /// `r − qμ − 1` from the dual set's hyperplane sum.
    pub u_from_dual: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightFormReport {
    Holds(WeightForm),
    Inapplicable(Vec<Inapplicable>),
}

/// For a spanning, non-repetitive two-character multiset with some point of
/// multiplicity zero, the weights are `u·p^f` and `(u+1)·p^f`.
pub fn verify_weight_form(m: &PointMultiset) -> Result<WeightFormReport> {
    let spectrum = m.spectrum();
    let (s, t, ..) = spectrum
        .two_character()
        .ok_or(Error::NotTwoCharacter { values: spectrum.entries.len() })?;
    let mut why = Vec::new();
    if !m.is_spanning() {
        why.push(Inapplicable::NotSpanning);
    }
    if m.multiplicity_gcd() > 1 {
        why.push(Inapplicable::Repetitive);
    }
    if m.mu() > 0 {
        why.push(Inapplicable::FullSupport);
    }
    if !why.is_empty() {
        return Ok(WeightFormReport::Inapplicable(why));
    }
    let d = geometric_dual(m)?;
    let (_, summary) = canonical_from_pointset(&d)?;
    let geo = m.geometry();
    let unit = summary.delta0();
    let n = m.cardinality();
    let (w1, w2) = (n - s, n - t);
    let u_from_dual = summary.r as i64 - geo.q() as i64 * summary.mu as i64 - 1;
    if w1 % unit != 0 || w2 != w1 + unit || u_from_dual != (w1 / unit) as i64 {
        return Err(Error::InternalInconsistency(format!(
            "weights {w1}, {w2} do not factor over p^f = {unit} with u = {u_from_dual}"
        )));
    }
    Ok(WeightFormReport::Holds(WeightForm { u: w1 / unit, f: summary.f, unit, w1, w2, u_from_dual }))
}

/// A `k × n` generator matrix over F_q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub q: u64,
    pub rows: Vec<Vec<Elem>>,
}

impl GeneratorMatrix {
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        self.rows.iter().map(|row| row[j]).collect()
    }

    /// Weight → count over all `q^k − 1` nonzero messages, by direct encoding.
    pub fn enumerate_weights(&self, geometry: &Geometry) -> std::collections::BTreeMap<u64, u64> {
        let cols: Vec<Vec<Elem>> = (0..self.n()).map(|j| self.column(j)).collect();
        let mut out = std::collections::BTreeMap::new();
        for code in 1..geometry.num_vectors() {
            let x = geometry.decode(code);
            let w = cols.iter().filter(|c| geometry.dot(&x, c) != 0).count() as u64;
            *out.entry(w).or_insert(0) += 1;
        }
        out
    }
}

/// Multiset of the columns of a generator matrix (columns normalized to points).
pub fn code_bridge(geometry: Arc<Geometry>, gm: &GeneratorMatrix) -> Result<PointMultiset> {
    if gm.q != geometry.q() || gm.k() != geometry.k() {
        return Err(Error::GeometryMismatch);
    }
    let mut mult = vec![0u64; geometry.num_points()];
    for j in 0..gm.n() {
        let p = geometry.index_of(&gm.column(j)).ok_or(Error::ZeroColumn(j))?;
        mult[p] += 1;
    }
    PointMultiset::new(geometry, mult)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualViolation {
    pub hyperplane: usize,
    pub codim2_points: Vec<usize>,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub delta: u64,
    /// Common residue of all weights modulo Δ.
    pub m: u64,
    pub spaces: usize,
    pub modulus: u64,
    /// `m/q mod Δ/q`; `None` when `q ∤ m`.
    pub class: Option<u64>,
    pub p_power: bool,
    /// `m ≡ 0 (mod min{Δ, q})`, checked only when Δ is a power of p.
    pub m_claim: Option<bool>,
    pub violations: Vec<ResidualViolation>,
}

impl ResidualReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.class.is_some() && self.m_claim != Some(false)
    }
}

/// Checks that every nonzero residual weight `M(H) − M(K)`, for all
/// codimension-2 spaces `K` and hyperplanes `H ⊇ K`, is `≡ m/q (mod Δ/q)`.
pub fn residual_congruence_check(mset: &PointMultiset, delta: u64) -> Result<ResidualReport> {
    let geo = mset.geometry();
    let k = geo.k();
    if k < 2 {
        return Err(Error::DimensionTooSmall { k, needed: 2 });
    }
    let q = geo.q();
    if delta == 0 || delta % q != 0 {
        return Err(Error::PreconditionViolated(format!("q = {q} must divide Δ = {delta}")));
    }
    let n = mset.cardinality();
    let values = mset.hyperplane_values();
    let m = (n - values[0]) % delta;
    if let Some(h) = values.iter().position(|&v| (n - v) % delta != m) {
        return Err(Error::HypothesisViolated(format!(
            "weight {} of hyperplane {h} is not ≡ {m} (mod {delta})",
            n - values[h]
        )));
    }
    let p = geo.field().characteristic() as u64;
    let p_power = log_p(delta, p).is_some();
    let m_claim = p_power.then(|| m % delta.min(q) == 0);
    let modulus = delta / q;
    let class = (m % q == 0).then(|| (m / q) % modulus);

    let spaces = geo.codim2_spaces();
    let mut violations = Vec::new();
    for space in &spaces {
        let mk: u64 = space.points.iter().map(|&x| mset.get(x)).sum();
        for &h in &space.hyperplanes {
            let w = values[h] - mk;
            if w != 0 && Some(w % modulus) != class {
                violations.push(ResidualViolation { hyperplane: h, codim2_points: space.points.clone(), weight: w });
            }
        }
    }
    Ok(ResidualReport { delta, m, spaces: spaces.len(), modulus, class, p_power, m_claim, violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GCrossCheck {
    pub via_shifts: u64,
    pub via_weights: u64,
    pub via_canonical: u64,
}

impl GCrossCheck {
    pub fn agree(&self) -> bool {
        self.via_shifts == self.via_weights && self.via_weights == self.via_canonical
    }
}

/// `g` three ways: gcd of the shifts, gcd of the weights of the projective
/// code spanned by `D` (all `q^k` messages, which covers the non-spanning case),
/// and the canonical construction's gcd.
pub fn g_crosscheck(d: &DualPointSet) -> Result<GCrossCheck> {
    let (_, summary) = canonical_from_pointset(d)?;
    let geo = d.geometry();
    let cols: Vec<Vec<Elem>> = d.points().iter().map(|&p| geo.point(p).to_vec()).collect();
    let gm = GeneratorMatrix {
        q: geo.q(),
        rows: (0..geo.k()).map(|i| cols.iter().map(|c| c[i]).collect()).collect(),
    };
    let via_weights = gm.enumerate_weights(geo).keys().fold(0u64, |g, &w| g.gcd(&w));
    Ok(GCrossCheck { via_shifts: d.shift_gcd(), via_weights, via_canonical: summary.g })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pg(q: u64, k: usize) -> Arc<Geometry> {
        Arc::new(Geometry::new(q, k).unwrap())
    }

    fn collinear_triple(g: &Arc<Geometry>) -> Vec<usize> {
        g.points_on(0).iter().map(|&p| p as usize).collect()
    }

    #[test]
    fn table1_first_row() {
        let g = pg(2, 3);
        let d = DualPointSet::from_points(g.clone(), &collinear_triple(&g)).unwrap();
        let (mp, s) = canonical_from_pointset(&d).unwrap();
        let row = [s.g, s.mu, s.r, s.n, s.gamma, s.s, s.t, s.s0, s.t0, s.n_prime, s.gamma_prime];
        assert_eq!(row, [2, 1, 3, 9, 3, 5, 3, 1, 0, 1, 1]);
        assert_eq!(mp.cardinality(), 1);
    }

    #[test]
    fn plane_and_two_planes() {
        let g = pg(2, 4);
        let (mp, s) = canonical_from_pointset(&DualPointSet::from_points(g.clone(), &[0]).unwrap()).unwrap();
        assert_eq!((s.s0, s.t0, s.n_prime, s.g, s.mu), (7, 3, 7, 1, 0));
        assert_eq!(mp, PointMultiset::hyperplane_indicator(g.clone(), 0).unwrap());
        let (_, s) = canonical_from_pointset(&DualPointSet::from_points(g, &[0, 1]).unwrap()).unwrap();
        assert_eq!((s.n_prime, s.s0, s.t0, s.gamma_prime), (14, 10, 6, 2));
    }

    #[test]
    fn degenerate_sets() {
        let g = pg(2, 3);
        let empty = DualPointSet::from_points(g.clone(), &[]).unwrap();
        assert_eq!(canonical_from_pointset(&empty).unwrap_err(), Error::DegenerateSet { r: 0, points: 7 });
        let all = DualPointSet::from_points(g, &(0..7).collect::<Vec<_>>()).unwrap();
        assert!(matches!(canonical_from_pointset(&all), Err(Error::DegenerateSet { r: 7, .. })));
    }

    #[test]
    fn projective_line() {
        let g = pg(3, 2);
        let d = DualPointSet::from_points(g, &[1, 3]).unwrap();
        let (_, s) = canonical_from_pointset(&d).unwrap();
        assert_eq!((s.s0, s.t0, s.n_prime, s.g, s.mu), (1, 0, 2, 1, 0));
    }

    #[test]
    fn dual_of_a_line() {
        let g = pg(2, 3);
        let l = PointMultiset::hyperplane_indicator(g, 4).unwrap();
        let d = geometric_dual(&l).unwrap();
        assert_eq!(d.points(), vec![4]);
    }

    #[test]
    fn feasibility_of_a_single_point() {
        let g = pg(2, 3);
        let d = DualPointSet::from_points(g.clone(), &[2]).unwrap();
        assert_eq!(
            feasible_pair(&d, 3, 1).unwrap(),
            Feasibility::Feasible(PointMultiset::hyperplane_indicator(g, 2).unwrap())
        );
        assert!(!feasible_pair(&d, 4, 1).unwrap().is_feasible());
        assert!(feasible_pair(&d, 6, 4).unwrap().is_feasible());
        assert!(feasible_pair(&d, 1, 3).is_err());
    }

    #[test]
    fn decomposition() {
        let g = pg(2, 3);
        let d = DualPointSet::from_points(g.clone(), &collinear_triple(&g)).unwrap();
        let (mp, _) = canonical_from_pointset(&d).unwrap();
        assert_eq!(decompose(&mp).unwrap(), Decomposition { u: 1, v: 0, canonical: mp.clone() });
        let m = mp.scale(2).unwrap().combine(&PointMultiset::constant(g.clone(), 1), 1, 3).unwrap();
        let dec = decompose(&m).unwrap();
        assert_eq!((dec.u, dec.v), (2, 3));
        let one = decompose(&PointMultiset::constant(g.clone(), 4)).unwrap();
        assert_eq!((one.u, one.v), (0, 4));
        let mut bad = vec![0; 7];
        bad[0] = 1;
        bad[1] = 2;
        bad[3] = 1;
        let bad = PointMultiset::new(g, bad).unwrap();
        assert!(matches!(decompose(&bad), Err(Error::NotTwoCharacter { .. })));
    }

    #[test]
    fn identity_code_weights() {
        let g = pg(2, 3);
        let gm = GeneratorMatrix { q: 2, rows: vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]] };
        let m = code_bridge(g.clone(), &gm).unwrap();
        let expect = std::collections::BTreeMap::from([(1, 3), (2, 3), (3, 1)]);
        assert_eq!(m.weight_distribution(), expect);
        assert_eq!(gm.enumerate_weights(&g), expect);
        let zero_col = GeneratorMatrix { q: 2, rows: vec![vec![1, 0], vec![0, 0], vec![1, 0]] };
        assert_eq!(code_bridge(g, &zero_col).unwrap_err(), Error::ZeroColumn(1));
    }

    #[test]
    fn residual_of_a_plane() {
        let g = pg(2, 4);
        let plane = PointMultiset::hyperplane_indicator(g, 0).unwrap();
        let rep = residual_congruence_check(&plane, 4).unwrap();
        assert_eq!((rep.m, rep.spaces, rep.modulus, rep.class), (0, 35, 2, Some(0)));
        assert!(rep.holds());
        assert!(matches!(residual_congruence_check(&plane, 8), Err(Error::HypothesisViolated(_))));
        assert!(matches!(residual_congruence_check(&plane, 3), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn log_p_values() {
        assert_eq!(log_p(8, 2), Some(3));
        assert_eq!(log_p(1, 3), Some(0));
        assert_eq!(log_p(6, 2), None);
        assert_eq!(log_p(0, 2), None);
    }
}
