//! Multisets of points and their hyperplane statistics.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Geometry;

/// Assignment of a multiplicity to every point of a fixed geometry.
#[derive(Clone, Debug)]
pub struct PointMultiset {
    geometry: Arc<Geometry>,
    mult: Vec<u64>,
}

impl PartialEq for PointMultiset {
    fn eq(&self, other: &Self) -> bool {
        same_geometry(&self.geometry, &other.geometry) && self.mult == other.mult
    }
}

impl Eq for PointMultiset {}

fn same_geometry(a: &Geometry, b: &Geometry) -> bool {
    a.q() == b.q() && a.k() == b.k()
}

/// Sorted `value → number of hyperplanes` map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperplaneSpectrum {
    pub entries: BTreeMap<u64, u64>,
}

impl HyperplaneSpectrum {
    pub fn values(&self) -> Vec<u64> {
        self.entries.keys().copied().collect()
    }

    /// `(s, t, a_s, a_t)` with `s > t`, when exactly two values occur.
    pub fn two_character(&self) -> Option<(u64, u64, u64, u64)> {
        if self.entries.len() != 2 {
            return None;
        }
        let mut it = self.entries.iter();
        let (&t, &at) = it.next()?;
        let (&s, &as_) = it.next()?;
        Some((s, t, as_, at))
    }

    pub fn is_two_character(&self) -> bool {
        self.entries.len() == 2
    }
}

/// Exact coefficients `α_H` of a multiset in the basis of hyperplane indicators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCoefficients {
    pub coeffs: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub n: u64,
    pub mu: u64,
    pub gamma: u64,
    pub support: usize,
    pub full_support: bool,
    pub spanning: bool,
    /// gcd of all multiplicities; > 1 means the multiset is repeated.
    pub multiplicity_gcd: u64,
    /// Largest Δ with every weight `n − M(H)` divisible by Δ (0 if all weights vanish).
    pub divisibility: u64,
}

impl PointMultiset {
    pub fn new(geometry: Arc<Geometry>, mult: Vec<u64>) -> Result<Self> {
        if mult.len() != geometry.num_points() {
            return Err(Error::LengthMismatch { expected: geometry.num_points(), got: mult.len() });
        }
        Ok(PointMultiset { geometry, mult })
    }

    /// Builds from signed values, rejecting negatives.
    pub fn from_signed(geometry: Arc<Geometry>, values: &[i128]) -> Result<Self> {
        let mult = values
            .iter()
            .enumerate()
            .map(|(point, &value)| {
                u64::try_from(value).map_err(|_| {
                    if value < 0 {
                        Error::NegativeMultiplicity { point, value }
                    } else {
                        Error::Overflow("multiplicity")
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(geometry, mult)
    }

    pub fn zero(geometry: Arc<Geometry>) -> Self {
        let n = geometry.num_points();
        PointMultiset { geometry, mult: vec![0; n] }
    }

    /// `l · χ_V`.
    pub fn constant(geometry: Arc<Geometry>, l: u64) -> Self {
        let n = geometry.num_points();
        PointMultiset { geometry, mult: vec![l; n] }
    }

    /// Indicator of a point set; repeated indices are counted once.
    pub fn characteristic(geometry: Arc<Geometry>, points: &[usize]) -> Result<Self> {
        let n = geometry.num_points();
        let mut mult = vec![0; n];
        for &p in points {
            if p >= n {
                return Err(Error::IndexOutOfBounds { index: p, len: n });
            }
            mult[p] = 1;
        }
        Ok(PointMultiset { geometry, mult })
    }

    /// Indicator of hyperplane `h`.
    pub fn hyperplane_indicator(geometry: Arc<Geometry>, h: usize) -> Result<Self> {
        if h >= geometry.num_points() {
            return Err(Error::IndexOutOfBounds { index: h, len: geometry.num_points() });
        }
        let pts: Vec<usize> = geometry.points_on(h).iter().map(|&p| p as usize).collect();
        Self::characteristic(geometry, &pts)
    }

    pub fn geometry(&self) -> &Arc<Geometry> {
        &self.geometry
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mult
    }

    pub fn get(&self, p: usize) -> u64 {
        self.mult[p]
    }

    pub fn cardinality(&self) -> u64 {
        self.mult.iter().sum()
    }

    pub fn mu(&self) -> u64 {
        self.mult.iter().copied().min().unwrap_or(0)
    }

    pub fn gamma(&self) -> u64 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.mult.len()).filter(|&p| self.mult[p] > 0).collect()
    }

    pub fn is_spanning(&self) -> bool {
        self.geometry.point_rank(self.support()) == self.geometry.k()
    }

    pub fn hyperplane_multiplicity(&self, h: usize) -> u64 {
        self.geometry.points_on(h).iter().map(|&p| self.mult[p as usize]).sum()
    }

    /// `M(H)` for every hyperplane, in hyperplane order.
    pub fn hyperplane_values(&self) -> Vec<u64> {
        (0..self.geometry.num_points()).map(|h| self.hyperplane_multiplicity(h)).collect()
    }

    pub fn spectrum(&self) -> HyperplaneSpectrum {
        let mut entries = BTreeMap::new();
        for v in self.hyperplane_values() {
            *entries.entry(v).or_insert(0) += 1;
        }
        HyperplaneSpectrum { entries }
    }

    /// `a·self + b·other`, pointwise.
    pub fn combine(&self, other: &PointMultiset, a: i64, b: i64) -> Result<PointMultiset> {
        if !same_geometry(&self.geometry, &other.geometry) {
            return Err(Error::GeometryMismatch);
        }
        let values: Vec<i128> = self
            .mult
            .iter()
            .zip(&other.mult)
            .map(|(&x, &y)| a as i128 * x as i128 + b as i128 * y as i128)
            .collect();
        Self::from_signed(self.geometry.clone(), &values)
    }

    pub fn scale(&self, a: u64) -> Result<PointMultiset> {
        let mult = self
            .mult
            .iter()
            .map(|&m| m.checked_mul(a).ok_or(Error::Overflow("multiplicity")))
            .collect::<Result<_>>()?;
        Ok(PointMultiset { geometry: self.geometry.clone(), mult })
    }

    /// `l − M(P)` at every point.
    pub fn l_complement(&self, l: u64) -> Result<PointMultiset> {
        let gamma = self.gamma();
        if l < gamma {
            return Err(Error::ComplementLevelTooSmall { level: l, gamma });
        }
        let mult = self.mult.iter().map(|&m| l - m).collect();
        Ok(PointMultiset { geometry: self.geometry.clone(), mult })
    }

    pub fn multiplicity_gcd(&self) -> u64 {
        self.mult.iter().fold(0, |g, &m| g.gcd(&m))
    }

    /// Divides out the gcd of all multiplicities.
    pub fn divide_by_gcd(&self) -> Result<(PointMultiset, u64)> {
        let g = self.multiplicity_gcd();
        if g == 0 {
            return Err(Error::TrivialMultiset);
        }
        let mult = self.mult.iter().map(|&m| m / g).collect();
        Ok((PointMultiset { geometry: self.geometry.clone(), mult }, g))
    }

    pub fn stats(&self) -> Stats {
        let n = self.cardinality();
        let divisibility = self.hyperplane_values().iter().fold(0u64, |g, &v| g.gcd(&(n - v)));
        Stats {
            n,
            mu: self.mu(),
            gamma: self.gamma(),
            support: self.support().len(),
            full_support: self.mu() > 0,
            spanning: self.is_spanning(),
            multiplicity_gcd: self.multiplicity_gcd(),
            divisibility,
        }
    }

    /// Nonzero-codeword weight distribution of the associated code:
    /// each hyperplane `H` contributes `q − 1` codewords of weight `n − M(H)`.
    pub fn weight_distribution(&self) -> BTreeMap<u64, u64> {
        let n = self.cardinality();
        let per = self.geometry.q() - 1;
        let mut out = BTreeMap::new();
        for v in self.hyperplane_values() {
            *out.entry(n - v).or_insert(0) += per;
        }
        out
    }
}

fn rat(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Recovers point multiplicities from hyperplane multiplicities:
/// `M(P) = (q^{k−1}·A + (1 − [k−1])·B) / (q^{k−1}·[k−1])`, where `A` sums the
/// values of hyperplanes through `P` and `B` the rest. Integrality is not assumed.
pub fn reconstruct_from_hyperplanes(geometry: &Geometry, values: &[i128]) -> Result<Vec<BigRational>> {
    let k = geometry.k();
    if k < 2 {
        return Err(Error::DimensionTooSmall { k, needed: 2 });
    }
    let n = geometry.num_points();
    if values.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: values.len() });
    }
    let total: i128 = values.iter().sum();
    let qk1 = geometry.qpow(k - 1) as i128;
    let g1 = geometry.gauss(k - 1) as i128;
    let denom = rat(qk1 * g1);
    Ok((0..n)
        .map(|p| {
            let a: i128 = geometry.hyperplanes_through(p).iter().map(|&h| values[h as usize]).sum();
            let b = total - a;
            rat(qk1 * a + (1 - g1) * b) / &denom
        })
        .collect())
}

/// Unique `α` with `M = Σ_H α_H χ_H`, from
/// `q^{k−2} χ_P = Σ_{H∋P} χ_H − ([k−2]/[k−1]) Σ_H χ_H`, which gives
/// `α_H = (M(H) − n[k−2]/[k−1]) / q^{k−2}`.
pub fn hyperplane_basis_coefficients(m: &PointMultiset) -> Result<RationalCoefficients> {
    let g = m.geometry();
    let k = g.k();
    if k < 2 {
        return Err(Error::DimensionTooSmall { k, needed: 2 });
    }
    let n = m.cardinality() as i128;
    let shift = rat(n * g.gauss(k - 2) as i128) / rat(g.gauss(k - 1) as i128);
    let scale = rat(g.qpow(k - 2) as i128);
    let coeffs = m
        .hyperplane_values()
        .into_iter()
        .map(|v| (rat(v as i128) - &shift) / &scale)
        .collect();
    Ok(RationalCoefficients { coeffs })
}

impl RationalCoefficients {
    /// `Σ_H α_H χ_H(P)` at every point.
    pub fn evaluate(&self, geometry: &Geometry) -> Vec<BigRational> {
        (0..geometry.num_points())
            .map(|p| {
                geometry
                    .hyperplanes_through(p)
                    .iter()
                    .fold(BigRational::zero(), |acc, &h| acc + &self.coeffs[h as usize])
            })
            .collect()
    }
}

/// Converts exact rationals back to multiplicities when all are non-negative integers.
pub fn integral_values(values: &[BigRational]) -> Option<Vec<u64>> {
    values
        .iter()
        .map(|v| {
            if v.denom().is_one() {
                u64::try_from(v.numer()).ok()
            } else {
                None
            }
        })
        .collect()
}
