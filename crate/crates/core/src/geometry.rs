//! The projective space PG(k−1, q) with a fixed global ordering.
//!
//! Points are the nonzero vectors of F_q^k whose leftmost nonzero coordinate
//! is 1, sorted lexicographically by element codes. Hyperplanes reuse the same
//! list as normal vectors, so point `i` and hyperplane `i` are dual to each
//! other under the standard bilinear form.

use crate::error::{Error, Result};
use crate::gf::{build_field, Elem, FieldSpec};

/// Default cap on `[k]_q`; keeps incidence tables (`[k]·[k−1]` entries) small.
pub const DEFAULT_POINT_LIMIT: u64 = 8191;

const NONE: u32 = u32::MAX;

/// `[j]_q = (q^j − 1)/(q − 1)`, checked.
pub fn gaussian(j: u32, q: u64) -> Result<u64> {
    let mut acc: u64 = 0;
    let mut term: u64 = 1;
    for i in 0..j {
        acc = acc.checked_add(term).ok_or(Error::Overflow("gaussian coefficient"))?;
        if i + 1 < j {
            term = term.checked_mul(q).ok_or(Error::Overflow("gaussian coefficient"))?;
        }
    }
    Ok(acc)
}

pub fn checked_pow(q: u64, e: u32) -> Result<u64> {
    q.checked_pow(e).ok_or(Error::Overflow("prime power"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Point,
    Hyperplane,
}

#[derive(Debug)]
pub struct Geometry {
    field: FieldSpec,
    k: usize,
    /// Flat `n × k` coordinates.
    coords: Vec<Elem>,
    /// Base-q code of every point vector (first coordinate most significant).
    codes: Vec<u32>,
    /// For every vector code, the index of the point it spans (NONE for 0).
    span_of: Vec<u32>,
    on_hyperplane: Vec<Vec<u32>>,
    through_point: Vec<Vec<u32>>,
}

/// A codimension-2 subspace together with the `q + 1` hyperplanes containing it.
#[derive(Clone, Debug)]
pub struct Codim2 {
    pub hyperplanes: Vec<usize>,
    pub points: Vec<usize>,
}

impl Geometry {
    pub fn new(q: u64, k: usize) -> Result<Self> {
        Self::with_limit(q, k, DEFAULT_POINT_LIMIT)
    }

    pub fn with_limit(q: u64, k: usize, limit: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::DimensionTooSmall { k, needed: 1 });
        }
        let field = build_field(q)?;
        let n = gaussian(k as u32, q)?;
        if n > limit {
            return Err(Error::SizeLimit { points: n, limit });
        }
        let qn = field.order();
        let total = qn.pow(k as u32);

        let mut coords = Vec::with_capacity(n as usize * k);
        let mut codes = Vec::with_capacity(n as usize);
        let mut v = vec![0 as Elem; k];
        for code in 1..total {
            decode_into(code, qn, &mut v);
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                coords.extend_from_slice(&v);
                codes.push(code as u32);
            }
        }
        debug_assert_eq!(codes.len() as u64, n);

        let mut span_of = vec![NONE; total];
        for (i, &c) in codes.iter().enumerate() {
            decode_into(c as usize, qn, &mut v);
            for a in 1..qn {
                let w: Vec<Elem> = v.iter().map(|&x| field.mul(a as Elem, x)).collect();
                span_of[encode(&w, qn)] = i as u32;
            }
        }

        let n = n as usize;
        let mut on_hyperplane = vec![Vec::new(); n];
        let mut through_point = vec![Vec::new(); n];
        for h in 0..n {
            let hv = &coords[h * k..(h + 1) * k];
            for p in 0..n {
                let pv = &coords[p * k..(p + 1) * k];
                if dot(&field, hv, pv) == 0 {
                    on_hyperplane[h].push(p as u32);
                    through_point[p].push(h as u32);
                }
            }
        }
        Ok(Geometry { field, k, coords, codes, span_of, on_hyperplane, through_point })
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// `[k]_q`: number of points (and of hyperplanes).
    #[inline]
    pub fn num_points(&self) -> usize {
        self.codes.len()
    }

    /// `[j]_q` for this geometry's q; cannot overflow for `j ≤ k`.
    pub fn gauss(&self, j: usize) -> u64 {
        gaussian(j as u32, self.q()).expect("bounded by the point count")
    }

    /// `q^j` for `j ≤ k`.
    pub fn qpow(&self, j: usize) -> u64 {
        self.q().pow(j as u32)
    }

    pub fn point(&self, i: usize) -> &[Elem] {
        &self.coords[i * self.k..(i + 1) * self.k]
    }

    /// Normal vector of hyperplane `h` (identical to point `h`'s vector).
    pub fn hyperplane(&self, h: usize) -> &[Elem] {
        self.point(h)
    }

    pub fn point_code(&self, i: usize) -> usize {
        self.codes[i] as usize
    }

    /// Number of vectors in F_q^k.
    pub fn num_vectors(&self) -> usize {
        self.span_of.len()
    }

    pub fn encode(&self, v: &[Elem]) -> usize {
        encode(v, self.field.order())
    }

    pub fn decode(&self, code: usize) -> Vec<Elem> {
        let mut v = vec![0; self.k];
        decode_into(code, self.field.order(), &mut v);
        v
    }

    /// Index of the point spanned by the vector with the given code.
    #[inline]
    pub fn point_of_code(&self, code: usize) -> Option<usize> {
        let i = self.span_of[code];
        (i != NONE).then_some(i as usize)
    }

    /// Index of the point spanned by `v`; `None` for the zero vector.
    pub fn index_of(&self, v: &[Elem]) -> Option<usize> {
        if v.len() != self.k || v.iter().any(|&x| x as usize >= self.field.order()) {
            return None;
        }
        self.point_of_code(self.encode(v))
    }

    pub fn points_on(&self, h: usize) -> &[u32] {
        &self.on_hyperplane[h]
    }

    pub fn hyperplanes_through(&self, p: usize) -> &[u32] {
        &self.through_point[p]
    }

    pub fn incident(&self, p: usize, h: usize) -> bool {
        dot(&self.field, self.point(p), self.hyperplane(h)) == 0
    }

    /// The point ↔ hyperplane pairing `P ↦ P^⊥`. Indices coincide by construction.
    pub fn dual(&self, index: usize, kind: Kind) -> Result<(usize, Kind)> {
        if index >= self.num_points() {
            return Err(Error::IndexOutOfBounds { index, len: self.num_points() });
        }
        let other = match kind {
            Kind::Point => Kind::Hyperplane,
            Kind::Hyperplane => Kind::Point,
        };
        Ok((index, other))
    }

    pub fn dot(&self, u: &[Elem], v: &[Elem]) -> Elem {
        dot(&self.field, u, v)
    }

    /// Sorted point indices of the subspace spanned by `gens`.
    pub fn span_points(&self, gens: &[Vec<Elem>]) -> Vec<usize> {
        let f = &self.field;
        let mut vecs: Vec<Vec<Elem>> = vec![vec![0; self.k]];
        for g in gens {
            if vecs.iter().any(|v| v == g) {
                continue;
            }
            let mut next = Vec::with_capacity(vecs.len() * f.order());
            for a in f.elements() {
                for v in &vecs {
                    next.push(v.iter().zip(g).map(|(&x, &y)| f.add(x, f.mul(a, y))).collect());
                }
            }
            next.sort();
            next.dedup();
            vecs = next;
        }
        let mut pts: Vec<usize> = vecs.iter().filter_map(|v| self.index_of(v)).collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    /// Rank of a list of vectors over F_q.
    pub fn rank(&self, vectors: &[Vec<Elem>]) -> usize {
        let f = &self.field;
        let mut rows: Vec<Vec<Elem>> = vectors.to_vec();
        let mut rank = 0;
        for col in 0..self.k {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
            rows.swap(rank, piv);
            let inv = f.inv(rows[rank][col]).unwrap();
            let pivot: Vec<Elem> = rows[rank].iter().map(|&x| f.mul(inv, x)).collect();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let c = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
        rank
    }

    /// Rank of the span of a set of points.
    pub fn point_rank(&self, points: impl IntoIterator<Item = usize>) -> usize {
        let vs: Vec<Vec<Elem>> = points.into_iter().map(|p| self.point(p).to_vec()).collect();
        self.rank(&vs)
    }

    /// All subspaces of vector dimension `dim`, each as a sorted point list.
    /// Enumerated through reduced row echelon forms, so each appears once.
    pub fn subspaces(&self, dim: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if dim == 0 || dim > self.k {
            return out;
        }
        let mut pivots = Vec::with_capacity(dim);
        self.rref_pivots(0, dim, &mut pivots, &mut out);
        out
    }

    fn rref_pivots(&self, start: usize, dim: usize, pivots: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pivots.len() == dim {
            // free slots: row i, columns > pivot_i that are not pivots
            let free: Vec<(usize, usize)> = (0..dim)
                .flat_map(|i| {
                    let p = pivots[i];
                    (p + 1..self.k).filter(|c| !pivots.contains(c)).map(move |c| (i, c))
                })
                .collect();
            let q = self.field.order();
            let combos = q.pow(free.len() as u32);
            for mut c in 0..combos {
                let mut rows = vec![vec![0 as Elem; self.k]; dim];
                for (i, &p) in pivots.iter().enumerate() {
                    rows[i][p] = 1;
                }
                for &(i, col) in &free {
                    rows[i][col] = (c % q) as Elem;
                    c /= q;
                }
                out.push(self.span_points(&rows));
            }
            return;
        }
        for p in start..self.k {
            pivots.push(p);
            self.rref_pivots(p + 1, dim, pivots, out);
            pivots.pop();
        }
    }

    /// All codimension-2 subspaces, found as lines of the dual space.
    pub fn codim2_spaces(&self) -> Vec<Codim2> {
        if self.k < 2 {
            return Vec::new();
        }
        self.subspaces(2)
            .into_iter()
            .map(|hyperplanes| {
                let first = hyperplanes[0];
                let points = self.points_on(first)
                    .iter()
                    .map(|&p| p as usize)
                    .filter(|&p| hyperplanes.iter().all(|&h| self.incident(p, h)))
                    .collect();
                Codim2 { hyperplanes, points }
            })
            .collect()
    }
}

pub(crate) fn dot(f: &FieldSpec, u: &[Elem], v: &[Elem]) -> Elem {
    u.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

fn encode(v: &[Elem], q: usize) -> usize {
    v.iter().fold(0, |acc, &x| acc * q + x as usize)
}

fn decode_into(mut code: usize, q: usize, v: &mut [Elem]) {
    for x in v.iter_mut().rev() {
        *x = (code % q) as Elem;
        code /= q;
    }
}
