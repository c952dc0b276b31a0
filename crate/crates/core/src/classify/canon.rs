//! Lexicographically minimal representatives of point sets under PGL(k, q).
//!
//! A group element is a basis `B_0, …, B_{k−1}` of F_q^k (with `B_{k−1}`
//! normalized, which removes scalars). It maps the vector of position `p` in
//! the global point order, `Σ x_i e_i`, to `Σ x_i B_i`; the image string of a
//! set `S` is `b_p = [g(p) ∈ S]`. Positions are grouped in layers: layer `j`
//! holds the `q^{j−1}` points whose leading coordinate sits at `k − j`, and it
//! depends only on `B_{k−1}, …, B_{k−j}`. So the minimum can be found layer by
//! layer, keeping every partial basis that ties; the number of complete bases
//! that tie at the end is the stabilizer order.

use crate::error::{Error, Result};
use crate::geometry::Geometry;

const NONE: u16 = u16::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Canon {
    /// Canonical set, bit `p` = point `p`.
    pub form: u64,
    /// Number of group elements fixing the input set.
    pub stabilizer: u64,
}

/// `|PGL(k, q)| = Π_{i<k} (q^k − q^i) / (q − 1)`, checked.
pub fn pgl_order(k: usize, q: u64) -> Result<u64> {
    let qk = q.checked_pow(k as u32).ok_or(Error::Overflow("group order"))?;
    let mut acc: u64 = 1;
    for i in 0..k {
        let term = qk - q.pow(i as u32);
        acc = acc.checked_mul(term).ok_or(Error::Overflow("group order"))?;
    }
    Ok(acc / (q - 1))
}

/// Precomputed vector arithmetic for the canonical-form search.
#[derive(Debug)]
pub struct Canonizer {
    n: usize,
    q: usize,
    k: usize,
    nv: usize,
    add: Vec<u16>,
    smul: Vec<u16>,
    point_of: Vec<u16>,
    point_codes: Vec<u16>,
    layer_start: Vec<usize>,
    group_order: u64,
}

impl Canonizer {
    /// Requires a prime field (so PGL is the full collineation group) and at most 64 points.
    pub fn new(geometry: &Geometry) -> Result<Self> {
        let q = geometry.q();
        if geometry.field().degree() != 1 {
            return Err(Error::Unsupported(format!(
                "orbit classification needs a prime field; q = {q} has proper field automorphisms"
            )));
        }
        let n = geometry.num_points();
        if n > 64 {
            return Err(Error::SizeLimit { points: n as u64, limit: 64 });
        }
        let (q, k) = (q as usize, geometry.k());
        let nv = geometry.num_vectors();
        let f = geometry.field();
        let vecs: Vec<Vec<u8>> = (0..nv).map(|c| geometry.decode(c)).collect();
        let mut add = vec![0u16; nv * nv];
        for a in 0..nv {
            for b in 0..nv {
                let s: Vec<u8> = vecs[a].iter().zip(&vecs[b]).map(|(&x, &y)| f.add(x, y)).collect();
                add[a * nv + b] = geometry.encode(&s) as u16;
            }
        }
        let mut smul = vec![0u16; q * nv];
        for a in 0..q {
            for v in 0..nv {
                let s: Vec<u8> = vecs[v].iter().map(|&x| f.mul(a as u8, x)).collect();
                smul[a * nv + v] = geometry.encode(&s) as u16;
            }
        }
        let point_of = (0..nv).map(|c| geometry.point_of_code(c).map_or(NONE, |p| p as u16)).collect();
        let point_codes = (0..n).map(|p| geometry.point_code(p) as u16).collect();
        let layer_start = (0..=k).map(|j| geometry.gauss(j) as usize).collect();
        Ok(Canonizer {
            n,
            q,
            k,
            nv,
            add,
            smul,
            point_of,
            point_codes,
            layer_start,
            group_order: pgl_order(k, q as u64)?,
        })
    }

    pub fn num_points(&self) -> usize {
        self.n
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn orbit_size(&self, c: &Canon) -> u64 {
        self.group_order / c.stabilizer
    }

    pub fn canonical(&self, set: u64) -> Canon {
        if set == 0 || set == self.full_mask() {
            return Canon { form: set, stabilizer: self.group_order };
        }
        let (q, nv) = (self.q, self.nv);
        let mut states: Vec<u16> = vec![0];
        let mut len = 1usize;
        let mut form = 0u64;
        let mut ties = 0u64;
        let mut next: Vec<u16> = Vec::new();
        for j in 1..=self.k {
            let last = j == self.k;
            let mut best = u64::MAX;
            next.clear();
            ties = 0;
            for state in states.chunks_exact(len) {
                let candidates: &mut dyn Iterator<Item = usize> = if j == 1 {
                    &mut self.point_codes.iter().map(|&c| c as usize)
                } else {
                    &mut (1..nv)
                };
                for v in candidates {
                    if j > 1 && state.contains(&(v as u16)) {
                        continue;
                    }
                    // layer bits, most significant first, abandoned once above `best`
                    let mut code = 0u64;
                    let mut worse = false;
                    let row = &self.add[v * nv..(v + 1) * nv];
                    for (c, &w) in state.iter().enumerate() {
                        let p = self.point_of[row[w as usize] as usize];
                        code = code << 1 | (set >> p & 1);
                        if best != u64::MAX && code > best >> (len - 1 - c) {
                            worse = true;
                            break;
                        }
                    }
                    if worse {
                        continue;
                    }
                    if code < best {
                        best = code;
                        next.clear();
                        ties = 0;
                    }
                    if last {
                        ties += 1;
                    } else {
                        for a in 0..q {
                            let av = self.smul[a * nv + v] as usize;
                            let arow = &self.add[av * nv..(av + 1) * nv];
                            next.extend(state.iter().map(|&w| arow[w as usize]));
                        }
                    }
                }
            }
            let base = self.layer_start[j - 1];
            for c in 0..len {
                if best >> (len - 1 - c) & 1 == 1 {
                    form |= 1 << (base + c);
                }
            }
            std::mem::swap(&mut states, &mut next);
            len *= q;
        }
        Canon { form, stabilizer: ties }
    }
}

/// `b_0 b_1 … b_{n−1}` as a string of `0`/`1`.
pub fn bitstring(set: u64, n: usize) -> String {
    (0..n).map(|p| if set >> p & 1 == 1 { '1' } else { '0' }).collect()
}

pub fn parse_bitstring(s: &str) -> Option<u64> {
    if s.len() > 64 {
        return None;
    }
    s.bytes().enumerate().try_fold(0u64, |acc, (p, b)| match b {
        b'0' => Some(acc),
        b'1' => Some(acc | 1 << p),
        _ => None,
    })
}

/// Sort key under which numeric order equals lexicographic order of bitstrings.
pub fn lex_key(set: u64) -> u64 {
    set.reverse_bits()
}
