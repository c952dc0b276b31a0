//! Independent models used as test oracles. Nothing here calls into the
//! library's geometry or field code: points, incidence and the projective
//! group are rebuilt from scratch for prime `q`.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

/// PG(k−1, p) for a prime `p`, points as normalized vectors in lexicographic order.
pub struct Model {
    pub p: u64,
    pub k: usize,
    pub pts: Vec<Vec<u64>>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|x| a * x % p == 1).expect("unit")
}

impl Model {
    pub fn new(p: u64, k: usize) -> Model {
        let total = p.pow(k as u32);
        let mut pts = Vec::new();
        for code in 1..total {
            let mut v = vec![0u64; k];
            let mut c = code;
            for i in (0..k).rev() {
                v[i] = c % p;
                c /= p;
            }
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                pts.push(v);
            }
        }
        pts.sort();
        Model { p, k, pts }
    }

    pub fn n(&self) -> usize {
        self.pts.len()
    }

    pub fn index(&self, v: &[u64]) -> usize {
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
        let s = inv_mod(lead, self.p);
        let w: Vec<u64> = v.iter().map(|x| x * s % self.p).collect();
        self.pts.binary_search(&w).expect("normalized point")
    }

    pub fn incident(&self, point: usize, hyperplane: usize) -> bool {
        let d: u64 = self.pts[point].iter().zip(&self.pts[hyperplane]).map(|(a, b)| a * b).sum();
        d % self.p == 0
    }

    pub fn apply(&self, mat: &[Vec<u64>], point: usize) -> usize {
        let v = &self.pts[point];
        let w: Vec<u64> = mat.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % self.p).collect();
        self.index(&w)
    }

    pub fn permutation(&self, mat: &[Vec<u64>]) -> Vec<usize> {
        (0..self.n()).map(|x| self.apply(mat, x)).collect()
    }

    /// Elementary transvections and one primitive diagonal scaling; they generate GL(k, p).
    pub fn generators(&self) -> Vec<Vec<usize>> {
        let k = self.k;
        let id = |i: usize, j: usize| u64::from(i == j);
        let mut out = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if a != b {
                    let m: Vec<Vec<u64>> =
                        (0..k).map(|i| (0..k).map(|j| id(i, j) + u64::from(i == a && j == b)).collect()).collect();
                    out.push(self.permutation(&m));
                }
            }
        }
        if self.p > 2 {
            let prim = (2..self.p)
                .find(|&g| (1..self.p - 1).all(|e| pow_mod(g, e, self.p) != 1))
                .expect("primitive root");
            let m: Vec<Vec<u64>> =
                (0..k).map(|i| (0..k).map(|j| if i == j { if i == 0 { prim } else { 1 } } else { 0 }).collect()).collect();
            out.push(self.permutation(&m));
        }
        out
    }

    /// All point permutations induced by GL(k, p), by closure of the generators.
    pub fn group(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let id: Vec<usize> = (0..self.n()).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for h in &gens {
                let gh: Vec<usize> = g.iter().map(|&x| h[x]).collect();
                if seen.insert(gh.clone()) {
                    queue.push_back(gh);
                }
            }
        }
        let mut all: Vec<_> = seen.into_iter().collect();
        all.sort();
        all
    }
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1, |acc, _| acc * b % m)
}

pub fn apply_mask(perm: &[usize], set: u64) -> u64 {
    perm.iter().enumerate().filter(|(x, _)| set >> x & 1 == 1).fold(0, |acc, (_, &y)| acc | 1 << y)
}

/// Lexicographic key of the bitstring `b_0 b_1 …` (smaller is earlier).
pub fn lex(set: u64) -> u64 {
    set.reverse_bits()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(g, μ, r, n, γ, s, t, s0, t0, n', γ')` of the canonical multiset of `D`,
/// straight from the definitions (hyperplane `i` has the same coordinates as point `i`).
pub fn row_by_definition(m: &Model, set: u64) -> [u64; 11] {
    let n = m.n();
    let dset: Vec<usize> = (0..n).filter(|&x| set >> x & 1 == 1).collect();
    let deg: Vec<u64> = (0..n).map(|p| dset.iter().filter(|&&h| m.incident(p, h)).count() as u64).collect();
    let hyper = |mult: &[u64]| -> Vec<u64> {
        (0..n).map(|h| (0..n).filter(|&p| m.incident(p, h)).map(|p| mult[p]).sum()).collect()
    };
    let mu = *deg.iter().min().unwrap();
    let g = deg.iter().fold(0, |acc, &d| gcd(acc, d - mu));
    let prime: Vec<u64> = deg.iter().map(|&d| (d - mu) / g).collect();
    let hs = hyper(&deg);
    let hp = hyper(&prime);
    [
        g,
        mu,
        dset.len() as u64,
        deg.iter().sum(),
        *deg.iter().max().unwrap(),
        *hs.iter().max().unwrap(),
        *hs.iter().min().unwrap(),
        *hp.iter().max().unwrap(),
        *hp.iter().min().unwrap(),
        prime.iter().sum(),
        *prime.iter().max().unwrap(),
    ]
}

/// Orbits of all subsets by union-find over generator moves: `(lex-min member, size)` per class.
pub fn orbits_by_union_find(m: &Model) -> Vec<(u64, u64)> {
    let n = m.n();
    assert!(n <= 20, "union-find oracle is exhaustive over 2^n subsets");
    let gens = m.generators();
    let total = 1usize << n;
    let mut parent: Vec<u32> = (0..total as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for set in 0..total as u64 {
        for g in &gens {
            let a = find(&mut parent, set as u32);
            let b = find(&mut parent, apply_mask(g, set) as u32);
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut best: std::collections::HashMap<u32, (u64, u64)> = std::collections::HashMap::new();
    for set in 0..total as u64 {
        let root = find(&mut parent, set as u32);
        let e = best.entry(root).or_insert((set, 0));
        if lex(set) < lex(e.0) {
            e.0 = set;
        }
        e.1 += 1;
    }
    let mut out: Vec<(u64, u64)> = best.into_values().collect();
    out.sort_by_key(|&(s, _)| (s.count_ones(), lex(s)));
    out
}
