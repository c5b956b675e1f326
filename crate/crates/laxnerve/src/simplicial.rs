//! Dimension-truncated simplicial and bisimplicial sets with materialized operators,
//! the diagonal, the codiagonal `W̄`, and the Zisman comparison map `diag S → W̄ S`.
//!
//! Simplices are identified by canonical keys (`Vec<u32>`) and stored by index per
//! dimension. Degenerate simplices are kept explicitly.

use std::collections::HashMap;

use thiserror::Error;

use crate::report::{ValidationReport, ViolationKind};

pub type Key = Vec<u32>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("operator {op} on {dim}-simplex {key:?} produced unknown simplex {image:?}")]
    NotClosed {
        op: String,
        dim: usize,
        key: Key,
        image: Key,
    },
    #[error("duplicate simplex {key:?} in dimension {dim}")]
    Duplicate { dim: usize, key: Key },
    #[error("truncation cap {0} is too small")]
    CapTooSmall(usize),
    #[error("truncation caps differ: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("enumeration budget of {0} candidate cells exceeded")]
    EnumerationBudgetExceeded(u64),
}

fn build_index(dim: usize, keys: &[Key]) -> Result<HashMap<Key, u32>, SimplicialError> {
    let mut ix = HashMap::with_capacity(keys.len());
    for (i, k) in keys.iter().enumerate() {
        if ix.insert(k.clone(), i as u32).is_some() {
            return Err(SimplicialError::Duplicate { dim, key: k.clone() });
        }
    }
    Ok(ix)
}

fn lookup(
    ix: &HashMap<Key, u32>,
    op: impl FnOnce() -> String,
    dim: usize,
    key: &Key,
    image: Key,
) -> Result<u32, SimplicialError> {
    ix.get(&image).copied().ok_or_else(|| SimplicialError::NotClosed {
        op: op(),
        dim,
        key: key.clone(),
        image,
    })
}

/// A simplicial set truncated at dimension `cap`.
#[derive(Debug, Clone)]
pub struct TruncSimplicialSet {
    cap: usize,
    keys: Vec<Vec<Key>>,
    index: Vec<HashMap<Key, u32>>,
    /// `faces[n][i][s]` for `1 ≤ n ≤ cap`.
    faces: Vec<Vec<Vec<u32>>>,
    /// `degens[n][i][s]` for `n < cap`.
    degens: Vec<Vec<Vec<u32>>>,
    degenerate: Vec<Vec<bool>>,
}

impl TruncSimplicialSet {
    /// Tabulates operators given on keys; every image must be an enumerated simplex.
    pub fn from_fn(
        cap: usize,
        keys: Vec<Vec<Key>>,
        face: impl Fn(usize, usize, &Key) -> Key,
        degen: impl Fn(usize, usize, &Key) -> Key,
    ) -> Result<Self, SimplicialError> {
        assert_eq!(keys.len(), cap + 1, "one simplex list per dimension 0..=cap");
        let index = keys
            .iter()
            .enumerate()
            .map(|(n, k)| build_index(n, k))
            .collect::<Result<Vec<_>, _>>()?;
        let mut faces = vec![Vec::new()];
        for n in 1..=cap {
            let mut per_i = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let mut v = Vec::with_capacity(keys[n].len());
                for k in &keys[n] {
                    v.push(lookup(&index[n - 1], || format!("d{i}"), n, k, face(n, i, k))?);
                }
                per_i.push(v);
            }
            faces.push(per_i);
        }
        let mut degens = Vec::new();
        let mut degenerate: Vec<Vec<bool>> = keys.iter().map(|k| vec![false; k.len()]).collect();
        for n in 0..cap {
            let mut per_i = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let mut v = Vec::with_capacity(keys[n].len());
                for k in &keys[n] {
                    let s = lookup(&index[n + 1], || format!("s{i}"), n, k, degen(n, i, k))?;
                    degenerate[n + 1][s as usize] = true;
                    v.push(s);
                }
                per_i.push(v);
            }
            degens.push(per_i);
        }
        Ok(TruncSimplicialSet {
            cap,
            keys,
            index,
            faces,
            degens,
            degenerate,
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn count(&self, n: usize) -> usize {
        self.keys[n].len()
    }
    pub fn counts(&self) -> Vec<usize> {
        self.keys.iter().map(Vec::len).collect()
    }
    pub fn key(&self, n: usize, s: u32) -> &Key {
        &self.keys[n][s as usize]
    }
    pub fn keys(&self, n: usize) -> &[Key] {
        &self.keys[n]
    }
    pub fn find(&self, n: usize, key: &Key) -> Option<u32> {
        self.index[n].get(key).copied()
    }
    pub fn face(&self, n: usize, i: usize, s: u32) -> u32 {
        self.faces[n][i][s as usize]
    }
    pub fn degen(&self, n: usize, i: usize, s: u32) -> u32 {
        self.degens[n][i][s as usize]
    }
    pub fn is_degenerate(&self, n: usize, s: u32) -> bool {
        self.degenerate[n][s as usize]
    }
    pub fn nondegenerate(&self, n: usize) -> Vec<u32> {
        (0..self.count(n) as u32).filter(|&s| !self.is_degenerate(n, s)).collect()
    }
    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.cap).map(|n| self.nondegenerate(n).len()).collect()
    }

    /// Exhaustive check of the simplicial identities wherever both sides exist.
    pub fn audit(&self) -> ValidationReport {
        use ViolationKind::SimplicialIdentity as V;
        let mut r = ValidationReport::new();
        let cap = self.cap;
        for n in 2..=cap {
            for s in 0..self.count(n) as u32 {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = self.face(n - 1, i, self.face(n, j, s));
                        let rhs = self.face(n - 1, j - 1, self.face(n, i, s));
                        r.require(lhs == rhs, V, || format!("d{i}d{j} != d{}d{i} on {n}-simplex {s}", j - 1));
                    }
                }
            }
        }
        for n in 0..cap {
            for s in 0..self.count(n) as u32 {
                for j in 0..=n {
                    let sj = self.degen(n, j, s);
                    for i in 0..=n + 1 {
                        let lhs = self.face(n + 1, i, sj);
                        let ok = if i < j {
                            lhs == self.degen(n - 1, j - 1, self.face(n, i, s))
                        } else if i == j || i == j + 1 {
                            lhs == s
                        } else {
                            lhs == self.degen(n - 1, j, self.face(n, i - 1, s))
                        };
                        r.require(ok, V, || format!("d{i}s{j} on {n}-simplex {s}"));
                    }
                    if n + 2 <= cap {
                        for i in 0..=j {
                            let lhs = self.degen(n + 1, i, sj);
                            let rhs = self.degen(n + 1, j + 1, self.degen(n, i, s));
                            r.require(lhs == rhs, V, || format!("s{i}s{j} on {n}-simplex {s}"));
                        }
                    }
                }
            }
        }
        r
    }

    /// The point: one simplex per dimension.
    pub fn point(cap: usize) -> TruncSimplicialSet {
        Self::standard_simplex(0, cap)
    }

    /// `Δ[n]`: `k`-simplices are monotone maps `[k] → [n]`.
    pub fn standard_simplex(n: usize, cap: usize) -> TruncSimplicialSet {
        let keys = (0..=cap).map(|k| monotone_maps(k, n)).collect();
        Self::from_fn(
            cap,
            keys,
            |_, i, k| {
                let mut v = k.clone();
                v.remove(i);
                v
            },
            |_, i, k| {
                let mut v = k.clone();
                v.insert(i, k[i]);
                v
            },
        )
        .expect("standard simplex is closed")
    }

    /// Levelwise product.
    pub fn product(a: &TruncSimplicialSet, b: &TruncSimplicialSet) -> Result<TruncSimplicialSet, SimplicialError> {
        if a.cap != b.cap {
            return Err(SimplicialError::CapMismatch(a.cap, b.cap));
        }
        let keys = (0..=a.cap)
            .map(|n| {
                let mut v = Vec::with_capacity(a.count(n) * b.count(n));
                for x in 0..a.count(n) as u32 {
                    for y in 0..b.count(n) as u32 {
                        v.push(vec![x, y]);
                    }
                }
                v
            })
            .collect();
        Self::from_fn(
            a.cap,
            keys,
            |n, i, k| vec![a.face(n, i, k[0]), b.face(n, i, k[1])],
            |n, i, k| vec![a.degen(n, i, k[0]), b.degen(n, i, k[1])],
        )
    }

    /// Disjoint union.
    pub fn coproduct(a: &TruncSimplicialSet, b: &TruncSimplicialSet) -> Result<TruncSimplicialSet, SimplicialError> {
        if a.cap != b.cap {
            return Err(SimplicialError::CapMismatch(a.cap, b.cap));
        }
        let keys = (0..=a.cap)
            .map(|n| {
                (0..a.count(n) as u32)
                    .map(|s| vec![0, s])
                    .chain((0..b.count(n) as u32).map(|s| vec![1, s]))
                    .collect()
            })
            .collect();
        let side = |k: &Key| if k[0] == 0 { a } else { b };
        Self::from_fn(
            a.cap,
            keys,
            |n, i, k| vec![k[0], side(k).face(n, i, k[1])],
            |n, i, k| vec![k[0], side(k).degen(n, i, k[1])],
        )
    }

    /// For every compatible boundary `(y_0, …, y_n)` of `(n−1)`-simplices
    /// (`d_i y_j = d_{j−1} y_i` for `i < j`), the number of `n`-simplices with that boundary.
    pub fn boundary_filler_counts(&self, n: usize) -> Vec<usize> {
        assert!((2..=self.cap).contains(&n), "fillers need 2 <= n <= cap");
        let mut fillers: HashMap<Vec<u32>, usize> = HashMap::new();
        for s in 0..self.count(n) as u32 {
            let b: Vec<u32> = (0..=n).map(|i| self.face(n, i, s)).collect();
            *fillers.entry(b).or_default() += 1;
        }
        let mut by_d0: HashMap<u32, Vec<u32>> = HashMap::new();
        for y in 0..self.count(n - 1) as u32 {
            by_d0.entry(self.face(n - 1, 0, y)).or_default().push(y);
        }
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n + 1);
        for y0 in 0..self.count(n - 1) as u32 {
            cur.push(y0);
            self.boundary_fill(n, &mut cur, &by_d0, &fillers, &mut out);
            cur.pop();
        }
        out
    }

    fn boundary_fill(
        &self,
        n: usize,
        cur: &mut Vec<u32>,
        by_d0: &HashMap<u32, Vec<u32>>,
        fillers: &HashMap<Vec<u32>, usize>,
        out: &mut Vec<usize>,
    ) {
        let j = cur.len();
        if j == n + 1 {
            out.push(fillers.get(cur.as_slice()).copied().unwrap_or(0));
            return;
        }
        let want = self.face(n - 1, j - 1, cur[0]);
        for &y in by_d0.get(&want).into_iter().flatten() {
            if (1..j).all(|i| self.face(n - 1, i, y) == self.face(n - 1, j - 1, cur[i])) {
                cur.push(y);
                self.boundary_fill(n, cur, by_d0, fillers, out);
                cur.pop();
            }
        }
    }

    /// Identity-key relabelling of simplices: same sets and operators, keyed by index.
    pub fn same_as(&self, other: &TruncSimplicialSet) -> bool {
        self.cap == other.cap
            && self.keys == other.keys
            && self.faces == other.faces
            && self.degens == other.degens
    }
}

fn monotone_maps(k: usize, n: usize) -> Vec<Key> {
    fn rec(k: usize, n: u32, start: u32, cur: &mut Key, out: &mut Vec<Key>) {
        if cur.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(k, n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, n as u32, 0, &mut Vec::new(), &mut out);
    out
}

/// A dimensionwise map of truncated simplicial sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    pub maps: Vec<Vec<u32>>,
}

impl SimplicialMap {
    /// Builds a map from a key translation; every image must exist in `tgt`.
    pub fn from_key_fn(
        src: &TruncSimplicialSet,
        tgt: &TruncSimplicialSet,
        f: impl Fn(usize, &Key) -> Key,
    ) -> Result<SimplicialMap, SimplicialError> {
        let cap = src.cap.min(tgt.cap);
        let mut maps = Vec::with_capacity(cap + 1);
        for n in 0..=cap {
            let mut v = Vec::with_capacity(src.count(n));
            for k in src.keys(n) {
                v.push(lookup(&tgt.index[n], || "map".into(), n, k, f(n, k))?);
            }
            maps.push(v);
        }
        Ok(SimplicialMap { maps })
    }

    pub fn identity(s: &TruncSimplicialSet) -> SimplicialMap {
        SimplicialMap {
            maps: (0..=s.cap).map(|n| (0..s.count(n) as u32).collect()).collect(),
        }
    }

    pub fn apply(&self, n: usize, s: u32) -> u32 {
        self.maps[n][s as usize]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            maps: first
                .maps
                .iter()
                .enumerate()
                .take(self.maps.len())
                .map(|(n, m)| m.iter().map(|&s| self.apply(n, s)).collect())
                .collect(),
        }
    }

    /// Checks commutation with every face and degeneracy.
    pub fn validate(&self, src: &TruncSimplicialSet, tgt: &TruncSimplicialSet) -> ValidationReport {
        use ViolationKind::MapNotSimplicial as V;
        let mut r = ValidationReport::new();
        let cap = self.maps.len() - 1;
        for n in 0..=cap {
            if self.maps[n].len() != src.count(n) || self.maps[n].iter().any(|&t| t as usize >= tgt.count(n)) {
                r.push(V, format!("map not total in dimension {n}"));
                return r;
            }
        }
        for n in 0..=cap {
            for s in 0..src.count(n) as u32 {
                let fs = self.apply(n, s);
                if n >= 1 {
                    for i in 0..=n {
                        r.require(self.apply(n - 1, src.face(n, i, s)) == tgt.face(n, i, fs), V, || {
                            format!("d{i} on {n}-simplex {s}")
                        });
                    }
                }
                if n < cap {
                    for i in 0..=n {
                        r.require(self.apply(n + 1, src.degen(n, i, s)) == tgt.degen(n, i, fs), V, || {
                            format!("s{i} on {n}-simplex {s}")
                        });
                    }
                }
            }
        }
        r
    }

    /// True when every dimension is a bijection onto the target.
    pub fn is_bijective(&self, tgt: &TruncSimplicialSet) -> bool {
        self.maps.iter().enumerate().all(|(n, m)| {
            if m.len() != tgt.count(n) {
                return false;
            }
            let mut seen = vec![false; m.len()];
            m.iter().all(|&t| !std::mem::replace(&mut seen[t as usize], true))
        })
    }

    pub fn inverse(&self) -> Option<SimplicialMap> {
        let mut maps = Vec::with_capacity(self.maps.len());
        for m in &self.maps {
            let mut inv = vec![u32::MAX; m.len()];
            for (s, &t) in m.iter().enumerate() {
                if (t as usize) >= inv.len() || inv[t as usize] != u32::MAX {
                    return None;
                }
                inv[t as usize] = s as u32;
            }
            maps.push(inv);
        }
        Some(SimplicialMap { maps })
    }
}

/// A bisimplicial set truncated at `cap` in both directions. The first index is
/// horizontal, the second vertical.
#[derive(Debug, Clone)]
pub struct TruncBisimplicialSet {
    cap: usize,
    keys: Vec<Vec<Vec<Key>>>,
    index: Vec<Vec<HashMap<Key, u32>>>,
    hfaces: Vec<Vec<Vec<Vec<u32>>>>,
    hdegens: Vec<Vec<Vec<Vec<u32>>>>,
    vfaces: Vec<Vec<Vec<Vec<u32>>>>,
    vdegens: Vec<Vec<Vec<Vec<u32>>>>,
}

/// Operators of a bisimplicial set given on keys, by `(p, q, index, key)`.
pub struct BisimplicialOps<HF, HD, VF, VD> {
    pub hface: HF,
    pub hdegen: HD,
    pub vface: VF,
    pub vdegen: VD,
}

impl TruncBisimplicialSet {
    pub fn from_fn<HF, HD, VF, VD>(
        cap: usize,
        keys: Vec<Vec<Vec<Key>>>,
        ops: BisimplicialOps<HF, HD, VF, VD>,
    ) -> Result<Self, SimplicialError>
    where
        HF: Fn(usize, usize, usize, &Key) -> Key,
        HD: Fn(usize, usize, usize, &Key) -> Key,
        VF: Fn(usize, usize, usize, &Key) -> Key,
        VD: Fn(usize, usize, usize, &Key) -> Key,
    {
        let index = keys
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(q, k)| build_index(q, k))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let empty = || vec![vec![Vec::new(); cap + 1]; cap + 1];
        let (mut hfaces, mut hdegens, mut vfaces, mut vdegens) = (empty(), empty(), empty(), empty());
        for p in 0..=cap {
            for q in 0..=cap {
                let ks = &keys[p][q];
                if p >= 1 {
                    for i in 0..=p {
                        let v = ks
                            .iter()
                            .map(|k| lookup(&index[p - 1][q], || format!("dh{i}"), p, k, (ops.hface)(p, q, i, k)))
                            .collect::<Result<Vec<_>, _>>()?;
                        hfaces[p][q].push(v);
                    }
                }
                if p < cap {
                    for i in 0..=p {
                        let v = ks
                            .iter()
                            .map(|k| lookup(&index[p + 1][q], || format!("sh{i}"), p, k, (ops.hdegen)(p, q, i, k)))
                            .collect::<Result<Vec<_>, _>>()?;
                        hdegens[p][q].push(v);
                    }
                }
                if q >= 1 {
                    for j in 0..=q {
                        let v = ks
                            .iter()
                            .map(|k| lookup(&index[p][q - 1], || format!("dv{j}"), q, k, (ops.vface)(p, q, j, k)))
                            .collect::<Result<Vec<_>, _>>()?;
                        vfaces[p][q].push(v);
                    }
                }
                if q < cap {
                    for j in 0..=q {
                        let v = ks
                            .iter()
                            .map(|k| lookup(&index[p][q + 1], || format!("sv{j}"), q, k, (ops.vdegen)(p, q, j, k)))
                            .collect::<Result<Vec<_>, _>>()?;
                        vdegens[p][q].push(v);
                    }
                }
            }
        }
        Ok(TruncBisimplicialSet {
            cap,
            keys,
            index,
            hfaces,
            hdegens,
            vfaces,
            vdegens,
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn count(&self, p: usize, q: usize) -> usize {
        self.keys[p][q].len()
    }
    pub fn key(&self, p: usize, q: usize, s: u32) -> &Key {
        &self.keys[p][q][s as usize]
    }
    pub fn find(&self, p: usize, q: usize, key: &Key) -> Option<u32> {
        self.index[p][q].get(key).copied()
    }
    pub fn hface(&self, p: usize, q: usize, i: usize, s: u32) -> u32 {
        self.hfaces[p][q][i][s as usize]
    }
    pub fn hdegen(&self, p: usize, q: usize, i: usize, s: u32) -> u32 {
        self.hdegens[p][q][i][s as usize]
    }
    pub fn vface(&self, p: usize, q: usize, j: usize, s: u32) -> u32 {
        self.vfaces[p][q][j][s as usize]
    }
    pub fn vdegen(&self, p: usize, q: usize, j: usize, s: u32) -> u32 {
        self.vdegens[p][q][j][s as usize]
    }

    /// `S_{p,q} = X_p`, vertical operators identities.
    pub fn vertically_constant(x: &TruncSimplicialSet) -> TruncBisimplicialSet {
        let cap = x.cap();
        let keys = (0..=cap).map(|p| vec![x.keys(p).to_vec(); cap + 1]).collect();
        Self::from_fn(
            cap,
            keys,
            BisimplicialOps {
                hface: |p, _, i, k: &Key| x.key(p - 1, x.face(p, i, x.find(p, k).unwrap())).clone(),
                hdegen: |p, _, i, k: &Key| x.key(p + 1, x.degen(p, i, x.find(p, k).unwrap())).clone(),
                vface: |_, _, _, k: &Key| k.clone(),
                vdegen: |_, _, _, k: &Key| k.clone(),
            },
        )
        .expect("constant bisimplicial set is closed")
    }

    /// External product `S_{p,q} = X_p × Y_q`.
    pub fn external_product(x: &TruncSimplicialSet, y: &TruncSimplicialSet) -> Result<Self, SimplicialError> {
        if x.cap() != y.cap() {
            return Err(SimplicialError::CapMismatch(x.cap(), y.cap()));
        }
        let cap = x.cap();
        let keys = (0..=cap)
            .map(|p| {
                (0..=cap)
                    .map(|q| {
                        let mut v = Vec::new();
                        for a in 0..x.count(p) as u32 {
                            for b in 0..y.count(q) as u32 {
                                v.push(vec![a, b]);
                            }
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Self::from_fn(
            cap,
            keys,
            BisimplicialOps {
                hface: |p, _, i, k: &Key| vec![x.face(p, i, k[0]), k[1]],
                hdegen: |p, _, i, k: &Key| vec![x.degen(p, i, k[0]), k[1]],
                vface: |_, q, j, k: &Key| vec![k[0], y.face(q, j, k[1])],
                vdegen: |_, q, j, k: &Key| vec![k[0], y.degen(q, j, k[1])],
            },
        )
    }

    /// Horizontal and vertical simplicial identities, and commutation of the two directions.
    pub fn audit(&self) -> ValidationReport {
        use ViolationKind::SimplicialIdentity as V;
        let mut r = ValidationReport::new();
        let cap = self.cap;
        for q in 0..=cap {
            let row = self.horizontal_row(q);
            r.extend(row.audit(), &format!("horizontal row q={q}"));
        }
        for p in 0..=cap {
            let col = self.vertical_column(p);
            r.extend(col.audit(), &format!("vertical column p={p}"));
        }
        for p in 0..=cap {
            for q in 0..=cap {
                for s in 0..self.count(p, q) as u32 {
                    if p >= 1 && q >= 1 {
                        for i in 0..=p {
                            for j in 0..=q {
                                let a = self.vface(p - 1, q, j, self.hface(p, q, i, s));
                                let b = self.hface(p, q - 1, i, self.vface(p, q, j, s));
                                r.require(a == b, V, || format!("dh{i} dv{j} at ({p},{q}) simplex {s}"));
                            }
                        }
                    }
                    if p >= 1 && q < cap {
                        for i in 0..=p {
                            for j in 0..=q {
                                let a = self.vdegen(p - 1, q, j, self.hface(p, q, i, s));
                                let b = self.hface(p, q + 1, i, self.vdegen(p, q, j, s));
                                r.require(a == b, V, || format!("dh{i} sv{j} at ({p},{q}) simplex {s}"));
                            }
                        }
                    }
                    if q >= 1 && p < cap {
                        for i in 0..=p {
                            for j in 0..=q {
                                let a = self.hdegen(p, q - 1, i, self.vface(p, q, j, s));
                                let b = self.vface(p + 1, q, j, self.hdegen(p, q, i, s));
                                r.require(a == b, V, || format!("sh{i} dv{j} at ({p},{q}) simplex {s}"));
                            }
                        }
                    }
                    if p < cap && q < cap {
                        for i in 0..=p {
                            for j in 0..=q {
                                let a = self.vdegen(p + 1, q, j, self.hdegen(p, q, i, s));
                                let b = self.hdegen(p, q + 1, i, self.vdegen(p, q, j, s));
                                r.require(a == b, V, || format!("sh{i} sv{j} at ({p},{q}) simplex {s}"));
                            }
                        }
                    }
                }
            }
        }
        r
    }

    /// `T_{p,q} = S_{q,p}`, exchanging the two directions.
    pub fn transpose(&self) -> TruncBisimplicialSet {
        fn swap<T: Clone>(v: &[Vec<T>]) -> Vec<Vec<T>> {
            let n = v.len();
            (0..n).map(|a| (0..n).map(|b| v[b][a].clone()).collect()).collect()
        }
        TruncBisimplicialSet {
            cap: self.cap,
            keys: swap(&self.keys),
            index: swap(&self.index),
            hfaces: swap(&self.vfaces),
            hdegens: swap(&self.vdegens),
            vfaces: swap(&self.hfaces),
            vdegens: swap(&self.hdegens),
        }
    }

    /// The simplicial set `p ↦ S_{p,q}` for fixed `q`.
    pub fn horizontal_row(&self, q: usize) -> TruncSimplicialSet {
        let keys = (0..=self.cap).map(|p| (0..self.count(p, q) as u32).map(|s| vec![s]).collect()).collect();
        TruncSimplicialSet::from_fn(
            self.cap,
            keys,
            |p, i, k| vec![self.hface(p, q, i, k[0])],
            |p, i, k| vec![self.hdegen(p, q, i, k[0])],
        )
        .expect("row of a bisimplicial set is closed")
    }

    /// The simplicial set `q ↦ S_{p,q}` for fixed `p`.
    pub fn vertical_column(&self, p: usize) -> TruncSimplicialSet {
        let keys = (0..=self.cap).map(|q| (0..self.count(p, q) as u32).map(|s| vec![s]).collect()).collect();
        TruncSimplicialSet::from_fn(
            self.cap,
            keys,
            |q, j, k| vec![self.vface(p, q, j, k[0])],
            |q, j, k| vec![self.vdegen(p, q, j, k[0])],
        )
        .expect("column of a bisimplicial set is closed")
    }

    /// The diagonal: `n`-simplices `S_{n,n}`, `d_i = d_i^h d_i^v`, `s_i = s_i^h s_i^v`.
    pub fn diag(&self) -> TruncSimplicialSet {
        let keys = (0..=self.cap)
            .map(|n| (0..self.count(n, n) as u32).map(|s| vec![s]).collect())
            .collect();
        TruncSimplicialSet::from_fn(
            self.cap,
            keys,
            |n, i, k| vec![self.hface(n, n - 1, i, self.vface(n, n, i, k[0]))],
            |n, i, k| vec![self.hdegen(n, n + 1, i, self.vdegen(n, n, i, k[0]))],
        )
        .expect("diagonal is closed")
    }

    /// The codiagonal `W̄S`: `p`-simplices are tuples `(t_0, …, t_p)`, `t_m ∈ S_{m,p−m}`,
    /// with `d_0^v t_m = d_{m+1}^h t_{m+1}`. Keys are the tuples of indices.
    pub fn codiagonal(&self) -> Result<TruncSimplicialSet, SimplicialError> {
        if self.cap < 1 {
            return Err(SimplicialError::CapTooSmall(self.cap));
        }
        let cap = self.cap;
        // by_vface0[m][q]: d_0^v image in S_{m,q-1} ↦ simplices of S_{m,q}.
        let mut by_vface0: Vec<Vec<HashMap<u32, Vec<u32>>>> = vec![vec![HashMap::new(); cap + 1]; cap + 1];
        for m in 0..=cap {
            for q in 1..=cap {
                for s in 0..self.count(m, q) as u32 {
                    by_vface0[m][q].entry(self.vface(m, q, 0, s)).or_default().push(s);
                }
            }
        }
        let mut keys = Vec::with_capacity(cap + 1);
        for p in 0..=cap {
            let mut out = Vec::new();
            let mut cur = vec![0u32; p + 1];
            for tp in 0..self.count(p, 0) as u32 {
                cur[p] = tp;
                self.wbar_fill(p, p, &mut cur, &by_vface0, &mut out);
            }
            keys.push(out);
        }
        TruncSimplicialSet::from_fn(
            cap,
            keys,
            |p, i, t| {
                let mut v = Vec::with_capacity(p);
                for m in 0..i {
                    v.push(self.vface(m, p - m, i - m, t[m]));
                }
                for m in i + 1..=p {
                    v.push(self.hface(m, p - m, i, t[m]));
                }
                v
            },
            |p, i, t| {
                let mut v = Vec::with_capacity(p + 2);
                for m in 0..=i {
                    v.push(self.vdegen(m, p - m, i - m, t[m]));
                }
                for m in i..=p {
                    v.push(self.hdegen(m, p - m, i, t[m]));
                }
                v
            },
        )
    }

    fn wbar_fill(
        &self,
        p: usize,
        m: usize,
        cur: &mut Key,
        by_vface0: &[Vec<HashMap<u32, Vec<u32>>>],
        out: &mut Vec<Key>,
    ) {
        if m == 0 {
            out.push(cur.clone());
            return;
        }
        // Choose t_{m-1} ∈ S_{m-1, p-m+1} with d_0^v t_{m-1} = d_m^h t_m.
        let want = self.hface(m, p - m, m, cur[m]);
        if let Some(cands) = by_vface0[m - 1][p - m + 1].get(&want) {
            for &c in cands {
                cur[m - 1] = c;
                self.wbar_fill(p, m - 1, cur, by_vface0, out);
            }
        }
    }

    /// The Zisman map `diag S → W̄S`, `(ηt)_m = (d_{m+1}^h)^{p−m} (d_0^v)^m t`.
    pub fn zisman(&self, diag: &TruncSimplicialSet, wbar: &TruncSimplicialSet) -> Result<SimplicialMap, SimplicialError> {
        SimplicialMap::from_key_fn(diag, wbar, |p, k| {
            let t = k[0];
            (0..=p)
                .map(|m| {
                    let mut s = t;
                    for q in ((p - m + 1)..=p).rev() {
                        s = self.vface(p, q, 0, s);
                    }
                    let q = p - m;
                    for hp in ((m + 1)..=p).rev() {
                        s = self.hface(hp, q, m + 1, s);
                    }
                    s
                })
                .collect()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_simplices() {
        let d0 = TruncSimplicialSet::standard_simplex(0, 4);
        assert_eq!(d0.counts(), vec![1; 5]);
        let d1 = TruncSimplicialSet::standard_simplex(1, 4);
        assert_eq!(d1.count(1), 3);
        assert_eq!(d1.nondegenerate(1).len(), 1);
        let d2 = TruncSimplicialSet::standard_simplex(2, 4);
        // Oracle: monotone maps [2] → [2] number C(5,2).
        assert_eq!(d2.count(2), 10);
        for s in [&d0, &d1, &d2] {
            assert!(s.audit().is_ok());
        }
    }

    #[test]
    fn product_of_intervals() {
        let d1 = TruncSimplicialSet::standard_simplex(1, 3);
        let p = TruncSimplicialSet::product(&d1, &d1).unwrap();
        assert!(p.audit().is_ok());
        // Oracle: pairs (a, b) of 1-simplices not both degenerate: 3*3 - 2*2.
        assert_eq!(p.nondegenerate(1).len(), 5);
        let pt = TruncSimplicialSet::point(3);
        assert_eq!(TruncSimplicialSet::product(&pt, &pt).unwrap().counts(), pt.counts());
        assert_eq!(TruncSimplicialSet::product(&d1, &pt).unwrap().counts(), d1.counts());
    }

    #[test]
    fn diag_of_external_product() {
        let d1 = TruncSimplicialSet::standard_simplex(1, 3);
        let s = TruncBisimplicialSet::external_product(&d1, &d1).unwrap();
        assert!(s.audit().is_ok());
        let d = s.diag();
        assert_eq!(d.count(1), 9);
        assert!(d.audit().is_ok());
        let w = s.codiagonal().unwrap();
        assert!(w.audit().is_ok(), "{}", w.audit());
        let eta = s.zisman(&d, &w).unwrap();
        assert!(eta.validate(&d, &w).is_ok());
    }

    #[test]
    fn vertically_constant_collapses() {
        let x = TruncSimplicialSet::standard_simplex(2, 3);
        let s = TruncBisimplicialSet::vertically_constant(&x);
        let d = s.diag();
        let w = s.codiagonal().unwrap();
        assert_eq!(d.counts(), x.counts());
        assert_eq!(w.counts(), x.counts());
        let eta = s.zisman(&d, &w).unwrap();
        assert!(eta.validate(&d, &w).is_ok());
        assert!(eta.is_bijective(&w));
        // W̄ tuples are determined by their last entry, which η preserves.
        for p in 0..=3 {
            for t in 0..d.count(p) as u32 {
                let image = w.key(p, eta.apply(p, t));
                assert_eq!(image[p], t);
            }
        }
    }

    #[test]
    fn coproduct_of_simplices() {
        let a = TruncSimplicialSet::standard_simplex(0, 2);
        let b = TruncSimplicialSet::standard_simplex(1, 2);
        let c = TruncSimplicialSet::coproduct(&a, &b).unwrap();
        assert!(c.audit().is_ok());
        assert_eq!(c.count(0), 3);
    }
}
