//! Exact integral invariants of truncated simplicial sets: normalized chain complexes,
//! Smith normal form over arbitrary-precision integers, homology, π0, and comparison
//! reports between two simplicial sets (optionally along a map).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::simplicial::{SimplicialMap, TruncSimplicialSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("simplicial identity audit failed: {0}")]
    AuditFailed(String),
    #[error("truncation caps differ: {0} vs {1}")]
    CapMismatch(usize, usize),
    #[error("degree {degree} is outside the trusted range 0..={max} for cap {cap}")]
    OutOfRange { degree: usize, max: usize, cap: usize },
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquareNonzero(usize),
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }
    fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
    /// `row[dst] -= q * row[src]`.
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let d = s * q;
                self.data[dst * self.cols + j] -= d;
            }
        }
    }
    /// `col[dst] -= q * col[src]`.
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let d = s * q;
                self.data[i * self.cols + dst] -= d;
            }
        }
    }
    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }
}

/// Diagonal form `D = U M V` with `d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub diagonal: IntMatrix,
    pub rank: usize,
    /// Nonzero diagonal entries, positive and divisibility-ordered.
    pub factors: Vec<BigInt>,
}

/// Column transform `V` and its inverse, tracked alongside the elimination.
struct ColumnTransform {
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl ColumnTransform {
    fn swap(&mut self, a: usize, b: usize) {
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }
    /// Mirrors `col[dst] -= q col[src]` on `M`.
    fn axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.v.col_axpy(dst, src, q);
        self.v_inv.row_axpy(src, dst, &-q);
    }
}

fn snf_in_place(a: &mut IntMatrix, mut tr: Option<&mut ColumnTransform>) -> usize {
    let (r, c) = (a.rows, a.cols);
    let mut t = 0;
    while t < r.min(c) {
        // Global minimal-|entry| pivot of the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let v = a.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(tr) = tr.as_deref_mut() {
            tr.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !a.get(i, t).is_zero() {
                    let q = a.get(i, t).div_floor(a.get(t, t));
                    a.row_axpy(i, t, &q);
                    clean &= a.get(i, t).is_zero();
                }
            }
            for j in t + 1..c {
                if !a.get(t, j).is_zero() {
                    let q = a.get(t, j).div_floor(a.get(t, t));
                    a.col_axpy(j, t, &q);
                    if let Some(tr) = tr.as_deref_mut() {
                        tr.axpy(j, t, &q);
                    }
                    clean &= a.get(t, j).is_zero();
                }
            }
            if !clean {
                // Move the smallest remainder in row/column t onto the diagonal.
                let mut best = (t, t);
                for i in t + 1..r {
                    if !a.get(i, t).is_zero() && a.get(i, t).abs() < a.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    if !a.get(t, j).is_zero() && a.get(t, j).abs() < a.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                a.swap_rows(t, best.0);
                a.swap_cols(t, best.1);
                if let Some(tr) = tr.as_deref_mut() {
                    tr.swap(t, best.1);
                }
                continue;
            }
            // Divisibility: fold an offending row into row t and re-eliminate.
            let p = a.get(t, t).clone();
            let offending = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a.get(i, j).is_multiple_of(&p)));
            match offending {
                Some(i) => a.row_axpy(t, i, &BigInt::from(-1)),
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
        }
        t += 1;
    }
    t
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut d = m.clone();
    let rank = snf_in_place(&mut d, None);
    let factors = (0..rank).map(|i| d.get(i, i).clone()).collect();
    SmithForm {
        diagonal: d,
        rank,
        factors,
    }
}

/// A `Z`-basis of `ker M` (as columns) and the matrix taking a kernel vector to its
/// coordinates in that basis.
fn kernel_basis(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut tr = ColumnTransform {
        v: IntMatrix::identity(m.cols),
        v_inv: IntMatrix::identity(m.cols),
    };
    let rank = snf_in_place(&mut d, Some(&mut tr));
    let k = m.cols - rank;
    let mut basis = IntMatrix::zeros(m.cols, k);
    let mut coords = IntMatrix::zeros(k, m.cols);
    for c in 0..k {
        for i in 0..m.cols {
            basis.set(i, c, tr.v.get(i, rank + c).clone());
            coords.set(c, i, tr.v_inv.get(rank + c, i).clone());
        }
    }
    (basis, coords)
}

/// Normalized chains: bases are the nondegenerate simplices, degenerate faces vanish.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    cap: usize,
    basis: Vec<Vec<u32>>,
    /// `boundaries[n]` is `∂_n: C_n → C_{n−1}`; `boundaries[0]` is `C_0 → 0`.
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn from_simplicial(s: &TruncSimplicialSet) -> Result<ChainComplex, InvariantError> {
        let audit = s.audit();
        if !audit.is_ok() {
            return Err(InvariantError::AuditFailed(audit.violations()[0].witness.clone()));
        }
        let cap = s.cap();
        let basis: Vec<Vec<u32>> = (0..=cap).map(|n| s.nondegenerate(n)).collect();
        let position: Vec<Vec<Option<usize>>> = (0..=cap)
            .map(|n| {
                let mut p = vec![None; s.count(n)];
                for (k, &x) in basis[n].iter().enumerate() {
                    p[x as usize] = Some(k);
                }
                p
            })
            .collect();
        let mut boundaries = vec![IntMatrix::zeros(0, basis[0].len())];
        for n in 1..=cap {
            let mut m = IntMatrix::zeros(basis[n - 1].len(), basis[n].len());
            for (col, &x) in basis[n].iter().enumerate() {
                for i in 0..=n {
                    if let Some(row) = position[n - 1][s.face(n, i, x) as usize] {
                        m.add_to(row, col, if i % 2 == 0 { 1 } else { -1 });
                    }
                }
            }
            boundaries.push(m);
        }
        let cc = ChainComplex { cap, basis, boundaries };
        for n in 2..=cap {
            if !cc.boundaries[n - 1].mul(&cc.boundaries[n]).is_zero() {
                return Err(InvariantError::BoundarySquareNonzero(n));
            }
        }
        Ok(cc)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }
    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n]
    }
    pub fn basis(&self, n: usize) -> &[u32] {
        &self.basis[n]
    }

    /// Matrix of the induced chain map `C_n(S) → C_n(T)`.
    pub fn chain_map(f: &SimplicialMap, src: &ChainComplex, tgt: &ChainComplex, n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(tgt.basis[n].len(), src.basis[n].len());
        for (col, &x) in src.basis[n].iter().enumerate() {
            let y = f.apply(n, x);
            if let Ok(row) = tgt.basis[n].binary_search(&y) {
                m.add_to(row, col, 1);
            }
        }
        m
    }

    /// Exact check of `∂ f_n = f_{n−1} ∂` in every degree.
    pub fn chain_map_commutes(f: &SimplicialMap, src: &ChainComplex, tgt: &ChainComplex) -> bool {
        let cap = src.cap.min(tgt.cap);
        (1..=cap).all(|n| {
            let lhs = tgt.boundaries[n].mul(&Self::chain_map(f, src, tgt, n));
            let rhs = Self::chain_map(f, src, tgt, n - 1).mul(&src.boundaries[n]);
            lhs == rhs
        })
    }
}

/// `Z^betti ⊕ ⊕ Z/t_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup {
            betti,
            torsion: Vec::new(),
        }
    }
    pub fn cyclic(n: u64) -> Self {
        HomologyGroup {
            betti: 0,
            torsion: vec![BigInt::from(n)],
        }
    }
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homology in degrees `0..=cap−1`; higher degrees are never reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub cap: usize,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyReport {
    pub fn max_degree(&self) -> usize {
        self.cap.saturating_sub(1)
    }

    pub fn degree(&self, n: usize) -> Result<&HomologyGroup, InvariantError> {
        self.groups.get(n).ok_or(InvariantError::OutOfRange {
            degree: n,
            max: self.max_degree(),
            cap: self.cap,
        })
    }

    /// `H_0 = Z` and all trusted higher groups vanish.
    pub fn is_point(&self) -> bool {
        self.groups.first() == Some(&HomologyGroup::free(1)) && self.groups[1..].iter().all(HomologyGroup::is_zero)
    }

    pub fn point(cap: usize) -> HomologyReport {
        let mut groups = vec![HomologyGroup::default(); cap];
        if cap > 0 {
            groups[0] = HomologyGroup::free(1);
        }
        HomologyReport { cap, groups }
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, g) in self.groups.iter().enumerate() {
            writeln!(f, "INFO H_{n} = {g}")?;
        }
        writeln!(f, "INFO homology trusted through degree {}", self.max_degree())
    }
}

pub fn homology_of_complex(cc: &ChainComplex) -> HomologyReport {
    let snf: Vec<SmithForm> = cc.boundaries.iter().map(smith_normal_form).collect();
    let ranks = cc.ranks();
    let groups = (0..cc.cap)
        .map(|n| {
            let rank_n = if n == 0 { 0 } else { snf[n].rank };
            let next = &snf[n + 1];
            HomologyGroup {
                betti: ranks[n] - rank_n - next.rank,
                torsion: next.factors.iter().filter(|f| !f.is_one()).cloned().collect(),
            }
        })
        .collect();
    HomologyReport { cap: cc.cap, groups }
}

pub fn homology(s: &TruncSimplicialSet) -> Result<HomologyReport, InvariantError> {
    Ok(homology_of_complex(&ChainComplex::from_simplicial(s)?))
}

/// Component label of every vertex; labels are `0..count` in order of first vertex.
pub fn components(s: &TruncSimplicialSet) -> Vec<usize> {
    let n = s.count(0);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    if s.cap() >= 1 {
        for e in 0..s.count(1) as u32 {
            let a = find(&mut parent, s.face(1, 0, e) as usize);
            let b = find(&mut parent, s.face(1, 1, e) as usize);
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    (0..n)
        .map(|v| {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            label[r]
        })
        .collect()
}

pub fn pi0(s: &TruncSimplicialSet) -> usize {
    components(s).into_iter().max().map_or(0, |m| m + 1)
}

/// Whether a map induces isomorphisms on `H_0` and `H_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapIsoReport {
    pub h0: bool,
    pub h1: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub cap: usize,
    pub left: HomologyReport,
    pub right: HomologyReport,
    pub pi0: (usize, usize),
    pub map: Option<MapIsoReport>,
}

impl EquivalenceReport {
    pub fn degree_agrees(&self, n: usize) -> Result<bool, InvariantError> {
        Ok(self.left.degree(n)? == self.right.degree(n)?)
    }

    /// All trusted degrees, π0, and the map checks (if any) agree.
    pub fn agree(&self) -> bool {
        self.left == self.right
            && self.pi0.0 == self.pi0.1
            && self.map.is_none_or(|m| m.h0 && m.h1)
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = |b: bool| if b { "OK" } else { "FAIL" };
        let (a, b) = self.pi0;
        writeln!(f, "{} pi0 {a} vs {b}", tag(a == b))?;
        for (n, (l, r)) in self.left.groups.iter().zip(&self.right.groups).enumerate() {
            if l == r {
                writeln!(f, "OK H_{n} agree: {l}")?;
            } else {
                writeln!(f, "FAIL H_{n} differ: {l} vs {r}")?;
            }
        }
        if let Some(m) = self.map {
            writeln!(f, "{} map induces iso on H_0", tag(m.h0))?;
            writeln!(f, "{} map induces iso on H_1", tag(m.h1))?;
        }
        if self.agree() {
            writeln!(f, "OK agree through degree {}", self.left.max_degree())
        } else {
            writeln!(f, "FAIL disagree within degrees 0..={}", self.left.max_degree())
        }
    }
}

pub fn homology_compare(
    s: &TruncSimplicialSet,
    t: &TruncSimplicialSet,
    via: Option<&SimplicialMap>,
) -> Result<EquivalenceReport, InvariantError> {
    if s.cap() != t.cap() {
        return Err(InvariantError::CapMismatch(s.cap(), t.cap()));
    }
    let cs = ChainComplex::from_simplicial(s)?;
    let ct = ChainComplex::from_simplicial(t)?;
    let left = homology_of_complex(&cs);
    let right = homology_of_complex(&ct);
    let map = via.map(|f| map_iso_low_degrees(f, s, t, &cs, &ct, &left, &right));
    Ok(EquivalenceReport {
        cap: s.cap(),
        pi0: (pi0(s), pi0(t)),
        left,
        right,
        map,
    })
}

/// `H_0` is free on π0, so the `H_0` map is iso iff the π0 map is a bijection. On `H_1`
/// the map is surjective iff `Z_1(T) = f(Z_1 S) + B_1(T)`; a surjection between
/// abstractly isomorphic finitely generated abelian groups is an isomorphism.
fn map_iso_low_degrees(
    f: &SimplicialMap,
    s: &TruncSimplicialSet,
    t: &TruncSimplicialSet,
    cs: &ChainComplex,
    ct: &ChainComplex,
    hs: &HomologyReport,
    ht: &HomologyReport,
) -> MapIsoReport {
    let (ls, lt) = (components(s), components(t));
    let (ns, nt) = (pi0(s), pi0(t));
    let mut image = vec![None; ns];
    let mut well_defined = true;
    for v in 0..s.count(0) {
        let w = lt[f.apply(0, v as u32) as usize];
        match image[ls[v]] {
            None => image[ls[v]] = Some(w),
            Some(prev) => well_defined &= prev == w,
        }
    }
    let mut hit = vec![false; nt];
    let mut injective = true;
    for w in image.iter().flatten() {
        injective &= !std::mem::replace(&mut hit[*w], true);
    }
    let h0 = well_defined && ns == nt && injective && hit.iter().all(|&b| b);

    let h1 = if hs.cap < 2 {
        false
    } else {
        let (zs, _) = kernel_basis(cs.boundary(1));
        let (_, zt_coords) = kernel_basis(ct.boundary(1));
        let f1 = ChainComplex::chain_map(f, cs, ct, 1);
        let image = f1.mul(&zs);
        let b1 = ct.boundary(2);
        // Generators of f(Z_1 S) + B_1(T), in Z_1(T) coordinates.
        let mut gens = IntMatrix::zeros(ct.basis(1).len(), image.cols() + b1.cols());
        for i in 0..gens.rows() {
            for j in 0..image.cols() {
                gens.set(i, j, image.get(i, j).clone());
            }
            for j in 0..b1.cols() {
                gens.set(i, image.cols() + j, b1.get(i, j).clone());
            }
        }
        let coords = zt_coords.mul(&gens);
        let snf = smith_normal_form(&coords);
        let surjective = snf.rank == coords.rows() && snf.factors.iter().all(One::is_one);
        surjective && hs.groups[1] == ht.groups[1]
    };
    MapIsoReport { h0, h1 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn smith_examples() {
        let z = smith_normal_form(&IntMatrix::from_rows(&[vec![0]]));
        assert_eq!((z.rank, z.factors.len()), (0, 0));
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)).factors, big(&[1, 1, 1]));
        // Oracle: d1 = gcd of entries = 2, d1 d2 = |det| = 8.
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(smith_normal_form(&m).factors, big(&[2, 4]));
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_normal_form(&m).factors, big(&[1, 6]));
    }

    #[test]
    fn kernel_basis_spans_kernel() {
        let m = IntMatrix::from_rows(&[vec![1, 1, 0], vec![0, 2, 2]]);
        let (k, coords) = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
        assert_eq!(coords.mul(&k), IntMatrix::identity(1));
    }

    #[test]
    fn simplices_and_points() {
        let pt = TruncSimplicialSet::point(4);
        let h = homology(&pt).unwrap();
        assert!(h.is_point());
        assert_eq!(h.groups.len(), 3 + 1);
        let d1 = TruncSimplicialSet::standard_simplex(1, 3);
        let cc = ChainComplex::from_simplicial(&d1).unwrap();
        assert_eq!(&cc.ranks()[..2], &[2, 1]);
        let b = cc.boundary(1);
        let col: Vec<_> = (0..2).map(|i| b.get(i, 0).clone()).collect();
        assert_eq!(col, big(&[-1, 1]));
        assert!(homology(&d1).unwrap().is_point());
        assert!(homology(&TruncSimplicialSet::standard_simplex(2, 4)).unwrap().is_point());
        assert_eq!(pi0(&d1), 1);
        let two = TruncSimplicialSet::coproduct(&TruncSimplicialSet::point(3), &d1).unwrap();
        assert_eq!(pi0(&two), 2);
        assert_eq!(homology(&two).unwrap().groups[0], HomologyGroup::free(2));
    }

    #[test]
    fn square_is_contractible() {
        let d1 = TruncSimplicialSet::standard_simplex(1, 4);
        let sq = TruncSimplicialSet::product(&d1, &d1).unwrap();
        assert!(homology(&sq).unwrap().is_point());
    }

    #[test]
    fn identity_map_is_iso() {
        let d2 = TruncSimplicialSet::standard_simplex(2, 3);
        let id = SimplicialMap::identity(&d2);
        let r = homology_compare(&d2, &d2, Some(&id)).unwrap();
        assert!(r.agree());
        assert_eq!(r.map, Some(MapIsoReport { h0: true, h1: true }));
        assert!(matches!(r.left.degree(3), Err(InvariantError::OutOfRange { .. })));
    }
}
