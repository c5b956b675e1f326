//! Nerves: the nerve of a category, the simplicial category and double nerve of a
//! 2-category, the geometric nerve of normal lax simplices, induced maps, and the
//! cylinder lax functor of an (op)lax transformation.

use std::collections::HashMap;

use thiserror::Error;

use crate::report::{ValidationReport, ViolationKind};
use crate::simplicial::{
    BisimplicialOps, Key, SimplicialError, SimplicialMap, TruncBisimplicialSet, TruncSimplicialSet,
};
use crate::twocat::{
    product_cells, ArrowId, BuildError, Category, DefId, LaxTransformation, MorId, NormalLaxFunctor, ObjId,
    ProductCells, TransformationKind, TwoCategory, TwoFunctor,
};

#[derive(Debug, Error)]
pub enum NerveError {
    #[error("enumeration budget of {0} candidate cells exceeded")]
    EnumerationBudgetExceeded(u64),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("image of {0} is not a simplex of the target")]
    TargetSimplexMissing(String),
    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),
    #[error("level category is not closed under composition: {0}")]
    NotClosed(String),
}

/// A running count of candidate cells examined during an enumeration.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }
    pub fn used(&self) -> u64 {
        self.used
    }
    pub fn charge(&mut self, n: usize) -> Result<(), NerveError> {
        self.used += n as u64;
        if self.used > self.limit {
            Err(NerveError::EnumerationBudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Nerve of a category.
//
// A q-simplex is `[x]` for q = 0 and otherwise a string a_1, …, a_q with
// a_k: c_k → c_{k−1}.

fn nerve_vertex(c: &Category, n: usize, k: &Key, i: usize) -> ObjId {
    if n == 0 {
        ObjId(k[0])
    } else if i < n {
        c.tgt(ArrowId(k[i]))
    } else {
        c.src(ArrowId(k[n - 1]))
    }
}

fn nerve_face(c: &Category, n: usize, i: usize, k: &Key) -> Key {
    if n == 1 {
        return vec![nerve_vertex(c, 1, k, 1 - i).0];
    }
    if i == 0 {
        k[1..].to_vec()
    } else if i == n {
        k[..n - 1].to_vec()
    } else {
        let mut v = k[..i - 1].to_vec();
        v.push(c.compose(ArrowId(k[i - 1]), ArrowId(k[i])).0);
        v.extend_from_slice(&k[i + 1..]);
        v
    }
}

fn nerve_degen(c: &Category, n: usize, i: usize, k: &Key) -> Key {
    let id = c.id(nerve_vertex(c, n, k, i)).0;
    if n == 0 {
        return vec![id];
    }
    let mut v = k.clone();
    v.insert(i, id);
    v
}

fn nerve_keys(c: &Category, cap: usize) -> Vec<Vec<Key>> {
    let mut keys: Vec<Vec<Key>> = vec![c.objects().map(|x| vec![x.0]).collect()];
    if cap >= 1 {
        keys.push(c.arrows().map(|f| vec![f.0]).collect());
    }
    for n in 2..=cap {
        let mut next = Vec::new();
        for k in &keys[n - 1] {
            let last = ArrowId(*k.last().expect("nonempty string"));
            for g in c.arrows().filter(|&g| c.tgt(g) == c.src(last)) {
                let mut v = k.clone();
                v.push(g.0);
                next.push(v);
            }
        }
        keys.push(next);
    }
    keys
}

/// `N C` truncated at `cap`.
pub fn nerve_category(c: &Category, cap: usize) -> TruncSimplicialSet {
    TruncSimplicialSet::from_fn(
        cap,
        nerve_keys(c, cap),
        |n, i, k| nerve_face(c, n, i, k),
        |n, i, k| nerve_degen(c, n, i, k),
    )
    .expect("nerve of a valid category is closed")
}

// ---------------------------------------------------------------------------
// Simplicial categories.

/// A functor between finite categories, as two cell maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatFunctor {
    pub obj: Vec<ObjId>,
    pub arrow: Vec<ArrowId>,
}

impl CatFunctor {
    pub fn validate(&self, src: &Category, tgt: &Category) -> ValidationReport {
        use ViolationKind::FunctorViolation as V;
        let mut r = ValidationReport::new();
        for f in src.arrows() {
            let g = self.arrow[f.ix()];
            r.require(
                tgt.src(g) == self.obj[src.src(f).ix()] && tgt.tgt(g) == self.obj[src.tgt(f).ix()],
                ViolationKind::BoundaryMismatch,
                || format!("arrow {}", src.arrow_name(f)),
            );
        }
        if !r.is_ok() {
            return r;
        }
        for x in src.objects() {
            r.require(self.arrow[src.id(x).ix()] == tgt.id(self.obj[x.ix()]), V, || {
                format!("identity of {}", src.obj_name(x))
            });
        }
        for f in src.arrows() {
            for g in src.arrows().filter(|&g| src.tgt(g) == src.src(f)) {
                let lhs = self.arrow[src.compose(f, g).ix()];
                let rhs = tgt.compose(self.arrow[f.ix()], self.arrow[g.ix()]);
                r.require(lhs == rhs, V, || format!("{} o {}", src.arrow_name(f), src.arrow_name(g)));
            }
        }
        r
    }
}

/// A finite category whose objects and arrows carry structural keys.
#[derive(Debug, Clone)]
pub struct LevelCategory {
    pub cat: Category,
    pub obj_keys: Vec<Key>,
    pub arrow_keys: Vec<Key>,
    obj_ix: HashMap<Key, ObjId>,
    arrow_ix: HashMap<Key, ArrowId>,
}

/// Which kind of cell of a level category a key denotes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Obj,
    Arrow,
}

impl LevelCategory {
    /// `arrows` lists `(key, name, source key, target key)`; `compose(f, g)` is `f∘g`.
    pub fn build(
        objs: Vec<(Key, String)>,
        arrows: Vec<(Key, String, Key, Key)>,
        id: impl Fn(&Key) -> Key,
        compose: impl Fn(&Key, &Key) -> Key,
    ) -> Result<LevelCategory, NerveError> {
        let obj_ix: HashMap<Key, ObjId> =
            objs.iter().enumerate().map(|(i, (k, _))| (k.clone(), ObjId(i as u32))).collect();
        let arrow_ix: HashMap<Key, ArrowId> =
            arrows.iter().enumerate().map(|(i, (k, ..))| (k.clone(), ArrowId(i as u32))).collect();
        let find_obj = |k: &Key| obj_ix.get(k).copied().ok_or_else(|| NerveError::NotClosed(format!("object {k:?}")));
        let find_arrow =
            |k: &Key| arrow_ix.get(k).copied().ok_or_else(|| NerveError::NotClosed(format!("arrow {k:?}")));
        let mut raw = Vec::with_capacity(arrows.len());
        for (_, name, s, t) in &arrows {
            raw.push((name.clone(), find_obj(s)?, find_obj(t)?));
        }
        let ids = objs.iter().map(|(k, _)| find_arrow(&id(k))).collect::<Result<Vec<_>, _>>()?;
        let mut into: HashMap<ObjId, Vec<usize>> = HashMap::new();
        for (i, a) in raw.iter().enumerate() {
            into.entry(a.2).or_default().push(i);
        }
        let mut comp = HashMap::new();
        for (fi, f) in raw.iter().enumerate() {
            for &gi in into.get(&f.1).into_iter().flatten() {
                let h = find_arrow(&compose(&arrows[fi].0, &arrows[gi].0))?;
                comp.insert((ArrowId(fi as u32), ArrowId(gi as u32)), h);
            }
        }
        let cat = Category::from_raw(objs.iter().map(|(_, n)| n.clone()).collect(), raw, ids, comp);
        Ok(LevelCategory {
            cat,
            obj_keys: objs.into_iter().map(|(k, _)| k).collect(),
            arrow_keys: arrows.into_iter().map(|(k, ..)| k).collect(),
            obj_ix,
            arrow_ix,
        })
    }

    pub fn find_obj(&self, k: &Key) -> Option<ObjId> {
        self.obj_ix.get(k).copied()
    }
    pub fn find_arrow(&self, k: &Key) -> Option<ArrowId> {
        self.arrow_ix.get(k).copied()
    }
}

/// A simplicial object in finite categories, truncated at `cap`.
#[derive(Debug, Clone)]
pub struct SimplicialCategory {
    cap: usize,
    levels: Vec<LevelCategory>,
    faces: Vec<Vec<CatFunctor>>,
    degens: Vec<Vec<CatFunctor>>,
}

impl SimplicialCategory {
    /// Tabulates face and degeneracy functors given on keys.
    pub fn from_fn(
        cap: usize,
        levels: Vec<LevelCategory>,
        face: impl Fn(usize, usize, Part, &Key) -> Key,
        degen: impl Fn(usize, usize, Part, &Key) -> Key,
    ) -> Result<SimplicialCategory, NerveError> {
        assert_eq!(levels.len(), cap + 1);
        let tabulate = |from: usize, to: usize, op: &dyn Fn(Part, &Key) -> Key| -> Result<CatFunctor, NerveError> {
            let (s, t) = (&levels[from], &levels[to]);
            let obj = s
                .obj_keys
                .iter()
                .map(|k| {
                    let img = op(Part::Obj, k);
                    t.find_obj(&img).ok_or_else(|| NerveError::NotClosed(format!("object {img:?} at level {to}")))
                })
                .collect::<Result<_, _>>()?;
            let arrow = s
                .arrow_keys
                .iter()
                .map(|k| {
                    let img = op(Part::Arrow, k);
                    t.find_arrow(&img).ok_or_else(|| NerveError::NotClosed(format!("arrow {img:?} at level {to}")))
                })
                .collect::<Result<_, _>>()?;
            Ok(CatFunctor { obj, arrow })
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=cap {
            faces.push(
                (0..=n)
                    .map(|i| tabulate(n, n - 1, &|p, k| face(n, i, p, k)))
                    .collect::<Result<_, _>>()?,
            );
        }
        let mut degens = Vec::new();
        for n in 0..cap {
            degens.push(
                (0..=n)
                    .map(|i| tabulate(n, n + 1, &|p, k| degen(n, i, p, k)))
                    .collect::<Result<_, _>>()?,
            );
        }
        Ok(SimplicialCategory {
            cap,
            levels,
            faces,
            degens,
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
    pub fn level(&self, n: usize) -> &LevelCategory {
        &self.levels[n]
    }
    pub fn face(&self, n: usize, i: usize) -> &CatFunctor {
        &self.faces[n][i]
    }
    pub fn degen(&self, n: usize, i: usize) -> &CatFunctor {
        &self.degens[n][i]
    }

    /// Functoriality of every operator and the simplicial identities on objects and arrows.
    pub fn audit(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        for n in 1..=self.cap {
            for (i, f) in self.faces[n].iter().enumerate() {
                r.extend(f.validate(&self.levels[n].cat, &self.levels[n - 1].cat), &format!("d{i} at level {n}"));
            }
        }
        for n in 0..self.cap {
            for (i, f) in self.degens[n].iter().enumerate() {
                r.extend(f.validate(&self.levels[n].cat, &self.levels[n + 1].cat), &format!("s{i} at level {n}"));
            }
        }
        if r.is_ok() {
            let nn = self.nerve();
            r.extend(nn.horizontal_row(0).audit(), "objects");
            if self.cap >= 1 {
                r.extend(nn.horizontal_row(1).audit(), "arrows");
            }
        }
        r
    }

    /// The bisimplicial set `(p, q) ↦ N_q(level p)`.
    pub fn nerve(&self) -> TruncBisimplicialSet {
        let cap = self.cap;
        let keys = self.levels.iter().map(|l| nerve_keys(&l.cat, cap)).collect();
        let map_key = |f: &CatFunctor, q: usize, k: &Key| -> Key {
            if q == 0 {
                vec![f.obj[k[0] as usize].0]
            } else {
                k.iter().map(|&a| f.arrow[a as usize].0).collect()
            }
        };
        TruncBisimplicialSet::from_fn(
            cap,
            keys,
            BisimplicialOps {
                hface: |p: usize, q: usize, i: usize, k: &Key| map_key(&self.faces[p][i], q, k),
                hdegen: |p: usize, q: usize, i: usize, k: &Key| map_key(&self.degens[p][i], q, k),
                vface: |p: usize, q: usize, j: usize, k: &Key| nerve_face(&self.levels[p].cat, q, j, k),
                vdegen: |p: usize, q: usize, j: usize, k: &Key| nerve_degen(&self.levels[p].cat, q, j, k),
            },
        )
        .expect("levelwise nerve is closed")
    }
}

// ---------------------------------------------------------------------------
// Simplicial category and double nerve of a 2-category.

/// Composable strings `u_1, …, u_p` with `u_k: x_k → x_{k−1}`.
pub(crate) fn one_cell_strings(c: &TwoCategory, p: usize) -> Vec<Vec<MorId>> {
    let mut out: Vec<Vec<MorId>> = c.mors().map(|u| vec![u]).collect();
    for _ in 1..p {
        out = out
            .into_iter()
            .flat_map(|s| {
                let x = c.src(*s.last().expect("nonempty"));
                c.mors()
                    .filter(move |&v| c.tgt(v) == x)
                    .map(move |v| {
                        let mut t = s.clone();
                        t.push(v);
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn string_vertex(c: &TwoCategory, s: &[u32], i: usize) -> ObjId {
    let n = s.len();
    if i < n {
        c.tgt(MorId(s[i]))
    } else {
        c.src(MorId(s[n - 1]))
    }
}

fn join_names<'a>(names: impl Iterator<Item = &'a str>) -> String {
    names.collect::<Vec<_>>().join(",")
}

/// The nerve of a 2-category as a simplicial category: level `p` is the coproduct
/// over object strings of products of hom-categories.
pub fn nerve_two_category(c: &TwoCategory, cap: usize) -> Result<SimplicialCategory, NerveError> {
    let mut levels = Vec::with_capacity(cap + 1);
    for p in 0..=cap {
        let level = if p == 0 {
            LevelCategory::build(
                c.objects().map(|x| (vec![x.0], c.obj_name(x).to_string())).collect(),
                c.objects()
                    .map(|x| (vec![x.0], c.mor_name(c.id_mor(x)).to_string(), vec![x.0], vec![x.0]))
                    .collect(),
                |k| k.clone(),
                |f, _| f.clone(),
            )?
        } else {
            let strings = one_cell_strings(c, p);
            let objs = strings
                .iter()
                .map(|s| (s.iter().map(|u| u.0).collect(), join_names(s.iter().map(|&u| c.mor_name(u)))))
                .collect();
            let mut arrows = Vec::new();
            for s in &strings {
                let mut chains: Vec<Vec<DefId>> = vec![Vec::new()];
                for &u in s {
                    chains = chains
                        .into_iter()
                        .flat_map(|ch| {
                            c.defs().filter(move |&a| c.def_src(a) == u).map(move |a| {
                                let mut t = ch.clone();
                                t.push(a);
                                t
                            })
                        })
                        .collect();
                }
                for ch in chains {
                    arrows.push((
                        ch.iter().map(|a| a.0).collect(),
                        join_names(ch.iter().map(|&a| c.def_name(a))),
                        s.iter().map(|u| u.0).collect(),
                        ch.iter().map(|&a| c.def_tgt(a).0).collect(),
                    ));
                }
            }
            LevelCategory::build(
                objs,
                arrows,
                |k| k.iter().map(|&u| c.id_def(MorId(u)).0).collect(),
                |f, g| f.iter().zip(g).map(|(&b, &a)| c.vcompose(DefId(b), DefId(a)).0).collect(),
            )?
        };
        levels.push(level);
    }
    let def_string_src = |k: &Key| -> Key { k.iter().map(|&a| c.def_src(DefId(a)).0).collect() };
    SimplicialCategory::from_fn(
        cap,
        levels,
        |n, i, part, k| {
            let s = match part {
                Part::Obj => k.clone(),
                Part::Arrow => def_string_src(k),
            };
            if n == 1 {
                return vec![string_vertex(c, &s, 1 - i).0];
            }
            if i == 0 {
                return k[1..].to_vec();
            }
            if i == n {
                return k[..n - 1].to_vec();
            }
            let mut v = k[..i - 1].to_vec();
            v.push(match part {
                Part::Obj => c.compose(MorId(k[i - 1]), MorId(k[i])).0,
                Part::Arrow => c.hcompose(DefId(k[i - 1]), DefId(k[i])).0,
            });
            v.extend_from_slice(&k[i + 1..]);
            v
        },
        |n, i, part, k| {
            let x = if n == 0 {
                ObjId(k[0])
            } else {
                match part {
                    Part::Obj => string_vertex(c, k, i),
                    Part::Arrow => string_vertex(c, &def_string_src(k), i),
                }
            };
            let ins = match part {
                Part::Obj => c.id_mor(x).0,
                Part::Arrow => c.id_def(c.id_mor(x)).0,
            };
            if n == 0 {
                return vec![ins];
            }
            let mut v = k.clone();
            v.insert(i, ins);
            v
        },
    )
}

/// `NN C`: horizontal index is the 1-cell string length, vertical the 2-cell string length.
pub fn double_nerve(c: &TwoCategory, cap: usize) -> Result<TruncBisimplicialSet, NerveError> {
    Ok(nerve_two_category(c, cap)?.nerve())
}

// ---------------------------------------------------------------------------
// Normal lax simplices and the geometric nerve.

/// A normal lax functor `[n] ⇝ C`: objects `x_i`, 1-cells `x_{i,j}: x_j → x_i` and
/// 2-cells `x_{i,j,k}: x_{i,j}∘x_{j,k} ⇒ x_{i,k}` for `i ≤ j ≤ k`, identities on
/// repeated indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaxSimplex {
    dim: usize,
    objs: Vec<ObjId>,
    mors: Vec<MorId>,
    defs: Vec<DefId>,
}

const UNSET_MOR: MorId = MorId(u32::MAX);
const UNSET_DEF: DefId = DefId(u32::MAX);

impl LaxSimplex {
    fn blank(dim: usize) -> Self {
        let w = dim + 1;
        LaxSimplex {
            dim,
            objs: vec![ObjId(u32::MAX); w],
            mors: vec![UNSET_MOR; w * w],
            defs: vec![UNSET_DEF; w * w * w],
        }
    }
    fn mi(&self, i: usize, j: usize) -> usize {
        i * (self.dim + 1) + j
    }
    fn di(&self, i: usize, j: usize, k: usize) -> usize {
        (i * (self.dim + 1) + j) * (self.dim + 1) + k
    }
    fn set_mor(&mut self, i: usize, j: usize, u: MorId) {
        let ix = self.mi(i, j);
        self.mors[ix] = u;
    }
    fn set_def(&mut self, i: usize, j: usize, k: usize, a: DefId) {
        let ix = self.di(i, j, k);
        self.defs[ix] = a;
    }

    /// Fills the entries forced by normalization.
    fn normalize(&mut self, c: &TwoCategory) {
        let w = self.dim + 1;
        for i in 0..w {
            self.set_mor(i, i, c.id_mor(self.objs[i]));
        }
        for i in 0..w {
            for k in i..w {
                let u = self.mor(i, k);
                self.set_def(i, i, k, c.id_def(u));
                self.set_def(i, k, k, c.id_def(u));
            }
        }
    }

    pub fn point(c: &TwoCategory, x: ObjId) -> LaxSimplex {
        let mut s = Self::blank(0);
        s.objs[0] = x;
        s.normalize(c);
        s
    }

    /// Builds a simplex from its nondegenerate data (`i < j`, `i < j < k`).
    pub fn from_parts(
        c: &TwoCategory,
        objs: Vec<ObjId>,
        mor: impl Fn(usize, usize) -> MorId,
        def: impl Fn(usize, usize, usize) -> DefId,
    ) -> LaxSimplex {
        let mut s = Self::blank(objs.len() - 1);
        s.objs = objs;
        let w = s.dim + 1;
        for i in 0..w {
            for j in i + 1..w {
                s.set_mor(i, j, mor(i, j));
                for k in j + 1..w {
                    s.set_def(i, j, k, def(i, j, k));
                }
            }
        }
        s.normalize(c);
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn obj(&self, i: usize) -> ObjId {
        self.objs[i]
    }
    pub fn mor(&self, i: usize, j: usize) -> MorId {
        self.mors[self.mi(i, j)]
    }
    pub fn def(&self, i: usize, j: usize, k: usize) -> DefId {
        self.defs[self.di(i, j, k)]
    }

    /// Objects, then 1-cells for `i < j`, then 2-cells for `i < j < k`, each in lex order.
    pub fn key(&self) -> Key {
        let w = self.dim + 1;
        let mut k: Key = self.objs.iter().map(|x| x.0).collect();
        for i in 0..w {
            for j in i + 1..w {
                k.push(self.mor(i, j).0);
            }
        }
        for i in 0..w {
            for j in i + 1..w {
                for l in j + 1..w {
                    k.push(self.def(i, j, l).0);
                }
            }
        }
        k
    }

    pub fn from_key(c: &TwoCategory, n: usize, key: &[u32]) -> LaxSimplex {
        let w = n + 1;
        let mut s = Self::blank(n);
        let mut it = key.iter().copied();
        for i in 0..w {
            s.objs[i] = ObjId(it.next().expect("key too short"));
        }
        for i in 0..w {
            for j in i + 1..w {
                s.set_mor(i, j, MorId(it.next().expect("key too short")));
            }
        }
        for i in 0..w {
            for j in i + 1..w {
                for k in j + 1..w {
                    s.set_def(i, j, k, DefId(it.next().expect("key too short")));
                }
            }
        }
        s.normalize(c);
        s
    }

    /// `x∘φ` for a monotone `φ: [m] → [n]` given by its values.
    pub fn precompose(&self, c: &TwoCategory, phi: &[usize]) -> LaxSimplex {
        debug_assert!(phi.windows(2).all(|w| w[0] <= w[1]));
        Self::from_parts(
            c,
            phi.iter().map(|&i| self.obj(i)).collect(),
            |i, j| self.mor(phi[i], phi[j]),
            |i, j, k| self.def(phi[i], phi[j], phi[k]),
        )
    }

    pub fn face(&self, c: &TwoCategory, i: usize) -> LaxSimplex {
        let phi: Vec<usize> = (0..=self.dim).filter(|&j| j != i).collect();
        self.precompose(c, &phi)
    }

    pub fn degen(&self, c: &TwoCategory, i: usize) -> LaxSimplex {
        let phi: Vec<usize> = (0..=self.dim + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
        self.precompose(c, &phi)
    }

    /// The same data read as a simplex of `C^op` (vertices reversed, 2-cells kept).
    pub fn reversed(&self) -> LaxSimplex {
        let n = self.dim;
        let mut s = Self::blank(n);
        for i in 0..=n {
            s.objs[i] = self.objs[n - i];
            for j in i..=n {
                s.set_mor(i, j, self.mor(n - j, n - i));
                for k in j..=n {
                    s.set_def(i, j, k, self.def(n - k, n - j, n - i));
                }
            }
        }
        s
    }

    fn tetrahedron(&self, c: &TwoCategory, i: usize, j: usize, k: usize, l: usize) -> bool {
        let lhs = c.vcompose(self.def(i, j, l), c.whisker_left(self.mor(i, j), self.def(j, k, l)));
        let rhs = c.vcompose(self.def(i, k, l), c.whisker_right(self.def(i, j, k), self.mor(k, l)));
        lhs == rhs
    }

    /// Boundaries, normalization and the tetrahedron (cocycle) condition.
    pub fn validate(&self, c: &TwoCategory) -> ValidationReport {
        use ViolationKind::*;
        let mut r = ValidationReport::new();
        let w = self.dim + 1;
        for i in 0..w {
            r.require(self.mor(i, i) == c.id_mor(self.obj(i)), NormalizationViolation, || format!("x_{i}{i}"));
            for j in i + 1..w {
                let u = self.mor(i, j);
                r.require(c.src(u) == self.obj(j) && c.tgt(u) == self.obj(i), BoundaryMismatch, || {
                    format!("x_{i}{j}")
                });
            }
        }
        if !r.is_ok() {
            return r;
        }
        for i in 0..w {
            for j in i..w {
                for k in j..w {
                    let a = self.def(i, j, k);
                    let src = c.compose(self.mor(i, j), self.mor(j, k));
                    r.require(c.def_src(a) == src && c.def_tgt(a) == self.mor(i, k), BoundaryMismatch, || {
                        format!("x_{i}{j}{k}")
                    });
                    if i == j || j == k {
                        r.require(c.is_identity_def(a), NormalizationViolation, || format!("x_{i}{j}{k}"));
                    }
                }
            }
        }
        if !r.is_ok() {
            return r;
        }
        for i in 0..w {
            for j in i + 1..w {
                for k in j + 1..w {
                    for l in k + 1..w {
                        r.require(self.tetrahedron(c, i, j, k, l), CocycleViolation, || {
                            format!("tetrahedron ({i},{j},{k},{l})")
                        });
                    }
                }
            }
        }
        r
    }

    /// `F∘x` for a normal lax functor `F: C ⇝ D`.
    pub fn compose_with(&self, f: &NormalLaxFunctor, d: &TwoCategory) -> LaxSimplex {
        let mut s = Self::blank(self.dim);
        let w = self.dim + 1;
        for i in 0..w {
            s.objs[i] = f.on_obj(self.obj(i));
            for j in i..w {
                s.set_mor(i, j, f.on_mor(self.mor(i, j)));
                for k in j..w {
                    let (u, v) = (self.mor(i, j), self.mor(j, k));
                    s.set_def(i, j, k, d.vcompose(f.on_def(self.def(i, j, k)), f.constraint(u, v)));
                }
            }
        }
        s
    }

    /// The simplex as a normal lax functor from the ordinal `[n]`, regarded as a 2-category.
    pub fn to_lax_functor(&self, c: &TwoCategory) -> (TwoCategory, NormalLaxFunctor) {
        let ord = Category::ordinal(self.dim).to_two_category().expect("ordinal is well formed");
        let index = |x: ObjId| ord.obj_name(x).parse::<usize>().expect("ordinal object names are numerals");
        let obj = ord.objects().map(|x| self.obj(index(x))).collect();
        let mor = ord.mors().map(|u| self.mor(index(ord.tgt(u)), index(ord.src(u)))).collect();
        let def = ord.defs().map(|a| c.id_def(self.mor(index(ord.tgt(ord.def_src(a))), index(ord.src(ord.def_src(a)))))).collect();
        let mut constraint = HashMap::new();
        for v in ord.mors() {
            for u in ord.mors().filter(|&u| ord.src(u) == ord.tgt(v)) {
                let (i, j, k) = (index(ord.tgt(u)), index(ord.src(u)), index(ord.src(v)));
                constraint.insert((u, v), self.def(i, j, k));
            }
        }
        let f = NormalLaxFunctor {
            obj,
            mor,
            def,
            constraint,
        };
        (ord, f)
    }
}

/// All `(n+1)`-simplices whose restriction to `0..n` is `x`, with new last vertex among `objs`.
///
/// Slots are filled as `x_{i,n+1}` for `i` descending, each followed by `x_{i,k,n+1}` for
/// `k` ascending; every tetrahedron is checked as soon as its last cell is chosen.
pub fn extend_back(
    c: &TwoCategory,
    x: &LaxSimplex,
    objs: &[ObjId],
    budget: &mut Budget,
    out: &mut Vec<LaxSimplex>,
) -> Result<(), NerveError> {
    let n = x.dim + 1;
    let mut y = LaxSimplex::blank(n);
    for i in 0..n {
        y.objs[i] = x.obj(i);
        for j in i..n {
            y.set_mor(i, j, x.mor(i, j));
            for k in j..n {
                y.set_def(i, j, k, x.def(i, j, k));
            }
        }
    }
    let mut slots = Vec::new();
    for i in (0..n).rev() {
        slots.push((i, None));
        for k in i + 1..n {
            slots.push((i, Some(k)));
        }
    }
    budget.charge(objs.len())?;
    for &z in objs {
        y.objs[n] = z;
        fill_slots(c, &mut y, &slots, 0, budget, out)?;
    }
    Ok(())
}

fn fill_slots(
    c: &TwoCategory,
    y: &mut LaxSimplex,
    slots: &[(usize, Option<usize>)],
    s: usize,
    budget: &mut Budget,
    out: &mut Vec<LaxSimplex>,
) -> Result<(), NerveError> {
    let n = y.dim;
    let Some(&(i, k)) = slots.get(s) else {
        let mut done = y.clone();
        done.normalize(c);
        out.push(done);
        return Ok(());
    };
    match k {
        None => {
            let cands = c.hom(y.objs[n], y.objs[i]).to_vec();
            budget.charge(cands.len())?;
            for u in cands {
                y.set_mor(i, n, u);
                fill_slots(c, y, slots, s + 1, budget, out)?;
            }
        }
        Some(k) => {
            let src = c.compose(y.mor(i, k), y.mor(k, n));
            let cands = c.hom2(src, y.mor(i, n)).to_vec();
            budget.charge(cands.len())?;
            for a in cands {
                y.set_def(i, k, n, a);
                if (i + 1..k).all(|j| y.tetrahedron(c, i, j, k, n)) {
                    fill_slots(c, y, slots, s + 1, budget, out)?;
                }
            }
        }
    }
    Ok(())
}

/// All `(n+1)`-simplices whose restriction to `1..=n+1` is `x`, with new first vertex
/// among `objs`; `c_op` must be `c.opposite()`.
pub fn extend_front(
    c: &TwoCategory,
    c_op: &TwoCategory,
    x: &LaxSimplex,
    objs: &[ObjId],
    budget: &mut Budget,
    out: &mut Vec<LaxSimplex>,
) -> Result<(), NerveError> {
    let mut tmp = Vec::new();
    extend_back(c_op, &x.reversed(), objs, budget, &mut tmp)?;
    out.extend(tmp.iter().map(|s| {
        let mut r = s.reversed();
        r.normalize(c);
        r
    }));
    Ok(())
}

/// All simplices `[n] ⇝ C` for `n ≤ cap`, each dimension sorted by key.
pub fn lax_simplices(c: &TwoCategory, cap: usize, budget: &mut Budget) -> Result<Vec<Vec<LaxSimplex>>, NerveError> {
    let all: Vec<ObjId> = c.objects().collect();
    let mut dims = vec![all.iter().map(|&x| LaxSimplex::point(c, x)).collect::<Vec<_>>()];
    budget.charge(all.len())?;
    for n in 1..=cap {
        let mut next = Vec::new();
        for x in &dims[n - 1] {
            extend_back(c, x, &all, budget, &mut next)?;
        }
        next.sort_by_cached_key(LaxSimplex::key);
        dims.push(next);
    }
    Ok(dims)
}

/// `ΔC`: simplices are normal lax functors `[n] ⇝ C`, operators by precomposition.
pub fn geometric_nerve(c: &TwoCategory, cap: usize, budget: u64) -> Result<TruncSimplicialSet, NerveError> {
    let dims = lax_simplices(c, cap, &mut Budget::new(budget))?;
    let keys = dims.iter().map(|d| d.iter().map(LaxSimplex::key).collect()).collect();
    Ok(TruncSimplicialSet::from_fn(
        cap,
        keys,
        |n, i, k| LaxSimplex::from_key(c, n, k).face(c, i).key(),
        |n, i, k| LaxSimplex::from_key(c, n, k).degen(c, i).key(),
    )?)
}

/// The simplex of `ΔC` with index `s` in dimension `n`.
pub fn geometric_simplex(c: &TwoCategory, nerve: &TruncSimplicialSet, n: usize, s: u32) -> LaxSimplex {
    LaxSimplex::from_key(c, n, nerve.key(n, s))
}

fn not_closed_to_missing(e: SimplicialError) -> NerveError {
    match e {
        SimplicialError::NotClosed { dim, key, .. } => NerveError::TargetSimplexMissing(format!("{dim}-simplex {key:?}")),
        other => NerveError::Simplicial(other),
    }
}

/// `ΔF: ΔC → ΔD`, `x ↦ F∘x`.
pub fn geometric_nerve_map(
    f: &NormalLaxFunctor,
    src: &TwoCategory,
    tgt: &TwoCategory,
    src_nerve: &TruncSimplicialSet,
    tgt_nerve: &TruncSimplicialSet,
) -> Result<SimplicialMap, NerveError> {
    SimplicialMap::from_key_fn(src_nerve, tgt_nerve, |n, k| {
        LaxSimplex::from_key(src, n, k).compose_with(f, tgt).key()
    })
    .map_err(not_closed_to_missing)
}

/// For a 2-category with identity 2-cells only: the map `ΔC → N C` sending a simplex to
/// its spine `x_{0,1}, …, x_{n−1,n}` (the nerve of [`Category::underlying`]).
pub fn spine_map(c: &TwoCategory, delta: &TruncSimplicialSet, nerve: &TruncSimplicialSet) -> Result<SimplicialMap, NerveError> {
    SimplicialMap::from_key_fn(delta, nerve, |n, k| {
        let x = LaxSimplex::from_key(c, n, k);
        if n == 0 {
            vec![x.obj(0).0]
        } else {
            (0..n).map(|i| x.mor(i, i + 1).0).collect()
        }
    })
    .map_err(not_closed_to_missing)
}

// ---------------------------------------------------------------------------
// Cylinder of an (op)lax transformation.

/// `H: B × [1] ⇝ C` with `H(−, 1) = F` and `H(−, 0) = G`.
#[derive(Debug, Clone)]
pub struct Cylinder {
    pub interval: TwoCategory,
    pub product: ProductCells,
    pub functor: NormalLaxFunctor,
}

impl Cylinder {
    /// The inclusion `B → B × [1]` at the end `e` (`"0"` or `"1"`).
    pub fn inclusion(&self, b: &TwoCategory, end: &str) -> TwoFunctor {
        let e = self.interval.find_obj(end).expect("interval end");
        let ide = self.interval.id_mor(e);
        let p = &self.product;
        let find = |pred: &dyn Fn(usize) -> bool, len: usize| (0..len).find(|&i| pred(i)).expect("pair present") as u32;
        TwoFunctor {
            obj: b.objects().map(|x| ObjId(find(&|i| p.objs[i] == (x, e), p.objs.len()))).collect(),
            mor: b.mors().map(|u| MorId(find(&|i| p.mors[i] == (u, ide), p.mors.len()))).collect(),
            def: b
                .defs()
                .map(|a| DefId(find(&|i| p.defs[i] == (a, self.interval.id_def(ide)), p.defs.len())))
                .collect(),
        }
    }

    /// `H` restricted along [`Cylinder::inclusion`].
    pub fn end(&self, b: &TwoCategory, end: &str) -> NormalLaxFunctor {
        let inc = self.inclusion(b, end);
        let h = &self.functor;
        let mut constraint = HashMap::new();
        for v in b.mors() {
            for u in b.mors().filter(|&u| b.src(u) == b.tgt(v)) {
                constraint.insert((u, v), h.constraint(inc.on_mor(u), inc.on_mor(v)));
            }
        }
        NormalLaxFunctor {
            obj: inc.obj.iter().map(|&x| h.on_obj(x)).collect(),
            mor: inc.mor.iter().map(|&u| h.on_mor(u)).collect(),
            def: inc.def.iter().map(|&a| h.on_def(a)).collect(),
            constraint,
        }
    }
}

pub fn cylinder_lax_functor(
    t: &LaxTransformation,
    f: &NormalLaxFunctor,
    g: &NormalLaxFunctor,
    b: &TwoCategory,
    c: &TwoCategory,
) -> Result<Cylinder, NerveError> {
    let r = t.validate(b, c, f, g);
    if !r.is_ok() {
        return Err(NerveError::InvalidTransformation(r.to_string().trim_end().to_string()));
    }
    let interval = Category::ordinal(1).to_two_category()?;
    let one = interval.find_obj("1").expect("interval has 1");
    let cross = interval.find_mor("0<1").expect("interval has 0<1");
    let product = product_cells(b, &interval)?;
    let oplax = t.kind == TransformationKind::Oplax;
    let alpha = |x: ObjId| t.at_obj[x.ix()];
    let alpha_u = |u: MorId| t.at_mor[u.ix()];

    let obj = product.objs.iter().map(|&(x, e)| if e == one { f.on_obj(x) } else { g.on_obj(x) }).collect();
    let on_mor = |u: MorId, w: MorId| -> MorId {
        if w == cross {
            if oplax {
                c.compose(alpha(b.tgt(u)), f.on_mor(u))
            } else {
                c.compose(g.on_mor(u), alpha(b.src(u)))
            }
        } else if interval.src(w) == one {
            f.on_mor(u)
        } else {
            g.on_mor(u)
        }
    };
    let mor = product.mors.iter().map(|&(u, w)| on_mor(u, w)).collect();
    let def = product
        .defs
        .iter()
        .map(|&(a, w2)| {
            let w = interval.def_src(w2);
            let u = b.def_src(a);
            if w == cross {
                if oplax {
                    c.hcompose(c.id_def(alpha(b.tgt(u))), f.on_def(a))
                } else {
                    c.hcompose(g.on_def(a), c.id_def(alpha(b.src(u))))
                }
            } else if interval.src(w) == one {
                f.on_def(a)
            } else {
                g.on_def(a)
            }
        })
        .collect();
    let pc = &product.cat;
    let mut constraint = HashMap::new();
    for pv in pc.mors() {
        for pu in pc.mors().filter(|&pu| pc.src(pu) == pc.tgt(pv)) {
            let ((u, w1), (v, w2)) = (product.mors[pu.ix()], product.mors[pv.ix()]);
            let x = b.src(v);
            let z = b.tgt(u);
            let k = match (w1 == cross, w2 == cross) {
                (false, false) if interval.src(w1) == one => f.constraint(u, v),
                (false, false) => g.constraint(u, v),
                (true, false) => {
                    if oplax {
                        c.whisker_left(alpha(z), f.constraint(u, v))
                    } else {
                        c.vcompose(
                            c.whisker_right(g.constraint(u, v), alpha(x)),
                            c.whisker_left(g.on_mor(u), alpha_u(v)),
                        )
                    }
                }
                (false, true) => {
                    if oplax {
                        c.vcompose(
                            c.whisker_left(alpha(z), f.constraint(u, v)),
                            c.whisker_right(alpha_u(u), f.on_mor(v)),
                        )
                    } else {
                        c.whisker_right(g.constraint(u, v), alpha(x))
                    }
                }
                (true, true) => unreachable!("0<1 is not composable with itself"),
            };
            constraint.insert((pu, pv), k);
        }
    }
    Ok(Cylinder {
        interval,
        product,
        functor: NormalLaxFunctor {
            obj,
            mor,
            def,
            constraint,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{homology, HomologyGroup};
    use crate::twocat::{one_object_from_monoidal, StrictMonoidal};

    const BUDGET: u64 = crate::DEFAULT_BUDGET;

    #[test]
    fn nerves_of_small_categories() {
        let t = Category::ordinal(0);
        assert_eq!(nerve_category(&t, 4).counts(), vec![1; 5]);
        let i = Category::ordinal(1);
        let n = nerve_category(&i, 4);
        assert_eq!(n.count(2), 4);
        assert!(n.audit().is_ok());
        let z2 = Category::underlying(&TwoCategory::suspended_cyclic(2));
        let n = nerve_category(&z2, 4);
        assert_eq!(n.counts(), vec![1, 2, 4, 8, 16]);
        assert!(n.audit().is_ok());
    }

    #[test]
    fn walking_cell_counts() {
        let e = TwoCategory::walking_two_cell();
        let d = geometric_nerve(&e, 3, BUDGET).unwrap();
        assert_eq!(d.count(2), 8);
        assert!(d.audit().is_ok());
        let sc = nerve_two_category(&e, 3).unwrap();
        assert_eq!(sc.level(1).cat.num_arrows(), 5);
        assert!(sc.audit().is_ok());
        let nn = double_nerve(&e, 3).unwrap();
        assert_eq!(nn.count(1, 1), 5);
        assert!(nn.audit().is_ok());
    }

    #[test]
    fn discrete_geometric_nerve_is_the_nerve() {
        let c = Category::ordinal(2).to_two_category().unwrap();
        let d = geometric_nerve(&c, 4, BUDGET).unwrap();
        let n = nerve_category(&Category::underlying(&c), 4);
        let m = spine_map(&c, &d, &n).unwrap();
        assert!(m.validate(&d, &n).is_ok());
        assert!(m.is_bijective(&n));
    }

    #[test]
    fn suspension_of_z2() {
        let s = TwoCategory::suspended_cyclic(2);
        let d = geometric_nerve(&s, 4, BUDGET).unwrap();
        assert_eq!(d.counts(), vec![1, 2, 4, 8, 16]);
        let nn = double_nerve(&s, 4).unwrap();
        for p in 0..=4 {
            for q in 0..=4 {
                assert_eq!(nn.count(p, q), 1 << p);
            }
        }
        let h = homology(&d).unwrap();
        assert_eq!(
            h.groups,
            vec![HomologyGroup::free(1), HomologyGroup::cyclic(2), HomologyGroup::default(), HomologyGroup::cyclic(2)]
        );
        // Each simplex passes the lax-functor validator.
        for n in 0..=3 {
            for s_ix in 0..d.count(n) as u32 {
                let x = geometric_simplex(&s, &d, n, s_ix);
                let (ord, f) = x.to_lax_functor(&s);
                assert!(f.validate(&ord, &s).is_ok());
            }
        }
    }

    #[test]
    fn monoidal_geometric_nerve_is_three_coskeletal() {
        let m = one_object_from_monoidal(&StrictMonoidal::idempotent()).unwrap();
        let d = geometric_nerve(&m, 4, BUDGET).unwrap();
        assert_eq!(d.count(0), 1);
        let counts = d.boundary_filler_counts(4);
        assert!(!counts.is_empty());
        assert!(counts.iter().all(|&c| c == 1));
    }

    #[test]
    fn budget_is_enforced() {
        let e = TwoCategory::walking_two_cell();
        assert!(matches!(geometric_nerve(&e, 4, 10), Err(NerveError::EnumerationBudgetExceeded(10))));
    }

    #[test]
    fn identity_cylinder_and_ends() {
        let e = TwoCategory::walking_two_cell();
        let f = TwoFunctor::identity(&e).to_lax(&e, &e);
        let t = LaxTransformation::identity(&e, &e, &f);
        let h = cylinder_lax_functor(&t, &f, &f, &e, &e).unwrap();
        assert!(h.functor.validate(&h.product.cat, &e).is_ok());
        assert_eq!(h.end(&e, "1"), f);
        assert_eq!(h.end(&e, "0"), f);
    }

    #[test]
    fn cross_arrow_of_point_cylinder() {
        let t = TwoCategory::terminal();
        let e = TwoCategory::walking_two_cell();
        let (zero, one) = (e.find_obj("0").unwrap(), e.find_obj("1").unwrap());
        let f = TwoFunctor::constant(&t, &e, one).to_lax(&t, &e);
        let g = TwoFunctor::constant(&t, &e, zero).to_lax(&t, &e);
        let u = e.find_mor("u").unwrap();
        for kind in [TransformationKind::Lax, TransformationKind::Oplax] {
            let alpha = LaxTransformation {
                kind,
                at_obj: vec![u],
                at_mor: vec![e.id_def(u)],
            };
            let h = cylinder_lax_functor(&alpha, &f, &g, &t, &e).unwrap();
            assert!(h.functor.validate(&h.product.cat, &e).is_ok());
            let cross = (0..h.product.mors.len())
                .find(|&i| h.product.cat.mor_name(MorId(i as u32)).contains("0<1"))
                .unwrap();
            assert_eq!(h.functor.on_mor(MorId(cross as u32)), u);
        }
    }
}
