//! Homotopy-fibre and comma 2-categories of a strict 2-functor `F: B → C`, the
//! 2-categories `[q]//F` and `F//[q]`, and the 2-functors relating them.
//!
//! Everything is computed in an "over" working orientation. A fibre under `z` is the
//! opposite of the fibre over `z` for `F^op: B^op → C^op`; cell ids survive the
//! passage to opposites, so 2-functors between working fibres are 2-functors between
//! the real ones verbatim.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::invariants::{homology_compare, EquivalenceReport, InvariantError};
use crate::nerves::{extend_front, geometric_nerve, geometric_nerve_map, lax_simplices, Budget, LaxSimplex, NerveError};
use crate::report::{ValidationReport, ViolationKind};
use crate::simplicial::Key;
use crate::twocat::{
    materialize, BuildError, CellSystem, DefId, LaxTransformation, MorId, ObjId, TransformationKind, TwoCategory,
    TwoFunctor,
};

#[derive(Debug, Error)]
pub enum FibreError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("map {0:?} is not monotone")]
    NonMonotone(Vec<usize>),
    #[error("map {0:?} leaves [{1}]")]
    OutOfRange(Vec<usize>, usize),
    #[error("invalid 2-functor: {0}")]
    InvalidFunctor(String),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Which homotopy fibre: objects under `z` (`z//F`) or over it (`F//z`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `z//F`: witnesses `z → Fx`.
    Over,
    /// `F//z`: witnesses `Fx → z`.
    Under,
}

/// A validated strict 2-functor together with its source and target.
#[derive(Debug, Clone, Copy)]
pub struct StrictFunctor<'a> {
    pub src: &'a TwoCategory,
    pub tgt: &'a TwoCategory,
    pub map: &'a TwoFunctor,
}

impl<'a> StrictFunctor<'a> {
    pub fn new(src: &'a TwoCategory, tgt: &'a TwoCategory, map: &'a TwoFunctor) -> Result<Self, FibreError> {
        let r = map.validate(src, tgt);
        if !r.is_ok() {
            return Err(FibreError::InvalidFunctor(r.to_string().trim_end().to_string()));
        }
        Ok(StrictFunctor { src, tgt, map })
    }
}

/// An object `(x, v)`: `v: [q+1] ⇝ C` with `v_0 = Fx` (over) or `v_{q+1} = Fx` (under),
/// restricting to the base simplex `bases[base]` on the remaining vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibreObject {
    pub x: ObjId,
    pub witness: LaxSimplex,
    pub base: usize,
}

/// A 1-cell `(u, β)`. Over: `betas[i] = y_{0,1,i+2}: Fu∘v_{0,i+1} ⇒ v'_{0,i+1}`.
/// Under: `betas[i] = y_{i,q+1,q+2}: v'_{i,q+1}∘Fu ⇒ v_{i,q+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FibreMorphism {
    pub src: ObjId,
    pub tgt: ObjId,
    pub u: MorId,
    pub betas: Vec<DefId>,
}

/// A 2-cell: a 2-cell `alpha` of `B` between the underlying 1-cells, satisfying the
/// triangle condition against every `β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FibreDeformation {
    pub src: MorId,
    pub tgt: MorId,
    pub alpha: DefId,
}

/// Working-orientation data: always the over side, possibly of `F^op`.
#[derive(Debug, Clone)]
struct Working {
    cat: TwoCategory,
    q: usize,
    bases: Vec<LaxSimplex>,
    objs: Vec<FibreObject>,
    mors: Vec<FibreMorphism>,
    defs: Vec<FibreDeformation>,
    obj_ix: HashMap<(ObjId, Key), ObjId>,
    mor_ix: HashMap<FibreMorphism, MorId>,
    def_ix: HashMap<FibreDeformation, DefId>,
}

impl Working {
    fn obj(&self, x: ObjId, v: &LaxSimplex) -> ObjId {
        self.obj_ix[&(x, v.key())]
    }
    fn mor(&self, m: &FibreMorphism) -> MorId {
        self.mor_ix[m]
    }
    fn def(&self, d: &FibreDeformation) -> DefId {
        self.def_ix[d]
    }
}

/// A materialized fibre 2-category; index `i` of each cell vector is the cell id in `cat`.
#[derive(Debug, Clone)]
pub struct Fibre {
    pub side: Side,
    pub cat: TwoCategory,
    /// The base simplices `[q] ⇝ C`; a single one for a simplex fibre.
    pub bases: Vec<LaxSimplex>,
    pub objects: Vec<FibreObject>,
    pub morphisms: Vec<FibreMorphism>,
    pub deformations: Vec<FibreDeformation>,
    work: Working,
}

impl Fibre {
    pub fn q(&self) -> usize {
        self.work.q
    }

    pub fn find_object(&self, x: ObjId, witness: &LaxSimplex) -> Option<ObjId> {
        let w = match self.side {
            Side::Over => witness.clone(),
            Side::Under => witness.reversed(),
        };
        self.work.obj_ix.get(&(x, w.key())).copied()
    }

    pub fn find_morphism(&self, m: &FibreMorphism) -> Option<MorId> {
        let w = match self.side {
            Side::Over => m.clone(),
            Side::Under => flip_morphism(m),
        };
        self.work.mor_ix.get(&w).copied()
    }

    pub fn find_deformation(&self, d: &FibreDeformation) -> Option<DefId> {
        self.work.def_ix.get(d).copied()
    }

    fn from_working(work: Working, side: Side) -> Fibre {
        match side {
            Side::Over => Fibre {
                side,
                cat: work.cat.clone(),
                bases: work.bases.clone(),
                objects: work.objs.clone(),
                morphisms: work.mors.clone(),
                deformations: work.defs.clone(),
                work,
            },
            Side::Under => Fibre {
                side,
                cat: work.cat.opposite(),
                bases: work.bases.iter().map(LaxSimplex::reversed).collect(),
                objects: work
                    .objs
                    .iter()
                    .map(|o| FibreObject {
                        x: o.x,
                        witness: o.witness.reversed(),
                        base: o.base,
                    })
                    .collect(),
                morphisms: work.mors.iter().map(flip_morphism).collect(),
                deformations: work.defs.clone(),
                work,
            },
        }
    }
}

fn flip_morphism(m: &FibreMorphism) -> FibreMorphism {
    FibreMorphism {
        src: m.tgt,
        tgt: m.src,
        u: m.u,
        betas: m.betas.iter().rev().copied().collect(),
    }
}

// ---------------------------------------------------------------------------
// The enumeration engine, in working orientation.

/// `F: B → C` in working orientation, plus `C^op` for front extensions.
struct World<'a> {
    b: &'a TwoCategory,
    c: &'a TwoCategory,
    c_op: TwoCategory,
    f: &'a TwoFunctor,
    side: Side,
}

impl<'a> World<'a> {
    fn new(b: &'a TwoCategory, c: &'a TwoCategory, f: &'a TwoFunctor, side: Side) -> Self {
        World {
            b,
            c,
            c_op: c.opposite(),
            f,
            side,
        }
    }
}

enum Witnesses {
    /// All lax extensions of each base to a new vertex `0`.
    Extend,
    /// For 0-dimensional bases: every 1-cell `z → Fx` read directly from the hom-set.
    Direct,
}

#[derive(Default)]
struct Raw {
    objs: Vec<FibreObject>,
    mors: Vec<FibreMorphism>,
    defs: Vec<(usize, usize, DefId)>,
    hom: HashMap<(usize, usize), Vec<usize>>,
    hom2: HashMap<(usize, usize), Vec<usize>>,
    mor_ix: HashMap<FibreMorphism, usize>,
    def_ix: HashMap<(usize, usize, DefId), usize>,
}

const MISSING: usize = usize::MAX;

impl Raw {
    fn mor_key(&self, m: &FibreMorphism) -> usize {
        self.mor_ix.get(m).copied().unwrap_or(MISSING)
    }
    fn def_key(&self, d: (usize, usize, DefId)) -> usize {
        self.def_ix.get(&d).copied().unwrap_or(MISSING)
    }
}

fn raw_id(w: &World, raw: &Raw, x: usize) -> FibreMorphism {
    let o = &raw.objs[x];
    let q1 = o.witness.dim();
    FibreMorphism {
        src: ObjId(x as u32),
        tgt: ObjId(x as u32),
        u: w.b.id_mor(o.x),
        betas: (1..=q1).map(|a| w.c.id_def(o.witness.mor(0, a))).collect(),
    }
}

/// `(u', β')∘(u, β) = (u'∘u, β'·(1_{Fu'}∘β))`.
fn raw_compose(w: &World, f: &FibreMorphism, g: &FibreMorphism) -> FibreMorphism {
    let fu = w.f.on_mor(f.u);
    FibreMorphism {
        src: g.src,
        tgt: f.tgt,
        u: w.b.compose(f.u, g.u),
        betas: f
            .betas
            .iter()
            .zip(&g.betas)
            .map(|(&bf, &bg)| w.c.vcompose(bf, w.c.whisker_left(fu, bg)))
            .collect(),
    }
}

fn enumerate(w: &World, bases: &[LaxSimplex], mode: Witnesses, budget: &mut Budget) -> Result<Raw, FibreError> {
    let (b, c, f) = (w.b, w.c, w.f);
    let mut raw = Raw::default();
    for (zi, z) in bases.iter().enumerate() {
        let mut cache: HashMap<ObjId, Vec<LaxSimplex>> = HashMap::new();
        for x in b.objects() {
            let fx = f.on_obj(x);
            if !cache.contains_key(&fx) {
                let vs = match mode {
                    Witnesses::Extend => {
                        let mut out = Vec::new();
                        extend_front(c, &w.c_op, z, &[fx], budget, &mut out)?;
                        out.sort_by_cached_key(LaxSimplex::key);
                        out
                    }
                    Witnesses::Direct => {
                        let zo = z.obj(0);
                        let hom = c.hom(zo, fx);
                        budget.charge(hom.len())?;
                        hom.iter()
                            .map(|&v| LaxSimplex::from_parts(c, vec![fx, zo], |_, _| v, |_, _, _| unreachable!()))
                            .collect()
                    }
                };
                cache.insert(fx, vs);
            }
            for v in &cache[&fx] {
                raw.objs.push(FibreObject {
                    x,
                    witness: v.clone(),
                    base: zi,
                });
            }
        }
    }

    let n = raw.objs.len();
    for s in 0..n {
        for t in 0..n {
            let (os, ot) = (&raw.objs[s], &raw.objs[t]);
            if os.base != ot.base {
                continue;
            }
            let mut found = Vec::new();
            for &u in b.hom(os.x, ot.x) {
                let mut betas = Vec::new();
                fill_betas(w, &os.witness, &ot.witness, f.on_mor(u), &mut betas, budget, &mut |betas| {
                    found.push(FibreMorphism {
                        src: ObjId(s as u32),
                        tgt: ObjId(t as u32),
                        u,
                        betas: betas.to_vec(),
                    })
                })?;
            }
            for m in found {
                let ix = raw.mors.len();
                raw.mor_ix.insert(m.clone(), ix);
                raw.hom.entry((s, t)).or_default().push(ix);
                raw.mors.push(m);
            }
        }
    }

    let pairs: Vec<((usize, usize), Vec<usize>)> = {
        let mut v: Vec<_> = raw.hom.iter().map(|(&k, l)| (k, l.clone())).collect();
        v.sort();
        v
    };
    for ((s, _), hom) in pairs {
        let vs = &raw.objs[s].witness;
        for &mi in &hom {
            for &ni in &hom {
                let (m, nn) = (&raw.mors[mi], &raw.mors[ni]);
                let cands = b.hom2(m.u, nn.u);
                budget.charge(cands.len())?;
                for &alpha in cands {
                    let fa = f.on_def(alpha);
                    let ok = (0..m.betas.len()).all(|i| {
                        c.vcompose(nn.betas[i], c.whisker_right(fa, vs.mor(0, i + 1))) == m.betas[i]
                    });
                    if ok {
                        let ix = raw.defs.len();
                        raw.def_ix.insert((mi, ni, alpha), ix);
                        raw.hom2.entry((mi, ni)).or_default().push(ix);
                        raw.defs.push((mi, ni, alpha));
                    }
                }
            }
        }
    }
    Ok(raw)
}

/// Chooses `β_a: Fu∘v_{0,a} ⇒ v'_{0,a}` for `a = 1, 2, …`, keeping every compatibility
/// square `β_b(1∘v_{0,a,b}) = v'_{0,a,b}(β_a∘1)` with `a < b` as soon as `β_b` is chosen.
fn fill_betas(
    w: &World,
    v: &LaxSimplex,
    v2: &LaxSimplex,
    fu: MorId,
    betas: &mut Vec<DefId>,
    budget: &mut Budget,
    emit: &mut dyn FnMut(&[DefId]),
) -> Result<(), FibreError> {
    let c = w.c;
    let b = betas.len() + 1;
    if b > v.dim() {
        emit(betas);
        return Ok(());
    }
    let cands = c.hom2(c.compose(fu, v.mor(0, b)), v2.mor(0, b));
    budget.charge(cands.len())?;
    for &beta in cands {
        let square = |a: usize| {
            let lhs = c.vcompose(beta, c.whisker_left(fu, v.def(0, a, b)));
            let rhs = c.vcompose(v2.def(0, a, b), c.whisker_right(betas[a - 1], v.mor(a, b)));
            lhs == rhs
        };
        if (1..b).all(square) {
            betas.push(beta);
            fill_betas(w, v, v2, fu, betas, budget, emit)?;
            betas.pop();
        }
    }
    Ok(())
}

struct Sys<'a, 'w> {
    w: &'a World<'w>,
    raw: &'a Raw,
}

impl Sys<'_, '_> {
    /// Object names list the witness cells touching the base point of `Fx`, in real orientation.
    fn object_name(&self, o: &FibreObject) -> String {
        let (b, c) = (self.w.b, self.w.c);
        let v = &o.witness;
        let top = v.dim();
        let (mors, defs): (Vec<&str>, Vec<&str>) = match self.w.side {
            Side::Over => (
                (1..=top).map(|a| c.mor_name(v.mor(0, a))).collect(),
                pairs_above(1, top).map(|(a, bb)| c.def_name(v.def(0, a, bb))).collect(),
            ),
            // Real vertex `i` is working vertex `top − i`.
            Side::Under => (
                (0..top).map(|i| c.mor_name(v.mor(0, top - i))).collect(),
                pairs_above(0, top - 1)
                    .map(|(i, j)| c.def_name(v.def(0, top - j, top - i)))
                    .collect(),
            ),
        };
        let mut s = format!("({},{}", b.obj_name(o.x), mors.join(","));
        if !defs.is_empty() {
            s.push(';');
            s.push_str(&defs.join(","));
        }
        s.push(')');
        s
    }

    fn morphism_name(&self, m: &FibreMorphism) -> String {
        let (b, c) = (self.w.b, self.w.c);
        let m = match self.w.side {
            Side::Over => m.clone(),
            Side::Under => flip_morphism(m),
        };
        let betas: Vec<&str> = m.betas.iter().map(|&d| c.def_name(d)).collect();
        format!(
            "({}|{}):{}->{}",
            b.mor_name(m.u),
            betas.join(","),
            self.object_name(&self.raw.objs[m.src.ix()]),
            self.object_name(&self.raw.objs[m.tgt.ix()])
        )
    }
}

fn pairs_above(lo: usize, hi: usize) -> impl Iterator<Item = (usize, usize)> {
    (lo..=hi).flat_map(move |a| (a + 1..=hi).map(move |b| (a, b)))
}

impl CellSystem for Sys<'_, '_> {
    type Obj = usize;
    type Mor = usize;
    type Def = usize;

    fn objects(&self) -> Vec<usize> {
        (0..self.raw.objs.len()).collect()
    }
    fn hom(&self, s: &usize, t: &usize) -> Vec<usize> {
        self.raw.hom.get(&(*s, *t)).cloned().unwrap_or_default()
    }
    fn hom2(&self, f: &usize, g: &usize) -> Vec<usize> {
        self.raw.hom2.get(&(*f, *g)).cloned().unwrap_or_default()
    }
    fn id_mor(&self, x: &usize) -> usize {
        self.raw.mor_key(&raw_id(self.w, self.raw, *x))
    }
    fn id_def(&self, f: &usize) -> usize {
        self.raw.def_key((*f, *f, self.w.b.id_def(self.raw.mors[*f].u)))
    }
    fn compose(&self, f: &usize, g: &usize) -> usize {
        self.raw.mor_key(&raw_compose(self.w, &self.raw.mors[*f], &self.raw.mors[*g]))
    }
    fn vcompose(&self, p: &usize, q: &usize) -> usize {
        let (p, q) = (self.raw.defs[*p], self.raw.defs[*q]);
        self.raw.def_key((q.0, p.1, self.w.b.vcompose(p.2, q.2)))
    }
    fn hcompose(&self, p: &usize, q: &usize) -> usize {
        let (p, q) = (self.raw.defs[*p], self.raw.defs[*q]);
        let s = self.compose(&p.0, &q.0);
        let t = self.compose(&p.1, &q.1);
        if s == MISSING || t == MISSING {
            return MISSING;
        }
        self.raw.def_key((s, t, self.w.b.hcompose(p.2, q.2)))
    }
    fn obj_name(&self, x: &usize) -> String {
        self.object_name(&self.raw.objs[*x])
    }
    fn mor_name(&self, f: &usize) -> String {
        self.morphism_name(&self.raw.mors[*f])
    }
    fn def_name(&self, p: &usize) -> String {
        let (s, t, alpha) = self.raw.defs[*p];
        format!("{}:{}=>{}", self.w.b.def_name(alpha), self.mor_name(&s), self.mor_name(&t))
    }
}

fn build_working(w: &World, bases: Vec<LaxSimplex>, mode: Witnesses, budget: &mut Budget) -> Result<Working, FibreError> {
    let q = bases.first().map_or(0, LaxSimplex::dim);
    let raw = enumerate(w, &bases, mode, budget)?;
    let m = materialize(&Sys { w, raw: &raw })?;
    // Objects keep their order; 1-cells and 2-cells are renumbered by `materialize`.
    let objs: Vec<FibreObject> = m.objs.iter().map(|&i| raw.objs[i].clone()).collect();
    let mors: Vec<FibreMorphism> = m.mors.iter().map(|&i| raw.mors[i].clone()).collect();
    let defs: Vec<FibreDeformation> = m
        .defs
        .iter()
        .map(|&i| {
            let (s, t, alpha) = raw.defs[i];
            FibreDeformation {
                src: m.mor_ix[&s],
                tgt: m.mor_ix[&t],
                alpha,
            }
        })
        .collect();
    let obj_ix = objs
        .iter()
        .enumerate()
        .map(|(i, o)| ((o.x, o.witness.key()), ObjId(i as u32)))
        .collect();
    let mor_ix = mors.iter().enumerate().map(|(i, f)| (f.clone(), MorId(i as u32))).collect();
    let def_ix = defs.iter().enumerate().map(|(i, d)| (d.clone(), DefId(i as u32))).collect();
    Ok(Working {
        cat: m.cat,
        q,
        bases,
        objs,
        mors,
        defs,
        obj_ix,
        mor_ix,
        def_ix,
    })
}

// ---------------------------------------------------------------------------
// Public constructions.

/// The working orientation of `f` for `side`: `(B, C)` or `(B^op, C^op)`.
struct Oriented {
    b: TwoCategory,
    c: TwoCategory,
}

fn orient(f: &StrictFunctor, side: Side) -> Oriented {
    match side {
        Side::Over => Oriented {
            b: f.src.clone(),
            c: f.tgt.clone(),
        },
        Side::Under => Oriented {
            b: f.src.opposite(),
            c: f.tgt.opposite(),
        },
    }
}

fn to_working_simplex(z: &LaxSimplex, side: Side) -> LaxSimplex {
    match side {
        Side::Over => z.clone(),
        Side::Under => z.reversed(),
    }
}

fn check_object(c: &TwoCategory, z: ObjId) -> Result<(), FibreError> {
    if z.ix() < c.num_objects() {
        Ok(())
    } else {
        Err(FibreError::UnknownObject(format!("#{}", z.0)))
    }
}

fn check_simplex(c: &TwoCategory, z: &LaxSimplex) -> Result<(), FibreError> {
    let w = z.dim() + 1;
    let in_range = (0..w).all(|i| {
        z.obj(i).ix() < c.num_objects()
            && (i..w).all(|j| z.mor(i, j).ix() < c.num_mors() && (j..w).all(|k| z.def(i, j, k).ix() < c.num_defs()))
    });
    if !in_range {
        return Err(FibreError::InvalidSimplex("cells outside the target".into()));
    }
    let r = z.validate(c);
    if r.is_ok() {
        Ok(())
    } else {
        Err(FibreError::InvalidSimplex(r.to_string().trim_end().to_string()))
    }
}

fn point_fibre_working(o: &Oriented, f: &TwoFunctor, side: Side, z: ObjId, budget: &mut Budget) -> Result<Working, FibreError> {
    let w = World::new(&o.b, &o.c, f, side);
    build_working(&w, vec![LaxSimplex::point(&o.c, z)], Witnesses::Direct, budget)
}

fn simplex_fibre_working(
    o: &Oriented,
    f: &TwoFunctor,
    side: Side,
    z: &LaxSimplex,
    budget: &mut Budget,
) -> Result<Working, FibreError> {
    let w = World::new(&o.b, &o.c, f, side);
    build_working(&w, vec![to_working_simplex(z, side)], Witnesses::Extend, budget)
}

fn object_fibre(f: &StrictFunctor, z: ObjId, side: Side, budget: u64) -> Result<Fibre, FibreError> {
    check_object(f.tgt, z)?;
    let o = orient(f, side);
    let work = point_fibre_working(&o, f.map, side, z, &mut Budget::new(budget))?;
    Ok(Fibre::from_working(work, side))
}

/// `z//F`: objects `(x, v: z → Fx)`, 1-cells `(u, β: Fu∘v ⇒ v')`.
pub fn fibre_over(f: &StrictFunctor, z: ObjId, budget: u64) -> Result<Fibre, FibreError> {
    object_fibre(f, z, Side::Over, budget)
}

/// `F//z`: objects `(x, v: Fx → z)`, 1-cells `(u, β: v'∘Fu ⇒ v)`.
pub fn fibre_under(f: &StrictFunctor, z: ObjId, budget: u64) -> Result<Fibre, FibreError> {
    object_fibre(f, z, Side::Under, budget)
}

/// `z//F` (or `F//z`) for a simplex `z: [q] ⇝ C`: the part of `[q]//F` lying over `z`.
pub fn simplex_fibre(f: &StrictFunctor, z: &LaxSimplex, side: Side, budget: u64) -> Result<Fibre, FibreError> {
    check_simplex(f.tgt, z)?;
    let o = orient(f, side);
    let work = simplex_fibre_working(&o, f.map, side, z, &mut Budget::new(budget))?;
    Ok(Fibre::from_working(work, side))
}

/// The whole `[q]//F` (or `F//[q]`): one block per simplex `[q] ⇝ C`, with no cells
/// between different blocks.
pub fn fibres_in_dimension(f: &StrictFunctor, q: usize, side: Side, budget: u64) -> Result<Fibre, FibreError> {
    let mut budget = Budget::new(budget);
    let o = orient(f, side);
    let mut bases = lax_simplices(f.tgt, q, &mut budget)?.swap_remove(q);
    if side == Side::Under {
        bases = bases.iter().map(LaxSimplex::reversed).collect();
    }
    let w = World::new(&o.b, &o.c, f.map, side);
    let work = build_working(&w, bases, Witnesses::Extend, &mut budget)?;
    Ok(Fibre::from_working(work, side))
}

/// `Ψ`: the base simplex of each object, as a key of the geometric nerve of `C`.
pub fn psi_label(fibre: &Fibre) -> Vec<Key> {
    fibre.objects.iter().map(|o| fibre.bases[o.base].key()).collect()
}

/// `Φ`: forgets witnesses, `(x, v) ↦ x`, `(u, y) ↦ u`, `α ↦ α`.
pub fn phi_forget(fibre: &Fibre) -> TwoFunctor {
    TwoFunctor {
        obj: fibre.objects.iter().map(|o| o.x).collect(),
        mor: fibre.morphisms.iter().map(|m| m.u).collect(),
        def: fibre.deformations.iter().map(|d| d.alpha).collect(),
    }
}

/// A 2-functor between two fibres.
#[derive(Debug, Clone)]
pub struct InducedFunctor {
    pub src: Fibre,
    pub tgt: Fibre,
    pub map: TwoFunctor,
}

impl InducedFunctor {
    pub fn validate(&self) -> ValidationReport {
        self.map.validate(&self.src.cat, &self.tgt.cat)
    }
}

/// Transports a working-orientation cell map: objects and 1-cells by closures, 2-cells
/// by keeping `α` and mapping the boundary.
fn induced_map(
    src: &Working,
    tgt: &Working,
    on_obj: impl Fn(&FibreObject) -> ObjId,
    on_mor: impl Fn(&FibreMorphism) -> FibreMorphism,
) -> TwoFunctor {
    let mor: Vec<MorId> = src.mors.iter().map(|m| tgt.mor(&on_mor(m))).collect();
    TwoFunctor {
        obj: src.objs.iter().map(on_obj).collect(),
        def: src
            .defs
            .iter()
            .map(|d| {
                tgt.def(&FibreDeformation {
                    src: mor[d.src.ix()],
                    tgt: mor[d.tgt.ix()],
                    alpha: d.alpha,
                })
            })
            .collect(),
        mor,
    }
}

/// `w*: z0//F → z1//F` for `w: z1 → z0`, `(x, v) ↦ (x, v∘w)`, `(u, β) ↦ (u, β∘1_w)`.
/// Under: `w_*: F//z1 → F//z0`, `(x, v) ↦ (x, w∘v)`.
pub fn w_star(f: &StrictFunctor, w: MorId, side: Side, budget: u64) -> Result<InducedFunctor, FibreError> {
    if w.ix() >= f.tgt.num_mors() {
        return Err(FibreError::UnknownCell(format!("#{}", w.0)));
    }
    let (z1, z0) = (f.tgt.src(w), f.tgt.tgt(w));
    let (from, to) = match side {
        Side::Over => (z0, z1),
        Side::Under => (z1, z0),
    };
    let o = orient(f, side);
    let mut budget = Budget::new(budget);
    let src = point_fibre_working(&o, f.map, side, from, &mut budget)?;
    let tgt = point_fibre_working(&o, f.map, side, to, &mut budget)?;
    let c = &o.c;
    let map = induced_map(
        &src,
        &tgt,
        |ob| {
            let v = ob.witness.mor(0, 1);
            let vw = LaxSimplex::from_parts(c, vec![ob.witness.obj(0), c.src(w)], |_, _| c.compose(v, w), |_, _, _| {
                unreachable!()
            });
            tgt.obj(ob.x, &vw)
        },
        |m| FibreMorphism {
            src: image_obj(&src, &tgt, m.src, |v| c.compose(v, w)),
            tgt: image_obj(&src, &tgt, m.tgt, |v| c.compose(v, w)),
            u: m.u,
            betas: vec![c.whisker_right(m.betas[0], w)],
        },
    );
    Ok(InducedFunctor {
        src: Fibre::from_working(src, side),
        tgt: Fibre::from_working(tgt, side),
        map,
    })
}

fn image_obj(src: &Working, tgt: &Working, x: ObjId, on_witness: impl Fn(MorId) -> MorId) -> ObjId {
    let ob = &src.objs[x.ix()];
    let v = on_witness(ob.witness.mor(0, 1));
    let key = vec![ob.witness.obj(0).0, tgt.bases[0].obj(0).0, v.0];
    tgt.obj_ix[&(ob.x, key)]
}

fn check_monotone(xi: &[usize], n: usize) -> Result<(), FibreError> {
    if xi.is_empty() || xi.windows(2).any(|p| p[0] > p[1]) {
        return Err(FibreError::NonMonotone(xi.to_vec()));
    }
    if xi.iter().any(|&i| i > n) {
        return Err(FibreError::OutOfRange(xi.to_vec(), n));
    }
    Ok(())
}

/// `ξ*: z//F → zξ//F` for monotone `ξ: [q] → [n]` given by its values; acts by
/// precomposition with `ξ+1` on witnesses and `ξ+2` on 1-cells.
pub fn xi_star(f: &StrictFunctor, z: &LaxSimplex, xi: &[usize], side: Side, budget: u64) -> Result<InducedFunctor, FibreError> {
    check_simplex(f.tgt, z)?;
    let n = z.dim();
    check_monotone(xi, n)?;
    let zxi = z.precompose(f.tgt, xi);
    let o = orient(f, side);
    let mut budget = Budget::new(budget);
    let src = simplex_fibre_working(&o, f.map, side, z, &mut budget)?;
    let tgt = simplex_fibre_working(&o, f.map, side, &zxi, &mut budget)?;
    // In working orientation an under-side ξ reads as `i ↦ n − ξ(q − i)`.
    let q = xi.len() - 1;
    let wxi: Vec<usize> = match side {
        Side::Over => xi.to_vec(),
        Side::Under => (0..=q).map(|i| n - xi[q - i]).collect(),
    };
    let shifted: Vec<usize> = std::iter::once(0).chain(wxi.iter().map(|&i| i + 1)).collect();
    let c = &o.c;
    let obj_image = |x: ObjId| {
        let ob = &src.objs[x.ix()];
        tgt.obj(ob.x, &ob.witness.precompose(c, &shifted))
    };
    let map = induced_map(&src, &tgt, |ob| tgt.obj(ob.x, &ob.witness.precompose(c, &shifted)), |m| FibreMorphism {
        src: obj_image(m.src),
        tgt: obj_image(m.tgt),
        u: m.u,
        betas: wxi.iter().map(|&i| m.betas[i]).collect(),
    });
    Ok(InducedFunctor {
        src: Fibre::from_working(src, side),
        tgt: Fibre::from_working(tgt, side),
        map,
    })
}

/// `Γ: z_0//F → z//F` with retraction `Θ` and the 2-natural `r: ΓΘ ⇒ 1`. Under the
/// duality `Γ': F//z_q → F//z` and `r': 1 ⇒ Γ'Θ'`.
#[derive(Debug, Clone)]
pub struct Retraction {
    pub point: Fibre,
    pub simplex: Fibre,
    pub gamma: TwoFunctor,
    pub theta: TwoFunctor,
    pub r: LaxTransformation,
}

impl Retraction {
    /// `ΓΘ`, the composite endofunctor of the simplex fibre.
    pub fn gamma_theta(&self) -> TwoFunctor {
        self.gamma.after(&self.theta)
    }

    /// `ΘΓ = 1` exactly, both 2-functors valid, and `r` a valid 2-natural transformation.
    pub fn check(&self) -> ValidationReport {
        let (p, s) = (&self.point.cat, &self.simplex.cat);
        let mut rep = ValidationReport::new();
        rep.extend(self.gamma.validate(p, s), "Gamma");
        rep.extend(self.theta.validate(s, p), "Theta");
        if !rep.is_ok() {
            return rep;
        }
        rep.require(self.theta.after(&self.gamma) == TwoFunctor::identity(p), ViolationKind::FunctorViolation, || {
            "Theta Gamma is not the identity".into()
        });
        let gt = self.gamma_theta().to_lax(s, s);
        let id = TwoFunctor::identity(s).to_lax(s, s);
        let tr = match self.point.side {
            Side::Over => self.r.validate(s, s, &gt, &id),
            Side::Under => self.r.validate(s, s, &id, &gt),
        };
        rep.extend(tr, "r");
        rep.require(self.r.is_two_natural(s), ViolationKind::NaturalityViolation, || "r is not 2-natural".into());
        rep
    }
}

pub fn gamma_theta(f: &StrictFunctor, z: &LaxSimplex, side: Side, budget: u64) -> Result<Retraction, FibreError> {
    check_simplex(f.tgt, z)?;
    let o = orient(f, side);
    let c = &o.c;
    let wz = to_working_simplex(z, side);
    let q = wz.dim();
    let mut budget = Budget::new(budget);
    let point = point_fibre_working(&o, f.map, side, wz.obj(0), &mut budget)?;
    let big = simplex_fibre_working(&o, f.map, side, z, &mut budget)?;

    // v^z: v^z_{0,i+1} = v∘z_{0,i}, v^z_{0,i+1,j+1} = 1_v∘z_{0,i,j}, v^z δ_0 = z.
    let lift = |ob: &FibreObject| -> LaxSimplex {
        let v = ob.witness.mor(0, 1);
        let objs = std::iter::once(ob.witness.obj(0)).chain((0..=q).map(|i| wz.obj(i))).collect();
        LaxSimplex::from_parts(
            c,
            objs,
            |i, j| if i == 0 { c.compose(v, wz.mor(0, j - 1)) } else { wz.mor(i - 1, j - 1) },
            |i, j, k| {
                if i == 0 {
                    c.whisker_left(v, wz.def(0, j - 1, k - 1))
                } else {
                    wz.def(i - 1, j - 1, k - 1)
                }
            },
        )
    };
    let gamma_obj = |x: ObjId| {
        let ob = &point.objs[x.ix()];
        big.obj(ob.x, &lift(ob))
    };
    let gamma = induced_map(&point, &big, |ob| big.obj(ob.x, &lift(ob)), |m| FibreMorphism {
        src: gamma_obj(m.src),
        tgt: gamma_obj(m.tgt),
        u: m.u,
        betas: (0..=q).map(|i| c.whisker_right(m.betas[0], wz.mor(0, i))).collect(),
    });

    let truncate = |ob: &FibreObject| -> LaxSimplex { ob.witness.precompose(c, &[0, 1]) };
    let theta_obj = |x: ObjId| {
        let ob = &big.objs[x.ix()];
        point.obj(ob.x, &truncate(ob))
    };
    let theta = induced_map(&big, &point, |ob| point.obj(ob.x, &truncate(ob)), |m| FibreMorphism {
        src: theta_obj(m.src),
        tgt: theta_obj(m.tgt),
        u: m.u,
        betas: vec![m.betas[0]],
    });

    // r_{(x,v)} = (1_x, ṽ): ΓΘ(x,v) → (x,v) with ṽ_{0,1,i+2} = v_{0,1,i+1}.
    let gt = gamma.after(&theta);
    let at_obj: Vec<MorId> = big
        .objs
        .iter()
        .enumerate()
        .map(|(i, ob)| {
            big.mor(&FibreMorphism {
                src: gt.on_obj(ObjId(i as u32)),
                tgt: ObjId(i as u32),
                u: o.b.id_mor(ob.x),
                betas: (0..=q).map(|i| ob.witness.def(0, 1, i + 1)).collect(),
            })
        })
        .collect();
    let at_mor = big
        .mors
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let path = big.cat.compose(at_obj[m.tgt.ix()], gt.on_mor(MorId(i as u32)));
            big.cat.id_def(path)
        })
        .collect();
    let r = LaxTransformation {
        kind: TransformationKind::Lax,
        at_obj,
        at_mor,
    };
    Ok(Retraction {
        point: Fibre::from_working(point, side),
        simplex: Fibre::from_working(big, side),
        gamma,
        theta,
        r,
    })
}

/// The oplax `Ct_z ⇒ 1` on `z//C`: component `(v, 1_v): (z, 1_z) → (x, v)` at an object
/// and `β` at a 1-cell `(u, β)`.
#[derive(Debug, Clone)]
pub struct ConeContraction {
    pub fibre: Fibre,
    pub constant: TwoFunctor,
    pub t: LaxTransformation,
}

impl ConeContraction {
    pub fn check(&self) -> ValidationReport {
        let s = &self.fibre.cat;
        let mut rep = self.constant.validate(s, s);
        if rep.is_ok() {
            let k = self.constant.to_lax(s, s);
            let id = TwoFunctor::identity(s).to_lax(s, s);
            rep.extend(self.t.validate(s, s, &k, &id), "Ct");
        }
        rep
    }
}

pub fn comma_contraction(c: &TwoCategory, z: ObjId, budget: u64) -> Result<ConeContraction, FibreError> {
    let id = TwoFunctor::identity(c);
    let f = StrictFunctor::new(c, c, &id)?;
    let fibre = fibre_over(&f, z, budget)?;
    let s = &fibre.cat;
    let base = LaxSimplex::from_parts(c, vec![z, z], |_, _| c.id_mor(z), |_, _, _| unreachable!());
    let apex = fibre
        .find_object(z, &base)
        .ok_or_else(|| FibreError::UnknownObject("(z,1_z)".into()))?;
    let constant = TwoFunctor::constant(s, s, apex);
    let at_obj: Vec<MorId> = fibre
        .objects
        .iter()
        .enumerate()
        .map(|(i, ob)| {
            let v = ob.witness.mor(0, 1);
            fibre
                .find_morphism(&FibreMorphism {
                    src: apex,
                    tgt: ObjId(i as u32),
                    u: v,
                    betas: vec![c.id_def(v)],
                })
                .expect("(v, 1_v) is a 1-cell of z//C")
        })
        .collect();
    let at_mor = fibre
        .morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let from = s.compose(MorId(i as u32), at_obj[m.src.ix()]);
            let to = at_obj[m.tgt.ix()];
            fibre
                .find_deformation(&FibreDeformation {
                    src: from,
                    tgt: to,
                    alpha: m.betas[0],
                })
                .expect("β is a 2-cell of z//C")
        })
        .collect();
    Ok(ConeContraction {
        fibre,
        constant,
        t: LaxTransformation {
            kind: TransformationKind::Oplax,
            at_obj,
            at_mor,
        },
    })
}

/// The precondition audit: for each 1-cell `w` of `C`, whether `Δw*` is a homology
/// equivalence through the trusted degrees (with π0 and the induced `H_0`, `H_1` maps).
#[derive(Debug, Clone)]
pub struct FibreAudit {
    pub cap: usize,
    pub entries: Vec<(String, EquivalenceReport)>,
}

impl FibreAudit {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|(_, e)| e.agree())
    }
}

impl fmt::Display for FibreAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, e) in &self.entries {
            let tag = if e.agree() { "OK" } else { "FAIL" };
            writeln!(f, "{tag} w* for w = {w}: homology equivalence through degree {}", e.left.max_degree())?;
        }
        let tag = if self.holds() { "OK" } else { "FAIL" };
        writeln!(f, "{tag} precondition: every w* is a homology equivalence")
    }
}

pub fn audit_fibre_equivalences(f: &StrictFunctor, cap: usize, budget: u64) -> Result<FibreAudit, FibreError> {
    let mut entries = Vec::new();
    for w in f.tgt.mors() {
        let ind = w_star(f, w, Side::Over, budget)?;
        let (s, t) = (&ind.src.cat, &ind.tgt.cat);
        let ns = geometric_nerve(s, cap, budget)?;
        let nt = geometric_nerve(t, cap, budget)?;
        let map = geometric_nerve_map(&ind.map.to_lax(s, t), s, t, &ns, &nt)?;
        entries.push((f.tgt.mor_name(w).to_string(), homology_compare(&ns, &nt, Some(&map))?));
    }
    Ok(FibreAudit { cap, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{homology, HomologyGroup};

    const BUDGET: u64 = 1_000_000;

    fn names(c: &TwoCategory) -> Vec<String> {
        let mut v: Vec<String> = c.objects().map(|x| c.obj_name(x).to_string()).collect();
        v.sort();
        v
    }

    fn identity_of(c: &TwoCategory) -> TwoFunctor {
        TwoFunctor::identity(c)
    }

    #[test]
    fn comma_categories_of_the_walking_cell() {
        let e = TwoCategory::walking_two_cell();
        let id = identity_of(&e);
        let f = StrictFunctor::new(&e, &e, &id).unwrap();
        let (zero, one) = (e.find_obj("0").unwrap(), e.find_obj("1").unwrap());

        let under0 = fibre_over(&f, zero, BUDGET).unwrap();
        assert_eq!(under0.cat.num_objects(), 1);
        assert_eq!(under0.cat.num_mors(), 1);

        let under1 = fibre_over(&f, one, BUDGET).unwrap();
        assert_eq!(names(&under1.cat), ["(0,u)", "(0,v)", "(1,id:1)"]);
        assert!(under1.cat.validate().is_ok());

        let over0 = fibre_under(&f, zero, BUDGET).unwrap();
        assert_eq!(names(&over0.cat), ["(0,id:0)", "(1,u)", "(1,v)"]);
        assert!(over0.cat.validate().is_ok());

        let over1 = fibre_under(&f, one, BUDGET).unwrap();
        assert_eq!(over1.cat.num_objects(), 1);
        assert_eq!(over1.cat.num_mors(), 1);
    }

    #[test]
    fn point_into_suspension_has_discrete_fibre() {
        let t = TwoCategory::terminal();
        let c = TwoCategory::suspended_cyclic(2);
        let star = c.objects().next().unwrap();
        let map = TwoFunctor::constant(&t, &c, star);
        let f = StrictFunctor::new(&t, &c, &map).unwrap();
        let fib = fibre_over(&f, star, BUDGET).unwrap();
        assert_eq!(fib.cat.num_objects(), 2);
        assert!(fib.cat.is_discrete());
        assert_eq!(fib.cat.num_mors(), 2);
        let h = homology(&geometric_nerve(&fib.cat, 4, BUDGET).unwrap()).unwrap();
        assert_eq!(h.groups[0], HomologyGroup::free(2));
        assert!(h.groups[1..].iter().all(HomologyGroup::is_zero));
    }

    #[test]
    fn zero_dimensional_simplex_fibre_is_the_object_fibre() {
        let e = TwoCategory::walking_two_cell();
        let id = identity_of(&e);
        let f = StrictFunctor::new(&e, &e, &id).unwrap();
        for side in [Side::Over, Side::Under] {
            for z in e.objects() {
                let a = object_fibre(&f, z, side, BUDGET).unwrap();
                let b = simplex_fibre(&f, &LaxSimplex::point(&e, z), side, BUDGET).unwrap();
                assert_eq!(a.objects, b.objects);
                assert_eq!(a.morphisms, b.morphisms);
                assert_eq!(a.deformations, b.deformations);
                for x in a.cat.objects() {
                    assert_eq!(a.cat.obj_name(x), b.cat.obj_name(x));
                }
                for u in a.cat.mors() {
                    assert_eq!(a.cat.mor_name(u), b.cat.mor_name(u));
                }
            }
        }
    }

    /// Counts 1-cells of a simplex fibre through full lax simplices `y: [q+2] ⇝ C`.
    fn oracle_morphism_count(c: &TwoCategory, b: &TwoCategory, map: &TwoFunctor, fib: &Fibre) -> usize {
        let c_op = c.opposite();
        let mut n = 0;
        for s in &fib.objects {
            let mut ys = Vec::new();
            let fxs: Vec<ObjId> = fib.objects.iter().map(|o| map.on_obj(o.x)).collect();
            let mut targets = fxs.clone();
            targets.sort();
            targets.dedup();
            extend_front(c, &c_op, &s.witness, &targets, &mut Budget::new(BUDGET), &mut ys).unwrap();
            for y in ys {
                assert!(y.validate(c).is_ok());
                let d1: Vec<usize> = (0..=y.dim()).filter(|&i| i != 1).collect();
                let back = y.precompose(c, &d1);
                for t in &fib.objects {
                    if t.witness != back {
                        continue;
                    }
                    n += b
                        .hom(s.x, t.x)
                        .iter()
                        .filter(|&&u| map.on_mor(u) == y.mor(0, 1))
                        .count();
                }
            }
        }
        n
    }

    #[test]
    fn simplex_fibre_matches_lax_extension_oracle() {
        let e = TwoCategory::walking_two_cell();
        let id = identity_of(&e);
        let f = StrictFunctor::new(&e, &e, &id).unwrap();
        let u = e.find_mor("u").unwrap();
        let z = LaxSimplex::from_parts(&e, vec![e.tgt(u), e.src(u)], |_, _| u, |_, _, _| unreachable!());
        let fib = simplex_fibre(&f, &z, Side::Over, BUDGET).unwrap();
        assert!(fib.cat.validate().is_ok());
        // Objects: lax 2-simplices with spine ending in `u`: (0; 1_0, u), (0; u|v, ...).
        let mut ext = Vec::new();
        extend_front(&e, &e.opposite(), &z, &[ObjId(0), ObjId(1)], &mut Budget::new(BUDGET), &mut ext).unwrap();
        assert_eq!(fib.cat.num_objects(), ext.len());
        assert_eq!(fib.cat.num_mors(), oracle_morphism_count(&e, &e, &id, &fib));
        let h = homology(&geometric_nerve(&fib.cat, 4, BUDGET).unwrap()).unwrap();
        assert!(h.is_point(), "{h}");
    }

    #[test]
    fn suspension_fillers_are_terminal() {
        let t = TwoCategory::terminal();
        let c = TwoCategory::suspended_cyclic(2);
        let star = c.objects().next().unwrap();
        let map = TwoFunctor::constant(&t, &c, star);
        let f = StrictFunctor::new(&t, &c, &map).unwrap();
        let all = lax_simplices(&c, 1, &mut Budget::new(BUDGET)).unwrap();
        for z in &all[1] {
            let fib = simplex_fibre(&f, z, Side::Over, BUDGET).unwrap();
            // v_{01} is free, v_{02} is forced by the identity 2-cells of ΣZ2.
            assert_eq!(fib.cat.num_objects(), 2);
            assert!(fib.cat.is_discrete());
        }
    }

    #[test]
    fn retraction_identities_hold() {
        let e = TwoCategory::walking_two_cell();
        let id = identity_of(&e);
        let f = StrictFunctor::new(&e, &e, &id).unwrap();
        let u = e.find_mor("u").unwrap();
        let z = LaxSimplex::from_parts(&e, vec![e.tgt(u), e.src(u)], |_, _| u, |_, _, _| unreachable!());
        for side in [Side::Over, Side::Under] {
            let r = gamma_theta(&f, &z, side, BUDGET).unwrap();
            let rep = r.check();
            assert!(rep.is_ok(), "{side:?}: {rep}");
        }
        let p = gamma_theta(&f, &LaxSimplex::point(&e, ObjId(1)), Side::Over, BUDGET).unwrap();
        assert_eq!(p.gamma, TwoFunctor::identity(&p.point.cat));
        assert_eq!(p.theta, TwoFunctor::identity(&p.point.cat));
    }

    #[test]
    fn gamma_is_a_homology_equivalence() {
        let e = TwoCategory::walking_two_cell();
        let id = identity_of(&e);
        let f = StrictFunctor::new(&e, &e, &id).unwrap();
        let u = e.find_mor("u").unwrap();
        let z = LaxSimplex::from_parts(&e, vec![e.tgt(u), e.src(u)], |_, _| u, |_, _, _| unreachable!());
        let r = gamma_theta(&f, &z, Side::Over, BUDGET).unwrap();
        let (s, t) = (&r.point.cat, &r.simplex.cat);
        let ns = geometric_nerve(s, 3, BUDGET).unwrap();
        let nt = geometric_nerve(t, 3, BUDGET).unwrap();
        let m = geometric_nerve_map(&r.gamma.to_lax(s, t), s, t, &ns, &nt).unwrap();
        assert!(homology_compare(&ns, &nt, Some(&m)).unwrap().agree());
    }

    #[test]
    fn w_star_examples() {
        let e = TwoCategory::walking_two_cell();
        let id = identity_of(&e);
        let f = StrictFunctor::new(&e, &e, &id).unwrap();
        let one = e.find_obj("1").unwrap();
        let ident = w_star(&f, e.id_mor(one), Side::Over, BUDGET).unwrap();
        assert_eq!(ident.map, TwoFunctor::identity(&ident.src.cat));
        let u = e.find_mor("u").unwrap();
        let ws = w_star(&f, u, Side::Over, BUDGET).unwrap();
        assert!(ws.validate().is_ok());
        let x = ws.src.cat.objects().next().unwrap();
        assert_eq!(ws.src.cat.obj_name(x), "(0,id:0)");
        assert_eq!(ws.tgt.cat.obj_name(ws.map.on_obj(x)), "(0,u)");
        let wu = w_star(&f, u, Side::Under, BUDGET).unwrap();
        assert!(wu.validate().is_ok());
    }

    #[test]
    fn xi_star_is_functorial() {
        let e = TwoCategory::walking_two_cell();
        let id = identity_of(&e);
        let f = StrictFunctor::new(&e, &e, &id).unwrap();
        let u = e.find_mor("u").unwrap();
        let z = LaxSimplex::from_parts(&e, vec![e.tgt(u), e.src(u)], |_, _| u, |_, _, _| unreachable!());
        for side in [Side::Over, Side::Under] {
            let ident = xi_star(&f, &z, &[0, 1], side, BUDGET).unwrap();
            assert_eq!(ident.map, TwoFunctor::identity(&ident.src.cat));
            let d0 = xi_star(&f, &z, &[1], side, BUDGET).unwrap();
            assert!(d0.validate().is_ok());
            let s0 = xi_star(&f, &z, &[0, 0, 1], side, BUDGET).unwrap();
            assert!(s0.validate().is_ok());
            // (s^0 ∘ δ)^* for ξ = [0,1] -> [0,0,1] -> [1]: compare both routes.
            let zz = z.precompose(&e, &[0, 0, 1]);
            let back = xi_star(&f, &zz, &[2], side, BUDGET).unwrap();
            let direct = xi_star(&f, &z, &[1], side, BUDGET).unwrap();
            assert_eq!(back.map.after(&s0.map), direct.map);
        }
        assert!(matches!(xi_star(&f, &z, &[1, 0], Side::Over, BUDGET), Err(FibreError::NonMonotone(_))));
    }

    #[test]
    fn psi_partitions_and_phi_forgets() {
        let e = TwoCategory::walking_two_cell();
        let id = identity_of(&e);
        let f = StrictFunctor::new(&e, &e, &id).unwrap();
        let whole = fibres_in_dimension(&f, 1, Side::Over, BUDGET).unwrap();
        assert!(whole.cat.validate().is_ok());
        let labels = psi_label(&whole);
        let simplices = lax_simplices(&e, 1, &mut Budget::new(BUDGET)).unwrap();
        let mut total = 0;
        for z in &simplices[1] {
            let part = simplex_fibre(&f, z, Side::Over, BUDGET).unwrap();
            assert_eq!(labels.iter().filter(|k| **k == z.key()).count(), part.cat.num_objects());
            total += part.cat.num_objects();
        }
        assert_eq!(total, whole.cat.num_objects());
        let phi = phi_forget(&whole);
        assert!(phi.validate(&whole.cat, &e).is_ok());
        for x in whole.cat.objects() {
            assert_eq!(phi.on_mor(whole.cat.id_mor(x)), e.id_mor(phi.on_obj(x)));
        }
    }

    #[test]
    fn comma_contraction_is_an_oplax_transformation() {
        for c in [TwoCategory::walking_two_cell(), TwoCategory::suspended_cyclic(2)] {
            for z in c.objects() {
                let k = comma_contraction(&c, z, BUDGET).unwrap();
                let rep = k.check();
                assert!(rep.is_ok(), "{rep}");
            }
        }
    }

    #[test]
    fn audit_on_point_into_suspension() {
        let t = TwoCategory::terminal();
        let c = TwoCategory::suspended_cyclic(2);
        let star = c.objects().next().unwrap();
        let map = TwoFunctor::constant(&t, &c, star);
        let f = StrictFunctor::new(&t, &c, &map).unwrap();
        let a = audit_fibre_equivalences(&f, 4, BUDGET).unwrap();
        assert_eq!(a.entries.len(), 2);
        assert!(a.holds(), "{a}");
    }
}
