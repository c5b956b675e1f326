//! Finite strict 2-categories with fully materialized composition tables.
//!
//! Composition is written in applicative order: `compose(u, v)` is `u∘v`, defined
//! when `v: x → y` and `u: y → z`. Vertical composition `vcompose(b, a)` is `b·a`,
//! defined when `a: f ⇒ g` and `b: g ⇒ h`.

mod build;
mod category;
mod functor;
mod monoidal;
mod validate;

pub use build::{materialize, CellSystem, Materialized};
pub use category::{ArrowId, Category, CategoryBuilder};
pub use functor::{composable_pairs, LaxTransformation, NormalLaxFunctor, TransformationKind, TwoFunctor};
pub use monoidal::{one_object_from_monoidal, RightAction, StrictMonoidal};

use std::collections::HashMap;
use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjId(pub u32);

/// A 1-cell.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorId(pub u32);

/// A 2-cell (deformation).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DefId(pub u32);

impl ObjId {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}
impl MorId {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}
impl DefId {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("duplicate cell name `{0}`")]
    DuplicateName(String),
    #[error("unknown cell name `{0}`")]
    UnknownName(String),
    #[error("name `{0}` is reserved for identities")]
    ReservedName(String),
    #[error("composite {0} is not among the enumerated cells")]
    NotClosed(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct MorData {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct DefData {
    pub name: String,
    pub src: MorId,
    pub tgt: MorId,
}

/// A finite 2-category. Immutable once built; check axioms with [`TwoCategory::validate`].
#[derive(Debug, Clone)]
pub struct TwoCategory {
    objects: Vec<String>,
    mors: Vec<MorData>,
    defs: Vec<DefData>,
    id_mor: Vec<MorId>,
    id_def: Vec<DefId>,
    hcomp1: HashMap<(MorId, MorId), MorId>,
    vcomp: HashMap<(DefId, DefId), DefId>,
    hcomp2: HashMap<(DefId, DefId), DefId>,
    homs: HashMap<(ObjId, ObjId), Vec<MorId>>,
    homs2: HashMap<(MorId, MorId), Vec<DefId>>,
    obj_by_name: HashMap<String, ObjId>,
    mor_by_name: HashMap<String, MorId>,
    def_by_name: HashMap<String, DefId>,
}

/// Reserved name of the identity 1-cell on an object.
pub fn identity_mor_name(obj: &str) -> String {
    format!("id:{obj}")
}

/// Reserved name of the identity 2-cell on a 1-cell.
pub fn identity_def_name(mor: &str) -> String {
    format!("id2:{mor}")
}

fn is_reserved(name: &str) -> bool {
    name.starts_with("id:") || name.starts_with("id2:")
}

impl TwoCategory {
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }
    pub fn num_mors(&self) -> usize {
        self.mors.len()
    }
    pub fn num_defs(&self) -> usize {
        self.defs.len()
    }
    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }
    pub fn mors(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.mors.len() as u32).map(MorId)
    }
    pub fn defs(&self) -> impl Iterator<Item = DefId> + '_ {
        (0..self.defs.len() as u32).map(DefId)
    }
    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.objects[x.ix()]
    }
    pub fn mor_name(&self, u: MorId) -> &str {
        &self.mors[u.ix()].name
    }
    pub fn def_name(&self, a: DefId) -> &str {
        &self.defs[a.ix()].name
    }
    pub fn find_obj(&self, name: &str) -> Option<ObjId> {
        self.obj_by_name.get(name).copied()
    }
    pub fn find_mor(&self, name: &str) -> Option<MorId> {
        self.mor_by_name.get(name).copied()
    }
    pub fn find_def(&self, name: &str) -> Option<DefId> {
        self.def_by_name.get(name).copied()
    }
    pub fn src(&self, u: MorId) -> ObjId {
        self.mors[u.ix()].src
    }
    pub fn tgt(&self, u: MorId) -> ObjId {
        self.mors[u.ix()].tgt
    }
    pub fn def_src(&self, a: DefId) -> MorId {
        self.defs[a.ix()].src
    }
    pub fn def_tgt(&self, a: DefId) -> MorId {
        self.defs[a.ix()].tgt
    }
    pub fn id_mor(&self, x: ObjId) -> MorId {
        self.id_mor[x.ix()]
    }
    pub fn id_def(&self, u: MorId) -> DefId {
        self.id_def[u.ix()]
    }
    pub fn is_identity_mor(&self, u: MorId) -> bool {
        self.id_mor[self.src(u).ix()] == u
    }
    pub fn is_identity_def(&self, a: DefId) -> bool {
        self.id_def[self.def_src(a).ix()] == a
    }

    /// 1-cells `x → y`.
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[MorId] {
        self.homs.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    /// 2-cells `u ⇒ v`.
    pub fn hom2(&self, u: MorId, v: MorId) -> &[DefId] {
        self.homs2.get(&(u, v)).map_or(&[], Vec::as_slice)
    }

    pub fn try_compose(&self, u: MorId, v: MorId) -> Option<MorId> {
        self.hcomp1.get(&(u, v)).copied()
    }
    pub fn try_vcompose(&self, b: DefId, a: DefId) -> Option<DefId> {
        self.vcomp.get(&(b, a)).copied()
    }
    pub fn try_hcompose(&self, b: DefId, a: DefId) -> Option<DefId> {
        self.hcomp2.get(&(b, a)).copied()
    }

    /// `u∘v`; the pair must be composable in a validated category.
    pub fn compose(&self, u: MorId, v: MorId) -> MorId {
        self.try_compose(u, v).unwrap_or_else(|| {
            panic!("no composite {} o {}", self.mor_name(u), self.mor_name(v))
        })
    }
    /// `b·a`; the pair must be vertically composable in a validated category.
    pub fn vcompose(&self, b: DefId, a: DefId) -> DefId {
        self.try_vcompose(b, a).unwrap_or_else(|| {
            panic!("no vertical composite {} . {}", self.def_name(b), self.def_name(a))
        })
    }
    /// `b∘a`; the pair must be horizontally composable in a validated category.
    pub fn hcompose(&self, b: DefId, a: DefId) -> DefId {
        self.try_hcompose(b, a).unwrap_or_else(|| {
            panic!("no horizontal composite {} o {}", self.def_name(b), self.def_name(a))
        })
    }
    /// `1_u ∘ a`.
    pub fn whisker_left(&self, u: MorId, a: DefId) -> DefId {
        self.hcompose(self.id_def(u), a)
    }
    /// `b ∘ 1_v`.
    pub fn whisker_right(&self, b: DefId, v: MorId) -> DefId {
        self.hcompose(b, self.id_def(v))
    }
    /// Composite of a path `u_1∘u_2∘…∘u_k`, applied right to left.
    pub fn compose_path(&self, path: &[MorId]) -> MorId {
        let (last, rest) = path.split_last().expect("nonempty path");
        rest.iter().rev().fold(*last, |acc, &u| self.compose(u, acc))
    }
    /// Composite of a vertical chain `b_1·b_2·…·b_k`, applied right to left.
    pub fn vcompose_chain(&self, chain: &[DefId]) -> DefId {
        let (last, rest) = chain.split_last().expect("nonempty chain");
        rest.iter().rev().fold(*last, |acc, &b| self.vcompose(b, acc))
    }
    /// Horizontal composite `b_1∘…∘b_k`.
    pub fn hcompose_path(&self, path: &[DefId]) -> DefId {
        let (last, rest) = path.split_last().expect("nonempty path");
        rest.iter().rev().fold(*last, |acc, &b| self.hcompose(b, acc))
    }

    pub fn is_discrete(&self) -> bool {
        self.defs().all(|a| self.is_identity_def(a))
    }

    /// Checks every 2-category axiom exhaustively.
    pub fn validate(&self) -> ValidationReport {
        validate::validate_two_category(self)
    }

    /// Same 2-cells, reversed 1-cells: `C^op(x, y) = C(y, x)`.
    pub fn opposite(&self) -> TwoCategory {
        let mut out = self.clone();
        for m in &mut out.mors {
            std::mem::swap(&mut m.src, &mut m.tgt);
        }
        out.hcomp1 = self.hcomp1.iter().map(|(&(u, v), &w)| ((v, u), w)).collect();
        out.hcomp2 = self.hcomp2.iter().map(|(&(b, a), &c)| ((a, b), c)).collect();
        out.homs = self.homs.iter().map(|(&(x, y), l)| ((y, x), l.clone())).collect();
        out
    }

    /// Same 1-cells, reversed 2-cells.
    pub fn co_dual(&self) -> TwoCategory {
        let mut out = self.clone();
        for d in &mut out.defs {
            std::mem::swap(&mut d.src, &mut d.tgt);
        }
        out.vcomp = self.vcomp.iter().map(|(&(b, a), &c)| ((a, b), c)).collect();
        out.homs2 = self.homs2.iter().map(|(&(u, v), l)| ((v, u), l.clone())).collect();
        out
    }

    /// Canonical textual form: every declaration, sorted, one per line.
    pub fn canonical_text(&self) -> String {
        crate::cli::format::write_two_category(self)
    }

    /// Renames every cell; the map must be injective on each cell level.
    pub fn renamed(
        &self,
        obj: impl Fn(&str) -> String,
        mor: impl Fn(&str) -> String,
        def: impl Fn(&str) -> String,
    ) -> Result<TwoCategory, BuildError> {
        let mut out = self.clone();
        for o in &mut out.objects {
            *o = obj(o);
        }
        for m in &mut out.mors {
            m.name = mor(&m.name);
        }
        for d in &mut out.defs {
            d.name = def(&d.name);
        }
        out.reindex_names()?;
        Ok(out)
    }

    fn reindex_names(&mut self) -> Result<(), BuildError> {
        self.obj_by_name.clear();
        self.mor_by_name.clear();
        self.def_by_name.clear();
        for (i, o) in self.objects.iter().enumerate() {
            if self.obj_by_name.insert(o.clone(), ObjId(i as u32)).is_some() {
                return Err(BuildError::DuplicateName(o.clone()));
            }
        }
        for (i, m) in self.mors.iter().enumerate() {
            if self.mor_by_name.insert(m.name.clone(), MorId(i as u32)).is_some() {
                return Err(BuildError::DuplicateName(m.name.clone()));
            }
        }
        for (i, d) in self.defs.iter().enumerate() {
            if self.def_by_name.insert(d.name.clone(), DefId(i as u32)).is_some() {
                return Err(BuildError::DuplicateName(d.name.clone()));
            }
        }
        Ok(())
    }

    pub(crate) fn raw_tables(
        &self,
    ) -> (
        &HashMap<(MorId, MorId), MorId>,
        &HashMap<(DefId, DefId), DefId>,
        &HashMap<(DefId, DefId), DefId>,
    ) {
        (&self.hcomp1, &self.vcomp, &self.hcomp2)
    }

    /// The terminal 2-category on one object named `name`.
    pub fn terminal_named(name: &str) -> TwoCategory {
        let mut b = TwoCategoryBuilder::new();
        b.object(name).expect("fresh name");
        b.build()
    }

    pub fn terminal() -> TwoCategory {
        Self::terminal_named("*")
    }

    /// Object `0`, object `1`, two parallel 1-cells `u, v: 1 → 0` and `a: u ⇒ v`.
    pub fn walking_two_cell() -> TwoCategory {
        let mut b = TwoCategoryBuilder::new();
        b.object("0").unwrap();
        b.object("1").unwrap();
        b.mor("u", "1", "0").unwrap();
        b.mor("v", "1", "0").unwrap();
        b.def("a", "u", "v").unwrap();
        b.build()
    }

    /// The one-object 2-category of the cyclic group of order `n`, identity 2-cells only.
    pub fn suspended_cyclic(n: u32) -> TwoCategory {
        one_object_from_monoidal(&StrictMonoidal::cyclic_discrete(n))
            .expect("cyclic group tensor is strict")
    }

    /// Copy with one horizontal-composition entry overwritten.
    pub fn with_hcomp2_entry(&self, b: DefId, a: DefId, c: DefId) -> TwoCategory {
        let mut out = self.clone();
        out.hcomp2.insert((b, a), c);
        out
    }
}

/// Incremental constructor; identities and their composition rules are implicit.
#[derive(Debug, Default)]
pub struct TwoCategoryBuilder {
    cat: TwoCategoryParts,
}

#[derive(Debug, Default)]
struct TwoCategoryParts {
    objects: Vec<String>,
    mors: Vec<MorData>,
    defs: Vec<DefData>,
    id_mor: Vec<MorId>,
    id_def: Vec<DefId>,
    hcomp1: HashMap<(MorId, MorId), MorId>,
    vcomp: HashMap<(DefId, DefId), DefId>,
    hcomp2: HashMap<(DefId, DefId), DefId>,
    obj_by_name: HashMap<String, ObjId>,
    mor_by_name: HashMap<String, MorId>,
    def_by_name: HashMap<String, DefId>,
}

impl TwoCategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push_mor(&mut self, name: String, src: ObjId, tgt: ObjId) -> Result<MorId, BuildError> {
        let p = &mut self.cat;
        if p.mor_by_name.contains_key(&name) {
            return Err(BuildError::DuplicateName(name));
        }
        let id = MorId(p.mors.len() as u32);
        p.mor_by_name.insert(name.clone(), id);
        p.mors.push(MorData {
            name: name.clone(),
            src,
            tgt,
        });
        let d = self.push_def(identity_def_name(&name), id, id)?;
        self.cat.id_def.push(d);
        Ok(id)
    }

    fn push_def(&mut self, name: String, src: MorId, tgt: MorId) -> Result<DefId, BuildError> {
        let p = &mut self.cat;
        if p.def_by_name.contains_key(&name) {
            return Err(BuildError::DuplicateName(name));
        }
        let id = DefId(p.defs.len() as u32);
        p.def_by_name.insert(name.clone(), id);
        p.defs.push(DefData { name, src, tgt });
        Ok(id)
    }

    pub fn object(&mut self, name: &str) -> Result<ObjId, BuildError> {
        self.object_unchecked(name.to_string(), true)
    }

    fn object_unchecked(&mut self, name: String, check_reserved: bool) -> Result<ObjId, BuildError> {
        if check_reserved && is_reserved(&name) {
            return Err(BuildError::ReservedName(name));
        }
        if self.cat.obj_by_name.contains_key(&name) {
            return Err(BuildError::DuplicateName(name));
        }
        let id = ObjId(self.cat.objects.len() as u32);
        self.cat.obj_by_name.insert(name.clone(), id);
        self.cat.objects.push(name.clone());
        let m = self.push_mor(identity_mor_name(&name), id, id)?;
        self.cat.id_mor.push(m);
        Ok(id)
    }

    fn obj(&self, name: &str) -> Result<ObjId, BuildError> {
        self.cat
            .obj_by_name
            .get(name)
            .copied()
            .ok_or_else(|| BuildError::UnknownName(name.to_string()))
    }
    fn mor_id(&self, name: &str) -> Result<MorId, BuildError> {
        self.cat
            .mor_by_name
            .get(name)
            .copied()
            .ok_or_else(|| BuildError::UnknownName(name.to_string()))
    }
    fn def_id(&self, name: &str) -> Result<DefId, BuildError> {
        self.cat
            .def_by_name
            .get(name)
            .copied()
            .ok_or_else(|| BuildError::UnknownName(name.to_string()))
    }

    /// Declares `name: src → tgt`.
    pub fn mor(&mut self, name: &str, src: &str, tgt: &str) -> Result<MorId, BuildError> {
        if is_reserved(name) {
            return Err(BuildError::ReservedName(name.to_string()));
        }
        let (s, t) = (self.obj(src)?, self.obj(tgt)?);
        self.push_mor(name.to_string(), s, t)
    }

    /// Declares `name: src ⇒ tgt` between 1-cells.
    pub fn def(&mut self, name: &str, src: &str, tgt: &str) -> Result<DefId, BuildError> {
        if is_reserved(name) {
            return Err(BuildError::ReservedName(name.to_string()));
        }
        let (s, t) = (self.mor_id(src)?, self.mor_id(tgt)?);
        self.push_def(name.to_string(), s, t)
    }

    pub fn hcomp1(&mut self, u: &str, v: &str, w: &str) -> Result<(), BuildError> {
        let k = (self.mor_id(u)?, self.mor_id(v)?);
        let w = self.mor_id(w)?;
        self.cat.hcomp1.insert(k, w);
        Ok(())
    }

    pub fn vcomp(&mut self, b: &str, a: &str, c: &str) -> Result<(), BuildError> {
        let k = (self.def_id(b)?, self.def_id(a)?);
        let c = self.def_id(c)?;
        self.cat.vcomp.insert(k, c);
        Ok(())
    }

    pub fn hcomp2(&mut self, b: &str, a: &str, c: &str) -> Result<(), BuildError> {
        let k = (self.def_id(b)?, self.def_id(a)?);
        let c = self.def_id(c)?;
        self.cat.hcomp2.insert(k, c);
        Ok(())
    }

    /// Fills the entries forced by identities, keeping any explicit entry.
    pub fn build(self) -> TwoCategory {
        let p = self.cat;
        let mut c = TwoCategory {
            objects: p.objects,
            mors: p.mors,
            defs: p.defs,
            id_mor: p.id_mor,
            id_def: p.id_def,
            hcomp1: p.hcomp1,
            vcomp: p.vcomp,
            hcomp2: p.hcomp2,
            homs: HashMap::new(),
            homs2: HashMap::new(),
            obj_by_name: p.obj_by_name,
            mor_by_name: p.mor_by_name,
            def_by_name: p.def_by_name,
        };
        for u in 0..c.mors.len() {
            let u = MorId(u as u32);
            let (s, t) = (c.src(u), c.tgt(u));
            c.hcomp1.entry((u, c.id_mor(s))).or_insert(u);
            c.hcomp1.entry((c.id_mor(t), u)).or_insert(u);
        }
        for a in 0..c.defs.len() {
            let a = DefId(a as u32);
            let (s, t) = (c.def_src(a), c.def_tgt(a));
            c.vcomp.entry((a, c.id_def(s))).or_insert(a);
            c.vcomp.entry((c.id_def(t), a)).or_insert(a);
            let (x, y) = (c.src(s), c.tgt(s));
            c.hcomp2.entry((a, c.id_def(c.id_mor(x)))).or_insert(a);
            c.hcomp2.entry((c.id_def(c.id_mor(y)), a)).or_insert(a);
        }
        let pairs: Vec<((MorId, MorId), MorId)> = c.hcomp1.iter().map(|(&k, &w)| (k, w)).collect();
        for ((u, v), w) in pairs {
            c.hcomp2
                .entry((c.id_def(u), c.id_def(v)))
                .or_insert(c.id_def[w.ix()]);
        }
        c.rebuild_homs();
        c
    }
}

impl TwoCategory {
    fn rebuild_homs(&mut self) {
        self.homs.clear();
        self.homs2.clear();
        for (i, m) in self.mors.iter().enumerate() {
            self.homs.entry((m.src, m.tgt)).or_default().push(MorId(i as u32));
        }
        for (i, d) in self.defs.iter().enumerate() {
            self.homs2.entry((d.src, d.tgt)).or_default().push(DefId(i as u32));
        }
    }

    pub(crate) fn from_parts(
        objects: Vec<String>,
        mors: Vec<MorData>,
        defs: Vec<DefData>,
        id_mor: Vec<MorId>,
        id_def: Vec<DefId>,
        hcomp1: HashMap<(MorId, MorId), MorId>,
        vcomp: HashMap<(DefId, DefId), DefId>,
        hcomp2: HashMap<(DefId, DefId), DefId>,
    ) -> Result<TwoCategory, BuildError> {
        let mut c = TwoCategory {
            objects,
            mors,
            defs,
            id_mor,
            id_def,
            hcomp1,
            vcomp,
            hcomp2,
            homs: HashMap::new(),
            homs2: HashMap::new(),
            obj_by_name: HashMap::new(),
            mor_by_name: HashMap::new(),
            def_by_name: HashMap::new(),
        };
        c.reindex_names()?;
        c.rebuild_homs();
        Ok(c)
    }
}

/// Product of a 2-category with a category regarded as a 2-category with identity 2-cells.
pub fn product_with_category(b: &TwoCategory, d: &Category) -> Result<TwoCategory, BuildError> {
    let dd = d.to_two_category()?;
    let sys = ProductSystem { a: b, b: &dd };
    Ok(materialize(&sys)?.cat)
}

/// Binary product of 2-categories.
pub fn product(a: &TwoCategory, b: &TwoCategory) -> Result<TwoCategory, BuildError> {
    Ok(materialize(&ProductSystem { a, b })?.cat)
}

/// A product 2-category with the factor pair behind every cell.
#[derive(Debug, Clone)]
pub struct ProductCells {
    pub cat: TwoCategory,
    pub objs: Vec<(ObjId, ObjId)>,
    pub mors: Vec<(MorId, MorId)>,
    pub defs: Vec<(DefId, DefId)>,
}

pub fn product_cells(a: &TwoCategory, b: &TwoCategory) -> Result<ProductCells, BuildError> {
    let m = materialize(&ProductSystem { a, b })?;
    Ok(ProductCells {
        cat: m.cat,
        objs: m.objs,
        mors: m.mors,
        defs: m.defs,
    })
}

struct ProductSystem<'a> {
    a: &'a TwoCategory,
    b: &'a TwoCategory,
}

impl CellSystem for ProductSystem<'_> {
    type Obj = (ObjId, ObjId);
    type Mor = (MorId, MorId);
    type Def = (DefId, DefId);

    fn objects(&self) -> Vec<Self::Obj> {
        let mut v = Vec::new();
        for x in self.a.objects() {
            for y in self.b.objects() {
                v.push((x, y));
            }
        }
        v
    }
    fn hom(&self, s: &Self::Obj, t: &Self::Obj) -> Vec<Self::Mor> {
        let mut v = Vec::new();
        for &u in self.a.hom(s.0, t.0) {
            for &w in self.b.hom(s.1, t.1) {
                v.push((u, w));
            }
        }
        v
    }
    fn hom2(&self, f: &Self::Mor, g: &Self::Mor) -> Vec<Self::Def> {
        let mut v = Vec::new();
        for &a in self.a.hom2(f.0, g.0) {
            for &b in self.b.hom2(f.1, g.1) {
                v.push((a, b));
            }
        }
        v
    }
    fn id_mor(&self, x: &Self::Obj) -> Self::Mor {
        (self.a.id_mor(x.0), self.b.id_mor(x.1))
    }
    fn id_def(&self, f: &Self::Mor) -> Self::Def {
        (self.a.id_def(f.0), self.b.id_def(f.1))
    }
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor {
        (self.a.compose(f.0, g.0), self.b.compose(f.1, g.1))
    }
    fn vcompose(&self, p: &Self::Def, q: &Self::Def) -> Self::Def {
        (self.a.vcompose(p.0, q.0), self.b.vcompose(p.1, q.1))
    }
    fn hcompose(&self, p: &Self::Def, q: &Self::Def) -> Self::Def {
        (self.a.hcompose(p.0, q.0), self.b.hcompose(p.1, q.1))
    }
    fn obj_name(&self, x: &Self::Obj) -> String {
        format!("({},{})", self.a.obj_name(x.0), self.b.obj_name(x.1))
    }
    fn mor_name(&self, f: &Self::Mor) -> String {
        format!("({},{})", self.a.mor_name(f.0), self.b.mor_name(f.1))
    }
    fn def_name(&self, p: &Self::Def) -> String {
        format!("({},{})", self.a.def_name(p.0), self.b.def_name(p.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::ViolationKind;

    #[test]
    fn terminal_and_walking_cell_validate() {
        assert!(TwoCategory::terminal().validate().is_ok());
        let e = TwoCategory::walking_two_cell();
        assert!(e.validate().is_ok(), "{}", e.validate());
        assert_eq!(e.num_objects(), 2);
        assert_eq!(e.num_mors(), 4);
        assert_eq!(e.num_defs(), 5);
    }

    #[test]
    fn redirected_whiskering_is_an_interchange_violation() {
        let e = TwoCategory::walking_two_cell();
        let one0 = e.id_def(e.id_mor(e.find_obj("0").unwrap()));
        let a = e.find_def("a").unwrap();
        let idu = e.id_def(e.find_mor("u").unwrap());
        let bad = e.with_hcomp2_entry(one0, a, idu);
        let r = bad.validate();
        assert!(r.has(ViolationKind::InterchangeViolation), "{r}");
    }

    #[test]
    fn opposite_is_an_involution() {
        let e = TwoCategory::walking_two_cell();
        let o = e.opposite();
        let (z, one) = (o.find_obj("0").unwrap(), o.find_obj("1").unwrap());
        assert_eq!(o.hom(z, one).len(), 2);
        assert!(o.hom(one, z).is_empty());
        assert!(o.validate().is_ok());
        assert_eq!(o.opposite().canonical_text(), e.canonical_text());
        let t = TwoCategory::terminal();
        assert_eq!(t.opposite().canonical_text(), t.canonical_text());
    }

    #[test]
    fn product_with_interval() {
        let e = TwoCategory::walking_two_cell();
        let p = product_with_category(&e, &Category::ordinal(1)).unwrap();
        assert_eq!(p.num_objects(), 4);
        assert!(p.validate().is_ok());
        // Oracle: sum over object pairs of |E(b,b')| * |[1](i,j)|.
        let i1 = Category::ordinal(1);
        let mut count = 0;
        for b in e.objects() {
            for b2 in e.objects() {
                for i in i1.objects() {
                    for j in i1.objects() {
                        count += e.hom(b, b2).len() * i1.hom(i, j).len();
                    }
                }
            }
        }
        assert_eq!(p.num_mors(), count);
        assert_eq!(count, 12);
        let t = product_with_category(&TwoCategory::terminal(), &i1).unwrap();
        assert_eq!((t.num_objects(), t.num_mors(), t.num_defs()), (2, 3, 3));
    }
}
