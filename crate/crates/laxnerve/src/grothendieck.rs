//! Lax 2-diagrams `C^op ⇝ 2Cat` and their Grothendieck construction `∫_C F`, with the
//! projection `π`, the fibre embedding `j`, and the pair `i, p` relating `F_z` to `z//π`.

use std::collections::HashMap;

use thiserror::Error;

use crate::fibres::{fibre_over, fibre_under, Fibre, FibreDeformation, FibreError, FibreMorphism, StrictFunctor};
use crate::nerves::LaxSimplex;
use crate::report::{ValidationReport, ViolationKind::*};
use crate::twocat::{
    materialize, one_object_from_monoidal, BuildError, CellSystem, DefId, LaxTransformation, MorId, ObjId,
    RightAction, TransformationKind, TwoCategory, TwoFunctor,
};

#[derive(Debug, Error)]
pub enum GrothendieckError {
    #[error("invalid 2-diagram:\n{0}")]
    DiagramInvalid(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("invalid action:\n{0}")]
    ActionInvalid(String),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Fibre(#[from] FibreError),
}

/// A normal lax functor `C^op ⇝ 2Cat` whose structure transformations are 2-natural.
#[derive(Debug, Clone)]
pub struct TwoDiagram {
    pub base: TwoCategory,
    /// `F_x`, indexed by objects of the base.
    pub fibres: Vec<TwoCategory>,
    /// `u*: F_y → F_x` for `u: x → y`, indexed by 1-cells of the base.
    pub restrict: Vec<TwoFunctor>,
    /// `α*_a: u*a → v*a` in `F_x` for `α: u ⇒ v`, indexed by 2-cell, then by object `a` of `F_y`.
    pub deform: Vec<Vec<MorId>>,
    /// `ζ_{u,v,a}: v*u*a → (u∘v)*a` in `F_{src v}`, keyed by composable `(u, v)`, indexed by `a`.
    pub zeta: HashMap<(MorId, MorId), Vec<MorId>>,
}

impl TwoDiagram {
    pub(crate) fn fib(&self, x: ObjId) -> &TwoCategory {
        &self.fibres[x.ix()]
    }
    /// The fibre in which `u*` lands.
    fn dom_fib(&self, u: MorId) -> &TwoCategory {
        self.fib(self.base.src(u))
    }
    pub(crate) fn star(&self, u: MorId) -> &TwoFunctor {
        &self.restrict[u.ix()]
    }
    pub(crate) fn alpha_at(&self, alpha: DefId, a: ObjId) -> MorId {
        self.deform[alpha.ix()][a.ix()]
    }
    pub(crate) fn zeta_at(&self, u: MorId, v: MorId, a: ObjId) -> MorId {
        self.zeta[&(u, v)][a.ix()]
    }

    /// The diagram with constant value `fibre`: identity restrictions, identity constraints.
    pub fn constant(base: &TwoCategory, fibre: &TwoCategory) -> TwoDiagram {
        let id = TwoFunctor::identity(fibre);
        let ids: Vec<MorId> = fibre.objects().map(|a| fibre.id_mor(a)).collect();
        TwoDiagram {
            base: base.clone(),
            fibres: vec![fibre.clone(); base.num_objects()],
            restrict: vec![id; base.num_mors()],
            deform: vec![ids.clone(); base.num_defs()],
            zeta: crate::twocat::composable_pairs(base).into_iter().map(|p| (p, ids.clone())).collect(),
        }
    }
}

/// Checks typing, 2-naturality, and the four axiom families at every instance.
pub fn validate_two_diagram(d: &TwoDiagram) -> ValidationReport {
    let mut r = ValidationReport::new();
    let c = &d.base;
    if d.fibres.len() != c.num_objects() || d.restrict.len() != c.num_mors() || d.deform.len() != c.num_defs() {
        r.push(MissingTableEntry, "diagram data is not total over the base");
        return r;
    }
    let pairs = crate::twocat::composable_pairs(c);
    for &(u, v) in &pairs {
        let n = d.fib(c.tgt(u)).num_objects();
        if d.zeta.get(&(u, v)).is_none_or(|z| z.len() != n) {
            r.push(MissingTableEntry, format!("zeta at ({}, {})", c.mor_name(u), c.mor_name(v)));
        }
    }
    for u in c.mors() {
        r.extend(d.star(u).validate(d.fib(c.tgt(u)), d.dom_fib(u)), &format!("{}*", c.mor_name(u)));
    }
    for al in c.defs() {
        let u = c.def_src(al);
        if d.deform[al.ix()].len() != d.fib(c.tgt(u)).num_objects() {
            r.push(MissingTableEntry, format!("{}* components", c.def_name(al)));
        }
    }
    if !r.is_ok() {
        return r;
    }

    // Typing and 2-naturality of every α* and ζ.
    for al in c.defs() {
        let (u, v) = (c.def_src(al), c.def_tgt(al));
        let comps: Vec<MorId> = d.deform[al.ix()].clone();
        let ctx = format!("{}*", c.def_name(al));
        check_two_natural(&mut r, d.fib(c.tgt(u)), d.dom_fib(u), d.star(u), d.star(v), &comps, &ctx);
    }
    for &(u, v) in &pairs {
        let (fz, fx) = (d.fib(c.tgt(u)), d.fib(c.src(v)));
        let vu = d.star(v).after(d.star(u));
        let comps = d.zeta[&(u, v)].clone();
        let ctx = format!("zeta_({}, {})", c.mor_name(u), c.mor_name(v));
        check_two_natural(&mut r, fz, fx, &vu, d.star(c.compose(u, v)), &comps, &ctx);
    }
    if !r.is_ok() {
        return r;
    }

    // Units.
    for x in c.objects() {
        r.require(*d.star(c.id_mor(x)) == TwoFunctor::identity(d.fib(x)), UnitViolation, || {
            format!("1_{}* is not the identity", c.obj_name(x))
        });
    }
    for u in c.mors() {
        let fx = d.dom_fib(u);
        let ok = d.deform[c.id_def(u).ix()].iter().all(|&m| fx.is_identity_mor(m));
        r.require(ok, UnitViolation, || format!("(1_{})* is not an identity", c.mor_name(u)));
    }
    for &(u, v) in &pairs {
        if c.is_identity_mor(u) || c.is_identity_mor(v) {
            let fx = d.fib(c.src(v));
            let ok = d.zeta[&(u, v)].iter().all(|&m| fx.is_identity_mor(m));
            r.require(ok, UnitViolation, || {
                format!("zeta_({}, {}) is not an identity", c.mor_name(u), c.mor_name(v))
            });
        }
    }

    // Vertical functoriality (α'α)* = α'*∘α*.
    for al in c.defs() {
        for al2 in c.defs().filter(|&b| c.def_src(b) == c.def_tgt(al)) {
            let fx = d.dom_fib(c.def_src(al));
            let comp = c.vcompose(al2, al);
            let ok = d
                .fib(c.tgt(c.def_src(al)))
                .objects()
                .all(|a| d.alpha_at(comp, a) == fx.compose(d.alpha_at(al2, a), d.alpha_at(al, a)));
            r.require(ok, VerticalFunctorialityViolation, || {
                format!("({} . {})*", c.def_name(al2), c.def_name(al))
            });
        }
    }

    // Horizontal square: ζ_{v',u'}·(α*β*) = (β∘α)*·ζ_{v,u} for α: u ⇒ u', β: v ⇒ v', v∘u.
    for al in c.defs() {
        let (u, u2) = (c.def_src(al), c.def_tgt(al));
        for be in c.defs().filter(|&b| c.src(c.def_src(b)) == c.tgt(u)) {
            let (v, v2) = (c.def_src(be), c.def_tgt(be));
            let fx = d.dom_fib(u);
            let ba = c.hcompose(be, al);
            let ok = d.fib(c.tgt(v)).objects().all(|a| {
                let lhs = fx.compose_path(&[
                    d.zeta_at(v2, u2, a),
                    d.alpha_at(al, d.star(v2).on_obj(a)),
                    d.star(u).on_mor(d.alpha_at(be, a)),
                ]);
                let rhs = fx.compose(d.alpha_at(ba, a), d.zeta_at(v, u, a));
                lhs == rhs
            });
            r.require(ok, HorizontalSquareViolation, || {
                format!("({}, {})", c.def_name(be), c.def_name(al))
            });
        }
    }

    // Cocycle for x -u-> y -v-> z -w-> t.
    for &(v, u) in &pairs {
        for w in c.mors().filter(|&w| c.src(w) == c.tgt(v)) {
            let fx = d.dom_fib(u);
            let (vu, wv) = (c.compose(v, u), c.compose(w, v));
            let ok = d.fib(c.tgt(w)).objects().all(|a| {
                let lhs = fx.compose(d.zeta_at(w, vu, a), d.zeta_at(v, u, d.star(w).on_obj(a)));
                let rhs = fx.compose(d.zeta_at(wv, u, a), d.star(u).on_mor(d.zeta_at(w, v, a)));
                lhs == rhs
            });
            r.require(ok, ZetaCocycleViolation, || {
                format!("({}, {}, {})", c.mor_name(w), c.mor_name(v), c.mor_name(u))
            });
        }
    }
    r
}

/// `t: G ⇒ H` between 2-functors `A → B`, given by 1-cell components, is well typed and 2-natural.
fn check_two_natural(
    r: &mut ValidationReport,
    a: &TwoCategory,
    b: &TwoCategory,
    g: &TwoFunctor,
    h: &TwoFunctor,
    comps: &[MorId],
    ctx: &str,
) {
    for x in a.objects() {
        let t = comps[x.ix()];
        r.require(
            t.ix() < b.num_mors() && b.src(t) == g.on_obj(x) && b.tgt(t) == h.on_obj(x),
            BoundaryMismatch,
            || format!("{ctx} at {}", a.obj_name(x)),
        );
    }
    if !r.is_ok() {
        return;
    }
    for f in a.mors() {
        let (x, y) = (a.src(f), a.tgt(f));
        r.require(
            b.compose(comps[y.ix()], g.on_mor(f)) == b.compose(h.on_mor(f), comps[x.ix()]),
            NaturalityViolation,
            || format!("{ctx} at 1-cell {}", a.mor_name(f)),
        );
    }
    if !r.is_ok() {
        return;
    }
    for p in a.defs() {
        let f = a.def_src(p);
        let (x, y) = (a.src(f), a.tgt(f));
        r.require(
            b.whisker_left(comps[y.ix()], g.on_def(p)) == b.whisker_right(h.on_def(p), comps[x.ix()]),
            NaturalityViolation,
            || format!("{ctx} at 2-cell {}", a.def_name(p)),
        );
    }
}

// ---------------------------------------------------------------------------
// The total 2-category.

/// An object `(a, x)` with `a` in `F_x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalObject {
    pub x: ObjId,
    pub a: ObjId,
}

/// A 1-cell `(f, u): (b, y) → (a, x)` with `u: y → x` and `f: b → u*a` in `F_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TotalMorphism {
    pub src: TotalObject,
    pub tgt: TotalObject,
    pub u: MorId,
    pub f: MorId,
}

/// A 2-cell `(φ, α): (f, u) ⇒ (f', u')` with `α: u ⇒ u'` and `φ: α*_a∘f ⇒ f'` in `F_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TotalDeformation {
    pub src: TotalMorphism,
    pub tgt: TotalMorphism,
    pub alpha: DefId,
    pub phi: DefId,
}

/// `∫_C F` with the structured key of every cell; vector index is the cell id.
#[derive(Debug, Clone)]
pub struct Grothendieck {
    pub diagram: TwoDiagram,
    pub cat: TwoCategory,
    pub objects: Vec<TotalObject>,
    pub morphisms: Vec<TotalMorphism>,
    pub deformations: Vec<TotalDeformation>,
    obj_ix: HashMap<TotalObject, ObjId>,
    mor_ix: HashMap<TotalMorphism, MorId>,
    def_ix: HashMap<TotalDeformation, DefId>,
}

impl Grothendieck {
    pub fn find_object(&self, o: &TotalObject) -> Option<ObjId> {
        self.obj_ix.get(o).copied()
    }
    pub fn find_morphism(&self, m: &TotalMorphism) -> Option<MorId> {
        self.mor_ix.get(m).copied()
    }
    pub fn find_deformation(&self, d: &TotalDeformation) -> Option<DefId> {
        self.def_ix.get(d).copied()
    }
}

struct TotalSystem<'a> {
    d: &'a TwoDiagram,
}

impl CellSystem for TotalSystem<'_> {
    type Obj = TotalObject;
    type Mor = TotalMorphism;
    type Def = TotalDeformation;

    fn objects(&self) -> Vec<TotalObject> {
        self.d
            .base
            .objects()
            .flat_map(|x| self.d.fib(x).objects().map(move |a| TotalObject { x, a }))
            .collect()
    }
    fn hom(&self, s: &TotalObject, t: &TotalObject) -> Vec<TotalMorphism> {
        let d = self.d;
        let fy = d.fib(s.x);
        let mut out = Vec::new();
        for &u in d.base.hom(s.x, t.x) {
            for &f in fy.hom(s.a, d.star(u).on_obj(t.a)) {
                out.push(TotalMorphism {
                    src: *s,
                    tgt: *t,
                    u,
                    f,
                });
            }
        }
        out
    }
    fn hom2(&self, m: &TotalMorphism, n: &TotalMorphism) -> Vec<TotalDeformation> {
        let d = self.d;
        let fy = d.fib(m.src.x);
        let mut out = Vec::new();
        for &alpha in d.base.hom2(m.u, n.u) {
            let moved = fy.compose(d.alpha_at(alpha, m.tgt.a), m.f);
            for &phi in fy.hom2(moved, n.f) {
                out.push(TotalDeformation {
                    src: *m,
                    tgt: *n,
                    alpha,
                    phi,
                });
            }
        }
        out
    }
    fn id_mor(&self, x: &TotalObject) -> TotalMorphism {
        TotalMorphism {
            src: *x,
            tgt: *x,
            u: self.d.base.id_mor(x.x),
            f: self.d.fib(x.x).id_mor(x.a),
        }
    }
    fn id_def(&self, m: &TotalMorphism) -> TotalDeformation {
        TotalDeformation {
            src: *m,
            tgt: *m,
            alpha: self.d.base.id_def(m.u),
            phi: self.d.fib(m.src.x).id_def(m.f),
        }
    }
    /// `(f, u)∘(g, v) = (ζ_a∘v*f∘g, u∘v)`.
    fn compose(&self, f: &TotalMorphism, g: &TotalMorphism) -> TotalMorphism {
        let d = self.d;
        let fz = d.fib(g.src.x);
        TotalMorphism {
            src: g.src,
            tgt: f.tgt,
            u: d.base.compose(f.u, g.u),
            f: fz.compose_path(&[d.zeta_at(f.u, g.u, f.tgt.a), d.star(g.u).on_mor(f.f), g.f]),
        }
    }
    /// `(φ', α')·(φ, α) = (φ'(1∘φ), α'α)`.
    fn vcompose(&self, p: &TotalDeformation, q: &TotalDeformation) -> TotalDeformation {
        let d = self.d;
        let fy = d.fib(q.src.src.x);
        TotalDeformation {
            src: q.src,
            tgt: p.tgt,
            alpha: d.base.vcompose(p.alpha, q.alpha),
            phi: fy.vcompose(p.phi, fy.whisker_left(d.alpha_at(p.alpha, q.src.tgt.a), q.phi)),
        }
    }
    /// `(φ, α)∘(ψ, β) = ((1∘ψ)(1∘v*φ∘1), α∘β)`.
    fn hcompose(&self, p: &TotalDeformation, q: &TotalDeformation) -> TotalDeformation {
        let d = self.d;
        let fz = d.fib(q.src.src.x);
        let (f2, u2) = (p.tgt.f, p.tgt.u);
        let (v, v2, g) = (q.src.u, q.tgt.u, q.src.f);
        let a = p.src.tgt.a;
        let zeta2 = d.zeta_at(u2, v2, a);
        let left = fz.compose(zeta2, d.star(v2).on_mor(f2));
        let middle = fz.compose(zeta2, d.alpha_at(q.alpha, d.star(u2).on_obj(a)));
        let step1 = fz.whisker_right(fz.whisker_left(middle, d.star(v).on_def(p.phi)), g);
        let step2 = fz.whisker_left(left, q.phi);
        TotalDeformation {
            src: self.compose(&p.src, &q.src),
            tgt: self.compose(&p.tgt, &q.tgt),
            alpha: d.base.hcompose(p.alpha, q.alpha),
            phi: fz.vcompose(step2, step1),
        }
    }
    fn obj_name(&self, o: &TotalObject) -> String {
        format!("({},{})", self.d.fib(o.x).obj_name(o.a), self.d.base.obj_name(o.x))
    }
    fn mor_name(&self, m: &TotalMorphism) -> String {
        format!(
            "({},{}):{}->{}",
            self.d.fib(m.src.x).mor_name(m.f),
            self.d.base.mor_name(m.u),
            self.obj_name(&m.src),
            self.obj_name(&m.tgt)
        )
    }
    fn def_name(&self, p: &TotalDeformation) -> String {
        format!(
            "({},{}):{}=>{}",
            self.d.fib(p.src.src.x).def_name(p.phi),
            self.d.base.def_name(p.alpha),
            self.mor_name(&p.src),
            self.mor_name(&p.tgt)
        )
    }
}

pub fn grothendieck(d: &TwoDiagram) -> Result<Grothendieck, GrothendieckError> {
    let r = validate_two_diagram(d);
    if !r.is_ok() {
        return Err(GrothendieckError::DiagramInvalid(r.to_string()));
    }
    let m = materialize(&TotalSystem { d })?;
    Ok(Grothendieck {
        diagram: d.clone(),
        cat: m.cat,
        objects: m.objs,
        morphisms: m.mors,
        deformations: m.defs,
        obj_ix: m.obj_ix,
        mor_ix: m.mor_ix,
        def_ix: m.def_ix,
    })
}

/// `π: ∫_C F → C`, `(φ, α) ↦ α`.
pub fn projection(g: &Grothendieck) -> TwoFunctor {
    TwoFunctor {
        obj: g.objects.iter().map(|o| o.x).collect(),
        mor: g.morphisms.iter().map(|m| m.u).collect(),
        def: g.deformations.iter().map(|p| p.alpha).collect(),
    }
}

/// `j: F_z → ∫_C F`, `φ ↦ (φ, 1_{1_z})`.
pub fn fibre_embedding(g: &Grothendieck, z: ObjId) -> Result<TwoFunctor, GrothendieckError> {
    let d = &g.diagram;
    if z.ix() >= d.base.num_objects() {
        return Err(GrothendieckError::UnknownObject(format!("#{}", z.0)));
    }
    let fz = d.fib(z);
    let one = d.base.id_mor(z);
    let obj = |a: ObjId| TotalObject { x: z, a };
    let mor = |f: MorId| TotalMorphism {
        src: obj(fz.src(f)),
        tgt: obj(fz.tgt(f)),
        u: one,
        f,
    };
    Ok(TwoFunctor {
        obj: fz.objects().map(|a| g.obj_ix[&obj(a)]).collect(),
        mor: fz.mors().map(|f| g.mor_ix[&mor(f)]).collect(),
        def: fz
            .defs()
            .map(|p| {
                g.def_ix[&TotalDeformation {
                    src: mor(fz.def_src(p)),
                    tgt: mor(fz.def_tgt(p)),
                    alpha: d.base.id_def(one),
                    phi: p,
                }]
            })
            .collect(),
    })
}

// ---------------------------------------------------------------------------
// Hom diagrams and the comparison with comma 2-categories.

/// `C(−, x)`, with the cell of `C` behind every cell of each `F_y = C(y, x)`.
#[derive(Debug, Clone)]
pub struct HomDiagram {
    pub diagram: TwoDiagram,
    /// Per object `y`: the 1-cell `y → x` behind each object of `F_y`.
    pub obj_cell: Vec<Vec<MorId>>,
    /// Per object `y`: the 2-cell behind each 1-cell of `F_y`.
    pub mor_cell: Vec<Vec<DefId>>,
}

/// The hom-category `C(y, x)` as a 2-category with identity 2-cells only.
struct HomSystem<'a> {
    c: &'a TwoCategory,
    y: ObjId,
    x: ObjId,
}

impl CellSystem for HomSystem<'_> {
    type Obj = MorId;
    type Mor = DefId;
    type Def = DefId;

    fn objects(&self) -> Vec<MorId> {
        self.c.hom(self.y, self.x).to_vec()
    }
    fn hom(&self, s: &MorId, t: &MorId) -> Vec<DefId> {
        self.c.hom2(*s, *t).to_vec()
    }
    fn hom2(&self, f: &DefId, g: &DefId) -> Vec<DefId> {
        if f == g {
            vec![*f]
        } else {
            Vec::new()
        }
    }
    fn id_mor(&self, x: &MorId) -> DefId {
        self.c.id_def(*x)
    }
    fn id_def(&self, f: &DefId) -> DefId {
        *f
    }
    fn compose(&self, f: &DefId, g: &DefId) -> DefId {
        self.c.vcompose(*f, *g)
    }
    fn vcompose(&self, p: &DefId, _q: &DefId) -> DefId {
        *p
    }
    fn hcompose(&self, p: &DefId, q: &DefId) -> DefId {
        self.c.vcompose(*p, *q)
    }
    fn obj_name(&self, x: &MorId) -> String {
        self.c.mor_name(*x).to_string()
    }
    fn mor_name(&self, f: &DefId) -> String {
        self.c.def_name(*f).to_string()
    }
    fn def_name(&self, p: &DefId) -> String {
        format!("={}", self.c.def_name(*p))
    }
}

/// `C(−, x)`: `u*` precomposes with `u`, `α*_a = 1_a∘α`, and `ζ` is the identity.
pub fn hom_diagram(c: &TwoCategory, x: ObjId) -> Result<HomDiagram, GrothendieckError> {
    if x.ix() >= c.num_objects() {
        return Err(GrothendieckError::UnknownObject(format!("#{}", x.0)));
    }
    let mut fibres = Vec::new();
    let mut obj_cell = Vec::new();
    let mut mor_cell = Vec::new();
    let mut obj_of: Vec<HashMap<MorId, ObjId>> = Vec::new();
    let mut mor_of: Vec<HashMap<DefId, MorId>> = Vec::new();
    for y in c.objects() {
        let m = materialize(&HomSystem { c, y, x })?;
        obj_of.push(m.obj_ix.clone());
        mor_of.push(m.mor_ix.clone());
        obj_cell.push(m.objs);
        mor_cell.push(m.mors);
        fibres.push(m.cat);
    }
    let restrict = c
        .mors()
        .map(|u| {
            let (z, y) = (c.src(u), c.tgt(u));
            let (fy, fz) = (&fibres[y.ix()], &fibres[z.ix()]);
            let on_mor = |f: MorId| mor_of[z.ix()][&c.whisker_right(mor_cell[y.ix()][f.ix()], u)];
            TwoFunctor {
                obj: fy.objects().map(|a| obj_of[z.ix()][&c.compose(obj_cell[y.ix()][a.ix()], u)]).collect(),
                mor: fy.mors().map(on_mor).collect(),
                def: fy.defs().map(|p| fz.id_def(on_mor(fy.def_src(p)))).collect(),
            }
        })
        .collect();
    let deform = c
        .defs()
        .map(|al| {
            let u = c.def_src(al);
            let (z, y) = (c.src(u), c.tgt(u));
            fibres[y.ix()]
                .objects()
                .map(|a| mor_of[z.ix()][&c.whisker_left(obj_cell[y.ix()][a.ix()], al)])
                .collect()
        })
        .collect();
    let zeta = crate::twocat::composable_pairs(c)
        .into_iter()
        .map(|(u, v)| {
            let (w, y) = (c.src(v), c.tgt(u));
            let fw = &fibres[w.ix()];
            let comps = fibres[y.ix()]
                .objects()
                .map(|a| {
                    let target = obj_of[w.ix()][&c.compose(obj_cell[y.ix()][a.ix()], c.compose(u, v))];
                    fw.id_mor(target)
                })
                .collect();
            ((u, v), comps)
        })
        .collect();
    Ok(HomDiagram {
        diagram: TwoDiagram {
            base: c.clone(),
            fibres,
            restrict,
            deform,
            zeta,
        },
        obj_cell,
        mor_cell,
    })
}

/// The cellwise isomorphism `∫_C C(−, x) ≅ (C^co//x)^co`.
///
/// A 1-cell `(f, u)` of the total 2-category carries `f: b ⇒ a∘u`, while a 1-cell of the
/// comma over `x` carries a 2-cell `a∘u ⇒ b`; reversing 2-cells of `C` reconciles the two.
#[derive(Debug, Clone)]
pub struct CommaComparison {
    pub total: Grothendieck,
    /// `C^co//x`, the fibre under `x` of the identity of `C^co`.
    pub comma: Fibre,
    /// `(C^co//x)^co`, the codomain of `iso`.
    pub target: TwoCategory,
    pub iso: TwoFunctor,
}

impl CommaComparison {
    /// `iso` is a 2-functor and bijective on every cell level.
    pub fn check(&self) -> ValidationReport {
        let mut r = self.iso.validate(&self.total.cat, &self.target);
        let bijective = |v: Vec<u32>, n: usize| {
            let mut v = v;
            v.sort_unstable();
            v.dedup();
            v.len() == n && n == v.len()
        };
        let t = &self.target;
        let ok = self.iso.obj.len() == t.num_objects()
            && self.iso.mor.len() == t.num_mors()
            && self.iso.def.len() == t.num_defs()
            && bijective(self.iso.obj.iter().map(|x| x.0).collect(), t.num_objects())
            && bijective(self.iso.mor.iter().map(|x| x.0).collect(), t.num_mors())
            && bijective(self.iso.def.iter().map(|x| x.0).collect(), t.num_defs());
        r.require(ok, FunctorViolation, || "comparison is not bijective on cells".into());
        r
    }
}

pub fn comma_comparison(c: &TwoCategory, x: ObjId, budget: u64) -> Result<CommaComparison, GrothendieckError> {
    let hd = hom_diagram(c, x)?;
    let total = grothendieck(&hd.diagram)?;
    let c_co = c.co_dual();
    let id = TwoFunctor::identity(&c_co);
    let comma = fibre_under(&StrictFunctor::new(&c_co, &c_co, &id)?, x, budget)?;
    let target = comma.cat.co_dual();

    let obj_image = |o: &TotalObject| -> ObjId {
        let a = hd.obj_cell[o.x.ix()][o.a.ix()];
        let w = LaxSimplex::from_parts(&c_co, vec![x, o.x], |_, _| a, |_, _, _| unreachable!());
        comma.find_object(o.x, &w).expect("every (y, a: y → x) is an object of the comma")
    };
    let obj: Vec<ObjId> = total.objects.iter().map(obj_image).collect();
    let mor_image = |m: &TotalMorphism| -> MorId {
        comma
            .find_morphism(&FibreMorphism {
                src: obj_image(&m.src),
                tgt: obj_image(&m.tgt),
                u: m.u,
                betas: vec![hd.mor_cell[m.src.x.ix()][m.f.ix()]],
            })
            .expect("(f, u) is a 1-cell of the comma")
    };
    let mor: Vec<MorId> = total.morphisms.iter().map(mor_image).collect();
    // A 2-cell (m ⇒ m') of the total 2-category is a 2-cell m' ⇒ m of the comma over C^co.
    let def = total
        .deformations
        .iter()
        .map(|p| {
            comma
                .find_deformation(&FibreDeformation {
                    src: mor_image(&p.tgt),
                    tgt: mor_image(&p.src),
                    alpha: p.alpha,
                })
                .expect("(φ, α) is a 2-cell of the comma")
        })
        .collect();
    Ok(CommaComparison {
        total,
        comma,
        target,
        iso: TwoFunctor { obj, mor, def },
    })
}

// ---------------------------------------------------------------------------
// The pair i, p for the homotopy fibre of π.

/// `i: F_z → z//π`, `p: z//π → F_z` with `p∘i = 1`, and the oplax `θ: i∘p ⇒ 1`.
#[derive(Debug, Clone)]
pub struct FibreComparison {
    pub total: Grothendieck,
    pub z: ObjId,
    /// `z//π`.
    pub comma: Fibre,
    pub i: TwoFunctor,
    pub p: TwoFunctor,
    pub theta: LaxTransformation,
}

impl FibreComparison {
    pub fn check(&self) -> ValidationReport {
        let fz = &self.total.diagram.fibres[self.z.ix()];
        let s = &self.comma.cat;
        let mut r = ValidationReport::new();
        r.extend(self.i.validate(fz, s), "i");
        r.extend(self.p.validate(s, fz), "p");
        if !r.is_ok() {
            return r;
        }
        r.require(self.p.after(&self.i) == TwoFunctor::identity(fz), FunctorViolation, || {
            "p i is not the identity".into()
        });
        let ip = self.i.after(&self.p).to_lax(s, s);
        let id = TwoFunctor::identity(s).to_lax(s, s);
        r.extend(self.theta.validate(s, s, &ip, &id), "theta");
        r
    }
}

pub fn iota_p_pair(d: &TwoDiagram, z: ObjId, budget: u64) -> Result<FibreComparison, GrothendieckError> {
    let total = grothendieck(d)?;
    if z.ix() >= d.base.num_objects() {
        return Err(GrothendieckError::UnknownObject(format!("#{}", z.0)));
    }
    let c = &d.base;
    let pi = projection(&total);
    let comma = fibre_over(&StrictFunctor::new(&total.cat, c, &pi)?, z, budget)?;
    let j = fibre_embedding(&total, z)?;
    let fz = d.fib(z);
    let one = c.id_mor(z);
    let at_z = LaxSimplex::from_parts(c, vec![z, z], |_, _| one, |_, _, _| unreachable!());

    let i_obj: Vec<ObjId> =
        fz.objects().map(|a| comma.find_object(j.on_obj(a), &at_z).expect("(a, z, 1_z)")).collect();
    let i_mor: Vec<MorId> = fz
        .mors()
        .map(|f| {
            comma
                .find_morphism(&FibreMorphism {
                    src: i_obj[fz.src(f).ix()],
                    tgt: i_obj[fz.tgt(f).ix()],
                    u: j.on_mor(f),
                    betas: vec![c.id_def(one)],
                })
                .expect("(f, 1_z, 1)")
        })
        .collect();
    let i_def = fz
        .defs()
        .map(|p| {
            comma
                .find_deformation(&FibreDeformation {
                    src: i_mor[fz.def_src(p).ix()],
                    tgt: i_mor[fz.def_tgt(p).ix()],
                    alpha: j.on_def(p),
                })
                .expect("(φ, 1)")
        })
        .collect();
    let i = TwoFunctor {
        obj: i_obj,
        mor: i_mor,
        def: i_def,
    };

    // p(a, x, v) = v*a; p(f, u, β) = β*_{a'}∘ζ_{a'}∘v*f; p(φ, α) = 1∘v*φ.
    let decode_obj = |k: ObjId| {
        let o = &comma.objects[k.ix()];
        (total.objects[o.x.ix()], o.witness.mor(0, 1))
    };
    let p_of_mor = |m: &FibreMorphism| -> MorId {
        let (_, v) = decode_obj(m.src);
        let (ta, _) = decode_obj(m.tgt);
        let tm = total.morphisms[m.u.ix()];
        fz.compose_path(&[d.alpha_at(m.betas[0], ta.a), d.zeta_at(tm.u, v, ta.a), d.star(v).on_mor(tm.f)])
    };
    let p = TwoFunctor {
        obj: comma.objects.iter().enumerate().map(|(k, _)| {
            let (o, v) = decode_obj(ObjId(k as u32));
            d.star(v).on_obj(o.a)
        })
        .collect(),
        mor: comma.morphisms.iter().map(p_of_mor).collect(),
        def: comma
            .deformations
            .iter()
            .map(|dd| {
                let m2 = &comma.morphisms[dd.tgt.ix()];
                let (_, v) = decode_obj(m2.src);
                let (ta, _) = decode_obj(m2.tgt);
                let tm2 = total.morphisms[m2.u.ix()];
                let phi = total.deformations[dd.alpha.ix()].phi;
                let head = fz.compose(d.alpha_at(m2.betas[0], ta.a), d.zeta_at(tm2.u, v, ta.a));
                fz.whisker_left(head, d.star(v).on_def(phi))
            })
            .collect(),
    };

    // θ_{(a,x,v)} = (1_{v*a}, v, 1_v): (v*a, z, 1_z) → (a, x, v); θ_{(f,u,β)} = (1, β).
    let ip = i.after(&p);
    let at_obj: Vec<MorId> = (0..comma.objects.len())
        .map(|k| {
            let k = ObjId(k as u32);
            let (o, v) = decode_obj(k);
            let va = d.star(v).on_obj(o.a);
            let tm = total
                .find_morphism(&TotalMorphism {
                    src: TotalObject { x: z, a: va },
                    tgt: o,
                    u: v,
                    f: fz.id_mor(va),
                })
                .expect("(1_{v*a}, v)");
            comma
                .find_morphism(&FibreMorphism {
                    src: ip.on_obj(k),
                    tgt: k,
                    u: tm,
                    betas: vec![c.id_def(v)],
                })
                .expect("theta component")
        })
        .collect();
    let s = &comma.cat;
    let at_mor = comma
        .morphisms
        .iter()
        .enumerate()
        .map(|(ix, m)| {
            let from = s.compose(MorId(ix as u32), at_obj[m.src.ix()]);
            let to = s.compose(at_obj[m.tgt.ix()], ip.on_mor(MorId(ix as u32)));
            let beta = m.betas[0];
            *s.hom2(from, to)
                .iter()
                .find(|&&q| {
                    let td = &total.deformations[comma.deformations[q.ix()].alpha.ix()];
                    td.alpha == beta && d.fib(td.src.src.x).is_identity_def(td.phi)
                })
                .expect("(1, β) is a 2-cell of z//π")
        })
        .collect();
    Ok(FibreComparison {
        total,
        z,
        comma,
        i,
        p,
        theta: LaxTransformation {
            kind: TransformationKind::Oplax,
            at_obj,
            at_mor,
        },
    })
}

// ---------------------------------------------------------------------------
// Monoidal actions.

/// The 2-diagram over `ΣM` of a right action: `u* = −⊗u`, `α*_a = 1_a⊗α`, `ζ` identities.
pub fn action_diagram(act: &RightAction) -> Result<TwoDiagram, GrothendieckError> {
    let r = act.validate();
    if !r.is_ok() {
        return Err(GrothendieckError::ActionInvalid(r.to_string()));
    }
    let m = &act.monoid;
    let base = one_object_from_monoidal(m)?;
    let n = &act.module;
    let fibre = n.to_two_category()?;
    // Cells of ΣM and of N-as-2-category are matched to M and N by name.
    let monoid_obj = |w: MorId| {
        if base.is_identity_mor(w) {
            m.unit
        } else {
            m.cat.find_obj(base.mor_name(w)).expect("1-cells of ΣM are objects of M")
        }
    };
    let monoid_arrow = |g: DefId| {
        if base.is_identity_def(g) {
            m.cat.id(monoid_obj(base.def_src(g)))
        } else {
            m.cat.find_arrow(base.def_name(g)).expect("2-cells of ΣM are arrows of M")
        }
    };
    let module_arrow = |f: MorId| {
        if fibre.is_identity_mor(f) {
            n.id(fibre.src(f))
        } else {
            n.find_arrow(fibre.mor_name(f)).expect("1-cells are arrows of N")
        }
    };
    let as_mor = |f: crate::twocat::ArrowId| {
        if n.is_identity(f) {
            fibre.id_mor(n.src(f))
        } else {
            fibre.find_mor(n.arrow_name(f)).expect("arrows of N are 1-cells")
        }
    };
    let restrict = base
        .mors()
        .map(|w| {
            let u = monoid_obj(w);
            let id_u = m.cat.id(u);
            let mor: Vec<MorId> = fibre.mors().map(|f| as_mor(act.act_arrows(module_arrow(f), id_u))).collect();
            TwoFunctor {
                obj: fibre.objects().map(|a| act.act(a, u)).collect(),
                def: fibre.defs().map(|p| fibre.id_def(mor[fibre.def_src(p).ix()])).collect(),
                mor,
            }
        })
        .collect();
    let deform = base
        .defs()
        .map(|g| {
            let al = monoid_arrow(g);
            fibre.objects().map(|a| as_mor(act.act_arrows(n.id(a), al))).collect()
        })
        .collect();
    // ζ_{u,v,a} is the identity of a⊗u⊗v.
    let zeta = crate::twocat::composable_pairs(&base)
        .into_iter()
        .map(|(u, v)| {
            let (mu, mv) = (monoid_obj(u), monoid_obj(v));
            (
                (u, v),
                fibre.objects().map(|a| fibre.id_mor(act.act(act.act(a, mu), mv))).collect(),
            )
        })
        .collect();
    Ok(TwoDiagram {
        fibres: vec![fibre],
        base,
        restrict,
        deform,
        zeta,
    })
}

/// `∫_{ΣM} N`: 1-cells `(f, u): a → b` with `f: a → b⊗u`.
pub fn action_grothendieck(act: &RightAction) -> Result<Grothendieck, GrothendieckError> {
    grothendieck(&action_diagram(act)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::homology;
    use crate::nerves::geometric_nerve;
    use crate::report::ViolationKind;
    use crate::twocat::{Category, StrictMonoidal};

    const BUDGET: u64 = 1_000_000;

    #[test]
    fn constant_terminal_diagram_recovers_the_base() {
        for c in [TwoCategory::walking_two_cell(), TwoCategory::suspended_cyclic(2)] {
            let d = TwoDiagram::constant(&c, &TwoCategory::terminal());
            assert!(validate_two_diagram(&d).is_ok());
            let g = grothendieck(&d).unwrap();
            assert!(g.cat.validate().is_ok());
            let pi = projection(&g);
            assert!(pi.validate(&g.cat, &c).is_ok());
            assert_eq!(pi.obj.len(), c.num_objects());
            assert_eq!(pi.mor.len(), c.num_mors());
            assert_eq!(pi.def.len(), c.num_defs());
            let mut hit = pi.mor.clone();
            hit.sort();
            assert_eq!(hit, c.mors().collect::<Vec<_>>());
        }
    }

    #[test]
    fn hom_diagram_of_walking_cell() {
        let e = TwoCategory::walking_two_cell();
        let zero = e.find_obj("0").unwrap();
        let hd = hom_diagram(&e, zero).unwrap();
        let r = validate_two_diagram(&hd.diagram);
        assert!(r.is_ok(), "{r}");
        let g = grothendieck(&hd.diagram).unwrap();
        assert!(g.cat.validate().is_ok());
        assert_eq!(g.cat.num_objects(), 3);
        let pi = projection(&g);
        assert!(pi.validate(&g.cat, &e).is_ok());
        // π^{-1}(0) is E(0,0): one object, identity only.
        let j = fibre_embedding(&g, zero).unwrap();
        assert!(j.validate(&hd.diagram.fibres[zero.ix()], &g.cat).is_ok());
        let over_zero = g.objects.iter().filter(|o| o.x == zero).count();
        assert_eq!(over_zero, 1);
        let comp = pi.after(&j);
        assert_eq!(comp, TwoFunctor::constant(&hd.diagram.fibres[zero.ix()], &e, zero));
    }

    #[test]
    fn comma_comparison_is_an_isomorphism() {
        let fixtures = [
            (TwoCategory::walking_two_cell(), "0"),
            (TwoCategory::walking_two_cell(), "1"),
            (TwoCategory::suspended_cyclic(2), "*"),
            (Category::ordinal(2).to_two_category().unwrap(), "2"),
        ];
        for (c, x) in fixtures {
            let cc = comma_comparison(&c, c.find_obj(x).unwrap(), BUDGET).unwrap();
            let r = cc.check();
            assert!(r.is_ok(), "{r}");
        }
    }

    /// The literal `∫_E E(−,0) ≅ E//0` fails: exhaustive search over object and 1-cell bijections.
    #[test]
    fn walking_cell_total_is_not_the_literal_comma() {
        let e = TwoCategory::walking_two_cell();
        let id = TwoFunctor::identity(&e);
        let total = grothendieck(&hom_diagram(&e, ObjId(0)).unwrap().diagram).unwrap().cat;
        let comma = fibre_under(&StrictFunctor::new(&e, &e, &id).unwrap(), ObjId(0), BUDGET).unwrap().cat;
        assert!(!isomorphic(&total, &comma));
        assert!(isomorphic(&total, &comma.co_dual()));
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn isomorphic(a: &TwoCategory, b: &TwoCategory) -> bool {
        if (a.num_objects(), a.num_mors(), a.num_defs()) != (b.num_objects(), b.num_mors(), b.num_defs()) {
            return false;
        }
        for po in permutations(a.num_objects()) {
            for pm in permutations(a.num_mors()) {
                let obj: Vec<ObjId> = po.iter().map(|&i| ObjId(i as u32)).collect();
                let mor: Vec<MorId> = pm.iter().map(|&i| MorId(i as u32)).collect();
                let bounds = a.mors().all(|u| {
                    b.src(mor[u.ix()]) == obj[a.src(u).ix()] && b.tgt(mor[u.ix()]) == obj[a.tgt(u).ix()]
                });
                if !bounds {
                    continue;
                }
                for pd in permutations(a.num_defs()) {
                    let def = pd.iter().map(|&i| DefId(i as u32)).collect();
                    let f = TwoFunctor {
                        obj: obj.clone(),
                        mor: mor.clone(),
                        def,
                    };
                    if f.validate(a, b).is_ok() {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn p_after_i_is_identity_and_theta_is_oplax() {
        let e = TwoCategory::walking_two_cell();
        let hd = hom_diagram(&e, ObjId(0)).unwrap();
        for z in e.objects() {
            let fc = iota_p_pair(&hd.diagram, z, BUDGET).unwrap();
            let r = fc.check();
            assert!(r.is_ok(), "z = {}: {r}", e.obj_name(z));
        }
        let act = RightAction::regular(&StrictMonoidal::cyclic_discrete(2));
        let d = action_diagram(&act).unwrap();
        let fc = iota_p_pair(&d, ObjId(0), BUDGET).unwrap();
        assert!(fc.check().is_ok());
    }

    #[test]
    fn corrupted_zeta_is_caught() {
        // Over ΣZ3 with fibre ΣZ2, ζ_{g,g} = g1 is natural and normal but not a cocycle.
        let base = TwoCategory::suspended_cyclic(3);
        let fibre = TwoCategory::suspended_cyclic(2);
        let mut d = TwoDiagram::constant(&base, &fibre);
        assert!(validate_two_diagram(&d).is_ok());
        let g = base.find_mor("g1").unwrap();
        d.zeta.get_mut(&(g, g)).unwrap()[0] = fibre.find_mor("g1").unwrap();
        let r = validate_two_diagram(&d);
        assert!(r.has(ViolationKind::ZetaCocycleViolation), "{r}");
        assert!(!r.has(ViolationKind::NaturalityViolation));
        assert!(matches!(grothendieck(&d), Err(GrothendieckError::DiagramInvalid(_))));
    }

    #[test]
    fn regular_action_total_is_contractible() {
        let act = RightAction::regular(&StrictMonoidal::cyclic_discrete(2));
        let g = action_grothendieck(&act).unwrap();
        assert!(g.cat.validate().is_ok());
        let h = homology(&geometric_nerve(&g.cat, 4, BUDGET).unwrap()).unwrap();
        assert!(h.is_point(), "{h}");
        // f: a → b⊗u: exactly one 1-cell a → b for each u.
        assert_eq!(g.cat.num_mors(), 2 * 2);
    }

    #[test]
    fn translation_action_is_connected() {
        let act = RightAction::cyclic_translation(2);
        let g = action_grothendieck(&act).unwrap();
        assert_eq!(g.cat.num_objects(), 2);
        let h = homology(&geometric_nerve(&g.cat, 3, BUDGET).unwrap()).unwrap();
        assert_eq!(h.groups[0], crate::invariants::HomologyGroup::free(1));
        let triv = RightAction::trivial_on(&Category::ordinal(1));
        let g = action_grothendieck(&triv).unwrap();
        assert_eq!(g.cat.num_objects(), 2);
        assert_eq!(g.cat.num_mors(), 3);
    }
}
