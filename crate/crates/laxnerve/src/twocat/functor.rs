//! 2-functors, normal lax functors and (op)lax transformations.

use std::collections::HashMap;

use super::{DefId, MorId, ObjId, TwoCategory};
use crate::report::{ValidationReport, ViolationKind::*};

/// A strict 2-functor, stored as three cell maps indexed by source ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFunctor {
    pub obj: Vec<ObjId>,
    pub mor: Vec<MorId>,
    pub def: Vec<DefId>,
}

impl TwoFunctor {
    pub fn identity(c: &TwoCategory) -> TwoFunctor {
        TwoFunctor {
            obj: c.objects().collect(),
            mor: c.mors().collect(),
            def: c.defs().collect(),
        }
    }

    /// The 2-functor sending everything to the identities at `x`.
    pub fn constant(src: &TwoCategory, tgt: &TwoCategory, x: ObjId) -> TwoFunctor {
        let m = tgt.id_mor(x);
        TwoFunctor {
            obj: vec![x; src.num_objects()],
            mor: vec![m; src.num_mors()],
            def: vec![tgt.id_def(m); src.num_defs()],
        }
    }

    pub fn on_obj(&self, x: ObjId) -> ObjId {
        self.obj[x.ix()]
    }
    pub fn on_mor(&self, u: MorId) -> MorId {
        self.mor[u.ix()]
    }
    pub fn on_def(&self, a: DefId) -> DefId {
        self.def[a.ix()]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &TwoFunctor) -> TwoFunctor {
        TwoFunctor {
            obj: first.obj.iter().map(|&x| self.on_obj(x)).collect(),
            mor: first.mor.iter().map(|&u| self.on_mor(u)).collect(),
            def: first.def.iter().map(|&a| self.on_def(a)).collect(),
        }
    }

    /// Checks that the maps preserve boundaries, identities and all three compositions.
    pub fn validate(&self, src: &TwoCategory, tgt: &TwoCategory) -> ValidationReport {
        let mut r = ValidationReport::new();
        if self.obj.len() != src.num_objects() || self.mor.len() != src.num_mors() || self.def.len() != src.num_defs()
        {
            r.push(MissingTableEntry, "cell maps are not total on the source");
            return r;
        }
        let in_range = self.obj.iter().all(|x| x.ix() < tgt.num_objects())
            && self.mor.iter().all(|u| u.ix() < tgt.num_mors())
            && self.def.iter().all(|a| a.ix() < tgt.num_defs());
        if !in_range {
            r.push(MissingTableEntry, "cell maps leave the target");
            return r;
        }
        for u in src.mors() {
            let fu = self.on_mor(u);
            r.require(
                tgt.src(fu) == self.on_obj(src.src(u)) && tgt.tgt(fu) == self.on_obj(src.tgt(u)),
                BoundaryMismatch,
                || format!("1-cell {}", src.mor_name(u)),
            );
        }
        for a in src.defs() {
            let fa = self.on_def(a);
            r.require(
                tgt.def_src(fa) == self.on_mor(src.def_src(a)) && tgt.def_tgt(fa) == self.on_mor(src.def_tgt(a)),
                BoundaryMismatch,
                || format!("2-cell {}", src.def_name(a)),
            );
        }
        if !r.is_ok() {
            return r;
        }
        for x in src.objects() {
            r.require(self.on_mor(src.id_mor(x)) == tgt.id_mor(self.on_obj(x)), FunctorViolation, || {
                format!("identity of {}", src.obj_name(x))
            });
        }
        for u in src.mors() {
            r.require(self.on_def(src.id_def(u)) == tgt.id_def(self.on_mor(u)), FunctorViolation, || {
                format!("identity 2-cell of {}", src.mor_name(u))
            });
        }
        let (h1, v2, h2) = src.raw_tables();
        let mut entries: Vec<_> = h1.iter().collect();
        entries.sort();
        for (&(u, v), &w) in entries {
            r.require(
                tgt.try_compose(self.on_mor(u), self.on_mor(v)) == Some(self.on_mor(w)),
                FunctorViolation,
                || format!("{} o {}", src.mor_name(u), src.mor_name(v)),
            );
        }
        let mut entries: Vec<_> = v2.iter().collect();
        entries.sort();
        for (&(b, a), &c) in entries {
            r.require(
                tgt.try_vcompose(self.on_def(b), self.on_def(a)) == Some(self.on_def(c)),
                FunctorViolation,
                || format!("{} . {}", src.def_name(b), src.def_name(a)),
            );
        }
        let mut entries: Vec<_> = h2.iter().collect();
        entries.sort();
        for (&(b, a), &c) in entries {
            r.require(
                tgt.try_hcompose(self.on_def(b), self.on_def(a)) == Some(self.on_def(c)),
                FunctorViolation,
                || format!("{} o {}", src.def_name(b), src.def_name(a)),
            );
        }
        r
    }

    pub fn to_lax(&self, src: &TwoCategory, tgt: &TwoCategory) -> NormalLaxFunctor {
        let mut constraint = HashMap::new();
        for v in src.mors() {
            for &u in src.mors().filter(|&u| src.src(u) == src.tgt(v)).collect::<Vec<_>>().iter() {
                let w = tgt.compose(self.on_mor(u), self.on_mor(v));
                constraint.insert((u, v), tgt.id_def(w));
            }
        }
        NormalLaxFunctor {
            obj: self.obj.clone(),
            mor: self.mor.clone(),
            def: self.def.clone(),
            constraint,
        }
    }
}

/// A normal lax functor: cell maps plus constraints `F_{u,v}: Fu∘Fv ⇒ F(u∘v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalLaxFunctor {
    pub obj: Vec<ObjId>,
    pub mor: Vec<MorId>,
    pub def: Vec<DefId>,
    /// Keyed by composable source pairs `(u, v)` meaning `u∘v`.
    pub constraint: HashMap<(MorId, MorId), DefId>,
}

impl NormalLaxFunctor {
    pub fn on_obj(&self, x: ObjId) -> ObjId {
        self.obj[x.ix()]
    }
    pub fn on_mor(&self, u: MorId) -> MorId {
        self.mor[u.ix()]
    }
    pub fn on_def(&self, a: DefId) -> DefId {
        self.def[a.ix()]
    }
    pub fn constraint(&self, u: MorId, v: MorId) -> DefId {
        self.constraint[&(u, v)]
    }

    /// Checks normalization, functoriality on homs, naturality and the cocycle condition.
    pub fn validate(&self, src: &TwoCategory, tgt: &TwoCategory) -> ValidationReport {
        let mut r = ValidationReport::new();
        if self.obj.len() != src.num_objects() || self.mor.len() != src.num_mors() || self.def.len() != src.num_defs()
        {
            r.push(MissingTableEntry, "cell maps are not total on the source");
            return r;
        }
        for u in src.mors() {
            let fu = self.on_mor(u);
            r.require(
                tgt.src(fu) == self.on_obj(src.src(u)) && tgt.tgt(fu) == self.on_obj(src.tgt(u)),
                BoundaryMismatch,
                || format!("1-cell {}", src.mor_name(u)),
            );
        }
        for a in src.defs() {
            let fa = self.on_def(a);
            r.require(
                tgt.def_src(fa) == self.on_mor(src.def_src(a)) && tgt.def_tgt(fa) == self.on_mor(src.def_tgt(a)),
                BoundaryMismatch,
                || format!("2-cell {}", src.def_name(a)),
            );
        }
        let pairs = composable_pairs(src);
        for &(u, v) in &pairs {
            match self.constraint.get(&(u, v)) {
                None => r.push(MissingTableEntry, format!("constraint ({}, {})", src.mor_name(u), src.mor_name(v))),
                Some(&c) => {
                    let want_s = tgt.try_compose(self.on_mor(u), self.on_mor(v));
                    let want_t = self.on_mor(src.compose(u, v));
                    r.require(
                        want_s == Some(tgt.def_src(c)) && want_t == tgt.def_tgt(c),
                        BoundaryMismatch,
                        || format!("constraint ({}, {})", src.mor_name(u), src.mor_name(v)),
                    );
                }
            }
        }
        if !r.is_ok() {
            return r;
        }

        for x in src.objects() {
            r.require(self.on_mor(src.id_mor(x)) == tgt.id_mor(self.on_obj(x)), NormalizationViolation, || {
                format!("F(1_{}) is not an identity", src.obj_name(x))
            });
        }
        for u in src.mors() {
            let idfu = tgt.id_def(self.on_mor(u));
            let (x, y) = (src.src(u), src.tgt(u));
            r.require(
                self.constraint(u, src.id_mor(x)) == idfu && self.constraint(src.id_mor(y), u) == idfu,
                NormalizationViolation,
                || format!("unit constraints at {}", src.mor_name(u)),
            );
            r.require(self.on_def(src.id_def(u)) == idfu, FunctorViolation, || {
                format!("F(1_{}) is not an identity 2-cell", src.mor_name(u))
            });
        }
        for a in src.defs() {
            for b in src.defs().filter(|&b| src.def_src(b) == src.def_tgt(a)) {
                r.require(
                    self.on_def(src.vcompose(b, a)) == tgt.vcompose(self.on_def(b), self.on_def(a)),
                    FunctorViolation,
                    || format!("vertical {} . {}", src.def_name(b), src.def_name(a)),
                );
            }
        }
        // Naturality: F_{u',v'}(Fb∘Fa) = F(b∘a)F_{u,v}.
        let mut out: HashMap<MorId, Vec<DefId>> = HashMap::new();
        for a in src.defs() {
            out.entry(src.def_src(a)).or_default().push(a);
        }
        for &(u, v) in &pairs {
            for &b in out.get(&u).into_iter().flatten() {
                for &a in out.get(&v).into_iter().flatten() {
                    let (u2, v2) = (src.def_tgt(b), src.def_tgt(a));
                    let lhs = tgt.vcompose(
                        self.constraint(u2, v2),
                        tgt.hcompose(self.on_def(b), self.on_def(a)),
                    );
                    let rhs = tgt.vcompose(self.on_def(src.hcompose(b, a)), self.constraint(u, v));
                    r.require(lhs == rhs, NaturalityViolation, || {
                        format!("constraint at ({}, {})", src.def_name(b), src.def_name(a))
                    });
                }
            }
        }
        // Cocycle: F_{u,v∘w}(1∘F_{v,w}) = F_{u∘v,w}(F_{u,v}∘1).
        for &(v, w) in &pairs {
            for u in src.mors().filter(|&u| src.src(u) == src.tgt(v)) {
                let lhs = tgt.vcompose(
                    self.constraint(u, src.compose(v, w)),
                    tgt.whisker_left(self.on_mor(u), self.constraint(v, w)),
                );
                let rhs = tgt.vcompose(
                    self.constraint(src.compose(u, v), w),
                    tgt.whisker_right(self.constraint(u, v), self.on_mor(w)),
                );
                r.require(lhs == rhs, CocycleViolation, || {
                    format!("({}, {}, {})", src.mor_name(u), src.mor_name(v), src.mor_name(w))
                });
            }
        }
        r
    }

    /// True when every constraint is an identity.
    pub fn is_strict(&self, tgt: &TwoCategory) -> bool {
        self.constraint.values().all(|&c| tgt.is_identity_def(c))
    }

    pub fn to_strict(&self) -> TwoFunctor {
        TwoFunctor {
            obj: self.obj.clone(),
            mor: self.mor.clone(),
            def: self.def.clone(),
        }
    }

    /// `G∘self` for a strict `G`: constraints are `G(F_{u,v})`.
    pub fn then_strict(&self, g: &TwoFunctor) -> NormalLaxFunctor {
        NormalLaxFunctor {
            obj: self.obj.iter().map(|&x| g.on_obj(x)).collect(),
            mor: self.mor.iter().map(|&u| g.on_mor(u)).collect(),
            def: self.def.iter().map(|&a| g.on_def(a)).collect(),
            constraint: self.constraint.iter().map(|(&k, &c)| (k, g.on_def(c))).collect(),
        }
    }
}

/// Every `(u, v)` with `u∘v` defined, sorted.
pub fn composable_pairs(c: &TwoCategory) -> Vec<(MorId, MorId)> {
    let mut v: Vec<_> = c.raw_tables().0.keys().copied().collect();
    v.sort();
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformationKind {
    /// `α_u: α_y∘Fu ⇒ Gu∘α_x`.
    Lax,
    /// `α_u: Gu∘α_x ⇒ α_y∘Fu`.
    Oplax,
}

/// A lax or oplax transformation `F ⇒ G` between normal lax functors `B ⇝ C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxTransformation {
    pub kind: TransformationKind,
    /// `α_x: Fx → Gx`, indexed by objects of `B`.
    pub at_obj: Vec<MorId>,
    /// `α_u`, indexed by 1-cells of `B`.
    pub at_mor: Vec<DefId>,
}

impl LaxTransformation {
    pub fn identity(src: &TwoCategory, tgt: &TwoCategory, f: &NormalLaxFunctor) -> LaxTransformation {
        LaxTransformation {
            kind: TransformationKind::Lax,
            at_obj: src.objects().map(|x| tgt.id_mor(f.on_obj(x))).collect(),
            at_mor: src.mors().map(|u| tgt.id_def(f.on_mor(u))).collect(),
        }
    }

    /// True when every 2-cell component is an identity.
    pub fn is_two_natural(&self, tgt: &TwoCategory) -> bool {
        self.at_mor.iter().all(|&a| tgt.is_identity_def(a))
    }

    pub fn validate(
        &self,
        src: &TwoCategory,
        tgt: &TwoCategory,
        f: &NormalLaxFunctor,
        g: &NormalLaxFunctor,
    ) -> ValidationReport {
        use TransformationKind::*;
        let mut r = ValidationReport::new();
        if self.at_obj.len() != src.num_objects() || self.at_mor.len() != src.num_mors() {
            r.push(MissingTableEntry, "components are not total");
            return r;
        }
        for x in src.objects() {
            let a = self.at_obj[x.ix()];
            r.require(
                tgt.src(a) == f.on_obj(x) && tgt.tgt(a) == g.on_obj(x),
                BoundaryMismatch,
                || format!("component at {}", src.obj_name(x)),
            );
        }
        if !r.is_ok() {
            return r;
        }
        let comp = |u: MorId| self.at_mor[u.ix()];
        let ax = |x: ObjId| self.at_obj[x.ix()];
        // Source and target of α_u, per orientation.
        let ends = |u: MorId| -> Option<(MorId, MorId)> {
            let (x, y) = (src.src(u), src.tgt(u));
            let lax_side = tgt.try_compose(ax(y), f.on_mor(u))?;
            let other = tgt.try_compose(g.on_mor(u), ax(x))?;
            Some(match self.kind {
                Lax => (lax_side, other),
                Oplax => (other, lax_side),
            })
        };
        for u in src.mors() {
            let a = comp(u);
            r.require(
                ends(u) == Some((tgt.def_src(a), tgt.def_tgt(a))),
                BoundaryMismatch,
                || format!("component at {}", src.mor_name(u)),
            );
        }
        if !r.is_ok() {
            return r;
        }
        for x in src.objects() {
            r.require(comp(src.id_mor(x)) == tgt.id_def(ax(x)), UnitViolation, || {
                format!("component at 1_{} is not an identity", src.obj_name(x))
            });
        }
        // Naturality in 2-cells b: u ⇒ u'.
        for b in src.defs() {
            let (u, u2) = (src.def_src(b), src.def_tgt(b));
            let (x, y) = (src.src(u), src.tgt(u));
            let gb = tgt.whisker_right(g.on_def(b), ax(x));
            let fb = tgt.whisker_left(ax(y), f.on_def(b));
            let (lhs, rhs) = match self.kind {
                Lax => (tgt.vcompose(gb, comp(u)), tgt.vcompose(comp(u2), fb)),
                Oplax => (tgt.vcompose(fb, comp(u)), tgt.vcompose(comp(u2), gb)),
            };
            r.require(lhs == rhs, NaturalityViolation, || format!("at 2-cell {}", src.def_name(b)));
        }
        // Hexagon for x -u-> y -v-> z.
        for (v, u) in composable_pairs(src) {
            let (x, z) = (src.src(u), src.tgt(v));
            let vu = src.compose(v, u);
            let ok = match self.kind {
                Lax => {
                    let s1 = tgt.whisker_right(comp(v), f.on_mor(u));
                    let s2 = tgt.whisker_left(g.on_mor(v), comp(u));
                    let s3 = tgt.whisker_right(g.constraint(v, u), ax(x));
                    let lhs = tgt.vcompose_chain(&[s3, s2, s1]);
                    let rhs = tgt.vcompose(comp(vu), tgt.whisker_left(ax(z), f.constraint(v, u)));
                    lhs == rhs
                }
                Oplax => {
                    let s1 = tgt.whisker_left(g.on_mor(v), comp(u));
                    let s2 = tgt.whisker_right(comp(v), f.on_mor(u));
                    let s3 = tgt.whisker_left(ax(z), f.constraint(v, u));
                    let lhs = tgt.vcompose_chain(&[s3, s2, s1]);
                    let rhs = tgt.vcompose(comp(vu), tgt.whisker_right(g.constraint(v, u), ax(x)));
                    lhs == rhs
                }
            };
            r.require(ok, HexagonViolation, || {
                format!("composable pair ({}, {})", src.mor_name(v), src.mor_name(u))
            });
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::ViolationKind;

    #[test]
    fn identity_functor_and_transformation_validate() {
        let e = TwoCategory::walking_two_cell();
        let id = TwoFunctor::identity(&e);
        assert!(id.validate(&e, &e).is_ok());
        let lax = id.to_lax(&e, &e);
        assert!(lax.validate(&e, &e).is_ok());
        let t = LaxTransformation::identity(&e, &e, &lax);
        assert!(t.validate(&e, &e, &lax, &lax).is_ok());
        assert!(t.is_two_natural(&e));
    }

    #[test]
    fn broken_hexagon_names_the_pair() {
        // Constant functors [2] -> ΣM at the only object, M = {1, f} with f·f = f.
        let c = super::super::one_object_from_monoidal(&super::super::StrictMonoidal::idempotent()).unwrap();
        let b = super::super::Category::ordinal(2).to_two_category().unwrap();
        let star = c.objects().next().unwrap();
        let k = TwoFunctor::constant(&b, &c, star).to_lax(&b, &c);
        let mut t = LaxTransformation::identity(&b, &c, &k);
        assert!(t.validate(&b, &c, &k, &k).is_ok());
        let f = c.defs().find(|&d| !c.is_identity_def(d)).unwrap();
        t.at_mor[b.find_mor("0<1").unwrap().ix()] = f;
        let r = t.validate(&b, &c, &k, &k);
        assert!(r.has(ViolationKind::HexagonViolation), "{r}");
        assert!(r.violations().iter().any(|v| v.witness.contains("(0<1, 1<2)")), "{r}");
    }
}
