//! Strict monoidal categories, their one-object 2-categories, and right actions.

use std::collections::HashMap;

use super::{ArrowId, BuildError, Category, CategoryBuilder, ObjId, TwoCategory, TwoCategoryBuilder};
use crate::report::{ValidationReport, ViolationKind};

/// A strict monoidal category: tensor tables on objects and arrows.
#[derive(Debug, Clone)]
pub struct StrictMonoidal {
    pub cat: Category,
    pub unit: ObjId,
    pub tensor_obj: HashMap<(ObjId, ObjId), ObjId>,
    pub tensor_arrow: HashMap<(ArrowId, ArrowId), ArrowId>,
}

impl StrictMonoidal {
    /// The one-object, one-arrow monoidal category.
    pub fn trivial() -> StrictMonoidal {
        Self::cyclic_discrete(1)
    }

    /// The cyclic group of order `n` as a discrete monoidal category; objects `g0..g{n-1}`.
    pub fn cyclic_discrete(n: u32) -> StrictMonoidal {
        let mut b = CategoryBuilder::new();
        for i in 0..n {
            b.object(&format!("g{i}")).expect("fresh");
        }
        let cat = b.build();
        let mut tensor_obj = HashMap::new();
        let mut tensor_arrow = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let k = ObjId((i + j) % n);
                tensor_obj.insert((ObjId(i), ObjId(j)), k);
                tensor_arrow.insert((cat.id(ObjId(i)), cat.id(ObjId(j))), cat.id(k));
            }
        }
        StrictMonoidal {
            cat,
            unit: ObjId(0),
            tensor_obj,
            tensor_arrow,
        }
    }

    /// One object `e`, arrows `1` and `f` with `f·f = f` and `f⊗f = f`.
    pub fn idempotent() -> StrictMonoidal {
        let mut b = CategoryBuilder::new();
        b.object("e").expect("fresh");
        b.arrow("f", "e", "e").expect("fresh");
        b.compose("f", "f", "f").expect("declared");
        let cat = b.build();
        let e = ObjId(0);
        let (one, f) = (cat.id(e), cat.find_arrow("f").expect("declared"));
        let mut tensor_arrow = HashMap::new();
        for (a, b2, c) in [(one, one, one), (one, f, f), (f, one, f), (f, f, f)] {
            tensor_arrow.insert((a, b2), c);
        }
        StrictMonoidal {
            cat,
            unit: e,
            tensor_obj: HashMap::from([((e, e), e)]),
            tensor_arrow,
        }
    }

    pub fn tensor(&self, a: ObjId, b: ObjId) -> ObjId {
        self.tensor_obj[&(a, b)]
    }
    pub fn tensor_arrows(&self, f: ArrowId, g: ArrowId) -> ArrowId {
        self.tensor_arrow[&(f, g)]
    }

    /// Checks strict associativity and unitality of the tensor and its functoriality.
    pub fn validate(&self) -> ValidationReport {
        let mut r = self.cat.validate();
        let c = &self.cat;
        let objs: Vec<ObjId> = c.objects().collect();
        for &a in &objs {
            for &b in &objs {
                if !self.tensor_obj.contains_key(&(a, b)) {
                    r.push(ViolationKind::NonStrictTensor, format!("missing {} (x) {}", c.obj_name(a), c.obj_name(b)));
                }
            }
        }
        for f in c.arrows() {
            for g in c.arrows() {
                if !self.tensor_arrow.contains_key(&(f, g)) {
                    r.push(
                        ViolationKind::NonStrictTensor,
                        format!("missing {} (x) {}", c.arrow_name(f), c.arrow_name(g)),
                    );
                }
            }
        }
        if !r.is_ok() {
            return r;
        }
        for &a in &objs {
            r.require(
                self.tensor(a, self.unit) == a && self.tensor(self.unit, a) == a,
                ViolationKind::NonStrictTensor,
                || format!("unit law at {}", c.obj_name(a)),
            );
            for &b in &objs {
                for &d in &objs {
                    r.require(
                        self.tensor(self.tensor(a, b), d) == self.tensor(a, self.tensor(b, d)),
                        ViolationKind::NonStrictTensor,
                        || format!("associativity at {} {} {}", c.obj_name(a), c.obj_name(b), c.obj_name(d)),
                    );
                }
            }
        }
        let arrows: Vec<ArrowId> = c.arrows().collect();
        let unit_id = c.id(self.unit);
        for &f in &arrows {
            r.require(
                self.tensor_arrows(f, unit_id) == f && self.tensor_arrows(unit_id, f) == f,
                ViolationKind::NonStrictTensor,
                || format!("unit law at arrow {}", c.arrow_name(f)),
            );
            for &g in &arrows {
                let t = self.tensor_arrows(f, g);
                r.require(
                    c.src(t) == self.tensor(c.src(f), c.src(g)) && c.tgt(t) == self.tensor(c.tgt(f), c.tgt(g)),
                    ViolationKind::BoundaryMismatch,
                    || format!("{} (x) {}", c.arrow_name(f), c.arrow_name(g)),
                );
                for &h in &arrows {
                    r.require(
                        self.tensor_arrows(self.tensor_arrows(f, g), h) == self.tensor_arrows(f, self.tensor_arrows(g, h)),
                        ViolationKind::NonStrictTensor,
                        || format!("associativity at arrows {} {} {}", c.arrow_name(f), c.arrow_name(g), c.arrow_name(h)),
                    );
                }
            }
        }
        r
    }
}

/// The one-object 2-category: 1-cells are objects of `M` with `∘ = ⊗`, 2-cells are arrows.
pub fn one_object_from_monoidal(m: &StrictMonoidal) -> Result<TwoCategory, BuildError> {
    let report = m.validate();
    if !report.is_ok() {
        return Err(BuildError::Invalid(format!("monoidal input rejected:\n{report}")));
    }
    let c = &m.cat;
    let mut b = TwoCategoryBuilder::new();
    b.object("*")?;
    let unit_name = super::identity_mor_name("*");
    let mor_name = |x: ObjId| {
        if x == m.unit {
            unit_name.clone()
        } else {
            c.obj_name(x).to_string()
        }
    };
    for x in c.objects().filter(|&x| x != m.unit) {
        b.mor(c.obj_name(x), "*", "*")?;
    }
    let def_name = |f: ArrowId| {
        if c.is_identity(f) {
            super::identity_def_name(&mor_name(c.src(f)))
        } else {
            c.arrow_name(f).to_string()
        }
    };
    for f in c.arrows().filter(|&f| !c.is_identity(f)) {
        b.def(c.arrow_name(f), &mor_name(c.src(f)), &mor_name(c.tgt(f)))?;
    }
    for (&(x, y), &z) in &m.tensor_obj {
        b.hcomp1(&mor_name(x), &mor_name(y), &mor_name(z))?;
    }
    for f in c.arrows() {
        for g in c.arrows().filter(|&g| c.src(f) == c.tgt(g)) {
            b.vcomp(&def_name(f), &def_name(g), &def_name(c.compose(f, g)))?;
        }
    }
    for (&(f, g), &h) in &m.tensor_arrow {
        b.hcomp2(&def_name(f), &def_name(g), &def_name(h))?;
    }
    let out = b.build();
    let r = out.validate();
    if !r.is_ok() {
        return Err(BuildError::Invalid(format!("suspension fails validation:\n{r}")));
    }
    Ok(out)
}

/// A strictly associative, unital right action `N × M → N` of a strict monoidal category.
#[derive(Debug, Clone)]
pub struct RightAction {
    pub module: Category,
    pub monoid: StrictMonoidal,
    pub act_obj: HashMap<(ObjId, ObjId), ObjId>,
    pub act_arrow: HashMap<(ArrowId, ArrowId), ArrowId>,
}

impl RightAction {
    /// `M` acting on itself by tensor.
    pub fn regular(m: &StrictMonoidal) -> RightAction {
        RightAction {
            module: m.cat.clone(),
            monoid: m.clone(),
            act_obj: m.tensor_obj.clone(),
            act_arrow: m.tensor_arrow.clone(),
        }
    }

    /// The trivial monoidal category acting on `n` trivially.
    pub fn trivial_on(n: &Category) -> RightAction {
        let m = StrictMonoidal::trivial();
        let unit_id = m.cat.id(m.unit);
        let mut act_obj = HashMap::new();
        let mut act_arrow = HashMap::new();
        for a in n.objects() {
            act_obj.insert((a, m.unit), a);
        }
        for f in n.arrows() {
            act_arrow.insert((f, unit_id), f);
        }
        RightAction {
            module: n.clone(),
            monoid: m,
            act_obj,
            act_arrow,
        }
    }

    /// `Z/n` acting on the discrete set `{p0..p(n-1)}` by translation.
    pub fn cyclic_translation(n: u32) -> RightAction {
        let m = StrictMonoidal::cyclic_discrete(n);
        let mut b = CategoryBuilder::new();
        for i in 0..n {
            b.object(&format!("p{i}")).expect("fresh");
        }
        let module = b.build();
        let mut act_obj = HashMap::new();
        let mut act_arrow = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let k = ObjId((i + j) % n);
                act_obj.insert((ObjId(i), ObjId(j)), k);
                act_arrow.insert((module.id(ObjId(i)), m.cat.id(ObjId(j))), module.id(k));
            }
        }
        RightAction {
            module,
            monoid: m,
            act_obj,
            act_arrow,
        }
    }

    pub fn act(&self, a: ObjId, u: ObjId) -> ObjId {
        self.act_obj[&(a, u)]
    }
    pub fn act_arrows(&self, f: ArrowId, g: ArrowId) -> ArrowId {
        self.act_arrow[&(f, g)]
    }

    /// Checks `(a⊗u)⊗v = a⊗(u⊗v)`, `a⊗I = a`, on objects and arrows, and functoriality.
    pub fn validate(&self) -> ValidationReport {
        use ViolationKind::ActionAxiomViolation as V;
        let mut r = self.monoid.validate();
        r.extend(self.module.validate(), "module category");
        let (n, m) = (&self.module, &self.monoid);
        for a in n.objects() {
            for u in m.cat.objects() {
                if !self.act_obj.contains_key(&(a, u)) {
                    r.push(V, format!("missing {} (x) {}", n.obj_name(a), m.cat.obj_name(u)));
                }
            }
        }
        for f in n.arrows() {
            for g in m.cat.arrows() {
                if !self.act_arrow.contains_key(&(f, g)) {
                    r.push(V, format!("missing {} (x) {}", n.arrow_name(f), m.cat.arrow_name(g)));
                }
            }
        }
        if !r.is_ok() {
            return r;
        }
        for a in n.objects() {
            r.require(self.act(a, m.unit) == a, V, || format!("unit at {}", n.obj_name(a)));
            for u in m.cat.objects() {
                for v in m.cat.objects() {
                    r.require(
                        self.act(self.act(a, u), v) == self.act(a, m.tensor(u, v)),
                        V,
                        || format!("associativity at {} {} {}", n.obj_name(a), m.cat.obj_name(u), m.cat.obj_name(v)),
                    );
                }
            }
        }
        let unit_id = m.cat.id(m.unit);
        for f in n.arrows() {
            r.require(self.act_arrows(f, unit_id) == f, V, || format!("unit at arrow {}", n.arrow_name(f)));
            for g in m.cat.arrows() {
                let t = self.act_arrows(f, g);
                r.require(
                    n.src(t) == self.act(n.src(f), m.cat.src(g)) && n.tgt(t) == self.act(n.tgt(f), m.cat.tgt(g)),
                    V,
                    || format!("boundary of {} (x) {}", n.arrow_name(f), m.cat.arrow_name(g)),
                );
                for h in m.cat.arrows() {
                    r.require(
                        self.act_arrows(self.act_arrows(f, g), h) == self.act_arrows(f, m.tensor_arrows(g, h)),
                        V,
                        || format!("associativity at arrows {} {} {}", n.arrow_name(f), m.cat.arrow_name(g), m.cat.arrow_name(h)),
                    );
                }
            }
        }
        // Functoriality of the action in both variables jointly.
        for f in n.arrows() {
            for f2 in n.arrows().filter(|&f2| n.src(f2) == n.tgt(f)) {
                for g in m.cat.arrows() {
                    for g2 in m.cat.arrows().filter(|&g2| m.cat.src(g2) == m.cat.tgt(g)) {
                        r.require(
                            self.act_arrows(n.compose(f2, f), m.cat.compose(g2, g))
                                == n.compose(self.act_arrows(f2, g2), self.act_arrows(f, g)),
                            V,
                            || format!("interchange at {} {} {} {}", n.arrow_name(f2), n.arrow_name(f), m.cat.arrow_name(g2), m.cat.arrow_name(g)),
                        );
                    }
                }
            }
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suspensions() {
        let t = one_object_from_monoidal(&StrictMonoidal::trivial()).unwrap();
        assert_eq!((t.num_objects(), t.num_mors(), t.num_defs()), (1, 1, 1));
        let z2 = one_object_from_monoidal(&StrictMonoidal::cyclic_discrete(2)).unwrap();
        assert_eq!((z2.num_objects(), z2.num_mors(), z2.num_defs()), (1, 2, 2));
        assert!(z2.is_discrete());
        let i = one_object_from_monoidal(&StrictMonoidal::idempotent()).unwrap();
        assert_eq!((i.num_objects(), i.num_mors(), i.num_defs()), (1, 1, 2));
        assert!(i.validate().is_ok());
    }

    #[test]
    fn non_strict_tensor_is_rejected() {
        let mut m = StrictMonoidal::cyclic_discrete(3);
        m.tensor_obj.insert((ObjId(1), ObjId(1)), ObjId(1));
        assert!(matches!(one_object_from_monoidal(&m), Err(BuildError::Invalid(_))));
        assert!(m.validate().has(ViolationKind::NonStrictTensor));
    }

    #[test]
    fn actions_validate() {
        assert!(RightAction::regular(&StrictMonoidal::cyclic_discrete(2)).validate().is_ok());
        assert!(RightAction::cyclic_translation(2).validate().is_ok());
        assert!(RightAction::trivial_on(&Category::ordinal(1)).validate().is_ok());
        assert!(RightAction::regular(&StrictMonoidal::idempotent()).validate().is_ok());
    }
}
