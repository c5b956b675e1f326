//! Finite 1-categories, including the ordinals `[n]`.

use std::collections::HashMap;

use super::{BuildError, ObjId, TwoCategory, TwoCategoryBuilder};
use crate::report::{ValidationReport, ViolationKind};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub u32);

impl ArrowId {
    pub fn ix(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone)]
struct ArrowData {
    name: String,
    src: ObjId,
    tgt: ObjId,
}

/// A finite category with a total composition table; `compose(f, g)` is `f∘g`.
#[derive(Debug, Clone)]
pub struct Category {
    objects: Vec<String>,
    arrows: Vec<ArrowData>,
    ids: Vec<ArrowId>,
    comp: HashMap<(ArrowId, ArrowId), ArrowId>,
    homs: HashMap<(ObjId, ObjId), Vec<ArrowId>>,
}

impl Category {
    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }
    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }
    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }
    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len() as u32).map(ArrowId)
    }
    pub fn obj_name(&self, x: ObjId) -> &str {
        &self.objects[x.ix()]
    }
    pub fn arrow_name(&self, f: ArrowId) -> &str {
        &self.arrows[f.ix()].name
    }
    pub fn src(&self, f: ArrowId) -> ObjId {
        self.arrows[f.ix()].src
    }
    pub fn tgt(&self, f: ArrowId) -> ObjId {
        self.arrows[f.ix()].tgt
    }
    pub fn id(&self, x: ObjId) -> ArrowId {
        self.ids[x.ix()]
    }
    pub fn is_identity(&self, f: ArrowId) -> bool {
        self.ids[self.src(f).ix()] == f
    }
    pub fn hom(&self, x: ObjId, y: ObjId) -> &[ArrowId] {
        self.homs.get(&(x, y)).map_or(&[], Vec::as_slice)
    }
    pub fn try_compose(&self, f: ArrowId, g: ArrowId) -> Option<ArrowId> {
        self.comp.get(&(f, g)).copied()
    }
    pub fn compose(&self, f: ArrowId, g: ArrowId) -> ArrowId {
        self.try_compose(f, g)
            .unwrap_or_else(|| panic!("no composite {} o {}", self.arrow_name(f), self.arrow_name(g)))
    }
    pub fn find_obj(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(|i| ObjId(i as u32))
    }
    pub fn find_arrow(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(|i| ArrowId(i as u32))
    }

    /// Assembles a category from complete tables; `validate` is the caller's business.
    pub(crate) fn from_raw(
        objects: Vec<String>,
        arrows: Vec<(String, ObjId, ObjId)>,
        ids: Vec<ArrowId>,
        comp: HashMap<(ArrowId, ArrowId), ArrowId>,
    ) -> Category {
        let arrows: Vec<ArrowData> = arrows
            .into_iter()
            .map(|(name, src, tgt)| ArrowData { name, src, tgt })
            .collect();
        let mut homs: HashMap<(ObjId, ObjId), Vec<ArrowId>> = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            homs.entry((a.src, a.tgt)).or_default().push(ArrowId(i as u32));
        }
        Category {
            objects,
            arrows,
            ids,
            comp,
            homs,
        }
    }

    /// The underlying 1-category of a 2-category; `ArrowId(i)` is `MorId(i)`.
    pub fn underlying(c: &TwoCategory) -> Category {
        let objects = c.objects().map(|x| c.obj_name(x).to_string()).collect();
        let arrows = c.mors().map(|u| (c.mor_name(u).to_string(), c.src(u), c.tgt(u))).collect();
        let ids = c.objects().map(|x| ArrowId(c.id_mor(x).0)).collect();
        let comp = c
            .raw_tables()
            .0
            .iter()
            .map(|(&(u, v), &w)| ((ArrowId(u.0), ArrowId(v.0)), ArrowId(w.0)))
            .collect();
        Self::from_raw(objects, arrows, ids, comp)
    }

    /// The poset `0 < 1 < … < n` with one arrow `j → i` whenever `i ≤ j`, named `i<j`.
    pub fn ordinal(n: usize) -> Category {
        let mut b = CategoryBuilder::new();
        for i in 0..=n {
            b.object(&i.to_string()).expect("fresh");
        }
        for i in 0..=n {
            for j in i + 1..=n {
                b.arrow(&format!("{i}<{j}"), &j.to_string(), &i.to_string()).expect("fresh");
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    b.compose(&format!("{i}<{j}"), &format!("{j}<{k}"), &format!("{i}<{k}"))
                        .expect("declared");
                }
            }
        }
        b.build()
    }

    /// The arrow `j → i` of an ordinal category (`i ≤ j`).
    pub fn ordinal_arrow(&self, i: usize, j: usize) -> ArrowId {
        self.hom(ObjId(j as u32), ObjId(i as u32))[0]
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport::new();
        for f in self.arrows() {
            for g in self.arrows() {
                if self.src(f) != self.tgt(g) {
                    continue;
                }
                match self.try_compose(f, g) {
                    None => r.push(ViolationKind::MissingTableEntry, format!(
                        "{} o {}",
                        self.arrow_name(f),
                        self.arrow_name(g)
                    )),
                    Some(h) => r.require(
                        self.src(h) == self.src(g) && self.tgt(h) == self.tgt(f),
                        ViolationKind::BoundaryMismatch,
                        || format!("{} o {} = {}", self.arrow_name(f), self.arrow_name(g), self.arrow_name(h)),
                    ),
                }
            }
        }
        if !r.is_ok() {
            return r;
        }
        for f in self.arrows() {
            let (s, t) = (self.src(f), self.tgt(f));
            r.require(
                self.compose(f, self.id(s)) == f && self.compose(self.id(t), f) == f,
                ViolationKind::UnitViolation,
                || self.arrow_name(f).to_string(),
            );
        }
        for h in self.arrows() {
            for g in self.arrows().filter(|&g| self.tgt(g) == self.src(h)) {
                for f in self.arrows().filter(|&f| self.tgt(f) == self.src(g)) {
                    r.require(
                        self.compose(self.compose(h, g), f) == self.compose(h, self.compose(g, f)),
                        ViolationKind::AssociativityViolation,
                        || format!("{} {} {}", self.arrow_name(h), self.arrow_name(g), self.arrow_name(f)),
                    );
                }
            }
        }
        r
    }

    /// The same category as a 2-category whose 2-cells are all identities.
    pub fn to_two_category(&self) -> Result<TwoCategory, BuildError> {
        let mut b = TwoCategoryBuilder::new();
        for o in &self.objects {
            b.object_unchecked(o.clone(), false)?;
        }
        let mut names = Vec::with_capacity(self.arrows.len());
        for f in self.arrows() {
            let name = if self.is_identity(f) {
                super::identity_mor_name(self.obj_name(self.src(f)))
            } else {
                let n = self.arrow_name(f).to_string();
                b.mor(&n, self.obj_name(self.src(f)), self.obj_name(self.tgt(f)))?;
                n
            };
            names.push(name);
        }
        for (&(f, g), &h) in &self.comp {
            b.hcomp1(&names[f.ix()], &names[g.ix()], &names[h.ix()])?;
        }
        Ok(b.build())
    }
}

#[derive(Debug, Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    arrows: Vec<ArrowData>,
    ids: Vec<ArrowId>,
    comp: HashMap<(ArrowId, ArrowId), ArrowId>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, name: &str) -> Result<ObjId, BuildError> {
        if self.objects.iter().any(|o| o == name) {
            return Err(BuildError::DuplicateName(name.to_string()));
        }
        let x = ObjId(self.objects.len() as u32);
        self.objects.push(name.to_string());
        let id = ArrowId(self.arrows.len() as u32);
        self.arrows.push(ArrowData {
            name: super::identity_mor_name(name),
            src: x,
            tgt: x,
        });
        self.ids.push(id);
        Ok(x)
    }

    fn obj(&self, name: &str) -> Result<ObjId, BuildError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .map(|i| ObjId(i as u32))
            .ok_or_else(|| BuildError::UnknownName(name.to_string()))
    }

    fn arrow_id(&self, name: &str) -> Result<ArrowId, BuildError> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .map(|i| ArrowId(i as u32))
            .ok_or_else(|| BuildError::UnknownName(name.to_string()))
    }

    pub fn arrow(&mut self, name: &str, src: &str, tgt: &str) -> Result<ArrowId, BuildError> {
        if self.arrows.iter().any(|a| a.name == name) {
            return Err(BuildError::DuplicateName(name.to_string()));
        }
        let (s, t) = (self.obj(src)?, self.obj(tgt)?);
        let f = ArrowId(self.arrows.len() as u32);
        self.arrows.push(ArrowData {
            name: name.to_string(),
            src: s,
            tgt: t,
        });
        Ok(f)
    }

    /// Records `f∘g = h`.
    pub fn compose(&mut self, f: &str, g: &str, h: &str) -> Result<(), BuildError> {
        let k = (self.arrow_id(f)?, self.arrow_id(g)?);
        let h = self.arrow_id(h)?;
        self.comp.insert(k, h);
        Ok(())
    }

    pub fn build(self) -> Category {
        let mut comp = self.comp;
        for (i, a) in self.arrows.iter().enumerate() {
            let f = ArrowId(i as u32);
            comp.entry((f, self.ids[a.src.ix()])).or_insert(f);
            comp.entry((self.ids[a.tgt.ix()], f)).or_insert(f);
        }
        let mut homs: HashMap<(ObjId, ObjId), Vec<ArrowId>> = HashMap::new();
        for (i, a) in self.arrows.iter().enumerate() {
            homs.entry((a.src, a.tgt)).or_default().push(ArrowId(i as u32));
        }
        Category {
            objects: self.objects,
            arrows: self.arrows,
            ids: self.ids,
            comp,
            homs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordinals_are_valid_posets() {
        for n in 0..4 {
            let c = Category::ordinal(n);
            assert!(c.validate().is_ok());
            assert_eq!(c.num_arrows(), (n + 1) * (n + 2) / 2);
        }
        let c = Category::ordinal(2);
        let f = c.ordinal_arrow(0, 1);
        let g = c.ordinal_arrow(1, 2);
        assert_eq!(c.compose(f, g), c.ordinal_arrow(0, 2));
    }

    #[test]
    fn discrete_two_category_of_interval() {
        let t = Category::ordinal(1).to_two_category().unwrap();
        assert!(t.validate().is_ok());
        assert!(t.is_discrete());
        assert_eq!(t.num_mors(), 3);
    }
}
