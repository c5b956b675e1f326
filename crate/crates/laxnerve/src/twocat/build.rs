//! Materializing a 2-category from structural cell keys and composition rules.

use std::collections::HashMap;
use std::hash::Hash;

use super::{identity_def_name, identity_mor_name, BuildError, DefData, DefId, MorData, MorId, ObjId, TwoCategory};

/// A 2-category given by enumerators and composition rules on structured keys.
///
/// Keys must determine their own boundaries: composition receives only the keys.
pub trait CellSystem {
    type Obj: Clone + Eq + Hash;
    type Mor: Clone + Eq + Hash;
    type Def: Clone + Eq + Hash;

    fn objects(&self) -> Vec<Self::Obj>;
    /// 1-cells from `s` to `t`.
    fn hom(&self, s: &Self::Obj, t: &Self::Obj) -> Vec<Self::Mor>;
    /// 2-cells from `f` to `g`, for parallel `f, g`.
    fn hom2(&self, f: &Self::Mor, g: &Self::Mor) -> Vec<Self::Def>;
    fn id_mor(&self, x: &Self::Obj) -> Self::Mor;
    fn id_def(&self, f: &Self::Mor) -> Self::Def;
    /// `f∘g`.
    fn compose(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    /// `p·q`.
    fn vcompose(&self, p: &Self::Def, q: &Self::Def) -> Self::Def;
    /// `p∘q`.
    fn hcompose(&self, p: &Self::Def, q: &Self::Def) -> Self::Def;
    fn obj_name(&self, x: &Self::Obj) -> String;
    fn mor_name(&self, f: &Self::Mor) -> String;
    fn def_name(&self, p: &Self::Def) -> String;
}

/// A materialized 2-category together with the key of every cell.
pub struct Materialized<S: CellSystem> {
    pub cat: TwoCategory,
    pub objs: Vec<S::Obj>,
    pub mors: Vec<S::Mor>,
    pub defs: Vec<S::Def>,
    pub obj_ix: HashMap<S::Obj, ObjId>,
    pub mor_ix: HashMap<S::Mor, MorId>,
    pub def_ix: HashMap<S::Def, DefId>,
}

impl<S: CellSystem> Materialized<S> {
    pub fn obj(&self, k: &S::Obj) -> Option<ObjId> {
        self.obj_ix.get(k).copied()
    }
    pub fn mor(&self, k: &S::Mor) -> Option<MorId> {
        self.mor_ix.get(k).copied()
    }
    pub fn def(&self, k: &S::Def) -> Option<DefId> {
        self.def_ix.get(k).copied()
    }
}

/// Enumerates every cell and tabulates every composite; fails if a composite
/// lands outside the enumeration.
pub fn materialize<S: CellSystem>(sys: &S) -> Result<Materialized<S>, BuildError> {
    let objs = sys.objects();
    let mut obj_ix = HashMap::new();
    let mut obj_names = Vec::with_capacity(objs.len());
    for (i, o) in objs.iter().enumerate() {
        obj_ix.insert(o.clone(), ObjId(i as u32));
        obj_names.push(sys.obj_name(o));
    }

    let mut mors = Vec::new();
    let mut mor_data = Vec::new();
    let mut mor_ix = HashMap::new();
    let mut hom_lists: HashMap<(ObjId, ObjId), Vec<MorId>> = HashMap::new();
    for (i, s) in objs.iter().enumerate() {
        for (j, t) in objs.iter().enumerate() {
            let (si, tj) = (ObjId(i as u32), ObjId(j as u32));
            for f in sys.hom(s, t) {
                let id = MorId(mors.len() as u32);
                if mor_ix.insert(f.clone(), id).is_some() {
                    return Err(BuildError::DuplicateName(sys.mor_name(&f)));
                }
                mor_data.push(MorData {
                    name: sys.mor_name(&f),
                    src: si,
                    tgt: tj,
                });
                hom_lists.entry((si, tj)).or_default().push(id);
                mors.push(f);
            }
        }
    }
    let mut id_mor = Vec::with_capacity(objs.len());
    for (i, o) in objs.iter().enumerate() {
        let k = sys.id_mor(o);
        let m = *mor_ix
            .get(&k)
            .ok_or_else(|| BuildError::NotClosed(format!("identity of {}", obj_names[i])))?;
        mor_data[m.ix()].name = identity_mor_name(&obj_names[i]);
        id_mor.push(m);
    }

    let mut defs = Vec::new();
    let mut def_data = Vec::new();
    let mut def_ix = HashMap::new();
    for hom in hom_lists.values() {
        for &f in hom {
            for &g in hom {
                for p in sys.hom2(&mors[f.ix()], &mors[g.ix()]) {
                    let id = DefId(defs.len() as u32);
                    if def_ix.insert(p.clone(), id).is_some() {
                        return Err(BuildError::DuplicateName(sys.def_name(&p)));
                    }
                    def_data.push(DefData {
                        name: sys.def_name(&p),
                        src: f,
                        tgt: g,
                    });
                    defs.push(p);
                }
            }
        }
    }
    // Deterministic 2-cell order regardless of hash iteration: sort by (src, tgt, enumeration).
    let mut order: Vec<usize> = (0..defs.len()).collect();
    order.sort_by_key(|&i| (def_data[i].src, def_data[i].tgt, i));
    let defs: Vec<S::Def> = order.iter().map(|&i| defs[i].clone()).collect();
    let mut def_data: Vec<DefData> = order.iter().map(|&i| def_data[i].clone()).collect();
    let def_ix: HashMap<S::Def, DefId> = defs
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), DefId(i as u32)))
        .collect();
    drop(order);

    let mut id_def = Vec::with_capacity(mors.len());
    for (i, f) in mors.iter().enumerate() {
        let k = sys.id_def(f);
        let d = *def_ix
            .get(&k)
            .ok_or_else(|| BuildError::NotClosed(format!("identity 2-cell of {}", mor_data[i].name)))?;
        def_data[d.ix()].name = identity_def_name(&mor_data[i].name);
        id_def.push(d);
    }

    let mut hcomp1 = HashMap::new();
    for (vi, v) in mors.iter().enumerate() {
        let mid = mor_data[vi].tgt;
        for (ui, u) in mors.iter().enumerate() {
            if mor_data[ui].src != mid {
                continue;
            }
            let w = sys.compose(u, v);
            let wi = *mor_ix.get(&w).ok_or_else(|| {
                BuildError::NotClosed(format!("{} o {}", mor_data[ui].name, mor_data[vi].name))
            })?;
            hcomp1.insert((MorId(ui as u32), MorId(vi as u32)), wi);
        }
    }

    let mut out_defs: HashMap<MorId, Vec<usize>> = HashMap::new();
    for (i, d) in def_data.iter().enumerate() {
        out_defs.entry(d.src).or_default().push(i);
    }
    let mut vcomp = HashMap::new();
    for (ai, a) in defs.iter().enumerate() {
        if let Some(bs) = out_defs.get(&def_data[ai].tgt) {
            for &bi in bs {
                let c = sys.vcompose(&defs[bi], a);
                let ci = *def_ix.get(&c).ok_or_else(|| {
                    BuildError::NotClosed(format!("{} . {}", def_data[bi].name, def_data[ai].name))
                })?;
                vcomp.insert((DefId(bi as u32), DefId(ai as u32)), ci);
            }
        }
    }

    let mut defs_over_src: HashMap<ObjId, Vec<usize>> = HashMap::new();
    for (i, d) in def_data.iter().enumerate() {
        defs_over_src.entry(mor_data[d.src.ix()].src).or_default().push(i);
    }
    let mut hcomp2 = HashMap::new();
    for (ai, a) in defs.iter().enumerate() {
        let mid = mor_data[def_data[ai].src.ix()].tgt;
        if let Some(bs) = defs_over_src.get(&mid) {
            for &bi in bs {
                let c = sys.hcompose(&defs[bi], a);
                let ci = *def_ix.get(&c).ok_or_else(|| {
                    BuildError::NotClosed(format!("{} o {}", def_data[bi].name, def_data[ai].name))
                })?;
                hcomp2.insert((DefId(bi as u32), DefId(ai as u32)), ci);
            }
        }
    }

    let cat = TwoCategory::from_parts(obj_names, mor_data, def_data, id_mor, id_def, hcomp1, vcomp, hcomp2)?;
    Ok(Materialized {
        cat,
        objs,
        mors,
        defs,
        obj_ix,
        mor_ix,
        def_ix,
    })
}
