//! Homotopy colimits of strict 2-diagrams and the two simplicial bijections
//! `W̄ N hocolim F ≅ W̄ NN ∫F` (diagrams of categories over a 2-category) and
//! `W̄ S ≅ Δ∫F` (diagrams of 2-categories over a category).

use thiserror::Error;

use crate::grothendieck::{grothendieck, validate_two_diagram, Grothendieck, TotalDeformation, TotalMorphism, TotalObject, TwoDiagram};
use crate::nerves::{
    geometric_nerve, lax_simplices, nerve_two_category, one_cell_strings, Budget, LaxSimplex, LevelCategory, NerveError,
    Part, SimplicialCategory,
};
use crate::report::{ValidationReport, ViolationKind};
use crate::simplicial::{
    BisimplicialOps, Key, SimplicialError, SimplicialMap, TruncBisimplicialSet, TruncSimplicialSet,
};
use crate::twocat::{DefId, MorId, ObjId, TwoCategory};

#[derive(Debug, Error)]
pub enum HocolimError {
    #[error("diagram is not strict: {0}")]
    NonStrictDiagram(String),
    #[error("fibre over `{0}` has non-identity 2-cells")]
    FibreNotCategory(String),
    #[error("base has non-identity 2-cells")]
    BaseNotCategory,
    #[error("truncation {0} is too small")]
    CapTooSmall(usize),
    #[error("invalid 2-diagram:\n{0}")]
    DiagramInvalid(String),
    #[error(transparent)]
    Grothendieck(#[from] crate::grothendieck::GrothendieckError),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

fn require_strict(d: &TwoDiagram) -> Result<(), HocolimError> {
    let r = validate_two_diagram(d);
    if !r.is_ok() {
        return Err(HocolimError::DiagramInvalid(r.to_string()));
    }
    let c = &d.base;
    for (&(u, v), comps) in &d.zeta {
        let fx = d.fib(c.src(v));
        if !comps.iter().all(|&m| fx.is_identity_mor(m)) {
            return Err(HocolimError::NonStrictDiagram(format!(
                "zeta_({}, {}) is not an identity",
                c.mor_name(u),
                c.mor_name(v)
            )));
        }
    }
    Ok(())
}

fn has_only_identity_defs(c: &TwoCategory) -> bool {
    c.defs().all(|a| c.is_identity_def(a))
}

/// The 1-cell strings `u_1, …, u_q` (`u_k: x_k → x_{k−1}`) paired with `x_0`; `q = 0` gives bare objects.
fn based_strings(c: &TwoCategory, q: usize) -> Vec<(ObjId, Vec<MorId>)> {
    if q == 0 {
        c.objects().map(|x| (x, Vec::new())).collect()
    } else {
        one_cell_strings(c, q).into_iter().map(|s| (c.tgt(s[0]), s)).collect()
    }
}

/// Vertex `i` of a string based at `x0`.
fn string_vertex(c: &TwoCategory, x0: ObjId, s: &[MorId], i: usize) -> ObjId {
    if i == 0 {
        x0
    } else {
        c.src(s[i - 1])
    }
}

/// `d_j` on a string for `j ≥ 1`: compose at `j` or drop the last 1-cell.
fn string_face(c: &TwoCategory, s: &[MorId], j: usize) -> Vec<MorId> {
    let q = s.len();
    if j == q {
        return s[..q - 1].to_vec();
    }
    let mut v = s[..j - 1].to_vec();
    v.push(c.compose(s[j - 1], s[j]));
    v.extend_from_slice(&s[j + 1..]);
    v
}

fn string_degen(c: &TwoCategory, x0: ObjId, s: &[MorId], j: usize) -> Vec<MorId> {
    let mut v = s.to_vec();
    v.insert(j, c.id_mor(string_vertex(c, x0, s, j)));
    v
}

fn ids<T: Copy>(v: &[u32], f: impl Fn(u32) -> T) -> Vec<T> {
    v.iter().map(|&x| f(x)).collect()
}

// ---------------------------------------------------------------------------
// hocolim of a 2-functor into categories.

/// `hocolim_C F` for a strict diagram of categories: level `n` is the coproduct of
/// `F_{x_0} × C(x_1, x_0) × ⋯ × C(x_n, x_{n−1})`.
///
/// Object keys are `[x_0, a, u_1, …, u_n]`, arrow keys `[x_0, f, α_1, …, α_n]`.
pub fn hocolim_two_functor(d: &TwoDiagram, cap: usize) -> Result<SimplicialCategory, HocolimError> {
    require_strict(d)?;
    let c = &d.base;
    for x in c.objects() {
        if !has_only_identity_defs(d.fib(x)) {
            return Err(HocolimError::FibreNotCategory(c.obj_name(x).to_string()));
        }
    }
    let mut levels = Vec::with_capacity(cap + 1);
    for n in 0..=cap {
        let mut objs = Vec::new();
        let mut arrows = Vec::new();
        for (x0, s) in based_strings(c, n) {
            let fx = d.fib(x0);
            let us = s.iter().map(|&u| c.mor_name(u)).collect::<Vec<_>>().join(",");
            for a in fx.objects() {
                let mut k = vec![x0.0, a.0];
                k.extend(s.iter().map(|u| u.0));
                objs.push((k, format!("({};{})", fx.obj_name(a), us)));
            }
            let mut chains: Vec<Vec<DefId>> = vec![Vec::new()];
            for &u in &s {
                chains = chains
                    .into_iter()
                    .flat_map(|ch| {
                        c.defs().filter(move |&al| c.def_src(al) == u).map(move |al| {
                            let mut t = ch.clone();
                            t.push(al);
                            t
                        })
                    })
                    .collect();
            }
            for f in fx.mors() {
                for ch in &chains {
                    let mut k = vec![x0.0, f.0];
                    k.extend(ch.iter().map(|a| a.0));
                    let mut src = vec![x0.0, fx.src(f).0];
                    src.extend(ch.iter().map(|&a| c.def_src(a).0));
                    let mut tgt = vec![x0.0, fx.tgt(f).0];
                    tgt.extend(ch.iter().map(|&a| c.def_tgt(a).0));
                    let name = format!(
                        "({};{})",
                        fx.mor_name(f),
                        ch.iter().map(|&a| c.def_name(a)).collect::<Vec<_>>().join(",")
                    );
                    arrows.push((k, name, src, tgt));
                }
            }
        }
        levels.push(LevelCategory::build(
            objs,
            arrows,
            |k| {
                let fx = d.fib(ObjId(k[0]));
                let mut v = vec![k[0], fx.id_mor(ObjId(k[1])).0];
                v.extend(k[2..].iter().map(|&u| c.id_def(MorId(u)).0));
                v
            },
            |f, g| {
                let fx = d.fib(ObjId(f[0]));
                let mut v = vec![f[0], fx.compose(MorId(f[1]), MorId(g[1])).0];
                v.extend(f[2..].iter().zip(&g[2..]).map(|(&b, &a)| c.vcompose(DefId(b), DefId(a)).0));
                v
            },
        )?);
    }
    // The 1-cell string underlying a key, for objects and arrows alike.
    let string_of = |part: Part, k: &Key| -> Vec<MorId> {
        match part {
            Part::Obj => ids(&k[2..], MorId),
            Part::Arrow => k[2..].iter().map(|&a| c.def_src(DefId(a))).collect(),
        }
    };
    Ok(SimplicialCategory::from_fn(
        cap,
        levels,
        |n, i, part, k| {
            let x0 = ObjId(k[0]);
            if i == 0 {
                // (f, α) ↦ α*_b∘u*f in F_{x_1}.
                let u = string_of(part, k)[0];
                let x1 = c.src(u);
                let head = match part {
                    Part::Obj => d.star(u).on_obj(ObjId(k[1])).0,
                    Part::Arrow => {
                        let (fx0, fx1) = (d.fib(x0), d.fib(x1));
                        let f = MorId(k[1]);
                        let al = DefId(k[2]);
                        fx1.compose(d.alpha_at(al, fx0.tgt(f)), d.star(u).on_mor(f)).0
                    }
                };
                let mut v = vec![x1.0, head];
                v.extend_from_slice(&k[3..]);
                return v;
            }
            let mut v = k[..2].to_vec();
            let tail = &k[2..];
            if i == n {
                v.extend_from_slice(&tail[..n - 1]);
            } else {
                v.extend_from_slice(&tail[..i - 1]);
                v.push(match part {
                    Part::Obj => c.compose(MorId(tail[i - 1]), MorId(tail[i])).0,
                    Part::Arrow => c.hcompose(DefId(tail[i - 1]), DefId(tail[i])).0,
                });
                v.extend_from_slice(&tail[i + 1..]);
            }
            v
        },
        |_n, i, part, k| {
            let s = string_of(part, k);
            let x = string_vertex(c, ObjId(k[0]), &s, i);
            let ins = match part {
                Part::Obj => c.id_mor(x).0,
                Part::Arrow => c.id_def(c.id_mor(x)).0,
            };
            let mut v = k.clone();
            v.insert(2 + i, ins);
            v
        },
    )?)
}

// ---------------------------------------------------------------------------
// The bijection W̄ N hocolim F ≅ W̄ NN ∫F.

/// The common data of a `p`-simplex on either side: objects `x_m`, `a_m ∈ F_{x_m}`; for each
/// slot `g = 1..p` 1-cells `u_g^k: x_g → x_{g−1}` (`k < g`), 2-cells `α_g^k: u_g^k ⇒ u_g^{k−1}`
/// (`1 ≤ k < g`), and `f_g: a_g → (u_g^{g−1})*a_{g−1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ChainData {
    x: Vec<ObjId>,
    a: Vec<ObjId>,
    u: Vec<Vec<MorId>>,
    /// `alpha[g][k − 1] = α_g^k`.
    alpha: Vec<Vec<DefId>>,
    /// `f[g − 1] = f_g`.
    f: Vec<MorId>,
}

const MISSING: u32 = u32::MAX;

/// `W̄S₁ → W̄S₂` and back, with `S₁ = N hocolim F` and `S₂ = NN ∫F` both read with the
/// nerve-of-categories direction horizontal.
#[derive(Debug, Clone)]
pub struct ThomasonI {
    pub total: Grothendieck,
    pub wbar_hocolim: TruncSimplicialSet,
    pub wbar_total: TruncSimplicialSet,
    pub map: SimplicialMap,
    pub inverse: SimplicialMap,
}

impl ThomasonI {
    /// Both maps are simplicial and mutually inverse in every dimension.
    pub fn check(&self) -> ValidationReport {
        check_bijection(&self.map, &self.inverse, &self.wbar_hocolim, &self.wbar_total)
    }
}

fn check_bijection(
    map: &SimplicialMap,
    inverse: &SimplicialMap,
    src: &TruncSimplicialSet,
    tgt: &TruncSimplicialSet,
) -> ValidationReport {
    let mut r = map.validate(src, tgt);
    r.extend(inverse.validate(tgt, src), "inverse");
    if r.is_ok() {
        r.require(
            inverse.after(map) == SimplicialMap::identity(src) && map.after(inverse) == SimplicialMap::identity(tgt),
            ViolationKind::MapNotSimplicial,
            || "round trip is not the identity".into(),
        );
    }
    r
}

struct Sides<'a> {
    d: &'a TwoDiagram,
    total: &'a Grothendieck,
    hc: &'a SimplicialCategory,
    s1: &'a TruncBisimplicialSet,
    nt: &'a SimplicialCategory,
    s2: &'a TruncBisimplicialSet,
}

impl Sides<'_> {
    fn decode_hocolim(&self, p: usize, key: &Key) -> ChainData {
        let (d, c) = (self.d, &self.d.base);
        let chain = |m: usize| self.s1.key(m, p - m, key[m]);
        let level = |m: usize| self.hc.level(p - m);
        let t0 = &level(0).obj_keys[chain(0)[0] as usize];
        let x0 = ObjId(t0[0]);
        let mut data = ChainData {
            x: vec![x0],
            a: vec![ObjId(t0[1])],
            u: vec![Vec::new()],
            alpha: vec![Vec::new()],
            f: Vec::new(),
        };
        for g in 1..=p {
            // t_0 is a bare object; chains of arrows start at t_1.
            let alphas: Vec<DefId> = chain(g - 1)
                .iter()
                .take(g - 1)
                .map(|&ar| DefId(level(g - 1).arrow_keys[ar as usize][2]))
                .collect();
            let mut us = vec![MorId(t0[1 + g])];
            us.extend(alphas.iter().map(|&al| c.def_src(al)));
            data.x.push(c.src(us[0]));
            data.u.push(us);
            data.alpha.push(alphas);
            let last = &level(g).arrow_keys[*chain(g).last().expect("g ≥ 1") as usize];
            let f = MorId(last[1]);
            data.a.push(d.fib(data.x[g]).src(f));
            data.f.push(f);
        }
        data
    }

    /// The `k`-th 1-cell of slot `g` in the total 2-category, with its fibre component.
    fn total_slot(&self, data: &ChainData, g: usize) -> Vec<TotalMorphism> {
        let d = self.d;
        let fx = d.fib(data.x[g]);
        let mut fs = vec![data.f[g - 1]; g];
        for k in (1..g).rev() {
            fs[k - 1] = fx.compose(d.alpha_at(data.alpha[g][k - 1], data.a[g - 1]), fs[k]);
        }
        (0..g)
            .map(|k| TotalMorphism {
                src: TotalObject {
                    x: data.x[g],
                    a: data.a[g],
                },
                tgt: TotalObject {
                    x: data.x[g - 1],
                    a: data.a[g - 1],
                },
                u: data.u[g][k],
                f: fs[k],
            })
            .collect()
    }

    fn encode_total(&self, p: usize, data: &ChainData) -> Key {
        let t = self.total;
        let find_mor = |m: &TotalMorphism| t.find_morphism(m).map_or(MISSING, |x| x.0);
        let slots: Vec<Vec<TotalMorphism>> =
            (0..=p).map(|g| if g == 0 { Vec::new() } else { self.total_slot(data, g) }).collect();
        // β_g^k: w_g^k ⇒ w_g^{k−1}, whose fibre part is an identity.
        let beta = |g: usize, k: usize| -> u32 {
            let (src, tgt) = (slots[g][k], slots[g][k - 1]);
            t.find_deformation(&TotalDeformation {
                src,
                tgt,
                alpha: data.alpha[g][k - 1],
                phi: self.d.fib(data.x[g]).id_def(tgt.f),
            })
            .map_or(MISSING, |x| x.0)
        };
        let point = |m: usize| {
            t.find_object(&TotalObject {
                x: data.x[m],
                a: data.a[m],
            })
            .map_or(MISSING, |x| x.0)
        };
        (0..=p)
            .map(|m| {
                let q = p - m;
                let lvl = self.nt.level(q);
                let chain: Key = if m == 0 {
                    let k = if p == 0 { vec![point(0)] } else { (1..=p).map(|g| find_mor(&slots[g][0])).collect() };
                    vec![lvl.find_obj(&k).map_or(MISSING, |x| x.0)]
                } else {
                    (1..=m)
                        .map(|k| {
                            let ak: Key = if q == 0 { vec![point(m)] } else { (m + 1..=p).map(|g| beta(g, k)).collect() };
                            lvl.find_arrow(&ak).map_or(MISSING, |x| x.0)
                        })
                        .collect()
                };
                self.s2.find(m, q, &chain).unwrap_or(MISSING)
            })
            .collect()
    }

    fn decode_total(&self, p: usize, key: &Key) -> ChainData {
        let t = self.total;
        let chain = |m: usize| self.s2.key(m, p - m, key[m]);
        let level = |m: usize| self.nt.level(p - m);
        let t0 = &level(0).obj_keys[chain(0)[0] as usize];
        if p == 0 {
            let o = t.objects[t0[0] as usize];
            return ChainData {
                x: vec![o.x],
                a: vec![o.a],
                u: vec![Vec::new()],
                alpha: vec![Vec::new()],
                f: Vec::new(),
            };
        }
        let w0: Vec<TotalMorphism> = t0.iter().map(|&m| t.morphisms[m as usize]).collect();
        let mut data = ChainData {
            x: vec![w0[0].tgt.x],
            a: vec![w0[0].tgt.a],
            u: vec![Vec::new()],
            alpha: vec![Vec::new()],
            f: Vec::new(),
        };
        for g in 1..=p {
            let w = w0[g - 1];
            data.x.push(w.src.x);
            data.a.push(w.src.a);
            let betas: Vec<TotalDeformation> = chain(g - 1)
                .iter()
                .take(g - 1)
                .map(|&ar| t.deformations[level(g - 1).arrow_keys[ar as usize][0] as usize])
                .collect();
            let mut us = vec![w.u];
            us.extend(betas.iter().map(|b| b.src.u));
            data.u.push(us);
            data.alpha.push(betas.iter().map(|b| b.alpha).collect());
            data.f.push(betas.last().map_or(w.f, |b| b.src.f));
        }
        data
    }

    fn encode_hocolim(&self, p: usize, data: &ChainData) -> Key {
        let d = self.d;
        // b[m][k] and fm[m][k − 1]: the m-chain of F_{x_m} carried by t_m.
        let mut b: Vec<Vec<ObjId>> = vec![vec![data.a[0]]];
        let mut fm: Vec<Vec<MorId>> = vec![Vec::new()];
        for m in 1..=p {
            let fx = d.fib(data.x[m]);
            let mut bm: Vec<ObjId> = (0..m).map(|k| d.star(data.u[m][k]).on_obj(b[m - 1][k])).collect();
            bm.push(data.a[m]);
            let mut fs: Vec<MorId> = (1..m)
                .map(|k| {
                    let pushed = d.star(data.u[m][k]).on_mor(fm[m - 1][k - 1]);
                    fx.compose(d.alpha_at(data.alpha[m][k - 1], b[m - 1][k - 1]), pushed)
                })
                .collect();
            fs.push(data.f[m - 1]);
            b.push(bm);
            fm.push(fs);
        }
        (0..=p)
            .map(|m| {
                let q = p - m;
                let lvl = self.hc.level(q);
                let chain: Key = if m == 0 {
                    let mut k = vec![data.x[0].0, data.a[0].0];
                    k.extend((1..=p).map(|g| data.u[g][0].0));
                    vec![lvl.find_obj(&k).map_or(MISSING, |x| x.0)]
                } else {
                    (1..=m)
                        .map(|k| {
                            let mut ak = vec![data.x[m].0, fm[m][k - 1].0];
                            ak.extend((m + 1..=p).map(|g| data.alpha[g][k - 1].0));
                            lvl.find_arrow(&ak).map_or(MISSING, |x| x.0)
                        })
                        .collect()
                };
                self.s1.find(m, q, &chain).unwrap_or(MISSING)
            })
            .collect()
    }
}

/// The bijection for a strict diagram of categories over a 2-category, up to `cap`.
pub fn thomason_iso_i(d: &TwoDiagram, cap: usize) -> Result<ThomasonI, HocolimError> {
    if cap < 1 {
        return Err(HocolimError::CapTooSmall(cap));
    }
    let hc = hocolim_two_functor(d, cap)?;
    let total = grothendieck(d)?;
    let nt = nerve_two_category(&total.cat, cap)?;
    let s1 = hc.nerve().transpose();
    let s2 = nt.nerve().transpose();
    let wbar_hocolim = s1.codiagonal()?;
    let wbar_total = s2.codiagonal()?;
    let sides = Sides {
        d,
        total: &total,
        hc: &hc,
        s1: &s1,
        nt: &nt,
        s2: &s2,
    };
    let map = SimplicialMap::from_key_fn(&wbar_hocolim, &wbar_total, |p, k| {
        sides.encode_total(p, &sides.decode_hocolim(p, k))
    })?;
    let inverse = SimplicialMap::from_key_fn(&wbar_total, &wbar_hocolim, |p, k| {
        sides.encode_hocolim(p, &sides.decode_total(p, k))
    })?;
    Ok(ThomasonI {
        total,
        wbar_hocolim,
        wbar_total,
        map,
        inverse,
    })
}

// ---------------------------------------------------------------------------
// Diagrams of 2-categories over a category.

/// Length of the key of a lax `p`-simplex.
fn lax_key_len(p: usize) -> usize {
    let w = p + 1;
    w + w * p / 2 + w * p * p.saturating_sub(1) / 6
}

/// A `(p, q)`-simplex `(y, x)`: `y: [p] ⇝ F_{x_0}` and the string `x: [q] → C`.
struct Pair {
    x0: ObjId,
    y: LaxSimplex,
    s: Vec<MorId>,
}

impl Pair {
    fn decode(d: &TwoDiagram, p: usize, k: &[u32]) -> Pair {
        let x0 = ObjId(k[0]);
        let n = lax_key_len(p);
        Pair {
            x0,
            y: LaxSimplex::from_key(d.fib(x0), p, &k[1..1 + n]),
            s: ids(&k[1 + n..], MorId),
        }
    }
    fn key(&self) -> Key {
        let mut k = vec![self.x0.0];
        k.extend(self.y.key());
        k.extend(self.s.iter().map(|u| u.0));
        k
    }
    /// `x_{0,1}^* y` in `F_{x_1}`.
    fn pushed(&self, d: &TwoDiagram) -> Pair {
        let u = self.s[0];
        let x1 = d.base.src(u);
        let lax = d.star(u).to_lax(d.fib(self.x0), d.fib(x1));
        Pair {
            x0: x1,
            y: self.y.compose_with(&lax, d.fib(x1)),
            s: self.s[1..].to_vec(),
        }
    }
}

fn require_base_category(d: &TwoDiagram) -> Result<(), HocolimError> {
    if !has_only_identity_defs(&d.base) {
        return Err(HocolimError::BaseNotCategory);
    }
    require_strict(d)
}

fn fibre_simplices(d: &TwoDiagram, cap: usize, budget: u64) -> Result<Vec<Vec<Vec<LaxSimplex>>>, HocolimError> {
    let mut b = Budget::new(budget);
    Ok(d.fibres.iter().map(|f| lax_simplices(f, cap, &mut b)).collect::<Result<_, _>>()?)
}

/// `S = ⊔_{x ∈ NC} ΔF_{x_0}`: horizontal index `p` is the lax direction, vertical `q`
/// the nerve of the base. Keys are `[x_0] ++ key(y) ++ x`.
pub fn hocolim_diagram_of_2cats(d: &TwoDiagram, cap: usize, budget: u64) -> Result<TruncBisimplicialSet, HocolimError> {
    require_base_category(d)?;
    let c = &d.base;
    let simplices = fibre_simplices(d, cap, budget)?;
    let keys = (0..=cap)
        .map(|p| {
            (0..=cap)
                .map(|q| {
                    let mut v = Vec::new();
                    for (x0, s) in based_strings(c, q) {
                        for y in &simplices[x0.ix()][p] {
                            v.push(Pair { x0, y: y.clone(), s: s.clone() }.key());
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    Ok(TruncBisimplicialSet::from_fn(
        cap,
        keys,
        BisimplicialOps {
            hface: |p: usize, _q: usize, i: usize, k: &Key| {
                let mut t = Pair::decode(d, p, k);
                t.y = t.y.face(d.fib(t.x0), i);
                t.key()
            },
            hdegen: |p: usize, _q: usize, i: usize, k: &Key| {
                let mut t = Pair::decode(d, p, k);
                t.y = t.y.degen(d.fib(t.x0), i);
                t.key()
            },
            vface: |p: usize, _q: usize, j: usize, k: &Key| {
                let mut t = Pair::decode(d, p, k);
                if j == 0 {
                    return t.pushed(d).key();
                }
                t.s = string_face(c, &t.s, j);
                t.key()
            },
            vdegen: |p: usize, _q: usize, j: usize, k: &Key| {
                let mut t = Pair::decode(d, p, k);
                t.s = string_degen(c, t.x0, &t.s, j);
                t.key()
            },
        },
    )?)
}

/// `hocolim_C ΔF` directly: `n`-simplices `(y, x)` with `y ∈ ΔF_{x_0}`, `x ∈ N_n C`,
/// `d_0 = (x_{0,1}^* d_0 y, d_0 x)` and `d_i = (d_i y, d_i x)` otherwise.
pub fn hocolim_of_nerves(d: &TwoDiagram, cap: usize, budget: u64) -> Result<TruncSimplicialSet, HocolimError> {
    require_base_category(d)?;
    let c = &d.base;
    let simplices = fibre_simplices(d, cap, budget)?;
    let keys = (0..=cap)
        .map(|n| {
            let mut v = Vec::new();
            for (x0, s) in based_strings(c, n) {
                for y in &simplices[x0.ix()][n] {
                    v.push(Pair { x0, y: y.clone(), s: s.clone() }.key());
                }
            }
            v
        })
        .collect();
    Ok(TruncSimplicialSet::from_fn(
        cap,
        keys,
        |n, i, k| {
            let t = Pair::decode(d, n, k);
            let y = t.y.face(d.fib(t.x0), i);
            if i == 0 {
                let moved = Pair { x0: t.x0, y, s: t.s }.pushed(d);
                return moved.key();
            }
            Pair {
                x0: t.x0,
                y,
                s: string_face(c, &t.s, i),
            }
            .key()
        },
        |n, i, k| {
            let t = Pair::decode(d, n, k);
            Pair {
                x0: t.x0,
                y: t.y.degen(d.fib(t.x0), i),
                s: string_degen(c, t.x0, &t.s, i),
            }
            .key()
        },
    )?)
}

/// A normal `x`-crossed lax functor `[p] ⇝ F` over a functor `x: [p] → C`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedLaxFunctor {
    /// `x_i`.
    pub base_objs: Vec<ObjId>,
    /// `base_mors[i][j] = x_{i,j}: x_j → x_i` for `i ≤ j`.
    pub base_mors: Vec<Vec<MorId>>,
    /// `y'_i ∈ F_{x_i}`.
    pub objs: Vec<ObjId>,
    /// `mors[i][j] = y'_{i,j}: y'_j → x_{i,j}^* y'_i` in `F_{x_j}`.
    pub mors: Vec<Vec<MorId>>,
    /// `defs[i][j][k] = y'_{i,j,k}: x_{j,k}^* y'_{i,j}∘y'_{j,k} ⇒ y'_{i,k}` in `F_{x_k}`.
    pub defs: Vec<Vec<Vec<DefId>>>,
}

impl CrossedLaxFunctor {
    pub fn dim(&self) -> usize {
        self.objs.len() - 1
    }

    /// Typing, normalization, and the commuting square in `F_{x_l}` for `i ≤ j ≤ k ≤ l`.
    pub fn audit(&self, d: &TwoDiagram) -> ValidationReport {
        use ViolationKind::*;
        let mut r = ValidationReport::new();
        let n = self.dim() + 1;
        let xm = |i: usize, j: usize| self.base_mors[i][j];
        for i in 0..n {
            for j in i..n {
                let fj = d.fib(self.base_objs[j]);
                let m = self.mors[i][j];
                r.require(
                    fj.src(m) == self.objs[j] && fj.tgt(m) == d.star(xm(i, j)).on_obj(self.objs[i]),
                    BoundaryMismatch,
                    || format!("y'_({i},{j})"),
                );
            }
            let fi = d.fib(self.base_objs[i]);
            r.require(fi.is_identity_mor(self.mors[i][i]), NormalizationViolation, || format!("y'_({i},{i})"));
        }
        if !r.is_ok() {
            return r;
        }
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    let fk = d.fib(self.base_objs[k]);
                    let a = self.defs[i][j][k];
                    let src = fk.compose(d.star(xm(j, k)).on_mor(self.mors[i][j]), self.mors[j][k]);
                    r.require(
                        fk.def_src(a) == src && fk.def_tgt(a) == self.mors[i][k],
                        BoundaryMismatch,
                        || format!("y'_({i},{j},{k})"),
                    );
                    if i == j || j == k {
                        r.require(fk.is_identity_def(a), NormalizationViolation, || format!("y'_({i},{j},{k})"));
                    }
                }
            }
        }
        if !r.is_ok() {
            return r;
        }
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    for l in k..n {
                        let fl = d.fib(self.base_objs[l]);
                        let lhs = fl.vcompose(
                            self.defs[i][k][l],
                            fl.whisker_right(d.star(xm(k, l)).on_def(self.defs[i][j][k]), self.mors[k][l]),
                        );
                        let rhs = fl.vcompose(
                            self.defs[i][j][l],
                            fl.whisker_left(d.star(xm(j, l)).on_mor(self.mors[i][j]), self.defs[j][k][l]),
                        );
                        r.require(lhs == rhs, CocycleViolation, || format!("square at ({i},{j},{k},{l})"));
                    }
                }
            }
        }
        r
    }
}

/// `W̄S → Δ∫F` and back, with the crossed lax functor of every simplex.
#[derive(Debug, Clone)]
pub struct ThomasonII {
    pub total: Grothendieck,
    pub wbar: TruncSimplicialSet,
    pub total_nerve: TruncSimplicialSet,
    pub map: SimplicialMap,
    pub inverse: SimplicialMap,
    /// `crossed[p][t]` for the `p`-simplex `t` of `W̄S`.
    pub crossed: Vec<Vec<CrossedLaxFunctor>>,
}

impl ThomasonII {
    pub fn check(&self) -> ValidationReport {
        let mut r = check_bijection(&self.map, &self.inverse, &self.wbar, &self.total_nerve);
        for (p, level) in self.crossed.iter().enumerate() {
            for (t, x) in level.iter().enumerate() {
                r.extend(x.audit(&self.total.diagram), &format!("crossed lax functor of {p}-simplex {t}"));
            }
        }
        r
    }
}

fn base_composites(c: &TwoCategory, x0: ObjId, s: &[MorId]) -> (Vec<ObjId>, Vec<Vec<MorId>>) {
    let n = s.len() + 1;
    let objs: Vec<ObjId> = (0..n).map(|i| string_vertex(c, x0, s, i)).collect();
    let mut mors = vec![vec![MorId(MISSING); n]; n];
    for i in 0..n {
        mors[i][i] = c.id_mor(objs[i]);
        for j in i + 1..n {
            mors[i][j] = c.compose(mors[i][j - 1], s[j - 1]);
        }
    }
    (objs, mors)
}

fn decode_wbar(d: &TwoDiagram, s: &TruncBisimplicialSet, p: usize, key: &Key) -> CrossedLaxFunctor {
    let t: Vec<Pair> = (0..=p).map(|m| Pair::decode(d, m, s.key(m, p - m, key[m]))).collect();
    let (base_objs, base_mors) = base_composites(&d.base, t[0].x0, &t[0].s);
    let n = p + 1;
    let mut mors = vec![vec![MorId(MISSING); n]; n];
    let mut defs = vec![vec![vec![DefId(MISSING); n]; n]; n];
    for i in 0..n {
        for j in i..n {
            mors[i][j] = t[j].y.mor(i, j);
            for k in j..n {
                defs[i][j][k] = t[k].y.def(i, j, k);
            }
        }
    }
    CrossedLaxFunctor {
        objs: (0..n).map(|i| t[i].y.obj(i)).collect(),
        base_objs,
        base_mors,
        mors,
        defs,
    }
}

fn encode_total_simplex(g: &Grothendieck, x: &CrossedLaxFunctor) -> Key {
    let c = &g.diagram.base;
    let n = x.dim() + 1;
    let obj = |i: usize| TotalObject {
        x: x.base_objs[i],
        a: x.objs[i],
    };
    let mor = |i: usize, j: usize| TotalMorphism {
        src: obj(j),
        tgt: obj(i),
        u: x.base_mors[i][j],
        f: x.mors[i][j],
    };
    let find_mor = |i: usize, j: usize| g.find_morphism(&mor(i, j));
    let missing = || vec![MISSING];
    let objs: Option<Vec<ObjId>> = (0..n).map(|i| g.find_object(&obj(i))).collect();
    let Some(objs) = objs else { return missing() };
    for i in 0..n {
        for j in i + 1..n {
            if find_mor(i, j).is_none() {
                return missing();
            }
            for k in j + 1..n {
                if find_mor(j, k).is_none() {
                    return missing();
                }
            }
        }
    }
    let composite = |i: usize, j: usize, k: usize| {
        let m = g.cat.compose(find_mor(i, j).expect("checked"), find_mor(j, k).expect("checked"));
        g.morphisms[m.ix()]
    };
    let ok = std::cell::Cell::new(true);
    let s = LaxSimplex::from_parts(
        &g.cat,
        objs,
        |i, j| find_mor(i, j).expect("checked"),
        |i, j, k| {
            let d = g.find_deformation(&TotalDeformation {
                src: composite(i, j, k),
                tgt: mor(i, k),
                alpha: c.id_def(x.base_mors[i][k]),
                phi: x.defs[i][j][k],
            });
            d.unwrap_or_else(|| {
                ok.set(false);
                DefId(0)
            })
        },
    );
    if ok.get() {
        s.key()
    } else {
        missing()
    }
}

fn decode_total_simplex(g: &Grothendieck, p: usize, key: &Key) -> CrossedLaxFunctor {
    let z = LaxSimplex::from_key(&g.cat, p, key);
    let n = p + 1;
    let objs: Vec<TotalObject> = (0..n).map(|i| g.objects[z.obj(i).ix()]).collect();
    let mut base_mors = vec![vec![MorId(MISSING); n]; n];
    let mut mors = vec![vec![MorId(MISSING); n]; n];
    let mut defs = vec![vec![vec![DefId(MISSING); n]; n]; n];
    for i in 0..n {
        for j in i..n {
            let m = g.morphisms[z.mor(i, j).ix()];
            base_mors[i][j] = m.u;
            mors[i][j] = m.f;
            for k in j..n {
                defs[i][j][k] = g.deformations[z.def(i, j, k).ix()].phi;
            }
        }
    }
    CrossedLaxFunctor {
        base_objs: objs.iter().map(|o| o.x).collect(),
        base_mors,
        objs: objs.iter().map(|o| o.a).collect(),
        mors,
        defs,
    }
}

/// `χ` with `x^m = x δ_0^m` and `y^m_{i,j,k} = x_{k,m}^* y'_{i,j,k}`.
fn encode_wbar(d: &TwoDiagram, s: &TruncBisimplicialSet, x: &CrossedLaxFunctor) -> Key {
    let c = &d.base;
    let p = x.dim();
    (0..=p)
        .map(|m| {
            let fm = d.fib(x.base_objs[m]);
            let push = |i: usize| d.star(x.base_mors[i][m]);
            let y = LaxSimplex::from_parts(
                fm,
                (0..=m).map(|i| push(i).on_obj(x.objs[i])).collect(),
                |i, j| push(j).on_mor(x.mors[i][j]),
                |i, j, k| push(k).on_def(x.defs[i][j][k]),
            );
            let string = (m + 1..=p).map(|i| x.base_mors[i - 1][i]).collect::<Vec<_>>();
            debug_assert!(string.iter().all(|&u| c.src(u) != ObjId(MISSING)));
            let key = Pair {
                x0: x.base_objs[m],
                y,
                s: string,
            }
            .key();
            s.find(m, p - m, &key).unwrap_or(MISSING)
        })
        .collect()
}

/// The bijection `W̄S ≅ Δ∫F` for a diagram of 2-categories over a category, up to `cap`.
pub fn thomason_iso_ii(d: &TwoDiagram, cap: usize, budget: u64) -> Result<ThomasonII, HocolimError> {
    if cap < 1 {
        return Err(HocolimError::CapTooSmall(cap));
    }
    let s = hocolim_diagram_of_2cats(d, cap, budget)?;
    let total = grothendieck(d)?;
    let wbar = s.codiagonal()?;
    let total_nerve = geometric_nerve(&total.cat, cap, budget)?;
    let crossed: Vec<Vec<CrossedLaxFunctor>> = (0..=cap)
        .map(|p| wbar.keys(p).iter().map(|k| decode_wbar(d, &s, p, k)).collect())
        .collect();
    let map = SimplicialMap::from_key_fn(&wbar, &total_nerve, |p, k| {
        encode_total_simplex(&total, &decode_wbar(d, &s, p, k))
    })?;
    let inverse = SimplicialMap::from_key_fn(&total_nerve, &wbar, |p, k| {
        encode_wbar(d, &s, &decode_total_simplex(&total, p, k))
    })?;
    Ok(ThomasonII {
        total,
        wbar,
        total_nerve,
        map,
        inverse,
        crossed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grothendieck::{action_diagram, hom_diagram};
    use crate::nerves::nerve_category;
    use crate::twocat::{Category, CategoryBuilder, RightAction, StrictMonoidal, TwoFunctor};

    const BUDGET: u64 = 2_000_000;

    fn two_cat(c: &Category) -> TwoCategory {
        c.to_two_category().unwrap()
    }

    /// Base `[1]`, fibres the discrete 2-category on two objects, restriction swapping them.
    pub(super) fn flip_over_interval() -> TwoDiagram {
        let base = two_cat(&Category::ordinal(1));
        let mut b = CategoryBuilder::new();
        b.object("p0").unwrap();
        b.object("p1").unwrap();
        let fibre = two_cat(&b.build());
        let mut d = TwoDiagram::constant(&base, &fibre);
        let u = base.mors().find(|&u| !base.is_identity_mor(u)).unwrap();
        let swap = |x: ObjId| ObjId(1 - x.0);
        d.restrict[u.ix()] = TwoFunctor {
            obj: fibre.objects().map(swap).collect(),
            mor: fibre.mors().map(|m| fibre.id_mor(swap(fibre.src(m)))).collect(),
            def: fibre.defs().map(|a| fibre.id_def(fibre.id_mor(swap(fibre.src(fibre.def_src(a)))))).collect(),
        };
        for al in base.defs() {
            let v = base.def_src(al);
            d.deform[al.ix()] = fibre.objects().map(|a| fibre.id_mor(d.star(v).on_obj(a))).collect();
        }
        // ζ components sit at v*u*a.
        let pairs: Vec<_> = d.zeta.keys().copied().collect();
        for (u1, v1) in pairs {
            let comps = fibre.objects().map(|a| fibre.id_mor(d.star(v1).on_obj(d.star(u1).on_obj(a)))).collect();
            d.zeta.insert((u1, v1), comps);
        }
        d
    }

    #[test]
    fn constant_terminal_hocolim_is_discrete_nerve() {
        let c = Category::ordinal(2);
        let d = TwoDiagram::constant(&two_cat(&c), &TwoCategory::terminal());
        let hc = hocolim_two_functor(&d, 3).unwrap();
        assert!(hc.audit().is_ok());
        let nc = nerve_category(&c, 3);
        for n in 0..=3 {
            let lvl = &hc.level(n).cat;
            assert_eq!(lvl.num_objects(), nc.count(n));
            assert_eq!(lvl.num_arrows(), nc.count(n));
        }
    }

    #[test]
    fn borel_construction_levels() {
        let m = StrictMonoidal::cyclic_discrete(2);
        let d = action_diagram(&RightAction::regular(&m)).unwrap();
        let hc = hocolim_two_functor(&d, 3).unwrap();
        assert!(hc.audit().is_ok());
        for n in 0..=3 {
            assert_eq!(hc.level(n).cat.num_objects(), 2 * 2usize.pow(n as u32));
        }
    }

    #[test]
    fn hom_diagram_level_zero() {
        let c = two_cat(&Category::ordinal(2));
        let x = c.find_obj("2").unwrap();
        let hd = hom_diagram(&c, x).unwrap();
        let hc = hocolim_two_functor(&hd.diagram, 2).unwrap();
        let expected: usize = c.objects().map(|z| c.hom(z, x).len()).sum();
        assert_eq!(hc.level(0).cat.num_objects(), expected);
        assert!(hc.audit().is_ok());
    }

    #[test]
    fn strictness_preconditions() {
        let base = TwoCategory::suspended_cyclic(2);
        let fibre = TwoCategory::suspended_cyclic(2);
        let mut d = TwoDiagram::constant(&base, &fibre);
        let g = base.find_mor("g1").unwrap();
        d.zeta.get_mut(&(g, g)).unwrap()[0] = fibre.find_mor("g1").unwrap();
        assert!(validate_two_diagram(&d).is_ok());
        assert!(matches!(hocolim_two_functor(&d, 2), Err(HocolimError::NonStrictDiagram(_))));

        let e = TwoDiagram::constant(&TwoCategory::terminal(), &TwoCategory::walking_two_cell());
        assert!(matches!(hocolim_two_functor(&e, 2), Err(HocolimError::FibreNotCategory(_))));

        let over_e = TwoDiagram::constant(&TwoCategory::walking_two_cell(), &TwoCategory::terminal());
        assert!(matches!(hocolim_diagram_of_2cats(&over_e, 2, BUDGET), Err(HocolimError::BaseNotCategory)));
        assert!(matches!(thomason_iso_i(&over_e, 0), Err(HocolimError::CapTooSmall(0))));
    }

    #[test]
    fn thomason_i_on_fixtures() {
        let fixtures = [
            TwoDiagram::constant(&two_cat(&Category::ordinal(1)), &TwoCategory::terminal()),
            action_diagram(&RightAction::regular(&StrictMonoidal::cyclic_discrete(2))).unwrap(),
            hom_diagram(&TwoCategory::walking_two_cell(), ObjId(0)).unwrap().diagram,
        ];
        for (ix, d) in fixtures.iter().enumerate() {
            let t = thomason_iso_i(d, 3).unwrap_or_else(|e| panic!("fixture {ix}: {e}"));
            let r = t.check();
            assert!(r.is_ok(), "{r}");
            assert!(t.map.is_bijective(&t.wbar_total));
        }
    }

    #[test]
    fn thomason_i_constant_terminal_matches_counts() {
        let c = two_cat(&Category::ordinal(1));
        let d = TwoDiagram::constant(&c, &TwoCategory::terminal());
        let t = thomason_iso_i(&d, 3).unwrap();
        assert_eq!(t.wbar_hocolim.counts(), t.wbar_total.counts());
    }

    #[test]
    fn diagonal_is_hocolim_of_nerves() {
        let fixtures = [
            flip_over_interval(),
            TwoDiagram::constant(&two_cat(&Category::ordinal(1)), &TwoCategory::walking_two_cell()),
        ];
        for d in &fixtures {
            let s = hocolim_diagram_of_2cats(d, 3, BUDGET).unwrap();
            assert!(s.audit().is_ok());
            let diag = s.diag();
            let direct = hocolim_of_nerves(d, 3, BUDGET).unwrap();
            let m = SimplicialMap::from_key_fn(&diag, &direct, |n, k| s.key(n, n, k[0]).clone()).unwrap();
            assert!(m.validate(&diag, &direct).is_ok());
            assert!(m.is_bijective(&direct));
        }
    }

    #[test]
    fn flip_over_interval_counts() {
        let d = flip_over_interval();
        let s = hocolim_diagram_of_2cats(&d, 2, BUDGET).unwrap();
        // Oracle: 2 points per fibre simplex, N_q[1] has q+2 simplices.
        for p in 0..=2 {
            for q in 0..=2 {
                assert_eq!(s.count(p, q), 2 * (q + 2));
            }
        }
    }

    #[test]
    fn thomason_ii_on_fixtures() {
        let fixtures = [
            TwoDiagram::constant(&two_cat(&Category::ordinal(1)), &TwoCategory::terminal()),
            flip_over_interval(),
            TwoDiagram::constant(&two_cat(&Category::ordinal(1)), &TwoCategory::walking_two_cell()),
        ];
        for d in &fixtures {
            let t = thomason_iso_ii(d, 3, BUDGET).unwrap();
            let r = t.check();
            assert!(r.is_ok(), "{r}");
        }
    }

    #[test]
    fn crossed_audit_detects_corruption() {
        let d = TwoDiagram::constant(&two_cat(&Category::ordinal(1)), &TwoCategory::walking_two_cell());
        let t = thomason_iso_ii(&d, 2, BUDGET).unwrap();
        let mut x = t.crossed[2].iter().find(|x| x.audit(&d).is_ok() && x.objs[0] != x.objs[2]).unwrap().clone();
        x.mors[0][0] = x.mors[0][2];
        assert!(!x.audit(&d).is_ok());
    }
}
