//! Exhaustive axiom checks for [`TwoCategory`].

use std::collections::HashMap;

use super::{DefId, MorId, TwoCategory};
use crate::report::{ValidationReport, ViolationKind::*};

pub(super) fn validate_two_category(c: &TwoCategory) -> ValidationReport {
    let mut r = ValidationReport::new();
    check_tables(c, &mut r);
    if !r.is_ok() {
        // Later checks assume total, boundary-correct tables; keep any interchange
        // finding about identity whiskers so corrupted units are still classified.
        check_whisker_units(c, &mut r);
        return r;
    }
    check_units(c, &mut r);
    check_whisker_units(c, &mut r);
    check_associativity(c, &mut r);
    check_interchange(c, &mut r);
    r
}

fn check_tables(c: &TwoCategory, r: &mut ValidationReport) {
    for a in c.defs() {
        let (s, t) = (c.def_src(a), c.def_tgt(a));
        r.require(
            c.src(s) == c.src(t) && c.tgt(s) == c.tgt(t),
            BoundaryMismatch,
            || format!("2-cell {} between non-parallel 1-cells", c.def_name(a)),
        );
    }
    for v in c.mors() {
        for u in c.mors().filter(|&u| c.src(u) == c.tgt(v)) {
            match c.try_compose(u, v) {
                None => r.push(MissingTableEntry, format!("hcomp1 {} o {}", c.mor_name(u), c.mor_name(v))),
                Some(w) => r.require(c.src(w) == c.src(v) && c.tgt(w) == c.tgt(u), BoundaryMismatch, || {
                    format!("hcomp1 {} o {} = {}", c.mor_name(u), c.mor_name(v), c.mor_name(w))
                }),
            }
        }
    }
    for a in c.defs() {
        for b in c.defs().filter(|&b| c.def_src(b) == c.def_tgt(a)) {
            match c.try_vcompose(b, a) {
                None => r.push(MissingTableEntry, format!("vcomp {} . {}", c.def_name(b), c.def_name(a))),
                Some(d) => r.require(
                    c.def_src(d) == c.def_src(a) && c.def_tgt(d) == c.def_tgt(b),
                    BoundaryMismatch,
                    || format!("vcomp {} . {} = {}", c.def_name(b), c.def_name(a), c.def_name(d)),
                ),
            }
        }
    }
    for a in c.defs() {
        let mid = c.tgt(c.def_src(a));
        for b in c.defs().filter(|&b| c.src(c.def_src(b)) == mid) {
            match c.try_hcompose(b, a) {
                None => r.push(MissingTableEntry, format!("hcomp2 {} o {}", c.def_name(b), c.def_name(a))),
                Some(d) => {
                    let want_s = c.try_compose(c.def_src(b), c.def_src(a));
                    let want_t = c.try_compose(c.def_tgt(b), c.def_tgt(a));
                    r.require(
                        want_s == Some(c.def_src(d)) && want_t == Some(c.def_tgt(d)),
                        BoundaryMismatch,
                        || format!("hcomp2 {} o {} = {}", c.def_name(b), c.def_name(a), c.def_name(d)),
                    );
                }
            }
        }
    }
}

fn check_units(c: &TwoCategory, r: &mut ValidationReport) {
    for u in c.mors() {
        let (s, t) = (c.src(u), c.tgt(u));
        r.require(
            c.compose(u, c.id_mor(s)) == u && c.compose(c.id_mor(t), u) == u,
            UnitViolation,
            || format!("identity 1-cells do not act trivially on {}", c.mor_name(u)),
        );
    }
    for a in c.defs() {
        let (s, t) = (c.def_src(a), c.def_tgt(a));
        r.require(
            c.vcompose(a, c.id_def(s)) == a && c.vcompose(c.id_def(t), a) == a,
            UnitViolation,
            || format!("identity 2-cells do not act trivially on {}", c.def_name(a)),
        );
    }
}

/// Horizontal composition preserves identities: `1_u∘1_v = 1_{u∘v}` and whiskering by
/// an identity 1-cell is trivial. These are the identity half of functoriality of
/// horizontal composition and are reported with interchange.
fn check_whisker_units(c: &TwoCategory, r: &mut ValidationReport) {
    let mut pairs: Vec<_> = c.raw_tables().0.iter().map(|(&k, &w)| (k, w)).collect();
    pairs.sort();
    for ((u, v), w) in pairs {
        if let Some(d) = c.try_hcompose(c.id_def(u), c.id_def(v)) {
            r.require(d == c.id_def(w), InterchangeViolation, || {
                format!("{} o {} != {}", c.def_name(c.id_def(u)), c.def_name(c.id_def(v)), c.def_name(c.id_def(w)))
            });
        }
    }
    for a in c.defs() {
        let s = c.def_src(a);
        let (x, y) = (c.src(s), c.tgt(s));
        let left = c.id_def(c.id_mor(y));
        let right = c.id_def(c.id_mor(x));
        if let Some(d) = c.try_hcompose(left, a) {
            r.require(d == a, InterchangeViolation, || {
                format!("{} o {} = {} != {}", c.def_name(left), c.def_name(a), c.def_name(d), c.def_name(a))
            });
        }
        if let Some(d) = c.try_hcompose(a, right) {
            r.require(d == a, InterchangeViolation, || {
                format!("{} o {} = {} != {}", c.def_name(a), c.def_name(right), c.def_name(d), c.def_name(a))
            });
        }
    }
}

fn check_associativity(c: &TwoCategory, r: &mut ValidationReport) {
    let mut into: HashMap<_, Vec<MorId>> = HashMap::new();
    for u in c.mors() {
        into.entry(c.tgt(u)).or_default().push(u);
    }
    for w in c.mors() {
        for &v in into.get(&c.src(w)).into_iter().flatten() {
            for &u in into.get(&c.src(v)).into_iter().flatten() {
                let lhs = c.compose(c.compose(w, v), u);
                let rhs = c.compose(w, c.compose(v, u));
                r.require(lhs == rhs, AssociativityViolation, || {
                    format!("1-cells {} {} {}", c.mor_name(w), c.mor_name(v), c.mor_name(u))
                });
            }
        }
    }
    let mut out: HashMap<MorId, Vec<DefId>> = HashMap::new();
    for a in c.defs() {
        out.entry(c.def_src(a)).or_default().push(a);
    }
    for a in c.defs() {
        for &b in out.get(&c.def_tgt(a)).into_iter().flatten() {
            for &d in out.get(&c.def_tgt(b)).into_iter().flatten() {
                let lhs = c.vcompose(c.vcompose(d, b), a);
                let rhs = c.vcompose(d, c.vcompose(b, a));
                r.require(lhs == rhs, AssociativityViolation, || {
                    format!("vertical {} {} {}", c.def_name(d), c.def_name(b), c.def_name(a))
                });
            }
        }
    }
    let mut defs_into: HashMap<_, Vec<DefId>> = HashMap::new();
    for a in c.defs() {
        defs_into.entry(c.tgt(c.def_src(a))).or_default().push(a);
    }
    for d in c.defs() {
        let x = c.src(c.def_src(d));
        for &b in defs_into.get(&x).into_iter().flatten() {
            let y = c.src(c.def_src(b));
            for &a in defs_into.get(&y).into_iter().flatten() {
                let lhs = c.hcompose(c.hcompose(d, b), a);
                let rhs = c.hcompose(d, c.hcompose(b, a));
                r.require(lhs == rhs, AssociativityViolation, || {
                    format!("horizontal {} {} {}", c.def_name(d), c.def_name(b), c.def_name(a))
                });
            }
        }
    }
}

/// `(b'·b)∘(a'·a) = (b'∘a')·(b∘a)` for all composable quadruples.
fn check_interchange(c: &TwoCategory, r: &mut ValidationReport) {
    let mut out: HashMap<MorId, Vec<DefId>> = HashMap::new();
    for a in c.defs() {
        out.entry(c.def_src(a)).or_default().push(a);
    }
    let mut pairs: Vec<(MorId, MorId)> = c.raw_tables().0.keys().copied().collect();
    pairs.sort();
    for (u, v) in pairs {
        for &b in out.get(&u).into_iter().flatten() {
            for &b2 in out.get(&c.def_tgt(b)).into_iter().flatten() {
                for &a in out.get(&v).into_iter().flatten() {
                    for &a2 in out.get(&c.def_tgt(a)).into_iter().flatten() {
                        let lhs = c.hcompose(c.vcompose(b2, b), c.vcompose(a2, a));
                        let rhs = c.vcompose(c.hcompose(b2, a2), c.hcompose(b, a));
                        r.require(lhs == rhs, InterchangeViolation, || {
                            format!(
                                "({} . {}) o ({} . {})",
                                c.def_name(b2),
                                c.def_name(b),
                                c.def_name(a2),
                                c.def_name(a)
                            )
                        });
                    }
                }
            }
        }
    }
}
