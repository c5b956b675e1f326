//! Small random fixtures built from the crate's own constructions.

use laxnerve::fibres::{fibre_over, StrictFunctor};
use laxnerve::grothendieck::{action_diagram, grothendieck, hom_diagram};
use laxnerve::twocat::{product, Category, CategoryBuilder, RightAction, StrictMonoidal, TwoFunctor};
use laxnerve::{ObjId, TwoCategory};
use proptest::prelude::*;

pub const BUDGET: u64 = 1_000_000;

/// A poset on `n` objects from upper-triangular relation bits, closed transitively,
/// declared in the order given by `perm` (a permutation of all declarations).
pub fn poset(n: usize, bits: &[bool], perm: &[usize]) -> Category {
    let mut rel = vec![vec![false; n]; n];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            rel[i][j] = bits[k % bits.len()];
            k += 1;
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if rel[i][m] && rel[m][j] {
                    rel[i][j] = true;
                }
            }
        }
    }
    let arrows: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| rel[i][j])
        .collect();
    let name = |i: usize, j: usize| if i == j { format!("id:o{i}") } else { format!("a{i}_{j}") };
    let order = |len: usize| -> Vec<usize> {
        let mut v: Vec<usize> = perm.iter().copied().filter(|&p| p < len).collect();
        v.extend((0..len).filter(|p| !perm.contains(p)));
        v
    };
    let mut b = CategoryBuilder::new();
    for i in order(n) {
        b.object(&format!("o{i}")).unwrap();
    }
    for ix in order(arrows.len()) {
        let (i, j) = arrows[ix];
        b.arrow(&name(i, j), &format!("o{i}"), &format!("o{j}")).unwrap();
    }
    for &(i, j) in &arrows {
        for &(j2, l) in &arrows {
            if j == j2 {
                b.compose(&name(j, l), &name(i, j), &name(i, l)).unwrap();
            }
        }
    }
    b.build()
}

#[derive(Debug, Clone)]
pub struct Recipe {
    pub choice: u8,
    pub n: usize,
    pub bits: Vec<bool>,
    pub perm: Vec<usize>,
    pub k: u32,
    pub x: u32,
    pub op: bool,
    pub co: bool,
}

pub fn recipe() -> impl Strategy<Value = Recipe> {
    (
        0u8..8,
        1usize..=3,
        prop::collection::vec(any::<bool>(), 3),
        Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
        1u32..=3,
        0u32..2,
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(choice, n, bits, perm, k, x, op, co)| Recipe {
            choice,
            n,
            bits,
            perm,
            k,
            x,
            op,
            co,
        })
}

pub fn walking() -> TwoCategory {
    TwoCategory::walking_two_cell()
}

pub fn build(r: &Recipe) -> TwoCategory {
    let base = match r.choice {
        0 => poset(r.n, &r.bits, &r.perm).to_two_category().unwrap(),
        1 => TwoCategory::suspended_cyclic(r.k),
        2 => walking(),
        3 => product(&poset(r.n.min(2), &r.bits, &r.perm).to_two_category().unwrap(), &walking()).unwrap(),
        4 => {
            let e = walking();
            let id = TwoFunctor::identity(&e);
            fibre_over(&StrictFunctor::new(&e, &e, &id).unwrap(), ObjId(r.x), BUDGET).unwrap().cat
        }
        5 => grothendieck(&action_diagram(&RightAction::cyclic_translation(r.k)).unwrap()).unwrap().cat,
        6 => grothendieck(&hom_diagram(&walking(), ObjId(r.x)).unwrap().diagram).unwrap().cat,
        _ => grothendieck(&action_diagram(&RightAction::regular(&StrictMonoidal::idempotent())).unwrap())
            .unwrap()
            .cat,
    };
    let c = if r.op { base.opposite() } else { base };
    if r.co {
        c.co_dual()
    } else {
        c
    }
}
