//! Randomized invariants over small fixtures built from the crate's own constructions.

mod common;

use common::{build, poset, recipe, BUDGET};
use laxnerve::cli::format::{parse_str, write_two_category};
use laxnerve::fibres::{gamma_theta, Side, StrictFunctor};
use laxnerve::grothendieck::{action_diagram, grothendieck, iota_p_pair, projection};
use laxnerve::hocolim::{thomason_iso_i, thomason_iso_ii};
use laxnerve::invariants::{homology, smith_normal_form, ChainComplex, IntMatrix};
use laxnerve::nerves::{double_nerve, geometric_nerve, geometric_nerve_map, lax_simplices, Budget};
use laxnerve::twocat::{RightAction, StrictMonoidal, TwoFunctor};
use laxnerve::{DefId, ObjId};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Rank over the rationals by fraction-free elimination; independent of the SNF code.
fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| i128::from(v)).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, p);
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let (f, g) = (a[rank][c], a[i][c]);
                for j in 0..cols {
                    a[i][j] = a[i][j] * f - a[rank][j] * g;
                }
                let d = a[i].iter().fold(0i128, |acc, &v| acc.gcd(&v));
                if d > 1 {
                    a[i].iter_mut().for_each(|v| *v /= d);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 1 {
        return BigInt::from(m[0][0]);
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            BigInt::from(s * m[0][j]) * det(&minor)
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nerves_satisfy_simplicial_identities(r in recipe()) {
        let c = build(&r);
        prop_assert!(c.validate().is_ok());
        let g = geometric_nerve(&c, 3, BUDGET).unwrap();
        prop_assert!(g.audit().is_ok());
        let nn = double_nerve(&c, 3).unwrap();
        prop_assert!(nn.audit().is_ok());
        let (diag, wbar) = (nn.diag(), nn.codiagonal().unwrap());
        prop_assert!(diag.audit().is_ok());
        prop_assert!(wbar.audit().is_ok());
        let eta = nn.zisman(&diag, &wbar).unwrap();
        prop_assert!(eta.validate(&diag, &wbar).is_ok());
    }

    #[test]
    fn boundary_of_boundary_vanishes(r in recipe()) {
        let c = build(&r);
        let g = geometric_nerve(&c, 3, BUDGET).unwrap();
        let cc = ChainComplex::from_simplicial(&g).unwrap();
        for n in 2..=cc.cap() {
            prop_assert!(cc.boundary(n - 1).mul(cc.boundary(n)).is_zero());
        }
    }

    #[test]
    fn induced_chain_maps_commute_with_boundaries(r in recipe()) {
        let c = build(&r);
        let twin = c.renamed(|s| format!("{s}'"), |s| format!("{s}'"), |s| format!("{s}'")).unwrap();
        let iso = TwoFunctor::identity(&c);
        let (a, b) = (geometric_nerve(&c, 3, BUDGET).unwrap(), geometric_nerve(&twin, 3, BUDGET).unwrap());
        let f = geometric_nerve_map(&iso.to_lax(&c, &twin), &c, &twin, &a, &b).unwrap();
        prop_assert!(f.validate(&a, &b).is_ok());
        let (ca, cb) = (ChainComplex::from_simplicial(&a).unwrap(), ChainComplex::from_simplicial(&b).unwrap());
        prop_assert!(ChainComplex::chain_map_commutes(&f, &ca, &cb));
    }

    #[test]
    fn interchange_corruption_is_always_caught(r in recipe(), pick in any::<prop::sample::Index>(), alt in any::<prop::sample::Index>()) {
        let c = build(&r);
        let pairs: Vec<(DefId, DefId)> = c
            .defs()
            .flat_map(|b| c.defs().map(move |a| (b, a)))
            .filter(|&(b, a)| c.try_hcompose(b, a).is_some())
            .collect();
        let (b, a) = *pick.get(&pairs);
        let good = c.hcompose(b, a);
        let others: Vec<DefId> = c.defs().filter(|&d| d != good).collect();
        prop_assume!(!others.is_empty());
        let bad = c.with_hcomp2_entry(b, a, *alt.get(&others));
        prop_assert!(!bad.validate().is_ok());
    }

    #[test]
    fn shuffled_declarations_give_identical_results(
        n in 1usize..=4,
        bits in prop::collection::vec(any::<bool>(), 6),
        p1 in Just((0..10).collect::<Vec<usize>>()).prop_shuffle(),
        p2 in Just((0..10).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let (a, b) = (poset(n, &bits, &p1).to_two_category().unwrap(), poset(n, &bits, &p2).to_two_category().unwrap());
        prop_assert_eq!(write_two_category(&a), write_two_category(&b));
        let (na, nb) = (geometric_nerve(&a, 3, BUDGET).unwrap(), geometric_nerve(&b, 3, BUDGET).unwrap());
        prop_assert_eq!(na.counts(), nb.counts());
        prop_assert_eq!(homology(&na).unwrap(), homology(&nb).unwrap());
    }

    #[test]
    fn canonical_text_ignores_line_order(r in recipe(), seed in Just((0..64).collect::<Vec<usize>>()).prop_shuffle()) {
        let c = build(&r);
        let text = write_two_category(&c);
        let mut lines: Vec<&str> = text.lines().collect();
        let len = lines.len();
        let mut shuffled: Vec<&str> = seed.iter().filter(|&&i| i < len).map(|&i| lines[i]).collect();
        shuffled.extend((64..len).map(|i| lines[i]));
        lines = shuffled;
        let origin = std::path::Path::new("shuffled.tc");
        let back = parse_str(&(lines.join("\n") + "\n"), origin).unwrap();
        prop_assert_eq!(back.canonical_text(), text);
    }

    #[test]
    fn retractions_are_exact(r in recipe(), pick in any::<prop::sample::Index>(), over in any::<bool>()) {
        let c = build(&r);
        prop_assume!(c.num_objects() <= 4);
        let id = TwoFunctor::identity(&c);
        let f = StrictFunctor::new(&c, &c, &id).unwrap();
        let simplices = lax_simplices(&c, 1, &mut Budget::new(BUDGET)).unwrap();
        let z = pick.get(&simplices[1]);
        let side = if over { Side::Over } else { Side::Under };
        let ret = gamma_theta(&f, z, side, BUDGET).unwrap();
        prop_assert!(ret.check().is_ok());
    }

    #[test]
    fn grothendieck_of_actions_is_valid_and_splits(k in 1u32..=3, regular in any::<bool>()) {
        let act = if regular {
            RightAction::regular(&StrictMonoidal::cyclic_discrete(k))
        } else {
            RightAction::cyclic_translation(k)
        };
        let d = action_diagram(&act).unwrap();
        let g = grothendieck(&d).unwrap();
        prop_assert!(g.cat.validate().is_ok());
        prop_assert!(projection(&g).validate(&g.cat, &d.base).is_ok());
        prop_assert!(iota_p_pair(&d, ObjId(0), BUDGET).unwrap().check().is_ok());
        prop_assert!(thomason_iso_i(&d, 3).unwrap().check().is_ok());
        prop_assert!(thomason_iso_ii(&d, 3, BUDGET).unwrap().check().is_ok());
    }

    #[test]
    fn smith_form_matches_independent_invariants(rows in 1usize..=4, cols in 1usize..=4, entries in prop::collection::vec(-6i64..=6, 16)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * cols + j]).collect()).collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(&m));
        prop_assert_eq!(snf.rank, rational_rank(&m));
        for w in snf.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(snf.factors.iter().all(|f| f.is_positive()));
        let g = m.iter().flatten().fold(BigInt::zero(), |acc, &v| acc.gcd(&BigInt::from(v)));
        if !g.is_zero() {
            prop_assert_eq!(&snf.factors[0], &g);
        }
        if rows == cols {
            let prod: BigInt = if snf.rank == rows { snf.factors.iter().product() } else { BigInt::zero() };
            prop_assert_eq!(prod, det(&m).abs());
        }
    }
}
