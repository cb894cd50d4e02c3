//! Properties over random (monodromy, square root) draws from enumerated
//! cells. Values are rechecked by evaluating words in the group directly.

mod common;

use necroots::classifier::{apply_moves, classify_case2, orbit};
use necroots::harness::proposition_conjugacy_check;
use necroots::schreier::{build_schreier, TransversalStrategy};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn schreier_words_carry_their_residues(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), second in any::<bool>()) {
        let pool = common::pool();
        let (omega, pairs) = &pool[i.index(pool.len())];
        let pair = &pairs[j.index(pairs.len())];
        let g = if second { pair.g2 } else { pair.g1 };
        let group = omega.group();
        let sys = build_schreier(omega, g, TransversalStrategy::Bfs).unwrap();
        prop_assert_eq!(sys.two_m(), group.element_order(g));
        for r in sys.reversing_gens() {
            prop_assert_eq!(omega.evaluate(&r.word).unwrap(), group.pow(g, r.residue as i64));
            prop_assert_eq!(r.residue % 2, 1);
        }
        for c in sys.elliptic_classes() {
            let image = omega.evaluate(&c.word).unwrap();
            prop_assert_eq!(image, group.pow(g, c.residue as i64));
            prop_assert_eq!(group.element_order(image) as u32, c.period);
            prop_assert_eq!(c.cycle_len as u32 * c.period, c.generator.period.unwrap());
        }
        let d_sum = sys.reversing_gens().iter().map(|r| r.residue).sum::<usize>() % sys.two_m();
        prop_assert_eq!(d_sum, sys.d_sum());
    }

    #[test]
    fn long_relation_and_transversal_independence(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), second in any::<bool>()) {
        let pool = common::pool();
        let (omega, pairs) = &pool[i.index(pool.len())];
        let pair = &pairs[j.index(pairs.len())];
        let g = if second { pair.g2 } else { pair.g1 };
        let a = build_schreier(omega, g, TransversalStrategy::Bfs).unwrap();
        let b = build_schreier(omega, g, TransversalStrategy::GlideShift).unwrap();
        let ta = a.invariant_tuple(None).unwrap();
        let tb = b.invariant_tuple(None).unwrap();
        let x_sum: usize = ta.x_classes.iter().map(|c| c.1).sum();
        prop_assert_eq!((2 * ta.d_sum + x_sum) % ta.two_m, 0);
        prop_assert_eq!(&ta.sub_signature, &tb.sub_signature);
        prop_assert_eq!(&ta.x_classes, &tb.x_classes);
        prop_assert_eq!(ta.d_sum, tb.d_sum);
        prop_assert_eq!(ta.z, tb.z);
        prop_assert_eq!(ta.d_first_class(), tb.d_first_class());
        prop_assert!(a.homology_check().unwrap().agree);
    }

    #[test]
    fn classifier_on_real_tuples(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let pool = common::pool();
        let (omega, pairs) = &pool[i.index(pool.len())];
        let pair = &pairs[j.index(pairs.len())];
        let t1 = build_schreier(omega, pair.g1, TransversalStrategy::Bfs).unwrap().invariant_tuple(None).unwrap();
        let t2 = build_schreier(omega, pair.g2, TransversalStrategy::Bfs).unwrap().invariant_tuple(None).unwrap();
        let own = classify_case2(&t1, &t1).unwrap();
        prop_assert!(own.is_equivalent() || t1.d_first.is_none(), "{}", own);
        let ab = classify_case2(&t1, &t2).unwrap();
        let ba = classify_case2(&t2, &t1).unwrap();
        prop_assert_eq!(ab.label(), ba.label());
        // Moves never change the verdict against a fixed tuple.
        let orb = orbit(&t1);
        let (moved, moves) = &orb[k.index(orb.len())];
        prop_assert_eq!(&apply_moves(&t1, moves).unwrap(), moved);
        prop_assert_eq!(classify_case2(moved, &t2).unwrap().label(), ab.label());
    }

    #[test]
    fn proposition_witness_conjugates(i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let pool = common::pool();
        let (omega, pairs) = &pool[i.index(pool.len())];
        let pair = &pairs[j.index(pairs.len())];
        prop_assume!(pair.n % 2 == 1);
        let group = omega.group();
        let w = proposition_conjugacy_check(group, pair).unwrap();
        let c = group.pow(group.mul(pair.g1, pair.g2), w.alpha as i64);
        let target = group.pow(pair.g2, 2 * w.w as i64 + 1);
        prop_assert_eq!(group.conjugate(c, target), pair.g1);
        prop_assert_eq!(group.label(c), w.conjugator.as_str());
    }
}

#[test]
fn pool_covers_both_parities_and_indices() {
    let pool = common::pool();
    let pairs = pool.iter().flat_map(|(_, p)| p);
    let (mut odd, mut even, mut nonabelian) = (0, 0, 0);
    for p in pairs {
        if p.n % 2 == 1 { odd += 1 } else { even += 1 }
        nonabelian += usize::from(!p.abelian);
    }
    assert!(odd > 0 && even > 0 && nonabelian > 0, "{odd} {even} {nonabelian}");
    let indices: std::collections::BTreeSet<usize> = pool
        .iter()
        .flat_map(|(w, p)| p.iter().map(move |p| w.group().order() / w.group().element_order(p.g1)))
        .collect();
    assert!(indices.contains(&1) && indices.contains(&2), "{indices:?}");
}
