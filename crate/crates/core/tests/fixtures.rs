//! The three bundled fixtures through the public API, one quantity at a time.

use necroots::classifier::{FailedCondition, Verdict};
use necroots::harness::{analyze_pair, fixture_instance};
use necroots::schreier::{build_schreier, TransversalStrategy};
use necroots::word::Word;

fn not_equivalent(v: &Verdict) -> Option<FailedCondition> {
    match v {
        Verdict::NotEquivalent { failed } => Some(*failed),
        _ => None,
    }
}

#[test]
fn c8c3() {
    let inst = fixture_instance("c8c3").unwrap();
    let omega = inst.monodromy().unwrap();
    assert!(omega.validate().is_valid());
    let (g1, g2) = inst.pair.unwrap();
    let d1 = Word::gen(omega.presentation().glides().next().unwrap());
    assert_eq!(omega.omega_value(g1, &d1).unwrap(), 9);
    assert_eq!(omega.omega_value(g2, &d1).unwrap(), 21);
    // ⟨g1⟩ = ⟨g2⟩ = G, so the subgroup is Δ itself.
    for g in [g1, g2] {
        let sys = build_schreier(&omega, g, TransversalStrategy::Bfs).unwrap();
        assert_eq!(sys.index(), 1);
        assert_eq!(sys.subgroup_signature().unwrap(), *omega.signature());
    }
    for s in TransversalStrategy::ALL {
        let a = analyze_pair(&inst, s).unwrap();
        assert_eq!(a.tuple1.z, 8);
        assert_eq!(a.tuple1.d_first.map(|d| d % 8), Some(1));
        assert_eq!(a.tuple2.d_first.map(|d| d % 8), Some(5));
        assert_eq!(not_equivalent(&a.verdict), Some(FailedCondition::Condition3));
        assert_eq!(a.kernel_genus, 17);
    }
}

#[test]
fn ex1() {
    let inst = fixture_instance("ex1").unwrap();
    for s in TransversalStrategy::ALL {
        let a = analyze_pair(&inst, s).unwrap();
        assert_eq!(a.tuple1.sub_signature.to_string(), "(2; -; [2, 2])");
        assert_eq!(a.tuple2.sub_signature.to_string(), "(2; -; [2, 2])");
        assert_eq!((a.tuple1.z, a.tuple2.z), (8, 8));
        assert_eq!(a.tuple1.d_first_class(), Some(1));
        assert_eq!(a.tuple2.d_first_class(), Some(3));
        assert_eq!(not_equivalent(&a.verdict), Some(FailedCondition::Condition3));
        assert_eq!(a.kernel_genus, 9);
        assert_eq!((a.pair.m, a.pair.n, a.pair.abelian), (8, 2, true));
    }
}

#[test]
fn ex2_m4() {
    let inst = fixture_instance("ex2-m4").unwrap();
    for s in TransversalStrategy::ALL {
        let a = analyze_pair(&inst, s).unwrap();
        assert_eq!(a.tuple1.sub_signature.to_string(), "(6; -; [4, 4])");
        assert_eq!(a.tuple2.sub_signature.to_string(), "(6; -; [4, 4])");
        assert_eq!((a.tuple1.d_sum, a.tuple2.d_sum), (2, 6));
        assert_eq!(a.tuple1.two_m, 8);
        assert_eq!(not_equivalent(&a.verdict), Some(FailedCondition::Condition2));
        assert_eq!(a.kernel_genus, 23);
        assert!(!a.pair.abelian);
    }
}

#[test]
fn subgroup_area_is_index_times_area() {
    for (id, _) in necroots::harness::FIXTURES {
        let inst = fixture_instance(id).unwrap();
        let omega = inst.monodromy().unwrap();
        let (g1, _) = inst.pair.unwrap();
        let sys = build_schreier(&omega, g1, TransversalStrategy::Bfs).unwrap();
        let sub = sys.subgroup_signature().unwrap();
        let index = num_rational::Rational64::from_integer(sys.index() as i64);
        assert_eq!(sub.reduced_area(), omega.signature().reduced_area() * index, "{id}");
    }
}
