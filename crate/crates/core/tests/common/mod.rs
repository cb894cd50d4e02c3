#![allow(dead_code)]

use std::sync::OnceLock;

use necroots::group::FiniteGroup;
use necroots::harness::enumerate_epimorphisms;
use necroots::monodromy::{Monodromy, SquareRootPair};
use necroots::signature::{NecSignature, Sign};

/// Valid monodromies with at least one square-root pair, from a few cells
/// that cover abelian and non-abelian groups, odd and even `n`, and index
/// 1 and 2.
pub fn pool() -> &'static [(Monodromy, Vec<SquareRootPair>)] {
    static POOL: OnceLock<Vec<(Monodromy, Vec<SquareRootPair>)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let t = |n| FiniteGroup::cyclic_named(n, "t");
        let dp = |a: FiniteGroup, b| FiniteGroup::direct_product(&a, &b).unwrap();
        let cells = [
            (NecSignature::closed(2, Sign::Minus, &[2]).unwrap(), dp(FiniteGroup::cyclic(16), t(2))),
            (NecSignature::closed(2, Sign::Minus, &[3, 3]).unwrap(), dp(FiniteGroup::cyclic(8), t(3))),
            (NecSignature::closed(3, Sign::Minus, &[4, 2, 2]).unwrap(), FiniteGroup::semidirect_c2(8, 5).unwrap()),
            (NecSignature::closed(2, Sign::Minus, &[2, 2]).unwrap(), dp(FiniteGroup::cyclic(8), t(2))),
            (NecSignature::closed(3, Sign::Minus, &[]).unwrap(), FiniteGroup::semidirect_c2(12, 7).unwrap()),
        ];
        let mut out = Vec::new();
        for (sig, g) in &cells {
            for w in enumerate_epimorphisms(sig, g).unwrap().monodromies {
                let pairs = w.square_root_pairs().unwrap().pairs;
                if !pairs.is_empty() {
                    out.push((w, pairs));
                }
            }
        }
        out
    })
}
