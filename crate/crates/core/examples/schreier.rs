// Reidemeister–Schreier rewriting of `ω⁻¹(⟨g⟩)`: transversal, reversing
// generators with their Ω-values, elliptic classes, the subgroup signature,
// and the homology cross-check.
//
// ```bash
// cargo run --example schreier
// ```

use necroots::error::Error;
use necroots::harness::fixture_instance;
use necroots::schreier::{build_schreier, InvariantTuple, TransversalStrategy};

pub fn run_example() -> Result<Vec<InvariantTuple>, Error> {
    let inst = fixture_instance("ex2-m4")?;
    let omega = inst.monodromy()?;
    let pres = omega.presentation();
    let (g1, g2) = inst.pair.expect("fixture has a pair");
    let mut tuples = Vec::new();
    for g in [g1, g2] {
        for strategy in TransversalStrategy::ALL {
            let sys = build_schreier(&omega, g, strategy)?;
            let t: Vec<String> = sys.transversal().iter().map(|w| pres.format_word(w)).collect();
            println!("g = {} [{strategy}] index {} transversal {{{}}}", omega.group().label(g), sys.index(), t.join(", "));
            for r in sys.reversing_gens() {
                println!("  reversing {:<24} Ω = {}", pres.format_word(&r.word), r.residue);
            }
            for c in sys.elliptic_classes() {
                println!("  elliptic  {:<24} period {} Ω = {}", pres.format_word(&c.word), c.period, c.residue);
            }
            let check = sys.homology_check()?;
            println!("  subgroup {} H1 {} (rewritten: {})", sys.subgroup_signature()?, check.canonical, check.raw);
            let tuple = sys.invariant_tuple(None)?;
            println!("  d_sum {} z {} x {:?}", tuple.d_sum, tuple.z, tuple.x_classes);
            tuples.push(tuple);
        }
    }
    Ok(tuples)
}

#[allow(dead_code)]
fn main() -> Result<(), Error> {
    run_example().map(|_| ())
}
