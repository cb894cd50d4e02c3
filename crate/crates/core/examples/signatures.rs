// NEC signatures, their canonical presentations, areas, and orbifold
// homology.
//
// ```bash
// cargo run --example signatures
// ```

use necroots::error::Error;
use necroots::presentation::canonical_presentation;
use necroots::signature::{NecSignature, Sign};
use necroots::snf::AbelianInvariants;

pub fn run_example() -> Result<Vec<(String, AbelianInvariants)>, Error> {
    let signatures = [
        NecSignature::closed(2, Sign::Minus, &[3, 3])?,
        NecSignature::closed(1, Sign::Minus, &[])?,
        NecSignature::closed(0, Sign::Plus, &[2, 3, 7])?,
        NecSignature::closed(3, Sign::Minus, &[4, 2, 2])?,
        NecSignature::new(1, Sign::Plus, vec![2], 1)?,
    ];
    let mut out = Vec::new();
    for sig in &signatures {
        let pres = canonical_presentation(sig);
        let names: Vec<String> = pres.symbols().iter().map(|s| pres.name(s)).collect();
        let h1 = pres.abelianization();
        println!("{sig}");
        println!("  generators  {}", names.join(" "));
        println!("  long        {}", pres.format_word(pres.long_relation()));
        println!("  area        {} (hyperbolic: {})", sig.reduced_area(), sig.is_hyperbolic());
        println!("  H1          {h1}");
        out.push((sig.to_string(), h1));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Error> {
    run_example().map(|_| ())
}
