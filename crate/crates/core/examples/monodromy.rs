// A monodromy `Δ → G`: validity, surface genus, square-root pairs, and the
// dihedral quotient `⟨g1, g2⟩/⟨f⟩`.
//
// ```bash
// cargo run --example monodromy
// ```

use necroots::error::Error;
use necroots::harness::fixture_instance;
use necroots::monodromy::SquareRoots;

pub fn run_example() -> Result<SquareRoots, Error> {
    let inst = fixture_instance("ex1")?;
    let omega = inst.monodromy()?;
    let g = omega.group();
    println!("{} -> {}", omega.signature(), g);
    println!("valid: {}", omega.validate().is_valid());
    println!("surface genus: {}", omega.kernel_genus()?);

    // Breaking the elliptic order makes the report name the failure.
    let mut bad = inst.clone();
    bad.images[2] = g.pow(g.generator("u").expect("u"), 4);
    for failure in bad.monodromy()?.validate().failures {
        println!("modified images: {failure}");
    }

    let roots = omega.square_root_pairs()?;
    println!("{} pairs ({} skipped with odd m)", roots.pairs.len(), roots.skipped_odd);
    for p in &roots.pairs {
        let q = omega.dihedral_quotient(p)?;
        println!(
            "  {{{}, {}}} f = {} m = {} n = {} abelian = {} glides in D_n: {:?}",
            g.label(p.g1),
            g.label(p.g2),
            g.label(p.f),
            p.m,
            p.n,
            p.abelian,
            q.glide_check.map(|l| l.glide_images)
        );
    }
    Ok(roots)
}

#[allow(dead_code)]
fn main() -> Result<(), Error> {
    run_example().map(|_| ())
}
