// Finite groups as multiplication tables: constructors, element orders,
// orientation characters, and conjugators.
//
// ```bash
// cargo run --example groups
// ```

use necroots::error::Error;
use necroots::group::FiniteGroup;

pub fn run_example() -> Result<Vec<FiniteGroup>, Error> {
    let groups = vec![
        FiniteGroup::direct_product(&FiniteGroup::cyclic(16), &FiniteGroup::cyclic_named(2, "t"))?,
        FiniteGroup::direct_product(&FiniteGroup::cyclic(8), &FiniteGroup::cyclic_named(3, "t"))?,
        FiniteGroup::semidirect_c2(8, 5)?,
        FiniteGroup::dicyclic(3)?,
    ];
    for g in &groups {
        let chars = g.characters();
        println!("{g}: order {}, {} characters to Z2", g.order(), chars.len());
        for chi in chars.iter().filter(|c| !c.is_trivial()) {
            let odd: Vec<&str> = g.elements().filter(|&e| chi.value(e) == 1).take(4).map(|e| g.label(e)).collect();
            println!("  anticonformal under one character: {} ...", odd.join(", "));
        }
    }

    let dic = &groups[3];
    let r = dic.generator("r").expect("dicyclic has r");
    let s = dic.generator("s").expect("dicyclic has s");
    let rs = dic.mul(r, s);
    let rs3 = dic.pow(rs, 3);
    println!("s ~ rs in {dic}? {:?}", dic.find_conjugator(s, rs).map(|c| dic.label(c)));
    println!("s ~ (rs)^3 via {:?}", dic.find_conjugator(s, rs3).map(|c| dic.label(c)));
    Ok(groups)
}

#[allow(dead_code)]
fn main() -> Result<(), Error> {
    run_example().map(|_| ())
}
