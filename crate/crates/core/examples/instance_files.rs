// Instance files: parse, report positioned errors, and pretty-print.
//
// ```bash
// cargo run --example instance_files
// ```

use necroots::error::Error;
use necroots::instance::{parse_instance, Instance};

const TEXT: &str = r#"
[signature]
genus = 2
sign = "-"
periods = [3, 3]

[group]
expr = "direct_product(cyclic(8), cyclic(3, t))"

[images]
d1 = "(u, 1)"
d2 = "(u^7, 1)"
x1 = "(1, t)"
x2 = "(1, t^2)"

[pair]
g1 = "(u, t)"
g2 = "(u^5, t)"

[marking]
g1 = ["d1", "d2"]
g2 = ["d1", "d2"]
"#;

pub fn run_example() -> Result<Instance, Error> {
    let inst = parse_instance(TEXT)?;
    print!("{}", inst.to_toml());
    assert_eq!(parse_instance(&inst.to_toml())?, inst);

    let broken = TEXT.replace("d2 = \"(u^7, 1)\"", "d2 = \"(u^, 1)\"");
    match parse_instance(&broken) {
        Err(e) => println!("broken file: {e}"),
        Ok(_) => unreachable!("`u^` is not an element"),
    }
    Ok(inst)
}

#[allow(dead_code)]
fn main() -> Result<(), Error> {
    run_example().map(|_| ())
}
