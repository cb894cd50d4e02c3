// Classify the bundled pairs and print every pinned quantity.
//
// ```bash
// cargo run --example classify
// ```

use necroots::error::Error;
use necroots::harness::{fixture_report, FixtureReport, FIXTURES};

pub fn run_example() -> Result<Vec<FixtureReport>, Error> {
    let mut reports = Vec::new();
    for (id, _) in FIXTURES {
        let r = fixture_report(id)?;
        println!("{id}: {} -> {}", r.signature, r.group);
        for c in &r.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            println!("  {mark} {:<26} {}", c.quantity, c.actual);
        }
        println!("  verdict: {}", r.analysis.verdict);
        if let Some(v) = &r.analysis.group_verdict {
            println!("  cyclic groups: {v}");
        }
        reports.push(r);
    }
    Ok(reports)
}

#[allow(dead_code)]
fn main() -> Result<(), Error> {
    run_example().map(|_| ())
}
