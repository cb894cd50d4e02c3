// Exhaustive scan of the bundled signature × group matrix: every valid
// monodromy, every square-root pair, theorem prediction against verdict.
//
// ```bash
// cargo run --release --example scan
// ```

use std::time::Instant;

use necroots::harness::{bundled_matrix, scan_matrix, ScanReport};

pub fn run_example() -> Result<ScanReport, necroots::error::Error> {
    let start = Instant::now();
    let report = scan_matrix(&bundled_matrix())?;
    for cell in &report.cells {
        println!(
            "{:<22} {:<44} {:>6} monodromies {:>6} rows",
            cell.signature,
            cell.group,
            cell.monodromies,
            cell.rows.len()
        );
    }
    let s = &report.summary;
    println!(
        "{} rows over {} monodromies; {} disagreements, {} odd-n rows, {} oracle failures ({:.1?})",
        s.rows,
        s.monodromies,
        s.disagreements,
        s.odd_n_rows,
        s.oracle_failures,
        start.elapsed()
    );
    Ok(report)
}

#[allow(dead_code)]
fn main() -> Result<(), necroots::error::Error> {
    let report = run_example()?;
    assert!(report.summary.is_clean());
    Ok(())
}
