//! Scan of `c6 < c7^2` over a small grid (CSV on stdout) and the threshold
//! sufficiency sweep.
//!
//! `cargo run --release --example scan > scan.csv`

use cubicf::constants::ConstOpts;
use cubicf::harness::{scan, sufficiency_sweep, ScanRecord, TGrid};

fn main() -> cubicf::Result<()> {
    let opts = ConstOpts::default();
    let recs = scan(3, &TGrid::new(-300, 300, 10)?, false, &opts)?;
    ScanRecord::write_csv(&recs, std::io::stdout().lock())?;
    for starred in [false, true] {
        let r = sufficiency_sweep(20, 10_000, starred, &opts)?;
        eprintln!(
            "starred={starred}: K = {:?}, {} pairs above threshold, {} certified, counterexamples {:?} -> {:?}",
            r.coefficients, r.published.predicted, r.published.certified, r.published.counterexamples, r.verdict
        );
    }
    Ok(())
}
